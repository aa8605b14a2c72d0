//! Helpers shared by the integration tests, including a naive lifting
//! oracle that enumerates all functions and filters.
#![allow(dead_code)]

use std::sync::Arc;

use liftsep_core::census::{enumerate_topologies, Mode};
use liftsep_core::{ContinuousMap, FiniteSpace};
use rand::seq::SliceRandom;
use rand::Rng;

/// All `m^n` functions from `n` points to `m` points, as image arrays.
pub fn all_functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|f| {
                (0..m).map(move |y| {
                    let mut g = f.clone();
                    g.push(y);
                    g
                })
            })
            .collect();
    }
    out
}

pub fn is_monotone(dom: &FiniteSpace, cod: &FiniteSpace, f: &[usize]) -> bool {
    (0..dom.len()).all(|x| (0..dom.len()).all(|y| !dom.leq(x, y) || cod.leq(f[x], f[y])))
}

pub fn naive_maps(dom: &FiniteSpace, cod: &FiniteSpace) -> Vec<Vec<usize>> {
    all_functions(dom.len(), cod.len())
        .into_iter()
        .filter(|f| is_monotone(dom, cod, f))
        .collect()
}

/// `f ⧄ g` by brute force over every function triple.
pub fn naive_lifts(f: &ContinuousMap, g: &ContinuousMap) -> bool {
    let (a, b) = (f.dom(), f.cod());
    let (e, y) = (g.dom(), g.cod());
    let tops = naive_maps(a, e);
    let bottoms = naive_maps(b, y);
    let diagonals = naive_maps(b, e);
    for top in &tops {
        for bottom in &bottoms {
            let commutes = (0..a.len()).all(|p| g.image(top[p]) == bottom[f.image(p)]);
            if !commutes {
                continue;
            }
            let filled = diagonals.iter().any(|d| {
                (0..a.len()).all(|p| d[f.image(p)] == top[p])
                    && (0..b.len()).all(|q| g.image(d[q]) == bottom[q])
            });
            if !filled {
                return false;
            }
        }
    }
    true
}

pub fn census_upto(max_n: usize) -> Vec<Arc<FiniteSpace>> {
    (0..=max_n)
        .flat_map(|n| enumerate_topologies(n, Mode::Labeled).unwrap())
        .map(Arc::new)
        .collect()
}

pub fn maps_between(a: &Arc<FiniteSpace>, b: &Arc<FiniteSpace>) -> Vec<ContinuousMap> {
    naive_maps(a, b)
        .into_iter()
        .map(|f| ContinuousMap::new(a.clone(), b.clone(), f).unwrap())
        .collect()
}

/// A uniformly chosen continuous map between two spaces drawn from `pool`.
pub fn random_map(rng: &mut impl Rng, pool: &[Arc<FiniteSpace>]) -> ContinuousMap {
    loop {
        let a = pool.choose(rng).unwrap();
        let b = pool.choose(rng).unwrap();
        let maps = maps_between(a, b);
        if let Some(m) = maps.choose(rng) {
            return m.clone();
        }
    }
}

/// Transports `m` along relabelings of its domain and codomain.
pub fn transport(m: &ContinuousMap, pd: &[usize], pc: &[usize]) -> ContinuousMap {
    let dom = Arc::new(m.dom().permuted(pd));
    let cod = Arc::new(m.cod().permuted(pc));
    let mut images = vec![0; m.dom().len()];
    for x in 0..m.dom().len() {
        images[pd[x]] = pc[m.image(x)];
    }
    ContinuousMap::new(dom, cod, images).unwrap()
}

pub fn random_perm(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}
