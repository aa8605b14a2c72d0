//! Continuous maps between finite spaces.
//!
//! A function between finite spaces is continuous iff it is monotone for the
//! specialization preorders.

use std::fmt;
use std::ops::ControlFlow;
use std::sync::Arc;

use thiserror::Error;

use crate::search::{fibers, MonotoneSearch};
use crate::space::FiniteSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("map assigns {got} images but the domain has {expected} points")]
    Arity { expected: usize, got: usize },
    #[error("point {point} is sent to {image}, outside a codomain of {cod_len} points")]
    ImageOutOfRange {
        point: usize,
        image: usize,
        cod_len: usize,
    },
    #[error("not continuous: {y} lies in the closure of {x} but f({y}) does not lie in the closure of f({x})")]
    NotMonotone { x: usize, y: usize },
    #[error("cannot compose: codomain of the first map differs from domain of the second")]
    SpaceMismatch,
}

/// A validated continuous map.
#[derive(Clone)]
pub struct ContinuousMap {
    dom: Arc<FiniteSpace>,
    cod: Arc<FiniteSpace>,
    images: Vec<usize>,
}

impl PartialEq for ContinuousMap {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
            && same_space(&self.dom, &other.dom)
            && same_space(&self.cod, &other.cod)
    }
}

impl Eq for ContinuousMap {}

impl std::hash::Hash for ContinuousMap {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.images.hash(state);
        self.dom.len().hash(state);
        self.cod.len().hash(state);
    }
}

pub(crate) fn same_space(a: &Arc<FiniteSpace>, b: &Arc<FiniteSpace>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Same points and preorder, labels ignored.
pub(crate) fn same_topology(a: &FiniteSpace, b: &FiniteSpace) -> bool {
    a.closure_rows() == b.closure_rows()
}

/// Returns the map if `images` is monotone, otherwise the offending pair.
pub fn check_continuous(
    dom: impl Into<Arc<FiniteSpace>>,
    cod: impl Into<Arc<FiniteSpace>>,
    images: Vec<usize>,
) -> Result<ContinuousMap, MapError> {
    let dom = dom.into();
    let cod = cod.into();
    if images.len() != dom.len() {
        return Err(MapError::Arity {
            expected: dom.len(),
            got: images.len(),
        });
    }
    for (point, &image) in images.iter().enumerate() {
        if image >= cod.len() {
            return Err(MapError::ImageOutOfRange {
                point,
                image,
                cod_len: cod.len(),
            });
        }
    }
    if let Some((x, y)) = monotonicity_witness(&dom, &cod, &images) {
        return Err(MapError::NotMonotone { x, y });
    }
    Ok(ContinuousMap { dom, cod, images })
}

pub(crate) fn monotonicity_witness(
    dom: &FiniteSpace,
    cod: &FiniteSpace,
    images: &[usize],
) -> Option<(usize, usize)> {
    (0..dom.len())
        .flat_map(|x| (0..dom.len()).map(move |y| (x, y)))
        .find(|&(x, y)| dom.leq(x, y) && !cod.leq(images[x], images[y]))
}

impl ContinuousMap {
    pub fn new(
        dom: impl Into<Arc<FiniteSpace>>,
        cod: impl Into<Arc<FiniteSpace>>,
        images: Vec<usize>,
    ) -> Result<Self, MapError> {
        check_continuous(dom, cod, images)
    }

    pub(crate) fn new_unchecked(
        dom: Arc<FiniteSpace>,
        cod: Arc<FiniteSpace>,
        images: Vec<usize>,
    ) -> Self {
        debug_assert!(monotonicity_witness(&dom, &cod, &images).is_none());
        Self { dom, cod, images }
    }

    pub fn identity(space: impl Into<Arc<FiniteSpace>>) -> Self {
        let space = space.into();
        let images = (0..space.len()).collect();
        Self {
            dom: space.clone(),
            cod: space,
            images,
        }
    }

    pub fn constant(
        dom: impl Into<Arc<FiniteSpace>>,
        cod: impl Into<Arc<FiniteSpace>>,
        point: usize,
    ) -> Result<Self, MapError> {
        let dom = dom.into();
        let images = vec![point; dom.len()];
        check_continuous(dom, cod, images)
    }

    /// The unique map to the one-point space.
    pub fn to_point(dom: impl Into<Arc<FiniteSpace>>) -> Self {
        let dom = dom.into();
        let images = vec![0; dom.len()];
        Self {
            dom,
            cod: Arc::new(FiniteSpace::point()),
            images,
        }
    }

    /// The unique map out of the empty space.
    pub fn from_empty(cod: impl Into<Arc<FiniteSpace>>) -> Self {
        Self {
            dom: Arc::new(FiniteSpace::empty()),
            cod: cod.into(),
            images: Vec::new(),
        }
    }

    pub fn dom(&self) -> &Arc<FiniteSpace> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteSpace> {
        &self.cod
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = 0u64;
        self.images.iter().all(|&y| {
            let fresh = seen & (1 << y) == 0;
            seen |= 1 << y;
            fresh
        })
    }

    /// `fibers()[y]` is the preimage of `y` as a bitmask.
    pub(crate) fn fibers(&self) -> Vec<u64> {
        fibers(&self.images, self.cod.len())
    }
}

impl fmt::Debug for ContinuousMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ContinuousMap({})", crate::notation::format_map(self))
    }
}

impl fmt::Display for ContinuousMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::notation::format_map(self))
    }
}

/// All continuous maps `dom -> cod`, in deterministic search order.
pub fn enumerate_continuous_maps(
    dom: &Arc<FiniteSpace>,
    cod: &Arc<FiniteSpace>,
) -> Vec<ContinuousMap> {
    let mut out = Vec::new();
    let _ = MonotoneSearch::unconstrained(dom, cod).for_each::<()>(|m| {
        out.push(ContinuousMap::new_unchecked(
            dom.clone(),
            cod.clone(),
            m.to_vec(),
        ));
        ControlFlow::Continue(())
    });
    out
}

pub fn count_continuous_maps(dom: &FiniteSpace, cod: &FiniteSpace) -> usize {
    MonotoneSearch::unconstrained(dom, cod).count()
}

/// `g ∘ f`.
pub fn compose(g: &ContinuousMap, f: &ContinuousMap) -> Result<ContinuousMap, MapError> {
    if !same_topology(&f.cod, &g.dom) {
        return Err(MapError::SpaceMismatch);
    }
    let images = f.images.iter().map(|&y| g.images[y]).collect();
    Ok(ContinuousMap::new_unchecked(
        f.dom.clone(),
        g.cod.clone(),
        images,
    ))
}

/// Some continuous `p: dom(i) -> dom(q)` with `q ∘ p = i`.
pub fn find_factorization(
    i: &ContinuousMap,
    q: &ContinuousMap,
) -> Result<Option<ContinuousMap>, MapError> {
    if !same_topology(&i.cod, &q.cod) {
        return Err(MapError::SpaceMismatch);
    }
    let q_fibers = q.fibers();
    let candidates: Vec<u64> = i.images.iter().map(|&y| q_fibers[y]).collect();
    Ok(MonotoneSearch::new(&i.dom, &q.dom, &candidates)
        .first()
        .map(|p| ContinuousMap::new_unchecked(i.dom.clone(), q.dom.clone(), p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::{parse_map, parse_space};

    fn arc(text: &str) -> Arc<FiniteSpace> {
        Arc::new(parse_space(text).unwrap())
    }

    #[test]
    fn identity_is_continuous() {
        let s = arc("{a>b<c}");
        assert!(check_continuous(s.clone(), s.clone(), vec![0, 1, 2]).is_ok());
    }

    #[test]
    fn swapping_sierpinski_is_not_continuous() {
        let s = arc("{a>b}");
        assert_eq!(
            check_continuous(s.clone(), s, vec![1, 0]).unwrap_err(),
            MapError::NotMonotone { x: 0, y: 1 }
        );
    }

    #[test]
    fn antidiscrete_pair_cannot_split_onto_sierpinski() {
        let err = check_continuous(arc("{x<->y}"), arc("{a>b}"), vec![0, 1]).unwrap_err();
        assert!(matches!(err, MapError::NotMonotone { .. }));
    }

    #[test]
    fn out_of_range_images() {
        let s = arc("{a>b}");
        assert!(matches!(
            check_continuous(s.clone(), s.clone(), vec![0, 2]),
            Err(MapError::ImageOutOfRange { point: 1, .. })
        ));
        assert!(matches!(
            check_continuous(s.clone(), s, vec![0]),
            Err(MapError::Arity { .. })
        ));
    }

    #[test]
    fn enumeration_counts() {
        let s = arc("{a>b}");
        let d = arc("{a,b}");
        assert_eq!(enumerate_continuous_maps(&d, &s).len(), 4);
        let maps = enumerate_continuous_maps(&s, &s);
        let mut images: Vec<_> = maps.iter().map(|m| m.images().to_vec()).collect();
        images.sort();
        assert_eq!(images, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(enumerate_continuous_maps(&s, &d).len(), 2);
        let pt = Arc::new(FiniteSpace::point());
        assert_eq!(enumerate_continuous_maps(&arc("{a>b<c, d}"), &pt).len(), 1);
    }

    #[test]
    fn empty_domain_has_one_map() {
        let e = Arc::new(FiniteSpace::empty());
        assert_eq!(enumerate_continuous_maps(&e, &e).len(), 1);
        assert_eq!(enumerate_continuous_maps(&arc("{a}"), &e).len(), 0);
    }

    #[test]
    fn composition() {
        let f = parse_map("{a,b} -> {a>b}").unwrap();
        let g = parse_map("{a>b} -> {a=b}").unwrap();
        let h = compose(&g, &f).unwrap();
        assert_eq!(h.images(), &[0, 0]);
        assert_eq!(h.cod().len(), 1);
        let id = ContinuousMap::identity(f.cod().clone());
        assert_eq!(compose(&id, &f).unwrap(), f);
        let id = ContinuousMap::identity(f.dom().clone());
        assert_eq!(compose(&f, &id).unwrap(), f);
        assert_eq!(compose(&f, &g).unwrap_err(), MapError::SpaceMismatch);
    }

    #[test]
    fn factorization_identity() {
        let s = arc("{a>b}");
        let id = ContinuousMap::identity(s);
        assert_eq!(find_factorization(&id, &id).unwrap(), Some(id.clone()));
    }

    fn i_ab(x: &Arc<FiniteSpace>, a: u64, b: u64) -> ContinuousMap {
        // {A<->x<->B}: 0 = A, 1 = x, 2 = B
        let target = arc("{A<->x<->B}");
        let images = (0..x.len())
            .map(|p| {
                if a & 1 << p != 0 {
                    0
                } else if b & 1 << p != 0 {
                    2
                } else {
                    1
                }
            })
            .collect();
        ContinuousMap::new(x.clone(), target, images).unwrap()
    }

    #[test]
    fn neighbourhood_factorization() {
        let q = parse_map("{A<->U_A>x<U_B<->B} -> {A<->U_A=x=U_B<->B}").unwrap();
        let discrete = arc("{a,b}");
        let p = find_factorization(&i_ab(&discrete, 0b01, 0b10), &q)
            .unwrap()
            .expect("discrete points have disjoint neighbourhoods");
        assert_eq!(q.dom().label(p.image(0)), Some("A"));
        assert_eq!(q.dom().label(p.image(1)), Some("B"));
        let sierpinski = arc("{a>b}");
        assert_eq!(
            find_factorization(&i_ab(&sierpinski, 0b01, 0b10), &q).unwrap(),
            None
        );
    }

    #[test]
    fn factorization_requires_matching_codomains() {
        let f = parse_map("{a} -> {a,b}").unwrap();
        let g = parse_map("{a>b} -> {a=b}").unwrap();
        assert_eq!(find_factorization(&f, &g), Err(MapError::SpaceMismatch));
    }
}
