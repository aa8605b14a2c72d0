mod common;

use std::sync::Arc;

use liftsep_core::lifting::{
    enumerate_commuting_squares, find_diagonal, has_lifting, LiftingProblem,
};
use liftsep_core::morphism::{check_continuous, count_continuous_maps};
use liftsep_core::{compose, enumerate_continuous_maps, parse_map, ContinuousMap, FiniteSpace};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn enumeration_matches_brute_force_up_to_three_points() {
    let pool = common::census_upto(3);
    let point = Arc::new(FiniteSpace::point());
    for a in &pool {
        assert_eq!(count_continuous_maps(a, &point), 1);
        assert_eq!(count_continuous_maps(&point, a), a.len());
        for b in &pool {
            let maps = enumerate_continuous_maps(a, b);
            let mut got: Vec<Vec<usize>> = maps.iter().map(|m| m.images().to_vec()).collect();
            got.sort();
            let want = common::naive_maps(a, b);
            assert_eq!(got, want, "{a:?} -> {b:?}");
            for m in maps {
                assert!(check_continuous(a.clone(), b.clone(), m.images().to_vec()).is_ok());
            }
        }
    }
}

#[test]
fn composition_is_associative() {
    let pool = common::census_upto(3);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    while checked < 300 {
        let f = common::random_map(&mut rng, &pool);
        let gs = enumerate_continuous_maps(
            f.cod(),
            &pool[rand::Rng::gen_range(&mut rng, 0..pool.len())],
        );
        let Some(g) = gs.first() else { continue };
        let hs = enumerate_continuous_maps(
            g.cod(),
            &pool[rand::Rng::gen_range(&mut rng, 0..pool.len())],
        );
        let Some(h) = hs.last() else { continue };
        let left = compose(h, &compose(g, &f).unwrap()).unwrap();
        let right = compose(&compose(h, g).unwrap(), &f).unwrap();
        assert_eq!(left, right);
        assert_eq!(
            compose(&ContinuousMap::identity(f.cod().clone()), &f).unwrap(),
            f
        );
        assert_eq!(
            compose(&f, &ContinuousMap::identity(f.dom().clone())).unwrap(),
            f
        );
        checked += 1;
    }
}

#[test]
fn lifting_is_invariant_under_relabeling() {
    let pool = common::census_upto(3);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let f = common::random_map(&mut rng, &pool);
        let g = common::random_map(&mut rng, &pool);
        let before = has_lifting(&LiftingProblem::new(f.clone(), g.clone())).lifts();
        let pa = common::random_perm(&mut rng, f.dom().len());
        let pb = common::random_perm(&mut rng, f.cod().len());
        let pe = common::random_perm(&mut rng, g.dom().len());
        let py = common::random_perm(&mut rng, g.cod().len());
        let f2 = common::transport(&f, &pa, &pb);
        let g2 = common::transport(&g, &pe, &py);
        assert_eq!(has_lifting(&LiftingProblem::new(f2, g2)).lifts(), before);
    }
}

#[test]
fn squares_commute_and_counterexamples_have_no_diagonal() {
    let pool = common::census_upto(2);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let p = LiftingProblem::new(
            common::random_map(&mut rng, &pool),
            common::random_map(&mut rng, &pool),
        );
        let squares = enumerate_commuting_squares(&p);
        for sq in &squares {
            let lhs = compose(&p.right, &sq.top).unwrap();
            let rhs = compose(&sq.bottom, &p.left).unwrap();
            assert_eq!(lhs.images(), rhs.images());
        }
        let all_fill = squares
            .iter()
            .all(|sq| find_diagonal(&p, sq).unwrap().is_some());
        assert_eq!(has_lifting(&p).lifts(), all_fill);
    }
}

/// Maps `(i0, i1)` from `f'` to `f` and `(r0, r1)` back, composing to the
/// identity, exhibit `f'` as a retract of `f`.
fn is_retract_witness(
    small: &ContinuousMap,
    big: &ContinuousMap,
    i: (&[usize], &[usize]),
    r: (&[usize], &[usize]),
) -> bool {
    let square_i = (0..small.dom().len()).all(|a| big.image(i.0[a]) == i.1[small.image(a)]);
    let square_r = (0..big.dom().len()).all(|a| small.image(r.0[a]) == r.1[big.image(a)]);
    let id0 = (0..small.dom().len()).all(|a| r.0[i.0[a]] == a);
    let id1 = (0..small.cod().len()).all(|b| r.1[i.1[b]] == b);
    square_i && square_r && id0 && id1
}

fn find_retraction(small: &ContinuousMap, big: &ContinuousMap) -> bool {
    let i0s = common::naive_maps(small.dom(), big.dom());
    let i1s = common::naive_maps(small.cod(), big.cod());
    let r0s = common::naive_maps(big.dom(), small.dom());
    let r1s = common::naive_maps(big.cod(), small.cod());
    i0s.iter().any(|i0| {
        i1s.iter().any(|i1| {
            r0s.iter().any(|r0| {
                r1s.iter()
                    .any(|r1| is_retract_witness(small, big, (i0, i1), (r0, r1)))
            })
        })
    })
}

#[test]
fn retracts_inherit_lifting() {
    // Hand-built: Sierpinski -> point is a retract of (Sierpinski + point) -> (point + point).
    let small = parse_map("{x>y} -> {x=y}").unwrap();
    let big = parse_map("{x>y, z} -> {x=y, z}").unwrap();
    assert!(is_retract_witness(
        &small,
        &big,
        (&[0, 1], &[0]),
        (&[0, 1, 0], &[0, 0])
    ));

    let pool = common::census_upto(2);
    let maps: Vec<ContinuousMap> = pool
        .iter()
        .flat_map(|a| pool.iter().flat_map(move |b| common::maps_between(a, b)))
        .collect();
    let mut witnessed = 0;
    for small in &maps {
        for big in &maps {
            if !find_retraction(small, big) {
                continue;
            }
            witnessed += 1;
            for g in &maps {
                if has_lifting(&LiftingProblem::new(big.clone(), g.clone())).lifts() {
                    assert!(has_lifting(&LiftingProblem::new(small.clone(), g.clone())).lifts());
                }
            }
        }
    }
    assert!(witnessed > 0);
    for g in &maps {
        if has_lifting(&LiftingProblem::new(big.clone(), g.clone())).lifts() {
            assert!(has_lifting(&LiftingProblem::new(small.clone(), g.clone())).lifts());
        }
    }
}
