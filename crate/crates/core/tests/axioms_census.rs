use std::sync::Arc;

use liftsep_core::axioms::{
    check_axiom_direct, check_axiom_lifting, check_formula, formula_variants,
    separated_by_closed_neighbourhoods, separated_by_neighbourhoods, separated_via_factorization,
    AxiomId, FactorizationKind,
};
use liftsep_core::census::{enumerate_topologies, Census, CensusRecord, CensusSummary, Mode};
use liftsep_core::{FiniteSpace, SubsetMask};

fn labeled(n: usize) -> Vec<FiniteSpace> {
    enumerate_topologies(n, Mode::Labeled).unwrap()
}

#[test]
fn neighbourhood_predicates_match_open_set_search() {
    for n in 0..=3 {
        for s in labeled(n) {
            let opens: Vec<SubsetMask> = s.open_sets().collect();
            let closure = |m: SubsetMask| s.closure(m).unwrap();
            for a in SubsetMask::all(n) {
                for b in SubsetMask::all(n) {
                    let around =
                        |x: SubsetMask| opens.iter().copied().filter(move |u| x.is_subset(*u));
                    let nbhd = around(a).any(|u| around(b).any(|v| u.is_disjoint(v)));
                    let closed =
                        around(a).any(|u| around(b).any(|v| closure(u).is_disjoint(closure(v))));
                    assert_eq!(separated_by_neighbourhoods(&s, a, b).unwrap(), nbhd);
                    assert_eq!(
                        separated_by_closed_neighbourhoods(&s, a, b).unwrap(),
                        closed
                    );
                }
            }
        }
    }
}

#[test]
fn factorizations_match_predicates_up_to_three_points() {
    use FactorizationKind::*;
    for n in 0..=3 {
        for s in labeled(n) {
            let s = Arc::new(s);
            for a in SubsetMask::all(n) {
                for b in SubsetMask::all(n).filter(|b| b.is_disjoint(a)) {
                    assert_eq!(
                        separated_via_factorization(&s, a, b, Neighbourhoods).unwrap(),
                        separated_by_neighbourhoods(&s, a, b).unwrap(),
                        "{s:?} {a:?} {b:?}"
                    );
                    assert_eq!(
                        separated_via_factorization(&s, a, b, ClosedNeighbourhoods).unwrap(),
                        separated_by_closed_neighbourhoods(&s, a, b).unwrap()
                    );
                    assert_eq!(
                        separated_via_factorization(&s, a, b, Separated).unwrap(),
                        liftsep_core::axioms::separated(&s, a, b).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn extremal_disconnectedness_displays_agree_up_to_four_points() {
    let variants = formula_variants(AxiomId::ExtremallyDisconnected);
    assert_eq!(variants.len(), 2);
    for n in 0..=4 {
        for s in labeled(n) {
            let first = check_formula(&s, variants[0]).holds();
            assert_eq!(first, check_formula(&s, variants[1]).holds(), "{s:?}");
        }
    }
}

#[test]
fn verdicts_are_topological_invariants() {
    let reps = enumerate_topologies(4, Mode::UpToIso).unwrap();
    for s in labeled(4) {
        let rep = reps
            .iter()
            .find(|r| r.is_homeomorphic(&s))
            .expect("some representative");
        for id in AxiomId::ALL {
            assert_eq!(check_axiom_direct(&s, id), check_axiom_direct(rep, id));
            if id.has_lifting_form() {
                assert_eq!(
                    check_axiom_lifting(&s, id).unwrap().holds(),
                    check_axiom_lifting(rep, id).unwrap().holds()
                );
            }
        }
    }
}

#[test]
fn representatives_are_pairwise_distinct() {
    for n in 0..=4 {
        let reps = enumerate_topologies(n, Mode::UpToIso).unwrap();
        for (i, a) in reps.iter().enumerate() {
            for b in &reps[i + 1..] {
                assert!(!a.is_homeomorphic(b));
            }
        }
    }
}

#[test]
fn up_to_iso_counts_beyond_four() {
    let counts: Vec<usize> = (5..=6)
        .map(|n| enumerate_topologies(n, Mode::UpToIso).unwrap().len())
        .collect();
    assert_eq!(counts, [139, 718]);
}

#[test]
fn census_files_are_deterministic_and_well_formed() {
    let write = || {
        let mut out = Vec::new();
        Census::run(3, Mode::Labeled)
            .unwrap()
            .write_to(&mut out)
            .unwrap();
        String::from_utf8(out).unwrap()
    };
    let text = write();
    assert_eq!(text, write());
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 30);
    for (i, line) in lines[..29].iter().enumerate() {
        let r: CensusRecord = serde_json::from_str(line).unwrap();
        assert_eq!((r.n, r.index), (3, i));
        assert_eq!(r.axioms.len(), AxiomId::ALL.len());
        assert_eq!(r.lifting_agrees.len(), AxiomId::ALL.len() - 1);
        let mut sorted = r.arrows.clone();
        sorted.sort();
        assert_eq!(sorted, r.arrows);
        // Composite verdicts are the conjunctions of their parts.
        for id in AxiomId::ALL {
            if let Some((p, q)) = id.conjuncts() {
                assert_eq!(r.holds(id), r.holds(p) && r.holds(q));
            }
        }
    }
    let summary: CensusSummary = serde_json::from_str(lines[29]).unwrap();
    assert_eq!(summary.counts[&AxiomId::T0], 19);
    assert!(summary.violations.is_empty());
}
