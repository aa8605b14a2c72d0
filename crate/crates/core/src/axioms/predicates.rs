//! Separation predicates for points and subsets.
//!
//! In a finite space every point `x` has a smallest open neighbourhood
//! `{y : leq(y, x)}`, so the existential quantifiers over open sets below
//! reduce to checking the smallest candidates.

use std::sync::{Arc, OnceLock};

use crate::morphism::{find_factorization, ContinuousMap};
use crate::notation::{arc_space, parse_map};
use crate::space::{FiniteSpace, SpaceError, SubsetMask};

fn check_pair(space: &FiniteSpace, a: SubsetMask, b: SubsetMask) -> Result<(), SpaceError> {
    for s in [a, b] {
        if s.width() != space.len() {
            return Err(SpaceError::WidthMismatch {
                expected: space.len(),
                got: s.width(),
            });
        }
    }
    Ok(())
}

/// Some open set contains exactly one of `x`, `y`.
pub fn distinguishable(space: &FiniteSpace, x: usize, y: usize) -> Result<bool, SpaceError> {
    space.check_point(x)?;
    space.check_point(y)?;
    Ok(!space.indistinguishable(x, y))
}

pub(crate) fn separated_bits(space: &FiniteSpace, a: u64, b: u64) -> bool {
    a & space.closure_bits(b) == 0 && b & space.closure_bits(a) == 0
}

pub(crate) fn nbhd_separated_bits(space: &FiniteSpace, a: u64, b: u64) -> bool {
    space.open_hull_bits(a) & space.open_hull_bits(b) == 0
}

pub(crate) fn closed_nbhd_separated_bits(space: &FiniteSpace, a: u64, b: u64) -> bool {
    let u = space.closure_bits(space.open_hull_bits(a));
    let v = space.closure_bits(space.open_hull_bits(b));
    u & v == 0
}

/// Continuous real functions on a finite space are constant on components,
/// so `f(A) = 0, f(B) = 1` is possible iff no component meets both.
pub(crate) fn function_separated_bits(comps: &[u64], a: u64, b: u64) -> bool {
    comps.iter().all(|&c| c & a == 0 || c & b == 0)
}

/// `f⁻¹(0) = A, f⁻¹(1) = B` is possible iff A and B are disjoint unions of
/// components.
pub(crate) fn precisely_separated_bits(comps: &[u64], a: u64, b: u64) -> bool {
    a & b == 0
        && comps
            .iter()
            .all(|&c| (c & a == 0 || c & a == c) && (c & b == 0 || c & b == c))
}

/// `A ∩ cl B = B ∩ cl A = ∅`.
pub fn separated(space: &FiniteSpace, a: SubsetMask, b: SubsetMask) -> Result<bool, SpaceError> {
    check_pair(space, a, b)?;
    Ok(separated_bits(space, a.bits(), b.bits()))
}

/// Disjoint open `U ⊇ A`, `V ⊇ B` exist.
pub fn separated_by_neighbourhoods(
    space: &FiniteSpace,
    a: SubsetMask,
    b: SubsetMask,
) -> Result<bool, SpaceError> {
    check_pair(space, a, b)?;
    Ok(nbhd_separated_bits(space, a.bits(), b.bits()))
}

/// Open `U ⊇ A`, `V ⊇ B` with `cl U ∩ cl V = ∅` exist.
pub fn separated_by_closed_neighbourhoods(
    space: &FiniteSpace,
    a: SubsetMask,
    b: SubsetMask,
) -> Result<bool, SpaceError> {
    check_pair(space, a, b)?;
    Ok(closed_nbhd_separated_bits(space, a.bits(), b.bits()))
}

/// A continuous `f: X -> ℝ` with `f(A) = 0` and `f(B) = 1` exists.
pub fn separated_by_function(
    space: &FiniteSpace,
    a: SubsetMask,
    b: SubsetMask,
) -> Result<bool, SpaceError> {
    check_pair(space, a, b)?;
    let comps = space.component_bits();
    Ok(function_separated_bits(&comps, a.bits(), b.bits()))
}

/// A continuous `f: X -> ℝ` with `f⁻¹(0) = A` and `f⁻¹(1) = B` exists.
pub fn precisely_separated_by_function(
    space: &FiniteSpace,
    a: SubsetMask,
    b: SubsetMask,
) -> Result<bool, SpaceError> {
    check_pair(space, a, b)?;
    let comps = space.component_bits();
    Ok(precisely_separated_bits(&comps, a.bits(), b.bits()))
}

/// Factorization models for the subset predicates: the map `i_AB` into
/// `{A<->x<->B}` factors through each listed map iff the predicate holds.
pub(crate) struct FactorizationModels {
    target: Arc<FiniteSpace>,
    separated: [ContinuousMap; 2],
    neighbourhoods: ContinuousMap,
    closed_neighbourhoods: ContinuousMap,
}

pub(crate) const SEPARATED_LEFT: &str = "{A<->U_A>x<->B} -> {A<->U_A=x<->B}";
pub(crate) const SEPARATED_RIGHT: &str = "{A<->x<U_B<->B} -> {A<->x=U_B<->B}";
pub(crate) const NEIGHBOURHOODS: &str = "{A<->U_A>x<U_B<->B} -> {A<->U_A=x=U_B<->B}";
pub(crate) const CLOSED_NEIGHBOURHOODS: &str =
    "{A<->U_A>U'_A<x>U'_B<U_B<->B} -> {A<->U_A=U'_A=x=U'_B=U_B<->B}";

fn models() -> &'static FactorizationModels {
    static MODELS: OnceLock<FactorizationModels> = OnceLock::new();
    MODELS.get_or_init(|| {
        let map = |t: &str| parse_map(t).unwrap_or_else(|e| panic!("built-in map `{t}`: {e}"));
        FactorizationModels {
            target: arc_space("{A<->x<->B}"),
            separated: [map(SEPARATED_LEFT), map(SEPARATED_RIGHT)],
            neighbourhoods: map(NEIGHBOURHOODS),
            closed_neighbourhoods: map(CLOSED_NEIGHBOURHOODS),
        }
    })
}

/// `i_AB: X -> {A<->x<->B}`; `None` when A and B overlap.
fn classifying_map(
    space: &Arc<FiniteSpace>,
    a: SubsetMask,
    b: SubsetMask,
) -> Option<ContinuousMap> {
    if !a.is_disjoint(b) {
        return None;
    }
    let images = (0..space.len())
        .map(|p| {
            if a.contains(p) {
                0
            } else if b.contains(p) {
                2
            } else {
                1
            }
        })
        .collect();
    Some(
        ContinuousMap::new(space.clone(), models().target.clone(), images)
            .expect("antidiscrete target"),
    )
}

fn factors(i: &ContinuousMap, q: &ContinuousMap) -> bool {
    find_factorization(i, q)
        .expect("models share the target")
        .is_some()
}

/// Which predicate a factorization check should decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FactorizationKind {
    Separated,
    Neighbourhoods,
    ClosedNeighbourhoods,
}

/// Decides a subset predicate by searching for a factorization of `i_AB`
/// through the corresponding finite model map.
pub fn separated_via_factorization(
    space: &Arc<FiniteSpace>,
    a: SubsetMask,
    b: SubsetMask,
    kind: FactorizationKind,
) -> Result<bool, SpaceError> {
    check_pair(space, a, b)?;
    let Some(i) = classifying_map(space, a, b) else {
        return Ok(false);
    };
    let m = models();
    Ok(match kind {
        FactorizationKind::Separated => m.separated.iter().all(|q| factors(&i, q)),
        FactorizationKind::Neighbourhoods => factors(&i, &m.neighbourhoods),
        FactorizationKind::ClosedNeighbourhoods => factors(&i, &m.closed_neighbourhoods),
    })
}
