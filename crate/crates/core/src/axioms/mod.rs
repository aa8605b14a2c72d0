//! Separation axioms, each decided twice: by its classical definition and by
//! its lifting formulation from the formula table.

mod formula;
mod predicates;
pub mod real_line;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use formula::{
    display_fixture, formula, formula_variants, formulas, parse_formula_table, AxiomFormula,
    Backend, FormulaError, LeftTemplate, RightMap, DISPLAY_FIXTURE, FORMULA_TABLE,
};
pub use predicates::{
    distinguishable, precisely_separated_by_function, separated,
    separated_by_closed_neighbourhoods, separated_by_function, separated_by_neighbourhoods,
    separated_via_factorization, FactorizationKind,
};
pub use real_line::RealLineModel;

use crate::lifting::RawProblem;
use crate::morphism::ContinuousMap;
use crate::notation::format_map;
use crate::space::{bits, FiniteSpace};
use predicates::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AxiomId {
    T0,
    R0,
    T1,
    R1,
    T2,
    T2Half,
    CompletelyT2,
    Regular,
    T3,
    CompletelyRegular,
    T3Half,
    Normal,
    NormalUrysohn,
    T4,
    CompletelyNormal,
    PerfectlyNormal,
    Td,
    ExtremallyDisconnected,
}

impl AxiomId {
    pub const ALL: [AxiomId; 18] = [
        AxiomId::T0,
        AxiomId::R0,
        AxiomId::T1,
        AxiomId::R1,
        AxiomId::T2,
        AxiomId::T2Half,
        AxiomId::CompletelyT2,
        AxiomId::Regular,
        AxiomId::T3,
        AxiomId::CompletelyRegular,
        AxiomId::T3Half,
        AxiomId::Normal,
        AxiomId::NormalUrysohn,
        AxiomId::T4,
        AxiomId::CompletelyNormal,
        AxiomId::PerfectlyNormal,
        AxiomId::Td,
        AxiomId::ExtremallyDisconnected,
    ];

    /// Axioms whose direct and lifting verdicts must agree on every space.
    pub const HARD_EQUIVALENCES: [AxiomId; 12] = [
        AxiomId::T0,
        AxiomId::R0,
        AxiomId::T1,
        AxiomId::T2,
        AxiomId::T2Half,
        AxiomId::Regular,
        AxiomId::Normal,
        AxiomId::ExtremallyDisconnected,
        AxiomId::PerfectlyNormal,
        AxiomId::CompletelyT2,
        AxiomId::CompletelyRegular,
        AxiomId::NormalUrysohn,
    ];

    /// Axioms whose agreement is only reported.
    pub const SOFT_EQUIVALENCES: [AxiomId; 2] = [AxiomId::Td, AxiomId::CompletelyNormal];

    pub fn name(self) -> &'static str {
        match self {
            AxiomId::T0 => "T0",
            AxiomId::R0 => "R0",
            AxiomId::T1 => "T1",
            AxiomId::R1 => "R1",
            AxiomId::T2 => "T2",
            AxiomId::T2Half => "T2_HALF",
            AxiomId::CompletelyT2 => "COMPLETELY_T2",
            AxiomId::Regular => "REGULAR",
            AxiomId::T3 => "T3",
            AxiomId::CompletelyRegular => "COMPLETELY_REGULAR",
            AxiomId::T3Half => "T3_HALF",
            AxiomId::Normal => "NORMAL",
            AxiomId::NormalUrysohn => "NORMAL_URYSOHN",
            AxiomId::T4 => "T4",
            AxiomId::CompletelyNormal => "COMPLETELY_NORMAL",
            AxiomId::PerfectlyNormal => "PERFECTLY_NORMAL",
            AxiomId::Td => "TD",
            AxiomId::ExtremallyDisconnected => "EXTREMALLY_DISCONNECTED",
        }
    }

    /// Composite axioms are conjunctions of two others.
    pub fn conjuncts(self) -> Option<(AxiomId, AxiomId)> {
        match self {
            AxiomId::T3 => Some((AxiomId::T0, AxiomId::Regular)),
            AxiomId::T3Half => Some((AxiomId::T0, AxiomId::CompletelyRegular)),
            AxiomId::T4 => Some((AxiomId::T1, AxiomId::Normal)),
            _ => None,
        }
    }

    /// Whether a lifting formulation exists (directly or via conjuncts).
    pub fn has_lifting_form(self) -> bool {
        match self.conjuncts() {
            Some((a, b)) => a.has_lifting_form() && b.has_lifting_form(),
            None => formula(self).is_some(),
        }
    }

    /// Listed in [`Self::HARD_EQUIVALENCES`], or a conjunction of two such.
    pub fn is_hard(self) -> bool {
        match self.conjuncts() {
            Some((a, b)) => a.is_hard() && b.is_hard(),
            None => Self::HARD_EQUIVALENCES.contains(&self),
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("unknown axiom `{0}`")]
    Unknown(String),
    #[error("{0} has no lifting formulation")]
    NoLiftingFormula(AxiomId),
}

impl FromStr for AxiomId {
    type Err = AxiomError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_uppercase().replace(['-', ' '], "_");
        Self::ALL
            .into_iter()
            .find(|id| id.name() == wanted)
            .ok_or_else(|| AxiomError::Unknown(s.to_string()))
    }
}

/// Precomputed closed sets and components of a space.
struct Facts<'a> {
    space: &'a FiniteSpace,
    closed: Vec<u64>,
    components: Vec<u64>,
}

impl<'a> Facts<'a> {
    fn new(space: &'a FiniteSpace) -> Self {
        let closed = (0..=space.full_bits())
            .filter(|&s| space.is_closed_bits(s))
            .collect();
        Self {
            space,
            closed,
            components: space.component_bits(),
        }
    }

    fn distinct_pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let n = self.space.len();
        (0..n).flat_map(move |x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
    }

    fn points_off_closed(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.closed
            .iter()
            .flat_map(move |&f| bits(self.space.full_bits() & !f).map(move |x| (1u64 << x, f)))
    }

    fn disjoint_closed_pairs(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.closed.iter().flat_map(move |&a| {
            self.closed
                .iter()
                .filter(move |&&b| a & b == 0)
                .map(move |&b| (a, b))
        })
    }
}

/// Decides `id` from its classical definition.
pub fn check_axiom_direct(space: &FiniteSpace, id: AxiomId) -> bool {
    let facts = Facts::new(space);
    direct(&facts, id)
}

fn direct(facts: &Facts<'_>, id: AxiomId) -> bool {
    let s = facts.space;
    let pt = |x: usize| 1u64 << x;
    match id {
        AxiomId::T0 => facts
            .distinct_pairs()
            .all(|(x, y)| !s.indistinguishable(x, y)),
        AxiomId::R0 => facts
            .distinct_pairs()
            .filter(|&(x, y)| !s.indistinguishable(x, y))
            .all(|(x, y)| separated_bits(s, pt(x), pt(y))),
        AxiomId::T1 => facts
            .distinct_pairs()
            .all(|(x, y)| separated_bits(s, pt(x), pt(y))),
        AxiomId::R1 => facts
            .distinct_pairs()
            .filter(|&(x, y)| !s.indistinguishable(x, y))
            .all(|(x, y)| nbhd_separated_bits(s, pt(x), pt(y))),
        AxiomId::T2 => facts
            .distinct_pairs()
            .all(|(x, y)| nbhd_separated_bits(s, pt(x), pt(y))),
        AxiomId::T2Half => facts
            .distinct_pairs()
            .all(|(x, y)| closed_nbhd_separated_bits(s, pt(x), pt(y))),
        AxiomId::CompletelyT2 => facts
            .distinct_pairs()
            .all(|(x, y)| function_separated_bits(&facts.components, pt(x), pt(y))),
        AxiomId::Regular => facts
            .points_off_closed()
            .all(|(x, f)| nbhd_separated_bits(s, x, f)),
        AxiomId::CompletelyRegular => facts
            .points_off_closed()
            .all(|(x, f)| function_separated_bits(&facts.components, x, f)),
        AxiomId::Normal => facts
            .disjoint_closed_pairs()
            .all(|(a, b)| nbhd_separated_bits(s, a, b)),
        AxiomId::NormalUrysohn => facts
            .disjoint_closed_pairs()
            .all(|(a, b)| function_separated_bits(&facts.components, a, b)),
        AxiomId::CompletelyNormal => {
            let full = s.full_bits();
            (0..=full).all(|a| {
                (0..=full)
                    .filter(|&b| separated_bits(s, a, b))
                    .all(|b| nbhd_separated_bits(s, a, b))
            })
        }
        AxiomId::PerfectlyNormal => facts
            .disjoint_closed_pairs()
            .all(|(a, b)| precisely_separated_bits(&facts.components, a, b)),
        AxiomId::Td => {
            let opens: Vec<u64> = (0..=s.full_bits()).filter(|&u| s.is_open_bits(u)).collect();
            (0..s.len()).all(|x| {
                opens
                    .iter()
                    .any(|&u| facts.closed.iter().any(|&z| u & z == pt(x)))
            })
        }
        AxiomId::ExtremallyDisconnected => (0..=s.full_bits())
            .filter(|&u| s.is_open_bits(u))
            .all(|u| s.is_open_bits(s.closure_bits(u))),
        AxiomId::T3 | AxiomId::T3Half | AxiomId::T4 => {
            let (a, b) = id.conjuncts().expect("composite");
            direct(facts, a) && direct(facts, b)
        }
    }
}

/// A failing instance of a lifting formulation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomWitness {
    pub axiom: AxiomId,
    /// Which member of the left-map family failed.
    pub instance: String,
    pub left: String,
    pub right: String,
    pub top: String,
    pub bottom: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Box<AxiomWitness>),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&AxiomWitness> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }
}

/// Decides `id` through its lifting formulation; composites are the
/// conjunction of their parts.
pub fn check_axiom_lifting(space: &FiniteSpace, id: AxiomId) -> Result<Verdict, AxiomError> {
    let x = Arc::new(space.clone());
    lifting_verdict(&x, id)
}

fn lifting_verdict(x: &Arc<FiniteSpace>, id: AxiomId) -> Result<Verdict, AxiomError> {
    if let Some((a, b)) = id.conjuncts() {
        let first = lifting_verdict(x, a)?;
        return if first.holds() {
            lifting_verdict(x, b)
        } else {
            Ok(first)
        };
    }
    let f = formula(id).ok_or(AxiomError::NoLiftingFormula(id))?;
    Ok(check_formula_on(x, f))
}

/// Evaluates one formula (e.g. an alternative variant) on a space.
pub fn check_formula(space: &FiniteSpace, formula: &AxiomFormula) -> Verdict {
    check_formula_on(&Arc::new(space.clone()), formula)
}

fn check_formula_on(x: &Arc<FiniteSpace>, formula: &AxiomFormula) -> Verdict {
    let to_point;
    let right = match &formula.right {
        RightMap::ToPoint => {
            to_point = ContinuousMap::to_point(x.clone());
            Some(&to_point)
        }
        RightMap::Fixed(g) => Some(g),
        RightMap::RealLine(_) => None,
    };
    for (instance, left) in formula.left_instances(x) {
        let witness = match (right, &formula.right) {
            (Some(g), _) => {
                let raw = RawProblem::from_maps(&left, g);
                raw.first_counterexample().map(|(top, bottom)| {
                    let top = ContinuousMap::new(left.dom().clone(), g.dom().clone(), top)
                        .expect("search yields continuous tops");
                    let bottom = ContinuousMap::new(left.cod().clone(), g.cod().clone(), bottom)
                        .expect("search yields continuous bottoms");
                    (format_map(&top), format_map(&bottom))
                })
            }
            (None, RightMap::RealLine(model)) => real_line::first_counterexample(
                left.dom(),
                left.cod(),
                left.images(),
                *model,
            )
            .map(|c| {
                let labels = crate::notation::display_labels(left.dom());
                let samples = model.samples();
                let top = c
                    .top
                    .iter()
                    .enumerate()
                    .map(|(a, &s)| format!("{} -> {}", labels[a], samples[s].name))
                    .collect::<Vec<_>>()
                    .join(", ");
                let bottom =
                    ContinuousMap::new(left.cod().clone(), model.target().clone(), c.bottom)
                        .expect("search yields continuous bottoms");
                (format!("{{{top}}}"), format_map(&bottom))
            }),
            (None, _) => unreachable!("non-real-line formulas have a finite right map"),
        };
        if let Some((top, bottom)) = witness {
            return Verdict::Fails(Box::new(AxiomWitness {
                axiom: formula.id,
                instance,
                left: format_map(&left),
                right: formula.right_description(),
                top,
                bottom,
            }));
        }
    }
    Verdict::Holds
}

/// Direct verdicts for every axiom, in [`AxiomId::ALL`] order.
pub fn classify_direct(space: &FiniteSpace) -> Vec<(AxiomId, bool)> {
    let facts = Facts::new(space);
    AxiomId::ALL
        .iter()
        .map(|&id| (id, direct(&facts, id)))
        .collect()
}
