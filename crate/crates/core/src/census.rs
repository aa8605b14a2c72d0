//! Exhaustive censuses of the topologies on a few points.
//!
//! A topology on `n` labeled points is a reflexive transitive relation, i.e.
//! a list of closure rows `cl{x}` with `x ∈ cl{x}` and
//! `y ∈ cl{x} => cl{y} ⊆ cl{x}`. Rows are generated in increasing bitmask
//! order and each new row is checked against the earlier ones, so the output
//! is in lexicographic order of the closure matrix.

use std::collections::{BTreeMap, HashMap};
use std::io::{self, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axioms::{
    check_axiom_lifting, classify_direct, precisely_separated_by_function, separated,
    separated_by_closed_neighbourhoods, separated_by_function, separated_by_neighbourhoods,
    AxiomId,
};
use crate::notation::format_space;
use crate::space::{FiniteSpace, SubsetMask};

pub const MAX_LABELED: usize = 6;
pub const MAX_UP_TO_ISO: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Labeled,
    UpToIso,
}

impl Mode {
    pub fn max_points(self) -> usize {
        match self {
            Mode::Labeled => MAX_LABELED,
            Mode::UpToIso => MAX_UP_TO_ISO,
        }
    }
}

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("{mode:?} census supports at most {max} points, got {n}")]
    OutOfRange { n: usize, mode: Mode, max: usize },
    #[error("writing census: {0}")]
    Io(#[from] io::Error),
}

fn check_range(n: usize, mode: Mode) -> Result<(), CensusError> {
    if n > mode.max_points() {
        return Err(CensusError::OutOfRange {
            n,
            mode,
            max: mode.max_points(),
        });
    }
    Ok(())
}

/// Calls `visit` on the closure rows of every topology on `n` points, in
/// lexicographic order. With `sorted_sizes`, only row lists whose sizes are
/// nondecreasing are produced; every topology is homeomorphic to one of them.
fn for_each_rows(n: usize, sorted_sizes: bool, visit: &mut dyn FnMut(&[u64])) {
    fn go(
        n: usize,
        k: usize,
        rows: &mut Vec<u64>,
        sorted_sizes: bool,
        visit: &mut dyn FnMut(&[u64]),
    ) {
        if k == n {
            visit(rows);
            return;
        }
        let own = 1u64 << k;
        let others = ((1u64 << n) - 1) & !own;
        let min_size = if sorted_sizes && k > 0 {
            rows[k - 1].count_ones()
        } else {
            0
        };
        // Enumerate subsets of `others` in increasing order.
        let mut sub = 0u64;
        loop {
            let row = sub | own;
            if row.count_ones() >= min_size && compatible(rows, k, row) {
                rows.push(row);
                go(n, k + 1, rows, sorted_sizes, visit);
                rows.pop();
            }
            if sub == others {
                break;
            }
            sub = (sub.wrapping_sub(others)) & others;
        }
    }
    go(n, 0, &mut Vec::with_capacity(n), sorted_sizes, visit);
}

fn compatible(rows: &[u64], k: usize, row: u64) -> bool {
    rows.iter().enumerate().all(|(j, &other)| {
        (other & (1 << k) == 0 || row & !other == 0) && (row & (1 << j) == 0 || other & !row == 0)
    })
}

fn space_of(rows: &[u64]) -> FiniteSpace {
    FiniteSpace::from_closure_rows(rows.to_vec(), None).expect("enumerated rows are a preorder")
}

/// All topologies on `n` points, labeled or one per homeomorphism class.
pub fn enumerate_topologies(n: usize, mode: Mode) -> Result<Vec<FiniteSpace>, CensusError> {
    check_range(n, mode)?;
    let mut out = Vec::new();
    match mode {
        Mode::Labeled => for_each_rows(n, false, &mut |rows| out.push(space_of(rows))),
        Mode::UpToIso => {
            // Representatives grouped by (arrow count, signature multiset).
            type Key = (usize, Vec<(u32, u32)>);
            let mut buckets: HashMap<Key, Vec<usize>> = HashMap::new();
            for_each_rows(n, true, &mut |rows| {
                let s = space_of(rows);
                let bucket = buckets.entry((s.arrow_count(), s.invariant())).or_default();
                if bucket.iter().all(|&i| !out[i].is_homeomorphic(&s)) {
                    bucket.push(out.len());
                    out.push(s);
                }
            });
        }
    }
    Ok(out)
}

/// Number of topologies on `n` points without materializing them.
pub fn count_topologies(n: usize, mode: Mode) -> Result<usize, CensusError> {
    match mode {
        Mode::Labeled => {
            check_range(n, mode)?;
            let mut count = 0;
            for_each_rows(n, false, &mut |_| count += 1);
            Ok(count)
        }
        Mode::UpToIso => enumerate_topologies(n, mode).map(|v| v.len()),
    }
}

/// One classified space of a census.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub n: usize,
    pub index: usize,
    /// Generating arrows `(x, y)` meaning `y ∈ cl{x}`.
    pub arrows: Vec<(usize, usize)>,
    /// Direct verdicts.
    pub axioms: BTreeMap<AxiomId, bool>,
    /// Whether the lifting verdict equals the direct one, for every axiom
    /// that has a lifting formulation.
    pub lifting_agrees: BTreeMap<AxiomId, bool>,
    #[serde(skip)]
    pub lifting: BTreeMap<AxiomId, bool>,
}

impl CensusRecord {
    pub fn classify(space: &FiniteSpace, index: usize) -> Self {
        let axioms: BTreeMap<AxiomId, bool> = classify_direct(space).into_iter().collect();
        let lifting: BTreeMap<AxiomId, bool> = AxiomId::ALL
            .into_iter()
            .filter(|id| id.has_lifting_form())
            .map(|id| {
                let v = check_axiom_lifting(space, id).expect("axiom has a lifting form");
                (id, v.holds())
            })
            .collect();
        let lifting_agrees = lifting
            .iter()
            .map(|(&id, &l)| (id, axioms[&id] == l))
            .collect();
        Self {
            n: space.len(),
            index,
            arrows: space.reduced_arrows(),
            axioms,
            lifting_agrees,
            lifting,
        }
    }

    pub fn space(&self) -> FiniteSpace {
        FiniteSpace::new(self.n, &self.arrows, None).expect("record arrows are in range")
    }

    pub fn notation(&self) -> String {
        format_space(&self.space())
    }

    pub fn holds(&self, id: AxiomId) -> bool {
        self.axioms[&id]
    }
}

/// Classifies every space, in parallel, keeping enumeration order.
pub fn classify_all(spaces: &[FiniteSpace]) -> Vec<CensusRecord> {
    spaces
        .par_iter()
        .enumerate()
        .map(|(i, s)| CensusRecord::classify(s, i))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: usize,
    pub index: usize,
    pub space: String,
    pub direct: bool,
    pub lifting: bool,
    #[serde(skip)]
    arrow_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomAgreement {
    pub axiom: AxiomId,
    pub hard: bool,
    pub checked: usize,
    pub agreements: usize,
    pub mismatches: Vec<Mismatch>,
}

impl AxiomAgreement {
    pub fn fraction(&self) -> f64 {
        if self.checked == 0 {
            1.0
        } else {
            self.agreements as f64 / self.checked as f64
        }
    }

    /// The mismatch with fewest points, then fewest arrows, then lowest index.
    pub fn minimal_witness(&self) -> Option<&Mismatch> {
        self.mismatches
            .iter()
            .min_by_key(|m| (m.n, m.arrow_count, m.index))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub spaces: usize,
    pub axioms: Vec<AxiomAgreement>,
}

impl EquivalenceReport {
    pub fn from_records(records: &[CensusRecord]) -> Self {
        let axioms = AxiomId::ALL
            .into_iter()
            .filter(|id| id.has_lifting_form())
            .map(|id| {
                let mismatches: Vec<Mismatch> = records
                    .iter()
                    .filter(|r| !r.lifting_agrees[&id])
                    .map(|r| Mismatch {
                        n: r.n,
                        index: r.index,
                        space: r.notation(),
                        direct: r.axioms[&id],
                        lifting: r.lifting[&id],
                        arrow_count: r.space().arrow_count(),
                    })
                    .collect();
                AxiomAgreement {
                    axiom: id,
                    hard: id.is_hard(),
                    checked: records.len(),
                    agreements: records.len() - mismatches.len(),
                    mismatches,
                }
            })
            .collect();
        Self {
            spaces: records.len(),
            axioms,
        }
    }

    pub fn merge(mut self, other: EquivalenceReport) -> Self {
        self.spaces += other.spaces;
        for (mine, theirs) in self.axioms.iter_mut().zip(other.axioms) {
            mine.checked += theirs.checked;
            mine.agreements += theirs.agreements;
            mine.mismatches.extend(theirs.mismatches);
        }
        self
    }

    pub fn hard_mismatches(&self) -> usize {
        self.axioms
            .iter()
            .filter(|a| a.hard)
            .map(|a| a.mismatches.len())
            .sum()
    }

    pub fn axiom(&self, id: AxiomId) -> Option<&AxiomAgreement> {
        self.axioms.iter().find(|a| a.axiom == id)
    }
}

/// Direct vs lifting verdicts over every labeled topology on `n` points.
pub fn run_equivalence_suite(n: usize) -> Result<EquivalenceReport, CensusError> {
    let spaces = enumerate_topologies(n, Mode::Labeled)?;
    Ok(EquivalenceReport::from_records(&classify_all(&spaces)))
}

/// A relation between axioms expected on every space.
pub struct Implication {
    pub name: &'static str,
    pub check: fn(&CensusRecord) -> bool,
}

macro_rules! rule {
    ($name:expr, |$r:ident| $body:expr) => {
        Implication {
            name: $name,
            check: |$r: &CensusRecord| {
                #[allow(unused_imports)]
                use AxiomId::*;
                $body
            },
        }
    };
}

pub const IMPLICATIONS: &[Implication] = &[
    rule!("T1 <=> T0 & R0", |r| r.holds(T1)
        == (r.holds(T0) && r.holds(R0))),
    rule!("T2 <=> T0 & R1", |r| r.holds(T2)
        == (r.holds(T0) && r.holds(R1))),
    rule!("T2 => T1", |r| !r.holds(T2) || r.holds(T1)),
    rule!("T1 => T0", |r| !r.holds(T1) || r.holds(T0)),
    rule!("T2_HALF => T2", |r| !r.holds(T2Half) || r.holds(T2)),
    rule!("COMPLETELY_T2 => T2_HALF", |r| !r.holds(CompletelyT2)
        || r.holds(T2Half)),
    rule!("REGULAR => R1", |r| !r.holds(Regular) || r.holds(R1)),
    rule!("R1 => R0", |r| !r.holds(R1) || r.holds(R0)),
    rule!("T3 => T2_HALF", |r| !r.holds(T3) || r.holds(T2Half)),
    rule!("COMPLETELY_REGULAR => REGULAR", |r| !r
        .holds(CompletelyRegular)
        || r.holds(Regular)),
    rule!("T3_HALF => T3 & COMPLETELY_T2", |r| !r.holds(T3Half)
        || (r.holds(T3) && r.holds(CompletelyT2))),
    rule!("T4 => T3_HALF", |r| !r.holds(T4) || r.holds(T3Half)),
    rule!("COMPLETELY_NORMAL => NORMAL", |r| !r
        .holds(CompletelyNormal)
        || r.holds(Normal)),
    rule!("PERFECTLY_NORMAL => COMPLETELY_NORMAL", |r| !r
        .holds(PerfectlyNormal)
        || r.holds(CompletelyNormal)),
    rule!("NORMAL <=> NORMAL_URYSOHN", |r| r.holds(Normal)
        == r.holds(NormalUrysohn)),
    rule!("T1 => discrete", |r| !r.holds(T1) || r.arrows.is_empty()),
];

/// Strength chain of the subset predicates, strongest first.
pub const STRENGTH_CHAIN: [&str; 6] = [
    "precisely separated by a function",
    "separated by a function",
    "separated by closed neighbourhoods",
    "separated by neighbourhoods",
    "separated",
    "disjoint",
];

/// Truth values of [`STRENGTH_CHAIN`] for one pair of subsets.
pub fn strength_profile(space: &FiniteSpace, a: SubsetMask, b: SubsetMask) -> [bool; 6] {
    let ok = |r: Result<bool, _>| r.expect("masks match the space");
    [
        ok(precisely_separated_by_function(space, a, b)),
        ok(separated_by_function(space, a, b)),
        ok(separated_by_closed_neighbourhoods(space, a, b)),
        ok(separated_by_neighbourhoods(space, a, b)),
        ok(separated(space, a, b)),
        a.is_disjoint(b),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: String,
    pub n: usize,
    pub index: usize,
    pub space: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ImplicationReport {
    pub spaces: usize,
    pub rules: Vec<&'static str>,
    /// Subset pairs checked against the strength chain.
    pub subset_pairs: usize,
    pub violations: Vec<Violation>,
}

impl ImplicationReport {
    /// Checks the axiom implications on `records` and, for spaces with at
    /// most `chain_limit` points, the strength chain on all subset pairs.
    pub fn from_records(records: &[CensusRecord], chain_limit: usize) -> Self {
        let mut violations = Vec::new();
        let mut subset_pairs = 0;
        for r in records {
            for rule in IMPLICATIONS {
                if !(rule.check)(r) {
                    violations.push(Violation {
                        rule: rule.name.to_string(),
                        n: r.n,
                        index: r.index,
                        space: r.notation(),
                    });
                }
            }
            if r.n > chain_limit {
                continue;
            }
            let space = r.space();
            for a in SubsetMask::all(r.n) {
                for b in SubsetMask::all(r.n) {
                    subset_pairs += 1;
                    let p = strength_profile(&space, a, b);
                    if let Some(k) = (0..p.len() - 1).find(|&k| p[k] && !p[k + 1]) {
                        violations.push(Violation {
                            rule: format!(
                                "{} => {} for {} and {}",
                                STRENGTH_CHAIN[k],
                                STRENGTH_CHAIN[k + 1],
                                crate::notation::format_subset(&space, a.bits()),
                                crate::notation::format_subset(&space, b.bits())
                            ),
                            n: r.n,
                            index: r.index,
                            space: format_space(&space),
                        });
                    }
                }
            }
        }
        Self {
            spaces: records.len(),
            rules: IMPLICATIONS.iter().map(|i| i.name).collect(),
            subset_pairs,
            violations,
        }
    }
}

/// Implications over every labeled topology on `n` points; the strength
/// chain is checked when `n <= 3`.
pub fn run_implication_suite(n: usize) -> Result<ImplicationReport, CensusError> {
    let spaces = enumerate_topologies(n, Mode::Labeled)?;
    Ok(ImplicationReport::from_records(&classify_all(&spaces), 3))
}

/// Number of records satisfying each axiom directly.
pub fn tally(records: &[CensusRecord]) -> BTreeMap<AxiomId, usize> {
    AxiomId::ALL
        .into_iter()
        .map(|id| (id, records.iter().filter(|r| r.holds(id)).count()))
        .collect()
}

/// How many labeled spaces on `n` points satisfy each axiom.
pub fn count_by_axiom(n: usize) -> Result<BTreeMap<AxiomId, usize>, CensusError> {
    let spaces = enumerate_topologies(n, Mode::Labeled)?;
    let facts: Vec<Vec<(AxiomId, bool)>> = spaces.par_iter().map(classify_direct).collect();
    Ok(AxiomId::ALL
        .into_iter()
        .enumerate()
        .map(|(k, id)| (id, facts.iter().filter(|f| f[k].1).count()))
        .collect())
}

/// A full census run.
#[derive(Debug, Clone)]
pub struct Census {
    pub n: usize,
    pub mode: Mode,
    pub records: Vec<CensusRecord>,
    pub equivalence: EquivalenceReport,
    pub implications: ImplicationReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryViolation {
    pub kind: String,
    pub rule: String,
    pub index: usize,
    pub space: String,
}

/// The trailing line of a census file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub counts: BTreeMap<AxiomId, usize>,
    pub violations: Vec<SummaryViolation>,
}

impl Census {
    pub fn run(n: usize, mode: Mode) -> Result<Self, CensusError> {
        let spaces = enumerate_topologies(n, mode)?;
        let records = classify_all(&spaces);
        Ok(Self {
            n,
            mode,
            equivalence: EquivalenceReport::from_records(&records),
            implications: ImplicationReport::from_records(&records, 3),
            records,
        })
    }

    /// Hard equivalence mismatches and implication violations.
    pub fn summary(&self) -> CensusSummary {
        let mut violations = Vec::new();
        for a in self.equivalence.axioms.iter().filter(|a| a.hard) {
            for m in &a.mismatches {
                violations.push(SummaryViolation {
                    kind: "equivalence".into(),
                    rule: a.axiom.name().into(),
                    index: m.index,
                    space: m.space.clone(),
                });
            }
        }
        for v in &self.implications.violations {
            violations.push(SummaryViolation {
                kind: "implication".into(),
                rule: v.rule.clone(),
                index: v.index,
                space: v.space.clone(),
            });
        }
        violations.sort_by_key(|v| v.index);
        CensusSummary {
            counts: tally(&self.records),
            violations,
        }
    }

    /// Writes one JSON record per line followed by the summary line.
    pub fn write_to(&self, mut w: impl Write) -> Result<(), CensusError> {
        for r in &self.records {
            serde_json::to_writer(&mut w, r).map_err(io::Error::from)?;
            w.write_all(b"\n")?;
        }
        serde_json::to_writer(&mut w, &self.summary()).map_err(io::Error::from)?;
        w.write_all(b"\n")?;
        w.flush()?;
        Ok(())
    }
}
