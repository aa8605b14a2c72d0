//! Lifting against maps out of real-line objects.
//!
//! The right-hand maps of some axioms start at `[0,1]` or at `[0,1]` with an
//! endpoint doubled by a topologically indistinguishable twin. These are not
//! finite, so they are modelled by finitely many sample points grouped into
//! indistinguishability classes: `0`, two interior values, `1`, plus the
//! twins `0'`, `1'` or `F` sharing a class with their endpoint.
//!
//! A map from a finite space into such an object is continuous iff
//! comparable points land in one class: `leq(x, y)` forces `f(y) ∈ cl{f(x)}`
//! and closures in the reals are classes. Hence continuous maps are exactly
//! the assignments that pick one class per connected component (and any
//! member of that class per point). A diagonal therefore exists iff every
//! component admits a class compatible with the bottom map and with the
//! points pinned by the top map; two interior samples are enough to stand
//! in for the continuum because the left maps have at most two points.

use std::ops::ControlFlow;
use std::sync::{Arc, OnceLock};

use crate::notation::arc_space;
use crate::search::MonotoneSearch;
use crate::space::FiniteSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RealLineModel {
    /// `[0,1] -> {*}`
    IntervalToPoint,
    /// `[0,1] ∪ {F} -> {x>F}`: `F` twins `1`; `[0,1]` goes to `x`.
    IntervalDoubledOne,
    /// `{0'} ∪ [0,1] ∪ {1'} -> {0<x>1}`: `0'`, `1'` twin the endpoints and
    /// go to the closed points, `[0,1]` goes to the open point `x`.
    IntervalDoubledEnds,
    /// `[0,1] -> {0<X>1}`: `(0,1)` goes to the open point `X`.
    IntervalOverCospan,
}

#[derive(Debug, Clone, Copy)]
pub struct Sample {
    pub name: &'static str,
    /// Indistinguishability class.
    pub class: u8,
    /// Label of the image in the target space.
    pub image: &'static str,
}

const fn s(name: &'static str, class: u8, image: &'static str) -> Sample {
    Sample { name, class, image }
}

const TO_POINT: &[Sample] = &[
    s("0", 0, "*"),
    s("1/3", 1, "*"),
    s("2/3", 2, "*"),
    s("1", 3, "*"),
];
const DOUBLED_ONE: &[Sample] = &[
    s("0", 0, "x"),
    s("1/3", 1, "x"),
    s("2/3", 2, "x"),
    s("1", 3, "x"),
    s("F", 3, "F"),
];
const DOUBLED_ENDS: &[Sample] = &[
    s("0'", 0, "0"),
    s("0", 0, "x"),
    s("1/3", 1, "x"),
    s("2/3", 2, "x"),
    s("1", 3, "x"),
    s("1'", 3, "1"),
];
const OVER_COSPAN: &[Sample] = &[
    s("0", 0, "0"),
    s("1/3", 1, "X"),
    s("2/3", 2, "X"),
    s("1", 3, "1"),
];

impl RealLineModel {
    pub const ALL: [RealLineModel; 4] = [
        RealLineModel::IntervalToPoint,
        RealLineModel::IntervalDoubledOne,
        RealLineModel::IntervalDoubledEnds,
        RealLineModel::IntervalOverCospan,
    ];

    /// Key used in the formula table (without the leading `@`).
    pub fn key(self) -> &'static str {
        match self {
            RealLineModel::IntervalToPoint => "interval_to_point",
            RealLineModel::IntervalDoubledOne => "interval_doubled_one",
            RealLineModel::IntervalDoubledEnds => "interval_doubled_ends",
            RealLineModel::IntervalOverCospan => "interval_over_cospan",
        }
    }

    pub fn from_key(key: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|m| m.key() == key)
    }

    pub fn display(self) -> &'static str {
        match self {
            RealLineModel::IntervalToPoint => "[0,1] -> {*}",
            RealLineModel::IntervalDoubledOne => "[0,1] ∪ {F} -> {x>F}",
            RealLineModel::IntervalDoubledEnds => "{0'} ∪ [0,1] ∪ {1'} -> {0<x>1}",
            RealLineModel::IntervalOverCospan => "[0,1] -> {0<X>1}",
        }
    }

    fn target_text(self) -> &'static str {
        match self {
            RealLineModel::IntervalToPoint => "{*}",
            RealLineModel::IntervalDoubledOne => "{x>F}",
            RealLineModel::IntervalDoubledEnds => "{0<x>1}",
            RealLineModel::IntervalOverCospan => "{0<X>1}",
        }
    }

    pub fn samples(self) -> &'static [Sample] {
        match self {
            RealLineModel::IntervalToPoint => TO_POINT,
            RealLineModel::IntervalDoubledOne => DOUBLED_ONE,
            RealLineModel::IntervalDoubledEnds => DOUBLED_ENDS,
            RealLineModel::IntervalOverCospan => OVER_COSPAN,
        }
    }

    /// The finite target space of the model's map.
    pub fn target(self) -> &'static Arc<FiniteSpace> {
        static TARGETS: OnceLock<Vec<Arc<FiniteSpace>>> = OnceLock::new();
        let targets = TARGETS.get_or_init(|| {
            Self::ALL
                .iter()
                .map(|m| arc_space(m.target_text()))
                .collect()
        });
        &targets[self as usize]
    }

    /// Target point of each sample.
    fn sample_images(self) -> Vec<usize> {
        let target = self.target();
        self.samples()
            .iter()
            .map(|s| {
                target
                    .index_of(s.image)
                    .expect("sample image is a target label")
            })
            .collect()
    }
}

/// A square with no diagonal: `top[a]` indexes the model's samples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RealCounterexample {
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
}

/// Decides `f ⧄ (model)` for `f: A -> X`, with `f` given by its images.
pub(crate) fn first_counterexample(
    a: &FiniteSpace,
    x: &FiniteSpace,
    f: &[usize],
    model: RealLineModel,
) -> Option<RealCounterexample> {
    let samples = model.samples();
    let g = model.sample_images();
    let target = model.target();
    let components = x.component_index();
    let component_count = components.iter().copied().max().map_or(0, |m| m + 1);
    let a_components = a.component_index();

    let found = MonotoneSearch::unconstrained(x, target).for_each(|bottom| {
        let mut top = vec![0usize; a.len()];
        let mut result = None;
        tops(
            a,
            &a_components,
            samples,
            &g,
            f,
            bottom,
            0,
            &mut top,
            &mut |top| {
                if diagonal_exists(samples, &g, &components, component_count, f, top, bottom) {
                    false
                } else {
                    result = Some(RealCounterexample {
                        top: top.to_vec(),
                        bottom: bottom.to_vec(),
                    });
                    true
                }
            },
        );
        match result {
            Some(c) => ControlFlow::Break(c),
            None => ControlFlow::Continue(()),
        }
    });
    match found {
        ControlFlow::Break(c) => Some(c),
        ControlFlow::Continue(()) => None,
    }
}

/// Enumerates continuous tops `A -> samples` with `g∘top = bottom∘f`.
/// Stops when `visit` returns true.
#[allow(clippy::too_many_arguments)]
fn tops(
    a: &FiniteSpace,
    a_components: &[usize],
    samples: &[Sample],
    g: &[usize],
    f: &[usize],
    bottom: &[usize],
    k: usize,
    top: &mut [usize],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if k == a.len() {
        return visit(top);
    }
    for (i, sample) in samples.iter().enumerate() {
        if g[i] != bottom[f[k]] {
            continue;
        }
        // Points of one component of A share a class.
        let fits = (0..k)
            .filter(|&j| a_components[j] == a_components[k])
            .all(|j| samples[top[j]].class == sample.class);
        if !fits {
            continue;
        }
        top[k] = i;
        if tops(a, a_components, samples, g, f, bottom, k + 1, top, visit) {
            return true;
        }
    }
    false
}

fn diagonal_exists(
    samples: &[Sample],
    g: &[usize],
    components: &[usize],
    component_count: usize,
    f: &[usize],
    top: &[usize],
    bottom: &[usize],
) -> bool {
    // Pinned sample per point of X, if any.
    let mut pinned: Vec<Option<usize>> = vec![None; bottom.len()];
    for (a, &b) in f.iter().enumerate() {
        match pinned[b] {
            Some(s) if s != top[a] => return false,
            _ => pinned[b] = Some(top[a]),
        }
    }
    let classes: Vec<u8> = {
        let mut c: Vec<u8> = samples.iter().map(|s| s.class).collect();
        c.sort_unstable();
        c.dedup();
        c
    };
    (0..component_count).all(|comp| {
        let points: Vec<usize> = (0..bottom.len())
            .filter(|&p| components[p] == comp)
            .collect();
        let mut forced: Option<u8> = None;
        for &p in &points {
            if let Some(s) = pinned[p] {
                let class = samples[s].class;
                if forced.is_some_and(|c| c != class) {
                    return false;
                }
                forced = Some(class);
            }
        }
        let serves = |class: u8| {
            points.iter().all(|&p| match pinned[p] {
                Some(s) => g[s] == bottom[p],
                None => samples
                    .iter()
                    .enumerate()
                    .any(|(i, s)| s.class == class && g[i] == bottom[p]),
            })
        };
        match forced {
            Some(class) => serves(class),
            None => classes.iter().any(|&c| serves(c)),
        }
    })
}
