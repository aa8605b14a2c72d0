//! The lifting property `f ⧄ g` for maps of finite spaces.
//!
//! Shape, fixed once for the whole crate:
//!
//! ```text
//!   A --top--> E
//!   |          |
//!   f          g
//!   v          v
//!   B -bottom> Y
//! ```
//!
//! `f` lifts against `g` iff every commuting square (`g∘top = bottom∘f`) has
//! a diagonal `d: B -> E` with `d∘f = top` and `g∘d = bottom`.
//!
//! Squares are visited bottom-major: for each continuous `bottom` (in search
//! order), every continuous `top` landing in the right `g`-fibres. The first
//! square without a diagonal is the reported counterexample, so results are
//! reproducible.

use std::ops::ControlFlow;

use thiserror::Error;

use crate::morphism::{compose, same_topology, ContinuousMap};
use crate::search::{fibers, MonotoneSearch};
use crate::space::FiniteSpace;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftingError {
    #[error("square does not commute: g∘top differs from bottom∘f")]
    NonCommuting,
    #[error("square maps do not match the spaces of the lifting problem")]
    SpaceMismatch,
}

#[derive(Debug, Clone)]
pub struct LiftingProblem {
    /// `f: A -> B`
    pub left: ContinuousMap,
    /// `g: E -> Y`
    pub right: ContinuousMap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Square {
    /// `A -> E`
    pub top: ContinuousMap,
    /// `B -> Y`
    pub bottom: ContinuousMap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftingOutcome {
    Lifts,
    /// The first commuting square that has no diagonal.
    Fails(Square),
}

impl LiftingOutcome {
    pub fn lifts(&self) -> bool {
        matches!(self, LiftingOutcome::Lifts)
    }

    pub fn counterexample(&self) -> Option<&Square> {
        match self {
            LiftingOutcome::Lifts => None,
            LiftingOutcome::Fails(sq) => Some(sq),
        }
    }
}

/// Borrowed view of a lifting problem as bare image arrays.
pub(crate) struct RawProblem<'a> {
    pub a: &'a FiniteSpace,
    pub b: &'a FiniteSpace,
    pub f: &'a [usize],
    pub e: &'a FiniteSpace,
    pub y: &'a FiniteSpace,
    pub g: &'a [usize],
}

impl<'a> RawProblem<'a> {
    pub(crate) fn from_maps(left: &'a ContinuousMap, right: &'a ContinuousMap) -> Self {
        Self {
            a: left.dom(),
            b: left.cod(),
            f: left.images(),
            e: right.dom(),
            y: right.cod(),
            g: right.images(),
        }
    }

    /// Visits commuting squares as `(top, bottom)`.
    pub(crate) fn for_each_square<R>(
        &self,
        mut visit: impl FnMut(&[usize], &[usize]) -> ControlFlow<R>,
    ) -> ControlFlow<R> {
        let g_fibers = fibers(self.g, self.y.len());
        MonotoneSearch::unconstrained(self.b, self.y).for_each(|bottom| {
            let candidates: Vec<u64> = self.f.iter().map(|&b| g_fibers[bottom[b]]).collect();
            MonotoneSearch::new(self.a, self.e, &candidates).for_each(|top| visit(top, bottom))
        })
    }

    pub(crate) fn diagonal(&self, top: &[usize], bottom: &[usize]) -> Option<Vec<usize>> {
        let g_fibers = fibers(self.g, self.y.len());
        let mut candidates: Vec<u64> = bottom.iter().map(|&y| g_fibers[y]).collect();
        for (a, &b) in self.f.iter().enumerate() {
            candidates[b] &= 1 << top[a];
        }
        MonotoneSearch::new(self.b, self.e, &candidates).first()
    }

    pub(crate) fn first_counterexample(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        match self.for_each_square(|top, bottom| {
            if self.diagonal(top, bottom).is_some() {
                ControlFlow::Continue(())
            } else {
                ControlFlow::Break((top.to_vec(), bottom.to_vec()))
            }
        }) {
            ControlFlow::Break(sq) => Some(sq),
            ControlFlow::Continue(()) => None,
        }
    }
}

impl LiftingProblem {
    pub fn new(left: ContinuousMap, right: ContinuousMap) -> Self {
        Self { left, right }
    }

    fn raw(&self) -> RawProblem<'_> {
        RawProblem::from_maps(&self.left, &self.right)
    }

    fn square(&self, top: &[usize], bottom: &[usize]) -> Square {
        Square {
            top: ContinuousMap::new_unchecked(
                self.left.dom().clone(),
                self.right.dom().clone(),
                top.to_vec(),
            ),
            bottom: ContinuousMap::new_unchecked(
                self.left.cod().clone(),
                self.right.cod().clone(),
                bottom.to_vec(),
            ),
        }
    }
}

pub fn enumerate_commuting_squares(p: &LiftingProblem) -> Vec<Square> {
    let mut out = Vec::new();
    let _ = p.raw().for_each_square::<()>(|top, bottom| {
        out.push(p.square(top, bottom));
        ControlFlow::Continue(())
    });
    out
}

/// A diagonal `d: B -> E` for a commuting square, if one exists.
pub fn find_diagonal(
    p: &LiftingProblem,
    s: &Square,
) -> Result<Option<ContinuousMap>, LiftingError> {
    let fits = same_topology(s.top.dom(), p.left.dom())
        && same_topology(s.top.cod(), p.right.dom())
        && same_topology(s.bottom.dom(), p.left.cod())
        && same_topology(s.bottom.cod(), p.right.cod());
    if !fits {
        return Err(LiftingError::SpaceMismatch);
    }
    let commutes = compose(&p.right, &s.top).map_err(|_| LiftingError::SpaceMismatch)?;
    let other = compose(&s.bottom, &p.left).map_err(|_| LiftingError::SpaceMismatch)?;
    if commutes.images() != other.images() {
        return Err(LiftingError::NonCommuting);
    }
    Ok(p.raw()
        .diagonal(s.top.images(), s.bottom.images())
        .map(|d| ContinuousMap::new_unchecked(p.left.cod().clone(), p.right.dom().clone(), d)))
}

/// Decides `left ⧄ right`, returning the first failing square otherwise.
pub fn has_lifting(p: &LiftingProblem) -> LiftingOutcome {
    match p.raw().first_counterexample() {
        None => LiftingOutcome::Lifts,
        Some((top, bottom)) => LiftingOutcome::Fails(p.square(&top, &bottom)),
    }
}
