//! Backtracking search for monotone maps with per-point candidate sets.
//!
//! Every map-level search in the crate (map enumeration, commuting-square
//! tops, diagonals, factorizations) is an instance of this: assign each
//! domain point an image drawn from its candidate mask such that the
//! assignment is monotone.

use std::ops::ControlFlow;

use crate::space::{bits, FiniteSpace};

pub(crate) struct MonotoneSearch<'a> {
    cod: &'a FiniteSpace,
    /// Domain points in processing order.
    order: Vec<usize>,
    /// For position k: earlier positions j with `leq(order[k], order[j])`.
    below: Vec<Vec<usize>>,
    /// For position k: earlier positions j with `leq(order[j], order[k])`.
    above: Vec<Vec<usize>>,
    /// Candidate images per position.
    candidates: Vec<u64>,
}

impl<'a> MonotoneSearch<'a> {
    /// `candidates[x]` restricts the image of domain point `x`.
    pub(crate) fn new(dom: &FiniteSpace, cod: &'a FiniteSpace, candidates: &[u64]) -> Self {
        let n = dom.len();
        debug_assert_eq!(candidates.len(), n);
        // Closed points (small closures) first; ties by index.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (dom.closure_row(x).count_ones(), x));
        let mut below = Vec::with_capacity(n);
        let mut above = Vec::with_capacity(n);
        for (k, &x) in order.iter().enumerate() {
            below.push((0..k).filter(|&j| dom.leq(x, order[j])).collect::<Vec<_>>());
            above.push((0..k).filter(|&j| dom.leq(order[j], x)).collect::<Vec<_>>());
        }
        let full = cod.full_bits();
        let candidates = order.iter().map(|&x| candidates[x] & full).collect();
        Self {
            cod,
            order,
            below,
            above,
            candidates,
        }
    }

    pub(crate) fn unconstrained(dom: &FiniteSpace, cod: &'a FiniteSpace) -> Self {
        let all = vec![cod.full_bits(); dom.len()];
        Self::new(dom, cod, &all)
    }

    /// Calls `visit` with each monotone assignment (indexed by domain point).
    pub(crate) fn for_each<B>(
        &self,
        mut visit: impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let n = self.order.len();
        let mut by_pos = vec![0usize; n];
        let mut by_point = vec![0usize; n];
        self.extend(0, &mut by_pos, &mut by_point, &mut visit)
    }

    fn extend<B>(
        &self,
        k: usize,
        by_pos: &mut [usize],
        by_point: &mut [usize],
        visit: &mut impl FnMut(&[usize]) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        if k == self.order.len() {
            return visit(by_point);
        }
        let mut allowed = self.candidates[k];
        for &j in &self.below[k] {
            // leq(x, order[j]) needs leq(f x, f order[j]).
            allowed &= self.cod.star_row(by_pos[j]);
        }
        for &j in &self.above[k] {
            allowed &= self.cod.closure_row(by_pos[j]);
        }
        let x = self.order[k];
        for c in bits(allowed) {
            by_pos[k] = c;
            by_point[x] = c;
            self.extend(k + 1, by_pos, by_point, visit)?;
        }
        ControlFlow::Continue(())
    }

    pub(crate) fn first(&self) -> Option<Vec<usize>> {
        match self.for_each(|m| ControlFlow::Break(m.to_vec())) {
            ControlFlow::Break(m) => Some(m),
            ControlFlow::Continue(()) => None,
        }
    }

    pub(crate) fn count(&self) -> usize {
        let mut count = 0;
        let _ = self.for_each::<()>(|_| {
            count += 1;
            ControlFlow::Continue(())
        });
        count
    }
}

/// `fibers[y]` = mask of points mapped to `y` by `images`.
pub(crate) fn fibers(images: &[usize], cod_len: usize) -> Vec<u64> {
    let mut out = vec![0u64; cod_len];
    for (x, &y) in images.iter().enumerate() {
        out[y] |= 1 << x;
    }
    out
}
