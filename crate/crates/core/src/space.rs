//! Finite topological spaces as specialization preorders.
//!
//! Throughout the crate the order convention is `leq(x, y)` iff `y ∈ cl{x}`:
//! an arrow `x > y` points from a "more open" point to a point in its closure.
//! With this convention a subset is closed iff it is closed under following
//! `leq` forward, and open iff it is closed under following `leq` backward.
//! The minimal open neighbourhood of `x` is therefore `{y : leq(y, x)}`.

use std::fmt;

use thiserror::Error;

/// Spaces are capped so that every subset fits in one machine word.
pub const MAX_POINTS: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("arrow ({0}, {1}) refers to a point outside a space of {2} points")]
    ArrowOutOfRange(usize, usize, usize),
    #[error("point {0} is out of range for a space of {1} points")]
    PointOutOfRange(usize, usize),
    #[error("spaces are limited to {MAX_POINTS} points, got {0}")]
    TooManyPoints(usize),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("empty point label")]
    EmptyLabel,
    #[error("subset of width {got} used with a space of {expected} points")]
    WidthMismatch { expected: usize, got: usize },
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

#[inline]
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// A subset of the points of a space with a known width.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubsetMask {
    bits: u64,
    width: usize,
}

impl SubsetMask {
    pub fn empty(width: usize) -> Self {
        Self { bits: 0, width }
    }

    pub fn full(width: usize) -> Self {
        Self {
            bits: full_mask(width),
            width,
        }
    }

    /// Builds a mask from raw bits; bits at or above `width` are dropped.
    pub fn from_bits(bits: u64, width: usize) -> Self {
        Self {
            bits: bits & full_mask(width),
            width,
        }
    }

    pub fn from_points(width: usize, points: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = 0u64;
        for p in points {
            assert!(p < width, "point {p} outside subset of width {width}");
            bits |= 1 << p;
        }
        Self { bits, width }
    }

    pub fn singleton(width: usize, point: usize) -> Self {
        Self::from_points(width, [point])
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn width(self) -> usize {
        self.width
    }

    pub fn contains(self, point: usize) -> bool {
        point < self.width && self.bits & (1 << point) != 0
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn complement(self) -> Self {
        Self {
            bits: !self.bits & full_mask(self.width),
            width: self.width,
        }
    }

    pub fn union(self, other: Self) -> Self {
        debug_assert_eq!(self.width, other.width);
        Self {
            bits: self.bits | other.bits,
            width: self.width,
        }
    }

    pub fn intersection(self, other: Self) -> Self {
        debug_assert_eq!(self.width, other.width);
        Self {
            bits: self.bits & other.bits,
            width: self.width,
        }
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.bits & other.bits == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        bits(self.bits)
    }

    /// All subsets of a space with `width` points, in increasing bit order.
    pub fn all(width: usize) -> impl Iterator<Item = SubsetMask> {
        assert!(width <= MAX_POINTS);
        (0..=full_mask(width)).map(move |bits| SubsetMask { bits, width })
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A finite topological space, stored as its specialization preorder.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    /// `closures[x]` = cl{x} = `{y : leq(x, y)}`.
    closures: Vec<u64>,
    /// `stars[x]` = minimal open neighbourhood of x = `{y : leq(y, x)}`.
    stars: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl FiniteSpace {
    /// Builds the space whose preorder is the reflexive-transitive closure of
    /// `arrows`. An arrow `(x, y)` states `y ∈ cl{x}`.
    pub fn new(
        n: usize,
        arrows: &[(usize, usize)],
        labels: Option<Vec<String>>,
    ) -> Result<Self, SpaceError> {
        if n > MAX_POINTS {
            return Err(SpaceError::TooManyPoints(n));
        }
        let mut rows: Vec<u64> = (0..n).map(|x| 1u64 << x).collect();
        for &(x, y) in arrows {
            if x >= n || y >= n {
                return Err(SpaceError::ArrowOutOfRange(x, y, n));
            }
            rows[x] |= 1 << y;
        }
        // Warshall over bit rows.
        for k in 0..n {
            let row_k = rows[k];
            for row in rows.iter_mut() {
                if *row & (1 << k) != 0 {
                    *row |= row_k;
                }
            }
        }
        Self::from_closure_rows(rows, labels)
    }

    /// Builds a space from rows that are already reflexive and transitive.
    pub(crate) fn from_closure_rows(
        closures: Vec<u64>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, SpaceError> {
        let n = closures.len();
        if n > MAX_POINTS {
            return Err(SpaceError::TooManyPoints(n));
        }
        if let Some(labels) = &labels {
            if labels.len() != n {
                return Err(SpaceError::LabelCount {
                    expected: n,
                    got: labels.len(),
                });
            }
            let mut seen = std::collections::HashSet::new();
            for l in labels {
                if l.is_empty() {
                    return Err(SpaceError::EmptyLabel);
                }
                if !seen.insert(l.as_str()) {
                    return Err(SpaceError::DuplicateLabel(l.clone()));
                }
            }
        }
        let mut stars = vec![0u64; n];
        for (x, &row) in closures.iter().enumerate() {
            debug_assert!(row & (1 << x) != 0, "closure rows must be reflexive");
            for y in bits(row) {
                stars[y] |= 1 << x;
            }
        }
        Ok(Self {
            closures,
            stars,
            labels,
        })
    }

    pub fn empty() -> Self {
        Self {
            closures: Vec::new(),
            stars: Vec::new(),
            labels: None,
        }
    }

    pub fn point() -> Self {
        Self::discrete(1)
    }

    pub fn discrete(n: usize) -> Self {
        Self::new(n, &[], None).expect("discrete space within size cap")
    }

    pub fn antidiscrete(n: usize) -> Self {
        let arrows: Vec<_> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
        Self::new(n, &arrows, None).expect("antidiscrete space within size cap")
    }

    /// The Sierpinski space `{a>b}`: `a` open, `b` closed.
    pub fn sierpinski() -> Self {
        Self::new(2, &[(0, 1)], Some(vec!["a".into(), "b".into()])).unwrap()
    }

    pub fn len(&self) -> usize {
        self.closures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closures.is_empty()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, x: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[x].as_str())
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    /// Same points and preorder, labels replaced.
    pub fn with_labels(&self, labels: Option<Vec<String>>) -> Result<Self, SpaceError> {
        Self::from_closure_rows(self.closures.clone(), labels)
    }

    /// `y ∈ cl{x}`.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.closures[x] & (1 << y) != 0
    }

    /// Points `x` and `y` have the same closure.
    #[inline]
    pub fn indistinguishable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) && self.leq(y, x)
    }

    #[inline]
    pub(crate) fn closure_row(&self, x: usize) -> u64 {
        self.closures[x]
    }

    #[inline]
    pub(crate) fn star_row(&self, x: usize) -> u64 {
        self.stars[x]
    }

    pub(crate) fn closure_rows(&self) -> &[u64] {
        &self.closures
    }

    pub(crate) fn full_bits(&self) -> u64 {
        full_mask(self.len())
    }

    #[inline]
    pub(crate) fn closure_bits(&self, s: u64) -> u64 {
        bits(s).fold(0, |acc, x| acc | self.closures[x])
    }

    /// Smallest open set containing `s`.
    #[inline]
    pub(crate) fn open_hull_bits(&self, s: u64) -> u64 {
        bits(s).fold(0, |acc, x| acc | self.stars[x])
    }

    #[inline]
    pub(crate) fn is_closed_bits(&self, s: u64) -> bool {
        self.closure_bits(s) == s
    }

    #[inline]
    pub(crate) fn is_open_bits(&self, s: u64) -> bool {
        self.open_hull_bits(s) == s
    }

    fn check_width(&self, s: SubsetMask) -> Result<(), SpaceError> {
        if s.width() != self.len() {
            Err(SpaceError::WidthMismatch {
                expected: self.len(),
                got: s.width(),
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_point(&self, x: usize) -> Result<(), SpaceError> {
        if x < self.len() {
            Ok(())
        } else {
            Err(SpaceError::PointOutOfRange(x, self.len()))
        }
    }

    pub fn mask(&self, bits: u64) -> SubsetMask {
        SubsetMask::from_bits(bits, self.len())
    }

    pub fn closure(&self, s: SubsetMask) -> Result<SubsetMask, SpaceError> {
        self.check_width(s)?;
        Ok(self.mask(self.closure_bits(s.bits())))
    }

    pub fn interior(&self, s: SubsetMask) -> Result<SubsetMask, SpaceError> {
        self.check_width(s)?;
        let outside = self.closure_bits(s.complement().bits());
        Ok(self.mask(!outside))
    }

    pub fn is_closed(&self, s: SubsetMask) -> Result<bool, SpaceError> {
        self.check_width(s)?;
        Ok(self.is_closed_bits(s.bits()))
    }

    pub fn is_open(&self, s: SubsetMask) -> Result<bool, SpaceError> {
        self.check_width(s)?;
        Ok(self.is_closed_bits(s.complement().bits()))
    }

    /// Smallest open set containing `s`.
    pub fn open_hull(&self, s: SubsetMask) -> Result<SubsetMask, SpaceError> {
        self.check_width(s)?;
        Ok(self.mask(self.open_hull_bits(s.bits())))
    }

    pub fn open_sets(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        SubsetMask::all(self.len()).filter(|s| self.is_open_bits(s.bits()))
    }

    pub fn closed_sets(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        SubsetMask::all(self.len()).filter(|s| self.is_closed_bits(s.bits()))
    }

    /// Connected components: classes of the symmetrized comparability graph,
    /// ordered by their lowest point.
    pub fn connected_components(&self) -> Vec<SubsetMask> {
        self.component_bits()
            .into_iter()
            .map(|c| self.mask(c))
            .collect()
    }

    pub(crate) fn component_bits(&self) -> Vec<u64> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen & (1 << start) != 0 {
                continue;
            }
            let mut comp = 1u64 << start;
            loop {
                let grown = bits(comp).fold(comp, |acc, x| acc | self.closures[x] | self.stars[x]);
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            seen |= comp;
            out.push(comp);
        }
        out
    }

    /// `component_of[x]` is the index of x's component in
    /// [`connected_components`](Self::connected_components).
    pub(crate) fn component_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.len()];
        for (c, comp) in self.component_bits().into_iter().enumerate() {
            for x in bits(comp) {
                idx[x] = c;
            }
        }
        idx
    }

    /// Number of pairs `x != y` with `leq(x, y)`.
    pub fn arrow_count(&self) -> usize {
        self.closures
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            - self.len()
    }

    /// `leq` is the identity relation.
    pub fn is_discrete(&self) -> bool {
        self.closures.iter().enumerate().all(|(x, &r)| r == 1 << x)
    }

    /// A generating set of arrows: consecutive members of each class of
    /// indistinguishable points in both directions, plus covering arrows
    /// between the lowest members of distinct classes. Sorted.
    pub fn reduced_arrows(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut rep = vec![usize::MAX; n];
        let mut arrows = Vec::new();
        for x in 0..n {
            if rep[x] != usize::MAX {
                continue;
            }
            let class: Vec<usize> = bits(self.closures[x] & self.stars[x]).collect();
            for &m in &class {
                rep[m] = x;
            }
            for w in class.windows(2) {
                arrows.push((w[0], w[1]));
                arrows.push((w[1], w[0]));
            }
        }
        for x in (0..n).filter(|&x| rep[x] == x) {
            for y in (0..n).filter(|&y| rep[y] == y && y != x) {
                if !self.leq(x, y) || self.leq(y, x) {
                    continue;
                }
                let covered = (0..n)
                    .filter(|&z| rep[z] == z && z != x && z != y)
                    .any(|z| {
                        self.leq(x, z) && !self.leq(z, x) && self.leq(z, y) && !self.leq(y, z)
                    });
                if !covered {
                    arrows.push((x, y));
                }
            }
        }
        arrows.sort_unstable();
        arrows
    }

    /// Relabels points by `perm`: point `x` of `self` becomes `perm[x]`.
    pub fn permuted(&self, perm: &[usize]) -> FiniteSpace {
        let n = self.len();
        assert_eq!(perm.len(), n);
        let mut rows = vec![0u64; n];
        for x in 0..n {
            for y in bits(self.closures[x]) {
                rows[perm[x]] |= 1 << perm[y];
            }
        }
        let labels = self.labels.as_ref().map(|l| {
            let mut out = vec![String::new(); n];
            for x in 0..n {
                out[perm[x]] = l[x].clone();
            }
            out
        });
        Self::from_closure_rows(rows, labels).expect("permutation keeps a valid space")
    }

    /// `(|cl{x}|, |star(x)|)` for each point.
    pub(crate) fn point_signature(&self, x: usize) -> (u32, u32) {
        (self.closures[x].count_ones(), self.stars[x].count_ones())
    }

    /// Sorted multiset of point signatures; equal for homeomorphic spaces.
    pub fn invariant(&self) -> Vec<(u32, u32)> {
        let mut sig: Vec<_> = (0..self.len()).map(|x| self.point_signature(x)).collect();
        sig.sort_unstable();
        sig
    }

    /// A bijection `phi` with `leq(x, y) <=> other.leq(phi[x], phi[y])`, if any.
    pub fn homeomorphism_to(&self, other: &FiniteSpace) -> Option<Vec<usize>> {
        if self.len() != other.len()
            || self.arrow_count() != other.arrow_count()
            || self.invariant() != other.invariant()
        {
            return None;
        }
        let n = self.len();
        let candidates: Vec<u64> = (0..n)
            .map(|x| {
                let sig = self.point_signature(x);
                (0..n)
                    .filter(|&y| other.point_signature(y) == sig)
                    .fold(0u64, |acc, y| acc | 1 << y)
            })
            .collect();
        // Most constrained points first.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (candidates[x].count_ones(), x));
        let mut phi = vec![usize::MAX; n];
        if iso_extend(self, other, &order, &candidates, 0, 0, &mut phi) {
            Some(phi)
        } else {
            None
        }
    }

    pub fn is_homeomorphic(&self, other: &FiniteSpace) -> bool {
        self.homeomorphism_to(other).is_some()
    }
}

fn iso_extend(
    a: &FiniteSpace,
    b: &FiniteSpace,
    order: &[usize],
    candidates: &[u64],
    depth: usize,
    used: u64,
    phi: &mut [usize],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let x = order[depth];
    for y in bits(candidates[x] & !used) {
        let consistent = order[..depth]
            .iter()
            .all(|&z| a.leq(x, z) == b.leq(y, phi[z]) && a.leq(z, x) == b.leq(phi[z], y));
        if !consistent {
            continue;
        }
        phi[x] = y;
        if iso_extend(a, b, order, candidates, depth + 1, used | 1 << y, phi) {
            return true;
        }
    }
    phi[x] = usize::MAX;
    false
}

impl fmt::Debug for FiniteSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteSpace({})", crate::notation::format_space(self))
    }
}

/// Builds a space from generating arrows; see [`FiniteSpace::new`].
pub fn build_space(
    n: usize,
    arrows: &[(usize, usize)],
    labels: Option<Vec<String>>,
) -> Result<FiniteSpace, SpaceError> {
    FiniteSpace::new(n, arrows, labels)
}

pub fn are_homeomorphic(a: &FiniteSpace, b: &FiniteSpace) -> bool {
    a.is_homeomorphic(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(ls: &[&str]) -> Option<Vec<String>> {
        Some(ls.iter().map(|s| s.to_string()).collect())
    }

    fn set(s: &FiniteSpace, pts: &[usize]) -> SubsetMask {
        SubsetMask::from_points(s.len(), pts.iter().copied())
    }

    #[test]
    fn sierpinski_open_and_closed_points() {
        let s = build_space(2, &[(0, 1)], labels(&["a", "b"])).unwrap();
        assert!(s.is_open(set(&s, &[0])).unwrap());
        assert!(!s.is_closed(set(&s, &[0])).unwrap());
        assert!(s.is_closed(set(&s, &[1])).unwrap());
        assert!(!s.is_open(set(&s, &[1])).unwrap());
        assert_eq!(s.closure(set(&s, &[0])).unwrap(), set(&s, &[0, 1]));
    }

    #[test]
    fn one_point_space() {
        let s = build_space(1, &[], None).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.leq(0, 0));
        assert!(s.is_discrete());
    }

    #[test]
    fn cospan_closures() {
        // a > c < b
        let s = build_space(3, &[(0, 2), (1, 2)], None).unwrap();
        assert_eq!(s.closure(set(&s, &[0])).unwrap(), set(&s, &[0, 2]));
        assert_eq!(s.closure(set(&s, &[1])).unwrap(), set(&s, &[1, 2]));
        assert_eq!(s.closure(set(&s, &[2])).unwrap(), set(&s, &[2]));
        // {a,c}: complement {b} is not closed since c ∈ cl b
        assert!(!s.is_open(set(&s, &[0, 2])).unwrap());
    }

    #[test]
    fn transitive_closure_of_chain() {
        let s = build_space(3, &[(0, 1), (1, 2)], None).unwrap();
        assert!(s.leq(0, 2));
        assert!(!s.leq(2, 0));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            build_space(2, &[(0, 2)], None),
            Err(SpaceError::ArrowOutOfRange(0, 2, 2))
        );
        assert_eq!(
            build_space(64, &[], None),
            Err(SpaceError::TooManyPoints(64))
        );
        assert!(matches!(
            build_space(2, &[], labels(&["a", "a"])),
            Err(SpaceError::DuplicateLabel(_))
        ));
        assert!(matches!(
            build_space(2, &[], labels(&["a"])),
            Err(SpaceError::LabelCount { .. })
        ));
    }

    #[test]
    fn width_mismatch_is_reported() {
        let s = FiniteSpace::sierpinski();
        let bad = SubsetMask::empty(3);
        assert_eq!(
            s.closure(bad),
            Err(SpaceError::WidthMismatch {
                expected: 2,
                got: 3
            })
        );
        assert!(s.is_open(bad).is_err());
        assert!(s.interior(bad).is_err());
    }

    #[test]
    fn empty_and_full_sets() {
        let s = build_space(3, &[(0, 2), (1, 2)], None).unwrap();
        assert!(s.closure(SubsetMask::empty(3)).unwrap().is_empty());
        let full = SubsetMask::full(3);
        assert!(s.is_open(full).unwrap() && s.is_closed(full).unwrap());
    }

    #[test]
    fn interior_is_dual_of_closure() {
        let s = FiniteSpace::sierpinski();
        assert_eq!(s.interior(set(&s, &[1])).unwrap(), set(&s, &[]));
        assert_eq!(s.interior(set(&s, &[0])).unwrap(), set(&s, &[0]));
    }

    #[test]
    fn components() {
        assert_eq!(FiniteSpace::discrete(2).connected_components().len(), 2);
        let s = FiniteSpace::sierpinski();
        assert_eq!(s.connected_components(), vec![set(&s, &[0, 1])]);
        // {a>b, c>d}
        let s = build_space(4, &[(0, 1), (2, 3)], None).unwrap();
        assert_eq!(
            s.connected_components(),
            vec![set(&s, &[0, 1]), set(&s, &[2, 3])]
        );
    }

    #[test]
    fn homeomorphism_examples() {
        let a = FiniteSpace::sierpinski();
        let b = build_space(2, &[(1, 0)], None).unwrap();
        assert_eq!(a.homeomorphism_to(&b), Some(vec![1, 0]));
        assert!(!a.is_homeomorphic(&FiniteSpace::discrete(2)));
        assert!(a.is_homeomorphic(&a));
    }

    #[test]
    fn reduced_arrows_regenerate_the_preorder() {
        let s = build_space(4, &[(0, 1), (1, 0), (1, 2), (0, 3), (2, 3)], None).unwrap();
        let r = s.reduced_arrows();
        assert_eq!(r, vec![(0, 1), (0, 2), (1, 0), (2, 3)]);
        assert_eq!(build_space(4, &r, None).unwrap(), s);
    }
}
