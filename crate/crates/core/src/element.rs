//! Cofinite partial isometries of the positive integers.
//!
//! Every such map is a partial shift: it is defined on `ℕ ∖ excluded` for a
//! finite `excluded` set and sends `x` to `x + shift`. This module stores
//! exactly that pair and derives everything else from it.
//!
//! Composition follows the right-action convention: `a.compose(&b)` applies
//! `a` first and then `b`, so `x(ab) = (xa)b`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};

/// A positive integer.
pub type Point = u64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartialIso {
    // sorted ascending, no duplicates, no zero
    excluded: Vec<Point>,
    shift: i64,
}

impl PartialIso {
    /// Builds the partial shift defined on `ℕ ∖ excluded` with the given shift.
    pub fn new<I>(excluded: I, shift: i64) -> Result<Self>
    where
        I: IntoIterator<Item = Point>,
    {
        let set: BTreeSet<Point> = excluded.into_iter().collect();
        if set.contains(&0) {
            return Err(Error::ZeroPoint);
        }
        let excluded: Vec<Point> = set.into_iter().collect();
        let min_domain = first_gap(&excluded);
        if (min_domain as i64) + shift < 1 {
            return Err(Error::InvalidShift { shift, min_domain });
        }
        Ok(PartialIso { excluded, shift })
    }

    /// Caller guarantees canonical form and a valid shift.
    pub(crate) fn from_canonical(excluded: Vec<Point>, shift: i64) -> Self {
        debug_assert!(excluded.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(excluded.first().is_none_or(|&e| e >= 1));
        debug_assert!(first_gap(&excluded) as i64 + shift >= 1);
        PartialIso { excluded, shift }
    }

    pub fn identity() -> Self {
        PartialIso::from_canonical(Vec::new(), 0)
    }

    /// `α`, the map `n ↦ n + 1` on all of ℕ.
    pub fn alpha() -> Self {
        PartialIso::from_canonical(Vec::new(), 1)
    }

    /// `β`, the map `n ↦ n − 1` on `ℕ ∖ {1}`.
    pub fn beta() -> Self {
        PartialIso::from_canonical(vec![1], -1)
    }

    pub fn alpha_pow(k: u64) -> Self {
        PartialIso::from_canonical(Vec::new(), k as i64)
    }

    pub fn beta_pow(k: u64) -> Self {
        PartialIso::from_canonical((1..=k).collect(), -(k as i64))
    }

    /// The identity map of `ℕ ∖ {i}`.
    pub fn epsilon(i: Point) -> Result<Self> {
        if i == 0 {
            return Err(Error::InvalidArgument("ε[i] needs i ≥ 1".into()));
        }
        Ok(PartialIso::from_canonical(vec![i], 0))
    }

    /// The identity map of `[n) = {n, n+1, …}`.
    pub fn tail_identity(n: Point) -> Self {
        PartialIso::from_canonical((1..n.max(1)).collect(), 0)
    }

    pub fn excluded(&self) -> &[Point] {
        &self.excluded
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn in_domain(&self, x: Point) -> bool {
        x >= 1 && self.excluded.binary_search(&x).is_err()
    }

    pub fn in_range(&self, y: Point) -> bool {
        let pre = y as i64 - self.shift;
        pre >= 1 && self.in_domain(pre as Point)
    }

    pub fn apply(&self, x: Point) -> Option<Point> {
        self.in_domain(x).then(|| (x as i64 + self.shift) as Point)
    }

    /// `self` first, then `other`.
    pub fn compose(&self, other: &PartialIso) -> PartialIso {
        let mut set: BTreeSet<Point> = self.excluded.iter().copied().collect();
        set.extend(other.excluded.iter().filter_map(|&e| {
            let x = e as i64 - self.shift;
            (x >= 1).then_some(x as Point)
        }));
        PartialIso::from_canonical(set.into_iter().collect(), self.shift + other.shift)
    }

    pub fn inverse(&self) -> PartialIso {
        PartialIso::from_canonical(self.range_excluded(), -self.shift)
    }

    /// `ℕ ∖ ran`, ascending.
    pub fn range_excluded(&self) -> Vec<Point> {
        let s = self.shift;
        let low = 1..=s.max(0) as Point;
        let shifted = self.excluded.iter().filter_map(|&e| {
            let y = e as i64 + s;
            (y >= 1).then_some(y as Point)
        });
        // both pieces are ascending and disjoint: shifted values exceed s
        low.chain(shifted).collect()
    }

    /// Integer power; negative exponents are powers of the inverse.
    pub fn pow(&self, n: i64) -> PartialIso {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(PartialIso::identity(), |acc, _| acc.compose(&base))
    }

    /// Start of the terminal segment on which the map is a plain shift.
    pub fn nd(&self) -> Point {
        self.excluded.last().map_or(1, |&m| m + 1)
    }

    /// `min dom`.
    pub fn und(&self) -> Point {
        first_gap(&self.excluded)
    }

    pub fn nr(&self) -> Point {
        (self.nd() as i64 + self.shift) as Point
    }

    pub fn unr(&self) -> Point {
        (self.und() as i64 + self.shift) as Point
    }

    pub fn noise(&self) -> u64 {
        self.nd() - self.und()
    }

    /// Restriction to `[nd)`; always an element of the bicyclic submonoid.
    pub fn arrow(&self) -> PartialIso {
        PartialIso::from_canonical((1..self.nd()).collect(), self.shift)
    }

    /// Image in `ℤ(+)` under the minimum group congruence.
    pub fn pi(&self) -> i64 {
        self.shift
    }

    pub fn is_idempotent(&self) -> bool {
        self.shift == 0
    }

    pub fn is_bicyclic(&self) -> bool {
        self.noise() == 0
    }
}

fn first_gap(sorted: &[Point]) -> Point {
    let mut candidate = 1;
    for &e in sorted {
        if e == candidate {
            candidate += 1;
        } else if e > candidate {
            break;
        }
    }
    candidate
}

impl Mul for &PartialIso {
    type Output = PartialIso;

    fn mul(self, rhs: &PartialIso) -> PartialIso {
        self.compose(rhs)
    }
}

impl fmt::Display for PartialIso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "iso([")?;
        for (i, e) in self.excluded.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "],{})", self.shift)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iso(e: &[Point], s: i64) -> PartialIso {
        PartialIso::new(e.iter().copied(), s).unwrap()
    }

    #[test]
    fn constructor_examples() {
        let a = iso(&[], 1);
        assert_eq!(a, PartialIso::alpha());
        assert_eq!(a.apply(1), Some(2));
        assert_eq!(iso(&[], 0), PartialIso::identity());
        assert_eq!(
            PartialIso::new([1], -2),
            Err(Error::InvalidShift {
                shift: -2,
                min_domain: 2
            })
        );
        assert_eq!(PartialIso::new([0, 2], 0), Err(Error::ZeroPoint));
    }

    #[test]
    fn canonicalizes_input() {
        assert_eq!(iso(&[3, 1, 3], 0).excluded(), &[1, 3]);
    }

    #[test]
    fn apply_examples() {
        assert_eq!(PartialIso::alpha().apply(3), Some(4));
        assert_eq!(PartialIso::beta().apply(1), None);
        assert_eq!(PartialIso::beta().apply(5), Some(4));
        assert_eq!(PartialIso::identity().apply(7), Some(7));
    }

    #[test]
    fn compose_examples() {
        let (a, b) = (PartialIso::alpha(), PartialIso::beta());
        assert_eq!(a.compose(&b), PartialIso::identity());
        assert_eq!(b.compose(&a), iso(&[1], 0));
        assert_eq!(iso(&[2], 0).compose(&iso(&[3], 1)), iso(&[2, 3], 1));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(PartialIso::alpha().inverse(), PartialIso::beta());
        assert_eq!(PartialIso::identity().inverse(), PartialIso::identity());
        let g = iso(&[2], 1);
        assert_eq!(g.inverse(), iso(&[1, 3], -1));
        assert_eq!(&(&g * &g.inverse()) * &g, g);
    }

    #[test]
    fn accessor_examples() {
        let id = PartialIso::identity();
        assert_eq!((id.nd(), id.und(), id.noise()), (1, 1, 0));
        let g = iso(&[2, 3], 0);
        assert_eq!((g.nd(), g.und(), g.noise()), (4, 1, 3));
        let h = iso(&[1], 0);
        assert_eq!((h.nd(), h.und(), h.noise()), (2, 2, 0));
        let s = iso(&[2, 5], 3);
        assert_eq!((s.nr(), s.unr()), (9, 4));
        assert_eq!(s.nr() - s.unr(), s.nd() - s.und());
    }

    #[test]
    fn arrow_examples() {
        assert_eq!(iso(&[2], 5).arrow(), iso(&[1, 2], 5));
        assert_eq!(PartialIso::identity().arrow(), PartialIso::identity());
        let bic = iso(&[1, 2], -1);
        assert_eq!(bic.arrow(), bic);
        assert_eq!(iso(&[2, 4], 1).arrow().noise(), 0);
    }

    #[test]
    fn pi_examples() {
        assert_eq!(PartialIso::alpha().pi(), 1);
        assert_eq!(iso(&[3, 4], 0).pi(), 0);
        let bb = PartialIso::beta().compose(&PartialIso::beta());
        assert_eq!(bb.pi(), -2);
    }

    #[test]
    fn powers() {
        assert_eq!(PartialIso::alpha().pow(3), PartialIso::alpha_pow(3));
        assert_eq!(PartialIso::alpha().pow(-2), PartialIso::beta_pow(2));
        assert_eq!(PartialIso::beta().pow(0), PartialIso::identity());
    }

    #[test]
    fn range_matches_pointwise_images() {
        let g = iso(&[1, 2, 4, 7], -1);
        let ran: Vec<Point> = (1..20).filter(|&x| g.in_range(x)).collect();
        let images: Vec<Point> = (1..30)
            .filter_map(|x| g.apply(x))
            .filter(|&y| y < 20)
            .collect();
        assert_eq!(ran, images);
    }

    #[test]
    fn display_literal() {
        assert_eq!(iso(&[1, 3], -1).to_string(), "iso([1,3],-1)");
        assert_eq!(PartialIso::identity().to_string(), "iso([],0)");
    }
}
