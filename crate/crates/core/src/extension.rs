//! The monoid of noise at most `j` with the group `ℤ(+)` adjoined as an ideal.
//!
//! A group element `k` absorbs a monoid element `γ` from either side:
//! `k·γ = γ·k = k + π(γ)`. The identity `0` of `ℤ(+)` plays the role of the
//! remainder's idempotent.

use std::fmt;

use crate::element::{PartialIso, Point};
use crate::error::{Error, Result};
use crate::noise::{in_gj, NoiseParams};
use crate::relations::leq;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtElem {
    Iso(PartialIso),
    Grp(i64),
}

impl ExtElem {
    /// Rejects monoid elements whose noise exceeds `j`.
    pub fn check(&self, params: &NoiseParams) -> Result<()> {
        match self {
            ExtElem::Iso(g) if !in_gj(g, params.j()) => Err(Error::OutsideClass {
                element: g.to_string(),
                noise: g.noise(),
                j: params.j(),
            }),
            _ => Ok(()),
        }
    }

    pub fn as_iso(&self) -> Option<&PartialIso> {
        match self {
            ExtElem::Iso(g) => Some(g),
            ExtElem::Grp(_) => None,
        }
    }

    /// `π` for monoid elements, `k` for group elements.
    pub fn class(&self) -> i64 {
        match self {
            ExtElem::Iso(g) => g.pi(),
            ExtElem::Grp(k) => *k,
        }
    }
}

impl From<PartialIso> for ExtElem {
    fn from(g: PartialIso) -> Self {
        ExtElem::Iso(g)
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtElem::Iso(g) => g.fmt(f),
            ExtElem::Grp(k) => write!(f, "grp({k})"),
        }
    }
}

pub fn ext_mul(x: &ExtElem, y: &ExtElem, params: &NoiseParams) -> Result<ExtElem> {
    x.check(params)?;
    y.check(params)?;
    Ok(match (x, y) {
        (ExtElem::Iso(g), ExtElem::Iso(d)) => ExtElem::Iso(g.compose(d)),
        _ => ExtElem::Grp(x.class() + y.class()),
    })
}

pub fn ext_inv(x: &ExtElem) -> ExtElem {
    match x {
        ExtElem::Iso(g) => ExtElem::Iso(g.inverse()),
        ExtElem::Grp(k) => ExtElem::Grp(-k),
    }
}

/// The natural partial order extended by `k ≼ γ ⟺ π(γ) = k`.
pub fn ext_leq(x: &ExtElem, y: &ExtElem) -> bool {
    match (x, y) {
        (ExtElem::Iso(g), ExtElem::Iso(d)) => leq(g, d),
        (ExtElem::Grp(k), ExtElem::Iso(d)) => d.pi() == *k,
        (ExtElem::Grp(k), ExtElem::Grp(l)) => k == l,
        (ExtElem::Iso(_), ExtElem::Grp(_)) => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpSet {
    pub elements: Vec<ExtElem>,
    /// True when no element outside the search bound can belong to the up-set.
    pub complete: bool,
}

/// `↑x` restricted to monoid elements with excluded sets inside `{1,…,bound}`.
pub fn up_set_truncated(x: &ExtElem, params: &NoiseParams, bound: Point) -> UpSet {
    match x {
        ExtElem::Iso(g) => {
            let pool: Vec<Point> = g
                .excluded()
                .iter()
                .copied()
                .filter(|&e| e <= bound)
                .collect();
            let elements = subsets(&pool)
                .filter_map(|e| PartialIso::new(e, g.shift()).ok())
                .filter(|d| in_gj(d, params.j()))
                .map(ExtElem::Iso)
                .collect();
            UpSet {
                elements,
                complete: bound >= g.nd() - 1,
            }
        }
        ExtElem::Grp(k) => {
            let pool: Vec<Point> = (1..=bound).collect();
            let mut elements = vec![ExtElem::Grp(*k)];
            elements.extend(
                subsets(&pool)
                    .filter_map(|e| PartialIso::new(e, *k).ok())
                    .filter(|d| in_gj(d, params.j()))
                    .map(ExtElem::Iso),
            );
            UpSet {
                elements,
                complete: false,
            }
        }
    }
}

fn subsets(pool: &[Point]) -> impl Iterator<Item = Vec<Point>> + '_ {
    (0u64..1 << pool.len()).map(move |mask| {
        pool.iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect()
    })
}

fn check_above_zero(x: &ExtElem, params: &NoiseParams) -> Result<()> {
    x.check(params)?;
    if ext_leq(&ExtElem::Grp(0), x) {
        Ok(())
    } else {
        Err(Error::NotInUpSet(x.to_string()))
    }
}

/// `x ↦ x·α^k` from `↑0` onto `↑k`.
pub fn p_alpha(x: &ExtElem, k: u64, params: &NoiseParams) -> Result<ExtElem> {
    check_above_zero(x, params)?;
    ext_mul(x, &ExtElem::Iso(PartialIso::alpha_pow(k)), params)
}

/// `x ↦ β^k·x` from `↑0` onto `↑(−k)`.
pub fn lambda_beta(x: &ExtElem, k: u64, params: &NoiseParams) -> Result<ExtElem> {
    check_above_zero(x, params)?;
    ext_mul(&ExtElem::Iso(PartialIso::beta_pow(k)), x, params)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iso(e: &[u64], s: i64) -> ExtElem {
        ExtElem::Iso(PartialIso::new(e.iter().copied(), s).unwrap())
    }

    #[test]
    fn multiplication_examples() {
        let p = NoiseParams::full(2);
        let beta = ExtElem::Iso(PartialIso::beta());
        let alpha = ExtElem::Iso(PartialIso::alpha());
        assert_eq!(
            ext_mul(&ExtElem::Grp(3), &beta, &p).unwrap(),
            ExtElem::Grp(2)
        );
        assert_eq!(
            ext_mul(&beta, &ExtElem::Grp(3), &p).unwrap(),
            ExtElem::Grp(2)
        );
        assert_eq!(
            ext_mul(&ExtElem::Grp(0), &ExtElem::Grp(0), &p).unwrap(),
            ExtElem::Grp(0)
        );
        assert_eq!(
            ext_mul(&alpha, &ExtElem::Grp(0), &p).unwrap(),
            ExtElem::Grp(1)
        );
        assert_eq!(ext_mul(&alpha, &beta, &p).unwrap(), iso(&[], 0));
    }

    #[test]
    fn multiplication_rejects_noisy_operands() {
        let p = NoiseParams::full(2);
        let noisy = iso(&[3], 0);
        assert!(matches!(
            ext_mul(&noisy, &ExtElem::Grp(0), &p),
            Err(Error::OutsideClass { noise: 3, j: 2, .. })
        ));
    }

    #[test]
    fn order_examples() {
        assert!(ext_leq(&ExtElem::Grp(0), &iso(&[3], 0)));
        assert!(!ext_leq(&ExtElem::Grp(1), &ExtElem::Grp(2)));
        assert!(!ext_leq(&iso(&[3], 0), &ExtElem::Grp(0)));
        assert_eq!(ext_inv(&ExtElem::Grp(5)), ExtElem::Grp(-5));
        assert_eq!(ext_inv(&iso(&[], 1)), iso(&[1], -1));
    }

    #[test]
    fn up_set_examples() {
        let up = up_set_truncated(&iso(&[1, 2], 0), &NoiseParams::full(2), 2);
        assert_eq!(
            up.elements,
            vec![iso(&[], 0), iso(&[1], 0), iso(&[2], 0), iso(&[1, 2], 0)]
        );
        assert!(up.complete);

        let up = up_set_truncated(&iso(&[1, 2], -1), &NoiseParams::empty(0), 5);
        assert_eq!(up.elements, vec![iso(&[1], -1), iso(&[1, 2], -1)]);

        let up = up_set_truncated(&ExtElem::Grp(0), &NoiseParams::full(2), 2);
        assert_eq!(up.elements.len(), 5);
        assert!(!up.complete);
        assert!(up.elements.contains(&ExtElem::Grp(0)));
    }

    #[test]
    fn up_set_incomplete_below_nd() {
        let up = up_set_truncated(&iso(&[2, 5], 0), &NoiseParams::full(5), 3);
        assert!(!up.complete);
        assert_eq!(up.elements.len(), 2);
    }

    #[test]
    fn translation_examples() {
        let p = NoiseParams::full(2);
        let id = iso(&[], 0);
        assert_eq!(p_alpha(&id, 2, &p).unwrap(), iso(&[], 2));
        assert_eq!(p_alpha(&ExtElem::Grp(0), 2, &p).unwrap(), ExtElem::Grp(2));
        assert_eq!(lambda_beta(&id, 2, &p).unwrap(), iso(&[1, 2], -2));
        assert!(matches!(
            p_alpha(&iso(&[], 1), 2, &p),
            Err(Error::NotInUpSet(_))
        ));
        assert!(matches!(
            lambda_beta(&ExtElem::Grp(1), 1, &p),
            Err(Error::NotInUpSet(_))
        ));
    }

    #[test]
    fn translation_round_trip() {
        let p = NoiseParams::full(2);
        let beta2 = ExtElem::Iso(PartialIso::beta_pow(2));
        for x in up_set_truncated(&ExtElem::Grp(0), &p, 3).elements {
            let y = p_alpha(&x, 2, &p).unwrap();
            assert_eq!(y.class(), 2);
            assert_eq!(ext_mul(&y, &beta2, &p).unwrap(), x);
        }
    }
}
