//! Noise bound `j`, offset sets `M ⊆ {2,…,j}` and the element classes they
//! select.

use std::collections::BTreeSet;
use std::fmt;

use crate::element::{PartialIso, Point};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NoiseParams {
    j: u64,
    m: BTreeSet<u64>,
}

impl NoiseParams {
    pub fn new<I>(j: u64, m: I) -> Result<Self>
    where
        I: IntoIterator<Item = u64>,
    {
        let m: BTreeSet<u64> = m.into_iter().collect();
        if let Some(&offset) = m.iter().find(|&&o| o < 2 || o > j) {
            return Err(Error::InvalidOffset { offset, j });
        }
        Ok(NoiseParams { j, m })
    }

    /// `M = ∅`: the class is the bicyclic monoid.
    pub fn empty(j: u64) -> Self {
        NoiseParams {
            j,
            m: BTreeSet::new(),
        }
    }

    /// `M = {2,…,j}`: the class is all of the noise-`j` monoid.
    pub fn full(j: u64) -> Self {
        NoiseParams {
            j,
            m: (2..=j).collect(),
        }
    }

    /// No noise bound at all; used when evaluating outside any class.
    pub fn unbounded() -> Self {
        NoiseParams::empty(u64::MAX)
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn m(&self) -> &BTreeSet<u64> {
        &self.m
    }

    pub fn with_m(&self, m: BTreeSet<u64>) -> Result<Self> {
        NoiseParams::new(self.j, m)
    }
}

impl fmt::Display for NoiseParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.m.iter().map(u64::to_string).collect();
        write!(f, "j={} M={{{}}}", self.j, m.join(","))
    }
}

/// All `2^{j−1}` offset sets `M ⊆ {2,…,j}`, smallest first.
pub fn offset_sets(j: u64) -> Vec<BTreeSet<u64>> {
    let pool: Vec<u64> = (2..=j).collect();
    (0u64..1 << pool.len())
        .map(|mask| {
            pool.iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &o)| o)
                .collect()
        })
        .collect()
}

pub fn in_gj(g: &PartialIso, j: u64) -> bool {
    g.noise() <= j
}

/// Domain-side membership: every domain point `x ≤ nd` has `nd − x ∈ M ∪ {0}`.
pub fn in_gjm(g: &PartialIso, params: &NoiseParams) -> bool {
    let nd = g.nd();
    in_gj(g, params.j)
        && (g.und()..=nd)
            .filter(|&x| g.in_domain(x))
            .all(|x| offset_ok(nd - x, params))
}

/// Range-side membership: every range point `y ≤ nr` has `nr − y ∈ M ∪ {0}`.
pub fn in_gjm_range(g: &PartialIso, params: &NoiseParams) -> bool {
    let nr = g.nr();
    in_gj(g, params.j)
        && (1..=nr)
            .filter(|&y| g.in_range(y))
            .all(|y| offset_ok(nr - y, params))
}

fn offset_ok(offset: u64, params: &NoiseParams) -> bool {
    offset == 0 || params.m.contains(&offset)
}

/// `β^k ε α^k`.
pub fn conjugate(e: &PartialIso, k: u64) -> PartialIso {
    PartialIso::beta_pow(k)
        .compose(e)
        .compose(&PartialIso::alpha_pow(k))
}

/// `ε·(βε)^j·α^j` for an idempotent `ε`.
pub fn epsilon_chain(e: &PartialIso, j: u64) -> Result<PartialIso> {
    if !e.is_idempotent() {
        return Err(Error::NotIdempotent(e.to_string()));
    }
    if j < 2 {
        return Err(Error::InvalidArgument(format!("chain length {j} < 2")));
    }
    let be = PartialIso::beta().compose(e);
    let chain = (0..j).fold(e.clone(), |acc, _| acc.compose(&be));
    Ok(chain.compose(&PartialIso::alpha_pow(j)))
}

/// Elements lying in neither `βα·S` nor `S·βα` for the noise-`j` monoid `S`:
/// the idempotents `make(E, 0)` with `E ⊆ {2,…,j}`.
pub fn boundary_set(j: u64) -> Vec<PartialIso> {
    offset_sets(j)
        .into_iter()
        .map(|e| PartialIso::from_canonical(e.into_iter().collect(), 0))
        .collect()
}

/// The narrower set of idempotents above `ε[2]·…·ε[j−1]` with `1 ∈ dom`,
/// i.e. `E ⊆ {2,…,j−1}`. Kept for comparison with [`boundary_set`].
pub fn boundary_set_above_chain(j: u64) -> Vec<PartialIso> {
    boundary_set(j)
        .into_iter()
        .filter(|g| g.excluded().iter().all(|&e| e < j))
        .collect()
}

/// `make({2,…,j}, 0)`, which has noise exactly `j` for `j ≥ 2`.
pub fn series_witness(j: u64) -> PartialIso {
    PartialIso::from_canonical((2..=j).collect::<Vec<Point>>(), 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iso(e: &[u64], s: i64) -> PartialIso {
        PartialIso::new(e.iter().copied(), s).unwrap()
    }

    #[test]
    fn params_validate_offsets() {
        assert!(NoiseParams::new(3, [2, 3]).is_ok());
        assert_eq!(
            NoiseParams::new(3, [1]),
            Err(Error::InvalidOffset { offset: 1, j: 3 })
        );
        assert_eq!(
            NoiseParams::new(3, [4]),
            Err(Error::InvalidOffset { offset: 4, j: 3 })
        );
        assert_eq!(NoiseParams::full(4).m().len(), 3);
        assert!(NoiseParams::full(1).m().is_empty());
    }

    #[test]
    fn offset_set_count() {
        for j in 1..=6 {
            assert_eq!(offset_sets(j).len(), 1 << (j - 1));
        }
        assert_eq!(offset_sets(0).len(), 1);
    }

    #[test]
    fn class_examples() {
        let empty = NoiseParams::empty(3);
        let two = NoiseParams::new(3, [2]).unwrap();
        assert!(in_gjm(&iso(&[1, 2], 0), &empty));
        assert!(in_gjm(&iso(&[2], 0), &two));
        assert!(!in_gjm(&iso(&[3], 0), &two));
        assert!(!in_gjm(&iso(&[2], 0), &empty));
        assert!(in_gj(&iso(&[2, 3], 0), 3));
        assert!(!in_gj(&iso(&[2, 3], 0), 2));
    }

    #[test]
    fn class_range_side_example() {
        let two = NoiseParams::new(3, [2]).unwrap();
        let g = iso(&[2], 4);
        assert!(in_gjm(&g, &two));
        assert!(in_gjm_range(&g, &two));
        let h = iso(&[1, 3, 4], -1);
        assert_eq!(in_gjm(&h, &two), in_gjm_range(&h, &two));
    }

    #[test]
    fn epsilon_chain_examples() {
        assert_eq!(
            epsilon_chain(&iso(&[2], 0), 2).unwrap(),
            iso(&[1, 2, 3, 4], 0)
        );
        assert_eq!(
            epsilon_chain(&PartialIso::identity(), 2).unwrap(),
            iso(&[1, 2], 0)
        );
        assert!(matches!(
            epsilon_chain(&PartialIso::alpha(), 2),
            Err(Error::NotIdempotent(_))
        ));
        for k in 1..=2 {
            let c = conjugate(&iso(&[2], 0), k);
            assert_eq!(c.compose(&c), c);
        }
    }

    #[test]
    fn conjugate_shifts_markers() {
        let e = iso(&[2, 4], 0);
        let c = conjugate(&e, 3);
        assert_eq!(c, iso(&[1, 2, 3, 5, 7], 0));
        assert_eq!((c.nd(), c.und()), (e.nd() + 3, e.und() + 3));
    }

    #[test]
    fn boundary_examples() {
        assert_eq!(boundary_set(2), vec![PartialIso::identity(), iso(&[2], 0)]);
        assert_eq!(boundary_set(3).len(), 4);
        for g in boundary_set(4) {
            assert!(g.in_domain(1) && g.in_range(1));
        }
        assert_eq!(boundary_set_above_chain(2), vec![PartialIso::identity()]);
    }

    #[test]
    fn series_witness_noise() {
        for j in 2..=5 {
            let w = series_witness(j);
            assert!(in_gj(&w, j) && !in_gj(&w, j - 1));
        }
    }
}
