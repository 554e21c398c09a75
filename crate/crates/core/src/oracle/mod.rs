//! Bounded exhaustive enumeration and a pointwise composition oracle that
//! shares no code with [`PartialIso::compose`].

mod properties;

pub use properties::{property_ids, verify, Report, COUNTEREXAMPLE_CAP};

use crate::element::{PartialIso, Point};
use crate::error::{Error, Result};

/// Excluded sets inside `{1,…,n}`, shifts in `[−s, s]`, optionally noise `≤ j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumBounds {
    pub n: u64,
    pub s: u64,
    pub j: Option<u64>,
}

impl EnumBounds {
    pub fn new(n: u64, s: u64) -> Self {
        EnumBounds { n, s, j: None }
    }

    pub fn with_j(self, j: u64) -> Self {
        EnumBounds { j: Some(j), ..self }
    }
}

/// Every valid element within the bounds, ordered lexicographically by
/// `(excluded, shift)`.
pub fn enumerate(b: EnumBounds) -> Vec<PartialIso> {
    assert!(b.n < 32, "enumeration bound {} is too large", b.n);
    let mut sets: Vec<Vec<Point>> = (0u64..1 << b.n)
        .map(|mask| (1..=b.n).filter(|p| mask >> (p - 1) & 1 == 1).collect())
        .collect();
    sets.sort();
    let s = b.s as i64;
    sets.into_iter()
        .flat_map(|e| {
            (-s..=s).filter_map(move |shift| PartialIso::new(e.iter().copied(), shift).ok())
        })
        .filter(|g| b.j.is_none_or(|j| g.noise() <= j))
        .collect()
}

fn max_excluded(g: &PartialIso) -> u64 {
    g.excluded().last().copied().unwrap_or(0)
}

/// Smallest window on which [`window_compose`] determines the composite.
pub fn required_window(g: &PartialIso, d: &PartialIso) -> u64 {
    let reach = |x: &PartialIso| max_excluded(x) + x.shift().unsigned_abs();
    reach(g).max(reach(d)) + g.shift().unsigned_abs() + 2
}

/// Pointwise table of `x ↦ (x)γ then δ` for `x ∈ [1, w]`; entry `x − 1`
/// holds the image of `x`.
pub fn window_compose(g: &PartialIso, d: &PartialIso, w: u64) -> Result<Vec<Option<Point>>> {
    let required = required_window(g, d);
    if w < required {
        return Err(Error::WindowTooSmall {
            window: w,
            required,
        });
    }
    Ok((1..=w)
        .map(|x| g.apply(x).and_then(|y| d.apply(y)))
        .collect())
}

/// Reads an element back from a window table whose last entry lies on the
/// terminal shift. Returns `None` if the table is not a partial shift.
pub fn reconstruct(table: &[Option<Point>]) -> Option<PartialIso> {
    let w = table.len() as i64;
    let shift = table.last().copied().flatten()? as i64 - w;
    let mut excluded = Vec::new();
    for (x, image) in (1..).zip(table) {
        match image {
            None => excluded.push(x),
            Some(y) if *y as i64 == x as i64 + shift => {}
            Some(_) => return None,
        }
    }
    PartialIso::new(excluded, shift).ok()
}
