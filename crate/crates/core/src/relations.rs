//! Natural partial order, minimum group congruence and Green's relations.
//!
//! Green's `L` and `R` follow the domain/range characterization used
//! throughout this crate: `L` compares domains, `R` compares ranges.

use crate::element::PartialIso;

/// Natural partial order: same shift and `dom γ ⊆ dom δ`.
pub fn leq(g: &PartialIso, d: &PartialIso) -> bool {
    g.shift() == d.shift() && is_subset(d.excluded(), g.excluded())
}

pub fn cmg_related(g: &PartialIso, d: &PartialIso) -> bool {
    g.pi() == d.pi()
}

/// An idempotent `e` with `eγ = eδ`, or `None` when the two are not related.
///
/// The witness is the identity of `[max(nd γ, nd δ))`.
pub fn cmg_witness(g: &PartialIso, d: &PartialIso) -> Option<PartialIso> {
    cmg_related(g, d).then(|| PartialIso::tail_identity(g.nd().max(d.nd())))
}

pub fn green_l(g: &PartialIso, d: &PartialIso) -> bool {
    g.excluded() == d.excluded()
}

pub fn green_r(g: &PartialIso, d: &PartialIso) -> bool {
    g.range_excluded() == d.range_excluded()
}

pub fn green_h(g: &PartialIso, d: &PartialIso) -> bool {
    green_l(g, d) && green_r(g, d)
}

/// The element with `dom = dom γ` and `ran = dom δ`, when `dom δ` is a
/// translate of `dom γ`.
pub fn d_witness(g: &PartialIso, d: &PartialIso) -> Option<PartialIso> {
    // a translation between the domains must match their minima
    let t = d.und() as i64 - g.und() as i64;
    let w = PartialIso::new(g.excluded().iter().copied(), t).ok()?;
    (w.range_excluded() == d.excluded()).then_some(w)
}

pub fn green_d(g: &PartialIso, d: &PartialIso) -> bool {
    d_witness(g, d).is_some()
}

/// The monoid is simple, so `J` is universal.
pub fn green_j(_g: &PartialIso, _d: &PartialIso) -> bool {
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Green {
    L,
    R,
    H,
    D,
    J,
}

impl Green {
    pub fn holds(self, g: &PartialIso, d: &PartialIso) -> bool {
        match self {
            Green::L => green_l(g, d),
            Green::R => green_r(g, d),
            Green::H => green_h(g, d),
            Green::D => green_d(g, d),
            Green::J => green_j(g, d),
        }
    }
}

impl std::str::FromStr for Green {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "L" => Ok(Green::L),
            "R" => Ok(Green::R),
            "H" => Ok(Green::H),
            "D" => Ok(Green::D),
            "J" => Ok(Green::J),
            other => Err(crate::error::Error::InvalidArgument(format!(
                "unknown Green relation `{other}`"
            ))),
        }
    }
}

fn is_subset(small: &[u64], big: &[u64]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}
