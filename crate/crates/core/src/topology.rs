//! Decidable model of the locally compact topologies `τ_lc^M` on the
//! extended monoid.
//!
//! Monoid elements are isolated. A group element `k` has the neighborhood base
//! `U_i^M(k) = {k} ∪ {γ ∈ [M] : π(γ) = k, nd(γ) ≥ i}`, `i ≥ 1`.

use std::collections::BTreeSet;
use std::fmt;

use crate::bicyclic::BicyclicNF;
use crate::element::{PartialIso, Point};
use crate::error::{Error, Result};
use crate::extension::{ext_inv, ext_leq, ext_mul, ExtElem};
use crate::noise::{in_gjm, NoiseParams};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NbhdSpec {
    pub k: i64,
    pub i: u64,
    pub params: NoiseParams,
}

impl NbhdSpec {
    pub fn new(k: i64, i: u64, params: NoiseParams) -> Result<Self> {
        if i == 0 {
            return Err(Error::InvalidArgument(
                "neighborhood index must be ≥ 1".into(),
            ));
        }
        Ok(NbhdSpec { k, i, params })
    }

    pub fn contains(&self, x: &ExtElem) -> bool {
        nbhd_member(x, self)
    }
}

pub fn nbhd_member(x: &ExtElem, spec: &NbhdSpec) -> bool {
    match x {
        ExtElem::Grp(k) => *k == spec.k,
        ExtElem::Iso(g) => g.pi() == spec.k && g.nd() >= spec.i && in_gjm(g, &spec.params),
    }
}

/// Members of `U_i^M(k)` whose excluded sets lie in `{1,…,bound}`.
pub fn nbhd_truncated(spec: &NbhdSpec, bound: Point) -> Vec<ExtElem> {
    let mut out = vec![ExtElem::Grp(spec.k)];
    for mask in 0u64..1 << bound {
        let excluded = (1..=bound).filter(|p| mask >> (p - 1) & 1 == 1);
        if let Ok(g) = PartialIso::new(excluded, spec.k) {
            let x = ExtElem::Iso(g);
            if nbhd_member(&x, spec) {
                out.push(x);
            }
        }
    }
    out
}

/// The sequence `n ↦ make({1,…,n−1} ∖ {n−m : m ∈ kept}, shift)`.
///
/// Its `n`-th term has `nd = n` and keeps the domain points at offsets
/// `kept` below `nd`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TailSeqSpec {
    kept_offsets: BTreeSet<u64>,
    shift: i64,
}

impl TailSeqSpec {
    pub fn new<I>(kept_offsets: I, shift: i64) -> Result<Self>
    where
        I: IntoIterator<Item = u64>,
    {
        let kept_offsets: BTreeSet<u64> = kept_offsets.into_iter().collect();
        // offset 1 would mean noise 1, which no element has
        if let Some(&offset) = kept_offsets.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidOffset {
                offset,
                j: u64::MAX,
            });
        }
        Ok(TailSeqSpec {
            kept_offsets,
            shift,
        })
    }

    pub fn kept_offsets(&self) -> &BTreeSet<u64> {
        &self.kept_offsets
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn max_offset(&self) -> u64 {
        self.kept_offsets.last().copied().unwrap_or(0)
    }

    pub fn term(&self, n: Point) -> Result<PartialIso> {
        let top = self.max_offset();
        if n <= top || n == 0 {
            return Err(Error::OffsetOutOfRange { n, offset: top });
        }
        let kept: BTreeSet<Point> = self.kept_offsets.iter().map(|m| n - m).collect();
        PartialIso::new((1..n).filter(|p| !kept.contains(p)), self.shift)
    }
}

impl fmt::Display for TailSeqSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.kept_offsets.iter().map(u64::to_string).collect();
        write!(f, "tail(offsets={{{}}}, shift={})", m.join(","), self.shift)
    }
}

pub fn seq_elem(spec: &TailSeqSpec, n: Point) -> Result<PartialIso> {
    spec.term(n)
}

fn check_in_space(spec: &TailSeqSpec, params: &NoiseParams) -> Result<()> {
    let top = spec.max_offset();
    if top > params.j() {
        return Err(Error::OutsideSpace {
            offset: top,
            j: params.j(),
        });
    }
    Ok(())
}

/// Closed-form verdict: the sequence tends to `k` in `τ_lc^M` iff its shift
/// is `k` and every kept offset lies in `M`.
pub fn converges(spec: &TailSeqSpec, k: i64, params: &NoiseParams) -> Result<bool> {
    check_in_space(spec, params)?;
    Ok(spec.shift == k && spec.kept_offsets.is_subset(params.m()))
}

/// An eventually constant sequence tends to `k` only if its value is `k`
/// itself, since monoid elements are isolated.
pub fn constant_converges(value: &ExtElem, k: i64) -> bool {
    *value == ExtElem::Grp(k)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Probe {
    /// Neighborhood indices `1..=depth` are tested.
    pub depth: u64,
    /// Terms up to this index are generated.
    pub horizon: u64,
}

impl Default for Probe {
    fn default() -> Self {
        Probe {
            depth: 20,
            horizon: 60,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub converges: bool,
    /// For each `i`, the first index from which every term up to the horizon
    /// lies in `U_i^M(k)`; `None` if no such tail exists.
    pub entry: Vec<Option<u64>>,
}

/// Empirical convergence check by direct neighborhood membership.
pub fn probe(
    spec: &TailSeqSpec,
    k: i64,
    params: &NoiseParams,
    probe: Probe,
) -> Result<ProbeReport> {
    check_in_space(spec, params)?;
    let terms: Vec<Option<ExtElem>> = (1..=probe.horizon)
        .map(|n| spec.term(n).ok().map(ExtElem::Iso))
        .collect();
    let entry: Vec<Option<u64>> = (1..=probe.depth)
        .map(|i| {
            let nb = NbhdSpec {
                k,
                i,
                params: params.clone(),
            };
            let last_miss = terms
                .iter()
                .enumerate()
                .rev()
                .find(|(_, t)| !t.as_ref().is_some_and(|x| nb.contains(x)))
                .map(|(idx, _)| idx as u64 + 1);
            match last_miss {
                None => Some(1),
                Some(n) if n < probe.horizon => Some(n + 1),
                Some(_) => None,
            }
        })
        .collect();
    Ok(ProbeReport {
        converges: entry.iter().all(Option::is_some),
        entry,
    })
}

/// A sequence separating `τ_lc^{M1}` from `τ_lc^{M2}` at the point `0`.
pub fn distinguish(m1: &BTreeSet<u64>, m2: &BTreeSet<u64>, j: u64) -> Result<TailSeqSpec> {
    NoiseParams::new(j, m1.iter().copied())?;
    NoiseParams::new(j, m2.iter().copied())?;
    let m = m1
        .symmetric_difference(m2)
        .min()
        .copied()
        .ok_or(Error::NotDistinct)?;
    TailSeqSpec::new([m], 0)
}

/// How the up-set description of `U_i^M(k)` is read.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpsetReading {
    /// Base point `k`; the excluded cap is `β^{i−2}α^{i−2+k}` for every `k`
    /// (empty when that exponent is negative).
    Consistent,
    /// Base point `0` for `k ≠ 0`; the cap for `k < 0` is `β^{i−2−k}α^{i−2}`.
    Printed,
}

/// The bicyclic element whose up-set is removed from `↑k ∩ [M]`.
pub fn upset_cap(k: i64, i: u64, reading: UpsetReading) -> Option<BicyclicNF> {
    let base = i as i64 - 2;
    let (a, b) = match reading {
        UpsetReading::Consistent => (base, base + k),
        UpsetReading::Printed if k < 0 => (base - k, base),
        UpsetReading::Printed => (base, base + k),
    };
    (a >= 0 && b >= 0).then(|| BicyclicNF::new(a as u64, b as u64))
}

/// Membership via the up-set description.
pub fn upset_char_member(
    x: &ExtElem,
    k: i64,
    i: u64,
    params: &NoiseParams,
    reading: UpsetReading,
) -> bool {
    let base_point = match reading {
        UpsetReading::Consistent => k,
        UpsetReading::Printed => 0,
    };
    match x {
        ExtElem::Grp(g) => *g == base_point,
        ExtElem::Iso(g) => {
            let above_k = ext_leq(&ExtElem::Grp(k), x);
            let capped =
                upset_cap(k, i, reading).is_some_and(|cap| ext_leq(&ExtElem::Iso(cap.embed()), x));
            above_k && in_gjm(g, params) && !capped
        }
    }
}

/// Compares [`nbhd_member`] with the up-set description over every group
/// element in `[k−2, k+2] ∪ {0}` and every shift-`k` element with excluded
/// set inside `{1,…,bound}`.
pub fn upset_char_check(
    k: i64,
    i: u64,
    params: &NoiseParams,
    bound: Point,
    reading: UpsetReading,
) -> Result<bool> {
    if i < 2 {
        return Err(Error::InvalidArgument(format!("index {i} < 2")));
    }
    let spec = NbhdSpec::new(k, i, params.clone())?;
    let groups = (k - 2..=k + 2).chain([0]).map(ExtElem::Grp);
    let isos = (0u64..1 << bound).filter_map(|mask| {
        let excluded = (1..=bound).filter(move |p| mask >> (p - 1) & 1 == 1);
        PartialIso::new(excluded, k).ok().map(ExtElem::Iso)
    });
    Ok(groups
        .chain(isos)
        .all(|x| nbhd_member(&x, &spec) == upset_char_member(&x, k, i, params, reading)))
}

/// Which form of an inclusion is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reading {
    /// Index and base point exactly as usually stated: `γ·U_i(k) ⊆ U_i(k+π(γ))`
    /// and `U_i(k)⁻¹ = U_i(−k)`.
    Literal,
    /// Index adjusted by the shift: `γ·U_i(k) ⊆ U_{i−π(γ)}(k+π(γ))` and
    /// `x ∈ U_i(k) ⟺ x⁻¹ ∈ U_{i+k}(−k)`.
    Reindexed,
}

/// A witness that an inclusion of truncated neighborhoods fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InclusionFailure {
    pub operands: Vec<ExtElem>,
    pub image: ExtElem,
}

impl fmt::Display for InclusionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ops: Vec<String> = self.operands.iter().map(ExtElem::to_string).collect();
        write!(f, "[{}] ↦ {}", ops.join(", "), self.image)
    }
}

/// Every neighborhood index below 1 selects the same set as index 1.
fn clamp_index(i: i64) -> u64 {
    i.max(1) as u64
}

/// `U_i(k₁)·U_i(k₂) ⊆ U_i(k₁+k₂)` over the truncation; requires `i > j`.
pub fn check_product(
    k1: i64,
    k2: i64,
    i: u64,
    params: &NoiseParams,
    bound: Point,
) -> Result<Option<InclusionFailure>> {
    if i <= params.j() {
        return Err(Error::InvalidArgument(format!(
            "index {i} must exceed j = {}",
            params.j()
        )));
    }
    let left = nbhd_truncated(&NbhdSpec::new(k1, i, params.clone())?, bound);
    let right = nbhd_truncated(&NbhdSpec::new(k2, i, params.clone())?, bound);
    let target = NbhdSpec::new(k1 + k2, i, params.clone())?;
    for x in &left {
        for y in &right {
            let z = ext_mul(x, y, params)?;
            if !target.contains(&z) {
                return Ok(Some(InclusionFailure {
                    operands: vec![x.clone(), y.clone()],
                    image: z,
                }));
            }
        }
    }
    Ok(None)
}

/// `(p, r)` with `→γ = β^p α^r`.
pub fn arrow_exponents(g: &PartialIso) -> (u64, u64) {
    let nf = BicyclicNF::recognize(&g.arrow()).expect("arrow is always bicyclic");
    (nf.k, nf.l)
}

/// `γ·U_i(k)` against the target selected by `reading`; requires
/// `i > max(p, r) + j`.
pub fn check_left_translation(
    g: &PartialIso,
    k: i64,
    i: u64,
    params: &NoiseParams,
    bound: Point,
    reading: Reading,
) -> Result<Option<InclusionFailure>> {
    let (p, r) = arrow_exponents(g);
    if i <= p.max(r) + params.j() {
        return Err(Error::InvalidArgument(format!(
            "index {i} ≤ max({p}, {r}) + j"
        )));
    }
    let s = g.shift();
    let target_index = match reading {
        Reading::Literal => i,
        Reading::Reindexed => clamp_index(i as i64 - s),
    };
    let target = NbhdSpec::new(k + s, target_index, params.clone())?;
    let lhs = ExtElem::Iso(g.clone());
    for x in nbhd_truncated(&NbhdSpec::new(k, i, params.clone())?, bound) {
        let z = ext_mul(&lhs, &x, params)?;
        if !target.contains(&z) {
            return Ok(Some(InclusionFailure {
                operands: vec![lhs, x],
                image: z,
            }));
        }
    }
    Ok(None)
}

/// `U_i(k)·γ ⊆ U_i(k+π(γ))`; requires `i > max(p, p−k) + j`.
pub fn check_right_translation(
    g: &PartialIso,
    k: i64,
    i: u64,
    params: &NoiseParams,
    bound: Point,
) -> Result<Option<InclusionFailure>> {
    let (p, _) = arrow_exponents(g);
    let floor = (p as i64).max(p as i64 - k) + params.j() as i64;
    if i as i64 <= floor {
        return Err(Error::InvalidArgument(format!("index {i} ≤ {floor}")));
    }
    let target = NbhdSpec::new(k + g.shift(), i, params.clone())?;
    let rhs = ExtElem::Iso(g.clone());
    for x in nbhd_truncated(&NbhdSpec::new(k, i, params.clone())?, bound) {
        let z = ext_mul(&x, &rhs, params)?;
        if !target.contains(&z) {
            return Ok(Some(InclusionFailure {
                operands: vec![x, rhs],
                image: z,
            }));
        }
    }
    Ok(None)
}

/// Inversion symmetry in both directions over all shift-`±k` elements with
/// excluded sets inside `{1,…,bound}`.
pub fn check_inversion(
    k: i64,
    i: u64,
    params: &NoiseParams,
    bound: Point,
    reading: Reading,
) -> Result<Option<InclusionFailure>> {
    let source = NbhdSpec::new(k, i, params.clone())?;
    let target_index = match reading {
        Reading::Literal => i,
        Reading::Reindexed => clamp_index(i as i64 + k),
    };
    let target = NbhdSpec::new(-k, target_index, params.clone())?;
    let candidates = (0u64..1 << bound)
        .filter_map(|mask| {
            let excluded = (1..=bound).filter(move |p| mask >> (p - 1) & 1 == 1);
            PartialIso::new(excluded, k).ok()
        })
        .map(ExtElem::Iso)
        .chain([ExtElem::Grp(k)]);
    for x in candidates {
        let y = ext_inv(&x);
        if source.contains(&x) != target.contains(&y) {
            return Ok(Some(InclusionFailure {
                operands: vec![x],
                image: y,
            }));
        }
    }
    Ok(None)
}

/// `U_{i+1}(k) ⊆ U_i(k)`.
pub fn check_nesting(
    k: i64,
    i: u64,
    params: &NoiseParams,
    bound: Point,
) -> Result<Option<ExtElem>> {
    let outer = NbhdSpec::new(k, i, params.clone())?;
    let inner = NbhdSpec::new(k, i + 1, params.clone())?;
    Ok(nbhd_truncated(&inner, bound)
        .into_iter()
        .find(|x| !outer.contains(x)))
}

/// `U_i(k₁) ∩ U_i(k₂) = ∅` for `k₁ ≠ k₂`.
pub fn check_disjoint(
    k1: i64,
    k2: i64,
    i: u64,
    params: &NoiseParams,
    bound: Point,
) -> Result<Option<ExtElem>> {
    let a = NbhdSpec::new(k1, i, params.clone())?;
    let b = NbhdSpec::new(k2, i, params.clone())?;
    Ok(nbhd_truncated(&a, bound)
        .into_iter()
        .find(|x| k1 != k2 && b.contains(x)))
}

/// `M₁ ⊆ M₂ ⟹ U_i^{M₁}(k) ⊆ U_i^{M₂}(k)`.
pub fn check_monotone(
    k: i64,
    i: u64,
    small: &NoiseParams,
    large: &NoiseParams,
    bound: Point,
) -> Result<Option<ExtElem>> {
    if !small.m().is_subset(large.m()) || small.j() != large.j() {
        return Err(Error::InvalidArgument(format!(
            "{small} is not below {large}"
        )));
    }
    let big = NbhdSpec::new(k, i, large.clone())?;
    Ok(nbhd_truncated(&NbhdSpec::new(k, i, small.clone())?, bound)
        .into_iter()
        .find(|x| !big.contains(x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iso(e: &[u64], s: i64) -> ExtElem {
        ExtElem::Iso(PartialIso::new(e.iter().copied(), s).unwrap())
    }

    fn params(j: u64, m: &[u64]) -> NoiseParams {
        NoiseParams::new(j, m.iter().copied()).unwrap()
    }

    #[test]
    fn membership_examples() {
        let u = NbhdSpec::new(0, 5, params(2, &[2])).unwrap();
        assert!(u.contains(&ExtElem::Grp(0)));
        assert!(!u.contains(&ExtElem::Grp(1)));
        assert!(u.contains(&iso(&[1, 2, 3, 5], 0)));
        assert!(!NbhdSpec::new(0, 5, params(2, &[]))
            .unwrap()
            .contains(&iso(&[1, 2, 3, 5], 0)));
        let u2 = NbhdSpec::new(0, 2, params(3, &[2])).unwrap();
        assert!(!u2.contains(&iso(&[], 0)));
        assert!(NbhdSpec::new(0, 0, params(2, &[])).is_err());
    }

    #[test]
    fn sequence_examples() {
        let s = TailSeqSpec::new([2], 0).unwrap();
        assert_eq!(
            s.term(6).unwrap(),
            PartialIso::new([1, 2, 3, 5], 0).unwrap()
        );
        let t = s.term(6).unwrap();
        assert_eq!((t.nd(), t.noise()), (6, 2));
        let e = TailSeqSpec::new([], 0).unwrap();
        assert_eq!(e.term(4).unwrap(), PartialIso::new([1, 2, 3], 0).unwrap());
        let s1 = TailSeqSpec::new([2], 1).unwrap();
        assert_eq!(
            s1.term(6).unwrap(),
            PartialIso::new([1, 2, 3, 5], 1).unwrap()
        );
        assert_eq!(s.term(2), Err(Error::OffsetOutOfRange { n: 2, offset: 2 }));
        assert!(TailSeqSpec::new([1], 0).is_err());
    }

    #[test]
    fn convergence_examples() {
        let s = TailSeqSpec::new([2], 0).unwrap();
        assert!(converges(&s, 0, &params(2, &[2])).unwrap());
        assert!(!converges(&s, 0, &params(2, &[])).unwrap());
        assert!(!converges(&s, 1, &params(2, &[2])).unwrap());
        let t = TailSeqSpec::new([], 1).unwrap();
        for m in [&[][..], &[2], &[2, 3]] {
            assert!(converges(&t, 1, &params(3, m)).unwrap());
        }
        let far = TailSeqSpec::new([4], 0).unwrap();
        assert_eq!(
            converges(&far, 0, &params(3, &[])),
            Err(Error::OutsideSpace { offset: 4, j: 3 })
        );
    }

    #[test]
    fn probe_agrees_on_examples() {
        let s = TailSeqSpec::new([2], 0).unwrap();
        let yes = probe(&s, 0, &params(2, &[2]), Probe::default()).unwrap();
        assert!(yes.converges);
        assert_eq!(yes.entry[4], Some(5));
        let no = probe(&s, 0, &params(2, &[]), Probe::default()).unwrap();
        assert!(!no.converges);
        let neg = TailSeqSpec::new([], -3).unwrap();
        assert!(
            probe(&neg, -3, &params(2, &[]), Probe::default())
                .unwrap()
                .converges
        );
    }

    #[test]
    fn constant_sequences() {
        assert!(constant_converges(&ExtElem::Grp(2), 2));
        assert!(!constant_converges(&iso(&[], 2), 2));
    }

    #[test]
    fn distinguish_examples() {
        let set = |v: &[u64]| v.iter().copied().collect::<BTreeSet<u64>>();
        let w = distinguish(&set(&[2]), &set(&[3]), 3).unwrap();
        assert_eq!(w, TailSeqSpec::new([2], 0).unwrap());
        assert!(converges(&w, 0, &params(3, &[2])).unwrap());
        assert!(!converges(&w, 0, &params(3, &[3])).unwrap());
        assert_eq!(
            distinguish(&set(&[]), &set(&[2]), 2).unwrap(),
            TailSeqSpec::new([2], 0).unwrap()
        );
        assert_eq!(
            distinguish(&set(&[2]), &set(&[2]), 2),
            Err(Error::NotDistinct)
        );
        assert!(distinguish(&set(&[5]), &set(&[2]), 3).is_err());
    }

    #[test]
    fn upset_examples() {
        let c = UpsetReading::Consistent;
        assert!(upset_char_check(0, 5, &params(2, &[2]), 8, c).unwrap());
        assert!(upset_char_check(2, 4, &params(3, &[2, 3]), 8, c).unwrap());
        assert!(upset_char_check(-1, 4, &params(2, &[]), 8, c).unwrap());
    }

    #[test]
    fn printed_reading_fails_off_zero() {
        let p = UpsetReading::Printed;
        assert!(upset_char_check(0, 5, &params(2, &[2]), 8, p).unwrap());
        assert!(!upset_char_check(2, 4, &params(3, &[2, 3]), 8, p).unwrap());
        // β = q^1p^0 sits in U_2(−1) but inside the printed cap's up-set
        assert_eq!(upset_cap(-1, 2, p), Some(BicyclicNF::new(1, 0)));
        let beta = ExtElem::Iso(PartialIso::beta());
        let spec = NbhdSpec::new(-1, 2, params(2, &[])).unwrap();
        assert!(spec.contains(&beta));
        assert!(!upset_char_member(&beta, -1, 2, &params(2, &[]), p));
    }

    #[test]
    fn literal_translation_counterexample() {
        let p = params(2, &[2]);
        let alpha = PartialIso::alpha();
        let fail = check_left_translation(&alpha, 0, 4, &p, 6, Reading::Literal)
            .unwrap()
            .unwrap();
        assert!(matches!(fail.image, ExtElem::Iso(ref g) if g.nd() == 3));
        assert_eq!(
            check_left_translation(&alpha, 0, 4, &p, 6, Reading::Reindexed).unwrap(),
            None
        );
        assert_eq!(check_right_translation(&alpha, 0, 4, &p, 6).unwrap(), None);
    }

    #[test]
    fn literal_inversion_counterexample() {
        let p = params(2, &[]);
        assert!(check_inversion(1, 3, &p, 6, Reading::Literal)
            .unwrap()
            .is_some());
        assert_eq!(
            check_inversion(1, 3, &p, 6, Reading::Reindexed).unwrap(),
            None
        );
        assert_eq!(
            check_inversion(0, 3, &p, 6, Reading::Literal).unwrap(),
            None
        );
    }

    #[test]
    fn product_and_shape_checks() {
        let p = params(2, &[2]);
        assert_eq!(check_product(1, -1, 3, &p, 6).unwrap(), None);
        assert!(check_product(0, 0, 2, &p, 6).is_err());
        assert_eq!(check_nesting(0, 3, &p, 6).unwrap(), None);
        assert_eq!(check_disjoint(0, 1, 3, &p, 6).unwrap(), None);
        assert_eq!(check_monotone(0, 3, &params(2, &[]), &p, 6).unwrap(), None);
    }
}
