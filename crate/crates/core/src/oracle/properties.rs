use std::collections::BTreeSet;

use super::{enumerate, reconstruct, required_window, window_compose, EnumBounds};
use crate::bicyclic::BicyclicNF;
use crate::element::PartialIso;
use crate::error::{Error, Result};
use crate::extension::{ext_leq, ext_mul, lambda_beta, p_alpha, up_set_truncated, ExtElem};
use crate::noise::{
    boundary_set, conjugate, epsilon_chain, in_gj, in_gjm, in_gjm_range, offset_sets,
    series_witness, NoiseParams,
};
use crate::relations::{
    cmg_related, cmg_witness, d_witness, green_d, green_h, green_l, green_r, leq,
};
use crate::topology::{
    arrow_exponents, check_disjoint, check_inversion, check_left_translation, check_monotone,
    check_nesting, check_product, check_right_translation, converges, probe, upset_char_check,
    Probe, Reading, TailSeqSpec, UpsetReading,
};

/// At most this many counterexamples are kept in a [`Report`].
pub const COUNTEREXAMPLE_CAP: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub property: String,
    pub instances: u64,
    /// The first few failures, in enumeration order.
    pub counterexamples: Vec<String>,
    pub counterexample_count: u64,
}

impl Report {
    pub fn new(property: &str) -> Self {
        Report {
            property: property.to_string(),
            instances: 0,
            counterexamples: Vec::new(),
            counterexample_count: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexample_count == 0
    }

    pub fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.counterexample_count += 1;
            if self.counterexamples.len() < COUNTEREXAMPLE_CAP {
                self.counterexamples.push(describe());
            }
        }
    }

    /// Combines reports for disjoint parts of one instance space; `self`
    /// comes first in enumeration order.
    pub fn merge(mut self, other: Report) -> Report {
        self.instances += other.instances;
        self.counterexample_count += other.counterexample_count;
        let room = COUNTEREXAMPLE_CAP - self.counterexamples.len();
        self.counterexamples
            .extend(other.counterexamples.into_iter().take(room));
        self
    }
}

type Check = fn(EnumBounds, &NoiseParams, &mut Report) -> Result<()>;

const REGISTRY: &[(&str, &str, Check)] = &[
    ("assoc", "composition is associative on all triples", assoc),
    (
        "window_oracle",
        "compose agrees with pointwise composition on a window",
        window_oracle,
    ),
    (
        "inverse_closure",
        "inverses of enumerated elements are re-enumerable with N+S",
        inverse_closure,
    ),
    (
        "inverse_axioms",
        "γγ⁻¹γ = γ, γ⁻¹γγ⁻¹ = γ⁻¹ and (γ⁻¹)⁻¹ = γ",
        inverse_axioms,
    ),
    ("idempotents", "idempotent ⟺ shift 0 ⟺ γγ = γ", idempotents),
    (
        "green",
        "L, R, H, D against idempotent and translation characterizations",
        green,
    ),
    (
        "natural_order",
        "leq against domain, range and factorization forms",
        natural_order,
    ),
    (
        "group_congruence",
        "congruence witnesses and additivity of π",
        group_congruence,
    ),
    (
        "retraction",
        "arrow is an idempotent homomorphism onto the bicyclic part",
        retraction,
    ),
    (
        "arrow_identities",
        "noise of arrow, its inverse and the two absorption identities",
        arrow_identities,
    ),
    (
        "offset_sides_agree",
        "domain-side and range-side [M] membership agree for every M",
        offset_sides_agree,
    ),
    (
        "offset_class_closure",
        "every [M] class is closed under products and inverses",
        offset_class_closure,
    ),
    (
        "beta_alpha_absorption",
        "βα·γ = γ ⟺ 1 ∉ dom γ and γ·βα = γ ⟺ 1 ∉ ran γ",
        beta_alpha_absorption,
    ),
    (
        "epsilon_chain",
        "ε(βε)^jα^j is the identity of [nd(ε)+j) for idempotents of noise ≤ j",
        epsilon_chain_prop,
    ),
    (
        "conjugation_shift",
        "β^kεα^k moves nd and und by k and keeps noise",
        conjugation_shift,
    ),
    (
        "noise_one_absent",
        "no element has noise 1",
        noise_one_absent,
    ),
    (
        "noise_series_strict",
        "make({2..j},0) has noise exactly j",
        noise_series_strict,
    ),
    (
        "boundary_set",
        "boundary set matches brute force and has 2^(j−1) elements",
        boundary_set_prop,
    ),
    (
        "bicyclic_hom",
        "normal-form product matches composition of embeddings",
        bicyclic_hom,
    ),
    ("ext_assoc", "extended product is associative", ext_assoc),
    ("ext_ideal", "the adjoined group is an ideal", ext_ideal),
    (
        "ext_order",
        "extended order is a partial order extending leq",
        ext_order,
    ),
    (
        "ext_commute",
        "grp(0) is idempotent and commutes with every element",
        ext_commute,
    ),
    (
        "ext_surjective",
        "grp(0)·γ covers every grp(k) with |k| ≤ S",
        ext_surjective,
    ),
    (
        "ext_translations",
        "x·α^k and β^k·x are injective with the expected inverses",
        ext_translations,
    ),
    ("nbhd_nesting", "U_(i+1)(k) ⊆ U_i(k)", nbhd_nesting),
    (
        "nbhd_hausdorff",
        "neighborhoods of distinct points are disjoint",
        nbhd_hausdorff,
    ),
    ("nbhd_monotone", "M1 ⊆ M2 gives U^M1 ⊆ U^M2", nbhd_monotone),
    (
        "nbhd_product",
        "U_i(k1)·U_i(k2) ⊆ U_i(k1+k2) for i > j",
        nbhd_product,
    ),
    (
        "nbhd_translation",
        "γ·U_i(k) ⊆ U_(i−π(γ))(k+π(γ)) and U_i(k)·γ ⊆ U_i(k+π(γ))",
        nbhd_translation,
    ),
    (
        "nbhd_translation_literal",
        "γ·U_i(k) ⊆ U_i(k+π(γ)) for i > max(p,r)+j",
        nbhd_translation_literal,
    ),
    (
        "nbhd_inversion",
        "x ∈ U_i(k) ⟺ x⁻¹ ∈ U_(i+k)(−k)",
        nbhd_inversion,
    ),
    (
        "nbhd_inversion_literal",
        "x ∈ U_i(k) ⟺ x⁻¹ ∈ U_i(−k)",
        nbhd_inversion_literal,
    ),
    (
        "upset_char",
        "neighborhoods match their up-set description",
        upset_char,
    ),
    (
        "convergence_probe",
        "closed-form convergence matches the empirical probe",
        convergence_probe,
    ),
];

/// Registered property identifiers with one-line descriptions.
pub fn property_ids() -> impl Iterator<Item = (&'static str, &'static str)> {
    REGISTRY.iter().map(|(id, about, _)| (*id, *about))
}

/// Runs a registered property exhaustively within `bounds`.
pub fn verify(id: &str, bounds: EnumBounds, params: &NoiseParams) -> Result<Report> {
    let (_, _, check) = REGISTRY
        .iter()
        .find(|(name, _, _)| *name == id)
        .ok_or_else(|| Error::UnknownProperty(id.to_string()))?;
    let mut report = Report::new(id);
    check(bounds, params, &mut report)?;
    Ok(report)
}

fn idempotents_of(b: EnumBounds) -> Vec<PartialIso> {
    enumerate(b)
        .into_iter()
        .filter(|g| g.shift() == 0)
        .collect()
}

fn assoc(b: EnumBounds, _: &NoiseParams, r: &mut Report) -> Result<()> {
    let all = enumerate(b);
    for x in &all {
        for y in &all {
            let xy = x.compose(y);
            for z in &all {
                let ok = xy.compose(z) == x.compose(&y.compose(z));
                r.check(ok, || format!("({x}·{y})·{z}"));
            }
        }
    }
    Ok(())
}

fn window_oracle(b: EnumBounds, _: &NoiseParams, r: &mut Report) -> Result<()> {
    let all = enumerate(b);
    for x in &all {
        for y in &all {
            let c = x.compose(y);
            let table = window_compose(x, y, required_window(x, y))?;
            let pointwise = table.iter().zip(1..).all(|(v, p)| *v == c.apply(p));
            let ok = pointwise && reconstruct(&table).as_ref() == Some(&c);
            r.check(ok, || format!("{x}·{y} gave {c}"));
        }
    }
    Ok(())
}

fn inverse_closure(b: EnumBounds, _: &NoiseParams, r: &mut Report) -> Result<()> {
    let wide: BTreeSet<PartialIso> = enumerate(EnumBounds { n: b.n + b.s, ..b })
        .into_iter()
        .collect();
    for g in enumerate(b) {
        let inv = g.inverse();
        r.check(wide.contains(&inv), || format!("{g}⁻¹ = {inv}"));
    }
    Ok(())
}

fn inverse_axioms(b: EnumBounds, _: &NoiseParams, r: &mut Report) -> Result<()> {
    for g in enumerate(b) {
        let inv = g.inverse();
        let ok = g.compose(&inv).compose(&g) == g
            && inv.compose(&g).compose(&inv) == inv
            && inv.inverse() == g
            && inv.shift() == -g.shift();
        r.check(ok, || g.to_string());
    }
    Ok(())
}

fn idempotents(b: EnumBounds, _: &NoiseParams, r: &mut Report) -> Result<()> {
    for g in enumerate(b) {
        let sq = g.compose(&g) == g;
        let ok = g.is_idempotent() == (g.shift() == 0) && g.is_idempotent() == sq;
        r.check(ok, || g.to_string());
    }
    Ok(())
}

/// `dom δ = dom γ + t` for some `t`, decided pointwise.
fn domains_translate(g: &PartialIso, d: &PartialIso, reach: u64) -> bool {
    let w = 2 * reach + 4;
    let r = reach as i64 + 1;
    (-r..=r).any(|t| {
        (1..=w).all(|x| {
            let back = x as i64 - t;
            let onto = d.in_domain(x) == (back >= 1 && g.in_domain(back as u64));
            // no point of dom γ may fall off the bottom of ℕ
            let into = !g.in_domain(x) || x as i64 + t >= 1;
            onto && into
        })
    })
}

fn green(b: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    let all = enumerate(b);
    for g in &all {
        let (gg, g_g) = (g.compose(&g.inverse()), g.inverse().compose(g));
        for d in &all {
            let (dd, d_d) = (d.compose(&d.inverse()), d.inverse().compose(d));
            let l = green_l(g, d) == (gg == dd);
            let rr = green_r(g, d) == (g_g == d_d);
            let h = green_h(g, d) == (g == d);
            let dd_ok = green_d(g, d) == domains_translate(g, d, b.n + b.s);
            let witness_ok = d_witness(g, d).is_none_or(|w| {
                w.excluded() == g.excluded()
                    && w.range_excluded() == d.excluded()
                    && w.noise() == g.noise()
                    && (!in_gj(g, p.j()) || in_gj(&w, p.j()))
            });
            r.check(l && rr && h && dd_ok && witness_ok, || {
                format!("{g} vs {d}")
            });
        }
    }
    Ok(())
}

fn subset(small: &[u64], big: &[u64]) -> bool {
    small.iter().all(|x| big.contains(x))
}

fn natural_order(b: EnumBounds, _: &NoiseParams, r: &mut Report) -> Result<()> {
    let all = enumerate(b);
    for g in &all {
        let e = g.inverse().compose(g);
        for d in &all {
            let same = g.pi() == d.pi();
            let by_dom = same && subset(d.excluded(), g.excluded());
            let by_ran = same && subset(&d.range_excluded(), &g.range_excluded());
            let by_factor = *g == d.compose(&e);
            let o = leq(g, d);
            r.check(o == by_dom && o == by_ran && o == by_factor, || {
                format!("{g} ≼ {d}")
            });
        }
    }
    Ok(())
}

fn group_congruence(b: EnumBounds, _: &NoiseParams, r: &mut Report) -> Result<()> {
    let all = enumerate(b);
    for g in &all {
        for d in &all {
            let same = g.pi() == d.pi();
            let witness = cmg_witness(g, d);
            let witness_ok = witness
                .as_ref()
                .is_none_or(|e| e.is_idempotent() && e.compose(g) == e.compose(d));
            let ok = cmg_related(g, d) == same
                && witness.is_some() == same
                && witness_ok
                && g.compose(d).pi() == g.pi() + d.pi();
            r.check(ok, || format!("{g} ~ {d}"));
        }
    }
    Ok(())
}

fn retraction(b: EnumBounds, _: &NoiseParams, r: &mut Report) -> Result<()> {
    let all = enumerate(b);
    for g in &all {
        let a = g.arrow();
        let fixed = (a == *g) == g.is_bicyclic();
        for d in &all {
            let ok = g.compose(d).arrow() == a.compose(&d.arrow()) && a.arrow() == a && fixed;
            r.check(ok, || format!("arrow({g}·{d})"));
        }
    }
    Ok(())
}

fn arrow_identities(b: EnumBounds, _: &NoiseParams, r: &mut Report) -> Result<()> {
    for g in enumerate(b) {
        let a = g.arrow();
        let ai = a.inverse();
        let ok = a.noise() == 0
            && ai == g.inverse().arrow()
            && g.compose(&ai) == a.compose(&ai)
            && ai.compose(&g) == ai.compose(&a);
        r.check(ok, || g.to_string());
    }
    Ok(())
}

fn classes(p: &NoiseParams) -> Result<Vec<NoiseParams>> {
    offset_sets(p.j())
        .into_iter()
        .map(|m| p.with_m(m))
        .collect()
}

fn offset_sides_agree(b: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    let all = enumerate(b);
    for q in classes(p)? {
        for g in &all {
            r.check(in_gjm(g, &q) == in_gjm_range(g, &q), || {
                format!("{g} with {q}")
            });
        }
    }
    Ok(())
}

fn offset_class_closure(b: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    let all = enumerate(b);
    for q in classes(p)? {
        let members: Vec<&PartialIso> = all.iter().filter(|g| in_gjm(g, &q)).collect();
        for g in &members {
            r.check(in_gjm(&g.inverse(), &q), || format!("{g}⁻¹ with {q}"));
            for d in &members {
                r.check(in_gjm(&g.compose(d), &q), || format!("{g}·{d} with {q}"));
            }
        }
    }
    Ok(())
}

fn beta_alpha_absorption(b: EnumBounds, _: &NoiseParams, r: &mut Report) -> Result<()> {
    let ba = PartialIso::beta().compose(&PartialIso::alpha());
    for g in enumerate(b) {
        let left = (ba.compose(&g) == g) == !g.in_domain(1);
        let right = (g.compose(&ba) == g) == !g.in_range(1);
        r.check(left && right, || g.to_string());
    }
    Ok(())
}

fn epsilon_chain_prop(b: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    let j = p.j();
    for e in idempotents_of(b).into_iter().filter(|e| e.noise() <= j) {
        let chain = epsilon_chain(&e, j)?;
        r.check(chain == PartialIso::tail_identity(e.nd() + j), || {
            format!("{e} with j={j} gave {chain}")
        });
    }
    Ok(())
}

fn conjugation_shift(b: EnumBounds, _: &NoiseParams, r: &mut Report) -> Result<()> {
    for e in idempotents_of(b) {
        for k in 0..=4 {
            let c = conjugate(&e, k);
            let ok = c.nd() == e.nd() + k
                && c.und() == e.und() + k
                && c.noise() == e.noise()
                && c.compose(&c) == c;
            r.check(ok, || format!("{e} with k={k}"));
        }
    }
    Ok(())
}

fn noise_one_absent(b: EnumBounds, _: &NoiseParams, r: &mut Report) -> Result<()> {
    for g in enumerate(b) {
        r.check(g.noise() != 1, || g.to_string());
    }
    Ok(())
}

fn noise_series_strict(_: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    for j in 2..=p.j().max(2) {
        let w = series_witness(j);
        r.check(in_gj(&w, j) && !in_gj(&w, j - 1), || {
            format!("{w} for j={j}")
        });
    }
    Ok(())
}

fn boundary_set_prop(b: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    let j = p.j();
    if j < 2 {
        return Err(Error::InvalidArgument(format!(
            "boundary set needs j ≥ 2, got {j}"
        )));
    }
    let ba = PartialIso::beta().compose(&PartialIso::alpha());
    let brute: BTreeSet<PartialIso> =
        enumerate(EnumBounds::new(b.n.max(j + 2), b.s.max(2)).with_j(j))
            .into_iter()
            .filter(|g| ba.compose(g) != *g && g.compose(&ba) != *g)
            .collect();
    let computed: BTreeSet<PartialIso> = boundary_set(j).into_iter().collect();
    r.check(computed.len() as u64 == 1 << (j - 1), || {
        format!("{} elements", computed.len())
    });
    r.check(brute == computed, || {
        let extra: Vec<String> = brute
            .symmetric_difference(&computed)
            .map(|g| g.to_string())
            .collect();
        format!("differ at {}", extra.join(", "))
    });
    Ok(())
}

fn bicyclic_hom(b: EnumBounds, _: &NoiseParams, r: &mut Report) -> Result<()> {
    let nfs: Vec<BicyclicNF> = (0..=b.n)
        .flat_map(|k| (0..=b.n).map(move |l| BicyclicNF::new(k, l)))
        .collect();
    for u in &nfs {
        let round = BicyclicNF::recognize(&u.embed()) == Some(*u);
        for v in &nfs {
            let ok = (*u * *v).embed() == u.embed().compose(&v.embed()) && round;
            r.check(ok, || format!("{u}·{v}"));
        }
    }
    Ok(())
}

fn ext_elements(b: EnumBounds, p: &NoiseParams) -> Vec<ExtElem> {
    let mut all: Vec<ExtElem> = enumerate(b.with_j(p.j()))
        .into_iter()
        .map(ExtElem::Iso)
        .collect();
    all.extend((-3..=3).map(ExtElem::Grp));
    all
}

fn ext_assoc(b: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    let all = ext_elements(b, p);
    for x in &all {
        for y in &all {
            let xy = ext_mul(x, y, p)?;
            for z in &all {
                let ok = ext_mul(&xy, z, p)? == ext_mul(x, &ext_mul(y, z, p)?, p)?;
                r.check(ok, || format!("({x}·{y})·{z}"));
            }
        }
    }
    Ok(())
}

fn ext_ideal(b: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    let all = ext_elements(b, p);
    for x in &all {
        for y in &all {
            if matches!(x, ExtElem::Grp(_)) || matches!(y, ExtElem::Grp(_)) {
                let z = ext_mul(x, y, p)?;
                r.check(matches!(z, ExtElem::Grp(_)), || format!("{x}·{y} = {z}"));
            }
        }
    }
    Ok(())
}

fn ext_order(b: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    let all = ext_elements(b, p);
    for x in &all {
        r.check(ext_leq(x, x), || format!("{x} not reflexive"));
        for y in &all {
            let xy = ext_leq(x, y);
            if let (ExtElem::Iso(g), ExtElem::Iso(d)) = (x, y) {
                r.check(xy == leq(g, d), || format!("{x} ≼ {y} disagrees with leq"));
            }
            if x != y {
                r.check(!(xy && ext_leq(y, x)), || {
                    format!("{x}, {y} not antisymmetric")
                });
            }
            if !xy {
                continue;
            }
            for z in &all {
                if ext_leq(y, z) {
                    r.check(ext_leq(x, z), || format!("{x} ≼ {y} ≼ {z}"));
                }
            }
        }
    }
    Ok(())
}

fn ext_commute(b: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    let zero = ExtElem::Grp(0);
    r.check(ext_mul(&zero, &zero, p)? == zero, || {
        "grp(0) not idempotent".into()
    });
    for x in ext_elements(b, p) {
        r.check(ext_mul(&zero, &x, p)? == ext_mul(&x, &zero, p)?, || {
            x.to_string()
        });
    }
    Ok(())
}

fn ext_surjective(b: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    let zero = ExtElem::Grp(0);
    let image: BTreeSet<ExtElem> = enumerate(b.with_j(p.j()))
        .into_iter()
        .map(|g| ext_mul(&zero, &ExtElem::Iso(g), p))
        .collect::<Result<_>>()?;
    let s = b.s as i64;
    let expected: BTreeSet<ExtElem> = (-s..=s).map(ExtElem::Grp).collect();
    r.check(image == expected, || {
        format!("image has {} points", image.len())
    });
    Ok(())
}

fn ext_translations(b: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    let up = up_set_truncated(&ExtElem::Grp(0), p, b.n).elements;
    for k in 1..=3u64 {
        let ki = k as i64;
        let alpha = ExtElem::Iso(PartialIso::alpha_pow(k));
        let beta = ExtElem::Iso(PartialIso::beta_pow(k));
        let mut right = BTreeSet::new();
        let mut left = BTreeSet::new();
        for x in &up {
            let y = p_alpha(x, k, p)?;
            let z = lambda_beta(x, k, p)?;
            let ok = ext_leq(&ExtElem::Grp(ki), &y)
                && ext_mul(&y, &beta, p)? == *x
                && ext_leq(&ExtElem::Grp(-ki), &z)
                && ext_mul(&alpha, &z, p)? == *x;
            r.check(ok, || format!("{x} with k={k}"));
            right.insert(y);
            left.insert(z);
        }
        r.check(right.len() == up.len() && left.len() == up.len(), || {
            format!("not injective for k={k}")
        });
    }
    Ok(())
}

const KS: std::ops::RangeInclusive<i64> = -2..=2;

fn nbhd_nesting(b: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    for q in classes(p)? {
        for k in KS {
            for i in 1..=b.n {
                let fail = check_nesting(k, i, &q, b.n)?;
                r.check(fail.is_none(), || {
                    format!("{} with k={k} i={i} {q}", fail.unwrap())
                });
            }
        }
    }
    Ok(())
}

fn nbhd_hausdorff(b: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    for q in classes(p)? {
        for k1 in KS {
            for k2 in KS.filter(|&k2| k2 != k1) {
                for i in 1..=b.n {
                    let fail = check_disjoint(k1, k2, i, &q, b.n)?;
                    r.check(fail.is_none(), || {
                        format!("{} in U_{i}({k1}) and U_{i}({k2})", fail.unwrap())
                    });
                }
            }
        }
    }
    Ok(())
}

fn nbhd_monotone(b: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    let all = classes(p)?;
    for small in &all {
        for large in all.iter().filter(|l| small.m().is_subset(l.m())) {
            for k in KS {
                for i in 1..=b.n {
                    let fail = check_monotone(k, i, small, large, b.n)?;
                    r.check(fail.is_none(), || {
                        format!("{} for {small} ⊆ {large}", fail.unwrap())
                    });
                }
            }
        }
    }
    Ok(())
}

fn nbhd_product(b: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    for q in classes(p)? {
        for k1 in KS {
            for k2 in KS {
                for i in p.j() + 1..=p.j() + 3 {
                    let fail = check_product(k1, k2, i, &q, b.n)?;
                    r.check(fail.is_none(), || format!("{} at i={i} {q}", fail.unwrap()));
                }
            }
        }
    }
    Ok(())
}

/// Translating elements: the `[M]` class inside a small enumeration.
fn translators(q: &NoiseParams) -> Vec<PartialIso> {
    enumerate(EnumBounds::new(3, 2).with_j(q.j()))
        .into_iter()
        .filter(|g| in_gjm(g, q))
        .collect()
}

fn translation(b: EnumBounds, p: &NoiseParams, r: &mut Report, reading: Reading) -> Result<()> {
    for q in classes(p)? {
        for g in translators(&q) {
            let (pp, rr) = arrow_exponents(&g);
            for k in KS {
                for i in pp.max(rr) + q.j() + 1..=pp.max(rr) + q.j() + 2 {
                    let fail = check_left_translation(&g, k, i, &q, b.n, reading)?;
                    r.check(fail.is_none(), || format!("{} at i={i} {q}", fail.unwrap()));
                }
                if reading == Reading::Reindexed {
                    let floor = (pp as i64).max(pp as i64 - k) + q.j() as i64;
                    for i in floor + 1..=floor + 2 {
                        let fail = check_right_translation(&g, k, i.max(1) as u64, &q, b.n)?;
                        r.check(fail.is_none(), || format!("{} at i={i} {q}", fail.unwrap()));
                    }
                }
            }
        }
    }
    Ok(())
}

fn nbhd_translation(b: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    translation(b, p, r, Reading::Reindexed)
}

fn nbhd_translation_literal(b: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    translation(b, p, r, Reading::Literal)
}

fn inversion(b: EnumBounds, p: &NoiseParams, r: &mut Report, reading: Reading) -> Result<()> {
    for q in classes(p)? {
        for k in KS {
            for i in 1..=b.n {
                let fail = check_inversion(k, i, &q, b.n, reading)?;
                r.check(fail.is_none(), || {
                    format!("{} at k={k} i={i} {q}", fail.unwrap())
                });
            }
        }
    }
    Ok(())
}

fn nbhd_inversion(b: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    inversion(b, p, r, Reading::Reindexed)
}

fn nbhd_inversion_literal(b: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    inversion(b, p, r, Reading::Literal)
}

fn upset_char(b: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    for q in classes(p)? {
        for k in KS {
            for i in 2..=b.n.max(2) {
                let ok = upset_char_check(k, i, &q, b.n, UpsetReading::Consistent)?;
                r.check(ok, || format!("k={k} i={i} {q}"));
            }
        }
    }
    Ok(())
}

fn convergence_probe(_: EnumBounds, p: &NoiseParams, r: &mut Report) -> Result<()> {
    let patterns = offset_sets(p.j());
    for q in classes(p)? {
        for kept in &patterns {
            for shift in KS {
                let spec = TailSeqSpec::new(kept.iter().copied(), shift)?;
                for k in KS {
                    let closed = converges(&spec, k, &q)?;
                    let seen = probe(&spec, k, &q, Probe::default())?.converges;
                    r.check(closed == seen, || format!("{spec} to {k} under {q}"));
                }
            }
        }
    }
    Ok(())
}
