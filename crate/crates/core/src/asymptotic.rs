//! Example formulas of the asymptotic expansion: multipliers, P-minimality,
//! Weyl denominators and the coefficient assemblies.

use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::Signed;
use serde::Serialize;

use crate::densities::ScalarRootFns;
use crate::error::{Error, Result};
use crate::gmfamily::split_formula_rel;
use crate::levilattice::{
    chamber_of, conjugate_levi, d_constant, enumerate_levis, full_levi, levi_weyl_group, minimal_levi, parabolics,
    weyl_cosets, CosetFilter, Levi, ParabolicChamber,
};
use crate::num::{combinations, q, q_string, q_to_f64, rank_of, RatMat, RatVec, Q};
use crate::rootdatum::{RootDatum, WeylElement};
use crate::spectral::{classify_tau, discrete_constants, TauClass};

/// `W(a_M)`: distinct restrictions to `a_M` of the elements normalizing `M`.
pub fn relative_weyl_group(d: &RootDatum, m: &Levi) -> Vec<WeylElement> {
    let mut seen: Vec<RatMat> = vec![];
    let mut out = vec![];
    for w in d.weyl_group() {
        if conjugate_levi(d, w, m) != *m {
            continue;
        }
        let restricted = &w.matrix * &m.proj;
        if !seen.contains(&restricted) {
            seen.push(restricted);
            out.push(w.clone());
        }
    }
    out
}

fn real_pair(d: &RootDatum, a: &[f64], b: &[f64]) -> f64 {
    d.pair_f64(a, b)
}

/// `α^_X(ν) = |W(a_{M1})|^{-1} Σ_w e^{(wν)(X)}` for `ν = i·nu_im`.
pub fn multiplier_alpha(d: &RootDatum, m1: &Levi, nu_im: &RatVec, x: &RatVec) -> Result<Complex64> {
    if nu_im.dim() != d.rank || x.dim() != d.rank {
        return Err(Error::DimensionError { expected: d.rank, got: nu_im.dim().min(x.dim()) });
    }
    let nu = m1.project(nu_im);
    let ws = relative_weyl_group(d, m1);
    let xf = x.to_f64();
    let total: Complex64 = ws
        .iter()
        .map(|w| Complex64::new(0.0, real_pair(d, &w.matrix.apply(&nu).to_f64(), &xf)).exp())
        .sum();
    Ok(total / ws.len() as f64)
}

/// A point of `t*_C` with rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Exponent {
    pub re: RatVec,
    pub im: RatVec,
}

impl Exponent {
    pub fn real(re: RatVec) -> Self {
        let im = RatVec::zeros(re.dim());
        Exponent { re, im }
    }

    pub fn act(&self, w: &WeylElement) -> Self {
        Exponent { re: w.matrix.apply(&self.re), im: w.matrix.apply(&self.im) }
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        self.re.to_f64().into_iter().zip(self.im.to_f64()).map(|(a, b)| Complex64::new(a, b)).collect()
    }

    pub fn render(&self) -> String {
        if self.im.is_zero() {
            self.re.to_string()
        } else {
            format!("{}+i{}", self.re, self.im)
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct InfinitesimalOrbit {
    pub base_mu: Exponent,
    pub orbit: Vec<Exponent>,
    pub stabilizer_orders: Vec<usize>,
}

pub fn infinitesimal_orbit(d: &RootDatum, mu: &Exponent) -> InfinitesimalOrbit {
    let mut counts: BTreeMap<Exponent, usize> = BTreeMap::new();
    let mut order = vec![];
    for w in d.weyl_group() {
        let v = mu.act(w);
        let c = counts.entry(v.clone()).or_insert(0);
        if *c == 0 {
            order.push(v);
        }
        *c += 1;
    }
    let stabilizer_orders = order.iter().map(|v| counts[v]).collect();
    InfinitesimalOrbit { base_mu: mu.clone(), orbit: order, stabilizer_orders }
}

/// Roots of `t` in the unipotent radical of `P`.
pub fn nilradical_roots(d: &RootDatum, p: &ParabolicChamber) -> Vec<RatVec> {
    d.roots.iter().filter(|r| d.pair(r, &p.chamber_point).is_positive()).cloned().collect()
}

/// Exact membership of `v` in the closed cone spanned by `gens`, by Carathéodory.
pub fn in_cone(gens: &[RatVec], v: &RatVec) -> bool {
    if v.is_zero() {
        return true;
    }
    let n = v.dim();
    for k in 1..=n.min(gens.len()) {
        for sub in combinations(gens.len(), k) {
            let cols: Vec<RatVec> = sub.iter().map(|&i| gens[i].clone()).collect();
            if rank_of(&cols) != k {
                continue;
            }
            let a = RatMat::from_cols(&cols, n);
            if let Some(x) = a.solve(v) {
                if x.iter().all(|c| !c.is_negative()) {
                    return true;
                }
            }
        }
    }
    false
}

fn dominates(gens: &[RatVec], a: &Exponent, b: &Exponent) -> bool {
    // a - b a nonzero element of the cone
    a != b && a.im == b.im && in_cone(gens, &(&a.re - &b.re))
}

/// `μ` is P-minimal iff no other orbit element `ν` has `μ - ν` in the cone of `n`-roots.
pub fn p_minimality(d: &RootDatum, orbit: &InfinitesimalOrbit, p: &ParabolicChamber) -> Vec<(Exponent, bool)> {
    let gens = nilradical_roots(d, p);
    orbit
        .orbit
        .iter()
        .map(|mu| (mu.clone(), !orbit.orbit.iter().any(|nu| dominates(&gens, mu, nu))))
        .collect()
}

/// Closed under passing to orbit elements lower by the cone of `n`-roots.
pub fn is_p_closed(d: &RootDatum, orbit: &InfinitesimalOrbit, p: &ParabolicChamber, subset: &[Exponent]) -> bool {
    let gens = nilradical_roots(d, p);
    subset
        .iter()
        .all(|mu| orbit.orbit.iter().filter(|nu| dominates(&gens, mu, nu)).all(|nu| subset.contains(nu)))
}

/// Positive roots of `M` in the ambient positive system.
pub fn levi_positive_system(d: &RootDatum, m: &Levi) -> Vec<usize> {
    m.root_subset.iter().copied().filter(|&i| d.is_positive(i)).collect()
}

/// `Δ_Σ(exp Y) = ∏_{α∈Σ} (e^{α(Y)/2} - e^{-α(Y)/2})`.
pub fn weyl_denominator(d: &RootDatum, sigma: &[usize], y: &[Complex64]) -> Complex64 {
    sigma
        .iter()
        .map(|&i| {
            let a: Complex64 = crate::gmfamily::cpair(d, y, &d.roots[i]) * 0.5;
            a.exp() - (-a).exp()
        })
        .product()
}

/// `(-1)^{#(wΣ ∩ -Σ)}`.
pub fn eps_m_sign(d: &RootDatum, w: &WeylElement, sigma: &[usize]) -> i8 {
    let neg: Vec<usize> = sigma.iter().map(|&i| d.negative_of(i)).collect();
    let count = sigma.iter().filter(|&&i| neg.contains(&d.act_on_root(w, i))).count();
    if count % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A fourth root of unity `ε_Σ^U`, given as `i^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct USign(pub u8);

impl USign {
    pub fn value(&self) -> Complex64 {
        Complex64::new(0.0, 1.0).powu(u32::from(self.0 % 4))
    }
}

/// A discrete class with its densities and evaluation point `λ`.
#[derive(Clone, Debug)]
pub struct SigmaModel {
    pub tau: TauClass,
    pub fns: ScalarRootFns,
    pub lambda: Vec<Complex64>,
    pub mu: Exponent,
}

impl SigmaModel {
    fn check(&self) -> ScalarRootFns {
        self.fns.contragredient()
    }
}

/// The chamber `wP` in `P(wM)`.
fn transform_chamber(d: &RootDatum, w: &WeylElement, p: &ParabolicChamber) -> Result<ParabolicChamber> {
    let wm = conjugate_levi(d, w, &p.levi);
    let chambers = parabolics(d, &wm);
    let x = w.matrix.apply(&p.chamber_point);
    chamber_of(d, &chambers, &x)
        .map(|i| chambers[i].clone())
        .ok_or_else(|| Error::InternalInconsistency(format!("w·P not a chamber for {}", p.label())))
}

fn require_discrete(t: &TauClass, l: &Levi) -> Result<Q> {
    if !l.contains(&t.levi_l) {
        return Err(Error::NotComparable(format!("{} ⊄ {}", t.levi_l.label, l.label)));
    }
    if !classify_tau(t, l)?.discrete {
        return Err(Error::NotDiscrete);
    }
    Ok(discrete_constants(t, l)?.n_l)
}

/// `Σ_S d_M^G(L,S) m_M^S(σ^, Q ∩ S)` for `Q ∈ P(M)`.
fn weighted_split(d: &RootDatum, fns: &ScalarRootFns, m: &Levi, l: &Levi, q1: &ParabolicChamber, lambda: &[Complex64]) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    for s in enumerate_levis(d, Some(m), None) {
        let dc = d_constant(d, m, l, &s)?;
        if dc.is_zero() {
            continue;
        }
        total += split_formula_rel(d, fns, m, &s, q1, lambda)? * dc.to_f64();
    }
    Ok(total)
}

/// The minimal-Levi formula for `Φ_{P,L}(exp Y, σ^L)`.
pub fn phi_minimal_levi(
    d: &RootDatum,
    y: &[Complex64],
    model: &SigmaModel,
    l: &Levi,
    p: &ParabolicChamber,
    u: USign,
) -> Result<Complex64> {
    let m = minimal_levi(d);
    if model.tau.levi_l != m || p.levi != m {
        return Err(Error::NotComparable("the class and P must sit on the minimal Levi".into()));
    }
    let n_l = require_discrete(&model.tau, l)?;
    let w_m = levi_weyl_group(d, &m).len();
    let w_mg = relative_weyl_group(d, &m).len();
    if w_m * w_mg != d.weyl_group().len() {
        return Err(Error::InternalInconsistency(format!("|W_T^M|·|W_M^G| = {w_m}·{w_mg} ≠ |W|")));
    }
    let sigma = levi_positive_system(d, &m);
    let fns = model.check();
    let mu = model.mu.to_complex();
    let mut total = Complex64::new(0.0, 0.0);
    for w in d.weyl_group() {
        let wy: Vec<Complex64> = (0..d.rank)
            .map(|i| (0..d.rank).map(|j| y[j] * q_to_f64(&w.matrix[(i, j)])).sum())
            .collect();
        let mu_wy: Complex64 = mu.iter().zip(&wy).enumerate().fold(Complex64::new(0.0, 0.0), |acc, (i, (a, _))| {
            acc + a * (0..d.rank).map(|j| wy[j] * q_to_f64(&d.gram[(i, j)])).sum::<Complex64>()
        });
        let wp = transform_chamber(d, w, p)?;
        let inner = weighted_split(d, &fns, &m, l, &wp, &model.lambda)?;
        total += mu_wy.exp() * f64::from(eps_m_sign(d, w, &sigma)) * inner;
    }
    Ok(total * q_to_f64(&n_l) * u.value())
}

/// `c_{M,L}^{P,U}(σ^L, wμ) = n^L ε^U ε^M(w) Σ_S d_M^G(L,S) m_M^S(σ^, w^{-1}P ∩ S)`.
#[allow(clippy::too_many_arguments)]
pub fn c_coefficient_example(
    d: &RootDatum,
    model: &SigmaModel,
    w: &WeylElement,
    p: &ParabolicChamber,
    u: USign,
    l: &Levi,
    m: &Levi,
) -> Result<Complex64> {
    if model.tau.levi_l != *m || p.levi != *m {
        return Err(Error::NotComparable(format!("class on {}, P on {}", model.tau.levi_l.label, p.levi.label)));
    }
    if conjugate_levi(d, w, m) != *m {
        return Err(Error::NotInStabilizer);
    }
    let n_l = require_discrete(&model.tau, l)?;
    let sigma = levi_positive_system(d, m);
    let wp = transform_chamber(d, &w.inverse(), p)?;
    let inner = weighted_split(d, &model.check(), m, l, &wp, &model.lambda)?;
    Ok(inner * q_to_f64(&n_l) * f64::from(eps_m_sign(d, w, &sigma)) * u.value())
}

/// Corollary assembly of `Φ_{P,L}(γ, τ^L)` from the inputs `Φ_{wM,L1}^{wM}`, keyed by the label of `wM`.
#[allow(clippy::too_many_arguments)]
pub fn assemble_phi_p(
    d: &RootDatum,
    inputs: &BTreeMap<String, Complex64>,
    l1: &Levi,
    l: &Levi,
    model: &SigmaModel,
    m: &Levi,
    p: &ParabolicChamber,
) -> Result<Complex64> {
    let t = &model.tau;
    if t.levi_l != *l1 || p.levi != *m {
        return Err(Error::NotComparable(format!("class on {}, L1 = {}", t.levi_l.label, l1.label)));
    }
    let dl = discrete_constants(t, l)?;
    let d1 = discrete_constants(t, l1)?;
    let k = q(dl.k_l as i64) / q(d1.k_l as i64);
    let fns = model.check();
    let g = full_levi(d);
    let mut total = Complex64::new(0.0, 0.0);
    for s in enumerate_levis(d, Some(l1), None) {
        let dc = d_constant(d, l1, l, &s)?;
        if dc.is_zero() {
            continue;
        }
        let filter = CosetFilter { l1, m, s: &s };
        for w in weyl_cosets(d, &g, Some(&filter)) {
            let wm = conjugate_levi(d, &w, m);
            let value = inputs.get(&wm.label).ok_or_else(|| Error::IncompleteInput(wm.label.clone()))?;
            let wp = transform_chamber(d, &w, p)?;
            let q1 = parabolics(d, l1)
                .into_iter()
                .find(|c| wp.contains_chamber(c))
                .ok_or_else(|| Error::InternalInconsistency(format!("no chamber of {} in {}", l1.label, wp.label())))?;
            total += value * split_formula_rel(d, &fns, &wm, &s, &q1, &model.lambda)? * dc.to_f64();
        }
    }
    Ok(total * q_to_f64(&(k * dl.n_l)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExpansionTerm {
    pub levi_s: String,
    pub w: String,
    pub mu: String,
    pub coefficient_re: f64,
    pub coefficient_im: f64,
    pub psi_tag: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormalExpansion {
    pub terms: Vec<ExpansionTerm>,
}

/// `Φ_{T,T}(exp Y, σ) = Σ_{S,w} m_M^S(wσ^, P∩S) Ψ_S^P(Y, wμ)`, with `Ψ` kept symbolic.
pub fn phi_tt_expansion(d: &RootDatum, model: &SigmaModel, p: &ParabolicChamber) -> Result<FormalExpansion> {
    let m = minimal_levi(d);
    if p.levi != m {
        return Err(Error::NotComparable(format!("P over {}", p.levi.label)));
    }
    let orbit = infinitesimal_orbit(d, &model.mu);
    if let Some((mu, _)) = p_minimality(d, &orbit, p).into_iter().find(|(_, ok)| !ok) {
        return Err(Error::NotPRegular(mu.render()));
    }
    let fns = model.check();
    let mut terms = vec![];
    for s in enumerate_levis(d, Some(&m), None) {
        for w in d.weyl_group() {
            let wp = transform_chamber(d, &w.inverse(), p)?;
            let c = split_formula_rel(d, &fns, &m, &s, &wp, &model.lambda)?;
            let wmu = model.mu.act(w).render();
            terms.push(ExpansionTerm {
                levi_s: s.label.clone(),
                w: w.word_string(),
                psi_tag: format!("Psi[{};P{}]({})", s.label, p.index, wmu),
                mu: wmu,
                coefficient_re: c.re,
                coefficient_im: c.im,
            });
        }
    }
    terms.sort_by(|a, b| (&a.levi_s, &a.w).cmp(&(&b.levi_s, &b.w)));
    Ok(FormalExpansion { terms })
}

/// Renders a rational point for report inputs.
pub fn render_point(v: &RatVec) -> String {
    v.iter().map(q_string).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densities::RootFn;
    use crate::num::qf;
    use crate::rootdatum::build_root_system;
    use crate::spectral::{build_spectral_triple, class_densities, tau_class};

    fn model(label: &str, sigma: &[usize], template: RootFn) -> (RootDatum, SigmaModel) {
        let d = build_root_system(label).unwrap();
        let t = tau_class(&build_spectral_triple(&d, sigma, &[]).unwrap());
        let fns = class_densities(&t, &template).unwrap();
        let lambda = (0..d.rank).map(|i| Complex64::new(0.0, 0.3 + 0.17 * i as f64)).collect();
        let mu = Exponent { re: RatVec::zeros(d.rank), im: RatVec::from_ints(&(1..=d.rank as i64).collect::<Vec<_>>()) };
        (d, SigmaModel { tau: t, fns, lambda, mu })
    }

    #[test]
    fn alpha_zero_and_bounded() {
        let d = build_root_system("A2").unwrap();
        let m0 = minimal_levi(&d);
        let x = RatVec::from_ints(&[3, -1]);
        let a = multiplier_alpha(&d, &m0, &RatVec::zeros(2), &x).unwrap();
        assert!((a - 1.0).norm() < 1e-14);
        let b = multiplier_alpha(&d, &m0, &RatVec::from_ints(&[2, 5]), &x).unwrap();
        assert!(b.norm() <= 1.0 + 1e-12);
        let g = full_levi(&d);
        let c = multiplier_alpha(&d, &g, &RatVec::from_ints(&[2, 5]), &x).unwrap();
        assert!((c - 1.0).norm() < 1e-14);
    }

    #[test]
    fn a1_minimality() {
        let d = build_root_system("A1").unwrap();
        let p = parabolics(&d, &minimal_levi(&d))[0].clone();
        let orbit = infinitesimal_orbit(&d, &Exponent::real(RatVec::from_ints(&[1])));
        let flags = p_minimality(&d, &orbit, &p);
        // μ = α on the positive chamber: μ - sμ = 2α
        let up = d.pair(&d.roots[0], &p.chamber_point).is_positive();
        for (mu, ok) in &flags {
            let positive = mu.re[0].is_positive();
            assert_eq!(*ok, positive != up);
        }
        let single = infinitesimal_orbit(&d, &Exponent::real(RatVec::zeros(1)));
        assert_eq!(p_minimality(&d, &single, &p), vec![(single.orbit[0].clone(), true)]);
    }

    #[test]
    fn a2_regular_orbit_minimal_set() {
        let d = build_root_system("A2").unwrap();
        let p = parabolics(&d, &minimal_levi(&d))[0].clone();
        let orbit = infinitesimal_orbit(&d, &Exponent::real(RatVec(vec![qf(1, 3), qf(2, 7)])));
        let flags = p_minimality(&d, &orbit, &p);
        let minimal: Vec<Exponent> = flags.iter().filter(|(_, ok)| *ok).map(|(m, _)| m.clone()).collect();
        assert_eq!(minimal.len(), 1);
        let gens = nilradical_roots(&d, &p);
        // the minimal element is antidominant for P
        assert!(gens.iter().all(|r| !d.pair(r, &minimal[0].re).is_positive()));
        assert!(is_p_closed(&d, &orbit, &p, &minimal));
    }

    #[test]
    fn denominator_and_signs() {
        let d = build_root_system("A2").unwrap();
        let g = full_levi(&d);
        let sigma = levi_positive_system(&d, &g);
        let y = vec![Complex64::new(0.3, 0.1), Complex64::new(-0.7, 0.2)];
        assert_eq!(weyl_denominator(&d, &[], &y), Complex64::new(1.0, 0.0));
        for w in d.weyl_group() {
            let wy: Vec<Complex64> = (0..2)
                .map(|i| (0..2).map(|j| y[j] * q_to_f64(&w.matrix[(i, j)])).sum())
                .collect();
            let lhs = weyl_denominator(&d, &sigma, &wy);
            let rhs = weyl_denominator(&d, &sigma, &y) * f64::from(eps_m_sign(&d, w, &sigma));
            assert!((lhs - rhs).norm() < 1e-12);
        }
        assert_eq!(eps_m_sign(&d, d.longest_element(), &sigma), -1);
        assert_eq!(eps_m_sign(&d, &d.simple_reflection(0), &sigma), -1);
        let a1 = build_root_system("A1").unwrap();
        let y = vec![Complex64::new(0.4, 0.0)];
        // α(Y) = 2·0.4 for the A1 gram
        let v = weyl_denominator(&a1, &[0], &y);
        assert!((v.re - 2.0 * 0.4f64.sinh()).abs() < 1e-14);
    }

    #[test]
    fn c_coefficient_special_case() {
        let (d, m) = model("A2", &[], RootFn::ModelPlancherel { n: 0.0, c: 1.0 });
        let m0 = minimal_levi(&d);
        let g = full_levi(&d);
        for p in parabolics(&d, &m0) {
            let c = c_coefficient_example(&d, &m, &WeylElement::identity(2), &p, USign(1), &m0, &m0).unwrap();
            let direct = split_formula_rel(&d, &m.fns.contragredient(), &m0, &g, &p, &m.lambda).unwrap();
            assert_eq!(c, direct * Complex64::new(0.0, 1.0));
        }
    }

    #[test]
    fn phi_minimal_levi_zero_densities() {
        let (d, m) = model("A1", &[], RootFn::Zero);
        let m0 = minimal_levi(&d);
        let p = parabolics(&d, &m0)[0].clone();
        let g = full_levi(&d);
        // only S = M survives; d_M^G(L, M) vanishes for L ≠ G
        let v = phi_minimal_levi(&d, &[Complex64::new(0.2, 0.0)], &m, &m0, &p, USign(0)).unwrap();
        assert!(v.norm() < 1e-14);
        let y0 = vec![Complex64::new(0.0, 0.0)];
        let mut m2 = m.clone();
        m2.mu = Exponent::real(RatVec::zeros(1));
        let gval = phi_minimal_levi(&d, &y0, &m2, &g, &p, USign(0));
        // σ^G is not discrete for the trivial Σ_σ
        assert!(matches!(gval, Err(Error::NotDiscrete)));
    }

    #[test]
    fn assemble_empty_is_zero() {
        let (d, m) = model("A2", &[0, 3], RootFn::ModelPlancherel { n: 1.0, c: 1.0 });
        let _ = m;
        let g = full_levi(&d);
        let levis = enumerate_levis(&d, None, None);
        let l1 = levis.iter().find(|l| l.dim() == 1).unwrap().clone();
        let t = tau_class(&build_spectral_triple(&d, &[], &[]).unwrap());
        let _ = t;
        // L1 of dimension 1 is never inside the minimal Levi
        let m0 = minimal_levi(&d);
        let filter = CosetFilter { l1: &l1, m: &m0, s: &g };
        assert!(weyl_cosets(&d, &g, Some(&filter)).is_empty());
    }

    #[test]
    fn phi_tt_a1() {
        let (d, m) = model("A1", &[], RootFn::Zero);
        let p = parabolics(&d, &minimal_levi(&d))[0].clone();
        let e = phi_tt_expansion(&d, &m, &p).unwrap();
        assert_eq!(e.terms.len(), 4);
        for t in &e.terms {
            let expect = if t.levi_s == "M0" { 1.0 } else { 0.0 };
            assert_eq!((t.coefficient_re, t.coefficient_im), (expect, 0.0));
        }
        let mut bad = m.clone();
        bad.mu = Exponent::real(RatVec::from_ints(&[1]));
        assert!(matches!(phi_tt_expansion(&d, &bad, &p), Err(Error::NotPRegular(_))));
    }
}
