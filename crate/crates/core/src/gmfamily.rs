//! `(G,M)`-families: exact limits, convex-hull volumes, orthogonal sets and
//! the splitting formula for product families.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::densities::ScalarRootFns;
use crate::error::{Error, Result};
use crate::levilattice::{
    d_constant, enumerate_levis, full_levi, gram_det, minimal_levi, parabolics, relative_basis, restricted_roots,
    simple_restricted, theta_ratio, Levi, ParabolicChamber, QuadConst, RestrictedRoot,
};
use crate::num::{combinations, q, qf, q_to_f64, rank_of, RatMat, RatVec, Q};
use crate::quad::extrapolate_to_zero;
use crate::rootdatum::{RootDatum, WeylElement};

/// `coeff * ∏_j λ(forms_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial {
    pub coeff: Q,
    pub forms: Vec<RatVec>,
}

/// `poly(λ) * e^{λ(exponent)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpTerm {
    pub poly: Vec<Monomial>,
    pub exponent: RatVec,
}

impl ExpTerm {
    pub fn exp(x: RatVec) -> Self {
        ExpTerm { poly: vec![Monomial { coeff: Q::one(), forms: vec![] }], exponent: x }
    }

    pub fn constant(c: Q, dim: usize) -> Self {
        ExpTerm { poly: vec![Monomial { coeff: c, forms: vec![] }], exponent: RatVec::zeros(dim) }
    }
}

/// A family given on each chamber of `P(M)` by exponential polynomials.
#[derive(Clone, Debug)]
pub struct ExpPolyFamily {
    pub levi: Levi,
    pub chambers: Vec<ParabolicChamber>,
    pub members: Vec<Vec<ExpTerm>>,
}

impl ExpPolyFamily {
    pub fn new(d: &RootDatum, m: &Levi, members: Vec<Vec<ExpTerm>>) -> Result<Self> {
        let chambers = parabolics(d, m);
        if members.len() != chambers.len() {
            return Err(Error::DimensionError { expected: chambers.len(), got: members.len() });
        }
        Ok(ExpPolyFamily { levi: m.clone(), chambers, members })
    }

    /// `c_P(λ) = e^{λ(X_P)}`.
    pub fn exponential(d: &RootDatum, set: &OrthogonalSet) -> Self {
        let members = set.points.iter().map(|x| vec![ExpTerm::exp(x.clone())]).collect();
        ExpPolyFamily { levi: set.levi.clone(), chambers: parabolics(d, &set.levi), members }
    }

    pub fn constant(d: &RootDatum, m: &Levi, c: Q) -> Self {
        let chambers = parabolics(d, m);
        let members = chambers.iter().map(|_| vec![ExpTerm::constant(c.clone(), d.rank)]).collect();
        ExpPolyFamily { levi: m.clone(), chambers, members }
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut f = self.clone();
        for terms in f.members.iter_mut() {
            for t in terms.iter_mut() {
                for m in t.poly.iter_mut() {
                    m.coeff = &m.coeff * c;
                }
            }
        }
        f
    }

    pub fn add(&self, o: &ExpPolyFamily) -> Self {
        assert_eq!(self.levi, o.levi, "families over different Levis");
        let mut f = self.clone();
        for (a, b) in f.members.iter_mut().zip(&o.members) {
            a.extend(b.iter().cloned());
        }
        f
    }

    /// Transport by `w`: the member on `wP` is `λ ↦ c_P(w^{-1}λ)`.
    pub fn transform(&self, d: &RootDatum, w: &WeylElement) -> Self {
        let wm = crate::levilattice::conjugate_levi(d, w, &self.levi);
        let chambers = parabolics(d, &wm);
        let mut members = vec![vec![]; chambers.len()];
        for (p, terms) in self.chambers.iter().zip(&self.members) {
            let x = w.matrix.apply(&p.chamber_point);
            let j = crate::levilattice::chamber_of(d, &chambers, &x).expect("image of a chamber is a chamber");
            members[j] = terms
                .iter()
                .map(|t| ExpTerm {
                    exponent: w.matrix.apply(&t.exponent),
                    poly: t
                        .poly
                        .iter()
                        .map(|m| Monomial {
                            coeff: m.coeff.clone(),
                            forms: m.forms.iter().map(|v| w.matrix.apply(v)).collect(),
                        })
                        .collect(),
                })
                .collect();
        }
        ExpPolyFamily { levi: wm, chambers, members }
    }
}

fn factorial(n: usize) -> Q {
    (1..=n as i64).fold(Q::one(), |acc, k| acc * q(k))
}

/// Coefficient of `t^j` in `c(tλ)` for one member.
fn taylor_coeff(d: &RootDatum, terms: &[ExpTerm], lambda: &RatVec, j: usize) -> Q {
    let mut s = Q::zero();
    for t in terms {
        let a = d.pair(lambda, &t.exponent);
        for m in &t.poly {
            let deg = m.forms.len();
            if deg > j {
                continue;
            }
            let lin: Q = m.forms.iter().map(|v| d.pair(lambda, v)).product();
            let e = j - deg;
            let mut pw = Q::one();
            for _ in 0..e {
                pw = &pw * &a;
            }
            s += &m.coeff * lin * pw / factorial(e);
        }
    }
    s
}

/// Deterministic direction in `a_M^G` off every root hyperplane.
pub fn generic_direction(d: &RootDatum, m: &Levi) -> RatVec {
    let chambers = parabolics(d, m);
    let base = chambers[0].chamber_point.clone();
    let basis = relative_basis(d, m, &full_levi(d));
    let roots = restricted_roots(d, m, &full_levi(d));
    for attempt in 0i64.. {
        let mut v = base.clone();
        for (i, b) in basis.iter().enumerate() {
            let eps = qf(1, 97 + 13 * attempt + 7 * i as i64) * qf(1, (i + 2) as i64);
            v = &v + &b.scale(&eps);
        }
        if roots.iter().all(|r| !d.pair(&v, &r.coroot).is_zero()) {
            return v;
        }
    }
    unreachable!()
}

/// `c_M = lim_{λ→0} Σ_P c_P(λ)/θ_P(λ)`, exact.
pub fn family_limit(d: &RootDatum, f: &ExpPolyFamily) -> Result<QuadConst> {
    let m = &f.levi;
    let k = m.dim();
    if k == 0 {
        let v = taylor_coeff(d, &f.members[0], &RatVec::zeros(d.rank), 0);
        return Ok(QuadConst::from_rational(&v));
    }
    let lambda = generic_direction(d, m);
    let mut coeffs = vec![Q::zero(); k + 1];
    for (p, terms) in f.chambers.iter().zip(&f.members) {
        let prod: Q = simple_restricted(d, p).iter().map(|r| d.pair(&lambda, &r.coroot)).product();
        let w = theta_ratio(d, p) / prod;
        for (j, c) in coeffs.iter_mut().enumerate() {
            *c += &w * taylor_coeff(d, terms, &lambda, j);
        }
    }
    for (j, c) in coeffs.iter().enumerate().take(k) {
        if !c.is_zero() {
            return Err(Error::FamilyNotSmooth { order: j as i64 - k as i64 });
        }
    }
    let g = gram_det(d, &relative_basis(d, m, &full_levi(d)));
    Ok(QuadConst::scaled(&coeffs[k], &g))
}

type Poly = HashMap<Vec<u32>, Q>;

fn poly_mul_linear(p: &Poly, lin: &[Q]) -> Poly {
    let mut out: Poly = HashMap::new();
    for (e, c) in p {
        for (i, a) in lin.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] += 1;
            *out.entry(e2).or_insert_with(Q::zero) += c * a;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Member restricted to a subspace with basis `wall`, grouped by restricted exponent.
fn restrict(d: &RootDatum, terms: &[ExpTerm], wall: &[RatVec]) -> BTreeMap<RatVec, Poly> {
    let mut out: BTreeMap<RatVec, Poly> = BTreeMap::new();
    for t in terms {
        let key = RatVec(wall.iter().map(|w| d.pair(w, &t.exponent)).collect());
        let acc = out.entry(key).or_default();
        for m in &t.poly {
            let mut p: Poly = HashMap::new();
            p.insert(vec![0; wall.len()], m.coeff.clone());
            for v in &m.forms {
                let lin: Vec<Q> = wall.iter().map(|w| d.pair(w, v)).collect();
                p = poly_mul_linear(&p, &lin);
            }
            for (e, c) in p {
                *acc.entry(e).or_insert_with(Q::zero) += c;
            }
        }
        acc.retain(|_, c| !c.is_zero());
    }
    out.retain(|_, p| !p.is_empty());
    out
}

/// Adjacent chamber pairs on whose common wall the members differ.
pub fn compatibility_failures(d: &RootDatum, f: &ExpPolyFamily) -> Vec<(usize, usize)> {
    let basis = relative_basis(d, &f.levi, &full_levi(d));
    let mut bad = vec![];
    for i in 0..f.chambers.len() {
        for j in i + 1..f.chambers.len() {
            let Some(beta) = crate::levilattice::adjacent_wall(d, &f.chambers[i], &f.chambers[j]) else {
                continue;
            };
            let row = RatMat::from_rows(&[RatVec(basis.iter().map(|b| d.pair(b, &beta.coroot)).collect())]);
            let wall: Vec<RatVec> = row
                .nullspace()
                .iter()
                .map(|c| {
                    basis.iter().zip(c.iter()).fold(RatVec::zeros(d.rank), |acc, (b, x)| &acc + &b.scale(x))
                })
                .collect();
            if restrict(d, &f.members[i], &wall) != restrict(d, &f.members[j], &wall) {
                bad.push((i, j));
            }
        }
    }
    bad
}

/// Points `X_P`, one per chamber of `P(M)` in the order of [`parabolics`].
#[derive(Clone, Debug)]
pub struct OrthogonalSet {
    pub levi: Levi,
    pub points: Vec<RatVec>,
}

pub fn orthogonal_set(d: &RootDatum, m: &Levi, t: &RatVec) -> Result<OrthogonalSet> {
    if t.dim() != d.rank {
        return Err(Error::DimensionError { expected: d.rank, got: t.dim() });
    }
    if !d.is_dominant(t) {
        return Err(Error::NotDominant(t.to_string()));
    }
    let m0 = minimal_levi(d);
    let base: Vec<RatVec> = d.weyl_group().iter().map(|w| w.matrix.apply(t)).collect();
    if *m == m0 {
        return Ok(OrthogonalSet { levi: m.clone(), points: base });
    }
    let small = parabolics(d, &m0);
    let points = parabolics(d, m)
        .iter()
        .map(|p| {
            let qi = small.iter().position(|q| p.contains_chamber(q)).expect("every P contains a minimal parabolic");
            m.project(&base[qi])
        })
        .collect();
    Ok(OrthogonalSet { levi: m.clone(), points })
}

/// For adjacent chambers: `X_P - X_P'` is a nonnegative multiple of the wall coroot.
pub fn is_positive_orthogonal(d: &RootDatum, set: &OrthogonalSet) -> bool {
    let chambers = parabolics(d, &set.levi);
    for i in 0..chambers.len() {
        for j in 0..chambers.len() {
            if let Some(beta) = crate::levilattice::adjacent_wall(d, &chambers[i], &chambers[j]) {
                let diff = &set.points[i] - &set.points[j];
                let c = set.levi.project(&beta.coroot);
                let ok = if diff.is_zero() {
                    true
                } else {
                    let k = c.iter().position(|x| !x.is_zero()).expect("nonzero coroot");
                    let s = &diff[k] / &c[k];
                    !s.is_negative() && c.scale(&s) == diff
                };
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

fn coords_in(basis: &[RatVec], v: &RatVec, dim: usize) -> Vec<Q> {
    RatMat::from_cols(basis, dim).solve(v).expect("point lies in the span").0
}

fn det_rows(rows: &[Vec<Q>]) -> Q {
    let vs: Vec<RatVec> = rows.iter().map(|r| RatVec(r.clone())).collect();
    RatMat::from_rows(&vs).det()
}

fn orient(pts: &[Vec<Q>], facet: &[usize], x: &[Q]) -> Q {
    let o = &pts[facet[0]];
    let mut rows: Vec<Vec<Q>> = facet[1..].iter().map(|&i| pts[i].iter().zip(o).map(|(a, b)| a - b).collect()).collect();
    rows.push(x.iter().zip(o).map(|(a, b)| a - b).collect());
    det_rows(&rows)
}

/// Lebesgue measure (unnormalized coordinates) of the convex hull, by a placing triangulation.
pub fn hull_volume_coords(pts: &[Vec<Q>], k: usize) -> Q {
    let mut pts: Vec<Vec<Q>> = pts.to_vec();
    pts.sort();
    pts.dedup();
    if k == 0 {
        return Q::zero();
    }
    // initial simplex
    let mut simplex = vec![0usize];
    for i in 1..pts.len() {
        if simplex.len() == k + 1 {
            break;
        }
        let mut rows: Vec<RatVec> = simplex[1..]
            .iter()
            .map(|&j| RatVec(pts[j].iter().zip(&pts[0]).map(|(a, b)| a - b).collect()))
            .collect();
        rows.push(RatVec(pts[i].iter().zip(&pts[0]).map(|(a, b)| a - b).collect()));
        if rank_of(&rows) == rows.len() {
            simplex.push(i);
        }
    }
    if simplex.len() < k + 1 {
        return Q::zero();
    }
    let mut simplices: Vec<Vec<usize>> = vec![simplex.clone()];
    for p in 0..pts.len() {
        if simplex.contains(&p) {
            continue;
        }
        let mut facets: HashMap<Vec<usize>, (usize, usize)> = HashMap::new();
        for s in &simplices {
            for drop in 0..=k {
                let mut f: Vec<usize> = s.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, v)| *v).collect();
                f.sort_unstable();
                let e = facets.entry(f).or_insert((0, s[drop]));
                e.0 += 1;
            }
        }
        let mut boundary: Vec<(Vec<usize>, usize)> =
            facets.into_iter().filter(|(_, (c, _))| *c == 1).map(|(f, (_, o))| (f, o)).collect();
        boundary.sort();
        for (f, o) in boundary {
            let sp = orient(&pts, &f, &pts[p]);
            let so = orient(&pts, &f, &pts[o]);
            if !sp.is_zero() && sp.is_positive() != so.is_positive() {
                let mut s = f.clone();
                s.push(p);
                simplices.push(s);
            }
        }
    }
    let kf = factorial(k);
    simplices
        .iter()
        .map(|s| {
            let rows: Vec<Vec<Q>> =
                s[1..].iter().map(|&i| pts[i].iter().zip(&pts[s[0]]).map(|(a, b)| a - b).collect()).collect();
            det_rows(&rows).abs() / &kf
        })
        .sum()
}

/// Volume of `conv{X_P}` in the gram measure of `a_M^G`.
pub fn hull_volume(d: &RootDatum, set: &OrthogonalSet) -> QuadConst {
    let m = &set.levi;
    let basis = relative_basis(d, m, &full_levi(d));
    let k = basis.len();
    if k == 0 {
        return QuadConst::one();
    }
    let pts: Vec<Vec<Q>> = set.points.iter().map(|x| coords_in(&basis, x, d.rank)).collect();
    let v = hull_volume_coords(&pts, k);
    QuadConst::scaled(&v, &gram_det(d, &basis))
}

/// Roots of `(S, A_{L1})` that are negative on `Q1`.
fn opposite_roots(d: &RootDatum, q1: &ParabolicChamber, s: &Levi) -> Vec<RestrictedRoot> {
    restricted_roots(d, &q1.levi, s)
        .into_iter()
        .filter(|r| d.pair(&r.vector, &q1.chamber_point).is_negative())
        .collect()
}

/// Complex pairing `λ(v)` for `λ` given by complex simple-root coordinates.
pub fn cpair(d: &RootDatum, lambda: &[Complex64], v: &RatVec) -> Complex64 {
    let gv = d.gram.apply(v);
    lambda.iter().zip(gv.iter()).map(|(l, g)| l * q_to_f64(g)).sum()
}

/// The sets `F` of the splitting formula with their volumes `vol(a_M^S / Z F^_M)`.
pub fn split_bases(d: &RootDatum, m: &Levi, s: &Levi, q1: &ParabolicChamber) -> Vec<(Vec<RestrictedRoot>, QuadConst)> {
    let roots = opposite_roots(d, q1, s);
    let k = m.dim() - s.dim();
    let mut out = vec![];
    for comb in combinations(roots.len(), k) {
        let proj: Vec<RatVec> = comb
            .iter()
            .map(|&i| {
                let c = m.project(&roots[i].coroot);
                &c - &s.project(&c)
            })
            .collect();
        if rank_of(&proj) != k {
            continue;
        }
        let vol = QuadConst::sqrt(gram_det(d, &proj));
        out.push((comb.iter().map(|&i| roots[i].clone()).collect(), vol));
    }
    out
}

/// Precomputed floating data of the splitting formula.
#[derive(Clone, Debug)]
pub struct SplitPlan {
    /// `(vol, indices into roots)` per basis `F`.
    pub terms: Vec<(f64, Vec<usize>)>,
    /// `(G β^, β^, m'_β)`: `λ(β^) = Σ_i λ_i (G β^)_i`.
    pub roots: Vec<(Vec<f64>, RatVec, crate::densities::RootFn)>,
}

impl SplitPlan {
    pub fn z(&self, i: usize, lambda: &[Complex64]) -> Complex64 {
        lambda.iter().zip(&self.roots[i].0).map(|(l, g)| l * g).sum()
    }

    pub fn eval_term(&self, t: usize, lambda: &[Complex64]) -> Complex64 {
        let (vol, f) = &self.terms[t];
        f.iter().map(|&i| self.roots[i].2.eval(self.z(i, lambda))).product::<Complex64>() * *vol
    }

    pub fn eval(&self, lambda: &[Complex64]) -> Complex64 {
        (0..self.terms.len()).map(|t| self.eval_term(t, lambda)).sum()
    }
}

pub fn split_plan(d: &RootDatum, fns: &ScalarRootFns, m: &Levi, s: &Levi, q1: &ParabolicChamber) -> SplitPlan {
    let roots = opposite_roots(d, q1, s);
    let mut terms = vec![];
    for (f, vol) in split_bases(d, m, s, q1) {
        let idx = f.iter().map(|r| roots.iter().position(|x| x == r).expect("basis root listed")).collect();
        terms.push((vol.to_f64(), idx));
    }
    let roots = roots
        .iter()
        .map(|r| (d.gram.apply(&r.coroot).to_f64(), r.coroot.clone(), fns.get(&r.vector).clone()))
        .collect();
    SplitPlan { terms, roots }
}

/// `m_M^S(λ)`: `Σ_F vol(a_M^S / Z F^_M) ∏_{β ∈ F} m'_β(λ(β^))`.
pub fn split_formula_rel(
    d: &RootDatum,
    fns: &ScalarRootFns,
    m: &Levi,
    s: &Levi,
    q1: &ParabolicChamber,
    lambda: &[Complex64],
) -> Result<Complex64> {
    if !m.contains(&q1.levi) || !s.contains(m) {
        return Err(Error::NotComparable(format!("{} ⊆ {} ⊆ {}", q1.levi.label, m.label, s.label)));
    }
    if lambda.len() != d.rank {
        return Err(Error::DimensionError { expected: d.rank, got: lambda.len() });
    }
    let plan = split_plan(d, fns, m, s, q1);
    for (i, r) in opposite_roots(d, q1, s).iter().enumerate() {
        if plan.roots[i].2.near_pole(plan.z(i, lambda)) {
            return Err(Error::PoleHit { root: r.sources[0] });
        }
    }
    Ok(plan.eval(lambda))
}

/// Splitting formula for `P ∈ P(M)` and `Q1 ∈ P(L1)` with `Q1 ⊆ P`.
pub fn split_formula(
    d: &RootDatum,
    fns: &ScalarRootFns,
    m: &Levi,
    p: &ParabolicChamber,
    q1: &ParabolicChamber,
    lambda: &[Complex64],
) -> Result<Complex64> {
    if p.levi != *m || !p.contains_chamber(q1) {
        return Err(Error::NotComparable(format!("{} does not contain {}", p.label(), q1.label())));
    }
    split_formula_rel(d, fns, m, &full_levi(d), q1, lambda)
}

/// Numeric limit of the induced product family
/// `c_P'(Λ) = ∏ exp(∫_{λ(β^)}^{λ(β^)+Λ(β^)} m'_β)` over roots positive on `P'` and negative on `Q1`,
/// along the line `tΛ0`, by Neville extrapolation from `t = h 2^{-j}`.
pub fn induced_family_limit(
    d: &RootDatum,
    fns: &ScalarRootFns,
    m: &Levi,
    q1: &ParabolicChamber,
    lambda: &[Complex64],
    h: f64,
    levels: usize,
) -> Result<Complex64> {
    let k = m.dim();
    if k == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let dir = generic_direction(d, m);
    let chambers = parabolics(d, m);
    let roots = opposite_roots(d, q1, &full_levi(d));
    let mut data = vec![];
    for p in &chambers {
        let active: Vec<&RestrictedRoot> = roots
            .iter()
            .filter(|r| d.pair(&m.project(&r.vector), &p.chamber_point).is_positive())
            .collect();
        let simple = simple_restricted(d, p);
        let prod: f64 = simple.iter().map(|r| q_to_f64(&d.pair(&dir, &r.coroot))).product();
        let vol = theta_ratio(d, p);
        let zs: Vec<(Complex64, f64, &RestrictedRoot)> = active
            .iter()
            .map(|r| (cpair(d, lambda, &r.coroot), q_to_f64(&d.pair(&dir, &r.coroot)), *r))
            .collect();
        data.push((q_to_f64(&vol) / prod, zs));
    }
    let g = q_to_f64(&gram_det(d, &relative_basis(d, m, &full_levi(d)))).sqrt();
    let mut ts = vec![];
    let mut vs = vec![];
    for j in 0..levels {
        let t = h * 0.5f64.powi(j as i32);
        let mut sum = Complex64::new(0.0, 0.0);
        for (w, zs) in &data {
            let log: Complex64 =
                zs.iter().map(|(z, a, r)| fns.get(&r.vector).integral(*z, Complex64::new(t * a, 0.0))).sum();
            sum += crate::densities::exp_m1(log) * *w;
        }
        ts.push(t);
        vs.push(sum * g / t.powi(k as i32));
    }
    Ok(extrapolate_to_zero(&ts, &vs))
}

/// `L ↦ Σ_{S ∈ L(M)} d_M^G(L, S) · values[S]` for every `L ∈ L(M)`. Values are keyed by Levi label.
pub fn descent_sum(
    d: &RootDatum,
    values: &BTreeMap<String, f64>,
    m: &Levi,
) -> Result<BTreeMap<String, f64>> {
    let levis = enumerate_levis(d, Some(m), None);
    for s in &levis {
        if !values.contains_key(&s.label) {
            return Err(Error::IncompleteInput(format!("value for {}", s.label)));
        }
    }
    let mut out = BTreeMap::new();
    for l in &levis {
        let mut acc = 0.0;
        for s in &levis {
            let c = d_constant(d, m, l, s)?;
            if !c.is_zero() {
                acc += c.to_f64() * values[&s.label];
            }
        }
        out.insert(l.label.clone(), acc);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::densities::RootFn;
    use crate::rootdatum::build_root_system;

    #[test]
    fn a1_hull_and_limit() {
        let d = build_root_system("A1").unwrap();
        let m0 = minimal_levi(&d);
        let t = d.coroots[0].clone();
        let set = orthogonal_set(&d, &m0, &t).unwrap();
        assert_eq!(set.points, vec![t.clone(), -&t]);
        let hv = hull_volume(&d, &set);
        // |2 α^| with |α^|^2 = 2
        assert_eq!(hv, QuadConst::sqrt(q(8)));
        let lim = family_limit(&d, &ExpPolyFamily::exponential(&d, &set)).unwrap();
        assert_eq!(lim, hv);
    }

    #[test]
    fn constant_family_limit_is_zero() {
        let d = build_root_system("A2").unwrap();
        for m in enumerate_levis(&d, None, None) {
            let lim = family_limit(&d, &ExpPolyFamily::constant(&d, &m, q(3))).unwrap();
            if m.dim() == 0 {
                assert_eq!(lim, QuadConst::from_rational(&q(3)));
            } else {
                assert!(lim.is_zero());
            }
        }
    }

    #[test]
    fn hull_equals_limit_a2_b2() {
        for label in ["A2", "B2", "G2"] {
            let d = build_root_system(label).unwrap();
            let t = d.rho_check().scale(&q(2));
            for m in enumerate_levis(&d, None, None) {
                let set = orthogonal_set(&d, &m, &t).unwrap();
                assert!(is_positive_orthogonal(&d, &set));
                let f = ExpPolyFamily::exponential(&d, &set);
                assert!(compatibility_failures(&d, &f).is_empty());
                assert_eq!(family_limit(&d, &f).unwrap(), hull_volume(&d, &set), "{label} {}", m.label);
            }
        }
    }

    #[test]
    fn incompatible_family_detected() {
        let d = build_root_system("A2").unwrap();
        let m0 = minimal_levi(&d);
        let mut members: Vec<Vec<ExpTerm>> = (0..6).map(|_| vec![ExpTerm::constant(q(1), 2)]).collect();
        members[0] = vec![ExpTerm::constant(q(2), 2)];
        let f = ExpPolyFamily::new(&d, &m0, members).unwrap();
        assert!(!compatibility_failures(&d, &f).is_empty());
        assert!(matches!(family_limit(&d, &f), Err(Error::FamilyNotSmooth { .. })));
    }

    #[test]
    fn not_dominant() {
        let d = build_root_system("A2").unwrap();
        let t = RatVec::from_ints(&[1, -1]);
        assert!(matches!(orthogonal_set(&d, &minimal_levi(&d), &t), Err(Error::NotDominant(_))));
    }

    #[test]
    fn degenerate_hull_is_zero() {
        let d = build_root_system("A2").unwrap();
        let set = orthogonal_set(&d, &minimal_levi(&d), &RatVec::zeros(2)).unwrap();
        assert!(hull_volume(&d, &set).is_zero());
    }

    #[test]
    fn split_matches_induced_family_a1() {
        let d = build_root_system("A1").unwrap();
        let m0 = minimal_levi(&d);
        let ps = parabolics(&d, &m0);
        let fns = ScalarRootFns::uniform(RootFn::ModelPlancherel { n: 1.0, c: 1.0 });
        let lam = [Complex64::new(0.1, 0.4)];
        let a = split_formula(&d, &fns, &m0, &ps[0], &ps[0], &lam).unwrap();
        let b = induced_family_limit(&d, &fns, &m0, &ps[0], &lam, 0.05, 8).unwrap();
        assert!((a - b).norm() < 1e-9, "{a} {b}");
    }

    #[test]
    fn descent_sum_top() {
        let d = build_root_system("A2").unwrap();
        let m0 = minimal_levi(&d);
        let levis = enumerate_levis(&d, None, None);
        let values: BTreeMap<String, f64> = levis.iter().enumerate().map(|(i, l)| (l.label.clone(), i as f64)).collect();
        let out = descent_sum(&d, &values, &m0).unwrap();
        assert_eq!(out["G"], values["M0"]);
        let mut partial = values.clone();
        partial.remove("G");
        assert!(matches!(descent_sum(&d, &partial, &m0), Err(Error::IncompleteInput(_))));
    }
}

#[cfg(test)]
mod split_a2 {
    use super::*;
    use crate::densities::RootFn;
    use crate::rootdatum::build_root_system;

    #[test]
    fn split_matches_induced_family_a2() {
        let d = build_root_system("A2").unwrap();
        let m0 = minimal_levi(&d);
        let q1s = parabolics(&d, &m0);
        let lam = [Complex64::new(0.13, 0.41), Complex64::new(-0.07, 0.29)];
        for f in [RootFn::Pole { n: -1.0 }, RootFn::ModelPlancherel { n: 1.0, c: 1.0 }] {
            let fns = ScalarRootFns::uniform(f.clone());
            for m in enumerate_levis(&d, None, None) {
                for q1 in &q1s {
                    let Some(p) = parabolics(&d, &m).into_iter().find(|p| p.contains_chamber(q1)) else {
                        continue;
                    };
                    let a = split_formula(&d, &fns, &m, &p, q1, &lam).unwrap();
                    let b = induced_family_limit(&d, &fns, &m, q1, &lam, 0.05, 8).unwrap();
                    assert!((a - b).norm() < 1e-8, "{f:?} {} {a} {b}", m.label);
                }
            }
        }
    }
}
