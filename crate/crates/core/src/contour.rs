//! Principal values, shifted contours and the contour-shift identity in rank ≤ 2.

use std::cell::RefCell;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::densities::{verify_residues, RootFn, ScalarRootFns};
use crate::error::{Error, Result};
use crate::gmfamily::{split_plan, SplitPlan};
use crate::levilattice::{d_constant, enumerate_levis, full_levi, relative_basis, Levi, ParabolicChamber};
use crate::num::{q_to_f64, RatVec};
use crate::quad::integrate;
use crate::report::{CheckRecord, VerificationReport};
use crate::rootdatum::RootDatum;
use crate::spectral::{discrete_constants, n_beta, TauClass};

/// Functions on a line are represented by the density models.
pub type MeromorphicLine = RootFn;

pub const PV_DELTAS: [f64; 3] = [1e-1, 1e-2, 1e-3];
const QUAD_TOL: f64 = 1e-12;

/// `φ(z) = p(z) e^{s z²}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TestFunction {
    pub poly: Vec<f64>,
    pub scale: f64,
}

impl TestFunction {
    pub fn new(poly: Vec<f64>, scale: f64) -> Result<Self> {
        if scale <= 0.0 || !scale.is_finite() {
            return Err(Error::Config(format!("test function scale must be positive, got {scale}")));
        }
        Ok(TestFunction { poly, scale })
    }

    /// `φ ≡ 1`, only for pointwise use.
    pub fn constant_one() -> Self {
        TestFunction { poly: vec![1.0], scale: 0.0 }
    }

    pub fn battery() -> Vec<TestFunction> {
        vec![
            TestFunction { poly: vec![1.0], scale: 1.0 },
            TestFunction { poly: vec![0.0, 1.0], scale: 1.0 },
            TestFunction { poly: vec![1.0, 0.0, 1.0], scale: 0.5 },
            TestFunction { poly: vec![0.5, -1.0, 0.0, 1.0], scale: 2.0 },
            TestFunction { poly: vec![2.0, 1.0, -0.5], scale: 1.5 },
        ]
    }

    fn poly_at(&self, z: Complex64) -> Complex64 {
        self.poly.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.poly_at(z) * (z * z * self.scale).exp()
    }

    /// `p(λ(ρ^)/|ρ^|) exp(s ⟨λ, λ⟩)` on the complexified space.
    pub fn eval_vector(&self, d: &RootDatum, lambda: &[Complex64]) -> Complex64 {
        self.prepare(d).eval(lambda)
    }

    /// Floating data for repeated evaluation on one root datum.
    pub fn prepare(&self, d: &RootDatum) -> PreparedPhi<'_> {
        let rho = d.rho_check();
        let n = q_to_f64(&d.norm2(&rho)).sqrt();
        let g_rho = d.gram.apply(&rho).to_f64().into_iter().map(|x| if n > 0.0 { x / n } else { 0.0 }).collect();
        let gram = (0..d.rank).map(|i| (0..d.rank).map(|j| q_to_f64(&d.gram[(i, j)])).collect()).collect();
        PreparedPhi { phi: self, g_rho, gram }
    }

    /// Half-width of every quadrature box.
    pub fn truncation(&self) -> f64 {
        8.0 / self.scale.sqrt()
    }

    pub fn describe(&self) -> String {
        format!("gauss_poly{:?}*exp({}z^2)", self.poly, self.scale)
    }
}

pub struct PreparedPhi<'a> {
    phi: &'a TestFunction,
    g_rho: Vec<f64>,
    gram: Vec<Vec<f64>>,
}

impl PreparedPhi<'_> {
    pub fn eval(&self, lambda: &[Complex64]) -> Complex64 {
        let lin: Complex64 = lambda.iter().zip(&self.g_rho).map(|(l, g)| l * g).sum();
        let mut qf = Complex64::new(0.0, 0.0);
        for (i, row) in self.gram.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                qf += lambda[i] * lambda[j] * g;
            }
        }
        self.phi.poly_at(lin) * (qf * self.phi.scale).exp()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PvValue {
    pub value: Complex64,
    pub error: f64,
}

/// Fits `I(δ) = v + a δ + b δ³` through three samples.
fn richardson(ds: &[f64; 3], is: &[Complex64; 3]) -> (Complex64, f64) {
    let [d0, d1, d2] = *ds;
    // eliminate the cubic term between consecutive pairs, then the linear term
    let elim = |da: f64, db: f64, ia: Complex64, ib: Complex64| {
        let w = db.powi(3) / da.powi(3);
        ((ib - ia * w) / (1.0 - w), (db - da * w) / (1.0 - w))
    };
    let (j0, e0) = elim(d0, d1, is[0], is[1]);
    let (j1, e1) = elim(d1, d2, is[1], is[2]);
    let v = (j1 * e0 - j0 * e1) / (e0 - e1);
    let two = (is[2] * d1 - is[1] * d2) / (d1 - d2);
    (v, (v - two).norm())
}

/// Principal value of `∫_{-t_max}^{t_max} g(t) dt` with simple poles at `poles`.
pub fn pv_line<G: Fn(f64) -> Complex64>(g: G, poles: &[f64], t_max: f64, tol: f64) -> Result<PvValue> {
    let mut ps: Vec<f64> = poles.iter().copied().filter(|p| p.abs() < t_max).collect();
    ps.sort_by(|a, b| a.total_cmp(b));
    ps.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
    let mut cuts = vec![-t_max];
    for w in ps.windows(2) {
        cuts.push(0.5 * (w[0] + w[1]));
    }
    cuts.push(t_max);
    if ps.is_empty() {
        let v = integrate(&g, -t_max, t_max, tol)?;
        return Ok(PvValue { value: v, error: 0.0 });
    }
    let mut plain = Complex64::new(0.0, 0.0);
    let mut ladder = [Complex64::new(0.0, 0.0); 3];
    let mut ds = PV_DELTAS;
    for (k, &p) in ps.iter().enumerate() {
        let (a, b) = (cuts[k], cuts[k + 1]);
        let r = (p - a).min(b - p);
        if p - r > a {
            plain += integrate(&g, a, p - r, tol)?;
        }
        if p + r < b {
            plain += integrate(&g, p + r, b, tol)?;
        }
        let shrink = (r / (2.0 * PV_DELTAS[0])).min(1.0);
        ds = PV_DELTAS.map(|x| x * shrink);
        let pair = |u: f64| g(p + u) + g(p - u);
        let mut acc = integrate(pair, ds[0], r, tol)?;
        ladder[0] += acc;
        for i in 1..3 {
            acc += integrate(pair, ds[i], ds[i - 1], tol)?;
            ladder[i] += acc;
        }
    }
    let (v, err) = richardson(&ds, &ladder);
    if !v.re.is_finite() || !v.im.is_finite() || err > 1e-3 * (1.0 + v.norm()) {
        return Err(Error::NoConvergence(format!("principal value extrapolation, spread {err:e}")));
    }
    Ok(PvValue { value: plain + v, error: err })
}

fn axis_poles(f: &RootFn) -> Vec<f64> {
    f.poles().into_iter().filter(|(p, _)| p.re.abs() < 1e-12).map(|(p, _)| p.im).collect()
}

/// `p.v. ∫_{iR} φ f dz/2πi`.
pub fn pv_integral(f: &MeromorphicLine, phi: &TestFunction) -> Result<PvValue> {
    let g = |t: f64| {
        let z = Complex64::new(0.0, t);
        phi.eval(z) * f.eval(z) / (2.0 * PI)
    };
    pv_line(g, &axis_poles(f), phi.truncation(), QUAD_TOL)
}

/// `∫_{iR - ε} φ f dz/2πi`.
pub fn shifted_integral(f: &MeromorphicLine, phi: &TestFunction, eps: f64) -> Result<Complex64> {
    if eps <= 0.0 || !eps.is_finite() {
        return Err(Error::BadShift(eps));
    }
    let g = |t: f64| {
        let z = Complex64::new(-eps, t);
        phi.eval(z) * f.eval(z) / (2.0 * PI)
    };
    let t_max = phi.truncation();
    let mut cuts = vec![-t_max];
    let mut ps = axis_poles(f);
    ps.sort_by(|a, b| a.total_cmp(b));
    cuts.extend(ps.into_iter().filter(|p| p.abs() < t_max));
    cuts.push(t_max);
    let mut total = Complex64::new(0.0, 0.0);
    for w in cuts.windows(2) {
        total += integrate(g, w[0], w[1], QUAD_TOL)?;
    }
    Ok(total)
}

/// `∫_{iR-ε} φ f = (n/2) φ(0) + p.v. ∫_{iR} φ f` over a battery.
pub fn residue_identity_1d(f: &MeromorphicLine, phis: &[TestFunction], eps: f64, n: f64) -> VerificationReport {
    let mut report = VerificationReport::new("residue-1d");
    let inputs = |phi: &TestFunction| {
        format!(
            "f={} n={n} phi={} eps={eps} deltas={:?} T={}",
            serde_json::to_string(f).unwrap_or_default(),
            phi.describe(),
            PV_DELTAS,
            phi.truncation()
        )
    };
    let res_dev = verify_residues(f);
    let declared = (f.residue_at_zero() + n).abs();
    report.push(
        CheckRecord::new(format!("residue-1d/n={n}/residues"), "trand", format!("f={f:?} n={n}"))
            .values(format!("Res_0={}", f.residue_at_zero()), format!("{}", -n))
            .residual(res_dev.max(declared))
            .pass_if(res_dev < 1e-8 && declared < 1e-12),
    );
    for (k, phi) in phis.iter().enumerate() {
        let id = format!("residue-1d/n={n}/phi{k}");
        let rec = CheckRecord::new(id, "displayed residue identity", inputs(phi));
        let out = shifted_integral(f, phi, eps).and_then(|l| pv_integral(f, phi).map(|p| (l, p)));
        match out {
            Ok((lhs, pv)) => {
                let rhs = phi.eval(Complex64::new(0.0, 0.0)) * (n / 2.0) + pv.value;
                let r = (lhs - rhs).norm();
                report.push(
                    rec.values(format!("{lhs:.12}"), format!("{rhs:.12}"))
                        .residual(r)
                        .note(format!("pv={:.12} pv_err={:e}", pv.value, pv.error))
                        .pass_if(r <= 1e-6),
                );
            }
            Err(e) => report.push(rec.note(e.to_string()).pass_if(false)),
        }
    }
    report
}

fn dot(d: &RootDatum, a: &[f64], b: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..d.rank {
        for j in 0..d.rank {
            s += a[i] * b[j] * q_to_f64(&d.gram[(i, j)]);
        }
    }
    s
}

/// Gram-orthonormal basis of the span of `vs`.
fn orthonormal(d: &RootDatum, vs: &[RatVec]) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = vec![];
    for v in vs {
        let mut w = v.to_f64();
        for e in &out {
            let c = dot(d, &w, e);
            w.iter_mut().zip(e).for_each(|(x, y)| *x -= c * y);
        }
        let n = dot(d, &w, &w).sqrt();
        if n > 1e-12 {
            out.push(w.into_iter().map(|x| x / n).collect());
        }
    }
    out
}

/// Iterated integral over `[-t_k, t_k]` per coordinate, with principal values at the listed poles.
fn iterated<G: Fn(&[f64]) -> Complex64>(g: &G, bounds: &[(f64, Vec<f64>)], tol: f64) -> Result<Complex64> {
    fn go<G: Fn(&[f64]) -> Complex64>(
        g: &G,
        bounds: &[(f64, Vec<f64>)],
        prefix: &[f64],
        tol: f64,
        err: &RefCell<Option<Error>>,
    ) -> Complex64 {
        let k = prefix.len();
        if k == bounds.len() {
            return g(prefix);
        }
        let (t, poles) = &bounds[k];
        let inner = |x: f64| {
            if err.borrow().is_some() {
                return Complex64::new(0.0, 0.0);
            }
            let mut p = prefix.to_vec();
            p.push(x);
            go(g, bounds, &p, tol, err)
        };
        // inner levels run tighter so their noise stays below the outer tolerance
        let level_tol = tol * 1e-2f64.powi((bounds.len() - 1 - k) as i32);
        match pv_line(inner, poles, *t, level_tol) {
            Ok(v) => v.value,
            Err(e) => {
                err.borrow_mut().get_or_insert(e);
                Complex64::new(f64::NAN, 0.0)
            }
        }
    }
    let err = RefCell::new(None);
    let v = go(g, bounds, &[], tol, &err);
    match err.into_inner() {
        Some(e) => Err(e),
        None => Ok(v),
    }
}

fn solve_small(u: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
    let n = b.len();
    let mut a: Vec<Vec<f64>> = u.iter().zip(b).map(|(r, x)| r.iter().copied().chain([*x]).collect()).collect();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        a.swap(c, p);
        for r in 0..n {
            if r != c {
                let f = a[r][c] / a[c][c];
                for k in c..=n {
                    a[r][k] -= f * a[c][k];
                }
            }
        }
    }
    (0..n).map(|i| a[i][n] / a[i][i]).collect()
}

fn det_small(u: &[Vec<f64>]) -> f64 {
    match u.len() {
        0 => 1.0,
        1 => u[0][0],
        2 => u[0][0] * u[1][1] - u[0][1] * u[1][0],
        _ => unreachable!("rank at most 2"),
    }
}

/// `p.v. ∫_{i a_L} φ(λ) (vol ∏_{β∈F} m'_β(λ(β^))) dλ` in the coordinates `u_β = ⟨y, β^⟩`.
fn rhs_term(d: &RootDatum, plan: &SplitPlan, term: usize, basis_l: &[Vec<f64>], phi: &TestFunction) -> Result<Complex64> {
    let j = basis_l.len();
    let f = &plan.terms[term].1;
    // rows of U: the coroot coordinates, completed orthonormally
    let mut rows: Vec<Vec<f64>> = f
        .iter()
        .map(|&i| {
            let c = plan.roots[i].1.to_f64();
            basis_l.iter().map(|e| dot(d, e, &c)).collect()
        })
        .collect();
    if rows.len() > j {
        return Err(Error::InternalInconsistency("more pole coordinates than dimensions".into()));
    }
    for k in 0..j {
        if rows.len() == j {
            break;
        }
        let mut w: Vec<f64> = (0..j).map(|i| if i == k { 1.0 } else { 0.0 }).collect();
        for r in &rows {
            let n2: f64 = r.iter().map(|x| x * x).sum();
            let c: f64 = r.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>() / n2;
            w.iter_mut().zip(r).for_each(|(x, y)| *x -= c * y);
        }
        if w.iter().map(|x| x * x).sum::<f64>() > 1e-8 {
            rows.push(w);
        }
    }
    let det = det_small(&rows);
    if det.abs() < 1e-10 {
        return Err(Error::InternalInconsistency("pole coordinates are dependent on a_L".into()));
    }
    let radius = phi.truncation();
    let bounds: Vec<(f64, Vec<f64>)> = rows
        .iter()
        .enumerate()
        .map(|(k, r)| {
            let t = radius * r.iter().map(|x| x * x).sum::<f64>().sqrt();
            let poles = if k < f.len() { axis_poles(&plan.roots[f[k]].2) } else { vec![] };
            (t, poles)
        })
        .collect();
    let norm = (2.0 * PI).powi(j as i32) * det.abs();
    let prepared = phi.prepare(d);
    let g = |u: &[f64]| {
        let y = solve_small(&rows, u);
        let lam: Vec<Complex64> = (0..d.rank)
            .map(|i| Complex64::new(0.0, (0..j).map(|k| y[k] * basis_l[k][i]).sum()))
            .collect();
        prepared.eval(&lam) * plan.eval_term(term, &lam) / norm
    };
    iterated(&g, &bounds, 1e-9)
}

/// Compares both sides of the contour-shift identity for `τ` on `L1`, at shifts `eps · X_P`.
#[allow(clippy::too_many_arguments)]
pub fn lemma_shift_check(
    d: &RootDatum,
    l1: &Levi,
    m: &Levi,
    p: &ParabolicChamber,
    t: &TauClass,
    fns: &ScalarRootFns,
    phi: &TestFunction,
    eps: &[f64],
    model: &str,
) -> Result<VerificationReport> {
    let g = full_levi(d);
    if l1 != &t.levi_l || !m.contains(l1) || &p.levi != m {
        return Err(Error::NotComparable(format!("L1={} M={} P over {}", l1.label, m.label, p.levi.label)));
    }
    if l1.dim() > 2 {
        return Err(Error::DimensionError { expected: 2, got: l1.dim() });
    }
    if phi.scale <= 0.0 {
        return Err(Error::Config("lemma-shift needs a decaying test function".into()));
    }
    let q1 = crate::levilattice::parabolics(d, l1)
        .into_iter()
        .find(|q| p.contains_chamber(q))
        .ok_or_else(|| Error::NotComparable(format!("no Q1 inside {}", p.label())))?;
    let base = format!("{}/{model}/M={}/P{}", t.triple.describe(), m.label, p.index);
    let inputs = format!(
        "{} L1={} M={} P={} Q1={} phi={} eps={eps:?} deltas={:?} T={}",
        t.triple.describe(),
        l1.label,
        m.label,
        p.label(),
        q1.label(),
        phi.describe(),
        PV_DELTAS,
        phi.truncation()
    );
    let mut report = VerificationReport::new("lemma-shift");
    let plan_g = split_plan(d, fns, m, &g, &q1);

    // declared residues against n_β(τ), re-verified numerically
    let mut worst = 0.0f64;
    for (_, c, f) in &plan_g.roots {
        let _ = c;
        worst = worst.max(verify_residues(f));
    }
    for r in crate::levilattice::restricted_roots(d, l1, &g) {
        let n = q_to_f64(&n_beta(t, &r.vector)?);
        worst = worst.max((fns.get(&r.vector).residue_at_zero() + n).abs());
    }
    report.push(
        CheckRecord::new(format!("lemma-shift/{base}/residues"), "Lemma shift", inputs.clone())
            .values(format!("{worst:e}"), "0")
            .residual(worst)
            .pass_if(worst < 1e-8),
    );

    // RHS
    let mut rhs = Complex64::new(0.0, 0.0);
    let mut terms = vec![];
    for l in enumerate_levis(d, Some(l1), None) {
        let basis_l = orthonormal(d, &relative_basis(d, &l, &g));
        for s in enumerate_levis(d, Some(m), None) {
            let dc = d_constant(d, l1, &l, &s)?;
            if dc.is_zero() {
                continue;
            }
            let n_l = discrete_constants(t, &l)?.n_l;
            if n_l == crate::num::q(0) {
                continue;
            }
            let plan = split_plan(d, fns, m, &s, &q1);
            let mut v = Complex64::new(0.0, 0.0);
            for k in 0..plan.terms.len() {
                v += rhs_term(d, &plan, k, &basis_l, phi)?;
            }
            let c = dc.to_f64() * q_to_f64(&n_l);
            rhs += v * c;
            terms.push(format!("({},{})", l.label, s.label));
        }
    }

    // LHS at each shift
    let basis_1 = orthonormal(d, &relative_basis(d, l1, &g));
    let x = p.chamber_point.to_f64();
    let scale = plan_g
        .roots
        .iter()
        .map(|(gc, _, _)| x.iter().zip(gc).map(|(a, b)| a * b).sum::<f64>().abs())
        .fold(0.0f64, f64::max)
        .max(1e-300);
    let prepared = phi.prepare(d);
    let mut lhs_values = vec![];
    for &e in eps {
        if e <= 0.0 {
            return Err(Error::BadShift(e));
        }
        let re: Vec<f64> = x.iter().map(|a| a * e / scale).collect();
        let k1 = basis_1.len();
        let radius = phi.truncation();
        let bounds: Vec<(f64, Vec<f64>)> = (0..k1).map(|_| (radius, vec![])).collect();
        let norm = (2.0 * PI).powi(k1 as i32);
        let g = |y: &[f64]| {
            let lam: Vec<Complex64> = (0..d.rank)
                .map(|i| Complex64::new(re[i], (0..k1).map(|k| y[k] * basis_1[k][i]).sum()))
                .collect();
            prepared.eval(&lam) * plan_g.eval(&lam) / norm
        };
        let lhs = iterated(&g, &bounds, 1e-9)?;
        let r = (lhs - rhs).norm();
        report.push(
            CheckRecord::new(format!("lemma-shift/{base}/eps={e}"), "Lemma shift", inputs.clone())
                .values(format!("{lhs:.10}"), format!("{rhs:.10}"))
                .residual(r)
                .note(format!("terms {}", terms.join(" ")))
                .pass_if(r <= 1e-4),
        );
        lhs_values.push(lhs);
    }
    if lhs_values.len() > 1 {
        let spread = lhs_values.iter().map(|v| (v - lhs_values[0]).norm()).fold(0.0, f64::max);
        report.push(
            CheckRecord::new(format!("lemma-shift/{base}/eps-independence"), "Lemma shift", inputs)
                .values(format!("{:.10}", lhs_values[0]), format!("spread={spread:e}"))
                .residual(spread)
                .pass_if(spread <= 1e-4),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levilattice::{minimal_levi, parabolics};
    use crate::rootdatum::build_root_system;
    use crate::spectral::{build_spectral_triple, class_densities, tau_class};

    #[test]
    fn pv_pure_pole_even() {
        let f = RootFn::Pole { n: 1.0 };
        let phi = TestFunction::new(vec![1.0], 1.0).unwrap();
        let pv = pv_integral(&f, &phi).unwrap();
        assert!(pv.value.norm() < 1e-8);
        let lhs = shifted_integral(&f, &phi, 0.1).unwrap();
        assert!((lhs.re - 0.5).abs() < 1e-6 && lhs.im.abs() < 1e-6, "{lhs}");
    }

    #[test]
    fn pv_odd_phi_closed_form() {
        // φ(z) = z e^{z²}, f = -n/z: integrand is -n e^{-t²}/2π
        let f = RootFn::Pole { n: 2.0 };
        let phi = TestFunction::new(vec![0.0, 1.0], 1.0).unwrap();
        let pv = pv_integral(&f, &phi).unwrap();
        let expect = -2.0 * PI.sqrt() / (2.0 * PI);
        assert!((pv.value.re - expect).abs() < 1e-8, "{}", pv.value);
    }

    #[test]
    fn cauchy_without_poles() {
        let f = RootFn::Rational { num: vec![1.0, 0.5], den: vec![4.0, 0.0, -1.0] };
        let phi = TestFunction::new(vec![1.0, 0.0, 1.0], 0.5).unwrap();
        let a = shifted_integral(&f, &phi, 0.05).unwrap();
        let b = shifted_integral(&f, &phi, 0.1).unwrap();
        let c = pv_integral(&f, &phi).unwrap().value;
        assert!((a - b).norm() < 1e-8 && (a - c).norm() < 1e-8);
    }

    #[test]
    fn bad_shift() {
        let phi = TestFunction::new(vec![1.0], 1.0).unwrap();
        assert!(matches!(shifted_integral(&RootFn::Zero, &phi, 0.0), Err(Error::BadShift(_))));
    }

    #[test]
    fn residue_battery() {
        for n in [0.0, 0.5, 1.0, 2.0] {
            let f = RootFn::ModelPlancherel { n, c: 1.0 };
            let rep = residue_identity_1d(&f, &TestFunction::battery(), 0.1, n);
            assert!(rep.all_pass(), "{rep:?}");
        }
    }

    fn shift_case(label: &str, sigma: &[usize], template: RootFn) {
        let d = build_root_system(label).unwrap();
        let t = tau_class(&build_spectral_triple(&d, sigma, &[]).unwrap());
        let fns = class_densities(&t, &template).unwrap();
        let phi = TestFunction::new(vec![1.0, 0.5], 1.0).unwrap();
        let l1 = minimal_levi(&d);
        for m in enumerate_levis(&d, Some(&l1), None) {
            for p in parabolics(&d, &m) {
                let rep = lemma_shift_check(&d, &l1, &m, &p, &t, &fns, &phi, &[0.05, 0.1], "m").unwrap();
                assert!(rep.all_pass(), "{rep:#?}");
            }
        }
    }

    #[test]
    fn shift_a1() {
        shift_case("A1", &[0, 1], RootFn::ModelPlancherel { n: 1.0, c: 1.0 });
        shift_case("A1", &[0, 1], RootFn::RModel { n: 1.0, c: 1.0 });
        shift_case("A1", &[], RootFn::ModelPlancherel { n: 0.0, c: 1.0 });
    }

    #[test]
    fn shift_a1xa1() {
        let d = build_root_system("A1xA1").unwrap();
        let all: Vec<usize> = (0..d.roots.len()).collect();
        shift_case("A1xA1", &all, RootFn::ModelPlancherel { n: 1.0, c: 1.0 });
    }
}
