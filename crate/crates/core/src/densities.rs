//! Scalar density models `z ↦ m'_β(z)` attached to reduced roots.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::num::RatVec;
use crate::quad::gl_integrate;

const POLE_TOL: f64 = 1e-12;

/// A meromorphic function of one variable with simple poles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RootFn {
    Zero,
    Constant { k: f64 },
    /// `-n / z`
    Pole { n: f64 },
    /// `num(z) / den(z)`, coefficients in ascending powers.
    Rational { num: Vec<f64>, den: Vec<f64> },
    /// `-n / z + z / (c - z^2)`
    ModelPlancherel { n: f64, c: f64 },
    /// `-n / z + 1 / (c - z)`
    RModel { n: f64, c: f64 },
    /// `z ↦ f(-z)`
    Reflected { inner: Box<RootFn> },
}

fn horner(cs: &[f64], z: Complex64) -> Complex64 {
    cs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + *c)
}

fn derivative(cs: &[f64]) -> Vec<f64> {
    cs.iter().enumerate().skip(1).map(|(k, c)| k as f64 * c).collect()
}

/// Roots of a polynomial (ascending coefficients) by Durand–Kerner iteration.
pub fn poly_roots(cs: &[f64]) -> Vec<Complex64> {
    let mut cs = cs.to_vec();
    while cs.len() > 1 && cs.last() == Some(&0.0) {
        cs.pop();
    }
    let deg = cs.len().saturating_sub(1);
    if deg == 0 {
        return vec![];
    }
    let lead = cs[deg];
    let monic: Vec<f64> = cs.iter().map(|c| c / lead).collect();
    let seed = Complex64::new(0.4, 0.9);
    let mut zs: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..deg {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    den *= zs[i] - zs[j];
                }
            }
            let step = horner(&monic, zs[i]) / den;
            zs[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    for z in zs.iter_mut() {
        if z.im.abs() < 1e-12 {
            z.im = 0.0;
        }
        if z.re.abs() < 1e-12 {
            z.re = 0.0;
        }
    }
    zs
}

/// `ln(1 + w)`, accurate for small `w`.
pub fn ln_1p(w: Complex64) -> Complex64 {
    if w.norm() < 1e-3 {
        let mut term = w;
        let mut s = Complex64::new(0.0, 0.0);
        for k in 1..=12 {
            s += term / k as f64;
            term *= -w;
        }
        s
    } else {
        (w + 1.0).ln()
    }
}

/// `e^w - 1`, accurate for small `w`.
pub fn exp_m1(w: Complex64) -> Complex64 {
    let (a, b) = (w.re, w.im);
    let half = (0.5 * b).sin();
    let re = a.exp_m1() * b.cos() - 2.0 * half * half;
    let im = a.exp() * b.sin();
    Complex64::new(re, im)
}

impl RootFn {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            RootFn::Zero => Complex64::new(0.0, 0.0),
            RootFn::Constant { k } => Complex64::new(*k, 0.0),
            RootFn::Pole { n } => pole_part(*n, z),
            RootFn::Rational { num, den } => horner(num, z) / horner(den, z),
            RootFn::ModelPlancherel { n, c } => pole_part(*n, z) + z / (*c - z * z),
            RootFn::RModel { n, c } => pole_part(*n, z) + 1.0 / (*c - z),
            RootFn::Reflected { inner } => inner.eval(-z),
        }
    }

    /// Simple poles with their residues.
    pub fn poles(&self) -> Vec<(Complex64, Complex64)> {
        let c0 = Complex64::new(0.0, 0.0);
        let at0 = |n: f64| if n != 0.0 { vec![(c0, Complex64::new(-n, 0.0))] } else { vec![] };
        match self {
            RootFn::Zero | RootFn::Constant { .. } => vec![],
            RootFn::Pole { n } => at0(*n),
            RootFn::Rational { num, den } => {
                let dd = derivative(den);
                poly_roots(den)
                    .into_iter()
                    .map(|p| (p, horner(num, p) / horner(&dd, p)))
                    .filter(|(_, r)| r.norm() > 1e-14)
                    .collect()
            }
            RootFn::ModelPlancherel { n, c } => {
                let s = c.sqrt();
                let mut v = at0(*n);
                v.push((Complex64::new(s, 0.0), Complex64::new(-0.5, 0.0)));
                v.push((Complex64::new(-s, 0.0), Complex64::new(-0.5, 0.0)));
                v
            }
            RootFn::RModel { n, c } => {
                let mut v = at0(*n);
                v.push((Complex64::new(*c, 0.0), Complex64::new(-1.0, 0.0)));
                v
            }
            RootFn::Reflected { inner } => inner.poles().into_iter().map(|(p, r)| (-p, -r)).collect(),
        }
    }

    /// Residue at `z = 0`.
    pub fn residue_at_zero(&self) -> f64 {
        self.poles().iter().filter(|(p, _)| p.norm() < POLE_TOL).map(|(_, r)| r.re).sum()
    }

    pub fn near_pole(&self, z: Complex64) -> bool {
        self.poles().iter().any(|(p, _)| (z - p).norm() < POLE_TOL)
    }

    /// `∫_z^{z+s} f`, in closed form where available and by Gauss–Legendre otherwise.
    pub fn integral(&self, z: Complex64, s: Complex64) -> Complex64 {
        let log_ratio = |a: Complex64| ln_1p(s / a);
        match self {
            RootFn::Zero => Complex64::new(0.0, 0.0),
            RootFn::Constant { k } => s * *k,
            RootFn::Pole { n } => -*n * log_ratio(z),
            RootFn::ModelPlancherel { n, c } => {
                // d/dz of -1/2 log(c - z^2)
                let base = *c - z * z;
                let w = -(s * (z * 2.0 + s)) / base;
                -*n * log_ratio(z) - 0.5 * ln_1p(w)
            }
            RootFn::RModel { n, c } => -*n * log_ratio(z) - ln_1p(-s / (*c - z)),
            RootFn::Reflected { inner } => -inner.integral(-z, -s),
            RootFn::Rational { .. } => gl_integrate(|u| self.eval(z + s * u) * s, 0.0, 1.0, 40),
        }
    }

    /// `h(s) - 1` where `h(s) = exp(∫_z^{z+s} f)`.
    pub fn exp_integral_m1(&self, z: Complex64, s: Complex64) -> Complex64 {
        exp_m1(self.integral(z, s))
    }

    /// Parses a config template: `zero`, `const(k)`, `pole(n)`, `model_plancherel(c)`,
    /// `r_model(c)`, `rational(p0 p1 ..; q0 q1 ..)`. `n` fills the multiplicity of the models.
    pub fn parse_template(s: &str, n: f64) -> Result<RootFn> {
        let s = s.trim();
        let bad = || Error::Config(format!("unknown density template `{s}`"));
        if s == "zero" {
            return Ok(RootFn::Zero);
        }
        let open = s.find('(').ok_or_else(bad)?;
        if !s.ends_with(')') {
            return Err(bad());
        }
        let name = &s[..open];
        let body = &s[open + 1..s.len() - 1];
        let num = |t: &str| -> Result<f64> {
            let t = t.trim();
            if let Some(q) = crate::num::parse_q(t) {
                Ok(crate::num::q_to_f64(&q))
            } else {
                t.parse::<f64>().map_err(|_| bad())
            }
        };
        let list = |t: &str| -> Result<Vec<f64>> { t.split_whitespace().map(num).collect() };
        match name {
            "const" => Ok(RootFn::Constant { k: num(body)? }),
            "pole" => Ok(RootFn::Pole { n: num(body)? }),
            "model_plancherel" => {
                let c = num(body)?;
                if c <= 0.0 {
                    return Err(Error::Config("model_plancherel needs c > 0".into()));
                }
                Ok(RootFn::ModelPlancherel { n, c })
            }
            "r_model" => {
                let c = num(body)?;
                if c == 0.0 {
                    return Err(Error::Config("r_model needs c != 0".into()));
                }
                Ok(RootFn::RModel { n, c })
            }
            "rational" => {
                let (p, q) = body.split_once(';').ok_or_else(bad)?;
                let (num, den) = (list(p)?, list(q)?);
                if den.iter().all(|x| *x == 0.0) {
                    return Err(Error::Config("rational density with zero denominator".into()));
                }
                Ok(RootFn::Rational { num, den })
            }
            _ => Err(bad()),
        }
    }
}

/// Densities attached to reduced roots: a default plus per-root overrides keyed by the root vector.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarRootFns {
    pub default: RootFn,
    pub overrides: Vec<(RatVec, RootFn)>,
}

impl ScalarRootFns {
    pub fn uniform(f: RootFn) -> Self {
        ScalarRootFns { default: f, overrides: vec![] }
    }

    pub fn with(mut self, root: RatVec, f: RootFn) -> Self {
        self.overrides.retain(|(r, _)| *r != root);
        self.overrides.push((root, f));
        self
    }

    pub fn get(&self, root: &RatVec) -> &RootFn {
        self.overrides.iter().find(|(r, _)| r == root).map(|(_, f)| f).unwrap_or(&self.default)
    }

    /// Densities of the contragredient: every argument negated.
    pub fn contragredient(&self) -> Self {
        let refl = |f: &RootFn| match f {
            RootFn::Reflected { inner } => (**inner).clone(),
            other => RootFn::Reflected { inner: Box::new(other.clone()) },
        };
        ScalarRootFns {
            default: refl(&self.default),
            overrides: self.overrides.iter().map(|(r, f)| (r.clone(), refl(f))).collect(),
        }
    }
}

/// Residue of `f` at `p` by the trapezoid rule on a circle of radius `r`.
pub fn numeric_residue(f: &RootFn, p: Complex64, r: f64, n: usize) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        let e = Complex64::from_polar(r, th);
        s += f.eval(p + e) * e;
    }
    s / n as f64
}

/// Re-verifies every declared residue; returns the largest deviation.
pub fn verify_residues(f: &RootFn) -> f64 {
    let poles = f.poles();
    let mut worst = 0.0f64;
    for (i, (p, res)) in poles.iter().enumerate() {
        let gap = poles
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, (q, _))| (p - q).norm())
            .fold(1.0f64, f64::min);
        let num = numeric_residue(f, *p, 0.25 * gap, 256);
        worst = worst.max((num - res).norm());
    }
    worst
}

/// `-n/z`, read as 0 when there is no pole.
fn pole_part(n: f64, z: Complex64) -> Complex64 {
    if n == 0.0 {
        Complex64::new(0.0, 0.0)
    } else {
        -n / z
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64, y: f64) -> Complex64 {
        Complex64::new(x, y)
    }

    #[test]
    fn residues_match_contour() {
        for f in [
            RootFn::Pole { n: 1.5 },
            RootFn::ModelPlancherel { n: 1.0, c: 1.0 },
            RootFn::RModel { n: 0.5, c: 2.0 },
            RootFn::Rational { num: vec![1.0, 2.0], den: vec![0.0, -1.0, 0.0, 1.0] },
            RootFn::Reflected { inner: Box::new(RootFn::RModel { n: 1.0, c: 1.0 }) },
        ] {
            assert!(verify_residues(&f) < 1e-10, "{f:?}");
        }
    }

    #[test]
    fn closed_form_integrals() {
        let z = c(0.3, 0.7);
        let s = c(0.2, -0.1);
        for f in [
            RootFn::Pole { n: 2.0 },
            RootFn::ModelPlancherel { n: 1.0, c: 3.0 },
            RootFn::RModel { n: 0.5, c: 2.0 },
            RootFn::Reflected { inner: Box::new(RootFn::ModelPlancherel { n: 1.0, c: 1.0 }) },
        ] {
            let num = gl_integrate(|u| f.eval(z + s * u) * s, 0.0, 1.0, 40);
            assert!((f.integral(z, s) - num).norm() < 1e-12, "{f:?}");
        }
    }

    #[test]
    fn templates() {
        assert_eq!(RootFn::parse_template("pole(1/2)", 0.0).unwrap(), RootFn::Pole { n: 0.5 });
        assert_eq!(
            RootFn::parse_template("model_plancherel(1)", 2.0).unwrap(),
            RootFn::ModelPlancherel { n: 2.0, c: 1.0 }
        );
        assert!(RootFn::parse_template("bessel(1)", 0.0).is_err());
        assert!(RootFn::parse_template("model_plancherel(-1)", 1.0).is_err());
    }

    #[test]
    fn small_argument_helpers() {
        let w = c(1e-9, 2e-9);
        assert!((ln_1p(w) - w).norm() < 1e-17);
        assert!((exp_m1(w) - w).norm() < 1e-17);
    }
}
