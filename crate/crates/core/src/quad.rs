//! Deterministic quadrature: adaptive Gauss–Kronrod (7/15) for complex
//! integrands and fixed Gauss–Legendre rules.

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7)
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = fc * WGK[7];
    let mut g = fc * WG[3];
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    (k * h, ((k - g) * h).norm())
}

const MAX_INTERVALS: usize = 4000;

/// Globally adaptive integral of `f` over `[a, b]`: the interval with the largest
/// error estimate is bisected until the summed estimate drops below `tol`.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Result<Complex64> {
    let (v, e) = gk15(&f, a, b);
    let mut parts = vec![(a, b, v, e)];
    let mut total = v;
    let mut err = e;
    while err > tol {
        if !err.is_finite() || parts.len() >= MAX_INTERVALS {
            return Err(Error::NoConvergence(format!("adaptive quadrature on [{a}, {b}], error {err:e}")));
        }
        let (k, _) = parts
            .iter()
            .enumerate()
            .fold((0, -1.0), |best, (i, p)| if p.3 > best.1 { (i, p.3) } else { best });
        let (lo, hi, v, e) = parts.swap_remove(k);
        let mid = 0.5 * (lo + hi);
        if hi - lo < 1e-12 * (b - a).abs().max(1.0) {
            // cannot refine further; keep the estimate
            parts.push((lo, hi, v, 0.0));
            err -= e;
            continue;
        }
        let (v1, e1) = gk15(&f, lo, mid);
        let (v2, e2) = gk15(&f, mid, hi);
        total += v1 + v2 - v;
        err += e1 + e2 - e;
        parts.push((lo, mid, v1, e1));
        parts.push((mid, hi, v2, e2));
    }
    // re-sum in interval order so the result does not depend on bookkeeping order
    parts.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok(parts.iter().map(|p| p.2).sum())
}

/// Real-valued convenience wrapper.
pub fn integrate_real<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<f64> {
    integrate(|x| Complex64::new(f(x), 0.0), a, b, tol).map(|z| z.re)
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            dp = n as f64 * (x * p - p0) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        xs[i] = x;
        xs[n - 1 - i] = -x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        ws[i] = w;
        ws[n - 1 - i] = w;
    }
    (xs, ws)
}

/// Fixed-order Gauss–Legendre integral over `[a, b]`.
pub fn gl_integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, n: usize) -> Complex64 {
    let (xs, ws) = gauss_legendre(n);
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    xs.iter().zip(&ws).map(|(x, w)| f(c + h * x) * *w).sum::<Complex64>() * h
}

/// Neville extrapolation to `t = 0` of samples `(t_k, v_k)`.
pub fn extrapolate_to_zero(ts: &[f64], vs: &[Complex64]) -> Complex64 {
    let n = ts.len();
    let mut p: Vec<Complex64> = vs.to_vec();
    for m in 1..n {
        for i in 0..n - m {
            let (ti, tm) = (ts[i], ts[i + m]);
            p[i] = (p[i + 1] * ti - p[i] * tm) / (ti - tm);
        }
    }
    p[0]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gk_gaussian() {
        let v = integrate_real(|x| (-x * x).exp(), -8.0, 8.0, 1e-13).unwrap();
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn gl_polynomials_exact() {
        let (xs, ws) = gauss_legendre(5);
        let s: f64 = xs.iter().zip(&ws).map(|(x, w)| w * x.powi(8)).sum();
        assert!((s - 2.0 / 9.0).abs() < 1e-14);
        assert!((ws.iter().sum::<f64>() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn neville_linear_exact() {
        let ts = [0.1, 0.05, 0.025];
        let vs: Vec<Complex64> = ts.iter().map(|t| Complex64::new(3.0 + 2.0 * t - t * t, 0.0)).collect();
        assert!((extrapolate_to_zero(&ts, &vs).re - 3.0).abs() < 1e-12);
    }
}
