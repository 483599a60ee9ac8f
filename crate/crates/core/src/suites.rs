//! Verification suites and the JSON run report.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::asymptotic::{
    assemble_phi_p, c_coefficient_example, eps_m_sign, infinitesimal_orbit, levi_positive_system, multiplier_alpha,
    p_minimality, phi_tt_expansion, weyl_denominator, Exponent, SigmaModel, USign,
};
use crate::config::{Config, SCHEMA_VERSION};
use crate::contour::{lemma_shift_check, residue_identity_1d};
use crate::densities::RootFn;
use crate::error::Result;
use crate::gmfamily::{family_limit, hull_volume, orthogonal_set, split_formula_rel, ExpPolyFamily};
use crate::levilattice::{enumerate_levis, full_levi, minimal_levi, parabolics, trand_check};
use crate::num::{q, qf, q_string, q_to_f64, RatVec};
use crate::report::{CheckRecord, Status, VerificationReport};
use crate::rootdatum::{RootDatum, WeylElement};
use crate::spectral::{
    build_spectral_triple, class_densities, enumerate_triples, nl_independence_check, tau_class, tdisc_check,
    tempext_check,
};

/// Random dominant regular `T = Σ c_i ϖ^_i` with positive rational `c_i`.
pub fn random_dominant(d: &RootDatum, rng: &mut ChaCha8Rng) -> RatVec {
    let mut t = RatVec::zeros(d.rank);
    for w in d.fundamental_coweights() {
        let c = qf(rng.gen_range(1..=24), rng.gen_range(1..=6));
        t = &t + &w.scale(&c);
    }
    t
}

pub fn hull_limit_suite(d: &RootDatum, samples: usize, seed: u64) -> VerificationReport {
    let mut report = VerificationReport::new("hull-limit");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ts: Vec<RatVec> = (0..samples).map(|_| random_dominant(d, &mut rng)).collect();
    for m in enumerate_levis(d, None, None) {
        for (k, t) in ts.iter().enumerate() {
            let id = format!("hull-limit/{}/{}/{k:03}", d.label, m.label);
            let rec = CheckRecord::new(id, "Eq. vol", format!("{} M={} T={t}", d.label, m.label));
            let out = orthogonal_set(d, &m, t).and_then(|set| {
                let f = ExpPolyFamily::exponential(d, &set);
                Ok((family_limit(d, &f)?, hull_volume(d, &set)))
            });
            report.push(match out {
                Ok((lim, vol)) => rec.values(lim.render(), vol.render()).pass_if(lim == vol),
                Err(e) => rec.note(e.to_string()).pass_if(false),
            });
        }
    }
    report
}

pub fn residue_suite(cfg: &Config) -> VerificationReport {
    let mut report = VerificationReport::new("residue-1d");
    for n in [0.5, 1.0, 2.0] {
        let fs = [("m", cfg.m_template().map(|t| with_residue(&t, n))), ("pole", Ok(RootFn::Pole { n }))];
        for (tag, f) in fs {
            match f {
                Ok(f) => {
                    for mut r in residue_identity_1d(&f, &cfg.battery, cfg.residue_eps, n).records {
                        r.id = r.id.replacen("residue-1d/", &format!("residue-1d/{tag}/"), 1);
                        report.push(r);
                    }
                }
                Err(e) => report.push(CheckRecord::new("residue-1d/config", "trand", "").note(e.to_string()).pass_if(false)),
            }
        }
    }
    report
}

fn with_residue(template: &RootFn, n: f64) -> RootFn {
    match template {
        RootFn::Pole { .. } => RootFn::Pole { n },
        RootFn::ModelPlancherel { c, .. } => RootFn::ModelPlancherel { n, c: *c },
        RootFn::RModel { c, .. } => RootFn::RModel { n, c: *c },
        other => other.clone(),
    }
}

fn skip(suite: &str, d: &RootDatum, why: &str) -> VerificationReport {
    let mut r = VerificationReport::new(suite);
    let mut rec = CheckRecord::new(format!("{suite}/{}/skipped", d.label), "Lemma shift", d.label.clone()).note(why);
    rec.status = Status::Skip;
    r.push(rec);
    r
}

/// Every class whose `a_{L1}` has dimension ≤ 2, every `M ⊇ L1` with its first chamber, both density models.
pub fn lemma_shift_suite(d: &RootDatum, cfg: &Config) -> VerificationReport {
    let mut report = VerificationReport::new("lemma-shift");
    if d.rank > 2 {
        return skip("lemma-shift", d, "rank above 2");
    }
    let phi = cfg.battery.iter().find(|p| p.poly.len() > 1).cloned().unwrap_or_else(|| cfg.battery[0].clone());
    for triple in enumerate_triples(d) {
        let t = tau_class(&triple);
        for (model, template) in [("m", cfg.m_template()), ("r", cfg.r_template())] {
            let fns = match template.and_then(|tm| class_densities(&t, &tm)) {
                Ok(f) => f,
                Err(e) => {
                    report.push(CheckRecord::new(format!("lemma-shift/{}/config", d.label), "Lemma shift", "").note(e.to_string()).pass_if(false));
                    continue;
                }
            };
            for m in enumerate_levis(d, Some(&t.levi_l), None) {
                let p = parabolics(d, &m)[0].clone();
                match lemma_shift_check(d, &t.levi_l, &m, &p, &t, &fns, &phi, &cfg.shift_eps, model) {
                    Ok(r) => report.extend(r),
                    Err(e) => report.push(
                        CheckRecord::new(
                            format!("lemma-shift/{}/{model}/M={}", triple.describe(), m.label),
                            "Lemma shift",
                            triple.describe(),
                        )
                        .note(e.to_string())
                        .pass_if(false),
                    ),
                }
            }
        }
    }
    let tol = cfg.tolerances.shift;
    for r in report.records.iter_mut() {
        if let Some(res) = r.residual {
            if r.status != Status::Skip {
                r.status = if res <= tol { Status::Pass } else { Status::Fail };
            }
        }
    }
    report
}

pub fn tempext_suite(d: &RootDatum, cfg: &Config) -> VerificationReport {
    if d.rank > 2 {
        return skip("tempext", d, "rank above 2");
    }
    let mut report = VerificationReport::new("tempext");
    let phi = cfg.battery[0].clone();
    for triple in enumerate_triples(d) {
        let t = tau_class(&triple);
        match cfg.m_template().and_then(|tm| class_densities(&t, &tm)) {
            Ok(fns) => report.extend(tempext_check(&t, &fns, &phi)),
            Err(e) => report.push(CheckRecord::new(format!("tempext/{}", triple.describe()), "Lemma tempext", "").note(e.to_string()).pass_if(false)),
        }
    }
    report
}

fn generic_lambda(d: &RootDatum) -> Vec<Complex64> {
    (0..d.rank).map(|i| Complex64::new(0.0, 0.37 + 0.23 * i as f64)).collect()
}

fn minimal_model(d: &RootDatum, template: &RootFn) -> Result<SigmaModel> {
    let t = tau_class(&build_spectral_triple(d, &[], &[])?);
    let fns = class_densities(&t, template)?;
    let im: Vec<i64> = (1..=d.rank as i64).map(|i| 2 * i - 1).collect();
    Ok(SigmaModel { tau: t, fns, lambda: generic_lambda(d), mu: Exponent { re: RatVec::zeros(d.rank), im: RatVec::from_ints(&im) } })
}

/// The computable example formulas.
pub fn examples_suite(d: &RootDatum, cfg: &Config) -> VerificationReport {
    let mut report = VerificationReport::new("examples");
    let label = &d.label;
    let m0 = minimal_levi(d);
    let g = full_levi(d);

    // multiplier
    let x = d.rho_check().scale(&q(3));
    let a0 = multiplier_alpha(d, &m0, &RatVec::zeros(d.rank), &x);
    report.push(match a0 {
        Ok(v) => CheckRecord::new(format!("examples/{label}/alpha/nu0"), "multiplier", format!("X={x}"))
            .values(format!("{v:.15}"), "1")
            .residual((v - 1.0).norm())
            .pass_if((v - 1.0).norm() < 1e-14),
        Err(e) => CheckRecord::new(format!("examples/{label}/alpha/nu0"), "multiplier", "").note(e.to_string()).pass_if(false),
    });
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let nu = RatVec((0..d.rank).map(|_| qf(rng.gen_range(-40..=40), rng.gen_range(1..=7))).collect());
        let levis = enumerate_levis(d, None, None);
        let m1 = &levis[rng.gen_range(0..levis.len())];
        if let Ok(v) = multiplier_alpha(d, m1, &nu, &x) {
            worst = worst.max(v.norm());
        }
    }
    report.push(
        CheckRecord::new(format!("examples/{label}/alpha/bounded"), "multiplier", "100 samples")
            .values(format!("max={worst:.15}"), "<= 1")
            .pass_if(worst <= 1.0 + 1e-12),
    );

    // signs and denominators
    let sigma = levi_positive_system(d, &g);
    let y: Vec<Complex64> = (0..d.rank).map(|i| Complex64::new(0.31 - 0.2 * i as f64, 0.1)).collect();
    let base = weyl_denominator(d, &sigma, &y);
    let mut worst = 0.0f64;
    for w in d.weyl_group() {
        let wy: Vec<Complex64> =
            (0..d.rank).map(|i| (0..d.rank).map(|j| y[j] * q_to_f64(&w.matrix[(i, j)])).sum()).collect();
        let r = (weyl_denominator(d, &sigma, &wy) - base * f64::from(eps_m_sign(d, w, &sigma))).norm();
        worst = worst.max(r);
    }
    report.push(
        CheckRecord::new(format!("examples/{label}/denominator/antisymmetry"), "Weyl character", "all w")
            .residual(worst)
            .pass_if(worst < 1e-10),
    );
    let sign_id = eps_m_sign(d, &WeylElement::identity(d.rank), &sigma);
    report.push(
        CheckRecord::new(format!("examples/{label}/eps/identity"), "specialises", "w=1")
            .values(sign_id.to_string(), "1")
            .pass_if(sign_id == 1),
    );

    // P-minimality
    for (k, p) in parabolics(d, &m0).iter().enumerate() {
        let mu = Exponent::real(RatVec((0..d.rank).map(|i| qf(2 * i as i64 + 1, 7)).collect()));
        let orbit = infinitesimal_orbit(d, &mu);
        let n = p_minimality(d, &orbit, p).iter().filter(|(_, ok)| *ok).count();
        report.push(
            CheckRecord::new(format!("examples/{label}/minimal/P{k}"), "minimal in its", format!("mu={}", mu.render()))
                .values(format!("minimal={n}"), ">= 1")
                .pass_if(n >= 1),
        );
    }

    // coefficient special case and the torus expansion
    let template = cfg.m_template().unwrap_or(RootFn::ModelPlancherel { n: 0.0, c: 1.0 });
    match minimal_model(d, &template) {
        Ok(model) => {
            let check = model.fns.contragredient();
            for p in parabolics(d, &m0) {
                let id = format!("examples/{label}/c_coeff/P{}", p.index);
                let rec = CheckRecord::new(id, "In particular", format!("w=1 L=M P={}", p.label()));
                let out = c_coefficient_example(d, &model, &WeylElement::identity(d.rank), &p, USign(1), &m0, &m0)
                    .and_then(|c| Ok((c, split_formula_rel(d, &check, &m0, &g, &p, &model.lambda)? * USign(1).value())));
                report.push(match out {
                    Ok((c, direct)) => rec.values(format!("{c:.12}"), format!("{direct:.12}")).pass_if(c == direct),
                    Err(e) => rec.note(e.to_string()).pass_if(false),
                });
            }
            let p = parabolics(d, &m0)[0].clone();
            let rec = CheckRecord::new(format!("examples/{label}/phi_TT"), "split maximal torus", "P0");
            report.push(match phi_tt_expansion(d, &model, &p) {
                Ok(e) => {
                    let expect = enumerate_levis(d, None, None).len() * d.weyl_group().len();
                    let unit = e.terms.iter().filter(|t| t.levi_s == m0.label).all(|t| t.coefficient_re == 1.0 && t.coefficient_im == 0.0);
                    rec.values(format!("terms={}", e.terms.len()), format!("{expect}")).pass_if(e.terms.len() == expect && unit)
                }
                Err(e) => rec.note(e.to_string()).pass_if(false),
            });
            // no conjugate of L1 in M
            let levis = enumerate_levis(d, None, None);
            if let Some(l1) = levis.iter().find(|l| l.dim() + 1 == d.rank && d.rank > 0) {
                let rec = CheckRecord::new(format!("examples/{label}/assemble/empty"), "unless a conjugate of", format!("L1={} M=M0", l1.label));
                let t1 = enumerate_triples(d).into_iter().map(|t| tau_class(&t)).find(|t| t.levi_l == *l1);
                report.push(match t1 {
                    Some(t) => {
                        let fns = class_densities(&t, &template).unwrap_or_else(|_| model.fns.clone());
                        let m1 = SigmaModel { tau: t, fns, lambda: generic_lambda(d), mu: model.mu.clone() };
                        let p0 = parabolics(d, &m0)[0].clone();
                        match assemble_phi_p(d, &BTreeMap::new(), l1, &g, &m1, &m0, &p0) {
                            Ok(v) => rec.values(format!("{v}"), "0").pass_if(v == Complex64::new(0.0, 0.0)),
                            Err(e) => rec.note(e.to_string()).pass_if(false),
                        }
                    }
                    None => rec.note("no class on L1").pass_if(true),
                });
            }
        }
        Err(e) => report.push(CheckRecord::new(format!("examples/{label}/model"), "specialises", "").note(e.to_string()).pass_if(false)),
    }
    report
}

/// The full report document.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub group: String,
    pub gram: Vec<Vec<String>>,
    pub suites: Vec<String>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub records: Vec<crate::report::CheckRecord>,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed > 0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

pub fn run_suite(name: &str, d: &RootDatum, cfg: &Config) -> VerificationReport {
    match name {
        "hull-limit" => hull_limit_suite(d, cfg.hull_samples, cfg.seed),
        "trand" => trand_check(d),
        "tdisc" => tdisc_check(d),
        "nL-independence" => nl_independence_check(d),
        "residue-1d" => residue_suite(cfg),
        "lemma-shift" => lemma_shift_suite(d, cfg),
        "tempext" => tempext_suite(d, cfg),
        "examples" => examples_suite(d, cfg),
        other => unreachable!("suite `{other}` passed validation"),
    }
}

pub fn run_verify(cfg: &Config) -> Result<RunReport> {
    cfg.validate()?;
    let d = cfg.datum()?;
    let suites = cfg.resolved_suites()?;
    let mut all = VerificationReport::new("all");
    for s in &suites {
        all.extend(run_suite(s, &d, cfg));
    }
    all.sort();
    let count = |st: Status| all.records.iter().filter(|r| r.status == st).count();
    let gram = (0..d.rank).map(|i| (0..d.rank).map(|j| q_string(&d.gram[(i, j)])).collect()).collect();
    Ok(RunReport {
        schema_version: SCHEMA_VERSION,
        group: d.label.clone(),
        gram,
        suites: suites.iter().map(|s| s.to_string()).collect(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skip),
        records: all.records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_suite_list() {
        let r = run_verify(&Config::for_group("A2")).unwrap();
        assert!(r.records.is_empty());
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn trand_a2_passes() {
        let mut c = Config::for_group("A2");
        c.suites = vec!["trand".into()];
        let r = run_verify(&c).unwrap();
        assert!(r.failed == 0 && r.passed > 0);
    }

    #[test]
    fn examples_a2_pass() {
        let d = crate::rootdatum::build_root_system("A2").unwrap();
        let r = examples_suite(&d, &Config::for_group("A2"));
        assert!(r.all_pass(), "{r:#?}");
    }

    #[test]
    fn battery_has_five() {
        use crate::contour::TestFunction;
        assert_eq!(TestFunction::battery().len(), 5);
    }
}
