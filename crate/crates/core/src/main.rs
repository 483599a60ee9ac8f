use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::Deserialize;
use serde_json::Value;

use gmbench::asymptotic::{
    c_coefficient_example, eps_m_sign, levi_positive_system, multiplier_alpha, phi_tt_expansion, weyl_denominator,
    Exponent, SigmaModel, USign,
};
use gmbench::config::Config;
use gmbench::densities::RootFn;
use gmbench::levilattice::{
    d_constant, describe_levi, enumerate_levis, minimal_levi, parabolics, theta, weyl_cosets, Levi,
};
use gmbench::num::{parse_q, q_string};
use gmbench::report::digest;
use gmbench::spectral::{build_spectral_triple, class_densities, discrete_constants, n_beta, tau_class};
use gmbench::suites::run_verify;
use gmbench::{Error, RatVec, RootDatum, WeylElement};

const REPORT_DIR_VAR: &str = "GMBENCH_REPORT_DIR";

#[derive(Parser)]
#[command(name = "gmbench", version, about = "Verification workbench for (G,M)-family identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Levis, parabolic counts, Weyl order and coset tables.
    Describe {
        #[arg(long)]
        group: String,
    },
    /// Run verification suites and write a JSON report.
    Verify {
        #[arg(long)]
        group: Option<String>,
        #[arg(long = "suite", num_args = 1..)]
        suites: Vec<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        /// Report path; defaults to `$GMBENCH_REPORT_DIR/report-<group>.json`, else stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one named expression.
    Eval {
        #[arg(long)]
        expr: String,
        #[arg(long, default_value = "{}")]
        args: String,
        #[arg(long)]
        group: Option<String>,
    },
}

fn usage(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Describe { group } => match gmbench::build_root_system(&group) {
            Ok(d) => {
                print!("{}", describe(&d));
                ExitCode::SUCCESS
            }
            Err(e) => usage(e),
        },
        Command::Verify { group, suites, config, out } => verify(group, suites, config, out),
        Command::Eval { expr, args, group } => match eval(&expr, &args, group) {
            Ok(text) => {
                print!("{text}");
                ExitCode::SUCCESS
            }
            Err(e) => usage(e),
        },
    }
}

fn describe(d: &RootDatum) -> String {
    let mut s = format!("group {}\nrank {}\n|W| = {}\n", d.label, d.rank, d.weyl_group().len());
    let gram: Vec<String> =
        (0..d.rank).map(|i| (0..d.rank).map(|j| q_string(&d.gram[(i, j)])).collect::<Vec<_>>().join(" ")).collect();
    s += &format!("gram [{}]\n", gram.join("; "));
    let levis = enumerate_levis(d, None, None);
    s += &format!("levis {}\n", levis.len());
    for l in &levis {
        s += &format!("  {}  parabolics={}\n", describe_levi(d, l), parabolics(d, l).len());
    }
    s += "cosets W_L \\ W\n";
    for l in &levis {
        let reps: Vec<String> = weyl_cosets(d, l, None).iter().map(WeylElement::word_string).collect();
        s += &format!("  {}: {}\n", l.label, reps.join(" "));
    }
    s
}

fn verify(group: Option<String>, suites: Vec<String>, config: Option<PathBuf>, out: Option<PathBuf>) -> ExitCode {
    let mut cfg = match &config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => match Config::from_json(&text) {
                Ok(c) => c,
                Err(e) => return usage(e),
            },
            Err(e) => return usage(format!("{}: {e}", path.display())),
        },
        None => match &group {
            Some(g) => Config::for_group(g),
            None => return usage("either --group or --config is required"),
        },
    };
    if let Some(g) = group {
        if config.is_some() && g != cfg.group {
            cfg.gram = None;
        }
        cfg.group = g;
    }
    if !suites.is_empty() {
        cfg.suites = suites;
    }
    if let Err(e) = cfg.validate() {
        return usage(e);
    }
    let report = match run_verify(&cfg) {
        Ok(r) => r,
        Err(e) => return usage(e),
    };
    for r in &report.records {
        eprintln!("{:?} {}", r.status, r.id);
    }
    eprintln!("passed {} failed {} skipped {}", report.passed, report.failed, report.skipped);
    let dest = out.or_else(|| cfg.output.clone().map(PathBuf::from)).or_else(|| {
        std::env::var_os(REPORT_DIR_VAR).map(|dir| PathBuf::from(dir).join(format!("report-{}.json", report.group)))
    });
    let json = report.to_json();
    match dest {
        Some(path) => {
            if let Some(parent) = path.parent() {
                let _ = std::fs::create_dir_all(parent);
            }
            if let Err(e) = std::fs::write(&path, json) {
                return usage(format!("{}: {e}", path.display()));
            }
        }
        None => print!("{json}"),
    }
    ExitCode::from(report.exit_code() as u8)
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct EvalArgs {
    group: Option<String>,
    levi: Option<String>,
    l1: Option<String>,
    l: Option<String>,
    s: Option<String>,
    upper: Option<String>,
    chamber: Option<usize>,
    lambda: Option<Vec<String>>,
    sigma: Option<Vec<usize>>,
    r: Option<Vec<usize>>,
    beta: Option<Vec<String>>,
    nu: Option<Vec<String>>,
    x: Option<Vec<String>>,
    w: Option<Vec<usize>>,
    y: Option<Vec<f64>>,
    u: Option<u8>,
    template: Option<String>,
    mu_im: Option<Vec<String>>,
}

fn vec_arg(v: &Option<Vec<String>>, name: &str, rank: usize) -> gmbench::Result<RatVec> {
    let v = v.as_ref().ok_or_else(|| Error::IncompleteInput(name.into()))?;
    let xs = v.iter().map(|s| parse_q(s).ok_or_else(|| Error::Config(format!("bad rational `{s}`")))).collect::<gmbench::Result<Vec<_>>>()?;
    if xs.len() != rank {
        return Err(Error::DimensionError { expected: rank, got: xs.len() });
    }
    Ok(RatVec(xs))
}

fn levi_arg(d: &RootDatum, label: &Option<String>, default: &str) -> gmbench::Result<Levi> {
    let want = label.as_deref().unwrap_or(default);
    enumerate_levis(d, None, None)
        .into_iter()
        .find(|l| l.label == want)
        .ok_or_else(|| Error::Config(format!("no Levi labelled `{want}`")))
}

fn word(d: &RootDatum, w: &Option<Vec<usize>>) -> gmbench::Result<WeylElement> {
    let mut e = WeylElement::identity(d.rank);
    for &i in w.as_deref().unwrap_or(&[]) {
        if i >= d.rank {
            return Err(Error::Config(format!("simple reflection index {i} out of range")));
        }
        e = e.compose(&d.simple_reflection(i));
    }
    Ok(e)
}

fn template(a: &EvalArgs) -> gmbench::Result<RootFn> {
    RootFn::parse_template(a.template.as_deref().unwrap_or("model_plancherel(1)"), 0.0)
}

fn complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

fn eval(expr: &str, raw: &str, group: Option<String>) -> gmbench::Result<String> {
    let a: EvalArgs = serde_json::from_str(raw).map_err(|e| Error::Config(e.to_string()))?;
    let label = group.or(a.group.clone()).ok_or_else(|| Error::IncompleteInput("group".into()))?;
    let d = gmbench::build_root_system(&label)?;
    let triple = || -> gmbench::Result<_> {
        let sigma = a.sigma.clone().unwrap_or_default();
        Ok(tau_class(&build_spectral_triple(&d, &sigma, a.r.as_deref().unwrap_or(&[]))?))
    };
    let (value, anchor) = match expr {
        "theta" => {
            let m = levi_arg(&d, &a.levi, "M0")?;
            let ps = parabolics(&d, &m);
            let p = ps.get(a.chamber.unwrap_or(0)).ok_or_else(|| Error::Config("chamber out of range".into()))?;
            let t = theta(&d, p, &vec_arg(&a.lambda, "lambda", d.rank)?)?;
            (format!("{} / {}", q_string(&t.product), t.lattice_volume.render()), "theta")
        }
        "d" => {
            let l1 = levi_arg(&d, &a.l1, "M0")?;
            let l = levi_arg(&d, &a.l, "M0")?;
            let s = levi_arg(&d, &a.s, "G")?;
            (d_constant(&d, &l1, &l, &s)?.render(), "trand")
        }
        "n_beta" => {
            let t = triple()?;
            (q_string(&n_beta(&t, &vec_arg(&a.beta, "beta", d.rank)?)?), "Eq. ntau")
        }
        "nL" | "kL" => {
            let t = triple()?;
            let up = levi_arg(&d, &a.upper, "G")?;
            let c = discrete_constants(&t, &up)?;
            if expr == "nL" {
                (q_string(&c.n_l), "Eq. ntau")
            } else {
                (c.k_l.to_string(), "Eq. ntau")
            }
        }
        "alpha_X" => {
            let m1 = levi_arg(&d, &a.levi, "M0")?;
            let nu = if a.nu.is_some() { vec_arg(&a.nu, "nu", d.rank)? } else { RatVec::zeros(d.rank) };
            let x = if a.x.is_some() { vec_arg(&a.x, "x", d.rank)? } else { d.rho_check() };
            (complex(multiplier_alpha(&d, &m1, &nu, &x)?), "multiplier")
        }
        "eps_M" => {
            let m = levi_arg(&d, &a.levi, "G")?;
            (eps_m_sign(&d, &word(&d, &a.w)?, &levi_positive_system(&d, &m)).to_string(), "specialises")
        }
        "delta_Sigma" => {
            let m = levi_arg(&d, &a.levi, "G")?;
            let y = a.y.clone().ok_or_else(|| Error::IncompleteInput("y".into()))?;
            if y.len() != d.rank {
                return Err(Error::DimensionError { expected: d.rank, got: y.len() });
            }
            let y: Vec<Complex64> = y.into_iter().map(|v| Complex64::new(v, 0.0)).collect();
            (complex(weyl_denominator(&d, &levi_positive_system(&d, &m), &y)), "Weyl character")
        }
        "c_coeff" | "phi_TT" => {
            let m0 = minimal_levi(&d);
            let t = tau_class(&build_spectral_triple(&d, &[], &[])?);
            let fns = class_densities(&t, &template(&a)?)?;
            let lambda = match &a.lambda {
                Some(_) => vec_arg(&a.lambda, "lambda", d.rank)?.to_f64().into_iter().map(|v| Complex64::new(0.0, v)).collect(),
                None => (0..d.rank).map(|i| Complex64::new(0.0, 0.37 + 0.23 * i as f64)).collect(),
            };
            let mu_im = if a.mu_im.is_some() { vec_arg(&a.mu_im, "mu_im", d.rank)? } else { d.rho_check() };
            let model = SigmaModel { tau: t, fns, lambda, mu: Exponent { re: RatVec::zeros(d.rank), im: mu_im } };
            let ps = parabolics(&d, &m0);
            let p = ps.get(a.chamber.unwrap_or(0)).ok_or_else(|| Error::Config("chamber out of range".into()))?;
            if expr == "c_coeff" {
                let l = levi_arg(&d, &a.l, "M0")?;
                let c = c_coefficient_example(&d, &model, &word(&d, &a.w)?, p, USign(a.u.unwrap_or(0)), &l, &m0)?;
                (complex(c), "In particular")
            } else {
                let e = phi_tt_expansion(&d, &model, p)?;
                (serde_json::to_string_pretty(&e).expect("serializes"), "split maximal torus")
            }
        }
        other => return Err(Error::Config(format!("unknown expression `{other}`"))),
    };
    let canonical: BTreeMap<String, Value> = serde_json::from_str(raw).unwrap_or_default();
    let args = serde_json::to_string(&canonical).expect("serializes");
    Ok(format!(
        "{value}\n--\nexpr: {expr}\ngroup: {}\nargs: {args}\nargs_digest: {}\nanchor: {anchor}\n",
        d.label,
        digest(&args)
    ))
}
