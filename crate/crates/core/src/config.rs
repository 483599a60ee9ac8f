//! JSON run configuration.

use serde::{Deserialize, Serialize};

use crate::contour::TestFunction;
use crate::densities::RootFn;
use crate::error::{Error, Result};
use crate::num::{parse_q, RatMat};
use crate::rootdatum::{build_root_system, RootDatum};

pub const SCHEMA_VERSION: u32 = 1;

pub const SUITES: [&str; 8] =
    ["hull-limit", "trand", "tdisc", "nL-independence", "residue-1d", "lemma-shift", "tempext", "examples"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Densities {
    /// Template for `m'_β`; residues are filled in from `n_β(τ)`.
    #[serde(default = "default_m_template")]
    pub m_template: String,
    #[serde(default = "default_r_template")]
    pub r_template: String,
}

fn default_m_template() -> String {
    "model_plancherel(1)".into()
}

fn default_r_template() -> String {
    "r_model(1)".into()
}

impl Default for Densities {
    fn default() -> Self {
        Densities { m_template: default_m_template(), r_template: default_r_template() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_residue_tol")]
    pub residue: f64,
    #[serde(default = "default_shift_tol")]
    pub shift: f64,
    #[serde(default = "default_tempext_growth")]
    pub tempext_growth: f64,
}

fn default_residue_tol() -> f64 {
    1e-6
}

fn default_shift_tol() -> f64 {
    1e-4
}

fn default_tempext_growth() -> f64 {
    0.5
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { residue: default_residue_tol(), shift: default_shift_tol(), tempext_growth: default_tempext_growth() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub schema_version: u32,
    pub group: String,
    /// Rational entries as strings, e.g. `"-1"` or `"3/2"`.
    #[serde(default)]
    pub gram: Option<Vec<Vec<String>>>,
    #[serde(default)]
    pub suites: Vec<String>,
    #[serde(default)]
    pub densities: Densities,
    #[serde(default = "TestFunction::battery")]
    pub battery: Vec<TestFunction>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default = "default_residue_eps")]
    pub residue_eps: f64,
    #[serde(default = "default_shift_eps")]
    pub shift_eps: Vec<f64>,
    #[serde(default = "default_hull_samples")]
    pub hull_samples: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output: Option<String>,
}

fn default_residue_eps() -> f64 {
    0.1
}

fn default_shift_eps() -> Vec<f64> {
    vec![0.05, 0.1]
}

fn default_hull_samples() -> usize {
    25
}

impl Config {
    pub fn for_group(group: &str) -> Self {
        Config {
            schema_version: SCHEMA_VERSION,
            group: group.to_string(),
            gram: None,
            suites: vec![],
            densities: Densities::default(),
            battery: TestFunction::battery(),
            tolerances: Tolerances::default(),
            residue_eps: default_residue_eps(),
            shift_eps: default_shift_eps(),
            hull_samples: default_hull_samples(),
            seed: 0,
            output: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: Config = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    /// Suite names with `all` expanded, in canonical order.
    pub fn resolved_suites(&self) -> Result<Vec<&'static str>> {
        let mut out = vec![];
        for s in &self.suites {
            if s == "all" {
                return Ok(SUITES.to_vec());
            }
            let known = SUITES.iter().find(|k| **k == s).ok_or_else(|| Error::Config(format!("unknown suite `{s}`")))?;
            if !out.contains(known) {
                out.push(*known);
            }
        }
        out.sort_by_key(|s| SUITES.iter().position(|k| k == s));
        Ok(out)
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Config(format!("schema_version {} not supported", self.schema_version)));
        }
        self.resolved_suites()?;
        self.m_template()?;
        self.r_template()?;
        for phi in &self.battery {
            TestFunction::new(phi.poly.clone(), phi.scale)?;
        }
        let t = &self.tolerances;
        if [t.residue, t.shift, t.tempext_growth].iter().any(|x| x.is_nan() || *x <= 0.0) {
            return Err(Error::Config("tolerances must be positive".into()));
        }
        if self.residue_eps <= 0.0 || self.shift_eps.iter().any(|e| *e <= 0.0) {
            return Err(Error::Config("shifts must be positive".into()));
        }
        self.datum()?;
        Ok(())
    }

    pub fn m_template(&self) -> Result<RootFn> {
        RootFn::parse_template(&self.densities.m_template, 0.0)
    }

    pub fn r_template(&self) -> Result<RootFn> {
        RootFn::parse_template(&self.densities.r_template, 0.0)
    }

    pub fn datum(&self) -> Result<RootDatum> {
        match &self.gram {
            None => build_root_system(&self.group),
            Some(rows) => {
                let mut m = RatMat::zeros(rows.len(), rows.len());
                for (i, row) in rows.iter().enumerate() {
                    if row.len() != rows.len() {
                        return Err(Error::Config("gram must be square".into()));
                    }
                    for (j, x) in row.iter().enumerate() {
                        m[(i, j)] = parse_q(x).ok_or_else(|| Error::Config(format!("bad rational `{x}`")))?;
                    }
                }
                RootDatum::with_gram(&self.group, m)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_config() {
        let c = Config::from_json(r#"{"schema_version": 1, "group": "A2", "suites": ["trand", "tdisc"]}"#).unwrap();
        assert_eq!(c.resolved_suites().unwrap(), vec!["trand", "tdisc"]);
        assert_eq!(c.battery.len(), 5);
    }

    #[test]
    fn rejects_unknown_keys_and_suites() {
        assert!(Config::from_json(r#"{"schema_version": 1, "group": "A2", "colour": 3}"#).is_err());
        assert!(Config::from_json(r#"{"schema_version": 1, "group": "A2", "suites": ["nope"]}"#).is_err());
        assert!(Config::from_json(r#"{"schema_version": 2, "group": "A2"}"#).is_err());
        assert!(Config::from_json(r#"{"schema_version": 1, "group": "Z9"}"#).is_err());
    }

    #[test]
    fn gram_override() {
        let c = Config::from_json(r#"{"schema_version": 1, "group": "A1", "gram": [["4"]]}"#).unwrap();
        assert_eq!(c.datum().unwrap().norm2(&crate::num::RatVec::from_ints(&[1])), crate::num::q(4));
    }
}
