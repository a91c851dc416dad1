//! Run configuration shared by all subcommands.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, ValueEnum};
use qwlab_core::{Amplitude2, CoinField, CoinMatrix, DefectAngle, C64};
use serde::Deserialize;

/// Errors in the configuration itself; the binary exits with code 2 on these.
#[derive(Debug)]
pub struct ConfigError(pub anyhow::Error);

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for ConfigError {}

pub fn config_error(e: anyhow::Error) -> anyhow::Error {
    anyhow::Error::new(ConfigError(e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    OneDefect,
    Wojcik,
    Hadamard,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Coin field of the walk.
    #[arg(long, value_enum, default_value = "one-defect", global = true)]
    pub model: Model,
    /// Defect angle in radians, in (0, pi/2).
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_6, global = true, allow_hyphen_values = true)]
    pub xi: f64,
    /// Phase parameter of the Wojcik model, in (0, 1).
    #[arg(long, default_value_t = 0.25, global = true, allow_hyphen_values = true)]
    pub phi: f64,
    /// Left amplitude of the initial qubit as "re,im".
    #[arg(long, default_value = "1,0", global = true, allow_hyphen_values = true)]
    pub alpha: String,
    /// Right amplitude of the initial qubit as "re,im".
    #[arg(long, default_value = "0,0", global = true, allow_hyphen_values = true)]
    pub beta: String,
    /// Number of time steps N.
    #[arg(long, default_value_t = 1000, global = true)]
    pub steps: usize,
    /// Half-width of the simulation window (sites -W..=W).
    #[arg(long, global = true)]
    pub window: Option<usize>,
    /// Largest |x| reported by profile tables.
    #[arg(long, default_value_t = 10, global = true)]
    pub xmax: i64,
    #[arg(long, value_enum, default_value = "csv", global = true)]
    pub format: Format,
    /// Write the table here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON coin file for --model custom.
    #[arg(long, global = true)]
    pub coins: Option<PathBuf>,
}

/// Validated configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub model: Model,
    pub field: CoinField,
    pub xi: Option<f64>,
    pub qubit: Amplitude2,
    pub steps: usize,
    pub window: Option<usize>,
    pub xmax: i64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn load(common: &Common) -> anyhow::Result<Self> {
        Self::build(common).map_err(config_error)
    }

    fn build(common: &Common) -> anyhow::Result<Self> {
        let (field, xi) = match common.model {
            Model::OneDefect => (CoinField::one_defect(common.xi)?, Some(common.xi)),
            Model::Hadamard => (CoinField::Hadamard, Some(std::f64::consts::FRAC_PI_4)),
            Model::Wojcik => (CoinField::wojcik(common.phi)?, None),
            Model::Custom => {
                let path = common.coins.as_ref().context("--model custom needs --coins FILE")?;
                (CoinField::Custom(load_coin_table(path)?.into_table()?), None)
            }
        };
        if common.steps == 0 {
            bail!("--steps must be at least 1");
        }
        if common.xmax < 0 {
            bail!("--xmax must be nonnegative");
        }
        let qubit = Amplitude2::new(parse_complex(&common.alpha, "alpha")?, parse_complex(&common.beta, "beta")?)
            .normalized()
            .context("initial qubit must be nonzero")?;
        Ok(Self {
            model: common.model,
            field,
            xi,
            qubit,
            steps: common.steps,
            window: common.window,
            xmax: common.xmax,
            format: common.format,
            out: common.out.clone(),
        })
    }

    /// The defect angle for commands that only make sense for the one-defect
    /// model; the Hadamard model is the defect at pi/4.
    pub fn angle(&self) -> anyhow::Result<DefectAngle> {
        match self.model {
            Model::OneDefect => Ok(DefectAngle::new(self.xi.expect("set for one-defect"))?),
            Model::Hadamard => Ok(DefectAngle::hadamard()),
            _ => Err(config_error(anyhow::anyhow!(
                "this command needs --model one-defect or --model hadamard"
            ))),
        }
    }
}

pub fn parse_complex(text: &str, what: &str) -> anyhow::Result<C64> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let parse = |s: &str| {
        s.parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .with_context(|| format!("--{what}: expected \"re,im\", got {text:?}"))
    };
    match parts.as_slice() {
        [re] => Ok(C64::new(parse(re)?, 0.0)),
        [re, im] => Ok(C64::new(parse(re)?, parse(im)?)),
        _ => bail!("--{what}: expected \"re,im\", got {text:?}"),
    }
}

/// Coin file layout: entries are `[re, im]` pairs of the rows `[a, b]` and
/// `[c, d]`; sites without an entry use `fallback` (Hadamard if absent).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoinFile {
    #[serde(default)]
    pub fallback: Option<CoinEntry>,
    #[serde(default)]
    pub sites: Vec<SiteCoin>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoinEntry {
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub c: [f64; 2],
    pub d: [f64; 2],
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SiteCoin {
    pub x: i64,
    pub a: [f64; 2],
    pub b: [f64; 2],
    pub c: [f64; 2],
    pub d: [f64; 2],
}

impl CoinEntry {
    fn matrix(&self) -> qwlab_core::Result<CoinMatrix> {
        let z = |p: [f64; 2]| C64::new(p[0], p[1]);
        CoinMatrix::new(z(self.a), z(self.b), z(self.c), z(self.d))
    }
}

impl CoinFile {
    pub fn into_table(self) -> anyhow::Result<qwlab_core::walk::CoinTable> {
        let fallback = match self.fallback {
            Some(e) => e.matrix().context("fallback coin")?,
            None => CoinMatrix::hadamard(),
        };
        let mut sites = BTreeMap::new();
        for s in self.sites {
            let entry = CoinEntry { a: s.a, b: s.b, c: s.c, d: s.d };
            let m = entry.matrix().with_context(|| format!("coin at x = {}", s.x))?;
            if sites.insert(s.x, m).is_some() {
                bail!("duplicate coin for x = {}", s.x);
            }
        }
        Ok(qwlab_core::walk::CoinTable::new(sites, fallback))
    }
}

pub fn load_coin_table(path: &Path) -> anyhow::Result<CoinFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}
