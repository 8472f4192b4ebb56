//! Argument types, list/range syntax and the flat config file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "ctsb", version, about = "Complex-time Segal–Bargmann experiments")]
pub struct Cli {
    /// Flat key = value config file (TOML); flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Directory for the JSON report and CSV grid [default: $CTSB_OUT_DIR, else ./ctsb-out].
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,

    #[arg(long, global = true)]
    pub seed: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Isometry of the heat-flow transform on polynomials over R^d.
    EuclidIsometry(EuclidIsometryArgs),
    /// Closed-form norm ratio against quadrature, μ mass and pointwise bound.
    EuclidRatio(EuclidRatioArgs),
    /// Schrödinger uncertainty defect for Gaussian wave packets.
    Uncertainty(UncertaintyArgs),
    /// Exact (and Monte Carlo) isometry on SU(2) matrix entries.
    Su2Isometry(Su2IsometryArgs),
    /// Heat-kernel convolution against the operator-calculus transform.
    TransformEquiv(TransformEquivArgs),
    /// Mass, semigroup, symmetry and approximate identity of the SU(2) heat kernel.
    HeatkProperties(HeatkArgs),
    /// Independence of the K-averaged heat kernel from (s, u).
    NuInvariance(NuArgs),
    /// Large-s decay of the heat kernel and of L²(ρ_s) norms.
    LargeS(LargeSArgs),
    /// Reparametrisation round trips and (a,b,c) inner-product checks.
    ParamsRoundtrip(ParamsArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::EuclidIsometry(_) => "euclid-isometry",
            Self::EuclidRatio(_) => "euclid-ratio",
            Self::Uncertainty(_) => "uncertainty",
            Self::Su2Isometry(_) => "su2-isometry",
            Self::TransformEquiv(_) => "transform-equiv",
            Self::HeatkProperties(_) => "heatk-properties",
            Self::NuInvariance(_) => "nu-invariance",
            Self::LargeS(_) => "large-s",
            Self::ParamsRoundtrip(_) => "params-roundtrip",
        }
    }
}

#[derive(Debug, Args)]
pub struct EuclidIsometryArgs {
    #[arg(long)]
    pub dims: Option<IntList>,
    #[arg(long)]
    pub max_degree: Option<u32>,
    #[arg(long)]
    pub polys: Option<usize>,
    #[arg(long)]
    pub grid: Option<GridSpec>,
}

#[derive(Debug, Args)]
pub struct EuclidRatioArgs {
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Debug, Args)]
pub struct UncertaintyArgs {
    #[arg(long)]
    pub states: Option<usize>,
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Debug, Args)]
pub struct Su2IsometryArgs {
    /// Representation dimensions, e.g. `2..5` or `1,3`.
    #[arg(long)]
    pub n: Option<IntList>,
    #[arg(long)]
    pub grid: Option<GridSpec>,
    #[arg(long)]
    pub matrices: Option<usize>,
    /// Monte Carlo paths per case; 0 skips the Monte Carlo part.
    #[arg(long)]
    pub mc_paths: Option<usize>,
    #[arg(long)]
    pub mc_steps: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TransformEquivArgs {
    #[arg(long)]
    pub n: Option<IntList>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long)]
    pub max_log_norm: Option<f64>,
}

#[derive(Debug, Args)]
pub struct HeatkArgs {
    #[arg(long)]
    pub mass_order: Option<usize>,
    #[arg(long)]
    pub trend_order: Option<usize>,
}

#[derive(Debug, Args)]
pub struct NuArgs {
    #[arg(long)]
    pub t: Option<f64>,
    /// `s:u` pairs separated by commas, e.g. `1:0,2:0,2:0.8`.
    #[arg(long)]
    pub variants: Option<PairList>,
    #[arg(long)]
    pub control_t: Option<f64>,
    #[arg(long)]
    pub paths: Option<usize>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub antithetic: Option<bool>,
}

#[derive(Debug, Args)]
pub struct LargeSArgs {
    /// `s` values, e.g. `2..8` or `2,4,8`.
    #[arg(long)]
    pub s: Option<FloatList>,
    #[arg(long)]
    pub theta_grid: Option<usize>,
    #[arg(long)]
    pub entries: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ParamsArgs {
    #[arg(long)]
    pub grid: Option<GridSpec>,
    #[arg(long)]
    pub triples: Option<usize>,
}

/// `a..b` (inclusive) or a comma list.
#[derive(Debug, Clone, PartialEq)]
pub struct IntList(pub Vec<usize>);

impl FromStr for IntList {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> anyhow::Result<Self> {
        if let Some((a, b)) = s.split_once("..") {
            let a: usize = a.trim().parse().with_context(|| format!("bad range start in {s:?}"))?;
            let b: usize = b.trim().trim_start_matches('=').parse().with_context(|| format!("bad range end in {s:?}"))?;
            if a > b {
                bail!("empty range {s:?}");
            }
            return Ok(Self((a..=b).collect()));
        }
        let v = s.split(',').map(|x| x.trim().parse::<usize>()).collect::<Result<Vec<_>, _>>()?;
        Ok(Self(v))
    }
}

/// `a..b` (inclusive, unit steps) or a comma list.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatList(pub Vec<f64>);

impl FromStr for FloatList {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> anyhow::Result<Self> {
        if let Some((a, b)) = s.split_once("..") {
            let a: f64 = a.trim().parse().with_context(|| format!("bad range start in {s:?}"))?;
            let b: f64 = b.trim().trim_start_matches('=').parse().with_context(|| format!("bad range end in {s:?}"))?;
            let n = (b - a).floor();
            if n.is_nan() || n < 0.0 {
                bail!("empty range {s:?}");
            }
            return Ok(Self((0..=n as usize).map(|k| a + k as f64).collect()));
        }
        let v = s.split(',').map(|x| x.trim().parse::<f64>()).collect::<Result<Vec<_>, _>>()?;
        Ok(Self(v))
    }
}

/// `s:u` pairs separated by commas.
#[derive(Debug, Clone, PartialEq)]
pub struct PairList(pub Vec<(f64, f64)>);

impl FromStr for PairList {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> anyhow::Result<Self> {
        let v = s
            .split(',')
            .map(|p| {
                let (a, b) = p.split_once(':').ok_or_else(|| anyhow!("expected s:u, got {p:?}"))?;
                Ok((a.trim().parse()?, b.trim().parse()?))
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        Ok(Self(v))
    }
}

/// `default`, or `s,t,u` triples separated by `;`.
#[derive(Debug, Clone, PartialEq)]
pub enum GridSpec {
    Default,
    Points(Vec<(f64, f64, f64)>),
}

impl GridSpec {
    pub fn points(&self) -> Vec<(f64, f64, f64)> {
        match self {
            Self::Default => ctsb::experiments::default_grid(),
            Self::Points(p) => p.clone(),
        }
    }
}

impl FromStr for GridSpec {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> anyhow::Result<Self> {
        if s.trim() == "default" {
            return Ok(Self::Default);
        }
        let pts = s
            .split(';')
            .filter(|p| !p.trim().is_empty())
            .map(|p| {
                let v = p.split(',').map(|x| x.trim().parse::<f64>()).collect::<Result<Vec<_>, _>>()?;
                match v[..] {
                    [s, t, u] => Ok((s, t, u)),
                    _ => bail!("grid point needs s,t,u, got {p:?}"),
                }
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        if pts.is_empty() {
            bail!("grid is empty");
        }
        Ok(Self::Points(pts))
    }
}

/// Flat `key = value` document; nested tables are rejected.
#[derive(Debug, Default)]
pub struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let table: toml::Table = text.parse().context("config is not a valid key = value document")?;
        let mut values = BTreeMap::new();
        for (k, v) in table {
            let s = match v {
                toml::Value::String(s) => s,
                toml::Value::Integer(i) => i.to_string(),
                toml::Value::Float(f) => f.to_string(),
                toml::Value::Boolean(b) => b.to_string(),
                _ => bail!("config key {k:?} must be a string, number or boolean"),
            };
            values.insert(k.replace('-', "_"), s);
        }
        Ok(Self { values })
    }

    /// Flag value if given, else the file value under `key`.
    pub fn pick<T>(&self, flag: Option<T>, key: &str) -> anyhow::Result<Option<T>>
    where
        T: FromStr,
        T::Err: std::fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.values.get(key) {
            None => Ok(None),
            Some(s) => s.parse().map(Some).map_err(|e| anyhow!("config key {key}: {e}")),
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn int_ranges() {
        assert_eq!("2..5".parse::<IntList>().unwrap().0, vec![2, 3, 4, 5]);
        assert_eq!("1, 3".parse::<IntList>().unwrap().0, vec![1, 3]);
        assert!("5..2".parse::<IntList>().is_err());
    }

    #[test]
    fn float_ranges() {
        assert_eq!("2..8".parse::<FloatList>().unwrap().0.len(), 7);
        assert_eq!("0.5,1".parse::<FloatList>().unwrap().0, vec![0.5, 1.0]);
    }

    #[test]
    fn grids_and_pairs() {
        assert_eq!("default".parse::<GridSpec>().unwrap().points().len(), 20);
        assert_eq!("1,2,0; 2,1,0.5".parse::<GridSpec>().unwrap().points(), vec![(1.0, 2.0, 0.0), (2.0, 1.0, 0.5)]);
        assert!("1,2".parse::<GridSpec>().is_err());
        assert_eq!("1:0,2:0.8".parse::<PairList>().unwrap().0, vec![(1.0, 0.0), (2.0, 0.8)]);
    }

    #[test]
    fn file_precedence() {
        let f = FileConfig::parse("seed = 9\nmax-degree = 4\ngrid = \"default\"").unwrap();
        assert_eq!(f.pick::<u64>(None, "seed").unwrap(), Some(9));
        assert_eq!(f.pick(Some(3u64), "seed").unwrap(), Some(3));
        assert_eq!(f.pick::<u32>(None, "max_degree").unwrap(), Some(4));
        assert_eq!(f.pick::<usize>(None, "missing").unwrap(), None);
        assert!(FileConfig::parse("[table]\nx = 1").is_err());
    }
}
