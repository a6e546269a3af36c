use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cnqual::polynomials::PolyKind;
use cnqual::Property;

#[derive(Debug, Parser)]
#[command(name = "cnqual", version, about = "CFL bounds for positivity and max-norm contractivity of Crank-Nicolson")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-mesh bounds as CSV `property,m,omega,x,s`.
    Table(TableArgs),
    /// Compare the bounds with brute-force thresholds of the assembled matrix.
    Verify(VerifyArgs),
    /// Run the theta-method and monitor sign and max-norm.
    Simulate(SimulateArgs),
    /// Sample one polynomial family on an interval as CSV `x,value`.
    Poly(PolyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum PropertyArg {
    Positivity,
    Contractivity,
}

impl From<PropertyArg> for Property {
    fn from(p: PropertyArg) -> Self {
        match p {
            PropertyArg::Positivity => Property::Positivity,
            PropertyArg::Contractivity => Property::Contractivity,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    U,
    P,
    C,
}

impl From<KindArg> for PolyKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::U => PolyKind::U,
            KindArg::P => PolyKind::P,
            KindArg::C => PolyKind::C,
        }
    }
}

/// `a..b` (inclusive), `a,b,c`, or a single value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeshList(pub Vec<usize>);

impl FromStr for MeshList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| -> Result<usize, String> {
            let m: usize = t.trim().parse().map_err(|_| format!("not a mesh size: {t:?}"))?;
            if m == 0 {
                return Err("mesh sizes must be >= 1".into());
            }
            Ok(m)
        };
        let ms = if let Some((a, b)) = s.split_once("..") {
            let b = b.strip_prefix('=').unwrap_or(b);
            let (a, b) = (parse(a)?, parse(b)?);
            if a > b {
                return Err(format!("empty range {s:?}"));
            }
            (a..=b).collect()
        } else {
            s.split(',').map(parse).collect::<Result<Vec<_>, _>>()?
        };
        Ok(MeshList(ms))
    }
}

/// `a:b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval(pub f64, pub f64);

impl FromStr for Interval {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s.split_once(':').ok_or_else(|| format!("expected a:b, got {s:?}"))?;
        let num = |t: &str| -> Result<f64, String> {
            let v: f64 = t.trim().parse().map_err(|_| format!("not a number: {t:?}"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("not finite: {t:?}"))
            }
        };
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(format!("range end below start: {s:?}"));
        }
        Ok(Interval(a, b))
    }
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub property: PropertyArg,
    /// Mesh sizes: `1..7`, `3,5,7` or `4`.
    #[arg(long)]
    pub m: MeshList,
    /// Append the `m = inf` row.
    #[arg(long)]
    pub limit: bool,
    /// Output file, `-` for standard output.
    #[arg(long, default_value = "-")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub property: PropertyArg,
    #[arg(long)]
    pub m_max: usize,
    /// Largest accepted |closed form - brute force|.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long, default_value = "-")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long, default_value_t = 0.5)]
    pub theta: f64,
    #[arg(long)]
    pub tau: f64,
    #[arg(long, default_value_t = 1)]
    pub steps: usize,
    /// Initial data 1 on `x >= a`, 0 elsewhere.
    #[arg(long, conflicts_with = "initial", required_unless_present = "initial")]
    pub step_profile: Option<f64>,
    /// Initial data as `m` comma-separated values.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub initial: Option<Vec<f64>>,
    /// Diffusion coefficient.
    #[arg(long, default_value_t = 1.0)]
    pub d: f64,
    #[arg(long, default_value = "-")]
    pub output: PathBuf,
}

#[derive(Debug, Args)]
pub struct PolyArgs {
    #[arg(long, value_enum, ignore_case = true)]
    pub kind: KindArg,
    #[arg(long)]
    pub n: usize,
    /// Sampling interval `a:b`.
    #[arg(long, allow_hyphen_values = true)]
    pub range: Interval,
    /// Number of equispaced points; 1 only for a degenerate range.
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[arg(long, default_value = "-")]
    pub output: PathBuf,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mesh_lists() {
        assert_eq!("1..7".parse::<MeshList>().unwrap().0, (1..=7).collect::<Vec<_>>());
        assert_eq!("1..=3".parse::<MeshList>().unwrap().0, vec![1, 2, 3]);
        assert_eq!("3,5,7,9".parse::<MeshList>().unwrap().0, vec![3, 5, 7, 9]);
        assert_eq!("4".parse::<MeshList>().unwrap().0, vec![4]);
        assert!("0..3".parse::<MeshList>().is_err());
        assert!("5..3".parse::<MeshList>().is_err());
        assert!("a,b".parse::<MeshList>().is_err());
    }

    #[test]
    fn intervals() {
        assert_eq!("-1:1".parse::<Interval>().unwrap(), Interval(-1.0, 1.0));
        assert_eq!("0.8:2.0".parse::<Interval>().unwrap(), Interval(0.8, 2.0));
        assert!("2:1".parse::<Interval>().is_err());
        assert!("1".parse::<Interval>().is_err());
        assert!("nan:1".parse::<Interval>().is_err());
    }
}
