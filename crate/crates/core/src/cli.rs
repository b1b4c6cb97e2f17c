//! Command-line front end. Every command builds a [`Report`]; the exit code is 0
//! on success, 1 when a required check fails and 2 for configuration errors.

use crate::catalog::{
    kepler5d_spectrum, kepler5d_structure_energy, osc8d_spectrum, osc8d_structure_energy, ycm_spectrum_duality,
    ycm_spectrum_parabolic, CatalogError, Kepler5DParams, Oscillator8DParams, YCMParams,
};
use crate::hurwitz::{hurwitz_image, map_parameters, CoulombSide, DualParams, OscillatorSide, Point8, X0Convention};
use crate::jet::TrialSettings;
use crate::ode::GridSettings;
use crate::report::{
    duality_findings, euler_findings, kepler_algebra_findings, kepler_operator_findings, oscillator_algebra_findings,
    oscillator_operator_findings, oscillator_oracle_findings, ycm_operator_findings, Finding, Report,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid value for {field}: {reason}")]
    Invalid { field: String, reason: String },
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

fn invalid(field: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { field: field.into(), reason: reason.into() }
}

#[derive(Debug, Parser)]
#[command(name = "quadalg", version, about = "Quadratic algebras, spectra and Hurwitz duality of superintegrable systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
pub enum Command {
    /// Closed-form and algebraic spectra over a range of p.
    Spectrum(SpectrumArgs),
    /// Algebra and operator-identity suites for one system.
    Verify(VerifyArgs),
    /// Euler identity, duality triple and oscillator oracle comparisons.
    Crosscheck(CrosscheckArgs),
    /// Map parameters between the oscillator and the monopole side.
    Dualize(DualizeArgs),
    /// Hurwitz image of a single point.
    HurwitzCheck(HurwitzArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum System {
    Kepler5d,
    Osc8d,
    Ycm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Table,
    Json,
}

/// Physical parameters shared by all systems; defaults `hbar = c0 = omega = 1`, others 0.
#[derive(Debug, Clone, Args, Serialize)]
pub struct Physical {
    #[arg(long, default_value_t = 1.0)]
    pub c0: f64,
    #[arg(long, default_value_t = 0.0)]
    pub c1: f64,
    #[arg(long, default_value_t = 0.0)]
    pub c2: f64,
    #[arg(long, default_value_t = 1.0)]
    pub hbar: f64,
    /// Eigenvalue of the four-dimensional rotation Casimir (Kepler).
    #[arg(long, default_value_t = 0.0)]
    pub l: f64,
    #[arg(long, default_value_t = 1.0)]
    pub omega: f64,
    #[arg(long, default_value_t = 0.0)]
    pub lambda1: f64,
    #[arg(long, default_value_t = 0.0)]
    pub lambda2: f64,
    /// Eigenvalue of J^2 (oscillator, bare generators: -l(l + 2)).
    #[arg(long, default_value_t = 0.0)]
    pub j: f64,
    /// Eigenvalue of K^2.
    #[arg(long, default_value_t = 0.0)]
    pub k: f64,
    /// Monopole isospin.
    #[arg(long = "T", default_value_t = 0.0)]
    pub isospin: f64,
    /// Label J of the parabolic channel (defaults to T).
    #[arg(long = "J")]
    pub j_label: Option<f64>,
    /// Label L of the parabolic channel.
    #[arg(long = "L", default_value_t = 0.0)]
    pub l_label: f64,
}

impl Physical {
    pub fn kepler(&self) -> Result<Kepler5DParams, ConfigError> {
        Ok(Kepler5DParams::new(self.c0, self.c1, self.c2, self.hbar, self.l)?)
    }

    pub fn oscillator(&self) -> Result<Oscillator8DParams, ConfigError> {
        Ok(Oscillator8DParams::new(self.omega, self.lambda1, self.lambda2, self.hbar, self.j, self.k)?)
    }

    pub fn ycm(&self) -> Result<YCMParams, ConfigError> {
        let j = self.j_label.unwrap_or(self.isospin);
        Ok(YCMParams::new(self.kepler()?, self.isospin, j, self.l_label)?)
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct SpectrumArgs {
    #[arg(value_enum)]
    pub system: System,
    #[command(flatten)]
    pub physical: Physical,
    #[arg(long, default_value_t = 0)]
    pub p_min: usize,
    #[arg(long, default_value_t = 3)]
    pub p_max: usize,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub system: System,
    #[command(flatten)]
    pub physical: Physical,
    /// Largest representation index for the algebra suite.
    #[arg(long, default_value_t = 3)]
    pub p: usize,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Jet truncation degree.
    #[arg(long, default_value_t = 6)]
    pub degree: usize,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CrosscheckTarget {
    Euler,
    Ycm,
    Osc8d,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct CrosscheckArgs {
    #[arg(value_enum)]
    pub target: CrosscheckTarget,
    #[command(flatten)]
    pub physical: Physical,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also evaluate the Euler identity with x0 exactly as written.
    #[arg(long)]
    pub literal_x0: bool,
    /// Parabolic channel as `s1=..,s2=..`; sets the couplings so that the
    /// channel has these exponents at J = L = 0.
    #[arg(long)]
    pub channel: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub n1: usize,
    #[arg(long, default_value_t = 0)]
    pub n2: usize,
    /// Radial levels per oscillator block.
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DualTarget {
    /// Oscillator (E, omega, lambda_i) to monopole (c0, epsilon, c_i).
    Coulomb,
    /// Monopole to oscillator.
    Oscillator,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct DualizeArgs {
    #[arg(long, value_enum)]
    pub to: DualTarget,
    #[arg(long)]
    pub energy: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[command(flatten)]
    pub physical: Physical,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(allow_negative_numbers = true)]
pub struct HurwitzArgs {
    /// Eight comma-separated coordinates u0..u7.
    #[arg(long, value_delimiter = ',', required = true)]
    pub u: Vec<f64>,
    #[arg(long)]
    pub literal_x0: bool,
    #[command(flatten)]
    #[serde(skip)]
    pub output: Output,
}

fn settings(a: &VerifyArgs) -> Result<TrialSettings, ConfigError> {
    if a.trials == 0 {
        return Err(invalid("trials", "must be at least 1"));
    }
    if a.degree < 6 {
        return Err(invalid("degree", "must be at least 6"));
    }
    Ok(TrialSettings { trials: a.trials, seed: a.seed, degree: a.degree, ..Default::default() })
}

fn spectrum(a: &SpectrumArgs) -> Result<Report, ConfigError> {
    let mut report = Report::new("spectrum", a);
    let range = a.p_min..=a.p_max;
    // rows are the printed closed forms; the structure-function energies ride along as findings
    let structure = |p: usize, printed: f64, derived: f64| {
        Finding::finding(
            format!("spectrum/p={p:03}/structure-function"),
            "printed closed form equals the energy of the physical representation",
            (printed - derived).abs(),
            1e-12,
        )
        .with("printed", printed)
        .with("structure", derived)
    };
    match a.system {
        System::Kepler5d => {
            let k = a.physical.kepler()?;
            for p in range {
                let rec = kepler5d_spectrum(&k, p)?;
                report.extend([structure(p, rec.energy, kepler5d_structure_energy(&k, p)?)]);
                report.spectrum.push(rec);
            }
        }
        System::Osc8d => {
            let o = a.physical.oscillator()?;
            for p in range {
                let rec = osc8d_spectrum(&o, p);
                report.extend([structure(p, rec.energy, osc8d_structure_energy(&o, p)?)]);
                report.spectrum.push(rec);
            }
        }
        System::Ycm => {
            let y = a.physical.ycm()?;
            for p in range {
                // the parabolic form depends on n1 + n2 only
                report.spectrum.push(ycm_spectrum_duality(&y, p));
                report.spectrum.push(ycm_spectrum_parabolic(&y, p, 0));
            }
        }
    }
    Ok(report)
}

fn verify(a: &VerifyArgs) -> Result<Report, ConfigError> {
    let s = settings(a)?;
    let mut report = Report::new("verify", a);
    match a.system {
        System::Kepler5d => {
            let k = a.physical.kepler()?;
            report.extend(kepler_algebra_findings(&k, a.p));
            report.extend(kepler_operator_findings(&k, &s));
        }
        System::Osc8d => {
            let o = a.physical.oscillator()?;
            report.extend(oscillator_algebra_findings(&o, a.p));
            report.extend(oscillator_operator_findings(&o, &s));
        }
        System::Ycm => {
            let y = a.physical.ycm()?;
            report.extend(ycm_operator_findings(&y, &s));
        }
    }
    Ok(report)
}

/// `s1=..,s2=..` into `(s1, s2)`.
fn parse_channel(spec: &str) -> Result<(f64, f64), ConfigError> {
    let mut s = [None, None];
    for part in spec.split(',') {
        let (key, value) = part.split_once('=').ok_or_else(|| invalid("channel", format!("expected key=value, got {part:?}")))?;
        let v: f64 = value.trim().parse().map_err(|_| invalid("channel", format!("not a number: {value:?}")))?;
        match key.trim() {
            "s1" => s[0] = Some(v),
            "s2" => s[1] = Some(v),
            other => return Err(invalid("channel", format!("unknown key {other:?}"))),
        }
    }
    match s {
        [Some(a), Some(b)] => Ok((a, b)),
        _ => Err(invalid("channel", "needs both s1 and s2")),
    }
}

fn crosscheck(a: &CrosscheckArgs) -> Result<Report, ConfigError> {
    let mut report = Report::new("crosscheck", a);
    match a.target {
        CrosscheckTarget::Euler => report.extend(euler_findings(a.samples, a.seed, a.literal_x0)),
        CrosscheckTarget::Ycm => {
            let mut phys = a.physical.clone();
            if let Some(ch) = &a.channel {
                // at J = L = 0, s_i = -8 c_i
                let (s1, s2) = parse_channel(ch)?;
                phys.c1 = -s1 / 8.0;
                phys.c2 = -s2 / 8.0;
                phys.isospin = 0.0;
                phys.j_label = Some(0.0);
                phys.l_label = 0.0;
                if s1 != 0.0 || s2 != 0.0 {
                    return Err(invalid("channel", "only s1 = s2 = 0 is reachable with non-negative couplings at J = L = 0"));
                }
            }
            let y = phys.ycm()?;
            report.extend(duality_findings(&y, a.n1, a.n2, &GridSettings::default()));
        }
        CrosscheckTarget::Osc8d => {
            let o = a.physical.oscillator()?;
            report.extend(oscillator_oracle_findings(&o, a.levels, &GridSettings::default()));
        }
    }
    Ok(report)
}

fn dualize(a: &DualizeArgs) -> Result<Report, ConfigError> {
    let p = &a.physical;
    let input = match a.to {
        DualTarget::Coulomb => DualParams::Oscillator(OscillatorSide {
            energy: a.energy.ok_or_else(|| invalid("energy", "required with --to coulomb"))?,
            omega: p.omega,
            lambda1: p.lambda1,
            lambda2: p.lambda2,
        }),
        DualTarget::Oscillator => DualParams::Coulomb(CoulombSide {
            c0: p.c0,
            epsilon: a.epsilon.ok_or_else(|| invalid("epsilon", "required with --to oscillator"))?,
            c1: p.c1,
            c2: p.c2,
        }),
    };
    let mapped = map_parameters(input).map_err(|e| invalid("parameters", e.to_string()))?;
    let back = map_parameters(mapped).map_err(|e| invalid("parameters", e.to_string()))?;
    let mut report = Report::new("dualize", a);
    let gap = match (input, back) {
        (DualParams::Oscillator(x), DualParams::Oscillator(y)) => {
            [x.energy - y.energy, x.omega - y.omega, x.lambda1 - y.lambda1, x.lambda2 - y.lambda2]
        }
        (DualParams::Coulomb(x), DualParams::Coulomb(y)) => [x.c0 - y.c0, x.epsilon - y.epsilon, x.c1 - y.c1, x.c2 - y.c2],
        _ => [f64::NAN; 4],
    };
    let mut f = Finding::required(
        "dualize/round-trip",
        "mapping there and back returns the input",
        gap.iter().map(|g| g.abs()).fold(0.0, f64::max),
        1e-14,
    );
    match mapped {
        DualParams::Coulomb(c) => {
            f = f.with("c0", c.c0).with("epsilon", c.epsilon).with("c1", c.c1).with("c2", c.c2);
        }
        DualParams::Oscillator(o) => {
            f = f.with("energy", o.energy).with("omega", o.omega).with("lambda1", o.lambda1).with("lambda2", o.lambda2);
        }
    }
    report.extend([f]);
    Ok(report)
}

fn hurwitz_check(a: &HurwitzArgs) -> Result<Report, ConfigError> {
    let u: [f64; 8] = a.u.as_slice().try_into().map_err(|_| invalid("u", "needs exactly 8 values"))?;
    let p = Point8 { u };
    let conv = if a.literal_x0 { X0Convention::Literal } else { X0Convention::Adopted };
    let img = hurwitz_image(&p, conv);
    let residual = crate::hurwitz::euler_identity_residual(&p, conv);
    let claim = "sum x_i^2 = (sum u_j^2)^2";
    let mut f = if a.literal_x0 {
        Finding::finding("hurwitz/point/literal-x0", claim, residual, 1e-12)
    } else {
        Finding::required("hurwitz/point", claim, residual, 1e-12)
    };
    for (i, x) in img.x.iter().enumerate() {
        f = f.with(format!("x{i}"), *x);
    }
    match img.angles {
        Some(ang) => f = f.with("alpha", ang.alpha).with("beta", ang.beta).with("gamma", ang.gamma),
        None => f = f.note("fiber chart singular: u0^2 + u1^2 or u2^2 + u3^2 vanishes"),
    }
    let mut report = Report::new("hurwitz-check", a);
    report.extend([f]);
    Ok(report)
}

fn output(cmd: &Command) -> &Output {
    match cmd {
        Command::Spectrum(a) => &a.output,
        Command::Verify(a) => &a.output,
        Command::Crosscheck(a) => &a.output,
        Command::Dualize(a) => &a.output,
        Command::HurwitzCheck(a) => &a.output,
    }
}

/// Runs a parsed command and returns its report.
pub fn execute(cmd: &Command) -> Result<Report, ConfigError> {
    let report = match cmd {
        Command::Spectrum(a) => spectrum(a)?,
        Command::Verify(a) => verify(a)?,
        Command::Crosscheck(a) => crosscheck(a)?,
        Command::Dualize(a) => dualize(a)?,
        Command::HurwitzCheck(a) => hurwitz_check(a)?,
    };
    Ok(report.finish())
}

/// Renders `report` in the requested format and writes it out.
pub fn emit(report: &Report, out: &Output) -> Result<(), ConfigError> {
    let text = match out.format {
        Format::Json => report.to_json(),
        Format::Table => report.to_table(),
    };
    match &out.out {
        Some(path) => std::fs::write(path, text).map_err(|source| ConfigError::Io { path: path.clone(), source }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = execute(&cli.command).and_then(|r| emit(&r, output(&cli.command)).map(|_| r));
    match result {
        Ok(r) => r.exit_code(),
        Err(e) => {
            eprintln!("config error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Command {
        Cli::try_parse_from(std::iter::once("quadalg").chain(args.iter().copied())).unwrap().command
    }

    #[test]
    fn kepler_spectrum_rows() {
        let r = execute(&parse(&["spectrum", "kepler5d", "--c0", "1", "--l", "0", "--p-max", "3"])).unwrap();
        let printed: Vec<f64> = r.spectrum.iter().map(|s| s.energy).collect();
        let want = [-1.0 / 9.0, -1.0 / 16.0, -1.0 / 25.0, -1.0 / 36.0];
        assert_eq!(printed.len(), 4);
        for (a, b) in printed.iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn oscillator_spectrum_rows() {
        let r = execute(&parse(&["spectrum", "osc8d", "--omega", "1", "--p-max", "2"])).unwrap();
        let printed: Vec<f64> = r.spectrum.iter().map(|s| s.energy).collect();
        assert_eq!(printed, vec![4.0, 6.0, 8.0]);
    }

    #[test]
    fn empty_range() {
        let r = execute(&parse(&["spectrum", "osc8d", "--p-min", "3", "--p-max", "2"])).unwrap();
        assert!(r.spectrum.is_empty());
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn config_errors_exit_two() {
        assert_eq!(run(["quadalg", "verify", "hydrogen"]), 2);
        assert_eq!(run(["quadalg", "spectrum", "kepler5d", "--c0", "-1"]), 2);
        assert_eq!(run(["quadalg", "crosscheck", "ycm", "--channel", "s1=oops,s2=0"]), 2);
    }

    #[test]
    fn channel_parsing() {
        assert_eq!(parse_channel("s1=0,s2=0").unwrap(), (0.0, 0.0));
        assert!(parse_channel("s1=0").is_err());
        assert!(parse_channel("s3=0,s2=0").is_err());
    }

    #[test]
    fn dualize_printed_values() {
        let r = execute(&parse(&["dualize", "--to", "coulomb", "--energy", "4"])).unwrap();
        assert_eq!(r.findings[0].values["c0"], 1.0);
        let r = execute(&parse(&["dualize", "--to", "oscillator", "--epsilon", "-0.125"])).unwrap();
        assert_eq!(r.findings[0].values["omega"], 1.0);
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn hurwitz_point() {
        let r = execute(&parse(&["hurwitz-check", "--u", "1,0,0,0,1,0,0,0"])).unwrap();
        let v = &r.findings[0].values;
        assert_eq!((v["x0"], v["x1"]), (0.0, 2.0));
        assert!(r.findings[0].note.is_some());
    }
}
