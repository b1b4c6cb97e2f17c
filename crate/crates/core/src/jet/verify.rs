use super::{jet_seed_polynomial, DiffOp, JetError, JetPoint, JetSpace, MultiPoly, SpinJet};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::Arc;

/// Where random sample points may fall.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SampleDomain {
    /// `R^5` away from `r = 0` and from the half-lines `r = +-x0`.
    Kepler,
    /// `R^8` away from the origin and from the zeros of the two 4-block norms.
    Oscillator,
}

impl SampleDomain {
    pub fn n_vars(self) -> usize {
        match self {
            SampleDomain::Kepler => 5,
            SampleDomain::Oscillator => 8,
        }
    }

    pub fn accepts(self, x: &[f64]) -> bool {
        let norm = |s: &[f64]| s.iter().map(|v| v * v).sum::<f64>().sqrt();
        match self {
            SampleDomain::Kepler => {
                let r = norm(x);
                r > 0.3 && (r + x[0]).abs() > 0.1 && (r - x[0]).abs() > 0.1
            }
            SampleDomain::Oscillator => norm(x) > 0.3 && norm(&x[..4]) > 0.1 && norm(&x[4..]) > 0.1,
        }
    }

    /// Uniform in `[-2, 2]^n`, rejecting the singular neighbourhoods.
    pub fn sample(self, rng: &mut impl Rng) -> Vec<f64> {
        loop {
            let x: Vec<f64> = (0..self.n_vars()).map(|_| rng.gen_range(-2.0..2.0)).collect();
            if self.accepts(&x) {
                return x;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialSettings {
    pub trials: usize,
    pub seed: u64,
    pub degree: usize,
    /// Degree of the random polynomial test functions.
    pub test_degree: usize,
}

impl Default for TrialSettings {
    fn default() -> Self {
        Self { trials: 20, seed: 0, degree: 6, test_degree: 3 }
    }
}

/// Outcome of checking that an operator expression annihilates random germs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityReport {
    pub trials: usize,
    /// Largest `|sum of terms| / max |term|` over trials and spin components.
    pub max_residual: f64,
    pub max_absolute: f64,
    /// Largest term magnitude seen (the normalization of the worst trial).
    pub scale: f64,
    pub resampled: usize,
}

/// Random spin-vector of polynomial germs at a point.
fn random_state(space: &Arc<JetSpace>, point: &[f64], dim: usize, deg: usize, rng: &mut impl Rng) -> Result<SpinJet, JetError> {
    (0..dim)
        .map(|_| {
            let p = MultiPoly::dense(space.n_vars(), deg, || rng.gen_range(-1.0..1.0));
            jet_seed_polynomial(space, &p, point)
        })
        .collect()
}

/// Runs `trials` successful samples, calling `per_trial` on each point and state.
/// Points where a coefficient is singular are redrawn.
fn run_trials(
    domain: SampleDomain,
    spin_dim: usize,
    settings: &TrialSettings,
    max_order: usize,
    mut per_trial: impl FnMut(&JetPoint, &SpinJet) -> Result<(), JetError>,
) -> Result<usize, JetError> {
    if max_order > settings.degree {
        return Err(JetError::DegreeTooLow { order: max_order, degree: settings.degree });
    }
    let space = JetSpace::new(domain.n_vars(), settings.degree);
    let mut rng = ChaCha8Rng::seed_from_u64(settings.seed);
    let mut done = 0;
    let mut resampled = 0;
    while done < settings.trials {
        let x = domain.sample(&mut rng);
        let ctx = JetPoint::new(&space, &x)?;
        let state = random_state(&space, &x, spin_dim, settings.test_degree, &mut rng)?;
        match per_trial(&ctx, &state) {
            Ok(()) => done += 1,
            Err(JetError::SingularPoint { .. }) if resampled < 10 * settings.trials.max(1) => resampled += 1,
            Err(e) => return Err(e),
        }
    }
    Ok(resampled)
}

/// Checks `expr == 0` on random germs; each top-level summand is evaluated
/// separately and the residual is normalized by the largest summand.
pub fn identity_residual(
    expr: &DiffOp,
    domain: SampleDomain,
    spin_dim: usize,
    settings: &TrialSettings,
) -> Result<IdentityReport, JetError> {
    let terms = expr.terms();
    let mut report = IdentityReport { trials: settings.trials, max_residual: 0.0, max_absolute: 0.0, scale: 0.0, resampled: 0 };
    report.resampled = run_trials(domain, spin_dim, settings, expr.order(), |ctx, state| {
        let mut sum = vec![Complex64::new(0.0, 0.0); spin_dim];
        let mut scale: f64 = 0.0;
        for t in &terms {
            for (s, j) in sum.iter_mut().zip(t.apply(ctx, state)?) {
                *s += j.value();
                scale = scale.max(j.value().norm());
            }
        }
        let abs = sum.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let rel = if scale > 0.0 { abs / scale } else { abs };
        if rel >= report.max_residual {
            report.scale = scale;
        }
        report.max_residual = report.max_residual.max(rel);
        report.max_absolute = report.max_absolute.max(abs);
        Ok(())
    })?;
    Ok(report)
}

/// `[op1, op2] - expected` on random germs.
pub fn commutator_residual(
    op1: &DiffOp,
    op2: &DiffOp,
    expected: Option<&DiffOp>,
    domain: SampleDomain,
    spin_dim: usize,
    settings: &TrialSettings,
) -> Result<IdentityReport, JetError> {
    let mut expr = DiffOp::commutator(op1, op2);
    if let Some(e) = expected {
        expr = expr - e.clone();
    }
    identity_residual(&expr, domain, spin_dim, settings)
}

/// One named term on the right-hand side of an operator relation.
#[derive(Debug, Clone)]
pub struct RelationTerm {
    pub label: String,
    pub op: DiffOp,
    pub printed: Complex64,
}

impl RelationTerm {
    pub fn new(label: impl Into<String>, op: DiffOp, printed: f64) -> Self {
        Self { label: label.into(), op, printed: Complex64::new(printed, 0.0) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FittedCoefficient {
    pub label: String,
    pub printed: [f64; 2],
    pub fitted: [f64; 2],
}

/// `lhs = sum c_k term_k`: residual with the printed coefficients and with the
/// least-squares coefficients over the same terms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationFit {
    pub trials: usize,
    pub printed_residual: f64,
    pub fitted_residual: f64,
    pub coefficients: Vec<FittedCoefficient>,
}

pub fn fit_relation(
    lhs: &DiffOp,
    rhs: &[RelationTerm],
    domain: SampleDomain,
    spin_dim: usize,
    settings: &TrialSettings,
) -> Result<RelationFit, JetError> {
    let order = rhs.iter().map(|t| t.op.order()).chain([lhs.order()]).max().unwrap_or(0);
    let mut rows: Vec<(Complex64, Vec<Complex64>)> = Vec::new();
    let lhs_terms = lhs.terms();
    run_trials(domain, spin_dim, settings, order, |ctx, state| {
        let mut lhs_val = vec![Complex64::new(0.0, 0.0); spin_dim];
        for t in &lhs_terms {
            for (s, j) in lhs_val.iter_mut().zip(t.apply(ctx, state)?) {
                *s += j.value();
            }
        }
        let mut cols = vec![vec![Complex64::new(0.0, 0.0); rhs.len()]; spin_dim];
        for (k, t) in rhs.iter().enumerate() {
            for (comp, j) in t.op.apply(ctx, state)?.iter().enumerate() {
                cols[comp][k] = j.value();
            }
        }
        for (v, c) in lhs_val.into_iter().zip(cols) {
            rows.push((v, c));
        }
        Ok(())
    })?;

    let residual = |coef: &[Complex64]| {
        rows.iter()
            .map(|(v, c)| {
                let pred: Complex64 = c.iter().zip(coef).map(|(a, b)| a * b).sum();
                let scale = c.iter().zip(coef).map(|(a, b)| (a * b).norm()).fold(v.norm(), f64::max);
                if scale > 0.0 {
                    (v - pred).norm() / scale
                } else {
                    0.0
                }
            })
            .fold(0.0, f64::max)
    };
    let printed: Vec<Complex64> = rhs.iter().map(|t| t.printed).collect();
    let printed_residual = residual(&printed);

    // column-normalized least squares
    let (m, n) = (rows.len(), rhs.len());
    let mut norms = vec![0.0f64; n];
    for (_, c) in &rows {
        for k in 0..n {
            norms[k] = norms[k].max(c[k].norm());
        }
    }
    let mat = DMatrix::from_fn(m, n, |i, k| if norms[k] > 0.0 { rows[i].1[k] / norms[k] } else { Complex64::new(0.0, 0.0) });
    let rhs_vec = DVector::from_fn(m, |i, _| rows[i].0);
    let fitted: Vec<Complex64> = if n == 0 {
        Vec::new()
    } else {
        let svd = mat.svd(true, true);
        let sol = svd.solve(&rhs_vec, 1e-12).map_err(|_| JetError::FitFailed)?;
        (0..n).map(|k| if norms[k] > 0.0 { sol[k] / norms[k] } else { Complex64::new(0.0, 0.0) }).collect()
    };
    let fitted_residual = residual(&fitted);

    Ok(RelationFit {
        trials: settings.trials,
        printed_residual,
        fitted_residual,
        coefficients: rhs
            .iter()
            .zip(&fitted)
            .map(|(t, f)| FittedCoefficient { label: t.label.clone(), printed: [t.printed.re, t.printed.im], fitted: [f.re, f.im] })
            .collect(),
    })
}
