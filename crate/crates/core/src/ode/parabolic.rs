use super::grid::{GridSettings, SturmLiouville};
use super::{kummer, richardson, EigenResult, OdeError};
use serde::Serialize;

/// One separated parabolic equation
/// `(d/dx(x d/dx) - s/(4x) + alpha/4 + (beta/4) x) f = sign * (v/2) f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParabolicChannelSpec {
    pub s: f64,
    pub alpha: f64,
    pub beta: f64,
    pub sign: f64,
}

impl ParabolicChannelSpec {
    fn validate(&self) -> Result<(), OdeError> {
        if !(self.beta < 0.0) {
            return Err(OdeError::InvalidInput { field: "beta", value: self.beta, reason: "bound states need beta < 0" });
        }
        if self.s < 0.0 {
            return Err(OdeError::UnboundedBelow { value: -self.s / 4.0, critical: 0.0 });
        }
        if self.sign != 1.0 && self.sign != -1.0 {
            return Err(OdeError::InvalidInput { field: "sign", value: self.sign, reason: "must be +1 or -1" });
        }
        Ok(())
    }

    /// Indicial exponent at the origin: `sigma^2 = s/4`.
    pub fn sigma(&self) -> f64 {
        self.s.sqrt() / 2.0
    }

    fn cutoff(&self, levels: usize, scale: f64) -> f64 {
        let k = (-self.beta).sqrt();
        scale * (40.0 + 8.0 * levels as f64 + 4.0 * self.sigma()) / k
    }

    /// With `f = x^sigma g`: `-(x^{2 sigma + 1} g')' - (alpha/4 + beta x/4) x^{2 sigma} g = -lambda x^{2 sigma} g`,
    /// where `lambda` is the eigenvalue of the left-hand operator.
    fn problem(&self, cutoff: f64) -> SturmLiouville<'static> {
        let two_sigma = 2.0 * self.sigma();
        let (alpha, beta) = (self.alpha, self.beta);
        SturmLiouville {
            p: Box::new(move |x: f64| x.powf(two_sigma + 1.0)),
            q: Box::new(move |x: f64| -(alpha / 4.0 + beta * x / 4.0) * x.powf(two_sigma)),
            w: Box::new(move |x: f64| x.powf(two_sigma)),
            cutoff,
        }
    }
}

/// The lowest `n_levels` states of the channel, reported as the `v` each one
/// implies (`v = 2 * sign * lambda`). State `n` is the one with `n` nodes.
pub fn parabolic_eigensolve(
    spec: &ParabolicChannelSpec,
    n_levels: usize,
    grid: &GridSettings,
) -> Result<Vec<EigenResult>, OdeError> {
    spec.validate()?;
    let sl = spec.problem(spec.cutoff(n_levels, grid.cutoff_scale));
    let raw = sl.solve(n_levels, grid)?;
    let f = -2.0 * spec.sign;
    Ok(raw
        .into_iter()
        .map(|r| EigenResult {
            eigenvalue: f * r.eigenvalue,
            extrapolated: f * r.extrapolated,
            levels: r.levels.iter().map(|v| f * v).collect(),
            ..r
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairSolution {
    pub beta: f64,
    pub v: f64,
    pub epsilon: f64,
    pub epsilon_error: f64,
    /// The closed form with `n1 + n2 + (s1 + s2 + 1)` in the denominator.
    pub closed_form: f64,
    /// Per-grid energies, coarsest first.
    pub levels: Vec<f64>,
    pub bracket: (f64, f64),
}

fn kth_lambda(spec: &ParabolicChannelSpec, n: usize, cutoff: f64, cells: usize) -> Result<f64, OdeError> {
    let t = spec.problem(cutoff).discretize(cells);
    Ok(-t.kth_eigenvalue(n)?)
}

/// Finds `beta < 0` such that state `n1` of channel 1 (right-hand side `+v/2`) and
/// state `n2` of channel 2 (right-hand side `-v/2`) share the same separation constant.
///
/// Bisection runs independently on each grid of the refinement ladder and the
/// resulting energies `epsilon = hbar^2 beta / 2` are Richardson-extrapolated.
pub fn solve_parabolic_pair(
    s1: f64,
    s2: f64,
    alpha: f64,
    n1: usize,
    n2: usize,
    hbar: f64,
    grid: &GridSettings,
) -> Result<PairSolution, OdeError> {
    if !(alpha > 0.0) {
        return Err(OdeError::InvalidInput { field: "alpha", value: alpha, reason: "must be positive" });
    }
    for (field, s) in [("s1", s1), ("s2", s2)] {
        if s < 0.0 {
            let _ = field;
            return Err(OdeError::UnboundedBelow { value: -s / 4.0, critical: 0.0 });
        }
    }
    let mut lo = -(alpha / 2.0).powi(2);
    let mut hi = -(alpha / (2.0 * (n1 + n2) as f64 + 2.0 * (s1 + s2) + 20.0)).powi(2);
    let levels_needed = n1.max(n2) + 1;
    // v + v' as a function of beta on a given grid: both channels share beta, and the
    // cutoff follows beta so that the localisation rule holds throughout.
    let mismatch = |beta: f64, cells: usize, scale: f64| -> Result<f64, OdeError> {
        let c1 = ParabolicChannelSpec { s: s1, alpha, beta, sign: 1.0 };
        let c2 = ParabolicChannelSpec { s: s2, alpha, beta, sign: -1.0 };
        let l1 = kth_lambda(&c1, n1, c1.cutoff(levels_needed, scale), cells)?;
        let l2 = kth_lambda(&c2, n2, c2.cutoff(levels_needed, scale), cells)?;
        Ok(2.0 * l1 + 2.0 * l2)
    };
    let base = grid.base_cells;
    let mut widen = 0;
    loop {
        let flo = mismatch(lo, base, grid.cutoff_scale)?;
        let fhi = mismatch(hi, base, grid.cutoff_scale)?;
        if (flo < 0.0) != (fhi < 0.0) {
            break;
        }
        widen += 1;
        if widen > 6 {
            return Err(OdeError::NoRoot { lo, hi });
        }
        lo *= 4.0;
        hi /= 4.0;
    }
    let bracket = (lo, hi);
    let mut cells = base;
    let mut betas: Vec<f64> = Vec::new();
    let mut vs: Vec<f64> = Vec::new();
    loop {
        let (mut a, mut b) = bracket;
        let mut fa = mismatch(a, cells, grid.cutoff_scale)?;
        for _ in 0..80 {
            let mid = 0.5 * (a + b);
            if mid == a || mid == b {
                break;
            }
            let fm = mismatch(mid, cells, grid.cutoff_scale)?;
            if (fm < 0.0) == (fa < 0.0) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        let beta = 0.5 * (a + b);
        let c1 = ParabolicChannelSpec { s: s1, alpha, beta, sign: 1.0 };
        let l1 = kth_lambda(&c1, n1, c1.cutoff(levels_needed, grid.cutoff_scale), cells)?;
        betas.push(beta);
        vs.push(2.0 * l1);
        if betas.len() >= 3 {
            let eps: Vec<f64> = betas.iter().map(|b| hbar * hbar * b / 2.0).collect();
            let (e, errs) = richardson(&eps);
            let err = *errs.last().unwrap();
            if err <= grid.target || cells * 2 > grid.max_cells {
                if err > grid.target {
                    return Err(OdeError::GridTooCoarse { error: err, target: grid.target, cells });
                }
                let (beta_x, _) = richardson(&betas);
                let (v_x, _) = richardson(&vs);
                let denom = (n1 + n2) as f64 + (s1 + s2 + 1.0);
                return Ok(PairSolution {
                    beta: beta_x,
                    v: v_x,
                    epsilon: e,
                    epsilon_error: err,
                    closed_form: -(alpha * hbar * hbar / 2.0).powi(2) / (2.0 * hbar * hbar * denom * denom),
                    levels: eps,
                    bracket,
                });
            }
        }
        cells *= 2;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExponentConvention {
    /// `x^{s/2} e^{-x/2} F(-n, s + 1, x)`
    Printed,
    /// `x^{sqrt(s)/2} e^{-x/2} F(-n, sqrt(s) + 1, x)`
    Indicial,
}

/// Relative residual of a closed-form candidate under the plain (unweighted)
/// discretization of `d/dx(x d/dx) - s/(4x) - x/4` in the scaled variable
/// `x = mu sqrt(-beta)`: `|T f - <f,Tf>/<f,f> f| / |f|`.
pub fn closed_form_residual(s: f64, n: u32, convention: ExponentConvention, cells: usize, cutoff: f64) -> Result<f64, OdeError> {
    let (e, b) = match convention {
        ExponentConvention::Printed => (s / 2.0, s + 1.0),
        ExponentConvention::Indicial => (s.sqrt() / 2.0, s.sqrt() + 1.0),
    };
    let h = cutoff / cells as f64;
    let xs: Vec<f64> = (0..cells).map(|i| (i as f64 + 0.5) * h).collect();
    let f: Vec<f64> = xs
        .iter()
        .map(|&x| Ok(x.powf(e) * (-x / 2.0).exp() * kummer(n, b, x)?))
        .collect::<Result<_, OdeError>>()?;
    let mut tf = vec![0.0; cells];
    for i in 0..cells {
        let right = (i as f64 + 1.0) * h;
        let left = i as f64 * h;
        let up = if i + 1 < cells { f[i + 1] } else { 0.0 };
        let down = if i > 0 { f[i - 1] } else { 0.0 };
        tf[i] = (right * (up - f[i]) - left * (f[i] - down)) / (h * h) - (s / (4.0 * xs[i]) + xs[i] / 4.0) * f[i];
    }
    let ff: f64 = f.iter().map(|v| v * v).sum();
    let ftf: f64 = f.iter().zip(&tf).map(|(a, b)| a * b).sum();
    let lambda = ftf / ff;
    let res: f64 = tf.iter().zip(&f).map(|(t, v)| (t - lambda * v).powi(2)).sum();
    Ok((res / ff).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ode::EigenMethod;

    #[test]
    fn s_zero_ladder_is_arithmetic() {
        let spec = ParabolicChannelSpec { s: 0.0, alpha: 0.0, beta: -1.0, sign: 1.0 };
        let r = parabolic_eigensolve(&spec, 3, &GridSettings::default()).unwrap();
        // v = 2 lambda with lambda = -(n + 1/2) for alpha = 0, beta = -1
        for (n, e) in r.iter().enumerate() {
            assert!((e.extrapolated + 2.0 * (n as f64 + 0.5)).abs() < 1e-7, "{}", e.extrapolated);
        }
    }

    #[test]
    fn invalid_beta() {
        let spec = ParabolicChannelSpec { s: 0.0, alpha: 1.0, beta: 0.5, sign: 1.0 };
        assert!(parabolic_eigensolve(&spec, 1, &GridSettings::default()).is_err());
    }

    #[test]
    fn pair_solver_s_zero() {
        let sol = solve_parabolic_pair(0.0, 0.0, 2.0, 0, 0, 1.0, &GridSettings { method: EigenMethod::Sturm, ..Default::default() })
            .unwrap();
        assert!((sol.epsilon + 0.5).abs() < 1e-6, "{}", sol.epsilon);
        assert!((sol.closed_form + 0.5).abs() < 1e-15);
    }
}
