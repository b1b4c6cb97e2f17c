use super::grid::{GridSettings, SturmLiouville};
use super::{EigenResult, OdeError};
use serde::Serialize;

/// Radial part of one 4-variable block of the singular oscillator:
/// `-(hbar^2/2)(f'' + (3/r) f') + (angular hbar^2/(2 r^2) + lambda/r^2 + omega^2 r^2/2) f = e f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialOscillatorSpec {
    pub dim: usize,
    pub angular: f64,
    pub lambda: f64,
    pub omega: f64,
    pub hbar: f64,
}

impl RadialOscillatorSpec {
    pub fn block(angular: f64, lambda: f64, omega: f64, hbar: f64) -> Self {
        Self { dim: 4, angular, lambda, omega, hbar }
    }

    /// Dimensionless inverse-square coefficient `angular + 2 lambda / hbar^2`.
    pub fn effective_coefficient(&self) -> f64 {
        self.angular + 2.0 * self.lambda / (self.hbar * self.hbar)
    }

    /// Regular indicial exponent `sigma(sigma + dim - 2) = effective_coefficient`.
    pub fn sigma(&self) -> Result<f64, OdeError> {
        let d = self.dim as f64 - 2.0;
        let disc = d * d + 4.0 * self.effective_coefficient();
        if disc < 0.0 {
            return Err(OdeError::UnboundedBelow { value: self.effective_coefficient(), critical: -d * d / 4.0 });
        }
        Ok((-d + disc.sqrt()) / 2.0)
    }
}

/// State `n` of the radial block. With `f = r^sigma g` the problem becomes
/// `-(r^{2 sigma + dim - 1} g')' + (omega^2 r^2 / hbar^2) r^{2 sigma + dim - 1} g = (2e/hbar^2) r^{2 sigma + dim - 1} g`.
pub fn radial_oscillator_eigensolve(spec: &RadialOscillatorSpec, n: usize, grid: &GridSettings) -> Result<EigenResult, OdeError> {
    for (field, v) in [("omega", spec.omega), ("hbar", spec.hbar)] {
        if !(v > 0.0) {
            return Err(OdeError::InvalidInput { field, value: v, reason: "must be positive" });
        }
    }
    let sigma = spec.sigma()?;
    let expo = 2.0 * sigma + spec.dim as f64 - 1.0;
    let length = (spec.hbar / spec.omega).sqrt();
    let cutoff = grid.cutoff_scale * length * ((4.0 * n as f64 + 2.0 * sigma + spec.dim as f64).sqrt() + 8.0);
    let k2 = (spec.omega / spec.hbar).powi(2);
    let sl = SturmLiouville {
        p: Box::new(move |r: f64| r.powf(expo)),
        q: Box::new(move |r: f64| k2 * r * r * r.powf(expo)),
        w: Box::new(move |r: f64| r.powf(expo)),
        cutoff,
    };
    let half_h2 = spec.hbar * spec.hbar / 2.0;
    let mut r = sl.solve(n + 1, grid)?.swap_remove(n);
    r.eigenvalue *= half_h2;
    r.extrapolated *= half_h2;
    r.error_estimate *= half_h2;
    r.levels.iter_mut().for_each(|v| *v *= half_h2);
    r.error_history.iter_mut().for_each(|v| *v *= half_h2);
    Ok(r)
}

/// Radial Coulomb problem in `dim` dimensions:
/// `-(hbar^2/2)(f'' + ((dim-1)/r) f') + (angular hbar^2/(2 r^2) - c0/r) f = e f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialCoulombSpec {
    pub dim: usize,
    pub angular: f64,
    pub c0: f64,
    pub hbar: f64,
}

pub fn radial_coulomb_eigensolve(spec: &RadialCoulombSpec, n: usize, grid: &GridSettings) -> Result<EigenResult, OdeError> {
    if !(spec.c0 > 0.0) {
        return Err(OdeError::InvalidInput { field: "c0", value: spec.c0, reason: "must be positive" });
    }
    let d = spec.dim as f64 - 2.0;
    let disc = d * d + 4.0 * spec.angular;
    if disc < 0.0 {
        return Err(OdeError::UnboundedBelow { value: spec.angular, critical: -d * d / 4.0 });
    }
    let sigma = (-d + disc.sqrt()) / 2.0;
    let expo = 2.0 * sigma + spec.dim as f64 - 1.0;
    let h2 = spec.hbar * spec.hbar;
    // hydrogenic decay rate of the requested state sets the cutoff
    let nu = n as f64 + sigma + (spec.dim as f64 - 1.0) / 2.0;
    let kappa = spec.c0 / (h2 * nu);
    let cutoff = grid.cutoff_scale * (40.0 + 6.0 * n as f64) / kappa;
    let a = 2.0 * spec.c0 / h2;
    let sl = SturmLiouville {
        p: Box::new(move |r: f64| r.powf(expo)),
        q: Box::new(move |r: f64| -a * r.powf(expo - 1.0)),
        w: Box::new(move |r: f64| r.powf(expo)),
        cutoff,
    };
    let mut r = sl.solve(n + 1, grid)?.swap_remove(n);
    let half = h2 / 2.0;
    r.eigenvalue *= half;
    r.extrapolated *= half;
    r.error_estimate *= half;
    r.levels.iter_mut().for_each(|v| *v *= half);
    r.error_history.iter_mut().for_each(|v| *v *= half);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isotropic_ladder() {
        let spec = RadialOscillatorSpec::block(0.0, 0.0, 1.0, 1.0);
        for (n, want) in [(0, 2.0), (1, 4.0), (2, 6.0)] {
            let r = radial_oscillator_eigensolve(&spec, n, &GridSettings::default()).unwrap();
            assert!((r.extrapolated - want).abs() < 1e-6, "{n}: {}", r.extrapolated);
        }
    }

    #[test]
    fn unbounded_rejected() {
        let spec = RadialOscillatorSpec::block(-2.0, 0.0, 1.0, 1.0);
        assert!(matches!(radial_oscillator_eigensolve(&spec, 0, &GridSettings::default()), Err(OdeError::UnboundedBelow { .. })));
    }

    #[test]
    fn five_dimensional_hydrogen_ground_state() {
        let spec = RadialCoulombSpec { dim: 5, angular: 0.0, c0: 1.0, hbar: 1.0 };
        let r = radial_coulomb_eigensolve(&spec, 0, &GridSettings::default()).unwrap();
        assert!((r.extrapolated + 0.125).abs() < 1e-6, "{}", r.extrapolated);
    }
}
