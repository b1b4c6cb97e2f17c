use super::HurwitzError;
use crate::catalog::{
    osc8d_m_parameters, osc8d_spectrum, ycm_dual_oscillator, ycm_duality_energy, ycm_parabolic_s_parameters,
    ycm_spectrum_parabolic, YCMParams,
};
use crate::ode::{solve_parabolic_pair, GridSettings};
use serde::Serialize;

/// Oscillator energy, frequency and inverse-square couplings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OscillatorSide {
    pub energy: f64,
    pub omega: f64,
    pub lambda1: f64,
    pub lambda2: f64,
}

/// Coulomb coupling, monopole energy and Smorodinsky-Winternitz couplings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CoulombSide {
    pub c0: f64,
    pub epsilon: f64,
    pub c1: f64,
    pub c2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum DualParams {
    Oscillator(OscillatorSide),
    Coulomb(CoulombSide),
}

/// `c0 = E/4`, `epsilon = -omega^2/8`, `c_i = 2 lambda_i`, in whichever direction the
/// input calls for. A bound-state dual needs `E, omega > 0` one way and
/// `c0 > 0, epsilon < 0` the other.
pub fn map_parameters(params: DualParams) -> Result<DualParams, HurwitzError> {
    match params {
        DualParams::Oscillator(o) => {
            if !(o.energy > 0.0) {
                return Err(HurwitzError::SignError { field: "E", value: o.energy, reason: "the dual Coulomb coupling E/4 must be positive" });
            }
            if !(o.omega > 0.0) {
                return Err(HurwitzError::SignError { field: "omega", value: o.omega, reason: "must be positive" });
            }
            Ok(DualParams::Coulomb(CoulombSide {
                c0: o.energy / 4.0,
                epsilon: -o.omega * o.omega / 8.0,
                c1: 2.0 * o.lambda1,
                c2: 2.0 * o.lambda2,
            }))
        }
        DualParams::Coulomb(c) => {
            if !(c.epsilon < 0.0) {
                return Err(HurwitzError::SignError { field: "epsilon", value: c.epsilon, reason: "no bound-state dual unless epsilon < 0" });
            }
            if !(c.c0 > 0.0) {
                return Err(HurwitzError::SignError { field: "c0", value: c.c0, reason: "must be positive" });
            }
            Ok(DualParams::Oscillator(OscillatorSide {
                energy: 4.0 * c.c0,
                omega: (-8.0 * c.epsilon).sqrt(),
                lambda1: c.c1 / 2.0,
                lambda2: c.c2 / 2.0,
            }))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualitySpectrumCheck {
    pub n1: usize,
    pub n2: usize,
    pub s: (f64, f64),
    /// `-c0^2 / (2 hbar^2 (n1 + n2 + s1 + s2 + 1)^2)`.
    pub parabolic: f64,
    /// The parabolic form without the factor 1/2.
    pub parabolic_without_half: f64,
    /// Duality form with `m_i = 2 s_i`, `p = n1 + n2`.
    pub duality_from_s: f64,
    /// Oscillator m-parameters under `lambda_i = c_i / 2`.
    pub m_oscillator: (f64, f64),
    /// Duality form evaluated directly with `m_oscillator`.
    pub duality_direct: f64,
    /// Same energy reached by the chain: oscillator spectrum, `E = 4 c0` fixing
    /// `omega`, then `epsilon = -omega^2 / 8`.
    pub duality_chain: f64,
    pub chain_frequency: f64,
    pub oracle: Option<f64>,
    pub oracle_error: Option<f64>,
    pub oracle_failure: Option<String>,
    /// Names of the closed forms within `support_tolerance` of the oracle.
    pub supported: Vec<String>,
    pub support_tolerance: f64,
}

impl DualitySpectrumCheck {
    /// Relative gap between the two duality evaluations.
    pub fn chain_gap(&self) -> f64 {
        (self.duality_chain - self.duality_direct).abs() / self.duality_direct.abs()
    }
}

/// Compares the parabolic closed form, the duality closed form reached through the
/// oscillator and the parameter map, and the numerical parabolic eigenvalue.
pub fn duality_spectrum_check(p: &YCMParams, n1: usize, n2: usize, grid: &GridSettings) -> Result<DualitySpectrumCheck, HurwitzError> {
    let k = &p.kepler;
    let rep_p = n1 + n2;
    let (s1, s2) = ycm_parabolic_s_parameters(p);
    let parabolic = ycm_spectrum_parabolic(p, n1, n2).energy;
    let duality_from_s = ycm_duality_energy(k.c0, k.hbar, 2.0 * s1, 2.0 * s2, rep_p);

    let osc = ycm_dual_oscillator(p);
    let m_oscillator = osc8d_m_parameters(&osc);
    let duality_direct = ycm_duality_energy(k.c0, k.hbar, m_oscillator.0, m_oscillator.1, rep_p);
    // oscillator energies scale linearly with omega: pick omega so that E = 4 c0
    let unit = osc8d_spectrum(&osc, rep_p).energy / osc.omega;
    let chain_frequency = 4.0 * k.c0 / unit;
    let coulomb = map_parameters(DualParams::Oscillator(OscillatorSide {
        energy: 4.0 * k.c0,
        omega: chain_frequency,
        lambda1: osc.lambda1,
        lambda2: osc.lambda2,
    }))?;
    let duality_chain = match coulomb {
        DualParams::Coulomb(c) => c.epsilon,
        DualParams::Oscillator(_) => unreachable!("forward map returns the Coulomb side"),
    };

    let alpha = 2.0 * k.c0 / (k.hbar * k.hbar);
    let (oracle, oracle_error, oracle_failure) = match solve_parabolic_pair(s1, s2, alpha, n1, n2, k.hbar, grid) {
        Ok(sol) => (Some(sol.epsilon), Some(sol.epsilon_error), None),
        Err(e) => (None, None, Some(e.to_string())),
    };
    let support_tolerance = 1e-5;
    let mut supported = Vec::new();
    if let Some(o) = oracle {
        for (name, v) in [
            ("parabolic", parabolic),
            ("parabolic_without_half", 2.0 * parabolic),
            ("duality_from_s", duality_from_s),
            ("duality_direct", duality_direct),
        ] {
            if (v - o).abs() < support_tolerance {
                supported.push(name.to_string());
            }
        }
    }
    Ok(DualitySpectrumCheck {
        n1,
        n2,
        s: (s1, s2),
        parabolic,
        parabolic_without_half: 2.0 * parabolic,
        duality_from_s,
        m_oscillator,
        duality_direct,
        duality_chain,
        chain_frequency,
        oracle,
        oracle_error,
        oracle_failure,
        supported,
        support_tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Kepler5DParams;

    fn coulomb(c0: f64, epsilon: f64) -> DualParams {
        DualParams::Coulomb(CoulombSide { c0, epsilon, c1: 0.5, c2: 0.25 })
    }

    #[test]
    fn printed_values() {
        let DualParams::Coulomb(c) =
            map_parameters(DualParams::Oscillator(OscillatorSide { energy: 4.0, omega: 1.0, lambda1: 0.0, lambda2: 0.0 })).unwrap()
        else {
            panic!()
        };
        assert_eq!((c.c0, c.epsilon), (1.0, -0.125));
        let DualParams::Oscillator(o) = map_parameters(coulomb(1.0, -0.125)).unwrap() else { panic!() };
        assert_eq!(o.omega, 1.0);
    }

    #[test]
    fn round_trip() {
        let start = coulomb(1.0, -0.125);
        assert_eq!(map_parameters(map_parameters(start).unwrap()).unwrap(), start);
    }

    #[test]
    fn unbound_energy_has_no_dual() {
        assert!(matches!(map_parameters(coulomb(1.0, 0.0)), Err(HurwitzError::SignError { .. })));
    }

    #[test]
    fn chain_reproduces_direct_form() {
        let p = YCMParams { kepler: Kepler5DParams { c0: 1.0, ..Default::default() }, ..Default::default() };
        let grid = GridSettings::default();
        let chk = duality_spectrum_check(&p, 0, 0, &grid).unwrap();
        assert_eq!(chk.duality_direct, -0.125);
        assert!(chk.chain_gap() < 1e-12);
        assert_eq!(chk.duality_from_s, chk.parabolic);
    }

    #[test]
    fn homogeneous_in_c0() {
        let base = Kepler5DParams { c0: 1.0, c1: 0.2, ..Default::default() };
        let e = |c0: f64| ycm_duality_energy(c0, base.hbar, 1.4, 1.0, 2);
        for t in [0.5, 2.0, 3.7] {
            assert!((e(t) - t * t * e(1.0)).abs() < 1e-15);
        }
    }
}
