use super::kepler::Kepler5DParams;
use super::oscillator::{osc8d_m_parameters, Oscillator8DParams};
use super::record::{Provenance, QuantumNumbers, SpectrumRecord, SystemId};
use super::{require, CatalogError};
use serde::Serialize;

/// Generalized Yang-Coulomb monopole: the 5D Kepler parameters plus the su(2)
/// isospin `T` and the labels `J`, `L` of the parabolic channel (`J_i = L_i + T_i`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct YCMParams {
    pub kepler: Kepler5DParams,
    pub isospin: f64,
    pub j_label: f64,
    pub l_label: f64,
}

fn is_half_integer(x: f64) -> bool {
    x >= 0.0 && (2.0 * x).fract() == 0.0
}

impl YCMParams {
    pub fn new(kepler: Kepler5DParams, isospin: f64, j_label: f64, l_label: f64) -> Result<Self, CatalogError> {
        require(is_half_integer(isospin), "T", isospin, "must be a non-negative half-integer")?;
        require(is_half_integer(j_label), "J", j_label, "must be a non-negative half-integer")?;
        require(is_half_integer(l_label), "L", l_label, "must be a non-negative half-integer")?;
        require(
            (l_label - isospin).abs() <= j_label && j_label <= l_label + isospin && ((j_label + l_label + isospin).fract() == 0.0),
            "J",
            j_label,
            "violates the triangle rule |L - T| <= J <= L + T",
        )?;
        Ok(Self { kepler, isospin, j_label, l_label })
    }
}

impl Default for YCMParams {
    fn default() -> Self {
        Self { kepler: Kepler5DParams::default(), isospin: 0.0, j_label: 0.0, l_label: 0.0 }
    }
}

/// `s1 = 4(J(J+1) - 2 c1)`, `s2 = 4(L(L+1) - 2 c2)`.
pub fn ycm_parabolic_s_parameters(p: &YCMParams) -> (f64, f64) {
    let (j, l) = (p.j_label, p.l_label);
    (4.0 * (j * (j + 1.0) - 2.0 * p.kepler.c1), 4.0 * (l * (l + 1.0) - 2.0 * p.kepler.c2))
}

/// Parabolic closed form `-c0^2 / (2 hbar^2 (n1 + n2 + (s1 + s2 + 1))^2)`.
pub fn ycm_spectrum_parabolic(p: &YCMParams, n1: usize, n2: usize) -> SpectrumRecord {
    let (s1, s2) = ycm_parabolic_s_parameters(p);
    let k = &p.kepler;
    let n = (n1 + n2) as f64 + (s1 + s2 + 1.0);
    let energy = -k.c0 * k.c0 / (2.0 * k.hbar * k.hbar * n * n);
    let mut rec = SpectrumRecord::new(SystemId::Ycm, QuantumNumbers::Parabolic { n1, n2 }, energy, Provenance::Algebraic);
    rec.s = Some((s1, s2));
    rec
}

/// Oscillator parameters dual to the monopole: `lambda_i = c_i / 2`, with the
/// so(4) labels of the two blocks taken from `J` and `L`. The frequency is left
/// at 1; the m-parameters do not depend on it.
pub fn ycm_dual_oscillator(p: &YCMParams) -> Oscillator8DParams {
    Oscillator8DParams {
        omega: 1.0,
        lambda1: p.kepler.c1 / 2.0,
        lambda2: p.kepler.c2 / 2.0,
        hbar: p.kepler.hbar,
        j: p.j_label,
        k: p.l_label,
    }
}

/// Duality closed form `-c0^2 / (2 hbar^2 (p + 1 + (m1 + m2)/2)^2)` with the
/// oscillator's printed m under `lambda_i = c_i / 2`.
pub fn ycm_spectrum_duality(p: &YCMParams, rep_p: usize) -> SpectrumRecord {
    let (m1, m2) = osc8d_m_parameters(&ycm_dual_oscillator(p));
    let energy = ycm_duality_energy(p.kepler.c0, p.kepler.hbar, m1, m2, rep_p);
    let mut rec = SpectrumRecord::new(SystemId::Ycm, QuantumNumbers::Representation { p: rep_p }, energy, Provenance::Duality);
    rec.m_printed = Some((m1, m2));
    rec.s = Some(ycm_parabolic_s_parameters(p));
    rec
}

pub fn ycm_duality_energy(c0: f64, hbar: f64, m1: f64, m2: f64, rep_p: usize) -> f64 {
    let n = rep_p as f64 + 1.0 + (m1 + m2) / 2.0;
    -c0 * c0 / (2.0 * hbar * hbar * n * n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s_parameters() {
        assert_eq!(ycm_parabolic_s_parameters(&YCMParams::default()), (0.0, 0.0));
        let p = YCMParams::new(Kepler5DParams::default(), 1.0, 1.0, 0.0).unwrap();
        assert_eq!(ycm_parabolic_s_parameters(&p).0, 8.0);
    }

    #[test]
    fn closed_forms() {
        let p = YCMParams::default();
        assert_eq!(ycm_spectrum_parabolic(&p, 0, 0).energy, -0.5);
        assert_eq!(ycm_spectrum_duality(&p, 0).energy, -0.125);
    }

    #[test]
    fn triangle_rule() {
        assert!(YCMParams::new(Kepler5DParams::default(), 0.5, 0.5, 0.0).is_ok());
        assert!(YCMParams::new(Kepler5DParams::default(), 0.5, 2.0, 0.0).is_err());
        assert!(YCMParams::new(Kepler5DParams::default(), 0.3, 0.0, 0.0).is_err());
        assert!(YCMParams::new(Kepler5DParams::default(), 0.5, 1.0, 1.0).is_err());
    }
}
