use super::record::{Provenance, QuantumNumbers, SpectrumRecord, SystemId};
use super::{require, CatalogError};
use crate::algebra::{ClosedFormSpectrum, QuadraticAlgebraConstants, StructureFamily};
use crate::linalg::Polynomial;
use serde::Serialize;

/// Generalized 5D Kepler system
/// `H = P^2/2 - c0/r + c1/(r(r + x0)) + c2/(r(r - x0))`; `l` is the eigenvalue of the
/// so(4) Casimir built from `L_ij`, `i, j = 1..4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Kepler5DParams {
    pub c0: f64,
    pub c1: f64,
    pub c2: f64,
    pub hbar: f64,
    pub l: f64,
}

impl Kepler5DParams {
    pub fn new(c0: f64, c1: f64, c2: f64, hbar: f64, l: f64) -> Result<Self, CatalogError> {
        require(c0 > 0.0, "c0", c0, "must be positive")?;
        require(c1 >= 0.0, "c1", c1, "must be non-negative")?;
        require(c2 >= 0.0, "c2", c2, "must be non-negative")?;
        require(hbar > 0.0, "hbar", hbar, "must be positive")?;
        require(l >= 0.0, "l", l, "must be non-negative")?;
        Ok(Self { c0, c1, c2, hbar, l })
    }
}

impl Default for Kepler5DParams {
    fn default() -> Self {
        Self { c0: 1.0, c1: 0.0, c2: 0.0, hbar: 1.0, l: 0.0 }
    }
}

/// Casimir value with `H -> energy`, `L^2 -> l`.
pub fn kepler5d_casimir(p: &Kepler5DParams, energy: f64) -> f64 {
    let Kepler5DParams { c0, c1, c2, hbar: h, l } = *p;
    let e = energy;
    16.0 * h.powi(4) * e * l - 8.0 * h * h * (c1 - c2).powi(2) * e + 32.0 * (c1 + c2) * h.powi(4) * e
        - 32.0 * h.powi(6) * e
        + 4.0 * h * h * c0 * c0 * l
        + 8.0 * h * h * (c1 + c2) * c0 * c0
        - 4.0 * h.powi(4) * c0 * c0
}

pub fn kepler5d_constants(p: &Kepler5DParams, energy: f64) -> QuadraticAlgebraConstants {
    let Kepler5DParams { c0, c1, c2, hbar: h, l } = *p;
    let e = energy;
    QuadraticAlgebraConstants {
        gamma: 2.0 * h * h,
        epsilon: 8.0 * h.powi(4),
        zeta: -4.0 * (c1 - c2) * h * h * c0,
        d: 8.0 * h * h * e,
        z: -4.0 * h * h * l * e + 16.0 * h.powi(4) * e - 8.0 * h * h * (c1 + c2) * e + 2.0 * h * h * c0 * c0,
        casimir: kepler5d_casimir(p, e),
        hbar: h,
    }
}

/// Printed relation `hbar^2 m_i^2 = 16 c_i + 4 l + 4 hbar^2`, positive branch.
pub fn kepler5d_m_parameters(p: &Kepler5DParams) -> Result<(f64, f64), CatalogError> {
    let m = |which: u8, c: f64| {
        let rad = 16.0 * c + 4.0 * p.l + 4.0 * p.hbar * p.hbar;
        if rad < 0.0 {
            Err(CatalogError::ImaginaryM { which, radicand: rad })
        } else {
            Ok((rad / (p.hbar * p.hbar)).sqrt())
        }
    };
    Ok((m(1, p.c1)?, m(2, p.c2)?))
}

/// m-parameters for which the general structure function with these constants
/// factors with roots `(1 +- m1 +- m2)/2`: `hbar^2 m_i^2 = 4 c_i + l + hbar^2`.
pub fn kepler5d_m_structure(p: &Kepler5DParams) -> Result<(f64, f64), CatalogError> {
    let m = |which: u8, c: f64| {
        let rad = 4.0 * c + p.l + p.hbar * p.hbar;
        if rad < 0.0 {
            Err(CatalogError::ImaginaryM { which, radicand: rad })
        } else {
            Ok((rad / (p.hbar * p.hbar)).sqrt())
        }
    };
    Ok((m(1, p.c1)?, m(2, p.c2)?))
}

/// Printed closed form `E = -c0^2 / (hbar^2 (p + 1 + (m1 + m2)/2)^2)` with printed m.
pub fn kepler5d_spectrum(p: &Kepler5DParams, rep_p: usize) -> Result<SpectrumRecord, CatalogError> {
    let (m1, m2) = kepler5d_m_parameters(p)?;
    let n = rep_p as f64 + 1.0 + (m1 + m2) / 2.0;
    let energy = -p.c0 * p.c0 / (p.hbar * p.hbar * n * n);
    let mut rec = SpectrumRecord::new(SystemId::Kepler5d, QuantumNumbers::Representation { p: rep_p }, energy, Provenance::Algebraic);
    rec.m_printed = Some((m1, m2));
    rec.m_calibrated = kepler5d_m_structure(p).ok();
    rec.flags.push("no 1/2 in the Coulomb prefactor, unlike the parabolic and duality forms".into());
    Ok(rec)
}

/// `-c0^2 / (2 hbar^2 (p + 1 + (m1 + m2)/2)^2)` with m from [`kepler5d_m_structure`]:
/// the energy at which the general structure function admits the representation
/// of dimension `p + 1` with `u = (1 + m1 + m2)/2`.
pub fn kepler5d_structure_energy(p: &Kepler5DParams, rep_p: usize) -> Result<f64, CatalogError> {
    let (m1, m2) = kepler5d_m_structure(p)?;
    let n = rep_p as f64 + 1.0 + (m1 + m2) / 2.0;
    Ok(-p.c0 * p.c0 / (2.0 * p.hbar * p.hbar * n * n))
}

/// The printed factored structure function as a polynomial in `X = x + u`:
/// prefactor `6191456 E hbar^18`, roots `(1 +- m1 +- m2)/2` with printed m and
/// `1/2 +- c0/(sqrt(-2E) hbar)`.
pub fn kepler5d_printed_structure(p: &Kepler5DParams, energy: f64) -> Result<Polynomial, CatalogError> {
    let (m1, m2) = kepler5d_m_parameters(p)?;
    Ok(kepler5d_factored(p, energy, m1, m2, 6191456.0))
}

/// Factored form with arbitrary m and numeric prefactor (multiplies `E hbar^18`).
pub fn kepler5d_factored(p: &Kepler5DParams, energy: f64, m1: f64, m2: f64, prefactor: f64) -> Polynomial {
    let kappa = p.c0 / ((-2.0 * energy).sqrt() * p.hbar);
    let roots = [
        0.5 * (1.0 - m1 - m2),
        0.5 * (1.0 - m1 + m2),
        0.5 * (1.0 + m1 - m2),
        0.5 * (1.0 + m1 + m2),
        0.5 - kappa,
        0.5 + kappa,
    ];
    Polynomial::from_roots(&roots, prefactor * energy * p.hbar.powi(18))
}

/// Printed structure function on the representation of dimension `p + 1`,
/// evaluated exactly as written.
pub fn kepler5d_printed_representation_phi(p: &Kepler5DParams, rep_p: usize, x: f64) -> Result<f64, CatalogError> {
    let (m1, m2) = kepler5d_m_parameters(p)?;
    let q = rep_p as f64 + 1.0;
    let h = p.hbar;
    Ok(6291456.0 * h.powi(18) * x * (q - x) * p.c0 * p.c0 / (h * h * (q + m1 + m2))
        * (q + m1 - x)
        * (q + m2 - x)
        * (q + m1 + m2))
}

/// Energy-dependent structure function from the general form with the Kepler
/// constants, scanned over `E = -c0^2 / (2 hbar^2 kappa^2)` on a uniform `kappa` grid.
pub struct KeplerFamily {
    pub params: Kepler5DParams,
    pub kappa_step: f64,
}

impl KeplerFamily {
    pub fn new(params: Kepler5DParams) -> Self {
        Self { params, kappa_step: 0.01 }
    }
}

impl StructureFamily for KeplerFamily {
    fn polynomial(&self, energy: f64) -> Polynomial {
        crate::algebra::structure_polynomial(&kepler5d_constants(&self.params, energy))
    }

    fn scan_energies(&self, p: usize) -> Vec<f64> {
        let Kepler5DParams { c0, c1, c2, hbar: h, l } = self.params;
        // generous bound on the root spread: printed and structure m both fit below it
        let spread = ((16.0 * c1 + 4.0 * l + 4.0 * h * h).sqrt() + (16.0 * c2 + 4.0 * l + 4.0 * h * h).sqrt()) / h;
        let kappa_max = 2.0 * (p as f64 + 1.0) + spread + 4.0;
        let steps = (kappa_max / self.kappa_step).ceil() as usize;
        (1..=steps)
            .map(|i| {
                let kappa = i as f64 * self.kappa_step;
                -c0 * c0 / (2.0 * h * h * kappa * kappa)
            })
            .collect()
    }
}

/// The printed closed form used as a candidate representation.
pub struct KeplerPrintedClosedForm(pub Kepler5DParams);

impl ClosedFormSpectrum for KeplerPrintedClosedForm {
    fn energy(&self, p: usize) -> f64 {
        kepler5d_spectrum(&self.0, p).map(|r| r.energy).unwrap_or(f64::NAN)
    }

    fn u(&self, _p: usize, energy: f64) -> f64 {
        0.5 + self.0.c0 / ((-2.0 * energy).sqrt() * self.0.hbar)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn casimir_spot_value() {
        let p = Kepler5DParams::default();
        assert!((kepler5d_casimir(&p, -1.0 / 9.0) + 4.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn zeta_vanishes_for_equal_couplings() {
        let p = Kepler5DParams::new(1.3, 0.4, 0.4, 0.9, 2.0).unwrap();
        assert_eq!(kepler5d_constants(&p, -0.2).zeta, 0.0);
    }

    #[test]
    fn printed_m_values() {
        assert_eq!(kepler5d_m_parameters(&Kepler5DParams::default()).unwrap(), (2.0, 2.0));
        let p = Kepler5DParams::new(1.0, 0.75, 0.0, 1.0, 0.0).unwrap();
        assert_eq!(kepler5d_m_parameters(&p).unwrap().0, 4.0);
    }

    #[test]
    fn printed_spectrum_values() {
        let p = Kepler5DParams::default();
        let e: Vec<f64> = (0..4).map(|k| kepler5d_spectrum(&p, k).unwrap().energy).collect();
        for (v, n) in e.iter().zip([3.0, 4.0, 5.0, 6.0]) {
            assert!((v + 1.0 / (n * n)).abs() < 1e-15);
        }
    }

    #[test]
    fn invalid_params() {
        assert!(Kepler5DParams::new(1.0, -0.1, 0.0, 1.0, 0.0).is_err());
        assert!(Kepler5DParams::new(0.0, 0.0, 0.0, 1.0, 0.0).is_err());
    }
}
