use super::{AlgebraError, QuadraticAlgebraConstants};
use crate::linalg::Polynomial;
use num_complex::Complex64;

/// The structure function of the `gamma != 0` realization, evaluated at
/// `X = x + u` exactly as the closed form is written (no expansion).
pub fn structure_function_general(c: &QuadraticAlgebraConstants, u: f64, x: f64) -> f64 {
    let QuadraticAlgebraConstants { gamma: g, epsilon: e, zeta, d, z, casimir: k, .. } = *c;
    let y = x + u;
    let t = 2.0 * y - 1.0;
    -3072.0 * g.powi(6) * k * t * t
        + 48.0 * d * g.powi(8) * (2.0 * y - 3.0) * t.powi(4) * (2.0 * y + 1.0)
        + 12288.0 * g.powi(4) * zeta * zeta
        + 32.0 * g.powi(4) * t * t * (12.0 * y * y - 12.0 * y - 1.0) * (-4.0 * d * e * g * g + 8.0 * g.powi(3) * z)
        - 256.0
            * g
            * g
            * t
            * t
            * (-3.0 * d * e * e * g * g + 2.0 * d * e * g.powi(4) + 12.0 * e * g.powi(3) * z - 4.0 * g.powi(5) * z)
}

/// The same structure function expanded as a polynomial in `X = x + u`.
pub fn structure_polynomial(c: &QuadraticAlgebraConstants) -> Polynomial {
    let QuadraticAlgebraConstants { gamma: g, epsilon: e, zeta, d, z, casimir: k, .. } = *c;
    let lin = |a: f64, b: f64| Polynomial::linear(a, b);
    let t = lin(-1.0, 2.0);
    let t2 = t.pow(2);
    let quad = Polynomial::new(vec![-1.0, -12.0, 12.0]);
    let mut p = t2.scale(-3072.0 * g.powi(6) * k);
    p = &p + &(&(&lin(-3.0, 2.0) * &t.pow(4)) * &lin(1.0, 2.0)).scale(48.0 * d * g.powi(8));
    p = &p + &Polynomial::constant(12288.0 * g.powi(4) * zeta * zeta);
    p = &p + &(&t2 * &quad).scale(32.0 * g.powi(4) * (-4.0 * d * e * g * g + 8.0 * g.powi(3) * z));
    p = &p
        - &t2.scale(
            256.0 * g * g * (-3.0 * d * e * e * g * g + 2.0 * d * e * g.powi(4) + 12.0 * e * g.powi(3) * z - 4.0 * g.powi(5) * z),
        );
    p
}

/// Structure function stored in factored form `Phi(x) = leading * prod (x + u - r_i)`.
///
/// The leading coefficient keeps its sign: for the physical families it is
/// negative, and positivity of `Phi` on `1..=p` comes from the root placement.
#[derive(Debug, Clone, PartialEq)]
pub struct StructureFunction {
    u: f64,
    leading: f64,
    roots: Vec<Complex64>,
    expanded: Option<Polynomial>,
}

impl StructureFunction {
    /// `roots` are given in the shifted variable `X = x + u`.
    pub fn from_roots(roots: &[f64], leading: f64, u: f64) -> Self {
        let expanded = Polynomial::from_roots(roots, leading);
        Self {
            u,
            leading,
            roots: roots.iter().map(|&r| Complex64::new(r, 0.0)).collect(),
            expanded: Some(expanded),
        }
    }

    /// `poly` is a polynomial in `X = x + u`.
    pub fn from_polynomial(poly: Polynomial, u: f64) -> Self {
        Self { u, leading: poly.leading(), roots: poly.roots(), expanded: Some(poly) }
    }

    pub fn from_constants(c: &QuadraticAlgebraConstants, u: f64) -> Self {
        Self::from_polynomial(structure_polynomial(c), u)
    }

    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn leading(&self) -> f64 {
        self.leading
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    /// Roots in the shifted variable `X = x + u`.
    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    /// Evaluation through the stored roots.
    pub fn eval(&self, x: f64) -> f64 {
        let y = Complex64::new(x + self.u, 0.0);
        let prod = self.roots.iter().fold(Complex64::new(self.leading, 0.0), |acc, r| acc * (y - r));
        prod.re
    }

    /// Evaluation through the expanded polynomial.
    pub fn eval_expanded(&self, x: f64) -> f64 {
        match &self.expanded {
            Some(p) => p.eval(x + self.u),
            None => self.eval(x),
        }
    }

    /// `|Phi(x)|` relative to the magnitude of the individual expanded terms.
    /// Sum of the absolute term contributions at `x`, the rounding scale of `Phi(x)`.
    pub fn term_scale(&self, x: f64) -> f64 {
        match &self.expanded {
            Some(p) => p.term_magnitude(x + self.u),
            None => self.roots.iter().fold(self.leading.abs(), |acc, r| acc * ((x + self.u).abs() + r.norm())),
        }
    }

    pub fn relative_residual(&self, x: f64) -> f64 {
        match &self.expanded {
            Some(p) => p.relative_residual(x + self.u),
            None => self.eval(x).abs(),
        }
    }

    pub fn rescaled(&self, k: f64) -> Self {
        Self {
            u: self.u,
            leading: self.leading * k,
            roots: self.roots.clone(),
            expanded: self.expanded.as_ref().map(|p| p.scale(k)),
        }
    }
}

/// Diagonal functions of the deformed-oscillator realization at a given `u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorRealization {
    pub constants: QuadraticAlgebraConstants,
    pub u: f64,
}

impl OscillatorRealization {
    pub fn new(constants: QuadraticAlgebraConstants, u: f64) -> Self {
        Self { constants, u }
    }

    /// Eigenvalue of `A` on the state `|n>`.
    pub fn a(&self, n: usize) -> f64 {
        let c = &self.constants;
        let x = n as f64 + self.u;
        0.5 * c.gamma * (x * x - 0.25 - c.epsilon / (c.gamma * c.gamma))
    }

    /// Diagonal part of `B` on `|n>`.
    pub fn b(&self, n: usize) -> Result<f64, AlgebraError> {
        let c = &self.constants;
        let x = n as f64 + self.u;
        let den = x * x - 0.25;
        if c.zeta == 0.0 {
            return Ok(0.0);
        }
        if den.abs() <= 1e-14 * (1.0 + x * x) {
            return Err(AlgebraError::DegenerateDenominator { n, x });
        }
        Ok(-c.zeta / (c.gamma * c.gamma * den))
    }

    /// The weight multiplying `Phi(n + 1)` in the squared off-diagonal element of `B`:
    /// `<n+1|B|n>^2 = rho(n) Phi(n+1)`.
    pub fn rho(&self, n: usize) -> Result<f64, AlgebraError> {
        let g = self.constants.gamma;
        let x = n as f64 + self.u;
        let den = 4096.0 * 3.0 * g.powi(8) * x * (1.0 + x) * (1.0 + 2.0 * x).powi(2);
        if den.abs() <= 1e-300 || x.abs() < 1e-14 || (1.0 + x).abs() < 1e-14 || (1.0 + 2.0 * x).abs() < 1e-14 {
            return Err(AlgebraError::DegenerateDenominator { n, x });
        }
        Ok(1.0 / den)
    }

    /// Checks every denominator on `0..=p`.
    pub fn check_range(&self, p: usize) -> Result<(), AlgebraError> {
        for n in 0..=p {
            self.b(n)?;
            self.rho(n)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> QuadraticAlgebraConstants {
        QuadraticAlgebraConstants::new(2.0, 8.0, -1.3, -0.9, 2.7, 5.5, 1.0).unwrap()
    }

    #[test]
    fn expanded_matches_literal() {
        let c = sample();
        let p = structure_polynomial(&c);
        assert_eq!(p.degree(), 6);
        for &x in &[-2.0, -0.3, 0.0, 0.5, 1.7, 4.0] {
            let lit = structure_function_general(&c, 0.25, x);
            let exp = p.eval(x + 0.25);
            assert!((lit - exp).abs() <= 1e-12 * p.term_magnitude(x + 0.25));
        }
        assert!((p.leading() - 3072.0 * c.d * c.gamma.powi(8)).abs() < 1e-9 * p.leading().abs());
    }

    #[test]
    fn roots_and_expansion_agree() {
        let sf = StructureFunction::from_constants(&sample(), 0.25);
        for &x in &[0.0, 1.0, 2.5, -1.5] {
            let a = sf.eval(x);
            let b = sf.eval_expanded(x);
            assert!((a - b).abs() <= 1e-11 * b.abs().max(1.0), "{a} {b}");
        }
    }

    #[test]
    fn gamma_zero_rejected() {
        assert_eq!(QuadraticAlgebraConstants::new(0.0, 1.0, 0.0, 1.0, 0.0, 0.0, 1.0), Err(AlgebraError::ZeroGamma));
    }

    #[test]
    fn degenerate_denominator_detected() {
        let r = OscillatorRealization::new(sample(), 0.5);
        assert!(matches!(r.b(0), Err(AlgebraError::DegenerateDenominator { n: 0, .. })));
        let r = OscillatorRealization::new(sample(), -1.0);
        assert!(matches!(r.rho(1), Err(AlgebraError::DegenerateDenominator { n: 1, .. })));
    }
}
