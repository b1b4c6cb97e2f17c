use nalgebra::DMatrix;
use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense real polynomial with coefficients in ascending order of degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == 0.0 {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0.0);
        }
        Self { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(vec![c])
    }

    /// `a + b x`
    pub fn linear(a: f64, b: f64) -> Self {
        Self::new(vec![a, b])
    }

    /// `leading * prod (x - r)`
    pub fn from_roots(roots: &[f64], leading: f64) -> Self {
        let mut p = Self::constant(leading);
        for &r in roots {
            p = &p * &Self::linear(-r, 1.0);
        }
        p
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        *self.coeffs.last().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == 0.0
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    /// Sum of the absolute values of the individual terms at `x`; the natural
    /// scale against which a cancellation residual is judged.
    pub fn term_magnitude(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * ax + c.abs())
    }

    /// `|p(x)| / term_magnitude(x)`
    pub fn relative_residual(&self, x: f64) -> f64 {
        let m = self.term_magnitude(x);
        if m == 0.0 {
            0.0
        } else {
            self.eval(x).abs() / m
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::constant(0.0);
        }
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| k as f64 * c).collect())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::constant(1.0);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// All complex roots: companion-matrix eigenvalues followed by Newton polishing
    /// on the original coefficients.
    pub fn roots(&self) -> Vec<Complex64> {
        let n = self.degree();
        if n == 0 {
            return Vec::new();
        }
        let lead = self.leading();
        let mut companion = DMatrix::<f64>::zeros(n, n);
        for i in 1..n {
            companion[(i, i - 1)] = 1.0;
        }
        for i in 0..n {
            companion[(i, n - 1)] = -self.coeffs[i] / lead;
        }
        let dp = self.derivative();
        let mut roots: Vec<Complex64> = companion
            .complex_eigenvalues()
            .iter()
            .map(|&z| self.polish(&dp, z))
            .collect();
        roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        roots
    }

    fn polish(&self, dp: &Polynomial, mut z: Complex64) -> Complex64 {
        let mut best = z;
        let mut best_val = self.eval_complex(z).norm();
        for _ in 0..20 {
            let f = self.eval_complex(z);
            let df = dp.eval_complex(z);
            if df.norm() == 0.0 {
                break;
            }
            let step = f / df;
            z -= step;
            let v = self.eval_complex(z).norm();
            if v < best_val {
                best_val = v;
                best = z;
            }
            if step.norm() <= 1e-16 * (1.0 + z.norm()) {
                break;
            }
        }
        best
    }

    /// Roots whose imaginary part is below `tol * (1 + |root|)`, sorted ascending.
    pub fn real_roots(&self, tol: f64) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .roots()
            .into_iter()
            .filter(|z| z.im.abs() <= tol * (1.0 + z.norm()))
            .map(|z| z.re)
            .collect();
        out.sort_by(|a, b| a.total_cmp(b));
        out
    }

    /// `p(x + shift)` as a polynomial in `x`.
    pub fn shifted(&self, shift: f64) -> Self {
        let lin = Self::linear(shift, 1.0);
        let mut out = Self::constant(0.0);
        for &c in self.coeffs.iter().rev() {
            out = &(&out * &lin) + &Self::constant(c);
        }
        out
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&0.0) + rhs.coeffs.get(i).unwrap_or(&0.0))
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_wilkinson_like_product() {
        let rs = [-1.5, -0.5, 0.5, 0.5, 1.5, 2.5];
        let p = Polynomial::from_roots(&rs, -3.0);
        let got = p.real_roots(1e-6);
        assert_eq!(got.len(), 6);
        for (a, b) in got.iter().zip(rs.iter()) {
            assert!((a - b).abs() < 1e-7, "{a} vs {b}");
        }
    }

    #[test]
    fn complex_pair() {
        let p = Polynomial::new(vec![1.0, 0.0, 1.0]);
        let r = p.roots();
        assert!((r[0].im.abs() - 1.0).abs() < 1e-14);
        assert!(p.real_roots(1e-9).is_empty());
    }

    #[test]
    fn shift_and_derivative() {
        let p = Polynomial::new(vec![1.0, -2.0, 0.0, 3.0]);
        let q = p.shifted(0.7);
        for x in [-1.3, 0.0, 0.4, 2.2] {
            assert!((q.eval(x) - p.eval(x + 0.7)).abs() < 1e-12);
        }
        assert_eq!(p.derivative().coeffs(), &[-2.0, 0.0, 9.0]);
    }

    #[test]
    fn relative_residual_is_scale_free() {
        let p = Polynomial::from_roots(&[1.0, 2.0], 1.0);
        assert_eq!(p.relative_residual(1.0), 0.0);
        let r1 = p.relative_residual(1.5);
        let r2 = p.scale(1e9).relative_residual(1.5);
        assert!((r1 - r2).abs() < 1e-15);
    }
}
