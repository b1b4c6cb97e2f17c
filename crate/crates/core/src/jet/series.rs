use super::{JetError, JetSpace};
use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

/// Truncated Taylor expansion in the displacement `t = x - x_point`.
#[derive(Debug, Clone)]
pub struct Jet {
    space: Arc<JetSpace>,
    coeffs: Vec<Complex64>,
}

impl PartialEq for Jet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.space, &other.space) && self.coeffs == other.coeffs
    }
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

impl Jet {
    pub fn zero(space: &Arc<JetSpace>) -> Self {
        Self { space: space.clone(), coeffs: vec![ZERO; space.len()] }
    }

    pub fn constant(space: &Arc<JetSpace>, value: Complex64) -> Self {
        let mut j = Self::zero(space);
        j.coeffs[0] = value;
        j
    }

    /// `x_v` expanded about `x_v = center`.
    pub fn coordinate(space: &Arc<JetSpace>, v: usize, center: f64) -> Self {
        let mut j = Self::constant(space, Complex64::new(center, 0.0));
        if space.degree() >= 1 {
            let mut e = vec![0u8; space.n_vars()];
            e[v] = 1;
            j.coeffs[space.index_of(&e).expect("linear monomial")] = Complex64::new(1.0, 0.0);
        }
        j
    }

    pub fn from_coeffs(space: &Arc<JetSpace>, coeffs: Vec<Complex64>) -> Self {
        assert_eq!(coeffs.len(), space.len(), "coefficient count must match the jet space");
        Self { space: space.clone(), coeffs }
    }

    pub fn space(&self) -> &Arc<JetSpace> {
        &self.space
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `t^exps`; zero for monomials outside the space.
    pub fn coeff(&self, exps: &[u8]) -> Complex64 {
        self.space.index_of(exps).map_or(ZERO, |k| self.coeffs[k])
    }

    /// Value at the expansion point.
    pub fn value(&self) -> Complex64 {
        self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == ZERO)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { space: self.space.clone(), coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn add_scaled(&mut self, other: &Jet, s: Complex64) {
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b * s;
        }
    }

    /// Cauchy product truncated at the space degree.
    pub fn mul(&self, other: &Jet) -> Jet {
        let mut out = vec![ZERO; self.space.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == ZERO {
                continue;
            }
            for (&t, &b) in self.space.mul_row(i).iter().zip(&other.coeffs) {
                out[t as usize] += a * b;
            }
        }
        Jet { space: self.space.clone(), coeffs: out }
    }

    /// `d/dx_v`. The top-degree coefficients of the result are lost to truncation.
    pub fn partial(&self, v: usize) -> Jet {
        let mut out = vec![ZERO; self.space.len()];
        for (k, entry) in self.space.deriv_table(v).iter().enumerate() {
            if let Some((t, e)) = *entry {
                out[t as usize] += self.coeffs[k] * e;
            }
        }
        Jet { space: self.space.clone(), coeffs: out }
    }

    /// Multiplication by the displacement `t_v` (not by `x_v`).
    pub fn shift(&self, v: usize) -> Jet {
        let mut out = vec![ZERO; self.space.len()];
        for (k, entry) in self.space.shift_table(v).iter().enumerate() {
            if let Some(t) = *entry {
                out[t as usize] = self.coeffs[k];
            }
        }
        Jet { space: self.space.clone(), coeffs: out }
    }

    /// `f(self)` from the Taylor coefficients `c_k = f^(k)(a0) / k!` at the constant term.
    pub fn compose_series(&self, c: &[Complex64]) -> Jet {
        let mut h = self.clone();
        h.coeffs[0] = ZERO;
        let top = self.space.degree().min(c.len().saturating_sub(1));
        let mut acc = Jet::constant(&self.space, c[top]);
        for k in (0..top).rev() {
            acc = acc.mul(&h);
            acc.coeffs[0] += c[k];
        }
        acc
    }

    pub fn recip(&self) -> Result<Jet, JetError> {
        let a0 = self.value();
        if a0.norm() == 0.0 || !a0.is_finite() {
            return Err(JetError::SingularPoint { value: a0.norm() });
        }
        let inv = 1.0 / a0;
        let mut c = Vec::with_capacity(self.space.degree() + 1);
        let mut term = inv;
        for _ in 0..=self.space.degree() {
            c.push(term);
            term *= -inv;
        }
        Ok(self.compose_series(&c))
    }

    pub fn div(&self, other: &Jet) -> Result<Jet, JetError> {
        Ok(self.mul(&other.recip()?))
    }

    /// Principal square root; requires a nonzero constant term.
    pub fn sqrt(&self) -> Result<Jet, JetError> {
        let a0 = self.value();
        if a0.norm() == 0.0 || !a0.is_finite() {
            return Err(JetError::SingularPoint { value: a0.norm() });
        }
        let root = a0.sqrt();
        let mut c = Vec::with_capacity(self.space.degree() + 1);
        // binom(1/2, k) a0^(1/2 - k)
        let mut coef = Complex64::new(1.0, 0.0);
        let mut pow = root;
        for k in 0..=self.space.degree() {
            c.push(coef * pow);
            coef *= (0.5 - k as f64) / (k as f64 + 1.0);
            pow /= a0;
        }
        Ok(self.compose_series(&c))
    }

    /// Coefficients of total degree `<= d` kept, the rest zeroed.
    pub fn truncated(&self, d: usize) -> Jet {
        let mut out = self.clone();
        for c in &mut out.coeffs[self.space.count_upto(d)..] {
            *c = ZERO;
        }
        out
    }

    /// Re-express in a space over the same variables whose monomials form a prefix of
    /// this one (lower degree), or extend with zeros (higher degree).
    pub fn restrict_to(&self, space: &Arc<JetSpace>) -> Jet {
        assert_eq!(space.n_vars(), self.space.n_vars());
        let mut coeffs = vec![ZERO; space.len()];
        let n = coeffs.len().min(self.coeffs.len());
        coeffs[..n].copy_from_slice(&self.coeffs[..n]);
        Jet { space: space.clone(), coeffs }
    }
}

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect();
        Jet { space: self.space.clone(), coeffs }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        let coeffs = self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect();
        Jet { space: self.space.clone(), coeffs }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        Jet::mul(self, rhs)
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

/// Real multivariate polynomial in the absolute coordinates `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiPoly {
    pub n_vars: usize,
    pub terms: Vec<(Vec<u8>, f64)>,
}

impl MultiPoly {
    pub fn degree(&self) -> usize {
        self.terms.iter().map(|(e, _)| e.iter().map(|&x| x as usize).sum()).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(e, c)| c * e.iter().zip(x).map(|(&k, &xi)| xi.powi(k as i32)).product::<f64>())
            .sum()
    }

    /// Every monomial of degree `<= degree` with a coefficient drawn by `coef`.
    pub fn dense(n_vars: usize, degree: usize, mut coef: impl FnMut() -> f64) -> Self {
        let space = JetSpace::new(n_vars, degree);
        let terms = (0..space.len()).map(|k| (space.monomial(k).to_vec(), coef())).collect();
        Self { n_vars, terms }
    }
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Exact Taylor expansion of `poly` about `point`, by the binomial shift of each monomial.
pub fn jet_seed_polynomial(space: &Arc<JetSpace>, poly: &MultiPoly, point: &[f64]) -> Result<Jet, JetError> {
    if poly.n_vars != space.n_vars() || point.len() != space.n_vars() {
        return Err(JetError::DimensionMismatch { expected: space.n_vars(), found: poly.n_vars.max(point.len()) });
    }
    if poly.degree() > space.degree() {
        return Err(JetError::DegreeTooHigh { degree: poly.degree(), max: space.degree() });
    }
    let mut out = Jet::zero(space);
    for (exps, c) in &poly.terms {
        // sub-multi-indices beta <= exps
        let mut beta = vec![0u8; exps.len()];
        loop {
            let mut w = *c;
            for v in 0..exps.len() {
                let (a, b) = (exps[v] as u32, beta[v] as u32);
                w *= binomial(a, b) * point[v].powi((a - b) as i32);
            }
            let k = space.index_of(&beta).expect("sub-monomial within degree");
            out.coeffs[k] += w;
            let mut v = 0;
            while v < exps.len() {
                if beta[v] < exps[v] {
                    beta[v] += 1;
                    break;
                }
                beta[v] = 0;
                v += 1;
            }
            if v == exps.len() {
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn seed_square() {
        let s = JetSpace::new(5, 6);
        let p = MultiPoly { n_vars: 5, terms: vec![(vec![2, 0, 0, 0, 0], 1.0)] };
        let j = jet_seed_polynomial(&s, &p, &[3.0, 0.0, 0.0, 0.0, 0.0]).unwrap();
        assert_eq!(j.coeff(&[1, 0, 0, 0, 0]), c(6.0));
        assert_eq!(j.value(), c(9.0));
        assert_eq!(j.coeff(&[2, 0, 0, 0, 0]), c(1.0));
    }

    #[test]
    fn seed_constant_only_zero_index() {
        let s = JetSpace::new(3, 4);
        let p = MultiPoly { n_vars: 3, terms: vec![(vec![0, 0, 0], 2.5)] };
        let j = jet_seed_polynomial(&s, &p, &[1.0, -2.0, 0.5]).unwrap();
        assert_eq!(j.value(), c(2.5));
        assert!(j.coeffs()[1..].iter().all(|z| *z == ZERO));
    }

    #[test]
    fn reseeding_matches_recentering() {
        // shifting the expansion point equals evaluating the jet's polynomial there
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = JetSpace::new(4, 3);
        let p = MultiPoly::dense(4, 3, || rng.gen_range(-1.0..1.0));
        let a = [0.3, -0.7, 1.1, 0.2];
        let shift = [0.25, 0.5, -0.4, 0.9];
        let ja = jet_seed_polynomial(&s, &p, &a).unwrap();
        let b: Vec<f64> = a.iter().zip(&shift).map(|(x, d)| x + d).collect();
        let jb = jet_seed_polynomial(&s, &p, &b).unwrap();
        // value of jet a at displacement `shift` (degree 3 polynomial: exact)
        let mut val = Complex64::new(0.0, 0.0);
        for k in 0..s.len() {
            let m = s.monomial(k);
            val += ja.coeffs()[k] * m.iter().zip(&shift).map(|(&e, &d)| d.powi(e as i32)).product::<f64>();
        }
        assert!((val - jb.value()).norm() < 1e-12);
        assert!((jb.value().re - p.eval(&b)).abs() < 1e-12);
    }

    #[test]
    fn division_inverts_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s = JetSpace::new(3, 6);
        let mut rand_jet = |c0: f64| {
            let mut v: Vec<Complex64> =
                (0..s.len()).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            v[0] = c(c0);
            Jet::from_coeffs(&s, v)
        };
        let a = rand_jet(0.4);
        let b = rand_jet(1.7);
        let back = a.mul(&b).div(&b).unwrap();
        let err = (&back - &a).max_abs();
        assert!(err < 1e-12, "{err}");
    }

    #[test]
    fn sqrt_squares_back() {
        let s = JetSpace::new(2, 6);
        let x = Jet::coordinate(&s, 0, 1.3);
        let y = Jet::coordinate(&s, 1, -0.4);
        let r2 = &(&x * &x) + &(&y * &y);
        let r = r2.sqrt().unwrap();
        assert!((&(&r * &r) - &r2).max_abs() < 1e-13);
        // d r / d x = x / r
        let expected = 1.3 / (1.3f64 * 1.3 + 0.16).sqrt();
        assert!((r.coeff(&[1, 0]).re - expected).abs() < 1e-14);
    }

    #[test]
    fn zero_divisor_is_singular() {
        let s = JetSpace::new(2, 3);
        let x = Jet::coordinate(&s, 0, 0.0);
        assert!(matches!(x.recip(), Err(JetError::SingularPoint { .. })));
    }

    #[test]
    fn partial_of_cube() {
        let s = JetSpace::new(1, 4);
        let x = Jet::coordinate(&s, 0, 2.0);
        let cube = &(&x * &x) * &x;
        let d2 = cube.partial(0).partial(0);
        assert_eq!(d2.value(), c(12.0));
    }
}
