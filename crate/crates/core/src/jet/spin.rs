use super::JetError;
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Irreducible su(2) representation of spin `T` (integer or half-integer).
#[derive(Debug, Clone, PartialEq)]
pub struct SpinRep {
    t: f64,
    mats: [DMatrix<Complex64>; 3],
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

impl SpinRep {
    pub fn new(t: f64) -> Result<Self, JetError> {
        if !(t >= 0.0) || (2.0 * t).fract() != 0.0 {
            return Err(JetError::InvalidSpin { t });
        }
        let dim = (2.0 * t) as usize + 1;
        // basis |T, m> with m = T, T-1, ..., -T
        let m = |k: usize| t - k as f64;
        let mut raise = DMatrix::zeros(dim, dim);
        for k in 1..dim {
            raise[(k - 1, k)] = c((t * (t + 1.0) - m(k) * (m(k) + 1.0)).sqrt());
        }
        let lower = raise.adjoint();
        let t1 = (&raise + &lower) * c(0.5);
        let t2 = (&raise - &lower) * Complex64::new(0.0, -0.5);
        let t3 = DMatrix::from_fn(dim, dim, |i, j| if i == j { c(m(i)) } else { c(0.0) });
        Ok(Self { t, mats: [t1, t2, t3] })
    }

    pub fn spin(&self) -> f64 {
        self.t
    }

    pub fn dim(&self) -> usize {
        self.mats[2].nrows()
    }

    /// `T_a` for `a = 0, 1, 2` (the first, second and third generator).
    pub fn generator(&self, a: usize) -> &DMatrix<Complex64> {
        &self.mats[a]
    }

    pub fn casimir_value(&self) -> f64 {
        self.t * (self.t + 1.0)
    }

    /// `max |[T_a, T_b] - i eps_abc T_c|` over all pairs.
    pub fn commutation_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..3 {
            for b in 0..3 {
                let lhs = &self.mats[a] * &self.mats[b] - &self.mats[b] * &self.mats[a];
                let mut rhs = DMatrix::zeros(self.dim(), self.dim());
                for cc in 0..3 {
                    let e = levi_civita(a, b, cc);
                    if e != 0.0 {
                        rhs += &self.mats[cc] * Complex64::new(0.0, e);
                    }
                }
                worst = worst.max((lhs - rhs).camax());
            }
        }
        worst
    }

    /// `max |T^2 - T(T+1) I|`.
    pub fn casimir_residual(&self) -> f64 {
        let sq = self.mats.iter().fold(DMatrix::zeros(self.dim(), self.dim()), |acc, m| acc + m * m);
        (sq - DMatrix::identity(self.dim(), self.dim()) * c(self.casimir_value())).camax()
    }
}

pub fn levi_civita(a: usize, b: usize, c: usize) -> f64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

pub fn pauli(k: usize) -> [[Complex64; 2]; 2] {
    let (z, o, i) = (c(0.0), c(1.0), Complex64::new(0.0, 1.0));
    match k {
        0 => [[z, o], [o, z]],
        1 => [[z, -i], [i, z]],
        _ => [[o, z], [z, -o]],
    }
}

/// The 5x5 matrices `tau^a` coupling the coordinates to the monopole field:
/// blocks `(x1, x2)` and `(x3, x4)`, with `x0` decoupled.
pub fn tau(a: usize) -> [[Complex64; 5]; 5] {
    let mut out = [[c(0.0); 5]; 5];
    let i = Complex64::new(0.0, 1.0);
    let mut put = |r0: usize, c0: usize, block: [[Complex64; 2]; 2], s: Complex64| {
        for r in 0..2 {
            for q in 0..2 {
                out[r0 + r][c0 + q] = block[r][q] * s * 0.5;
            }
        }
    };
    match a {
        0 => {
            put(1, 3, pauli(0), -i);
            put(3, 1, pauli(0), i);
        }
        1 => {
            put(1, 3, pauli(2), i);
            put(3, 1, pauli(2), -i);
        }
        _ => {
            put(1, 1, pauli(1), c(1.0));
            put(3, 3, pauli(1), c(1.0));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_up_to_spin_two() {
        for k in 0..=4 {
            let r = SpinRep::new(k as f64 / 2.0).unwrap();
            assert_eq!(r.dim(), k + 1);
            assert!(r.commutation_residual() < 1e-14);
            assert!(r.casimir_residual() < 1e-14);
        }
    }

    #[test]
    fn spin_half_is_half_pauli() {
        let r = SpinRep::new(0.5).unwrap();
        for a in 0..3 {
            let p = pauli(a);
            for i in 0..2 {
                for j in 0..2 {
                    assert!((r.generator(a)[(i, j)] - p[i][j] * 0.5).norm() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn rejects_non_half_integer() {
        assert!(SpinRep::new(0.3).is_err());
        assert!(SpinRep::new(-0.5).is_err());
    }

    #[test]
    fn tau_is_imaginary_antisymmetric() {
        for a in 0..3 {
            let t = tau(a);
            for i in 0..5 {
                for j in 0..5 {
                    assert!(t[i][j].re == 0.0);
                    assert!((t[i][j] + t[j][i]).norm() < 1e-15);
                }
            }
        }
    }
}
