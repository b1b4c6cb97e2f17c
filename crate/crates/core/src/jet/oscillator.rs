//! Operators of the 8D singular oscillator
//! `H = -hbar^2/2 Laplacian + omega^2 u^2/2 + lambda1/rho1^2 + lambda2/rho2^2`,
//! `rho1^2 = u0^2 + .. + u3^2`, `rho2^2 = u4^2 + .. + u7^2`.

use super::{DiffOp, Jet, JetError, JetPoint, ScalarFn};
use crate::catalog::Oscillator8DParams;
use num_complex::Complex64;
use serde::Serialize;

const DIM: usize = 8;

/// Normalization of the block rotation generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GeneratorConvention {
    /// `J_ij = u_i d_j - u_j d_i` as written; `J^2 <= 0`.
    Bare,
    /// `J_ij = -i hbar (u_i d_j - u_j d_i)`; `J^2 >= 0`.
    Momentum,
}

#[derive(Debug, Clone)]
pub struct OscillatorOperators {
    pub convention: GeneratorConvention,
    pub hamiltonian: DiffOp,
    /// `J_ij`, `0 <= i < j <= 3`, in lexicographic order.
    pub j: Vec<((usize, usize), DiffOp)>,
    /// `K_ij`, `4 <= i < j <= 7`.
    pub k: Vec<((usize, usize), DiffOp)>,
    pub j2: DiffOp,
    /// Built from `K_ij`.
    pub k2: DiffOp,
    /// `-(u^2 Laplacian - u_i u_j d_i d_j - 7 u_i d_i)/4 + u^2 (lambda1/rho1^2 + lambda2/rho2^2)/(2 hbar^2)`,
    /// i.e. minus a quarter of the bare so(8) Casimir plus the angular potential.
    pub a: DiffOp,
    /// Difference of the two 4D block Hamiltonians.
    pub b: DiffOp,
    /// Full Laplacian with `+hbar^2/2`, as written.
    pub b_literal: DiffOp,
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn laplacian(vars: std::ops::Range<usize>) -> DiffOp {
    DiffOp::sum(vars.map(|i| DiffOp::partial(i) * DiffOp::partial(i)).collect())
}

fn rotation(i: usize, j: usize) -> DiffOp {
    DiffOp::coordinate(i) * DiffOp::partial(j) - DiffOp::coordinate(j) * DiffOp::partial(i)
}

fn block_inverse(q: &JetPoint, lo: usize) -> Result<Jet, JetError> {
    q.norm_sq(lo..lo + 4).recip()
}

pub fn build_osc8d_operators(p: &Oscillator8DParams, convention: GeneratorConvention) -> OscillatorOperators {
    let Oscillator8DParams { omega, lambda1: l1, lambda2: l2, hbar: h, .. } = *p;
    let norm = match convention {
        GeneratorConvention::Bare => c(1.0),
        GeneratorConvention::Momentum => Complex64::new(0.0, -h),
    };
    let gens = |lo: usize| {
        let mut out = Vec::new();
        for i in lo..lo + 4 {
            for j in (i + 1)..lo + 4 {
                out.push(((i, j), rotation(i, j).scale(norm)));
            }
        }
        out
    };
    let j = gens(0);
    let k = gens(4);
    let square_sum = |g: &[((usize, usize), DiffOp)]| DiffOp::sum(g.iter().map(|(_, op)| op * op).collect());
    let j2 = square_sum(&j);
    let k2 = square_sum(&k);

    let potential = ScalarFn::new("omega^2 u^2/2 + lambda1/rho1^2 + lambda2/rho2^2", move |q| {
        let mut v = q.norm_sq(0..DIM).scale(c(0.5 * omega * omega));
        v.add_scaled(&block_inverse(q, 0)?, c(l1));
        v.add_scaled(&block_inverse(q, 4)?, c(l2));
        Ok(v)
    });
    let hamiltonian = laplacian(0..DIM).scale_re(-0.5 * h * h) + DiffOp::function(potential);

    // -(1/4) (u^2 Laplacian - u_i u_j d_i d_j - 7 u_i d_i)
    let u2 = DiffOp::sum((0..DIM).map(|i| DiffOp::coordinate(i) * DiffOp::coordinate(i)).collect());
    let mut mixed = Vec::new();
    for a in 0..DIM {
        for b in 0..DIM {
            mixed.push(DiffOp::compose(vec![
                DiffOp::coordinate(a),
                DiffOp::coordinate(b),
                DiffOp::partial(a),
                DiffOp::partial(b),
            ]));
        }
    }
    let euler = DiffOp::sum((0..DIM).map(|i| DiffOp::coordinate(i) * DiffOp::partial(i)).collect());
    let angular = (u2 * laplacian(0..DIM) - DiffOp::sum(mixed) - euler.scale_re(7.0)).scale_re(-0.25);
    let weighted = |s: f64| {
        DiffOp::function(ScalarFn::new(format!("{s} u^2 (lambda1/rho1^2 + lambda2/rho2^2)"), move |q| {
            let mut v = block_inverse(q, 0)?.scale(c(l1));
            v.add_scaled(&block_inverse(q, 4)?, c(l2));
            Ok(v.mul(&q.norm_sq(0..DIM)).scale(c(s)))
        }))
    };
    let a = &angular + &weighted(0.5 / (h * h));

    let split = ScalarFn::new("omega^2 (rho1^2 - rho2^2)/2 + lambda1/rho1^2 - lambda2/rho2^2", move |q| {
        let mut v = (&q.norm_sq(0..4) - &q.norm_sq(4..DIM)).scale(c(0.5 * omega * omega));
        v.add_scaled(&block_inverse(q, 0)?, c(l1));
        v.add_scaled(&block_inverse(q, 4)?, c(-l2));
        Ok(v)
    });
    let b = (laplacian(0..4) - laplacian(4..DIM)).scale_re(-0.5 * h * h) + DiffOp::function(split.clone());
    let b_literal = laplacian(0..DIM).scale_re(0.5 * h * h) + DiffOp::function(split);

    OscillatorOperators { convention, hamiltonian, j, k, j2, k2, a, b, b_literal }
}
