//! Operators of the generalized 5D Kepler system and of its su(2) monopole
//! extension. Both come from one builder: the plain Kepler system is the spin-0
//! case, where every gauge term multiplies a 1x1 zero matrix.

use super::spin::{levi_civita, tau};
use super::{DiffOp, Jet, JetError, JetPoint, JetSpace, SampleDomain, ScalarFn, SpinRep};
use crate::catalog::{Kepler5DParams, YCMParams};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::sync::Arc;

const DIM: usize = 5;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn r_jet(p: &JetPoint) -> Result<Jet, JetError> {
    p.norm_sq(0..DIM).sqrt()
}

/// `r + s x0` for `s = +-1`.
fn r_shift(p: &JetPoint, s: f64) -> Result<Jet, JetError> {
    let mut out = r_jet(p)?;
    out.add_scaled(p.coord(0), c(s));
    Ok(out)
}

/// Gauge potential `A_i^a = 2i/(r(r + x0)) tau^a_ij x_j` on the given point.
pub fn gauge_potential(p: &JetPoint, i: usize, a: usize) -> Result<Jet, JetError> {
    let t = tau(a);
    let mut lin = Jet::zero(p.space());
    for j in 0..DIM {
        if t[i][j] != c(0.0) {
            lin.add_scaled(p.coord(j), t[i][j]);
        }
    }
    let den = r_jet(p)?.mul(&r_shift(p, 1.0)?);
    Ok(lin.div(&den)?.scale(Complex64::new(0.0, 2.0)))
}

/// Field strength `F_ik^a = d_i A_k^a - d_k A_i^a + eps_abc A_i^b A_k^c`, computed one
/// degree higher and truncated so the derivative loses nothing.
pub fn field_strength(p: &JetPoint, i: usize, k: usize, a: usize) -> Result<Jet, JetError> {
    field_strength_with(p, i, k, a, |q, m, b| gauge_potential(q, m, b))
}

fn field_strength_with(
    p: &JetPoint,
    i: usize,
    k: usize,
    a: usize,
    pot: impl Fn(&JetPoint, usize, usize) -> Result<Jet, JetError>,
) -> Result<Jet, JetError> {
    let q = p.lifted();
    let mut out = &pot(q, k, a)?.partial(i) - &pot(q, i, a)?.partial(k);
    for b in 0..3 {
        for cc in 0..3 {
            let e = levi_civita(a, b, cc);
            if e != 0.0 {
                out.add_scaled(&pot(q, i, b)?.mul(&pot(q, k, cc)?), c(e));
            }
        }
    }
    Ok(out.restrict_to(p.space()))
}

/// Operator trees of the (monopole-coupled) generalized Kepler system.
#[derive(Debug, Clone)]
pub struct MonopoleOperators {
    pub hbar: f64,
    pub spin_dim: usize,
    pub hamiltonian: DiffOp,
    /// `pi_j = -i hbar d_j - hbar A_j^a T_a`.
    pub momentum: Vec<DiffOp>,
    /// `angular[i][k] = L_ik`, all `i, k` in `0..5` (zero on the diagonal).
    pub angular: Vec<Vec<DiffOp>>,
    pub runge_lenz: Vec<DiffOp>,
    /// `sum L_ij^2` over `1 <= i < j <= 4`, the central element of the quadratic algebra.
    pub l2: DiffOp,
    /// `sum L_ij^2` over all `0 <= i < j <= 4`.
    pub l2_full: DiffOp,
    /// Integral `A` built on the full rotation Casimir `l2_full`.
    pub a: DiffOp,
    /// `A` with the four-dimensional `l2` exactly as the formula is written.
    pub a_literal: DiffOp,
    pub b: DiffOp,
}

impl MonopoleOperators {
    pub fn l(&self, i: usize, k: usize) -> &DiffOp {
        &self.angular[i][k]
    }

    pub fn m(&self, k: usize) -> &DiffOp {
        &self.runge_lenz[k]
    }
}

fn build(p: &Kepler5DParams, rep: &SpinRep) -> MonopoleOperators {
    let Kepler5DParams { c0, c1, c2, hbar: h, .. } = *p;
    let ih = Complex64::new(0.0, -h);
    let gens: Vec<DiffOp> = (0..3).map(|a| DiffOp::matrix(rep.generator(a).clone())).collect();
    // shared so each point evaluates every component once (on both jet degrees)
    let potentials: Arc<Vec<Vec<ScalarFn>>> = Arc::new(
        (0..DIM)
            .map(|j| (0..3).map(|a| ScalarFn::new(format!("A_{j}^{a}"), move |q| gauge_potential(q, j, a))).collect())
            .collect(),
    );

    let momentum: Vec<DiffOp> = (0..DIM)
        .map(|j| {
            let mut parts = vec![DiffOp::partial(j).scale(ih)];
            for (a, t) in gens.iter().enumerate() {
                // the matrix acts first so zero generators short-circuit the product
                parts.push((DiffOp::function(potentials[j][a].clone()) * t.clone()).scale_re(-h));
            }
            DiffOp::sum(parts)
        })
        .collect();

    let mut angular = vec![vec![DiffOp::zero(); DIM]; DIM];
    for i in 0..DIM {
        for k in 0..DIM {
            if i == k {
                continue;
            }
            let mut parts = vec![
                DiffOp::coordinate(i) * momentum[k].clone(),
                -(DiffOp::coordinate(k) * momentum[i].clone()),
            ];
            for (a, t) in gens.iter().enumerate() {
                let pots = potentials.clone();
                let f = ScalarFn::new(format!("r^2 F_{i}{k}^{a}"), move |q| {
                    let fs = field_strength_with(q, i, k, a, |p, m, b| p.eval(&pots[m][b]))?;
                    Ok(fs.mul(&q.norm_sq(0..DIM)))
                });
                parts.push((DiffOp::function(f) * t.clone()).scale_re(-h));
            }
            angular[i][k] = DiffOp::sum(parts);
        }
    }

    let runge_lenz: Vec<DiffOp> = (0..DIM)
        .map(|k| {
            let mut parts = Vec::new();
            for i in 0..DIM {
                if i != k {
                    parts.push(&momentum[i] * &angular[i][k]);
                    parts.push(&angular[i][k] * &momentum[i]);
                }
            }
            let coulomb = ScalarFn::new(format!("2 c0 x_{k}/r"), move |q| {
                Ok(q.coord(k).div(&r_jet(q)?)?.scale(c(2.0 * c0)))
            });
            parts.push(DiffOp::function(coulomb));
            DiffOp::sum(parts).scale_re(0.5)
        })
        .collect();

    let casimir = |range: std::ops::Range<usize>| {
        let mut parts = Vec::new();
        for i in range.clone() {
            for j in (i + 1)..range.end {
                parts.push(&angular[i][j] * &angular[i][j]);
            }
        }
        DiffOp::sum(parts)
    };
    let l2 = casimir(1..DIM);
    let l2_full = casimir(0..DIM);

    let kinetic = DiffOp::sum(momentum.iter().map(|pi| pi * pi).collect()).scale_re(0.5);
    let t2 = rep.casimir_value();
    let potential = ScalarFn::new("V", move |q| {
        let r = r_jet(q)?;
        let mut v = r.recip()?.scale(c(-c0));
        let r2 = q.norm_sq(0..DIM);
        v.add_scaled(&r2.recip()?, c(0.5 * h * h * t2));
        v.add_scaled(&r.mul(&r_shift(q, 1.0)?).recip()?, c(c1));
        v.add_scaled(&r.mul(&r_shift(q, -1.0)?).recip()?, c(c2));
        Ok(v)
    });
    let hamiltonian = kinetic + DiffOp::function(potential);

    let a_extra = DiffOp::function(ScalarFn::new("2 r c1/(r + x0) + 2 r c2/(r - x0)", move |q| {
        let r = r_jet(q)?;
        let mut v = r.div(&r_shift(q, 1.0)?)?.scale(c(2.0 * c1));
        v.add_scaled(&r.div(&r_shift(q, -1.0)?)?, c(2.0 * c2));
        Ok(v)
    }));
    let b_extra = DiffOp::function(ScalarFn::new("c1 (r - x0)/(r (r + x0)) - c2 (r + x0)/(r (r - x0))", move |q| {
        let r = r_jet(q)?;
        let (rp, rm) = (r_shift(q, 1.0)?, r_shift(q, -1.0)?);
        let mut v = rm.div(&r.mul(&rp))?.scale(c(c1));
        v.add_scaled(&rp.div(&r.mul(&rm))?, c(-c2));
        Ok(v)
    }));

    MonopoleOperators {
        hbar: h,
        spin_dim: rep.dim(),
        a: &l2_full + &a_extra,
        a_literal: &l2 + &a_extra,
        b: &runge_lenz[0] + &b_extra,
        hamiltonian,
        momentum,
        angular,
        runge_lenz,
        l2,
        l2_full,
    }
}

/// Generalized Kepler system: `P_i = -i hbar d_i`, `L_ij = x_i P_j - x_j P_i`,
/// `M_k = (P_i L_ik + L_ik P_i)/2 + c0 x_k/r`, and the integrals `A`, `B`.
pub fn build_kepler_operators(p: &Kepler5DParams) -> MonopoleOperators {
    build(p, &SpinRep::new(0.0).expect("spin 0"))
}

/// Monopole-coupled system on `(2T + 1)`-component wavefunctions.
pub fn build_ycm_operators(p: &YCMParams, rep: &SpinRep) -> MonopoleOperators {
    build(&p.kepler, rep)
}

/// `sum_a F_ik^a T_a` evaluated at a point, for diagnostics.
pub fn field_strength_matrix(p: &JetPoint, rep: &SpinRep, i: usize, k: usize) -> Result<DMatrix<Complex64>, JetError> {
    let mut m = DMatrix::zeros(rep.dim(), rep.dim());
    for a in 0..3 {
        m += rep.generator(a) * field_strength(p, i, k, a)?.value();
    }
    Ok(m)
}

/// Reality of the gauge potential and antisymmetry of its field strength, sampled
/// on random points. Values are the largest magnitudes over all jet coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaugeDiagnostics {
    pub points: usize,
    /// Largest `|Im A_i^a|`.
    pub max_imaginary: f64,
    /// Largest `|F_ik^a + F_ki^a|`.
    pub max_antisymmetry: f64,
    /// Largest `|F_ik^a|`, for scale.
    pub max_field: f64,
}

pub fn gauge_diagnostics(points: usize, degree: usize, seed: u64) -> Result<GaugeDiagnostics, JetError> {
    let space = JetSpace::new(DIM, degree);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = GaugeDiagnostics { points, max_imaginary: 0.0, max_antisymmetry: 0.0, max_field: 0.0 };
    for _ in 0..points {
        let x = SampleDomain::Kepler.sample(&mut rng);
        let q = JetPoint::new(&space, &x)?;
        for a in 0..3 {
            for i in 0..DIM {
                let pot = gauge_potential(&q, i, a)?;
                for z in pot.coeffs() {
                    out.max_imaginary = out.max_imaginary.max(z.im.abs());
                }
                for j in 0..DIM {
                    let f = field_strength(&q, i, j, a)?;
                    let sum = &f + &field_strength(&q, j, i, a)?;
                    out.max_antisymmetry = out.max_antisymmetry.max(sum.max_abs());
                    out.max_field = out.max_field.max(f.max_abs());
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{commutator_residual, TrialSettings};

    #[test]
    fn potential_is_real_and_field_antisymmetric() {
        let g = gauge_diagnostics(10, 2, 3).unwrap();
        assert!(g.max_imaginary < 1e-14, "{g:?}");
        assert!(g.max_antisymmetry < 1e-13 * (1.0 + g.max_field), "{g:?}");
        assert!(g.max_field > 1e-3);
    }

    #[test]
    fn potential_has_no_x0_component() {
        let space = JetSpace::new(DIM, 1);
        let q = JetPoint::new(&space, &[0.3, 0.5, -0.7, 1.1, 0.2]).unwrap();
        for a in 0..3 {
            assert_eq!(gauge_potential(&q, 0, a).unwrap().max_abs(), 0.0);
        }
    }

    #[test]
    fn spin_zero_monopole_matches_kepler() {
        let k = Kepler5DParams { c0: 1.0, c1: 0.25, c2: 0.0, hbar: 1.0, l: 0.0 };
        let y = YCMParams { kepler: k, isospin: 0.0, j_label: 0.0, l_label: 0.0 };
        let s = TrialSettings { trials: 4, ..Default::default() };
        let a = build_kepler_operators(&k);
        let b = build_ycm_operators(&y, &SpinRep::new(0.0).unwrap());
        let ra = commutator_residual(&a.hamiltonian, &a.b, None, SampleDomain::Kepler, 1, &s).unwrap();
        let rb = commutator_residual(&b.hamiltonian, &b.b, None, SampleDomain::Kepler, 1, &s).unwrap();
        assert_eq!(ra, rb);
    }

    #[test]
    fn plain_limits_of_the_integrals() {
        // c1 = c2 = 0: A is the rotation Casimir and B is M_0
        let k = Kepler5DParams { c0: 1.0, c1: 0.0, c2: 0.0, hbar: 1.0, l: 0.0 };
        let ops = build_kepler_operators(&k);
        let s = TrialSettings { trials: 3, ..Default::default() };
        let d = SampleDomain::Kepler;
        let ra = crate::jet::identity_residual(&(&ops.a - &ops.l2_full), d, 1, &s).unwrap();
        let rb = crate::jet::identity_residual(&(&ops.b - ops.m(0)), d, 1, &s).unwrap();
        assert!(ra.max_absolute < 1e-13 && rb.max_absolute < 1e-13, "{ra:?} {rb:?}");
    }
}
