use super::{AlgebraError, OscillatorRealization, QuadraticAlgebraConstants, StructureFunction};
use nalgebra::DMatrix;
use serde::Serialize;

/// Matrices of the realization on the `(p + 1)`-dimensional Fock space `|0>..|p>`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockRealization {
    pub p: usize,
    pub u: f64,
    pub phi: Vec<f64>,
    /// Rounding scale of the `Phi` values, used as a floor when forming relative residuals.
    pub phi_scale: f64,
    pub number: DMatrix<f64>,
    pub b_dag: DMatrix<f64>,
    pub b: DMatrix<f64>,
    pub a: DMatrix<f64>,
    pub bmat: DMatrix<f64>,
    pub c: DMatrix<f64>,
}

/// `max |residual|` together with the largest entry among the terms that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residual {
    pub absolute: f64,
    pub scale: f64,
}

impl Residual {
    fn new(res: &DMatrix<f64>, terms: &[&DMatrix<f64>]) -> Self {
        Self::with_floor(res, terms, 0.0)
    }

    fn with_floor(res: &DMatrix<f64>, terms: &[&DMatrix<f64>], floor: f64) -> Self {
        let scale = terms.iter().map(|t| t.amax()).fold(floor, f64::max);
        Self { absolute: res.amax(), scale }
    }

    pub fn relative(&self) -> f64 {
        if self.scale == 0.0 {
            self.absolute
        } else {
            self.absolute / self.scale
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FockInvariants {
    pub number_raise: f64,
    pub number_lower: f64,
    pub lower_raise: Residual,
    pub raise_lower: Residual,
}

impl FockInvariants {
    pub fn max_relative(&self) -> f64 {
        self.number_raise
            .max(self.number_lower)
            .max(self.lower_raise.relative())
            .max(self.raise_lower.relative())
    }
}

fn comm(x: &DMatrix<f64>, y: &DMatrix<f64>) -> DMatrix<f64> {
    x * y - y * x
}

fn anti(x: &DMatrix<f64>, y: &DMatrix<f64>) -> DMatrix<f64> {
    x * y + y * x
}

/// `[D, X]` for diagonal `D = diag(dv)`, computed entrywise as `(d_i - d_j) X_ij`.
fn comm_diag(dv: &[f64], x: &DMatrix<f64>) -> DMatrix<f64> {
    DMatrix::from_fn(x.nrows(), x.ncols(), |i, j| (dv[i] - dv[j]) * x[(i, j)])
}

/// Builds `N`, `b^dagger`, `b`, `A(N)`, `B` and `C = [A, B]` on the Fock space of
/// dimension `p + 1` from a structure function that vanishes at 0 and `p + 1`.
pub fn build_fock_realization(
    constants: &QuadraticAlgebraConstants,
    sf: &StructureFunction,
    p: usize,
) -> Result<FockRealization, AlgebraError> {
    let dim = p + 1;
    let real = OscillatorRealization::new(*constants, sf.u());
    real.check_range(p)?;
    let phi: Vec<f64> = (0..=p + 1).map(|n| sf.eval_expanded(n as f64)).collect();
    for n in 1..=p {
        if phi[n] <= 0.0 || !phi[n].is_finite() {
            return Err(AlgebraError::NegativePhi { n, value: phi[n] });
        }
    }
    let phi_scale = (0..=p + 1).map(|n| sf.term_scale(n as f64)).fold(0.0, f64::max);
    let number = DMatrix::from_fn(dim, dim, |i, j| if i == j { i as f64 } else { 0.0 });
    let b_dag = DMatrix::from_fn(dim, dim, |i, j| if i == j + 1 { phi[i].sqrt() } else { 0.0 });
    let b = b_dag.transpose();
    let a = DMatrix::from_fn(dim, dim, |i, j| if i == j { real.a(i) } else { 0.0 });
    let mut bmat = DMatrix::zeros(dim, dim);
    for n in 0..dim {
        bmat[(n, n)] = real.b(n)?;
        if n + 1 < dim {
            let sq = real.rho(n)? * phi[n + 1];
            if sq < 0.0 {
                return Err(AlgebraError::NegativeCoupling { n, value: sq });
            }
            bmat[(n, n + 1)] = sq.sqrt();
            bmat[(n + 1, n)] = sq.sqrt();
        }
    }
    let c = comm(&a, &bmat);
    Ok(FockRealization { p, u: sf.u(), phi, phi_scale, number, b_dag, b, a, bmat, c })
}

impl FockRealization {
    pub fn dim(&self) -> usize {
        self.p + 1
    }

    /// `[N, b^dagger] = b^dagger`, `[N, b] = -b`, `b b^dagger = Phi(N + 1)`, `b^dagger b = Phi(N)`.
    /// The number-operator shifts are computed with integer index differences and
    /// are exact; the other two are relative to the largest `Phi` entry or its rounding scale.
    pub fn invariants(&self) -> FockInvariants {
        let dim = self.dim();
        let nv: Vec<f64> = (0..dim).map(|i| i as f64).collect();
        let number_raise = (comm_diag(&nv, &self.b_dag) - &self.b_dag).amax();
        let number_lower = (comm_diag(&nv, &self.b) + &self.b).amax();
        let phi_next = DMatrix::from_fn(dim, dim, |i, j| if i == j { self.phi[i + 1] } else { 0.0 });
        let phi_here = DMatrix::from_fn(dim, dim, |i, j| if i == j { self.phi[i] } else { 0.0 });
        let br = &self.b * &self.b_dag;
        let rb = &self.b_dag * &self.b;
        FockInvariants {
            number_raise,
            number_lower,
            lower_raise: Residual::with_floor(&(&br - &phi_next), &[&br, &phi_next], self.phi_scale),
            raise_lower: Residual::with_floor(&(&rb - &phi_here), &[&rb, &phi_here], self.phi_scale),
        }
    }

    /// Largest term magnitude of `A(n)` before cancellation.
    fn a_term_scale(&self, k: &QuadraticAlgebraConstants) -> f64 {
        self.a_scale(k.gamma, k.epsilon)
    }

    fn a_scale(&self, gamma: f64, epsilon: f64) -> f64 {
        let x = self.u.abs() + self.p as f64;
        0.5 * gamma.abs() * (x * x + 0.25 + (epsilon / (gamma * gamma)).abs())
    }

    /// Casimir operator built from the matrices.
    pub fn casimir_matrix(&self, k: &QuadraticAlgebraConstants) -> DMatrix<f64> {
        let (a, b, c) = (&self.a, &self.bmat, &self.c);
        let b2 = b * b;
        c * c - anti(a, &b2) * k.gamma + &b2 * (k.gamma * k.gamma - k.epsilon) - b * (2.0 * k.zeta)
            + (a * a) * k.d
            + a * (2.0 * k.z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CommutationReport {
    pub ab_c: Residual,
    pub ac: Residual,
    pub bc: Residual,
    pub jacobi: Residual,
}

impl CommutationReport {
    pub fn max_relative(&self) -> f64 {
        self.ab_c.relative().max(self.ac.relative()).max(self.bc.relative()).max(self.jacobi.relative())
    }
}

/// Residuals of the three defining relations and of the Jacobi identity.
pub fn verify_commutation(f: &FockRealization, k: &QuadraticAlgebraConstants) -> CommutationReport {
    let (a, b, c) = (&f.a, &f.bmat, &f.c);
    let id = DMatrix::<f64>::identity(f.dim(), f.dim());
    let ab = comm(a, b);
    let ab_c = Residual::new(&(&ab - c), &[&ab, c]);

    let ac = comm(a, c);
    let t1 = anti(a, b) * k.gamma;
    let t2 = b * k.epsilon;
    let t3 = &id * k.zeta;
    let ac_res = Residual::with_floor(&(&ac - &t1 - &t2 - &t3), &[&ac, &t1, &t2, &t3], k.zeta.abs());

    let bc = comm(b, c);
    let s1 = (b * b) * (-k.gamma);
    let s2 = a * k.d;
    let s3 = &id * k.z;
    let a_scale = f.a_term_scale(k);
    let bc_res = Residual::with_floor(
        &(&bc - &s1 - &s2 - &s3),
        &[&bc, &s1, &s2, &s3],
        k.d.abs() * a_scale + k.z.abs(),
    );

    let j1 = comm(a, &bc);
    let j2 = comm(b, &comm(c, a));
    let j3 = comm(c, &ab);
    let jacobi = Residual::new(&(&j1 + &j2 + &j3), &[&j1, &j2, &j3]);

    CommutationReport { ab_c, ac: ac_res, bc: bc_res, jacobi }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CasimirReport {
    /// Mean diagonal of the Casimir matrix.
    pub value: f64,
    /// Largest deviation from `value * identity`, relative to the largest term.
    pub non_scalar: f64,
    /// `|value - K| / max(|K|, term scale)`.
    pub catalog_deviation: f64,
    pub commutes_a: f64,
    pub commutes_b: f64,
}

pub fn verify_casimir(f: &FockRealization, k: &QuadraticAlgebraConstants) -> CasimirReport {
    let km = f.casimir_matrix(k);
    let dim = f.dim();
    let value = km.diagonal().mean();
    let a_scale = f.a_term_scale(k);
    let scale = (&f.c * &f.c)
        .amax()
        .max(k.d.abs() * a_scale * a_scale + 2.0 * k.z.abs() * a_scale)
        .max(km.amax())
        .max(k.casimir.abs());
    let id = DMatrix::<f64>::identity(dim, dim);
    let non_scalar = (&km - &id * value).amax() / scale.max(f64::MIN_POSITIVE);
    let catalog_deviation = (value - k.casimir).abs() / scale.max(f64::MIN_POSITIVE);
    let ka = comm(&km, &f.a);
    let kb = comm(&km, &f.bmat);
    let ca = (km.amax() * f.a.amax()).max(f64::MIN_POSITIVE);
    let cb = (km.amax() * f.bmat.amax()).max(f64::MIN_POSITIVE);
    CasimirReport {
        value,
        non_scalar,
        catalog_deviation,
        commutes_a: ka.amax() / ca,
        commutes_b: kb.amax() / cb,
    }
}

/// A relation pair as it is printed for a specific system, in the form
/// `[A, C] = ac_anti {A, B} + ac_b B + ac_const` and
/// `[B, C] = bc_b2 B^2 + bc_a A + bc_const`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PrintedRelation {
    pub ac_anti: f64,
    pub ac_b: f64,
    pub ac_const: f64,
    pub bc_b2: f64,
    pub bc_a: f64,
    pub bc_const: f64,
}

impl PrintedRelation {
    pub fn from_constants(k: &QuadraticAlgebraConstants) -> Self {
        Self { ac_anti: k.gamma, ac_b: k.epsilon, ac_const: k.zeta, bc_b2: -k.gamma, bc_a: k.d, bc_const: k.z }
    }

    /// Relative residuals of the two relations on a realization.
    pub fn residuals(&self, f: &FockRealization) -> (Residual, Residual) {
        let (a, b, c) = (&f.a, &f.bmat, &f.c);
        let id = DMatrix::<f64>::identity(f.dim(), f.dim());
        let ac = comm(a, c);
        let t1 = anti(a, b) * self.ac_anti;
        let t2 = b * self.ac_b;
        let t3 = &id * self.ac_const;
        // same floors as verify_commutation: terms that cancel to roundoff are not a violation
        let r1 = Residual::with_floor(&(&ac - &t1 - &t2 - &t3), &[&ac, &t1, &t2, &t3], self.ac_const.abs());
        let bc = comm(b, c);
        let s1 = (b * b) * self.bc_b2;
        let s2 = a * self.bc_a;
        let s3 = &id * self.bc_const;
        let floor = self.bc_a.abs() * f.a_scale(self.ac_anti, self.ac_b) + self.bc_const.abs();
        let r2 = Residual::with_floor(&(&bc - &s1 - &s2 - &s3), &[&bc, &s1, &s2, &s3], floor);
        (r1, r2)
    }
}
