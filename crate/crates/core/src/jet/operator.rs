use super::{Jet, JetError, JetSpace};
use nalgebra::DMatrix;
use num_complex::Complex64;
use std::cell::{OnceCell, RefCell};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

type FnBody = dyn Fn(&JetPoint) -> Result<Jet, JetError> + Send + Sync;

/// A scalar coefficient function, evaluated to a jet at each sample point.
#[derive(Clone)]
pub struct ScalarFn {
    id: u64,
    label: String,
    body: Arc<FnBody>,
}

static NEXT_FN_ID: AtomicU64 = AtomicU64::new(0);

impl ScalarFn {
    pub fn new(label: impl Into<String>, body: impl Fn(&JetPoint) -> Result<Jet, JetError> + Send + Sync + 'static) -> Self {
        Self { id: NEXT_FN_ID.fetch_add(1, Ordering::Relaxed), label: label.into(), body: Arc::new(body) }
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for ScalarFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarFn({})", self.label)
    }
}

/// A sample point together with its coordinate jets and a per-point cache of
/// evaluated coefficient functions.
pub struct JetPoint {
    space: Arc<JetSpace>,
    point: Vec<f64>,
    coords: Vec<Jet>,
    cache: RefCell<HashMap<u64, Jet>>,
    lifted: OnceCell<Box<JetPoint>>,
}

impl JetPoint {
    pub fn new(space: &Arc<JetSpace>, point: &[f64]) -> Result<Self, JetError> {
        if point.len() != space.n_vars() {
            return Err(JetError::DimensionMismatch { expected: space.n_vars(), found: point.len() });
        }
        let coords = point.iter().enumerate().map(|(v, &x)| Jet::coordinate(space, v, x)).collect();
        Ok(Self {
            space: space.clone(),
            point: point.to_vec(),
            coords,
            cache: RefCell::new(HashMap::new()),
            lifted: OnceCell::new(),
        })
    }

    pub fn space(&self) -> &Arc<JetSpace> {
        &self.space
    }

    pub fn point(&self) -> &[f64] {
        &self.point
    }

    pub fn coord(&self, v: usize) -> &Jet {
        &self.coords[v]
    }

    /// `sum x_v^2` over the given coordinates.
    pub fn norm_sq(&self, vars: impl IntoIterator<Item = usize>) -> Jet {
        let mut acc = Jet::zero(&self.space);
        for v in vars {
            acc = &acc + &(&self.coords[v] * &self.coords[v]);
        }
        acc
    }

    /// The same point one degree higher, for coefficients that involve a derivative.
    pub fn lifted(&self) -> &JetPoint {
        self.lifted.get_or_init(|| {
            Box::new(JetPoint::new(&self.space.lifted(), &self.point).expect("same dimension"))
        })
    }

    pub fn eval(&self, f: &ScalarFn) -> Result<Jet, JetError> {
        if let Some(j) = self.cache.borrow().get(&f.id) {
            return Ok(j.clone());
        }
        let j = (f.body)(self)?;
        if !Arc::ptr_eq(j.space(), &self.space) {
            return Err(JetError::DimensionMismatch { expected: self.space.len(), found: j.space().len() });
        }
        self.cache.borrow_mut().insert(f.id, j.clone());
        Ok(j)
    }
}

#[derive(Debug)]
enum Node {
    Zero,
    Identity,
    Partial(usize),
    Coordinate(usize),
    Function(ScalarFn),
    Matrix(DMatrix<Complex64>),
    Scale(Complex64, DiffOp),
    Sum(Vec<DiffOp>),
    Compose(Vec<DiffOp>),
}

/// Immutable differential-operator tree acting on vectors of jets (one jet per
/// internal spin component).
#[derive(Clone, Debug)]
pub struct DiffOp(Arc<Node>);

/// A spin-vector of jets.
pub type SpinJet = Vec<Jet>;

impl DiffOp {
    fn node(n: Node) -> Self {
        DiffOp(Arc::new(n))
    }

    pub fn zero() -> Self {
        Self::node(Node::Zero)
    }

    pub fn identity() -> Self {
        Self::node(Node::Identity)
    }

    pub fn partial(v: usize) -> Self {
        Self::node(Node::Partial(v))
    }

    /// Multiplication by the coordinate `x_v`.
    pub fn coordinate(v: usize) -> Self {
        Self::node(Node::Coordinate(v))
    }

    pub fn function(f: ScalarFn) -> Self {
        Self::node(Node::Function(f))
    }

    /// Constant matrix on the spin factor.
    pub fn matrix(m: DMatrix<Complex64>) -> Self {
        Self::node(Node::Matrix(m))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::node(Node::Scale(s, self.clone()))
    }

    pub fn scale_re(&self, s: f64) -> Self {
        self.scale(Complex64::new(s, 0.0))
    }

    pub fn sum(ops: Vec<DiffOp>) -> Self {
        Self::node(Node::Sum(ops))
    }

    /// `ops[0] ∘ ops[1] ∘ ...` (the last one acts first).
    pub fn compose(ops: Vec<DiffOp>) -> Self {
        Self::node(Node::Compose(ops))
    }

    pub fn commutator(a: &DiffOp, b: &DiffOp) -> Self {
        a * b - b * a
    }

    pub fn anticommutator(a: &DiffOp, b: &DiffOp) -> Self {
        a * b + b * a
    }

    pub fn is_zero(&self) -> bool {
        matches!(*self.0, Node::Zero)
    }

    /// Highest total derivative order in the tree.
    pub fn order(&self) -> usize {
        match &*self.0 {
            Node::Zero | Node::Identity | Node::Coordinate(_) | Node::Function(_) | Node::Matrix(_) => 0,
            Node::Partial(_) => 1,
            Node::Scale(_, op) => op.order(),
            Node::Sum(ops) => ops.iter().map(DiffOp::order).max().unwrap_or(0),
            Node::Compose(ops) => ops.iter().map(DiffOp::order).sum(),
        }
    }

    /// Top-level summands with their scalar factors pulled out.
    pub fn terms(&self) -> Vec<DiffOp> {
        match &*self.0 {
            Node::Sum(ops) => ops.iter().flat_map(DiffOp::terms).collect(),
            Node::Scale(s, op) => op.terms().into_iter().map(|t| t.scale(*s)).collect(),
            Node::Zero => Vec::new(),
            _ => vec![self.clone()],
        }
    }

    pub fn apply(&self, ctx: &JetPoint, f: &[Jet]) -> Result<SpinJet, JetError> {
        match &*self.0 {
            Node::Zero => Ok(f.iter().map(|j| Jet::zero(j.space())).collect()),
            Node::Identity => Ok(f.to_vec()),
            Node::Partial(v) => Ok(f.iter().map(|j| j.partial(*v)).collect()),
            Node::Coordinate(v) => {
                let x0 = Complex64::new(ctx.point()[*v], 0.0);
                Ok(f.iter()
                    .map(|j| {
                        let mut out = j.shift(*v);
                        out.add_scaled(j, x0);
                        out
                    })
                    .collect())
            }
            Node::Function(func) => {
                if f.iter().all(Jet::is_zero) {
                    return Ok(f.to_vec());
                }
                let g = ctx.eval(func)?;
                Ok(f.iter().map(|j| j * &g).collect())
            }
            Node::Matrix(m) => {
                if m.nrows() != f.len() || m.ncols() != f.len() {
                    return Err(JetError::DimensionMismatch { expected: f.len(), found: m.nrows() });
                }
                let space = ctx.space();
                Ok((0..f.len())
                    .map(|i| {
                        let mut out = Jet::zero(space);
                        for (j, fj) in f.iter().enumerate() {
                            if m[(i, j)] != Complex64::new(0.0, 0.0) {
                                out.add_scaled(fj, m[(i, j)]);
                            }
                        }
                        out
                    })
                    .collect())
            }
            Node::Scale(s, op) => Ok(op.apply(ctx, f)?.into_iter().map(|j| j.scale(*s)).collect()),
            Node::Sum(ops) => {
                let mut acc: SpinJet = f.iter().map(|j| Jet::zero(j.space())).collect();
                for op in ops {
                    for (a, b) in acc.iter_mut().zip(op.apply(ctx, f)?) {
                        *a = &*a + &b;
                    }
                }
                Ok(acc)
            }
            Node::Compose(ops) => {
                let mut cur = f.to_vec();
                for op in ops.iter().rev() {
                    cur = op.apply(ctx, &cur)?;
                }
                Ok(cur)
            }
        }
    }
}

impl Add for DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: DiffOp) -> DiffOp {
        DiffOp::sum(vec![self, rhs])
    }
}

impl Sub for DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: DiffOp) -> DiffOp {
        DiffOp::sum(vec![self, rhs.scale_re(-1.0)])
    }
}

impl Neg for DiffOp {
    type Output = DiffOp;
    fn neg(self) -> DiffOp {
        self.scale_re(-1.0)
    }
}

impl Mul for DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: DiffOp) -> DiffOp {
        DiffOp::compose(vec![self, rhs])
    }
}

impl Add for &DiffOp {
    type Output = DiffOp;
    fn add(self, rhs: &DiffOp) -> DiffOp {
        self.clone() + rhs.clone()
    }
}

impl Sub for &DiffOp {
    type Output = DiffOp;
    fn sub(self, rhs: &DiffOp) -> DiffOp {
        self.clone() - rhs.clone()
    }
}

impl Mul for &DiffOp {
    type Output = DiffOp;
    fn mul(self, rhs: &DiffOp) -> DiffOp {
        self.clone() * rhs.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::{jet_seed_polynomial, MultiPoly};

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn rotation_on_product() {
        let s = JetSpace::new(5, 6);
        let ctx = JetPoint::new(&s, &[1.0, 2.0, 1.0, 1.0, 1.0]).unwrap();
        // x0 d1 - x1 d0 applied to x0 x1 gives x0^2 - x1^2
        let op = DiffOp::coordinate(0) * DiffOp::partial(1) - DiffOp::coordinate(1) * DiffOp::partial(0);
        let f = MultiPoly { n_vars: 5, terms: vec![(vec![1, 1, 0, 0, 0], 1.0)] };
        let fj = jet_seed_polynomial(&s, &f, ctx.point()).unwrap();
        let out = op.apply(&ctx, &[fj]).unwrap();
        assert!((out[0].value() - c(-3.0)).norm() < 1e-15);
    }

    #[test]
    fn second_derivative_of_cube() {
        let s = JetSpace::new(2, 6);
        let ctx = JetPoint::new(&s, &[1.5, -0.5]).unwrap();
        let f = MultiPoly { n_vars: 2, terms: vec![(vec![3, 0], 1.0)] };
        let fj = jet_seed_polynomial(&s, &f, ctx.point()).unwrap();
        let out = (DiffOp::partial(0) * DiffOp::partial(0)).apply(&ctx, &[fj]).unwrap();
        assert!((out[0].value() - c(9.0)).norm() < 1e-14);
    }

    #[test]
    fn function_then_reciprocal_is_identity() {
        let s = JetSpace::new(3, 6);
        let ctx = JetPoint::new(&s, &[0.7, -1.2, 0.4]).unwrap();
        let r = ScalarFn::new("r", |p| p.norm_sq(0..3).sqrt());
        let inv_r = ScalarFn::new("1/r", |p| p.norm_sq(0..3).sqrt()?.recip());
        let op = DiffOp::function(r) * DiffOp::function(inv_r);
        let f = MultiPoly::dense(3, 3, || 0.3);
        let fj = jet_seed_polynomial(&s, &f, ctx.point()).unwrap();
        let out = op.apply(&ctx, &[fj.clone()]).unwrap();
        assert!((&out[0] - &fj).max_abs() < 1e-13);
    }

    #[test]
    fn matrix_commutes_with_partial() {
        let s = JetSpace::new(2, 4);
        let ctx = JetPoint::new(&s, &[0.3, 0.9]).unwrap();
        let m = DMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(2.0), Complex64::new(0.0, 1.0)]);
        let a = DiffOp::matrix(m.clone()) * DiffOp::partial(1);
        let b = DiffOp::partial(1) * DiffOp::matrix(m);
        let f1 = MultiPoly::dense(2, 3, || 0.5);
        let f2 = MultiPoly { n_vars: 2, terms: vec![(vec![1, 2], -1.0)] };
        let state = vec![
            jet_seed_polynomial(&s, &f1, ctx.point()).unwrap(),
            jet_seed_polynomial(&s, &f2, ctx.point()).unwrap(),
        ];
        let (x, y) = (a.apply(&ctx, &state).unwrap(), b.apply(&ctx, &state).unwrap());
        for (p, q) in x.iter().zip(&y) {
            assert!((p - q).max_abs() == 0.0);
        }
    }

    #[test]
    fn order_counts_compositions() {
        let d = DiffOp::partial(0);
        let op = DiffOp::commutator(&(&d * &d), &(DiffOp::coordinate(1) * d.clone()));
        assert_eq!(op.order(), 3);
    }
}
