//! Named batches of operator identities for each system.

use super::{
    build_kepler_operators, build_osc8d_operators, build_ycm_operators, commutator_residual, fit_relation, DiffOp,
    GeneratorConvention, IdentityReport, JetError, MonopoleOperators, RelationFit, RelationTerm, SampleDomain,
    SpinRep, TrialSettings,
};
use crate::catalog::{Kepler5DParams, Oscillator8DParams, YCMParams};
use num_complex::Complex64;
use serde::Serialize;

/// Whether a check tests this crate's own construction or a formula as written.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Required,
    Finding,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OperatorCheck {
    pub name: String,
    pub claim: String,
    pub kind: CheckKind,
    pub tolerance: f64,
    pub report: IdentityReport,
}

impl OperatorCheck {
    pub fn holds(&self) -> bool {
        self.report.max_residual < self.tolerance
    }
}

struct Batch<'a> {
    domain: SampleDomain,
    spin_dim: usize,
    settings: &'a TrialSettings,
    out: Vec<OperatorCheck>,
}

impl Batch<'_> {
    fn check(
        &mut self,
        name: String,
        claim: &str,
        kind: CheckKind,
        tolerance: f64,
        a: &DiffOp,
        b: &DiffOp,
        expected: Option<&DiffOp>,
    ) -> Result<(), JetError> {
        let report = commutator_residual(a, b, expected, self.domain, self.spin_dim, self.settings)?;
        self.out.push(OperatorCheck { name, claim: claim.to_string(), kind, tolerance, report });
        Ok(())
    }
}

const INTEGRAL_TOL: f64 = 1e-10;
const LIE_TOL: f64 = 1e-11;

fn i_hbar(h: f64) -> Complex64 {
    Complex64::new(0.0, h)
}

fn delta(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

/// `[L_ij, L_mn]` minus its so(5) value, for a given set of `L`.
fn so5_expected(ops: &MonopoleOperators, i: usize, j: usize, m: usize, n: usize) -> DiffOp {
    let ih = i_hbar(ops.hbar);
    let mut parts = Vec::new();
    for (d, s, (p, q)) in [(delta(i, m), 1.0, (j, n)), (delta(j, m), -1.0, (i, n)), (delta(i, n), -1.0, (j, m)), (delta(j, n), 1.0, (i, m))] {
        if d != 0.0 && p != q {
            parts.push(ops.l(p, q).scale(ih * s));
        }
    }
    DiffOp::sum(parts)
}

fn pairs(range: std::ops::Range<usize>) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in range.clone() {
        for j in (i + 1)..range.end {
            out.push((i, j));
        }
    }
    out
}

fn integral_checks(ops: &MonopoleOperators, batch: &mut Batch, kind: CheckKind, what: &str) -> Result<(), JetError> {
    let h = &ops.hamiltonian;
    let claim = format!("{what}: the integral commutes with H");
    batch.check("[H,A]".into(), &claim, kind, INTEGRAL_TOL, h, &ops.a, None)?;
    batch.check("[H,B]".into(), &claim, kind, INTEGRAL_TOL, h, &ops.b, None)?;
    batch.check("[H,L2]".into(), &claim, kind, INTEGRAL_TOL, h, &ops.l2, None)?;
    let central = format!("{what}: the four-dimensional Casimir is central");
    batch.check("[A,L2]".into(), &central, kind, INTEGRAL_TOL, &ops.a, &ops.l2, None)?;
    batch.check("[B,L2]".into(), &central, kind, INTEGRAL_TOL, &ops.b, &ops.l2, None)?;
    for (i, j) in pairs(1..5) {
        batch.check(format!("[H,L{i}{j}]"), &claim, kind, INTEGRAL_TOL, h, ops.l(i, j), None)?;
    }
    Ok(())
}

/// Integrals of the generalized Kepler system, plus the variant of `A` built on the
/// four-dimensional Casimir alone (a finding: it does not commute with `H`).
pub fn kepler_integral_checks(p: &Kepler5DParams, settings: &TrialSettings) -> Result<Vec<OperatorCheck>, JetError> {
    let ops = build_kepler_operators(p);
    let mut batch = Batch { domain: SampleDomain::Kepler, spin_dim: 1, settings, out: Vec::new() };
    integral_checks(&ops, &mut batch, CheckKind::Required, "generalized Kepler")?;
    batch.check(
        "[H,A] with four-dimensional L2".into(),
        "A written with the so(4) Casimir commutes with H",
        CheckKind::Finding,
        INTEGRAL_TOL,
        &ops.hamiltonian,
        &ops.a_literal,
        None,
    )?;
    Ok(batch.out)
}

fn lie_checks(ops: &MonopoleOperators, batch: &mut Batch, kind: CheckKind, all: bool) -> Result<(), JetError> {
    let claim = "so(5) commutation relations of L_ij";
    let ps = pairs(0..5);
    for (a, &(i, j)) in ps.iter().enumerate() {
        for (b, &(m, n)) in ps.iter().enumerate() {
            if !all && (b <= a || (a + b) % 7 != 0) {
                continue;
            }
            let expected = so5_expected(ops, i, j, m, n);
            batch.check(format!("[L{i}{j},L{m}{n}]"), claim, kind, LIE_TOL, ops.l(i, j), ops.l(m, n), Some(&expected))?;
        }
    }
    Ok(())
}

fn dynamical_checks(ops: &MonopoleOperators, batch: &mut Batch, kind: CheckKind) -> Result<(), JetError> {
    let ih = i_hbar(ops.hbar);
    for (i, j) in pairs(0..5) {
        for k in 0..5 {
            let expected = DiffOp::sum(vec![
                ops.m(j).scale(ih * delta(i, k)),
                ops.m(i).scale(ih * -delta(j, k)),
            ]);
            batch.check(
                format!("[L{i}{j},M{k}]"),
                "M_k transforms as a vector under L_ij",
                kind,
                LIE_TOL,
                ops.l(i, j),
                ops.m(k),
                Some(&expected),
            )?;
        }
    }
    for (i, k) in pairs(0..5) {
        let expected = (&ops.hamiltonian * ops.l(i, k)).scale(ih * -2.0);
        batch.check(
            format!("[M{i},M{k}]"),
            "[M_i, M_k] = -2 i hbar H L_ik",
            kind,
            INTEGRAL_TOL,
            ops.m(i),
            ops.m(k),
            Some(&expected),
        )?;
    }
    Ok(())
}

/// All so(5) relations among the `L_ij` of the plain Kepler system.
pub fn so5_closure_checks(p: &Kepler5DParams, settings: &TrialSettings) -> Result<Vec<OperatorCheck>, JetError> {
    let ops = build_kepler_operators(p);
    let mut batch = Batch { domain: SampleDomain::Kepler, spin_dim: 1, settings, out: Vec::new() };
    lie_checks(&ops, &mut batch, CheckKind::Required, true)?;
    Ok(batch.out)
}

/// `[L, M]` and `[M, M]` relations; meaningful for `c1 = c2 = 0`.
pub fn kepler_dynamical_checks(p: &Kepler5DParams, settings: &TrialSettings) -> Result<Vec<OperatorCheck>, JetError> {
    let ops = build_kepler_operators(p);
    let mut batch = Batch { domain: SampleDomain::Kepler, spin_dim: 1, settings, out: Vec::new() };
    let h = ops.hamiltonian.clone();
    for k in 0..5 {
        batch.check(format!("[H,M{k}]"), "M_k commutes with H", CheckKind::Required, INTEGRAL_TOL, &h, ops.m(k), None)?;
    }
    dynamical_checks(&ops, &mut batch, CheckKind::Required)?;
    Ok(batch.out)
}

/// Monopole-coupled system on spin `rep`. Everything here is a finding: the
/// operators are transcribed as written and nonzero residuals are reported.
pub fn ycm_checks(p: &YCMParams, rep: &SpinRep, settings: &TrialSettings) -> Result<Vec<OperatorCheck>, JetError> {
    let ops = build_ycm_operators(p, rep);
    let mut batch = Batch { domain: SampleDomain::Kepler, spin_dim: rep.dim(), settings, out: Vec::new() };
    let bare = Kepler5DParams { c1: 0.0, c2: 0.0, ..p.kepler };
    let plain = build_ycm_operators(&YCMParams { kepler: bare, ..*p }, rep);
    for (i, k) in pairs(0..5) {
        batch.check(
            format!("[H0,L{i}{k}]"),
            "monopole angular momenta commute with H at c1 = c2 = 0",
            CheckKind::Finding,
            INTEGRAL_TOL,
            &plain.hamiltonian,
            plain.l(i, k),
            None,
        )?;
    }
    for k in 0..5 {
        batch.check(
            format!("[H0,M{k}]"),
            "monopole Runge-Lenz vector commutes with H at c1 = c2 = 0",
            CheckKind::Finding,
            INTEGRAL_TOL,
            &plain.hamiltonian,
            plain.m(k),
            None,
        )?;
    }
    lie_checks(&plain, &mut batch, CheckKind::Finding, false)?;
    integral_checks(&ops, &mut batch, CheckKind::Finding, "monopole with inverse-square terms")?;
    Ok(batch.out)
}

/// Integrals of the 8D singular oscillator and their mutual commutation, plus the
/// full-Laplacian reading of `B` as a finding.
pub fn osc8d_checks(
    p: &Oscillator8DParams,
    convention: GeneratorConvention,
    settings: &TrialSettings,
) -> Result<Vec<OperatorCheck>, JetError> {
    let ops = build_osc8d_operators(p, convention);
    let mut batch = Batch { domain: SampleDomain::Oscillator, spin_dim: 1, settings, out: Vec::new() };
    let h = ops.hamiltonian.clone();
    let claim = "8D oscillator: the integral commutes with H";
    let req = CheckKind::Required;
    batch.check("[H,A]".into(), claim, req, INTEGRAL_TOL, &h, &ops.a, None)?;
    batch.check("[H,B]".into(), claim, req, INTEGRAL_TOL, &h, &ops.b, None)?;
    batch.check("[H,J2]".into(), claim, req, INTEGRAL_TOL, &h, &ops.j2, None)?;
    batch.check("[H,K2]".into(), claim, req, INTEGRAL_TOL, &h, &ops.k2, None)?;
    for ((i, j), op) in ops.j.iter().chain(&ops.k) {
        let name = if *i < 4 { format!("[H,J{i}{j}]") } else { format!("[H,K{i}{j}]") };
        batch.check(name, claim, req, INTEGRAL_TOL, &h, op, None)?;
    }
    let central = "8D oscillator: both block Casimirs are central";
    batch.check("[A,J2]".into(), central, req, INTEGRAL_TOL, &ops.a, &ops.j2, None)?;
    batch.check("[A,K2]".into(), central, req, INTEGRAL_TOL, &ops.a, &ops.k2, None)?;
    batch.check("[B,J2]".into(), central, req, INTEGRAL_TOL, &ops.b, &ops.j2, None)?;
    batch.check("[B,K2]".into(), central, req, INTEGRAL_TOL, &ops.b, &ops.k2, None)?;
    batch.check(
        "[H,B] with full Laplacian".into(),
        "B read with the full Laplacian commutes with H",
        CheckKind::Finding,
        INTEGRAL_TOL,
        &h,
        &ops.b_literal,
        None,
    )?;
    Ok(batch.out)
}

/// Which operator algebra to close.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ClosureSystem {
    Kepler(Kepler5DParams),
    Oscillator(Oscillator8DParams, GeneratorConvention),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedFit {
    pub relation: String,
    pub fit: RelationFit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosureReport {
    pub system: ClosureSystem,
    pub relations: Vec<NamedFit>,
}

/// `[A, C]` and `[B, C]` with `C = [A, B]`, checked as operator identities with `H`
/// and the central Casimirs kept as operators. Each relation is reported with the
/// written coefficients and with least-squares coefficients over the same terms.
pub fn verify_quadratic_closure(system: ClosureSystem, settings: &TrialSettings) -> Result<ClosureReport, JetError> {
    let (a, b, ac, bc, domain) = match system {
        ClosureSystem::Kepler(p) => {
            let ops = build_kepler_operators(&p);
            let Kepler5DParams { c0, c1, c2, hbar: h, .. } = p;
            let (a, b, hm) = (ops.a.clone(), ops.b.clone(), ops.hamiltonian.clone());
            let ac = vec![
                RelationTerm::new("{A,B}", DiffOp::anticommutator(&a, &b), 2.0 * h * h),
                RelationTerm::new("B", b.clone(), 8.0 * h.powi(4)),
                RelationTerm::new("1", DiffOp::identity(), -4.0 * (c1 - c2) * h * h * c0),
            ];
            let bc = vec![
                RelationTerm::new("B^2", &b * &b, -2.0 * h * h),
                RelationTerm::new("H A", &hm * &a, 8.0 * h * h),
                RelationTerm::new("L2 H", &ops.l2 * &hm, -4.0 * h * h),
                RelationTerm::new("H", hm.clone(), 16.0 * h.powi(4) - 8.0 * h * h * (c1 + c2)),
                RelationTerm::new("1", DiffOp::identity(), 2.0 * h * h * c0 * c0),
            ];
            (a, b, ac, bc, SampleDomain::Kepler)
        }
        ClosureSystem::Oscillator(p, conv) => {
            let ops = build_osc8d_operators(&p, conv);
            let Oscillator8DParams { omega: w, lambda1: l1, lambda2: l2, hbar: h, .. } = p;
            let (a, b, hm) = (ops.a.clone(), ops.b.clone(), ops.hamiltonian.clone());
            let ac = vec![
                RelationTerm::new("{A,B}", DiffOp::anticommutator(&a, &b), 2.0),
                RelationTerm::new("B", b.clone(), 8.0),
                RelationTerm::new("J2 H", &ops.j2 * &hm, 1.0),
                RelationTerm::new("K2 H", &ops.k2 * &hm, -1.0),
                RelationTerm::new("H", hm.clone(), -2.0 * (l1 - l2) / (h * h)),
            ];
            let bc = vec![
                RelationTerm::new("B^2", &b * &b, 4.0 * h * h),
                RelationTerm::new("H^2", &hm * &hm, 2.0),
                RelationTerm::new("A", a.clone(), -16.0 * h * h * w * w),
                RelationTerm::new("J2", ops.j2.clone(), -4.0 * h * h * w * w),
                RelationTerm::new("K2", ops.k2.clone(), -4.0 * h * h * w * w),
                RelationTerm::new("1", DiffOp::identity(), 8.0 * (l1 + l2 - 4.0 * h * h) * w * w),
            ];
            (a, b, ac, bc, SampleDomain::Oscillator)
        }
    };
    let c = DiffOp::commutator(&a, &b);
    // enough equations for a well-posed fit of every coefficient
    let fit_settings = TrialSettings { trials: settings.trials.max(3 * bc.len()), ..*settings };
    let relations = vec![
        NamedFit { relation: "[A,C]".into(), fit: fit_relation(&DiffOp::commutator(&a, &c), &ac, domain, 1, &fit_settings)? },
        NamedFit { relation: "[B,C]".into(), fit: fit_relation(&DiffOp::commutator(&b, &c), &bc, domain, 1, &fit_settings)? },
    ];
    Ok(ClosureReport { system, relations })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> TrialSettings {
        TrialSettings { trials: 3, ..Default::default() }
    }

    #[test]
    fn so5_expected_matches_a_hand_case() {
        // [L12, L23] = -i hbar L13
        let p = Kepler5DParams { c0: 1.0, c1: 0.0, c2: 0.0, hbar: 0.7, l: 0.0 };
        let ops = build_kepler_operators(&p);
        let e = so5_expected(&ops, 1, 2, 2, 3);
        let hand = ops.l(1, 3).scale(Complex64::new(0.0, -0.7));
        let r = super::super::identity_residual(&(&e - &hand), SampleDomain::Kepler, 1, &quick()).unwrap();
        assert!(r.max_absolute < 1e-14, "{r:?}");
    }

    #[test]
    fn generalized_kepler_integrals_commute() {
        let p = Kepler5DParams { c0: 1.0, c1: 0.25, c2: 0.25, hbar: 1.0, l: 0.0 };
        for c in kepler_integral_checks(&p, &quick()).unwrap() {
            assert_eq!(c.holds(), c.kind == CheckKind::Required, "{} {:e}", c.name, c.report.max_residual);
        }
    }

    #[test]
    fn commutator_with_identity_is_exactly_zero() {
        let p = Kepler5DParams { c0: 1.0, c1: 0.25, c2: 0.0, hbar: 1.0, l: 0.0 };
        let ops = build_kepler_operators(&p);
        let c = DiffOp::commutator(&DiffOp::identity(), &ops.b);
        let r = commutator_residual(&DiffOp::identity(), &c, None, SampleDomain::Kepler, 1, &quick()).unwrap();
        assert_eq!(r.max_absolute, 0.0);
        // C built as the commutator tree satisfies [A, B] - C = 0 exactly
        let cab = DiffOp::commutator(&ops.a, &ops.b);
        let r = commutator_residual(&ops.a, &ops.b, Some(&cab), SampleDomain::Kepler, 1, &quick()).unwrap();
        assert_eq!(r.max_absolute, 0.0);
    }

    #[test]
    fn oscillator_closure_exposes_the_square_coefficient() {
        let p = Oscillator8DParams { omega: 1.0, lambda1: 0.3, lambda2: 0.1, hbar: 1.0, j: 0.0, k: 0.0 };
        let rep = verify_quadratic_closure(ClosureSystem::Oscillator(p, GeneratorConvention::Bare), &quick()).unwrap();
        let bc = &rep.relations[1].fit;
        assert!(bc.printed_residual > 1e-3 && bc.fitted_residual < 1e-10);
        assert!((bc.coefficients[0].fitted[0] + 2.0).abs() < 1e-9);
    }
}
