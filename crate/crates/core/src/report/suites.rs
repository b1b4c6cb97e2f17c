//! Check batteries shared by the command line and the acceptance tests.

use super::Finding;
use crate::algebra::{
    build_fock_realization, find_representations, verify_casimir, verify_commutation, PrintedRelation,
    QuadraticAlgebraConstants, RepresentationSolution, StructureFamily,
};
use crate::catalog::{
    kepler5d_constants, kepler5d_m_parameters, kepler5d_m_structure, kepler5d_structure_energy, osc8d_constants,
    osc8d_m_parameters, osc8d_m_structure, osc8d_printed_relation, osc8d_structure_energy, Kepler5DParams,
    KeplerFamily, KeplerPrintedClosedForm, Oscillator8DParams, OscillatorFamily, OscillatorPrintedClosedForm, YCMParams,
};
use crate::hurwitz::{
    bilinear_norm_residual, duality_spectrum_check, euler_identity_residual, hurwitz_image, Point8, X0Convention,
};
use crate::jet::{
    gauge_diagnostics, kepler_dynamical_checks, kepler_integral_checks, osc8d_checks, so5_closure_checks,
    verify_quadratic_closure, ycm_checks, CheckKind, ClosureSystem, GeneratorConvention, OperatorCheck, SpinRep,
    TrialSettings,
};
use crate::ode::{radial_oscillator_eigensolve, GridSettings, RadialOscillatorSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;

const FOCK_TOL: f64 = 1e-12;
const RELATION_TOL: f64 = 1e-12;
const JACOBI_TOL: f64 = 1e-10;
const CASIMIR_TOL: f64 = 1e-10;
const PRINTED_TOL: f64 = 1e-9;
const ENERGY_TOL: f64 = 1e-12;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

/// Fock-space checks on one representation.
fn representation_findings(
    prefix: &str,
    constants: &QuadraticAlgebraConstants,
    sol: &RepresentationSolution,
    family: &dyn StructureFamily,
    printed: &[(&str, PrintedRelation)],
) -> Vec<Finding> {
    let mut out = Vec::new();
    let sf = sol.structure_function(family);
    let fock = match build_fock_realization(constants, &sf, sol.p) {
        Ok(f) => f,
        Err(e) => {
            out.push(Finding::error(format!("{prefix}/fock"), "the deformed oscillator realization exists", e));
            return out;
        }
    };
    out.push(
        Finding::required(
            format!("{prefix}/fock-invariants"),
            "[N, b+] = b+, [N, b] = -b, b b+ = Phi(N + 1), b+ b = Phi(N)",
            fock.invariants().max_relative(),
            FOCK_TOL,
        )
        .with("u", sol.u)
        .with("energy", sol.energy),
    );
    let comm = verify_commutation(&fock, constants);
    let rel3 = comm.ab_c.relative().max(comm.ac.relative()).max(comm.bc.relative());
    out.push(Finding::required(
        format!("{prefix}/relations"),
        "A(N), B(b, b+) satisfy the three defining relations",
        rel3,
        RELATION_TOL,
    ));
    out.push(Finding::required(format!("{prefix}/jacobi"), "Jacobi identity of A, B, C", comm.jacobi.relative(), JACOBI_TOL));
    let cas = verify_casimir(&fock, constants);
    out.push(
        Finding::required(
            format!("{prefix}/casimir"),
            "the Casimir is a scalar commuting with A and B and equals the catalog value",
            cas.non_scalar.max(cas.catalog_deviation).max(cas.commutes_a).max(cas.commutes_b),
            CASIMIR_TOL,
        )
        .with("value", cas.value)
        .with("catalog", constants.casimir),
    );
    for (label, rel) in printed {
        let (ac, bc) = rel.residuals(&fock);
        out.push(
            Finding::finding(
                format!("{prefix}/printed-relations/{label}"),
                "the relations as written hold on the realization",
                ac.relative().max(bc.relative()),
                PRINTED_TOL,
            )
            .with("ac", ac.relative())
            .with("bc", bc.relative()),
        );
    }
    out
}

/// Representations of the Kepler quadratic algebra for `p = 0..=p_max`. The physical
/// representation is the one with the largest `u`.
pub fn kepler_algebra_findings(params: &Kepler5DParams, p_max: usize) -> Vec<Finding> {
    let family = KeplerFamily::new(*params);
    let search = find_representations(&family, p_max, Some(&KeplerPrintedClosedForm(*params)));
    let mut out = Vec::new();
    for p in 0..=p_max {
        let prefix = format!("algebra/kepler5d/p={p}");
        let sols: Vec<&RepresentationSolution> = search.for_p(p).collect();
        let mut count = Finding::finding(
            format!("{prefix}/unitary-count"),
            "number of unitary representations of this dimension (physical one plus extras)",
            0.0,
            1.0,
        )
        .with("count", sols.len() as f64);
        for (i, s) in sols.iter().enumerate() {
            count = count.with(format!("energy[{i}]"), s.energy).with(format!("u[{i}]"), s.u);
        }
        out.push(count);
        let Some(phys) = sols.iter().copied().max_by(|a, b| a.u.total_cmp(&b.u)) else {
            out.push(Finding::error(format!("{prefix}/physical"), "a unitary representation exists", "none found"));
            continue;
        };
        let expected = kepler5d_structure_energy(params, p).unwrap_or(f64::NAN);
        out.push(
            Finding::required(
                format!("{prefix}/energy"),
                "largest-u representation at E = -c0^2/(2 hbar^2 (p + 1 + (m1 + m2)/2)^2), hbar^2 m_i^2 = 4 c_i + l + hbar^2",
                rel(phys.energy, expected),
                ENERGY_TOL,
            )
            .with("energy", phys.energy)
            .with("closed_form", expected),
        );
        let constants = kepler5d_constants(params, phys.energy);
        let printed = [("as-written", PrintedRelation::from_constants(&constants))];
        out.extend(representation_findings(&prefix, &constants, phys, &family, &printed));
        if let Some(cf) = search.closed_form.iter().find(|c| c.p == p) {
            out.push(
                Finding::finding(
                    format!("{prefix}/printed-spectrum"),
                    "E = -c0^2/(hbar^2 (p + 1 + (m1 + m2)/2)^2) with hbar^2 m_i^2 = 16 c_i + 4 l + 4 hbar^2 is a representation",
                    cf.residual_zero.max(cf.residual_top),
                    crate::algebra::CONSTRAINT_TOLERANCE,
                )
                .with("printed_energy", cf.energy)
                .with("algebraic_energy", phys.energy)
                .with("relative_gap", rel(cf.energy, phys.energy)),
            );
        }
    }
    let (pm1, pm2) = kepler5d_m_parameters(params).unwrap_or((f64::NAN, f64::NAN));
    let (sm1, sm2) = kepler5d_m_structure(params).unwrap_or((f64::NAN, f64::NAN));
    out.push(
        Finding::finding(
            "algebra/kepler5d/m-parameters",
            "hbar^2 m_i^2 = 16 c_i + 4 l + 4 hbar^2 factors the structure function",
            rel(pm1, sm1).max(rel(pm2, sm2)),
            ENERGY_TOL,
        )
        .with("m1_printed", pm1)
        .with("m2_printed", pm2)
        .with("m1_structure", sm1)
        .with("m2_structure", sm2),
    );
    // leading coefficient of the general structure function over E hbar^18
    let e = kepler5d_structure_energy(params, 0).unwrap_or(-1.0);
    let implied = family.polynomial(e).leading() / (e * params.hbar.powi(18));
    out.push(
        Finding::finding(
            "algebra/kepler5d/prefactor",
            "the factored structure function carries the prefactor 6191456 E hbar^18",
            rel(6191456.0, implied),
            ENERGY_TOL,
        )
        .with("implied", implied)
        .with("printed", 6191456.0)
        .note("the implied prefactor is 3 * 2^21 = 6291456"),
    );
    out
}

/// Representations of the oscillator quadratic algebra. The physical representation
/// is the one with the smallest `u` (`u = 1/2 - E/(2 omega hbar)`).
pub fn oscillator_algebra_findings(params: &Oscillator8DParams, p_max: usize) -> Vec<Finding> {
    let family = OscillatorFamily::new(*params);
    let search = find_representations(&family, p_max, Some(&OscillatorPrintedClosedForm(*params)));
    let mut out = Vec::new();
    for p in 0..=p_max {
        let prefix = format!("algebra/osc8d/p={p}");
        let sols: Vec<&RepresentationSolution> = search.for_p(p).collect();
        let mut count = Finding::finding(
            format!("{prefix}/unitary-count"),
            "number of unitary representations of this dimension (physical one plus extras)",
            0.0,
            1.0,
        )
        .with("count", sols.len() as f64);
        for (i, s) in sols.iter().enumerate() {
            count = count.with(format!("energy[{i}]"), s.energy).with(format!("u[{i}]"), s.u);
        }
        out.push(count);
        let Some(phys) = sols.iter().copied().min_by(|a, b| a.u.total_cmp(&b.u)) else {
            out.push(Finding::error(format!("{prefix}/physical"), "a unitary representation exists", "none found"));
            continue;
        };
        let expected = osc8d_structure_energy(params, p).unwrap_or(f64::NAN);
        out.push(
            Finding::required(
                format!("{prefix}/energy"),
                "smallest-u representation at E = 2 omega hbar (p + 1 + (m1 + m2)/2), m_i^2 = 1 - j_i + 2 lambda_i/hbar^2",
                rel(phys.energy, expected),
                ENERGY_TOL,
            )
            .with("energy", phys.energy)
            .with("closed_form", expected),
        );
        let constants = osc8d_constants(params, phys.energy);
        let printed = [
            ("as-written", osc8d_printed_relation(params, phys.energy)),
            ("square-coefficient=-gamma", PrintedRelation::from_constants(&constants)),
        ];
        out.extend(representation_findings(&prefix, &constants, phys, &family, &printed));
        if let Some(cf) = search.closed_form.iter().find(|c| c.p == p) {
            out.push(
                Finding::finding(
                    format!("{prefix}/printed-spectrum"),
                    "E = 2 omega hbar (p + 1 + (m1 + m2)/2) with hbar^2 m_i = hbar^2 j^2 + 2 lambda_i + hbar^2 is a representation",
                    cf.residual_zero.max(cf.residual_top),
                    crate::algebra::CONSTRAINT_TOLERANCE,
                )
                .with("printed_energy", cf.energy)
                .with("algebraic_energy", phys.energy)
                .with("relative_gap", rel(cf.energy, phys.energy)),
            );
        }
    }
    let (pm1, pm2) = osc8d_m_parameters(params);
    let (sm1, sm2) = osc8d_m_structure(params).unwrap_or((f64::NAN, f64::NAN));
    out.push(
        Finding::finding(
            "algebra/osc8d/m-parameters",
            "hbar^2 m_i = hbar^2 j^2 + 2 lambda_i + hbar^2 gives the indicial m",
            rel(pm1, sm1).max(rel(pm2, sm2)),
            ENERGY_TOL,
        )
        .with("m1_printed", pm1)
        .with("m2_printed", pm2)
        .with("m1_structure", sm1)
        .with("m2_structure", sm2),
    );
    out
}

fn from_check(prefix: &str, c: &OperatorCheck) -> Finding {
    let name = format!("{prefix}/{}", c.name);
    let f = match c.kind {
        CheckKind::Required => Finding::required(name, c.claim.clone(), c.report.max_residual, c.tolerance),
        CheckKind::Finding => Finding::finding(name, c.claim.clone(), c.report.max_residual, c.tolerance),
    };
    f.with("trials", c.report.trials as f64).with("max_absolute", c.report.max_absolute).with("scale", c.report.scale)
}

fn push_checks(out: &mut Vec<Finding>, prefix: &str, name: &str, checks: Result<Vec<OperatorCheck>, crate::jet::JetError>) {
    match checks {
        Ok(cs) => out.extend(cs.iter().map(|c| from_check(prefix, c))),
        Err(e) => out.push(Finding::error(format!("{prefix}/{name}"), "operator checks ran", e)),
    }
}

fn closure_findings(out: &mut Vec<Finding>, prefix: &str, system: ClosureSystem, settings: &TrialSettings) {
    match verify_quadratic_closure(system, settings) {
        Ok(rep) => {
            for nf in &rep.relations {
                let mut f = Finding::finding(
                    format!("{prefix}/closure/{}", nf.relation),
                    "the relation as written holds as an operator identity",
                    nf.fit.printed_residual,
                    PRINTED_TOL,
                )
                .with("fitted_residual", nf.fit.fitted_residual);
                for c in &nf.fit.coefficients {
                    f = f.with(format!("{}.printed", c.label), c.printed[0]).with(format!("{}.fitted", c.label), c.fitted[0]);
                }
                out.push(f);
            }
        }
        Err(e) => out.push(Finding::error(format!("{prefix}/closure"), "closure fit ran", e)),
    }
}

/// Integrals, so(5) closure, the `[L, M]`, `[M, M]` algebra at `c1 = c2 = 0`, and
/// the quadratic closure of the generalized Kepler system.
pub fn kepler_operator_findings(params: &Kepler5DParams, settings: &TrialSettings) -> Vec<Finding> {
    let mut out = Vec::new();
    let prefix = "jet/kepler5d";
    push_checks(&mut out, prefix, "integrals", kepler_integral_checks(params, settings));
    push_checks(&mut out, prefix, "so5", so5_closure_checks(params, settings));
    let bare = Kepler5DParams { c1: 0.0, c2: 0.0, ..*params };
    push_checks(&mut out, &format!("{prefix}/c1=c2=0"), "dynamical", kepler_dynamical_checks(&bare, settings));
    closure_findings(&mut out, prefix, ClosureSystem::Kepler(*params), settings);
    out
}

pub fn oscillator_operator_findings(params: &Oscillator8DParams, settings: &TrialSettings) -> Vec<Finding> {
    let mut out = Vec::new();
    push_checks(&mut out, "jet/osc8d", "integrals", osc8d_checks(params, GeneratorConvention::Bare, settings));
    closure_findings(&mut out, "jet/osc8d/bare", ClosureSystem::Oscillator(*params, GeneratorConvention::Bare), settings);
    closure_findings(
        &mut out,
        "jet/osc8d/momentum",
        ClosureSystem::Oscillator(*params, GeneratorConvention::Momentum),
        settings,
    );
    out
}

/// Monopole checks on spin `params.isospin`, the gauge-field sanity checks, and the
/// spin-0 reduction to the Kepler residuals.
pub fn ycm_operator_findings(params: &YCMParams, settings: &TrialSettings) -> Vec<Finding> {
    let mut out = Vec::new();
    let rep = match SpinRep::new(params.isospin) {
        Ok(r) => r,
        Err(e) => {
            out.push(Finding::error("jet/ycm/spin", "spin representation exists", e));
            return out;
        }
    };
    out.push(
        Finding::required(
            "jet/ycm/spin-algebra",
            "[T_a, T_b] = i eps_abc T_c and T^2 = T(T + 1)",
            rep.commutation_residual().max(rep.casimir_residual()),
            1e-14,
        )
        .with("T", params.isospin),
    );
    match gauge_diagnostics(10, 2, settings.seed) {
        Ok(g) => {
            out.push(Finding::required("jet/ycm/gauge-real", "A_i^a is real", g.max_imaginary, 1e-13));
            out.push(
                Finding::required(
                    "jet/ycm/field-antisymmetric",
                    "F_ik^a = -F_ki^a",
                    g.max_antisymmetry / g.max_field.max(1.0),
                    1e-13,
                )
                .with("max_field", g.max_field),
            );
        }
        Err(e) => out.push(Finding::error("jet/ycm/gauge", "gauge diagnostics ran", e)),
    }
    let prefix = format!("jet/ycm/T={}", params.isospin);
    push_checks(&mut out, &prefix, "checks", ycm_checks(params, &rep, settings));
    // spin 0 must reproduce the Kepler residuals exactly
    let zero = SpinRep::new(0.0).expect("spin 0");
    let y0 = YCMParams { isospin: 0.0, j_label: 0.0, l_label: 0.0, ..*params };
    match (ycm_checks(&y0, &zero, settings), kepler_integral_checks(&params.kepler, settings)) {
        (Ok(a), Ok(b)) => {
            let gap = b
                .iter()
                .filter(|k| k.kind == CheckKind::Required)
                .map(|k| match a.iter().find(|y| y.name == k.name) {
                    Some(y) => (y.report.max_residual - k.report.max_residual).abs(),
                    None => f64::INFINITY,
                })
                .fold(0.0, f64::max);
            out.push(Finding::required(
                "jet/ycm/T=0-reduction",
                "at T = 0 every integral residual equals the Kepler one",
                gap,
                f64::MIN_POSITIVE,
            ));
        }
        (Err(e), _) | (_, Err(e)) => out.push(Finding::error("jet/ycm/T=0-reduction", "spin-0 checks ran", e)),
    }
    out
}

/// Summary of the Euler identity over random points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EulerSample {
    pub samples: usize,
    pub max_adopted: f64,
    pub max_bilinear: f64,
    /// Angles outside their ranges (should be 0).
    pub angle_violations: usize,
    pub max_literal: f64,
    pub median_literal: f64,
    /// Fraction of samples whose literal-`x0` residual exceeds 0.1.
    pub literal_above_tenth: f64,
}

impl EulerSample {
    pub fn draw(samples: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut s = EulerSample {
            samples,
            max_adopted: 0.0,
            max_bilinear: 0.0,
            angle_violations: 0,
            max_literal: 0.0,
            median_literal: 0.0,
            literal_above_tenth: 0.0,
        };
        let mut literal = Vec::with_capacity(samples);
        for _ in 0..samples {
            let mut u = [0.0; 8];
            for v in &mut u {
                *v = rng.gen_range(-2.0..2.0);
            }
            let p = Point8 { u };
            s.max_adopted = s.max_adopted.max(euler_identity_residual(&p, X0Convention::Adopted));
            s.max_bilinear = s.max_bilinear.max(bilinear_norm_residual(&p));
            if let Some(a) = hurwitz_image(&p, X0Convention::Adopted).angles {
                let ok = (0.0..2.0 * PI).contains(&a.alpha) && (0.0..=PI).contains(&a.beta) && (0.0..4.0 * PI).contains(&a.gamma);
                s.angle_violations += usize::from(!ok);
            }
            literal.push(euler_identity_residual(&p, X0Convention::Literal));
        }
        if samples > 0 {
            literal.sort_by(f64::total_cmp);
            s.max_literal = literal[samples - 1];
            s.median_literal = literal[samples / 2];
            s.literal_above_tenth = literal.iter().filter(|&&r| r > 0.1).count() as f64 / samples as f64;
        }
        s
    }
}

pub fn euler_findings(samples: usize, seed: u64, literal: bool) -> Vec<Finding> {
    let s = EulerSample::draw(samples, seed);
    let mut out = vec![
        Finding::required(
            "hurwitz/euler-identity",
            "sum x_i^2 = (sum u_j^2)^2 with the adopted x0",
            s.max_adopted,
            1e-12,
        )
        .with("samples", samples as f64),
        Finding::required(
            "hurwitz/bilinear-norm",
            "x1^2 + .. + x4^2 = 4 rho1^2 rho2^2",
            s.max_bilinear,
            1e-12,
        ),
        Finding::required("hurwitz/angle-ranges", "fiber angles fall in their ranges", s.angle_violations as f64, 0.5),
    ];
    if literal {
        out.push(
            Finding::finding(
                "hurwitz/euler-identity/literal-x0",
                "the Euler identity holds with x0 = u0^2 + u1^2 + u3^2 - u4^2 - u5^2",
                s.max_literal,
                1e-12,
            )
            .with("median", s.median_literal)
            .with("fraction_above_0.1", s.literal_above_tenth),
        );
    }
    out
}

/// Parabolic closed form, duality closed form and numerical eigenvalue for one channel.
pub fn duality_findings(params: &YCMParams, n1: usize, n2: usize, grid: &GridSettings) -> Vec<Finding> {
    let prefix = format!("duality/n1={n1},n2={n2}");
    let chk = match duality_spectrum_check(params, n1, n2, grid) {
        Ok(c) => c,
        Err(e) => return vec![Finding::error(prefix, "duality chain ran", e)],
    };
    let oracle = chk.oracle.unwrap_or(f64::NAN);
    let mut out = vec![
        Finding::required(
            format!("{prefix}/chain"),
            "oscillator spectrum through c0 = E/4, epsilon = -omega^2/8 equals the duality closed form",
            chk.chain_gap(),
            1e-12,
        )
        .with("chain", chk.duality_chain)
        .with("direct", chk.duality_direct)
        .with("omega", chk.chain_frequency),
        Finding::required(
            format!("{prefix}/m=2s"),
            "with m_i = 2 s_i and p = n1 + n2 the duality form equals the parabolic form",
            rel(chk.duality_from_s, chk.parabolic),
            1e-12,
        ),
    ];
    let mut oracle_row = Finding::required(
        format!("{prefix}/oracle-error"),
        "parabolic eigenvalue oracle converged",
        chk.oracle_error.unwrap_or(f64::NAN),
        1e-6,
    )
    .with("oracle", oracle);
    if let Some(msg) = &chk.oracle_failure {
        oracle_row = oracle_row.note(msg.clone());
    }
    out.push(oracle_row);
    for (name, claim, v) in [
        ("parabolic", "epsilon = -c0^2/(2 hbar^2 (n1 + n2 + s1 + s2 + 1)^2) matches the oracle", chk.parabolic),
        ("without-half", "the same form without the factor 1/2 matches the oracle", chk.parabolic_without_half),
        (
            "duality-oscillator-m",
            "duality form with the oscillator m under lambda_i = c_i/2 matches the oracle",
            chk.duality_direct,
        ),
    ] {
        out.push(
            Finding::finding(format!("{prefix}/{name}-vs-oracle"), claim, (v - oracle).abs(), chk.support_tolerance)
                .with("closed_form", v)
                .with("oracle", oracle),
        );
    }
    out
}

/// 4D radial blocks of the oscillator against the ladder `hbar omega (2 n + 1 + m)`,
/// and the two-block ground state against the printed spectrum.
pub fn oscillator_oracle_findings(params: &Oscillator8DParams, levels: usize, grid: &GridSettings) -> Vec<Finding> {
    let mut out = Vec::new();
    let Oscillator8DParams { omega, hbar, .. } = *params;
    let (m1, m2) = osc8d_m_structure(params).unwrap_or((f64::NAN, f64::NAN));
    let mut ground = [f64::NAN; 2];
    for (b, (casimir, lambda, m)) in [(params.j, params.lambda1, m1), (params.k, params.lambda2, m2)].into_iter().enumerate() {
        let spec = RadialOscillatorSpec::block(-casimir, lambda, omega, hbar);
        for n in 0..levels {
            let expected = hbar * omega * (2.0 * n as f64 + 1.0 + m);
            match radial_oscillator_eigensolve(&spec, n, grid) {
                Ok(r) => {
                    if n == 0 {
                        ground[b] = r.extrapolated;
                    }
                    out.push(
                        Finding::required(
                            format!("oracle/osc8d/block{}/n={n}", b + 1),
                            "block eigenvalue equals hbar omega (2 n + 1 + m)",
                            (r.extrapolated - expected).abs(),
                            1e-6,
                        )
                        .with("oracle", r.extrapolated)
                        .with("expected", expected)
                        .with("error_estimate", r.error_estimate),
                    )
                }
                Err(e) => out.push(Finding::error(format!("oracle/osc8d/block{}/n={n}", b + 1), "block eigensolve ran", e)),
            }
        }
    }
    let printed = crate::catalog::osc8d_spectrum(params, 0).energy;
    out.push(
        Finding::finding(
            "oracle/osc8d/ground-vs-printed",
            "sum of the block ground energies equals the printed E at p = 0",
            (ground[0] + ground[1] - printed).abs(),
            1e-6,
        )
        .with("oracle", ground[0] + ground[1])
        .with("printed", printed),
    );
    out
}
