//! Commutators of the differential operators checked on random jets: the
//! integrals of the Kepler system with and without a monopole, and the fitted
//! coefficients of the quadratic closure.

use quadalg::catalog::{Kepler5DParams, YCMParams};
use quadalg::jet::{kepler_integral_checks, verify_quadratic_closure, ycm_checks, ClosureSystem, SpinRep, TrialSettings};

fn main() {
    let settings = TrialSettings { trials: 5, ..Default::default() };
    let kepler = Kepler5DParams::new(1.0, 0.25, 0.1, 1.0, 0.0).unwrap();

    for c in kepler_integral_checks(&kepler, &settings).unwrap() {
        println!("{:<40} {:.2e} holds={}", c.name, c.report.max_residual, c.holds());
    }

    let closure = verify_quadratic_closure(ClosureSystem::Kepler(kepler), &settings).unwrap();
    for r in &closure.relations {
        println!("{}: printed residual {:.2e}, fitted {:.2e}", r.relation, r.fit.printed_residual, r.fit.fitted_residual);
        for t in &r.fit.coefficients {
            println!("  {:<6} fitted {:+.6} printed {:+.6}", t.label, t.fitted[0], t.printed[0]);
        }
    }

    let ycm = YCMParams::new(Kepler5DParams::new(1.0, 0.0, 0.0, 1.0, 0.0).unwrap(), 0.5, 0.5, 0.0).unwrap();
    let spin = SpinRep::new(0.5).unwrap();
    let checks = ycm_checks(&ycm, &spin, &TrialSettings { trials: 2, ..Default::default() }).unwrap();
    let worst = checks.iter().map(|c| c.report.max_residual).fold(0.0, f64::max);
    println!("monopole T=1/2: {} checks, worst residual {:.2e}", checks.len(), worst);
}
