//! Finite-dimensional unitary representations of the Kepler quadratic algebra,
//! their Fock realization and the commutation and Casimir checks.

use quadalg::algebra::{build_fock_realization, find_representations, verify_casimir, verify_commutation, StructureFunction};
use quadalg::catalog::{kepler5d_constants, Kepler5DParams, KeplerFamily, KeplerPrintedClosedForm};

fn main() {
    let params = Kepler5DParams::new(1.0, 0.25, 0.1, 1.0, 0.0).expect("valid parameters");
    let search = find_representations(&KeplerFamily::new(params), 3, Some(&KeplerPrintedClosedForm(params)));

    println!("{:>2} {:>10} {:>18} {:>10}", "p", "u", "E", "min Phi");
    for s in &search.solutions {
        println!("{:>2} {:>10.6} {:>18.12} {:>10.3e}", s.p, s.u, s.energy, s.min_phi);
    }
    for c in &search.closed_form {
        println!("printed closed form p={} E={:.12} accepted={}", c.p, c.energy, c.accepted);
    }

    // the physical representation is the one with the largest u
    let best = search.for_p(2).max_by(|a, b| a.u.total_cmp(&b.u)).expect("p = 2 exists");
    let k = kepler5d_constants(&params, best.energy);
    let sf = StructureFunction::from_constants(&k, best.u);
    let fock = build_fock_realization(&k, &sf, 2).expect("unitary");
    println!("commutation residual {:.2e}", verify_commutation(&fock, &k).max_relative());
    println!("casimir non-scalar   {:.2e}", verify_casimir(&fock, &k).non_scalar);
}
