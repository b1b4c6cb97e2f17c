//! Parameter map between the eight-dimensional oscillator and the monopole
//! system, and the three-way energy comparison in one parabolic channel.

use quadalg::catalog::{Kepler5DParams, YCMParams};
use quadalg::hurwitz::{duality_spectrum_check, map_parameters, DualParams, OscillatorSide};
use quadalg::ode::GridSettings;

fn main() {
    let osc = DualParams::Oscillator(OscillatorSide { energy: 4.0, omega: 1.0, lambda1: 0.2, lambda2: 0.0 });
    let coulomb = map_parameters(osc).unwrap();
    println!("{osc:?}\n  -> {coulomb:?}\n  -> {:?}", map_parameters(coulomb).unwrap());

    let ycm = YCMParams::new(Kepler5DParams::new(1.0, 0.0, 0.0, 1.0, 0.0).unwrap(), 0.0, 0.0, 0.0).unwrap();
    let c = duality_spectrum_check(&ycm, 0, 0, &GridSettings::default()).unwrap();
    println!("parabolic             {:+.10}", c.parabolic);
    println!("parabolic without 1/2 {:+.10}", c.parabolic_without_half);
    println!("duality, oscillator m {:+.10}", c.duality_direct);
    println!("duality, m = 2s       {:+.10}", c.duality_from_s);
    match (c.oracle, c.oracle_error) {
        (Some(e), Some(err)) => println!("oracle                {e:+.10} (+- {err:.1e})"),
        _ => println!("oracle failed: {:?}", c.oracle_failure),
    }
}
