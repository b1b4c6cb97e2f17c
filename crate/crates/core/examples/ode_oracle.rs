//! Numerical eigenvalues that the closed forms are compared against: a radial
//! block of the oscillator and a pair of coupled parabolic channels.

use quadalg::ode::{kummer, radial_oscillator_eigensolve, solve_parabolic_pair, GridSettings, RadialOscillatorSpec};

fn main() {
    let grid = GridSettings::default();

    // four-dimensional block with l = 1 and lambda = 0.3: hbar omega (2n + 1 + m)
    let (l, lambda) = (1.0, 0.3);
    let spec = RadialOscillatorSpec::block(l * (l + 2.0), lambda, 1.0, 1.0);
    let m = ((l + 1.0) * (l + 1.0) + 2.0 * lambda).sqrt();
    for n in 0..3 {
        let e = radial_oscillator_eigensolve(&spec, n, &grid).unwrap();
        println!("block n={n}: {:.10} (+- {:.1e}) vs {:.10}", e.extrapolated, e.error_estimate, 2.0 * n as f64 + 1.0 + m);
    }

    let pair = solve_parabolic_pair(0.0, 0.0, 2.0, 0, 0, 1.0, &grid).unwrap();
    println!("parabolic pair: epsilon {:.10} (+- {:.1e}) closed form {:.10}", pair.epsilon, pair.epsilon_error, pair.closed_form);

    // 1F1(-n; b; x) terminates to a polynomial
    println!("1F1(-2; 1.5; 0.7) = {:.12}", kummer(2, 1.5, 0.7).unwrap());
}
