//! Closed-form spectra of the three systems next to the energies of the
//! physical representations.

use quadalg::catalog::*;

fn main() {
    let kepler = Kepler5DParams::new(1.0, 0.0, 0.0, 1.0, 0.0).unwrap();
    let osc = Oscillator8DParams::new(1.0, 0.0, 0.0, 1.0, 0.0, 0.0).unwrap();
    let ycm = YCMParams::new(Kepler5DParams::new(1.0, 0.25, 0.0, 1.0, 0.0).unwrap(), 0.5, 0.5, 0.0).unwrap();

    for p in 0..4 {
        let printed = kepler5d_spectrum(&kepler, p).unwrap();
        let physical = kepler5d_structure_energy(&kepler, p).unwrap();
        println!("kepler5d p={p}: printed {:+.6} physical {:+.6}", printed.energy, physical);
    }
    println!("kepler5d m printed {:?} from roots {:?}", kepler5d_m_parameters(&kepler).unwrap(), kepler5d_m_structure(&kepler).unwrap());

    for p in 0..3 {
        println!("osc8d p={p}: {:.3}", osc8d_spectrum(&osc, p).energy);
    }

    for p in 0..3 {
        let d = ycm_spectrum_duality(&ycm, p);
        let q = ycm_spectrum_parabolic(&ycm, p, 0);
        println!("ycm p={p}: duality {:+.6} parabolic {:+.6} s={:?}", d.energy, q.energy, q.s.unwrap());
    }
}
