use proptest::prelude::*;
use quadalg::algebra::*;
use quadalg::catalog::*;
use quadalg::linalg::Polynomial;

/// The Kepler family with the structure function multiplied by a positive constant.
struct Rescaled {
    inner: KeplerFamily,
    scale: f64,
}

impl StructureFamily for Rescaled {
    fn polynomial(&self, energy: f64) -> Polynomial {
        self.inner.polynomial(energy).scale(self.scale)
    }

    fn scan_energies(&self, p: usize) -> Vec<f64> {
        self.inner.scan_energies(p)
    }
}

fn physical(search: &RepresentationSearch, p: usize) -> RepresentationSolution {
    *search.for_p(p).max_by(|a, b| a.u.total_cmp(&b.u)).expect("representation exists")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn spectrum_invariant_under_rescaling(scale in 1e-3..1e3f64) {
        // generic couplings: with an integer m two fixed roots sit p + 1 apart at every
        // energy and that representation's energy is arbitrary
        let params = Kepler5DParams::new(1.0, 0.3, 0.1, 1.0, 2.5).unwrap();
        let base = find_representations(&KeplerFamily::new(params), 2, None);
        let scaled = find_representations(&Rescaled { inner: KeplerFamily::new(params), scale }, 2, None);
        prop_assert_eq!(base.solutions.len(), scaled.solutions.len());
        // +-u pairs share an energy, so their order follows rounding
        let sorted = |s: &RepresentationSearch| {
            let mut v = s.solutions.clone();
            v.sort_by(|a, b| a.p.cmp(&b.p).then(a.u.total_cmp(&b.u)));
            v
        };
        for (a, b) in sorted(&base).iter().zip(&sorted(&scaled)) {
            prop_assert_eq!(a.p, b.p);
            prop_assert!((a.u - b.u).abs() < 1e-10);
            prop_assert!((a.energy - b.energy).abs() < 1e-12 * a.energy.abs(), "{:?} vs {:?}", a, b);
        }
    }

    #[test]
    fn physical_energy_matches_root_structure(c1 in 0.0..1.0f64, c2 in 0.0..1.0f64, l in 0.0..8.0f64) {
        let params = Kepler5DParams::new(1.0, c1, c2, 1.0, l).unwrap();
        let search = find_representations(&KeplerFamily::new(params), 2, None);
        for p in 0..=2 {
            let e = physical(&search, p).energy;
            let want = kepler5d_structure_energy(&params, p).unwrap();
            prop_assert!((e - want).abs() < 1e-12 * want.abs(), "p={} {} vs {}", p, e, want);
        }
    }
}

#[test]
fn fock_invariants_and_jacobi() {
    for (c1, c2, l) in [(0.0, 0.0, 0.0), (0.25, 0.0, 3.0), (0.25, 0.25, 0.0)] {
        let params = Kepler5DParams::new(1.0, c1, c2, 1.0, l).unwrap();
        let family = KeplerFamily::new(params);
        let search = find_representations(&family, 4, None);
        for s in &search.solutions {
            let k = kepler5d_constants(&params, s.energy);
            let f = build_fock_realization(&k, &s.structure_function(&family), s.p).unwrap();
            let inv = f.invariants();
            assert_eq!(inv.number_raise, 0.0);
            assert_eq!(inv.number_lower, 0.0);
            assert!(inv.max_relative() < 1e-12);
            assert!(verify_commutation(&f, &k).jacobi.relative() < 1e-10);
        }
    }
}

#[test]
fn oscillator_spectrum_is_arithmetic() {
    let params = Oscillator8DParams::new(1.3, 0.2, 0.7, 0.9, 0.0, 0.0).unwrap();
    for p in 0..5 {
        let gap = osc8d_spectrum(&params, p + 1).energy - osc8d_spectrum(&params, p).energy;
        assert!((gap - 2.0 * 1.3 * 0.9).abs() < 1e-12);
        assert!(osc8d_spectrum(&params, p).energy > 0.0);
    }
}

#[test]
fn kepler_states_are_bound() {
    let params = Kepler5DParams::new(1.0, 0.25, 0.25, 1.0, 3.0).unwrap();
    for p in 0..5 {
        assert!(kepler5d_spectrum(&params, p).unwrap().energy < 0.0);
        assert!(kepler5d_structure_energy(&params, p).unwrap() < 0.0);
    }
}
