use num_complex::Complex64;
use proptest::prelude::*;
use quadalg::jet::{jet_seed_polynomial, Jet, JetSpace, MultiPoly};
use std::sync::Arc;

const VARS: usize = 3;
const DEGREE: usize = 4;

fn space() -> Arc<JetSpace> {
    JetSpace::new(VARS, DEGREE)
}

fn jet(coeffs: Vec<f64>) -> Jet {
    Jet::from_coeffs(&space(), coeffs.into_iter().map(|c| Complex64::new(c, 0.0)).collect())
}

fn coeffs() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0..1.0f64, space().len())
}

fn gap(a: &Jet, b: &Jet) -> f64 {
    (a - b).max_abs()
}

/// Naive polynomial product, truncated at `DEGREE`.
fn product(p: &MultiPoly, q: &MultiPoly) -> MultiPoly {
    let mut terms = Vec::new();
    for (e1, c1) in &p.terms {
        for (e2, c2) in &q.terms {
            let e: Vec<u8> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
            if e.iter().map(|&k| k as usize).sum::<usize>() <= DEGREE {
                terms.push((e, c1 * c2));
            }
        }
    }
    MultiPoly { n_vars: VARS, terms }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative(a in coeffs(), b in coeffs(), c in coeffs()) {
        let (a, b, c) = (jet(a), jet(b), jet(c));
        prop_assert!(gap(&(&(&a * &b) * &c), &(&a * &(&b * &c))) < 1e-13);
    }

    #[test]
    fn multiplication_distributes(a in coeffs(), b in coeffs(), c in coeffs()) {
        let (a, b, c) = (jet(a), jet(b), jet(c));
        prop_assert!(gap(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))) < 1e-13);
    }

    #[test]
    fn division_inverts_multiplication(a in coeffs(), b in coeffs(), c0 in 0.5..2.0f64) {
        let mut b = b;
        b[0] = c0;
        let (a, b) = (jet(a), jet(b));
        let back = (&a * &b).div(&b).unwrap();
        prop_assert!(gap(&back, &a) < 1e-12);
    }

    #[test]
    fn product_matches_cauchy_product(p in coeffs(), q in coeffs()) {
        let s = space();
        let poly = |c: Vec<f64>| MultiPoly { n_vars: VARS, terms: (0..s.len()).map(|k| (s.monomial(k).to_vec(), c[k])).collect() };
        let (p, q) = (poly(p), poly(q));
        let origin = [0.0; VARS];
        let jp = jet_seed_polynomial(&s, &p, &origin).unwrap();
        let jq = jet_seed_polynomial(&s, &q, &origin).unwrap();
        let expected = jet_seed_polynomial(&s, &product(&p, &q), &origin).unwrap();
        prop_assert!(gap(&(&jp * &jq), &expected) < 1e-13);
    }

    #[test]
    fn seeded_jet_evaluates_the_polynomial(c in coeffs(), x in prop::array::uniform3(-1.0..1.0f64)) {
        let s = space();
        let poly = MultiPoly { n_vars: VARS, terms: (0..s.len()).map(|k| (s.monomial(k).to_vec(), c[k])).collect() };
        let j = jet_seed_polynomial(&s, &poly, &x).unwrap();
        prop_assert!((j.value().re - poly.eval(&x)).abs() < 1e-12);
    }
}

#[test]
fn zero_constant_term_has_no_inverse() {
    let mut c = vec![0.0; space().len()];
    c[1] = 1.0;
    assert!(jet(c).recip().is_err());
}
