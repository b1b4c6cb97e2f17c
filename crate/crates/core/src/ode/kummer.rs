use super::OdeError;

/// Terminating confluent hypergeometric series
/// `F(-n, b, x) = sum_{k=0}^{n} (-n)_k / (b)_k x^k / k!`.
pub fn kummer(n: u32, b: f64, x: f64) -> Result<f64, OdeError> {
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..n {
        let bk = b + k as f64;
        if bk == 0.0 {
            return Err(OdeError::PochhammerZero { b, k: k + 1 });
        }
        term *= (k as f64 - n as f64) * x / (bk * (k + 1) as f64);
        sum += term;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        assert_eq!(kummer(0, 3.7, -2.0).unwrap(), 1.0);
        assert!((kummer(1, 2.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((kummer(2, 3.0, 1.0).unwrap() - 5.0 / 12.0).abs() < 1e-15);
    }

    #[test]
    fn pochhammer_zero() {
        assert!(matches!(kummer(3, -1.0, 0.5), Err(OdeError::PochhammerZero { k: 2, .. })));
        assert!(kummer(3, -2.0, 0.5).is_err());
        // (b)_k never vanishes for k <= n when b = -n
        assert!(kummer(3, -3.0, 0.5).is_ok());
    }

    #[test]
    fn laguerre_link() {
        // F(-n, 1, x) = L_n(x)
        let x = 0.7f64;
        let l3 = (-x.powi(3) + 9.0 * x * x - 18.0 * x + 6.0) / 6.0;
        assert!((kummer(3, 1.0, x).unwrap() - l3).abs() < 1e-14);
    }
}
