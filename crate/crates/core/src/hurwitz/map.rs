use super::HurwitzError;
use serde::Serialize;
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point8 {
    pub u: [f64; 8],
}

impl Point8 {
    pub fn norm_sq(&self) -> f64 {
        self.u.iter().map(|v| v * v).sum()
    }
}

/// Which `x0` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
pub enum X0Convention {
    /// `(u0^2 + .. + u3^2) - (u4^2 + .. + u7^2)`, the one satisfying the Euler identity.
    #[default]
    Adopted,
    /// `u0^2 + u1^2 + u3^2 - u4^2 - u5^2`, with three squares missing.
    Literal,
}

/// `alpha in [0, 2 pi)`, `beta in [0, pi]`, `gamma in [0, 4 pi)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiberAngles {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point5Fiber {
    pub x: [f64; 5],
    pub angles: FiberAngles,
}

/// `x` always, angles only on the chart domain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HurwitzImage {
    pub x: [f64; 5],
    pub angles: Option<FiberAngles>,
}

fn fold(angle: f64, period: f64) -> f64 {
    let a = angle.rem_euclid(period);
    // rem_euclid can round up to the period itself
    if a >= period {
        0.0
    } else {
        a
    }
}

fn coordinates(u: &[f64; 8], x0: X0Convention) -> [f64; 5] {
    let [u0, u1, u2, u3, u4, u5, u6, u7] = *u;
    let x0 = match x0 {
        X0Convention::Adopted => (u0 * u0 + u1 * u1 + u2 * u2 + u3 * u3) - (u4 * u4 + u5 * u5 + u6 * u6 + u7 * u7),
        X0Convention::Literal => u0 * u0 + u1 * u1 + u3 * u3 - u4 * u4 - u5 * u5,
    };
    [
        x0,
        2.0 * (u0 * u4 - u1 * u5 - u2 * u6 - u3 * u7),
        2.0 * (u0 * u5 + u1 * u4 - u2 * u7 + u3 * u6),
        2.0 * (u0 * u6 + u1 * u7 + u2 * u4 - u3 * u5),
        2.0 * (u0 * u7 - u1 * u6 + u2 * u5 + u3 * u4),
    ]
}

/// The log formulas only fix each angle modulo `pi`. With `z1 = u0 + i u1` and
/// `z2 = u2 + i u3` they reduce to `alpha = arg z2 - arg z1` and
/// `gamma = arg z1 + arg z2`, which are taken from `atan2` and folded into range.
fn angles(u: &[f64; 8]) -> Option<FiberAngles> {
    let (a, b) = (u[0] * u[0] + u[1] * u[1], u[2] * u[2] + u[3] * u[3]);
    if a == 0.0 || b == 0.0 {
        return None;
    }
    let (phi1, phi2) = (u[1].atan2(u[0]), u[3].atan2(u[2]));
    Some(FiberAngles {
        alpha: fold(phi2 - phi1, 2.0 * PI),
        beta: 2.0 * (a / b).sqrt().atan(),
        gamma: fold(phi1 + phi2, 4.0 * PI),
    })
}

pub fn hurwitz_image(p: &Point8, x0: X0Convention) -> HurwitzImage {
    HurwitzImage { x: coordinates(&p.u, x0), angles: angles(&p.u) }
}

/// Adopted-`x0` image with fiber angles; `FiberChartSingular` carries `x` when the
/// angles are undefined.
pub fn hurwitz_forward(p: &Point8) -> Result<Point5Fiber, HurwitzError> {
    let img = hurwitz_image(p, X0Convention::Adopted);
    match img.angles {
        Some(angles) => Ok(Point5Fiber { x: img.x, angles }),
        None => Err(HurwitzError::FiberChartSingular { x: img.x }),
    }
}

/// `|sum x_i^2 - (sum u_j^2)^2| / max(1, (sum u_j^2)^2)`.
pub fn euler_identity_residual(p: &Point8, x0: X0Convention) -> f64 {
    let x = coordinates(&p.u, x0);
    let lhs: f64 = x.iter().map(|v| v * v).sum();
    let rhs = p.norm_sq().powi(2);
    (lhs - rhs).abs() / rhs.max(1.0)
}

/// `|x1^2 + .. + x4^2 - 4 rho1^2 rho2^2|`, relative as above; independent of `x0`.
pub fn bilinear_norm_residual(p: &Point8) -> f64 {
    let x = coordinates(&p.u, X0Convention::Adopted);
    let lhs: f64 = x[1..].iter().map(|v| v * v).sum();
    let r1: f64 = p.u[..4].iter().map(|v| v * v).sum();
    let r2: f64 = p.u[4..].iter().map(|v| v * v).sum();
    (lhs - 4.0 * r1 * r2).abs() / p.norm_sq().powi(2).max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn pt(u: [f64; 8]) -> Point8 {
        Point8 { u }
    }

    #[test]
    fn unit_vectors() {
        assert_eq!(hurwitz_image(&pt([1., 0., 0., 0., 0., 0., 0., 0.]), X0Convention::Adopted).x, [1., 0., 0., 0., 0.]);
        assert_eq!(hurwitz_image(&pt([0., 0., 0., 0., 0., 0., 0., 1.]), X0Convention::Adopted).x, [-1., 0., 0., 0., 0.]);
        let p = pt([1., 0., 0., 0., 1., 0., 0., 0.]);
        let x = hurwitz_image(&p, X0Convention::Adopted).x;
        assert_eq!(x, [0., 2., 0., 0., 0.]);
        assert_eq!(x.iter().map(|v| v * v).sum::<f64>(), p.norm_sq().powi(2));
    }

    #[test]
    fn origin_has_zero_residual() {
        assert_eq!(euler_identity_residual(&pt([0.0; 8]), X0Convention::Adopted), 0.0);
    }

    #[test]
    fn literal_x0_breaks_identity() {
        // weight on u2, one of the dropped squares
        let p = pt([0.1, 0.1, 2.0, 0.1, 0.1, 0.1, 0.1, 0.1]);
        assert!(euler_identity_residual(&p, X0Convention::Adopted) < 1e-15);
        assert!(euler_identity_residual(&p, X0Convention::Literal) > 0.9);
    }

    #[test]
    fn chart_singularity_keeps_x() {
        let p = pt([0., 0., 1., 0., 1., 0., 0., 0.]);
        match hurwitz_forward(&p) {
            Err(HurwitzError::FiberChartSingular { x }) => assert_eq!(x, hurwitz_image(&p, X0Convention::Adopted).x),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn angles_solve_the_log_formulas() {
        // exp(-2 i alpha) and exp(-2 i gamma) equal the ratios inside the logs
        let u = [0.3, -0.4, -1.1, 0.2, 0.5, 0.6, -0.9, 0.7];
        let f = hurwitz_forward(&pt(u)).unwrap().angles;
        let z1 = Complex64::new(u[0], u[1]);
        let z2 = Complex64::new(u[2], u[3]);
        let ra = (z1 * z2.conj()) / (z1.conj() * z2);
        let rg = (z1.conj() * z2.conj()) / (z1 * z2);
        assert!((Complex64::from_polar(1.0, -2.0 * f.alpha) - ra).norm() < 1e-14);
        assert!((Complex64::from_polar(1.0, -2.0 * f.gamma) - rg).norm() < 1e-14);
        let tan = (f.beta / 2.0).tan();
        assert!((tan * tan - (u[0] * u[0] + u[1] * u[1]) / (u[2] * u[2] + u[3] * u[3])).abs() < 1e-14);
    }
}
