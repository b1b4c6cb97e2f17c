//! The quadratic map from eight to five dimensions, its Euler identity and the
//! fiber angles.

use quadalg::hurwitz::{bilinear_norm_residual, euler_identity_residual, hurwitz_forward, hurwitz_image, Point8, X0Convention};

fn main() {
    let p = Point8 { u: [0.3, -1.0, 0.2, 0.4, 1.0, 0.0, 0.5, -0.7] };
    let fiber = hurwitz_forward(&p).unwrap();
    println!("x = {:?}", fiber.x);
    println!("angles = {:?}", fiber.angles);
    println!("euler residual {:.2e}, bilinear {:.2e}", euler_identity_residual(&p, X0Convention::Adopted), bilinear_norm_residual(&p));

    // x0 with the sign pattern exactly as written breaks the identity
    let lit = hurwitz_image(&p, X0Convention::Literal);
    println!("literal x0 = {:.4}, residual {:.3}", lit.x[0], euler_identity_residual(&p, X0Convention::Literal));
}
