//! Constructing finite products with prescribed angular-derivative sums at
//! two boundary points.

use copcalc::blaschke::{boundary_derivative_sum, construct_two_point};
use copcalc::Cx;

fn main() -> copcalc::Result<()> {
    // Ask for derivative sum 2 at z=-1 and 2 at z=1: the answer is z^2.
    let b = construct_two_point(Cx::new(-1.0, 0.0), Cx::new(1.0, 0.0), 2.0, 2.0)?;
    println!("t1=t2=2: degree {} product, m={}", b.product.degree(), b.m);
    for z in &b.product.zeros {
        println!("  zero {} (multiplicity {})", z.a, z.multiplicity);
    }

    // An asymmetric request forces a deeper doubling level and off-center
    // zeros.
    let b = construct_two_point(Cx::new(-1.0, 0.0), Cx::new(1.0, 0.0), 0.6, 7.3)?;
    println!(
        "\nt1=0.6, t2=7.3: degree {} product, m={}",
        b.product.degree(),
        b.m
    );
    for z in &b.product.zeros {
        println!("  zero {} (multiplicity {})", z.a, z.multiplicity);
    }

    // Check the construction by evaluating the product and its
    // angular-derivative sums at both points.
    let (val_eta, _) = b.product.evaluate(Cx::new(1.0, 0.0))?;
    println!("B(1)  = {val_eta}  (fixed)");
    let (val_zeta, _) = b.product.evaluate(Cx::new(-1.0, 0.0))?;
    println!("B(-1) = {val_zeta}  (sent to 1)");
    println!(
        "derivative sums: {} at -1, {} at 1",
        boundary_derivative_sum(&b.product, -1.0)?,
        boundary_derivative_sum(&b.product, 1.0)?
    );

    // The same machinery works for tangency points anywhere on the circle.
    let zeta = Cx::from_polar(1.0, 2.2);
    let eta = Cx::from_polar(1.0, -0.7);
    let b = construct_two_point(zeta, eta, 1.5, 3.0)?;
    let (v, _) = b.product.evaluate(zeta)?;
    println!(
        "\ngeneric points: degree {}, |B(zeta) - eta| = {:.2e}",
        b.product.degree(),
        (v - eta).norm()
    );
    Ok(())
}
