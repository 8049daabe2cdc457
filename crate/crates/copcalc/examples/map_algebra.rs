//! Exact Möbius-map algebra on a running example: the self-map
//! phi(z) = -(7z+3)/(2z+8), which fixes no interior point and touches the
//! circle exactly at z = 1.

use copcalc::moebius::{
    classify, compose, curvature_at, iterate, krein_adjoint, parabolic, translation_number, Mobius,
};
use copcalc::Cx;

fn cx(re: f64) -> Cx {
    Cx::new(re, 0.0)
}

fn main() -> copcalc::Result<()> {
    let phi = Mobius::new(cx(-7.0), cx(-3.0), cx(2.0), cx(8.0))?;

    let class = classify(&phi);
    println!("phi          = {phi:?}");
    println!("kind         = {:?}", class.kind);
    println!("self-map     = {}", class.is_disk_self_map);
    println!("automorphism = {}", class.is_disk_automorphism);
    println!("fixed points = {:?}", class.fixed_points);

    // The Krein adjoint sigma is the map whose composition operator is, up
    // to compacts, a weighted adjoint of C_phi.
    let sigma = krein_adjoint(&phi);
    println!("\nsigma = {sigma:?}");

    // phi . sigma and sigma . phi are parabolic, each with a real positive
    // translation number that measures the order of contact data.
    let ps = compose(&phi, &sigma)?;
    let sp = compose(&sigma, &phi)?;
    let (gamma1, a1) = translation_number(&ps)?;
    let (gamma2, a2) = translation_number(&sp)?;
    println!("\nphi.sigma fixes {gamma1} with translation number {a1}");
    println!("sigma.phi fixes {gamma2} with translation number {a2}");

    // Those translation numbers are twice the curvature excess of the image
    // disks at the contact points.
    println!(
        "curvature of phi(D) at phi(1):   {}",
        curvature_at(&phi, cx(1.0))?
    );
    println!(
        "curvature of sigma(D) at sigma(1): {}",
        curvature_at(&sigma, cx(1.0))?
    );

    // Parabolic maps with a common fixed point form a semigroup: translation
    // numbers add under composition.
    let r1 = parabolic(cx(-1.0), Cx::new(0.3, 0.1), false)?;
    let r2 = parabolic(cx(-1.0), Cx::new(0.5, -0.2), false)?;
    let (_, sum) = translation_number(&compose(&r1, &r2)?)?;
    println!("\n0.3+0.1i plus 0.5-0.2i composes to translation number {sum}");

    // Iteration is just matrix power.
    let phi5 = iterate(&phi, 5)?;
    println!("phi^5(0) = {}", phi5.apply(Cx::new(0.0, 0.0))?);
    Ok(())
}
