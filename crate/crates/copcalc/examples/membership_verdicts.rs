//! Deciding when a composition operator lies, modulo compacts, in the
//! C*-algebra generated by a single linear-fractional one.

use copcalc::membership::{combination_symbol, coset_decompose, linfrac_membership, make_context};
use copcalc::moebius::{compose, parabolic, Mobius};
use copcalc::symbols::{essential_norm, psi_of_element, AlgebraElement};
use copcalc::Cx;

fn cx(re: f64) -> Cx {
    Cx::new(re, 0.0)
}

fn main() -> copcalc::Result<()> {
    let phi = Mobius::new(cx(-7.0), cx(-3.0), cx(2.0), cx(8.0))?;
    let ctx = make_context(&phi)?;
    println!(
        "context: zeta={}, eta={}, s={}, b={}, c={}",
        ctx.zeta, ctx.eta, ctx.s, ctx.b, ctx.c
    );

    // A candidate matching the boundary data of phi at zeta, perturbed by a
    // parabolic rotation at eta with admissible translation number.
    let rho = parabolic(ctx.eta, Cx::new(0.3, 0.05), false)?;
    let psi = compose(&rho, &phi)?;
    let v = linfrac_membership(&ctx, &psi)?;
    println!(
        "\nrho_(0.3+0.05i) . phi: member={}, condition={:?}, representative={:?}",
        v.member, v.condition, v.representative
    );

    // Push the translation number past the admissible half-plane Re a > -b
    // and the composite stops being a self-map of the disk entirely.
    let rho_bad = parabolic(ctx.eta, cx(-0.25), true)?;
    match linfrac_membership(&ctx, &compose(&rho_bad, &phi)?) {
        Ok(v) => println!("rho_(-0.25) . phi:     member={}", v.member),
        Err(e) => println!("rho_(-0.25) . phi:     rejected ({e})"),
    }

    // A rotation of phi keeps the tangency at zeta but moves the boundary
    // value off {zeta, eta}: no condition applies.
    let spin = Cx::from_polar(1.0, 0.9);
    let rotated = Mobius::new(phi.a * spin, phi.b * spin, phi.c, phi.d)?;
    let v = linfrac_membership(&ctx, &rotated)?;
    println!(
        "e^(0.9i) . phi:        member={}, condition={:?}",
        v.member, v.condition
    );

    // Automorphisms other than the identity never belong.
    let rot = parabolic(ctx.zeta, Cx::new(0.0, 1.0), true)?;
    let v = linfrac_membership(&ctx, &rot)?;
    println!(
        "boundary rotation:     member={}, reason={:?}",
        v.member, v.reason
    );

    // Maps with sup norm < 1 give compact operators: members with zero
    // symbol.
    let small = Mobius::new(cx(0.25), cx(0.1), cx(0.0), cx(1.0))?;
    let v = linfrac_membership(&ctx, &small)?;
    println!(
        "strict contraction:    member={}, condition={:?}",
        v.member, v.condition
    );

    // Every polynomial in the generator decomposes, modulo compacts, into a
    // weighted sum of composition operators; the symbol survives the round
    // trip.
    let elem = AlgebraElement {
        c: Cx::new(0.5, 0.0),
        f: vec![Cx::new(0.0, 0.0), Cx::new(1.0, 0.0)],
        g: vec![],
        p: vec![Cx::new(2.0, 0.0)],
        q: vec![Cx::new(0.0, 0.0), Cx::new(-1.0, 0.0)],
    };
    let parts = coset_decompose(&ctx, &elem)?;
    println!("\ncoset decomposition into {} weighted maps:", parts.len());
    for part in &parts {
        println!("  {} * C with symbol map {:?}", part.coeff, part.map);
    }
    let direct = psi_of_element(&elem, ctx.s)?;
    let rebuilt = combination_symbol(&ctx, &parts)?;
    println!(
        "symbol distance direct vs rebuilt: {:.2e} (essential norm {})",
        direct.distance(&rebuilt),
        essential_norm(&direct)
    );
    Ok(())
}
