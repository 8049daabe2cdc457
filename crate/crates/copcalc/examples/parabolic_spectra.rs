//! The commutative corner: linear combinations of parabolic composition
//! operators with a common fixed point, their Gelfand transforms, and joint
//! essential spectra.

use copcalc::symbols::{
    gelfand, joint_essential_spectrum, parabolic_ess_norm, parabolic_ess_spectrum,
    ParabolicCombination, ParabolicTerm,
};
use copcalc::Cx;

fn main() -> copcalc::Result<()> {
    // 1 - 2 C_{rho_1} + C_{rho_2}: the Gelfand transform is the power sum
    // 1 - 2 t + t^2 = (1 - t)^2 on [0, 1].
    let p = ParabolicCombination {
        gamma: Cx::new(1.0, 0.0),
        unit: Cx::new(1.0, 0.0),
        terms: vec![
            ParabolicTerm {
                a: Cx::new(1.0, 0.0),
                coeff: Cx::new(-2.0, 0.0),
            },
            ParabolicTerm {
                a: Cx::new(2.0, 0.0),
                coeff: Cx::new(1.0, 0.0),
            },
        ],
    };
    let hat = gelfand(&p)?;
    println!("transform terms: {:?}", hat.terms);
    for t in [0.0, 0.25, 0.5, 1.0] {
        println!("  hat at t={t}: {}", hat.eval(t));
    }
    println!("essential norm: {}", parabolic_ess_norm(&p)?);

    // A combination with complex translation numbers has an essential
    // spectrum tracing a curve in the plane.
    let q = ParabolicCombination {
        gamma: Cx::new(-1.0, 0.0),
        unit: Cx::new(0.0, 0.0),
        terms: vec![ParabolicTerm {
            a: Cx::new(1.0, 2.0),
            coeff: Cx::new(1.0, 0.0),
        }],
    };
    let spec = parabolic_ess_spectrum(&q, 8)?;
    println!("\nessential spectrum samples of C_(1+2i):");
    for z in &spec {
        println!("  {z}");
    }

    // The joint essential spectrum of (C_{rho_a1}, ..., C_{rho_ak}) is the
    // closed curve t -> (t^{a1}, ..., t^{ak}).
    let pts = joint_essential_spectrum(&[Cx::new(1.0, 0.0), Cx::new(2.0, 0.0)], 4)?;
    println!("\njoint spectrum of (C_(1), C_(2)) lies on w2 = w1^2:");
    for tuple in &pts {
        println!("  ({}, {})", tuple[0], tuple[1]);
    }
    Ok(())
}
