//! Brute-force checks on finite sections and reproducing-kernel lower
//! bounds: the numerics that back the exact symbol calculus.

use copcalc::membership::WeightedMap;
use copcalc::moebius::{compose, parabolic, Mobius};
use copcalc::numerics::{
    composition_matrix, kernel_gram, lb1, lb3_limit_check, lb3_rhs, lbext,
    mod_compact_selfadjoint_check, operator_norm, tail_norm, AnalyticMap, Combination,
};
use copcalc::symbols::{essential_norm, psi_of_element, word_to_element, Gen};
use copcalc::Cx;

fn cx(re: f64) -> Cx {
    Cx::new(re, 0.0)
}

fn main() -> copcalc::Result<()> {
    let phi = Mobius::new(cx(-7.0), cx(-3.0), cx(2.0), cx(8.0))?;

    // Finite sections converge to the operator norm from below; tails of
    // (M* - M) for X*X witness mod-compact self-adjointness.
    for n in [32, 128, 512] {
        let m = composition_matrix(&AnalyticMap::Mobius(phi), n)?;
        println!("n={n:4}: ||C_phi||_n = {:.8}", operator_norm(&m));
    }
    let m = composition_matrix(&AnalyticMap::Mobius(phi), 512)?;
    println!(
        "tail past 256: {:.4} (essential part only)",
        tail_norm(&m, 256)?
    );

    // The essential norm of X + X* from the exact calculus, against the
    // kernel Gram lower bound along a boundary approach.
    let elem = word_to_element(&[Gen::X]);
    let exact = essential_norm(&psi_of_element(&elem, 2.0)?);
    let combo = Combination {
        terms: vec![WeightedMap {
            coeff: cx(1.0),
            map: phi,
        }],
    };
    println!("\nexact essential norm of C_phi's symbol: {exact}");
    println!(
        "first-order kernel bound at zeta=1 (squared): {}",
        lb1(&combo, cx(1.0))?
    );
    println!(
        "gram form just inside zeta: {}",
        kernel_gram(&combo, cx(0.999))?
    );

    // A two-term combination: C_phi - C_{rho.phi} with a parabolic factor at
    // eta. The automorphism bound and the tangent-circle bound both stay
    // below the exact essential norm squared.
    let rho = parabolic(cx(-1.0), cx(0.4), false)?;
    let combo2 = Combination {
        terms: vec![
            WeightedMap {
                coeff: cx(1.0),
                map: phi,
            },
            WeightedMap {
                coeff: cx(-1.0),
                map: compose(&rho, &phi)?,
            },
        ],
    };
    println!("\nautomorphism lower bound: {}", lbext(&combo2));
    for d in [0.1, 1.0, 10.0] {
        println!("lb3 at zeta with D={d}: {}", lb3_rhs(&combo2, cx(1.0), d)?);
    }

    // The closed-form bound is a genuine limit of the Gram form along the
    // matching tangent circle.
    let single = Combination {
        terms: vec![WeightedMap {
            coeff: cx(1.0),
            map: parabolic(cx(1.0), cx(1.0), false)?,
        }],
    };
    let report = lb3_limit_check(&single, cx(1.0), 1.0, &[1e-2, 1e-3, 1e-4, 1e-5])?;
    println!("\nrho_1 at its fixed point, D=1: rhs = {}", report.rhs);
    for s in &report.samples {
        println!(
            "  1-|z| = {:.0e}: gram = {:.8}, error = {:.2e}",
            s.distance, s.gram, s.error
        );
    }
    println!("converged: {}", report.converged);

    // Parabolic operators with real translation number are self-adjoint
    // modulo compacts.
    let decay = mod_compact_selfadjoint_check(0.7, cx(1.0), 512)?;
    println!(
        "\n(M* - M) tails for rho_0.7 at cuts {:?}: {:?} (decreasing: {})",
        decay.cuts, decay.tails, decay.decreasing
    );
    Ok(())
}
