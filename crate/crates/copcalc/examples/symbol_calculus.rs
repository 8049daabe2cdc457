//! The 2x2 matrix symbol calculus: essential norms and essential spectra of
//! noncommutative polynomials in the generator and its adjoint.

use copcalc::symbols::{
    essential_norm, essential_spectrum, generator_symbol, psi_of_element, psi_of_word,
    spectrum_distance, table2_symbol, word_to_element, AlgebraElement, Gen, TableRow,
};
use copcalc::Cx;

fn main() -> copcalc::Result<()> {
    // Scale parameter for the running example phi(z) = -(7z+3)/(2z+8):
    // s = 1/|phi'(1)| = 2.
    let s = 2.0;

    // The generator maps to a strictly upper triangular matrix function on
    // [0, s]; its essential norm is sqrt(s).
    let x = generator_symbol(s);
    println!("generator symbol at t=1: {:?}", x.eval(1.0));
    println!("essential norm of the generator: {}", essential_norm(&x));

    // Words in {X, X*} reduce to canonical form; the symbol map is
    // multiplicative.
    let word = [Gen::XStar, Gen::X, Gen::XStar, Gen::X];
    let by_word = psi_of_word(&word, s)?;
    let by_elem = psi_of_element(&word_to_element(&word), s)?;
    println!(
        "\n(X*X)^2: direct vs reduced-element symbol distance = {:.2e}",
        by_word.distance(&by_elem)
    );
    println!("essential norm of (X*X)^2 = {}", essential_norm(&by_word));

    // A self-adjoint combination and its essential spectrum.
    let elem = AlgebraElement {
        c: Cx::new(0.0, 0.0),
        f: vec![],
        g: vec![],
        p: vec![Cx::new(1.0, 0.0)],
        q: vec![Cx::new(1.0, 0.0)],
    };
    let m = psi_of_element(&elem, s)?;
    let spec = essential_spectrum(&m, 512);
    println!(
        "\nX + X*: essential norm = {}, spectrum within {:.2e} of [-sqrt 2, sqrt 2]",
        essential_norm(&m),
        spec.iter()
            .map(|&z| (z.im.abs()).max((z.re.abs() - 2f64.sqrt()).max(0.0)))
            .fold(0.0, f64::max)
    );
    println!(
        "distance of 1 to that spectrum: {:.2e}",
        spectrum_distance(&spec, Cx::new(1.0, 0.0))
    );

    // The four classified one-parameter families each occupy a single matrix
    // entry, with a power of t determined by the translation number.
    for (row, label) in [
        (TableRow::A, "rho . phi  (zeta -> eta)"),
        (TableRow::B, "rho        (fixing zeta)"),
        (TableRow::C, "rho . sigma (eta -> zeta)"),
        (TableRow::D, "rho        (fixing eta)"),
    ] {
        let m = table2_symbol(row, Cx::new(1.0, 0.0), s, 0.2, 0.1)?;
        println!("{label}: symbol at t=1 is {:?}", m.eval(1.0));
    }
    Ok(())
}
