//! The 2x2 matrix symbol calculus: finite power sums, the symbol map of the
//! dense subalgebra, essential norms and spectra, the rescaling automorphism
//! of the image algebra, and the Gelfand map of the parabolic algebra.

use crate::{Cx, Error, Result};
use serde::{Deserialize, Serialize};

const MERGE_TOL: f64 = 1e-12;

/// One term `coeff * t^exponent` of a finite power sum.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Term {
    #[serde(rename = "c", with = "crate::jsonio::cx")]
    pub coeff: Cx,
    #[serde(rename = "beta", with = "crate::jsonio::cx")]
    pub exponent: Cx,
}

/// A finite sum `sum_k c_k t^{beta_k}` on an interval `[0, s]`, with all
/// exponents in the closed right half-plane (and `t^0 := 1`, `t^beta := 0`
/// at `t = 0` for `Re beta > 0`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PowerSum {
    pub terms: Vec<Term>,
}

impl PowerSum {
    pub fn zero() -> Self {
        PowerSum { terms: vec![] }
    }

    pub fn constant(c: Cx) -> Self {
        PowerSum {
            terms: vec![Term {
                coeff: c,
                exponent: Cx::new(0.0, 0.0),
            }],
        }
        .canonicalized()
    }

    pub fn monomial(coeff: Cx, exponent: Cx) -> Result<Self> {
        let ps = PowerSum {
            terms: vec![Term { coeff, exponent }],
        };
        ps.validate()?;
        Ok(ps.canonicalized())
    }

    pub fn validate(&self) -> Result<()> {
        for t in &self.terms {
            if t.exponent.re < -1e-12 {
                return Err(Error::Precondition(
                    "exponent with negative real part".into(),
                ));
            }
            if t.exponent.re.abs() < 1e-12 && t.exponent.im.abs() > 1e-12 {
                return Err(Error::Precondition(
                    "purely imaginary exponent undefined at t = 0".into(),
                ));
            }
        }
        Ok(())
    }

    /// Sort by exponent, merge exponents equal within 1e-12, drop vanishing
    /// coefficients.
    pub fn canonicalized(&self) -> Self {
        let mut terms = self.terms.clone();
        terms.sort_by(|x, y| {
            (x.exponent.re, x.exponent.im)
                .partial_cmp(&(y.exponent.re, y.exponent.im))
                .unwrap()
        });
        let mut merged: Vec<Term> = Vec::new();
        for t in terms {
            match merged.last_mut() {
                Some(last) if (last.exponent - t.exponent).norm() <= MERGE_TOL => {
                    last.coeff += t.coeff;
                }
                _ => merged.push(t),
            }
        }
        let scale = merged
            .iter()
            .map(|t| t.coeff.norm())
            .fold(1.0_f64, f64::max);
        merged.retain(|t| t.coeff.norm() > 1e-14 * scale);
        PowerSum { terms: merged }
    }

    pub fn is_zero(&self) -> bool {
        self.canonicalized().terms.is_empty()
    }

    pub fn eval(&self, t: f64) -> Cx {
        debug_assert!(t >= 0.0);
        let mut acc = Cx::new(0.0, 0.0);
        for term in &self.terms {
            if t == 0.0 {
                if term.exponent.norm() <= MERGE_TOL {
                    acc += term.coeff;
                }
            } else {
                acc += term.coeff * (term.exponent * t.ln()).exp();
            }
        }
        acc
    }

    pub fn add(&self, other: &PowerSum) -> PowerSum {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        PowerSum { terms }.canonicalized()
    }

    pub fn scale(&self, c: Cx) -> PowerSum {
        PowerSum {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff * c,
                    exponent: t.exponent,
                })
                .collect(),
        }
        .canonicalized()
    }

    pub fn mul(&self, other: &PowerSum) -> PowerSum {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for x in &self.terms {
            for y in &other.terms {
                terms.push(Term {
                    coeff: x.coeff * y.coeff,
                    exponent: x.exponent + y.exponent,
                });
            }
        }
        PowerSum { terms }.canonicalized()
    }

    /// `conj(c t^beta) = conj(c) t^{conj(beta)}` (real `t`).
    pub fn conj(&self) -> PowerSum {
        PowerSum {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff.conj(),
                    exponent: t.exponent.conj(),
                })
                .collect(),
        }
        .canonicalized()
    }

    /// Termwise distance in canonical form; infinity when term structures
    /// disagree beyond `tol` in the exponents.
    pub fn distance(&self, other: &PowerSum) -> f64 {
        let a = self.canonicalized();
        let b = other.canonicalized();
        if a.terms.len() != b.terms.len() {
            return f64::INFINITY;
        }
        let mut d = 0.0_f64;
        for (x, y) in a.terms.iter().zip(&b.terms) {
            if (x.exponent - y.exponent).norm() > 1e-9 {
                return f64::INFINITY;
            }
            d = d.max((x.coeff - y.coeff).norm());
        }
        d
    }

    /// Supremum of `|p(t)|` over `[0, hi]` by grid search plus golden-section
    /// refinement.
    pub fn sup_abs(&self, hi: f64, grid_n: usize) -> f64 {
        sup_on_interval(|t| self.eval(t).norm(), hi, grid_n)
    }
}

fn sup_on_interval(f: impl Fn(f64) -> f64, hi: f64, grid_n: usize) -> f64 {
    let n = grid_n.max(2);
    let mut best_t = 0.0;
    let mut best = f64::NEG_INFINITY;
    for k in 0..=n {
        let t = hi * (k as f64) / (n as f64);
        let v = f(t);
        if v > best {
            best = v;
            best_t = t;
        }
    }
    // golden-section refinement around the best grid point
    let h = hi / (n as f64);
    let (mut lo, mut up) = ((best_t - h).max(0.0), (best_t + h).min(hi));
    let phi = (5.0_f64.sqrt() - 1.0) / 2.0;
    let mut x1 = up - phi * (up - lo);
    let mut x2 = lo + phi * (up - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while up - lo > 1e-12 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + phi * (up - lo);
            f2 = f(x2);
        } else {
            up = x2;
            x2 = x1;
            f2 = f1;
            x1 = up - phi * (up - lo);
            f1 = f(x1);
        }
    }
    best.max(f1).max(f2)
}

/// A 2x2 matrix of power sums on `[0, s_end]`; membership in the image
/// algebra requires the off-diagonal entries to vanish at 0 and the diagonal
/// to be scalar there.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymbolMatrix {
    pub e11: PowerSum,
    pub e12: PowerSum,
    pub e21: PowerSum,
    pub e22: PowerSum,
    pub s_end: f64,
}

impl SymbolMatrix {
    pub fn zero(s_end: f64) -> Self {
        SymbolMatrix {
            e11: PowerSum::zero(),
            e12: PowerSum::zero(),
            e21: PowerSum::zero(),
            e22: PowerSum::zero(),
            s_end,
        }
    }

    pub fn identity(s_end: f64) -> Self {
        let one = PowerSum::constant(Cx::new(1.0, 0.0));
        SymbolMatrix {
            e11: one.clone(),
            e12: PowerSum::zero(),
            e21: PowerSum::zero(),
            e22: one,
            s_end,
        }
    }

    pub fn entries(&self) -> [&PowerSum; 4] {
        [&self.e11, &self.e12, &self.e21, &self.e22]
    }

    pub fn eval(&self, t: f64) -> [Cx; 4] {
        [
            self.e11.eval(t),
            self.e12.eval(t),
            self.e21.eval(t),
            self.e22.eval(t),
        ]
    }

    /// Scalar-at-zero membership invariant of the image algebra.
    pub fn check_membership_invariant(&self) -> Result<()> {
        let [a, b, c, d] = self.eval(0.0);
        let tol = 1e-10;
        if b.norm() > tol || c.norm() > tol || (a - d).norm() > tol {
            return Err(Error::InternalConsistency(
                "value at 0 is not a scalar multiple of the identity".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &SymbolMatrix) -> Result<SymbolMatrix> {
        self.check_endpoint(other)?;
        Ok(SymbolMatrix {
            e11: self.e11.add(&other.e11),
            e12: self.e12.add(&other.e12),
            e21: self.e21.add(&other.e21),
            e22: self.e22.add(&other.e22),
            s_end: self.s_end,
        })
    }

    pub fn scale(&self, c: Cx) -> SymbolMatrix {
        SymbolMatrix {
            e11: self.e11.scale(c),
            e12: self.e12.scale(c),
            e21: self.e21.scale(c),
            e22: self.e22.scale(c),
            s_end: self.s_end,
        }
    }

    pub fn mul(&self, other: &SymbolMatrix) -> Result<SymbolMatrix> {
        self.check_endpoint(other)?;
        Ok(SymbolMatrix {
            e11: self.e11.mul(&other.e11).add(&self.e12.mul(&other.e21)),
            e12: self.e11.mul(&other.e12).add(&self.e12.mul(&other.e22)),
            e21: self.e21.mul(&other.e11).add(&self.e22.mul(&other.e21)),
            e22: self.e21.mul(&other.e12).add(&self.e22.mul(&other.e22)),
            s_end: self.s_end,
        })
    }

    /// Conjugate transpose with conjugated coefficients and exponents.
    pub fn adjoint(&self) -> SymbolMatrix {
        SymbolMatrix {
            e11: self.e11.conj(),
            e12: self.e21.conj(),
            e21: self.e12.conj(),
            e22: self.e22.conj(),
            s_end: self.s_end,
        }
    }

    pub fn distance(&self, other: &SymbolMatrix) -> f64 {
        self.entries()
            .iter()
            .zip(other.entries())
            .map(|(x, y)| x.distance(y))
            .fold(0.0_f64, f64::max)
    }

    fn check_endpoint(&self, other: &SymbolMatrix) -> Result<()> {
        if (self.s_end - other.s_end).abs() > 1e-12 * self.s_end.max(1.0) {
            return Err(Error::MismatchedEndpoints);
        }
        Ok(())
    }
}

/// Largest singular value of a 2x2 complex matrix, by the closed formula
/// `sigma_max^2 = (F + sqrt(F^2 - 4 |det|^2)) / 2` with `F` the squared
/// Frobenius norm.
pub fn sigma_max_2x2(m: [Cx; 4]) -> f64 {
    let frob2: f64 = m.iter().map(|e| e.norm_sqr()).sum();
    let det = m[0] * m[3] - m[1] * m[2];
    let inner = (frob2 * frob2 - 4.0 * det.norm_sqr()).max(0.0);
    (0.5 * (frob2 + inner.sqrt())).sqrt()
}

/// Eigenvalues of a 2x2 complex matrix by the quadratic formula.
pub fn eigenvalues_2x2(m: [Cx; 4]) -> [Cx; 2] {
    let tr = m[0] + m[3];
    let det = m[0] * m[3] - m[1] * m[2];
    let disc = (tr * tr - 4.0 * det).sqrt();
    [(tr + disc) / 2.0, (tr - disc) / 2.0]
}

/// The element `c I + f(C*C) + g(CC*) + C p(C*C) + C* q(CC*)` of the dense
/// subalgebra, modulo compacts. Polynomials are coefficient lists from
/// degree 0; `f` and `g` must have zero constant term.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraElement {
    #[serde(default = "zero_cx", with = "crate::jsonio::cx")]
    pub c: Cx,
    #[serde(default, with = "crate::jsonio::cxvec")]
    pub f: Vec<Cx>,
    #[serde(default, with = "crate::jsonio::cxvec")]
    pub g: Vec<Cx>,
    #[serde(default, with = "crate::jsonio::cxvec")]
    pub p: Vec<Cx>,
    #[serde(default, with = "crate::jsonio::cxvec")]
    pub q: Vec<Cx>,
}

fn zero_cx() -> Cx {
    Cx::new(0.0, 0.0)
}

impl AlgebraElement {
    pub fn validate(&self) -> Result<()> {
        for poly in [&self.f, &self.g] {
            if let Some(c0) = poly.first() {
                if c0.norm() > 1e-14 {
                    return Err(Error::NotCanonicalForm);
                }
            }
        }
        Ok(())
    }
}

fn poly_powersum(coeffs: &[Cx], shift: f64) -> PowerSum {
    PowerSum {
        terms: coeffs
            .iter()
            .enumerate()
            .map(|(k, &c)| Term {
                coeff: c,
                exponent: Cx::new(k as f64 + shift, 0.0),
            })
            .collect(),
    }
    .canonicalized()
}

/// The symbol of an algebra element:
/// `[[c + g, sqrt(t) p], [sqrt(t) q, c + f]]` on `[0, s]`.
pub fn psi_of_element(elem: &AlgebraElement, s: f64) -> Result<SymbolMatrix> {
    if s <= 0.0 {
        return Err(Error::Precondition("s must be positive".into()));
    }
    elem.validate()?;
    let c = PowerSum::constant(elem.c);
    let m = SymbolMatrix {
        e11: c.add(&poly_powersum(&elem.g, 0.0)),
        e12: poly_powersum(&elem.p, 0.5),
        e21: poly_powersum(&elem.q, 0.5),
        e22: c.add(&poly_powersum(&elem.f, 0.0)),
        s_end: s,
    };
    m.check_membership_invariant()?;
    Ok(m)
}

/// A letter of a word in the generator and its adjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gen {
    X,
    XStar,
}

/// Symbol of the generator: `[[0, sqrt(t)], [0, 0]]`.
pub fn generator_symbol(s: f64) -> SymbolMatrix {
    let mut m = SymbolMatrix::zero(s);
    m.e12 = PowerSum::monomial(Cx::new(1.0, 0.0), Cx::new(0.5, 0.0)).unwrap();
    m
}

/// Symbol of a word over `{x, x*}` as the product of generator symbols.
pub fn psi_of_word(word: &[Gen], s: f64) -> Result<SymbolMatrix> {
    if word.is_empty() {
        return Err(Error::Precondition("empty word".into()));
    }
    let x = generator_symbol(s);
    let xs = x.adjoint();
    let mut acc: Option<SymbolMatrix> = None;
    for g in word {
        let m = match g {
            Gen::X => &x,
            Gen::XStar => &xs,
        };
        acc = Some(match acc {
            None => m.clone(),
            Some(a) => a.mul(m)?,
        });
    }
    Ok(acc.unwrap())
}

/// Canonical algebra-element form of a word (modulo compacts): a strictly
/// alternating word reduces to a single `f`/`g`/`p`/`q` monomial, anything
/// else is compact.
pub fn word_to_element(word: &[Gen]) -> AlgebraElement {
    let zero = AlgebraElement {
        c: Cx::new(0.0, 0.0),
        f: vec![],
        g: vec![],
        p: vec![],
        q: vec![],
    };
    if word.is_empty() {
        return zero;
    }
    if word.windows(2).any(|w| w[0] == w[1]) {
        return zero; // adjacent equal letters: compact
    }
    let n = word.len();
    let mono = |deg: usize| {
        let mut v = vec![Cx::new(0.0, 0.0); deg + 1];
        v[deg] = Cx::new(1.0, 0.0);
        v
    };
    let mut out = zero;
    match (word[0], word[n - 1]) {
        (Gen::X, Gen::XStar) => out.g = mono(n / 2),
        (Gen::XStar, Gen::X) => out.f = mono(n / 2),
        (Gen::X, Gen::X) => out.p = mono((n - 1) / 2),
        (Gen::XStar, Gen::XStar) => out.q = mono((n - 1) / 2),
    }
    out
}

/// `sup_{[0, s]} sigma_max(F(t))`, the essential norm of anything with this
/// symbol, on a 4097-point grid with golden-section refinement.
pub fn essential_norm(m: &SymbolMatrix) -> f64 {
    essential_norm_grid(m, 4096)
}

pub fn essential_norm_grid(m: &SymbolMatrix, grid_n: usize) -> f64 {
    sup_on_interval(|t| sigma_max_2x2(m.eval(t)), m.s_end, grid_n)
}

/// Sampled essential spectrum: eigenvalues of `F(t)` over the grid. The
/// scalar eigenvalue at `t = 0` is always included.
pub fn essential_spectrum(m: &SymbolMatrix, grid_n: usize) -> Vec<Cx> {
    let n = grid_n.max(2);
    let mut out = Vec::with_capacity(2 * (n + 1));
    for k in 0..=n {
        let t = m.s_end * (k as f64) / (n as f64);
        out.extend(eigenvalues_2x2(m.eval(t)));
    }
    out
}

/// Distance from a query point to a sampled spectrum.
pub fn spectrum_distance(samples: &[Cx], z: Cx) -> f64 {
    samples
        .iter()
        .map(|w| (z - w).norm())
        .fold(f64::INFINITY, f64::min)
}

/// Rows of the membership table of linear-fractional symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableRow {
    A,
    B,
    C,
    D,
}

/// The symbol of the composition operator of a table row.
///
/// Rows (a)/(d) use the translation scale `b` of the range family, rows
/// (b)/(c) the scale `c`. Row placement follows the homomorphism property of
/// the symbol map: `(b) -> (1,1)`, `(d) -> (2,2)`, `(a) -> (1,2)`,
/// `(c) -> (2,1)`.
pub fn table2_symbol(row: TableRow, a: Cx, s: f64, b: f64, c: f64) -> Result<SymbolMatrix> {
    let in_range = match row {
        TableRow::D | TableRow::B => a.re > 0.0,
        TableRow::A => a.re > -b,
        TableRow::C => a.re > -c,
    };
    // a = 0 in rows (a)/(c) is the generator / its Krein partner itself.
    let at_zero = matches!(row, TableRow::A | TableRow::C) && a.norm() < 1e-14;
    if !in_range && !at_zero {
        return Err(Error::OutsideTranslationRange);
    }
    let scale = match row {
        TableRow::A | TableRow::D => 2.0 * b,
        TableRow::B | TableRow::C => 2.0 * c,
    };
    let expo = a / scale;
    // (t/s)^{a/2b} = s^{-a/2b} t^{a/2b}
    let spow = |e: Cx| (-e * s.ln()).exp();
    let mut m = SymbolMatrix::zero(s);
    match row {
        TableRow::D => m.e22 = PowerSum::monomial(spow(expo), expo)?,
        TableRow::B => m.e11 = PowerSum::monomial(spow(expo), expo)?,
        TableRow::A => {
            m.e12 = PowerSum::monomial(spow(expo), expo + Cx::new(0.5, 0.0))?;
        }
        TableRow::C => {
            m.e21 = PowerSum::monomial(spow(expo) / s, expo + Cx::new(0.5, 0.0))?;
        }
    }
    Ok(m)
}

/// The rescaling automorphism `(Lambda F)(t) = F(t^{2n+1} / s^{2n})`,
/// applied exponent-wise: `t^beta -> s^{-2 n beta} t^{(2n+1) beta}`.
pub fn lambda_auto(m: &SymbolMatrix, n: u32) -> SymbolMatrix {
    let s = m.s_end;
    let map = |ps: &PowerSum| -> PowerSum {
        PowerSum {
            terms: ps
                .terms
                .iter()
                .map(|t| Term {
                    coeff: t.coeff * (-2.0 * (n as f64) * t.exponent * s.ln()).exp(),
                    exponent: t.exponent * (2.0 * (n as f64) + 1.0),
                })
                .collect(),
        }
        .canonicalized()
    };
    SymbolMatrix {
        e11: map(&m.e11),
        e12: map(&m.e12),
        e21: map(&m.e21),
        e22: map(&m.e22),
        s_end: s,
    }
}

/// A finite combination `unit * I + sum c_i C_{rho_{a_i}}` of composition
/// operators of parabolic non-automorphisms with common fixed point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParabolicCombination {
    #[serde(with = "crate::jsonio::cx")]
    pub gamma: Cx,
    #[serde(default = "zero_cx", with = "crate::jsonio::cx")]
    pub unit: Cx,
    pub terms: Vec<ParabolicTerm>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ParabolicTerm {
    #[serde(with = "crate::jsonio::cx")]
    pub a: Cx,
    #[serde(rename = "c", with = "crate::jsonio::cx")]
    pub coeff: Cx,
}

/// Gelfand transform of the combination: the function
/// `unit + sum c_i t^{a_i}` on `[0, 1]`. Independent of the fixed point.
pub fn gelfand(p: &ParabolicCombination) -> Result<PowerSum> {
    let mut terms = vec![Term {
        coeff: p.unit,
        exponent: Cx::new(0.0, 0.0),
    }];
    for t in &p.terms {
        if t.a.re <= 0.0 {
            return Err(Error::OutsideTranslationRange);
        }
        terms.push(Term {
            coeff: t.coeff,
            exponent: t.a,
        });
    }
    Ok(PowerSum { terms }.canonicalized())
}

/// Essential norm in the parabolic algebra: `sup_{[0,1]} |gelfand|`.
pub fn parabolic_ess_norm(p: &ParabolicCombination) -> Result<f64> {
    Ok(gelfand(p)?.sup_abs(1.0, 4096))
}

/// Sampled essential spectrum in the parabolic algebra: the image of
/// `[0, 1]` under the Gelfand transform.
pub fn parabolic_ess_spectrum(p: &ParabolicCombination, grid_n: usize) -> Result<Vec<Cx>> {
    let g = gelfand(p)?;
    let n = grid_n.max(2);
    Ok((0..=n).map(|k| g.eval(k as f64 / n as f64)).collect())
}

/// The joint essential spectrum curve `{(t^{a_1}, ..., t^{a_n}) : t in [0,1]}`,
/// sampled on a grid.
pub fn joint_essential_spectrum(a_list: &[Cx], grid_n: usize) -> Result<Vec<Vec<Cx>>> {
    for a in a_list {
        if a.re <= 0.0 {
            return Err(Error::OutsideTranslationRange);
        }
    }
    let n = grid_n.max(2);
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let t = k as f64 / n as f64;
        let tuple: Vec<Cx> = a_list
            .iter()
            .map(|&a| {
                if t == 0.0 {
                    Cx::new(0.0, 0.0)
                } else {
                    (a * t.ln()).exp()
                }
            })
            .collect();
        out.push(tuple);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Cx {
        Cx::new(re, im)
    }

    fn elem(c: f64, f: &[f64], g: &[f64], p: &[f64], q: &[f64]) -> AlgebraElement {
        let v = |s: &[f64]| s.iter().map(|&x| cx(x, 0.0)).collect::<Vec<_>>();
        AlgebraElement {
            c: cx(c, 0.0),
            f: v(f),
            g: v(g),
            p: v(p),
            q: v(q),
        }
    }

    #[test]
    fn psi_of_element_examples() {
        // p = 1: the generator symbol
        let m = psi_of_element(&elem(0.0, &[], &[], &[1.0], &[]), 2.0).unwrap();
        assert!(m.distance(&generator_symbol(2.0)) < 1e-14);

        // c = 1: identity
        let m = psi_of_element(&elem(1.0, &[], &[], &[], &[]), 2.0).unwrap();
        assert!(m.distance(&SymbolMatrix::identity(2.0)) < 1e-14);

        // f(t) = t: diag(0, t), which is also Psi(C*)Psi(C)
        let m = psi_of_element(&elem(0.0, &[0.0, 1.0], &[], &[], &[]), 2.0).unwrap();
        let x = generator_symbol(2.0);
        let prod = x.adjoint().mul(&x).unwrap();
        assert!(m.distance(&prod) < 1e-14);

        // nonzero constant term of f is rejected
        assert!(matches!(
            psi_of_element(&elem(0.0, &[1.0], &[], &[], &[]), 2.0),
            Err(Error::NotCanonicalForm)
        ));
    }

    #[test]
    fn psi_of_word_examples() {
        use Gen::*;
        let m = psi_of_word(&[XStar, X], 2.0).unwrap();
        let expect = psi_of_element(&elem(0.0, &[0.0, 1.0], &[], &[], &[]), 2.0).unwrap();
        assert!(m.distance(&expect) < 1e-14);

        // x x is compact: zero symbol
        let m = psi_of_word(&[X, X], 2.0).unwrap();
        assert!(m.entries().iter().all(|e| e.is_zero()));

        let m = psi_of_word(&[X], 2.0).unwrap();
        assert!(m.distance(&generator_symbol(2.0)) < 1e-14);
    }

    #[test]
    fn word_canonical_form_agrees() {
        use Gen::*;
        let words: &[&[Gen]] = &[
            &[X],
            &[XStar],
            &[X, XStar],
            &[XStar, X],
            &[X, XStar, X],
            &[XStar, X, XStar],
            &[X, X],
            &[X, XStar, X, XStar],
            &[XStar, X, X, XStar],
        ];
        for w in words {
            let direct = psi_of_word(w, 2.0).unwrap();
            let via_elem = psi_of_element(&word_to_element(w), 2.0).unwrap();
            assert!(direct.distance(&via_elem) < 1e-12, "word {w:?}");
        }
    }

    #[test]
    fn symbol_arithmetic() {
        let x = generator_symbol(2.0);
        let m = x.adjoint().mul(&x).unwrap();
        assert!((m.e22.eval(2.0) - cx(2.0, 0.0)).norm() < 1e-14);
        // add zero
        let z = SymbolMatrix::zero(2.0);
        assert!(x.add(&z).unwrap().distance(&x) < 1e-14);
        // involution
        assert!(x.adjoint().adjoint().distance(&x) < 1e-14);
        // endpoint mismatch
        assert!(matches!(
            x.mul(&SymbolMatrix::zero(3.0)),
            Err(Error::MismatchedEndpoints)
        ));
    }

    #[test]
    fn essential_norm_examples() {
        let x = generator_symbol(2.0);
        assert!((essential_norm(&x) - 2.0_f64.sqrt()).abs() < 1e-10);
        assert!((essential_norm(&SymbolMatrix::identity(2.0)) - 1.0).abs() < 1e-12);
        let m = x.adjoint().mul(&x).unwrap();
        assert!((essential_norm(&m) - 2.0).abs() < 1e-10);
        // adjoint invariance
        assert!((essential_norm(&x.adjoint()) - essential_norm(&x)).abs() < 1e-12);
    }

    #[test]
    fn essential_spectrum_examples() {
        let x = generator_symbol(2.0);
        let spec = essential_spectrum(&x, 64);
        assert!(spec.iter().all(|z| z.norm() < 1e-12));

        let spec = essential_spectrum(&SymbolMatrix::identity(2.0), 64);
        assert!(spec.iter().all(|z| (z - cx(1.0, 0.0)).norm() < 1e-12));
    }

    #[test]
    fn table2_examples() {
        // row (a), a = 0: the generator symbol
        let m = table2_symbol(TableRow::A, cx(0.0, 0.0), 2.0, 0.2, 0.1).unwrap();
        assert!(m.distance(&generator_symbol(2.0)) < 1e-13);

        // row (d), a = 2b: diag(0, t/s)
        let m = table2_symbol(TableRow::D, cx(0.4, 0.0), 2.0, 0.2, 0.1).unwrap();
        assert!(m.e11.is_zero() && m.e12.is_zero() && m.e21.is_zero());
        assert!((m.e22.eval(2.0) - cx(1.0, 0.0)).norm() < 1e-12);
        assert!((m.e22.eval(1.0) - cx(0.5, 0.0)).norm() < 1e-12);

        // row (c), a = 2c, s = 2: entry t^{3/2}/4 at (2,1)
        let m = table2_symbol(TableRow::C, cx(0.2, 0.0), 2.0, 0.2, 0.1).unwrap();
        let expect = PowerSum::monomial(cx(0.25, 0.0), cx(1.5, 0.0)).unwrap();
        assert!(m.e21.distance(&expect) < 1e-12);

        assert!(matches!(
            table2_symbol(TableRow::D, cx(-0.1, 0.0), 2.0, 0.2, 0.1),
            Err(Error::OutsideTranslationRange)
        ));
    }

    #[test]
    fn table2_products_match_operator_relations() {
        // C*C = s C_{rho_{eta,2b}}: diag(0, t) = s * row (d) at a = 2b
        let s = 2.0;
        let (b, c) = (0.2, 0.1);
        let x = generator_symbol(s);
        let cstar_c = x.adjoint().mul(&x).unwrap();
        let row_d = table2_symbol(TableRow::D, cx(2.0 * b, 0.0), s, b, c).unwrap();
        assert!(cstar_c.distance(&row_d.scale(cx(s, 0.0))) < 1e-12);
        // CC* = s C_{rho_{zeta,2c}}: diag(t, 0) = s * row (b) at a = 2c
        let c_cstar = x.mul(&x.adjoint()).unwrap();
        let row_b = table2_symbol(TableRow::B, cx(2.0 * c, 0.0), s, b, c).unwrap();
        assert!(c_cstar.distance(&row_b.scale(cx(s, 0.0))) < 1e-12);
    }

    #[test]
    fn lambda_examples() {
        // generator: sqrt(t) -> t^{3/2} / s with n = 1, s = 2
        let x = generator_symbol(2.0);
        let lx = lambda_auto(&x, 1);
        let expect = PowerSum::monomial(cx(0.5, 0.0), cx(1.5, 0.0)).unwrap();
        assert!(lx.e12.distance(&expect) < 1e-13);

        let id = SymbolMatrix::identity(2.0);
        assert!(lambda_auto(&id, 1).distance(&id) < 1e-14);

        // diag(0, t) -> diag(0, t^3/4)
        let m = x.adjoint().mul(&x).unwrap();
        let lm = lambda_auto(&m, 1);
        let expect = PowerSum::monomial(cx(0.25, 0.0), cx(3.0, 0.0)).unwrap();
        assert!(lm.e22.distance(&expect) < 1e-13);
    }

    #[test]
    fn lambda_is_multiplicative() {
        use Gen::*;
        let w1 = psi_of_word(&[X, XStar, X], 2.0).unwrap();
        let w2 = psi_of_word(&[XStar, X], 2.0).unwrap();
        for n in 1..=3 {
            let lhs = lambda_auto(&w1.mul(&w2).unwrap(), n);
            let rhs = lambda_auto(&w1, n).mul(&lambda_auto(&w2, n)).unwrap();
            assert!(lhs.distance(&rhs) < 1e-12);
        }
    }

    #[test]
    fn gelfand_examples() {
        let p = ParabolicCombination {
            gamma: cx(1.0, 0.0),
            unit: cx(0.0, 0.0),
            terms: vec![ParabolicTerm {
                a: cx(1.0, 0.0),
                coeff: cx(1.0, 0.0),
            }],
        };
        assert!((parabolic_ess_norm(&p).unwrap() - 1.0).abs() < 1e-10);
        let spec = parabolic_ess_spectrum(&p, 64).unwrap();
        assert!((spec[0]).norm() < 1e-14 && (spec[64] - cx(1.0, 0.0)).norm() < 1e-14);

        let unit = ParabolicCombination {
            gamma: cx(1.0, 0.0),
            unit: cx(1.0, 0.0),
            terms: vec![],
        };
        let g = gelfand(&unit).unwrap();
        assert!((g.eval(0.37) - cx(1.0, 0.0)).norm() < 1e-14);

        // 2t - t^2 on [0,1]: essential norm 1
        let p = ParabolicCombination {
            gamma: cx(1.0, 0.0),
            unit: cx(0.0, 0.0),
            terms: vec![
                ParabolicTerm {
                    a: cx(1.0, 0.0),
                    coeff: cx(2.0, 0.0),
                },
                ParabolicTerm {
                    a: cx(2.0, 0.0),
                    coeff: cx(-1.0, 0.0),
                },
            ],
        };
        assert!((parabolic_ess_norm(&p).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn gelfand_is_homomorphism() {
        // product of combinations convolves translation numbers
        let mk = |terms: Vec<(f64, f64)>| ParabolicCombination {
            gamma: cx(1.0, 0.0),
            unit: cx(0.0, 0.0),
            terms: terms
                .into_iter()
                .map(|(a, c)| ParabolicTerm {
                    a: cx(a, 0.0),
                    coeff: cx(c, 0.0),
                })
                .collect(),
        };
        let p1 = mk(vec![(1.0, 2.0), (0.5, -1.0)]);
        let p2 = mk(vec![(0.7, 1.5), (2.0, 0.25)]);
        let mut conv = Vec::new();
        for t1 in &p1.terms {
            for t2 in &p2.terms {
                conv.push((t1.a + t2.a, t1.coeff * t2.coeff));
            }
        }
        let prod = ParabolicCombination {
            gamma: cx(1.0, 0.0),
            unit: cx(0.0, 0.0),
            terms: conv
                .into_iter()
                .map(|(a, c)| ParabolicTerm { a, coeff: c })
                .collect(),
        };
        let lhs = gelfand(&prod).unwrap();
        let rhs = gelfand(&p1).unwrap().mul(&gelfand(&p2).unwrap());
        assert!(lhs.distance(&rhs) < 1e-12);
    }

    #[test]
    fn joint_spectrum_examples() {
        let pts = joint_essential_spectrum(&[cx(1.0, 0.0), cx(2.0, 0.0)], 64).unwrap();
        for p in &pts {
            assert!((p[1] - p[0] * p[0]).norm() < 1e-13);
        }
        let pts = joint_essential_spectrum(&[cx(1.0, 0.0)], 8).unwrap();
        assert!((pts[0][0]).norm() < 1e-14 && (pts[8][0] - cx(1.0, 0.0)).norm() < 1e-14);

        // |t^{1+i}| = t
        let pts = joint_essential_spectrum(&[cx(1.0, 0.0), cx(1.0, 1.0)], 32).unwrap();
        for p in &pts {
            assert!((p[1].norm() - p[0].norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn psi_multiplicativity_random_words() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(101);
        for _ in 0..200 {
            let word = |rng: &mut rand_chacha::ChaCha8Rng| {
                let len = rng.gen_range(1..=6);
                (0..len)
                    .map(|_| {
                        if rng.gen::<bool>() {
                            Gen::X
                        } else {
                            Gen::XStar
                        }
                    })
                    .collect::<Vec<_>>()
            };
            let w1 = word(&mut rng);
            let w2 = word(&mut rng);
            let mut cat = w1.clone();
            cat.extend_from_slice(&w2);
            let lhs = psi_of_word(&cat, 2.0).unwrap();
            let rhs = psi_of_word(&w1, 2.0)
                .unwrap()
                .mul(&psi_of_word(&w2, 2.0).unwrap())
                .unwrap();
            let d = lhs.distance(&rhs);
            assert!(
                d < 1e-10 || (d.is_infinite() && false),
                "words {w1:?} {w2:?}"
            );
        }
    }

    #[test]
    fn membership_invariant_preserved() {
        use Gen::*;
        let x = psi_of_word(&[X, XStar], 2.0).unwrap();
        let y = psi_of_word(&[XStar, X, XStar], 2.0).unwrap();
        for m in [
            &x,
            &y,
            &x.add(&y).unwrap(),
            &x.mul(&y).unwrap(),
            &x.adjoint(),
        ] {
            m.check_membership_invariant().unwrap();
        }
    }
}
