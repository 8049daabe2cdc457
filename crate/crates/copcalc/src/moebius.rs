//! Exact algebra of linear-fractional self-maps of the unit disk:
//! composition, iteration, jets, classification, Krein adjoints, parabolic
//! maps, half-plane conjugation and boundary curvature.

#[cfg(test)]
use crate::TOL_EQ;
use crate::{Cx, Error, Result, TOL_DEGENERATE};
use serde::{Deserialize, Serialize};

/// A linear-fractional map `z -> (az + b)/(cz + d)`, stored as a projective
/// class: coefficients are canonically scaled so the largest-modulus
/// coefficient equals 1 exactly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mobius {
    #[serde(with = "crate::jsonio::cx")]
    pub a: Cx,
    #[serde(with = "crate::jsonio::cx")]
    pub b: Cx,
    #[serde(with = "crate::jsonio::cx")]
    pub c: Cx,
    #[serde(with = "crate::jsonio::cx")]
    pub d: Cx,
}

/// A point of the Riemann sphere; fixed points at infinity are flagged, not
/// encoded as large floats.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum SpherePoint {
    Finite(#[serde(with = "crate::jsonio::cx")] Cx),
    Infinity,
}

impl SpherePoint {
    pub fn finite(self) -> Option<Cx> {
        match self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Identity,
    Parabolic,
    Elliptic,
    Hyperbolic,
    Loxodromic,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapClassification {
    pub fixed_points: Vec<SpherePoint>,
    pub kind: MapKind,
    pub is_disk_automorphism: bool,
    pub is_disk_self_map: bool,
    pub sup_norm_one: bool,
}

fn cx(re: f64, im: f64) -> Cx {
    Cx::new(re, im)
}

impl Mobius {
    /// Builds and canonicalizes a map; errors when `ad - bc` vanishes.
    pub fn new(a: Cx, b: Cx, c: Cx, d: Cx) -> Result<Self> {
        let m = Mobius { a, b, c, d }.canonicalized();
        if m.det().norm() < TOL_DEGENERATE {
            return Err(Error::DegenerateMap);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        Mobius {
            a: cx(1.0, 0.0),
            b: cx(0.0, 0.0),
            c: cx(0.0, 0.0),
            d: cx(1.0, 0.0),
        }
    }

    /// `z -> lambda z`.
    pub fn scaling(lambda: Cx) -> Result<Self> {
        Mobius::new(lambda, cx(0.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0))
    }

    pub fn coeffs(&self) -> [Cx; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// `ad - bc` in the canonical scaling.
    pub fn det(&self) -> Cx {
        self.a * self.d - self.b * self.c
    }

    /// Canonical scaling: divide by the largest-modulus coefficient (ties
    /// broken by position, with a relative tolerance so the operation is
    /// idempotent).
    pub fn canonicalized(&self) -> Self {
        let cs = self.coeffs();
        let max = cs.iter().map(|c| c.norm()).fold(0.0_f64, f64::max);
        if max == 0.0 {
            return *self;
        }
        let pivot = cs
            .iter()
            .copied()
            .find(|c| c.norm() >= max * (1.0 - 1e-12))
            .unwrap();
        Mobius {
            a: self.a / pivot,
            b: self.b / pivot,
            c: self.c / pivot,
            d: self.d / pivot,
        }
    }

    /// Evaluate the map; errors at a pole of the denominator.
    pub fn apply(&self, z: Cx) -> Result<Cx> {
        let den = self.c * z + self.d;
        if den.norm() < 1e-14 {
            return Err(Error::EvaluationAtPole);
        }
        Ok((self.a * z + self.b) / den)
    }

    /// The inverse as a Möbius map (always exists projectively).
    pub fn inverse(&self) -> Self {
        Mobius {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
        .canonicalized()
    }
}

/// Canonicalized `f o g` via the coefficient-matrix product.
pub fn compose(f: &Mobius, g: &Mobius) -> Result<Mobius> {
    let m = Mobius {
        a: f.a * g.a + f.b * g.c,
        b: f.a * g.b + f.b * g.d,
        c: f.c * g.a + f.d * g.c,
        d: f.c * g.b + f.d * g.d,
    }
    .canonicalized();
    if m.det().norm() < TOL_DEGENERATE {
        return Err(Error::DegenerateComposition);
    }
    Ok(m)
}

/// The n-th iterate under composition; `n = -1` is the inverse, `n = 0` the
/// identity.
pub fn iterate(f: &Mobius, n: i64) -> Result<Mobius> {
    let base = if n < 0 { f.inverse() } else { *f };
    let mut acc = Mobius::identity();
    for _ in 0..n.unsigned_abs() {
        acc = compose(&acc, &base)?;
    }
    Ok(acc)
}

/// `(f(z0), f'(z0), ..., f^(k)(z0))` for `k <= 3`, by the closed rational
/// derivative formulas.
pub fn jet(f: &Mobius, z0: Cx, k: usize) -> Result<Vec<Cx>> {
    assert!(k <= 3, "jet supports order <= 3");
    let den = f.c * z0 + f.d;
    if den.norm() < 1e-14 {
        return Err(Error::EvaluationAtPole);
    }
    let det = f.det();
    let mut out = Vec::with_capacity(k + 1);
    out.push((f.a * z0 + f.b) / den);
    if k >= 1 {
        out.push(det / (den * den));
    }
    if k >= 2 {
        out.push(-2.0 * f.c * det / (den * den * den));
    }
    if k >= 3 {
        out.push(6.0 * f.c * f.c * det / (den * den * den * den));
    }
    Ok(out)
}

/// Projective equality: all cross-coefficient 2x2 determinants vanish within
/// `tol` relative to the coefficient scale.
pub fn projective_eq(f: &Mobius, g: &Mobius, tol: f64) -> bool {
    let scale = f
        .coeffs()
        .iter()
        .chain(g.coeffs().iter())
        .map(|c| c.norm())
        .fold(0.0_f64, f64::max)
        .powi(2)
        .max(1e-300);
    let pairs = [
        f.a * g.d - g.a * f.d,
        f.a * g.c - g.a * f.c,
        f.b * g.d - g.b * f.d,
        f.b * g.c - g.b * f.c,
        f.a * g.b - g.a * f.b,
        f.c * g.d - g.c * f.d,
    ];
    pairs.iter().all(|p| p.norm() <= tol * scale)
}

/// The Krein adjoint `sigma(z) = (conj(a) z - conj(c)) / (-conj(b) z + conj(d))`.
pub fn krein_adjoint(f: &Mobius) -> Mobius {
    Mobius {
        a: f.a.conj(),
        b: -f.c.conj(),
        c: -f.b.conj(),
        d: f.d.conj(),
    }
    .canonicalized()
}

/// The parabolic map fixing `gamma` (unimodular) with translation number `a`.
///
/// `rho_{1,a}(z) = ((2-a)z + a) / (-az + 2 + a)`, conjugated to a general
/// fixed point by rotation. A self-map of the disk requires `Re a >= 0`;
/// `allow_negative` permits the externally tangent case.
pub fn parabolic(gamma: Cx, a: Cx, allow_negative: bool) -> Result<Mobius> {
    if (gamma.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::Precondition("fixed point must be unimodular".into()));
    }
    if a.re < -1e-14 && !allow_negative {
        return Err(Error::NotSelfMap);
    }
    let two = cx(2.0, 0.0);
    Mobius::new((two - a) * gamma, a * gamma * gamma, -a, (two + a) * gamma)
}

/// Disk-to-upper-half-plane map `tau_gamma(z) = i (gamma - z)/(gamma + z)`,
/// sending `gamma` to 0.
pub fn tau(gamma: Cx) -> Mobius {
    let i = cx(0.0, 1.0);
    Mobius {
        a: -i,
        b: i * gamma,
        c: cx(1.0, 0.0),
        d: gamma,
    }
    .canonicalized()
}

/// Recovers `(gamma, a)` with `f = rho_{gamma,a}` for a parabolic `f`.
pub fn translation_number(f: &Mobius) -> Result<(Cx, Cx)> {
    let class = classify(f);
    if class.kind != MapKind::Parabolic {
        return Err(Error::NotParabolic);
    }
    let gamma = class
        .fixed_points
        .first()
        .and_then(|p| p.finite())
        .ok_or(Error::NotParabolic)?;
    if (gamma.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::Precondition(
            "fixed point off the unit circle".into(),
        ));
    }
    let gamma = gamma / gamma.norm();
    let t = tau(gamma);
    let u = compose(&compose(&t, f)?, &t.inverse())?;
    let j = jet(&u, cx(0.0, 0.0), 2)?;
    let a = j[2] / cx(0.0, 2.0);
    Ok((gamma, a))
}

/// Conjugates `f` (with `f(alpha) = beta` on the circle) to a half-plane
/// self-map fixing 0; returns the map and its 2-jet at 0.
pub fn conjugate_to_halfplane(f: &Mobius, alpha: Cx, beta: Cx) -> Result<(Mobius, Vec<Cx>)> {
    let fa = f.apply(alpha)?;
    if (fa - beta).norm() > 1e-10 {
        return Err(Error::BoundaryValueMismatch);
    }
    let u = compose(&compose(&tau(beta), f)?, &tau(alpha).inverse())?;
    let j = jet(&u, cx(0.0, 0.0), 2)?;
    Ok((u, j))
}

/// The image of the unit circle: `(center, radius)`, with `radius = inf` in
/// the line case.
pub fn image_circle(f: &Mobius) -> (Cx, f64) {
    let probes = [cx(1.0, 0.0), cx(0.0, 1.0), cx(-1.0, 0.0), cx(0.0, -1.0)];
    let mut imgs = Vec::new();
    for p in probes {
        if let Ok(w) = f.apply(p) {
            imgs.push(w);
        }
    }
    if imgs.len() < 3 {
        return (cx(0.0, 0.0), f64::INFINITY);
    }
    let (w1, w2, w3) = (imgs[0], imgs[1], imgs[2]);
    let u = w2 - w1;
    let v = w3 - w1;
    let cross = u.re * v.im - u.im * v.re;
    let scale = u.norm().max(v.norm()).powi(2).max(1e-300);
    if cross.abs() < 1e-12 * scale {
        return (cx(0.0, 0.0), f64::INFINITY);
    }
    // Perpendicular-bisector linear system for the circumcenter.
    let b1 = (w2.norm_sqr() - w1.norm_sqr()) / 2.0;
    let b2 = (w3.norm_sqr() - w1.norm_sqr()) / 2.0;
    let det = u.re * v.im - u.im * v.re;
    let x = (b1 * v.im - b2 * u.im) / det;
    let y = (b2 * u.re - b1 * v.re) / det;
    let center = cx(x, y);
    let radius = (w1 - center).norm();
    (center, radius)
}

/// Curvature of `f(boundary circle)` at `f(alpha)` for `|alpha| = 1`:
/// `Re(1 + alpha f''(alpha)/f'(alpha)) / |f'(alpha)|`. Zero in the line case.
pub fn curvature_at(f: &Mobius, alpha: Cx) -> Result<f64> {
    let j = jet(f, alpha, 2)?;
    if j[1].norm() < 1e-300 {
        return Err(Error::DegenerateJet);
    }
    let kappa = (Cx::new(1.0, 0.0) + alpha * j[2] / j[1]).re / j[1].norm();
    Ok(kappa)
}

/// Classification: fixed points, conjugacy kind, and the disk-geometry flags.
pub fn classify(f: &Mobius) -> MapClassification {
    let f = f.canonicalized();
    let is_identity = projective_eq(&f, &Mobius::identity(), 1e-13);
    // (a + d)^2 / (ad - bc) is scale-invariant; 4 characterizes parabolic.
    let q = (f.a + f.d) * (f.a + f.d) / f.det();
    let is_parabolic = !is_identity && (q - cx(4.0, 0.0)).norm() < 1e-9;
    let fixed_points = fixed_points_of(&f, is_identity, is_parabolic);
    let kind = kind_of(q, is_identity, is_parabolic);

    let on_circle = |z: Cx| (z.norm() - 1.0).abs() <= 1e-10;
    let is_disk_automorphism = [cx(1.0, 0.0), cx(0.0, 1.0), cx(-1.0, 0.0)]
        .iter()
        .all(|&p| f.apply(p).map(on_circle).unwrap_or(false));

    let (center, radius) = image_circle(&f);
    let f0_inside = f.apply(cx(0.0, 0.0)).map(|w| w.norm() <= 1.0 + 1e-12);
    let is_disk_self_map = is_disk_automorphism
        || (radius.is_finite()
            && center.norm() + radius <= 1.0 + 1e-12
            && f0_inside.unwrap_or(false));
    let sup_norm_one =
        is_disk_automorphism || (is_disk_self_map && (center.norm() + radius - 1.0).abs() <= 1e-10);

    MapClassification {
        fixed_points,
        kind,
        is_disk_automorphism,
        is_disk_self_map,
        sup_norm_one,
    }
}

fn fixed_points_of(f: &Mobius, is_identity: bool, is_parabolic: bool) -> Vec<SpherePoint> {
    // Roots of c z^2 + (d - a) z - b = 0, projectively in c.
    if is_identity {
        return vec![];
    }
    let scale = f.coeffs().iter().map(|c| c.norm()).fold(0.0_f64, f64::max);
    let tol = 1e-13 * scale;
    if f.c.norm() < tol {
        // Affine: infinity is always fixed.
        let lin = f.d - f.a;
        if is_parabolic || lin.norm() < tol {
            // Pure translation.
            return vec![SpherePoint::Infinity];
        }
        return vec![SpherePoint::Finite(f.b / lin), SpherePoint::Infinity];
    }
    let half_tr = (f.a - f.d) / (2.0 * f.c);
    if is_parabolic {
        return vec![SpherePoint::Finite(half_tr)];
    }
    let disc = (f.a - f.d) * (f.a - f.d) + 4.0 * f.b * f.c;
    let sq = disc.sqrt() / (2.0 * f.c);
    vec![
        SpherePoint::Finite(half_tr + sq),
        SpherePoint::Finite(half_tr - sq),
    ]
}

fn kind_of(q: Cx, is_identity: bool, is_parabolic: bool) -> MapKind {
    if is_identity {
        return MapKind::Identity;
    }
    if is_parabolic {
        return MapKind::Parabolic;
    }
    let tol = 1e-9;
    if q.im.abs() < tol {
        if q.re >= 0.0 && q.re < 4.0 {
            return MapKind::Elliptic;
        }
        if q.re > 4.0 {
            return MapKind::Hyperbolic;
        }
    }
    MapKind::Loxodromic
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rho11() -> Mobius {
        // (z + 1)/(3 - z)
        Mobius::new(cx(1.0, 0.0), cx(1.0, 0.0), cx(-1.0, 0.0), cx(3.0, 0.0)).unwrap()
    }

    fn phi_running() -> Mobius {
        // -(7z + 3)/(2z + 8)
        Mobius::new(cx(-7.0, 0.0), cx(-3.0, 0.0), cx(2.0, 0.0), cx(8.0, 0.0)).unwrap()
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let m = Mobius::new(cx(2.0, 1.0), cx(-0.5, 0.25), cx(0.1, -3.0), cx(1.0, 1.0)).unwrap();
        let once = m.canonicalized();
        let twice = once.canonicalized();
        assert_eq!(once.coeffs(), twice.coeffs());
    }

    #[test]
    fn compose_semigroup_example() {
        // rho_{1,1} o rho_{1,1} = rho_{1,2} = 1/(2 - z)
        let r2 = compose(&rho11(), &rho11()).unwrap();
        let expect = parabolic(cx(1.0, 0.0), cx(2.0, 0.0), false).unwrap();
        assert!(projective_eq(&r2, &expect, TOL_EQ));
        // against direct rational arithmetic: 1/(2 - z)
        let direct = Mobius::new(cx(0.0, 0.0), cx(1.0, 0.0), cx(-1.0, 0.0), cx(2.0, 0.0)).unwrap();
        assert!(projective_eq(&r2, &direct, TOL_EQ));
    }

    #[test]
    fn compose_identity_is_neutral() {
        let f = phi_running();
        let g = compose(&f, &Mobius::identity()).unwrap();
        assert!(projective_eq(&f, &g, TOL_EQ));
    }

    #[test]
    fn compose_phi_sigma_is_parabolic() {
        let phi = phi_running();
        let sigma = krein_adjoint(&phi);
        let fs = compose(&phi, &sigma).unwrap();
        // (4z - 1)/(z + 6) = rho_{-1, 2/5}
        let expect = Mobius::new(cx(4.0, 0.0), cx(-1.0, 0.0), cx(1.0, 0.0), cx(6.0, 0.0)).unwrap();
        assert!(projective_eq(&fs, &expect, TOL_EQ));
        let rho = parabolic(cx(-1.0, 0.0), cx(0.4, 0.0), false).unwrap();
        assert!(projective_eq(&fs, &rho, 1e-10));
    }

    #[test]
    fn iterate_examples() {
        let r3 = iterate(&rho11(), 3).unwrap();
        let expect = Mobius::new(cx(-1.0, 0.0), cx(3.0, 0.0), cx(-3.0, 0.0), cx(5.0, 0.0)).unwrap();
        assert!(projective_eq(&r3, &expect, TOL_EQ));
        assert!(projective_eq(
            &iterate(&phi_running(), 0).unwrap(),
            &Mobius::identity(),
            TOL_EQ
        ));
        let r2 = parabolic(cx(1.0, 0.0), cx(2.0, 0.0), false).unwrap();
        let rm2 = iterate(&r2, -1).unwrap();
        let expect = parabolic(cx(1.0, 0.0), cx(-2.0, 0.0), true).unwrap();
        assert!(projective_eq(&rm2, &expect, TOL_EQ));
    }

    #[test]
    fn jet_examples() {
        let j = jet(&rho11(), cx(1.0, 0.0), 2).unwrap();
        assert!((j[0] - cx(1.0, 0.0)).norm() < TOL_EQ);
        assert!((j[1] - cx(1.0, 0.0)).norm() < TOL_EQ);
        assert!((j[2] - cx(1.0, 0.0)).norm() < TOL_EQ);

        let j = jet(&Mobius::identity(), cx(0.3, 0.2), 2).unwrap();
        assert!((j[0] - cx(0.3, 0.2)).norm() < TOL_EQ);
        assert!((j[1] - cx(1.0, 0.0)).norm() < TOL_EQ);
        assert!(j[2].norm() < TOL_EQ);

        let j = jet(&phi_running(), cx(1.0, 0.0), 1).unwrap();
        assert!((j[0] - cx(-1.0, 0.0)).norm() < TOL_EQ);
        assert!((j[1] - cx(-0.5, 0.0)).norm() < TOL_EQ);
    }

    #[test]
    fn jet_at_pole_errors() {
        let f = Mobius::new(cx(1.0, 0.0), cx(0.0, 0.0), cx(1.0, 0.0), cx(-2.0, 0.0)).unwrap();
        assert!(matches!(
            jet(&f, cx(2.0, 0.0), 1),
            Err(Error::EvaluationAtPole)
        ));
    }

    #[test]
    fn classify_examples() {
        let c = classify(&rho11());
        assert_eq!(c.kind, MapKind::Parabolic);
        assert_eq!(c.fixed_points.len(), 1);
        let fp = c.fixed_points[0].finite().unwrap();
        assert!((fp - cx(1.0, 0.0)).norm() < 1e-9);
        assert!(c.is_disk_self_map && c.sup_norm_one && !c.is_disk_automorphism);

        let c = classify(&Mobius::identity());
        assert_eq!(c.kind, MapKind::Identity);
        assert!(c.is_disk_automorphism);

        let c = classify(&phi_running());
        assert!(!c.is_disk_automorphism && c.is_disk_self_map && c.sup_norm_one);

        let half = Mobius::scaling(cx(0.5, 0.0)).unwrap();
        let c = classify(&half);
        assert!(c.is_disk_self_map && !c.sup_norm_one);
    }

    #[test]
    fn krein_adjoint_examples() {
        let sigma = krein_adjoint(&phi_running());
        let expect = Mobius::new(cx(-7.0, 0.0), cx(-2.0, 0.0), cx(3.0, 0.0), cx(8.0, 0.0)).unwrap();
        assert!(projective_eq(&sigma, &expect, TOL_EQ));
        assert!(projective_eq(&krein_adjoint(&rho11()), &rho11(), TOL_EQ));
        assert!(projective_eq(
            &krein_adjoint(&Mobius::identity()),
            &Mobius::identity(),
            TOL_EQ
        ));
        // involution
        assert!(projective_eq(
            &krein_adjoint(&krein_adjoint(&phi_running())),
            &phi_running(),
            TOL_EQ
        ));
    }

    #[test]
    fn parabolic_examples() {
        let p = parabolic(cx(1.0, 0.0), cx(1.0, 0.0), false).unwrap();
        assert!(projective_eq(&p, &rho11(), TOL_EQ));
        let p = parabolic(cx(1.0, 0.0), cx(0.0, 0.0), false).unwrap();
        assert!(projective_eq(&p, &Mobius::identity(), TOL_EQ));
        assert!(matches!(
            parabolic(cx(1.0, 0.0), cx(-0.5, 0.0), false),
            Err(Error::NotSelfMap)
        ));
        assert!(parabolic(cx(1.0, 0.0), cx(-0.5, 0.0), true).is_ok());
    }

    #[test]
    fn translation_number_examples() {
        let (g, a) = translation_number(&rho11()).unwrap();
        assert!((g - cx(1.0, 0.0)).norm() < 1e-9);
        assert!((a - cx(1.0, 0.0)).norm() < TOL_EQ);

        assert!(matches!(
            translation_number(&Mobius::identity()),
            Err(Error::NotParabolic)
        ));

        let f = Mobius::new(cx(4.0, 0.0), cx(-1.0, 0.0), cx(1.0, 0.0), cx(6.0, 0.0)).unwrap();
        let (g, a) = translation_number(&f).unwrap();
        assert!((g - cx(-1.0, 0.0)).norm() < 1e-9);
        assert!((a - cx(0.4, 0.0)).norm() < TOL_EQ);
        // round trip
        let back = parabolic(g, a, false).unwrap();
        assert!(projective_eq(&back, &f, TOL_EQ));
    }

    #[test]
    fn halfplane_conjugation_examples() {
        let (_, j) = conjugate_to_halfplane(&rho11(), cx(1.0, 0.0), cx(1.0, 0.0)).unwrap();
        assert!(j[0].norm() < 1e-12);
        assert!((j[1] - cx(1.0, 0.0)).norm() < 1e-12);
        assert!((j[2] - cx(0.0, 2.0)).norm() < 1e-12);

        let (_, j) =
            conjugate_to_halfplane(&Mobius::identity(), cx(1.0, 0.0), cx(1.0, 0.0)).unwrap();
        assert!(j[0].norm() < 1e-12 && (j[1] - cx(1.0, 0.0)).norm() < 1e-12 && j[2].norm() < 1e-12);

        let (_, j) = conjugate_to_halfplane(&phi_running(), cx(1.0, 0.0), cx(-1.0, 0.0)).unwrap();
        assert!((j[1] - cx(0.5, 0.0)).norm() < 1e-12);
        assert!(j[2].im > 0.0);

        assert!(matches!(
            conjugate_to_halfplane(&phi_running(), cx(1.0, 0.0), cx(1.0, 0.0)),
            Err(Error::BoundaryValueMismatch)
        ));
    }

    #[test]
    fn image_circle_and_curvature_examples() {
        let (center, radius) = image_circle(&phi_running());
        assert!((center - cx(-1.0 / 6.0, 0.0)).norm() < 1e-12);
        assert!((radius - 5.0 / 6.0).abs() < 1e-12);

        let k = curvature_at(&phi_running(), cx(1.0, 0.0)).unwrap();
        assert!((k - 1.2).abs() < 1e-12);

        // curvature of rho_{1,a} at 1 is 1 + a for a > 0
        for a in [0.3, 1.0, 2.5] {
            let p = parabolic(cx(1.0, 0.0), cx(a, 0.0), false).unwrap();
            let k = curvature_at(&p, cx(1.0, 0.0)).unwrap();
            assert!((k - (1.0 + a)).abs() < 1e-11);
        }

        // automorphism: curvature 1 at any boundary point
        let rot = Mobius::scaling(cx(0.0, 1.0)).unwrap();
        let k = curvature_at(&rot, cx(0.6, 0.8)).unwrap();
        assert!((k - 1.0).abs() < 1e-12);
    }

    #[test]
    fn projective_eq_examples() {
        let f = phi_running();
        let g = Mobius {
            a: f.a * cx(5.0, 0.0),
            b: f.b * cx(5.0, 0.0),
            c: f.c * cx(5.0, 0.0),
            d: f.d * cx(5.0, 0.0),
        };
        assert!(projective_eq(&f, &g, TOL_EQ));
        let p1 = parabolic(cx(1.0, 0.0), cx(1.0, 0.0), false).unwrap();
        let p2 = parabolic(cx(1.0, 0.0), cx(1.0001, 0.0), false).unwrap();
        assert!(!projective_eq(&p1, &p2, 1e-9));
    }

    #[test]
    fn semigroup_and_krein_properties_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let g = cx(th.cos(), th.sin());
            let a = cx(rng.gen_range(0.0..2.0), rng.gen_range(-1.0..1.0));
            let b = cx(rng.gen_range(0.0..2.0), rng.gen_range(-1.0..1.0));
            let pa = parabolic(g, a, false).unwrap();
            let pb = parabolic(g, b, false).unwrap();
            let lhs = compose(&pa, &pb).unwrap();
            let rhs = parabolic(g, a + b, false).unwrap();
            assert!(projective_eq(&lhs, &rhs, TOL_EQ));
            // Krein adjoint of rho_a is rho_{conj(a)}
            assert!(projective_eq(
                &krein_adjoint(&pa),
                &parabolic(g, a.conj(), false).unwrap(),
                TOL_EQ
            ));
            // translation_number round trip
            if a.norm() > 1e-6 {
                let (gg, aa) = translation_number(&pa).unwrap();
                assert!((gg - g).norm() < 1e-9);
                assert!((aa - a).norm() < TOL_EQ * 10.0);
            }
        }
    }

    #[test]
    fn krein_adjoint_of_automorphism_is_inverse() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            // random disk automorphism e^{it}(z - p)/(1 - conj(p) z)
            let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let e = cx(t.cos(), t.sin());
            let p = cx(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6));
            let auto = Mobius::new(e, -e * p, -p.conj(), cx(1.0, 0.0)).unwrap();
            assert!(classify(&auto).is_disk_automorphism);
            assert!(projective_eq(&krein_adjoint(&auto), &auto.inverse(), 1e-11));
        }
    }
}
