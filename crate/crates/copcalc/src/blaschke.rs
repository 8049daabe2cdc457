//! Finite Blaschke products with two prescribed boundary values and
//! derivative moduli, built constructively from a conjugate pair of zeros on
//! a circle intersection, plus evaluation and the boundary derivative sums.

use crate::moebius::{jet, parabolic, Mobius};
use crate::{Cx, Error, Result};
use serde::{Deserialize, Serialize};

fn cx(re: f64, im: f64) -> Cx {
    Cx::new(re, im)
}

/// A finite Blaschke product `front * prod b_{a_n}(z)^{m_n}` with the factor
/// convention `b_a(z) = (|a|/a)(a - z)/(1 - conj(a) z)` for `a != 0` and
/// `b_0(z) = z`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlaschkeProduct {
    pub zeros: Vec<Zero>,
    #[serde(with = "crate::jsonio::cx")]
    pub front: Cx,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Zero {
    #[serde(with = "crate::jsonio::cx")]
    pub a: Cx,
    pub multiplicity: u32,
}

/// Result of the two-point construction: the product together with the
/// doubling level `m` and the conjugating parabolic automorphism used for a
/// general second point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwoPointBlaschke {
    pub product: BlaschkeProduct,
    pub m: u32,
    pub tau: Mobius,
}

impl BlaschkeProduct {
    pub fn degree(&self) -> u32 {
        self.zeros.iter().map(|z| z.multiplicity).sum()
    }

    pub fn validate(&self) -> Result<()> {
        for z in &self.zeros {
            if z.a.norm() >= 1.0 {
                return Err(Error::Precondition("zero outside the open disk".into()));
            }
        }
        if (self.front.norm() - 1.0).abs() > 1e-10 {
            return Err(Error::Precondition("front factor not unimodular".into()));
        }
        Ok(())
    }

    /// Value and derivative at `z` (|z| <= 1), by multiplicative jet
    /// accumulation over the factors, so zeros of individual factors are
    /// handled exactly.
    pub fn evaluate(&self, z: Cx) -> Result<(Cx, Cx)> {
        if z.norm() > 1.0 + 1e-12 {
            return Err(Error::Precondition("point outside the closed disk".into()));
        }
        let mut v = self.front;
        let mut d = cx(0.0, 0.0);
        for zero in &self.zeros {
            let (fv, fd) = if zero.a.norm() < 1e-15 {
                (z, cx(1.0, 0.0))
            } else {
                let den = cx(1.0, 0.0) - zero.a.conj() * z;
                if den.norm() < 1e-12 {
                    return Err(Error::EvaluationAtPole);
                }
                let phase = cx(zero.a.norm(), 0.0) / zero.a;
                (
                    phase * (zero.a - z) / den,
                    phase * (zero.a.norm_sqr() - 1.0) / (den * den),
                )
            };
            for _ in 0..zero.multiplicity {
                d = d * fv + v * fd;
                v *= fv;
            }
        }
        Ok((v, d))
    }
}

fn circle(tau: f64) -> (f64, f64) {
    (tau / (tau + 1.0), 1.0 / (tau + 1.0))
}

/// Builds a finite Blaschke product with `B(eta) = eta`, `B(zeta) = eta`,
/// `B'(eta) = t1` and `|B'(zeta)| = t2` (with `B'(zeta) = eta conj(zeta) t2`).
///
/// After rotating the problem to `eta = 1` and moving the second point to
/// `-1` with a parabolic automorphism `tau` fixing 1, the zeros are the
/// conjugate pair where the two horocycle-sum level circles
/// `1 - |z|^2 = (t_i / 2^m) |1 -+ z|^2` meet, each with multiplicity
/// `2^{m-1}` for the smallest `m >= 1` making them intersect.
pub fn construct_two_point(zeta: Cx, eta: Cx, t1: f64, t2: f64) -> Result<TwoPointBlaschke> {
    if (zeta.norm() - 1.0).abs() > 1e-10 || (eta.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::Precondition("endpoints must be unimodular".into()));
    }
    if (zeta - eta).norm() < 1e-10 {
        return Err(Error::Precondition("endpoints must be distinct".into()));
    }
    if t1 <= 0.0 || t2 <= 0.0 {
        return Err(Error::Precondition(
            "derivative targets must be positive".into(),
        ));
    }

    // Rotate the range and domain so the fixed boundary point is 1.
    let zeta_r = eta.conj() * zeta;

    // Parabolic automorphism fixing 1 that sends zeta_r to -1; its boundary
    // derivative rescales the second target.
    let (tau_map, dtau) = if (zeta_r + cx(1.0, 0.0)).norm() < 1e-12 {
        (Mobius::identity(), cx(1.0, 0.0))
    } else {
        let a = -(cx(1.0, 0.0) + zeta_r) / (cx(1.0, 0.0) - zeta_r);
        let t = parabolic(cx(1.0, 0.0), a, true)?;
        let d = jet(&t, zeta_r, 1)?[1];
        (t, d)
    };
    let t2_eff = t2 / dtau.norm();

    // Smallest doubling level at which the two level circles intersect.
    let mut found = None;
    for m in 1..=64u32 {
        let pow = (2.0_f64).powi(m as i32);
        let (u1, r1) = circle(t1 / pow);
        let (u2, r2) = circle(t2_eff / pow);
        let x = (u1 * u1 - u2 * u2 - r1 * r1 + r2 * r2) / (2.0 * (u1 + u2));
        let y2 = r1 * r1 - (x - u1) * (x - u1);
        if y2 >= -1e-13 {
            found = Some((m, x, y2.max(0.0).sqrt()));
            break;
        }
    }
    let (m, x, y) = found.ok_or(Error::ConstructionOverflow)?;
    // circle 2 is centered at (-u2, 0)
    let mult = 1u32 << (m - 1);
    let normalized = [cx(x, y), cx(x, -y)];

    // Pull the zeros back through tau and the rotation; recover the front
    // factor from the prescribed value at eta.
    let tau_inv = tau_map.inverse();
    let mut zeros = Vec::new();
    for a in normalized {
        let pre = eta * tau_inv.apply(a)?;
        zeros.push(Zero {
            a: pre,
            multiplicity: mult,
        });
    }
    let mut b = BlaschkeProduct {
        zeros,
        front: cx(1.0, 0.0),
    };
    let (v, _) = b.evaluate(eta)?;
    if v.norm() < 1e-14 {
        return Err(Error::InternalConsistency(
            "zero at prescribed endpoint".into(),
        ));
    }
    b.front = eta / v;
    b.validate()?;
    Ok(TwoPointBlaschke {
        product: b,
        m,
        tau: tau_map,
    })
}

/// The boundary angular-derivative sum `sum m_n (1 - |a_n|^2)/|p - a_n|^2`
/// at `p = 1` or `p = -1`, which equals `|B'(p)|` for products built in
/// normalized coordinates.
pub fn boundary_derivative_sum(b: &BlaschkeProduct, point: f64) -> Result<f64> {
    if point != 1.0 && point != -1.0 {
        return Err(Error::Precondition("point must be 1 or -1".into()));
    }
    let p = cx(point, 0.0);
    let mut total = 0.0;
    for z in &b.zeros {
        total += z.multiplicity as f64 * (1.0 - z.a.norm_sqr()) / (p - z.a).norm_sqr();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn build(zeta: Cx, eta: Cx, t1: f64, t2: f64) -> TwoPointBlaschke {
        construct_two_point(zeta, eta, t1, t2).unwrap()
    }

    #[test]
    fn tangent_case_gives_monomials() {
        // t1 = t2 = 2: circles centered +-1/2 radius 1/2 are tangent at 0
        let b = build(cx(-1.0, 0.0), cx(1.0, 0.0), 2.0, 2.0);
        assert_eq!(b.m, 1);
        assert_eq!(b.product.degree(), 2);
        for z in &b.product.zeros {
            assert!(z.a.norm() < 1e-12);
        }
        let (v, d) = b.product.evaluate(cx(0.0, 1.0)).unwrap();
        assert!((v - cx(-1.0, 0.0)).norm() < 1e-12);
        assert!((d - cx(0.0, 2.0)).norm() < 1e-12);

        // t1 = t2 = 4 needs one more doubling: z^4
        let b = build(cx(-1.0, 0.0), cx(1.0, 0.0), 4.0, 4.0);
        assert_eq!(b.m, 2);
        assert_eq!(b.product.degree(), 4);
        for z in &b.product.zeros {
            assert!(z.a.norm() < 1e-12);
        }
    }

    #[test]
    fn unit_derivative_case() {
        // t1 = t2 = 1: zeros at +-i/sqrt(3), B = (3z^2 + 1)/(z^2 + 3)
        let b = build(cx(-1.0, 0.0), cx(1.0, 0.0), 1.0, 1.0);
        assert_eq!(b.m, 1);
        let root = 1.0 / 3.0_f64.sqrt();
        let mut ims: Vec<f64> = b.product.zeros.iter().map(|z| z.a.im).collect();
        ims.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ims[0] + root).abs() < 1e-12 && (ims[1] - root).abs() < 1e-12);
        assert!(b.product.zeros.iter().all(|z| z.a.re.abs() < 1e-12));

        // pointwise agreement with (3z^2 + 1)/(z^2 + 3)
        for k in 0..8 {
            let th = 0.7 * k as f64;
            let z = cx(0.8 * th.cos(), 0.8 * th.sin());
            let (v, _) = b.product.evaluate(z).unwrap();
            let expect = (3.0 * z * z + 1.0) / (z * z + 3.0);
            assert!((v - expect).norm() < 1e-12);
        }
        let (_, d1) = b.product.evaluate(cx(1.0, 0.0)).unwrap();
        assert!((d1 - cx(1.0, 0.0)).norm() < 1e-12);
        let (_, dm1) = b.product.evaluate(cx(-1.0, 0.0)).unwrap();
        assert!((dm1 - cx(-1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn derivative_sums_match_evaluation() {
        for (t1, t2) in [(2.0, 2.0), (4.0, 4.0), (1.0, 1.0), (0.3, 5.0), (7.5, 0.2)] {
            let b = build(cx(-1.0, 0.0), cx(1.0, 0.0), t1, t2);
            let s1 = boundary_derivative_sum(&b.product, 1.0).unwrap();
            let s2 = boundary_derivative_sum(&b.product, -1.0).unwrap();
            assert!((s1 - t1).abs() < 1e-9, "t1 sum: {s1} vs {t1}");
            assert!((s2 - t2).abs() < 1e-9, "t2 sum: {s2} vs {t2}");
            let (_, d1) = b.product.evaluate(cx(1.0, 0.0)).unwrap();
            let (_, d2) = b.product.evaluate(cx(-1.0, 0.0)).unwrap();
            assert!((d1.norm() - s1).abs() < 1e-9);
            assert!((d2.norm() - s2).abs() < 1e-9);
        }
    }

    #[test]
    fn unimodular_on_boundary() {
        let b = build(cx(0.0, 1.0), cx(1.0, 0.0), 3.0, 0.7);
        for k in 0..64 {
            let th = 2.0 * std::f64::consts::PI * k as f64 / 64.0;
            let z = cx(th.cos(), th.sin());
            let (v, _) = b.product.evaluate(z).unwrap();
            assert!((v.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn random_endpoint_conditions() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let th1: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let mut th2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            while ((th1 - th2).cos() - 1.0).abs() < 1e-4 {
                th2 = rng.gen_range(0.0..std::f64::consts::TAU);
            }
            let eta = cx(th1.cos(), th1.sin());
            let zeta = cx(th2.cos(), th2.sin());
            let t1 = rng.gen_range(0.1..10.0);
            let t2 = rng.gen_range(0.1..10.0);
            let b = build(zeta, eta, t1, t2);
            let (ve, de) = b.product.evaluate(eta).unwrap();
            let (vz, dz) = b.product.evaluate(zeta).unwrap();
            assert!((ve - eta).norm() < 1e-10, "value at eta");
            assert!((vz - eta).norm() < 1e-10, "value at zeta");
            assert!((de - cx(t1, 0.0)).norm() < 1e-9, "derivative at eta");
            assert!((dz.norm() - t2).abs() < 1e-9, "derivative modulus at zeta");
            // phase law at the second point
            assert!((dz - eta * zeta.conj() * t2).norm() < 1e-9, "phase law");
        }
    }

    #[test]
    fn evaluation_guards() {
        let b = BlaschkeProduct {
            zeros: vec![Zero {
                a: cx(0.5, 0.0),
                multiplicity: 1,
            }],
            front: cx(1.0, 0.0),
        };
        assert!(matches!(
            b.evaluate(cx(2.0, 0.0)),
            Err(Error::Precondition(_))
        ));
        assert!(b.evaluate(cx(2.0, 0.0).inv() * 4.0).is_err());
        // value at the zero itself is 0 with nonzero derivative
        let (v, d) = b.evaluate(cx(0.5, 0.0)).unwrap();
        assert!(v.norm() < 1e-15 && d.norm() > 0.5);
    }

    #[test]
    fn construction_rejects_bad_inputs() {
        assert!(construct_two_point(cx(1.0, 0.0), cx(1.0, 0.0), 1.0, 1.0).is_err());
        assert!(construct_two_point(cx(0.5, 0.0), cx(1.0, 0.0), 1.0, 1.0).is_err());
        assert!(construct_two_point(cx(-1.0, 0.0), cx(1.0, 0.0), -1.0, 1.0).is_err());
    }
}
