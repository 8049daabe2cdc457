//! Angular-derivative sets, boundary data vectors, order of contact, and
//! jet-to-map reconstruction.

use crate::moebius::{classify, jet, Mobius};
use crate::{Cx, Error, Result};
use serde::{Deserialize, Serialize};

/// Boundary point together with the jet of a map there:
/// `(psi(alpha), psi'(alpha), ..., psi^(k)(alpha))`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DataVector {
    #[serde(with = "crate::jsonio::cx")]
    pub alpha: Cx,
    #[serde(with = "crate::jsonio::cxvec")]
    pub values: Vec<Cx>,
}

impl DataVector {
    /// Jet order `k` (values holds `k + 1` entries).
    pub fn order(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn value(&self) -> Cx {
        self.values[0]
    }

    pub fn derivative(&self) -> Cx {
        self.values[1]
    }

    /// First-order data vectors equal within `tol`, componentwise.
    pub fn first_order_matches(&self, other: &DataVector, tol: f64) -> bool {
        (self.alpha - other.alpha).norm() <= tol
            && (self.values[0] - other.values[0]).norm() <= tol
            && (self.values[1] - other.values[1]).norm() <= tol
    }
}

/// The finite angular-derivative picture of a self-map: one entry per point
/// of `F(psi)`, or the whole circle for automorphisms.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundaryProfile {
    pub entries: Vec<DataVector>,
    pub contact_orders: Vec<u32>,
    pub whole_circle: bool,
}

impl BoundaryProfile {
    pub fn empty() -> Self {
        BoundaryProfile {
            entries: vec![],
            contact_orders: vec![],
            whole_circle: false,
        }
    }
}

/// Squared boundary modulus `|f(e^{i theta})|^2` and its first two
/// theta-derivatives.
fn boundary_mod2(f: &Mobius, theta: f64) -> Result<(f64, f64, f64)> {
    let z = Cx::new(theta.cos(), theta.sin());
    let j = jet(f, z, 2)?;
    let (v, d1, d2) = (j[0], j[1], j[2]);
    let g = v.norm_sqr();
    let zd1 = Cx::new(0.0, 1.0) * z * d1;
    let gp = 2.0 * (v.conj() * zd1).re;
    let gpp = 2.0 * (zd1.norm_sqr() - (v.conj() * z * (d1 + z * d2)).re);
    Ok((g, gp, gpp))
}

/// Locates the boundary point maximizing `|f(e^{i theta})|` by Newton
/// refinement from 16 coarse seeds.
pub fn tangency_point(f: &Mobius) -> Result<(Cx, f64)> {
    let mut best = (0.0_f64, f64::NEG_INFINITY);
    for k in 0..16 {
        let mut th = std::f64::consts::TAU * (k as f64) / 16.0;
        for _ in 0..60 {
            let (_, gp, gpp) = boundary_mod2(f, th)?;
            if gpp.abs() < 1e-300 {
                break;
            }
            let step = gp / gpp;
            th -= step;
            if step.abs() < 1e-13 {
                break;
            }
        }
        let (g, _, gpp) = boundary_mod2(f, th)?;
        if gpp <= 0.0 && g > best.1 {
            best = (th, g);
        }
    }
    if best.1 == f64::NEG_INFINITY {
        return Err(Error::InternalConsistency("tangency search failed".into()));
    }
    let alpha = Cx::new(best.0.cos(), best.0.sin());
    Ok((alpha, best.1.sqrt()))
}

/// The angular-derivative profile `F(f)` of a linear-fractional self-map.
///
/// Strict contractions give an empty profile, automorphisms the whole
/// circle, and tangent non-automorphisms a single contact-order-2 point.
pub fn tangency_set(f: &Mobius) -> Result<BoundaryProfile> {
    let class = classify(f);
    if !class.is_disk_self_map {
        return Err(Error::NotSelfMap);
    }
    if class.is_disk_automorphism {
        return Ok(BoundaryProfile {
            entries: vec![],
            contact_orders: vec![],
            whole_circle: true,
        });
    }
    if !class.sup_norm_one {
        return Ok(BoundaryProfile::empty());
    }
    let (alpha, maxmod) = tangency_point(f)?;
    if maxmod < 1.0 - 1e-10 {
        return Ok(BoundaryProfile::empty());
    }
    let dv = data_vector(f, alpha, 1)?;
    Ok(BoundaryProfile {
        entries: vec![dv],
        contact_orders: vec![2],
        whole_circle: false,
    })
}

/// Wraps `jet(f, alpha, k)` as a boundary data vector; requires
/// `|f(alpha)| = 1`.
pub fn data_vector(f: &Mobius, alpha: Cx, k: usize) -> Result<DataVector> {
    let v = f.apply(alpha)?;
    if (v.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::AlphaNotInF);
    }
    Ok(DataVector {
        alpha,
        values: jet(f, alpha, k)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContactOrder {
    Two,
    Higher,
}

/// Decides order of contact from a second-order boundary jet via the image
/// curvature: `2` when the curvature exceeds 1, `higher` at curvature 1.
pub fn contact_order_from_jet(j: &DataVector) -> Result<ContactOrder> {
    if j.order() < 2 {
        return Err(Error::Precondition("second-order jet required".into()));
    }
    let d1 = j.values[1];
    if d1.norm() < 1e-300 {
        return Err(Error::DegenerateJet);
    }
    let kappa = (Cx::new(1.0, 0.0) + j.alpha * j.values[2] / d1).re / d1.norm();
    let tol = 1e-9;
    if kappa > 1.0 + tol {
        Ok(ContactOrder::Two)
    } else if kappa >= 1.0 - tol {
        Ok(ContactOrder::Higher)
    } else {
        Err(Error::NotSelfMapJet)
    }
}

/// The unique Möbius map with prescribed 2-jet `(v0, v1, v2)` at `alpha`.
///
/// Built from `f(z) = v0 + v1 w / (1 - q w)` with `w = z - alpha`,
/// `q = v2 / (2 v1)`.
pub fn lft_from_jet2(alpha: Cx, v: (Cx, Cx, Cx)) -> Result<Mobius> {
    let (v0, v1, v2) = v;
    if v1.norm() < 1e-300 {
        return Err(Error::DegenerateJet);
    }
    let q = v2 / (2.0 * v1);
    let one = Cx::new(1.0, 0.0);
    Mobius::new(
        v1 - v0 * q,
        v0 * (one + q * alpha) - v1 * alpha,
        -q,
        one + q * alpha,
    )
}

/// The family of non-affine linear-fractional self-maps with `zeta = 1`,
/// `phi(1) = eta` and `|phi'(1)| = s_prime`:
/// `phi(z) = eta ((1 + s + s d) z + (d - s - s d)) / (z + d)`, admissible
/// when `Re((d - 1)/(d + 1)) >= s_prime`.
pub fn phi_family(eta: Cx, s_prime: f64, d: Cx) -> Result<Mobius> {
    if !(0.0..1.0).contains(&s_prime) || s_prime <= 0.0 {
        return Err(Error::Precondition("s_prime must lie in (0, 1)".into()));
    }
    if (eta.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::Precondition("eta must be unimodular".into()));
    }
    let one = Cx::new(1.0, 0.0);
    let cond = ((d - one) / (d + one)).re;
    if cond < s_prime - 1e-12 {
        return Err(Error::NotSelfMapOfDisk);
    }
    let s = Cx::new(s_prime, 0.0);
    Mobius::new(eta * (one + s + s * d), eta * (d - s - s * d), one, d)
}

/// `phi_family` rotated so the tangency point is a general `zeta` instead
/// of 1.
pub fn phi_family_at(zeta: Cx, eta: Cx, s_prime: f64, d: Cx) -> Result<Mobius> {
    let base = phi_family(eta, s_prime, d)?;
    let rot = Mobius::scaling(zeta.conj())?;
    crate::moebius::compose(&base, &rot)
}
