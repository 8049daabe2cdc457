//! Decision procedures: admissibility of the generating map, the six
//! necessity cases for boundary profiles, linear-fractional membership with
//! parameter recovery, general jet-profile verdicts with mod-compact
//! decompositions, and coset rewriting of functional-calculus elements.

use crate::boundary::{lft_from_jet2, tangency_set, BoundaryProfile};
use crate::moebius::{
    classify, compose, curvature_at, iterate, jet, krein_adjoint, parabolic, projective_eq,
    translation_number, MapKind, Mobius,
};
use crate::symbols::{table2_symbol, AlgebraElement, SymbolMatrix, TableRow};
use crate::{Cx, Error, Result};
use serde::{Deserialize, Serialize};

const JET_TOL: f64 = 1e-10;

fn cx(re: f64, im: f64) -> Cx {
    Cx::new(re, im)
}

/// The derived data of an admissible generating map: the boundary tangency
/// `zeta -> eta`, the derivative scale `s = 1/|phi'(zeta)|`, the Krein
/// adjoint `sigma`, and the translation scales `b` (at `eta`) and `c = b/s`
/// (at `zeta`) of the parabolic products `phi o sigma` and `sigma o phi`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhiContext {
    pub phi: Mobius,
    pub sigma: Mobius,
    #[serde(with = "crate::jsonio::cx")]
    pub zeta: Cx,
    #[serde(with = "crate::jsonio::cx")]
    pub eta: Cx,
    pub s: f64,
    pub b: f64,
    pub c: f64,
}

/// Which of the membership conditions a candidate satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    A,
    B,
    C,
    D,
    E,
    F,
    Identity,
    None,
    Compact,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MembershipVerdict {
    pub member: bool,
    pub condition: Condition,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family_parameter: Option<crate::jsonio::CxField>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table2_row: Option<TableRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symbol: Option<SymbolMatrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representative: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Vec<WeightedMap>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeightedMap {
    #[serde(with = "crate::jsonio::cx")]
    pub coeff: Cx,
    pub map: Mobius,
}

impl MembershipVerdict {
    fn non_member(reason: &str) -> Self {
        MembershipVerdict {
            member: false,
            condition: Condition::None,
            family_parameter: None,
            table2_row: None,
            symbol: None,
            representative: None,
            decomposition: None,
            reason: Some(reason.into()),
        }
    }
}

/// Builds the context of an admissible generating map: a non-automorphism
/// self-map of the disk, tangent to the circle at a non-fixed point.
pub fn make_context(phi: &Mobius) -> Result<PhiContext> {
    let class = classify(phi);
    if !class.is_disk_self_map || class.is_disk_automorphism || !class.sup_norm_one {
        return Err(Error::PhiNotAdmissible);
    }
    let profile = tangency_set(phi)?;
    let entry = profile.entries.first().ok_or(Error::PhiNotAdmissible)?;
    let zeta = entry.alpha;
    let eta = entry.value();
    if (zeta - eta).norm() < 1e-10 {
        return Err(Error::PhiNotAdmissible);
    }
    let dphi = entry.derivative().norm();
    if dphi < 1e-300 {
        return Err(Error::DegenerateJet);
    }
    let s = 1.0 / dphi;
    let b = curvature_at(phi, zeta)? - 1.0;
    if b <= 0.0 {
        return Err(Error::PhiNotAdmissible);
    }
    let c = b / s;
    let sigma = krein_adjoint(phi);

    // Consistency of the derived translation scales with the two parabolic
    // products, before anything downstream trusts them.
    let ps = compose(phi, &sigma)?;
    let sp = compose(&sigma, phi)?;
    let tol = 1e-9;
    if !projective_eq(&ps, &parabolic(eta, cx(2.0 * b, 0.0), false)?, tol)
        || !projective_eq(&sp, &parabolic(zeta, cx(2.0 * c, 0.0), false)?, tol)
    {
        return Err(Error::InternalConsistency(
            "translation scales disagree with the parabolic products".into(),
        ));
    }
    Ok(PhiContext {
        phi: *phi,
        sigma,
        zeta,
        eta,
        s,
        b,
        c,
    })
}

fn row_condition(row: TableRow) -> Condition {
    match row {
        TableRow::A => Condition::A,
        TableRow::B => Condition::B,
        TableRow::C => Condition::C,
        TableRow::D => Condition::D,
    }
}

fn representative_descriptor(row: TableRow, a: Cx, b: f64, c: f64) -> String {
    let q = |scale: f64| a / scale;
    match row {
        TableRow::D => {
            let e = q(2.0 * b);
            format!("s^(-({e})) (C*C)^({e})")
        }
        TableRow::B => {
            let e = q(2.0 * c);
            format!("s^(-({e})) (CC*)^({e})")
        }
        TableRow::A => {
            let e = q(2.0 * b);
            format!("s^(-({e})) U (C*C)^(1/2 + {e})")
        }
        TableRow::C => {
            let e = q(2.0 * c);
            format!("s^(-({e}) - 1) U* (CC*)^(1/2 + {e})")
        }
    }
}

/// Recovers the translation number of `f`, treating the identity as
/// translation number 0 at the expected fixed point.
fn translation_at(f: &Mobius, expected_fix: Cx) -> Result<Cx> {
    if projective_eq(f, &Mobius::identity(), 1e-12) {
        return Ok(cx(0.0, 0.0));
    }
    let (gamma, a) = translation_number(f)?;
    if (gamma - expected_fix).norm() > 1e-8 {
        return Err(Error::InternalConsistency(
            "parabolic factor fixes the wrong point".into(),
        ));
    }
    Ok(a)
}

fn member_verdict(ctx: &PhiContext, row: TableRow, a: Cx) -> Result<MembershipVerdict> {
    let symbol = table2_symbol(row, a, ctx.s, ctx.b, ctx.c)?;
    Ok(MembershipVerdict {
        member: true,
        condition: row_condition(row),
        family_parameter: Some(crate::jsonio::CxField(a)),
        table2_row: Some(row),
        symbol: Some(symbol),
        representative: Some(representative_descriptor(row, a, ctx.b, ctx.c)),
        decomposition: None,
        reason: None,
    })
}

/// Decides whether the composition operator of a linear-fractional `psi`
/// lies in the algebra of the context, and classifies it when it does.
pub fn linfrac_membership(ctx: &PhiContext, psi: &Mobius) -> Result<MembershipVerdict> {
    let class = classify(psi);
    if !class.is_disk_self_map {
        return Err(Error::NotSelfMap);
    }
    if class.kind == MapKind::Identity {
        return Ok(MembershipVerdict {
            member: true,
            condition: Condition::Identity,
            family_parameter: None,
            table2_row: None,
            symbol: Some(SymbolMatrix::identity(ctx.s)),
            representative: Some("I".into()),
            decomposition: None,
            reason: None,
        });
    }
    if class.is_disk_automorphism {
        return Ok(MembershipVerdict::non_member(
            "automorphisms other than the identity are never members",
        ));
    }
    if !class.sup_norm_one {
        return Ok(MembershipVerdict {
            member: true,
            condition: Condition::Compact,
            family_parameter: None,
            table2_row: None,
            symbol: Some(SymbolMatrix::zero(ctx.s)),
            representative: Some("0".into()),
            decomposition: None,
            reason: None,
        });
    }

    let jz = jet(psi, ctx.zeta, 1)?;
    let je = jet(psi, ctx.eta, 1)?;
    let jphi = jet(&ctx.phi, ctx.zeta, 1)?;
    let phi_d = jphi[1];

    // (a): psi(zeta) = eta, psi'(zeta) = phi'(zeta)  =>  psi = rho_{eta,a} o phi
    if (jz[0] - ctx.eta).norm() < JET_TOL && (jz[1] - phi_d).norm() < JET_TOL {
        let rho = compose(psi, &ctx.phi.inverse())?;
        let a = translation_at(&rho, ctx.eta)?;
        if a.re > -ctx.b + 1e-12 {
            return member_verdict(ctx, TableRow::A, a);
        }
        return Ok(MembershipVerdict::non_member(
            "translation parameter outside the row (a) half-plane",
        ));
    }
    // (b): psi(zeta) = zeta, psi'(zeta) = 1  =>  psi = rho_{zeta,a}
    if (jz[0] - ctx.zeta).norm() < JET_TOL && (jz[1] - cx(1.0, 0.0)).norm() < JET_TOL {
        let a = translation_at(psi, ctx.zeta)?;
        if a.re > 1e-12 {
            return member_verdict(ctx, TableRow::B, a);
        }
        return Ok(MembershipVerdict::non_member(
            "translation parameter outside the row (b) half-plane",
        ));
    }
    // (c): psi(eta) = zeta, psi'(eta) = 1/phi'(zeta)  =>  psi = rho_{zeta,a} o sigma
    if (je[0] - ctx.zeta).norm() < JET_TOL && (je[1] * phi_d - cx(1.0, 0.0)).norm() < JET_TOL {
        let rho = compose(psi, &ctx.sigma.inverse())?;
        let a = translation_at(&rho, ctx.zeta)?;
        if a.re > -ctx.c + 1e-12 {
            return member_verdict(ctx, TableRow::C, a);
        }
        return Ok(MembershipVerdict::non_member(
            "translation parameter outside the row (c) half-plane",
        ));
    }
    // (d): psi(eta) = eta, psi'(eta) = 1  =>  psi = rho_{eta,a}
    if (je[0] - ctx.eta).norm() < JET_TOL && (je[1] - cx(1.0, 0.0)).norm() < JET_TOL {
        let a = translation_at(psi, ctx.eta)?;
        if a.re > 1e-12 {
            return member_verdict(ctx, TableRow::D, a);
        }
        return Ok(MembershipVerdict::non_member(
            "translation parameter outside the row (d) half-plane",
        ));
    }
    Ok(MembershipVerdict::non_member(
        "first-order boundary data matches no membership condition",
    ))
}

/// Matches a boundary profile against the six necessity cases.
///
/// An empty profile is a compact candidate; the whole circle can only belong
/// to the identity. Any entry that fits none of the cases forces `none`.
pub fn necessity_check(ctx: &PhiContext, profile: &BoundaryProfile) -> Result<Condition> {
    if profile.whole_circle {
        return Ok(if profile.entries.is_empty() {
            Condition::Identity
        } else {
            Condition::None
        });
    }
    if profile.entries.is_empty() {
        return Ok(Condition::Compact);
    }
    let phi_d = jet(&ctx.phi, ctx.zeta, 1)?[1];
    // Per-entry case tags at the two distinguished points.
    #[derive(PartialEq, Clone, Copy)]
    enum Tag {
        ZetaToEta, // cases (a)/(e): zeta -> eta with derivative phi'(zeta)
        ZetaFixed, // cases (b)/(f): zeta -> zeta with derivative 1
        EtaToZeta, // cases (c)/(f): eta -> zeta with derivative 1/phi'(zeta)
        EtaFixed,  // cases (d)/(e): eta -> eta with derivative 1
    }
    let mut tags = Vec::new();
    for e in &profile.entries {
        if e.order() < 1 {
            return Err(Error::Precondition("first-order data required".into()));
        }
        let (v, d) = (e.value(), e.derivative());
        let tag = if (e.alpha - ctx.zeta).norm() < JET_TOL {
            if (v - ctx.eta).norm() < JET_TOL && (d - phi_d).norm() < JET_TOL {
                Some(Tag::ZetaToEta)
            } else if (v - ctx.zeta).norm() < JET_TOL && (d - cx(1.0, 0.0)).norm() < JET_TOL {
                Some(Tag::ZetaFixed)
            } else {
                None
            }
        } else if (e.alpha - ctx.eta).norm() < JET_TOL {
            if (v - ctx.zeta).norm() < JET_TOL && (d * phi_d - cx(1.0, 0.0)).norm() < JET_TOL {
                Some(Tag::EtaToZeta)
            } else if (v - ctx.eta).norm() < JET_TOL && (d - cx(1.0, 0.0)).norm() < JET_TOL {
                Some(Tag::EtaFixed)
            } else {
                None
            }
        } else {
            None
        };
        match tag {
            Some(t) => tags.push(t),
            None => return Ok(Condition::None),
        }
    }
    let has = |t: Tag| tags.contains(&t);
    Ok(match tags.len() {
        1 => match tags[0] {
            Tag::ZetaToEta => Condition::A,
            Tag::ZetaFixed => Condition::B,
            Tag::EtaToZeta => Condition::C,
            Tag::EtaFixed => Condition::D,
        },
        2 if has(Tag::ZetaToEta) && has(Tag::EtaFixed) => Condition::E,
        2 if has(Tag::EtaToZeta) && has(Tag::ZetaFixed) => Condition::F,
        _ => Condition::None,
    })
}

/// Verdict for a general candidate presented as a boundary profile with
/// second-order jets: membership requires one of the necessity cases plus
/// order of contact two at every point, and the decomposition replaces the
/// candidate by the jet-matched linear-fractional maps.
pub fn general_membership(
    ctx: &PhiContext,
    profile: &BoundaryProfile,
) -> Result<MembershipVerdict> {
    let condition = necessity_check(ctx, profile)?;
    match condition {
        Condition::None => {
            return Ok(MembershipVerdict::non_member(
                "boundary data matches no membership condition",
            ))
        }
        Condition::Identity => {
            return Ok(MembershipVerdict {
                member: true,
                condition,
                family_parameter: None,
                table2_row: None,
                symbol: Some(SymbolMatrix::identity(ctx.s)),
                representative: Some("I".into()),
                decomposition: Some(vec![WeightedMap {
                    coeff: cx(1.0, 0.0),
                    map: Mobius::identity(),
                }]),
                reason: None,
            })
        }
        Condition::Compact => {
            return Ok(MembershipVerdict {
                member: true,
                condition,
                family_parameter: None,
                table2_row: None,
                symbol: Some(SymbolMatrix::zero(ctx.s)),
                representative: Some("0".into()),
                decomposition: Some(vec![]),
                reason: None,
            })
        }
        _ => {}
    }
    if profile.contact_orders.len() != profile.entries.len() {
        return Err(Error::Precondition(
            "one contact order per profile entry required".into(),
        ));
    }
    if profile.contact_orders.iter().any(|&o| o != 2) {
        let mut v = MembershipVerdict::non_member("order of contact exceeds two");
        v.condition = condition;
        return Ok(v);
    }
    let mut decomposition = Vec::new();
    let mut symbol = SymbolMatrix::zero(ctx.s);
    for e in &profile.entries {
        if e.order() < 2 {
            return Err(Error::Precondition("second-order jets required".into()));
        }
        let beta = lft_from_jet2(e.alpha, (e.values[0], e.values[1], e.values[2]))?;
        let verdict = linfrac_membership(ctx, &beta)?;
        let part = verdict
            .symbol
            .ok_or_else(|| Error::InternalConsistency("jet factor has no symbol".into()))?;
        symbol = symbol.add(&part)?;
        decomposition.push(WeightedMap {
            coeff: cx(1.0, 0.0),
            map: beta,
        });
    }
    Ok(MembershipVerdict {
        member: true,
        condition,
        family_parameter: None,
        table2_row: None,
        symbol: Some(symbol),
        representative: None,
        decomposition: Some(decomposition),
        reason: None,
    })
}

/// Rewrites `c I + f(C*C) + g(CC*) + C p(C*C) + C* q(CC*)` as an explicit
/// combination of composition operators, modulo compacts: powers of the two
/// parabolic products, optionally followed by the generator or its Krein
/// adjoint, with the derivative scale absorbed into the coefficients.
pub fn coset_decompose(ctx: &PhiContext, elem: &AlgebraElement) -> Result<Vec<WeightedMap>> {
    elem.validate()?;
    let ps = compose(&ctx.phi, &ctx.sigma)?; // phi o sigma
    let sp = compose(&ctx.sigma, &ctx.phi)?; // sigma o phi
    let mut out = Vec::new();
    let mut push = |coeff: Cx, map: Mobius| {
        if coeff.norm() > 1e-15 {
            out.push(WeightedMap { coeff, map });
        }
    };
    if elem.c.norm() > 1e-15 {
        push(elem.c, Mobius::identity());
    }
    let s = ctx.s;
    for (k, &fk) in elem.f.iter().enumerate().skip(1) {
        push(fk * s.powi(k as i32), iterate(&ps, k as i64)?);
    }
    for (k, &gk) in elem.g.iter().enumerate().skip(1) {
        push(gk * s.powi(k as i32), iterate(&sp, k as i64)?);
    }
    for (k, &pk) in elem.p.iter().enumerate() {
        let map = compose(&iterate(&ps, k as i64)?, &ctx.phi)?;
        push(pk * s.powi(k as i32), map);
    }
    for (k, &qk) in elem.q.iter().enumerate() {
        let map = compose(&iterate(&sp, k as i64)?, &ctx.sigma)?;
        push(qk * s.powi(k as i32 + 1), map);
    }
    Ok(out)
}

/// The symbol of a weighted combination of member maps.
pub fn combination_symbol(ctx: &PhiContext, combo: &[WeightedMap]) -> Result<SymbolMatrix> {
    let mut total = SymbolMatrix::zero(ctx.s);
    for wm in combo {
        let verdict = linfrac_membership(ctx, &wm.map)?;
        let sym = verdict.symbol.ok_or_else(|| {
            Error::InternalConsistency("combination contains a non-member map".into())
        })?;
        total = total.add(&sym.scale(wm.coeff))?;
    }
    Ok(total)
}
