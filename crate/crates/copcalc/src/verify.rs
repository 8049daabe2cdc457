//! The acceptance suite: each check exercises one verifiable claim of the
//! calculus end to end and reports pass/fail with a short detail line. The
//! CLI `verify` subcommand and the integration tests share these functions.

use crate::blaschke::construct_two_point;
use crate::boundary::BoundaryProfile;
use crate::membership::{
    coset_decompose, linfrac_membership, make_context, necessity_check, Condition, PhiContext,
    WeightedMap,
};
use crate::moebius::{compose, krein_adjoint, parabolic, projective_eq, Mobius};
use crate::numerics::{
    composition_matrix, kernel_gram, lb1, lb3_limit_check, lb3_rhs, lbext, tail_norm, AnalyticMap,
    Combination,
};
use crate::symbols::{
    essential_norm, essential_spectrum, gelfand, generator_symbol, joint_essential_spectrum,
    lambda_auto, psi_of_element, psi_of_word, table2_symbol, AlgebraElement, Gen,
    ParabolicCombination, ParabolicTerm, PowerSum, SymbolMatrix, TableRow,
};
use crate::{Cx, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

fn cx(re: f64, im: f64) -> Cx {
    Cx::new(re, im)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriterionReport {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn report(name: &str, passed: bool, detail: String) -> CriterionReport {
    CriterionReport {
        name: name.into(),
        passed,
        detail,
    }
}

fn phi_running() -> Mobius {
    Mobius::new(cx(-7.0, 0.0), cx(-3.0, 0.0), cx(2.0, 0.0), cx(8.0, 0.0)).unwrap()
}

fn running_context() -> Result<PhiContext> {
    make_context(&phi_running())
}

/// Criterion 1: Parabolic maps with a common fixed point compose additively in the
/// translation number, and the Krein adjoint conjugates it.
pub fn check_parabolic_semigroup(seed: u64) -> Result<CriterionReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut worst = 0.0_f64;
    for _ in 0..100 {
        let th: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let gamma = cx(th.cos(), th.sin());
        let a = cx(rng.gen_range(0.05..3.0), rng.gen_range(-2.0..2.0));
        let b = cx(rng.gen_range(0.05..3.0), rng.gen_range(-2.0..2.0));
        let ra = parabolic(gamma, a, false)?;
        let rb = parabolic(gamma, b, false)?;
        let sum = parabolic(gamma, a + b, false)?;
        if !projective_eq(&compose(&ra, &rb)?, &sum, 1e-12) {
            worst = f64::INFINITY;
            break;
        }
        let conj = parabolic(gamma, a.conj(), false)?;
        if !projective_eq(&krein_adjoint(&ra), &conj, 1e-12) {
            worst = f64::INFINITY;
            break;
        }
    }
    let passed = worst.is_finite();
    Ok(report(
        "parabolic semigroup and Krein involution",
        passed,
        if passed {
            "100 random (gamma, a, b) at 1e-12".into()
        } else {
            "projective identity failed".into()
        },
    ))
}

/// Criterion 2: The running generating map produces the expected context and its two
/// parabolic products.
pub fn check_running_context() -> Result<CriterionReport> {
    let ctx = running_context()?;
    let mut ok = (ctx.zeta - cx(1.0, 0.0)).norm() < 1e-10
        && (ctx.eta + cx(1.0, 0.0)).norm() < 1e-10
        && (ctx.s - 2.0).abs() < 1e-10
        && (ctx.b - 0.2).abs() < 1e-10
        && (ctx.c - 0.1).abs() < 1e-10;
    let ps = compose(&ctx.phi, &ctx.sigma)?;
    let expect_ps = Mobius::new(cx(4.0, 0.0), cx(-1.0, 0.0), cx(1.0, 0.0), cx(6.0, 0.0))?;
    let sp = compose(&ctx.sigma, &ctx.phi)?;
    let expect_sp = Mobius::new(cx(9.0, 0.0), cx(1.0, 0.0), cx(-1.0, 0.0), cx(11.0, 0.0))?;
    ok = ok
        && projective_eq(&ps, &expect_ps, 1e-10)
        && projective_eq(&ps, &parabolic(cx(-1.0, 0.0), cx(0.4, 0.0), false)?, 1e-10)
        && projective_eq(&sp, &expect_sp, 1e-10)
        && projective_eq(&sp, &parabolic(cx(1.0, 0.0), cx(0.2, 0.0), false)?, 1e-10);
    Ok(report(
        "running context",
        ok,
        format!(
            "zeta={:.1}, eta={:.1}, s={:.3}, b={:.3}, c={:.3}",
            ctx.zeta.re, ctx.eta.re, ctx.s, ctx.b, ctx.c
        ),
    ))
}

fn hausdorff_to_unit_interval(samples: &[Cx]) -> f64 {
    let mut sup_from_interval = 0.0_f64;
    let n = 4096;
    for k in 0..=n {
        let x = k as f64 / n as f64;
        let d = samples
            .iter()
            .map(|s| (s - cx(x, 0.0)).norm())
            .fold(f64::INFINITY, f64::min);
        sup_from_interval = sup_from_interval.max(d);
    }
    let sup_from_samples = samples
        .iter()
        .map(|s| {
            let x = s.re.clamp(0.0, 1.0);
            (s - cx(x, 0.0)).norm()
        })
        .fold(0.0_f64, f64::max);
    sup_from_interval.max(sup_from_samples)
}

/// Criterion 3: Essential norm and spectrum of the generator symbol, and the sampled
/// spectrum of a diagonal parabolic symbol.
pub fn check_symbol_calculus() -> Result<CriterionReport> {
    let ctx = running_context()?;
    let gen = generator_symbol(ctx.s);
    let norm_ok = (essential_norm(&gen) - 2.0_f64.sqrt()).abs() < 1e-10;
    let spec = essential_spectrum(&gen, 256);
    let spec_ok = spec.iter().all(|z| z.norm() < 1e-12);
    let row_d = table2_symbol(TableRow::D, cx(1.0, 0.0), ctx.s, ctx.b, ctx.c)?;
    let samples = essential_spectrum(&row_d, 4096);
    let gap = hausdorff_to_unit_interval(&samples);
    let ok = norm_ok && spec_ok && gap <= 2e-3;
    Ok(report(
        "symbol calculus",
        ok,
        format!(
            "essnorm err {:.2e}, spectrum gap {:.2e}",
            (essential_norm(&gen) - 2.0_f64.sqrt()).abs(),
            gap
        ),
    ))
}

/// Criterion 4: The symbol of a concatenated word equals the product of the symbols.
pub fn check_psi_multiplicativity(seed: u64) -> Result<CriterionReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(4));
    let mut worst = 0.0_f64;
    for _ in 0..200 {
        let word = |rng: &mut ChaCha8Rng| {
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
        let lhs = psi_of_word(&cat, 2.0)?;
        let rhs = psi_of_word(&w1, 2.0)?.mul(&psi_of_word(&w2, 2.0)?)?;
        let d = lhs.distance(&rhs);
        let d = if d.is_finite() { d } else { 1.0 };
        worst = worst.max(d);
    }
    Ok(report(
        "symbol multiplicativity",
        worst < 1e-10,
        format!("200 word pairs, worst deviation {worst:.2e}"),
    ))
}

/// Criterion 5: The rescaling automorphism reproduces the closed-form image of the
/// off-diagonal monomials exactly.
pub fn check_lambda_diagram() -> Result<CriterionReport> {
    let s = 2.0_f64;
    let mut worst = 0.0_f64;
    for n in 1..=3u32 {
        for m in 0..=3u32 {
            let mut f = SymbolMatrix::zero(s);
            f.e12 = PowerSum::monomial(cx(1.0, 0.0), cx(m as f64 + 0.5, 0.0))?;
            let img = lambda_auto(&f, n);
            let expo = ((2 * n + 1) * m + n) as f64 + 0.5;
            let coeff = s.powi(-(((2 * m + 1) * n) as i32));
            let expect = PowerSum::monomial(cx(coeff, 0.0), cx(expo, 0.0))?;
            worst = worst.max(img.e12.distance(&expect));
        }
    }
    Ok(report(
        "rescaling automorphism diagram",
        worst < 1e-15,
        format!("n in 1..3, m in 0..3, worst deviation {worst:.2e}"),
    ))
}

/// Criterion 6: Membership decisions across the admissible ranges and the rejection
/// cases.
pub fn check_membership_decisions() -> Result<CriterionReport> {
    let ctx = running_context()?;
    let mut fails: Vec<String> = Vec::new();

    for a in [0.3, -0.1] {
        let rho = parabolic(ctx.eta, cx(a, 0.0), true)?;
        let psi = compose(&rho, &ctx.phi)?;
        let v = linfrac_membership(&ctx, &psi)?;
        if !(v.member && v.condition == Condition::A) {
            fails.push(format!("rho_eta({a}) o phi"));
        }
    }
    let rho = parabolic(ctx.eta, cx(-0.25, 0.0), true)?;
    let psi = compose(&rho, &ctx.phi)?;
    match linfrac_membership(&ctx, &psi) {
        Ok(v) if v.member => fails.push("rho_eta(-0.25) o phi accepted".into()),
        _ => {}
    }
    let rho_i = parabolic(ctx.zeta, cx(0.0, 1.0), true)?;
    if linfrac_membership(&ctx, &rho_i)?.member {
        fails.push("imaginary translation accepted".into());
    }
    let whole = BoundaryProfile {
        entries: vec![],
        contact_orders: vec![],
        whole_circle: true,
    };
    if necessity_check(&ctx, &whole)? != Condition::Identity {
        fails.push("identity profile tag".into());
    }
    let lam = cx(0.0, 1.0);
    let off = BoundaryProfile {
        entries: vec![crate::boundary::DataVector {
            alpha: lam,
            values: vec![lam, cx(1.0, 0.0)],
        }],
        contact_orders: vec![2],
        whole_circle: false,
    };
    if necessity_check(&ctx, &off)? != Condition::None {
        fails.push("off-point profile not rejected".into());
    }
    Ok(report(
        "membership decisions",
        fails.is_empty(),
        if fails.is_empty() {
            "ranges and rejections as expected".into()
        } else {
            fails.join("; ")
        },
    ))
}

/// Criterion 7: Kernel lower bounds never exceed the squared essential norm of the
/// symbol, across random functional-calculus elements.
pub fn check_lower_bound_consistency(seed: u64) -> Result<CriterionReport> {
    let ctx = running_context()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(7));
    let mut worst_margin = f64::NEG_INFINITY;
    for _ in 0..50 {
        let poly = |zero_const: bool, rng: &mut ChaCha8Rng| {
            let n = rng.gen_range(0..=2usize);
            let mut v: Vec<Cx> = (0..=n)
                .map(|_| cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            if zero_const {
                v[0] = cx(0.0, 0.0);
            }
            v
        };
        let e = AlgebraElement {
            c: cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            f: poly(true, &mut rng),
            g: poly(true, &mut rng),
            p: poly(false, &mut rng),
            q: poly(false, &mut rng),
        };
        let dec = coset_decompose(&ctx, &e)?;
        let combo = Combination { terms: dec };
        let cap = essential_norm(&psi_of_element(&e, ctx.s)?).powi(2) + 1e-9;
        let mut bounds = vec![lb1(&combo, ctx.zeta)?, lb1(&combo, ctx.eta)?, lbext(&combo)];
        for d in [0.1, 1.0, 10.0] {
            bounds.push(lb3_rhs(&combo, ctx.zeta, d)?);
        }
        for bnd in bounds {
            worst_margin = worst_margin.max(bnd - cap);
            if bnd > cap {
                return Ok(report(
                    "lower-bound consistency",
                    false,
                    format!("bound {bnd} exceeds cap {cap}"),
                ));
            }
        }
    }
    Ok(report(
        "lower-bound consistency",
        true,
        format!("50 combinations, worst margin {worst_margin:.2e}"),
    ))
}

/// Criterion 8: The Gram form along the tangent circle converges to the closed-form
/// kernel expression.
pub fn check_lb3_limit() -> Result<CriterionReport> {
    let distances = [1e-2, 1e-3, 1e-4, 1e-5];
    let rho = parabolic(cx(1.0, 0.0), cx(1.0, 0.0), false)?;
    let single = |m: Mobius| Combination {
        terms: vec![WeightedMap {
            coeff: cx(1.0, 0.0),
            map: m,
        }],
    };
    let rep1 = lb3_limit_check(&single(rho), cx(1.0, 0.0), 1.0, &distances)?;
    let rhs_ok = (rep1.rhs - 0.2).abs() < 1e-12;
    let e1 = rep1.samples.last().unwrap().error;
    let ctx = running_context()?;
    let rep2 = lb3_limit_check(&single(ctx.phi), ctx.zeta, 1.0, &distances)?;
    let e2 = rep2.samples.last().unwrap().error;
    let ok = rhs_ok && rep1.converged && rep2.converged && e1 < 1e-4 && e2 < 1e-4;
    Ok(report(
        "tangent-circle kernel limit",
        ok,
        format!(
            "rhs 1/5 err {:.1e}; final errors {e1:.1e}, {e2:.1e}",
            (rep1.rhs - 0.2).abs()
        ),
    ))
}

/// Criterion 9: The boundary kernel ratio recovers the reciprocal angular derivative.
pub fn check_julia_caratheodory() -> Result<CriterionReport> {
    let combo = Combination {
        terms: vec![WeightedMap {
            coeff: cx(1.0, 0.0),
            map: phi_running(),
        }],
    };
    let g = kernel_gram(&combo, cx(1.0 - 1e-6, 0.0))?;
    let ok = (g - 2.0).abs() < 1e-3;
    Ok(report(
        "boundary kernel ratio",
        ok,
        format!("gram {g:.6} vs 2"),
    ))
}

/// Criterion 10: The two-point Blaschke constructor: closed-form cases and random
/// endpoint conditions with the derivative phase law.
pub fn check_blaschke_constructor(seed: u64) -> Result<CriterionReport> {
    let zeta = cx(-1.0, 0.0);
    let eta = cx(1.0, 0.0);
    let b22 = construct_two_point(zeta, eta, 2.0, 2.0)?;
    let mono_ok = |b: &crate::blaschke::TwoPointBlaschke, deg: u32| {
        b.product.degree() == deg && b.product.zeros.iter().all(|z| z.a.norm() < 1e-12)
    };
    let mut ok = mono_ok(&b22, 2) && mono_ok(&construct_two_point(zeta, eta, 4.0, 4.0)?, 4);
    let b11 = construct_two_point(zeta, eta, 1.0, 1.0)?;
    for k in 0..8 {
        let th = 0.9 * k as f64;
        let z = cx(0.7 * th.cos(), 0.7 * th.sin());
        let (v, _) = b11.product.evaluate(z)?;
        let expect = (3.0 * z * z + 1.0) / (z * z + 3.0);
        ok = ok && (v - expect).norm() < 1e-12;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(10));
    let mut worst = 0.0_f64;
    for _ in 0..200 {
        let th1: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let mut th2: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        while ((th1 - th2).cos() - 1.0).abs() < 1e-4 {
            th2 = rng.gen_range(0.0..std::f64::consts::TAU);
        }
        let (eta, zeta) = (cx(th1.cos(), th1.sin()), cx(th2.cos(), th2.sin()));
        let (t1, t2) = (rng.gen_range(0.1..10.0), rng.gen_range(0.1..10.0));
        let b = construct_two_point(zeta, eta, t1, t2)?;
        let (ve, de) = b.product.evaluate(eta)?;
        let (vz, dz) = b.product.evaluate(zeta)?;
        worst = worst
            .max((ve - eta).norm())
            .max((vz - eta).norm())
            .max((de - cx(t1, 0.0)).norm())
            .max((dz - eta * zeta.conj() * t2).norm());
    }
    ok = ok && worst < 1e-9;
    Ok(report(
        "two-point finite products",
        ok,
        format!("closed forms and 200 random cases, worst deviation {worst:.2e}"),
    ))
}

/// Criterion 11: Tail norms of the finite section of the squared generating map
/// witness compactness.
pub fn check_compactness_oracle() -> Result<CriterionReport> {
    let phi = phi_running();
    let phi2 = compose(&phi, &phi)?;
    let mut prev = f64::INFINITY;
    let mut tails = Vec::new();
    for n in [64usize, 128, 256] {
        let m = composition_matrix(&AnalyticMap::Mobius(phi2), n)?;
        let t = tail_norm(&m, n / 2)?;
        tails.push(t);
        if t >= prev {
            return Ok(report(
                "compactness oracle",
                false,
                format!("tail not decreasing: {tails:?}"),
            ));
        }
        prev = t;
    }
    let ok = prev < 1e-6;
    Ok(report(
        "compactness oracle",
        ok,
        format!("tails {tails:?}, final < 1e-6: {ok}"),
    ))
}

/// Criterion 12: The joint spectrum curve matches the scalar functional calculus
/// pointwise.
pub fn check_joint_spectrum() -> Result<CriterionReport> {
    let pts = joint_essential_spectrum(&[cx(1.0, 0.0), cx(2.0, 0.0)], 400)?;
    let mut ok = pts.iter().all(|p| (p[1] - p[0] * p[0]).norm() < 1e-13);
    let g1 = gelfand(&ParabolicCombination {
        gamma: cx(1.0, 0.0),
        unit: cx(0.0, 0.0),
        terms: vec![ParabolicTerm {
            a: cx(1.0, 0.0),
            coeff: cx(1.0, 0.0),
        }],
    })?;
    let g2 = gelfand(&ParabolicCombination {
        gamma: cx(1.0, 0.0),
        unit: cx(0.0, 0.0),
        terms: vec![ParabolicTerm {
            a: cx(2.0, 0.0),
            coeff: cx(1.0, 0.0),
        }],
    })?;
    for k in 0..20 {
        let t = k as f64 / 19.0;
        let idx = ((t * 400.0).round() as usize).min(400);
        let t_grid = idx as f64 / 400.0;
        let p = &pts[idx];
        ok = ok
            && (g1.eval(t_grid) - p[0]).norm() < 1e-12
            && (g2.eval(t_grid) - p[1]).norm() < 1e-12;
    }
    Ok(report(
        "joint spectrum curve",
        ok,
        "curve (t, t^2) and scalar calculus agree".into(),
    ))
}

/// Criterion 13: Nontrivial combinations of distinct classified symbols never vanish.
pub fn check_linear_independence(seed: u64) -> Result<CriterionReport> {
    let ctx = running_context()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(13));
    let rows = [TableRow::A, TableRow::B, TableRow::C, TableRow::D];
    let mut min_norm = f64::INFINITY;
    for _ in 0..50 {
        let k = rng.gen_range(2..=4usize);
        let mut total = SymbolMatrix::zero(ctx.s);
        let mut used: Vec<(usize, f64)> = Vec::new();
        for _ in 0..k {
            // distinct (row, parameter) pairs with admissible parameters
            let (ri, a) = loop {
                let ri = rng.gen_range(0..4usize);
                let a = rng.gen_range(0.05..2.0);
                if !used
                    .iter()
                    .any(|&(r0, a0)| r0 == ri && (a0 - a).abs() < 1e-6)
                {
                    break (ri, a);
                }
            };
            used.push((ri, a));
            let coeff = loop {
                let c = cx(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                if c.norm() > 0.1 {
                    break c;
                }
            };
            let sym = table2_symbol(rows[ri], cx(a, 0.0), ctx.s, ctx.b, ctx.c)?;
            total = total.add(&sym.scale(coeff))?;
        }
        min_norm = min_norm.min(essential_norm(&total));
    }
    Ok(report(
        "symbol-level linear independence",
        min_norm > 1e-8,
        format!("50 combinations, smallest essential norm {min_norm:.2e}"),
    ))
}

/// Runs the whole acceptance suite with a fixed seed for the randomized
/// checks.
pub fn run_all(seed: u64) -> Result<Vec<CriterionReport>> {
    Ok(vec![
        check_parabolic_semigroup(seed)?,
        check_running_context()?,
        check_symbol_calculus()?,
        check_psi_multiplicativity(seed)?,
        check_lambda_diagram()?,
        check_membership_decisions()?,
        check_lower_bound_consistency(seed)?,
        check_lb3_limit()?,
        check_julia_caratheodory()?,
        check_blaschke_constructor(seed)?,
        check_compactness_oracle()?,
        check_joint_spectrum()?,
        check_linear_independence(seed)?,
    ])
}
