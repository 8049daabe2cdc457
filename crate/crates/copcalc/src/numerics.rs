//! Brute-force oracles: truncated composition-operator matrices on the
//! monomial basis, Szego-kernel Gram forms, the kernel lower bounds for the
//! essential norm, and the tangent-circle kernel limit.

use crate::blaschke::BlaschkeProduct;
use crate::moebius::{classify, conjugate_to_halfplane, jet, Mobius};
use crate::{Cx, Error, Result};
use serde::{Deserialize, Serialize};

fn cx(re: f64, im: f64) -> Cx {
    Cx::new(re, im)
}

/// A map the series oracle can expand: a single linear-fractional map, a
/// finite Blaschke product, or a composition chain (applied left to right).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AnalyticMap {
    Mobius(Mobius),
    Blaschke(BlaschkeProduct),
    Chain(Vec<AnalyticMap>),
}

fn trunc_mul(a: &[Cx], b: &[Cx], n: usize) -> Vec<Cx> {
    let mut out = vec![cx(0.0, 0.0); n];
    for (i, &ai) in a.iter().enumerate().take(n) {
        if ai.norm() == 0.0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate().take(n - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Power-series division `num/den` to `n` coefficients; requires
/// `den(0) != 0`.
fn series_div(num: &[Cx], den: &[Cx], n: usize) -> Result<Vec<Cx>> {
    let d0 = *den.first().unwrap_or(&cx(0.0, 0.0));
    if d0.norm() < 1e-300 {
        return Err(Error::PoleInsideDisk);
    }
    let mut out = vec![cx(0.0, 0.0); n];
    for k in 0..n {
        let mut acc = *num.get(k).unwrap_or(&cx(0.0, 0.0));
        for j in 1..=k {
            if let Some(&dj) = den.get(j) {
                acc -= dj * out[k - j];
            }
        }
        out[k] = acc / d0;
    }
    Ok(out)
}

fn mobius_coeffs(f: &Mobius, n: usize) -> Result<Vec<Cx>> {
    let [a, b, c, d] = f.coeffs();
    let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
    if c.norm() > 1e-14 * scale && (d / c).norm() <= 1.0 + 1e-12 {
        return Err(Error::PoleInsideDisk);
    }
    series_div(&[b, a], &[d, c], n)
}

fn blaschke_coeffs(bp: &BlaschkeProduct, n: usize) -> Result<Vec<Cx>> {
    // Expand numerator and denominator polynomials of the product form,
    // then divide as power series; the denominator zeros 1/conj(a) lie
    // outside the closed disk.
    let mut num = vec![bp.front];
    let mut den = vec![cx(1.0, 0.0)];
    for z in &bp.zeros {
        for _ in 0..z.multiplicity {
            if z.a.norm() < 1e-15 {
                num = trunc_mul(&num, &[cx(0.0, 0.0), cx(1.0, 0.0)], n + 8);
            } else {
                let phase = cx(z.a.norm(), 0.0) / z.a;
                num = trunc_mul(&num, &[phase * z.a, -phase], n + 8);
                den = trunc_mul(&den, &[cx(1.0, 0.0), -z.a.conj()], n + 8);
            }
        }
    }
    series_div(&num, &den, n)
}

/// First `n` Taylor coefficients of the map at the origin.
///
/// Chains are expanded by truncated series composition, so the result is the
/// truncated formal composition; tails beyond `n` are dropped.
pub fn taylor_coeffs(map: &AnalyticMap, n: usize) -> Result<Vec<Cx>> {
    match map {
        AnalyticMap::Mobius(f) => mobius_coeffs(f, n),
        AnalyticMap::Blaschke(b) => blaschke_coeffs(b, n),
        AnalyticMap::Chain(parts) => {
            if parts.is_empty() {
                return Err(Error::Precondition("empty chain".into()));
            }
            let mut acc = taylor_coeffs(&parts[0], n)?;
            for outer in &parts[1..] {
                let oc = taylor_coeffs(outer, n)?;
                // Horner evaluation of the outer series at the inner series.
                let mut res = vec![cx(0.0, 0.0); n];
                for &ok in oc.iter().rev() {
                    res = trunc_mul(&res, &acc, n);
                    res[0] += ok;
                }
                acc = res;
            }
            Ok(acc)
        }
    }
}

/// An `n x n` finite section of a composition operator on the monomial
/// basis: column `k` holds the Taylor coefficients of the k-th power of the
/// inducing map.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TruncatedOperator {
    pub n: usize,
    #[serde(with = "crate::jsonio::cxvec")]
    pub entries: Vec<Cx>,
    pub symbol_map: String,
}

impl TruncatedOperator {
    pub fn zero(n: usize, label: &str) -> Self {
        TruncatedOperator {
            n,
            entries: vec![cx(0.0, 0.0); n * n],
            symbol_map: label.into(),
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Cx {
        self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: Cx) {
        self.entries[row * self.n + col] = v;
    }

    pub fn adjoint(&self) -> TruncatedOperator {
        let mut out = TruncatedOperator::zero(self.n, &format!("adjoint({})", self.symbol_map));
        for r in 0..self.n {
            for c in 0..self.n {
                out.set(r, c, self.get(c, r).conj());
            }
        }
        out
    }

    pub fn sub(&self, other: &TruncatedOperator) -> Result<TruncatedOperator> {
        if self.n != other.n {
            return Err(Error::Precondition("dimension mismatch".into()));
        }
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e -= o;
        }
        Ok(out)
    }

    pub fn matmul(&self, other: &TruncatedOperator) -> Result<TruncatedOperator> {
        if self.n != other.n {
            return Err(Error::Precondition("dimension mismatch".into()));
        }
        let n = self.n;
        let mut out =
            TruncatedOperator::zero(n, &format!("{}*{}", self.symbol_map, other.symbol_map));
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.norm() == 0.0 {
                    continue;
                }
                for c in 0..n {
                    let v = out.get(r, c) + a * other.get(k, c);
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    fn apply(&self, x: &[Cx], row_start: usize) -> Vec<Cx> {
        let n = self.n;
        let mut out = vec![cx(0.0, 0.0); n - row_start];
        for (r, o) in out.iter_mut().enumerate() {
            let base = (r + row_start) * n;
            let mut acc = cx(0.0, 0.0);
            for (c, &xc) in x.iter().enumerate() {
                acc += self.entries[base + c] * xc;
            }
            *o = acc;
        }
        out
    }

    fn apply_adjoint(&self, y: &[Cx], row_start: usize) -> Vec<Cx> {
        let n = self.n;
        let mut out = vec![cx(0.0, 0.0); n];
        for (r, &yr) in y.iter().enumerate() {
            if yr.norm() == 0.0 {
                continue;
            }
            let base = (r + row_start) * n;
            for (c, o) in out.iter_mut().enumerate() {
                *o += self.entries[base + c].conj() * yr;
            }
        }
        out
    }

    /// Largest singular value of the rows-`row_start`-and-below block by
    /// power iteration on the normal equations.
    fn block_norm(&self, row_start: usize) -> f64 {
        let n = self.n;
        if row_start >= n {
            return 0.0;
        }
        let mut x: Vec<Cx> = (0..n)
            .map(|k| cx(((k + 1) as f64).sin(), ((3 * k + 2) as f64).cos()))
            .collect();
        let norm = |v: &[Cx]| v.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt();
        let mut prev = 0.0;
        for _ in 0..10_000 {
            let nx = norm(&x);
            if nx < 1e-300 {
                return 0.0;
            }
            for e in x.iter_mut() {
                *e /= nx;
            }
            let y = self.apply(&x, row_start);
            let est = norm(&y);
            x = self.apply_adjoint(&y, row_start);
            if (est - prev).abs() <= 1e-10 * est.max(1.0) {
                return est;
            }
            prev = est;
        }
        prev
    }
}

/// Finite section of the composition operator of `map`: column `k` is the
/// coefficient list of `map(z)^k`.
pub fn composition_matrix(map: &AnalyticMap, n: usize) -> Result<TruncatedOperator> {
    if n == 0 || n > 4096 {
        return Err(Error::Precondition("dimension must be in 1..=4096".into()));
    }
    let psi = taylor_coeffs(map, n)?;
    let mut out = TruncatedOperator::zero(n, "composition");
    let mut col = vec![cx(0.0, 0.0); n];
    col[0] = cx(1.0, 0.0);
    for k in 0..n {
        for (r, &v) in col.iter().enumerate() {
            out.set(r, k, v);
        }
        if k + 1 < n {
            col = trunc_mul(&col, &psi, n);
        }
    }
    Ok(out)
}

/// Largest singular value of the full finite section.
pub fn operator_norm(t: &TruncatedOperator) -> f64 {
    t.block_norm(0)
}

/// Largest singular value of the rows at index `n0` and beyond; tends to 0
/// as `n0` grows exactly when the truncated operator witnesses compactness.
pub fn tail_norm(t: &TruncatedOperator, n0: usize) -> Result<f64> {
    if n0 >= t.n {
        return Err(Error::Precondition("tail start beyond dimension".into()));
    }
    Ok(t.block_norm(n0))
}

/// A weighted family of linear-fractional maps, as used by the kernel
/// bounds.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Combination {
    pub terms: Vec<crate::membership::WeightedMap>,
}

/// `(1 - |z|^2) sum conj(c_i) c_j / (1 - conj(psi_i(z)) psi_j(z))`: the
/// squared norm of `sum conj(c_i) C*_{psi_i} k_z / ||k_z||`.
pub fn kernel_gram(combo: &Combination, z: Cx) -> Result<f64> {
    if z.norm() >= 1.0 {
        return Err(Error::Precondition(
            "point must lie in the open disk".into(),
        ));
    }
    let images: Vec<Cx> = combo
        .terms
        .iter()
        .map(|t| t.map.apply(z))
        .collect::<Result<_>>()?;
    for w in &images {
        if w.norm() >= 1.0 - 1e-15 {
            return Err(Error::Precondition("image on the boundary".into()));
        }
    }
    let mut acc = cx(0.0, 0.0);
    for (i, ti) in combo.terms.iter().enumerate() {
        for (j, tj) in combo.terms.iter().enumerate() {
            acc += ti.coeff.conj() * tj.coeff / (cx(1.0, 0.0) - images[i].conj() * images[j]);
        }
    }
    Ok((1.0 - z.norm_sqr()) * acc.re)
}

/// A point of the circle internally tangent to the unit circle at `alpha`
/// on which `(1 - |z|^2)/|alpha - z|^2 = 4 D`: center `alpha t/(t+1)`,
/// radius `1/(t+1)` with `t = 4D`, parametrized by the angle `theta`.
pub fn gamma_circle(alpha: Cx, d: f64, theta: f64) -> Result<Cx> {
    if d <= 0.0 {
        return Err(Error::Precondition("D must be positive".into()));
    }
    tangent_circle_point(alpha, 4.0 * d, theta)
}

/// Point of the locus `(1 - |z|^2)/|alpha - z|^2 = level`: the circle of
/// center `alpha level/(level+1)` and radius `1/(level+1)`.
fn tangent_circle_point(alpha: Cx, level: f64, theta: f64) -> Result<Cx> {
    if (alpha.norm() - 1.0).abs() > 1e-10 {
        return Err(Error::Precondition("alpha must be unimodular".into()));
    }
    let c = level / (level + 1.0);
    let r = 1.0 / (level + 1.0);
    Ok(alpha * (cx(c, 0.0) + r * cx(theta.cos(), theta.sin())))
}

/// First-order boundary data of each map at `alpha`, for the maps whose
/// angular-derivative set contains `alpha`; `None` for the rest.
fn boundary_data(combo: &Combination, alpha: Cx) -> Result<Vec<Option<(Cx, Cx)>>> {
    let mut out = Vec::new();
    for term in &combo.terms {
        let v = term.map.apply(alpha)?;
        if (v.norm() - 1.0).abs() > 1e-9 {
            out.push(None);
            continue;
        }
        // alpha contributes only when the map is tangent (or automorphic)
        // there, i.e. |map| attains 1 at alpha
        let class = classify(&term.map);
        if !class.is_disk_self_map || !class.sup_norm_one {
            out.push(None);
            continue;
        }
        let j = jet(&term.map, alpha, 1)?;
        out.push(Some((v, j[1])));
    }
    Ok(out)
}

fn group_by_data(data: &[Option<(Cx, Cx)>]) -> Vec<Vec<usize>> {
    let mut groups: Vec<(Cx, Cx, Vec<usize>)> = Vec::new();
    for (i, d) in data.iter().enumerate() {
        let Some((v, dv)) = d else { continue };
        match groups
            .iter_mut()
            .find(|(gv, gd, _)| (gv - v).norm() < 1e-9 && (gd - dv).norm() < 1e-9)
        {
            Some((_, _, idx)) => idx.push(i),
            None => groups.push((*v, *dv, vec![i])),
        }
    }
    groups.into_iter().map(|(_, _, idx)| idx).collect()
}

/// First kernel lower bound for the squared essential norm: coefficients
/// are summed within each first-order data class at `alpha` and weighted by
/// the reciprocal derivative modulus.
pub fn lb1(combo: &Combination, alpha: Cx) -> Result<f64> {
    let data = boundary_data(combo, alpha)?;
    let mut total = 0.0;
    for group in group_by_data(&data) {
        let coeff: Cx = group.iter().map(|&i| combo.terms[i].coeff).sum();
        let (_, dv) = data[group[0]].unwrap();
        total += coeff.norm_sqr() / dv.norm();
    }
    Ok(total)
}

/// A jet entry for the higher-order bound: weight, boundary jet values
/// `(v0, v1, ..)` at `alpha`, and the order of contact there.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JetEntry {
    #[serde(with = "crate::jsonio::cx")]
    pub coeff: Cx,
    #[serde(with = "crate::jsonio::cxvec")]
    pub values: Vec<Cx>,
    pub contact_order: u32,
}

/// Higher-order kernel bound over supplied jets: for `k = 2` this is the
/// first-order grouping of `lb1`; for `k = 3` only entries with contact
/// order above two participate and grouping uses the full 2-jet.
pub fn lb2(entries: &[JetEntry], k: u32) -> Result<f64> {
    if !(2..=3).contains(&k) {
        return Err(Error::Precondition("order must be 2 or 3".into()));
    }
    let order = (k - 1) as usize;
    let active: Vec<&JetEntry> = entries.iter().filter(|e| e.contact_order >= k).collect();
    for e in &active {
        if e.values.len() < order + 1 {
            return Err(Error::Precondition("jet too short for the order".into()));
        }
    }
    let mut groups: Vec<(Vec<Cx>, Cx)> = Vec::new();
    for e in &active {
        let key: Vec<Cx> = e.values[..=order].to_vec();
        match groups
            .iter_mut()
            .find(|(g, _)| g.iter().zip(&key).all(|(x, y)| (x - y).norm() < 1e-9))
        {
            Some((_, c)) => *c += e.coeff,
            None => groups.push((key, e.coeff)),
        }
    }
    let mut total = 0.0;
    for (key, c) in groups {
        total += c.norm_sqr() / key[1].norm();
    }
    Ok(total)
}

/// Boundary-integral lower bound: automorphisms contribute their full
/// coefficient mass, everything else nothing.
pub fn lbext(combo: &Combination) -> f64 {
    combo
        .terms
        .iter()
        .filter(|t| classify(&t.map).is_disk_automorphism)
        .map(|t| t.coeff.norm_sqr())
        .sum()
}

/// The tangent-circle kernel limit: groups the maps fixing first-order data
/// at `alpha`, computes `w_j = u_j'(0)/2 - i D u_j''(0)` from the half-plane
/// conjugation of each map, and sums the Hermitian forms
/// `sum conj(c_i) c_j / (conj(w_i) + w_j)` per group.
pub fn lb3_rhs(combo: &Combination, alpha: Cx, d: f64) -> Result<f64> {
    if d <= 0.0 {
        return Err(Error::Precondition("D must be positive".into()));
    }
    let data = boundary_data(combo, alpha)?;
    let mut ws: Vec<Option<Cx>> = vec![None; combo.terms.len()];
    for (i, entry) in data.iter().enumerate() {
        let Some((v, _)) = entry else { continue };
        let (_, j) = conjugate_to_halfplane(&combo.terms[i].map, alpha, *v)?;
        let w = j[1] / 2.0 - cx(0.0, d) * j[2];
        if w.re <= 0.0 {
            return Err(Error::InternalConsistency(
                "half-plane parameter outside the right half-plane".into(),
            ));
        }
        ws[i] = Some(w);
    }
    let mut total = 0.0;
    for group in group_by_data(&data) {
        let mut acc = cx(0.0, 0.0);
        for &i in &group {
            for &j in &group {
                let (wi, wj) = (ws[i].unwrap(), ws[j].unwrap());
                acc += combo.terms[i].coeff.conj() * combo.terms[j].coeff / (wi.conj() + wj);
            }
        }
        total += acc.re;
    }
    Ok(total)
}

/// One row of the kernel-limit convergence report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LimitSample {
    pub distance: f64,
    pub gram: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LimitReport {
    pub rhs: f64,
    pub samples: Vec<LimitSample>,
    pub converged: bool,
}

/// Evaluates the kernel Gram form at points approaching `alpha` along the
/// tangent circle matching the closed form (its locus level is `1/(4D)`,
/// the reciprocal of `gamma_circle`'s, so that the limit of the Gram form
/// equals `lb3_rhs` for the same `D`) and compares against `lb3_rhs`;
/// convergence is accepted when the last two errors differ by at least a
/// factor of two.
pub fn lb3_limit_check(
    combo: &Combination,
    alpha: Cx,
    d: f64,
    distances: &[f64],
) -> Result<LimitReport> {
    let rhs = lb3_rhs(combo, alpha, d)?;
    let t = 1.0 / (4.0 * d);
    let c = t / (t + 1.0);
    let r = 1.0 / (t + 1.0);
    let mut samples = Vec::new();
    for &delta in distances {
        let m = 1.0 - delta;
        // |z| = 1 - delta on the circle: law of cosines for the angle
        let cos_th = (m * m - c * c - r * r) / (2.0 * c * r);
        if !(-1.0..=1.0).contains(&cos_th) {
            return Err(Error::Precondition(
                "distance unreachable on the tangent circle".into(),
            ));
        }
        let theta = cos_th.acos();
        let z = tangent_circle_point(alpha, t, theta)?;
        let gram = kernel_gram(combo, z)?;
        samples.push(LimitSample {
            distance: delta,
            gram,
            error: (gram - rhs).abs(),
        });
    }
    let converged = samples.len() >= 2 && {
        let last = samples[samples.len() - 1].error;
        let prev = samples[samples.len() - 2].error;
        last < 1e-15 || prev / last >= 2.0
    };
    Ok(LimitReport {
        rhs,
        samples,
        converged,
    })
}

/// Compactness witness for the self-adjointness defect of a parabolic
/// composition operator with real translation number: tail norms of
/// `M* - M` at a ladder of cut points, which must decrease.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecayReport {
    pub cuts: Vec<usize>,
    pub tails: Vec<f64>,
    pub decreasing: bool,
}

pub fn mod_compact_selfadjoint_check(a: f64, gamma: Cx, n: usize) -> Result<DecayReport> {
    if a < 0.0 {
        return Err(Error::Precondition(
            "translation number must be >= 0".into(),
        ));
    }
    let rho = crate::moebius::parabolic(gamma, cx(a, 0.0), false)?;
    let m = composition_matrix(&AnalyticMap::Mobius(rho), n)?;
    let defect = m.adjoint().sub(&m)?;
    let cuts = vec![n / 8, n / 4, n / 2];
    let mut tails = Vec::new();
    for &c in &cuts {
        tails.push(tail_norm(&defect, c)?);
    }
    let decreasing = tails.windows(2).all(|w| w[1] < w[0]) || tails.iter().all(|&t| t < 1e-14);
    Ok(DecayReport {
        cuts,
        tails,
        decreasing,
    })
}

/// Writes the finite section as row-major little-endian `(re, im)` float64
/// pairs next to a JSON sidecar with the dimension and map descriptor.
pub fn export_matrix(t: &TruncatedOperator, path: &std::path::Path) -> Result<()> {
    let mut bytes = Vec::with_capacity(t.entries.len() * 16);
    for e in &t.entries {
        bytes.extend_from_slice(&e.re.to_le_bytes());
        bytes.extend_from_slice(&e.im.to_le_bytes());
    }
    std::fs::write(path, bytes)?;
    let sidecar = serde_json::json!({
        "n": t.n,
        "map": t.symbol_map,
        "layout": "row-major little-endian float64 (re, im) pairs",
    });
    let mut side_path = path.as_os_str().to_owned();
    side_path.push(".json");
    std::fs::write(side_path, serde_json::to_vec_pretty(&sidecar)?)?;
    Ok(())
}
