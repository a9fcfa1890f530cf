//! Affine semigroup combinatorics: membership, lattice group, cone,
//! saturation (Hilbert basis), normality, faces and algebra retracts,
//! purely-inseparable certificates, and the F-coherence classifier.
//!
//! The classifier combines a sufficient certificate (a purely
//! inseparable sandwich between a polynomial ring and its Frobenius
//! image) with a necessary condition (the normalization must be purely
//! inseparable). When neither side decides, the verdict is `Unknown` —
//! a first-class outcome, not a failure.

use crate::charp::TranscriptEntry;
use crate::error::{Error, Result};
use crate::field::PrimeChar;
use crate::groebner::{normal_form, GbLimits, Ideal};
use crate::poly::{MonomialOrder, Polynomial, Ring};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// Box-size threshold separating the dynamic-programming membership
/// path from the rewriting path for deep vectors.
const MEMBER_DP_BOX: u64 = 2_000_000;

/// Exponent search cap for relative-interior elements in the
/// normalization test. Conductor theory guarantees a hit for interior
/// points; the cap only bounds the search.
const INTERIOR_E_CAP: u32 = 8;

// ---------------------------------------------------------------------------
// Core types
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SemigroupRepr {
    dim: usize,
    gens: Vec<Vec<i64>>,
}

/// A finitely generated subsemigroup of `Z^d_{>=0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SemigroupRepr", into = "SemigroupRepr")]
pub struct AffineSemigroup {
    dim: usize,
    gens: Vec<Vec<i64>>,
}

impl AffineSemigroup {
    pub fn new(dim: usize, gens: Vec<Vec<i64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::precondition("dimension must be at least 1"));
        }
        if gens.is_empty() {
            return Err(Error::precondition("semigroup needs at least one generator"));
        }
        let mut seen = HashSet::new();
        for g in &gens {
            if g.len() != dim {
                return Err(Error::precondition(format!(
                    "generator {g:?} does not have {dim} coordinates"
                )));
            }
            if g.iter().any(|&x| x < 0) {
                return Err(Error::precondition(format!(
                    "generator {g:?} has a negative entry"
                )));
            }
            if g.iter().all(|&x| x == 0) {
                return Err(Error::precondition("the zero vector is not a generator"));
            }
            if !seen.insert(g.clone()) {
                return Err(Error::precondition(format!("duplicate generator {g:?}")));
            }
        }
        Ok(AffineSemigroup { dim, gens })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.gens
    }
}

impl TryFrom<SemigroupRepr> for AffineSemigroup {
    type Error = Error;
    fn try_from(r: SemigroupRepr) -> Result<Self> {
        AffineSemigroup::new(r.dim, r.gens)
    }
}

impl From<AffineSemigroup> for SemigroupRepr {
    fn from(s: AffineSemigroup) -> SemigroupRepr {
        SemigroupRepr {
            dim: s.dim,
            gens: s.gens,
        }
    }
}

/// The subgroup of `Z^d` generated by the semigroup, as a Hermite
/// normal form basis (row style: positive pivots, entries above each
/// pivot reduced into `[0, pivot)`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticeGroup {
    pub basis: Vec<Vec<i64>>,
    pub rank: usize,
}

impl LatticeGroup {
    /// Membership by forward reduction along the pivots.
    pub fn contains(&self, v: &[i64]) -> bool {
        let mut v = v.to_vec();
        for row in &self.basis {
            let pivot_col = match row.iter().position(|&x| x != 0) {
                Some(c) => c,
                None => continue,
            };
            if v[pivot_col] != 0 {
                if v[pivot_col] % row[pivot_col] != 0 {
                    return false;
                }
                let f = v[pivot_col] / row[pivot_col];
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi -= f * ri;
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }
}

/// A rational polyhedral cone given by its primitive extreme rays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RationalCone {
    pub rays: Vec<Vec<i64>>,
    pub span_dim: usize,
}

// ---------------------------------------------------------------------------
// Integer linear algebra helpers
// ---------------------------------------------------------------------------

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn vec_gcd(v: &[i64]) -> i64 {
    v.iter().fold(0, |acc, &x| gcd(acc, x))
}

fn primitive(v: &[i64]) -> Vec<i64> {
    let g = vec_gcd(v);
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|&x| x / g).collect()
    }
}

/// Row-style Hermite normal form; returns the nonzero rows.
pub fn hermite_normal_form(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<i64>> = rows.to_vec();
    let mut pivot_row = 0usize;
    for col in 0..ncols {
        // gcd-eliminate below pivot_row in this column
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..m.len() {
                if m[r][col] != 0 {
                    best = Some(match best {
                        Some(b) if m[b][col].abs() <= m[r][col].abs() => b,
                        _ => r,
                    });
                }
            }
            let b = match best {
                Some(b) => b,
                None => break,
            };
            m.swap(pivot_row, b);
            let mut any_left = false;
            for r in (pivot_row + 1)..m.len() {
                if m[r][col] != 0 {
                    let f = m[r][col] / m[pivot_row][col];
                    for c in 0..ncols {
                        m[r][c] -= f * m[pivot_row][c];
                    }
                    if m[r][col] != 0 {
                        any_left = true;
                    }
                }
            }
            if !any_left {
                break;
            }
        }
        if pivot_row < m.len() && m[pivot_row][col] != 0 {
            if m[pivot_row][col] < 0 {
                for c in 0..ncols {
                    m[pivot_row][c] = -m[pivot_row][c];
                }
            }
            pivot_row += 1;
            if pivot_row == m.len() {
                break;
            }
        }
    }
    m.truncate(pivot_row);
    // reduce entries above each pivot
    for r in (0..m.len()).rev() {
        let col = m[r].iter().position(|&x| x != 0).expect("nonzero row");
        let pivot = m[r][col];
        for upper in 0..r {
            let f = m[upper][col].div_euclid(pivot);
            if f != 0 {
                for c in 0..m[r].len() {
                    m[upper][c] -= f * m[r][c];
                }
            }
        }
    }
    m
}

fn cross2(a: &[i64], b: &[i64]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn cross3(a: &[i64], b: &[i64]) -> Vec<i64> {
    vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

fn det3(a: &[i64], b: &[i64], c: &[i64]) -> i128 {
    let n = cross3(a, b);
    dot(&n, c)
}

fn is_parallel_same_direction(a: &[i64], b: &[i64]) -> bool {
    primitive(a) == primitive(b)
}

/// Exact membership of `v` in the cone spanned by `gens`
/// (Caratheodory over singletons, pairs and triples; `d <= 3`).
fn in_cone_of(v: &[i64], gens: &[Vec<i64>]) -> bool {
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    let d = v.len();
    for g in gens {
        if is_parallel_same_direction(v, g) {
            return true;
        }
    }
    match d {
        1 => gens.iter().any(|g| g[0] > 0) && v[0] > 0,
        2 => {
            for i in 0..gens.len() {
                for j in (i + 1)..gens.len() {
                    let (a, b) = (&gens[i], &gens[j]);
                    let det = cross2(a, b);
                    if det == 0 {
                        continue;
                    }
                    // v = alpha a + beta b; Cramer signs
                    let alpha = cross2(v, b);
                    let beta = cross2(a, v);
                    let (alpha, beta, det) = (alpha as i128, beta as i128, det as i128);
                    if alpha * det >= 0 && beta * det >= 0 {
                        return true;
                    }
                }
            }
            false
        }
        3 => {
            // pairs inside the plane they span
            for i in 0..gens.len() {
                for j in (i + 1)..gens.len() {
                    let (a, b) = (&gens[i], &gens[j]);
                    let n = cross3(a, b);
                    if n.iter().all(|&x| x == 0) {
                        continue;
                    }
                    if dot(&n, v) != 0 {
                        continue;
                    }
                    let nn = dot(&n, &n);
                    let alpha = dot(&cross3(v, b), &n);
                    let beta = dot(&cross3(a, v), &n);
                    if alpha * nn >= 0 && beta * nn >= 0 {
                        return true;
                    }
                }
            }
            // full triples
            for i in 0..gens.len() {
                for j in (i + 1)..gens.len() {
                    for k in (j + 1)..gens.len() {
                        let (a, b, c) = (&gens[i], &gens[j], &gens[k]);
                        let det = det3(a, b, c);
                        if det == 0 {
                            continue;
                        }
                        let la = det3(v, b, c);
                        let lb = det3(a, v, c);
                        let lc = det3(a, b, v);
                        if la * det >= 0 && lb * det >= 0 && lc * det >= 0 {
                            return true;
                        }
                    }
                }
            }
            false
        }
        _ => unreachable!("cone membership is gated to d <= 3"),
    }
}

// ---------------------------------------------------------------------------
// Group, cone, membership
// ---------------------------------------------------------------------------

/// Hermite normal form basis of the subgroup of `Z^d` generated by `C`.
pub fn sg_group(c: &AffineSemigroup) -> LatticeGroup {
    let basis = hermite_normal_form(c.generators());
    let rank = basis.len();
    LatticeGroup { basis, rank }
}

/// Extreme rays of the rational cone `R_+ C`, for `d <= 3`.
pub fn sg_cone(c: &AffineSemigroup) -> Result<RationalCone> {
    if c.dim() > 3 {
        return Err(Error::UnsupportedDimension {
            dim: c.dim(),
            msg: "cone computation supports d <= 3".into(),
        });
    }
    let mut dirs: Vec<Vec<i64>> = Vec::new();
    for g in c.generators() {
        let p = primitive(g);
        if !dirs.contains(&p) {
            dirs.push(p);
        }
    }
    let mut rays: Vec<Vec<i64>> = Vec::new();
    for (i, dir) in dirs.iter().enumerate() {
        let others: Vec<Vec<i64>> = dirs
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.clone())
            .collect();
        if others.is_empty() || !in_cone_of(dir, &others) {
            rays.push(dir.clone());
        }
    }
    rays.sort();
    let span_dim = hermite_normal_form(c.generators()).len();
    Ok(RationalCone { rays, span_dim })
}

/// Membership of `v` with a multiplicity vector on success. Small
/// instances go through bounded dynamic programming (coefficients are
/// bounded by componentwise quotas); deep vectors go through monomial
/// rewriting against the toric relations.
pub fn sg_member(c: &AffineSemigroup, v: &[i64]) -> Result<Option<Vec<u64>>> {
    if v.len() != c.dim() {
        return Err(Error::precondition(format!(
            "vector {v:?} does not have {} coordinates",
            c.dim()
        )));
    }
    if v.iter().any(|&x| x < 0) {
        return Err(Error::precondition("membership is defined on Z^d_{>=0}"));
    }
    let result = {
        let box_size: u64 = v.iter().map(|&x| x as u64 + 1).product();
        if box_size <= MEMBER_DP_BOX {
            member_dp(c, v)
        } else {
            member_rewrite(c, v)?
        }
    };
    if let Some(mults) = &result {
        debug_assert!(combination_equals(c, mults, v), "multiplicity mismatch");
    }
    Ok(result)
}

fn combination_equals(c: &AffineSemigroup, mults: &[u64], v: &[i64]) -> bool {
    let mut acc = vec![0i64; c.dim()];
    for (m, g) in mults.iter().zip(c.generators()) {
        for (a, x) in acc.iter_mut().zip(g) {
            *a += *m as i64 * x;
        }
    }
    acc == v
}

fn member_dp(c: &AffineSemigroup, v: &[i64]) -> Option<Vec<u64>> {
    let d = c.dim();
    let dims: Vec<usize> = v.iter().map(|&x| x as usize + 1).collect();
    let total: usize = dims.iter().product();
    // predecessor generator index + 1; 0 = unreachable; usize::MAX = origin
    let mut pred: Vec<usize> = vec![0; total];
    let index_of = |point: &[i64]| -> usize {
        let mut idx = 0usize;
        for (coord, size) in point.iter().zip(&dims) {
            idx = idx * size + *coord as usize;
        }
        idx
    };
    pred[0] = usize::MAX;
    let mut point = vec![0i64; d];
    for idx in 1..total {
        // decode idx into the point (row-major over dims)
        let mut rem = idx;
        for k in (0..d).rev() {
            point[k] = (rem % dims[k]) as i64;
            rem /= dims[k];
        }
        for (gi, g) in c.generators().iter().enumerate() {
            if g.iter().zip(&point).all(|(a, b)| a <= b) {
                let prev: Vec<i64> = point.iter().zip(g).map(|(a, b)| a - b).collect();
                if pred[index_of(&prev)] != 0 {
                    pred[idx] = gi + 1;
                    break;
                }
            }
        }
    }
    if pred[total - 1] == 0 {
        return None;
    }
    let mut mults = vec![0u64; c.generators().len()];
    let mut cur: Vec<i64> = v.to_vec();
    while cur.iter().any(|&x| x != 0) {
        let gi = pred[index_of(&cur)] - 1;
        mults[gi] += 1;
        for (a, b) in cur.iter_mut().zip(&c.generators()[gi]) {
            *a -= b;
        }
    }
    Some(mults)
}

/// Rewriting membership: normal form of `x^v` against the toric ideal
/// `(y_i - x^{g_i})` under an elimination order with the x-block
/// first. The normal form of a monomial stays a monomial, and an
/// x-free normal form reads off the multiplicities.
fn member_rewrite(c: &AffineSemigroup, v: &[i64]) -> Result<Option<Vec<u64>>> {
    let d = c.dim();
    let k = c.generators().len();
    let mut vars: Vec<String> = (0..d).map(|i| format!("x{i}")).collect();
    vars.extend((0..k).map(|i| format!("y{i}")));
    let ring = Ring::new(PrimeChar::new(2)?, vars)?;
    let mut relations = Vec::with_capacity(k);
    for (i, g) in c.generators().iter().enumerate() {
        let mut exps = vec![0u32; d + k];
        for (j, &x) in g.iter().enumerate() {
            exps[j] = u32::try_from(x)
                .map_err(|_| Error::ExponentOverflow("generator coordinate too large".into()))?;
        }
        let xg = Polynomial::monomial(ring.clone(), exps, 1)?;
        let y = Polynomial::var(ring.clone(), d + i)?;
        relations.push(y.sub(&xg)?);
    }
    let ideal = Ideal::new(ring.clone(), relations)?;
    let x_block: Vec<usize> = (0..d).collect();
    let order = MonomialOrder::elim(&x_block, d + k)?;
    let mut target = vec![0u32; d + k];
    for (j, &x) in v.iter().enumerate() {
        target[j] = u32::try_from(x)
            .map_err(|_| Error::ExponentOverflow("membership vector too deep".into()))?;
    }
    let xv = Polynomial::monomial(ring, target, 1)?;
    let nf = normal_form(&xv, &ideal, &order, &GbLimits::default())?;
    if !nf.free_of(&x_block) {
        return Ok(None);
    }
    debug_assert_eq!(nf.terms().len(), 1, "monomial rewriting stays monomial");
    let exps = &nf.terms()[0].0;
    Ok(Some((0..k).map(|i| exps[d + i] as u64).collect()))
}

// ---------------------------------------------------------------------------
// Saturation and normality
// ---------------------------------------------------------------------------

/// Hilbert basis of the saturation `group(C) ∩ cone(C) ∩ Z^d`.
#[derive(Debug, Clone, Serialize)]
pub struct Saturation {
    pub hilbert_basis: Vec<Vec<i64>>,
    /// Exact for d <= 2 and for d = 3 cones (provable enumeration box);
    /// `false` only if the run had to fall back to a truncated box.
    pub exact: bool,
}

/// Smallest generator of `C` lying on each extreme ray. Every extreme
/// ray of the cone passes through a generator.
fn ray_generators(c: &AffineSemigroup, cone: &RationalCone) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for ray in &cone.rays {
        let mut best: Option<Vec<i64>> = None;
        for g in c.generators() {
            if is_parallel_same_direction(g, ray) {
                best = Some(match best {
                    Some(b) if dot(&b, &b) <= dot(g, g) => b,
                    _ => g.clone(),
                });
            }
        }
        out.push(best.expect("extreme ray passes through a generator"));
    }
    out
}

pub fn sg_saturation(c: &AffineSemigroup) -> Result<Saturation> {
    if c.dim() > 3 {
        return Err(Error::UnsupportedDimension {
            dim: c.dim(),
            msg: "saturation supports d <= 3".into(),
        });
    }
    let group = sg_group(c);
    let cone = sg_cone(c)?;
    // Enumeration box: the componentwise sum of one generator per
    // extreme ray. Any saturation point with some simplicial
    // coordinate >= 1 splits off that ray generator, so the Hilbert
    // basis lives inside the box.
    let ray_gens = ray_generators(c, &cone);
    let mut bound = vec![0i64; c.dim()];
    for g in &ray_gens {
        for (b, x) in bound.iter_mut().zip(g) {
            *b += x;
        }
    }
    let box_size: u64 = bound.iter().map(|&x| x as u64 + 1).product();
    if box_size > 50_000_000 {
        return Err(Error::ResourceCap(format!(
            "saturation box of {box_size} lattice points"
        )));
    }
    // all nonzero box points in group(C) ∩ cone(C)
    let mut points: Vec<Vec<i64>> = Vec::new();
    let mut cur = vec![0i64; c.dim()];
    loop {
        if cur.iter().any(|&x| x != 0) && group.contains(&cur) && in_cone_of(&cur, &cone.rays) {
            points.push(cur.clone());
        }
        // advance mixed-radix counter
        let mut k = c.dim();
        loop {
            if k == 0 {
                break;
            }
            k -= 1;
            if cur[k] < bound[k] {
                cur[k] += 1;
                for x in cur.iter_mut().skip(k + 1) {
                    *x = 0;
                }
                break;
            }
            if k == 0 {
                cur.clear();
                break;
            }
        }
        if cur.is_empty() {
            break;
        }
    }
    let point_set: HashSet<Vec<i64>> = points.iter().cloned().collect();
    let mut hilbert: Vec<Vec<i64>> = Vec::new();
    'candidate: for u in &points {
        for a in &points {
            if a != u && a.iter().zip(u).all(|(x, y)| x <= y) {
                let diff: Vec<i64> = u.iter().zip(a).map(|(x, y)| x - y).collect();
                if point_set.contains(&diff) {
                    continue 'candidate;
                }
            }
        }
        hilbert.push(u.clone());
    }
    hilbert.sort();
    Ok(Saturation {
        hilbert_basis: hilbert,
        exact: true,
    })
}

/// Normality: `C` equals its saturation. On failure returns a witness
/// in the saturation but outside `C` (lexicographically first), plus
/// the full gap list.
#[derive(Debug, Clone, Serialize)]
pub struct NormalityVerdict {
    pub normal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<i64>>,
    pub gaps: Vec<Vec<i64>>,
}

pub fn sg_is_normal(c: &AffineSemigroup) -> Result<NormalityVerdict> {
    let sat = sg_saturation(c)?;
    let mut gaps = Vec::new();
    for h in &sat.hilbert_basis {
        if sg_member(c, h)?.is_none() {
            gaps.push(h.clone());
        }
    }
    Ok(NormalityVerdict {
        normal: gaps.is_empty(),
        witness: gaps.first().cloned(),
        gaps,
    })
}

// ---------------------------------------------------------------------------
// Purely inseparable certificates and the classifier
// ---------------------------------------------------------------------------

/// Smallest `e <= e_cap` with `p^e * unit_i ∈ C` for every axis `i`.
/// Such an `e` sandwiches `k[x_1^(p^e), ..., x_d^(p^e)] ⊆ k[C] ⊆
/// k[x_1..x_d]` into a purely inseparable tower.
///
/// An axis point of a subcone of the orthant is a face point, so its
/// representations only use generators on that axis: the search
/// reduces to numerical-semigroup membership along each axis.
pub fn sg_pi_sandwich_certificate(
    c: &AffineSemigroup,
    p: PrimeChar,
    e_cap: u32,
) -> Result<Option<u32>> {
    let mut overall: u32 = 0;
    for axis in 0..c.dim() {
        let multiples: Vec<u64> = c
            .generators()
            .iter()
            .filter(|g| g.iter().enumerate().all(|(k, &x)| x == 0 || k == axis))
            .map(|g| g[axis] as u64)
            .collect();
        if multiples.is_empty() {
            return Ok(None);
        }
        let mut found: Option<u32> = None;
        let mut q: u64 = 1;
        for e in 0..=e_cap {
            if numeric_member(q, &multiples) {
                found = Some(e);
                break;
            }
            q = match q.checked_mul(p.get()) {
                Some(v) => v,
                None => break,
            };
        }
        match found {
            Some(e) => overall = overall.max(e),
            None => return Ok(None),
        }
    }
    Ok(Some(overall))
}

/// Membership in the numerical semigroup generated by `gens`
/// (not necessarily gcd 1), by shortest-representative-per-residue.
pub(crate) fn numeric_member(n: u64, gens: &[u64]) -> bool {
    if n == 0 {
        return true;
    }
    let gens: Vec<u64> = gens.iter().copied().filter(|&g| g > 0).collect();
    if gens.is_empty() {
        return false;
    }
    let a = *gens.iter().min().expect("nonempty") as usize;
    // minimal representable value in each residue class mod a
    let mut dist: Vec<Option<u64>> = vec![None; a];
    dist[0] = Some(0);
    // relax until fixpoint (bounded by a rounds)
    for _ in 0..=a {
        let mut changed = false;
        for r in 0..a {
            if let Some(base) = dist[r] {
                for &g in &gens {
                    let nr = (r + g as usize) % a;
                    let val = base + g;
                    if dist[nr].map_or(true, |old| val < old) {
                        dist[nr] = Some(val);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    match dist[(n % a as u64) as usize] {
        Some(min_val) => n >= min_val,
        None => false,
    }
}

/// A finite congruence obstruction: `p^e * target` can never be a
/// member of the face semigroup because the required divisor retains a
/// prime factor different from p.
#[derive(Debug, Clone, Serialize)]
pub struct CongruenceObstruction {
    /// Primitive direction of the face ray.
    pub face_ray: Vec<i64>,
    /// Multiples of the primitive direction realized by generators on
    /// the face.
    pub face_multiples: Vec<u64>,
    /// gcd of the face multiples.
    pub step_gcd: u64,
    /// The obstructed element, as a multiple of the primitive
    /// direction.
    pub target_multiple: u64,
    /// `step_gcd / gcd(step_gcd, target_multiple)`: must be a p-power
    /// for membership at any exponent, but retains `offending_prime`.
    pub reduced_divisor: u64,
    pub offending_prime: u64,
    /// Direct re-verification: `p^e * target_multiple` is not divisible
    /// by `step_gcd` for any `e` up to this bound (modular check).
    pub verified_up_to_e: u32,
}

#[derive(Debug, Clone, Serialize)]
pub enum PiOutcome {
    /// `p^e * h ∈ C`, membership re-verified.
    Pass { e: u32 },
    /// Congruence obstruction: no exponent can work.
    Fail { obstruction: CongruenceObstruction },
    /// Bounded search exhausted without a decision.
    Undetermined { note: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct PiElementVerdict {
    pub element: Vec<i64>,
    pub outcome: PiOutcome,
}

#[derive(Debug, Clone, Serialize)]
pub struct NormalizationPiReport {
    pub per_element: Vec<PiElementVerdict>,
    pub all_pass: bool,
    pub failures: Vec<Vec<i64>>,
    pub undetermined: Vec<Vec<i64>>,
}

/// For each Hilbert-basis element `h` of the saturation, decide whether
/// some `p^e * h` lies in `C`. Face elements reduce to a 1-dimensional
/// congruence test (decisive both ways); relative-interior elements are
/// found by bounded search, which conductor theory guarantees to
/// terminate for honest inputs.
pub fn sg_normalization_pi_test(
    c: &AffineSemigroup,
    p: PrimeChar,
    e_cap: u32,
) -> Result<NormalizationPiReport> {
    if c.dim() > 2 {
        return Err(Error::UnsupportedDimension {
            dim: c.dim(),
            msg: "normalization test is decidable for d <= 2".into(),
        });
    }
    let sat = sg_saturation(c)?;
    let cone = sg_cone(c)?;
    let mut per_element = Vec::new();
    let mut failures = Vec::new();
    let mut undetermined = Vec::new();
    for h in &sat.hilbert_basis {
        let outcome = classify_pi_element(c, &cone, h, p, e_cap)?;
        match &outcome {
            PiOutcome::Fail { .. } => failures.push(h.clone()),
            PiOutcome::Undetermined { .. } => undetermined.push(h.clone()),
            PiOutcome::Pass { .. } => {}
        }
        per_element.push(PiElementVerdict {
            element: h.clone(),
            outcome,
        });
    }
    Ok(NormalizationPiReport {
        all_pass: failures.is_empty() && undetermined.is_empty(),
        failures,
        undetermined,
        per_element,
    })
}

fn classify_pi_element(
    c: &AffineSemigroup,
    cone: &RationalCone,
    h: &[i64],
    p: PrimeChar,
    e_cap: u32,
) -> Result<PiOutcome> {
    // On a proper face (a ray)?
    if let Some(ray) = cone
        .rays
        .iter()
        .find(|r| is_parallel_same_direction(h, r))
        .cloned()
    {
        // Generators landing on a face of the orthant cone can only be
        // combined from generators on that face.
        let face_multiples: Vec<u64> = c
            .generators()
            .iter()
            .filter(|g| is_parallel_same_direction(g, &ray))
            .map(|g| multiple_along(g, &ray))
            .collect();
        let target = multiple_along(h, &ray);
        let step_gcd = face_multiples.iter().fold(0u64, |a, &b| gcd_u64(a, b));
        let reduced = step_gcd / gcd_u64(step_gcd, target);
        if let Some(prime) = non_p_prime_factor(reduced, p.get()) {
            let verify_bound = e_cap.saturating_mul(10);
            for e in 0..=verify_bound {
                // modular: p^e * target mod step_gcd
                let pe = mod_pow(p.get() % step_gcd, e as u64, step_gcd);
                debug_assert!(pe * (target % step_gcd) % step_gcd != 0);
            }
            return Ok(PiOutcome::Fail {
                obstruction: CongruenceObstruction {
                    face_ray: ray,
                    face_multiples,
                    step_gcd,
                    target_multiple: target,
                    reduced_divisor: reduced,
                    offending_prime: prime,
                    verified_up_to_e: e_cap.saturating_mul(10),
                },
            });
        }
        // p-power divisor: search for the witness exponent directly
        let mut q: u64 = 1;
        for e in 0..=e_cap.max(INTERIOR_E_CAP) {
            match q.checked_mul(target) {
                Some(scaled) if numeric_member(scaled, &face_multiples) => {
                    return Ok(PiOutcome::Pass { e });
                }
                Some(_) => {}
                None => break,
            }
            q = match q.checked_mul(p.get()) {
                Some(v) => v,
                None => break,
            };
        }
        return Ok(PiOutcome::Undetermined {
            note: format!("face search exhausted at e <= {}", e_cap.max(INTERIOR_E_CAP)),
        });
    }
    // Relative interior: bounded membership search.
    for e in 0..=INTERIOR_E_CAP {
        let mut scaled = Vec::with_capacity(h.len());
        let mut overflow = false;
        for &x in h {
            let mut q: i64 = x;
            for _ in 0..e {
                match q.checked_mul(p.get() as i64) {
                    Some(v) => q = v,
                    None => {
                        overflow = true;
                        break;
                    }
                }
            }
            scaled.push(q);
        }
        if overflow {
            break;
        }
        match sg_member(c, &scaled) {
            Ok(Some(_)) => return Ok(PiOutcome::Pass { e }),
            Ok(None) => {}
            Err(Error::ResourceCap(_)) | Err(Error::ExponentOverflow(_)) => break,
            Err(e) => return Err(e),
        }
    }
    Ok(PiOutcome::Undetermined {
        note: format!("interior search exhausted at e <= {INTERIOR_E_CAP}"),
    })
}

fn multiple_along(v: &[i64], ray: &[i64]) -> u64 {
    let k = ray.iter().position(|&x| x != 0).expect("nonzero ray");
    (v[k] / ray[k]) as u64
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn mod_pow(base: u64, exp: u64, modulus: u64) -> u64 {
    if modulus <= 1 {
        return 0;
    }
    let mut acc: u128 = 1;
    let mut base = base as u128 % modulus as u128;
    let mut exp = exp;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus as u128;
        }
        base = base * base % modulus as u128;
        exp >>= 1;
    }
    acc as u64
}

/// Smallest prime factor of `n` different from `p`, if any.
fn non_p_prime_factor(n: u64, p: u64) -> Option<u64> {
    let mut n = n;
    if n <= 1 {
        return None;
    }
    while n % p == 0 {
        n /= p;
    }
    if n == 1 {
        return None;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return Some(d);
        }
        d += 1;
    }
    Some(n)
}

// ---------------------------------------------------------------------------
// F-coherence verdict
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FCoherenceStatus {
    FCoherent,
    NotFCoherent,
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct SandwichCertificate {
    pub e: u32,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind")]
pub enum FCoherenceWitness {
    /// Element of the normalization with no p-power multiple in `C`
    /// (decimal strings: exponent vectors may be deep).
    Semigroup {
        vector: Vec<String>,
        obstruction: CongruenceObstruction,
    },
    /// Caller-supplied finite proof that no exponent can work for a
    /// curve algebra, checked against the bounded tests.
    Curve {
        argument: String,
        verified_up_to_e: u32,
    },
}

impl FCoherenceWitness {
    pub fn obstruction(&self) -> Option<&CongruenceObstruction> {
        match self {
            FCoherenceWitness::Semigroup { obstruction, .. } => Some(obstruction),
            FCoherenceWitness::Curve { .. } => None,
        }
    }
}

/// Classification outcome. `FCoherent` always carries a machine-checked
/// certificate; `NotFCoherent` always carries a finite congruence
/// obstruction; everything else is `Unknown` with the evidence spelled
/// out.
#[derive(Debug, Clone, Serialize)]
pub struct FCoherenceVerdict {
    pub status: FCoherenceStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<SandwichCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<FCoherenceWitness>,
    pub evidence: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub transcript: Vec<TranscriptEntry>,
}

impl FCoherenceVerdict {
    pub fn f_coherent(e: u32, evidence: String) -> Self {
        FCoherenceVerdict {
            status: FCoherenceStatus::FCoherent,
            certificate: Some(SandwichCertificate { e }),
            witness: None,
            evidence,
            transcript: Vec::new(),
        }
    }

    pub fn not_f_coherent(
        vector: &[i64],
        obstruction: CongruenceObstruction,
        evidence: String,
    ) -> Self {
        FCoherenceVerdict {
            status: FCoherenceStatus::NotFCoherent,
            certificate: None,
            witness: Some(FCoherenceWitness::Semigroup {
                vector: vector.iter().map(|x| x.to_string()).collect(),
                obstruction,
            }),
            evidence,
            transcript: Vec::new(),
        }
    }

    pub fn not_f_coherent_curve(argument: String, verified_up_to_e: u32, evidence: String) -> Self {
        FCoherenceVerdict {
            status: FCoherenceStatus::NotFCoherent,
            certificate: None,
            witness: Some(FCoherenceWitness::Curve {
                argument,
                verified_up_to_e,
            }),
            evidence,
            transcript: Vec::new(),
        }
    }

    pub fn unknown(evidence: String) -> Self {
        FCoherenceVerdict {
            status: FCoherenceStatus::Unknown,
            certificate: None,
            witness: None,
            evidence,
            transcript: Vec::new(),
        }
    }

    pub fn with_transcript(mut self, transcript: Vec<TranscriptEntry>) -> Self {
        self.transcript = transcript;
        self
    }
}

/// Classify `k[C]` over `F_p`.
///
/// * A sandwich certificate makes the ring purely inseparably pinched
///   between a polynomial ring and a Frobenius image: `FCoherent`.
/// * A failed normalization test violates the necessary condition
///   (purely inseparable normalization): `NotFCoherent`, with the
///   congruence obstruction (for d = 1 this necessary condition is also
///   sufficient).
/// * Otherwise `Unknown`, carrying both pieces of evidence: whether
///   normality is equivalent to F-coherence for semigroup rings is an
///   open question, and the classifier must not guess.
pub fn sg_classify_fcoherent(
    c: &AffineSemigroup,
    p: PrimeChar,
    e_cap: u32,
) -> Result<FCoherenceVerdict> {
    if c.dim() > 3 {
        return Err(Error::UnsupportedDimension {
            dim: c.dim(),
            msg: "classification supports d <= 3".into(),
        });
    }
    if let Some(e) = sg_pi_sandwich_certificate(c, p, e_cap)? {
        // machine-check the certificate through independent membership
        for axis in 0..c.dim() {
            let mut v = vec![0i64; c.dim()];
            v[axis] = (p.get() as i64).pow(e);
            if sg_member(c, &v)?.is_none() {
                return Err(Error::precondition(
                    "internal: sandwich certificate failed re-verification",
                ));
            }
        }
        return Ok(FCoherenceVerdict::f_coherent(
            e,
            format!(
                "p^{e}-th powers of all coordinates lie in C: purely inseparable sandwich \
                 k[x^(p^{e})] in k[C] in k[x]"
            ),
        ));
    }
    if c.dim() <= 2 {
        let report = sg_normalization_pi_test(c, p, e_cap)?;
        if let Some(first_fail) = report.failures.first() {
            let obstruction = report
                .per_element
                .iter()
                .find_map(|v| match (&v.element, &v.outcome) {
                    (el, PiOutcome::Fail { obstruction }) if el == first_fail => {
                        Some(obstruction.clone())
                    }
                    _ => None,
                })
                .expect("failure carries its obstruction");
            return Ok(FCoherenceVerdict::not_f_coherent(
                first_fail,
                obstruction,
                "normalization is not purely inseparable: a Hilbert-basis element of the \
                 saturation admits no p-power multiple in C"
                    .into(),
            ));
        }
        if report.undetermined.is_empty() {
            return Ok(FCoherenceVerdict::unknown(format!(
                "no purely-inseparable sandwich with e <= {e_cap}, yet the normalization \
                 purely-inseparable test passes: neither certificate applies"
            )));
        }
        return Ok(FCoherenceVerdict::unknown(format!(
            "no sandwich certificate with e <= {e_cap}; normalization test undetermined on {:?}",
            report.undetermined
        )));
    }
    Ok(FCoherenceVerdict::unknown(format!(
        "no sandwich certificate with e <= {e_cap}; no decisive negative test for d = 3"
    )))
}

// ---------------------------------------------------------------------------
// Faces and retracts
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FaceKind {
    Origin,
    Ray,
    Facet,
    Full,
}

/// A face of the cone, described by the extreme rays spanning it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    pub kind: FaceKind,
    pub rays: Vec<Vec<i64>>,
}

impl Face {
    /// Is a cone point on this face?
    pub fn contains(&self, v: &[i64]) -> bool {
        match self.kind {
            FaceKind::Origin => v.iter().all(|&x| x == 0),
            FaceKind::Full => true,
            _ => in_cone_of(v, &self.rays),
        }
    }
}

/// Faces of `cone(C)`: origin, extreme rays, 2-dimensional facets when
/// d = 3, and the full cone.
pub fn sg_faces(c: &AffineSemigroup) -> Result<Vec<Face>> {
    let cone = sg_cone(c)?;
    let mut faces = vec![Face {
        kind: FaceKind::Origin,
        rays: Vec::new(),
    }];
    for r in &cone.rays {
        faces.push(Face {
            kind: FaceKind::Ray,
            rays: vec![r.clone()],
        });
    }
    if c.dim() == 3 && cone.rays.len() > 2 && cone.span_dim == 3 {
        // facets: pairs of rays spanning a supporting plane
        for i in 0..cone.rays.len() {
            for j in (i + 1)..cone.rays.len() {
                let n = cross3(&cone.rays[i], &cone.rays[j]);
                if n.iter().all(|&x| x == 0) {
                    continue;
                }
                let signs: Vec<i128> = c.generators().iter().map(|g| dot(&n, g)).collect();
                let all_nonneg = signs.iter().all(|&s| s >= 0);
                let all_nonpos = signs.iter().all(|&s| s <= 0);
                if all_nonneg || all_nonpos {
                    let face_rays: Vec<Vec<i64>> = cone
                        .rays
                        .iter()
                        .filter(|r| dot(&n, r) == 0)
                        .cloned()
                        .collect();
                    let face = Face {
                        kind: FaceKind::Facet,
                        rays: face_rays,
                    };
                    if !faces.contains(&face) {
                        faces.push(face);
                    }
                }
            }
        }
    }
    // full cone last; for a one-ray cone this coincides with the ray,
    // but keeps its own entry as the improper face
    faces.push(Face {
        kind: FaceKind::Full,
        rays: cone.rays.clone(),
    });
    Ok(faces)
}

/// The face retraction `k[C] -> k[C ∩ F]`: a monomial stays if its
/// exponent lies on `F`, and dies otherwise. The self-check samples
/// pairs of semigroup elements and verifies multiplicativity,
/// idempotence, and identity on `C ∩ F`.
#[derive(Debug, Clone, Serialize)]
pub struct RetractionReport {
    pub face: Face,
    pub kept_generators: Vec<Vec<i64>>,
    pub killed_generators: Vec<Vec<i64>>,
    pub samples: usize,
    pub multiplicative: bool,
    pub idempotent: bool,
    pub identity_on_face: bool,
}

pub fn sg_retract(c: &AffineSemigroup, face: &Face, samples: usize) -> Result<RetractionReport> {
    // validate: the face must consist of extreme rays of this cone
    let cone = sg_cone(c)?;
    for r in &face.rays {
        if !cone.rays.contains(r) {
            return Err(Error::precondition(format!(
                "{r:?} is not an extreme ray of the cone"
            )));
        }
    }
    let mut kept = Vec::new();
    let mut killed = Vec::new();
    for g in c.generators() {
        if face.contains(g) {
            kept.push(g.clone());
        } else {
            killed.push(g.clone());
        }
    }
    // deterministic sampling of semigroup elements
    let mut rng = Lcg(0x5eed_5eed_5eed_5eed);
    let sample_element = |rng: &mut Lcg| -> Vec<i64> {
        let mut acc = vec![0i64; c.dim()];
        for g in c.generators() {
            let k = (rng.next() % 3) as i64;
            for (a, x) in acc.iter_mut().zip(g) {
                *a += k * x;
            }
        }
        acc
    };
    let retract = |v: &[i64]| -> Option<Vec<i64>> {
        if face.contains(v) {
            Some(v.to_vec())
        } else {
            None
        }
    };
    let mut multiplicative = true;
    let mut idempotent = true;
    let mut identity_on_face = true;
    for _ in 0..samples {
        let a = sample_element(&mut rng);
        let b = sample_element(&mut rng);
        let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        // r(a + b) = r(a) + r(b) as monomial maps: membership of the sum
        // on the face must match both factors being on the face
        let lhs = retract(&sum).is_some();
        let rhs = retract(&a).is_some() && retract(&b).is_some();
        if lhs != rhs {
            multiplicative = false;
        }
        // r(r(a)) = r(a)
        if let Some(ra) = retract(&a) {
            if retract(&ra) != Some(ra.clone()) {
                idempotent = false;
            }
        }
        // identity on C ∩ F
        if face.contains(&a) && retract(&a) != Some(a.clone()) {
            identity_on_face = false;
        }
    }
    Ok(RetractionReport {
        face: face.clone(),
        kept_generators: kept,
        killed_generators: killed,
        samples,
        multiplicative,
        idempotent,
        identity_on_face,
    })
}

struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }
}
