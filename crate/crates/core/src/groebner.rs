//! Buchberger engine over `F_p`.
//!
//! Classical Buchberger with the coprime and chain criteria, normal
//! (lowest-lcm-degree-first) pair selection, and hard resource caps.
//! Exceeding a cap is an error, never a silently truncated basis. All
//! public results are reduced Groebner bases, which are unique for a
//! given order, so output is independent of generator order.

use crate::error::{Error, Result};
use crate::field::PrimeChar;
use crate::poly::{
    exp_add, exp_coprime, exp_divides, exp_lcm, exp_sub, exp_total_degree, ExponentVector,
    MonomialOrder, Polynomial, Ring,
};
use std::collections::{BTreeSet, HashSet};
use std::sync::{Arc, Mutex};

/// Resource caps for a single Buchberger run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GbLimits {
    /// Maximum number of S-pairs processed.
    pub max_pairs: usize,
    /// Maximum total degree of any S-pair lcm or basis element.
    pub max_degree: u64,
}

impl Default for GbLimits {
    fn default() -> Self {
        GbLimits {
            max_pairs: 10_000,
            max_degree: 60,
        }
    }
}

impl GbLimits {
    pub fn new(max_pairs: usize, max_degree: u64) -> Self {
        GbLimits {
            max_pairs,
            max_degree,
        }
    }
}

/// A reduced Groebner basis together with the order it was computed in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub order: MonomialOrder,
    pub polys: Vec<Polynomial>,
}

/// An ideal in a polynomial ring: a generator list plus a cache of
/// reduced Groebner bases keyed by monomial order.
#[derive(Debug, Clone)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    cache: Arc<Mutex<Vec<Arc<GroebnerBasis>>>>,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.gens == other.gens
    }
}
impl Eq for Ideal {}

impl Ideal {
    pub fn new(ring: Arc<Ring>, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if **g.ring() != *ring {
                return Err(Error::AmbientMismatch(format!(
                    "generator ring {} differs from ideal ring {}",
                    g.ring(),
                    ring
                )));
            }
        }
        Ok(Ideal {
            ring,
            gens,
            cache: Arc::new(Mutex::new(Vec::new())),
        })
    }

    pub fn zero(ring: Arc<Ring>) -> Self {
        Ideal {
            ring,
            gens: Vec::new(),
            cache: Arc::new(Mutex::new(Vec::new())),
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.iter().all(|g| g.is_zero())
    }

    /// The reduced Groebner basis under `order`, cached per order.
    pub fn groebner_basis(
        &self,
        order: &MonomialOrder,
        limits: &GbLimits,
    ) -> Result<Arc<GroebnerBasis>> {
        if order.nvars() != self.ring.nvars() {
            return Err(Error::precondition(
                "monomial order arity does not match the ring",
            ));
        }
        {
            let cache = self.cache.lock().expect("gb cache poisoned");
            if let Some(hit) = cache.iter().find(|gb| gb.order == *order) {
                return Ok(hit.clone());
            }
        }
        let polys = buchberger(&self.ring, &self.gens, order, limits)?;
        let gb = Arc::new(GroebnerBasis {
            order: order.clone(),
            polys,
        });
        let mut cache = self.cache.lock().expect("gb cache poisoned");
        if let Some(hit) = cache.iter().find(|g| g.order == *order) {
            return Ok(hit.clone());
        }
        cache.push(gb.clone());
        Ok(gb)
    }

    /// Membership of every generator of `other` in `self`.
    pub fn contains_ideal(&self, other: &Ideal, limits: &GbLimits) -> Result<bool> {
        for g in other.generators() {
            if !ideal_member(g, self, limits)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Ideal-theoretic equality via mutual containment.
    pub fn equal_as_ideal(&self, other: &Ideal, limits: &GbLimits) -> Result<bool> {
        Ok(self.contains_ideal(other, limits)? && other.contains_ideal(self, limits)?)
    }
}

/// A quotient `R = F_p[x_1..x_n] / J`. Ideals of `R` are represented by
/// preimages: every kernel operation works with `I + J` in the ambient
/// polynomial ring. The `reduced` and `domain` flags are user-asserted
/// metadata, recorded in reports but never verified.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientRing {
    ambient: Arc<Ring>,
    modulus: Ideal,
    pub reduced: bool,
    pub domain: bool,
}

impl QuotientRing {
    pub fn new(ambient: Arc<Ring>, modulus: Ideal) -> Result<Self> {
        if *modulus.ring() != ambient {
            return Err(Error::AmbientMismatch(
                "modulus lives in a different ring".into(),
            ));
        }
        Ok(QuotientRing {
            ambient,
            modulus,
            reduced: true,
            domain: false,
        })
    }

    /// The polynomial ring itself (zero modulus).
    pub fn polynomial(ambient: Arc<Ring>) -> Self {
        QuotientRing {
            ambient: ambient.clone(),
            modulus: Ideal::zero(ambient),
            reduced: true,
            domain: true,
        }
    }

    pub fn with_flags(mut self, reduced: bool, domain: bool) -> Self {
        self.reduced = reduced;
        self.domain = domain;
        self
    }

    pub fn ambient(&self) -> &Arc<Ring> {
        &self.ambient
    }

    pub fn modulus(&self) -> &Ideal {
        &self.modulus
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.modulus.is_zero_ideal()
    }

    /// Preimage `I + J` in the ambient ring.
    pub fn lift_ideal(&self, ideal: &Ideal) -> Result<Ideal> {
        let mut gens = ideal.generators().to_vec();
        gens.extend(self.modulus.generators().iter().cloned());
        Ideal::new(self.ambient.clone(), gens)
    }
}

// ---------------------------------------------------------------------------
// Engine internals: term lists sorted descending under the active order
// ---------------------------------------------------------------------------

type Term = (ExponentVector, u64);

fn to_engine(f: &Polynomial, order: &MonomialOrder) -> Vec<Term> {
    let mut terms: Vec<Term> = f.terms().to_vec();
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    terms
}

fn to_polynomial(ring: &Arc<Ring>, terms: Vec<Term>) -> Polynomial {
    Polynomial::from_terms(ring.clone(), terms).expect("engine terms are in range")
}

/// `a - c * x^shift * b`, both inputs sorted descending under `order`.
fn sub_scaled(
    a: &[Term],
    b: &[Term],
    shift: &[u32],
    c: u64,
    p: PrimeChar,
    order: &MonomialOrder,
) -> Result<Vec<Term>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let mut cur: Option<Term> = None;
    loop {
        if cur.is_none() && j < b.len() {
            let e = exp_add(&b[j].0, shift)?;
            cur = Some((e, p.mul(c, b[j].1)));
            j += 1;
        }
        match cur {
            None => {
                out.extend_from_slice(&a[i..]);
                return Ok(out);
            }
            Some((ref be, bc)) => {
                if i >= a.len() {
                    out.push((cur.take().expect("cur is some").0, p.neg(bc)));
                    continue;
                }
                match order.cmp(&a[i].0, be) {
                    std::cmp::Ordering::Greater => {
                        out.push(a[i].clone());
                        i += 1;
                    }
                    std::cmp::Ordering::Less => {
                        out.push((cur.take().expect("cur is some").0, p.neg(bc)));
                    }
                    std::cmp::Ordering::Equal => {
                        let v = p.sub(a[i].1, bc);
                        if v != 0 {
                            out.push((a[i].0.clone(), v));
                        }
                        i += 1;
                        cur = None;
                    }
                }
            }
        }
    }
}

/// Full normal form of `f` against `basis` (every term reduced).
fn reduce_full(
    f: Vec<Term>,
    basis: &[Vec<Term>],
    order: &MonomialOrder,
    p: PrimeChar,
) -> Result<Vec<Term>> {
    let mut rest = f;
    let mut out: Vec<Term> = Vec::new();
    'outer: while !rest.is_empty() {
        let (le, lc) = (rest[0].0.clone(), rest[0].1);
        for g in basis {
            if g.is_empty() {
                continue;
            }
            if exp_divides(&g[0].0, &le) {
                let shift = exp_sub(&le, &g[0].0);
                let c = p.mul(lc, p.inv(g[0].1));
                rest = sub_scaled(&rest, g, &shift, c, p, order)?;
                continue 'outer;
            }
        }
        out.push(rest.remove(0));
    }
    Ok(out)
}

/// S-polynomial of `f` and `g` (result not reduced).
fn s_polynomial(
    f: &[Term],
    g: &[Term],
    order: &MonomialOrder,
    p: PrimeChar,
) -> Result<Vec<Term>> {
    let lcm = exp_lcm(&f[0].0, &g[0].0);
    let fs = exp_sub(&lcm, &f[0].0);
    // (1/lc(f)) x^(lcm-lt f) f  -  (1/lc(g)) x^(lcm-lt g) g
    let scaled_f: Vec<Term> = {
        let c = p.inv(f[0].1);
        f.iter()
            .map(|(e, v)| Ok((exp_add(e, &fs)?, p.mul(*v, c))))
            .collect::<Result<_>>()?
    };
    let gs = exp_sub(&lcm, &g[0].0);
    sub_scaled(&scaled_f, g, &gs, p.inv(g[0].1), p, order)
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct PairKey {
    degree: u64,
    lcm: ExponentVector,
    i: usize,
    j: usize,
}

fn pair_key(basis: &[Vec<Term>], i: usize, j: usize) -> PairKey {
    let lcm = exp_lcm(&basis[i][0].0, &basis[j][0].0);
    PairKey {
        degree: exp_total_degree(&lcm),
        lcm,
        i,
        j,
    }
}

fn buchberger(
    ring: &Arc<Ring>,
    gens: &[Polynomial],
    order: &MonomialOrder,
    limits: &GbLimits,
) -> Result<Vec<Polynomial>> {
    let p = ring.char_p();
    let mut basis: Vec<Vec<Term>> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            if g.total_degree() > limits.max_degree {
                return Err(Error::ResourceCap(format!(
                    "generator degree {} exceeds cap {}",
                    g.total_degree(),
                    limits.max_degree
                )));
            }
            basis.push(to_engine(g, order));
        }
    }
    if basis.is_empty() {
        return Ok(Vec::new());
    }

    let mut pairs: BTreeSet<PairKey> = BTreeSet::new();
    let mut done: HashSet<(usize, usize)> = HashSet::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.insert(pair_key(&basis, i, j));
        }
    }

    let mut processed = 0usize;
    while let Some(pair) = pairs.pop_first() {
        let PairKey { degree, lcm, i, j } = pair;
        done.insert((i, j));

        // Coprime-leading-term criterion.
        if exp_coprime(&basis[i][0].0, &basis[j][0].0) {
            continue;
        }
        // Chain criterion: some k with lt(k) | lcm(i,j) and both
        // (i,k), (j,k) already considered.
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && exp_divides(&basis[k][0].0, &lcm)
                && done.contains(&key(i, k))
                && done.contains(&key(j, k))
        });
        if chained {
            continue;
        }

        // Caps gate pairs that actually get reduced.
        if degree > limits.max_degree {
            return Err(Error::ResourceCap(format!(
                "S-pair lcm degree {degree} exceeds cap {} ({} pairs processed)",
                limits.max_degree, processed
            )));
        }
        processed += 1;
        if processed > limits.max_pairs {
            return Err(Error::ResourceCap(format!(
                "S-pair count exceeds cap {}",
                limits.max_pairs
            )));
        }

        let s = s_polynomial(&basis[i], &basis[j], order, p)?;
        let nf = reduce_full(s, &basis, order, p)?;
        if nf.is_empty() {
            continue;
        }
        let deg = nf.iter().map(|(e, _)| exp_total_degree(e)).max().unwrap_or(0);
        if deg > limits.max_degree {
            return Err(Error::ResourceCap(format!(
                "basis element degree {deg} exceeds cap {}",
                limits.max_degree
            )));
        }
        let new_index = basis.len();
        basis.push(nf);
        for k in 0..new_index {
            pairs.insert(pair_key(&basis, k, new_index));
        }
    }

    Ok(reduce_basis(ring, basis, order, p)?)
}

fn key(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Minimalize and inter-reduce into the unique reduced basis, monic,
/// sorted ascending by leading term.
fn reduce_basis(
    ring: &Arc<Ring>,
    basis: Vec<Vec<Term>>,
    order: &MonomialOrder,
    p: PrimeChar,
) -> Result<Vec<Polynomial>> {
    // Minimal: drop any element whose leading term is divisible by
    // another's.
    let mut keep: Vec<Vec<Term>> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    for g in sorted.into_iter() {
        if !keep.iter().any(|h| exp_divides(&h[0].0, &g[0].0)) {
            keep.push(g);
        }
    }
    // Inter-reduce tails until stable.
    loop {
        let mut changed = false;
        for idx in 0..keep.len() {
            let g = keep[idx].clone();
            let others: Vec<Vec<Term>> = keep
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != idx)
                .map(|(_, h)| h.clone())
                .collect();
            let nf = reduce_full(g, &others, order, p)?;
            debug_assert!(!nf.is_empty(), "minimal basis element reduced to zero");
            if nf != keep[idx] {
                keep[idx] = nf;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    // Monic, deterministic order.
    for g in &mut keep {
        let c = p.inv(g[0].1);
        if c != 1 {
            for t in g.iter_mut() {
                t.1 = p.mul(t.1, c);
            }
        }
    }
    keep.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    Ok(keep
        .into_iter()
        .map(|terms| to_polynomial(ring, terms))
        .collect())
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

/// Unique remainder of `f` modulo the reduced basis of `I` under `order`.
pub fn normal_form(
    f: &Polynomial,
    ideal: &Ideal,
    order: &MonomialOrder,
    limits: &GbLimits,
) -> Result<Polynomial> {
    if **f.ring() != **ideal.ring() {
        return Err(Error::AmbientMismatch(
            "polynomial and ideal rings differ".into(),
        ));
    }
    let gb = ideal.groebner_basis(order, limits)?;
    let engine_basis: Vec<Vec<Term>> = gb.polys.iter().map(|g| to_engine(g, order)).collect();
    let nf = reduce_full(to_engine(f, order), &engine_basis, order, ideal.ring().char_p())?;
    Ok(to_polynomial(ideal.ring(), nf))
}

/// `f ∈ I`, decided through the normal form.
pub fn ideal_member(f: &Polynomial, ideal: &Ideal, limits: &GbLimits) -> Result<bool> {
    let order = MonomialOrder::grevlex(ideal.ring().nvars());
    Ok(normal_form(f, ideal, &order, limits)?.is_zero())
}

/// Exact division `g / f`; `None` when `f` does not divide `g`.
pub fn divide_exact(g: &Polynomial, f: &Polynomial) -> Result<Option<Polynomial>> {
    if f.is_zero() {
        return Err(Error::precondition("division by the zero polynomial"));
    }
    let ring = g.ring().clone();
    let order = MonomialOrder::grevlex(ring.nvars());
    let p = ring.char_p();
    let fv = to_engine(f, &order);
    let mut rest = to_engine(g, &order);
    let mut quotient: Vec<Term> = Vec::new();
    while !rest.is_empty() {
        if !exp_divides(&fv[0].0, &rest[0].0) {
            return Ok(None);
        }
        let shift = exp_sub(&rest[0].0, &fv[0].0);
        let c = p.mul(rest[0].1, p.inv(fv[0].1));
        quotient.push((shift.clone(), c));
        rest = sub_scaled(&rest, &fv, &shift, c, p, &order)?;
    }
    Ok(Some(to_polynomial(&ring, quotient)))
}

/// `I ∩ J` by the one-tag-variable elimination construction.
pub fn ideal_intersect(lhs: &Ideal, rhs: &Ideal, limits: &GbLimits) -> Result<Ideal> {
    if lhs.ring() != rhs.ring() {
        return Err(Error::AmbientMismatch(
            "intersection needs a common ambient ring".into(),
        ));
    }
    let ring = lhs.ring().clone();
    if lhs.is_zero_ideal() || rhs.is_zero_ideal() {
        return Ideal::new(ring, Vec::new());
    }
    let tag = fresh_name(&ring, "w");
    let ext = ring.prepend_vars(&[tag])?;
    let var_map: Vec<usize> = (1..=ring.nvars()).collect();
    let w = Polynomial::var(ext.clone(), 0)?;
    let one_minus_w = Polynomial::one(ext.clone()).sub(&w)?;
    let mut gens = Vec::new();
    for g in lhs.generators() {
        gens.push(g.lift(&ext, &var_map)?.mul(&w)?);
    }
    for g in rhs.generators() {
        gens.push(g.lift(&ext, &var_map)?.mul(&one_minus_w)?);
    }
    let extended = Ideal::new(ext, gens)?;
    let order = MonomialOrder::elim(&[0], ring.nvars() + 1)?;
    let gb = extended.groebner_basis(&order, limits)?;
    let keep: Vec<usize> = (1..=ring.nvars()).collect();
    let mut out = Vec::new();
    for g in &gb.polys {
        if g.free_of(&[0]) {
            out.push(g.project(&ring, &keep)?);
        }
    }
    Ideal::new(ring, out)
}

/// The colon ideal `(I : f) = { g : g f ∈ I }`, computed classically
/// through `I ∩ (f)` divided by `f`.
pub fn ideal_colon(ideal: &Ideal, f: &Polynomial, limits: &GbLimits) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::precondition("colon by zero"));
    }
    let ring = ideal.ring().clone();
    if ideal.is_zero_ideal() {
        // In a polynomial ring (a domain), (0 : f) = 0 for f != 0.
        return Ideal::new(ring, Vec::new());
    }
    let principal = Ideal::new(ring.clone(), vec![f.clone()])?;
    let inter = ideal_intersect(ideal, &principal, limits)?;
    let mut out = Vec::new();
    for g in inter.generators() {
        match divide_exact(g, f)? {
            Some(q) => out.push(q),
            None => {
                // Every generator of I ∩ (f) is a multiple of f.
                return Err(Error::precondition(
                    "internal: intersection generator not divisible in colon",
                ));
            }
        }
    }
    Ideal::new(ring, out)
}

/// `(I : J)` for an ideal `J`, as the intersection of the element
/// colons.
pub fn ideal_colon_ideal(ideal: &Ideal, by: &Ideal, limits: &GbLimits) -> Result<Ideal> {
    let nonzero: Vec<&Polynomial> = by.generators().iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        // (I : 0) is the unit ideal.
        return Ideal::new(
            ideal.ring().clone(),
            vec![Polynomial::one(ideal.ring().clone())],
        );
    }
    let mut acc: Option<Ideal> = None;
    for f in nonzero {
        let col = ideal_colon(ideal, f, limits)?;
        acc = Some(match acc {
            None => col,
            Some(prev) => ideal_intersect(&prev, &col, limits)?,
        });
    }
    Ok(acc.expect("at least one colon computed"))
}

/// `I ∩ F_p[remaining variables]`: drop the listed variables through a
/// block elimination order. The result lives in the restricted ring
/// (the original ring when `drop` is empty).
pub fn eliminate(ideal: &Ideal, drop: &[usize], limits: &GbLimits) -> Result<Ideal> {
    let ring = ideal.ring().clone();
    let n = ring.nvars();
    for &i in drop {
        if i >= n {
            return Err(Error::precondition(format!("no variable #{i} to drop")));
        }
    }
    if drop.is_empty() {
        return Ideal::new(ring, ideal.generators().to_vec());
    }
    if drop.len() == n {
        return Err(Error::precondition(
            "cannot eliminate every ambient variable",
        ));
    }
    let order = MonomialOrder::elim(drop, n)?;
    let gb = ideal.groebner_basis(&order, limits)?;
    let keep: Vec<usize> = (0..n).filter(|i| !drop.contains(i)).collect();
    let target = ring.restrict(&keep)?;
    let mut out = Vec::new();
    for g in &gb.polys {
        if g.free_of(drop) {
            out.push(g.project(&target, &keep)?);
        }
    }
    Ideal::new(target, out)
}

/// Membership of `f ∈ k[g_1, ..., g_m]` inside a univariate ambient
/// `k[u]`, by tag-variable elimination. On success the representation
/// is a polynomial in the tag ring, one variable per generator, with
/// `representation(g_1, ..., g_m) = f`.
#[derive(Debug, Clone)]
pub struct SubalgebraMembership {
    pub member: bool,
    pub representation: Option<Polynomial>,
}

pub fn subalgebra_member(
    f: &Polynomial,
    gens: &[Polynomial],
    limits: &GbLimits,
) -> Result<SubalgebraMembership> {
    let ring = f.ring().clone();
    if ring.nvars() != 1 {
        return Err(Error::precondition(
            "subalgebra membership is defined for a single ambient variable",
        ));
    }
    if gens.is_empty() {
        return Err(Error::precondition("no subalgebra generators"));
    }
    for g in gens {
        if g.ring() != &ring {
            return Err(Error::AmbientMismatch(
                "subalgebra generators must share the ambient".into(),
            ));
        }
        if g.is_constant() {
            return Err(Error::precondition(
                "subalgebra generators must be nonconstant",
            ));
        }
    }
    // Ring k[u, y_1..y_m] with u in the elimination block (u greatest).
    let mut tag_names = Vec::with_capacity(gens.len());
    for i in 1..=gens.len() {
        tag_names.push(fresh_name(&ring, &format!("y{i}")));
    }
    let tag_ring_full = {
        let mut vars = vec![ring.vars()[0].clone()];
        vars.extend(tag_names.iter().cloned());
        Ring::new(ring.char_p(), vars)?
    };
    let mut relations = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let y = Polynomial::var(tag_ring_full.clone(), i + 1)?;
        let lifted = g.lift(&tag_ring_full, &[0])?;
        relations.push(y.sub(&lifted)?);
    }
    let ideal = Ideal::new(tag_ring_full.clone(), relations)?;
    let order = MonomialOrder::elim(&[0], tag_ring_full.nvars())?;
    let lifted_f = f.lift(&tag_ring_full, &[0])?;
    let nf = normal_form(&lifted_f, &ideal, &order, limits)?;
    if nf.free_of(&[0]) {
        let keep: Vec<usize> = (1..tag_ring_full.nvars()).collect();
        let target = tag_ring_full.restrict(&keep)?;
        Ok(SubalgebraMembership {
            member: true,
            representation: Some(nf.project(&target, &keep)?),
        })
    } else {
        Ok(SubalgebraMembership {
            member: false,
            representation: None,
        })
    }
}

/// A variable name not declared in `ring`: `base`, then `base_`, ...
fn fresh_name(ring: &Ring, base: &str) -> String {
    let mut name = base.to_string();
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

/// Check the Buchberger criterion directly: every S-polynomial of the
/// basis reduces to zero. Used by tests and verification reports.
pub fn is_groebner_basis(
    polys: &[Polynomial],
    order: &MonomialOrder,
    limits: &GbLimits,
) -> Result<bool> {
    let nonzero: Vec<&Polynomial> = polys.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(true);
    }
    let p = nonzero[0].ring().char_p();
    let engine: Vec<Vec<Term>> = nonzero.iter().map(|g| to_engine(g, order)).collect();
    let mut count = 0usize;
    for i in 0..engine.len() {
        for j in (i + 1)..engine.len() {
            count += 1;
            if count > limits.max_pairs {
                return Err(Error::ResourceCap("verification pair cap".into()));
            }
            let s = s_polynomial(&engine[i], &engine[j], order, p)?;
            if !reduce_full(s, &engine, order, p)?.is_empty() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn ring(p: u64, vars: &[&str]) -> Arc<Ring> {
        Ring::make(p, vars).unwrap()
    }

    fn ideal(r: &Arc<Ring>, gens: &[&str]) -> Ideal {
        let polys = gens
            .iter()
            .map(|s| parse_polynomial(s, r).unwrap())
            .collect();
        Ideal::new(r.clone(), polys).unwrap()
    }

    fn lim() -> GbLimits {
        GbLimits::default()
    }

    fn gb_strings(i: &Ideal, order: &MonomialOrder) -> Vec<String> {
        i.groebner_basis(order, &lim())
            .unwrap()
            .polys
            .iter()
            .map(|g| g.to_string())
            .collect()
    }

    #[test]
    fn single_generator_and_monomial_ideals_are_their_own_basis() {
        let r = ring(2, &["x", "y"]);
        let grev = MonomialOrder::grevlex(2);
        assert_eq!(gb_strings(&ideal(&r, &["x+y"]), &grev), vec!["x+y"]);
        let m = ideal(&r, &["x^2", "x*y"]);
        let mut got = gb_strings(&m, &grev);
        got.sort();
        assert_eq!(got, vec!["x*y", "x^2"]);
    }

    #[test]
    fn hand_buchberger_example_lex() {
        // (x^2 - y, x^3) over F_5, lex x>y: reduced basis {x^2-y, xy, y^2}
        let r = ring(5, &["x", "y"]);
        let i = ideal(&r, &["x^2-y", "x^3"]);
        let lex = MonomialOrder::lex(2);
        let mut got = gb_strings(&i, &lex);
        got.sort();
        assert_eq!(got, vec!["x*y", "x^2+4*y", "y^2"]);
        assert!(is_groebner_basis(
            &i.groebner_basis(&lex, &lim()).unwrap().polys,
            &lex,
            &lim()
        )
        .unwrap());
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(5, &["x", "y"]);
        let lex = MonomialOrder::lex(2);
        // two reduction steps by hand: x^2 y -> y^2
        let i = ideal(&r, &["x^2-y"]);
        let f = parse_polynomial("x^2*y", &r).unwrap();
        assert_eq!(normal_form(&f, &i, &lex, &lim()).unwrap().to_string(), "y^2");
        // y^2 lies in (x^2 - y, x^3)
        let j = ideal(&r, &["x^2-y", "x^3"]);
        let y2 = parse_polynomial("y^2", &r).unwrap();
        assert!(normal_form(&y2, &j, &lex, &lim()).unwrap().is_zero());
        assert!(ideal_member(&y2, &j, &lim()).unwrap());
        // idempotence
        let g = parse_polynomial("x^4+x*y+3", &r).unwrap();
        let nf = normal_form(&g, &j, &lex, &lim()).unwrap();
        assert_eq!(normal_form(&nf, &j, &lex, &lim()).unwrap(), nf);
    }

    #[test]
    fn membership_trivial_and_zero_ideal() {
        let r = ring(2, &["x"]);
        let i = ideal(&r, &["x"]);
        let x = parse_polynomial("x", &r).unwrap();
        assert!(ideal_member(&x, &i, &lim()).unwrap());
        let zero = Ideal::zero(r.clone());
        assert!(!ideal_member(&x, &zero, &lim()).unwrap());
        assert!(ideal_member(&Polynomial::zero(r), &zero, &lim()).unwrap());
    }

    #[test]
    fn colon_examples() {
        let r = ring(5, &["x", "y"]);
        // ((x^2, xy) : y) = (x)
        let i = ideal(&r, &["x^2", "x*y"]);
        let y = parse_polynomial("y", &r).unwrap();
        let col = ideal_colon(&i, &y, &lim()).unwrap();
        assert!(col.equal_as_ideal(&ideal(&r, &["x"]), &lim()).unwrap());
        // (I : 1) = I
        let one = Polynomial::one(r.clone());
        let col1 = ideal_colon(&i, &one, &lim()).unwrap();
        assert!(col1.equal_as_ideal(&i, &lim()).unwrap());
        // ((0) : f) = (0) in a domain
        let zero = Ideal::zero(r.clone());
        let c0 = ideal_colon(&zero, &y, &lim()).unwrap();
        assert!(c0.is_zero_ideal());
        // soundness: every returned generator g has g*f in I
        for g in col.generators() {
            assert!(ideal_member(&g.mul(&y).unwrap(), &i, &lim()).unwrap());
        }
    }

    #[test]
    fn colon_completeness_brute_force() {
        // Against exhaustive search over monomials of degree <= 4.
        let r = ring(3, &["x", "y"]);
        let i = ideal(&r, &["x^3", "x*y^2"]);
        let f = parse_polynomial("x*y", &r).unwrap();
        let col = ideal_colon(&i, &f, &lim()).unwrap();
        for dx in 0..=4u32 {
            for dy in 0..=4u32 {
                if dx + dy > 4 {
                    continue;
                }
                let m = Polynomial::monomial(r.clone(), vec![dx, dy], 1).unwrap();
                let in_colon = ideal_member(&m, &col, &lim()).unwrap();
                let oracle = ideal_member(&m.mul(&f).unwrap(), &i, &lim()).unwrap();
                assert_eq!(in_colon, oracle, "monomial x^{dx} y^{dy}");
            }
        }
    }

    #[test]
    fn intersection_examples() {
        let r = ring(2, &["x", "y"]);
        let ix = ideal(&r, &["x"]);
        let iy = ideal(&r, &["y"]);
        let inter = ideal_intersect(&ix, &iy, &lim()).unwrap();
        assert!(inter.equal_as_ideal(&ideal(&r, &["x*y"]), &lim()).unwrap());
        // (x) ∩ (x) = (x)
        let same = ideal_intersect(&ix, &ix, &lim()).unwrap();
        assert!(same.equal_as_ideal(&ix, &lim()).unwrap());
        // I ∩ (1) = I
        let unit = ideal(&r, &["1"]);
        let i = ideal(&r, &["x^2+y", "x*y"]);
        let with_unit = ideal_intersect(&i, &unit, &lim()).unwrap();
        assert!(with_unit.equal_as_ideal(&i, &lim()).unwrap());
    }

    #[test]
    fn intersection_membership_brute_force() {
        // Generators of I ∩ J lie in both; random degree-<=3 members of
        // both lie in the intersection.
        let r = ring(3, &["x", "y"]);
        let i = ideal(&r, &["x^2", "y"]);
        let j = ideal(&r, &["x", "y^3"]);
        let inter = ideal_intersect(&i, &j, &lim()).unwrap();
        for g in inter.generators() {
            assert!(ideal_member(g, &i, &lim()).unwrap());
            assert!(ideal_member(g, &j, &lim()).unwrap());
        }
        // multiples of x^2*y^3 + x*y etc. — sample products of gens
        for a in i.generators() {
            for b in j.generators() {
                let prod = a.mul(b).unwrap();
                assert!(ideal_member(&prod, &inter, &lim()).unwrap());
            }
        }
    }

    #[test]
    fn elimination_cusp_parametrization() {
        // eliminate u from (x - u^2, y - u^3): the cusp relation
        let r = ring(5, &["u", "x", "y"]);
        let i = ideal(&r, &["x-u^2", "y-u^3"]);
        let out = eliminate(&i, &[0], &lim()).unwrap();
        let small = out.ring().clone();
        assert_eq!(small.vars(), &["x".to_string(), "y".to_string()]);
        let cusp = Ideal::new(
            small.clone(),
            vec![parse_polynomial("x^3-y^2", &small).unwrap()],
        )
        .unwrap();
        assert!(out.equal_as_ideal(&cusp, &lim()).unwrap());
    }

    #[test]
    fn elimination_with_no_consequence_is_zero() {
        let r = ring(2, &["u", "x"]);
        let i = ideal(&r, &["x-u^2"]);
        let out = eliminate(&i, &[0], &lim()).unwrap();
        assert!(out.is_zero_ideal());
        // eliminate nothing: identity
        let same = eliminate(&i, &[], &lim()).unwrap();
        assert_eq!(same.generators(), i.generators());
    }

    #[test]
    fn subalgebra_membership_examples() {
        let r = ring(5, &["t"]);
        let gens = [
            parse_polynomial("t^2", &r).unwrap(),
            parse_polynomial("t^3", &r).unwrap(),
        ];
        // t^4 = (t^2)^2
        let t4 = parse_polynomial("t^4", &r).unwrap();
        let m = subalgebra_member(&t4, &gens, &lim()).unwrap();
        assert!(m.member);
        let rep = m.representation.unwrap();
        assert_eq!(rep.to_string(), "y1^2");
        // the representation evaluates back to t^4
        assert_eq!(rep.substitute(&gens).unwrap(), t4);
        // t is in the gap of <2,3>
        let t = parse_polynomial("t", &r).unwrap();
        assert!(!subalgebra_member(&t, &gens, &lim()).unwrap().member);
    }

    #[test]
    fn subalgebra_membership_node_char2() {
        // u^2 = (u^2 - 1) + 1 over F_2
        let r = ring(2, &["u"]);
        let gens = [
            parse_polynomial("u^2-1", &r).unwrap(),
            parse_polynomial("u^3-u", &r).unwrap(),
        ];
        let u2 = parse_polynomial("u^2", &r).unwrap();
        let m = subalgebra_member(&u2, &gens, &lim()).unwrap();
        assert!(m.member);
        let rep = m.representation.unwrap();
        assert_eq!(rep.to_string(), "y1+1");
        assert_eq!(rep.substitute(&gens).unwrap(), u2);
    }

    #[test]
    fn subalgebra_exhaustive_oracle() {
        // Agree with exhaustive search over monomial combinations of the
        // generators up to degree 12 in u.
        let r = ring(3, &["u"]);
        let gens = [
            parse_polynomial("u^3", &r).unwrap(),
            parse_polynomial("u^4", &r).unwrap(),
        ];
        // attainable degrees of monomials in u^3, u^4
        let mut attain = [false; 13];
        attain[0] = true;
        for a in 0..=4usize {
            for b in 0..=3usize {
                let d = 3 * a + 4 * b;
                if d <= 12 {
                    attain[d] = true;
                }
            }
        }
        for n in 0..=12u32 {
            let f = Polynomial::monomial(r.clone(), vec![n], 1).unwrap();
            let got = subalgebra_member(&f, &gens, &lim()).unwrap().member;
            assert_eq!(got, attain[n as usize], "u^{n}");
        }
    }

    #[test]
    fn reduced_basis_is_permutation_invariant() {
        let r = ring(7, &["x", "y", "z"]);
        let gens = ["x^2*y-z", "x*z-y^2", "y^3-x*z^2+1"];
        let grev = MonomialOrder::grevlex(3);
        let base = gb_strings(&ideal(&r, &gens), &grev);
        let perms: [[usize; 3]; 3] = [[1, 0, 2], [2, 1, 0], [2, 0, 1]];
        for perm in perms {
            let permuted: Vec<&str> = perm.iter().map(|&i| gens[i]).collect();
            assert_eq!(gb_strings(&ideal(&r, &permuted), &grev), base);
        }
    }

    #[test]
    fn resource_caps_are_hard_errors() {
        let r = ring(2, &["x", "y"]);
        let i = ideal(&r, &["x^2+y", "x*y+x"]);
        let tight = GbLimits::new(1, 60);
        let res = i.groebner_basis(&MonomialOrder::grevlex(2), &tight);
        assert!(matches!(res, Err(Error::ResourceCap(_))));
        let degree_capped = GbLimits::new(10_000, 1);
        let res2 = i.groebner_basis(&MonomialOrder::grevlex(2), &degree_capped);
        assert!(matches!(res2, Err(Error::ResourceCap(_))));
    }

    #[test]
    fn quotient_ring_lifts_ideals_by_preimage() {
        let r = ring(2, &["x", "y"]);
        let modulus = ideal(&r, &["x^3-y^2"]);
        let q = QuotientRing::new(r.clone(), modulus).unwrap();
        let i = ideal(&r, &["x"]);
        let lifted = q.lift_ideal(&i).unwrap();
        // y^2 = x^3 in the quotient, hence y^2 lies in the lift of (x)
        let y2 = parse_polynomial("y^2", &r).unwrap();
        assert!(ideal_member(&y2, &lifted, &lim()).unwrap());
    }
}
