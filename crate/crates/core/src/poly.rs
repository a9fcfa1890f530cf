//! Sparse multivariate polynomials over a prime field.
//!
//! Terms are an association of exponent vector to nonzero residue,
//! stored sorted in descending canonical order (grevlex on the declared
//! variable order), so equal polynomials have identical representations
//! and all printed output is deterministic.

use crate::error::{Error, Result};
use crate::field::PrimeChar;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Hard cap on any single exponent entry. Bracket powers scale
/// exponents by `p^e`; past this bound the operation fails loudly.
pub const EXPONENT_CAP: u32 = 1 << 20;

/// An exponent vector: one non-negative entry per ambient variable.
pub type ExponentVector = Vec<u32>;

// ---------------------------------------------------------------------------
// Ring description
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
struct RingRepr {
    #[serde(rename = "char")]
    p: u64,
    vars: Vec<String>,
}

/// Ambient ring description: a prime characteristic and an ordered list
/// of variable names. `F_p[x_1, ..., x_n]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RingRepr", into = "RingRepr")]
pub struct Ring {
    p: PrimeChar,
    vars: Vec<String>,
}

impl Ring {
    pub fn new(p: PrimeChar, vars: Vec<String>) -> Result<Arc<Self>> {
        if vars.is_empty() {
            return Err(Error::precondition("ring needs at least one variable"));
        }
        for v in &vars {
            if !is_identifier(v) {
                return Err(Error::precondition(format!("invalid variable name `{v}`")));
            }
        }
        for i in 1..vars.len() {
            if vars[..i].contains(&vars[i]) {
                return Err(Error::precondition(format!(
                    "duplicate variable name `{}`",
                    vars[i]
                )));
            }
        }
        Ok(Arc::new(Ring { p, vars }))
    }

    /// Convenience constructor from `&str` names.
    pub fn make(p: u64, vars: &[&str]) -> Result<Arc<Self>> {
        Ring::new(
            PrimeChar::new(p)?,
            vars.iter().map(|s| s.to_string()).collect(),
        )
    }

    #[inline]
    pub fn char_p(&self) -> PrimeChar {
        self.p
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    #[inline]
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Extend by fresh variables placed **before** the existing ones.
    /// Used by elimination-based constructions (tag variables).
    pub fn prepend_vars(&self, fresh: &[String]) -> Result<Arc<Ring>> {
        let mut vars = fresh.to_vec();
        vars.extend(self.vars.iter().cloned());
        Ring::new(self.p, vars)
    }

    /// The subring on a subset of variables (order preserved).
    pub fn restrict(&self, keep: &[usize]) -> Result<Arc<Ring>> {
        let vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        Ring::new(self.p, vars)
    }
}

impl TryFrom<RingRepr> for Ring {
    type Error = Error;
    fn try_from(r: RingRepr) -> Result<Self> {
        let arc = Ring::new(PrimeChar::new(r.p)?, r.vars)?;
        Ok(Arc::try_unwrap(arc).unwrap_or_else(|a| (*a).clone()))
    }
}

impl From<Ring> for RingRepr {
    fn from(r: Ring) -> RingRepr {
        RingRepr {
            p: r.p.get(),
            vars: r.vars,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}]", self.p, self.vars.join(","))
    }
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

// ---------------------------------------------------------------------------
// Monomial orders
// ---------------------------------------------------------------------------

/// The shape of a monomial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    Lex,
    GrevLex,
    /// Block order: the first `k` positions of the permutation form an
    /// elimination block (grevlex within each block).
    Elim(usize),
}

/// A total, multiplicative well-order on monomials: an [`OrderKind`]
/// plus a variable permutation giving comparison priority.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    kind: OrderKind,
    perm: Vec<usize>,
}

impl MonomialOrder {
    pub fn lex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            perm: (0..nvars).collect(),
        }
    }

    pub fn grevlex(nvars: usize) -> Self {
        MonomialOrder {
            kind: OrderKind::GrevLex,
            perm: (0..nvars).collect(),
        }
    }

    /// Elimination order: variables in `first_block` are greater than
    /// everything else; within blocks, grevlex on declared order.
    pub fn elim(first_block: &[usize], nvars: usize) -> Result<Self> {
        let mut perm: Vec<usize> = first_block.to_vec();
        for i in 0..nvars {
            if !first_block.contains(&i) {
                perm.push(i);
            }
        }
        if perm.len() != nvars || first_block.iter().any(|&i| i >= nvars) {
            return Err(Error::precondition(
                "elimination block must be a subset of the ambient variables",
            ));
        }
        Ok(MonomialOrder {
            kind: OrderKind::Elim(first_block.len()),
            perm,
        })
    }

    /// Same kind, with an explicit variable permutation.
    pub fn with_permutation(kind: OrderKind, perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &i in &perm {
            if i >= n || seen[i] {
                return Err(Error::precondition("invalid variable permutation"));
            }
            seen[i] = true;
        }
        if let OrderKind::Elim(k) = kind {
            if k > n {
                return Err(Error::precondition("elimination block exceeds arity"));
            }
        }
        Ok(MonomialOrder { kind, perm })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    /// Compare two exponent vectors; `Greater` means `a` is the larger
    /// monomial.
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.kind {
            OrderKind::Lex => lex_cmp(a, b, &self.perm),
            OrderKind::GrevLex => grevlex_cmp(a, b, &self.perm),
            OrderKind::Elim(k) => grevlex_cmp(a, b, &self.perm[..k])
                .then_with(|| grevlex_cmp(a, b, &self.perm[k..])),
        }
    }
}

fn lex_cmp(a: &[u32], b: &[u32], positions: &[usize]) -> Ordering {
    for &i in positions {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    Ordering::Equal
}

fn grevlex_cmp(a: &[u32], b: &[u32], positions: &[usize]) -> Ordering {
    let da: u64 = positions.iter().map(|&i| a[i] as u64).sum();
    let db: u64 = positions.iter().map(|&i| b[i] as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for &i in positions.iter().rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            // Ties break toward the monomial with the *smaller* last
            // differing exponent.
            ord => return ord.reverse(),
        }
    }
    Ordering::Equal
}

/// Canonical storage/serialization order: grevlex on declared variables.
pub fn canonical_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            ord => return ord.reverse(),
        }
    }
    Ordering::Equal
}

// ---------------------------------------------------------------------------
// Exponent vector helpers
// ---------------------------------------------------------------------------

pub fn exp_total_degree(a: &[u32]) -> u64 {
    a.iter().map(|&x| x as u64).sum()
}

pub fn exp_add(a: &[u32], b: &[u32]) -> Result<ExponentVector> {
    let mut out = Vec::with_capacity(a.len());
    for (x, y) in a.iter().zip(b) {
        let s = x + y;
        if s > EXPONENT_CAP {
            return Err(Error::ExponentOverflow(format!(
                "exponent {s} exceeds cap {EXPONENT_CAP}"
            )));
        }
        out.push(s);
    }
    Ok(out)
}

/// `a - b`; caller guarantees `b` divides `a`.
pub fn exp_sub(a: &[u32], b: &[u32]) -> ExponentVector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn exp_divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn exp_lcm(a: &[u32], b: &[u32]) -> ExponentVector {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn exp_coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

// ---------------------------------------------------------------------------
// Polynomial
// ---------------------------------------------------------------------------

/// A polynomial in `F_p[x_1..x_n]`: a sorted sparse term list over a
/// shared ambient ring. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    ring: Arc<Ring>,
    /// Sorted descending under [`canonical_cmp`]; nonzero coefficients.
    terms: Vec<(ExponentVector, u64)>,
}

impl Polynomial {
    /// Build from raw terms: merges duplicates, reduces coefficients
    /// mod p, drops zeros, sorts canonically.
    pub fn from_terms(ring: Arc<Ring>, raw: Vec<(ExponentVector, u64)>) -> Result<Self> {
        let p = ring.char_p();
        let n = ring.nvars();
        let mut terms: Vec<(ExponentVector, u64)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            if e.len() != n {
                return Err(Error::precondition(format!(
                    "exponent vector length {} does not match arity {n}",
                    e.len()
                )));
            }
            if e.iter().any(|&x| x > EXPONENT_CAP) {
                return Err(Error::ExponentOverflow(format!(
                    "exponent exceeds cap {EXPONENT_CAP}"
                )));
            }
            terms.push((e, c % p.get()));
        }
        terms.sort_by(|a, b| canonical_cmp(&b.0, &a.0));
        let mut merged: Vec<(ExponentVector, u64)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            if let Some(last) = merged.last_mut() {
                if last.0 == e {
                    last.1 = p.add(last.1, c);
                    if last.1 == 0 {
                        merged.pop();
                    }
                    continue;
                }
            }
            if c != 0 {
                merged.push((e, c));
            }
        }
        Ok(Polynomial { ring, terms: merged })
    }

    pub fn zero(ring: Arc<Ring>) -> Self {
        Polynomial {
            ring,
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: Arc<Ring>, c: u64) -> Self {
        let c = c % ring.char_p().get();
        if c == 0 {
            return Polynomial::zero(ring);
        }
        let n = ring.nvars();
        Polynomial {
            ring,
            terms: vec![(vec![0; n], c)],
        }
    }

    pub fn one(ring: Arc<Ring>) -> Self {
        Polynomial::constant(ring, 1)
    }

    pub fn var(ring: Arc<Ring>, index: usize) -> Result<Self> {
        if index >= ring.nvars() {
            return Err(Error::precondition(format!("no variable #{index}")));
        }
        let mut e = vec![0u32; ring.nvars()];
        e[index] = 1;
        Ok(Polynomial {
            ring,
            terms: vec![(e, 1)],
        })
    }

    pub fn monomial(ring: Arc<Ring>, exps: ExponentVector, c: u64) -> Result<Self> {
        Polynomial::from_terms(ring, vec![(exps, c)])
    }

    #[inline]
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    #[inline]
    pub fn terms(&self) -> &[(ExponentVector, u64)] {
        &self.terms
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.iter().all(|&x| x == 0))
    }

    pub fn total_degree(&self) -> u64 {
        self.terms
            .iter()
            .map(|(e, _)| exp_total_degree(e))
            .max()
            .unwrap_or(0)
    }

    /// True when no term involves any variable in `vars`.
    pub fn free_of(&self, vars: &[usize]) -> bool {
        self.terms
            .iter()
            .all(|(e, _)| vars.iter().all(|&i| e[i] == 0))
    }

    fn check_same_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::AmbientMismatch(format!(
                "{} vs {}",
                self.ring, other.ring
            )))
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn neg(&self) -> Polynomial {
        let p = self.ring.char_p();
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), p.neg(*c)))
                .collect(),
        }
    }

    fn merge(&self, other: &Polynomial, subtract: bool) -> Polynomial {
        let p = self.ring.char_p();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match canonical_cmp(ea, eb) {
                Ordering::Greater => {
                    out.push((ea.clone(), *ca));
                    i += 1;
                }
                Ordering::Less => {
                    let c = if subtract { p.neg(*cb) } else { *cb };
                    out.push((eb.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract {
                        p.sub(*ca, *cb)
                    } else {
                        p.add(*ca, *cb)
                    };
                    if c != 0 {
                        out.push((ea.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (e, c) in &other.terms[j..] {
            let c = if subtract { p.neg(*c) } else { *c };
            out.push((e.clone(), c));
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(self.ring.clone()));
        }
        // Accumulate products of `other` by each term of the shorter
        // factor; from_terms re-sorts and merges.
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let p = self.ring.char_p();
        let mut raw = Vec::with_capacity(small.terms.len() * large.terms.len());
        for (ea, ca) in &small.terms {
            for (eb, cb) in &large.terms {
                raw.push((exp_add(ea, eb)?, p.mul(*ca, *cb)));
            }
        }
        Polynomial::from_terms(self.ring.clone(), raw)
    }

    /// Multiply by a single term `c * x^e`.
    pub fn mul_term(&self, e: &[u32], c: u64) -> Result<Polynomial> {
        let p = self.ring.char_p();
        let c = c % p.get();
        if c == 0 {
            return Ok(Polynomial::zero(self.ring.clone()));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for (ea, ca) in &self.terms {
            terms.push((exp_add(ea, e)?, p.mul(*ca, c)));
        }
        // Multiplying by a fixed monomial preserves the canonical sort.
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let p = self.ring.char_p();
        let c = c % p.get();
        if c == 0 {
            return Polynomial::zero(self.ring.clone());
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.clone(), p.mul(*a, c)))
                .collect(),
        }
    }

    /// `self^k` by repeated squaring.
    pub fn pow(&self, k: u64) -> Result<Polynomial> {
        let mut acc = Polynomial::one(self.ring.clone());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// The `e`-th iterated Frobenius power `f^(p^e)`. Computed termwise:
    /// coefficients are fixed by Frobenius on the prime field, exponent
    /// vectors scale by `q = p^e`.
    pub fn frobenius_power(&self, e: u32) -> Result<Polynomial> {
        if e == 0 || self.is_constant() {
            return Ok(self.clone());
        }
        let p = self.ring.char_p().get() as u128;
        let mut q: u128 = 1;
        for _ in 0..e {
            q = q.checked_mul(p).ok_or_else(|| {
                Error::ExponentOverflow(format!("p^{e} overflows the supported exponent range"))
            })?;
            if q > EXPONENT_CAP as u128 {
                // Only fatal if some exponent actually needs scaling;
                // constants were handled above.
                return Err(Error::ExponentOverflow(format!(
                    "p^{e} exceeds exponent cap {EXPONENT_CAP}"
                )));
            }
        }
        let q = q as u64;
        let mut terms = Vec::with_capacity(self.terms.len());
        for (exp, c) in &self.terms {
            let mut scaled = Vec::with_capacity(exp.len());
            for &x in exp {
                let s = x as u64 * q;
                if s > EXPONENT_CAP as u64 {
                    return Err(Error::ExponentOverflow(format!(
                        "exponent {s} exceeds cap {EXPONENT_CAP}"
                    )));
                }
                scaled.push(s as u32);
            }
            terms.push((scaled, *c));
        }
        // Scaling by q is order-preserving, so sortedness survives.
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Leading term under an order; `None` for zero.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&ExponentVector, u64)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(&a.0, &b.0))
            .map(|(e, c)| (e, *c))
    }

    /// Substitute `images[i]` for variable `i`. Images live in a common
    /// target ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::precondition(
                "substitution needs one image per variable",
            ));
        }
        let target = images
            .first()
            .map(|f| f.ring().clone())
            .ok_or_else(|| Error::precondition("substitution needs at least one image"))?;
        let mut acc = Polynomial::zero(target.clone());
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(target.clone(), *c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&images[i].pow(k as u64)?)?;
                }
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    /// Map into a ring with more variables; `var_map[i]` is the index
    /// of old variable `i` in the target ring.
    pub fn lift(&self, target: &Arc<Ring>, var_map: &[usize]) -> Result<Polynomial> {
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut out = vec![0u32; n];
                for (i, &x) in e.iter().enumerate() {
                    out[var_map[i]] = x;
                }
                (out, *c)
            })
            .collect();
        Polynomial::from_terms(target.clone(), terms)
    }

    /// Project onto a subring; every term must be free of the dropped
    /// variables. `keep` lists surviving variable indices in order.
    pub fn project(&self, target: &Arc<Ring>, keep: &[usize]) -> Result<Polynomial> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let out: ExponentVector = keep.iter().map(|&i| e[i]).collect();
                debug_assert_eq!(
                    exp_total_degree(e),
                    exp_total_degree(&out),
                    "projection dropped a live variable"
                );
                (out, *c)
            })
            .collect();
        Polynomial::from_terms(target.clone(), terms)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.ring.vars();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            let mut parts: Vec<String> = Vec::new();
            let is_const = e.iter().all(|&x| x == 0);
            if *c != 1 || is_const {
                parts.push(c.to_string());
            }
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => parts.push(vars[i].clone()),
                    _ => parts.push(format!("{}^{}", vars[i], x)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, vars: &[&str]) -> Arc<Ring> {
        Ring::make(p, vars).unwrap()
    }

    #[test]
    fn canonical_order_is_grevlex_descending() {
        let r = fp(5, &["x", "y"]);
        // x^2 > x*y > y^2 > x > y > 1
        let f = Polynomial::from_terms(
            r.clone(),
            vec![
                (vec![0, 0], 1),
                (vec![0, 2], 1),
                (vec![1, 1], 1),
                (vec![2, 0], 1),
                (vec![1, 0], 1),
                (vec![0, 1], 1),
            ],
        )
        .unwrap();
        assert_eq!(f.to_string(), "x^2+x*y+y^2+x+y+1");
    }

    #[test]
    fn char_2_collapse() {
        let r = fp(2, &["x", "y"]);
        let x = Polynomial::var(r.clone(), 0).unwrap();
        let y = Polynomial::var(r.clone(), 1).unwrap();
        let s = x.add(&y).unwrap();
        assert!(s.add(&s).unwrap().is_zero());
        // freshman's dream forced in char 2
        assert_eq!(s.mul(&s).unwrap().to_string(), "x^2+y^2");
    }

    #[test]
    fn mul_reduces_coefficients() {
        // (x+2)(x+1) = x^2 + 3x + 2 = x^2 + 2 over F_3
        let r = fp(3, &["x"]);
        let x = Polynomial::var(r.clone(), 0).unwrap();
        let a = x.add(&Polynomial::constant(r.clone(), 2)).unwrap();
        let b = x.add(&Polynomial::constant(r.clone(), 1)).unwrap();
        assert_eq!(a.mul(&b).unwrap().to_string(), "x^2+2");
    }

    #[test]
    fn frobenius_power_matches_repeated_multiplication() {
        // Oracle: f^(p^e) by square-and-multiply must equal the
        // termwise map.
        let r = fp(2, &["x", "y"]);
        let x = Polynomial::var(r.clone(), 0).unwrap();
        let y = Polynomial::var(r.clone(), 1).unwrap();
        let f = x.add(&y).unwrap();
        assert_eq!(f.frobenius_power(1).unwrap().to_string(), "x^2+y^2");
        assert_eq!(f.frobenius_power(2).unwrap().to_string(), "x^4+y^4");
        for e in 0..4u32 {
            let q = 2u64.pow(e);
            assert_eq!(f.frobenius_power(e).unwrap(), f.pow(q).unwrap());
        }
        assert_eq!(f.frobenius_power(0).unwrap(), f);
    }

    #[test]
    fn frobenius_is_additive() {
        let r = fp(3, &["x", "y", "z"]);
        let f = Polynomial::from_terms(r.clone(), vec![(vec![1, 2, 0], 2), (vec![0, 0, 1], 1)])
            .unwrap();
        let g = Polynomial::from_terms(r.clone(), vec![(vec![2, 0, 1], 1), (vec![0, 0, 1], 2)])
            .unwrap();
        for e in 0..3u32 {
            let lhs = f.add(&g).unwrap().frobenius_power(e).unwrap();
            let rhs = f
                .frobenius_power(e)
                .unwrap()
                .add(&g.frobenius_power(e).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn exponent_cap_is_a_hard_error() {
        let r = fp(2, &["x"]);
        let f = Polynomial::monomial(r.clone(), vec![EXPONENT_CAP / 2 + 1], 1).unwrap();
        assert!(matches!(
            f.frobenius_power(1),
            Err(Error::ExponentOverflow(_))
        ));
        assert!(matches!(f.mul(&f), Err(Error::ExponentOverflow(_))));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let r1 = fp(2, &["x"]);
        let r2 = fp(3, &["x"]);
        let a = Polynomial::var(r1, 0).unwrap();
        let b = Polynomial::var(r2, 0).unwrap();
        assert!(matches!(a.add(&b), Err(Error::AmbientMismatch(_))));
    }

    #[test]
    fn lex_and_elim_orders() {
        // lex x>y: x^2 > x*y^5 > y
        let lex = MonomialOrder::lex(2);
        assert_eq!(lex.cmp(&[2, 0], &[1, 5]), Ordering::Greater);
        assert_eq!(lex.cmp(&[1, 5], &[0, 1]), Ordering::Greater);
        // grevlex: x*y^5 has higher degree
        let grev = MonomialOrder::grevlex(2);
        assert_eq!(grev.cmp(&[2, 0], &[1, 5]), Ordering::Less);
        // elim block {1} (y first): any positive power of y beats x^k
        let elim = MonomialOrder::elim(&[1], 2).unwrap();
        assert_eq!(elim.cmp(&[0, 1], &[9, 0]), Ordering::Greater);
    }

    #[test]
    fn ring_json_round_trip() {
        let r = fp(2, &["x", "y"]);
        let js = serde_json::to_string(&*r).unwrap();
        assert_eq!(js, r#"{"char":2,"vars":["x","y"]}"#);
        let back: Ring = serde_json::from_str(&js).unwrap();
        assert_eq!(back, *r);
        assert!(serde_json::from_str::<Ring>(r#"{"char":4,"vars":["x"]}"#).is_err());
    }
}
