//! Characteristic-p closure operations: bracket powers, Frobenius
//! roots, Frobenius-closure and tight-closure membership as bounded
//! semi-decisions, the Fedder purity test at the origin, and the
//! colon/bracket flatness identity in regular ambients.
//!
//! Closure verdicts are explicitly bounded evidence. There is no
//! effective bound on the exponents a closure definition quantifies
//! over, so a `Member` verdict certifies the defining condition on the
//! tested window, and a negative verdict is never a disproof.

use crate::error::{Error, Result};
use crate::groebner::{
    ideal_colon, ideal_colon_ideal, ideal_member, GbLimits, Ideal, QuotientRing,
};
use crate::poly::{MonomialOrder, Polynomial, Ring};
use serde::Serialize;
use std::sync::Arc;

/// Default top exponent for closure windows: all the shipped fixtures
/// resolve within `q <= p^4`.
pub const DEFAULT_E_MAX: u32 = 4;

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClosureStatus {
    Member,
    NotMemberUpToBound,
    NoWitnessFoundUpToBound,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct TranscriptEntry {
    pub e: u32,
    pub condition: String,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureWitness {
    /// Canonical text of the witness `c`; asserted by the caller to lie
    /// in `R^0`.
    pub c: String,
    pub e_min: u32,
    pub e_max: u32,
}

/// Outcome of a bounded closure semi-decision.
#[derive(Debug, Clone, Serialize)]
pub struct ClosureVerdict {
    pub status: ClosureStatus,
    pub e_min: u32,
    pub e_max: u32,
    /// Certified exponent for Frobenius-closure membership.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exponent: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<ClosureWitness>,
    pub transcript: Vec<TranscriptEntry>,
    pub caveat: String,
}

impl ClosureVerdict {
    pub fn is_member(&self) -> bool {
        self.status == ClosureStatus::Member
    }
}

/// Candidate test elements, asserted by the caller to lie in `R^0`
/// (outside every minimal prime). The assertion is recorded, not
/// verified: minimal-prime computation is out of scope.
#[derive(Debug, Clone)]
pub struct WitnessSet {
    candidates: Vec<Polynomial>,
}

impl WitnessSet {
    pub fn new(candidates: Vec<Polynomial>) -> Result<Self> {
        if candidates.is_empty() {
            return Err(Error::precondition("witness set must be nonempty"));
        }
        if candidates.iter().any(|c| c.is_zero()) {
            return Err(Error::precondition(
                "witness candidates must be nonzero polynomials",
            ));
        }
        Ok(WitnessSet { candidates })
    }

    /// Default candidates: 1, then the ideal generators, then extras.
    pub fn default_for(ideal: &Ideal, extras: &[Polynomial]) -> Result<Self> {
        let mut candidates = vec![Polynomial::one(ideal.ring().clone())];
        candidates.extend(ideal.generators().iter().filter(|g| !g.is_zero()).cloned());
        candidates.extend(extras.iter().filter(|g| !g.is_zero()).cloned());
        WitnessSet::new(candidates)
    }

    pub fn candidates(&self) -> &[Polynomial] {
        &self.candidates
    }
}

// ---------------------------------------------------------------------------
// Bracket power and Frobenius root
// ---------------------------------------------------------------------------

/// `I^[q]`, `q = p^e`: the ideal generated by the q-th powers of the
/// generators. Independent of the generating set since
/// `(sum r_i f_i)^q = sum r_i^q f_i^q` in characteristic p.
pub fn bracket_power(ideal: &Ideal, e: u32) -> Result<Ideal> {
    if e == 0 {
        return Ok(ideal.clone());
    }
    let gens = ideal
        .generators()
        .iter()
        .map(|g| g.frobenius_power(e))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ideal.ring().clone(), gens)
}

/// The `e`-th Frobenius root in a polynomial ring: the smallest ideal
/// `K` with `I ⊆ K^[q]`. Each generator decomposes as
/// `f = sum_mu (f_mu)^q x^mu` over residues `mu` in `[0,q)^n`; the root
/// is generated by all the pieces `f_mu`.
pub fn frobenius_root(ideal: &Ideal, e: u32) -> Result<Ideal> {
    if e == 0 {
        return Ok(ideal.clone());
    }
    let ring = ideal.ring().clone();
    let p = ring.char_p().get();
    let mut q: u64 = 1;
    for _ in 0..e {
        match q.checked_mul(p) {
            Some(v) if v <= (u32::MAX as u64 + 1) => q = v,
            // Exponents are capped far below this, so every exponent is
            // its own residue class from here on.
            _ => {
                q = u32::MAX as u64 + 1;
                break;
            }
        }
    }
    let mut pieces: Vec<Polynomial> = Vec::new();
    for f in ideal.generators() {
        // group terms by componentwise exponent residue mod q
        let mut classes: std::collections::BTreeMap<Vec<u32>, Vec<(Vec<u32>, u64)>> =
            std::collections::BTreeMap::new();
        for (exp, c) in f.terms() {
            let mut residue = Vec::with_capacity(exp.len());
            let mut base = Vec::with_capacity(exp.len());
            for &x in exp {
                residue.push((x as u64 % q) as u32);
                base.push((x as u64 / q) as u32);
            }
            classes.entry(residue).or_default().push((base, *c));
        }
        for (_, terms) in classes {
            let piece = Polynomial::from_terms(ring.clone(), terms)?;
            if !piece.is_zero() && !pieces.contains(&piece) {
                pieces.push(piece);
            }
        }
    }
    Ideal::new(ring, pieces)
}

// ---------------------------------------------------------------------------
// Closure membership (bounded semi-decisions)
// ---------------------------------------------------------------------------

const FROBENIUS_CAVEAT: &str = "Member certifies x^q in I^[q] at the stated exponent (persists \
for larger e); NotMemberUpToBound is evidence up to the bound, not a disproof.";

const TIGHT_CAVEAT: &str = "one-sided semantics: Member means c*x^q in I^[q] held for every e \
in the tested window, which is evidence, not proof (q ranges over a finite window); \
NoWitnessFoundUpToBound is not a disproof. Witnesses are caller-asserted elements of R^0.";

fn quotient_member(
    f: &Polynomial,
    ideal: &Ideal,
    ring: &QuotientRing,
    limits: &GbLimits,
) -> Result<bool> {
    let lifted = ring.lift_ideal(ideal)?;
    ideal_member(f, &lifted, limits)
}

fn power_name(p: u64, e: u32) -> String {
    format!("{p}^{e}")
}

/// Frobenius-closure membership, bounded: `Member(e)` when
/// `x^(p^e) ∈ I^[p^e]` in the quotient for some `e <= e_max`. In a
/// reduced ring the condition persists for larger exponents; the
/// verdict spot-verifies it at `e+1` and records that in the
/// transcript.
pub fn frobenius_closure_member(
    x: &Polynomial,
    ideal: &Ideal,
    ring: &QuotientRing,
    e_max: u32,
    limits: &GbLimits,
) -> Result<ClosureVerdict> {
    if e_max < 1 {
        return Err(Error::precondition("e_max must be at least 1"));
    }
    let p = ring.ambient().char_p().get();
    let mut transcript = Vec::new();
    for e in 0..=e_max {
        let xq = x.frobenius_power(e)?;
        let bracket = bracket_power(ideal, e)?;
        let holds = quotient_member(&xq, &bracket, ring, limits)?;
        transcript.push(TranscriptEntry {
            e,
            condition: format!("x^({}) in I^[{}]", power_name(p, e), power_name(p, e)),
            holds,
        });
        if holds {
            // Spot-verify persistence at e+1 (automatic in char p,
            // recorded for the report).
            if e < e_max {
                let spot = quotient_member(
                    &x.frobenius_power(e + 1)?,
                    &bracket_power(ideal, e + 1)?,
                    ring,
                    limits,
                )?;
                transcript.push(TranscriptEntry {
                    e: e + 1,
                    condition: format!(
                        "persistence spot-check: x^({0}) in I^[{0}]",
                        power_name(p, e + 1)
                    ),
                    holds: spot,
                });
            }
            return Ok(ClosureVerdict {
                status: ClosureStatus::Member,
                e_min: 0,
                e_max,
                exponent: Some(e),
                witness: None,
                transcript,
                caveat: FROBENIUS_CAVEAT.into(),
            });
        }
    }
    Ok(ClosureVerdict {
        status: ClosureStatus::NotMemberUpToBound,
        e_min: 0,
        e_max,
        exponent: None,
        witness: None,
        transcript,
        caveat: FROBENIUS_CAVEAT.into(),
    })
}

/// Tight-closure membership, bounded: `Member` with witness `c` when
/// some candidate satisfies `c x^(p^e) ∈ I^[p^e]` for **every** `e` in
/// `[e_min, e_max]`.
pub fn tight_closure_member_bounded(
    x: &Polynomial,
    ideal: &Ideal,
    ring: &QuotientRing,
    witnesses: &WitnessSet,
    e_min: u32,
    e_max: u32,
    limits: &GbLimits,
) -> Result<ClosureVerdict> {
    if e_min > e_max {
        return Err(Error::precondition("e_min must not exceed e_max"));
    }
    let p = ring.ambient().char_p().get();
    let mut transcript = Vec::new();
    for c in witnesses.candidates() {
        let mut all_hold = true;
        for e in e_min..=e_max {
            let cxq = c.mul(&x.frobenius_power(e)?)?;
            let bracket = bracket_power(ideal, e)?;
            let holds = quotient_member(&cxq, &bracket, ring, limits)?;
            transcript.push(TranscriptEntry {
                e,
                condition: format!("({c})*x^({0}) in I^[{0}]", power_name(p, e)),
                holds,
            });
            if !holds {
                all_hold = false;
                break;
            }
        }
        if all_hold {
            return Ok(ClosureVerdict {
                status: ClosureStatus::Member,
                e_min,
                e_max,
                exponent: None,
                witness: Some(ClosureWitness {
                    c: c.to_string(),
                    e_min,
                    e_max,
                }),
                transcript,
                caveat: TIGHT_CAVEAT.into(),
            });
        }
    }
    Ok(ClosureVerdict {
        status: ClosureStatus::NoWitnessFoundUpToBound,
        e_min,
        e_max,
        exponent: None,
        witness: None,
        transcript,
        caveat: TIGHT_CAVEAT.into(),
    })
}

// ---------------------------------------------------------------------------
// Fedder's criterion
// ---------------------------------------------------------------------------

/// F-purity of `F_p[x_1..x_n]/J` at the origin via Fedder's criterion:
/// F-pure iff `(J^[p] : J)` is not contained in `m^[p]`,
/// `m = (x_1, ..., x_n)`.
pub fn fedder_is_fpure(j: &Ideal, limits: &GbLimits) -> Result<bool> {
    let ring = j.ring().clone();
    // J must sit inside the maximal ideal at the origin, i.e. every
    // generator has zero constant term.
    let n = ring.nvars();
    let origin = vec![0u32; n];
    for g in j.generators() {
        if g.terms().iter().any(|(e, _)| *e == origin) {
            return Err(Error::precondition(
                "Fedder test needs J contained in the maximal ideal at the origin",
            ));
        }
    }
    if j.is_zero_ideal() {
        // (0 : 0) is the unit ideal, never inside m^[p]: a regular ring
        // is F-pure.
        return Ok(true);
    }
    let bracket = bracket_power(j, 1)?;
    let colon = ideal_colon_ideal(&bracket, j, limits)?;
    let p = ring.char_p().get() as u32;
    let mut m_bracket_gens = Vec::with_capacity(n);
    for i in 0..n {
        let mut e = vec![0u32; n];
        e[i] = p;
        m_bracket_gens.push(Polynomial::monomial(ring.clone(), e, 1)?);
    }
    let m_bracket = Ideal::new(ring, m_bracket_gens)?;
    for g in colon.generators() {
        if !ideal_member(g, &m_bracket, limits)? {
            return Ok(true);
        }
    }
    Ok(false)
}

// ---------------------------------------------------------------------------
// Flatness identity
// ---------------------------------------------------------------------------

/// Check `(I : z)^[q] = (I^[q] : z^[q])` with both sides computed
/// independently; equality of reduced grevlex bases. True in polynomial
/// ambients, where Frobenius is flat.
pub fn colon_bracket_identity_check(
    ideal: &Ideal,
    z: &Polynomial,
    e: u32,
    limits: &GbLimits,
) -> Result<bool> {
    if z.is_zero() {
        return Err(Error::precondition("colon by zero"));
    }
    let order = MonomialOrder::grevlex(ideal.ring().nvars());
    let lhs = bracket_power(&ideal_colon(ideal, z, limits)?, e)?;
    let rhs = ideal_colon(&bracket_power(ideal, e)?, &z.frobenius_power(e)?, limits)?;
    let lhs_gb = lhs.groebner_basis(&order, limits)?;
    let rhs_gb = rhs.groebner_basis(&order, limits)?;
    Ok(lhs_gb.polys == rhs_gb.polys)
}

// ---------------------------------------------------------------------------
// Frobenius vs tight closure comparison
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct ClosureProbe {
    pub probe: String,
    pub frobenius: ClosureVerdict,
    pub tight: ClosureVerdict,
    /// Tight membership without Frobenius membership within the bounds:
    /// bounded-evidence tension with `I^F = I^*` on F-coherent rings,
    /// never a refutation.
    pub tension: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClosureComparisonReport {
    /// Caller-asserted: the fixture ring is F-coherent.
    pub fixture_assertion: String,
    pub probe_degree: u64,
    pub e_max: u32,
    pub probes: Vec<ClosureProbe>,
    pub tension_count: usize,
    pub inconclusive_count: usize,
    pub caveat: String,
}

fn inconclusive(e_min: u32, e_max: u32, why: &str) -> ClosureVerdict {
    ClosureVerdict {
        status: ClosureStatus::Inconclusive,
        e_min,
        e_max,
        exponent: None,
        witness: None,
        transcript: Vec::new(),
        caveat: format!("resource cap reached before a verdict: {why}"),
    }
}

/// Enumerate monomial probes up to `probe_degree` and compare the two
/// closures on each. Probes whose checks hit a resource cap are
/// recorded as `Inconclusive` rather than aborting the report.
pub fn closure_comparison(
    ideal: &Ideal,
    ring: &QuotientRing,
    witnesses: &WitnessSet,
    e_max: u32,
    probe_degree: u64,
    limits: &GbLimits,
) -> Result<ClosureComparisonReport> {
    let ambient = ring.ambient().clone();
    let mut probes = Vec::new();
    let mut tension_count = 0;
    let mut inconclusive_count = 0;
    for exp in monomials_up_to_degree(&ambient, probe_degree) {
        let probe = Polynomial::monomial(ambient.clone(), exp, 1)?;
        let fc = match frobenius_closure_member(&probe, ideal, ring, e_max, limits) {
            Ok(v) => v,
            Err(Error::ResourceCap(why)) => inconclusive(0, e_max, &why),
            Err(e) => return Err(e),
        };
        let tc = match tight_closure_member_bounded(&probe, ideal, ring, witnesses, 1, e_max, limits)
        {
            Ok(v) => v,
            Err(Error::ResourceCap(why)) => inconclusive(1, e_max, &why),
            Err(e) => return Err(e),
        };
        if fc.status == ClosureStatus::Inconclusive || tc.status == ClosureStatus::Inconclusive {
            inconclusive_count += 1;
        }
        let tension =
            tc.status == ClosureStatus::Member && fc.status == ClosureStatus::NotMemberUpToBound;
        if tension {
            tension_count += 1;
        }
        probes.push(ClosureProbe {
            probe: probe.to_string(),
            frobenius: fc,
            tight: tc,
            tension,
        });
    }
    Ok(ClosureComparisonReport {
        fixture_assertion: "caller asserts the fixture ring is F-coherent (I^F = I^* expected)"
            .into(),
        probe_degree,
        e_max,
        probes,
        tension_count,
        inconclusive_count,
        caveat: "tensions are bounded-evidence observations, never refutations".into(),
    })
}

/// All exponent vectors of total degree 1..=d, in canonical descending
/// order within each degree.
fn monomials_up_to_degree(ring: &Arc<Ring>, d: u64) -> Vec<Vec<u32>> {
    let n = ring.nvars();
    let mut out = Vec::new();
    let mut stack = vec![0u32; n];
    fn rec(out: &mut Vec<Vec<u32>>, stack: &mut Vec<u32>, idx: usize, remaining: u32) {
        if idx + 1 == stack.len() {
            stack[idx] = remaining;
            out.push(stack.clone());
            return;
        }
        for v in (0..=remaining).rev() {
            stack[idx] = v;
            rec(out, stack, idx + 1, remaining - v);
        }
    }
    for deg in 1..=d {
        rec(&mut out, &mut stack, 0, deg as u32);
    }
    out
}
