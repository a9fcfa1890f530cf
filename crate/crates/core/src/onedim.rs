//! One-dimensional F-coherence classification: numerical semigroup
//! rings `k[S]` and parametrized curve algebras
//! `k[g_1(u), ..., g_m(u)] ⊆ k[u]`.
//!
//! In dimension one the normalization criterion is an if-and-only-if:
//! the ring is F-coherent exactly when its normalization is purely
//! inseparable over it. For `k[S]` the normalization is `k[t]` and a
//! certificate always exists; for curve algebras the bounded subalgebra
//! test can certify the positive direction only, so a failed search
//! yields `Unknown` unless the caller supplies a finite obstruction
//! proof.

use crate::charp::TranscriptEntry;
use crate::error::{Error, Result};
use crate::field::PrimeChar;
use crate::groebner::{subalgebra_member, GbLimits};
use crate::poly::{Polynomial, Ring};
use crate::semigroup::FCoherenceVerdict;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// Default exponent bound: `p^5 >= 32` clears every shipped fixture's
/// conductor.
pub const DEFAULT_CURVE_E_MAX: u32 = 5;

// ---------------------------------------------------------------------------
// Numerical semigroups
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
struct NsRepr {
    gens: Vec<u64>,
}

/// A cofinite additive subsemigroup of the naturals, by generators with
/// gcd 1. Caches the minimal member of each residue class modulo the
/// smallest generator, which answers membership, the Frobenius number,
/// and the gap set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "NsRepr", into = "NsRepr")]
pub struct NumericalSemigroup {
    gens: Vec<u64>,
    /// minimal member per residue class mod gens[0]
    apery: Vec<u64>,
    frobenius: i64,
    gaps: Vec<u64>,
}

impl NumericalSemigroup {
    pub fn new(mut gens: Vec<u64>) -> Result<Self> {
        gens.retain(|&g| g > 0);
        gens.sort_unstable();
        gens.dedup();
        if gens.is_empty() {
            return Err(Error::precondition(
                "a numerical semigroup needs positive generators",
            ));
        }
        let g = gens.iter().fold(0u64, |a, &b| gcd(a, b));
        if g != 1 {
            return Err(Error::precondition(format!(
                "generator gcd is {g}, not 1"
            )));
        }
        let a = gens[0] as usize;
        let mut apery: Vec<Option<u64>> = vec![None; a];
        apery[0] = Some(0);
        // relax minimal representatives per residue class
        loop {
            let mut changed = false;
            for r in 0..a {
                if let Some(base) = apery[r] {
                    for &gen in &gens {
                        let nr = (r + gen as usize) % a;
                        let val = base + gen;
                        if apery[nr].map_or(true, |old| val < old) {
                            apery[nr] = Some(val);
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let apery: Vec<u64> = apery
            .into_iter()
            .map(|v| v.expect("gcd 1 reaches every residue class"))
            .collect();
        let frobenius = apery.iter().map(|&v| v as i64).max().unwrap_or(0) - a as i64;
        let mut gaps = Vec::new();
        for n in 1..=frobenius.max(0) as u64 {
            if n < apery[(n % a as u64) as usize] {
                gaps.push(n);
            }
        }
        Ok(NumericalSemigroup {
            gens,
            apery,
            frobenius,
            gaps,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.gens
    }

    /// The largest gap; -1 when the semigroup is all of N.
    pub fn frobenius_number(&self) -> i64 {
        self.frobenius
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn contains(&self, n: u64) -> bool {
        let a = self.gens[0];
        n >= self.apery[(n % a) as usize]
    }
}

impl TryFrom<NsRepr> for NumericalSemigroup {
    type Error = Error;
    fn try_from(r: NsRepr) -> Result<Self> {
        NumericalSemigroup::new(r.gens)
    }
}

impl From<NumericalSemigroup> for NsRepr {
    fn from(s: NumericalSemigroup) -> NsRepr {
        NsRepr { gens: s.gens }
    }
}

/// Classify `k[S]`: always `FCoherent`. The normalization of `k[S]` is
/// `k[t]`, and `t^(p^e)` lands in `k[S]` as soon as `p^e` clears the
/// gaps, which always happens; the one-dimensional criterion then
/// applies. The verdict records the smallest such `e`, re-verified by
/// direct membership.
pub fn ns_classify_fcoherent(s: &NumericalSemigroup, p: PrimeChar) -> Result<FCoherenceVerdict> {
    let mut e = 0u32;
    let mut q: u64 = 1;
    loop {
        if s.contains(q) {
            break;
        }
        q = q.checked_mul(p.get()).ok_or_else(|| {
            Error::precondition("exponent search overflow; generators out of range")
        })?;
        e += 1;
    }
    debug_assert!(s.contains(q));
    Ok(FCoherenceVerdict::f_coherent(
        e,
        format!(
            "p^{e} = {q} lies in the semigroup, so t^(p^{e}) lies in k[S]: the normalization \
             k[t] is purely inseparable over k[S]. A numerical semigroup ring is never \
             NotFCoherent: some p-power always clears the largest gap ({})",
            s.frobenius_number()
        ),
    ))
}

// ---------------------------------------------------------------------------
// Parametrized curve algebras
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CurveRepr {
    #[serde(rename = "char")]
    p: u64,
    gens_in_u: Vec<String>,
}

/// How the `normalization = k[u]` assertion was validated.
#[derive(Debug, Clone, Serialize)]
pub enum NormalizationEvidence {
    /// Every `u^n` for `n` in the window lies in the algebra; the
    /// attained degrees then form a cofinite semigroup and `u` is a
    /// ratio of consecutive powers.
    ConductorWindow { from: u64, to: u64 },
    /// `u^m` lies in the algebra (so `u` is integral) and `u * f` lies
    /// in the algebra for a nonzero member `f` (so `u` is in the
    /// fraction field).
    PowerAndRatio { power: u64, ratio_factor: String },
}

/// A curve algebra `k[g_1(u), ..., g_m(u)]` whose normalization is
/// asserted (and validated at construction) to be `k[u]`.
#[derive(Debug, Clone)]
pub struct CurvePresentation {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    evidence: NormalizationEvidence,
}

impl CurvePresentation {
    pub fn new(p: PrimeChar, gens_in_u: &[String], limits: &GbLimits) -> Result<Self> {
        let ring = Ring::new(p, vec!["u".to_string()])?;
        let gens = crate::parse::parse_polynomials(gens_in_u, &ring)?;
        Self::from_polynomials(ring, gens, limits)
    }

    pub fn from_polynomials(
        ring: Arc<Ring>,
        gens: Vec<Polynomial>,
        limits: &GbLimits,
    ) -> Result<Self> {
        if ring.nvars() != 1 {
            return Err(Error::precondition("curve presentations are univariate"));
        }
        if gens.is_empty() || gens.iter().any(|g| g.is_constant()) {
            return Err(Error::precondition(
                "curve generators must be nonconstant polynomials in u",
            ));
        }
        let evidence = validate_normalization(&ring, &gens, limits)?;
        Ok(CurvePresentation {
            ring,
            gens,
            evidence,
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn normalization_evidence(&self) -> &NormalizationEvidence {
        &self.evidence
    }

    pub fn from_json(text: &str, limits: &GbLimits) -> Result<Self> {
        let repr: CurveRepr = serde_json::from_str(text)
            .map_err(|e| Error::precondition(format!("bad curve description: {e}")))?;
        CurvePresentation::new(PrimeChar::new(repr.p)?, &repr.gens_in_u, limits)
    }
}

/// Validate that `k[u]` is the normalization of the algebra.
///
/// Fast path: if `u^n` is a member for the whole window
/// `n ∈ [2D, 3D]`, `D = max deg g_i`, the attained degree semigroup
/// contains D+1 consecutive integers, hence is cofinite; `u` is then a
/// ratio of consecutive powers and integral via any attained power.
///
/// The window can fail on algebras that still normalize to `k[u]`
/// (none of the odd powers of `u` lie in the coordinate ring of a
/// node), so the fallback certifies the same two facts directly: some
/// `u^m` is a member, and `u * f` is a member for some generator
/// product `f`, putting `u` in the fraction field.
fn validate_normalization(
    ring: &Arc<Ring>,
    gens: &[Polynomial],
    limits: &GbLimits,
) -> Result<NormalizationEvidence> {
    let d = gens.iter().map(|g| g.total_degree()).max().unwrap_or(1);
    let u_power = |n: u64| -> Result<Polynomial> {
        Polynomial::monomial(ring.clone(), vec![n as u32], 1)
    };
    let mut window_ok = true;
    for n in (2 * d)..=(3 * d) {
        if !subalgebra_member(&u_power(n)?, gens, limits)?.member {
            window_ok = false;
            break;
        }
    }
    if window_ok {
        return Ok(NormalizationEvidence::ConductorWindow {
            from: 2 * d,
            to: 3 * d,
        });
    }
    let mut power: Option<u64> = None;
    for m in 1..=(3 * d) {
        if subalgebra_member(&u_power(m)?, gens, limits)?.member {
            power = Some(m);
            break;
        }
    }
    let power = power.ok_or_else(|| {
        Error::precondition(
            "normalization unvalidated: no power of u lies in the algebra within the probe range",
        )
    })?;
    let u = Polynomial::var(ring.clone(), 0)?;
    let mut candidates: Vec<Polynomial> = gens.to_vec();
    for i in 0..gens.len() {
        for j in i..gens.len() {
            candidates.push(gens[i].mul(&gens[j])?);
        }
    }
    for f in &candidates {
        let uf = u.mul(f)?;
        if subalgebra_member(&uf, gens, limits)?.member {
            return Ok(NormalizationEvidence::PowerAndRatio {
                power,
                ratio_factor: f.to_string(),
            });
        }
    }
    Err(Error::precondition(
        "normalization unvalidated: u is not certified to lie in the fraction field",
    ))
}

// ---------------------------------------------------------------------------
// Purely inseparable test and classification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub enum CurvePiOutcome {
    /// `u^(p^e)` lies in the algebra; it suffices to test the single
    /// algebra generator `u` of the normalization, since p-power maps
    /// are ring maps.
    PurelyInseparable { e: u32, representation: String },
    NoCertificateUpToBound { e_max: u32 },
}

#[derive(Debug, Clone, Serialize)]
pub struct CurvePiVerdict {
    pub outcome: CurvePiOutcome,
    pub transcript: Vec<TranscriptEntry>,
}

/// Search `e = 1..=e_max` for `u^(p^e)` in the algebra. A found
/// representation is re-verified by substituting the generators back
/// in; a found certificate is spot-checked at `e + 1` (Frobenius of a
/// member is a member).
pub fn curve_pi_normalization_test(
    cv: &CurvePresentation,
    e_max: u32,
    limits: &GbLimits,
) -> Result<CurvePiVerdict> {
    let p = cv.ring().char_p().get();
    let mut transcript = Vec::new();
    for e in 1..=e_max {
        let target = Polynomial::var(cv.ring().clone(), 0)?.frobenius_power(e)?;
        let m = subalgebra_member(&target, cv.generators(), limits)?;
        transcript.push(TranscriptEntry {
            e,
            condition: format!("u^({p}^{e}) in k[g_1..g_m]"),
            holds: m.member,
        });
        if let Some(rep) = m.representation {
            let evaluated = rep.substitute(cv.generators())?;
            if evaluated != target {
                return Err(Error::precondition(
                    "internal: subalgebra representation failed re-verification",
                ));
            }
            if e < e_max {
                let next = Polynomial::var(cv.ring().clone(), 0)?.frobenius_power(e + 1)?;
                let spot = subalgebra_member(&next, cv.generators(), limits)?;
                transcript.push(TranscriptEntry {
                    e: e + 1,
                    condition: format!("monotonicity spot-check: u^({p}^{})", e + 1),
                    holds: spot.member,
                });
            }
            return Ok(CurvePiVerdict {
                outcome: CurvePiOutcome::PurelyInseparable {
                    e,
                    representation: rep.to_string(),
                },
                transcript,
            });
        }
    }
    Ok(CurvePiVerdict {
        outcome: CurvePiOutcome::NoCertificateUpToBound { e_max },
        transcript,
    })
}

/// Classify the curve algebra. `FCoherent(e)` on a purely inseparable
/// certificate; otherwise `Unknown` with the failed transcript — the
/// bounded test cannot certify that no exponent exists.
pub fn curve_classify_fcoherent(
    cv: &CurvePresentation,
    e_max: u32,
    limits: &GbLimits,
) -> Result<FCoherenceVerdict> {
    let v = curve_pi_normalization_test(cv, e_max, limits)?;
    match v.outcome {
        CurvePiOutcome::PurelyInseparable { e, representation } => {
            Ok(FCoherenceVerdict::f_coherent(
                e,
                format!(
                    "u^(p^{e}) = {representation} in the generators: the normalization k[u] is \
                     purely inseparable, which decides F-coherence in dimension one"
                ),
            )
            .with_transcript(v.transcript))
        }
        CurvePiOutcome::NoCertificateUpToBound { e_max } => Ok(FCoherenceVerdict::unknown(
            format!(
                "no purely-inseparable certificate with e <= {e_max}; the bounded test cannot \
                 certify that no exponent exists"
            ),
        )
        .with_transcript(v.transcript)),
    }
}

/// Classify with a caller-supplied finite obstruction proof. The claim
/// is first checked against the bounded tests: if any tested exponent
/// succeeds, the obstruction is rejected as contradicted.
pub fn curve_classify_with_obstruction(
    cv: &CurvePresentation,
    argument: &str,
    verify_e_bound: u32,
    limits: &GbLimits,
) -> Result<FCoherenceVerdict> {
    let v = curve_pi_normalization_test(cv, verify_e_bound, limits)?;
    match v.outcome {
        CurvePiOutcome::PurelyInseparable { e, .. } => Err(Error::precondition(format!(
            "obstruction contradicted: u^(p^{e}) lies in the algebra"
        ))),
        CurvePiOutcome::NoCertificateUpToBound { .. } => {
            Ok(FCoherenceVerdict::not_f_coherent_curve(
                argument.to_string(),
                verify_e_bound,
                "caller-supplied obstruction, consistent with the bounded tests; by the \
                 one-dimensional criterion the ring is not F-coherent"
                    .to_string(),
            )
            .with_transcript(v.transcript))
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::FCoherenceStatus;

    fn pc(p: u64) -> PrimeChar {
        PrimeChar::new(p).unwrap()
    }

    fn lim() -> GbLimits {
        GbLimits::default()
    }

    fn node(p: u64) -> CurvePresentation {
        CurvePresentation::new(
            pc(p),
            &["u^2-1".to_string(), "u^3-u".to_string()],
            &lim(),
        )
        .unwrap()
    }

    fn cusp(p: u64) -> CurvePresentation {
        CurvePresentation::new(pc(p), &["u^2".to_string(), "u^3".to_string()], &lim()).unwrap()
    }

    #[test]
    fn numerical_semigroup_cache() {
        let s = NumericalSemigroup::new(vec![2, 3]).unwrap();
        assert_eq!(s.frobenius_number(), 1);
        assert_eq!(s.gaps(), &[1]);
        let s2 = NumericalSemigroup::new(vec![3, 5]).unwrap();
        assert_eq!(s2.frobenius_number(), 7);
        assert_eq!(s2.gaps(), &[1, 2, 4, 7]);
        // gcd != 1 rejected
        assert!(NumericalSemigroup::new(vec![2, 4]).is_err());
    }

    #[test]
    fn membership_matches_gap_set() {
        // membership vs gap-set complement up to Frobenius number + 10
        for gens in [vec![2u64, 3], vec![3, 5], vec![4, 6, 9], vec![5, 7, 11]] {
            let s = NumericalSemigroup::new(gens).unwrap();
            let top = (s.frobenius_number().max(0) as u64) + 10;
            for n in 0..=top {
                let in_gaps = s.gaps().contains(&n);
                assert_eq!(s.contains(n), !in_gaps, "n = {n}");
            }
        }
    }

    #[test]
    fn ns_classification_is_always_coherent() {
        let s = NumericalSemigroup::new(vec![2, 3]).unwrap();
        for (p, expect_e) in [(2u64, 1u32), (3, 1), (7, 1)] {
            let v = ns_classify_fcoherent(&s, pc(p)).unwrap();
            assert_eq!(v.status, FCoherenceStatus::FCoherent);
            assert_eq!(v.certificate.as_ref().unwrap().e, expect_e, "p = {p}");
            // re-verify the certificate by direct membership
            assert!(s.contains(p.pow(expect_e)));
            assert!(v.evidence.contains("never"));
        }
        // S = N: the ring is regular, e = 0
        let all = NumericalSemigroup::new(vec![1]).unwrap();
        let v = ns_classify_fcoherent(&all, pc(5)).unwrap();
        assert_eq!(v.certificate.unwrap().e, 0);
        // a deeper gap: <3,5> at p = 2 needs 2^3 = 8
        let s35 = NumericalSemigroup::new(vec![3, 5]).unwrap();
        let v35 = ns_classify_fcoherent(&s35, pc(2)).unwrap();
        assert_eq!(v35.certificate.unwrap().e, 3);
    }

    #[test]
    fn cusp_validates_through_the_window() {
        let cv = cusp(5);
        assert!(matches!(
            cv.normalization_evidence(),
            NormalizationEvidence::ConductorWindow { from: 6, to: 9 }
        ));
    }

    #[test]
    fn node_validates_through_power_and_ratio() {
        // odd powers of u never lie in the node algebra, so the window
        // fails; u = (u^3 - u)/(u^2 - 1) certifies the fraction field.
        let cv = node(3);
        match cv.normalization_evidence() {
            NormalizationEvidence::PowerAndRatio { power, .. } => assert_eq!(*power, 2),
            other => panic!("expected power-and-ratio evidence, got {other:?}"),
        }
    }

    #[test]
    fn unvalidatable_presentation_is_an_error() {
        // k[u^2] normalizes to itself, not to k[u]
        let res = CurvePresentation::new(pc(3), &["u^2".to_string()], &lim());
        assert!(matches!(res, Err(Error::Precondition(msg)) if msg.contains("unvalidated")));
    }

    #[test]
    fn node_purely_inseparable_only_in_char_2() {
        // p = 2: u^2 = (u^2 - 1) + 1
        let v = curve_pi_normalization_test(&node(2), 5, &lim()).unwrap();
        match &v.outcome {
            CurvePiOutcome::PurelyInseparable { e, representation } => {
                assert_eq!(*e, 1);
                assert_eq!(representation, "y1+1");
            }
            other => panic!("expected certificate, got {other:?}"),
        }
        // p = 3: no certificate in the window
        let v3 = curve_pi_normalization_test(&node(3), 5, &lim()).unwrap();
        assert!(matches!(
            v3.outcome,
            CurvePiOutcome::NoCertificateUpToBound { e_max: 5 }
        ));
        assert_eq!(v3.transcript.len(), 5);
        assert!(v3.transcript.iter().all(|t| !t.holds));
        assert_eq!(
            v3.transcript.iter().map(|t| t.e).collect::<Vec<_>>(),
            vec![1, 2, 3, 4, 5]
        );
    }

    #[test]
    fn cusp_certificate_by_hand() {
        // u^5 = u^2 * u^3 at p = 5
        let v = curve_pi_normalization_test(&cusp(5), 5, &lim()).unwrap();
        match &v.outcome {
            CurvePiOutcome::PurelyInseparable { e, representation } => {
                assert_eq!(*e, 1);
                assert_eq!(representation, "y1*y2");
            }
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn classify_node_and_cusp() {
        let v2 = curve_classify_fcoherent(&node(2), 5, &lim()).unwrap();
        assert_eq!(v2.status, FCoherenceStatus::FCoherent);
        assert_eq!(v2.certificate.as_ref().unwrap().e, 1);
        for p in [3, 5] {
            let v = curve_classify_fcoherent(&node(p), 5, &lim()).unwrap();
            assert_eq!(v.status, FCoherenceStatus::Unknown, "p = {p}");
            assert_eq!(v.transcript.len(), 5);
        }
        for p in [2, 3, 5, 7] {
            let v = curve_classify_fcoherent(&cusp(p), 5, &lim()).unwrap();
            assert_eq!(v.status, FCoherenceStatus::FCoherent, "p = {p}");
            assert_eq!(v.certificate.as_ref().unwrap().e, 1);
        }
    }

    #[test]
    fn obstruction_path() {
        // node at p = 3 with the parity argument: only even powers of u
        // lie in the algebra, and 3^e is odd
        let v = curve_classify_with_obstruction(
            &node(3),
            "only even powers of u lie in the algebra; p^e is odd for p = 3",
            5,
            &lim(),
        )
        .unwrap();
        assert_eq!(v.status, FCoherenceStatus::NotFCoherent);
        assert!(v.witness.is_some());
        // contradicted obstruction rejected
        assert!(curve_classify_with_obstruction(&node(2), "bogus", 5, &lim()).is_err());
    }

    #[test]
    fn curve_json_round_trip() {
        let cv = CurvePresentation::from_json(
            r#"{"char":3,"gens_in_u":["u^2-1","u^3-u"]}"#,
            &lim(),
        )
        .unwrap();
        assert_eq!(cv.generators().len(), 2);
        assert_eq!(cv.ring().char_p().get(), 3);
    }

    #[test]
    fn monotonicity_spot_check_present() {
        let v = curve_pi_normalization_test(&cusp(2), 4, &lim()).unwrap();
        // e = 1 certificate, spot check at e = 2 recorded
        assert_eq!(v.transcript.len(), 2);
        assert!(v.transcript[1].condition.contains("spot-check"));
        assert!(v.transcript[1].holds);
    }
}
