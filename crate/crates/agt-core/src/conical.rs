//! Conical-limit classification along periodic rays, and the separation
//! experiment that tells quasi-kernels apart by their conical limit sets.
//!
//! A geodesic ray in the Cayley tree of `F_r` of the form `p·w^∞`
//! (eventually periodic) lands in the conical limit set of the
//! quasi-kernel `Λ_u` exactly when the counting quasimorphism `φ_u`
//! stays bounded along it, and for periodic rays boundedness reduces to
//! one exact integer: the slope `φ_u^cyc(w)`. Distinct patterns (up to
//! inversion) have distinct conical limit sets, and a separating ray can
//! be found by exhaustive search: a cyclically reduced `w` whose slope
//! vanishes for one pattern but not the other.
//!
//! The composition operation glues two prepared words with a pair of
//! blockers into a cyclically reduced word whose pattern occurrences are
//! confined to the prepared segments — the combinatorial engine behind
//! the separation theorem — and re-verifies that confinement by direct
//! counting on small powers.

use std::fmt;

use crate::blockers::{find_blocker, BlockerOutcome};
use crate::par;
use crate::qm::CountingQm;
use crate::word::{count_occurrences, is_non_self_overlapping, Letter, ReducedWord};
use crate::{Budget, Error, Result};

/// Validates a pattern for conical-limit analysis: cyclically reduced,
/// non-self-overlapping, of length at least 2.
fn require_separating_pattern(u: &ReducedWord) -> Result<()> {
    if !is_non_self_overlapping(u)? {
        return Err(Error::PatternInvalid {
            reason: format!("pattern {u} overlaps itself (a proper prefix equals a proper suffix)"),
        });
    }
    Ok(())
}

/// All separating patterns of length `2..=max_len`: cyclically reduced,
/// non-self-overlapping words, in shortlex order.
pub fn separating_patterns(rank: u32, max_len: usize, budget: &Budget) -> Result<Vec<ReducedWord>> {
    let mut sphere = singleton_sphere(rank)?;
    let mut enumerated = sphere.len();
    let mut patterns = Vec::new();
    for _len in 2..=max_len {
        sphere = extend_sphere(rank, &sphere)?;
        enumerated = enumerated.saturating_add(sphere.len());
        budget.admit(enumerated)?;
        patterns.extend(
            sphere
                .iter()
                .filter(|w| w.is_cyclically_reduced())
                .filter(|w| is_non_self_overlapping(w).unwrap_or(false))
                .cloned(),
        );
    }
    Ok(patterns)
}

/// The words of length 1, in shortlex order.
fn singleton_sphere(rank: u32) -> Result<Vec<ReducedWord>> {
    Letter::alphabet(rank)
        .into_iter()
        .map(|l| ReducedWord::reduce(rank, &[l]))
        .collect()
}

/// Extends a sphere of reduced words by one non-cancelling letter each,
/// preserving shortlex order.
fn extend_sphere(rank: u32, sphere: &[ReducedWord]) -> Result<Vec<ReducedWord>> {
    let letters = Letter::alphabet(rank);
    let mut out = Vec::with_capacity(sphere.len() * letters.len().saturating_sub(1));
    let mut buf = Vec::new();
    for w in sphere {
        let last = *w.letters().last().expect("spheres hold nonempty words");
        for &l in &letters {
            if l == last.inverse() {
                continue;
            }
            buf.clear();
            buf.extend_from_slice(w.letters());
            buf.push(l);
            out.push(ReducedWord::reduce(rank, &buf)?);
        }
    }
    Ok(out)
}

/// An eventually periodic geodesic ray `p·w^∞` in the Cayley tree.
///
/// The construction verifies that `p·w·w` multiplies without
/// cancellation, which (together with the period being cyclically
/// reduced) guarantees that every finite stretch `p·wⁿ` is reduced — so
/// the prefixes really trace out a geodesic ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicRay {
    prefix: ReducedWord,
    period: ReducedWord,
}

impl PeriodicRay {
    /// A ray with the given prefix and repeating period.
    pub fn new(prefix: ReducedWord, period: ReducedWord) -> Result<PeriodicRay> {
        if prefix.rank() != period.rank() {
            return Err(Error::RankMismatch {
                left: prefix.rank(),
                right: period.rank(),
            });
        }
        if period.is_empty() {
            return Err(Error::EmptyWord);
        }
        if !period.is_cyclically_reduced() {
            return Err(Error::PatternNotCyclicallyReduced);
        }
        let doubled = prefix.mul(&period)?.mul(&period)?;
        if doubled.len() != prefix.len() + 2 * period.len() {
            return Err(Error::PatternInvalid {
                reason: format!(
                    "prefix {prefix} and period {period} cancel; the ray would not be geodesic"
                ),
            });
        }
        Ok(PeriodicRay { prefix, period })
    }

    /// Rank of the ambient free group.
    pub fn rank(&self) -> u32 {
        self.prefix.rank()
    }

    /// The non-repeating initial segment.
    pub fn prefix(&self) -> &ReducedWord {
        &self.prefix
    }

    /// The repeating period.
    pub fn period(&self) -> &ReducedWord {
        &self.period
    }

    /// The ray point `p·wⁿ` (a prefix of the geodesic).
    pub fn point(&self, n: u32) -> ReducedWord {
        self.prefix
            .mul(&self.period.pow(i64::from(n)))
            .expect("ray invariant keeps products reduced")
    }
}

impl fmt::Display for PeriodicRay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.prefix.is_empty() {
            write!(f, "({})^∞", self.period)
        } else {
            write!(f, "{}·({})^∞", self.prefix, self.period)
        }
    }
}

/// Verdict on one ray: conical for the pattern's quasi-kernel or not,
/// with the exact slope that decides it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Conicality {
    /// Whether the ray lies in the conical limit set of the quasi-kernel.
    pub conical: bool,
    /// The drift `φ_u^cyc(period)` per period step.
    pub slope: i64,
}

/// Classifies a periodic ray against the quasi-kernel of `φ_u`.
///
/// The ray is conical exactly when `φ_u` stays bounded along it, and
/// for a periodic ray that happens exactly when the per-period slope
/// `φ_u^cyc(period)` vanishes. The pattern must be cyclically reduced,
/// non-self-overlapping, and of length at least 2.
pub fn is_conical(u: &ReducedWord, ray: &PeriodicRay) -> Result<Conicality> {
    require_separating_pattern(u)?;
    if u.rank() != ray.rank() {
        return Err(Error::RankMismatch {
            left: u.rank(),
            right: ray.rank(),
        });
    }
    let qm = CountingQm::new(u.clone())?;
    let slope = qm.phi_cyc(ray.period())?;
    Ok(Conicality {
        conical: slope == 0,
        slope,
    })
}

/// Empirical cross-check of the slope criterion: the largest deviation
/// `|φ_u(p·wⁿ) − n·slope|` over `0 ≤ n ≤ max_power`.
///
/// For a genuine periodic ray this stabilizes after small `n` — the
/// deviation is confined to the prefix and the junction — so the bound
/// certifies that `φ_u` drifts linearly with exactly the predicted
/// slope, staying bounded precisely in the slope-zero case.
pub fn drift_bound(u: &ReducedWord, ray: &PeriodicRay, max_power: u32) -> Result<i64> {
    let verdict = is_conical(u, ray)?;
    let qm = CountingQm::new(u.clone())?;
    let mut bound = 0i64;
    for n in 0..=max_power {
        let value = qm.phi(&ray.point(n))?;
        bound = bound.max((value - i64::from(n) * verdict.slope).abs());
    }
    Ok(bound)
}

/// Outcome of the conical separation experiment for two patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparationOutcome {
    /// A periodic ray direction on which exactly one of the two slopes
    /// vanishes: the ray is conical for one quasi-kernel but not the
    /// other, so the conical limit sets differ.
    Witness {
        /// The separating period (cyclically reduced).
        w: ReducedWord,
        /// Slope of the first pattern on `w`.
        phi_u: i64,
        /// Slope of the second pattern on `w`.
        phi_v: i64,
    },
    /// The patterns agree up to inversion, and the scan confirmed that
    /// no separating direction exists in the search space.
    AllAgree {
        /// Largest period length scanned.
        searched_to: usize,
    },
    /// The patterns are genuinely distinct but the scan ran out before
    /// finding a witness; a larger bound is needed.
    SearchExhausted {
        /// Largest period length scanned.
        searched_to: usize,
    },
}

impl SeparationOutcome {
    /// The separating period, when one was found.
    pub fn witness(&self) -> Option<&ReducedWord> {
        match self {
            SeparationOutcome::Witness { w, .. } => Some(w),
            _ => None,
        }
    }

    /// Whether the outcome certifies agreement (equal conical limit sets
    /// as far as the scan reached, for patterns equal up to inversion).
    pub fn is_all_agree(&self) -> bool {
        matches!(self, SeparationOutcome::AllAgree { .. })
    }
}

impl fmt::Display for SeparationOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeparationOutcome::Witness { w, phi_u, phi_v } => {
                write!(f, "witness {w} (slopes {phi_u} vs {phi_v})")
            }
            SeparationOutcome::AllAgree { searched_to } => {
                write!(f, "all directions agree up to length {searched_to}")
            }
            SeparationOutcome::SearchExhausted { searched_to } => {
                write!(f, "no witness up to length {searched_to}")
            }
        }
    }
}

/// Searches for a periodic ray direction separating the conical limit
/// sets of two quasi-kernels.
///
/// Scans cyclically reduced words by length, then shortlex, and returns
/// the first `w` where exactly one of `φ_u^cyc(w)`, `φ_v^cyc(w)` is
/// zero. For patterns equal up to inversion the slopes share a zero set,
/// so no witness can exist: the scan confirms this and reports
/// [`SeparationOutcome::AllAgree`]. For distinct patterns an exhausted
/// scan reports [`SeparationOutcome::SearchExhausted`] as a value — a
/// larger bound, not an error.
pub fn separate(
    u: &ReducedWord,
    v: &ReducedWord,
    max_len: usize,
    budget: &Budget,
) -> Result<SeparationOutcome> {
    require_separating_pattern(u)?;
    require_separating_pattern(v)?;
    if u.rank() != v.rank() {
        return Err(Error::RankMismatch {
            left: u.rank(),
            right: v.rank(),
        });
    }
    let qm_u = CountingQm::new(u.clone())?;
    let qm_v = CountingQm::new(v.clone())?;

    let mut sphere = singleton_sphere(u.rank())?;
    let mut enumerated = sphere.len();
    for len in 1..=max_len {
        if len > 1 {
            sphere = extend_sphere(u.rank(), &sphere)?;
            enumerated = enumerated.saturating_add(sphere.len());
        }
        budget.admit(enumerated)?;
        let periods: Vec<ReducedWord> = sphere
            .iter()
            .filter(|w| w.is_cyclically_reduced())
            .cloned()
            .collect();
        let slopes = par::try_map_slice(&periods, |w| {
            Ok::<_, Error>((qm_u.phi_cyc(w)?, qm_v.phi_cyc(w)?))
        })?;
        for (w, &(phi_u, phi_v)) in periods.iter().zip(&slopes) {
            if (phi_u == 0) != (phi_v == 0) {
                return Ok(SeparationOutcome::Witness {
                    w: w.clone(),
                    phi_u,
                    phi_v,
                });
            }
        }
    }
    if v == u || *v == u.inverse() {
        Ok(SeparationOutcome::AllAgree {
            searched_to: max_len,
        })
    } else {
        Ok(SeparationOutcome::SearchExhausted {
            searched_to: max_len,
        })
    }
}

/// Two prepared words glued by a pair of blockers into one cyclically
/// reduced word whose pattern occurrences all lie inside the prepared
/// segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockerComposition {
    w: ReducedWord,
    z: ReducedWord,
    composite: ReducedWord,
    phi_left: i64,
    phi_right: i64,
}

impl BlockerComposition {
    /// The blocker between the left and right segments.
    pub fn w(&self) -> &ReducedWord {
        &self.w
    }

    /// The blocker closing the cycle (between right and left).
    pub fn z(&self) -> &ReducedWord {
        &self.z
    }

    /// The glued word `left·w·right·z`, reduced and cyclically reduced.
    pub fn composite(&self) -> &ReducedWord {
        &self.composite
    }

    /// `φ_u` of the left segment.
    pub fn phi_left(&self) -> i64 {
        self.phi_left
    }

    /// `φ_u` of the right segment.
    pub fn phi_right(&self) -> i64 {
        self.phi_right
    }

    /// `φ_u^cyc(composite)`: occurrences are confined to the segments,
    /// so the cyclic value is exactly the sum of the segment values.
    pub fn cyclic_value(&self) -> i64 {
        self.phi_left + self.phi_right
    }
}

/// Glues `left` and `right` with two blockers into a cyclically reduced
/// word whose `u^{±1}`-copies all lie inside the two segments.
///
/// One blocker `w` guards the junction `left·w·right`, the other `z`
/// guards `right·z·left` — which is the wrap-around junction once the
/// word is read cyclically. Both segments must be at least as long as
/// the pattern, so no copy can bridge across a whole blocker into both
/// segments. The confinement claim is re-verified literally: for
/// `n ≤ 3`, the count of `u` and of `u⁻¹` in `compositeⁿ` must equal
/// `n` times the segment counts.
pub fn blocker_compose(
    u: &ReducedWord,
    left: &ReducedWord,
    right: &ReducedWord,
    max_len: u32,
) -> Result<BlockerComposition> {
    for side in [left, right] {
        if side.len() < u.len() {
            return Err(Error::TooShort {
                min: u.len(),
                len: side.len(),
            });
        }
    }
    let w = match find_blocker(u, left, right, max_len)? {
        BlockerOutcome::Found { w, .. } => w,
        BlockerOutcome::NotFound { searched_to } => {
            return Err(Error::BlockerNotFound {
                searched_to: searched_to as usize,
            })
        }
    };
    let z = match find_blocker(u, right, left, max_len)? {
        BlockerOutcome::Found { w, .. } => w,
        BlockerOutcome::NotFound { searched_to } => {
            return Err(Error::BlockerNotFound {
                searched_to: searched_to as usize,
            })
        }
    };

    let composite = left.mul(&w)?.mul(right)?.mul(&z)?;
    assert_eq!(
        composite.len(),
        left.len() + w.len() + right.len() + z.len(),
        "blocker junctions must not cancel"
    );
    assert!(
        composite.is_cyclically_reduced(),
        "closing junction must not cancel"
    );

    let u_inv = u.inverse();
    let count_left = count_occurrences(u, left)?;
    let count_right = count_occurrences(u, right)?;
    let count_inv_left = count_occurrences(&u_inv, left)?;
    let count_inv_right = count_occurrences(&u_inv, right)?;
    for n in 1..=3 {
        let power = composite.pow(n);
        assert_eq!(
            count_occurrences(u, &power)?,
            n as usize * (count_left + count_right),
            "a pattern copy escaped the segments in the {n}-th power"
        );
        assert_eq!(
            count_occurrences(&u_inv, &power)?,
            n as usize * (count_inv_left + count_inv_right),
            "an inverse-pattern copy escaped the segments in the {n}-th power"
        );
    }

    let phi_left = count_left as i64 - count_inv_left as i64;
    let phi_right = count_right as i64 - count_inv_right as i64;
    if u.is_cyclically_reduced() {
        let qm = CountingQm::new(u.clone())?;
        assert_eq!(
            qm.phi_cyc(&composite)?,
            phi_left + phi_right,
            "cyclic count and confined segment counts disagree"
        );
    }
    Ok(BlockerComposition {
        w,
        z,
        composite,
        phi_left,
        phi_right,
    })
}
