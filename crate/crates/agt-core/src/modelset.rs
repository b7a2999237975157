//! Cut-and-project model sets on the line from real quadratic rings.
//!
//! A quadratic ring `ℤ[ω]` (here `ω = √2` or the golden ratio `φ`)
//! embeds as a lattice in the plane via `x ↦ (x, σ(x))`, where `σ` is
//! the nontrivial ring automorphism. Cutting with a window `W = [−s, s]`
//! on the internal axis and projecting to the physical axis yields the
//! model set `Λ(W) = { x ∈ ℤ[ω] : σ(x) ∈ W }` — a Delone set that is an
//! approximate lattice: sums leave `Λ(W)` but only as far as `Λ(2W)`,
//! which a fixed finite translator set pulls back into `Λ(W)`.
//!
//! Every membership and ordering decision here is exact integer
//! arithmetic on the `(a, b)` coordinates of `a + bω`; no floating point
//! enters any decision (floats appear only in decimal renderings).
//! Samples materialize the points with physical coordinate in `[−R, R]`,
//! and the statistics (gap spectra, Delone parameters, covering
//! translators, nested-window inclusions) are computed from those
//! exactly.

use std::fmt;

use num_rational::Rational64;

use crate::par;
use crate::{Budget, Error, Result};

/// The real quadratic ring a scheme lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadRing {
    /// `ℤ[√2]`, with `σ(a + b√2) = a − b√2`.
    Sqrt2,
    /// `ℤ[φ]` for the golden ratio `φ² = φ + 1`, with `σ(φ) = 1 − φ`.
    Golden,
}

impl QuadRing {
    /// Decimal value of the generator `ω` (rendering only, never used
    /// in membership or ordering decisions).
    pub fn omega_value(self) -> f64 {
        match self {
            QuadRing::Sqrt2 => std::f64::consts::SQRT_2,
            QuadRing::Golden => (1.0 + 5.0f64.sqrt()) / 2.0,
        }
    }

    fn omega_symbol(self) -> &'static str {
        match self {
            QuadRing::Sqrt2 => "√2",
            QuadRing::Golden => "φ",
        }
    }
}

impl fmt::Display for QuadRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadRing::Sqrt2 => write!(f, "ℤ[√2]"),
            QuadRing::Golden => write!(f, "ℤ[φ]"),
        }
    }
}

/// Sign of `A + B√d` for a nonsquare `d > 0`, by integer case analysis.
///
/// Mixed-sign cases compare `A²` against `dB²`; equality there is
/// impossible for nonsquare `d` with `B ≠ 0`, so the answer is exact.
fn surd_sign(a: i128, b: i128, d: i128) -> std::cmp::Ordering {
    use std::cmp::Ordering::*;
    match (a.signum(), b.signum()) {
        (0, 0) => Equal,
        (1, 0) | (1, 1) | (0, 1) => Greater,
        (-1, 0) | (-1, -1) | (0, -1) => Less,
        (1, -1) => (a * a).cmp(&(d * b * b)),
        (-1, 1) => (d * b * b).cmp(&(a * a)),
        _ => unreachable!("signum returns -1, 0, or 1"),
    }
}

/// An element `a + bω` of a real quadratic ring, with exact arithmetic.
///
/// Ordering by real value and comparison against rationals are decided
/// by integer case analysis (rationalizing through the conjugate), never
/// by floating point. The derived equality is coordinatewise, which
/// coincides with equality of real values because `ω` is irrational.
///
/// # Panics
///
/// The arithmetic methods panic when combining elements of different
/// rings; a mixed-ring expression is a programming error, not a
/// recoverable condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadElement {
    ring: QuadRing,
    a: i64,
    b: i64,
}

impl QuadElement {
    /// The element `a + bω`.
    pub fn new(ring: QuadRing, a: i64, b: i64) -> QuadElement {
        QuadElement { ring, a, b }
    }

    /// The zero element of the ring.
    pub fn zero(ring: QuadRing) -> QuadElement {
        QuadElement { ring, a: 0, b: 0 }
    }

    /// The ring this element belongs to.
    pub fn ring(&self) -> QuadRing {
        self.ring
    }

    /// The rational coordinate `a`.
    pub fn a(&self) -> i64 {
        self.a
    }

    /// The `ω`-coordinate `b`.
    pub fn b(&self) -> i64 {
        self.b
    }

    fn require_same_ring(self, other: QuadElement) {
        assert_eq!(
            self.ring, other.ring,
            "cannot combine elements of different quadratic rings"
        );
    }

    /// Sum.
    pub fn add(self, other: QuadElement) -> QuadElement {
        self.require_same_ring(other);
        QuadElement::new(self.ring, self.a + other.a, self.b + other.b)
    }

    /// Difference.
    pub fn sub(self, other: QuadElement) -> QuadElement {
        self.require_same_ring(other);
        QuadElement::new(self.ring, self.a - other.a, self.b - other.b)
    }

    /// Negation.
    pub fn neg(self) -> QuadElement {
        QuadElement::new(self.ring, -self.a, -self.b)
    }

    /// Product, reduced through the ring's defining relation
    /// (`(√2)² = 2`, `φ² = φ + 1`).
    pub fn mul(self, other: QuadElement) -> QuadElement {
        self.require_same_ring(other);
        let (a, b, c, d) = (self.a, self.b, other.a, other.b);
        match self.ring {
            QuadRing::Sqrt2 => QuadElement::new(self.ring, a * c + 2 * b * d, a * d + b * c),
            QuadRing::Golden => {
                QuadElement::new(self.ring, a * c + b * d, a * d + b * c + b * d)
            }
        }
    }

    /// The Galois conjugate `σ(a + bω)`.
    pub fn conjugate(self) -> QuadElement {
        match self.ring {
            QuadRing::Sqrt2 => QuadElement::new(self.ring, self.a, -self.b),
            QuadRing::Golden => QuadElement::new(self.ring, self.a + self.b, -self.b),
        }
    }

    /// Surd form `(A, B, d)` with `sign(self) = sign(A + B√d)`.
    ///
    /// `a + b√2` is already in surd form; `a + bφ = ((2a+b) + b√5)/2`,
    /// and the positive denominator does not affect the sign.
    fn surd(self) -> (i128, i128, i128) {
        let (a, b) = (self.a as i128, self.b as i128);
        match self.ring {
            QuadRing::Sqrt2 => (a, b, 2),
            QuadRing::Golden => (2 * a + b, b, 5),
        }
    }

    /// Sign of the real value, decided exactly.
    pub fn sign(self) -> std::cmp::Ordering {
        let (a, b, d) = self.surd();
        surd_sign(a, b, d)
    }

    /// Ordering by real value.
    pub fn value_cmp(self, other: QuadElement) -> std::cmp::Ordering {
        self.sub(other).sign()
    }

    /// Ordering of the real value against a rational, decided exactly:
    /// `a + bω ⋛ p/q` reduces to the sign of `(qa − p) + qb·ω`.
    pub fn cmp_rational(self, r: Rational64) -> std::cmp::Ordering {
        let p = *r.numer() as i128;
        let q = *r.denom() as i128; // normalized positive
        let (a, b) = (self.a as i128, self.b as i128);
        match self.ring {
            QuadRing::Sqrt2 => surd_sign(q * a - p, q * b, 2),
            QuadRing::Golden => surd_sign(2 * (q * a - p) + q * b, q * b, 5),
        }
    }

    /// Whether `|value| ≤ r`.
    pub fn abs_le(self, r: Rational64) -> bool {
        self.cmp_rational(r) != std::cmp::Ordering::Greater
            && self.cmp_rational(-r) != std::cmp::Ordering::Less
    }

    /// Decimal rendering of the real value (display only).
    pub fn to_f64(self) -> f64 {
        self.a as f64 + self.b as f64 * self.ring.omega_value()
    }
}

impl fmt::Display for QuadElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let omega = self.ring.omega_symbol();
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, 1) => write!(f, "{omega}"),
            (0, -1) => write!(f, "-{omega}"),
            (0, b) => write!(f, "{b}{omega}"),
            (a, 1) => write!(f, "{a}+{omega}"),
            (a, -1) => write!(f, "{a}-{omega}"),
            (a, b) if b > 0 => write!(f, "{a}+{b}{omega}"),
            (a, b) => write!(f, "{a}-{}{omega}", -b),
        }
    }
}

/// A cut-and-project scheme: a quadratic ring together with a closed
/// symmetric window `W = [−s, s]` on the internal axis.
///
/// Windows are closed so that the sample symmetry `x ∈ Λ ⟺ −x ∈ Λ` is
/// exact including boundary points; `s = 0` (the degenerate window
/// `{0}`) is allowed and cuts out only the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CpScheme {
    ring: QuadRing,
    half_width: Rational64,
}

impl CpScheme {
    /// A scheme with window `[−s, s]`; `s` must be nonnegative.
    pub fn new(ring: QuadRing, half_width: Rational64) -> Result<CpScheme> {
        if half_width < Rational64::from_integer(0) {
            return Err(Error::InvalidWindow(format!(
                "window half-width must be nonnegative, got {half_width}"
            )));
        }
        Ok(CpScheme { ring, half_width })
    }

    /// The ring.
    pub fn ring(&self) -> QuadRing {
        self.ring
    }

    /// The window half-width `s`.
    pub fn half_width(&self) -> Rational64 {
        self.half_width
    }

    /// Whether `σ(x)` lies in the window `[−s, s]`, decided exactly.
    pub fn window_contains(&self, x: QuadElement) -> bool {
        self.window_contains_dilated(x, 1)
    }

    /// Whether `σ(x)` lies in the dilated window `[−ks, ks]`.
    ///
    /// Dilations of the window matter because internal coordinates add:
    /// sums of window points land in the doubled window, and covering
    /// translators live in the tripled one.
    pub fn window_contains_dilated(&self, x: QuadElement, k: u32) -> bool {
        assert_eq!(self.ring, x.ring(), "element belongs to a different ring");
        let bound = self.half_width * Rational64::from_integer(i64::from(k));
        x.conjugate().abs_le(bound)
    }

    /// The scheme with window shrunk to `[−s/2ᵏ, s/2ᵏ]`.
    ///
    /// Halving windows are the good-model ladder: `W_{k+1} + W_{k+1}`
    /// equals `W_k` exactly, so sums descend one level per step.
    pub fn shrunk(&self, k: u32) -> CpScheme {
        assert!(k < 62, "window shrink level out of range");
        CpScheme {
            ring: self.ring,
            half_width: self.half_width / Rational64::from_integer(1i64 << k),
        }
    }
}

impl fmt::Display for CpScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} with window [-{s}, {s}]", self.ring, s = self.half_width)
    }
}

/// The finite piece `Λ(W) ∩ [−R, R]` of a model set, sorted by value.
///
/// Contains exactly the ring elements with physical coordinate in
/// `[−R, R]` and internal coordinate in the window; always symmetric
/// about `0` and containing `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelSetSample {
    scheme: CpScheme,
    radius: Rational64,
    points: Vec<QuadElement>,
}

impl ModelSetSample {
    /// Materializes `Λ(W) ∩ [−R, R]` by exact enumeration.
    ///
    /// Candidate `(a, b)` ranges follow from the triangle bounds
    /// `|x ± σ(x)| ≤ R + s`: for `ℤ[√2]`, `2a = x + σ` and
    /// `2b√2 = x − σ`; for `ℤ[φ]`, `b√5 = x − σ` and `2a + b = x + σ`.
    /// Both coordinates are therefore bounded by `R + s` in absolute
    /// value, and the scan over that rectangle is charged to the budget.
    pub fn generate(scheme: CpScheme, radius: Rational64, budget: &Budget) -> Result<ModelSetSample> {
        if radius <= Rational64::from_integer(0) {
            return Err(Error::InvalidWindow(format!(
                "physical radius must be positive, got {radius}"
            )));
        }
        let reach = (radius + scheme.half_width()).ceil().to_integer() + 1;
        let side = usize::try_from(2 * reach + 1).expect("radius fits in usize");
        budget.admit(side.saturating_mul(side))?;

        let a_values: Vec<i64> = (-reach..=reach).collect();
        let mut points = par::flat_map_slice(&a_values, |&a| {
            (-reach..=reach)
                .map(|b| QuadElement::new(scheme.ring(), a, b))
                .filter(|x| x.abs_le(radius) && scheme.window_contains(*x))
                .collect::<Vec<_>>()
        });
        points.sort_by(|x, y| x.value_cmp(*y));

        let sample = ModelSetSample {
            scheme,
            radius,
            points,
        };
        debug_assert!(sample.contains(QuadElement::zero(scheme.ring())));
        debug_assert!(sample.points.iter().all(|p| sample.contains(p.neg())));
        Ok(sample)
    }

    /// The scheme the sample was cut from.
    pub fn scheme(&self) -> &CpScheme {
        &self.scheme
    }

    /// The physical horizon `R`.
    pub fn radius(&self) -> Rational64 {
        self.radius
    }

    /// The points, sorted ascending by value.
    pub fn points(&self) -> &[QuadElement] {
        &self.points
    }

    /// Number of points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Whether the sample is empty (never, for a valid generation).
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Exact membership, by binary search on the value order.
    pub fn contains(&self, x: QuadElement) -> bool {
        self.points.binary_search_by(|p| p.value_cmp(x)).is_ok()
    }

    /// The points with `|value| ≤ r`.
    pub fn restricted(&self, r: Rational64) -> Vec<QuadElement> {
        self.points.iter().copied().filter(|p| p.abs_le(r)).collect()
    }

    /// Consecutive gaps, in order.
    pub fn gaps(&self) -> Vec<QuadElement> {
        self.points.windows(2).map(|w| w[1].sub(w[0])).collect()
    }
}

/// Delone statistics of a sample: extreme and distinct interior gaps.
///
/// Interior means the first and last gap are dropped — those touch the
/// artificial horizon `±R` and can be truncation artifacts rather than
/// features of the infinite model set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeloneParams {
    /// Smallest interior gap (uniform discreteness scale).
    pub min_gap: QuadElement,
    /// Largest interior gap (relative denseness scale).
    pub max_gap: QuadElement,
    /// Distinct interior gap values, sorted ascending.
    pub distinct_gaps: Vec<QuadElement>,
    /// Number of interior gaps measured.
    pub interior_gaps: usize,
}

/// Measures the interior gap spectrum of a sample.
///
/// Needs at least 4 points: with fewer there is no gap strictly between
/// the two boundary gaps, so nothing interior to report.
pub fn delone_params(sample: &ModelSetSample) -> Result<DeloneParams> {
    if sample.len() < 4 {
        return Err(Error::TooFewPoints {
            min: 4,
            got: sample.len(),
        });
    }
    let gaps = sample.gaps();
    let interior = &gaps[1..gaps.len() - 1];
    let min_gap = *interior
        .iter()
        .min_by(|x, y| x.value_cmp(**y))
        .expect("interior is nonempty");
    let max_gap = *interior
        .iter()
        .max_by(|x, y| x.value_cmp(**y))
        .expect("interior is nonempty");
    let mut distinct_gaps = interior.to_vec();
    distinct_gaps.sort_by(|x, y| x.value_cmp(*y));
    distinct_gaps.dedup();
    Ok(DeloneParams {
        min_gap,
        max_gap,
        distinct_gaps,
        interior_gaps: interior.len(),
    })
}

/// A verified additive covering: every pairwise sum of inner points
/// decomposes as a sample point plus one of finitely many translators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumCover {
    translators: Vec<QuadElement>,
    inner_radius: Rational64,
    sums_checked: usize,
}

impl SumCover {
    /// The translator set `F`, sorted ascending; every member's internal
    /// coordinate lies in the tripled window.
    pub fn translators(&self) -> &[QuadElement] {
        &self.translators
    }

    /// The inner horizon `R′` the cover was built for.
    pub fn inner_radius(&self) -> Rational64 {
        self.inner_radius
    }

    /// Number of distinct sums that were decomposed.
    pub fn sums_checked(&self) -> usize {
        self.sums_checked
    }
}

fn distinct_inner_sums(sample: &ModelSetSample, inner_radius: Rational64) -> Result<Vec<QuadElement>> {
    if inner_radius <= Rational64::from_integer(0) {
        return Err(Error::InvalidWindow(format!(
            "inner radius must be positive, got {inner_radius}"
        )));
    }
    let needed = inner_radius * Rational64::from_integer(3);
    if sample.radius() < needed {
        return Err(Error::HorizonTooSmall {
            needed: needed.ceil().to_integer().unsigned_abs(),
            have: sample.radius().floor().to_integer().unsigned_abs(),
        });
    }
    let inner = sample.restricted(inner_radius);
    let mut sums: Vec<QuadElement> = inner
        .iter()
        .flat_map(|x| inner.iter().map(move |y| x.add(*y)))
        .collect();
    sums.sort_by(|x, y| x.value_cmp(*y));
    sums.dedup();
    Ok(sums)
}

/// Largest sample point `≤ x`, or the smallest point overall when `x`
/// lies below the whole sample.
fn anchor_below(sample: &ModelSetSample, x: QuadElement) -> QuadElement {
    let points = sample.points();
    let idx = points.partition_point(|p| p.value_cmp(x) != std::cmp::Ordering::Greater);
    if idx > 0 {
        points[idx - 1]
    } else {
        points[0]
    }
}

/// Builds and verifies the approximate-lattice covering witness:
/// `(Λ ∩ [−R′, R′]) + (Λ ∩ [−R′, R′]) ⊆ Λ + F` with `F ⊂ Λ(3W)`.
///
/// Each distinct sum is anchored to the nearest sample point below it;
/// the leftover translators automatically have internal coordinate in
/// the tripled window (internal coordinates add: `2W − W = 3W`), which
/// is re-checked exactly. Requires the horizon `R ≥ 3R′` so anchors and
/// sums stay well inside the sampled range.
pub fn approx_cover_check(sample: &ModelSetSample, inner_radius: Rational64) -> Result<SumCover> {
    let sums = distinct_inner_sums(sample, inner_radius)?;
    let mut translators: Vec<QuadElement> = sums
        .iter()
        .map(|&p| p.sub(anchor_below(sample, p)))
        .collect();
    translators.sort_by(|x, y| x.value_cmp(*y));
    translators.dedup();
    for f in &translators {
        assert!(
            sample.scheme().window_contains_dilated(*f, 3),
            "translator {f} escaped the tripled window"
        );
    }
    Ok(SumCover {
        translators,
        inner_radius,
        sums_checked: sums.len(),
    })
}

/// Independent re-verification of a covering: the first pairwise sum of
/// inner points not expressible as `sample point + translator`, if any.
pub fn uncovered_sum(
    sample: &ModelSetSample,
    inner_radius: Rational64,
    translators: &[QuadElement],
) -> Result<Option<QuadElement>> {
    let sums = distinct_inner_sums(sample, inner_radius)?;
    Ok(sums
        .into_iter()
        .find(|&p| !translators.iter().any(|&f| sample.contains(p.sub(f)))))
}

/// One rung of the nested-window ladder report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestedLevel {
    /// Level index `k ≥ 1`, with window `[−s/2ᵏ, s/2ᵏ]`.
    pub level: u32,
    /// Points in this level's sample.
    pub points: usize,
    /// Ordered pairs whose sums were checked against the parent level.
    pub pairs_checked: usize,
    /// Whether every sum landed in the parent window (and, when inside
    /// the horizon, in the parent sample).
    pub inclusion_holds: bool,
    /// Largest gap of this level's sample (relative denseness witness),
    /// absent when the sample has fewer than two points.
    pub max_gap: Option<QuadElement>,
}

/// Verifies the good-model ladder `Λ(W_{k+1}) + Λ(W_{k+1}) ⊆ Λ(W_k)`
/// for `k < levels`, with `W_k = [−s/2ᵏ, s/2ᵏ]`.
///
/// The inclusion is exact because the windows halve: `W_{k+1} + W_{k+1}`
/// equals `W_k` on the nose, and internal coordinates add. The check
/// verifies this on the materialized samples — every pairwise sum must
/// pass the parent window test, and sums inside the horizon must appear
/// in the parent sample, which cross-validates the enumeration.
pub fn nested_windows_check(
    scheme: CpScheme,
    levels: u32,
    radius: Rational64,
    budget: &Budget,
) -> Result<Vec<NestedLevel>> {
    let samples: Vec<ModelSetSample> = (0..=levels)
        .map(|k| ModelSetSample::generate(scheme.shrunk(k), radius, budget))
        .collect::<Result<_>>()?;
    let mut report = Vec::with_capacity(levels as usize);
    for k in 0..levels as usize {
        let parent = &samples[k];
        let child = &samples[k + 1];
        let mut inclusion_holds = true;
        let mut pairs_checked = 0usize;
        for &x in child.points() {
            for &y in child.points() {
                pairs_checked += 1;
                let sum = x.add(y);
                if !parent.scheme().window_contains(sum) {
                    inclusion_holds = false;
                } else if sum.abs_le(radius) && !parent.contains(sum) {
                    inclusion_holds = false;
                }
            }
        }
        let max_gap = child
            .gaps()
            .into_iter()
            .max_by(|x, y| x.value_cmp(*y));
        report.push(NestedLevel {
            level: (k + 1) as u32,
            points: child.len(),
            pairs_checked,
            inclusion_holds,
            max_gap,
        });
    }
    Ok(report)
}

/// Set-level sanity: every difference of sample points has internal
/// coordinate in the doubled window (`Λ(W) − Λ(W) ⊆ Λ(W − W)`).
pub fn differences_in_doubled_window(sample: &ModelSetSample) -> bool {
    let points = sample.points();
    points.iter().all(|&x| {
        points
            .iter()
            .all(|&y| sample.scheme().window_contains_dilated(x.sub(y), 2))
    })
}
