//! Counting quasimorphisms on free groups.
//!
//! For a nonempty reduced pattern `u`, the signed count
//! `φ_u(v) = #_u(v) − #_{u⁻¹}(v)` is a quasimorphism `F_r → ℤ`: the
//! multiplicativity defect `φ_u(xy) − φ_u(x) − φ_u(y)` only ever takes
//! finitely many values, because occurrences of `u` in a product `xy`
//! differ from the separate counts only near the seam. The cyclic
//! variant `φ_u^cyc` counts wrap-around occurrences in the cyclic
//! reduction; it is conjugation-invariant, exactly homogeneous on
//! powers, and coincides with the homogenization of `φ_u`.
//!
//! Everything here is exact integer (or exact rational) arithmetic.
//! Defect sets are reported as ball-restricted under-approximations
//! `D_R` with the radius recorded, since the full defect set is a
//! supremum over the whole group that a finite run cannot certify.

use std::collections::BTreeSet;

use num_rational::Rational64;

use crate::par;
use crate::word::{
    count_cyclic_occurrences, count_occurrences, enumerate_ball, CyclicWord, ReducedWord,
};
use crate::{Budget, Error, Result};

/// Which of the two counting functions a membership query should use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QmVariant {
    /// The plain signed occurrence count `φ_u`.
    Plain,
    /// The cyclic (homogenized) count `φ_u^cyc`.
    Cyclic,
}

/// The counting quasimorphism attached to one pattern word.
///
/// Construction requires a nonempty reduced pattern. The cyclic
/// operations additionally require the pattern to be cyclically
/// reduced and report [`Error::PatternNotCyclicallyReduced`] otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountingQm {
    u: ReducedWord,
    u_inv: ReducedWord,
    cyclically_reduced: bool,
}

impl CountingQm {
    /// Builds the quasimorphism `φ_u` for a nonempty reduced pattern.
    pub fn new(u: ReducedWord) -> Result<CountingQm> {
        if u.is_empty() {
            return Err(Error::EmptyPattern);
        }
        let u_inv = u.inverse();
        let cyclically_reduced = u.is_cyclically_reduced();
        Ok(CountingQm {
            u,
            u_inv,
            cyclically_reduced,
        })
    }

    /// The pattern `u`.
    pub fn pattern(&self) -> &ReducedWord {
        &self.u
    }

    /// Rank of the ambient free group.
    pub fn rank(&self) -> u32 {
        self.u.rank()
    }

    /// `φ_u(v) = #_u(v) − #_{u⁻¹}(v)`.
    pub fn phi(&self, v: &ReducedWord) -> Result<i64> {
        let plus = count_occurrences(&self.u, v)?;
        let minus = count_occurrences(&self.u_inv, v)?;
        Ok(plus as i64 - minus as i64)
    }

    /// `φ_u^cyc` evaluated on a cyclic word (conjugacy class).
    pub fn phi_cyc_class(&self, w: &CyclicWord) -> Result<i64> {
        if !self.cyclically_reduced {
            return Err(Error::PatternNotCyclicallyReduced);
        }
        let plus = count_cyclic_occurrences(&self.u, w)?;
        let minus = count_cyclic_occurrences(&self.u_inv, w)?;
        Ok(plus as i64 - minus as i64)
    }

    /// `φ_u^cyc(v)`: cyclic signed count on the cyclic reduction of `v`.
    ///
    /// Conjugation-invariant, and exactly homogeneous: evaluating on
    /// `vⁿ` gives `n` times the value on `v`.
    pub fn phi_cyc(&self, v: &ReducedWord) -> Result<i64> {
        self.phi_cyc_class(&CyclicWord::from_word(v))
    }

    /// The finite homogenization estimate `φ_u(w^N) / N` as an exact
    /// rational.
    ///
    /// For cyclically reduced `w` the estimate differs from
    /// `φ_u^cyc(w)` by at most `(‖u‖ − 1)/N`, so rounding to the
    /// nearest integer recovers the cyclic value exactly once
    /// `N ≥ 2‖u‖ − 1`.
    ///
    /// # Panics
    ///
    /// Panics if `n` is zero.
    pub fn homogenize_estimate(&self, w: &ReducedWord, n: u32) -> Result<Rational64> {
        assert!(n >= 1, "homogenization needs a positive power");
        let value = self.phi(&w.pow(i64::from(n)))?;
        Ok(Rational64::new(value, i64::from(n)))
    }

    /// Exhaustive defect scan over the ball of the given radius:
    /// collects `φ_u(xy) − φ_u(x) − φ_u(y)` for every pair `x, y` in
    /// `B_R` of the pattern's free group.
    ///
    /// The scan parallelizes over the outer element; the result is a
    /// set, so it is deterministic regardless of schedule.
    pub fn defect_on_ball(&self, radius: u32, budget: Budget) -> Result<DefectReport> {
        let ball = enumerate_ball(self.rank(), radius, budget)?;
        let phis: Vec<i64> = par::map_slice(&ball, |x| {
            self.phi(x).expect("ball words share the pattern's rank")
        });
        let indexed: Vec<usize> = (0..ball.len()).collect();
        let partial: Vec<BTreeSet<i64>> = par::map_slice(&indexed, |&i| {
            let x = &ball[i];
            let mut seen = BTreeSet::new();
            for (y, phi_y) in ball.iter().zip(&phis) {
                let xy = x.mul(y).expect("ball words share the pattern's rank");
                let phi_xy = self.phi(&xy).expect("ball words share the pattern's rank");
                seen.insert(phi_xy - phis[i] - phi_y);
            }
            seen
        });
        let mut values = BTreeSet::new();
        for set in partial {
            values.extend(set);
        }
        Ok(DefectReport { radius, values })
    }

    /// Whether `g` lies in the quasi-kernel at the given defect bound:
    /// `|φ(g)| ≤ bound` for the selected variant.
    ///
    /// The caller supplies the bound; it should dominate the true
    /// defect of the quasimorphism for the membership to carry its
    /// usual meaning.
    pub fn qker_member(&self, g: &ReducedWord, bound: i64, variant: QmVariant) -> Result<bool> {
        let value = match variant {
            QmVariant::Plain => self.phi(g)?,
            QmVariant::Cyclic => self.phi_cyc(g)?,
        };
        Ok(value.abs() <= bound)
    }

    /// Whether `g` lies in the positivity set of the homogenization:
    /// `φ_u^cyc(g) ≥ 0`.
    pub fn positivity_member(&self, g: &ReducedWord) -> Result<bool> {
        Ok(self.phi_cyc(g)? >= 0)
    }
}

/// Defect values observed on one ball, with the radius recorded.
///
/// `D_R ⊆ D_{R′}` for `R ≤ R′`, and `0 ∈ D_R` always (take `x = y = e`).
/// The observed set under-approximates the true defect set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectReport {
    radius: u32,
    values: BTreeSet<i64>,
}

impl DefectReport {
    /// Radius of the scanned ball.
    pub fn radius(&self) -> u32 {
        self.radius
    }

    /// The observed defect values, sorted.
    pub fn values(&self) -> &BTreeSet<i64> {
        &self.values
    }

    /// Largest observed absolute defect.
    pub fn max_abs(&self) -> i64 {
        self.values.iter().map(|d| d.abs()).max().unwrap_or(0)
    }
}
