//! Exact finitary machinery for experiments with approximate groups.
//!
//! The crate provides, as plain data structures and total functions:
//!
//! * reduced and cyclic words in free groups, with exact occurrence
//!   counting and pattern decompositions ([`word`]);
//! * evaluatable marked groups — free groups, free abelian groups, and the
//!   solvable Baumslag–Solitar group BS(1,2) — with exact normal forms and
//!   breadth-first word-metric balls ([`groups`]);
//! * counting quasimorphisms, their homogenizations, defect sets, and
//!   quasi-kernels ([`qm`]);
//! * approximate-group certificates: covering witnesses, Ruzsa covers, and
//!   tripling ratios on finite samples ([`approx`]);
//! * internal (chain) versus external word metrics, growth series, coarse
//!   components, and colored covers at a fixed scale ([`geometry`]);
//! * a letter-overlap graph on word windows supporting blocker searches
//!   ([`blockers`]);
//! * cut-and-project model sets in real quadratic rings with exact sign
//!   arithmetic ([`modelset`]);
//! * conical-limit classification of periodic rays and separation of
//!   quasi-kernels ([`conical`]).
//!
//! Every membership, counting, and verification decision is exact integer or
//! ring arithmetic. Floating point appears only in the growth-classification
//! heuristic, which is labeled as a heuristic in its documentation.
//!
//! Enumerative operations take a [`Budget`] bounding how many elements they
//! may materialize; exceeding it is an error, never a silent truncation.

pub mod approx;
pub mod blockers;
pub mod conical;
pub mod error;
pub mod geometry;
pub mod groups;
pub mod modelset;
mod par;
pub mod qm;
pub mod word;

pub use error::{Error, Result};

/// Cap on the number of elements an enumerative operation may materialize.
///
/// Operations that grow balls, product sets, or candidate lists check the
/// cap up front where a closed formula exists and incrementally otherwise;
/// on overflow they return [`Error::BudgetExceeded`] rather than truncating.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget(usize);

impl Budget {
    /// Default cap used by the command-line frontend: five million elements.
    pub const DEFAULT: Budget = Budget(5_000_000);

    pub fn new(cap: usize) -> Budget {
        Budget(cap)
    }

    pub fn cap(self) -> usize {
        self.0
    }

    /// Errors when `needed` exceeds the cap.
    pub fn admit(self, needed: usize) -> Result<()> {
        if needed > self.0 {
            Err(Error::BudgetExceeded {
                needed,
                cap: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Budget {
        Budget::DEFAULT
    }
}
