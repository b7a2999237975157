//! Reduced and cyclic words in finitely generated free groups.
//!
//! A word lives over the symmetric alphabet `a1, a1^-1, a2, a2^-1, ...` up
//! to a fixed rank. [`ReducedWord`] maintains freeness (no adjacent
//! cancelling pair); [`CyclicWord`] is a conjugacy-class representative,
//! stored cyclically reduced in its canonical (shortlex-minimal) rotation.
//!
//! Occurrence counting is the combinatorial backbone of the counting
//! quasimorphisms in [`crate::qm`]: `count_occurrences(u, v)` counts
//! overlapping factor occurrences of `u` in `v`, and
//! `count_cyclic_occurrences` counts occurrences around a cyclic word, with
//! positions read modulo its length.
//!
//! Serialization is ASCII: generator `i` prints as `a<i>`, its inverse as
//! `A<i>`, and the empty word as `e`. Round-trips are bit-exact.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::Budget;

/// One symbol of the symmetric generating alphabet: a generator index
/// (1-based) plus an inversion flag.
///
/// The derived order is `a1 < a1^-1 < a2 < a2^-1 < ...`; every
/// deterministic tie-break in the crate uses it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    index: u32,
    inverse: bool,
}

impl Letter {
    /// The generator `a<index>`. Indices are 1-based; 0 is invalid.
    pub fn new(index: u32, inverse: bool) -> Result<Letter> {
        if index == 0 {
            return Err(Error::InvalidLetter { index, rank: 0 });
        }
        Ok(Letter { index, inverse })
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn is_inverse(self) -> bool {
        self.inverse
    }

    /// The formal inverse (flips the inversion flag).
    pub fn inverse(self) -> Letter {
        Letter {
            index: self.index,
            inverse: !self.inverse,
        }
    }

    /// All `2 * rank` letters in order.
    pub fn alphabet(rank: u32) -> Vec<Letter> {
        (1..=rank)
            .flat_map(|i| {
                [
                    Letter {
                        index: i,
                        inverse: false,
                    },
                    Letter {
                        index: i,
                        inverse: true,
                    },
                ]
            })
            .collect()
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = if self.inverse { 'A' } else { 'a' };
        write!(f, "{}{}", c, self.index)
    }
}

/// A freely reduced word over the rank-`r` free group.
///
/// Invariants: no two adjacent letters cancel, and every letter's index is
/// between 1 and the rank. Equality is exact word equality (which, for
/// reduced words, is equality in the group).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    rank: u32,
    letters: Vec<Letter>,
}

impl ReducedWord {
    /// The empty word (group identity) at the given rank.
    pub fn identity(rank: u32) -> ReducedWord {
        ReducedWord {
            rank,
            letters: Vec::new(),
        }
    }

    /// Freely reduces an arbitrary letter sequence.
    ///
    /// Cancellation is confluent, so a single left-to-right stack pass
    /// yields the unique reduced form.
    pub fn reduce(rank: u32, letters: &[Letter]) -> Result<ReducedWord> {
        let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
        for &l in letters {
            if l.index == 0 || l.index > rank {
                return Err(Error::InvalidLetter {
                    index: l.index,
                    rank,
                });
            }
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Ok(ReducedWord { rank, letters: out })
    }

    /// Builds a word from letters already known to be reduced.
    pub(crate) fn from_reduced(rank: u32, letters: Vec<Letter>) -> ReducedWord {
        debug_assert!(letters
            .windows(2)
            .all(|w| w[0] != w[1].inverse()));
        debug_assert!(letters.iter().all(|l| l.index >= 1 && l.index <= rank));
        ReducedWord { rank, letters }
    }

    /// Parses the ASCII form (`a1a2A1`, or `e` for the identity) and
    /// freely reduces the result.
    pub fn parse(rank: u32, s: &str) -> Result<ReducedWord> {
        if s.is_empty() {
            return Err(Error::Parse("empty input; write e for the identity".into()));
        }
        if s == "e" {
            return Ok(ReducedWord::identity(rank));
        }
        let mut letters = Vec::new();
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let inverse = match bytes[i] {
                b'a' => false,
                b'A' => true,
                c => {
                    return Err(Error::Parse(format!(
                        "unexpected character {:?} at byte {}",
                        c as char, i
                    )))
                }
            };
            i += 1;
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(Error::Parse(format!("missing generator index at byte {start}")));
            }
            let index: u32 = s[start..i]
                .parse()
                .map_err(|_| Error::Parse(format!("generator index out of range at byte {start}")))?;
            if index == 0 || index > rank {
                return Err(Error::InvalidLetter { index, rank });
            }
            letters.push(Letter { index, inverse });
        }
        ReducedWord::reduce(rank, &letters)
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    fn check_rank(&self, other: &ReducedWord) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    /// Group multiplication: concatenate and cancel at the seam.
    pub fn mul(&self, other: &ReducedWord) -> Result<ReducedWord> {
        self.check_rank(other)?;
        let mut left = self.letters.clone();
        let mut start = 0;
        while start < other.letters.len() {
            match left.last() {
                Some(&l) if l == other.letters[start].inverse() => {
                    left.pop();
                    start += 1;
                }
                _ => break,
            }
        }
        left.extend_from_slice(&other.letters[start..]);
        Ok(ReducedWord {
            rank: self.rank,
            letters: left,
        })
    }

    /// Group inverse: reverse the letters and flip each sign.
    pub fn inverse(&self) -> ReducedWord {
        ReducedWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Integer power. Uses the cyclic decomposition `w = t c t^-1`, so the
    /// cost is linear in the output length rather than quadratic.
    pub fn pow(&self, n: i64) -> ReducedWord {
        if n == 0 || self.is_empty() {
            return ReducedWord::identity(self.rank);
        }
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let k = n.unsigned_abs();
        let (t, core) = base.cyclic_reduction();
        // t * core^k * t^-1 concatenates without cancellation.
        let mut letters = t.letters.clone();
        for _ in 0..k {
            letters.extend_from_slice(&core.letters);
        }
        letters.extend(t.letters.iter().rev().map(|l| l.inverse()));
        ReducedWord::from_reduced(self.rank, letters)
    }

    /// Splits `w = t c t^-1` with `c` cyclically reduced; returns `(t, c)`.
    /// Both concatenations are reduced products (no cancellation).
    pub fn cyclic_reduction(&self) -> (ReducedWord, ReducedWord) {
        let n = self.letters.len();
        let mut i = 0;
        while n >= 2 * (i + 1) && self.letters[i] == self.letters[n - 1 - i].inverse() {
            i += 1;
        }
        let t = ReducedWord::from_reduced(self.rank, self.letters[..i].to_vec());
        let core = ReducedWord::from_reduced(self.rank, self.letters[i..n - i].to_vec());
        (t, core)
    }

    /// Whether the word equals its own cyclic reduction (first and last
    /// letters do not cancel). The empty word counts as cyclically reduced.
    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&f), Some(&l)) => f != l.inverse(),
            _ => true,
        }
    }

    /// Shortlex comparison: length first, then letters in alphabet order.
    /// This is the crate-wide canonical word order.
    pub fn shortlex_cmp(&self, other: &ReducedWord) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl PartialOrd for ReducedWord {
    fn partial_cmp(&self, other: &ReducedWord) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ReducedWord {
    fn cmp(&self, other: &ReducedWord) -> Ordering {
        self.shortlex_cmp(other)
    }
}

/// A conjugacy class of the free group, stored as the canonical rotation
/// (shortlex-minimal) of the cyclic reduction of any representative.
///
/// Equality and hashing are therefore equality of conjugacy classes of
/// cyclically reduced words up to rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord {
    rank: u32,
    letters: Vec<Letter>,
}

impl CyclicWord {
    /// The cyclic word `[w]`: cyclically reduces `w`, then rotates to the
    /// canonical position.
    pub fn from_word(w: &ReducedWord) -> CyclicWord {
        let (_, core) = w.cyclic_reduction();
        let k = core.letters.len();
        if k == 0 {
            return CyclicWord {
                rank: w.rank,
                letters: Vec::new(),
            };
        }
        let mut best: Option<Vec<Letter>> = None;
        for s in 0..k {
            let rot: Vec<Letter> = (0..k).map(|j| core.letters[(s + j) % k]).collect();
            if best.as_ref().is_none_or(|b| rot < *b) {
                best = Some(rot);
            }
        }
        CyclicWord {
            rank: w.rank,
            letters: best.expect("nonempty rotation set"),
        }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// The canonical rotation read as a linear word.
    pub fn representative(&self) -> ReducedWord {
        ReducedWord::from_reduced(self.rank, self.letters.clone())
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.representative())
    }
}

/// Counts the (possibly overlapping) occurrences of `u` as a factor of `v`.
///
/// Conventions: occurrences may overlap (`a1a1` occurs 4 times in `a1^5`),
/// and the count in the empty word is 0. The empty pattern is rejected.
pub fn count_occurrences(u: &ReducedWord, v: &ReducedWord) -> Result<usize> {
    if u.is_empty() {
        return Err(Error::EmptyPattern);
    }
    u.check_rank(v)?;
    let (p, t) = (u.letters(), v.letters());
    if p.len() > t.len() {
        return Ok(0);
    }
    Ok((0..=t.len() - p.len())
        .filter(|&s| &t[s..s + p.len()] == p)
        .count())
}

/// Counts cyclic occurrences of `u` in the cyclic word `w`: positions
/// `s` in `0..len(w)` such that `u` matches `w` letterwise with indices
/// read modulo `len(w)`. Wrapping more than once is permitted, which is
/// what makes the count exactly homogeneous under powers.
///
/// The pattern must be nonempty and cyclically reduced.
pub fn count_cyclic_occurrences(u: &ReducedWord, w: &CyclicWord) -> Result<usize> {
    if u.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if !u.is_cyclically_reduced() {
        return Err(Error::PatternNotCyclicallyReduced);
    }
    if u.rank() != w.rank() {
        return Err(Error::RankMismatch {
            left: u.rank(),
            right: w.rank(),
        });
    }
    let k = w.len();
    if k == 0 {
        return Ok(0);
    }
    let (p, t) = (u.letters(), w.letters());
    Ok((0..k)
        .filter(|&s| (0..p.len()).all(|j| t[(s + j) % k] == p[j]))
        .count())
}

/// Whether no proper prefix of `u` is also a proper suffix of `u`.
///
/// Patterns with this property have pairwise disjoint occurrences, which
/// makes their maximal decompositions unique. Requires `u` cyclically
/// reduced of length at least 2.
pub fn is_non_self_overlapping(u: &ReducedWord) -> Result<bool> {
    if u.len() < 2 {
        return Err(Error::TooShort {
            min: 2,
            len: u.len(),
        });
    }
    if !u.is_cyclically_reduced() {
        return Err(Error::PatternNotCyclicallyReduced);
    }
    let p = u.letters();
    let l = p.len();
    Ok((1..l).all(|k| p[..k] != p[l - k..]))
}

/// Kind of one segment of a pattern decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SegmentKind {
    /// A copy of the pattern `u`.
    Pattern,
    /// A copy of the inverse pattern `u^-1`.
    PatternInverse,
    /// A maximal stretch containing no copy of `u` or `u^-1`.
    Gap,
}

/// The maximal decomposition of a word along a non-self-overlapping
/// pattern: segments concatenate back to the word without cancellation,
/// every occurrence of `u^{±1}` is one of the pattern segments, and gaps
/// are maximal (no two adjacent).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UDecomposition {
    segments: Vec<(ReducedWord, SegmentKind)>,
}

impl UDecomposition {
    pub fn segments(&self) -> &[(ReducedWord, SegmentKind)] {
        &self.segments
    }

    pub fn pattern_count(&self) -> usize {
        self.segments
            .iter()
            .filter(|(_, k)| *k == SegmentKind::Pattern)
            .count()
    }

    pub fn pattern_inverse_count(&self) -> usize {
        self.segments
            .iter()
            .filter(|(_, k)| *k == SegmentKind::PatternInverse)
            .count()
    }

    /// Re-concatenates the segments (a reduced product by construction).
    pub fn concatenation(&self, rank: u32) -> ReducedWord {
        let letters: Vec<Letter> = self
            .segments
            .iter()
            .flat_map(|(w, _)| w.letters().iter().copied())
            .collect();
        ReducedWord::from_reduced(rank, letters)
    }
}

/// Decomposes `w` along the pattern `u` into pattern copies, inverse
/// pattern copies, and maximal gaps.
///
/// `u` must be cyclically reduced, non-self-overlapping, and of length at
/// least 2; `w` must be nonempty. Occurrences of `u` and `u^-1` are then
/// pairwise disjoint (an overlap would force a cancelling pair inside a
/// reduced word or a prefix/suffix self-overlap of `u`), so a single
/// left-to-right sweep collects every occurrence and the decomposition is
/// the unique coarsest one of maximal pattern count.
pub fn u_decomposition(u: &ReducedWord, w: &ReducedWord) -> Result<UDecomposition> {
    if u.len() < 2 {
        return Err(Error::PatternInvalid {
            reason: format!("pattern length {} < 2", u.len()),
        });
    }
    if !u.is_cyclically_reduced() {
        return Err(Error::PatternInvalid {
            reason: "pattern not cyclically reduced".into(),
        });
    }
    if !is_non_self_overlapping(u)? {
        return Err(Error::PatternInvalid {
            reason: "pattern overlaps itself".into(),
        });
    }
    u.check_rank(w)?;
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let rank = w.rank();
    let uinv = u.inverse();
    let (p, pinv, t) = (u.letters(), uinv.letters(), w.letters());
    let l = p.len();
    let n = t.len();
    let mut segments = Vec::new();
    let mut gap_start = 0;
    let mut i = 0;
    let flush_gap = |segments: &mut Vec<(ReducedWord, SegmentKind)>, from: usize, to: usize| {
        if from < to {
            segments.push((
                ReducedWord::from_reduced(rank, t[from..to].to_vec()),
                SegmentKind::Gap,
            ));
        }
    };
    while i + l <= n {
        let kind = if &t[i..i + l] == p {
            Some(SegmentKind::Pattern)
        } else if &t[i..i + l] == pinv {
            Some(SegmentKind::PatternInverse)
        } else {
            None
        };
        match kind {
            Some(kind) => {
                flush_gap(&mut segments, gap_start, i);
                let copy = if kind == SegmentKind::Pattern {
                    u.clone()
                } else {
                    uinv.clone()
                };
                segments.push((copy, kind));
                i += l;
                gap_start = i;
            }
            None => i += 1,
        }
    }
    flush_gap(&mut segments, gap_start, n);
    Ok(UDecomposition { segments })
}

/// Number of reduced words of length exactly `k` at the given rank:
/// `2r (2r-1)^(k-1)` for `k >= 1`, else 1.
pub fn sphere_size(rank: u32, k: u32) -> usize {
    if k == 0 {
        return 1;
    }
    let r2 = 2 * rank as usize;
    let mut n = r2;
    for _ in 1..k {
        n = n.saturating_mul(r2.saturating_sub(1));
    }
    n
}

/// All reduced words of length at most `radius`, ordered by length then
/// alphabetically (shortlex). Checks the closed-form count against the
/// budget before materializing anything.
pub fn enumerate_ball(rank: u32, radius: u32, budget: Budget) -> Result<Vec<ReducedWord>> {
    let mut total = 0usize;
    for k in 0..=radius {
        total = total.saturating_add(sphere_size(rank, k));
    }
    budget.admit(total)?;
    let alphabet = Letter::alphabet(rank);
    let mut ball = vec![ReducedWord::identity(rank)];
    let mut sphere = vec![ReducedWord::identity(rank)];
    for _ in 0..radius {
        let mut next = Vec::with_capacity(sphere.len() * alphabet.len());
        for w in &sphere {
            for &l in &alphabet {
                if w.letters().last() != Some(&l.inverse()) {
                    let mut letters = w.letters().to_vec();
                    letters.push(l);
                    next.push(ReducedWord::from_reduced(rank, letters));
                }
            }
        }
        ball.extend(next.iter().cloned());
        sphere = next;
    }
    Ok(ball)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(rank: u32, s: &str) -> ReducedWord {
        ReducedWord::parse(rank, s).expect("test word parses")
    }

    #[test]
    fn reduce_cancels_adjacent_pairs() {
        let a1 = Letter::new(1, false).unwrap();
        let a1i = a1.inverse();
        let a2 = Letter::new(2, false).unwrap();
        assert!(ReducedWord::reduce(2, &[a1, a1i]).unwrap().is_empty());
        // a1 a2 a1^-1 a1 a2^-1 a1 telescopes from the middle out to a1 a1.
        let word = ReducedWord::reduce(2, &[a1, a2, a1i, a1, a2.inverse(), a1]).unwrap();
        assert_eq!(word, w(2, "a1a1"));
    }

    #[test]
    fn reduce_rejects_letters_outside_rank() {
        let a3 = Letter::new(3, false).unwrap();
        assert_eq!(
            ReducedWord::reduce(2, &[a3]),
            Err(Error::InvalidLetter { index: 3, rank: 2 })
        );
    }

    #[test]
    fn parse_round_trips_bit_exactly() {
        for s in ["e", "a1", "A1", "a1a2A1", "a2a2a2", "a12A3a1"] {
            let word = w(12, s);
            assert_eq!(word.to_string(), s);
            assert_eq!(ReducedWord::parse(12, &word.to_string()).unwrap(), word);
        }
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(matches!(ReducedWord::parse(2, ""), Err(Error::Parse(_))));
        assert!(matches!(ReducedWord::parse(2, "b1"), Err(Error::Parse(_))));
        assert!(matches!(ReducedWord::parse(2, "a"), Err(Error::Parse(_))));
        assert!(matches!(
            ReducedWord::parse(2, "a0"),
            Err(Error::InvalidLetter { .. })
        ));
        assert!(matches!(
            ReducedWord::parse(2, "a3"),
            Err(Error::InvalidLetter { .. })
        ));
        assert!(matches!(ReducedWord::parse(2, "ea1"), Err(Error::Parse(_))));
    }

    #[test]
    fn parse_reduces_raw_input() {
        assert_eq!(w(2, "a1A1"), ReducedWord::identity(2));
        assert_eq!(w(2, "a1a2A2a1"), w(2, "a1a1"));
    }

    #[test]
    fn mul_cancels_at_the_seam() {
        assert_eq!(w(2, "a1").mul(&w(2, "A1")).unwrap(), w(2, "e"));
        assert_eq!(w(2, "a1a2").mul(&w(2, "A2a1")).unwrap(), w(2, "a1a1"));
        assert_eq!(w(2, "a1a2").mul(&w(2, "e")).unwrap(), w(2, "a1a2"));
        assert_eq!(
            w(2, "a1").mul(&w(3, "a1")),
            Err(Error::RankMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn inverse_reverses_and_flips() {
        assert_eq!(w(2, "e").inverse(), w(2, "e"));
        assert_eq!(w(2, "a1a2").inverse(), w(2, "A2A1"));
        assert_eq!(w(2, "a1a2A1").inverse(), w(2, "a1A2A1"));
    }

    #[test]
    fn cyclic_reduction_peels_conjugating_prefix() {
        let (t, core) = w(2, "a1a2").cyclic_reduction();
        assert_eq!((t, core), (w(2, "e"), w(2, "a1a2")));
        let (t, core) = w(2, "a1a2A1").cyclic_reduction();
        assert_eq!((t, core), (w(2, "a1"), w(2, "a2")));
        let (t, core) = w(2, "a1a2a2A1").cyclic_reduction();
        assert_eq!((t, core), (w(2, "a1"), w(2, "a2a2")));
        // A single letter conjugated down to nothing: a1 a1^-1 never arises
        // (input is reduced), but a balanced word can still empty out.
        let (t, core) = w(2, "a1a2A2A1").cyclic_reduction();
        assert_eq!((t, core), (w(2, "e"), w(2, "e")));
    }

    #[test]
    fn pow_matches_repeated_multiplication() {
        let cases = [w(2, "a1a2"), w(2, "a1a2A1"), w(2, "a1"), w(2, "e")];
        for base in &cases {
            let mut acc = ReducedWord::identity(2);
            for n in 0..6 {
                assert_eq!(&base.pow(n), &acc, "{base}^{n}");
                acc = acc.mul(base).unwrap();
            }
            assert_eq!(base.pow(-3), base.inverse().pow(3));
        }
    }

    #[test]
    fn occurrences_overlap_and_empty_text_counts_zero() {
        // The motivating convention: a1a1 occurs 4 times in a1^5.
        assert_eq!(
            count_occurrences(&w(2, "a1a1"), &w(2, "a1a1a1a1a1")).unwrap(),
            4
        );
        assert_eq!(count_occurrences(&w(2, "a1a2"), &w(2, "e")).unwrap(), 0);
        assert_eq!(
            count_occurrences(&w(2, "a1a2"), &w(2, "a1a2a1a2")).unwrap(),
            2
        );
        assert_eq!(
            count_occurrences(&w(2, "a1a2"), &w(2, "a2a1")).unwrap(),
            0
        );
        assert_eq!(
            count_occurrences(&w(2, "e"), &w(2, "a1")),
            Err(Error::EmptyPattern)
        );
    }

    #[test]
    fn cyclic_occurrences_wrap_around() {
        let u = w(2, "a1a2");
        assert_eq!(
            count_cyclic_occurrences(&u, &CyclicWord::from_word(&w(2, "a2a1"))).unwrap(),
            1
        );
        assert_eq!(
            count_cyclic_occurrences(&u, &CyclicWord::from_word(&w(2, "a1a2a1a2"))).unwrap(),
            2
        );
        assert_eq!(
            count_cyclic_occurrences(&u, &CyclicWord::from_word(&w(2, "A1"))).unwrap(),
            0
        );
        // Patterns longer than the cycle wrap multiple times.
        assert_eq!(
            count_cyclic_occurrences(&w(2, "a1a1a1"), &CyclicWord::from_word(&w(2, "a1"))).unwrap(),
            1
        );
        assert_eq!(
            count_cyclic_occurrences(&w(2, "a1a2A1"), &CyclicWord::from_word(&w(2, "a1"))),
            Err(Error::PatternNotCyclicallyReduced)
        );
    }

    #[test]
    fn cyclic_words_canonicalize_rotations() {
        let x = CyclicWord::from_word(&w(2, "a1a2a1a1"));
        let y = CyclicWord::from_word(&w(2, "a1a1a1a2"));
        assert_eq!(x, y);
        assert_eq!(x.representative(), w(2, "a1a1a1a2"));
        // Conjugates share a cyclic word.
        let z = CyclicWord::from_word(&w(2, "A2a1a2a1a1a2"));
        assert_eq!(x, z);
        assert!(CyclicWord::from_word(&w(2, "a1A1")).is_empty());
    }

    #[test]
    fn non_self_overlap_detects_prefix_suffix_clashes() {
        assert!(is_non_self_overlapping(&w(2, "a1a2")).unwrap());
        assert!(!is_non_self_overlapping(&w(2, "a1a1")).unwrap());
        assert!(!is_non_self_overlapping(&w(2, "a1a2a1")).unwrap());
        assert!(is_non_self_overlapping(&w(2, "a1a1a2")).unwrap());
        assert_eq!(
            is_non_self_overlapping(&w(2, "a1")),
            Err(Error::TooShort { min: 2, len: 1 })
        );
        assert_eq!(
            is_non_self_overlapping(&w(2, "a1a2A1")),
            Err(Error::PatternNotCyclicallyReduced)
        );
    }

    #[test]
    fn u_decomposition_reproduces_the_worked_example() {
        // a1a2-decomposition of a1a2 a1^-1 a2^-1a1^-1 a2a1^-1 picks out one
        // copy of the pattern and one of its inverse.
        let u = w(2, "a1a2");
        let word = w(2, "a1a2A1A2A1a2A1");
        let dec = u_decomposition(&u, &word).unwrap();
        let got: Vec<(String, SegmentKind)> = dec
            .segments()
            .iter()
            .map(|(seg, k)| (seg.to_string(), *k))
            .collect();
        assert_eq!(
            got,
            vec![
                ("a1a2".into(), SegmentKind::Pattern),
                ("A1".into(), SegmentKind::Gap),
                ("A2A1".into(), SegmentKind::PatternInverse),
                ("a2A1".into(), SegmentKind::Gap),
            ]
        );
        assert_eq!(dec.concatenation(2), word);
    }

    #[test]
    fn u_decomposition_handles_pure_pattern_and_pure_gap() {
        let u = w(2, "a1a2");
        let dec = u_decomposition(&u, &w(2, "a1a2")).unwrap();
        assert_eq!(dec.segments().len(), 1);
        assert_eq!(dec.pattern_count(), 1);
        let dec = u_decomposition(&u, &w(2, "a2a1")).unwrap();
        assert_eq!(dec.segments().len(), 1);
        assert_eq!(dec.pattern_count(), 0);
    }

    #[test]
    fn u_decomposition_rejects_bad_patterns() {
        assert!(matches!(
            u_decomposition(&w(2, "a1a1"), &w(2, "a1")),
            Err(Error::PatternInvalid { .. })
        ));
        assert!(matches!(
            u_decomposition(&w(2, "a1"), &w(2, "a1")),
            Err(Error::PatternInvalid { .. })
        ));
        assert!(matches!(
            u_decomposition(&w(2, "a1a2"), &w(2, "e")),
            Err(Error::EmptyWord)
        ));
    }

    /// Exhaustive maximality oracle: the largest number of disjoint
    /// `u^{±1}` occurrences over all decompositions, by dynamic programming
    /// over positions. Independent of the sweep in `u_decomposition`.
    fn max_disjoint_occurrences(u: &ReducedWord, t: &[Letter]) -> usize {
        let p = u.letters();
        let pinv = u.inverse();
        let pinv = pinv.letters();
        let l = p.len();
        let n = t.len();
        let mut best = vec![0usize; n + 1];
        for i in (0..n).rev() {
            best[i] = best[i + 1];
            if i + l <= n && (&t[i..i + l] == p || &t[i..i + l] == pinv) {
                best[i] = best[i].max(1 + best[i + l]);
            }
        }
        best[0]
    }

    #[test]
    fn u_decomposition_is_maximal_for_all_short_words() {
        let budget = Budget::new(100_000);
        let patterns = [w(2, "a1a2"), w(2, "a1a1a2"), w(2, "a1A2")];
        for u in &patterns {
            for word in enumerate_ball(2, 8, budget).unwrap() {
                if word.is_empty() {
                    continue;
                }
                let dec = u_decomposition(u, &word).unwrap();
                assert_eq!(dec.concatenation(2), word);
                let copies = dec.pattern_count() + dec.pattern_inverse_count();
                assert_eq!(
                    copies,
                    max_disjoint_occurrences(u, word.letters()),
                    "pattern {u} in {word}"
                );
                // Gaps are maximal: no two adjacent, none contains u^{±1}.
                for pair in dec.segments().windows(2) {
                    assert!(
                        pair[0].1 != SegmentKind::Gap || pair[1].1 != SegmentKind::Gap,
                        "adjacent gaps for {word}"
                    );
                }
                for (seg, kind) in dec.segments() {
                    if *kind == SegmentKind::Gap {
                        assert_eq!(count_occurrences(u, seg).unwrap(), 0);
                        assert_eq!(count_occurrences(&u.inverse(), seg).unwrap(), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn ball_sizes_match_the_closed_formula() {
        let budget = Budget::new(1_000_000);
        assert_eq!(enumerate_ball(2, 0, budget).unwrap().len(), 1);
        assert_eq!(enumerate_ball(2, 1, budget).unwrap().len(), 5);
        assert_eq!(enumerate_ball(2, 2, budget).unwrap().len(), 17);
        assert_eq!(enumerate_ball(3, 2, budget).unwrap().len(), 37);
        let ball = enumerate_ball(2, 6, budget).unwrap();
        let expect: usize = (0..=6).map(|k| sphere_size(2, k)).sum();
        assert_eq!(ball.len(), expect);
        // Shortlex order and no duplicates.
        for pair in ball.windows(2) {
            assert!(pair[0].shortlex_cmp(&pair[1]) == std::cmp::Ordering::Less);
        }
    }

    #[test]
    fn ball_enumeration_respects_budget() {
        assert!(matches!(
            enumerate_ball(2, 10, Budget::new(100)),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    fn letter_strategy(rank: u32) -> impl Strategy<Value = Letter> {
        (1..=rank, any::<bool>())
            .prop_map(|(i, inv)| Letter::new(i, inv).expect("index >= 1"))
    }

    fn word_strategy(rank: u32, max_len: usize) -> impl Strategy<Value = ReducedWord> {
        proptest::collection::vec(letter_strategy(rank), 0..=max_len)
            .prop_map(move |ls| ReducedWord::reduce(rank, &ls).expect("letters in range"))
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_reduced(ls in proptest::collection::vec(letter_strategy(3), 0..20)) {
            let word = ReducedWord::reduce(3, &ls).unwrap();
            for pair in word.letters().windows(2) {
                prop_assert!(pair[0] != pair[1].inverse());
            }
            prop_assert_eq!(ReducedWord::reduce(3, word.letters()).unwrap(), word);
        }

        #[test]
        fn mul_is_associative(
            u in word_strategy(2, 8),
            v in word_strategy(2, 8),
            x in word_strategy(2, 8),
        ) {
            let left = u.mul(&v).unwrap().mul(&x).unwrap();
            let right = u.mul(&v.mul(&x).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn mul_length_parity((u, v) in (word_strategy(2, 10), word_strategy(2, 10))) {
            let prod = u.mul(&v).unwrap();
            prop_assert_eq!((u.len() + v.len()) % 2, prod.len() % 2);
            prop_assert!(prod.len() <= u.len() + v.len());
        }

        #[test]
        fn inverse_is_an_involution_and_kills(u in word_strategy(3, 12)) {
            prop_assert_eq!(u.inverse().inverse(), u.clone());
            prop_assert!(u.mul(&u.inverse()).unwrap().is_empty());
            prop_assert!(u.inverse().mul(&u).unwrap().is_empty());
        }

        #[test]
        fn cyclic_reduction_reassembles(u in word_strategy(3, 12)) {
            let (t, core) = u.cyclic_reduction();
            prop_assert!(core.is_cyclically_reduced());
            let back = t.mul(&core).unwrap().mul(&t.inverse()).unwrap();
            prop_assert_eq!(back, u.clone());
            // The factorization is a reduced product: lengths add.
            prop_assert_eq!(2 * t.len() + core.len(), u.len());
        }

        #[test]
        fn cyclic_count_is_rotation_invariant(
            u in word_strategy(2, 4).prop_filter("cyclically reduced pattern",
                |u| !u.is_empty() && u.is_cyclically_reduced()),
            v in word_strategy(2, 10),
        ) {
            let base = CyclicWord::from_word(&v);
            let n = count_cyclic_occurrences(&u, &base).unwrap();
            proptest::prop_assume!(base.len() > 0);
            let k = base.len();
            for s in 0..k {
                let rot = {
                    let mut ls = base.letters()[s..].to_vec();
                    ls.extend_from_slice(&base.letters()[..s]);
                    ReducedWord::from_reduced(2, ls)
                };
                prop_assert_eq!(
                    count_cyclic_occurrences(&u, &CyclicWord::from_word(&rot)).unwrap(),
                    n
                );
            }
        }

        #[test]
        fn cyclic_count_is_homogeneous(
            u in word_strategy(2, 3).prop_filter("cyclically reduced pattern",
                |u| !u.is_empty() && u.is_cyclically_reduced()),
            v in word_strategy(2, 6),
            n in 1i64..=8,
        ) {
            let base = count_cyclic_occurrences(&u, &CyclicWord::from_word(&v)).unwrap();
            let power = count_cyclic_occurrences(&u, &CyclicWord::from_word(&v.pow(n))).unwrap();
            prop_assert_eq!(power, base * n as usize);
        }

        #[test]
        fn serialization_round_trip(u in word_strategy(3, 15)) {
            let s = u.to_string();
            prop_assert_eq!(ReducedWord::parse(3, &s).unwrap(), u);
        }
    }
}
