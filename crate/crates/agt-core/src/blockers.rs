//! Word-window graphs and blocker search.
//!
//! A *blocker* for a pattern `u` and a pair `(x, y)` is a word `w`
//! such that `xwy` multiplies without cancellation and contains no
//! occurrence of `u` or `u⁻¹` beyond those already inside `x` and `y`:
//! inserting `w` stops the pattern count from growing across the
//! junction. Searching for blockers reduces to path-finding in a
//! De Bruijn-style graph whose vertices are the reduced words of
//! length `‖u‖ − 1` (the sliding windows) and whose edges are the
//! reduced words of length `‖u‖`, with the edge pair `(u, u⁻¹)`
//! forbidden.
//!
//! The search ([`find_blocker`]) is an exhaustive breadth-first scan,
//! so a negative answer is a certificate up to the stated length, and
//! every positive answer is re-verified by direct occurrence counting
//! ([`verify_blocker`]) — an independent code path from the graph
//! walk.

use std::collections::{HashMap, HashSet, VecDeque};

use num_rational::Ratio;

use crate::par;
use crate::word::{count_occurrences, enumerate_ball, sphere_size, Letter, ReducedWord};
use crate::{Budget, Error, Result};

/// The window graph of order `word_length` over a free group: vertices
/// are the reduced words of length `word_length − 1`, and each reduced
/// word `u` of length `word_length` is an edge from its length-(l−1)
/// prefix to its length-(l−1) suffix, labelled by its last letter.
#[derive(Debug, Clone)]
pub struct DbmGraph {
    rank: u32,
    word_length: u32,
    /// Shortlex-sorted windows of length `word_length − 1`.
    vertices: Vec<ReducedWord>,
    index: HashMap<ReducedWord, usize>,
}

impl DbmGraph {
    /// Builds the graph for the given rank and pattern length.
    ///
    /// Requires `rank ≥ 2` and `word_length ≥ 2`; the budget bounds the
    /// materialized vertex set.
    pub fn build(rank: u32, word_length: u32, budget: Budget) -> Result<DbmGraph> {
        if rank < 2 {
            return Err(Error::PatternInvalid {
                reason: "window graphs need rank at least 2".into(),
            });
        }
        if word_length < 2 {
            return Err(Error::PatternInvalid {
                reason: "window graphs need pattern length at least 2".into(),
            });
        }
        budget.admit(DbmGraph::expected_vertex_count(rank, word_length))?;
        let vertices: Vec<ReducedWord> = enumerate_ball(rank, word_length - 1, budget)?
            .into_iter()
            .filter(|w| w.len() == (word_length - 1) as usize)
            .collect();
        let index = vertices
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        Ok(DbmGraph {
            rank,
            word_length,
            vertices,
            index,
        })
    }

    /// Closed-form vertex count `2r(2r−1)^{l−2}`.
    pub fn expected_vertex_count(rank: u32, word_length: u32) -> usize {
        sphere_size(rank, word_length.saturating_sub(1))
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// The pattern length `l`; vertices are windows of length `l − 1`.
    pub fn word_length(&self) -> u32 {
        self.word_length
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Number of edges: the reduced words of length `l`.
    pub fn edge_count(&self) -> usize {
        sphere_size(self.rank, self.word_length)
    }

    /// Windows in shortlex order.
    pub fn vertices(&self) -> &[ReducedWord] {
        &self.vertices
    }

    pub fn vertex_index(&self, v: &ReducedWord) -> Option<usize> {
        self.index.get(v).copied()
    }

    /// Outgoing edges of a vertex as `(edge word, target index)` pairs,
    /// in label order. Every vertex has exactly `2r − 1` of them.
    pub fn out_edges(&self, vertex: usize) -> Vec<(ReducedWord, usize)> {
        let v = &self.vertices[vertex];
        let mut edges = Vec::with_capacity(2 * self.rank as usize - 1);
        for c in alphabet(self.rank) {
            let mut letters = v.letters().to_vec();
            if letters.last() == Some(&c.inverse()) {
                continue;
            }
            letters.push(c);
            let edge = ReducedWord::reduce(self.rank, &letters).expect("letters are in range");
            let target = ReducedWord::reduce(self.rank, &letters[1..]).expect("suffix stays valid");
            let t = self.index[&target];
            edges.push((edge, t));
        }
        edges
    }

    /// The vertices `v` whose juxtaposition with `y` is clean: `vy` is
    /// reduced and no occurrence of `u` or `u⁻¹` spans the junction.
    /// These are the admissible final windows of a blocker for a pair
    /// ending at `y`.
    ///
    /// Words `y` longer than `l − 1` are truncated to their first
    /// `l − 1` letters, which carry all junction information.
    pub fn acceptance_states(&self, u: &ReducedWord, y: &ReducedWord) -> Result<Vec<ReducedWord>> {
        if u.rank() != self.rank || y.rank() != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: if u.rank() != self.rank {
                    u.rank()
                } else {
                    y.rank()
                },
            });
        }
        if u.len() != self.word_length as usize {
            return Err(Error::PatternInvalid {
                reason: format!(
                    "pattern length {} does not match the graph's window length {}",
                    u.len(),
                    self.word_length
                ),
            });
        }
        if y.is_empty() {
            return Err(Error::EmptyWord);
        }
        let u_letters = u.letters();
        let u_inv = u.inverse();
        let window = (self.word_length - 1) as usize;
        let y_prefix = &y.letters()[..y.len().min(window)];
        Ok(self
            .vertices
            .iter()
            .filter(|v| junction_clear(v.letters(), y_prefix, u_letters, u_inv.letters()))
            .cloned()
            .collect())
    }

    /// Whether every ordered vertex pair is joined by a directed path
    /// avoiding the edge pair `(u, u⁻¹)`. This is the graph property
    /// that makes every pair blockable; it holds for rank ≥ 3 and can
    /// fail for rank 2.
    pub fn strongly_connected_avoiding(&self, u: &ReducedWord) -> Result<bool> {
        if u.rank() != self.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: u.rank(),
            });
        }
        if u.len() != self.word_length as usize {
            return Err(Error::PatternInvalid {
                reason: format!(
                    "forbidden pair must be an edge: length {} vs window length {}",
                    u.len(),
                    self.word_length
                ),
            });
        }
        let u_inv = u.inverse();
        let adjacency: Vec<Vec<usize>> = (0..self.vertices.len())
            .map(|i| {
                self.out_edges(i)
                    .into_iter()
                    .filter(|(edge, _)| edge != u && *edge != u_inv)
                    .map(|(_, t)| t)
                    .collect()
            })
            .collect();
        let n = self.vertices.len();
        let sources: Vec<usize> = (0..n).collect();
        let full = par::map_slice(&sources, |&source| {
            let mut seen = vec![false; n];
            seen[source] = true;
            let mut reached = 1usize;
            let mut queue = VecDeque::from([source]);
            while let Some(i) = queue.pop_front() {
                for &j in &adjacency[i] {
                    if !seen[j] {
                        seen[j] = true;
                        reached += 1;
                        queue.push_back(j);
                    }
                }
            }
            reached == n
        });
        Ok(full.into_iter().all(|ok| ok))
    }

    /// The exact lower bound on the number of acceptance states proved
    /// by inclusion-exclusion over the failure cases:
    /// `(2r−1)^{l−2} (2r − 3 − 1/(r−1))`. The count returned by
    /// [`DbmGraph::acceptance_states`] strictly exceeds it for r ≥ 3.
    pub fn acceptance_lower_bound(&self) -> Ratio<i64> {
        let q = i64::from(2 * self.rank - 1);
        let factor = q.pow(self.word_length - 2);
        Ratio::from_integer(factor)
            * (Ratio::from_integer(2 * i64::from(self.rank) - 3)
                - Ratio::new(1, i64::from(self.rank) - 1))
    }
}

/// The letters of rank `r` in alphabet order
/// (`a1 < a1⁻¹ < a2 < a2⁻¹ < …`), the order all searches scan in.
fn alphabet(rank: u32) -> impl Iterator<Item = Letter> {
    (1..=rank).flat_map(|i| {
        [
            Letter::new(i, false).expect("index is positive"),
            Letter::new(i, true).expect("index is positive"),
        ]
    })
}

/// Whether gluing `window · right` is reduced and free of `u` and
/// `u⁻¹`. Both inputs are shorter than the pattern, so every
/// occurrence in the concatenation necessarily spans the junction —
/// exactly the occurrences a blocker must prevent.
fn junction_clear(window: &[Letter], right: &[Letter], u: &[Letter], u_inv: &[Letter]) -> bool {
    if let (Some(&last), Some(&first)) = (window.last(), right.first()) {
        if last == first.inverse() {
            return false;
        }
    }
    let concat: Vec<Letter> = window.iter().chain(right).copied().collect();
    !contains_pattern(&concat, u) && !contains_pattern(&concat, u_inv)
}

fn contains_pattern(haystack: &[Letter], needle: &[Letter]) -> bool {
    haystack.len() >= needle.len() && haystack.windows(needle.len()).any(|w| w == needle)
}

/// Occurrence-count transcript for a claimed blocker, produced by
/// direct counting — independent of the graph search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockerCheck {
    /// `‖xwy‖ = ‖x‖ + ‖w‖ + ‖y‖`: nothing cancelled.
    pub reduced_product: bool,
    pub pattern_in_left: usize,
    pub pattern_in_right: usize,
    pub pattern_in_product: usize,
    pub inverse_in_left: usize,
    pub inverse_in_right: usize,
    pub inverse_in_product: usize,
}

impl BlockerCheck {
    /// Both count identities and the reduced product hold.
    pub fn holds(&self) -> bool {
        self.reduced_product
            && self.pattern_in_product == self.pattern_in_left + self.pattern_in_right
            && self.inverse_in_product == self.inverse_in_left + self.inverse_in_right
    }
}

/// Outcome of a blocker search: the minimal blocker with its
/// verification transcript, or a certificate that none exists up to
/// the searched length.
#[derive(Debug, Clone)]
pub enum BlockerOutcome {
    Found {
        w: ReducedWord,
        check: BlockerCheck,
    },
    NotFound {
        searched_to: u32,
    },
}

impl BlockerOutcome {
    pub fn found(&self) -> Option<&ReducedWord> {
        match self {
            BlockerOutcome::Found { w, .. } => Some(w),
            BlockerOutcome::NotFound { .. } => None,
        }
    }
}

/// Searches for the shortest blocker `w` for the pair `(x, y)`, up to
/// length `max_len`.
///
/// Breadth-first over states `(window, min(steps, l))`, where the
/// window is the last `l − 1` letters written so far — initially the
/// tail of `x` — and steps below `l` are tracked separately because a
/// valid blocker needs `‖w‖ ≥ l` (shorter insertions could let the
/// pattern bridge from `x` all the way into `y`). Steps scan labels in
/// alphabet order, so the result is the shortest blocker and
/// lexicographically least among those. A `NotFound` is exhaustive:
/// no blocker of length ≤ `max_len` exists.
pub fn find_blocker(
    u: &ReducedWord,
    x: &ReducedWord,
    y: &ReducedWord,
    max_len: u32,
) -> Result<BlockerOutcome> {
    if u.len() < 2 {
        return Err(Error::TooShort {
            min: 2,
            len: u.len(),
        });
    }
    if x.rank() != u.rank() || y.rank() != u.rank() {
        return Err(Error::RankMismatch {
            left: u.rank(),
            right: if x.rank() != u.rank() {
                x.rank()
            } else {
                y.rank()
            },
        });
    }
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptyWord);
    }
    let l = u.len();
    let window = l - 1;
    let u_letters = u.letters().to_vec();
    let u_inv = u.inverse();
    let letters: Vec<Letter> = alphabet(u.rank()).collect();

    let start: Vec<Letter> = x.letters()[x.len().saturating_sub(window)..].to_vec();
    let y_prefix: Vec<Letter> = y.letters()[..y.len().min(window)].to_vec();

    struct Node {
        window: Vec<Letter>,
        steps: usize,
        parent: usize,
        via: Option<Letter>,
    }
    let mut arena = vec![Node {
        window: start.clone(),
        steps: 0,
        parent: 0,
        via: None,
    }];
    let mut seen: HashSet<(Vec<Letter>, usize)> = HashSet::from([(start, 0)]);
    let mut queue = VecDeque::from([0usize]);

    while let Some(node) = queue.pop_front() {
        let steps = arena[node].steps;
        if steps as u32 >= max_len {
            continue;
        }
        for &c in &letters {
            let win = &arena[node].window;
            if win.last() == Some(&c.inverse()) {
                continue;
            }
            let next_window = if win.len() == window {
                // The step writes the length-l window `win · c`; refuse
                // the two forbidden words.
                let mut edge = win.clone();
                edge.push(c);
                if edge == u_letters || edge == u_inv.letters() {
                    continue;
                }
                edge.remove(0);
                edge
            } else {
                let mut grown = win.clone();
                grown.push(c);
                grown
            };
            let next_steps = steps + 1;
            let key = (next_window.clone(), next_steps.min(l));
            if !seen.insert(key) {
                continue;
            }
            arena.push(Node {
                window: next_window,
                steps: next_steps,
                parent: node,
                via: Some(c),
            });
            let id = arena.len() - 1;
            if next_steps >= l
                && junction_clear(&arena[id].window, &y_prefix, &u_letters, u_inv.letters())
            {
                // Reconstruct w from the parent chain.
                let mut path = Vec::with_capacity(next_steps);
                let mut k = id;
                while let Some(c) = arena[k].via {
                    path.push(c);
                    k = arena[k].parent;
                }
                path.reverse();
                let w = ReducedWord::reduce(u.rank(), &path)?;
                assert_eq!(w.len(), path.len(), "blocker letters never cancel");
                let check = verify_blocker(u, x, y, &w)?;
                assert!(check.holds(), "graph search and direct count disagree");
                return Ok(BlockerOutcome::Found { w, check });
            }
            queue.push_back(id);
        }
    }
    Ok(BlockerOutcome::NotFound {
        searched_to: max_len,
    })
}

/// Verifies the blocker property by direct counting: `xwy` must be a
/// reduced product, and the occurrence counts of the pattern and its
/// inverse in `xwy` must equal the sums over `x` and `y` alone.
pub fn verify_blocker(
    u: &ReducedWord,
    x: &ReducedWord,
    y: &ReducedWord,
    w: &ReducedWord,
) -> Result<BlockerCheck> {
    let product = x.mul(w)?.mul(y)?;
    let u_inv = u.inverse();
    Ok(BlockerCheck {
        reduced_product: product.len() == x.len() + w.len() + y.len(),
        pattern_in_left: count_occurrences(u, x)?,
        pattern_in_right: count_occurrences(u, y)?,
        pattern_in_product: count_occurrences(u, &product)?,
        inverse_in_left: count_occurrences(&u_inv, x)?,
        inverse_in_right: count_occurrences(&u_inv, y)?,
        inverse_in_product: count_occurrences(&u_inv, &product)?,
    })
}

/// Outcome of sweeping every boundary pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockerSweep {
    /// Every pair has a blocker; the longest minimal blocker over the
    /// sweep is the empirical analogue of the existence theorem's
    /// constant for this pattern.
    AllBlocked {
        pairs: usize,
        max_blocker_length: usize,
    },
    /// Some pair has no blocker up to the searched length.
    Stuck {
        x: ReducedWord,
        y: ReducedWord,
        searched_to: u32,
    },
}

/// Runs [`find_blocker`] for every pair `(x, y)` with
/// `‖x‖ = ‖y‖ = ‖u‖ − 1` — the boundary windows that determine the
/// blocker property for arbitrary pairs. Pairs are scanned in shortlex
/// order and searched in parallel.
pub fn blocker_sweep(u: &ReducedWord, max_len: u32, budget: Budget) -> Result<BlockerSweep> {
    if u.len() < 2 {
        return Err(Error::TooShort {
            min: 2,
            len: u.len(),
        });
    }
    let boundary = (u.len() - 1) as u32;
    let words: Vec<ReducedWord> = enumerate_ball(u.rank(), boundary, budget)?
        .into_iter()
        .filter(|w| w.len() == boundary as usize)
        .collect();
    let mut pairs = Vec::with_capacity(words.len() * words.len());
    for x in &words {
        for y in &words {
            pairs.push((x.clone(), y.clone()));
        }
    }
    let outcomes = par::try_map_slice(&pairs, |(x, y)| find_blocker(u, x, y, max_len))?;
    let mut max_blocker_length = 0usize;
    for ((x, y), outcome) in pairs.iter().zip(&outcomes) {
        match outcome {
            BlockerOutcome::Found { w, .. } => max_blocker_length = max_blocker_length.max(w.len()),
            BlockerOutcome::NotFound { searched_to } => {
                return Ok(BlockerSweep::Stuck {
                    x: x.clone(),
                    y: y.clone(),
                    searched_to: *searched_to,
                });
            }
        }
    }
    Ok(BlockerSweep::AllBlocked {
        pairs: pairs.len(),
        max_blocker_length,
    })
}
