//! Internal versus external geometry of finite samples.
//!
//! A sampled set `Λ ∩ B_R` carries two natural metrics. The *external*
//! metric is the ambient word metric restricted to the sample: how far
//! apart two members are when paths may roam the whole group. The
//! *internal* metric fixes a chain bound `C` and measures the shortest
//! chain through the sample whose consecutive steps have ambient
//! length at most `C`; pairs joined by no such chain are honestly
//! `Disconnected`, never a sentinel number. Disagreement between the
//! two metrics at scale is distortion, and the failure of internal
//! connectedness is exactly the failure of geometric finite generation
//! that the quasi-kernel samples exhibit.
//!
//! On top of the metrics: coarse component partitions at a threshold,
//! growth series with a least-squares polynomial/exponential
//! classifier (the one place this crate uses floating point), and
//! colored covers witnessing asymptotic-dimension-style bounds at a
//! fixed scale, with an exact re-verifier.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::approx::FiniteSample;
use crate::groups::{bfs_ball, distance_between, Element, GroupModel};
use crate::par;
use crate::{Budget, Error, Result};

/// A distance that may not exist: chains confined to a sample can
/// simply fail to reach.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ChainDistance {
    Finite(u64),
    Disconnected,
}

impl ChainDistance {
    pub fn is_finite(self) -> bool {
        matches!(self, ChainDistance::Finite(_))
    }

    pub fn value(self) -> Option<u64> {
        match self {
            ChainDistance::Finite(d) => Some(d),
            ChainDistance::Disconnected => None,
        }
    }
}

impl fmt::Display for ChainDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainDistance::Finite(d) => write!(f, "{d}"),
            ChainDistance::Disconnected => write!(f, "disconnected"),
        }
    }
}

/// Which metric a sample carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricKind {
    /// Ambient word metric restricted to the sample.
    External,
    /// Chain metric through the sample with ambient steps ≤ `chain_bound`.
    Internal { chain_bound: u32 },
}

/// A finite set of group elements together with one of the two
/// metrics, a basepoint-norm table, and an honest horizon: growth
/// claims are only made up to `valid_radius`, beyond which truncation
/// could distort counts.
#[derive(Debug, Clone)]
pub struct MetricSample {
    model: GroupModel,
    generators: Vec<Element>,
    label: String,
    kind: MetricKind,
    elements: Vec<Element>,
    index: HashMap<Element, usize>,
    norms: Vec<ChainDistance>,
    valid_radius: u32,
    /// Internal metric only: the ambient ball of radius `chain_bound`,
    /// identity removed — the legal chain steps.
    steps: Vec<Element>,
    /// Whether `generators` is the model's standard marking, enabling
    /// closed-form ambient distances.
    standard_marking: bool,
}

/// The ambient word metric restricted to a sample. Norms come from the
/// sample's recorded BFS distances, so they are exact; pair distances
/// are computed on demand by bidirectional BFS in the ambient group.
pub fn external_metric(sample: &FiniteSample) -> MetricSample {
    let elements: Vec<Element> = sample.elements().iter().map(|(x, _)| x.clone()).collect();
    let index = elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, x)| (x, i))
        .collect();
    let norms = sample
        .elements()
        .iter()
        .map(|(_, d)| ChainDistance::Finite(u64::from(*d)))
        .collect();
    let standard_marking = sample.generators() == sample.model().generators().as_slice();
    MetricSample {
        model: sample.model(),
        generators: sample.generators().to_vec(),
        label: sample.label().to_string(),
        kind: MetricKind::External,
        elements,
        index,
        norms,
        valid_radius: sample.radius(),
        steps: Vec::new(),
        standard_marking,
    }
}

/// The chain metric on a sample: steps move between sample members at
/// ambient distance ≤ `chain_bound`.
///
/// Growth claims are valid to radius `R / C`: a chain of `r ≤ R/C`
/// steps from the identity cannot leave the ambient ball the sample
/// was cut from, so those chain balls agree with the untruncated set's.
pub fn internal_metric(
    sample: &FiniteSample,
    chain_bound: u32,
    budget: Budget,
) -> Result<MetricSample> {
    let elements: Vec<Element> = sample.elements().iter().map(|(x, _)| x.clone()).collect();
    chain_metric(
        sample.model(),
        sample.generators(),
        elements,
        chain_bound,
        sample.radius() / chain_bound.max(1),
        sample.label(),
        budget,
    )
}

/// The chain metric on an explicitly listed element set. The caller
/// declares the horizon radius its claims are good for.
pub fn chain_metric(
    model: GroupModel,
    generators: &[Element],
    elements: Vec<Element>,
    chain_bound: u32,
    valid_radius: u32,
    label: &str,
    budget: Budget,
) -> Result<MetricSample> {
    if chain_bound == 0 {
        return Err(Error::SampleUnsuitable(
            "chain bound must be positive".into(),
        ));
    }
    let steps: Vec<Element> = bfs_ball(model, generators, chain_bound, budget)?
        .elements()
        .iter()
        .filter(|(_, d)| *d > 0)
        .map(|(x, _)| x.clone())
        .collect();
    let index: HashMap<Element, usize> = elements
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, x)| (x, i))
        .collect();
    let standard_marking = generators == model.generators().as_slice();
    let mut sample = MetricSample {
        model,
        generators: generators.to_vec(),
        label: label.to_string(),
        kind: MetricKind::Internal { chain_bound },
        elements,
        index,
        norms: Vec::new(),
        valid_radius,
        steps,
        standard_marking,
    };
    sample.norms = match sample.index.get(&model.identity()) {
        Some(&i) => sample.flood(i),
        None => vec![ChainDistance::Disconnected; sample.elements.len()],
    };
    Ok(sample)
}

impl MetricSample {
    pub fn model(&self) -> GroupModel {
        self.model
    }

    pub fn kind(&self) -> MetricKind {
        self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.index.contains_key(x)
    }

    /// Horizon radius within which ball counts are exact for the
    /// untruncated set.
    pub fn valid_radius(&self) -> u32 {
        self.valid_radius
    }

    /// Distance from the identity in this sample's metric. For
    /// internal samples missing the identity, every norm is
    /// `Disconnected`.
    pub fn norm(&self, x: &Element) -> Option<ChainDistance> {
        self.index.get(x).map(|&i| self.norms[i])
    }

    /// Distance between two members in this sample's metric.
    ///
    /// External distances run an ambient bidirectional BFS capped at
    /// twice the sample radius (always enough for in-sample pairs);
    /// internal distances run a chain BFS confined to the sample.
    pub fn distance(&self, x: &Element, y: &Element, budget: Budget) -> Result<ChainDistance> {
        let (&ix, &iy) = match (self.index.get(x), self.index.get(y)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::SampleUnsuitable("element outside the sample".into())),
        };
        match self.kind {
            MetricKind::External => {
                if let Some(d) = self.ambient_closed_form(x, y) {
                    return Ok(ChainDistance::Finite(d));
                }
                let cap = 2 * self.valid_radius;
                let d = distance_between(self.model, &self.generators, x, y, cap, budget)?;
                Ok(d.map_or(ChainDistance::Disconnected, |v| {
                    ChainDistance::Finite(u64::from(v))
                }))
            }
            MetricKind::Internal { .. } => {
                if ix == iy {
                    return Ok(ChainDistance::Finite(0));
                }
                let mut seen = vec![false; self.elements.len()];
                seen[ix] = true;
                let mut frontier = vec![ix];
                let mut depth = 0u64;
                while !frontier.is_empty() {
                    depth += 1;
                    let mut next = Vec::new();
                    for &i in &frontier {
                        for j in self.step_neighbors(i) {
                            if !seen[j] {
                                if j == iy {
                                    return Ok(ChainDistance::Finite(depth));
                                }
                                seen[j] = true;
                                next.push(j);
                            }
                        }
                    }
                    frontier = next;
                }
                Ok(ChainDistance::Disconnected)
            }
        }
    }

    /// Exact ambient distance where the word metric has a closed form:
    /// ℓ¹ on free-abelian models and reduced length of `x⁻¹y` on free
    /// models, both valid only for the standard marking.
    fn ambient_closed_form(&self, x: &Element, y: &Element) -> Option<u64> {
        if !self.standard_marking {
            return None;
        }
        match (x, y) {
            (Element::Abelian(a), Element::Abelian(b)) => {
                Some(a.iter().zip(b).map(|(p, q)| p.abs_diff(*q)).sum())
            }
            (Element::Free(a), Element::Free(b)) => {
                let product = a.inverse().mul(b).expect("sample members share a rank");
                Some(product.len() as u64)
            }
            _ => None,
        }
    }

    /// Indices one chain step away (internal metric).
    fn step_neighbors(&self, i: usize) -> Vec<usize> {
        let x = &self.elements[i];
        self.steps
            .iter()
            .filter_map(|s| {
                let y = self.model.mul(x, s).expect("steps share the model");
                self.index.get(&y).copied()
            })
            .collect()
    }

    /// Chain-BFS distances from one source to every member.
    fn flood(&self, source: usize) -> Vec<ChainDistance> {
        let mut dist = vec![ChainDistance::Disconnected; self.elements.len()];
        dist[source] = ChainDistance::Finite(0);
        let mut queue = VecDeque::from([source]);
        while let Some(i) = queue.pop_front() {
            let ChainDistance::Finite(d) = dist[i] else {
                unreachable!()
            };
            for j in self.step_neighbors(i) {
                if dist[j] == ChainDistance::Disconnected {
                    dist[j] = ChainDistance::Finite(d + 1);
                    queue.push_back(j);
                }
            }
        }
        dist
    }
}

/// Partition of a metric sample into coarse components at threshold
/// `c`: the classes of the "distance ≤ c" graph.
///
/// For an external sample the edges come from multiplying by the
/// ambient `c`-ball and landing back in the sample. For an internal
/// sample any threshold `c ≥ 1` yields the chain graph's own
/// components (a chain of short hops is itself a chain), so the
/// partition is the sample's chain-connectivity; `c = 0` isolates
/// every point in either metric.
///
/// Components are listed in first-appearance order of the sample's
/// element order, each sorted that way too.
pub fn coarse_components(
    metric: &MetricSample,
    c: u32,
    budget: Budget,
) -> Result<Vec<Vec<Element>>> {
    let n = metric.elements.len();
    if c == 0 {
        return Ok(metric.elements.iter().map(|x| vec![x.clone()]).collect());
    }
    let hop_steps: Vec<Element> = match metric.kind {
        MetricKind::External => bfs_ball(metric.model, &metric.generators, c, budget)?
            .elements()
            .iter()
            .filter(|(_, d)| *d > 0)
            .map(|(x, _)| x.clone())
            .collect(),
        MetricKind::Internal { .. } => metric.steps.clone(),
    };
    let neighbor = |i: usize| -> Vec<usize> {
        let x = &metric.elements[i];
        hop_steps
            .iter()
            .filter_map(|s| {
                let y = metric.model.mul(x, s).expect("steps share the model");
                metric.index.get(&y).copied()
            })
            .collect()
    };
    let mut component = vec![usize::MAX; n];
    let mut count = 0;
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        component[start] = count;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in neighbor(i) {
                if component[j] == usize::MAX {
                    component[j] = count;
                    queue.push_back(j);
                }
            }
        }
        count += 1;
    }
    let mut classes = vec![Vec::new(); count];
    for (i, &k) in component.iter().enumerate() {
        classes[k].push(metric.elements[i].clone());
    }
    Ok(classes)
}

/// Ball counts `γ(r) = |{x : d(e, x) ≤ r}|` per integer radius, from
/// the sample's basepoint norms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthSeries {
    label: String,
    points: Vec<(u32, u64)>,
}

impl GrowthSeries {
    /// Counts members by norm for `r = 0 ..= valid_radius`. The sample
    /// must contain the identity (the basepoint).
    pub fn from_metric(metric: &MetricSample) -> Result<GrowthSeries> {
        let e = metric.model.identity();
        if !metric.contains(&e) {
            return Err(Error::SampleUnsuitable(
                "growth needs the identity as basepoint".into(),
            ));
        }
        let points = (0..=metric.valid_radius)
            .map(|r| {
                let count = metric
                    .norms
                    .iter()
                    .filter(|d| matches!(d, ChainDistance::Finite(v) if *v <= u64::from(r)))
                    .count() as u64;
                (r, count)
            })
            .collect();
        Ok(GrowthSeries {
            label: metric.label.clone(),
            points,
        })
    }

    /// Builds a series from explicit `(r, γ(r))` points (for oracles
    /// and the classifier's own tests). Points must be nondecreasing
    /// in both coordinates with γ(0) ≥ 1 if present.
    pub fn from_points(label: &str, points: Vec<(u32, u64)>) -> Result<GrowthSeries> {
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 || w[1].1 < w[0].1 {
                return Err(Error::SampleUnsuitable(
                    "growth series must be strictly increasing in r and nondecreasing in γ".into(),
                ));
            }
        }
        if let Some(&(0, g0)) = points.first() {
            if g0 == 0 {
                return Err(Error::SampleUnsuitable("γ(0) must be at least 1".into()));
            }
        }
        Ok(GrowthSeries {
            label: label.to_string(),
            points,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn points(&self) -> &[(u32, u64)] {
        &self.points
    }

    pub fn value_at(&self, r: u32) -> Option<u64> {
        self.points
            .iter()
            .find(|(pr, _)| *pr == r)
            .map(|(_, g)| *g)
    }
}

/// Outcome of the growth classifier. Estimates are least-squares
/// slopes: the degree of `log γ` against `log r`, or the rate of
/// `log γ` against `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GrowthClass {
    Polynomial { degree: f64 },
    Exponential { rate: f64 },
    Inconclusive,
}

/// Least-squares classification of a growth series.
///
/// Fits `log γ` linearly against `r` (exponential model) and against
/// `log r` (polynomial model) on the radii ≥ 1, then compares mean
/// squared residuals. The polynomial model wins whenever it fits at
/// least as well; the exponential model must improve on it by 20%
/// (declared heuristic — growth classes are asymptotic notions and a
/// desk-scale call needs a stated margin); anything between is
/// inconclusive.
pub fn growth_classify(series: &GrowthSeries) -> Result<GrowthClass> {
    let data: Vec<(f64, f64)> = series
        .points
        .iter()
        .filter(|(r, _)| *r >= 1)
        .map(|(r, g)| (f64::from(*r), (*g as f64).ln()))
        .collect();
    if data.len() < 5 {
        return Err(Error::TooFewPoints {
            min: 5,
            got: data.len(),
        });
    }
    let (rate, _, mse_exp) = least_squares(data.iter().map(|&(r, lg)| (r, lg)));
    let (degree, _, mse_poly) = least_squares(data.iter().map(|&(r, lg)| (r.ln(), lg)));
    if mse_poly <= mse_exp {
        Ok(GrowthClass::Polynomial { degree })
    } else if mse_exp <= 0.8 * mse_poly {
        Ok(GrowthClass::Exponential { rate })
    } else {
        Ok(GrowthClass::Inconclusive)
    }
}

/// Simple linear regression returning (slope, intercept, mean squared
/// residual).
fn least_squares(points: impl Iterator<Item = (f64, f64)> + Clone) -> (f64, f64, f64) {
    let n = points.clone().count() as f64;
    let (sx, sy) = points
        .clone()
        .fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (x, y) in points.clone() {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let intercept = my - slope * mx;
    let mut rss = 0.0;
    for (x, y) in points {
        let e = y - (intercept + slope * x);
        rss += e * e;
    }
    (slope, intercept, rss / n)
}

/// A colored cover of a metric sample: pieces carry a color, every
/// member is covered, same-color pieces are more than `separation`
/// apart, and every piece has diameter at most `bound`. The number of
/// colors witnesses a dimension-style upper bound at scale
/// `(separation, bound)`.
#[derive(Debug, Clone)]
pub struct ColoredCover {
    separation: u32,
    bound: u32,
    pieces: Vec<(u32, Vec<Element>)>,
}

impl ColoredCover {
    pub fn separation(&self) -> u32 {
        self.separation
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// `(color, members)` pairs.
    pub fn pieces(&self) -> &[(u32, Vec<Element>)] {
        &self.pieces
    }

    /// Number of colors used.
    pub fn colors(&self) -> u32 {
        self.pieces
            .iter()
            .map(|(c, _)| c + 1)
            .max()
            .unwrap_or(0)
    }

    /// Exact re-verification of the three cover conditions against the
    /// sample's own metric: coverage, same-color separation strictly
    /// greater than `separation`, and piece diameter at most `bound`.
    /// Returns human-readable violations; an empty list means valid.
    pub fn violations(&self, metric: &MetricSample, budget: Budget) -> Result<Vec<String>> {
        let mut problems = Vec::new();
        let mut covered: HashMap<&Element, bool> =
            metric.elements.iter().map(|x| (x, false)).collect();
        for (_, members) in &self.pieces {
            for x in members {
                match covered.get_mut(x) {
                    Some(flag) => *flag = true,
                    None => problems.push(format!("piece member {x} is outside the sample")),
                }
            }
        }
        for (x, flag) in &covered {
            if !flag {
                problems.push(format!("{x} is not covered"));
            }
        }
        // Diameters.
        for (color, members) in &self.pieces {
            for (i, x) in members.iter().enumerate() {
                for y in &members[i + 1..] {
                    let d = metric.distance(x, y, budget)?;
                    let ok = matches!(d, ChainDistance::Finite(v) if v <= u64::from(self.bound));
                    if !ok {
                        problems.push(format!(
                            "color-{color} piece containing {x} has diameter above {} (d({x},{y}) = {d})",
                            self.bound
                        ));
                    }
                }
            }
        }
        // Same-color separation.
        let mut pair_jobs = Vec::new();
        for (i, (ci, mi)) in self.pieces.iter().enumerate() {
            for (cj, mj) in self.pieces.iter().skip(i + 1) {
                if ci == cj {
                    pair_jobs.push((ci, mi, mj));
                }
            }
        }
        let found: Vec<Option<String>> = par::map_slice(&pair_jobs, |(c, mi, mj)| {
            for x in mi.iter() {
                for y in mj.iter() {
                    let d = metric
                        .distance(x, y, budget)
                        .expect("piece members are sample members");
                    let too_close =
                        matches!(d, ChainDistance::Finite(v) if v <= u64::from(self.separation));
                    if too_close {
                        return Some(format!(
                            "color-{c} pieces are only {d} apart ({x} vs {y})"
                        ));
                    }
                }
            }
            None
        });
        problems.extend(found.into_iter().flatten());
        Ok(problems)
    }
}

/// Produces a colored cover of the sample at scale `(separation R,
/// bound D)`.
///
/// Free-abelian samples get deterministic tilings: intervals of length
/// `D+1` in two alternating colors on ℤ, and a running-bond brick
/// pattern (bricks `2R × R`, rows staggered by half a brick, colored
/// `(brick + 2·row) mod 3`) on ℤ² whenever `3R − 2 ≤ D`. Anything else
/// falls back to a greedy pass that opens a new piece — and, when
/// separation forces it, a new color — only when no existing one
/// admits the element.
///
/// # Panics
///
/// Panics if `bound < separation`.
pub fn greedy_colored_cover(
    metric: &MetricSample,
    separation: u32,
    bound: u32,
    budget: Budget,
) -> Result<ColoredCover> {
    assert!(
        bound >= separation,
        "cover bound must be at least the separation"
    );
    let pieces = match metric.model {
        GroupModel::FreeAbelian { rank: 1 } => interval_tiling(metric, bound),
        GroupModel::FreeAbelian { rank: 2 } if 3 * separation <= bound + 2 => {
            brick_tiling(metric, separation)
        }
        _ => greedy_pieces(metric, separation, bound, budget)?,
    };
    Ok(ColoredCover {
        separation,
        bound,
        pieces,
    })
}

/// ℤ: intervals `[kL, (k+1)L − 1]` with `L = D + 1`, colored by the
/// parity of `k`. Same-color intervals are `L + 1 > D ≥ R` apart and
/// each has diameter `L − 1 = D`.
fn interval_tiling(metric: &MetricSample, bound: u32) -> Vec<(u32, Vec<Element>)> {
    let l = i64::from(bound) + 1;
    let mut tiles: HashMap<i64, Vec<Element>> = HashMap::new();
    for x in &metric.elements {
        let Element::Abelian(c) = x else {
            unreachable!("interval tiling only runs on rank-1 abelian samples")
        };
        tiles.entry(c[0].div_euclid(l)).or_default().push(x.clone());
    }
    let mut keys: Vec<i64> = tiles.keys().copied().collect();
    keys.sort();
    keys.into_iter()
        .map(|k| (k.rem_euclid(2) as u32, tiles.remove(&k).unwrap()))
        .collect()
}

/// ℤ²: running-bond bricks of width `2R` and height `R`, each row
/// shifted half a brick against the one below, three colors
/// `(brick_index + 2·row) mod 3`. Closest same-color pairs are then
/// either `R + 1` apart (half-brick offset plus the row gap, or the
/// row-skip) or farther, so strict `> R` separation holds, and each
/// brick's ℓ¹ diameter is `3R − 2`.
fn brick_tiling(metric: &MetricSample, separation: u32) -> Vec<(u32, Vec<Element>)> {
    let w = 2 * i64::from(separation.max(1));
    let h = i64::from(separation.max(1));
    let mut tiles: HashMap<(i64, i64), Vec<Element>> = HashMap::new();
    for x in &metric.elements {
        let Element::Abelian(c) = x else {
            unreachable!("brick tiling only runs on rank-2 abelian samples")
        };
        let row = c[1].div_euclid(h);
        // Stair indexing: each row is shifted by half a brick, so the
        // brick index is computed after undoing the cumulative shift.
        let brick = (c[0] - row * (w / 2)).div_euclid(w);
        tiles.entry((brick, row)).or_default().push(x.clone());
    }
    let mut keys: Vec<(i64, i64)> = tiles.keys().copied().collect();
    keys.sort();
    keys.into_iter()
        .map(|(brick, row)| {
            let color = (brick + 2 * row).rem_euclid(3) as u32;
            (color, tiles.remove(&(brick, row)).unwrap())
        })
        .collect()
}

/// Generic greedy cover for samples without a coordinate tiling.
fn greedy_pieces(
    metric: &MetricSample,
    separation: u32,
    bound: u32,
    budget: Budget,
) -> Result<Vec<(u32, Vec<Element>)>> {
    let mut pieces: Vec<(u32, Vec<Element>)> = Vec::new();
    'next: for x in &metric.elements {
        // Try to join an existing piece: must keep its diameter within
        // the bound and stay clear of the other pieces of its color.
        'candidate: for p in 0..pieces.len() {
            let color = pieces[p].0;
            for y in &pieces[p].1 {
                let d = metric.distance(x, y, budget)?;
                if !matches!(d, ChainDistance::Finite(v) if v <= u64::from(bound)) {
                    continue 'candidate;
                }
            }
            if color_admits(metric, &pieces, p, color, x, separation, budget)? {
                pieces[p].1.push(x.clone());
                continue 'next;
            }
        }
        // Open a new piece with the first color that keeps separation.
        let colors = pieces.iter().map(|(c, _)| c + 1).max().unwrap_or(0);
        for color in 0..=colors {
            if color_admits(metric, &pieces, usize::MAX, color, x, separation, budget)? {
                pieces.push((color, vec![x.clone()]));
                continue 'next;
            }
        }
        unreachable!("a fresh color always admits the element");
    }
    Ok(pieces)
}

/// Whether `x` can sit in piece `own` (or a new piece, `own = MAX`) of
/// the given color without coming within `separation` of that color's
/// other pieces.
fn color_admits(
    metric: &MetricSample,
    pieces: &[(u32, Vec<Element>)],
    own: usize,
    color: u32,
    x: &Element,
    separation: u32,
    budget: Budget,
) -> Result<bool> {
    for (q, (cq, members)) in pieces.iter().enumerate() {
        if q == own || *cq != color {
            continue;
        }
        for y in members {
            let d = metric.distance(x, y, budget)?;
            if matches!(d, ChainDistance::Finite(v) if v <= u64::from(separation)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
