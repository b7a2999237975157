//! At-scale verification of approximate-group structure.
//!
//! An approximate subgroup is a symmetric set `Λ ∋ e` whose square is
//! covered by finitely many translates: `Λ² ⊆ Λ·F` for a finite `F`.
//! On a computer we only ever hold `Λ ∩ B_R`, so every claim here is a
//! sampled claim: products are formed from factors inside an inner
//! radius `r`, covering elements are drawn from the sampled set, and
//! the horizon `R` must be generous enough (`R ≥ 3r`) that no product
//! or covering candidate escapes the window. Inclusions are verified
//! element by element with exact arithmetic; nothing is extrapolated.
//!
//! The other classical devices live here too: Ruzsa covers (a maximal
//! set of disjoint translates yields a covering), tripling ratios
//! `|A³|/|A|`, symmetrization `A ∪ {e} ∪ A⁻¹`, and the power-covering
//! relations `Λ^k ⊆ Λ^{k−l}·F^l` that bootstrap from the square case.

use std::collections::{BTreeSet, HashMap};

use num_rational::Rational64;

use crate::groups::{BallTable, Element, GroupModel};
use crate::par;
use crate::{Budget, Error, Result};

/// Which side the covering set multiplies on. The search below always
/// produces right covers `Λ² ⊆ Λ·F`; for a symmetric sample the left
/// version follows by inverting everything.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

/// A finite truncation `Λ ∩ B_R` of a candidate approximate subgroup,
/// with the ambient word-metric distance of every member recorded.
///
/// Whether the sample is symmetric (closed under inversion) and unital
/// (contains the identity) is computed at construction, not declared.
#[derive(Debug, Clone)]
pub struct FiniteSample {
    model: GroupModel,
    generators: Vec<Element>,
    label: String,
    radius: u32,
    elements: Vec<(Element, u32)>,
    index: HashMap<Element, u32>,
    symmetric: bool,
    unital: bool,
}

impl FiniteSample {
    /// Restricts a ball table to the elements satisfying a membership
    /// predicate. The label should say what the predicate is; it is
    /// carried into reports.
    pub fn from_ball_filter<P>(ball: &BallTable, label: &str, mut keep: P) -> FiniteSample
    where
        P: FnMut(&Element) -> bool,
    {
        let model = ball.model();
        let elements: Vec<(Element, u32)> = ball
            .elements()
            .iter()
            .filter(|(x, _)| keep(x))
            .cloned()
            .collect();
        let index: HashMap<Element, u32> = elements.iter().cloned().collect();
        let symmetric = elements.iter().all(|(x, _)| {
            model
                .inverse(x)
                .map(|inv| index.contains_key(&inv))
                .unwrap_or(false)
        });
        let unital = index.contains_key(&model.identity());
        FiniteSample {
            model,
            generators: ball.generators().to_vec(),
            label: label.to_string(),
            radius: ball.radius(),
            elements,
            index,
            symmetric,
            unital,
        }
    }

    /// The whole ball as a sample (the subgroup-of-itself case).
    pub fn from_ball(ball: &BallTable, label: &str) -> FiniteSample {
        FiniteSample::from_ball_filter(ball, label, |_| true)
    }

    pub fn model(&self) -> GroupModel {
        self.model
    }

    /// The ambient generating set the sample's distances refer to.
    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Ambient ball radius the sample was cut from.
    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Members with their ambient distances, sorted by distance then
    /// normal form.
    pub fn elements(&self) -> &[(Element, u32)] {
        &self.elements
    }

    /// The members as a plain set.
    pub fn element_set(&self) -> BTreeSet<Element> {
        self.elements.iter().map(|(x, _)| x.clone()).collect()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.index.contains_key(x)
    }

    /// Ambient distance of a member, if present.
    pub fn distance(&self, x: &Element) -> Option<u32> {
        self.index.get(x).copied()
    }

    /// Closed under inversion.
    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// Contains the identity.
    pub fn is_unital(&self) -> bool {
        self.unital
    }

    /// The members within the given ambient distance.
    pub fn within(&self, radius: u32) -> Vec<Element> {
        self.elements
            .iter()
            .take_while(|(_, d)| *d <= radius)
            .map(|(x, _)| x.clone())
            .collect()
    }
}

/// A verified sampled covering relation `Λ^j ⊆ Λ^k · F^l`.
#[derive(Debug, Clone)]
pub struct CoveringWitness {
    f: Vec<Element>,
    direction: Direction,
    exponents: (u32, u32, u32),
    inner_radius: u32,
}

impl CoveringWitness {
    /// The covering set, in the order the greedy search chose it
    /// (largest residual coverage first).
    pub fn f(&self) -> &[Element] {
        &self.f
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// `(j, k, l)` meaning `Λ^j ⊆ Λ^k · F^l` on the sample.
    pub fn exponents(&self) -> (u32, u32, u32) {
        self.exponents
    }

    /// The inner radius the product factors were drawn from.
    pub fn inner_radius(&self) -> u32 {
        self.inner_radius
    }
}

/// Greedy search for a finite `F` with `(Λ ∩ B_r)² ⊆ (Λ ∩ B_R) · F`.
///
/// Covering candidates are the quotients `z⁻¹·(xy)` over in-sample `z`
/// and inner products `xy`; since the sample is symmetric, every
/// candidate is automatically a product of three sampled members, the
/// window the classical argument places `F` in. The greedy pass picks
/// the candidate covering the most residual products, breaking ties
/// toward elements near the identity (when the sample knows their
/// distance) and then by normal-form text, so results are deterministic.
///
/// Requires `R ≥ 3r` so products and candidates stay inside the
/// horizon, and a symmetric, unital sample.
pub fn find_covering(
    sample: &FiniteSample,
    inner_radius: u32,
    budget: Budget,
) -> Result<CoveringWitness> {
    if sample.radius() < 3 * inner_radius {
        return Err(Error::HorizonTooSmall {
            needed: u64::from(3 * inner_radius),
            have: u64::from(sample.radius()),
        });
    }
    if !sample.is_symmetric() || !sample.is_unital() {
        return Err(Error::SampleUnsuitable(
            "covering search needs a symmetric sample containing the identity".into(),
        ));
    }
    let model = sample.model();
    let inner = sample.within(inner_radius);
    budget.admit(inner.len().saturating_mul(inner.len()))?;

    let mut products = BTreeSet::new();
    for x in &inner {
        for y in &inner {
            products.insert(model.mul(x, y)?);
        }
    }
    let products: Vec<Element> = products.into_iter().collect();
    budget.admit(products.len().saturating_mul(sample.len()))?;

    // f = z⁻¹p covers p via z; grouping quotients by candidate yields,
    // for each candidate f, exactly the products with p·f⁻¹ ∈ sample.
    let indices: Vec<usize> = (0..products.len()).collect();
    let quotient_rows: Vec<Vec<(Element, usize)>> = par::map_slice(&indices, |&i| {
        sample
            .elements()
            .iter()
            .map(|(z, _)| {
                let f = model
                    .inverse(z)
                    .and_then(|zi| model.mul(&zi, &products[i]))
                    .expect("sample and products share the model");
                (f, i)
            })
            .collect()
    });
    let mut coverage: HashMap<Element, Vec<usize>> = HashMap::new();
    for row in quotient_rows {
        for (f, i) in row {
            coverage.entry(f).or_default().push(i);
        }
    }
    // Deterministic candidate order for the greedy pass.
    let mut candidates: Vec<(Element, Vec<usize>)> = coverage.into_iter().collect();
    candidates.sort_by_cached_key(|(f, _)| tie_break_key(sample, f));

    let mut alive = vec![true; products.len()];
    let mut remaining = products.len();
    let mut chosen = Vec::new();
    while remaining > 0 {
        let mut best: Option<(usize, usize)> = None;
        for (pos, (_, covers)) in candidates.iter().enumerate() {
            let gain = covers.iter().filter(|&&i| alive[i]).count();
            if gain > best.map_or(0, |(g, _)| g) {
                best = Some((gain, pos));
            }
        }
        let (_, pos) = best.expect("every product has at least its own quotient as candidate");
        let (f, covers) = &candidates[pos];
        for &i in covers {
            if alive[i] {
                alive[i] = false;
                remaining -= 1;
            }
        }
        chosen.push(f.clone());
    }

    Ok(CoveringWitness {
        f: chosen,
        direction: Direction::Right,
        exponents: (2, 1, 1),
        inner_radius,
    })
}

/// Tie-break key for covering candidates: ambient distance when the
/// sample knows the element, then normal-form text.
fn tie_break_key(sample: &FiniteSample, f: &Element) -> (u32, String) {
    (
        sample.distance(f).unwrap_or(u32::MAX),
        sample.model().normal_form(f),
    )
}

/// Checks `(Λ ∩ B_r)² ⊆ (Λ ∩ B_R) · F` by brute force and returns the
/// first uncovered product, or `None` when the covering holds.
pub fn uncovered_product(
    sample: &FiniteSample,
    inner_radius: u32,
    f: &[Element],
) -> Result<Option<Element>> {
    let model = sample.model();
    let inner = sample.within(inner_radius);
    let inverses: Vec<Element> = f
        .iter()
        .map(|x| model.inverse(x))
        .collect::<Result<_>>()?;
    for x in &inner {
        for y in &inner {
            let p = model.mul(x, y)?;
            let covered = inverses
                .iter()
                .any(|fi| model.mul(&p, fi).map(|z| sample.contains(&z)).unwrap_or(false));
            if !covered {
                return Ok(Some(p));
            }
        }
    }
    Ok(None)
}

/// Exact product set `A·B`, parallelized over the left factor.
pub fn product_set(
    model: GroupModel,
    left: &BTreeSet<Element>,
    right: &BTreeSet<Element>,
    budget: Budget,
) -> Result<BTreeSet<Element>> {
    budget.admit(left.len().saturating_mul(right.len()))?;
    let left: Vec<&Element> = left.iter().collect();
    let rows: Vec<Vec<Element>> = par::map_slice(&left, |x| {
        right
            .iter()
            .map(|y| model.mul(x, y).expect("factors share the model"))
            .collect()
    });
    let mut out = BTreeSet::new();
    for row in rows {
        out.extend(row);
    }
    Ok(out)
}

/// Exact power set `A^k` (with `A⁰ = {e}`).
pub fn power_set(
    model: GroupModel,
    a: &BTreeSet<Element>,
    k: u32,
    budget: Budget,
) -> Result<BTreeSet<Element>> {
    let mut out = BTreeSet::new();
    out.insert(model.identity());
    for _ in 0..k {
        out = product_set(model, &out, a, budget)?;
    }
    Ok(out)
}

/// The exact tripling ratio `|A³| / |A|`.
pub fn tripling_ratio(
    model: GroupModel,
    a: &BTreeSet<Element>,
    budget: Budget,
) -> Result<Rational64> {
    if a.is_empty() {
        return Err(Error::TooFewPoints { min: 1, got: 0 });
    }
    let cube = power_set(model, a, 3, budget)?;
    Ok(Rational64::new(cube.len() as i64, a.len() as i64))
}

/// `A ∪ {e} ∪ A⁻¹`: the symmetric unital hull of one generation.
pub fn symmetrize(model: GroupModel, a: &BTreeSet<Element>) -> Result<BTreeSet<Element>> {
    let mut out = a.clone();
    out.insert(model.identity());
    for x in a {
        out.insert(model.inverse(x)?);
    }
    Ok(out)
}

/// Ruzsa covering: a maximal `F ⊆ X` with the translates `f·Y` pairwise
/// disjoint. Maximality forces `X ⊆ F·Y·Y⁻¹`, turning a packing into a
/// covering. Scans `X` in normal-form order, so the result is
/// deterministic.
pub fn ruzsa_cover(
    model: GroupModel,
    x: &BTreeSet<Element>,
    y: &BTreeSet<Element>,
) -> Result<Vec<Element>> {
    if y.is_empty() {
        return Err(Error::TooFewPoints { min: 1, got: 0 });
    }
    let mut chosen = Vec::new();
    let mut occupied = BTreeSet::new();
    for f in x {
        let translate: Vec<Element> = y
            .iter()
            .map(|v| model.mul(f, v))
            .collect::<Result<_>>()?;
        if translate.iter().all(|t| !occupied.contains(t)) {
            occupied.extend(translate);
            chosen.push(f.clone());
        }
    }
    Ok(chosen)
}

/// Checks the power-covering relation `(Λ ∩ B_r)^k ⊆ (Λ ∩ B_R)^{k−l} · F^l`
/// by exact product-set enumeration, returning the first element of the
/// left side missing from the right, or `None` when the inclusion holds.
///
/// Requires `R ≥ k·r` so the left side's factors are honestly sampled,
/// and `l ≤ k`.
pub fn power_cover_check(
    sample: &FiniteSample,
    inner_radius: u32,
    k: u32,
    l: u32,
    f: &BTreeSet<Element>,
    budget: Budget,
) -> Result<Option<Element>> {
    assert!(l <= k, "cannot replace more factors than the power has");
    if sample.radius() < k * inner_radius {
        return Err(Error::HorizonTooSmall {
            needed: u64::from(k * inner_radius),
            have: u64::from(sample.radius()),
        });
    }
    let model = sample.model();
    let inner: BTreeSet<Element> = sample.within(inner_radius).into_iter().collect();
    let lhs = power_set(model, &inner, k, budget)?;
    let full = sample.element_set();
    let mut rhs = power_set(model, &full, k - l, budget)?;
    for _ in 0..l {
        rhs = product_set(model, &rhs, f, budget)?;
    }
    Ok(lhs.into_iter().find(|p| !rhs.contains(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::bfs_ball;
    use crate::word::ReducedWord;

    fn big() -> Budget {
        Budget::new(30_000_000)
    }

    fn ball(model: GroupModel, radius: u32) -> BallTable {
        bfs_ball(model, &model.generators(), radius, big()).unwrap()
    }

    /// The horocyclic generating set: the `a`-line together with the
    /// two vertical generators.
    fn line_and_b(x: &Element) -> bool {
        let Element::Bs12(g) = x else { return false };
        let on_a_line = g.exp() == 0 && g.shift() == 0;
        let is_b_power = g.num() == &num_bigint::BigInt::ZERO && g.exp() == 0 && g.shift().abs() == 1;
        on_a_line || is_b_power
    }

    fn bs12_sample(radius: u32) -> FiniteSample {
        FiniteSample::from_ball_filter(&ball(GroupModel::Bs12, radius), "a-line with b", line_and_b)
    }

    fn zz_line(radius: u32) -> FiniteSample {
        let m = GroupModel::FreeAbelian { rank: 2 };
        FiniteSample::from_ball_filter(&ball(m, radius), "first factor", |x| {
            matches!(x, Element::Abelian(c) if c[1] == 0)
        })
    }

    #[test]
    fn sample_tags_are_computed_from_the_data() {
        let s = bs12_sample(4);
        assert!(s.is_symmetric());
        assert!(s.is_unital());
        assert_eq!(s.len(), 2 * 4 + 3);

        let m = GroupModel::FreeAbelian { rank: 2 };
        let lopsided = FiniteSample::from_ball_filter(&ball(m, 3), "right half", |x| {
            matches!(x, Element::Abelian(c) if c[0] >= 1)
        });
        assert!(!lopsided.is_symmetric());
        assert!(!lopsided.is_unital());
        assert!(matches!(
            find_covering(&lopsided, 1, big()),
            Err(Error::SampleUnsuitable(_))
        ));
    }

    #[test]
    fn covering_requires_a_triple_horizon() {
        let s = bs12_sample(5);
        assert_eq!(
            find_covering(&s, 2, big()).unwrap_err(),
            Error::HorizonTooSmall { needed: 6, have: 5 }
        );
    }

    #[test]
    fn subgroup_samples_are_covered_by_the_identity() {
        let s = zz_line(6);
        let witness = find_covering(&s, 2, big()).unwrap();
        assert_eq!(witness.f(), &[GroupModel::FreeAbelian { rank: 2 }.identity()]);
        assert_eq!(witness.exponents(), (2, 1, 1));
        assert!(uncovered_product(&s, 2, witness.f()).unwrap().is_none());
    }

    #[test]
    fn horocyclic_sample_needs_four_covering_elements() {
        let s = bs12_sample(6);
        let witness = find_covering(&s, 2, big()).unwrap();
        assert!(witness.f().len() <= 4, "greedy cover too large: {:?}", witness.f());
        assert!(uncovered_product(&s, 2, witness.f()).unwrap().is_none());
    }

    #[test]
    fn the_classical_horocyclic_cover_verifies() {
        // Λ² ⊆ Λ·{e, b, b⁻¹, b⁻¹a} for the a-line-with-b sample.
        let s = bs12_sample(6);
        let m = GroupModel::Bs12;
        let f: Vec<Element> = ["e", "a2", "A2", "A2a1"]
            .iter()
            .map(|w| m.eval_word(&ReducedWord::parse(2, w).unwrap()).unwrap())
            .collect();
        assert!(uncovered_product(&s, 2, &f).unwrap().is_none());
        // Dropping the interesting element b⁻¹a breaks the cover.
        assert!(uncovered_product(&s, 2, &f[..3]).unwrap().is_some());
    }

    #[test]
    fn quasi_kernel_sample_admits_a_small_cover() {
        use crate::qm::{CountingQm, QmVariant};
        let q = CountingQm::new(ReducedWord::parse(2, "a1a2").unwrap()).unwrap();
        let m = GroupModel::Free { rank: 2 };
        let b6 = ball(m, 6);
        let s = FiniteSample::from_ball_filter(&b6, "quasi-kernel of a1a2 at bound 1", |x| {
            let Element::Free(w) = x else { return false };
            q.qker_member(w, 1, QmVariant::Plain).unwrap()
        });
        assert!(s.is_symmetric() && s.is_unital());
        let witness = find_covering(&s, 2, big()).unwrap();
        assert!(uncovered_product(&s, 2, witness.f()).unwrap().is_none());
        assert!(!witness.f().is_empty());
    }

    #[test]
    fn product_sets_of_balls_are_balls() {
        let m = GroupModel::Free { rank: 2 };
        let b2 = FiniteSample::from_ball(&ball(m, 2), "ball").element_set();
        let b4 = FiniteSample::from_ball(&ball(m, 4), "ball").element_set();
        assert_eq!(product_set(m, &b2, &b2, big()).unwrap(), b4);
    }

    #[test]
    fn tripling_ratio_of_integer_balls_matches_the_closed_form() {
        let m = GroupModel::FreeAbelian { rank: 1 };
        for r in 1..9u32 {
            let a = FiniteSample::from_ball(&ball(m, r), "ball").element_set();
            let ratio = tripling_ratio(m, &a, big()).unwrap();
            assert_eq!(
                ratio,
                Rational64::new(6 * i64::from(r) + 1, 2 * i64::from(r) + 1)
            );
        }
    }

    #[test]
    fn tripling_ratio_of_abelian_balls_is_bounded_by_the_limit() {
        // (6r+1)/(2r+1) climbs toward 3, so tripling stays uniformly
        // bounded: the polynomial-growth signature.
        let m1 = GroupModel::FreeAbelian { rank: 1 };
        let mut last = Rational64::from_integer(0);
        for r in 1..=30u32 {
            let a = FiniteSample::from_ball(&ball(m1, r), "ball").element_set();
            let ratio = tripling_ratio(m1, &a, big()).unwrap();
            assert!(ratio >= last && ratio < Rational64::from_integer(3));
            last = ratio;
        }
        let m2 = GroupModel::FreeAbelian { rank: 2 };
        let mut last = Rational64::from_integer(0);
        for r in [1u32, 2, 3, 4, 6, 8, 12, 20, 30] {
            let a = FiniteSample::from_ball(&ball(m2, r), "ball").element_set();
            let ratio = tripling_ratio(m2, &a, big()).unwrap();
            assert!(ratio >= last && ratio < Rational64::from_integer(9));
            last = ratio;
        }
    }

    #[test]
    fn tripling_ratio_of_free_balls_is_exponential() {
        let m = GroupModel::Free { rank: 2 };
        let a = FiniteSample::from_ball(&ball(m, 2), "ball").element_set();
        // B_2³ = B_6 exactly, so the ratio is a ratio of ball sizes,
        // and it dwarfs the abelian ratios at the same radius.
        assert_eq!(tripling_ratio(m, &a, big()).unwrap(), Rational64::new(1457, 17));
    }

    #[test]
    fn tripling_of_a_singleton_is_trivial() {
        let m = GroupModel::Free { rank: 2 };
        let a: BTreeSet<Element> = [m.identity()].into_iter().collect();
        assert_eq!(tripling_ratio(m, &a, big()).unwrap(), Rational64::from_integer(1));
        assert!(matches!(
            tripling_ratio(m, &BTreeSet::new(), big()),
            Err(Error::TooFewPoints { .. })
        ));
    }

    #[test]
    fn symmetrize_is_idempotent_and_minimal() {
        let m = GroupModel::Free { rank: 2 };
        let a1 = m.generator(1, false).unwrap();
        let single: BTreeSet<Element> = [a1.clone()].into_iter().collect();
        let hull = symmetrize(m, &single).unwrap();
        let expected: BTreeSet<Element> = [
            m.identity(),
            a1.clone(),
            m.inverse(&a1).unwrap(),
        ]
        .into_iter()
        .collect();
        assert_eq!(hull, expected);
        assert_eq!(symmetrize(m, &hull).unwrap(), hull);

        let b3 = FiniteSample::from_ball(&ball(m, 3), "ball").element_set();
        assert_eq!(symmetrize(m, &b3).unwrap(), b3);
    }

    #[test]
    fn ruzsa_cover_on_integer_intervals() {
        let m = GroupModel::FreeAbelian { rank: 1 };
        let interval = |r: u32| FiniteSample::from_ball(&ball(m, r), "ball").element_set();

        let x = interval(2);
        let y = interval(1);
        let f = ruzsa_cover(m, &x, &y).unwrap();
        assert!(f.len() <= 2, "F = {f:?}");
        check_ruzsa(m, &x, &y, &f);

        let a = interval(5);
        let cube = power_set(m, &a, 3, big()).unwrap();
        let f = ruzsa_cover(m, &cube, &a).unwrap();
        assert!(f.len() <= 3, "F = {f:?}");
        check_ruzsa(m, &cube, &a, &f);

        let f = ruzsa_cover(m, &y, &y).unwrap();
        assert_eq!(f.len(), 1);
        check_ruzsa(m, &y, &y, &f);
    }

    /// Re-verifies both Ruzsa guarantees by enumeration: the chosen
    /// translates are pairwise disjoint and X ⊆ F·Y·Y⁻¹.
    fn check_ruzsa(m: GroupModel, x: &BTreeSet<Element>, y: &BTreeSet<Element>, f: &[Element]) {
        let mut seen: BTreeSet<Element> = BTreeSet::new();
        for c in f {
            for v in y {
                let t = m.mul(c, v).unwrap();
                assert!(seen.insert(t), "translates of {c} collide");
            }
        }
        let y_inv: BTreeSet<Element> = y.iter().map(|v| m.inverse(v).unwrap()).collect();
        let f_set: BTreeSet<Element> = f.iter().cloned().collect();
        let yy = product_set(m, &y, &y_inv, big()).unwrap();
        let fyy = product_set(m, &f_set, &yy, big()).unwrap();
        for p in x {
            assert!(fyy.contains(p), "{p} escapes the Ruzsa cover");
        }
    }

    #[test]
    fn power_covering_bootstraps_from_the_square_case() {
        let s = bs12_sample(8);
        let m = GroupModel::Bs12;
        let f: BTreeSet<Element> = ["e", "a2", "A2", "A2a1"]
            .iter()
            .map(|w| m.eval_word(&ReducedWord::parse(2, w).unwrap()).unwrap())
            .collect();
        // k=2, l=1 is exactly the covering relation.
        assert!(power_cover_check(&s, 2, 2, 1, &f, big()).unwrap().is_none());
        // k=3, l=2 follows by shuffling the same F through.
        assert!(power_cover_check(&s, 2, 3, 2, &f, big()).unwrap().is_none());

        let line = zz_line(6);
        let e: BTreeSet<Element> =
            [GroupModel::FreeAbelian { rank: 2 }.identity()].into_iter().collect();
        assert!(power_cover_check(&line, 2, 3, 1, &e, big()).unwrap().is_none());

        assert_eq!(
            power_cover_check(&s, 3, 3, 1, &f, big()).unwrap_err(),
            Error::HorizonTooSmall { needed: 9, have: 8 }
        );
    }
}
