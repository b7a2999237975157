//! Evaluatable marked groups with exact normal forms.
//!
//! Three families are supported, each with its standard marked generating
//! set: free groups (generators `a1..ar`), free abelian groups (standard
//! basis vectors), and the solvable Baumslag–Solitar group
//! `BS(1,2) = <a, b | b a b^-1 = a^2>` (generators `a = a1`, `b = a2`).
//!
//! BS(1,2) elements are realized as affine maps `x -> 2^k x + t` with `t` a
//! dyadic rational held exactly (arbitrary-precision numerator), so the
//! composition law is `(t, k) (t', k') = (t + 2^k t', k + k')` and equality
//! of normal forms is equality in the group.
//!
//! [`bfs_ball`] grows exact word-metric balls breadth-first and records the
//! distance of every element; [`distance_between`] answers single pair
//! queries by bidirectional search so that deeply distorted targets do not
//! require materializing a huge ball.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::word::{Letter, ReducedWord};
use crate::Budget;

/// An element of BS(1,2) in affine normal form `x -> 2^shift x + num/2^exp`,
/// with `num` odd or zero (and `exp = 0` when `num = 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bs12Element {
    num: BigInt,
    exp: u32,
    shift: i64,
}

impl Bs12Element {
    /// The identity `x -> x`.
    pub fn identity() -> Bs12Element {
        Bs12Element {
            num: BigInt::zero(),
            exp: 0,
            shift: 0,
        }
    }

    /// Builds `x -> 2^shift x + num / 2^exp`, normalizing the dyadic part.
    pub fn new(num: BigInt, exp: u32, shift: i64) -> Bs12Element {
        let mut el = Bs12Element { num, exp, shift };
        el.normalize();
        el
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        while self.exp > 0 && self.num.is_even() {
            self.num /= 2;
            self.exp -= 1;
        }
    }

    /// Dyadic numerator `p` of the translation part `p / 2^exp`.
    pub fn num(&self) -> &BigInt {
        &self.num
    }

    /// Dyadic exponent `e` of the translation part `p / 2^e`.
    pub fn exp(&self) -> u32 {
        self.exp
    }

    /// The conjugation power `k` (image of the element under the
    /// homomorphism onto Z killing `a`).
    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Composition `(t, k)(t', k') = (t + 2^k t', k + k')`.
    pub fn compose(&self, other: &Bs12Element) -> Bs12Element {
        // 2^k * t' = num' / 2^(exp' - k), shifting into the numerator when
        // the exponent would go negative.
        let mut num2 = other.num.clone();
        let d2 = other.exp as i64 - self.shift;
        let d2 = if d2 < 0 {
            num2 <<= (-d2) as u32;
            0
        } else {
            d2 as u32
        };
        let m = self.exp.max(d2);
        let num = (&self.num << (m - self.exp)) + (num2 << (m - d2));
        Bs12Element::new(num, m, self.shift + other.shift)
    }

    /// Inverse `(t, k)^-1 = (-2^-k t, -k)`.
    pub fn inverse(&self) -> Bs12Element {
        let mut num = -self.num.clone();
        let d = self.exp as i64 + self.shift;
        let exp = if d < 0 {
            num <<= (-d) as u32;
            0
        } else {
            d as u32
        };
        Bs12Element::new(num, exp, -self.shift)
    }

    /// The power `a^m` of the distinguished torsion-free generator.
    pub fn a_power(m: i64) -> Bs12Element {
        Bs12Element::new(BigInt::from(m), 0, 0)
    }

    /// Whether this element lies on the `a`-line, i.e. is an integer
    /// translation; returns the integer if so.
    pub fn as_a_power(&self) -> Option<&BigInt> {
        (self.shift == 0 && self.exp == 0).then_some(&self.num)
    }
}

impl fmt::Display for Bs12Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{} | {}", self.num, self.exp, self.shift)
    }
}

/// An element of one of the supported marked groups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Element {
    Free(ReducedWord),
    Abelian(Vec<i64>),
    Bs12(Bs12Element),
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Free(w) => write!(f, "{w}"),
            Element::Abelian(v) => {
                write!(f, "(")?;
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
            Element::Bs12(g) => write!(f, "{g}"),
        }
    }
}

/// A marked group: a family member plus its standard generating set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupModel {
    /// Free group of the given rank.
    Free { rank: u32 },
    /// Free abelian group `Z^rank` with the standard basis.
    FreeAbelian { rank: u32 },
    /// `BS(1,2) = <a, b | b a b^-1 = a^2>` with generators `a, b`.
    Bs12,
}

impl GroupModel {
    /// Number of marked generators (letters index `1..=generator_count`).
    pub fn generator_count(self) -> u32 {
        match self {
            GroupModel::Free { rank } | GroupModel::FreeAbelian { rank } => rank,
            GroupModel::Bs12 => 2,
        }
    }

    pub fn identity(self) -> Element {
        match self {
            GroupModel::Free { rank } => Element::Free(ReducedWord::identity(rank)),
            GroupModel::FreeAbelian { rank } => Element::Abelian(vec![0; rank as usize]),
            GroupModel::Bs12 => Element::Bs12(Bs12Element::identity()),
        }
    }

    /// The image of the letter `(index, inverse)` in this group.
    pub fn generator(self, index: u32, inverse: bool) -> Result<Element> {
        if index == 0 || index > self.generator_count() {
            return Err(Error::InvalidLetter {
                index,
                rank: self.generator_count(),
            });
        }
        let g = match self {
            GroupModel::Free { rank } => {
                let l = Letter::new(index, inverse)?;
                Element::Free(ReducedWord::reduce(rank, &[l])?)
            }
            GroupModel::FreeAbelian { rank } => {
                let mut v = vec![0i64; rank as usize];
                v[index as usize - 1] = if inverse { -1 } else { 1 };
                Element::Abelian(v)
            }
            GroupModel::Bs12 => {
                let g = if index == 1 {
                    Bs12Element::a_power(1)
                } else {
                    Bs12Element::new(BigInt::zero(), 0, 1)
                };
                Element::Bs12(if inverse { g.inverse() } else { g })
            }
        };
        Ok(g)
    }

    /// The symmetric standard generating set, in letter order
    /// (`a1, a1^-1, a2, a2^-1, ...`).
    pub fn generators(self) -> Vec<Element> {
        (1..=self.generator_count())
            .flat_map(|i| {
                [
                    self.generator(i, false).expect("index in range"),
                    self.generator(i, true).expect("index in range"),
                ]
            })
            .collect()
    }

    /// Exact group multiplication of two elements of this model.
    pub fn mul(self, x: &Element, y: &Element) -> Result<Element> {
        match (self, x, y) {
            (GroupModel::Free { .. }, Element::Free(a), Element::Free(b)) => {
                Ok(Element::Free(a.mul(b)?))
            }
            (GroupModel::FreeAbelian { rank }, Element::Abelian(a), Element::Abelian(b)) => {
                if a.len() != rank as usize || b.len() != rank as usize {
                    return Err(Error::ModelMismatch);
                }
                Ok(Element::Abelian(
                    a.iter().zip(b).map(|(p, q)| p + q).collect(),
                ))
            }
            (GroupModel::Bs12, Element::Bs12(a), Element::Bs12(b)) => {
                Ok(Element::Bs12(a.compose(b)))
            }
            _ => Err(Error::ModelMismatch),
        }
    }

    /// Exact group inverse of an element of this model.
    pub fn inverse(self, x: &Element) -> Result<Element> {
        match (self, x) {
            (GroupModel::Free { .. }, Element::Free(a)) => Ok(Element::Free(a.inverse())),
            (GroupModel::FreeAbelian { rank }, Element::Abelian(a)) => {
                if a.len() != rank as usize {
                    return Err(Error::ModelMismatch);
                }
                Ok(Element::Abelian(a.iter().map(|c| -c).collect()))
            }
            (GroupModel::Bs12, Element::Bs12(a)) => Ok(Element::Bs12(a.inverse())),
            _ => Err(Error::ModelMismatch),
        }
    }

    /// Evaluates a free word under the marking (the unique homomorphism
    /// from the free group sending `a_i` to the i-th marked generator).
    pub fn eval_word(self, w: &ReducedWord) -> Result<Element> {
        let mut acc = self.identity();
        for &l in w.letters() {
            let g = self.generator(l.index(), l.is_inverse())?;
            acc = self.mul(&acc, &g)?;
        }
        Ok(acc)
    }

    /// The unique normal-form rendering of an element.
    pub fn normal_form(self, x: &Element) -> String {
        x.to_string()
    }
}

/// An exact word-metric ball: every element of `B_radius(e)` together with
/// its exact distance from the identity.
#[derive(Debug, Clone)]
pub struct BallTable {
    model: GroupModel,
    generators: Vec<Element>,
    radius: u32,
    /// Sorted by (distance, element order); index 0 is the identity.
    elements: Vec<(Element, u32)>,
    dist: HashMap<Element, u32>,
}

impl BallTable {
    pub fn model(&self) -> GroupModel {
        self.model
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The generating set the ball was grown with.
    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    /// Elements with their distances, sorted by (distance, element order).
    pub fn elements(&self) -> &[(Element, u32)] {
        &self.elements
    }

    /// Exact distance from the identity, if the element is in the ball.
    pub fn distance(&self, x: &Element) -> Option<u32> {
        self.dist.get(x).copied()
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.dist.contains_key(x)
    }

    /// Tab-separated rendering with a `normal_form  distance` header.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("normal_form\tdistance\n");
        for (el, d) in &self.elements {
            out.push_str(&format!("{el}\t{d}\n"));
        }
        out
    }
}

/// Grows the exact ball of the given radius around the identity by
/// breadth-first search over a symmetric generating set.
///
/// The generating set need not be the model's standard one. Distances are
/// exact for the word metric of `gens`. The budget bounds the number of
/// stored elements.
pub fn bfs_ball(
    model: GroupModel,
    gens: &[Element],
    radius: u32,
    budget: Budget,
) -> Result<BallTable> {
    let mut dist: HashMap<Element, u32> = HashMap::new();
    let mut elements: Vec<(Element, u32)> = Vec::new();
    let identity = model.identity();
    dist.insert(identity.clone(), 0);
    elements.push((identity.clone(), 0));
    let mut frontier = vec![identity];
    for d in 1..=radius {
        let mut next = Vec::new();
        for x in &frontier {
            for s in gens {
                let y = model.mul(x, s)?;
                if !dist.contains_key(&y) {
                    budget.admit(elements.len() + 1)?;
                    dist.insert(y.clone(), d);
                    elements.push((y.clone(), d));
                    next.push(y);
                }
            }
        }
        next.sort();
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    // Deterministic listing: sort each distance layer by element order.
    elements.sort_by(|(a, da), (b, db)| da.cmp(db).then_with(|| a.cmp(b)));
    Ok(BallTable {
        model,
        generators: gens.to_vec(),
        radius,
        elements,
        dist,
    })
}

/// Exact word-metric distance between two elements, or `None` if it exceeds
/// `max_radius`.
///
/// Runs breadth-first search from both endpoints simultaneously, so the
/// cost is two balls of half the distance instead of one ball of the full
/// distance — pair queries against badly distorted targets stay cheap.
pub fn distance_between(
    model: GroupModel,
    gens: &[Element],
    x: &Element,
    y: &Element,
    max_radius: u32,
    budget: Budget,
) -> Result<Option<u32>> {
    if x == y {
        return Ok(Some(0));
    }
    // Left-invariance lets us search from e toward z = x^-1 y.
    let target = model.mul(&model.inverse(x)?, y)?;
    let identity = model.identity();
    let mut from_e: HashMap<Element, u32> = HashMap::from([(identity.clone(), 0)]);
    let mut from_z: HashMap<Element, u32> = HashMap::from([(target.clone(), 0)]);
    let mut front_e = vec![identity];
    let mut front_z = vec![target];
    let mut depth_e = 0u32;
    let mut depth_z = 0u32;
    let mut best: Option<u32> = None;
    loop {
        // Stop once no undiscovered meeting point could beat `best`.
        if let Some(b) = best {
            if depth_e + depth_z + 2 > b {
                return Ok(Some(b));
            }
        }
        if depth_e + depth_z >= max_radius || (front_e.is_empty() && front_z.is_empty()) {
            return Ok(best.filter(|&b| b <= max_radius));
        }
        // Expand the smaller side one full layer.
        let expand_e = !front_e.is_empty() && (front_z.is_empty() || front_e.len() <= front_z.len());
        let (front, seen, other, my_depth) = if expand_e {
            depth_e += 1;
            (&mut front_e, &mut from_e, &from_z, depth_e)
        } else {
            depth_z += 1;
            (&mut front_z, &mut from_z, &from_e, depth_z)
        };
        let mut next = Vec::new();
        for v in front.iter() {
            for s in gens {
                let w = model.mul(v, s)?;
                if seen.contains_key(&w) {
                    continue;
                }
                budget.admit(seen.len() + other.len() + 1)?;
                seen.insert(w.clone(), my_depth);
                if let Some(&od) = other.get(&w) {
                    let cand = my_depth + od;
                    if best.is_none_or(|b| cand < b) {
                        best = Some(cand);
                    }
                }
                next.push(w);
            }
        }
        next.sort();
        *front = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::enumerate_ball;

    fn wd(rank: u32, s: &str) -> ReducedWord {
        ReducedWord::parse(rank, s).expect("test word parses")
    }

    fn big() -> Budget {
        Budget::new(2_000_000)
    }

    #[test]
    fn bs12_defining_relation_holds() {
        let m = GroupModel::Bs12;
        let bab = m.eval_word(&wd(2, "a2a1A2")).unwrap();
        let aa = m.eval_word(&wd(2, "a1a1")).unwrap();
        assert_eq!(bab, aa);
    }

    #[test]
    fn bs12_normal_forms_match_known_values() {
        let m = GroupModel::Bs12;
        assert_eq!(m.identity().to_string(), "0/2^0 | 0");
        assert_eq!(m.eval_word(&wd(2, "a1")).unwrap().to_string(), "1/2^0 | 0");
        // b^-1 a b translates by one half: (p, e, k) = (1, 1, 0).
        assert_eq!(
            m.eval_word(&wd(2, "A2a1a2")).unwrap().to_string(),
            "1/2^1 | 0"
        );
        assert_eq!(m.eval_word(&wd(2, "a2")).unwrap().to_string(), "0/2^0 | 1");
        // b^n a b^-n = a^(2^n).
        for n in 0..6 {
            let word = format!("{}a1{}", "a2".repeat(n), "A2".repeat(n));
            let el = m.eval_word(&wd(2, &word)).unwrap();
            assert_eq!(el, Element::Bs12(Bs12Element::a_power(1 << n)));
        }
    }

    #[test]
    fn bs12_numerator_stays_odd_or_zero() {
        let m = GroupModel::Bs12;
        for (el, _) in bfs_ball(m, &m.generators(), 6, big()).unwrap().elements() {
            let Element::Bs12(g) = el else { unreachable!() };
            // Lowest terms: a denominator of 2^e with e > 0 forces an odd
            // numerator; integer translations (e = 0) may be any integer.
            assert!(g.exp() == 0 || g.num().is_odd(), "unnormalized {g}");
            assert!(!g.num().is_zero() || g.exp() == 0, "unnormalized {g}");
        }
    }

    #[test]
    fn eval_word_is_a_homomorphism_on_short_words() {
        for model in [
            GroupModel::Free { rank: 2 },
            GroupModel::FreeAbelian { rank: 2 },
            GroupModel::Bs12,
        ] {
            let words = enumerate_ball(2, 4, big()).unwrap();
            for u in &words {
                for v in &words {
                    let sep = model
                        .mul(&model.eval_word(u).unwrap(), &model.eval_word(v).unwrap())
                        .unwrap();
                    let joint = model.eval_word(&u.mul(v).unwrap()).unwrap();
                    assert_eq!(sep, joint, "{u} * {v} in {model:?}");
                }
            }
        }
    }

    #[test]
    fn inverses_cancel_in_every_model() {
        for model in [
            GroupModel::Free { rank: 2 },
            GroupModel::FreeAbelian { rank: 3 },
            GroupModel::Bs12,
        ] {
            let ball = bfs_ball(model, &model.generators(), 3, big()).unwrap();
            for (x, _) in ball.elements() {
                let inv = model.inverse(x).unwrap();
                assert_eq!(model.mul(x, &inv).unwrap(), model.identity());
                assert_eq!(model.mul(&inv, x).unwrap(), model.identity());
            }
        }
    }

    #[test]
    fn abelian_evaluation_collapses_commutators() {
        let m = GroupModel::FreeAbelian { rank: 2 };
        assert_eq!(
            m.eval_word(&wd(2, "a1a2A1")).unwrap(),
            Element::Abelian(vec![0, 1])
        );
        assert_eq!(
            m.eval_word(&wd(2, "a1a2a1")).unwrap(),
            Element::Abelian(vec![2, 1])
        );
    }

    #[test]
    fn ball_sizes_are_exact_in_flat_models() {
        // Z^2 with the standard generators: |B_1| = 5, |B_2| = 13 (l^1 balls).
        let m = GroupModel::FreeAbelian { rank: 2 };
        let b1 = bfs_ball(m, &m.generators(), 1, big()).unwrap();
        assert_eq!(b1.len(), 5);
        let b2 = bfs_ball(m, &m.generators(), 2, big()).unwrap();
        assert_eq!(b2.len(), 13);
        // Free group of rank 2: |B_2| = 17, matching the word enumerator.
        let f = GroupModel::Free { rank: 2 };
        let fb = bfs_ball(f, &f.generators(), 2, big()).unwrap();
        assert_eq!(fb.len(), enumerate_ball(2, 2, big()).unwrap().len());
    }

    #[test]
    fn ball_distances_agree_with_word_length_in_free_groups() {
        let f = GroupModel::Free { rank: 2 };
        let ball = bfs_ball(f, &f.generators(), 4, big()).unwrap();
        for w in enumerate_ball(2, 4, big()).unwrap() {
            assert_eq!(
                ball.distance(&Element::Free(w.clone())),
                Some(w.len() as u32)
            );
        }
    }

    #[test]
    fn ball_distances_are_left_invariant_on_sampled_pairs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(20260822);
        let m = GroupModel::Bs12;
        let ball = bfs_ball(m, &m.generators(), 7, big()).unwrap();
        let els = ball.elements();
        for _ in 0..200 {
            let g = &els[rng.gen_range(0..els.len())].0;
            let x = &els[rng.gen_range(0..els.len())].0;
            let y = &els[rng.gen_range(0..els.len())].0;
            let gx = m.mul(g, x).unwrap();
            let gy = m.mul(g, y).unwrap();
            // d(gx, gy) = d(x, y) whenever both sides are measurable in-ball:
            // compute both as distances of difference elements.
            let dxy = ball.distance(&m.mul(&m.inverse(x).unwrap(), y).unwrap());
            let dgxgy = ball.distance(&m.mul(&m.inverse(&gx).unwrap(), &gy).unwrap());
            assert_eq!(dxy, dgxgy);
        }
    }

    #[test]
    fn ball_respects_budget() {
        let f = GroupModel::Free { rank: 2 };
        assert!(matches!(
            bfs_ball(f, &f.generators(), 8, Budget::new(50)),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn tsv_export_has_header_and_exact_rows() {
        let m = GroupModel::FreeAbelian { rank: 1 };
        let ball = bfs_ball(m, &m.generators(), 1, big()).unwrap();
        let tsv = ball.to_tsv();
        let lines: Vec<&str> = tsv.lines().collect();
        assert_eq!(lines[0], "normal_form\tdistance");
        assert_eq!(lines.len(), 4);
        assert!(lines.contains(&"(0)\t0"));
        assert!(lines.contains(&"(1)\t1"));
        assert!(lines.contains(&"(-1)\t1"));
    }

    #[test]
    fn bidirectional_distance_matches_ball_distances() {
        for model in [
            GroupModel::Free { rank: 2 },
            GroupModel::FreeAbelian { rank: 2 },
            GroupModel::Bs12,
        ] {
            let gens = model.generators();
            let ball = bfs_ball(model, &gens, 5, big()).unwrap();
            for (x, d) in ball.elements().iter().step_by(7) {
                let got = distance_between(model, &gens, &model.identity(), x, 10, big()).unwrap();
                assert_eq!(got, Some(*d), "{x} in {model:?}");
            }
        }
    }

    #[test]
    fn bidirectional_distance_reports_out_of_range() {
        let m = GroupModel::FreeAbelian { rank: 1 };
        let far = Element::Abelian(vec![40]);
        assert_eq!(
            distance_between(m, &m.generators(), &m.identity(), &far, 10, big()).unwrap(),
            None
        );
    }

    #[test]
    fn distorted_powers_are_reachable_quickly() {
        // d(a^(2^n), e) <= 2n + 1 thanks to a^(2^n) = b^n a b^-n.
        let m = GroupModel::Bs12;
        let gens = m.generators();
        for n in 0..=6u32 {
            let target = Element::Bs12(Bs12Element::a_power(1 << n));
            let d = distance_between(m, &gens, &m.identity(), &target, 2 * n + 1, big())
                .unwrap()
                .expect("within bound");
            assert!(d <= 2 * n + 1, "n = {n}: got {d}");
        }
    }
}
