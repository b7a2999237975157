//! Benchmarks the rayon-backed inner loops against the sequential fallback.
//!
//! Every workload here funnels through the order-preserving helpers in the
//! `parallel` feature's dispatch layer, so the same bench names run under
//! both configurations and produce identical results:
//!
//! ```text
//! cargo bench -p agt-core --no-default-features -- --save-baseline sequential
//! cargo bench -p agt-core -- --baseline sequential
//! ```
//!
//! The first command measures the plain loops; the second runs the rayon
//! build and reports the delta per bench.

use std::collections::BTreeSet;
use std::hint::black_box;

use agt_core::approx::product_set;
use agt_core::blockers::blocker_sweep;
use agt_core::conical::separate;
use agt_core::groups::{bfs_ball, Element, GroupModel};
use agt_core::modelset::{CpScheme, ModelSetSample, QuadRing};
use agt_core::qm::CountingQm;
use agt_core::word::ReducedWord;
use agt_core::Budget;
use criterion::{criterion_group, criterion_main, Criterion};
use num_rational::Rational64;

fn budget() -> Budget {
    Budget::new(500_000_000)
}

/// Pairwise defect scan of the counting quasimorphism for `a1a2` over the
/// radius-5 ball of F₂: one φ evaluation per word, then one defect value
/// per ordered pair, both fanned out per row.
fn defect_scan(c: &mut Criterion) {
    let qm = CountingQm::new(ReducedWord::parse(2, "a1a2").expect("pattern parses"))
        .expect("pattern is admissible");
    c.bench_function("defect scan: a1a2 on B5(F2)", |b| {
        b.iter(|| qm.defect_on_ball(black_box(5), budget()).expect("scan fits budget"))
    });
}

/// Exact product sets in ℤ²: cube the radius-12 ℓ¹ ball (A·A, then A²·A).
/// Each call parallelizes over rows of the left factor.
fn product_cube(c: &mut Criterion) {
    let model = GroupModel::FreeAbelian { rank: 2 };
    let ball = bfs_ball(model, &model.generators(), 12, budget()).expect("ball fits budget");
    let a: BTreeSet<Element> = ball.elements().iter().map(|(x, _)| x.clone()).collect();
    c.bench_function("product cube: Z2 ball r=12", |b| {
        b.iter(|| {
            let aa = product_set(model, black_box(&a), &a, budget()).expect("A*A fits budget");
            product_set(model, &aa, &a, budget()).expect("A^3 fits budget")
        })
    });
}

/// Cut-and-project sampling for the golden scheme at radius 2000: the
/// acceptance window test is run once per candidate leading coefficient.
fn model_set_generate(c: &mut Criterion) {
    let scheme = CpScheme::new(QuadRing::Golden, Rational64::new(1, 2)).expect("window is valid");
    let mut group = c.benchmark_group("model set");
    group.sample_size(10);
    group.bench_function("golden window R=2000", |b| {
        b.iter(|| {
            ModelSetSample::generate(
                black_box(scheme),
                Rational64::from_integer(2000),
                &budget(),
            )
            .expect("generation fits budget")
        })
    });
    group.finish();
}

/// Worst-case separation scan: `a1a2` against its own inverse agrees on
/// every cyclic slope, so the search evaluates both quasimorphisms on every
/// cyclically reduced word out to length 9 before reporting agreement.
fn separation_scan(c: &mut Criterion) {
    let u = ReducedWord::parse(2, "a1a2").expect("pattern parses");
    let v = u.inverse();
    c.bench_function("separation scan: a1a2 vs inverse to len 9", |b| {
        b.iter(|| {
            let outcome = separate(black_box(&u), &v, 9, &budget()).expect("scan is total");
            assert!(outcome.is_all_agree());
            outcome
        })
    });
}

/// Blocker sweep for `a1a2a3`: a breadth-first blocker search for each of
/// the 900 ordered boundary pairs, fanned out pair-by-pair.
fn sweep_blockers(c: &mut Criterion) {
    let u = ReducedWord::parse(3, "a1a2a3").expect("pattern parses");
    c.bench_function("blocker sweep: a1a2a3 boundary pairs", |b| {
        b.iter(|| blocker_sweep(black_box(&u), 8, budget()).expect("sweep fits budget"))
    });
}

criterion_group!(
    benches,
    defect_scan,
    product_cube,
    model_set_generate,
    separation_scan,
    sweep_blockers
);
criterion_main!(benches);
