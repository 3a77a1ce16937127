use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use perc_core::fission::PercolationModel;
use perc_core::graph::{k_fuzz, FiniteGraph};
use perc_core::lab::{
    cluster_diameter_stats, second_moment_bound_uniform, simulate_reach,
};
use perc_core::line::LineLaw;
use perc_core::shearer::{b_sequence, critical_function, p_shearer_line};
use perc_core::tree::{ImplicitTree, TreeSpec, TreeView};
use std::hint::black_box;

fn bench_shearer_exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("shearer");
    for k in [1usize, 2, 3] {
        let g = k_fuzz(&FiniteGraph::path(20), k);
        group.bench_with_input(BenchmarkId::new("critical_function_p20", k), &k, |b, _| {
            b.iter(|| critical_function(black_box(&g), black_box(0.8)).unwrap())
        });
    }
    group.bench_function("b_sequence_10k", |b| {
        b.iter(|| black_box(b_sequence(2, 0.9, 10_000).beta[9_999]))
    });
    group.bench_function("p_shearer_line_200", |b| {
        b.iter(|| black_box(p_shearer_line(1, 200)))
    });
    group.finish();
}

fn bench_line_process(c: &mut Criterion) {
    let mut group = c.benchmark_group("line");
    let law = LineLaw::shearer_factor(2, 0.9).unwrap();
    group.bench_function("sample_prefix_10k", |b| {
        let mut stream = 0u64;
        b.iter(|| {
            stream += 1;
            black_box(law.sample_prefix(10_000, 1, stream).unwrap().len())
        })
    });
    let history = law.sample_prefix(2_000, 7, 0).unwrap();
    group.bench_function("next_bit_prob_2k_history", |b| {
        b.iter(|| black_box(law.next_bit_prob(history.bits()).unwrap()))
    });
    group.finish();
}

fn bench_engines(c: &mut Criterion) {
    let mut group = c.benchmark_group("engines");
    group.sample_size(20);

    let deep = TreeView::Implicit(ImplicitTree::new(TreeSpec::DAry { d: 2 }, 16).unwrap());
    let canonical = PercolationModel::canonical(deep, 1, 0.8).unwrap();
    group.bench_function("simulate_reach_depth16_1k", |b| {
        let mut seed = 0u64;
        b.iter(|| {
            seed += 1;
            black_box(simulate_reach(&canonical, 16, 1_000, seed).unwrap().successes)
        })
    });

    let cut_view = TreeView::Implicit(ImplicitTree::new(TreeSpec::DAry { d: 2 }, 30).unwrap());
    let cutup = PercolationModel::cutup(cut_view, 1, 2).unwrap();
    group.bench_function("diameters_anchored_depth30_1k", |b| {
        let mut seed = 0u64;
        b.iter(|| {
            seed += 1;
            black_box(
                cluster_diameter_stats(&cutup, 30, 1_000, seed, None, 1 << 20)
                    .unwrap()
                    .max_diameter,
            )
        })
    });

    let periodic =
        TreeView::Implicit(ImplicitTree::new(TreeSpec::Periodic { period: 3 }, 200).unwrap());
    let model = PercolationModel::canonical(periodic, 2, 0.87).unwrap();
    group.bench_function("second_moment_depth200", |b| {
        b.iter(|| black_box(second_moment_bound_uniform(&model, 200).unwrap()))
    });
    group.finish();
}

criterion_group!(benches, bench_shearer_exact, bench_line_process, bench_engines);
criterion_main!(benches);
