use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use domchrom_core::generators::{
    free_trees, gs, orientations, path, random_tree, GsScheme, GsSpec,
};
use domchrom_core::solver::{brute_force_chi, chi};
use domchrom_core::OrientedTree;

fn all_orientations(n: usize) -> Vec<OrientedTree> {
    free_trees(n)
        .unwrap()
        .iter()
        .flat_map(|b| orientations(b).unwrap().map(|(_, t)| t))
        .collect()
}

fn exhaustive(c: &mut Criterion) {
    let mut group = c.benchmark_group("all_orientations");
    for n in [6, 8] {
        let trees = all_orientations(n);
        group.bench_with_input(
            BenchmarkId::new("branch_and_bound", n),
            &trees,
            |b, trees| b.iter(|| trees.iter().map(chi).sum::<usize>()),
        );
    }
    let trees = all_orientations(7);
    group.sample_size(10);
    group.bench_with_input(BenchmarkId::new("brute_force", 7), &trees, |b, trees| {
        b.iter(|| {
            trees
                .iter()
                .map(|t| brute_force_chi(t).unwrap())
                .sum::<usize>()
        })
    });
    group.finish();
}

fn single(c: &mut Criterion) {
    let mut group = c.benchmark_group("single");
    let cases = [
        ("directed_path_16", path(16)),
        (
            "gs_out_4x4",
            gs(&GsSpec::new(4, 4, GsScheme::OutRootCenter)).unwrap(),
        ),
        (
            "gs_layered_3x6",
            gs(&GsSpec::new(3, 6, GsScheme::Layered)).unwrap(),
        ),
        ("random_20", random_tree(20, 1)),
    ];
    for (name, t) in &cases {
        group.bench_function(*name, |b| b.iter(|| chi(black_box(t))));
    }
    group.finish();
}

criterion_group!(benches, exhaustive, single);
criterion_main!(benches);
