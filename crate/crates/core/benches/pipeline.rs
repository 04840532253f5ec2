//! Pipeline stages that fan out through `protrude::par`. Run once with the
//! default features and once with `--no-default-features`; the benchmark ids
//! carry the mode, so criterion keeps the two series apart.
//!
//! ```text
//! cargo bench -p protrude
//! cargo bench -p protrude --no-default-features
//! ```

use criterion::{black_box, criterion_group, criterion_main, Criterion};

use protrude::fii::{build_replacement_table_with, KernelizeOptions, TableOptions};
use protrude::harness::{gen_corpus, verify_kernel_soundness, CorpusParams, Family, KRange};
use protrude::par;
use protrude::problems::opt_value;
use protrude::modulator::recursive_modulator;
use protrude::protrusion::{build_pd, ProtrusionDecomposition};
use protrude::Problem;

const MODE: &str = if cfg!(feature = "parallel") { "parallel" } else { "sequential" };

fn table_build(c: &mut Criterion) {
    let plain = TableOptions { certify: false, ..Default::default() };
    let certify = TableOptions { certify: true, context_size: 6, ..Default::default() };
    let mut group = c.benchmark_group("table");
    group.sample_size(10);
    group.bench_function(format!("enumerate vc t=2 size 7/{MODE}"), |b| {
        b.iter(|| build_replacement_table_with(Problem::VertexCover, 2, 7, &plain).unwrap())
    });
    group.bench_function(format!("certify ds t=2 size 5 ctx 6/{MODE}"), |b| {
        b.iter(|| build_replacement_table_with(Problem::DominatingSet, 2, 5, &certify).unwrap())
    });
    group.finish();
}

fn corpus_oracles(c: &mut Criterion) {
    let params = CorpusParams { count: 64, n_min: 14, n_max: 20, keep: 0.7, ..Default::default() };
    let corpus = gen_corpus(Family::RandomPlanar, &params, 1).unwrap();
    let mut group = c.benchmark_group("corpus");
    group.sample_size(10);
    group.bench_function(format!("opt fvs over 64 planar/{MODE}"), |b| {
        b.iter(|| par::map(&corpus.graphs, |g| opt_value(Problem::FeedbackVertexSet, black_box(g)).unwrap()))
    });
    group.bench_function(format!("modulator + pd over 64 planar/{MODE}"), |b| {
        b.iter(|| {
            par::map(&corpus.graphs, |g| -> ProtrusionDecomposition {
                build_pd(g, &recursive_modulator(g, 1, &[]).unwrap()).unwrap()
            })
        })
    });
    let opts = TableOptions { certify: false, ..Default::default() };
    let (table, _) = build_replacement_table_with(Problem::VertexCover, 2, 6, &opts).unwrap();
    let kopts = KernelizeOptions { verify_steps: false, ..Default::default() };
    group.bench_function(format!("kernel soundness vc over 64 planar/{MODE}"), |b| {
        b.iter(|| {
            verify_kernel_soundness(Problem::VertexCover, &corpus.graphs, &table, &KRange::AroundOpt(vec![0]), &kopts)
                .unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, table_build, corpus_oracles);
criterion_main!(benches);
