//! Sequential vs rayon-parallel execution of the two heavy stages:
//! content featurization and 10-fold cross-validation.

use credlens::ml::cv::{cross_validate, CvOptions};
use credlens::ml::features::{content_rows, FeatureConfig};
use credlens::ml::models::{ModelKind, ModelSpec};
use credlens::resources::Resources;
use credlens::synth::{synthetic_corpus, SynthConfig};
use credlens::Execution;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn featurize(c: &mut Criterion) {
    let corpus = synthetic_corpus(SynthConfig {
        per_class: 400,
        seed: 1,
    });
    let res = Resources::builtin();
    let mut group = c.benchmark_group("content_rows");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| content_rows(&corpus, res, exec).unwrap())
        });
    }
    group.finish();
}

fn evaluate(c: &mut Criterion) {
    let corpus = synthetic_corpus(SynthConfig {
        per_class: 100,
        seed: 1,
    });
    let res = Resources::builtin();
    let mut group = c.benchmark_group("cross_validate");
    group.sample_size(10);
    for kind in [ModelKind::Logreg, ModelKind::RandomForest] {
        let spec = ModelSpec::new(kind);
        for (name, exec) in MODES {
            let opts = CvOptions {
                exec,
                ..CvOptions::default()
            };
            group.bench_function(BenchmarkId::new(kind.as_str(), name), |b| {
                b.iter(|| {
                    cross_validate(&spec, &corpus, &FeatureConfig::all26(), res, &opts).unwrap()
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, featurize, evaluate);
criterion_main!(benches);
