use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};

use hwenv::bqa::Algebra;
use hwenv::catalog;
use hwenv::envelope::{right_envelope, ringel_dual, ThinCollection};
use hwenv::hw::{check_hw, SearchOptions, WeightPoset};

fn load(name: &str) -> (Arc<Algebra>, WeightPoset) {
    let f = catalog::load(name).expect("catalog entry").expect("parses");
    (f.build().expect("builds"), f.poset().expect("poset"))
}

fn bench(c: &mut Criterion) {
    let opts = SearchOptions::default();
    for name in ["auslander", "diamond"] {
        let (alg, poset) = load(name);
        c.bench_function(&format!("check_hw/{name}"), |b| {
            b.iter(|| check_hw(&alg, &poset, &opts).expect("check"))
        });
        let deltas = ThinCollection::standards(&alg, &poset).expect("standards");
        c.bench_function(&format!("right_envelope/{name}"), |b| {
            b.iter(|| right_envelope(&deltas, &opts).expect("envelope"))
        });
        c.bench_function(&format!("ringel_dual/{name}"), |b| {
            b.iter(|| ringel_dual(&alg, &poset, &opts).expect("dual"))
        });
    }
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = bench
}
criterion_main!(benches);
