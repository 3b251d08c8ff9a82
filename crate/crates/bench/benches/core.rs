use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use qleaf_core::leaf::LeafFunction;
use qleaf_core::numkit::Extended;
use qleaf_core::pathint::{matrix_element_lattice, Insertion, PathLatticeConfig, Prescription, Profile};
use qleaf_core::repq::{build_rep, hilbert, verify_rll, Spin};

fn build(c: &mut Criterion) {
    let mut g = c.benchmark_group("build_rep");
    for j in [0.5, 2.0, 5.0] {
        let m = hilbert(Spin::new(j).unwrap(), 0.5).unwrap();
        g.bench_with_input(BenchmarkId::new("f64", j), &m, |b, m| b.iter(|| build_rep::<f64>(black_box(m)).unwrap()));
        g.bench_with_input(BenchmarkId::new("extended", j), &m, |b, m| {
            b.iter(|| build_rep::<Extended>(black_box(m)).unwrap())
        });
    }
    g.finish();
}

fn rll(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_rll");
    for j in [0.5, 2.0, 5.0] {
        let rep = build_rep::<f64>(&hilbert(Spin::new(j).unwrap(), 0.5).unwrap()).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(j), &rep, |b, r| b.iter(|| verify_rll(r, r.ctx.q)));
    }
    g.finish();
}

fn lattice(c: &mut Criterion) {
    let mut g = c.benchmark_group("matrix_element_lattice");
    g.sample_size(10);
    let m = hilbert(Spin::new(0.5).unwrap(), 1.386294).unwrap();
    let ins = Insertion::new(Profile::Leaf(LeafFunction::ChiPlus), Prescription::MidpointPhi).unwrap();
    for w in [50, 200] {
        let cfg = PathLatticeConfig { windings: w, ..PathLatticeConfig::default() };
        g.bench_with_input(BenchmarkId::new("chi+", w), &cfg, |b, cfg| {
            b.iter(|| matrix_element_lattice(&ins, &m, cfg).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, build, rll, lattice);
criterion_main!(benches);
