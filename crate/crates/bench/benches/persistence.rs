use std::hint::black_box;

use ambient_cycles::{classify_quadruple, principal_persistence_measure, LiftedPointCloud, Surface, SurfaceKind};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn quadruple(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify_quadruple");
    for kind in SurfaceKind::ALL {
        let s = Surface::new(kind);
        let clouds: Vec<LiftedPointCloud> = s
            .sample_uniform(4 * 256, 3)
            .chunks(4)
            .map(|q| LiftedPointCloud::new(s, q.to_vec()).unwrap())
            .collect();
        group.bench_function(BenchmarkId::from_parameter(kind), |b| {
            let mut k = 0;
            b.iter(|| {
                k += 1;
                black_box(classify_quadruple(&clouds[k % clouds.len()]).unwrap())
            })
        });
    }
    group.finish();
}

fn measure(c: &mut Criterion) {
    let mut group = c.benchmark_group("ppm_1000");
    group.sample_size(10);
    for kind in SurfaceKind::ALL {
        let s = Surface::new(kind);
        group.bench_function(BenchmarkId::from_parameter(kind), |b| {
            b.iter(|| black_box(principal_persistence_measure(&s, 1000, 4).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, quadruple, measure);
criterion_main!(benches);
