use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use toric_origami::localization::{audit_localization_with, max_admissible_epsilon, CoveringParams};
use toric_origami::oracle::{find_generic_direction, fixed_point_character_with};
use toric_origami::quantization::danilov_template_with;
use toric_origami::rational::rat;
use toric_origami::template::{gen_hirzebruch, gen_simplex, gen_sphere_template};
use toric_origami::Strategy;

const STRATEGIES: [Strategy; 2] = [Strategy::Sequential, Strategy::Parallel];

fn lattice_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("lattice_points");
    let p = gen_simplex(3, &rat(24)).unwrap();
    for s in STRATEGIES {
        group.bench_with_input(BenchmarkId::new("simplex3x24", format!("{s:?}")), &s, |b, &s| {
            b.iter(|| black_box(p.lattice_points_with(s)))
        });
    }
    let sphere = gen_sphere_template(3, &rat(16)).unwrap().validated().unwrap();
    for s in STRATEGIES {
        group.bench_with_input(BenchmarkId::new("sphere3x16_character", format!("{s:?}")), &s, |b, &s| {
            b.iter(|| black_box(danilov_template_with(&sphere, s)))
        });
    }
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("vertex_sum");
    let p = gen_hirzebruch(3, &rat(40), &rat(200)).unwrap();
    let a = find_generic_direction(&[&p]);
    for s in STRATEGIES {
        group.bench_with_input(BenchmarkId::new("hirzebruch3", format!("{s:?}")), &s, |b, &s| {
            b.iter(|| black_box(fixed_point_character_with(&p, &a, s).unwrap()))
        });
    }
    group.finish();
}

fn audit(c: &mut Criterion) {
    let mut group = c.benchmark_group("localization_audit");
    group.sample_size(10);
    let t = gen_sphere_template(3, &rat(6)).unwrap().validated().unwrap();
    let params = CoveringParams::new(max_admissible_epsilon(&t).suggested_epsilon()).unwrap();
    for s in STRATEGIES {
        group.bench_with_input(BenchmarkId::new("sphere3x6", format!("{s:?}")), &s, |b, &s| {
            b.iter(|| black_box(audit_localization_with(&t, &params, s).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, lattice_enumeration, oracle, audit);
criterion_main!(benches);
