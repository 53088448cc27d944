use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use kemeny_core::paperlab::NINE_CAND;
use kemeny_core::sim::{random_profile, trial_rng};
use kemeny_core::{
    distance_fast, distance_oracle, median_bnb, median_bruteforce, median_dp, run_all_rules,
    ConstraintSet, KParam, Profile, Ranking,
};

fn distances(c: &mut Criterion) {
    let mut group = c.benchmark_group("distance");
    for n in [8usize, 16, 32] {
        let mut rng = trial_rng(1, n as u64);
        let p = random_profile(n, 2, &mut rng).unwrap();
        let (a, b) = (&p.votes()[0].0, &p.votes()[1].0);
        group.bench_with_input(BenchmarkId::new("fast_k3", n), &n, |bench, _| {
            bench.iter(|| distance_fast(a, b, KParam::THREE).unwrap())
        });
        if n <= 16 {
            group.bench_with_input(BenchmarkId::new("oracle_k3", n), &n, |bench, _| {
                bench.iter(|| distance_oracle(a, b, KParam::THREE).unwrap())
            });
        }
    }
    group.finish();
}

fn solvers(c: &mut Criterion) {
    let mut group = c.benchmark_group("median_k3");
    group.sample_size(10);
    for n in [7usize, 9, 12] {
        let p = random_profile(n, 15, &mut trial_rng(2, n as u64)).unwrap();
        if n <= 9 {
            group.bench_with_input(BenchmarkId::new("brute", n), &p, |bench, p| {
                bench.iter(|| median_bruteforce(p, KParam::THREE, false).unwrap())
            });
        }
        group.bench_with_input(BenchmarkId::new("dp", n), &p, |bench, p| {
            bench.iter(|| median_dp(p, KParam::THREE).unwrap())
        });
        let free = ConstraintSet::new(n);
        group.bench_with_input(BenchmarkId::new("bnb_unconstrained", n), &p, |bench, p| {
            bench.iter(|| median_bnb(p, KParam::THREE, &free).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("bnb_reduced", n), &p, |bench, p| {
            bench.iter(|| median_bnb(p, KParam::THREE, &run_all_rules(p).unwrap()).unwrap())
        });
    }
    let nine = Profile::parse(NINE_CAND).unwrap();
    group.bench_function("nine_cand_dp", |bench| {
        bench.iter(|| median_dp(&nine, KParam::THREE).unwrap())
    });
    group.finish();
}

fn reduction(c: &mut Criterion) {
    let p = random_profile(20, 50, &mut trial_rng(3, 0)).unwrap();
    c.bench_function("run_all_rules_n20", |bench| bench.iter(|| run_all_rules(&p).unwrap()));
    let id = Ranking::identity(20);
    c.bench_function("identity_reversal_k3_n20", |bench| {
        bench.iter(|| distance_fast(&id, &id.reversed(), KParam::THREE).unwrap())
    });
}

criterion_group!(benches, distances, solvers, reduction);
criterion_main!(benches);
