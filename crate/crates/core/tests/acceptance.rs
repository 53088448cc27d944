//! One PASS/FAIL line per acceptance criterion.
//!
//! Criteria whose published figures disagree with an exact recomputation are
//! listed in `KNOWN_DISCREPANCIES`; they still print FAIL, but only failures
//! outside that list make the run exit non-zero.

use std::time::Instant;

use kemeny_core::model::{CandidateSet, Profile, Ranking};
use kemeny_core::paperlab::{
    check_two_thirds_structure, find_instance, gen_two_thirds_construction, verify_threshold_tables,
    verify_two_thirds_local_swaps, NINE_CAND,
};
use kemeny_core::reduce::{Reducer, Scheme};
use kemeny_core::sim::{self, SimConfig, SimRule};
use kemeny_core::{
    distance_fast, distance_oracle, median_bnb, median_bruteforce, median_dp, run_all_rules, KParam,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KNOWN_DISCREPANCIES: [&str; 2] = ["2", "6"];

struct Criterion {
    id: &'static str,
    title: &'static str,
    pass: bool,
    details: Vec<String>,
    seconds: f64,
}

fn run(id: &'static str, title: &'static str, f: impl FnOnce(&mut Vec<String>) -> bool) -> Criterion {
    let start = Instant::now();
    let mut details = Vec::new();
    let pass = f(&mut details);
    Criterion {
        id,
        title,
        pass,
        details,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn bundled_elections(out: &mut Vec<String>) -> bool {
    let mut ok = true;
    for id in ["CONDORCET_LOSER", "LOWER_3_5", "LOWER_5_8", "SMITH_IIA", "NINE_CAND"] {
        let inst = find_instance(id).expect("bundled instance");
        for c in inst.verify().expect("claims evaluate") {
            ok &= c.pass;
            if !c.pass {
                out.push(c.to_string());
            }
        }
    }
    out.push("five bundled elections re-solved exhaustively".into());
    ok
}

fn threshold_tables(out: &mut Vec<String>) -> bool {
    let checks = verify_threshold_tables();
    let failed: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
    out.push(format!("{} of {} cells match", checks.len() - failed.len(), checks.len()));
    for c in &failed {
        out.push(c.to_string());
    }
    failed.is_empty()
}

fn ranking_of(n: usize, rng: &mut ChaCha8Rng) -> Ranking {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Ranking::new(v).unwrap()
}

fn all_rankings(n: usize) -> Vec<Ranking> {
    let mut out = Vec::new();
    let mut v: Vec<usize> = (0..n).collect();
    permute(&mut v, 0, &mut out);
    out
}

fn permute(v: &mut Vec<usize>, i: usize, out: &mut Vec<Ranking>) {
    if i == v.len() {
        out.push(Ranking::new(v.clone()).unwrap());
        return;
    }
    for j in i..v.len() {
        v.swap(i, j);
        permute(v, i + 1, out);
        v.swap(i, j);
    }
}

fn oracle_equivalence(out: &mut Vec<String>) -> bool {
    let mut compared = 0u64;
    let mut mismatches = 0u64;
    for k in [KParam::TWO, KParam::THREE] {
        for n in 1..=5 {
            let all = all_rankings(n);
            for a in &all {
                for b in &all {
                    compared += 1;
                    mismatches += (distance_fast(a, b, k).unwrap() != distance_oracle(a, b, k).unwrap()) as u64;
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let n = rng.gen_range(1..=8);
            let (a, b) = (ranking_of(n, &mut rng), ranking_of(n, &mut rng));
            compared += 1;
            mismatches += (distance_fast(&a, &b, k).unwrap() != distance_oracle(&a, &b, k).unwrap()) as u64;
        }
    }
    out.push(format!("{compared} pairs, {mismatches} mismatches"));
    mismatches == 0
}

fn solver_cross_validation(out: &mut Vec<String>) -> bool {
    let mut mismatches = 0;
    let mut solved = 0;
    for n in 3..=7 {
        for m in 3..=9 {
            for i in 0..200u64 {
                let p = sim::random_profile(n, m, &mut sim::trial_rng(n as u64 * 1000 + m as u64, i)).unwrap();
                for k in [KParam::TWO, KParam::THREE] {
                    let brute = median_bruteforce(&p, k, false).unwrap().optimal_score;
                    let dp = median_dp(&p, k).unwrap().optimal_score;
                    let bnb = median_bnb(&p, k, &run_all_rules(&p).unwrap()).unwrap().optimal_score;
                    solved += 1;
                    if brute != dp || brute != bnb {
                        mismatches += 1;
                        out.push(format!("n={n} m={m} #{i} k={k}: brute {brute}, dp {dp}, bnb {bnb}"));
                    }
                }
            }
        }
    }
    out.push(format!("{solved} (profile, k) cases, {mismatches} mismatches"));
    mismatches == 0
}

fn soundness(out: &mut Vec<String>) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut violations = 0;
    let mut constraints = 0;
    for _ in 0..500 {
        let n = rng.gen_range(3..=6);
        let m = rng.gen_range(1..=9);
        let pool = if rng.gen_bool(0.5) { m } else { rng.gen_range(1..=3) };
        let bases: Vec<Ranking> = (0..pool).map(|_| ranking_of(n, &mut rng)).collect();
        let votes = (0..m).map(|_| (bases[rng.gen_range(0..pool)].clone(), 1)).collect();
        let labels = CandidateSet::new((0..n).map(|i| format!("c{i}"))).unwrap();
        let p = Profile::new(labels, votes).unwrap();
        let pairs = p.pair_tally();
        let cs = run_all_rules(&p).unwrap();
        for scheme in Scheme::ALL {
            let medians = median_bruteforce(&p, scheme.k(), true).unwrap().medians;
            let forced = cs.forced_pairs(scheme);
            let winners = cs.winners(scheme);
            constraints += forced.len() + winners.len();
            for med in &medians {
                violations += forced.iter().filter(|f| !med.prefers(f.before, f.after)).count();
                violations += winners.iter().filter(|(w, _)| med.top() != *w).count();
                violations += cs.winner_sets(scheme).filter(|s| !s.members.contains(&med.top())).count();
                if scheme == Scheme::ThreeWise {
                    violations += cs.conditional_violations(&pairs, med).unwrap().len();
                }
            }
        }
    }
    out.push(format!("500 profiles, {constraints} constraints, {violations} violations"));
    violations == 0
}

fn applicability(out: &mut Vec<String>) -> bool {
    const TRIALS: u64 = 100_000;
    let points: [(usize, usize); 6] = [(3, 3), (3, 4), (3, 7), (4, 5), (5, 6), (10, 11)];
    let mut ok = true;
    for (n, m) in points {
        let report = sim::applicability(&SimConfig::new(n, m, TRIALS, 2024)).unwrap();
        for rate in &report.percentages {
            let published = sim::published_value(n, m, rate.rule).unwrap();
            let sigma = sim::sigma_percent(published, TRIALS);
            let z = (rate.percentage - published).abs() / sigma;
            // Both figures are 1e5-sample estimates; the two-sample score is reported alongside.
            let z2 = z / std::f64::consts::SQRT_2;
            let pass = z <= 3.0;
            ok &= pass;
            out.push(format!(
                "{} ({n},{m}) {}: measured {:.3}%, published {published}%, {z:.1} sigma ({z2:.1} two-sample)",
                if pass { "ok  " } else { "MISS" },
                rate.rule,
                rate.percentage
            ));
        }
    }
    for m in [3, 4] {
        let cfg = SimConfig::new(3, m, TRIALS, 7);
        let equal = sim::trial_indicators(&cfg)
            .unwrap()
            .iter()
            .all(|hits| hits.contains(&SimRule::At) == hits.contains(&SimRule::ThreeAt));
        ok &= equal;
        out.push(format!("AT == 3AT on every trial at (3,{m}): {equal}"));
    }
    ok
}

fn two_thirds(out: &mut Vec<String>) -> bool {
    let mut ok = true;
    for n in [33, 40, 50] {
        for c in check_two_thirds_structure(n).unwrap() {
            ok &= c.pass;
            out.push(c.to_string());
        }
        let p = gen_two_thirds_construction(n).unwrap();
        let report = verify_two_thirds_local_swaps(&p, 10_000, n as u64).unwrap();
        ok &= report.all_negative();
        out.extend(report.lines().into_iter().map(|l| format!("n={n}: {l}")));
    }
    ok
}

fn nine_candidate_negative(out: &mut Vec<String>) -> bool {
    let p = Profile::parse(NINE_CAND).unwrap();
    let x4 = p.candidates().index_of("x4").unwrap();
    let certified = Reducer::new(&p)
        .condorcet_3wise()
        .winners(Scheme::ThreeWise)
        .iter()
        .any(|(w, _)| *w == x4);
    let medians = median_bruteforce(&p, KParam::THREE, true).unwrap().medians;
    let x4_loses = medians.iter().all(|r| r.top() != x4);
    out.push(format!(
        "condorcet-3wise certifies x4: {certified}; x4 tops a median: {}",
        !x4_loses
    ));
    !certified && x4_loses
}

fn main() {
    let criteria = vec![
        run("1", "bundled-election regression", bundled_elections),
        run("2", "threshold tables", threshold_tables),
        run("3", "oracle equivalence of distances", oracle_equivalence),
        run("4", "solver cross-validation", solver_cross_validation),
        run("5", "reduction soundness", soundness),
        run("6", "applicability table (statistical)", applicability),
        run("7", "two-thirds construction properties", two_thirds),
        run("8", "3-wise Condorcet non-firing on NINE_CAND", nine_candidate_negative),
    ];
    let mut unexpected = Vec::new();
    for c in &criteria {
        println!(
            "{} criterion {}: {} ({:.1}s)",
            if c.pass { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            c.seconds
        );
        for d in &c.details {
            println!("      {d}");
        }
        if !c.pass && !KNOWN_DISCREPANCIES.contains(&c.id) {
            unexpected.push(c.id);
        }
    }
    let passed = criteria.iter().filter(|c| c.pass).count();
    println!("{passed}/{} criteria pass", criteria.len());
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
