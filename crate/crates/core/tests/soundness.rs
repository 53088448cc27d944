use std::collections::BTreeMap;

use kemeny_core::model::{CandidateSet, Profile, Ranking, ThresholdRatio};
use kemeny_core::reduce::{ConditionalRule, Reducer, Scheme, ViolationKind};
use kemeny_core::{median_bruteforce, run_all_rules};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Either uniform votes or a few popular rankings repeated, so that the
/// 3/4-type conditions fire often.
fn sample_profile(rng: &mut ChaCha8Rng) -> Profile {
    let n = rng.gen_range(3..=6);
    sample_profile_n(rng, n)
}

fn sample_profile_n(rng: &mut ChaCha8Rng, n: usize) -> Profile {
    let m = rng.gen_range(1..=9);
    let pool = if rng.gen_bool(0.5) { m } else { rng.gen_range(1..=3) };
    let bases: Vec<Vec<usize>> = (0..pool)
        .map(|_| {
            let mut v: Vec<usize> = (0..n).collect();
            v.shuffle(rng);
            v
        })
        .collect();
    let mut votes: Vec<(Ranking, u64)> = Vec::new();
    for _ in 0..m {
        let mut order = bases[rng.gen_range(0..pool)].clone();
        if rng.gen_bool(0.3) {
            let i = rng.gen_range(0..n - 1);
            order.swap(i, i + 1);
        }
        votes.push((Ranking::new(order).unwrap(), 1));
    }
    let labels = CandidateSet::new((0..n).map(|i| format!("c{i}"))).unwrap();
    Profile::new(labels, votes).unwrap()
}

#[test]
fn unconditional_and_conditional_rules_hold_on_every_median() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut fired: BTreeMap<String, usize> = BTreeMap::new();
    let lambda_rule = ConditionalRule::five_six_lambda(
        ThresholdRatio::new(1, 1).unwrap(),
        ThresholdRatio::new(6, 7).unwrap(),
    )
    .unwrap();
    for case in 0..500 {
        let profile = sample_profile(&mut rng);
        let pairs = profile.pair_tally();
        let mut cs = run_all_rules(&profile).unwrap();
        cs.merge(Reducer::new(&profile).xcc_3wise_exhaustive().unwrap());
        cs.add_conditional(lambda_rule);
        for scheme in Scheme::ALL {
            let all = median_bruteforce(&profile, scheme.k(), true).unwrap();
            for fp in cs.forced_pairs(scheme) {
                for r in &fp.rules {
                    *fired.entry(format!("pair {}", r.name())).or_default() += 1;
                }
                for med in &all.medians {
                    assert!(
                        med.prefers(fp.before, fp.after),
                        "case {case}: {fp:?} broken by a {:?} median\n{}",
                        scheme,
                        profile.to_text()
                    );
                }
            }
            for (w, rules) in cs.winners(scheme) {
                for r in &rules {
                    *fired.entry(format!("winner {}", r.name())).or_default() += 1;
                }
                for med in &all.medians {
                    assert_eq!(med.top(), w, "case {case}: {rules:?}\n{}", profile.to_text());
                }
            }
            for set in cs.winner_sets(scheme) {
                *fired.entry(format!("set {}", set.rule.name())).or_default() += 1;
                for med in &all.medians {
                    assert!(set.members.contains(&med.top()), "case {case}: {set:?}");
                }
            }
            if scheme == Scheme::ThreeWise {
                for med in &all.medians {
                    let v = cs.conditional_violations(&pairs, med).unwrap();
                    assert!(v.is_empty(), "case {case}: {v:?}\n{}", profile.to_text());
                }
            }
        }
    }
    println!("{fired:#?}");
    assert!(fired.len() >= 5, "too few rules fired: {fired:?}");
}

/// Each shape and the six-candidate rule must reject some ranking somewhere,
/// and never a true median.
#[test]
fn small_election_rule_prunes_only_non_medians() {
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let mut pruned: BTreeMap<ViolationKind, usize> = BTreeMap::new();
    for _ in 0..300 {
        let profile = loop {
            let p = sample_profile(&mut rng);
            if p.n() >= 4 {
                break p;
            }
        };
        let pairs = profile.pair_tally();
        let all = median_bruteforce(&profile, kemeny_core::KParam::THREE, true).unwrap();
        let mut order: Vec<usize> = (0..profile.n()).collect();
        for _ in 0..20 {
            order.shuffle(&mut rng);
            let r = Ranking::new(order.clone()).unwrap();
            for v in ConditionalRule::SmallElection.check(&pairs, &r).unwrap() {
                *pruned.entry(v.kind).or_default() += 1;
            }
        }
        for med in &all.medians {
            let v = ConditionalRule::SmallElection.check(&pairs, med).unwrap();
            assert!(v.is_empty(), "{v:?}\n{}", profile.to_text());
        }
    }
    println!("{pruned:?}");
    assert!(!pruned.is_empty());
}

fn pruning_is_sound_at(n: usize, cases: usize, seed: u64) -> BTreeMap<ViolationKind, usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits: BTreeMap<ViolationKind, usize> = BTreeMap::new();
    for _ in 0..cases {
        let profile = sample_profile_n(&mut rng, n);
        let pairs = profile.pair_tally();
        let all = median_bruteforce(&profile, kemeny_core::KParam::THREE, true).unwrap();
        for med in &all.medians {
            let v = ConditionalRule::SmallElection.check(&pairs, med).unwrap();
            assert!(v.is_empty(), "{v:?}\n{}", profile.to_text());
        }
        let mut order: Vec<usize> = (0..n).collect();
        for _ in 0..50 {
            order.shuffle(&mut rng);
            let r = Ranking::new(order.clone()).unwrap();
            for v in ConditionalRule::SmallElection.check(&pairs, &r).unwrap() {
                *hits.entry(v.kind).or_default() += 1;
            }
        }
    }
    hits
}

#[test]
fn six_candidate_rule_is_sound() {
    let hits = pruning_is_sound_at(6, 600, 6);
    assert!(hits.get(&ViolationKind::SixCandidate).copied().unwrap_or(0) > 0, "{hits:?}");
}

#[test]
fn tail_shape_is_sound_at_eight() {
    let hits = pruning_is_sound_at(8, 40, 8);
    assert!(hits.get(&ViolationKind::ShapeTail).copied().unwrap_or(0) > 0, "{hits:?}");
}
