use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::distance::{swap_delta, KParam};
use crate::error::{Error, Result};
use crate::model::{Profile, Ranking};
use crate::reduce::{Reducer, Scheme};

use super::ClaimOutcome;

/// Candidates `x y z t p1 p2 p3 u1 … un` with votes
/// `z t x y U P` (n times), `U y x t z P` (n times), `t z x y U P` (n − 8 times).
pub fn gen_two_thirds_construction(n: usize) -> Result<Profile> {
    if n < 33 {
        return Err(Error::InvalidConfig(format!(
            "the two-thirds construction needs n >= 33, got {n}"
        )));
    }
    let us: Vec<String> = (1..=n).map(|i| format!("u{i}")).collect();
    let u_chain = us.join(" > ");
    let p_tail = "p1 > p2 > p3";
    let mut labels: Vec<&str> = vec!["x", "y", "z", "t", "p1", "p2", "p3"];
    labels.extend(us.iter().map(|u| u.as_str()));
    let votes = vec![
        (format!("z > t > x > y > {u_chain} > {p_tail}"), n as u64),
        (format!("{u_chain} > y > x > t > z > {p_tail}"), n as u64),
        (format!("t > z > x > y > {u_chain} > {p_tail}"), (n - 8) as u64),
    ];
    Profile::from_chains(&labels, &votes)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwapReport {
    pub n: usize,
    /// Shape `A > u_i > s > K > B > P`, swapping `u_i` and `s`.
    pub shape1_samples: usize,
    pub shape1_max_delta: i64,
    pub shape1_nonnegative: usize,
    /// Samples exceeding the analytic bound `32 − n`.
    pub shape1_above_bound: usize,
    /// Shape `D > U > P` with a leader other than `z`, swapping `z` with its predecessor.
    pub shape2_samples: usize,
    pub shape2_max_delta: i64,
    pub shape2_nonnegative: usize,
    /// Samples exceeding the analytic bound `−48`.
    pub shape2_above_bound: usize,
}

impl SwapReport {
    pub fn all_negative(&self) -> bool {
        self.shape1_nonnegative == 0 && self.shape2_nonnegative == 0
    }

    pub fn bounds_hold(&self) -> bool {
        self.shape1_above_bound == 0 && self.shape2_above_bound == 0
    }

    pub fn lines(&self) -> Vec<String> {
        vec![
            format!(
                "shape A>u_i>s>K>B>P: {} samples, max delta {}, {} non-negative, {} above 32-n",
                self.shape1_samples,
                self.shape1_max_delta,
                self.shape1_nonnegative,
                self.shape1_above_bound
            ),
            format!(
                "shape D>U>P, leader != z: {} samples, max delta {}, {} non-negative, {} above -48",
                self.shape2_samples,
                self.shape2_max_delta,
                self.shape2_nonnegative,
                self.shape2_above_bound
            ),
            "note: uniqueness of the median is not searched (too many candidates); only these local swaps are checked".into(),
        ]
    }
}

struct Layout {
    d: [usize; 4],
    z: usize,
    us: Vec<usize>,
    ps: [usize; 3],
}

fn layout(profile: &Profile) -> Result<Layout> {
    let c = profile.candidates();
    let get = |l: &str| {
        c.index_of(l)
            .ok_or_else(|| Error::InvalidProfile(format!("missing candidate `{l}`")))
    };
    let n = profile.n().checked_sub(7).ok_or_else(|| {
        Error::InvalidProfile("not a two-thirds construction profile".into())
    })?;
    Ok(Layout {
        d: [get("x")?, get("y")?, get("z")?, get("t")?],
        z: get("z")?,
        us: (1..=n).map(|i| get(&format!("u{i}"))).collect::<Result<_>>()?,
        ps: [get("p1")?, get("p2")?, get("p3")?],
    })
}

/// A random interleaving of a permutation of `D` into the u-chain, followed
/// by the p-tail. Requires some u directly before a member of D.
fn sample_shape1<R: Rng>(lay: &Layout, rng: &mut R) -> (Vec<usize>, usize) {
    loop {
        let mut d = lay.d.to_vec();
        d.shuffle(rng);
        let slots = lay.us.len() + 1;
        let mut cuts: Vec<usize> = (0..4).map(|_| rng.gen_range(0..slots)).collect();
        cuts.sort_unstable();
        let mut order = Vec::with_capacity(lay.us.len() + 7);
        let mut di = 0;
        for (ui, &u) in lay.us.iter().enumerate() {
            while di < 4 && cuts[di] == ui {
                order.push(d[di]);
                di += 1;
            }
            order.push(u);
        }
        order.extend_from_slice(&d[di..]);
        order.extend_from_slice(&lay.ps);
        let is_d = |c: usize| lay.d.contains(&c);
        // Lowest-ranked u immediately followed by a member of D.
        let pos = (0..order.len() - 1)
            .rev()
            .find(|&i| !is_d(order[i]) && !lay.ps.contains(&order[i]) && is_d(order[i + 1]));
        if let Some(i) = pos {
            return (order, i);
        }
    }
}

fn sample_shape2<R: Rng>(lay: &Layout, rng: &mut R) -> (Vec<usize>, usize) {
    loop {
        let mut d = lay.d.to_vec();
        d.shuffle(rng);
        if d[0] == lay.z {
            continue;
        }
        let zpos = d.iter().position(|&c| c == lay.z).expect("z in D");
        let mut order = d;
        order.extend_from_slice(&lay.us);
        order.extend_from_slice(&lay.ps);
        return (order, zpos - 1);
    }
}

/// Structural facts of the construction for `n`: `t`'s weakest duel share
/// is exactly `(2n − 8)/(3n − 8)`, and the 3-wise unanimity rule fixes the
/// u-chain, the p-tail and everything above the p-tail.
pub fn check_two_thirds_structure(n: usize) -> Result<Vec<ClaimOutcome>> {
    let profile = gen_two_thirds_construction(n)?;
    let lay = layout(&profile)?;
    let pairs = profile.pair_tally();
    let t = lay.d[3];
    let worst = (0..profile.n())
        .filter(|&y| y != t)
        .map(|y| pairs.before(t, y))
        .min()
        .unwrap_or(0);
    let id = format!("TWO_THIRDS(n={n})");
    let mut out = vec![ClaimOutcome {
        instance: id.clone(),
        claim: "weakest duel share of t".into(),
        expected: format!("{}/{}", 2 * n - 8, 3 * n - 8),
        computed: format!("{worst}/{}", profile.m()),
        pass: worst as usize == 2 * n - 8 && profile.m() as usize == 3 * n - 8,
    }];
    let forced = Reducer::new(&profile).unanimity_3wise();
    let mut chain: Vec<(usize, usize)> = lay.us.windows(2).map(|w| (w[0], w[1])).collect();
    chain.extend(lay.ps.windows(2).map(|w| (w[0], w[1])));
    let above_tail: Vec<(usize, usize)> = (0..profile.n())
        .filter(|c| !lay.ps.contains(c))
        .map(|c| (c, lay.ps[0]))
        .collect();
    for (label, pairs) in [("u-chain and p-tail", chain), ("all others above p1", above_tail)] {
        let missing = pairs
            .iter()
            .filter(|&&(a, b)| !forced.is_forced(Scheme::ThreeWise, a, b))
            .count();
        out.push(ClaimOutcome {
            instance: id.clone(),
            claim: format!("unanimity-3wise fixes {label}"),
            expected: format!("{} pairs", pairs.len()),
            computed: format!("{} pairs", pairs.len() - missing),
            pass: missing == 0,
        });
    }
    Ok(out)
}

/// Samples rankings of the two intermediate shapes used in the lower-bound
/// argument and checks that the prescribed swap lowers the 3-wise score.
pub fn verify_two_thirds_local_swaps(
    profile: &Profile,
    samples: usize,
    seed: u64,
) -> Result<SwapReport> {
    let lay = layout(profile)?;
    let n = lay.us.len() as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SwapReport {
        n: lay.us.len(),
        shape1_samples: 0,
        shape1_max_delta: i64::MIN,
        shape1_nonnegative: 0,
        shape1_above_bound: 0,
        shape2_samples: 0,
        shape2_max_delta: i64::MIN,
        shape2_nonnegative: 0,
        shape2_above_bound: 0,
    };
    for i in 0..samples {
        let shape1 = i % 2 == 0;
        let (order, at) = if shape1 {
            sample_shape1(&lay, &mut rng)
        } else {
            sample_shape2(&lay, &mut rng)
        };
        let pi = Ranking::new(order)?;
        let pi_star = pi.swap_positions(at, at + 1);
        let delta = swap_delta(&pi, &pi_star, profile, KParam::THREE)?;
        if shape1 {
            report.shape1_samples += 1;
            report.shape1_max_delta = report.shape1_max_delta.max(delta);
            report.shape1_nonnegative += (delta >= 0) as usize;
            report.shape1_above_bound += (delta > 32 - n) as usize;
        } else {
            report.shape2_samples += 1;
            report.shape2_max_delta = report.shape2_max_delta.max(delta);
            report.shape2_nonnegative += (delta >= 0) as usize;
            report.shape2_above_bound += (delta > -48) as usize;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let p = gen_two_thirds_construction(33).unwrap();
        assert_eq!(p.n(), 40);
        assert_eq!(p.m(), 91);
        assert!(gen_two_thirds_construction(32).is_err());
    }

    #[test]
    fn structure_holds_at_33() {
        for c in check_two_thirds_structure(33).unwrap() {
            assert!(c.pass, "{c}");
        }
    }

    #[test]
    fn self_swap_is_neutral() {
        let p = gen_two_thirds_construction(33).unwrap();
        let r = p.votes()[0].0.clone();
        assert_eq!(swap_delta(&r, &r, &p, KParam::THREE).unwrap(), 0);
    }

    #[test]
    fn a_few_swaps_improve() {
        let p = gen_two_thirds_construction(33).unwrap();
        let report = verify_two_thirds_local_swaps(&p, 40, 7).unwrap();
        assert!(report.all_negative(), "{report:?}");
    }
}
