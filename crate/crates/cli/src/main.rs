use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use kemeny_core::paperlab::{
    check_two_thirds_structure, find_instance, gen_two_thirds_construction, instance_catalog,
    verify_threshold_tables, verify_two_thirds_local_swaps,
};
use kemeny_core::reduce::{compute_alpha_smith_set, Scheme};
use kemeny_core::sim::{self, SimConfig, SimRule, PUBLISHED_GRID};
use kemeny_core::{
    median_bnb, median_bruteforce, median_dp, profile_distance, run_all_rules, KParam, Profile,
    SolverKind, ThresholdRatio,
};
use serde::Serialize;
use serde_json::json;

/// k-wise Kemeny scores, medians and search-space reduction.
#[derive(Parser)]
#[command(name = "kemeny", version)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Score a ranking against a profile.
    Score {
        #[arg(long, value_parser = parse_k)]
        k: KParam,
        /// Ranking as `a > b > c`.
        #[arg(long)]
        ranking: String,
        /// Profile file, or `-` for standard input.
        input: PathBuf,
    },
    /// Compute an optimal k-wise median.
    Median {
        #[arg(long, value_parser = parse_k)]
        k: KParam,
        #[arg(long, default_value = "bnb")]
        solver: SolverKind,
        /// List every median (brute force only).
        #[arg(long)]
        all: bool,
        input: PathBuf,
    },
    /// Run the reduction rules and print forced pairs and winners.
    Reduce {
        #[arg(long, value_enum, default_value = "both")]
        scheme: SchemeArg,
        /// Also print the alpha-Smith set, e.g. `2/3`.
        #[arg(long)]
        alpha: Option<ThresholdRatio>,
        input: PathBuf,
    },
    /// Print the alpha-Smith set.
    Smith {
        #[arg(long, default_value = "3/4")]
        alpha: ThresholdRatio,
        input: PathBuf,
    },
    /// Estimate how often AT/2AT/3AT apply to uniform random profiles.
    Simulate(SimulateArgs),
    /// Re-check the bundled elections and tabulated values.
    VerifyPaper {
        /// Only this instance.
        #[arg(long)]
        instance: Option<String>,
        /// Also recompute the threshold tables.
        #[arg(long)]
        tables: bool,
        /// Number of sampled swaps on the two-thirds construction.
        #[arg(long, default_value_t = 10_000)]
        swap_samples: usize,
        /// Seed for the swap sampling.
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Write a profile.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long, required_unless_present = "grid")]
    n: Option<usize>,
    #[arg(long, required_unless_present = "grid")]
    m: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    /// Comma-separated subset of `at,2at,3at`.
    #[arg(long, value_delimiter = ',', default_value = "at,2at,3at")]
    rules: Vec<SimRule>,
    /// Run the published (n, m) grid.
    #[arg(long, value_enum)]
    grid: Option<Grid>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Grid {
    Paper,
}

#[derive(Subcommand)]
enum GenCommand {
    /// The two-thirds lower-bound family.
    TwoThirds {
        #[arg(long)]
        n: usize,
    },
    /// Uniform random votes.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        seed: u64,
    },
    /// A bundled election by id.
    Instance { id: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    #[value(name = "2wise")]
    TwoWise,
    #[value(name = "3wise")]
    ThreeWise,
    Both,
}

impl SchemeArg {
    fn schemes(self) -> Vec<Scheme> {
        match self {
            SchemeArg::TwoWise => vec![Scheme::TwoWise],
            SchemeArg::ThreeWise => vec![Scheme::ThreeWise],
            SchemeArg::Both => Scheme::ALL.to_vec(),
        }
    }
}

fn parse_k(s: &str) -> Result<KParam, String> {
    let k: usize = s.parse().map_err(|_| format!("`{s}` is not an integer"))?;
    if !(2..=3).contains(&k) {
        return Err("k must be 2 or 3".into());
    }
    KParam::new(k).map_err(|e| e.to_string())
}

type Outcome = Result<bool, Box<dyn std::error::Error>>;

fn read_profile(path: &PathBuf) -> Result<Profile, Box<dyn std::error::Error>> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
    };
    Ok(Profile::parse(&text)?)
}

fn emit<T: Serialize>(value: &T) -> Result<(), Box<dyn std::error::Error>> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn names(profile: &Profile, members: &[usize]) -> Vec<String> {
    members.iter().map(|&c| profile.candidates().name(c).to_string()).collect()
}

fn score(json: bool, k: KParam, ranking: &str, input: &PathBuf) -> Outcome {
    let profile = read_profile(input)?;
    let r = profile.ranking(ranking)?;
    let s = profile_distance(&r, &profile, k)?;
    if json {
        emit(&json!({ "k": k.get(), "score": s }))?;
    } else {
        println!("{s}");
    }
    Ok(true)
}

fn median(json: bool, k: KParam, solver: SolverKind, all: bool, input: &PathBuf) -> Outcome {
    let profile = read_profile(input)?;
    let result = match solver {
        SolverKind::BruteForce => median_bruteforce(&profile, k, all)?,
        SolverKind::Dp => median_dp(&profile, k)?,
        SolverKind::BranchAndBound => median_bnb(&profile, k, &run_all_rules(&profile)?)?,
        SolverKind::MajorityVote => return Err("majority-vote is not a search solver".into()),
    };
    let medians: Vec<String> = result
        .medians
        .iter()
        .map(|r| r.display(profile.candidates()).to_string())
        .collect();
    if json {
        emit(&json!({
            "k": k.get(),
            "solver": result.solver.name(),
            "score": result.optimal_score,
            "medians": medians,
            "complete": result.complete,
        }))?;
    } else {
        println!("score {}", result.optimal_score);
        for m in medians {
            println!("{m}");
        }
    }
    Ok(true)
}

fn reduce(json: bool, scheme: SchemeArg, alpha: Option<ThresholdRatio>, input: &PathBuf) -> Outcome {
    let profile = read_profile(input)?;
    let cs = run_all_rules(&profile)?;
    let smith = compute_alpha_smith_set(&profile, ThresholdRatio::THREE_QUARTERS)?;
    let alpha_set = alpha
        .map(|a| compute_alpha_smith_set(&profile, a).map(|s| (a, s)))
        .transpose()?;
    let schemes = scheme.schemes();
    if json {
        let mut forced = Vec::new();
        let mut winners = Vec::new();
        let mut winner_sets = Vec::new();
        for &s in &schemes {
            for p in cs.forced_pairs(s) {
                forced.push(json!({
                    "scheme": s,
                    "before": profile.candidates().name(p.before),
                    "after": profile.candidates().name(p.after),
                    "rules": p.rules,
                }));
            }
            for (w, rules) in cs.winners(s) {
                winners.push(json!({
                    "scheme": s,
                    "winner": profile.candidates().name(w),
                    "rules": rules,
                }));
            }
            for set in cs.winner_sets(s) {
                winner_sets.push(json!({
                    "scheme": s,
                    "members": names(&profile, &set.members),
                    "rule": set.rule,
                }));
            }
        }
        let mut report = json!({
            "forced_pairs": forced,
            "winners": winners,
            "winner_sets": winner_sets,
            "smith_set": names(&profile, &smith),
            "conditional_rules": cs.conditional().iter().map(|c| c.name()).collect::<Vec<_>>(),
        });
        if let Some((a, set)) = &alpha_set {
            report["alpha"] = json!(a.to_string());
            report["alpha_smith_set"] = json!(names(&profile, set));
        }
        emit(&report)?;
        return Ok(true);
    }
    for &s in &schemes {
        println!("# {s}: {} forced pairs", cs.forced_count(s));
        for line in cs.describe(s, profile.candidates()) {
            println!("{line}");
        }
        for (w, rules) in cs.winners(s) {
            let rules: Vec<&str> = rules.iter().map(|r| r.name()).collect();
            println!("winner {}  [{}]", profile.candidates().name(w), rules.join(", "));
        }
        for set in cs.winner_sets(s) {
            println!(
                "winner in {{{}}}  [{}]",
                names(&profile, &set.members).join(", "),
                set.rule
            );
        }
    }
    println!("3/4-Smith set: {{{}}}", names(&profile, &smith).join(", "));
    if let Some((a, set)) = alpha_set {
        println!("{a}-Smith set: {{{}}}", names(&profile, &set).join(", "));
    }
    Ok(true)
}

fn smith(json: bool, alpha: ThresholdRatio, input: &PathBuf) -> Outcome {
    let profile = read_profile(input)?;
    let set = names(&profile, &compute_alpha_smith_set(&profile, alpha)?);
    if json {
        emit(&json!({ "alpha": alpha.to_string(), "smith_set": set }))?;
    } else {
        println!("{{{}}}", set.join(", "));
    }
    Ok(true)
}

fn simulate(json: bool, args: &SimulateArgs) -> Outcome {
    let shapes: Vec<(usize, usize)> = match args.grid {
        Some(Grid::Paper) => PUBLISHED_GRID.iter().map(|r| (r.0, r.1)).collect(),
        None => vec![(args.n.unwrap_or(0), args.m.unwrap_or(0))],
    };
    let mut reports = Vec::new();
    for (n, m) in shapes {
        let cfg = SimConfig {
            rules: args.rules.clone(),
            ..SimConfig::new(n, m, args.trials, args.seed)
        };
        reports.push(sim::applicability(&cfg)?);
    }
    if json {
        emit(&reports)?;
    } else {
        for r in &reports {
            let published: Vec<String> = r
                .percentages
                .iter()
                .filter_map(|p| sim::published_value(r.n, r.m, p.rule).map(|v| format!("{} {v}%", p.rule)))
                .collect();
            if published.is_empty() {
                println!("{}", r.row());
            } else {
                println!("{}   (published: {})", r.row(), published.join(", "));
            }
        }
    }
    Ok(true)
}

fn verify_paper(json: bool, instance: Option<&str>, tables: bool, samples: usize, seed: u64) -> Outcome {
    let instances = match instance {
        Some(id) if id.eq_ignore_ascii_case("two_thirds") => Vec::new(),
        Some(id) => vec![find_instance(id).ok_or_else(|| format!("unknown instance `{id}`"))?],
        None => instance_catalog(),
    };
    let mut claims = Vec::new();
    for inst in &instances {
        claims.extend(inst.verify()?);
    }
    let include_two_thirds = instance.is_none_or(|id| id.eq_ignore_ascii_case("two_thirds"));
    let mut swaps = Vec::new();
    if include_two_thirds {
        for n in [33, 40, 50] {
            claims.extend(check_two_thirds_structure(n)?);
            let p = gen_two_thirds_construction(n)?;
            swaps.push(verify_two_thirds_local_swaps(&p, samples, seed ^ n as u64)?);
        }
    }
    let table_checks = if tables { verify_threshold_tables() } else { Vec::new() };
    let ok = claims.iter().all(|c| c.pass)
        && swaps.iter().all(|s| s.all_negative() && s.bounds_hold())
        && table_checks.iter().all(|c| c.pass);
    if json {
        emit(&json!({ "claims": claims, "two_thirds_swaps": swaps, "tables": table_checks, "pass": ok }))?;
        return Ok(ok);
    }
    for c in &claims {
        println!("{c}");
    }
    for s in &swaps {
        let status = if s.all_negative() && s.bounds_hold() { "PASS" } else { "FAIL" };
        for line in s.lines() {
            if line.starts_with("note") {
                println!("     TWO_THIRDS(n={}): {line}", s.n);
            } else {
                println!("{status} TWO_THIRDS(n={}): {line}", s.n);
            }
        }
    }
    for c in &table_checks {
        println!("{c}");
    }
    Ok(ok)
}

fn gen(json: bool, what: &GenCommand) -> Outcome {
    let profile = match what {
        GenCommand::TwoThirds { n } => gen_two_thirds_construction(*n)?,
        GenCommand::Random { n, m, seed } => {
            sim::random_profile(*n, *m, &mut sim::trial_rng(*seed, 0))?
        }
        GenCommand::Instance { id } => {
            find_instance(id)
                .ok_or_else(|| format!("unknown instance `{id}`"))?
                .profile
        }
    };
    if json {
        emit(&json!({ "profile": profile.to_text() }))?;
    } else {
        print!("{}", profile.to_text());
    }
    Ok(true)
}

fn run(cli: &Cli) -> Outcome {
    let json = cli.json;
    match &cli.command {
        Command::Score { k, ranking, input } => score(json, *k, ranking, input),
        Command::Median { k, solver, all, input } => median(json, *k, *solver, *all, input),
        Command::Reduce { scheme, alpha, input } => reduce(json, *scheme, *alpha, input),
        Command::Smith { alpha, input } => smith(json, *alpha, input),
        Command::Simulate(args) => simulate(json, args),
        Command::VerifyPaper { instance, tables, swap_samples, seed } => {
            verify_paper(json, instance.as_deref(), *tables, *swap_samples, *seed)
        }
        Command::Gen { what } => gen(json, what),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Median { solver, all: true, .. } = &cli.command {
        if *solver != SolverKind::BruteForce {
            Cli::command()
                .error(ErrorKind::ArgumentConflict, "--all needs --solver brute")
                .exit();
        }
    }
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
