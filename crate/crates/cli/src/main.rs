use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use sumset_lab::geometry::{self, Zonotope};
use sumset_lab::structure::{self, PreprocessStatus};
use sumset_lab::suites::{self, SUITES};
use sumset_lab::{io, nonavg, sumsets, ExperimentConfig, IntSet, Rational, DEFAULT_CAP};

#[derive(Parser)]
#[command(name = "sumset-lab", version, about = "Exact subset-sum and sumset experiments")]
struct Cli {
    /// Enumeration cap (elements or bit-vector slots).
    #[arg(long, global = true, env = "SUMSETLAB_CAP")]
    cap: Option<u64>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the subset sums of a set file.
    Sigma { file: PathBuf },
    /// Longest arithmetic progression inside the subset sums.
    Ap {
        file: PathBuf,
        /// Require the difference to divide the first term.
        #[arg(long)]
        homogeneous: bool,
    },
    /// Greedy subset-sum growth.
    Greedy {
        file: PathBuf,
        #[arg(long)]
        steps: Option<usize>,
    },
    /// Doubling profile, empirical h-dimension and box ratio as CSV.
    Hdim {
        file: PathBuf,
        #[arg(long)]
        h: u64,
        #[arg(long = "T", default_value_t = 1)]
        t: u32,
        #[arg(long)]
        diff_bound: Option<i64>,
    },
    /// Bounding box of dimension 1 or 2.
    Bbox {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long)]
        diff_bound: Option<i64>,
    },
    /// Remove elements until weakly stable and resilient.
    Stabilize {
        file: PathBuf,
        #[arg(long)]
        t: u64,
        #[arg(long)]
        diff_bound: Option<i64>,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
    /// Zonogon operations on a point file.
    Zonotope {
        #[command(subcommand)]
        op: ZonoOp,
    },
    /// Non-averaging sets.
    Nonavg {
        #[command(subcommand)]
        op: NonavgOp,
    },
    /// Run a verification suite (or `all`) and emit CSV.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Append a runtime column (output is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Parameter sweeps.
    Sweep {
        #[command(subcommand)]
        what: SweepOp,
    },
}

#[derive(Subcommand)]
enum ZonoOp {
    /// Round a point of the zonogon to a nearby subset sum.
    Sample {
        file: PathBuf,
        /// One coefficient per generator.
        #[arg(long, conflicts_with = "uniform")]
        coeffs: Option<PathBuf>,
        /// Use 1/2 for every coefficient.
        #[arg(long)]
        uniform: bool,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        retry_limit: u32,
    },
    /// Exact zonogon area.
    Area { file: PathBuf },
    /// Integer points of the zonogon.
    Count { file: PathBuf },
}

#[derive(Subcommand)]
enum NonavgOp {
    /// Decide whether a set is non-averaging.
    Check { file: PathBuf },
    /// Largest non-averaging subset of [n].
    #[command(name = "h")]
    H {
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = u64::MAX)]
        budget: u64,
    },
    /// Two equal-size subsets of [n] with disjoint subset sums.
    #[command(name = "H")]
    Hpair {
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = u64::MAX)]
        budget: u64,
    },
    /// As Hpair, with both sets non-averaging and separated.
    #[command(name = "Htilde")]
    Htilde {
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = u64::MAX)]
        budget: u64,
    },
    /// The set { i q^3 + i(i+1)/2 : 1 <= i < q }.
    Bosznay {
        #[arg(long)]
        q: i64,
    },
}

#[derive(Subcommand)]
enum SweepOp {
    /// Table of h(n), H(n), H~(n) for n = 1..=n_max.
    Nonavg {
        #[arg(long)]
        n_max: i64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = u64::MAX)]
        budget: u64,
    },
}

fn read_set(path: &Path, cap: u64) -> Result<IntSet> {
    let v = io::read_set(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(IntSet::from_values(v, cap)?)
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn list(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cap = cli.cap.unwrap_or(DEFAULT_CAP);
    match cli.cmd {
        Cmd::Sigma { file } => {
            let v = io::read_set(&file)?;
            let s = sumsets::subset_sums(&v, cap)?;
            println!("size {}", s.len());
            println!("{s}");
        }
        Cmd::Ap { file, homogeneous } => {
            let v = io::read_set(&file)?;
            let s = sumsets::subset_sums(&v, cap)?;
            let p = if homogeneous {
                sumsets::longest_homogeneous_ap(&s)
            } else {
                sumsets::longest_ap(&s)
            };
            let p = p.expect("subset sums always contain 0");
            println!("start {} diff {} length {}", p.start, p.diff, p.len);
        }
        Cmd::Greedy { file, steps } => {
            let v = io::read_set(&file)?;
            let tr = sumsets::greedy_sigma_growth(&v, steps.unwrap_or(v.len()), cap)?;
            println!("chosen {}", list(&tr.chosen));
            let sizes: Vec<String> = tr.sizes.iter().map(|s| s.to_string()).collect();
            println!("sizes {}", sizes.join(" "));
            println!("remaining {}", list(&tr.remaining));
        }
        Cmd::Hdim { file, h, t, diff_bound } => {
            let mut a = read_set(&file, cap)?;
            if !a.contains(0) {
                log::info!("adding 0 to the input set");
                a = a.union(&IntSet::singleton(0), cap)?.compact();
            }
            let hd = structure::empirical_h_dimension(&a, h, t, cap)?;
            let d = hd.d_prime as usize;
            let bound = diff_bound.unwrap_or_else(|| a.max().unwrap().max(2));
            let (vol, ratio) = if (1..=2).contains(&d) {
                let vol = structure::bounding_box(&a, d, bound)?.volume();
                let ratio = structure::hfold_box_ratio(&a, h, d, bound, cap)?;
                (vol.to_string(), format!("{ratio:.6}"))
            } else {
                ("na".into(), "na".into())
            };
            println!("n,m,h,d_prime,y,vol_box,ratio");
            println!(
                "{},{},{h},{},{},{vol},{ratio}",
                a.max().unwrap() + 1,
                a.len(),
                hd.d_prime,
                hd.y
            );
        }
        Cmd::Bbox { file, dim, diff_bound } => {
            let a = read_set(&file, cap)?;
            let bound = diff_bound.unwrap_or_else(|| a.max().unwrap_or(0).max(2));
            let b = structure::bounding_box(&a, dim, bound)?;
            println!("gap {}", b.gap);
            println!("volume {}", b.volume());
            println!("exact {}", b.exact);
        }
        Cmd::Stabilize { file, t, diff_bound, trials, seed } => {
            let a = read_set(&file, cap)?;
            let cfg = ExperimentConfig {
                diff_bound,
                trials,
                seed,
                cap,
                ..Default::default()
            };
            let out = structure::preprocess_stable(&a, t, &cfg)?;
            // Stability quantifies over differences up to n^2.
            let n = a.max().unwrap_or(0) as i128 + 1;
            let bound = diff_bound.unwrap_or_else(|| a.max().unwrap_or(0)) as i128;
            println!("set {}", out.set);
            println!("exact {}", bound >= n * n);
            println!("removed {}", list(&out.removed));
            println!("iterations {} {} {}", out.step1, out.step2, out.step3);
            match out.status {
                PreprocessStatus::Complete => println!("status complete"),
                PreprocessStatus::Inconclusive(why) => {
                    println!("status inconclusive ({why})");
                    return Ok(ExitCode::from(2));
                }
            }
        }
        Cmd::Zonotope { op } => zonotope(op, cap)?,
        Cmd::Nonavg { op } => return nonavg_cmd(op, cap),
        Cmd::Verify { suite, seed, trials, budget, out, timings } => {
            if suite != "all" && !SUITES.contains(&suite.as_str()) {
                bail!("unknown suite `{suite}`; known: all, {}", SUITES.join(", "));
            }
            let mut cfg = ExperimentConfig {
                seed,
                cap,
                ..Default::default()
            };
            if let Some(t) = trials {
                cfg.trials = t;
            }
            if let Some(b) = budget {
                cfg.budget = b;
            }
            let rows = suites::run_suite(&suite, &cfg)?;
            emit(&suites::to_csv(&rows, timings), out.as_deref())?;
            let failed = rows.iter().filter(|r| r.outcome == suites::Outcome::Fail).count();
            eprintln!("{} rows, {} failed", rows.len(), failed);
            if failed > 0 {
                return Ok(ExitCode::FAILURE);
            }
        }
        Cmd::Sweep { what: SweepOp::Nonavg { n_max, out, budget } } => {
            let mut csv = String::from("n,h,H,Htilde,bound_slack,runtime_ms\n");
            let mut ok = true;
            for n in 1..=n_max {
                let r = nonavg::verify_h_bound(n, budget)?;
                ok &= r.holds;
                if !r.exact {
                    log::warn!("n = {n}: budget exhausted, values are lower bounds");
                }
                csv.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    r.n, r.h, r.big_h, r.h_tilde, r.slack, r.runtime_ms
                ));
            }
            emit(&csv, out.as_deref())?;
            if !ok {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn zonotope(op: ZonoOp, cap: u64) -> Result<()> {
    let load = |p: &Path| -> Result<Zonotope> {
        let cloud = io::read_points(p).with_context(|| format!("reading {}", p.display()))?;
        Ok(Zonotope::from_cloud(&cloud))
    };
    match op {
        ZonoOp::Sample { file, coeffs, uniform, seed, retry_limit } => {
            let z = load(&file)?;
            let m = z.generators().len();
            let c = match (coeffs, uniform) {
                (Some(p), _) => io::read_rationals(&p)?,
                (None, true) => vec![Rational::new(1, 2); m],
                (None, false) => bail!("give --coeffs FILE or --uniform"),
            };
            let r = geometry::randomized_round(&z, &c, seed, retry_limit)?;
            let show = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
            println!("target {}", show(&r.target));
            println!("point {}", list(&r.point));
            println!("deviations {}", show(&r.deviations));
            println!("attempts {}", r.attempts);
        }
        ZonoOp::Area { file } => println!("{}", geometry::zonogon_area(&load(&file)?)?),
        ZonoOp::Count { file } => println!("{}", geometry::lattice_points_in_zonogon(&load(&file)?, cap)?),
    }
    Ok(())
}

fn nonavg_cmd(op: NonavgOp, cap: u64) -> Result<ExitCode> {
    let exact_note = |exact: bool| if exact { "exact" } else { "lower bound (budget exhausted)" };
    match op {
        NonavgOp::Check { file } => {
            let v = io::read_set(&file)?;
            let c = nonavg::is_non_averaging(&v, cap)?;
            match c.witness {
                None => println!("non-averaging"),
                Some((a, s)) => {
                    println!("averaging: {a} is the mean of {}", list(&s));
                    return Ok(ExitCode::FAILURE);
                }
            }
        }
        NonavgOp::H { n, budget } => {
            let t0 = Instant::now();
            let r = nonavg::h_exact(n, budget)?;
            println!("h({n}) = {} [{}]", r.size, exact_note(r.exact));
            println!("witness {}", list(&r.witness));
            log::info!("{} nodes in {:?}", r.nodes, t0.elapsed());
        }
        NonavgOp::Hpair { n, budget } | NonavgOp::Htilde { n, budget } => {
            let tilde = matches!(op, NonavgOp::Htilde { .. });
            let r = if tilde {
                nonavg::h_tilde_exact(n, budget)?
            } else {
                nonavg::big_h_exact(n, budget)?
            };
            let label = if tilde { "H~" } else { "H" };
            println!("{label}({n}) = {} [{}]", r.size, exact_note(r.exact));
            println!("A {}", list(&r.witness.0));
            println!("B {}", list(&r.witness.1));
        }
        NonavgOp::Bosznay { q } => println!("{}", list(&nonavg::bosznay(q)?)),
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
