//! Command-line front end. `run` returns the process exit code: 0 when every
//! check passes, 2 when a check fails, 1 on usage or I/O errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::dual_arbor::{
    check_all, pipeline_arborescences, LemmaReport, WeightedArborescence, TOLERANCE,
};
use crate::error::{Error, Result};
use crate::fixtures::FixtureName;
use crate::harness::{
    render_svg, run_pipeline_artifacts, sweep, write_csv, ExperimentConfig, Mode, Source, Stage,
    SweepRow,
};
use crate::partition::{partition_all, PartitionOptions, Role};
use crate::tsp::{
    exact_optimum, generate_instance, instance_to_json, read_instance, read_tour, tour_length,
    Family, Instance, Tour, DEFAULT_EXACT_LIMIT,
};
use crate::two_opt::{run_two_opt, Policy, RunStats};
use crate::uncross::{subdivide_pair, PairDoc};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "twoopt-lab", version, about = "Euclidean TSP 2-Opt laboratory")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate an instance and print or write its JSON.
    Gen {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value = "uniform-box")]
        family: Family,
        #[arg(long, default_value_t = 100)]
        scale: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact optimum by Held–Karp.
    Solve {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
        limit: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run 2-Opt from the given tour or from seeded starts.
    Twoopt {
        #[arg(long)]
        instance: PathBuf,
        /// Start tour; without it, start 0 is index order and the rest are random.
        #[arg(long)]
        tour: Option<PathBuf>,
        #[arg(long, default_value = "first")]
        policy: Policy,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        starts: usize,
        #[arg(long, default_value_t = 1_000_000)]
        max_iters: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Subdivide both tours at their crossings.
    Uncross {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Partition the edges of S against T (after subdividing if needed).
    Partition {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        anchors: AnchorArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dual arborescences of the four chord sets.
    Arbor {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        anchors: AnchorArgs,
        /// Emit only this set's arborescence, in the format `verify --arbor` reads.
        #[arg(long)]
        role: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every lemma check on an arborescence file or on a tour pair.
    Verify {
        #[arg(long, conflicts_with_all = ["pair", "instance"])]
        arbor: Option<PathBuf>,
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        anchors: AnchorArgs,
        #[arg(long, default_value_t = TOLERANCE)]
        tolerance: f64,
        /// Write the reports as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// End to end: report JSON and CSV plus three SVG pictures.
    Pipeline {
        #[arg(long, conflicts_with = "instance")]
        fixture: Option<FixtureName>,
        #[arg(long)]
        instance: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Defaults to assumed-opt for fixtures and exact-opt otherwise.
        #[arg(long)]
        mode: Option<Mode>,
        /// Tour taken as optimal in assumed-opt mode.
        #[arg(long)]
        tour: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pipeline over a seed range, one CSV row per seed.
    Sweep {
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// `a..b` (inclusive), `a..=b` or a single seed.
        #[arg(long, default_value = "1..100")]
        seeds: String,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct PairArgs {
    /// Instance and both tours in one JSON document.
    #[arg(long, conflicts_with_all = ["instance", "t", "s"])]
    pair: Option<PathBuf>,
    #[arg(long, requires_all = ["t", "s"])]
    instance: Option<PathBuf>,
    #[arg(long)]
    t: Option<PathBuf>,
    #[arg(long)]
    s: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AnchorArgs {
    /// Interior anchor edge as `a,b`.
    #[arg(long)]
    interior_anchor: Option<String>,
    /// Exterior anchor edge as `a,b`.
    #[arg(long)]
    exterior_anchor: Option<String>,
    #[arg(long)]
    swap_sides: bool,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long, default_value = "uniform-box")]
    family: Family,
    #[arg(long, default_value_t = 100)]
    scale: i64,
    #[arg(long, default_value = "first")]
    policy: Policy,
    #[arg(long, default_value_t = 1)]
    starts: usize,
    #[arg(long, default_value_t = DEFAULT_EXACT_LIMIT)]
    limit: usize,
    #[arg(long, default_value_t = TOLERANCE)]
    tolerance: f64,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let started = Instant::now();
    let code = match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    };
    eprintln!("runtime: {:.3}s", started.elapsed().as_secs_f64());
    code
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn parse_edge(s: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidTour(format!("expected an edge `a,b`, got `{s}`"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

/// Seed ranges: `a..b` and `a..=b` both include `b`.
pub fn parse_seeds(s: &str) -> Result<Vec<u64>> {
    let bad = || Error::InvalidInstance(format!("bad seed range `{s}`"));
    let num = |x: &str| x.trim().parse::<u64>().map_err(|_| bad());
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let x = num(s)?;
            (x, x)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo..=hi).collect())
}

impl PairArgs {
    fn load(&self) -> Result<(Instance, Tour, Tour)> {
        if let Some(path) = &self.pair {
            let doc: PairDoc = serde_json::from_str(&fs::read_to_string(path)?)?;
            return doc.to_pair();
        }
        match (&self.instance, &self.t, &self.s) {
            (Some(i), Some(t), Some(s)) => {
                let inst = read_instance(i)?;
                let n = inst.len();
                Ok((inst, read_tour(t, n)?, read_tour(s, n)?))
            }
            _ => Err(Error::InvalidInstance(
                "give --pair or --instance, --t and --s".into(),
            )),
        }
    }
}

impl AnchorArgs {
    fn options(&self) -> Result<PartitionOptions> {
        Ok(PartitionOptions {
            interior_anchor: self
                .interior_anchor
                .as_deref()
                .map(parse_edge)
                .transpose()?,
            exterior_anchor: self
                .exterior_anchor
                .as_deref()
                .map(parse_edge)
                .transpose()?,
            swap_sides: self.swap_sides,
        })
    }
}

impl RunArgs {
    fn apply(&self, cfg: &mut ExperimentConfig) {
        cfg.policy = self.policy;
        cfg.starts = self.starts;
        cfg.exact_limit = self.limit;
        cfg.tolerance = self.tolerance;
    }
}

fn parse_role(s: &str) -> Result<Role> {
    Role::ALL
        .into_iter()
        .find(|r| r.to_string() == s)
        .ok_or_else(|| Error::InvalidInstance(format!("unknown role `{s}`")))
}

fn print_reports(label: &str, reports: &[LemmaReport]) -> bool {
    let mut ok = true;
    for r in reports {
        ok &= r.holds;
        let verdict = if r.holds { "PASS" } else { "FAIL" };
        let slack = r
            .worst_slack
            .map_or("-".to_string(), |s| format!("{s:.6e}"));
        let witness = r
            .witness
            .as_ref()
            .map_or(String::new(), |w| format!(" witness={w:?}"));
        println!(
            "{label}{verdict} {} checked={} worst_slack={slack}{witness}",
            r.condition, r.checked
        );
    }
    ok
}

#[derive(serde::Serialize)]
struct TwoOptOutput {
    tour: Vec<usize>,
    length: f64,
    chosen: usize,
    runs: Vec<RunStats>,
}

fn execute(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Gen {
            seed,
            n,
            family,
            scale,
            out,
        } => {
            let inst = generate_instance(seed, n, family, scale)?;
            emit(out.as_deref(), &(instance_to_json(&inst)? + "\n"))?;
            Ok(EXIT_OK)
        }
        Command::Solve {
            instance,
            limit,
            out,
        } => {
            let inst = read_instance(&instance)?;
            let t = exact_optimum(&inst, limit)?;
            eprintln!("length: {}", tour_length(&inst, &t));
            emit(out.as_deref(), &(serde_json::to_string(t.order())? + "\n"))?;
            Ok(EXIT_OK)
        }
        Command::Twoopt {
            instance,
            tour,
            policy,
            seed,
            starts,
            max_iters,
            out,
        } => {
            let inst = read_instance(&instance)?;
            let n = inst.len();
            let starts: Vec<Tour> = match tour {
                Some(path) => vec![read_tour(path, n)?],
                None => (0..starts.max(1))
                    .map(|i| crate::harness::start_tour(n, seed, i))
                    .collect::<Result<_>>()?,
            };
            let mut best: Option<(Tour, f64, usize)> = None;
            let mut runs = Vec::new();
            for (i, start) in starts.iter().enumerate() {
                let (t, stats) = run_two_opt(&inst, start, policy, max_iters)?;
                if best.as_ref().is_none_or(|b| stats.final_length < b.1) {
                    best = Some((t, stats.final_length, i));
                }
                runs.push(stats);
            }
            let (t, length, chosen) = best.expect("at least one start");
            let converged = runs.iter().all(RunStats::converged);
            let doc = TwoOptOutput {
                tour: t.order().to_vec(),
                length,
                chosen,
                runs,
            };
            emit(
                out.as_deref(),
                &(serde_json::to_string_pretty(&doc)? + "\n"),
            )?;
            Ok(if converged {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Uncross { pair, out } => {
            let (inst, t, s) = pair.load()?;
            let sub = subdivide_pair(&inst, &t, &s)?;
            eprintln!("crossings: {}", sub.report.count());
            emit(out.as_deref(), &(sub.to_json()? + "\n"))?;
            Ok(EXIT_OK)
        }
        Command::Partition { pair, anchors, out } => {
            let (inst, t, s) = pair.load()?;
            let sub = subdivide_pair(&inst, &t, &s)?;
            let p = partition_all(&sub.instance, &sub.t, &sub.s, &anchors.options()?)?;
            eprintln!("sizes: {:?}", p.sizes());
            emit(
                out.as_deref(),
                &(serde_json::to_string_pretty(&p.to_doc(&sub.s))? + "\n"),
            )?;
            Ok(EXIT_OK)
        }
        Command::Arbor {
            pair,
            anchors,
            role,
            out,
        } => {
            let (inst, t, s) = pair.load()?;
            let sub = subdivide_pair(&inst, &t, &s)?;
            let p = partition_all(&sub.instance, &sub.t, &sub.s, &anchors.options()?)?;
            let arbs = pipeline_arborescences(&sub.instance, &sub.t, &p)?;
            let text = match role.as_deref().map(parse_role).transpose()? {
                Some(r) => {
                    let sa = arbs.iter().find(|a| a.role == r).ok_or_else(|| {
                        Error::InvalidArborescence(format!("{r} has fewer than two edges"))
                    })?;
                    sa.arborescence.to_json()?
                }
                None => {
                    let map: BTreeMap<String, &WeightedArborescence> = arbs
                        .iter()
                        .map(|a| (a.role.to_string(), &a.arborescence))
                        .collect();
                    serde_json::to_string_pretty(&map)?
                }
            };
            emit(out.as_deref(), &(text + "\n"))?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            arbor,
            pair,
            anchors,
            tolerance,
            out,
        } => {
            let mut all: BTreeMap<String, Vec<LemmaReport>> = BTreeMap::new();
            if let Some(path) = arbor {
                let a = WeightedArborescence::read(path)?;
                all.insert("arborescence".into(), check_all(&a, tolerance));
            } else {
                let (inst, t, s) = pair.load()?;
                let sub = subdivide_pair(&inst, &t, &s)?;
                let p = partition_all(&sub.instance, &sub.t, &sub.s, &anchors.options()?)?;
                for sa in pipeline_arborescences(&sub.instance, &sub.t, &p)? {
                    all.insert(sa.role.to_string(), check_all(&sa.arborescence, tolerance));
                }
            }
            let mut ok = true;
            for (label, reports) in &all {
                ok &= print_reports(&format!("{label}: "), reports);
            }
            if let Some(path) = out {
                fs::write(path, serde_json::to_string_pretty(&all)? + "\n")?;
            }
            Ok(if ok { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Pipeline {
            fixture,
            instance,
            run,
            seed,
            n,
            mode,
            tour,
            out,
        } => {
            let mut cfg = match (fixture, instance) {
                (Some(name), _) => ExperimentConfig::fixture(name),
                (None, Some(path)) => ExperimentConfig {
                    source: Source::File(path),
                    ..Default::default()
                },
                (None, None) => ExperimentConfig {
                    source: Source::Generated {
                        family: run.family,
                        scale: run.scale,
                    },
                    ..ExperimentConfig::generated(seed, n)
                },
            };
            cfg.seed = seed;
            run.apply(&mut cfg);
            if let Some(m) = mode {
                cfg.mode = m;
            }
            cfg.tour = tour;
            let art = run_pipeline_artifacts(&cfg)?;
            let report = &art.report;
            let json = report.to_json()? + "\n";
            match out {
                Some(dir) => {
                    fs::create_dir_all(&dir)?;
                    fs::write(dir.join("report.json"), &json)?;
                    let row = SweepRow::from_report(report, report.ratio);
                    write_csv(fs::File::create(dir.join("report.csv"))?, &[row])?;
                    for (stage, name) in [
                        (Stage::Tours, "tours.svg"),
                        (Stage::Partition, "partition.svg"),
                        (Stage::Arborescence, "arborescence.svg"),
                    ] {
                        fs::write(dir.join(name), render_svg(stage, &art))?;
                    }
                }
                None => emit(None, &json)?,
            }
            for f in &report.failures {
                eprintln!("failed: {f}");
            }
            Ok(if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
        Command::Sweep { n, seeds, run, out } => {
            let seeds = parse_seeds(&seeds)?;
            let mut cfg = ExperimentConfig {
                source: Source::Generated {
                    family: run.family,
                    scale: run.scale,
                },
                ..ExperimentConfig::generated(0, n)
            };
            run.apply(&mut cfg);
            let (reports, rows) = sweep(&cfg, seeds)?;
            match out {
                Some(dir) => {
                    fs::create_dir_all(&dir)?;
                    write_csv(fs::File::create(dir.join("sweep.csv"))?, &rows)?;
                }
                None => write_csv(std::io::stdout().lock(), &rows)?,
            }
            let failed = reports.iter().filter(|r| !r.all_passed()).count();
            if let Some(max) = rows.last() {
                eprintln!(
                    "runs: {}, failed: {failed}, max ratio: {:.6}",
                    rows.len(),
                    max.max_ratio
                );
            }
            Ok(if failed == 0 {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
    }
}
