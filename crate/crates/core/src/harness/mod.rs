//! Seeded end-to-end runs: instance, optimal tour, 2-optimal tour,
//! subdivision, partition, arborescences and every check, collected in one
//! deterministic report.

mod svg;
mod sweep;

pub use svg::{render_svg, Stage};
pub use sweep::{sweep, write_csv, SweepRow, CSV_HEADER_COMMENT};

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::dual_arbor::{
    bound_certificate, check_all, pipeline_arborescences, Certificate, LemmaReport, SetArborescence,
};
use crate::error::{Error, Result};
use crate::fixtures::FixtureName;
use crate::partition::{partition_all, EdgePartition, PartitionOptions, Role};
use crate::tsp::{
    exact_optimum, generate_instance, read_instance, read_tour, tour_length, Family, Instance,
    Tour, DEFAULT_EXACT_LIMIT,
};
use crate::two_opt::{is_simple, is_two_optimal, random_tour, run_two_opt, Policy};
use crate::uncross::{is_crossing_free, subdivide_pair, SubdividedPair};

/// Relative tolerance for length bookkeeping.
pub const LENGTH_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// T is computed by Held–Karp.
    ExactOpt,
    /// T is supplied and taken as given.
    AssumedOpt,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::ExactOpt => "exact-opt",
            Mode::AssumedOpt => "assumed-opt",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact-opt" | "exact" => Ok(Mode::ExactOpt),
            "assumed-opt" | "assumed" => Ok(Mode::AssumedOpt),
            other => Err(Error::InvalidInstance(format!("unknown mode `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Source {
    Generated {
        family: Family,
        scale: i64,
    },
    /// A bundled instance; both of its tours are used as T and S.
    Fixture(FixtureName),
    File(PathBuf),
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub seed: u64,
    pub n: usize,
    pub source: Source,
    pub policy: Policy,
    /// Number of 2-Opt starts; the longest resulting tour is analysed.
    pub starts: usize,
    pub mode: Mode,
    /// T for [`Mode::AssumedOpt`] on generated or file instances.
    pub tour: Option<PathBuf>,
    pub exact_limit: usize,
    pub max_iters: usize,
    pub tolerance: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 1,
            n: 10,
            source: Source::Generated {
                family: Family::UniformBox,
                scale: 100,
            },
            policy: Policy::FirstImprovement,
            starts: 1,
            mode: Mode::ExactOpt,
            tour: None,
            exact_limit: DEFAULT_EXACT_LIMIT,
            max_iters: 1_000_000,
            tolerance: crate::dual_arbor::TOLERANCE,
        }
    }
}

impl ExperimentConfig {
    pub fn fixture(name: FixtureName) -> Self {
        ExperimentConfig {
            source: Source::Fixture(name),
            mode: Mode::AssumedOpt,
            ..Default::default()
        }
    }

    pub fn generated(seed: u64, n: usize) -> Self {
        ExperimentConfig {
            seed,
            n,
            ..Default::default()
        }
    }
}

/// Starting tour `i` of a run: index order first, then seeded permutations.
pub fn start_tour(n: usize, seed: u64, i: usize) -> Result<Tour> {
    if i == 0 {
        Tour::identity(n)
    } else {
        random_tour(
            n,
            seed.wrapping_mul(0x9E37_79B9_7F4A_7C15)
                .wrapping_add(i as u64),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoOptSummary {
    pub starts: usize,
    pub iterations: Vec<usize>,
    pub all_converged: bool,
    /// Index of the start whose result is analysed.
    pub chosen: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArborescenceSummary {
    pub role: Role,
    pub vertices: usize,
    pub edges: usize,
    pub root_out_degree: usize,
    pub height: usize,
    pub c_total: f64,
    pub w_total: f64,
    pub k: f64,
    /// `|sum w + root T-length - c(T)| / c(T)`.
    pub conservation_error: f64,
    pub lemmas: Vec<LemmaReport>,
    pub certificate: Option<Certificate>,
    pub certificate_error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    pub instance_id: String,
    pub mode: Mode,
    pub policy: Policy,
    pub seed: u64,
    pub n: usize,
    pub n_prime: usize,
    pub length_t: f64,
    pub length_s: f64,
    pub ratio: f64,
    pub two_opt: Option<TwoOptSummary>,
    pub t_simple: bool,
    pub s_simple: bool,
    pub s_two_optimal: bool,
    pub crossings: usize,
    /// Crossing points as exact rationals, `[x, y]`.
    pub crossing_points: Vec<[String; 2]>,
    pub crossing_free_after: bool,
    pub subdivided_s_two_optimal: bool,
    pub lengths_preserved: bool,
    pub anchor1: Option<(usize, usize)>,
    pub anchor2: Option<(usize, usize)>,
    /// `(|S1'|, |S1''|, |S2'|, |S2''|, |S3|)`.
    pub partition_sizes: [usize; 5],
    pub partition_costs: [f64; 5],
    pub five_set_sum: f64,
    pub five_set_holds: bool,
    pub s3_bound_holds: bool,
    pub arborescences: Vec<ArborescenceSummary>,
    /// Names of failed checks; empty when everything passed.
    pub failures: Vec<String>,
    #[serde(skip)]
    pub runtime: Duration,
}

impl PipelineReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn max_k(&self) -> Option<f64> {
        self.arborescences.iter().map(|a| a.k).reduce(f64::max)
    }
}

/// Everything produced along the way, for rendering.
#[derive(Clone, Debug)]
pub struct PipelineArtifacts {
    pub instance: Instance,
    pub t: Tour,
    pub s: Tour,
    pub subdivided: SubdividedPair,
    pub partition: EdgePartition,
    pub arborescences: Vec<SetArborescence>,
    pub report: PipelineReport,
}

struct Resolved {
    instance: Instance,
    t: Tour,
    s: Option<Tour>,
    partition: PartitionOptions,
}

fn resolve(cfg: &ExperimentConfig) -> Result<Resolved> {
    let mut partition = PartitionOptions::default();
    let (instance, fixed_t, s) = match &cfg.source {
        Source::Fixture(name) => {
            let f = name.load();
            partition.interior_anchor = f.interior_anchor;
            (f.instance, Some(f.t), Some(f.s))
        }
        Source::Generated { family, scale } => (
            generate_instance(cfg.seed, cfg.n, *family, *scale)?,
            None,
            None,
        ),
        Source::File(path) => (read_instance(path)?, None, None),
    };
    let t = match cfg.mode {
        Mode::ExactOpt => {
            exact_optimum(&instance, cfg.exact_limit).map_err(Error::at("optimum"))?
        }
        Mode::AssumedOpt => match (&cfg.tour, fixed_t) {
            (Some(path), _) => read_tour(path, instance.len()).map_err(Error::at("optimum"))?,
            (None, Some(t)) => t,
            (None, None) => {
                return Err(Error::at("optimum")(Error::InvalidTour(
                    "assumed-opt mode needs a tour file".into(),
                )))
            }
        },
    };
    Ok(Resolved {
        instance,
        t,
        s,
        partition,
    })
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

pub fn run_pipeline(cfg: &ExperimentConfig) -> Result<PipelineReport> {
    run_pipeline_artifacts(cfg).map(|a| a.report)
}

pub fn run_pipeline_artifacts(cfg: &ExperimentConfig) -> Result<PipelineArtifacts> {
    let started = Instant::now();
    let Resolved {
        instance,
        t,
        s,
        partition: popts,
    } = resolve(cfg)?;
    let n = instance.len();

    let (s, two_opt) = match s {
        Some(s) => (s, None),
        None => {
            let mut best: Option<(Tour, f64, usize)> = None;
            let mut iterations = Vec::new();
            let mut all_converged = true;
            for i in 0..cfg.starts.max(1) {
                let start = start_tour(n, cfg.seed, i)?;
                let (tour, stats) = run_two_opt(&instance, &start, cfg.policy, cfg.max_iters)
                    .map_err(Error::at("two-opt"))?;
                iterations.push(stats.iterations);
                all_converged &= stats.converged();
                if best.as_ref().is_none_or(|b| stats.final_length > b.1) {
                    best = Some((tour, stats.final_length, i));
                }
            }
            let (tour, _, chosen) = best.expect("at least one start");
            let summary = TwoOptSummary {
                starts: cfg.starts.max(1),
                iterations,
                all_converged,
                chosen,
            };
            (tour, Some(summary))
        }
    };

    let mut failures = Vec::new();
    let length_t = tour_length(&instance, &t);
    let length_s = tour_length(&instance, &s);
    let ratio = length_s / length_t;
    if cfg.mode == Mode::ExactOpt && ratio < 1.0 - LENGTH_TOLERANCE {
        failures.push("ratio-below-one".to_string());
    }
    if two_opt.as_ref().is_some_and(|s| !s.all_converged) {
        failures.push("two-opt-budget".to_string());
    }
    let t_simple = is_simple(&instance, &t);
    let s_simple = is_simple(&instance, &s);
    let s_two_optimal = is_two_optimal(&instance, &s).0;
    for (ok, name) in [
        (t_simple, "t-simple"),
        (s_simple, "s-simple"),
        (s_two_optimal, "s-two-optimal"),
    ] {
        if !ok {
            failures.push(name.to_string());
        }
    }

    let sub = subdivide_pair(&instance, &t, &s).map_err(Error::at("uncross"))?;
    let crossing_free_after = is_crossing_free(&sub.instance, &sub.t, &sub.s);
    let subdivided_s_two_optimal = is_two_optimal(&sub.instance, &sub.s).0;
    let lengths_preserved = rel_close(
        tour_length(&sub.instance, &sub.t),
        length_t,
        LENGTH_TOLERANCE,
    ) && rel_close(
        tour_length(&sub.instance, &sub.s),
        length_s,
        LENGTH_TOLERANCE,
    );
    for (ok, name) in [
        (crossing_free_after, "crossing-free"),
        (subdivided_s_two_optimal, "subdivided-s-two-optimal"),
        (lengths_preserved, "lengths-preserved"),
    ] {
        if !ok {
            failures.push(name.to_string());
        }
    }

    let partition =
        partition_all(&sub.instance, &sub.t, &sub.s, &popts).map_err(Error::at("partition"))?;
    let partition_costs = partition.costs(&sub.instance);
    let five_set_sum: f64 = partition_costs.iter().sum();
    let five_set_holds = rel_close(five_set_sum, length_s, LENGTH_TOLERANCE);
    let s3_bound_holds = partition_costs[4] <= length_t + LENGTH_TOLERANCE;
    if !five_set_holds {
        failures.push("five-set-sum".to_string());
    }
    if !s3_bound_holds {
        failures.push("s3-bound".to_string());
    }

    let arbs = pipeline_arborescences(&sub.instance, &sub.t, &partition)
        .map_err(Error::at("arborescence"))?;
    let mut summaries = Vec::with_capacity(arbs.len());
    for sa in &arbs {
        let a = &sa.arborescence;
        let lemmas = check_all(a, cfg.tolerance);
        for r in lemmas.iter().filter(|r| !r.holds) {
            failures.push(format!("{}:{}", sa.role, r.condition));
        }
        let conservation_error = ((a.w_total() + sa.root_t_length) - length_t).abs() / length_t;
        if conservation_error > LENGTH_TOLERANCE {
            failures.push(format!("{}:conservation", sa.role));
        }
        let (certificate, certificate_error) = match bound_certificate(a, cfg.tolerance) {
            Ok(c) => {
                if !c.holds() {
                    failures.push(format!("{}:certificate", sa.role));
                }
                (Some(c), None)
            }
            Err(e) => {
                if matches!(e, Error::CoverGap(_)) {
                    failures.push(format!("{}:cover", sa.role));
                }
                (None, Some(e.to_string()))
            }
        };
        summaries.push(ArborescenceSummary {
            role: sa.role,
            vertices: a.vertex_count(),
            edges: a.len(),
            root_out_degree: a.out_edges(a.root()).len(),
            height: a.height(),
            c_total: a.c_total(),
            w_total: a.w_total(),
            k: a.c_total() / a.w_total(),
            conservation_error,
            lemmas,
            certificate,
            certificate_error,
        });
    }

    let report = PipelineReport {
        instance_id: instance.id().to_string(),
        mode: cfg.mode,
        policy: cfg.policy,
        seed: cfg.seed,
        n,
        n_prime: sub.n_prime,
        length_t,
        length_s,
        ratio,
        two_opt,
        t_simple,
        s_simple,
        s_two_optimal,
        crossings: sub.report.count(),
        crossing_points: sub
            .report
            .points()
            .map(|p| [p.x.to_string(), p.y.to_string()])
            .collect(),
        crossing_free_after,
        subdivided_s_two_optimal,
        lengths_preserved,
        anchor1: partition.anchor1.as_ref().map(|a| a.edge),
        anchor2: partition.anchor2.as_ref().map(|a| a.edge),
        partition_sizes: partition.sizes(),
        partition_costs,
        five_set_sum,
        five_set_holds,
        s3_bound_holds,
        arborescences: summaries,
        failures,
        runtime: started.elapsed(),
    };
    Ok(PipelineArtifacts {
        instance,
        t,
        s,
        subdivided: sub,
        partition,
        arborescences: arbs,
        report,
    })
}
