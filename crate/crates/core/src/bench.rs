//! Experiment harness: times every algorithm on generated instances, checks
//! that all of them agree, and aggregates per-size statistics.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::oracle::oracle_shortest_path;
use crate::polygen::{generate_instance, write_polygon, TestInstance};
use crate::triangulate::triangulate_ear_clipping;
use crate::{metered_run, Algorithm, Error, PathQuery, Point};

/// Two paths agree when they have the same length and every vertex matches
/// within this distance per coordinate.
pub const PATH_TOLERANCE: f64 = 1e-9;

/// Processor time a query may spend across its repeats before the repeat
/// count drops toward the minimum.
const REPEAT_BUDGET_SECONDS: f64 = 0.01;
/// Untimed work before the first measurement, so clock ramp-up and cold
/// caches do not inflate the smallest sizes.
const WARMUP_SECONDS: f64 = 0.3;
/// Timed back-to-back runs of one query per round. Each burst starts with an
/// untimed run, which pays for caches left cold by other queries.
const BURST: usize = 5;

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub polygons_per_size: usize,
    /// Query pairs per size, spread over the polygons of that size.
    pub max_pairs: usize,
    pub repeats_min: usize,
    pub repeats_max: usize,
    pub seed: u64,
    /// Largest size cross-checked against the oracle.
    pub oracle_max_n: usize,
    /// Largest size on which the cubic algorithm is run.
    pub delaunay_max_n: usize,
    pub algorithms: Vec<Algorithm>,
    /// Where reproduction bundles go on disagreement.
    pub repro_dir: PathBuf,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            sizes: vec![16, 32, 64, 128, 256, 512],
            polygons_per_size: 5,
            max_pairs: 200,
            repeats_min: 5,
            repeats_max: 20,
            seed: 42,
            oracle_max_n: 64,
            delaunay_max_n: 128,
            algorithms: Algorithm::ALL.to_vec(),
            repro_dir: PathBuf::from("results"),
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), Error> {
        let bad = |m: &str| Err(Error::Precondition(m.to_string()));
        if self.sizes.is_empty() || self.sizes.iter().any(|&n| n < 3) {
            return bad("sizes must be a non-empty list of values >= 3");
        }
        if self.polygons_per_size == 0 || self.max_pairs == 0 {
            return bad("polygons per size and pair cap must be positive");
        }
        if self.repeats_min == 0 || self.repeats_min > self.repeats_max {
            return bad("repeat range must satisfy 1 <= min <= max");
        }
        if self.algorithms.is_empty() {
            return bad("no algorithms selected");
        }
        Ok(())
    }

    fn runs(&self, alg: Algorithm, n: usize) -> bool {
        self.algorithms.contains(&alg) && (alg != Algorithm::Delaunay || n <= self.delaunay_max_n)
    }
}

/// One (polygon, pair, algorithm) measurement.
#[derive(Clone, Debug, PartialEq)]
pub struct PairRecord {
    pub n: usize,
    pub polygon_seed: u64,
    pub pair: usize,
    pub algorithm: Algorithm,
    /// Median processor time over the repeats.
    pub time_seconds: f64,
    pub workspace_words: usize,
    pub repeats: usize,
    pub path_vertices: usize,
    pub s: Point,
    pub t: Point,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Statistic {
    Median,
    Max,
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Statistic::Median => "median",
            Statistic::Max => "max",
        })
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "median" => Ok(Statistic::Median),
            "max" => Ok(Statistic::Max),
            _ => Err(Error::Parse(format!("unknown statistic {s:?}"))),
        }
    }
}

/// Per-size summary over all pairs of one algorithm.
#[derive(Clone, Debug, PartialEq)]
pub struct AggregateRow {
    pub n: usize,
    pub algorithm: Algorithm,
    pub statistic: Statistic,
    pub time_seconds: f64,
    pub workspace_words: usize,
}

#[derive(Clone, Debug, Default)]
pub struct BenchReport {
    pub details: Vec<PairRecord>,
    pub aggregate: Vec<AggregateRow>,
}

/// Lower median, so integer inputs stay integers.
fn lower_median<T: Copy + PartialOrd>(values: &mut [T]) -> T {
    values.sort_by(|a, b| a.partial_cmp(b).expect("no NaN"));
    values[(values.len() - 1) / 2]
}

pub fn paths_agree(a: &[Point], b: &[Point]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(p, q)| {
            (p.x - q.x).abs() <= PATH_TOLERANCE && (p.y - q.y).abs() <= PATH_TOLERANCE
        })
}

/// Query pairs for one polygon: all unordered pairs of its sample points,
/// shuffled deterministically, at most `cap` of them.
fn sample_pairs(points: &[Point], cap: usize, seed: u64) -> Vec<PathQuery> {
    let mut pairs: Vec<(usize, usize)> = (0..points.len())
        .flat_map(|i| (i + 1..points.len()).map(move |j| (i, j)))
        .collect();
    pairs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    pairs.truncate(cap);
    pairs
        .into_iter()
        .map(|(i, j)| PathQuery::new(points[i], points[j]))
        .collect()
}

/// Everything the harness knows about one query, written out so the case can
/// be replayed.
fn write_bundle(
    dir: &Path,
    inst: &TestInstance,
    pair: usize,
    q: PathQuery,
    outputs: &[(String, Result<Vec<Point>, String>)],
) -> Result<PathBuf, Error> {
    let bundle = dir.join(format!(
        "repro_n{}_s{}_pair{pair}",
        inst.polygon.len(),
        inst.seed
    ));
    write_polygon(&bundle, &inst.polygon, inst.seed)?;
    std::fs::write(
        bundle.join("query.txt"),
        format!("{} {}\n{} {}\n", q.s.x, q.s.y, q.t.x, q.t.y),
    )?;
    let mut text = String::new();
    for (name, out) in outputs {
        match out {
            Ok(path) => {
                let pts: Vec<String> = path.iter().map(|p| format!("{} {}", p.x, p.y)).collect();
                text.push_str(&format!("{name}: {}\n", pts.join(", ")));
            }
            Err(e) => text.push_str(&format!("{name}: error: {e}\n")),
        }
    }
    std::fs::write(bundle.join("outputs.txt"), text)?;
    Ok(bundle)
}

/// One (query, algorithm) cell of the benchmark and its timings so far.
struct Job {
    instance: usize,
    record: PairRecord,
    times: Vec<f64>,
}

/// Repeat count for a query whose first run took `t1` seconds.
fn repeats_for(cfg: &BenchConfig, t1: f64) -> usize {
    let r = if t1 > 0.0 {
        (REPEAT_BUDGET_SECONDS / t1) as usize
    } else {
        cfg.repeats_max
    };
    r.clamp(cfg.repeats_min, cfg.repeats_max)
}

fn warm_up(cfg: &BenchConfig) -> Result<(), Error> {
    let inst = generate_instance(64, cfg.seed)?;
    let tr = triangulate_ear_clipping(&inst.polygon)?;
    let pairs = sample_pairs(&inst.points, 8, cfg.seed);
    let start = crate::workspace::process_cpu_time();
    while (crate::workspace::process_cpu_time() - start).as_secs_f64() < WARMUP_SECONDS {
        for &q in &pairs {
            for alg in cfg.algorithms.iter().copied().filter(|&a| cfg.runs(a, 64)) {
                metered_run(alg, &inst.polygon, Some(&tr), q)?;
            }
        }
    }
    Ok(())
}

/// Runs every configured algorithm on every sampled pair. `progress` is
/// called once per size before its instances are generated.
///
/// A first pass runs each query once, cross-checks the outputs and picks the
/// repeat count. The timed repeats are then taken in short bursts, in rounds
/// that sweep all sizes, so slow stretches of machine time spread over every
/// n instead of biasing a few.
pub fn run_benchmark(
    cfg: &BenchConfig,
    mut progress: impl FnMut(usize),
) -> Result<BenchReport, Error> {
    cfg.validate()?;
    warm_up(cfg)?;
    let mut instances = Vec::new();
    let mut jobs = Vec::new();
    for &n in &cfg.sizes {
        progress(n);
        let per_polygon = cfg.max_pairs.div_ceil(cfg.polygons_per_size);
        let mut budget = cfg.max_pairs;
        for k in 0..cfg.polygons_per_size as u64 {
            let inst = generate_instance(n, cfg.seed + k)?;
            let tr = triangulate_ear_clipping(&inst.polygon)?;
            let pairs = sample_pairs(
                &inst.points,
                per_polygon.min(budget),
                inst.seed ^ (n as u64),
            );
            budget -= pairs.len();
            for (pair, &q) in pairs.iter().enumerate() {
                let mut outputs: Vec<(String, Result<Vec<Point>, String>)> = Vec::new();
                for alg in Algorithm::ALL.into_iter().filter(|&a| cfg.runs(a, n)) {
                    match metered_run(alg, &inst.polygon, Some(&tr), q) {
                        Ok(run) => {
                            let t1 = run.cpu_time.as_secs_f64();
                            jobs.push(Job {
                                instance: instances.len(),
                                record: PairRecord {
                                    n,
                                    polygon_seed: inst.seed,
                                    pair,
                                    algorithm: alg,
                                    time_seconds: t1,
                                    workspace_words: run.peak_words,
                                    repeats: repeats_for(cfg, t1),
                                    path_vertices: run.path.len(),
                                    s: q.s,
                                    t: q.t,
                                },
                                times: Vec::new(),
                            });
                            outputs.push((alg.name().to_string(), Ok(run.path)));
                        }
                        Err(e) => outputs.push((alg.name().to_string(), Err(e.to_string()))),
                    }
                }
                if n <= cfg.oracle_max_n {
                    let reference =
                        oracle_shortest_path(&inst.polygon, q).map_err(|e| e.to_string());
                    outputs.push(("oracle".to_string(), reference));
                }
                let agree = match outputs.first() {
                    Some((_, Ok(first))) => outputs
                        .iter()
                        .all(|(_, o)| o.as_ref().is_ok_and(|p| paths_agree(first, p))),
                    _ => false,
                };
                if !agree {
                    return Err(Error::Disagreement(write_bundle(
                        &cfg.repro_dir,
                        &inst,
                        pair,
                        q,
                        &outputs,
                    )?));
                }
            }
            instances.push((inst, tr));
            if budget == 0 {
                break;
            }
        }
    }
    while jobs.iter().any(|j| j.times.len() < j.record.repeats) {
        for job in jobs.iter_mut() {
            let (inst, tr) = &instances[job.instance];
            let q = PathQuery::new(job.record.s, job.record.t);
            let burst = BURST.min(job.record.repeats - job.times.len());
            metered_run(job.record.algorithm, &inst.polygon, Some(tr), q)?;
            for _ in 0..burst {
                let run = metered_run(job.record.algorithm, &inst.polygon, Some(tr), q)?;
                job.times.push(run.cpu_time.as_secs_f64());
                job.record.workspace_words = job.record.workspace_words.max(run.peak_words);
            }
        }
    }
    let details: Vec<PairRecord> = jobs
        .into_iter()
        .map(|mut j| PairRecord {
            time_seconds: lower_median(&mut j.times),
            ..j.record
        })
        .collect();
    let aggregate = aggregate(&details);
    Ok(BenchReport { details, aggregate })
}

/// Median and max over pairs for every (n, algorithm).
pub fn aggregate(details: &[PairRecord]) -> Vec<AggregateRow> {
    let mut groups: BTreeMap<(usize, Algorithm), (Vec<f64>, Vec<usize>)> = BTreeMap::new();
    for r in details {
        let g = groups.entry((r.n, r.algorithm)).or_default();
        g.0.push(r.time_seconds);
        g.1.push(r.workspace_words);
    }
    let mut rows = Vec::new();
    for ((n, algorithm), (mut times, mut words)) in groups {
        let median = (lower_median(&mut times), lower_median(&mut words));
        let max = (times[times.len() - 1], words[words.len() - 1]);
        for (statistic, (time_seconds, workspace_words)) in
            [(Statistic::Median, median), (Statistic::Max, max)]
        {
            rows.push(AggregateRow {
                n,
                algorithm,
                statistic,
                time_seconds,
                workspace_words,
            });
        }
    }
    rows
}

pub const AGGREGATE_FILE: &str = "aggregate.csv";
pub const DETAIL_FILE: &str = "detail.csv";

/// Writes `aggregate.csv` and `detail.csv` into `dir`.
pub fn write_report(report: &BenchReport, dir: &Path) -> Result<(PathBuf, PathBuf), Error> {
    std::fs::create_dir_all(dir)?;
    let agg_path = dir.join(AGGREGATE_FILE);
    let mut w = csv::Writer::from_path(&agg_path).map_err(csv_error)?;
    w.write_record([
        "n",
        "algorithm",
        "statistic",
        "time_seconds",
        "workspace_words",
    ])
    .map_err(csv_error)?;
    for r in &report.aggregate {
        w.write_record([
            r.n.to_string(),
            r.algorithm.to_string(),
            r.statistic.to_string(),
            format!("{:e}", r.time_seconds),
            r.workspace_words.to_string(),
        ])
        .map_err(csv_error)?;
    }
    w.flush()?;

    let detail_path = dir.join(DETAIL_FILE);
    let mut w = csv::Writer::from_path(&detail_path).map_err(csv_error)?;
    w.write_record([
        "n",
        "polygon_seed",
        "pair",
        "algorithm",
        "time_seconds",
        "workspace_words",
        "repeats",
        "path_vertices",
        "s_x",
        "s_y",
        "t_x",
        "t_y",
    ])
    .map_err(csv_error)?;
    for r in &report.details {
        w.write_record([
            r.n.to_string(),
            r.polygon_seed.to_string(),
            r.pair.to_string(),
            r.algorithm.to_string(),
            format!("{:e}", r.time_seconds),
            r.workspace_words.to_string(),
            r.repeats.to_string(),
            r.path_vertices.to_string(),
            r.s.x.to_string(),
            r.s.y.to_string(),
            r.t.x.to_string(),
            r.t.y.to_string(),
        ])
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok((agg_path, detail_path))
}

fn csv_error(e: csv::Error) -> Error {
    Error::Parse(e.to_string())
}

pub fn read_aggregate(path: &Path) -> Result<Vec<AggregateRow>, Error> {
    let mut r = csv::Reader::from_path(path).map_err(csv_error)?;
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_error)?;
        if rec.len() != 5 {
            return Err(Error::Parse(format!(
                "expected 5 fields, got {}",
                rec.len()
            )));
        }
        let num = |i: usize| {
            rec[i]
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("{:?}: {e}", &rec[i])))
        };
        let int = |i: usize| {
            rec[i]
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("{:?}: {e}", &rec[i])))
        };
        rows.push(AggregateRow {
            n: int(0)?,
            algorithm: rec[1].parse()?,
            statistic: rec[2].parse()?,
            time_seconds: num(3)?,
            workspace_words: int(4)?,
        });
    }
    Ok(rows)
}

/// Least-squares line through `(ln x, ln y)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogLogFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual in log space.
    pub residual: f64,
}

impl LogLogFit {
    pub fn predict(&self, x: f64) -> f64 {
        (self.intercept + self.slope * x.ln()).exp()
    }
}

pub fn fit_log_log(points: &[(f64, f64)]) -> Result<LogLogFit, Error> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if pts.len() < 2 || sxx == 0.0 {
        return Err(Error::Precondition("insufficient data for a fit".into()));
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = pts
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    Ok(LogLogFit {
        slope,
        intercept,
        residual: (sse / m).sqrt(),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScalingFit {
    pub algorithm: Algorithm,
    pub fit: LogLogFit,
    pub sizes: Vec<usize>,
}

/// Fits median time against n per algorithm, using the sizes in `range`.
/// Every algorithm needs at least four distinct sizes.
pub fn fit_scaling(
    rows: &[AggregateRow],
    range: std::ops::RangeInclusive<usize>,
) -> Result<Vec<ScalingFit>, Error> {
    let mut by_alg: BTreeMap<Algorithm, Vec<(usize, f64)>> = BTreeMap::new();
    for r in rows
        .iter()
        .filter(|r| r.statistic == Statistic::Median && range.contains(&r.n))
    {
        by_alg
            .entry(r.algorithm)
            .or_default()
            .push((r.n, r.time_seconds));
    }
    let mut fits = Vec::new();
    for (algorithm, mut pts) in by_alg {
        pts.sort_by_key(|p| p.0);
        pts.dedup_by_key(|p| p.0);
        if pts.len() < 4 {
            return Err(Error::Precondition(format!(
                "{algorithm}: {} sizes, need at least 4",
                pts.len()
            )));
        }
        let xy: Vec<(f64, f64)> = pts.iter().map(|&(n, t)| (n as f64, t)).collect();
        fits.push(ScalingFit {
            algorithm,
            fit: fit_log_log(&xy)?,
            sizes: pts.iter().map(|p| p.0).collect(),
        });
    }
    Ok(fits)
}

/// [`fit_scaling`] over an aggregate CSV file, all sizes.
pub fn fit_scaling_csv(path: &Path) -> Result<Vec<ScalingFit>, Error> {
    fit_scaling(&read_aggregate(path)?, 0..=usize::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn synthetic(f: impl Fn(f64) -> f64) -> Vec<AggregateRow> {
        [16, 32, 64, 128, 256]
            .into_iter()
            .flat_map(|n| {
                [Statistic::Median, Statistic::Max].map(|statistic| AggregateRow {
                    n,
                    algorithm: Algorithm::Delaunay,
                    statistic,
                    time_seconds: f(n as f64)
                        * if statistic == Statistic::Max {
                            3.0
                        } else {
                            1.0
                        },
                    workspace_words: 32,
                })
            })
            .collect()
    }

    #[test]
    fn fits_exact_powers() {
        let cubic = fit_scaling(&synthetic(|n| n.powi(3) * 1e-9), 0..=usize::MAX).unwrap();
        assert!((cubic[0].fit.slope - 3.0).abs() < 1e-6);
        assert!((cubic[0].fit.predict(100.0) - 1e-3).abs() < 1e-9);
        assert!(cubic[0].fit.residual < 1e-9);
        let linear = fit_scaling(&synthetic(|n| 2e-6 * n), 0..=usize::MAX).unwrap();
        assert!((linear[0].fit.slope - 1.0).abs() < 1e-9);
        assert!(fit_scaling(&synthetic(|n| n), 100..=usize::MAX).is_err());
    }

    #[test]
    fn lower_median_and_agreement() {
        assert_eq!(lower_median(&mut [3, 1, 2, 4]), 2);
        assert_eq!(lower_median(&mut [5.0]), 5.0);
        let a = [Point::new(0.0, 0.0), Point::new(1.0, 1.0)];
        assert!(paths_agree(
            &a,
            &[Point::new(0.0, 1e-10), Point::new(1.0, 1.0)]
        ));
        assert!(!paths_agree(
            &a,
            &[Point::new(0.0, 1e-8), Point::new(1.0, 1.0)]
        ));
        assert!(!paths_agree(&a, &a[..1]));
    }

    #[test]
    fn small_run_shape_and_round_trip() {
        let dir = std::env::temp_dir().join(format!("bench-test-{}", std::process::id()));
        let cfg = BenchConfig {
            sizes: vec![8, 12, 16],
            polygons_per_size: 2,
            max_pairs: 6,
            repeats_min: 1,
            repeats_max: 2,
            oracle_max_n: 16,
            repro_dir: dir.clone(),
            ..BenchConfig::default()
        };
        let mut seen = Vec::new();
        let report = run_benchmark(&cfg, |n| seen.push(n)).unwrap();
        assert_eq!(seen, cfg.sizes);
        assert_eq!(report.aggregate.len(), 3 * 4 * 2);
        assert_eq!(report.details.len(), 3 * 6 * 4);
        let (agg, detail) = write_report(&report, &dir).unwrap();
        assert_eq!(read_aggregate(&agg).unwrap().len(), report.aggregate.len());
        assert_eq!(
            std::fs::read_to_string(detail).unwrap().lines().count(),
            report.details.len() + 1
        );
        // Everything except timing is reproducible.
        let again = run_benchmark(&cfg, |_| {}).unwrap();
        let strip = |r: &BenchReport| {
            r.details
                .iter()
                .map(|d| {
                    (
                        d.n,
                        d.polygon_seed,
                        d.pair,
                        d.algorithm,
                        d.workspace_words,
                        d.s,
                        d.t,
                    )
                })
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&report), strip(&again));
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn rejects_bad_config() {
        let bad = [
            BenchConfig {
                sizes: vec![],
                ..BenchConfig::default()
            },
            BenchConfig {
                repeats_min: 6,
                repeats_max: 5,
                ..BenchConfig::default()
            },
            BenchConfig {
                max_pairs: 0,
                ..BenchConfig::default()
            },
        ];
        for cfg in bad {
            assert!(matches!(
                run_benchmark(&cfg, |_| {}),
                Err(Error::Precondition(_))
            ));
        }
    }

    #[test]
    fn disagreement_writes_bundle() {
        let dir = std::env::temp_dir().join(format!("bench-bundle-{}", std::process::id()));
        let inst = generate_instance(8, 1).unwrap();
        let q = PathQuery::new(inst.points[0], inst.points[1]);
        let outputs = vec![
            ("a".to_string(), Ok(vec![q.s, q.t])),
            ("b".to_string(), Err("boom".to_string())),
        ];
        let bundle = write_bundle(&dir, &inst, 3, q, &outputs).unwrap();
        assert!(bundle.join("poly_n8_s1.txt").exists());
        let text = std::fs::read_to_string(bundle.join("outputs.txt")).unwrap();
        assert!(text.contains("b: error: boom"));
        std::fs::remove_dir_all(dir).unwrap();
    }
}
