//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use geodesic_cw::bench::{
    fit_log_log, paths_agree, run_benchmark, AggregateRow, BenchConfig, BenchReport, Statistic,
};
use geodesic_cw::delaunay_cw::{self, restricted_gift_wrap};
use geodesic_cw::lee_preparata::{self, lp_shortest_path};
use geodesic_cw::makestep_cw::{self, makestep_advance, MakeStepState};
use geodesic_cw::oracle::{oracle_cdt, oracle_shortest_path, oracle_trapezoidation};
use geodesic_cw::polygen::{generate_instance, TestInstance};
use geodesic_cw::polygon::signed_area;
use geodesic_cw::trapezoid_cw::{self, trapezoid_neighbors};
use geodesic_cw::triangulate::triangulate_ear_clipping;
use geodesic_cw::{
    fixtures, geom::Side, metered_run, shortest_path, Algorithm, PathQuery, WorkspaceMeter,
};

type Outcome = Result<String, String>;

/// Up to `cap` query pairs from the instance's sample points.
fn pairs(inst: &TestInstance, cap: usize) -> Vec<PathQuery> {
    let pts = &inst.points;
    (0..pts.len())
        .flat_map(|i| (i + 1..pts.len()).map(move |j| (i, j)))
        .take(cap)
        .map(|(i, j)| PathQuery::new(pts[i], pts[j]))
        .collect()
}

/// A small deterministic suite with sizes spread over 8..=64.
fn small_suite(count: u64) -> Vec<TestInstance> {
    (0..count)
        .map(|seed| generate_instance(8 + (seed as usize * 7) % 57, 1000 + seed).unwrap())
        .collect()
}

fn oracle_equivalence() -> Outcome {
    let suite = small_suite(120);
    let mut queries = 0;
    for inst in &suite {
        let poly = &inst.polygon;
        let tr = triangulate_ear_clipping(poly).map_err(|e| e.to_string())?;
        for q in pairs(inst, 12) {
            let reference = oracle_shortest_path(poly, q).map_err(|e| e.to_string())?;
            for alg in Algorithm::ALL {
                let got = match alg {
                    Algorithm::LeePreparata => lp_shortest_path(poly, &tr, q),
                    _ => shortest_path(alg, poly, q),
                };
                match got {
                    Ok(p) if paths_agree(&p, &reference) => {}
                    other => {
                        return Err(format!(
                            "{alg} disagrees on n={} seed={} s={} t={}: {other:?}",
                            poly.len(),
                            inst.seed,
                            q.s,
                            q.t
                        ))
                    }
                }
            }
            queries += 1;
        }
    }
    if queries < 1000 {
        return Err(format!("only {queries} queries"));
    }
    Ok(format!(
        "{} polygons, {queries} queries, 4 algorithms agree with the oracle",
        suite.len()
    ))
}

/// Largest peak workspace over a few polygons of size `n`.
fn max_peak(alg: Algorithm, n: usize) -> Result<usize, String> {
    let mut peak = 0;
    for seed in 0..3 {
        let inst = generate_instance(n, 7 + seed).map_err(|e| e.to_string())?;
        for q in pairs(&inst, 4) {
            peak = peak.max(
                metered_run(alg, &inst.polygon, None, q)
                    .map_err(|e| e.to_string())?
                    .peak_words,
            );
        }
    }
    Ok(peak)
}

fn constant_workspace() -> Outcome {
    let mut parts = Vec::new();
    let mut ok = true;
    for alg in [
        Algorithm::Delaunay,
        Algorithm::Trapezoid,
        Algorithm::MakeStep,
    ] {
        let (small, large) = (max_peak(alg, 16)?, max_peak(alg, 512)?);
        ok &= large <= small;
        parts.push(format!("{alg} {small} -> {large} words"));
    }
    let detail = format!("peak at n=16 -> n=512: {}", parts.join(", "));
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn row(rows: &[AggregateRow], alg: Algorithm, n: usize, stat: Statistic) -> Option<&AggregateRow> {
    rows.iter()
        .find(|r| r.algorithm == alg && r.n == n && r.statistic == stat)
}

fn linear_workspace(report: &BenchReport) -> Outcome {
    let peaks: Vec<(usize, usize)> = [64, 128, 256, 512]
        .into_iter()
        .filter_map(|n| {
            row(
                &report.aggregate,
                Algorithm::LeePreparata,
                n,
                Statistic::Max,
            )
            .map(|r| (n, r.workspace_words))
        })
        .collect();
    if peaks.len() != 4 {
        return Err("missing Lee-Preparata rows".into());
    }
    let m = peaks.len() as f64;
    let mx = peaks.iter().map(|p| p.0 as f64).sum::<f64>() / m;
    let my = peaks.iter().map(|p| p.1 as f64).sum::<f64>() / m;
    let slope = peaks
        .iter()
        .map(|p| (p.0 as f64 - mx) * (p.1 as f64 - my))
        .sum::<f64>()
        / peaks.iter().map(|p| (p.0 as f64 - mx).powi(2)).sum::<f64>();
    let ratio = peaks[3].1 as f64 / peaks[0].1 as f64;
    let detail = format!("peak words {peaks:?}, linear slope {slope:.2} words/vertex, peak(512)/peak(64) = {ratio:.2}");
    if slope > 0.0 && (4.0..=16.0).contains(&ratio) {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn runtime_scaling(report: &BenchReport) -> Outcome {
    let bounds = [
        (Algorithm::LeePreparata, 0.6, 1.4),
        (Algorithm::Delaunay, 2.4, 3.6),
        (Algorithm::Trapezoid, 1.5, 2.5),
        (Algorithm::MakeStep, 1.5, 2.5),
    ];
    let mut parts = Vec::new();
    let mut ok = true;
    for (alg, lo, hi) in bounds {
        let pts: Vec<(f64, f64)> = report
            .aggregate
            .iter()
            .filter(|r| r.algorithm == alg && r.statistic == Statistic::Median && r.n >= 32)
            .map(|r| (r.n as f64, r.time_seconds))
            .collect();
        match fit_log_log(&pts) {
            Ok(fit) => {
                ok &= pts.len() >= 4 && (lo..=hi).contains(&fit.slope);
                parts.push(format!(
                    "{alg} {:.2} in [{lo}, {hi}] over {} sizes",
                    fit.slope,
                    pts.len()
                ));
            }
            Err(e) => return Err(format!("{alg}: {e}")),
        }
    }
    let detail = parts.join("; ");
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn ordering(report: &BenchReport) -> Outcome {
    let n = report
        .aggregate
        .iter()
        .filter(|r| r.algorithm == Algorithm::Trapezoid)
        .map(|r| r.n)
        .filter(|&n| row(&report.aggregate, Algorithm::MakeStep, n, Statistic::Median).is_some())
        .max()
        .ok_or("no common size")?;
    let get = |alg, stat| row(&report.aggregate, alg, n, stat).unwrap();
    let (tt, mt) = (
        get(Algorithm::Trapezoid, Statistic::Median).time_seconds,
        get(Algorithm::MakeStep, Statistic::Median).time_seconds,
    );
    let (tw, mw) = (
        get(Algorithm::Trapezoid, Statistic::Max).workspace_words,
        get(Algorithm::MakeStep, Statistic::Max).workspace_words,
    );
    let detail = format!(
        "n={n}: median time trapezoid {:.1} us vs makestep {:.1} us (ratio {:.2}); peak words makestep {mw} vs trapezoid {tw} (ratio {:.2})",
        tt * 1e6,
        mt * 1e6,
        tt / mt,
        mw as f64 / tw as f64
    );
    if tt < mt && mw < tw {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn regression_fixtures() -> Outcome {
    let d = fixtures::decoy();
    let (u, w) = (d.polygon.vertex(d.u), d.polygon.vertex(d.w));
    let (_, emitted, _) = restricted_gift_wrap(&d.polygon, d.v, [9, d.v, d.w], None, d.t)
        .map_err(|e| e.to_string())?;
    if emitted != vec![w] {
        return Err(format!(
            "gift wrap from v emitted {emitted:?}, expected only w"
        ));
    }
    let q = PathQuery::new(d.s, d.t);
    let reference = oracle_shortest_path(&d.polygon, q).map_err(|e| e.to_string())?;
    for alg in Algorithm::ALL {
        let p = shortest_path(alg, &d.polygon, q).map_err(|e| e.to_string())?;
        if p.contains(&u) || !paths_agree(&p, &reference) {
            return Err(format!("{alg} on the decoy: {p:?}"));
        }
    }

    let f = fixtures::splitter();
    let st = MakeStepState {
        p: f.p,
        p_vertex: None,
        q1: f.q1,
        q2: f.q2,
        next_side: Side::Right,
        steps: 0,
    };
    let (next, emitted) = makestep_advance(&f.polygon, &st, f.t).map_err(|e| e.to_string())?;
    if emitted.is_some()
        || next.p != f.p
        || next.q1 != f.q1
        || next.q2.edge.0 != 6
        || !next.region_contains(&f.polygon, f.t)
    {
        return Err(format!("splitter step went wrong: {next:?}"));
    }
    let q = PathQuery::new(f.p, f.t);
    let p = makestep_cw::makestep_shortest_path(&f.polygon, q).map_err(|e| e.to_string())?;
    let reference = oracle_shortest_path(&f.polygon, q).map_err(|e| e.to_string())?;
    if !paths_agree(&p, &reference) {
        return Err(format!("splitter path {p:?} vs oracle {reference:?}"));
    }
    Ok("decoy: wrap emits w and never u; splitter: cone shrinks to q1-p-q', p kept, path equals oracle".into())
}

fn structural_invariants() -> Outcome {
    let mut counts = [0usize; 5];
    for inst in small_suite(40) {
        let poly = &inst.polygon;
        let tr = triangulate_ear_clipping(poly).map_err(|e| e.to_string())?;
        let cdt = oracle_cdt(poly).map_err(|e| e.to_string())?;
        let area = poly.area();
        let tri_area: f64 = tr
            .triangles
            .iter()
            .map(|t| signed_area(&t.map(|i| poly.vertex(i))))
            .sum();
        let trap_area: f64 = oracle_trapezoidation(poly)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|t| t.area(poly))
            .sum();
        if ((tri_area - area) / area).abs() > 1e-9 || ((trap_area - area) / area).abs() > 1e-9 {
            return Err(format!(
                "area not conserved on seed {}: {area} {tri_area} {trap_area}",
                inst.seed
            ));
        }
        counts[4] += 1;
        for q in pairs(&inst, 6) {
            let meter = WorkspaceMeter::new();
            let mut bad = None;
            lee_preparata::trace(poly, &tr, q, &meter, |f| {
                counts[0] += 1;
                if !f.is_concave() {
                    bad = Some("funnel lost concavity");
                }
            })
            .map_err(|e| e.to_string())?;
            makestep_cw::trace(poly, q, &meter, |st| {
                counts[1] += 1;
                if !st.region_contains(poly, q.t) {
                    bad = Some("t left P'");
                }
            })
            .map_err(|e| e.to_string())?;
            let mut traps = Vec::new();
            trapezoid_cw::trace(poly, q, &meter, |t| traps.push(t)).map_err(|e| e.to_string())?;
            for t in &traps {
                counts[2] += 1;
                if trapezoid_neighbors(poly, t)
                    .map_err(|e| e.to_string())?
                    .len()
                    > 4
                {
                    bad = Some("trapezoid with more than 4 neighbours");
                }
            }
            delaunay_cw::trace(poly, q, &meter, |mut t| {
                counts[3] += 1;
                let k = (0..3).min_by_key(|&k| t[k]).unwrap();
                t.rotate_left(k);
                if !cdt.contains(&t) {
                    bad = Some("navigation triangle not in the CDT");
                }
            })
            .map_err(|e| e.to_string())?;
            if let Some(msg) = bad {
                return Err(format!("{msg} on seed {}, s={} t={}", inst.seed, q.s, q.t));
            }
        }
    }
    Ok(format!(
        "{} funnel states, {} MakeStep states, {} trapezoids, {} CDT triangles checked; area conserved on {} polygons",
        counts[0], counts[1], counts[2], counts[3], counts[4]
    ))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let cfg = BenchConfig {
        sizes: vec![32, 48, 64, 96, 128, 192, 256, 384, 512],
        max_pairs: 100,
        repeats_min: 5,
        repeats_max: 20,
        oracle_max_n: 64,
        delaunay_max_n: 128,
        repro_dir: std::env::temp_dir().join("geodesic-acceptance"),
        ..BenchConfig::default()
    };
    let report = run_benchmark(&cfg, |_| {}).map_err(|e| e.to_string());
    let from_bench = |f: fn(&BenchReport) -> Outcome| match &report {
        Ok(r) => f(r),
        Err(e) => Err(format!("benchmark failed: {e}")),
    };

    let results: Vec<(&str, Outcome)> = vec![
        ("oracle equivalence", oracle_equivalence()),
        ("constant workspace", constant_workspace()),
        (
            "linear workspace (Lee-Preparata)",
            from_bench(linear_workspace),
        ),
        ("runtime scaling exponents", from_bench(runtime_scaling)),
        ("trapezoid faster, makestep smaller", from_bench(ordering)),
        ("regression fixtures", regression_fixtures()),
        ("structural invariants", structural_invariants()),
    ];
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed in {:.0} s",
        results.len() - failed,
        results.len(),
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
