//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode, Stdio};
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use stickknot::bezier::{max_pointwise_gap, second_diff};
use stickknot::bounds::{hodograph_rate_bound, insertion_distance_bound, n1_exact, BoundInputs};
use stickknot::certificate::{compute_delta, iteration_bounds, required_iterations, IterationInputs};
use stickknot::diagnostics::{diagnose_iteration, sample_floor};
use stickknot::random::random_polyknot;
use stickknot::{Point3, PolyKnot, Segment3, TangentTest};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let detail = f()?;
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(format!("{detail} ({took:.2?})"))
}

fn random_polygons(count: u64, first_seed: u64) -> Result<Vec<PolyKnot>, String> {
    (first_seed..first_seed + count)
        .map(|s| random_polyknot(7, s).map_err(|e| format!("seed {s}: {e}")))
        .collect()
}

fn omegas(p: &PolyKnot) -> Result<(f64, f64), String> {
    let curve = p.bezier();
    let o1 = second_diff(curve.control()).map_err(|e| e.to_string())?.omega;
    let o2 = second_diff(curve.hodograph().control())
        .map_err(|e| e.to_string())?
        .omega;
    Ok((o1, o2))
}

fn worked_example() -> Outcome {
    timed(Duration::from_secs(1), || {
        let inputs = IterationInputs {
            n: 7,
            omega1: 70.8,
            omega2: 779.0,
            lambda: 9.0,
            delta: 0.0032,
        };
        let b = iteration_bounds(&inputs, TangentTest::Simplified).map_err(|e| e.to_string())?;
        let got = (b.m1, b.m2t, b.m2a, b.m2, b.m);
        ensure(got == (28, 4, 5, 5, 28), || format!("(m1, m2T, m2A, m2, M) = {got:?}"))?;
        Ok(format!("m1={} m2T={} m2A={} m2={} M={}", b.m1, b.m2t, b.m2a, b.m2, b.m))
    })
}

fn delta_table() -> Outcome {
    timed(Duration::from_secs(1), || {
        let c = compute_delta(&PolyKnot::figure_eight(), 1.0).map_err(|e| e.to_string())?;
        for (name, got, want) in [
            ("r1", c.r1, 0.2576),
            ("r2", c.r2, 0.1288),
            ("r3", c.r3, 0.0576),
            ("r4", c.r4, 0.0096),
            ("delta", c.delta, 0.0032),
        ] {
            ensure((got - want).abs() <= 1e-3, || format!("{name} = {got}, expected {want}"))?;
        }
        ensure(c.r2 == f64::min(c.r1 / 2.0, 0.5), || "r2 identity".into())?;
        ensure(c.r4 == c.r3 / 6.0, || "r4 identity".into())?;
        ensure(c.delta == c.r4 / 3.0, || "delta identity".into())?;
        Ok(format!(
            "r1={:.4} r2={:.4} r3={:.4} r4={:.4} delta={:.4}",
            c.r1, c.r2, c.r3, c.r4, c.delta
        ))
    })
}

fn norms() -> Outcome {
    let p = PolyKnot::figure_eight();
    let (o1, o2) = omegas(&p)?;
    let lambda = p.min_edge_length();
    ensure((o1 - 70.8).abs() / 70.8 <= 5e-3, || format!("omega1 = {o1}"))?;
    ensure((o2 - 779.0).abs() / 779.0 <= 5e-3, || format!("omega2 = {o2}"))?;
    ensure((lambda - 9.0).abs() / 9.0 <= 2e-2, || format!("lambda = {lambda}"))?;
    Ok(format!("omega1={o1} omega2={o2} lambda={lambda:.4}"))
}

fn knot_type_trajectory() -> Outcome {
    timed(Duration::from_secs(30), || {
        let p = PolyKnot::figure_eight();
        let mut trajectory = Vec::new();
        for j in 0..=4u32 {
            let want = if j == 4 { 5 } else { 1 };
            let floor = sample_floor(&p, j);
            for seed in 0..10 {
                for samples in [floor, 2 * floor] {
                    let r = diagnose_iteration(&p, j, samples, seed)
                        .map_err(|e| format!("j={j} seed={seed} samples={samples}: {e}"))?;
                    ensure(r.determinant == want, || {
                        format!(
                            "j={j} seed={seed} samples={samples}: determinant {} (expected {want})",
                            r.determinant
                        )
                    })?;
                }
            }
            trajectory.push(want);
        }
        Ok(format!("determinants j=0..4: {trajectory:?}, 10 seeds x 2 sample counts"))
    })
}

fn convergence_bounds() -> Outcome {
    const SAMPLES: usize = 10_000;
    let mut polygons = vec![PolyKnot::figure_eight()];
    polygons.extend(random_polygons(10, 100)?);
    let (mut worst_dist, mut worst_hodo) = (0.0f64, 0.0f64);
    for (idx, p) in polygons.iter().enumerate() {
        let (o1, o2) = omegas(p)?;
        let base =
            BoundInputs::new(p.len(), 0, o1, o2, p.min_edge_length()).map_err(|e| e.to_string())?;
        for j in 0..=6 {
            let b = base.at_level(j);
            let r = p.refine(j);
            let curve = r.bezier();
            let gap = max_pointwise_gap(&curve, |t| r.param(t), SAMPLES).map_err(|e| e.to_string())?;
            let bound = insertion_distance_bound(&b);
            ensure(gap <= bound, || format!("polygon {idx} j={j}: gap {gap} > {bound}"))?;
            let h = curve.scaled_hodograph(p.len() as f64);
            let hgap = max_pointwise_gap(&h, |t| h.control_polygon_point(t), SAMPLES)
                .map_err(|e| e.to_string())?;
            let hbound = hodograph_rate_bound(&b);
            ensure(hgap <= hbound, || {
                format!("polygon {idx} j={j}: hodograph gap {hgap} > {hbound}")
            })?;
            worst_dist = worst_dist.max(gap / bound);
            worst_hodo = worst_hodo.max(hgap / hbound);
        }
    }
    Ok(format!(
        "11 polygons, j=0..6; largest gap/bound {worst_dist:.3}, hodograph {worst_hodo:.3}"
    ))
}

fn ratio_law() -> Outcome {
    let mut polygons = vec![PolyKnot::figure_eight()];
    polygons.extend(random_polygons(10, 200)?);
    let mut worst = 0.0f64;
    for (idx, p) in polygons.iter().enumerate() {
        let n = p.len() as f64;
        let omega = |j: u32| -> Result<f64, String> {
            let h = p.refine(j).bezier().scaled_hodograph(n);
            Ok(second_diff(h.control()).map_err(|e| e.to_string())?.omega)
        };
        let first = omega(1)?;
        for j in 1..=6 {
            let ratio = omega(j)? / first;
            let want = 2f64.powi(1 - j as i32);
            let rel = (ratio - want).abs() / want;
            ensure(rel <= 1e-9, || format!("polygon {idx} j={j}: ratio {ratio}, expected {want}"))?;
            worst = worst.max(rel);
        }
    }
    Ok(format!("11 polygons, j=1..6; largest relative error {worst:.2e}"))
}

fn binomial_bounds() -> Outcome {
    for k in 1..=64u32 {
        // C(2k, k) <= 4^k / sqrt(2k + 1)  <=>  C(2k, k)^2 (2k + 1) <= 16^k
        let c = (1..=k).fold(BigUint::from(1u32), |acc, i| acc * (k + i) / i);
        let lhs = &c * &c * BigUint::from(2 * k + 1);
        let rhs = BigUint::from(16u32).pow(k);
        ensure(lhs <= rhs, || format!("central binomial bound fails at k={k}"))?;
    }
    for k in 1..=512u64 {
        let v = n1_exact(2 * k).map_err(|e| e.to_string())?;
        let bound = k as f64 / (2.0 * ((2 * k + 1) as f64).sqrt());
        ensure(v < bound, || format!("N1({}) = {v} >= {bound}", 2 * k))?;
    }
    Ok("binomial bound k=1..64 (exact), N1 bound k=1..512".into())
}

fn insertion_invariants() -> Outcome {
    const LEVELS: u32 = 4;
    let polygons = random_polygons(100, 300)?;
    for (idx, p) in polygons.iter().enumerate() {
        let edges = p.edges();
        let on_polygon = |q: &Point3| {
            edges
                .iter()
                .map(|e: &Segment3| e.point_distance(q))
                .fold(f64::INFINITY, f64::min)
        };
        let mut prev = p.clone();
        for j in 1..=LEVELS {
            let r = prev.collinear_insert();
            ensure(r.len() == p.len() << j, || format!("polygon {idx} j={j}: {} vertices", r.len()))?;
            // inserted vertices lie on the edge they split; old vertices are kept
            for (i, e) in prev.edges().iter().enumerate() {
                ensure(r.vertices()[2 * i] == prev.vertices()[i], || {
                    format!("polygon {idx} j={j}: vertex {i} moved")
                })?;
                let d = e.point_distance(&r.vertices()[2 * i + 1]);
                ensure(d <= 1e-12, || format!("polygon {idx} j={j}: midpoint off edge by {d}"))?;
            }
            // the images coincide: every refined vertex is on the original
            // polygon, and the original vertices are refined vertices
            let hausdorff = r.vertices().iter().map(|q| on_polygon(q)).fold(0.0, f64::max);
            ensure(hausdorff <= 1e-12, || format!("polygon {idx} j={j}: Hausdorff {hausdorff}"))?;
            let (l0, l1) = (prev.min_edge_length(), r.min_edge_length());
            ensure((l1 - l0 / 2.0).abs() <= 1e-12 * l0, || {
                format!("polygon {idx} j={j}: lambda {l1} vs {}", l0 / 2.0)
            })?;
            prev = r;
        }
    }
    Ok(format!("100 polygons, j=1..{LEVELS}"))
}

fn scale_invariance() -> Outcome {
    let polygons = random_polygons(20, 400)?;
    let mut certified = 0;
    for (idx, p) in polygons.iter().enumerate() {
        let key = |q: &PolyKnot, eps: f64| {
            required_iterations(q, eps).map(|b| (b.m1, b.m2t, b.m2a, b.m)).map_err(|e| e.to_string())
        };
        let base = key(p, 1.0);
        for s in [0.1, 10.0] {
            let scaled = key(&p.scaled(s), s);
            ensure(scaled == base, || {
                format!("polygon {idx} scale {s}: {scaled:?} vs {base:?}")
            })?;
        }
        certified += base.is_ok() as usize;
    }
    Ok(format!("20 polygons at scales 0.1 and 10 ({certified} with non-degenerate certificates)"))
}

fn sweep_harness() -> Outcome {
    timed(Duration::from_secs(300), || {
        let dir = std::env::temp_dir().join(format!("stickknot-acceptance-{}", std::process::id()));
        std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
        let run = |name: &str| -> Result<Vec<u8>, String> {
            let out: PathBuf = dir.join(name);
            let status = Command::new(env!("CARGO_BIN_EXE_stickknot"))
                .args(["sweep", "--count", "50", "--sticks", "7", "--seed", "0", "--jmax", "8", "-o"])
                .arg(&out)
                .stdout(Stdio::null())
                .status()
                .map_err(|e| e.to_string())?;
            ensure(status.success(), || format!("sweep exited with {status}"))?;
            std::fs::read(&out).map_err(|e| e.to_string())
        };
        let a = run("a.csv")?;
        let b = run("b.csv")?;
        let _ = std::fs::remove_dir_all(&dir);
        ensure(a == b, || "CSV differs between identical runs".into())?;
        let text = String::from_utf8(a).map_err(|e| e.to_string())?;
        let mut rows = csv::Reader::from_reader(text.as_bytes());
        let headers = rows.headers().map_err(|e| e.to_string())?.clone();
        let gap_col = headers.iter().position(|h| h == "gap").ok_or("no gap column")?;
        let mut count = 0;
        let mut gaps = Vec::new();
        for row in rows.records() {
            let row = row.map_err(|e| e.to_string())?;
            count += 1;
            if let Ok(g) = row[gap_col].parse::<i64>() {
                gaps.push(g);
            }
        }
        ensure(count == 50, || format!("{count} rows"))?;
        let (lo, hi) = (gaps.iter().min(), gaps.iter().max());
        Ok(format!(
            "50 rows, byte-identical; gap recorded for {} rows, range {:?}..{:?}",
            gaps.len(),
            lo.unwrap_or(&0),
            hi.unwrap_or(&0)
        ))
    })
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("worked-example iteration counts", worked_example),
        ("delta certificate table", delta_table),
        ("self-computed norms", norms),
        ("knot-type trajectory", knot_type_trajectory),
        ("convergence bounds", convergence_bounds),
        ("hodograph ratio law", ratio_law),
        ("binomial and N1 bounds", binomial_bounds),
        ("insertion invariants", insertion_invariants),
        ("scale invariance", scale_invariance),
        ("sweep harness", sweep_harness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
