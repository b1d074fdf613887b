//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use polysphere_core::codec;
use polysphere_core::fixtures;
use polysphere_core::verify::{check_sample, sample_polygons, EXACT_TOL};
use polysphere_core::{
    cart_to_susp, phi_cartesian, phi_forward, phi_inverse, plan, projective_canonical,
    susp_to_cart, validate_plan, ModuliSpec, PlanError, PlanMode, SphereSampler, SuspensionCoords,
};

const SAMPLES: usize = 10_000;
const COORD_SAMPLES: usize = 100_000;
const PLAN_PAIRS: usize = 1_000;
const PLAN_STEPS: usize = 12;

struct Outcome {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn specs() -> Vec<ModuliSpec> {
    (4..=12)
        .flat_map(|n| {
            let n_f = n as f64;
            [n_f - 1.5, n_f - 2.0].map(|r| ModuliSpec::new(n, r).unwrap())
        })
        .collect()
}

/// Measurements over the uniform samples shared by criteria 1, 2, 7 and 8.
#[derive(Default)]
struct Sweep {
    samples: usize,
    errors: Vec<String>,
    vertex_error: f64,
    cartesian_error: f64,
    equivariance_error: f64,
    projective_error: f64,
    idempotence_error: f64,
    bound_excess: f64,
    min_upper_margin: f64,
    thin_margins: usize,
    thin_example: Option<String>,
}

fn sweep() -> Sweep {
    let mut s = Sweep {
        min_upper_margin: f64::INFINITY,
        ..Sweep::default()
    };
    for (k, spec) in specs().into_iter().enumerate() {
        let seed = 1000 + k as u64;
        for (j, v) in SphereSampler::new(spec, seed).take(SAMPLES).enumerate() {
            s.samples += 1;
            let c = match check_sample(spec, &v, EXACT_TOL) {
                Ok(c) => c,
                Err(e) => {
                    s.errors
                        .push(format!("n={} r={} sample {j}: {e}", spec.n(), spec.r()));
                    continue;
                }
            };
            s.vertex_error = s.vertex_error.max(c.vertex_error);
            s.cartesian_error = s.cartesian_error.max(c.cartesian_error);
            s.equivariance_error = s.equivariance_error.max(c.equivariance_error);
            s.projective_error = s.projective_error.max(c.projective_error);
            s.bound_excess = s.bound_excess.max(c.bound_excess);
            s.min_upper_margin = s.min_upper_margin.min(c.upper_margin);
            if c.upper_margin <= 1e-8 {
                s.thin_margins += 1;
                s.thin_example.get_or_insert_with(|| {
                    format!(
                        "n={} r={} seed={seed} sample {j}: margin {:.3e}, i0={}",
                        spec.n(),
                        spec.r(),
                        c.upper_margin,
                        c.i0
                    )
                });
            }

            let image = phi_cartesian(&c.polygon, EXACT_TOL).unwrap();
            let once = projective_canonical(&image, EXACT_TOL);
            let twice = projective_canonical(&once, EXACT_TOL);
            s.idempotence_error = s.idempotence_error.max(once.max_diff(&twice));
        }
    }
    s
}

fn roundtrip(s: &Sweep) -> Outcome {
    Outcome {
        name: "round-trip bijectivity",
        passed: s.errors.is_empty() && s.vertex_error < 1e-8 && s.cartesian_error < 1e-8,
        detail: format!(
            "{} samples, max vertex error {:.3e}, max cartesian error {:.3e}, {} errors{}",
            s.samples,
            s.vertex_error,
            s.cartesian_error,
            s.errors.len(),
            s.errors
                .first()
                .map(|e| format!(" (first: {e})"))
                .unwrap_or_default()
        ),
    }
}

fn equivariance(s: &Sweep) -> Outcome {
    Outcome {
        name: "reflection equivariance",
        passed: s.errors.is_empty() && s.equivariance_error < 1e-9,
        detail: format!(
            "max |phi(reflect P) + phi(P)| = {:.3e}",
            s.equivariance_error
        ),
    }
}

fn figure_check(
    name: &'static str,
    p: polysphere_core::PolygonConfig,
    expected: &[f64],
    i0: usize,
) -> Outcome {
    match phi_forward(&p, 0.05) {
        Ok(s) => {
            let dev: Vec<f64> = s
                .t()
                .iter()
                .zip(expected)
                .map(|(a, b)| (a - b).abs())
                .collect();
            let worst = dev.iter().copied().fold(0.0, f64::max);
            Outcome {
                name,
                passed: worst <= 0.1 && s.i0() == i0,
                detail: format!(
                    "t = {:?}, expected {:?}, per-entry deviation {:?}, i0 = {}",
                    rounded(s.t()),
                    expected,
                    rounded(&dev),
                    s.i0()
                ),
            }
        }
        Err(e) => Outcome {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn rounded(v: &[f64]) -> Vec<f64> {
    v.iter().map(|x| (x * 1e4).round() / 1e4).collect()
}

fn exact_fixture() -> Outcome {
    let p = fixtures::half_hexagon();
    let spec = p.spec();
    let forward = phi_forward(&p, EXACT_TOL).unwrap();
    let t_err = (forward.t()[0] - 0.0)
        .abs()
        .max((forward.t()[1] - 1.0).abs());
    let back = phi_inverse(
        spec,
        &SuspensionCoords::new(vec![0.0, 1.0]).unwrap(),
        EXACT_TOL,
    )
    .unwrap();
    let v_err = back.max_vertex_distance(&p);
    Outcome {
        name: "exact n=4 fixture",
        passed: t_err <= 1e-10 && v_err <= 1e-10 && forward.i0() == 2,
        detail: format!("t error {t_err:.3e}, vertex error {v_err:.3e}"),
    }
}

fn coordinate_model() -> Outcome {
    let mut cart_err = 0.0f64;
    let mut forced_cart_err = 0.0f64;
    let mut forced_t_err = 0.0f64;
    let mut mismatched_i0 = 0usize;
    let mut count = 0usize;
    for n in 4..=12 {
        let spec = ModuliSpec::new(n, n as f64 - 1.5).unwrap();
        let m = spec.coord_len();
        let mut sampler = SphereSampler::new(spec, 7000 + n as u64);
        for j in 0..COORD_SAMPLES {
            let v = sampler.sample();
            let s = cart_to_susp(&v, EXACT_TOL).unwrap();
            cart_err = cart_err.max(v.max_diff(&susp_to_cart(&s)));
            count += 1;

            // the same leading entries with termination forced at i0
            let i0 = 1 + j % m;
            let mut t: Vec<f64> = s.t().to_vec();
            t.resize(m, 0.0);
            for x in &mut t[i0 - 1..] {
                *x = 0.0;
            }
            t[i0 - 1] = if v.as_slice()[i0 - 1] < 0.0 {
                -1.0
            } else {
                1.0
            };
            for x in &mut t[..i0 - 1] {
                // keep leading entries strictly inside (-1, 1)
                if x.abs() >= 1.0 {
                    *x = x.signum() * 0.5;
                }
            }
            let forced = SuspensionCoords::with_i0(t, i0).unwrap();
            let image = susp_to_cart(&forced);
            let back = cart_to_susp(&image, EXACT_TOL).unwrap();
            forced_cart_err = forced_cart_err.max(image.max_diff(&susp_to_cart(&back)));
            if back.i0() != i0 || back.pole() != forced.pole() {
                mismatched_i0 += 1;
            } else {
                for (a, b) in back.significant().iter().zip(forced.significant()) {
                    forced_t_err = forced_t_err.max((a - b).abs());
                }
            }
        }
    }
    Outcome {
        name: "coordinate model homeomorphism",
        passed: cart_err < 1e-10 && forced_cart_err < 1e-10 && mismatched_i0 == 0,
        detail: format!(
            "{count} vectors: cart->susp->cart {cart_err:.3e}; forced i0: cartesian {forced_cart_err:.3e}, \
             t entries {forced_t_err:.3e}, i0 mismatches {mismatched_i0}"
        ),
    }
}

fn triangle_bounds(s: &Sweep) -> Outcome {
    Outcome {
        name: "distance bounds",
        passed: s.errors.is_empty() && s.bound_excess <= 1e-8 && s.thin_margins == 0,
        detail: format!(
            "max bound excess {:.3e}; min upper margin before i0 {:.3e}; \
             {} of {} polygons with margin <= 1e-8{}",
            s.bound_excess,
            s.min_upper_margin,
            s.thin_margins,
            s.samples,
            s.thin_example
                .as_ref()
                .map(|e| format!(" (first: {e})"))
                .unwrap_or_default()
        ),
    }
}

fn projective(s: &Sweep) -> Outcome {
    Outcome {
        name: "projective quotient",
        passed: s.errors.is_empty() && s.projective_error <= 1e-9 && s.idempotence_error == 0.0,
        detail: format!(
            "max canonical mismatch P vs reflect(P) {:.3e}, idempotence error {:.3e}",
            s.projective_error, s.idempotence_error
        ),
    }
}

fn planner() -> Outcome {
    let spec = ModuliSpec::new(6, 4.5).unwrap();
    let polys = sample_polygons(spec, 42, 2 * PLAN_PAIRS, EXACT_TOL).unwrap();
    let mut failures = Vec::new();
    let mut endpoint_err = 0.0f64;
    let mut step_dev = 0.0f64;
    for (k, pair) in polys.chunks(2).enumerate() {
        let mode = if k % 2 == 0 {
            PlanMode::Oriented
        } else {
            PlanMode::Unoriented
        };
        let path = match plan(spec, &pair[0], &pair[1], PLAN_STEPS, mode, EXACT_TOL) {
            Ok(path) => path,
            Err(e) => {
                failures.push(format!("pair {k}: {e}"));
                continue;
            }
        };
        let report = validate_plan(&path, 1e-8);
        endpoint_err = endpoint_err.max(report.start_error).max(report.end_error);
        for issue in &report.issues {
            if !matches!(
                issue,
                polysphere_core::planner::PlanIssue::UnevenStep { .. }
            ) {
                failures.push(format!("pair {k}: {issue}"));
            }
        }

        // step angles measured from exact-tolerance images
        let images: Vec<_> = path
            .frames
            .iter()
            .map(|f| phi_cartesian(f, EXACT_TOL).unwrap())
            .collect();
        let expected = path.angle / PLAN_STEPS as f64;
        for w in images.windows(2) {
            step_dev = step_dev.max((w[0].angle_to(&w[1]) - expected).abs());
        }
    }

    let mut antipodal_ok = 0;
    for p in polys.iter().take(50) {
        if let Err(PlanError::AntipodalEndpoints { .. }) = plan(
            spec,
            p,
            &p.reflect(),
            PLAN_STEPS,
            PlanMode::Oriented,
            EXACT_TOL,
        ) {
            antipodal_ok += 1;
        }
    }

    Outcome {
        name: "planner contract",
        passed: failures.is_empty() && step_dev <= 1e-9 && antipodal_ok == 50,
        detail: format!(
            "{PLAN_PAIRS} pairs: max endpoint error {endpoint_err:.3e}, max step deviation {step_dev:.3e}, \
             {} failures{}; antipodal oriented requests rejected {antipodal_ok}/50",
            failures.len(),
            failures.first().map(|e| format!(" (first: {e})")).unwrap_or_default()
        ),
    }
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = polysphere_cli::run(
        std::iter::once("polysphere").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, out)
}

fn determinism() -> Outcome {
    let check = [
        "check", "--n", "7", "--r", "5.2", "--count", "1000", "--seed", "1",
    ];
    let (c1, a) = cli(&check);
    let (c2, b) = cli(&check);
    let check_same = c1 == 0 && c2 == 0 && a == b;

    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("figure.json");
    fs::write(&input, codec::encode_polygon(&fixtures::figure_one())).unwrap();
    let mut docs = Vec::new();
    for out in ["a", "b"] {
        let out = dir.path().join(out);
        let (code, _) = cli(&[
            "render",
            input.to_str().unwrap(),
            "--overlay",
            "--tol",
            "0.05",
            "--out",
            out.to_str().unwrap(),
        ]);
        docs.push((code, fs::read(out.join("polygon.svg")).unwrap_or_default()));
    }
    let render_same =
        docs[0].0 == 0 && docs[1].0 == 0 && !docs[0].1.is_empty() && docs[0].1 == docs[1].1;

    Outcome {
        name: "determinism",
        passed: check_same && render_same,
        detail: format!(
            "check report identical: {check_same} ({} bytes); render SVG identical: {render_same} ({} bytes)",
            a.len(),
            docs[0].1.len()
        ),
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let s = sweep();
    let outcomes = [
        roundtrip(&s),
        equivariance(&s),
        figure_check(
            "figure_one regression",
            fixtures::figure_one(),
            &[0.7, 0.6, 0.5, -0.05, 1.0],
            5,
        ),
        figure_check(
            "figure_two regression",
            fixtures::figure_two(),
            &[0.2, -0.4, 0.4, 1.0],
            4,
        ),
        exact_fixture(),
        coordinate_model(),
        triangle_bounds(&s),
        projective(&s),
        planner(),
        determinism(),
    ];

    let mut failed = 0;
    for (k, o) in outcomes.iter().enumerate() {
        let verdict = if o.passed { "PASS" } else { "FAIL" };
        println!("[{:>2}] {verdict} {}: {}", k + 1, o.name, o.detail);
        if !o.passed {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        outcomes.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
