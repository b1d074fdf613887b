use polysphere_core::verify::{sample_polygons, EXACT_TOL};
use polysphere_core::{
    phi_cartesian, phi_forward, phi_inverse, plan, projective_canonical, ModuliSpec, PlanMode,
    Point, PolygonConfig,
};
use proptest::prelude::*;

fn spec_strategy() -> impl Strategy<Value = ModuliSpec> {
    (4usize..=9, prop::bool::ANY).prop_map(|(n, half)| {
        let r = if half { n as f64 - 1.5 } else { n as f64 - 2.0 };
        ModuliSpec::new(n, r).unwrap()
    })
}

fn polygon(spec: ModuliSpec, seed: u64) -> PolygonConfig {
    sample_polygons(spec, seed, 1, EXACT_TOL).unwrap().remove(0)
}

fn pair(spec: ModuliSpec, seed: u64) -> (PolygonConfig, PolygonConfig) {
    let mut ps = sample_polygons(spec, seed, 2, EXACT_TOL).unwrap();
    let q = ps.pop().unwrap();
    (ps.pop().unwrap(), q)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn small_perturbations_move_the_image_a_little(
        spec in spec_strategy(),
        seed in any::<u64>(),
        angles in prop::collection::vec(0.0..std::f64::consts::TAU, 11),
    ) {
        let delta = 1e-6;
        let p = polygon(spec, seed);
        let mut v = p.vertices().to_vec();
        let last = v.len() - 1;
        for (i, x) in v.iter_mut().enumerate().take(last).skip(1) {
            let (s, c) = angles[i].sin_cos();
            *x = Point::new(x.x + delta * c, x.y + delta * s);
        }
        let rough = PolygonConfig::new(spec, v).unwrap();
        let coords = phi_forward(&rough, 1e-5).unwrap();
        let exact = phi_inverse(spec, &coords, EXACT_TOL).unwrap();
        let moved = phi_cartesian(&exact, EXACT_TOL).unwrap()
            .max_diff(&phi_cartesian(&p, EXACT_TOL).unwrap());
        prop_assert!(moved <= 1e-2, "image moved {moved}");
    }

    #[test]
    fn reversed_plan_has_reversed_frames(
        spec in spec_strategy(),
        seed in any::<u64>(),
        steps in 1usize..20,
        unoriented in prop::bool::ANY,
    ) {
        let mode = if unoriented { PlanMode::Unoriented } else { PlanMode::Oriented };
        let (p, q) = pair(spec, seed);
        let ahead = plan(spec, &p, &q, steps, mode, EXACT_TOL).unwrap();
        let back = plan(spec, &q, &p, steps, mode, EXACT_TOL).unwrap();
        prop_assert!((ahead.angle - back.angle).abs() <= 1e-12);
        for (a, b) in ahead.frames.iter().zip(back.frames.iter().rev()) {
            // in unoriented mode the reversed plan may run through mirror images
            let d = match mode {
                PlanMode::Oriented => a.max_vertex_distance(b),
                PlanMode::Unoriented => a.max_vertex_distance(b).min(a.max_vertex_distance(&b.reflect())),
            };
            prop_assert!(d <= 1e-9, "frames differ by {d}");
        }
    }

    #[test]
    fn unoriented_plans_ignore_goal_orientation(
        spec in spec_strategy(),
        seed in any::<u64>(),
        steps in 1usize..20,
    ) {
        let (p, q) = pair(spec, seed);
        let a = plan(spec, &p, &q, steps, PlanMode::Unoriented, EXACT_TOL).unwrap();
        let b = plan(spec, &p, &q.reflect(), steps, PlanMode::Unoriented, EXACT_TOL).unwrap();
        prop_assert!((a.angle - b.angle).abs() <= 1e-12);
        for (x, y) in a.frames.iter().zip(&b.frames) {
            let cx = projective_canonical(&phi_cartesian(x, EXACT_TOL).unwrap(), EXACT_TOL);
            let cy = projective_canonical(&phi_cartesian(y, EXACT_TOL).unwrap(), EXACT_TOL);
            prop_assert!(cx.max_diff(&cy) <= 1e-9);
            prop_assert!(x.max_vertex_distance(y) <= 1e-9);
        }
    }
}
