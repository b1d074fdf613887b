//! Benchmark workloads.

use polysphere_core::verify::{sample_polygons, EXACT_TOL};
use polysphere_core::{phi_forward, ModuliSpec, PolygonConfig, SuspensionCoords};

/// Seeded sample polygons in `M(n, n - 1.5)` with their coordinates.
pub fn workload(n: usize, count: usize) -> (ModuliSpec, Vec<PolygonConfig>, Vec<SuspensionCoords>) {
    let spec = ModuliSpec::new(n, n as f64 - 1.5).expect("n >= 4");
    let polys = sample_polygons(spec, 17, count, EXACT_TOL).expect("samples map back");
    let coords = polys
        .iter()
        .map(|p| phi_forward(p, EXACT_TOL).expect("sampled polygons are valid"))
        .collect();
    (spec, polys, coords)
}
