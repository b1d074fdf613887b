//! Reference polygons used by tests, benchmarks and the CLI.

use crate::geom::Point;
use crate::polygon::{ModuliSpec, PolygonConfig};

fn build(n: usize, r: f64, pts: &[[f64; 2]]) -> PolygonConfig {
    let spec = ModuliSpec::new(n, r).expect("fixture spec");
    PolygonConfig::new(spec, pts.iter().copied().map(Point::from).collect()).expect("fixture arity")
}

/// Heptagon with `r = 5.2` whose collinear tail starts at the last free
/// vertex. Coordinates are plot data, unit edges hold to about 0.05.
pub fn figure_one() -> PolygonConfig {
    build(
        7,
        5.2,
        &[
            [0.0, 0.0],
            [0.6, 0.8],
            [1.58, 1.0],
            [2.58, 1.0],
            [3.5, 0.6],
            [4.49, 0.7],
            [5.2, 0.0],
        ],
    )
}

/// Self-intersecting heptagon with `r = 5.2` whose tail starts at vertex 4.
/// Plot data, unit edges hold to about 0.05.
pub fn figure_two() -> PolygonConfig {
    build(
        7,
        5.2,
        &[
            [0.0, 0.0],
            [0.95, 0.3],
            [1.76, -0.3],
            [2.63, 0.2],
            [3.38, 0.85],
            [4.29, 0.42],
            [5.2, 0.0],
        ],
    )
}

/// Exact quadrilateral in `M(4, 2)`: three edges of a regular hexagon
/// closed by a diameter.
pub fn half_hexagon() -> PolygonConfig {
    build(
        4,
        2.0,
        &[
            [0.0, 0.0],
            [1.0, 0.0],
            [1.5, 0.866_025_403_784_438_6],
            [2.0, 0.0],
        ],
    )
}
