//! Seeded instance factories.
//!
//! Both generators draw from `ChaCha8Rng::seed_from_u64(seed)`. Draw order:
//!
//! * `hpath`: cycle length uniform in `3..=n`; then, until `n` vertices exist,
//!   one H-path per round as (endpoint `a`, endpoint `b` redrawn until distinct,
//!   interior count uniform in `0..=min(4, remaining)`), where a chord that
//!   already exists is discarded; finally `extra` chord draws `(a, b)`, each
//!   added when absent.
//! * `geometric`: per attempt, `n` points as `(x, y)` pairs uniform in the unit
//!   square, edges between points at distance at most `radius`; attempts
//!   continue on the same stream until the graph is biconnected.
//!
//! Seeds are not a portable fixture format; ship edge lists instead.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{is_biconnected, Graph};

pub const GEOMETRIC_ATTEMPTS: usize = 100;
const MAX_EAR_INTERIOR: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    Hpath,
    Geometric,
}

impl std::str::FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hpath" => Ok(Self::Hpath),
            "geometric" => Ok(Self::Geometric),
            other => Err(Error::InvalidSpec(format!("unknown kind {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    /// Extra chord draws after the H-path construction reaches `n` vertices.
    pub extra: usize,
    /// Connection radius for `geometric`; `None` picks [`default_radius`].
    pub radius: Option<f64>,
    pub seed: u64,
}

impl GenSpec {
    pub fn hpath(n: usize, seed: u64) -> Self {
        Self {
            kind: GenKind::Hpath,
            n,
            extra: 0,
            radius: None,
            seed,
        }
    }

    pub fn geometric(n: usize, radius: Option<f64>, seed: u64) -> Self {
        Self {
            kind: GenKind::Geometric,
            n,
            extra: 0,
            radius,
            seed,
        }
    }
}

/// Radius giving an expected degree of about `3 ln n`, capped at √2.
pub fn default_radius(n: usize) -> f64 {
    let n = n.max(3) as f64;
    (3.0 * n.ln() / (std::f64::consts::PI * n))
        .sqrt()
        .min(std::f64::consts::SQRT_2)
}

pub fn generate(spec: &GenSpec) -> Result<Graph> {
    match spec.kind {
        GenKind::Hpath => gen_hpath(spec),
        GenKind::Geometric => gen_geometric(spec),
    }
}

/// A cycle grown by random H-paths; biconnected by construction.
pub fn gen_hpath(spec: &GenSpec) -> Result<Graph> {
    let n = spec.n;
    if n < 3 {
        return Err(Error::TooFewVertices { n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let cycle_len = rng.random_range(3..=n);
    let mut edges: Vec<(usize, usize)> = (0..cycle_len).map(|i| (i, (i + 1) % cycle_len)).collect();
    let mut present: std::collections::HashSet<(usize, usize)> =
        edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    let mut count = cycle_len;

    let draw_pair = |rng: &mut ChaCha8Rng, count: usize| {
        let a = rng.random_range(0..count);
        let mut b = rng.random_range(0..count);
        while b == a {
            b = rng.random_range(0..count);
        }
        (a, b)
    };

    while count < n {
        let (a, b) = draw_pair(&mut rng, count);
        let interior = rng.random_range(0..=MAX_EAR_INTERIOR.min(n - count));
        if interior == 0 && present.contains(&(a.min(b), a.max(b))) {
            continue;
        }
        let mut prev = a;
        for v in count..count + interior {
            edges.push((prev, v));
            present.insert((prev, v));
            prev = v;
        }
        edges.push((prev, b));
        present.insert((prev.min(b), prev.max(b)));
        count += interior;
    }
    for _ in 0..spec.extra {
        let (a, b) = draw_pair(&mut rng, n);
        if present.insert((a.min(b), a.max(b))) {
            edges.push((a, b));
        }
    }
    let g = Graph::new(n, edges)?;
    debug_assert!(is_biconnected(&g, &g.vertex_set()));
    Ok(g)
}

/// Unit-square random geometric graph, redrawn until biconnected.
pub fn gen_geometric(spec: &GenSpec) -> Result<Graph> {
    let n = spec.n;
    if n < 3 {
        return Err(Error::TooFewVertices { n });
    }
    let radius = spec.radius.unwrap_or_else(|| default_radius(n));
    if !(radius > 0.0 && radius <= std::f64::consts::SQRT_2) {
        return Err(Error::InvalidSpec(format!(
            "radius {radius} outside (0, sqrt 2]"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let r2 = radius * radius;
    for _ in 0..GEOMETRIC_ATTEMPTS {
        let points: Vec<(f64, f64)> = (0..n)
            .map(|_| (rng.random::<f64>(), rng.random::<f64>()))
            .collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (dx, dy) = (points[i].0 - points[j].0, points[i].1 - points[j].1);
                if dx * dx + dy * dy <= r2 {
                    edges.push((i, j));
                }
            }
        }
        let g = Graph::new(n, edges)?;
        if is_biconnected(&g, &g.vertex_set()) {
            return Ok(g);
        }
    }
    Err(Error::GenerationFailed {
        attempts: GEOMETRIC_ATTEMPTS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ear_decomposition;

    #[test]
    fn hpath_of_three_is_triangle() {
        let g = gen_hpath(&GenSpec::hpath(3, 0)).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn hpath_is_biconnected_and_deterministic() {
        for seed in 0..20 {
            let spec = GenSpec {
                extra: 5,
                ..GenSpec::hpath(50, seed)
            };
            let g = gen_hpath(&spec).unwrap();
            assert_eq!(g.n(), 50);
            assert!(is_biconnected(&g, &g.vertex_set()));
            ear_decomposition(&g).unwrap().validate(&g).unwrap();
            assert_eq!(g, gen_hpath(&spec).unwrap());
        }
        assert_ne!(
            gen_hpath(&GenSpec::hpath(50, 1)).unwrap(),
            gen_hpath(&GenSpec::hpath(50, 2)).unwrap()
        );
    }

    #[test]
    fn geometric_full_radius_triangle() {
        let g = gen_geometric(&GenSpec::geometric(3, Some(std::f64::consts::SQRT_2), 9)).unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn geometric_default_radius_is_biconnected() {
        let spec = GenSpec::geometric(100, Some(0.25), 7);
        let g = gen_geometric(&spec).unwrap();
        assert!(is_biconnected(&g, &g.vertex_set()));
        assert_eq!(g, gen_geometric(&spec).unwrap());
    }

    #[test]
    fn tiny_radius_fails() {
        assert_eq!(
            gen_geometric(&GenSpec::geometric(100, Some(0.01), 3)),
            Err(Error::GenerationFailed { attempts: 100 })
        );
    }

    #[test]
    fn bad_specs() {
        assert!(matches!(
            gen_geometric(&GenSpec::geometric(10, Some(2.0), 0)),
            Err(Error::InvalidSpec(_))
        ));
        assert_eq!(
            gen_hpath(&GenSpec::hpath(2, 0)),
            Err(Error::TooFewVertices { n: 2 })
        );
        assert!("ring".parse::<GenKind>().is_err());
    }
}
