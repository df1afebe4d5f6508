//! Seeded instance generators.

use super::{Graph, GraphError, Weight};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CONNECTIVITY_RETRIES: usize = 64;

/// Erdős–Rényi-style graph: each ordered (directed) or unordered (undirected)
/// pair becomes an edge with probability `p`; weights uniform in `1..=w_max`.
/// Resamples until the underlying undirected graph is connected, up to 64
/// attempts. Deterministic for a fixed seed.
pub fn random_graph(
    n: usize,
    p: f64,
    weighted: bool,
    directed: bool,
    w_max: Weight,
    seed: u64,
) -> Result<Graph, GraphError> {
    assert!(p > 0.0 && p <= 1.0, "edge probability must be in (0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..CONNECTIVITY_RETRIES {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if u == v || (!directed && u > v) {
                    continue;
                }
                if rng.gen_bool(p) {
                    let w = if weighted {
                        rng.gen_range(1..=w_max.max(1))
                    } else {
                        1
                    };
                    edges.push((u, v, w));
                }
            }
        }
        match Graph::new(n, directed, weighted, edges) {
            Ok(g) => return Ok(g),
            Err(GraphError::Disconnected) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(GraphError::ConnectivityRetries(CONNECTIVITY_RETRIES))
}

/// Parameters for [`layered_graph`].
#[derive(Debug, Clone, Copy)]
pub struct LayeredParams {
    pub n: usize,
    /// Number of layers; a planted path crosses one layer per hop, so the
    /// shortest `s`-`t` hop distance is exactly `layers - 1`.
    pub layers: usize,
    /// Expected forward edges per vertex to the next layer.
    pub fwd_degree: f64,
    pub weighted: bool,
    pub w_max: Weight,
    pub seed: u64,
}

/// Layered random digraph with a planted `s -> t` path of exactly
/// `layers - 1` hops: edges only go from layer `i` to layer `i + 1`, so no
/// shortcut can undercut the planted hop count. Returns the graph together
/// with `(s, t)`.
///
/// Used for deep replacement-path instances and round-scaling benchmarks,
/// where plain ER graphs are too shallow once dense enough to be connected.
pub fn layered_graph(params: LayeredParams) -> Result<(Graph, usize, usize), GraphError> {
    let LayeredParams {
        n,
        layers,
        fwd_degree,
        weighted,
        w_max,
        seed,
    } = params;
    assert!(layers >= 2 && n >= 2 * layers, "need at least two per layer");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..CONNECTIVITY_RETRIES {
        // Round-robin layer assignment keeps layer sizes balanced.
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = rng.gen_range(0..=i);
            perm.swap(i, j);
        }
        let layer_of: Vec<usize> = {
            let mut l = vec![0; n];
            for (pos, &v) in perm.iter().enumerate() {
                l[v] = pos % layers;
            }
            l
        };
        let mut by_layer: Vec<Vec<usize>> = vec![Vec::new(); layers];
        for v in 0..n {
            by_layer[layer_of[v]].push(v);
        }

        let mut edges = Vec::new();
        let mut seen = std::collections::HashSet::new();
        let push = |edges: &mut Vec<(usize, usize, Weight)>,
                        seen: &mut std::collections::HashSet<(usize, usize)>,
                        u: usize,
                        v: usize,
                        w: Weight| {
            if u != v && seen.insert((u, v)) {
                edges.push((u, v, w));
            }
        };

        // Planted path: one vertex per layer.
        let path: Vec<usize> = (0..layers)
            .map(|l| by_layer[l][rng.gen_range(0..by_layer[l].len())])
            .collect();
        for win in path.windows(2) {
            let w = if weighted {
                rng.gen_range(1..=w_max.max(1))
            } else {
                1
            };
            push(&mut edges, &mut seen, win[0], win[1], w);
        }

        // Random forward edges, layer i -> i+1 only.
        for l in 0..layers - 1 {
            let next = &by_layer[l + 1];
            let p = (fwd_degree / next.len() as f64).min(1.0);
            for &u in &by_layer[l] {
                let mut any = false;
                for &v in next {
                    if rng.gen_bool(p) {
                        let w = if weighted {
                            rng.gen_range(1..=w_max.max(1))
                        } else {
                            1
                        };
                        push(&mut edges, &mut seen, u, v, w);
                        any = true;
                    }
                }
                if !any {
                    let v = next[rng.gen_range(0..next.len())];
                    let w = if weighted {
                        rng.gen_range(1..=w_max.max(1))
                    } else {
                        1
                    };
                    push(&mut edges, &mut seen, u, v, w);
                }
            }
        }
        // Every non-first-layer vertex needs an in-edge for reachability of
        // the underlying graph; give isolated heads a random predecessor.
        for l in 1..layers {
            let prev = &by_layer[l - 1];
            for &v in &by_layer[l] {
                if !edges.iter().any(|&(_, y, _)| y == v) {
                    let u = prev[rng.gen_range(0..prev.len())];
                    let w = if weighted {
                        rng.gen_range(1..=w_max.max(1))
                    } else {
                        1
                    };
                    push(&mut edges, &mut seen, u, v, w);
                }
            }
        }

        match Graph::new(n, true, weighted, edges) {
            Ok(g) => return Ok((g, path[0], path[layers - 1])),
            Err(GraphError::Disconnected) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(GraphError::ConnectivityRetries(CONNECTIVITY_RETRIES))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p_one_gives_complete_graph() {
        let g = random_graph(4, 1.0, false, false, 1, 0).unwrap();
        assert_eq!(g.m(), 6); // K4
    }

    #[test]
    fn fixed_seed_is_deterministic() {
        let a = random_graph(32, 0.2, true, true, 100, 7).unwrap();
        let b = random_graph(32, 0.2, true, true, 100, 7).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn edge_count_within_three_sigma() {
        // Binomial oracle: mean = p * n * (n - 1) ordered pairs for directed
        // graphs, stddev = sqrt(mean * (1 - p)).
        let (n, p) = (32, 0.2);
        let trials = n * (n - 1);
        let mean = p * trials as f64;
        let sigma = (mean * (1.0 - p)).sqrt();
        let g = random_graph(n, p, true, true, 100, 7).unwrap();
        let m = g.m() as f64;
        assert!(
            (m - mean).abs() <= 3.0 * sigma,
            "m={m} outside {mean} +/- 3*{sigma}"
        );
    }

    #[test]
    fn layered_has_exact_hop_distance() {
        let (g, s, t) = layered_graph(LayeredParams {
            n: 64,
            layers: 9,
            fwd_degree: 3.0,
            weighted: false,
            w_max: 1,
            seed: 11,
        })
        .unwrap();
        let (w, path) = crate::oracle::shortest_path_oracle(&g, s, t);
        assert_eq!(w, 8);
        assert_eq!(path.len(), 9);
    }
}
