//! Replacement-path ground truth: one edge-deleted shortest-path computation
//! per path edge.

use super::{shortest_path_forbidden, Forbidden};
use crate::graph::{Graph, PathSpec, Weight};

/// Exact replacement weight for the single path edge `(u, v)`: the shortest
/// `s`-`t` distance in `G - (u, v)`. Sentinel when no replacement exists.
pub fn oracle_replacement_weight(g: &Graph, p: &PathSpec, u: usize, v: usize) -> Weight {
    shortest_path_forbidden(g, p.s, p.t, &Forbidden::single(u, v)).0
}

/// Per-edge exact replacement weights for every edge of `P_st`, in path
/// order.
pub fn oracle_rpaths(g: &Graph, p: &PathSpec) -> Vec<Weight> {
    (0..p.h_st)
        .map(|j| {
            let (u, v) = p.edge(j);
            oracle_replacement_weight(g, p, u, v)
        })
        .collect()
}

/// Second simple shortest path weight: the minimum replacement weight.
pub fn oracle_sisp2(g: &Graph, p: &PathSpec) -> Weight {
    oracle_rpaths(g, p).into_iter().min().unwrap_or(g.sentinel())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{random_graph, Graph};
    use crate::oracle::{bellman_ford, Forbidden};

    #[test]
    fn edgeless_detour_gives_sentinel() {
        // Path graph: removing any edge disconnects s from t.
        let g = Graph::new(4, false, false, vec![(0, 1, 1), (1, 2, 1), (2, 3, 1)]).unwrap();
        let p = PathSpec::new(&g, vec![0, 1, 2, 3]).unwrap();
        assert!(oracle_rpaths(&g, &p).iter().all(|&w| w == g.sentinel()));
        assert_eq!(oracle_sisp2(&g, &p), g.sentinel());
    }

    #[test]
    fn c4_replacements_use_the_complement() {
        let g = Graph::new(4, false, false, vec![(0, 1, 1), (1, 2, 1), (2, 3, 1), (0, 3, 1)])
            .unwrap();
        let p = PathSpec::new(&g, vec![0, 1]).unwrap();
        assert_eq!(oracle_rpaths(&g, &p), vec![3]);
    }

    #[test]
    fn agrees_with_independent_bellman_ford_oracle() {
        let mut checked = 0;
        for seed in 0..100 {
            let Ok(g) = random_graph(20, 0.25, true, true, 30, seed) else {
                continue;
            };
            let Ok(p) = PathSpec::from_endpoints(&g, 0, g.n() - 1) else {
                continue;
            };
            for j in 0..p.h_st {
                let (u, v) = p.edge(j);
                let bf = bellman_ford(&g, p.s, &Forbidden::single(u, v))[p.t];
                assert_eq!(oracle_replacement_weight(&g, &p, u, v), bf);
                checked += 1;
            }
        }
        assert!(checked > 100, "exercised {checked} edges");
    }
}
