//! Weight scaling for the approximation algorithms.

use super::{Graph, GraphError, Weight};

/// Scaled weight `w^i(x, y) = ceil(2 h w(x, y) / (eps * 2^i))`, evaluated in
/// integer arithmetic as `ceil(2 h w * eps_den / (eps_num * 2^i))` for a
/// rational `eps = eps_num / eps_den`.
pub fn scaled_weight(
    w: Weight,
    h: u64,
    eps_num: u64,
    eps_den: u64,
    level: u32,
) -> Option<Weight> {
    let num = (2u128)
        .checked_mul(h as u128)?
        .checked_mul(w as u128)?
        .checked_mul(eps_den as u128)?;
    let den = (eps_num as u128).checked_mul(1u128.checked_shl(level)?)?;
    let scaled = num.div_ceil(den);
    Weight::try_from(scaled).ok()
}

/// Replaces every weight by `w^i` for level `i >= 1`, keeping the topology
/// identical. Zero-weight edges stay zero at every level. Fails if any scaled
/// weight would overflow the sentinel range.
pub fn scale_weights(
    g: &Graph,
    level: u32,
    eps_num: u64,
    eps_den: u64,
    h: u64,
) -> Result<Graph, GraphError> {
    assert!(g.weighted(), "scaling applies to weighted graphs");
    assert!(level >= 1 && h >= 1 && eps_num > 0 && eps_den > 0);
    let mut edges = Vec::with_capacity(g.m());
    let mut w_top: Weight = 0;
    for &(u, v, w) in g.edges() {
        let wi = scaled_weight(w, h, eps_num, eps_den, level).ok_or(GraphError::ScaleOverflow)?;
        w_top = w_top.max(wi);
        edges.push((u, v, wi));
    }
    // Sentinel arithmetic for the scaled graph must stay in range.
    if (g.n() as u128) * (w_top as u128) >= u64::MAX as u128 / 4 {
        return Err(GraphError::ScaleOverflow);
    }
    g.with_edges(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::random_graph;

    #[test]
    fn formula_example() {
        // w=4, h=8, eps=1, i=3 -> ceil(64 / 8) = 8.
        assert_eq!(scaled_weight(4, 8, 1, 1, 3), Some(8));
        // Zero weight stays zero at every level.
        for i in 1..20 {
            assert_eq!(scaled_weight(0, 8, 1, 4, i), Some(0));
        }
    }

    #[test]
    fn scaled_levels_are_monotonically_nonincreasing() {
        let g = random_graph(24, 0.3, true, false, 50, 3).unwrap();
        let h = 32;
        for i in 1..12 {
            let a = scale_weights(&g, i, 1, 4, h).unwrap();
            let b = scale_weights(&g, i + 1, 1, 4, h).unwrap();
            for (ea, eb) in a.edges().iter().zip(b.edges()) {
                assert_eq!((ea.0, ea.1), (eb.0, eb.1));
                assert!(eb.2 <= ea.2, "w^{} = {} > w^{} = {}", i + 1, eb.2, i, ea.2);
            }
        }
    }

    #[test]
    fn topology_is_preserved() {
        let g = random_graph(16, 0.4, true, true, 30, 9).unwrap();
        let s = scale_weights(&g, 2, 1, 4, 16).unwrap();
        assert_eq!(g.n(), s.n());
        assert_eq!(g.directed(), s.directed());
        let tops: Vec<(usize, usize)> = g.edges().iter().map(|&(u, v, _)| (u, v)).collect();
        let tops2: Vec<(usize, usize)> = s.edges().iter().map(|&(u, v, _)| (u, v)).collect();
        assert_eq!(tops, tops2);
    }
}
