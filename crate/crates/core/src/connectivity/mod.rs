//! Exact edge- and vertex-connectivity by unit-capacity max-flow.
//!
//! Edge connectivity is `min_{v != 0} λ(0, v)` where `λ(0, v)` is the maximum
//! number of edge-disjoint `0–v` paths (Menger). The minimizing cut is read
//! off as the set of vertices reachable from `0` in the final residual
//! network. Vertex connectivity uses the usual split network in which every
//! vertex becomes an arc of capacity one.

mod flow;

pub use flow::FlowNetwork;

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::verdict::Verdict;

/// A vertex set `S` together with `r = |[S, V \ S]|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutCertificate {
    /// Sorted, `1 <= |side| <= n - 1`.
    pub side: Vec<usize>,
    pub r: usize,
}

impl CutCertificate {
    pub fn side_sizes(&self, n: usize) -> (usize, usize) {
        (self.side.len(), n - self.side.len())
    }
}

fn unit_network(g: &Graph) -> FlowNetwork {
    let mut net = FlowNetwork::new(g.order());
    for (u, v) in g.edges() {
        net.add_edge(u, v, 1);
    }
    net
}

/// Maximum number of edge-disjoint paths between `s` and `t`.
pub fn local_edge_connectivity(g: &Graph, s: usize, t: usize) -> Result<usize> {
    if s >= g.order() || t >= g.order() || s == t {
        return Err(invalid("source and sink must be distinct vertices"));
    }
    Ok(unit_network(g).max_flow(s, t, u32::MAX) as usize)
}

/// `κ'(g)` with a minimizing vertex set.
///
/// The trivial cut around a minimum-degree vertex is returned unless a
/// strictly smaller cut exists. Any cut below the minimum degree has a
/// vertex of a dominating set on each side, so flows are only run from the
/// first dominating vertex to the others. A disconnected graph yields `0`
/// with the component of vertex `0`.
pub fn edge_connectivity(g: &Graph) -> Result<(usize, CutCertificate)> {
    let n = g.order();
    if n < 2 {
        return Err(invalid("edge connectivity needs at least two vertices"));
    }
    let comps = g.components();
    if comps.len() > 1 {
        let side = comps.into_iter().next().expect("non-empty graph");
        return Ok((0, CutCertificate { side, r: 0 }));
    }

    let low = (0..n).min_by_key(|&v| g.degree(v)).expect("non-empty graph");
    let mut best = g.degree(low) as u32;
    let mut side = vec![low];
    let mut net = unit_network(g);
    for sink in greedy_dominating_set(g).into_iter().skip(1) {
        net.reset();
        let flow = net.max_flow(0, sink, best);
        if flow < best {
            best = flow;
            let reach = net.residual_reachable(0);
            side = (0..n).filter(|&v| reach[v]).collect();
        }
    }
    let r = best as usize;
    debug_assert_eq!(g.cut_size(&side).ok(), Some(r));
    Ok((r, CutCertificate { side, r }))
}

// Vertices in index order, each kept when none of its closed neighbourhood
// is kept yet. Always starts with vertex 0.
fn greedy_dominating_set(g: &Graph) -> Vec<usize> {
    let mut covered = vec![false; g.order()];
    let mut set = Vec::new();
    for v in 0..g.order() {
        if !covered[v] {
            set.push(v);
            covered[v] = true;
            for u in g.neighbors(v) {
                covered[u] = true;
            }
        }
    }
    set
}

/// `κ(g)`: `n - 1` for complete graphs, otherwise the minimum over
/// non-adjacent pairs of the number of internally vertex-disjoint paths.
pub fn vertex_connectivity(g: &Graph) -> Result<usize> {
    let n = g.order();
    if n < 2 {
        return Err(invalid("vertex connectivity needs at least two vertices"));
    }
    if g.is_complete() {
        return Ok(n - 1);
    }
    if !g.is_connected() {
        return Ok(0);
    }
    // Node 2v is v_in, 2v+1 is v_out.
    let mut net = FlowNetwork::new(2 * n);
    let big = n as u32;
    for v in 0..n {
        net.add_arc(2 * v, 2 * v + 1, 1);
    }
    for (u, v) in g.edges() {
        net.add_arc(2 * u + 1, 2 * v, big);
        net.add_arc(2 * v + 1, 2 * u, big);
    }
    let mut best = (n - 2) as u32;
    for u in 0..n {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                continue;
            }
            net.reset();
            best = best.min(net.max_flow(2 * u + 1, 2 * v, best));
        }
    }
    Ok(best as usize)
}

/// `Some(δ)` when `g` is connected with `δ(g) >= n/2`, in which case every
/// edge cut has at least `δ` edges and `κ'(g) = δ(g)`.
pub fn check_dense_edge_conn(g: &Graph) -> Option<usize> {
    let delta = g.min_degree();
    (g.order() >= 1 && g.is_connected() && 2 * delta >= g.order()).then_some(delta)
}

/// Checks the side-size bounds for a minimum cut of a `d`-regular graph with
/// `κ' = r <= d - 1`: both sides have at least `d + 1` vertices, and at least
/// `d + 2` when `r` is odd.
///
/// `cert` must be a minimum cut; only its boundary size is re-verified here.
pub fn check_cut_side_sizes(g: &Graph, cert: &CutCertificate) -> Result<Verdict> {
    let d = g.is_regular().ok_or(Error::NotRegular)?;
    let n = g.order();
    if cert.side.is_empty() || cert.side.len() >= n {
        return Err(invalid("certificate side must be a proper non-empty subset"));
    }
    let actual = g.cut_size(&cert.side)?;
    if actual != cert.r {
        return Err(invalid(format!(
            "certificate claims r = {} but the boundary has {actual} edges",
            cert.r
        )));
    }
    if cert.r >= d {
        return Ok(Verdict::Inapplicable(format!("r = {} is not below d = {d}", cert.r)));
    }
    let need = if cert.r % 2 == 1 { d + 2 } else { d + 1 };
    let (s, s_bar) = cert.side_sizes(n);
    let margin = s.min(s_bar) as f64 - need as f64;
    Ok(Verdict::from_margin(margin, || {
        format!("sides {s} and {s_bar} but r = {} needs at least {need}", cert.r)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force(g: &Graph) -> usize {
        let n = g.order();
        (1u64..(1 << (n - 1)))
            .map(|mask| {
                // Vertex n-1 always lies outside S.
                let s: Vec<usize> = (0..n - 1).filter(|&v| mask >> v & 1 == 1).collect();
                g.cut_size(&s).unwrap()
            })
            .min()
            .unwrap()
    }

    #[test]
    fn small_families() {
        let (r, cert) = edge_connectivity(&Graph::cycle(5).unwrap()).unwrap();
        assert_eq!(r, 2);
        assert_eq!(Graph::cycle(5).unwrap().cut_size(&cert.side).unwrap(), 2);

        let k4 = Graph::complete(4).unwrap();
        let (r, cert) = edge_connectivity(&k4).unwrap();
        assert_eq!(r, 3);
        assert_eq!(brute_force(&k4), 3);
        assert_eq!(cert.side, vec![0]);
    }

    #[test]
    fn disconnected_graphs() {
        let k3 = Graph::complete(3).unwrap();
        let g = k3.disjoint_union(&k3);
        let (r, cert) = edge_connectivity(&g).unwrap();
        assert_eq!(r, 0);
        assert_eq!(cert.side, vec![0, 1, 2]);
        assert_eq!(vertex_connectivity(&g).unwrap(), 0);
    }

    #[test]
    fn rejects_tiny_graphs() {
        assert!(edge_connectivity(&Graph::complete(1).unwrap()).is_err());
        assert!(vertex_connectivity(&Graph::complete(1).unwrap()).is_err());
    }

    #[test]
    fn vertex_connectivity_examples() {
        assert_eq!(vertex_connectivity(&Graph::complete(5).unwrap()).unwrap(), 4);
        assert_eq!(vertex_connectivity(&Graph::cycle(6).unwrap()).unwrap(), 2);
        assert_eq!(vertex_connectivity(&Graph::path(4).unwrap()).unwrap(), 1);
        // Two triangles sharing vertex 2: a cut vertex, but two edges per side.
        let bowtie = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(vertex_connectivity(&bowtie).unwrap(), 1);
        assert_eq!(edge_connectivity(&bowtie).unwrap().0, 2);
    }

    #[test]
    fn whitney_chain_on_petersen() {
        let p = crate::graph::parse_graph6("IheA@GUAo").unwrap();
        let k = vertex_connectivity(&p).unwrap();
        let (kp, _) = edge_connectivity(&p).unwrap();
        assert_eq!((k, kp), (3, 3));
        assert!(k <= kp && kp <= p.min_degree());
    }

    #[test]
    fn dense_graphs() {
        assert_eq!(check_dense_edge_conn(&Graph::complete(6).unwrap()), Some(5));
        assert_eq!(check_dense_edge_conn(&Graph::cycle(8).unwrap()), None);
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(check_dense_edge_conn(&c4), Some(2));
        assert_eq!(edge_connectivity(&c4).unwrap().0, 2);
    }

    #[test]
    fn cut_side_sizes_inapplicable_at_full_connectivity() {
        let k4 = Graph::complete(4).unwrap();
        let (_, cert) = edge_connectivity(&k4).unwrap();
        assert!(matches!(check_cut_side_sizes(&k4, &cert).unwrap(), Verdict::Inapplicable(_)));
        assert!(matches!(
            check_cut_side_sizes(&Graph::path(3).unwrap(), &cert),
            Err(Error::NotRegular)
        ));
        let wrong = CutCertificate { side: vec![0], r: 2 };
        assert!(check_cut_side_sizes(&k4, &wrong).is_err());
    }

    #[test]
    fn cut_side_sizes_tight_on_two_blocks() {
        // Two copies of K4 minus an edge, joined by two edges: 3-regular, κ' = 2.
        let mut edges = vec![];
        for base in [0, 4] {
            for u in 0..4 {
                for v in u + 1..4 {
                    if (u, v) != (0, 1) {
                        edges.push((base + u, base + v));
                    }
                }
            }
        }
        edges.extend([(0, 4), (1, 5)]);
        let g = Graph::from_edges(8, edges).unwrap();
        assert_eq!(g.is_regular(), Some(3));
        let (r, cert) = edge_connectivity(&g).unwrap();
        assert_eq!(r, 2);
        assert_eq!(check_cut_side_sizes(&g, &cert).unwrap(), Verdict::Holds { margin: 0.0 });
    }

    #[test]
    fn matches_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(2..=10);
            let p = rng.gen_range(0.2..0.9);
            let g = Graph::from_fn(n, |_, _| rng.gen_bool(p));
            let (r, cert) = edge_connectivity(&g).unwrap();
            assert_eq!(r, brute_force(&g), "{g:?}");
            assert_eq!(g.cut_size(&cert.side).unwrap(), r);
        }
    }
}
