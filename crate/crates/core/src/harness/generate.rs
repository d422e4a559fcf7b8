use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

const MAX_RESTARTS: usize = 1000;
const TRIES_BEFORE_SCAN: usize = 64;

/// Mixes a base seed with further words (splitmix64 finalizer per word).
pub fn derive_seed(base: u64, parts: &[u64]) -> u64 {
    let mix = |mut z: u64| {
        z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    };
    parts.iter().fold(mix(base), |acc, &p| mix(acc ^ mix(p)))
}

/// A random `d`-regular simple graph on `n` vertices, determined by `seed`.
///
/// Stubs are paired one edge at a time, only ever choosing pairs that keep
/// the graph simple; when no such pair remains the attempt restarts. For
/// `d > (n - 1) / 2` the complement of a random `(n - 1 - d)`-regular graph
/// is returned instead, which keeps the pairing sparse. The distribution is
/// close to, but not exactly, uniform.
///
/// ```
/// use spectralcut::harness::random_regular;
///
/// let g = random_regular(10, 3, 1).unwrap();
/// assert_eq!((g.is_regular(), g.edge_count()), (Some(3), 15));
/// assert_eq!(g, random_regular(10, 3, 1).unwrap());
/// ```
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if n == 0 || d >= n {
        return Err(invalid(format!("need 0 <= d < n, got n = {n}, d = {d}")));
    }
    if n * d % 2 == 1 {
        return Err(invalid(format!("n * d must be even, got n = {n}, d = {d}")));
    }
    if 2 * d > n - 1 {
        return Ok(random_regular(n, n - 1 - d, seed)?.complement());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_RESTARTS {
        if let Some(edges) = pairing_attempt(n, d, &mut rng) {
            return Graph::from_edges(n, edges);
        }
    }
    Err(Error::Infeasible(format!(
        "no simple pairing for n = {n}, d = {d} after {MAX_RESTARTS} restarts"
    )))
}

fn pairing_attempt(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let words = n.div_ceil(64);
    let mut adj = vec![0u64; n * words];
    let linked = |adj: &[u64], u: usize, v: usize| adj[u * words + v / 64] >> (v % 64) & 1 == 1;
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut edges = Vec::with_capacity(n * d / 2);

    while !stubs.is_empty() {
        let mut tries = 0;
        loop {
            let i = rng.gen_range(0..stubs.len());
            let j = rng.gen_range(0..stubs.len());
            let (u, v) = (stubs[i], stubs[j]);
            if u != v && !linked(&adj, u, v) {
                adj[u * words + v / 64] |= 1 << (v % 64);
                adj[v * words + u / 64] |= 1 << (u % 64);
                edges.push((u.min(v), u.max(v)));
                stubs.swap_remove(i.max(j));
                stubs.swap_remove(i.min(j));
                break;
            }
            tries += 1;
            if tries == TRIES_BEFORE_SCAN {
                let stuck = stubs.iter().enumerate().all(|(a, &x)| {
                    stubs[a + 1..].iter().all(|&y| x == y || linked(&adj, x, y))
                });
                if stuck {
                    return None;
                }
                tries = 0;
            }
        }
    }
    Some(edges)
}
