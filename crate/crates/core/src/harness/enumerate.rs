use std::ops::ControlFlow;

use crate::error::{invalid, Result};
use crate::graph::Graph;

/// Largest order accepted by the enumerators.
pub const MAX_ENUMERATION_ORDER: usize = 10;

/// Which labelled graphs an enumeration visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Labelling {
    /// Every labelled graph.
    All,
    /// Only graphs with `N(0) = {1, ..., d}` whose vertex 1 has neighbours
    /// forming a prefix of `2..=d` and a prefix of `d+1..n`. Every
    /// isomorphism class still appears at least once, typically many fewer
    /// times than under [`Labelling::All`].
    Normalized,
}

struct Search<'a> {
    n: usize,
    d: usize,
    mode: Labelling,
    rows: [u16; MAX_ENUMERATION_ORDER],
    deg: [usize; MAX_ENUMERATION_ORDER],
    visit: &'a mut dyn FnMut(&Graph) -> ControlFlow<()>,
}

impl Search<'_> {
    fn linked(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    // Whether the labelling mode permits (u, v) to be present / absent.
    fn allowed(&self, u: usize, v: usize, present: bool) -> bool {
        if self.mode == Labelling::All {
            return true;
        }
        match u {
            0 => present == (v <= self.d),
            1 if present && v > 2 && v != self.d + 1 => self.linked(1, v - 1),
            _ => true,
        }
    }

    fn run(&mut self, u: usize, v: usize) -> ControlFlow<()> {
        let (n, d) = (self.n, self.d);
        if v == n {
            if self.deg[u] != d {
                return ControlFlow::Continue(());
            }
            if u + 2 >= n {
                if u + 2 == n && self.deg[n - 1] != d {
                    return ControlFlow::Continue(());
                }
                let rows = self.rows;
                let g = Graph::from_fn(n, |a, b| rows[a] >> b & 1 == 1);
                return (self.visit)(&g);
            }
            return self.run(u + 1, u + 2);
        }
        if self.deg[u] < d && self.deg[v] < d && self.allowed(u, v, true) {
            self.rows[u] |= 1 << v;
            self.rows[v] |= 1 << u;
            self.deg[u] += 1;
            self.deg[v] += 1;
            let flow = self.run(u, v + 1);
            self.rows[u] &= !(1 << v);
            self.rows[v] &= !(1 << u);
            self.deg[u] -= 1;
            self.deg[v] -= 1;
            flow?;
        }
        // Leaving (u, v) out must still allow u to reach degree d in its row,
        // and v to reach it through rows u+1..v and its own row.
        if n - v > d - self.deg[u] && n - u - 2 >= d - self.deg[v] && self.allowed(u, v, false) {
            self.run(u, v + 1)?;
        }
        ControlFlow::Continue(())
    }
}

fn check(n: usize, d: usize) -> Result<()> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(invalid(format!("enumeration supports 1 <= n <= {MAX_ENUMERATION_ORDER}, got {n}")));
    }
    if d >= n || n * d % 2 == 1 {
        return Err(invalid(format!("no {d}-regular graph on {n} vertices")));
    }
    Ok(())
}

/// Calls `visit` on each `d`-regular graph on `0..n` selected by `mode`,
/// in lexicographic order of the upper-triangle adjacency bits (edges
/// before non-edges). Stops early when `visit` breaks.
pub fn for_each_regular(
    n: usize,
    d: usize,
    mode: Labelling,
    visit: &mut dyn FnMut(&Graph) -> ControlFlow<()>,
) -> Result<ControlFlow<()>> {
    check(n, d)?;
    if n == 1 {
        return Ok(visit(&Graph::empty(1)));
    }
    let mut search = Search {
        n,
        d,
        mode,
        rows: [0; MAX_ENUMERATION_ORDER],
        deg: [0; MAX_ENUMERATION_ORDER],
        visit,
    };
    Ok(search.run(0, 1))
}

/// Every labelled `d`-regular graph on `n <= 10` vertices.
///
/// ```
/// use spectralcut::harness::enumerate_regular;
///
/// assert_eq!(enumerate_regular(4, 3).unwrap().len(), 1);
/// assert_eq!(enumerate_regular(5, 2).unwrap().len(), 12);
/// ```
pub fn enumerate_regular(n: usize, d: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    let _ = for_each_regular(n, d, Labelling::All, &mut |g| {
        out.push(g.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

pub fn count_regular(n: usize, d: usize, mode: Labelling) -> Result<u64> {
    let mut count = 0;
    let _ = for_each_regular(n, d, mode, &mut |_| {
        count += 1;
        ControlFlow::Continue(())
    })?;
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn canonical(g: &Graph) -> Vec<bool> {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<bool>> = None;
        loop {
            let code: Vec<bool> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .map(|(u, v)| g.has_edge(perm[u], perm[v]))
                .collect();
            if best.as_ref().is_none_or(|b| code > *b) {
                best = Some(code);
            }
            // Next lexicographic permutation.
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
            perm.swap(i, j);
            perm[i + 1..].reverse();
        }
        best.unwrap()
    }

    fn classes(n: usize, d: usize, mode: Labelling) -> BTreeSet<Vec<bool>> {
        let mut out = BTreeSet::new();
        let _ = for_each_regular(n, d, mode, &mut |g| {
            assert_eq!(g.is_regular(), Some(d));
            out.insert(canonical(g));
            ControlFlow::Continue(())
        })
        .unwrap();
        out
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_regular(4, 3, Labelling::All).unwrap(), 1);
        assert_eq!(count_regular(5, 2, Labelling::All).unwrap(), 12);
        assert_eq!(count_regular(1, 0, Labelling::All).unwrap(), 1);
        assert_eq!(count_regular(6, 0, Labelling::All).unwrap(), 1);
        // Perfect matchings of K6.
        assert_eq!(count_regular(6, 1, Labelling::All).unwrap(), 15);
    }

    #[test]
    fn brute_force_count_for_six_vertices() {
        let pairs: Vec<(usize, usize)> = (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v))).collect();
        let brute = (0u32..1 << 15)
            .filter(|mask| {
                let mut deg = [0; 6];
                for (k, &(u, v)) in pairs.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        deg[u] += 1;
                        deg[v] += 1;
                    }
                }
                deg.iter().all(|&x| x == 3)
            })
            .count() as u64;
        assert_eq!(count_regular(6, 3, Labelling::All).unwrap(), brute);
        assert_eq!(brute, 70);
    }

    #[test]
    fn normalized_labelling_keeps_every_class() {
        for n in 1..=7 {
            for d in 0..n {
                if n * d % 2 == 1 {
                    continue;
                }
                let all = classes(n, d, Labelling::All);
                assert_eq!(all, classes(n, d, Labelling::Normalized), "n = {n}, d = {d}");
            }
        }
    }

    #[test]
    fn cubic_graphs_on_eight_vertices() {
        assert_eq!(classes(8, 3, Labelling::Normalized).len(), 6);
    }

    #[test]
    fn early_stop() {
        let mut seen = 0;
        let flow = for_each_regular(6, 2, Labelling::All, &mut |_| {
            seen += 1;
            if seen == 3 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .unwrap();
        assert_eq!((flow, seen), (ControlFlow::Break(()), 3));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(count_regular(11, 4, Labelling::All).is_err());
        assert!(count_regular(5, 3, Labelling::All).is_err());
        assert!(count_regular(4, 4, Labelling::All).is_err());
    }
}
