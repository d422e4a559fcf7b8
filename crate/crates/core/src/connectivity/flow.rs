use std::collections::VecDeque;

/// Integer-capacity flow network solved with Dinic's algorithm.
///
/// Arcs are stored in pairs: arc `e` and `e ^ 1` are each other's reverse.
/// `reset` restores every arc to its original capacity so one network can be
/// reused for many source/sink pairs.
#[derive(Debug, Clone)]
pub struct FlowNetwork {
    head: Vec<usize>,
    to: Vec<usize>,
    next: Vec<usize>,
    cap: Vec<u32>,
    original: Vec<u32>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl FlowNetwork {
    pub fn new(nodes: usize) -> FlowNetwork {
        FlowNetwork {
            head: vec![NIL; nodes],
            to: Vec::new(),
            next: Vec::new(),
            cap: Vec::new(),
            original: Vec::new(),
            level: vec![-1; nodes],
            iter: vec![NIL; nodes],
        }
    }

    pub fn nodes(&self) -> usize {
        self.head.len()
    }

    fn push_arc(&mut self, from: usize, to: usize, cap: u32) {
        self.to.push(to);
        self.next.push(self.head[from]);
        self.cap.push(cap);
        self.original.push(cap);
        self.head[from] = self.to.len() - 1;
    }

    /// Directed arc `from -> to` with the given capacity (reverse arc has 0).
    pub fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        self.push_arc(from, to, cap);
        self.push_arc(to, from, 0);
    }

    /// Undirected edge: capacity `cap` in both directions on one arc pair.
    pub fn add_edge(&mut self, u: usize, v: usize, cap: u32) {
        self.push_arc(u, v, cap);
        self.push_arc(v, u, cap);
    }

    pub fn reset(&mut self) {
        self.cap.copy_from_slice(&self.original);
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.fill(-1);
        self.level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let mut e = self.head[u];
            while e != NIL {
                let v = self.to[e];
                if self.cap[e] > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    queue.push_back(v);
                }
                e = self.next[e];
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, pushed: u32) -> u32 {
        if u == t {
            return pushed;
        }
        while self.iter[u] != NIL {
            let e = self.iter[u];
            let v = self.to[e];
            if self.cap[e] > 0 && self.level[v] == self.level[u] + 1 {
                let got = self.dfs(v, t, pushed.min(self.cap[e]));
                if got > 0 {
                    self.cap[e] -= got;
                    self.cap[e ^ 1] += got;
                    return got;
                }
            }
            self.iter[u] = self.next[e];
        }
        0
    }

    /// Maximum `s -> t` flow, stopping early once `limit` units are routed.
    /// Capacities are left in their residual state.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: u32) -> u32 {
        let mut flow = 0;
        while flow < limit && self.bfs(s, t) {
            self.iter.copy_from_slice(&self.head);
            while flow < limit {
                let got = self.dfs(s, t, limit - flow);
                if got == 0 {
                    break;
                }
                flow += got;
            }
        }
        flow
    }

    /// Nodes reachable from `s` through arcs with residual capacity.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let mut e = self.head[u];
            while e != NIL {
                let v = self.to[e];
                if self.cap[e] > 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
                e = self.next[e];
            }
        }
        seen
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_directed_instance() {
        let mut net = FlowNetwork::new(6);
        for (u, v, c) in [
            (0, 1, 10),
            (0, 2, 10),
            (1, 3, 4),
            (1, 4, 8),
            (2, 4, 9),
            (3, 5, 10),
            (4, 3, 6),
            (4, 5, 10),
        ] {
            net.add_arc(u, v, c);
        }
        assert_eq!(net.max_flow(0, 5, u32::MAX), 19);
        net.reset();
        assert_eq!(net.max_flow(0, 5, 7), 7);
    }

    #[test]
    fn undirected_unit_edges() {
        // Two parallel routes between 0 and 3.
        let mut net = FlowNetwork::new(4);
        for (u, v) in [(0, 1), (1, 3), (0, 2), (2, 3)] {
            net.add_edge(u, v, 1);
        }
        assert_eq!(net.max_flow(0, 3, u32::MAX), 2);
        let side = net.residual_reachable(0);
        assert_eq!(side, vec![true, false, false, false]);
    }

    #[test]
    fn disconnected_sink() {
        let mut net = FlowNetwork::new(4);
        net.add_edge(0, 1, 1);
        net.add_edge(2, 3, 1);
        assert_eq!(net.max_flow(0, 3, u32::MAX), 0);
    }
}
