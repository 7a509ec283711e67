//! Dinic max-flow on small integer networks; enough for the demand-2
//! bipartite matchings the free-action constructor runs on window cores.

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: u32,
    /// Capacity at construction; zero for residual twins.
    orig: u32,
    rev: usize,
}

#[derive(Debug)]
pub struct FlowNetwork {
    graph: Vec<Vec<Edge>>,
}

impl FlowNetwork {
    pub fn new(n: usize) -> Self {
        FlowNetwork {
            graph: vec![Vec::new(); n],
        }
    }

    pub fn add_edge(&mut self, from: usize, to: usize, cap: u32) {
        let rev_from = self.graph[to].len();
        let rev_to = self.graph[from].len();
        self.graph[from].push(Edge {
            to,
            cap,
            orig: cap,
            rev: rev_from,
        });
        self.graph[to].push(Edge {
            to: from,
            cap: 0,
            orig: 0,
            rev: rev_to,
        });
    }

    fn levels(&self, s: usize) -> Vec<i32> {
        let mut level = vec![-1; self.graph.len()];
        level[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for e in &self.graph[v] {
                if e.cap > 0 && level[e.to] < 0 {
                    level[e.to] = level[v] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        level
    }

    fn dfs(
        &mut self,
        v: usize,
        t: usize,
        f: u32,
        level: &[i32],
        iter: &mut [usize],
    ) -> u32 {
        if v == t {
            return f;
        }
        while iter[v] < self.graph[v].len() {
            let (to, cap, rev) = {
                let e = &self.graph[v][iter[v]];
                (e.to, e.cap, e.rev)
            };
            if cap > 0 && level[v] < level[to] {
                let d = self.dfs(to, t, f.min(cap), level, iter);
                if d > 0 {
                    self.graph[v][iter[v]].cap -= d;
                    self.graph[to][rev].cap += d;
                    return d;
                }
            }
            iter[v] += 1;
        }
        0
    }

    pub fn max_flow(&mut self, s: usize, t: usize) -> u32 {
        let mut flow = 0;
        loop {
            let level = self.levels(s);
            if level[t] < 0 {
                return flow;
            }
            let mut iter = vec![0; self.graph.len()];
            loop {
                let f = self.dfs(s, t, u32::MAX, &level, &mut iter);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
    }

    /// Residual reachability from `s` after a max-flow run; the s-side of a
    /// minimum cut.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.graph.len()];
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for e in &self.graph[v] {
                if e.cap > 0 && !seen[e.to] {
                    seen[e.to] = true;
                    queue.push_back(e.to);
                }
            }
        }
        seen
    }

    /// Forward edges out of `v` carrying flow, as (to, flow) pairs.
    pub fn saturated_edges(&self, v: usize) -> Vec<(usize, u32)> {
        self.graph[v]
            .iter()
            .filter(|e| e.orig > 0 && e.cap < e.orig)
            .map(|e| (e.to, e.orig - e.cap))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bipartite_matching() {
        // 2 sources, 2 sinks, crossing edges; S=0, T=5.
        let mut net = FlowNetwork::new(6);
        net.add_edge(0, 1, 1);
        net.add_edge(0, 2, 1);
        net.add_edge(1, 3, 1);
        net.add_edge(1, 4, 1);
        net.add_edge(2, 3, 1);
        net.add_edge(3, 5, 1);
        net.add_edge(4, 5, 1);
        assert_eq!(net.max_flow(0, 5), 2);
    }

    #[test]
    fn cut_detection() {
        // Source feeds 3 units into a single cap-1 bottleneck.
        let mut net = FlowNetwork::new(4);
        net.add_edge(0, 1, 3);
        net.add_edge(1, 2, 1);
        net.add_edge(2, 3, 3);
        assert_eq!(net.max_flow(0, 3), 1);
        let reach = net.residual_reachable(0);
        assert!(reach[1]);
        assert!(!reach[2]);
    }
}
