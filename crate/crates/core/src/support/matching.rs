use super::SupportGraph;

const NONE: u32 = u32::MAX;

/// A set of pairwise vertex-disjoint edges of the loop subgraph `G'`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    pairs: Vec<(u32, u32)>,
}

impl Matching {
    /// Edges as `(a, b)` with `a < b`, sorted.
    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    /// The matching number `nu` when this matching is maximum.
    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    pub fn covers(&self, v: u32) -> bool {
        self.pairs.iter().any(|&(a, b)| a == v || b == v)
    }

    /// Disjoint edges, all inside `G'`.
    pub fn is_valid_for(&self, g: &SupportGraph) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.pairs.iter().all(|&(a, b)| {
            a != b
                && g.has_edge(a, b)
                && g.has_loop(a)
                && g.has_loop(b)
                && seen.insert(a)
                && seen.insert(b)
        })
    }
}

/// Maximum matching of `G'` (vertices with a loop, the edges among them).
/// Loops only decide membership in `G'`; they are never matched.
pub fn matching_number(g: &SupportGraph) -> Matching {
    let verts: Vec<u32> = g.loop_vertices().collect();
    let mut local = vec![NONE; g.vertex_count()];
    for (k, &v) in verts.iter().enumerate() {
        local[v as usize] = k as u32;
    }
    let adj: Vec<Vec<u32>> = verts
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter_map(|&w| (local[w as usize] != NONE).then_some(local[w as usize]))
                .collect()
        })
        .collect();
    let mate = max_cardinality_matching(&adj);
    let mut pairs: Vec<(u32, u32)> = mate
        .iter()
        .enumerate()
        .filter_map(|(a, m)| m.filter(|&b| (a as u32) < b).map(|b| (verts[a], verts[b as usize])))
        .map(|(a, b)| (a.min(b), a.max(b)))
        .collect();
    pairs.sort_unstable();
    Matching { pairs }
}

/// Edmonds' blossom algorithm on an undirected graph given by adjacency
/// lists. Returns the mate of every vertex.
pub fn max_cardinality_matching(adj: &[Vec<u32>]) -> Vec<Option<u32>> {
    let n = adj.len();
    let mut st = BlossomState {
        adj,
        mate: vec![NONE; n],
        parent: vec![NONE; n],
        base: (0..n as u32).collect(),
        used: vec![false; n],
        blossom: vec![false; n],
        queue: Vec::with_capacity(n),
    };
    // greedy start
    for v in 0..n {
        if st.mate[v] == NONE {
            if let Some(&w) = adj[v].iter().find(|&&w| st.mate[w as usize] == NONE && w as usize != v) {
                st.mate[v] = w;
                st.mate[w as usize] = v as u32;
            }
        }
    }
    for root in 0..n as u32 {
        if st.mate[root as usize] == NONE {
            if let Some(end) = st.find_augmenting_path(root) {
                st.augment(end);
            }
        }
    }
    st.mate.iter().map(|&m| (m != NONE).then_some(m)).collect()
}

struct BlossomState<'a> {
    adj: &'a [Vec<u32>],
    mate: Vec<u32>,
    parent: Vec<u32>,
    base: Vec<u32>,
    used: Vec<bool>,
    blossom: Vec<bool>,
    queue: Vec<u32>,
}

impl BlossomState<'_> {
    fn lca(&self, mut a: u32, mut b: u32) -> u32 {
        let mut on_path = vec![false; self.mate.len()];
        loop {
            a = self.base[a as usize];
            on_path[a as usize] = true;
            if self.mate[a as usize] == NONE {
                break;
            }
            a = self.parent[self.mate[a as usize] as usize];
        }
        loop {
            b = self.base[b as usize];
            if on_path[b as usize] {
                return b;
            }
            b = self.parent[self.mate[b as usize] as usize];
        }
    }

    fn mark_path(&mut self, mut v: u32, b: u32, mut child: u32) {
        while self.base[v as usize] != b {
            let m = self.mate[v as usize];
            self.blossom[self.base[v as usize] as usize] = true;
            self.blossom[self.base[m as usize] as usize] = true;
            self.parent[v as usize] = child;
            child = m;
            v = self.parent[m as usize];
        }
    }

    fn find_augmenting_path(&mut self, root: u32) -> Option<u32> {
        let n = self.mate.len();
        self.used.iter_mut().for_each(|u| *u = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i as u32;
        }
        self.used[root as usize] = true;
        self.queue.clear();
        self.queue.push(root);
        let mut head = 0;
        while head < self.queue.len() {
            let v = self.queue[head];
            head += 1;
            for k in 0..self.adj[v as usize].len() {
                let to = self.adj[v as usize][k];
                if self.base[v as usize] == self.base[to as usize] || self.mate[v as usize] == to {
                    continue;
                }
                let to_mate = self.mate[to as usize];
                if to == root || (to_mate != NONE && self.parent[to_mate as usize] != NONE) {
                    let cur = self.lca(v, to);
                    self.blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.blossom[self.base[i] as usize] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push(i as u32);
                            }
                        }
                    }
                } else if self.parent[to as usize] == NONE {
                    self.parent[to as usize] = v;
                    if to_mate == NONE {
                        return Some(to);
                    }
                    self.used[to_mate as usize] = true;
                    self.queue.push(to_mate);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: u32) {
        while v != NONE {
            let pv = self.parent[v as usize];
            let ppv = self.mate[pv as usize];
            self.mate[v as usize] = pv;
            self.mate[pv as usize] = v;
            v = ppv;
        }
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::support::tests::example_3_1;
    use proptest::prelude::*;

    /// Exhaustive maximum matching over the edge list.
    pub(crate) fn brute_force_matching(vertices: usize, edges: &[(u32, u32)]) -> usize {
        fn go(edges: &[(u32, u32)], used: &mut Vec<bool>) -> usize {
            match edges.split_first() {
                None => 0,
                Some((&(a, b), rest)) => {
                    let skip = go(rest, used);
                    if !used[a as usize] && !used[b as usize] {
                        used[a as usize] = true;
                        used[b as usize] = true;
                        let take = 1 + go(rest, used);
                        used[a as usize] = false;
                        used[b as usize] = false;
                        skip.max(take)
                    } else {
                        skip
                    }
                }
            }
        }
        go(edges, &mut vec![false; vertices])
    }

    #[test]
    fn example_3_1_matching() {
        let g = example_3_1().graph();
        let m = matching_number(&g);
        assert_eq!(m.size(), 2);
        assert_eq!(m.pairs(), &[(0, 3), (1, 2)]);
        assert!(m.is_valid_for(&g));
        let gp: Vec<_> = g.loop_subgraph_edges().collect();
        assert_eq!(brute_force_matching(5, &gp), 2);
    }

    #[test]
    fn no_loops_means_zero() {
        let g = SupportGraph::from_parts(4, &[(0, 1), (2, 3)], &[]);
        assert_eq!(matching_number(&g).size(), 0);
    }

    #[test]
    fn complete_looped_graphs() {
        for t in 1..=3u32 {
            let v = 2 * t;
            let edges: Vec<(u32, u32)> = (0..v).flat_map(|a| (a + 1..v).map(move |b| (a, b))).collect();
            let loops: Vec<u32> = (0..v).collect();
            let g = SupportGraph::from_parts(v as usize, &edges, &loops);
            assert_eq!(brute_force_matching(v as usize, &edges), t as usize);
            assert_eq!(matching_number(&g).size(), t as usize);
        }
    }

    #[test]
    fn odd_cycle_needs_blossom() {
        // 5-cycle with a pendant path: greedy start can get stuck without contraction
        let adj_edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (2, 6), (6, 7)];
        let loops: Vec<u32> = (0..8).collect();
        let g = SupportGraph::from_parts(8, &adj_edges, &loops);
        assert_eq!(matching_number(&g).size(), brute_force_matching(8, &adj_edges));
    }

    proptest! {
        #[test]
        fn agrees_with_brute_force(
            vertices in 1usize..=10,
            raw in proptest::collection::vec((0u32..10, 0u32..10), 0..25),
            loop_mask in 0u32..1024,
        ) {
            let edges: Vec<(u32, u32)> = raw
                .into_iter()
                .map(|(a, b)| (a % vertices as u32, b % vertices as u32))
                .filter(|(a, b)| a != b)
                .collect();
            let loops: Vec<u32> = (0..vertices as u32).filter(|v| loop_mask >> v & 1 == 1).collect();
            let g = SupportGraph::from_parts(vertices, &edges, &loops);
            let gp: Vec<_> = g.loop_subgraph_edges().collect();
            let m = matching_number(&g);
            prop_assert!(m.is_valid_for(&g));
            prop_assert_eq!(m.size(), brute_force_matching(vertices, &gp));
        }
    }
}
