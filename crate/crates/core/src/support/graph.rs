use super::HomogeneousSupport;

/// Simple labelled graph on `{0..n}` with loops.
///
/// Edge `(i, j)` for every `X_i X_j` (`i != j`) in the homogenized support, a
/// loop at `i` for every `X_i^2`. Adjacency lists are sorted and never contain
/// the vertex itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportGraph {
    adj: Vec<Vec<u32>>,
    loops: Vec<bool>,
}

impl SupportGraph {
    /// Graph with `vertices` vertices and nothing else.
    pub fn empty(vertices: usize) -> SupportGraph {
        SupportGraph {
            adj: vec![Vec::new(); vertices],
            loops: vec![false; vertices],
        }
    }

    pub fn from_support(s: &HomogeneousSupport) -> SupportGraph {
        let mut g = SupportGraph::empty(s.n() + 1);
        for &m in s.monomials() {
            if let Some(i) = m.as_square() {
                g.loops[i as usize] = true;
            } else if let Some((i, j)) = m.as_product() {
                g.adj[i as usize].push(j);
                g.adj[j as usize].push(i);
            }
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        g
    }

    /// Builds a graph from explicit edges and loops; duplicates are merged.
    pub fn from_parts(vertices: usize, edges: &[(u32, u32)], loops: &[u32]) -> SupportGraph {
        let mut g = SupportGraph::empty(vertices);
        for &(a, b) in edges {
            assert!(a != b, "use loops for (i, i)");
            g.adj[a as usize].push(b);
            g.adj[b as usize].push(a);
        }
        for &v in loops {
            g.loops[v as usize] = true;
        }
        for list in &mut g.adj {
            list.sort_unstable();
            list.dedup();
        }
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_loop(&self, v: u32) -> bool {
        self.loops[v as usize]
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        self.adj[a as usize].binary_search(&b).is_ok()
    }

    pub fn loop_vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.loops.iter().enumerate().filter(|(_, &l)| l).map(|(v, _)| v as u32)
    }

    /// Edges `(i, j)` with `i < j`, in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(i, list)| {
            let i = i as u32;
            list.iter().copied().filter(move |&j| j > i).map(move |j| (i, j))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges of the loop subgraph `G'` (both endpoints carry a loop).
    pub fn loop_subgraph_edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.edges().filter(|&(a, b)| self.has_loop(a) && self.has_loop(b))
    }

    /// Adds an edge; returns false when it was already present.
    pub fn add_edge(&mut self, a: u32, b: u32) -> bool {
        assert!(a != b);
        match self.adj[a as usize].binary_search(&b) {
            Ok(_) => false,
            Err(pos) => {
                self.adj[a as usize].insert(pos, b);
                let pos = self.adj[b as usize].binary_search(&a).unwrap_err();
                self.adj[b as usize].insert(pos, a);
                true
            }
        }
    }

    pub fn add_loop(&mut self, v: u32) {
        self.loops[v as usize] = true;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::support::tests::example_3_1;
    use crate::support::{Monomial, Support};

    #[test]
    fn example_3_1_graph() {
        let g = example_3_1().graph();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.loop_vertices().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            vec![(0, 3), (0, 4), (1, 2), (2, 3), (3, 4)]
        );
        assert_eq!(
            g.loop_subgraph_edges().collect::<Vec<_>>(),
            vec![(0, 3), (1, 2), (2, 3)]
        );
    }

    #[test]
    fn constant_only() {
        let g = Support::new(0, [Monomial::ONE]).unwrap().graph();
        assert_eq!(g.vertex_count(), 1);
        assert!(g.has_loop(0));
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn single_product() {
        let g = Support::new(2, [Monomial::ONE, Monomial::product(1, 2)]).unwrap().graph();
        assert_eq!(g.loop_vertices().collect::<Vec<_>>(), vec![0]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2)]);
    }

    #[test]
    fn add_edge_keeps_simple() {
        let mut g = SupportGraph::empty(3);
        assert!(g.add_edge(0, 2));
        assert!(!g.add_edge(2, 0));
        assert_eq!(g.edge_count(), 1);
    }
}
