//! Quadratic relations between support monomials and the size of `M^2`.

use super::{HomogeneousSupport, Support, SupportGraph};

/// Relation subgraph counts of a support graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RelationCounts {
    /// Type 1: distinct 4-cycles `i-j-k-l-i`.
    pub four_cycles: u64,
    /// Type 2: triangles counted once per looped vertex.
    pub looped_triangles: u64,
    /// Type 3: edges with loops at both ends.
    pub looped_edges: u64,
    pub four_cliques: u64,
}

impl RelationCounts {
    /// `lambda(G)`: total number of type 1, 2 and 3 subgraphs.
    pub fn lambda(&self) -> u64 {
        self.four_cycles + self.looped_triangles + self.looped_edges
    }
}

fn common_sorted<'a>(a: &'a [u32], b: &'a [u32]) -> impl Iterator<Item = u32> + 'a {
    let (mut i, mut j) = (0, 0);
    std::iter::from_fn(move || {
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    let v = a[i];
                    i += 1;
                    j += 1;
                    return Some(v);
                }
            }
        }
        None
    })
}

pub fn count_relations(g: &SupportGraph) -> RelationCounts {
    let n = g.vertex_count();
    let mut out = RelationCounts::default();

    // Each 4-cycle has two diagonals; every pair {u, w} with c common
    // neighbours closes C(c, 2) cycles through that diagonal.
    let mut common = vec![0u64; n];
    let mut touched = Vec::new();
    let mut paired = 0u64;
    for u in 0..n as u32 {
        for &v in g.neighbors(u) {
            for &w in g.neighbors(v) {
                if w > u {
                    if common[w as usize] == 0 {
                        touched.push(w);
                    }
                    common[w as usize] += 1;
                }
            }
        }
        for &w in &touched {
            let c = common[w as usize];
            paired += c * (c.saturating_sub(1)) / 2;
            common[w as usize] = 0;
        }
        touched.clear();
    }
    out.four_cycles = paired / 2;

    for (u, v) in g.edges() {
        if g.has_loop(u) && g.has_loop(v) {
            out.looped_edges += 1;
        }
        for w in common_sorted(g.neighbors(u), g.neighbors(v)).filter(|&w| w > v) {
            out.looped_triangles += [u, v, w].iter().filter(|&&x| g.has_loop(x)).count() as u64;
            let third = g.neighbors(w);
            out.four_cliques += common_sorted(g.neighbors(u), g.neighbors(v))
                .filter(|&x| x > w && third.binary_search(&x).is_ok())
                .count() as u64;
        }
    }
    out
}

/// `|M^2|` of a homogeneous support via `C(|M|+1, 2) - lambda + clique_4`.
pub fn card_m2_homogeneous(s: &HomogeneousSupport) -> u64 {
    let counts = count_relations(&s.graph());
    let m = s.len() as u64;
    m * (m + 1) / 2 - counts.lambda() + counts.four_cliques
}

/// `|M^2|` of an affine support (computed on its homogenization).
pub fn card_m2(s: &Support) -> u64 {
    card_m2_homogeneous(&s.homogenize())
}
