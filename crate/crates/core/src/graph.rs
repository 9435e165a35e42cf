//! Dense directed graphs on `{0, .., N-1}`, one-out graphs, and a
//! brute-force isomorphism oracle.

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::mask::SubsetMask;

/// Default vertex cap for the factorial-time oracle.
pub const DEFAULT_ORACLE_CAP: usize = 8;

/// A directed graph stored as one out-set row per vertex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Digraph {
    rows: Vec<SubsetMask>,
}

impl Digraph {
    /// Graph on `n` vertices with no edges.
    pub fn edgeless(n: usize) -> Self {
        Digraph {
            rows: vec![SubsetMask::empty(n); n],
        }
    }

    /// Complete graph on `n` vertices, loops included.
    pub fn complete_with_loops(n: usize) -> Self {
        Digraph {
            rows: vec![SubsetMask::full(n); n],
        }
    }

    /// Builds a graph from its out-set rows; every row must have width equal
    /// to the number of rows.
    pub fn from_out_sets(rows: Vec<SubsetMask>) -> Result<Self> {
        let n = rows.len();
        for row in &rows {
            if row.width() != n {
                return Err(Error::WidthMismatch {
                    found: row.width(),
                    expected: n,
                });
            }
        }
        Ok(Digraph { rows })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Digraph::edgeless(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.num_vertices();
        if u >= n {
            return Err(Error::VertexOutOfRange { vertex: u, order: n });
        }
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, order: n });
        }
        self.rows[u].insert(v);
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.rows.len()
    }

    pub fn num_edges(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_edge(&self, u: usize, v: usize) -> bool {
        u < self.rows.len() && self.rows[u].contains(v)
    }

    pub fn out_set(&self, v: usize) -> Result<&SubsetMask> {
        self.rows.get(v).ok_or(Error::VertexOutOfRange {
            vertex: v,
            order: self.num_vertices(),
        })
    }

    /// The in-set `{ w | (w, v) ∈ E }`, derived from the adjacency rows.
    pub fn in_set(&self, v: usize) -> Result<SubsetMask> {
        let n = self.num_vertices();
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, order: n });
        }
        Ok(SubsetMask::from_elements(
            n,
            (0..n).filter(|&w| self.rows[w].contains(v)),
        ))
    }

    pub fn out_rows(&self) -> &[SubsetMask] {
        &self.rows
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().map(move |v| (u, v)))
            .collect()
    }

    /// The family of distinct out-sets `𝒪(G)`.
    pub fn out_family(&self) -> SetFamily {
        SetFamily::new(self.num_vertices(), self.rows.iter().cloned())
            .expect("rows have matching width")
    }

    /// Checks that vertices have equal in-sets exactly when they are
    /// companions with respect to the out-family. This holds for every
    /// digraph; it is exposed as a self-check.
    pub fn companions_agree_with_insets(&self) -> bool {
        let n = self.num_vertices();
        // First-seen class ids from in-sets, comparable with the partition's.
        let mut in_class = vec![0usize; n];
        let mut seen: Vec<SubsetMask> = Vec::new();
        for v in 0..n {
            let in_set = self.in_set(v).expect("in range");
            let id = seen.iter().position(|s| *s == in_set).unwrap_or_else(|| {
                seen.push(in_set);
                seen.len() - 1
            });
            in_class[v] = id;
        }
        let partition = self.out_family().companion_partition();
        in_class == partition.class_indices()
    }

    /// The image graph under a vertex permutation: edge `(u, v)` becomes
    /// `(perm[u], perm[v])`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Digraph> {
        let n = self.num_vertices();
        if !crate::correspondence::is_permutation(perm, n) {
            return Err(Error::Invalid(
                "relabeling is not a permutation of the vertices".into(),
            ));
        }
        let mut rows = vec![SubsetMask::empty(n); n];
        for u in 0..n {
            rows[perm[u]] = crate::correspondence::apply_pointwise(&self.rows[u], perm);
        }
        Ok(Digraph { rows })
    }

    /// Number of weakly connected components.
    pub fn weak_component_count(&self) -> usize {
        let n = self.num_vertices();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for (u, v) in self.edges() {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
            }
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }
}

/// A graph where every vertex has exactly one outgoing edge.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OneOutGraph {
    successor: Vec<usize>,
}

impl OneOutGraph {
    pub fn new(successor: Vec<usize>) -> Result<Self> {
        let n = successor.len();
        if let Some(&bad) = successor.iter().find(|&&s| s >= n) {
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                order: n,
            });
        }
        Ok(OneOutGraph { successor })
    }

    pub fn num_vertices(&self) -> usize {
        self.successor.len()
    }

    pub fn successor(&self, v: usize) -> Result<usize> {
        self.successor
            .get(v)
            .copied()
            .ok_or(Error::VertexOutOfRange {
                vertex: v,
                order: self.num_vertices(),
            })
    }

    pub fn successors(&self) -> &[usize] {
        &self.successor
    }

    pub fn to_digraph(&self) -> Digraph {
        let n = self.num_vertices();
        Digraph {
            rows: self
                .successor
                .iter()
                .map(|&s| SubsetMask::singleton(n, s))
                .collect(),
        }
    }

    pub fn is_subgraph_of(&self, g: &Digraph) -> bool {
        self.num_vertices() == g.num_vertices()
            && self
                .successor
                .iter()
                .enumerate()
                .all(|(v, &s)| g.is_edge(v, s))
    }
}

/// Exhaustive isomorphism search with degree pruning; the validation oracle
/// for the skeleton certificate. Returns the lexicographically least
/// isomorphism, or `None`. Graphs larger than [`DEFAULT_ORACLE_CAP`] are
/// rejected as a resource error; use [`brute_force_isomorphic_with_cap`] to
/// override.
pub fn brute_force_isomorphic(a: &Digraph, b: &Digraph) -> Result<Option<Vec<usize>>> {
    brute_force_isomorphic_with_cap(a, b, DEFAULT_ORACLE_CAP)
}

pub fn brute_force_isomorphic_with_cap(
    a: &Digraph,
    b: &Digraph,
    cap: usize,
) -> Result<Option<Vec<usize>>> {
    let n = a.num_vertices();
    if n != b.num_vertices() {
        return Ok(None);
    }
    if n > cap {
        return Err(Error::SizeCapExceeded { requested: n, cap });
    }
    let degrees = |g: &Digraph| -> Vec<(usize, usize)> {
        (0..n)
            .map(|v| (g.rows[v].len(), g.in_set(v).expect("in range").len()))
            .collect()
    };
    let deg_a = degrees(a);
    let deg_b = degrees(b);
    let mut sorted_a = deg_a.clone();
    let mut sorted_b = deg_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return Ok(None);
    }

    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn assign(
        a: &Digraph,
        b: &Digraph,
        deg_a: &[(usize, usize)],
        deg_b: &[(usize, usize)],
        mapping: &mut [usize],
        used: &mut [bool],
        v: usize,
    ) -> bool {
        let n = mapping.len();
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || deg_a[v] != deg_b[w] {
                continue;
            }
            if a.is_edge(v, v) != b.is_edge(w, w) {
                continue;
            }
            let consistent = (0..v).all(|u| {
                a.is_edge(u, v) == b.is_edge(mapping[u], w)
                    && a.is_edge(v, u) == b.is_edge(w, mapping[u])
            });
            if !consistent {
                continue;
            }
            mapping[v] = w;
            used[w] = true;
            if assign(a, b, deg_a, deg_b, mapping, used, v + 1) {
                return true;
            }
            mapping[v] = usize::MAX;
            used[w] = false;
        }
        false
    }
    if assign(a, b, &deg_a, &deg_b, &mut mapping, &mut used, 0) {
        Ok(Some(mapping))
    } else {
        Ok(None)
    }
}

/// Checks that `psi` maps the edges of `a` exactly onto the edges of `b`.
pub fn is_isomorphism(a: &Digraph, b: &Digraph, psi: &[usize]) -> bool {
    let n = a.num_vertices();
    if b.num_vertices() != n || !crate::correspondence::is_permutation(psi, n) {
        return false;
    }
    (0..n).all(|u| (0..n).all(|v| a.is_edge(u, v) == b.is_edge(psi[u], psi[v])))
}
