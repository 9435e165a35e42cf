//! The poset `(2^S, ⊆)` as an upper semi-lattice: upper cones, families of
//! cones, main skeletons of functions `f: 2^S -> 2^S`, and the embedding of a
//! digraph as a graph whose out-sets are cones.

use crate::correspondence::{vertex_map_from_set_map, FaithfulCorrespondence};
use crate::error::{Error, Result};
use crate::family::{CompanionPartition, SetFamily};
use crate::graph::{Digraph, OneOutGraph};
use crate::mask::SubsetMask;
use crate::skeleton::Skeleton;

/// Default cap on the ground size `n` of operations that materialize all
/// `2^n` points.
pub const DEFAULT_GROUND_CAP: usize = 12;

/// The powerset of an `n`-element ground set, ordered by inclusion. Points
/// are subsets of the ground set; the point with bit pattern `i` has index
/// `i`, so families over the poset live on a `2^n`-element universe.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PowersetPoset {
    ground: usize,
}

impl PowersetPoset {
    pub fn new(ground: usize) -> Result<Self> {
        Self::with_cap(ground, DEFAULT_GROUND_CAP)
    }

    pub fn with_cap(ground: usize, cap: usize) -> Result<Self> {
        if ground > cap {
            return Err(Error::SizeCapExceeded {
                requested: ground,
                cap,
            });
        }
        Ok(PowersetPoset { ground })
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn num_points(&self) -> usize {
        1 << self.ground
    }

    pub fn point(&self, index: usize) -> SubsetMask {
        SubsetMask::from_index(self.ground, index)
    }

    pub fn index_of(&self, point: &SubsetMask) -> Result<usize> {
        if point.width() != self.ground {
            return Err(Error::WidthMismatch {
                found: point.width(),
                expected: self.ground,
            });
        }
        Ok(point.index())
    }

    /// All points in ascending index order.
    pub fn points(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        (0..self.num_points()).map(|i| self.point(i))
    }

    /// The upper cone of `x` as a mask over the `2^n` points: every superset
    /// of `x`.
    pub fn up_cone(&self, x: &SubsetMask) -> Result<SubsetMask> {
        let base = self.index_of(x)?;
        let complement = (self.num_points() - 1) & !base;
        let mut cone = SubsetMask::empty(self.num_points());
        let mut sub = 0usize;
        loop {
            cone.insert(base | sub);
            if sub == complement {
                break;
            }
            sub = sub.wrapping_sub(complement) & complement;
        }
        Ok(cone)
    }

    /// The family of cones based at the given points; base points must be
    /// duplicate-free.
    pub fn cone_family(&self, bases: &[SubsetMask]) -> Result<SetFamily> {
        let mut seen = vec![false; self.num_points()];
        for b in bases {
            let i = self.index_of(b)?;
            if seen[i] {
                return Err(Error::DuplicateBasePoint {
                    point: b.to_string(),
                });
            }
            seen[i] = true;
        }
        let cones: Vec<SubsetMask> = bases
            .iter()
            .map(|b| self.up_cone(b))
            .collect::<Result<_>>()?;
        SetFamily::new(self.num_points(), cones)
    }

    /// Companion partition of the `2^n` points under the cone family based at
    /// `bases`. Each base point lies in its own block and is its minimum.
    pub fn cone_companions(&self, bases: &[SubsetMask]) -> Result<CompanionPartition> {
        Ok(self.cone_family(bases)?.companion_partition())
    }
}

/// A function `f: 2^S -> 2^S` viewed as the skeleton `(Up[R], R, f)` with
/// `R = f(2^S)`: each out-set is the cone of the image point, and each cone
/// is represented by its minimum, the image point itself.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MainSkeleton {
    ground: usize,
    /// `f` as a table of point indices, of length `2^ground`.
    table: Vec<usize>,
}

impl MainSkeleton {
    pub fn new(ground: usize, table: Vec<usize>) -> Result<Self> {
        let points = 1usize << ground;
        if table.len() != points {
            return Err(Error::Invalid(format!(
                "table of length {} for {points} points",
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= points) {
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                order: points,
            });
        }
        Ok(MainSkeleton { ground, table })
    }

    /// Interprets a one-out graph on `2^n` vertices as a function table.
    pub fn from_one_out(graph: &OneOutGraph) -> Result<Self> {
        let points = graph.num_vertices();
        if points == 0 || !points.is_power_of_two() {
            return Err(Error::Invalid(format!(
                "{points} vertices is not a power of two"
            )));
        }
        MainSkeleton::new(points.trailing_zeros() as usize, graph.successors().to_vec())
    }

    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn num_points(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// The range `R = f(2^S)` as sorted point indices.
    pub fn range(&self) -> Vec<usize> {
        let mut r = self.table.clone();
        r.sort_unstable();
        r.dedup();
        r
    }

    /// The one-out graph `G_f` on the `2^n` points.
    pub fn one_out(&self) -> OneOutGraph {
        OneOutGraph::new(self.table.clone()).expect("table is range-checked")
    }

    /// The skeleton `(Up[R], R, f)` over the `2^n`-point universe.
    pub fn to_skeleton(&self) -> Skeleton {
        let poset = PowersetPoset::with_cap(self.ground, self.ground)
            .expect("cap equals ground");
        let indexed: Vec<(usize, SubsetMask)> = self
            .range()
            .into_iter()
            .map(|z| {
                let cone = poset
                    .up_cone(&poset.point(z))
                    .expect("point of the poset");
                (z, cone)
            })
            .collect();
        Skeleton::from_indexed_sets(self.num_points(), indexed, self.table.clone())
            .expect("main skeleton is always valid")
    }

    /// The graph defined by the main skeleton: `out(x) = Up(f(x))`. The
    /// one-out graph is always a subgraph of it.
    pub fn graph(&self) -> Result<Digraph> {
        self.graph_with_cap(DEFAULT_GROUND_CAP)
    }

    pub fn graph_with_cap(&self, cap: usize) -> Result<Digraph> {
        if self.ground > cap {
            return Err(Error::SizeCapExceeded {
                requested: self.ground,
                cap,
            });
        }
        let poset = PowersetPoset::with_cap(self.ground, self.ground).expect("cap equals ground");
        let rows = self
            .table
            .iter()
            .map(|&fx| poset.up_cone(&poset.point(fx)))
            .collect::<Result<Vec<_>>>()?;
        Digraph::from_out_sets(rows)
    }
}

/// A successful embedding of a digraph as a graph of cones: base points for
/// the out-family and the vertex-to-point bijection realizing the faithful
/// correspondence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConeEmbedding {
    ground: usize,
    /// `base_points[i]` is the base of the cone matched with member `i` of
    /// the out-family (canonical member order).
    base_points: Vec<SubsetMask>,
    /// `φ`: vertex to point index.
    vertex_to_point: Vec<usize>,
}

impl ConeEmbedding {
    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn base_points(&self) -> &[SubsetMask] {
        &self.base_points
    }

    pub fn vertex_to_point(&self) -> &[usize] {
        &self.vertex_to_point
    }

    pub fn point_of_vertex(&self, v: usize) -> SubsetMask {
        SubsetMask::from_index(self.ground, self.vertex_to_point[v])
    }

    /// The main skeleton induced on the poset: `f(φ(x))` is the base point of
    /// `out(x)`.
    pub fn main_skeleton(&self, g: &Digraph) -> MainSkeleton {
        let fam = g.out_family();
        let mut table = vec![0usize; 1 << self.ground];
        for x in 0..g.num_vertices() {
            let i = fam
                .position(g.out_set(x).expect("in range"))
                .expect("out-set is a member");
            table[self.vertex_to_point[x]] = self.base_points[i].index();
        }
        MainSkeleton::new(self.ground, table).expect("indices are in range")
    }
}

/// Decides whether `g` is isomorphic to a graph defined by a main skeleton
/// over `(2^[n], ⊆)`: `|V|` must be `2^n` and the out-family must faithfully
/// correspond to a family of upper cones. Returns the base points found and
/// the vertex bijection, or `None`.
///
/// The search assigns a base point to each out-family member in decreasing
/// size order (a member of size `s` needs a base of rank `n - log2 s`),
/// prunes on pairwise intersection cardinalities, and validates each complete
/// assignment as a faithful correspondence of the closures.
pub fn embed_as_cone_graph(g: &Digraph) -> Option<ConeEmbedding> {
    let num_vertices = g.num_vertices();
    if num_vertices == 0 || !num_vertices.is_power_of_two() {
        return None;
    }
    let ground = num_vertices.trailing_zeros() as usize;
    let fam = g.out_family();
    let closure = fam.intersection_closure();
    // Cones have power-of-two sizes, and so does any intersection of cones.
    if closure.iter().any(|m| !m.len().is_power_of_two()) {
        return None;
    }
    let poset = PowersetPoset::with_cap(ground, ground).expect("cap equals ground");

    let mut order: Vec<usize> = (0..fam.len()).collect();
    order.sort_unstable_by_key(|&i| (usize::MAX - fam.member(i).len(), i));
    let ranks: Vec<usize> = (0..fam.len())
        .map(|i| ground - fam.member(i).len().trailing_zeros() as usize)
        .collect();

    let mut assignment: Vec<usize> = vec![usize::MAX; fam.len()];
    let mut used = vec![false; num_vertices];
    let mut result: Option<ConeEmbedding> = None;
    assign_bases(
        &fam,
        &closure,
        &poset,
        &order,
        &ranks,
        0,
        &mut assignment,
        &mut used,
        &mut result,
    );
    result
}

#[allow(clippy::too_many_arguments)]
fn assign_bases(
    fam: &SetFamily,
    closure: &SetFamily,
    poset: &PowersetPoset,
    order: &[usize],
    ranks: &[usize],
    depth: usize,
    assignment: &mut Vec<usize>,
    used: &mut Vec<bool>,
    result: &mut Option<ConeEmbedding>,
) -> bool {
    let ground = poset.ground_size();
    if depth == order.len() {
        if let Some(embedding) = validate_assignment(fam, closure, poset, assignment) {
            *result = Some(embedding);
            return true;
        }
        return false;
    }
    let k = order[depth];
    for candidate in 0..poset.num_points() {
        if used[candidate] || (candidate.count_ones() as usize) != ranks[k] {
            continue;
        }
        // |X ∩ Y| must equal |Up(b_X) ∩ Up(b_Y)| = 2^(n - |b_X ∪ b_Y|).
        let ok = order[..depth].iter().all(|&j| {
            let union_rank = (candidate | assignment[j]).count_ones() as usize;
            fam.member(k).intersection(fam.member(j)).len() == (1 << (ground - union_rank))
        });
        if !ok {
            continue;
        }
        assignment[k] = candidate;
        used[candidate] = true;
        if assign_bases(
            fam, closure, poset, order, ranks, depth + 1, assignment, used, result,
        ) {
            return true;
        }
        assignment[k] = usize::MAX;
        used[candidate] = false;
    }
    false
}

/// Full validation of a complete base assignment: the forced map on the
/// closure (`Z` goes to the cone of the least upper bound of the bases of all
/// members containing `Z`) must be a size-preserving, intersection-preserving
/// bijection onto the closure of the cone family.
fn validate_assignment(
    fam: &SetFamily,
    closure: &SetFamily,
    poset: &PowersetPoset,
    assignment: &[usize],
) -> Option<ConeEmbedding> {
    let bases: Vec<SubsetMask> = assignment
        .iter()
        .map(|&b| poset.point(b))
        .collect();
    let cone_family = poset.cone_family(&bases).ok()?;
    let target = cone_family.intersection_closure();
    if target.len() != closure.len() {
        return None;
    }
    let mut set_map = Vec::with_capacity(closure.len());
    let mut hit = vec![false; target.len()];
    for member in closure.iter() {
        let mut lub = 0usize;
        for (i, fam_member) in fam.iter().enumerate() {
            if member.is_subset_of(fam_member) {
                lub |= assignment[i];
            }
        }
        let image = poset.up_cone(&poset.point(lub)).expect("point in range");
        if image.len() != member.len() {
            return None;
        }
        let pos = target.position(&image)?;
        if hit[pos] {
            return None;
        }
        hit[pos] = true;
        set_map.push(pos);
    }
    // Intersection preservation for every pair. Cones always share the top
    // point, so an empty meet on the source side cannot be matched.
    for (i, x) in closure.iter().enumerate() {
        for (j, y) in closure.iter().enumerate().skip(i) {
            let meet = closure.position(&x.intersection(y))?;
            let image_meet = target
                .position(&target.member(set_map[i]).intersection(target.member(set_map[j])))
                .expect("cone meets are cones");
            if set_map[meet] != image_meet {
                return None;
            }
        }
    }
    let vertex_map = vertex_map_from_set_map(closure, &target, &set_map)?;
    Some(ConeEmbedding {
        ground: poset.ground_size(),
        base_points: bases,
        vertex_to_point: vertex_map,
    })
}

/// The faithful correspondence realized by an embedding, for callers that
/// want to inspect or re-verify it.
pub fn embedding_correspondence(
    g: &Digraph,
    embedding: &ConeEmbedding,
) -> Result<FaithfulCorrespondence> {
    let poset = PowersetPoset::with_cap(embedding.ground, embedding.ground)
        .expect("cap equals ground");
    let cone_family = poset.cone_family(&embedding.base_points)?;
    FaithfulCorrespondence::from_vertex_map(
        &g.out_family(),
        &cone_family,
        &embedding.vertex_to_point,
    )
}
