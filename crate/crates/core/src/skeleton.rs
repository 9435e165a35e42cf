//! Skeletons `(𝒪, R, f)`: a family of out-sets indexed by representative
//! vertices plus a surjection of the vertex set onto the representatives.
//! A skeleton defines a unique digraph; two skeletons are *companions* when a
//! vertex bijection extends to a faithful correspondence compatible with the
//! representative maps. Companionship of skeletons is exactly isomorphism of
//! the defined graphs, which yields the certificate implemented here.

use crate::correspondence::{search_set_maps, FaithfulCorrespondence};
use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::graph::{is_isomorphism, Digraph, OneOutGraph};
use crate::mask::SubsetMask;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Skeleton {
    universe: usize,
    family: SetFamily,
    /// `representatives[i]` indexes `family.member(i)`.
    representatives: Vec<usize>,
    /// `f: V -> R`, stored as the representative vertex of each vertex.
    assignment: Vec<usize>,
}

impl Skeleton {
    /// Validates and builds a skeleton. `representatives` must align with the
    /// canonical member order of `family`; use [`Skeleton::from_indexed_sets`]
    /// when the pairing is given in arbitrary order.
    pub fn new(
        universe: usize,
        family: SetFamily,
        representatives: Vec<usize>,
        assignment: Vec<usize>,
    ) -> Result<Self> {
        if family.universe_size() != universe {
            return Err(Error::Invalid(format!(
                "family universe {} does not match skeleton universe {universe}",
                family.universe_size()
            )));
        }
        if representatives.len() != family.len() {
            return Err(Error::Invalid(format!(
                "{} representatives for {} sets",
                representatives.len(),
                family.len()
            )));
        }
        if family.len() > universe && universe > 0 {
            return Err(Error::Invalid(format!(
                "family of {} sets cannot be indexed by {universe} vertices",
                family.len()
            )));
        }
        let mut seen = vec![false; universe];
        for &r in &representatives {
            if r >= universe {
                return Err(Error::VertexOutOfRange {
                    vertex: r,
                    order: universe,
                });
            }
            if seen[r] {
                return Err(Error::Invalid(format!("representative {r} is not unique")));
            }
            seen[r] = true;
        }
        if assignment.len() != universe {
            return Err(Error::Invalid(format!(
                "assignment covers {} of {universe} vertices",
                assignment.len()
            )));
        }
        let mut rep_hit = vec![false; representatives.len()];
        for (x, &fx) in assignment.iter().enumerate() {
            match representatives.iter().position(|&r| r == fx) {
                Some(i) => rep_hit[i] = true,
                None => {
                    return Err(Error::Invalid(format!(
                        "f({x}) = {fx} is not a representative"
                    )))
                }
            }
        }
        if let Some(missed) = rep_hit.iter().position(|&h| !h) {
            return Err(Error::Invalid(format!(
                "f is not onto: representative {} has no preimage",
                representatives[missed]
            )));
        }
        Ok(Skeleton {
            universe,
            family,
            representatives,
            assignment,
        })
    }

    /// Builds a skeleton from `(representative, set)` pairs in any order.
    pub fn from_indexed_sets(
        universe: usize,
        indexed: Vec<(usize, SubsetMask)>,
        assignment: Vec<usize>,
    ) -> Result<Self> {
        let mut indexed = indexed;
        indexed.sort_unstable_by(|(_, a), (_, b)| a.cmp(b));
        let (reps, sets): (Vec<usize>, Vec<SubsetMask>) = indexed.into_iter().unzip();
        let family = SetFamily::new(universe, sets.clone())?;
        if family.len() != reps.len() {
            return Err(Error::Invalid("duplicate sets in skeleton family".into()));
        }
        Skeleton::new(universe, family, reps, assignment)
    }

    /// Extracts a skeleton from a digraph: the out-family, each member
    /// represented by the least vertex carrying that out-set. The defined
    /// graph of the result is `g` again.
    pub fn of_graph(g: &Digraph) -> Skeleton {
        let family = g.out_family();
        let n = g.num_vertices();
        let mut representatives = vec![usize::MAX; family.len()];
        let mut assignment = vec![0usize; n];
        let mut member_of = vec![0usize; n];
        for x in (0..n).rev() {
            let i = family
                .position(g.out_set(x).expect("in range"))
                .expect("out-set is a member");
            representatives[i] = x;
            member_of[x] = i;
        }
        for x in 0..n {
            assignment[x] = representatives[member_of[x]];
        }
        Skeleton {
            universe: n,
            family,
            representatives,
            assignment,
        }
    }

    pub fn universe_size(&self) -> usize {
        self.universe
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    /// The surjection `f` as a table: vertex to representative vertex.
    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Family index of the out-set assigned to `x`, i.e. of `O_{f(x)}`.
    pub fn member_index_of(&self, x: usize) -> usize {
        let fx = self.assignment[x];
        self.representatives
            .iter()
            .position(|&r| r == fx)
            .expect("f maps into representatives")
    }

    /// The digraph defined by this skeleton: `out(x) = O_{f(x)}`.
    pub fn graph(&self) -> Digraph {
        let rows = (0..self.universe)
            .map(|x| self.family.member(self.member_index_of(x)).clone())
            .collect();
        Digraph::from_out_sets(rows).expect("member widths match universe")
    }

    /// The one-out graph `G_f` with edges `(x, f(x))`.
    pub fn one_out(&self) -> OneOutGraph {
        OneOutGraph::new(self.assignment.clone()).expect("f maps into the universe")
    }

    /// True when every representative lies in the set it represents; in that
    /// case the one-out graph is a subgraph of the defined graph.
    pub fn representatives_are_members(&self) -> bool {
        self.representatives
            .iter()
            .enumerate()
            .all(|(i, &z)| self.family.member(i).contains(z))
    }

    /// Exchanges the `f`-images of two companion vertices. The defined graphs
    /// before and after are isomorphic via the transposition of `x` and `y`.
    pub fn companion_edge_swap(&self, x: usize, y: usize) -> Result<Skeleton> {
        for v in [x, y] {
            if v >= self.universe {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    order: self.universe,
                });
            }
        }
        let partition = self.family.companion_partition();
        if !partition.same_block(x, y)? {
            return Err(Error::Precondition(format!(
                "vertices {x} and {y} are not companions with respect to the skeleton family"
            )));
        }
        let mut swapped = self.clone();
        swapped.assignment.swap(x, y);
        Ok(swapped)
    }
}

/// Searches for a companion witness between two skeletons: a vertex bijection
/// `η` extending to a faithful correspondence of the families' closures with
/// `η(O_{f(x)}) = P_{g(η(x))}` for every vertex.
///
/// Set-level correspondences are enumerated in canonical order, restricted to
/// those mapping the source family onto the target family; each is accepted
/// exactly when every companion class distributes over the family members
/// with matching counts on both sides, which is necessary and also sufficient
/// for a vertex-level witness to exist. The returned correspondence carries
/// the assembled vertex map.
pub fn are_companions(a: &Skeleton, b: &Skeleton) -> Option<FaithfulCorrespondence> {
    if a.universe != b.universe || a.family.len() != b.family.len() {
        return None;
    }
    if a.family.region_size_signature() != b.family.region_size_signature() {
        return None;
    }
    let source = a.family.intersection_closure();
    let target = b.family.intersection_closure();
    if source.len() != target.len() {
        return None;
    }
    let base_a: Vec<bool> = source.iter().map(|m| a.family.contains(m)).collect();
    let base_b: Vec<bool> = target.iter().map(|m| b.family.contains(m)).collect();
    let pa = source.companion_partition();
    let pb = target.companion_partition();
    if pa.block_size_multiset() != pb.block_size_multiset() {
        return None;
    }

    // counts[class][family index] = |{x in class : O_{f(x)} = member}|
    let cell_counts = |s: &Skeleton, partition: &crate::family::CompanionPartition| {
        let mut counts = vec![vec![0usize; s.family.len()]; partition.num_blocks()];
        for x in 0..s.universe {
            counts[partition.class_of(x).expect("in range")][s.member_index_of(x)] += 1;
        }
        counts
    };
    let counts_a = cell_counts(a, &pa);
    let counts_b = cell_counts(b, &pb);
    let closure_pos_a: Vec<usize> = a
        .family
        .iter()
        .map(|m| source.position(m).expect("family member is in closure"))
        .collect();

    let mut accepted: Option<(Vec<usize>, Vec<usize>, Vec<usize>)> = None;
    search_set_maps(&source, &target, Some((&base_a, &base_b)), &mut |set_map| {
        // Family member j of `a` maps to family member fam_map[j] of `b`.
        let fam_map: Vec<usize> = closure_pos_a
            .iter()
            .map(|&pj| {
                b.family
                    .position(target.member(set_map[pj]))
                    .expect("base members map to base members")
            })
            .collect();
        // Class `ci` maps to the class whose neighborhood is the image of
        // ci's neighborhood.
        let mut class_map = Vec::with_capacity(pa.num_blocks());
        for ci in 0..pa.num_blocks() {
            let image_fp = SubsetMask::from_elements(
                target.len(),
                pa.fingerprint_of_class(ci).iter().map(|m| set_map[m]),
            );
            match pb.class_by_fingerprint(&image_fp) {
                Some(tci) if pa.block(ci).len() == pb.block(tci).len() => class_map.push(tci),
                _ => return false,
            }
        }
        let counting_ok = (0..pa.num_blocks()).all(|ci| {
            (0..a.family.len())
                .all(|fj| counts_a[ci][fj] == counts_b[class_map[ci]][fam_map[fj]])
        });
        if counting_ok {
            accepted = Some((set_map.to_vec(), fam_map, class_map));
            true
        } else {
            false
        }
    });
    let (set_map, fam_map, class_map) = accepted?;

    // Assemble the vertex map cell by cell: the vertices of class C assigned
    // to member O go, in ascending order, onto the vertices of the image
    // class assigned to the image member.
    let group_cells = |s: &Skeleton, partition: &crate::family::CompanionPartition| {
        let mut cells =
            vec![vec![Vec::<usize>::new(); s.family.len()]; partition.num_blocks()];
        for x in 0..s.universe {
            cells[partition.class_of(x).expect("in range")][s.member_index_of(x)].push(x);
        }
        cells
    };
    let cells_a = group_cells(a, &pa);
    let cells_b = group_cells(b, &pb);
    let mut vertex_map = vec![usize::MAX; a.universe];
    for ci in 0..pa.num_blocks() {
        for fj in 0..a.family.len() {
            let src = &cells_a[ci][fj];
            let dst = &cells_b[class_map[ci]][fam_map[fj]];
            debug_assert_eq!(src.len(), dst.len());
            for (&x, &y) in src.iter().zip(dst.iter()) {
                vertex_map[x] = y;
            }
        }
    }
    Some(FaithfulCorrespondence::from_parts(
        source,
        target,
        set_map,
        Some(vertex_map),
    ))
}

/// Rechecks a companion witness in full: the correspondence itself, that its
/// closures belong to the two skeletons, and the defining condition
/// `η(O_{f(x)}) = P_{g(η(x))}` at every vertex.
pub fn verify_companion_witness(
    a: &Skeleton,
    b: &Skeleton,
    witness: &FaithfulCorrespondence,
) -> bool {
    if !witness.verify() {
        return false;
    }
    if witness.source_closure() != &a.family.intersection_closure()
        || witness.target_closure() != &b.family.intersection_closure()
    {
        return false;
    }
    let Some(eta) = witness.vertex_map() else {
        return false;
    };
    if eta.len() != a.universe || b.universe != a.universe {
        return false;
    }
    (0..a.universe).all(|x| {
        let image = witness
            .image_of(a.family.member(a.member_index_of(x)))
            .expect("family member is in closure");
        image == b.family.member(b.member_index_of(eta[x]))
    })
}

/// Builds the explicit isomorphism `Ψ` between the graphs defined by two
/// companion skeletons, from a valid witness: the vertex set is partitioned
/// into cells `[x]_f ∩ C` (an `f`-fiber intersected with a companion class),
/// each cell is mapped onto the corresponding cell `[η(x)]_g ∩ η(C)`, and
/// elements inside a cell are paired in ascending order.
pub fn build_isomorphism(
    a: &Skeleton,
    b: &Skeleton,
    witness: &FaithfulCorrespondence,
) -> Result<Vec<usize>> {
    if !verify_companion_witness(a, b, witness) {
        return Err(Error::InvalidWitness(
            "not a companion witness for the two skeletons".into(),
        ));
    }
    let eta = witness.vertex_map().expect("verified witness has a vertex map");
    let pa = a.family.companion_partition();
    let pb = b.family.companion_partition();

    let mut cells_a = vec![vec![Vec::<usize>::new(); a.family.len()]; pa.num_blocks()];
    for x in 0..a.universe {
        cells_a[pa.class_of(x)?][a.member_index_of(x)].push(x);
    }
    let mut cells_b = vec![vec![Vec::<usize>::new(); b.family.len()]; pb.num_blocks()];
    for y in 0..b.universe {
        cells_b[pb.class_of(y)?][b.member_index_of(y)].push(y);
    }

    let mut psi = vec![usize::MAX; a.universe];
    for row in cells_a.iter() {
        for (fj, src) in row.iter().enumerate() {
            if src.is_empty() {
                continue;
            }
            let x = src[0];
            // Image cell: the class of η(x) intersected with the g-fiber of
            // the image member.
            let tci = pb.class_of(eta[x])?;
            let image_member = witness
                .image_of(a.family.member(fj))
                .expect("family member is in closure");
            let tfj = b
                .family
                .position(image_member)
                .ok_or_else(|| Error::InvalidWitness("image member not in target family".into()))?;
            let dst = &cells_b[tci][tfj];
            if dst.len() != src.len() {
                return Err(Error::InvalidWitness(format!(
                    "cell size mismatch: {} vs {}",
                    src.len(),
                    dst.len()
                )));
            }
            for (&u, &v) in src.iter().zip(dst.iter()) {
                psi[u] = v;
            }
        }
    }
    Ok(psi)
}

/// Decides isomorphism of two digraphs through the companion-skeleton
/// certificate: extract a skeleton from each graph, search for a companion
/// witness, and build `Ψ` from it. The returned bijection is verified
/// edge by edge before being handed out; `None` means the graphs are not
/// isomorphic.
pub fn certify_isomorphic(g1: &Digraph, g2: &Digraph) -> Option<Vec<usize>> {
    if g1.num_vertices() != g2.num_vertices() {
        return None;
    }
    let fam1 = g1.out_family();
    let fam2 = g2.out_family();
    let sizes = |f: &SetFamily| {
        let mut v: Vec<usize> = f.iter().map(|m| m.len()).collect();
        v.sort_unstable();
        v
    };
    if sizes(&fam1) != sizes(&fam2) {
        return None;
    }
    if fam1.companion_partition().block_size_multiset()
        != fam2.companion_partition().block_size_multiset()
    {
        return None;
    }
    let s1 = Skeleton::of_graph(g1);
    let s2 = Skeleton::of_graph(g2);
    let witness = are_companions(&s1, &s2)?;
    let psi = build_isomorphism(&s1, &s2, &witness)
        .expect("witness returned by are_companions is valid");
    assert!(
        is_isomorphism(g1, g2, &psi),
        "certificate produced a non-isomorphism; this is a bug"
    );
    Some(psi)
}
