//! Faithful correspondences between set families: size- and
//! intersection-preserving bijections of intersection closures, plus the
//! vertex-level bijection they induce when the universes have equal size.

use crate::error::{Error, Result};
use crate::family::SetFamily;
use crate::mask::SubsetMask;

/// A bijection `η` between the intersection closures of two families that
/// preserves member sizes and pairwise intersections. When the two universes
/// have equal size it also carries a vertex bijection whose pointwise
/// extension agrees with `η` on every closure member.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FaithfulCorrespondence {
    source_closure: SetFamily,
    target_closure: SetFamily,
    set_map: Vec<usize>,
    vertex_map: Option<Vec<usize>>,
}

impl FaithfulCorrespondence {
    pub(crate) fn from_parts(
        source_closure: SetFamily,
        target_closure: SetFamily,
        set_map: Vec<usize>,
        vertex_map: Option<Vec<usize>>,
    ) -> Self {
        let fc = FaithfulCorrespondence {
            source_closure,
            target_closure,
            set_map,
            vertex_map,
        };
        debug_assert!(fc.verify());
        fc
    }

    /// Rebuilds a correspondence from a vertex bijection, validating that the
    /// pointwise extension maps the source closure onto the target closure.
    /// This is how externally supplied witnesses are (re)checked.
    pub fn from_vertex_map(a: &SetFamily, b: &SetFamily, vertex_map: &[usize]) -> Result<Self> {
        let n = a.universe_size();
        if b.universe_size() != n {
            return Err(Error::InvalidWitness(format!(
                "universe sizes differ: {} vs {}",
                n,
                b.universe_size()
            )));
        }
        if !is_permutation(vertex_map, n) {
            return Err(Error::InvalidWitness(
                "vertex map is not a permutation of the universe".into(),
            ));
        }
        let source = a.intersection_closure();
        let target = b.intersection_closure();
        if source.len() != target.len() {
            return Err(Error::InvalidWitness(
                "intersection closures have different sizes".into(),
            ));
        }
        let mut set_map = Vec::with_capacity(source.len());
        let mut hit = vec![false; target.len()];
        for member in source.iter() {
            let image = apply_pointwise(member, vertex_map);
            let Some(pos) = target.position(&image) else {
                return Err(Error::InvalidWitness(format!(
                    "image {image} of {member} is not in the target closure"
                )));
            };
            hit[pos] = true;
            set_map.push(pos);
        }
        if !hit.iter().all(|&h| h) {
            return Err(Error::InvalidWitness(
                "set map is not onto the target closure".into(),
            ));
        }
        Ok(FaithfulCorrespondence {
            source_closure: source,
            target_closure: target,
            set_map,
            vertex_map: Some(vertex_map.to_vec()),
        })
    }

    /// The closure of the source family, in canonical order.
    pub fn source_closure(&self) -> &SetFamily {
        &self.source_closure
    }

    /// The closure of the target family, in canonical order.
    pub fn target_closure(&self) -> &SetFamily {
        &self.target_closure
    }

    /// Index map between the closures: member `i` of the source closure maps
    /// to member `set_map()[i]` of the target closure.
    pub fn set_map(&self) -> &[usize] {
        &self.set_map
    }

    /// Image of a source-closure member under `η`.
    pub fn image_of(&self, set: &SubsetMask) -> Option<&SubsetMask> {
        let pos = self.source_closure.position(set)?;
        Some(self.target_closure.member(self.set_map[pos]))
    }

    /// Vertex bijection extending `η`; present when the universes have equal
    /// size.
    pub fn vertex_map(&self) -> Option<&[usize]> {
        self.vertex_map.as_deref()
    }

    /// The inverse correspondence (faithfulness is symmetric).
    pub fn inverse(&self) -> FaithfulCorrespondence {
        let mut inverse_sets = vec![0usize; self.set_map.len()];
        for (i, &t) in self.set_map.iter().enumerate() {
            inverse_sets[t] = i;
        }
        let inverse_vertices = self.vertex_map.as_ref().map(|vm| {
            let mut inv = vec![0usize; vm.len()];
            for (x, &y) in vm.iter().enumerate() {
                inv[y] = x;
            }
            inv
        });
        FaithfulCorrespondence {
            source_closure: self.target_closure.clone(),
            target_closure: self.source_closure.clone(),
            set_map: inverse_sets,
            vertex_map: inverse_vertices,
        }
    }

    /// Rechecks every defining property: bijectivity, size preservation,
    /// intersection preservation, and agreement of the vertex map (when
    /// present) with the set map.
    pub fn verify(&self) -> bool {
        let a = &self.source_closure;
        let b = &self.target_closure;
        if a.len() != b.len() || !is_permutation(&self.set_map, a.len()) {
            return false;
        }
        if !a.is_intersection_closed() || !b.is_intersection_closed() {
            return false;
        }
        for (i, x) in a.iter().enumerate() {
            if x.len() != b.member(self.set_map[i]).len() {
                return false;
            }
            for (j, y) in a.iter().enumerate().skip(i) {
                let meet = x.intersection(y);
                let image_meet =
                    b.member(self.set_map[i]).intersection(b.member(self.set_map[j]));
                match (a.position(&meet), b.position(&image_meet)) {
                    (Some(u), Some(v)) if self.set_map[u] == v => {}
                    // Empty meets are outside the closure and must pair with
                    // empty meets.
                    (None, None) if meet.is_empty() && image_meet.is_empty() => {}
                    _ => return false,
                }
            }
        }
        if let Some(vm) = &self.vertex_map {
            if a.universe_size() != b.universe_size() || !is_permutation(vm, a.universe_size()) {
                return false;
            }
            for (i, x) in a.iter().enumerate() {
                if &apply_pointwise(x, vm) != b.member(self.set_map[i]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Pointwise image of a subset under a vertex map.
pub(crate) fn apply_pointwise(set: &SubsetMask, vertex_map: &[usize]) -> SubsetMask {
    SubsetMask::from_elements(set.width(), set.iter().map(|x| vertex_map[x]))
}

pub(crate) fn is_permutation(map: &[usize], n: usize) -> bool {
    if map.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in map {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// Searches for a faithful correspondence between `a` and `b`, returning the
/// first one in the canonical backtracking order, or `None` if none exists.
///
/// Closure members are assigned in decreasing size order (canonical order
/// within a size group), candidates are tried in canonical order, and each
/// assignment is checked for intersection compatibility against all earlier
/// ones. The region-size signature is compared up front as a prune.
pub fn find_faithful_correspondence(
    a: &SetFamily,
    b: &SetFamily,
) -> Option<FaithfulCorrespondence> {
    let source = a.intersection_closure();
    let target = b.intersection_closure();
    if source.len() != target.len() {
        return None;
    }
    if size_multiset(&source) != size_multiset(&target) {
        return None;
    }
    let (sig_a, sig_b) = (a.region_size_signature(), b.region_size_signature());
    if a.universe_size() == b.universe_size() {
        if sig_a != sig_b {
            return None;
        }
    } else if sig_a.without_outer() != sig_b.without_outer() {
        return None;
    }

    let mut found: Option<Vec<usize>> = None;
    search_set_maps(&source, &target, None, &mut |set_map| {
        found = Some(set_map.to_vec());
        true
    });
    let set_map = found?;
    let vertex_map = if a.universe_size() == b.universe_size() {
        let vm = vertex_map_from_set_map(&source, &target, &set_map)
            .expect("size-preserving correspondence always extends to vertices");
        Some(vm)
    } else {
        None
    };
    Some(FaithfulCorrespondence::from_parts(
        source, target, set_map, vertex_map,
    ))
}

fn size_multiset(family: &SetFamily) -> Vec<usize> {
    let mut sizes: Vec<usize> = family.iter().map(|m| m.len()).collect();
    sizes.sort_unstable();
    sizes
}

/// Backtracking enumeration of set-level faithful correspondences between two
/// intersection-closed families. Solutions are reported through `visit` in
/// canonical order; returning `true` stops the enumeration.
///
/// `base` optionally restricts the bijection: source members flagged in
/// `base.0` must map to target members flagged in `base.1` and vice versa
/// (used to force the original families onto each other when correspondences
/// are searched between skeleton out-families).
pub(crate) fn search_set_maps(
    source: &SetFamily,
    target: &SetFamily,
    base: Option<(&[bool], &[bool])>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    debug_assert!(source.is_intersection_closed() && target.is_intersection_closed());
    let m = source.len();
    if target.len() != m {
        return false;
    }
    // Decreasing size, canonical order within equal sizes.
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_unstable_by_key(|&i| (usize::MAX - source.member(i).len(), i));

    let mut assignment = vec![usize::MAX; m];
    let mut used = vec![false; m];
    backtrack(
        source,
        target,
        base,
        &order,
        0,
        &mut assignment,
        &mut used,
        visit,
    )
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    source: &SetFamily,
    target: &SetFamily,
    base: Option<(&[bool], &[bool])>,
    order: &[usize],
    depth: usize,
    assignment: &mut [usize],
    used: &mut [bool],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if depth == order.len() {
        return visit(assignment);
    }
    let k = order[depth];
    let size = source.member(k).len();
    for t in 0..target.len() {
        if used[t] || target.member(t).len() != size {
            continue;
        }
        if let Some((base_a, base_b)) = base {
            if base_a[k] != base_b[t] {
                continue;
            }
        }
        if !compatible(source, target, order, depth, assignment, k, t) {
            continue;
        }
        assignment[k] = t;
        used[t] = true;
        if backtrack(source, target, base, order, depth + 1, assignment, used, visit) {
            return true;
        }
        assignment[k] = usize::MAX;
        used[t] = false;
    }
    false
}

/// Checks the candidate pair `(k, t)` against every earlier assignment:
/// corresponding intersections must have equal sizes, and whenever the
/// intersection on the source side is itself already assigned, its image must
/// be exactly the intersection of the images. Together with the decreasing
/// size order this enforces `η(X ∩ Y) = η(X) ∩ η(Y)` for the full assignment.
fn compatible(
    source: &SetFamily,
    target: &SetFamily,
    order: &[usize],
    depth: usize,
    assignment: &[usize],
    k: usize,
    t: usize,
) -> bool {
    for &j in &order[..depth] {
        let tj = assignment[j];
        let meet = source.member(k).intersection(source.member(j));
        let image_meet = target.member(t).intersection(target.member(tj));
        let (u, v) = match (source.position(&meet), target.position(&image_meet)) {
            (Some(u), Some(v)) => (u, v),
            // A meet outside the closure is empty and must pair with an
            // empty meet.
            (None, None) => {
                if meet.is_empty() && image_meet.is_empty() {
                    continue;
                }
                return false;
            }
            _ => return false,
        };
        if source.member(u).len() != target.member(v).len() {
            return false;
        }
        let assigned = if u == k {
            Some(t)
        } else if assignment[u] != usize::MAX {
            Some(assignment[u])
        } else {
            None
        };
        if let Some(image) = assigned {
            if image != v {
                return false;
            }
        }
    }
    true
}

/// Extends a set-level correspondence between closures over equal universes
/// to a vertex bijection: matched companion regions are paired element by
/// element in ascending order.
pub(crate) fn vertex_map_from_set_map(
    source: &SetFamily,
    target: &SetFamily,
    set_map: &[usize],
) -> Option<Vec<usize>> {
    let n = source.universe_size();
    if target.universe_size() != n {
        return None;
    }
    let pa = source.companion_partition();
    let pb = target.companion_partition();
    if pa.num_blocks() != pb.num_blocks() {
        return None;
    }
    let mut vertex_map = vec![usize::MAX; n];
    for i in 0..pa.num_blocks() {
        let image_fp = SubsetMask::from_elements(
            target.len(),
            pa.fingerprint_of_class(i).iter().map(|m| set_map[m]),
        );
        let j = pb.class_by_fingerprint(&image_fp)?;
        let block = pa.block(i);
        let image_block = pb.block(j);
        if block.len() != image_block.len() {
            return None;
        }
        for (x, y) in block.iter().zip(image_block.iter()) {
            vertex_map[x] = y;
        }
    }
    debug_assert!(is_permutation(&vertex_map, n));
    Some(vertex_map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, elems: &[usize]) -> SubsetMask {
        SubsetMask::from_elements(n, elems.iter().copied())
    }

    fn family(n: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::new(n, sets.iter().map(|s| set(n, s))).unwrap()
    }

    #[test]
    fn identity_on_equal_families() {
        let fam = family(8, &[&[0, 1, 2, 3], &[3, 4], &[4]]);
        let fc = find_faithful_correspondence(&fam, &fam).unwrap();
        assert!(fc.verify());
        let m = fc.source_closure().len();
        assert_eq!(fc.set_map(), (0..m).collect::<Vec<_>>().as_slice());
        assert_eq!(
            fc.vertex_map().unwrap(),
            (0..8).collect::<Vec<_>>().as_slice()
        );
    }

    #[test]
    fn size_mismatch_has_no_correspondence() {
        let a = family(4, &[&[0, 1]]);
        let b = family(4, &[&[0]]);
        assert!(find_faithful_correspondence(&a, &b).is_none());
    }

    #[test]
    fn permuted_universe_corresponds() {
        let a = family(6, &[&[0, 1, 2], &[2, 3], &[5]]);
        // Image under the permutation x -> 5 - x.
        let b = family(6, &[&[5, 4, 3], &[3, 2], &[0]]);
        let fc = find_faithful_correspondence(&a, &b).unwrap();
        assert!(fc.verify());
        let inv = fc.inverse();
        assert!(inv.verify());
    }

    #[test]
    fn intersection_structure_blocks_size_compatible_map() {
        // Both families have two 2-sets, but one pair overlaps and the other
        // is disjoint, so no faithful correspondence can exist.
        let a = family(5, &[&[0, 1], &[1, 2]]);
        let b = family(5, &[&[0, 1], &[2, 3]]);
        assert!(find_faithful_correspondence(&a, &b).is_none());
        assert!(find_faithful_correspondence(&b, &a).is_none());
    }

    #[test]
    fn different_universe_sizes_allowed_without_vertex_map() {
        let a = family(3, &[&[0, 1]]);
        let b = family(9, &[&[4, 7]]);
        let fc = find_faithful_correspondence(&a, &b).unwrap();
        assert!(fc.vertex_map().is_none());
        assert!(fc.verify());
    }

    #[test]
    fn vertex_map_respects_companion_blocks() {
        let a = family(6, &[&[0, 1, 2], &[2, 3]]);
        let b = family(6, &[&[3, 4, 5], &[1, 3]]);
        let fc = find_faithful_correspondence(&a, &b).unwrap();
        let vm = fc.vertex_map().unwrap();
        let pa = a.companion_partition();
        let pb = b.companion_partition();
        for block in pa.blocks() {
            let image = apply_pointwise(block, vm);
            assert!(pb.blocks().contains(&image));
            assert_eq!(block.len(), image.len());
        }
    }

    #[test]
    fn witness_reload_round_trip() {
        let a = family(6, &[&[0, 1, 2], &[2, 3]]);
        let b = family(6, &[&[3, 4, 5], &[1, 3]]);
        let fc = find_faithful_correspondence(&a, &b).unwrap();
        let reloaded =
            FaithfulCorrespondence::from_vertex_map(&a, &b, fc.vertex_map().unwrap()).unwrap();
        assert!(reloaded.verify());
        assert_eq!(reloaded.set_map(), fc.set_map());
    }

    #[test]
    fn bogus_vertex_map_is_rejected() {
        let a = family(4, &[&[0, 1]]);
        let b = family(4, &[&[0, 1]]);
        // Maps the member {0,1} onto {1,2}, which is not in the closure.
        let err = FaithfulCorrespondence::from_vertex_map(&a, &b, &[1, 2, 3, 0]);
        assert!(matches!(err, Err(Error::InvalidWitness(_))));
    }
}
