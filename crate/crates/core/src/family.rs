//! Families of subsets over a finite universe, their companion partitions
//! (the non-empty Venn regions), and intersection closures.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::mask::SubsetMask;

/// An ordered, duplicate-free family of subsets of `{0, .., n-1}`.
///
/// Members are kept in canonical order: ascending by the numeric value of
/// their bit pattern. Every structure derived from a family is therefore
/// deterministic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SetFamily {
    universe: usize,
    members: Vec<SubsetMask>,
}

impl SetFamily {
    /// Builds a family, sorting members canonically and dropping duplicates.
    ///
    /// Fails if any member's width differs from `universe`.
    pub fn new<I: IntoIterator<Item = SubsetMask>>(universe: usize, members: I) -> Result<Self> {
        let mut members: Vec<SubsetMask> = members.into_iter().collect();
        for m in &members {
            if m.width() != universe {
                return Err(Error::WidthMismatch {
                    found: m.width(),
                    expected: universe,
                });
            }
        }
        members.sort_unstable();
        members.dedup();
        Ok(SetFamily { universe, members })
    }

    pub fn empty(universe: usize) -> Self {
        SetFamily {
            universe,
            members: Vec::new(),
        }
    }

    pub fn universe_size(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[SubsetMask] {
        &self.members
    }

    pub fn member(&self, index: usize) -> &SubsetMask {
        &self.members[index]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, SubsetMask> {
        self.members.iter()
    }

    /// Position of `set` in canonical order, if it is a member.
    pub fn position(&self, set: &SubsetMask) -> Option<usize> {
        self.members.binary_search(set).ok()
    }

    pub fn contains(&self, set: &SubsetMask) -> bool {
        self.position(set).is_some()
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.universe == other.universe && self.members.iter().all(|m| other.contains(m))
    }

    /// Union of all members (empty set for an empty family).
    pub fn union_of_members(&self) -> SubsetMask {
        self.members
            .iter()
            .fold(SubsetMask::empty(self.universe), |acc, m| acc.union(m))
    }

    /// Intersection of all members; the empty intersection is the whole
    /// universe, matching the outer-region convention.
    pub fn intersection_of_members(&self) -> SubsetMask {
        self.members
            .iter()
            .fold(SubsetMask::full(self.universe), |acc, m| acc.intersection(m))
    }

    /// The neighborhood of `x`: all members containing `x`, in canonical order.
    pub fn neighborhood(&self, x: usize) -> Result<SetFamily> {
        if x >= self.universe {
            return Err(Error::ElementOutOfRange {
                element: x,
                universe: self.universe,
            });
        }
        Ok(SetFamily {
            universe: self.universe,
            members: self.members.iter().filter(|m| m.contains(x)).cloned().collect(),
        })
    }

    /// Partitions the universe into companion classes: two elements share a
    /// class exactly when they lie in the same members, i.e. in the same
    /// region of the family's Venn diagram. Elements outside every member
    /// form the outer region.
    ///
    /// Classes are ordered by first occurrence while scanning `0..n`.
    pub fn companion_partition(&self) -> CompanionPartition {
        let n = self.universe;
        let m = self.members.len();
        let mut class_of = vec![0usize; n];
        let mut blocks: Vec<SubsetMask> = Vec::new();
        let mut fingerprints: Vec<SubsetMask> = Vec::new();
        let mut seen: HashMap<SubsetMask, usize> = HashMap::new();

        for (x, class) in class_of.iter_mut().enumerate() {
            let mut fp = SubsetMask::empty(m);
            for (i, member) in self.members.iter().enumerate() {
                if member.contains(x) {
                    fp.insert(i);
                }
            }
            let id = *seen.entry(fp.clone()).or_insert_with(|| {
                blocks.push(SubsetMask::empty(n));
                fingerprints.push(fp);
                blocks.len() - 1
            });
            blocks[id].insert(x);
            *class = id;
        }

        CompanionPartition {
            family: self.clone(),
            blocks,
            class_of,
            fingerprints,
        }
    }

    /// The smallest superfamily closed under non-empty pairwise intersection.
    ///
    /// An empty intersection of two members adds nothing (the empty set is a
    /// member only when the input already contains it); this is the closure
    /// under which faithful correspondences are defined.
    pub fn intersection_closure(&self) -> SetFamily {
        let mut closed: BTreeSet<SubsetMask> = self.members.iter().cloned().collect();
        let mut frontier: Vec<SubsetMask> = self.members.clone();
        while !frontier.is_empty() {
            let snapshot: Vec<SubsetMask> = closed.iter().cloned().collect();
            let mut fresh = Vec::new();
            for new in &frontier {
                for old in &snapshot {
                    let meet = new.intersection(old);
                    if !meet.is_empty() && closed.insert(meet.clone()) {
                        fresh.push(meet);
                    }
                }
            }
            frontier = fresh;
        }
        SetFamily {
            universe: self.universe,
            members: closed.into_iter().collect(),
        }
    }

    /// Closure test matching [`SetFamily::intersection_closure`]: every
    /// non-empty pairwise intersection must be a member.
    pub fn is_intersection_closed(&self) -> bool {
        self.members.iter().enumerate().all(|(i, a)| {
            self.members[i..]
                .iter()
                .all(|b| {
                    let meet = a.intersection(b);
                    meet.is_empty() || self.contains(&meet)
                })
        })
    }

    /// A canonical multiset of per-region data that any faithful
    /// correspondence must preserve: one entry per companion region of the
    /// intersection closure, recording the region's size and the sizes of the
    /// closure members containing it. Used to prune the correspondence search.
    pub fn region_size_signature(&self) -> RegionSignature {
        let closure = self.intersection_closure();
        let partition = closure.companion_partition();
        let mut regions: Vec<(usize, Vec<usize>)> = partition
            .blocks
            .iter()
            .zip(partition.fingerprints.iter())
            .map(|(block, fp)| {
                let mut sizes: Vec<usize> = fp.iter().map(|i| closure.member(i).len()).collect();
                sizes.sort_unstable();
                (block.len(), sizes)
            })
            .collect();
        regions.sort_unstable();
        RegionSignature { regions }
    }
}

impl fmt::Display for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, m) in self.members.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

/// Invariant of a family under faithful correspondences; see
/// [`SetFamily::region_size_signature`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RegionSignature {
    regions: Vec<(usize, Vec<usize>)>,
}

impl RegionSignature {
    /// Multiset of region sizes.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.regions.iter().map(|(s, _)| *s).collect();
        sizes.sort_unstable();
        sizes
    }

    /// The signature with the outer region (empty neighborhood) removed.
    ///
    /// Correspondences between families over universes of different sizes
    /// still preserve every region except the outer one.
    pub fn without_outer(&self) -> RegionSignature {
        RegionSignature {
            regions: self
                .regions
                .iter()
                .filter(|(_, sizes)| !sizes.is_empty())
                .cloned()
                .collect(),
        }
    }
}

/// The companion classes of a family: pairwise disjoint non-empty blocks
/// covering the universe, each carrying the neighborhood that defines it.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompanionPartition {
    family: SetFamily,
    blocks: Vec<SubsetMask>,
    class_of: Vec<usize>,
    /// Per block, the member indices of the defining neighborhood.
    fingerprints: Vec<SubsetMask>,
}

impl CompanionPartition {
    pub fn universe_size(&self) -> usize {
        self.family.universe
    }

    /// The family this partition was derived from.
    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[SubsetMask] {
        &self.blocks
    }

    pub fn block(&self, index: usize) -> &SubsetMask {
        &self.blocks[index]
    }

    /// Index of the block containing `x`.
    pub fn class_of(&self, x: usize) -> Result<usize> {
        if x >= self.class_of.len() {
            return Err(Error::ElementOutOfRange {
                element: x,
                universe: self.class_of.len(),
            });
        }
        Ok(self.class_of[x])
    }

    pub fn same_block(&self, x: usize, y: usize) -> Result<bool> {
        Ok(self.class_of(x)? == self.class_of(y)?)
    }

    /// Block indices of all elements, in element order.
    pub fn class_indices(&self) -> &[usize] {
        &self.class_of
    }

    /// The subfamily 𝒫 of members that defines block `index`: every element
    /// of the block lies in exactly the members of 𝒫.
    pub fn neighborhood_of_class(&self, index: usize) -> SetFamily {
        SetFamily {
            universe: self.family.universe,
            members: self.fingerprints[index]
                .iter()
                .map(|i| self.family.member(i).clone())
                .collect(),
        }
    }

    pub(crate) fn fingerprint_of_class(&self, index: usize) -> &SubsetMask {
        &self.fingerprints[index]
    }

    pub(crate) fn class_by_fingerprint(&self, fp: &SubsetMask) -> Option<usize> {
        self.fingerprints.iter().position(|f| f == fp)
    }

    /// Sorted multiset of block sizes.
    pub fn block_size_multiset(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.blocks.iter().map(|b| b.len()).collect();
        sizes.sort_unstable();
        sizes
    }
}
