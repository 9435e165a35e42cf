//! Shared builders and oracles for the integration suites.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rxnskel::graph::OneOutGraph;
use rxnskel::{Digraph, Reaction, ReactionSystem, SetFamily, Skeleton, SubsetMask};

/// Deterministic generator per suite; `RXNSKEL_TEST_SEED` perturbs every
/// suite's seed at once for soak runs.
pub fn rng(seed: u64) -> ChaCha8Rng {
    let offset = std::env::var("RXNSKEL_TEST_SEED")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(0u64);
    ChaCha8Rng::seed_from_u64(seed ^ offset)
}

/// Mask from 0-based elements.
pub fn mask(n: usize, elems: &[usize]) -> SubsetMask {
    SubsetMask::from_elements(n, elems.iter().copied())
}

/// Mask from the 1-based labels used in the worked examples.
pub fn labeled(n: usize, elems: &[usize]) -> SubsetMask {
    SubsetMask::from_elements(n, elems.iter().map(|e| e - 1))
}

pub fn random_mask(rng: &mut ChaCha8Rng, n: usize) -> SubsetMask {
    SubsetMask::from_elements(n, (0..n).filter(|_| rng.gen_bool(0.5)))
}

pub fn random_nonempty_mask(rng: &mut ChaCha8Rng, n: usize) -> SubsetMask {
    loop {
        let m = random_mask(rng, n);
        if !m.is_empty() {
            return m;
        }
    }
}

pub fn random_family(rng: &mut ChaCha8Rng, n: usize, max_members: usize) -> SetFamily {
    let count = rng.gen_range(0..=max_members);
    SetFamily::new(n, (0..count).map(|_| random_mask(rng, n))).unwrap()
}

pub fn random_digraph(rng: &mut ChaCha8Rng, n: usize) -> Digraph {
    Digraph::from_out_sets((0..n).map(|_| random_mask(rng, n)).collect()).unwrap()
}

pub fn random_permutation(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    perm
}

pub fn random_reaction_system(rng: &mut ChaCha8Rng, n: usize, max_reactions: usize) -> ReactionSystem {
    let count = rng.gen_range(0..=max_reactions);
    let reactions = (0..count)
        .map(|_| {
            Reaction::new(
                random_nonempty_mask(rng, n),
                random_nonempty_mask(rng, n),
                random_mask(rng, n),
            )
            .unwrap()
        })
        .collect();
    ReactionSystem::new(n, reactions).unwrap()
}

/// A random one-out graph on `2^n` points carrying the two mandatory edges
/// `(∅, ∅)` and `(S, ∅)`.
pub fn random_admissible_one_out(rng: &mut ChaCha8Rng, n: usize) -> OneOutGraph {
    let points = 1usize << n;
    let mut successors: Vec<usize> = (0..points).map(|_| rng.gen_range(0..points)).collect();
    successors[0] = 0;
    successors[points - 1] = 0;
    OneOutGraph::new(successors).unwrap()
}

/// A random skeleton over `n` vertices whose representatives all lie in their
/// own sets.
pub fn random_self_represented_skeleton(rng: &mut ChaCha8Rng, n: usize) -> Skeleton {
    loop {
        let members = rng.gen_range(1..=n.min(4));
        let mut indexed: Vec<(usize, SubsetMask)> = Vec::new();
        let mut reps_used = vec![false; n];
        for _ in 0..members {
            let rep = rng.gen_range(0..n);
            if reps_used[rep] {
                continue;
            }
            let mut set = random_mask(rng, n);
            set.insert(rep);
            if indexed.iter().any(|(_, s)| *s == set) {
                continue;
            }
            reps_used[rep] = true;
            indexed.push((rep, set));
        }
        if indexed.is_empty() {
            continue;
        }
        let reps: Vec<usize> = indexed.iter().map(|(r, _)| *r).collect();
        let assignment: Vec<usize> = (0..n)
            .map(|x| {
                // Keep f onto by pinning each representative to itself.
                if let Some(i) = reps.iter().position(|&r| r == x) {
                    reps[i]
                } else {
                    reps[rng.gen_range(0..reps.len())]
                }
            })
            .collect();
        if let Ok(s) = Skeleton::from_indexed_sets(n, indexed, assignment) {
            return s;
        }
    }
}

/// The six-reaction system over `{1,2,3,4}` used throughout the worked
/// examples; elements stored 0-based.
pub fn tour_rs() -> ReactionSystem {
    let r = |r: &[usize], i: &[usize], p: &[usize]| {
        Reaction::new(labeled(4, r), labeled(4, i), labeled(4, p)).unwrap()
    };
    ReactionSystem::new(
        4,
        vec![
            r(&[1], &[3], &[2]),
            r(&[2], &[1], &[1]),
            r(&[2], &[3], &[3]),
            r(&[3], &[1, 2], &[1, 2, 4]),
            r(&[4], &[3], &[1, 2]),
            r(&[1, 3], &[2, 4], &[2, 3]),
        ],
    )
    .unwrap()
    .with_labels(vec!["1".into(), "2".into(), "3".into(), "4".into()])
    .unwrap()
}

/// All permutations of `0..n` in lexicographic order (test oracle sizes
/// only).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    fn go(current: &mut Vec<usize>, chosen: usize, out: &mut Vec<Vec<usize>>) {
        let n = current.len();
        if chosen == n {
            out.push(current.clone());
            return;
        }
        for i in chosen..n {
            current.swap(chosen, i);
            go(current, chosen + 1, out);
            current.swap(chosen, i);
        }
    }
    go(&mut current, 0, &mut out);
    out.sort_unstable();
    out
}

pub fn apply_to_set(set: &SubsetMask, map: &[usize]) -> SubsetMask {
    SubsetMask::from_elements(set.width(), set.iter().map(|x| map[x]))
}

/// Brute-force oracle for faithful correspondences over equal universes:
/// some vertex bijection must map the source closure pointwise onto the
/// target closure.
pub fn exists_pointwise_closure_bijection(a: &SetFamily, b: &SetFamily) -> bool {
    assert_eq!(a.universe_size(), b.universe_size());
    let source = a.intersection_closure();
    let target = b.intersection_closure();
    if source.len() != target.len() {
        return false;
    }
    permutations(a.universe_size()).iter().any(|perm| {
        source.iter().all(|m| target.contains(&apply_to_set(m, perm)))
    })
}

/// Brute-force oracle for skeleton companionship: enumerate all vertex
/// bijections and check the defining conditions directly.
pub fn exists_companion_bijection(a: &Skeleton, b: &Skeleton) -> bool {
    if a.universe_size() != b.universe_size() {
        return false;
    }
    let source = a.family().intersection_closure();
    let target = b.family().intersection_closure();
    if source.len() != target.len() {
        return false;
    }
    permutations(a.universe_size()).iter().any(|eta| {
        let faithful = source
            .iter()
            .all(|m| target.contains(&apply_to_set(m, eta)));
        faithful
            && (0..a.universe_size()).all(|x| {
                let image_out = apply_to_set(a.family().member(a.member_index_of(x)), eta);
                image_out == *b.family().member(b.member_index_of(eta[x]))
            })
    })
}
