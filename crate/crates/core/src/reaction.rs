//! Reaction systems and their dynamics: the result function `res`, the
//! zero-context and transition graphs, synthesis of a reaction system from an
//! admissible one-out graph, recognition of transition graphs, and the
//! equivalence decision through companion skeletons.

use crate::correspondence::FaithfulCorrespondence;
use crate::error::{Error, Result};
use crate::family::{CompanionPartition, SetFamily};
use crate::graph::{is_isomorphism, Digraph, OneOutGraph};
use crate::lattice::{embed_as_cone_graph, MainSkeleton, PowersetPoset};
use crate::mask::SubsetMask;
use crate::skeleton::{are_companions, build_isomorphism};

/// Default cap on the background size for operations materializing all `2^n`
/// states (result tables, zero-context graphs, state companions).
pub const DEFAULT_ZERO_CONTEXT_CAP: usize = 12;

/// Default cap on the background size for transition-graph work, where the
/// edge count can reach `4^n`.
pub const DEFAULT_TRANSITION_CAP: usize = 10;

/// A reaction `(R, I, P)`: enabled in a state `X` when `R ⊆ X` and
/// `I ∩ X = ∅`, in which case it contributes the product `P`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Reaction {
    reactants: SubsetMask,
    inhibitors: SubsetMask,
    products: SubsetMask,
}

impl Reaction {
    /// Builds a reaction; reactants and inhibitors must be non-empty and all
    /// three masks must share a width.
    pub fn new(reactants: SubsetMask, inhibitors: SubsetMask, products: SubsetMask) -> Result<Self> {
        let width = reactants.width();
        for mask in [&inhibitors, &products] {
            if mask.width() != width {
                return Err(Error::WidthMismatch {
                    found: mask.width(),
                    expected: width,
                });
            }
        }
        if reactants.is_empty() {
            return Err(Error::Invalid("reactant set must be non-empty".into()));
        }
        if inhibitors.is_empty() {
            return Err(Error::Invalid("inhibitor set must be non-empty".into()));
        }
        Ok(Reaction {
            reactants,
            inhibitors,
            products,
        })
    }

    pub fn width(&self) -> usize {
        self.reactants.width()
    }

    pub fn reactants(&self) -> &SubsetMask {
        &self.reactants
    }

    pub fn inhibitors(&self) -> &SubsetMask {
        &self.inhibitors
    }

    pub fn products(&self) -> &SubsetMask {
        &self.products
    }

    pub fn enabled(&self, state: &SubsetMask) -> Result<bool> {
        if state.width() != self.width() {
            return Err(Error::WidthMismatch {
                found: state.width(),
                expected: self.width(),
            });
        }
        Ok(self.reactants.is_subset_of(state) && self.inhibitors.is_disjoint_from(state))
    }

    /// `res_a(X)`: the products if enabled, the empty set otherwise.
    pub fn result_on(&self, state: &SubsetMask) -> Result<SubsetMask> {
        Ok(if self.enabled(state)? {
            self.products.clone()
        } else {
            SubsetMask::empty(self.width())
        })
    }

    /// A reaction whose reactants and inhibitors overlap can never be
    /// enabled.
    pub fn is_inert(&self) -> bool {
        !self.reactants.is_disjoint_from(&self.inhibitors)
    }
}

/// A reaction system: a background set of size `n` and a list of reactions
/// over it. Exact duplicate reactions are dropped at construction; reactions
/// with overlapping reactants and inhibitors are legal but inert (see
/// [`ReactionSystem::inert_reactions`]).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ReactionSystem {
    background: usize,
    reactions: Vec<Reaction>,
    labels: Option<Vec<String>>,
}

impl ReactionSystem {
    pub fn new(background: usize, reactions: Vec<Reaction>) -> Result<Self> {
        let mut deduped: Vec<Reaction> = Vec::with_capacity(reactions.len());
        for r in reactions {
            if r.width() != background {
                return Err(Error::WidthMismatch {
                    found: r.width(),
                    expected: background,
                });
            }
            if !deduped.contains(&r) {
                deduped.push(r);
            }
        }
        Ok(ReactionSystem {
            background,
            reactions: deduped,
            labels: None,
        })
    }

    /// Attaches element labels (a symbol table for display and text formats).
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.background {
            return Err(Error::Invalid(format!(
                "{} labels for a background of size {}",
                labels.len(),
                self.background
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn background_size(&self) -> usize {
        self.background
    }

    pub fn num_states(&self) -> usize {
        1 << self.background
    }

    pub fn reactions(&self) -> &[Reaction] {
        &self.reactions
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Indices of reactions that can never fire (lint, not an error).
    pub fn inert_reactions(&self) -> Vec<usize> {
        self.reactions
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_inert())
            .map(|(i, _)| i)
            .collect()
    }

    /// `res(X)`: the union of the products of all reactions enabled in `X`.
    pub fn result(&self, state: &SubsetMask) -> Result<SubsetMask> {
        if state.width() != self.background {
            return Err(Error::WidthMismatch {
                found: state.width(),
                expected: self.background,
            });
        }
        let mut out = SubsetMask::empty(self.background);
        for r in &self.reactions {
            if r.enabled(state)? {
                out = out.union(r.products());
            }
        }
        Ok(out)
    }

    /// Tabulates `res` over all `2^n` states and collects its image, the
    /// family `RES`.
    pub fn result_family(&self) -> Result<ResultFamily> {
        self.result_family_with_cap(DEFAULT_ZERO_CONTEXT_CAP)
    }

    pub fn result_family_with_cap(&self, cap: usize) -> Result<ResultFamily> {
        if self.background > cap {
            return Err(Error::SizeCapExceeded {
                requested: self.background,
                cap,
            });
        }
        let table: Vec<SubsetMask> = (0..self.num_states())
            .map(|i| self.result(&SubsetMask::from_index(self.background, i)))
            .collect::<Result<_>>()?;
        let family = SetFamily::new(self.background, table.iter().cloned())?;
        Ok(ResultFamily {
            ground: self.background,
            table,
            family,
        })
    }

    /// The zero-context graph: the one-out graph on `2^n` states with the
    /// edge `(v, res(v))` at every state.
    pub fn zero_context_graph(&self) -> Result<OneOutGraph> {
        self.zero_context_graph_with_cap(DEFAULT_ZERO_CONTEXT_CAP)
    }

    pub fn zero_context_graph_with_cap(&self, cap: usize) -> Result<OneOutGraph> {
        Ok(self.result_family_with_cap(cap)?.zero_context_graph())
    }

    /// The main skeleton of `res` on `(2^S, ⊆)`.
    pub fn main_skeleton(&self) -> Result<MainSkeleton> {
        self.main_skeleton_with_cap(DEFAULT_ZERO_CONTEXT_CAP)
    }

    pub fn main_skeleton_with_cap(&self, cap: usize) -> Result<MainSkeleton> {
        MainSkeleton::new(
            self.background,
            self.result_family_with_cap(cap)?.successor_indices(),
        )
    }

    /// The transition graph: edges `(v, w)` for every `w ⊇ res(v)`, i.e.
    /// `out(v) = Up(res(v))`. The zero-context graph is a subgraph.
    pub fn transition_graph(&self) -> Result<Digraph> {
        self.transition_graph_with_cap(DEFAULT_TRANSITION_CAP)
    }

    pub fn transition_graph_with_cap(&self, cap: usize) -> Result<Digraph> {
        if self.background > cap {
            return Err(Error::SizeCapExceeded {
                requested: self.background,
                cap,
            });
        }
        self.main_skeleton_with_cap(cap)?
            .graph_with_cap(self.background)
    }

    /// Checks that `res(W_i) ⊆ W_{i+1}` along the whole sequence, i.e. that
    /// the sequence is a walk in the transition graph. Any first state is
    /// accepted.
    pub fn validate_state_sequence(&self, sequence: &[SubsetMask]) -> Result<bool> {
        if sequence.is_empty() {
            return Err(Error::Precondition("state sequence is empty".into()));
        }
        for window in sequence.windows(2) {
            if !self.result(&window[0])?.is_subset_of(&window[1]) {
                return Ok(false);
            }
        }
        // Validate the width of a trailing singleton as well.
        self.result(sequence.last().expect("non-empty"))?;
        Ok(true)
    }

    /// Companion partition of the `2^n` states under the cone family based at
    /// `RES`: two states can have their outgoing zero-context edges swapped
    /// exactly when they share a block (and neither is `∅` or `S`).
    pub fn res_companions(&self) -> Result<CompanionPartition> {
        self.res_companions_with_cap(DEFAULT_ZERO_CONTEXT_CAP)
    }

    pub fn res_companions_with_cap(&self, cap: usize) -> Result<CompanionPartition> {
        let res = self.result_family_with_cap(cap)?;
        let poset = PowersetPoset::with_cap(self.background, cap)?;
        poset.cone_companions(res.family().members())
    }

    /// Exchanges the successors of two companion states in the zero-context
    /// graph and re-synthesizes a reaction system for the swapped graph. The
    /// transition graphs before and after are isomorphic.
    pub fn swap_states(&self, x: &SubsetMask, y: &SubsetMask) -> Result<ReactionSystem> {
        self.swap_states_with_cap(x, y, DEFAULT_ZERO_CONTEXT_CAP)
    }

    pub fn swap_states_with_cap(
        &self,
        x: &SubsetMask,
        y: &SubsetMask,
        cap: usize,
    ) -> Result<ReactionSystem> {
        for state in [x, y] {
            if state.width() != self.background {
                return Err(Error::WidthMismatch {
                    found: state.width(),
                    expected: self.background,
                });
            }
            if state.is_empty() || state.is_full() {
                return Err(Error::Precondition(format!(
                    "state {state} must differ from both the empty state and the full background"
                )));
            }
        }
        if !self
            .res_companions_with_cap(cap)?
            .same_block(x.index(), y.index())?
        {
            return Err(Error::Precondition(format!(
                "states {x} and {y} are not companions with respect to RES"
            )));
        }
        let zero = self.zero_context_graph_with_cap(cap)?;
        let mut successors = zero.successors().to_vec();
        successors.swap(x.index(), y.index());
        let swapped = rs_from_one_out_graph(&OneOutGraph::new(successors)?)?;
        match &self.labels {
            Some(labels) => swapped.with_labels(labels.clone()),
            None => Ok(swapped),
        }
    }
}

/// The tabulated result function of a reaction system together with its
/// image, the family `RES = { res(X) | X ⊆ S }`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ResultFamily {
    ground: usize,
    table: Vec<SubsetMask>,
    family: SetFamily,
}

impl ResultFamily {
    pub fn ground_size(&self) -> usize {
        self.ground
    }

    pub fn num_states(&self) -> usize {
        self.table.len()
    }

    /// `res` of the state with the given index.
    pub fn res_of_index(&self, index: usize) -> &SubsetMask {
        &self.table[index]
    }

    pub fn table(&self) -> &[SubsetMask] {
        &self.table
    }

    /// The image family `RES`, a set family over the background.
    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    /// The result table as point indices, i.e. the successor table of the
    /// zero-context graph.
    pub fn successor_indices(&self) -> Vec<usize> {
        self.table.iter().map(|m| m.index()).collect()
    }

    pub fn zero_context_graph(&self) -> OneOutGraph {
        OneOutGraph::new(self.successor_indices()).expect("indices are in range")
    }
}

/// Synthesizes a reaction system whose zero-context graph is exactly `g`
/// (one reaction `(X, S∖X, successor(X))` per non-extremal state). Requires
/// the two mandatory edges `(∅, ∅)` and `(S, ∅)`.
pub fn rs_from_one_out_graph(g: &OneOutGraph) -> Result<ReactionSystem> {
    let points = g.num_vertices();
    if points < 2 || !points.is_power_of_two() {
        return Err(Error::Synthesis(format!(
            "{points} vertices is not 2^n for n >= 1"
        )));
    }
    let n = points.trailing_zeros() as usize;
    if g.successor(0)? != 0 {
        return Err(Error::Synthesis(format!(
            "the empty state must map to itself, but {} -> {}",
            SubsetMask::empty(n),
            SubsetMask::from_index(n, g.successor(0)?)
        )));
    }
    if g.successor(points - 1)? != 0 {
        return Err(Error::Synthesis(format!(
            "the full state must map to the empty state, but {} -> {}",
            SubsetMask::full(n),
            SubsetMask::from_index(n, g.successor(points - 1)?)
        )));
    }
    let mut reactions = Vec::with_capacity(points - 2);
    for x in 1..points - 1 {
        let state = SubsetMask::from_index(n, x);
        reactions.push(Reaction::new(
            state.clone(),
            state.complement(),
            SubsetMask::from_index(n, g.successor(x)?),
        )?);
    }
    ReactionSystem::new(n, reactions)
}

/// Decides whether `g` is isomorphic to the transition graph of some reaction
/// system, and if so synthesizes one together with the isomorphism (vertex to
/// state index).
///
/// The three characterizing conditions are checked in order: the vertex count
/// must be a power of two, the out-family must embed as a family of upper
/// cones, and there must be vertices `v⊥` (in no out-set except the full one)
/// and `v⊤` (in every out-set) with edges `(v⊥, v⊥)` and `(v⊤, v⊥)`. The
/// embedding is then re-pinned so that `v⊥` maps to `∅` and `v⊤` to `S`, and
/// the reaction system is synthesized from the induced one-out graph.
pub fn is_transition_graph(g: &Digraph) -> Option<(ReactionSystem, Vec<usize>)> {
    let num_vertices = g.num_vertices();
    if num_vertices < 2 || !num_vertices.is_power_of_two() {
        return None;
    }
    let embedding = embed_as_cone_graph(g)?;
    let ground = embedding.ground_size();
    let fam = g.out_family();
    let full = SubsetMask::full(num_vertices);
    let union_of_proper: SubsetMask = fam
        .iter()
        .filter(|m| **m != full)
        .fold(SubsetMask::empty(num_vertices), |acc, m| acc.union(m));
    let meet = fam.intersection_of_members();

    let mut pinned: Option<(usize, usize)> = None;
    'outer: for v_bot in 0..num_vertices {
        if union_of_proper.contains(v_bot) || !g.is_edge(v_bot, v_bot) {
            continue;
        }
        for v_top in 0..num_vertices {
            if v_top != v_bot && meet.contains(v_top) && g.is_edge(v_top, v_bot) {
                pinned = Some((v_bot, v_top));
                break 'outer;
            }
        }
    }
    let (v_bot, v_top) = pinned?;

    // Re-pin φ inside companion classes: v⊥ must map to ∅ and v⊤ to S.
    let mut phi = embedding.vertex_to_point().to_vec();
    for (vertex, point) in [(v_bot, 0usize), (v_top, num_vertices - 1)] {
        if phi[vertex] != point {
            let holder = phi.iter().position(|&p| p == point).expect("bijection");
            phi.swap(vertex, holder);
        }
    }

    let mut table = vec![0usize; num_vertices];
    for x in 0..num_vertices {
        let i = fam
            .position(g.out_set(x).expect("in range"))
            .expect("out-set is a member");
        table[phi[x]] = embedding.base_points()[i].index();
    }
    let rs = rs_from_one_out_graph(&OneOutGraph::new(table).expect("indices in range"))
        .expect("pinned embedding satisfies the mandatory edges");

    let transition = rs
        .transition_graph_with_cap(ground)
        .expect("ground size fits its own cap");
    assert!(
        is_isomorphism(g, &transition, &phi),
        "transition-graph synthesis produced a non-isomorphism; this is a bug"
    );
    Some((rs, phi))
}

/// Verdict of the equivalence decision for two reaction systems.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Equivalence {
    /// The transition graphs are isomorphic; the witness is a companion
    /// correspondence between the main skeletons of the two result functions
    /// (closures of the `Up[RES]` families, with the state-level bijection).
    Equivalent(FaithfulCorrespondence),
    NotEquivalent,
    /// Different background sizes: the state spaces cannot be in bijection.
    BackgroundSizeMismatch { left: usize, right: usize },
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent(_))
    }

    pub fn witness(&self) -> Option<&FaithfulCorrespondence> {
        match self {
            Equivalence::Equivalent(w) => Some(w),
            _ => None,
        }
    }
}

/// Decides whether two reaction systems have isomorphic transition graphs,
/// without materializing the transition graphs: their main skeletons (result
/// tables plus `RES` cone families) are checked for companionship.
pub fn equivalent(a: &ReactionSystem, b: &ReactionSystem) -> Result<Equivalence> {
    equivalent_with_cap(a, b, DEFAULT_TRANSITION_CAP)
}

pub fn equivalent_with_cap(
    a: &ReactionSystem,
    b: &ReactionSystem,
    cap: usize,
) -> Result<Equivalence> {
    if a.background_size() != b.background_size() {
        return Ok(Equivalence::BackgroundSizeMismatch {
            left: a.background_size(),
            right: b.background_size(),
        });
    }
    let sa = a.main_skeleton_with_cap(cap)?.to_skeleton();
    let sb = b.main_skeleton_with_cap(cap)?.to_skeleton();
    Ok(match are_companions(&sa, &sb) {
        Some(witness) => Equivalence::Equivalent(witness),
        None => Equivalence::NotEquivalent,
    })
}

/// Expands an equivalence witness into the full state-level isomorphism `Ψ`
/// of the two transition graphs.
pub fn transition_isomorphism(
    a: &ReactionSystem,
    b: &ReactionSystem,
    witness: &FaithfulCorrespondence,
) -> Result<Vec<usize>> {
    let cap = a.background_size().max(b.background_size());
    let sa = a.main_skeleton_with_cap(cap)?.to_skeleton();
    let sb = b.main_skeleton_with_cap(cap)?.to_skeleton();
    build_isomorphism(&sa, &sb, witness)
}
