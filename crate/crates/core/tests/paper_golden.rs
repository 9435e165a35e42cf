//! Golden tests pinning the worked examples: the eight-element companion
//! regions, the three skeletons defining one graph, companion edge swapping,
//! the cone embedding of the eight-vertex graph, and the six-reaction system
//! with its zero-context graphs before and after a state swap.

mod common;

use common::{labeled, mask, tour_rs};
use rxnskel::format::{parse_digraph, parse_set_family};
use rxnskel::graph::{brute_force_isomorphic, is_isomorphism};
use rxnskel::lattice::embed_as_cone_graph;
use rxnskel::reaction::{equivalent, transition_isomorphism};
use rxnskel::skeleton::{are_companions, build_isomorphism, certify_isomorphic};
use rxnskel::{Digraph, SetFamily, Skeleton, SubsetMask};

fn companion_example_family() -> SetFamily {
    SetFamily::new(
        8,
        vec![labeled(8, &[1, 2, 3, 4]), labeled(8, &[4, 5]), labeled(8, &[5])],
    )
    .unwrap()
}

#[test]
fn companion_regions_of_the_eight_element_family() {
    let fam = companion_example_family();
    assert_eq!(
        fam.neighborhood(0).unwrap().members(),
        &[labeled(8, &[1, 2, 3, 4])]
    );
    let part = fam.companion_partition();
    assert_eq!(
        part.blocks(),
        &[
            labeled(8, &[1, 2, 3]),
            labeled(8, &[4]),
            labeled(8, &[5]),
            labeled(8, &[6, 7, 8]),
        ]
    );
    let closure = fam.intersection_closure();
    assert_eq!(closure.len(), 4);
    assert!(closure.contains(&labeled(8, &[4])));
    assert!(fam.members().iter().all(|m| closure.contains(m)));
}

/// The three skeletons ν, σ, τ over five vertices: same family
/// X = {1,2,3}, Y = {2,3,4}, different representatives, same defined graph.
fn example_skeletons() -> (Skeleton, Skeleton, Skeleton) {
    let x = labeled(5, &[1, 2, 3]);
    let y = labeled(5, &[2, 3, 4]);
    let nu = Skeleton::from_indexed_sets(
        5,
        vec![(1, x.clone()), (2, y.clone())],
        vec![1, 2, 1, 2, 2],
    )
    .unwrap();
    let sigma = Skeleton::from_indexed_sets(
        5,
        vec![(0, x.clone()), (3, y.clone())],
        vec![0, 3, 0, 3, 3],
    )
    .unwrap();
    let tau = Skeleton::from_indexed_sets(5, vec![(3, x), (4, y)], vec![3, 4, 3, 4, 4]).unwrap();
    (nu, sigma, tau)
}

fn example_graph() -> Digraph {
    let mut edges = Vec::new();
    for u in [1usize, 3] {
        for v in [1usize, 2, 3] {
            edges.push((u - 1, v - 1));
        }
    }
    for u in [2usize, 4, 5] {
        for v in [2usize, 3, 4] {
            edges.push((u - 1, v - 1));
        }
    }
    Digraph::from_edges(5, &edges).unwrap()
}

#[test]
fn three_skeletons_define_one_graph() {
    let (nu, sigma, tau) = example_skeletons();
    let g = example_graph();
    assert_eq!(nu.graph(), g);
    assert_eq!(sigma.graph(), g);
    assert_eq!(tau.graph(), g);

    // One-out graphs as in the figure (1-based): f = 1→2,2→3,3→2,4→3,5→3;
    // g = 1→1,2→4,3→1,4→4,5→4; h = 1→4,2→5,3→4,4→5,5→5.
    assert_eq!(nu.one_out().successors(), &[1, 2, 1, 2, 2]);
    assert_eq!(sigma.one_out().successors(), &[0, 3, 0, 3, 3]);
    assert_eq!(tau.one_out().successors(), &[3, 4, 3, 4, 4]);

    // G_f and G_g are subgraphs of G, G_h is not.
    assert!(nu.one_out().is_subgraph_of(&g));
    assert!(sigma.one_out().is_subgraph_of(&g));
    assert!(!tau.one_out().is_subgraph_of(&g));
    assert!(nu.representatives_are_members());
    assert!(sigma.representatives_are_members());
    assert!(!tau.representatives_are_members());
}

#[test]
fn extracted_skeleton_recovers_the_two_out_sets() {
    let g = example_graph();
    let s = Skeleton::of_graph(&g);
    assert_eq!(
        s.family().members(),
        &[labeled(5, &[1, 2, 3]), labeled(5, &[2, 3, 4])]
    );
    assert_eq!(s.graph(), g);
    // In-set of vertex 2 read off the stated edge set.
    assert_eq!(g.in_set(1).unwrap(), labeled(5, &[1, 2, 3, 4, 5]));
    assert!(g.companions_agree_with_insets());
}

#[test]
fn companion_edge_swap_matches_the_figure() {
    let (nu, _, _) = example_skeletons();
    // The only companion pair of {X, Y} is (2, 3); swapping their f-images
    // turns the one-out graph into 1→2, 2→2, 3→3, 4→3, 5→3.
    let swapped = nu.companion_edge_swap(1, 2).unwrap();
    assert_eq!(swapped.one_out().successors(), &[1, 1, 2, 2, 2]);

    let witness = are_companions(&nu, &swapped).unwrap();
    let psi = build_isomorphism(&nu, &swapped, &witness).unwrap();
    assert_eq!(psi, vec![0, 2, 1, 3, 4], "Ψ is the transposition (2 3)");
    assert!(is_isomorphism(&nu.graph(), &swapped.graph(), &psi));

    // The oracle finds the same transposition as its least isomorphism.
    let oracle = brute_force_isomorphic(&nu.graph(), &swapped.graph())
        .unwrap()
        .unwrap();
    assert_eq!(oracle, vec![0, 2, 1, 3, 4]);

    // Equal graphs from different skeletons certify as isomorphic.
    assert!(certify_isomorphic(&nu.graph(), &example_graph()).is_some());
}

const EMBEDDING_MATRIX: &str = "\
vertices 8
matrix:
. . . x x . . .
x x x x . . . .
x x x x x x x x
. . . x x . . .
x x x x . . . .
x x x x x x x x
. . . x x . . .
x x x x . . . .
";

#[test]
fn eight_vertex_graph_embeds_as_cones() {
    let (g, _) = parse_digraph(EMBEDDING_MATRIX).unwrap();
    let fam = g.out_family();
    assert_eq!(
        fam.members(),
        &[
            labeled(8, &[1, 2, 3, 4]),
            labeled(8, &[4, 5]),
            SubsetMask::full(8),
        ]
    );
    let part = fam.companion_partition();
    assert_eq!(
        part.blocks(),
        &[
            labeled(8, &[1, 2, 3]),
            labeled(8, &[4]),
            labeled(8, &[5]),
            labeled(8, &[6, 7, 8]),
        ]
    );

    let embedding = embed_as_cone_graph(&g).unwrap();
    assert_eq!(embedding.ground_size(), 3);
    // Cone sizes 8, 4, 2 for the three out-sets; the closure adds the
    // size-1 cone of the full ground set.
    let mut base_ranks: Vec<usize> =
        embedding.base_points().iter().map(|b| b.len()).collect();
    base_ranks.sort_unstable();
    assert_eq!(base_ranks, vec![0, 1, 2]);

    // φ matches the published table with ground labels a, b, c:
    // 1→{a}, 2→{a,b}, 3→{a,c}, 4→{a,b,c}, 5→{b,c}, 6→∅, 7→{b}, 8→{c}.
    let phi = embedding.vertex_to_point();
    assert_eq!(phi, &[0b001, 0b011, 0b101, 0b111, 0b110, 0b000, 0b010, 0b100]);

    // The recovered main skeleton g(φ(x)) defines a graph isomorphic to G.
    let recovered = embedding.main_skeleton(&g);
    let expected_g_of_phi = [0b110, 0b001, 0b000, 0b110, 0b001, 0b000, 0b110, 0b001];
    for (x, &point) in phi.iter().enumerate() {
        assert_eq!(recovered.table()[point], expected_g_of_phi[x]);
    }
    assert!(certify_isomorphic(&g, &recovered.graph().unwrap()).is_some());
}

#[test]
fn embedding_family_corresponds_to_the_cone_family() {
    let (g, _) = parse_digraph(EMBEDDING_MATRIX).unwrap();
    let fam = g.out_family();
    // Up[{∅, {a}, {b,c}}] restricted to the three cones of sizes 8, 4, 2.
    let poset = rxnskel::PowersetPoset::new(3).unwrap();
    let cones = poset
        .cone_family(&[mask(3, &[]), mask(3, &[0]), mask(3, &[1, 2])])
        .unwrap();
    let fc = rxnskel::find_faithful_correspondence(&fam, &cones).unwrap();
    assert!(fc.verify());
    // Sizes 8↔8, 4↔4, 2↔2 on the families and 1↔1 in the closures.
    for (i, member) in fc.source_closure().iter().enumerate() {
        assert_eq!(
            member.len(),
            fc.target_closure().member(fc.set_map()[i]).len()
        );
    }
    assert_eq!(fc.source_closure().len(), 4);
}

#[test]
fn family_file_reproduces_the_companion_example() {
    let text = "universe 8\n{1,2,3,4}\n{4,5}\n{5}\n";
    let (fam, table) = parse_set_family(text).unwrap();
    assert_eq!(fam, companion_example_family());
    assert_eq!(table.render_set(&fam.companion_partition().block(0).clone()), "{1,2,3}");
}

/// Zero-context edges of the tour system, 1-based state labels.
fn figure_two_edges() -> Vec<(Vec<usize>, Vec<usize>)> {
    vec![
        (vec![], vec![]),
        (vec![1], vec![2]),
        (vec![2], vec![1, 3]),
        (vec![3], vec![1, 2, 4]),
        (vec![4], vec![1, 2]),
        (vec![1, 2], vec![2, 3]),
        (vec![1, 3], vec![2, 3]),
        (vec![1, 4], vec![1, 2]),
        (vec![2, 3], vec![1]),
        (vec![2, 4], vec![1, 2, 3]),
        (vec![3, 4], vec![1, 2, 4]),
        (vec![1, 2, 3], vec![]),
        (vec![1, 2, 4], vec![1, 2, 3]),
        (vec![1, 3, 4], vec![]),
        (vec![2, 3, 4], vec![1]),
        (vec![1, 2, 3, 4], vec![]),
    ]
}

#[test]
fn zero_context_graph_matches_figure_two() {
    let rs = tour_rs();
    let zero = rs.zero_context_graph().unwrap();
    assert_eq!(zero.num_vertices(), 16);
    for (state, image) in figure_two_edges() {
        let v = labeled(4, &state).index();
        let w = labeled(4, &image).index();
        assert_eq!(zero.successor(v).unwrap(), w, "res({state:?}) in Figure 2");
    }
    assert_eq!(zero.to_digraph().weak_component_count(), 2);
}

#[test]
fn swapped_zero_context_graph_matches_figure_four() {
    let rs = tour_rs();
    let swapped = rs
        .swap_states(&labeled(4, &[1, 3]), &labeled(4, &[1, 3, 4]))
        .unwrap();
    let zero = swapped.zero_context_graph().unwrap();
    for (state, image) in figure_two_edges() {
        let expected = match state.as_slice() {
            [1, 3] => vec![],
            [1, 3, 4] => vec![2, 3],
            _ => image,
        };
        let v = labeled(4, &state).index();
        let w = labeled(4, &expected).index();
        assert_eq!(zero.successor(v).unwrap(), w, "swapped res({state:?})");
    }
    assert_eq!(zero.to_digraph().weak_component_count(), 1);
}

#[test]
fn tour_system_equivalent_to_its_swap() {
    let rs = tour_rs();
    let swapped = rs
        .swap_states(&labeled(4, &[1, 3]), &labeled(4, &[1, 3, 4]))
        .unwrap();
    // The two swapped states are companions with respect to RES.
    let companions = rs.res_companions().unwrap();
    assert!(companions
        .same_block(labeled(4, &[1, 3]).index(), labeled(4, &[1, 3, 4]).index())
        .unwrap());

    let verdict = equivalent(&rs, &swapped).unwrap();
    let witness = verdict.witness().expect("transition graphs are isomorphic");
    let psi = transition_isomorphism(&rs, &swapped, witness).unwrap();
    assert!(is_isomorphism(
        &rs.transition_graph().unwrap(),
        &swapped.transition_graph().unwrap(),
        &psi
    ));
}
