use proptest::prelude::*;

use pdbg::exact::{build_state_graph, covering_cycle_in, exists_covering_sound_cycle, sound_cycle_in, SolverConfig};
use pdbg::format::{parse_instance, write_instance, Instance};
use pdbg::gen::{random_instance, random_k0_instance, RandomSpec};
use pdbg::graph::{is_covering, is_sound, spell, PairedDbGraph, Walk};
use pdbg::oracle::find_sound_cycle;
use pdbg::reductions::{binarize, lift_k, promise_to_pdbg};
use pdbg::undirected::UndirectedGraph;

/// Order-1 instance in which every vertex pair is joined, so any vertex
/// sequence is a closed walk.
fn complete(seed: u64) -> (PairedDbGraph, usize) {
    let spec = RandomSpec {
        edge_density: 1.0,
        ..RandomSpec::default()
    };
    random_instance(&spec, seed)
}

fn walk_of(g: &PairedDbGraph, picks: &[usize]) -> Walk {
    Walk::closed(picks.iter().map(|&p| g.vertex_id(p % g.vertex_count()).to_string()))
}

/// Sound straight from the definition: the second character of step `i`
/// equals the first character of step `i + d`, cyclically.
fn sound_by_definition(g: &PairedDbGraph, picks: &[usize], d: usize) -> bool {
    let n = picks.len();
    let label = |i: usize| g.vertex_label(picks[i % n] % g.vertex_count());
    (0..n).all(|i| label(i + d).first()[0] == label(i).second()[0])
}

proptest! {
    #[test]
    fn soundness_is_rotation_invariant(seed in 0u64..500, picks in prop::collection::vec(0usize..6, 1..10), r in 0usize..10) {
        let (g, d) = complete(seed);
        let walk = walk_of(&g, &picks);
        let rotated = walk.rotated(r % picks.len());
        prop_assert_eq!(is_sound(&g, &walk, d).unwrap(), is_sound(&g, &rotated, d).unwrap());
    }

    #[test]
    fn soundness_matches_definition(seed in 0u64..500, picks in prop::collection::vec(0usize..6, 1..10), d in 0usize..12) {
        let (g, _) = complete(seed);
        let walk = walk_of(&g, &picks);
        prop_assert_eq!(is_sound(&g, &walk, d).unwrap(), sound_by_definition(&g, &picks, d));
    }

    #[test]
    fn spelled_lengths(seed in 0u64..500, picks in prop::collection::vec(0usize..6, 1..10)) {
        let (g, _) = complete(seed);
        let closed = walk_of(&g, &picks);
        prop_assert_eq!(spell(&g, &closed).unwrap().len(), picks.len());
        let open = Walk::open(closed.vertices.clone());
        prop_assert_eq!(spell(&g, &open).unwrap().len(), picks.len() + g.k() - 1);
    }

    #[test]
    fn exact_witnesses_verify(seed in 0u64..5000) {
        let (g, d) = random_instance(&RandomSpec { edge_density: 0.6, ..RandomSpec::default() }, seed);
        let sg = build_state_graph(&g, d, &SolverConfig::default()).unwrap();
        if let Some(w) = sound_cycle_in(&g, &sg) {
            prop_assert!(is_sound(&g, &w.walk, d).unwrap());
        }
        if let Some(w) = covering_cycle_in(&g, &sg) {
            prop_assert!(is_sound(&g, &w.walk, d).unwrap());
            prop_assert!(is_covering(&g, &w.walk).unwrap());
        }
    }

    #[test]
    fn exact_agrees_with_oracle_at_order_two(seed in 0u64..5000) {
        let spec = RandomSpec { k: 2, max_vertices: 6, max_alphabet: 2, max_shift: 3, edge_density: 0.8 };
        let (g, d) = random_instance(&spec, seed);
        let sg = build_state_graph(&g, d, &SolverConfig::default()).unwrap();
        let oracle = find_sound_cycle(&g, d, sg.node_count().max(1));
        prop_assert_eq!(sound_cycle_in(&g, &sg).is_some(), oracle.is_some());
    }

    #[test]
    fn instances_round_trip(seed in 0u64..5000, k0 in any::<bool>()) {
        let (graph, shift) = if k0 {
            random_k0_instance(3, 4, seed)
        } else {
            random_instance(&RandomSpec::default(), seed)
        };
        let inst = Instance { graph, shift };
        let text = write_instance(&inst).unwrap();
        prop_assert_eq!(parse_instance(&text).unwrap(), inst);
        let unary = text.replace(&format!("d {shift}\n"), &format!("d unary {}\n", "1".repeat(shift)));
        prop_assert_eq!(parse_instance(&unary).unwrap(), parse_instance(&text).unwrap());
    }

    #[test]
    fn binarize_transports_sound_cycles(seed in 0u64..2000) {
        let spec = RandomSpec { max_vertices: 4, max_shift: 2, ..RandomSpec::default() };
        let (g, d) = random_instance(&spec, seed);
        prop_assume!(g.alphabet().len() >= 2);
        let (b, d2, trace) = binarize(&g, d).unwrap();
        let sg = build_state_graph(&g, d, &SolverConfig::default()).unwrap();
        if let Some(w) = sound_cycle_in(&g, &sg) {
            let image = trace.map_cycle(&w).unwrap();
            prop_assert!(is_sound(&b, &image.walk, d2).unwrap());
        }
    }
}

#[test]
fn reduction_outputs_round_trip() {
    let mut outputs = Vec::new();
    for g in [
        UndirectedGraph::complete(3),
        UndirectedGraph::cycle(4),
        UndirectedGraph::star(3),
    ] {
        let (graph, shift, _) = promise_to_pdbg(&g).unwrap();
        for (graph, shift, _) in [lift_k(&graph, shift, 2).unwrap(), binarize(&graph, shift).unwrap()] {
            outputs.push(Instance { graph, shift });
        }
        outputs.push(Instance { graph, shift });
    }
    for inst in outputs {
        let text = write_instance(&inst).unwrap();
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }
}

/// Covering preservation under binarize is only checked empirically, on
/// instances small enough for the solver on both sides.
#[test]
fn binarize_covering_agrees_on_tiny_instances() {
    let spec = RandomSpec {
        max_vertices: 3,
        max_alphabet: 2,
        max_shift: 1,
        edge_density: 0.6,
        ..RandomSpec::default()
    };
    let cfg = SolverConfig::default();
    for seed in 0..300 {
        let (g, d) = random_instance(&spec, seed);
        if g.alphabet().len() < 2 {
            continue;
        }
        let (b, d2, _) = binarize(&g, d).unwrap();
        assert_eq!(
            exists_covering_sound_cycle(&g, d, &cfg).unwrap().is_some(),
            exists_covering_sound_cycle(&b, d2, &cfg).unwrap().is_some(),
            "seed {seed}"
        );
    }
}
