//! Seeded random instances for tests and the `gen` command.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Alphabet, Bilabel, PairedDbGraph, Symbol};

/// Size limits for [`random_instance`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomSpec {
    pub k: usize,
    pub max_vertices: usize,
    pub max_alphabet: usize,
    pub max_shift: usize,
    /// Probability that any given ordered vertex pair gets an edge.
    pub edge_density: f64,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec {
            k: 1,
            max_vertices: 6,
            max_alphabet: 4,
            max_shift: 3,
            edge_density: 0.35,
        }
    }
}

/// `a`, `b`, ... up to `z`, then `s26`, `s27`, ...
fn alphabet(size: usize) -> Alphabet {
    let token = |i: usize| match u8::try_from(i) {
        Ok(b) if b < 26 => char::from(b'a' + b).to_string(),
        _ => format!("s{i}"),
    };
    Alphabet::new((0..size).map(token)).expect("distinct tokens")
}

/// Random well-formed graph of order `spec.k >= 1` with distinct vertex
/// bilabels, plus a shift in `0..=spec.max_shift`.
///
/// Vertex labels are drawn first; every ordered pair whose labels overlap is
/// then joined with probability `edge_density`.
pub fn random_instance(spec: &RandomSpec, seed: u64) -> (PairedDbGraph, usize) {
    assert!(spec.k >= 1, "order-0 instances come from random_k0_instance");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sigma = rng.gen_range(1..=spec.max_alphabet.max(1));
    let a = alphabet(sigma);
    let label_space = sigma.pow(2 * spec.k as u32);
    let n = rng.gen_range(1..=spec.max_vertices.min(label_space).max(1));

    let mut codes: Vec<usize> = Vec::with_capacity(n);
    while codes.len() < n {
        let c = rng.gen_range(0..label_space);
        if !codes.contains(&c) {
            codes.push(c);
        }
    }
    let mut g = PairedDbGraph::new(spec.k, a);
    for (i, &code) in codes.iter().enumerate() {
        let digits: Vec<Symbol> = (0..2 * spec.k)
            .map(|p| Symbol((code / sigma.pow(p as u32) % sigma) as u32))
            .collect();
        let label = Bilabel::new(digits[..spec.k].to_vec(), digits[spec.k..].to_vec()).expect("even split");
        g.add_vertex(format!("v{i}"), label).expect("fresh id");
    }
    for from in 0..n {
        for to in 0..n {
            let (x, y) = (g.vertex_label(from), g.vertex_label(to));
            let overlaps = x.first()[1..] == y.first()[..spec.k - 1] && x.second()[1..] == y.second()[..spec.k - 1];
            if overlaps && rng.gen_bool(spec.edge_density) {
                g.add_edge_at(from, to, None).expect("valid endpoints");
            }
        }
    }
    let shift = rng.gen_range(0..=spec.max_shift);
    (g, shift)
}

/// Single-vertex order-0 graph carrying one loop per arc of `arcs`.
pub fn k0_instance(sigma: usize, arcs: &[(usize, usize)]) -> PairedDbGraph {
    let a = alphabet(sigma);
    let mut g = PairedDbGraph::new(0, a);
    let o = g
        .add_vertex("o", Bilabel::new(vec![], vec![]).expect("empty"))
        .expect("fresh id");
    for &(x, y) in arcs {
        let label = Bilabel::new(vec![Symbol(x as u32)], vec![Symbol(y as u32)]).expect("length one");
        g.add_edge_at(o, o, Some(label)).expect("labelled loop");
    }
    g
}

/// Random order-0 instance: a random arc subset of the full character
/// digraph on `sigma` symbols, and a shift in `0..=max_shift`.
pub fn random_k0_instance(sigma: usize, max_shift: usize, seed: u64) -> (PairedDbGraph, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs: Vec<(usize, usize)> = (0..sigma)
        .flat_map(|x| (0..sigma).map(move |y| (x, y)))
        .filter(|_| rng.gen_bool(0.5))
        .collect();
    arcs.shuffle(&mut rng);
    (k0_instance(sigma, &arcs), rng.gen_range(0..=max_shift))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::validate_graph;

    #[test]
    fn deterministic_and_valid() {
        let spec = RandomSpec::default();
        for seed in 0..200 {
            let (g, d) = random_instance(&spec, seed);
            assert_eq!(random_instance(&spec, seed), (g.clone(), d));
            assert!(validate_graph(&g).is_valid(), "seed {seed}");
            assert!(g.vertex_count() <= 6 && g.alphabet().len() <= 4 && d <= 3);
        }
    }

    #[test]
    fn higher_order_instances_are_valid() {
        let spec = RandomSpec {
            k: 2,
            edge_density: 0.9,
            ..RandomSpec::default()
        };
        for seed in 0..50 {
            assert!(validate_graph(&random_instance(&spec, seed).0).is_valid());
        }
    }

    #[test]
    fn k0_shapes() {
        let g = k0_instance(3, &[(0, 1), (1, 0), (2, 2)]);
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 3));
        assert!(validate_graph(&g).is_valid());
        let (h, d) = random_k0_instance(4, 3, 7);
        assert_eq!(random_k0_instance(4, 3, 7), (h.clone(), d));
        assert!(validate_graph(&h).is_valid());
    }
}
