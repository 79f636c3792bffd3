//! Paired de Bruijn graphs and the shifted-matching cycle problems over them.
//!
//! [`exact`] decides sound-cycle existence for any order via a state graph,
//! [`poly`] covers the tractable order-0 and unary cases, [`reductions`]
//! builds hard instances from undirected graphs, and [`oracle`] holds the
//! brute-force ground truth used by the tests.

pub mod exact;
pub mod format;
pub mod gen;
pub mod graph;
pub mod oracle;
pub mod poly;
pub mod reductions;
pub mod undirected;

pub use exact::{exists_covering_sound_cycle, exists_sound_cycle, SolverConfig, SolverError};
pub use graph::{
    is_covering, is_sound, matches_with_shift, spell, validate_graph, Alphabet, Bilabel, CycleWitness, PairedDbGraph,
    Symbol, Walk,
};
pub use undirected::{HamCycle, UndirectedGraph};
