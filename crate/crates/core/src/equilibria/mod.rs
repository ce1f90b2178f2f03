//! Correlated and Nash equilibria.

pub mod correlated;
pub mod nash;

pub use correlated::{
    ce_program, is_correlated_equilibrium, max_surplus_ce, regret_table, verify_dual_certificate,
    CeProgram, CeSolution, DualCertificate, RegretTable,
};
pub use nash::{
    best_regret, nash_set, nash_value, pure_nash, support_enumeration_2p, vertex_enumeration_2p,
    Completeness, NashEquilibrium, NashSet, NashValue,
};
