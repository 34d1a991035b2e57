//! Isomorphism, simulation and equivalence of proto-algorithms, with
//! witnesses that can be checked independently of the search.

mod iso;
mod oracle;
mod simulation;
mod theorems;
mod witness;

pub use iso::check_isomorphism;
pub use oracle::{oracle_equivalence_exists, oracle_simulation_exists, ORACLE_LIMIT};
pub use simulation::{check_equivalence, check_equivalence_with, greatest_simulation, greatest_simulation_with};
pub use theorems::{check_hierarchy, check_hierarchy_with, verify_simulation_consequences, ConsequenceReport, HierarchyReport};
pub use witness::{
    validate_equivalence_witness, validate_iso_witness, validate_simulation_witness, EquivalenceWitness, IsoWitness,
    SimulationWitness,
};
