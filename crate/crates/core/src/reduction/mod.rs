//! 3SAT to biclique containment: CNF handling and the gadget graph.

pub mod cnf;
pub mod gadget;

pub use cnf::{normalize, parse_dimacs, CnfFormula, Literal};
pub use gadget::{
    biclique_containment, bicliques_within, build_instance, certify_reduction, CertificationReport,
    ReductionInstance, Role,
};
