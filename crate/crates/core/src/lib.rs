//! Biclique- and star-colouring of powers of paths and powers of cycles.
//!
//! * [`graph`]: bitset graphs, vertex sets, complete-bipartite and
//!   `{K4, C4}` predicates.
//! * [`power`]: `P_n^k` / `C_n^k` generators and closed-form bicliques/stars.
//! * [`colouring`]: optimal colourings and chromatic-number decisions.
//! * [`oracle`]: exhaustive enumeration and search used as ground truth.
//! * [`reduction`]: the 3SAT to biclique-containment gadget.
//! * [`cli`]: the command implementations behind the `bicol` binary.

pub mod cli;
pub mod colouring;
pub mod error;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod power;
pub mod reduction;

pub use colouring::{
    chromatic, colour_power_cycle, colour_power_path, decide_two_vs_three, even_division,
    large_n_shortcut, star_chromatic, three_colour_no_mono_p3, AbCertificate, Certificate,
    ChromaticResult, Colouring, EvenDivision,
};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use power::{Biclique, Mode, PowerCycleParams, PowerGraph, PowerPathParams, Shape};
