pub mod canon;
pub mod cli;
pub mod constructions;
pub mod extremal;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod packing;
