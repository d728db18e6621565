//! Streams graph6 lines through the kappa_3 filter. Reads standard input when
//! it is piped, otherwise uses the six figure graphs.
//!
//!     geng -c 7 | cargo run --release --example graph6_filter

use std::io::{self, IsTerminal};

use treeconn::constructions::figure_fixture;
use treeconn::extremal::{filter_kappa, KappaPredicate};
use treeconn::io::emit_graph6;
use treeconn::packing::Solver;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let solver = Solver::from_env();
    let pred = KappaPredicate::Equals(2);
    let mut out = io::stdout().lock();
    let mut side = io::stderr().lock();
    if io::stdin().is_terminal() {
        let mut text = String::new();
        for id in 1..=6 {
            text.push_str(&emit_graph6(&figure_fixture(id)?)?);
            text.push('\n');
        }
        filter_kappa(&solver, text.as_bytes(), pred, &mut out, &mut side)?;
    } else {
        filter_kappa(&solver, io::stdin().lock(), pred, &mut out, &mut side)?;
    }
    Ok(())
}
