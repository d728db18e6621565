//! kappa_3 of the six figure graphs, with the witness triple and a timing.

use std::time::Instant;

use treeconn::constructions::figure_fixture;
use treeconn::packing::Solver;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let solver = Solver::from_env();
    for id in 1..=6 {
        let g = figure_fixture(id)?;
        let start = Instant::now();
        let r = solver.kappa3(&g)?;
        println!(
            "figure {id}: n={:2} e={:2} kappa3={} witness {} ({:?})",
            g.order(),
            g.size(),
            r.kappa,
            r.witness_set,
            start.elapsed()
        );
    }
    Ok(())
}
