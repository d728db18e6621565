//! Order, size and kappa_3 of H(k). Pass the largest k as an argument
//! (default 3); k = 2 is the exception with kappa_3 = 1.

use treeconn::constructions::build_h;
use treeconn::packing::Solver;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_k: usize = std::env::args().nth(1).map_or(Ok(3), |a| a.parse())?;
    let solver = Solver::from_env();
    for k in 1..=max_k {
        let h = build_h(k)?;
        let r = solver.kappa3(&h)?;
        println!(
            "H({k}): n={} e={} kappa3={} witness {}",
            h.order(),
            h.size(),
            r.kappa,
            r.witness_set
        );
    }
    Ok(())
}
