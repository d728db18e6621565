//! Smoothing degree-2 vertices and the extremal graphs built from it.

use treeconn::constructions::{build_extremal, figure_fixture, smooth};
use treeconn::extremal::{extremal_size, lower_bound_size};
use treeconn::packing::Solver;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let fig1 = figure_fixture(1)?;
    let smoothed = smooth(&fig1, 9)?;
    println!(
        "smooth(figure 1, 9): n={} e={}, isomorphic to figure 5: {}",
        smoothed.order(),
        smoothed.size(),
        smoothed.is_isomorphic(&figure_fixture(5)?)?
    );

    let solver = Solver::from_env();
    println!("  n   e  ceil(6n/5)  kappa3");
    for n in 4..=15 {
        let g = build_extremal(n)?;
        assert_eq!(Some(g.size()), extremal_size(n));
        let k = solver.kappa3(&g)?.kappa;
        println!("{n:3} {:3} {:11} {k:7}", g.size(), lower_bound_size(n));
    }
    Ok(())
}
