//! Runs every verification campaign and prints the text reports.

use treeconn::extremal::{verify_lemma3, verify_lemma4, verify_lemma5, verify_theorem1};
use treeconn::packing::Solver;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let solver = Solver::from_env().with_threads(4)?;
    let reports = [
        verify_lemma4(&solver)?,
        verify_lemma3(&solver)?,
        verify_lemma5(&solver, 200, 7)?,
        verify_theorem1(&solver, 3)?,
    ];
    for r in &reports {
        println!("{}", r.to_text());
    }
    if reports.iter().all(|r| r.passed()) {
        Ok(())
    } else {
        Err("a campaign found a violation".into())
    }
}
