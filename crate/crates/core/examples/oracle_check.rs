//! Compares the packing solver against the brute-force oracle on every
//! triple of a few small graphs.

use treeconn::constructions::build_h;
use treeconn::graph::{Graph, VertexSet};
use treeconn::oracle::brute_force_kappa_of_set;
use treeconn::packing::kappa_of_set;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let graphs = [
        ("K4", Graph::complete(4)?),
        ("C6", Graph::cycle(6)?),
        ("K2,3", Graph::complete_bipartite(2, 3)?),
        ("H(1)", build_h(1)?),
        ("K5", Graph::complete(5)?),
    ];
    for (name, g) in &graphs {
        let n = g.order();
        let mut checked = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let s = VertexSet::new([a, b, c])?;
                    let fast = kappa_of_set(g, &s)?.kappa;
                    let slow = brute_force_kappa_of_set(g, &s)?;
                    assert_eq!(fast, slow, "{name} {s}");
                    checked += 1;
                }
            }
        }
        println!("{name}: {checked} triples agree");
    }
    Ok(())
}
