//! Canonical forms: relabelled copies collapse to one key, and the
//! figure graphs are pairwise non-isomorphic.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use treeconn::constructions::figure_fixture;
use treeconn::extremal::campaign_rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = campaign_rng(1);
    let mut keys = BTreeSet::new();
    for id in 1..=6 {
        let g = figure_fixture(id)?;
        let key = g.canonical_form()?;
        for _ in 0..50 {
            let mut perm: Vec<usize> = (0..g.order()).collect();
            perm.shuffle(&mut rng);
            assert_eq!(g.relabel(&perm).canonical_form()?, key);
        }
        println!("figure {id}: canonical edges {:?}", key.to_graph().edges());
        keys.insert(key);
    }
    println!("{} distinct classes among 6 figures", keys.len());
    Ok(())
}
