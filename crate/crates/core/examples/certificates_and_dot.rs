//! Solve one terminal set, print the JSON certificate, re-validate it, and
//! render the trees as Graphviz.
//!
//!     cargo run --example certificates_and_dot > fig1.dot

use treeconn::constructions::figure_fixture;
use treeconn::graph::VertexSet;
use treeconn::io::{emit_certificate, emit_dot, parse_certificate};
use treeconn::packing::{kappa_of_set, validate_certificate};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = figure_fixture(1)?;
    let s = VertexSet::new([1, 3, 8])?;
    let r = kappa_of_set(&g, &s)?;
    let json = emit_certificate(&g, &r);
    eprintln!("{json}");

    let (back, checked) = parse_certificate(&json)?;
    assert!(validate_certificate(&back, &checked.family).is_empty());
    eprintln!("kappa({s}) = {}, certificate re-validated", checked.kappa);

    print!("{}", emit_dot(&g, Some(&r.family)));
    Ok(())
}
