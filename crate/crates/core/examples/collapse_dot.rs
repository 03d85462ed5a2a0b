//! Writes the collapsed multigraph of the K_4 complement as Graphviz DOT.
//!
//! `cargo run --example collapse_dot | dot -Tsvg > k4.svg`

use ucdtqw::complement::build_complement_operator;
use ucdtqw::probability::{collapse_multigraph, DEFAULT_PRUNE_EPSILON};

fn main() -> ucdtqw::Result<()> {
    let u = build_complement_operator(2, 1)?;
    let graph = collapse_multigraph(&u, 1, DEFAULT_PRUNE_EPSILON)?;
    eprintln!("{} arcs", graph.arcs.len());
    print!("{}", graph.to_dot());
    Ok(())
}
