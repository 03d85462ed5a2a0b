//! One step of the search complement on K_4 with node 1 as the target.

use ucdtqw::complement::{run_complement_dense, ComplementSpec};

fn main() -> ucdtqw::Result<()> {
    let spec = ComplementSpec::canonical(2, 1)?;
    let result = run_complement_dense(&spec)?;
    for (node, p) in result.distribution.as_slice().iter().enumerate() {
        println!("node {node}: {p:.4}");
    }
    println!(
        "suppressed node {} is {}x less likely than the others",
        result.suppressed_node,
        result.other_probability() / result.suppressed_probability()
    );
    Ok(())
}
