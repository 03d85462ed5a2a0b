//! The statevector route scales past the dense operator limit.

use std::time::Instant;

use ucdtqw::complement::{run_complement_statevector, ComplementSpec};

fn main() -> ucdtqw::Result<()> {
    for n in [2, 4, 6, 8, 10] {
        let spec = ComplementSpec::canonical(n, 1)?;
        let start = Instant::now();
        let r = run_complement_statevector(&spec)?;
        println!(
            "n={n:>2} ({:>5} nodes): p(target) = {:.3e}, ratio = {:.0}, {:?}",
            spec.n_nodes(),
            r.suppressed_probability(),
            r.other_probability() / r.suppressed_probability(),
            start.elapsed()
        );
    }
    Ok(())
}
