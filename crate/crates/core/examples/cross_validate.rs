//! Checks the dense, statevector and closed-form routes against each other.

use ucdtqw::complement::cross_validate;

fn main() -> ucdtqw::Result<()> {
    let n_max = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    let report = cross_validate(n_max)?;
    for level in &report.levels {
        println!("n={}: {:>5} cases, max deviation {:e}", level.n, level.cases, level.max_deviation);
    }
    Ok(())
}
