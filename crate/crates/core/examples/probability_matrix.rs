//! Probability matrix of the K_4 complement operator for every target.

use ucdtqw::complement::build_complement_operator;
use ucdtqw::probability::probability_matrix;

fn main() -> ucdtqw::Result<()> {
    for target in 0..4 {
        let mp = probability_matrix(&build_complement_operator(2, target)?, 1)?;
        println!("target {target} (columns grouped by coin state |00>, |01>, |10>, |11>):");
        for row in 0..mp.n_nodes() {
            let cells: Vec<String> = (0..mp.n_cols())
                .map(|c| format!("{:>2}", (mp.get(row, c) * 16.0).round()))
                .collect();
            println!("  {} /16", cells.join(" "));
        }
    }
    Ok(())
}
