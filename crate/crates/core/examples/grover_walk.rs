//! Coined walk on K_8 with a Grover coin and `-I` at node 5, started from
//! the uniform superposition.

use ucdtqw::graphs::{complete_shift, ShiftModel};
use ucdtqw::linalg::{Complex, ComplexMatrix};
use ucdtqw::probability::node_probabilities;
use ucdtqw::walk::{evolution_operator, evolve, grover_coin, CoinSpec, WalkerState};

fn main() -> ucdtqw::Result<()> {
    let n = 3;
    let shift = complete_shift(n, ShiftModel::Swap)?;
    let coin = CoinSpec::Perturbed {
        base: grover_coin(n)?,
        marked: ComplexMatrix::identity(1 << n).scale(Complex::new(-1.0, 0.0)),
        target: 5,
    };
    let u = evolution_operator(&shift, &coin, false)?;
    let start = WalkerState::uniform(n);
    for steps in 1..=6 {
        let p = node_probabilities(&evolve(&start, &u, steps)?);
        let cells: Vec<String> = p.as_slice().iter().map(|x| format!("{x:.3}")).collect();
        println!("step {steps}: [{}]", cells.join(", "));
    }
    Ok(())
}
