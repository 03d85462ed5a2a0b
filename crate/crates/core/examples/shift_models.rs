//! Decomposes the complete graph with self-loops into SWAP and CNOT shift
//! blocks and checks the resulting shift operators.

use ucdtqw::graphs::{assemble_shift, complete_adjacency, decompose, verify_kraus, ShiftModel};
use ucdtqw::linalg::{is_unitary, DEFAULT_TOL};

fn main() -> ucdtqw::Result<()> {
    let adj = complete_adjacency(2)?;
    for model in [ShiftModel::Swap, ShiftModel::Cnot] {
        let dec = decompose(&adj, model)?;
        let s = assemble_shift(&dec)?;
        println!(
            "{model}: {} blocks, sum is all-ones: {}, Kraus: {}, unitary: {}",
            dec.blocks().len(),
            dec.block_sum() == adj,
            verify_kraus(&s, DEFAULT_TOL),
            is_unitary(s.matrix(), DEFAULT_TOL)?
        );
    }
    let cnot = decompose(&adj, ShiftModel::Cnot)?;
    let b1 = cnot.cnot_block(1).expect("block 1 exists");
    println!("CNOT block for coin |01> (j -> j xor 1):");
    for i in 0..4 {
        println!("  {:?}", (0..4).map(|j| b1.get(i, j)).collect::<Vec<_>>());
    }
    Ok(())
}
