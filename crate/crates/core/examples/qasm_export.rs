//! Synthesizes the K_4 complement circuit for target 3, lowers the oracle to
//! CNOT and controlled-sqrt(H) gates, and prints OpenQASM 2.0.

use ucdtqw::circuit::{circuit_to_unitary, export_qasm, synthesize_complement_circuit};
use ucdtqw::complement::build_complement_operator;

fn main() -> ucdtqw::Result<()> {
    let circuit = synthesize_complement_circuit(2, 3, true)?;
    let direct = build_complement_operator(2, 3)?;
    let dev = circuit_to_unitary(&circuit)?.max_abs_diff_up_to_phase(direct.matrix())?;
    eprintln!(
        "{} gates, {} two-qubit; deviation from the operator {dev:e}",
        circuit.gates().len(),
        circuit.count_two_qubit_gates()
    );
    print!("{}", export_qasm(&circuit)?);
    Ok(())
}
