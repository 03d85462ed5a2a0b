//! OpenQASM 2.0 emitter.
//!
//! Angles use the shortest decimal that round-trips to the same `f64`.
//! `cu3` in `qelib1.inc` is controlled-`u3`, which differs from the Euler block
//! of [`super::u_block`] by the phase `(phi + lambda) / 2`; any remaining phase
//! of a [`Gate::ControlledU`] is emitted as a `u1` on the control.

use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::{Circuit, Gate};

pub const OPENQASM_VERSION: &str = "2.0";

const PHASE_EPS: f64 = 1e-15;

/// Renders a fully lowered circuit. Only the qubits marked for measurement are
/// measured, into `c[0..]` in order.
pub fn export_qasm(circuit: &Circuit) -> Result<String> {
    if let Some(g) = circuit.gates().iter().find(|g| !g.is_lowered()) {
        return Err(Error::NotLowered(format!(
            "{g:?} has no OpenQASM 2.0 equivalent; decompose it first"
        )));
    }
    let n = circuit.register_size();
    let mut out = String::new();
    let _ = writeln!(out, "OPENQASM {OPENQASM_VERSION};");
    out.push_str("include \"qelib1.inc\";\n");
    if !circuit.gates().is_empty() || !circuit.measured().is_empty() {
        let _ = writeln!(
            out,
            "// q[0..{n}) position register, q[0] = least significant bit of the node index"
        );
        let _ = writeln!(out, "// q[{n}..{}) coin register", 2 * n);
    }
    let _ = writeln!(out, "qreg q[{}];", circuit.n_qubits());
    let _ = writeln!(out, "creg c[{n}];");
    for gate in circuit.gates() {
        match gate {
            Gate::H { qubit } => {
                let _ = writeln!(out, "h q[{qubit}];");
            }
            Gate::X { qubit } => {
                let _ = writeln!(out, "x q[{qubit}];");
            }
            Gate::Cnot { control, target } => {
                let _ = writeln!(out, "cx q[{control}],q[{target}];");
            }
            Gate::ControlledU {
                control,
                target,
                theta,
                phi,
                lambda,
                phase,
            } => {
                let _ = writeln!(out, "cu3({theta},{phi},{lambda}) q[{control}],q[{target}];");
                let residual = phase - (phi + lambda) / 2.0;
                if residual.abs() > PHASE_EPS {
                    let _ = writeln!(out, "u1({residual}) q[{control}];");
                }
            }
            Gate::MultiControlledMultiTarget { .. } => unreachable!("checked above"),
        }
    }
    for (bit, q) in circuit.measured().iter().enumerate() {
        let _ = writeln!(out, "measure q[{q}] -> c[{bit}];");
    }
    Ok(out)
}
