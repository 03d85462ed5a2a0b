//! Gate-level form of the search-complement walk.
//!
//! Register layout for a walk on `2^n` nodes: qubits `0..n` hold the position
//! (qubit 0 is the least significant bit of the node index) and qubits
//! `n..2n` hold the coin. Qubit `q` is bit `q` of the basis index, so a
//! circuit's unitary acts on the same coin-major index as the walk operators.

mod decompose;
mod qasm;

pub use decompose::{
    controlled_u_matrix, decompose_mcmt_hadamard, u_block, SQRT_H, SQRT_H_DAGGER,
};
pub use qasm::{export_qasm, OPENQASM_VERSION};

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Complex, ComplexMatrix};
use crate::statevector::{apply_cnot, apply_controlled, apply_single, hadamard, pauli_x, ControlLine};

/// Largest circuit width accepted by [`circuit_to_unitary`].
pub const MAX_UNITARY_QUBITS: usize = 12;

/// Control dot colour: black fires on `|1>`, white on `|0>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Black,
    White,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Control {
    pub qubit: usize,
    pub polarity: Polarity,
}

impl Control {
    fn line(&self) -> ControlLine {
        (self.qubit, self.polarity == Polarity::Black)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseGate {
    H,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "gate", rename_all = "snake_case")]
pub enum Gate {
    H {
        qubit: usize,
    },
    X {
        qubit: usize,
    },
    Cnot {
        control: usize,
        target: usize,
    },
    /// Controlled `e^{i phase} U(theta, phi, lambda)`; see [`u_block`].
    ControlledU {
        control: usize,
        target: usize,
        theta: f64,
        phi: f64,
        lambda: f64,
        #[serde(default)]
        phase: f64,
    },
    /// `base` on every target when all controls match their polarity.
    MultiControlledMultiTarget {
        controls: Vec<Control>,
        targets: Vec<usize>,
        base: BaseGate,
    },
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::H { qubit } | Gate::X { qubit } => vec![*qubit],
            Gate::Cnot { control, target } | Gate::ControlledU { control, target, .. } => {
                vec![*control, *target]
            }
            Gate::MultiControlledMultiTarget {
                controls, targets, ..
            } => controls.iter().map(|c| c.qubit).chain(targets.iter().copied()).collect(),
        }
    }

    pub fn is_lowered(&self) -> bool {
        !matches!(self, Gate::MultiControlledMultiTarget { .. })
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self, Gate::Cnot { .. } | Gate::ControlledU { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
    /// Qubits measured at the end, in classical-bit order.
    measured: Vec<usize>,
}

impl Circuit {
    /// Empty circuit over `n_qubits = 2n` wires.
    pub fn new(n_qubits: usize) -> Result<Self> {
        if n_qubits < 2 || n_qubits % 2 != 0 {
            return Err(Error::InvalidArgument(format!(
                "a walk circuit needs an even number of qubits, got {n_qubits}"
            )));
        }
        Ok(Self {
            n_qubits,
            gates: Vec::new(),
            measured: Vec::new(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Qubits per register.
    pub fn register_size(&self) -> usize {
        self.n_qubits / 2
    }

    pub fn position_qubit(&self, bit: usize) -> usize {
        bit
    }

    pub fn coin_qubit(&self, bit: usize) -> usize {
        self.register_size() + bit
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn measured(&self) -> &[usize] {
        &self.measured
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        let qubits = gate.qubits();
        let mut seen = HashSet::new();
        for &q in &qubits {
            if q >= self.n_qubits {
                return Err(Error::OutOfRange {
                    what: "qubit",
                    value: q,
                    bound: format!("< {}", self.n_qubits),
                });
            }
            if !seen.insert(q) {
                return Err(Error::InvalidArgument(format!("qubit {q} used twice in {gate:?}")));
            }
        }
        self.gates.push(gate);
        Ok(())
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) -> Result<()> {
        gates.into_iter().try_for_each(|g| self.push(g))
    }

    /// Marks the whole position register for measurement.
    pub fn measure_position_register(&mut self) {
        self.measured = (0..self.register_size()).collect();
    }

    pub fn count_two_qubit_gates(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("circuit serializes")
    }
}

/// The oracle `C^{n,t}(H^{(x)n})`: controls on the position register encode
/// `target` (black for 1 bits, white for 0 bits), targets are the coin qubits.
pub fn complement_oracle(n: usize, target: usize) -> Gate {
    Gate::MultiControlledMultiTarget {
        controls: (0..n)
            .map(|q| Control {
                qubit: q,
                polarity: if (target >> q) & 1 == 1 {
                    Polarity::Black
                } else {
                    Polarity::White
                },
            })
            .collect(),
        targets: (n..2 * n).collect(),
        base: BaseGate::H,
    }
}

/// Hadamards on the position register, the target oracle, then CNOTs from coin
/// qubit `i` to position qubit `i`; the position register is measured.
///
/// With `decompose`, the oracle is lowered to CNOTs and controlled-`sqrt(H)`
/// gates, which is only available for the two-control oracle (`n = 2`).
pub fn synthesize_complement_circuit(n: usize, target: usize, decompose: bool) -> Result<Circuit> {
    if n == 0 || n > MAX_UNITARY_QUBITS {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            bound: format!("1..={MAX_UNITARY_QUBITS}"),
        });
    }
    if target >= 1 << n {
        return Err(Error::OutOfRange {
            what: "target",
            value: target,
            bound: format!("< {}", 1usize << n),
        });
    }
    if decompose && n != 2 {
        return Err(Error::UnsupportedDecomposition(format!(
            "only the two-control oracle (n = 2) can be lowered, got n = {n}"
        )));
    }
    let mut circuit = Circuit::new(2 * n)?;
    circuit.extend((0..n).map(|q| Gate::H { qubit: q }))?;
    let oracle = complement_oracle(n, target);
    if decompose {
        circuit.extend(decompose_mcmt_hadamard(&oracle)?)?;
    } else {
        circuit.push(oracle)?;
    }
    circuit.extend((0..n).map(|i| Gate::Cnot {
        control: n + i,
        target: i,
    }))?;
    circuit.measure_position_register();
    Ok(circuit)
}

/// Applies every gate of `circuit` to `amps` in order.
pub fn apply_circuit(circuit: &Circuit, amps: &mut [Complex]) -> Result<()> {
    if amps.len() != 1 << circuit.n_qubits {
        return Err(crate::error::dim_err(
            "apply_circuit",
            1usize << circuit.n_qubits,
            amps.len(),
        ));
    }
    for gate in &circuit.gates {
        match gate {
            Gate::H { qubit } => apply_single(amps, *qubit, &hadamard()),
            Gate::X { qubit } => apply_single(amps, *qubit, &pauli_x()),
            Gate::Cnot { control, target } => apply_cnot(amps, *control, *target),
            Gate::ControlledU {
                control,
                target,
                theta,
                phi,
                lambda,
                phase,
            } => {
                let mut u = u_block(*theta, *phi, *lambda);
                let g = Complex::from_polar(1.0, *phase);
                u.iter_mut().flatten().for_each(|z| *z *= g);
                apply_controlled(amps, &[(*control, true)], *target, &u);
            }
            Gate::MultiControlledMultiTarget {
                controls,
                targets,
                base: BaseGate::H,
            } => {
                let lines: Vec<ControlLine> = controls.iter().map(Control::line).collect();
                for &t in targets {
                    apply_controlled(amps, &lines, t, &hadamard());
                }
            }
        }
    }
    Ok(())
}

/// Unitary of the whole circuit, built column by column.
pub fn circuit_to_unitary(circuit: &Circuit) -> Result<ComplexMatrix> {
    if circuit.n_qubits > MAX_UNITARY_QUBITS {
        return Err(Error::SizeLimit(format!(
            "{} qubits exceeds the {MAX_UNITARY_QUBITS}-qubit unitary limit",
            circuit.n_qubits
        )));
    }
    let dim = 1usize << circuit.n_qubits;
    let mut out = ComplexMatrix::zeros(dim, dim);
    let mut col = vec![Complex::new(0.0, 0.0); dim];
    for j in 0..dim {
        col.iter_mut().for_each(|z| *z = Complex::new(0.0, 0.0));
        col[j] = Complex::new(1.0, 0.0);
        apply_circuit(circuit, &mut col)?;
        for (i, z) in col.iter().enumerate() {
            out[(i, j)] = *z;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kron;
    use crate::walk::hadamard_coin;

    #[test]
    fn empty_circuit_is_identity() {
        let c = Circuit::new(4).unwrap();
        assert_eq!(circuit_to_unitary(&c).unwrap(), ComplexMatrix::identity(16));
    }

    #[test]
    fn qubit_zero_is_least_significant() {
        let mut c = Circuit::new(2).unwrap();
        c.push(Gate::H { qubit: 0 }).unwrap();
        let expected = kron(&ComplexMatrix::identity(2), &hadamard_coin(1).unwrap());
        assert!(circuit_to_unitary(&c).unwrap().max_abs_diff(&expected).unwrap() < 1e-15);
    }

    #[test]
    fn push_validates_qubits() {
        let mut c = Circuit::new(4).unwrap();
        assert!(c.push(Gate::H { qubit: 4 }).is_err());
        assert!(c.push(Gate::Cnot { control: 1, target: 1 }).is_err());
        assert!(Circuit::new(3).is_err());
        assert!(Circuit::new(0).is_err());
    }

    #[test]
    fn target_one_oracle_polarities() {
        let c = synthesize_complement_circuit(2, 1, false).unwrap();
        let oracle = c.gates().iter().find(|g| !g.is_lowered()).unwrap();
        match oracle {
            Gate::MultiControlledMultiTarget { controls, targets, .. } => {
                assert_eq!(
                    controls,
                    &vec![
                        Control { qubit: 0, polarity: Polarity::Black },
                        Control { qubit: 1, polarity: Polarity::White },
                    ]
                );
                assert_eq!(targets, &vec![2, 3]);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn undecomposed_gate_counts() {
        let c = synthesize_complement_circuit(2, 1, false).unwrap();
        let h = c.gates().iter().filter(|g| matches!(g, Gate::H { .. })).count();
        let cx = c.gates().iter().filter(|g| matches!(g, Gate::Cnot { .. })).count();
        let oracles = c.gates().iter().filter(|g| !g.is_lowered()).count();
        assert_eq!((h, cx, oracles, c.gates().len()), (2, 2, 1, 5));
        assert_eq!(c.measured(), &[0, 1]);
    }

    #[test]
    fn decompose_needs_two_controls() {
        assert!(matches!(
            synthesize_complement_circuit(3, 0, true),
            Err(Error::UnsupportedDecomposition(_))
        ));
        assert!(synthesize_complement_circuit(2, 4, false).is_err());
    }

    #[test]
    fn size_limit() {
        let c = synthesize_complement_circuit(7, 0, false).unwrap();
        assert!(matches!(circuit_to_unitary(&c), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn round_trip_matches_direct_operator() {
        for t in 0..4 {
            let direct = crate::complement::build_complement_operator(2, t).unwrap();
            for decompose in [false, true] {
                let c = synthesize_complement_circuit(2, t, decompose).unwrap();
                let u = circuit_to_unitary(&c).unwrap();
                let d = u.max_abs_diff_up_to_phase(direct.matrix()).unwrap();
                assert!(d < 1e-8, "t={t} decompose={decompose}: {d}");
                // the phase-corrected sqrt(H) makes the lowering exact
                assert!(u.max_abs_diff(direct.matrix()).unwrap() < 1e-10);
            }
        }
        for (n, t) in [(1, 0), (1, 1), (3, 5)] {
            let direct = crate::complement::build_complement_operator(n, t).unwrap();
            let u = circuit_to_unitary(&synthesize_complement_circuit(n, t, false).unwrap()).unwrap();
            assert!(u.max_abs_diff(direct.matrix()).unwrap() < 1e-10);
        }
    }

    #[test]
    fn white_controls_are_x_conjugated_black_controls() {
        let black = Gate::MultiControlledMultiTarget {
            controls: vec![
                Control { qubit: 0, polarity: Polarity::Black },
                Control { qubit: 1, polarity: Polarity::Black },
            ],
            targets: vec![2, 3],
            base: BaseGate::H,
        };
        for t in 0..4usize {
            let white = complement_oracle(2, t);
            let mut lhs = Circuit::new(4).unwrap();
            lhs.push(white).unwrap();
            let mut rhs = Circuit::new(4).unwrap();
            let flips: Vec<Gate> = (0..2)
                .filter(|q| (t >> q) & 1 == 0)
                .map(|q| Gate::X { qubit: q })
                .collect();
            rhs.extend(flips.clone()).unwrap();
            rhs.push(black.clone()).unwrap();
            rhs.extend(flips).unwrap();
            assert_eq!(circuit_to_unitary(&lhs).unwrap(), circuit_to_unitary(&rhs).unwrap());
        }
    }

    #[test]
    fn json_dump_round_trips() {
        let c = synthesize_complement_circuit(2, 2, true).unwrap();
        let back: Circuit = serde_json::from_value(c.to_json()).unwrap();
        assert_eq!(back, c);
        assert_eq!(c.to_json()["gates"][0]["gate"], "h");
    }
}
