//! In-place gate application on amplitude vectors.
//!
//! Qubit `q` is bit `q` of the basis index. With the walk's coin-major layout
//! this puts the position register on qubits `0..n` and the coin register on
//! qubits `n..2n`.

use crate::linalg::Complex;

pub type Gate2 = [[Complex; 2]; 2];

/// One control line: `(qubit, required bit value)`.
pub type ControlLine = (usize, bool);

fn controls_hold(index: usize, controls: &[ControlLine]) -> bool {
    controls
        .iter()
        .all(|&(q, value)| ((index >> q) & 1 == 1) == value)
}

/// Applies `u` to `target` on every basis pair whose control bits match.
pub fn apply_controlled(amps: &mut [Complex], controls: &[ControlLine], target: usize, u: &Gate2) {
    let bit = 1usize << target;
    for i in 0..amps.len() {
        if i & bit != 0 || !controls_hold(i, controls) {
            continue;
        }
        let j = i | bit;
        let (a0, a1) = (amps[i], amps[j]);
        amps[i] = u[0][0] * a0 + u[0][1] * a1;
        amps[j] = u[1][0] * a0 + u[1][1] * a1;
    }
}

pub fn apply_single(amps: &mut [Complex], target: usize, u: &Gate2) {
    apply_controlled(amps, &[], target, u);
}

/// Flips `target` wherever `control` is set.
pub fn apply_cnot(amps: &mut [Complex], control: usize, target: usize) {
    let (cbit, tbit) = (1usize << control, 1usize << target);
    for i in 0..amps.len() {
        if i & cbit != 0 && i & tbit == 0 {
            amps.swap(i, i | tbit);
        }
    }
}

pub fn hadamard() -> Gate2 {
    let s = Complex::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    [[s, s], [s, -s]]
}

pub fn pauli_x() -> Gate2 {
    let (o, l) = (Complex::new(0.0, 0.0), Complex::new(1.0, 0.0));
    [[o, l], [l, o]]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex {
        Complex::new(x, 0.0)
    }

    #[test]
    fn cnot_permutes_basis() {
        // |q1 q0> = |01> -> |11> with control q0, target q1
        let mut v = vec![c(0.0); 4];
        v[1] = c(1.0);
        apply_cnot(&mut v, 0, 1);
        assert_eq!(v[3], c(1.0));
        apply_cnot(&mut v, 1, 0);
        assert_eq!(v[2], c(1.0));
    }

    #[test]
    fn controlled_gate_respects_polarity() {
        let mut v = vec![c(0.0); 4];
        v[0] = c(1.0);
        apply_controlled(&mut v, &[(0, true)], 1, &pauli_x());
        assert_eq!(v[0], c(1.0));
        apply_controlled(&mut v, &[(0, false)], 1, &pauli_x());
        assert_eq!(v[2], c(1.0));
    }
}
