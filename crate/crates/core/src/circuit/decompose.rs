//! Lowering of the two-control Hadamard oracle to CNOTs and controlled-`V`
//! gates with `V = sqrt(H)`.

use crate::error::{Error, Result};
use crate::linalg::{Complex, ComplexMatrix};
use crate::statevector::Gate2;

use super::{BaseGate, Gate, Polarity};

/// Euler angles and phase of a controlled single-qubit gate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ControlledAngles {
    pub theta: f64,
    pub phi: f64,
    pub lambda: f64,
    /// Phase applied to the target block on top of the Euler rotation.
    pub phase: f64,
}

/// `sqrt(H)`: the Euler angles give `e^{-i pi/4} sqrt(H)`, so the block carries
/// an extra `pi/4` to make `V^2 = H` exactly.
pub const SQRT_H: ControlledAngles = ControlledAngles {
    theta: 1.0471975511965976,
    phi: -0.9553166181245089,
    lambda: 2.186276035465284,
    phase: std::f64::consts::FRAC_PI_4,
};

/// `sqrt(H)^dagger`.
pub const SQRT_H_DAGGER: ControlledAngles = ControlledAngles {
    theta: 1.0471975511965976,
    phi: 0.9553166181245089,
    lambda: -2.186276035465284,
    phase: -std::f64::consts::FRAC_PI_4,
};

/// Target block of the general controlled gate, `Rz(phi) Ry(theta) Rz(lambda)`:
///
/// ```text
/// [ e^{-i(phi+lambda)/2} cos(theta/2)   -e^{-i(phi-lambda)/2} sin(theta/2) ]
/// [ e^{ i(phi-lambda)/2} sin(theta/2)    e^{ i(phi+lambda)/2} cos(theta/2) ]
/// ```
pub fn u_block(theta: f64, phi: f64, lambda: f64) -> Gate2 {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let e = |angle: f64| Complex::from_polar(1.0, angle);
    [
        [e(-(phi + lambda) / 2.0) * c, -e(-(phi - lambda) / 2.0) * s],
        [e((phi - lambda) / 2.0) * s, e((phi + lambda) / 2.0) * c],
    ]
}

/// 4x4 controlled-`U(theta, phi, lambda)` with the control on the low bit:
/// identity on basis states 0 and 2, the `u_block` on states 1 and 3.
pub fn controlled_u_matrix(theta: f64, phi: f64, lambda: f64) -> ComplexMatrix {
    let u = u_block(theta, phi, lambda);
    let mut m = ComplexMatrix::identity(4);
    m[(1, 1)] = u[0][0];
    m[(1, 3)] = u[0][1];
    m[(3, 1)] = u[1][0];
    m[(3, 3)] = u[1][1];
    m
}

fn controlled(control: usize, target: usize, a: ControlledAngles) -> Gate {
    Gate::ControlledU {
        control,
        target,
        theta: a.theta,
        phi: a.phi,
        lambda: a.lambda,
        phase: a.phase,
    }
}

/// Splits a two-control multi-target Hadamard into one single-target gate per
/// target and lowers each to `CV, CX, CV^dagger, CX, CV`. White controls are
/// flipped with X gates on both sides.
pub fn decompose_mcmt_hadamard(gate: &Gate) -> Result<Vec<Gate>> {
    let (controls, targets) = match gate {
        Gate::MultiControlledMultiTarget {
            controls,
            targets,
            base: BaseGate::H,
        } => (controls, targets),
        other => {
            return Err(Error::UnsupportedDecomposition(format!(
                "expected a multi-controlled Hadamard, got {other:?}"
            )))
        }
    };
    if controls.len() != 2 {
        return Err(Error::UnsupportedDecomposition(format!(
            "only two-control gates can be lowered, got {} controls",
            controls.len()
        )));
    }
    let (c0, c1) = (controls[0].qubit, controls[1].qubit);
    let negate: Vec<Gate> = controls
        .iter()
        .filter(|c| c.polarity == Polarity::White)
        .map(|c| Gate::X { qubit: c.qubit })
        .collect();

    let mut out = negate.clone();
    for &t in targets {
        out.extend([
            controlled(c1, t, SQRT_H),
            Gate::Cnot { control: c0, target: c1 },
            controlled(c1, t, SQRT_H_DAGGER),
            Gate::Cnot { control: c0, target: c1 },
            controlled(c0, t, SQRT_H),
        ]);
    }
    out.extend(negate);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Control, Polarity};

    fn mat(u: &Gate2) -> ComplexMatrix {
        ComplexMatrix::new(2, 2, vec![u[0][0], u[0][1], u[1][0], u[1][1]]).unwrap()
    }

    fn h() -> ComplexMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        ComplexMatrix::from_real(2, 2, &[s, s, s, -s]).unwrap()
    }

    fn with_phase(a: ControlledAngles) -> ComplexMatrix {
        mat(&u_block(a.theta, a.phi, a.lambda)).scale(Complex::from_polar(1.0, a.phase))
    }

    #[test]
    fn sqrt_h_block_squares_to_h() {
        let v = mat(&u_block(SQRT_H.theta, SQRT_H.phi, SQRT_H.lambda));
        let sq = v.matmul(&v).unwrap();
        // the bare Euler form squares to H up to the global phase -i
        assert!(sq.max_abs_diff_up_to_phase(&h()).unwrap() < 1e-10);
        assert!(sq.max_abs_diff(&h().scale(Complex::new(0.0, -1.0))).unwrap() < 1e-10);
        let v = with_phase(SQRT_H);
        assert!(v.matmul(&v).unwrap().max_abs_diff(&h()).unwrap() < 1e-10);
    }

    #[test]
    fn dagger_angles_invert() {
        let bare = mat(&u_block(SQRT_H.theta, SQRT_H.phi, SQRT_H.lambda));
        let bare_dag = mat(&u_block(SQRT_H_DAGGER.theta, SQRT_H_DAGGER.phi, SQRT_H_DAGGER.lambda));
        assert!(bare_dag.max_abs_diff(&bare.dagger()).unwrap() < 1e-10);
        let v = with_phase(SQRT_H);
        let vd = with_phase(SQRT_H_DAGGER);
        assert!(vd.max_abs_diff(&v.dagger()).unwrap() < 1e-10);
    }

    #[test]
    fn zero_angles_give_identity() {
        assert_eq!(controlled_u_matrix(0.0, 0.0, 0.0), ComplexMatrix::identity(4));
    }

    #[test]
    fn controlled_matrix_is_identity_on_control_zero() {
        let m = controlled_u_matrix(0.3, 1.1, -0.4);
        for (i, j) in [(0, 0), (2, 2)] {
            assert_eq!(m[(i, j)], Complex::new(1.0, 0.0));
        }
        for k in [1, 3] {
            assert_eq!(m[(0, k)], Complex::new(0.0, 0.0));
            assert_eq!(m[(2, k)], Complex::new(0.0, 0.0));
        }
        assert!(crate::linalg::is_unitary(&m, 1e-12).unwrap());
    }

    #[test]
    fn lowering_shape() {
        let gate = Gate::MultiControlledMultiTarget {
            controls: vec![
                Control { qubit: 0, polarity: Polarity::Black },
                Control { qubit: 1, polarity: Polarity::Black },
            ],
            targets: vec![2, 3],
            base: BaseGate::H,
        };
        let gates = decompose_mcmt_hadamard(&gate).unwrap();
        assert_eq!(gates.len(), 10);
        assert!(gates.iter().all(Gate::is_two_qubit));
    }

    #[test]
    fn three_controls_rejected() {
        let gate = Gate::MultiControlledMultiTarget {
            controls: (0..3).map(|q| Control { qubit: q, polarity: Polarity::Black }).collect(),
            targets: vec![3],
            base: BaseGate::H,
        };
        assert!(matches!(
            decompose_mcmt_hadamard(&gate),
            Err(Error::UnsupportedDecomposition(_))
        ));
        assert!(decompose_mcmt_hadamard(&Gate::H { qubit: 0 }).is_err());
    }
}
