//! Exact Fock-space representation of the model: ladder operators, the
//! Hamiltonian and its closed-form spectrum, observables, and exact time
//! evolution.
//!
//! The basis ordering is fixed everywhere in this crate:
//!
//! | index | state        | content              |
//! |-------|--------------|----------------------|
//! | 0     | `\|0⟩`       | vacuum               |
//! | 1     | `a₁†\|0⟩`    | one spin-↑ fermion   |
//! | 2     | `a₂†\|0⟩`    | one spin-↓ fermion   |
//! | 3     | `a₁†a₂†\|0⟩` | opposite-spin pair   |
//!
//! Sign convention: a₁† = |1⟩⟨0| + |3⟩⟨2| and a₂† = |2⟩⟨0| − |3⟩⟨1|, so that
//! a₁†a₂†|0⟩ = +|3⟩. Any convention satisfying the canonical anticommutation
//! relations is equivalent; this one is enforced by the test suite.

use crate::{C64, Error, FockOperator, Result, StateVector};

/// Dimension of the Fock space.
pub const DIM: usize = 4;

/// Human-readable labels for the four basis states, in basis order.
pub const BASIS_LABELS: [&str; DIM] = ["vacuum", "up", "down", "pair"];

/// Norm deviation below which a state counts as normalized.
const NORM_TOL: f64 = 1e-12;

/// The three energies of the model, with ħ = 1.
///
/// `gb_b` is the product of the magnetic coupling and the field intensity;
/// the two never enter separately. All fields may take either sign.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Single-particle level energy ħω.
    pub hbar_omega: f64,
    /// Pair interaction strength U.
    pub u: f64,
    /// Magnetic coupling times field intensity, g_B·B.
    pub gb_b: f64,
}

impl ModelParams {
    pub fn new(hbar_omega: f64, u: f64, gb_b: f64) -> Self {
        Self { hbar_omega, u, gb_b }
    }
}

/// One of the two fermion modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Mode 1, spin ↑.
    Up,
    /// Mode 2, spin ↓.
    Down,
}

impl Mode {
    pub const ALL: [Mode; 2] = [Mode::Up, Mode::Down];

    /// Zero-based index (0 for ↑, 1 for ↓).
    pub fn index(self) -> usize {
        match self {
            Mode::Up => 0,
            Mode::Down => 1,
        }
    }
}

impl TryFrom<u8> for Mode {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        match value {
            1 => Ok(Mode::Up),
            2 => Ok(Mode::Down),
            other => Err(Error::InvalidMode(other)),
        }
    }
}

/// Basis state |index⟩ as a state vector.
///
/// Panics if `index >= 4`.
pub fn basis_state(index: usize) -> StateVector {
    assert!(index < DIM, "basis index out of range");
    let mut s = StateVector::zeros();
    s[index] = C64::from(1.0);
    s
}

/// Matrix of the creation operator a_mode†.
pub fn creation_op(mode: Mode) -> FockOperator {
    let one = C64::from(1.0);
    let mut m = FockOperator::zeros();
    match mode {
        Mode::Up => {
            m[(1, 0)] = one;
            m[(3, 2)] = one;
        }
        Mode::Down => {
            m[(2, 0)] = one;
            m[(3, 1)] = -one;
        }
    }
    m
}

/// Matrix of the annihilation operator a_mode (adjoint of [`creation_op`]).
pub fn annihilation_op(mode: Mode) -> FockOperator {
    creation_op(mode).adjoint()
}

/// The Hamiltonian
/// H = ħω (a₁†a₁ + a₂†a₂) + U a₁†a₁a₂†a₂ + g_B·B (a₁†a₁ − a₂†a₂),
/// assembled from the operator matrices. Diagonal in the Fock basis with
/// entries (0, ħω + g_B·B, ħω − g_B·B, 2ħω + U).
pub fn hamiltonian(p: ModelParams) -> FockOperator {
    let n1 = creation_op(Mode::Up) * annihilation_op(Mode::Up);
    let n2 = creation_op(Mode::Down) * annihilation_op(Mode::Down);
    (n1 + n2) * C64::from(p.hbar_omega)
        + (n1 * n2) * C64::from(p.u)
        + (n1 - n2) * C64::from(p.gb_b)
}

/// One eigenvalue of the Hamiltonian, tagged with its basis state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyLevel {
    pub index: usize,
    pub label: &'static str,
    pub energy: f64,
}

/// Closed-form spectrum: the four (energy, basis index) pairs, no numerical
/// diagonalization involved. The vacuum energy is exactly 0; the pair state
/// sits at 2ħω + U rather than at the sum of the single-particle energies.
pub fn spectrum(p: ModelParams) -> [EnergyLevel; 4] {
    let e = [
        0.0,
        p.hbar_omega + p.gb_b,
        p.hbar_omega - p.gb_b,
        2.0 * p.hbar_omega + p.u,
    ];
    [0, 1, 2, 3].map(|k| EnergyLevel {
        index: k,
        label: BASIS_LABELS[k],
        energy: e[k],
    })
}

/// Result of exact evolution: the evolved state plus a flag recording whether
/// the input had to be normalized first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evolved {
    pub state: StateVector,
    pub renormalized: bool,
}

/// Exact time evolution. The Hamiltonian is diagonal, so amplitude k picks up
/// the phase exp(−i E_k t); the norm is preserved exactly.
///
/// A non-normalized input is normalized first and flagged in the result; a
/// zero state is rejected.
pub fn evolve_exact(state: &StateVector, p: ModelParams, t: f64) -> Result<Evolved> {
    let norm = state.norm();
    if norm == 0.0 {
        return Err(Error::InvalidArgument(
            "state vector has zero norm".to_string(),
        ));
    }
    let renormalized = (norm - 1.0).abs() > NORM_TOL;
    let s = if renormalized { state / C64::from(norm) } else { *state };
    let levels = spectrum(p);
    let evolved = StateVector::from_fn(|k, _| {
        s[k] * (-C64::i() * C64::from(levels[k].energy * t)).exp()
    });
    Ok(Evolved {
        state: evolved,
        renormalized,
    })
}

/// The observables exposed by the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Observable {
    /// Particle number N̂ = a₁†a₁ + a₂†a₂.
    Number,
    /// Spin-z, Ŝ_z = a₁†a₁ − a₂†a₂, in units with the ħ/2 folded out:
    /// integer eigenvalues +1, −1, 0, 0.
    SpinZ,
    /// Pair creation a₁†a₂†.
    PairCreate,
    /// Pair annihilation a₂a₁.
    PairAnnihilate,
}

impl std::str::FromStr for Observable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "number" => Ok(Observable::Number),
            "spin_z" => Ok(Observable::SpinZ),
            "pair_create" => Ok(Observable::PairCreate),
            "pair_annihilate" => Ok(Observable::PairAnnihilate),
            other => Err(Error::UnknownObservable(other.to_string())),
        }
    }
}

/// Matrix of the requested observable.
pub fn observable(kind: Observable) -> FockOperator {
    let n1 = creation_op(Mode::Up) * annihilation_op(Mode::Up);
    let n2 = creation_op(Mode::Down) * annihilation_op(Mode::Down);
    match kind {
        Observable::Number => n1 + n2,
        Observable::SpinZ => n1 - n2,
        Observable::PairCreate => creation_op(Mode::Up) * creation_op(Mode::Down),
        Observable::PairAnnihilate => annihilation_op(Mode::Down) * annihilation_op(Mode::Up),
    }
}

/// Expectation value ⟨s|op|s⟩. Real to roundoff when `op` is self-adjoint
/// and `s` is normalized.
pub fn expectation(op: &FockOperator, s: &StateVector) -> C64 {
    s.dotc(&(op * s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{anticommutator, commutator, max_entry_norm};
    use approx::assert_relative_eq;

    fn params() -> ModelParams {
        ModelParams::new(1.0, 0.5, 0.25)
    }

    #[test]
    fn car_holds_exactly() {
        let id = FockOperator::identity();
        for i in Mode::ALL {
            for j in Mode::ALL {
                let expect = if i == j { id } else { FockOperator::zeros() };
                let r = anticommutator(&annihilation_op(i), &creation_op(j)) - expect;
                assert_eq!(max_entry_norm(&r), 0.0);
                let r = anticommutator(&annihilation_op(i), &annihilation_op(j));
                assert_eq!(max_entry_norm(&r), 0.0);
            }
        }
    }

    #[test]
    fn pauli_exclusion_is_exact() {
        for m in Mode::ALL {
            let c = creation_op(m);
            assert_eq!(max_entry_norm(&(c * c)), 0.0);
        }
    }

    #[test]
    fn annihilation_examples() {
        // a₁ a₁†|0⟩ = |0⟩
        let out = annihilation_op(Mode::Up) * basis_state(1);
        assert_eq!(out, basis_state(0));
        // a₂ a₁†a₂†|0⟩ = −a₁†|0⟩
        let out = annihilation_op(Mode::Down) * basis_state(3);
        assert_eq!(out, -basis_state(1));
        // a₁|0⟩ = 0
        let out = annihilation_op(Mode::Up) * basis_state(0);
        assert_eq!(out, StateVector::zeros());
    }

    #[test]
    fn creation_examples() {
        assert_eq!(creation_op(Mode::Up) * basis_state(0), basis_state(1));
        // a₂†a₁†|0⟩ = −a₁†a₂†|0⟩
        assert_eq!(creation_op(Mode::Down) * basis_state(1), -basis_state(3));
        assert_eq!(
            creation_op(Mode::Down) * basis_state(2),
            StateVector::zeros()
        );
    }

    #[test]
    fn invalid_mode_index() {
        assert!(Mode::try_from(1).is_ok());
        assert!(Mode::try_from(2).is_ok());
        assert_eq!(Mode::try_from(0), Err(Error::InvalidMode(0)));
        assert_eq!(Mode::try_from(3), Err(Error::InvalidMode(3)));
    }

    #[test]
    fn hamiltonian_is_diagonal_with_known_entries() {
        let h = hamiltonian(params());
        let expected = [0.0, 1.25, 0.75, 2.5];
        for r in 0..DIM {
            for c in 0..DIM {
                let want = if r == c { C64::from(expected[r]) } else { C64::from(0.0) };
                assert_eq!(h[(r, c)], want);
            }
        }
    }

    #[test]
    fn zero_params_give_zero_hamiltonian() {
        let h = hamiltonian(ModelParams::new(0.0, 0.0, 0.0));
        assert_eq!(max_entry_norm(&h), 0.0);
    }

    #[test]
    fn field_lifts_single_particle_degeneracy() {
        // B = 0 leaves the two one-fermion states degenerate.
        let h = hamiltonian(ModelParams::new(1.0, 0.5, 0.0));
        assert_eq!(h[(1, 1)], h[(2, 2)]);
        let h = hamiltonian(params());
        assert_ne!(h[(1, 1)], h[(2, 2)]);
    }

    #[test]
    fn hamiltonian_commutes_with_number_and_spin() {
        let h = hamiltonian(params());
        for kind in [Observable::Number, Observable::SpinZ] {
            let c = commutator(&h, &observable(kind));
            assert_eq!(max_entry_norm(&c), 0.0);
        }
    }

    #[test]
    fn spectrum_matches_closed_forms() {
        let s = spectrum(params());
        let energies: Vec<f64> = s.iter().map(|l| l.energy).collect();
        assert_eq!(energies, vec![0.0, 1.25, 0.75, 2.5]);
        assert_eq!(s[0].label, "vacuum");
        // interaction shift: pair energy differs from the sum of singles
        assert_relative_eq!(s[3].energy - (s[1].energy + s[2].energy), 0.5);
    }

    #[test]
    fn vacuum_energy_is_exactly_zero() {
        for (hw, u, b) in [(1.0, 0.5, 0.25), (-3.0, 2.0, 7.5), (0.1, -0.4, 0.0)] {
            assert_eq!(spectrum(ModelParams::new(hw, u, b))[0].energy, 0.0);
        }
    }

    #[test]
    fn evolve_at_t_zero_is_identity() {
        let s = StateVector::from_element(C64::from(0.5));
        let ev = evolve_exact(&s, params(), 0.0).unwrap();
        assert!(!ev.renormalized);
        assert_eq!(ev.state, s);
    }

    #[test]
    fn vacuum_is_stationary() {
        let s = basis_state(0);
        for t in [0.3, 2.0, 17.5] {
            let ev = evolve_exact(&s, params(), t).unwrap();
            assert_eq!(ev.state, s);
        }
    }

    #[test]
    fn evolve_preserves_norm() {
        let s = StateVector::new(
            C64::new(0.3, 0.1),
            C64::new(-0.2, 0.45),
            C64::new(0.5, 0.0),
            C64::new(0.1, -0.6),
        );
        let s = s / C64::from(s.norm());
        for k in 0..50 {
            let ev = evolve_exact(&s, params(), 0.37 * k as f64).unwrap();
            assert!((ev.state.norm() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn non_normalized_input_is_flagged_and_normalized() {
        let s = StateVector::from_element(C64::from(1.0));
        let ev = evolve_exact(&s, params(), 0.1).unwrap();
        assert!(ev.renormalized);
        assert_relative_eq!(ev.state.norm(), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn zero_state_is_rejected() {
        assert!(evolve_exact(&StateVector::zeros(), params(), 1.0).is_err());
    }

    #[test]
    fn observable_examples() {
        let n = observable(Observable::Number);
        assert_eq!(
            expectation(&n, &basis_state(3)),
            C64::from(2.0)
        );
        let sz = observable(Observable::SpinZ);
        assert_eq!(expectation(&sz, &basis_state(2)), C64::from(-1.0));
        assert_eq!(
            observable(Observable::PairCreate) * basis_state(0),
            basis_state(3)
        );
        assert_eq!(
            observable(Observable::PairAnnihilate),
            observable(Observable::PairCreate).adjoint()
        );
    }

    #[test]
    fn observable_parsing() {
        assert_eq!("number".parse::<Observable>().unwrap(), Observable::Number);
        assert!("momentum".parse::<Observable>().is_err());
    }

    #[test]
    fn expectation_examples() {
        let h = hamiltonian(params());
        assert_eq!(expectation(&h, &basis_state(0)), C64::from(0.0));
        // equal mixture of the two single-fermion states has zero spin-z
        let mix = (basis_state(1) + basis_state(2)) / C64::from(2f64.sqrt());
        let sz = expectation(&observable(Observable::SpinZ), &mix);
        assert_relative_eq!(sz.re, 0.0, epsilon = 1e-15);
        assert_relative_eq!(sz.im, 0.0, epsilon = 1e-15);
    }
}
