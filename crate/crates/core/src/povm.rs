//! POVM data model shared by both constructions: weighted rank-1 elements
//! tagged with the group point used as the guess for that outcome.

use crate::error::{Error, Result};
use crate::operator::{ComplexMatrix, StateVector};
use crate::rep::{rotation_matrix, GroupPoint, RepDescriptor};

/// One measurement outcome: `matrix = weight * |U(guess) seed><U(guess) seed|`
/// with a normalized seed state.
#[derive(Debug, Clone)]
pub struct PovmElement {
    pub weight: f64,
    pub guess: GroupPoint,
    pub seed_state: StateVector,
    pub matrix: ComplexMatrix,
}

impl PovmElement {
    /// Build a rank-1 element from a normalized seed rotated to the guess.
    pub fn rank_one(
        rep: &RepDescriptor,
        weight: f64,
        guess: GroupPoint,
        seed_state: StateVector,
    ) -> Result<Self> {
        if seed_state.dim() != rep.dim {
            return Err(Error::DimensionMismatch {
                expected: rep.dim,
                got: seed_state.dim(),
            });
        }
        let u = rotation_matrix(rep, &guess)?;
        let rotated = u.matvec(&seed_state)?;
        let matrix = rotated.projector().scale_real(weight);
        Ok(Self {
            weight,
            guess,
            seed_state,
            matrix,
        })
    }
}

/// A finite POVM on the symmetric subspace of the given representation.
#[derive(Debug, Clone)]
pub struct Povm {
    pub rep: RepDescriptor,
    pub elements: Vec<PovmElement>,
}

impl Povm {
    pub fn dim(&self) -> usize {
        self.rep.dim
    }

    /// Sum of all element matrices.
    pub fn completeness_sum(&self) -> Result<ComplexMatrix> {
        let d = self.rep.dim;
        let mut sum = ComplexMatrix::zeros(d, d);
        for e in &self.elements {
            if e.matrix.rows() != d || e.matrix.cols() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    got: e.matrix.rows(),
                });
            }
            sum.add_assign(&e.matrix)?;
        }
        Ok(sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rank_one_element_trace_equals_weight() {
        let rep = RepDescriptor::su2(2).unwrap();
        let seed = StateVector::basis_state(3, 2);
        let e = PovmElement::rank_one(&rep, 0.4, GroupPoint::coset(1.1, 0.3), seed).unwrap();
        assert_abs_diff_eq!(e.matrix.trace().re, 0.4, epsilon = 1e-14);
        assert!(e.matrix.is_hermitian(1e-13).unwrap());
        assert!(e.matrix.min_eigenvalue().unwrap() >= -1e-13);
    }

    #[test]
    fn rank_one_rejects_wrong_seed_dimension() {
        let rep = RepDescriptor::su2(2).unwrap();
        let seed = StateVector::basis_state(2, 0);
        assert!(matches!(
            PovmElement::rank_one(&rep, 1.0, GroupPoint::coset(0.0, 0.0), seed),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
