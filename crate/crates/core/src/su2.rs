//! Construction of the finite optimal POVM for estimating a spin-1/2 pure
//! state from N identical copies.
//!
//! The weights come from the (N+1) diagonal completeness conditions on a
//! fixed polar grid; replicating each polar element over the N+1 phase
//! angles 2 s pi / (N+1) then cancels every off-diagonal term by a
//! roots-of-unity sum, at the cost of a 1/(N+1) factor per replica.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exec;
use crate::operator::StateVector;
use crate::povm::{Povm, PovmElement};
use crate::rep::{wigner_d, GroupPoint, RepDescriptor};

/// Weights this small in magnitude are treated as roundoff and clamped to 0;
/// anything more negative aborts the grid.
const WEIGHT_NEGATIVE_ABORT: f64 = -1e-9;
/// Residual bound for the weight solve's back-substitution check.
const WEIGHT_RESIDUAL_TOL: f64 = 1e-12;

/// Polar grid families for the weight solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaGrid {
    /// Equidistant including both endpoints: r pi / N.
    Endpoint,
    /// Chebyshev-style open grid: pi (r + 1/2) / (N + 1).
    Chebyshev,
}

impl ThetaGrid {
    /// The N+1 polar angles of this grid family.
    pub fn angles(self, n: u32) -> Vec<f64> {
        let count = n as usize + 1;
        match self {
            ThetaGrid::Endpoint => {
                if n == 1 {
                    vec![0.0, PI]
                } else {
                    (0..count).map(|r| r as f64 * PI / n as f64).collect()
                }
            }
            ThetaGrid::Chebyshev => (0..count)
                .map(|r| PI * (r as f64 + 0.5) / count as f64)
                .collect(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ThetaGrid::Endpoint => "endpoint",
            ThetaGrid::Chebyshev => "chebyshev",
        }
    }
}

/// The default polar grid: N+1 angles equidistant over [0, pi], endpoints
/// included.
pub fn choose_thetas(n: u32) -> Result<Vec<f64>> {
    if n < 1 {
        return Err(Error::InvalidCopies);
    }
    Ok(ThetaGrid::Endpoint.angles(n))
}

/// The N+1 phase angles 2 s pi / (N+1).
pub fn psi_angles(n: u32) -> Result<Vec<f64>> {
    if n < 1 {
        return Err(Error::InvalidCopies);
    }
    let count = n as usize + 1;
    Ok((0..count)
        .map(|s| 2.0 * s as f64 * PI / count as f64)
        .collect())
}

/// Solve the diagonal completeness conditions
/// sum_r c_r^2 [d^{N/2}_{m,N/2}(theta_r)]^2 = 1 for all m.
///
/// Partial-pivoted elimination with a back-substitution residual check;
/// weights in (-1e-9, 0) are clamped to zero, anything more negative reports
/// the grid as unusable.
pub fn solve_weights(n: u32, thetas: &[f64]) -> Result<Vec<f64>> {
    if n < 1 {
        return Err(Error::InvalidCopies);
    }
    let d = n as usize + 1;
    if thetas.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: thetas.len(),
        });
    }

    let two_j = n as i32;
    let mut design = vec![0.0f64; d * d];
    for (i, row) in design.chunks_mut(d).enumerate() {
        let two_m = 2 * i as i32 - two_j;
        for (r, &theta) in thetas.iter().enumerate() {
            row[r] = wigner_d(two_j, two_m, two_j, theta)?.powi(2);
        }
    }

    let weights = solve_real_system(&design, &vec![1.0; d], d)?;

    // Ground truth for the solve is the residual, not the pivot sizes.
    let mut residual = 0.0f64;
    for i in 0..d {
        let mut acc = 0.0;
        for r in 0..d {
            acc += design[i * d + r] * weights[r];
        }
        residual = residual.max((acc - 1.0).abs());
    }
    if residual > WEIGHT_RESIDUAL_TOL {
        return Err(Error::SingularSystem { residual });
    }

    let min_weight = weights.iter().copied().fold(f64::INFINITY, f64::min);
    if min_weight < WEIGHT_NEGATIVE_ABORT {
        return Err(Error::NegativeWeights { min_weight });
    }
    Ok(weights
        .into_iter()
        .map(|w| if w < 0.0 { 0.0 } else { w })
        .collect())
}

/// Gaussian elimination with partial pivoting on a dense row-major system.
fn solve_real_system(matrix: &[f64], rhs: &[f64], d: usize) -> Result<Vec<f64>> {
    let mut a = matrix.to_vec();
    let mut b = rhs.to_vec();
    for col in 0..d {
        let pivot_row = (col..d)
            .max_by(|&r1, &r2| a[r1 * d + col].abs().total_cmp(&a[r2 * d + col].abs()))
            .expect("non-empty range");
        if a[pivot_row * d + col].abs() < f64::MIN_POSITIVE {
            return Err(Error::SingularSystem { residual: f64::INFINITY });
        }
        if pivot_row != col {
            for k in 0..d {
                a.swap(col * d + k, pivot_row * d + k);
            }
            b.swap(col, pivot_row);
        }
        let pivot = a[col * d + col];
        for row in (col + 1)..d {
            let factor = a[row * d + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            for k in col..d {
                a[row * d + k] -= factor * a[col * d + k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; d];
    for row in (0..d).rev() {
        let mut acc = b[row];
        for k in (row + 1)..d {
            acc -= a[row * d + k] * x[k];
        }
        x[row] = acc / a[row * d + row];
    }
    Ok(x)
}

/// An assembled Example-A POVM together with the grid provenance the report
/// has to carry.
#[derive(Debug, Clone)]
pub struct Su2Povm {
    pub povm: Povm,
    pub grid: ThetaGrid,
    pub fallback_used: bool,
    pub thetas: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Build the (N+1)^2-element optimal POVM on the given polar grid.
pub fn build_povm_su2_on_grid(n: u32, grid: ThetaGrid) -> Result<Su2Povm> {
    let thetas = match grid {
        ThetaGrid::Endpoint => choose_thetas(n)?,
        ThetaGrid::Chebyshev => {
            if n < 1 {
                return Err(Error::InvalidCopies);
            }
            ThetaGrid::Chebyshev.angles(n)
        }
    };
    let weights = solve_weights(n, &thetas)?;
    let psis = psi_angles(n)?;
    let rep = RepDescriptor::su2(n)?;
    let d = rep.dim;
    let seed = StateVector::basis_state(d, d - 1);
    let replication = 1.0 / d as f64;

    let rep_ref = &rep;
    let seed_ref = &seed;
    let theta_ref = &thetas;
    let weight_ref = &weights;
    let psi_ref = &psis;
    let elements: Vec<Result<PovmElement>> = exec::map_indexed(d * d, |idx| {
        let r = idx / d;
        let s = idx % d;
        let guess = GroupPoint::coset(theta_ref[r], psi_ref[s]);
        PovmElement::rank_one(
            rep_ref,
            weight_ref[r] * replication,
            guess,
            seed_ref.clone(),
        )
    });
    let elements = elements.into_iter().collect::<Result<Vec<_>>>()?;

    Ok(Su2Povm {
        povm: Povm { rep, elements },
        grid,
        fallback_used: false,
        thetas,
        weights,
    })
}

/// Build with the default endpoint grid, retrying on the Chebyshev grid if
/// the endpoint grid yields negative weights. The outcome records which grid
/// actually produced the POVM.
pub fn build_povm_su2(n: u32) -> Result<Su2Povm> {
    match build_povm_su2_on_grid(n, ThetaGrid::Endpoint) {
        Ok(built) => Ok(built),
        Err(Error::NegativeWeights { .. }) => {
            let mut built = build_povm_su2_on_grid(n, ThetaGrid::Chebyshev)?;
            built.fallback_used = true;
            Ok(built)
        }
        Err(e) => Err(e),
    }
}
