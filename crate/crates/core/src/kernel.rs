//! The positive Hermitian kernel that reduces the mean-fidelity functional to
//! a sum of per-outcome traces, built two independent ways: from the closed
//! forms for each worked case and by direct group quadrature. The quadrature
//! route exists to certify the closed forms, so the two implementations share
//! no formulas.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exec;
use crate::operator::{ComplexMatrix, StateVector};
use crate::quadrature::{gauss_legendre, periodic_nodes};
use crate::rep::{binomial, rotation_matrix, GroupPoint, RepDescriptor, RepKind};

/// How a [`FidelityOperator`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Analytic,
    Quadrature,
}

/// The d x d positive Hermitian fidelity kernel together with its largest
/// eigenvalue.
#[derive(Debug, Clone)]
pub struct FidelityOperator {
    pub rep: RepDescriptor,
    pub matrix: ComplexMatrix,
    pub lambda_max: f64,
    pub provenance: Provenance,
}

impl FidelityOperator {
    /// The spectral bound lambda_max * d on the mean fidelity.
    pub fn upper_bound(&self) -> f64 {
        self.lambda_max * self.rep.dim as f64
    }
}

/// The reference state in the symmetric subspace together with its
/// single-copy density matrix.
#[derive(Debug, Clone)]
pub struct ReferenceState {
    pub rep: RepDescriptor,
    pub omega0: StateVector,
    pub rho0_single: ComplexMatrix,
}

impl ReferenceState {
    /// The canonical reference for each worked case: |j,j> for the SU(2)
    /// coset, the symmetrized equal superposition for U(1).
    pub fn for_rep(rep: &RepDescriptor) -> Self {
        match rep.kind {
            RepKind::Su2Coset => {
                let omega0 = StateVector::basis_state(rep.dim, rep.dim - 1);
                let rho0_single = StateVector::basis_state(2, 1).projector();
                Self {
                    rep: rep.clone(),
                    omega0,
                    rho0_single,
                }
            }
            RepKind::U1 => {
                let n = rep.n_copies;
                let scale = 2f64.powf(n as f64 / 2.0);
                let amps: Vec<f64> = (0..rep.dim)
                    .map(|m| binomial(n as usize, m).sqrt() / scale)
                    .collect();
                let omega0 = StateVector::from_real(&amps);
                let plus = StateVector::from_real(&[0.5f64.sqrt(), 0.5f64.sqrt()]);
                Self {
                    rep: rep.clone(),
                    omega0,
                    rho0_single: plus.projector(),
                }
            }
        }
    }
}

/// Closed-form SU(2) kernel: diagonal with entries
/// (N/2 + m + 1) / ((N+2)(N+1)), m = -N/2 .. N/2.
pub fn f_su2_analytic(n: u32) -> Result<FidelityOperator> {
    let rep = RepDescriptor::su2(n)?;
    let denom = ((n + 2) * (n + 1)) as f64;
    let diag: Vec<f64> = (0..rep.dim).map(|i| (i as f64 + 1.0) / denom).collect();
    let matrix = ComplexMatrix::diag_real(&diag);
    Ok(FidelityOperator {
        rep,
        matrix,
        lambda_max: 1.0 / (n as f64 + 2.0),
        provenance: Provenance::Analytic,
    })
}

/// SU(2) kernel by quadrature over the coset: Gauss-Legendre of the given
/// order in x = cos(theta) and a uniform phase grid with max(order, N+2)
/// nodes, integrating the rotated reference projector against the
/// single-copy fidelity (1 + cos(theta))/2 with the normalized measure
/// sin(theta) dtheta dpsi / (4 pi).
pub fn f_su2_quadrature(n: u32, order: usize) -> Result<FidelityOperator> {
    if order < 1 {
        return Err(Error::QuadratureOrderTooSmall { order, min: 1 });
    }
    let rep = RepDescriptor::su2(n)?;
    let d = rep.dim;
    let rule = gauss_legendre(order);
    let psi_nodes = periodic_nodes(order.max(n as usize + 2));
    let psi_weight = 1.0 / psi_nodes.len() as f64;

    let rep_ref = &rep;
    let psi_ref = &psi_nodes;
    let partials = exec::map_indexed(order, |i| {
        let x = rule.nodes[i];
        let w = rule.weights[i];
        let theta = x.acos();
        let single_fidelity = (1.0 + x) / 2.0;
        let mut acc = ComplexMatrix::zeros(d, d);
        for &psi in psi_ref {
            let u = rotation_matrix(rep_ref, &GroupPoint::coset(theta, psi))
                .expect("valid coset point");
            let col = u.column(d - 1);
            let proj = col.projector();
            acc.add_assign(&proj.scale_real(single_fidelity * psi_weight))
                .expect("same shape");
        }
        // Gauss weight and the 1/2 from the normalized x-measure.
        acc.scale_real(w * 0.5)
    });

    let mut matrix = ComplexMatrix::zeros(d, d);
    for p in &partials {
        matrix.add_assign(p)?;
    }

    let lambda_max = *matrix
        .eigh()?
        .eigenvalues
        .last()
        .expect("kernel has at least one eigenvalue");
    Ok(FidelityOperator {
        rep,
        matrix,
        lambda_max,
        provenance: Provenance::Quadrature,
    })
}

/// Closed-form U(1) kernel: tridiagonal with entries
/// sqrt(C(N,m) C(N,n)) / 2^{N+2} * (2 d_{m,n} + d_{m,n+1} + d_{m+1,n}).
pub fn f_u1_analytic(n: u32) -> Result<FidelityOperator> {
    let rep = RepDescriptor::u1(n)?;
    let d = rep.dim;
    let scale = 2f64.powi(n as i32 + 2);
    let mut matrix = ComplexMatrix::zeros(d, d);
    for m in 0..d {
        for nn in 0..d {
            let mut band = 0.0;
            if m == nn {
                band += 2.0;
            }
            if nn + 1 == m || m + 1 == nn {
                band += 1.0;
            }
            if band == 0.0 {
                continue;
            }
            let amp = (binomial(n as usize, m) * binomial(n as usize, nn)).sqrt() / scale;
            matrix.set(m, nn, Complex64::new(amp * band, 0.0));
        }
    }
    let lambda_max = *matrix
        .eigh()?
        .eigenvalues
        .last()
        .expect("kernel has at least one eigenvalue");
    Ok(FidelityOperator {
        rep,
        matrix,
        lambda_max,
        provenance: Provenance::Analytic,
    })
}

/// U(1) kernel by quadrature: uniform phase grid, exact for the trigonometric
/// polynomial integrand once `num_nodes >= N + 3`.
pub fn f_u1_quadrature(n: u32, num_nodes: usize) -> Result<FidelityOperator> {
    let rep = RepDescriptor::u1(n)?;
    let min_nodes = n as usize + 3;
    if num_nodes < min_nodes {
        return Err(Error::QuadratureOrderTooSmall {
            order: num_nodes,
            min: min_nodes,
        });
    }
    let d = rep.dim;
    let omega0 = ReferenceState::for_rep(&rep).omega0.projector();
    let nodes = periodic_nodes(num_nodes);
    let node_weight = 1.0 / num_nodes as f64;

    let rep_ref = &rep;
    let omega_ref = &omega0;
    let node_ref = &nodes;
    let partials = exec::map_indexed(num_nodes, |i| {
        let psi = node_ref[i];
        let u = rotation_matrix(rep_ref, &GroupPoint::phase(psi)).expect("valid phase point");
        let m = u
            .mul(omega_ref)
            .and_then(|t| t.mul(&u.adjoint()))
            .expect("dimensions agree");
        m.scale_real((1.0 + psi.cos()) / 2.0 * node_weight)
    });

    let mut matrix = ComplexMatrix::zeros(d, d);
    for p in &partials {
        matrix.add_assign(p)?;
    }

    let lambda_max = *matrix
        .eigh()?
        .eigenvalues
        .last()
        .expect("kernel has at least one eigenvalue");
    Ok(FidelityOperator {
        rep,
        matrix,
        lambda_max,
        provenance: Provenance::Quadrature,
    })
}
