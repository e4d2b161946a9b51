//! Rotation matrices for the spin-j representation on the totally symmetric
//! subspace, and the representation bookkeeping shared by both worked cases.
//!
//! Conventions: the standard basis |j,m> is ordered by ascending m, and the
//! coset rotation is D^j_{m,n}(theta, psi, 0) = exp(-i m psi) d^j_{m,n}(theta)
//! with d in the Condon-Shortley convention, so d^{1/2} = [[c, s], [-s, c]]
//! (rows m = -1/2, +1/2) with c = cos(theta/2), s = sin(theta/2). The U(1)
//! rotation is diag(exp(i m psi)), m = 0..N. Magnetic quantum numbers are
//! carried as doubled integers so half-integer spins need no fractions.

use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::ComplexMatrix;

/// Largest supported doubled spin for [`wigner_d`].
pub const MAX_TWO_J: i32 = 512;

/// A point of the coset parameterization: polar angle (absent for U(1)
/// usage) and azimuthal/phase angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupPoint {
    /// Polar angle in [0, pi]; `None` for pure phase rotations.
    pub theta: Option<f64>,
    /// Azimuthal or phase angle in [0, 2*pi).
    pub psi: f64,
}

impl GroupPoint {
    /// SU(2) coset point (theta, psi).
    pub fn coset(theta: f64, psi: f64) -> Self {
        Self {
            theta: Some(theta),
            psi: wrap_angle(psi),
        }
    }

    /// U(1) phase point.
    pub fn phase(psi: f64) -> Self {
        Self {
            theta: None,
            psi: wrap_angle(psi),
        }
    }

    /// Same point with the phase angle advanced by `dpsi` (mod 2*pi).
    pub fn shifted_psi(&self, dpsi: f64) -> Self {
        Self {
            theta: self.theta,
            psi: wrap_angle(self.psi + dpsi),
        }
    }
}

/// Map an angle into [0, 2*pi).
pub fn wrap_angle(psi: f64) -> f64 {
    let two_pi = std::f64::consts::TAU;
    let r = psi.rem_euclid(two_pi);
    if r == two_pi {
        0.0
    } else {
        r
    }
}

/// Which group acts on the symmetric subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepKind {
    /// SU(2)/U(1) coset rotations of N spin-1/2 copies (spin N/2).
    Su2Coset,
    /// U(1) phase rotations of N qubits, charges m = 0..N.
    U1,
}

/// Descriptor of the representation acting on the (N+1)-dimensional
/// symmetric subspace of N qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct RepDescriptor {
    pub kind: RepKind,
    pub n_copies: u32,
    pub dim: usize,
    /// Eigenvalues of the diagonal subgroup generator, strictly increasing.
    pub generator_eigenvalues: Vec<f64>,
    pub single_system_dim: usize,
}

impl RepDescriptor {
    /// Spin-N/2 representation for N spin-1/2 copies; generator eigenvalues
    /// m = -N/2 .. N/2.
    pub fn su2(n_copies: u32) -> Result<Self> {
        if n_copies < 1 {
            return Err(Error::InvalidCopies);
        }
        let dim = n_copies as usize + 1;
        let half_n = n_copies as f64 / 2.0;
        let generator_eigenvalues = (0..dim).map(|i| i as f64 - half_n).collect();
        Ok(Self {
            kind: RepKind::Su2Coset,
            n_copies,
            dim,
            generator_eigenvalues,
            single_system_dim: 2,
        })
    }

    /// Direct sum (0) + (1) + ... + (N) for N qubits; generator eigenvalues
    /// m = 0 .. N.
    pub fn u1(n_copies: u32) -> Result<Self> {
        if n_copies < 1 {
            return Err(Error::InvalidCopies);
        }
        let dim = n_copies as usize + 1;
        let generator_eigenvalues = (0..dim).map(|i| i as f64).collect();
        Ok(Self {
            kind: RepKind::U1,
            n_copies,
            dim,
            generator_eigenvalues,
            single_system_dim: 2,
        })
    }

    /// The same kind of representation acting on a single copy.
    pub fn single_system(&self) -> Self {
        match self.kind {
            RepKind::Su2Coset => Self::su2(1).expect("n=1 is valid"),
            RepKind::U1 => Self::u1(1).expect("n=1 is valid"),
        }
    }

    /// True if `other` labels the same representation.
    pub fn matches(&self, other: &RepDescriptor) -> bool {
        self.kind == other.kind && self.n_copies == other.n_copies && self.dim == other.dim
    }
}

// ---------------------------------------------------------------------------
// Double-double helpers for the alternating Wigner sum.
//
// The factorial-sum formula cancels catastrophically in plain f64 beyond
// j ~ 15 (terms reach ~1e6 while the result stays O(1)), so the inner sum is
// accumulated in unevaluated double-double pairs. Binomial factors come from
// an exact Pascal table and the overall factorial ratio is applied once via
// log-factorials, where only its relative error matters.
// ---------------------------------------------------------------------------

#[derive(Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

#[inline]
fn two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    let bb = s - a;
    Dd {
        hi: s,
        lo: (a - (s - bb)) + (b - bb),
    }
}

#[inline]
fn two_prod(a: f64, b: f64) -> Dd {
    let p = a * b;
    Dd {
        hi: p,
        lo: a.mul_add(b, -p),
    }
}

impl Dd {
    const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    fn add(self, other: Dd) -> Dd {
        let s = two_sum(self.hi, other.hi);
        quick_two_sum(s.hi, s.lo + self.lo + other.lo)
    }

    #[inline]
    fn mul(self, other: Dd) -> Dd {
        let p = two_prod(self.hi, other.hi);
        quick_two_sum(p.hi, p.lo + self.hi * other.lo + self.lo * other.hi)
    }

    #[inline]
    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// base^exp in double-double by binary exponentiation.
fn dd_powi(base: f64, mut exp: u32) -> Dd {
    let mut acc = Dd::ONE;
    let mut b = Dd::from_f64(base);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc.mul(b);
        }
        exp >>= 1;
        if exp > 0 {
            b = b.mul(b);
        }
    }
    acc
}

const MAX_FACT: usize = MAX_TWO_J as usize + 1;
const MAX_EXACT_BINOM: usize = 128;

/// ln(n!) table, compensated cumulative sum of ln(i).
fn ln_factorials() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = vec![0.0; MAX_FACT + 1];
        let mut sum = 0.0;
        let mut comp = 0.0;
        for i in 2..=MAX_FACT {
            let y = (i as f64).ln() - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            table[i] = sum;
        }
        table
    })
}

/// Pascal triangle up to `MAX_EXACT_BINOM`, exact in f64 where C(n,k) < 2^53.
fn binomial_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n_max = MAX_EXACT_BINOM;
        let mut table = vec![0.0; (n_max + 1) * (n_max + 2) / 2];
        let idx = |n: usize, k: usize| n * (n + 1) / 2 + k;
        for n in 0..=n_max {
            table[idx(n, 0)] = 1.0;
            table[idx(n, n)] = 1.0;
            for k in 1..n {
                table[idx(n, k)] = table[idx(n - 1, k - 1)] + table[idx(n - 1, k)];
            }
        }
        table
    })
}

pub(crate) fn binomial(n: usize, k: usize) -> f64 {
    debug_assert!(k <= n);
    if n <= MAX_EXACT_BINOM {
        binomial_table()[n * (n + 1) / 2 + k]
    } else {
        let lf = ln_factorials();
        (lf[n] - lf[k] - lf[n - k]).exp()
    }
}

/// Wigner small-d matrix element d^j_{m,n}(theta) for doubled indices,
/// Condon-Shortley convention.
///
/// Evaluated by the explicit factorial-sum formula: the overall factorial
/// ratio goes through log-factorials, the alternating binomial sum is
/// accumulated in compensated double-double arithmetic.
pub fn wigner_d(two_j: i32, two_m: i32, two_n: i32, theta: f64) -> Result<f64> {
    if two_j < 0 || two_m.abs() > two_j || two_n.abs() > two_j {
        return Err(Error::MagneticIndexOutOfRange { two_j, two_m, two_n });
    }
    if (two_j - two_m) % 2 != 0 || (two_j - two_n) % 2 != 0 {
        return Err(Error::MagneticIndexParity { two_j });
    }
    if two_j > MAX_TWO_J {
        return Err(Error::SpinTooLarge {
            two_j,
            max: MAX_TWO_J,
        });
    }

    let a = (two_m - two_n) / 2;
    let jpn = ((two_j + two_n) / 2) as usize;
    let jmn = ((two_j - two_n) / 2) as usize;
    let jpm = ((two_j + two_m) / 2) as usize;
    let jmm = ((two_j - two_m) / 2) as usize;

    let k_min = 0.max(-a) as usize;
    let k_max = jpn.min(jmm);

    let c = (theta / 2.0).cos();
    let s = (theta / 2.0).sin();

    let mut sum = Dd::from_f64(0.0);
    for k in k_min..=k_max {
        let ak = (a + k as i32) as usize;
        let cos_exp = (two_j - a - 2 * k as i32) as u32;
        let sin_exp = (ak + k) as u32;

        let mut term = two_prod(binomial(jpm, ak), binomial(jmm, k));
        term = term.mul(dd_powi(c, cos_exp));
        term = term.mul(dd_powi(s, sin_exp));
        if ak % 2 == 1 {
            term = Dd {
                hi: -term.hi,
                lo: -term.lo,
            };
        }
        sum = sum.add(term);
    }

    let lf = ln_factorials();
    let ln_ratio = 0.5 * (lf[jpn] + lf[jmn] - lf[jpm] - lf[jmm]);
    Ok(ln_ratio.exp() * sum.to_f64())
}

/// Full rotation matrix of the representation at a group point.
///
/// SU(2) coset: (N+1)x(N+1) unitary with entries
/// exp(-i m psi) d^{N/2}_{m,n}(theta); requires `g.theta`.
/// U(1): diag(exp(i m psi)), m = 0..N.
pub fn rotation_matrix(rep: &RepDescriptor, g: &GroupPoint) -> Result<ComplexMatrix> {
    match rep.kind {
        RepKind::Su2Coset => {
            let theta = g.theta.ok_or(Error::MissingTheta)?;
            let two_j = rep.n_copies as i32;
            let d = rep.dim;
            let mut m = ComplexMatrix::zeros(d, d);
            for i1 in 0..d {
                let two_m1 = 2 * i1 as i32 - two_j;
                let phase = Complex64::from_polar(1.0, -(two_m1 as f64 / 2.0) * g.psi);
                for i2 in 0..d {
                    let two_m2 = 2 * i2 as i32 - two_j;
                    let val = wigner_d(two_j, two_m1, two_m2, theta)?;
                    m.set(i1, i2, phase * val);
                }
            }
            Ok(m)
        }
        RepKind::U1 => {
            let phases: Vec<Complex64> = rep
                .generator_eigenvalues
                .iter()
                .map(|&w| Complex64::from_polar(1.0, w * g.psi))
                .collect();
            Ok(ComplexMatrix::diag_complex(&phases))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    /// Independent oracle: three-term recursion in j from closed-form seeds
    /// at j0 = max(|m|, |n|).
    fn wigner_d_recursion(two_j: i32, two_m: i32, two_n: i32, theta: f64) -> f64 {
        let m = two_m as f64 / 2.0;
        let n = two_n as f64 / 2.0;
        let c = (theta / 2.0).cos();
        let s = (theta / 2.0).sin();
        let two_j0 = two_m.abs().max(two_n.abs());

        let binom = |nn: i64, kk: i64| -> f64 {
            let mut acc = 1.0f64;
            for i in 1..=kk {
                acc = acc * ((nn - kk + i) as f64) / (i as f64);
            }
            acc
        };
        // Closed forms on the border of the allowed (m, n) square.
        let seed = if two_m == two_j0 {
            let jm = ((two_j0 + two_n) / 2) as i64;
            let sign = if ((two_j0 - two_n) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            sign * binom(two_j0 as i64, jm).sqrt()
                * c.powi(jm as i32)
                * s.powi((two_j0 - two_n) / 2)
        } else if two_m == -two_j0 {
            let jm = ((two_j0 + two_n) / 2) as i64;
            binom(two_j0 as i64, jm).sqrt()
                * c.powi((two_j0 - two_n) / 2)
                * s.powi(jm as i32)
        } else if two_n == two_j0 {
            let jm = ((two_j0 + two_m) / 2) as i64;
            binom(two_j0 as i64, jm).sqrt()
                * c.powi(jm as i32)
                * s.powi((two_j0 - two_m) / 2)
        } else {
            let jm = ((two_j0 + two_m) / 2) as i64;
            let sign = if ((two_j0 + two_m) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            sign * binom(two_j0 as i64, jm).sqrt()
                * c.powi((two_j0 - two_m) / 2)
                * s.powi(jm as i32)
        };

        let mut jj = two_j0 as f64 / 2.0;
        let mut dj = seed;
        let mut djm1 = 0.0;
        let cos_t = theta.cos();
        while jj < two_j as f64 / 2.0 - 1e-9 {
            let dnew = if jj == 0.0 {
                cos_t * dj
            } else {
                let num = (2.0 * jj + 1.0) * (jj * (jj + 1.0) * cos_t - m * n) * dj
                    - (jj + 1.0)
                        * ((jj * jj - m * m).max(0.0) * (jj * jj - n * n).max(0.0)).sqrt()
                        * djm1;
                let den = jj
                    * (((jj + 1.0) * (jj + 1.0) - m * m) * ((jj + 1.0) * (jj + 1.0) - n * n))
                        .sqrt();
                num / den
            };
            djm1 = dj;
            dj = dnew;
            jj += 1.0;
        }
        dj
    }

    #[test]
    fn spin_half_diagonal_is_cos_half_theta() {
        for theta in [0.0, 0.3, 1.2, 2.8, PI] {
            assert_abs_diff_eq!(
                wigner_d(1, 1, 1, theta).unwrap(),
                (theta / 2.0).cos(),
                epsilon = 1e-15
            );
            assert_abs_diff_eq!(
                wigner_d(1, -1, -1, theta).unwrap(),
                (theta / 2.0).cos(),
                epsilon = 1e-15
            );
        }
    }

    #[test]
    fn identity_rotation_is_kronecker_delta() {
        for two_j in [0, 1, 2, 5, 10] {
            for two_m in (-two_j..=two_j).step_by(2) {
                for two_n in (-two_j..=two_j).step_by(2) {
                    let expected = if two_m == two_n { 1.0 } else { 0.0 };
                    assert_eq!(wigner_d(two_j, two_m, two_n, 0.0).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn spin_one_quarter_turn_matches_closed_form() {
        // d^1_{0,1}(pi/2) = 1/sqrt(2) in this convention.
        assert_abs_diff_eq!(
            wigner_d(2, 0, 2, PI / 2.0).unwrap(),
            std::f64::consts::FRAC_1_SQRT_2,
            epsilon = 1e-15
        );
        // Full spin-1 d-matrix closed forms at a generic angle.
        let t = 0.9f64;
        let (c, s) = (t.cos(), t.sin());
        let cases = [
            ((2, 2), (1.0 + c) / 2.0),
            ((2, 0), -s / 2f64.sqrt()),
            ((2, -2), (1.0 - c) / 2.0),
            ((0, 2), s / 2f64.sqrt()),
            ((0, 0), c),
            ((-2, 2), (1.0 - c) / 2.0),
        ];
        for ((tm, tn), expected) in cases {
            assert_abs_diff_eq!(wigner_d(2, tm, tn, t).unwrap(), expected, epsilon = 1e-15);
        }
    }

    #[test]
    fn rejects_out_of_range_and_parity() {
        assert!(matches!(
            wigner_d(2, 4, 0, 0.5),
            Err(Error::MagneticIndexOutOfRange { .. })
        ));
        assert!(matches!(
            wigner_d(2, 1, 0, 0.5),
            Err(Error::MagneticIndexParity { .. })
        ));
        assert!(matches!(
            wigner_d(-2, 0, 0, 0.5),
            Err(Error::MagneticIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn rows_are_normalized() {
        for two_j in [1, 2, 5, 9, 14, 20] {
            for step in 0..8 {
                let theta = PI * (step as f64 + 0.5) / 8.0;
                for two_m in (-two_j..=two_j).step_by(2) {
                    let mut row_sum = 0.0;
                    for two_n in (-two_j..=two_j).step_by(2) {
                        row_sum += wigner_d(two_j, two_m, two_n, theta).unwrap().powi(2);
                    }
                    assert_abs_diff_eq!(row_sum, 1.0, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn sum_formula_agrees_with_recursion_up_to_j25() {
        let mut worst = 0.0f64;
        for two_j in [1, 2, 3, 7, 16, 29, 38, 50] {
            for theta in [0.4, 1.3, PI / 2.0, 2.2, 2.9] {
                for two_m in (-two_j..=two_j).step_by(2) {
                    for two_n in (-two_j..=two_j).step_by(2) {
                        let a = wigner_d(two_j, two_m, two_n, theta).unwrap();
                        let b = wigner_d_recursion(two_j, two_m, two_n, theta);
                        worst = worst.max((a - b).abs());
                    }
                }
            }
        }
        assert!(worst <= 1e-10, "worst sum/recursion disagreement {worst:.3e}");
    }

    #[test]
    fn matches_generator_exponential_convention() {
        // d^j(theta) must equal exp(-i theta Jy) in the ascending-m basis;
        // this pins the global sign convention, not just internal consistency.
        for two_j in [1, 2, 4, 7] {
            let j = two_j as f64 / 2.0;
            let dim = two_j as usize + 1;
            let mut jy = ComplexMatrix::zeros(dim, dim);
            for i in 0..dim {
                let m = i as f64 - j;
                if i + 1 < dim {
                    let cp = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
                    let v = jy.get(i + 1, i) + Complex64::new(0.0, -cp / 2.0);
                    jy.set(i + 1, i, v);
                }
                if i >= 1 {
                    let cm = (j * (j + 1.0) - m * (m - 1.0)).sqrt();
                    let v = jy.get(i - 1, i) + Complex64::new(0.0, cm / 2.0);
                    jy.set(i - 1, i, v);
                }
            }
            let theta = 1.234f64;
            let dec = jy.eigh().unwrap();
            let phases: Vec<Complex64> = dec
                .eigenvalues
                .iter()
                .map(|&w| Complex64::from_polar(1.0, -theta * w))
                .collect();
            let u = dec
                .eigenvectors
                .mul(&ComplexMatrix::diag_complex(&phases))
                .unwrap()
                .mul(&dec.eigenvectors.adjoint())
                .unwrap();
            for i1 in 0..dim {
                for i2 in 0..dim {
                    let expected = u.get(i1, i2);
                    let got = wigner_d(two_j, 2 * i1 as i32 - two_j, 2 * i2 as i32 - two_j, theta)
                        .unwrap();
                    assert_abs_diff_eq!(got, expected.re, epsilon = 1e-12);
                    assert_abs_diff_eq!(expected.im, 0.0, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn rotation_at_origin_is_identity() {
        let rep = RepDescriptor::su2(4).unwrap();
        let u = rotation_matrix(&rep, &GroupPoint::coset(0.0, 0.0)).unwrap();
        let err = u
            .sub(&ComplexMatrix::identity(rep.dim))
            .unwrap()
            .frobenius_norm();
        assert_eq!(err, 0.0);
    }

    #[test]
    fn rotation_is_unitary_for_random_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=10u32 {
            let rep = RepDescriptor::su2(n).unwrap();
            for _ in 0..4 {
                let g = GroupPoint::coset(
                    rng.random_range(0.0..PI),
                    rng.random_range(0.0..std::f64::consts::TAU),
                );
                let u = rotation_matrix(&rep, &g).unwrap();
                let gram = u.adjoint().mul(&u).unwrap();
                let err = gram
                    .sub(&ComplexMatrix::identity(rep.dim))
                    .unwrap()
                    .frobenius_norm();
                assert!(err <= 1e-12, "N={n}: unitarity defect {err}");
            }
        }
    }

    #[test]
    fn spin_half_pi_rotation_is_antidiagonal() {
        let rep = RepDescriptor::su2(1).unwrap();
        let u = rotation_matrix(&rep, &GroupPoint::coset(PI, 0.0)).unwrap();
        assert_abs_diff_eq!(u.get(0, 0).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(u.get(1, 1).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(u.get(0, 1).re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(u.get(1, 0).re, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn psi_subgroup_composes_additively() {
        for rep in [RepDescriptor::su2(3).unwrap(), RepDescriptor::u1(3).unwrap()] {
            let g1 = match rep.kind {
                RepKind::Su2Coset => GroupPoint::coset(0.0, 1.1),
                RepKind::U1 => GroupPoint::phase(1.1),
            };
            let g2 = g1.shifted_psi(2.4 - 1.1);
            let g12 = g1.shifted_psi(2.4);
            let u1 = rotation_matrix(&rep, &g1).unwrap();
            let u2 = rotation_matrix(&rep, &g2).unwrap();
            let u12 = rotation_matrix(&rep, &g12).unwrap();
            let err = u1.mul(&u2).unwrap().sub(&u12).unwrap().frobenius_norm();
            assert!(err <= 1e-12, "{:?}: composition defect {err}", rep.kind);
        }
    }

    #[test]
    fn missing_theta_is_rejected_for_coset() {
        let rep = RepDescriptor::su2(2).unwrap();
        assert!(matches!(
            rotation_matrix(&rep, &GroupPoint::phase(0.3)),
            Err(Error::MissingTheta)
        ));
    }

    #[test]
    fn u1_rotation_is_diagonal_phase() {
        let rep = RepDescriptor::u1(3).unwrap();
        let psi = 0.7;
        let u = rotation_matrix(&rep, &GroupPoint::phase(psi)).unwrap();
        for m in 0..rep.dim {
            let expected = Complex64::from_polar(1.0, m as f64 * psi);
            assert_abs_diff_eq!((u.get(m, m) - expected).norm(), 0.0, epsilon = 1e-15);
        }
    }
}
