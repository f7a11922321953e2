//! Dense complex linear algebra on 2x2 and 4x4 operators.
//!
//! Everything in this crate lives in dimension 2 (one qubit) or 4 (two
//! qubits), so the matrix type is a small fixed-dimension dense container
//! with exactly the operations the decision-theory layers need: products,
//! adjoints, Kronecker products, and a Hermitian eigensolver (closed form
//! for 2x2, cyclic Jacobi for 4x4).

use std::fmt;
use std::ops::{Add, Mul, Sub};

pub use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default numerical tolerance used wherever a tolerance is not stated.
pub const DEFAULT_TOL: f64 = 1e-10;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Pauli generator axis, indexed 1..=3 as sigma_1, sigma_2, sigma_3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    /// Maps the conventional index k in {1,2,3} to an axis.
    pub fn from_index(k: u8) -> Result<Self> {
        match k {
            1 => Ok(Axis::X),
            2 => Ok(Axis::Y),
            3 => Ok(Axis::Z),
            _ => Err(Error::Domain(format!(
                "generator axis must be 1, 2 or 3, got {k}"
            ))),
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Axis::X => 1,
            Axis::Y => 2,
            Axis::Z => 3,
        }
    }
}

/// Square complex matrix of dimension 2 or 4, row-major storage.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix(dim={})", self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| format!("{:+.6}{:+.6}i", self.get(i, j).re, self.get(i, j).im))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl ComplexMatrix {
    /// Builds a matrix from row-major entries. The dimension must be 2 or 4
    /// and every entry must be finite.
    pub fn new(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if dim != 2 && dim != 4 {
            return Err(Error::Dimension(format!(
                "matrix dimension must be 2 or 4, got {dim}"
            )));
        }
        if data.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "expected {} entries for dim {dim}, got {}",
                dim * dim,
                data.len()
            )));
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState(
                "matrix entries must be finite".to_string(),
            ));
        }
        Ok(Self { dim, data })
    }

    /// 2x2 matrix from real/imag pairs, row major.
    pub fn from_rows2(rows: [[Complex64; 2]; 2]) -> Self {
        let data = rows.iter().flatten().copied().collect();
        Self { dim: 2, data }
    }

    pub fn zeros(dim: usize) -> Result<Self> {
        Self::new(dim, vec![Complex64::ZERO; dim * dim])
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m.set(i, i, Complex64::ONE);
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: Complex64) {
        self.data[i * self.dim + j] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self {
            dim: self.dim,
            data: vec![Complex64::ZERO; self.data.len()],
        };
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, self.get(j, i).conj());
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn scale(&self, factor: f64) -> Self {
        self.scale_complex(c(factor, 0.0))
    }

    pub fn scale_complex(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// Largest entrywise deviation from `other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff dimension mismatch");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Entrywise Hermiticity test, relative to the matrix scale.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        let scale = self.max_abs_entry().max(1.0);
        for i in 0..self.dim {
            for j in i..self.dim {
                if (self.get(i, j) - self.get(j, i).conj()).norm() > tol * scale {
                    return false;
                }
            }
        }
        true
    }

    /// Replaces the matrix by its Hermitian part (M + M†)/2. The result is
    /// exactly Hermitian entrywise, which keeps downstream spectral checks
    /// scale independent.
    pub fn hermitian_part(&self) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            out.set(i, i, c(self.get(i, i).re, 0.0));
            for j in (i + 1)..self.dim {
                let avg = (self.get(i, j) + self.get(j, i).conj()) * c(0.5, 0.0);
                out.set(i, j, avg);
                out.set(j, i, avg.conj());
            }
        }
        out
    }

    /// Whether U†U = I to the given tolerance.
    pub fn is_unitary(&self, tol: f64) -> bool {
        let product = &self.adjoint() * self;
        let identity = Self::identity(self.dim).expect("valid dim");
        product.max_abs_diff(&identity) <= tol
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "mul_vec dimension mismatch");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// Rank-1 projector |v⟩⟨v| onto a (not necessarily normalized) vector.
    pub fn outer(v: &[Complex64]) -> Result<Self> {
        let dim = v.len();
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            for j in 0..dim {
                m.set(i, j, v[i] * v[j].conj());
            }
        }
        Ok(m)
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix addition dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix subtraction dimension mismatch");
        ComplexMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = ComplexMatrix {
            dim: n,
            data: vec![Complex64::ZERO; n * n],
        };
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    let cur = out.get(i, j);
                    out.set(i, j, cur + a * rhs.get(k, j));
                }
            }
        }
        out
    }
}

/// 2x2 identity.
pub fn identity2() -> ComplexMatrix {
    ComplexMatrix::identity(2).expect("dim 2 is valid")
}

/// 4x4 identity.
pub fn identity4() -> ComplexMatrix {
    ComplexMatrix::identity(4).expect("dim 4 is valid")
}

/// Pauli matrix for the given generator axis.
pub fn pauli(axis: Axis) -> ComplexMatrix {
    let (a, b, cc, d) = match axis {
        Axis::X => (c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)),
        Axis::Y => (c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)),
        Axis::Z => (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)),
    };
    ComplexMatrix::from_rows2([[a, b], [cc, d]])
}

/// Kronecker product of two 2x2 matrices. The first factor acts on the
/// first qubit, with computational basis ordered |00>, |01>, |10>, |11>.
pub fn tensor(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if a.dim() != 2 || b.dim() != 2 {
        return Err(Error::Dimension(format!(
            "tensor expects two 2x2 factors, got {}x{} and {}x{}",
            a.dim(),
            a.dim(),
            b.dim(),
            b.dim()
        )));
    }
    let mut out = ComplexMatrix::zeros(4)?;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.set(2 * i + k, 2 * j + l, a.get(i, j) * b.get(k, l));
                }
            }
        }
    }
    Ok(out)
}

/// Eigendecomposition of a Hermitian matrix.
///
/// Eigenvalues are real and sorted descending; eigenvectors are orthonormal
/// and listed in the same order.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vec<Complex64>>,
}

impl EigenDecomposition {
    /// Rebuilds sum_k lambda_k |v_k><v_k|; used by reconstruction tests.
    pub fn reconstruct(&self) -> Result<ComplexMatrix> {
        let dim = self.eigenvectors[0].len();
        let mut m = ComplexMatrix::zeros(dim)?;
        for (value, vector) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            m = &m + &ComplexMatrix::outer(vector)?.scale(*value);
        }
        Ok(m)
    }
}

const JACOBI_OFFDIAG_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Spectral decomposition of a Hermitian 2x2 or 4x4 matrix.
///
/// 2x2 inputs are solved in closed form (with the small-magnitude root
/// recovered from the determinant, which stays accurate when the two
/// eigenvalues differ by many orders of magnitude). 4x4 inputs use cyclic
/// complex Jacobi rotations iterated until the off-diagonal Frobenius norm
/// falls below 1e-13 relative to the matrix scale.
pub fn eig_hermitian(m: &ComplexMatrix) -> Result<EigenDecomposition> {
    if !m.is_hermitian(DEFAULT_TOL) {
        return Err(Error::Contract(
            "eig_hermitian requires a Hermitian matrix".to_string(),
        ));
    }
    let h = m.hermitian_part();
    let mut decomposition = match h.dim() {
        2 => eig2(&h),
        4 => eig4(&h)?,
        _ => unreachable!("dimensions restricted at construction"),
    };
    sort_descending(&mut decomposition);
    Ok(decomposition)
}

fn sort_descending(d: &mut EigenDecomposition) {
    let mut order: Vec<usize> = (0..d.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| d.eigenvalues[b].total_cmp(&d.eigenvalues[a]));
    d.eigenvalues = order.iter().map(|&k| d.eigenvalues[k]).collect();
    d.eigenvectors = order.iter().map(|&k| d.eigenvectors[k].clone()).collect();
}

fn eig2(h: &ComplexMatrix) -> EigenDecomposition {
    let a = h.get(0, 0).re;
    let d = h.get(1, 1).re;
    let b = h.get(0, 1);
    let mean = 0.5 * (a + d);
    let half_gap = 0.5 * (a - d);
    let disc = (half_gap * half_gap + b.norm_sqr()).sqrt();
    // The root on the same side as `mean` is computed directly; the other
    // one via the determinant to avoid cancellation.
    let det = a * d - b.norm_sqr();
    let (hi, lo) = if disc == 0.0 {
        (mean, mean)
    } else if mean >= 0.0 {
        let hi = mean + disc;
        (hi, if hi != 0.0 { det / hi } else { mean - disc })
    } else {
        let lo = mean - disc;
        (if lo != 0.0 { det / lo } else { mean + disc }, lo)
    };

    let eigenvector_for = |lambda: f64| -> Vec<Complex64> {
        // (H - lambda I) v = 0; pick the better-conditioned row.
        let r0 = (a - lambda).abs().max(b.norm());
        let r1 = (d - lambda).abs().max(b.norm());
        let v = if b.norm() <= f64::EPSILON * (r0 + r1).max(1.0) {
            // Diagonal matrix: basis vectors.
            if (a - lambda).abs() <= (d - lambda).abs() {
                vec![Complex64::ONE, Complex64::ZERO]
            } else {
                vec![Complex64::ZERO, Complex64::ONE]
            }
        } else if r0 >= r1 {
            vec![b, c(lambda - a, 0.0)]
        } else {
            vec![c(lambda - d, 0.0), b.conj()]
        };
        normalize(v)
    };

    let v_hi = eigenvector_for(hi);
    // Orthogonal complement of (x, y) in C^2 is (-conj(y), conj(x)).
    let v_lo = vec![-v_hi[1].conj(), v_hi[0].conj()];
    EigenDecomposition {
        eigenvalues: vec![hi, lo],
        eigenvectors: vec![v_hi, v_lo],
    }
}

fn normalize(v: Vec<Complex64>) -> Vec<Complex64> {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.into_iter().map(|z| z / norm).collect()
}

fn offdiag_norm(h: &ComplexMatrix) -> f64 {
    let n = h.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += h.get(i, j).norm_sqr();
            }
        }
    }
    sum.sqrt()
}

fn eig4(h: &ComplexMatrix) -> Result<EigenDecomposition> {
    let n = 4;
    let mut a = h.clone();
    let mut v = identity4();
    let scale = h.frobenius_norm().max(1.0);

    for _ in 0..JACOBI_MAX_SWEEPS {
        if offdiag_norm(&a) <= JACOBI_OFFDIAG_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                if apq.norm() <= f64::EPSILON * scale {
                    continue;
                }
                // Phase that makes the pivot real, then a real Jacobi angle.
                let phase = apq / apq.norm();
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let tau = (app - aqq) / (2.0 * apq.norm());
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cos = 1.0 / (1.0 + t * t).sqrt();
                let sin = t * cos;
                // Column rotation U: U[pp]=cos, U[pq]=-sin*phase,
                // U[qp]=sin*conj(phase), U[qq]=cos; A <- U† A U, V <- V U.
                let upq = -phase * sin;
                let uqp = phase.conj() * sin;
                for r in 0..n {
                    let arp = a.get(r, p);
                    let arq = a.get(r, q);
                    a.set(r, p, arp * cos + arq * uqp);
                    a.set(r, q, arp * upq + arq * cos);
                }
                for r in 0..n {
                    let apr = a.get(p, r);
                    let aqr = a.get(q, r);
                    a.set(p, r, apr * cos + aqr * uqp.conj());
                    a.set(q, r, apr * upq.conj() + aqr * cos);
                }
                // Clean the pivot pair exactly; rounding noise otherwise
                // leaks into the convergence test.
                a.set(p, q, Complex64::ZERO);
                a.set(q, p, Complex64::ZERO);
                a.set(p, p, c(a.get(p, p).re, 0.0));
                a.set(q, q, c(a.get(q, q).re, 0.0));
                for r in 0..n {
                    let vrp = v.get(r, p);
                    let vrq = v.get(r, q);
                    v.set(r, p, vrp * cos + vrq * uqp);
                    v.set(r, q, vrp * upq + vrq * cos);
                }
            }
        }
    }

    if offdiag_norm(&a) > JACOBI_OFFDIAG_TOL * scale {
        return Err(Error::Contract(format!(
            "Jacobi iteration failed to converge: off-diagonal norm {:.3e}",
            offdiag_norm(&a)
        )));
    }

    let eigenvalues: Vec<f64> = (0..n).map(|i| a.get(i, i).re).collect();
    let eigenvectors: Vec<Vec<Complex64>> = (0..n)
        .map(|k| (0..n).map(|r| v.get(r, k)).collect())
        .collect();
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Trace norm of a Hermitian operator: the sum of absolute eigenvalues.
pub fn trace_norm(m: &ComplexMatrix) -> Result<f64> {
    let decomposition = eig_hermitian(m).map_err(|_| {
        Error::Contract("trace_norm requires a Hermitian matrix".to_string())
    })?;
    Ok(decomposition.eigenvalues.iter().map(|x| x.abs()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn re(x: f64) -> Complex64 {
        c(x, 0.0)
    }

    #[test]
    fn rejects_unsupported_dimensions() {
        assert!(ComplexMatrix::new(3, vec![Complex64::ZERO; 9]).is_err());
        assert!(ComplexMatrix::new(2, vec![Complex64::ZERO; 3]).is_err());
        assert!(ComplexMatrix::new(2, vec![c(f64::NAN, 0.0); 4]).is_err());
    }

    #[test]
    fn pauli_algebra() {
        let x = pauli(Axis::X);
        let y = pauli(Axis::Y);
        let z = pauli(Axis::Z);
        // sigma_1 sigma_2 = i sigma_3
        let xy = &x * &y;
        assert!(xy.max_abs_diff(&z.scale_complex(c(0.0, 1.0))) < 1e-15);
        for m in [&x, &y, &z] {
            assert!((m * m).max_abs_diff(&identity2()) < 1e-15);
            assert!(m.is_hermitian(1e-15));
        }
    }

    #[test]
    fn tensor_identity_and_zz() {
        let id = tensor(&identity2(), &identity2()).unwrap();
        assert!(id.max_abs_diff(&identity4()) < 1e-15);

        let zz = tensor(&pauli(Axis::Z), &pauli(Axis::Z)).unwrap();
        let expected: Vec<f64> = vec![1.0, -1.0, -1.0, 1.0];
        for (i, want) in expected.iter().enumerate() {
            assert_abs_diff_eq!(zz.get(i, i).re, want, epsilon = 1e-15);
        }
        assert!(tensor(&identity4(), &identity2()).is_err());
    }

    #[test]
    fn eig_sigma_z() {
        let d = eig_hermitian(&pauli(Axis::Z)).unwrap();
        assert_abs_diff_eq!(d.eigenvalues[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(d.eigenvalues[1], -1.0, epsilon = 1e-14);
        // Top eigenvector is |0> up to phase.
        assert_abs_diff_eq!(d.eigenvectors[0][0].norm(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn eig_tensor_xx() {
        let xx = tensor(&pauli(Axis::X), &pauli(Axis::X)).unwrap();
        let d = eig_hermitian(&xx).unwrap();
        let expected = [1.0, 1.0, -1.0, -1.0];
        for (got, want) in d.eigenvalues.iter().zip(expected) {
            assert_abs_diff_eq!(*got, want, epsilon = 1e-12);
        }
        let rebuilt = d.reconstruct().unwrap();
        assert!(rebuilt.max_abs_diff(&xx) < 1e-12);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let mut m = identity2();
        m.set(0, 1, c(1.0, 0.0));
        assert!(matches!(eig_hermitian(&m), Err(Error::Contract(_))));
    }

    #[test]
    fn eig2_is_stable_at_large_scale_separation() {
        // One eigenvalue near -1e12, the other near 0.25; naive subtraction
        // would lose the small root entirely.
        let gamma = 1e12;
        let m = ComplexMatrix::from_rows2([
            [re(0.75 - gamma), re(0.25 * 3.0f64.sqrt())],
            [re(0.25 * 3.0f64.sqrt()), re(0.25)],
        ]);
        let d = eig_hermitian(&m).unwrap();
        // det = 0.75*0.25 - gamma*0.25 - 3/16 = -0.25*gamma, trace ~ -gamma
        // so the small root tends to 0.25.
        assert_abs_diff_eq!(d.eigenvalues[0], 0.25, epsilon = 1e-9);
    }

    #[test]
    fn trace_norm_basics() {
        assert_abs_diff_eq!(trace_norm(&pauli(Axis::Z)).unwrap(), 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(
            trace_norm(&ComplexMatrix::zeros(2).unwrap()).unwrap(),
            0.0,
            epsilon = 1e-14
        );
        let mut m = identity2();
        m.set(1, 0, c(0.5, 0.0));
        assert!(trace_norm(&m).is_err());
    }

    #[test]
    fn axis_from_index() {
        assert_eq!(Axis::from_index(1).unwrap(), Axis::X);
        assert_eq!(Axis::from_index(3).unwrap(), Axis::Z);
        assert!(Axis::from_index(0).is_err());
        assert!(Axis::from_index(4).is_err());
    }
}
