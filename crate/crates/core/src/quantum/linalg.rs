//! Small dense complex matrices, a Hermitian Jacobi eigensolver and
//! determinants by Gaussian elimination.

use std::fmt;

use num_complex::Complex64;

use crate::error::{check_len, Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        ComplexMatrix {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(dim: usize, mut entry: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(entry(i, j));
            }
        }
        ComplexMatrix { dim, data }
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            check_len(dim, row.len())?;
            data.extend(row);
        }
        Ok(ComplexMatrix { dim, data })
    }

    pub fn diagonal(values: &[Complex64]) -> Self {
        Self::from_fn(values.len(), |i, j| if i == j { values[i] } else { ZERO })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self.get(i, j)).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        ComplexMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-ONE))
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::identity(self.dim), |acc, _| acc.matmul(self))
    }

    /// Kronecker product, `self` on the left (most significant index).
    pub fn kron(&self, other: &Self) -> Self {
        let m = other.dim;
        Self::from_fn(self.dim * m, |i, j| {
            self.get(i / m, j / m) * other.get(i % m, j % m)
        })
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        self.data
            .chunks(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `(M + M†) / 2`.
    pub fn hermitian_part(&self) -> Self {
        self.add(&self.adjoint()).scale(Complex64::new(0.5, 0.0))
    }

    /// Largest entrywise modulus of `M - M†`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Induced ∞-norm (max absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        self.data
            .chunks(self.dim.max(1))
            .map(|row| row.iter().map(|x| x.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.adjoint()
            .matmul(self)
            .max_abs_diff(&Self::identity(self.dim))
            <= tol
    }

    /// Determinant by LU elimination with partial pivoting.
    pub fn determinant(&self) -> Complex64 {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut det = ONE;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&x, &y| a[x * n + col].norm().total_cmp(&a[y * n + col].norm()))
                .unwrap();
            let p = a[pivot * n + col];
            if p == ZERO {
                return ZERO;
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            det *= p;
            for row in col + 1..n {
                let factor = a[row * n + col] / p;
                if factor == ZERO {
                    continue;
                }
                for j in col..n {
                    let v = a[col * n + j];
                    a[row * n + j] -= factor * v;
                }
            }
        }
        det
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim, self.dim)?;
        for row in self.data.chunks(self.dim.max(1)) {
            let cells: Vec<String> = row
                .iter()
                .map(|z| format!("{:+.6}{:+.6}i", z.re, z.im))
                .collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Spectrum of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Column `j` is the unit eigenvector for `values[j]`.
    pub vectors: ComplexMatrix,
    pub sweeps: usize,
}

impl HermitianEigen {
    pub fn vector(&self, j: usize) -> Vec<Complex64> {
        self.vectors.column(j)
    }
}

const MAX_SWEEPS: usize = 100;
const HERMITIAN_TOL: f64 = 1e-10;

/// Cyclic Jacobi rotations on a Hermitian matrix.
///
/// Stops once the off-diagonal Frobenius norm drops below `1e-12 ‖M‖_F`
/// or after 100 sweeps.
pub fn hermitian_eigs(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let defect = m.hermitian_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    let n = m.dim;
    // symmetrize away the tolerated defect
    let mut a = m.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let threshold = 1e-12 * m.frobenius_norm().max(f64::MIN_POSITIVE);

    let off_norm = |a: &ComplexMatrix| -> f64 {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a.get(i, j).norm_sqr();
                }
            }
        }
        s.sqrt()
    };

    let mut sweeps = 0;
    while sweeps < MAX_SWEEPS && off_norm(&a) > threshold {
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a.get(p, q);
                let mag = apq.norm();
                if mag <= f64::MIN_POSITIVE {
                    continue;
                }
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                // Phase e^{iφ} = apq/|apq| turns the pivot real, then a real
                // rotation annihilates it.
                let phase = apq / mag;
                let tau = (aqq - app) / (2.0 * mag);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let t = if tau == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // G acts on columns p, q:  G_pp = c, G_pq = s,
                // G_qp = -s·conj(phase), G_qq = c·conj(phase)
                let gpp = Complex64::new(c, 0.0);
                let gpq = Complex64::new(s, 0.0);
                let gqp = -phase.conj() * s;
                let gqq = phase.conj() * c;

                // A ← A G
                for k in 0..n {
                    let akp = a.get(k, p);
                    let akq = a.get(k, q);
                    a.set(k, p, akp * gpp + akq * gqp);
                    a.set(k, q, akp * gpq + akq * gqq);
                }
                // A ← G† A
                for k in 0..n {
                    let apk = a.get(p, k);
                    let aqk = a.get(q, k);
                    a.set(p, k, gpp.conj() * apk + gqp.conj() * aqk);
                    a.set(q, k, gpq.conj() * apk + gqq.conj() * aqk);
                }
                a.set(p, q, ZERO);
                a.set(q, p, ZERO);
                a.set(p, p, Complex64::new(a.get(p, p).re, 0.0));
                a.set(q, q, Complex64::new(a.get(q, q).re, 0.0));
                // V ← V G
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, vkp * gpp + vkq * gqp);
                    v.set(k, q, vkp * gpq + vkq * gqq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a.get(y, y).re.total_cmp(&a.get(x, x).re));
    let values = order.iter().map(|&j| a.get(j, j).re).collect();
    let vectors = ComplexMatrix::from_fn(n, |i, j| v.get(i, order[j]));
    Ok(HermitianEigen {
        values,
        vectors,
        sweeps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn check_decomposition(m: &ComplexMatrix, eig: &HermitianEigen) {
        let n = m.dim();
        let scale = m.frobenius_norm().max(1.0);
        for j in 0..n {
            let v = eig.vector(j);
            let mv = m.apply(&v);
            let resid: f64 = mv
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - b * eig.values[j]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(resid <= 1e-8 * scale, "residual {resid}");
        }
        let vh_v = eig.vectors.adjoint().matmul(&eig.vectors);
        assert!(vh_v.max_abs_diff(&ComplexMatrix::identity(n)) < 1e-8);
        let lambda: Vec<Complex64> = eig.values.iter().map(|&x| c(x, 0.0)).collect();
        let rebuilt = eig
            .vectors
            .matmul(&ComplexMatrix::diagonal(&lambda))
            .matmul(&eig.vectors.adjoint());
        assert!(rebuilt.sub(m).frobenius_norm() <= 1e-8 * scale);
    }

    #[test]
    fn identity_spectrum() {
        let eig = hermitian_eigs(&ComplexMatrix::identity(4)).unwrap();
        assert_eq!(eig.values, vec![1.0; 4]);
    }

    #[test]
    fn diagonal_spectrum_sorted() {
        let m = ComplexMatrix::diagonal(&[c(-1.0, 0.0), c(1.0, 0.0)]);
        let eig = hermitian_eigs(&m).unwrap();
        assert_eq!(eig.values, vec![1.0, -1.0]);
    }

    #[test]
    fn pauli_y_spectrum() {
        let m = ComplexMatrix::from_rows(vec![
            vec![c(0.0, 0.0), c(0.0, -1.0)],
            vec![c(0.0, 1.0), c(0.0, 0.0)],
        ])
        .unwrap();
        let eig = hermitian_eigs(&m).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-14);
        assert!((eig.values[1] + 1.0).abs() < 1e-14);
        check_decomposition(&m, &eig);
    }

    #[test]
    fn circulant_spectrum() {
        // -(X + X^2) for d = 3 has spectrum {1, 1, -2}
        let m = ComplexMatrix::from_fn(3, |i, j| if i == j { c(0.0, 0.0) } else { c(-1.0, 0.0) });
        let eig = hermitian_eigs(&m).unwrap();
        assert!((eig.values[0] - 1.0).abs() < 1e-12);
        assert!((eig.values[1] - 1.0).abs() < 1e-12);
        assert!((eig.values[2] + 2.0).abs() < 1e-12);
        check_decomposition(&m, &eig);
    }

    #[test]
    fn random_hermitian_reconstructs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [1, 2, 5, 9, 27] {
            let raw = ComplexMatrix::from_fn(n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
            let m = raw.hermitian_part();
            let eig = hermitian_eigs(&m).unwrap();
            check_decomposition(&m, &eig);
            assert!(eig.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = ComplexMatrix::from_rows(vec![
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ])
        .unwrap();
        assert!(matches!(hermitian_eigs(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn determinant_small_cases() {
        let m = ComplexMatrix::from_rows(vec![
            vec![c(1.0, 0.0), c(2.0, 0.0)],
            vec![c(3.0, 0.0), c(4.0, 0.0)],
        ])
        .unwrap();
        assert!((m.determinant() - c(-2.0, 0.0)).norm() < 1e-14);
        let diag = ComplexMatrix::diagonal(&[c(0.0, 1.0), c(2.0, 0.0), c(0.0, -3.0)]);
        assert!((diag.determinant() - c(6.0, 0.0)).norm() < 1e-14);
        // permutation matrix of a 3-cycle has determinant +1
        let p = ComplexMatrix::from_fn(3, |i, j| if i == (j + 1) % 3 { ONE } else { ZERO });
        assert!((p.determinant() - ONE).norm() < 1e-14);
    }

    #[test]
    fn kron_orders_left_factor_major() {
        let a = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let b = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(10.0, 0.0)]);
        let k = a.kron(&b);
        let diag: Vec<f64> = (0..4).map(|i| k.get(i, i).re).collect();
        assert_eq!(diag, vec![1.0, 10.0, 2.0, 20.0]);
    }
}
