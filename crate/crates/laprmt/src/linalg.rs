//! Dense matrix plumbing shared across the crate.
//!
//! Real symmetric matrices get their own storage type; complex dense work
//! (resolvents) runs on `nalgebra` matrices of `Complex<f64>`.

use crate::error::{Error, Result};

pub type Complex64 = num_complex::Complex<f64>;
pub type CMatrix = nalgebra::DMatrix<Complex64>;

/// Dense real symmetric matrix, full row-major storage.
///
/// Symmetry is enforced by construction: every writer mirrors across the
/// diagonal, and [`SymmetricMatrix::from_raw`] validates its input.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Build from a generator invoked once per unordered index pair (`i <= j`).
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                m.data[i * n + j] = v;
                m.data[j * n + i] = v;
            }
        }
        m
    }

    /// Adopt a full row-major buffer, rejecting asymmetric input.
    pub fn from_raw(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {n}x{n} matrix, got {}",
                n * n,
                data.len()
            )));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if data[i * n + j].to_bits() != data[j * n + i].to_bits() {
                    return Err(Error::InvalidParameter(format!(
                        "entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
            }
        }
        Ok(Self { n, data })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Set the symmetric pair `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: f64) -> Result<()> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch(format!(
                "cannot add {}x{} into {}x{}",
                other.n, other.n, self.n, self.n
            )));
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += c * b;
        }
        Ok(())
    }

    pub fn scale(&mut self, c: f64) {
        for a in &mut self.data {
            *a *= c;
        }
    }

    /// `self += c * I`.
    pub fn add_diag(&mut self, c: f64) {
        for i in 0..self.n {
            self.data[i * self.n + i] += c;
        }
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.data[i * self.n + i]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Largest absolute row sum, i.e. `max_i |sum_j A_ij|`.
    ///
    /// For Laplacian-type matrices this measures the defect of the structural
    /// null vector and should sit at rounding level.
    pub fn max_abs_row_sum(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().sum::<f64>().abs())
            .fold(0.0, f64::max)
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    /// `A - z I` as a dense complex matrix, ready for LU.
    pub fn shifted_complex(&self, z: Complex64) -> CMatrix {
        let n = self.n;
        CMatrix::from_fn(n, n, |i, j| {
            let mut v = Complex64::new(self.data[i * n + j], 0.0);
            if i == j {
                v -= z;
            }
            v
        })
    }
}

/// Invert a dense complex matrix by LU with partial pivoting.
pub fn complex_inverse(a: CMatrix) -> Result<CMatrix> {
    let n = a.nrows();
    a.lu()
        .try_inverse()
        .ok_or_else(|| Error::NonConvergence(format!("{n}x{n} complex matrix is singular")))
}

/// Maximum absolute entry of a complex matrix.
pub fn max_abs_entry(a: &CMatrix) -> f64 {
    a.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Maximum absolute entrywise difference of two complex matrices.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
