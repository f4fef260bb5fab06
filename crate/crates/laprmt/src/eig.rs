//! Dense symmetric eigensolver: Householder tridiagonalization followed by
//! implicit-shift QL, the classic EISPACK `tred2`/`tql2` pair.
//!
//! Two modes: full decomposition (values and orthonormal vectors) and a
//! values-only mode that skips all transformation accumulation. The values-only
//! path costs roughly a third of the full one and is what the Monte Carlo
//! harnesses use when they only need spectra.
//!
//! Storage is column-major throughout; the hot inner loops of both stages walk
//! down single columns.

use crate::error::{Error, Result};
use crate::linalg::SymmetricMatrix;

pub(crate) const DEFAULT_MAX_SWEEPS: usize = 50;

/// Eigenvalues in ascending order, plus (optionally) the orthonormal
/// eigenvector matrix in column-major order: column `j` belongs to value `j`.
pub(crate) fn symmetric_eigen(
    a: &SymmetricMatrix,
    want_vectors: bool,
    max_sweeps: usize,
) -> Result<(Vec<f64>, Option<Vec<f64>>)> {
    let n = a.size();
    if n == 0 {
        return Ok((Vec::new(), want_vectors.then(Vec::new)));
    }
    // Symmetric input, so the row-major source doubles as column-major.
    let mut v = a.data().to_vec();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tridiagonalize(n, &mut v, &mut d, &mut e, want_vectors);
    ql_implicit(
        n,
        &mut d,
        &mut e,
        want_vectors.then_some((v.as_mut_slice(), n)),
        max_sweeps,
    )?;
    sort_ascending(n, &mut d, want_vectors.then_some(&mut v));
    Ok((d, want_vectors.then_some(v)))
}

/// QL on an explicit tridiagonal: `d` is the diagonal, `e[k]` the coupling
/// between rows `k-1` and `k` (`e[0]` ignored). When `first_row` is given it
/// is rotated along, so seeding it with (1, 0, ..., 0) yields the first
/// component of every eigenvector, which is all Gauss quadrature needs.
/// Output is unsorted.
pub(crate) fn ql_tridiagonal(
    d: &mut [f64],
    e: &mut [f64],
    first_row: Option<&mut [f64]>,
    max_sweeps: usize,
) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    ql_implicit(n, d, e, first_row.map(|z| (z, 1)), max_sweeps)
}

#[inline(always)]
fn at(v: &[f64], n: usize, r: usize, c: usize) -> f64 {
    v[r + c * n]
}

/// Householder reduction to tridiagonal form. On exit `d` holds the diagonal
/// and `e` the subdiagonal (in `e[1..]`). With `accumulate` the orthogonal
/// similarity transform is accumulated into `v`.
fn tridiagonalize(n: usize, v: &mut [f64], d: &mut [f64], e: &mut [f64], accumulate: bool) {
    for j in 0..n {
        d[j] = at(v, n, n - 1, j);
    }

    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for item in d.iter().take(i) {
            scale += item.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = at(v, n, i - 1, j);
                v[i + j * n] = 0.0;
                v[j + i * n] = 0.0;
            }
        } else {
            for item in d.iter_mut().take(i) {
                *item /= scale;
                h += *item * *item;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for item in e.iter_mut().take(i) {
                *item = 0.0;
            }

            for j in 0..i {
                f = d[j];
                v[j + i * n] = f;
                g = e[j] + at(v, n, j, j) * f;
                let col = &v[j * n..j * n + i];
                for k in (j + 1)..i {
                    g += col[k] * d[k];
                    e[k] += col[k] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                let col = &mut v[j * n..j * n + i];
                for k in j..i {
                    col[k] -= f * e[k] + g * d[k];
                }
                d[j] = at(v, n, i - 1, j);
                v[i + j * n] = 0.0;
            }
        }
        d[i] = h;
    }

    if accumulate {
        for i in 0..(n - 1) {
            v[(n - 1) + i * n] = at(v, n, i, i);
            v[i + i * n] = 1.0;
            let h = d[i + 1];
            if h != 0.0 {
                for k in 0..=i {
                    d[k] = at(v, n, k, i + 1) / h;
                }
                for j in 0..=i {
                    let mut g = 0.0;
                    for k in 0..=i {
                        g += at(v, n, k, i + 1) * at(v, n, k, j);
                    }
                    for k in 0..=i {
                        v[k + j * n] -= g * d[k];
                    }
                }
            }
            for k in 0..=i {
                v[k + (i + 1) * n] = 0.0;
            }
        }
        for j in 0..n {
            d[j] = at(v, n, n - 1, j);
            v[(n - 1) + j * n] = 0.0;
        }
        v[(n - 1) + (n - 1) * n] = 1.0;
    } else {
        // Reflectors act only on indices below the pivot, so each reduced
        // diagonal entry stays at (j, j); d currently holds Householder
        // scalars and must be replaced.
        for j in 0..n {
            d[j] = at(v, n, j, j);
        }
    }
    e[0] = 0.0;
}

/// Implicit-shift QL on a tridiagonal matrix. `d` holds the diagonal, `e[1..]`
/// the subdiagonal; with `v = (data, rows)` the rotations are applied to the
/// columns of a `rows x n` column-major accumulator.
fn ql_implicit(
    n: usize,
    d: &mut [f64],
    e: &mut [f64],
    mut v: Option<(&mut [f64], usize)>,
    max_sweeps: usize,
) -> Result<()> {
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0_f64;
    let mut tst1 = 0.0_f64;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0usize;
            loop {
                iter += 1;
                if iter > max_sweeps {
                    return Err(Error::NonConvergence(format!(
                        "eigenvalue {l} did not settle after {max_sweeps} QL sweeps"
                    )));
                }

                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0_f64;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0_f64;
                let mut s2 = 0.0_f64;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    if let Some((data, rows)) = v.as_mut() {
                        let rows = *rows;
                        let (left, right) = data[i * rows..(i + 2) * rows].split_at_mut(rows);
                        for (a, b) in left.iter_mut().zip(right.iter_mut()) {
                            let h = *b;
                            *b = s * *a + c * h;
                            *a = c * *a - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

fn sort_ascending(n: usize, d: &mut [f64], mut v: Option<&mut [f64]>) {
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        let mut p = d[i];
        for j in (i + 1)..n {
            if d[j] < p {
                k = j;
                p = d[j];
            }
        }
        if k != i {
            d.swap(k, i);
            if let Some(v) = v.as_deref_mut() {
                for r in 0..n {
                    v.swap(r + i * n, r + k * n);
                }
            }
        }
    }
}
