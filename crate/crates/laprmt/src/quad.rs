//! Gauss-Hermite quadrature in standard-normal form.
//!
//! Rules are built by the Golub-Welsch method: eigenvalues of the symmetric
//! Jacobi matrix give the nodes, squared first eigenvector components give the
//! weights. Nodes and weights are expressed against the standard normal
//! density, so `sum_i w_i f(x_i)` approximates `E[f(X)]` for `X ~ N(0, 1)`,
//! exactly for polynomials of degree below `2n`.

use crate::eig;
use crate::error::{Error, Result};

/// A Gauss-Hermite rule normalized to the standard Gaussian measure.
///
/// Nodes are ascending and exactly symmetric about zero (the middle node of an
/// odd-sized rule is exactly zero); weights are positive and sum to one.
#[derive(Debug, Clone)]
pub struct GaussHermite {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussHermite {
    /// Builds an `n`-point rule.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "quadrature rule needs at least one node".into(),
            ));
        }
        // Jacobi matrix for the Hermite weight exp(-t^2): zero diagonal,
        // coupling sqrt(k/2) between rows k-1 and k.
        let mut d = vec![0.0; n];
        let mut e: Vec<f64> = (0..n).map(|k| (k as f64 / 2.0).sqrt()).collect();
        let mut z = vec![0.0; n];
        z[0] = 1.0;
        eig::ql_tridiagonal(&mut d, &mut e, Some(&mut z), eig::DEFAULT_MAX_SWEEPS)?;

        // Hermite nodes t relate to standard-normal nodes by x = sqrt(2) t,
        // and the normalized weight is exactly the squared first component.
        let mut pairs: Vec<(f64, f64)> = d
            .iter()
            .zip(&z)
            .map(|(&t, &z0)| (std::f64::consts::SQRT_2 * t, z0 * z0))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut nodes: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let mut weights: Vec<f64> = pairs.iter().map(|p| p.1).collect();

        // Enforce the symmetry the rule has in exact arithmetic.
        for i in 0..n / 2 {
            let j = n - 1 - i;
            let x = 0.5 * (nodes[j] - nodes[i]);
            nodes[j] = x;
            nodes[i] = -x;
            let w = 0.5 * (weights[i] + weights[j]);
            weights[i] = w;
            weights[j] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }

        Ok(Self { nodes, weights })
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Node/weight pairs in ascending node order.
    pub fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// Approximates `E[f(X)]` for standard normal `X`.
    pub fn expect(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.pairs().map(|(x, w)| w * f(x)).sum()
    }
}
