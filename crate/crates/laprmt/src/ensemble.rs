//! Matrix model construction and sampling.
//!
//! Implements every model the lab studies: the raw sparse-graph Laplacian, its
//! centered and rescaled form, general Laplacian-type matrices with pluggable
//! entry laws, the Gaussian toy model, GOE, the deterministic projection basis
//! of the trivial direction's orthogonal complement, and the Gaussian
//! decomposition of the projected toy model.
//!
//! All samplers are pure functions of `(spec, seed)`: entries are drawn from
//! per-row counter-derived streams, so results are reproducible and
//! independent of sampling order or thread count.

use std::sync::Arc;

use rand::Rng;
use rand_distr::{Distribution, Geometric, StandardNormal};

use crate::error::{Error, Result};
use crate::linalg::SymmetricMatrix;
use crate::rng;

/// Density threshold below which Bernoulli sampling switches from per-entry
/// draws to geometric inter-arrival skipping.
const SPARSE_DENSITY_CUTOFF: f64 = 0.1;

/// Entry distribution for the off-diagonal variables. Every law produces
/// entries with mean zero and variance `1/N`.
#[derive(Clone)]
pub enum EntryLaw {
    /// Centered, rescaled Bernoulli: the sparse-graph model.
    BernoulliCentered,
    /// Gaussian entries: the exactly-solvable comparison model.
    Gaussian,
    /// Caller-supplied law, given as a quantile function plus declared
    /// moments of the standardized (variance one) variable.
    Custom(CustomLaw),
}

impl EntryLaw {
    pub fn name(&self) -> &str {
        match self {
            EntryLaw::BernoulliCentered => "bernoulli",
            EntryLaw::Gaussian => "gaussian",
            EntryLaw::Custom(c) => &c.name,
        }
    }
}

impl std::fmt::Debug for EntryLaw {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EntryLaw::BernoulliCentered => write!(f, "BernoulliCentered"),
            EntryLaw::Gaussian => write!(f, "Gaussian"),
            EntryLaw::Custom(c) => f
                .debug_struct("Custom")
                .field("name", &c.name)
                .field("mean", &c.mean)
                .field("variance", &c.variance)
                .finish(),
        }
    }
}

/// A user-defined standardized entry law.
///
/// `quantile` maps a uniform variate in `[0, 1)` to a draw of the standardized
/// variable `s`; the matrix entry is `s / sqrt(N)`. The declared mean and
/// variance are checked analytically (mean 0, variance 1, tolerance 1e-9)
/// when sampling; declared absolute moments `E|s|^p` feed the moment-growth
/// diagnostics but cannot be certified from finitely many draws.
#[derive(Clone)]
pub struct CustomLaw {
    pub name: String,
    pub quantile: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub mean: f64,
    pub variance: f64,
    /// Pairs `(p, E|s|^p)` for orders `p >= 3`.
    pub abs_moments: Vec<(u32, f64)>,
}

/// Parameters of a Laplacian-type matrix distribution: dimension, sparsity,
/// entry law, and the exponent used by spectral-domain constructions.
#[derive(Debug, Clone)]
pub struct EnsembleSpec {
    n: usize,
    q: f64,
    entry_law: EntryLaw,
    nu: f64,
}

impl EnsembleSpec {
    /// Validates `1 <= q <= sqrt(N)` (so the edge density `p = q^2/N` lies in
    /// `(0, 1]`) and builds a spec with the default domain exponent 0.1.
    pub fn new(n: usize, q: f64, entry_law: EntryLaw) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "dimension parameter must be at least 1".into(),
            ));
        }
        let root = (n as f64).sqrt();
        if !q.is_finite() || q < 1.0 || q > root {
            return Err(Error::InvalidParameter(format!(
                "sparsity q = {q} outside [1, sqrt(N)] = [1, {root:.6}]"
            )));
        }
        Ok(Self {
            n,
            q,
            entry_law,
            nu: 0.1,
        })
    }

    /// Builds a spec with `q = N^exponent`.
    pub fn from_exponent(n: usize, exponent: f64, entry_law: EntryLaw) -> Result<Self> {
        if !(0.0..=0.5).contains(&exponent) {
            return Err(Error::InvalidParameter(format!(
                "sparsity exponent {exponent} outside [0, 1/2]"
            )));
        }
        Self::new(n, (n as f64).powf(exponent), entry_law)
    }

    pub fn with_nu(mut self, nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu <= 0.0 || nu >= 0.5 {
            return Err(Error::InvalidParameter(format!(
                "domain exponent nu = {nu} outside (0, 1/2)"
            )));
        }
        self.nu = nu;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Matrix dimension `N + 1`.
    pub fn size(&self) -> usize {
        self.n + 1
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn entry_law(&self) -> &EntryLaw {
        &self.entry_law
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Edge density `p = q^2 / N`.
    pub fn density(&self) -> f64 {
        self.q * self.q / self.n as f64
    }

    /// Domain cutoff parameter `xi = N^nu`.
    pub fn xi(&self) -> f64 {
        (self.n as f64).powf(self.nu)
    }

    /// Whether the spec sits at the degenerate corner `p = 1`, where the
    /// centered Bernoulli entry is identically zero and the rescaling
    /// denominator vanishes.
    pub fn is_degenerate(&self) -> bool {
        self.density() >= 1.0
    }

    /// Centered, rescaled value of one raw Bernoulli entry:
    /// `h = m/(q sqrt(1-p)) - q/(N sqrt(1-p))`.
    pub fn rescale_offdiag(&self, m: f64) -> f64 {
        let p = self.density();
        let denom = self.q * (1.0 - p).sqrt();
        m / denom - self.q / (self.n as f64 * (1.0 - p).sqrt())
    }

    /// The deterministic shift constant `c` in the exact reconstruction
    /// `M = q sqrt(1-p) H + c (ee* - I)`: equals `q^2 (N+1) / N`, pinned by
    /// the entrywise round-trip test.
    pub fn reconstruction_shift(&self) -> f64 {
        self.q * self.q * (self.n as f64 + 1.0) / self.n as f64
    }

    /// Exact third absolute moment of one centered Bernoulli entry, times
    /// `N q`: equals `((1-p)^2 + p^2) / sqrt(1-p)`, which stays below 2 on
    /// the whole admissible range. Serves as the closed-form oracle for the
    /// moment-growth check.
    pub fn third_abs_moment_scaled(&self) -> Result<f64> {
        let p = self.density();
        if p >= 1.0 {
            return Err(Error::InvalidParameter(
                "third-moment oracle undefined at the degenerate density p = 1".into(),
            ));
        }
        Ok(((1.0 - p).powi(2) + p * p) / (1.0 - p).sqrt())
    }

    /// Implied moment-growth constants: for each declared or closed-form
    /// absolute moment `E|h|^p`, the value `c_p = E|h|^p q^{p-2} N`, finite
    /// bounds on which characterize admissible entry laws.
    pub fn moment_constants(&self) -> Result<Vec<(u32, f64)>> {
        let nf = self.n as f64;
        match &self.entry_law {
            EntryLaw::BernoulliCentered => {
                Ok(vec![(3, self.third_abs_moment_scaled()?)])
            }
            EntryLaw::Gaussian => {
                // E|s|^3 = sqrt(8/pi) for a standard normal; h = s/sqrt(N).
                let m3 = (8.0 / std::f64::consts::PI).sqrt();
                Ok(vec![(3, m3 * self.q / nf.sqrt())])
            }
            EntryLaw::Custom(c) => Ok(c
                .abs_moments
                .iter()
                .map(|&(p, m)| {
                    (p, m * self.q.powi(p as i32 - 2) * nf.powf(1.0 - p as f64 / 2.0))
                })
                .collect()),
        }
    }
}

/// One realized raw sparse-graph Laplacian: off-diagonal entries in {0, 1},
/// diagonal equal to minus the off-diagonal row sum.
#[derive(Debug, Clone)]
pub struct RawLaplacian {
    matrix: SymmetricMatrix,
    density: f64,
    seed: u64,
}

impl RawLaplacian {
    pub fn matrix(&self) -> &SymmetricMatrix {
        &self.matrix
    }

    pub fn size(&self) -> usize {
        self.matrix.size()
    }

    pub fn density(&self) -> f64 {
        self.density
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of edges incident to row `i` (the negated diagonal entry).
    pub fn degree(&self, i: usize) -> f64 {
        -self.matrix.get(i, i)
    }
}

/// One realized Laplacian-type matrix: symmetric off-diagonal entries with
/// the diagonal equal to minus the off-diagonal row sum, so the constant unit
/// vector is an exact null vector.
#[derive(Debug, Clone)]
pub struct LaplacianSample {
    matrix: SymmetricMatrix,
    seed: u64,
    degenerate: bool,
}

impl LaplacianSample {
    pub fn matrix(&self) -> &SymmetricMatrix {
        &self.matrix
    }

    /// Matrix dimension `N + 1`.
    pub fn size(&self) -> usize {
        self.matrix.size()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// True for the exact `p = 1` fixture, where centering yields the zero
    /// matrix and the variance normalization is skipped.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn offdiag(&self, i: usize, j: usize) -> f64 {
        debug_assert_ne!(i, j);
        self.matrix.get(i, j)
    }

    pub(crate) fn from_parts(matrix: SymmetricMatrix, seed: u64, degenerate: bool) -> Self {
        Self {
            matrix,
            seed,
            degenerate,
        }
    }
}

/// Fills the structural diagonal `A_ii = -sum_{k != i} A_ki` of a symmetric
/// off-diagonal data buffer (row-major, `size * size`).
fn fill_structural_diagonal(data: &mut [f64], size: usize) {
    for i in 0..size {
        let row = &data[i * size..(i + 1) * size];
        let mut sum = 0.0;
        for (k, &v) in row.iter().enumerate() {
            if k != i {
                sum += v;
            }
        }
        data[i * size + i] = -sum;
    }
}

/// Draws a symmetric 0/1 adjacency structure at density `p` with the
/// structural Laplacian diagonal. Uses geometric skipping when sparse.
fn sample_adjacency(size: usize, p: f64, seed: u64) -> SymmetricMatrix {
    let mut data = vec![0.0_f64; size * size];
    if p > 0.0 {
        for i in 0..size {
            let mut stream = rng::row_rng(seed, i as u64);
            if p >= 1.0 {
                for j in (i + 1)..size {
                    data[i * size + j] = 1.0;
                    data[j * size + i] = 1.0;
                }
            } else if p < SPARSE_DENSITY_CUTOFF {
                let gaps = Geometric::new(p).expect("density in (0,1)");
                let mut j = i + 1;
                loop {
                    let skip = gaps.sample(&mut stream);
                    j = j.saturating_add(skip.min(size as u64) as usize);
                    if j >= size {
                        break;
                    }
                    data[i * size + j] = 1.0;
                    data[j * size + i] = 1.0;
                    j += 1;
                }
            } else {
                for j in (i + 1)..size {
                    if stream.random::<f64>() < p {
                        data[i * size + j] = 1.0;
                        data[j * size + i] = 1.0;
                    }
                }
            }
        }
    }
    fill_structural_diagonal(&mut data, size);
    SymmetricMatrix::from_raw(size, data).expect("symmetric by construction")
}

/// Samples the raw sparse-graph Laplacian: independent Bernoulli(p) edges on
/// the off-diagonal, diagonal minus the row degree.
pub fn sample_raw_laplacian(spec: &EnsembleSpec, seed: u64) -> Result<RawLaplacian> {
    if !matches!(spec.entry_law, EntryLaw::BernoulliCentered) {
        return Err(Error::InvalidParameter(
            "raw graph Laplacians exist only for the Bernoulli entry law".into(),
        ));
    }
    let p = spec.density();
    if p > 1.0 {
        return Err(Error::InvalidParameter(format!(
            "edge density p = {p} exceeds 1"
        )));
    }
    Ok(RawLaplacian {
        matrix: sample_adjacency(spec.size(), p, seed),
        density: p,
        seed,
    })
}

/// Centers and rescales a raw Laplacian to unit entry variance:
/// `h_ij = (m_ij - p) / (q sqrt(1-p))`, diagonal recomputed structurally.
///
/// At the degenerate corner `p = 1` the centered matrix is identically zero;
/// the normalization is skipped and the sample is flagged.
pub fn center_and_rescale(raw: &RawLaplacian, spec: &EnsembleSpec) -> Result<LaplacianSample> {
    let size = spec.size();
    if raw.size() != size {
        return Err(Error::DimensionMismatch(format!(
            "raw matrix is {} x {}, spec wants {} x {}",
            raw.size(),
            raw.size(),
            size,
            size
        )));
    }
    let p = spec.density();
    if (raw.density() - p).abs() > 1e-12 {
        return Err(Error::InvalidParameter(format!(
            "raw matrix was drawn at density {}, spec density is {p}",
            raw.density()
        )));
    }
    if spec.is_degenerate() {
        // Centering the deterministic complete graph gives the zero matrix.
        return Ok(LaplacianSample::from_parts(
            SymmetricMatrix::zeros(size),
            raw.seed(),
            true,
        ));
    }

    let mut data = vec![0.0_f64; size * size];
    for i in 0..size {
        for j in (i + 1)..size {
            let h = spec.rescale_offdiag(raw.matrix().get(i, j));
            data[i * size + j] = h;
            data[j * size + i] = h;
        }
    }
    fill_structural_diagonal(&mut data, size);
    let matrix = SymmetricMatrix::from_raw(size, data).expect("symmetric by construction");
    Ok(LaplacianSample::from_parts(matrix, raw.seed(), false))
}

/// Samples a Laplacian-type matrix under the spec's entry law.
///
/// Bernoulli goes through the sparse graph and exact rescaling; Gaussian
/// draws `N(0, 1/N)` entries (the toy comparison model); custom laws draw
/// through the supplied quantile after their declared mean and variance are
/// checked analytically.
pub fn sample_laplacian_type(spec: &EnsembleSpec, seed: u64) -> Result<LaplacianSample> {
    match &spec.entry_law {
        EntryLaw::BernoulliCentered => {
            let raw = sample_raw_laplacian(spec, seed)?;
            center_and_rescale(&raw, spec)
        }
        EntryLaw::Gaussian => {
            let size = spec.size();
            let scale = 1.0 / (spec.n as f64).sqrt();
            Ok(LaplacianSample::from_parts(
                sample_symmetric_offdiag(size, seed, |stream| {
                    let s: f64 = stream.sample(StandardNormal);
                    s * scale
                }),
                seed,
                false,
            ))
        }
        EntryLaw::Custom(law) => {
            if law.mean.abs() > 1e-9 {
                return Err(Error::InvalidParameter(format!(
                    "custom entry law '{}' declares mean {}, expected 0",
                    law.name, law.mean
                )));
            }
            if (law.variance - 1.0).abs() > 1e-9 {
                return Err(Error::InvalidParameter(format!(
                    "custom entry law '{}' declares variance {}, expected 1",
                    law.name, law.variance
                )));
            }
            let size = spec.size();
            let scale = 1.0 / (spec.n as f64).sqrt();
            let quantile = Arc::clone(&law.quantile);
            Ok(LaplacianSample::from_parts(
                sample_symmetric_offdiag(size, seed, move |stream| {
                    quantile(stream.random::<f64>()) * scale
                }),
                seed,
                false,
            ))
        }
    }
}

/// Draws iid off-diagonal entries from per-row streams and installs the
/// structural diagonal.
fn sample_symmetric_offdiag(
    size: usize,
    seed: u64,
    mut draw: impl FnMut(&mut rand_chacha::ChaCha8Rng) -> f64,
) -> SymmetricMatrix {
    let mut data = vec![0.0_f64; size * size];
    for i in 0..size {
        let mut stream = rng::row_rng(seed, i as u64);
        for j in (i + 1)..size {
            let h = draw(&mut stream);
            data[i * size + j] = h;
            data[j * size + i] = h;
        }
    }
    fill_structural_diagonal(&mut data, size);
    SymmetricMatrix::from_raw(size, data).expect("symmetric by construction")
}

/// Samples an `n x n` GOE matrix: independent Gaussian entries, off-diagonal
/// variance `1/n`, diagonal variance `2/n`.
pub fn sample_goe(n: usize, seed: u64) -> Result<SymmetricMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter("GOE dimension must be >= 1".into()));
    }
    let off = 1.0 / (n as f64).sqrt();
    let diag = std::f64::consts::SQRT_2 * off;
    let mut data = vec![0.0_f64; n * n];
    for i in 0..n {
        let mut stream = rng::row_rng(seed, i as u64);
        for j in i..n {
            let s: f64 = stream.sample(StandardNormal);
            let v = if i == j { s * diag } else { s * off };
            data[i * n + j] = v;
            data[j * n + i] = v;
        }
    }
    Ok(SymmetricMatrix::from_raw(n, data).expect("symmetric by construction"))
}

/// Deterministic column-orthonormal basis of the orthogonal complement of
/// the constant unit vector: an `(N+1) x N` matrix whose columns come from
/// the Householder reflector exchanging the constant vector with the last
/// coordinate axis, each column normalized so its first entry is positive.
#[derive(Debug, Clone)]
pub struct ProjectionBasis {
    rows: usize,
    cols: usize,
    /// `1/sqrt(N+1)`, the entry of the constant unit vector.
    a: f64,
    /// Per-column sign flips applied to the raw reflector columns.
    signs: Vec<f64>,
    /// Column-major entries, `rows x cols`.
    entries: Vec<f64>,
}

impl ProjectionBasis {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i + j * self.rows]
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.entries[j * self.rows..(j + 1) * self.rows]
    }

    /// Reflector vector entry `u_i` where the reflector is
    /// `P = I - u u^T / (1 - a)` with `u = e - e_last`.
    fn u(&self, i: usize) -> f64 {
        if i + 1 == self.rows {
            self.a - 1.0
        } else {
            self.a
        }
    }

    /// `R v`: lifts a length-N vector into the complement of the constant
    /// direction inside the (N+1)-dimensional space.
    pub fn apply(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "expected length {}, got {}",
                self.cols,
                v.len()
            )));
        }
        let beta = 1.0 / (1.0 - self.a);
        // x = signs * v padded with a trailing zero; result = x - beta (u.x) u.
        let dot: f64 = (0..self.cols).map(|k| self.a * self.signs[k] * v[k]).sum();
        let mut out = vec![0.0; self.rows];
        for (k, item) in out.iter_mut().take(self.cols).enumerate() {
            *item = self.signs[k] * v[k] - beta * dot * self.u(k);
        }
        out[self.rows - 1] = -beta * dot * self.u(self.rows - 1);
        Ok(out)
    }

    /// `R* w`: projects an (N+1)-dimensional vector onto the basis columns.
    pub fn apply_transpose(&self, w: &[f64]) -> Result<Vec<f64>> {
        if w.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "expected length {}, got {}",
                self.rows,
                w.len()
            )));
        }
        let beta = 1.0 / (1.0 - self.a);
        let dot: f64 = (0..self.rows).map(|i| self.u(i) * w[i]).sum();
        Ok((0..self.cols)
            .map(|k| self.signs[k] * (w[k] - beta * dot * self.u(k)))
            .collect())
    }

    /// `R* M R`: conjugates an `(N+1) x (N+1)` symmetric matrix down to the
    /// complement of the constant direction, in O(N^2) via two rank-one
    /// reflector updates.
    pub fn conjugate(&self, m: &SymmetricMatrix) -> Result<SymmetricMatrix> {
        if m.size() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "matrix is {} x {}, basis wants {} x {}",
                m.size(),
                m.size(),
                self.rows,
                self.rows
            )));
        }
        let beta = 1.0 / (1.0 - self.a);
        // t = M u and the quadratic form u^T M u.
        let u: Vec<f64> = (0..self.rows).map(|i| self.u(i)).collect();
        let t = m.apply(&u);
        let utu: f64 = u.iter().zip(&t).map(|(a, b)| a * b).sum();
        // Block entries all have u_r = u_c = a.
        let aa = self.a;
        let quad = beta * beta * utu * aa * aa;
        Ok(SymmetricMatrix::from_fn(self.cols, |r, c| {
            self.signs[r]
                * self.signs[c]
                * (m.get(r, c) - beta * aa * (t[r] + t[c]) + quad)
        }))
    }
}

/// Builds the deterministic projection basis for an (n+1)-dimensional model.
/// Two calls with the same `n` are bitwise identical.
pub fn projection_basis(n: usize) -> Result<ProjectionBasis> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "projection basis needs n >= 1".into(),
        ));
    }
    let rows = n + 1;
    let a = 1.0 / ((n + 1) as f64).sqrt();
    let beta = 1.0 / (1.0 - a);
    let mut signs = vec![1.0_f64; n];
    let mut entries = vec![0.0_f64; rows * n];
    for k in 0..n {
        // Raw reflector column: delta_jk - beta a u_j.
        let first = if k == 0 { 1.0 - beta * a * a } else { -beta * a * a };
        let sign = if first < 0.0 { -1.0 } else { 1.0 };
        signs[k] = sign;
        let col = &mut entries[k * rows..(k + 1) * rows];
        for (j, item) in col.iter_mut().enumerate().take(n) {
            let raw = if j == k { 1.0 - beta * a * a } else { -beta * a * a };
            *item = sign * raw;
        }
        col[rows - 1] = sign * a;
    }
    Ok(ProjectionBasis {
        rows,
        cols: n,
        a,
        signs,
        entries,
    })
}

/// `R* M R`: removes the trivial direction from a symmetric matrix. For a
/// Laplacian-type sample this keeps exactly the nontrivial spectrum.
pub fn project_out_trivial(
    m: &SymmetricMatrix,
    r: &ProjectionBasis,
) -> Result<SymmetricMatrix> {
    r.conjugate(m)
}

/// Samples the Gaussian decomposition of the projected toy model:
/// `GOE + R* D R + g I` with `D` diagonal Gaussian of variance `(N+1)/N` and
/// scalar `g` of variance `1/N`, all independent. Equal in law to `R* W R`
/// for the Gaussian Laplacian-type model `W`.
pub fn decompose_gaussian(n: usize, seed: u64) -> Result<SymmetricMatrix> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "decomposition needs n >= 1".into(),
        ));
    }
    let basis = projection_basis(n)?;
    let mut goe = sample_goe(n, rng::mix(seed, 1))?;

    let nf = n as f64;
    let d_sd = ((nf + 1.0) / nf).sqrt();
    let mut d_stream = rng::chacha(rng::mix(seed, 2));
    let mut diag = SymmetricMatrix::zeros(n + 1);
    for i in 0..=n {
        let s: f64 = d_stream.sample(StandardNormal);
        diag.set(i, i, s * d_sd);
    }
    let projected = basis.conjugate(&diag)?;

    let mut g_stream = rng::chacha(rng::mix(seed, 3));
    let g: f64 = {
        let s: f64 = g_stream.sample(StandardNormal);
        s / nf.sqrt()
    };

    goe.add_scaled(&projected, 1.0)?;
    goe.add_diag(g);
    Ok(goe)
}

/// Closed-form entry covariance of the Gaussian Laplacian-type model:
/// `E[W_ij W_kl]` for an `(N+1) x (N+1)` model with zero-based indices.
pub fn entry_covariance_oracle(i: usize, j: usize, k: usize, l: usize, n: usize) -> f64 {
    debug_assert!(i <= n && j <= n && k <= n && l <= n);
    let d = |p: bool| if p { 1.0 } else { 0.0 };
    let nf = n as f64;
    (d(i == k) * d(j == l) + d(i == l) * d(j == k)
        - d(i == j && j == k)
        - d(i == j && j == l)
        - d(i == k && k == l)
        - d(j == k && k == l)
        + d(i == j) * d(k == l)
        + (nf + 1.0) * d(i == j && j == k && k == l))
        / nf
}

/// Closed-form entry covariance of the projected toy model
/// `E[(R*WR)_ab (R*WR)_cd]`, zero-based indices into the `N x N` projection.
pub fn projected_covariance_oracle(
    a: usize,
    b: usize,
    c: usize,
    d: usize,
    basis: &ProjectionBasis,
) -> f64 {
    let n = basis.cols() as f64;
    let kron = |p: bool| if p { 1.0 } else { 0.0 };
    let free = (kron(a == c) * kron(b == d) + kron(a == d) * kron(b == c)
        + kron(a == b) * kron(c == d))
        / n;
    let quartic: f64 = (0..basis.rows())
        .map(|i| basis.entry(i, a) * basis.entry(i, b) * basis.entry(i, c) * basis.entry(i, d))
        .sum();
    free + (n + 1.0) / n * quartic
}
