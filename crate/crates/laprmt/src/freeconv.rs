//! Fixed-point solvers for the limiting Stieltjes transforms.
//!
//! The central object is the self-consistent equation
//! `m(z) = E[ 1/(X - z - m(z)) ]` for standard Gaussian `X`, whose solution
//! is the Stieltjes transform of the free additive convolution of the
//! semicircle and Gaussian laws (total variance 2). Variants share one
//! engine: a scaled-kernel form used by the flow analysis, and the
//! finite-atom form `m(z) = (1/N) sum_i 1/(lambda_i - z - c m(z))`.
//!
//! The engine integrates with Gauss-Hermite quadrature, iterates a damped
//! fixed point, and reaches small `eta` by geometric continuation from the
//! trivially convergent region, warm-starting each step.

use num_complex::ComplexFloat;
use serde::Serialize;

use crate::domain::{build_domain, GridOptions, Region, SpectralDomain};
use crate::error::{Error, Result};
use crate::linalg::Complex64;
use crate::quad::GaussHermite;
use crate::report::{CheckItem, VerificationReport};

/// A point `z = E + i eta` of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpectralPoint {
    e: f64,
    eta: f64,
}

impl SpectralPoint {
    pub fn new(e: f64, eta: f64) -> Result<Self> {
        if !e.is_finite() || !eta.is_finite() || eta <= 0.0 {
            return Err(Error::InvalidPoint(format!(
                "spectral point needs finite E and eta > 0, got E = {e}, eta = {eta}"
            )));
        }
        Ok(Self { e, eta })
    }

    pub fn e(&self) -> f64 {
        self.e
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.e, self.eta)
    }
}

/// Tuning knobs of the fixed-point engine.
#[derive(Debug, Clone, Copy)]
pub struct SolverOptions {
    /// Gauss-Hermite node count for the Gaussian kernel (minimum 201).
    pub nodes: usize,
    /// Fixed-point residual target.
    pub tol: f64,
    /// Total iteration budget per solve, shared across continuation steps.
    pub max_iter: usize,
    /// Smallest damping factor.
    pub damping_floor: f64,
    /// Geometric continuation ratio in `eta`.
    pub continuation_ratio: f64,
    /// Continuation entry level: solves start at `max(eta, this)`.
    pub continuation_start: f64,
    /// Evaluation height for densities on the real axis.
    pub density_eta: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            nodes: 201,
            tol: 1e-12,
            max_iter: 10_000,
            damping_floor: 1.0 / 64.0,
            continuation_ratio: 0.7,
            continuation_start: 2.0,
            density_eta: 1e-6,
        }
    }
}

impl SolverOptions {
    fn validate(&self) -> Result<()> {
        if self.nodes < 201 {
            return Err(Error::InvalidParameter(format!(
                "Gaussian kernel quadrature needs at least 201 nodes, got {}",
                self.nodes
            )));
        }
        if !(self.tol > 0.0)
            || self.max_iter == 0
            || !(0.0 < self.damping_floor && self.damping_floor <= 1.0)
            || !(0.0 < self.continuation_ratio && self.continuation_ratio < 1.0)
            || !(self.continuation_start > 0.0)
            || !(self.density_eta > 0.0)
        {
            return Err(Error::InvalidParameter(
                "solver options out of range".into(),
            ));
        }
        Ok(())
    }
}

/// `sum_i w_i / (x_i - z - coupling * m)` over weighted atoms.
fn kernel(atoms: &[(f64, f64)], z: Complex64, coupling: f64, m: Complex64) -> Complex64 {
    let shift = z + coupling * m;
    atoms
        .iter()
        .map(|&(x, w)| w / Complex64::new(x - shift.re, -shift.im))
        .sum()
}

/// Damped fixed-point iteration at fixed `z`, starting from `m0`.
/// The damping factor starts at 1, halves whenever a candidate leaves the
/// upper half-plane or increases the residual, and never drops below the
/// floor. Consumes from the shared iteration budget.
fn iterate(
    atoms: &[(f64, f64)],
    z: Complex64,
    coupling: f64,
    m0: Complex64,
    opts: &SolverOptions,
    budget: &mut usize,
) -> Result<(Complex64, f64)> {
    let mut m = if m0.im > 0.0 {
        m0
    } else {
        Complex64::new(0.0, 1.0)
    };
    let mut f = kernel(atoms, z, coupling, m);
    let mut res = (m - f).abs();
    let mut alpha = 1.0_f64;
    while res >= opts.tol {
        if *budget == 0 {
            return Err(Error::NonConvergence(format!(
                "fixed point stalled at z = {} + {}i with residual {res:.3e}",
                z.re, z.im
            )));
        }
        *budget -= 1;
        let cand = m + alpha * (f - m);
        let f_cand = kernel(atoms, z, coupling, cand);
        let res_cand = (cand - f_cand).abs();
        let reject = cand.im <= 0.0 || (res_cand > res && alpha > opts.damping_floor);
        if reject {
            alpha = (alpha / 2.0).max(opts.damping_floor);
            continue;
        }
        m = cand;
        f = f_cand;
        res = res_cand;
    }
    Ok((m, res))
}

/// Continuation ladder in `eta`: from `max(target, start)` down to `target`
/// by the geometric ratio, ending exactly at `target`.
fn continuation_path(target: f64, opts: &SolverOptions) -> Vec<f64> {
    if target >= opts.continuation_start {
        return vec![target];
    }
    let mut path = vec![opts.continuation_start];
    let mut eta = opts.continuation_start;
    while eta * opts.continuation_ratio > target {
        eta *= opts.continuation_ratio;
        path.push(eta);
    }
    path.push(target);
    path
}

/// Full solve at one point: continuation from the top, warm-started, damped.
fn solve_atoms(
    atoms: &[(f64, f64)],
    point: SpectralPoint,
    coupling: f64,
    opts: &SolverOptions,
) -> Result<(Complex64, f64)> {
    let mut budget = opts.max_iter;
    let mut m = Complex64::new(0.0, 1.0);
    let mut res = f64::INFINITY;
    for &eta in &continuation_path(point.eta(), opts) {
        let z = Complex64::new(point.e(), eta);
        (m, res) = iterate(atoms, z, coupling, m, opts, &mut budget)?;
    }
    Ok((m, res))
}

/// Solver for the Gaussian-kernel self-consistent equations.
#[derive(Debug, Clone)]
pub struct FreeConv {
    atoms: Vec<(f64, f64)>,
    opts: SolverOptions,
}

impl FreeConv {
    pub fn new(opts: SolverOptions) -> Result<Self> {
        opts.validate()?;
        let rule = GaussHermite::new(opts.nodes)?;
        Ok(Self {
            atoms: rule.pairs().collect(),
            opts,
        })
    }

    /// Default-configured solver.
    pub fn standard() -> Self {
        Self::new(SolverOptions::default()).expect("default options are valid")
    }

    pub fn options(&self) -> &SolverOptions {
        &self.opts
    }

    /// Solves `m(z) = E[1/(X - z - m(z))]`.
    pub fn solve(&self, point: SpectralPoint) -> Result<Complex64> {
        Ok(self.solve_detailed(point)?.0)
    }

    /// Like [`solve`](Self::solve) but also returns the final residual.
    pub fn solve_detailed(&self, point: SpectralPoint) -> Result<(Complex64, f64)> {
        solve_atoms(&self.atoms, point, 1.0, &self.opts)
    }

    /// Solves the variant with the Gaussian atom positions multiplied by a
    /// fixed scale factor.
    pub(crate) fn solve_with_scale(
        &self,
        point: SpectralPoint,
        scale: f64,
    ) -> Result<(Complex64, f64)> {
        let scaled: Vec<(f64, f64)> = self.atoms.iter().map(|&(x, w)| (scale * x, w)).collect();
        solve_atoms(&scaled, point, 1.0, &self.opts)
    }

    /// Flow-adjusted transform: the Gaussian kernel is widened by
    /// `sqrt(1 + (1 - e^{-t})/N)`, which tends to the plain equation as
    /// `t -> 0` or `N -> infinity`.
    pub fn solve_scaled(&self, point: SpectralPoint, t: f64, n: usize) -> Result<Complex64> {
        if t < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "flow time must be nonnegative, got {t}"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidParameter("dimension must be >= 1".into()));
        }
        let scale = (1.0 + (1.0 - (-t).exp()) / n as f64).sqrt();
        Ok(self.solve_with_scale(point, scale)?.0)
    }

    /// Spectral density by Stieltjes inversion at the fixed evaluation
    /// height: `(1/pi) Im m(E + i eta_0)`, clamped to zero below 1e-14.
    pub fn density(&self, e: f64) -> Result<f64> {
        let point = SpectralPoint::new(e, self.opts.density_eta)?;
        let m = self.solve(point)?;
        let rho = m.im / std::f64::consts::PI;
        Ok(if rho < 1e-14 { 0.0 } else { rho })
    }

    /// Tabulates the density and its CDF on a uniform grid over
    /// `[-emax, emax]`. Adjacent points warm-start each other; any point
    /// that fails the warm path falls back to a cold continuation solve.
    pub fn density_table(&self, emax: f64, step: f64) -> Result<DensityTable> {
        if !(emax > 0.0) || !(step > 0.0) || step > emax {
            return Err(Error::InvalidParameter(format!(
                "density table needs 0 < step <= emax, got step {step}, emax {emax}"
            )));
        }
        let count = (2.0 * emax / step).round() as usize + 1;
        let eta0 = self.opts.density_eta;
        let mut rho = Vec::with_capacity(count);
        let mut max_residual = 0.0_f64;
        let mut warm: Option<Complex64> = None;
        for i in 0..count {
            let e = -emax + i as f64 * step;
            let point = SpectralPoint::new(e, eta0)?;
            let solved = match warm {
                Some(prev) => {
                    let mut budget = self.opts.max_iter;
                    iterate(
                        &self.atoms,
                        point.z(),
                        1.0,
                        prev,
                        &self.opts,
                        &mut budget,
                    )
                    .or_else(|_| solve_atoms(&self.atoms, point, 1.0, &self.opts))?
                }
                None => solve_atoms(&self.atoms, point, 1.0, &self.opts)?,
            };
            warm = Some(solved.0);
            max_residual = max_residual.max(solved.1);
            let value = solved.0.im / std::f64::consts::PI;
            rho.push(if value < 1e-14 { 0.0 } else { value });
        }
        Ok(DensityTable::from_density(-emax, step, rho, max_residual))
    }

    /// Default tabulation: `emax` chosen so the Gaussian-tail bound
    /// `e^{-E^2/8}` leaves mass below 1e-12 (12 suffices), step 1e-3.
    pub fn density_table_default(&self) -> Result<DensityTable> {
        self.density_table(12.0, 1e-3)
    }

    /// Classical eigenvalue locations for dimension `n`, from a fresh
    /// default density table.
    pub fn classical_locations(&self, n: usize) -> Result<ClassicalLocations> {
        self.density_table_default()?.classical_locations(n)
    }

    /// Solves `m` on every point of a spectral domain and tabulates the
    /// density, producing the full packaged solution.
    pub fn solution(&self, domain: &SpectralDomain) -> Result<FreeConvSolution> {
        let mut m_values = Vec::with_capacity(domain.len());
        let mut residuals = Vec::with_capacity(domain.len());
        for (point, _) in domain.points() {
            let (m, res) = self.solve_detailed(*point)?;
            m_values.push(m);
            residuals.push(res);
        }
        Ok(FreeConvSolution {
            points: domain.points().to_vec(),
            m_values,
            residuals,
            density: self.density_table_default()?,
        })
    }

    /// Scans the bulk region of the spectral domain and reports the
    /// operational regularity constants: the minimum of `Im m` (the solved
    /// lower constant), the maximum of `|m|` (must not exceed 1), and the
    /// largest finite-difference Lipschitz quotient between neighboring
    /// grid points.
    pub fn regularity_report(&self, l: f64, n: usize, nu: f64) -> Result<VerificationReport> {
        let domain = build_domain(l, n, nu, GridOptions::default())?;
        let bulk: Vec<SpectralPoint> = domain.region_points(Region::Bulk).collect();
        let mut values = Vec::with_capacity(bulk.len());
        for p in &bulk {
            values.push(self.solve(*p)?);
        }

        let mut min_im = f64::INFINITY;
        let mut max_abs = 0.0_f64;
        for m in &values {
            min_im = min_im.min(m.im);
            max_abs = max_abs.max(m.abs());
        }
        // Lipschitz quotient over all pairs of adjacent grid points (same
        // eta, neighboring E; same E, neighboring eta).
        let mut lipschitz = 0.0_f64;
        for (i, (pi, mi)) in bulk.iter().zip(&values).enumerate() {
            for (pj, mj) in bulk.iter().zip(&values).skip(i + 1) {
                let de = (pi.e() - pj.e()).abs();
                let dn = (pi.eta() - pj.eta()).abs();
                let adjacent_e = dn == 0.0 && de <= domain.options().e_step * 1.5;
                let adjacent_eta = de == 0.0 && dn <= pi.eta().max(pj.eta()) * 0.3;
                if adjacent_e || adjacent_eta {
                    let dist = (pi.z() - pj.z()).abs();
                    lipschitz = lipschitz.max((mi - mj).abs() / dist);
                }
            }
        }

        let mut report = VerificationReport::new("limiting transform regularity");
        report.push(
            CheckItem::at_least("imaginary part bounded below", min_im, f64::MIN_POSITIVE)
                .with_detail(format!("min over {} bulk points", bulk.len())),
        );
        report.push(
            CheckItem::at_most("modulus bounded by one", max_abs, 1.0 + 1e-9)
                .with_detail("max |m| over bulk grid"),
        );
        report.record("c_star", min_im);
        report.record("max_abs_m", max_abs);
        report.record("lipschitz_quotient", lipschitz);
        report.record("bulk_points", bulk.len() as f64);
        Ok(report)
    }
}

/// Finite-atom self-consistent transform:
/// `m(z) = (1/N) sum_i 1/(lambda_i - z - vartheta^2 m(z))`.
/// At `vartheta = 0` this is exactly the empirical Stieltjes transform.
pub fn solve_mt(
    lambdas: &[f64],
    point: SpectralPoint,
    vartheta: f64,
    opts: &SolverOptions,
) -> Result<Complex64> {
    if lambdas.is_empty() {
        return Err(Error::InvalidParameter(
            "finite-atom transform needs at least one eigenvalue".into(),
        ));
    }
    if vartheta < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "coupling must be nonnegative, got {vartheta}"
        )));
    }
    let w = 1.0 / lambdas.len() as f64;
    let atoms: Vec<(f64, f64)> = lambdas.iter().map(|&x| (x, w)).collect();
    Ok(solve_atoms(&atoms, point, vartheta * vartheta, opts)?.0)
}

/// The linearization factor controlling stability of the self-consistent
/// equation against a perturbed atom set:
/// `1 - (1/N) sum_k 1/(w_k - z - m)^2`.
pub fn stability_factor(w: &[f64], point: SpectralPoint, m: Complex64) -> Complex64 {
    let z = point.z();
    let sum: Complex64 = w
        .iter()
        .map(|&x| {
            let d = Complex64::new(x, 0.0) - z - m;
            1.0 / (d * d)
        })
        .sum();
    Complex64::new(1.0, 0.0) - sum / w.len() as f64
}

/// Stieltjes transform of the unit-variance semicircle law:
/// `(-z + sqrt(z^2 - 4))/2` on the branch with positive imaginary part.
pub fn semicircle_stieltjes(z: Complex64) -> Complex64 {
    let root = (z * z - 4.0).sqrt();
    let m = (-z + root) / 2.0;
    if m.im > 0.0 {
        m
    } else {
        (-z - root) / 2.0
    }
}

/// CDF of the semicircle law on `[-2, 2]`:
/// `1/2 + (E sqrt(4 - E^2) + 4 asin(E/2)) / (4 pi)`.
pub fn semicircle_cdf(e: f64) -> f64 {
    if e <= -2.0 {
        return 0.0;
    }
    if e >= 2.0 {
        return 1.0;
    }
    0.5 + (e * (4.0 - e * e).sqrt() + 4.0 * (e / 2.0).asin()) / (4.0 * std::f64::consts::PI)
}

/// Quantile of the semicircle law by bisection on the closed-form CDF.
pub fn semicircle_quantile(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!(
            "quantile probability {p} outside [0, 1]"
        )));
    }
    let (mut lo, mut hi) = (-2.0_f64, 2.0_f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if semicircle_cdf(mid) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Uniform tabulation of a spectral density with its cumulative integral.
#[derive(Debug, Clone)]
pub struct DensityTable {
    e0: f64,
    step: f64,
    rho: Vec<f64>,
    cdf: Vec<f64>,
    max_residual: f64,
}

impl DensityTable {
    /// Builds the CDF from density samples by cumulative Simpson
    /// integration (three-point rule to even indices, half-interval
    /// correction to odd ones), clamped monotone.
    fn from_density(e0: f64, step: f64, rho: Vec<f64>, max_residual: f64) -> Self {
        let n = rho.len();
        let mut cdf = vec![0.0_f64; n];
        let h = step;
        for i in 1..n {
            cdf[i] = if i % 2 == 0 {
                cdf[i - 2] + h / 3.0 * (rho[i - 2] + 4.0 * rho[i - 1] + rho[i])
            } else if i + 1 < n {
                cdf[i - 1] + h / 12.0 * (5.0 * rho[i - 1] + 8.0 * rho[i] - rho[i + 1])
            } else {
                // Final odd point: trapezoid closes the table.
                cdf[i - 1] + h / 2.0 * (rho[i - 1] + rho[i])
            };
            if cdf[i] < cdf[i - 1] {
                cdf[i] = cdf[i - 1];
            }
        }
        Self {
            e0,
            step,
            rho,
            cdf,
            max_residual,
        }
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    pub fn energy(&self, i: usize) -> f64 {
        self.e0 + i as f64 * self.step
    }

    pub fn rho(&self) -> &[f64] {
        &self.rho
    }

    pub fn cdf(&self) -> &[f64] {
        &self.cdf
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn max_residual(&self) -> f64 {
        self.max_residual
    }

    /// Total tabulated mass (the CDF endpoint).
    pub fn total_mass(&self) -> f64 {
        *self.cdf.last().unwrap_or(&0.0)
    }

    /// Trapezoid second moment `int E^2 rho dE` over the table.
    pub fn second_moment(&self) -> f64 {
        let mut acc = 0.0;
        for i in 1..self.len() {
            let (e0, e1) = (self.energy(i - 1), self.energy(i));
            acc += self.step / 2.0 * (e0 * e0 * self.rho[i - 1] + e1 * e1 * self.rho[i]);
        }
        acc
    }

    /// Density at an arbitrary energy by linear interpolation (zero
    /// outside the table).
    pub fn density_at(&self, e: f64) -> f64 {
        let x = (e - self.e0) / self.step;
        if x < 0.0 || x > (self.len() - 1) as f64 {
            return 0.0;
        }
        let i = (x.floor() as usize).min(self.len() - 2);
        let frac = x - i as f64;
        self.rho[i] * (1.0 - frac) + self.rho[i + 1] * frac
    }

    /// Inverse CDF: monotone bracketing to a grid cell, then a cubic
    /// Hermite refinement using the exact derivatives (the density).
    pub fn quantile(&self, p: f64) -> Result<f64> {
        let total = self.total_mass();
        if !(0.0..=1.0).contains(&p) || p > total {
            return Err(Error::InvalidParameter(format!(
                "quantile target {p} outside tabulated mass [0, {total}]"
            )));
        }
        // Bracket: first index with cdf >= p.
        let hi = self.cdf.partition_point(|&c| c < p);
        if hi == 0 {
            return Ok(self.energy(0));
        }
        let lo = hi - 1;
        let (c0, c1) = (self.cdf[lo], self.cdf[hi]);
        if c1 == c0 {
            return Ok(self.energy(lo));
        }
        // Hermite cubic of the CDF on the cell with slopes rho.
        let h = self.step;
        let (d0, d1) = (self.rho[lo], self.rho[hi]);
        let eval = |s: f64| -> f64 {
            let h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
            let h10 = s * (1.0 - s) * (1.0 - s);
            let h01 = s * s * (3.0 - 2.0 * s);
            let h11 = s * s * (s - 1.0);
            h00 * c0 + h10 * h * d0 + h01 * c1 + h11 * h * d1
        };
        let (mut a, mut b) = (0.0_f64, 1.0_f64);
        for _ in 0..80 {
            let mid = 0.5 * (a + b);
            if eval(mid) < p {
                a = mid;
            } else {
                b = mid;
            }
        }
        Ok(self.energy(lo) + 0.5 * (a + b) * h)
    }

    /// Classical locations for dimension `n`: the `(i - 1/2)/n` quantiles
    /// of the tabulated law and of the closed-form semicircle.
    pub fn classical_locations(&self, n: usize) -> Result<ClassicalLocations> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "classical locations need n >= 1".into(),
            ));
        }
        let mut gamma = Vec::with_capacity(n);
        let mut gamma_sc = Vec::with_capacity(n);
        for i in 1..=n {
            let p = (i as f64 - 0.5) / n as f64;
            gamma.push(self.quantile(p * self.total_mass())?);
            gamma_sc.push(semicircle_quantile(p)?);
        }
        Ok(ClassicalLocations { gamma, gamma_sc })
    }
}

/// Classical (deterministic) eigenvalue locations: the `(i - 1/2)/N`
/// quantiles of the limiting law and of the semicircle reference, ascending.
#[derive(Debug, Clone, Serialize)]
pub struct ClassicalLocations {
    /// Quantiles of the limiting spectral law.
    pub gamma: Vec<f64>,
    /// Quantiles of the unit-variance semicircle.
    pub gamma_sc: Vec<f64>,
}

impl ClassicalLocations {
    pub fn n(&self) -> usize {
        self.gamma.len()
    }
}

/// A packaged solve: transform values over a spectral domain plus the
/// tabulated density and CDF.
#[derive(Debug, Clone)]
pub struct FreeConvSolution {
    pub points: Vec<(SpectralPoint, Region)>,
    pub m_values: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub density: DensityTable,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solver() -> FreeConv {
        FreeConv::standard()
    }

    // ─── base equation ───

    #[test]
    fn large_z_matches_stieltjes_asymptotics() {
        let fc = solver();
        let m = fc.solve(SpectralPoint::new(0.0, 100.0).unwrap()).unwrap();
        assert!((m - Complex64::new(0.0, 0.01)).abs() < 2e-4);
    }

    #[test]
    fn imaginary_axis_gives_purely_imaginary_m() {
        let fc = solver();
        for eta in [0.05, 0.5, 5.0] {
            let m = fc.solve(SpectralPoint::new(0.0, eta).unwrap()).unwrap();
            assert!(m.re.abs() < 1e-12, "Re m = {} at eta = {eta}", m.re);
            assert!(m.im > 0.0);
        }
    }

    #[test]
    fn residual_meets_contract_everywhere_tested() {
        let fc = solver();
        for (e, eta) in [(0.0, 1e-6), (1.5, 1e-4), (4.0, 1e-6), (11.0, 1e-5), (0.3, 2.5)] {
            let (m, res) = fc.solve_detailed(SpectralPoint::new(e, eta).unwrap()).unwrap();
            assert!(res < 1e-12, "residual {res} at ({e}, {eta})");
            assert!(m.im > 0.0);
        }
    }

    #[test]
    fn conjugate_symmetry() {
        let fc = solver();
        for (e, eta) in [(0.7, 0.01), (2.3, 0.5), (5.0, 1e-4)] {
            let mp = fc.solve(SpectralPoint::new(e, eta).unwrap()).unwrap();
            let mm = fc.solve(SpectralPoint::new(-e, eta).unwrap()).unwrap();
            assert!((mm - (-mp.conj())).abs() < 1e-10);
        }
    }

    #[test]
    fn solver_is_deterministic() {
        let fc = solver();
        let p = SpectralPoint::new(0.37, 0.002).unwrap();
        let a = fc.solve(p).unwrap();
        let b = fc.solve(p).unwrap();
        assert_eq!(a.re.to_bits(), b.re.to_bits());
        assert_eq!(a.im.to_bits(), b.im.to_bits());
    }

    #[test]
    fn rejects_invalid_points() {
        assert!(SpectralPoint::new(0.0, 0.0).is_err());
        assert!(SpectralPoint::new(0.0, -1.0).is_err());
        assert!(SpectralPoint::new(f64::NAN, 1.0).is_err());
    }

    // ─── density ───

    #[test]
    fn density_is_symmetric() {
        let fc = solver();
        for e in [0.5, 1.0, 2.0] {
            let a = fc.density(e).unwrap();
            let b = fc.density(-e).unwrap();
            assert!((a - b).abs() < 1e-10, "rho({e}) = {a}, rho({-e}) = {b}");
        }
    }

    #[test]
    fn density_tail_is_negligible() {
        let fc = solver();
        // The tail bound e^{-E^2/8} at E = 12 is ~ 2e-8; the actual density
        // must be at least that small.
        let rho = fc.density(12.0).unwrap();
        assert!(rho < (-144.0_f64 / 8.0).exp());
    }

    // ─── scaled variant ───

    #[test]
    fn scale_one_collapses_to_base() {
        let fc = solver();
        let p = SpectralPoint::new(0.4, 0.05).unwrap();
        let base = fc.solve(p).unwrap();
        let scaled = fc.solve_scaled(p, 0.0, 100).unwrap();
        assert!((base - scaled).abs() < 1e-12);
        let huge_n = fc.solve_scaled(p, 1.0, 1_000_000_000).unwrap();
        assert!((base - huge_n).abs() < 1e-8);
    }

    #[test]
    fn scaled_shift_matches_finite_difference_sensitivity() {
        // The t/N-sized kernel widening moves m by (dm/dscale)*(dscale), with
        // the derivative estimated by central differences as the oracle.
        let fc = solver();
        let p = SpectralPoint::new(0.0, 1.0).unwrap();
        let (t, n) = (0.1, 100usize);
        let base = fc.solve(p).unwrap();
        let scaled = fc.solve_scaled(p, t, n).unwrap();
        let actual = (scaled - base).abs();

        let h = 1e-5;
        let up = fc.solve_with_scale(p, 1.0 + h).unwrap().0;
        let down = fc.solve_with_scale(p, 1.0 - h).unwrap().0;
        let derivative = ((up - down) / (2.0 * h)).abs();
        let dscale = (1.0 + (1.0 - (-t as f64).exp()) / n as f64).sqrt() - 1.0;
        let predicted = derivative * dscale;
        assert!(
            actual <= 2.0 * predicted + 1e-12,
            "shift {actual} vs predicted {predicted}"
        );
        assert!(actual <= t / n as f64, "shift {actual} exceeds t/N");
    }

    // ─── finite-atom variant ───

    #[test]
    fn zero_coupling_is_empirical_transform() {
        let lambdas = [0.3, -1.2, 2.5, 0.0];
        let p = SpectralPoint::new(0.1, 0.02).unwrap();
        let m = solve_mt(&lambdas, p, 0.0, &SolverOptions::default()).unwrap();
        let direct: Complex64 = lambdas
            .iter()
            .map(|&x| 1.0 / (Complex64::new(x, 0.0) - p.z()))
            .sum::<Complex64>()
            / 4.0;
        assert!((m - direct).abs() < 1e-14 * direct.abs().max(1.0));
    }

    #[test]
    fn zero_atoms_unit_coupling_is_semicircle() {
        let lambdas = vec![0.0; 7];
        for (e, eta) in [(0.0, 0.01), (1.0, 0.5), (2.5, 0.1)] {
            let p = SpectralPoint::new(e, eta).unwrap();
            let m = solve_mt(&lambdas, p, 1.0, &SolverOptions::default()).unwrap();
            let closed = semicircle_stieltjes(p.z());
            assert!((m - closed).abs() < 1e-10, "{m} vs {closed} at ({e}, {eta})");
        }
    }

    #[test]
    fn gaussian_atoms_approach_free_convolution() {
        // 5000 iid standard normal atoms with unit coupling approximate the
        // Gaussian-kernel solution at z = i.
        use rand_distr::{Distribution, StandardNormal};
        let mut stream = crate::rng::chacha(99);
        let lambdas: Vec<f64> = (0..5000)
            .map(|_| {
                let s: f64 = StandardNormal.sample(&mut stream);
                s
            })
            .collect();
        let p = SpectralPoint::new(0.0, 1.0).unwrap();
        let mt = solve_mt(&lambdas, p, 1.0, &SolverOptions::default()).unwrap();
        let fc = solver().solve(p).unwrap();
        assert!((mt - fc).abs() < 0.02, "{mt} vs {fc}");
    }

    // ─── stability factor ───

    #[test]
    fn stability_factor_fixtures() {
        // Single atom with w - z - m = i: factor = 1 - 1/i^2 = 2.
        let p = SpectralPoint::new(0.0, 0.4).unwrap();
        let m = Complex64::new(0.0, 0.6);
        let f = stability_factor(&[0.0], p, m);
        assert!((f - Complex64::new(2.0, 0.0)).abs() < 1e-14);

        // Far field: kernel is O(eta^-2).
        let far = SpectralPoint::new(0.0, 100.0).unwrap();
        let f = stability_factor(&[0.5, -0.3, 1.1], far, Complex64::new(0.0, 0.01));
        assert!((f - Complex64::new(1.0, 0.0)).abs() < 1e-3);
    }

    // ─── semicircle helpers ───

    #[test]
    fn semicircle_transform_solves_its_equation() {
        for (e, eta) in [(0.0, 0.01), (1.9, 0.001), (3.0, 0.5)] {
            let z = Complex64::new(e, eta);
            let m = semicircle_stieltjes(z);
            let defect = (m - 1.0 / (-z - m)).abs();
            assert!(defect < 1e-10, "defect {defect} at ({e}, {eta})");
            assert!(m.im > 0.0);
        }
    }

    #[test]
    fn semicircle_cdf_endpoints_and_median() {
        assert_eq!(semicircle_cdf(-2.0), 0.0);
        assert_eq!(semicircle_cdf(2.0), 1.0);
        assert!((semicircle_cdf(0.0) - 0.5).abs() < 1e-15);
        let q = semicircle_quantile(0.05).unwrap();
        assert!((semicircle_cdf(q) - 0.05).abs() < 1e-12);
    }

    // ─── density table ───

    #[test]
    fn quantile_inverts_cdf_on_simple_table() {
        // A uniform density on [0, 1]: cdf(e) = e.
        let rho = vec![1.0; 1001];
        let table = DensityTable::from_density(0.0, 1e-3, rho, 0.0);
        assert!((table.total_mass() - 1.0).abs() < 1e-12);
        for p in [0.1, 0.25, 0.5, 0.9] {
            let q = table.quantile(p).unwrap();
            assert!((q - p).abs() < 1e-9, "quantile({p}) = {q}");
        }
        // Monotone CDF.
        for w in table.cdf().windows(2) {
            assert!(w[1] >= w[0]);
        }
    }

    #[test]
    fn simpson_cdf_is_high_order() {
        // Quadratic density integrates exactly under Simpson.
        let step = 1e-2;
        let rho: Vec<f64> = (0..=100).map(|i| (i as f64 * step).powi(2)).collect();
        let table = DensityTable::from_density(0.0, step, rho, 0.0);
        for i in (0..=100).step_by(20) {
            let e = i as f64 * step;
            let exact = e * e * e / 3.0;
            assert!(
                (table.cdf()[i] - exact).abs() < 1e-12,
                "cdf({e}) = {} vs {exact}",
                table.cdf()[i]
            );
        }
    }
}
