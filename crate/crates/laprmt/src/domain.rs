//! Spectral domains: the structured grids of complex points `z = E + i eta`
//! on which local laws are checked.
//!
//! A domain splits into three regions around the spectral scale `xi = N^nu`:
//! a wide high-`eta` band over all energies, a bulk strip of central energies
//! reaching down to the finest scale `xi^3/N`, and exterior strips beyond
//! `2 xi` at the same fine scales. Grids are anchored (at `E = 0`, or at the
//! exterior boundary `2 xi`) and descend logarithmically in `eta` with an
//! exact clamp at the region floor, so refining a grid produces a superset of
//! its points and the minimum `eta` is hit exactly.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::freeconv::SpectralPoint;

/// Which part of the spectral domain a grid point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Region {
    /// High-`eta` band: all energies `|E| <= 2 xi + L`, `2 <= eta <= L`.
    Wide,
    /// Central strip: `|E| <= L`, `xi^3/N <= eta <= 2`.
    Bulk,
    /// Beyond the spectral edge: `2 xi <= |E| <= 2 xi + L`, same fine `eta`.
    Exterior,
}

impl Region {
    pub fn tag(self) -> &'static str {
        match self {
            Region::Wide => "wide",
            Region::Bulk => "bulk",
            Region::Exterior => "exterior",
        }
    }
}

/// Grid density knobs.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GridOptions {
    /// Logarithmic `eta` points per decade.
    pub eta_per_decade: usize,
    /// Uniform energy step.
    pub e_step: f64,
}

impl Default for GridOptions {
    fn default() -> Self {
        Self {
            eta_per_decade: 8,
            e_step: 0.25,
        }
    }
}

impl GridOptions {
    /// Doubles both grid densities; the refined domain's points form a
    /// superset of the original's.
    pub fn refined(self) -> Self {
        Self {
            eta_per_decade: self.eta_per_decade * 2,
            e_step: self.e_step / 2.0,
        }
    }
}

/// A tagged grid of spectral points for one `(L, N, nu)` choice.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralDomain {
    l: f64,
    n: usize,
    nu: f64,
    xi: f64,
    options: GridOptions,
    points: Vec<(SpectralPoint, Region)>,
}

impl SpectralDomain {
    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn options(&self) -> GridOptions {
        self.options
    }

    /// Floor of `eta` in the bulk and exterior regions: `xi^3 / N`.
    pub fn eta_floor(&self) -> f64 {
        self.xi.powi(3) / self.n as f64
    }

    pub fn points(&self) -> &[(SpectralPoint, Region)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn region_points(&self, region: Region) -> impl Iterator<Item = SpectralPoint> + '_ {
        self.points
            .iter()
            .filter(move |(_, r)| *r == region)
            .map(|(p, _)| *p)
    }
}

/// Descending logarithmic `eta` ladder from `top` to `floor`: steps of
/// `10^{-1/per_decade}` starting at `top`, with `floor` appended exactly.
fn eta_ladder(top: f64, floor: f64, per_decade: usize) -> Vec<f64> {
    debug_assert!(top >= floor && floor > 0.0);
    let ratio = 10.0_f64.powf(-1.0 / per_decade as f64);
    let mut out = Vec::new();
    let mut eta = top;
    // Strictly above the floor with a relative guard so the clamp does not
    // duplicate the last ladder point.
    while eta > floor * (1.0 + 1e-12) {
        out.push(eta);
        eta = top * ratio.powi(out.len() as i32);
    }
    out.push(floor);
    out
}

/// Symmetric anchored energy grid: multiples of `step` with `|E| <= emax`.
fn centered_energies(emax: f64, step: f64) -> Vec<f64> {
    let kmax = (emax / step * (1.0 + 1e-12)).floor() as i64;
    (-kmax..=kmax).map(|k| k as f64 * step).collect()
}

/// Builds the three-region spectral domain for dimension parameter `n`,
/// window half-width `l`, and scale exponent `nu`.
pub fn build_domain(l: f64, n: usize, nu: f64, options: GridOptions) -> Result<SpectralDomain> {
    if l <= 0.0 || !l.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "domain half-width must be positive, got {l}"
        )));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("domain needs n >= 1".into()));
    }
    if nu <= 0.0 || nu >= 0.5 {
        return Err(Error::InvalidParameter(format!(
            "scale exponent nu = {nu} outside (0, 1/2)"
        )));
    }
    if options.eta_per_decade == 0 || options.e_step <= 0.0 {
        return Err(Error::InvalidParameter(
            "grid options must have positive densities".into(),
        ));
    }
    let xi = (n as f64).powf(nu);
    let floor = xi.powi(3) / n as f64;
    if floor >= 2.0 {
        return Err(Error::InvalidParameter(format!(
            "fine-scale floor xi^3/N = {floor} reaches the crossover eta = 2; \
             increase N or decrease nu"
        )));
    }
    let mut points = Vec::new();

    // Wide band: every energy, eta in [2, max(L, 2)].
    let top = l.max(2.0);
    for &eta in &eta_ladder(top, 2.0, options.eta_per_decade) {
        for &e in &centered_energies(2.0 * xi + l, options.e_step) {
            points.push((SpectralPoint::new(e, eta)?, Region::Wide));
        }
    }

    // Bulk strip: central energies, fine eta.
    let fine = eta_ladder(2.0, floor, options.eta_per_decade);
    for &eta in &fine {
        for &e in &centered_energies(l, options.e_step) {
            points.push((SpectralPoint::new(e, eta)?, Region::Bulk));
        }
    }

    // Exterior strips: energies anchored at +-2 xi, fine eta.
    let offsets: Vec<f64> = {
        let kmax = (l / options.e_step * (1.0 + 1e-12)).floor() as i64;
        (0..=kmax).map(|k| k as f64 * options.e_step).collect()
    };
    for &eta in &fine {
        for &off in &offsets {
            points.push((SpectralPoint::new(2.0 * xi + off, eta)?, Region::Exterior));
            points.push((SpectralPoint::new(-(2.0 * xi + off), eta)?, Region::Exterior));
        }
    }

    Ok(SpectralDomain {
        l,
        n,
        nu,
        xi,
        options,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_domain() -> SpectralDomain {
        build_domain(5.0, 1000, 0.1, GridOptions::default()).unwrap()
    }

    #[test]
    fn every_point_satisfies_its_region_inequalities() {
        let d = default_domain();
        let xi = d.xi();
        let l = d.l();
        let floor = d.eta_floor();
        let tol = 1e-9;
        for (p, region) in d.points() {
            match region {
                Region::Wide => {
                    assert!(p.e().abs() <= 2.0 * xi + l + tol);
                    assert!(p.eta() >= 2.0 - tol && p.eta() <= l.max(2.0) + tol);
                }
                Region::Bulk => {
                    assert!(p.e().abs() <= l + tol);
                    assert!(p.eta() >= floor - tol && p.eta() <= 2.0 + tol);
                }
                Region::Exterior => {
                    assert!(p.e().abs() >= 2.0 * xi - tol);
                    assert!(p.e().abs() <= 2.0 * xi + l + tol);
                    assert!(p.eta() >= floor - tol && p.eta() <= 2.0 + tol);
                }
            }
        }
    }

    #[test]
    fn bulk_minimum_eta_is_exact() {
        let d = default_domain();
        let min_eta = d
            .region_points(Region::Bulk)
            .map(|p| p.eta())
            .fold(f64::INFINITY, f64::min);
        assert_eq!(min_eta, d.eta_floor());
        let min_ext = d
            .region_points(Region::Exterior)
            .map(|p| p.eta())
            .fold(f64::INFINITY, f64::min);
        assert_eq!(min_ext, d.eta_floor());
    }

    #[test]
    fn refinement_nests() {
        let coarse = default_domain();
        let fine = build_domain(5.0, 1000, 0.1, GridOptions::default().refined()).unwrap();
        let key = |p: SpectralPoint| (p.e().to_bits(), p.eta().to_bits());
        let fine_set: std::collections::HashSet<_> =
            fine.points().iter().map(|(p, _)| key(*p)).collect();
        for (p, _) in coarse.points() {
            assert!(
                fine_set.contains(&key(*p)),
                "coarse point ({}, {}) missing from refined grid",
                p.e(),
                p.eta()
            );
        }
        assert!(fine.len() > 2 * coarse.len());
    }

    #[test]
    fn ladder_endpoints_exact() {
        let ladder = eta_ladder(2.0, 0.007, 8);
        assert_eq!(ladder[0], 2.0);
        assert_eq!(*ladder.last().unwrap(), 0.007);
        for w in ladder.windows(2) {
            assert!(w[0] > w[1]);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(build_domain(0.0, 100, 0.1, GridOptions::default()).is_err());
        assert!(build_domain(5.0, 0, 0.1, GridOptions::default()).is_err());
        assert!(build_domain(5.0, 100, 0.6, GridOptions::default()).is_err());
        // xi^3/N >= 2 is unusable.
        assert!(build_domain(5.0, 2, 0.49, GridOptions::default()).is_err());
    }

    #[test]
    fn energy_grid_is_symmetric_and_anchored() {
        let d = default_domain();
        for (p, r) in d.points() {
            if *r == Region::Bulk {
                // Anchored at zero: E is an exact multiple of the step.
                let k = p.e() / d.options().e_step;
                assert_eq!(k, k.round());
            }
        }
    }
}
