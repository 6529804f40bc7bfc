//! Frequency-dependent array responses for a uniform linear array, plus
//! array imperfection models (mutual coupling, gain/phase mismatch) and
//! subarray selection operators.
//!
//! Phase convention: element `n` of the far-field steering vector is
//! `exp(-i 2π (f/c) n d sinθ)` with element 0 as the phase reference. The
//! near-field response uses exact spherical distances and reduces to the
//! far-field vector entrywise as the range grows.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Supported array geometries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Geometry {
    UniformLinear,
}

/// Uniform linear array description: element count, carrier frequency and
/// element spacing. Spacing defaults to half the carrier wavelength, which
/// is exactly the subcarrier-independent hardware premise that produces
/// beam-squint over wide bandwidths.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArrayConfig {
    pub n_antennas: usize,
    pub carrier_hz: f64,
    pub spacing_m: f64,
    pub geometry: Geometry,
}

impl ArrayConfig {
    /// Half-wavelength-spaced ULA at the given carrier.
    pub fn half_wavelength(n_antennas: usize, carrier_hz: f64) -> Result<Self> {
        if carrier_hz <= 0.0 || !carrier_hz.is_finite() {
            return Err(Error::invalid("carrier_hz", "must be finite and > 0"));
        }
        Self::new(n_antennas, carrier_hz, SPEED_OF_LIGHT / (2.0 * carrier_hz))
    }

    pub fn new(n_antennas: usize, carrier_hz: f64, spacing_m: f64) -> Result<Self> {
        if n_antennas < 2 {
            return Err(Error::invalid("n_antennas", "must be >= 2"));
        }
        if carrier_hz <= 0.0 || !carrier_hz.is_finite() {
            return Err(Error::invalid("carrier_hz", "must be finite and > 0"));
        }
        if spacing_m <= 0.0 || !spacing_m.is_finite() {
            return Err(Error::invalid("spacing_m", "must be finite and > 0"));
        }
        Ok(ArrayConfig {
            n_antennas,
            carrier_hz,
            spacing_m,
            geometry: Geometry::UniformLinear,
        })
    }

    /// Physical aperture (N-1) * d.
    pub fn aperture_m(&self) -> f64 {
        (self.n_antennas as f64 - 1.0) * self.spacing_m
    }
}

/// Complex array response with one unit-modulus entry per antenna
/// (before imperfections are applied).
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringVector(pub DVector<Complex64>);

impl SteeringVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_vector(&self) -> &DVector<Complex64> {
        &self.0
    }

    pub fn into_vector(self) -> DVector<Complex64> {
        self.0
    }
}

/// Mutual-coupling and gain/phase-mismatch parameters.
///
/// The coupling matrix is banded Toeplitz with unit diagonal and entries
/// `mc_coeff^|i-j|` inside the band. GPM gains are drawn once per trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImperfectionModel {
    pub mc_band: usize,
    pub mc_coeff: Complex64,
    pub gpm_gain_std: f64,
    pub gpm_phase_std_rad: f64,
}

impl ImperfectionModel {
    pub fn none() -> Self {
        ImperfectionModel {
            mc_band: 0,
            mc_coeff: Complex64::new(0.0, 0.0),
            gpm_gain_std: 0.0,
            gpm_phase_std_rad: 0.0,
        }
    }
}

fn check_angle(theta_rad: f64) -> Result<()> {
    if !theta_rad.is_finite() {
        return Err(Error::invalid("theta_rad", "must be finite"));
    }
    if theta_rad.abs() > PI / 2.0 {
        return Err(Error::invalid("theta_rad", "must satisfy |theta| <= pi/2"));
    }
    Ok(())
}

/// Far-field (plane-wave) steering vector at frequency `f_hz` toward
/// `theta_rad`. Entry n is `exp(-i 2π (f/c) n d sinθ)`.
pub fn far_field_steering(cfg: &ArrayConfig, f_hz: f64, theta_rad: f64) -> Result<SteeringVector> {
    if !f_hz.is_finite() || f_hz <= 0.0 {
        return Err(Error::invalid("f_hz", "must be finite and > 0"));
    }
    check_angle(theta_rad)?;
    let k = 2.0 * PI * f_hz / SPEED_OF_LIGHT * cfg.spacing_m * theta_rad.sin();
    let v = DVector::from_iterator(
        cfg.n_antennas,
        (0..cfg.n_antennas).map(|n| Complex64::from_polar(1.0, -k * n as f64)),
    );
    Ok(SteeringVector(v))
}

/// Near-field (spherical-wave) steering vector for a source at
/// (`theta_rad`, `range_m`), element 0 as the phase and range reference.
///
/// Element n sits at coordinate -n*d along the array axis so that the
/// exact spherical distance r_n = sqrt(r^2 + (nd)^2 + 2 r n d sinθ)
/// converges entrywise to the far-field convention above as r grows.
pub fn near_field_steering(
    cfg: &ArrayConfig,
    f_hz: f64,
    theta_rad: f64,
    range_m: f64,
) -> Result<SteeringVector> {
    if !f_hz.is_finite() || f_hz <= 0.0 {
        return Err(Error::invalid("f_hz", "must be finite and > 0"));
    }
    if !range_m.is_finite() || range_m <= 0.0 {
        return Err(Error::invalid("range_m", "must be finite and > 0"));
    }
    check_angle(theta_rad)?;
    let d = cfg.spacing_m;
    let wavenum = 2.0 * PI * f_hz / SPEED_OF_LIGHT;
    let sin_t = theta_rad.sin();
    let v = DVector::from_iterator(
        cfg.n_antennas,
        (0..cfg.n_antennas).map(|n| {
            let nd = n as f64 * d;
            let r_n = (range_m * range_m + nd * nd + 2.0 * range_m * nd * sin_t).sqrt();
            Complex64::from_polar(1.0, -wavenum * (r_n - range_m))
        }),
    );
    Ok(SteeringVector(v))
}

/// Banded Toeplitz mutual-coupling matrix: unit diagonal, `mc_coeff^|i-j|`
/// for 0 < |i-j| <= mc_band, zero beyond the band. Symmetric by construction.
pub fn mutual_coupling_matrix(
    cfg: &ArrayConfig,
    imp: &ImperfectionModel,
) -> Result<DMatrix<Complex64>> {
    let n = cfg.n_antennas;
    if imp.mc_band >= n {
        return Err(Error::invalid("mc_band", "must be < n_antennas"));
    }
    if imp.mc_band > 0 && imp.mc_coeff.norm() >= 1.0 {
        return Err(Error::invalid("mc_coeff", "requires |mc_coeff| < 1"));
    }
    // Powers of the coupling coefficient by lag.
    let mut pow = vec![Complex64::new(1.0, 0.0); imp.mc_band + 1];
    for b in 1..=imp.mc_band {
        pow[b] = pow[b - 1] * imp.mc_coeff;
    }
    let mut m = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let lag = i.abs_diff(j);
            if lag == 0 {
                m[(i, j)] = Complex64::new(1.0, 0.0);
            } else if lag <= imp.mc_band {
                m[(i, j)] = pow[lag];
            }
        }
    }
    Ok(m)
}

/// Per-antenna gain/phase mismatch draws, fixed for one Monte-Carlo trial:
/// amplitude `exp(g)` with g ~ N(0, gain_std^2), phase ~ N(0, phase_std^2).
pub fn gpm_draws<R: Rng + ?Sized>(
    cfg: &ArrayConfig,
    imp: &ImperfectionModel,
    rng: &mut R,
) -> DVector<Complex64> {
    DVector::from_iterator(
        cfg.n_antennas,
        (0..cfg.n_antennas).map(|_| {
            let g: f64 = rng.sample::<f64, _>(StandardNormal) * imp.gpm_gain_std;
            let p: f64 = rng.sample::<f64, _>(StandardNormal) * imp.gpm_phase_std_rad;
            Complex64::from_polar(g.exp(), p)
        }),
    )
}

/// Applies imperfections to a steering vector: `diag(gpm) * mc * v`.
pub fn apply_imperfections(
    v: &SteeringVector,
    mc: &DMatrix<Complex64>,
    gpm: &DVector<Complex64>,
) -> Result<DVector<Complex64>> {
    let n = v.len();
    if mc.nrows() != n || mc.ncols() != n {
        return Err(Error::DimensionMismatch(format!(
            "mc is {}x{}, steering vector has {} entries",
            mc.nrows(),
            mc.ncols(),
            n
        )));
    }
    if gpm.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "gpm has {} entries, steering vector has {}",
            gpm.len(),
            n
        )));
    }
    let mut out = mc * v.as_vector();
    for (o, g) in out.iter_mut().zip(gpm.iter()) {
        *o *= g;
    }
    Ok(out)
}

/// Q x N zero/one selection operator keeping `indices` in order.
pub fn subarray_mask(cfg: &ArrayConfig, indices: &[usize]) -> Result<DMatrix<Complex64>> {
    validate_subarray_indices(cfg.n_antennas, indices)?;
    let mut m = DMatrix::zeros(indices.len(), cfg.n_antennas);
    for (row, &idx) in indices.iter().enumerate() {
        m[(row, idx)] = Complex64::new(1.0, 0.0);
    }
    Ok(m)
}

/// Checks a subarray index set: sorted, in range, no duplicates.
pub fn validate_subarray_indices(n_antennas: usize, indices: &[usize]) -> Result<()> {
    if indices.is_empty() {
        return Err(Error::invalid("indices", "must be nonempty"));
    }
    for pair in indices.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::invalid(
                "indices",
                "must be strictly increasing (sorted, no duplicates)",
            ));
        }
    }
    if *indices.last().unwrap() >= n_antennas {
        return Err(Error::invalid(
            "indices",
            format!("index {} out of range 0..{}", indices.last().unwrap(), n_antennas),
        ));
    }
    Ok(())
}

/// Keeps the selected entries of a vector, in index order.
pub fn select_entries(v: &DVector<Complex64>, indices: &[usize]) -> DVector<Complex64> {
    DVector::from_iterator(indices.len(), indices.iter().map(|&i| v[i]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn cfg_n(n: usize) -> ArrayConfig {
        ArrayConfig::half_wavelength(n, 300e9).unwrap()
    }

    #[test]
    fn broadside_steering_is_all_ones() {
        let cfg = cfg_n(4);
        let v = far_field_steering(&cfg, 123e9, 0.0).unwrap();
        for z in v.as_vector().iter() {
            assert_relative_eq!(z.re, 1.0, epsilon = 1e-14);
            assert_relative_eq!(z.im, 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn half_wavelength_endfire_two_elements() {
        let cfg = cfg_n(2);
        let v = far_field_steering(&cfg, cfg.carrier_hz, PI / 2.0).unwrap();
        let v = v.as_vector();
        assert_relative_eq!(v[0].re, 1.0, epsilon = 1e-12);
        // exp(-i pi) = -1
        assert_relative_eq!(v[1].re, -1.0, epsilon = 1e-12);
        assert!(v[1].im.abs() < 1e-12);
    }

    #[test]
    fn steering_inner_product_matches_bruteforce_sum() {
        // N=128 at 300 GHz carrier, response at 315 GHz, 60 degrees.
        let cfg = cfg_n(128);
        let theta = 60.0_f64.to_radians();
        let a_m = far_field_steering(&cfg, 315e9, theta).unwrap();
        let a_c = far_field_steering(&cfg, cfg.carrier_hz, theta).unwrap();
        let ip = a_m.as_vector().dotc(a_c.as_vector()).norm();

        // Brute-force summation oracle over elements.
        let d = cfg.spacing_m;
        let mut acc = Complex64::new(0.0, 0.0);
        for n in 0..128 {
            let ph_m = -2.0 * PI * 315e9 / SPEED_OF_LIGHT * n as f64 * d * theta.sin();
            let ph_c = -2.0 * PI * 300e9 / SPEED_OF_LIGHT * n as f64 * d * theta.sin();
            acc += Complex64::from_polar(1.0, ph_c - ph_m);
        }
        assert_relative_eq!(ip, acc.norm(), max_relative = 1e-10);
    }

    #[test]
    fn near_field_far_limit_matches_far_field() {
        let cfg = cfg_n(64);
        let theta = 37.0_f64.to_radians();
        let r = 1e6 * cfg.aperture_m();
        let near = near_field_steering(&cfg, 310e9, theta, r).unwrap();
        let far = far_field_steering(&cfg, 310e9, theta).unwrap();
        for (a, b) in near.as_vector().iter().zip(far.as_vector().iter()) {
            let dphi = (a * b.conj()).arg().abs();
            assert!(dphi < 1e-3, "phase gap {dphi}");
        }
    }

    #[test]
    fn near_field_last_element_matches_scalar_geometry() {
        // Broadside at 20 m: element N-1 phase from the direct distance.
        let cfg = cfg_n(128);
        let r = 20.0;
        let v = near_field_steering(&cfg, cfg.carrier_hz, 0.0, r).unwrap();
        let nd = 127.0 * cfg.spacing_m;
        let dist = (r * r + nd * nd).sqrt();
        let expect = -2.0 * PI * cfg.carrier_hz / SPEED_OF_LIGHT * (dist - r);
        let got = v.as_vector()[127].arg();
        // compare as complex phases to avoid 2-pi wrapping
        let gap = (Complex64::from_polar(1.0, got) * Complex64::from_polar(1.0, -expect)).arg();
        assert!(gap.abs() < 1e-9, "gap {gap}");
    }

    #[test]
    fn near_field_rejects_bad_range() {
        let cfg = cfg_n(8);
        assert!(near_field_steering(&cfg, 300e9, 0.1, 0.0).is_err());
        assert!(near_field_steering(&cfg, 300e9, 0.1, -5.0).is_err());
    }

    #[test]
    fn mc_band_zero_is_identity() {
        let cfg = cfg_n(5);
        let m = mutual_coupling_matrix(&cfg, &ImperfectionModel::none()).unwrap();
        assert_eq!(m, DMatrix::identity(5, 5));
    }

    #[test]
    fn mc_tridiagonal_case() {
        let cfg = cfg_n(3);
        let imp = ImperfectionModel {
            mc_band: 1,
            mc_coeff: Complex64::new(0.0, 0.2),
            gpm_gain_std: 0.0,
            gpm_phase_std_rad: 0.0,
        };
        let m = mutual_coupling_matrix(&cfg, &imp).unwrap();
        assert_eq!(m[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(m[(0, 1)], Complex64::new(0.0, 0.2));
        assert_eq!(m[(1, 0)], Complex64::new(0.0, 0.2));
        assert_eq!(m[(0, 2)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn mc_rejects_diverging_coupling() {
        let cfg = cfg_n(4);
        let imp = ImperfectionModel {
            mc_band: 1,
            mc_coeff: Complex64::new(1.0, 0.5),
            gpm_gain_std: 0.0,
            gpm_phase_std_rad: 0.0,
        };
        assert!(mutual_coupling_matrix(&cfg, &imp).is_err());
    }

    #[test]
    fn identity_imperfections_leave_vector_unchanged() {
        let cfg = cfg_n(6);
        let v = far_field_steering(&cfg, 300e9, 0.3).unwrap();
        let mc = DMatrix::identity(6, 6);
        let gpm = DVector::from_element(6, Complex64::new(1.0, 0.0));
        let out = apply_imperfections(&v, &mc, &gpm).unwrap();
        assert_eq!(&out, v.as_vector());
    }

    #[test]
    fn gpm_norm_change_matches_stored_draws() {
        use rand::SeedableRng;
        let cfg = cfg_n(32);
        let imp = ImperfectionModel {
            mc_band: 0,
            mc_coeff: Complex64::new(0.0, 0.0),
            gpm_gain_std: 0.1,
            gpm_phase_std_rad: 0.05,
        };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let gpm = gpm_draws(&cfg, &imp, &mut rng);
        let v = far_field_steering(&cfg, 300e9, 0.5).unwrap();
        let mc = DMatrix::identity(32, 32);
        let out = apply_imperfections(&v, &mc, &gpm).unwrap();
        // Recompute the expected norm from the stored draws.
        let expect: f64 = gpm.iter().map(|g| g.norm_sqr()).sum::<f64>().sqrt();
        assert_relative_eq!(out.norm(), expect, max_relative = 1e-12);
    }

    #[test]
    fn apply_imperfections_checks_dimensions() {
        let cfg = cfg_n(4);
        let v = far_field_steering(&cfg, 300e9, 0.0).unwrap();
        let mc = DMatrix::identity(3, 3);
        let gpm = DVector::from_element(4, Complex64::new(1.0, 0.0));
        assert!(apply_imperfections(&v, &mc, &gpm).is_err());
    }

    #[test]
    fn full_mask_is_identity_action() {
        let cfg = cfg_n(4);
        let idx: Vec<usize> = (0..4).collect();
        let m = subarray_mask(&cfg, &idx).unwrap();
        let v = far_field_steering(&cfg, 300e9, 0.4).unwrap();
        let picked = &m * v.as_vector();
        assert_eq!(&picked, v.as_vector());
    }

    #[test]
    fn singleton_mask_takes_first_entry() {
        let cfg = cfg_n(4);
        let m = subarray_mask(&cfg, &[0]).unwrap();
        let v = far_field_steering(&cfg, 300e9, 0.4).unwrap();
        let picked = &m * v.as_vector();
        assert_eq!(picked.len(), 1);
        assert_eq!(picked[0], v.as_vector()[0]);
    }

    #[test]
    fn uniform_eight_of_128_gain_matches_direct_sum() {
        let cfg = cfg_n(128);
        let idx: Vec<usize> = (0..8).map(|i| i * 16).collect();
        let m = subarray_mask(&cfg, &idx).unwrap();
        let theta = 25.0_f64.to_radians();
        let a = far_field_steering(&cfg, 310e9, theta).unwrap();
        let picked = &m * a.as_vector();
        let gain = picked.iter().sum::<Complex64>().norm();

        let d = cfg.spacing_m;
        let mut acc = Complex64::new(0.0, 0.0);
        for &i in &idx {
            let ph = -2.0 * PI * 310e9 / SPEED_OF_LIGHT * i as f64 * d * theta.sin();
            acc += Complex64::from_polar(1.0, ph);
        }
        assert_relative_eq!(gain, acc.norm(), max_relative = 1e-12);
    }

    #[test]
    fn mask_rejects_duplicates_and_out_of_range() {
        let cfg = cfg_n(8);
        assert!(subarray_mask(&cfg, &[1, 1, 2]).is_err());
        assert!(subarray_mask(&cfg, &[5, 9]).is_err());
        assert!(subarray_mask(&cfg, &[]).is_err());
    }
}
