//! Wideband geometric multipath channels over an OFDM subcarrier grid.
//!
//! The ground-truth path parameters are retained with every generated
//! channel so estimation benchmarks can score against them.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::array::{far_field_steering, ArrayConfig};
use crate::error::{Error, Result};

/// Centered symmetric OFDM subcarrier grid (no DC subcarrier):
/// `f_m = f_c + (B/M) (m - (M+1)/2)` for m = 1..M.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SubcarrierGrid {
    pub n_subcarriers: usize,
    pub carrier_hz: f64,
    pub bandwidth_hz: f64,
}

impl SubcarrierGrid {
    pub fn new(n_subcarriers: usize, carrier_hz: f64, bandwidth_hz: f64) -> Result<Self> {
        if n_subcarriers == 0 {
            return Err(Error::invalid("n_subcarriers", "must be >= 1"));
        }
        if !(carrier_hz.is_finite() && carrier_hz > 0.0) {
            return Err(Error::invalid("carrier_hz", "must be finite and > 0"));
        }
        if !(bandwidth_hz.is_finite() && bandwidth_hz >= 0.0) {
            return Err(Error::invalid("bandwidth_hz", "must be finite and >= 0"));
        }
        let grid = SubcarrierGrid {
            n_subcarriers,
            carrier_hz,
            bandwidth_hz,
        };
        if grid.frequency(0) <= 0.0 {
            return Err(Error::invalid(
                "bandwidth_hz",
                "lowest subcarrier frequency must stay > 0",
            ));
        }
        Ok(grid)
    }

    /// Frequency of subcarrier `m` (0-based index).
    pub fn frequency(&self, m: usize) -> f64 {
        let m1 = (m + 1) as f64; // spec grid is 1-based
        let mm = self.n_subcarriers as f64;
        self.carrier_hz + self.bandwidth_hz / mm * (m1 - (mm + 1.0) / 2.0)
    }

    pub fn frequencies(&self) -> Vec<f64> {
        (0..self.n_subcarriers).map(|m| self.frequency(m)).collect()
    }
}

/// One propagation path.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Path {
    pub gain: Complex64,
    pub angle_rad: f64,
    pub delay_s: f64,
    pub range_m: Option<f64>,
}

/// A set of paths making up one user's channel, with validation of the
/// angle and delay budgets.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSet {
    pub paths: Vec<Path>,
}

/// Default cap on path delays (cyclic-prefix budget).
pub const DEFAULT_MAX_DELAY_S: f64 = 20e-9;

impl PathSet {
    pub fn new(paths: Vec<Path>) -> Result<Self> {
        Self::with_delay_cap(paths, DEFAULT_MAX_DELAY_S)
    }

    pub fn with_delay_cap(paths: Vec<Path>, max_delay_s: f64) -> Result<Self> {
        if paths.is_empty() {
            return Err(Error::invalid("paths", "at least one path required"));
        }
        for (l, p) in paths.iter().enumerate() {
            if p.angle_rad.abs() >= PI / 2.0 {
                return Err(Error::invalid(
                    "angle_rad",
                    format!("path {l}: |angle| must be < pi/2"),
                ));
            }
            if !(p.delay_s >= 0.0 && p.delay_s <= max_delay_s) {
                return Err(Error::invalid(
                    "delay_s",
                    format!("path {l}: delay must lie in [0, {max_delay_s}]"),
                ));
            }
        }
        Ok(PathSet { paths })
    }

    /// Draws `n_paths` random paths: angles uniform in `angle_range`,
    /// delays uniform in [0, max_delay], complex normal gains with
    /// E|gain|^2 = 1/L so that E ||h_m||^2 = N.
    pub fn draw<R: Rng + ?Sized>(n_paths: usize, params: &PathDrawParams, rng: &mut R) -> Result<Self> {
        if n_paths == 0 {
            return Err(Error::invalid("n_paths", "must be >= 1"));
        }
        let sigma = (1.0 / n_paths as f64).sqrt();
        let paths = (0..n_paths)
            .map(|_| {
                let angle = rng.gen_range(params.angle_range.0..params.angle_range.1);
                let delay = rng.gen_range(0.0..params.max_delay_s);
                let gain = complex_gaussian(rng, sigma * sigma);
                Path {
                    gain,
                    angle_rad: angle,
                    delay_s: delay,
                    range_m: None,
                }
            })
            .collect();
        PathSet::with_delay_cap(paths, params.max_delay_s)
    }

    /// Like [`PathSet::draw`] with angles snapped to the given sorted grid.
    pub fn draw_on_grid<R: Rng + ?Sized>(
        n_paths: usize,
        params: &PathDrawParams,
        angle_grid: &[f64],
        rng: &mut R,
    ) -> Result<Self> {
        let mut set = Self::draw(n_paths, params, rng)?;
        for p in &mut set.paths {
            let snapped = angle_grid
                .iter()
                .copied()
                .filter(|g| g.abs() < PI / 2.0)
                .min_by(|a, b| {
                    (a - p.angle_rad)
                        .abs()
                        .partial_cmp(&(b - p.angle_rad).abs())
                        .unwrap()
                })
                .unwrap_or(p.angle_rad);
            p.angle_rad = snapped;
        }
        Ok(set)
    }

    pub fn angles(&self) -> Vec<f64> {
        self.paths.iter().map(|p| p.angle_rad).collect()
    }
}

/// Distribution parameters for random path draws.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathDrawParams {
    pub angle_range: (f64, f64),
    pub max_delay_s: f64,
}

impl Default for PathDrawParams {
    fn default() -> Self {
        PathDrawParams {
            angle_range: (-(60.0_f64.to_radians()), 60.0_f64.to_radians()),
            max_delay_s: DEFAULT_MAX_DELAY_S,
        }
    }
}

/// Circularly-symmetric complex Gaussian with variance `sigma2`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, sigma2: f64) -> Complex64 {
    let s = (sigma2 / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(s * re, s * im)
}

/// Single-user wideband channel: one length-N vector per subcarrier plus
/// the generating path set.
#[derive(Debug, Clone, PartialEq)]
pub struct WidebandChannel {
    pub grid: SubcarrierGrid,
    pub h: Vec<DVector<Complex64>>,
    pub truth: PathSet,
}

impl WidebandChannel {
    pub fn n_subcarriers(&self) -> usize {
        self.h.len()
    }
}

/// Wideband scenario: array, grid, RF-chain count, user/target layout and
/// Monte-Carlo settings. This is the root object the harness builds from
/// a parsed config.
#[derive(Debug, Clone, PartialEq)]
pub struct WidebandScenario {
    pub array: ArrayConfig,
    pub grid: SubcarrierGrid,
    pub n_rf: usize,
    pub n_users: usize,
    pub n_paths: usize,
    pub target_angles_rad: Vec<f64>,
    pub snr_db: f64,
    pub eta: f64,
    pub trials: usize,
    pub seed: u64,
    pub theta0_rad: f64,
}

impl WidebandScenario {
    pub fn validate(&self) -> Result<()> {
        if self.n_rf == 0 || self.n_rf > self.array.n_antennas {
            return Err(Error::invalid("n_rf", "requires 1 <= n_rf <= n_antennas"));
        }
        if !(0.0..=1.0).contains(&self.eta) {
            return Err(Error::invalid("eta", "must lie in [0, 1]"));
        }
        if self.trials == 0 {
            return Err(Error::invalid("trials", "must be >= 1"));
        }
        if self.grid.carrier_hz != self.array.carrier_hz {
            return Err(Error::invalid(
                "carrier_hz",
                "array and subcarrier grid must share the carrier",
            ));
        }
        Ok(())
    }
}

/// Generates the per-subcarrier channel vectors
/// `h_m = Σ_l gain_l · exp(-i 2π f_m τ_l) · a_m(θ_l)`.
pub fn generate_channel(
    array: &ArrayConfig,
    grid: &SubcarrierGrid,
    user_paths: &PathSet,
) -> Result<WidebandChannel> {
    if user_paths.paths.is_empty() {
        return Err(Error::invalid("paths", "empty path set"));
    }
    let mut h = Vec::with_capacity(grid.n_subcarriers);
    for m in 0..grid.n_subcarriers {
        let f_m = grid.frequency(m);
        let mut hm = DVector::from_element(array.n_antennas, Complex64::new(0.0, 0.0));
        for p in &user_paths.paths {
            let a = far_field_steering(array, f_m, p.angle_rad)?;
            let rot = Complex64::from_polar(1.0, -2.0 * PI * f_m * p.delay_s);
            hm += a.as_vector() * (p.gain * rot);
        }
        h.push(hm);
    }
    Ok(WidebandChannel {
        grid: *grid,
        h,
        truth: user_paths.clone(),
    })
}

/// Stacks single-user channels into per-subcarrier N x U matrices
/// (column u is user u's channel).
pub fn stack_users(channels: &[WidebandChannel]) -> Result<Vec<DMatrix<Complex64>>> {
    let first = channels
        .first()
        .ok_or_else(|| Error::invalid("channels", "need at least one user"))?;
    let m_count = first.n_subcarriers();
    let n = first.h[0].len();
    let mut out = Vec::with_capacity(m_count);
    for m in 0..m_count {
        let mut mat = DMatrix::zeros(n, channels.len());
        for (u, ch) in channels.iter().enumerate() {
            if ch.n_subcarriers() != m_count || ch.h[m].len() != n {
                return Err(Error::DimensionMismatch(
                    "user channels disagree on dimensions".into(),
                ));
            }
            mat.set_column(u, &ch.h[m]);
        }
        out.push(mat);
    }
    Ok(out)
}

/// Noise standard deviation for a target per-sample SNR against an
/// average signal power.
fn noise_sigma2(avg_power: f64, snr_db: f64) -> Result<f64> {
    if snr_db.is_infinite() && snr_db > 0.0 {
        return Ok(0.0);
    }
    if avg_power <= 0.0 {
        return Err(Error::invalid(
            "signal",
            "zero-power signal with finite SNR requested",
        ));
    }
    Ok(avg_power / 10f64.powf(snr_db / 10.0))
}

/// Adds circularly-symmetric complex Gaussian noise calibrated so the
/// per-sample SNR equals `snr_db` against the signal's average power.
/// `snr_db = +inf` is the noiseless sentinel.
pub fn add_awgn<R: Rng + ?Sized>(
    signal: &DVector<Complex64>,
    snr_db: f64,
    rng: &mut R,
) -> Result<DVector<Complex64>> {
    if signal.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::invalid("signal", "must be finite"));
    }
    let avg_power = signal.iter().map(|z| z.norm_sqr()).sum::<f64>() / signal.len().max(1) as f64;
    let sigma2 = noise_sigma2(avg_power, snr_db)?;
    if sigma2 == 0.0 {
        return Ok(signal.clone());
    }
    let mut out = signal.clone();
    for z in out.iter_mut() {
        *z += complex_gaussian(rng, sigma2);
    }
    Ok(out)
}

/// Received pilot observations `y_m = W_m^H h_m + noise` for unit pilot
/// symbols, stacked over training frames.
///
/// `combiners[frame][m]` is the N x Kw combining matrix used at frame
/// `frame`, subcarrier `m`; callers re-draw combiners per frame when they
/// want measurement diversity. Output: per subcarrier, a Kw x F matrix
/// with one column per frame. Noise power is calibrated against the mean
/// power of the noiseless observations across all frames and subcarriers.
pub fn received_pilots<R: Rng + ?Sized>(
    channel: &WidebandChannel,
    combiners: &[Vec<DMatrix<Complex64>>],
    snr_db: f64,
    rng: &mut R,
) -> Result<Vec<DMatrix<Complex64>>> {
    let frames = combiners.len();
    if frames == 0 {
        return Err(Error::invalid("combiners", "need at least one frame"));
    }
    let m_count = channel.n_subcarriers();
    let n = channel.h[0].len();
    let kw = combiners[0][0].ncols();
    for per_frame in combiners {
        if per_frame.len() != m_count {
            return Err(Error::DimensionMismatch(
                "combiner frame does not cover all subcarriers".into(),
            ));
        }
        for w in per_frame {
            if w.nrows() != n || w.ncols() != kw {
                return Err(Error::DimensionMismatch(format!(
                    "combiner is {}x{}, expected {}x{}",
                    w.nrows(),
                    w.ncols(),
                    n,
                    kw
                )));
            }
        }
    }

    let mut clean: Vec<DMatrix<Complex64>> = Vec::with_capacity(m_count);
    let mut power_acc = 0.0;
    let mut count = 0usize;
    for m in 0..m_count {
        let mut obs = DMatrix::zeros(kw, frames);
        for (f, per_frame) in combiners.iter().enumerate() {
            let y = per_frame[m].adjoint() * &channel.h[m];
            power_acc += y.iter().map(|z| z.norm_sqr()).sum::<f64>();
            count += y.len();
            obs.set_column(f, &y);
        }
        clean.push(obs);
    }
    let avg_power = power_acc / count.max(1) as f64;
    let sigma2 = noise_sigma2(avg_power, snr_db).or_else(|e| {
        // A zero channel still yields calibrated noise when the caller
        // requested a finite SNR against zero power: reject as specified.
        Err(e)
    })?;
    if sigma2 == 0.0 {
        return Ok(clean);
    }
    for obs in &mut clean {
        for z in obs.iter_mut() {
            *z += complex_gaussian(rng, sigma2);
        }
    }
    Ok(clean)
}

/// Random unit-modulus combining matrix (entries `exp(i φ)/√N`).
pub fn random_phase_combiner<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    rng: &mut R,
) -> DMatrix<Complex64> {
    let scale = 1.0 / (n as f64).sqrt();
    DMatrix::from_fn(n, k, |_, _| {
        Complex64::from_polar(scale, rng.gen_range(0.0..2.0 * PI))
    })
}
