//! Transmitter designs compared under beam-squint: fully digital
//! subcarrier-dependent beamforming, OMP-based hybrid beamforming with and
//! without digital phase correction, TTD delay-phase precoding,
//! subcarrier-dependent phase-shifter networks and beam broadening, plus
//! the spectral-efficiency metric.
//!
//! Channel matrices are U x N per subcarrier (one row per single-antenna
//! user); beamformers are N x S with `||F_m||_F^2` equal to the power
//! budget after normalization.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::array::{far_field_steering, ArrayConfig, SPEED_OF_LIGHT};
use crate::channel::{SubcarrierGrid, WidebandChannel};
use crate::error::{Error, Result};
use crate::linalg;

/// Default transmit power budget (`||F_m||_F^2` per subcarrier).
pub const DEFAULT_POWER: f64 = 1.0;

/// The transmitter architectures compared by the harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BeamformerKind {
    DigitalSd,
    HybridPlain,
    HybridPhaseCorrected,
    HybridTtdDpp,
    AnalogSdPs,
    BeamBroadened,
}

impl BeamformerKind {
    pub const ALL: [BeamformerKind; 6] = [
        BeamformerKind::DigitalSd,
        BeamformerKind::HybridPlain,
        BeamformerKind::HybridPhaseCorrected,
        BeamformerKind::HybridTtdDpp,
        BeamformerKind::AnalogSdPs,
        BeamformerKind::BeamBroadened,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BeamformerKind::DigitalSd => "digital-sd",
            BeamformerKind::HybridPlain => "hybrid-plain",
            BeamformerKind::HybridPhaseCorrected => "hybrid-phase-corrected",
            BeamformerKind::HybridTtdDpp => "hybrid-ttd-dpp",
            BeamformerKind::AnalogSdPs => "analog-sd-ps",
            BeamformerKind::BeamBroadened => "beam-broadened",
        }
    }
}

impl std::str::FromStr for BeamformerKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BeamformerKind::ALL
            .iter()
            .copied()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::invalid("beamformer", format!("unknown kind `{s}`")))
    }
}

/// True-time-delay network: `n_ttd_per_rf` delay elements per RF chain,
/// each feeding a contiguous block of `N / n_ttd_per_rf` antennas.
#[derive(Debug, Clone, PartialEq)]
pub struct TtdNetwork {
    pub n_ttd_per_rf: usize,
    /// K x K_T delays in seconds, all nonnegative.
    pub delays_s: DMatrix<f64>,
    pub max_delay_s: f64,
    pub resolution_s: f64,
}

/// Hardware defaults for artificial-transmission-line TTD circuits.
pub const TTD_MAX_DELAY_S: f64 = 500e-12;
pub const TTD_RESOLUTION_S: f64 = 5e-12;

/// Hybrid beamformer: one subcarrier-independent analog matrix with
/// unit-modulus entries, per-subcarrier digital matrices, and an optional
/// TTD network ahead of the phase shifters.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridBeamformer {
    pub analog: DMatrix<Complex64>,
    pub digital: Vec<DMatrix<Complex64>>,
    pub power: f64,
    pub ttd: Option<TtdNetwork>,
}

impl HybridBeamformer {
    /// End-to-end beamformer at subcarrier frequency `f_hz`.
    pub fn effective(&self, f_hz: f64, m: usize) -> Result<DMatrix<Complex64>> {
        let analog = effective_analog(&self.analog, self.ttd.as_ref(), f_hz)?;
        let d = self
            .digital
            .get(m)
            .ok_or_else(|| Error::DimensionMismatch(format!("no digital stage for subcarrier {m}")))?;
        Ok(analog * d)
    }
}

/// Converts a single-user channel into the U x N (here 1 x N) matrix
/// convention: the row is `h_m^H`.
pub fn single_user_rows(channel: &WidebandChannel) -> Vec<DMatrix<Complex64>> {
    channel
        .h
        .iter()
        .map(|h| DMatrix::from_fn(1, h.len(), |_, n| h[n].conj()))
        .collect()
}

/// Scales `f` so its Frobenius norm squared equals `power`.
pub fn normalize_to_power(f: &DMatrix<Complex64>, power: f64) -> Result<DMatrix<Complex64>> {
    let nrm = linalg::fro_norm(f);
    if nrm <= 0.0 {
        return Err(Error::Numerical("cannot normalize a zero beamformer".into()));
    }
    Ok(f * Complex64::new(power.sqrt() / nrm, 0.0))
}

/// Per-subcarrier fully digital beamformers: the top-S right singular
/// vectors of each channel matrix with equal power across streams. This
/// is the squint-free upper-bound baseline.
pub fn design_digital_sd(
    h: &[DMatrix<Complex64>],
    streams: usize,
    power: f64,
) -> Result<Vec<DMatrix<Complex64>>> {
    h.iter()
        .map(|hm| {
            if linalg::fro_norm(hm) <= 0.0 {
                return Err(Error::Numerical("degenerate zero channel".into()));
            }
            let v = linalg::top_right_singular_vectors(hm, streams)?;
            // columns of v are orthonormal, so this gives equal power/stream
            normalize_to_power(&v, power)
        })
        .collect()
}

/// Carrier- or subcarrier-frequency steering dictionary on a uniform grid
/// in sin(θ) over [-1, 1]; columns have unit-modulus entries.
#[derive(Debug, Clone)]
pub struct AngleDictionary {
    pub sin_grid: Vec<f64>,
    pub angles_rad: Vec<f64>,
    pub atoms: DMatrix<Complex64>,
}

pub fn angle_dictionary(cfg: &ArrayConfig, f_hz: f64, size: usize) -> Result<AngleDictionary> {
    if size < 2 {
        return Err(Error::invalid("size", "dictionary needs >= 2 atoms"));
    }
    let sin_grid: Vec<f64> = (0..size)
        .map(|i| -1.0 + 2.0 * i as f64 / (size - 1) as f64)
        .collect();
    let angles_rad: Vec<f64> = sin_grid.iter().map(|u| u.asin()).collect();
    let mut atoms = DMatrix::zeros(cfg.n_antennas, size);
    for (g, &theta) in angles_rad.iter().enumerate() {
        let a = far_field_steering(cfg, f_hz, theta)?;
        atoms.set_column(g, a.as_vector());
    }
    Ok(AngleDictionary {
        sin_grid,
        angles_rad,
        atoms,
    })
}

/// Block-OMP column selection: greedily picks dictionary atoms maximizing
/// the correlation magnitude summed over all target matrices, refitting
/// all targets by least squares after each pick. Ties break to the lowest
/// grid index; a zero residual stops early.
pub fn omp_select(
    targets: &[DMatrix<Complex64>],
    dict: &DMatrix<Complex64>,
    count: usize,
) -> Result<Vec<usize>> {
    if count == 0 || count > dict.ncols() {
        return Err(Error::invalid("count", "must satisfy 1 <= count <= atoms"));
    }
    let mut residuals: Vec<DMatrix<Complex64>> = targets.to_vec();
    let mut selected: Vec<usize> = Vec::with_capacity(count);
    let total_target: f64 = targets.iter().map(|t| linalg::fro_norm(t).powi(2)).sum();
    for _ in 0..count {
        let res_norm: f64 = residuals.iter().map(|r| linalg::fro_norm(r).powi(2)).sum();
        if res_norm <= 1e-24 * total_target.max(1e-300) {
            break; // exact reconstruction reached
        }
        let mut best_g = usize::MAX;
        let mut best_score = -1.0;
        for g in 0..dict.ncols() {
            if selected.contains(&g) {
                continue;
            }
            let atom = dict.column(g);
            let mut score = 0.0;
            for r in &residuals {
                // ||atom^H R||^2
                for c in 0..r.ncols() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for n in 0..r.nrows() {
                        acc += atom[n].conj() * r[(n, c)];
                    }
                    score += acc.norm_sqr();
                }
            }
            if score > best_score {
                best_score = score;
                best_g = g;
            }
        }
        if best_g == usize::MAX || best_score <= 0.0 {
            return Err(Error::Numerical(
                "OMP failed to reduce the residual (degenerate dictionary)".into(),
            ));
        }
        selected.push(best_g);
        let sub = dict.select_columns(selected.iter());
        for (r, t) in residuals.iter_mut().zip(targets.iter()) {
            let d = linalg::lstsq(&sub, t)?;
            *r = t - &sub * d;
        }
    }
    Ok(selected)
}

/// OMP-based hybrid design without squint handling: analog columns are
/// carrier-frequency dictionary atoms and the single common digital stage
/// is fit to the digital target at the carrier (the subcarriers nearest
/// f_c), so the whole design is squint-blind the way conventional hybrid
/// transceivers are.
pub fn design_hybrid_plain(
    h: &[DMatrix<Complex64>],
    n_rf: usize,
    streams: usize,
    dict: &AngleDictionary,
    power: f64,
) -> Result<HybridBeamformer> {
    if n_rf < streams {
        return Err(Error::invalid("n_rf", "requires n_rf >= streams"));
    }
    let targets = design_digital_sd(h, streams, power)?;
    let m_count = targets.len();
    // carrier-frequency target: the central subcarrier (or the mean of the
    // two central ones when the grid has no exact center)
    let mut mean_target = DMatrix::zeros(targets[0].nrows(), targets[0].ncols());
    let centers: &[usize] = if m_count % 2 == 1 {
        &[m_count / 2]
    } else if m_count >= 2 {
        &[m_count / 2 - 1, m_count / 2]
    } else {
        &[0]
    };
    for &m in centers {
        mean_target += &targets[m];
    }
    mean_target /= Complex64::new(centers.len() as f64, 0.0);

    let selected = omp_select(std::slice::from_ref(&mean_target), &dict.atoms, n_rf)?;
    let analog = dict.atoms.select_columns(selected.iter());
    let d_bar = linalg::lstsq(&analog, &mean_target)?;
    let composite = &analog * &d_bar;
    let nrm = linalg::fro_norm(&composite);
    if nrm <= 0.0 {
        return Err(Error::Numerical("hybrid fit collapsed to zero".into()));
    }
    let d_norm = d_bar * Complex64::new(power.sqrt() / nrm, 0.0);
    Ok(HybridBeamformer {
        analog,
        digital: vec![d_norm; m_count],
        power,
        ttd: None,
    })
}

/// Per-subcarrier digital correction: the least-squares map from the
/// subcarrier-independent analog weights onto each subcarrier-dependent
/// target, renormalized to the power budget.
///
/// A rank-deficient analog matrix is an explicit error.
pub fn phase_correction(
    analog: &DMatrix<Complex64>,
    targets: &[DMatrix<Complex64>],
    power: f64,
) -> Result<Vec<DMatrix<Complex64>>> {
    fit_digital_per_subcarrier(std::iter::repeat(analog), targets, power)
}

/// Least-squares digital stages against per-subcarrier analog matrices
/// (used both for phase correction and for TTD-effective analog stages).
pub fn fit_digital_per_subcarrier<'a, I>(
    analog_per_m: I,
    targets: &[DMatrix<Complex64>],
    power: f64,
) -> Result<Vec<DMatrix<Complex64>>>
where
    I: IntoIterator<Item = &'a DMatrix<Complex64>>,
{
    let mut out = Vec::with_capacity(targets.len());
    for (a, t) in analog_per_m.into_iter().zip(targets.iter()) {
        if a.nrows() != t.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "analog has {} rows, target has {}",
                a.nrows(),
                t.nrows()
            )));
        }
        let d = linalg::lstsq(a, t)?;
        let composite = a * &d;
        let nrm = linalg::fro_norm(&composite);
        if nrm <= 0.0 {
            return Err(Error::Numerical("digital fit collapsed to zero".into()));
        }
        out.push(d * Complex64::new(power.sqrt() / nrm, 0.0));
    }
    Ok(out)
}

/// TTD delay-phase precoding: per RF chain `k` steering to `thetas[k]`,
/// delay element `t` (feeding a block of `P = N / k_t` antennas) applies
/// `τ_{k,t} = t P (d/c) sinθ_k` shifted so all delays are nonnegative; the
/// phase shifters steer within each block at the carrier and absorb the
/// offset's carrier-frequency phase.
pub fn design_ttd_dpp(
    thetas: &[f64],
    cfg: &ArrayConfig,
    k_t: usize,
    quantize: bool,
    power: f64,
) -> Result<(HybridBeamformer, TtdNetwork)> {
    let n = cfg.n_antennas;
    if thetas.is_empty() {
        return Err(Error::invalid("thetas", "need at least one beam"));
    }
    if k_t == 0 || n % k_t != 0 {
        return Err(Error::invalid(
            "k_t",
            format!("number of TTD elements per RF chain must divide N={n}"),
        ));
    }
    let p = n / k_t;
    let k = thetas.len();
    let d_over_c = cfg.spacing_m / SPEED_OF_LIGHT;

    let mut delays = DMatrix::zeros(k, k_t);
    for (ki, &theta) in thetas.iter().enumerate() {
        let slope = p as f64 * d_over_c * theta.sin();
        let offset = if slope < 0.0 {
            -(k_t as f64 - 1.0) * slope
        } else {
            0.0
        };
        for t in 0..k_t {
            let mut tau = t as f64 * slope + offset;
            if tau > TTD_MAX_DELAY_S * (1.0 + 1e-12) {
                return Err(Error::Constraint(format!(
                    "required delay {tau:.3e} s exceeds the {TTD_MAX_DELAY_S:.0e} s range"
                )));
            }
            if quantize {
                tau = (tau / TTD_RESOLUTION_S).round() * TTD_RESOLUTION_S;
                tau = tau.min((TTD_MAX_DELAY_S / TTD_RESOLUTION_S).floor() * TTD_RESOLUTION_S);
            }
            delays[(ki, t)] = tau;
        }
    }

    // Phase shifters: global carrier steering per column, with the block's
    // carrier-frequency TTD phase compensated so that the effective
    // response at f_c equals a_c(θ) exactly (quantized delays included).
    let f_c = cfg.carrier_hz;
    let mut analog = DMatrix::zeros(n, k);
    for (ki, &theta) in thetas.iter().enumerate() {
        let steer = far_field_steering(cfg, f_c, theta)?;
        for antenna in 0..n {
            let block = antenna / p;
            let comp = Complex64::from_polar(1.0, 2.0 * PI * f_c * delays[(ki, block)]);
            analog[(antenna, ki)] = steer.as_vector()[antenna] * comp;
        }
    }

    let net = TtdNetwork {
        n_ttd_per_rf: k_t,
        delays_s: delays,
        max_delay_s: TTD_MAX_DELAY_S,
        resolution_s: TTD_RESOLUTION_S,
    };
    // Neutral digital stage; callers refit per subcarrier against their
    // targets via fit_digital_per_subcarrier.
    let scale = (power / (n as f64 * k as f64)).sqrt();
    let digital = DMatrix::from_diagonal_element(k, k, Complex64::new(scale, 0.0));
    Ok((
        HybridBeamformer {
            analog: analog.clone(),
            digital: vec![digital],
            power,
            ttd: Some(net.clone()),
        },
        net,
    ))
}

/// Frequency response of the analog stage: the phase-shifter weights
/// multiplied per antenna block by the TTD phase `exp(-i 2π f τ)`.
/// Reduces to the bare analog matrix when the network is absent, all
/// delays are zero, or `f_hz` is the zero sentinel.
pub fn effective_analog(
    analog: &DMatrix<Complex64>,
    ttd: Option<&TtdNetwork>,
    f_hz: f64,
) -> Result<DMatrix<Complex64>> {
    let Some(net) = ttd else {
        return Ok(analog.clone());
    };
    let n = analog.nrows();
    let k = analog.ncols();
    if net.delays_s.nrows() != k {
        return Err(Error::DimensionMismatch(format!(
            "TTD network has {} chains, analog has {}",
            net.delays_s.nrows(),
            k
        )));
    }
    if net.n_ttd_per_rf == 0 || n % net.n_ttd_per_rf != 0 {
        return Err(Error::DimensionMismatch(
            "TTD element count must divide the antenna count".into(),
        ));
    }
    let p = n / net.n_ttd_per_rf;
    let mut out = analog.clone();
    for ki in 0..k {
        for antenna in 0..n {
            let tau = net.delays_s[(ki, antenna / p)];
            out[(antenna, ki)] *= Complex64::from_polar(1.0, -2.0 * PI * f_hz * tau);
        }
    }
    Ok(out)
}

/// Subcarrier-dependent phase-shifter network: per subcarrier, the
/// unit-modulus projection of the SD target. This is the MNK-phase-shifter
/// ideal reference.
pub fn design_sd_phase_shifters(targets: &[DMatrix<Complex64>]) -> Vec<DMatrix<Complex64>> {
    targets.iter().map(linalg::phase_only).collect()
}

/// SD phase shifters steering a single direction at every subcarrier.
pub fn sd_phase_shifters_toward(
    cfg: &ArrayConfig,
    grid: &SubcarrierGrid,
    theta0_rad: f64,
) -> Result<Vec<DMatrix<Complex64>>> {
    (0..grid.n_subcarriers)
        .map(|m| {
            let a = far_field_steering(cfg, grid.frequency(m), theta0_rad)?;
            Ok(DMatrix::from_column_slice(
                cfg.n_antennas,
                1,
                a.as_vector().as_slice(),
            ))
        })
        .collect()
}

/// Beam broadening: the array is split into `n_sub` subarrays whose
/// sub-beams are staggered around θ0 with phase-continuous
/// piecewise-linear weights. The stagger span is chosen at design time as
/// the smallest candidate whose contiguous 3 dB mainlobe (in sin-space)
/// reaches `n_sub` times the full-array beamwidth; the peak gain drops by
/// roughly the subarray count in exchange.
pub fn beam_broadening(
    theta0_rad: f64,
    cfg: &ArrayConfig,
    n_sub: usize,
) -> Result<DVector<Complex64>> {
    let n = cfg.n_antennas;
    if n_sub == 0 || n % n_sub != 0 {
        return Err(Error::invalid(
            "n_sub",
            format!("subarray count must divide N={n}"),
        ));
    }
    let scale = 1.0 / (n as f64).sqrt();
    if n_sub == 1 {
        let a = far_field_steering(cfg, cfg.carrier_hz, theta0_rad)?;
        return Ok(a.as_vector() * Complex64::new(scale, 0.0));
    }
    let lambda_c = SPEED_OF_LIGHT / cfg.carrier_hz;
    let w_full = 0.886 * lambda_c / (n as f64 * cfg.spacing_m);
    let target_width = 1.15 * n_sub as f64 * w_full;

    let mut best: Option<(f64, DVector<Complex64>)> = None;
    for step in 0..=10 {
        let kappa = 1.0 + 0.1 * step as f64;
        let w = staggered_subarray_weights(theta0_rad, cfg, n_sub, kappa, scale);
        let width = mainlobe_width_sin(&w, cfg, theta0_rad, n_sub);
        if width >= target_width {
            return Ok(w);
        }
        if best.as_ref().map_or(true, |(bw, _)| width > *bw) {
            best = Some((width, w));
        }
    }
    // No candidate met the target (extreme geometries); keep the widest.
    Ok(best.expect("candidate sweep is nonempty").1)
}

fn staggered_subarray_weights(
    theta0_rad: f64,
    cfg: &ArrayConfig,
    n_sub: usize,
    kappa: f64,
    scale: f64,
) -> DVector<Complex64> {
    let n = cfg.n_antennas;
    let p = n / n_sub;
    let u0 = theta0_rad.sin();
    let lambda_c = SPEED_OF_LIGHT / cfg.carrier_hz;
    let w_sub = 0.886 * lambda_c / (p as f64 * cfg.spacing_m);
    let offsets: Vec<f64> = (0..n_sub)
        .map(|s| u0 + kappa * w_sub * (s as f64 / (n_sub as f64 - 1.0) - 0.5))
        .collect();
    // Phase-continuous piecewise-linear profile in element.sin units.
    let mut psi = 0.0;
    let factor = -2.0 * PI * cfg.carrier_hz / SPEED_OF_LIGHT * cfg.spacing_m;
    let mut w = DVector::from_element(n, Complex64::new(0.0, 0.0));
    for antenna in 0..n {
        w[antenna] = Complex64::from_polar(scale, factor * psi);
        psi += offsets[antenna / p];
    }
    w
}

/// Contiguous half-power mainlobe width around the pattern peak,
/// measured in sin-space at the carrier.
fn mainlobe_width_sin(
    w: &DVector<Complex64>,
    cfg: &ArrayConfig,
    theta0_rad: f64,
    n_sub: usize,
) -> f64 {
    let n = cfg.n_antennas;
    let lambda_c = SPEED_OF_LIGHT / cfg.carrier_hz;
    let w_sub = 0.886 * lambda_c / ((n / n_sub) as f64 * cfg.spacing_m);
    let u0 = theta0_rad.sin();
    let span = 2.5 * w_sub;
    let du = w_sub / 200.0;
    let count = (2.0 * span / du) as usize + 1;
    let phase_base = -2.0 * PI * cfg.carrier_hz / SPEED_OF_LIGHT * cfg.spacing_m;
    let pat: Vec<f64> = (0..count)
        .map(|i| {
            let u = (u0 - span + i as f64 * du).clamp(-1.0, 1.0);
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, wk) in w.iter().enumerate() {
                acc += wk.conj() * Complex64::from_polar(1.0, phase_base * k as f64 * u);
            }
            acc.norm_sqr()
        })
        .collect();
    let (arg, &pk) = pat
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .unwrap();
    let mut lo = arg;
    while lo > 0 && pat[lo] >= pk / 2.0 {
        lo -= 1;
    }
    let mut hi = arg;
    while hi + 1 < pat.len() && pat[hi] >= pk / 2.0 {
        hi += 1;
    }
    (hi - lo) as f64 * du
}

/// Smallest divisor-of-N subarray count whose subarray beamwidth covers
/// the squint span `sin(θ0) B / f_c` at the carrier (with a 25% margin).
/// At zero bandwidth this is 1 and broadening degenerates to the standard
/// full-array beam.
pub fn broadening_factor(cfg: &ArrayConfig, grid: &SubcarrierGrid, theta0_rad: f64) -> usize {
    let span = theta0_rad.sin().abs() * grid.bandwidth_hz / grid.carrier_hz;
    let lambda_c = SPEED_OF_LIGHT / cfg.carrier_hz;
    let n = cfg.n_antennas;
    for n_sub in 1..=n {
        if n % n_sub != 0 {
            continue;
        }
        let p = n / n_sub;
        let w_sub = 0.886 * lambda_c / (p as f64 * cfg.spacing_m);
        if w_sub >= 1.25 * span {
            return n_sub;
        }
    }
    n
}

/// Average spectral efficiency over subcarriers:
/// `(1/M) Σ_m log2 det(I + (SNR/S) H_m F_m F_m^H H_m^H)`.
///
/// Every `F_m` must already satisfy the power budget; non-normalized
/// inputs are flagged rather than silently rescaled.
pub fn spectral_efficiency(
    h: &[DMatrix<Complex64>],
    f: &[DMatrix<Complex64>],
    snr_db: f64,
    power: f64,
) -> Result<f64> {
    if h.len() != f.len() || h.is_empty() {
        return Err(Error::DimensionMismatch(
            "need one beamformer per subcarrier".into(),
        ));
    }
    let snr = 10f64.powf(snr_db / 10.0);
    let mut acc = 0.0;
    for (hm, fm) in h.iter().zip(f.iter()) {
        if hm.ncols() != fm.nrows() {
            return Err(Error::DimensionMismatch(format!(
                "channel is {}x{}, beamformer is {}x{}",
                hm.nrows(),
                hm.ncols(),
                fm.nrows(),
                fm.ncols()
            )));
        }
        let fro2 = linalg::fro_norm(fm).powi(2);
        if (fro2 - power).abs() > 1e-6 * power.max(1e-12) {
            return Err(Error::invalid(
                "beamformer",
                format!("not power-normalized: ||F||_F^2 = {fro2}, budget {power}"),
            ));
        }
        let s = fm.ncols() as f64;
        let hf = hm * fm;
        acc += linalg::log2_det_i_plus_gram(&hf, snr / s)?;
    }
    Ok(acc / h.len() as f64)
}
