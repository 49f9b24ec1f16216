//! Sampled logical error rates, parameter sweeps and threshold crossings.
//!
//! Shot `s` draws its error from a ChaCha8 stream keyed by `(seed, s)`, so
//! a report depends only on the seed and the batch layout, never on how
//! shots were spread over workers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::channel::{Bias, ChannelModel};
use crate::construction::{build, Family};
use crate::decoder::MwpmDecoder;
use crate::error::{Error, Result};
use crate::par;
use crate::stabilizer::{Pauli, PauliOperator, ResidualClass};

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

/// One error drawn from an i.i.d. Pauli channel.
pub fn sample_error<R: Rng + ?Sized>(channel: &ChannelModel, n: usize, rng: &mut R) -> PauliOperator {
    let mut e = PauliOperator::identity(n);
    sample_into(channel, rng, &mut e);
    e
}

fn sample_into<R: Rng + ?Sized>(channel: &ChannelModel, rng: &mut R, e: &mut PauliOperator) -> bool {
    let (cx, cy, cz) = (channel.p_x, channel.p_x + channel.p_y, channel.p());
    let mut any = false;
    for q in 0..e.n() {
        let u: f64 = rng.gen();
        let p = if u < cx {
            Pauli::X
        } else if u < cy {
            Pauli::Y
        } else if u < cz {
            Pauli::Z
        } else {
            Pauli::I
        };
        any |= p != Pauli::I;
        e.set(q, p);
    }
    any
}

/// Wilson score interval at 95% confidence.
pub fn wilson_interval(failures: u64, shots: u64) -> (f64, f64) {
    if shots == 0 {
        return (0.0, 1.0);
    }
    let n = shots as f64;
    let phat = failures as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = Z95 / denom * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    // Rounding can push a bound past the estimate at f = 0 or f = n.
    ((center - half).clamp(0.0, phat), (center + half).clamp(phat, 1.0))
}

/// Stopping rule and sharding for [`estimate_pl`].
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SimulationOptions {
    pub min_failures: u64,
    pub max_shots: u64,
    /// The stopping rule is checked only at multiples of this many shots.
    pub batch_size: u64,
    pub seed: u64,
    #[serde(skip)]
    pub workers: usize,
}

impl SimulationOptions {
    pub fn new(seed: u64) -> Self {
        Self {
            min_failures: 100,
            max_shots: 1_000_000,
            batch_size: 10_000,
            seed,
            workers: par::available_workers(),
        }
    }

    /// Exactly `shots` shots, ignoring the failure count.
    pub fn fixed_shots(seed: u64, shots: u64) -> Self {
        Self {
            min_failures: u64::MAX,
            max_shots: shots,
            ..Self::new(seed)
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FailureBreakdown {
    pub logical_x: u64,
    pub logical_z: u64,
    pub logical_y: u64,
}

impl FailureBreakdown {
    fn add(&mut self, other: &Self) {
        self.logical_x += other.logical_x;
        self.logical_z += other.logical_z;
        self.logical_y += other.logical_y;
    }

    pub fn total(&self) -> u64 {
        self.logical_x + self.logical_z + self.logical_y
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimulationReport {
    pub code: String,
    pub family: Family,
    pub lc: usize,
    pub lf: usize,
    pub p: f64,
    #[serde(rename = "A")]
    pub bias: Option<Bias>,
    pub channel: ChannelModel,
    pub shots: u64,
    pub failures: u64,
    pub p_l_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
    pub breakdown: FailureBreakdown,
    /// True when the run ended at `max_shots` before reaching `min_failures`.
    pub hit_max_shots: bool,
}

impl SimulationReport {
    /// Half-width of the Wilson interval, a rough one-sided sigma scale.
    pub fn sigma(&self) -> f64 {
        (self.ci_high - self.ci_low) / (2.0 * Z95)
    }
}

fn run_shots(decoder: &MwpmDecoder, channel: &ChannelModel, seed: u64, start: u64, end: u64) -> Result<(u64, FailureBreakdown)> {
    let base = ChaCha8Rng::seed_from_u64(seed);
    let n = decoder.code().n();
    let mut session = decoder.session();
    let mut e = PauliOperator::identity(n);
    let mut breakdown = FailureBreakdown::default();
    for shot in start..end {
        let mut rng = base.clone();
        rng.set_stream(shot);
        if !sample_into(channel, &mut rng, &mut e) {
            continue;
        }
        match session.decode_and_classify(&e)?.residual_class {
            ResidualClass::Stabilizer => {}
            ResidualClass::LogicalX => breakdown.logical_x += 1,
            ResidualClass::LogicalZ => breakdown.logical_z += 1,
            ResidualClass::LogicalY => breakdown.logical_y += 1,
            ResidualClass::Detectable => {
                return Err(Error::InvalidCode("decoder left a nonzero syndrome".into()));
            }
        }
    }
    Ok((breakdown.total(), breakdown))
}

/// Simulates until `min_failures` failures or `max_shots` shots, checking
/// at batch boundaries.
pub fn estimate_pl(decoder: &MwpmDecoder, channel: &ChannelModel, options: &SimulationOptions) -> Result<SimulationReport> {
    if options.max_shots == 0 || options.batch_size == 0 {
        return Err(Error::InvalidParameters("max_shots and batch_size must be ≥ 1".into()));
    }
    let chunk = 1024u64;
    let mut shots = 0u64;
    let mut failures = 0u64;
    let mut breakdown = FailureBreakdown::default();
    while shots < options.max_shots && failures < options.min_failures {
        let end = (shots + options.batch_size).min(options.max_shots);
        let start = shots;
        let pieces = (end - start).div_ceil(chunk) as usize;
        let results = par::map_collect(options.workers, pieces, |i| {
            let a = start + i as u64 * chunk;
            run_shots(decoder, channel, options.seed, a, (a + chunk).min(end))
        });
        for r in results {
            let (f, b) = r?;
            failures += f;
            breakdown.add(&b);
        }
        shots = end;
    }
    let code = decoder.code();
    let (ci_low, ci_high) = wilson_interval(failures, shots);
    Ok(SimulationReport {
        code: code.label(),
        family: code.family(),
        lc: code.pair().lc,
        lf: code.pair().lf,
        p: channel.p(),
        bias: channel.bias(),
        channel: *channel,
        shots,
        failures,
        p_l_hat: failures as f64 / shots as f64,
        ci_low,
        ci_high,
        seed: options.seed,
        breakdown,
        hit_max_shots: failures < options.min_failures,
    })
}

/// Seed for grid point `index` derived from a master seed.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(index.wrapping_add(1) << 32);
    rng.gen()
}

/// [`estimate_pl`] at every `p` of a grid with a fixed bias.
pub fn sweep(decoder: &MwpmDecoder, bias: Bias, p_grid: &[f64], options: &SimulationOptions) -> Result<Vec<SimulationReport>> {
    p_grid
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let channel = ChannelModel::from_bias(p, bias)?;
            let opts = SimulationOptions {
                seed: derive_seed(options.seed, i as u64),
                ..*options
            };
            // Record the requested bias rather than one recovered from rounded probabilities.
            estimate_pl(decoder, &channel, &opts).map(|r| SimulationReport { bias: Some(bias), ..r })
        })
        .collect()
}

/// Crossing of two consecutive-distance curves.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Crossing {
    pub d_small: usize,
    pub d_large: usize,
    pub p: f64,
    pub bracket: (f64, f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThresholdEstimate {
    pub family: Family,
    #[serde(rename = "A")]
    pub bias: Bias,
    /// Mean of the pairwise crossings.
    pub p_th: f64,
    pub crossings: Vec<Crossing>,
    pub curves: Vec<Vec<SimulationReport>>,
}

/// First grid interval where the larger code stops beating the smaller one,
/// refined by linear interpolation of `log p_L` in `p`.
pub fn curve_crossing(grid: &[f64], small: &[SimulationReport], large: &[SimulationReport]) -> Option<(f64, (f64, f64))> {
    let floor = |r: &SimulationReport| (r.failures.max(1) as f64 / r.shots as f64).ln();
    let gap: Vec<f64> = small.iter().zip(large).map(|(s, l)| floor(l) - floor(s)).collect();
    (0..grid.len().saturating_sub(1)).find_map(|i| {
        let (g0, g1) = (gap[i], gap[i + 1]);
        (g0 < 0.0 && g1 >= 0.0).then(|| {
            let p = grid[i] + (grid[i + 1] - grid[i]) * g0 / (g0 - g1);
            (p, (grid[i], grid[i + 1]))
        })
    })
}

/// Threshold from square codes of the given distances, each simulated with
/// the same options on the same grid.
pub fn threshold(family: Family, distances: &[usize], bias: Bias, p_grid: &[f64], options: &SimulationOptions) -> Result<ThresholdEstimate> {
    if distances.len() < 2 {
        return Err(Error::InvalidParameters("threshold needs at least two distances".into()));
    }
    if p_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameters("p grid must be strictly increasing".into()));
    }
    let curves = distances
        .iter()
        .map(|&d| {
            let code = build(family, d, d)?;
            sweep(&MwpmDecoder::new(&code)?, bias, p_grid, options)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut crossings = Vec::new();
    for k in 0..distances.len() - 1 {
        let (p, bracket) = curve_crossing(p_grid, &curves[k], &curves[k + 1]).ok_or_else(|| {
            Error::NoCrossing(format!(
                "d = {} and d = {} curves do not cross inside [{}, {}]",
                distances[k],
                distances[k + 1],
                p_grid.first().copied().unwrap_or(0.0),
                p_grid.last().copied().unwrap_or(0.0)
            ))
        })?;
        crossings.push(Crossing {
            d_small: distances[k],
            d_large: distances[k + 1],
            p,
            bracket,
        });
    }
    let p_th = crossings.iter().map(|c| c.p).sum::<f64>() / crossings.len() as f64;
    Ok(ThresholdEstimate {
        family,
        bias,
        p_th,
        crossings,
        curves,
    })
}

/// CSV rows `family,Lc,Lf,A,p,p_L,ci_low,ci_high,shots,failures`.
pub fn reports_csv(reports: &[SimulationReport], header: bool) -> String {
    let mut out = String::new();
    if header {
        out.push_str("family,Lc,Lf,A,p,p_L,ci_low,ci_high,shots,failures\n");
    }
    for r in reports {
        let bias = r.bias.map_or_else(|| "none".to_string(), |b| b.to_string());
        out.push_str(&format!(
            "{},{},{},{},{},{:e},{:e},{:e},{},{}\n",
            r.family, r.lc, r.lf, bias, r.p, r.p_l_hat, r.ci_low, r.ci_high, r.shots, r.failures
        ));
    }
    out
}
