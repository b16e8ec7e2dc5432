//! Monte Carlo check of the arcsine law for the time of the maximum of a
//! simple symmetric random walk, plus Kolmogorov–Smirnov goodness-of-fit.

use std::f64::consts::LN_2;

use rayon::prelude::*;

use crate::distribution::GeneralizedBetaDist;
use crate::error::{Error, Result};
use crate::rng::UniformStream;
use crate::special::ln_factorial;

/// Paths per parallel work unit. Chunk `c` draws from stream `c` of the seed,
/// so output is independent of the worker count.
const PATHS_PER_CHUNK: usize = 256;

/// Asymptotic two-sided KS coefficient at the 1% level.
pub const KS_COEFF_1PCT: f64 = 1.63;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WalkConfig {
    steps: u32,
    paths: usize,
    seed: u64,
}

impl WalkConfig {
    pub fn new(steps: u32, paths: usize, seed: u64) -> Result<Self> {
        if steps < 2 {
            return Err(Error::InvalidParameters(format!(
                "steps must be at least 2, got {steps}"
            )));
        }
        if paths < 1 {
            return Err(Error::InvalidParameters("paths must be at least 1".into()));
        }
        Ok(Self { steps, paths, seed })
    }

    pub fn steps(&self) -> u32 {
        self.steps
    }

    pub fn paths(&self) -> usize {
        self.paths
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KsReport {
    pub statistic: f64,
    pub n: usize,
    pub critical_at_1pct: f64,
    /// `statistic < critical_at_1pct`.
    pub passed: bool,
}

impl KsReport {
    fn new(statistic: f64, n: usize, effective_n: f64) -> Self {
        let critical_at_1pct = KS_COEFF_1PCT / effective_n.sqrt();
        Self {
            statistic,
            n,
            critical_at_1pct,
            passed: statistic < critical_at_1pct,
        }
    }
}

/// First index in `0..=steps` at which the walk attains its maximum.
fn first_argmax(steps: u32, stream: &mut UniformStream) -> u32 {
    let (mut pos, mut max, mut argmax) = (0i64, 0i64, 0u32);
    let mut bits = 0u64;
    for k in 1..=steps {
        if (k - 1) % 64 == 0 {
            bits = stream.next_u64();
        }
        pos += if bits & 1 == 1 { 1 } else { -1 };
        bits >>= 1;
        if pos > max {
            max = pos;
            argmax = k;
        }
    }
    argmax
}

/// For each path, `argmax / steps` where `argmax` is the first time the
/// ±1 walk started at 0 reaches its maximum. Ordered by path index.
pub fn simulate_argmax_fractions(cfg: &WalkConfig) -> Vec<f64> {
    let steps = cfg.steps;
    let scale = f64::from(steps);
    let mut out = vec![0.0; cfg.paths];
    out.par_chunks_mut(PATHS_PER_CHUNK)
        .enumerate()
        .for_each(|(chunk, slot)| {
            let mut stream = UniformStream::with_stream(cfg.seed, chunk as u64);
            for v in slot.iter_mut() {
                *v = f64::from(first_argmax(steps, &mut stream)) / scale;
            }
        });
    out
}

/// Exact law of the first argmax index of a `steps`-step ±1 walk:
/// entry `k` is `P(argmax = k)`.
///
/// The walk peaks first at `k` iff it is strictly below `S_k` before `k` and
/// never exceeds `S_k` after, giving `P = a_k · b_{steps−k}` with
/// `b_m = C(m, ⌊m/2⌋)/2^m` (staying ≤ 0 for `m` steps), `a_0 = 1` and
/// `a_k = b_{k−1}/2`.
pub fn argmax_index_law(steps: u32) -> Vec<f64> {
    let stay_nonpositive = |m: u32| -> f64 {
        let m = u64::from(m);
        (ln_factorial(m) - ln_factorial(m / 2) - ln_factorial(m - m / 2) - m as f64 * LN_2).exp()
    };
    let first_strict_peak = |k: u32| {
        if k == 0 {
            1.0
        } else {
            0.5 * stay_nonpositive(k - 1)
        }
    };
    (0..=steps)
        .map(|k| first_strict_peak(k) * stay_nonpositive(steps - k))
        .collect()
}

/// `sup_x |F(x) − cdf(x)|` where `F` is the law of `argmax/steps` and `cdf`
/// is that of `d`: the KS statistic an infinite sample would reach.
pub fn argmax_law_ks_distance(steps: u32, d: &GeneralizedBetaDist) -> f64 {
    let scale = f64::from(steps);
    let mut below = 0.0;
    let mut sup = 0.0_f64;
    for (k, pk) in argmax_index_law(steps).into_iter().enumerate() {
        let c = d.cdf(k as f64 / scale);
        let above = below + pk;
        sup = sup.max((below - c).abs()).max((above - c).abs());
        below = above;
    }
    sup
}

/// One-sample KS statistic of `samples` against the CDF of `d`.
pub fn ks_against(samples: &[f64], d: &GeneralizedBetaDist) -> Result<KsReport> {
    if samples.is_empty() {
        return Err(Error::Domain("KS test needs at least one sample".into()));
    }
    let (r1, r2) = (d.support().r1(), d.support().r2());
    if let Some(bad) = samples.iter().find(|&&x| !(x >= r1 && x <= r2)) {
        return Err(Error::Domain(format!(
            "sample {bad} lies outside the support [{r1}, {r2}]"
        )));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let nf = n as f64;
    let statistic = sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = d.cdf(x);
            let above = (i + 1) as f64 / nf - f;
            let below = f - i as f64 / nf;
            above.max(below)
        })
        .fold(0.0, f64::max);
    Ok(KsReport::new(statistic, n, nf))
}

/// Two-sample KS statistic. `n` in the report is the combined sample count;
/// the critical value uses the effective size `n₁n₂/(n₁+n₂)`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsReport> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Domain(
            "KS test needs at least one sample on each side".into(),
        ));
    }
    if a.iter().chain(b).any(|x| x.is_nan()) {
        return Err(Error::Domain("KS samples must not be NaN".into()));
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut statistic = 0.0_f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] == x {
            i += 1;
        }
        while j < b.len() && b[j] == x {
            j += 1;
        }
        statistic = statistic.max((i as f64 / na - j as f64 / nb).abs());
    }
    let effective = na * nb / (na + nb);
    Ok(KsReport::new(statistic, a.len() + b.len(), effective))
}
