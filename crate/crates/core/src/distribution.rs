//! The generalized beta distribution on a bounded interval `[r₁, r₂]`.
//!
//! Density
//!
//! ```text
//! f(x) = (x−r₁)^{s−1} (r₂−x)^{t−1} / ((r₂−r₁)^{s+t−1} · B(s,t)),   r₁ < x < r₂
//! ```
//!
//! With `s = t` it is the generalized arcsine distribution, symmetric about
//! the midpoint; `s = t = ½` on `[0, 1]` is the standard arcsine law with
//! density `1/(π√(x(1−x)))`.

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::identities::{ShapeParams, SupportInterval};
use crate::quadrature::{Node, TanhSinh};
use crate::rng::UniformStream;
use crate::special::{inv_reg_inc_beta, ln_beta, ln_factorial, reg_inc_beta_pair};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralizedBetaDist {
    support: SupportInterval,
    shape: ShapeParams,
    /// `(s+t−1)·ln(r₂−r₁) + ln B(s,t)`.
    log_normalizer: f64,
}

/// How a central moment was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentMethod {
    Closed,
    Quadrature,
}

impl MomentMethod {
    pub fn name(self) -> &'static str {
        match self {
            MomentMethod::Closed => "closed",
            MomentMethod::Quadrature => "quadrature",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentRow {
    pub k: u32,
    pub value: f64,
    pub method: MomentMethod,
}

/// Central moments `μ_1..μ_K` in increasing order of `k`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MomentTable {
    pub rows: Vec<MomentRow>,
}

/// `exponent · ln(distance)`, with the `0 · ln 0` case taken as 0 so that a
/// unit exponent yields the finite one-sided limit at an endpoint.
#[inline]
fn power_term(distance: f64, exponent: f64) -> f64 {
    if exponent == 0.0 {
        0.0
    } else {
        exponent * distance.ln()
    }
}

impl GeneralizedBetaDist {
    pub fn new(support: SupportInterval, shape: ShapeParams) -> Self {
        let (s, t) = (shape.s(), shape.t());
        let log_normalizer = (s + t - 1.0) * support.width().ln() + ln_beta(s, t);
        Self {
            support,
            shape,
            log_normalizer,
        }
    }

    /// Build from raw numbers, validating both interval and shapes.
    pub fn from_params(r1: f64, r2: f64, s: f64, t: f64) -> Result<Self> {
        Ok(Self::new(
            SupportInterval::new(r1, r2)?,
            ShapeParams::new(s, t)?,
        ))
    }

    pub fn standard_arcsine() -> Self {
        Self::new(
            SupportInterval::unit(),
            ShapeParams::symmetric(0.5).expect("½ is a valid shape"),
        )
    }

    pub fn support(&self) -> SupportInterval {
        self.support
    }

    pub fn shape(&self) -> ShapeParams {
        self.shape
    }

    pub fn log_normalizer(&self) -> f64 {
        self.log_normalizer
    }

    pub fn is_generalized_arcsine(&self) -> bool {
        self.shape.s() == self.shape.t()
    }

    pub fn is_standard_arcsine(&self) -> bool {
        self.shape.s() == 0.5
            && self.shape.t() == 0.5
            && self.support.r1() == 0.0
            && self.support.r2() == 1.0
    }

    /// Log density from the distances to both endpoints.
    #[inline]
    fn log_density_at(&self, from_lower: f64, to_upper: f64) -> f64 {
        power_term(from_lower, self.shape.s() - 1.0) + power_term(to_upper, self.shape.t() - 1.0)
            - self.log_normalizer
    }

    /// Log density; `−∞` outside the support.
    ///
    /// At an endpoint whose exponent is negative this is `+∞`; with a zero
    /// exponent it is the finite one-sided limit.
    pub fn log_pdf(&self, x: f64) -> f64 {
        let (r1, r2) = (self.support.r1(), self.support.r2());
        if !(x >= r1 && x <= r2) {
            return f64::NEG_INFINITY;
        }
        self.log_density_at(x - r1, r2 - x)
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.log_pdf(x).exp()
    }

    pub fn cdf(&self, x: f64) -> f64 {
        let (r1, r2) = (self.support.r1(), self.support.r2());
        if x <= r1 {
            return 0.0;
        }
        if x >= r2 {
            return 1.0;
        }
        let w = self.support.width();
        // The continued fraction converges for every valid shape well within
        // its iteration budget; NaN marks the unreachable failure.
        reg_inc_beta_pair((x - r1) / w, (r2 - x) / w, self.shape.s(), self.shape.t())
            .unwrap_or(f64::NAN)
    }

    /// Smallest-residual double `x` with `cdf(x) ≈ p`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        let u = inv_reg_inc_beta(p, self.shape.s(), self.shape.t())?;
        let mut x = self.unit_to_support(u);
        if p == 0.0 || p == 1.0 {
            return Ok(x);
        }
        // The map onto the support rounds on a coarser grid than `u`; step to
        // whichever neighbour brings the CDF closer to `p`.
        let (r1, r2) = (self.support.r1(), self.support.r2());
        let mut residual = (self.cdf(x) - p).abs();
        for _ in 0..8 {
            let best = [x.next_down(), x.next_up()]
                .into_iter()
                .filter(|c| (r1..=r2).contains(c))
                .map(|c| (c, (self.cdf(c) - p).abs()))
                .filter(|&(_, r)| r < residual)
                .min_by(|a, b| a.1.total_cmp(&b.1));
            match best {
                Some((c, r)) => {
                    x = c;
                    residual = r;
                }
                None => break,
            }
        }
        Ok(x)
    }

    /// Map `u ∈ [0,1]` onto the support, measuring from the nearer endpoint.
    /// Exact at 0 and 1; `u = ½` gives the midpoint.
    #[inline]
    fn unit_to_support(&self, u: f64) -> f64 {
        let (r1, r2) = (self.support.r1(), self.support.r2());
        let w = self.support.width();
        let x = if u == 0.5 {
            self.support.midpoint()
        } else if u < 0.5 {
            r1 + w * u
        } else {
            r2 - w * (1.0 - u)
        };
        x.clamp(r1, r2)
    }

    /// `r₁ + s/(s+t)·(r₂−r₁)`, written as a weighted average of the endpoints
    /// so the symmetric case lands exactly on the midpoint.
    pub fn mean(&self) -> f64 {
        let (s, t) = (self.shape.s(), self.shape.t());
        let total = s + t;
        self.support.r1() * (t / total) + self.support.r2() * (s / total)
    }

    /// Closed-form central moment `μ_k`, available when `s = t`.
    ///
    /// Odd orders vanish; even orders `k = 2n` are
    /// `(r₂−r₁)^{2n}·B(s, n+½) / (2^{2s+2n−1}·B(s,s))`.
    pub fn central_moment(&self, k: u32) -> Result<f64> {
        if k == 0 {
            return Err(Error::Domain("moment order k must be at least 1".into()));
        }
        if !self.is_generalized_arcsine() {
            return Err(Error::Unsupported(format!(
                "closed-form central moments need s = t (got s = {}, t = {}); use central_moment_numeric",
                self.shape.s(),
                self.shape.t()
            )));
        }
        if k % 2 == 1 {
            return Ok(0.0);
        }
        let s = self.shape.s();
        let n = f64::from(k / 2);
        let ln_value = f64::from(k) * self.support.width().ln() + ln_beta(s, n + 0.5)
            - (2.0 * s + 2.0 * n - 1.0) * LN_2
            - ln_beta(s, s);
        Ok(ln_value.exp())
    }

    /// `μ_{2n} = (r₂−r₁)^{2n}·(2n)! / (16ⁿ·(n!)²)` for `s = t = ½` (any interval).
    pub fn standard_arcsine_central_moment(&self, n: u32) -> Result<f64> {
        if self.shape.s() != 0.5 || self.shape.t() != 0.5 {
            return Err(Error::Unsupported(format!(
                "arcsine moment formula needs s = t = 1/2 (got s = {}, t = {})",
                self.shape.s(),
                self.shape.t()
            )));
        }
        if n == 0 {
            return Ok(1.0);
        }
        let n_u = u64::from(n);
        let n_f = f64::from(n);
        let ln_value = 2.0 * n_f * self.support.width().ln() + ln_factorial(2 * n_u)
            - 2.0 * ln_factorial(n_u)
            - n_f * 16.0_f64.ln();
        Ok(ln_value.exp())
    }

    /// `∫ (x−μ)^k f(x) dx` by tanh-sinh quadrature, valid for any shapes.
    pub fn central_moment_numeric(&self, k: u32) -> Result<f64> {
        self.central_moment_numeric_with(k, &TanhSinh::default())
    }

    pub fn central_moment_numeric_with(&self, k: u32, integrator: &TanhSinh) -> Result<f64> {
        if k == 0 {
            return Err(Error::Domain("moment order k must be at least 1".into()));
        }
        let mean = self.mean();
        let k = k as i32;
        let est = integrator.integrate_nodes(
            |n: Node| (n.x - mean).powi(k) * self.log_density_at(n.from_lower, n.to_upper).exp(),
            self.support.r1(),
            self.support.r2(),
        )?;
        Ok(est.value)
    }

    /// `μ_1..μ_max_k`, closed form when `s = t` and quadrature otherwise.
    pub fn moment_table(&self, max_k: u32) -> Result<MomentTable> {
        if max_k == 0 {
            return Err(Error::Domain("max k must be at least 1".into()));
        }
        let closed = self.is_generalized_arcsine();
        let rows = (1..=max_k)
            .map(|k| {
                let (value, method) = if closed {
                    (self.central_moment(k)?, MomentMethod::Closed)
                } else {
                    (self.central_moment_numeric(k)?, MomentMethod::Quadrature)
                };
                Ok(MomentRow { k, value, method })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MomentTable { rows })
    }

    /// `n` inverse-transform draws strictly inside `(r₁, r₂)`.
    ///
    /// Uniforms come from [`UniformStream::new`]`(seed)`. A draw whose image
    /// rounds onto an endpoint is discarded and redrawn.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        let (r1, r2) = (self.support.r1(), self.support.r2());
        let (s, t) = (self.shape.s(), self.shape.t());
        let mut stream = UniformStream::new(seed);
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let u = inv_reg_inc_beta(stream.next_open01(), s, t)?;
            let x = self.unit_to_support(u);
            if x > r1 && x < r2 {
                out.push(x);
            }
        }
        Ok(out)
    }
}
