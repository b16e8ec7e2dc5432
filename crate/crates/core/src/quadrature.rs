//! Tanh-sinh (double exponential) quadrature on a finite interval.
//!
//! The substitution `x = c + h·tanh(π/2·sinh τ)` clusters nodes at both
//! endpoints with double-exponentially decaying weights, so integrands with
//! power-law endpoint singularities `(x−a)^α`, `α > −1`, converge without
//! special handling. The trapezoid rule in `τ` is refined by halving the
//! step; each level reuses every node of the previous one.
//!
//! Nodes never land on an endpoint. Near an endpoint `x − a` can be far
//! smaller than the spacing of doubles around `a`, so [`Node`] also carries
//! both endpoint distances computed directly from the transform. Integrands
//! that factor as powers of those distances should use them instead of
//! recomputing `x − a` or `b − x`.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_LEVEL: u32 = 12;

/// Levels below this are never accepted as converged.
const MIN_LEVEL: u32 = 3;

/// Result of a quadrature run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEstimate {
    pub value: f64,
    /// Difference between the last two refinement levels.
    pub abs_error_estimate: f64,
    pub evaluations: u64,
}

/// An abscissa together with its exact distances to both endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub x: f64,
    /// `x − a`, never zero.
    pub from_lower: f64,
    /// `b − x`, never zero.
    pub to_upper: f64,
}

/// Tanh-sinh integrator settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TanhSinh {
    /// Stop once successive levels differ by at most `tol·max(1, |value|)`.
    pub tol: f64,
    pub max_level: u32,
}

impl Default for TanhSinh {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            max_level: DEFAULT_MAX_LEVEL,
        }
    }
}

/// Transform data for one abscissa `τ > 0`, mirrored to `−τ` by the caller.
struct Abscissa {
    /// `1 − tanh(u)` = distance to the nearer endpoint on the unit half-width.
    near: f64,
    /// `1 + tanh(u)`.
    far: f64,
    /// `dξ/dτ`.
    weight: f64,
}

fn abscissa(tau: f64) -> Abscissa {
    let u = FRAC_PI_2 * tau.sinh();
    let e = (-2.0 * u).exp();
    let denom = 1.0 + e;
    Abscissa {
        near: 2.0 * e / denom,
        far: 2.0 / denom,
        weight: FRAC_PI_2 * tau.cosh() * 4.0 * e / (denom * denom),
    }
}

impl TanhSinh {
    pub fn new(tol: f64) -> Self {
        Self {
            tol,
            ..Self::default()
        }
    }

    /// Integrate a plain function of `x` over `(a, b)`.
    ///
    /// Abscissae that round onto an endpoint are skipped, which caps the
    /// attainable accuracy for integrands singular at a nonzero endpoint.
    /// Use [`TanhSinh::integrate_nodes`] for those.
    pub fn integrate<F>(&self, f: F, a: f64, b: f64) -> Result<QuadratureEstimate>
    where
        F: Fn(f64) -> f64,
    {
        self.integrate_nodes(
            |node| {
                if node.x <= a || node.x >= b {
                    0.0
                } else {
                    f(node.x)
                }
            },
            a,
            b,
        )
    }

    /// Integrate a function of [`Node`] over `(a, b)`.
    pub fn integrate_nodes<F>(&self, f: F, a: f64, b: f64) -> Result<QuadratureEstimate>
    where
        F: Fn(Node) -> f64,
    {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::Domain(format!(
                "integration bounds must be finite with a < b, got ({a}, {b})"
            )));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(Error::Domain(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }

        let half = 0.5 * (b - a);
        let mut evaluations = 0u64;

        let mut eval = |node: Node| -> Result<f64> {
            evaluations += 1;
            let y = f(node);
            if y.is_finite() {
                Ok(y)
            } else {
                Err(Error::Domain(format!(
                    "integrand is not finite at x = {} ({y})",
                    node.x
                )))
            }
        };

        // Weighted sum over τ = k·step for odd k (or every k on level 0).
        let mut level_sum = |step: f64, first: bool| -> Result<f64> {
            let mut sum = 0.0;
            if first {
                sum += FRAC_PI_2
                    * eval(Node {
                        x: a + half,
                        from_lower: half,
                        to_upper: half,
                    })?;
            }
            let stride = if first { 1 } else { 2 };
            let mut k = 1u64;
            loop {
                let ab = abscissa(k as f64 * step);
                let near = half * ab.near;
                if ab.weight == 0.0 || near == 0.0 {
                    break;
                }
                let far = half * ab.far;
                let right = eval(Node {
                    x: b - near,
                    from_lower: far,
                    to_upper: near,
                })?;
                let left = eval(Node {
                    x: a + near,
                    from_lower: near,
                    to_upper: far,
                })?;
                sum += ab.weight * (left + right);
                k += stride;
            }
            Ok(sum)
        };

        let mut step = 1.0;
        let mut raw = level_sum(step, true)?;
        let mut value = half * step * raw;
        let mut last_diff = f64::INFINITY;

        for level in 1..=self.max_level {
            step *= 0.5;
            raw += level_sum(step, false)?;
            let refined = half * step * raw;
            last_diff = (refined - value).abs();
            value = refined;
            if level >= MIN_LEVEL && last_diff <= self.tol * value.abs().max(1.0) {
                return Ok(QuadratureEstimate {
                    value,
                    abs_error_estimate: last_diff,
                    evaluations,
                });
            }
        }

        Err(Error::QuadratureNoConvergence {
            best: QuadratureEstimate {
                value,
                abs_error_estimate: last_diff,
                evaluations,
            },
        })
    }
}

/// Integrate `f` over `(a, b)` with the default level budget.
pub fn integrate<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureEstimate>
where
    F: Fn(f64) -> f64,
{
    TanhSinh::new(tol).integrate(f, a, b)
}

/// Endpoint-aware variant of [`integrate`].
pub fn integrate_nodes<F>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureEstimate>
where
    F: Fn(Node) -> f64,
{
    TanhSinh::new(tol).integrate_nodes(f, a, b)
}
