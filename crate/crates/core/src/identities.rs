//! Closed forms for beta-function integrals over a shifted interval, and a
//! harness that checks each one against direct quadrature of its integrand.
//!
//! Three families of integrals are covered, for `r₁ < r̄ = (r₁+r₂)/2 < r₂`:
//!
//! * shifted: `∫_{r₁}^{r₂} (x−r₁)^{s−1}(r₂−x)^{t−1} dx = (r₂−r₁)^{s+t−1}·B(s,t)`
//! * split upper: `∫_{r̄}^{r₂} (x−r₁)^{s−1}(x−r̄)^{t−1}(r₂−x)^{s−1} dx`
//! * split lower: `∫_{r₁}^{r̄} (x−r₁)^{s−1}(r̄−x)^{t−1}(r₂−x)^{s−1} dx`
//!
//! Both split integrals equal `½·((r₂−r₁)/2)^{2s+t−2}·B(s, t/2)`.
//!
//! On `[0, 1]` with `t → 2t` the lower split gives the half-interval form
//! `B(s,t) = 2^{2s+2t−1}·∫₀^{½} x^{s−1}(½−x)^{2t−1}(1−x)^{s−1} dx`. The
//! factor `2^{2s+2t−1}` is required; dropping it is off by exactly that ratio.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::quadrature::{Node, QuadratureEstimate, TanhSinh};
use crate::special::{beta_unchecked, scaled_beta, PositiveReal};

/// Default relative threshold for [`verify_identity`].
pub const DEFAULT_REL_THRESHOLD: f64 = 1e-8;

/// Intervals used by the sweep helpers.
pub const SWEEP_INTERVALS: [(f64, f64); 4] = [(0.0, 1.0), (-1.0, 1.0), (1.0, 3.0), (-5.0, 2.0)];

/// Shape values used by the sweep helpers; pairs are the full Cartesian square.
pub const SWEEP_SHAPES: [f64; 6] = [0.3, 0.5, 1.0, 1.5, 2.5, 7.0];

/// A bounded support `[r₁, r₂]` with `r₁ < r₂`, both finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportInterval {
    r1: f64,
    r2: f64,
}

impl SupportInterval {
    pub fn new(r1: f64, r2: f64) -> Result<Self> {
        if !(r1.is_finite() && r2.is_finite()) {
            return Err(Error::InvalidParameters(format!(
                "interval endpoints must be finite, got [{r1}, {r2}]"
            )));
        }
        let mid = 0.5 * r1 + 0.5 * r2;
        if !(r1 < mid && mid < r2) {
            return Err(Error::InvalidParameters(format!(
                "interval must satisfy r1 < (r1+r2)/2 < r2, got [{r1}, {r2}]"
            )));
        }
        Ok(Self { r1, r2 })
    }

    pub fn unit() -> Self {
        Self { r1: 0.0, r2: 1.0 }
    }

    #[inline]
    pub fn r1(&self) -> f64 {
        self.r1
    }

    #[inline]
    pub fn r2(&self) -> f64 {
        self.r2
    }

    #[inline]
    pub fn width(&self) -> f64 {
        self.r2 - self.r1
    }

    /// `r̄ = (r₁+r₂)/2`, formed without overflow.
    #[inline]
    pub fn midpoint(&self) -> f64 {
        0.5 * self.r1 + 0.5 * self.r2
    }
}

/// The two beta exponents `s, t > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeParams {
    s: PositiveReal,
    t: PositiveReal,
}

impl ShapeParams {
    pub fn new(s: f64, t: f64) -> Result<Self> {
        let wrap = |v: f64, name: &str| {
            PositiveReal::new(v).map_err(|_| {
                Error::InvalidParameters(format!("shape {name} must be finite and > 0, got {v}"))
            })
        };
        Ok(Self {
            s: wrap(s, "s")?,
            t: wrap(t, "t")?,
        })
    }

    pub fn symmetric(s: f64) -> Result<Self> {
        Self::new(s, s)
    }

    #[inline]
    pub fn s(&self) -> f64 {
        self.s.get()
    }

    #[inline]
    pub fn t(&self) -> f64 {
        self.t.get()
    }
}

/// Which integral identity to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    Shifted,
    SplitUpper,
    SplitLower,
    HalfInterval,
}

impl Identity {
    pub const ALL: [Identity; 4] = [
        Identity::Shifted,
        Identity::SplitUpper,
        Identity::SplitLower,
        Identity::HalfInterval,
    ];

    /// Stable name used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            Identity::Shifted => "thm1",
            Identity::SplitUpper => "thm2-upper",
            Identity::SplitLower => "thm2-lower",
            Identity::HalfInterval => "half-interval",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Identity::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::InvalidParameters(format!("unknown identity {s:?}")))
    }
}

/// Closed value of `∫_{r₁}^{r₂}(x−r₁)^{s−1}(r₂−x)^{t−1}dx = (r₂−r₁)^{s+t−1}·B(s,t)`.
pub fn shifted_beta_integral_closed(iv: SupportInterval, sp: ShapeParams) -> f64 {
    let (s, t) = (sp.s(), sp.t());
    scaled_beta(iv.width(), s + t - 1.0, s, t)
}

fn split_integral_closed(iv: SupportInterval, sp: ShapeParams) -> f64 {
    let (s, t) = (sp.s(), sp.t());
    0.5 * scaled_beta(0.5 * iv.width(), 2.0 * s + t - 2.0, s, 0.5 * t)
}

/// Closed value of `∫_{r̄}^{r₂}(x−r₁)^{s−1}(x−r̄)^{t−1}(r₂−x)^{s−1}dx`.
pub fn split_integral_upper_closed(iv: SupportInterval, sp: ShapeParams) -> f64 {
    split_integral_closed(iv, sp)
}

/// Closed value of `∫_{r₁}^{r̄}(x−r₁)^{s−1}(r̄−x)^{t−1}(r₂−x)^{s−1}dx`; the
/// same number as the upper half.
pub fn split_integral_lower_closed(iv: SupportInterval, sp: ShapeParams) -> f64 {
    split_integral_closed(iv, sp)
}

/// `B(s, t)`, obtained as `2^{2s+2t−1}` times the half-interval integral.
pub fn half_interval_beta_corrected(sp: ShapeParams) -> f64 {
    beta_unchecked(sp.s(), sp.t())
}

/// `2^{2s+2t−1}`, the ratio between `B(s,t)` and the half-interval integral.
pub fn half_interval_prefactor(sp: ShapeParams) -> f64 {
    2.0_f64.powf(2.0 * sp.s() + 2.0 * sp.t() - 1.0)
}

/// Closed value of the raw integral each identity describes.
pub fn closed_value(identity: Identity, iv: SupportInterval, sp: ShapeParams) -> f64 {
    match identity {
        Identity::Shifted => shifted_beta_integral_closed(iv, sp),
        Identity::SplitUpper => split_integral_upper_closed(iv, sp),
        Identity::SplitLower => split_integral_lower_closed(iv, sp),
        Identity::HalfInterval => {
            scaled_beta(0.5, 2.0 * sp.s() + 2.0 * sp.t() - 1.0, sp.s(), sp.t())
        }
    }
}

/// Quadrature of the raw integral each identity describes.
///
/// For [`Identity::HalfInterval`] the interval argument is ignored; the
/// integral is always over `(0, ½)`.
pub fn oracle_value(
    identity: Identity,
    iv: SupportInterval,
    sp: ShapeParams,
    integrator: &TanhSinh,
) -> Result<QuadratureEstimate> {
    let (s, t) = (sp.s(), sp.t());
    let (r1, r2, mid) = (iv.r1(), iv.r2(), iv.midpoint());
    match identity {
        Identity::Shifted => integrator.integrate_nodes(
            |n: Node| n.from_lower.powf(s - 1.0) * n.to_upper.powf(t - 1.0),
            r1,
            r2,
        ),
        Identity::SplitUpper => {
            let offset = mid - r1;
            integrator.integrate_nodes(
                |n: Node| {
                    (offset + n.from_lower).powf(s - 1.0)
                        * n.from_lower.powf(t - 1.0)
                        * n.to_upper.powf(s - 1.0)
                },
                mid,
                r2,
            )
        }
        Identity::SplitLower => {
            let offset = r2 - mid;
            integrator.integrate_nodes(
                |n: Node| {
                    n.from_lower.powf(s - 1.0)
                        * n.to_upper.powf(t - 1.0)
                        * (offset + n.to_upper).powf(s - 1.0)
                },
                r1,
                mid,
            )
        }
        Identity::HalfInterval => integrator.integrate_nodes(
            |n: Node| {
                n.from_lower.powf(s - 1.0)
                    * n.to_upper.powf(2.0 * t - 1.0)
                    * (0.5 + n.to_upper).powf(s - 1.0)
            },
            0.0,
            0.5,
        ),
    }
}

/// Closed form versus quadrature for one identity and parameter set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityReport {
    pub identity: Identity,
    pub interval: SupportInterval,
    pub shape: ShapeParams,
    pub closed_value: f64,
    pub oracle: QuadratureEstimate,
    pub abs_diff: f64,
    pub rel_diff: f64,
    pub passed: bool,
}

/// Evaluate an identity both ways and compare at `rel_threshold`.
///
/// A mismatch is reported through `passed`, not as an error; only a
/// quadrature failure is an error.
pub fn verify_identity(
    identity: Identity,
    iv: SupportInterval,
    sp: ShapeParams,
    rel_threshold: f64,
) -> Result<IdentityReport> {
    verify_identity_with(identity, iv, sp, rel_threshold, &TanhSinh::default())
}

pub fn verify_identity_with(
    identity: Identity,
    iv: SupportInterval,
    sp: ShapeParams,
    rel_threshold: f64,
    integrator: &TanhSinh,
) -> Result<IdentityReport> {
    if rel_threshold.is_nan() || rel_threshold <= 0.0 {
        return Err(Error::Domain(format!(
            "relative threshold must be positive, got {rel_threshold}"
        )));
    }
    let iv = match identity {
        Identity::HalfInterval => SupportInterval::unit(),
        _ => iv,
    };
    let closed = closed_value(identity, iv, sp);
    let oracle = oracle_value(identity, iv, sp, integrator)?;
    let abs_diff = (closed - oracle.value).abs();
    let rel_diff = if closed != 0.0 {
        abs_diff / closed.abs()
    } else {
        abs_diff
    };
    Ok(IdentityReport {
        identity,
        interval: iv,
        shape: sp,
        closed_value: closed,
        oracle,
        abs_diff,
        rel_diff,
        passed: rel_diff <= rel_threshold,
    })
}

/// Run one identity over the standard sweep grid.
///
/// Interval-dependent identities cover every interval × shape pair; the
/// half-interval identity covers the shape pairs only.
pub fn sweep(identity: Identity, rel_threshold: f64) -> Result<Vec<IdentityReport>> {
    let intervals: &[(f64, f64)] = match identity {
        Identity::HalfInterval => &[(0.0, 1.0)],
        _ => &SWEEP_INTERVALS,
    };
    let mut reports = Vec::with_capacity(intervals.len() * SWEEP_SHAPES.len().pow(2));
    for &(r1, r2) in intervals {
        let iv = SupportInterval::new(r1, r2)?;
        for &s in &SWEEP_SHAPES {
            for &t in &SWEEP_SHAPES {
                reports.push(verify_identity(
                    identity,
                    iv,
                    ShapeParams::new(s, t)?,
                    rel_threshold,
                )?);
            }
        }
    }
    Ok(reports)
}

/// `((r₁, r₂), (s, t))`.
pub type Case = ((f64, f64), (f64, f64));

/// Hand-checked cases that lie off the sweep grid.
pub fn worked_examples(identity: Identity) -> &'static [Case] {
    match identity {
        Identity::Shifted => &[((0.0, 2.0), (2.0, 3.0))],
        Identity::SplitUpper | Identity::SplitLower => {
            &[((-1.0, 3.0), (0.5, 7.0)), ((0.0, 2.0), (0.5, 1.0))]
        }
        Identity::HalfInterval => &[((0.0, 1.0), (2.0, 1.0)), ((0.0, 1.0), (3.0, 2.0))],
    }
}

/// [`verify_identity`] over [`worked_examples`].
pub fn verify_worked_examples(
    identity: Identity,
    rel_threshold: f64,
) -> Result<Vec<IdentityReport>> {
    worked_examples(identity)
        .iter()
        .map(|&((r1, r2), (s, t))| {
            verify_identity(
                identity,
                SupportInterval::new(r1, r2)?,
                ShapeParams::new(s, t)?,
                rel_threshold,
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::integrate_nodes;
    use crate::special::beta;
    use std::f64::consts::PI;

    fn iv(r1: f64, r2: f64) -> SupportInterval {
        SupportInterval::new(r1, r2).unwrap()
    }

    fn sp(s: f64, t: f64) -> ShapeParams {
        ShapeParams::new(s, t).unwrap()
    }

    fn rel_err(got: f64, want: f64) -> f64 {
        ((got - want) / want).abs()
    }

    #[test]
    fn interval_and_shape_validation() {
        assert!(SupportInterval::new(1.0, 1.0).is_err());
        assert!(SupportInterval::new(2.0, 1.0).is_err());
        assert!(SupportInterval::new(f64::NEG_INFINITY, 1.0).is_err());
        assert!(SupportInterval::new(0.0, f64::NAN).is_err());
        // Adjacent doubles have no representable midpoint strictly inside.
        assert!(SupportInterval::new(1.0, 1.0_f64.next_up()).is_err());
        assert!(ShapeParams::new(0.0, 1.0).is_err());
        assert!(ShapeParams::new(1.0, -0.5).is_err());
        assert_eq!(iv(-1.0, 3.0).midpoint(), 1.0);
    }

    #[test]
    fn identity_names_round_trip() {
        for id in Identity::ALL {
            assert_eq!(id.name().parse::<Identity>().unwrap(), id);
        }
        assert!("thm3".parse::<Identity>().is_err());
    }

    #[test]
    fn shifted_examples() {
        for (s, t) in [(0.3, 0.5), (1.5, 0.75), (7.0, 2.5)] {
            assert_eq!(
                shifted_beta_integral_closed(SupportInterval::unit(), sp(s, t)),
                beta(s, t).unwrap()
            );
        }
        assert!(
            rel_err(
                shifted_beta_integral_closed(iv(-1.0, 1.0), sp(0.5, 0.5)),
                PI
            ) <= 1e-15
        );
        // ∫₀² x(2−x)² dx = [2x² − 4x³/3 + x⁴/4]₀² = 8 − 32/3 + 4 = 4/3
        assert!(
            rel_err(
                shifted_beta_integral_closed(iv(0.0, 2.0), sp(2.0, 3.0)),
                4.0 / 3.0
            ) <= 1e-14
        );
    }

    #[test]
    fn split_examples() {
        let first = split_integral_upper_closed(iv(1.0, 3.0), sp(1.5, 1.5));
        assert!((first - 0.479_256_093_89).abs() <= 1e-6);
        assert!(rel_err(first, 0.5 * beta(1.5, 0.75).unwrap()) <= 1e-15);
        assert!(
            rel_err(
                split_integral_upper_closed(iv(0.0, 1.0), sp(1.0, 2.0)),
                0.125
            ) <= 1e-15
        );
        assert!(
            rel_err(
                split_integral_upper_closed(iv(0.0, 2.0), sp(0.5, 1.0)),
                PI / 2.0
            ) <= 1e-15
        );

        assert!(
            rel_err(
                split_integral_lower_closed(iv(-1.0, 3.0), sp(0.5, 7.0)),
                10.0 * PI
            ) <= 1e-12
        );
        assert!(
            rel_err(
                split_integral_lower_closed(iv(0.0, 1.0), sp(1.0, 2.0)),
                0.125
            ) <= 1e-15
        );
        assert_eq!(
            split_integral_lower_closed(iv(1.0, 3.0), sp(1.5, 1.5)),
            split_integral_upper_closed(iv(1.0, 3.0), sp(1.5, 1.5))
        );
    }

    #[test]
    fn split_oracle_examples() {
        let ts = TanhSinh::default();
        // ∫₁² ((x(2−x))^{−1/2} dx = π/2
        let est = oracle_value(Identity::SplitUpper, iv(0.0, 2.0), sp(0.5, 1.0), &ts).unwrap();
        assert!(rel_err(est.value, PI / 2.0) <= 1e-12);
        // ∫₁² √((x−1)(2−x)(3−x)) dx equals the upper-half integral.
        let lower = oracle_value(Identity::SplitLower, iv(1.0, 3.0), sp(1.5, 1.5), &ts).unwrap();
        assert!(rel_err(lower.value, 0.479_256_093_894_236_9) <= 1e-12);
    }

    #[test]
    fn half_interval_examples() {
        assert!(rel_err(half_interval_beta_corrected(sp(0.5, 0.5)), PI) <= 1e-15);
        assert_eq!(half_interval_beta_corrected(sp(1.0, 1.0)), 1.0);
        assert!(rel_err(half_interval_beta_corrected(sp(2.0, 1.0)), 0.5) <= 1e-15);

        let ts = TanhSinh::default();
        // 2·∫₀^{½}(x(1−x))^{−1/2}dx = 2·(π/2)
        let q = oracle_value(
            Identity::HalfInterval,
            SupportInterval::unit(),
            sp(0.5, 0.5),
            &ts,
        )
        .unwrap();
        assert!(rel_err(2.0 * q.value, PI) <= 1e-12);
        // 8·∫₀^{½}(½−x)dx = 8·(1/8)
        let q = oracle_value(
            Identity::HalfInterval,
            SupportInterval::unit(),
            sp(1.0, 1.0),
            &ts,
        )
        .unwrap();
        assert!(rel_err(8.0 * q.value, 1.0) <= 1e-13);
        // 2⁵∫₀^{½} x(½−x)(1−x)dx: antiderivative x²/4 − x³/2 + x⁴/4 at ½ is 1/64
        let q = oracle_value(
            Identity::HalfInterval,
            SupportInterval::unit(),
            sp(2.0, 1.0),
            &ts,
        )
        .unwrap();
        assert!(rel_err(32.0 * q.value, 0.5) <= 1e-13);
        assert!(rel_err(half_interval_prefactor(sp(2.0, 1.0)), 32.0) <= 1e-15);
    }

    #[test]
    fn verify_examples() {
        let r = verify_identity(
            Identity::Shifted,
            SupportInterval::unit(),
            sp(0.5, 0.5),
            1e-8,
        )
        .unwrap();
        assert!(r.passed);
        assert!(rel_err(r.closed_value, PI) <= 1e-15);
        assert_eq!(r.abs_diff, (r.closed_value - r.oracle.value).abs());

        let r = verify_identity(Identity::SplitLower, iv(-1.0, 3.0), sp(0.5, 7.0), 1e-8).unwrap();
        assert!(r.passed);
        assert!(rel_err(r.closed_value, 10.0 * PI) <= 1e-12);

        let r = verify_identity(Identity::HalfInterval, iv(-3.0, 8.0), sp(3.0, 2.0), 1e-8).unwrap();
        assert!(r.passed);
        assert_eq!(r.interval, SupportInterval::unit());
    }

    #[test]
    fn verify_reports_mismatch_without_error() {
        // A threshold below the achievable agreement yields passed = false.
        let r = verify_identity(Identity::Shifted, iv(-5.0, 2.0), sp(0.3, 7.0), 1e-300).unwrap();
        assert!(!r.passed || r.rel_diff == 0.0);
        assert!(verify_identity(Identity::Shifted, iv(0.0, 1.0), sp(1.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn quadrature_failure_propagates() {
        let starved = TanhSinh {
            tol: 1e-16,
            max_level: 3,
        };
        let err = verify_identity_with(
            Identity::Shifted,
            iv(0.0, 1.0),
            sp(0.3, 0.3),
            1e-8,
            &starved,
        );
        assert!(matches!(err, Err(Error::QuadratureNoConvergence { .. })));
    }

    #[test]
    fn split_halves_recombine_to_shifted_integral() {
        // With the middle factor's exponent at zero (t = 1) the two halves
        // together are the whole-interval integral at shape (s, s).
        let ts = TanhSinh::default();
        for &(r1, r2) in &SWEEP_INTERVALS {
            for &s in &SWEEP_SHAPES {
                let upper =
                    oracle_value(Identity::SplitUpper, iv(r1, r2), sp(s, 1.0), &ts).unwrap();
                let lower =
                    oracle_value(Identity::SplitLower, iv(r1, r2), sp(s, 1.0), &ts).unwrap();
                let whole = oracle_value(Identity::Shifted, iv(r1, r2), sp(s, s), &ts).unwrap();
                let closed = shifted_beta_integral_closed(iv(r1, r2), sp(s, s));
                assert!(
                    rel_err(upper.value + lower.value, whole.value) <= 1e-8,
                    "s={s} [{r1},{r2}]"
                );
                assert!(rel_err(whole.value, closed) <= 1e-8);
            }
        }
    }

    #[test]
    fn shifted_scales_with_interval() {
        for c in [0.25, 3.0, 17.5] {
            for &(r1, r2) in &SWEEP_INTERVALS {
                for &s in &SWEEP_SHAPES {
                    for &t in &SWEEP_SHAPES {
                        let base = shifted_beta_integral_closed(iv(r1, r2), sp(s, t));
                        let scaled = shifted_beta_integral_closed(iv(c * r1, c * r2), sp(s, t));
                        assert!(rel_err(scaled, c.powf(s + t - 1.0) * base) <= 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn integrand_helpers_match_plain_integrands() {
        // The node-based split integrand equals the textbook x-form away from
        // the endpoints.
        let q = integrate_nodes(
            |n| {
                let x = n.x;
                ((3.0 - x) * (x - 2.0) * (x - 1.0)).sqrt()
            },
            2.0,
            3.0,
            1e-12,
        )
        .unwrap();
        let ts = TanhSinh::default();
        let ours = oracle_value(Identity::SplitUpper, iv(1.0, 3.0), sp(1.5, 1.5), &ts).unwrap();
        assert!(rel_err(q.value, ours.value) <= 1e-12);
    }

    #[test]
    fn worked_examples_are_off_grid_and_pass() {
        for id in Identity::ALL {
            for &((r1, r2), (s, t)) in worked_examples(id) {
                let on_grid = SWEEP_INTERVALS.contains(&(r1, r2))
                    && SWEEP_SHAPES.contains(&s)
                    && SWEEP_SHAPES.contains(&t);
                assert!(!on_grid, "{id} ({r1},{r2}) s={s} t={t}");
            }
            let reports = verify_worked_examples(id, 1e-8).unwrap();
            assert!(reports.iter().all(|r| r.passed), "{id}");
        }
        let ten_pi = verify_worked_examples(Identity::SplitLower, 1e-8).unwrap()[0];
        assert!(rel_err(ten_pi.closed_value, 10.0 * PI) <= 1e-12);
    }
}
