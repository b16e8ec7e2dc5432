use arcbeta_core::arcsine_law::{
    argmax_index_law, ks_against, ks_two_sample, simulate_argmax_fractions, WalkConfig,
};
use arcbeta_core::quadrature::TanhSinh;
use arcbeta_core::GeneralizedBetaDist;

const SHAPES: [f64; 5] = [0.3, 0.5, 1.0, 2.5, 7.0];
const INTERVALS: [(f64, f64); 3] = [(0.0, 1.0), (-1.0, 3.0), (1.0, 3.0)];

fn rel(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

fn grid() -> impl Iterator<Item = GeneralizedBetaDist> {
    INTERVALS.into_iter().flat_map(|(r1, r2)| {
        SHAPES.into_iter().flat_map(move |s| {
            SHAPES
                .into_iter()
                .map(move |t| GeneralizedBetaDist::from_params(r1, r2, s, t).unwrap())
        })
    })
}

#[test]
fn density_integrates_to_one() {
    let q = TanhSinh::default();
    for d in grid() {
        let (s, t) = (d.shape().s(), d.shape().t());
        let ln_norm = d.log_normalizer();
        let total = q
            .integrate_nodes(
                |n| ((s - 1.0) * n.from_lower.ln() + (t - 1.0) * n.to_upper.ln() - ln_norm).exp(),
                d.support().r1(),
                d.support().r2(),
            )
            .unwrap()
            .value;
        assert!((total - 1.0).abs() <= 1e-10, "{d:?}: {total}");
    }
}

#[test]
fn plain_pdf_integrates_to_one_away_from_singular_endpoints() {
    // Shapes ≥ 1 keep the density bounded, so the x-only integrand is exact enough.
    for d in grid().filter(|d| d.shape().s() >= 1.0 && d.shape().t() >= 1.0) {
        let total = TanhSinh::default()
            .integrate(|x| d.pdf(x), d.support().r1(), d.support().r2())
            .unwrap()
            .value;
        assert!((total - 1.0).abs() <= 1e-10, "{d:?}: {total}");
    }
}

#[test]
fn odd_numeric_moments_vanish_when_symmetric() {
    for (r1, r2) in INTERVALS {
        for s in [0.5, 1.0, 1.5, 3.0] {
            let d = GeneralizedBetaDist::from_params(r1, r2, s, s).unwrap();
            for n in 1..=5 {
                let m = d.central_moment_numeric(2 * n - 1).unwrap();
                assert!(m.abs() <= 1e-10, "[{r1},{r2}] s={s} k={}: {m}", 2 * n - 1);
            }
        }
    }
}

#[test]
fn central_moments_scale_with_width() {
    for s in [0.5, 1.0, 1.5, 3.0] {
        let unit = GeneralizedBetaDist::from_params(0.0, 1.0, s, s).unwrap();
        for (r1, r2) in [(-1.0, 3.0), (1.0, 3.0), (-5.0, 2.0), (0.25, 0.5)] {
            let d = GeneralizedBetaDist::from_params(r1, r2, s, s).unwrap();
            let w: f64 = r2 - r1;
            for k in (2..=12).step_by(2) {
                let scaled = w.powi(k as i32) * unit.central_moment(k).unwrap();
                assert!(
                    rel(d.central_moment(k).unwrap(), scaled) <= 1e-12,
                    "s={s} k={k}"
                );
            }
        }
    }
}

#[test]
fn sampled_mean_and_ks_for_symmetric_shapes() {
    let arcsine = GeneralizedBetaDist::standard_arcsine();
    let xs = arcsine.sample(100_000, 77).unwrap();
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let sigma = 0.125f64.sqrt();
    assert!(
        (mean - 0.5).abs() <= 4.0 * sigma / (xs.len() as f64).sqrt(),
        "{mean}"
    );

    for (seed, (r1, r2, s)) in [(-1.0, 3.0, 0.3), (1.0, 3.0, 2.5), (0.0, 1.0, 7.0)]
        .into_iter()
        .enumerate()
    {
        let d = GeneralizedBetaDist::from_params(r1, r2, s, s).unwrap();
        let report = ks_against(&d.sample(100_000, seed as u64).unwrap(), &d).unwrap();
        assert!(report.passed, "s={s}: {report:?}");
    }
}

#[test]
fn argmax_fractions_center_on_one_half() {
    let cfg = WalkConfig::new(1000, 10_000, 5).unwrap();
    let fr = simulate_argmax_fractions(&cfg);
    let mean = fr.iter().sum::<f64>() / fr.len() as f64;
    assert!((mean - 0.5).abs() <= 0.02, "{mean}");
    let var = fr.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / fr.len() as f64;
    assert!((var - 0.125).abs() <= 0.01, "{var}");
}

#[test]
fn argmax_fractions_are_reflection_symmetric() {
    let cfg = WalkConfig::new(1000, 10_000, 8).unwrap();
    let fr = simulate_argmax_fractions(&cfg);
    let mirrored: Vec<f64> = fr.iter().map(|f| 1.0 - f).collect();
    let report = ks_two_sample(&fr, &mirrored).unwrap();
    assert!(report.passed, "{report:?}");
}

#[test]
fn argmax_simulation_is_bitwise_deterministic() {
    let cfg = WalkConfig::new(777, 3_000, 123).unwrap();
    let a = simulate_argmax_fractions(&cfg);
    let b = simulate_argmax_fractions(&cfg);
    assert!(a.iter().zip(&b).all(|(x, y)| x.to_bits() == y.to_bits()));
}

#[test]
fn simulated_argmax_matches_exact_discrete_law() {
    let steps = 1000u32;
    let paths = 10_000usize;
    let fr = simulate_argmax_fractions(&WalkConfig::new(steps, paths, 1).unwrap());
    let mut counts = vec![0usize; steps as usize + 1];
    for f in &fr {
        counts[(f * f64::from(steps)).round() as usize] += 1;
    }
    let (mut emp, mut exact, mut sup) = (0.0, 0.0, 0.0_f64);
    for (c, p) in counts.iter().zip(argmax_index_law(steps)) {
        emp += *c as f64 / paths as f64;
        exact += p;
        sup = sup.max((emp - exact).abs());
    }
    assert!(sup < 1.63 / (paths as f64).sqrt(), "{sup}");
}
