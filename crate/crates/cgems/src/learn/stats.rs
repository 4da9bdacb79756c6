//! Statistical primitives: Pearson correlation and the one-way F-test.
//!
//! The F-test p-value needs the regularized incomplete beta function,
//! which is evaluated here with a Lanczos log-gamma and a continued
//! fraction (modified Lentz iteration). Accuracy is comfortably below
//! 1e-10 over the degrees of freedom this crate uses.

use super::LearnError;

/// Pearson correlation coefficient.
///
/// Defined as 0 when either side has zero variance, so constant columns
/// never count as correlated with anything.
pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len(), "pearson requires equal-length slices");
    let n = x.len() as f64;
    if x.is_empty() {
        return 0.0;
    }
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return 0.0;
    }
    sxy / (sxx * syy).sqrt()
}

/// Natural log of the gamma function (Lanczos approximation, g = 7).
pub fn ln_gamma(x: f64) -> f64 {
    const COEFFICIENTS: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        // Reflection formula keeps the approximation in its happy range.
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = COEFFICIENTS[0];
    for (i, &c) in COEFFICIENTS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + 7.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// Regularized incomplete beta function I_x(a, b).
pub fn betainc(a: f64, b: f64, x: f64) -> f64 {
    assert!(a > 0.0 && b > 0.0, "betainc requires positive parameters");
    assert!((0.0..=1.0).contains(&x), "betainc requires x in [0, 1]");
    if x == 0.0 {
        return 0.0;
    }
    if x == 1.0 {
        return 1.0;
    }
    let front =
        (ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln()).exp();
    // The continued fraction converges fast only on one side of the mean;
    // use the symmetry I_x(a, b) = 1 - I_{1-x}(b, a) for the other side.
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_continued_fraction(a, b, x) / a
    } else {
        1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b
    }
}

fn beta_continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    const MAX_ITERATIONS: usize = 300;
    const EPSILON: f64 = 1e-15;
    const TINY: f64 = 1e-300;

    let clamp = |v: f64| if v.abs() < TINY { TINY } else { v };
    let mut c = 1.0;
    let mut d = 1.0 / clamp(1.0 - (a + b) * x / (a + 1.0));
    let mut value = d;
    for m in 1..=MAX_ITERATIONS {
        let m_f = m as f64;
        // Even step.
        let numerator = m_f * (b - m_f) * x / ((a + 2.0 * m_f - 1.0) * (a + 2.0 * m_f));
        d = 1.0 / clamp(1.0 + numerator * d);
        c = clamp(1.0 + numerator / c);
        value *= d * c;
        // Odd step.
        let numerator =
            -(a + m_f) * (a + b + m_f) * x / ((a + 2.0 * m_f) * (a + 2.0 * m_f + 1.0));
        d = 1.0 / clamp(1.0 + numerator * d);
        c = clamp(1.0 + numerator / c);
        let delta = d * c;
        value *= delta;
        if (delta - 1.0).abs() < EPSILON {
            break;
        }
    }
    value
}

/// Survival function of the F-distribution: P(F > f) for df (d1, d2).
pub fn f_survival(f: f64, d1: f64, d2: f64) -> f64 {
    if f <= 0.0 {
        return 1.0;
    }
    betainc(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f))
}

/// One-way ANOVA F-test of a feature against binary class labels.
///
/// Returns the F statistic and its p-value with (k - 1, n - k) degrees
/// of freedom. A zero within-group mean square makes the statistic
/// unbounded; it is reported as `f64::MAX` (p = 0) so reports stay
/// JSON-serializable, or as (0, 1) when the between-group spread is
/// zero too.
pub fn anova_f(values: &[f64], labels: &[u8]) -> Result<(f64, f64), LearnError> {
    if values.len() != labels.len() {
        return Err(LearnError::LengthMismatch(values.len(), labels.len()));
    }
    let mut groups: std::collections::BTreeMap<u8, Vec<f64>> = std::collections::BTreeMap::new();
    for (&v, &l) in values.iter().zip(labels) {
        groups.entry(l).or_default().push(v);
    }
    let k = groups.len();
    let n = values.len();
    if k < 2 {
        return Err(LearnError::SingleClass);
    }
    if n <= k {
        return Err(LearnError::Insufficient(format!(
            "F-test needs more than {k} rows for {k} groups, found {n}"
        )));
    }
    let grand_mean = values.iter().sum::<f64>() / n as f64;
    let mut between = 0.0;
    let mut within = 0.0;
    for members in groups.values() {
        let mean = members.iter().sum::<f64>() / members.len() as f64;
        between += members.len() as f64 * (mean - grand_mean).powi(2);
        within += members.iter().map(|v| (v - mean).powi(2)).sum::<f64>();
    }
    let d1 = (k - 1) as f64;
    let d2 = (n - k) as f64;
    let msb = between / d1;
    let msw = within / d2;
    if msw == 0.0 {
        return Ok(if msb == 0.0 { (0.0, 1.0) } else { (f64::MAX, 0.0) });
    }
    let f = msb / msw;
    Ok((f, f_survival(f, d1, d2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn pearson_matches_reference_values() {
        // Frozen from an independent statistics library.
        let a = [1.0, 2.0, 3.0, 4.0, 5.0];
        let b = [2.0, 4.0, 5.0, 4.0, 5.0];
        assert_relative_eq!(pearson(&a, &b), 0.7745966692414834, max_relative = 1e-12);
        let a2 = [1.0, 2.0, 3.0, 5.0];
        let b2 = [10.0, 9.0, 7.0, 1.0];
        assert_relative_eq!(pearson(&a2, &b2), -0.9804686029234599, max_relative = 1e-12);
    }

    #[test]
    fn pearson_perfect_and_constant_cases() {
        let x = [1.0, 2.0, 3.0];
        assert_relative_eq!(pearson(&x, &[2.0, 4.0, 6.0]), 1.0, epsilon = 1e-15);
        assert_relative_eq!(pearson(&x, &[3.0, 2.0, 1.0]), -1.0, epsilon = 1e-15);
        assert_eq!(pearson(&x, &[5.0, 5.0, 5.0]), 0.0);
        assert_eq!(pearson(&[], &[]), 0.0);
    }

    #[test]
    fn ln_gamma_hits_known_values() {
        // Gamma(n) = (n-1)! at integers; Gamma(1/2) = sqrt(pi).
        assert_relative_eq!(ln_gamma(1.0), 0.0, epsilon = 1e-13);
        assert_relative_eq!(ln_gamma(5.0), 24.0f64.ln(), max_relative = 1e-13);
        assert_relative_eq!(ln_gamma(10.5), 13.940625219403763, max_relative = 1e-13);
        assert_relative_eq!(
            ln_gamma(0.5),
            std::f64::consts::PI.sqrt().ln(),
            max_relative = 1e-13
        );
        assert_relative_eq!(ln_gamma(20.0), (1.21645100408832e17f64).ln(), max_relative = 1e-12);
    }

    #[test]
    fn betainc_matches_reference_values() {
        // Frozen from an independent special-function library.
        assert_relative_eq!(betainc(0.5, 5.5, 0.3), 0.9473368552914762, max_relative = 1e-10);
        assert_relative_eq!(betainc(2.0, 3.0, 0.5), 0.6875, max_relative = 1e-12);
        assert_relative_eq!(
            betainc(41.0, 0.5, 0.9),
            0.0033847725197227135,
            max_relative = 1e-10
        );
        assert_relative_eq!(
            betainc(5.0, 5.0, 0.001),
            1.2558053968507005e-13,
            max_relative = 1e-10
        );
        assert_eq!(betainc(2.0, 2.0, 0.0), 0.0);
        assert_eq!(betainc(2.0, 2.0, 1.0), 1.0);
    }

    #[test]
    fn f_survival_matches_reference_values() {
        // Frozen from an independent statistics library.
        let cases = [
            (5.0, 1.0, 11.0, 0.04702404198763174),
            (0.5, 1.0, 82.0, 0.481504825063948),
            (17.3, 1.0, 30.0, 0.00024601775640002526),
            (0.001, 1.0, 5.0, 0.9759963654373608),
            (250.0, 1.0, 11.0, 6.5375418465293395e-09),
        ];
        for (f, d1, d2, expected) in cases {
            assert_relative_eq!(f_survival(f, d1, d2), expected, max_relative = 1e-9);
        }
        assert_eq!(f_survival(0.0, 1.0, 10.0), 1.0);
    }

    #[test]
    fn f_survival_agrees_with_quadrature() {
        // Independent oracle: Simpson integration of the F density.
        fn f_pdf(x: f64, d1: f64, d2: f64) -> f64 {
            let ln_beta = ln_gamma(d1 / 2.0) + ln_gamma(d2 / 2.0) - ln_gamma((d1 + d2) / 2.0);
            let ln_num = d1 / 2.0 * (d1 * x).ln() + d2 / 2.0 * d2.ln()
                - (d1 + d2) / 2.0 * (d1 * x + d2).ln();
            (ln_num - ln_beta).exp() / x
        }
        fn simpson_cdf(f: f64, d1: f64, d2: f64) -> f64 {
            // With d1 = 1 the density blows up like 1/sqrt(x) at zero;
            // substituting x = t^2 makes the integrand smooth.
            let g = |t: f64| {
                let t = t.max(1e-12);
                2.0 * t * f_pdf(t * t, d1, d2)
            };
            let upper = f.sqrt();
            let steps = 100_000;
            let h = upper / steps as f64;
            let mut total = 0.0;
            for i in 0..steps {
                let a = i as f64 * h;
                total += h / 6.0 * (g(a) + 4.0 * g(a + h / 2.0) + g(a + h));
            }
            total
        }
        for (f, d1, d2) in [(5.0, 1.0, 11.0), (2.5, 1.0, 6.0), (0.8, 1.0, 40.0), (1.5, 1.0, 4.0)]
        {
            let oracle = 1.0 - simpson_cdf(f, d1, d2);
            assert_relative_eq!(f_survival(f, d1, d2), oracle, max_relative = 1e-6);
        }
    }

    #[test]
    fn anova_hand_example_is_exact() {
        // Groups [1,2,3] vs [2,3,4]: between-mean-square 1.5, within 1.0.
        let (f, _) = anova_f(&[1.0, 2.0, 3.0, 2.0, 3.0, 4.0], &[0, 0, 0, 1, 1, 1]).unwrap();
        assert_relative_eq!(f, 1.5, epsilon = 1e-9);
    }

    #[test]
    fn anova_is_invariant_under_affine_feature_maps() {
        let x = [1.0, 3.0, 2.0, 5.0, 4.0, 6.0, 5.0, 8.0];
        let labels = [0, 0, 0, 0, 1, 1, 1, 1];
        let (f, p) = anova_f(&x, &labels).unwrap();

        let shifted: Vec<f64> = x.iter().map(|v| v + 1000.0).collect();
        let (f_shift, p_shift) = anova_f(&shifted, &labels).unwrap();
        assert_relative_eq!(f_shift, f, max_relative = 1e-9);
        assert_relative_eq!(p_shift, p, max_relative = 1e-9);

        let scaled: Vec<f64> = x.iter().map(|v| 0.25 * v - 7.0).collect();
        let (f_scale, p_scale) = anova_f(&scaled, &labels).unwrap();
        assert_relative_eq!(f_scale, f, max_relative = 1e-9);
        assert_relative_eq!(p_scale, p, max_relative = 1e-9);
    }

    #[test]
    fn anova_matches_reference_values() {
        // Frozen from an independent feature-selection library.
        let x = [1.0, 2.0, 3.0, 4.0, 10.0, 11.0, 12.0, 13.0];
        let labels = [0, 0, 0, 0, 1, 1, 1, 1];
        let (f, p) = anova_f(&x, &labels).unwrap();
        assert_relative_eq!(f, 97.19999999999999, max_relative = 1e-12);
        assert_relative_eq!(p, 6.280125725146631e-05, max_relative = 1e-9);

        let x2 = [1.0, 3.0, 2.0, 5.0, 4.0, 6.0, 5.0, 8.0, 7.0, 9.0];
        let l2 = [0, 0, 0, 0, 0, 1, 1, 1, 1, 1];
        let (f2, p2) = anova_f(&x2, &l2).unwrap();
        assert_relative_eq!(f2, 16.0, max_relative = 1e-12);
        assert_relative_eq!(p2, 0.003949772803445326, max_relative = 1e-9);
    }

    #[test]
    fn anova_degenerate_cases() {
        // Perfect separation with zero within-group variance.
        let (f, p) = anova_f(&[1.0, 1.0, 2.0, 2.0], &[0, 0, 1, 1]).unwrap();
        assert_eq!((f, p), (f64::MAX, 0.0));
        // Completely constant feature.
        let (f, p) = anova_f(&[3.0, 3.0, 3.0, 3.0], &[0, 0, 1, 1]).unwrap();
        assert_eq!((f, p), (0.0, 1.0));
        // Single class is an error.
        assert!(matches!(
            anova_f(&[1.0, 2.0, 3.0], &[1, 1, 1]),
            Err(LearnError::SingleClass)
        ));
        // Two rows, two groups: zero residual degrees of freedom.
        assert!(anova_f(&[1.0, 2.0], &[0, 1]).is_err());
    }
}
