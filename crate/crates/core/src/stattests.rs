//! Two-sample Kolmogorov–Smirnov, Levene and Ljung–Box tests.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{chi_square_sf, f_sf, kolmogorov_sf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestKind {
    KolmogorovSmirnov,
    Levene,
    LjungBox,
}

impl TestKind {
    pub fn name(self) -> &'static str {
        match self {
            TestKind::KolmogorovSmirnov => "ks",
            TestKind::Levene => "levene",
            TestKind::LjungBox => "ljungbox",
        }
    }
}

impl fmt::Display for TestKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TestKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ks" => Ok(TestKind::KolmogorovSmirnov),
            "levene" => Ok(TestKind::Levene),
            "ljungbox" | "ljung-box" => Ok(TestKind::LjungBox),
            other => Err(Error::validation(format!("unknown test {other:?}"))),
        }
    }
}

/// Center used for Levene's absolute deviations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Centering {
    #[default]
    Mean,
    Median,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TestParameters {
    pub sample_sizes: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lags: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub centering: Option<Centering>,
    /// Numerator and denominator degrees of freedom (Levene) or df (Ljung–Box).
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub degrees_of_freedom: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub test: TestKind,
    pub statistic: f64,
    pub p_value: f64,
    pub parameters: TestParameters,
}

fn check_finite(xs: &[f64], what: &str) -> Result<()> {
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(Error::validation(format!(
            "{what} contains a non-finite value"
        )));
    }
    Ok(())
}

fn sorted(xs: &[f64]) -> Vec<f64> {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    v
}

/// Two-sample KS test with the asymptotic Kolmogorov p-value at `√(nm/(n+m))·D`.
pub fn ks_two_sample(x: &[f64], y: &[f64]) -> Result<TestResult> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::validation("KS test needs two non-empty samples"));
    }
    check_finite(x, "first sample")?;
    check_finite(y, "second sample")?;

    let (xs, ys) = (sorted(x), sorted(y));
    let (n, m) = (xs.len(), ys.len());
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < n && j < m {
        let v = xs[i].min(ys[j]);
        while i < n && xs[i] == v {
            i += 1;
        }
        while j < m && ys[j] == v {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    // Once either sample is exhausted the other CDF only rises toward 1,
    // so the gap is already maximal along the way.

    let ne = (n * m) as f64 / (n + m) as f64;
    let p_value = kolmogorov_sf(ne.sqrt() * d);
    Ok(TestResult {
        test: TestKind::KolmogorovSmirnov,
        statistic: d,
        p_value,
        parameters: TestParameters {
            sample_sizes: vec![n, m],
            ..Default::default()
        },
    })
}

fn center(xs: &[f64], centering: Centering) -> f64 {
    match centering {
        Centering::Mean => xs.iter().sum::<f64>() / xs.len() as f64,
        Centering::Median => {
            let s = sorted(xs);
            let mid = s.len() / 2;
            if s.len().is_multiple_of(2) {
                0.5 * (s[mid - 1] + s[mid])
            } else {
                s[mid]
            }
        }
    }
}

/// Levene's test for equal variances. `p` from F(k − 1, N − k).
pub fn levene(groups: &[&[f64]], centering: Centering) -> Result<TestResult> {
    if groups.len() < 2 {
        return Err(Error::validation("Levene's test needs at least two groups"));
    }
    for (g, xs) in groups.iter().enumerate() {
        if xs.len() < 2 {
            return Err(Error::validation(format!(
                "Levene group {g} has {} values, need at least 2",
                xs.len()
            )));
        }
        check_finite(xs, "Levene group")?;
    }

    let deviations: Vec<Vec<f64>> = groups
        .iter()
        .map(|xs| {
            let c = center(xs, centering);
            xs.iter().map(|x| (x - c).abs()).collect()
        })
        .collect();
    let k = groups.len();
    let total_n: usize = groups.iter().map(|g| g.len()).sum();
    let group_means: Vec<f64> = deviations
        .iter()
        .map(|z| z.iter().sum::<f64>() / z.len() as f64)
        .collect();
    let grand_mean = deviations.iter().flatten().sum::<f64>() / total_n as f64;

    let between: f64 = deviations
        .iter()
        .zip(&group_means)
        .map(|(z, zm)| z.len() as f64 * (zm - grand_mean).powi(2))
        .sum();
    let within: f64 = deviations
        .iter()
        .zip(&group_means)
        .map(|(z, zm)| z.iter().map(|v| (v - zm).powi(2)).sum::<f64>())
        .sum();

    let (d1, d2) = (k - 1, total_n - k);
    let scale = d2 as f64 / d1 as f64;
    let between_negligible = between <= 1e-14 * (within + grand_mean * grand_mean * total_n as f64);
    let statistic = if between_negligible {
        0.0
    } else if within == 0.0 {
        return Err(Error::undefined(
            "Levene statistic undefined: absolute deviations do not vary within groups",
        ));
    } else {
        scale * between / within
    };
    let p_value = if statistic == 0.0 {
        1.0
    } else {
        f_sf(statistic, d1 as u32, d2 as u32)?
    };

    Ok(TestResult {
        test: TestKind::Levene,
        statistic,
        p_value,
        parameters: TestParameters {
            sample_sizes: groups.iter().map(|g| g.len()).collect(),
            centering: Some(centering),
            degrees_of_freedom: vec![d1, d2],
            ..Default::default()
        },
    })
}

/// Sample autocorrelations `r_1..=r_lags`.
pub fn autocorrelations(series: &[f64], lags: usize) -> Result<Vec<f64>> {
    let n = series.len();
    let mean = series.iter().sum::<f64>() / n as f64;
    let denom: f64 = series.iter().map(|x| (x - mean).powi(2)).sum();
    if denom == 0.0 {
        return Err(Error::undefined("autocorrelation of a constant series"));
    }
    Ok((1..=lags)
        .map(|k| {
            series[..n - k]
                .iter()
                .zip(&series[k..])
                .map(|(a, b)| (a - mean) * (b - mean))
                .sum::<f64>()
                / denom
        })
        .collect())
}

/// Ljung–Box portmanteau test, `Q = n(n+2) Σ r_k²/(n−k)` against χ²(lags).
pub fn ljung_box(series: &[f64], lags: usize) -> Result<TestResult> {
    let n = series.len();
    if lags == 0 || lags >= n {
        return Err(Error::validation(format!(
            "Ljung-Box needs 1 <= lags < series length, got lags={lags}, n={n}"
        )));
    }
    check_finite(series, "series")?;
    let r = autocorrelations(series, lags)?;
    let nf = n as f64;
    let q = nf
        * (nf + 2.0)
        * r.iter()
            .enumerate()
            .map(|(i, rk)| rk * rk / (nf - (i + 1) as f64))
            .sum::<f64>();
    let p_value = chi_square_sf(q, lags as u32)?;
    Ok(TestResult {
        test: TestKind::LjungBox,
        statistic: q,
        p_value,
        parameters: TestParameters {
            sample_sizes: vec![n],
            lags: Some(lags),
            degrees_of_freedom: vec![lags],
            ..Default::default()
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ks_identical_samples() {
        let x = [0.3, 1.2, -0.4, 2.2, 0.3];
        let r = ks_two_sample(&x, &x).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn ks_disjoint_supports() {
        let r = ks_two_sample(&[1.0, 2.0, 3.0], &[4.0, 5.0]).unwrap();
        assert_eq!(r.statistic, 1.0);
    }

    #[test]
    fn ks_handles_ties_across_samples() {
        // F_x jumps to 1 at 1.0 while F_y is 0.5 there.
        let r = ks_two_sample(&[1.0, 1.0], &[1.0, 2.0]).unwrap();
        assert!((r.statistic - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ks_is_symmetric_and_order_free() {
        let x = [0.1, 0.7, 0.3, 0.9, 0.2, 0.4];
        let y = [0.5, 0.6, 1.1, 0.05];
        let a = ks_two_sample(&x, &y).unwrap();
        let b = ks_two_sample(&y, &x).unwrap();
        let mut xr = x;
        xr.reverse();
        let c = ks_two_sample(&xr, &y).unwrap();
        assert_eq!(a.statistic, b.statistic);
        assert_eq!(a.statistic, c.statistic);
        assert_eq!(a.p_value, b.p_value);
    }

    #[test]
    fn ks_rejects_empty() {
        assert!(ks_two_sample(&[], &[1.0]).is_err());
        assert!(ks_two_sample(&[1.0], &[]).is_err());
        assert!(ks_two_sample(&[f64::NAN], &[1.0]).is_err());
    }

    #[test]
    fn levene_identical_groups() {
        let g = [1.0, 4.0, 2.5, 7.0];
        let r = levene(&[&g, &g], Centering::Mean).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn levene_hand_computed() {
        // z = |x − mean|: group 1 all 0, group 2 = [3,1,1,3] (mean 2); grand mean 1.
        // between = 4·1 + 4·1 = 8, within = 4, W = (8−2)/(2−1) · 8/4 = 12.
        let r = levene(&[&[0.0; 4], &[-3.0, -1.0, 1.0, 3.0]], Centering::Mean).unwrap();
        assert!((r.statistic - 12.0).abs() < 1e-12);
        assert!(r.p_value < 0.05);
        assert_eq!(r.parameters.degrees_of_freedom, vec![1, 6]);
        // p = P(F(1,6) > 12) = P(|t_6| > √12)
        assert!((r.p_value - 0.013_399_964_712_331).abs() < 1e-9);
    }

    #[test]
    fn levene_median_centering() {
        let r = levene(&[&[0.0, 1.0, 2.0], &[0.0, 2.0, 10.0]], Centering::Median).unwrap();
        // deviations: [1,0,1] and [2,0,8]
        assert_eq!(r.parameters.centering, Some(Centering::Median));
        assert!(r.statistic > 0.0 && r.p_value < 1.0);
    }

    #[test]
    fn levene_validation() {
        assert!(levene(&[&[1.0, 2.0]], Centering::Mean).is_err());
        assert!(levene(&[&[1.0, 2.0], &[3.0]], Centering::Mean).is_err());
        assert!(matches!(
            levene(&[&[0.0, 0.0], &[1.0, -1.0]], Centering::Mean),
            Err(Error::UndefinedStatistic(_))
        ));
    }

    #[test]
    fn ljung_box_zero_autocorrelation() {
        // r_1 = (1·0 + 0·(−1) + (−1)·0) / 2 = 0
        let r = ljung_box(&[1.0, 0.0, -1.0, 0.0], 1).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn ljung_box_alternating_series() {
        let x: Vec<f64> = (0..63)
            .map(|t| if t % 2 == 0 { 1.0 } else { -1.0 })
            .collect();
        let r = ljung_box(&x, 5).unwrap();
        assert!(r.p_value < 0.001);
        assert!(r.statistic > 0.0);
    }

    #[test]
    fn ljung_box_errors() {
        assert!(matches!(
            ljung_box(&[3.0; 20], 5),
            Err(Error::UndefinedStatistic(_))
        ));
        assert!(matches!(
            ljung_box(&[1.0, 2.0, 3.0], 3),
            Err(Error::Validation(_))
        ));
        assert!(matches!(
            ljung_box(&[1.0, 2.0, 3.0], 0),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn test_names_parse() {
        for t in [
            TestKind::KolmogorovSmirnov,
            TestKind::Levene,
            TestKind::LjungBox,
        ] {
            assert_eq!(t.name().parse::<TestKind>().unwrap(), t);
        }
    }
}
