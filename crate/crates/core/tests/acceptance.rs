//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::process::Command;
use std::time::Instant;

use rand::SeedableRng;
use rand_distr::{Distribution, StandardNormal};
use rand_pcg::Pcg64Mcg;

use common::{chi_square_cdf_oracle, f_cdf_oracle};
use hexlab::hexagram::Ordering;
use hexlab::metrics::{hamming_series, SurpriseModel};
use hexlab::permtest::{
    lag1_autocorrelation, mean_transition_distance, monte_carlo_many, pair_asymmetry,
    yang_balanced_group_count, MonteCarloConfig, MonteCarloReport, Statistic,
};
use hexlab::report::{compare, CompareConfig};
use hexlab::schedules::{curriculum_map, ModulationSchedule, ProfileSource, Strategy};
use hexlab::seedsweep::{classify_effect, summarize, Classification};
use hexlab::special::{chi_square_cdf, f_cdf};
use hexlab::stattests::{ks_two_sample, levene, ljung_box, Centering, TestKind};

struct Outcome {
    pass: bool,
    detail: String,
}

struct Checks {
    failures: Vec<String>,
}

impl Checks {
    fn check(&mut self, ok: bool, what: String) {
        if !ok {
            self.failures.push(what);
        }
    }
    fn done(self, detail: String) -> Outcome {
        let pass = self.failures.is_empty();
        let detail = if pass {
            detail
        } else {
            format!("{detail}; failed: {}", self.failures.join(", "))
        };
        Outcome { pass, detail }
    }
}

fn checks() -> Checks {
    Checks {
        failures: Vec::new(),
    }
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn in_range(x: f64, lo: f64, hi: f64) -> bool {
    (lo..=hi).contains(&x)
}

struct NullRun {
    reports: Vec<MonteCarloReport>,
    seconds: f64,
}

impl NullRun {
    fn get(&self, s: Statistic) -> &MonteCarloReport {
        self.reports.iter().find(|r| r.statistic == s).unwrap()
    }
}

fn null_run() -> NullRun {
    let kw = Ordering::king_wen();
    let start = Instant::now();
    let reports = monte_carlo_many(
        &Statistic::ALL,
        &kw,
        MonteCarloConfig::new(100_000, 42).with_threads(1),
    )
    .unwrap();
    NullRun {
        reports,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn criterion_1(run: &NullRun) -> Outcome {
    let mut c = checks();
    let d = mean_transition_distance(&Ordering::king_wen());
    let r = run.get(Statistic::MeanTransitionDistance);
    c.check(within(d, 3.35, 0.01), format!("distance {d}"));
    c.check(
        in_range(r.percentile, 97.7, 98.7),
        format!("percentile {}", r.percentile),
    );
    c.check(run.seconds < 10.0, format!("runtime {:.2}s", run.seconds));
    c.done(format!(
        "distance {d:.6}, percentile {:.3}, {:.2}s for 4 statistics",
        r.percentile, run.seconds
    ))
}

fn criterion_2(run: &NullRun) -> Outcome {
    let mut c = checks();
    let rho = lag1_autocorrelation(&hamming_series(&Ordering::king_wen())).unwrap();
    let r = run.get(Statistic::Lag1Autocorrelation);
    c.check(within(rho, -0.251, 0.005), format!("lag-1 {rho}"));
    c.check(
        in_range(r.percentile, 3.2, 4.2),
        format!("percentile {}", r.percentile),
    );
    c.done(format!("lag-1 {rho:.6}, percentile {:.3}", r.percentile))
}

fn criterion_3(run: &NullRun) -> Outcome {
    let mut c = checks();
    let g = yang_balanced_group_count(&Ordering::king_wen());
    let r = run.get(Statistic::YangBalancedGroups);
    c.check(g == 7, format!("groups {g}"));
    c.check(
        within(r.null_mean, 2.6, 0.1),
        format!("null mean {}", r.null_mean),
    );
    c.check(
        within(r.null_std, 1.5, 0.1),
        format!("null std {}", r.null_std),
    );
    c.check(r.percentile >= 99.5, format!("percentile {}", r.percentile));
    c.done(format!(
        "groups {g}, null {:.3} ± {:.3}, percentile {:.3}",
        r.null_mean, r.null_std, r.percentile
    ))
}

fn criterion_4(run: &NullRun) -> Outcome {
    let mut c = checks();
    let pa = pair_asymmetry(&Ordering::king_wen());
    let r = run.get(Statistic::PairAsymmetry);
    c.check(
        within(pa.within_mean, 3.56, 0.02),
        format!("within {:.4}", pa.within_mean),
    );
    c.check(
        within(pa.between_mean, 2.94, 0.02),
        format!("between {:.4}", pa.between_mean),
    );
    c.check(within(pa.diff, 0.62, 0.02), format!("diff {:.4}", pa.diff));
    c.check(
        in_range(r.percentile, 98.8, 99.6),
        format!("percentile {:.3}", r.percentile),
    );
    c.done(format!(
        "within {:.4}, between {:.4}, diff {:.4}, percentile {:.3}",
        pa.within_mean, pa.between_mean, pa.diff, r.percentile
    ))
}

fn criterion_5(run: &NullRun) -> Outcome {
    let mut c = checks();
    let closed = 3.0 * 64.0 / 63.0;
    let m = run.get(Statistic::MeanTransitionDistance).null_mean;
    c.check(
        within(closed, 3.0476, 1e-4),
        format!("closed form {closed}"),
    );
    c.check(within(m, 3.0476, 0.01), format!("null mean {m}"));
    c.done(format!("null mean {m:.5} vs 3·64/63 = {closed:.5}"))
}

fn criterion_6() -> Outcome {
    let mut c = checks();
    let rep = compare(&CompareConfig::default(), &SurpriseModel::default()).unwrap();
    let kw = rep.profile("kingwen").unwrap();
    let sy = rep.profile("shaoyong").unwrap();
    let bin = rep.profile("binary").unwrap();
    let rnd = rep.profile("random").unwrap();
    let lev = rep
        .pairwise_result("kingwen", "random", TestKind::Levene)
        .unwrap();
    let ks_sy = rep
        .pairwise_result("kingwen", "shaoyong", TestKind::KolmogorovSmirnov)
        .unwrap();
    let ks_rnd = rep
        .pairwise_result("kingwen", "random", TestKind::KolmogorovSmirnov)
        .unwrap();
    c.check(kw.mean > rnd.mean, "KW mean > random".into());
    c.check(sy.mean < rnd.mean, "Shao Yong mean < random".into());
    c.check(bin.mean < rnd.mean, "binary mean < random".into());
    c.check(kw.variance > rnd.variance, "KW variance > random".into());
    c.check(lev.p_value < 0.05, format!("Levene p {}", lev.p_value));
    c.check(
        ks_sy.p_value < 0.01,
        format!("KS vs Shao Yong p {}", ks_sy.p_value),
    );
    c.check(
        ks_rnd.p_value > 0.1,
        format!("KS vs random p {}", ks_rnd.p_value),
    );
    c.done(format!(
        "means KW {:.4} / random {:.4} / SY {:.4} / binary {:.4}; Levene p {:.4}; KS p vs SY {:.2e}, vs random {:.3}",
        kw.mean, rnd.mean, sy.mean, bin.mean, lev.p_value, ks_sy.p_value, ks_rnd.p_value
    ))
}

fn criterion_7() -> Outcome {
    let mut c = checks();
    let config = CompareConfig {
        tests: vec![TestKind::LjungBox],
        ..CompareConfig::default()
    };
    let rep = compare(&config, &SurpriseModel::default()).unwrap();
    let p = |name: &str| rep.ljung_box_for(name).unwrap().p_value;
    let rate = rep.random_ljung_box.as_ref().unwrap().rejection_rate;
    c.check(p("binary") < 0.01, format!("binary p {}", p("binary")));
    c.check(
        p("shaoyong") < 0.05,
        format!("Shao Yong p {}", p("shaoyong")),
    );
    c.check(p("kingwen") > 0.1, format!("KW p {}", p("kingwen")));
    c.check(
        in_range(rate, 0.02, 0.08),
        format!("random rejection rate {rate}"),
    );
    c.done(format!(
        "binary p {:.2e}, SY p {:.2e}, KW p {:.3}, random rejection rate {rate:.3}",
        p("binary"),
        p("shaoyong"),
        p("kingwen")
    ))
}

fn criterion_8() -> Outcome {
    let mut c = checks();
    let mut worst = 0f64;
    for df in [1, 2, 3, 5, 10] {
        for x in [0.5, 1.0, 3.0, 7.0, 15.0] {
            let err = (chi_square_cdf(x, df).unwrap() - chi_square_cdf_oracle(x, df)).abs();
            worst = worst.max(err);
            c.check(err <= 1e-8, format!("chi2({x}, {df}) off by {err:e}"));
        }
    }
    for (d1, d2) in [(1, 10), (2, 20), (4, 10), (5, 60), (2, 124)] {
        for x in [0.2, 0.8, 1.5, 3.0, 6.0] {
            let err = (f_cdf(x, d1, d2).unwrap() - f_cdf_oracle(x, d1, d2)).abs();
            worst = worst.max(err);
            c.check(err <= 1e-8, format!("F({x}, {d1}, {d2}) off by {err:e}"));
        }
    }

    let trials = 2000;
    let mut rng = Pcg64Mcg::seed_from_u64(8);
    let mut draw =
        |n: usize| -> Vec<f64> { (0..n).map(|_| StandardNormal.sample(&mut rng)).collect() };
    let (mut ks, mut lev, mut lb) = (0, 0, 0);
    for _ in 0..trials {
        let (x, y) = (draw(63), draw(63));
        ks += (ks_two_sample(&x, &y).unwrap().p_value < 0.05) as u32;
        lev += (levene(&[&x, &y], Centering::Mean).unwrap().p_value < 0.05) as u32;
        lb += (ljung_box(&draw(63), 5).unwrap().p_value < 0.05) as u32;
    }
    let rate = |k: u32| k as f64 / trials as f64;
    for (name, k) in [("KS", ks), ("Levene", lev), ("Ljung-Box", lb)] {
        c.check(
            within(rate(k), 0.05, 0.02),
            format!("{name} rate {}", rate(k)),
        );
    }
    c.done(format!(
        "50-point grid max error {worst:.1e}; false-positive rates KS {:.4}, Levene {:.4}, Ljung-Box {:.4}",
        rate(ks),
        rate(lev),
        rate(lb)
    ))
}

fn criterion_9() -> Outcome {
    let mut c = checks();
    let model = SurpriseModel::default();
    let sources = [
        ProfileSource::Kingwen,
        ProfileSource::Shaoyong {
            convention: Default::default(),
        },
        ProfileSource::Random { seed: 42 },
    ];
    for source in sources {
        for a in [0.15, 0.3, 0.5] {
            let s = ModulationSchedule::new(source, a, &model).unwrap();
            let m = s.lr_multipliers(3 * 63).unwrap();
            let min = m.iter().copied().fold(f64::INFINITY, f64::min);
            let max = m.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            c.check(
                within(min, 1.0 - a, 1e-12),
                format!("{source:?} A={a} min {min}"),
            );
            c.check(
                within(max, 1.0 + a, 1e-12),
                format!("{source:?} A={a} max {max}"),
            );
            c.check(
                (63..m.len()).all(|i| m[i] == m[i - 63]),
                format!("{source:?} A={a} period"),
            );
        }
    }
    c.done("3 profiles × A ∈ {0.15, 0.3, 0.5}: min 1−A, max 1+A, period 63".into())
}

fn criterion_10() -> Outcome {
    let mut c = checks();
    let model = SurpriseModel::default();
    let mut rng = Pcg64Mcg::seed_from_u64(10);
    let strategies = |seed| {
        [
            Strategy::Sequential,
            Strategy::Random { seed },
            Strategy::EasyToHard,
            Strategy::HardToEasy,
            Strategy::Kingwen,
        ]
    };
    let mut bijections = 0;
    for trial in 0..1000u64 {
        let scores: Vec<f64> = (0..64).map(|_| StandardNormal.sample(&mut rng)).collect();
        for strategy in strategies(trial) {
            let m = curriculum_map(&scores, strategy, &model).unwrap();
            let mut seen = [false; 64];
            let ok = m.emit_position.len() == 64
                && m.emit_position
                    .iter()
                    .all(|&p| p < 64 && !std::mem::replace(&mut seen[p], true));
            bijections += ok as u32;
        }
        let scaled: Vec<f64> = scores.iter().map(|v| v * 7.5).collect();
        let a = curriculum_map(&scores, Strategy::Kingwen, &model).unwrap();
        let b = curriculum_map(&scaled, Strategy::Kingwen, &model).unwrap();
        c.check(
            a.emit_position == b.emit_position,
            format!("rescaling changed mapping in trial {trial}"),
        );
    }
    c.check(bijections == 5000, format!("{bijections}/5000 bijections"));

    // 30-value synthetic sweep, min 1.732 and max 1.773.
    let sweep: Vec<f64> = (0..30)
        .map(|i| match i {
            0 => 1.732,
            29 => 1.773,
            _ => 1.756 + 0.009 * ((i as f64 * 2.39996).sin()),
        })
        .collect();
    let s = summarize(&sweep).unwrap();
    let hi = classify_effect(1.785, &s).classification;
    let lo = classify_effect(1.731, &s).classification;
    c.check((s.min, s.max) == (1.732, 1.773), "sweep bounds".into());
    c.check(
        hi == Classification::ExceedsNoiseHigh,
        format!("1.785 → {hi:?}"),
    );
    c.check(lo == Classification::WithinNoise, format!("1.731 → {lo:?}"));
    c.done(format!(
        "{bijections}/5000 bijections, rescaling invariant; sweep mean {:.4}, CV {:.2}%; 1.785 → {hi:?}, 1.731 → {lo:?}",
        s.mean,
        100.0 * s.cv
    ))
}

fn criterion_11() -> Outcome {
    let mut c = checks();
    let run = |threads: &str| -> serde_json::Value {
        let out = Command::new(env!("CARGO_BIN_EXE_hexlab"))
            .args(["--seed", "42", "--threads", threads, "analyze", "ordering"])
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let mut v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        v.as_object_mut().unwrap().remove("duration_seconds");
        v
    };
    let (a, b) = (run("1"), run("8"));
    c.check(a == b, "reports differ".into());
    c.done("--threads 1 and --threads 8 reports identical apart from duration_seconds".into())
}

fn main() {
    let run = null_run();
    let criteria: Vec<(u32, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, Box::new(|| criterion_1(&run))),
        (2, Box::new(|| criterion_2(&run))),
        (3, Box::new(|| criterion_3(&run))),
        (4, Box::new(|| criterion_4(&run))),
        (5, Box::new(|| criterion_5(&run))),
        (6, Box::new(criterion_6)),
        (7, Box::new(criterion_7)),
        (8, Box::new(criterion_8)),
        (9, Box::new(criterion_9)),
        (10, Box::new(criterion_10)),
        (11, Box::new(criterion_11)),
    ];
    let mut failed = 0;
    for (n, f) in &criteria {
        let o = f();
        failed += !o.pass as u32;
        println!(
            "criterion {n:>2}: {}  {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() as u32 - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
