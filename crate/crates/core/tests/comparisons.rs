//! Direction checks on the default surprise kernel.

use hexlab::hexagram::{Ordering, ShaoYongConvention};
use hexlab::metrics::SurpriseModel;
use hexlab::permtest::{monte_carlo, null_permutation, MonteCarloConfig, Statistic};
use hexlab::schedules::compression_ratio;
use hexlab::stattests::{ks_two_sample, levene, ljung_box, Centering};

fn profile(ord: &Ordering) -> Vec<f64> {
    SurpriseModel::default().profile(ord).values
}

#[test]
fn king_wen_vs_shao_yong_ks() {
    let kw = profile(&Ordering::king_wen());
    let reversed = profile(&Ordering::shao_yong(ShaoYongConvention::Reversed));
    let r = ks_two_sample(&kw, &reversed).unwrap();
    // 31/63: reversed Shao Yong shares King Wen's low-surprise floor.
    assert!((r.statistic - 31.0 / 63.0).abs() < 1e-12, "{}", r.statistic);
    assert!(r.p_value < 0.01);

    let direct = profile(&Ordering::shao_yong(ShaoYongConvention::Direct));
    let r = ks_two_sample(&kw, &direct).unwrap();
    assert!(r.statistic > 0.5 && r.p_value < 0.01);
}

#[test]
fn king_wen_vs_shao_yong_levene() {
    let kw = profile(&Ordering::king_wen());
    let reversed = profile(&Ordering::shao_yong(ShaoYongConvention::Reversed));
    let r = levene(&[&kw, &reversed], Centering::Mean).unwrap();
    // Equal spread under the reversed layout.
    assert!(r.p_value > 0.5, "{}", r.p_value);

    let direct = profile(&Ordering::shao_yong(ShaoYongConvention::Direct));
    let r = levene(&[&kw, &direct], Centering::Mean).unwrap();
    assert!(r.p_value < 0.001, "{}", r.p_value);
}

#[test]
fn ljung_box_pattern() {
    let binary = ljung_box(&profile(&Ordering::binary()), 5).unwrap();
    assert!(binary.p_value < 0.01, "{}", binary.p_value);
    let kw = ljung_box(&profile(&Ordering::king_wen()), 5).unwrap();
    assert!(kw.p_value > 0.05, "{}", kw.p_value);
}

#[test]
fn null_percentiles_are_uniform() {
    // 200 null draws scored against a 1000-sample null: the percentiles
    // should be uniform on [0, 100]. KS against U(0, 100) via a fine grid.
    let cfg = MonteCarloConfig::new(1000, 2024);
    let mut pcts: Vec<f64> = (0..200)
        .map(|i| {
            let ord = Ordering::new("draw", null_permutation(99, i)).unwrap();
            monte_carlo(Statistic::PairAsymmetry, &ord, cfg)
                .unwrap()
                .percentile_midrank
        })
        .collect();
    pcts.sort_by(f64::total_cmp);
    let d = pcts
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let u = p / 100.0;
            ((i + 1) as f64 / 200.0 - u)
                .abs()
                .max((u - i as f64 / 200.0).abs())
        })
        .fold(0.0, f64::max);
    // 1% critical value for n = 200 is ≈ 1.63/√200 = 0.115.
    assert!(d < 0.115, "D = {d}");
}

#[test]
fn compression_ratios_are_frozen() {
    let same = vec![b'a'; 10_000];
    let noise: Vec<u8> = {
        use rand::Rng;
        let mut rng = hexlab::rng::substream(42, hexlab::rng::Domain::RandomProfile, 99);
        (0..10_000).map(|_| rng.random()).collect()
    };
    let a = compression_ratio(&same).unwrap().value;
    let b = compression_ratio(&noise).unwrap().value;
    eprintln!("{a} {b}");
    assert!(a < 0.05);
    assert!(b > 0.9);
}
