use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rootspace::datasetgen::{DataPoint, Status};
use rootspace::hypotheses::{
    cliffs_delta, cosine_similarity, levene_test, run_suite, wilcoxon_one_tailed, Magnitude,
    Method, StatsError, SuiteConfig, SuiteError,
};
use rootspace::synthgeom::{generate, SynthConfig};
use rootspace::vectors::EmbeddingSpace;

/// Upper tail of W+ by listing every sign pattern over the given ranks.
fn brute_force_tail(ranks: &[f64], w_plus: f64) -> f64 {
    let n = ranks.len();
    let mut hits = 0u64;
    for mask in 0u64..(1 << n) {
        let w: f64 = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| ranks[i])
            .sum();
        if w >= w_plus - 1e-9 {
            hits += 1;
        }
    }
    hits as f64 / (1u64 << n) as f64
}

fn midranks(abs: &[f64]) -> Vec<f64> {
    abs.iter()
        .map(|x| {
            let below = abs.iter().filter(|y| *y < x).count() as f64;
            let equal = abs.iter().filter(|y| *y == x).count() as f64;
            below + (equal + 1.0) / 2.0
        })
        .collect()
}

#[test]
fn exact_path_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 3..=10usize {
        let mut mags: Vec<f64> = (0..n)
            .map(|i| i as f64 + rng.gen_range(0.01..0.99))
            .collect();
        let ranks = midranks(&mags);
        mags.reverse();
        let ranks_rev: Vec<f64> = ranks.iter().rev().copied().collect();
        for mask in 0u64..(1 << n) {
            let diffs: Vec<f64> = (0..n)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        mags[i]
                    } else {
                        -mags[i]
                    }
                })
                .collect();
            let r = wilcoxon_one_tailed(&diffs, 20).unwrap();
            assert_eq!(r.method, Method::Exact);
            let w: f64 = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| ranks_rev[i])
                .sum();
            assert_eq!(r.w_plus, w);
            let want = brute_force_tail(&ranks_rev, w);
            assert!((r.p_value - want).abs() < 1e-12, "n={n} mask={mask}");
        }
    }
}

#[test]
fn exact_path_with_ties_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let n = rng.gen_range(2..=12);
        let diffs: Vec<f64> = (0..n)
            .map(|_| rng.gen_range(-4i32..=4) as f64)
            .filter(|d| *d != 0.0)
            .collect();
        if diffs.is_empty() {
            continue;
        }
        let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
        let ranks = midranks(&abs);
        let w: f64 = diffs
            .iter()
            .zip(&ranks)
            .filter(|(d, _)| **d > 0.0)
            .map(|(_, r)| r)
            .sum();
        let r = wilcoxon_one_tailed(&diffs, 20).unwrap();
        assert_eq!(r.w_plus, w);
        assert!((r.p_value - brute_force_tail(&ranks, w)).abs() < 1e-12);
    }
}

#[test]
fn zeros_are_dropped() {
    let r = wilcoxon_one_tailed(&[0.0, 1.0, 2.0, 0.0, -0.5], 20).unwrap();
    assert_eq!((r.n, r.n_zeros), (3, 2));
    assert_eq!(
        wilcoxon_one_tailed(&[0.0, 0.0], 20).unwrap_err(),
        StatsError::AllZeros
    );
}

#[test]
fn normal_path_above_crossover() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let diffs: Vec<f64> = (0..40)
        .map(|_| rng.sample::<f64, _>(StandardNormal) + 0.3)
        .collect();
    let approx = wilcoxon_one_tailed(&diffs, 20).unwrap();
    assert_eq!(approx.method, Method::NormalApprox);
    let exact = wilcoxon_one_tailed(&diffs, 50).unwrap();
    assert_eq!(exact.method, Method::Exact);
    assert!((approx.p_value - exact.p_value).abs() < 5e-3);
}

proptest! {
    #[test]
    fn p_values_in_unit_interval(
        diffs in proptest::collection::vec(-10.0f64..10.0, 1..30),
        crossover in 0usize..40,
    ) {
        if let Ok(r) = wilcoxon_one_tailed(&diffs, crossover) {
            prop_assert!(r.p_value > 0.0 && r.p_value <= 1.0);
            if r.method == Method::Exact {
                let scaled = r.p_value * 2f64.powi(r.n as i32);
                prop_assert!((scaled - scaled.round()).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn cliffs_matches_double_loop(
        a in proptest::collection::vec(-5i32..5, 1..30),
        b in proptest::collection::vec(-5i32..5, 1..30),
    ) {
        let a: Vec<f64> = a.into_iter().map(f64::from).collect();
        let b: Vec<f64> = b.into_iter().map(f64::from).collect();
        let (mut gt, mut lt) = (0u64, 0u64);
        for x in &a {
            for y in &b {
                if x > y { gt += 1 }
                if x < y { lt += 1 }
            }
        }
        let d = cliffs_delta(&a, &b).unwrap();
        prop_assert_eq!((d.greater, d.less), (gt, lt));
        prop_assert_eq!(d.pairs, (a.len() * b.len()) as u64);
        let back = cliffs_delta(&b, &a).unwrap();
        prop_assert_eq!(back.delta, -d.delta);
    }

    #[test]
    fn cliffs_invariant_under_monotone_maps(
        a in proptest::collection::vec(-3.0f64..3.0, 1..20),
        b in proptest::collection::vec(-3.0f64..3.0, 1..20),
    ) {
        let d = cliffs_delta(&a, &b).unwrap().delta;
        let f = |x: &f64| x.exp() * 2.0 + 1.0;
        let fa: Vec<f64> = a.iter().map(f).collect();
        let fb: Vec<f64> = b.iter().map(f).collect();
        prop_assert_eq!(cliffs_delta(&fa, &fb).unwrap().delta, d);
        let g = |x: &f64| x.powi(3);
        let ga: Vec<f64> = a.iter().map(g).collect();
        let gb: Vec<f64> = b.iter().map(g).collect();
        prop_assert_eq!(cliffs_delta(&ga, &gb).unwrap().delta, d);
    }

    #[test]
    fn cosine_ignores_positive_scale(
        u in proptest::collection::vec(-1.0f64..1.0, 5),
        v in proptest::collection::vec(-1.0f64..1.0, 5),
        s in 0.01f64..100.0,
        t in 0.01f64..100.0,
    ) {
        if let Ok(c) = cosine_similarity(&u, &v) {
            let su: Vec<f64> = u.iter().map(|x| x * s).collect();
            let tv: Vec<f64> = v.iter().map(|x| x * t).collect();
            let c2 = cosine_similarity(&su, &tv).unwrap();
            prop_assert!((c - c2).abs() < 1e-12);
            prop_assert!((-1.0..=1.0).contains(&c));
        }
    }
}

#[test]
fn table_labels() {
    let cases = [
        (0.86, Magnitude::Large),
        (0.52, Magnitude::Large),
        (0.66, Magnitude::Large),
        (0.79, Magnitude::Large),
        (0.30, Magnitude::Small),
        (0.62, Magnitude::Large),
        (0.06, Magnitude::Negligible),
        (0.20, Magnitude::Small),
        (0.02, Magnitude::Negligible),
    ];
    for (d, m) in cases {
        assert_eq!(Magnitude::of(d), m, "{d}");
        assert_eq!(Magnitude::of(-d), m);
    }
    assert_eq!(Magnitude::of(0.474), Magnitude::Large);
    assert_eq!(Magnitude::of(0.33), Magnitude::Medium);
    assert_eq!(Magnitude::of(0.147), Magnitude::Small);
}

/// `P(F(1, nu) > w)` as `2 P(T > sqrt w)`, integrating the t density with
/// Simpson's rule after mapping `[sqrt w, inf)` onto `[atan sqrt w, pi/2)`.
fn f1_tail_oracle(w: f64, nu: f64) -> f64 {
    fn ln_gamma(x: f64) -> f64 {
        // Lanczos, g = 7
        const C: [f64; 9] = [
            0.999_999_999_999_809_9,
            676.520_368_121_885_1,
            -1_259.139_216_722_402_8,
            771.323_428_777_653_1,
            -176.615_029_162_140_6,
            12.507_343_278_686_905,
            -0.138_571_095_265_720_12,
            9.984_369_578_019_572e-6,
            1.505_632_735_149_311_6e-7,
        ];
        let x = x - 1.0;
        let mut a = C[0];
        let t = x + 7.5;
        for (i, c) in C.iter().enumerate().skip(1) {
            a += c / (x + i as f64);
        }
        0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
    }
    let norm = (ln_gamma((nu + 1.0) / 2.0) - ln_gamma(nu / 2.0)).exp()
        / (nu * std::f64::consts::PI).sqrt();
    let density = |u: f64| {
        let t = u.tan();
        let jac = 1.0 / u.cos().powi(2);
        norm * (1.0 + t * t / nu).powf(-(nu + 1.0) / 2.0) * jac
    };
    let (lo, hi) = (w.sqrt().atan(), std::f64::consts::FRAC_PI_2);
    let steps = 20_000;
    let h = (hi - lo) / steps as f64;
    let mut s = density(lo);
    for i in 1..steps {
        s += density(lo + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    // the integrand vanishes at pi/2 for nu >= 1
    2.0 * s * h / 3.0
}

fn levene_statistic_oracle(a: &[f64], b: &[f64]) -> f64 {
    let mean = |x: &[f64]| x.iter().sum::<f64>() / x.len() as f64;
    let dev = |x: &[f64]| {
        let m = mean(x);
        x.iter().map(|v| (v - m).abs()).collect::<Vec<_>>()
    };
    let (za, zb) = (dev(a), dev(b));
    let all: Vec<f64> = za.iter().chain(&zb).copied().collect();
    let g = mean(&all);
    let (ma, mb) = (mean(&za), mean(&zb));
    let num = za.len() as f64 * (ma - g).powi(2) + zb.len() as f64 * (mb - g).powi(2);
    let den: f64 = za.iter().map(|z| (z - ma).powi(2)).sum::<f64>()
        + zb.iter().map(|z| (z - mb).powi(2)).sum::<f64>();
    (all.len() as f64 - 2.0) * num / den
}

#[test]
fn levene_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for (na, nb, scale) in [(10, 12, 1.0), (30, 30, 3.0), (7, 40, 0.5)] {
        let a: Vec<f64> = (0..na)
            .map(|_| rng.sample::<f64, _>(StandardNormal))
            .collect();
        let b: Vec<f64> = (0..nb)
            .map(|_| scale * rng.sample::<f64, _>(StandardNormal))
            .collect();
        let r = levene_test(&a, &b).unwrap();
        let w = levene_statistic_oracle(&a, &b);
        assert!((r.statistic - w).abs() < 1e-10 * w.max(1.0));
        let p = f1_tail_oracle(w, (na + nb - 2) as f64);
        assert!((r.p_value - p).abs() < 1e-7, "{} vs {p}", r.p_value);
    }
}

#[test]
fn levene_detects_unequal_variance() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut rejections = 0;
    for _ in 0..50 {
        let a: Vec<f64> = (0..30)
            .map(|_| rng.sample::<f64, _>(StandardNormal))
            .collect();
        let b: Vec<f64> = (0..30)
            .map(|_| 10.0 * rng.sample::<f64, _>(StandardNormal))
            .collect();
        if levene_test(&a, &b).unwrap().p_value < 0.01 {
            rejections += 1;
        }
    }
    assert!(rejections >= 49, "{rejections}");
}

#[test]
fn suite_is_deterministic_and_ordered() {
    let config = SynthConfig {
        n_roots: 25,
        dim: 20,
        seed: 9,
        ..Default::default()
    };
    let (points, space) = generate(&config).unwrap();
    let a = run_suite(&points, &space, &SuiteConfig::default()).unwrap();
    let b = run_suite(&points, &space, &SuiteConfig::default()).unwrap();
    assert_eq!(a.records_csv(), b.records_csv());
    assert_eq!(a.summary_rows(), b.summary_rows());
    assert_eq!(a.h1, b.h1);
    for r in &a.records {
        assert!(r.d_h2 <= r.d_h1);
        assert!(r.max_s_root >= r.mean_s_root);
    }
    assert_eq!(a.h1.n, 25);
    assert!(a.h1.p_value < 1e-3);
    assert!(a.h2_implies_h1(0.05));
}

#[test]
fn suite_rejects_small_inputs() {
    let mut space = EmbeddingSpace::new(2, "s");
    let mut points = Vec::new();
    for i in 0..4 {
        let p = DataPoint {
            noun: format!("n{i}"),
            noun_template: "t".into(),
            noun_lookup_form: format!("n{i}"),
            root: "r".into(),
            denominal: format!("d{i}"),
            denominal_template: "t".into(),
            root_verbs: vec![format!("v{i}")],
            status: Status::Kept,
        };
        for (j, t) in p.lookup_tokens().enumerate() {
            space.insert(t, &[1.0, i as f64 + j as f64]);
        }
        points.push(p);
    }
    assert!(matches!(
        run_suite(&points, &space, &SuiteConfig::default()),
        Err(SuiteError::TooFewPoints { n: 4, min: 5 })
    ));
}
