use std::sync::OnceLock;

use kissing_core::config::{is_antipodal, is_compatible, Configuration};
use kissing_core::leech::MinimalVectorSet;
use kissing_core::search::*;

fn set() -> &'static MinimalVectorSet {
    static S: OnceLock<MinimalVectorSet> = OnceLock::new();
    S.get_or_init(|| MinimalVectorSet::standard().unwrap().2)
}

#[test]
fn greedy_mean_is_in_range() {
    let runs = greedy_batch(set(), 100, 7, false);
    let mean = runs.iter().map(|c| c.len()).sum::<usize>() as f64 / runs.len() as f64;
    assert!((210.0..=266.0).contains(&mean), "mean {mean}");
    assert!(runs.iter().take(5).all(|c| is_compatible(c, set())));
}

#[test]
fn greedy_batch_is_reproducible() {
    let a = greedy_batch(set(), 4, 3, true);
    let b = greedy_batch(set(), 4, 3, true);
    assert_eq!(a, b);
    assert!(a.iter().all(|c| is_antipodal(c, set())));
}

#[test]
fn annealing_improves_greedy_starts() {
    let starts = greedy_batch(set(), 10, 11, false);
    let mut improved = 0;
    for (seed, start) in starts.iter().enumerate() {
        let params = AnnealParams {
            t_max: 1_000_000,
            seed: seed as u64,
            target_size: Some(start.len() + 1),
            ..Default::default()
        };
        let r = anneal(start, &params, set()).unwrap();
        assert!(is_compatible(&r.best, set()));
        assert_eq!(r.history[0], (0, start.len()));
        if r.best.len() > start.len() {
            improved += 1;
        }
    }
    assert!(improved >= 8, "{improved}/10");
}

#[test]
fn annealing_is_deterministic_and_monotone() {
    let start = greedy_build(&canonical_order(set()), set());
    let params = AnnealParams { t_max: 50_000, seed: 5, ..Default::default() };
    let a = anneal(&start, &params, set()).unwrap();
    let b = anneal(&start, &params, set()).unwrap();
    assert_eq!(a, b);
    assert!(a.history.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1));
    assert_eq!(a.best_size_at(a.iterations), a.best.len());
}

#[test]
fn antipodal_moves_keep_antipodality() {
    let start = greedy_batch(set(), 1, 2, true).remove(0);
    let params = AnnealParams { t_max: 50_000, seed: 1, antipodal_moves: true, ..Default::default() };
    let r = anneal(&start, &params, set()).unwrap();
    assert!(is_antipodal(&r.best, set()));
    assert!(is_compatible(&r.best, set()));
    assert_eq!(r.best.len() % 2, 0);
}

#[test]
fn bad_starts_are_rejected() {
    let v = 0;
    let w = set().conflicts_of(v).into_iter().find(|&w| w != v).unwrap();
    let bad = Configuration::new(vec![v, w], false);
    assert!(anneal(&bad, &AnnealParams::default(), set()).is_err());
    let lonely = Configuration::new(vec![v], false);
    let params = AnnealParams { antipodal_moves: true, ..Default::default() };
    assert!(anneal(&lonely, &params, set()).is_err());
    let params = AnnealParams { t0: 0.0, ..Default::default() };
    assert!(anneal(&Configuration::empty(false), &params, set()).is_err());
}

#[test]
fn structured_seed_is_a_large_antipodal_set() {
    let s = structured_seed(set());
    assert_eq!(s.len(), 408);
    assert!(is_compatible(&s, set()));
    assert!(is_antipodal(&s, set()));
}
