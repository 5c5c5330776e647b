use std::collections::HashSet;
use std::sync::OnceLock;

use kissing_core::config::is_compatible;
use kissing_core::conway::*;
use kissing_core::golay::GolayCode;
use kissing_core::leech::*;
use kissing_core::search::structured_seed;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn standard() -> &'static (GolayCode, LatticeBasis, MinimalVectorSet) {
    static S: OnceLock<(GolayCode, LatticeBasis, MinimalVectorSet)> = OnceLock::new();
    S.get_or_init(|| MinimalVectorSet::standard().unwrap())
}

fn generators() -> Vec<Automorphism> {
    let (code, basis, _) = standard();
    build_generators(code, basis).unwrap().into_iter().map(|g| g.1).collect()
}

#[test]
fn compositions_and_inverses_validate() {
    let (_, basis, _) = standard();
    let gens = generators();
    for a in &gens {
        assert!(a.inverse().validate(basis));
        assert_eq!(a.compose(&a.inverse()).unwrap(), Automorphism::identity());
        for b in &gens {
            assert!(a.compose(b).unwrap().validate(basis));
        }
    }
}

#[test]
fn sampled_elements_are_isometries_of_the_minimal_vectors() {
    let (code, basis, set) = standard();
    let mut sampler = SamplerState::standard(code, basis, 42).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..50 {
        let g = sampler.random_element().unwrap();
        assert!(g.validate(basis));
        let inv = g.inverse();
        for _ in 0..20 {
            let x = set.get(rng.gen_range(0..set.len() as u32));
            let y = set.get(rng.gen_range(0..set.len() as u32));
            let gx = g.apply(x).unwrap();
            let gy = g.apply(y).unwrap();
            assert_eq!(int_dot(&gx, &gy), int_dot(x, y));
            assert!(set.index_of(&gx).is_some());
            assert_eq!(inv.apply(&gx).unwrap(), *x);
        }
    }
}

#[test]
fn orbit_coverage() {
    let (code, basis, set) = standard();
    let mut sampler = SamplerState::standard(code, basis, 7).unwrap();
    let v = set.get(0);
    let mut images = HashSet::new();
    for _ in 0..10_000 {
        images.insert(sampler.random_element().unwrap().apply(v).unwrap());
    }
    assert!(images.len() >= 1000, "{} distinct images", images.len());
    assert!(images.iter().any(|w| w.shape() != v.shape()));
}

#[test]
fn images_of_a_compatible_set_stay_compatible() {
    let (code, basis, set) = standard();
    let s = structured_seed(set);
    let mut sampler = SamplerState::standard(code, basis, 3).unwrap();
    for _ in 0..10 {
        let g = sampler.random_element().unwrap();
        let img = kissing_core::family::image(&g, &s, set).unwrap();
        assert_eq!(img.len(), s.len());
        assert!(is_compatible(&img, set));
    }
}
