//! Structured seed, a 51-set family, and fast certificates for dims 25-31.
//!
//! cargo run --release -p kissing-core --example pipeline

use kissing_core::bounds::dimension_bound;
use kissing_core::certify::{build_certificate, verify_certificate, VerifyMode};
use kissing_core::conway::SamplerState;
use kissing_core::family::{build_family, FamilyOptions};
use kissing_core::leech::MinimalVectorSet;
use kissing_core::search::structured_seed;

fn main() -> kissing_core::Result<()> {
    let (code, basis, set) = MinimalVectorSet::standard()?;
    let s = structured_seed(&set);
    println!("|S| = {}", s.len());

    let mut sampler = SamplerState::standard(&code, &basis, 1)?;
    let opts = FamilyOptions { count: 51, tries_per_set: 200, augment: false };
    let family = build_family(&s, &opts, &mut sampler, &set)?.family;
    let sizes: Vec<i64> = family.sizes().iter().map(|&x| x as i64).collect();
    println!("family sizes {:?}", family.sizes());

    for dim in 25..=31 {
        let cert = build_certificate(&family, dim, &set, false)?;
        let report = verify_certificate(&cert, &set, VerifyMode::Fast, dim as u64);
        println!(
            "dim {dim}: {} vectors, formula {}, {}",
            report.size,
            dimension_bound(&sizes, dim)?,
            if report.passed() { "verified" } else { "FAILED" }
        );
    }
    Ok(())
}
