use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::json;

use kissing_core::bounds::bounds_report;
use kissing_core::certify::{build_certificate, verify_certificate, Certificate, VerificationReport, VerifyMode};
use kissing_core::config::{is_antipodal, is_compatible, first_incompatible_pair, validate_family, Configuration};
use kissing_core::conway::SamplerState;
use kissing_core::family::{build_family, FamilyOptions};
use kissing_core::golay::{build_golay, GolayCode};
use kissing_core::io::{
    format_vectors, parse_vectors, parse_vectors_autoscale, read_configuration, read_family, to_indices,
    write_configuration, write_family, FamilyManifest,
};
use kissing_core::leech::{is_lattice_member, LatticeBasis, MinimalVectorSet, KISSING_24};
use kissing_core::search::{
    anneal_chains, greedy_batch, structured_seed, timed, AnnealParams, Schedule,
};

use crate::{BoundsArgs, CertifyArgs, CheckMode, Cli, CliError, Cmd, FamilyArgs, SearchArgs, SearchMode, VerifyArgs};

type Result<T> = std::result::Result<T, CliError>;

struct Lattice {
    code: GolayCode,
    basis: LatticeBasis,
    set: MinimalVectorSet,
}

fn lattice(cli: &Cli) -> Result<Lattice> {
    let code = build_golay();
    let basis = LatticeBasis::leech(&code);
    let set = match &cli.lattice {
        None => kissing_core::leech::enumerate_minimal_vectors(&code, &basis)?,
        Some(dir) => {
            let path = dir.join("minvects.txt");
            let text = fs::read_to_string(&path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
            let vectors = at(&path, parse_vectors(&text))?;
            if vectors.len() != KISSING_24 {
                return Err(CliError::verification(format!(
                    "{}: {} vectors, expected {KISSING_24}",
                    path.display(),
                    vectors.len()
                )));
            }
            if let Some(v) = vectors.iter().find(|v| !is_lattice_member(v, &basis)) {
                return Err(CliError::verification(format!("{v:?} is not a lattice vector")));
            }
            MinimalVectorSet::from_vectors(vectors)?
        }
    };
    Ok(Lattice { code, basis, set })
}

/// Prefixes errors with the file they concern.
fn at<T>(path: &Path, r: kissing_core::Result<T>) -> Result<T> {
    r.map_err(|e| {
        let mut c = CliError::from(e);
        c.message = format!("{}: {}", path.display(), c.message);
        c
    })
}

fn require_seed(seed: Option<u64>, what: &str) -> Result<u64> {
    seed.ok_or_else(|| CliError::usage(format!("{what} is randomized; pass --seed")))
}

fn write_json(path: &Path, value: &impl Serialize) -> Result<()> {
    fs::write(path, serde_json::to_string_pretty(value)? + "\n")
        .map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(format!("{}: {e}", dir.display())))
}

pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Cmd::Generate { out } => generate(cli, out),
        Cmd::Search(a) => search(cli, a),
        Cmd::Family(a) => family(cli, a),
        Cmd::Bounds(a) => bounds(cli, a),
        Cmd::Certify(a) => certify(cli, a),
        Cmd::Verify(a) => verify(cli, a),
        Cmd::Import { input, out } => import(cli, input, out),
    }
}

fn generate(cli: &Cli, out: &Path) -> Result<()> {
    let lat = lattice(cli)?;
    create_dir(out)?;
    let mut basis = String::new();
    for row in lat.basis.rows() {
        let line: Vec<String> = row.iter().map(i64::to_string).collect();
        basis += &line.join(" ");
        basis.push('\n');
    }
    fs::write(out.join("vbasis.txt"), basis)?;
    fs::write(out.join("minvects.txt"), format_vectors(lat.set.vectors()))?;
    let (a, b, c) = lat.set.shape_counts();
    println!("wrote {} minimal vectors (shapes {a}, {b}, {c}) and a 24-row basis to {}", lat.set.len(), out.display());
    Ok(())
}

fn search(cli: &Cli, a: &SearchArgs) -> Result<()> {
    let seed = match a.mode {
        SearchMode::Structured => 0,
        _ => require_seed(a.seed, "search")?,
    };
    let lat = lattice(cli)?;
    let set = &lat.set;
    create_dir(&a.out)?;
    let (record, best) = match a.mode {
        SearchMode::Structured => {
            let s = structured_seed(set);
            (json!({ "mode": "structured", "best_size": s.len() }), s)
        }
        SearchMode::Greedy => {
            if a.runs == 0 {
                return Err(CliError::usage("--runs must be at least 1"));
            }
            let (runs, wall) = timed(|| greedy_batch(set, a.runs, seed, a.antipodal));
            let sizes: Vec<usize> = runs.iter().map(Configuration::len).collect();
            let winner = (0..runs.len()).max_by(|&i, &j| sizes[i].cmp(&sizes[j]).then(j.cmp(&i))).unwrap();
            let mean = sizes.iter().sum::<usize>() as f64 / sizes.len() as f64;
            let record = json!({
                "mode": "greedy",
                "seed": seed,
                "params": { "runs": a.runs, "antipodal": a.antipodal },
                "best_size": sizes[winner],
                "mean_size": mean,
                "sizes": sizes,
                "wall_time": wall,
            });
            (record, runs.into_iter().nth(winner).unwrap())
        }
        SearchMode::Anneal => {
            if a.chains == 0 {
                return Err(CliError::usage("--chains must be at least 1"));
            }
            let initials = match &a.start {
                Some(path) => vec![at(path, read_configuration(path, set))?; a.chains],
                None => greedy_batch(set, a.chains, seed, a.antipodal),
            };
            let params = AnnealParams {
                t_max: a.t_max,
                t0: a.t0,
                schedule: a.power.map_or(Schedule::Linear, Schedule::Power),
                seed,
                antipodal_moves: a.antipodal,
                target_size: a.target_size,
                ..Default::default()
            };
            let (out, wall) = timed(|| anneal_chains(&initials, &params, set));
            let (winner, results) = out?;
            let r = &results[winner];
            let record = json!({
                "mode": "anneal",
                "seed": seed,
                "params": params,
                "start": a.start,
                "chain": winner,
                "chain_seed": r.seed,
                "initial_size": initials[winner].len(),
                "best_size": r.best.len(),
                "final_size": r.final_size,
                "iterations": r.iterations,
                "chain_best_sizes": results.iter().map(|r| r.best.len()).collect::<Vec<_>>(),
                "wall_time": wall,
                "history_downsampled": r.history_downsampled(100),
            });
            (record, r.best.clone())
        }
    };
    if let Some((x, y, d)) = first_incompatible_pair(&best, set) {
        return Err(CliError::verification(format!("internal error: vectors {x} and {y} have dot {d}")));
    }
    at(&a.out, write_configuration(&a.out.join("S.txt"), &best, set))?;
    write_json(&a.out.join("run.json"), &record)?;
    println!("|S| = {}{}", best.len(), if is_antipodal(&best, set) { " (antipodal)" } else { "" });
    Ok(())
}

fn family(cli: &Cli, a: &FamilyArgs) -> Result<()> {
    let seed = require_seed(a.seed, "family construction")?;
    let lat = lattice(cli)?;
    let set = &lat.set;
    let s = at(&a.input, read_configuration(&a.input, set))?;
    let mut sampler = SamplerState::standard(&lat.code, &lat.basis, seed)?;
    let opts = FamilyOptions { count: a.count, tries_per_set: a.tries, augment: a.augment };
    let build = build_family(&s, &opts, &mut sampler, set)?;
    for w in &build.warnings {
        eprintln!("warning: {w}");
    }
    let manifest = FamilyManifest {
        sizes: build.family.sizes(),
        seed: Some(seed),
        notes: format!(
            "{} images of {}; {} tries per subset{}",
            a.count,
            a.input.display(),
            a.tries,
            if a.augment { ", augmented" } else { "" }
        ),
        provenance: build.provenance.iter().map(serde_json::to_value).collect::<std::result::Result<_, _>>()?,
    };
    at(&a.out, write_family(&a.out, &build.family, set, &manifest))?;
    let report = validate_family(&build.family, set);
    println!("sizes {:?}", manifest.sizes);
    if !report.all_pass() {
        return Err(CliError::verification("family failed validation"));
    }
    Ok(())
}

fn parse_dims(text: &str) -> Result<std::ops::RangeInclusive<usize>> {
    let bad = || CliError::usage(format!("--dims expects a range like 25-31, got {text:?}"));
    let (lo, hi) = match text.split_once('-') {
        Some((l, h)) => (l.trim().parse().map_err(|_| bad())?, h.trim().parse().map_err(|_| bad())?),
        None => {
            let d = text.trim().parse().map_err(|_| bad())?;
            (d, d)
        }
    };
    if !(25..=31).contains(&lo) || !(lo..=31).contains(&hi) {
        return Err(bad());
    }
    Ok(lo..=hi)
}

fn bounds(cli: &Cli, a: &BoundsArgs) -> Result<()> {
    let dims = parse_dims(&a.dims)?;
    let family_sizes = match &a.family {
        Some(dir) => {
            let lat = lattice(cli)?;
            let (fam, _) = at(dir, read_family(dir, &lat.set))?;
            let report = validate_family(&fam, &lat.set);
            if !report.all_pass() {
                return Err(CliError::verification(format!("{} failed validation", dir.display())));
            }
            Some(fam.sizes().iter().map(|&s| s as i64).collect::<Vec<_>>())
        }
        None => None,
    };
    let base = match (a.base, &family_sizes) {
        (Some(b), _) => b,
        (None, Some(f)) => f[0],
        (None, None) => return Err(CliError::usage("pass --base or --family")),
    };
    let report = bounds_report(base, a.mode, family_sizes.as_deref(), dims)?;
    print!("{}", report.to_text());
    if let Some(path) = &a.json {
        write_json(path, &report)?;
    }
    Ok(())
}

fn verify_mode(m: CheckMode) -> VerifyMode {
    match m {
        CheckMode::Fast => VerifyMode::Fast,
        CheckMode::Full => VerifyMode::Full,
    }
}

/// Spot checks only happen in fast mode, so only fast mode needs a seed.
fn check_seed(mode: CheckMode, seed: Option<u64>) -> Result<u64> {
    match mode {
        CheckMode::Fast => require_seed(seed, "fast verification"),
        CheckMode::Full => Ok(seed.unwrap_or(0)),
    }
}

fn certify(cli: &Cli, a: &CertifyArgs) -> Result<()> {
    let dims = if a.dim == "all" { 25..=31 } else { parse_dims(&a.dim)? };
    let seed = check_seed(a.verify_mode, a.seed)?;
    let lat = lattice(cli)?;
    let set = &lat.set;
    let (fam, _) = at(&a.family, read_family(&a.family, set))?;
    if let Some(dir) = &a.export {
        create_dir(dir)?;
    }
    let mut reports: Vec<VerificationReport> = Vec::new();
    for dim in dims {
        let cert = build_certificate(&fam, dim, set, a.pad)?;
        let report = verify_certificate(&cert, set, verify_mode(a.verify_mode), seed);
        print!("{}", report.to_text());
        if report.passed() {
            println!("kissing number in dimension {dim} is at least {}", report.size);
        }
        if let Some(dir) = &a.export {
            write_json(&dir.join(format!("cert_{dim}.json")), &cert)?;
        }
        reports.push(report);
    }
    if let Some(path) = &a.json {
        write_json(path, &reports)?;
    }
    let failed: Vec<usize> = reports.iter().filter(|r| !r.passed()).map(|r| r.dim).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::verification(format!("verification failed in dimensions {failed:?}")))
    }
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Result<()> {
    let lat = lattice(cli)?;
    let set = &lat.set;
    let t = &a.target;
    if let Some(path) = &t.input {
        let s = at(path, read_configuration(path, set))?;
        let ok = is_compatible(&s, set);
        println!(
            "{}: {} vectors, compatible {ok}, antipodal {}",
            path.display(),
            s.len(),
            is_antipodal(&s, set)
        );
        if let Some((x, y, d)) = first_incompatible_pair(&s, set) {
            return Err(CliError::verification(format!("vectors {x} and {y} have scaled dot {d}")));
        }
        return Ok(());
    }
    if let Some(dir) = &t.family {
        let (fam, _) = at(dir, read_family(dir, set))?;
        let report = validate_family(&fam, set);
        println!("{}", serde_json::to_string_pretty(&report)?);
        if !report.all_pass() {
            return Err(CliError::verification("family failed validation"));
        }
        return Ok(());
    }
    let path = t.certificate.as_ref().expect("clap enforces one target");
    let seed = check_seed(a.verify_mode, a.seed)?;
    let text = fs::read_to_string(path).map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    let cert: Certificate = at(path, serde_json::from_str(&text).map_err(Into::into))?;
    let report = verify_certificate(&cert, set, verify_mode(a.verify_mode), seed);
    print!("{}", report.to_text());
    if !report.passed() {
        return Err(CliError::verification("certificate failed verification"));
    }
    println!("kissing number in dimension {} is at least {}", report.dim, report.size);
    Ok(())
}

fn import_file(input: &Path, out: &Path, set: &MinimalVectorSet) -> Result<(usize, i64)> {
    let text = fs::read_to_string(input).map_err(|e| CliError::io(format!("{}: {e}", input.display())))?;
    let (vectors, factor) = at(input, parse_vectors_autoscale(&text))?;
    at(input, to_indices(&vectors, set))?;
    fs::write(out, format_vectors(vectors.iter())).map_err(|e| CliError::io(format!("{}: {e}", out.display())))?;
    Ok((vectors.len(), factor))
}

fn import(cli: &Cli, input: &Path, out: &Path) -> Result<()> {
    let lat = lattice(cli)?;
    if input.is_dir() {
        create_dir(out)?;
        let mut files: Vec<_> = fs::read_dir(input)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.is_file() && p.extension().is_some_and(|e| e == "txt"))
            .collect();
        files.sort();
        if files.is_empty() {
            return Err(CliError::io(format!("no .txt files in {}", input.display())));
        }
        for f in files {
            let target = out.join(f.file_name().unwrap());
            let (n, factor) = import_file(&f, &target, &lat.set)?;
            println!("{}: {n} vectors, scaled by {factor}", f.display());
        }
    } else {
        let (n, factor) = import_file(input, out, &lat.set)?;
        println!("{}: {n} vectors, scaled by {factor}", input.display());
    }
    Ok(())
}
