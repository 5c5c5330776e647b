//! Automorphisms of the Leech lattice and a product-replacement sampler.
//!
//! Matrices act on scaled coordinates and are stored multiplied by
//! [`DENOMINATOR`]. Elements of Co₀ have entries in `(1/8)ℤ` in these
//! coordinates, so products of generators stay integral after rescaling.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::golay::{mathieu_generators, GolayCode, LENGTH};
use crate::leech::{LatticeBasis, LeechVector, DIM};

pub const DENOMINATOR: i32 = 8;

const D: i64 = DENOMINATOR as i64;

/// A linear map `v ↦ (M v) / 8` on scaled coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    m: [[i32; DIM]; DIM],
}

impl std::fmt::Debug for Automorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Automorphism(/{DENOMINATOR}) {:?}", self.m)
    }
}

impl Automorphism {
    /// From a matrix already multiplied by the denominator.
    pub fn from_scaled(m: [[i32; DIM]; DIM]) -> Self {
        Automorphism { m }
    }

    /// From a matrix multiplied by `denominator`, which must divide 8.
    pub fn from_matrix(m: &[[i64; DIM]; DIM], denominator: i64) -> Result<Self> {
        if denominator <= 0 || D % denominator != 0 {
            return Err(Error::InvalidParams(format!(
                "matrix denominator {denominator} does not divide {D}"
            )));
        }
        let f = D / denominator;
        let mut out = [[0i32; DIM]; DIM];
        for (row, src) in out.iter_mut().zip(m) {
            for (x, &y) in row.iter_mut().zip(src) {
                *x = i32::try_from(y * f)
                    .map_err(|_| Error::InvalidParams("matrix entry out of range".into()))?;
            }
        }
        Ok(Automorphism { m: out })
    }

    /// From a matrix with doubled entries, `v ↦ (M v) / 2`.
    pub fn from_doubled(m: &[[i64; DIM]; DIM]) -> Result<Self> {
        Self::from_matrix(m, 2)
    }

    pub fn identity() -> Self {
        Self::scalar(1)
    }

    pub fn negation() -> Self {
        Self::scalar(-1)
    }

    fn scalar(s: i32) -> Self {
        let mut m = [[0; DIM]; DIM];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = s * DENOMINATOR;
        }
        Automorphism { m }
    }

    /// Coordinate permutation `e_i ↦ e_perm[i]`.
    pub fn permutation(perm: &[usize; LENGTH]) -> Self {
        let mut m = [[0; DIM]; DIM];
        for (i, &p) in perm.iter().enumerate() {
            m[p][i] = DENOMINATOR;
        }
        Automorphism { m }
    }

    /// Negates the coordinates in `support`.
    pub fn sign_flip(support: u32) -> Self {
        let mut m = Self::identity().m;
        for (i, row) in m.iter_mut().enumerate() {
            if support >> i & 1 == 1 {
                row[i] = -DENOMINATOR;
            }
        }
        Automorphism { m }
    }

    /// The matrix multiplied by [`DENOMINATOR`].
    pub fn scaled(&self) -> &[[i32; DIM]; DIM] {
        &self.m
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        let mut out = [[0i32; DIM]; DIM];
        for i in 0..DIM {
            for j in 0..DIM {
                let s: i64 = (0..DIM)
                    .map(|k| self.m[i][k] as i64 * other.m[k][j] as i64)
                    .sum();
                if s % D != 0 {
                    return Err(Error::NonIntegral(vec![i as i64, j as i64, s]));
                }
                out[i][j] = (s / D) as i32;
            }
        }
        Ok(Automorphism { m: out })
    }

    /// Inverse of an orthogonal map: the transpose.
    pub fn inverse(&self) -> Automorphism {
        let mut out = [[0i32; DIM]; DIM];
        for (i, row) in self.m.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                out[j][i] = x;
            }
        }
        Automorphism { m: out }
    }

    pub fn is_orthogonal(&self) -> bool {
        (0..DIM).all(|i| {
            (i..DIM).all(|j| {
                let s: i64 = (0..DIM)
                    .map(|k| self.m[i][k] as i64 * self.m[j][k] as i64)
                    .sum();
                s == if i == j { D * D } else { 0 }
            })
        })
    }

    pub fn apply_coords(&self, v: &[i64; DIM]) -> Result<[i64; DIM]> {
        let mut out = [0i64; DIM];
        for (o, row) in out.iter_mut().zip(&self.m) {
            let s: i64 = row.iter().zip(v).map(|(&a, &b)| a as i64 * b).sum();
            if s % D != 0 {
                return Err(Error::NonIntegral(v.to_vec()));
            }
            *o = s / D;
        }
        Ok(out)
    }

    pub fn apply(&self, v: &LeechVector) -> Result<LeechVector> {
        let w = self.apply_coords(&v.to_i64())?;
        LeechVector::from_i64(&w).ok_or_else(|| Error::NonIntegral(v.to_i64().to_vec()))
    }

    /// Why `self` is not an automorphism of the lattice spanned by `basis`,
    /// or `None` if it is.
    pub fn violation(&self, basis: &LatticeBasis) -> Option<String> {
        if !self.is_orthogonal() {
            return Some(format!("M·Mᵀ ≠ {}·I", D * D));
        }
        for (r, row) in basis.rows().iter().enumerate() {
            match self.apply_coords(row) {
                Err(_) => return Some(format!("image of basis row {r} is not integral")),
                Ok(img) if !basis.contains(&img) => {
                    return Some(format!("image of basis row {r} is outside the lattice"))
                }
                Ok(_) => {}
            }
        }
        None
    }

    pub fn validate(&self, basis: &LatticeBasis) -> bool {
        self.violation(basis).is_none()
    }

    /// 24 lines of 24 integers after a `#denominator 8` header.
    pub fn to_text(&self) -> String {
        let mut out = format!("#denominator {DENOMINATOR}\n");
        for row in &self.m {
            let line: Vec<String> = row.iter().map(i32::to_string).collect();
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
        out
    }

    /// Reads [`Automorphism::to_text`] output. A `#doubled` header is read
    /// as denominator 2; without a header the denominator is 8.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut denominator = D;
        let mut rows = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(header) = line.strip_prefix('#') {
                let header = header.trim();
                if header == "doubled" {
                    denominator = 2;
                } else if let Some(d) = header.strip_prefix("denominator") {
                    denominator = d.trim().parse().map_err(|_| Error::Parse {
                        line: n + 1,
                        message: format!("bad denominator {:?}", d.trim()),
                    })?;
                }
                continue;
            }
            let row: Vec<i64> = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse().map_err(|_| Error::Parse {
                        line: n + 1,
                        message: format!("not an integer: {s:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            if row.len() != DIM {
                return Err(Error::Parse {
                    line: n + 1,
                    message: format!("expected {DIM} entries, found {}", row.len()),
                });
            }
            rows.push(row);
        }
        if rows.len() != DIM {
            return Err(Error::Parse {
                line: 0,
                message: format!("expected {DIM} rows, found {}", rows.len()),
            });
        }
        let m: [[i64; DIM]; DIM] = std::array::from_fn(|i| std::array::from_fn(|j| rows[i][j]));
        Self::from_matrix(&m, denominator)
    }
}

/// `v|_T ↦ (J/2 − I) v|_T` on each tetrad `T` of a sextet.
fn tetrad_map(tetrads: &[u32; 6]) -> Automorphism {
    let mut m = [[0i32; DIM]; DIM];
    for &t in tetrads {
        let pts: Vec<usize> = (0..DIM).filter(|&i| t >> i & 1 == 1).collect();
        for &i in &pts {
            for &j in &pts {
                m[i][j] = if i == j { -DENOMINATOR / 2 } else { DENOMINATOR / 2 };
            }
        }
    }
    Automorphism { m }
}

/// A validated generating set: the Mathieu group generators as coordinate
/// permutations, a sign change on an octad and one non-monomial element
/// built from the sextet of the first four coordinates.
pub fn build_generators(code: &GolayCode, basis: &LatticeBasis) -> Result<Vec<(String, Automorphism)>> {
    let mut gens: Vec<(String, Automorphism)> = mathieu_generators()
        .iter()
        .enumerate()
        .map(|(i, p)| (format!("mathieu-{i}"), Automorphism::permutation(p)))
        .collect();
    gens.push(("octad-sign".into(), Automorphism::sign_flip(code.octads()[0])));
    for (name, g) in &gens {
        if let Some(reason) = g.violation(basis) {
            return Err(Error::GeneratorValidation { name: name.clone(), reason });
        }
    }

    let tetrads = code.sextet(0b1111).ok_or_else(|| Error::GeneratorValidation {
        name: "tetrad".into(),
        reason: "coordinates 0..4 do not determine a sextet".into(),
    })?;
    let eta = tetrad_map(&tetrads);
    let mut candidates = vec![eta.clone()];
    for &t in &tetrads {
        candidates.push(Automorphism::sign_flip(t).compose(&eta)?);
    }
    let xi = candidates.into_iter().find(|g| g.validate(basis)).ok_or_else(|| {
        Error::GeneratorValidation {
            name: "tetrad".into(),
            reason: "no sign variant of the sextet map preserves the lattice".into(),
        }
    })?;
    gens.push(("tetrad".into(), xi));
    Ok(gens)
}

/// Product-replacement state. The pool holds the generators and their
/// inverses, cycled to at least `pool_size` entries.
#[derive(Clone, Debug)]
pub struct SamplerState {
    pool: Vec<Automorphism>,
    rng: ChaCha8Rng,
    steps: u64,
}

pub const DEFAULT_POOL: usize = 12;
pub const DEFAULT_BURN_IN: u64 = 200;

impl SamplerState {
    pub fn new(generators: &[Automorphism], pool_size: usize, burn_in: u64, seed: u64) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidParams("no generators".into()));
        }
        if pool_size < 10 {
            return Err(Error::InvalidParams(format!("pool size {pool_size} is below 10")));
        }
        let closed: Vec<Automorphism> = generators
            .iter()
            .flat_map(|g| [g.clone(), g.inverse()])
            .collect();
        let size = pool_size.max(closed.len());
        let pool = closed.iter().cycle().take(size).cloned().collect();
        let mut state = SamplerState {
            pool,
            rng: ChaCha8Rng::seed_from_u64(seed),
            steps: 0,
        };
        for _ in 0..burn_in {
            state.step()?;
        }
        Ok(state)
    }

    pub fn standard(code: &GolayCode, basis: &LatticeBasis, seed: u64) -> Result<Self> {
        let gens: Vec<Automorphism> = build_generators(code, basis)?.into_iter().map(|g| g.1).collect();
        Self::new(&gens, DEFAULT_POOL, DEFAULT_BURN_IN, seed)
    }

    fn step(&mut self) -> Result<usize> {
        let n = self.pool.len();
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let rhs = if self.rng.gen::<bool>() {
            self.pool[j].clone()
        } else {
            self.pool[j].inverse()
        };
        self.pool[i] = self.pool[i].compose(&rhs)?;
        self.steps += 1;
        Ok(i)
    }

    /// One product-replacement step; returns the replaced entry.
    pub fn random_element(&mut self) -> Result<Automorphism> {
        let i = self.step()?;
        Ok(self.pool[i].clone())
    }

    pub fn pool(&self) -> &[Automorphism] {
        &self.pool
    }

    /// Total steps taken, burn-in included.
    pub fn steps(&self) -> u64 {
        self.steps
    }
}
