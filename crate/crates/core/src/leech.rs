//! The Leech lattice in the `×√8` coordinate system.
//!
//! A vector is stored as 24 integers `x` standing for the real vector
//! `x / √8`, so every inner product is an integer `int_dot(x, y) = 8⟨x, y⟩`.
//! Minimal vectors have `int_dot(x, x) = 32`.
//!
//! Membership is decided against an explicit basis in Hermite normal form,
//! computed from a generating set of lattice vectors. Enumeration of the
//! minimal vectors generates candidates of the three coordinate shapes from
//! the Golay code and keeps those the basis accepts; the Golay congruence
//! rule is evaluated alongside and must agree on every candidate.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::golay::{GolayCode, LENGTH};
use crate::kernel::DotTable;

pub const DIM: usize = LENGTH;

/// Number of minimal vectors of the Leech lattice.
pub const KISSING_24: usize = 196_560;

/// Scaled squared norm of a minimal vector.
pub const MIN_NORM: i32 = 32;

/// Largest scaled dot allowed between two members of a compatible set (`⟨x, y⟩ ≤ 1`).
pub const COMPATIBLE_MAX: i32 = 8;

/// Largest scaled dot between distinct kissing points (`⟨x, y⟩ ≤ 2`).
pub const KISSING_MAX: i32 = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LeechVector(pub [i8; DIM]);

impl fmt::Debug for LeechVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LeechVector({:?})", self.0)
    }
}

impl LeechVector {
    pub const ZERO: LeechVector = LeechVector([0; DIM]);

    pub fn from_i64(coords: &[i64]) -> Option<Self> {
        if coords.len() != DIM {
            return None;
        }
        let mut out = [0i8; DIM];
        for (o, &c) in out.iter_mut().zip(coords) {
            *o = i8::try_from(c).ok()?;
        }
        Some(LeechVector(out))
    }

    pub fn to_i64(&self) -> [i64; DIM] {
        self.0.map(i64::from)
    }

    pub fn norm(&self) -> i32 {
        int_dot(self, self)
    }

    pub fn shape(&self) -> Option<Shape> {
        let mut abs = self.0.map(|c| c.unsigned_abs());
        abs.sort_unstable();
        let count = |v: u8| abs.iter().filter(|&&a| a == v).count();
        match (count(0), count(1), count(2), count(3), count(4)) {
            (22, 0, 0, 0, 2) => Some(Shape::Fours),
            (16, 0, 8, 0, 0) => Some(Shape::Twos),
            (0, 23, 0, 1, 0) => Some(Shape::Odd),
            _ => None,
        }
    }
}

impl std::ops::Neg for LeechVector {
    type Output = LeechVector;

    fn neg(self) -> LeechVector {
        LeechVector(self.0.map(|c| -c))
    }
}

/// Coordinate shapes of minimal vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Shape {
    /// `(±4², 0²²)`
    Fours,
    /// `(±2⁸, 0¹⁶)`
    Twos,
    /// `(∓3, ±1²³)`
    Odd,
}

/// Scaled inner product; the true inner product is `int_dot / 8`.
#[inline]
pub fn int_dot(a: &LeechVector, b: &LeechVector) -> i32 {
    a.0.iter()
        .zip(b.0.iter())
        .map(|(&x, &y)| i32::from(x) * i32::from(y))
        .sum()
}

/// Golay congruence rule: all coordinates share a parity `m`, the sum is
/// `4m mod 8`, and the positions `≡ 2 mod 4` (even case) or `≡ 1 mod 4`
/// (odd case) form a codeword.
pub fn satisfies_congruence_rule(v: &[i64; DIM], code: &GolayCode) -> bool {
    let parity = v[0].rem_euclid(2);
    if v.iter().any(|c| c.rem_euclid(2) != parity) {
        return false;
    }
    let sum: i64 = v.iter().sum();
    if sum.rem_euclid(8) != 4 * parity {
        return false;
    }
    let residue = if parity == 0 { 2 } else { 1 };
    let mut word = 0u32;
    for (i, c) in v.iter().enumerate() {
        if c.rem_euclid(4) == residue {
            word |= 1 << i;
        }
    }
    code.contains(word)
}

/// A basis of the lattice in upper-triangular Hermite normal form.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeBasis {
    rows: Vec<[i64; DIM]>,
    gram: Vec<[i64; DIM]>,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

impl LatticeBasis {
    /// Computes the Hermite normal form of the lattice spanned by
    /// `8 Z^24` together with `generators`.
    pub fn from_generators<'a>(generators: impl IntoIterator<Item = &'a [i64; DIM]>) -> Self {
        let mut pivots: Vec<[i64; DIM]> = (0..DIM)
            .map(|i| {
                let mut r = [0; DIM];
                r[i] = 8;
                r
            })
            .collect();
        let reduce_tail = |row: &mut [i64; DIM], from: usize| {
            for c in row.iter_mut().skip(from) {
                *c = c.rem_euclid(8);
            }
        };
        for g in generators {
            let mut v = *g;
            reduce_tail(&mut v, 0);
            for col in 0..DIM {
                if v[col] == 0 {
                    continue;
                }
                let p = pivots[col];
                let (g, a, b) = ext_gcd(p[col], v[col]);
                let (pv, vv) = (p[col] / g, v[col] / g);
                let mut new_p = [0; DIM];
                let mut new_v = [0; DIM];
                for k in col..DIM {
                    new_p[k] = a * p[k] + b * v[k];
                    new_v[k] = vv * p[k] - pv * v[k];
                }
                debug_assert_eq!(new_v[col], 0);
                reduce_tail(&mut new_p, col + 1);
                reduce_tail(&mut new_v, col + 1);
                pivots[col] = new_p;
                v = new_v;
            }
        }
        // canonical reduction of the entries above the diagonal
        for i in (0..DIM).rev() {
            for j in (i + 1)..DIM {
                let d = pivots[j][j];
                let q = pivots[i][j].div_euclid(d);
                if q != 0 {
                    let rj = pivots[j];
                    for (x, y) in pivots[i].iter_mut().zip(rj.iter()) {
                        *x -= q * y;
                    }
                }
            }
        }
        let gram = (0..DIM)
            .map(|i| std::array::from_fn(|j| dot64(&pivots[i], &pivots[j])))
            .collect();
        LatticeBasis { rows: pivots, gram }
    }

    /// The standard Leech basis: HNF of `4e_0 ± 4e_j`, twice every octad, and
    /// the odd vector `(-3, 1^23)`.
    pub fn leech(code: &GolayCode) -> Self {
        Self::from_generators(leech_generators(code).iter())
    }

    pub fn rows(&self) -> &[[i64; DIM]] {
        &self.rows
    }

    pub fn row_vectors(&self) -> Vec<LeechVector> {
        self.rows
            .iter()
            .map(|r| LeechVector::from_i64(r).expect("HNF entries fit in i8"))
            .collect()
    }

    pub fn gram(&self) -> &[[i64; DIM]] {
        &self.gram
    }

    /// Product of the diagonal of the triangular basis, i.e. `|det B|`.
    pub fn diagonal_product(&self) -> i64 {
        (0..DIM).map(|i| self.rows[i][i]).product()
    }

    /// Exact determinant of the Gram matrix (fraction-free elimination).
    pub fn gram_determinant(&self) -> BigInt {
        let mut m: Vec<Vec<BigInt>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        bareiss_det(&mut m)
    }

    /// Integer coordinates of `v` in this basis, or `None` if `v` is not a
    /// lattice vector.
    pub fn coordinates(&self, v: &[i64; DIM]) -> Option<[i64; DIM]> {
        let mut rest = *v;
        let mut coeffs = [0; DIM];
        for col in 0..DIM {
            let d = self.rows[col][col];
            if rest[col] % d != 0 {
                return None;
            }
            let q = rest[col] / d;
            coeffs[col] = q;
            if q != 0 {
                for (x, y) in rest.iter_mut().zip(self.rows[col].iter()).skip(col) {
                    *x -= q * y;
                }
            }
        }
        Some(coeffs)
    }

    pub fn contains(&self, v: &[i64; DIM]) -> bool {
        self.coordinates(v).is_some()
    }
}

fn dot64(a: &[i64; DIM], b: &[i64; DIM]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn bareiss_det(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * prev
}

pub fn leech_generators(code: &GolayCode) -> Vec<[i64; DIM]> {
    let mut gens = Vec::new();
    for j in 1..DIM {
        for s in [4, -4] {
            let mut v = [0; DIM];
            v[0] = 4;
            v[j] = s;
            gens.push(v);
        }
    }
    for &octad in code.octads() {
        gens.push(std::array::from_fn(|i| if octad >> i & 1 == 1 { 2 } else { 0 }));
    }
    let mut odd = [1; DIM];
    odd[0] = -3;
    gens.push(odd);
    gens
}

/// `v` is an integer combination of the basis rows.
pub fn is_lattice_member(v: &LeechVector, basis: &LatticeBasis) -> bool {
    basis.contains(&v.to_i64())
}

/// The 196560 minimal vectors in lexicographic order, with lookup tables.
pub struct MinimalVectorSet {
    vectors: Vec<LeechVector>,
    index: HashMap<LeechVector, u32>,
    negation: Vec<u32>,
    shapes: Vec<Shape>,
    table: OnceLock<DotTable>,
}

impl fmt::Debug for MinimalVectorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MinimalVectorSet")
            .field("len", &self.vectors.len())
            .finish()
    }
}

/// Enumerates the minimal vectors shape by shape and filters the candidates
/// through `basis`.
pub fn enumerate_minimal_vectors(code: &GolayCode, basis: &LatticeBasis) -> Result<MinimalVectorSet> {
    let mut found = Vec::with_capacity(KISSING_24);
    let check = |v: [i64; DIM], found: &mut Vec<LeechVector>| -> Result<()> {
        let by_basis = basis.contains(&v);
        let by_rule = satisfies_congruence_rule(&v, code);
        if by_basis != by_rule {
            return Err(Error::ConstructionConsistency(format!(
                "candidate {v:?}: basis membership {by_basis}, congruence rule {by_rule}"
            )));
        }
        if by_basis {
            found.push(LeechVector::from_i64(&v).expect("small coordinates"));
        }
        Ok(())
    };

    // (±4², 0²²)
    for i in 0..DIM {
        for j in (i + 1)..DIM {
            for (si, sj) in [(4, 4), (4, -4), (-4, 4), (-4, -4)] {
                let mut v = [0; DIM];
                v[i] = si;
                v[j] = sj;
                check(v, &mut found)?;
            }
        }
    }
    // (±2⁸, 0¹⁶) supported on octads, every sign pattern
    for &octad in code.octads() {
        let positions: Vec<usize> = (0..DIM).filter(|&i| octad >> i & 1 == 1).collect();
        for signs in 0u32..256 {
            let mut v = [0; DIM];
            for (bit, &p) in positions.iter().enumerate() {
                v[p] = if signs >> bit & 1 == 1 { -2 } else { 2 };
            }
            check(v, &mut found)?;
        }
    }
    // (∓3, ±1²³): a codeword marks the coordinates ≡ 1 mod 4; both signs of
    // the 3 are tried.
    for &word in code.codewords() {
        for j in 0..DIM {
            let mut v: [i64; DIM] =
                std::array::from_fn(|i| if word >> i & 1 == 1 { 1 } else { -1 });
            for s in [3, -3] {
                v[j] = s;
                check(v, &mut found)?;
            }
        }
    }

    MinimalVectorSet::from_vectors(found)
}

impl MinimalVectorSet {
    /// Builds the set from an arbitrary list, sorting it lexicographically
    /// and checking norms, negation closure and absence of duplicates.
    pub fn from_vectors(mut vectors: Vec<LeechVector>) -> Result<Self> {
        vectors.sort_unstable();
        if let Some(w) = vectors.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::ConstructionConsistency(format!("duplicate vector {:?}", w[0])));
        }
        let mut shapes = Vec::with_capacity(vectors.len());
        for v in &vectors {
            if v.norm() != MIN_NORM {
                return Err(Error::NotMinimal(v.to_i64().to_vec()));
            }
            shapes.push(v.shape().ok_or_else(|| Error::NotMinimal(v.to_i64().to_vec()))?);
        }
        let index: HashMap<LeechVector, u32> = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, i as u32))
            .collect();
        let negation = vectors
            .iter()
            .map(|v| {
                index.get(&-*v).copied().ok_or_else(|| {
                    Error::ConstructionConsistency(format!("negation of {v:?} missing"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MinimalVectorSet {
            vectors,
            index,
            negation,
            shapes,
            table: OnceLock::new(),
        })
    }

    /// Golay code, HNF basis and enumeration in one call.
    pub fn standard() -> Result<(GolayCode, LatticeBasis, Self)> {
        let code = crate::golay::build_golay();
        let basis = LatticeBasis::leech(&code);
        let set = enumerate_minimal_vectors(&code, &basis)?;
        Ok((code, basis, set))
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[LeechVector] {
        &self.vectors
    }

    pub fn get(&self, i: u32) -> &LeechVector {
        &self.vectors[i as usize]
    }

    pub fn index_of(&self, v: &LeechVector) -> Option<u32> {
        self.index.get(v).copied()
    }

    pub fn negation(&self, i: u32) -> u32 {
        self.negation[i as usize]
    }

    pub fn shape(&self, i: u32) -> Shape {
        self.shapes[i as usize]
    }

    /// Column-major copy of the vectors for batch scans, built on first use.
    pub fn table(&self) -> &DotTable {
        self.table.get_or_init(|| DotTable::new(&self.vectors))
    }

    /// Every index `u` (including `i` itself) with `int_dot(v_i, v_u) > 8`.
    pub fn conflicts_of(&self, i: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(4601);
        self.table().scan_above(self.get(i), COMPATIBLE_MAX, &mut out);
        out
    }

    pub fn dot(&self, i: u32, j: u32) -> i32 {
        int_dot(self.get(i), self.get(j))
    }

    /// Counts per shape in the order `(Fours, Twos, Odd)`.
    pub fn shape_counts(&self) -> (usize, usize, usize) {
        let mut counts = (0, 0, 0);
        for s in &self.shapes {
            match s {
                Shape::Fours => counts.0 += 1,
                Shape::Twos => counts.1 += 1,
                Shape::Odd => counts.2 += 1,
            }
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golay::build_golay;

    fn unit(i: usize, s: i64) -> [i64; DIM] {
        let mut v = [0; DIM];
        v[i] = s;
        v
    }

    #[test]
    fn int_dot_examples() {
        let mut a = [0i8; DIM];
        a[0] = 4;
        a[1] = 4;
        let a = LeechVector(a);
        let mut b = a;
        b.0[1] = -4;
        assert_eq!(int_dot(&a, &a), 32);
        assert_eq!(int_dot(&a, &-a), -32);
        assert_eq!(int_dot(&a, &b), 0);
    }

    #[test]
    fn basis_has_unit_covolume() {
        let code = build_golay();
        let basis = LatticeBasis::leech(&code);
        // |det B| = 8^12 in the scaled coordinates
        assert_eq!(basis.diagonal_product(), 8i64.pow(12));
        assert_eq!(basis.gram_determinant(), BigInt::from(8).pow(24));
        for row in basis.rows() {
            assert!(satisfies_congruence_rule(row, &code));
        }
    }

    #[test]
    fn membership_examples() {
        let code = build_golay();
        let basis = LatticeBasis::leech(&code);
        let mut v = unit(0, 4);
        v[1] = 4;
        assert!(basis.contains(&v));
        assert!(!basis.contains(&unit(0, 1)));
        assert!(basis.contains(&[0; DIM]));
        assert!(basis.contains(&unit(5, 8)));
        assert!(!basis.contains(&unit(5, 4)));
    }

    #[test]
    fn coordinates_reconstruct_vector() {
        let code = build_golay();
        let basis = LatticeBasis::leech(&code);
        let mut v = [1i64; DIM];
        v[7] = -3;
        let c = basis.coordinates(&v).unwrap();
        let mut back = [0i64; DIM];
        for (coef, row) in c.iter().zip(basis.rows()) {
            for (b, r) in back.iter_mut().zip(row) {
                *b += coef * r;
            }
        }
        assert_eq!(back, v);
    }

    #[test]
    fn shape_classification() {
        let mut v = [0i8; DIM];
        v[3] = -4;
        v[9] = 4;
        assert_eq!(LeechVector(v).shape(), Some(Shape::Fours));
        let mut odd = [1i8; DIM];
        odd[0] = -3;
        assert_eq!(LeechVector(odd).shape(), Some(Shape::Odd));
        assert_eq!(LeechVector([1; DIM]).shape(), None);
    }
}
