//! Batch dot-product scans over sets of lattice vectors.
//!
//! Vectors are stored column-major in blocks of [`LANES`] so a scan against
//! one probe touches only the probe's nonzero coordinates and accumulates
//! all lanes of a block with plain `i8` adds. Coordinates of a probe are in
//! `-4..=4`, so each product is built from at most three adds.
//!
//! Accumulating in `i8` is exact: for vectors of scaled norm at most 32 every
//! partial sum over a subset of coordinates is bounded by 32 in absolute
//! value (Cauchy-Schwarz on the subset).

use crate::leech::{LeechVector, DIM, MIN_NORM};

pub const LANES: usize = 64;

type Block = [i8; LANES];

#[derive(Clone)]
pub struct DotTable {
    /// `columns[k][b]` holds coordinate `k` of the vectors in block `b`.
    columns: Vec<Vec<Block>>,
    len: usize,
}

#[inline(always)]
fn accumulate(acc: &mut Block, col: &Block, m: i8) {
    match m {
        1 => acc.iter_mut().zip(col).for_each(|(a, &c)| *a = a.wrapping_add(c)),
        -1 => acc.iter_mut().zip(col).for_each(|(a, &c)| *a = a.wrapping_sub(c)),
        2 => acc.iter_mut().zip(col).for_each(|(a, &c)| *a = a.wrapping_add(c << 1)),
        -2 => acc.iter_mut().zip(col).for_each(|(a, &c)| *a = a.wrapping_sub(c << 1)),
        3 => acc
            .iter_mut()
            .zip(col)
            .for_each(|(a, &c)| *a = a.wrapping_add((c << 1).wrapping_add(c))),
        -3 => acc
            .iter_mut()
            .zip(col)
            .for_each(|(a, &c)| *a = a.wrapping_sub((c << 1).wrapping_add(c))),
        4 => acc.iter_mut().zip(col).for_each(|(a, &c)| *a = a.wrapping_add(c << 2)),
        -4 => acc.iter_mut().zip(col).for_each(|(a, &c)| *a = a.wrapping_sub(c << 2)),
        _ => acc
            .iter_mut()
            .zip(col)
            .for_each(|(a, &c)| *a = a.wrapping_add(c.wrapping_mul(m))),
    }
}

impl DotTable {
    pub fn new(vectors: &[LeechVector]) -> Self {
        let blocks = vectors.len().div_ceil(LANES);
        let mut columns = vec![vec![[0i8; LANES]; blocks]; DIM];
        for (i, v) in vectors.iter().enumerate() {
            debug_assert!(v.norm() <= MIN_NORM);
            for (k, &c) in v.0.iter().enumerate() {
                columns[k][i / LANES][i % LANES] = c;
            }
        }
        DotTable {
            columns,
            len: vectors.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn blocks(&self) -> usize {
        self.columns[0].len()
    }

    #[inline]
    fn block_dots(&self, probe: &[(usize, i8)], b: usize) -> Block {
        let mut acc = [0i8; LANES];
        for &(k, m) in probe {
            accumulate(&mut acc, &self.columns[k][b], m);
        }
        acc
    }

    fn probe(v: &LeechVector) -> Vec<(usize, i8)> {
        debug_assert!(v.norm() <= MIN_NORM, "probe norm exceeds the exact i8 range");
        v.0.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| (k, c))
            .collect()
    }

    /// Appends to `out` every table index `u` with `dot(v, u) > threshold`,
    /// in increasing order.
    pub fn scan_above(&self, v: &LeechVector, threshold: i32, out: &mut Vec<u32>) {
        let probe = Self::probe(v);
        let t = threshold.clamp(-128, 127) as i8;
        for b in 0..self.blocks() {
            let acc = self.block_dots(&probe, b);
            if acc.iter().any(|&d| d > t) {
                for (l, &d) in acc.iter().enumerate() {
                    let i = b * LANES + l;
                    if d > t && i < self.len {
                        out.push(i as u32);
                    }
                }
            }
        }
    }

    /// Calls `f(index, dot)` for every table entry.
    pub fn for_each_dot(&self, v: &LeechVector, mut f: impl FnMut(u32, i32)) {
        let probe = Self::probe(v);
        for b in 0..self.blocks() {
            let acc = self.block_dots(&probe, b);
            let end = LANES.min(self.len - b * LANES);
            for (l, &d) in acc[..end].iter().enumerate() {
                f((b * LANES + l) as u32, i32::from(d));
            }
        }
    }

    /// Largest dot product of `v` with any table entry, skipping the entry at
    /// `skip` if given.
    pub fn max_dot(&self, v: &LeechVector, skip: Option<u32>) -> Option<i32> {
        let probe = Self::probe(v);
        let mut best: Option<i8> = None;
        for b in 0..self.blocks() {
            let acc = self.block_dots(&probe, b);
            let end = LANES.min(self.len - b * LANES);
            let local = match skip {
                Some(s) if s as usize / LANES == b => acc[..end]
                    .iter()
                    .enumerate()
                    .filter(|(l, _)| b * LANES + l != s as usize)
                    .map(|(_, &d)| d)
                    .max(),
                _ => acc[..end].iter().copied().max(),
            };
            best = match (best, local) {
                (Some(x), Some(y)) => Some(x.max(y)),
                (x, y) => x.or(y),
            };
        }
        best.map(i32::from)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::leech::int_dot;

    fn sample() -> Vec<LeechVector> {
        let mut out = Vec::new();
        let mut odd = [1i8; DIM];
        odd[0] = -3;
        out.push(LeechVector(odd));
        for i in 0..DIM {
            for j in (i + 1)..DIM {
                let mut v = [0i8; DIM];
                v[i] = 4;
                v[j] = if (i + j) % 2 == 0 { 4 } else { -4 };
                out.push(LeechVector(v));
            }
        }
        let mut twos = [0i8; DIM];
        for k in 0..8 {
            twos[k * 3] = if k % 3 == 0 { -2 } else { 2 };
        }
        out.push(LeechVector(twos));
        out
    }

    #[test]
    fn scan_matches_scalar_dot() {
        let vs = sample();
        let table = DotTable::new(&vs);
        for probe in &vs {
            let mut hits = Vec::new();
            table.scan_above(probe, 8, &mut hits);
            let expected: Vec<u32> = (0..vs.len() as u32)
                .filter(|&i| int_dot(probe, &vs[i as usize]) > 8)
                .collect();
            assert_eq!(hits, expected);
            table.for_each_dot(probe, |i, d| assert_eq!(d, int_dot(probe, &vs[i as usize])));
        }
    }

    #[test]
    fn max_dot_respects_skip() {
        let vs = sample();
        let table = DotTable::new(&vs);
        assert_eq!(table.max_dot(&vs[0], None), Some(32));
        let scalar = (1..vs.len()).map(|i| int_dot(&vs[0], &vs[i])).max();
        assert_eq!(table.max_dot(&vs[0], Some(0)), scalar);
    }
}
