//! Extended binary Golay code `[24, 12, 8]`.
//!
//! Built as the cyclic `(23, 12, 7)` code with generator polynomial
//! `x^11 + x^9 + x^7 + x^6 + x^5 + x + 1`, extended by an overall parity bit
//! in coordinate 23. Coordinates `0..23` are labelled by the field `F_23` and
//! coordinate 23 plays the role of the point at infinity of the projective
//! line, which is the labelling `PSL(2, 23) < M24` acts on.
//!
//! Codewords are packed into the low 24 bits of a `u32`, bit `i` being
//! coordinate `i`.

use std::fmt;

/// Generator polynomial of the cyclic `(23, 12, 7)` code, bit `i` = coefficient of `x^i`.
const GENERATOR_POLY: u32 = 0xAE3;

/// Number of coordinates.
pub const LENGTH: usize = 24;

const ALL_ONES: u32 = (1 << LENGTH) - 1;

#[derive(Clone)]
pub struct GolayCode {
    generator_rows: [u32; 12],
    codewords: Vec<u32>,
    octads: Vec<u32>,
    /// Membership bitmap over all `2^24` words.
    members: Vec<u64>,
}

impl fmt::Debug for GolayCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GolayCode")
            .field("codewords", &self.codewords.len())
            .field("octads", &self.octads.len())
            .finish()
    }
}

/// Builds the extended Golay code together with its 759 octads.
pub fn build_golay() -> GolayCode {
    let mut generator_rows = [0u32; 12];
    for (shift, row) in generator_rows.iter_mut().enumerate() {
        let word = GENERATOR_POLY << shift;
        let parity = word.count_ones() & 1;
        *row = word | (parity << 23);
    }

    let mut codewords = Vec::with_capacity(4096);
    for message in 0u32..4096 {
        let mut word = 0;
        for (bit, row) in generator_rows.iter().enumerate() {
            if message >> bit & 1 == 1 {
                word ^= row;
            }
        }
        codewords.push(word);
    }
    codewords.sort_unstable();

    let mut members = vec![0u64; (1 << LENGTH) / 64];
    for &w in &codewords {
        members[(w >> 6) as usize] |= 1 << (w & 63);
    }
    let octads = codewords.iter().copied().filter(|w| w.count_ones() == 8).collect();

    GolayCode {
        generator_rows,
        codewords,
        octads,
        members,
    }
}

impl GolayCode {
    pub fn generator_rows(&self) -> &[u32; 12] {
        &self.generator_rows
    }

    /// All 4096 codewords in increasing numeric order.
    pub fn codewords(&self) -> &[u32] {
        &self.codewords
    }

    /// The 759 weight-8 codewords in increasing numeric order.
    pub fn octads(&self) -> &[u32] {
        &self.octads
    }

    pub fn contains(&self, word: u32) -> bool {
        word <= ALL_ONES && self.members[(word >> 6) as usize] >> (word & 63) & 1 == 1
    }

    /// Weight enumerator as a histogram indexed by weight `0..=24`.
    pub fn weight_distribution(&self) -> [usize; LENGTH + 1] {
        let mut hist = [0usize; LENGTH + 1];
        for w in &self.codewords {
            hist[w.count_ones() as usize] += 1;
        }
        hist
    }

    /// The unique octad containing the 5-set `five` (given as a bitmask).
    pub fn octad_through(&self, five: u32) -> Option<u32> {
        debug_assert_eq!(five.count_ones(), 5);
        self.octads.iter().copied().find(|o| o & five == five)
    }

    /// The sextet determined by a 4-set: six disjoint tetrads, the union of
    /// any two of which is an octad. The first tetrad is `tetrad` itself.
    pub fn sextet(&self, tetrad: u32) -> Option<[u32; 6]> {
        if tetrad.count_ones() != 4 || tetrad > ALL_ONES {
            return None;
        }
        let mut tetrads = [0u32; 6];
        tetrads[0] = tetrad;
        let mut covered = tetrad;
        let mut found = 1;
        for p in 0..LENGTH {
            if covered >> p & 1 == 1 {
                continue;
            }
            let octad = self.octad_through(tetrad | 1 << p)?;
            let other = octad & !tetrad;
            tetrads[found] = other;
            covered |= other;
            found += 1;
        }
        (found == 6 && covered == ALL_ONES).then_some(tetrads)
    }

    /// Whether the coordinate permutation `perm` (`i ↦ perm[i]`) maps the
    /// code onto itself. Checking the generator rows is sufficient.
    pub fn is_automorphism(&self, perm: &[usize; LENGTH]) -> bool {
        self.generator_rows
            .iter()
            .all(|&row| self.contains(permute_word(row, perm)))
    }
}

/// Applies a coordinate permutation to a packed word.
pub fn permute_word(word: u32, perm: &[usize; LENGTH]) -> u32 {
    let mut out = 0;
    for (i, &target) in perm.iter().enumerate() {
        if word >> i & 1 == 1 {
            out |= 1 << target;
        }
    }
    out
}

const INFINITY: usize = 23;

fn inverse_mod23(a: usize) -> usize {
    // a^21 = a^{-1} in F_23
    let mut acc = 1;
    for _ in 0..21 {
        acc = acc * a % 23;
    }
    acc
}

fn is_square_mod23(a: usize) -> bool {
    (1..23).any(|x| x * x % 23 == a)
}

/// Generators of `M24` acting on the projective-line labelling of the code:
/// `t ↦ t + 1`, `t ↦ 2t`, `t ↦ -1/t` and the extra element fixing `0` and
/// `∞` that sends squares `t ↦ 9t^3` and non-squares `t ↦ t^3 / 9`.
pub fn mathieu_generators() -> Vec<[usize; LENGTH]> {
    let shift = std::array::from_fn(|i| if i == INFINITY { INFINITY } else { (i + 1) % 23 });
    let double = std::array::from_fn(|i| if i == INFINITY { INFINITY } else { 2 * i % 23 });
    let invert = std::array::from_fn(|i| match i {
        0 => INFINITY,
        INFINITY => 0,
        _ => (23 - inverse_mod23(i)) % 23,
    });
    let ninth = inverse_mod23(9);
    let conway = std::array::from_fn(|i| match i {
        0 | INFINITY => i,
        _ => {
            let cube = i * i % 23 * i % 23;
            if is_square_mod23(i) {
                9 * cube % 23
            } else {
                cube * ninth % 23
            }
        }
    });
    vec![shift, double, invert, conway]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_distribution_matches_golay() {
        let code = build_golay();
        let hist = code.weight_distribution();
        assert_eq!(code.codewords().len(), 4096);
        assert_eq!(hist[0], 1);
        assert_eq!(hist[8], 759);
        assert_eq!(hist[12], 2576);
        assert_eq!(hist[16], 759);
        assert_eq!(hist[24], 1);
        assert_eq!(hist.iter().sum::<usize>(), 4096);
        assert_eq!(code.octads().len(), 759);
    }

    #[test]
    fn minimum_nonzero_weight_is_eight() {
        let code = build_golay();
        let min = code
            .codewords()
            .iter()
            .filter(|&&w| w != 0)
            .map(|w| w.count_ones())
            .min();
        assert_eq!(min, Some(8));
    }

    #[test]
    fn closed_under_addition() {
        let code = build_golay();
        assert!(code.contains(0));
        let words = code.codewords();
        for (i, &a) in words.iter().enumerate().step_by(37) {
            for &b in words.iter().skip(i % 11).step_by(13) {
                assert!(code.contains(a ^ b));
            }
        }
        let octads = code.octads();
        for a in octads.iter().take(50) {
            for b in octads.iter().rev().take(50) {
                assert!(code.contains(a ^ b));
            }
        }
    }

    #[test]
    fn mathieu_generators_preserve_the_code() {
        let code = build_golay();
        for perm in mathieu_generators() {
            let mut seen = [false; LENGTH];
            for &p in &perm {
                seen[p] = true;
            }
            assert!(seen.iter().all(|&s| s), "not a permutation: {perm:?}");
            assert!(code.is_automorphism(&perm));
        }
        let mut transposition: [usize; LENGTH] = std::array::from_fn(|i| i);
        transposition.swap(0, 1);
        assert!(!code.is_automorphism(&transposition));
    }

    #[test]
    fn mathieu_generators_are_transitive_on_octads() {
        let code = build_golay();
        let gens = mathieu_generators();
        let mut seen = std::collections::HashSet::new();
        let mut queue = vec![code.octads()[0]];
        seen.insert(code.octads()[0]);
        while let Some(o) = queue.pop() {
            for g in &gens {
                let image = permute_word(o, g);
                if seen.insert(image) {
                    queue.push(image);
                }
            }
        }
        assert_eq!(seen.len(), 759);
    }

    #[test]
    fn sextet_tetrads_pair_into_octads() {
        let code = build_golay();
        let sextet = code.sextet(0b1111).unwrap();
        for i in 0..6 {
            assert_eq!(sextet[i].count_ones(), 4);
            for j in (i + 1)..6 {
                assert_eq!(sextet[i] & sextet[j], 0);
                assert!(code.contains(sextet[i] | sextet[j]));
            }
        }
    }
}
