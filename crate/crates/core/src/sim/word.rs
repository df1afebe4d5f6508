//! Bounded message words.

use crate::graph::Weight;
use smallvec::SmallVec;

/// Field-width parameters for a run. Every field of a word must fit in
/// `unit_bits = ceil(log2(n * (W + 1)))` bits, and a word holds at most
/// `c_w` fields, so the word budget is `B = c_w * unit_bits` bits. Runs that
/// simulate an enlarged graph (more vertices, bigger weights) declare the
/// enlarged dimensions here.
#[derive(Debug, Clone, Copy)]
pub struct WordDims {
    pub unit_bits: u32,
    pub max_field: u64,
}

impl WordDims {
    pub fn new(n: usize, w_max: Weight) -> Self {
        let span = (n as u128) * (w_max as u128 + 1);
        let unit_bits = (128 - (span.max(2) - 1).leading_zeros()).max(1);
        let max_field = if unit_bits >= 64 {
            u64::MAX
        } else {
            (1u64 << unit_bits) - 1
        };
        WordDims {
            unit_bits,
            max_field,
        }
    }
}

/// One message: at most `c_w` integer fields, each at most `unit_bits` wide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word(pub SmallVec<[u64; 4]>);

impl Word {
    pub fn new(fields: &[u64]) -> Self {
        Word(SmallVec::from_slice(fields))
    }

    pub fn fields(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::ops::Index<usize> for Word {
    type Output = u64;
    fn index(&self, i: usize) -> &u64 {
        &self.0[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_bits_cover_ids_distances_and_sentinel() {
        // n=64, W=100: span 6464 -> 13 bits; sentinel 6401 fits.
        let d = WordDims::new(64, 100);
        assert_eq!(d.unit_bits, 13);
        assert!(64 * 100 + 1 <= d.max_field);
        // Unweighted n=5: span 10 -> 4 bits; sentinel 6 fits.
        let d = WordDims::new(5, 1);
        assert_eq!(d.unit_bits, 4);
        assert!(6 <= d.max_field);
    }
}
