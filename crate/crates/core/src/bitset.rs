//! Fixed-width bitsets with the few operations the order tables need.

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn new(len: usize) -> Self {
        BitSet {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.words[i >> 6] &= !(1 << (i & 63));
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.len && (self.words[i >> 6] >> (i & 63)) & 1 == 1
    }

    pub fn union_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    /// Highest index set in both `self` and `other`.
    pub fn highest_common(&self, other: &BitSet) -> Option<usize> {
        for (k, (a, b)) in self.words.iter().zip(&other.words).enumerate().rev() {
            let w = a & b;
            if w != 0 {
                return Some(k * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        None
    }

    /// Lowest index set in both `self` and `other`.
    pub fn lowest_common(&self, other: &BitSet) -> Option<usize> {
        for (k, (a, b)) in self.words.iter().zip(&other.words).enumerate() {
            let w = a & b;
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    /// True when `self ∩ other` equals `target`.
    pub fn intersection_equals(&self, other: &BitSet, target: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .zip(&target.words)
            .all(|((a, b), t)| a & b == *t)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn highest_and_lowest_common() {
        let mut a = BitSet::new(200);
        let mut b = BitSet::new(200);
        for i in [3, 70, 130, 199] {
            a.insert(i);
        }
        for i in [3, 130, 150] {
            b.insert(i);
        }
        assert_eq!(a.highest_common(&b), Some(130));
        assert_eq!(a.lowest_common(&b), Some(3));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![3, 70, 130, 199]);
        b.remove(3);
        b.remove(130);
        assert_eq!(a.highest_common(&b), None);
    }
}
