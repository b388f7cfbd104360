//! Small fixed-size bit set and bit matrix used for element subsets and
//! pair relations over finite carriers.

/// Fixed-capacity bit set over indices `0..len`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Bits {
    len: usize,
    words: Vec<u64>,
}

impl Bits {
    pub fn new(len: usize) -> Self {
        Bits {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut b = Bits::new(len);
        for i in 0..len {
            b.set(i);
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn union_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn intersect_with(&mut self, other: &Bits) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
    }

    pub fn intersects(&self, other: &Bits) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut b = Bits::new(len);
        for i in idx {
            b.set(i);
        }
        b
    }
}

/// Dense boolean matrix over `rows x cols`, used for surpassing tables and
/// pair relations (`rows == cols`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitGrid {
    rows: usize,
    cols: usize,
    words: Vec<u64>,
}

impl BitGrid {
    pub fn new(rows: usize, cols: usize) -> Self {
        BitGrid {
            rows,
            cols,
            words: vec![0; (rows * cols).div_ceil(64)],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    fn at(&self, r: usize, c: usize) -> usize {
        debug_assert!(r < self.rows && c < self.cols);
        r * self.cols + c
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        let i = self.at(r, c);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize) {
        let i = self.at(r, c);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.rows)
            .flat_map(move |r| (0..self.cols).map(move |c| (r, c)))
            .filter(move |&(r, c)| self.get(r, c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bits_roundtrip() {
        let mut b = Bits::new(130);
        b.set(0);
        b.set(64);
        b.set(129);
        assert!(b.get(0) && b.get(64) && b.get(129));
        assert!(!b.get(1));
        assert_eq!(b.count(), 3);
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        b.clear(64);
        assert_eq!(b.count(), 2);
    }

    #[test]
    fn subset_and_union() {
        let a = Bits::from_indices(10, [1, 3]);
        let mut b = Bits::from_indices(10, [1, 3, 7]);
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        b.union_with(&a);
        assert_eq!(b.count(), 3);
    }

    #[test]
    fn grid_get_set() {
        let mut g = BitGrid::new(9, 9);
        g.set(8, 8);
        g.set(0, 3);
        assert!(g.get(8, 8) && g.get(0, 3) && !g.get(3, 0));
        assert_eq!(g.iter_pairs().collect::<Vec<_>>(), vec![(0, 3), (8, 8)]);
    }
}
