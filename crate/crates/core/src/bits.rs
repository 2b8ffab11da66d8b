//! Dense square bit matrices, one bitmask row per element.

use std::fmt;

const WORD: usize = 64;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(WORD)
}

/// An `n x n` boolean matrix stored as packed rows.
///
/// Row `x` is the set `{y : m[x][y]}`, so for an order relation a row is the
/// strict up-set of `x`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = words_for(n);
        BitMatrix {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        debug_assert!(x < self.n && y < self.n);
        self.data[x * self.words + y / WORD] >> (y % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, value: bool) {
        debug_assert!(x < self.n && y < self.n);
        let w = &mut self.data[x * self.words + y / WORD];
        if value {
            *w |= 1 << (y % WORD);
        } else {
            *w &= !(1 << (y % WORD));
        }
    }

    #[inline]
    pub fn row(&self, x: usize) -> &[u64] {
        &self.data[x * self.words..(x + 1) * self.words]
    }

    #[inline]
    pub fn row_mut(&mut self, x: usize) -> &mut [u64] {
        &mut self.data[x * self.words..(x + 1) * self.words]
    }

    /// `row(x) |= row(y)`.
    pub fn or_row_into(&mut self, x: usize, y: usize) {
        if x == y {
            return;
        }
        let w = self.words;
        let (src, dst) = if x < y {
            let (lo, hi) = self.data.split_at_mut(y * w);
            (&hi[..w], &mut lo[x * w..(x + 1) * w])
        } else {
            let (lo, hi) = self.data.split_at_mut(x * w);
            (&lo[y * w..(y + 1) * w], &mut hi[..w])
        };
        for (d, s) in dst.iter_mut().zip(src) {
            *d |= *s;
        }
    }

    pub fn row_iter(&self, x: usize) -> Ones<'_> {
        Ones::new(self.row(x))
    }

    pub fn row_count(&self, x: usize) -> usize {
        self.row(x).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn count(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::new(self.n);
        for x in 0..self.n {
            for y in self.row_iter(x) {
                t.set(y, x, true);
            }
        }
        t
    }

    /// All set entries `(x, y)` in row-major order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |x| self.row_iter(x).map(move |y| (x, y)))
    }

    pub fn has_diagonal(&self) -> bool {
        (0..self.n).any(|x| self.get(x, x))
    }

    /// Warshall closure over bit rows.
    pub fn close_transitively(&mut self) {
        for k in 0..self.n {
            for i in 0..self.n {
                if i != k && self.get(i, k) {
                    self.or_row_into(i, k);
                }
            }
        }
    }

    /// Relational composition `self ; self`.
    pub fn square(&self) -> BitMatrix {
        let mut out = BitMatrix::new(self.n);
        for x in 0..self.n {
            let w = self.words;
            for y in self.row_iter(x) {
                for (i, word) in self.row(y).iter().enumerate() {
                    out.data[x * w + i] |= *word;
                }
            }
        }
        out
    }

    pub fn and_not(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.n, other.n);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a & !b)
            .collect();
        BitMatrix {
            n: self.n,
            words: self.words,
            data,
        }
    }

    pub fn is_disjoint(&self, other: &BitMatrix) -> bool {
        self.data.iter().zip(&other.data).all(|(a, b)| a & b == 0)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

/// `a ⊆ b` for equal-length word slices.
#[inline]
pub fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

#[inline]
pub fn intersects(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).any(|(x, y)| x & y != 0)
}

/// Iterator over set bit positions of a word slice.
pub struct Ones<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> Ones<'a> {
    pub fn new(words: &'a [u64]) -> Self {
        Ones {
            words,
            idx: 0,
            cur: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let bit = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD + bit);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_long_path_crosses_word_boundary() {
        let n = 130;
        let mut m = BitMatrix::new(n);
        for i in 0..n - 1 {
            m.set(i, i + 1, true);
        }
        m.close_transitively();
        assert_eq!(m.count(), n * (n - 1) / 2);
        assert!(m.get(0, 129));
        assert!(!m.get(129, 0));
        assert_eq!(
            m.row_iter(64).collect::<Vec<_>>(),
            (65..130).collect::<Vec<_>>()
        );
    }

    #[test]
    fn square_and_transpose() {
        let mut m = BitMatrix::new(3);
        m.set(0, 1, true);
        m.set(1, 2, true);
        let sq = m.square();
        assert_eq!(sq.pairs().collect::<Vec<_>>(), vec![(0, 2)]);
        assert_eq!(
            m.transpose().pairs().collect::<Vec<_>>(),
            vec![(1, 0), (2, 1)]
        );
    }

    #[test]
    fn or_row_into_both_directions() {
        let mut m = BitMatrix::new(4);
        m.set(0, 3, true);
        m.set(2, 1, true);
        m.or_row_into(2, 0);
        m.or_row_into(0, 2);
        assert!(m.get(2, 3) && m.get(0, 1));
    }
}
