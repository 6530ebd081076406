use crate::subset::SubsetMask;

/// GF(2) matrix with each column packed into `u64` words (bit `r` = row `r`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    words: usize,
    data: Vec<u64>,
}

impl Gf2Matrix {
    /// Columns are given as 0/1 entries per row; any odd value counts as 1.
    pub fn from_columns<T: Copy + Into<u64>>(rows: usize, columns: &[Vec<T>]) -> Self {
        let words = rows.div_ceil(64).max(1);
        let mut data = vec![0u64; words * columns.len()];
        for (c, col) in columns.iter().enumerate() {
            for (r, &v) in col.iter().enumerate().take(rows) {
                if v.into() & 1 == 1 {
                    data[c * words + r / 64] |= 1 << (r % 64);
                }
            }
        }
        Gf2Matrix { rows, words, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.data.len() / self.words
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn column(&self, c: usize) -> &[u64] {
        &self.data[c * self.words..(c + 1) * self.words]
    }

    pub fn entry(&self, r: usize, c: usize) -> u8 {
        ((self.column(c)[r / 64] >> (r % 64)) & 1) as u8
    }

    pub fn rank(&self, cols: SubsetMask) -> usize {
        let mut elim = Gf2Eliminator::new(self.words);
        cols.iter()
            .filter(|&c| elim.try_push(self.column(c)))
            .count()
    }
}

/// Incremental echelon basis over GF(2). Each stored vector has a pivot bit (its
/// lowest set bit) that no later stored vector contains.
#[derive(Clone, Debug)]
pub struct Gf2Eliminator {
    words: usize,
    basis: Vec<u64>,
    pivots: Vec<usize>,
    scratch: Vec<u64>,
}

impl Gf2Eliminator {
    pub fn new(words: usize) -> Self {
        Gf2Eliminator {
            words,
            basis: Vec::new(),
            pivots: Vec::new(),
            scratch: vec![0; words],
        }
    }

    pub fn len(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn try_push(&mut self, column: &[u64]) -> bool {
        let w = self.words;
        self.scratch.copy_from_slice(column);
        for (k, &p) in self.pivots.iter().enumerate() {
            if (self.scratch[p / 64] >> (p % 64)) & 1 == 1 {
                let row = &self.basis[k * w..(k + 1) * w];
                for (s, b) in self.scratch.iter_mut().zip(row) {
                    *s ^= b;
                }
            }
        }
        match self.scratch.iter().position(|&x| x != 0) {
            Some(word) => {
                let pivot = word * 64 + self.scratch[word].trailing_zeros() as usize;
                self.basis.extend_from_slice(&self.scratch);
                self.pivots.push(pivot);
                true
            }
            None => false,
        }
    }

    pub fn pop(&mut self) {
        if self.pivots.pop().is_some() {
            self.basis.truncate(self.pivots.len() * self.words);
        }
    }
}
