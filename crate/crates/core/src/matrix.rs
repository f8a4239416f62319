//! Bit-packed boolean matrices with word-parallel multiplication.

/// Row-major boolean matrix, 64 entries per word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> BitMatrix {
        let words_per_row = cols.div_ceil(64);
        BitMatrix {
            rows,
            cols,
            words_per_row,
            bits: vec![0; rows * words_per_row],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, r: usize, c: usize) {
        debug_assert!(r < self.rows && c < self.cols);
        self.bits[r * self.words_per_row + c / 64] |= 1u64 << (c % 64);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        self.bits[r * self.words_per_row + c / 64] >> (c % 64) & 1 == 1
    }

    fn row(&self, r: usize) -> &[u64] {
        &self.bits[r * self.words_per_row..(r + 1) * self.words_per_row]
    }

    /// Boolean product: `(i, j)` is set iff some `t` has `self[i][t]` and
    /// `rhs[t][j]`. Panics if the inner dimensions disagree.
    pub fn multiply(&self, rhs: &BitMatrix) -> BitMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = BitMatrix::new(self.rows, rhs.cols);
        for i in 0..self.rows {
            let (lo, hi) = (i * out.words_per_row, (i + 1) * out.words_per_row);
            for (tw, &word) in self.row(i).iter().enumerate() {
                let mut w = word;
                while w != 0 {
                    let t = tw * 64 + w.trailing_zeros() as usize;
                    w &= w - 1;
                    let rhs_row = rhs.row(t);
                    for (acc, &r) in out.bits[lo..hi].iter_mut().zip(rhs_row) {
                        *acc |= r;
                    }
                }
            }
        }
        out
    }
}
