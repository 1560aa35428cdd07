//! Bit-packed matrices over GF(2), one `u64` word per 64 columns.

use super::FpMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64);
        Self { rows, cols, stride, words: vec![0; rows * stride] }
    }

    pub fn from_fp(m: &FpMatrix) -> Self {
        assert_eq!(m.modulus(), 2, "bit-packing requires p = 2");
        let mut b = Self::zero(m.rows(), m.cols());
        for i in 0..m.rows() {
            for (j, &x) in m.row(i).iter().enumerate() {
                if x != 0 {
                    b.words[i * b.stride + j / 64] |= 1 << (j % 64);
                }
            }
        }
        b
    }

    pub fn to_fp(&self) -> FpMatrix {
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for i in 0..self.rows {
            data.extend((0..self.cols).map(|j| self.get(i, j) as u32));
        }
        FpMatrix::from_raw(2, self.rows, self.cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.words[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.words[i * self.stride..(i + 1) * self.stride]
    }

    fn xor_rows(&mut self, dst: usize, src: usize) {
        let s = self.stride;
        if dst == src {
            return;
        }
        let (a, b) = if dst < src {
            let (lo, hi) = self.words.split_at_mut(src * s);
            (&mut lo[dst * s..dst * s + s], &hi[..s])
        } else {
            let (lo, hi) = self.words.split_at_mut(dst * s);
            (&mut hi[..s], &lo[src * s..src * s + s])
        };
        for (x, y) in a.iter_mut().zip(b) {
            *x ^= *y;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.stride {
            self.words.swap(a * self.stride + k, b * self.stride + k);
        }
    }

    /// Reduces in place to reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c)) else { continue };
            self.swap_rows(pr, r);
            for i in 0..self.rows {
                if i != r && self.get(i, c) {
                    self.xor_rows(i, r);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Canonical basis of the right null space, one vector per row.
    pub fn kernel(&self) -> BitMatrix {
        let mut r = self.clone();
        let piv = r.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &piv {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&f| !is_pivot[f]).collect();
        let mut k = BitMatrix::zero(free.len(), self.cols);
        for (row, &f) in free.iter().enumerate() {
            k.words[row * k.stride + f / 64] |= 1 << (f % 64);
            for (i, &c) in piv.iter().enumerate() {
                if r.get(i, f) {
                    k.words[row * k.stride + c / 64] |= 1 << (c % 64);
                }
            }
        }
        k.rref();
        k
    }

    pub fn mul(&self, o: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = BitMatrix::zero(self.rows, o.cols);
        for i in 0..self.rows {
            let dst = i * out.stride;
            for k in 0..self.cols {
                if self.get(i, k) {
                    let src = k * o.stride;
                    for w in 0..o.stride {
                        out.words[dst + w] ^= o.words[src + w];
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_rank() {
        let m = FpMatrix::from_rows(2, &[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]]).unwrap();
        let b = BitMatrix::from_fp(&m);
        assert_eq!(b.to_fp(), m);
        assert_eq!(b.rank(), 2);
        let k = b.kernel();
        assert_eq!(k.to_fp().row(0), &[1, 1, 1]);
    }

    #[test]
    fn wide_rows() {
        let mut rows = vec![vec![0u32; 130]; 3];
        rows[0][129] = 1;
        rows[1][64] = 1;
        rows[2][64] = 1;
        rows[2][129] = 1;
        let m = FpMatrix::from_rows(2, &rows).unwrap();
        assert_eq!(BitMatrix::from_fp(&m).rank(), 2);
        assert_eq!(BitMatrix::from_fp(&m).kernel().rows(), 128);
    }
}
