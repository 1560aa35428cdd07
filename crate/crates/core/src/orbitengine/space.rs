//! Compact vector/matrix kernels for the hot loops: bit-packed rows for `p = 2`
//! and plain residue arrays otherwise.
//!
//! Vectors are also identified with integers in `[0, p^d)`: coordinate `i` is the
//! base-`p` digit of weight `p^i` (bit `i` when `p = 2`). "Least" vector always
//! refers to this packed order.

use std::hash::Hash;

use crate::gfplin::{self, FpMatrix};

pub trait VecSpace: Sync + Send {
    type V: Clone + Eq + Hash + Ord + Send + Sync;
    type M: Clone + Send + Sync;

    fn modulus(&self) -> u32;
    fn dim(&self) -> usize;
    fn mat(&self, m: &FpMatrix) -> Self::M;
    fn to_fp_matrix(&self, m: &Self::M) -> FpMatrix;
    fn identity(&self) -> Self::M;
    fn mul(&self, a: &Self::M, b: &Self::M) -> Self::M;
    fn scale_mat(&self, m: &Self::M, c: u32) -> Self::M;
    fn apply(&self, v: &Self::V, m: &Self::M) -> Self::V;
    fn scale(&self, v: &Self::V, c: u32) -> Self::V;
    fn digits_to_vec(&self, v: &[u32]) -> Self::V;
    fn to_digits(&self, v: &Self::V) -> Vec<u32>;
    fn is_zero(&self, v: &Self::V) -> bool;
}

/// `F_2^d` with `d <= 64`; a vector is a word and a matrix is its list of rows.
#[derive(Debug, Clone, Copy)]
pub struct Gf2Space {
    pub d: usize,
}

impl VecSpace for Gf2Space {
    type V = u64;
    type M = Vec<u64>;

    fn modulus(&self) -> u32 {
        2
    }

    fn dim(&self) -> usize {
        self.d
    }

    fn mat(&self, m: &FpMatrix) -> Vec<u64> {
        (0..self.d).map(|i| encode(m.row(i), 2)).collect()
    }

    fn to_fp_matrix(&self, m: &Vec<u64>) -> FpMatrix {
        let rows: Vec<Vec<u32>> = m.iter().map(|&r| decode(r, 2, self.d)).collect();
        FpMatrix::from_rows(2, &rows).expect("square")
    }

    fn identity(&self) -> Vec<u64> {
        (0..self.d).map(|i| 1u64 << i).collect()
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|&r| self.apply(&r, b)).collect()
    }

    fn scale_mat(&self, m: &Vec<u64>, _c: u32) -> Vec<u64> {
        m.clone()
    }

    #[inline]
    fn apply(&self, v: &u64, m: &Vec<u64>) -> u64 {
        let mut bits = *v;
        let mut out = 0;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            out ^= m[i];
            bits &= bits - 1;
        }
        out
    }

    fn scale(&self, v: &u64, _c: u32) -> u64 {
        *v
    }

    fn digits_to_vec(&self, v: &[u32]) -> u64 {
        encode(v, 2)
    }

    fn to_digits(&self, v: &u64) -> Vec<u32> {
        decode(*v, 2, self.d)
    }

    fn is_zero(&self, v: &u64) -> bool {
        *v == 0
    }
}

/// `F_p^d` for any prime, with row-major residue matrices.
#[derive(Debug, Clone, Copy)]
pub struct FpSpace {
    pub p: u32,
    pub d: usize,
}

impl VecSpace for FpSpace {
    type V = Vec<u32>;
    type M = Vec<u32>;

    fn modulus(&self) -> u32 {
        self.p
    }

    fn dim(&self) -> usize {
        self.d
    }

    fn mat(&self, m: &FpMatrix) -> Vec<u32> {
        m.data().to_vec()
    }

    fn to_fp_matrix(&self, m: &Vec<u32>) -> FpMatrix {
        FpMatrix::new(self.p, self.d, self.d, m.clone()).expect("square")
    }

    fn identity(&self) -> Vec<u32> {
        FpMatrix::identity(self.p, self.d).data().to_vec()
    }

    fn mul(&self, a: &Vec<u32>, b: &Vec<u32>) -> Vec<u32> {
        let d = self.d;
        let mut out = Vec::with_capacity(d * d);
        for i in 0..d {
            out.extend(self.apply(&a[i * d..(i + 1) * d].to_vec(), b));
        }
        out
    }

    fn scale_mat(&self, m: &Vec<u32>, c: u32) -> Vec<u32> {
        m.iter().map(|&x| gfplin::mul_mod(x, c, self.p)).collect()
    }

    #[inline]
    fn apply(&self, v: &Vec<u32>, m: &Vec<u32>) -> Vec<u32> {
        let d = self.d;
        let p = self.p as u64;
        let mut acc = vec![0u64; d];
        for (i, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let row = &m[i * d..(i + 1) * d];
            for (a, &y) in acc.iter_mut().zip(row) {
                *a += x as u64 * y as u64;
            }
            if i % 64 == 63 {
                acc.iter_mut().for_each(|a| *a %= p);
            }
        }
        acc.into_iter().map(|a| (a % p) as u32).collect()
    }

    fn scale(&self, v: &Vec<u32>, c: u32) -> Vec<u32> {
        v.iter().map(|&x| gfplin::mul_mod(x, c, self.p)).collect()
    }

    fn digits_to_vec(&self, v: &[u32]) -> Vec<u32> {
        v.to_vec()
    }

    fn to_digits(&self, v: &Vec<u32>) -> Vec<u32> {
        v.clone()
    }

    fn is_zero(&self, v: &Vec<u32>) -> bool {
        v.iter().all(|&x| x == 0)
    }
}

/// Packed index of a vector (requires `p^d < 2^64`).
pub fn encode(v: &[u32], p: u32) -> u64 {
    if p == 2 {
        return v.iter().enumerate().fold(0, |acc, (i, &x)| acc | ((x as u64 & 1) << i));
    }
    v.iter().rev().fold(0, |acc, &x| acc * p as u64 + x as u64)
}

pub fn decode(mut idx: u64, p: u32, d: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(d);
    for _ in 0..d {
        out.push((idx % p as u64) as u32);
        idx /= p as u64;
    }
    out
}

/// `p^d` if it fits in a `u64`.
pub fn space_size(p: u32, d: usize) -> Option<u64> {
    (p as u64).checked_pow(d as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encoding_round_trip() {
        for (p, d) in [(2u32, 7usize), (3, 5), (5, 4)] {
            for idx in 0..space_size(p, d).unwrap() {
                assert_eq!(encode(&decode(idx, p, d), p), idx);
            }
        }
        assert_eq!(encode(&[1, 0, 2], 3), 1 + 2 * 9);
    }

    #[test]
    fn kernels_agree() {
        let m = FpMatrix::from_i64(2, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 0]]).unwrap();
        let g = Gf2Space { d: 3 };
        let f = FpSpace { p: 2, d: 3 };
        for idx in 0..8u64 {
            let v = decode(idx, 2, 3);
            assert_eq!(g.to_digits(&g.apply(&idx, &g.mat(&m))), f.apply(&v, &f.mat(&m)));
            assert_eq!(f.apply(&v, &f.mat(&m)), m.vec_mul(&v));
        }
        assert_eq!(g.to_fp_matrix(&g.mul(&g.mat(&m), &g.mat(&m))), m.mul(&m).unwrap());
        assert_eq!(f.to_fp_matrix(&f.mul(&f.mat(&m), &f.mat(&m))), m.mul(&m).unwrap());
    }
}
