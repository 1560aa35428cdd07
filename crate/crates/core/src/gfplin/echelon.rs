use super::{inv_mod, FpVector};

/// Incrementally grown subspace kept in reduced echelon form.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    p: u32,
    dim: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    pivot_row: Vec<Option<usize>>,
}

impl EchelonBasis {
    pub fn new(p: u32, dim: usize) -> Self {
        Self { p, dim, rows: Vec::new(), pivots: Vec::new(), pivot_row: vec![None; dim] }
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Ambient dimension.
    pub fn ambient(&self) -> usize {
        self.dim
    }

    /// Dimension of the subspace.
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.dim
    }

    /// Residue of `v` after elimination against the stored rows.
    pub fn reduce(&self, v: &mut [u32]) {
        let p = self.p as u64;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                let f = p - f as u64;
                for (x, &y) in v.iter_mut().zip(row) {
                    if y != 0 {
                        *x = ((*x as u64 + f * y as u64) % p) as u32;
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(c) = w.iter().position(|&x| x != 0) else { return false };
        let p = self.p as u64;
        let inv = inv_mod(w[c], self.p) as u64;
        for x in w.iter_mut() {
            *x = (*x as u64 * inv % p) as u32;
        }
        for row in self.rows.iter_mut() {
            let f = row[c];
            if f != 0 {
                let f = p - f as u64;
                for (x, &y) in row.iter_mut().zip(&w) {
                    if y != 0 {
                        *x = ((*x as u64 + f * y as u64) % p) as u32;
                    }
                }
            }
        }
        self.pivot_row[c] = Some(self.rows.len());
        self.rows.push(w);
        self.pivots.push(c);
        true
    }

    /// Coordinates of `v` with respect to [`Self::basis`], or `None` outside the span.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        if !self.contains(v) {
            return None;
        }
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        Some(order.iter().map(|&i| v[self.pivots[i]]).collect())
    }

    /// Canonical basis sorted by pivot column.
    pub fn basis(&self) -> Vec<FpVector> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.pivots[i]);
        order.iter().map(|&i| FpVector::from_raw(self.p, self.rows[i].clone())).collect()
    }

    /// Pivot columns in increasing order.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut piv = self.pivots.clone();
        piv.sort_unstable();
        piv
    }

    pub fn pivot_row_of(&self, col: usize) -> Option<&[u32]> {
        self.pivot_row[col].map(|i| self.rows[i].as_slice())
    }
}
