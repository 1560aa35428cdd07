//! Dense polynomials over `F_p` (coefficients low degree first) with
//! characteristic polynomials and factorisation into distinct irreducibles.

use rand::Rng;

use crate::gfplin::{add_mod, inv_mod, mul_mod, sub_mod, FpMatrix};

pub type Poly = Vec<u32>;

fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

fn is_one(a: &[u32]) -> bool {
    a.len() == 1 && a[0] == 1
}

pub fn sub(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        *o = sub_mod(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0), p);
    }
    trim(out)
}

pub fn add(a: &[u32], b: &[u32], p: u32) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        *o = add_mod(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0), p);
    }
    trim(out)
}

pub fn mul(a: &[u32], b: &[u32], p: u32) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|c| c as u32).collect())
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u32], b: &[u32], p: u32) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let inv = inv_mod(b[db], p);
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0; r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = mul_mod(r[dr], inv, p);
        q[dr - db] = c;
        for (i, &bi) in b[..=db].iter().enumerate() {
            r[dr - db + i] = sub_mod(r[dr - db + i], mul_mod(c, bi, p), p);
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn rem(a: &[u32], b: &[u32], p: u32) -> Poly {
    divrem(a, b, p).1
}

pub fn monic(a: &[u32], p: u32) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = inv_mod(a[d], p);
            a[..=d].iter().map(|&c| mul_mod(c, inv, p)).collect()
        }
    }
}

pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Poly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

pub fn derivative(a: &[u32], p: u32) -> Poly {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mul_mod(c, (i as u64 % p as u64) as u32, p)).collect())
}

pub fn powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Poly {
    let mut result = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul(&result, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    rem(&result, m, p)
}

/// Characteristic polynomial `det(xI - A)` via reduction to Hessenberg form.
pub fn charpoly(a: &FpMatrix) -> Poly {
    let p = a.modulus();
    let d = a.rows();
    let mut h: Vec<Vec<u32>> = (0..d).map(|i| a.row(i).to_vec()).collect();
    for m in 1..d.saturating_sub(1) {
        let Some(i) = (m..d).find(|&i| h[i][m - 1] != 0) else { continue };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let inv = inv_mod(h[m][m - 1], p);
        for i in m + 1..d {
            let u = mul_mod(h[i][m - 1], inv, p);
            if u == 0 {
                continue;
            }
            let (top, bottom) = h.split_at_mut(i);
            for (x, &y) in bottom[0].iter_mut().zip(&top[m]) {
                *x = sub_mod(*x, mul_mod(u, y, p), p);
            }
            for row in h.iter_mut() {
                row[m] = add_mod(row[m], mul_mod(u, row[i], p), p);
            }
        }
    }
    let mut polys: Vec<Poly> = vec![vec![1]];
    for k in 0..d {
        let mut next = mul(&polys[k], &[sub_mod(0, h[k][k], p), 1], p);
        let mut prod = 1;
        for i in (0..k).rev() {
            prod = mul_mod(prod, h[i + 1][i], p);
            let c = mul_mod(h[i][k], prod, p);
            if c != 0 {
                let term: Poly = polys[i].iter().map(|&x| mul_mod(x, c, p)).collect();
                next = sub(&next, &term, p);
            }
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}

/// `f(A)` by Horner's rule.
pub fn eval_matrix(f: &[u32], a: &FpMatrix) -> FpMatrix {
    let p = a.modulus();
    let d = a.rows();
    let mut m = FpMatrix::zero(p, d, d);
    for &c in f.iter().rev() {
        m = m.mul(a).expect("square").add(&FpMatrix::scalar(p, d, c));
    }
    m
}

fn squarefree_parts(f: &[u32], p: u32, out: &mut Vec<Poly>) {
    let f = monic(f, p);
    if degree(&f).unwrap_or(0) == 0 {
        return;
    }
    let mut c = gcd(&f, &derivative(&f, p), p);
    let mut w = divrem(&f, &c, p).0;
    while !is_one(&w) {
        let y = gcd(&w, &c, p);
        let fac = divrem(&w, &y, p).0;
        if !is_one(&fac) {
            out.push(monic(&fac, p));
        }
        w = y;
        c = divrem(&c, &w, p).0;
    }
    if !is_one(&c) {
        // c is a polynomial in x^p; take the p-th root
        let root: Poly = c.iter().step_by(p as usize).copied().collect();
        squarefree_parts(&root, p, out);
    }
}

fn distinct_degree(f: &[u32], p: u32) -> Vec<(Poly, usize)> {
    let mut g = f.to_vec();
    let mut out = Vec::new();
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    let mut i = 1;
    while degree(&g).unwrap_or(0) >= 2 * i {
        h = powmod(&h, p as u64, &g, p);
        let d = gcd(&g, &sub(&h, &x, p), p);
        if !is_one(&d) {
            g = divrem(&g, &d, p).0;
            h = rem(&h, &g, p);
            out.push((d, i));
        }
        i += 1;
    }
    if let Some(dg) = degree(&g) {
        if dg > 0 {
            out.push((monic(&g, p), dg));
        }
    }
    out
}

fn equal_degree<R: Rng>(f: &[u32], i: usize, p: u32, rng: &mut R, out: &mut Vec<Poly>) {
    let df = degree(f).unwrap_or(0);
    if df == i {
        out.push(monic(f, p));
        return;
    }
    loop {
        let a: Poly = trim((0..df).map(|_| rng.gen_range(0..p)).collect());
        if degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = if p == 2 {
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..i {
                t = powmod(&t, 2, f, p);
                acc = add(&acc, &t, p);
            }
            acc
        } else {
            let mut t = a.clone();
            let mut norm = a.clone();
            for _ in 1..i {
                t = powmod(&t, p as u64, f, p);
                norm = rem(&mul(&norm, &t, p), f, p);
            }
            sub(&powmod(&norm, (p as u64 - 1) / 2, f, p), &[1], p)
        };
        let g = gcd(f, &b, p);
        let dg = degree(&g).unwrap_or(0);
        if dg > 0 && dg < df {
            let q = divrem(f, &g, p).0;
            equal_degree(&g, i, p, rng, out);
            equal_degree(&q, i, p, rng, out);
            return;
        }
    }
}

/// Distinct monic irreducible factors, sorted by degree then coefficients.
pub fn irreducible_factors<R: Rng>(f: &[u32], p: u32, rng: &mut R) -> Vec<Poly> {
    let mut sqf = Vec::new();
    squarefree_parts(f, p, &mut sqf);
    let mut out = Vec::new();
    for part in sqf {
        for (g, i) in distinct_degree(&part, p) {
            equal_degree(&g, i, p, rng, &mut out);
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn charpoly_matches_companion() {
        // companion matrix of x^3 + 2x + 1 over F_5
        let a = FpMatrix::from_i64(5, &[&[0, 1, 0], &[0, 0, 1], &[-1, -2, 0]]).unwrap();
        assert_eq!(charpoly(&a), vec![1, 2, 0, 1]);
        assert!(eval_matrix(&charpoly(&a), &a).data().iter().all(|&x| x == 0));
    }

    #[test]
    fn factors_multiply_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in [2u32, 3, 5, 7] {
            let f1 = vec![1, 1, 0, 1]; // x^3 + x + 1
            let f2 = vec![p - 1, 1]; // x - 1
            let f = mul(&mul(&f1, &f2, p), &f2, p);
            let facs = irreducible_factors(&f, p, &mut rng);
            let rad = facs.iter().fold(vec![1], |acc, g| mul(&acc, g, p));
            assert!(rem(&f, &rad, p).is_empty(), "p={p}");
            let cube = mul(&mul(&rad, &rad, p), &rad, p);
            assert!(rem(&cube, &f, p).is_empty(), "p={p}");
            assert!(!rem(&f, &mul(&rad, &rad, p), p).is_empty(), "p={p}");
        }
        // x^4 - 1 over F_5 splits into four linear factors
        let facs = irreducible_factors(&[4, 0, 0, 0, 1], 5, &mut rng);
        assert_eq!(facs.len(), 4);
        // x^2 + x + 1 irreducible over F_2, and x^4 + x + 1 too
        assert_eq!(irreducible_factors(&[1, 1, 0, 0, 1], 2, &mut rng).len(), 1);
        assert_eq!(irreducible_factors(&[1, 0, 1, 0, 1], 2, &mut rng), vec![vec![1, 1, 1]]);
    }
}
