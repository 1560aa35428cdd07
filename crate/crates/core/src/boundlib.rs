//! Numeric bounds used as prefilters: dimension thresholds, logarithmic
//! fixed-space bounds with exact floors, spin-module dimensions.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::permsym::factorial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("{what} needs {need} (got n = {n})")]
    Range { what: &'static str, need: &'static str, n: usize },
    #[error("logarithm base must be at least 2")]
    Base,
}

pub type Result<T> = std::result::Result<T, BoundError>;

/// `f(n) = (n^3 - 9n^2 + 14n - 6) / 6`.
pub fn f(n: usize) -> BigRational {
    let n = BigRational::from_integer(n.into());
    let c = |x: i64| BigRational::from_integer(x.into());
    (&n * &n * &n - c(9) * &n * &n + c(14) * &n - c(6)) / c(6)
}

/// The piecewise dimension threshold; `f(n)` beyond the tabulated range.
pub fn f_p(n: usize, p: u32) -> Result<BigRational> {
    let table = |v: i64| Ok(BigRational::from_integer(v.into()));
    if p == 2 {
        match n {
            15 | 16 => table(127),
            17 | 18 => table(253),
            19 | 20 => table(505),
            21 | 22 => table(930),
            n if n >= 23 => Ok(f(n)),
            _ => Err(BoundError::Range { what: "f_2", need: "n >= 15", n }),
        }
    } else {
        match n {
            11 => table(54),
            12 => table(88),
            13 => table(107),
            14 => table(175),
            15 => table(213),
            n if n >= 16 => Ok(f(n)),
            _ => Err(BoundError::Range { what: "f_p (p odd)", need: "n >= 11", n }),
        }
    }
}

/// `(num / den) * log_base(arg)`, with an exact floor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogBound {
    pub num: u64,
    pub den: u64,
    pub base: u64,
    pub arg: BigUint,
}

fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap_or(f64::INFINITY).ln() + shift as f64 * std::f64::consts::LN_2
}

impl LogBound {
    pub fn new(num: u64, den: u64, base: u64, arg: BigUint) -> Result<Self> {
        if base < 2 {
            return Err(BoundError::Base);
        }
        Ok(Self { num, den, base, arg })
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64 * ln_big(&self.arg) / (self.base as f64).ln()
    }

    /// Largest `k` with `base^(k den) <= arg^num`.
    pub fn floor(&self) -> u64 {
        let rhs = self.arg.pow(self.num as u32);
        let fits = |k: u64| BigUint::from(self.base).pow((k * self.den) as u32) <= rhs;
        let mut k = self.value().floor().max(0.0) as u64;
        while k > 0 && !fits(k) {
            k -= 1;
        }
        while fits(k + 1) {
            k += 1;
        }
        k
    }
}

fn need_n7(what: &'static str, n: usize) -> Result<()> {
    if n < 7 {
        return Err(BoundError::Range { what, need: "n >= 7", n });
    }
    Ok(())
}

/// `(n - 1) log_q |G|`.
pub fn eq1(q: u64, n: usize, order: &BigUint) -> Result<LogBound> {
    LogBound::new(n as u64 - 1, 1, q, order.clone())
}

/// Both terms of `max{(n-1) log_q(n(n-1)z), (n/2) log_q(2 n! z)}`.
pub fn eq2_terms(q: u64, n: usize, z: u64) -> Result<[LogBound; 2]> {
    need_n7("eq2", n)?;
    let first = LogBound::new(n as u64 - 1, 1, q, BigUint::from(n as u64 * (n as u64 - 1) * z))?;
    Ok([first, eq3_unchecked(q, n, z)?])
}

pub fn eq2(q: u64, n: usize, z: u64) -> Result<f64> {
    let [a, b] = eq2_terms(q, n, z)?;
    Ok(a.value().max(b.value()))
}

pub fn eq2_floor(q: u64, n: usize, z: u64) -> Result<u64> {
    let [a, b] = eq2_terms(q, n, z)?;
    Ok(a.floor().max(b.floor()))
}

fn eq3_unchecked(q: u64, n: usize, z: u64) -> Result<LogBound> {
    LogBound::new(n as u64, 2, q, factorial(n) * 2u32 * z)
}

/// `(n/2) log_q(2 n! z)`.
pub fn eq3(q: u64, n: usize, z: u64) -> Result<LogBound> {
    need_n7("eq3", n)?;
    if z as usize > n {
        return Err(BoundError::Range { what: "eq3", need: "|Z| <= n", n });
    }
    eq3_unchecked(q, n, z)
}

/// `g(q, n) = eq2(q, n, q - 1)`.
pub fn g(q: u64, n: usize) -> Result<f64> {
    eq2(q, n, q - 1)
}

pub fn g_floor(q: u64, n: usize) -> Result<u64> {
    eq2_floor(q, n, q - 1)
}

/// `r_max log_q |G|`.
pub fn general_bound(q: u64, order: &BigUint, r_max: u64) -> Result<LogBound> {
    LogBound::new(r_max, 1, q, order.clone())
}

fn half_order_scaled(p: u32, n: usize) -> BigUint {
    factorial(n) * (p - 1) / 2u32
}

/// `n log_p(n! (p-1) / 2)`, the bound used for modules of `A_n` with associates.
pub fn h_assoc(p: u32, n: usize) -> LogBound {
    LogBound { num: n as u64, den: 1, base: p as u64, arg: half_order_scaled(p, n) }
}

/// `(n/2) log_p(n! (p-1) / 2)`, the bound used for double covers.
pub fn h_spin(p: u32, n: usize) -> LogBound {
    LogBound { num: n as u64, den: 2, base: p as u64, arg: half_order_scaled(p, n) }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cover {
    DoubleSn,
    DoubleAn,
}

pub fn kappa(p: u32, n: usize) -> u32 {
    u32::from((n as u64).is_multiple_of(p as u64))
}

/// Dimension of a basic spin module of `2.S_n^±` or `2.A_n` in characteristic `p`.
pub fn delta(cover: Cover, n: usize, p: u32) -> Result<u64> {
    if n < 5 {
        return Err(BoundError::Range { what: "delta", need: "n >= 5", n });
    }
    let shift = match cover {
        Cover::DoubleSn => 1,
        Cover::DoubleAn => 2,
    };
    Ok(1 << ((n as u32 - shift - kappa(p, n)) / 2))
}

/// Upper bound for `r(g)`: `n - 1` for transpositions or `n < 7`, else `n / 2`.
pub fn r_upper(is_transposition: bool, n: usize) -> Result<u64> {
    if n < 5 {
        return Err(BoundError::Range { what: "r_upper", need: "n >= 5", n });
    }
    Ok(if is_transposition || n < 7 { n as u64 - 1 } else { n as u64 / 2 })
}

/// Every bound applicable to `(n, q)` for a group of the given order and centre.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub q: u64,
    pub group_order: BigUint,
    pub center_order: u64,
    pub eq1: (f64, u64),
    pub eq2: Option<(f64, u64)>,
    /// `eq2` with `|Z|` replaced by `q - 1`, i.e. `g(q, n)`.
    pub eq2_q: Option<(f64, u64)>,
    pub eq3: Option<(f64, u64)>,
    /// The smaller of the two `eq2` variants.
    pub eq2_best: Option<u64>,
    pub f: Option<BigRational>,
    pub f_p: Option<BigRational>,
    pub h_assoc: (f64, u64),
    pub h_spin: (f64, u64),
    pub delta_sn: Option<u64>,
    pub delta_an: Option<u64>,
    pub kappa: u32,
}

pub fn bound_report(n: usize, q: u64, group_order: &BigUint, center_order: u64) -> Result<BoundReport> {
    let pair = |b: LogBound| (b.value(), b.floor());
    let p = smallest_prime_factor(q) as u32;
    let eq2 = eq2_terms(q, n, center_order).ok().map(|[a, b]| (a.value().max(b.value()), a.floor().max(b.floor())));
    let eq2_q = eq2_terms(q, n, q - 1).ok().map(|[a, b]| (a.value().max(b.value()), a.floor().max(b.floor())));
    let eq2_best = match (eq2, eq2_q) {
        (Some(a), Some(b)) => Some(a.1.min(b.1)),
        _ => None,
    };
    Ok(BoundReport {
        n,
        q,
        group_order: group_order.clone(),
        center_order,
        eq1: pair(eq1(q, n, group_order)?),
        eq2,
        eq2_q,
        eq3: eq3(q, n, center_order).ok().map(pair),
        eq2_best,
        f: (n >= 1).then(|| f(n)),
        f_p: f_p(n, p).ok(),
        h_assoc: pair(h_assoc(p, n)),
        h_spin: pair(h_spin(p, n)),
        delta_sn: delta(Cover::DoubleSn, n, p).ok(),
        delta_an: delta(Cover::DoubleAn, n, p).ok(),
        kappa: kappa(p, n),
    })
}

fn smallest_prime_factor(q: u64) -> u64 {
    (2..).find(|d| q.is_multiple_of(*d) || d * d > q).map(|d| if q.is_multiple_of(d) { d } else { q }).unwrap_or(q)
}

/// Whether `x` is a nonnegative integer value.
pub fn is_integral(x: &BigRational) -> bool {
    x.denom().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(x: &BigRational) -> i64 {
        x.to_integer().try_into().unwrap()
    }

    #[test]
    fn thresholds() {
        assert_eq!(int(&f(11)), 65);
        assert_eq!(f(23), BigRational::new(((12167 - 4761 + 322 - 6) as i64).into(), 6.into()));
        assert_eq!(f_p(23, 2).unwrap(), f(23));
        assert_eq!(int(&f_p(15, 2).unwrap()), 127);
        assert_eq!(int(&f_p(11, 3).unwrap()), 54);
        assert_eq!(int(&f_p(15, 3).unwrap()), 213);
        assert!(f_p(14, 2).is_err());
        assert!(f_p(10, 5).is_err());
    }

    #[test]
    fn anchors() {
        assert_eq!(g_floor(2, 20).unwrap(), 620);
        assert_eq!(g_floor(2, 21).unwrap(), 697);
        assert_eq!(g_floor(3, 19).unwrap(), 352);
        assert_eq!(h_spin(3, 8).floor(), 38);
        assert_eq!(h_spin(11, 17).floor(), 124);
        let a = h_assoc(5, 9).value();
        assert!((a - 2.0 * h_spin(5, 9).value()).abs() < 1e-9);
    }

    #[test]
    fn general_and_r() {
        let b = general_bound(3, &BigUint::from(120u32), 4).unwrap();
        assert!((b.value() - 17.43).abs() < 0.01);
        assert_eq!(general_bound(7, &BigUint::from(7u32), 3).unwrap().value(), 3.0);
        assert_eq!(r_upper(true, 10).unwrap(), 9);
        assert_eq!(r_upper(false, 10).unwrap(), 5);
        assert_eq!(r_upper(false, 5).unwrap(), 4);
    }

    #[test]
    fn spin_dimensions() {
        assert_eq!(delta(Cover::DoubleSn, 8, 5).unwrap(), 8);
        assert_eq!(delta(Cover::DoubleAn, 12, 3).unwrap(), 16);
        assert_eq!(delta(Cover::DoubleAn, 8, 3).unwrap(), 8);
        assert_eq!(kappa(3, 12), 1);
        assert_eq!(kappa(5, 8), 0);
    }

    #[test]
    fn report_prefers_smaller_eq2() {
        let r = bound_report(20, 2, &factorial(20), 1).unwrap();
        assert_eq!(r.eq2_q.unwrap().1, 620);
        assert_eq!(r.eq2_best, Some(620));
        let r = bound_report(8, 3, &(factorial(8) * 2u32), 2).unwrap();
        assert_eq!(r.delta_sn, Some(8));
    }
}
