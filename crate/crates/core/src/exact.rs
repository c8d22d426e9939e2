//! Exact rational arithmetic and the combinatorial numbers used by the
//! dimension formulas.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Arbitrary precision rational, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Text form `p/q` (or `p` when `q = 1`), with an optional leading sign.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let t = t.strip_prefix('+').unwrap_or(t);
    if t.is_empty() {
        return Err(Error::Parse("empty rational literal".into()));
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let n = BigInt::from_str(num).map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    let d = BigInt::from_str(den).map_err(|_| Error::Parse(format!("bad rational `{s}`")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(n, d))
}

pub(crate) fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub(crate) fn double_factorial(n: i64) -> BigInt {
    let mut acc = BigInt::one();
    let mut k = n;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

pub(crate) fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Bernoulli numbers B_0..B_max, computed once from
/// `sum_{k=0}^{n} C(n+1,k) B_k = 0` and then shared read-only.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn new(max: usize) -> Self {
        let mut values: Vec<Rational> = Vec::with_capacity(max + 1);
        values.push(Rational::one());
        for n in 1..=max {
            let mut s = Rational::zero();
            for (k, b) in values.iter().enumerate() {
                if !b.is_zero() {
                    s += Rational::from_integer(binomial(n as u64 + 1, k as u64)) * b;
                }
            }
            values.push(-s / Rational::from_integer(BigInt::from(n + 1)));
        }
        BernoulliTable { values }
    }

    pub fn max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, n: usize) -> Option<&Rational> {
        self.values.get(n)
    }
}

/// B_n with B_1 = -1/2.
pub fn bernoulli(n: usize) -> Rational {
    BernoulliTable::new(n).values[n].clone()
}

pub(crate) fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub(crate) fn abs(q: &Rational) -> Rational {
    q.abs()
}

pub(crate) fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => {
            // scale both sides down to a common magnitude first
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(900);
            let a = (q.numer() >> shift).to_f64().unwrap_or(0.0);
            let b = (q.denom() >> shift).to_f64().unwrap_or(1.0);
            a / b
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_small_values() {
        assert_eq!(bernoulli(0), rat(1));
        assert_eq!(bernoulli(1), ratio(-1, 2));
        assert_eq!(bernoulli(2), ratio(1, 6));
        assert_eq!(bernoulli(4), ratio(-1, 30));
        assert_eq!(bernoulli(12), ratio(-691, 2730));
    }

    #[test]
    fn odd_bernoulli_vanish() {
        let t = BernoulliTable::new(40);
        for n in (3..=40).step_by(2) {
            assert!(t.get(n).unwrap().is_zero(), "B_{n}");
        }
    }

    #[test]
    fn recurrence_holds() {
        let t = BernoulliTable::new(30);
        for n in 1..30usize {
            let mut s = Rational::zero();
            for k in 0..=n {
                s += Rational::from_integer(binomial(n as u64 + 1, k as u64)) * t.get(k).unwrap();
            }
            assert!(s.is_zero());
        }
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "-3", "7/4", "-12/5"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("+6/4").unwrap(), ratio(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn big_factorials() {
        assert_eq!(factorial(14).to_string(), "87178291200");
        assert_eq!(double_factorial(7), BigInt::from(105));
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::zero());
    }

    #[test]
    fn huge_ratio_to_float() {
        let a = Rational::new(factorial(400) * 3, factorial(400) * 4);
        assert!((to_f64(&a) - 0.75).abs() < 1e-12);
        let b = Rational::new(factorial(300) + 1u32, factorial(300));
        assert!((to_f64(&b) - 1.0).abs() < 1e-12);
    }

    proptest::proptest! {
        #[test]
        fn field_round_trips(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = ratio(a, b);
            let y = ratio(c, d);
            proptest::prop_assert_eq!(&(&x + &y) - &y, x.clone());
            if !y.is_zero() {
                proptest::prop_assert_eq!(&(&x * &y) / &y, x.clone());
            }
        }
    }
}
