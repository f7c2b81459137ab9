//! Arbitrary-precision rationals and small helpers used across the crate.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rat {
    assert!(q != 0, "zero denominator");
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses "p/q", "p", or "-p/q". Whitespace around tokens is rejected.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("invalid rational literal {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.parse().map_err(|_| bad())?;
            let q: BigInt = q.parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(p))
        }
    }
}

/// Renders a rational as "p/q", or "p" when the denominator is 1.
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        let n = r.numer().to_f64().unwrap_or(f64::MAX);
        let d = r.denom().to_f64().unwrap_or(f64::MAX);
        n / d
    })
}

/// Nearest rational with denominator at most `max_den`, by continued
/// fractions. Returns None for non-finite input.
pub fn snap_to_rational(x: f64, max_den: u64) -> Option<Rat> {
    if !x.is_finite() {
        return None;
    }
    // Continued-fraction convergents p/q of |x| until the denominator cap.
    let neg = x < 0.0;
    let mut x = x.abs();
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    for _ in 0..64 {
        let a = x.floor();
        if a > i64::MAX as f64 {
            return None;
        }
        let a = a as i128;
        let p2 = a * p1 + p0;
        let q2 = a * q1 + q0;
        if q2 > max_den as i128 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        let frac = x - x.floor();
        if frac < 1e-15 {
            break;
        }
        x = 1.0 / frac;
    }
    if q1 == 0 {
        return None;
    }
    let mut r = Rat::new(BigInt::from(p1), BigInt::from(q1));
    if neg {
        r = -r;
    }
    Some(r)
}

pub type RVec = Vec<Rat>;

pub fn zeros(n: usize) -> RVec {
    vec![Rat::zero(); n]
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "dot of unequal lengths");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[Rat], b: &[Rat]) -> RVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rat], b: &[Rat]) -> RVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(a: &[Rat], c: &Rat) -> RVec {
    a.iter().map(|x| x * c).collect()
}

pub fn neg(a: &[Rat]) -> RVec {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Rat]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Scales a nonzero rational vector by a positive factor to coprime integers.
/// Preserves orientation; the result is the canonical representative of the
/// open ray through `a`.
pub fn primitive(a: &[Rat]) -> RVec {
    assert!(!is_zero_vec(a), "primitive of zero vector");
    let mut l = BigInt::one();
    for x in a {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = a.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let mut g = BigInt::zero();
    for v in &ints {
        g = g.gcd(v);
    }
    ints.into_iter().map(|v| Rat::from_integer(v / &g)).collect()
}

/// True when b = c·a for some c > 0.
pub fn is_positive_multiple(a: &[Rat], b: &[Rat]) -> bool {
    if a.len() != b.len() || is_zero_vec(a) || is_zero_vec(b) {
        return false;
    }
    primitive(a) == primitive(b)
}

/// True when b = c·a for some c ≠ 0.
pub fn is_parallel(a: &[Rat], b: &[Rat]) -> bool {
    is_positive_multiple(a, b) || is_positive_multiple(a, &neg(b))
}

pub fn fmt_rvec(a: &[Rat]) -> String {
    let inner: Vec<String> = a.iter().map(fmt_rat).collect();
    format!("({})", inner.join(", "))
}
