//! Exact integers and rationals.
//!
//! `BigInt` and `BigRat` are the `num` types; this module adds integer
//! factorization and exact square testing on top of them.

use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use num_bigint::BigInt;

/// Reduced fraction with positive denominator.
pub type BigRat = num_rational::BigRational;

const TRIAL_LIMIT: u32 = 1_000_000;

/// Bases that make Miller-Rabin deterministic below 3.3 * 10^24.
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = TRIAL_LIMIT as usize;
        let mut sieve = vec![true; n + 1];
        sieve[0] = false;
        sieve[1] = false;
        let mut i = 2;
        while i * i <= n {
            if sieve[i] {
                let mut j = i * i;
                while j <= n {
                    sieve[j] = false;
                    j += i;
                }
            }
            i += 1;
        }
        sieve
            .iter()
            .enumerate()
            .filter_map(|(k, &p)| p.then_some(k as u32))
            .collect()
    })
}

/// Prime factorization of a nonzero integer: `sign * prod(p^e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFactorization {
    pub sign: i8,
    /// Primes in increasing order with positive exponents.
    pub factors: Vec<(BigInt, u32)>,
}

impl IntFactorization {
    pub fn recompose(&self) -> BigInt {
        let mut acc = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        acc
    }

    /// Distinct primes dividing the integer.
    pub fn primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors.iter().map(|(p, _)| p)
    }
}

/// Factor a nonzero integer into primes.
pub fn factor_int(n: &BigInt) -> Result<IntFactorization> {
    if n.is_zero() {
        return Err(Error::ZeroInput("factor_int"));
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut found: Vec<BigInt> = Vec::new();

    for &p in small_primes() {
        let pb = BigInt::from(p);
        if &pb * &pb > m {
            break;
        }
        while (&m % &pb).is_zero() {
            m /= &pb;
            found.push(pb.clone());
        }
    }
    if !m.is_one() {
        split_large(m, &mut found);
    }
    found.sort();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    for p in found {
        match factors.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => factors.push((p, 1)),
        }
    }
    Ok(IntFactorization { sign, factors })
}

fn split_large(m: BigInt, out: &mut Vec<BigInt>) {
    if m.is_one() {
        return;
    }
    if is_probable_prime(&m) {
        out.push(m);
        return;
    }
    if let Some(r) = perfect_square_root(&m) {
        split_large(r.clone(), out);
        split_large(r, out);
        return;
    }
    let d = pollard_brent(&m);
    let other = &m / &d;
    split_large(d, out);
    split_large(other, out);
}

fn perfect_square_root(m: &BigInt) -> Option<BigInt> {
    let r = m.sqrt();
    (&r * &r == *m).then_some(r)
}

/// Miller-Rabin; deterministic below 3.3e24, a strong probable-prime test above.
pub fn is_probable_prime(n: &BigInt) -> bool {
    let two = BigInt::from(2);
    if *n < two {
        return false;
    }
    for &p in &MR_BASES {
        let pb = BigInt::from(p);
        if *n == pb {
            return true;
        }
        if (n % &pb).is_zero() {
            return false;
        }
    }
    let n_minus_1 = n - 1u32;
    let mut d = n_minus_1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &MR_BASES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho. `n` must be odd, composite, and not a
/// perfect square of a prime handled elsewhere.
fn pollard_brent(n: &BigInt) -> BigInt {
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut y = BigInt::from(2);
        let mut r: u64 = 1;
        let mut q = BigInt::one();
        let mut g = BigInt::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let m: u64 = 128;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    q = (q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                g = (&x - &ys).abs().gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
        c += 1;
    }
}

/// Nonnegative integer square root when `n` is a perfect square.
pub fn is_square_int(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    perfect_square_root(n)
}

/// The nonnegative square root of `q` when `q` is a square in Q.
pub fn is_square_rat(q: &BigRat) -> Option<BigRat> {
    // Ratio keeps num/den reduced with den > 0, so both must be squares.
    let n = is_square_int(q.numer())?;
    let d = is_square_int(q.denom())?;
    Some(BigRat::new(n, d))
}

/// Parse `"a"` or `"a/b"` into a reduced rational.
pub fn parse_rat(text: &str) -> Result<BigRat> {
    let s = text.trim();
    let bad = |msg: &str| Error::Parse {
        offset: 0,
        message: format!("{msg}: {s:?}"),
    };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad("bad numerator"))?;
    let d: BigInt = d.parse().map_err(|_| bad("bad denominator"))?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(BigRat::new(n, d))
}

/// `"a"` for integers, `"a/b"` otherwise.
pub fn format_rat(q: &BigRat) -> String {
    q.to_string()
}

/// Rationals of height `max(|num|, den) == h` with `den >= 2`, in increasing
/// absolute value with each positive value followed by its negative.
pub fn rationals_of_height(h: u64) -> Vec<BigRat> {
    let mut out = Vec::new();
    if h < 2 {
        return out;
    }
    let mut pos: Vec<(u64, u64)> = Vec::new();
    for d in 2..=h {
        for n in 1..=h {
            if n.max(d) == h && n.gcd(&d) == 1 {
                pos.push((n, d));
            }
        }
    }
    // n1/d1 < n2/d2  <=>  n1*d2 < n2*d1
    pos.sort_by(|a, b| (a.0 as u128 * b.1 as u128).cmp(&(b.0 as u128 * a.1 as u128)));
    for (n, d) in pos {
        let q = BigRat::new(BigInt::from(n), BigInt::from(d));
        out.push(q.clone());
        out.push(-q);
    }
    out
}

/// Convert a small rational to `f64` for display purposes only.
pub fn approx(q: &BigRat) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRat {
        BigRat::new(n.into(), d.into())
    }

    fn trial_division(mut n: u64) -> Vec<(u64, u32)> {
        let mut out = Vec::new();
        let mut p = 2;
        while p * p <= n {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            if e > 0 {
                out.push((p, e));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    #[test]
    fn factor_small_cases() {
        let one = factor_int(&BigInt::from(1)).unwrap();
        assert_eq!(one.sign, 1);
        assert!(one.factors.is_empty());

        let m12 = factor_int(&BigInt::from(-12)).unwrap();
        assert_eq!(m12.sign, -1);
        assert_eq!(m12.factors, vec![(2.into(), 2), (3.into(), 1)]);

        assert_eq!(factor_int(&BigInt::zero()), Err(Error::ZeroInput("factor_int")));
    }

    #[test]
    fn factor_matches_trial_division() {
        let f = factor_int(&BigInt::from(64219)).unwrap();
        let oracle: Vec<(BigInt, u32)> = trial_division(64219)
            .into_iter()
            .map(|(p, e)| (BigInt::from(p), e))
            .collect();
        assert_eq!(f.factors, oracle);
        assert_eq!(f.recompose(), BigInt::from(64219));
    }

    #[test]
    fn factor_beyond_trial_limit() {
        // product of two primes above 10^6 forces the rho path
        let p = BigInt::from(1_000_003u64);
        let q = BigInt::from(1_000_033u64);
        let n = &p * &q * &q;
        let f = factor_int(&n).unwrap();
        assert_eq!(f.factors, vec![(p, 1), (q, 2)]);
        let big = BigInt::from(2u64).pow(61) - 1u32;
        assert_eq!(factor_int(&big).unwrap().factors, vec![(big.clone(), 1)]);
    }

    #[test]
    fn square_rat_examples() {
        assert_eq!(is_square_rat(&r(4, 9)), Some(r(2, 3)));
        let t0 = r(1, 21);
        let v = &t0 * (r(6, 1) * &t0 + r(1, 1)) * (r(7, 1) * &t0 + r(1, 1));
        assert_eq!(v, r(4, 49));
        assert_eq!(is_square_rat(&v), Some(r(2, 7)));
        assert_eq!(is_square_rat(&r(2, 1)), None);
        assert_eq!(is_square_rat(&r(-4, 49)), None);
        assert_eq!(is_square_rat(&r(0, 1)), Some(r(0, 1)));
    }

    #[test]
    fn rational_parse_and_print() {
        assert_eq!(parse_rat("1/21").unwrap(), r(1, 21));
        assert_eq!(parse_rat(" -10/4 ").unwrap(), r(-5, 2));
        assert_eq!(parse_rat("7").unwrap(), r(7, 1));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert_eq!(format_rat(&r(5, 2)), "5/2");
        assert_eq!(format_rat(&r(-3, 1)), "-3");
    }

    #[test]
    fn height_enumeration_order() {
        let h3: Vec<String> = rationals_of_height(3).iter().map(format_rat).collect();
        assert_eq!(h3, ["1/3", "-1/3", "2/3", "-2/3", "3/2", "-3/2"]);
        assert_eq!(rationals_of_height(2).len(), 2);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn square_roots_recovered(n in -10_000_000_000i64..10_000_000_000, d in 1i64..10_000_000_000) {
                let q = r(n, d);
                let sq = &q * &q;
                prop_assert_eq!(is_square_rat(&sq), Some(q.abs()));
            }

            #[test]
            fn factor_round_trip(n in 1i64..1_000_000_000_000, neg in any::<bool>()) {
                let n = if neg { -n } else { n };
                let f = factor_int(&BigInt::from(n)).unwrap();
                prop_assert_eq!(f.recompose(), BigInt::from(n));
                for (p, _) in &f.factors {
                    prop_assert!(is_probable_prime(p));
                }
            }
        }
    }
}
