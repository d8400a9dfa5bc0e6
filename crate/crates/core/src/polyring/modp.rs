//! Polynomials over a small prime field F_p, used for the modular step of
//! factorization. Coefficients are `u64` with `p < 2^31`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::IntPoly;
use crate::arith::BigInt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(super) struct FpPoly {
    pub c: Vec<u64>,
}

#[derive(Clone, Copy, Debug)]
pub(super) struct Fp {
    pub p: u64,
}

impl FpPoly {
    fn trim(mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn deg(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    fn is_one(&self) -> bool {
        self.c == [1]
    }
}

impl Fp {
    pub fn reduce_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    pub fn from_poly(&self, f: &IntPoly) -> FpPoly {
        FpPoly::trim(f.coeffs().iter().map(|c| self.reduce_int(c)).collect())
    }

    pub fn to_poly(&self, f: &FpPoly) -> IntPoly {
        IntPoly::new(f.c.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mulm(acc, a);
            }
            a = self.mulm(a, a);
            e >>= 1;
        }
        acc
    }

    #[cfg(test)]
    pub fn add(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let n = a.c.len().max(b.c.len());
        FpPoly::trim(
            (0..n)
                .map(|k| {
                    (a.c.get(k).copied().unwrap_or(0) + b.c.get(k).copied().unwrap_or(0)) % self.p
                })
                .collect(),
        )
    }

    pub fn sub(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let n = a.c.len().max(b.c.len());
        FpPoly::trim(
            (0..n)
                .map(|k| {
                    (a.c.get(k).copied().unwrap_or(0) + self.p - b.c.get(k).copied().unwrap_or(0))
                        % self.p
                })
                .collect(),
        )
    }

    pub fn mul(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        if a.is_zero() || b.is_zero() {
            return FpPoly { c: Vec::new() };
        }
        let mut out = vec![0u64; a.c.len() + b.c.len() - 1];
        for (i, &x) in a.c.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.c.iter().enumerate() {
                out[i + j] = (out[i + j] + self.mulm(x, y)) % self.p;
            }
        }
        FpPoly::trim(out)
    }

    pub fn scale(&self, a: &FpPoly, s: u64) -> FpPoly {
        FpPoly::trim(a.c.iter().map(|&x| self.mulm(x, s)).collect())
    }

    pub fn monic(&self, a: &FpPoly) -> FpPoly {
        if a.is_zero() {
            return a.clone();
        }
        self.scale(a, self.inv(a.lc()))
    }

    pub fn div_rem(&self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!b.is_zero(), "division by zero polynomial mod p");
        if a.c.len() < b.c.len() {
            return (FpPoly { c: Vec::new() }, a.clone());
        }
        let inv_lc = self.inv(b.lc());
        let mut rem = a.c.clone();
        let m = b.deg();
        let mut quot = vec![0u64; a.c.len() - m];
        for k in (0..quot.len()).rev() {
            let top = rem[k + m];
            if top == 0 {
                continue;
            }
            let q = self.mulm(top, inv_lc);
            quot[k] = q;
            for (j, &bc) in b.c.iter().enumerate() {
                rem[k + j] = (rem[k + j] + self.p - self.mulm(q, bc)) % self.p;
            }
        }
        (FpPoly::trim(quot), FpPoly::trim(rem))
    }

    pub fn rem(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        self.div_rem(a, b).1
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &FpPoly, b: &FpPoly) -> FpPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(&self, a: &FpPoly, b: &FpPoly) -> (FpPoly, FpPoly, FpPoly) {
        let zero = FpPoly { c: Vec::new() };
        let one = FpPoly { c: vec![1] };
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (one.clone(), zero.clone());
        let (mut t0, mut t1) = (zero, one);
        while !r1.is_zero() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let k = self.inv(r0.lc());
        (self.scale(&r0, k), self.scale(&s0, k), self.scale(&t0, k))
    }

    pub fn derivative(&self, a: &FpPoly) -> FpPoly {
        FpPoly::trim(
            a.c.iter()
                .enumerate()
                .skip(1)
                .map(|(k, &x)| self.mulm(x, k as u64 % self.p))
                .collect(),
        )
    }

    fn powmod(&self, base: &FpPoly, e: &BigUint, modulus: &FpPoly) -> FpPoly {
        let mut acc = FpPoly { c: vec![1] };
        let b = self.rem(base, modulus);
        for i in (0..e.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), modulus);
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &b), modulus);
            }
        }
        acc
    }

    /// True when `f` keeps its degree mod p and stays square-free.
    pub fn is_good_reduction(&self, f: &IntPoly) -> bool {
        let fp = self.from_poly(f);
        if fp.deg() != f.deg() || fp.is_zero() {
            return false;
        }
        self.gcd(&fp, &self.derivative(&fp)).is_one()
    }

    /// Distinct-degree factorization of a monic square-free polynomial.
    fn distinct_degree(&self, f: &FpPoly) -> Vec<(FpPoly, usize)> {
        let x = FpPoly { c: vec![0, 1] };
        let pb = BigUint::from(self.p);
        let mut out = Vec::new();
        let mut rest = f.clone();
        let mut h = x.clone();
        let mut i = 1;
        while rest.deg() >= 2 * i {
            h = self.powmod(&h, &pb, &rest);
            let g = self.gcd(&self.sub(&h, &x), &rest);
            if !g.is_one() {
                rest = self.div_rem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, i));
            }
            i += 1;
        }
        if rest.deg() > 0 {
            let d = rest.deg();
            out.push((rest, d));
        }
        out
    }

    /// Cantor-Zassenhaus split of a product of degree-`d` irreducibles (odd p).
    fn equal_degree(&self, f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
        if f.deg() == d {
            return vec![f.clone()];
        }
        let e: BigUint = (BigUint::from(self.p).pow(d as u32) - 1u32) >> 1;
        loop {
            let a = FpPoly::trim((0..f.deg()).map(|_| rng.gen_range(0..self.p)).collect());
            if a.deg() == 0 {
                continue;
            }
            let b = self.sub(&self.powmod(&a, &e, f), &FpPoly { c: vec![1] });
            let g = self.gcd(&b, f);
            if g.deg() > 0 && g.deg() < f.deg() {
                let other = self.div_rem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&self.monic(&other), d, rng));
                return out;
            }
        }
    }

    /// Monic irreducible factors of a square-free polynomial over F_p.
    pub fn factor_squarefree(&self, f: &FpPoly) -> Vec<FpPoly> {
        let f = self.monic(f);
        let mut rng = ChaCha8Rng::seed_from_u64(self.p ^ ((f.deg() as u64) << 32));
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(&f) {
            out.extend(self.equal_degree(&g, d, &mut rng));
        }
        out.sort_by(|a, b| a.c.len().cmp(&b.c.len()).then_with(|| a.c.cmp(&b.c)));
        out
    }
}

/// Odd primes in increasing order, for choosing the modulus.
pub(super) fn odd_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| {
        let mut d = 3;
        while d * d <= n {
            if n % d == 0 {
                return false;
            }
            d += 2;
        }
        true
    })
}

pub(super) fn one_poly() -> FpPoly {
    FpPoly { c: vec![1] }
}
