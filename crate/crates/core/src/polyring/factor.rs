//! Square-free decomposition and Zassenhaus factorization over Z[t].
//!
//! The pipeline for a nonzero `f`:
//! 1. split off sign and content, factor the content as an integer;
//! 2. Yun's algorithm on the primitive part;
//! 3. each square-free part is factored modulo a good prime `p`
//!    (distinct-degree + Cantor-Zassenhaus), the modular factors are Hensel
//!    lifted to `p^k` past a Mignotte bound, and true factors are recovered
//!    by trying subsets of increasing size.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modp::{odd_primes, Fp, FpPoly};
use super::IntPoly;
use crate::arith::{factor_int, BigInt};
use crate::error::{Error, Result};

/// How many good primes to try before picking the one with fewest factors.
const PRIME_CANDIDATES: usize = 5;

/// `f = unit * content * prod(d_i^m_i)` with `d_i` primitive, square-free,
/// pairwise coprime, positive leading coefficient, multiplicities increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFreeDecomposition {
    pub unit: i8,
    pub content: BigInt,
    pub factors: Vec<(IntPoly, u32)>,
}

impl SquareFreeDecomposition {
    pub fn recompose(&self) -> IntPoly {
        let mut acc = IntPoly::constant(&self.content * BigInt::from(self.unit));
        for (d, m) in &self.factors {
            acc = &acc * &d.pow(*m);
        }
        acc
    }
}

/// Canonical factorization: `unit * prod(p^e) * prod(f_i^m_i)`, primes
/// increasing, polynomial factors primitive irreducible with positive leading
/// coefficient, sorted by degree then coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: i8,
    pub content_primes: Vec<(BigInt, u32)>,
    pub poly_factors: Vec<(IntPoly, u32)>,
}

impl Factorization {
    pub fn recompose(&self) -> IntPoly {
        let mut c = BigInt::from(self.unit);
        for (p, e) in &self.content_primes {
            c *= num_traits::pow(p.clone(), *e as usize);
        }
        let mut acc = IntPoly::constant(c);
        for (f, m) in &self.poly_factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }

    pub fn radical(&self) -> IntPoly {
        let c: BigInt = self.content_primes.iter().map(|(p, _)| p.clone()).product();
        self.poly_factors
            .iter()
            .fold(IntPoly::constant(c), |acc, (f, _)| &acc * f)
    }

    pub fn squarefree_kernel(&self) -> IntPoly {
        let c: BigInt = self
            .content_primes
            .iter()
            .filter(|(_, e)| e % 2 == 1)
            .map(|(p, _)| p.clone())
            .product();
        self.poly_factors
            .iter()
            .filter(|(_, m)| m % 2 == 1)
            .fold(IntPoly::constant(c * BigInt::from(self.unit)), |acc, (f, _)| &acc * f)
    }

    /// Distinct content primes.
    pub fn primes(&self) -> Vec<BigInt> {
        self.content_primes.iter().map(|(p, _)| p.clone()).collect()
    }

    /// Distinct irreducible polynomial factors.
    pub fn irreducibles(&self) -> Vec<IntPoly> {
        self.poly_factors.iter().map(|(f, _)| f.clone()).collect()
    }
}

fn split_unit_content(f: &IntPoly) -> Result<(i8, BigInt, IntPoly)> {
    if f.is_zero() {
        return Err(Error::ZeroInput("polynomial"));
    }
    let unit = if f.lc().is_negative() { -1 } else { 1 };
    let content = f.content_unchecked();
    let prim = f.div_scalar(&(&content * BigInt::from(unit))).unwrap();
    Ok((unit, content, prim))
}

pub(super) fn squarefree_decompose(f: &IntPoly) -> Result<SquareFreeDecomposition> {
    let (unit, content, prim) = split_unit_content(f)?;
    let mut factors = Vec::new();
    if prim.deg() > 0 {
        // Yun. All divisions are by primitive polynomials that divide over Q,
        // hence over Z by Gauss's lemma.
        let d0 = prim.derivative();
        let a0 = prim.gcd(&d0).normalized_primitive();
        let mut b = prim.exact_div(&a0).expect("gcd divides f");
        let c = d0.exact_div(&a0).expect("gcd divides f'");
        let mut d = &c - &b.derivative();
        let mut i = 1u32;
        while b.deg() > 0 {
            let a = b.gcd(&d).normalized_primitive();
            if a.deg() > 0 {
                factors.push((a.clone(), i));
            }
            b = b.exact_div(&a).expect("yun: a | b");
            let c = d.exact_div(&a).expect("yun: a | d");
            d = &c - &b.derivative();
            i += 1;
        }
    }
    let out = SquareFreeDecomposition {
        unit,
        content,
        factors,
    };
    debug_assert_eq!(out.recompose(), *f);
    Ok(out)
}

pub(super) fn factor(f: &IntPoly) -> Result<Factorization> {
    let sqf = squarefree_decompose(f)?;
    let content_primes = if sqf.content.is_one() {
        Vec::new()
    } else {
        factor_int(&sqf.content)?.factors
    };
    let mut poly_factors = Vec::new();
    for (d, m) in &sqf.factors {
        for g in factor_squarefree_primitive(d) {
            poly_factors.push((g, *m));
        }
    }
    poly_factors.sort();
    let out = Factorization {
        unit: sqf.unit,
        content_primes,
        poly_factors,
    };
    debug_assert_eq!(out.recompose(), *f);
    Ok(out)
}

/// Irreducible factors of a primitive, square-free, positive-leading polynomial.
pub(crate) fn factor_squarefree_primitive(f: &IntPoly) -> Vec<IntPoly> {
    let n = f.deg();
    if n <= 1 {
        return vec![f.clone()];
    }
    // Factor out t when f(0) = 0 so the modular images stay informative.
    if f.coeff(0).is_zero() {
        let rest = f.exact_div(&IntPoly::t()).unwrap();
        let mut out = vec![IntPoly::t()];
        out.extend(factor_squarefree_primitive(&rest));
        out.sort();
        return out;
    }

    let lc = f.lc();
    let mut best: Option<(Fp, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for p in odd_primes() {
        let fp = Fp { p };
        if (&lc % BigInt::from(p)).is_zero() || !fp.is_good_reduction(f) {
            continue;
        }
        let parts = fp.factor_squarefree(&fp.from_poly(f));
        if best.as_ref().is_none_or(|(_, b)| parts.len() < b.len()) {
            best = Some((fp, parts));
        }
        tried += 1;
        if tried >= PRIME_CANDIDATES || best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (fp, modular) = best.expect("a good prime always exists for square-free f");
    if modular.len() == 1 {
        return vec![f.clone()];
    }

    // Any factor g of f, scaled by lc(f)/lc(g), has coefficients below
    // |lc(f)| * 2^n * sqrt(n+1) * max|f_i|.
    let sqrt_bound = BigInt::from(((n + 1) as f64).sqrt().ceil() as u64);
    let bound: BigInt = (BigInt::one() << n) * sqrt_bound * f.max_norm() * lc.abs();
    let p_big = BigInt::from(fp.p);
    let mut k = 1u32;
    let mut modulus = p_big.clone();
    while modulus <= &bound * 2u32 {
        modulus *= &p_big;
        k += 1;
    }

    let lifted = hensel_lift_all(f, &modular, fp, k, &modulus);
    let mut out = recombine(f.clone(), lifted, &modulus);
    out.sort();
    out
}

fn symmetric_mod(p: &IntPoly, m: &BigInt) -> IntPoly {
    let half = m >> 1;
    IntPoly::new(
        p.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn mod_poly(p: &IntPoly, m: &BigInt) -> IntPoly {
    IntPoly::new(p.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "leading coefficient not invertible modulo p^k");
    e.x.mod_floor(m)
}

/// Lift `f = g0 * h0 (mod p)` with `g0` monic and `lc(h0) = lc(f) mod p`
/// to `f = G * H (mod p^k)`, `G` monic, `lc(H) = lc(f) mod p^k`.
fn hensel_lift_pair(
    f: &IntPoly,
    g0: &FpPoly,
    h0: &FpPoly,
    fp: Fp,
    k: u32,
    modulus: &BigInt,
) -> (IntPoly, IntPoly) {
    let (_, _, t) = fp.ext_gcd(g0, h0);
    let mut g = fp.to_poly(g0);
    let mut h = fp.to_poly(h0);
    // pin lc(h) to lc(f) so f - g*h loses its top term at every step
    let mut hc = h.coeffs().to_vec();
    let top = hc.len() - 1;
    hc[top] = f.lc().mod_floor(modulus);
    h = IntPoly::new(hc);

    let p = BigInt::from(fp.p);
    let mut pj = p.clone();
    for _ in 1..k {
        let r = mod_poly(&(f - &(&g * &h)), modulus);
        let e = r.div_scalar(&pj).expect("residual divisible by p^j");
        let e = fp.from_poly(&e);
        let tau = fp.rem(&fp.mul(&t, &e), g0);
        let sigma = fp.div_rem(&fp.sub(&e, &fp.mul(&tau, h0)), g0).0;
        g = &g + &fp.to_poly(&tau).scale(&pj);
        h = &h + &fp.to_poly(&sigma).scale(&pj);
        pj *= &p;
    }
    (mod_poly(&g, modulus), mod_poly(&h, modulus))
}

/// Monic lifts of every modular factor of `f` to `p^k`.
fn hensel_lift_all(f: &IntPoly, factors: &[FpPoly], fp: Fp, k: u32, modulus: &BigInt) -> Vec<IntPoly> {
    if factors.len() == 1 {
        let inv = mod_inverse(&f.lc(), modulus);
        return vec![mod_poly(&f.scale(&inv), modulus)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let g0 = left.iter().fold(super::modp::one_poly(), |acc, x| fp.mul(&acc, x));
    let h0 = right.iter().fold(super::modp::one_poly(), |acc, x| fp.mul(&acc, x));
    let h0 = fp.scale(&h0, fp.reduce_int(&f.lc()));
    let (g, h) = hensel_lift_pair(f, &g0, &h0, fp, k, modulus);
    let mut out = hensel_lift_all(&g, left, fp, k, modulus);
    out.extend(hensel_lift_all(&h, right, fp, k, modulus));
    out
}

/// Zassenhaus subset recombination by trial division.
fn recombine(mut f: IntPoly, mut lifted: Vec<IntPoly>, modulus: &BigInt) -> Vec<IntPoly> {
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in Subsets::new(lifted.len(), size) {
            let lc = f.lc();
            let prod = subset
                .iter()
                .fold(IntPoly::constant(lc.clone()), |acc, &i| mod_poly(&(&acc * &lifted[i]), modulus));
            let cand = symmetric_mod(&prod, modulus).normalized_primitive();
            if let Some(q) = f.exact_div(&cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                f = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if f.deg() > 0 {
        found.push(f.normalized_primitive());
    }
    found
}

/// k-subsets of 0..n in lexicographic order.
struct Subsets {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
