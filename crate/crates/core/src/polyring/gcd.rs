//! Gcd in Z[t]: heuristic gcd (evaluation at a large integer and
//! reconstruction), falling back to the primitive remainder sequence.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntPoly;
use crate::arith::BigInt;

const HEURISTIC_ATTEMPTS: usize = 6;

pub(super) fn gcd(a: &IntPoly, b: &IntPoly) -> IntPoly {
    if a.is_zero() {
        return positive(b.clone());
    }
    if b.is_zero() {
        return positive(a.clone());
    }
    let ca = a.content_unchecked();
    let cb = b.content_unchecked();
    let c = ca.gcd(&cb);
    let pa = a.div_scalar(&ca).unwrap();
    let pb = b.div_scalar(&cb).unwrap();
    let g = if pa.is_constant() || pb.is_constant() {
        IntPoly::one()
    } else {
        heuristic_gcd(&pa, &pb).unwrap_or_else(|| primitive_prs(&pa, &pb))
    };
    positive(g.scale(&c))
}

fn positive(p: IntPoly) -> IntPoly {
    if p.lc().is_negative() {
        -p
    } else {
        p
    }
}

/// Recover a polynomial from its value at `xi` using balanced base-`xi` digits.
fn reconstruct(mut v: BigInt, xi: &BigInt) -> IntPoly {
    let half = xi >> 1;
    let mut coeffs = Vec::new();
    while !v.is_zero() {
        let mut r = v.mod_floor(xi);
        if r > half {
            r -= xi;
        }
        v = (v - &r) / xi;
        coeffs.push(r);
    }
    IntPoly::new(coeffs)
}

/// Both inputs primitive and nonconstant.
fn heuristic_gcd(a: &IntPoly, b: &IntPoly) -> Option<IntPoly> {
    let bound = a.max_norm().min(b.max_norm());
    let mut xi: BigInt = bound * 2u32 + 29u32;
    for _ in 0..HEURISTIC_ATTEMPTS {
        let va = a.eval_int(&xi);
        let vb = b.eval_int(&xi);
        let gamma = va.gcd(&vb);
        if !gamma.is_zero() {
            let cand = reconstruct(gamma, &xi);
            if !cand.is_zero() {
                let cand = cand.normalized_primitive();
                if cand.divides(a) && cand.divides(b) {
                    return Some(cand);
                }
            }
        }
        xi = &xi * 73794u32 / 27011u32 + 1u32;
    }
    None
}

/// Primitive polynomial remainder sequence. Inputs primitive.
pub(super) fn primitive_prs(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let (mut f, mut g) = if a.deg() >= b.deg() {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    };
    while !g.is_zero() {
        let r = f.pseudo_rem(&g);
        f = g;
        g = if r.is_zero() { r } else { r.normalized_primitive() };
    }
    let f = f.normalized_primitive();
    if f.is_constant() {
        IntPoly::one()
    } else {
        f
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstruct_balanced_digits() {
        let xi = BigInt::from(100);
        // -3*t^2 + 5*t - 7 at 100
        let v = BigInt::from(-3 * 10000 + 5 * 100 - 7);
        assert_eq!(reconstruct(v, &xi), IntPoly::from_i64s(&[-7, 5, -3]));
    }

    #[test]
    fn prs_agrees_with_heuristic() {
        let f: IntPoly = "(3*t^4 + 2*t^2 + 2)*(t^2 + 1)*(t - 5)".parse().unwrap();
        let g: IntPoly = "(3*t^4 + 2*t^2 + 2)*(2*t^4 + 2*t^2 + 3)".parse().unwrap();
        let h = heuristic_gcd(&f, &g).unwrap();
        assert_eq!(h, primitive_prs(&f, &g));
        assert_eq!(h, "3*t^4 + 2*t^2 + 2".parse().unwrap());
        assert!(primitive_prs(&"t+1".parse().unwrap(), &"t+2".parse().unwrap()).is_one());
    }
}
