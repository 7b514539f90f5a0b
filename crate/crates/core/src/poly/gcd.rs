//! Multivariate gcd over `Z`: the heuristic evaluation gcd first, with
//! recursive primitive pseudo-remainder sequences as the fallback.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::MPoly;

/// Greatest common divisor with positive leading coefficient.
pub(crate) fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.positive();
    }
    if b.is_zero() {
        return a.positive();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::constant(a.nvars, a.content().gcd(&b.content()));
    }
    if let Some(g) = heuristic_gcd(a, b) {
        return g.positive();
    }
    // Cheap path: one divides the other.
    if a.terms.len() >= b.terms.len() {
        if a.div_exact(b).is_some() {
            return b.positive();
        }
    } else if b.div_exact(a).is_some() {
        return a.positive();
    }
    let va = a.occurring();
    let vb = b.occurring();
    if let Some(&v) = va.iter().find(|v| !vb.contains(v)) {
        return gcd(&content_in(a, v), b);
    }
    if let Some(&v) = vb.iter().find(|v| !va.contains(v)) {
        return gcd(a, &content_in(b, v));
    }
    let v = *va.last().expect("non-constant");
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = primitive_prs(pa, pb, v);
    g.mul(&gcd(&ca, &cb)).positive()
}

const HEURISTIC_ATTEMPTS: usize = 6;
const HEURISTIC_MAX_BITS: u64 = 20_000;

fn max_norm(a: &MPoly) -> BigInt {
    a.terms.values().map(|c| c.abs()).max().unwrap_or_default()
}

/// Evaluates one variable at a large integer `ξ`, recurses, and reads the
/// gcd back off the ξ-adic digits of the result. A candidate is returned
/// only after it divides both inputs, which for `ξ > 2·min(|a|, |b|) + 1`
/// makes it the gcd. `None` means the heuristic gave up.
fn heuristic_gcd(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    let (ca, cb) = (a.content().abs(), b.content().abs());
    let c = ca.gcd(&cb);
    let mut vars = a.occurring();
    vars.extend(b.occurring());
    vars.sort_unstable();
    vars.dedup();
    let Some(&v) = vars.iter().max_by_key(|&&v| a.degree(v).max(b.degree(v))) else {
        return Some(MPoly::constant(a.nvars, c));
    };
    let (a, b) = (a.div_scalar(&ca), b.div_scalar(&cb));
    let deg = u64::from(a.degree(v).max(b.degree(v)));
    let mut xi: BigInt = max_norm(&a).min(max_norm(&b)) * 2 + 2;
    for _ in 0..HEURISTIC_ATTEMPTS {
        if xi.bits() * deg.max(1) > HEURISTIC_MAX_BITS {
            return None;
        }
        let point = [xi.clone()];
        let (av, bv) = (a.evaluate(&[v], &point), b.evaluate(&[v], &point));
        if !av.is_zero() && !bv.is_zero() {
            if let Some(gv) = heuristic_gcd(&av, &bv) {
                let g = reconstruct(&gv, v, &xi).primitive();
                if !g.is_zero() && a.div_exact(&g).is_some() && b.div_exact(&g).is_some() {
                    return Some(g.mul(&MPoly::constant(a.nvars, c)));
                }
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// Symmetric ξ-adic expansion of each coefficient into powers of `x_v`.
fn reconstruct(gv: &MPoly, v: usize, xi: &BigInt) -> MPoly {
    let half = xi / 2;
    let mut out = MPoly::zero(gv.nvars);
    for (e, c) in &gv.terms {
        let mut c = c.clone();
        let mut k = 0;
        while !c.is_zero() {
            let mut r = c.mod_floor(xi);
            if r > half {
                r -= xi;
            }
            if !r.is_zero() {
                let mut e2 = e.clone();
                e2[v] = k;
                out.add_term(e2, r.clone());
            }
            c = (c - r) / xi;
            k += 1;
        }
    }
    out
}

/// Gcd of the coefficients of `a` viewed as a polynomial in `x_v`, with
/// positive leading coefficient.
pub(crate) fn content_in(a: &MPoly, v: usize) -> MPoly {
    let mut coeffs: Vec<MPoly> = a.coefficients_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(|c| c.terms.len());
    let mut g = MPoly::zero(a.nvars);
    for c in &coeffs {
        g = gcd(&g, c);
        if g.is_constant() && g.constant_value().is_one() {
            break;
        }
    }
    g
}

/// `a / content_in(a, v)`, normalized to positive leading coefficient.
pub(crate) fn primitive_in(a: &MPoly, v: usize) -> MPoly {
    let c = content_in(a, v);
    a.div_exact(&c).expect("content divides").positive()
}

fn pseudo_remainder(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let db = b.degree(v);
    let lb = b.lc_in(v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree(v) >= db {
        let dr = r.degree(v);
        let lr = r.lc_in(v);
        let mut shift = vec![0; a.nvars];
        shift[v] = dr - db;
        let t = b.mul(&lr).mul_term(&shift, &BigInt::one());
        r = r.mul(&lb).sub(&t);
    }
    r
}

fn primitive_prs(mut a: MPoly, mut b: MPoly, v: usize) -> MPoly {
    if a.degree(v) < b.degree(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_remainder(&a, &b, v);
        if r.is_zero() {
            return b.positive();
        }
        if r.degree(v) == 0 {
            return MPoly::one(a.nvars);
        }
        a = b;
        b = primitive_in(&r, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(nvars: usize, terms: &[(&[u32], i64)]) -> MPoly {
        let mut out = MPoly::zero(nvars);
        for (e, c) in terms {
            out.add_term(e.to_vec(), BigInt::from(*c));
        }
        out
    }

    #[test]
    fn gcd_recovers_planted_factor() {
        let g = poly(3, &[(&[0, 0, 0], 1), (&[1, 0, 0], -1), (&[1, 1, 0], 1)]);
        let a = poly(3, &[(&[0, 0, 0], 2), (&[0, 0, 1], 1), (&[2, 1, 0], 3)]);
        let b = poly(3, &[(&[0, 0, 0], -1), (&[0, 2, 1], 1), (&[1, 0, 3], 1)]);
        let got = gcd(&g.mul(&a), &g.mul(&b));
        assert_eq!(got, g.positive());
    }

    fn arb_poly(nvars: usize) -> impl proptest::strategy::Strategy<Value = MPoly> {
        use proptest::prelude::*;
        prop::collection::vec((prop::collection::vec(0u32..3, nvars), -4i64..=4), 1..5).prop_map(move |ts| {
            let mut out = MPoly::zero(nvars);
            for (e, c) in ts {
                out.add_term(e, BigInt::from(c));
            }
            if out.is_zero() {
                MPoly::one(nvars)
            } else {
                out
            }
        })
    }

    proptest::proptest! {
        #[test]
        fn gcd_contains_planted_factor_and_divides(g in arb_poly(3), a in arb_poly(3), b in arb_poly(3)) {
            let (ga, gb) = (g.mul(&a), g.mul(&b));
            let d = gcd(&ga, &gb);
            proptest::prop_assert!(d.div_exact(&g).is_some());
            proptest::prop_assert!(ga.div_exact(&d).is_some());
            proptest::prop_assert!(gb.div_exact(&d).is_some());
            // The cofactors are coprime.
            let (qa, qb) = (ga.div_exact(&d).unwrap(), gb.div_exact(&d).unwrap());
            proptest::prop_assert!(gcd(&qa, &qb).is_constant());
        }
    }

    #[test]
    fn gcd_with_integer_content() {
        let a = poly(1, &[(&[0], 6), (&[1], 6)]);
        let b = poly(1, &[(&[0], 4), (&[2], -4)]);
        assert_eq!(gcd(&a, &b), poly(1, &[(&[0], 2), (&[1], 2)]));
    }
}
