//! Zassenhaus factorization of square-free primitive polynomials in `Z[x]`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::integer::{exact_sqrt, is_probable_prime};
use crate::poly::zp::{Poly as ZpPoly, Zp};

pub(crate) type UPoly = Vec<BigInt>;

const PRIME_TRIALS: usize = 5;

fn trim(f: &mut UPoly) {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
}

pub(crate) fn mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Exact quotient over `Z`, or `None`.
pub(crate) fn div_exact(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    if a.len() < b.len() {
        return a.is_empty().then(Vec::new);
    }
    let lb = b.last().expect("nonzero divisor");
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let (c, rem) = r[k + b.len() - 1].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    r.iter().all(Zero::is_zero).then_some(q)
}

pub(crate) fn primitive(f: &UPoly) -> UPoly {
    let mut g = BigInt::zero();
    for c in f {
        g = g.gcd(c);
    }
    if f.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    f.iter().map(|c| c / &g).collect()
}

fn norm2_ceil(f: &UPoly) -> BigInt {
    let s: BigInt = f.iter().map(|c| c * c).sum();
    s.sqrt() + 1
}

/// Factors a primitive, square-free `f` of positive degree into primitive
/// irreducibles with positive leading coefficients.
pub(crate) fn factor_squarefree(f: &UPoly) -> Vec<UPoly> {
    let f = primitive(f);
    let n = f.len() - 1;
    match n {
        0 => return Vec::new(),
        1 => return vec![f],
        2 => return quadratic(&f),
        _ => {}
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let Some((zp, local)) = choose_prime(&f, &mut rng) else {
        return vec![f];
    };
    if local.len() == 1 {
        return vec![f];
    }
    let lc = f.last().unwrap().clone();
    let bound = BigInt::from(2) * lc.abs() * (BigInt::one() << n) * norm2_ceil(&f);
    let (lifted, modulus) = hensel_lift(&f, zp, &local, &bound);
    recombine(f, lifted, &modulus)
}

fn quadratic(f: &UPoly) -> Vec<UPoly> {
    let (c, b, a) = (&f[0], &f[1], &f[2]);
    let disc = b * b - BigInt::from(4) * a * c;
    match exact_sqrt(&disc) {
        None => vec![f.clone()],
        Some(d) => {
            let two_a = BigInt::from(2) * a;
            let mut out = vec![primitive(&vec![b - &d, two_a.clone()]), primitive(&vec![b + &d, two_a])];
            out.sort();
            out
        }
    }
}

fn reduce(zp: &Zp, f: &UPoly) -> ZpPoly {
    let mut out: ZpPoly = f.iter().map(|c| zp.from_bigint(c)).collect();
    Zp::trim(&mut out);
    out
}

/// Among the first few usable small primes, the one giving the fewest
/// modular factors.
fn choose_prime(f: &UPoly, rng: &mut ChaCha8Rng) -> Option<(Zp, Vec<ZpPoly>)> {
    let lc = f.last().unwrap();
    let mut best: Option<(Zp, Vec<ZpPoly>)> = None;
    let mut tried = 0;
    let mut p = 3u64;
    while tried < PRIME_TRIALS && p < 100_000 {
        p += 2;
        if !is_probable_prime(&BigInt::from(p)) || (lc % p).is_zero() {
            continue;
        }
        let zp = Zp::new(p);
        let fp = reduce(&zp, f);
        if !zp.is_squarefree(&fp) {
            continue;
        }
        tried += 1;
        let fs = zp.factor_squarefree(&zp.monic(&fp), rng);
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((zp, fs));
        }
        if best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    best
}

/// Linear multi-factor Hensel lifting of `f ≡ lc · Π g_j (mod p)` until the
/// modulus exceeds `bound`. Returned factors are monic modulo the modulus.
fn hensel_lift(f: &UPoly, zp: Zp, local: &[ZpPoly], bound: &BigInt) -> (Vec<UPoly>, BigInt) {
    let r = local.len();
    let p = BigInt::from(zp.p);
    let sigma: Vec<ZpPoly> = (0..r)
        .map(|j| {
            let others = (0..r)
                .filter(|&i| i != j)
                .fold(vec![1u64], |acc, i| zp.poly_mul(&acc, &local[i]));
            zp.inverse_mod(&others, &local[j]).expect("coprime modular factors")
        })
        .collect();
    let lc = f.last().unwrap().clone();
    let lc_inv = zp.inv(zp.from_bigint(&lc));
    let mut g: Vec<UPoly> = local
        .iter()
        .map(|h| h.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    let mut q = p.clone();
    while &q <= bound {
        let prod = g.iter().fold(vec![lc.clone()], |acc, h| mul(&acc, h));
        let mut e: UPoly = (0..f.len().max(prod.len()))
            .map(|i| f.get(i).cloned().unwrap_or_default() - prod.get(i).cloned().unwrap_or_default())
            .collect();
        trim(&mut e);
        let ep: ZpPoly = {
            let mut v: ZpPoly = e.iter().map(|c| zp.from_bigint(&(c / &q))).collect();
            Zp::trim(&mut v);
            zp.poly_scale(&v, lc_inv)
        };
        for j in 0..r {
            let delta = zp.rem(&zp.poly_mul(&ep, &sigma[j]), &local[j]);
            for (k, d) in delta.iter().enumerate() {
                g[j][k] += &q * BigInt::from(*d);
            }
        }
        q *= &p;
    }
    (g, q)
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn recombine(f: UPoly, mut lifted: Vec<UPoly>, m: &BigInt) -> Vec<UPoly> {
    let mut out = Vec::new();
    let mut f_cur = f;
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = None;
        for subset in Subsets::new(lifted.len(), size) {
            let lc = f_cur.last().unwrap().clone();
            let prod = subset
                .iter()
                .fold(vec![lc], |acc, &i| mul(&acc, &lifted[i]))
                .iter()
                .map(|c| symmetric(c, m))
                .collect::<UPoly>();
            let cand = primitive(&prod);
            if let Some(q) = div_exact(&f_cur, &cand) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                out.push(cand);
                f_cur = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if f_cur.len() > 1 {
        out.push(primitive(&f_cur));
    }
    out.sort();
    out
}

/// Index subsets of a fixed size in lexicographic order.
pub(crate) struct Subsets {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Subsets {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        let cur = self.current.take()?;
        let out = cur.clone();
        let k = cur.len();
        let mut next = cur;
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(v: &[i64]) -> UPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn quadratic_fast_path() {
        assert_eq!(factor_squarefree(&u(&[1, -3, 1])).len(), 1);
        let fs = factor_squarefree(&u(&[-1, 0, 1]));
        assert_eq!(fs, vec![u(&[-1, 1]), u(&[1, 1])]);
        // 6x^2 + 5x + 1 = (2x+1)(3x+1)
        assert_eq!(factor_squarefree(&u(&[1, 5, 6])), vec![u(&[1, 2]), u(&[1, 3])]);
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // x^4 + 1 is irreducible over Z but splits modulo every prime.
        assert_eq!(factor_squarefree(&u(&[1, 0, 0, 0, 1])).len(), 1);
        // x^4 - 10x^2 + 1 likewise.
        assert_eq!(factor_squarefree(&u(&[1, 0, -10, 0, 1])).len(), 1);
    }

    #[test]
    fn product_recovered() {
        let a = u(&[1, 1, 1]);
        let b = u(&[-2, 0, 3]);
        let c = u(&[5, -1, 0, 7]);
        let f = mul(&mul(&a, &b), &c);
        let mut expected = vec![a, b, c];
        expected.sort();
        assert_eq!(factor_squarefree(&f), expected);
    }

    #[test]
    fn cyclotomic_prime_orders() {
        for q in [3usize, 5, 7, 11, 13] {
            let f: UPoly = vec![BigInt::one(); q];
            assert_eq!(factor_squarefree(&f).len(), 1, "Φ_{q}");
        }
        // 1 + x + ... + x^5 = (1+x)(1+x+x^2)(1-x+x^2)
        assert_eq!(factor_squarefree(&vec![BigInt::one(); 6]).len(), 3);
    }

    #[test]
    fn subsets_enumerate() {
        let all: Vec<_> = Subsets::new(4, 2).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], vec![0, 1]);
        assert_eq!(all[5], vec![2, 3]);
    }
}
