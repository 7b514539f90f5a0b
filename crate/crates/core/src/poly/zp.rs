//! Dense univariate polynomials over `F_p`, `p` an odd prime below `2^63`.
//! Coefficient vectors are little-endian with no trailing zeros.

use rand::Rng;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Zp {
    pub p: u64,
}

pub(crate) type Poly = Vec<u64>;

impl Zp {
    pub fn new(p: u64) -> Self {
        Zp { p }
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    pub fn from_bigint(&self, a: &num_bigint::BigInt) -> u64 {
        let m = num_bigint::BigInt::from(self.p);
        let r = ((a % &m) + &m) % &m;
        u64::try_from(r).expect("reduced")
    }

    pub fn trim(f: &mut Poly) {
        while f.last() == Some(&0) {
            f.pop();
        }
    }

    pub fn poly_add(&self, a: &[u64], b: &[u64]) -> Poly {
        let n = a.len().max(b.len());
        let mut out: Poly = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(&mut out);
        out
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> Poly {
        let n = a.len().max(b.len());
        let mut out: Poly = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        Self::trim(&mut out);
        out
    }

    pub fn poly_mul(&self, a: &[u64], b: &[u64]) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        let p = self.p as u128;
        // Reduce lazily: each product is < 2^126, so accumulate at most a few.
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] = (acc[i + j] + x as u128 * y as u128) % p;
            }
        }
        let mut out: Poly = acc.into_iter().map(|c| c as u64).collect();
        Self::trim(&mut out);
        out
    }

    pub fn poly_scale(&self, a: &[u64], c: u64) -> Poly {
        if c == 0 {
            return Vec::new();
        }
        a.iter().map(|&x| self.mul(x, c)).collect()
    }

    pub fn monic(&self, a: &[u64]) -> Poly {
        match a.last() {
            None => Vec::new(),
            Some(&l) => self.poly_scale(a, self.inv(l)),
        }
    }

    pub fn divrem(&self, a: &[u64], b: &[u64]) -> (Poly, Poly) {
        assert!(!b.is_empty(), "division by zero polynomial");
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let inv = self.inv(*b.last().unwrap());
        let mut r = a.to_vec();
        let mut q = vec![0; a.len() - b.len() + 1];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + b.len() - 1], inv);
            q[k] = c;
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    r[k + j] = self.sub(r[k + j], self.mul(c, bj));
                }
            }
        }
        r.truncate(b.len() - 1);
        Self::trim(&mut r);
        Self::trim(&mut q);
        (q, r)
    }

    pub fn rem(&self, a: &[u64], b: &[u64]) -> Poly {
        self.divrem(a, b).1
    }

    pub fn gcd(&self, a: &[u64], b: &[u64]) -> Poly {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// Inverse of `a` modulo `m`, if they are coprime.
    pub fn inverse_mod(&self, a: &[u64], m: &[u64]) -> Option<Poly> {
        let (mut r0, mut r1) = (m.to_vec(), self.rem(a, m));
        let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.len() != 1 {
            return None;
        }
        let c = self.inv(r0[0]);
        Some(self.rem(&self.poly_scale(&s0, c), m))
    }

    pub fn powmod(&self, base: &[u64], mut e: u128, m: &[u64]) -> Poly {
        let mut result: Poly = vec![1];
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                result = self.rem(&self.poly_mul(&result, &b), m);
            }
            e >>= 1;
            if e > 0 {
                b = self.rem(&self.poly_mul(&b, &b), m);
            }
        }
        result
    }

    pub fn derivative(&self, a: &[u64]) -> Poly {
        let mut out: Poly = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| self.mul(c, k as u64 % self.p))
            .collect();
        Self::trim(&mut out);
        out
    }

    pub fn is_squarefree(&self, a: &[u64]) -> bool {
        let d = self.derivative(a);
        !d.is_empty() && self.gcd(a, &d).len() == 1
    }

    /// Complete factorization of a monic square-free polynomial into monic
    /// irreducibles (Cantor–Zassenhaus). Intended for small primes.
    pub fn factor_squarefree<R: Rng>(&self, f: &[u64], rng: &mut R) -> Vec<Poly> {
        let mut out = Vec::new();
        for (g, d) in self.distinct_degree(f) {
            self.equal_degree(&g, d, rng, &mut out);
        }
        out.sort();
        out
    }

    fn distinct_degree(&self, f: &[u64]) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        let mut f = f.to_vec();
        let x: Poly = vec![0, 1];
        let mut h = x.clone();
        let mut d = 0;
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                out.push((f.clone(), f.len() - 1));
                break;
            }
            h = self.powmod(&h, self.p as u128, &f);
            let g = self.gcd(&self.poly_sub(&h, &x), &f);
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((g, d));
            }
        }
        out
    }

    fn equal_degree<R: Rng>(&self, f: &[u64], d: usize, rng: &mut R, out: &mut Vec<Poly>) {
        let n = f.len() - 1;
        if n == d {
            out.push(f.to_vec());
            return;
        }
        loop {
            let a: Poly = {
                let mut a: Poly = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
                Self::trim(&mut a);
                a
            };
            if a.len() < 2 {
                continue;
            }
            // a^((p^d - 1)/2) = (a · a^p ⋯ a^(p^(d-1)))^((p-1)/2)
            let mut s = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                s = self.powmod(&s, self.p as u128, f);
                norm = self.rem(&self.poly_mul(&norm, &s), f);
            }
            let b = self.poly_sub(&self.powmod(&norm, (self.p as u128 - 1) / 2, f), &vec![1]);
            let g = self.gcd(&b, f);
            if g.len() > 1 && g.len() < f.len() {
                let h = self.divrem(f, &g).0;
                self.equal_degree(&g, d, rng, out);
                self.equal_degree(&self.monic(&h), d, rng, out);
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn factors_multiply_back() {
        let zp = Zp::new(7);
        // (x+1)(x^2+1)(x+3) mod 7; x^2+1 is irreducible mod 7
        let f = zp.poly_mul(&zp.poly_mul(&vec![1, 1], &vec![1, 0, 1]), &vec![3, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fs = zp.factor_squarefree(&f, &mut rng);
        assert_eq!(fs.len(), 3);
        let prod = fs.iter().fold(vec![1], |acc, g| zp.poly_mul(&acc, g));
        assert_eq!(prod, f);
    }

    #[test]
    fn inverse_mod_works() {
        let zp = Zp::new(1_000_000_007);
        let m = vec![1, 0, 1];
        let a = vec![2, 3];
        let inv = zp.inverse_mod(&a, &m).unwrap();
        assert_eq!(zp.rem(&zp.poly_mul(&a, &inv), &m), vec![1]);
    }
}
