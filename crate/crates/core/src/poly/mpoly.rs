use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::lattice::{ExponentVector, SurfaceSignature};
use crate::laurent::LaurentPolynomial;

/// Ordinary polynomial in `nvars` variables with non-negative exponents.
/// Terms are ordered lexicographically; the leading term is the last one.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub(crate) struct MPoly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; nvars], c);
        }
        MPoly { nvars, terms }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly {
            nvars,
            terms: BTreeMap::from([(e, BigInt::one())]),
        }
    }

    /// `p = h · q` with `q` an ordinary polynomial not divisible by any
    /// variable; returns `(q, h)`.
    pub fn from_laurent(p: &LaurentPolynomial) -> (MPoly, ExponentVector) {
        let rank = p.signature().rank();
        let Some(min) = p.min_exponents() else {
            return (MPoly::zero(rank), ExponentVector::zero(rank));
        };
        let terms = p
            .terms()
            .map(|(e, c)| {
                let v = e.0.iter().zip(&min.0).map(|(a, m)| (a - m) as u32).collect();
                (v, c.clone())
            })
            .collect();
        (MPoly { nvars: rank, terms }, min)
    }

    pub fn to_laurent(&self, sig: SurfaceSignature) -> LaurentPolynomial {
        debug_assert_eq!(sig.rank(), self.nvars);
        LaurentPolynomial::from_map_unchecked(
            sig,
            self.terms
                .iter()
                .map(|(e, c)| (ExponentVector(e.iter().map(|&k| k as i64).collect()), c.clone()))
                .collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> BigInt {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_default()
    }

    pub fn lc(&self) -> &BigInt {
        self.terms.values().next_back().expect("nonzero")
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn occurring(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&i| self.terms.keys().any(|e| e[i] > 0)).collect()
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut acc: std::collections::HashMap<Vec<u32>, BigInt> = std::collections::HashMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_default() += c1 * c2;
            }
        }
        MPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn mul_term(&self, e: &[u32], c: &BigInt) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(f, d)| (f.iter().zip(e).map(|(a, b)| a + b).collect(), d * c))
                .collect(),
        }
    }

    pub fn div_scalar(&self, c: &BigInt) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, d)| (e.clone(), d / c)).collect(),
        }
    }

    /// Gcd of the integer coefficients, signed like the leading coefficient.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms.values().next_back().is_some_and(|c| c.is_negative()) {
            -g
        } else {
            g
        }
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.div_scalar(&self.content())
    }

    /// Sign-normalized: positive leading coefficient.
    pub fn positive(&self) -> MPoly {
        if !self.is_zero() && self.lc().is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(MPoly::zero(self.nvars));
        }
        if d.is_constant() {
            let c = d.constant_value();
            if self.terms.values().all(|x| x.is_multiple_of(&c)) {
                return Some(self.div_scalar(&c));
            }
            return None;
        }
        let bound: Vec<i64> = (0..self.nvars)
            .map(|i| self.degree(i) as i64 - d.degree(i) as i64)
            .collect();
        if bound.iter().any(|&b| b < 0) {
            return None;
        }
        let (dl_e, dl_c) = d.terms.iter().next_back().unwrap();
        let mut r = self.clone();
        let mut q = MPoly::zero(self.nvars);
        while let Some((re, rc)) = r.terms.iter().next_back() {
            let mut qe = Vec::with_capacity(self.nvars);
            for i in 0..self.nvars {
                let k = re[i] as i64 - dl_e[i] as i64;
                if k < 0 || k > bound[i] {
                    return None;
                }
                qe.push(k as u32);
            }
            let (qc, rem) = rc.div_rem(dl_c);
            if !rem.is_zero() {
                return None;
            }
            r = r.sub(&d.mul_term(&qe, &qc));
            q.terms.insert(qe, qc);
        }
        Some(q)
    }

    /// Coefficients in variable `v`: entry `k` multiplies `x_v^k` and does
    /// not involve `x_v`.
    pub fn coefficients_in(&self, v: usize) -> Vec<MPoly> {
        let d = self.degree(v) as usize;
        let mut out = vec![MPoly::zero(self.nvars); d + 1];
        for (e, c) in &self.terms {
            let k = e[v] as usize;
            let mut e2 = e.clone();
            e2[v] = 0;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    pub fn lc_in(&self, v: usize) -> MPoly {
        self.coefficients_in(v).pop().expect("nonzero")
    }

    pub fn derivative(&self, v: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[v] > 0 {
                let mut e2 = e.clone();
                e2[v] -= 1;
                out.add_term(e2, c * BigInt::from(e[v]));
            }
        }
        out
    }

    /// Substitutes `x_v ↦ x_v + c`.
    pub fn shift_var(&self, v: usize, c: &BigInt) -> MPoly {
        if c.is_zero() {
            return self.clone();
        }
        let coeffs = self.coefficients_in(v);
        let lin = MPoly::var(self.nvars, v).add(&MPoly::constant(self.nvars, c.clone()));
        let mut acc = MPoly::zero(self.nvars);
        for k in coeffs.iter().rev() {
            acc = acc.mul(&lin).add(k);
        }
        acc
    }

    /// Substitutes integers for the listed variables.
    pub fn evaluate(&self, vars: &[usize], values: &[BigInt]) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let mut c2 = c.clone();
            for (&v, a) in vars.iter().zip(values) {
                c2 *= num_traits::pow(a.clone(), e[v] as usize);
                e2[v] = 0;
            }
            out.add_term(e2, c2);
        }
        out
    }

    /// Dense coefficients of a polynomial involving only `v`.
    pub fn to_dense(&self, v: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.degree(v) as usize + 1];
        for (e, c) in &self.terms {
            out[e[v] as usize] = c.clone();
        }
        out
    }

    pub fn from_dense(nvars: usize, v: usize, coeffs: &[BigInt]) -> MPoly {
        let mut out = MPoly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; nvars];
            e[v] = k as u32;
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn norm2_squared(&self) -> BigInt {
        self.terms.values().map(|c| c * c).sum()
    }
}
