//! The group ring `Z[H]` of the homology lattice: sparse Laurent polynomials
//! with big-integer coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{ExponentVector, LatticeMap, SurfaceSignature};

/// Finitely supported map `H → Z \ {0}`.
///
/// Terms are kept in a `BTreeMap`, so two polynomials are equal exactly when
/// their term lists are. The arithmetic operators panic when signatures
/// differ; the `checked_*` methods report the mismatch instead.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    signature: SurfaceSignature,
    terms: BTreeMap<ExponentVector, BigInt>,
}

/// A unit `±h` of `Z[H]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Unit {
    pub negative: bool,
    pub monomial: ExponentVector,
}

impl Unit {
    pub fn one(rank: usize) -> Self {
        Unit {
            negative: false,
            monomial: ExponentVector::zero(rank),
        }
    }

    pub fn to_polynomial(&self, sig: SurfaceSignature) -> LaurentPolynomial {
        let c = if self.negative { -BigInt::one() } else { BigInt::one() };
        LaurentPolynomial::monomial(sig, self.monomial.clone(), c)
    }

    pub fn mul(&self, other: &Unit) -> Unit {
        Unit {
            negative: self.negative ^ other.negative,
            monomial: &self.monomial + &other.monomial,
        }
    }

    pub fn inverse(&self) -> Unit {
        Unit {
            negative: self.negative,
            monomial: -&self.monomial,
        }
    }
}

/// A class of nonzero polynomials modulo multiplication by units, held by
/// its canonical representative: every variable has minimal exponent zero
/// and the lexicographically smallest term has a positive coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitClass(LaurentPolynomial);

impl UnitClass {
    pub fn of(p: &LaurentPolynomial) -> Result<Self> {
        Ok(p.normalize_unit()?.0)
    }

    pub fn representative(&self) -> &LaurentPolynomial {
        &self.0
    }

    pub fn into_representative(self) -> LaurentPolynomial {
        self.0
    }

    /// The class of the involuted representative.
    pub fn conjugate(&self) -> UnitClass {
        UnitClass::of(&self.0.involute()).expect("nonzero")
    }

}

impl fmt::Display for UnitClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl LaurentPolynomial {
    pub fn zero(signature: SurfaceSignature) -> Self {
        LaurentPolynomial {
            signature,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(signature: SurfaceSignature) -> Self {
        Self::constant(signature, BigInt::one())
    }

    pub fn constant(signature: SurfaceSignature, c: impl Into<BigInt>) -> Self {
        Self::monomial(signature, ExponentVector::zero(signature.rank()), c)
    }

    pub fn monomial(signature: SurfaceSignature, exp: ExponentVector, c: impl Into<BigInt>) -> Self {
        assert_eq!(exp.rank(), signature.rank(), "exponent rank");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPolynomial { signature, terms }
    }

    /// The variable with index `i` (boundary variables first).
    pub fn variable(signature: SurfaceSignature, i: usize) -> Self {
        Self::monomial(signature, ExponentVector::unit(signature.rank(), i), 1)
    }

    /// Builds a polynomial from arbitrary terms, merging repeats and dropping
    /// zero coefficients.
    pub fn from_terms<I, C>(signature: SurfaceSignature, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, C)>,
        C: Into<BigInt>,
    {
        let mut p = LaurentPolynomial::zero(signature);
        for (e, c) in terms {
            assert_eq!(e.rank(), signature.rank(), "exponent rank");
            p.add_term(e, c.into());
        }
        p
    }

    pub(crate) fn from_map_unchecked(
        signature: SurfaceSignature,
        terms: BTreeMap<ExponentVector, BigInt>,
    ) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        LaurentPolynomial { signature, terms }
    }

    fn add_term(&mut self, e: ExponentVector, c: BigInt) {
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

    pub fn signature(&self) -> SurfaceSignature {
        self.signature
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &BigInt)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(e, c)| e.is_zero() && c.is_one())
    }

    /// Units of `Z[H]` are exactly the monomials `±h`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().is_some_and(|c| c.abs().is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn as_unit(&self) -> Option<Unit> {
        if !self.is_unit() {
            return None;
        }
        let (e, c) = self.terms.iter().next()?;
        Some(Unit {
            negative: c.is_negative(),
            monomial: e.clone(),
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.signature.check_same(&other.signature)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.signature.check_same(&other.signature)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.signature.check_same(&other.signature)?;
        let mut acc: std::collections::HashMap<ExponentVector, BigInt> =
            std::collections::HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                *acc.entry(e1 + e2).or_default() += c1 * c2;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(LaurentPolynomial {
            signature: self.signature,
            terms,
        })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = LaurentPolynomial::one(self.signature);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return LaurentPolynomial::zero(self.signature);
        }
        LaurentPolynomial {
            signature: self.signature,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplication by the monomial `h`.
    pub fn shift(&self, h: &ExponentVector) -> Self {
        LaurentPolynomial {
            signature: self.signature,
            terms: self.terms.iter().map(|(e, c)| (e + h, c.clone())).collect(),
        }
    }

    pub fn mul_unit(&self, u: &Unit) -> Self {
        let p = self.shift(&u.monomial);
        if u.negative {
            -&p
        } else {
            p
        }
    }

    /// The ring involution `h ↦ h⁻¹`.
    pub fn involute(&self) -> Self {
        LaurentPolynomial {
            signature: self.signature,
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// The augmentation `ε(h) = 1`: sum of all coefficients.
    pub fn augment(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Smallest exponent of every variable over the support.
    pub fn min_exponents(&self) -> Option<ExponentVector> {
        let rank = self.signature.rank();
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |mut acc, e| {
            for i in 0..rank {
                acc.0[i] = acc.0[i].min(e.0[i]);
            }
            acc
        }))
    }

    pub fn max_exponents(&self) -> Option<ExponentVector> {
        let rank = self.signature.rank();
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |mut acc, e| {
            for i in 0..rank {
                acc.0[i] = acc.0[i].max(e.0[i]);
            }
            acc
        }))
    }

    /// Width of the support in variable `i` (max minus min exponent).
    pub fn span_in(&self, i: usize) -> i64 {
        let lo = self.terms.keys().map(|e| e.0[i]).min().unwrap_or(0);
        let hi = self.terms.keys().map(|e| e.0[i]).max().unwrap_or(0);
        hi - lo
    }

    /// Splits `p = u · c` with `u = ±h` a unit and `c` the canonical
    /// representative of the class of `p`.
    pub fn normalize_unit(&self) -> Result<(UnitClass, Unit)> {
        let min = self.min_exponents().ok_or(Error::ZeroInput)?;
        let shifted = self.shift(&-&min);
        let negative = shifted
            .terms
            .values()
            .next()
            .expect("nonzero")
            .is_negative();
        let canonical = if negative { -&shifted } else { shifted };
        Ok((
            UnitClass(canonical),
            Unit {
                negative,
                monomial: min,
            },
        ))
    }

    /// The member of the class of `p` with all minimal exponents zero and
    /// positive augmentation; the canonical representative when the
    /// augmentation vanishes. Panics on zero.
    pub fn augmentation_normalized(&self) -> Self {
        let min = self.min_exponents().expect("nonzero polynomial");
        let shifted = self.shift(&-&min);
        if shifted.augment().is_negative() {
            -&shifted
        } else if shifted.augment().is_zero() {
            self.normalize_unit().expect("nonzero").0.into_representative()
        } else {
            shifted
        }
    }

    /// `p ≐ q`: equality up to multiplication by `±h`.
    pub fn eq_up_to_unit(&self, other: &Self) -> Result<bool> {
        self.signature.check_same(&other.signature)?;
        if self.terms.len() != other.terms.len() {
            if self.is_zero() || other.is_zero() {
                return Err(Error::ZeroInput);
            }
            return Ok(false);
        }
        Ok(self.normalize_unit()?.0 == other.normalize_unit()?.0)
    }

    /// The ring map `Z[H] → Z[H']` induced by a lattice map.
    pub fn substitute(&self, map: &LatticeMap) -> Result<Self> {
        self.signature.check_same(&map.source)?;
        let mut out = LaurentPolynomial::zero(map.target);
        for (e, c) in &self.terms {
            out.add_term(map.apply(e)?, c.clone());
        }
        Ok(out)
    }

    /// Exact division in `Z[H]`, if `other` divides `self`.
    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.signature.check_same(&other.signature)?;
        if other.is_zero() {
            return Err(Error::ZeroInput);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let (a, sa) = crate::poly::MPoly::from_laurent(self);
        let (b, sb) = crate::poly::MPoly::from_laurent(other);
        let q = a.div_exact(&b).ok_or(Error::InexactDivision)?;
        Ok(q.to_laurent(self.signature).shift(&(&sa - &sb)))
    }

    /// Terms grouped by a projection of their exponents; used for the
    /// coefficient-of-`a^k` views and the boundary-class multiset.
    pub fn group_by<K: Ord>(&self, key: impl Fn(&ExponentVector) -> K) -> BTreeMap<K, Vec<(ExponentVector, BigInt)>> {
        let mut out: BTreeMap<K, Vec<(ExponentVector, BigInt)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(key(e)).or_default().push((e.clone(), c.clone()));
        }
        out
    }

    /// Variables that actually occur (nonzero span or nonzero exponent).
    pub fn variables(&self) -> Vec<usize> {
        (0..self.signature.rank())
            .filter(|&i| self.terms.keys().any(|e| e.0[i] != 0))
            .collect()
    }
}

impl PartialOrd for LaurentPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPolynomial {
    /// Signature first, then the ascending term lists compared
    /// lexicographically as `(exponent, coefficient)` pairs.
    fn cmp(&self, other: &Self) -> Ordering {
        self.signature
            .cmp(&other.signature)
            .then_with(|| self.terms.iter().cmp(other.terms.iter()))
    }
}

impl fmt::Debug for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPolynomial[{}]({})", self.signature, self)
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_polynomial(self))
    }
}

impl<'a> Add for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &'a LaurentPolynomial) -> LaurentPolynomial {
        self.checked_add(rhs).expect("signature mismatch in +")
    }
}

impl<'a> Sub for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &'a LaurentPolynomial) -> LaurentPolynomial {
        self.checked_sub(rhs).expect("signature mismatch in -")
    }
}

impl<'a> Mul for &'a LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &'a LaurentPolynomial) -> LaurentPolynomial {
        self.checked_mul(rhs).expect("signature mismatch in *")
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            signature: self.signature,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}
