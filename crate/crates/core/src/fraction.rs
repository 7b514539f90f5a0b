//! Nonzero elements of the fraction field `Q(H)`.

use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::lattice::{LatticeMap, SurfaceSignature};
use crate::laurent::LaurentPolynomial;
use crate::poly::{gcd::gcd, MPoly};

/// A reduced quotient `numerator / denominator` of nonzero Laurent
/// polynomials.
///
/// The two parts are coprime in `Z[H]` (integer content included) and the
/// denominator is the canonical `≐`-representative of its class, so equal
/// fractions have equal parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentFraction {
    numerator: LaurentPolynomial,
    denominator: LaurentPolynomial,
}

impl LaurentFraction {
    pub fn new(numerator: LaurentPolynomial, denominator: LaurentPolynomial) -> Result<Self> {
        numerator.signature().check_same(&denominator.signature())?;
        if numerator.is_zero() || denominator.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(Self::reduce(&numerator, &denominator))
    }

    pub fn from_polynomial(p: LaurentPolynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroInput);
        }
        let sig = p.signature();
        Ok(LaurentFraction {
            numerator: p,
            denominator: LaurentPolynomial::one(sig),
        })
    }

    pub fn one(signature: SurfaceSignature) -> Self {
        LaurentFraction {
            numerator: LaurentPolynomial::one(signature),
            denominator: LaurentPolynomial::one(signature),
        }
    }

    fn reduce(num: &LaurentPolynomial, den: &LaurentPolynomial) -> Self {
        let sig = num.signature();
        let (mut mn, hn) = MPoly::from_laurent(num);
        let (mut md, hd) = MPoly::from_laurent(den);
        if !(md.is_constant() && md.constant_value().abs().is_one()) {
            let g = gcd(&mn, &md);
            if !(g.is_constant() && g.constant_value().is_one()) {
                mn = mn.div_exact(&g).expect("gcd divides");
                md = md.div_exact(&g).expect("gcd divides");
            }
        }
        let n = mn.to_laurent(sig).shift(&(&hn - &hd));
        let d = md.to_laurent(sig);
        let (class, unit) = d.normalize_unit().expect("nonzero");
        LaurentFraction {
            numerator: n.mul_unit(&unit.inverse()),
            denominator: class.into_representative(),
        }
    }

    pub fn signature(&self) -> SurfaceSignature {
        self.numerator.signature()
    }

    pub fn numerator(&self) -> &LaurentPolynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentPolynomial {
        &self.denominator
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&LaurentPolynomial> {
        self.is_polynomial().then_some(&self.numerator)
    }

    pub fn is_one(&self) -> bool {
        self.is_polynomial() && self.numerator.is_one()
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.signature().check_same(&other.signature())?;
        if self.is_polynomial() && other.is_polynomial() {
            return LaurentFraction::from_polynomial(&self.numerator * &other.numerator);
        }
        Ok(Self::reduce(
            &(&self.numerator * &other.numerator),
            &(&self.denominator * &other.denominator),
        ))
    }

    pub fn inverse(&self) -> Self {
        Self::reduce(&self.denominator, &self.numerator)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inverse())
    }

    pub fn involute(&self) -> Self {
        Self::reduce(&self.numerator.involute(), &self.denominator.involute())
    }

    /// Image under the ring map induced by a lattice map. The map must keep
    /// the denominator nonzero (automatic for injective maps).
    pub fn substitute(&self, map: &LatticeMap) -> Result<Self> {
        let n = self.numerator.substitute(map)?;
        let d = self.denominator.substitute(map)?;
        LaurentFraction::new(n, d)
    }

    /// `ε(numerator) / ε(denominator)` as a pair, for augmentation checks.
    pub fn augmentation(&self) -> (num_bigint::BigInt, num_bigint::BigInt) {
        (self.numerator.augment(), self.denominator.augment())
    }

    /// `≐` on fractions: equality up to `±h`.
    pub fn eq_up_to_unit(&self, other: &Self) -> Result<bool> {
        self.signature().check_same(&other.signature())?;
        Ok(self.denominator == other.denominator && self.numerator.eq_up_to_unit(&other.numerator)?)
    }

    /// The member of the `≐`-class with the numerator shifted to minimal
    /// exponent zero and `ε(num)·ε(den) > 0` (canonical sign if that
    /// product vanishes).
    pub fn augmentation_normalized(&self) -> Self {
        let mut n = self.numerator.augmentation_normalized();
        if (n.augment() * self.denominator.augment()).is_negative() {
            n = -&n;
        }
        LaurentFraction {
            numerator: n,
            denominator: self.denominator.clone(),
        }
    }

    /// Representative with the numerator also unit-normalized.
    pub fn unit_normalized(&self) -> Self {
        let (c, _) = self.numerator.normalize_unit().expect("nonzero");
        LaurentFraction {
            numerator: c.into_representative(),
            denominator: self.denominator.clone(),
        }
    }
}

impl From<LaurentPolynomial> for LaurentFraction {
    /// Panics on the zero polynomial.
    fn from(p: LaurentPolynomial) -> Self {
        LaurentFraction::from_polynomial(p).expect("nonzero polynomial")
    }
}

impl fmt::Debug for LaurentFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentFraction[{}]({})", self.signature(), self)
    }
}

impl fmt::Display for LaurentFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_polynomial;

    fn sig() -> SurfaceSignature {
        SurfaceSignature::new(1, 2)
    }

    fn p(s: &str) -> LaurentPolynomial {
        parse_polynomial(s, sig()).unwrap()
    }

    #[test]
    fn reduction_cancels_common_factors() {
        let f = LaurentFraction::new(p("(1 - x1)*(1 + y1)"), p("x1^-3*(1 + y1)*(2 + y2)")).unwrap();
        assert_eq!(f.denominator(), &p("2 + y2"));
        assert_eq!(f.numerator(), &p("x1^3*(1 - x1)"));
        let g = LaurentFraction::new(p("6*x1"), p("-4")).unwrap();
        assert_eq!(g.numerator(), &p("-3*x1"));
        assert_eq!(g.denominator(), &p("2"));
    }

    #[test]
    fn inverse_and_product() {
        let f = LaurentFraction::new(p("1 - x1 + x1*y1"), p("3 + y1")).unwrap();
        assert!(f.checked_mul(&f.inverse()).unwrap().is_one());
        assert!(matches!(
            LaurentFraction::new(p("1"), p("0")),
            Err(Error::ZeroInput)
        ));
    }

    #[test]
    fn unit_equivalence_of_fractions() {
        let a = LaurentFraction::new(p("1 - x1"), p("1 + y1")).unwrap();
        let b = LaurentFraction::new(p("x1^2 - x1^3"), p("-y1^4 - y1^5")).unwrap();
        assert!(a.eq_up_to_unit(&b).unwrap());
        assert_ne!(a, b);
    }
}
