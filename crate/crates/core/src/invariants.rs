//! Invariants of polynomials under `p ~ q ⇔ p ≐ φ(q)` for some
//! `φ ∈ Aut*(H)`. Differing values certify `p ≁ q`.

use std::fmt;

use num_bigint::BigInt;

use crate::error::Result;
use crate::lattice::{ExponentVector, SurfaceSignature};
use crate::laurent::LaurentPolynomial;
use crate::registry::Registry;

/// The multiset of nonzero coefficients, sorted.
pub fn coefficient_multiset(p: &LaurentPolynomial) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = p.terms().map(|(_, c)| c.clone()).collect();
    v.sort();
    v
}

fn negated_multiset(v: &[BigInt]) -> Vec<BigInt> {
    let mut n: Vec<BigInt> = v.iter().map(|c| -c).collect();
    n.sort();
    n
}

/// Boundary-class multiset `C(p)`: the terms of `p` grouped by their `Ĥ`
/// component, each group read as a polynomial on `H_∂` and shifted to
/// minimal exponent zero. Classes are polynomials over the genus-zero
/// signature with the same boundary count.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BoundaryClassMultiset {
    classes: Vec<LaurentPolynomial>,
}

impl BoundaryClassMultiset {
    pub fn of(p: &LaurentPolynomial) -> Self {
        let sig = p.signature();
        let bsig = SurfaceSignature::new(0, sig.boundary_components);
        let b = sig.boundary_rank();
        let groups = p.group_by(|e| e.symplectic_part(&sig).to_vec());
        let mut classes: Vec<LaurentPolynomial> = groups
            .into_values()
            .map(|terms| {
                let poly = LaurentPolynomial::from_terms(
                    bsig,
                    terms
                        .into_iter()
                        .map(|(e, c)| (ExponentVector(e.0[..b].to_vec()), c)),
                );
                let min = poly.min_exponents().expect("nonempty group");
                poly.shift(&-&min)
            })
            .collect();
        classes.sort();
        BoundaryClassMultiset { classes }
    }

    pub fn classes(&self) -> &[LaurentPolynomial] {
        &self.classes
    }

    pub fn negated(&self) -> Self {
        let mut classes: Vec<LaurentPolynomial> = self.classes.iter().map(|c| -c).collect();
        classes.sort();
        BoundaryClassMultiset { classes }
    }

    /// Equality up to a global sign, the form in which `C` is invariant.
    pub fn eq_up_to_sign(&self, other: &Self) -> bool {
        self == other || *self == other.negated()
    }
}

impl fmt::Display for BoundaryClassMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.classes.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[{c}]")?;
        }
        write!(f, "}}")
    }
}

pub fn boundary_class_multiset(p: &LaurentPolynomial) -> BoundaryClassMultiset {
    BoundaryClassMultiset::of(p)
}

/// An `Aut*`-invariant that may tell two polynomials apart.
pub trait DistinctnessInvariant: Send + Sync {
    /// `Some(reason)` when the invariant differs on `p` and `q`.
    fn separates(&self, p: &LaurentPolynomial, q: &LaurentPolynomial) -> Option<String>;
}

pub struct BoundaryClasses;

impl DistinctnessInvariant for BoundaryClasses {
    fn separates(&self, p: &LaurentPolynomial, q: &LaurentPolynomial) -> Option<String> {
        let (cp, cq) = (BoundaryClassMultiset::of(p), BoundaryClassMultiset::of(q));
        (!cp.eq_up_to_sign(&cq)).then(|| format!("{cp} vs {cq}"))
    }
}

pub struct CoefficientMultiset;

impl DistinctnessInvariant for CoefficientMultiset {
    fn separates(&self, p: &LaurentPolynomial, q: &LaurentPolynomial) -> Option<String> {
        let (cp, cq) = (coefficient_multiset(p), coefficient_multiset(q));
        (cp != cq && cp != negated_multiset(&cq)).then(|| format!("{cp:?} vs {cq:?}"))
    }
}

pub struct SupportSize;

impl DistinctnessInvariant for SupportSize {
    fn separates(&self, p: &LaurentPolynomial, q: &LaurentPolynomial) -> Option<String> {
        (p.num_terms() != q.num_terms()).then(|| format!("{} vs {} terms", p.num_terms(), q.num_terms()))
    }
}

pub fn default_registry() -> Registry<dyn DistinctnessInvariant> {
    let mut r: Registry<dyn DistinctnessInvariant> = Registry::new();
    r.register("boundary-classes", Box::new(BoundaryClasses))
        .register("coefficient-multiset", Box::new(CoefficientMultiset))
        .register("support-size", Box::new(SupportSize));
    r
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinctnessCertificate {
    pub invariant: String,
    pub detail: String,
}

/// First invariant in `registry` separating `p` from `q`.
pub fn certify_distinct_with(
    registry: &Registry<dyn DistinctnessInvariant>,
    p: &LaurentPolynomial,
    q: &LaurentPolynomial,
) -> Result<Option<DistinctnessCertificate>> {
    p.signature().check_same(&q.signature())?;
    Ok(registry.iter().find_map(|(name, inv)| {
        inv.separates(p, q).map(|detail| DistinctnessCertificate {
            invariant: name.to_string(),
            detail,
        })
    }))
}

pub fn certify_distinct(p: &LaurentPolynomial, q: &LaurentPolynomial) -> Result<Option<DistinctnessCertificate>> {
    certify_distinct_with(&default_registry(), p, q)
}
