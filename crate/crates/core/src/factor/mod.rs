//! Irreducible factorization in `Z[H]`.
//!
//! A Laurent polynomial is shifted to an ordinary polynomial with no
//! variable dividing it, its integer content is split into primes, and the
//! primitive part is factored: content in a main variable recursively, then
//! a square-free decomposition, then Zassenhaus (one variable) or
//! evaluation/Hensel lifting (several variables).

mod eisenstein;
pub(crate) mod integer;
mod multivariate;
pub(crate) mod univariate;

use std::collections::BTreeMap;


use crate::error::{Error, Result};
use crate::fraction::LaurentFraction;
use crate::lattice::SurfaceSignature;
use crate::laurent::{LaurentPolynomial, Unit, UnitClass};
use crate::poly::gcd::{content_in, gcd};
use crate::poly::MPoly;

pub use eisenstein::{eisenstein_certificate, EisensteinCertificate, Orientation};

/// `unit · Π factorᵉ`, factors listed in canonical order with nonzero,
/// merged exponents (negative for denominator factors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    signature: SurfaceSignature,
    unit: Unit,
    factors: Vec<(UnitClass, i64)>,
}

impl Factorization {
    pub fn signature(&self) -> SurfaceSignature {
        self.signature
    }

    pub fn unit(&self) -> &Unit {
        &self.unit
    }

    pub fn factors(&self) -> &[(UnitClass, i64)] {
        &self.factors
    }

    pub fn exponent_of(&self, class: &UnitClass) -> i64 {
        self.factors
            .binary_search_by(|(c, _)| c.cmp(class))
            .map_or(0, |i| self.factors[i].1)
    }

    /// `unit · Π factorᵉ` recomputed from the parts.
    pub fn expand(&self) -> LaurentFraction {
        let mut num = self.unit.to_polynomial(self.signature);
        let mut den = LaurentPolynomial::one(self.signature);
        for (c, e) in &self.factors {
            let pw = c.representative().pow(e.unsigned_abs() as u32);
            if *e > 0 {
                num = &num * &pw;
            } else {
                den = &den * &pw;
            }
        }
        LaurentFraction::new(num, den).expect("nonzero")
    }

    /// Human-readable unit, e.g. `-x1^5`.
    pub fn unit_string(&self) -> String {
        self.unit.to_polynomial(self.signature).to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugatePair {
    pub class: UnitClass,
    pub conjugate: UnitClass,
    pub exponent: i64,
    pub conjugate_exponent: i64,
}

impl ConjugatePair {
    pub fn imbalance(&self) -> i64 {
        self.exponent - self.conjugate_exponent
    }
}

/// Classification of the factor classes of a factorization under the
/// involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingReport {
    /// Classes with `μ ≐ μ̄`.
    pub self_conjugate: Vec<(UnitClass, i64)>,
    /// Classes with `μ ≢ μ̄`, each pair listed once. The `class` side is
    /// the first of the two occurring in canonical order.
    pub pairs: Vec<ConjugatePair>,
}

impl PairingReport {
    pub fn is_balanced(&self) -> bool {
        self.pairs.iter().all(|p| p.imbalance() == 0)
    }

    pub fn unpaired(&self) -> impl Iterator<Item = &ConjugatePair> {
        self.pairs.iter().filter(|p| p.exponent == 0 || p.conjugate_exponent == 0)
    }
}

pub fn conjugate_pairing(f: &Factorization) -> PairingReport {
    let mut self_conjugate = Vec::new();
    let mut pairs = Vec::new();
    let mut seen: Vec<&UnitClass> = Vec::new();
    for (class, e) in &f.factors {
        if seen.contains(&class) {
            continue;
        }
        let conj = class.conjugate();
        if &conj == class {
            self_conjugate.push((class.clone(), *e));
            continue;
        }
        let ce = f.exponent_of(&conj);
        pairs.push(ConjugatePair {
            class: class.clone(),
            conjugate: conj.clone(),
            exponent: *e,
            conjugate_exponent: ce,
        });
        seen.push(class);
        if let Some((c, _)) = f.factors.iter().find(|(c, _)| c == &conj) {
            seen.push(c);
        }
    }
    PairingReport { self_conjugate, pairs }
}

/// Complete factorization of a nonzero fraction.
pub fn factor(p: &LaurentFraction) -> Result<Factorization> {
    let num = factor_polynomial(p.numerator())?;
    if p.is_polynomial() {
        return Ok(num);
    }
    let den = factor_polynomial(p.denominator())?;
    let mut merged: BTreeMap<UnitClass, i64> = num.factors.into_iter().collect();
    for (c, e) in den.factors {
        *merged.entry(c).or_default() -= e;
    }
    merged.retain(|_, e| *e != 0);
    Ok(Factorization {
        signature: p.signature(),
        unit: num.unit.mul(&den.unit.inverse()),
        factors: merged.into_iter().collect(),
    })
}

/// Complete factorization of a nonzero polynomial.
pub fn factor_polynomial(p: &LaurentPolynomial) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    let sig = p.signature();
    let mut merged: BTreeMap<UnitClass, i64> = BTreeMap::new();
    for (q, k) in irreducible_factors(p) {
        let class = UnitClass::of(&q.to_laurent(sig)).expect("nonzero factor");
        *merged.entry(class).or_default() += k as i64;
    }
    let factors: Vec<(UnitClass, i64)> = merged.into_iter().collect();

    let product = factors.iter().fold(LaurentPolynomial::one(sig), |acc, (c, e)| {
        &acc * &c.representative().pow(*e as u32)
    });
    let (cp, up) = p.normalize_unit()?;
    let (cq, uq) = product.normalize_unit()?;
    assert_eq!(cp, cq, "factorization does not multiply back");
    Ok(Factorization {
        signature: sig,
        unit: up.mul(&uq.inverse()),
        factors,
    })
}

/// Whether a non-unit nonzero polynomial is irreducible in `Z[H]`.
pub fn is_irreducible(p: &LaurentPolynomial) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    if p.is_unit() {
        return Err(Error::UnitInput(p.to_string()));
    }
    let f = factor_polynomial(p)?;
    Ok(f.factors.len() == 1 && f.factors[0].1 == 1)
}

/// Irreducible ordinary-polynomial factors with multiplicities; integer
/// primes appear as constants.
fn irreducible_factors(p: &LaurentPolynomial) -> Vec<(MPoly, u32)> {
    let (m, _) = MPoly::from_laurent(p);
    let content = m.content();
    let mut out: Vec<(MPoly, u32)> = integer::factor_integer(&content)
        .into_iter()
        .map(|(q, k)| (MPoly::constant(m.nvars, q), k))
        .collect();
    out.extend(factor_primitive(&m.primitive()));
    out
}

fn choose_main_variable(f: &MPoly) -> Option<usize> {
    f.occurring()
        .into_iter()
        .min_by_key(|&v| (f.degree(v), f.lc_in(v).terms.len(), v))
}

/// Factors a polynomial with unit integer content that no variable divides.
fn factor_primitive(f: &MPoly) -> Vec<(MPoly, u32)> {
    let Some(x) = choose_main_variable(f) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let c = content_in(f, x);
    let f = if c.is_constant() {
        f.clone()
    } else {
        out.extend(factor_primitive(&c));
        f.div_exact(&c).expect("content divides")
    };
    for (g, k) in squarefree_decomposition(&f, x) {
        for h in factor_squarefree(&g, x) {
            out.push((h, k));
        }
    }
    out
}

/// Yun's algorithm in `x` over the coefficient ring `Z[other variables]`.
fn squarefree_decomposition(f: &MPoly, x: usize) -> Vec<(MPoly, u32)> {
    let df = f.derivative(x);
    let a0 = gcd(f, &df);
    if a0.is_constant() {
        return vec![(f.clone(), 1)];
    }
    let mut out = Vec::new();
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let mut c = df.div_exact(&a0).expect("gcd divides");
    let mut d = c.sub(&b.derivative(x));
    let mut i = 1;
    loop {
        let a = gcd(&b, &d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a).expect("gcd divides");
        if b.is_constant() {
            break;
        }
        c = d.div_exact(&a).expect("gcd divides");
        d = c.sub(&b.derivative(x));
        i += 1;
    }
    out
}

fn factor_squarefree(g: &MPoly, x: usize) -> Vec<MPoly> {
    let g = g.positive();
    if g.degree(x) == 1 {
        return vec![g];
    }
    if g.occurring() == [x] {
        return univariate::factor_squarefree(&g.to_dense(x))
            .into_iter()
            .map(|u| MPoly::from_dense(g.nvars, x, &u))
            .collect();
    }
    multivariate::factor_squarefree(&g, x)
}
