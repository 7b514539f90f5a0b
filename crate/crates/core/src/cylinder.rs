//! Torsion-level data `(φ, τ)` of homology cylinders as elements of
//! `Aut*(H) ⋉ Q(H)^×`, with stacking, inversion, gluing, tying, and the
//! standard generator families.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::autstar::AutStarElement;
use crate::error::{Error, Result};
use crate::factor::integer::is_probable_prime;
use crate::fox::{torsion_from_presentation, HandlePresentation};
use crate::fraction::LaurentFraction;
use crate::lattice::{ExponentVector, IntMatrix, LatticeMap, SurfaceSignature};
use crate::laurent::LaurentPolynomial;
use crate::syntax::parse_polynomial;

#[derive(Clone)]
pub struct TorsionClass {
    phi: AutStarElement,
    tau: LaurentFraction,
}

impl TorsionClass {
    pub fn new(phi: AutStarElement, tau: LaurentFraction) -> Result<Self> {
        phi.signature().check_same(&tau.signature())?;
        Ok(TorsionClass {
            phi,
            tau: tau.augmentation_normalized(),
        })
    }

    pub fn identity(signature: SurfaceSignature) -> Self {
        TorsionClass {
            phi: AutStarElement::identity(signature),
            tau: LaurentFraction::one(signature),
        }
    }

    /// `(id, τ)`.
    pub fn torelli(tau: LaurentFraction) -> Self {
        TorsionClass::new(AutStarElement::identity(tau.signature()), tau).expect("same signature")
    }

    pub fn signature(&self) -> SurfaceSignature {
        self.phi.signature()
    }

    pub fn phi(&self) -> &AutStarElement {
        &self.phi
    }

    pub fn tau(&self) -> &LaurentFraction {
        &self.tau
    }

    pub fn is_identity(&self) -> bool {
        self.phi.is_identity() && self.tau.is_one()
    }
}

impl PartialEq for TorsionClass {
    fn eq(&self, other: &Self) -> bool {
        self.phi == other.phi && self.tau.eq_up_to_unit(&other.tau).unwrap_or(false)
    }
}

impl Eq for TorsionClass {}

impl fmt::Debug for TorsionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TorsionClass({:?}, {})", self.phi.matrix().to_rows(), self.tau)
    }
}

/// `(φ_M ∘ φ_N, τ_M · φ_M(τ_N))`.
pub fn stack(m: &TorsionClass, n: &TorsionClass) -> Result<TorsionClass> {
    m.signature().check_same(&n.signature())?;
    let tau = m.tau.checked_mul(&m.phi.apply_fraction(&n.tau)?)?;
    TorsionClass::new(m.phi.compose(&n.phi)?, tau)
}

/// `(φ⁻¹, φ⁻¹(τ⁻¹))`.
pub fn invert(m: &TorsionClass) -> TorsionClass {
    let inv = m.phi.inverse();
    let tau = inv.apply_fraction(&m.tau.inverse()).expect("same signature");
    TorsionClass::new(inv, tau).expect("same signature")
}

/// The mapping cylinder of `φ`: `(φ, 1)`.
pub fn mapping_class(phi: &AutStarElement) -> Result<TorsionClass> {
    if !phi.is_valid() {
        return Err(Error::InvalidAutomorphism(format!("{phi:?}")));
    }
    Ok(TorsionClass {
        phi: phi.clone(),
        tau: LaurentFraction::one(phi.signature()),
    })
}

/// Inclusions of `Σ` and `Σ'` into `Σ ∪_{c = c'} Σ'`.
///
/// The target boundary components are those of `Σ` other than `c`
/// followed by those of `Σ'` other than `c'`; the first `n + n' − 3` of
/// them are the basis of `H_∂` and the last one is minus their sum. The
/// glued curve maps to minus the sum of the other components on each side.
/// Symplectic bases are concatenated, `Σ` first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GluingMap {
    pub source: SurfaceSignature,
    pub source_prime: SurfaceSignature,
    /// One-based boundary indices.
    pub c: usize,
    pub c_prime: usize,
    pub target: SurfaceSignature,
    pub i: LatticeMap,
    pub i_prime: LatticeMap,
}

impl GluingMap {
    pub fn new(source: SurfaceSignature, c: usize, source_prime: SurfaceSignature, c_prime: usize) -> Result<Self> {
        let (n, n2) = (source.boundary_components, source_prime.boundary_components);
        if c == 0 || c > n {
            return Err(Error::InvalidGluing(format!("component {c} does not exist on {source}")));
        }
        if c_prime == 0 || c_prime > n2 {
            return Err(Error::InvalidGluing(format!(
                "component {c_prime} does not exist on {source_prime}"
            )));
        }
        let target = SurfaceSignature::new(source.genus + source_prime.genus, n + n2 - 2);
        let bt = target.boundary_rank();
        let last = n + n2 - 2;
        // Class of the m-th target boundary component.
        let target_class = |m: usize| -> ExponentVector {
            let mut v = ExponentVector::zero(target.rank());
            if m + 1 < last {
                v.0[m] = 1;
            } else {
                for k in 0..bt {
                    v.0[k] = -1;
                }
            }
            v
        };
        let side = |sig: SurfaceSignature, glued: usize, offset: usize, sym_offset: usize| -> Result<LatticeMap> {
            let nb = sig.boundary_components;
            // Target index of each surviving component, one-based in `sig`.
            let slot = |k: usize| offset + if k < glued { k - 1 } else { k - 2 };
            let mut others = ExponentVector::zero(target.rank());
            for k in (1..=nb).filter(|&k| k != glued) {
                others = &others + &target_class(slot(k));
            }
            let mut columns = Vec::with_capacity(sig.rank());
            for k in 1..nb {
                columns.push(if k == glued { -&others } else { target_class(slot(k)) });
            }
            for j in 0..sig.symplectic_rank() {
                columns.push(ExponentVector::unit(target.rank(), bt + sym_offset + j));
            }
            LatticeMap::new(sig, target, IntMatrix::from_columns(target.rank(), &columns)?)
        };
        let i = side(source, c, 0, 0)?;
        let i_prime = side(source_prime, c_prime, n - 1, source.symplectic_rank())?;
        Ok(GluingMap {
            source,
            source_prime,
            c,
            c_prime,
            target,
            i,
            i_prime,
        })
    }
}

/// `τ = i(τ_M) · i'(τ_{M'})`; `φ` acts as `φ_M`, `φ_{M'}` on the two
/// symplectic blocks and fixes the boundary.
pub fn glue(m: &TorsionClass, m_prime: &TorsionClass, map: &GluingMap) -> Result<TorsionClass> {
    if m.signature() != map.source || m_prime.signature() != map.source_prime {
        return Err(Error::InvalidGluing(format!(
            "cylinders over {} and {} do not match a gluing of {} and {}",
            m.signature(),
            m_prime.signature(),
            map.source,
            map.source_prime
        )));
    }
    let tau = m.tau.substitute(&map.i)?.checked_mul(&m_prime.tau.substitute(&map.i_prime)?)?;
    let target = map.target;
    let bt = target.boundary_rank();
    let mut matrix = IntMatrix::identity(target.rank());
    let mut place = |cyl: &TorsionClass, inc: &LatticeMap, sym_offset: usize| -> Result<()> {
        let sig = cyl.signature();
        let b = sig.boundary_rank();
        for j in 0..sig.symplectic_rank() {
            let image = inc.apply(&cyl.phi.matrix().column(b + j))?;
            for r in 0..target.rank() {
                matrix[(r, bt + sym_offset + j)] = image.0[r];
            }
        }
        Ok(())
    };
    place(m, &map.i, 0)?;
    place(m_prime, &map.i_prime, map.source.symplectic_rank())?;
    let phi = AutStarElement::from_matrix(target, matrix)
        .map_err(|e| Error::InvalidGluing(format!("assembled automorphism is invalid: {e}")))?;
    TorsionClass::new(phi, tau)
}

fn check_augmentation(p: &LaurentPolynomial) -> Result<()> {
    if p.is_zero() || !p.augment().abs().is_one() {
        return Err(Error::Augmentation(p.augment().to_string()));
    }
    Ok(())
}

/// Ties a knot with Alexander polynomial `Δ(t)` along a curve of class `h`:
/// `τ ↦ τ · Δ(h)`.
pub fn tie_knot(m: &TorsionClass, alexander: &LaurentPolynomial, h: &ExponentVector) -> Result<TorsionClass> {
    alexander.signature().check_same(&SurfaceSignature::annulus())?;
    if h.rank() != m.signature().rank() {
        return Err(Error::DimensionMismatch {
            expected: m.signature().rank(),
            found: h.rank(),
        });
    }
    if h.is_zero() {
        return Err(Error::InvalidArgument("the curve class h must be nonzero".into()));
    }
    tie_string_link(m, alexander, &LatticeMap::evaluation_at(m.signature(), h)?)
}

/// `τ ↦ τ · map(τ_β)` for a string link torsion `τ_β` with augmentation
/// `±1`.
pub fn tie_string_link(m: &TorsionClass, link_torsion: &LaurentPolynomial, map: &LatticeMap) -> Result<TorsionClass> {
    check_augmentation(link_torsion)?;
    m.signature().check_same(&map.target)?;
    let factor = LaurentFraction::from_polynomial(link_torsion.substitute(map)?)?;
    TorsionClass::new(m.phi.clone(), m.tau.checked_mul(&factor)?)
}

/// `p_a = 1 + Σ_{k=1}^{a} y^{k−1}(y − 1)x^k` with `x = x1`, `y = y1`.
pub fn p_a(signature: SurfaceSignature, a: usize) -> Result<LaurentPolynomial> {
    if a == 0 {
        return Err(Error::InvalidArgument("a must be positive".into()));
    }
    if signature.genus == 0 || signature.boundary_components < 2 {
        return Err(Error::InvalidArgument(format!(
            "p_a needs genus ≥ 1 and at least two boundary components, got {signature}"
        )));
    }
    let (x, y) = (0, signature.boundary_rank());
    let mono = |i: i64, j: i64| {
        let mut e = ExponentVector::zero(signature.rank());
        e.0[x] = i;
        e.0[y] = j;
        e
    };
    let mut terms = vec![(mono(0, 0), 1i64)];
    for k in 1..=a as i64 {
        terms.push((mono(k, k), 1));
        terms.push((mono(k, k - 1), -1));
    }
    Ok(LaurentPolynomial::from_terms(signature, terms))
}

/// `M(a)` in its Torelli form `(id, p_a)`; the surface has `n = 2`.
pub fn gen_ma(a: usize, signature: SurfaceSignature) -> Result<TorsionClass> {
    if signature.boundary_components != 2 || signature.genus == 0 {
        return Err(Error::InvalidArgument(format!(
            "M(a) is defined over surfaces with g ≥ 1 and n = 2, got {signature}"
        )));
    }
    Ok(TorsionClass::torelli(p_a(signature, a)?.into()))
}

/// `Δ_i(t) = i²t² − (2i² + 1)t + i²` over the annulus.
pub fn alexander_delta(i: i64) -> LaurentPolynomial {
    let sq = BigInt::from(i) * i;
    LaurentPolynomial::from_terms(
        SurfaceSignature::annulus(),
        [
            (ExponentVector(vec![0]), sq.clone()),
            (ExponentVector(vec![1]), -(&sq * 2i32 + 1i32)),
            (ExponentVector(vec![2]), sq),
        ],
    )
}

/// `Δ_i(h)`.
pub fn delta_i(signature: SurfaceSignature, i: i64, h: &ExponentVector) -> Result<LaurentPolynomial> {
    alexander_delta(i).substitute(&LatticeMap::evaluation_at(signature, h)?)
}

/// `(r + s)(t + s) − s²`; the pretzel cylinder exists iff this is `±1`.
pub fn pretzel_validity(r: i64, s: i64, t: i64) -> i64 {
    (r + s) * (t + s) - s * s
}

fn geometric(sig: SurfaceSignature, step: &ExponentVector, n: i64) -> LaurentPolynomial {
    LaurentPolynomial::from_terms(sig, (0..n).map(|k| (step.scaled(k), 1)))
}

/// Closed form of the pretzel torsion for `r, s > 0 > t`, with `a = x1`,
/// `b = x2`:
/// `A·B + a^r·B·S − a·b^{|t|−1}·A·S` where `A = Σ_{k<r} a^k`,
/// `B = Σ_{k<|t|} b^k`, `S = Σ_{k<s} (ab⁻¹)^k`.
pub fn pretzel_closed_form(r: i64, s: i64, t: i64) -> Result<LaurentPolynomial> {
    if !(r > 0 && s > 0 && t < 0) {
        return Err(Error::InvalidArgument("the closed form needs r, s > 0 > t".into()));
    }
    let sig = SurfaceSignature::new(0, 3);
    let a = ExponentVector(vec![1, 0]);
    let b = ExponentVector(vec![0, 1]);
    let big_a = geometric(sig, &a, r);
    let big_b = geometric(sig, &b, -t);
    let big_s = geometric(sig, &(&a - &b), s);
    let first = &big_a * &big_b;
    let second = (&big_b * &big_s).shift(&a.scaled(r));
    let third = (&big_a * &big_s).shift(&(&a + &b.scaled(-t - 1)));
    Ok(&(&first + &second) - &third)
}

/// The pretzel cylinder over `Σ_{0,3}`; `Aut*(H)` is trivial there, so
/// `φ = id`. The torsion comes from the Fox determinant and is checked
/// against the closed form whenever that applies.
pub fn gen_pretzel(r: i64, s: i64, t: i64) -> Result<TorsionClass> {
    let v = pretzel_validity(r, s, t);
    if v.abs() != 1 {
        return Err(Error::NotCylinder(format!("(r+s)(t+s)-s^2 = {v}, expected ±1")));
    }
    let tau = torsion_from_presentation(&HandlePresentation::pretzel(r, s, t))?;
    if r > 0 && s > 0 && t < 0 {
        let closed = pretzel_closed_form(r, s, t)?;
        assert!(
            tau.eq_up_to_unit(&closed)?,
            "Fox determinant disagrees with the closed form for ({r}, {s}, {t})"
        );
    }
    Ok(TorsionClass::torelli(tau.into()))
}

/// All `(x + d, x + e, −x)` with `d·e = 1 + x²`, in increasing `d`.
pub fn pretzel_family_search(x: i64) -> Result<Vec<(i64, i64, i64)>> {
    if x < 3 || !is_probable_prime(&BigInt::from(x)) {
        return Err(Error::InvalidArgument(format!("{x} is not an odd prime")));
    }
    let n = 1 + x * x;
    Ok((1..=n)
        .filter(|d| n % d == 0)
        .map(|d| (x + d, x + n / d, -x))
        .collect())
}

/// Coefficients of the lowest and highest powers of `variable`, as
/// polynomials in the remaining variables.
pub fn extreme_coefficients(p: &LaurentPolynomial, variable: usize) -> Result<(LaurentPolynomial, LaurentPolynomial)> {
    let (lo, hi) = match (p.min_exponents(), p.max_exponents()) {
        (Some(lo), Some(hi)) => (lo.0[variable], hi.0[variable]),
        _ => return Err(Error::ZeroInput),
    };
    let slice = |k: i64| {
        LaurentPolynomial::from_terms(
            p.signature(),
            p.terms().filter(|(e, _)| e.0[variable] == k).map(|(e, c)| {
                let mut e = e.clone();
                e.0[variable] = 0;
                (e, c.clone())
            }),
        )
    };
    Ok((slice(lo), slice(hi)))
}

/// `1 + b + ⋯ + b^{n−1}` in `x2` over `Σ_{0,3}`.
pub fn pretzel_b_series(n: i64) -> LaurentPolynomial {
    geometric(SurfaceSignature::new(0, 3), &ExponentVector(vec![0, 1]), n)
}

/// Parses a one-variable Alexander polynomial in `t`.
pub fn parse_alexander(text: &str) -> Result<LaurentPolynomial> {
    parse_polynomial(text, SurfaceSignature::annulus())
}
