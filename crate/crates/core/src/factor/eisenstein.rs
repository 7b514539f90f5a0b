//! Eisenstein-type irreducibility certificates over the Laurent ring in the
//! remaining variables.

use crate::error::{Error, Result};
use crate::laurent::{LaurentPolynomial, UnitClass};
use crate::poly::gcd::gcd;
use crate::poly::MPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `π | a_0, …, a_{n-1}`, `π ∤ a_n`, `π² ∤ a_0`.
    Direct,
    /// `π ∤ a_0`, `π | a_1, …, a_n`, `π² ∤ a_n`.
    Reversed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EisensteinCertificate {
    pub variable: usize,
    pub prime: UnitClass,
    pub orientation: Orientation,
}

/// Searches for an Eisenstein certificate of `p` as a polynomial in
/// `variable`. A certificate proves irreducibility of the primitive part
/// with respect to `variable`; primitivity is not checked here.
pub fn eisenstein_certificate(p: &LaurentPolynomial, variable: usize) -> Result<Option<EisensteinCertificate>> {
    if p.is_zero() {
        return Err(Error::ZeroInput);
    }
    let sig = p.signature();
    if variable >= sig.rank() {
        return Err(Error::InvalidArgument(format!("variable index {variable} out of range")));
    }
    let (m, _) = MPoly::from_laurent(p);
    let coeffs = m.coefficients_in(variable);
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(None);
    }
    for orientation in [Orientation::Direct, Orientation::Reversed] {
        let (range, top, bottom) = match orientation {
            Orientation::Direct => (0..n, &coeffs[n], &coeffs[0]),
            Orientation::Reversed => (1..n + 1, &coeffs[0], &coeffs[n]),
        };
        let g = coeffs[range]
            .iter()
            .fold(MPoly::zero(m.nvars), |acc, c| gcd(&acc, c));
        if g.is_zero() || g.is_constant() && g.constant_value() == 1.into() {
            continue;
        }
        let candidates = super::factor_polynomial(&g.to_laurent(sig))?;
        for (prime, _) in candidates.factors() {
            let (pi, _) = MPoly::from_laurent(prime.representative());
            if top.div_exact(&pi).is_some() {
                continue;
            }
            if bottom.div_exact(&pi.mul(&pi)).is_some() {
                continue;
            }
            return Ok(Some(EisensteinCertificate {
                variable,
                prime: prime.clone(),
                orientation,
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::SurfaceSignature;
    use crate::syntax::parse_polynomial;

    #[test]
    fn classical_and_reversed() {
        let ann = SurfaceSignature::annulus();
        let c = eisenstein_certificate(&parse_polynomial("t^2 - 2", ann).unwrap(), 0)
            .unwrap()
            .unwrap();
        assert_eq!(c.prime.to_string(), "2");
        assert_eq!(c.orientation, Orientation::Direct);
        assert!(eisenstein_certificate(&parse_polynomial("1 - t^2", ann).unwrap(), 0)
            .unwrap()
            .is_none());
    }

    #[test]
    fn p_a_is_certified_at_y_minus_one() {
        let sig = SurfaceSignature::new(1, 2);
        for a in 1..=6 {
            let pa = crate::cylinder::p_a(sig, a).unwrap();
            let c = eisenstein_certificate(&pa, 0).unwrap().unwrap();
            assert_eq!(c.prime.to_string(), "1 - y1");
            assert_eq!(c.orientation, Orientation::Reversed);
        }
    }
}
