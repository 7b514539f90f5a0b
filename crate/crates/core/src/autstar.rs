//! The group `Aut*(H)` of automorphisms of `H = H_∂ × Ĥ` that fix `H_∂` and
//! preserve the intersection form: block matrices `[[I, B], [0, P₀]]` with
//! `P₀ᵀ J P₀ = J`, acting on column vectors.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::fraction::LaurentFraction;
use crate::lattice::{ExponentVector, IntMatrix, LatticeMap, SurfaceSignature};
use crate::laurent::{LaurentPolynomial, UnitClass};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AutStarElement {
    signature: SurfaceSignature,
    matrix: IntMatrix,
}

/// The standard symplectic form on `Z^{2g}`, block-diagonal in the pairs
/// `(y_{2i-1}, y_{2i})`.
pub fn standard_form(genus: usize) -> IntMatrix {
    let mut j = IntMatrix::zeros(2 * genus, 2 * genus);
    for i in 0..genus {
        j[(2 * i, 2 * i + 1)] = 1;
        j[(2 * i + 1, 2 * i)] = -1;
    }
    j
}

impl AutStarElement {
    pub fn identity(signature: SurfaceSignature) -> Self {
        AutStarElement {
            signature,
            matrix: IntMatrix::identity(signature.rank()),
        }
    }

    /// Validates the block form and the symplectic condition.
    pub fn from_matrix(signature: SurfaceSignature, matrix: IntMatrix) -> Result<Self> {
        let n = signature.rank();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.rows().max(matrix.cols()),
            });
        }
        let b = signature.boundary_rank();
        for i in 0..n {
            for j in 0..b {
                if matrix[(i, j)] != i64::from(i == j) {
                    return Err(Error::InvalidAutomorphism(
                        "boundary columns must be the identity".into(),
                    ));
                }
            }
        }
        let el = AutStarElement { signature, matrix };
        let p0 = el.symplectic_block();
        let j = standard_form(signature.genus);
        if p0.transpose().mul(&j)?.mul(&p0)? != j {
            return Err(Error::InvalidAutomorphism(
                "symplectic block does not preserve the intersection form".into(),
            ));
        }
        Ok(el)
    }

    pub fn from_blocks(signature: SurfaceSignature, mixing: &IntMatrix, symplectic: &IntMatrix) -> Result<Self> {
        let b = signature.boundary_rank();
        let s = signature.symplectic_rank();
        if mixing.rows() != b || mixing.cols() != s {
            return Err(Error::DimensionMismatch {
                expected: b * s,
                found: mixing.rows() * mixing.cols(),
            });
        }
        if symplectic.rows() != s || symplectic.cols() != s {
            return Err(Error::DimensionMismatch {
                expected: s,
                found: symplectic.rows(),
            });
        }
        let mut m = IntMatrix::identity(b + s);
        for i in 0..b {
            for j in 0..s {
                m[(i, b + j)] = mixing[(i, j)];
            }
        }
        for i in 0..s {
            for j in 0..s {
                m[(b + i, b + j)] = symplectic[(i, j)];
            }
        }
        AutStarElement::from_matrix(signature, m)
    }

    pub fn signature(&self) -> SurfaceSignature {
        self.signature
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn mixing_block(&self) -> IntMatrix {
        let b = self.signature.boundary_rank();
        let s = self.signature.symplectic_rank();
        let mut m = IntMatrix::zeros(b, s);
        for i in 0..b {
            for j in 0..s {
                m[(i, j)] = self.matrix[(i, b + j)];
            }
        }
        m
    }

    pub fn symplectic_block(&self) -> IntMatrix {
        let b = self.signature.boundary_rank();
        let s = self.signature.symplectic_rank();
        let mut m = IntMatrix::zeros(s, s);
        for i in 0..s {
            for j in 0..s {
                m[(i, j)] = self.matrix[(b + i, b + j)];
            }
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn is_valid(&self) -> bool {
        AutStarElement::from_matrix(self.signature, self.matrix.clone()).is_ok()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AutStarElement) -> Result<AutStarElement> {
        self.signature.check_same(&other.signature)?;
        Ok(AutStarElement {
            signature: self.signature,
            matrix: self.matrix.mul(&other.matrix)?,
        })
    }

    /// `[[I, -B P₀⁻¹], [0, P₀⁻¹]]` with `P₀⁻¹ = Jᵀ P₀ᵀ J`.
    pub fn inverse(&self) -> AutStarElement {
        let j = standard_form(self.signature.genus);
        let p0 = self.symplectic_block();
        let p0_inv = j.transpose().mul(&p0.transpose()).and_then(|m| m.mul(&j)).expect("square");
        let b_inv = self.mixing_block().mul(&p0_inv).expect("shapes");
        let neg = {
            let mut m = b_inv.clone();
            for i in 0..m.rows() {
                for k in 0..m.cols() {
                    m[(i, k)] = -b_inv[(i, k)];
                }
            }
            m
        };
        AutStarElement::from_blocks(self.signature, &neg, &p0_inv).expect("inverse of a valid element")
    }

    pub fn lattice_map(&self) -> LatticeMap {
        LatticeMap {
            source: self.signature,
            target: self.signature,
            matrix: self.matrix.clone(),
        }
    }

    pub fn apply_vector(&self, h: &ExponentVector) -> Result<ExponentVector> {
        self.matrix.apply(h)
    }

    /// The ring automorphism `h ↦ φ(h)` of `Z[H]`.
    pub fn apply(&self, p: &LaurentPolynomial) -> Result<LaurentPolynomial> {
        p.substitute(&self.lattice_map())
    }

    pub fn apply_fraction(&self, p: &LaurentFraction) -> Result<LaurentFraction> {
        p.substitute(&self.lattice_map())
    }

    /// Standard generating set: `S`, `T` for genus one, symplectic
    /// transvections along `e_i` and `e_i + e_j` for higher genus, and the
    /// elementary mixing matrices with a single `+1` entry.
    pub fn generators(signature: SurfaceSignature) -> Vec<AutStarElement> {
        let g = signature.genus;
        let b = signature.boundary_rank();
        let s = 2 * g;
        let mut out = Vec::new();
        let zero_mix = IntMatrix::zeros(b, s);
        let mut push_symplectic = |p0: IntMatrix| {
            out.push(AutStarElement::from_blocks(signature, &zero_mix, &p0).expect("symplectic generator"));
        };
        if g == 1 {
            push_symplectic(IntMatrix::from_rows(&[vec![0, -1], vec![1, 0]]).unwrap());
            push_symplectic(IntMatrix::from_rows(&[vec![1, 1], vec![0, 1]]).unwrap());
        } else if g > 1 {
            let mut vectors = Vec::new();
            for i in 0..s {
                vectors.push(ExponentVector::unit(s, i));
            }
            for i in 0..s {
                for k in i + 1..s {
                    let mut v = ExponentVector::zero(s);
                    v.0[i] = 1;
                    v.0[k] = 1;
                    vectors.push(v);
                }
            }
            for v in &vectors {
                push_symplectic(transvection(g, v));
            }
        }
        for i in 0..b {
            for k in 0..s {
                let mut mix = IntMatrix::zeros(b, s);
                mix[(i, k)] = 1;
                out.push(
                    AutStarElement::from_blocks(signature, &mix, &IntMatrix::identity(s)).expect("mixing generator"),
                );
            }
        }
        out
    }
}

/// `T_v(u) = u + ω(u, v) v`, i.e. `I + v (J v)ᵀ`.
pub fn transvection(genus: usize, v: &ExponentVector) -> IntMatrix {
    let s = 2 * genus;
    let j = standard_form(genus);
    let jv = j.apply(v).expect("shape");
    let mut m = IntMatrix::identity(s);
    for r in 0..s {
        for c in 0..s {
            m[(r, c)] += v.0[r] * jv.0[c];
        }
    }
    m
}

impl fmt::Debug for AutStarElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AutStar[{}]{:?}", self.signature, self.matrix.to_rows())
    }
}

/// Breadth-first search for `φ` with `p ≐ φ(q)` over generator words of
/// length at most `depth`. Words are explored in shortlex order (each
/// generator followed by its inverse), so the witness returned is the first
/// one at minimal depth.
pub fn search_equivalence(p: &LaurentPolynomial, q: &LaurentPolynomial, depth: usize) -> Result<Option<AutStarElement>> {
    p.signature().check_same(&q.signature())?;
    let sig = p.signature();
    let target = UnitClass::of(p)?;
    UnitClass::of(q)?;
    let moves: Vec<AutStarElement> = AutStarElement::generators(sig)
        .into_iter()
        .flat_map(|g| {
            let inv = g.inverse();
            if inv == g {
                vec![g]
            } else {
                vec![g, inv]
            }
        })
        .collect();
    let id = AutStarElement::identity(sig);
    let mut seen: HashSet<IntMatrix> = HashSet::from([id.matrix.clone()]);
    let mut frontier: VecDeque<(AutStarElement, usize)> = VecDeque::from([(id, 0)]);
    while let Some((phi, d)) = frontier.pop_front() {
        if UnitClass::of(&phi.apply(q)?)? == target {
            return Ok(Some(phi));
        }
        if d == depth {
            continue;
        }
        for m in &moves {
            let next = phi.compose(m)?;
            if seen.insert(next.matrix.clone()) {
                frontier.push_back((next, d + 1));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_polynomial;
    use proptest::prelude::*;

    #[test]
    fn genus_zero_has_no_generators() {
        assert!(AutStarElement::generators(SurfaceSignature::new(0, 1)).is_empty());
        assert_eq!(AutStarElement::generators(SurfaceSignature::new(0, 3)).len(), 0);
    }

    #[test]
    fn genus_one_generators_are_s_and_t() {
        let gens = AutStarElement::generators(SurfaceSignature::new(1, 1));
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].matrix().to_rows(), vec![vec![0, -1], vec![1, 0]]);
        assert_eq!(gens[1].matrix().to_rows(), vec![vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn every_generator_is_valid() {
        for sig in [
            SurfaceSignature::new(1, 2),
            SurfaceSignature::new(2, 1),
            SurfaceSignature::new(2, 3),
            SurfaceSignature::new(3, 0),
        ] {
            for g in AutStarElement::generators(sig) {
                assert!(g.is_valid(), "{g:?}");
                assert!(g.inverse().is_valid());
                assert!(g.compose(&g.inverse()).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn transvection_action_on_y1() {
        let sig = SurfaceSignature::new(1, 2);
        let phi = AutStarElement::from_blocks(
            sig,
            &IntMatrix::zeros(1, 2),
            &IntMatrix::from_rows(&[vec![1, 0], vec![1, 1]]).unwrap(),
        )
        .unwrap();
        let y1 = parse_polynomial("y1", sig).unwrap();
        assert_eq!(phi.apply(&y1).unwrap(), parse_polynomial("y1*y2", sig).unwrap());
        let x1 = parse_polynomial("x1", sig).unwrap();
        assert_eq!(phi.apply(&x1).unwrap(), x1);
    }

    #[test]
    fn rejects_non_symplectic_and_bad_block_form() {
        let sig = SurfaceSignature::new(1, 2);
        let m = IntMatrix::from_rows(&[vec![1, 0, 0], vec![0, 2, 0], vec![0, 0, 1]]).unwrap();
        assert!(matches!(AutStarElement::from_matrix(sig, m), Err(Error::InvalidAutomorphism(_))));
        let m = IntMatrix::from_rows(&[vec![1, 0, 0], vec![1, 1, 0], vec![0, 0, 1]]).unwrap();
        assert!(matches!(AutStarElement::from_matrix(sig, m), Err(Error::InvalidAutomorphism(_))));
    }

    #[test]
    fn inverse_formula_matches_product() {
        let sig = SurfaceSignature::new(2, 3);
        let gens = AutStarElement::generators(sig);
        let w = gens[3].compose(&gens[17]).unwrap().compose(&gens[12].inverse()).unwrap();
        assert!(w.compose(&w.inverse()).unwrap().is_identity());
        assert!(w.inverse().compose(&w).unwrap().is_identity());
        assert!(AutStarElement::identity(sig).inverse().is_identity());
    }

    #[test]
    fn bfs_finds_planted_move() {
        let sig = SurfaceSignature::new(1, 2);
        let gens = AutStarElement::generators(sig);
        let p = parse_polynomial("1 - x1 + 2*x1*y1 + y2^2", sig).unwrap();
        let phi0 = gens[1].compose(&gens[2]).unwrap();
        let moved = &phi0.apply(&p).unwrap() * &parse_polynomial("-x1^3*y2", sig).unwrap();
        let w = search_equivalence(&moved, &p, 2).unwrap().unwrap();
        assert!(moved.eq_up_to_unit(&w.apply(&p).unwrap()).unwrap());
        let w0 = search_equivalence(&p, &p, 0).unwrap().unwrap();
        assert!(w0.is_identity());
    }

    fn arb_word(sig: SurfaceSignature) -> impl Strategy<Value = AutStarElement> {
        let gens = AutStarElement::generators(sig);
        let n = gens.len();
        prop::collection::vec((0..n, any::<bool>()), 0..6).prop_map(move |w| {
            w.into_iter().fold(AutStarElement::identity(sig), |acc, (i, inv)| {
                let g = if inv { gens[i].inverse() } else { gens[i].clone() };
                acc.compose(&g).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn products_stay_in_aut_star(phi in arb_word(SurfaceSignature::new(2, 2))) {
            prop_assert!(phi.is_valid());
            prop_assert!(phi.compose(&phi.inverse()).unwrap().is_identity());
        }

        #[test]
        fn action_is_a_ring_automorphism(phi in arb_word(SurfaceSignature::new(1, 3)), a in 0i64..5, b in -3i64..4) {
            let sig = SurfaceSignature::new(1, 3);
            let p = parse_polynomial(&format!("{a} + x1*y1 - x2^{b}*y2"), sig).unwrap();
            let q = parse_polynomial("1 + y1 + x1*x2", sig).unwrap();
            prop_assert_eq!(phi.apply(&(&p * &q)).unwrap(), &phi.apply(&p).unwrap() * &phi.apply(&q).unwrap());
            prop_assert_eq!(phi.apply(&p).unwrap().augment(), p.augment());
        }
    }
}
