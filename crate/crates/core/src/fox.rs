//! Free-group words, Fox derivatives, and torsion of cylinders presented by
//! a handlebody with attaching words.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{ExponentVector, IntMatrix, SurfaceSignature};
use crate::laurent::LaurentPolynomial;

/// A freely reduced word; letters are `(generator, ±1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord {
    letters: Vec<(usize, i8)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(i: usize) -> Self {
        FreeWord { letters: vec![(i, 1)] }
    }

    /// Builds the reduced form of an arbitrary letter sequence.
    pub fn from_letters(letters: impl IntoIterator<Item = (usize, i8)>) -> Self {
        let mut out: Vec<(usize, i8)> = Vec::new();
        for (g, e) in letters {
            assert!(e == 1 || e == -1, "letters have exponent ±1");
            match out.last() {
                Some(&(h, f)) if h == g && f == -e => {
                    out.pop();
                }
                _ => out.push((g, e)),
            }
        }
        FreeWord { letters: out }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        FreeWord::from_letters(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        FreeWord::from_letters((0..k.unsigned_abs()).flat_map(|_| base.letters.iter().copied()))
    }

    /// Largest generator index plus one.
    pub fn min_rank(&self) -> usize {
        self.letters.iter().map(|(g, _)| g + 1).max().unwrap_or(0)
    }

    /// Exponent sums.
    pub fn abelianize(&self, rank: usize) -> Vec<i64> {
        let mut v = vec![0; rank];
        for &(g, e) in &self.letters {
            v[g] += i64::from(e);
        }
        v
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut i = 0;
        while i < self.letters.len() {
            let (g, e) = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == (g, e) {
                run += 1;
            }
            let name = if g < 26 {
                char::from(b'a' + g as u8).to_string()
            } else {
                format!("g{}", g + 1)
            };
            let k = run as i64 * i64::from(e);
            if k == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{k}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Parses a word: generators `a`..`z` or `g1`, `g2`, …, `^` with a signed
/// integer exponent, parentheses, juxtaposition for products, `1` for the
/// empty word.
pub fn parse_word(text: &str) -> Result<FreeWord> {
    let mut p = WordParser { s: text.as_bytes(), pos: 0 };
    let w = p.word()?;
    p.skip_ws();
    if p.pos < p.s.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(w)
}

/// Comma-separated list of words.
pub fn parse_words(text: &str) -> Result<Vec<FreeWord>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for part in text.split(',') {
        out.push(parse_word(part).map_err(|e| match e {
            Error::Syntax { offset: o, message } => Error::Syntax {
                offset: o + offset,
                message,
            },
            other => other,
        })?);
        offset += part.len() + 1;
    }
    Ok(out)
}

struct WordParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl WordParser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn word(&mut self) -> Result<FreeWord> {
        let mut w = FreeWord::identity();
        let mut any = false;
        while let Some(c) = self.peek() {
            if !(c.is_ascii_lowercase() || c == b'(' || c == b'1') {
                break;
            }
            w = w.mul(&self.factor()?);
            any = true;
        }
        if !any {
            return Err(self.error("expected a word"));
        }
        Ok(w)
    }

    fn factor(&mut self) -> Result<FreeWord> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            if matches!(self.s.get(self.pos), Some(b'-') | Some(b'+')) {
                self.pos += 1;
            }
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
            let k: i64 = text.parse().map_err(|_| Error::Syntax {
                offset: start,
                message: "expected an integer exponent".into(),
            })?;
            if k.unsigned_abs() > 1 << 20 {
                return Err(Error::Syntax {
                    offset: start,
                    message: "exponent too large".into(),
                });
            }
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<FreeWord> {
        let c = self.peek().ok_or_else(|| self.error("expected a generator"))?;
        match c {
            b'(' => {
                self.pos += 1;
                let w = self.word()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(w)
            }
            b'1' => {
                self.pos += 1;
                Ok(FreeWord::identity())
            }
            b'g' if self.s.get(self.pos + 1).is_some_and(u8::is_ascii_digit) => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let k: usize = std::str::from_utf8(&self.s[start + 1..self.pos])
                    .expect("ascii")
                    .parse()
                    .map_err(|_| Error::Syntax {
                        offset: start,
                        message: "generator index too large".into(),
                    })?;
                if k == 0 {
                    return Err(Error::Syntax {
                        offset: start,
                        message: "generators are numbered from g1".into(),
                    });
                }
                Ok(FreeWord::generator(k - 1))
            }
            b'a'..=b'z' => {
                self.pos += 1;
                Ok(FreeWord::generator(usize::from(c - b'a')))
            }
            _ => Err(self.error("expected a generator")),
        }
    }
}

/// A formal integer combination of words.
pub type FoxSum = BTreeMap<FreeWord, i64>;

/// `∂w/∂x_gen` by the product rule: each occurrence of `x` contributes its
/// prefix, each occurrence of `x⁻¹` minus the prefix including it.
pub fn fox_derivative(w: &FreeWord, generator: usize) -> FoxSum {
    let mut out = FoxSum::new();
    for (i, &(g, e)) in w.letters.iter().enumerate() {
        if g != generator {
            continue;
        }
        let (prefix, sign) = if e == 1 {
            (FreeWord { letters: w.letters[..i].to_vec() }, 1)
        } else {
            (FreeWord { letters: w.letters[..=i].to_vec() }, -1)
        };
        *out.entry(prefix).or_default() += sign;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Pushes a formal combination into `Z[H]` along `x_i ↦ column i`.
pub fn abelianize_sum(sum: &FoxSum, identification: &IntMatrix, target: SurfaceSignature) -> Result<LaurentPolynomial> {
    let mut terms = Vec::with_capacity(sum.len());
    for (w, c) in sum {
        let ab = ExponentVector(w.abelianize(identification.cols().max(w.min_rank())));
        if ab.rank() != identification.cols() {
            return Err(Error::DimensionMismatch {
                expected: identification.cols(),
                found: ab.rank(),
            });
        }
        terms.push((identification.apply(&ab)?, *c));
    }
    Ok(LaurentPolynomial::from_terms(target, terms))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HandlePresentation {
    free_rank: usize,
    words: Vec<FreeWord>,
    target: SurfaceSignature,
    identification: IntMatrix,
}

impl HandlePresentation {
    /// `identification` has `target.rank()` rows and `free_rank` columns.
    pub fn new(
        free_rank: usize,
        words: Vec<FreeWord>,
        target: SurfaceSignature,
        identification: IntMatrix,
    ) -> Result<Self> {
        if words.len() != free_rank {
            return Err(Error::DimensionMismatch {
                expected: free_rank,
                found: words.len(),
            });
        }
        if let Some(w) = words.iter().find(|w| w.min_rank() > free_rank) {
            return Err(Error::InvalidArgument(format!(
                "word {w} uses a generator beyond rank {free_rank}"
            )));
        }
        if identification.rows() != target.rank() || identification.cols() != free_rank {
            return Err(Error::DimensionMismatch {
                expected: target.rank() * free_rank,
                found: identification.rows() * identification.cols(),
            });
        }
        Ok(HandlePresentation {
            free_rank,
            words,
            target,
            identification,
        })
    }

    /// Words over a free group whose abelianization is `H` itself, with
    /// `x_i ↦` the `i`-th basis vector.
    pub fn with_standard_identification(target: SurfaceSignature, words: Vec<FreeWord>) -> Result<Self> {
        let r = target.rank();
        HandlePresentation::new(r, words, target, IntMatrix::identity(r))
    }

    /// `α = a^r (a b⁻¹)^s`, `β = b^{-t} (a b⁻¹)^s` over `Σ_{0,3}` with
    /// `a = x1`, `b = x2`.
    pub fn pretzel(r: i64, s: i64, t: i64) -> Self {
        let a = FreeWord::generator(0);
        let b = FreeWord::generator(1);
        let ab = a.mul(&b.inverse()).pow(s);
        let alpha = a.pow(r).mul(&ab);
        let beta = b.pow(-t).mul(&ab);
        HandlePresentation::with_standard_identification(SurfaceSignature::new(0, 3), vec![alpha, beta])
            .expect("pretzel shape")
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn words(&self) -> &[FreeWord] {
        &self.words
    }

    pub fn target(&self) -> SurfaceSignature {
        self.target
    }

    pub fn identification(&self) -> &IntMatrix {
        &self.identification
    }
}

/// Rows indexed by generators, columns by words: entry `(i, j)` is
/// `∂w_j/∂x_i` in `Z[H]`.
pub fn abelianized_matrix(pres: &HandlePresentation) -> Result<Vec<Vec<LaurentPolynomial>>> {
    (0..pres.free_rank)
        .map(|i| {
            pres.words
                .iter()
                .map(|w| abelianize_sum(&fox_derivative(w, i), &pres.identification, pres.target))
                .collect()
        })
        .collect()
}

/// Integer exponent-sum matrix, same layout as [`abelianized_matrix`].
pub fn exponent_matrix(pres: &HandlePresentation) -> IntMatrix {
    let mut m = IntMatrix::zeros(pres.free_rank, pres.free_rank);
    for (j, w) in pres.words.iter().enumerate() {
        for (i, e) in w.abelianize(pres.free_rank).into_iter().enumerate() {
            m[(i, j)] = e;
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CylinderCondition {
    pub holds: bool,
    pub determinant: i128,
    pub exponent_matrix: IntMatrix,
}

pub fn cylinder_condition(pres: &HandlePresentation) -> Result<CylinderCondition> {
    let m = exponent_matrix(pres);
    let det = m.determinant()?;
    Ok(CylinderCondition {
        holds: det.abs() == 1,
        determinant: det,
        exponent_matrix: m,
    })
}

/// Fraction-free elimination; every division is exact in `Z[H]`.
pub fn determinant(matrix: &[Vec<LaurentPolynomial>], sig: SurfaceSignature) -> Result<LaurentPolynomial> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: matrix.iter().map(Vec::len).find(|&l| l != n).unwrap_or(n),
        });
    }
    if n == 0 {
        return Ok(LaurentPolynomial::one(sig));
    }
    if n == 2 {
        return (&matrix[0][0] * &matrix[1][1]).checked_sub(&(&matrix[0][1] * &matrix[1][0]));
    }
    let mut m = matrix.to_vec();
    let mut prev = LaurentPolynomial::one(sig);
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(LaurentPolynomial::zero(sig)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = (&m[i][j] * &m[k][k]).checked_sub(&(&m[i][k] * &m[k][j]))?;
                m[i][j] = num.checked_div(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

/// Determinant of the abelianized Fox matrix, shifted to minimal exponent
/// zero and signed to have augmentation `+1`.
pub fn torsion_from_presentation(pres: &HandlePresentation) -> Result<LaurentPolynomial> {
    let cond = cylinder_condition(pres)?;
    if !cond.holds {
        return Err(Error::NotCylinder(format!(
            "exponent matrix has determinant {}",
            cond.determinant
        )));
    }
    let det = determinant(&abelianized_matrix(pres)?, pres.target)?;
    Ok(det.augmentation_normalized())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_polynomial;
    use proptest::prelude::*;

    fn w(s: &str) -> FreeWord {
        parse_word(s).unwrap()
    }

    fn ab(sum: &FoxSum, sig: SurfaceSignature) -> LaurentPolynomial {
        abelianize_sum(sum, &IntMatrix::identity(sig.rank()), sig).unwrap()
    }

    #[test]
    fn parsing_and_printing() {
        assert_eq!(w("a^2(ab^-1)^3").to_string(), "a^3b^-1ab^-1ab^-1");
        assert_eq!(w("a a^-1"), FreeWord::identity());
        assert_eq!(w("g1 g12^-2"), FreeWord::from_letters([(0, 1), (11, -1), (11, -1)]));
        assert_eq!(w("(ab)^-1"), w("b^-1a^-1"));
        assert_eq!(w("1"), FreeWord::identity());
        assert!(matches!(parse_word("a^"), Err(Error::Syntax { offset: 2, .. })));
        assert!(matches!(parse_word("a)"), Err(Error::Syntax { offset: 1, .. })));
        assert!(matches!(parse_words("a, b$"), Err(Error::Syntax { offset: 4, .. })));
        assert_eq!(parse_words("a^2(ab^-1)^3, b(ab^-1)^3").unwrap().len(), 2);
    }

    #[test]
    fn basic_derivatives() {
        let sig = SurfaceSignature::new(0, 3);
        let p = |s: &str| parse_polynomial(s, sig).unwrap();
        assert_eq!(ab(&fox_derivative(&w("a^4"), 0), sig), p("1 + x1 + x1^2 + x1^3"));
        assert_eq!(ab(&fox_derivative(&w("a^-1"), 0), sig), p("-x1^-1"));
        assert_eq!(ab(&fox_derivative(&w("ab"), 1), sig), p("x1"));
        assert!(fox_derivative(&w("b"), 0).is_empty());
    }

    #[test]
    fn trivial_presentation() {
        let sig = SurfaceSignature::new(1, 2);
        let pres = HandlePresentation::with_standard_identification(
            sig,
            (0..3).map(FreeWord::generator).collect(),
        )
        .unwrap();
        let m = abelianized_matrix(&pres).unwrap();
        for (i, row) in m.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                assert_eq!(e.is_one(), i == j);
                assert_eq!(e.is_zero(), i != j);
            }
        }
        assert!(cylinder_condition(&pres).unwrap().holds);
        assert!(torsion_from_presentation(&pres).unwrap().is_one());
    }

    #[test]
    fn pretzel_conditions() {
        let c = cylinder_condition(&HandlePresentation::pretzel(2, 3, -1)).unwrap();
        assert_eq!(c.exponent_matrix.to_rows(), vec![vec![5, 3], vec![-3, -2]]);
        assert_eq!(c.determinant.abs(), 1);
        let bad = cylinder_condition(&HandlePresentation::pretzel(1, 1, 1)).unwrap();
        assert!(!bad.holds);
        assert_eq!(bad.determinant.abs(), 3);
        assert!(matches!(
            torsion_from_presentation(&HandlePresentation::pretzel(1, 1, 1)),
            Err(Error::NotCylinder(_))
        ));
    }

    #[test]
    fn commutator_is_not_a_cylinder() {
        let sig = SurfaceSignature::new(1, 1);
        let pres = HandlePresentation::new(2, vec![w("aba^-1b^-1"), w("b")], sig, IntMatrix::identity(2)).unwrap();
        let m = abelianized_matrix(&pres).unwrap();
        let det = determinant(&m, sig).unwrap();
        assert_eq!(det.augment(), 0.into());
        assert!(!cylinder_condition(&pres).unwrap().holds);
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let sig = SurfaceSignature::new(0, 3);
        let p = |s: &str| parse_polynomial(s, sig).unwrap();
        let m = vec![
            vec![p("1 + x1"), p("x2"), p("0")],
            vec![p("0"), p("2 - x1*x2"), p("x1^-1")],
            vec![p("x2^2"), p("1"), p("3 + x2")],
        ];
        let cof = &(&m[0][0] * &(&(&m[1][1] * &m[2][2]) - &(&m[1][2] * &m[2][1])))
            - &(&m[0][1] * &(&(&m[1][0] * &m[2][2]) - &(&m[1][2] * &m[2][0])));
        let cof = &cof + &(&m[0][2] * &(&(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0])));
        assert_eq!(determinant(&m, sig).unwrap(), cof);
        let mut swapped = m.clone();
        swapped[0][0] = p("0");
        swapped[0][1] = p("0");
        swapped[0][2] = p("1");
        let d = determinant(&swapped, sig).unwrap();
        assert_eq!(d, &(&m[1][0] * &m[2][1]) - &(&m[1][1] * &m[2][0]));
    }

    fn arb_word(rank: usize) -> impl Strategy<Value = FreeWord> {
        prop::collection::vec((0..rank, prop::bool::ANY), 0..14)
            .prop_map(|l| FreeWord::from_letters(l.into_iter().map(|(g, inv)| (g, if inv { -1 } else { 1 }))))
    }

    proptest! {
        #[test]
        fn fundamental_identity(word in arb_word(3)) {
            let sig = SurfaceSignature::new(0, 4);
            let id = IntMatrix::identity(3);
            let mut lhs = LaurentPolynomial::zero(sig);
            for g in 0..3 {
                let d = abelianize_sum(&fox_derivative(&word, g), &id, sig).unwrap();
                let xg = &LaurentPolynomial::variable(sig, g) - &LaurentPolynomial::one(sig);
                lhs = &lhs + &(&d * &xg);
            }
            let mono = LaurentPolynomial::monomial(sig, ExponentVector(word.abelianize(3)), 1);
            prop_assert_eq!(lhs, &mono - &LaurentPolynomial::one(sig));
        }

        #[test]
        fn reduction_is_confluent(u in arb_word(3), v in arb_word(3)) {
            let raw: Vec<(usize, i8)> = u.letters().iter().chain(v.letters()).copied().collect();
            prop_assert_eq!(FreeWord::from_letters(raw), u.mul(&v));
            prop_assert!(u.mul(&u.inverse()).is_empty());
        }

        #[test]
        fn print_parse_round_trip(word in arb_word(30)) {
            prop_assert_eq!(parse_word(&word.to_string()).unwrap(), word);
        }
    }
}
