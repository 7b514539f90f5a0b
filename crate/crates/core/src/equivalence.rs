//! Equivalence of irreducible factors: `≐` (equal up to `±h`) or `∼`
//! (equal up to `±h` and the action of `Aut*(H)`).

use std::fmt;
use std::str::FromStr;

use crate::autstar::{search_equivalence, AutStarElement};
use crate::error::{Error, Result};
use crate::invariants::{certify_distinct, DistinctnessCertificate};
use crate::laurent::LaurentPolynomial;
use crate::registry::Registry;

/// Default word length for the `Aut*` search.
pub const DEFAULT_DEPTH: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    /// Factors compared up to `Aut*(H)` and units.
    #[default]
    Sim,
    /// Factors compared up to units only.
    Unit,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Sim => "sim",
            Mode::Unit => "unit",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sim" => Ok(Mode::Sim),
            "unit" => Ok(Mode::Unit),
            _ => Err(Error::InvalidArgument(format!("unknown mode `{s}` (expected sim or unit)"))),
        }
    }
}

/// Outcome of comparing two factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equivalent(AutStarElement),
    Distinct(Option<DistinctnessCertificate>),
    Unknown,
}

impl Verdict {
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::Equivalent(_) => Some(true),
            Verdict::Distinct(_) => Some(false),
            Verdict::Unknown => None,
        }
    }
}

pub trait FactorEquivalence: Send + Sync {
    fn compare(&self, p: &LaurentPolynomial, q: &LaurentPolynomial) -> Result<Verdict>;
    /// Search bound reported in inconclusive errors.
    fn depth(&self) -> usize {
        0
    }
}

pub struct UnitEquivalence;

impl FactorEquivalence for UnitEquivalence {
    fn compare(&self, p: &LaurentPolynomial, q: &LaurentPolynomial) -> Result<Verdict> {
        Ok(if p.eq_up_to_unit(q)? {
            Verdict::Equivalent(AutStarElement::identity(p.signature()))
        } else {
            Verdict::Distinct(None)
        })
    }
}

pub struct AutStarEquivalence {
    pub depth: usize,
}

impl FactorEquivalence for AutStarEquivalence {
    fn compare(&self, p: &LaurentPolynomial, q: &LaurentPolynomial) -> Result<Verdict> {
        if let Some(cert) = certify_distinct(p, q)? {
            return Ok(Verdict::Distinct(Some(cert)));
        }
        Ok(match search_equivalence(p, q, self.depth)? {
            Some(phi) => Verdict::Equivalent(phi),
            None => Verdict::Unknown,
        })
    }

    fn depth(&self) -> usize {
        self.depth
    }
}

pub type EquivalenceFactory = dyn Fn(usize) -> Box<dyn FactorEquivalence> + Send + Sync;

/// Factories keyed by mode name, taking the search depth.
pub fn default_registry() -> Registry<EquivalenceFactory> {
    let mut r: Registry<EquivalenceFactory> = Registry::new();
    r.register("unit", Box::new(|_| Box::new(UnitEquivalence) as Box<dyn FactorEquivalence>))
        .register(
            "sim",
            Box::new(|depth| Box::new(AutStarEquivalence { depth }) as Box<dyn FactorEquivalence>),
        );
    r
}

pub fn equivalence(mode: Mode, depth: usize) -> Box<dyn FactorEquivalence> {
    default_registry().get(mode.name()).expect("registered mode")(depth)
}

/// `Some(φ)` with `p ≐ φ(q)`, `None` if none is found within `depth`
/// generator moves.
pub fn certify_equivalent(p: &LaurentPolynomial, q: &LaurentPolynomial, depth: usize) -> Result<Option<AutStarElement>> {
    search_equivalence(p, q, depth)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelfDuality {
    Yes(AutStarElement),
    No(Option<DistinctnessCertificate>),
    Unknown,
}

/// Decides `p ∼ p̄` where a bounded search or an invariant settles it.
pub fn is_self_dual_semidecide(p: &LaurentPolynomial, depth: usize) -> Result<SelfDuality> {
    let verdict = AutStarEquivalence { depth }.compare(p, &p.involute())?;
    Ok(match verdict {
        Verdict::Equivalent(phi) => SelfDuality::Yes(phi),
        Verdict::Distinct(c) => SelfDuality::No(c),
        Verdict::Unknown => SelfDuality::Unknown,
    })
}

/// Self-duality under the chosen mode; `None` when undecided.
pub fn is_self_dual(p: &LaurentPolynomial, mode: Mode, depth: usize) -> Result<Option<bool>> {
    Ok(equivalence(mode, depth).compare(p, &p.involute())?.as_bool())
}
