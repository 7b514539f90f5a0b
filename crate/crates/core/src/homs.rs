//! Exponent homomorphisms on `Q(H)^×`, the `Ψ` and `Θ` maps built from
//! them, and membership in the norm subgroup `N = {±h·q·q̄}`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::equivalence::{equivalence, FactorEquivalence, Mode, Verdict};
use crate::error::{Error, Result};
use crate::factor::{conjugate_pairing, factor, is_irreducible, Factorization};
use crate::fraction::LaurentFraction;
use crate::laurent::{LaurentPolynomial, UnitClass};

fn require_irreducible(lambda: &LaurentPolynomial) -> Result<()> {
    if is_irreducible(lambda)? {
        Ok(())
    } else {
        Err(Error::NotIrreducible(lambda.to_string()))
    }
}

fn count_matching(f: &Factorization, lambda: &LaurentPolynomial, eq: &dyn FactorEquivalence) -> Result<i64> {
    let mut total = 0;
    for (class, e) in f.factors() {
        match eq.compare(class.representative(), lambda)? {
            Verdict::Equivalent(_) => total += e,
            Verdict::Distinct(_) => {}
            Verdict::Unknown => {
                return Err(Error::Inconclusive(
                    format!("{} against {}", class.representative(), lambda),
                    eq.depth(),
                ))
            }
        }
    }
    Ok(total)
}

/// `e_λ(p)`: total exponent of the factors of `p` equivalent to `λ`.
pub fn e_lambda(p: &LaurentFraction, lambda: &LaurentPolynomial, mode: Mode, depth: usize) -> Result<i64> {
    p.signature().check_same(&lambda.signature())?;
    require_irreducible(lambda)?;
    count_matching(&factor(p)?, lambda, equivalence(mode, depth).as_ref())
}

fn self_dual(lambda: &LaurentPolynomial, mode: Mode, depth: usize) -> Result<bool> {
    match equivalence(mode, depth).compare(lambda, &lambda.involute())? {
        Verdict::Equivalent(_) => Ok(true),
        Verdict::Distinct(_) => Ok(false),
        Verdict::Unknown => Err(Error::Inconclusive(
            format!("self-duality of {lambda}"),
            depth,
        )),
    }
}

/// `Ψ_λ(p) = e_λ(p) mod 2` for a self-dual irreducible `λ`.
pub fn psi(p: &LaurentFraction, lambda: &LaurentPolynomial, mode: Mode, depth: usize) -> Result<u8> {
    p.signature().check_same(&lambda.signature())?;
    require_irreducible(lambda)?;
    if !self_dual(lambda, mode, depth)? {
        return Err(Error::NotSelfDual(lambda.to_string()));
    }
    let e = count_matching(&factor(p)?, lambda, equivalence(mode, depth).as_ref())?;
    Ok(e.rem_euclid(2) as u8)
}

/// `Θ_μ(p) = e_μ(p) − e_μ̄(p)` for an irreducible `μ` that is not self-dual,
/// with `μ` itself as the positive direction.
pub fn theta(p: &LaurentFraction, mu: &LaurentPolynomial, mode: Mode, depth: usize) -> Result<i64> {
    p.signature().check_same(&mu.signature())?;
    require_irreducible(mu)?;
    if self_dual(mu, mode, depth)? {
        return Err(Error::SelfDual(mu.to_string()));
    }
    let eq = equivalence(mode, depth);
    let f = factor(p)?;
    Ok(count_matching(&f, mu, eq.as_ref())? - count_matching(&f, &mu.involute(), eq.as_ref())?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum NormAnswer {
    Yes,
    No,
    /// Reserved for callers that bound factorization effort; the complete
    /// factorization used here always decides.
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormReport {
    pub answer: NormAnswer,
    /// Factor classes violating the criterion with their offending exponent
    /// (parity for self-conjugate classes, imbalance for pairs).
    pub witnesses: Vec<(UnitClass, i64)>,
}

/// `p ∈ N` iff every self-conjugate factor class has even exponent and
/// every other class has the same exponent as its conjugate.
pub fn norm_membership(p: &LaurentFraction) -> Result<NormReport> {
    let report = conjugate_pairing(&factor(p)?);
    let mut witnesses: Vec<(UnitClass, i64)> = report
        .self_conjugate
        .iter()
        .filter(|(_, e)| e % 2 != 0)
        .cloned()
        .collect();
    witnesses.extend(
        report
            .pairs
            .iter()
            .filter(|pair| pair.imbalance() != 0)
            .map(|pair| (pair.class.clone(), pair.imbalance())),
    );
    Ok(NormReport {
        answer: if witnesses.is_empty() { NormAnswer::Yes } else { NormAnswer::No },
        witnesses,
    })
}

/// Necessary condition for `M` and `N` to be homology cobordant:
/// `τ_M / τ_N ∈ N`.
pub fn fox_milnor_check(tau_m: &LaurentFraction, tau_n: &LaurentFraction) -> Result<NormReport> {
    norm_membership(&tau_m.checked_div(tau_n)?)
}

/// All nonzero `Ψ` and `Θ` components of `p`, plus the factors whose
/// classification stayed undecided.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct InvariantProfile {
    /// Self-dual classes with odd exponent.
    pub psi: BTreeMap<UnitClass, u8>,
    /// Keyed by `(positive, negative)` with the smaller canonical
    /// representative positive.
    pub theta: BTreeMap<(UnitClass, UnitClass), i64>,
    pub residual: Vec<(UnitClass, i64)>,
}

struct Group {
    rep: UnitClass,
    exponent: i64,
}

pub fn invariant_profile(p: &LaurentFraction, mode: Mode, depth: usize) -> Result<InvariantProfile> {
    let f = factor(p)?;
    let eq = equivalence(mode, depth);
    let mut profile = InvariantProfile::default();

    // Merge factor classes into equivalence groups.
    let mut groups: Vec<Group> = Vec::new();
    'factors: for (class, e) in f.factors() {
        let mut undecided = false;
        for g in groups.iter_mut() {
            match eq.compare(class.representative(), g.rep.representative())? {
                Verdict::Equivalent(_) => {
                    g.exponent += e;
                    continue 'factors;
                }
                Verdict::Distinct(_) => {}
                Verdict::Unknown => undecided = true,
            }
        }
        if undecided {
            profile.residual.push((class.clone(), *e));
        } else {
            groups.push(Group {
                rep: class.clone(),
                exponent: *e,
            });
        }
    }

    let mut done = vec![false; groups.len()];
    for i in 0..groups.len() {
        if done[i] {
            continue;
        }
        done[i] = true;
        let rep = groups[i].rep.clone();
        let conj = rep.conjugate();
        match eq.compare(rep.representative(), conj.representative())? {
            Verdict::Unknown => {
                profile.residual.push((rep, groups[i].exponent));
            }
            Verdict::Equivalent(_) => {
                if groups[i].exponent.rem_euclid(2) == 1 {
                    profile.psi.insert(rep, 1);
                }
            }
            Verdict::Distinct(_) => {
                let mut partner = None;
                let mut undecided = false;
                for k in 0..groups.len() {
                    if done[k] {
                        continue;
                    }
                    match eq.compare(groups[k].rep.representative(), conj.representative())? {
                        Verdict::Equivalent(_) => {
                            partner = Some(k);
                            break;
                        }
                        Verdict::Distinct(_) => {}
                        Verdict::Unknown => undecided = true,
                    }
                }
                if partner.is_none() && undecided {
                    profile.residual.push((rep, groups[i].exponent));
                    continue;
                }
                let other = partner.map_or(0, |k| {
                    done[k] = true;
                    groups[k].exponent
                });
                let (key, value) = if rep <= conj {
                    ((rep, conj), groups[i].exponent - other)
                } else {
                    ((conj, rep), other - groups[i].exponent)
                };
                if value != 0 {
                    profile.theta.insert(key, value);
                }
            }
        }
    }
    Ok(profile)
}
