use cyltor_core::autstar::search_equivalence;
use cyltor_core::cylinder::{
    gen_ma, gen_pretzel, glue, invert, mapping_class, parse_alexander, pretzel_family_search,
    pretzel_validity, stack, tie_knot, GluingMap, TorsionClass,
};
use cyltor_core::descriptor::CylinderDescriptor;
use cyltor_core::factor::factor;
use cyltor_core::fox::{
    abelianized_matrix, cylinder_condition, parse_words, torsion_from_presentation, HandlePresentation,
};
use cyltor_core::homs::{invariant_profile, norm_membership, psi, theta, NormAnswer};
use cyltor_core::invariants::certify_distinct;
use cyltor_core::{mahler, ExponentVector, IntMatrix, LaurentFraction, LaurentPolynomial, SurfaceSignature};
use serde_json::{json, Value};

use crate::report::{Failure, Report};
use crate::{Cli, CliResult, Command, Fraction};

pub fn run(cli: &Cli, report: &mut Report) -> CliResult<()> {
    let g = &cli.global;
    let surface = || g.surface.ok_or_else(|| Failure::Usage("--surface g,n is required".into()));
    let poly = |text: &str| -> CliResult<LaurentPolynomial> { Ok(cyltor_core::parse_polynomial(text, surface()?)?) };
    let fraction = |f: &Fraction| -> CliResult<LaurentFraction> {
        let num = poly(&f.p)?;
        Ok(match &f.den {
            Some(d) => LaurentFraction::new(num, poly(d)?)?,
            None => LaurentFraction::from_polynomial(num)?,
        })
    };

    match &cli.command {
        Command::Factor(f) => {
            let p = fraction(f)?;
            let fac = factor(&p)?;
            report.set("input", p.to_string());
            report.set("unit", fac.unit_string());
            report.set(
                "factors",
                fac.factors()
                    .iter()
                    .map(|(c, e)| json!({ "factor": c.to_string(), "exponent": e }))
                    .collect::<Vec<_>>(),
            );
        }
        Command::Psi { p, lambda } => {
            let p = fraction(p)?;
            let lambda = poly(lambda)?;
            report.set("psi", psi(&p, &lambda, g.mode, g.depth)?);
        }
        Command::Theta { p, mu } => {
            let p = fraction(p)?;
            let mu = poly(mu)?;
            report.set("theta", theta(&p, &mu, g.mode, g.depth)?);
        }
        Command::Profile(f) => {
            let p = fraction(f)?;
            let prof = invariant_profile(&p, g.mode, g.depth)?;
            report.set("input", p.to_string());
            report.set(
                "psi",
                prof.psi
                    .iter()
                    .map(|(c, v)| json!({ "factor": c.to_string(), "value": v }))
                    .collect::<Vec<_>>(),
            );
            report.set(
                "theta",
                prof.theta
                    .iter()
                    .map(|((pos, neg), v)| json!({ "positive": pos.to_string(), "negative": neg.to_string(), "value": v }))
                    .collect::<Vec<_>>(),
            );
            report.set(
                "residual",
                prof.residual
                    .iter()
                    .map(|(c, e)| json!({ "factor": c.to_string(), "exponent": e }))
                    .collect::<Vec<_>>(),
            );
        }
        Command::NormTest(f) => {
            let p = fraction(f)?;
            let r = norm_membership(&p)?;
            let answer = match r.answer {
                NormAnswer::Yes => "yes",
                NormAnswer::No => "no",
                NormAnswer::Unknown => "unknown",
            };
            report.set("norm_member", answer);
            report.set(
                "witnesses",
                r.witnesses
                    .iter()
                    .map(|(c, e)| json!({ "factor": c.to_string(), "defect": e }))
                    .collect::<Vec<_>>(),
            );
        }
        Command::Mahler { p, method } => {
            let p = poly(p)?;
            let est = if method == "auto" {
                mahler::mahler_measure(&p, g.samples, g.seed)?
            } else {
                let registry = mahler::default_registry();
                let est = registry.get(method).ok_or_else(|| {
                    Failure::Usage(format!("unknown method `{method}`; known: auto, {}", registry.names().join(", ")))
                })?;
                est.estimate(&p, g.samples, g.seed)?
            };
            report.set("mahler", serde_json::to_value(est).expect("serializable"));
        }
        Command::Distinguish { p, q } => {
            let (p, q) = (poly(p)?, poly(q)?);
            if let Some(cert) = certify_distinct(&p, &q)? {
                report.set("verdict", "distinct");
                report.set("invariant", cert.invariant);
                report.set("detail", cert.detail);
            } else if let Some(phi) = search_equivalence(&p, &q, g.depth)? {
                report.set("verdict", "equivalent");
                report.set("witness", json!(phi.matrix().to_rows()));
            } else {
                report.set("verdict", "unknown");
            }
        }
        Command::Fox { rank, words } => {
            let words = parse_words(words)?;
            let target = g.surface.unwrap_or(SurfaceSignature::new(0, rank + 1));
            let pres = HandlePresentation::new(*rank, words, target, IntMatrix::identity(target.rank()))
                .map_err(|e| Failure::Usage(format!("{e}; the surface must have homology rank {rank}")))?;
            let cond = cylinder_condition(&pres)?;
            let matrix: Vec<Vec<String>> = abelianized_matrix(&pres)?
                .iter()
                .map(|row| row.iter().map(|e| e.to_string()).collect())
                .collect();
            report.set("words", pres.words().iter().map(|w| w.to_string()).collect::<Vec<_>>());
            report.set("fox_matrix", json!(matrix));
            report.set("exponent_matrix", json!(cond.exponent_matrix.to_rows()));
            report.set("determinant", cond.determinant.to_string());
            report.set("cylinder", cond.holds);
            report.set("torsion", torsion_from_presentation(&pres)?.to_string());
        }
        Command::Pretzel { r, s, t } => {
            report.set("validity", pretzel_validity(*r, *s, *t));
            emit_cylinder(report, &gen_pretzel(*r, *s, *t)?);
        }
        Command::PretzelSearch { x } => {
            let triples = pretzel_family_search(*x)?;
            report.set("triples", json!(triples.iter().map(|(r, s, t)| [r, s, t]).collect::<Vec<_>>()));
        }
        Command::Ma { a, genus } => {
            emit_cylinder(report, &gen_ma(*a, SurfaceSignature::new(*genus, 2))?);
        }
        Command::Stack { first, second } => {
            emit_cylinder(report, &stack(&load(first)?, &load(second)?)?);
        }
        Command::Invert { cylinder } => {
            emit_cylinder(report, &invert(&load(cylinder)?));
        }
        Command::Glue { first, second, c, c_prime } => {
            let (m, n) = (load(first)?, load(second)?);
            let map = GluingMap::new(m.signature(), *c, n.signature(), *c_prime)?;
            emit_cylinder(report, &glue(&m, &n, &map)?);
        }
        Command::TieKnot { cylinder, alexander, at } => {
            let m = load(cylinder)?;
            let h = monomial_class(at, m.signature())?;
            emit_cylinder(report, &tie_knot(&m, &parse_alexander(alexander)?, &h)?);
        }
        Command::MappingClass { phi } => {
            let rows: Vec<Vec<i64>> =
                serde_json::from_str(phi).map_err(|e| Failure::Usage(format!("--phi: {e}")))?;
            let sig = surface()?;
            let matrix = IntMatrix::from_rows(&rows)?;
            let phi = cyltor_core::AutStarElement::from_matrix(sig, matrix)?;
            emit_cylinder(report, &mapping_class(&phi)?);
        }
    }
    Ok(())
}

fn emit_cylinder(report: &mut Report, m: &TorsionClass) {
    let d = CylinderDescriptor::from_torsion_class(m);
    report.set("cylinder", serde_json::to_value(&d).expect("serializable"));
}

/// Reads a descriptor, either bare or as the `cylinder` field of a report.
fn load(path: &str) -> CliResult<TorsionClass> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    let inner = value.get("cylinder").cloned().unwrap_or(value);
    let d: CylinderDescriptor =
        serde_json::from_value(inner).map_err(|e| Failure::Usage(format!("{path}: malformed descriptor: {e}")))?;
    Ok(d.to_torsion_class()?)
}

fn monomial_class(text: &str, sig: SurfaceSignature) -> CliResult<ExponentVector> {
    let p = cyltor_core::parse_polynomial(text, sig)?;
    match p.as_unit() {
        Some(u) if !u.negative => Ok(u.monomial),
        _ => Err(Failure::Usage(format!("--at must be a monomial such as x1*y1, got `{text}`"))),
    }
}
