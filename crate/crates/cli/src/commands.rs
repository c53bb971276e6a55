//! One function per verb. Each loads its inputs, calls into the library and
//! shapes the result as JSON.

use std::path::Path;

use quantale::{
    lattice::{enumerate_sup_endomaps, order_automorphisms},
    mn::{check_negation_formulas, count_tight_mn, pentagon_diamond_check, positivity_suite_mn},
    nucleus::{lift_serre, representable_by, serre_gc_quotient, Nucleus, QuotientQuantale},
    phase::{phase_quantale, relation_galois, represent_frobenius},
    quantale::{self as laws, Flag, UnitReport},
    raney::{
        bullet_quantale, cotight_closure, decompose_tight, is_cotight, is_tight, rani, rans, star,
        tight_interior,
    },
    Budget, EndoMap, Error, FiniteLattice, FrobeniusQuantale, Quantale, TightQuantale,
};
use serde_json::{json, Value};

use crate::{
    format::{load_endomap, load_lattice, load_quantale_file, load_relation, load_semigroup, negations, QuantaleFile},
    CliError,
};

/// Result of a verb that ran to completion.
pub struct Outcome {
    pub passed: bool,
    pub report: Value,
    pub summary: String,
}

impl Outcome {
    fn new(passed: bool, report: Value, summary: impl Into<String>) -> Self {
        Outcome {
            passed,
            report,
            summary: summary.into(),
        }
    }
}

type Run = Result<Outcome, CliError>;

fn flag(f: &Flag) -> Value {
    json!({ "holds": f.holds, "witness": f.witness })
}

pub fn error_json(e: &Error) -> Value {
    json!({ "message": e.to_string(), "detail": format!("{e:?}") })
}

fn unit_json(u: &UnitReport) -> Value {
    json!({
        "unit": u.unit,
        "candidate": u.candidate,
        "right_contracts": u.right_contracts,
        "left_contracts": u.left_contracts,
    })
}

fn invalid(e: Error) -> CliError {
    CliError::Invalid(e)
}

/// Errors that describe a failed law of the input rather than a malformed
/// file.
fn is_law_failure(e: &Error) -> bool {
    !matches!(
        e,
        Error::IndexOutOfRange { .. }
            | Error::ShapeMismatch { .. }
            | Error::BudgetExceeded { .. }
            | Error::TooManyAtoms { .. }
    )
}

fn failed_check(e: Error) -> Run {
    if is_law_failure(&e) {
        let summary = format!("check failed: {e}");
        Ok(Outcome::new(false, json!({ "valid": false, "error": error_json(&e) }), summary))
    } else {
        Err(invalid(e))
    }
}

fn lattice_summary(l: &FiniteLattice) -> Value {
    json!({
        "size": l.size(),
        "bot": l.bot(),
        "top": l.top(),
        "atoms": l.atoms(),
        "join_irreducibles": l.join_irreducibles(),
        "distributive": l.is_distributive(),
        "distributivity_witness": l.distributivity_witness(),
    })
}

fn load_plain_quantale(path: &Path) -> Result<(QuantaleFile, Quantale), CliError> {
    let file = load_quantale_file(path)?;
    let l = file.lattice.build().map_err(invalid)?;
    let q = Quantale::from_rows(l, &file.mult).map_err(invalid)?;
    Ok((file, q))
}

pub fn check_lattice(arg: &str) -> Run {
    match load_lattice(arg) {
        Ok(l) => {
            let summary = format!("lattice with {} elements, distributive: {}", l.size(), l.is_distributive());
            let mut report = lattice_summary(&l);
            report["valid"] = json!(true);
            Ok(Outcome::new(true, report, summary))
        }
        Err(CliError::Invalid(e)) => failed_check(e),
        Err(e) => Err(e),
    }
}

pub fn check_quantale(path: &Path) -> Run {
    let file = load_quantale_file(path)?;
    let l = file.lattice.build().map_err(invalid)?;
    let q = match Quantale::from_rows(l, &file.mult) {
        Ok(q) => q,
        Err(e) => return failed_check(e),
    };
    let unit = q.find_unit();
    let report = json!({
        "valid": true,
        "size": q.size(),
        "commutative": q.is_commutative(),
        "unit": unit_json(&unit),
        "positive": q.is_positive(),
        "positivity_witness": q.positivity_witness(),
    });
    Ok(Outcome::new(true, report, format!("quantale with {} elements", q.size())))
}

pub fn check_frobenius(path: &Path) -> Run {
    let (file, q) = load_plain_quantale(path)?;
    let (l, r) = negations(&file, q.lattice())?;
    let rep = laws::check_frobenius(&q, &l, &r).map_err(invalid)?;
    let frobenius = rep.is_frobenius();
    let report = json!({
        "frobenius": frobenius,
        "girard": frobenius && l == r,
        "serre_gc": rep.is_serre_gc(),
        "antitone": flag(&rep.antitone),
        "inverse_pair": flag(&rep.is_inverse_pair),
        "galois": flag(&rep.is_galois),
        "commutes": flag(&rep.commutes),
        "serre_identity": flag(&rep.serre_identity),
        "shift_relation": flag(&rep.shift_holds),
        "images_coincide": flag(&rep.images_coincide),
    });
    let summary = match rep.first_frobenius_failure() {
        None => "Frobenius quantale".to_string(),
        Some(law) => format!("not Frobenius: {law} fails"),
    };
    Ok(Outcome::new(frobenius, report, summary))
}

pub fn residuals(path: &Path) -> Run {
    let (_, q) = load_plain_quantale(path)?;
    let res = q.residuals();
    let n = q.size();
    let left: Vec<Vec<_>> = (0..n).map(|x| (0..n).map(|z| res.left(x, z)).collect()).collect();
    let right: Vec<Vec<_>> = (0..n).map(|z| (0..n).map(|y| res.right(z, y)).collect()).collect();
    let report = json!({ "left": left, "right": right, "commutative": q.is_commutative() });
    Ok(Outcome::new(true, report, format!("residual tables for {n} elements")))
}

pub fn chu(path: &Path) -> Run {
    let (_, q) = load_plain_quantale(path)?;
    let c = q.chu();
    let base = q.find_unit();
    let lifted = c.quantale().find_unit();
    let agree = base.unit.is_some() == lifted.unit.is_some();
    let girard = c.is_girard();
    let report = json!({
        "quantale": QuantaleFile::of_frobenius(&c),
        "girard": girard,
        "base_unit": base.unit,
        "chu_unit": lifted.unit,
        "unitality_agrees": agree,
    });
    let summary = format!("Chu construction with {} elements, unital: {}", c.quantale().size(), lifted.unit.is_some());
    Ok(Outcome::new(girard && agree, report, summary))
}

pub fn nucleus(path: &Path, map: Option<&Path>) -> Run {
    let (file, q) = load_plain_quantale(path)?;
    if let Some(map) = map {
        let j = load_endomap(map, q.lattice())?;
        let nucleus = match Nucleus::new(&q, j) {
            Ok(n) => n,
            Err(e) => return failed_check(e),
        };
        let quotient = QuotientQuantale::new(&q, nucleus).map_err(invalid)?;
        let report = json!({
            "closed": quotient.closed(),
            "quotient": QuantaleFile::of(quotient.quantale()),
        });
        let summary = format!("nucleus with {} closed elements", quotient.closed().len());
        return Ok(Outcome::new(true, report, summary));
    }
    let (l, r) = negations(&file, q.lattice())?;
    let rep = laws::check_frobenius(&q, &l, &r).map_err(invalid)?;
    if let Some(law) = rep.first_serre_gc_failure() {
        let report = json!({
            "serre_gc": false,
            "galois": flag(&rep.is_galois),
            "commutes": flag(&rep.commutes),
            "shift_relation": flag(&rep.shift_holds),
        });
        return Ok(Outcome::new(false, report, format!("not a Serre Galois connection: {law} fails")));
    }
    let sq = serre_gc_quotient(&q, &l, &r).map_err(invalid)?;
    let lift = lift_serre(&q, &sq.quotient, sq.frobenius.lneg(), sq.frobenius.rneg());
    let (passed, lift_json) = match &lift {
        Ok((lj, rj)) => (
            true,
            json!({
                "lneg": lj.image(),
                "rneg": rj.image(),
                "equals_input": *lj == l && *rj == r,
                "representable_by": representable_by(&q, lj, rj),
            }),
        ),
        Err(e) => (false, json!({ "error": error_json(e) })),
    };
    let report = json!({
        "serre_gc": true,
        "nucleus": sq.quotient.nucleus().map().image(),
        "closed": sq.quotient.closed(),
        "quotient": QuantaleFile::of_frobenius(&sq.frobenius),
        "quotient_girard": sq.frobenius.is_girard(),
        "representable_by": representable_by(&q, &l, &r),
        "lift": lift_json,
    });
    let summary = format!("Serre quotient with {} elements", sq.quotient.closed().len());
    Ok(Outcome::new(passed, report, summary))
}

pub fn phase(semigroup: &Path, relation: &Path, budget: &Budget) -> Run {
    let s = load_semigroup(semigroup)?;
    let rel = load_relation(relation)?;
    match phase_quantale(&s, &rel, budget) {
        Ok(pq) => {
            let closed: Vec<Vec<usize>> = pq
                .closed
                .iter()
                .map(|&m| (0..s.size()).filter(|i| m >> i & 1 == 1).collect())
                .collect();
            let report = json!({
                "closed": closed,
                "quantale": QuantaleFile::of_frobenius(&pq.frobenius),
                "girard": pq.frobenius.is_girard(),
            });
            let summary = format!("phase quantale with {} closed sets", closed.len());
            Ok(Outcome::new(true, report, summary))
        }
        Err(e @ (Error::NotAssociativeRelation(..) | Error::NotWeaklySymmetric)) => {
            let g = relation_galois(&s, &rel).map_err(invalid)?;
            let report = json!({
                "error": error_json(&e),
                "associative": flag(&g.associative),
                "cond_left": flag(&g.cond_left),
                "cond_right": flag(&g.cond_right),
            });
            Ok(Outcome::new(false, report, format!("no phase quantale: {e}")))
        }
        Err(e) => Err(invalid(e)),
    }
}

pub fn represent(path: &Path) -> Run {
    let (file, q) = load_plain_quantale(path)?;
    let (l, r) = negations(&file, q.lattice())?;
    let f = match FrobeniusQuantale::new(q, l, r) {
        Ok(f) => f,
        Err(e) => return failed_check(e),
    };
    let rep = represent_frobenius(&f);
    let holds = rep.holds();
    let report = json!({
        "size": rep.size,
        "holds": holds,
        "associative": flag(&rep.associative),
        "cond_left": flag(&rep.cond_left),
        "cond_right": flag(&rep.cond_right),
        "closed_are_principal": flag(&rep.closed_are_principal),
        "multiplication": flag(&rep.multiplication),
        "joins": flag(&rep.joins),
        "negations": flag(&rep.negations),
        "round_trip": flag(&rep.round_trip),
    });
    let summary = format!("phase representation on {} elements: {}", rep.size, if holds { "ok" } else { "failed" });
    Ok(Outcome::new(holds, report, summary))
}

pub fn raney(arg: &str, map: Option<&Path>, budget: &Budget) -> Run {
    let l = load_lattice(arg)?;
    let Some(map) = map else {
        let sup = enumerate_sup_endomaps(&l, budget).map_err(invalid)?;
        let tight = sup.iter().filter(|f| is_tight(&l, f)).count();
        let report = json!({
            "lattice": lattice_summary(&l),
            "sup_preserving": sup.len(),
            "tight": tight,
            "identity_tight": is_tight(&l, &EndoMap::identity(&l)),
        });
        return Ok(Outcome::new(true, report, format!("{tight} of {} sup-preserving maps are tight", sup.len())));
    };
    let f = load_endomap(map, &l)?;
    let sup = f.is_sup_preserving(&l);
    let tight = is_tight(&l, &f);
    let report = json!({
        "rans": rans(&l, &f).image(),
        "rani": rani(&l, &f).image(),
        "tight_interior": tight_interior(&l, &f).image(),
        "cotight_closure": cotight_closure(&l, &f).image(),
        "sup_preserving": sup,
        "tight": tight,
        "cotight": is_cotight(&l, &f),
        "star": if sup { star(&l, &f).ok().map(|s| s.into_image()) } else { None },
        "decomposition": if tight { decompose_tight(&l, &f).ok() } else { None },
    });
    Ok(Outcome::new(true, report, format!("tight: {tight}")))
}

pub fn tight_quantale(arg: &str, find_unit: bool, budget: &Budget) -> Run {
    let l = load_lattice(arg)?;
    let t = TightQuantale::new(&l, budget).map_err(invalid)?;
    let elements: Vec<&[usize]> = t.family().maps().iter().map(|f| f.image()).collect();
    let mut report = json!({
        "elements": elements,
        "quantale": QuantaleFile::of_frobenius(t.frobenius()),
        "girard": t.frobenius().is_girard(),
    });
    let mut summary = format!("tight quantale with {} elements", t.len());
    if find_unit {
        let u = t.quantale().find_unit();
        report["unit"] = unit_json(&u);
        report["unit_map"] = json!(u.unit.map(|i| t.map(i).image().to_vec()));
        summary.push_str(match u.unit {
            Some(_) => "; unit: identity",
            None => "; unit: none",
        });
    }
    Ok(Outcome::new(t.frobenius().is_girard(), report, summary))
}

pub fn bullet(arg: &str, budget: &Budget) -> Run {
    let l = load_lattice(arg)?;
    let b = bullet_quantale(&l, budget).map_err(invalid)?;
    let r = &b.report;
    let report = json!({
        "meet_maps": r.meet_maps,
        "cotight_maps": r.cotight_maps,
        "holds": r.holds(),
        "perp_formulas": flag(&r.perp_formulas),
        "perp_serre_gc": r.perp_serre_gc,
        "nucleus_is_cotight_closure": flag(&r.nucleus_is_cotight_closure),
        "closed_are_cotight": r.closed_are_cotight,
        "quotient_product": flag(&r.quotient_product),
        "iso_quantale": r.iso_quantale,
        "iso_negation": flag(&r.iso_negation),
        "tensor_transform": flag(&r.tensor_transform),
        "tensor_product": flag(&r.tensor_product),
    });
    let summary = format!("{} meet-preserving maps, {} cotight; laws hold: {}", r.meet_maps, r.cotight_maps, r.holds());
    Ok(Outcome::new(r.holds(), report, summary))
}

pub fn mn_count(n: usize, enumerate: bool, budget: &Budget) -> Run {
    let r = count_tight_mn(n, enumerate, budget).map_err(invalid)?;
    let by_class = r.by_class.map(|c| {
        json!({
            "constant": c.constant,
            "fundamental": c.fundamental,
            "composite": c.composite,
            "join": c.join,
            "generator": c.generator,
            "other": c.other,
        })
    });
    let report = json!({
        "n": n,
        "counted": r.counted,
        "formula": r.formula_value,
        "by_class": by_class,
    });
    let summary = match r.counted {
        Some(c) => format!("M_{n}: counted {c}, formula {}", r.formula_value),
        None => format!("M_{n}: formula {}", r.formula_value),
    };
    Ok(Outcome::new(r.matches(), report, summary))
}

pub fn mn_negations(n: usize, budget: &Budget) -> Run {
    let r = check_negation_formulas(n, budget).map_err(invalid)?;
    let report = json!({ "n": n, "composite": flag(&r.composite), "generator": flag(&r.generator) });
    Ok(Outcome::new(r.holds(), report, format!("M_{n} negation formulas hold: {}", r.holds())))
}

pub fn mn_positivity(n: usize, budget: &Budget) -> Run {
    let r = positivity_suite_mn(n, budget).map_err(invalid)?;
    let report = json!({
        "n": n,
        "elements": r.elements,
        "residual_squares_positive": flag(&r.residual_squares_positive),
        "above_identity": flag(&r.above_identity),
        "bottom_positive": r.bottom_positive,
        "unit": unit_json(&r.unit),
    });
    Ok(Outcome::new(r.holds(), report, format!("M_{n} tight quantale positive: {}", r.holds())))
}

/// Summary of the tight quantale of one lattice.
pub fn report(lattice: Option<&str>, n: Option<usize>, budget: &Budget) -> Run {
    let l = match (lattice, n) {
        (Some(arg), _) => load_lattice(arg)?,
        (None, Some(n)) => FiniteLattice::diamond(n),
        (None, None) => return Err(CliError::Parse("report needs --lattice or --n".into())),
    };
    let sup = enumerate_sup_endomaps(&l, budget).map_err(invalid)?;
    let isos = order_automorphisms(&l, budget).map_err(invalid)?;
    let pd = pentagon_diamond_check(&l, budget).map_err(invalid)?;
    let t = TightQuantale::new(&l, budget).map_err(invalid)?;
    let q = t.quantale();
    let unit = q.find_unit();
    let distributive = l.is_distributive();
    let dichotomy = unit.unit.is_some() == distributive
        && unit.unit.is_none_or(|u| *t.map(u) == EndoMap::identity(&l));
    let mut report = json!({
        "lattice": lattice_summary(&l),
        "sup_preserving": sup.len(),
        "order_automorphisms": isos.len(),
        "tight": t.len(),
        "tight_is_sup_minus_isos": pd.holds(),
        "tight_is_sup_minus_isos_witness": pd.witness.map(|w| w.into_image()),
        "girard": t.frobenius().is_girard(),
        "unit": unit_json(&unit),
        "unit_iff_distributive": dichotomy,
        "positive": q.is_positive(),
    });
    let mut passed = t.frobenius().is_girard() && dichotomy;
    if let Some(n) = n.filter(|_| lattice.is_none()) {
        let count = count_tight_mn(n, false, budget).map_err(invalid)?;
        let neg = check_negation_formulas(n, budget).map_err(invalid)?;
        report["formula"] = json!(count.formula_value);
        report["negation_formulas"] = json!(neg.holds());
        passed &= count.formula_value == t.len() as u64 && neg.holds();
    }
    let summary = format!(
        "{} elements, {} tight maps, unit: {}",
        l.size(),
        t.len(),
        if unit.unit.is_some() { "identity" } else { "none" }
    );
    Ok(Outcome::new(passed, report, summary))
}
