//! JSON reports for parsed problems.
//!
//! [`run`] executes a [`ProblemSpec`] according to its mode and returns a
//! `serde_json::Value`; [`render`] turns that value into the exact byte
//! string the command-line tool prints. Reports are deterministic: object
//! keys are sorted, term lists follow the graded-lexicographic order of
//! the underlying polynomials, and every scalar is rendered exactly as a
//! pair of rational strings. Running the same problem twice produces
//! byte-identical output.

use crate::error::Result;
use crate::integrability::{
    check_integrability, isochore_first_integral, verify_torus_invariance,
};
use crate::linear::LinearData;
use crate::matrix::Matrix;
use crate::normal_form::{normalize, normalize_simultaneous, IsochoreCertificate, NormalizationResult};
use crate::poly::Poly;
use crate::problem::{Mode, ProblemSpec};
use crate::resonance::{enumerate_resonances, torus_generators, weight_lattice, ResonanceSet};
use crate::transform::{jacobian_det, PolyMap};
use crate::vector_field::VectorField;
use crate::diff_form::DiffForm;
use crate::error::Error;
use crate::scalar::Scalar;
use serde_json::{json, Map, Value};

fn scalar_json(s: &Scalar) -> Value {
    json!({ "re": s.re().to_string(), "im": s.im().to_string() })
}

fn poly_json(p: &Poly, vars: &[String]) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(b, c)| {
            json!({
                "exponents": b.exponents(),
                "re": c.re().to_string(),
                "im": c.im().to_string(),
            })
        })
        .collect();
    json!({ "text": p.to_text(vars), "terms": terms })
}

fn field_json(x: &VectorField, vars: &[String]) -> Value {
    Value::Array(x.components().iter().map(|c| poly_json(c, vars)).collect())
}

fn matrix_json(m: &Matrix) -> Value {
    let rows: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array((0..m.cols()).map(|j| scalar_json(m.get(i, j))).collect()))
        .collect();
    Value::Array(rows)
}

fn map_json(phi: &PolyMap, vars: &[String]) -> Value {
    json!({
        "order": phi.order(),
        "components": Value::Array(
            phi.components().iter().map(|c| poly_json(c, vars)).collect()
        ),
    })
}

fn form_json(omega: &DiffForm, vars: &[String]) -> Value {
    let terms: Vec<Value> = omega
        .terms()
        .map(|(axes, f)| json!({ "axes": axes, "coefficient": poly_json(f, vars) }))
        .collect();
    json!({ "degree": omega.degree(), "terms": terms })
}

fn problem_json(spec: &ProblemSpec) -> Value {
    json!({
        "variables": spec.variables,
        "fields": Value::Array(spec.fields.iter().map(|x| field_json(x, &spec.variables)).collect()),
        "integrals": Value::Array(spec.integrals.iter().map(|g| poly_json(g, &spec.variables)).collect()),
        "order": spec.order,
        "resbound": spec.res_bound,
        "mode": spec.mode.as_str(),
    })
}

fn linear_json(data: &LinearData) -> Value {
    json!({
        "matrix": matrix_json(&data.a),
        "semisimple": matrix_json(&data.semisimple),
        "nilpotent": matrix_json(&data.nilpotent),
        "witness": data.witness.to_string(),
        "spectrum": Value::Array(data.gamma.iter().map(scalar_json).collect()),
        "eigenbasis": matrix_json(&data.p),
        "eigenbasis_inverse": matrix_json(&data.p_inv),
        "diagonalizable": data.is_diagonalizable(),
    })
}

fn resonance_json(set: &ResonanceSet) -> Value {
    let lattice = weight_lattice(set);
    json!({
        "bound": set.bound,
        "relations": Value::Array(
            set.relations.iter().map(|rel| json!(rel.c)).collect()
        ),
        "count": set.q,
        "upper_bound": set.q_upper,
        "complete": set.complete,
        "lattice_rank": lattice.r,
        "lattice_basis": Value::Array(lattice.basis.iter().map(|w| json!(w)).collect()),
    })
}

fn normalization_json(result: &NormalizationResult, vars: &[String]) -> Value {
    let generators: Vec<Value> = result
        .generators
        .iter()
        .map(|g| json!({ "degree": g.degree, "field": field_json(&g.field, vars) }))
        .collect();
    json!({
        "eigen_input": field_json(&result.eigen_input, vars),
        "normal_form": field_json(&result.normalized, vars),
        "generators": Value::Array(generators),
        "transform": map_json(&result.transform, vars),
        "inverse_transform": map_json(&result.inverse_transform, vars),
        "transform_from_original": map_json(&result.transform_from_original(), vars),
        "transform_to_original": map_json(&result.transform_to_original(), vars),
        "linearized": result.is_linearized(),
        "residual": field_json(&result.residual, vars),
    })
}

fn isochore_json(cert: &IsochoreCertificate, vars: &[String]) -> Value {
    json!({
        "generator_divergences": Value::Array(
            cert.generator_divergences.iter().map(|d| poly_json(d, vars)).collect()
        ),
        "jacobian_defect": poly_json(&cert.jacobian_defect, vars),
        "normalized_divergence": poly_json(&cert.normalized_divergence, vars),
        "clean": cert.is_clean(),
    })
}

fn torus_invariance_json(x: &VectorField, set: &ResonanceSet, order: u32) -> Result<Value> {
    let lattice = weight_lattice(set);
    let torus = torus_generators(&lattice);
    let invariance = verify_torus_invariance(x, &torus, order)?;
    let defects: Vec<Value> = invariance
        .defects
        .iter()
        .map(|d| match d {
            Some(k) => json!(k),
            None => Value::Null,
        })
        .collect();
    Ok(json!({
        "weights": Value::Array(torus.weights.iter().map(|w| json!(w)).collect()),
        "defects": Value::Array(defects),
        "clean": invariance.is_clean(),
    }))
}

fn first_integral_json(fields: &[VectorField], vars: &[String]) -> Value {
    match isochore_first_integral(fields) {
        Ok(fi) => json!({
            "available": true,
            "one_form": form_json(&fi.one_form, vars),
            "integral": poly_json(&fi.integral, vars),
        }),
        Err(e) => json!({ "available": false, "reason": e.to_string() }),
    }
}

fn family_json(
    transformed: &[VectorField],
    residuals: &[VectorField],
    vars: &[String],
) -> Value {
    json!({
        "transformed": Value::Array(transformed.iter().map(|x| field_json(x, vars)).collect()),
        "residuals": Value::Array(residuals.iter().map(|x| field_json(x, vars)).collect()),
        "invariant": residuals.iter().all(|r| r.is_zero()),
    })
}

/// Builds the divergence and volume certificate for the base result of a
/// simultaneous normalization, whose inner pass does not request one.
fn family_certificate(result: &NormalizationResult, transformed: &[VectorField]) -> IsochoreCertificate {
    let one = Poly::constant(result.transform.dim(), Scalar::one());
    let mut divergence = Poly::zero(result.transform.dim());
    for x in transformed {
        divergence = &divergence + &x.divergence();
    }
    IsochoreCertificate {
        generator_divergences: result.generators.iter().map(|g| g.field.divergence()).collect(),
        jacobian_defect: &jacobian_det(&result.transform) - &one,
        normalized_divergence: divergence,
    }
}

/// Runs a problem and returns its report as a JSON value.
pub fn run(spec: &ProblemSpec) -> Result<Value> {
    let vars = &spec.variables;
    let mut report = Map::new();
    report.insert("problem".into(), problem_json(spec));
    match spec.mode {
        Mode::ResonanceOnly => {
            let data = LinearData::analyze(&spec.fields[0])?;
            let set = enumerate_resonances(&data.gamma, spec.res_bound);
            report.insert("linear".into(), linear_json(&data));
            report.insert("resonances".into(), resonance_json(&set));
        }
        Mode::Normalize | Mode::Isochore => {
            let isochore = spec.mode == Mode::Isochore;
            if isochore {
                for x in &spec.fields {
                    let div = x.divergence();
                    if !div.is_zero() {
                        return Err(Error::NotIsochore {
                            degree: div.lowest_degree().unwrap_or(0),
                        });
                    }
                }
            }
            if spec.fields.len() == 1 {
                let result = normalize(&spec.fields[0], spec.order, isochore)?;
                let set = enumerate_resonances(&result.linear.gamma, spec.res_bound);
                report.insert("linear".into(), linear_json(&result.linear));
                report.insert("resonances".into(), resonance_json(&set));
                report.insert(
                    "torus_invariance".into(),
                    torus_invariance_json(&result.normalized, &set, spec.order)?,
                );
                if let Some(cert) = &result.isochore {
                    report.insert("isochore".into(), isochore_json(cert, vars));
                    if spec.dim() == 2 {
                        report.insert(
                            "first_integral".into(),
                            first_integral_json(std::slice::from_ref(&result.normalized), vars),
                        );
                    }
                }
                report.insert("normalization".into(), normalization_json(&result, vars));
            } else {
                let sn = normalize_simultaneous(&spec.fields, spec.order, spec.res_bound)?;
                report.insert("linear".into(), linear_json(&sn.base.linear));
                report.insert("resonances".into(), resonance_json(&sn.resonances));
                report.insert(
                    "torus_invariance".into(),
                    torus_invariance_json(&sn.base.normalized, &sn.resonances, spec.order)?,
                );
                report.insert(
                    "family".into(),
                    family_json(&sn.transformed, &sn.residuals, vars),
                );
                if isochore {
                    let cert = family_certificate(&sn.base, &sn.transformed);
                    report.insert("isochore".into(), isochore_json(&cert, vars));
                    if spec.fields.len() == spec.dim() - 1 {
                        report.insert(
                            "first_integral".into(),
                            first_integral_json(&sn.transformed, vars),
                        );
                    }
                }
                report.insert("normalization".into(), normalization_json(&sn.base, vars));
            }
        }
        Mode::Integrability => {
            let result = check_integrability(&spec.fields, &spec.integrals, spec.order)?;
            report.insert(
                "integrability".into(),
                json!({
                    "dim": result.dim,
                    "field_count": result.field_count,
                    "integral_count": result.integral_count,
                    "commuting": result.commuting,
                    "invariant": result.invariant,
                    "fields_independent": result.fields_independent,
                    "integrals_independent": result.integrals_independent,
                    "integrable": result.is_integrable(),
                }),
            );
        }
    }
    Ok(Value::Object(report))
}

/// Renders a report exactly as the command-line tool prints it.
pub fn render(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report serializes");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::parse_problem;

    fn report_for(text: &str) -> Value {
        run(&parse_problem(text).unwrap()).unwrap()
    }

    #[test]
    fn normalize_report_sections() {
        let report = report_for("vars x, y;\nfield x + x^2, -y;\norder 6;");
        let obj = report.as_object().unwrap();
        for key in ["problem", "linear", "resonances", "normalization", "torus_invariance"] {
            assert!(obj.contains_key(key), "missing section {key}");
        }
        assert_eq!(report["linear"]["diagonalizable"], Value::Bool(true));
        assert_eq!(report["normalization"]["residual"][0]["terms"], json!([]));
        // the saddle resonance (1,1) is found and the degree-2 term is removable
        assert_eq!(report["resonances"]["count"], json!(1));
        assert_eq!(report["normalization"]["linearized"], Value::Bool(true));
    }

    #[test]
    fn resonance_only_report() {
        let report = report_for("vars x, y;\nfield 2*x, 3*y;\nmode resonance-only;");
        assert_eq!(report["resonances"]["count"], json!(0));
        assert_eq!(report["resonances"]["lattice_rank"], json!(2));
        assert_eq!(report["resonances"]["complete"], Value::Bool(true));
        assert!(report.get("normalization").is_none());
    }

    #[test]
    fn integrability_report() {
        let report = report_for("vars x, y;\nfield x, -y;\nintegral x*y;\nmode integrability;");
        assert_eq!(report["integrability"]["integrable"], Value::Bool(true));
    }

    #[test]
    fn isochore_report_with_first_integral() {
        let report = report_for("vars x, y;\nfield x + x^2, -y - 2*x*y;\nmode isochore;");
        assert_eq!(report["isochore"]["clean"], Value::Bool(true));
        assert_eq!(report["first_integral"]["available"], Value::Bool(true));
        assert_eq!(report["first_integral"]["integral"]["text"], json!("x*y"));
    }

    #[test]
    fn isochore_rejects_nonzero_divergence() {
        let spec = parse_problem("vars x; field x; mode isochore;").unwrap();
        assert_eq!(run(&spec).unwrap_err(), Error::NotIsochore { degree: 0 });
    }

    #[test]
    fn rendering_is_deterministic() {
        let spec = parse_problem("vars x, y;\nfield x + y^2, -y;\norder 5;").unwrap();
        let a = render(&run(&spec).unwrap());
        let b = render(&run(&spec).unwrap());
        assert_eq!(a, b);
        assert!(a.ends_with('\n'));
    }

    #[test]
    fn simultaneous_family_report() {
        let text = "vars x, y, z;\nfield x, -y, 0;\nfield 0, -y, z;\nmode normalize;";
        let report = report_for(text);
        assert_eq!(report["family"]["invariant"], Value::Bool(true));
        assert_eq!(
            report["family"]["transformed"].as_array().unwrap().len(),
            2
        );
    }
}
