//! Integrability checks for commuting families: pairwise commutation,
//! invariance of first integrals, independence of both, and the
//! volume-preserving construction that produces a first integral from
//! `n - 1` divergence-free commuting fields by contracting them into the
//! volume form.

use crate::diff_form::{contract, poincare_integrate, wedge_differentials, DiffForm};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::resonance::TorusGenerators;
use crate::vector_field::{bracket_failure_degree, lie_bracket, wedge_vectors, VectorField};

/// Outcome of the four integrability checks on a family of `m` fields and
/// `n - m` first integrals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegrabilityReport {
    pub dim: usize,
    pub field_count: usize,
    pub integral_count: usize,
    /// Every pair of fields commutes (to the order checked).
    pub commuting: bool,
    /// Every integral is constant along every field (to the order checked).
    pub invariant: bool,
    /// The fields are generically independent: their wedge is nonzero.
    pub fields_independent: bool,
    /// The integrals are generically independent: the wedge of their
    /// differentials is nonzero (vacuously true with no integrals).
    pub integrals_independent: bool,
}

impl IntegrabilityReport {
    pub fn is_integrable(&self) -> bool {
        self.commuting && self.invariant && self.fields_independent && self.integrals_independent
    }
}

/// Runs the four checks on a candidate integrable structure: `m` pairwise
/// commuting independent fields together with `n - m` independent common
/// first integrals. Commutation and invariance are checked through the
/// given order; independence is exact.
pub fn check_integrability(
    fields: &[VectorField],
    integrals: &[Poly],
    order: u32,
) -> Result<IntegrabilityReport> {
    if fields.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let n = fields[0].dim();
    for f in fields {
        if f.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: f.dim() });
        }
    }
    for g in integrals {
        if g.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: g.dim() });
        }
    }
    if fields.len() + integrals.len() != n {
        return Err(Error::FamilyCount {
            fields: fields.len(),
            integrals: integrals.len(),
            dim: n,
        });
    }

    let mut commuting = true;
    'pairs: for i in 0..fields.len() {
        for j in i + 1..fields.len() {
            if !lie_bracket(&fields[i], &fields[j], order)?.is_zero() {
                commuting = false;
                break 'pairs;
            }
        }
    }

    let mut invariant = true;
    'invariance: for x in fields {
        for g in integrals {
            if !x.apply_to_trunc(g, order).is_zero() {
                invariant = false;
                break 'invariance;
            }
        }
    }

    let fields_independent = !wedge_vectors(fields)?.is_zero();
    let integrals_independent = if integrals.is_empty() {
        // the empty wedge is the constant function 1
        true
    } else {
        !wedge_differentials(integrals)?.is_zero()
    };

    Ok(IntegrabilityReport {
        dim: n,
        field_count: fields.len(),
        integral_count: integrals.len(),
        commuting,
        invariant,
        fields_independent,
        integrals_independent,
    })
}

/// Contracts the fields into the volume form, first field outermost:
/// `alpha = i_{X_1} ... i_{X_k} Omega`. With `k = n - 1` fields the result
/// is a 1-form; any other count is rejected with the degree that would
/// have resulted.
pub fn contraction_one_form(fields: &[VectorField]) -> Result<DiffForm> {
    if fields.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let n = fields[0].dim();
    for f in fields {
        if f.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: f.dim() });
        }
    }
    if fields.len() + 1 != n {
        return Err(Error::NotOneForm {
            degree: n.saturating_sub(fields.len()),
        });
    }
    let mut acc = DiffForm::volume(n);
    for x in fields.iter().rev() {
        acc = contract(x, &acc)?;
    }
    Ok(acc)
}

/// A first integral produced by the volume construction, together with the
/// closed 1-form it integrates.
#[derive(Clone, Debug)]
pub struct FirstIntegral {
    pub one_form: DiffForm,
    pub integral: Poly,
}

/// For `n - 1` pairwise commuting, divergence-free fields, the contraction
/// `alpha = i_{X_1} ... i_{X_{n-1}} Omega` is closed, and its primitive `g`
/// (normalized to vanish at the origin) is a common first integral:
/// `X_i(g) = alpha(X_i) = 0` because the contraction repeats a field.
pub fn isochore_first_integral(fields: &[VectorField]) -> Result<FirstIntegral> {
    for x in fields {
        let div = x.divergence();
        if !div.is_zero() {
            return Err(Error::NotIsochore {
                degree: div.lowest_degree().unwrap_or(0),
            });
        }
    }
    let exact_order = |x: &VectorField, y: &VectorField| {
        x.max_degree().unwrap_or(1) + y.max_degree().unwrap_or(1)
    };
    for i in 0..fields.len() {
        for j in i + 1..fields.len() {
            let order = exact_order(&fields[i], &fields[j]).max(1);
            let br = lie_bracket(&fields[i], &fields[j], order)?;
            if !br.is_zero() {
                return Err(Error::NotCommuting {
                    first: i,
                    second: j,
                    degree: br.lowest_degree().unwrap_or(0),
                });
            }
        }
    }
    let alpha = contraction_one_form(fields)?;
    let integral = poincare_integrate(&alpha)?;
    for x in fields {
        debug_assert!(x.apply_to(&integral).is_zero());
    }
    Ok(FirstIntegral { one_form: alpha, integral })
}

/// Per-generator invariance defects of a field under the torus action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusInvariance {
    pub order: u32,
    /// For each generator, the lowest degree at or below `order` where
    /// `[Z, X]` fails to vanish, or `None` when it vanishes throughout.
    pub defects: Vec<Option<u32>>,
}

impl TorusInvariance {
    pub fn is_clean(&self) -> bool {
        self.defects.iter().all(Option::is_none)
    }
}

/// Checks that a field is invariant under every torus generator through
/// the given order: `[Z_w, X] = 0 mod degree order + 1`. The generators
/// must be diagonal linear fields; anything else is rejected as an
/// invalid witness.
pub fn verify_torus_invariance(
    x: &VectorField,
    torus: &TorusGenerators,
    order: u32,
) -> Result<TorusInvariance> {
    let n = x.dim();
    let mut defects = Vec::with_capacity(torus.fields.len());
    for z in &torus.fields {
        if z.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: z.dim() });
        }
        for (l, comp) in z.components().iter().enumerate() {
            let expected = comp.coeff(&crate::poly::MultiIndex::unit(n, l));
            let diagonal = Poly::var(n, l).scale(&expected);
            if *comp != diagonal {
                return Err(Error::InvalidWitness {
                    reason: format!(
                        "torus generator component {} is not a multiple of x{}",
                        l + 1,
                        l + 1
                    ),
                });
            }
        }
        defects.push(bracket_failure_degree(z, x, order)?);
    }
    Ok(TorusInvariance { order, defects })
}
