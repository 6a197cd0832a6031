//! The normalization pipeline: homological equations, Lie-series
//! transforms, and the degree-by-degree reduction of a vector field to
//! normal form around a fixed point.
//!
//! In eigen-coordinates the linear part is `diag(gamma) + N` with `N`
//! nilpotent and commuting with the diagonal. The homological operator
//! acts on a monomial `x^b d_l` as multiplication by its weight plus the
//! nilpotent `ad_N`, so it inverts exactly on the nonzero-weight subspace
//! by a finite Neumann series. Each degree contributes one generator `W`;
//! applying `exp(ad_W)` removes the nonresonant terms of that degree and
//! the time-1 flow of `-W` is the matching change of coordinates.

use crate::error::{Error, Result};
use crate::linear::{apply_linear_change, jordan_chevalley, LinearData};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::resonance::monomial_weight;
use crate::scalar::Scalar;
use crate::transform::{
    compose_map, flow_map, identity_map, invert_map, jacobian_det, linear_map, PolyMap,
};
use crate::vector_field::{lie_bracket, VectorField};

/// A homogeneous generator of degree at least 2, as produced for one step
/// of the normalization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieGenerator {
    pub degree: u32,
    pub field: VectorField,
}

impl LieGenerator {
    pub fn new(field: VectorField) -> Result<LieGenerator> {
        let Some(degree) = field.lowest_degree() else {
            return Err(Error::NotHomogeneous);
        };
        if !field.is_homogeneous_of(degree) {
            return Err(Error::NotHomogeneous);
        }
        if degree < 2 {
            return Err(Error::GeneratorDegree { degree });
        }
        Ok(LieGenerator { degree, field })
    }
}

/// Solution of one homological equation `[A x d, W] = Y - Y_res`.
#[derive(Clone, Debug)]
pub struct HomologicalSolution {
    /// The generator `W`, supported on nonzero weights.
    pub generator: VectorField,
    /// The resonant (weight-zero) part of `Y`, which no generator can
    /// remove.
    pub resonant: VectorField,
}

/// Solves the homological equation at one degree: splits the homogeneous
/// field `y` into its resonant part and a part `[L, W]` in the image of
/// the homological operator of the linear field `L = A x d`. The matrix
/// `A` must have a diagonal semisimple part; `W` is supported exactly on
/// the nonzero-weight monomials of `y`, inverted weight by weight through
/// the finite Neumann series of `ad_N`.
pub fn homological_solve(
    linear: &Matrix,
    y: &VectorField,
    degree: u32,
) -> Result<HomologicalSolution> {
    let n = y.dim();
    if linear.rows() != n || linear.cols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: linear.rows() });
    }
    if degree < 2 {
        return Err(Error::GeneratorDegree { degree });
    }
    if !y.is_homogeneous_of(degree) {
        return Err(Error::NotHomogeneous);
    }
    let split = jordan_chevalley(linear);
    if !split.semisimple.is_diagonal() {
        return Err(Error::NotDiagonalized);
    }
    let gamma = split.semisimple.diagonal_entries();
    let n_field = VectorField::linear(&split.nilpotent);

    // Group the monomials of y by weight.
    let mut resonant = VectorField::zero(n);
    let mut buckets: Vec<(Scalar, VectorField)> = Vec::new();
    for l in 0..n {
        for (b, c) in y.component(l).terms() {
            let w = monomial_weight(&gamma, b, l)?;
            let mono = VectorField::monomial(n, b.exponents().to_vec(), l, c.clone());
            if w.is_zero() {
                resonant = &resonant + &mono;
            } else if let Some((_, bucket)) = buckets.iter_mut().find(|(lam, _)| *lam == w) {
                let updated = &*bucket + &mono;
                *bucket = updated;
            } else {
                buckets.push((w, mono));
            }
        }
    }

    // On the weight-lambda subspace the operator is lambda + ad_N with
    // ad_N nilpotent, so the inverse is the finite series
    // sum_m (-1)^m lambda^{-(m+1)} ad_N^m.
    let mut generator = VectorField::zero(n);
    let bound = n as u32 * (degree + 1) + 2;
    for (lambda, y_lambda) in &buckets {
        let lambda_inv = lambda.inv().expect("weight is nonzero");
        let mut term = y_lambda.clone();
        let mut coeff = lambda_inv.clone();
        let mut steps = 0u32;
        loop {
            generator = &generator + &term.scale(&coeff);
            term = lie_bracket(&n_field, &term, degree)?;
            if term.is_zero() {
                break;
            }
            coeff = -&(&coeff * &lambda_inv);
            steps += 1;
            assert!(steps <= bound, "Neumann series failed to terminate");
        }
    }

    debug_assert!({
        let a_field = VectorField::linear(linear);
        let achieved = &lie_bracket(&a_field, &generator, degree).expect("dimensions agree")
            + &resonant;
        achieved == *y
    });
    Ok(HomologicalSolution { generator, resonant })
}

/// The Lie-series transform `exp(ad_W) X = sum_m ad_W^m X / m!`, truncated
/// at `order`. The generator must have lowest degree at least 2, so every
/// bracket raises degree and the series is finite. This equals the
/// pushforward of `X` by the time-1 flow of `-W`.
pub fn lie_transform(x: &VectorField, w: &VectorField, order: u32) -> Result<VectorField> {
    if x.dim() != w.dim() {
        return Err(Error::DimensionMismatch { expected: x.dim(), found: w.dim() });
    }
    if order < 1 {
        return Err(Error::InvalidOrder { required: 1, got: order });
    }
    if let Some(low) = w.lowest_degree() {
        if low < 2 {
            return Err(Error::GeneratorDegree { degree: low });
        }
    }
    let mut acc = x.truncate(order);
    let mut term = acc.clone();
    let mut factorial = Scalar::one();
    let mut m = 1i64;
    loop {
        term = lie_bracket(w, &term, order)?;
        if term.is_zero() {
            break;
        }
        factorial = &factorial * &Scalar::from_rational(1, m);
        acc = &acc + &term.scale(&factorial);
        m += 1;
    }
    Ok(acc)
}

/// The exactness certificates collected in volume-preserving mode: each
/// generator's divergence, the deviation of the transform's Jacobian
/// determinant from 1, and the divergence of the normal form. All three
/// are zero for a divergence-free input.
#[derive(Clone, Debug)]
pub struct IsochoreCertificate {
    pub generator_divergences: Vec<Poly>,
    pub jacobian_defect: Poly,
    pub normalized_divergence: Poly,
}

impl IsochoreCertificate {
    pub fn is_clean(&self) -> bool {
        self.generator_divergences.iter().all(Poly::is_zero)
            && self.jacobian_defect.is_zero()
            && self.normalized_divergence.is_zero()
    }
}

/// Everything `normalize` produces: the linear analysis, the field in
/// eigen-coordinates, the normal form, the per-degree generators, the
/// accumulated polynomial transform with its inverse, and the commutation
/// residual `[S, X_normal]` (zero by construction).
#[derive(Clone, Debug)]
pub struct NormalizationResult {
    pub linear: LinearData,
    /// The input field in eigen-coordinates, before higher-order steps.
    pub eigen_input: VectorField,
    /// The normal form, in eigen-coordinates.
    pub normalized: VectorField,
    pub generators: Vec<LieGenerator>,
    /// The accumulated change of coordinates: `normalized` is the
    /// pushforward of `eigen_input` under this map.
    pub transform: PolyMap,
    pub inverse_transform: PolyMap,
    pub order: u32,
    /// `[diag(gamma) x d, normalized]` truncated at `order`.
    pub residual: VectorField,
    pub isochore: Option<IsochoreCertificate>,
}

impl NormalizationResult {
    /// True when every term of degree at least 2 was removed.
    pub fn is_linearized(&self) -> bool {
        self.normalized.max_degree().map_or(true, |d| d <= 1)
    }

    /// The semisimple linear field `diag(gamma) x d` in eigen-coordinates.
    pub fn semisimple_field(&self) -> VectorField {
        VectorField::diagonal(&self.linear.gamma)
    }

    /// The full map from the original coordinates into normal-form
    /// coordinates (linear diagonalization followed by the higher-order
    /// transform).
    pub fn transform_from_original(&self) -> PolyMap {
        let lin = linear_map(&self.linear.p_inv, self.order);
        compose_map(&self.transform, &lin).expect("dimensions agree")
    }

    /// The full map back from normal-form coordinates to the original
    /// ones.
    pub fn transform_to_original(&self) -> PolyMap {
        let lin = linear_map(&self.linear.p, self.order);
        compose_map(&lin, &self.inverse_transform).expect("dimensions agree")
    }
}

/// Normalizes a vector field to the given order: diagonalizes the
/// semisimple linear part, then removes nonresonant terms degree by
/// degree. With `isochore` set, the input must be divergence free and the
/// result carries the volume-preservation certificates.
pub fn normalize(x: &VectorField, order: u32, isochore: bool) -> Result<NormalizationResult> {
    if order < 2 {
        return Err(Error::InvalidOrder { required: 2, got: order });
    }
    let linear = LinearData::analyze(x)?;
    if isochore {
        let div = x.divergence();
        if !div.is_zero() {
            return Err(Error::NotIsochore { degree: div.lowest_degree().unwrap_or(0) });
        }
    }
    let n = x.dim();
    let eigen_input = apply_linear_change(x, &linear.p, order)?;
    let a_eigen = &(&linear.p_inv * &linear.a) * &linear.p;
    let s_field = VectorField::diagonal(&linear.gamma);

    let mut current = eigen_input.clone();
    let mut phi = identity_map(n, order);
    let mut generators: Vec<LieGenerator> = Vec::new();
    for k in 2..=order {
        let xk = current.homogeneous_part(k);
        if xk.is_zero() {
            continue;
        }
        let sol = homological_solve(&a_eigen, &xk, k)?;
        if sol.generator.is_zero() {
            // already resonant at this degree; nothing to remove
            continue;
        }
        let w = sol.generator;
        current = lie_transform(&current, &w, order)?;
        debug_assert_eq!(current.homogeneous_part(k), sol.resonant);
        let step = flow_map(&(-&w), order)?;
        phi = compose_map(&step, &phi)?;
        generators.push(LieGenerator { degree: k, field: w });
    }

    let normalized = current;
    let residual = lie_bracket(&s_field, &normalized, order)?;
    let inverse_transform = invert_map(&phi)?;
    let isochore_cert = if isochore {
        let generator_divergences: Vec<Poly> =
            generators.iter().map(|g| g.field.divergence()).collect();
        let jacobian_defect = &jacobian_det(&phi) - &Poly::one(n);
        let normalized_divergence = normalized.divergence();
        Some(IsochoreCertificate {
            generator_divergences,
            jacobian_defect,
            normalized_divergence,
        })
    } else {
        None
    };

    Ok(NormalizationResult {
        linear,
        eigen_input,
        normalized,
        generators,
        transform: phi,
        inverse_transform,
        order,
        residual,
        isochore: isochore_cert,
    })
}

/// Normal form of a commuting family: the family is checked for pairwise
/// commutation, the first field is normalized, and the same sequence of
/// Lie transforms is applied to the rest. Because the family commutes,
/// every transformed field ends up invariant under the semisimple part of
/// the first one; the per-field residuals record that.
#[derive(Clone, Debug)]
pub struct SimultaneousNormalization {
    pub base: NormalizationResult,
    /// The transformed fields, in eigen-coordinates of the first field;
    /// index 0 is the normal form of the first field itself.
    pub transformed: Vec<VectorField>,
    /// `[diag(gamma) x d, transformed_j]` for each field, truncated at the
    /// order; all zero for an exactly commuting family.
    pub residuals: Vec<VectorField>,
    pub resonances: crate::resonance::ResonanceSet,
}

pub fn normalize_simultaneous(
    fields: &[VectorField],
    order: u32,
    res_bound: u32,
) -> Result<SimultaneousNormalization> {
    if fields.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let n = fields[0].dim();
    for f in fields {
        if f.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: f.dim() });
        }
    }
    for i in 0..fields.len() {
        for j in i + 1..fields.len() {
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

    let base = normalize(&fields[0], order, false)?;
    let s_field = base.semisimple_field();
    let mut transformed = vec![base.normalized.clone()];
    for f in &fields[1..] {
        let mut y = apply_linear_change(f, &base.linear.p, order)?;
        for g in &base.generators {
            y = lie_transform(&y, &g.field, order)?;
        }
        transformed.push(y);
    }
    let residuals = transformed
        .iter()
        .map(|y| lie_bracket(&s_field, y, order))
        .collect::<Result<Vec<_>>>()?;
    let resonances = crate::resonance::enumerate_resonances(&base.linear.gamma, res_bound);
    Ok(SimultaneousNormalization { base, transformed, residuals, resonances })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::push_forward;

    fn saddle_with(terms: &[(Vec<u32>, usize, i64)]) -> VectorField {
        let mut x = VectorField::diagonal(&[Scalar::one(), Scalar::from_int(-1)]);
        for (exps, axis, c) in terms {
            x = &x + &VectorField::monomial(2, exps.clone(), *axis, Scalar::from_int(*c));
        }
        x
    }

    #[test]
    fn homological_solution_in_one_dimension() {
        // [x d, W] = a x^2 d is solved by W = a x^2 d
        let linear = Matrix::identity(1);
        let y = VectorField::monomial(1, vec![2], 0, Scalar::from_int(3));
        let sol = homological_solve(&linear, &y, 2).unwrap();
        assert_eq!(sol.generator, y);
        assert!(sol.resonant.is_zero());
    }

    #[test]
    fn homological_solution_keeps_resonant_part() {
        // for gamma = (1, -1), x1^2 x2 d1 is resonant and x1^2 d1 is not
        let linear = Matrix::diagonal(&[Scalar::one(), Scalar::from_int(-1)]);
        let y = &VectorField::monomial(2, vec![2, 1], 0, Scalar::from_int(5))
            + &VectorField::monomial(2, vec![3, 0], 0, Scalar::from_int(7));
        let sol = homological_solve(&linear, &y, 3).unwrap();
        assert_eq!(
            sol.resonant,
            VectorField::monomial(2, vec![2, 1], 0, Scalar::from_int(5))
        );
        // the generator removes exactly the nonresonant part
        let l_field = VectorField::diagonal(&[Scalar::one(), Scalar::from_int(-1)]);
        let achieved = lie_bracket(&l_field, &sol.generator, 3).unwrap();
        assert_eq!(
            achieved,
            VectorField::monomial(2, vec![3, 0], 0, Scalar::from_int(7))
        );
    }

    #[test]
    fn homological_solution_with_nilpotent_part() {
        // Jordan block [[1,1],[0,1]]: the Neumann series has three terms
        let linear = Matrix::from_rows(vec![
            vec![Scalar::one(), Scalar::one()],
            vec![Scalar::zero(), Scalar::one()],
        ])
        .unwrap();
        let y = VectorField::monomial(2, vec![2, 0], 0, Scalar::one());
        let sol = homological_solve(&linear, &y, 2).unwrap();
        assert!(sol.resonant.is_zero());
        let expected = &(&y - &VectorField::monomial(2, vec![1, 1], 0, Scalar::from_int(2)))
            + &VectorField::monomial(2, vec![0, 2], 0, Scalar::from_int(2));
        assert_eq!(sol.generator, expected);
        // and it really solves the equation
        let l_field = VectorField::linear(&linear);
        assert_eq!(lie_bracket(&l_field, &sol.generator, 2).unwrap(), y);
    }

    #[test]
    fn homological_requires_diagonal_semisimple_part() {
        // the swap matrix is semisimple but not diagonal
        let linear = Matrix::from_rows(vec![
            vec![Scalar::zero(), Scalar::one()],
            vec![Scalar::one(), Scalar::zero()],
        ])
        .unwrap();
        let y = VectorField::monomial(2, vec![2, 0], 0, Scalar::one());
        assert_eq!(homological_solve(&linear, &y, 2).unwrap_err(), Error::NotDiagonalized);
    }

    #[test]
    fn homological_rejects_inhomogeneous_input() {
        let linear = Matrix::identity(1);
        let y = &VectorField::monomial(1, vec![2], 0, Scalar::one())
            + &VectorField::monomial(1, vec![3], 0, Scalar::one());
        assert_eq!(homological_solve(&linear, &y, 2).unwrap_err(), Error::NotHomogeneous);
    }

    #[test]
    fn lie_transform_linearizes_the_model_field() {
        // exp(ad_W) with W = x^2 d sends x d + x^2 d to x d exactly
        let x = &VectorField::monomial(1, vec![1], 0, Scalar::one())
            + &VectorField::monomial(1, vec![2], 0, Scalar::one());
        let w = VectorField::monomial(1, vec![2], 0, Scalar::one());
        let result = lie_transform(&x, &w, 8).unwrap();
        assert_eq!(result, VectorField::monomial(1, vec![1], 0, Scalar::one()));
    }

    #[test]
    fn lie_transform_matches_flow_pushforward() {
        let x = saddle_with(&[(vec![2, 0], 0, 1), (vec![0, 2], 1, 3)]);
        let w = VectorField::monomial(2, vec![1, 1], 1, Scalar::from_rational(1, 2));
        let order = 5;
        let via_series = lie_transform(&x, &w, order).unwrap();
        let phi = flow_map(&(-&w), order).unwrap();
        let via_flow = push_forward(&phi, &x, order).unwrap();
        assert_eq!(via_series, via_flow);
    }

    #[test]
    fn lie_transform_rejects_linear_generators() {
        let x = VectorField::monomial(1, vec![1], 0, Scalar::one());
        let w = VectorField::monomial(1, vec![1], 0, Scalar::one());
        assert_eq!(
            lie_transform(&x, &w, 4).unwrap_err(),
            Error::GeneratorDegree { degree: 1 }
        );
    }

    #[test]
    fn normalize_removes_the_nonresonant_term() {
        let x = saddle_with(&[(vec![2, 0], 0, 1)]);
        let result = normalize(&x, 6, false).unwrap();
        assert!(result.is_linearized());
        assert!(result.residual.is_zero());
        assert_eq!(result.generators.len(), 1);
        assert_eq!(result.generators[0].degree, 2);
        // the transform actually conjugates the input to the normal form
        let pushed = push_forward(&result.transform, &result.eigen_input, 6).unwrap();
        assert_eq!(pushed, result.normalized);
    }

    #[test]
    fn normalize_is_idempotent_on_normal_forms() {
        let x = saddle_with(&[(vec![2, 1], 0, 4)]);
        let result = normalize(&x, 6, false).unwrap();
        assert_eq!(result.normalized, x);
        assert!(result.generators.is_empty());
        assert!(result.transform.is_identity());
        assert!(result.residual.is_zero());
    }

    #[test]
    fn normalize_keeps_resonant_terms_only() {
        let x = saddle_with(&[(vec![2, 0], 0, 1), (vec![2, 1], 0, 4)]);
        let result = normalize(&x, 6, false).unwrap();
        assert!(result.residual.is_zero());
        assert!(result.normalized.homogeneous_part(2).is_zero());
        // the weight-zero cubic term survives (possibly with corrections)
        let cubic = result.normalized.homogeneous_part(3);
        assert_eq!(
            cubic.component(0).coeff(&crate::poly::MultiIndex::new(vec![2, 1])),
            Scalar::from_int(4)
        );
    }

    #[test]
    fn normalize_diagonalizes_first() {
        // linear part [[0,1],[1,0]] becomes diag(1,-1) in eigen-coordinates
        let x = VectorField::from_components(vec![Poly::var(2, 1), Poly::var(2, 0)]).unwrap();
        let result = normalize(&x, 4, false).unwrap();
        assert_eq!(result.linear.gamma, vec![Scalar::one(), Scalar::from_int(-1)]);
        assert_eq!(result.normalized, VectorField::diagonal(&result.linear.gamma));
    }

    #[test]
    fn normalize_requires_order_two() {
        let x = VectorField::monomial(1, vec![1], 0, Scalar::one());
        assert_eq!(
            normalize(&x, 1, false).unwrap_err(),
            Error::InvalidOrder { required: 2, got: 1 }
        );
    }

    #[test]
    fn normalize_transform_and_inverse_cancel() {
        let x = saddle_with(&[(vec![2, 0], 0, 2), (vec![1, 1], 1, -1)]);
        let result = normalize(&x, 7, false).unwrap();
        let both = compose_map(&result.transform, &result.inverse_transform).unwrap();
        assert!(both.is_identity());
    }

    #[test]
    fn isochore_mode_certifies_volume_preservation() {
        // X = (x1 + x1^2) d1 + (-x2 - 2 x1 x2) d2 is divergence free
        let x = saddle_with(&[(vec![2, 0], 0, 1), (vec![1, 1], 1, -2)]);
        assert!(x.divergence().is_zero());
        let result = normalize(&x, 6, true).unwrap();
        let cert = result.isochore.as_ref().unwrap();
        assert!(cert.is_clean());
        assert!(result.normalized.divergence().is_zero());
        assert!(result.residual.is_zero());
    }

    #[test]
    fn isochore_mode_rejects_divergent_input() {
        // x d has divergence 1
        let x = VectorField::monomial(1, vec![1], 0, Scalar::one());
        assert_eq!(
            normalize(&x, 4, true).unwrap_err(),
            Error::NotIsochore { degree: 0 }
        );
    }

    #[test]
    fn simultaneous_family_stays_invariant() {
        // X1 = x1 d1 - x2 d2 and X2 = x1 x2 d3 commute exactly
        let x1 = VectorField::diagonal(&[
            Scalar::one(),
            Scalar::from_int(-1),
            Scalar::zero(),
        ]);
        let x2 = VectorField::monomial(3, vec![1, 1, 0], 2, Scalar::one());
        let sim = normalize_simultaneous(&[x1.clone(), x2.clone()], 6, 8).unwrap();
        assert_eq!(sim.transformed[0], x1);
        assert_eq!(sim.transformed[1], x2);
        assert!(sim.residuals.iter().all(VectorField::is_zero));
        assert_eq!(sim.resonances.gamma.len(), 3);
    }

    #[test]
    fn simultaneous_transforms_the_whole_family() {
        // X1 has a removable quadratic term; X2 = 2 X1 rides along
        let x1 = saddle_with(&[(vec![2, 0], 0, 1)]);
        let x2 = x1.scale(&Scalar::from_int(2));
        let sim = normalize_simultaneous(&[x1, x2], 6, 8).unwrap();
        assert!(sim.base.is_linearized());
        assert_eq!(sim.transformed[1], sim.transformed[0].scale(&Scalar::from_int(2)));
        assert!(sim.residuals.iter().all(VectorField::is_zero));
    }

    #[test]
    fn simultaneous_rejects_noncommuting_families() {
        let x1 = VectorField::diagonal(&[Scalar::one(), Scalar::from_int(-1)]);
        let x2 = VectorField::monomial(2, vec![2, 0], 0, Scalar::one());
        let err = normalize_simultaneous(&[x1, x2], 6, 8).unwrap_err();
        assert_eq!(err, Error::NotCommuting { first: 0, second: 1, degree: 2 });
    }

    #[test]
    fn generator_constructor_validates() {
        let good = VectorField::monomial(2, vec![2, 0], 0, Scalar::one());
        assert_eq!(LieGenerator::new(good.clone()).unwrap().degree, 2);
        let linear = VectorField::monomial(2, vec![1, 0], 0, Scalar::one());
        assert_eq!(
            LieGenerator::new(linear).unwrap_err(),
            Error::GeneratorDegree { degree: 1 }
        );
        let mixed = &good + &VectorField::monomial(2, vec![3, 0], 0, Scalar::one());
        assert_eq!(LieGenerator::new(mixed).unwrap_err(), Error::NotHomogeneous);
    }

    #[test]
    fn full_round_trip_through_original_coordinates() {
        // start from a field whose linear part needs diagonalizing
        let x = VectorField::from_components(vec![
            &Poly::var(2, 1) + &Poly::monomial(2, vec![2, 0], Scalar::one()),
            Poly::var(2, 0),
        ])
        .unwrap();
        let result = normalize(&x, 5, false).unwrap();
        let forward = result.transform_from_original();
        let backward = result.transform_to_original();
        let round = compose_map(&forward, &backward).unwrap();
        assert!(round.is_identity());
    }
}
