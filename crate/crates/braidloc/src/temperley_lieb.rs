//! Temperley-Lieb images of R-matrix representations: idempotent generators,
//! Jones-Wenzl projectors, and the dimension combinatorics of the simple
//! modules at a root of unity.
//!
//! An R-matrix with spectrum {-1, q} turns each braid generator image R_i
//! into an idempotent E_i = (R_i + I)/(q + 1). The E_i satisfy the
//! Temperley-Lieb relations with loop parameter delta determined by
//! 1/delta^2 = 1/(q + 2 + 1/q), and the Jones-Wenzl projectors built from
//! them decide through which semisimple quotient the representation factors.

use num_integer::{Integer, Roots};
use serde::Serialize;
use thiserror::Error;

use crate::cyclo::{CycNum, CycloError, Scalar, DEFAULT_TOL};
use crate::fusion::{self, ExactSq, FusionError};
use crate::matrix::{amplify, Backend, MatrixError, SqMatrix};
use crate::yang_baxter::{check_ybe, RMatrixSpec, YangBaxterError};

/// Errors from Temperley-Lieb construction and analysis.
#[derive(Debug, Error)]
pub enum TlError {
    #[error("the R-matrix must act on two sites")]
    BadArity,
    #[error("need at least 2 strands")]
    TooFewStrands,
    #[error("the R-matrix does not satisfy the Yang-Baxter equation")]
    YbeFails,
    #[error("degenerate eigenvalue parameter: {0}")]
    DegenerateParameter(String),
    #[error("generator {0} is not idempotent for the given eigenvalue")]
    NonIdempotent(usize),
    #[error("projector level {level} must lie in 2..={max}")]
    LevelOutOfRange { level: usize, max: usize },
    #[error("eigenvalue parameter is not a root of unity")]
    NotRootOfUnity,
    #[error("quantum integer [{0}] vanishes before the requested level")]
    VanishingQuantumInteger(usize),
    #[error("projector invariants failed at level {0}")]
    ProjectorInvariant(usize),
    #[error("the level parameter must be at least 3")]
    BadLevel,
    #[error("count overflow while solving multiplicities")]
    Overflow,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    YangBaxter(#[from] YangBaxterError),
}

/// The image of the Temperley-Lieb algebra on n strands inside
/// End((C^d)^{(x) n}): idempotent generators E_1..E_{n-1} together with the
/// eigenvalue parameter and the squared inverse loop parameter.
#[derive(Debug, Clone)]
pub struct TLImage {
    n: usize,
    d: usize,
    q: CycNum,
    delta_inv_sq: CycNum,
    e: Vec<SqMatrix>,
}

impl TLImage {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Local site dimension d; the generators act on dimension d^n.
    pub fn local_dim(&self) -> usize {
        self.d
    }

    /// Eigenvalue parameter: the braid generator image has spectrum {-1, q}.
    /// In the usual presentation of the algebra this is the square of the
    /// quantum parameter.
    pub fn q(&self) -> &CycNum {
        &self.q
    }

    /// 1/delta^2 where delta is the loop parameter; the contraction relation
    /// reads E_i E_{i+-1} E_i = (1/delta^2) E_i.
    pub fn delta_inv_sq(&self) -> &CycNum {
        &self.delta_inv_sq
    }

    pub fn generators(&self) -> &[SqMatrix] {
        &self.e
    }

    /// E_i for 1 <= i <= n-1.
    pub fn generator(&self, i: usize) -> Result<&SqMatrix, TlError> {
        if i == 0 || i >= self.n {
            return Err(TlError::LevelOutOfRange {
                level: i,
                max: self.n - 1,
            });
        }
        Ok(&self.e[i - 1])
    }
}

/// Builds the Temperley-Lieb image of an R-matrix with spectrum {-1, q_ev}
/// on n strands. Every generator is checked to be idempotent; failure means
/// the eigenvalue parameter does not match the R-matrix.
pub fn tl_from_r(r: &RMatrixSpec, n: usize, q_ev: &CycNum) -> Result<TLImage, TlError> {
    if r.arity() != 2 {
        return Err(TlError::BadArity);
    }
    if n < 2 {
        return Err(TlError::TooFewStrands);
    }
    if !check_ybe(r, DEFAULT_TOL)? {
        return Err(TlError::YbeFails);
    }
    if q_ev.is_zero() {
        return Err(TlError::DegenerateParameter("q = 0".into()));
    }
    let q_plus_one = q_ev.add(&CycNum::one());
    if q_plus_one.is_zero() {
        return Err(TlError::DegenerateParameter("q = -1".into()));
    }
    let inv_q_plus_one = q_plus_one.inv()?;
    let delta_sq = q_ev.add(&CycNum::from_integer(2)).add(&q_ev.inv()?);
    let delta_inv_sq = delta_sq.inv()?;

    let d = r.local_dim();
    let backend = r.matrix().backend();
    let dim = d.pow(n as u32);
    let identity = SqMatrix::identity(dim, backend);
    let scalar = scalar_for(&inv_q_plus_one, backend);

    let mut e = Vec::with_capacity(n - 1);
    for i in 1..n {
        let ri = amplify(r.matrix(), i, n, d)?;
        let ei = ri.add(&identity)?.scale(&scalar)?;
        if !is_idempotent(&ei)? {
            return Err(TlError::NonIdempotent(i));
        }
        e.push(ei);
    }
    Ok(TLImage {
        n,
        d,
        q: q_ev.clone(),
        delta_inv_sq,
        e,
    })
}

/// Outcome of checking the three Temperley-Lieb relation families.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TlRelationReport {
    pub idempotent: bool,
    pub contraction: bool,
    pub far_commutation: bool,
}

impl TlRelationReport {
    pub fn all(&self) -> bool {
        self.idempotent && self.contraction && self.far_commutation
    }
}

/// Checks E_i^2 = E_i, the contraction E_i E_{i+-1} E_i = (1/delta^2) E_i,
/// and far commutation, exactly on the exact backend.
pub fn check_tl_relations(tl: &TLImage) -> Result<TlRelationReport, TlError> {
    let e = &tl.e;
    let scalar = scalar_for(&tl.delta_inv_sq, backend_of(tl));

    let mut idempotent = true;
    for ei in e {
        if !is_idempotent(ei)? {
            idempotent = false;
        }
    }

    let mut contraction = true;
    for i in 0..e.len().saturating_sub(1) {
        let lhs = e[i].mul(&e[i + 1])?.mul(&e[i])?;
        let rhs = e[i].scale(&scalar)?;
        if !lhs.approx_eq(&rhs, DEFAULT_TOL) {
            contraction = false;
        }
        let lhs = e[i + 1].mul(&e[i])?.mul(&e[i + 1])?;
        let rhs = e[i + 1].scale(&scalar)?;
        if !lhs.approx_eq(&rhs, DEFAULT_TOL) {
            contraction = false;
        }
    }

    let mut far_commutation = true;
    for i in 0..e.len() {
        for j in i + 2..e.len() {
            let ab = e[i].mul(&e[j])?;
            let ba = e[j].mul(&e[i])?;
            if !ab.approx_eq(&ba, DEFAULT_TOL) {
                far_commutation = false;
            }
        }
    }

    Ok(TlRelationReport {
        idempotent,
        contraction,
        far_commutation,
    })
}

/// A Jones-Wenzl projector: the unique idempotent at its level killed by all
/// lower Temperley-Lieb generators. Both properties are re-checked on
/// construction.
#[derive(Debug, Clone)]
pub struct JWProjector {
    pub level: usize,
    pub matrix: SqMatrix,
    /// Recursion coefficients used at each step, in level order.
    pub coefficients: Vec<CycNum>,
}

/// Coefficients c_j of the projector recursion
/// p_{j+1} = p_j - c_j p_j E_j p_j for j = 1..count, where
/// c_j = [2][j]/[j+1] in quantum integers built from a square root of the
/// eigenvalue parameter. Both square roots give the same coefficients.
pub fn wenzl_coefficients(q_ev: &CycNum, count: usize) -> Result<Vec<CycNum>, TlError> {
    let order = q_ev
        .root_of_unity_order()
        .map_err(|_| TlError::NotRootOfUnity)?;
    let exponent = (0..order)
        .find(|&e| u32::gcd(&e, &order) == 1 && &CycNum::zeta(order, i64::from(e)) == q_ev)
        .expect("an element of this multiplicative order is a power of the root");
    let root = CycNum::zeta(2 * order, i64::from(exponent));
    let two = root.add(&root.inv()?);

    // Quantum integers [0] = 0, [1] = 1, [j+1] = [2][j] - [j-1].
    let mut quantum = vec![CycNum::zero(), CycNum::one()];
    let mut coefficients = Vec::with_capacity(count);
    for j in 1..=count {
        let next = two.mul(&quantum[j]).sub(&quantum[j - 1]);
        if next.is_zero() {
            return Err(TlError::VanishingQuantumInteger(j + 1));
        }
        coefficients.push(two.mul(&quantum[j]).div(&next)?);
        quantum.push(next);
    }
    Ok(coefficients)
}

/// Builds the level-k Jones-Wenzl projector inside the given image by the
/// recursion p_1 = I, p_{j+1} = p_j - c_j p_j E_j p_j. Errors when a needed
/// quantum integer vanishes; asserts idempotency and the kill conditions
/// p_k E_i = E_i p_k = 0 for i < k before returning.
pub fn jones_wenzl(tl: &TLImage, k: usize) -> Result<JWProjector, TlError> {
    if k < 2 || k > tl.n {
        return Err(TlError::LevelOutOfRange {
            level: k,
            max: tl.n,
        });
    }
    let coefficients = wenzl_coefficients(&tl.q, k - 1)?;
    let backend = backend_of(tl);
    let dim = tl.e[0].dim();
    let mut p = SqMatrix::identity(dim, backend);
    for (j, c) in coefficients.iter().enumerate() {
        let pep = p.mul(&tl.e[j])?.mul(&p)?;
        p = p.sub(&pep.scale(&scalar_for(c, backend))?)?;
    }

    if !is_idempotent(&p)? {
        return Err(TlError::ProjectorInvariant(k));
    }
    for i in 0..k - 1 {
        let left = tl.e[i].mul(&p)?;
        let right = p.mul(&tl.e[i])?;
        if !left.is_zero(DEFAULT_TOL) || !right.is_zero(DEFAULT_TOL) {
            return Err(TlError::ProjectorInvariant(k));
        }
    }
    Ok(JWProjector {
        level: k,
        matrix: p,
        coefficients,
    })
}

/// Dimension of the common kernel of E_1..E_{k-1}, computed numerically.
/// A vector lies in that kernel exactly when it is a simultaneous
/// eigenvector of the braid generator images R_1..R_{k-1} with eigenvalue
/// -1, so this cross-checks the rank of the level-k projector in approx
/// arithmetic.
pub fn simultaneous_kernel_dim(tl: &TLImage, k: usize) -> Result<usize, TlError> {
    if k < 2 || k > tl.n {
        return Err(TlError::LevelOutOfRange {
            level: k,
            max: tl.n,
        });
    }
    let dim = tl.e[0].dim();
    let mut rows: Vec<Vec<num_complex::Complex64>> = Vec::with_capacity((k - 1) * dim);
    for ei in tl.e.iter().take(k - 1) {
        let approx = ei.to_approx();
        let entries = approx.approx_entries().expect("approx backend");
        for r in 0..dim {
            rows.push(entries[r * dim..(r + 1) * dim].to_vec());
        }
    }

    // Gaussian elimination with partial pivoting; nullity = dim - rank.
    let mut rank = 0;
    for col in 0..dim {
        let Some(pivot) = (rank..rows.len())
            .filter(|&r| rows[r][col].norm() > 1e-7)
            .max_by(|&a, &b| {
                rows[a][col]
                    .norm()
                    .partial_cmp(&rows[b][col].norm())
                    .expect("finite norms")
            })
        else {
            continue;
        };
        rows.swap(rank, pivot);
        let head = rows[rank][col];
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col].norm() > 0.0 {
                let f = row[col] / head;
                for c in col..dim {
                    row[c] -= f * pivot_row[c];
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    Ok(dim - rank)
}

/// Dimensions of the simple modules of the semisimple quotient on n strands
/// at level parameter ell, by path counting in the depth-n Bratteli diagram
/// of the generating object.
pub fn simple_dims(ell: u32, n: usize) -> Result<Vec<(String, u64)>, TlError> {
    let bd = level_bratteli(ell, n)?;
    let labels = bd.levels[n - 1].clone();
    let dims = bd.dims[n - 1].clone();
    Ok(labels.into_iter().zip(dims).collect())
}

/// Result of solving for sector multiplicities of a localized
/// representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MultiplicitySolution {
    /// Positive integer multiplicities per level-n label.
    Feasible(Vec<(String, u64)>),
    Infeasible,
}

/// Solves for a positive integer vector mu with <mu, dims> = m^n that is
/// proportional to the Frobenius-Perron dimension vector of the level-n
/// labels. Returns Infeasible when the FP direction is irrational or the
/// scaling is not a positive integer.
pub fn multiplicity_solve(ell: u32, n: usize, m: u64) -> Result<MultiplicitySolution, TlError> {
    let ring = ring_for_level(ell)?;
    let bd = level_bratteli(ell, n)?;
    let labels = &bd.levels[n - 1];
    let dims = &bd.dims[n - 1];

    // Squared FP dimension of every level label must be an integer.
    let mut squares = Vec::with_capacity(labels.len());
    for label in labels {
        match fusion::fpdim(&ring, label)?.1 {
            ExactSq::Integer(a) => squares.push(u128::from(a)),
            ExactSq::NonInteger => return Ok(MultiplicitySolution::Infeasible),
        }
    }
    // Direction proportional to the FP vector: entries sqrt(a_j * g) with
    // g the first square; the products must be perfect squares for the
    // ratios to be rational.
    let g = squares[0];
    let mut direction = Vec::with_capacity(squares.len());
    for &a in &squares {
        let prod = a.checked_mul(g).ok_or(TlError::Overflow)?;
        let root = prod.sqrt();
        if root * root != prod {
            return Ok(MultiplicitySolution::Infeasible);
        }
        direction.push(root);
    }
    let gcd = direction.iter().fold(0u128, |acc, &v| acc.gcd(&v));
    let direction: Vec<u128> = direction.into_iter().map(|v| v / gcd).collect();

    let dot: u128 = direction
        .iter()
        .zip(dims)
        .map(|(&u, &d)| u * u128::from(d))
        .sum();
    let power = u128::from(m)
        .checked_pow(u32::try_from(n).map_err(|_| TlError::Overflow)?)
        .ok_or(TlError::Overflow)?;
    if dot == 0 || power % dot != 0 {
        return Ok(MultiplicitySolution::Infeasible);
    }
    let t = power / dot;
    if t == 0 {
        return Ok(MultiplicitySolution::Infeasible);
    }
    let mut mu = Vec::with_capacity(direction.len());
    for (label, u) in labels.iter().zip(direction) {
        let value = t.checked_mul(u).ok_or(TlError::Overflow)?;
        mu.push((
            label.clone(),
            u64::try_from(value).map_err(|_| TlError::Overflow)?,
        ));
    }
    Ok(MultiplicitySolution::Feasible(mu))
}

fn ring_for_level(ell: u32) -> Result<fusion::FusionRing, TlError> {
    if ell < 3 {
        return Err(TlError::BadLevel);
    }
    Ok(fusion::sl2_level(ell - 2)?)
}

fn level_bratteli(ell: u32, n: usize) -> Result<fusion::BratteliData, TlError> {
    if n == 0 {
        return Err(TlError::LevelOutOfRange { level: 0, max: 1 });
    }
    let ring = ring_for_level(ell)?;
    Ok(fusion::bratteli(&ring, "X", n)?)
}

fn backend_of(tl: &TLImage) -> Backend {
    tl.e[0].backend()
}

fn scalar_for(value: &CycNum, backend: Backend) -> Scalar {
    match backend {
        Backend::Exact => Scalar::Exact(value.clone()),
        Backend::Approx => Scalar::Approx(value.to_complex()),
    }
}

fn is_idempotent(m: &SqMatrix) -> Result<bool, MatrixError> {
    Ok(m.mul(m)?.approx_eq(m, DEFAULT_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use num_rational::BigRational;
    use num_traits::ToPrimitive;

    fn q_loc6() -> CycNum {
        // exp(-pi i/3) = -zeta_3
        CycNum::zeta(3, 1).neg()
    }

    fn q_level2() -> CycNum {
        CycNum::zeta(4, 1)
    }

    fn spec_loc6() -> RMatrixSpec {
        RMatrixSpec::new(builtins::loc6(), 3, DEFAULT_TOL).unwrap()
    }

    fn spec_level2() -> RMatrixSpec {
        RMatrixSpec::new(builtins::level2(), 2, DEFAULT_TOL).unwrap()
    }

    fn spec_dye4() -> RMatrixSpec {
        RMatrixSpec::new(builtins::dye4(), 2, DEFAULT_TOL).unwrap()
    }

    fn trace_int(m: &SqMatrix) -> i64 {
        let Scalar::Exact(t) = m.trace() else {
            panic!("exact trace expected");
        };
        let r: BigRational = t.as_rational().expect("rational trace");
        assert!(r.is_integer());
        r.to_integer().to_i64().expect("small trace")
    }

    #[test]
    fn loc6_image_has_loop_parameter_one_third() {
        let tl = tl_from_r(&spec_loc6(), 3, &q_loc6()).unwrap();
        assert_eq!(tl.delta_inv_sq(), &CycNum::ratio(1, 3));
        assert_eq!(tl.generators().len(), 2);
        let report = check_tl_relations(&tl).unwrap();
        assert!(report.idempotent && report.contraction && report.far_commutation);
    }

    #[test]
    fn loc6_relations_hold_on_four_strands() {
        let tl = tl_from_r(&spec_loc6(), 4, &q_loc6()).unwrap();
        assert!(check_tl_relations(&tl).unwrap().all());
    }

    #[test]
    fn level2_image_has_loop_parameter_one_half() {
        let tl = tl_from_r(&spec_level2(), 3, &q_level2()).unwrap();
        assert_eq!(tl.delta_inv_sq(), &CycNum::ratio(1, 2));
        assert!(check_tl_relations(&tl).unwrap().all());
    }

    #[test]
    fn negated_identity_gives_zero_generators() {
        let dim = 4;
        let rows: Vec<Vec<CycNum>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        if i == j {
                            CycNum::from_integer(-1)
                        } else {
                            CycNum::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let r = RMatrixSpec::new(SqMatrix::exact_from_rows(rows).unwrap(), 2, DEFAULT_TOL).unwrap();
        let tl = tl_from_r(&r, 3, &CycNum::one()).unwrap();
        assert!(tl.generators().iter().all(|e| e.is_zero(0.0)));
        assert!(check_tl_relations(&tl).unwrap().all());
    }

    #[test]
    fn non_matching_eigenvalue_is_rejected() {
        let err = tl_from_r(&spec_dye4(), 3, &CycNum::one()).unwrap_err();
        assert!(matches!(err, TlError::NonIdempotent(_)));
    }

    #[test]
    fn degenerate_parameters_are_rejected() {
        let loc6 = spec_loc6();
        assert!(matches!(
            tl_from_r(&loc6, 3, &CycNum::zero()),
            Err(TlError::DegenerateParameter(_))
        ));
        assert!(matches!(
            tl_from_r(&loc6, 3, &CycNum::from_integer(-1)),
            Err(TlError::DegenerateParameter(_))
        ));
        assert!(matches!(
            tl_from_r(&loc6, 1, &q_loc6()),
            Err(TlError::TooFewStrands)
        ));
    }

    #[test]
    fn tampered_generators_fail_contraction() {
        let mut tl = tl_from_r(&spec_loc6(), 3, &q_loc6()).unwrap();
        let dim = tl.generators()[0].dim();
        let rows: Vec<Vec<CycNum>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        if i == 0 && j == 0 {
                            CycNum::one()
                        } else {
                            CycNum::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        tl.e[0] = SqMatrix::exact_from_rows(rows).unwrap();
        let report = check_tl_relations(&tl).unwrap();
        assert!(report.idempotent);
        assert!(!report.contraction);
        assert!(!report.all());
    }

    #[test]
    fn wenzl_coefficients_match_known_values() {
        let c = wenzl_coefficients(&q_loc6(), 4).unwrap();
        assert_eq!(c[0], CycNum::one());
        assert_eq!(c[1], CycNum::ratio(3, 2));
        assert_eq!(c[2], CycNum::from_integer(2));
        assert_eq!(c[3], CycNum::from_integer(3));

        let c = wenzl_coefficients(&q_level2(), 2).unwrap();
        assert_eq!(c[0], CycNum::one());
        assert_eq!(c[1], CycNum::from_integer(2));
        assert!(matches!(
            wenzl_coefficients(&q_level2(), 3),
            Err(TlError::VanishingQuantumInteger(4))
        ));
    }

    #[test]
    fn wenzl_coefficients_need_root_of_unity() {
        assert!(matches!(
            wenzl_coefficients(&CycNum::from_integer(2), 2),
            Err(TlError::NotRootOfUnity)
        ));
    }

    #[test]
    fn jones_wenzl_level_two_is_the_complement() {
        let tl = tl_from_r(&spec_loc6(), 2, &q_loc6()).unwrap();
        let jw = jones_wenzl(&tl, 2).unwrap();
        let expected = SqMatrix::identity(9, Backend::Exact)
            .sub(&tl.generators()[0])
            .unwrap();
        assert!(jw.matrix.approx_eq(&expected, 0.0));
        assert_eq!(trace_int(&jw.matrix), 6);
    }

    #[test]
    fn jones_wenzl_tower_on_loc6() {
        let tl = tl_from_r(&spec_loc6(), 4, &q_loc6()).unwrap();
        for k in 2..=4 {
            let jw = jones_wenzl(&tl, k).unwrap();
            assert!(!jw.matrix.is_zero(0.0), "p_{k} must be nonzero");
            assert_eq!(jw.coefficients.len(), k - 1);
        }
    }

    #[test]
    fn projector_rank_matches_common_kernel() {
        let tl = tl_from_r(&spec_loc6(), 4, &q_loc6()).unwrap();
        assert_eq!(trace_int(&jones_wenzl(&tl, 2).unwrap().matrix), 54);
        for k in 2..=4 {
            let rank = trace_int(&jones_wenzl(&tl, k).unwrap().matrix);
            let kernel = simultaneous_kernel_dim(&tl, k).unwrap();
            assert_eq!(rank, kernel as i64, "level {k}");
        }
    }

    #[test]
    fn level2_projector_vanishes_at_level_three() {
        let tl = tl_from_r(&spec_level2(), 3, &q_level2()).unwrap();
        let p2 = jones_wenzl(&tl, 2).unwrap();
        assert!(!p2.matrix.is_zero(0.0));
        assert_eq!(trace_int(&p2.matrix), 4);
        let p3 = jones_wenzl(&tl, 3).unwrap();
        assert!(p3.matrix.is_zero(0.0));
    }

    #[test]
    fn level2_projector_level_four_needs_vanishing_integer() {
        let tl = tl_from_r(&spec_level2(), 4, &q_level2()).unwrap();
        assert!(matches!(
            jones_wenzl(&tl, 4),
            Err(TlError::VanishingQuantumInteger(4))
        ));
    }

    #[test]
    fn jones_wenzl_level_bounds() {
        let tl = tl_from_r(&spec_loc6(), 3, &q_loc6()).unwrap();
        assert!(matches!(
            jones_wenzl(&tl, 1),
            Err(TlError::LevelOutOfRange { .. })
        ));
        assert!(matches!(
            jones_wenzl(&tl, 4),
            Err(TlError::LevelOutOfRange { .. })
        ));
    }

    #[test]
    fn simple_dims_match_path_counts() {
        assert_eq!(
            simple_dims(6, 5).unwrap(),
            vec![("X".to_string(), 5), ("X'".to_string(), 4)]
        );
        assert_eq!(
            simple_dims(6, 4).unwrap(),
            vec![
                ("1".to_string(), 2),
                ("Y".to_string(), 3),
                ("Z".to_string(), 1)
            ]
        );
        assert_eq!(simple_dims(6, 1).unwrap(), vec![("X".to_string(), 1)]);
        assert_eq!(
            simple_dims(6, 7).unwrap(),
            vec![("X".to_string(), 14), ("X'".to_string(), 13)]
        );
        assert!(matches!(simple_dims(2, 3), Err(TlError::BadLevel)));
    }

    #[test]
    fn multiplicity_examples() {
        assert_eq!(
            multiplicity_solve(6, 4, 3).unwrap(),
            MultiplicitySolution::Feasible(vec![
                ("1".to_string(), 9),
                ("Y".to_string(), 18),
                ("Z".to_string(), 9)
            ])
        );
        assert_eq!(
            multiplicity_solve(6, 5, 3).unwrap(),
            MultiplicitySolution::Feasible(vec![("X".to_string(), 27), ("X'".to_string(), 27)])
        );
        assert_eq!(
            multiplicity_solve(5, 4, 3).unwrap(),
            MultiplicitySolution::Infeasible
        );
        assert_eq!(
            multiplicity_solve(6, 4, 2).unwrap(),
            MultiplicitySolution::Infeasible
        );
    }

    #[test]
    fn multiplicities_pair_with_dimensions() {
        for n in 1..=9usize {
            let MultiplicitySolution::Feasible(mu) = multiplicity_solve(6, n, 3).unwrap() else {
                panic!("level 6 must be feasible at n = {n}");
            };
            let dims = simple_dims(6, n).unwrap();
            let total: u128 = mu
                .iter()
                .zip(&dims)
                .map(|((_, m), (_, d))| u128::from(*m) * u128::from(*d))
                .sum();
            assert_eq!(total, 3u128.pow(n as u32));
            assert!(mu.iter().all(|(_, m)| *m > 0));
        }
    }
}
