//! Gaussian braid group representations from extraspecial-type algebras,
//! and their explicit localization by a single two-site operator.
//!
//! For an odd prime p and a primitive p-th root of unity omega, the algebra
//! ES(omega, n-1) is generated by u_1..u_{n-1} subject to
//!
//!   u_i^p = 1,    u_i u_{i+1} = omega^{-2} u_{i+1} u_i,
//!   u_i u_j = u_j u_i for |i - j| > 1.
//!
//! Its left-regular action is faithful, and the elements
//! sigma_i = zeta sum_j omega^{j^2} u_i^j are unitary and satisfy the braid
//! relations. The same formula applied to the two-site shift operator U
//! gives a unitary Yang-Baxter matrix that localizes the representation.

use serde::Serialize;
use thiserror::Error;

use crate::braid_rep::{check_braid_relations, BraidRepError, RepSpec};
use crate::cyclo::{CycNum, CycloError, Scalar, DEFAULT_TOL};
use crate::matrix::{Backend, MatrixError, SqMatrix};
use crate::yang_baxter::{check_ybe, RMatrixSpec, YangBaxterError};

/// Largest matrix dimension this module will materialize densely.
const MAX_DENSE_DIM: usize = 20_000;

/// Errors from extraspecial-algebra and Gaussian constructions.
#[derive(Debug, Error)]
pub enum GaussianError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("need at least 2 strands")]
    TooFewStrands,
    #[error("the root exponent must be nonzero modulo p")]
    ExponentNotCoprime,
    #[error("matrix dimension p^(n-1) exceeds the dense limit")]
    DimensionTooLarge,
    #[error("the normalization must satisfy |zeta|^2 = 1/p")]
    BadZeta,
    #[error("generator list must be nonempty with matching dimensions")]
    BadGenerators,
    #[error("construction self-check failed: {0}")]
    RelationFailure(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    BraidRep(#[from] BraidRepError),
    #[error(transparent)]
    YangBaxter(#[from] YangBaxterError),
}

/// Left-regular matrices of the extraspecial-type algebra on n-1 generators.
#[derive(Debug, Clone)]
pub struct ESRep {
    p: u64,
    omega: CycNum,
    n: usize,
    u: Vec<SqMatrix>,
}

impl ESRep {
    pub fn p(&self) -> u64 {
        self.p
    }

    /// The recorded primitive p-th root of unity.
    pub fn omega(&self) -> &CycNum {
        &self.omega
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    /// Images of u_1..u_{n-1}, each of dimension p^(n-1).
    pub fn generators(&self) -> &[SqMatrix] {
        &self.u
    }

    /// u_i for 1 <= i <= n-1.
    pub fn generator(&self, i: usize) -> Result<&SqMatrix, GaussianError> {
        if i == 0 || i >= self.n {
            return Err(GaussianError::BadGenerators);
        }
        Ok(&self.u[i - 1])
    }

    pub fn dim(&self) -> usize {
        self.u[0].dim()
    }
}

/// Normalization choice for the Gaussian generators.
#[derive(Debug, Clone)]
pub enum Zeta {
    /// conj(g)/p where g is the quadratic Gauss sum of the recorded root;
    /// this is the inverse of the Gauss sum, so |zeta|^2 = 1/p exactly.
    Auto,
    /// An explicit value; it must satisfy |zeta|^2 = 1/p.
    Given(CycNum),
}

/// One Gaussian generator together with the normalization that made it
/// unitary. Unitarity is asserted on construction.
#[derive(Debug, Clone)]
pub struct GaussianGen {
    zeta: CycNum,
    sigma: SqMatrix,
}

impl GaussianGen {
    pub fn new(zeta: CycNum, sigma: SqMatrix) -> Result<GaussianGen, GaussianError> {
        if !sigma.is_unitary(DEFAULT_TOL) {
            return Err(GaussianError::RelationFailure(
                "Gaussian generator is not unitary".into(),
            ));
        }
        Ok(GaussianGen { zeta, sigma })
    }

    pub fn zeta(&self) -> &CycNum {
        &self.zeta
    }

    pub fn sigma(&self) -> &SqMatrix {
        &self.sigma
    }
}

/// Outcome of checking the three defining relation families.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EsRelationReport {
    pub order_p: bool,
    pub adjacent_exchange: bool,
    pub far_commutation: bool,
}

impl EsRelationReport {
    pub fn all(&self) -> bool {
        self.order_p && self.adjacent_exchange && self.far_commutation
    }
}

/// A generalized permutation operator: column c maps to phase[c] times the
/// basis vector perm[c]. Products, powers, and equality stay O(dim), which
/// keeps relation checks cheap even where the dense matrices would not fit.
#[derive(Debug, Clone, PartialEq)]
struct MonomialOp {
    perm: Vec<usize>,
    phase: Vec<CycNum>,
}

impl MonomialOp {
    fn identity(dim: usize) -> MonomialOp {
        MonomialOp {
            perm: (0..dim).collect(),
            phase: vec![CycNum::one(); dim],
        }
    }

    /// Matrix product self * other (other acts first).
    fn compose(&self, other: &MonomialOp) -> MonomialOp {
        let dim = self.perm.len();
        let mut perm = Vec::with_capacity(dim);
        let mut phase = Vec::with_capacity(dim);
        for c in 0..dim {
            let mid = other.perm[c];
            perm.push(self.perm[mid]);
            phase.push(other.phase[c].mul(&self.phase[mid]));
        }
        MonomialOp { perm, phase }
    }

    fn pow(&self, k: u64) -> MonomialOp {
        let mut acc = MonomialOp::identity(self.perm.len());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    fn scale(&self, s: &CycNum) -> MonomialOp {
        MonomialOp {
            perm: self.perm.clone(),
            phase: self.phase.iter().map(|ph| ph.mul(s)).collect(),
        }
    }

    fn to_matrix(&self) -> Result<SqMatrix, MatrixError> {
        let dim = self.perm.len();
        let mut rows = vec![vec![CycNum::zero(); dim]; dim];
        for c in 0..dim {
            rows[self.perm[c]][c] = self.phase[c].clone();
        }
        SqMatrix::exact_from_rows(rows)
    }
}

fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn primitive_root(p: u64, omega_exponent: i64) -> Result<CycNum, GaussianError> {
    if omega_exponent.rem_euclid(p as i64) == 0 {
        return Err(GaussianError::ExponentNotCoprime);
    }
    Ok(CycNum::zeta(p as u32, omega_exponent))
}

/// The left-regular generator images as monomial operators: u_i raises the
/// i-th exponent and picks up omega^{2 a_{i-1}} from moving past u_{i-1}.
fn regular_ops(p: u64, n: usize, omega: &CycNum) -> Result<Vec<MonomialOp>, GaussianError> {
    let pu = p as usize;
    let mut dim = 1usize;
    for _ in 0..n - 1 {
        dim = dim
            .checked_mul(pu)
            .ok_or(GaussianError::DimensionTooLarge)?;
    }
    if dim > MAX_DENSE_DIM {
        return Err(GaussianError::DimensionTooLarge);
    }
    let omega_sq = omega.mul(omega);
    let mut ops = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let stride = pu.pow(i as u32);
        let mut perm = Vec::with_capacity(dim);
        let mut phase = Vec::with_capacity(dim);
        for c in 0..dim {
            let a_i = (c / stride) % pu;
            perm.push(c - a_i * stride + ((a_i + 1) % pu) * stride);
            let ph = if i == 0 {
                CycNum::one()
            } else {
                let a_prev = (c / (stride / pu)) % pu;
                omega_sq.pow(a_prev as u64)
            };
            phase.push(ph);
        }
        ops.push(MonomialOp { perm, phase });
    }
    Ok(ops)
}

fn check_ops_relations(
    ops: &[MonomialOp],
    p: u64,
    omega: &CycNum,
) -> Result<EsRelationReport, GaussianError> {
    let dim = ops
        .first()
        .map(|op| op.perm.len())
        .ok_or(GaussianError::BadGenerators)?;
    let identity = MonomialOp::identity(dim);
    let omega_inv_sq = omega.inv()?.pow(2);

    let order_p = ops.iter().all(|op| op.pow(p) == identity);
    let adjacent_exchange = (0..ops.len().saturating_sub(1)).all(|i| {
        let lhs = ops[i].compose(&ops[i + 1]);
        let rhs = ops[i + 1].compose(&ops[i]).scale(&omega_inv_sq);
        lhs == rhs
    });
    let far_commutation = (0..ops.len())
        .all(|i| (i + 2..ops.len()).all(|j| ops[i].compose(&ops[j]) == ops[j].compose(&ops[i])));
    Ok(EsRelationReport {
        order_p,
        adjacent_exchange,
        far_commutation,
    })
}

/// Builds the left-regular representation of ES(omega, n-1) on the
/// normal-form monomial basis (ascending generator index, exponents mod p).
/// All three relation families are asserted before returning.
pub fn es_rep(p: u64, n: usize, omega_exponent: i64) -> Result<ESRep, GaussianError> {
    if !is_odd_prime(p) {
        return Err(GaussianError::NotOddPrime(p));
    }
    if n < 2 {
        return Err(GaussianError::TooFewStrands);
    }
    let omega = primitive_root(p, omega_exponent)?;
    let ops = regular_ops(p, n, &omega)?;
    let report = check_ops_relations(&ops, p, &omega)?;
    if !report.all() {
        return Err(GaussianError::RelationFailure(
            "left-regular generators break a defining relation".into(),
        ));
    }
    let u = ops
        .iter()
        .map(MonomialOp::to_matrix)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ESRep { p, omega, n, u })
}

/// Checks the defining relations on explicit generator matrices.
pub fn check_es_relations(
    gens: &[SqMatrix],
    p: u64,
    omega: &CycNum,
) -> Result<EsRelationReport, GaussianError> {
    let first = gens.first().ok_or(GaussianError::BadGenerators)?;
    let dim = first.dim();
    if gens.iter().any(|g| g.dim() != dim) {
        return Err(GaussianError::BadGenerators);
    }
    let identity = SqMatrix::identity(dim, first.backend());
    let omega_inv_sq = omega.inv()?.pow(2);
    let scalar = match first.backend() {
        Backend::Exact => Scalar::Exact(omega_inv_sq),
        Backend::Approx => Scalar::Approx(omega_inv_sq.to_complex()),
    };

    let mut order_p = true;
    for g in gens {
        if !g.pow(p)?.approx_eq(&identity, DEFAULT_TOL) {
            order_p = false;
        }
    }
    let mut adjacent_exchange = true;
    for i in 0..gens.len().saturating_sub(1) {
        let lhs = gens[i].mul(&gens[i + 1])?;
        let rhs = gens[i + 1].mul(&gens[i])?.scale(&scalar)?;
        if !lhs.approx_eq(&rhs, DEFAULT_TOL) {
            adjacent_exchange = false;
        }
    }
    let mut far_commutation = true;
    for i in 0..gens.len() {
        for j in i + 2..gens.len() {
            let ab = gens[i].mul(&gens[j])?;
            let ba = gens[j].mul(&gens[i])?;
            if !ab.approx_eq(&ba, DEFAULT_TOL) {
                far_commutation = false;
            }
        }
    }
    Ok(EsRelationReport {
        order_p,
        adjacent_exchange,
        far_commutation,
    })
}

/// Quadratic Gauss sum g = sum_{j=0}^{p-1} omega^{j^2}; satisfies
/// g conj(g) = p for every odd prime p.
pub fn gauss_sum(p: u64, omega: &CycNum) -> CycNum {
    let mut g = CycNum::zero();
    for j in 0..p {
        g = g.add(&omega.pow(j * j));
    }
    g
}

fn resolve_zeta(p: u64, omega: &CycNum, zeta: &Zeta) -> Result<CycNum, GaussianError> {
    match zeta {
        Zeta::Auto => {
            let g = gauss_sum(p, omega);
            Ok(g.conj()
                .scale(&num_rational::BigRational::new(1.into(), (p as i64).into())))
        }
        Zeta::Given(z) => {
            if z.abs2() != CycNum::ratio(1, p as i64) {
                return Err(GaussianError::BadZeta);
            }
            Ok(z.clone())
        }
    }
}

/// zeta sum_j omega^{j^2} op^j as a dense exact matrix.
fn gaussian_sum_matrix(
    op: &MonomialOp,
    p: u64,
    omega: &CycNum,
    zeta: &CycNum,
) -> Result<SqMatrix, GaussianError> {
    let dim = op.perm.len();
    let mut rows = vec![vec![CycNum::zero(); dim]; dim];
    let mut power = MonomialOp::identity(dim);
    for j in 0..p {
        let coeff = zeta.mul(&omega.pow(j * j));
        for c in 0..dim {
            let entry = &mut rows[power.perm[c]][c];
            *entry = entry.add(&coeff.mul(&power.phase[c]));
        }
        if j + 1 < p {
            power = op.compose(&power);
        }
    }
    Ok(SqMatrix::exact_from_rows(rows)?)
}

/// The Gaussian generators zeta sum_j omega^{j^2} u_i^j, one per strand
/// crossing, with unitarity asserted.
pub fn gaussian_gens(es: &ESRep, zeta: &Zeta) -> Result<Vec<GaussianGen>, GaussianError> {
    let z = resolve_zeta(es.p, &es.omega, zeta)?;
    let ops = regular_ops(es.p, es.n, &es.omega)?;
    ops.iter()
        .map(|op| GaussianGen::new(z.clone(), gaussian_sum_matrix(op, es.p, &es.omega, &z)?))
        .collect()
}

/// The Gaussian braid group representation on p^(n-1) dimensions. Unitarity
/// and the braid relations are asserted before returning.
pub fn gaussian_rep(es: &ESRep, zeta: &Zeta) -> Result<RepSpec, GaussianError> {
    let gens = gaussian_gens(es, zeta)?;
    let rep = RepSpec::new(
        es.n,
        gens.into_iter().map(|g| g.sigma).collect(),
        DEFAULT_TOL,
    )?;
    if !check_braid_relations(&rep, DEFAULT_TOL)? {
        return Err(GaussianError::RelationFailure(
            "Gaussian generators break the braid relations".into(),
        ));
    }
    Ok(rep)
}

/// The two-site shift operator as a monomial map: basis vector (i, j) goes
/// to omega^{i-j} (i+1, j+1) with indices mod p.
fn local_u_op(p: u64, omega: &CycNum) -> MonomialOp {
    let pu = p as usize;
    let dim = pu * pu;
    let omega_inv = omega.inv().expect("roots of unity are invertible");
    let mut perm = Vec::with_capacity(dim);
    let mut phase = Vec::with_capacity(dim);
    for c in 0..dim {
        let (i, j) = (c / pu, c % pu);
        perm.push(((i + 1) % pu) * pu + (j + 1) % pu);
        let ph = if i >= j {
            omega.pow((i - j) as u64)
        } else {
            omega_inv.pow((j - i) as u64)
        };
        phase.push(ph);
    }
    MonomialOp { perm, phase }
}

/// Places the two-site operator on sites (i, i+1) of an n-site chain.
fn amplified_local_ops(p: u64, omega: &CycNum, n: usize) -> Vec<MonomialOp> {
    let pu = p as usize;
    let base = local_u_op(p, omega);
    let dim = pu.pow(n as u32);
    (1..n)
        .map(|i| {
            // Site s contributes digit (c / p^{n-1-s}) % p, big-endian so
            // that slot 1 matches the leftmost tensor factor.
            let stride = pu.pow((n - 1 - i) as u32);
            let mut perm = Vec::with_capacity(dim);
            let mut phase = Vec::with_capacity(dim);
            for c in 0..dim {
                let hi = (c / (stride * pu)) % pu;
                let lo = (c / stride) % pu;
                let local = hi * pu + lo;
                let target = base.perm[local];
                let (thi, tlo) = (target / pu, target % pu);
                let rest = c - hi * (stride * pu) - lo * stride;
                perm.push(rest + thi * (stride * pu) + tlo * stride);
                phase.push(base.phase[local].clone());
            }
            MonomialOp { perm, phase }
        })
        .collect()
}

/// The p^2 x p^2 two-site shift matrix; U^p = I and unitarity are asserted.
pub fn local_u(p: u64, omega_exponent: i64) -> Result<SqMatrix, GaussianError> {
    if !is_odd_prime(p) {
        return Err(GaussianError::NotOddPrime(p));
    }
    let omega = primitive_root(p, omega_exponent)?;
    let u = local_u_op(p, &omega).to_matrix()?;
    if !u
        .pow(p)?
        .approx_eq(&SqMatrix::identity(u.dim(), u.backend()), 0.0)
    {
        return Err(GaussianError::RelationFailure("U^p != I".into()));
    }
    if !u.is_unitary(DEFAULT_TOL) {
        return Err(GaussianError::RelationFailure("U is not unitary".into()));
    }
    Ok(u)
}

/// Checks the defining relations for the shift operators placed on every
/// adjacent pair of an n-site chain. Runs on the monomial-operator side, so
/// chains long enough to exercise far commutation stay cheap.
pub fn check_local_relations(
    p: u64,
    omega_exponent: i64,
    n: usize,
) -> Result<EsRelationReport, GaussianError> {
    if !is_odd_prime(p) {
        return Err(GaussianError::NotOddPrime(p));
    }
    if n < 2 {
        return Err(GaussianError::TooFewStrands);
    }
    let omega = primitive_root(p, omega_exponent)?;
    let ops = amplified_local_ops(p, &omega, n);
    check_ops_relations(&ops, p, &omega)
}

/// The localizing R-matrix zeta sum_j omega^{j^2} U^j with omega the
/// standard primitive root. Unitarity, the Yang-Baxter equation, and the
/// defining relations of the shift operators are all asserted.
pub fn local_r(p: u64, zeta: &Zeta) -> Result<RMatrixSpec, GaussianError> {
    if !is_odd_prime(p) {
        return Err(GaussianError::NotOddPrime(p));
    }
    let omega = primitive_root(p, 1)?;
    let z = resolve_zeta(p, &omega, zeta)?;
    let r = gaussian_sum_matrix(&local_u_op(p, &omega), p, &omega, &z)?;
    if !r.is_unitary(DEFAULT_TOL) {
        return Err(GaussianError::RelationFailure("R is not unitary".into()));
    }
    let spec = RMatrixSpec::new(r, p as usize, DEFAULT_TOL)?;
    if !check_ybe(&spec, DEFAULT_TOL)? {
        return Err(GaussianError::RelationFailure(
            "R fails the Yang-Baxter equation".into(),
        ));
    }
    if !check_local_relations(p, 1, 4)?.all() {
        return Err(GaussianError::RelationFailure(
            "shift operators break a defining relation".into(),
        ));
    }
    Ok(spec)
}

/// Faithfulness certificate for a generator tuple: over all p^k exponent
/// tuples, the identity monomial has full trace and every other normal-form
/// monomial is traceless.
pub fn monomial_trace_criterion(gens: &[SqMatrix], p: u64) -> Result<bool, GaussianError> {
    let first = gens.first().ok_or(GaussianError::BadGenerators)?;
    let dim = first.dim();
    if gens.iter().any(|g| g.dim() != dim) {
        return Err(GaussianError::BadGenerators);
    }
    let mut powers = Vec::with_capacity(gens.len());
    for g in gens {
        let mut pw = Vec::with_capacity(p as usize);
        let mut acc = SqMatrix::identity(dim, g.backend());
        for _ in 0..p {
            pw.push(acc.clone());
            acc = acc.mul(g)?;
        }
        powers.push(pw);
    }

    let full = CycNum::from_integer(dim as i64);
    let mut exponents = vec![0u64; gens.len()];
    loop {
        let mut monomial = powers[0][exponents[0] as usize].clone();
        for (i, &e) in exponents.iter().enumerate().skip(1) {
            monomial = monomial.mul(&powers[i][e as usize])?;
        }
        let is_identity_tuple = exponents.iter().all(|&e| e == 0);
        let trace_ok = match monomial.trace() {
            Scalar::Exact(t) => {
                if is_identity_tuple {
                    t == full
                } else {
                    t.is_zero()
                }
            }
            Scalar::Approx(t) => {
                let target = if is_identity_tuple { dim as f64 } else { 0.0 };
                (t - target).norm() < DEFAULT_TOL * dim as f64
            }
        };
        if !trace_ok {
            return Ok(false);
        }
        // Mixed-radix increment over Z_p^k.
        let mut carry = true;
        for e in exponents.iter_mut() {
            if carry {
                *e += 1;
                if *e == p {
                    *e = 0;
                } else {
                    carry = false;
                }
            }
        }
        if carry {
            return Ok(true);
        }
    }
}

/// True when every row and every column carries exactly one nonzero entry
/// and that entry has unit modulus.
pub fn is_monomial(m: &SqMatrix, tol: f64) -> bool {
    let dim = m.dim();
    let mut row_seen = vec![false; dim];
    for j in 0..dim {
        let mut hits = 0;
        for (i, seen) in row_seen.iter_mut().enumerate() {
            let unit = match m.get(i, j) {
                Scalar::Exact(x) => {
                    if x.is_zero() {
                        continue;
                    }
                    x.abs2() == CycNum::one()
                }
                Scalar::Approx(x) => {
                    if x.norm() <= tol {
                        continue;
                    }
                    (x.norm() - 1.0).abs() <= tol
                }
            };
            if !unit || *seen {
                return false;
            }
            *seen = true;
            hits += 1;
        }
        if hits != 1 {
            return false;
        }
    }
    true
}
