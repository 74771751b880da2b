//! Yang-Baxter and generalized Yang-Baxter verification, plus projective
//! order probing for solutions.
//!
//! The projective order of A is the smallest k with A^k a scalar multiple of
//! the identity. In exact mode the power loop runs over a prime modular image
//! of the matrix, which is a ring homomorphism on the entries, so any k whose
//! exact power is scalar is also scalar in the image; flagged candidates are
//! then confirmed with exact arithmetic before being reported.

use crate::cyclo::{self, Scalar};
use crate::matrix::{place, MatrixError, SqMatrix, Stage};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use std::fmt;

/// Errors from R-matrix loading and relation checks.
#[derive(Debug, thiserror::Error)]
pub enum YangBaxterError {
    #[error("matrix dimension {dim} is not {d}^{k}")]
    DimNotAPower { dim: usize, d: usize, k: usize },
    #[error("R-matrix is not invertible")]
    NotInvertible,
    #[error("arity must be at least 2 and shift at least 1")]
    BadArity,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A candidate R-matrix: an operator on k tensor copies of a d-dimensional
/// space, braided with copies shifted by m slots.
#[derive(Clone)]
pub struct RMatrixSpec {
    local_dim: usize,
    arity: usize,
    shift: usize,
    matrix: SqMatrix,
}

impl RMatrixSpec {
    /// Ordinary R-matrix on W tensor W (arity 2, shift 1). Invertibility is
    /// checked by row reduction on load.
    pub fn new(
        matrix: SqMatrix,
        local_dim: usize,
        tol: f64,
    ) -> Result<RMatrixSpec, YangBaxterError> {
        Self::new_generalized(matrix, local_dim, 2, 1, tol)
    }

    pub fn new_generalized(
        matrix: SqMatrix,
        local_dim: usize,
        arity: usize,
        shift: usize,
        tol: f64,
    ) -> Result<RMatrixSpec, YangBaxterError> {
        if arity < 2 || shift < 1 {
            return Err(YangBaxterError::BadArity);
        }
        let expected = local_dim
            .checked_pow(arity as u32)
            .filter(|&e| e == matrix.dim());
        if local_dim < 2 || expected.is_none() {
            return Err(YangBaxterError::DimNotAPower {
                dim: matrix.dim(),
                d: local_dim,
                k: arity,
            });
        }
        if !matrix.is_invertible(tol) {
            return Err(YangBaxterError::NotInvertible);
        }
        Ok(RMatrixSpec {
            local_dim,
            arity,
            shift,
            matrix,
        })
    }

    pub fn local_dim(&self) -> usize {
        self.local_dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn matrix(&self) -> &SqMatrix {
        &self.matrix
    }
}

/// Whether (R tensor I)(I tensor R)(R tensor I) = (I tensor R)(R tensor I)(I tensor R)
/// on three tensor slots.
pub fn check_ybe(spec: &RMatrixSpec, tol: f64) -> Result<bool, YangBaxterError> {
    let d = spec.local_dim;
    let r = &spec.matrix;
    let a = place(r, 0, 1, d)?;
    let b = place(r, 1, 0, d)?;
    let lhs = a.mul(&b)?.mul(&a)?;
    let rhs = b.mul(&a)?.mul(&b)?;
    Ok(lhs.approx_eq(&rhs, tol))
}

/// Result of the generalized YBE check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GybeResult {
    pub gybe: bool,
    pub far_commutation: bool,
}

/// Checks the generalized relation (R tensor Id_m)(Id_m tensor R)(R tensor Id_m)
/// = (Id_m tensor R)(R tensor Id_m)(Id_m tensor R) with Id_m the identity on m
/// local slots, and whether shifted copies of R far-commute. Far commutation
/// is not implied by the generalized relation, so it is tested separately on
/// the minimal ambient space of 2k + m slots.
pub fn check_gybe(spec: &RMatrixSpec, tol: f64) -> Result<GybeResult, YangBaxterError> {
    let (d, k, m) = (spec.local_dim, spec.arity, spec.shift);
    let r = &spec.matrix;
    let a = place(r, 0, m, d)?;
    let b = place(r, m, 0, d)?;
    let lhs = a.mul(&b)?.mul(&a)?;
    let rhs = b.mul(&a)?.mul(&b)?;
    let gybe = lhs.approx_eq(&rhs, tol);

    let slots = 2 * k + m;
    let mut gens = Vec::new();
    let mut i = 0usize;
    while i * m + k <= slots {
        gens.push(place(r, i * m, slots - i * m - k, d)?);
        i += 1;
    }
    let mut far_commutation = true;
    'pairs: for x in 0..gens.len() {
        for y in x + 2..gens.len() {
            let xy = gens[x].mul(&gens[y])?;
            let yx = gens[y].mul(&gens[x])?;
            if !xy.approx_eq(&yx, tol) {
                far_commutation = false;
                break 'pairs;
            }
        }
    }
    Ok(GybeResult {
        gybe,
        far_commutation,
    })
}

/// Outcome of a bounded projective-order search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectiveOrder {
    Finite(u64),
    ExceedsBound,
}

impl fmt::Display for ProjectiveOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectiveOrder::Finite(k) => write!(f, "Finite({k})"),
            ProjectiveOrder::ExceedsBound => write!(f, "ExceedsBound"),
        }
    }
}

/// Smallest k <= bound with A^k = c I for a nonzero scalar c, else
/// ExceedsBound. Exact matrices are detected literally; approx matrices
/// within `tol` per entry.
pub fn projective_order(a: &SqMatrix, bound: u64, tol: f64) -> ProjectiveOrder {
    if a.exact_entries().is_some() {
        projective_order_exact(a, bound)
    } else {
        let mut cur = a.clone();
        for k in 1..=bound {
            if k > 1 {
                cur = cur.mul(a).expect("same shape");
            }
            if let Some(Scalar::Approx(c)) = cur.as_scalar_multiple_of_identity(tol) {
                if c.norm() > tol {
                    return ProjectiveOrder::Finite(k);
                }
            }
        }
        ProjectiveOrder::ExceedsBound
    }
}

fn projective_order_exact(a: &SqMatrix, bound: u64) -> ProjectiveOrder {
    let verify = |k: u64| -> bool {
        let p = a.pow(k).expect("square matrix powers");
        matches!(
            p.as_scalar_multiple_of_identity(0.0),
            Some(Scalar::Exact(c)) if !c.is_zero()
        )
    };
    if let Some(mut screen) = ModScreen::new(a) {
        for k in 1..=bound {
            screen.step();
            if screen.is_scalar_image() && verify(k) {
                return ProjectiveOrder::Finite(k);
            }
        }
        return ProjectiveOrder::ExceedsBound;
    }
    // No usable screening prime: run the power loop in exact arithmetic.
    let mut cur = a.clone();
    for k in 1..=bound {
        if k > 1 {
            cur = cur.mul(a).expect("same shape");
        }
        if let Some(Scalar::Exact(c)) = cur.as_scalar_multiple_of_identity(0.0) {
            if !c.is_zero() {
                return ProjectiveOrder::Finite(k);
            }
        }
    }
    ProjectiveOrder::ExceedsBound
}

const SCREEN_PRIMES: [u64; 3] = [(1 << 31) - 1, (1 << 61) - 1, 2305843009213693967];

/// Modular image of an exact matrix over F_q, with the cyclotomic power-basis
/// reduction rows carried along so products stay in the power basis.
struct ModScreen {
    q: u64,
    dim: usize,
    phi: usize,
    rows: Vec<Vec<u64>>,
    base: Vec<u64>,
    cur: Vec<u64>,
    started: bool,
}

impl ModScreen {
    fn new(a: &SqMatrix) -> Option<ModScreen> {
        let entries = a.exact_entries()?;
        let dim = a.dim();
        let mut m = 1u32;
        for x in entries {
            m = cyclo::join_conductors(m, x.conductor());
        }
        let tab = cyclo::table(m);
        let phi = tab.phi;
        let stage = Stage::build(dim, entries, m, phi);
        let q = *SCREEN_PRIMES
            .iter()
            .find(|&&q| !(&stage.denom % BigInt::from(q)).is_zero())?;
        let denom_inv = mod_inv(big_mod(&stage.denom, q), q);
        let base: Vec<u64> = stage
            .coeffs
            .iter()
            .map(|c| mul_mod(big_mod(c, q), denom_inv, q))
            .collect();
        let conv_len = 2 * phi - 1;
        let rows: Vec<Vec<u64>> = tab.rows[..conv_len.max(phi)]
            .iter()
            .map(|r| r.iter().map(|w| big_mod(w, q)).collect())
            .collect();
        let cur = base.clone();
        Some(ModScreen {
            q,
            dim,
            phi,
            rows,
            base,
            cur,
            started: false,
        })
    }

    /// Advances to the next power of the base matrix.
    fn step(&mut self) {
        if !self.started {
            self.started = true;
            return;
        }
        let (d, phi, q) = (self.dim, self.phi, self.q);
        let conv_len = 2 * phi - 1;
        let small_q = q < (1 << 32);
        let mut out = vec![0u64; d * d * phi];
        let mut conv = vec![0u128; conv_len];
        for i in 0..d {
            for j in 0..d {
                for x in conv.iter_mut() {
                    *x = 0;
                }
                for k in 0..d {
                    let ca = &self.cur[(i * d + k) * phi..(i * d + k + 1) * phi];
                    let cb = &self.base[(k * d + j) * phi..(k * d + j + 1) * phi];
                    for (u, &xu) in ca.iter().enumerate() {
                        if xu == 0 {
                            continue;
                        }
                        for (v, &yv) in cb.iter().enumerate() {
                            if yv == 0 {
                                continue;
                            }
                            let prod = xu as u128 * yv as u128;
                            conv[u + v] += if small_q { prod } else { prod % q as u128 };
                        }
                    }
                }
                let slot = &mut out[(i * d + j) * phi..(i * d + j + 1) * phi];
                for t in 0..phi {
                    slot[t] = (conv[t] % q as u128) as u64;
                }
                for (e, &c) in conv.iter().enumerate().skip(phi) {
                    let c = (c % q as u128) as u64;
                    if c == 0 {
                        continue;
                    }
                    for (t, &w) in self.rows[e].iter().enumerate() {
                        if w != 0 {
                            slot[t] = add_mod(slot[t], mul_mod(c, w, q), q);
                        }
                    }
                }
            }
        }
        self.cur = out;
    }

    /// Whether the current power is scalar in the modular image. Any exact
    /// scalar power maps to a scalar image, so this never misses a candidate.
    fn is_scalar_image(&self) -> bool {
        let (d, phi) = (self.dim, self.phi);
        let c = &self.cur[..phi];
        for i in 0..d {
            for j in 0..d {
                let e = &self.cur[(i * d + j) * phi..(i * d + j + 1) * phi];
                if i == j {
                    if e != c {
                        return false;
                    }
                } else if e.iter().any(|&x| x != 0) {
                    return false;
                }
            }
        }
        true
    }
}

fn big_mod(x: &BigInt, q: u64) -> u64 {
    let r = x % BigInt::from(q);
    let r = if r.is_negative() {
        r + BigInt::from(q)
    } else {
        r
    };
    r.to_u64().expect("residue fits u64")
}

fn add_mod(a: u64, b: u64, q: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % q as u128) as u64
}

fn mul_mod(a: u64, b: u64, q: u64) -> u64 {
    ((a as u128 * b as u128) % q as u128) as u64
}

fn mod_pow(mut b: u64, mut e: u64, q: u64) -> u64 {
    let mut acc = 1u64;
    b %= q;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, q);
        }
        b = mul_mod(b, b, q);
        e >>= 1;
    }
    acc
}

fn mod_inv(a: u64, q: u64) -> u64 {
    mod_pow(a, q - 2, q)
}
