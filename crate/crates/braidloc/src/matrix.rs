//! Dense square matrices over exact cyclotomic or floating complex scalars.
//!
//! A [`SqMatrix`] keeps one homogeneous backend per matrix. The exact backend
//! stores [`CycNum`] entries; multiplication stages both operands into a
//! shared-denominator integer form so the inner loops run on machine words
//! (with a big-integer fallback when coefficient bounds overflow), and skips
//! structurally zero entries row by row. Spectra are recovered from
//! annihilating polynomials and traces rather than a numeric eigensolver.

use crate::cyclo::{self, CycNum, CycloError, Scalar};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

/// Scalar backend of a matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    Exact,
    Approx,
}

/// Errors from matrix construction and arithmetic.
#[derive(Debug, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix rows must form a nonempty square array")]
    BadShape,
    #[error("operands use different scalar backends")]
    BackendMismatch,
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("amplify slot {i} out of range for {n} strands")]
    SlotOutOfRange { i: usize, n: usize },
    #[error("matrix dimension {dim} is not {d}^{k}")]
    NotATensorPower { dim: usize, d: usize, k: usize },
    #[error("spectrum roots must be distinct and nonempty")]
    BadRoots,
    #[error("traces are not explained by the given roots with integer multiplicities")]
    SpectrumMismatch,
    #[error("invalid matrix JSON: {0}")]
    BadJson(String),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

#[derive(Clone)]
enum MatData {
    Exact(Vec<CycNum>),
    Approx(Vec<Complex64>),
}

/// A dense square matrix with a homogeneous scalar backend.
#[derive(Clone)]
pub struct SqMatrix {
    dim: usize,
    data: MatData,
}

impl std::fmt::Debug for SqMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SqMatrix")
            .field("dim", &self.dim)
            .field("backend", &self.backend())
            .finish_non_exhaustive()
    }
}

impl SqMatrix {
    pub fn exact_from_rows(rows: Vec<Vec<CycNum>>) -> Result<SqMatrix, MatrixError> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(MatrixError::BadShape);
        }
        Ok(SqMatrix {
            dim,
            data: MatData::Exact(rows.into_iter().flatten().collect()),
        })
    }

    pub fn approx_from_rows(rows: Vec<Vec<Complex64>>) -> Result<SqMatrix, MatrixError> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(MatrixError::BadShape);
        }
        Ok(SqMatrix {
            dim,
            data: MatData::Approx(rows.into_iter().flatten().collect()),
        })
    }

    pub fn identity(dim: usize, backend: Backend) -> SqMatrix {
        assert!(dim > 0, "zero-dimensional matrix");
        match backend {
            Backend::Exact => {
                let mut e = vec![CycNum::zero(); dim * dim];
                for i in 0..dim {
                    e[i * dim + i] = CycNum::one();
                }
                SqMatrix {
                    dim,
                    data: MatData::Exact(e),
                }
            }
            Backend::Approx => {
                let mut e = vec![Complex64::new(0.0, 0.0); dim * dim];
                for i in 0..dim {
                    e[i * dim + i] = Complex64::new(1.0, 0.0);
                }
                SqMatrix {
                    dim,
                    data: MatData::Approx(e),
                }
            }
        }
    }

    pub fn zero(dim: usize, backend: Backend) -> SqMatrix {
        assert!(dim > 0, "zero-dimensional matrix");
        match backend {
            Backend::Exact => SqMatrix {
                dim,
                data: MatData::Exact(vec![CycNum::zero(); dim * dim]),
            },
            Backend::Approx => SqMatrix {
                dim,
                data: MatData::Approx(vec![Complex64::new(0.0, 0.0); dim * dim]),
            },
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn backend(&self) -> Backend {
        match self.data {
            MatData::Exact(_) => Backend::Exact,
            MatData::Approx(_) => Backend::Approx,
        }
    }

    pub fn exact_entries(&self) -> Option<&[CycNum]> {
        match &self.data {
            MatData::Exact(e) => Some(e),
            MatData::Approx(_) => None,
        }
    }

    pub fn approx_entries(&self) -> Option<&[Complex64]> {
        match &self.data {
            MatData::Approx(e) => Some(e),
            MatData::Exact(_) => None,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.dim && j < self.dim, "index out of range");
        match &self.data {
            MatData::Exact(e) => Scalar::Exact(e[i * self.dim + j].clone()),
            MatData::Approx(e) => Scalar::Approx(e[i * self.dim + j]),
        }
    }

    /// Floating image of the matrix, exact entries evaluated.
    pub fn to_approx(&self) -> SqMatrix {
        match &self.data {
            MatData::Approx(_) => self.clone(),
            MatData::Exact(e) => SqMatrix {
                dim: self.dim,
                data: MatData::Approx(e.iter().map(|x| x.to_complex()).collect()),
            },
        }
    }

    fn same_shape(&self, other: &SqMatrix) -> Result<(), MatrixError> {
        if self.dim != other.dim {
            return Err(MatrixError::DimMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.backend() != other.backend() {
            return Err(MatrixError::BackendMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &SqMatrix) -> Result<SqMatrix, MatrixError> {
        self.same_shape(other)?;
        let data = match (&self.data, &other.data) {
            (MatData::Exact(a), MatData::Exact(b)) => {
                MatData::Exact(a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
            }
            (MatData::Approx(a), MatData::Approx(b)) => {
                MatData::Approx(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            _ => unreachable!("same_shape checked backends"),
        };
        Ok(SqMatrix {
            dim: self.dim,
            data,
        })
    }

    pub fn sub(&self, other: &SqMatrix) -> Result<SqMatrix, MatrixError> {
        self.same_shape(other)?;
        let data = match (&self.data, &other.data) {
            (MatData::Exact(a), MatData::Exact(b)) => {
                MatData::Exact(a.iter().zip(b).map(|(x, y)| x.sub(y)).collect())
            }
            (MatData::Approx(a), MatData::Approx(b)) => {
                MatData::Approx(a.iter().zip(b).map(|(x, y)| x - y).collect())
            }
            _ => unreachable!("same_shape checked backends"),
        };
        Ok(SqMatrix {
            dim: self.dim,
            data,
        })
    }

    pub fn neg(&self) -> SqMatrix {
        let data = match &self.data {
            MatData::Exact(a) => MatData::Exact(a.iter().map(|x| x.neg()).collect()),
            MatData::Approx(a) => MatData::Approx(a.iter().map(|x| -x).collect()),
        };
        SqMatrix {
            dim: self.dim,
            data,
        }
    }

    /// Multiplies every entry by a scalar of the matching backend.
    pub fn scale(&self, s: &Scalar) -> Result<SqMatrix, MatrixError> {
        let data = match (&self.data, s) {
            (MatData::Exact(a), Scalar::Exact(c)) => {
                MatData::Exact(a.iter().map(|x| x.mul(c)).collect())
            }
            (MatData::Approx(a), Scalar::Approx(c)) => {
                MatData::Approx(a.iter().map(|x| x * c).collect())
            }
            _ => return Err(MatrixError::BackendMismatch),
        };
        Ok(SqMatrix {
            dim: self.dim,
            data,
        })
    }

    pub fn conj_transpose(&self) -> SqMatrix {
        let d = self.dim;
        let data = match &self.data {
            MatData::Exact(a) => {
                let mut out = vec![CycNum::zero(); d * d];
                for i in 0..d {
                    for j in 0..d {
                        out[j * d + i] = a[i * d + j].conj();
                    }
                }
                MatData::Exact(out)
            }
            MatData::Approx(a) => {
                let mut out = vec![Complex64::new(0.0, 0.0); d * d];
                for i in 0..d {
                    for j in 0..d {
                        out[j * d + i] = a[i * d + j].conj();
                    }
                }
                MatData::Approx(out)
            }
        };
        SqMatrix { dim: d, data }
    }

    pub fn trace(&self) -> Scalar {
        let d = self.dim;
        match &self.data {
            MatData::Exact(a) => {
                let mut acc = CycNum::zero();
                for i in 0..d {
                    acc = acc.add(&a[i * d + i]);
                }
                Scalar::Exact(acc)
            }
            MatData::Approx(a) => {
                let mut acc = Complex64::new(0.0, 0.0);
                for i in 0..d {
                    acc += a[i * d + i];
                }
                Scalar::Approx(acc)
            }
        }
    }

    pub fn mul(&self, other: &SqMatrix) -> Result<SqMatrix, MatrixError> {
        self.same_shape(other)?;
        let d = self.dim;
        let data = match (&self.data, &other.data) {
            (MatData::Exact(a), MatData::Exact(b)) => MatData::Exact(mul_exact(d, a, b)),
            (MatData::Approx(a), MatData::Approx(b)) => {
                let mut out = vec![Complex64::new(0.0, 0.0); d * d];
                for i in 0..d {
                    for k in 0..d {
                        let x = a[i * d + k];
                        if x.norm_sqr() == 0.0 {
                            continue;
                        }
                        for j in 0..d {
                            out[i * d + j] += x * b[k * d + j];
                        }
                    }
                }
                MatData::Approx(out)
            }
            _ => unreachable!("same_shape checked backends"),
        };
        Ok(SqMatrix { dim: d, data })
    }

    pub fn pow(&self, k: u64) -> Result<SqMatrix, MatrixError> {
        let mut acc = SqMatrix::identity(self.dim, self.backend());
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn kron(&self, other: &SqMatrix) -> Result<SqMatrix, MatrixError> {
        if self.backend() != other.backend() {
            return Err(MatrixError::BackendMismatch);
        }
        let (da, db) = (self.dim, other.dim);
        let d = da * db;
        let data = match (&self.data, &other.data) {
            (MatData::Exact(a), MatData::Exact(b)) => {
                let mut out = vec![CycNum::zero(); d * d];
                for i1 in 0..da {
                    for j1 in 0..da {
                        let x = &a[i1 * da + j1];
                        if x.is_zero() {
                            continue;
                        }
                        for i2 in 0..db {
                            for j2 in 0..db {
                                let y = &b[i2 * db + j2];
                                if y.is_zero() {
                                    continue;
                                }
                                out[(i1 * db + i2) * d + (j1 * db + j2)] = x.mul(y);
                            }
                        }
                    }
                }
                MatData::Exact(out)
            }
            (MatData::Approx(a), MatData::Approx(b)) => {
                let mut out = vec![Complex64::new(0.0, 0.0); d * d];
                for i1 in 0..da {
                    for j1 in 0..da {
                        let x = a[i1 * da + j1];
                        for i2 in 0..db {
                            for j2 in 0..db {
                                out[(i1 * db + i2) * d + (j1 * db + j2)] = x * b[i2 * db + j2];
                            }
                        }
                    }
                }
                MatData::Approx(out)
            }
            _ => unreachable!("backends checked above"),
        };
        Ok(SqMatrix { dim: d, data })
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        match &self.data {
            MatData::Exact(a) => a.iter().all(|x| x.is_zero()),
            MatData::Approx(a) => a.iter().all(|x| x.norm() <= tol),
        }
    }

    /// Literal equality for exact matrices, max-entry deviation for approx.
    pub fn approx_eq(&self, other: &SqMatrix, tol: f64) -> bool {
        if self.dim != other.dim || self.backend() != other.backend() {
            return false;
        }
        match (&self.data, &other.data) {
            (MatData::Exact(a), MatData::Exact(b)) => a == b,
            (MatData::Approx(a), MatData::Approx(b)) => {
                a.iter().zip(b).all(|(x, y)| (x - y).norm() <= tol)
            }
            _ => false,
        }
    }

    /// When the matrix equals c * I, returns c.
    pub fn as_scalar_multiple_of_identity(&self, tol: f64) -> Option<Scalar> {
        let d = self.dim;
        match &self.data {
            MatData::Exact(a) => {
                let c = a[0].clone();
                for i in 0..d {
                    for j in 0..d {
                        let e = &a[i * d + j];
                        if i == j {
                            if *e != c {
                                return None;
                            }
                        } else if !e.is_zero() {
                            return None;
                        }
                    }
                }
                Some(Scalar::Exact(c))
            }
            MatData::Approx(a) => {
                let c = a[0];
                for i in 0..d {
                    for j in 0..d {
                        let e = a[i * d + j];
                        let target = if i == j { c } else { Complex64::new(0.0, 0.0) };
                        if (e - target).norm() > tol {
                            return None;
                        }
                    }
                }
                Some(Scalar::Approx(c))
            }
        }
    }

    /// Exact mode: A A* = I literally. Approx mode: within `tol` per entry.
    pub fn is_unitary(&self, tol: f64) -> bool {
        let prod = self
            .mul(&self.conj_transpose())
            .expect("conjugate transpose has the same shape");
        prod.approx_eq(&SqMatrix::identity(self.dim, self.backend()), tol)
    }

    /// Invertibility via row reduction (exact pivots literal, approx pivots
    /// compared against `tol`).
    pub fn is_invertible(&self, tol: f64) -> bool {
        match &self.data {
            MatData::Exact(a) => exact_rank(self.dim, a) == self.dim,
            MatData::Approx(a) => approx_rank(self.dim, a, tol) == self.dim,
        }
    }

    pub fn inverse(&self) -> Result<SqMatrix, MatrixError> {
        let d = self.dim;
        match &self.data {
            MatData::Exact(a) => {
                let mut aug: Vec<Vec<CycNum>> = (0..d)
                    .map(|i| {
                        let mut row: Vec<CycNum> = a[i * d..(i + 1) * d].to_vec();
                        row.extend((0..d).map(|j| {
                            if i == j {
                                CycNum::one()
                            } else {
                                CycNum::zero()
                            }
                        }));
                        row
                    })
                    .collect();
                for c in 0..d {
                    let Some(p) = (c..d).find(|&r| !aug[r][c].is_zero()) else {
                        return Err(MatrixError::NotInvertible);
                    };
                    aug.swap(c, p);
                    let inv = aug[c][c].inv().expect("pivot is nonzero");
                    for x in aug[c].iter_mut() {
                        *x = x.mul(&inv);
                    }
                    let pivot_row = aug[c].clone();
                    for (r, row) in aug.iter_mut().enumerate() {
                        if r != c && !row[c].is_zero() {
                            let f = row[c].clone();
                            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                                *x = x.sub(&f.mul(p));
                            }
                        }
                    }
                }
                let rows = aug.into_iter().map(|r| r[d..].to_vec()).collect();
                SqMatrix::exact_from_rows(rows)
            }
            MatData::Approx(a) => {
                let mut aug: Vec<Vec<Complex64>> = (0..d)
                    .map(|i| {
                        let mut row: Vec<Complex64> = a[i * d..(i + 1) * d].to_vec();
                        row.extend((0..d).map(|j| {
                            if i == j {
                                Complex64::new(1.0, 0.0)
                            } else {
                                Complex64::new(0.0, 0.0)
                            }
                        }));
                        row
                    })
                    .collect();
                for c in 0..d {
                    let (p, mag) = (c..d)
                        .map(|r| (r, aug[r][c].norm()))
                        .max_by(|a, b| a.1.total_cmp(&b.1))
                        .expect("nonempty range");
                    if mag <= f64::EPSILON * 16.0 * d as f64 {
                        return Err(MatrixError::NotInvertible);
                    }
                    aug.swap(c, p);
                    let inv = Complex64::new(1.0, 0.0) / aug[c][c];
                    for x in aug[c].iter_mut() {
                        *x *= inv;
                    }
                    let pivot_row = aug[c].clone();
                    for (r, row) in aug.iter_mut().enumerate() {
                        if r != c {
                            let f = row[c];
                            if f.norm_sqr() == 0.0 {
                                continue;
                            }
                            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                                *x -= f * p;
                            }
                        }
                    }
                }
                let rows = aug.into_iter().map(|r| r[d..].to_vec()).collect();
                SqMatrix::approx_from_rows(rows)
            }
        }
    }
}

fn exact_rank(dim: usize, entries: &[CycNum]) -> usize {
    let mut m: Vec<Vec<CycNum>> = (0..dim)
        .map(|i| entries[i * dim..(i + 1) * dim].to_vec())
        .collect();
    let mut rank = 0;
    for c in 0..dim {
        let Some(p) = (rank..dim).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = m[rank][c].inv().expect("pivot is nonzero");
        let pivot_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if !row[c].is_zero() {
                let f = row[c].mul(&inv);
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = x.sub(&f.mul(p));
                }
            }
        }
        rank += 1;
        if rank == dim {
            break;
        }
    }
    rank
}

fn approx_rank(dim: usize, entries: &[Complex64], tol: f64) -> usize {
    let mut m: Vec<Vec<Complex64>> = (0..dim)
        .map(|i| entries[i * dim..(i + 1) * dim].to_vec())
        .collect();
    let mut rank = 0;
    for c in 0..dim {
        let Some((p, mag)) = (rank..dim)
            .map(|r| (r, m[r][c].norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
        else {
            continue;
        };
        if mag <= tol {
            continue;
        }
        m.swap(rank, p);
        let inv = Complex64::new(1.0, 0.0) / m[rank][c];
        let pivot_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            let f = row[c] * inv;
            if f.norm_sqr() == 0.0 {
                continue;
            }
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x -= f * p;
            }
        }
        rank += 1;
        if rank == dim {
            break;
        }
    }
    rank
}

/// Staged integer form of an exact matrix over a fixed conductor: every
/// entry's power-basis coordinates share one denominator.
pub(crate) struct Stage {
    pub(crate) denom: BigInt,
    pub(crate) coeffs: Vec<BigInt>,
    pub(crate) row_nonzero: Vec<Vec<u32>>,
    pub(crate) max_abs: BigInt,
}

impl Stage {
    pub(crate) fn build(dim: usize, entries: &[CycNum], m: u32, phi: usize) -> Stage {
        let embedded: Vec<Vec<BigRational>> = entries
            .iter()
            .map(|x| {
                if x.conductor() == m {
                    x.coeffs().to_vec()
                } else {
                    x.embedded(m).coeffs().to_vec()
                }
            })
            .collect();
        let mut denom = BigInt::one();
        for e in &embedded {
            for c in e {
                if !c.is_zero() {
                    denom = denom.lcm(c.denom());
                }
            }
        }
        let mut coeffs = vec![BigInt::zero(); dim * dim * phi];
        let mut max_abs = BigInt::zero();
        let mut row_nonzero: Vec<Vec<u32>> = vec![Vec::new(); dim];
        for (idx, e) in embedded.iter().enumerate() {
            let mut any = false;
            for (t, c) in e.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                any = true;
                let v = c.numer() * (&denom / c.denom());
                if v.abs() > max_abs {
                    max_abs = v.abs();
                }
                coeffs[idx * phi + t] = v;
            }
            if any {
                row_nonzero[idx / dim].push((idx % dim) as u32);
            }
        }
        Stage {
            denom,
            coeffs,
            row_nonzero,
            max_abs,
        }
    }
}

fn mul_exact(dim: usize, a: &[CycNum], b: &[CycNum]) -> Vec<CycNum> {
    let mut m = 1u32;
    for x in a.iter().chain(b.iter()) {
        m = cyclo::join_conductors(m, x.conductor());
    }
    let tab = cyclo::table(m);
    let phi = tab.phi;
    let conv_len = 2 * phi - 1;
    let sa = Stage::build(dim, a, m, phi);
    let sb = Stage::build(dim, b, m, phi);
    let denom = &sa.denom * &sb.denom;

    let max_row_coeff = tab.rows[phi..conv_len.max(phi)]
        .iter()
        .flat_map(|r| r.iter())
        .map(|w| w.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    // acc entries are bounded by dim * phi * maxA * maxB; folding multiplies
    // by at most (1 + phi * max |reduction row|).
    let bound: BigInt = &sa.max_abs
        * &sb.max_abs
        * BigInt::from(dim)
        * BigInt::from(phi)
        * (BigInt::one() + BigInt::from(phi) * &max_row_coeff);
    let i64_ok = sa.max_abs.to_i64().is_some()
        && sb.max_abs.to_i64().is_some()
        && bound < (BigInt::one() << 126);

    let mut out = vec![CycNum::zero(); dim * dim];
    if i64_ok {
        let a64: Vec<i64> = sa.coeffs.iter().map(|c| c.to_i64().unwrap()).collect();
        let b64: Vec<i64> = sb.coeffs.iter().map(|c| c.to_i64().unwrap()).collect();
        let rows64: Vec<Vec<i64>> = tab.rows[..conv_len]
            .iter()
            .map(|r| {
                r.iter()
                    .map(|w| w.to_i64().expect("row bound checked"))
                    .collect()
            })
            .collect();
        out.par_chunks_mut(dim).enumerate().for_each_init(
            || (vec![0i128; dim * conv_len], vec![false; dim]),
            |(acc, touched), (i, out_row)| {
                for x in acc.iter_mut() {
                    *x = 0;
                }
                for t in touched.iter_mut() {
                    *t = false;
                }
                for &k in &sa.row_nonzero[i] {
                    let k = k as usize;
                    let ca = &a64[(i * dim + k) * phi..(i * dim + k + 1) * phi];
                    for &j in &sb.row_nonzero[k] {
                        let j = j as usize;
                        let cb = &b64[(k * dim + j) * phi..(k * dim + j + 1) * phi];
                        let slot = &mut acc[j * conv_len..(j + 1) * conv_len];
                        touched[j] = true;
                        for (u, &xu) in ca.iter().enumerate() {
                            if xu == 0 {
                                continue;
                            }
                            let xi = xu as i128;
                            for (v, &yv) in cb.iter().enumerate() {
                                slot[u + v] += xi * yv as i128;
                            }
                        }
                    }
                }
                for j in 0..dim {
                    if !touched[j] {
                        continue;
                    }
                    let slot = &acc[j * conv_len..(j + 1) * conv_len];
                    let mut reduced = slot[..phi].to_vec();
                    for (e, &c) in slot.iter().enumerate().skip(phi) {
                        if c == 0 {
                            continue;
                        }
                        for (t, &w) in rows64[e].iter().enumerate() {
                            if w != 0 {
                                reduced[t] += c * w as i128;
                            }
                        }
                    }
                    let coeffs: Vec<BigRational> = reduced
                        .into_iter()
                        .map(|c| BigRational::new(BigInt::from(c), denom.clone()))
                        .collect();
                    out_row[j] = CycNum::from_power_basis_unchecked(m, coeffs);
                }
            },
        );
    } else {
        out.par_chunks_mut(dim).enumerate().for_each_init(
            || (vec![BigInt::zero(); dim * conv_len], vec![false; dim]),
            |(acc, touched), (i, out_row)| {
                for x in acc.iter_mut() {
                    x.set_zero();
                }
                for t in touched.iter_mut() {
                    *t = false;
                }
                for &k in &sa.row_nonzero[i] {
                    let k = k as usize;
                    let ca = &sa.coeffs[(i * dim + k) * phi..(i * dim + k + 1) * phi];
                    for &j in &sb.row_nonzero[k] {
                        let j = j as usize;
                        let cb = &sb.coeffs[(k * dim + j) * phi..(k * dim + j + 1) * phi];
                        let base = j * conv_len;
                        touched[j] = true;
                        for (u, xu) in ca.iter().enumerate() {
                            if xu.is_zero() {
                                continue;
                            }
                            for (v, yv) in cb.iter().enumerate() {
                                if !yv.is_zero() {
                                    acc[base + u + v] += xu * yv;
                                }
                            }
                        }
                    }
                }
                for j in 0..dim {
                    if !touched[j] {
                        continue;
                    }
                    let slot = &acc[j * conv_len..(j + 1) * conv_len];
                    let mut reduced: Vec<BigInt> = slot[..phi].to_vec();
                    for (e, c) in slot.iter().enumerate().skip(phi) {
                        if c.is_zero() {
                            continue;
                        }
                        for (t, w) in tab.rows[e].iter().enumerate() {
                            if !w.is_zero() {
                                reduced[t] += c * w;
                            }
                        }
                    }
                    let coeffs: Vec<BigRational> = reduced
                        .into_iter()
                        .map(|c| BigRational::new(c, denom.clone()))
                        .collect();
                    out_row[j] = CycNum::from_power_basis_unchecked(m, coeffs);
                }
            },
        );
    }
    out
}

/// I_{d^before} tensor R tensor I_{d^after}.
pub fn place(r: &SqMatrix, before: usize, after: usize, d: usize) -> Result<SqMatrix, MatrixError> {
    let backend = r.backend();
    let mut out = if before > 0 {
        SqMatrix::identity(d.pow(before as u32), backend).kron(r)?
    } else {
        r.clone()
    };
    if after > 0 {
        out = out.kron(&SqMatrix::identity(d.pow(after as u32), backend))?;
    }
    Ok(out)
}

/// Places a d^2-dimensional operator on tensor slots (i, i+1) of n strands,
/// returning the d^n-dimensional matrix.
pub fn amplify(r: &SqMatrix, i: usize, n: usize, d: usize) -> Result<SqMatrix, MatrixError> {
    if n < 2 || i < 1 || i > n - 1 {
        return Err(MatrixError::SlotOutOfRange { i, n });
    }
    if r.dim() != d * d {
        return Err(MatrixError::NotATensorPower {
            dim: r.dim(),
            d,
            k: 2,
        });
    }
    place(r, i - 1, n - 1 - i, d)
}

/// Whether the product of (A - r I) over the given roots vanishes. A true
/// result certifies that A is diagonalizable with spectrum inside `roots`.
pub fn annihilator_check(a: &SqMatrix, roots: &[Scalar], tol: f64) -> Result<bool, MatrixError> {
    if roots.is_empty() {
        return Err(MatrixError::BadRoots);
    }
    let ident = SqMatrix::identity(a.dim(), a.backend());
    let mut prod = ident.clone();
    for r in roots {
        let shifted = a.sub(&ident.scale(r)?)?;
        prod = prod.mul(&shifted)?;
    }
    Ok(prod.is_zero(tol))
}

/// Recovers eigenvalue multiplicities from tr(A^k) = sum_j m_j r_j^k for
/// k = 0..|roots|-1. Roots must be distinct and must satisfy the annihilator
/// check for the answer to be meaningful.
pub fn spectrum_multiplicities(
    a: &SqMatrix,
    roots: &[Scalar],
    tol: f64,
) -> Result<Vec<u64>, MatrixError> {
    if roots.is_empty() {
        return Err(MatrixError::BadRoots);
    }
    let r = roots.len();
    match a.backend() {
        Backend::Exact => {
            let roots: Vec<CycNum> = roots
                .iter()
                .map(|s| match s {
                    Scalar::Exact(c) => Ok(c.clone()),
                    Scalar::Approx(_) => Err(MatrixError::BackendMismatch),
                })
                .collect::<Result<_, _>>()?;
            for i in 0..r {
                for j in i + 1..r {
                    if roots[i] == roots[j] {
                        return Err(MatrixError::BadRoots);
                    }
                }
            }
            // Row k of the system: sum_j roots[j]^k m_j = tr(A^k).
            let mut vand: Vec<Vec<CycNum>> = Vec::with_capacity(r);
            let mut rhs: Vec<CycNum> = Vec::with_capacity(r);
            let mut pow = SqMatrix::identity(a.dim(), Backend::Exact);
            for k in 0..r {
                vand.push(roots.iter().map(|x| x.pow(k as u64)).collect());
                let Scalar::Exact(t) = pow.trace() else {
                    unreachable!("exact backend")
                };
                rhs.push(t);
                if k + 1 < r {
                    pow = pow.mul(a)?;
                }
            }
            let sol = solve_exact(vand, rhs).ok_or(MatrixError::BadRoots)?;
            sol.iter()
                .map(|x| {
                    x.as_rational()
                        .filter(|q| q.denom().is_one() && !q.numer().is_negative())
                        .and_then(|q| q.numer().to_u64())
                        .ok_or(MatrixError::SpectrumMismatch)
                })
                .collect()
        }
        Backend::Approx => {
            let roots: Vec<Complex64> = roots.iter().map(|s| s.to_complex()).collect();
            for i in 0..r {
                for j in i + 1..r {
                    if (roots[i] - roots[j]).norm() <= tol {
                        return Err(MatrixError::BadRoots);
                    }
                }
            }
            let mut vand: Vec<Vec<Complex64>> = Vec::with_capacity(r);
            let mut rhs: Vec<Complex64> = Vec::with_capacity(r);
            let mut pow = SqMatrix::identity(a.dim(), Backend::Approx);
            for k in 0..r {
                vand.push(roots.iter().map(|x| x.powu(k as u32)).collect());
                let Scalar::Approx(t) = pow.trace() else {
                    unreachable!("approx backend")
                };
                rhs.push(t);
                if k + 1 < r {
                    pow = pow.mul(a)?;
                }
            }
            let sol = solve_approx(vand, rhs).ok_or(MatrixError::BadRoots)?;
            sol.iter()
                .map(|z| {
                    let rounded = z.re.round();
                    if (z - Complex64::new(rounded, 0.0)).norm() <= 1e-6 && rounded >= 0.0 {
                        Ok(rounded as u64)
                    } else {
                        Err(MatrixError::SpectrumMismatch)
                    }
                })
                .collect()
        }
    }
}

fn solve_exact(mut m: Vec<Vec<CycNum>>, mut rhs: Vec<CycNum>) -> Option<Vec<CycNum>> {
    let n = m.len();
    for c in 0..n {
        let p = (c..n).find(|&r| !m[r][c].is_zero())?;
        m.swap(c, p);
        rhs.swap(c, p);
        let inv = m[c][c].inv().ok()?;
        for x in m[c].iter_mut() {
            *x = x.mul(&inv);
        }
        rhs[c] = rhs[c].mul(&inv);
        let pivot_row = m[c].clone();
        let pivot_rhs = rhs[c].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x = x.sub(&f.mul(p));
                }
                rhs[r] = rhs[r].sub(&f.mul(&pivot_rhs));
            }
        }
    }
    Some(rhs)
}

fn solve_approx(mut m: Vec<Vec<Complex64>>, mut rhs: Vec<Complex64>) -> Option<Vec<Complex64>> {
    let n = m.len();
    for c in 0..n {
        let (p, mag) = (c..n)
            .map(|r| (r, m[r][c].norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))?;
        if mag <= f64::EPSILON * 64.0 * n as f64 {
            return None;
        }
        m.swap(c, p);
        rhs.swap(c, p);
        let inv = Complex64::new(1.0, 0.0) / m[c][c];
        for x in m[c].iter_mut() {
            *x *= inv;
        }
        rhs[c] *= inv;
        let pivot_row = m[c].clone();
        let pivot_rhs = rhs[c];
        for (r, row) in m.iter_mut().enumerate() {
            if r != c {
                let f = row[c];
                if f.norm_sqr() == 0.0 {
                    continue;
                }
                for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                    *x -= f * p;
                }
                rhs[r] -= f * pivot_rhs;
            }
        }
    }
    Some(rhs)
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    backend: String,
    entries: Vec<Vec<String>>,
}

impl SqMatrix {
    pub fn to_json_string(&self) -> String {
        let d = self.dim;
        let backend = match self.backend() {
            Backend::Exact => "exact",
            Backend::Approx => "approx",
        };
        let entries: Vec<Vec<String>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| match &self.data {
                        MatData::Exact(a) => a[i * d + j].to_string(),
                        MatData::Approx(a) => format_complex(a[i * d + j]),
                    })
                    .collect()
            })
            .collect();
        serde_json::to_string_pretty(&MatrixJson {
            dim: d,
            backend: backend.to_string(),
            entries,
        })
        .expect("plain data serializes")
    }

    pub fn from_json_str(s: &str) -> Result<SqMatrix, MatrixError> {
        let parsed: MatrixJson =
            serde_json::from_str(s).map_err(|e| MatrixError::BadJson(e.to_string()))?;
        if parsed.dim == 0
            || parsed.entries.len() != parsed.dim
            || parsed.entries.iter().any(|r| r.len() != parsed.dim)
        {
            return Err(MatrixError::BadJson(format!(
                "entries do not form a {0}x{0} array",
                parsed.dim
            )));
        }
        match parsed.backend.as_str() {
            "exact" => {
                let rows = parsed
                    .entries
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|s| {
                                CycNum::from_str(s).map_err(|e| MatrixError::BadJson(e.to_string()))
                            })
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                SqMatrix::exact_from_rows(rows)
            }
            "approx" => {
                let rows = parsed
                    .entries
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|s| {
                                parse_complex(s).ok_or_else(|| {
                                    MatrixError::BadJson(format!("bad complex literal: {s}"))
                                })
                            })
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                SqMatrix::approx_from_rows(rows)
            }
            other => Err(MatrixError::BadJson(format!("unknown backend: {other}"))),
        }
    }
}

/// Formats a complex number as "a+bi" / "a-bi" with round-trippable decimals.
pub fn format_complex(z: Complex64) -> String {
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    let im = if z.im == 0.0 { 0.0 } else { z.im };
    if im < 0.0 {
        format!("{}-{}i", re, -im)
    } else {
        format!("{re}+{im}i")
    }
}

/// Parses "a+bi" / "a-bi", a bare real "a", or a pure imaginary "bi".
pub fn parse_complex(s: &str) -> Option<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return None;
    }
    let body = t.strip_suffix('i');
    let bytes = t.as_bytes();
    // Split at the last sign that is not an exponent sign and not leading.
    let mut split = None;
    for p in (1..bytes.len()).rev() {
        let c = bytes[p];
        if (c == b'+' || c == b'-') && !matches!(bytes[p - 1], b'e' | b'E') {
            split = Some(p);
            break;
        }
    }
    match (body, split) {
        (Some(body), Some(p)) if p < body.len() => {
            let re: f64 = body[..p].parse().ok()?;
            let imag_str = &body[p..];
            let im: f64 = if imag_str == "+" {
                1.0
            } else if imag_str == "-" {
                -1.0
            } else {
                imag_str.parse().ok()?
            };
            Some(Complex64::new(re, im))
        }
        (Some(body), _) => {
            let im: f64 = if body.is_empty() {
                1.0
            } else if body == "-" {
                -1.0
            } else {
                body.parse().ok()?
            };
            Some(Complex64::new(0.0, im))
        }
        (None, _) => {
            let re: f64 = t.parse().ok()?;
            Some(Complex64::new(re, 0.0))
        }
    }
}

pub use crate::cyclo::DEFAULT_TOL as DEFAULT_TOLERANCE;

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn c(n: i64) -> CycNum {
        CycNum::from_integer(n)
    }

    fn exact(rows: Vec<Vec<CycNum>>) -> SqMatrix {
        SqMatrix::exact_from_rows(rows).unwrap()
    }

    fn mul_schoolbook(a: &SqMatrix, b: &SqMatrix) -> SqMatrix {
        let d = a.dim();
        let (ea, eb) = (a.exact_entries().unwrap(), b.exact_entries().unwrap());
        let rows = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let mut acc = CycNum::zero();
                        for k in 0..d {
                            acc = acc.add(&ea[i * d + k].mul(&eb[k * d + j]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        exact(rows)
    }

    #[test]
    fn kron_of_identities() {
        let i2 = SqMatrix::identity(2, Backend::Exact);
        let i3 = SqMatrix::identity(3, Backend::Exact);
        let k = i2.kron(&i3).unwrap();
        assert!(k.approx_eq(&SqMatrix::identity(6, Backend::Exact), 0.0));
    }

    #[test]
    fn kron_diag_with_identity() {
        let d = exact(vec![vec![c(2), c(0)], vec![c(0), c(3)]]);
        let k = d.kron(&SqMatrix::identity(2, Backend::Exact)).unwrap();
        let expect = exact(vec![
            vec![c(2), c(0), c(0), c(0)],
            vec![c(0), c(2), c(0), c(0)],
            vec![c(0), c(0), c(3), c(0)],
            vec![c(0), c(0), c(0), c(3)],
        ]);
        assert!(k.approx_eq(&expect, 0.0));
    }

    #[test]
    fn kron_matches_index_formula() {
        let a = exact(vec![
            vec![CycNum::zeta(8, 1), c(2)],
            vec![c(-1), CycNum::ratio(1, 3)],
        ]);
        let b = exact(vec![
            vec![c(1), CycNum::zeta(3, 1)],
            vec![CycNum::ratio(5, 7), c(0)],
        ]);
        let k = a.kron(&b).unwrap();
        let (ea, eb) = (a.exact_entries().unwrap(), b.exact_entries().unwrap());
        for i1 in 0..2 {
            for j1 in 0..2 {
                for i2 in 0..2 {
                    for j2 in 0..2 {
                        let got = k.get(2 * i1 + i2, 2 * j1 + j2);
                        let want = Scalar::Exact(ea[i1 * 2 + j1].mul(&eb[i2 * 2 + j2]));
                        assert!(got.approx_eq(&want, 0.0));
                    }
                }
            }
        }
    }

    #[test]
    fn kron_mixed_product() {
        let a = exact(vec![vec![c(1), c(2)], vec![c(3), c(4)]]);
        let b = exact(vec![vec![c(0), c(1)], vec![c(1), c(1)]]);
        let x = exact(vec![vec![c(2), c(0)], vec![c(1), c(1)]]);
        let y = exact(vec![vec![c(1), c(1)], vec![c(0), c(2)]]);
        let lhs = a.kron(&b).unwrap().mul(&x.kron(&y).unwrap()).unwrap();
        let rhs = a.mul(&x).unwrap().kron(&b.mul(&y).unwrap()).unwrap();
        assert!(lhs.approx_eq(&rhs, 0.0));
    }

    #[test]
    fn amplify_edges() {
        let r = exact(vec![
            vec![c(1), c(0), c(0), c(0)],
            vec![c(0), c(0), c(1), c(0)],
            vec![c(0), c(1), c(0), c(0)],
            vec![c(0), c(0), c(0), c(1)],
        ]);
        let same = amplify(&r, 1, 2, 2).unwrap();
        assert!(same.approx_eq(&r, 0.0));
        let i4 = SqMatrix::identity(4, Backend::Exact);
        for i in 1..4 {
            let a = amplify(&i4, i, 4, 2).unwrap();
            assert!(a.approx_eq(&SqMatrix::identity(16, Backend::Exact), 0.0));
        }
        assert!(amplify(&r, 0, 3, 2).is_err());
        assert!(amplify(&r, 3, 3, 2).is_err());
        assert!(amplify(&r, 1, 3, 3).is_err());
    }

    #[test]
    fn flip_braiding_reverses_three_slots() {
        // P swaps two 2-dimensional factors; P1 P2 P1 reverses three slots.
        let p = exact(vec![
            vec![c(1), c(0), c(0), c(0)],
            vec![c(0), c(0), c(1), c(0)],
            vec![c(0), c(1), c(0), c(0)],
            vec![c(0), c(0), c(0), c(1)],
        ]);
        let p1 = amplify(&p, 1, 3, 2).unwrap();
        let p2 = amplify(&p, 2, 3, 2).unwrap();
        let w = p1.mul(&p2).unwrap().mul(&p1).unwrap();
        let mut perm = SqMatrix::zero(8, Backend::Exact);
        let MatData::Exact(entries) = &mut perm.data else {
            unreachable!()
        };
        for x0 in 0..2 {
            for x1 in 0..2 {
                for x2 in 0..2 {
                    let from = 4 * x0 + 2 * x1 + x2;
                    let to = 4 * x2 + 2 * x1 + x0;
                    entries[to * 8 + from] = CycNum::one();
                }
            }
        }
        assert!(w.approx_eq(&perm, 0.0));
    }

    #[test]
    fn unitarity_exact_and_approx() {
        // (1/sqrt 2) [[1,0,0,1],[0,1,-1,0],[0,1,1,0],[-1,0,0,1]].
        let h = CycNum::zeta(8, 1)
            .add(&CycNum::zeta(8, 7))
            .scale(&BigRational::new(BigInt::from(1), BigInt::from(2)));
        let e = |n: i64| h.mul(&c(n));
        let r = exact(vec![
            vec![e(1), e(0), e(0), e(1)],
            vec![e(0), e(1), e(-1), e(0)],
            vec![e(0), e(1), e(1), e(0)],
            vec![e(-1), e(0), e(0), e(1)],
        ]);
        assert!(r.is_unitary(0.0));
        assert!(SqMatrix::identity(5, Backend::Exact).is_unitary(0.0));
        let not_unitary = exact(vec![vec![c(1), c(0)], vec![c(0), c(2)]]);
        assert!(!not_unitary.is_unitary(0.0));
        assert!(r.to_approx().is_unitary(1e-12));
    }

    #[test]
    fn annihilator_and_multiplicities() {
        let i4 = SqMatrix::identity(4, Backend::Exact);
        let one = [Scalar::Exact(c(1))];
        assert!(annihilator_check(&i4, &one, 0.0).unwrap());
        assert_eq!(spectrum_multiplicities(&i4, &one, 0.0).unwrap(), vec![4]);

        let d12 = exact(vec![vec![c(1), c(0)], vec![c(0), c(2)]]);
        assert!(!annihilator_check(&d12, &one, 0.0).unwrap());

        let d112 = exact(vec![
            vec![c(1), c(0), c(0)],
            vec![c(0), c(1), c(0)],
            vec![c(0), c(0), c(2)],
        ]);
        let roots = [Scalar::Exact(c(1)), Scalar::Exact(c(2))];
        assert!(annihilator_check(&d112, &roots, 0.0).unwrap());
        assert_eq!(
            spectrum_multiplicities(&d112, &roots, 0.0).unwrap(),
            vec![2, 1]
        );
        let dup = [Scalar::Exact(c(1)), Scalar::Exact(c(1))];
        assert!(matches!(
            spectrum_multiplicities(&d112, &dup, 0.0),
            Err(MatrixError::BadRoots)
        ));
    }

    #[test]
    fn approx_multiplicities_round() {
        let a = SqMatrix::approx_from_rows(vec![
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0)],
        ])
        .unwrap();
        let roots = [
            Scalar::Approx(Complex64::new(1.0, 0.0)),
            Scalar::Approx(Complex64::new(0.0, 1.0)),
        ];
        assert!(annihilator_check(&a, &roots, 1e-9).unwrap());
        assert_eq!(
            spectrum_multiplicities(&a, &roots, 1e-9).unwrap(),
            vec![1, 1]
        );
    }

    #[test]
    fn inverse_round_trip() {
        let a = exact(vec![
            vec![c(2), CycNum::zeta(4, 1)],
            vec![c(0), CycNum::ratio(1, 3)],
        ]);
        let inv = a.inverse().unwrap();
        assert!(a
            .mul(&inv)
            .unwrap()
            .approx_eq(&SqMatrix::identity(2, Backend::Exact), 0.0));
        let singular = exact(vec![vec![c(1), c(2)], vec![c(2), c(4)]]);
        assert!(singular.inverse().is_err());
        assert!(!singular.is_invertible(0.0));
        assert!(a.is_invertible(0.0));
    }

    #[test]
    fn fast_path_matches_schoolbook() {
        let a = exact(vec![
            vec![CycNum::zeta(12, 1), CycNum::ratio(2, 3)],
            vec![
                CycNum::zeta(12, 7).scale(&BigRational::new(BigInt::from(-5), BigInt::from(4))),
                c(3),
            ],
        ]);
        let b = exact(vec![
            vec![CycNum::zeta(8, 3), c(-2)],
            vec![CycNum::ratio(7, 5), CycNum::zeta(8, 1).add(&c(1))],
        ]);
        let fast = a.mul(&b).unwrap();
        let slow = mul_schoolbook(&a, &b);
        assert!(fast.approx_eq(&slow, 0.0));
    }

    #[test]
    fn big_coefficients_fall_back_and_agree() {
        let huge = BigRational::from_integer(BigInt::from(1i64 << 62));
        let a = exact(vec![
            vec![CycNum::zeta(8, 1).scale(&huge), c(1)],
            vec![c(0), CycNum::zeta(8, 2).scale(&huge)],
        ]);
        let fast = a.mul(&a).unwrap();
        let slow = mul_schoolbook(&a, &a);
        assert!(fast.approx_eq(&slow, 0.0));
    }

    #[test]
    fn scalar_multiple_detection() {
        let i = CycNum::zeta(4, 1);
        let m = SqMatrix::identity(3, Backend::Exact)
            .scale(&Scalar::Exact(i.clone()))
            .unwrap();
        let Some(Scalar::Exact(got)) = m.as_scalar_multiple_of_identity(0.0) else {
            panic!("expected scalar matrix");
        };
        assert_eq!(got, i);
        let mixed = exact(vec![vec![c(1), c(0)], vec![c(0), c(2)]]);
        assert!(mixed.as_scalar_multiple_of_identity(0.0).is_none());
    }

    #[test]
    fn json_round_trip_exact() {
        let a = exact(vec![
            vec![
                CycNum::zeta(8, 1).scale(&BigRational::new(BigInt::from(1), BigInt::from(2))),
                c(-1),
            ],
            vec![CycNum::ratio(3, 7), CycNum::zero()],
        ]);
        let s = a.to_json_string();
        let back = SqMatrix::from_json_str(&s).unwrap();
        assert_eq!(back.backend(), Backend::Exact);
        assert!(a.approx_eq(&back, 0.0));
    }

    #[test]
    fn json_round_trip_approx() {
        let a = SqMatrix::approx_from_rows(vec![
            vec![Complex64::new(0.5, -0.25), Complex64::new(0.0, 1.0)],
            vec![Complex64::new(-1.5e-7, 2e-3), Complex64::new(3.0, 0.0)],
        ])
        .unwrap();
        let s = a.to_json_string();
        let back = SqMatrix::from_json_str(&s).unwrap();
        assert_eq!(back.backend(), Backend::Approx);
        assert!(a.approx_eq(&back, 0.0));
    }

    #[test]
    fn json_rejects_malformed_input() {
        assert!(SqMatrix::from_json_str("{").is_err());
        assert!(
            SqMatrix::from_json_str(r#"{"dim": 2, "backend": "exact", "entries": [["1"]]}"#)
                .is_err()
        );
        assert!(
            SqMatrix::from_json_str(r#"{"dim": 1, "backend": "other", "entries": [["1"]]}"#)
                .is_err()
        );
        assert!(SqMatrix::from_json_str(
            r#"{"dim": 1, "backend": "exact", "entries": [["1*q^2"]]}"#
        )
        .is_err());
    }

    #[test]
    fn complex_literal_forms() {
        assert_eq!(parse_complex("1.5+2i"), Some(Complex64::new(1.5, 2.0)));
        assert_eq!(parse_complex("1.5-2i"), Some(Complex64::new(1.5, -2.0)));
        assert_eq!(parse_complex("-3"), Some(Complex64::new(-3.0, 0.0)));
        assert_eq!(parse_complex("2.5i"), Some(Complex64::new(0.0, 2.5)));
        assert_eq!(parse_complex("-i"), Some(Complex64::new(0.0, -1.0)));
        assert_eq!(
            parse_complex("1e-5+2e-7i"),
            Some(Complex64::new(1e-5, 2e-7))
        );
        assert_eq!(parse_complex("chaos"), None);
        let z = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, -0.125);
        assert_eq!(parse_complex(&format_complex(z)), Some(z));
    }

    #[test]
    fn pow_and_trace() {
        let a = exact(vec![vec![c(0), c(1)], vec![c(-1), c(0)]]);
        assert!(a
            .pow(4)
            .unwrap()
            .approx_eq(&SqMatrix::identity(2, Backend::Exact), 0.0));
        let Scalar::Exact(t) = a.pow(2).unwrap().trace() else {
            panic!()
        };
        assert_eq!(t, c(-2));
    }
}
