//! Braid group representations: building them from R-matrices, evaluating
//! braid words, and probing whether the projective image is finite.
//!
//! The probe works modulo scalar matrices. Each group element is
//! canonicalized by dividing out its first nonzero entry in row-major order,
//! serialized to stable bytes, and explored breadth-first until the closure
//! stabilizes or the element budget is exhausted. A finite result is
//! certified by construction: the search ends only when every product of a
//! known element with a generator lands back in the closure.

use crate::cyclo::{CycNum, Scalar};
use crate::matrix::{amplify, MatrixError, SqMatrix};
use crate::yang_baxter::{check_ybe, RMatrixSpec, YangBaxterError};
use sha2::{Digest, Sha256};
use std::collections::{HashSet, VecDeque};

/// Errors from braid word handling, representation building, and probing.
#[derive(Debug, thiserror::Error)]
pub enum BraidRepError {
    #[error("a braid word needs at least 2 strands")]
    TooFewStrands,
    #[error("letter {letter} out of range for {n} strands")]
    LetterOutOfRange { letter: i64, n: usize },
    #[error("unreadable braid letter: {0}")]
    BadLetter(String),
    #[error("expected {expected} generators, got {got}")]
    WrongGeneratorCount { expected: usize, got: usize },
    #[error("generators must share one dimension and backend")]
    MixedGenerators,
    #[error("generator {0} is not invertible")]
    GeneratorNotInvertible(usize),
    #[error("R-matrix does not satisfy the Yang-Baxter equation")]
    YbeFails,
    #[error("word on {word} strands evaluated in a {rep}-strand representation")]
    StrandMismatch { word: usize, rep: usize },
    #[error("image probing requires the exact backend")]
    ApproxBackendUnsupported,
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    YangBaxter(#[from] YangBaxterError),
}

/// A word in the braid group B_n: signed letters, letter i standing for
/// sigma_i and -i for its inverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<BraidWord, BraidRepError> {
        if strands < 2 {
            return Err(BraidRepError::TooFewStrands);
        }
        for &l in &letters {
            let idx = l.unsigned_abs() as usize;
            if idx == 0 || idx > strands - 1 {
                return Err(BraidRepError::LetterOutOfRange {
                    letter: l as i64,
                    n: strands,
                });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parses whitespace-separated signed letters, e.g. "1 2 -1".
    pub fn parse(strands: usize, s: &str) -> Result<BraidWord, BraidRepError> {
        let normalized = s.replace('\u{2212}', "-");
        let letters = normalized
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i32>()
                    .map_err(|_| BraidRepError::BadLetter(tok.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        BraidWord::new(strands, letters)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Concatenation within the same braid group.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidRepError> {
        if self.strands != other.strands {
            return Err(BraidRepError::StrandMismatch {
                word: other.strands,
                rep: self.strands,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord::new(self.strands, letters)
    }
}

/// Explicit generator images for a braid group representation.
#[derive(Clone)]
pub struct RepSpec {
    n: usize,
    generators: Vec<SqMatrix>,
}

impl RepSpec {
    /// Wraps n-1 invertible generator images of one shared dimension.
    pub fn new(n: usize, generators: Vec<SqMatrix>, tol: f64) -> Result<RepSpec, BraidRepError> {
        if n < 2 {
            return Err(BraidRepError::TooFewStrands);
        }
        if generators.len() != n - 1 {
            return Err(BraidRepError::WrongGeneratorCount {
                expected: n - 1,
                got: generators.len(),
            });
        }
        let dim = generators[0].dim();
        let backend = generators[0].backend();
        if generators
            .iter()
            .any(|g| g.dim() != dim || g.backend() != backend)
        {
            return Err(BraidRepError::MixedGenerators);
        }
        for (i, g) in generators.iter().enumerate() {
            if !g.is_invertible(tol) {
                return Err(BraidRepError::GeneratorNotInvertible(i + 1));
            }
        }
        Ok(RepSpec { n, generators })
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[SqMatrix] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators[0].dim()
    }
}

/// Builds the representation sigma_i -> amplify(R, i, n, d) after verifying
/// the Yang-Baxter equation.
pub fn rep_from_r(r: &RMatrixSpec, n: usize, tol: f64) -> Result<RepSpec, BraidRepError> {
    if !check_ybe(r, tol)? {
        return Err(BraidRepError::YbeFails);
    }
    rep_from_r_unchecked(r, n, tol)
}

/// Same construction without the YBE gate, for negative testing.
pub fn rep_from_r_unchecked(r: &RMatrixSpec, n: usize, tol: f64) -> Result<RepSpec, BraidRepError> {
    if n < 2 {
        return Err(BraidRepError::TooFewStrands);
    }
    let d = r.local_dim();
    let generators = (1..n)
        .map(|i| amplify(r.matrix(), i, n, d))
        .collect::<Result<Vec<_>, _>>()?;
    RepSpec::new(n, generators, tol)
}

/// Ordered product of generator images over the word's letters, inverses for
/// negative letters.
pub fn eval(rep: &RepSpec, w: &BraidWord) -> Result<SqMatrix, BraidRepError> {
    if w.strands() != rep.n {
        return Err(BraidRepError::StrandMismatch {
            word: w.strands(),
            rep: rep.n,
        });
    }
    let mut inverses: Vec<Option<SqMatrix>> = vec![None; rep.generators.len()];
    let mut acc = SqMatrix::identity(rep.dim(), rep.generators[0].backend());
    for &l in w.letters() {
        let idx = l.unsigned_abs() as usize - 1;
        let factor = if l > 0 {
            &rep.generators[idx]
        } else {
            if inverses[idx].is_none() {
                inverses[idx] = Some(rep.generators[idx].inverse()?);
            }
            inverses[idx].as_ref().expect("just hydrated")
        };
        acc = acc.mul(factor)?;
    }
    Ok(acc)
}

/// Whether the generator images satisfy both braid relation families:
/// adjacent generators braid and distant generators commute.
pub fn check_braid_relations(rep: &RepSpec, tol: f64) -> Result<bool, BraidRepError> {
    let gens = &rep.generators;
    for i in 0..gens.len().saturating_sub(1) {
        let lhs = gens[i].mul(&gens[i + 1])?.mul(&gens[i])?;
        let rhs = gens[i + 1].mul(&gens[i])?.mul(&gens[i + 1])?;
        if !lhs.approx_eq(&rhs, tol) {
            return Ok(false);
        }
    }
    for i in 0..gens.len() {
        for j in i + 2..gens.len() {
            let ij = gens[i].mul(&gens[j])?;
            let ji = gens[j].mul(&gens[i])?;
            if !ij.approx_eq(&ji, tol) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Status of a bounded image probe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeStatus {
    Finite,
    ExceedsBound,
}

/// Outcome of [`probe_image`]: when finite, `order` is the exact order of the
/// image modulo scalars and the closure has been verified to be
/// multiplication-stable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProbeResult {
    pub status: ProbeStatus,
    pub order: Option<u64>,
    pub elements_explored: u64,
}

/// Divides by the first nonzero entry in row-major order, so two matrices
/// agree exactly iff they are scalar multiples of each other.
fn projective_canonical(m: &SqMatrix) -> Result<SqMatrix, BraidRepError> {
    let entries = m
        .exact_entries()
        .ok_or(BraidRepError::ApproxBackendUnsupported)?;
    let lead = entries
        .iter()
        .find(|e| !e.is_zero())
        .expect("group elements are nonzero");
    let inv = lead.inv().expect("nonzero scalar");
    Ok(m.scale(&Scalar::Exact(inv))?)
}

fn matrix_to_bytes(m: &SqMatrix) -> Vec<u8> {
    let entries = m.exact_entries().expect("exact backend checked upstream");
    let mut out = Vec::new();
    for e in entries {
        e.canonical_bytes(&mut out);
    }
    out
}

fn matrix_from_bytes(dim: usize, bytes: &[u8]) -> SqMatrix {
    let mut cursor = bytes;
    let rows: Vec<Vec<CycNum>> = (0..dim)
        .map(|_| {
            (0..dim)
                .map(|_| CycNum::from_canonical_bytes(&mut cursor).expect("round-trip bytes"))
                .collect()
        })
        .collect();
    SqMatrix::exact_from_rows(rows).expect("square by construction")
}

/// Breadth-first closure of the projective image of the generators. Exact
/// backend only: canonical forms are hashed literally.
pub fn probe_image(rep: &RepSpec, bound: u64) -> Result<ProbeResult, BraidRepError> {
    for g in &rep.generators {
        if g.exact_entries().is_none() {
            return Err(BraidRepError::ApproxBackendUnsupported);
        }
    }
    let dim = rep.dim();
    let gens: Vec<SqMatrix> = rep
        .generators
        .iter()
        .map(projective_canonical)
        .collect::<Result<_, _>>()?;

    let digest = |bytes: &[u8]| -> [u8; 32] { Sha256::digest(bytes).into() };
    let mut seen: HashSet<[u8; 32]> = HashSet::new();
    let mut queue: VecDeque<Vec<u8>> = VecDeque::new();

    let identity_bytes = matrix_to_bytes(&SqMatrix::identity(dim, crate::matrix::Backend::Exact));
    seen.insert(digest(&identity_bytes));
    queue.push_back(identity_bytes);

    while let Some(bytes) = queue.pop_front() {
        let m = matrix_from_bytes(dim, &bytes);
        for g in &gens {
            let next = projective_canonical(&m.mul(g)?)?;
            let nb = matrix_to_bytes(&next);
            if seen.insert(digest(&nb)) {
                if seen.len() as u64 > bound {
                    return Ok(ProbeResult {
                        status: ProbeStatus::ExceedsBound,
                        order: None,
                        elements_explored: seen.len() as u64,
                    });
                }
                queue.push_back(nb);
            }
        }
    }
    Ok(ProbeResult {
        status: ProbeStatus::Finite,
        order: Some(seen.len() as u64),
        elements_explored: seen.len() as u64,
    })
}
