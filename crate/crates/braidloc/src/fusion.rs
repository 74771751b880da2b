//! Fusion rings, Bratteli diagrams, and the Perron-Frobenius obstruction to
//! localizing the braid representations attached to an object.
//!
//! A fusion ring is recorded through its non-negative integer fusion matrices
//! (N_X)_{Z,Y} = dim Hom(X (x) Y, Z). Everything here is combinatorial:
//! Frobenius-Perron dimensions via power iteration plus an exact integrality
//! certificate on the characteristic polynomial, digraph periods, path
//! counting in the Bratteli diagram of the tower X^{(x) n}, and the necessary
//! conditions for a braided vector space to reproduce that tower with
//! positive multiplicities.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Convergence tolerance for the Perron-Frobenius power iteration.
pub const PF_TOL: f64 = 1e-12;

/// Window around the nearest integer inside which FPdim^2 is handed to the
/// exact certificate; anything farther away is non-integral outright.
const INTEGER_WINDOW: f64 = 1e-6;

/// Errors produced by fusion-ring construction and analysis.
#[derive(Debug, Error)]
pub enum FusionError {
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("invalid fusion ring: {0}")]
    BadRing(String),
    #[error("no fusion matrix is recorded for `{0}` in this ring")]
    MissingMatrix(String),
    #[error("object `{0}` does not generate a strongly connected fusion diagram")]
    Reducible(String),
    #[error("unsupported catalog entry: {0}")]
    UnsupportedCatalog(String),
    #[error("depth must be at least 1")]
    BadDepth,
    #[error("dimension vector overflow at depth {0}")]
    DepthOverflow(usize),
    #[error("invalid ring JSON: {0}")]
    BadJson(String),
}

/// Square non-negative integer matrix, indexed row-major.
pub type IntMatrix = Vec<Vec<u64>>;

/// A fusion ring: ordered labels, a unit object, and one fusion matrix per
/// label where known. Rings built from partial printed data may omit the
/// matrices of objects that no analysis touches; the unit matrix is always
/// present and equal to the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    unit: usize,
    matrices: Vec<Option<IntMatrix>>,
}

impl FusionRing {
    /// Builds a ring and checks the structural invariants: shapes, the unit
    /// acting as identity, normality of every recorded matrix (N commutes
    /// with its transpose), and X (x) 1 = X.
    pub fn new(
        labels: Vec<String>,
        unit: usize,
        matrices: Vec<Option<IntMatrix>>,
    ) -> Result<Self, FusionError> {
        let rank = labels.len();
        if rank == 0 {
            return Err(FusionError::BadRing("no labels".into()));
        }
        for i in 0..rank {
            for j in i + 1..rank {
                if labels[i] == labels[j] {
                    return Err(FusionError::BadRing(format!(
                        "duplicate label `{}`",
                        labels[i]
                    )));
                }
            }
        }
        if unit >= rank {
            return Err(FusionError::BadRing("unit index out of range".into()));
        }
        if matrices.len() != rank {
            return Err(FusionError::BadRing(
                "need one matrix slot per label".into(),
            ));
        }
        for (x, slot) in matrices.iter().enumerate() {
            let Some(m) = slot else { continue };
            if m.len() != rank || m.iter().any(|row| row.len() != rank) {
                return Err(FusionError::BadRing(format!(
                    "matrix for `{}` is not {rank} x {rank}",
                    labels[x]
                )));
            }
            // X (x) 1 = X: the unit column of N_X is the indicator of X.
            for (z, row) in m.iter().enumerate() {
                let want = u64::from(z == x);
                if row[unit] != want {
                    return Err(FusionError::BadRing(format!(
                        "unit column of `{}` does not reproduce the object",
                        labels[x]
                    )));
                }
            }
            if !commutes_with_transpose(m) {
                return Err(FusionError::BadRing(format!(
                    "matrix for `{}` does not commute with its transpose",
                    labels[x]
                )));
            }
        }
        match &matrices[unit] {
            Some(m) if !is_identity(m) => {
                return Err(FusionError::BadRing(
                    "unit matrix is not the identity".into(),
                ))
            }
            Some(_) => {}
            None => return Err(FusionError::BadRing("unit matrix must be recorded".into())),
        }
        Ok(FusionRing {
            labels,
            unit,
            matrices,
        })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn label_index(&self, label: &str) -> Result<usize, FusionError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| FusionError::UnknownLabel(label.into()))
    }

    pub fn matrix_present(&self, index: usize) -> bool {
        self.matrices.get(index).is_some_and(Option::is_some)
    }

    pub fn fusion_matrix(&self, index: usize) -> Result<&IntMatrix, FusionError> {
        self.matrices
            .get(index)
            .and_then(Option::as_ref)
            .ok_or_else(|| FusionError::MissingMatrix(self.labels[index].clone()))
    }

    /// The same ring with labels permuted; `perm[new] = old`. Fusion data is
    /// conjugated consistently, so every analysis result transports along.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, FusionError> {
        let rank = self.rank();
        let mut seen = vec![false; rank];
        if perm.len() != rank {
            return Err(FusionError::BadRing("permutation length mismatch".into()));
        }
        for &p in perm {
            if p >= rank || seen[p] {
                return Err(FusionError::BadRing("not a permutation".into()));
            }
            seen[p] = true;
        }
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        let unit = perm
            .iter()
            .position(|&p| p == self.unit)
            .expect("permutation covers the unit");
        let matrices = perm
            .iter()
            .map(|&old_x| {
                self.matrices[old_x].as_ref().map(|m| {
                    perm.iter()
                        .map(|&oz| perm.iter().map(|&oy| m[oz][oy]).collect())
                        .collect()
                })
            })
            .collect();
        FusionRing::new(labels, unit, matrices)
    }

    /// Serializes as `{labels, unit, N: {label: matrix}}`, listing only the
    /// recorded matrices.
    pub fn to_json_string(&self) -> String {
        let mut n = BTreeMap::new();
        for (i, slot) in self.matrices.iter().enumerate() {
            if let Some(m) = slot {
                n.insert(self.labels[i].clone(), m.clone());
            }
        }
        let doc = RingJson {
            labels: self.labels.clone(),
            unit: self.labels[self.unit].clone(),
            n,
        };
        serde_json::to_string_pretty(&doc).expect("ring serialization cannot fail")
    }

    pub fn from_json_str(text: &str) -> Result<Self, FusionError> {
        let doc: RingJson =
            serde_json::from_str(text).map_err(|e| FusionError::BadJson(e.to_string()))?;
        let unit = doc
            .labels
            .iter()
            .position(|l| *l == doc.unit)
            .ok_or_else(|| FusionError::BadJson(format!("unit `{}` not in labels", doc.unit)))?;
        let mut matrices = vec![None; doc.labels.len()];
        for (label, m) in doc.n {
            let idx =
                doc.labels.iter().position(|l| *l == label).ok_or_else(|| {
                    FusionError::BadJson(format!("N key `{label}` not in labels"))
                })?;
            matrices[idx] = Some(m);
        }
        FusionRing::new(doc.labels, unit, matrices)
    }
}

#[derive(Serialize, Deserialize)]
struct RingJson {
    labels: Vec<String>,
    unit: String,
    #[serde(rename = "N")]
    n: BTreeMap<String, IntMatrix>,
}

/// Whether the square of a Frobenius-Perron dimension is certifiably an
/// integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExactSq {
    Integer(u64),
    NonInteger,
}

impl ExactSq {
    pub fn is_integer(self) -> bool {
        matches!(self, ExactSq::Integer(_))
    }
}

/// Frobenius-Perron dimension of `label`: the approximation comes from power
/// iteration on the fusion digraph restricted to the labels generated by the
/// object; the squared value is certified exactly by testing the rounded
/// candidate as an integer root of char(N_X^2).
pub fn fpdim(ring: &FusionRing, label: &str) -> Result<(f64, ExactSq), FusionError> {
    let x = ring.label_index(label)?;
    let graph = DigraphData::analyze(ring, x)?;
    let approx = pf_value(&graph.restricted);
    let sq = approx * approx;
    let rounded = sq.round();
    let exact_sq = if (sq - rounded).abs() <= INTEGER_WINDOW && rounded >= 1.0 {
        let c = rounded as u64;
        let squared = mat_mul(&graph.restricted, &graph.restricted);
        if is_integer_eigenvalue(&squared, c) {
            ExactSq::Integer(c)
        } else {
            ExactSq::NonInteger
        }
    } else {
        ExactSq::NonInteger
    };
    Ok((approx, exact_sq))
}

/// Period partition of the fusion digraph of one object.
#[derive(Debug, Clone)]
pub struct PeriodData {
    pub period: usize,
    /// Labels grouped by path-length residue from the unit; entry `i` is the
    /// class reached by tensor powers X^{(x) n} with n = i mod period.
    pub classes: Vec<Vec<String>>,
    /// Diagonal blocks of N_X^period on the classes, in the same order.
    pub blocks: Vec<IntMatrix>,
}

/// Computes the digraph period of N_X (gcd of cycle lengths through the
/// unit), the residue classes, and the primitive blocks of N_X^p.
pub fn period_and_blocks(ring: &FusionRing, label: &str) -> Result<PeriodData, FusionError> {
    let x = ring.label_index(label)?;
    let graph = DigraphData::analyze(ring, x)?;
    let classes = graph
        .classes
        .iter()
        .map(|class| class.iter().map(|&i| ring.labels[i].clone()).collect())
        .collect();
    Ok(PeriodData {
        period: graph.period,
        classes,
        blocks: graph.blocks.clone(),
    })
}

/// Bratteli diagram data for the tower X^{(x) 1}, X^{(x) 2}, ... up to a
/// fixed depth: level label sets, inclusion matrices, path-count dimension
/// vectors, and the eventual cyclic structure of the level sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BratteliData {
    pub base: String,
    /// `levels[n-1]` lists the labels appearing in X^{(x) n}.
    pub levels: Vec<Vec<String>>,
    /// `inclusions[n-1]` is the matrix G_n from level n to n+1, a submatrix
    /// of N_X transposed: rows follow level n, columns level n+1.
    pub inclusions: Vec<IntMatrix>,
    /// `dims[n-1]` counts paths from the top vertex to each level-n label.
    pub dims: Vec<Vec<u64>>,
    /// Eventual period of the level sequence.
    pub period: usize,
    /// First level n with levels(n + period) = levels(n).
    pub cyclic_from: usize,
}

/// Builds the Bratteli diagram of `label` down to `depth` levels by iterated
/// fusion. The identity d_{n+1} = G_n^T d_n holds by construction and is
/// re-asserted from the stored matrices.
pub fn bratteli(ring: &FusionRing, label: &str, depth: usize) -> Result<BratteliData, FusionError> {
    if depth == 0 {
        return Err(FusionError::BadDepth);
    }
    let x = ring.label_index(label)?;
    let n = ring.fusion_matrix(x)?;
    let rank = ring.rank();

    // Level sets are iterated far enough past the requested depth to observe
    // the eventual cycle; subsets of a rank-size set enter it quickly.
    let horizon = depth.max(4 * rank + 8);
    let mut level_sets: Vec<Vec<usize>> = vec![vec![x]];
    while level_sets.len() < horizon {
        let last = level_sets.last().expect("nonempty");
        let mut next = Vec::new();
        for (z, row) in n.iter().enumerate() {
            if last.iter().any(|&y| row[y] > 0) {
                next.push(z);
            }
        }
        level_sets.push(next);
    }
    let (period, cyclic_from) = level_cycle(&level_sets);

    let mut dims: Vec<Vec<u64>> = vec![vec![1]];
    let mut inclusions = Vec::new();
    for step in 0..depth - 1 {
        let cur = &level_sets[step];
        let nxt = &level_sets[step + 1];
        let g: IntMatrix = cur
            .iter()
            .map(|&y| nxt.iter().map(|&z| n[z][y]).collect())
            .collect();
        let d = dims.last().expect("nonempty");
        let mut next_d = vec![0u64; nxt.len()];
        for (yi, &dy) in d.iter().enumerate() {
            for (zi, slot) in next_d.iter_mut().enumerate() {
                let add = g[yi][zi]
                    .checked_mul(dy)
                    .ok_or(FusionError::DepthOverflow(step + 2))?;
                *slot = slot
                    .checked_add(add)
                    .ok_or(FusionError::DepthOverflow(step + 2))?;
            }
        }
        inclusions.push(g);
        dims.push(next_d);
    }

    // Re-assert d_{n+1} = G_n^T d_n from the stored data.
    for i in 0..inclusions.len() {
        let g = &inclusions[i];
        for (zi, &dz) in dims[i + 1].iter().enumerate() {
            let recomputed: u64 = dims[i]
                .iter()
                .enumerate()
                .map(|(yi, &dy)| g[yi][zi] * dy)
                .sum();
            assert_eq!(recomputed, dz, "inclusion and dimension data disagree");
        }
    }

    let levels = level_sets
        .into_iter()
        .take(depth)
        .map(|set| set.into_iter().map(|i| ring.labels[i].clone()).collect())
        .collect();
    Ok(BratteliData {
        base: ring.labels[x].clone(),
        levels,
        inclusions,
        dims,
        period,
        cyclic_from,
    })
}

/// Verdict of the combinatorial localization test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Obstructed,
    NecessaryConditionsPass,
}

/// One primitive block of N_X^p together with its integrality data.
#[derive(Debug, Clone, Serialize)]
pub struct BlockReport {
    pub labels: Vec<String>,
    pub matrix: IntMatrix,
    /// Whether the block's Perron-Frobenius eigenvalue is a certified integer.
    pub lambda_integral: bool,
    /// Perron-Frobenius eigenvector scaled to a primitive positive integer
    /// vector, when the eigenvalue is integral and the eigenspace is rational.
    pub candidate_vector: Option<Vec<u64>>,
}

/// One candidate multiplicity vector a_n in the localization identities
/// m^n = <a_n, d_n> and m a_n = G_n a_{n+1}.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct AVector {
    pub level: usize,
    pub labels: Vec<String>,
    pub entries: Vec<u64>,
}

/// Outcome of the necessary-condition sweep for localizing the braid
/// representations generated by one object.
#[derive(Debug, Clone, Serialize)]
pub struct LocalizationReport {
    pub object: String,
    pub fpdim: f64,
    pub fpdim_sq: ExactSq,
    pub period: usize,
    pub blocks: Vec<BlockReport>,
    /// Local dimension m of a candidate localization, when the conditions
    /// pass and FPdim^2 is an integer.
    pub m: Option<u64>,
    /// Multiplicity vectors satisfying both defining identities up to the
    /// requested depth, when they exist over the positive integers.
    pub a_seq: Option<Vec<AVector>>,
    pub verdict: Verdict,
}

impl LocalizationReport {
    pub fn passes(&self) -> bool {
        self.verdict == Verdict::NecessaryConditionsPass
    }
}

/// Runs the combinatorial obstruction test: FPdim(X)^2 must be an integer
/// and every primitive block of N_X^p must have an integral Perron-Frobenius
/// eigenvalue. When the conditions pass, candidate localization vectors are
/// assembled from the block eigenvectors and verified against the defining
/// identities down to `depth`.
pub fn localization_obstruction(
    ring: &FusionRing,
    label: &str,
    depth: usize,
) -> Result<LocalizationReport, FusionError> {
    if depth == 0 {
        return Err(FusionError::BadDepth);
    }
    let x = ring.label_index(label)?;
    let graph = DigraphData::analyze(ring, x)?;
    let (approx, fpdim_sq) = fpdim(ring, label)?;

    let mut blocks = Vec::new();
    for (class, block) in graph.classes.iter().zip(&graph.blocks) {
        let lambda = pf_value(block);
        let rounded = lambda.round();
        let lambda_integral = (lambda - rounded).abs() <= INTEGER_WINDOW
            && rounded >= 1.0
            && is_integer_eigenvalue(block, rounded as u64);
        let candidate_vector = if lambda_integral {
            pf_integer_vector(block, rounded as u64)
        } else {
            None
        };
        blocks.push(BlockReport {
            labels: class.iter().map(|&i| ring.labels[i].clone()).collect(),
            matrix: block.clone(),
            lambda_integral,
            candidate_vector,
        });
    }

    let obstructed = !fpdim_sq.is_integer() || blocks.iter().any(|b| !b.lambda_integral);
    let verdict = if obstructed {
        Verdict::Obstructed
    } else {
        Verdict::NecessaryConditionsPass
    };

    let (m, a_seq) = match (verdict, fpdim_sq) {
        (Verdict::NecessaryConditionsPass, ExactSq::Integer(m)) => {
            let seq = assemble_a_sequence(ring, x, &graph, &blocks, m, depth)?;
            (Some(m), seq)
        }
        _ => (None, None),
    };

    Ok(LocalizationReport {
        object: ring.labels[x].clone(),
        fpdim: approx,
        fpdim_sq,
        period: graph.period,
        blocks,
        m,
        a_seq,
        verdict,
    })
}

/// Builds the a_n sequence from the block eigenvectors: a_n is the candidate
/// vector of the class containing level n, scaled so that <a_n, d_n> = m^n.
/// Returns None unless every scaling is a positive integer and the recursion
/// m a_n = G_n a_{n+1} holds exactly.
fn assemble_a_sequence(
    ring: &FusionRing,
    x: usize,
    graph: &DigraphData,
    blocks: &[BlockReport],
    m: u64,
    depth: usize,
) -> Result<Option<Vec<AVector>>, FusionError> {
    let bd = bratteli(ring, &ring.labels[x], depth)?;
    let mut seq = Vec::with_capacity(depth);
    for (idx, level) in bd.levels.iter().enumerate() {
        let n = idx + 1;
        let class_index = n % graph.period;
        let block = &blocks[class_index];
        let Some(candidate) = &block.candidate_vector else {
            return Ok(None);
        };
        let mut restricted = Vec::with_capacity(level.len());
        for label in level {
            let Some(pos) = block.labels.iter().position(|l| l == label) else {
                return Ok(None);
            };
            restricted.push(candidate[pos]);
        }
        let dot: u128 = restricted
            .iter()
            .zip(&bd.dims[idx])
            .map(|(&u, &d)| u128::from(u) * u128::from(d))
            .sum();
        let power = u128::from(m)
            .checked_pow(n as u32)
            .ok_or(FusionError::DepthOverflow(n))?;
        if dot == 0 || power % dot != 0 {
            return Ok(None);
        }
        let t = power / dot;
        let mut entries = Vec::with_capacity(restricted.len());
        for &u in &restricted {
            let value = t
                .checked_mul(u128::from(u))
                .ok_or(FusionError::DepthOverflow(n))?;
            let Ok(small) = u64::try_from(value) else {
                return Err(FusionError::DepthOverflow(n));
            };
            entries.push(small);
        }
        seq.push(AVector {
            level: n,
            labels: level.clone(),
            entries,
        });
    }

    // m a_n = G_n a_{n+1} exactly, for every consecutive pair.
    for i in 0..seq.len() - 1 {
        let g = &bd.inclusions[i];
        for (yi, &ay) in seq[i].entries.iter().enumerate() {
            let lhs = u128::from(m) * u128::from(ay);
            let rhs: u128 = seq[i + 1]
                .entries
                .iter()
                .enumerate()
                .map(|(zi, &az)| u128::from(g[yi][zi]) * u128::from(az))
                .sum();
            if lhs != rhs {
                return Ok(None);
            }
        }
    }
    Ok(Some(seq))
}

/// Catalog dispatch by name. `param` carries the level k for `sl2_level` and
/// the N of SO(N) for the orthogonal families.
pub fn catalog(name: &str, param: Option<u32>) -> Result<FusionRing, FusionError> {
    match name {
        "sl2_level" => {
            let k = param.ok_or_else(|| {
                FusionError::UnsupportedCatalog("sl2_level needs a level parameter".into())
            })?;
            sl2_level(k)
        }
        "fibonacci" => no_param(param, "fibonacci").and_then(|()| fibonacci()),
        "ising" => no_param(param, "ising").and_then(|()| ising()),
        "so_level1_odd" => with_param(param, "so_level1_odd").and_then(so_level1_odd),
        "so_level1_even" => with_param(param, "so_level1_even").and_then(so_level1_even),
        "so_level2_odd" => with_param(param, "so_level2_odd").and_then(so_level2_odd),
        "so_level2_even" => Err(FusionError::UnsupportedCatalog(
            "so_level2_even: the full fusion data is not available".into(),
        )),
        other => Err(FusionError::UnsupportedCatalog(other.into())),
    }
}

fn no_param(param: Option<u32>, name: &str) -> Result<(), FusionError> {
    if param.is_some() {
        return Err(FusionError::UnsupportedCatalog(format!(
            "{name} takes no parameter"
        )));
    }
    Ok(())
}

fn with_param(param: Option<u32>, name: &str) -> Result<u32, FusionError> {
    param.ok_or_else(|| FusionError::UnsupportedCatalog(format!("{name} needs a parameter N")))
}

/// The rank k+1 ring of the truncated Clebsch-Gordan rule at level k:
/// objects 0..k, a (x) b = (+) of |a-b|, |a-b|+2, ..., min(a+b, 2k-a-b).
pub fn sl2_level(k: u32) -> Result<FusionRing, FusionError> {
    if k == 0 {
        return Err(FusionError::UnsupportedCatalog(
            "sl2_level needs level k >= 1".into(),
        ));
    }
    let k = k as usize;
    let rank = k + 1;
    let labels = (0..rank).map(|j| sl2_label(j, k)).collect();
    let mut matrices = Vec::with_capacity(rank);
    for a in 0..rank {
        let mut m = vec![vec![0u64; rank]; rank];
        for (z, row) in m.iter_mut().enumerate() {
            for (y, slot) in row.iter_mut().enumerate() {
                let lo = a.abs_diff(y);
                let hi = (a + y).min(2 * k - a - y);
                if (lo..=hi).contains(&z) && (z + a + y) % 2 == 0 {
                    *slot = 1;
                }
            }
        }
        matrices.push(Some(m));
    }
    FusionRing::new(labels, 0, matrices)
}

fn sl2_label(j: usize, k: usize) -> String {
    if j == 0 {
        return "1".into();
    }
    if j == k && k > 1 {
        return "Z".into();
    }
    let (base, primes) = if j % 2 == 1 {
        ("X", (j - 1) / 2)
    } else {
        ("Y", j / 2 - 1)
    };
    format!("{base}{}", "'".repeat(primes))
}

/// Rank 2 ring with Y (x) Y = 1 (+) Y.
pub fn fibonacci() -> Result<FusionRing, FusionError> {
    FusionRing::new(
        vec!["1".into(), "Y".into()],
        0,
        vec![
            Some(vec![vec![1, 0], vec![0, 1]]),
            Some(vec![vec![0, 1], vec![1, 1]]),
        ],
    )
}

/// Rank 3 ring of the level 2 truncation; X (x) X = 1 (+) Z.
pub fn ising() -> Result<FusionRing, FusionError> {
    sl2_level(2)
}

/// SO(N) level 1 for odd N: rank 3 with objects 1, Xeps, X1 of dimensions
/// 1, sqrt(2), 1. The fusion rule is independent of N.
pub fn so_level1_odd(n: u32) -> Result<FusionRing, FusionError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(FusionError::UnsupportedCatalog(
            "so_level1_odd needs odd N >= 3".into(),
        ));
    }
    FusionRing::new(
        vec!["1".into(), "Xeps".into(), "X1".into()],
        0,
        vec![
            Some(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
            Some(vec![vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 0]]),
            Some(vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]),
        ],
    )
}

/// SO(N) level 1 for even N = 2r: four invertible objects. The fusion group
/// is Z4 generated by the spin object when r is odd and Z2 x Z2 when r is
/// even; label order follows 0, lambda_1, lambda_{r-1}, lambda_r.
pub fn so_level1_even(n: u32) -> Result<FusionRing, FusionError> {
    if n < 2 || n % 2 == 1 {
        return Err(FusionError::UnsupportedCatalog(
            "so_level1_even needs even N >= 2".into(),
        ));
    }
    let r = n / 2;
    let labels: Vec<String> = ["1", "X1", "Xeps'", "Xeps"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    // Encode each object as an element of Z4 (r odd) or Z2 x Z2 (r even) and
    // read the fusion matrices off the group law.
    let codes: Vec<u32> = if r % 2 == 1 {
        vec![0, 2, 3, 1]
    } else {
        vec![0b00, 0b11, 0b01, 0b10]
    };
    let combine = |a: u32, b: u32| -> u32 {
        if r % 2 == 1 {
            (a + b) % 4
        } else {
            a ^ b
        }
    };
    let rank = 4;
    let mut matrices = Vec::with_capacity(rank);
    for x in 0..rank {
        let mut m = vec![vec![0u64; rank]; rank];
        for y in 0..rank {
            let product = combine(codes[x], codes[y]);
            let z = codes
                .iter()
                .position(|&c| c == product)
                .expect("group closed");
            m[z][y] = 1;
        }
        matrices.push(Some(m));
    }
    FusionRing::new(labels, 0, matrices)
}

/// SO(N) level 2 for odd N = 2r+1: rank r+4 with objects 1, 2l1, g1..gr,
/// eps, eps'. Only the fusion matrix of the generating spin object eps is
/// determined by the printed rules, and only it is recorded.
pub fn so_level2_odd(n: u32) -> Result<FusionRing, FusionError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(FusionError::UnsupportedCatalog(
            "so_level2_odd needs odd N >= 3".into(),
        ));
    }
    let r = ((n - 1) / 2) as usize;
    let rank = r + 4;
    let mut labels = vec!["1".to_string(), "2l1".to_string()];
    for i in 1..=r {
        labels.push(format!("g{i}"));
    }
    labels.push("eps".into());
    labels.push("eps'".into());
    let unit = 0;
    let two_l1 = 1;
    let gamma = |i: usize| 1 + i; // g1 at index 2
    let eps = rank - 2;
    let eps_prime = rank - 1;

    let mut m = vec![vec![0u64; rank]; rank];
    // eps (x) 1 = eps
    m[eps][unit] = 1;
    // eps (x) 2l1 = eps'
    m[eps_prime][two_l1] = 1;
    // eps (x) g_i = eps (+) eps'
    for i in 1..=r {
        m[eps][gamma(i)] = 1;
        m[eps_prime][gamma(i)] = 1;
    }
    // eps (x) eps = 1 (+) g_1 (+) ... (+) g_r
    m[unit][eps] = 1;
    for i in 1..=r {
        m[gamma(i)][eps] = 1;
    }
    // eps (x) eps' = 2l1 (+) g_1 (+) ... (+) g_r
    m[two_l1][eps_prime] = 1;
    for i in 1..=r {
        m[gamma(i)][eps_prime] = 1;
    }

    let mut matrices = vec![None; rank];
    matrices[unit] = Some(identity_matrix(rank));
    matrices[eps] = Some(m);
    FusionRing::new(labels, unit, matrices)
}

// Digraph analysis shared by fpdim, period_and_blocks, and the obstruction.

struct DigraphData {
    /// N_X restricted to the labels generated by the object.
    restricted: IntMatrix,
    period: usize,
    /// Label indices grouped by path-length residue from the unit.
    classes: Vec<Vec<usize>>,
    blocks: Vec<IntMatrix>,
}

impl DigraphData {
    fn analyze(ring: &FusionRing, x: usize) -> Result<Self, FusionError> {
        let n = ring.fusion_matrix(x)?;
        let rank = ring.rank();
        let edge = |y: usize, z: usize| n[z][y] > 0;

        // Forward closure from the unit: the labels of the subring generated
        // by X.
        let mut in_support = vec![false; rank];
        let mut queue = vec![ring.unit()];
        in_support[ring.unit()] = true;
        let mut levels = vec![usize::MAX; rank];
        levels[ring.unit()] = 0;
        while let Some(y) = queue.pop() {
            for (z, seen) in in_support.iter_mut().enumerate() {
                if edge(y, z) && !*seen {
                    *seen = true;
                    queue.push(z);
                }
            }
        }
        // BFS levels for the period computation.
        let mut bfs = std::collections::VecDeque::from([ring.unit()]);
        while let Some(y) = bfs.pop_front() {
            for z in 0..rank {
                if in_support[z] && edge(y, z) && levels[z] == usize::MAX {
                    levels[z] = levels[y] + 1;
                    bfs.push_back(z);
                }
            }
        }
        // Strong connectivity: everything in the support must reach the unit.
        let mut reaches_unit = vec![false; rank];
        reaches_unit[ring.unit()] = true;
        let mut queue = vec![ring.unit()];
        while let Some(z) = queue.pop() {
            for y in 0..rank {
                if in_support[y] && edge(y, z) && !reaches_unit[y] {
                    reaches_unit[y] = true;
                    queue.push(y);
                }
            }
        }
        let support: Vec<usize> = (0..rank).filter(|&i| in_support[i]).collect();
        if support.iter().any(|&i| !reaches_unit[i]) {
            return Err(FusionError::Reducible(ring.labels[x].clone()));
        }

        // Period: gcd over edges of level(y) + 1 - level(z).
        let mut g: u64 = 0;
        for &y in &support {
            for &z in &support {
                if edge(y, z) {
                    let diff = levels[y] as i64 + 1 - levels[z] as i64;
                    g = g.gcd(&diff.unsigned_abs());
                }
            }
        }
        let period = g.max(1) as usize;

        let classes: Vec<Vec<usize>> = (0..period)
            .map(|i| {
                support
                    .iter()
                    .copied()
                    .filter(|&v| levels[v] % period == i)
                    .collect()
            })
            .collect();

        let restricted: IntMatrix = support
            .iter()
            .map(|&z| support.iter().map(|&y| n[z][y]).collect())
            .collect();
        let power = mat_pow(&restricted, period);
        let pos_of = |v: usize| support.iter().position(|&s| s == v).expect("in support");
        let blocks = classes
            .iter()
            .map(|class| {
                class
                    .iter()
                    .map(|&z| class.iter().map(|&y| power[pos_of(z)][pos_of(y)]).collect())
                    .collect()
            })
            .collect();

        Ok(DigraphData {
            restricted,
            period,
            classes,
            blocks,
        })
    }
}

/// Minimal eventual period and start of the cycle in a sequence of level
/// sets. The sequence is guaranteed eventually periodic because it lives in
/// a finite set.
fn level_cycle(levels: &[Vec<usize>]) -> (usize, usize) {
    let len = levels.len();
    for period in 1..len {
        // Smallest start from which the sequence repeats with this period.
        let mut start = None;
        for k in (0..len - period).rev() {
            if levels[k] == levels[k + period] {
                start = Some(k);
            } else {
                break;
            }
        }
        if let Some(k) = start {
            // Require enough observed repetitions to trust the period.
            if k + 2 * period <= len {
                return (period, k + 1);
            }
        }
    }
    (1, len)
}

/// Perron-Frobenius eigenvalue of an irreducible non-negative integer matrix
/// via power iteration on M + I with Collatz-Wielandt bounds; the iterate
/// stays strictly positive throughout.
fn pf_value(m: &IntMatrix) -> f64 {
    let n = m.len();
    if n == 0 {
        return 0.0;
    }
    let mut v = vec![1.0f64; n];
    for _ in 0..200_000 {
        let mut w = vec![0.0f64; n];
        for (i, wi) in w.iter_mut().enumerate() {
            let mut acc = v[i];
            for (j, &vj) in v.iter().enumerate() {
                acc += m[i][j] as f64 * vj;
            }
            *wi = acc;
        }
        let mut lo = f64::INFINITY;
        let mut hi = 0.0f64;
        for i in 0..n {
            let ratio = w[i] / v[i];
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
        if hi - lo <= PF_TOL * hi.max(1.0) {
            return (lo + hi) / 2.0 - 1.0;
        }
        let max = w.iter().cloned().fold(0.0f64, f64::max);
        for wi in &mut w {
            *wi /= max;
        }
        v = w;
    }
    panic!("power iteration failed to converge");
}

/// Exact certificate that `c` is an eigenvalue of the integer matrix `m`,
/// by a fraction-free determinant of m - cI.
fn is_integer_eigenvalue(m: &IntMatrix, c: u64) -> bool {
    let n = m.len();
    let shifted: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut e = BigInt::from(m[i][j]);
                    if i == j {
                        e -= BigInt::from(c);
                    }
                    e
                })
                .collect()
        })
        .collect();
    bareiss_det(shifted).is_zero()
}

/// Fraction-free Bareiss determinant.
fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        let pivot_row = m[k].clone();
        for row in m.iter_mut().skip(k + 1) {
            let head = row[k].clone();
            for j in k + 1..n {
                let num = &row[j] * &pivot_row[k] - &head * &pivot_row[j];
                row[j] = num / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = pivot_row[k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Primitive positive integer eigenvector of `block` for eigenvalue `c`, if
/// the eigenspace is one-dimensional and strictly positive.
fn pf_integer_vector(block: &IntMatrix, c: u64) -> Option<Vec<u64>> {
    let n = block.len();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut e = BigInt::from(block[i][j]);
                    if i == j {
                        e -= BigInt::from(c);
                    }
                    BigRational::from_integer(e)
                })
                .collect()
        })
        .collect();

    // Reduced row echelon form.
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = m[row][col].clone();
        for e in m[row].iter_mut() {
            *e /= &inv;
        }
        let pivot_row = m[row].clone();
        for (i, r) in m.iter_mut().enumerate() {
            if i != row && !r[col].is_zero() {
                let f = r[col].clone();
                for j in 0..n {
                    let delta = &f * &pivot_row[j];
                    r[j] = &r[j] - &delta;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivot_cols.contains(c)).collect();
    if free.len() != 1 {
        return None;
    }
    let f = free[0];
    let mut v = vec![BigRational::zero(); n];
    v[f] = BigRational::one();
    for (r, &col) in pivot_cols.iter().enumerate() {
        v[col] = -m[r][f].clone();
    }

    // Scale to a primitive integer vector and require strict positivity.
    let mut denom_lcm = BigInt::one();
    for e in &v {
        denom_lcm = denom_lcm.lcm(e.denom());
    }
    let factor = BigRational::from_integer(denom_lcm);
    let scaled: Vec<BigInt> = v.iter().map(|e| (e * &factor).to_integer()).collect();
    let mut g = BigInt::zero();
    for e in &scaled {
        g = g.gcd(e);
    }
    if g.is_zero() {
        return None;
    }
    let reduced: Vec<BigInt> = scaled.iter().map(|e| e / &g).collect();
    let flip = reduced.iter().all(|e| !e.is_positive());
    let positive: Vec<BigInt> = if flip {
        reduced.into_iter().map(|e| -e).collect()
    } else {
        reduced
    };
    if positive.iter().any(|e| !e.is_positive()) {
        return None;
    }
    positive.into_iter().map(|e| e.to_u64()).collect()
}

fn identity_matrix(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect()
}

fn is_identity(m: &IntMatrix) -> bool {
    m.iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, &e)| e == u64::from(i == j)))
}

fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    let mut out = vec![vec![0u64; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn mat_pow(a: &IntMatrix, e: usize) -> IntMatrix {
    let mut out = identity_matrix(a.len());
    for _ in 0..e {
        out = mat_mul(&out, a);
    }
    out
}

fn commutes_with_transpose(m: &IntMatrix) -> bool {
    let n = m.len();
    let t: IntMatrix = (0..n).map(|i| (0..n).map(|j| m[j][i]).collect()).collect();
    mat_mul(m, &t) == mat_mul(&t, m)
}
