//! Bundled R-matrices, loadable by name from the CLI as `builtin:<name>`.
//!
//! Each builtin ships as a JSON data file in the crate's `data/` directory;
//! the tests rebuild every matrix entry by entry in code and assert equality
//! with the parsed file, so the fixtures cannot drift from their definitions.

use crate::cyclo::CycNum;
use crate::matrix::{MatrixError, SqMatrix};
use std::str::FromStr;

const DYE4_JSON: &str = include_str!("../data/dye4.json");
const LEVEL2_JSON: &str = include_str!("../data/level2.json");
const LOC6_JSON: &str = include_str!("../data/loc6.json");
const INF9_JSON: &str = include_str!("../data/inf9.json");
const UQSL2_M_JSON: &str = include_str!("../data/uqsl2_m.json");

fn parse(json: &str) -> SqMatrix {
    SqMatrix::from_json_str(json).expect("bundled fixtures parse")
}

/// The 4x4 unitary Yang-Baxter solution that is not of monomial form:
/// (1/sqrt 2) [[1,0,0,1],[0,1,-1,0],[0,1,1,0],[-1,0,0,1]].
pub fn dye4() -> SqMatrix {
    parse(DYE4_JSON)
}

/// The level-2 localization matrix: the same bracket matrix rescaled by
/// -exp(-pi i/4)/sqrt 2, with eigenvalues -1 and i.
pub fn level2() -> SqMatrix {
    parse(LEVEL2_JSON)
}

/// The 9x9 localization of the level-4 Jones representation: (i/sqrt 3)
/// times a matrix of cube roots of unity, with eigenvalues -1 and
/// exp(-pi i/3).
pub fn loc6() -> SqMatrix {
    parse(LOC6_JSON)
}

/// The 9x9 unitary Yang-Baxter solution with entries 2 sqrt 6/5 and 1/5
/// whose projective order exceeds every practical bound.
pub fn inf9() -> SqMatrix {
    parse(INF9_JSON)
}

/// The standard quantum-sl2 R-matrix [[q,0,0,0],[0,0,1,0],[0,q,q-1,0],
/// [0,0,0,q]] at the given q.
pub fn uqsl2_m(q: &CycNum) -> SqMatrix {
    let z = CycNum::zero;
    let o = CycNum::one;
    let qm1 = q.sub(&o());
    SqMatrix::exact_from_rows(vec![
        vec![q.clone(), z(), z(), z()],
        vec![z(), z(), o(), z()],
        vec![z(), q.clone(), qm1, z()],
        vec![z(), z(), z(), q.clone()],
    ])
    .expect("square by construction")
}

/// Default parameter q = zeta_16 = exp(pi i/8), inside the infinite-image
/// range.
pub fn uqsl2_m_default() -> SqMatrix {
    parse(UQSL2_M_JSON)
}

/// Errors from builtin name resolution.
#[derive(Debug, thiserror::Error)]
pub enum BuiltinError {
    #[error("unknown builtin name: {0}")]
    UnknownName(String),
    #[error("bad builtin parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Resolves `builtin:<name>` to a matrix and its local dimension. The
/// quantum-sl2 matrix accepts a parameter: `builtin:uqsl2_m?q=<literal>`.
pub fn resolve(name: &str) -> Result<(SqMatrix, usize), BuiltinError> {
    let body = name
        .strip_prefix("builtin:")
        .ok_or_else(|| BuiltinError::UnknownName(name.to_string()))?;
    match body {
        "dye4" => Ok((dye4(), 2)),
        "level2" => Ok((level2(), 2)),
        "loc6" => Ok((loc6(), 3)),
        "inf9" => Ok((inf9(), 3)),
        "uqsl2_m" => Ok((uqsl2_m_default(), 2)),
        other => match other.strip_prefix("uqsl2_m?q=") {
            Some(literal) => {
                let q = CycNum::from_str(literal)
                    .map_err(|e| BuiltinError::BadParameter(e.to_string()))?;
                Ok((uqsl2_m(&q), 2))
            }
            None => Err(BuiltinError::UnknownName(name.to_string())),
        },
    }
}

/// True when the string names a builtin rather than a file path.
pub fn is_builtin_name(name: &str) -> bool {
    name.starts_with("builtin:")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::Scalar;
    use crate::yang_baxter::{check_ybe, RMatrixSpec};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    fn scaled_bracket(scalar: &CycNum) -> SqMatrix {
        let e = |n: i64| scalar.mul(&CycNum::from_integer(n));
        SqMatrix::exact_from_rows(vec![
            vec![e(1), e(0), e(0), e(1)],
            vec![e(0), e(1), e(-1), e(0)],
            vec![e(0), e(1), e(1), e(0)],
            vec![e(-1), e(0), e(0), e(1)],
        ])
        .unwrap()
    }

    #[test]
    fn dye4_matches_hand_entry() {
        // 1/sqrt 2 = (zeta_8 + zeta_8^7)/2.
        let inv_sqrt2 = CycNum::zeta(8, 1)
            .add(&CycNum::zeta(8, 7))
            .scale(&rat(1, 2));
        assert!(dye4().approx_eq(&scaled_bracket(&inv_sqrt2), 0.0));
    }

    #[test]
    fn level2_matches_hand_entry() {
        // -exp(-pi i/4)/sqrt 2 = (-1 + i)/2.
        let s = CycNum::zeta(4, 1).sub(&CycNum::one()).scale(&rat(1, 2));
        assert!(level2().approx_eq(&scaled_bracket(&s), 0.0));
    }

    #[test]
    fn loc6_matches_hand_entry() {
        // i/sqrt 3 = (zeta_12^2 + zeta_12^4)/3, omega = zeta_3.
        let c = CycNum::zeta(12, 2)
            .add(&CycNum::zeta(12, 4))
            .scale(&rat(1, 3));
        let om = CycNum::zeta(3, 1);
        let w = |k: i64| c.mul(&om.pow(k as u64));
        let z = CycNum::zero;
        let rows = vec![
            vec![w(1), z(), z(), z(), w(0), z(), z(), z(), w(1)],
            vec![z(), w(1), z(), z(), z(), w(1), w(0), z(), z()],
            vec![z(), z(), w(1), w(2), z(), z(), z(), w(2), z()],
            vec![z(), z(), w(2), w(1), z(), z(), z(), w(2), z()],
            vec![w(1), z(), z(), z(), w(1), z(), z(), z(), w(0)],
            vec![z(), w(0), z(), z(), z(), w(1), w(1), z(), z()],
            vec![z(), w(1), z(), z(), z(), w(0), w(1), z(), z()],
            vec![z(), z(), w(2), w(2), z(), z(), z(), w(1), z()],
            vec![w(0), z(), z(), z(), w(1), z(), z(), z(), w(1)],
        ];
        let hand = SqMatrix::exact_from_rows(rows).unwrap();
        assert!(loc6().approx_eq(&hand, 0.0));
    }

    #[test]
    fn inf9_matches_hand_entry() {
        // sqrt 6 = zeta_24 + zeta_24^5 + zeta_24^19 + zeta_24^23.
        let sqrt6 = CycNum::zeta(24, 1)
            .add(&CycNum::zeta(24, 5))
            .add(&CycNum::zeta(24, 19))
            .add(&CycNum::zeta(24, 23));
        assert_eq!(sqrt6.mul(&sqrt6), CycNum::from_integer(6));
        let a = sqrt6.scale(&rat(2, 5));
        let b = CycNum::ratio(1, 5);
        let z = CycNum::zero;
        let o = CycNum::one;
        let rows = vec![
            vec![
                CycNum::from_integer(-1),
                z(),
                z(),
                z(),
                z(),
                z(),
                z(),
                z(),
                z(),
            ],
            vec![z(), z(), z(), o(), z(), z(), z(), z(), z()],
            vec![z(), z(), z(), z(), z(), z(), o(), z(), z()],
            vec![z(), a.clone(), b.clone(), z(), z(), z(), z(), z(), z()],
            vec![z(), z(), z(), z(), o(), z(), z(), z(), z()],
            vec![z(), z(), z(), z(), z(), z(), z(), o(), z()],
            vec![z(), b.neg(), a.clone(), z(), z(), z(), z(), z(), z()],
            vec![z(), z(), z(), z(), z(), o(), z(), z(), z()],
            vec![z(), z(), z(), z(), z(), z(), z(), z(), o()],
        ];
        let hand = SqMatrix::exact_from_rows(rows).unwrap();
        assert!(inf9().approx_eq(&hand, 0.0));
    }

    #[test]
    fn uqsl2_m_default_matches_hand_entry() {
        assert!(uqsl2_m_default().approx_eq(&uqsl2_m(&CycNum::zeta(16, 1)), 0.0));
    }

    #[test]
    fn bundled_solutions_satisfy_ybe() {
        for (m, d) in [(dye4(), 2), (level2(), 2), (loc6(), 3), (inf9(), 3)] {
            let spec = RMatrixSpec::new(m, d, 0.0).unwrap();
            assert!(check_ybe(&spec, 0.0).unwrap());
        }
        let spec = RMatrixSpec::new(uqsl2_m_default(), 2, 0.0).unwrap();
        assert!(check_ybe(&spec, 0.0).unwrap());
    }

    #[test]
    fn unitarity_status_of_builtins() {
        assert!(dye4().is_unitary(0.0));
        assert!(level2().is_unitary(0.0));
        assert!(loc6().is_unitary(0.0));
        assert!(inf9().is_unitary(0.0));
        assert!(!uqsl2_m_default().is_unitary(0.0));
    }

    #[test]
    fn level2_and_loc6_spectra() {
        let lvl = level2();
        let roots = [
            Scalar::Exact(CycNum::from_integer(-1)),
            Scalar::Exact(CycNum::zeta(4, 1)),
        ];
        assert!(crate::matrix::annihilator_check(&lvl, &roots, 0.0).unwrap());
        assert_eq!(
            crate::matrix::spectrum_multiplicities(&lvl, &roots, 0.0).unwrap(),
            vec![2, 2]
        );
        // exp(-pi i/3) = -exp(2 pi i/3) = -zeta_3.
        let q = CycNum::zeta(3, 1).neg();
        let roots = [Scalar::Exact(CycNum::from_integer(-1)), Scalar::Exact(q)];
        assert!(crate::matrix::annihilator_check(&loc6(), &roots, 0.0).unwrap());
        assert_eq!(
            crate::matrix::spectrum_multiplicities(&loc6(), &roots, 0.0).unwrap(),
            vec![6, 3]
        );
    }

    #[test]
    fn resolve_names() {
        assert_eq!(resolve("builtin:dye4").unwrap().1, 2);
        assert_eq!(resolve("builtin:loc6").unwrap().1, 3);
        assert_eq!(resolve("builtin:inf9").unwrap().1, 3);
        let (param, _) = resolve("builtin:uqsl2_m?q=1*z16^1").unwrap();
        assert!(param.approx_eq(&uqsl2_m_default(), 0.0));
        let (other, _) = resolve("builtin:uqsl2_m?q=1*z12^1").unwrap();
        assert!(!other.approx_eq(&uqsl2_m_default(), 0.0));
        assert!(resolve("builtin:nonsense").is_err());
        assert!(resolve("dye4").is_err());
        assert!(resolve("builtin:uqsl2_m?q=zzz").is_err());
        assert!(is_builtin_name("builtin:dye4"));
        assert!(!is_builtin_name("matrix.json"));
    }
}
