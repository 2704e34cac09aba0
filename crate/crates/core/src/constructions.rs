//! Lifted Gabidulin (MRD) codes and the extra codeword that completes them.
//!
//! The only extension field needed is GF(16), realized here as 4-bit binary
//! polynomials modulo `x^4 + x + 1`. Evaluation points are the first `n` of
//! `1, x, x^2, x^3`.

use thiserror::Error;

use crate::codes::{CodeError, SubspaceCode};
use crate::gf::{FieldSpec, GfError, MatRows};
use crate::grassmann::{GrassmannError, Subspace};

/// Extension degree of the Gabidulin codes built here.
pub const EXT_DEGREE: usize = 4;

const MODULUS: u8 = 0b1_0011;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid Gabidulin parameters: {0}")]
    Spec(String),
    #[error("matrix {index} has shape {rows}x{cols}, expected {want_rows}x{want_cols}")]
    Shape { index: usize, rows: usize, cols: usize, want_rows: usize, want_cols: usize },
    #[error("no valid extra codeword: {0}")]
    NoExtraCodeword(String),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Multiplication in GF(16) = GF(2)[x]/(x^4 + x + 1).
pub fn gf16_mul(a: u8, b: u8) -> u8 {
    let (mut a, mut b, mut acc) = (a & 0xF, b & 0xF, 0u8);
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a & 0x10 != 0 {
            a ^= MODULUS;
        }
    }
    acc
}

/// `a^(2^i)`, the i-th Frobenius power.
fn frobenius(a: u8, i: usize) -> u8 {
    (0..i).fold(a, |x, _| gf16_mul(x, x))
}

/// A Gabidulin code over GF(16) with `n` evaluation points and message
/// dimension `k'`; its minimum rank distance is `n − k' + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GabidulinSpec {
    n: usize,
    message_dim: usize,
}

impl GabidulinSpec {
    pub fn new(n: usize, message_dim: usize) -> Result<Self, ConstructionError> {
        if !(1 <= message_dim && message_dim <= n && n <= EXT_DEGREE) {
            return Err(ConstructionError::Spec(format!(
                "need 1 <= k' <= n <= {EXT_DEGREE}, got n = {n}, k' = {message_dim}"
            )));
        }
        Ok(GabidulinSpec { n, message_dim })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn message_dim(&self) -> usize {
        self.message_dim
    }

    pub fn rank_distance(&self) -> usize {
        self.n - self.message_dim + 1
    }

    /// Number of codewords, `16^k'`.
    pub fn size(&self) -> usize {
        1 << (4 * self.message_dim)
    }
}

/// Every codeword of the Gabidulin code as an `n × 4` binary matrix.
///
/// Codeword `t` evaluates `f(z) = Σ f_i z^(2^i)` where the coefficients `f_i`
/// are the base-16 digits of `t`, `f_0` most significant. Row `j` holds the
/// coordinates of `f(x^j)` in the basis `1, x, x^2, x^3`.
pub fn mrd_matrices(spec: &GabidulinSpec) -> Vec<MatRows> {
    let k = spec.message_dim;
    (0..spec.size())
        .map(|t| {
            let coeffs: Vec<u8> = (0..k).map(|i| ((t >> (4 * (k - 1 - i))) & 0xF) as u8).collect();
            let rows: Vec<u64> = (0..spec.n)
                .map(|j| {
                    let g = 1u8 << j;
                    coeffs.iter().enumerate().fold(0u8, |acc, (i, &c)| acc ^ gf16_mul(c, frobenius(g, i))) as u64
                })
                .collect();
            MatRows::from_packed(EXT_DEGREE, rows).expect("4-bit rows")
        })
        .collect()
}

/// Rank of `A − B` for two binary matrices of equal shape.
pub fn rank_distance(a: &MatRows, b: &MatRows) -> Result<usize, ConstructionError> {
    match (a.packed(), b.packed()) {
        (Some(x), Some(y)) if a.rows() == b.rows() && a.cols() == b.cols() => {
            Ok(crate::gf::packed_rank(x.iter().zip(y).map(|(p, q)| p ^ q)))
        }
        _ => Err(ConstructionError::Shape {
            index: 0,
            rows: b.rows(),
            cols: b.cols(),
            want_rows: a.rows(),
            want_cols: a.cols(),
        }),
    }
}

/// Lifts each `n × (v−n)` binary matrix `A` to the row space of `[I_n | A]`.
pub fn lift(matrices: &[MatRows], v: usize) -> Result<SubspaceCode, ConstructionError> {
    let mut words = Vec::with_capacity(matrices.len());
    let n = matrices.first().map_or(0, MatRows::rows);
    for (index, m) in matrices.iter().enumerate() {
        let Some(rows) = m.packed() else {
            return Err(ConstructionError::Spec("lifting needs binary matrices".into()));
        };
        if m.rows() != n || n + m.cols() != v {
            return Err(ConstructionError::Shape {
                index,
                rows: m.rows(),
                cols: m.cols(),
                want_rows: n,
                want_cols: v.saturating_sub(n),
            });
        }
        let lifted: Vec<u64> = rows.iter().enumerate().map(|(i, &r)| (1u64 << i) | (r << n)).collect();
        words.push(Subspace::from_packed(v, &lifted)?);
    }
    Ok(SubspaceCode::new(FieldSpec::GF2, v, words)?)
}

/// Appends `⟨e_(v−n+1), …, e_v⟩`, which meets every lifted codeword trivially.
pub fn plus_one(c: &SubspaceCode) -> Result<SubspaceCode, ConstructionError> {
    let dims = c.dimensions();
    if dims.len() != 1 {
        return Err(ConstructionError::NoExtraCodeword("code is not constant-dimension".into()));
    }
    let n = *dims.iter().next().unwrap();
    let v = c.ambient();
    if v < 2 * n {
        return Err(ConstructionError::NoExtraCodeword(format!("v − n = {} < n = {n}", v - n)));
    }
    let lifted_pivots: Vec<usize> = (0..n).collect();
    if let Some(w) = c.iter().find(|w| w.pivots() != lifted_pivots) {
        return Err(ConstructionError::NoExtraCodeword(format!("codeword {w} is not of the form [I | A]")));
    }
    let coords: Vec<usize> = (v - n..v).collect();
    let extra = Subspace::coordinate(c.field(), v, &coords)?;
    if let Some(w) = c.iter().find(|w| w.intersect_dim_unchecked(&extra) != 0) {
        return Err(ConstructionError::NoExtraCodeword(format!("{extra} meets codeword {w}")));
    }
    let mut words = c.words().to_vec();
    words.push(extra);
    Ok(SubspaceCode::new(c.field(), v, words)?)
}

/// The lifted Gabidulin code of `k`-subspaces in `GF(2)^v` with minimum subspace
/// distance `d`, for `v − k = 4`.
pub fn lifted_mrd(v: usize, k: usize, d: usize) -> Result<SubspaceCode, ConstructionError> {
    if v != k + EXT_DEGREE {
        return Err(ConstructionError::Spec(format!("need v − k = {EXT_DEGREE}, got v = {v}, k = {k}")));
    }
    if d % 2 != 0 || d < 2 || d / 2 > k {
        return Err(ConstructionError::Spec(format!("distance {d} must be even with 2 <= d <= 2k")));
    }
    let spec = GabidulinSpec::new(k, k + 1 - d / 2)?;
    lift(&mrd_matrices(&spec), v)
}

pub fn lifted_mrd_plus_one(v: usize, k: usize, d: usize) -> Result<SubspaceCode, ConstructionError> {
    plus_one(&lifted_mrd(v, k, d)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf16_is_a_field() {
        for a in 1..16u8 {
            assert_eq!((1..16u8).filter(|&b| gf16_mul(a, b) == 1).count(), 1);
            assert_eq!(frobenius(a, 4), a);
        }
        // x^4 = x + 1
        assert_eq!(gf16_mul(0b1000, 0b0010), 0b0011);
    }

    #[test]
    fn small_gabidulin_full_rank() {
        let spec = GabidulinSpec::new(3, 1).unwrap();
        let ms = mrd_matrices(&spec);
        assert_eq!(ms.len(), 16);
        assert!(ms[0].packed().unwrap().iter().all(|&r| r == 0));
        for m in &ms[1..] {
            assert_eq!(crate::gf::rank(m), 3);
        }
    }

    #[test]
    fn spec_limits() {
        assert!(GabidulinSpec::new(5, 1).is_err());
        assert!(GabidulinSpec::new(3, 0).is_err());
        assert!(GabidulinSpec::new(3, 4).is_err());
        assert_eq!(GabidulinSpec::new(4, 2).unwrap().rank_distance(), 3);
    }

    #[test]
    fn lift_zero_matrix() {
        let zero = MatRows::from_packed(4, vec![0, 0, 0]).unwrap();
        let c = lift(&[zero], 7).unwrap();
        assert_eq!(c.words()[0], Subspace::coordinate(FieldSpec::GF2, 7, &[0, 1, 2]).unwrap());
        let bad = MatRows::from_packed(3, vec![0, 0, 0]).unwrap();
        assert!(matches!(lift(&[bad], 7), Err(ConstructionError::Shape { .. })));
    }

    #[test]
    fn plus_one_rejects_non_lifted() {
        let c = SubspaceCode::new(FieldSpec::GF2, 4, vec![Subspace::coordinate(FieldSpec::GF2, 4, &[1, 2]).unwrap()])
            .unwrap();
        assert!(plus_one(&c).is_err());
    }
}
