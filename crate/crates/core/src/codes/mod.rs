//! Subspace codes: parameter verification, dimension distributions, orthogonal
//! and shortened codes, and incidence counts against fixed subspaces.

mod format;

pub use format::{emit_code, parse_code, parse_code_with_claim, ParseError, ParseErrorKind};

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::gf::FieldSpec;
use crate::grassmann::{Grassmannian, GrassmannError, Subspace};

/// Largest code for which the minimum distance is computed by pairwise scan.
pub const MAX_PAIRWISE: usize = 5_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("codeword {index} lives in {found}, expected {expected}")]
    AmbientMismatch { index: usize, found: String, expected: String },
    #[error("codeword {index} duplicates codeword {first}")]
    Duplicate { index: usize, first: usize },
    #[error("code has {0} codewords; pairwise distance scan is limited to {MAX_PAIRWISE}")]
    TooLarge(usize),
    #[error("shorten: {0}")]
    Shorten(String),
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
}

/// A finite set of subspaces of a common ambient space `GF(q)^v`.
#[derive(Clone)]
pub struct SubspaceCode {
    field: FieldSpec,
    v: usize,
    words: Vec<Subspace>,
    min_distance: OnceLock<Option<(usize, usize, usize)>>,
}

impl SubspaceCode {
    pub fn empty(field: FieldSpec, v: usize) -> Self {
        SubspaceCode { field, v, words: Vec::new(), min_distance: OnceLock::new() }
    }

    /// Builds a code, rejecting duplicates and foreign codewords.
    pub fn new(field: FieldSpec, v: usize, words: Vec<Subspace>) -> Result<Self, CodeError> {
        let mut seen: HashMap<&Subspace, usize> = HashMap::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            if w.field() != field || w.ambient() != v {
                return Err(CodeError::AmbientMismatch {
                    index: i,
                    found: format!("{}^{}", w.field(), w.ambient()),
                    expected: format!("{}^{}", field, v),
                });
            }
            if let Some(&first) = seen.get(w) {
                return Err(CodeError::Duplicate { index: i, first });
            }
            seen.insert(w, i);
        }
        Ok(SubspaceCode { field, v, words, min_distance: OnceLock::new() })
    }

    #[inline]
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    #[inline]
    pub fn words(&self) -> &[Subspace] {
        &self.words
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subspace> {
        self.words.iter()
    }

    pub fn contains(&self, u: &Subspace) -> bool {
        self.words.contains(u)
    }

    pub fn into_words(self) -> Vec<Subspace> {
        self.words
    }

    /// Set of codeword dimensions.
    pub fn dimensions(&self) -> BTreeSet<usize> {
        self.words.iter().map(Subspace::dim).collect()
    }

    /// Union with another code over the same space, rejecting shared codewords.
    pub fn union(&self, other: &SubspaceCode) -> Result<SubspaceCode, CodeError> {
        let words = self.words.iter().chain(other.words.iter()).cloned().collect();
        SubspaceCode::new(self.field, self.v, words)
    }

    /// Minimum pairwise distance, `None` for codes with fewer than two words.
    pub fn min_distance(&self) -> Result<Option<usize>, CodeError> {
        Ok(self.closest_pair()?.map(|(_, _, d)| d))
    }

    /// `(i, j, d)` for the first pair attaining the minimum distance.
    pub fn closest_pair(&self) -> Result<Option<(usize, usize, usize)>, CodeError> {
        if self.words.len() > MAX_PAIRWISE {
            return Err(CodeError::TooLarge(self.words.len()));
        }
        Ok(*self.min_distance.get_or_init(|| {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in 0..self.words.len() {
                for j in i + 1..self.words.len() {
                    let d = self.words[i].distance_unchecked(&self.words[j]);
                    if best.map_or(true, |(_, _, b)| d < b) {
                        best = Some((i, j, d));
                    }
                }
            }
            best
        }))
    }

    pub fn dimension_distribution(&self) -> DimensionDistribution {
        let mut m = BTreeMap::new();
        for w in &self.words {
            *m.entry(w.dim()).or_insert(0) += 1;
        }
        DimensionDistribution(m)
    }

    /// Codes with every codeword replaced by its orthogonal complement.
    pub fn orthogonal(&self) -> SubspaceCode {
        SubspaceCode {
            field: self.field,
            v: self.v,
            words: self.words.iter().map(Subspace::dual).collect(),
            min_distance: self.min_distance.clone(),
        }
    }

    fn check_member(&self, x: &Subspace) -> Result<(), CodeError> {
        if x.field() != self.field || x.ambient() != self.v {
            return Err(CodeError::AmbientMismatch {
                index: 0,
                found: format!("{}^{}", x.field(), x.ambient()),
                expected: format!("{}^{}", self.field, self.v),
            });
        }
        Ok(())
    }

    /// Codewords U with U ≤ X or X ≤ U.
    pub fn incidence_set(&self, x: &Subspace) -> Result<Vec<Subspace>, CodeError> {
        self.check_member(x)?;
        Ok(self.words.iter().filter(|u| u.incident_unchecked(x)).cloned().collect())
    }

    pub fn incidence_count(&self, x: &Subspace) -> Result<usize, CodeError> {
        self.check_member(x)?;
        Ok(self.words.iter().filter(|u| u.incident_unchecked(x)).count())
    }

    /// Maximum and histogram of |I(C, X)| over every l-subspace X.
    pub fn incidence_profile(&self, l: usize) -> Result<IncidenceProfile, CodeError> {
        let g = Grassmannian::new(self.field, self.v, l)?;
        g.check_materializable()?;
        let mut histogram = BTreeMap::new();
        let mut max = 0;
        let mut argmax = None;
        for (i, x) in g.iter().enumerate() {
            let c = self.words.iter().filter(|u| u.incident_unchecked(&x)).count();
            *histogram.entry(c).or_insert(0u64) += 1;
            if c > max || argmax.is_none() {
                max = c;
                argmax = Some(i as u64);
            }
        }
        Ok(IncidenceProfile { dimension: l, max, argmax_index: argmax, histogram })
    }

    /// The shortened code `{U ∩ H : U ∈ I(C,P)} ∪ I(C,H)` re-embedded in
    /// `GF(q)^(v-1)`.
    ///
    /// The embedding maps the canonical basis of `H` to the standard basis,
    /// which amounts to keeping the pivot coordinates of `H`.
    pub fn shorten(&self, p: &Subspace, h: &Subspace) -> Result<SubspaceCode, CodeError> {
        self.check_member(p)?;
        self.check_member(h)?;
        if p.dim() != 1 {
            return Err(CodeError::Shorten(format!("point has dimension {}", p.dim())));
        }
        if h.dim() + 1 != self.v {
            return Err(CodeError::Shorten(format!("hyperplane has dimension {}", h.dim())));
        }
        if p.is_subspace_of(h)? {
            return Err(CodeError::Shorten("point lies in the hyperplane".into()));
        }
        if let Some(d) = self.min_distance()? {
            if d < 2 {
                return Err(CodeError::Shorten(format!("minimum distance {d} < 2")));
            }
        }
        let keep = h.pivots();
        let embed = |s: &Subspace| -> Result<Subspace, CodeError> {
            let rows: Vec<Vec<u8>> =
                s.basis().to_rows().into_iter().map(|r| keep.iter().map(|&c| r[c]).collect()).collect();
            if rows.is_empty() {
                return Ok(Subspace::zero(self.field, self.v - 1)?);
            }
            Ok(Subspace::from_rows(self.field, self.v - 1, &rows)?)
        };
        let mut out = Vec::new();
        for u in &self.words {
            if u.incident_unchecked(p) {
                out.push(embed(&u.meet(h)?)?);
            }
        }
        let through_p = out.len();
        for u in &self.words {
            if u.incident_unchecked(h) {
                out.push(embed(u)?);
            }
        }
        SubspaceCode::new(self.field, self.v - 1, out).map_err(|e| match e {
            CodeError::Duplicate { index, first } => CodeError::Shorten(format!(
                "shortened codewords {first} and {index} coincide (parts of sizes {through_p} and {})",
                index + 1 - through_p
            )),
            other => other,
        })
    }

    /// Sorts codewords by (dimension, enumeration index).
    pub fn sorted(&self) -> Result<SubspaceCode, CodeError> {
        let mut grass: HashMap<usize, Grassmannian> = HashMap::new();
        let mut keyed = Vec::with_capacity(self.words.len());
        for w in &self.words {
            let g = match grass.entry(w.dim()) {
                std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
                std::collections::hash_map::Entry::Vacant(e) => {
                    e.insert(Grassmannian::new(self.field, self.v, w.dim())?)
                }
            };
            keyed.push(((w.dim(), g.index_of(w)?), w.clone()));
        }
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(SubspaceCode {
            field: self.field,
            v: self.v,
            words: keyed.into_iter().map(|(_, w)| w).collect(),
            min_distance: OnceLock::new(),
        })
    }
}

impl PartialEq for SubspaceCode {
    fn eq(&self, other: &Self) -> bool {
        if self.field != other.field || self.v != other.v || self.len() != other.len() {
            return false;
        }
        let mine: std::collections::HashSet<&Subspace> = self.words.iter().collect();
        other.words.iter().all(|w| mine.contains(w))
    }
}

impl Eq for SubspaceCode {}

impl fmt::Debug for SubspaceCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubspaceCode")
            .field("q", &self.field.q())
            .field("v", &self.v)
            .field("words", &self.words)
            .finish()
    }
}

/// Multiplicities of codeword dimensions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DimensionDistribution(pub BTreeMap<usize, usize>);

impl DimensionDistribution {
    pub fn total(&self) -> usize {
        self.0.values().sum()
    }
}

impl fmt::Display for DimensionDistribution {
    /// Renders as `3^17 4^16`, ascending dimensions, zero entries omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.0.iter().filter(|(_, &m)| m > 0).map(|(d, m)| format!("{d}^{m}")).collect();
        f.write_str(&parts.join(" "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceProfile {
    pub dimension: usize,
    pub max: usize,
    /// Enumeration index of the first l-subspace attaining the maximum.
    pub argmax_index: Option<u64>,
    /// |I(C,X)| → number of X.
    pub histogram: BTreeMap<usize, u64>,
}

/// Claimed parameters `(v, N, d; K)_q`; absent fields are not checked.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CodeClaim {
    pub q: Option<u32>,
    pub v: Option<usize>,
    pub n: Option<usize>,
    pub d: Option<usize>,
    pub dims: Option<BTreeSet<usize>>,
}

impl CodeClaim {
    pub fn new(q: u32, v: usize, n: usize, d: usize, dims: impl IntoIterator<Item = usize>) -> Self {
        CodeClaim { q: Some(q), v: Some(v), n: Some(n), d: Some(d), dims: Some(dims.into_iter().collect()) }
    }

    pub fn is_empty(&self) -> bool {
        *self == CodeClaim::default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub field: &'static str,
    pub claimed: String,
    pub actual: String,
}

/// Outcome of [`verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub q: u32,
    pub v: usize,
    pub n: usize,
    pub min_distance: Option<usize>,
    /// Codeword positions of a pair at minimum distance.
    pub closest_pair: Option<(usize, usize)>,
    pub dims: BTreeSet<usize>,
    pub constant_dimension: bool,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn confirmed(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Parameter string such as `(7,17,6;3)_2` or `(7,33,5;{3,4})_2`.
    pub fn params(&self) -> String {
        let d = self.min_distance.map_or_else(|| "-".to_string(), |d| d.to_string());
        let k = if self.dims.len() == 1 {
            self.dims.iter().next().unwrap().to_string()
        } else {
            format!("{{{}}}", self.dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","))
        };
        format!("({},{},{};{})_{}", self.v, self.n, d, k, self.q)
    }
}

/// Computes the exact parameters of `c` and compares them with `claim`.
///
/// A claimed `d` must equal the minimum distance; a claimed dimension set must
/// contain every codeword dimension.
pub fn verify(c: &SubspaceCode, claim: Option<&CodeClaim>) -> Result<VerifyReport, CodeError> {
    let pair = c.closest_pair()?;
    let dims = c.dimensions();
    let mut report = VerifyReport {
        q: c.field.q() as u32,
        v: c.v,
        n: c.len(),
        min_distance: pair.map(|p| p.2),
        closest_pair: pair.map(|p| (p.0, p.1)),
        constant_dimension: dims.len() == 1,
        dims,
        mismatches: Vec::new(),
    };
    if let Some(claim) = claim {
        let mut check = |field: &'static str, ok: bool, claimed: String, actual: String| {
            if !ok {
                report.mismatches.push(Mismatch { field, claimed, actual });
            }
        };
        if let Some(q) = claim.q {
            check("q", q == report.q, q.to_string(), report.q.to_string());
        }
        if let Some(v) = claim.v {
            check("v", v == report.v, v.to_string(), report.v.to_string());
        }
        if let Some(n) = claim.n {
            check("N", n == report.n, n.to_string(), report.n.to_string());
        }
        if let Some(d) = claim.d {
            let actual = report.min_distance.map_or_else(|| "undefined".into(), |x| x.to_string());
            check("d", report.min_distance == Some(d), d.to_string(), actual);
        }
        if let Some(k) = &claim.dims {
            check("K", report.dims.is_subset(k), format!("{k:?}"), format!("{:?}", report.dims));
        }
    }
    Ok(report)
}

pub fn dimension_distribution(c: &SubspaceCode) -> DimensionDistribution {
    c.dimension_distribution()
}

pub fn orthogonal_code(c: &SubspaceCode) -> SubspaceCode {
    c.orthogonal()
}

pub fn incidence_set(c: &SubspaceCode, x: &Subspace) -> Result<Vec<Subspace>, CodeError> {
    c.incidence_set(x)
}

pub fn incidence_profile(c: &SubspaceCode, l: usize) -> Result<IncidenceProfile, CodeError> {
    c.incidence_profile(l)
}

pub fn shorten(c: &SubspaceCode, p: &Subspace, h: &Subspace) -> Result<SubspaceCode, CodeError> {
    c.shorten(p, h)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(rows: &[&str]) -> Subspace {
        let r: Vec<Vec<u8>> = rows.iter().map(|s| s.bytes().map(|b| b - b'0').collect()).collect();
        Subspace::from_rows(FieldSpec::GF2, r[0].len(), &r).unwrap()
    }

    fn lines4() -> Vec<Subspace> {
        Grassmannian::new(FieldSpec::GF2, 4, 2).unwrap().materialize().unwrap()
    }

    #[test]
    fn duplicates_rejected() {
        let w = vec![s(&["1000"]), s(&["0100"]), s(&["1000"])];
        assert_eq!(SubspaceCode::new(FieldSpec::GF2, 4, w).unwrap_err(), CodeError::Duplicate { index: 2, first: 0 });
    }

    #[test]
    fn single_codeword_has_no_distance() {
        let c = SubspaceCode::new(FieldSpec::GF2, 4, vec![s(&["1000"])]).unwrap();
        let r = verify(&c, None).unwrap();
        assert_eq!(r.n, 1);
        assert_eq!(r.min_distance, None);
        assert_eq!(r.params(), "(4,1,-;1)_2");
    }

    #[test]
    fn claim_mismatch_reported() {
        let c = SubspaceCode::new(FieldSpec::GF2, 4, vec![s(&["1100", "0011"]), s(&["1000", "0100"])]).unwrap();
        let r = verify(&c, Some(&CodeClaim::new(2, 4, 2, 4, [2]))).unwrap();
        assert!(!r.confirmed());
        assert_eq!(r.mismatches[0].field, "d");
        assert_eq!(r.min_distance, Some(2));
    }

    #[test]
    fn distribution_rendering() {
        assert_eq!(SubspaceCode::empty(FieldSpec::GF2, 3).dimension_distribution().to_string(), "");
        let c = SubspaceCode::new(FieldSpec::GF2, 3, vec![s(&["100"]), s(&["010", "001"]), s(&["110", "001"])])
            .unwrap();
        assert_eq!(c.dimension_distribution().to_string(), "1^1 2^2");
    }

    #[test]
    fn incidence_sets() {
        let c = SubspaceCode::new(FieldSpec::GF2, 4, lines4()[..10].to_vec()).unwrap();
        let full = Subspace::full(FieldSpec::GF2, 4).unwrap();
        let zero = Subspace::zero(FieldSpec::GF2, 4).unwrap();
        assert_eq!(c.incidence_set(&full).unwrap().len(), 10);
        assert_eq!(c.incidence_set(&zero).unwrap().len(), 10);
        assert_eq!(c.incidence_profile(0).unwrap().max, 10);
        assert_eq!(c.incidence_profile(2).unwrap().max, 1);
        assert_eq!(c.incidence_profile(4).unwrap().max, 10);
    }

    #[test]
    fn orthogonal_is_involution() {
        let c = SubspaceCode::new(FieldSpec::GF2, 4, lines4()[3..12].to_vec()).unwrap();
        assert_eq!(c.orthogonal().orthogonal(), c);
        assert_eq!(c.orthogonal().min_distance().unwrap(), c.min_distance().unwrap());
    }

    #[test]
    fn shorten_preconditions() {
        let c = SubspaceCode::new(FieldSpec::GF2, 4, lines4()[..3].to_vec()).unwrap();
        let p = s(&["0001"]);
        let h = s(&["1000", "0100", "0010"]);
        assert!(c.shorten(&s(&["1000"]), &h).is_err());
        assert!(c.shorten(&s(&["1000", "0100"]), &h).is_err());
        assert!(c.shorten(&p, &s(&["1000", "0100"])).is_err());
        let out = c.shorten(&p, &h).unwrap();
        assert_eq!(out.ambient(), 3);
    }

    #[test]
    fn shorten_empty_when_nothing_incident() {
        // lines through neither e4 nor inside <e1,e2,e3>
        let c = SubspaceCode::new(FieldSpec::GF2, 4, vec![s(&["1001", "0101"])]).unwrap();
        let out = c.shorten(&s(&["0001"]), &s(&["1000", "0100", "0010"])).unwrap();
        assert!(out.is_empty());
    }
}
