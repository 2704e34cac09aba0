//! Subspaces of `GF(q)^v` in canonical form, Grassmannian enumeration and
//! Gaussian binomial coefficients.
//!
//! A [`Subspace`] always holds its basis in zero-row-free reduced row echelon
//! form, so equality of subspaces is equality of bases.
//!
//! # Enumeration order
//!
//! The k-subspaces of `GF(q)^v` are listed pivot pattern by pivot pattern,
//! with pivot column sets in lexicographic order (`{0,1}`, `{0,2}`, ...,
//! `{v-2,v-1}` for `k = 2`). Inside a pattern the free entries of the RREF are
//! read row by row, left to right, as the digits of a base-q number with the
//! first digit most significant, and listed in increasing order. The position of
//! a subspace in this list is its *index*; model files name variables after it.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::gf::{self, packed_rank, FieldSpec, GfError, MatRows};

/// Default largest ambient dimension accepted by enumeration.
pub const MAX_AMBIENT: usize = 14;

/// Largest Grassmannian that [`Grassmannian::materialize`] will hold in memory.
pub const MATERIALIZE_CAP: u64 = 250_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrassmannError {
    #[error("subspace dimension {k} exceeds ambient dimension {v}")]
    DimensionTooLarge { k: usize, v: usize },
    #[error("ambient dimension {v} exceeds the enumeration cap {cap}")]
    AmbientCap { v: usize, cap: usize },
    #[error("Grassmannian has {count} elements, more than the materialization cap {cap}")]
    MaterializeCap { count: BigUint, cap: u64 },
    #[error("Grassmannian too large to index with 64-bit integers")]
    IndexOverflow,
    #[error("index {index} out of range for a Grassmannian of size {size}")]
    IndexOutOfRange { index: u64, size: u64 },
    #[error("ambient mismatch: {left} vs {right}")]
    AmbientMismatch { left: String, right: String },
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Number of k-dimensional subspaces of `GF(q)^v`.
pub fn gaussian_binomial(v: u32, k: u32, q: u32) -> Result<BigUint, GrassmannError> {
    if k > v {
        return Err(GrassmannError::DimensionTooLarge { k: k as usize, v: v as usize });
    }
    let q = BigUint::from(q);
    let one = BigUint::one();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 1..=k {
        num *= q.pow(v - k + i) - &one;
        den *= q.pow(i) - &one;
    }
    Ok(num / den)
}

/// A subspace of `GF(q)^v` stored by its canonical basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: MatRows,
}

impl Subspace {
    /// Row space of `m`, canonicalized.
    pub fn from_matrix(m: &MatRows) -> Self {
        Subspace { basis: gf::rref(m).matrix }
    }

    pub fn from_rows<R: AsRef<[u8]>>(field: FieldSpec, v: usize, rows: &[R]) -> Result<Self, GrassmannError> {
        Ok(Self::from_matrix(&MatRows::from_rows(field, v, rows)?))
    }

    /// Span of packed GF(2) rows.
    pub fn from_packed(v: usize, rows: &[u64]) -> Result<Self, GrassmannError> {
        let (rows, _) = gf::rref_packed(rows, v);
        Ok(Subspace { basis: MatRows::from_packed(v, rows)? })
    }

    /// Wraps rows already known to be in canonical RREF.
    pub(crate) fn from_canonical(basis: MatRows) -> Self {
        debug_assert_eq!(gf::rref(&basis).matrix, basis);
        Subspace { basis }
    }

    pub fn zero(field: FieldSpec, v: usize) -> Result<Self, GrassmannError> {
        Ok(Subspace { basis: MatRows::empty(field, v)? })
    }

    /// Span of the standard basis vectors at the given 0-based coordinates.
    pub fn coordinate(field: FieldSpec, v: usize, coords: &[usize]) -> Result<Self, GrassmannError> {
        let rows: Vec<Vec<u8>> = coords
            .iter()
            .map(|&c| {
                let mut r = vec![0u8; v];
                if c < v {
                    r[c] = 1;
                }
                r
            })
            .collect();
        if let Some(&c) = coords.iter().find(|&&c| c >= v) {
            return Err(GrassmannError::DimensionTooLarge { k: c + 1, v });
        }
        Self::from_rows(field, v, &rows)
    }

    pub fn full(field: FieldSpec, v: usize) -> Result<Self, GrassmannError> {
        Self::coordinate(field, v, &(0..v).collect::<Vec<_>>())
    }

    #[inline]
    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    #[inline]
    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    #[inline]
    pub fn basis(&self) -> &MatRows {
        &self.basis
    }

    #[inline]
    pub fn packed(&self) -> Option<&[u64]> {
        self.basis.packed()
    }

    /// Pivot columns of the canonical basis.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|r| (0..self.ambient()).find(|&c| self.basis.get(r, c) != 0).expect("RREF rows are non-zero"))
            .collect()
    }

    fn check_same_space(&self, other: &Subspace) -> Result<(), GrassmannError> {
        if self.field() != other.field() || self.ambient() != other.ambient() {
            return Err(GrassmannError::AmbientMismatch {
                left: format!("{}^{}", self.field(), self.ambient()),
                right: format!("{}^{}", other.field(), other.ambient()),
            });
        }
        Ok(())
    }

    /// dim(U + W), assuming a common ambient space.
    #[inline]
    pub(crate) fn join_dim_unchecked(&self, other: &Subspace) -> usize {
        match (self.packed(), other.packed()) {
            (Some(a), Some(b)) => packed_rank(a.iter().chain(b).copied()),
            _ => gf::stack_rank(&self.basis, &other.basis).expect("same ambient"),
        }
    }

    pub fn join_dim(&self, other: &Subspace) -> Result<usize, GrassmannError> {
        self.check_same_space(other)?;
        Ok(self.join_dim_unchecked(other))
    }

    /// The subspace U + W.
    pub fn join(&self, other: &Subspace) -> Result<Subspace, GrassmannError> {
        self.check_same_space(other)?;
        Ok(Subspace::from_matrix(&self.basis.vstack(&other.basis)?))
    }

    /// dim(U ∩ W).
    pub fn intersect_dim(&self, other: &Subspace) -> Result<usize, GrassmannError> {
        Ok(self.dim() + other.dim() - self.join_dim(other)?)
    }

    #[inline]
    pub(crate) fn intersect_dim_unchecked(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.join_dim_unchecked(other)
    }

    /// The subspace U ∩ W, computed as the complement of U⊥ + W⊥.
    pub fn meet(&self, other: &Subspace) -> Result<Subspace, GrassmannError> {
        self.check_same_space(other)?;
        Ok(self.dual().join(&other.dual())?.dual())
    }

    /// Subspace distance dim(U) + dim(W) − 2 dim(U ∩ W).
    pub fn distance(&self, other: &Subspace) -> Result<usize, GrassmannError> {
        self.check_same_space(other)?;
        Ok(self.distance_unchecked(other))
    }

    #[inline]
    pub(crate) fn distance_unchecked(&self, other: &Subspace) -> usize {
        2 * self.join_dim_unchecked(other) - self.dim() - other.dim()
    }

    /// Orthogonal complement under the standard dot product.
    pub fn dual(&self) -> Subspace {
        Subspace { basis: gf::nullspace(&self.basis).matrix }
    }

    /// U ≤ W.
    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, GrassmannError> {
        self.check_same_space(other)?;
        Ok(self.dim() <= other.dim() && self.join_dim_unchecked(other) == other.dim())
    }

    /// U ≤ X or X ≤ U.
    pub fn incident(&self, other: &Subspace) -> Result<bool, GrassmannError> {
        self.check_same_space(other)?;
        Ok(self.incident_unchecked(other))
    }

    #[inline]
    pub(crate) fn incident_unchecked(&self, other: &Subspace) -> bool {
        self.join_dim_unchecked(other) == self.dim().max(other.dim())
    }

    /// Whether the vector lies in this subspace.
    pub fn contains_vector(&self, x: &[u8]) -> Result<bool, GrassmannError> {
        Ok(gf::in_row_space(&self.basis, x)?)
    }

    /// Canonical row strings, comma separated, coordinate 1 leftmost. The zero
    /// subspace renders as a single all-zero row.
    pub fn to_row_string(&self) -> String {
        if self.dim() == 0 {
            return "0".repeat(self.ambient());
        }
        (0..self.dim()).map(|r| self.basis.row_string(r)).collect::<Vec<_>>().join(",")
    }

    /// All a-dimensional subspaces of this subspace.
    pub fn subspaces(&self, a: usize) -> Result<Vec<Subspace>, GrassmannError> {
        let k = self.dim();
        if a > k {
            return Ok(Vec::new());
        }
        if a == k {
            return Ok(vec![self.clone()]);
        }
        if a == 0 {
            return Ok(vec![Subspace::zero(self.field(), self.ambient())?]);
        }
        let coeffs = Grassmannian::new(self.field(), k, a)?;
        let mut out = Vec::with_capacity(coeffs.len() as usize);
        match self.packed() {
            Some(rows) => {
                let mut buf = Vec::with_capacity(a);
                for c in coeffs.iter_packed() {
                    buf.clear();
                    buf.extend(c.iter().map(|&coef| combine_packed(rows, coef)));
                    out.push(Subspace::from_packed(self.ambient(), &buf)?);
                }
            }
            None => {
                for c in coeffs.iter() {
                    let rows: Vec<Vec<u8>> = (0..a).map(|i| combine(&self.basis, &c.basis.row(i))).collect();
                    out.push(Subspace::from_rows(self.field(), self.ambient(), &rows)?);
                }
            }
        }
        Ok(out)
    }

    /// All a-dimensional subspaces of the ambient space containing this one.
    ///
    /// Uses the coordinate complement `C` spanned by the non-pivot columns:
    /// every superspace `S ≥ U` splits uniquely as `U ⊕ (S ∩ C)`.
    pub fn superspaces(&self, a: usize) -> Result<Vec<Subspace>, GrassmannError> {
        let v = self.ambient();
        let k = self.dim();
        if a < k || a > v {
            return Ok(Vec::new());
        }
        if a == k {
            return Ok(vec![self.clone()]);
        }
        if a == v {
            return Ok(vec![Subspace::full(self.field(), v)?]);
        }
        let pivots = self.pivots();
        let comp: Vec<usize> = (0..v).filter(|c| !pivots.contains(c)).collect();
        let inner = Grassmannian::new(self.field(), v - k, a - k)?;
        let mut out = Vec::with_capacity(inner.len() as usize);
        match self.packed() {
            Some(rows) => {
                let mut buf: Vec<u64> = Vec::with_capacity(a);
                for s in inner.iter_packed() {
                    buf.clear();
                    buf.extend_from_slice(rows);
                    buf.extend(s.iter().map(|&w| scatter_bits(w, &comp)));
                    out.push(Subspace::from_packed(v, &buf)?);
                }
            }
            None => {
                for s in inner.iter() {
                    let mut all = self.basis.to_rows();
                    for r in s.basis.to_rows() {
                        let mut x = vec![0u8; v];
                        for (j, &c) in comp.iter().enumerate() {
                            x[c] = r[j];
                        }
                        all.push(x);
                    }
                    out.push(Subspace::from_rows(self.field(), v, &all)?);
                }
            }
        }
        Ok(out)
    }
}

/// XOR of the rows selected by the bits of `coef`.
#[inline]
pub(crate) fn combine_packed(rows: &[u64], mut coef: u64) -> u64 {
    let mut acc = 0;
    while coef != 0 {
        let i = coef.trailing_zeros() as usize;
        acc ^= rows[i];
        coef &= coef - 1;
    }
    acc
}

fn combine(basis: &MatRows, coef: &[u8]) -> Vec<u8> {
    let q = basis.field();
    let mut out = vec![0u8; basis.cols()];
    for (r, &c) in coef.iter().enumerate() {
        if c == 0 {
            continue;
        }
        for (j, x) in out.iter_mut().enumerate() {
            *x = q.add(*x, q.mul(c, basis.get(r, j)));
        }
    }
    out
}

/// Moves bit `j` of `w` to bit `targets[j]`.
#[inline]
pub(crate) fn scatter_bits(w: u64, targets: &[usize]) -> u64 {
    let mut out = 0;
    let mut w = w;
    while w != 0 {
        let j = w.trailing_zeros() as usize;
        out |= 1u64 << targets[j];
        w &= w - 1;
    }
    out
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.to_row_string())
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_row_string())
    }
}

pub fn subspace_distance(u: &Subspace, w: &Subspace) -> Result<usize, GrassmannError> {
    u.distance(w)
}

pub fn intersect_dim(u: &Subspace, w: &Subspace) -> Result<usize, GrassmannError> {
    u.intersect_dim(w)
}

pub fn meet(u: &Subspace, w: &Subspace) -> Result<Subspace, GrassmannError> {
    u.meet(w)
}

pub fn dual(u: &Subspace) -> Subspace {
    u.dual()
}

pub fn incident(u: &Subspace, x: &Subspace) -> Result<bool, GrassmannError> {
    u.incident(x)
}

#[derive(Debug, Clone)]
struct PivotPattern {
    pivots: Vec<usize>,
    /// (row, column) of each free entry in digit order.
    free: Vec<(usize, usize)>,
    offset: u64,
    count: u64,
}

/// The set of k-subspaces of `GF(q)^v` with its ranking and unranking maps.
#[derive(Debug, Clone)]
pub struct Grassmannian {
    field: FieldSpec,
    v: usize,
    k: usize,
    patterns: Vec<PivotPattern>,
    by_mask: HashMap<u64, usize>,
    total: u64,
}

impl Grassmannian {
    pub fn new(field: FieldSpec, v: usize, k: usize) -> Result<Self, GrassmannError> {
        Self::with_cap(field, v, k, MAX_AMBIENT)
    }

    pub fn with_cap(field: FieldSpec, v: usize, k: usize, max_ambient: usize) -> Result<Self, GrassmannError> {
        if k > v {
            return Err(GrassmannError::DimensionTooLarge { k, v });
        }
        if v > max_ambient || v > gf::MAX_COLS {
            return Err(GrassmannError::AmbientCap { v, cap: max_ambient.min(gf::MAX_COLS) });
        }
        if v == 0 {
            // The zero space of GF(q)^0 cannot be represented; MatRows needs a column.
            return Err(GrassmannError::AmbientCap { v, cap: max_ambient });
        }
        let q = field.q() as u64;
        let mut patterns = Vec::new();
        let mut by_mask = HashMap::new();
        let mut offset: u64 = 0;
        for pivots in combinations(v, k) {
            let mut free = Vec::new();
            for (r, &p) in pivots.iter().enumerate() {
                for c in p + 1..v {
                    if !pivots.contains(&c) {
                        free.push((r, c));
                    }
                }
            }
            let count = q.checked_pow(free.len() as u32).ok_or(GrassmannError::IndexOverflow)?;
            let mask = pivots.iter().fold(0u64, |m, &p| m | (1 << p));
            by_mask.insert(mask, patterns.len());
            patterns.push(PivotPattern { pivots, free, offset, count });
            offset = offset.checked_add(count).ok_or(GrassmannError::IndexOverflow)?;
        }
        Ok(Grassmannian { field, v, k, patterns, by_mask, total: offset })
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
    pub fn dim(&self) -> usize {
        self.k
    }

    /// Number of subspaces, equal to the Gaussian binomial coefficient.
    #[inline]
    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Position of `u` in the enumeration order.
    pub fn index_of(&self, u: &Subspace) -> Result<u64, GrassmannError> {
        if u.field() != self.field || u.ambient() != self.v || u.dim() != self.k {
            return Err(GrassmannError::AmbientMismatch {
                left: format!("{}-subspace of {}^{}", u.dim(), u.field(), u.ambient()),
                right: format!("Gr({},{}) over {}", self.v, self.k, self.field),
            });
        }
        Ok(match u.packed() {
            Some(rows) => self.index_of_packed(rows),
            None => {
                let pivots = u.pivots();
                let mask = pivots.iter().fold(0u64, |m, &p| m | (1 << p));
                let pat = &self.patterns[self.by_mask[&mask]];
                let q = self.field.q() as u64;
                pat.offset + pat.free.iter().fold(0u64, |t, &(r, c)| t * q + u.basis.get(r, c) as u64)
            }
        })
    }

    /// Index of a canonical packed GF(2) basis.
    #[inline]
    pub(crate) fn index_of_packed(&self, rows: &[u64]) -> u64 {
        let mask = rows.iter().fold(0u64, |m, &r| m | (r & r.wrapping_neg()));
        let pat = &self.patterns[self.by_mask[&mask]];
        pat.offset + pat.free.iter().fold(0u64, |t, &(r, c)| (t << 1) | ((rows[r] >> c) & 1))
    }

    /// The subspace at position `index`.
    pub fn unrank(&self, index: u64) -> Result<Subspace, GrassmannError> {
        if index >= self.total {
            return Err(GrassmannError::IndexOutOfRange { index, size: self.total });
        }
        let p = self.patterns.partition_point(|p| p.offset + p.count <= index);
        Ok(self.build(p, index - self.patterns[p].offset))
    }

    fn build(&self, p: usize, t: u64) -> Subspace {
        let pat = &self.patterns[p];
        if self.field.is_binary() {
            Subspace::from_canonical(
                MatRows::from_packed(self.v, self.packed_rows(pat, t)).expect("width within ambient"),
            )
        } else {
            let q = self.field.q() as u64;
            let mut rows = vec![vec![0u8; self.v]; self.k];
            for (r, &c) in pat.pivots.iter().enumerate() {
                rows[r][c] = 1;
            }
            let mut t = t;
            for &(r, c) in pat.free.iter().rev() {
                rows[r][c] = (t % q) as u8;
                t /= q;
            }
            Subspace::from_canonical(MatRows::from_rows(self.field, self.v, &rows).expect("digits in range"))
        }
    }

    fn packed_rows(&self, pat: &PivotPattern, t: u64) -> Vec<u64> {
        let mut rows: Vec<u64> = pat.pivots.iter().map(|&c| 1u64 << c).collect();
        let n = pat.free.len();
        for (j, &(r, c)) in pat.free.iter().enumerate() {
            rows[r] |= ((t >> (n - 1 - j)) & 1) << c;
        }
        rows
    }

    /// Streams all subspaces in enumeration order.
    pub fn iter(&self) -> GrassmannianIter<'_> {
        GrassmannianIter { inner: IterSource::Borrowed(self), pattern: 0, t: 0, index: 0 }
    }

    /// Streams packed canonical bases (GF(2) only) in enumeration order.
    pub fn iter_packed(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        assert!(self.field.is_binary(), "packed iteration needs GF(2)");
        self.patterns.iter().flat_map(move |pat| (0..pat.count).map(move |t| self.packed_rows(pat, t)))
    }

    /// All subspaces as a vector, refusing Grassmannians above [`MATERIALIZE_CAP`].
    pub fn materialize(&self) -> Result<Vec<Subspace>, GrassmannError> {
        if self.total > MATERIALIZE_CAP {
            return Err(GrassmannError::MaterializeCap { count: self.total.into(), cap: MATERIALIZE_CAP });
        }
        Ok(self.iter().collect())
    }

    pub(crate) fn check_materializable(&self) -> Result<(), GrassmannError> {
        if self.total > MATERIALIZE_CAP {
            return Err(GrassmannError::MaterializeCap { count: self.total.into(), cap: MATERIALIZE_CAP });
        }
        Ok(())
    }
}

enum IterSource<'a> {
    Borrowed(&'a Grassmannian),
    Shared(Arc<Grassmannian>),
}

/// Iterator over a Grassmannian in enumeration order. Yields `(index, subspace)`
/// through [`GrassmannianIter::indexed`], or plain subspaces.
pub struct GrassmannianIter<'a> {
    inner: IterSource<'a>,
    pattern: usize,
    t: u64,
    index: u64,
}

impl<'a> GrassmannianIter<'a> {
    fn grass(&self) -> &Grassmannian {
        match &self.inner {
            IterSource::Borrowed(g) => g,
            IterSource::Shared(g) => g,
        }
    }

    /// Index of the next subspace to be yielded.
    pub fn position(&self) -> u64 {
        self.index
    }

    pub fn indexed(self) -> impl Iterator<Item = (u64, Subspace)> + 'a {
        let start = self.index;
        self.enumerate().map(move |(i, s)| (start + i as u64, s))
    }
}

impl Iterator for GrassmannianIter<'_> {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        let (mut pattern, mut t) = (self.pattern, self.t);
        let g = self.grass();
        while pattern < g.patterns.len() && t >= g.patterns[pattern].count {
            pattern += 1;
            t = 0;
        }
        if pattern >= g.patterns.len() {
            return None;
        }
        let s = g.build(pattern, t);
        self.pattern = pattern;
        self.t = t;
        self.t += 1;
        self.index += 1;
        Some(s)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rem = (self.grass().total - self.index) as usize;
        (rem, Some(rem))
    }
}

/// All k-subspaces of `GF(q)^v` in enumeration order.
pub fn enumerate(field: FieldSpec, v: usize, k: usize) -> Result<GrassmannianIter<'static>, GrassmannError> {
    let g = Arc::new(Grassmannian::new(field, v, k)?);
    Ok(GrassmannianIter { inner: IterSource::Shared(g), pattern: 0, t: 0, index: 0 })
}

/// k-element subsets of 0..n in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else { break };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}
