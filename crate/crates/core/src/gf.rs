//! Exact matrix arithmetic over the prime fields GF(2), GF(3), GF(5) and GF(7).
//!
//! Matrices over GF(2) are stored one machine word per row, with coordinate 1
//! (column 0) in the least significant bit, so that row operations are a single
//! XOR. Every other field stores one byte per entry.

use std::fmt;

use thiserror::Error;

/// Field orders accepted by [`FieldSpec::new`].
pub const SUPPORTED_PRIMES: [u32; 4] = [2, 3, 5, 7];

/// Largest column count a [`MatRows`] may carry.
pub const MAX_COLS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("unsupported field order {0}: expected one of 2, 3, 5, 7")]
    UnsupportedField(u32),
    #[error("field mismatch: GF({left}) vs GF({right})")]
    FieldMismatch { left: u8, right: u8 },
    #[error("column count mismatch: {left} vs {right}")]
    ColumnMismatch { left: usize, right: usize },
    #[error("column count {0} outside 1..={MAX_COLS}")]
    BadColumnCount(usize),
    #[error("row {row} has {len} entries, expected {cols}")]
    RaggedRow { row: usize, len: usize, cols: usize },
    #[error("entry {value} at row {row} is not an element of GF({q})")]
    EntryOutOfRange { row: usize, value: u8, q: u8 },
}

/// A prime field GF(q) with q in {2, 3, 5, 7}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldSpec(u8);

impl FieldSpec {
    pub const GF2: FieldSpec = FieldSpec(2);

    pub fn new(q: u32) -> Result<Self, GfError> {
        if SUPPORTED_PRIMES.contains(&q) {
            Ok(FieldSpec(q as u8))
        } else {
            Err(GfError::UnsupportedField(q))
        }
    }

    #[inline]
    pub fn q(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn is_binary(self) -> bool {
        self.0 == 2
    }

    #[inline]
    pub fn add(self, a: u8, b: u8) -> u8 {
        (a + b) % self.0
    }

    #[inline]
    pub fn sub(self, a: u8, b: u8) -> u8 {
        (a + self.0 - b) % self.0
    }

    #[inline]
    pub fn neg(self, a: u8) -> u8 {
        (self.0 - a) % self.0
    }

    #[inline]
    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.0 as u16) as u8
    }

    /// Multiplicative inverse of a non-zero element.
    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(a % self.0 != 0, "zero has no inverse");
        // a^(q-2) by Fermat; q <= 7 so the loop is tiny.
        let mut acc = 1u8;
        for _ in 0..self.0 - 2 {
            acc = self.mul(acc, a);
        }
        acc
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Storage {
    /// One word per row, column `c` in bit `c`.
    Packed(Vec<u64>),
    /// Row-major bytes.
    Bytes(Vec<u8>),
}

/// A dense matrix over a small prime field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatRows {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Storage,
}

impl MatRows {
    /// The matrix with no rows.
    pub fn empty(field: FieldSpec, cols: usize) -> Result<Self, GfError> {
        check_cols(cols)?;
        let data = if field.is_binary() {
            Storage::Packed(Vec::new())
        } else {
            Storage::Bytes(Vec::new())
        };
        Ok(MatRows { field, rows: 0, cols, data })
    }

    /// Builds a matrix from rows of field elements.
    pub fn from_rows<R: AsRef<[u8]>>(field: FieldSpec, cols: usize, rows: &[R]) -> Result<Self, GfError> {
        check_cols(cols)?;
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(GfError::RaggedRow { row: i, len: r.len(), cols });
            }
            if let Some(&bad) = r.iter().find(|&&x| x >= field.q()) {
                return Err(GfError::EntryOutOfRange { row: i, value: bad, q: field.q() });
            }
        }
        let data = if field.is_binary() {
            Storage::Packed(
                rows.iter()
                    .map(|r| {
                        r.as_ref()
                            .iter()
                            .enumerate()
                            .fold(0u64, |w, (c, &x)| w | ((x as u64) << c))
                    })
                    .collect(),
            )
        } else {
            Storage::Bytes(rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect())
        };
        Ok(MatRows { field, rows: rows.len(), cols, data })
    }

    /// Builds a GF(2) matrix from packed row words. Bits at or above `cols`
    /// must be clear.
    pub fn from_packed(cols: usize, words: Vec<u64>) -> Result<Self, GfError> {
        check_cols(cols)?;
        let mask = col_mask(cols);
        for (row, &w) in words.iter().enumerate() {
            if w & !mask != 0 {
                return Err(GfError::RaggedRow { row, len: 64 - w.leading_zeros() as usize, cols });
            }
        }
        Ok(MatRows { field: FieldSpec::GF2, rows: words.len(), cols, data: Storage::Packed(words) })
    }

    #[inline]
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Packed rows, present exactly when the field is GF(2).
    #[inline]
    pub fn packed(&self) -> Option<&[u64]> {
        match &self.data {
            Storage::Packed(w) => Some(w),
            Storage::Bytes(_) => None,
        }
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        match &self.data {
            Storage::Packed(w) => ((w[row] >> col) & 1) as u8,
            Storage::Bytes(b) => b[row * self.cols + col],
        }
    }

    pub fn row(&self, row: usize) -> Vec<u8> {
        (0..self.cols).map(|c| self.get(row, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &MatRows) -> Result<MatRows, GfError> {
        check_compatible(self, other)?;
        let data = match (&self.data, &other.data) {
            (Storage::Packed(a), Storage::Packed(b)) => Storage::Packed(a.iter().chain(b).copied().collect()),
            (Storage::Bytes(a), Storage::Bytes(b)) => Storage::Bytes(a.iter().chain(b).copied().collect()),
            _ => unreachable!("storage follows the field"),
        };
        Ok(MatRows { field: self.field, rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Renders each row as a digit string, column 0 leftmost.
    pub fn row_string(&self, row: usize) -> String {
        (0..self.cols).map(|c| char::from(b'0' + self.get(row, c))).collect()
    }
}

impl fmt::Debug for MatRows {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows).map(|r| self.row_string(r)).collect();
        write!(f, "MatRows[{}; {}x{}: {}]", self.field, self.rows, self.cols, rows.join(","))
    }
}

fn check_cols(cols: usize) -> Result<(), GfError> {
    if (1..=MAX_COLS).contains(&cols) {
        Ok(())
    } else {
        Err(GfError::BadColumnCount(cols))
    }
}

fn check_compatible(a: &MatRows, b: &MatRows) -> Result<(), GfError> {
    if a.field != b.field {
        return Err(GfError::FieldMismatch { left: a.field.q(), right: b.field.q() });
    }
    if a.cols != b.cols {
        return Err(GfError::ColumnMismatch { left: a.cols, right: b.cols });
    }
    Ok(())
}

#[inline]
pub(crate) fn col_mask(cols: usize) -> u64 {
    if cols >= 64 {
        u64::MAX
    } else {
        (1u64 << cols) - 1
    }
}

/// Reduced row echelon form with zero rows removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: MatRows,
    pub pivots: Vec<usize>,
}

impl Rref {
    #[inline]
    pub fn rank(&self) -> usize {
        self.matrix.rows
    }
}

/// Canonical reduced row echelon form. Uses the packed kernel for GF(2).
pub fn rref(m: &MatRows) -> Rref {
    match &m.data {
        Storage::Packed(words) => {
            let (rows, pivots) = rref_packed(words, m.cols);
            Rref {
                matrix: MatRows { field: m.field, rows: rows.len(), cols: m.cols, data: Storage::Packed(rows) },
                pivots,
            }
        }
        Storage::Bytes(_) => rref_bytewise(m),
    }
}

/// Reduced row echelon form through the byte-per-entry elimination, for any
/// supported field. The result uses the storage native to the field, so for
/// GF(2) it is directly comparable with [`rref`].
pub fn rref_bytewise(m: &MatRows) -> Rref {
    let q = m.field;
    let cols = m.cols;
    let mut a = m.to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        let inv = q.inv(a[r][c]);
        for x in a[r].iter_mut() {
            *x = q.mul(*x, inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = q.sub(*x, q.mul(f, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    let matrix = MatRows::from_rows(q, cols, &a).expect("elimination keeps entries in range");
    Rref { matrix, pivots }
}

/// Packed GF(2) elimination. Returns the non-zero RREF rows and their pivots.
pub(crate) fn rref_packed(words: &[u64], cols: usize) -> (Vec<u64>, Vec<usize>) {
    let mut m = words.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let bit = 1u64 << c;
        let Some(p) = (r..m.len()).find(|&i| m[i] & bit != 0) else { continue };
        m.swap(r, p);
        let pr = m[r];
        for (i, w) in m.iter_mut().enumerate() {
            if i != r && *w & bit != 0 {
                *w ^= pr;
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Rank of a set of packed GF(2) rows, without allocating.
#[inline]
pub fn packed_rank<I: IntoIterator<Item = u64>>(rows: I) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut x in rows {
        while x != 0 {
            let b = x.trailing_zeros() as usize;
            if basis[b] == 0 {
                basis[b] = x;
                rank += 1;
                break;
            }
            x ^= basis[b];
        }
    }
    rank
}

pub fn rank(m: &MatRows) -> usize {
    match &m.data {
        Storage::Packed(w) => packed_rank(w.iter().copied()),
        Storage::Bytes(_) => rref_bytewise(m).rank(),
    }
}

/// Rank of the vertical concatenation of `a` and `b`.
pub fn stack_rank(a: &MatRows, b: &MatRows) -> Result<usize, GfError> {
    check_compatible(a, b)?;
    Ok(match (&a.data, &b.data) {
        (Storage::Packed(x), Storage::Packed(y)) => packed_rank(x.iter().chain(y).copied()),
        _ => rank(&a.vstack(b)?),
    })
}

/// Basis (in RREF) of the orthogonal complement of the row space of `m` under
/// the standard dot product.
pub fn nullspace(m: &MatRows) -> Rref {
    let red = rref(m);
    let cols = m.cols;
    let q = m.field;
    let free: Vec<usize> = (0..cols).filter(|c| !red.pivots.contains(c)).collect();
    let out = match &red.matrix.data {
        Storage::Packed(rows) => {
            let words = free
                .iter()
                .map(|&f| {
                    rows.iter()
                        .zip(&red.pivots)
                        .filter(|(r, _)| (*r >> f) & 1 == 1)
                        .fold(1u64 << f, |w, (_, &p)| w | (1u64 << p))
                })
                .collect();
            MatRows { field: q, rows: free.len(), cols, data: Storage::Packed(words) }
        }
        Storage::Bytes(_) => {
            let rows: Vec<Vec<u8>> = free
                .iter()
                .map(|&f| {
                    let mut x = vec![0u8; cols];
                    x[f] = 1;
                    for (i, &p) in red.pivots.iter().enumerate() {
                        x[p] = q.neg(red.matrix.get(i, f));
                    }
                    x
                })
                .collect();
            MatRows::from_rows(q, cols, &rows).expect("entries in range")
        }
    };
    rref(&out)
}

/// Whether `row` lies in the row space of `m`.
pub fn in_row_space(m: &MatRows, row: &[u8]) -> Result<bool, GfError> {
    let single = MatRows::from_rows(m.field, m.cols, &[row])?;
    Ok(stack_rank(m, &single)? == rank(m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::new(q).unwrap()
    }

    fn bits(rows: &[&str]) -> MatRows {
        let r: Vec<Vec<u8>> = rows.iter().map(|s| s.bytes().map(|b| b - b'0').collect()).collect();
        MatRows::from_rows(FieldSpec::GF2, r[0].len(), &r).unwrap()
    }

    #[test]
    fn rejects_unsupported_fields() {
        for q in [0, 1, 4, 6, 8, 9, 11] {
            assert_eq!(FieldSpec::new(q), Err(GfError::UnsupportedField(q)));
        }
    }

    #[test]
    fn inverses() {
        for q in SUPPORTED_PRIMES {
            let f = gf(q);
            for a in 1..q as u8 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
        }
    }

    #[test]
    fn identity_is_fixed() {
        let m = bits(&["100", "010", "001"]);
        let r = rref(&m);
        assert_eq!(r.matrix, m);
        assert_eq!(r.rank(), 3);
        assert_eq!(r.pivots, vec![0, 1, 2]);
    }

    #[test]
    fn dependent_row_dropped() {
        let m = bits(&["1100", "0110", "1010"]);
        let r = rref(&m);
        assert_eq!(r.rank(), 2);
        assert_eq!(r.matrix, bits(&["1010", "0110"]));
    }

    #[test]
    fn stack_rank_examples() {
        let plane = bits(&["1000000", "0100000", "0010000"]);
        assert_eq!(stack_rank(&plane, &plane).unwrap(), 3);
        let p1 = bits(&["1000000"]);
        let p2 = bits(&["0100000"]);
        assert_eq!(stack_rank(&p1, &p2).unwrap(), 2);
        let p3 = bits(&["010000"]);
        assert!(matches!(stack_rank(&p1, &p3), Err(GfError::ColumnMismatch { .. })));
        let t = MatRows::from_rows(gf(3), 7, &[vec![1, 0, 0, 0, 0, 0, 0]]).unwrap();
        assert!(matches!(stack_rank(&p1, &t), Err(GfError::FieldMismatch { .. })));
    }

    #[test]
    fn ternary_rref() {
        let q = gf(3);
        let m = MatRows::from_rows(q, 3, &[vec![2, 1, 0], vec![1, 2, 0], vec![0, 0, 2]]).unwrap();
        let r = rref(&m);
        // second row is twice the first
        assert_eq!(r.rank(), 2);
        assert_eq!(r.matrix.to_rows(), vec![vec![1, 2, 0], vec![0, 0, 1]]);
        assert_eq!(r.pivots, vec![0, 2]);
    }

    #[test]
    fn nullspace_is_orthogonal() {
        let q = gf(5);
        let m = MatRows::from_rows(q, 4, &[vec![1, 2, 3, 4], vec![0, 1, 4, 2]]).unwrap();
        let n = nullspace(&m);
        assert_eq!(n.rank(), 2);
        for a in m.to_rows() {
            for b in n.matrix.to_rows() {
                let dot = a.iter().zip(&b).fold(0u8, |s, (&x, &y)| q.add(s, q.mul(x, y)));
                assert_eq!(dot, 0);
            }
        }
    }

    #[test]
    fn entry_range_checked() {
        assert!(matches!(
            MatRows::from_rows(gf(3), 2, &[vec![0, 3]]),
            Err(GfError::EntryOutOfRange { value: 3, .. })
        ));
        assert!(matches!(MatRows::from_rows(gf(3), 0, &[] as &[Vec<u8>]), Err(GfError::BadColumnCount(0))));
        assert!(MatRows::from_packed(3, vec![0b1000]).is_err());
    }

    #[test]
    fn membership() {
        let m = bits(&["1100", "0011"]);
        assert!(in_row_space(&m, &[1, 1, 1, 1]).unwrap());
        assert!(!in_row_space(&m, &[1, 0, 0, 0]).unwrap());
    }
}
