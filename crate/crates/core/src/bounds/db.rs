//! Table of known lower and upper bounds on `A_q(v,d;K)`.
//!
//! Stored as one record per line:
//!
//! ```text
//! # q v d K lower upper # provenance
//! 2 7 6 3 17 17 # partial plane spreads in PG(6,2)
//! 2 7 5 0,1,2,3,4,5,6,7 34 34 # mixed-dimension codes
//! ```
//!
//! `K` is a comma-joined list of dimensions; an unknown bound is written `-`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigUint;

use super::BoundsError;

/// `(q, v, d, K)` with `K` sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DbKey {
    pub q: u32,
    pub v: u32,
    pub d: u32,
    pub dims: Vec<u32>,
}

impl DbKey {
    pub fn new(q: u32, v: u32, d: u32, dims: impl IntoIterator<Item = u32>) -> Self {
        let dims: BTreeSet<u32> = dims.into_iter().collect();
        DbKey { q, v, d, dims: dims.into_iter().collect() }
    }

    /// The key of the orthogonal parameters `(q, v, d, v − K)`.
    pub fn orthogonal(&self) -> DbKey {
        DbKey::new(self.q, self.v, self.d, self.dims.iter().map(|&k| self.v - k))
    }

    pub fn dims_string(&self) -> String {
        self.dims.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl std::fmt::Display for DbKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.dims.len() == 1 {
            write!(f, "A_{}({},{};{})", self.q, self.v, self.d, self.dims[0])
        } else {
            write!(f, "A_{}({},{};{{{}}})", self.q, self.v, self.d, self.dims_string())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundRecord {
    pub lower: Option<BigUint>,
    pub upper: Option<BigUint>,
    pub provenance: String,
}

impl BoundRecord {
    /// The value when lower and upper bounds coincide.
    pub fn exact(&self) -> Option<&BigUint> {
        match (&self.lower, &self.upper) {
            (Some(l), Some(u)) if l == u => Some(u),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundsDb {
    records: BTreeMap<DbKey, BoundRecord>,
}

const SEED: &str = "\
# q v d K lower upper # provenance
2 7 6 3 17 17 # classification of partial plane spreads in PG(6,2)
2 6 4 3 77 77 # exhaustive computer search
2 13 4 3 1597245 1597245 # q-Steiner system S_2[2,3,13]
2 7 5 0,1,2,3,4,5,6,7 34 34 # classification of mixed-dimension codes in PG(6,2)
2 8 6 4 257 272 # lifted MRD code plus one; ILP with prescribed hyperplane substructure
2 7 4 3 333 381 # online subspace code tables
2 9 5 4,5 65 66 # online subspace code tables
2 10 8 5 1025 1089 # lifted MRD code plus one; Johnson bound
";

impl BoundsDb {
    pub fn new() -> Self {
        Self::default()
    }

    /// The built-in table of known values.
    pub fn seeded() -> Self {
        Self::parse(SEED).expect("seed table is well formed")
    }

    pub fn insert(&mut self, key: DbKey, record: BoundRecord) -> Result<(), BoundsError> {
        if let (Some(l), Some(u)) = (&record.lower, &record.upper) {
            if l > u {
                return Err(BoundsError::Db(format!("{key}: lower bound {l} exceeds upper bound {u}")));
            }
        }
        if key.dims.iter().any(|&k| k > key.v) {
            return Err(BoundsError::Db(format!("{key}: dimension exceeds ambient")));
        }
        self.records.insert(key, record);
        Ok(())
    }

    /// Looks up `key`, falling back to the orthogonal parameters.
    pub fn lookup(&self, key: &DbKey) -> Option<(&DbKey, &BoundRecord)> {
        self.records.get_key_value(key).or_else(|| self.records.get_key_value(&key.orthogonal()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DbKey, &BoundRecord)> {
        self.records.iter()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn parse(text: &str) -> Result<Self, BoundsError> {
        let mut db = BoundsDb::new();
        for (i, raw) in text.lines().enumerate() {
            let (body, provenance) = match raw.split_once('#') {
                Some((b, p)) => (b, p.trim()),
                None => (raw, ""),
            };
            let toks: Vec<&str> = body.split_whitespace().collect();
            if toks.is_empty() {
                continue;
            }
            let bad = |what: &str| BoundsError::Db(format!("line {}: {what}", i + 1));
            if toks.len() != 6 {
                return Err(bad("expected `q v d K lower upper`"));
            }
            let num = |s: &str| s.parse::<u32>().map_err(|_| bad(&format!("bad integer `{s}`")));
            let bound = |s: &str| -> Result<Option<BigUint>, BoundsError> {
                if s == "-" {
                    Ok(None)
                } else {
                    s.parse::<BigUint>().map(Some).map_err(|_| bad(&format!("bad bound `{s}`")))
                }
            };
            let dims: Vec<u32> = toks[3].split(',').map(num).collect::<Result<_, _>>()?;
            let key = DbKey::new(num(toks[0])?, num(toks[1])?, num(toks[2])?, dims);
            let rec = BoundRecord { lower: bound(toks[4])?, upper: bound(toks[5])?, provenance: provenance.to_string() };
            db.insert(key, rec).map_err(|e| bad(&e.to_string()))?;
        }
        Ok(db)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("# q v d K lower upper # provenance\n");
        let show = |b: &Option<BigUint>| b.as_ref().map_or_else(|| "-".to_string(), |x| x.to_string());
        for (k, r) in &self.records {
            write!(out, "{} {} {} {} {} {}", k.q, k.v, k.d, k.dims_string(), show(&r.lower), show(&r.upper)).unwrap();
            if !r.provenance.is_empty() {
                write!(out, " # {}", r.provenance).unwrap();
            }
            out.push('\n');
        }
        out
    }

    pub fn load(path: &Path) -> Result<Self, BoundsError> {
        let text = std::fs::read_to_string(path).map_err(|e| BoundsError::Db(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_is_consistent() {
        let db = BoundsDb::seeded();
        assert_eq!(db.len(), 8);
        for (k, r) in db.iter() {
            if let (Some(l), Some(u)) = (&r.lower, &r.upper) {
                assert!(l <= u, "{k}");
            }
        }
    }

    #[test]
    fn orthogonal_lookup() {
        let db = BoundsDb::seeded();
        let (k, r) = db.lookup(&DbKey::new(2, 7, 6, [4])).unwrap();
        assert_eq!(k, &DbKey::new(2, 7, 6, [3]));
        assert_eq!(r.exact(), Some(&BigUint::from(17u32)));
        let (_, r) = db.lookup(&DbKey::new(2, 9, 5, [4, 5])).unwrap();
        assert_eq!(r.upper, Some(BigUint::from(66u32)));
    }

    #[test]
    fn text_roundtrip() {
        let db = BoundsDb::seeded();
        assert_eq!(BoundsDb::parse(&db.to_text()).unwrap(), db);
    }

    #[test]
    fn rejects_inverted_bounds() {
        assert!(BoundsDb::parse("2 6 4 3 80 77\n").is_err());
        assert!(BoundsDb::parse("2 6 4 3 -\n").is_err());
        let db = BoundsDb::parse("2 6 4 3 - 80 # open\n").unwrap();
        assert_eq!(db.lookup(&DbKey::new(2, 6, 4, [3])).unwrap().1.lower, None);
    }
}
