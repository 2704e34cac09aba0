//! Upper bounds on `A_q(v,d;k)`, the largest size of a constant-dimension code.
//!
//! Everything here is exact: values are [`BigUint`], thresholds are
//! [`BigRational`]. Recursive bounds bottom out in the [`BoundsDb`] table, in
//! the partial spread formula, or in trivial cases, and every step is written
//! to a human-readable derivation.

mod db;

pub use db::{BoundRecord, BoundsDb, DbKey};

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::grassmann::gaussian_binomial;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("parameter out of domain: {0}")]
    Domain(String),
    #[error("bounds table: {0}")]
    Db(String),
}

fn domain<T>(msg: impl Into<String>) -> Result<T, BoundsError> {
    Err(BoundsError::Domain(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundMethod {
    Johnson,
    PartialSpread,
    Degree,
    DoubleCount,
    OneIncidence,
    PairThreshold,
    DbLookup,
    Trivial,
}

impl fmt::Display for BoundMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundMethod::Johnson => "johnson",
            BoundMethod::PartialSpread => "partial_spread",
            BoundMethod::Degree => "degree",
            BoundMethod::DoubleCount => "double_count",
            BoundMethod::OneIncidence => "one_incidence",
            BoundMethod::PairThreshold => "pair_threshold",
            BoundMethod::DbLookup => "db_lookup",
            BoundMethod::Trivial => "trivial",
        })
    }
}

/// An upper bound with the chain of facts it was derived from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundResult {
    pub value: BigUint,
    pub method: BoundMethod,
    /// One line per step, innermost first.
    pub derivation: Vec<String>,
    /// Table record for the queried parameters, when present.
    pub known: Option<(DbKey, BoundRecord)>,
    /// True when no table entry was used anywhere in the chain.
    pub unconditioned: bool,
}

impl fmt::Display for BoundResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}", self.value, self.method)?;
        if self.unconditioned {
            write!(f, ", unconditioned")?;
        }
        writeln!(f, "]")?;
        for line in &self.derivation {
            writeln!(f, "  {line}")?;
        }
        if let Some((k, r)) = &self.known {
            let show = |b: &Option<BigUint>| b.as_ref().map_or_else(|| "?".into(), |x: &BigUint| x.to_string());
            writeln!(f, "  known: {} <= {k} <= {} ({})", show(&r.lower), show(&r.upper), r.provenance)?;
        }
        Ok(())
    }
}

fn pow(q: u32, e: u32) -> BigUint {
    BigUint::from(q).pow(e)
}

fn qnum(q: u32, e: u32) -> BigUint {
    pow(q, e) - BigUint::one()
}

fn a_name(q: u32, v: u32, d: u32, k: u32) -> String {
    format!("A_{q}({v},{d};{k})")
}

fn check_q(q: u32) -> Result<(), BoundsError> {
    if q < 2 {
        return domain(format!("field order {q} < 2"));
    }
    Ok(())
}

#[derive(Debug, Clone)]
struct Resolved {
    value: BigUint,
    steps: Vec<String>,
    used_db: bool,
}

/// Resolves `A_q(v,d;k)` upper bounds recursively with memoization.
struct Resolver<'a> {
    q: u32,
    db: &'a BoundsDb,
    memo: HashMap<(u32, u32, u32), Resolved>,
}

impl<'a> Resolver<'a> {
    fn new(q: u32, db: &'a BoundsDb) -> Self {
        Resolver { q, db, memo: HashMap::new() }
    }

    fn resolve(&mut self, v: u32, d: u32, k: u32) -> Result<Resolved, BoundsError> {
        if k > v {
            return domain(format!("dimension {k} exceeds ambient {v}"));
        }
        if let Some(r) = self.memo.get(&(v, d, k)) {
            return Ok(r.clone());
        }
        let r = self.resolve_uncached(v, d, k)?;
        self.memo.insert((v, d, k), r.clone());
        Ok(r)
    }

    fn resolve_uncached(&mut self, v: u32, d: u32, k: u32) -> Result<Resolved, BoundsError> {
        let q = self.q;
        let name = a_name(q, v, d, k);
        let kk = k.min(v - k);
        if kk == 0 {
            return Ok(Resolved { value: BigUint::one(), steps: vec![format!("{name} = 1 [trivial: single subspace]")], used_db: false });
        }
        if d > 2 * kk {
            return Ok(Resolved {
                value: BigUint::one(),
                steps: vec![format!("{name} = 1 [trivial: d > 2·min(k, v−k) = {}]", 2 * kk)],
                used_db: false,
            });
        }
        if d <= 2 {
            let all = gaussian_binomial(v, k, q).expect("k <= v");
            return Ok(Resolved {
                value: all.clone(),
                steps: vec![format!("{name} = [{v} {k}]_{q} = {all} [trivial: all subspaces]")],
                used_db: false,
            });
        }
        let mut best: Option<Resolved> = None;
        let key = DbKey::new(q, v, d, [k]);
        if let Some((found, rec)) = self.db.lookup(&key) {
            if let Some(x) = rec.exact() {
                return Ok(Resolved {
                    value: x.clone(),
                    steps: vec![format!("{name} = {x} [db {found}: {}]", rec.provenance)],
                    used_db: true,
                });
            }
            if let Some(u) = &rec.upper {
                best = Some(Resolved {
                    value: u.clone(),
                    steps: vec![format!("{name} <= {u} [db {found}: {}]", rec.provenance)],
                    used_db: true,
                });
            }
        }
        if d == 2 * kk && kk >= 2 && v % kk == 1 {
            let x = partial_spread_size(q, v, kk)?;
            return Ok(Resolved {
                value: x.clone(),
                steps: vec![format!("{name} = {x} [partial spread: (q^v−q)/(q^k−1) − q + 1 with k = {kk}]")],
                used_db: false,
            });
        }
        let mut orientations = vec![k];
        if v - k != k {
            orientations.push(v - k);
        }
        for kj in orientations {
            let inner = self.resolve(v - 1, d, kj - 1)?;
            let value = (qnum(q, v) * &inner.value) / qnum(q, kj);
            if best.as_ref().map_or(true, |b| value < b.value) {
                let mut steps = inner.steps.clone();
                let via = if kj == k { String::new() } else { format!(" via {} (orthogonal)", a_name(q, v, d, kj)) };
                steps.push(format!(
                    "{name} <= floor(({q}^{v}−1)/({q}^{kj}−1) · {}) = {value} [johnson{via}]",
                    inner.value
                ));
                best = Some(Resolved { value, steps, used_db: inner.used_db });
            }
        }
        Ok(best.expect("at least one orientation"))
    }
}

fn check_code_params(v: u32, d: u32, k: u32) -> Result<(), BoundsError> {
    if k > v {
        return domain(format!("dimension {k} exceeds ambient {v}"));
    }
    if d % 2 != 0 || d < 2 {
        return domain(format!("minimum distance {d} must be even and at least 2"));
    }
    Ok(())
}

/// Best upper bound on `A_q(v,d;k)` from the table, partial spreads and the
/// Johnson recursion.
pub fn resolve_upper(q: u32, v: u32, d: u32, k: u32, db: &BoundsDb) -> Result<BoundResult, BoundsError> {
    check_q(q)?;
    check_code_params(v, d, k)?;
    let r = Resolver::new(q, db).resolve(v, d, k)?;
    let method = match r.steps.last() {
        Some(s) if s.contains("[johnson") => BoundMethod::Johnson,
        Some(s) if s.contains("[partial spread") => BoundMethod::PartialSpread,
        Some(s) if s.contains("[db") => BoundMethod::DbLookup,
        _ => BoundMethod::Trivial,
    };
    Ok(BoundResult {
        value: r.value,
        method,
        derivation: r.steps,
        known: db.lookup(&DbKey::new(q, v, d, [k])).map(|(k, r)| (k.clone(), r.clone())),
        unconditioned: !r.used_db,
    })
}

/// `A_q(v,d;k) ≤ ⌊(q^v−1)/(q^k−1) · A_q(v−1,d;k−1)⌋`, with the inner value
/// resolved recursively. For partial spreads with `v ≡ 1 (mod k)` the smaller
/// of this and the exact spread size is returned.
pub fn johnson_bound(q: u32, v: u32, d: u32, k: u32, db: &BoundsDb) -> Result<BoundResult, BoundsError> {
    check_q(q)?;
    check_code_params(v, d, k)?;
    if k == 0 || d > 2 * k {
        return domain(format!("johnson bound needs 1 <= k and d <= 2k (k = {k}, d = {d})"));
    }
    let inner = Resolver::new(q, db).resolve(v - 1, d, k - 1)?;
    let value = (qnum(q, v) * &inner.value) / qnum(q, k);
    let mut derivation = inner.steps.clone();
    derivation.push(format!(
        "{} <= floor(({q}^{v}−1)/({q}^{k}−1) · {}) = {value} [johnson]",
        a_name(q, v, d, k),
        inner.value
    ));
    let mut result = BoundResult {
        value,
        method: BoundMethod::Johnson,
        derivation,
        known: db.lookup(&DbKey::new(q, v, d, [k])).map(|(k, r)| (k.clone(), r.clone())),
        unconditioned: !inner.used_db,
    };
    if d == 2 * k && k >= 2 && v % k == 1 {
        let ps = partial_spread_size(q, v, k)?;
        if ps < result.value {
            result.derivation.push(format!("{} = {ps} [partial spread, tighter]", a_name(q, v, d, k)));
            result.value = ps;
            result.method = BoundMethod::PartialSpread;
        }
    }
    Ok(result)
}

/// Exact size `(q^v − q)/(q^k − 1) − q + 1` of a maximum partial k-spread when
/// `v ≡ 1 (mod k)`.
pub fn partial_spread_size(q: u32, v: u32, k: u32) -> Result<BigUint, BoundsError> {
    check_q(q)?;
    if k < 2 || k > v {
        return domain(format!("partial spread size needs 2 <= k <= v (k = {k}, v = {v})"));
    }
    if v % k != 1 {
        return domain(format!("partial spread size needs v ≡ 1 mod k (v = {v}, k = {k})"));
    }
    let qb = BigUint::from(q);
    Ok((pow(q, v) - &qb) / qnum(q, k) + BigUint::one() - qb)
}

/// Upper bound on the number of codewords incident with a fixed subspace of
/// dimension `dim_x`: `A_q(dim_x,d;k)` when `dim_x ≥ k`, otherwise
/// `A_q(v−dim_x,d;k−dim_x)`.
pub fn degree_bound(q: u32, v: u32, d: u32, k: u32, dim_x: u32, db: &BoundsDb) -> Result<BoundResult, BoundsError> {
    check_q(q)?;
    check_code_params(v, d, k)?;
    if dim_x > v {
        return domain(format!("dim X = {dim_x} exceeds ambient {v}"));
    }
    let (rv, rk) = if dim_x >= k { (dim_x, k) } else { (v - dim_x, k - dim_x) };
    let r = Resolver::new(q, db).resolve(rv, d, rk)?;
    let mut derivation = r.steps;
    derivation.push(format!("#I(C,X) <= {} = {} for dim X = {dim_x} [degree]", a_name(q, rv, d, rk), r.value));
    Ok(BoundResult {
        value: r.value,
        method: BoundMethod::Degree,
        derivation,
        known: None,
        unconditioned: !r.used_db,
    })
}

/// Double counting of codeword/l-subspace incidences when every l-subspace is
/// incident with at most `b` codewords.
pub fn double_count_bound(q: u32, v: u32, k: u32, l: u32, b: u64) -> Result<BigUint, BoundsError> {
    check_q(q)?;
    if k > v || l > v {
        return domain(format!("need k, l <= v (k = {k}, l = {l}, v = {v})"));
    }
    let num = gaussian_binomial(v, l, q).expect("l <= v") * BigUint::from(b);
    let den = if l <= k {
        gaussian_binomial(k, l, q).expect("l <= k")
    } else {
        gaussian_binomial(v - k, l - k, q).expect("l - k <= v - k")
    };
    Ok(num / den)
}

/// `(q^k+1)(q^k+1−c)`: the size limit for a `(2k, N, 2k−2; k)_q` code in which
/// every point (or every hyperplane) meets at most `q^k+1−c` codewords.
pub fn one_incidence_bound(q: u32, k: u32, c: u64) -> Result<BigUint, BoundsError> {
    check_q(q)?;
    let base = pow(q, k) + BigUint::one();
    let c = BigUint::from(c);
    if c > base {
        return domain(format!("c = {c} exceeds q^k + 1 = {base}"));
    }
    Ok(&base * (&base - c))
}

/// `(q^v−1)(b−1)/(q^(v−k)+q^k−2)`: any set of more k-subspaces than this has a
/// point P and hyperplane H with P not in H and `#I(S,H) + #I(S,P) ≥ b`.
pub fn pair_threshold(q: u32, v: u32, k: u32, b: u64) -> Result<BigRational, BoundsError> {
    check_q(q)?;
    if k < 1 || k + 1 > v {
        return domain(format!("pair threshold needs 1 <= k <= v−1 (k = {k}, v = {v})"));
    }
    if b < 1 {
        return domain("pair threshold needs b >= 1");
    }
    let num = BigInt::from(qnum(q, v)) * BigInt::from(b - 1);
    let den = BigInt::from(pow(q, v - k) + pow(q, k)) - BigInt::from(2);
    Ok(BigRational::new(num, den))
}

/// `(q^k+1)(q^k+1−(c+1)/2)`: above this size a `(2k,N,2k−2;k)_q` code has a
/// non-incident point/hyperplane pair meeting at least `2(q^k+1)−c` codewords.
pub fn point_hyperplane_threshold(q: u32, k: u32, c: u64) -> Result<BigRational, BoundsError> {
    check_q(q)?;
    let base = BigInt::from(pow(q, k)) + BigInt::one();
    let inner = BigRational::from_integer(base.clone()) - BigRational::new(BigInt::from(c + 1), BigInt::from(2));
    Ok(BigRational::from_integer(base) * inner)
}

/// Numbers behind the statement that improving `A_q(2k,2k−2;k)` cannot improve
/// the Johnson bound on `A_q(2k+1,2k−2;k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeReport {
    pub q: u32,
    pub k: u32,
    pub improved_upper: BigUint,
    /// `(q^(2k+1)−1)/(q^k−1) · (q^(2k)−1)/(q^(k−1)−1)`, an upper bound for the
    /// route through `A_q(2k,2k−2;k−1)`.
    pub lower_route: BigRational,
    pub lower_route_floor: BigUint,
    /// `(q^(2k+1)−1)/(q^(k+1)−1) · q^(2k)`.
    pub pivot: BigRational,
    /// `⌊(q^(2k+1)−1)/(q^(k+1)−1) · (q^(2k)+1)⌋`.
    pub floor_case: BigUint,
    /// `⌊(q^(2k+1)−1)/(q^(k+1)−1) · improved_upper⌋`.
    pub upper_route: BigUint,
    pub chain_holds: bool,
}

impl fmt::Display for CascadeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "q = {}, k = {}, A_q(2k,2k−2;k) <= {}", self.q, self.k, self.improved_upper)?;
        writeln!(f, "  route via k−1:  {} (floor {})", self.lower_route, self.lower_route_floor)?;
        writeln!(f, "  strict pivot:   {}", self.pivot)?;
        writeln!(f, "  route via k+1 at q^2k+1: {}", self.floor_case)?;
        writeln!(f, "  route via k+1:  {}", self.upper_route)?;
        write!(f, "  chain {}", if self.chain_holds { "holds" } else { "FAILS" })
    }
}

pub fn johnson_cascade_check(q: u32, k: u32, improved_upper: &BigUint) -> Result<CascadeReport, BoundsError> {
    check_q(q)?;
    if k < 3 {
        return domain(format!("cascade check needs k >= 3 (k = {k})"));
    }
    let floor_value = pow(q, 2 * k) + BigUint::one();
    if *improved_upper < floor_value {
        return domain(format!("improved upper bound {improved_upper} is below q^2k + 1 = {floor_value}"));
    }
    let int = |x: BigUint| BigInt::from(x);
    let rat = |n: BigUint, d: BigUint| BigRational::new(int(n), int(d));
    let top = qnum(q, 2 * k + 1);
    let lower_route = rat(top.clone(), qnum(q, k)) * rat(qnum(q, 2 * k), qnum(q, k - 1));
    let factor = rat(top, qnum(q, k + 1));
    let pivot = &factor * BigRational::from_integer(int(pow(q, 2 * k)));
    let floor_of = |x: BigRational| -> BigUint { x.floor().to_integer().to_biguint().expect("non-negative") };
    let floor_case = floor_of(&factor * BigRational::from_integer(int(floor_value)));
    let upper_route = floor_of(&factor * BigRational::from_integer(int(improved_upper.clone())));
    let lower_route_floor = floor_of(lower_route.clone());
    let chain_holds = lower_route < pivot
        && pivot <= BigRational::from_integer(int(floor_case.clone()))
        && floor_case <= upper_route
        && lower_route_floor <= upper_route;
    Ok(CascadeReport {
        q,
        k,
        improved_upper: improved_upper.clone(),
        lower_route,
        lower_route_floor,
        pivot,
        floor_case,
        upper_route,
        chain_holds,
    })
}

/// Renders a rational as an integer or a terminating decimal when possible,
/// otherwise as `p/q`.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        return x.to_integer().to_string();
    }
    let mut den = x.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut digits = 0usize;
    while den.is_multiple_of(&two) {
        den /= &two;
        digits += 1;
    }
    let mut fives = 0usize;
    while den.is_multiple_of(&five) {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", x.numer(), x.denom());
    }
    let digits = digits.max(fives);
    let scaled = x * BigRational::from_integer(BigInt::from(10).pow(digits as u32));
    let n = scaled.to_integer();
    let neg = n < BigInt::zero();
    let s = n.magnitude().to_string();
    let s = format!("{:0>width$}", s, width = digits + 1);
    let (int_part, frac) = s.split_at(s.len() - digits);
    format!("{}{int_part}.{frac}", if neg { "-" } else { "" })
}
