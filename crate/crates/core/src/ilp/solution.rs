use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{IlpError, IlpModel, Relation};
use crate::bounds::format_rational;

/// Values of the variables; absent variables are 0.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment {
    values: BTreeMap<u32, BigRational>,
}

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets every listed variable to 1.
    pub fn ones(vars: impl IntoIterator<Item = u32>) -> Self {
        let mut a = Self::new();
        for v in vars {
            a.set(v, BigRational::one());
        }
        a
    }

    pub fn set(&mut self, var: u32, value: BigRational) {
        if value.is_zero() {
            self.values.remove(&var);
        } else {
            self.values.insert(var, value);
        }
    }

    pub fn get(&self, var: u32) -> BigRational {
        self.values.get(&var).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Nonzero entries, by variable.
    pub fn nonzero(&self) -> impl Iterator<Item = (u32, &BigRational)> {
        self.values.iter().map(|(&v, x)| (v, x))
    }

    pub fn is_integral(&self) -> bool {
        self.values.values().all(|x| x.is_integer())
    }
}

/// Parses `12`, `-0.25`, `1.5e-3` or `7/8` exactly.
pub fn parse_value(text: &str) -> Option<BigRational> {
    let t = text.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        return (!q.is_zero()).then(|| BigRational::new(p, q));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(i) => (&t[..i], t[i + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("0{int}{frac}").parse().ok()?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut x = BigRational::from_integer(digits);
    if scale >= 0 {
        x *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        x /= BigRational::from_integer(num_traits::pow(ten, scale.unsigned_abs() as usize));
    }
    Some(if neg { -x } else { x })
}

/// Reads `name value` lines. Blank lines and lines starting with `#` or `\`
/// are skipped; `name = value` is also accepted.
pub fn import_solution(model: &IlpModel, text: &str) -> Result<Assignment, IlpError> {
    let mut a = Assignment::new();
    let mut seen: BTreeMap<u32, usize> = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('\\') {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().filter(|t| *t != "=").collect();
        let [name, value] = toks.as_slice() else {
            return Err(IlpError::BadValue { line: line_no, text: line.to_string() });
        };
        let var = model
            .var_index(name)
            .ok_or_else(|| IlpError::UnknownVariable { line: line_no, name: name.to_string() })?;
        let x = parse_value(value).ok_or_else(|| IlpError::BadValue { line: line_no, text: value.to_string() })?;
        if x < BigRational::zero() || x > BigRational::one() {
            return Err(IlpError::ValueOutOfRange { name: name.to_string(), value: value.to_string() });
        }
        if let Some(first) = seen.insert(var, line_no) {
            return Err(IlpError::BadValue { line: line_no, text: format!("{name} already assigned on line {first}") });
        }
        a.set(var, x);
    }
    Ok(a)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub constraint: String,
    pub lhs: BigRational,
    pub relation: Relation,
    pub rhs: i64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: lhs {} violates {} {}", self.constraint, format_rational(&self.lhs), self.relation.symbol(), self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionReport {
    pub objective: BigRational,
    /// Some value is strictly between 0 and 1, so this is at best an LP
    /// relaxation point.
    pub fractional: bool,
    pub violations: Vec<Violation>,
    /// `(variable, fixed value, actual value)`.
    pub fixing_violations: Vec<(String, u8, BigRational)>,
    pub out_of_range: Vec<(String, BigRational)>,
}

impl SolutionReport {
    pub fn feasible(&self) -> bool {
        self.violations.is_empty() && self.fixing_violations.is_empty() && self.out_of_range.is_empty()
    }
}

impl fmt::Display for SolutionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "objective: {}", format_rational(&self.objective))?;
        writeln!(f, "integral: {}", !self.fractional)?;
        writeln!(f, "feasible: {}", self.feasible())?;
        for (name, x) in &self.out_of_range {
            writeln!(f, "out of range: {name} = {}", format_rational(x))?;
        }
        for (name, want, got) in &self.fixing_violations {
            writeln!(f, "fixing violated: {name} = {} but fixed to {want}", format_rational(got))?;
        }
        for v in &self.violations {
            writeln!(f, "violated: {v}")?;
        }
        Ok(())
    }
}

fn satisfied<T: PartialOrd>(lhs: &T, rel: Relation, rhs: &T) -> bool {
    match rel {
        Relation::Le => lhs <= rhs,
        Relation::Eq => lhs == rhs,
    }
}

/// Checks every constraint and fixing exactly and recomputes the objective.
pub fn check_solution(model: &IlpModel, a: &Assignment) -> SolutionReport {
    let (zero, one) = (BigRational::zero(), BigRational::one());
    let mut report = SolutionReport {
        objective: BigRational::zero(),
        fractional: !a.is_integral(),
        violations: Vec::new(),
        fixing_violations: Vec::new(),
        out_of_range: Vec::new(),
    };
    for (v, x) in a.nonzero() {
        if *x < zero || *x > one {
            report.out_of_range.push((model.var_name(v).to_string(), x.clone()));
        }
    }
    for (&v, &want) in model.fixings() {
        let got = a.get(v);
        if got != BigRational::from_integer(want.into()) {
            report.fixing_violations.push((model.var_name(v).to_string(), want, got));
        }
    }
    let small: Option<Vec<i64>> = a.nonzero().all(|(_, x)| x.is_integer() && x.to_integer().to_i64().is_some()).then(|| {
        let mut dense = vec![0i64; model.num_vars()];
        for (v, x) in a.nonzero() {
            dense[v as usize] = x.to_integer().to_i64().unwrap();
        }
        dense
    });
    match small {
        Some(x) => {
            let eval = |terms: &[super::Term]| -> i128 {
                terms.iter().map(|t| t.coef as i128 * x[t.var as usize] as i128).sum()
            };
            report.objective = BigRational::from_integer(eval(model.objective()).into());
            for c in model.constraints() {
                let lhs = eval(&c.terms);
                if !satisfied(&lhs, c.relation, &(c.rhs as i128)) {
                    report.violations.push(Violation {
                        constraint: c.name.clone(),
                        lhs: BigRational::from_integer(lhs.into()),
                        relation: c.relation,
                        rhs: c.rhs,
                    });
                }
            }
        }
        None => {
            let mut dense: Vec<Option<&BigRational>> = vec![None; model.num_vars()];
            for (v, x) in a.nonzero() {
                dense[v as usize] = Some(x);
            }
            let eval = |terms: &[super::Term]| -> BigRational {
                let mut s = BigRational::zero();
                for t in terms {
                    if let Some(x) = dense[t.var as usize] {
                        s += x * BigRational::from_integer(t.coef.into());
                    }
                }
                s
            };
            report.objective = eval(model.objective());
            for c in model.constraints() {
                let lhs = eval(&c.terms);
                let rhs = BigRational::from_integer(c.rhs.into());
                if !satisfied(&lhs, c.relation, &rhs) {
                    report.violations.push(Violation { constraint: c.name.clone(), lhs, relation: c.relation, rhs: c.rhs });
                }
            }
        }
    }
    report
}
