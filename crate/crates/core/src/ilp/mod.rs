//! Binary linear programs over subspace incidence, LP-format export and an
//! exact solution checker.
//!
//! Variables are named `x_<i>` after the enumeration index of a subspace and
//! `y_<i>` after the index of a point. All coefficients and right-hand sides
//! are integers.

mod build;
mod lp;
mod packing;
mod solution;

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::bounds::BoundsError;
use crate::clique::CliqueError;
use crate::codes::CodeError;
use crate::gf::FieldSpec;
use crate::grassmann::{GrassmannError, Grassmannian, Subspace};

pub use build::{
    build_blowup_model, build_extension_model, build_full_model, ExtensionModel, ExtensionOptions, ModelOptions,
};
pub use lp::{export_model, parse_lp, relax_note, write_lp, LpVariant};
pub use packing::{solve_packing, PackingResult};
pub use solution::{check_solution, import_solution, parse_value, Assignment, SolutionReport, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IlpError {
    #[error("invalid parameters: {0}")]
    Domain(String),
    #[error("right-hand side for dimension {dim}: {source}")]
    Rhs { dim: usize, source: BoundsError },
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("line {line}: unknown variable `{name}`")]
    UnknownVariable { line: usize, name: String },
    #[error("line {line}: cannot parse value `{text}`")]
    BadValue { line: usize, text: String },
    #[error("variable `{name}` has value {value} outside [0, 1]")]
    ValueOutOfRange { name: String, value: String },
    #[error("prescribed codewords {first} and {second} are at distance {distance} < {d}")]
    Conflict { first: usize, second: usize, distance: usize, d: usize },
    #[error("prescription violates constraint `{0}`")]
    FixingViolation(String),
    #[error("fixing `{0}` to 1 requires it in the objective")]
    FixingOutsideObjective(String),
    #[error("model is not a set packing problem: {0}")]
    NotPacking(String),
    #[error(transparent)]
    Grassmann(#[from] GrassmannError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Clique(#[from] CliqueError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Term {
    pub var: u32,
    pub coef: i32,
}

impl Term {
    pub fn unit(var: u32) -> Self {
        Term { var, coef: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    pub terms: Vec<Term>,
    pub relation: Relation,
    pub rhs: i64,
}

/// A group of constraints sharing one right-hand side and its justification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub name: String,
    /// Dimension of the subspaces indexing the family, if any.
    pub dim: Option<usize>,
    pub count: usize,
    pub rhs: i64,
    pub derivation: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelStats {
    pub variables: usize,
    pub constraints: usize,
    pub nonzeros: usize,
    pub fixings: usize,
}

impl std::fmt::Display for ModelStats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} variables, {} constraints, {} nonzeros, {} fixings",
            self.variables, self.constraints, self.nonzeros, self.fixings
        )
    }
}

/// The Grassmannian whose subspaces the `x` variables stand for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubspaceVars {
    pub field: FieldSpec,
    pub v: usize,
    pub k: usize,
    /// Minimum distance a set of selected subspaces must respect.
    pub d: usize,
}

/// A maximization BLP over named binary variables.
#[derive(Debug, Clone)]
pub struct IlpModel {
    name: String,
    vars: Vec<String>,
    index: HashMap<String, u32>,
    objective: Vec<Term>,
    in_objective: Vec<bool>,
    constraints: Vec<Constraint>,
    fixings: BTreeMap<u32, u8>,
    families: Vec<Family>,
    subspaces: Option<SubspaceVars>,
}

pub fn x_name(index: u64) -> String {
    format!("x_{index}")
}

pub fn y_name(index: u64) -> String {
    format!("y_{index}")
}

impl IlpModel {
    pub fn new(name: impl Into<String>) -> Self {
        IlpModel {
            name: name.into(),
            vars: Vec::new(),
            index: HashMap::new(),
            objective: Vec::new(),
            in_objective: Vec::new(),
            constraints: Vec::new(),
            fixings: BTreeMap::new(),
            families: Vec::new(),
            subspaces: None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn add_var(&mut self, name: String) -> Result<u32, IlpError> {
        if self.index.contains_key(&name) {
            return Err(IlpError::DuplicateVariable(name));
        }
        let i = self.vars.len() as u32;
        self.index.insert(name.clone(), i);
        self.vars.push(name);
        self.in_objective.push(false);
        Ok(i)
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_name(&self, var: u32) -> &str {
        &self.vars[var as usize]
    }

    pub fn var_index(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn set_objective(&mut self, mut terms: Vec<Term>) {
        terms.sort_by_key(|t| t.var);
        self.in_objective.iter_mut().for_each(|b| *b = false);
        for t in &terms {
            self.in_objective[t.var as usize] = t.coef != 0;
        }
        self.objective = terms;
    }

    pub fn objective(&self) -> &[Term] {
        &self.objective
    }

    /// Appends a constraint; terms are sorted by variable.
    pub fn add_constraint(&mut self, name: String, mut terms: Vec<Term>, relation: Relation, rhs: i64) {
        debug_assert!(terms.iter().all(|t| (t.var as usize) < self.vars.len()));
        terms.sort_by_key(|t| t.var);
        self.constraints.push(Constraint { name, terms, relation, rhs });
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn fix(&mut self, var: u32, value: u8) -> Result<(), IlpError> {
        if value > 1 {
            return Err(IlpError::ValueOutOfRange { name: self.vars[var as usize].clone(), value: value.to_string() });
        }
        if value == 1 && !self.in_objective[var as usize] {
            return Err(IlpError::FixingOutsideObjective(self.vars[var as usize].clone()));
        }
        self.fixings.insert(var, value);
        Ok(())
    }

    pub fn fixings(&self) -> &BTreeMap<u32, u8> {
        &self.fixings
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn add_family(&mut self, family: Family) {
        self.families.push(family);
    }

    pub(crate) fn set_subspace_vars(&mut self, sv: SubspaceVars) {
        self.subspaces = Some(sv);
    }

    pub fn subspace_vars(&self) -> Option<SubspaceVars> {
        self.subspaces
    }

    pub fn stats(&self) -> ModelStats {
        ModelStats {
            variables: self.vars.len(),
            constraints: self.constraints.len(),
            nonzeros: self.constraints.iter().map(|c| c.terms.len()).sum(),
            fixings: self.fixings.len(),
        }
    }

    /// The variable of a subspace, if the model has one.
    pub fn subspace_var(&self, u: &Subspace) -> Result<Option<u32>, IlpError> {
        let Some(sv) = self.subspaces else {
            return Err(IlpError::Domain("model has no subspace variables".into()));
        };
        if u.field() != sv.field || u.ambient() != sv.v || u.dim() != sv.k {
            return Err(IlpError::Domain(format!("{u} is not a {}-subspace of the model's ambient space", sv.k)));
        }
        let idx = Grassmannian::new(sv.field, sv.v, sv.k)?.index_of(u)?;
        Ok(self.var_index(&x_name(idx)))
    }

    /// Fixes `x_U = 1` for every prescribed codeword.
    ///
    /// Fails without changing the model when two codewords are closer than the
    /// model's distance, or when the fixed ones alone exceed a right-hand side.
    pub fn prescribe(&mut self, codewords: &[Subspace]) -> Result<(), IlpError> {
        let Some(sv) = self.subspaces else {
            return Err(IlpError::Domain("model has no subspace variables".into()));
        };
        let mut vars = Vec::with_capacity(codewords.len());
        for u in codewords {
            let var = self
                .subspace_var(u)?
                .ok_or_else(|| IlpError::Domain(format!("{u} has no variable in this model")))?;
            vars.push(var);
        }
        for i in 0..codewords.len() {
            for j in i + 1..codewords.len() {
                let distance = codewords[i].distance(&codewords[j])?;
                if distance < sv.d {
                    return Err(IlpError::Conflict { first: i, second: j, distance, d: sv.d });
                }
            }
        }
        let mut ones: Vec<bool> = vec![false; self.vars.len()];
        for (&v, &val) in &self.fixings {
            ones[v as usize] = val == 1;
        }
        for &v in &vars {
            if !self.in_objective[v as usize] || self.fixings.get(&v) == Some(&0) {
                return Err(IlpError::FixingOutsideObjective(self.vars[v as usize].clone()));
            }
            ones[v as usize] = true;
        }
        for c in &self.constraints {
            let lhs: i64 = c.terms.iter().filter(|t| ones[t.var as usize]).map(|t| t.coef as i64).sum();
            let positive_only = c.terms.iter().all(|t| t.coef >= 0);
            if positive_only && lhs > c.rhs {
                return Err(IlpError::FixingViolation(c.name.clone()));
            }
        }
        for v in vars {
            self.fixings.insert(v, 1);
        }
        Ok(())
    }
}

/// Returns `model` with the codewords prescribed.
pub fn prescribe(mut model: IlpModel, codewords: &[Subspace]) -> Result<IlpModel, IlpError> {
    model.prescribe(codewords)?;
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variables_unique() {
        let mut m = IlpModel::new("t");
        m.add_var("a".into()).unwrap();
        assert_eq!(m.add_var("a".into()), Err(IlpError::DuplicateVariable("a".into())));
    }

    #[test]
    fn fixing_needs_objective() {
        let mut m = IlpModel::new("t");
        let a = m.add_var("a".into()).unwrap();
        let b = m.add_var("b".into()).unwrap();
        m.set_objective(vec![Term::unit(a)]);
        assert!(m.fix(a, 1).is_ok());
        assert!(matches!(m.fix(b, 1), Err(IlpError::FixingOutsideObjective(_))));
        assert!(m.fix(b, 0).is_ok());
        assert_eq!(m.stats().fixings, 2);
    }
}
