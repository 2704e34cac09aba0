use num_traits::ToPrimitive;

use super::{x_name, y_name, Family, IlpError, IlpModel, Relation, SubspaceVars, Term};
use crate::bounds::{degree_bound, BoundsDb};
use crate::clique::{candidate_set, compatibility_graph, ConflictGraph};
use crate::codes::{verify, CodeClaim, SubspaceCode};
use crate::gf::FieldSpec;
use crate::grassmann::{Grassmannian, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModelOptions {
    /// Also emit the redundant families for the middle dimensions.
    pub full_constraints: bool,
    pub threads: usize,
}

impl Default for ModelOptions {
    fn default() -> Self {
        ModelOptions { full_constraints: false, threads: 1 }
    }
}

/// Enumeration indices of the `k`-subspaces incident with `a`, ascending.
fn incident_indices(a: &Subspace, gk: &Grassmannian) -> Result<Vec<u64>, IlpError> {
    let k = gk.dim();
    let near = if a.dim() <= k { a.superspaces(k)? } else { a.subspaces(k)? };
    let mut idx: Vec<u64> = Vec::with_capacity(near.len());
    for u in &near {
        idx.push(match u.packed() {
            Some(rows) => gk.index_of_packed(rows),
            None => gk.index_of(u)?,
        });
    }
    idx.sort_unstable();
    Ok(idx)
}

/// Incidence rows for every `a`-subspace, in enumeration order.
fn incidence_rows(ga: &Grassmannian, gk: &Grassmannian, threads: usize) -> Result<Vec<Vec<u64>>, IlpError> {
    let all = ga.materialize()?;
    let threads = threads.max(1);
    if threads == 1 || all.len() < 64 {
        return all.iter().map(|a| incident_indices(a, gk)).collect();
    }
    let chunk = all.len().div_ceil(threads);
    let parts: Vec<Result<Vec<Vec<u64>>, IlpError>> = std::thread::scope(|s| {
        let hs: Vec<_> = all
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|a| incident_indices(a, gk)).collect()))
            .collect();
        hs.into_iter().map(|h| h.join().expect("model builder panicked")).collect()
    });
    let mut out = Vec::with_capacity(all.len());
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Dimensions with constraint families and whether each is redundant.
fn family_dims(v: usize, k: usize, delta: usize, full: bool) -> Vec<usize> {
    (1..v)
        .filter(|&a| {
            let middle = a + delta >= k + 2 && a + 2 <= k + delta;
            !middle || full
        })
        .collect()
}

/// The BLP whose optimum is `A_q(v,d;k)`.
///
/// One variable per `k`-subspace. For each dimension `a` outside the
/// redundant middle range `k−δ+2 ..= k+δ−2` and every `a`-subspace `A`, the
/// codewords incident with `A` are bounded by the largest code that can pass
/// through or lie inside `A`. Right-hand sides come from
/// [`degree_bound`], and each family records its derivation.
pub fn build_full_model(
    q: u32,
    v: usize,
    d: usize,
    k: usize,
    db: &BoundsDb,
    opts: &ModelOptions,
) -> Result<IlpModel, IlpError> {
    if d % 2 != 0 || d < 2 || d > 2 * k || 2 * k > v {
        return Err(IlpError::Domain(format!("need even d with 2 <= d <= 2k <= v (v = {v}, d = {d}, k = {k})")));
    }
    let field = FieldSpec::new(q).map_err(crate::grassmann::GrassmannError::from)?;
    let gk = Grassmannian::new(field, v, k)?;
    gk.check_materializable()?;
    let n = gk.len();
    let mut m = IlpModel::new(format!("A_{q}({v},{d};{k})"));
    for i in 0..n {
        m.add_var(x_name(i))?;
    }
    m.set_objective((0..n as u32).map(Term::unit).collect());
    m.set_subspace_vars(SubspaceVars { field, v, k, d });

    let delta = d / 2;
    for a in family_dims(v, k, delta, opts.full_constraints) {
        let bound = degree_bound(q, v as u32, d as u32, k as u32, a as u32, db)
            .map_err(|source| IlpError::Rhs { dim: a, source })?;
        let rhs = bound.value.to_i64().ok_or_else(|| IlpError::Domain(format!("rhs {} overflows", bound.value)))?;
        let ga = Grassmannian::new(field, v, a)?;
        let rows = incidence_rows(&ga, &gk, opts.threads)?;
        m.add_family(Family {
            name: format!("c{a}"),
            dim: Some(a),
            count: rows.len(),
            rhs,
            derivation: bound.derivation.clone(),
        });
        for (i, row) in rows.into_iter().enumerate() {
            m.add_constraint(
                format!("c{a}_{i}"),
                row.into_iter().map(|u| Term::unit(u as u32)).collect(),
                Relation::Le,
                rhs,
            );
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtensionOptions {
    /// Require `F` to be a `(7,*,6;4)_2` code. When off, any set of solids is
    /// accepted; the model and graph are still well defined.
    pub checked: bool,
}

impl Default for ExtensionOptions {
    fn default() -> Self {
        ExtensionOptions { checked: true }
    }
}

/// The hyperplane BLP together with its candidate set and conflict graph.
///
/// Variable `i`, graph vertex `i` and `candidates[i]` refer to the same plane;
/// the graph label is its enumeration index.
#[derive(Debug, Clone)]
pub struct ExtensionModel {
    pub model: IlpModel,
    pub candidates: Vec<Subspace>,
    pub graph: ConflictGraph,
}

/// Planes of `F_2^7` meeting every solid of `f` in at most a point, with one
/// packing constraint per line. Lines in no candidate give no constraint.
pub fn build_extension_model(f: &SubspaceCode, opts: &ExtensionOptions) -> Result<ExtensionModel, IlpError> {
    if f.field() != FieldSpec::GF2 || f.ambient() != 7 || f.iter().any(|w| w.dim() != 4) {
        return Err(IlpError::Domain("F must consist of solids of F_2^7".into()));
    }
    if opts.checked {
        let report = verify(f, None)?;
        if report.min_distance.is_some_and(|d| d < 6) {
            let (i, j) = report.closest_pair.unwrap_or_default();
            return Err(IlpError::Domain(format!(
                "F is not a (7,*,6;4)_2 code: codewords {i} and {j} are at distance {}",
                report.min_distance.unwrap_or_default()
            )));
        }
    }
    let (labels, candidates): (Vec<u64>, Vec<Subspace>) = candidate_set(f, 3, 5)?.into_iter().unzip();
    let graph = compatibility_graph(&candidates, labels.clone(), 4)?;

    let mut m = IlpModel::new(format!("z(F), #F = {}", f.len()));
    for &l in &labels {
        m.add_var(x_name(l))?;
    }
    m.set_objective((0..labels.len() as u32).map(Term::unit).collect());
    m.set_subspace_vars(SubspaceVars { field: FieldSpec::GF2, v: 7, k: 3, d: 4 });

    let lines = Grassmannian::new(FieldSpec::GF2, 7, 2)?;
    let mut rows: Vec<Vec<Term>> = vec![Vec::new(); lines.len() as usize];
    for (var, u) in candidates.iter().enumerate() {
        for l in u.subspaces(2)? {
            rows[lines.index_of(&l)? as usize].push(Term::unit(var as u32));
        }
    }
    let used = rows.iter().filter(|r| !r.is_empty()).count();
    m.add_family(Family {
        name: "c2".into(),
        dim: Some(2),
        count: used,
        rhs: 1,
        derivation: vec!["two planes through a common line are at distance at most 2 < 4".into()],
    });
    for (i, row) in rows.into_iter().enumerate() {
        if !row.is_empty() {
            m.add_constraint(format!("c2_{i}"), row, Relation::Le, 1);
        }
    }
    Ok(ExtensionModel { model: m, candidates, graph })
}

/// `v ↦ (v | 0)` from `F_2^7` into `F_2^8`.
fn embed(u: &Subspace) -> Result<Subspace, IlpError> {
    let rows = u.packed().ok_or_else(|| IlpError::Domain("binary codes required".into()))?;
    Ok(Subspace::from_packed(8, rows)?)
}

/// The blow-up BLP for a hyperplane holding the plane code `f3` and the solid
/// code `f4`.
///
/// On top of the incidence families of `A_2(8,6;4)` for dimensions 1, 2, 6
/// and 7, the solids of `ι(f4)` are fixed to 1 and exactly one point `P` off
/// the hyperplane carries the 17 solids `⟨ι(U′), P⟩`, `U′ ∈ f3`.
pub fn build_blowup_model(
    f3: &SubspaceCode,
    f4: &SubspaceCode,
    db: &BoundsDb,
    opts: &ModelOptions,
) -> Result<IlpModel, IlpError> {
    for (code, claim, what) in [
        (f3, CodeClaim::new(2, 7, 17, 6, [3]), "(7,17,6;3)_2"),
        (f4, CodeClaim::new(2, 7, 16, 6, [4]), "(7,16,6;4)_2"),
    ] {
        let report = verify(code, Some(&claim))?;
        if !report.confirmed() {
            return Err(IlpError::Domain(format!("expected a {what} code, got {}", report.params())));
        }
    }
    let joint = verify(&f3.union(f4)?, None)?;
    if joint.min_distance.is_some_and(|d| d < 5) {
        return Err(IlpError::Domain(format!("F3 ∪ F4 has minimum distance {:?} < 5", joint.min_distance)));
    }

    let mut m = build_full_model(2, 8, 6, 4, db, &ModelOptions { full_constraints: false, ..*opts })?;
    m.name = "z(F3,F4)".into();
    let g4 = Grassmannian::new(FieldSpec::GF2, 8, 4)?;
    let points = Grassmannian::new(FieldSpec::GF2, 8, 1)?;

    for w in f4.iter() {
        let idx = g4.index_of(&embed(w)?)?;
        m.fix(idx as u32, 1)?;
    }
    let hyperplane_bit = 1u64 << 7;
    let q_points: Vec<(u64, Subspace)> =
        points.iter().indexed().filter(|(_, p)| p.packed().is_some_and(|r| r[0] & hyperplane_bit != 0)).collect();
    let mut y_vars = Vec::with_capacity(q_points.len());
    for (pi, _) in &q_points {
        y_vars.push(m.add_var(y_name(*pi))?);
    }
    let f3e: Vec<Subspace> = f3.iter().map(embed).collect::<Result<_, _>>()?;
    for ((pi, p), &y) in q_points.iter().zip(&y_vars) {
        let mut terms = Vec::with_capacity(f3e.len() + 1);
        for u in &f3e {
            terms.push(Term::unit(g4.index_of(&u.join(p)?)? as u32));
        }
        terms.push(Term { var: y, coef: -1 });
        m.add_constraint(format!("link_{pi}"), terms, Relation::Eq, 0);
    }
    m.add_family(Family {
        name: "link".into(),
        dim: None,
        count: q_points.len(),
        rhs: 0,
        derivation: vec!["a codeword through P off the hyperplane meets it in a plane of F3; P lies on all or none".into()],
    });
    m.add_constraint("ysum".into(), y_vars.iter().map(|&y| Term::unit(y)).collect(), Relation::Eq, 1);
    m.add_family(Family {
        name: "ysum".into(),
        dim: None,
        count: 1,
        rhs: 1,
        derivation: vec!["exactly one point off the hyperplane is chosen".into()],
    });
    Ok(m)
}
