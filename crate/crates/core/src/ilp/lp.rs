use std::io::{self, Write};

use super::{IlpError, IlpModel, Relation, Term};

/// Which variable-domain sections to write.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpVariant {
    /// Fixings under `Bounds`, every variable under `Binary`.
    Binary,
    /// Every variable bounded by `0 <= x <= 1` or fixed, no `Binary` section.
    Relaxed,
}

const TERMS_PER_LINE: usize = 12;

fn write_terms<W: Write>(w: &mut W, model: &IlpModel, terms: &[Term]) -> io::Result<()> {
    if terms.is_empty() {
        return write!(w, " 0");
    }
    for (i, t) in terms.iter().enumerate() {
        if i > 0 && i % TERMS_PER_LINE == 0 {
            write!(w, "\n   ")?;
        }
        let sign = if t.coef < 0 { '-' } else { '+' };
        let name = model.var_name(t.var);
        match (i, t.coef.unsigned_abs()) {
            (0, 1) if t.coef > 0 => write!(w, " {name}")?,
            (0, c) if t.coef > 0 => write!(w, " {c} {name}")?,
            (_, 1) => write!(w, " {sign} {name}")?,
            (_, c) => write!(w, " {sign} {c} {name}")?,
        }
    }
    Ok(())
}

/// Writes the model in LP text format. The output depends only on the model.
pub fn write_lp<W: Write>(model: &IlpModel, w: &mut W, variant: LpVariant) -> io::Result<()> {
    writeln!(w, "\\ {}", model.name())?;
    for fam in model.families() {
        writeln!(w, "\\ family {}: {} constraints, rhs {}", fam.name, fam.count, fam.rhs)?;
        for line in &fam.derivation {
            writeln!(w, "\\   {line}")?;
        }
    }
    writeln!(w, "Maximize")?;
    write!(w, " obj:")?;
    write_terms(w, model, model.objective())?;
    writeln!(w)?;
    writeln!(w, "Subject To")?;
    for c in model.constraints() {
        write!(w, " {}:", c.name)?;
        write_terms(w, model, &c.terms)?;
        writeln!(w, " {} {}", c.relation.symbol(), c.rhs)?;
    }
    match variant {
        LpVariant::Binary => {
            if !model.fixings().is_empty() {
                writeln!(w, "Bounds")?;
                for (&v, &val) in model.fixings() {
                    writeln!(w, " {} = {val}", model.var_name(v))?;
                }
            }
            writeln!(w, "Binary")?;
            for name in model.vars() {
                writeln!(w, " {name}")?;
            }
        }
        LpVariant::Relaxed => {
            writeln!(w, "Bounds")?;
            for (i, name) in model.vars().iter().enumerate() {
                match model.fixings().get(&(i as u32)) {
                    Some(val) => writeln!(w, " {name} = {val}")?,
                    None => writeln!(w, " 0 <= {name} <= 1")?,
                }
            }
        }
    }
    writeln!(w, "End")
}

fn to_string(model: &IlpModel, variant: LpVariant) -> String {
    let mut buf = Vec::new();
    write_lp(model, &mut buf, variant).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("LP text is ASCII")
}

/// The binary model as LP text.
pub fn export_model(model: &IlpModel) -> String {
    to_string(model, LpVariant::Binary)
}

/// The LP relaxation as LP text, for an external LP solver.
pub fn relax_note(model: &IlpModel) -> String {
    to_string(model, LpVariant::Relaxed)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Head,
    Objective,
    Constraints,
    Bounds,
    Binary,
    Done,
}

fn lp_err(line: usize, text: impl Into<String>) -> IlpError {
    IlpError::BadValue { line, text: text.into() }
}

/// Parses `[+|-] [coef] name ...` into (coefficient, name) pairs.
fn parse_terms(toks: &[&str], line: usize) -> Result<Vec<(i32, String)>, IlpError> {
    let mut out = Vec::new();
    let mut sign = 1i32;
    let mut coef: Option<i32> = None;
    for &t in toks {
        match t {
            "+" => sign = 1,
            "-" => sign = -1,
            _ if t.chars().next().is_some_and(|c| c.is_ascii_digit()) => {
                coef = Some(t.parse().map_err(|_| lp_err(line, t))?);
            }
            _ => {
                out.push((sign * coef.take().unwrap_or(1), t.to_string()));
                sign = 1;
            }
        }
    }
    if coef.is_some() {
        return Err(lp_err(line, "dangling coefficient"));
    }
    Ok(out)
}

/// Reads the LP subset written by [`write_lp`].
///
/// Variables are numbered in the order of the `Binary` section, or of the
/// `Bounds` section for relaxed files. Comments and family notes are not
/// recovered.
pub fn parse_lp(text: &str) -> Result<IlpModel, IlpError> {
    let mut name = String::new();
    let mut section = Section::Head;
    let mut objective: Vec<(i32, String)> = Vec::new();
    let mut rows: Vec<(String, Vec<(i32, String)>, Relation, i64)> = Vec::new();
    let mut pending: Vec<String> = Vec::new();
    let mut pending_line = 0;
    let mut bounded: Vec<String> = Vec::new();
    let mut binary: Vec<String> = Vec::new();
    let mut fixings: Vec<(String, u8)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        if let Some(c) = raw.strip_prefix('\\') {
            if name.is_empty() && section == Section::Head {
                name = c.trim().to_string();
            }
            continue;
        }
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        match line.to_ascii_lowercase().as_str() {
            "maximize" | "maximise" | "max" => {
                section = Section::Objective;
                continue;
            }
            "subject to" | "such that" | "st" | "s.t." => {
                section = Section::Constraints;
                continue;
            }
            "bounds" => {
                section = Section::Bounds;
                continue;
            }
            "binary" | "binaries" | "bin" => {
                section = Section::Binary;
                continue;
            }
            "end" => {
                section = Section::Done;
                continue;
            }
            _ => {}
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match section {
            Section::Head | Section::Done => return Err(lp_err(line_no, line)),
            Section::Objective => {
                let body = toks.strip_prefix(&["obj:"]).unwrap_or(&toks);
                objective.extend(parse_terms(body, line_no)?.into_iter().filter(|(_, n)| n != "0"));
            }
            Section::Constraints => {
                if pending.is_empty() {
                    pending_line = line_no;
                }
                pending.extend(toks.iter().map(|t| t.to_string()));
                let n = pending.len();
                if n >= 2 && matches!(pending[n - 2].as_str(), "<=" | "=" | "=<") {
                    let Some(label) = pending[0].strip_suffix(':') else {
                        return Err(lp_err(pending_line, "constraint without name"));
                    };
                    let rel = if pending[n - 2] == "=" { Relation::Eq } else { Relation::Le };
                    let rhs: i64 = pending[n - 1].parse().map_err(|_| lp_err(line_no, pending[n - 1].clone()))?;
                    let body: Vec<&str> = pending[1..n - 2].iter().map(String::as_str).filter(|t| *t != "0").collect();
                    rows.push((label.to_string(), parse_terms(&body, pending_line)?, rel, rhs));
                    pending.clear();
                }
            }
            Section::Bounds => match toks.as_slice() {
                [v, "=", x] => {
                    let x: u8 = x.parse().map_err(|_| lp_err(line_no, line))?;
                    bounded.push(v.to_string());
                    fixings.push((v.to_string(), x));
                }
                ["0", "<=", v, "<=", "1"] => bounded.push(v.to_string()),
                _ => return Err(lp_err(line_no, line)),
            },
            Section::Binary => binary.extend(toks.iter().map(|t| t.to_string())),
        }
    }
    if !pending.is_empty() {
        return Err(lp_err(pending_line, "unterminated constraint"));
    }
    let mut m = IlpModel::new(name);
    let mut seen = std::collections::HashSet::new();
    let order = if binary.is_empty() { &bounded } else { &binary };
    for v in order.iter().chain(objective.iter().map(|(_, n)| n)).chain(rows.iter().flat_map(|r| r.1.iter().map(|(_, n)| n))) {
        if seen.insert(v.clone()) {
            m.add_var(v.clone())?;
        }
    }
    let term = |m: &IlpModel, (c, n): &(i32, String)| Term { var: m.var_index(n).expect("declared above"), coef: *c };
    let obj: Vec<Term> = objective.iter().map(|t| term(&m, t)).collect();
    m.set_objective(obj);
    for (label, terms, rel, rhs) in &rows {
        let ts: Vec<Term> = terms.iter().map(|t| term(&m, t)).collect();
        m.add_constraint(label.clone(), ts, *rel, *rhs);
    }
    for (v, x) in fixings {
        let var = m.var_index(&v).expect("declared above");
        m.fix(var, x)?;
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::super::Relation;
    use super::*;

    fn tiny() -> IlpModel {
        let mut m = IlpModel::new("tiny");
        let a = m.add_var("a".into()).unwrap();
        let b = m.add_var("b".into()).unwrap();
        let y = m.add_var("y".into()).unwrap();
        m.set_objective(vec![Term::unit(a), Term::unit(b)]);
        m.add_constraint("r1".into(), vec![Term::unit(a), Term::unit(b)], Relation::Le, 1);
        m.add_constraint("r2".into(), vec![Term::unit(a), Term { var: y, coef: -2 }], Relation::Eq, 0);
        m.fix(a, 1).unwrap();
        m
    }

    #[test]
    fn binary_text() {
        let text = export_model(&tiny());
        assert_eq!(
            text,
            "\\ tiny\nMaximize\n obj: a + b\nSubject To\n r1: a + b <= 1\n r2: a - 2 y = 0\n\
             Bounds\n a = 1\nBinary\n a\n b\n y\nEnd\n"
        );
    }

    #[test]
    fn relaxation_differs_only_in_domains() {
        let m = tiny();
        let (bin, rel) = (export_model(&m), relax_note(&m));
        let head = |s: &str| s.split("Bounds").next().unwrap().to_string();
        assert_eq!(head(&bin), head(&rel));
        assert!(rel.contains(" a = 1\n 0 <= b <= 1\n 0 <= y <= 1\nEnd\n"));
        assert!(!rel.contains("Binary"));
    }

    #[test]
    fn parse_roundtrip() {
        let m = tiny();
        for text in [export_model(&m), relax_note(&m)] {
            let back = parse_lp(&text).unwrap();
            assert_eq!(back.vars(), m.vars());
            assert_eq!(back.constraints(), m.constraints());
            assert_eq!(back.fixings(), m.fixings());
            assert_eq!(back.objective(), m.objective());
            assert_eq!(export_model(&back), export_model(&m));
        }
        let mut long = IlpModel::new("long");
        for i in 0..30 {
            long.add_var(format!("v{i}")).unwrap();
        }
        long.set_objective((0..30).map(Term::unit).collect());
        long.add_constraint("all".into(), (0..30).map(|v| Term { var: v, coef: 3 }).collect(), Relation::Le, 7);
        let text = export_model(&long);
        assert_eq!(export_model(&parse_lp(&text).unwrap()), text);
        assert!(parse_lp("Maximize\n obj: a\nSubject To\n r: a <=\n").is_err());
    }
}
