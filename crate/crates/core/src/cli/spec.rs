//! Line-oriented algebra spec documents:
//!
//! ```text
//! name = P1
//! [generators]
//! x1 : odd
//! y1 : odd
//! [bracket]
//! {x1, y1} = 1
//! [hopf]
//! delta x1 = x1 @ 1 + 1 @ x1
//! epsilon x1 = 0
//! antipode x1 = -x1
//! [ore]
//! var x
//! alpha y1 = 2*y1
//! delta y1 = 0
//! ```
//! `#` starts a comment. Each `var` line in `[ore]` starts a new even
//! variable whose `alpha`/`delta` images may use every earlier generator.

use std::fmt;

use super::expr::{eval_poly, eval_tensor, parse_expr, ExprError};
use crate::error::{Error, Result};
use crate::hopf::HopfData;
use crate::ore::OreData;
use crate::poisson::BracketTable;
use crate::supercore::{Algebra, AlgebraRef, Generator, Parity, SuperPolynomial, Superderivation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for SpecError {}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HopfSpec {
    pub delta: Vec<(String, String)>,
    pub epsilon: Vec<(String, String)>,
    pub antipode: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OreStage {
    pub var: String,
    pub alpha: Vec<(String, String)>,
    pub delta: Vec<(String, String)>,
}

/// A parsed and validated spec. Values are kept as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    pub name: String,
    pub generators: Vec<(String, Parity)>,
    pub bracket: Vec<(String, String, String)>,
    pub hopf: Option<HopfSpec>,
    pub ore: Vec<OreStage>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Header,
    Generators,
    Bracket,
    Hopf,
    Ore,
}

fn is_ident(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(f) if f.is_alphabetic() || f == '_')
        && c.all(|ch| ch.is_alphanumeric() || ch == '_' || ch == '.')
}

struct Line<'a> {
    no: usize,
    raw: &'a str,
}

impl<'a> Line<'a> {
    fn error<T>(&self, at: &str, message: impl Into<String>) -> std::result::Result<T, SpecError> {
        // `at` is a subslice of `raw` when possible, which gives its column.
        let column = match (at.as_ptr() as usize).checked_sub(self.raw.as_ptr() as usize) {
            Some(off) if off <= self.raw.len() => self.raw[..off].chars().count() + 1,
            _ => 1,
        };
        Err(SpecError { line: self.no, column, message: message.into() })
    }

    fn expr_error<T>(&self, value: &str, e: ExprError) -> std::result::Result<T, SpecError> {
        let start = (value.as_ptr() as usize).saturating_sub(self.raw.as_ptr() as usize);
        let column = self.raw[..start.min(self.raw.len())].chars().count() + e.column;
        Err(SpecError { line: self.no, column, message: e.message })
    }
}

/// `key rest = value` with `key` one word; returns (key, rest, value).
fn split_assignment<'a>(line: &Line<'a>, body: &'a str) -> std::result::Result<(&'a str, &'a str, &'a str), SpecError> {
    let Some(eq) = body.find('=') else {
        return line.error(body, "expected `=`");
    };
    let (lhs, value) = (body[..eq].trim(), body[eq + 1..].trim());
    let mut parts = lhs.splitn(2, char::is_whitespace);
    let key = parts.next().unwrap_or("");
    let rest = parts.next().unwrap_or("").trim();
    if value.is_empty() {
        return line.error(&body[eq..], "missing value after `=`");
    }
    Ok((key, rest, value))
}

fn poly_at(line: &Line, value: &str, alg: &AlgebraRef) -> std::result::Result<SuperPolynomial, SpecError> {
    match parse_expr(value).and_then(|e| eval_poly(&e, alg)) {
        Ok(p) => Ok(p),
        Err(e) => line.expr_error(value, e),
    }
}

fn generator_at(line: &Line, name: &str, alg: &AlgebraRef) -> std::result::Result<usize, SpecError> {
    match alg.index_of(name) {
        Some(i) => Ok(i),
        None => line.error(name, format!("unknown generator `{name}`")),
    }
}

fn check_parity(
    line: &Line,
    at: &str,
    p: &SuperPolynomial,
    want: Parity,
    what: &str,
) -> std::result::Result<(), SpecError> {
    if p.is_zero() {
        return Ok(());
    }
    match p.parity() {
        Some(q) if q == want => Ok(()),
        Some(q) => line.error(at, format!("{what} must be {want}, got {q} value {p}")),
        None => line.error(at, format!("{what} has mixed parity")),
    }
}

fn algebra_of(gens: &[(String, Parity)]) -> Result<AlgebraRef> {
    Algebra::new(gens.iter().map(|(n, p)| Generator::new(n.clone(), *p)).collect())
}

fn lift(e: Error) -> SpecError {
    SpecError { line: 0, column: 0, message: e.to_string() }
}

pub fn parse_spec(doc: &str) -> std::result::Result<AlgebraSpec, SpecError> {
    let mut spec =
        AlgebraSpec { name: String::new(), generators: Vec::new(), bracket: Vec::new(), hopf: None, ore: Vec::new() };
    let mut section = Section::Header;
    let mut alg: Option<AlgebraRef> = None;
    let mut builder: Option<crate::poisson::TableBuilder> = None;
    // Algebra in force for the current ore stage.
    let mut ore_alg: Option<AlgebraRef> = None;
    let mut seen_sections: Vec<&str> = Vec::new();

    let lines: Vec<&str> = doc.lines().collect();
    for (idx, raw) in lines.iter().enumerate() {
        let line = Line { no: idx + 1, raw };
        let body = raw.split('#').next().unwrap_or("").trim();
        let body_ref = {
            let start = raw.find(body).unwrap_or(0);
            &raw[start..start + body.len()]
        };
        if body.is_empty() {
            continue;
        }
        if body.starts_with('[') {
            let name = body.trim_start_matches('[').trim_end_matches(']').trim();
            if !body.ends_with(']') {
                return line.error(body_ref, "expected `]`");
            }
            if seen_sections.contains(&name) {
                return line.error(body_ref, format!("section [{name}] appears twice"));
            }
            let next = match name {
                "generators" => Section::Generators,
                "bracket" => Section::Bracket,
                "hopf" => Section::Hopf,
                "ore" => Section::Ore,
                _ => return line.error(body_ref, format!("unknown section [{name}]")),
            };
            let order = |s: Section| s as u8;
            if order(next) <= order(section) {
                return line.error(body_ref, "sections must appear in the order generators, bracket, hopf, ore");
            }
            if next != Section::Generators && alg.is_none() {
                let a = algebra_of(&spec.generators).map_err(lift)?;
                builder = Some(BracketTable::builder(&a));
                alg = Some(a);
            }
            if next == Section::Hopf {
                spec.hopf = Some(HopfSpec::default());
            }
            seen_sections.push(match next {
                Section::Generators => "generators",
                Section::Bracket => "bracket",
                Section::Hopf => "hopf",
                _ => "ore",
            });
            section = next;
            continue;
        }
        match section {
            Section::Header => {
                let (key, rest, value) = split_assignment(&line, body_ref)?;
                if key != "name" || !rest.is_empty() {
                    return line.error(body_ref, "expected `name = ...` before the first section");
                }
                spec.name = value.to_string();
            }
            Section::Generators => {
                let Some(colon) = body_ref.find(':') else {
                    return line.error(body_ref, "expected `name : even|odd`");
                };
                let name = body_ref[..colon].trim();
                let par = body_ref[colon + 1..].trim();
                if !is_ident(name) {
                    return line.error(body_ref, format!("`{name}` is not a valid generator name"));
                }
                let parity = match par {
                    "even" => Parity::Even,
                    "odd" => Parity::Odd,
                    _ => return line.error(par, format!("parity must be `even` or `odd`, got `{par}`")),
                };
                if spec.generators.iter().any(|(n, _)| n == name) {
                    return line.error(name, format!("generator `{name}` declared twice"));
                }
                spec.generators.push((name.to_string(), parity));
            }
            Section::Bracket => {
                let a = alg.as_ref().expect("set on entering the section");
                let open = body_ref.find('{');
                let close = body_ref.find('}');
                let (Some(open), Some(close)) = (open, close) else {
                    return line.error(body_ref, "expected `{a, b} = value`");
                };
                let inner = &body_ref[open + 1..close];
                let Some(comma) = inner.find(',') else {
                    return line.error(inner, "expected `{a, b}`");
                };
                let (l, r) = (inner[..comma].trim(), inner[comma + 1..].trim());
                let after = body_ref[close + 1..].trim_start();
                let Some(value) = after.strip_prefix('=') else {
                    return line.error(after, "expected `=`");
                };
                let value = value.trim();
                if value.is_empty() {
                    return line.error(after, "missing value after `=`");
                }
                let i = generator_at(&line, l, a)?;
                let j = generator_at(&line, r, a)?;
                let p = poly_at(&line, value, a)?;
                if let Err(e) = builder.as_mut().expect("set with alg").set(i, j, p) {
                    return line.error(value, e.to_string());
                }
                spec.bracket.push((l.to_string(), r.to_string(), value.to_string()));
            }
            Section::Hopf => {
                let a = alg.as_ref().expect("set on entering the section");
                let (key, gen, value) = split_assignment(&line, body_ref)?;
                let g = generator_at(&line, gen, a)?;
                let want = a.parity(g);
                let h = spec.hopf.as_mut().expect("set on entering the section");
                let list = match key {
                    "delta" => {
                        let t = match parse_expr(value).and_then(|e| eval_tensor(&e, a)) {
                            Ok(t) => t,
                            Err(e) => return line.expr_error(value, e),
                        };
                        if !t.is_zero() && t.parity() != Some(want) {
                            return line.error(value, format!("delta {gen} must be {want}"));
                        }
                        &mut h.delta
                    }
                    "epsilon" => {
                        let p = poly_at(&line, value, a)?;
                        if p.degree().unwrap_or(0) > 0 {
                            return line.error(value, "epsilon values must be constants");
                        }
                        if want.is_odd() && !p.is_zero() {
                            return line
                                .error(value, format!("epsilon vanishes on odd generators, but `{gen}` is odd"));
                        }
                        &mut h.epsilon
                    }
                    "antipode" => {
                        let p = poly_at(&line, value, a)?;
                        check_parity(&line, value, &p, want, &format!("antipode {gen}"))?;
                        &mut h.antipode
                    }
                    _ => {
                        return line
                            .error(body_ref, format!("unknown hopf key `{key}`, expected delta, epsilon or antipode"))
                    }
                };
                if list.iter().any(|(n, _)| n == gen) {
                    return line.error(gen, format!("{key} {gen} given twice"));
                }
                list.push((gen.to_string(), value.to_string()));
            }
            Section::Ore => {
                if let Some(var) = body_ref.strip_prefix("var ") {
                    let var = var.trim();
                    if !is_ident(var) {
                        return line.error(var, format!("`{var}` is not a valid variable name"));
                    }
                    let base = ore_alg.clone().unwrap_or_else(|| alg.clone().expect("set on entering the section"));
                    if base.index_of(var).is_some() {
                        return line.error(var, format!("`{var}` is already a generator"));
                    }
                    if let Some(prev) = spec.ore.last() {
                        let extended = base.extended(Generator::even(prev.var.clone())).map_err(lift)?;
                        if extended.index_of(var).is_some() {
                            return line.error(var, format!("`{var}` is already a generator"));
                        }
                        ore_alg = Some(extended);
                    } else {
                        ore_alg = Some(base);
                    }
                    spec.ore.push(OreStage { var: var.to_string(), alpha: Vec::new(), delta: Vec::new() });
                    continue;
                }
                let Some(stage) = spec.ore.last_mut() else {
                    return line.error(body_ref, "expected `var NAME` first");
                };
                let a = ore_alg.as_ref().expect("set with the stage");
                let (key, gen, value) = split_assignment(&line, body_ref)?;
                let g = generator_at(&line, gen, a)?;
                let p = poly_at(&line, value, a)?;
                check_parity(&line, value, &p, a.parity(g), &format!("{key} {gen}"))?;
                let list = match key {
                    "alpha" => &mut stage.alpha,
                    "delta" => &mut stage.delta,
                    _ => return line.error(body_ref, format!("unknown ore key `{key}`, expected alpha or delta")),
                };
                if list.iter().any(|(n, _)| n == gen) {
                    return line.error(gen, format!("{key} {gen} given twice"));
                }
                list.push((gen.to_string(), value.to_string()));
            }
        }
    }

    if let Some(h) = &spec.hopf {
        for (g, _) in &spec.generators {
            for (key, list) in [("delta", &h.delta), ("epsilon", &h.epsilon), ("antipode", &h.antipode)] {
                if !list.iter().any(|(n, _)| n == g) {
                    return Err(SpecError {
                        line: lines.len(),
                        column: 1,
                        message: format!("[hopf] is missing `{key} {g}`"),
                    });
                }
            }
        }
    }
    algebra_of(&spec.generators).map_err(lift)?;
    Ok(spec)
}

fn eval(value: &str, alg: &AlgebraRef) -> Result<SuperPolynomial> {
    parse_expr(value).and_then(|e| eval_poly(&e, alg)).map_err(|e| Error::InvalidArgument(e.to_string()))
}

impl AlgebraSpec {
    pub fn algebra(&self) -> Result<AlgebraRef> {
        algebra_of(&self.generators)
    }

    pub fn table(&self) -> Result<BracketTable> {
        let alg = self.algebra()?;
        let mut b = BracketTable::builder(&alg);
        for (l, r, v) in &self.bracket {
            b.set_named(l, r, eval(v, &alg)?)?;
        }
        Ok(b.build())
    }

    /// The Hopf data of the `[hopf]` section, validated against the bracket.
    pub fn hopf_data(&self) -> Result<Option<HopfData>> {
        let Some(h) = &self.hopf else { return Ok(None) };
        let table = self.table()?;
        let alg = table.algebra().clone();
        let lookup = |list: &[(String, String)], g: &str| list.iter().find(|(n, _)| n == g).map(|(_, v)| v.clone());
        let mut delta = Vec::new();
        let mut epsilon = Vec::new();
        let mut antipode = Vec::new();
        for (g, _) in &self.generators {
            let missing = || Error::InvalidArgument(format!("[hopf] is missing a value for `{g}`"));
            let d = lookup(&h.delta, g).ok_or_else(missing)?;
            delta.push(
                parse_expr(&d)
                    .and_then(|e| eval_tensor(&e, &alg))
                    .map_err(|e| Error::InvalidArgument(e.to_string()))?,
            );
            epsilon.push(eval(&lookup(&h.epsilon, g).ok_or_else(missing)?, &alg)?.constant_term());
            antipode.push(eval(&lookup(&h.antipode, g).ok_or_else(missing)?, &alg)?);
        }
        HopfData::new(&table, delta, epsilon, antipode).map(Some)
    }

    /// The Ore stages in order; stage `k` has as base the extension by the
    /// variables of stages `0..k`. Stages are returned unvalidated.
    pub fn ore_stages(&self) -> Result<Vec<OreData>> {
        let mut out = Vec::new();
        let mut base = self.table()?;
        for stage in &self.ore {
            let alg = base.algebra().clone();
            let images = |list: &[(String, String)]| -> Result<Superderivation> {
                let mut v = Vec::new();
                for (g, val) in list {
                    let i = alg.index_of(g).ok_or_else(|| Error::UnknownSymbol(g.clone()))?;
                    v.push((i, eval(val, &alg)?));
                }
                Superderivation::from_images(&alg, Parity::Even, v)
            };
            let o = OreData::new(&base, stage.var.clone(), images(&stage.alpha)?, images(&stage.delta)?)?;
            base = o.extension_table()?;
            out.push(o);
        }
        Ok(out)
    }
}

/// The spec describing `table` (no Hopf or Ore data). Odd diagonals are
/// written out so the printed document carries no defaulted entries.
pub fn spec_from_table(name: &str, table: &BracketTable) -> AlgebraSpec {
    let alg = table.algebra();
    let generators = alg.generators().iter().map(|g| (g.name.clone(), g.parity)).collect();
    let mut bracket = Vec::new();
    for i in 0..alg.len() {
        for j in i..alg.len() {
            let v = table.entry(i, j);
            if !v.is_zero() || (i == j && alg.parity(i).is_odd()) {
                bracket.push((alg.name(i).to_string(), alg.name(j).to_string(), v.to_string()));
            }
        }
    }
    AlgebraSpec { name: name.to_string(), generators, bracket, hopf: None, ore: Vec::new() }
}

pub fn print_spec(spec: &AlgebraSpec) -> String {
    let mut out = String::new();
    if !spec.name.is_empty() {
        out.push_str(&format!("name = {}\n", spec.name));
    }
    out.push_str("\n[generators]\n");
    for (n, p) in &spec.generators {
        out.push_str(&format!("{n} : {p}\n"));
    }
    out.push_str("\n[bracket]\n");
    for (l, r, v) in &spec.bracket {
        out.push_str(&format!("{{{l}, {r}}} = {v}\n"));
    }
    if let Some(h) = &spec.hopf {
        out.push_str("\n[hopf]\n");
        for (key, list) in [("delta", &h.delta), ("epsilon", &h.epsilon), ("antipode", &h.antipode)] {
            for (g, v) in list {
                out.push_str(&format!("{key} {g} = {v}\n"));
            }
        }
    }
    if !spec.ore.is_empty() {
        out.push_str("\n[ore]\n");
        for s in &spec.ore {
            out.push_str(&format!("var {}\n", s.var));
            for (key, list) in [("alpha", &s.alpha), ("delta", &s.delta)] {
                for (g, v) in list {
                    out.push_str(&format!("{key} {g} = {v}\n"));
                }
            }
        }
    }
    out
}
