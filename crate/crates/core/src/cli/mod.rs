//! The `superpoisson` command line: spec files in, reports out.
//!
//! Exit codes: 0 when every check passes, 1 on a mathematical failure,
//! 2 on malformed input.

pub mod expr;
pub mod spec;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::hopf::check_hopf_axioms;
use crate::kahler::kahler_check;
use crate::ore::{extend_ore, phi_iso_check};
use crate::poisson::{verify_poisson, PoissonFailure, StructureConstants};
use crate::uea::{
    default_symbol, pbw_basis, present_exterior, present_quadratic, render_word, symplectic_iso_check, Presentation,
    Uea, WeylAlgebra,
};
use expr::{eval_uea, eval_weyl, parse_expr};
use spec::{parse_spec, print_spec, spec_from_table, AlgebraSpec};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MATH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "superpoisson",
    version,
    about = "Poisson superalgebras, their enveloping algebras and related checks"
)]
pub struct Cli {
    /// Emit reports as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Quadratic,
    Exterior,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify super-antisymmetry and the Jacobi identity.
    Check { spec: PathBuf },
    /// Normalize an expression in m(..) and h(..) to PBW form.
    Normalize { spec: PathBuf, expr: String },
    /// List PBW normal forms with m-exponents <= dm and h-exponents <= dh per generator.
    Basis {
        spec: PathBuf,
        #[arg(long, default_value_t = 1)]
        dm: u32,
        #[arg(long, default_value_t = 1)]
        dh: u32,
    },
    /// Quadratic presentation of U(P) or of U(P^!) for a quadratic bracket.
    Present {
        spec: PathBuf,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Weyl superalgebra C_{p|q}: normalize an expression in X1.., Y1.., or
    /// compare C_{2n} with U(P_n).
    Weyl {
        #[arg(long, default_value_t = 0)]
        p: usize,
        #[arg(long, default_value_t = 0)]
        q: usize,
        #[arg(long)]
        check_symplectic: Option<usize>,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        expr: Option<String>,
    },
    /// Hopf axioms on U(A) for the [hopf] data, up to a PBW degree.
    HopfCheck {
        spec: PathBuf,
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Validate every [ore] stage.
    OreValidate { spec: PathBuf },
    /// Print the spec of the fully extended algebra.
    OreExtend { spec: PathBuf },
    /// Check the isomorphism of U(R[x]) with the iterated Ore extension, for the last stage.
    OreIso {
        spec: PathBuf,
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
    /// Lie-Rinehart checks on the Kahler differentials.
    KahlerCheck {
        spec: PathBuf,
        #[arg(long, default_value_t = 1)]
        degree: u32,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn input(msg: impl std::fmt::Display) -> Self {
        Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

fn code_for(e: &Error) -> i32 {
    match e {
        Error::NotPoisson(_) | Error::NotPoissonHopf(_) => EXIT_MATH,
        _ => EXIT_INPUT,
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        Outcome { code: code_for(&e), stdout: String::new(), stderr: format!("error: {e}\n") }
    }
}

fn load(path: &PathBuf) -> Result<AlgebraSpec, Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| Outcome::input(format!("{}: {e}", path.display())))?;
    parse_spec(&text).map_err(|e| Outcome::input(format!("{}: {e}", path.display())))
}

struct Out {
    json: bool,
    text: String,
    value: serde_json::Value,
    code: i32,
    stderr: String,
}

impl Out {
    fn new(json: bool) -> Self {
        Out { json, text: String::new(), value: serde_json::Value::Null, code: EXIT_PASS, stderr: String::new() }
    }

    fn line(&mut self, s: impl AsRef<str>) {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
    }

    fn report<T: Serialize>(&mut self, v: &T) {
        self.value = serde_json::to_value(v).expect("reports serialize");
    }

    fn finish(self) -> Outcome {
        let stdout = if self.json {
            let mut s = serde_json::to_string_pretty(&self.value).expect("json");
            s.push('\n');
            s
        } else {
            self.text
        };
        Outcome { code: self.code, stdout, stderr: self.stderr }
    }
}

fn pass_fail(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let rendered = e.render().to_string();
            if code == EXIT_PASS {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: rendered }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match execute(cli) {
        Ok(o) | Err(o) => o,
    }
}

fn execute(cli: &Cli) -> Result<Outcome, Outcome> {
    let mut out = Out::new(cli.json);
    match &cli.command {
        Command::Check { spec } => {
            let s = load(spec)?;
            let t = s.table()?;
            let r = verify_poisson(&t);
            for w in &r.warnings {
                out.stderr.push_str(&format!("warning: {w}\n"));
            }
            out.line(format!("poisson: {} ({} triples checked)", pass_fail(r.passed), r.triples_checked));
            match &r.failure {
                Some(PoissonFailure::Antisymmetry { pair, residual }) => {
                    out.line(format!("antisymmetry fails for ({}, {}): residual {residual}", pair.0, pair.1))
                }
                Some(PoissonFailure::Jacobi { triple, residual }) => out
                    .line(format!("jacobi fails for ({}, {}, {}): residual {residual}", triple.0, triple.1, triple.2)),
                None => {}
            }
            out.report(&r);
            if !r.passed {
                out.code = EXIT_MATH;
            }
        }
        Command::Normalize { spec, expr } => {
            let s = load(spec)?;
            let t = s.table()?;
            let alg = t.algebra().clone();
            let e = parse_expr(expr)
                .and_then(|e| eval_uea(&e, &alg))
                .map_err(|e| Outcome::input(format!("expression {e}")))?;
            let n = Uea::new(&t).normalize(&e)?;
            out.line(n.to_string());
            out.report(&json!({ "input": expr, "normal_form": n.to_string() }));
        }
        Command::Basis { spec, dm, dh } => {
            let s = load(spec)?;
            let alg = s.algebra()?;
            let basis = pbw_basis(&alg, *dm, *dh);
            let words: Vec<String> = basis
                .iter()
                .map(|b| {
                    let w = b.word();
                    if w.is_empty() {
                        "1".to_string()
                    } else {
                        render_word(&w, &|x| default_symbol(&alg, x))
                    }
                })
                .collect();
            out.line(format!("count {}", words.len()));
            for w in &words {
                out.line(w);
            }
            out.report(&json!({ "dm": dm, "dh": dh, "count": words.len(), "basis": words }));
        }
        Command::Present { spec, kind } => {
            let s = load(spec)?;
            let t = s.table()?;
            let c = StructureConstants::from_quadratic_table(&t)
                .map_err(|e| Outcome::input(format!("not a quadratic Poisson polynomial algebra: {e}")))?;
            let (p, names): (Presentation, Vec<String>) = match kind {
                Kind::Quadratic => {
                    let names = t.algebra().generators().iter().map(|g| g.name.clone()).collect();
                    (present_quadratic(&c), names)
                }
                Kind::Exterior => {
                    let p = present_exterior(&c);
                    let names = p.algebra.generators().iter().map(|g| g.name.clone()).collect();
                    (p, names)
                }
            };
            let sym = |x: crate::uea::Symbol| match x.kind {
                crate::uea::SymbolKind::M => format!("m({})", names[x.gen]),
                crate::uea::SymbolKind::H => format!("h({})", names[x.gen]),
            };
            let mut rows = Vec::new();
            for r in &p.relations {
                let (i, j) = (&names[r.indices.0], &names[r.indices.1]);
                let text = r.relation.render_with(sym);
                out.line(format!("R{} [{i}, {j}]: {text}", r.family));
                rows.push(json!({ "family": r.family, "indices": [i, j], "relation": text }));
            }
            out.report(&json!({ "kind": format!("{kind:?}").to_lowercase(), "generators": names, "relations": rows }));
        }
        Command::Weyl { p, q, check_symplectic, degree, expr } => {
            let mut value = serde_json::Map::new();
            if let Some(e) = expr {
                let w = WeylAlgebra::new(*p, *q)?;
                let parsed = parse_expr(e)
                    .and_then(|x| eval_weyl(&x, w.symbol_algebra(), w.rank()))
                    .map_err(|x| Outcome::input(format!("expression {x}")))?;
                let n = w.normalize(&parsed)?;
                out.line(w.render(&n));
                value.insert("normal_form".into(), json!(w.render(&n)));
            }
            if let Some(n) = check_symplectic {
                let r = symplectic_iso_check(*n, *degree)?;
                out.line(format!(
                    "symplectic n={n}: {} ({} relations, {} square relations, basis {}/{}, rank {})",
                    pass_fail(r.passed),
                    r.relations_checked,
                    r.square_relations_checked,
                    r.weyl_basis_size,
                    r.uea_basis_size,
                    r.image_rank
                ));
                if let Some(f) = &r.failed_relation {
                    out.line(format!("failed relation: {f}"));
                }
                if !r.passed {
                    out.code = EXIT_MATH;
                }
                value.insert("symplectic".into(), serde_json::to_value(&r).expect("json"));
            }
            if expr.is_none() && check_symplectic.is_none() {
                return Err(Outcome::input("weyl needs an expression or --check-symplectic"));
            }
            out.report(&value);
        }
        Command::HopfCheck { spec, degree } => {
            let s = load(spec)?;
            let h = s.hopf_data()?.ok_or_else(|| Outcome::input("spec has no [hopf] section"))?;
            let r = check_hopf_axioms(&h, *degree)?;
            out.line(format!(
                "hopf: {} (degree {}, {} monomials, {} pairs)",
                pass_fail(r.passed),
                r.degree,
                r.monomials_checked,
                r.pairs_checked
            ));
            if let Some(f) = &r.failure {
                out.line(format!("{} fails at {}: {}", f.axiom, f.monomial, f.detail));
            }
            for n in &r.notes {
                out.line(format!("note: {n}"));
            }
            if !r.passed {
                out.code = EXIT_MATH;
            }
            out.report(&r);
        }
        Command::OreValidate { spec } => {
            let s = load(spec)?;
            let stages = s.ore_stages()?;
            if stages.is_empty() {
                return Err(Outcome::input("spec has no [ore] section"));
            }
            let mut reports = Vec::new();
            for mut o in stages {
                let r = o.validate()?;
                out.line(format!("{}: {} ({} pairs)", o.var(), pass_fail(r.passed), r.pairs_checked));
                if let Some(f) = &r.failure {
                    out.line(format!("{} law fails for ({}, {}): residual {}", f.law, f.pair.0, f.pair.1, f.residual));
                    out.code = EXIT_MATH;
                }
                reports.push(json!({ "var": o.var(), "report": r }));
            }
            out.report(&reports);
        }
        Command::OreExtend { spec } => {
            let s = load(spec)?;
            let mut table = None;
            for mut o in s.ore_stages()? {
                let r = o.validate()?;
                if !r.passed {
                    let f = r.failure.expect("failed report names the law");
                    return Err(Outcome {
                        code: EXIT_MATH,
                        stdout: String::new(),
                        stderr: format!("error: {}: {} law fails for ({}, {})\n", o.var(), f.law, f.pair.0, f.pair.1),
                    });
                }
                table = Some(extend_ore(&o)?);
            }
            let table = table.ok_or_else(|| Outcome::input("spec has no [ore] section"))?;
            let printed = print_spec(&spec_from_table(&s.name, &table));
            out.text.push_str(&printed);
            out.report(&json!({ "spec": printed }));
        }
        Command::OreIso { spec, degree } => {
            let s = load(spec)?;
            let mut last = None;
            for mut o in s.ore_stages()? {
                let r = o.validate()?;
                if !r.passed {
                    return Err(Outcome {
                        code: EXIT_MATH,
                        stdout: String::new(),
                        stderr: format!("error: {} fails validation\n", o.var()),
                    });
                }
                last = Some(o);
            }
            let o = last.ok_or_else(|| Outcome::input("spec has no [ore] section"))?;
            let r = phi_iso_check(&o, *degree)?;
            out.line(format!(
                "ore-iso {}: {} (degree {}, {} relations, basis {}/{}, rank {})",
                o.var(),
                pass_fail(r.passed),
                r.degree,
                r.relations_checked,
                r.source_basis_size,
                r.target_basis_size,
                r.image_rank
            ));
            if let Some(f) = &r.failed_relation {
                out.line(format!("failed relation: {f}"));
            }
            if !r.passed {
                out.code = EXIT_MATH;
            }
            out.report(&r);
        }
        Command::KahlerCheck { spec, degree } => {
            let s = load(spec)?;
            let r = kahler_check(&s.table()?, *degree)?;
            let mut line = String::new();
            let _ = write!(
                line,
                "kahler: {} (basis {}, {} elements; antisymmetry {}, jacobi {}, anchor {})",
                pass_fail(r.passed),
                r.basis.join(" "),
                r.elements_checked,
                pass_fail(r.antisymmetry_ok),
                pass_fail(r.jacobi_ok),
                pass_fail(r.anchor_ok)
            );
            out.line(line);
            if let Some(f) = &r.failure {
                out.line(format!("failure: {f}"));
            }
            if !r.passed {
                out.code = EXIT_MATH;
            }
            out.report(&r);
        }
    }
    Ok(out.finish())
}
