//! Command-line front end. [`run`] is pure: it takes the argument vector and
//! returns exit code and output streams, so tests can drive it directly.

pub mod parse;

use std::fmt::Write as _;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::classifier::{classify, criterion_text, hurewicz_profile, ExistenceFactTable};
use crate::dpoint::{parity_decision, xi_push};
use crate::error::Error;
use crate::manifolds::ManifoldSpec;
use crate::qmo::{nishida, primitive_submodule, q_coproduct, qmo_basis, QClass};
use crate::sq::{act, adem_normalize, lemma55_check, SymPoly};

pub use parse::{parse, parse_steenrod, parse_wpoly, Expr, ParseError};

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(name = "selfint", version, about = "Mod-2 homology engine for double point surfaces of immersions")]
struct Cli {
    /// Emit {command, inputs, result, citations} as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parity verdict for immersions M^{k+2} -> R^{2k+2}.
    Classify {
        #[arg(long)]
        k: u32,
    },
    /// Primitives of H_n QMO(k), default n = 2k+2.
    Primitives {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        dim: Option<u32>,
    },
    /// Coproduct of a class in H_*QMO(k).
    Coproduct {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        expr: String,
        #[arg(long)]
        reduced: bool,
    },
    /// Dual Steenrod square Sq^i_* of a class.
    Sqdual {
        #[arg(long)]
        i: u32,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        expr: String,
    },
    /// Image of a height-2 class of dimension 2k+2 in H_*MO(2k).
    Xi {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        expr: String,
    },
    /// Admissible form of a Steenrod composite.
    Adem {
        #[arg(long)]
        expr: String,
    },
    /// Sq^a on a polynomial in w-classes, in V variables.
    Sqact {
        #[arg(long)]
        a: u32,
        #[arg(long)]
        on: String,
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Normal Stiefel-Whitney number of a manifold.
    Swnumber {
        #[arg(long)]
        manifold: String,
        #[arg(long)]
        number: String,
    },
    /// Suspension chain excluding the class b2+b3 for k = 4r-1.
    Lemma55 {
        #[arg(long)]
        r: u32,
    },
    /// Monomial basis of H_n QMO(k).
    Basis {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        dim: u32,
        #[arg(long)]
        height: Option<u32>,
    },
    /// Height-2 Hurewicz correction of an immersion of the given manifold.
    Profile {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        manifold: String,
    },
}

enum CliError {
    Invalid(String),
    Algebra(Error),
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Invalid(e.to_string())
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Algebra(e)
    }
}

/// What a subcommand produced: plain text and the JSON `result`.
struct Answer {
    text: String,
    result: Value,
    citations: Vec<Value>,
}

impl Answer {
    fn plain(text: String) -> Self {
        Answer { result: Value::String(text.clone()), text, citations: Vec::new() }
    }
}

fn lines<T: ToString>(items: &[T]) -> Answer {
    let v: Vec<String> = items.iter().map(ToString::to_string).collect();
    let mut text = v.join("\n");
    if v.is_empty() {
        text.push_str("(empty)");
    }
    Answer { text, result: json!(v), citations: Vec::new() }
}

fn need_k(k: u32) -> Result<(), CliError> {
    if k == 0 {
        return Err(CliError::Invalid("k must be at least 1".into()));
    }
    Ok(())
}

/// Parse `src`, check its literals against `k`, and evaluate it.
fn class_arg(k: u32, src: &str) -> Result<QClass, CliError> {
    need_k(k)?;
    let e = parse(src)?;
    match e.infer_k().map_err(CliError::Invalid)? {
        Some(j) if j != k as usize => {
            Err(CliError::Invalid(format!("inconsistent k: --k {k} but the expression has literals with k = {j}")))
        }
        _ => Ok(e.eval()?),
    }
}

fn manifold_arg(s: &str) -> Result<ManifoldSpec, CliError> {
    s.parse().map_err(CliError::Algebra)
}

fn execute(cmd: &Command) -> Result<Answer, CliError> {
    Ok(match cmd {
        Command::Classify { k } => {
            need_k(*k)?;
            let r = classify(*k)?;
            let mut t = String::new();
            let _ = writeln!(t, "k = {} (k mod 4 = {}), alpha(k+2) = {}", r.k, r.residue, r.alpha_k2);
            let _ = writeln!(t, "double point basis: {}", r.d2_basis.join(", "));
            let _ = writeln!(t, "candidates:");
            for c in &r.candidate_basis {
                let _ = writeln!(t, "  {c}");
            }
            for x in &r.xi_images {
                let _ = writeln!(
                    t,
                    "xi({}) = {} [{}]",
                    x.class,
                    x.image,
                    serde_json::to_value(x.parity).unwrap().as_str().unwrap()
                );
            }
            if let Some(ex) = &r.lemma55_excluded {
                let _ = writeln!(t, "excluded by suspension chain: {ex}");
            }
            let verdict = serde_json::to_value(r.verdict).unwrap();
            let _ = writeln!(t, "verdict: {}", verdict.as_str().unwrap());
            if let Some(p) = &r.forced_parity {
                let _ = writeln!(t, "parity: {p}");
            }
            if let (Some(c), Some(w)) = (&r.criterion, &r.criterion_witness) {
                let _ = writeln!(t, "criterion: {c}; {} gives {}", w.manifold, u8::from(w.value));
            }
            for f in &r.existence_facts_used {
                let _ = writeln!(t, "uses {}: {}", f.fact.id, f.role);
            }
            let citations =
                r.existence_facts_used.iter().map(|f| json!({"id": f.fact.id, "citation": f.fact.citation})).collect();
            Answer { text: t.trim_end().to_string(), result: serde_json::to_value(&r).unwrap(), citations }
        }
        Command::Primitives { k, dim } => {
            need_k(*k)?;
            let n = dim.unwrap_or(2 * k + 2);
            lines(&primitive_submodule(*k as usize, n)?)
        }
        Command::Coproduct { k, expr, reduced } => {
            let c = class_arg(*k, expr)?;
            Answer::plain(q_coproduct(&c, *reduced)?.to_string())
        }
        Command::Sqdual { i, k, expr } => {
            let c = class_arg(*k, expr)?;
            Answer::plain(nishida(*i, &c)?.to_string())
        }
        Command::Xi { k, expr } => {
            let c = class_arg(*k, expr)?;
            let image = xi_push(*k, &c)?.to_string();
            let parity = parity_decision(*k, &c)?;
            Answer { text: image.clone(), result: json!({"image": image, "parity": parity}), citations: Vec::new() }
        }
        Command::Adem { expr } => Answer::plain(adem_normalize(&parse_steenrod(expr)?).to_string()),
        Command::Sqact { a, on, vars } => {
            let w = parse_wpoly(on)?;
            let deg = w.iter().map(|m| m.indices().iter().sum::<u32>()).max().unwrap_or(0);
            let n = vars.unwrap_or((deg + a).max(1) as usize);
            if n == 0 {
                return Err(CliError::Invalid("--vars must be at least 1".into()));
            }
            let p = SymPoly::from_w(&w, n);
            let out = act(&crate::sq::sq(&[*a]), &p).to_w_basis()?;
            Answer::plain(out.to_string())
        }
        Command::Swnumber { manifold, number } => {
            let m = manifold_arg(manifold)?;
            let w = parse_wpoly(number)?;
            let mut value = false;
            for mono in &w {
                value ^= m.sw_number(mono.indices())?;
            }
            let text = u8::from(value).to_string();
            Answer { text, result: json!(u8::from(value)), citations: Vec::new() }
        }
        Command::Lemma55 { r } => {
            if *r == 0 {
                return Err(CliError::Invalid("r must be at least 1".into()));
            }
            let rep = lemma55_check(*r);
            let mut t = String::new();
            let _ = writeln!(t, "k = {}, top cell in degree {}", rep.k, rep.top_degree);
            let _ = writeln!(
                t,
                "Adem identity Sq^{} = Sq^2 Sq^{} + Sq^1 Sq^{} Sq^1: {}",
                4 * r + 2,
                4 * r,
                4 * r,
                rep.adem_identity
            );
            let mut steps = Vec::new();
            for s in &rep.steps {
                let ok = if s.matches() { "ok" } else { "MISMATCH" };
                let _ = writeln!(t, "{} = {} (expected {}) {ok}", s.label, s.computed, s.expected);
                steps.push(json!({"label": s.label, "computed": s.computed.to_string(), "expected": s.expected.to_string(), "matches": s.matches()}));
            }
            let _ = writeln!(t, "final = {}, direct = {}", rep.final_value, rep.direct_value);
            let _ = write!(t, "passed: {}", rep.passed());
            let result = json!({
                "r": rep.r,
                "k": rep.k,
                "adem_identity": rep.adem_identity,
                "steps": steps,
                "final_value": rep.final_value.to_string(),
                "direct_value": rep.direct_value.to_string(),
                "top_degree": rep.top_degree,
                "below_top_cell": rep.below_top_cell,
                "passed": rep.passed(),
            });
            Answer { text: t, result, citations: Vec::new() }
        }
        Command::Basis { k, dim, height } => {
            need_k(*k)?;
            if let Some(h) = height {
                if !h.is_power_of_two() {
                    return Err(CliError::Invalid(format!("height must be a power of two, got {h}")));
                }
            }
            lines(&qmo_basis(*k as usize, *dim, *height))
        }
        Command::Profile { k, manifold } => {
            need_k(*k)?;
            let m = manifold_arg(manifold)?;
            let p = hurewicz_profile(*k, &m)?;
            let mut t = String::new();
            let _ = writeln!(t, "{}: {} = {}", p.manifold, criterion_text(p.k), u8::from(p.sw_number));
            let _ = writeln!(t, "height-2 correction: {}", p.height2_correction.join(" or "));
            let parity = p.parity.map_or("depends on the immersion".to_string(), |x| {
                serde_json::to_value(x).unwrap().as_str().unwrap().to_string()
            });
            let _ = write!(t, "parity: {parity}");
            for a in &p.annotations {
                let _ = write!(t, "\nnote: {a}");
            }
            let citations = if matches!(m, ManifoldSpec::Dold { .. }) {
                let f = ExistenceFactTable::get("dold-manifold");
                vec![json!({"id": f.id, "citation": f.citation})]
            } else {
                Vec::new()
            };
            Answer { text: t, result: serde_json::to_value(&p).unwrap(), citations }
        }
    })
}

fn name_and_inputs(cmd: &Command) -> (&'static str, Value) {
    match cmd {
        Command::Classify { k } => ("classify", json!({"k": k})),
        Command::Primitives { k, dim } => ("primitives", json!({"k": k, "dim": dim.unwrap_or(2 * k + 2)})),
        Command::Coproduct { k, expr, reduced } => ("coproduct", json!({"k": k, "expr": expr, "reduced": reduced})),
        Command::Sqdual { i, k, expr } => ("sqdual", json!({"i": i, "k": k, "expr": expr})),
        Command::Xi { k, expr } => ("xi", json!({"k": k, "expr": expr})),
        Command::Adem { expr } => ("adem", json!({"expr": expr})),
        Command::Sqact { a, on, vars } => ("sqact", json!({"a": a, "on": on, "vars": vars})),
        Command::Swnumber { manifold, number } => ("swnumber", json!({"manifold": manifold, "number": number})),
        Command::Lemma55 { r } => ("lemma55", json!({"r": r})),
        Command::Basis { k, dim, height } => ("basis", json!({"k": k, "dim": dim, "height": height})),
        Command::Profile { k, manifold } => ("profile", json!({"k": k, "manifold": manifold})),
    }
}

/// Run the CLI on `argv` (including the program name). Exit codes: 0 on
/// success, 2 for usage, parse and validation errors, 1 for domain errors.
pub fn run<I, S>(argv: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output { code: 2, stdout: String::new(), stderr: text }
            } else {
                Output { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli.command) {
        Ok(ans) => {
            let stdout = if cli.json {
                let (command, inputs) = name_and_inputs(&cli.command);
                let doc =
                    json!({"command": command, "inputs": inputs, "result": ans.result, "citations": ans.citations});
                serde_json::to_string_pretty(&doc).unwrap() + "\n"
            } else {
                ans.text + "\n"
            };
            Output { code: 0, stdout, stderr: String::new() }
        }
        Err(CliError::Invalid(msg)) => Output { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(CliError::Algebra(e)) => {
            let code = if e.is_domain() { 1 } else { 2 };
            Output { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}
