use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pisom::bicyclic::{BicyclicNF, BicyclicWord};
use pisom::extension::{ext_leq, up_set_truncated, ExtElem};
use pisom::noise::{boundary_set, in_gj, in_gjm};
use pisom::oracle::{property_ids, verify, EnumBounds};
use pisom::relations::{d_witness, Green};
use pisom::topology::{converges, distinguish, probe, NbhdSpec, Probe, TailSeqSpec};
use pisom::{NoiseParams, PartialIso};
use pisom_cli::expr::{eval, parse, EvalError, ParseError};
use pisom_cli::json;
use serde_json::{json, Value};

/// Largest enumeration bound accepted by `verify`.
const MAX_VERIFY_BOUND: u64 = 16;

#[derive(Parser)]
#[command(
    name = "pisom",
    version,
    about = "Exact queries on cofinite partial isometries of ℕ"
)]
struct Cli {
    /// Indent the JSON output
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an expression
    Eval {
        expr: String,
        #[arg(long)]
        j: Option<u64>,
    },
    /// Structural data and class membership of an element
    Classify {
        expr: String,
        #[arg(long)]
        j: u64,
        #[arg(long = "M")]
        m: Option<String>,
    },
    /// Decide one of Green's relations
    Green {
        relation: String,
        a: String,
        b: String,
    },
    /// Decide the (extended) natural partial order a ≼ b
    Order {
        a: String,
        b: String,
        #[arg(long)]
        j: Option<u64>,
    },
    /// Image in the integers under the minimum group congruence
    Pi {
        expr: String,
        #[arg(long)]
        j: Option<u64>,
    },
    /// Restriction of an element to [nd)
    Arrow { expr: String },
    /// Normal form of a word over {a, b}
    Normalize { word: String },
    /// Membership in the neighborhood U_i^M(k)
    Nbhd {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long)]
        i: u64,
        #[arg(long)]
        j: u64,
        #[arg(long = "M")]
        m: Option<String>,
        elem: String,
    },
    /// Convergence of a tail sequence to the group element k
    Converge {
        #[arg(long, default_value = "")]
        offsets: String,
        #[arg(long, allow_negative_numbers = true)]
        shift: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long)]
        j: u64,
        #[arg(long = "M")]
        m: Option<String>,
        #[arg(long, default_value_t = 20)]
        depth: u64,
        #[arg(long, default_value_t = 60)]
        horizon: u64,
    },
    /// A sequence whose limit behavior separates two offset sets
    Distinguish {
        #[arg(long)]
        j: u64,
        m1: String,
        m2: String,
    },
    /// Elements above ELEM with excluded sets inside {1..bound}
    Upset {
        elem: String,
        #[arg(long)]
        j: u64,
        #[arg(long)]
        bound: u64,
    },
    /// Idempotents outside both βα-ideals
    Boundary {
        #[arg(long)]
        j: u64,
    },
    /// Run a registered property exhaustively; `verify list` shows them
    Verify {
        prop: String,
        #[arg(long = "N", default_value_t = 3)]
        n: u64,
        #[arg(long = "S", default_value_t = 1)]
        s: u64,
        #[arg(long)]
        j: Option<u64>,
        #[arg(long = "M")]
        m: Option<String>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("evaluation failed {0}")]
    Eval(#[from] EvalError),
    #[error("{0}")]
    Core(#[from] pisom::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn to_json(&self) -> Value {
        let mut e = json!({ "message": self.to_string() });
        match self {
            CliError::Parse(p) => {
                e["kind"] = json!("parse");
                e["column"] = json!(p.column);
                e["expected"] = json!(p.expected);
            }
            CliError::Eval(v) => {
                e["kind"] = json!("eval");
                e["term"] = json!(v.term);
            }
            CliError::Core(pisom::Error::WordParse { column, .. }) => {
                e["kind"] = json!("parse");
                e["column"] = json!(column);
                e["expected"] = json!(["`a`", "`b`"]);
            }
            CliError::Core(_) => e["kind"] = json!("invalid"),
            CliError::Usage(_) => e["kind"] = json!("usage"),
        }
        json!({ "error": e })
    }
}

struct Outcome {
    body: Value,
    code: u8,
}

impl Outcome {
    fn ok(body: Value) -> Self {
        Outcome { body, code: 0 }
    }

    fn verdict(body: Value, holds: bool) -> Self {
        Outcome {
            body,
            code: if holds { 0 } else { 1 },
        }
    }
}

fn offsets(text: &str) -> Result<BTreeSet<u64>, CliError> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| CliError::Usage(format!("bad offset `{t}`")))
        })
        .collect()
}

/// `None` or empty selects `M = ∅`; `all` selects `{2..j}`.
fn params(j: u64, m: Option<&str>) -> Result<NoiseParams, CliError> {
    match m.map(str::trim) {
        Some("all") => Ok(NoiseParams::full(j)),
        None => Ok(NoiseParams::empty(j)),
        Some(text) => Ok(NoiseParams::new(j, offsets(text)?)?),
    }
}

fn bound_params(j: Option<u64>) -> NoiseParams {
    j.map_or_else(NoiseParams::unbounded, NoiseParams::empty)
}

fn value(text: &str, p: &NoiseParams) -> Result<ExtElem, CliError> {
    Ok(eval(&parse(text)?, p)?)
}

fn monoid(text: &str, p: &NoiseParams) -> Result<PartialIso, CliError> {
    match value(text, p)? {
        ExtElem::Iso(g) => Ok(g),
        ExtElem::Grp(k) => Err(CliError::Usage(format!(
            "`{text}` evaluates to the group element grp({k}), expected a monoid element"
        ))),
    }
}

fn classify(x: &ExtElem, p: &NoiseParams) -> Value {
    match x {
        ExtElem::Grp(k) => json!({ "element": json::element(x), "group": true, "pi": k }),
        ExtElem::Iso(g) => json!({
            "element": json::iso(g),
            "group": false,
            "nd": g.nd(),
            "und": g.und(),
            "nr": g.nr(),
            "unr": g.unr(),
            "noise": g.noise(),
            "pi": g.pi(),
            "idempotent": g.is_idempotent(),
            "in_gj": in_gj(g, p.j()),
            "in_M": in_gjm(g, p),
            "bicyclic": BicyclicNF::recognize(g).map(|nf| json::normal_form(&nf)),
        }),
    }
}

fn run(cmd: Cmd) -> Result<(&'static str, Outcome), CliError> {
    Ok(match cmd {
        Cmd::Eval { expr, j } => {
            let p = bound_params(j);
            let x = value(&expr, &p)?;
            (
                "eval",
                Outcome::ok(json!({ "value": json::element(&x), "literal": x.to_string() })),
            )
        }
        Cmd::Classify { expr, j, m } => {
            let p = params(j, m.as_deref())?;
            let x = value(&expr, &NoiseParams::unbounded())?;
            let mut body = classify(&x, &p);
            body["params"] = json::params(&p);
            ("classify", Outcome::ok(body))
        }
        Cmd::Green { relation, a, b } => {
            let rel: Green = relation.parse()?;
            let p = NoiseParams::unbounded();
            let (g, d) = (monoid(&a, &p)?, monoid(&b, &p)?);
            let holds = rel.holds(&g, &d);
            let mut body = json!({ "relation": relation, "holds": holds });
            if rel == Green::D {
                body["witness"] = d_witness(&g, &d).map_or(Value::Null, |w| json::iso(&w));
            }
            ("green", Outcome::verdict(body, holds))
        }
        Cmd::Order { a, b, j } => {
            let p = bound_params(j);
            let (x, y) = (value(&a, &p)?, value(&b, &p)?);
            let holds = ext_leq(&x, &y);
            ("order", Outcome::verdict(json!({ "leq": holds }), holds))
        }
        Cmd::Pi { expr, j } => {
            let x = value(&expr, &bound_params(j))?;
            ("pi", Outcome::ok(json!({ "pi": x.class() })))
        }
        Cmd::Arrow { expr } => {
            let g = monoid(&expr, &NoiseParams::unbounded())?;
            (
                "arrow",
                Outcome::ok(json!({ "value": json::iso(&g.arrow()) })),
            )
        }
        Cmd::Normalize { word } => {
            let w: BicyclicWord = word.parse()?;
            let nf = w.normalize();
            let mut body = json::normal_form(&nf);
            body["element"] = json::iso(&nf.embed());
            ("normalize", Outcome::ok(body))
        }
        Cmd::Nbhd { k, i, j, m, elem } => {
            let p = params(j, m.as_deref())?;
            let spec = NbhdSpec::new(k, i, p.clone())?;
            let x = value(&elem, &p)?;
            let member = spec.contains(&x);
            let body = json!({ "member": member, "k": k, "i": i, "params": json::params(&p) });
            ("nbhd", Outcome::verdict(body, member))
        }
        Cmd::Converge {
            offsets: o,
            shift,
            k,
            j,
            m,
            depth,
            horizon,
        } => {
            let p = params(j, m.as_deref())?;
            let spec = TailSeqSpec::new(offsets(&o)?, shift)?;
            let closed = converges(&spec, k, &p)?;
            let seen = probe(&spec, k, &p, Probe { depth, horizon })?;
            let body = json!({
                "converges": closed,
                "probe": { "converges": seen.converges, "depth": depth, "horizon": horizon, "entry": seen.entry },
                "params": json::params(&p),
            });
            let code = match (closed == seen.converges, closed) {
                (false, _) => 3,
                (true, true) => 0,
                (true, false) => 1,
            };
            ("converge", Outcome { body, code })
        }
        Cmd::Distinguish { j, m1, m2 } => {
            let (a, b) = (offsets(&m1)?, offsets(&m2)?);
            match distinguish(&a, &b, j) {
                Err(pisom::Error::NotDistinct) => (
                    "distinguish",
                    Outcome::verdict(json!({ "distinct": false }), false),
                ),
                Err(e) => return Err(e.into()),
                Ok(w) => {
                    let pa = NoiseParams::new(j, a)?;
                    let pb = NoiseParams::new(j, b)?;
                    let body = json!({
                        "distinct": true,
                        "witness": { "offsets": w.kept_offsets(), "shift": w.shift() },
                        "converges": [converges(&w, 0, &pa)?, converges(&w, 0, &pb)?],
                    });
                    ("distinguish", Outcome::ok(body))
                }
            }
        }
        Cmd::Upset { elem, j, bound } => {
            if bound > 20 {
                return Err(CliError::Usage(format!("bound {bound} exceeds 20")));
            }
            let p = NoiseParams::empty(j);
            let x = value(&elem, &p)?;
            let up = up_set_truncated(&x, &p, bound);
            let body = json!({
                "count": up.elements.len(),
                "complete": up.complete,
                "elements": json::elements(&up.elements),
            });
            ("upset", Outcome::ok(body))
        }
        Cmd::Boundary { j } => {
            if !(2..=20).contains(&j) {
                return Err(CliError::Usage(format!(
                    "boundary needs 2 ≤ j ≤ 20, got {j}"
                )));
            }
            let set = boundary_set(j);
            let elements: Vec<Value> = set.iter().map(json::iso).collect();
            (
                "boundary",
                Outcome::ok(json!({ "count": set.len(), "elements": elements })),
            )
        }
        Cmd::Verify { prop, .. } if prop == "list" => {
            let props: Vec<Value> = property_ids()
                .map(|(id, about)| json!({ "id": id, "about": about }))
                .collect();
            ("verify", Outcome::ok(json!({ "properties": props })))
        }
        Cmd::Verify { prop, n, s, j, m } => {
            if n.max(s) > MAX_VERIFY_BOUND {
                return Err(CliError::Usage(format!(
                    "N and S must be at most {MAX_VERIFY_BOUND}"
                )));
            }
            let p = params(j.unwrap_or(n), m.as_deref())?;
            let report = verify(&prop, EnumBounds::new(n, s), &p)?;
            let code = if report.passed() { 0 } else { 3 };
            let mut body = json::report(&report);
            body["bounds"] = json!({ "N": n, "S": s });
            body["params"] = json::params(&p);
            ("verify", Outcome { body, code })
        }
    })
}

fn command_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Eval { .. } => "eval",
        Cmd::Classify { .. } => "classify",
        Cmd::Green { .. } => "green",
        Cmd::Order { .. } => "order",
        Cmd::Pi { .. } => "pi",
        Cmd::Arrow { .. } => "arrow",
        Cmd::Normalize { .. } => "normalize",
        Cmd::Nbhd { .. } => "nbhd",
        Cmd::Converge { .. } => "converge",
        Cmd::Distinguish { .. } => "distinguish",
        Cmd::Upset { .. } => "upset",
        Cmd::Boundary { .. } => "boundary",
        Cmd::Verify { .. } => "verify",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.cmd);
    let (doc, code) = match run(cli.cmd) {
        Ok((name, out)) => (json::document(name, out.body), out.code),
        Err(e) => {
            eprintln!("pisom {name}: {e}");
            (json::document(name, e.to_json()), 2)
        }
    };
    let text = if cli.pretty {
        serde_json::to_string_pretty(&doc)
    } else {
        serde_json::to_string(&doc)
    };
    println!("{}", text.expect("JSON values always serialize"));
    ExitCode::from(code)
}
