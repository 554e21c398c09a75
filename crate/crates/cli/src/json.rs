use pisom::extension::ExtElem;
use pisom::noise::NoiseParams;
use pisom::oracle::Report;
use pisom::{BicyclicNF, PartialIso};
use serde_json::{json, Value};

/// Bumped whenever a field changes meaning or disappears.
pub const SCHEMA_VERSION: u32 = 1;

pub fn iso(g: &PartialIso) -> Value {
    json!({ "excluded": g.excluded(), "shift": g.shift() })
}

pub fn element(x: &ExtElem) -> Value {
    match x {
        ExtElem::Iso(g) => iso(g),
        ExtElem::Grp(k) => json!({ "group": k }),
    }
}

pub fn elements<'a>(xs: impl IntoIterator<Item = &'a ExtElem>) -> Value {
    Value::Array(xs.into_iter().map(element).collect())
}

pub fn normal_form(nf: &BicyclicNF) -> Value {
    json!({ "k": nf.k, "l": nf.l })
}

pub fn params(p: &NoiseParams) -> Value {
    let j = (p.j() != u64::MAX).then_some(p.j());
    json!({ "j": j, "M": p.m() })
}

pub fn report(r: &Report) -> Value {
    json!({
        "property": r.property,
        "passed": r.passed(),
        "instances": r.instances,
        "counterexample_count": r.counterexample_count,
        "counterexamples": r.counterexamples,
    })
}

/// Wraps a command payload with the schema version and command name.
pub fn document(command: &str, mut body: Value) -> Value {
    if let Value::Object(map) = &mut body {
        map.insert("schema_version".into(), json!(SCHEMA_VERSION));
        map.insert("command".into(), json!(command));
    }
    body
}
