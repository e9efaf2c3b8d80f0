//! The JSON document format.
//!
//! Every file is an object `{"kind": ..., "payload": ...}`. Rationals are
//! always strings `"n/d"` (a bare integer `"n"` is accepted on input); JSON
//! numbers are rejected so that nothing ever passes through a float.

use std::collections::BTreeSet;
use std::fmt;

use serde_json::{json, Map, Value};

use reparam_core::{
    format_rat, parse_rat, Breakpoint, HomotopyWitness, Interval, Path, PathPoint, Rat, Reparam, Stop, StopData,
    TraceClass,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Reparam(Reparam),
    Path(Path),
    StopData(StopData),
    Class(TraceClass),
    Witness(HomotopyWitness),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Reparam(_) => "reparam",
            Document::Path(_) => "path",
            Document::StopData(_) => "stopdata",
            Document::Class(_) => "class",
            Document::Witness(_) => "witness",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DocError {
    /// Malformed text or a value of the wrong shape.
    Syntax(String),
    /// Well-formed, but the value breaks an invariant. `rule` names it.
    Validation { rule: &'static str, detail: String },
}

impl fmt::Display for DocError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DocError::Syntax(msg) => write!(f, "{msg}"),
            DocError::Validation { rule, detail } => write!(f, "{rule}: {detail}"),
        }
    }
}

impl std::error::Error for DocError {}

impl From<reparam_core::Error> for DocError {
    fn from(e: reparam_core::Error) -> Self {
        DocError::Validation {
            rule: e.name(),
            detail: e.to_string(),
        }
    }
}

type DocResult<T> = std::result::Result<T, DocError>;

fn syntax<T>(msg: impl Into<String>) -> DocResult<T> {
    Err(DocError::Syntax(msg.into()))
}

pub fn parse(text: &str) -> DocResult<Document> {
    let value: Value = serde_json::from_str(text).map_err(|e| DocError::Syntax(e.to_string()))?;
    from_value(&value)
}

pub fn from_value(value: &Value) -> DocResult<Document> {
    let obj = object(value, "document", &["kind", "payload"])?;
    let kind = obj
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| DocError::Syntax("document needs a string \"kind\"".into()))?;
    let payload = obj
        .get("payload")
        .ok_or_else(|| DocError::Syntax("document needs a \"payload\"".into()))?;
    Ok(match kind {
        "reparam" => Document::Reparam(reparam_from(payload)?),
        "path" => Document::Path(path_from(payload)?),
        "stopdata" => Document::StopData(stopdata_from(payload)?),
        "class" => Document::Class(class_from(payload)?),
        "witness" => Document::Witness(witness_from(payload)?),
        other => return syntax(format!("unknown document kind {other:?}")),
    })
}

pub fn to_value(doc: &Document) -> Value {
    let payload = match doc {
        Document::Reparam(f) => reparam_value(f),
        Document::Path(p) => path_value(p),
        Document::StopData(s) => stopdata_value(s),
        Document::Class(c) => json!({
            "values": c.values().iter().map(rat_value).collect::<Vec<_>>(),
            "representative": reparam_value(c.representative()),
        }),
        Document::Witness(w) => json!({
            "r": path_value(w.r()),
            "phi": reparam_value(w.phi()),
            "psi": reparam_value(w.psi()),
            "eta": reparam_value(w.eta()),
        }),
    };
    json!({ "kind": doc.kind(), "payload": payload })
}

/// Canonical text: indented JSON with a trailing newline.
pub fn serialize(doc: &Document) -> String {
    to_pretty(&to_value(doc))
}

const INLINE_WIDTH: usize = 72;

/// Like `serde_json::to_string_pretty`, except that small arrays without
/// objects stay on one line, so a breakpoint reads as `["1/4", "1/2"]`.
pub fn to_pretty(value: &Value) -> String {
    let mut s = String::new();
    write_pretty(value, 0, &mut s);
    s.push('\n');
    s
}

fn array_depth(value: &Value) -> Option<usize> {
    match value {
        Value::Object(_) => None,
        Value::Array(items) => items
            .iter()
            .map(array_depth)
            .try_fold(0, |d, x| x.map(|x| d.max(x)))
            .map(|d| d + 1),
        _ => Some(0),
    }
}

fn inline(value: &Value) -> String {
    match value {
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn write_pretty(value: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match value {
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) => {
            if array_depth(value).is_some_and(|d| d <= 2) {
                let line = inline(value);
                if indent * 2 + line.len() <= INLINE_WIDTH {
                    out.push_str(&line);
                    return;
                }
            }
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_pretty(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_pretty(v, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}

pub fn rat_value(q: &Rat) -> Value {
    Value::String(format_rat(q))
}

pub fn point_value(p: &[Rat]) -> Value {
    Value::Array(p.iter().map(rat_value).collect())
}

pub fn reparam_value(f: &Reparam) -> Value {
    let pts: Vec<Value> = f
        .breakpoints()
        .iter()
        .map(|b| json!([rat_value(&b.x), rat_value(&b.y)]))
        .collect();
    json!({ "breakpoints": pts })
}

pub fn path_value(p: &Path) -> Value {
    let pts: Vec<Value> = p
        .breakpoints()
        .iter()
        .map(|b| json!([rat_value(&b.t), point_value(&b.point)]))
        .collect();
    json!({ "dim": p.dim(), "breakpoints": pts })
}

pub fn stopdata_value(s: &StopData) -> Value {
    let stops: Vec<Value> = s
        .stops()
        .iter()
        .map(|s| {
            json!([
                [rat_value(s.interval.lo()), rat_value(s.interval.hi())],
                rat_value(&s.value)
            ])
        })
        .collect();
    json!({ "stops": stops })
}

fn object<'a>(value: &'a Value, what: &str, allowed: &[&str]) -> DocResult<&'a Map<String, Value>> {
    let Some(obj) = value.as_object() else {
        return syntax(format!("{what} must be an object"));
    };
    if let Some(key) = obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        return syntax(format!("unexpected key {key:?} in {what}"));
    }
    Ok(obj)
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, what: &str) -> DocResult<&'a Value> {
    obj.get(key)
        .ok_or_else(|| DocError::Syntax(format!("{what} needs {key:?}")))
}

fn array<'a>(value: &'a Value, what: &str) -> DocResult<&'a Vec<Value>> {
    value
        .as_array()
        .ok_or_else(|| DocError::Syntax(format!("{what} must be an array")))
}

fn pair<'a>(value: &'a Value, what: &str) -> DocResult<(&'a Value, &'a Value)> {
    match array(value, what)?.as_slice() {
        [a, b] => Ok((a, b)),
        _ => syntax(format!("{what} must have exactly two entries")),
    }
}

pub fn rat_from(value: &Value) -> DocResult<Rat> {
    let Some(s) = value.as_str() else {
        return syntax(format!("rationals must be strings like \"1/3\", got {value}"));
    };
    parse_rat(s).ok_or_else(|| DocError::Syntax(format!("not a rational: {s:?}")))
}

fn point_from(value: &Value) -> DocResult<Vec<Rat>> {
    array(value, "point")?.iter().map(rat_from).collect()
}

pub fn reparam_from(value: &Value) -> DocResult<Reparam> {
    let obj = object(value, "reparam payload", &["breakpoints"])?;
    let mut pts = Vec::new();
    for item in array(field(obj, "breakpoints", "reparam payload")?, "breakpoints")? {
        let (x, y) = pair(item, "breakpoint")?;
        pts.push(Breakpoint::new(rat_from(x)?, rat_from(y)?));
    }
    Ok(Reparam::new(pts)?)
}

pub fn path_from(value: &Value) -> DocResult<Path> {
    let obj = object(value, "path payload", &["dim", "breakpoints"])?;
    let dim = field(obj, "dim", "path payload")?
        .as_u64()
        .filter(|d| *d > 0)
        .ok_or_else(|| DocError::Syntax("\"dim\" must be a positive integer".into()))?;
    let mut pts = Vec::new();
    for item in array(field(obj, "breakpoints", "path payload")?, "breakpoints")? {
        let (t, x) = pair(item, "breakpoint")?;
        pts.push(PathPoint::new(rat_from(t)?, point_from(x)?));
    }
    Ok(Path::new(dim as usize, pts)?)
}

pub fn stopdata_from(value: &Value) -> DocResult<StopData> {
    let obj = object(value, "stopdata payload", &["stops"])?;
    let mut stops = Vec::new();
    for item in array(field(obj, "stops", "stopdata payload")?, "stops")? {
        let (interval, v) = pair(item, "stop")?;
        let (lo, hi) = pair(interval, "interval")?;
        stops.push(Stop::new(Interval::new(rat_from(lo)?, rat_from(hi)?)?, rat_from(v)?));
    }
    Ok(StopData::new(stops)?)
}

pub fn values_from(value: &Value) -> DocResult<BTreeSet<Rat>> {
    let mut out = BTreeSet::new();
    for v in array(value, "values")? {
        let q = rat_from(v)?;
        if !out.insert(q.clone()) {
            return Err(reparam_core::Error::DuplicateValue(format_rat(&q)).into());
        }
    }
    Ok(out)
}

fn class_from(value: &Value) -> DocResult<TraceClass> {
    let obj = object(value, "class payload", &["values", "representative"])?;
    let class = TraceClass::from_values(values_from(field(obj, "values", "class payload")?)?)?;
    if let Some(rep) = obj.get("representative") {
        let rep = reparam_from(rep)?;
        if rep.stop_values() != *class.values() {
            return Err(DocError::Validation {
                rule: "ClassMismatch",
                detail: "representative does not have the listed stop values".into(),
            });
        }
    }
    Ok(class)
}

fn witness_from(value: &Value) -> DocResult<HomotopyWitness> {
    let obj = object(value, "witness payload", &["r", "phi", "psi", "eta"])?;
    let r = path_from(field(obj, "r", "witness payload")?)?;
    let phi = reparam_from(field(obj, "phi", "witness payload")?)?;
    let psi = reparam_from(field(obj, "psi", "witness payload")?)?;
    let eta = reparam_from(field(obj, "eta", "witness payload")?)?;
    Ok(HomotopyWitness::new(r, phi, psi, eta)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use reparam_core::testing::{fixtures, q, random_path, random_reparam, random_value_set};
    use reparam_core::{class_of, thin_homotopy};

    #[test]
    fn parses_reparam_document() {
        let text = r#"{"kind":"reparam","payload":{"breakpoints":[["0","0"],["1/4","1/2"],["3/4","1/2"],["1","1"]]}}"#;
        assert_eq!(parse(text).unwrap(), Document::Reparam(fixtures::a()));
    }

    #[test]
    fn thirds_stay_exact() {
        let text = r#"{"kind":"reparam","payload":{"breakpoints":[["0","0"],["1/3","2/3"],["1","1"]]}}"#;
        let Document::Reparam(f) = parse(text).unwrap() else {
            panic!()
        };
        assert_eq!(f.breakpoints()[1].x, q("1/3"));
        assert_eq!(f.eval(&q("1/6")).unwrap(), q("1/3"));
    }

    #[test]
    fn rejects_bad_input() {
        let decreasing =
            r#"{"kind":"reparam","payload":{"breakpoints":[["0","0"],["1/2","3/4"],["3/4","1/2"],["1","1"]]}}"#;
        assert!(matches!(
            parse(decreasing),
            Err(DocError::Validation {
                rule: "NotMonotone",
                ..
            })
        ));
        let float = r#"{"kind":"reparam","payload":{"breakpoints":[["0","0"],[0.5,"1/2"],["1","1"]]}}"#;
        assert!(matches!(parse(float), Err(DocError::Syntax(_))));
        assert!(matches!(parse("{"), Err(DocError::Syntax(_))));
        assert!(matches!(
            parse(r#"{"kind":"tree","payload":{}}"#),
            Err(DocError::Syntax(_))
        ));
        let extra = r#"{"kind":"reparam","payload":{"breakpoints":[["0","0"],["1","1"]],"x":1}}"#;
        assert!(matches!(parse(extra), Err(DocError::Syntax(_))));
        let wrong_rep =
            r#"{"kind":"class","payload":{"values":["1/2"],"representative":{"breakpoints":[["0","0"],["1","1"]]}}}"#;
        assert!(matches!(
            parse(wrong_rep),
            Err(DocError::Validation {
                rule: "ClassMismatch",
                ..
            })
        ));
    }

    #[test]
    fn canonicalizes_on_parse() {
        let text = r#"{"kind":"reparam","payload":{"breakpoints":[["0","0"],["2/4","1/2"],["1","1"]]}}"#;
        assert_eq!(parse(text).unwrap(), Document::Reparam(fixtures::id()));
    }

    fn round_trip(doc: Document) -> std::result::Result<(), TestCaseError> {
        let text = serialize(&doc);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(serialize(&back), text);
        Ok(())
    }

    proptest! {
        #[test]
        fn documents_round_trip(seed in any::<u64>(), dim in 1usize..=3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = random_reparam(&mut rng, 6);
            round_trip(Document::Reparam(f.clone()))?;
            round_trip(Document::StopData(f.stop_data()))?;
            round_trip(Document::Class(class_of(&f)))?;
            round_trip(Document::Class(TraceClass::from_values(random_value_set(&mut rng, 6)).unwrap()))?;
            let p = random_path(&mut rng, dim, 12, true);
            round_trip(Document::Path(p.clone()))?;
            let w = thin_homotopy(&p, &p.reparam(&f)).unwrap();
            round_trip(Document::Witness(w))?;
        }
    }
}
