//! Decision-problem documents.
//!
//! ```json
//! {
//!   "outcomes": ["w1", "w2"],
//!   "options": [
//!     {"name": "option1", "kappa": {"w1": 0, "w2": "inf"}, "mu": {"w1": 2, "w2": -2}},
//!     {"name": "option2", "oom_prob": {"w1": "(+,0)", "w2": "0"}, "utility": {"w1": "(-,-5)", "w2": "(0,0)"}}
//!   ]
//! }
//! ```

use serde_json::{Map, Value};

use oomcalc::decision::{DecisionOption, OomUtility, PearlMu};
use oomcalc::kappa::{KappaFunction, OomProbability, OutcomeSpace, Rank};
use oomcalc::OomValue;

pub struct ProblemOption {
    pub option: DecisionOption,
    pub kappa: Option<KappaFunction>,
    pub mu: Option<PearlMu>,
}

pub struct Problem {
    pub space: OutcomeSpace,
    pub options: Vec<ProblemOption>,
}

fn at(path: &str, message: impl std::fmt::Display) -> String {
    format!("{path}: {message}")
}

/// Values of an outcome-keyed block, in outcome order.
fn block<T>(
    space: &OutcomeSpace,
    value: &Value,
    path: &str,
    parse: impl Fn(&Value) -> Result<T, String>,
) -> Result<Vec<T>, String> {
    let object = value.as_object().ok_or_else(|| at(path, "expected an object"))?;
    if let Some(extra) = object.keys().find(|k| space.index_of(k).is_err()) {
        return Err(at(&format!("{path}.{extra}"), "unknown outcome"));
    }
    space
        .labels()
        .iter()
        .map(|label| {
            let p = format!("{path}.{label}");
            let v = object.get(label).ok_or_else(|| at(&p, "missing outcome"))?;
            parse(v).map_err(|e| at(&p, e))
        })
        .collect()
}

fn rank(v: &Value) -> Result<Rank, String> {
    match v {
        Value::String(s) if s == "inf" => Ok(Rank::Infinite),
        _ => v
            .as_u64()
            .map(Rank::Finite)
            .ok_or_else(|| "expected a non-negative integer or \"inf\"".to_string()),
    }
}

fn literal(v: &Value) -> Result<OomValue, String> {
    v.as_str()
        .ok_or("expected a string literal such as \"(+,-4)\"")?
        .parse()
        .map_err(|e: oomcalc::oom::OomError| e.to_string())
}

fn grade(v: &Value) -> Result<i64, String> {
    v.as_i64().ok_or_else(|| "expected an integer".to_string())
}

/// Exactly one of the two keys must be present; returns the one found.
fn one_of<'k, 'v>(
    object: &'v Map<String, Value>,
    path: &str,
    a: &'k str,
    b: &'k str,
) -> Result<(&'k str, &'v Value), String> {
    match (object.get(a), object.get(b)) {
        (Some(v), None) => Ok((a, v)),
        (None, Some(v)) => Ok((b, v)),
        (Some(_), Some(_)) => Err(at(path, format!("give only one of `{a}` and `{b}`"))),
        (None, None) => Err(at(path, format!("missing `{a}` or `{b}`"))),
    }
}

fn parse_option(space: &OutcomeSpace, value: &Value, path: &str) -> Result<ProblemOption, String> {
    let object = value.as_object().ok_or_else(|| at(path, "expected an object"))?;
    let name = object
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| at(&format!("{path}.name"), "expected a string"))?;

    let (kind, v) = one_of(object, path, "kappa", "oom_prob")?;
    let p = format!("{path}.{kind}");
    let (probability, kappa) = if kind == "kappa" {
        let k = KappaFunction::new(space.clone(), block(space, v, &p, rank)?).map_err(|e| at(&p, e))?;
        (k.to_oom(), Some(k))
    } else {
        let prob = OomProbability::new(space.clone(), block(space, v, &p, literal)?).map_err(|e| at(&p, e))?;
        (prob, None)
    };

    let (kind, v) = one_of(object, path, "utility", "mu")?;
    let p = format!("{path}.{kind}");
    let (utility, mu) = if kind == "utility" {
        let u = OomUtility::new(space.clone(), block(space, v, &p, literal)?).map_err(|e| at(&p, e))?;
        (u, None)
    } else {
        let m = PearlMu::new(space.clone(), block(space, v, &p, grade)?).map_err(|e| at(&p, e))?;
        (m.to_utility(), Some(m))
    };

    let option = DecisionOption::new(name, probability, utility).map_err(|e| at(path, e))?;
    Ok(ProblemOption { option, kappa, mu })
}

pub fn parse_problem(text: &str) -> Result<Problem, String> {
    let doc: Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    let labels = doc
        .get("outcomes")
        .and_then(Value::as_array)
        .ok_or("outcomes: expected a list of labels")?
        .iter()
        .enumerate()
        .map(|(i, l)| {
            l.as_str()
                .map(str::to_string)
                .ok_or_else(|| at(&format!("outcomes[{i}]"), "expected a string"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let space = OutcomeSpace::new(labels).map_err(|e| at("outcomes", e))?;
    let options = doc
        .get("options")
        .and_then(Value::as_array)
        .ok_or("options: expected a list")?;
    if options.is_empty() {
        return Err("options: expected at least one option".into());
    }
    let options = options
        .iter()
        .enumerate()
        .map(|(i, o)| parse_option(&space, o, &format!("options[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Problem { space, options })
}
