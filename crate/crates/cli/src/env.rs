//! Environment files binding formula names to order-of-magnitude values.
//!
//! Either a JSON object of literals, or one `name = literal` binding per line
//! with `#` comments.

use std::collections::BTreeMap;

use oomcalc::formulas::{Instantiation, SymbolTable};
use oomcalc::OomValue;

pub type Env = BTreeMap<String, OomValue>;

pub fn parse_env(text: &str) -> Result<Env, String> {
    if text.trim_start().starts_with('{') {
        return parse_json_env(text);
    }
    let mut env = Env::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, literal) = line
            .split_once('=')
            .ok_or_else(|| format!("line {}: expected `name = value`", lineno + 1))?;
        let name = name.trim();
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(format!("line {}: invalid name {name:?}", lineno + 1));
        }
        let value = literal
            .trim()
            .parse()
            .map_err(|e| format!("line {}: {e}", lineno + 1))?;
        if env.insert(name.to_string(), value).is_some() {
            return Err(format!("line {}: {name} bound twice", lineno + 1));
        }
    }
    Ok(env)
}

fn parse_json_env(text: &str) -> Result<Env, String> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    let object = value.as_object().ok_or("environment must be a JSON object")?;
    object
        .iter()
        .map(|(name, v)| {
            let literal = v.as_str().ok_or_else(|| format!("{name}: expected a string literal"))?;
            let parsed = literal.parse().map_err(|e| format!("{name}: {e}"))?;
            Ok((name.clone(), parsed))
        })
        .collect()
}

/// Instantiates every symbol of `table` from the environment.
pub fn instantiate(table: &SymbolTable, env: &Env) -> Result<Instantiation<OomValue>, String> {
    table
        .iter()
        .map(|(i, name)| {
            env.get(name)
                .map(|v| (i, *v))
                .ok_or_else(|| format!("no value bound for {name}"))
        })
        .collect()
}

/// Display names for symbols; repeated names get an occurrence suffix.
pub fn display_names(table: &SymbolTable) -> BTreeMap<usize, String> {
    let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
    table
        .iter()
        .map(|(i, name)| {
            let total = table.indices_of(name).count();
            let k = seen.entry(name).or_insert(0);
            *k += 1;
            let shown = if total > 1 { format!("{name}#{k}") } else { name.to_string() };
            (i, shown)
        })
        .collect()
}
