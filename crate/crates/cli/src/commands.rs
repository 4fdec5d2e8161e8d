use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::{json, Value};

use oomcalc::decision::{
    compare_options, expectation_witness, pearl_cross_check, pearl_expected, pearl_levels, verify_preference,
    ExpectationWitness, InterpretationTuple, PearlRule, PearlValue, Preference, PreferenceReport,
};
use oomcalc::formulas::{
    parse_formula_with, search_counterexample, undefined_witness, verify_gt, EvalResult, Formula, Instantiation,
    Search, SymbolTable, WitnessPair,
};
use oomcalc::kappa::OutcomeSpace;
use oomcalc::oom::StarSamplerConfig;
use oomcalc::{ExtendedReal, OomValue, Sign};

use crate::env::{display_names, instantiate, Env};
use crate::problem::Problem;

pub const SCHEMA: &str = "oomcalc.report/1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNDEFINED: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;
pub const EXIT_UNSOUND: i32 = 4;

/// Sampling parameters shared by the verifying commands.
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    pub budget: usize,
}

impl RunConfig {
    fn sampler(&self) -> StarSamplerConfig {
        StarSamplerConfig::with_seed(self.seed)
    }
}

/// Human-readable text, the machine document, and the exit code of one run.
pub struct Report {
    pub text: String,
    pub machine: Value,
    pub code: i32,
}

fn document(command: &str, body: Value) -> Value {
    let mut doc = json!({ "schema": SCHEMA, "command": command });
    if let (Some(d), Value::Object(b)) = (doc.as_object_mut(), body) {
        d.extend(b);
    }
    doc
}

fn show(v: &EvalResult<OomValue>) -> String {
    match v {
        EvalResult::Value(v) => v.to_string(),
        EvalResult::Undefined => "undefined".to_string(),
    }
}

fn show_er(v: &EvalResult<ExtendedReal>) -> String {
    match v {
        EvalResult::Value(v) => v.to_string(),
        EvalResult::Undefined => "undefined".to_string(),
    }
}

fn as_json(v: &EvalResult<OomValue>) -> Value {
    match v {
        EvalResult::Value(v) => json!(v.to_string()),
        EvalResult::Undefined => Value::Null,
    }
}

struct Parsed {
    formula: Formula,
    value: EvalResult<OomValue>,
}

fn parse_and_eval(text: &str, table: &mut SymbolTable, env: &Env) -> Result<(Parsed, Instantiation<OomValue>), String> {
    let formula = parse_formula_with(text, table).map_err(|e| format!("{text:?}: {e}"))?;
    let inst = instantiate(table, env)?;
    let value = formula.eval(&inst).map_err(|e| e.to_string())?;
    Ok((Parsed { formula, value }, inst))
}

pub fn eval(expr: &str, env: &Env) -> Result<Report, String> {
    let mut table = SymbolTable::new();
    let (p, _) = parse_and_eval(expr, &mut table, env)?;
    Ok(Report {
        text: format!("{}\n", show(&p.value)),
        machine: document(
            "eval",
            json!({ "expression": expr, "defined": !p.value.is_undefined(), "result": as_json(&p.value) }),
        ),
        code: if p.value.is_undefined() { EXIT_UNDEFINED } else { EXIT_OK },
    })
}

pub fn compare(lhs: &str, rhs: &str, env: &Env) -> Result<Report, String> {
    let mut table = SymbolTable::new();
    let (l, _) = parse_and_eval(lhs, &mut table, env)?;
    let (r, _) = parse_and_eval(rhs, &mut table, env)?;
    let relation = match (&l.value, &r.value) {
        (EvalResult::Value(a), EvalResult::Value(b)) => Some(a.compare(*b)),
        _ => None,
    };
    let shown = relation.map_or_else(|| "undefined".to_string(), |c| c.to_string());
    Ok(Report {
        text: format!("{} {} {}\n", show(&l.value), shown, show(&r.value)),
        machine: document(
            "compare",
            json!({
                "lhs": { "expression": lhs, "value": as_json(&l.value) },
                "rhs": { "expression": rhs, "value": as_json(&r.value) },
                "relation": relation.map(|c| c.to_string()),
            }),
        ),
        code: if relation.is_some() { EXIT_OK } else { EXIT_UNDEFINED },
    })
}

pub fn expect(problem: &Problem) -> Report {
    let mut text = String::new();
    let mut options = Vec::new();
    let values: Vec<OomValue> = problem.options.iter().map(|o| o.option.expectation()).collect();
    for (o, e) in problem.options.iter().zip(&values) {
        writeln!(text, "{}: {}", o.option.name(), e).unwrap();
        options.push(json!({ "name": o.option.name(), "expectation": e.to_string() }));
    }
    let mut pairs = Vec::new();
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            let (a, b) = (problem.options[i].option.name(), problem.options[j].option.name());
            let verdict = compare_options(values[i], values[j]);
            writeln!(text, "{a} vs {b}: {verdict}").unwrap();
            pairs.push(json!({ "first": a, "second": b, "verdict": verdict.to_string() }));
        }
    }
    Report {
        text,
        machine: document("expect", json!({ "options": options, "comparisons": pairs })),
        code: EXIT_OK,
    }
}

pub fn pearl(problem: &Problem) -> Result<Report, String> {
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut code = EXIT_OK;
    for (i, o) in problem.options.iter().enumerate() {
        let (Some(k), Some(mu)) = (&o.kappa, &o.mu) else {
            return Err(format!("options[{i}]: the pearl command needs `kappa` and `mu` blocks"));
        };
        let check = pearl_cross_check(k, mu).map_err(|e| e.to_string())?;
        if !check.agrees() {
            code = EXIT_UNSOUND;
        }
        writeln!(
            text,
            "{}: n+={} n-={} original={} amended={} oom={} predicted={} agrees={}",
            o.option.name(),
            check.levels.n_plus,
            check.levels.n_minus,
            check.original,
            check.amended,
            check.expectation,
            check.predicted,
            if check.agrees() { "yes" } else { "no" },
        )
        .unwrap();
        rows.push(json!({
            "name": o.option.name(),
            "n_plus": check.levels.n_plus,
            "n_minus": check.levels.n_minus,
            "original": check.original.to_string(),
            "amended": check.amended.to_string(),
            "expectation": check.expectation.to_string(),
            "predicted": check.predicted.to_string(),
            "agrees": check.agrees(),
        }));
    }
    Ok(Report {
        text,
        machine: document("pearl", json!({ "options": rows })),
        code,
    })
}

fn instantiation_json(inst: &Instantiation<ExtendedReal>, names: &BTreeMap<usize, String>) -> Value {
    Value::Object(inst.iter().map(|(i, v)| (names[i].clone(), json!(v.to_string()))).collect())
}

fn write_instantiation(text: &mut String, inst: &Instantiation<ExtendedReal>, names: &BTreeMap<usize, String>) {
    for (i, v) in inst {
        writeln!(text, "  {} = {}", names[i], v).unwrap();
    }
}

fn attempts_phrase(attempts: usize) -> String {
    let plural = if attempts == 1 { "" } else { "s" };
    format!("{attempts} attempt{plural}")
}

fn how(attempts: usize, directed: bool) -> String {
    let kind = if directed { "directed" } else { "sampled" };
    format!("{}, {kind}", attempts_phrase(attempts))
}

fn pair_json(w: &WitnessPair, names: &BTreeMap<usize, String>) -> Value {
    json!({
        "lhs_interpretation": instantiation_json(&w.lhs, names),
        "rhs_interpretation": instantiation_json(&w.rhs, names),
        "lhs_value": show_er(&w.lhs_value),
        "rhs_value": show_er(&w.rhs_value),
        "attempts": w.attempts,
        "directed": w.directed,
    })
}

fn write_pair(text: &mut String, w: &WitnessPair, names: &BTreeMap<usize, String>) {
    write_instantiation(text, &w.lhs, names);
    write_instantiation(text, &w.rhs, names);
    writeln!(text, "  lhs = {}", show_er(&w.lhs_value)).unwrap();
    writeln!(text, "  rhs = {}", show_er(&w.rhs_value)).unwrap();
}

/// Verifies `EXPR1 > EXPR2` against exact interpretations.
pub fn verify_claim(claim: &str, env: &Env, run: &RunConfig) -> Result<Report, String> {
    let (lhs, rhs) = claim
        .split_once('>')
        .ok_or_else(|| format!("{claim:?}: expected a claim of the form `EXPR1 > EXPR2`"))?;
    let (lhs, rhs) = (lhs.trim(), rhs.trim());
    let mut table = SymbolTable::new();
    let (l, _) = parse_and_eval(lhs, &mut table, env)?;
    // the second instantiation covers both sides' symbols
    let (r, inst) = parse_and_eval(rhs, &mut table, env)?;
    let names = display_names(&table);
    let cfg = run.sampler();

    let mut text = format!("claim: {lhs} > {rhs}\nlhs: {}\nrhs: {}\n", show(&l.value), show(&r.value));
    let mut body = json!({
        "kind": "claim",
        "claim": format!("{lhs} > {rhs}"),
        "seed": run.seed,
        "lhs": as_json(&l.value),
        "rhs": as_json(&r.value),
    });
    let obj = body.as_object_mut().expect("object");

    for (side, parsed) in [("lhs", &l), ("rhs", &r)] {
        if !parsed.value.is_undefined() {
            continue;
        }
        let search = undefined_witness(&parsed.formula, &inst, &cfg, run.budget).map_err(|e| e.to_string())?;
        let (code, entry) = match &search {
            Search::Found(w) => {
                writeln!(text, "{side} is undefined; witness after {}:", how(w.attempts, w.directed)).unwrap();
                write_instantiation(&mut text, &w.interpretation, &names);
                (
                    EXIT_UNDEFINED,
                    json!({
                        "found": true,
                        "interpretation": instantiation_json(&w.interpretation, &names),
                        "attempts": w.attempts,
                        "directed": w.directed,
                    }),
                )
            }
            Search::Exhausted { attempts } => {
                writeln!(text, "{side} is undefined; no witness within {}", attempts_phrase(*attempts)).unwrap();
                (EXIT_EXHAUSTED, json!({ "found": false, "attempts": attempts }))
            }
        };
        obj.insert("undefined_side".into(), json!(side));
        obj.insert("undefined_witness".into(), entry);
        return Ok(Report {
            text,
            machine: document("verify", body),
            code,
        });
    }

    let report = verify_gt(&l.formula, &inst, &r.formula, &inst, &cfg, run.samples).map_err(|e| e.to_string())?;
    writeln!(text, "relation: {}", report.relation).unwrap();
    obj.insert("relation".into(), json!(report.relation.to_string()));
    obj.insert("holds".into(), json!(report.holds));

    let code = if report.holds {
        let sound = report.samples - report.failures;
        writeln!(text, "soundness: {sound}/{} samples satisfy the strict inequality", report.samples).unwrap();
        let mut entry = json!({ "samples": report.samples, "failures": report.failures });
        if let Some(w) = &report.counterexample {
            text.push_str("counterexample:\n");
            write_pair(&mut text, w, &names);
            entry["counterexample"] = pair_json(w, &names);
        }
        obj.insert("soundness".into(), entry);
        if report.is_sound() {
            EXIT_OK
        } else {
            EXIT_UNSOUND
        }
    } else {
        let search =
            search_counterexample(&l.formula, &inst, &r.formula, &inst, &cfg, run.budget).map_err(|e| e.to_string())?;
        match &search {
            Search::Found(w) => {
                writeln!(text, "the relation does not hold; witness pair after {}:", how(w.attempts, w.directed))
                    .unwrap();
                write_pair(&mut text, w, &names);
                let mut entry = pair_json(w, &names);
                entry["found"] = json!(true);
                obj.insert("witness".into(), entry);
                EXIT_OK
            }
            Search::Exhausted { attempts } => {
                writeln!(text, "the relation does not hold; no witness pair within {}", attempts_phrase(*attempts))
                    .unwrap();
                obj.insert("witness".into(), json!({ "found": false, "attempts": attempts }));
                EXIT_EXHAUSTED
            }
        }
    };
    Ok(Report {
        text,
        machine: document("verify", body),
        code,
    })
}

fn labelled(space: &OutcomeSpace, values: &[ExtendedReal]) -> Value {
    Value::Object(
        space
            .labels()
            .iter()
            .zip(values)
            .map(|(l, v)| (l.clone(), json!(v.to_string())))
            .collect(),
    )
}

fn tuple_json(space: &OutcomeSpace, t: &InterpretationTuple) -> Value {
    json!({
        "r1": labelled(space, t.r1.atoms()),
        "v1": labelled(space, &t.v1),
        "r2": labelled(space, t.r2.atoms()),
        "v2": labelled(space, &t.v2),
        "value1": t.value1.to_string(),
        "value2": t.value2.to_string(),
        "attempts": t.attempts,
        "directed": t.directed,
    })
}

fn write_tuple(text: &mut String, space: &OutcomeSpace, names: (&str, &str), t: &InterpretationTuple) {
    for (name, r, v, value) in [(names.0, &t.r1, &t.v1, &t.value1), (names.1, &t.r2, &t.v2, &t.value2)] {
        writeln!(text, "    {name}: R = {{{}}}", line(space, r.atoms())).unwrap();
        writeln!(text, "    {name}: V = {{{}}}", line(space, v)).unwrap();
        writeln!(text, "    {name}: R(V) = {value}").unwrap();
    }
}

fn line(space: &OutcomeSpace, values: &[ExtendedReal]) -> String {
    space
        .labels()
        .iter()
        .zip(values)
        .map(|(l, v)| format!("{l}: {v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Interpretations of a Pearl-ambiguous option with expected utility of
/// each sign.
fn ambiguity_witnesses(
    problem: &Problem,
    index: usize,
    cfg: &StarSamplerConfig,
    budget: usize,
    text: &mut String,
) -> (Value, i32) {
    let opt = &problem.options[index].option;
    let mut entry = json!({});
    let mut code = EXIT_OK;
    for (key, sign) in [("positive", Sign::Pos), ("negative", Sign::Neg)] {
        match expectation_witness(opt, sign, cfg, budget) {
            Search::Found(ExpectationWitness {
                r,
                v,
                value,
                attempts,
                directed,
            }) => {
                writeln!(text, "  {} ambiguous, {key} witness: {}", opt.name(), how(attempts, directed)).unwrap();
                writeln!(text, "    R = {{{}}}", line(&problem.space, r.atoms())).unwrap();
                writeln!(text, "    V = {{{}}}", line(&problem.space, &v)).unwrap();
                writeln!(text, "    R(V) = {value}").unwrap();
                entry[key] = json!({
                    "found": true,
                    "r": labelled(&problem.space, r.atoms()),
                    "v": labelled(&problem.space, &v),
                    "value": value.to_string(),
                    "attempts": attempts,
                    "directed": directed,
                });
            }
            Search::Exhausted { attempts } => {
                writeln!(text, "  {} ambiguous, {key} witness: none within {}", opt.name(), attempts_phrase(attempts))
                    .unwrap();
                entry[key] = json!({ "found": false, "attempts": attempts });
                code = EXIT_EXHAUSTED;
            }
        }
    }
    (entry, code)
}

fn pair_report(
    problem: &Problem,
    (i, j): (usize, usize),
    report: &PreferenceReport,
    run: &RunConfig,
    text: &mut String,
) -> (Value, i32) {
    let (a, b) = (&problem.options[i], &problem.options[j]);
    let names = (a.option.name(), b.option.name());
    let space = &problem.space;
    writeln!(text, "{} vs {}: {} vs {}: {}", names.0, names.1, report.e1, report.e2, report.preference).unwrap();
    let mut entry = json!({
        "first": names.0,
        "second": names.1,
        "e1": report.e1.to_string(),
        "e2": report.e2.to_string(),
        "verdict": report.preference.to_string(),
    });
    let mut code = EXIT_OK;

    if let (Some(k1), Some(m1), Some(k2), Some(m2)) = (&a.kappa, &a.mu, &b.kappa, &b.mu) {
        let amended = |k, m| pearl_levels(k, m).map(|l| pearl_expected(l, PearlRule::Amended));
        if let (Ok(p1), Ok(p2)) = (amended(k1, m1), amended(k2, m2)) {
            writeln!(text, "  pearl (amended): {p1} vs {p2}").unwrap();
            entry["pearl_amended"] = json!([p1.to_string(), p2.to_string()]);
            let mut ambiguous = Vec::new();
            for (index, value) in [(i, p1), (j, p2)] {
                if value == PearlValue::Ambiguous {
                    let (w, c) = ambiguity_witnesses(problem, index, &run.sampler(), run.budget, text);
                    ambiguous.push(json!({ "name": problem.options[index].option.name(), "witnesses": w }));
                    code = code.max(c);
                }
            }
            entry["pearl_ambiguous"] = Value::Array(ambiguous);
        }
    }

    if report.preference != Preference::NoStrictPreference {
        let sound = report.samples - report.failures;
        writeln!(text, "  soundness: {sound}/{} sampled tuples preserve the preference", report.samples).unwrap();
        let mut s = json!({ "samples": report.samples, "failures": report.failures });
        if let Some(t) = &report.counterexample {
            text.push_str("  counterexample:\n");
            write_tuple(text, space, names, t);
            s["counterexample"] = tuple_json(space, t);
            code = EXIT_UNSOUND;
        }
        entry["soundness"] = s;
    }

    let searches = [
        ("first_not_greater", names.0, names.1, &report.first_not_greater),
        ("second_not_greater", names.1, names.0, &report.second_not_greater),
    ];
    for (key, hi, lo, search) in searches {
        let Some(search) = search else { continue };
        match search {
            Search::Found(t) => {
                writeln!(text, "  witness {hi} not above {lo}: {}", how(t.attempts, t.directed)).unwrap();
                write_tuple(text, space, names, t);
                let mut w = tuple_json(space, t);
                w["found"] = json!(true);
                entry[key] = w;
            }
            Search::Exhausted { attempts } => {
                writeln!(text, "  witness {hi} not above {lo}: none within {}", attempts_phrase(*attempts)).unwrap();
                entry[key] = json!({ "found": false, "attempts": attempts });
                code = code.max(EXIT_EXHAUSTED);
            }
        }
    }
    (entry, code)
}

/// Verifies every pairwise comparison of a problem against exact
/// probabilistic and utility interpretations.
pub fn verify_problem(problem: &Problem, run: &RunConfig) -> Result<Report, String> {
    if problem.options.len() < 2 {
        return Err("options: verify needs at least two options".into());
    }
    let cfg = run.sampler();
    let mut text = String::new();
    let mut pairs = Vec::new();
    let mut code = EXIT_OK;
    for i in 0..problem.options.len() {
        for j in i + 1..problem.options.len() {
            let (a, b) = (&problem.options[i].option, &problem.options[j].option);
            let report = verify_preference(a, b, &cfg, run.samples, run.budget).map_err(|e| e.to_string())?;
            let (entry, c) = pair_report(problem, (i, j), &report, run, &mut text);
            pairs.push(entry);
            code = code.max(c);
        }
    }
    Ok(Report {
        text,
        machine: document("verify", json!({ "kind": "problem", "seed": run.seed, "comparisons": pairs })),
        code,
    })
}
