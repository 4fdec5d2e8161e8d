//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use oomcalc::decision::{
    compare_options, expect, expect_closed_form, pearl_cross_check, pearl_expected, pearl_levels, verify_preference,
    DecisionOption, OomUtility, PearlMu, PearlRule, PearlValue, Preference,
};
use oomcalc::formulas::{
    parse_formula, search_counterexample, verify_gt, EvalResult, FiniteSet, Formula, Instantiation, Search,
};
use oomcalc::kappa::{default_lambda_pool, sample_prob_interpretation, KappaFunction, Rank};
use oomcalc::oom::{StarSampler, StarSamplerConfig};
use oomcalc::{ExtendedReal, OomValue};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn failures_outcome(checks: usize, failures: &[String]) -> Outcome {
    let mut detail = format!("{checks} checks, {} failures", failures.len());
    if let Some(first) = failures.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    outcome(failures.is_empty(), detail)
}

fn algebraic_laws() -> Outcome {
    let w = window(-6, 6);
    let mut checks = 0;
    let mut failures = Vec::new();
    for &a in &w {
        for &b in &w {
            checks += 2;
            if a + b != b + a {
                failures.push(format!("{a} + {b} not commutative"));
            }
            if a * b != b * a {
                failures.push(format!("{a} * {b} not commutative"));
            }
            for &c in &w {
                checks += 3;
                if (a + b) + c != a + (b + c) {
                    failures.push(format!("+ not associative at {a}, {b}, {c}"));
                }
                if (a * b) * c != a * (b * c) {
                    failures.push(format!("* not associative at {a}, {b}, {c}"));
                }
                if (a + b) * c != a * c + b * c {
                    failures.push(format!("distributivity fails at {a}, {b}, {c}"));
                }
            }
        }
    }
    failures_outcome(checks, &failures)
}

fn non_ring_and_pathology() -> Outcome {
    let one_minus_one = OomValue::ONE + OomValue::MINUS_ONE;
    let non_ring = one_minus_one == OomValue::signless(0) && one_minus_one != OomValue::ZERO;
    let (a, b, c) = (OomValue::ONE, OomValue::ZERO, OomValue::MINUS_ONE);
    let pathology = a.gt(b) && !(a + c).gt(b + c);
    outcome(
        non_ring && pathology,
        format!("1 + (-1) = {one_minus_one}; a > b: {}; a+c > b+c: {}", a.gt(b), (a + c).gt(b + c)),
    )
}

fn star_sampling() -> Outcome {
    let w = window(-6, 6);
    let mut sampler = StarSampler::new(StarSamplerConfig::with_seed(1));
    let mut checks = 0;
    let mut failures = Vec::new();
    for &a in &w {
        for &b in &w {
            for _ in 0..200 {
                let (r, s) = (sampler.sample(a), sampler.sample(b));
                checks += 3;
                if !oracle_member(&(&r + &s), a + b) {
                    failures.push(format!("{r} + {s} not in ({a} + {b})*"));
                }
                if !oracle_member(&(&r * &s), a * b) {
                    failures.push(format!("{r} * {s} not in ({a} * {b})*"));
                }
                if !oracle_member(&(-&r), -a) {
                    failures.push(format!("-({r}) not in (-{a})*"));
                }
                if let Ok(inv) = a.inv() {
                    checks += 1;
                    match r.recip() {
                        Ok(ri) if oracle_member(&ri, inv) => {}
                        _ => failures.push(format!("1/({r}) not in ({a})^-1*")),
                    }
                }
            }
        }
    }
    failures_outcome(checks, &failures)
}

fn finite_sets() -> Outcome {
    let set = |v: &[i64]| v.iter().map(|&x| ExtendedReal::from_int(x)).collect::<FiniteSet>();
    let (s, t, u) = (set(&[1]), set(&[1]), set(&[1, 2]));
    let lhs = s.add(&t).mul(&u);
    let rhs = s.mul(&u).add(&t.mul(&u));
    outcome(
        lhs == set(&[2, 4]) && rhs == set(&[2, 3, 4]),
        format!("(S+T)U has {} elements, SU+TU has {}", lhs.len(), rhs.len()),
    )
}

fn worked_formula() -> Outcome {
    let (f, names) = parse_formula("x2 + -(x1 * x3)").expect("parses");
    let value = |n: &str| match n {
        "x1" | "x2" => OomValue::neg(2),
        _ => OomValue::ONE,
    };
    let inst: Instantiation<OomValue> = names.iter().map(|(i, n)| (i, value(n))).collect();
    let result = f.eval(&inst).expect("instantiated");
    let shown = result.clone().value().map_or("undefined".to_string(), |v| v.to_string());
    outcome(result == EvalResult::Value(OomValue::signless(2)), format!("x2 + -(x1 * x3) = {shown}"))
}

/// Disjoint formula pairs with defined evaluations, filtered by whether
/// `f(a) > g(b)` holds.
fn formula_pairs(
    rng: &mut ChaCha8Rng,
    count: usize,
    want_gt: bool,
) -> Vec<(Formula, Instantiation<OomValue>, Formula, Instantiation<OomValue>)> {
    let mut out = Vec::new();
    while out.len() < count {
        let mut next = 0;
        let f = random_formula(rng, 3, &mut next);
        let g = random_formula(rng, 3, &mut next);
        let a = random_instantiation(rng, &f, -3, 3);
        let b = random_instantiation(rng, &g, -3, 3);
        let (Ok(EvalResult::Value(x)), Ok(EvalResult::Value(y))) = (f.eval(&a), g.eval(&b)) else {
            continue;
        };
        if x.gt(y) == want_gt {
            out.push((f, a, g, b));
        }
    }
    out
}

fn formula_soundness() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let pairs = formula_pairs(&mut rng, 500, true);
    let mut samples = 0;
    let mut failures = Vec::new();
    for (k, (f, a, g, b)) in pairs.iter().enumerate() {
        let cfg = StarSamplerConfig::with_seed(k as u64);
        let report = verify_gt(f, a, g, b, &cfg, 100).expect("defined pair");
        samples += report.samples;
        if !report.is_sound() || report.samples != 100 {
            failures.push(format!("{f} > {g}: {} failures", report.failures));
        }
    }
    let elapsed = start.elapsed();
    let mut o = failures_outcome(samples, &failures);
    o.passed &= elapsed < Duration::from_secs(300);
    o.detail = format!("500 pairs, {}; {:.1}s", o.detail, elapsed.as_secs_f64());
    o
}

fn formula_completeness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let pairs = formula_pairs(&mut rng, 200, false);
    let mut failures = Vec::new();
    let (mut directed, mut total_attempts) = (0, 0);
    for (k, (f, a, g, b)) in pairs.iter().enumerate() {
        let cfg = StarSamplerConfig::with_seed(k as u64);
        match search_counterexample(f, a, g, b, &cfg, 10_000).expect("defined pair") {
            Search::Found(w) => {
                total_attempts += w.attempts;
                directed += usize::from(w.directed);
                // re-check the witness independently
                let members = w.lhs.iter().all(|(i, r)| oracle_member(r, a[i]))
                    && w.rhs.iter().all(|(i, r)| oracle_member(r, b[i]));
                let breaks = match (f.eval(&w.lhs), g.eval(&w.rhs)) {
                    (Ok(EvalResult::Value(x)), Ok(EvalResult::Value(y))) => x <= y,
                    (Ok(l), Ok(r)) => l.is_undefined() || r.is_undefined(),
                    _ => false,
                };
                if !members || !breaks {
                    failures.push(format!("invalid witness for {f} > {g}"));
                }
            }
            Search::Exhausted { .. } => failures.push(format!("exhausted on {f} > {g}")),
        }
    }
    let mut o = failures_outcome(200, &failures);
    o.detail = format!("{}; {directed} directed, {total_attempts} attempts in total", o.detail);
    o
}

fn kappa_isomorphism() -> Outcome {
    let ranks: Vec<Rank> = (0..=20).map(Rank::Finite).chain([Rank::Infinite]).collect();
    let mut checks = 0;
    let mut failures = Vec::new();
    for &m in &ranks {
        for &n in &ranks {
            checks += 3;
            let (a, b) = (m.to_oom(), n.to_oom());
            if m.min(n).to_oom() != a + b {
                failures.push(format!("min({m},{n})"));
            }
            if (m + n).to_oom() != a * b {
                failures.push(format!("{m}+{n}"));
            }
            if (m < n) != a.gt(b) {
                failures.push(format!("{m}<{n}"));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let size = rng.gen_range(1..=6);
        let k = random_kappa(&mut rng, size, 6);
        let p = k.to_oom();
        let (a, b) = (random_event(&mut rng, size), random_event(&mut rng, size));
        checks += 1;
        match (k.conditional(&a, &b), p.conditional(&a, &b)) {
            (Ok(r), Ok(v)) if r.to_oom() == v => {}
            (Err(_), Err(_)) => {}
            (x, y) => failures.push(format!("{:?} vs {:?}", x, y)),
        }
    }
    failures_outcome(checks, &failures)
}

fn interpretation_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let pool = default_lambda_pool();
    let mut failures = Vec::new();
    for _ in 0..1000 {
        let size = rng.gen_range(1..=6);
        let p = random_probability(&mut rng, size);
        let r = sample_prob_interpretation(&p, &pool, &mut rng);
        let total: ExtendedReal = r.atoms().iter().cloned().sum();
        let atoms_ok = r.atoms().iter().zip(p.atoms()).all(|(x, a)| oracle_classify(x) == *a);
        if total != ExtendedReal::one() || r.classify() != p || !atoms_ok {
            failures.push(format!("{:?}", p.atoms()));
        }
    }
    failures_outcome(1000, &failures)
}

fn linearity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut failures = Vec::new();
    for _ in 0..1000 {
        let size = rng.gen_range(1..=6);
        let k = random_kappa(&mut rng, size, 5);
        let p = k.to_oom();
        let (u, v) = (random_utility(&mut rng, size), random_utility(&mut rng, size));
        let lambda = random_oom(&mut rng, -4, 4);
        let e = |w: &OomUtility| expect(&p, w).expect("same space");
        let checks = [
            e(&u.add(&v).expect("same space")) == e(&u) + e(&v),
            e(&u.negated()) == -e(&u),
            e(&OomUtility::constant(labels(size), lambda)) == lambda,
            e(&u.scaled(lambda)) == lambda * e(&u),
            expect_closed_form(&k, &u).expect("same space") == e(&u),
        ];
        if let Some(i) = checks.iter().position(|ok| !ok) {
            failures.push(format!("law {} fails for {:?}, {:?}", i + 1, k.ranks(), u.values()));
        }
    }
    failures_outcome(5000, &failures)
}

fn kappa2(ranks: [u64; 2]) -> KappaFunction {
    KappaFunction::new(labels(2), ranks.map(Rank::Finite).to_vec()).expect("normalised")
}

fn mu2(values: [i64; 2]) -> PearlMu {
    PearlMu::new(labels(2), values.to_vec()).expect("sized")
}

fn pearl_single() -> Outcome {
    let (k, mu) = (kappa2([0, 0]), mu2([4, -3]));
    let levels = pearl_levels(&k, &mu).expect("same space");
    let original = pearl_expected(levels, PearlRule::Original);
    let amended = pearl_expected(levels, PearlRule::Amended);
    let e = expect(&k.to_oom(), &mu.to_utility()).expect("same space");
    let ok = (levels.n_plus, levels.n_minus) == (4, 3)
        && original == PearlValue::Value(1)
        && amended == PearlValue::Value(4)
        && e == OomValue::pos(-4);
    outcome(
        ok,
        format!(
            "(n+, n-) = ({}, {}); original {original}; amended {amended}; P(U) = {e}",
            levels.n_plus, levels.n_minus
        ),
    )
}

fn pearl_two_options() -> Outcome {
    let k = kappa2([0, 0]);
    let (mu1, mu2v) = (mu2([2, -2]), mu2([-5, -5]));
    let a1 = pearl_expected(pearl_levels(&k, &mu1).expect("same space"), PearlRule::Amended);
    let a2 = pearl_expected(pearl_levels(&k, &mu2v).expect("same space"), PearlRule::Amended);
    let o1 = DecisionOption::from_kappa_mu("option1", &k, &mu1).expect("same space");
    let o2 = DecisionOption::from_kappa_mu("option2", &k, &mu2v).expect("same space");
    let (e1, e2) = (o1.expectation(), o2.expectation());
    let preference = compare_options(e1, e2);
    let report = verify_preference(&o1, &o2, &StarSamplerConfig::with_seed(12), 200, 1000).expect("same space");
    let ok = a1 == PearlValue::Ambiguous
        && a2 == PearlValue::Value(-5)
        && e1 == OomValue::signless(-2)
        && e2 == OomValue::neg(-5)
        && preference == Preference::FirstPreferred
        && report.samples >= 200
        && report.is_sound();
    outcome(
        ok,
        format!(
            "Pearl {a1} vs {a2}; P1(U1) = {e1}, P2(U2) = {e2}; {preference}; {}/{} tuples sound",
            report.samples - report.failures,
            report.samples
        ),
    )
}

fn pearl_correspondence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut failures = Vec::new();
    for _ in 0..1000 {
        let size = rng.gen_range(1..=6);
        let k = random_kappa(&mut rng, size, 6);
        let mu = random_mu(&mut rng, size);
        let check = pearl_cross_check(&k, &mu).expect("same space");
        if !check.agrees() {
            failures.push(format!("{:?} {:?}: {} vs {}", k.ranks(), mu.values(), check.expectation, check.predicted));
        }
    }
    failures_outcome(1000, &failures)
}

fn sign_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut failures = Vec::new();
    for _ in 0..1000 {
        let r = random_nonzero_er(&mut rng);
        let y = r.sign_bound().expect("nonzero");
        let x = y / num_bigint::BigInt::from(2);
        let value = oracle_eval(&r, &x);
        let expected = oracle_classify(&r).sign();
        let ok = match expected {
            oomcalc::Sign::Pos => value.is_positive(),
            oomcalc::Sign::Neg => value.is_negative(),
            oomcalc::Sign::Zero => false,
        };
        if !ok || r.eval(&x).ok() != Some(value.clone()) {
            failures.push(format!("{r} at {x} = {value}"));
        }
    }
    failures_outcome(1000, &failures)
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);
    let criteria: [Criterion; 14] = [
        ("algebraic laws over orders [-6,6] and inf", algebraic_laws, Some(Duration::from_secs(60))),
        ("1 + (-1) = (0,0) and the ordering pathology", non_ring_and_pathology, None),
        ("star-set membership of sampled sums, products, negations, inverses", star_sampling, None),
        ("finite-set distributivity counterexample", finite_sets, None),
        ("worked formula evaluates to (0,2)", worked_formula, None),
        ("formula soundness on 500 pairs x 100 interpretations", formula_soundness, Some(Duration::from_secs(300))),
        ("formula completeness witnesses on 200 pairs, budget 10^4", formula_completeness, None),
        ("kappa to order-of-magnitude isomorphism and conditioning", kappa_isomorphism, None),
        ("probabilistic interpretation round trip", interpretation_round_trip, None),
        ("expectation linearity and closed form", linearity, None),
        ("Pearl values for a single option", pearl_single, None),
        ("Pearl values for two options and their comparison", pearl_two_options, None),
        ("Pearl four-case correspondence", pearl_correspondence, None),
        ("sign bound against direct evaluation", sign_bound, None),
    ];
    let mut all = true;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut o = run();
        let elapsed = start.elapsed();
        if let Some(limit) = limit {
            if elapsed >= limit {
                o.passed = false;
                o.detail.push_str(&format!("; took {:.1}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs()));
            }
        }
        all &= o.passed;
        println!(
            "{} {:>2}. {name}: {} [{:.2}s]",
            if o.passed { "PASS" } else { "FAIL" },
            i + 1,
            o.detail,
            elapsed.as_secs_f64()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
