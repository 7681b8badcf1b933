//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits nonzero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quasipos::braid::torus_braid;
use quasipos::classifier::{Fact, Rule};
use quasipos::invariants::{alexander_burau, SeifertMatrix};
use quasipos::legendrian::{bennequin_sum, slice_genus_lower_bound};
use quasipos::sample;
use quasipos::syntax::{parse_braid_text, parse_expression_text};
use quasipos::{Class, Classifier, KnotExpression, LaurentPoly, Tri};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! check {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn torus_table() -> Outcome {
    let c = Classifier::default();
    let mut count = 0;
    for p in 2..=7i64 {
        for q in p + 1..=7 {
            if gcd(p, q) != 1 {
                continue;
            }
            let expected = (p - 1) * (q - 1) / 2;
            let tau = c
                .tau_certificate(&KnotExpression::torus(p, q))
                .map_err(|e| e.to_string())?
                .map(|(t, _)| t);
            check!(
                tau == Some(expected),
                "tau(T({p},{q})) = {tau:?}, expected {expected}"
            );
            let bound = slice_genus_lower_bound(&torus_braid(p, q).unwrap()).unwrap();
            check!(
                bound == expected,
                "slice-Bennequin bound of T({p},{q}) = {bound}, expected {expected}"
            );
            count += 1;
        }
    }
    Ok(format!("{count} torus knots"))
}

fn quasipositive_sharpness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let f = sample::random_qp_factorization(&mut rng, 6, 10, 6);
        let (b, m) = (f.strands() as i64, f.factors().len() as i64);
        let w = f.expand();
        check!(w.is_knot(), "sampled closure is not a knot");
        let sum = bennequin_sum(&w).unwrap();
        check!(
            sum == -b + m,
            "bennequin_sum {sum} != -b + m = {} for {w}",
            -b + m
        );
    }
    Ok("200 factorizations".into())
}

fn sqp_triple_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let c = Classifier::default();
    for _ in 0..200 {
        let f = sample::random_band_factorization(&mut rng, 6, 10);
        let surface = f.surface_stats().unwrap().genus;
        let bound = slice_genus_lower_bound(&f.expand()).unwrap();
        let v = c
            .classify(&KnotExpression::sqp_closure(f.clone()))
            .map_err(|e| e.to_string())?;
        let tau = v.derivation(Fact::Tau).ok_or("no tau derivation")?;
        check!(
            tau.rule == Rule::Sqp,
            "tau derived by {} instead of R-SQP",
            tau.rule
        );
        check!(
            surface == bound && v.tau == Some(surface),
            "surface genus {surface}, bound {bound}, tau {:?} for {:?}",
            v.tau,
            f.bands()
        );
    }
    Ok("200 factorizations".into())
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..300 {
        let w = sample::random_knot_word(&mut rng, 6, 14);
        let burau = alexander_burau(&w).map_err(|e| e.to_string())?;
        let seifert = SeifertMatrix::from_braid(&w)
            .and_then(|v| v.alexander())
            .map_err(|e| e.to_string())?;
        check!(burau == seifert, "{w}: Burau {burau} vs Seifert {seifert}");
    }
    let figure_eight = parse_braid_text("s1 s2' s1 s2' @3").unwrap();
    let expected = LaurentPoly::from_coeffs(-1, &[-1, 3, -1]);
    let burau = alexander_burau(&figure_eight).unwrap();
    check!(
        burau == expected,
        "figure-eight Alexander polynomial {burau}"
    );
    Ok("300 braids and the figure-eight".into())
}

fn twist_knots() -> Outcome {
    let c = Classifier::default();
    let is_square = |m: i64| (0..=m).any(|r| r * r == m);
    for n in 1..=50i64 {
        let v = c
            .classify(&KnotExpression::twist(n))
            .map_err(|e| e.to_string())?;
        check!(v.tau == Some(0), "tau(twist({n})) = {:?}", v.tau);
        let not_qp = v.flag(Class::NotQuasipositive);
        let expected = if is_square(4 * n + 1) {
            Tri::Unknown
        } else {
            Tri::Yes
        };
        check!(
            not_qp == expected,
            "twist({n}): NotQP = {not_qp}, expected {expected}"
        );
        if not_qp == Tri::Yes {
            let why = v.derivation(Fact::Flag(Class::NotQuasipositive)).unwrap();
            check!(why.rule == Rule::N4, "twist({n}) NotQP by {}", why.rule);
        }
    }
    for n in [2, 6, 12] {
        let v = c.classify(&KnotExpression::twist(n)).unwrap();
        check!(
            v.flag(Class::Quasipositive) == Tri::Unknown,
            "twist({n}) QP is not unknown"
        );
    }
    Ok("n = 1..50".into())
}

fn sign_convention() -> Outcome {
    let trefoil = parse_braid_text("s1^3 @2").unwrap();
    let sigma = SeifertMatrix::from_braid(&trefoil).unwrap().signature();
    check!(
        sigma == -2,
        "signature of the right-handed trefoil = {sigma}"
    );

    let c = Classifier::default();
    let classify = |text: &str| {
        c.classify(&parse_expression_text(text).unwrap())
            .map_err(|e| e.to_string())
    };
    let v = classify("closure(\"s1^3 @2\"){alternating}")?;
    let tau = v.derivation(Fact::Tau).ok_or("no tau")?;
    check!(
        tau.rule == Rule::Alternating && v.tau == Some(1),
        "R-ALT on the trefoil gave {:?} by {}",
        v.tau,
        tau.rule
    );
    let v = classify("T(2,3){alternating}")?;
    check!(v.tau == Some(1), "alternating T(2,3) tau {:?}", v.tau);

    let v = classify("twist(1){alternating}")?;
    check!(
        v.signature == Some(0) && v.tau == Some(0),
        "figure-eight sigma {:?} tau {:?}",
        v.signature,
        v.tau
    );
    check!(
        v.flag(Class::NotQuasipositive) == Tri::Yes,
        "figure-eight is not flagged NotQP"
    );
    let v = classify("closure(\"s1 s2' s1 s2' @3\"){alternating}")?;
    check!(
        v.signature == Some(0) && v.tau == Some(0),
        "figure-eight braid sigma {:?} tau {:?}",
        v.signature,
        v.tau
    );
    Ok("trefoil sigma = -2, tau = +1; figure-eight sigma = tau = 0".into())
}

fn iterated_torus() -> Outcome {
    let c = Classifier::default();
    let mut degenerate = Vec::new();
    for p1 in 2..=3i64 {
        for n1 in -1..=2i64 {
            for p2 in 2..=3i64 {
                for n2 in -1..=2i64 {
                    let e = KnotExpression::iterated_torus(&[(p1, n1), (p2, n2)]);
                    let v = c.classify(&e).map_err(|e| e.to_string())?;
                    let expected = n1 >= 0 && n2 >= 0;
                    let sqp = v.flag(Class::StronglyQuasipositive);
                    check!(
                        sqp == Tri::from_bool(expected),
                        "cable[({p1},{n1}),({p2},{n2})]: SQP = {sqp}"
                    );
                    if v.warnings.iter().any(|w| w.contains("P4")) {
                        degenerate.push(format!("[({p1},{n1}),({p2},{n2})]"));
                    }
                    if expected {
                        // cabling recursion, computed independently
                        let (q1, q2) = (p1 * n1 + 1, p2 * n2 + 1);
                        let g1 = (p1 - 1) * (q1.abs() - 1) / 2;
                        let g = p2 * g1 + (p2 - 1) * (q2.abs() - 1) / 2;
                        check!(
                            v.tau == Some(g) && v.genus == Some(g),
                            "cable[({p1},{n1}),({p2},{n2})]: tau {:?}, genus {:?}, expected {g}",
                            v.tau,
                            v.genus
                        );
                    }
                }
            }
        }
    }
    let v = c
        .classify(&parse_expression_text("cable[(2,1),(2,0)]").unwrap())
        .map_err(|e| e.to_string())?;
    check!(
        v.flag(Class::StronglyQuasipositive) == Tri::Yes && v.tau == Some(2) && v.genus == Some(2),
        "cable[(2,1),(2,0)] verdict {v:?}"
    );
    Ok(format!(
        "64 cables; {} with an unknotted stage and a negative n_i carry a P4 warning",
        degenerate.len()
    ))
}

fn chain_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let c = Classifier::default();
    for k in 0..1000 {
        let e = sample::random_expression(&mut rng, 3);
        let v = c.classify(&e).map_err(|err| {
            format!(
                "expression {k}: {}: {err}",
                quasipos::syntax::format_expression(&e)
            )
        })?;
        if let Some(violation) = v.consistency_violation() {
            return Err(format!("expression {k}: {violation}"));
        }
        check!(
            !(v.flag(Class::Quasipositive) == Tri::Yes
                && v.flag(Class::NotQuasipositive) == Tri::Yes),
            "expression {k}: QP and NotQP"
        );
        if let (Some(t), Some(g4)) = (v.tau, v.g4) {
            check!(t.abs() <= g4, "expression {k}: |tau| > g4");
        }
    }
    Ok("1000 expressions".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("torus-knot tau/genus table", torus_table),
        ("quasipositive sharpness", quasipositive_sharpness),
        ("SQP triple agreement", sqp_triple_agreement),
        ("Alexander oracle equivalence", oracle_equivalence),
        ("twist-knot suite", twist_knots),
        ("sign-convention anchor", sign_convention),
        ("iterated torus criterion", iterated_torus),
        ("chain consistency fuzzing", chain_consistency),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome =
            catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail}; {secs:.2}s)", k + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {detail} ({secs:.2}s)", k + 1);
            }
        }
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
