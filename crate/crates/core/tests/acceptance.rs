//! Acceptance run: one PASS/FAIL line per criterion. Every check is exact,
//! so the residual tolerance is zero throughout; the minimum sample sizes
//! are pinned below.

mod common;

use common::{all_bindings, q, runner};
use homsplit::axioms::{self, Sq15Reading};
use homsplit::constructions as cons;
use homsplit::corpus::{verify_all, VerifyAllOptions};
use homsplit::morphisms::{fingerprint, push_forward};
use homsplit::operators::{self, GraphDirection, OperatorContext, OperatorKind};
use homsplit::polyring::Monomial;
use homsplit::sample::{self, int_grid};
use homsplit::{bundle_specialize, parse, AlgebraBundle, Error, Kind, LinearMap, Polynomial, RepresentationBundle};
use proptest::prelude::*;
use rand::Rng;

const RING_CASES: u32 = 1000;
const TRANSFER_GENERATED: usize = 50;
const HEMI_RANDOM: usize = 50;
const GRAPH_PAIRS: usize = 200;
const INDUCED_CASES: usize = 100;
const PUSH_FORWARDS: usize = 100;

/// Criteria that fail on a verified counterexample rather than a defect:
/// 6 asks the quotient map of every six-dendriform algebra to be a
/// dendriform homomorphism `D_perp -> D/I_D`, which `perp_only_six` refutes.
/// They still print FAIL; only failures outside this list fail the run.
const UNATTAINABLE: [usize; 1] = [6];

type Check = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn poly() -> impl Strategy<Value = Polynomial> {
    let term = (-6i64..=6, 1i64..=4, 0u32..=2, 0u32..=2);
    prop::collection::vec(term, 0..5).prop_map(|terms| {
        terms.into_iter().fold(Polynomial::zero(), |acc, (n, d, ea, eb)| {
            let m = Monomial::from_pairs([("a", ea), ("b", eb)].into_iter().filter(|(_, e)| *e > 0));
            acc + Polynomial::term(q(n, d), m)
        })
    })
}

fn kernel_soundness() -> Outcome {
    let ring = runner(RING_CASES).run(&(poly(), poly(), poly()), |(x, y, z)| {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x.clone()).is_zero());
        prop_assert_eq!(&x * &Polynomial::one(), x.clone());
        Ok(())
    });
    let round_trip = runner(RING_CASES).run(&poly(), |x| {
        prop_assert_eq!(parse(&x.to_string()).unwrap(), x);
        Ok(())
    });
    outcome(
        ring.is_ok() && round_trip.is_ok(),
        format!(
            "{RING_CASES} ring-axiom cases: {}; {RING_CASES} parse round trips: {}",
            if ring.is_ok() { "0 failures" } else { "failed" },
            if round_trip.is_ok() { "0 failures" } else { "failed" }
        ),
    )
}

fn splitting_transfer() -> Outcome {
    let mut failures = Vec::new();
    let mut corpus_checked = 0;
    for (id, b) in common::corpus().instances().unwrap() {
        if b.kind == Kind::QuadriDendriform && axioms::check_quadri(&b).unwrap().passed() {
            corpus_checked += 1;
            let d = cons::quadri_to_diassociative(&b).unwrap();
            let r = axioms::check_diassociative(&d).unwrap();
            if !r.is_empty() {
                failures.push(id);
            }
        }
    }
    let mut rng = sample::rng(common::seed() ^ 0xa2);
    let mut generated = 0;
    while generated < TRANSFER_GENERATED {
        let n = rng.gen_range(1..=2);
        let base = sample::random_dendriform(&mut rng, n).unwrap();
        let rep = sample::random_representation(&mut rng, &base).unwrap();
        let h = cons::hemi_semidirect(&rep).unwrap();
        if !(2..=4).contains(&h.dim) {
            continue;
        }
        generated += 1;
        let r = axioms::check_diassociative(&cons::quadri_to_diassociative(&h).unwrap()).unwrap();
        if !r.is_empty() {
            failures.push(format!("generated #{generated}"));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{corpus_checked} passing corpus quadri entries + {generated} hemi-semidirect instances (dims 2-4); \
             nonzero residuals: {failures:?}"
        ),
    )
}

fn hemi_closure() -> Outcome {
    let mut rng = sample::rng(common::seed() ^ 0xa3);
    let mut bases: Vec<(String, AlgebraBundle)> = (0..HEMI_RANDOM)
        .map(|i| {
            (
                format!("random #{i}"),
                sample::random_dendriform(&mut rng, 1 + i % 3).unwrap(),
            )
        })
        .collect();
    bases.push((
        "zero".into(),
        AlgebraBundle::zero(Kind::Dendriform, 2, LinearMap::identity(2)),
    ));
    let deta = common::instance("sec2.dendriform.Deta");
    let deta_ok = axioms::check_dendriform(&deta).unwrap().passed();
    if deta_ok {
        bases.push(("D(eta)".into(), deta));
    }
    let mut failures = Vec::new();
    for (name, b) in &bases {
        let rep = RepresentationBundle::adjoint(b).unwrap();
        if !axioms::check_quadri(&cons::hemi_semidirect(&rep).unwrap())
            .unwrap()
            .passed()
        {
            failures.push(name.clone());
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{} adjoint hemi-semidirect products (D(eta) {}); failing: {failures:?}",
            bases.len(),
            if deta_ok {
                "included"
            } else {
                "fails its own axioms, excluded"
            }
        ),
    )
}

fn graph_biconditional() -> Outcome {
    let mut rng = sample::rng(common::seed() ^ 0xa4);
    let grid = int_grid(-1, 1);
    let (mut agree, mut valid, mut disagreements) = (0, 0, 0);
    for round in 0..GRAPH_PAIRS {
        let rep = loop {
            let n = rng.gen_range(1..=2);
            let base = sample::random_dendriform(&mut rng, n).unwrap();
            let rep = sample::random_representation(&mut rng, &base).unwrap();
            if rep.module_dim * n <= 4 {
                break rep;
            }
        };
        let t = if round % 2 == 0 {
            sample::grid_matrix(&mut rng, rep.base.dim, rep.module_dim, &grid)
        } else {
            let sols = common::grid_operators(
                &OperatorContext::Representation(rep.clone()),
                OperatorKind::RelativeAveraging,
            );
            sols[rng.gen_range(0..sols.len())].clone()
        };
        let direct = operators::verify_relative_averaging(&rep, &t).unwrap().passed();
        let container = cons::hemi_semidirect(&rep).unwrap();
        let graph =
            operators::graph_is_subalgebra(&container, &t, GraphDirection::ModuleToBase { base_dim: rep.base.dim })
                .unwrap()
                .passed();
        if direct == graph {
            agree += 1;
        } else {
            disagreements += 1;
        }
        valid += usize::from(direct);
    }
    outcome(
        disagreements == 0,
        format!("{agree}/{GRAPH_PAIRS} pairs agree ({valid} valid operators); disagreements {disagreements}"),
    )
}

fn operator_induced() -> Outcome {
    let mut rng = sample::rng(common::seed() ^ 0xa5);
    let (mut a_cases, mut a_fail, mut zero_id) = (0, 0, 0);
    for i in 0..INDUCED_CASES {
        let (alg, h) = if i % 10 < 2 {
            let alg = sample::random_associative(&mut rng).unwrap();
            let n = alg.dim;
            zero_id += 1;
            let h = if i % 10 == 0 {
                LinearMap::zero(n, n)
            } else {
                LinearMap::identity(n)
            };
            (alg, h)
        } else {
            common::associative_with_averaging(&mut rng)
        };
        if operators::verify_averaging_assoc(&alg, &h).unwrap().passed() {
            a_cases += 1;
            let d = cons::averaging_induced_diassociative(&alg, &h).unwrap();
            if !axioms::check_diassociative(&d).unwrap().passed() {
                a_fail += 1;
            }
        }
    }
    let (mut b_fail, mut c_fail, mut d_fail, mut d_literal_fail) = (0, 0, 0, 0);
    let rounds = 20;
    for _ in 0..rounds {
        let (d, r) = common::diassociative_with_rota_baxter(&mut rng);
        let induced = cons::rota_baxter_induced(&d, &r).unwrap();
        if !axioms::check_diassociative(&induced).unwrap().passed()
            || !operators::verify_rota_baxter(&induced, &r).unwrap().passed()
        {
            b_fail += 1;
        }
        let (rep, t) = common::rep_with_operator(&mut rng);
        let quadri = cons::relative_averaging_induced_quadri(&rep, &t).unwrap();
        let image = quadri_image(&rep);
        if !axioms::check_quadri(&quadri).unwrap().passed()
            || !axioms::check_homomorphism(Kind::QuadriDendriform, &t, &quadri, &image)
                .unwrap()
                .passed()
        {
            c_fail += 1;
        }
        let (action, t) = common::action_with_operator(&mut rng);
        let six = cons::homomorphic_averaging_induced_six(&action, &t).unwrap();
        let tri = cons::six_to_triassociative(&six).unwrap();
        if !axioms::check_six(&six, Sq15Reading::Symmetric).unwrap().passed()
            || !axioms::check_triassociative(&tri).unwrap().passed()
        {
            d_fail += 1;
        }
        if !axioms::check_six(&six, Sq15Reading::Literal).unwrap().passed() {
            d_literal_fail += 1;
        }
    }
    outcome(
        a_cases > 0 && a_fail + b_fail + c_fail + d_fail == 0 && zero_id > 0,
        format!(
            "(a) {a_cases}/{INDUCED_CASES} valid averaging cases incl. {zero_id} with H in {{0, id}}, {a_fail} failures; \
             (b) {rounds} Rota-Baxter cases, {b_fail} failures; (c) {rounds} relative averaging cases, {c_fail} failures; \
             (d) {rounds} six cases (symmetric sq15), {d_fail} failures [literal sq15: {d_literal_fail} failures, informational]"
        ),
    )
}

/// The base dendriform algebra as a quadri algebra with both flavors equal.
fn quadri_image(rep: &RepresentationBundle) -> AlgebraBundle {
    let b = &rep.base;
    let (p, s) = (b.op("prec").unwrap().clone(), b.op("succ").unwrap().clone());
    AlgebraBundle::new(
        Kind::QuadriDendriform,
        b.twist.clone(),
        vec![
            ("prec_vdash", p.clone()),
            ("prec_dashv", p),
            ("succ_vdash", s.clone()),
            ("succ_dashv", s),
        ],
    )
}

fn embedding_theorems() -> Outcome {
    let (mut built, mut failed, mut axioms_fail, mut closure_fail) = (0, Vec::new(), 0, 0);
    for (id, b) in common::corpus().instances().unwrap() {
        if b.kind != Kind::QuadriDendriform {
            continue;
        }
        for bind in all_bindings(&b.parameters, &[-1, 0, 1]) {
            let s = bundle_specialize(&b, &bind).unwrap();
            if !axioms::check_quadri(&s).unwrap().passed() {
                axioms_fail += 1;
                continue;
            }
            match cons::quotient_dendriform(&s) {
                Ok(quotient) => {
                    built += 1;
                    let (rep, t) = cons::embedding_representation(&s, &quotient).unwrap();
                    let rep_ok = axioms::check_representation(&rep).unwrap().passed();
                    if !rep_ok || !operators::verify_relative_averaging(&rep, &t).unwrap().passed() {
                        failed.push(format!("{id} {bind:?}"));
                    }
                }
                Err(Error::Closure(_)) => closure_fail += 1,
                Err(e) => failed.push(format!("{id}: {e}")),
            }
        }
    }
    let mut rng = sample::rng(common::seed() ^ 0xa6);
    let (mut six_built, mut six_closure, mut six_not_hom) = (0, 0, 0);
    for _ in 0..20 {
        let (action, t) = common::action_with_operator(&mut rng);
        let six = cons::homomorphic_averaging_induced_six(&action, &t).unwrap();
        match cons::embedding_action(&six) {
            Ok((act, proj)) => {
                six_built += 1;
                if !operators::verify_relative_averaging(&act.representation(), &proj)
                    .unwrap()
                    .passed()
                {
                    failed.push("generated six: not relative averaging".into());
                } else if !operators::verify_homomorphic_relative_averaging(&act, &proj)
                    .unwrap()
                    .passed()
                {
                    six_not_hom += 1;
                }
            }
            Err(Error::Closure(_)) => six_closure += 1,
            Err(e) => failed.push(format!("generated six: {e}")),
        }
    }
    let counterexample = perp_only_six();
    let (act, proj) = cons::embedding_action(&counterexample).unwrap();
    let cx_valid = axioms::check_six(&counterexample, Sq15Reading::Literal)
        .unwrap()
        .passed()
        && axioms::check_six(&counterexample, Sq15Reading::Symmetric)
            .unwrap()
            .passed();
    let cx_hom = operators::verify_homomorphic_relative_averaging(&act, &proj)
        .unwrap()
        .passed();
    if cx_valid && !cx_hom {
        six_not_hom += 1;
    }
    outcome(
        failed.is_empty() && built > 0 && six_built > 0 && six_not_hom == 0,
        format!(
            "quadri: {built} quotients verified as relative averaging; preconditions failed: \
             {axioms_fail} (quadri axioms), {closure_fail} (ideal not closed / not alpha-stable); \
             six: {six_built} quotient maps are relative averaging, {six_closure} precondition failures, \
             {six_not_hom} not dendriform homomorphisms D_perp -> D/I_D (counterexample: dim 1, \
             e prec_perp e = e, other products 0, alpha = id); errors {failed:?}"
        ),
    )
}

/// Six-dendriform algebra on one basis vector with only `prec_perp` nonzero.
/// `I_D = 0`, so the quotient has zero products while `prec_perp` does not.
fn perp_only_six() -> AlgebraBundle {
    let mut ops: Vec<(&str, homsplit::BilinearOp)> = Kind::SixDendriform
        .required_ops()
        .iter()
        .map(|&name| (name, homsplit::BilinearOp::square(1)))
        .collect();
    for (name, op) in &mut ops {
        if *name == "prec_perp" {
            op.set(1, 1, 1, Polynomial::one());
        }
    }
    AlgebraBundle::new(Kind::SixDendriform, LinearMap::identity(1), ops)
}

fn corpus_report() -> Outcome {
    let c = common::corpus();
    let opts = VerifyAllOptions::default();
    let first = verify_all(&c, &opts).unwrap();
    let second = verify_all(&c, &opts).unwrap();
    let identical = first.to_json_string() == second.to_json_string();
    let ids: Vec<&String> = c.manifest.algebras.iter().map(|a| &a.id).collect();
    let dim2 = ids.iter().filter(|i| i.starts_with("dim2.")).count();
    let dim3 = ids.iter().filter(|i| i.starts_with("dim3.")).count();
    let examples = ids.iter().filter(|i| i.starts_with("sec2.")).count();
    let covered = c
        .instances()
        .unwrap()
        .iter()
        .all(|(id, _)| first.algebras.contains_key(id));
    let families = c
        .manifest
        .operators
        .iter()
        .all(|o| first.operators.keys().any(|k| k.starts_with(&format!("{}@", o.id))));
    let witnessed = first
        .discrepancies
        .iter()
        .all(|d| d.found != "fail" || !d.detail["witness"].is_null() || d.detail.get("uncovered").is_some());
    let residuals = first
        .discrepancies
        .iter()
        .filter(|d| d.found == "fail")
        .all(|d| d.detail.get("residual").is_some() || d.detail.get("uncovered").is_some());
    outcome(
        identical && covered && families && witnessed && residuals && dim2 == 5 && dim3 == 13 && examples == 2,
        format!(
            "{dim2} + {dim3} classification entries, {examples} examples, {} operator checks; \
             byte-identical rerun: {identical}; {} discrepancies, all with witness and residual: {}",
            first.operators.len(),
            first.discrepancies.len(),
            witnessed && residuals
        ),
    )
}

fn operator_families() -> Outcome {
    let c = common::corpus();
    let report = verify_all(&c, &VerifyAllOptions::default()).unwrap();
    let quadri_families: Vec<_> = c
        .manifest
        .operators
        .iter()
        .filter(|o| o.target.starts_with("dim"))
        .collect();
    let all_verified = quadri_families.iter().all(|o| {
        report
            .operators
            .iter()
            .any(|(k, r)| k.starts_with(&format!("{}@", o.id)) && r.kind == OperatorKind::AveragingQuadri)
    });
    let dim2_instances: Vec<String> = c
        .instances()
        .unwrap()
        .into_iter()
        .map(|(id, _)| id)
        .filter(|id| id.starts_with("dim2."))
        .collect();
    let runs_ok = dim2_instances.iter().all(|id| {
        let runs = report.grid.values().filter(|g| &g.target == id).count();
        runs == 2
    });
    let grid_ok = report
        .grid
        .values()
        .all(|g| g.grid == int_grid(-2, 2).iter().map(ToString::to_string).collect::<Vec<_>>());
    let uncovered: usize = report
        .grid
        .values()
        .map(|g| g.solutions.iter().filter(|s| s.families.is_empty()).count())
        .sum();
    let reported = report
        .grid
        .iter()
        .filter(|(_, g)| g.solutions.iter().any(|s| s.families.is_empty()))
        .all(|(k, _)| report.discrepancies.iter().any(|d| &d.id == k));
    outcome(
        all_verified && runs_ok && grid_ok && reported,
        format!(
            "{} quadri families verified symbolically; {} grid runs over -2..2 ({} solutions), \
             {uncovered} outside every listed family, all reported: {reported}",
            quadri_families.len(),
            report.grid.len(),
            report.summary.grid_solutions
        ),
    )
}

fn fingerprint_invariance() -> Outcome {
    let mut rng = sample::rng(common::seed() ^ 0xa9);
    let mut pool: Vec<AlgebraBundle> = Vec::new();
    for (_, b) in common::corpus().instances().unwrap() {
        for bind in all_bindings(&b.parameters, &[-1, 2]).into_iter().take(2) {
            pool.push(bundle_specialize(&b, &bind).unwrap());
        }
    }
    for n in 1..=4 {
        pool.push(sample::random_dendriform(&mut rng, n).unwrap());
    }
    let mut changed = 0;
    for _ in 0..PUSH_FORWARDS {
        let b = &pool[rng.gen_range(0..pool.len())];
        let s = sample::invertible(&mut rng, b.dim);
        if fingerprint(b).unwrap() != fingerprint(&push_forward(b, &s).unwrap()).unwrap() {
            changed += 1;
        }
    }
    outcome(
        changed == 0,
        format!("{PUSH_FORWARDS} push-forwards, {changed} with a changed field"),
    )
}

fn main() {
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let criteria: [Check; 9] = [
        ("kernel soundness", kernel_soundness),
        ("splitting transfer", splitting_transfer),
        ("hemi-semidirect closure", hemi_closure),
        ("graph biconditional", graph_biconditional),
        ("operator-induced structures", operator_induced),
        ("embedding theorems", embedding_theorems),
        ("corpus report", corpus_report),
        ("operator families", operator_families),
        ("fingerprint invariance", fingerprint_invariance),
    ];
    println!("acceptance (seed {:#x}, residual tolerance 0)", common::seed());
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        println!(
            "criterion {} {name}: {} | {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        if !o.pass {
            failed.push(i + 1);
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed.len(), criteria.len());
    let unexpected: Vec<usize> = failed.iter().copied().filter(|c| !UNATTAINABLE.contains(c)).collect();
    if !failed.is_empty() {
        println!("recorded as unattainable: {UNATTAINABLE:?}; unexpected failures: {unexpected:?}");
    }
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
