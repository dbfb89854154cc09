use coordlens_core::catalog::lookup;
use coordlens_core::formulas;
use coordlens_core::logic::random::{random_formula, random_h_formula, random_non_h_formula, random_structure, test_signature};
use coordlens_core::logic::reference::eval_naive;
use coordlens_core::logic::*;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn gf(text: &str) -> Formula {
    formulas::group(text).unwrap()
}

fn vars(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn group(name: &str) -> FiniteStructure {
    lookup(name).unwrap().structure()
}

#[test]
fn parse_examples() {
    let f = gf("x = y");
    assert!(matches!(f.kind(), Kind::Eq(..)));
    assert_eq!(f.free_vars().iter().cloned().collect::<Vec<_>>(), vars(&["x", "y"]));

    let f = gf("(E z)(x * z = z * x)");
    assert!(matches!(f.kind(), Kind::Exists(..)));
    assert_eq!(f.free_vars().len(), 1);

    assert!(matches!(formulas::group("x ** y"), Err(LogicError::Lex { .. }) | Err(LogicError::Parse { .. })));
    assert!(matches!(formulas::group("Q(x)"), Err(LogicError::UnknownSymbol { .. })));
    assert!(matches!(formulas::group("inv(x, y) = e"), Err(LogicError::Arity { .. })));
}

#[test]
fn precedence_and_associativity() {
    let f = gf("x = e -> y = e -> z = e");
    let Kind::Implies(_, rhs) = f.kind() else { panic!("{f}") };
    assert!(matches!(rhs.kind(), Kind::Implies(..)));
    let f = gf("!x = e & y = e | z = e <-> x = y");
    let Kind::Iff(lhs, _) = f.kind() else { panic!("{f}") };
    let Kind::Or(and, _) = lhs.kind() else { panic!("{f}") };
    let Kind::And(not, _) = and.kind() else { panic!("{f}") };
    assert!(matches!(not.kind(), Kind::Not(..)));
}

#[test]
fn nested_binders_are_renamed() {
    let f = gf("(E x)(x = y & (A x)(x = x))");
    assert!(f.free_cache_consistent());
    assert_eq!(f.free_vars().iter().cloned().collect::<Vec<_>>(), vars(&["y"]));
    let g = gf(&f.to_string());
    assert!(alpha_eq(&f, &g));
}

#[test]
fn eval_examples() {
    let c2 = group("C2");
    assert!(eval(&c2, &gf("x*x = e"), &Assignment::new().with("x", 1)).unwrap());
    let s3 = group("S3");
    assert!(eval(&s3, &gf("(E x)(x*x*x = e & !(x = e))"), &Assignment::new()).unwrap());
    let s4 = group("S4");
    let psi = gf(&formulas::transposition_text("x", "g"));
    let t = s4.index_of("(12)").unwrap();
    assert!(eval(&s4, &psi, &Assignment::new().with("x", t)).unwrap());
    assert_eq!(eval(&s4, &psi, &Assignment::new()), Err(LogicError::MissingBinding("x".into())));
}

#[test]
fn classify_examples() {
    let c = classify_h(&gf("x*y = y*x")).unwrap();
    assert!(c.is_outright());
    assert_eq!(c.derivation.rule(), "atomic");

    let sig = test_signature();
    let f = parse_formula("(E x)(P(x)) & (A x)(P(x) -> R(x, x))", &sig).unwrap();
    let c = classify_h(&f).unwrap();
    assert_eq!(c.derivation.rule(), "guarded");
    assert!(c.is_outright());
    assert!(alpha_eq(&c.derivation.replay(), &f));

    let bare = parse_formula("(A x)(P(x) -> R(x, x))", &sig).unwrap();
    let c = classify_h(&bare).unwrap();
    assert_eq!(c.obligations.len(), 1);
    assert!(matches!(c.obligations[0].kind(), Kind::Exists(..)));

    let r = classify_h(&gf("!(x = e)")).unwrap_err();
    assert_eq!(r.path, Vec::<usize>::new());
    assert_eq!(r.node, Formula::not(Formula::eq(Term::var("x"), Term::var("x"))).node_name());
    let r = classify_h(&gf("x = e & (y = e | x = y)")).unwrap_err();
    assert_eq!(r.path, vec![1]);
}

#[test]
fn equivalence_examples() {
    let three = FiniteStructure::pure_set(3).unwrap();
    let neq = psi_neq("x", "y", "z");
    assert_eq!(equivalent_in(&three, &neq, &formulas::pure("!(x = y)").unwrap()).unwrap(), None);

    let s3 = group("S3");
    let cex = equivalent_in(&s3, &gf("x = e"), &gf("x*x = e")).unwrap().unwrap();
    // least index in lexicographic permutation order
    assert_eq!(cex.display(&s3), "x=(23)");

    let f = gf("(A y)(x*y = y*x)");
    assert_eq!(equivalent_in(&s3, &f, &f).unwrap(), None);
}

#[test]
fn definable_set_examples() {
    let psi = gf(&formulas::transposition_text("x", "g"));
    let s4 = group("S4");
    let set = definable_set(&s4, &psi, &vars(&["x"])).unwrap();
    assert_eq!(set.len(), 7);
    let labels: Vec<String> = set.iter().map(|t| s4.labels()[t[0] as usize].clone()).collect();
    assert!(labels.iter().all(|l| l == "e" || (l.len() == 4 && l.starts_with('('))), "{labels:?}");

    let s6 = group("S6");
    assert_eq!(definable_set(&s6, &psi, &vars(&["x"])).unwrap().len(), 31);

    let all = definable_set(&s4, &gf("x = x"), &vars(&["x"])).unwrap();
    assert_eq!(all.len(), 24);
}

#[test]
fn transposition_counts_literal_and_repaired() {
    let psi = gf(&formulas::transposition_text("x", "g"));
    let lit = gf(&formulas::transposition_text_literal("x", "g"));
    for (name, repaired) in [("S3", 4), ("S4", 7), ("S5", 11)] {
        let g = group(name);
        assert_eq!(definable_set(&g, &psi, &vars(&["x"])).unwrap().len(), repaired, "{name}");
    }
    assert_eq!(definable_set(&group("S4"), &lit, &vars(&["x"])).unwrap().len(), 10);
}

#[test]
fn psi_neq_sizes_two_to_six() {
    let target = formulas::pure("!(x = y)").unwrap();
    for n in 2..=6 {
        let m = FiniteStructure::pure_set(n).unwrap();
        assert_eq!(equivalent_in(&m, &psi_neq("x", "y", "z"), &target).unwrap(), None, "size {n}");
    }
    let one = FiniteStructure::pure_set(1).unwrap();
    // one element: ψ_≠ holds vacuously while x ≠ y is false
    assert!(equivalent_in(&one, &psi_neq("x", "y", "z"), &target).unwrap().is_some());
}

#[test]
fn zsupp_repaired_and_literal() {
    let target = formulas::pure("x = z -> y = w").unwrap();
    let repaired = formulas::pure(&formulas::zsupp_text()).unwrap();
    let literal = formulas::pure(&formulas::zsupp_text_literal()).unwrap();
    let order = vars(&["x", "y", "z", "w"]);
    for (n, literal_failures) in [(3usize, 18usize), (4, 36), (5, 80)] {
        let m = FiniteStructure::pure_set(n).unwrap();
        assert_eq!(equivalent_in(&m, &repaired, &target).unwrap(), None, "size {n}");
        let lit = Evaluator::new(&m, &literal, &order).unwrap();
        let tgt = Evaluator::new(&m, &target, &order).unwrap();
        let total = n.pow(4);
        let failures = (0..total)
            .filter(|&i| {
                let t: Vec<u32> = (0..4).map(|k| ((i / n.pow(3 - k)) % n) as u32).collect();
                lit.eval_tuple(&t) != tgt.eval_tuple(&t)
            })
            .count();
        assert_eq!(failures, literal_failures, "size {n}");
    }
}

#[test]
fn structure_json_round_trip() {
    let s3 = group("S3");
    let back = FiniteStructure::from_json(&s3.to_json()).unwrap();
    assert_eq!(back, s3);
    assert!(s3.is_full());
    assert!(!group("C2").is_full());
}

#[test]
fn invalid_structures_rejected() {
    assert!(FiniteStructure::pure_set(0).is_err());
    let sig = Signature::magma();
    assert!(FiniteStructure::new(sig.clone(), vec!["a".into()], vec![], vec![vec![0, 0]], vec![]).is_err());
    assert!(FiniteStructure::new(sig, vec!["a".into()], vec![], vec![vec![3]], vec![]).is_err());
}

fn xyz() -> Vec<String> {
    vars(&["x", "y"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn evaluator_matches_naive(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sig = test_signature();
        let m = random_structure(&mut rng, &sig, n);
        let f = random_formula(&mut rng, &sig, &xyz(), 5);
        let ev = Evaluator::new(&m, &f, &xyz()).unwrap();
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                let asg = Assignment::new().with("x", a).with("y", b);
                prop_assert_eq!(ev.eval_tuple(&[a, b]), eval_naive(&m, &f, &asg).unwrap(), "{}", f);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn h_derivations_accepted(seed in any::<u64>(), bare in any::<bool>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let f = random_h_formula(&mut rng, &test_signature(), &xyz(), 5, bare);
        let cert = classify_h(&f);
        prop_assert!(cert.is_ok(), "{}", f);
        let cert = cert.unwrap();
        prop_assert!(alpha_eq(&cert.derivation.replay(), &f));
        if !bare {
            prop_assert!(cert.is_outright(), "{}", f);
        }
    }

    #[test]
    fn negation_or_disjunction_refused(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let f = random_non_h_formula(&mut rng, &test_signature(), &xyz(), 4);
        prop_assert!(classify_h(&f).is_err(), "{}", f);
    }

    #[test]
    fn print_parse_round_trip(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let sig = test_signature();
        let f = random_formula(&mut rng, &sig, &xyz(), 5);
        let g = parse_formula(&f.to_string(), &sig).unwrap();
        prop_assert!(alpha_eq(&f, &g), "{} vs {}", f, g);
        prop_assert!(g.free_cache_consistent());
    }
}
