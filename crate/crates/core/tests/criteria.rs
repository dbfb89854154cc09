use coordlens_core::catalog::{self, lookup, Outcome};
use coordlens_core::criteria::*;
use coordlens_core::formulas;
use coordlens_core::logic::{definable_set, equivalent_in};
use coordlens_core::reduced::{defines_support_relation, make_ideal, ReducedProduct};
use coordlens_core::FiniteGroup;

fn entry(name: &str) -> catalog::CatalogEntry {
    lookup(name).unwrap()
}

fn with_group<T>(name: &str, f: impl FnOnce(&FiniteGroup) -> T) -> T {
    let e = entry(name);
    f(e.group().unwrap())
}

fn failure_label(o: &CriterionOutcome) -> String {
    o.failure().unwrap().witness.clone().unwrap()
}

fn implication(x: &str, y: &str) -> coordlens_core::Formula {
    formulas::group(&format!("{x} = e -> {y} = e")).unwrap()
}

#[test]
fn conj_centralizer_examples() {
    with_group("A5", |g| assert!(crit_conj_centralizer(g).unwrap().passed()));
    with_group("S3", |g| {
        let o = crit_conj_centralizer(g).unwrap();
        assert_eq!(failure_label(&o), "(123)");
        assert_eq!(g.element_order(o.failure().unwrap().elements[0]), 3);
    });
    // the Klein four-group is its own class centralizer
    with_group("S4", |g| assert_eq!(failure_label(&crit_conj_centralizer(g).unwrap()), "(12)(34)"));
    with_group("C2", |g| assert!(!crit_conj_centralizer(g).unwrap().passed()));
    for name in ["S5", "S6", "A6", "SL2_4", "SL3_2"] {
        with_group(name, |g| assert!(crit_conj_centralizer(g).unwrap().passed(), "{name}"));
    }
}

#[test]
fn torsion_examples() {
    with_group("S3", |g| {
        let c = crit_p(g, 2).unwrap();
        assert!(c.certificate().unwrap().detail.contains("they generate G"));
    });
    with_group("Dih5", |g| assert!(crit_p(g, 2).unwrap().passed()));
    with_group("C4", |g| {
        let o = crit_p(g, 2).unwrap();
        assert!(o.failure().unwrap().reason.contains("order 4"), "{:?}", o.failure());
    });
    with_group("C3", |g| assert_eq!(crit_p(g, 2).unwrap().failure().unwrap().reason, "no elements of order 2"));
    with_group("S3", |g| assert!(crit_p(g, 4).is_err()));
    with_group("S4", |g| {
        assert!(!crit_p(g, 2).unwrap().passed());
        assert!(crit_p(g, 3).unwrap().passed());
    });
    with_group("A4", |g| assert!(crit_p(g, 3).unwrap().passed()));
}

#[test]
fn bounded_torsion_examples() {
    with_group("Dih5", |g| assert!(crit_bounded_torsion(g, 2, 2).unwrap().passed()));
    with_group("S3", |g| assert!(crit_bounded_torsion(g, 2, 2).unwrap().passed()));
    with_group("C6", |g| assert!(!crit_bounded_torsion(g, 2, 2).unwrap().passed()));
    with_group("SL2_3", |g| {
        assert!(crit_bounded_torsion(g, 3, 3).unwrap().passed());
        assert!(!crit_bounded_torsion(g, 3, 2).unwrap().passed());
        assert!(!crit_bounded_torsion(g, 2, 3).unwrap().passed());
    });
    with_group("S3", |g| assert!(crit_bounded_torsion(g, 0, 2).is_err()));
}

#[test]
fn perfect_dagger_examples() {
    with_group("SL2_5", |g| {
        assert!(crit_perfect_dagger(g, 2).unwrap().passed());
        assert!(crit_perfect_dagger(g, 1).unwrap().passed());
        let w = g.commutator_width().unwrap();
        assert!(w.perfect);
        assert_eq!(w.width, 1);
        assert_eq!(g.normal_subgroups().unwrap().iter().map(|h| h.order()).collect::<Vec<_>>(), vec![1, 2, 120]);
    });
    with_group("A5", |g| assert!(crit_perfect_dagger(g, 1).unwrap().passed()));
    with_group("S4", |g| {
        let o = crit_perfect_dagger(g, 2).unwrap();
        assert!(o.failure().unwrap().reason.starts_with("not perfect"), "{:?}", o.failure());
    });
}

#[test]
fn simple_groups_pass_dagger_when_conj_centralizer_passes() {
    for name in ["A5", "A6", "SL2_4", "SL3_2"] {
        with_group(name, |g| {
            assert!(crit_conj_centralizer(g).unwrap().passed());
            let o = crit_perfect_dagger(g, 3).unwrap();
            if let Some(f) = o.failure() {
                assert!(!f.reason.contains("centralizer"), "{name}: {}", f.reason);
            }
        });
    }
}

#[test]
fn perfect_star_examples() {
    with_group("A5", |g| {
        let e = g.identity();
        let a = g.index_of("(123)").unwrap();
        assert!(verify_perfect_star(g, 1, e, e).unwrap().star);
        for b in g.elements() {
            let r = verify_perfect_star(g, 1, a, b).unwrap();
            assert!(r.star && r.agrees());
        }
        let r = verify_perfect_star(g, 1, e, a).unwrap();
        assert!(!r.star);
        assert!(r.agrees());
        assert_eq!(perfect_star_equivalence(g, 1).unwrap(), None);
    });
    with_group("SL2_5", |g| {
        assert_eq!(perfect_star_equivalence(g, 1).unwrap(), None);
        assert_eq!(perfect_star_equivalence(g, 2).unwrap(), None);
    });
    with_group("S4", |g| assert!(PerfectStar::new(g, 1).is_err()));
    with_group("A6", |g| assert!(PerfectStar::new(g, 1).is_err()));
    with_group("A5", |g| assert!(PerfectStar::new(g, 3).is_err()));
}

#[test]
fn obstruction_examples() {
    let q8 = entry("Q8");
    let g = q8.group().unwrap();
    let o = obstruction_nilpotent(g).unwrap().unwrap();
    let ObstructionWitness::Hom { image, .. } = &o.witness else { panic!() };
    assert_eq!(image, &["1", "-1"]);
    assert!(o.reverify(|n| (n == "Q8").then_some(g)));

    let (s3, sl) = (entry("S3"), entry("SL2_5"));
    let (a, b) = (s3.group().unwrap(), sl.group().unwrap());
    let o = obstruction_center_hom(a, b).unwrap().unwrap();
    let ObstructionWitness::Hom { image, kernel_order, .. } = &o.witness else { panic!() };
    assert_eq!(image.len(), 2);
    assert_eq!(*kernel_order, 3);
    assert!(o.reverify(|n| [a, b].into_iter().find(|g| g.name() == n)));
    assert!(obstruction_center_hom(b, a).unwrap().is_none());

    with_group("A5", |g| {
        assert!(obstruction_center_hom(g, g).unwrap().is_none());
        assert!(obstruction_decomposable(g).unwrap().is_none());
        assert!(obstruction_nilpotent(g).unwrap().is_none());
    });
    with_group("S3xS3", |g| {
        let o = obstruction_decomposable(g).unwrap().unwrap();
        assert!(o.reverify(|n| (n == g.name()).then_some(g)));
    });
    with_group("S7", |g| assert!(obstruction_decomposable(g).unwrap().is_none()));
    for name in ["Dih4", "Dih8"] {
        with_group(name, |g| {
            let o = obstruction_nilpotent(g).unwrap().unwrap();
            assert!(o.reverify(|n| (n == g.name()).then_some(g)), "{name}");
        });
    }
}

/// Verdict for every default catalog entry: outcome and reason.
const FROZEN: &[(&str, Outcome, &str)] = &[
    ("S2", Outcome::Fails, "center_hom"),
    ("S3", Outcome::Recognizes, "torsion(p=2)"),
    ("S4", Outcome::Recognizes, "torsion(p=3)"),
    ("S5", Outcome::Recognizes, "conj_centralizer"),
    ("S6", Outcome::Recognizes, "conj_centralizer"),
    ("S7", Outcome::Recognizes, "conj_centralizer"),
    ("A4", Outcome::Recognizes, "torsion(p=3)"),
    ("A5", Outcome::Recognizes, "conj_centralizer"),
    ("A6", Outcome::Recognizes, "conj_centralizer"),
    ("C2", Outcome::Fails, "center_hom"),
    ("C3", Outcome::Fails, "center_hom"),
    ("C4", Outcome::Fails, "center_hom"),
    ("C6", Outcome::Fails, "center_hom"),
    ("Dih3", Outcome::Recognizes, "torsion(p=2)"),
    ("Dih4", Outcome::Fails, "center_hom"),
    ("Dih5", Outcome::Recognizes, "torsion(p=2)"),
    ("Dih6", Outcome::Fails, "center_hom"),
    ("Dih7", Outcome::Recognizes, "torsion(p=2)"),
    ("Dih8", Outcome::Fails, "center_hom"),
    ("Q8", Outcome::Fails, "center_hom"),
    ("SL2_3", Outcome::Recognizes, "bounded_torsion(m=3,n=3)"),
    ("SL2_4", Outcome::Recognizes, "conj_centralizer"),
    ("SL2_5", Outcome::Recognizes, "perfect_dagger(m=1)"),
    ("SL2_7", Outcome::Recognizes, "perfect_dagger(m=1)"),
    ("SL3_2", Outcome::Recognizes, "conj_centralizer"),
    ("GL2_2", Outcome::Recognizes, "torsion(p=2)"),
    ("GL2_3", Outcome::Fails, "center_hom"),
    ("GL3_2", Outcome::Recognizes, "conj_centralizer"),
    ("C2xS3", Outcome::Fails, "center_hom"),
    ("S3xS3", Outcome::Fails, "decomposable"),
    ("RPS", Outcome::Recognizes, "equality_implication"),
    ("Chain4", Outcome::Open, "no candidate formula for x = t -> y = t"),
];

#[test]
fn catalog_verdicts_frozen() {
    let opts = VerdictOptions::default();
    for &(name, outcome, reason) in FROZEN {
        let v = verdict_for_names(&[name], &opts).unwrap();
        assert_eq!((v.outcome, v.reason.as_str()), (outcome, reason), "{name}");
        let e = entry(name);
        if e.expected.flag.is_none() {
            assert_eq!(v.outcome, e.expected.outcome, "{name} against its catalog annotation");
        } else {
            assert_ne!(v.outcome, e.expected.outcome, "{name} is flagged, so it should disagree");
        }
    }
}

#[test]
fn verdict_invariants() {
    let opts = VerdictOptions::default();
    for &(name, _, _) in FROZEN {
        let v = verdict_for_names(&[name], &opts).unwrap();
        match v.outcome {
            Outcome::Recognizes => assert!(v.certificates().next().is_some(), "{name}"),
            Outcome::Fails => {
                let e = entry(name);
                let g = e.group().unwrap();
                assert!(v.obstructions().next().is_some(), "{name}");
                assert!(v.obstructions().all(|o| o.reverify(|n| (n == g.name()).then_some(g))), "{name}");
            }
            Outcome::Open => {}
        }
        let json = serde_json::to_value(&v).unwrap();
        for key in ["groups", "outcome", "reason", "witnesses", "citation", "millis"] {
            assert!(json.get(key).is_some(), "{name}: {key}");
        }
    }
}

#[test]
fn class_verdicts() {
    let opts = VerdictOptions::default();
    let v = verdict_for_names(&["S3", "S4", "S5", "S6", "S7"], &opts).unwrap();
    assert_eq!(v.outcome, Outcome::Recognizes);
    assert_eq!(v.reason, "uniform_formula");
    let members: Vec<String> = v.certificates().filter(|c| c.criterion != Criterion::UniformFormula).map(|c| format!("{}:{}", c.group, c.criterion)).collect();
    assert_eq!(
        members,
        ["S3:torsion(p=2)", "S4:torsion(p=3)", "S5:conj_centralizer", "S6:conj_centralizer", "S7:conj_centralizer"]
    );

    let v = verdict_for_names(&["S3", "SL2_5"], &opts).unwrap();
    assert_eq!((v.outcome, v.reason.as_str()), (Outcome::Fails, "center_hom"));
    let o = v.obstructions().next().unwrap();
    assert_eq!(o.groups, ["S3", "SL2_5"]);

    let v = verdict_for_names(&["A5"], &opts).unwrap();
    assert_eq!((v.outcome, v.reason.as_str()), (Outcome::Recognizes, "conj_centralizer"));
    let v = verdict_for_names(&["S3", "Dih5"], &opts).unwrap();
    assert_eq!((v.outcome, v.reason.as_str()), (Outcome::Recognizes, "torsion(p=2)"));
    let v = verdict_for_names(&["A5", "SL2_5"], &opts).unwrap();
    assert_eq!((v.outcome, v.reason.as_str()), (Outcome::Recognizes, "perfect_dagger(m=1)"));

    assert!(verdict_for_names(&["S3", "RPS"], &opts).is_err());
    assert!(verdict_for_names(&["S9"], &opts).is_err());
}

#[test]
fn zero_timeout_gives_open() {
    let opts = VerdictOptions { timeout: std::time::Duration::ZERO };
    let v = verdict_for_names(&["A5"], &opts).unwrap();
    assert_eq!(v.outcome, Outcome::Open);
    assert!(v.notes.iter().any(|n| n.contains("timed out")));
}

#[test]
fn mutual_exclusion_audit() {
    for name in catalog::default_names() {
        let e = entry(name);
        let Some(g) = e.group() else { continue };
        let certified = criteria_order(&[g]).into_iter().any(|c| {
            let out = match c {
                Criterion::ConjCentralizer => crit_conj_centralizer(g),
                Criterion::Torsion { p } => crit_p(g, p),
                Criterion::BoundedTorsion { m, n } => crit_bounded_torsion(g, m, n),
                Criterion::PerfectDagger { m } => crit_perfect_dagger(g, m),
                _ => unreachable!(),
            };
            out.is_ok_and(|o| o.passed())
        });
        let obstructed = obstruction_center_hom(g, g).unwrap().is_some()
            || obstruction_decomposable(g).unwrap().is_some()
            || obstruction_nilpotent(g).unwrap().is_some();
        assert!(!(certified && obstructed), "{name} has both a certificate and an obstruction");
    }
}

#[test]
fn certificate_formulas_express_the_implication() {
    let opts = VerdictOptions::default();
    let target = implication("x", "y");
    for name in ["S3", "S4", "A4", "A5", "Dih5", "SL2_4", "GL2_2"] {
        let v = verdict_for_names(&[name], &opts).unwrap();
        let e = entry(name);
        let m = e.group().unwrap().as_structure();
        for c in v.certificates().filter(|c| !c.formula.is_empty()) {
            let f = formulas::group(&c.formula).unwrap();
            assert_eq!(equivalent_in(&m, &f, &target).unwrap(), None, "{name}: {}", c.criterion);
        }
    }
}

#[test]
fn literal_conj_centralizer_formula_is_reversed() {
    with_group("A5", |g| {
        let m = g.as_structure();
        let lit = formulas::group(&formulas::conj_centralizer_text_literal("x", "y")).unwrap();
        assert!(equivalent_in(&m, &lit, &implication("x", "y")).unwrap().is_some());
        assert_eq!(equivalent_in(&m, &lit, &implication("y", "x")).unwrap(), None);
    });
}

#[test]
fn transposition_set_matches_the_formula() {
    let psi = formulas::group(&formulas::transposition_text("x", "g")).unwrap();
    for (name, count) in [("S3", 4), ("S4", 7), ("S5", 11), ("S6", 31), ("A5", 1), ("Dih5", 1)] {
        with_group(name, |g| {
            let direct = transposition_set(g);
            let via_formula: Vec<u32> =
                definable_set(&g.as_structure(), &psi, &["x".to_string()]).unwrap().into_iter().map(|t| t[0]).collect();
            let mut d = direct.clone();
            d.sort_unstable();
            assert_eq!(d, via_formula, "{name}");
            assert_eq!(direct.len(), count, "{name}");
        });
    }
    with_group("S7", |g| assert_eq!(transposition_set(g).len(), 22));
}

#[test]
fn relative_centralizer_matches_the_formula() {
    let target = implication("x", "y");
    for name in ["S3", "S4", "A4", "Dih4", "Dih5", "Q8", "C6"] {
        with_group(name, |g| {
            let m = g.as_structure();
            for (theta_text, theta) in [
                ("", g.elements().collect::<Vec<_>>()),
                ("z*z = e", torsion_elements(g, 2)),
                ("z*z*z = e", torsion_elements(g, 3)),
                (&formulas::transposition_text("z", "g")[..], transposition_set(g)),
            ] {
                let f = formulas::group(&formulas::relative_centralizer_text("x", "y", theta_text)).unwrap();
                let direct = relative_centralizer_equivalence(g, &theta).unwrap();
                let engine = equivalent_in(&m, &f, &target).unwrap();
                assert_eq!(direct.is_none(), engine.is_none(), "{name} with θ = `{theta_text}`");
            }
        });
    }
}

#[test]
fn transported_formula_defines_support_containment() {
    let v = ["x", "y", "u", "v"].map(String::from);
    let phi = formulas::group(&formulas::transport_to_pairs(|a, b| formulas::torsion_text(a, b, 2))).unwrap();
    for name in ["S3", "Dih5"] {
        let m = entry(name).structure();
        let rp = ReducedProduct::new(vec![m.clone(), m], &make_ideal(2, &[]).unwrap()).unwrap();
        let r = defines_support_relation(&rp, &phi, &v).unwrap();
        assert!(r.defines, "{name}: {:?}", r.counterexample);
    }
    let phi3 = formulas::group(&formulas::transport_to_pairs(|a, b| formulas::torsion_text(a, b, 3))).unwrap();
    let s4 = entry("S4").structure();
    let rp = ReducedProduct::new(vec![s4.clone(), s4], &make_ideal(2, &[]).unwrap()).unwrap();
    let r = defines_support_relation(&rp, &phi3, &v).unwrap();
    assert!(r.defines, "S4: {:?}", r.counterexample);
}
