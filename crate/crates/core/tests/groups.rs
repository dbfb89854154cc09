use coordlens_core::catalog::{self, lookup};
use coordlens_core::groups::{abelian_invariants, brute_force_center_homs, FiniteGroup};

fn g(name: &str) -> FiniteGroup {
    lookup(name).unwrap().group().unwrap().clone()
}

fn class_sizes(g: &FiniteGroup) -> Vec<usize> {
    let mut v: Vec<usize> = g.conjugacy_classes().unwrap().iter().map(|c| c.len()).collect();
    v.sort_unstable();
    v
}

#[test]
fn orders_match_closed_forms() {
    for (name, n) in [
        ("S3", 6),
        ("S4", 24),
        ("S7", 5040),
        ("A5", 60),
        ("A6", 360),
        ("C6", 6),
        ("Dih5", 10),
        ("Q8", 8),
        ("SL2_5", 120),
        ("SL2_4", 60),
        ("SL2_7", 336),
        ("GL2_3", 48),
        ("GL2_2", 6),
        ("SL3_2", 168),
        ("C2xS3", 12),
    ] {
        assert_eq!(g(name).order(), n, "{name}");
    }
}

#[test]
fn oversized_entries_are_rejected() {
    assert!(lookup("S8").is_err());
    assert!(lookup("GL3_3").is_err());
    assert!(lookup("SL3_4").is_err());
    assert!(lookup("SL2_6").is_err());
    assert!(lookup("Dih2").is_err());
    assert!(lookup("Foo").is_err());
}

#[test]
fn conjugacy_class_counts() {
    assert_eq!(class_sizes(&g("S4")), vec![1, 3, 6, 6, 8]);
    assert_eq!(class_sizes(&g("C5")), vec![1; 5]);
    let q8 = g("Q8");
    assert_eq!(class_sizes(&q8), vec![1, 1, 2, 2, 2]);
    let m1 = q8.index_of("-1").unwrap();
    assert_eq!(q8.class_of(m1).unwrap(), &[m1]);
    // class fingerprint of GL(2,2) matches S3
    assert_eq!(class_sizes(&g("GL2_2")), class_sizes(&g("S3")));
    assert_eq!(class_sizes(&g("A5")), vec![1, 12, 12, 15, 20]);
}

#[test]
fn class_invariants_hold_across_catalog() {
    for name in ["S3", "S4", "S5", "A4", "A5", "Dih4", "Dih5", "Q8", "SL2_3", "SL2_5", "GL2_3", "C2xS3"] {
        let g = g(name);
        let classes = g.conjugacy_classes().unwrap();
        let mut seen = vec![false; g.order()];
        for c in classes {
            assert_eq!(g.order() % c.len(), 0);
            for &x in c {
                assert!(!seen[x as usize]);
                seen[x as usize] = true;
            }
        }
        assert!(seen.iter().all(|&b| b));
        let singles: Vec<u32> = classes.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect();
        assert_eq!(g.center().elements, singles, "{name}");
        for c in classes {
            let whole = g.class_centralizer(c[0]).unwrap();
            let meet: Vec<u32> = g
                .elements()
                .filter(|&y| c.iter().all(|&x| g.centralizer(&[x]).unwrap().contains(y)))
                .collect();
            assert_eq!(whole.elements, meet);
        }
    }
}

#[test]
fn centralizers_and_centers() {
    let s3 = g("S3");
    let c3 = s3.index_of("(123)").unwrap();
    let a3 = s3.class_centralizer(c3).unwrap();
    assert_eq!(a3.order(), 3);
    assert_eq!(s3.centralizer(&[s3.identity()]).unwrap().order(), 6);
    let s4 = g("S4");
    assert!(s4.class_centralizer_trivial(s4.index_of("(12)").unwrap()).unwrap());
    assert_eq!(s4.center().order(), 1);
    let q8 = g("Q8");
    let z: Vec<&str> = q8.center().elements.iter().map(|&x| q8.label(x)).collect();
    assert_eq!(z, ["1", "-1"]);
    assert_eq!(g("C6").center().order(), 6);
    assert_eq!(g("SL2_5").center().order(), 2);
}

#[test]
fn commutator_widths() {
    let a5 = g("A5").commutator_width().unwrap();
    assert!(a5.perfect);
    assert_eq!(a5.width, 1);
    let sl = g("SL2_5");
    let w = sl.commutator_width().unwrap();
    assert!(w.perfect);
    assert!(w.width <= 2 && w.width >= 1);
    let c4 = g("C4").commutator_width().unwrap();
    assert!(!c4.perfect);
    assert_eq!(c4.width, 0);
    // w commutators cover [G,G], w-1 do not
    for name in ["S4", "A5", "SL2_5", "Q8", "S5"] {
        let g = g(name);
        let w = g.commutator_width().unwrap().width;
        let d = g.commutator_subgroup().unwrap().order();
        assert_eq!(g.commutator_products(w).unwrap().count_ones(..), d, "{name}");
        if w > 0 {
            assert!(g.commutator_products(w - 1).unwrap().count_ones(..) < d, "{name}");
        }
    }
}

#[test]
fn lower_central_series() {
    assert_eq!(g("Q8").lower_central_series().unwrap().1, Some(2));
    let (series, class) = g("S3").lower_central_series().unwrap();
    assert_eq!(class, None);
    assert_eq!(series.last().unwrap().order(), 3);
    assert_eq!(g("C6").lower_central_series().unwrap().1, Some(1));
    assert_eq!(g("Dih8").lower_central_series().unwrap().1, Some(3));
}

#[test]
fn nilpotent_center_homs() {
    for name in ["Q8", "Dih4", "Dih8"] {
        let g = g(name);
        let h = g.nilpotent_center_hom().unwrap();
        assert!(h.is_homomorphism(&g, &g));
        assert!(h.image_central(&g));
        assert!(!h.trivial);
    }
    let q8 = g("Q8");
    let h = q8.nilpotent_center_hom().unwrap();
    let img: Vec<&str> = h.image.iter().map(|&x| q8.label(x)).collect();
    assert_eq!(img, ["1", "-1"]);
    // the commutator partner is i
    assert_eq!(h.map[q8.index_of("j").unwrap() as usize], q8.index_of("-1").unwrap());
    assert!(g("S3").nilpotent_center_hom().is_err());
    assert!(g("C4").nilpotent_center_hom().is_err());
}

#[test]
fn normal_subgroup_counts() {
    assert_eq!(g("SL2_5").normal_subgroups().unwrap().len(), 3);
    assert_eq!(g("A5").normal_subgroups().unwrap().len(), 2);
    assert_eq!(g("C6").normal_subgroups().unwrap().len(), 4);
    assert_eq!(g("S4").normal_subgroups().unwrap().len(), 4);
    assert_eq!(g("Q8").normal_subgroups().unwrap().len(), 6);
    for n in g("S4").normal_subgroups().unwrap() {
        assert!(n.normal);
    }
}

#[test]
fn abelian_invariants_and_abelianization() {
    assert_eq!(abelian_invariants(&g("C6")).unwrap(), vec![6]);
    assert_eq!(abelian_invariants(&g("C2xC2")).unwrap(), vec![2, 2]);
    assert_eq!(abelian_invariants(&g("C2xC4")).unwrap(), vec![2, 4]);
    assert_eq!(abelian_invariants(&g("C4xC6")).unwrap(), vec![2, 12]);
    assert_eq!(abelian_invariants(&g("C1")).unwrap(), Vec::<usize>::new());
    assert_eq!(g("S4").abelianization().unwrap(), vec![2]);
    assert_eq!(g("Q8").abelianization().unwrap(), vec![2, 2]);
    assert_eq!(g("A5").abelianization().unwrap(), Vec::<usize>::new());
    assert_eq!(g("SL2_3").abelianization().unwrap(), vec![3]);
    assert_eq!(g("GL2_3").abelianization().unwrap(), vec![2]);
}

#[test]
fn homs_into_centers() {
    let s3 = g("S3");
    let sl = g("SL2_5");
    let h = s3.hom_to_center_exists(&sl).unwrap().unwrap();
    assert_eq!(h.image.len(), 2);
    assert!(h.is_homomorphism(&s3, &sl) && h.image_central(&sl));
    let a5 = g("A5");
    assert!(a5.hom_to_center_exists(&a5).unwrap().is_none());
    let q8 = g("Q8");
    assert!(q8.hom_to_center_exists(&q8).unwrap().is_some());
    let gl = g("GL2_3");
    assert!(gl.hom_to_center_exists(&gl).unwrap().is_some());
}

#[test]
fn hom_existence_matches_brute_force() {
    let names = ["C2", "C3", "C4", "C6", "S3", "S4", "A4", "Q8", "Dih4", "Dih5", "Dih6", "SL2_3", "C2xC2", "C2xS3"];
    for a in names {
        for b in names.iter().copied().chain(["SL2_5", "A5"]) {
            let (ga, gb) = (g(a), g(b));
            let brute = brute_force_center_homs(&ga, &gb);
            let found = ga.hom_to_center_exists(&gb).unwrap();
            assert_eq!(brute > 1, found.is_some(), "{a} -> Z({b})");
            if let Some(h) = found {
                assert!(h.is_homomorphism(&ga, &gb) && h.image_central(&gb) && !h.trivial);
            }
        }
    }
    // frozen counts: |Hom(G, Z(H))|
    assert_eq!(brute_force_center_homs(&g("Q8"), &g("Q8")), 4);
    assert_eq!(brute_force_center_homs(&g("C6"), &g("C6")), 6);
    assert_eq!(brute_force_center_homs(&g("S3"), &g("C4")), 2);
}

#[test]
fn decompositions() {
    let c6 = g("C6");
    let (a, b) = c6.is_decomposable().unwrap().unwrap();
    assert_eq!((a.order(), b.order()), (2, 3));
    assert!(g("S3").is_decomposable().unwrap().is_none());
    assert!(g("Q8").is_decomposable().unwrap().is_none());
    for name in ["C6", "C2xS3", "S3xS3", "C2xC2", "Dih6"] {
        let g = g(name);
        let (a, b) = g.is_decomposable().unwrap().unwrap_or_else(|| panic!("{name}"));
        // pairing map N1 x N2 -> G is a bijective homomorphism
        let mut hit = vec![false; g.order()];
        for &x in &a.elements {
            for &y in &b.elements {
                assert!(g.commutes(x, y));
                let p = g.mul(x, y);
                assert!(!hit[p as usize]);
                hit[p as usize] = true;
            }
        }
        assert!(hit.iter().all(|&h| h));
    }
}

#[test]
fn structures_from_groups() {
    use coordlens_core::logic::{parse_formula, valid_in, Signature};
    let s = g("C2").as_structure();
    assert_eq!(s.len(), 2);
    let f = parse_formula("x*inv(x)=e", &Signature::group()).unwrap();
    assert!(valid_in(&g("S5").as_structure(), &f).unwrap().is_none());
    assert!(g("S3").as_structure().is_full());
}

#[test]
fn rps_loser_is_unique() {
    let m = catalog::rps_structure();
    let t = m.function_table(0);
    for x in 0..3u32 {
        let losers: Vec<u32> = (0..3).filter(|&s| s != x && t.table[(s * 3 + x) as usize] == x).collect();
        assert_eq!(losers, vec![catalog::rps_loser(x)]);
    }
    let label = |x: u32| m.labels()[x as usize].clone();
    assert_eq!(label(catalog::rps_loser(m.index_of("R").unwrap())), "S");
    assert_eq!(label(catalog::rps_loser(m.index_of("P").unwrap())), "R");
}

#[test]
fn matrix_labels_and_dihedral_labels() {
    let sl = g("SL2_5");
    assert_eq!(sl.label(sl.identity()), "[10;01]");
    let d = g("Dih4");
    assert_eq!(d.labels()[..5].join(","), "e,r,r^2,r^3,s");
    assert_eq!(d.label(d.mul(d.index_of("r").unwrap(), d.index_of("s").unwrap())), "r s");
    let s = g("S4");
    assert_eq!(s.label(0), "e");
    assert!(s.index_of("(12)(34)").is_some());
}
