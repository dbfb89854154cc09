use coordlens_core::catalog::lookup;
use coordlens_core::graphprod::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

fn spec(graph: Graph, names: &[&str]) -> ProductSpec {
    ProductSpec::from_names(graph, names).unwrap()
}

fn named(names: &[&str], edges: &[(usize, usize)]) -> Graph {
    Graph::new(names.iter().map(|s| s.to_string()).collect(), edges).unwrap()
}

fn random_spec(rng: &mut StdRng, max_vertices: usize) -> ProductSpec {
    let n = rng.gen_range(1..=max_vertices);
    let g = Graph::random(rng, n, 0.4);
    let names: Vec<&str> = (0..n).map(|_| *["C2", "C3", "S3"].choose(rng).unwrap()).collect();
    spec(g, &names)
}

#[test]
fn normal_form_examples() {
    let p = spec(named(&["u", "v"], &[(0, 1)]), &["C2", "C2"]);
    let w = p.parse_word("u:a v:a u:a").unwrap();
    assert_eq!(p.format_word(&p.normal_form(&w)), "v:a");

    let free = spec(named(&["u", "v"], &[]), &["C2", "C2"]);
    let w = free.parse_word("u:a v:a u:a v:a").unwrap();
    let nf = free.normal_form(&w);
    assert_eq!(nf, w);
    assert_eq!(nf.len(), 4);

    assert!(free.normal_form(&Word::empty()).is_empty());
    assert_eq!(free.format_word(&Word::empty()), "e");
    assert!(free.parse_word("e").unwrap().is_empty());
}

#[test]
fn canonical_order_prefers_small_vertices() {
    let p = spec(named(&["u", "v"], &[(0, 1)]), &["C3", "C3"]);
    let w = p.parse_word("v:a u:a").unwrap();
    assert_eq!(p.format_word(&p.normal_form(&w)), "u:a v:a");
    let w = p.parse_word("u:a v:a u:a^2").unwrap();
    assert_eq!(p.format_word(&p.normal_form(&w)), "v:a");
}

#[test]
fn word_parse_errors() {
    let p = spec(named(&["u", "v"], &[]), &["C2", "S3"]);
    assert!(matches!(p.parse_word("u"), Err(GraphError::Syllable(..))));
    assert!(matches!(p.parse_word("w:a"), Err(GraphError::Syllable(..))));
    assert!(matches!(p.parse_word("v:(1234)"), Err(GraphError::Syllable(..))));
    assert_eq!(p.parse_word("v:e u:a").unwrap().len(), 1);
}

#[test]
fn head_tail_examples() {
    let free = spec(named(&["u", "v"], &[]), &["C2", "C2"]);
    let ht = free.head_tail(&free.parse_word("u:a v:a u:a v:a").unwrap()).unwrap();
    assert_eq!(ht.first.iter().copied().collect::<Vec<_>>(), vec![0]);
    assert_eq!(ht.last.iter().copied().collect::<Vec<_>>(), vec![1]);
    assert_eq!(ht.length, 4);

    let comm = spec(named(&["u", "v"], &[(0, 1)]), &["C2", "C2"]);
    let ht = comm.head_tail(&comm.parse_word("u:a v:a").unwrap()).unwrap();
    assert_eq!(ht.first.len(), 2);
    assert_eq!(ht.last.len(), 2);

    let ht = comm.head_tail(&comm.parse_word("v:a").unwrap()).unwrap();
    assert_eq!((ht.first.clone(), ht.last.clone()), (ht.vertices.clone(), ht.vertices.clone()));

    assert_eq!(comm.head_tail(&comm.parse_word("u:a u:a").unwrap()), Err(GraphError::NotNormal));
}

#[test]
fn conjugate_examples() {
    let p = spec(named(&["u", "v"], &[]), &["C3", "C2"]);
    let w = p.parse_word("v:a").unwrap();
    let h = conjugate_to_vertex(&p, &w, 0).unwrap();
    let c = p.conjugate(&h, &w);
    let ht = p.head_tail(&c).unwrap();
    assert_eq!(ht.first.iter().copied().collect::<Vec<_>>(), vec![0]);
    assert_eq!(ht.last.iter().copied().collect::<Vec<_>>(), vec![0]);
    assert_eq!(h.len(), 1);

    let h = conjugate_to_vertex(&p, &w, 1).unwrap();
    assert!(h.is_empty());

    let complete = spec(Graph::complete(2), &["C3", "C2"]);
    assert!(matches!(conjugate_to_vertex(&complete, &w, 0), Err(GraphError::Hypothesis(_))));
    let small = spec(named(&["u", "v"], &[]), &["C2", "C2"]);
    assert!(matches!(conjugate_to_vertex(&small, &w, 0), Err(GraphError::Hypothesis(_))));
    assert!(matches!(conjugate_to_vertex(&p, &Word::empty(), 0), Err(GraphError::Hypothesis(_))));
}

#[test]
fn classify_examples() {
    let path = named(&["u", "v", "w"], &[(0, 1), (1, 2)]);
    assert_eq!(rc_classify(&path, &[2, 3, 5]).unwrap(), RcClass::Decomposable { x: vec![1], y: vec![0, 2] });
    assert!(matches!(rc_classify(&Graph::null(2), &[3, 2]).unwrap(), RcClass::Recognizes { .. }));
    assert!(matches!(rc_classify(&Graph::null(2), &[2, 2]).unwrap(), RcClass::Recognizes { .. }));
    assert_eq!(rc_classify(&Graph::null(3), &[2, 2, 2]).unwrap(), RcClass::OpenRacg);
    assert!(matches!(rc_classify(&Graph::complete(3), &[3, 3, 3]).unwrap(), RcClass::Decomposable { .. }));
    assert!(rc_classify(&Graph::null(2), &[1, 2]).is_err());
    assert!(rc_classify(&Graph::null(1), &[3]).is_err());
}

#[test]
fn graph_json_round_trip() {
    let text = r#"{"vertices": ["u", "v", "w"], "edges": [[0, 1]], "groups": {"u": "C2", "v": "S3", "w": "C3"}}"#;
    let p = ProductSpec::from_json(&serde_json::from_str(text).unwrap()).unwrap();
    assert_eq!(p.sizes(), vec![2, 6, 3]);
    let q = ProductSpec::from_json(&p.to_json()).unwrap();
    assert_eq!(q.graph(), p.graph());
    let bad = r#"{"vertices": ["u"], "groups": {}}"#;
    assert!(ProductSpec::from_json(&serde_json::from_str(bad).unwrap()).is_err());
    let loop_ = r#"{"vertices": ["u"], "edges": [[0, 0]], "groups": {"u": "C2"}}"#;
    assert!(ProductSpec::from_json(&serde_json::from_str(loop_).unwrap()).is_err());
}

#[test]
fn confluence_over_strategies() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..200 {
        let p = random_spec(&mut rng, 6);
        let len = rng.gen_range(0..=12);
        let w = p.random_word(&mut rng, len);
        let reference = p.normal_form(&w);
        assert!(p.is_canonical(&reference));
        for seed in 0..20 {
            assert_eq!(p.normal_form_with(&w, Strategy::Random(seed)), reference);
        }
    }
}

#[test]
fn length_and_head_properties() {
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..1000 {
        let p = random_spec(&mut rng, 6);
        let (a, b) = (rng.gen_range(0..=8), rng.gen_range(0..=8));
        let u = p.normal_form(&p.random_word(&mut rng, a));
        let v = p.normal_form(&p.random_word(&mut rng, b));
        assert_eq!(p.normal_form(&p.inverse(&u)).len(), u.len());
        let uv = p.multiply(&u, &v);
        assert!(uv.len() <= u.len() + v.len());
        let (hu, hv, huv) = (p.head_tail(&u).unwrap(), p.head_tail(&v).unwrap(), p.head_tail(&uv).unwrap());
        if hu.vertices.is_disjoint(&hv.vertices) {
            assert!(hu.first.is_subset(&huv.first));
            assert!(huv.first.is_subset(&hu.first.union(&hv.first).copied().collect()));
        }
    }
}

#[test]
fn conjugator_postcondition() {
    let mut rng = StdRng::seed_from_u64(13);
    let mut done = 0;
    while done < 100 {
        let n = rng.gen_range(2..=5);
        let g = Graph::random(&mut rng, n, 0.3);
        if !g.complement_connected() {
            continue;
        }
        let names: Vec<&str> = (0..n).map(|_| *["C2", "C3", "S3"].choose(&mut rng).unwrap()).collect();
        if names.iter().all(|&s| s == "C2") {
            continue;
        }
        let p = spec(g, &names);
        let len = rng.gen_range(1..=8);
        let w = p.normal_form(&p.random_word(&mut rng, len));
        if w.is_empty() {
            continue;
        }
        let v = rng.gen_range(0..n);
        let h = conjugate_to_vertex(&p, &w, v).unwrap();
        let ht = p.head_tail(&p.conjugate(&h, &w)).unwrap();
        assert!(ht.first.len() == 1 && ht.first.contains(&v), "{}", p.format_word(&w));
        assert!(ht.last.len() == 1 && ht.last.contains(&v), "{}", p.format_word(&w));
        done += 1;
    }
}

#[test]
fn complete_graph_matches_direct_product() {
    let pool = ["C2", "C3", "C4", "S3", "C6"];
    for n in 1..=3usize {
        let combos: Vec<Vec<&str>> = (0..pool.len().pow(n as u32))
            .map(|mut i| {
                (0..n)
                    .map(|_| {
                        let s = pool[i % pool.len()];
                        i /= pool.len();
                        s
                    })
                    .collect()
            })
            .collect();
        for names in combos.iter().step_by(if n == 3 { 7 } else { 1 }) {
            let p = spec(Graph::complete(n), names);
            let groups: Vec<_> = names.iter().map(|s| lookup(s).unwrap().group().unwrap().clone()).collect();
            let mut prod = groups[0].clone();
            for g in &groups[1..] {
                prod = prod.direct_product(g);
            }
            let sizes: Vec<u32> = groups.iter().map(|g| g.order() as u32).collect();
            let split = |mut x: u32| -> Vec<u32> {
                let mut t = vec![0; n];
                for k in (0..n).rev() {
                    t[k] = x % sizes[k];
                    x /= sizes[k];
                }
                t
            };
            let word = |t: &[u32]| {
                Word(
                    t.iter()
                        .enumerate()
                        .filter(|&(v, &a)| a != groups[v].identity())
                        .map(|(v, &a)| Syllable { vertex: v, element: a })
                        .collect(),
                )
            };
            for x in prod.elements() {
                for y in prod.elements() {
                    let w = p.multiply(&word(&split(x)), &word(&split(y)));
                    assert_eq!(p.evaluate_commuting(&w).unwrap(), split(prod.mul(x, y)));
                    assert_eq!(w, p.normal_form(&word(&split(prod.mul(x, y)))));
                }
            }
        }
    }
}
