use std::collections::BTreeSet;

use rearrange::{
    apply_linkcut, apply_permutation, are_congruent, brute_force_distance, build_reduction,
    canonicalize_sequence, family_partition, fpt_distance, linkcut_distance, linkcut_script,
    max_matching_bruteforce, movements_graph, optimal_permutation, parse_tree,
    permutation_distance, reduction_bound, sequence_size, serialize_tree,
    subtree_isomorphism_table, verify_sequence, Error, Label, LabelledTree, LinkCutOp,
    OperationSequence, Parent, Permutation, ThreeDMInstance,
};

const T1: &str = "((d,e,f)b,(g,h)c)a;";
const T2: &str = "((b,e)d,(f,g,h)c)a;";

fn t(s: &str) -> LabelledTree {
    parse_tree(s).unwrap()
}

fn pair() -> (LabelledTree, LabelledTree) {
    (t(T1), t(T2))
}

fn mv(child: &str, from: &str, to: &str) -> LinkCutOp {
    LinkCutOp::new(child, from, to).unwrap()
}

fn perm(pairs: &[(&str, &str)]) -> Permutation {
    Permutation::from_pairs(pairs.iter().copied()).unwrap()
}

fn labels(xs: &[&str]) -> BTreeSet<Label> {
    xs.iter().map(|x| Label::new(*x).unwrap()).collect()
}

#[test]
fn parsing_and_printing() {
    let t1 = t(T1);
    assert_eq!(t1.root_label().as_str(), "a");
    assert_eq!(t1.children("b").map(Label::as_str).collect::<Vec<_>>(), ["d", "e", "f"]);
    assert_eq!(serialize_tree(&t("x;")), "x;");
    assert!(matches!(parse_tree("((a)a);"), Err(Error::DuplicateLabel(_))));
    assert_eq!(serialize_tree(&t1), T1);
    assert_eq!(serialize_tree(&t(T2)), T2);
    assert_eq!(serialize_tree(&t("((h,g,f)c,(e,b)d)a;")), T2);
}

#[test]
fn single_operations() {
    let t1 = t(T1);
    let moved = apply_linkcut(&t1, &mv("d", "b", "a")).unwrap();
    assert!(are_congruent(&moved, &t("((e,f)b,d,(g,h)c)a;")));
    assert_eq!(serialize_tree(&moved), "((e,f)b,(g,h)c,d)a;");
    assert!(matches!(
        apply_linkcut(&t1, &mv("b", "a", "d")),
        Err(Error::DescendantTarget { .. })
    ));
    assert!(LinkCutOp::new("v", "p", "p").is_err());

    let swapped = apply_permutation(&t1, &perm(&[("b", "d"), ("d", "b")])).unwrap();
    assert_eq!(serialize_tree(&swapped), "((b,e,f)d,(g,h)c)a;");
    assert!(are_congruent(&apply_permutation(&t1, &Permutation::identity()).unwrap(), &t1));

    let pi = perm(&[("b", "c"), ("c", "d"), ("d", "g"), ("g", "b"), ("e", "h"), ("h", "e")]);
    assert!(are_congruent(&apply_permutation(&t1, &pi).unwrap(), &t(T2)));
}

#[test]
fn congruence_and_isomorphism() {
    let (t1, t2) = pair();
    assert!(are_congruent(&t1, &t1));
    assert!(are_congruent(&t("(b,c)a;"), &t("(c,b)a;")));
    assert!(!are_congruent(&t1, &t2));

    let iso = subtree_isomorphism_table(&t1, &t2);
    let at = |x: &str, y: &str| iso.is_isomorphic(t1.index_of(x).unwrap(), t2.index_of(y).unwrap());
    assert!(at("b", "c"));
    assert!(!at("b", "d"));
    assert!(at("a", "a"));
    assert!(iso.trees_isomorphic());
}

#[test]
fn linkcut_examples() {
    let (t1, t2) = pair();
    let part = family_partition(&t1, &t2).unwrap();
    assert_eq!(part.active_set(), labels(&["b", "d", "e", "f"]));
    let expect = [("a", "d", "b"), ("b", "a", "d"), ("b", "d", "e"), ("b", "c", "f")];
    assert_eq!(part.len(), expect.len());
    for (u, w, x) in expect {
        let key = (Parent::Label(Label::new(u).unwrap()), Parent::Label(Label::new(w).unwrap()));
        assert_eq!(part.groups()[&key], labels(&[x]));
    }
    assert_eq!(linkcut_distance(&t1, &t2).unwrap(), 4);
    assert_eq!(linkcut_distance(&t1, &t1).unwrap(), 0);

    let script = linkcut_script(&t1, &t2).unwrap();
    assert_eq!(script.len(), 4);
    assert!(verify_sequence(&t1, &script, &t2));
    assert!(linkcut_script(&t1, &t1).unwrap().is_empty());

    let (s1, s2) = (t("((d,e)b,c)a;"), t("((d,e)c,b)a;"));
    let part = family_partition(&s1, &s2).unwrap();
    assert_eq!(part.len(), 1);
    assert_eq!(part.active_set(), labels(&["d", "e"]));
    assert_eq!(linkcut_distance(&s1, &s2).unwrap(), 2);

    assert!(matches!(linkcut_distance(&t1, &t("(b)a;")), Err(Error::LabelSetMismatch)));
}

#[test]
fn movements_graph_example() {
    let (t1, t2) = pair();
    let g = movements_graph(&t1, &t2).unwrap();
    let shown: Vec<String> = g.edges.iter().map(|(u, w)| format!("{u}>{w}")).collect();
    assert_eq!(shown, ["a>d", "b>a", "b>c", "b>d"]);
    assert_eq!(g.vertices.len(), 4);
    assert!(movements_graph(&t1, &t1).unwrap().edges.is_empty());
}

#[test]
fn permutation_examples() {
    let (t1, t2) = pair();
    assert_eq!(permutation_distance(&t1, &t2).unwrap(), 6);
    assert_eq!(permutation_distance(&t1, &t1).unwrap(), 0);
    let pi = optimal_permutation(&t1, &t2).unwrap();
    assert_eq!(pi.len(), 6);
    assert!(are_congruent(&apply_permutation(&t1, &pi).unwrap(), &t2));
    assert!(optimal_permutation(&t("(b,c)a;"), &t("(c,b)a;")).unwrap().is_empty());
    assert!(matches!(
        permutation_distance(&t("(b,c)a;"), &t("((c)b)a;")),
        Err(Error::NotIsomorphic)
    ));
}

#[test]
fn rearrangement_examples() {
    let (t1, t2) = pair();
    let best = brute_force_distance(&t1, &t2).unwrap();
    assert_eq!(best.distance, 3);
    assert!(verify_sequence(&t1, &best.witness, &t2));
    assert_eq!(fpt_distance(&t1, &t2, 3).unwrap().distance(), Some(3));
    assert_eq!(fpt_distance(&t1, &t2, 2).unwrap().distance(), None);

    let mut witness = OperationSequence::default();
    witness.push(perm(&[("b", "d"), ("d", "b")]));
    witness.push(mv("f", "d", "c"));
    assert!(verify_sequence(&t1, &witness, &t2));
    assert_eq!(sequence_size(&witness), 3);
}

#[test]
fn sequence_sizes_and_canonical_form() {
    assert_eq!(sequence_size(&OperationSequence::default()), 0);
    let swap = perm(&[("a", "b"), ("b", "a")]);
    let twice: OperationSequence = [swap.clone().into(), swap.clone().into()].into_iter().collect();
    assert_eq!(sequence_size(&twice), 0);

    let late: OperationSequence = [mv("f", "b", "c").into(), perm(&[("b", "d"), ("d", "b")]).into()]
        .into_iter()
        .collect();
    let canon = canonicalize_sequence(&late);
    assert_eq!(canon.permutation, perm(&[("b", "d"), ("d", "b")]));
    assert_eq!(canon.linkcuts, [mv("f", "d", "c")]);
    let t1 = t(T1);
    assert!(are_congruent(
        &late.replay(&t1).unwrap(),
        &canon.to_sequence().replay(&t1).unwrap()
    ));
}

#[test]
fn reduction_examples() {
    let h = ThreeDMInstance::new(
        ["a", "a'"].map(String::from).to_vec(),
        vec!["b".to_string()],
        ["c", "c'"].map(String::from).to_vec(),
        vec![
            ["a", "b", "c"].map(String::from),
            ["a'", "b", "c'"].map(String::from),
        ],
    )
    .unwrap();
    let (r1, r2) = build_reduction(&h).unwrap();
    assert_eq!(r1.len() + 1, 19);
    assert_eq!(r2.len() + 1, 19);
    let g = movements_graph(&r1, &r2).unwrap();
    let triangles = g.triangles();
    assert_eq!(triangles.len(), 2);
    let shared: BTreeSet<_> = triangles[0]
        .iter()
        .filter(|v| triangles[1].contains(v))
        .map(|v| v.to_string())
        .collect();
    assert_eq!(shared, BTreeSet::from(["b".to_string()]));
    assert_eq!(max_matching_bruteforce(&h).unwrap(), 1);
    assert_eq!(reduction_bound(2, 1).unwrap(), 9);
    assert_eq!(reduction_bound(0, 0).unwrap(), 0);
    assert_eq!(reduction_bound(3, 3).unwrap(), 9);
    assert!(reduction_bound(1, 2).is_err());

    let empty = ThreeDMInstance::new(
        vec!["a".into()],
        vec!["b".into()],
        vec!["c".into()],
        Vec::new(),
    )
    .unwrap();
    let (e1, e2) = build_reduction(&empty).unwrap();
    assert_eq!(linkcut_distance(&e1, &e2).unwrap(), 0);
    assert_eq!(max_matching_bruteforce(&empty).unwrap(), 0);
}
