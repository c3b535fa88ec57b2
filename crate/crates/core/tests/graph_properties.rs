use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use skewmate::graph::{
    apply_permutation, automorphism_count, canonical_form, enumerate_all, is_isomorphic, parse_compact,
    parse_graph, parse_text, skew_adjacency, to_compact, to_text, transpose, OrientedGraph, Permutation,
};
use skewmate::linalg::{mat_mul, RatMatrix};
use skewmate::spectral::{fingerprint, generalized_cospectral, recover_q, walk_det, walk_matrix};

fn graph_on(n: usize) -> impl Strategy<Value = OrientedGraph> {
    let codes = 3u128.pow((n * (n - 1) / 2) as u32);
    (0..codes).prop_map(move |c| OrientedGraph::from_code(n, c).unwrap())
}

fn graph_and_perm(max_n: usize) -> impl Strategy<Value = (OrientedGraph, Permutation)> {
    (1..=max_n).prop_flat_map(|n| {
        let perm = Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap());
        (graph_on(n), perm)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn encodings_round_trip(g in (1usize..=8).prop_flat_map(graph_on)) {
        prop_assert_eq!(parse_compact(&to_compact(&g)).unwrap(), g);
        prop_assert_eq!(parse_text(&to_text(&g)).unwrap(), g);
        prop_assert_eq!(parse_graph(&to_compact(&g)).unwrap(), g);
        prop_assert_eq!(OrientedGraph::from_code(g.n(), g.code()).unwrap(), g);
    }

    #[test]
    fn relabeling_conjugates_skew_matrix((g, sigma) in graph_and_perm(8)) {
        let h = apply_permutation(&g, &sigma).unwrap();
        let p = sigma.matrix();
        let conj = mat_mul(&mat_mul(&p.transpose(), &skew_adjacency(&g)).unwrap(), &p).unwrap();
        prop_assert_eq!(skew_adjacency(&h), conj);
        prop_assert_eq!(apply_permutation(&h, &sigma.inverse()).unwrap(), g);
    }

    #[test]
    fn canonical_form_is_a_class_invariant((g, sigma) in graph_and_perm(7)) {
        let h = apply_permutation(&g, &sigma).unwrap();
        let c = canonical_form(&g).unwrap();
        prop_assert_eq!(&c, &canonical_form(&h).unwrap());
        // the canonical relabeling is a member of the class
        let canon = parse_compact(&c).unwrap();
        prop_assert!(is_isomorphic(&g, &canon).is_some());
        prop_assert!(canon.code() <= g.code());
        let w = is_isomorphic(&g, &h).expect("relabeled copy");
        prop_assert_eq!(apply_permutation(&g, &w).unwrap(), h);
        prop_assert_eq!(automorphism_count(&g).unwrap(), automorphism_count(&h).unwrap());
    }

    #[test]
    fn fingerprint_invariances((g, sigma) in graph_and_perm(7)) {
        let f = fingerprint(&g);
        prop_assert_eq!(&f, &fingerprint(&transpose(&g)));
        prop_assert_eq!(&f, &fingerprint(&apply_permutation(&g, &sigma).unwrap()));
        prop_assert_eq!(f.digest(), fingerprint(&transpose(&g)).digest());
    }

    #[test]
    fn walk_determinant_divisibility(g in (1usize..=8).prop_flat_map(graph_on)) {
        let det = walk_det(&g);
        let two_power = BigInt::one() << (g.n() / 2);
        prop_assert!((&det % &two_power).is_zero());
        // W(Dᵀ) = W(D) with odd-indexed columns negated
        prop_assert_eq!(walk_det(&transpose(&g)).abs(), det.abs());
    }

    #[test]
    fn relabeling_certificate_is_its_permutation((g, sigma) in graph_and_perm(7)) {
        let h = apply_permutation(&g, &sigma).unwrap();
        match recover_q(&g, &h) {
            Ok(cert) => {
                prop_assert!(cert.level.is_one());
                prop_assert_eq!(cert.q, RatMatrix::from_int(&sigma.matrix()));
            }
            Err(_) => prop_assert!(walk_det(&g).is_zero()),
        }
    }

    #[test]
    fn cospectral_controllable_pairs_share_walk_determinant(g in graph_on(5), h in graph_on(5)) {
        if generalized_cospectral(&g, &h).unwrap() {
            prop_assert_eq!(walk_det(&g).abs(), walk_det(&h).abs());
        }
    }
}

#[test]
fn walk_matrix_first_columns() {
    let g = OrientedGraph::from_arcs(4, &[(0, 1), (2, 1), (3, 0)]).unwrap();
    let w = walk_matrix(&g);
    let ones: Vec<BigInt> = vec![BigInt::one(); 4];
    assert_eq!(w.column(0), ones);
    // S e = out-degree minus in-degree
    let expected: Vec<BigInt> = (0..4)
        .map(|v| BigInt::from(g.out_degree(v) as i64 - g.in_degree(v) as i64))
        .collect();
    assert_eq!(w.column(1), expected);
}

#[test]
fn fingerprint_transpose_exhaustive_small() {
    for n in 1..=4 {
        for g in enumerate_all(n).unwrap() {
            assert_eq!(fingerprint(&g), fingerprint(&transpose(&g)), "{g}");
        }
    }
}

#[test]
fn orbit_counting_small_orders() {
    // sum over classes of n!/|Aut| is the number of labeled graphs
    for n in 1..=5usize {
        let mut classes = std::collections::BTreeMap::new();
        for g in enumerate_all(n).unwrap() {
            classes.entry(canonical_form(&g).unwrap()).or_insert(g);
        }
        let fact: usize = (1..=n).product();
        let total: usize = classes.values().map(|g| fact / automorphism_count(g).unwrap()).sum();
        assert_eq!(total, 3usize.pow((n * (n - 1) / 2) as u32));
    }
}

#[test]
fn malformed_inputs() {
    assert!(parse_compact("o3:12").is_err());
    assert!(parse_compact("o3:123").is_err());
    assert!(parse_compact("x3:120").is_err());
    assert!(parse_compact("o11:0").is_err());
    assert!(parse_text("n 3\n0 1\n1 0\n").is_err());
    assert!(parse_text("n 2\n0 5\n").is_err());
    assert!(OrientedGraph::from_arcs(3, &[(1, 1)]).is_err());
}
