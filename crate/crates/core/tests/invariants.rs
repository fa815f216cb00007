use kronface::faces::{enumerate_face_triples, face_equations, face_span_from_points, mu_value, with_weight_equations};
use kronface::linalg::{rank, to_rational_rows};
use kronface::order_matrix::{marginals_and_pi, AdditiveMatrix};
use kronface::pairs::build_all_pairs;
use kronface::{
    enumerate_order_matrices, lex_index, longest_element, unlex_index, KroneckerOracle, LatticeTriple, Partition,
    Permutation,
};
use proptest::prelude::*;

fn strictly_decreasing(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] > w[1])
}

fn witness(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::btree_set(0i64..40, n).prop_map(|s| s.into_iter().rev().collect())
}

fn grid_and_witness() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    prop_oneof![Just((2, 2)), Just((3, 2)), Just((2, 3)), Just((3, 3))]
        .prop_flat_map(|(n1, n2)| (witness(n1), witness(n2)))
}

fn distinct_sums(x: &[i64], y: &[i64]) -> bool {
    let mut s: Vec<i64> = x.iter().flat_map(|a| y.iter().map(move |b| a + b)).collect();
    s.sort_unstable();
    s.windows(2).all(|w| w[0] != w[1])
}

fn permutation(max_m: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_m)
        .prop_flat_map(|m| Just((1..=m).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn witnessed_grids_are_enumerated((x, y) in grid_and_witness()) {
        prop_assume!(strictly_decreasing(&x) && strictly_decreasing(&y) && distinct_sums(&x, &y));
        let r = kronface::OrderMatrix::from_witness(x.clone(), y.clone()).unwrap();
        let all = enumerate_order_matrices(x.len(), y.len());
        prop_assert!(all.iter().any(|m| m.ranks == r.ranks));

        let t = r.transpose();
        let all_t = enumerate_order_matrices(y.len(), x.len());
        prop_assert!(all_t.iter().any(|m| m.ranks == t.ranks));
    }

    #[test]
    fn additive_matrices_have_partition_marginals((x, y) in grid_and_witness()) {
        prop_assume!(strictly_decreasing(&x) && strictly_decreasing(&y) && distinct_sums(&x, &y));
        let entries: Vec<Vec<u32>> = x.iter().map(|a| y.iter().map(|b| (a + b) as u32).collect()).collect();
        let a = AdditiveMatrix::new(entries).unwrap();
        let (lambda, mu, nu) = marginals_and_pi(&a);
        prop_assert_eq!(lambda.weight(), mu.weight());
        prop_assert_eq!(lambda.weight(), nu.weight());
        let r = kronface::OrderMatrix::from_witness(x, y).unwrap();
        prop_assert_eq!(a.order_matrix().unwrap().ranks, r.ranks);
    }

    #[test]
    fn permutation_lengths(p in permutation(8), seed in any::<u64>()) {
        let m = p.size();
        let mut q: Vec<usize> = (1..=m).collect();
        q.rotate_left((seed as usize) % m);
        let q = Permutation::new(q).unwrap();

        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        prop_assert_eq!(p.length(), p.inverse().length());
        let w0 = longest_element(m);
        prop_assert_eq!(w0.compose(&p).unwrap().length(), m * (m - 1) / 2 - p.length());

        let pq = p.compose(&q).unwrap();
        prop_assert!(pq.length() <= p.length() + q.length());
        prop_assert_eq!(pq.length() % 2, (p.length() + q.length()) % 2);
        prop_assert_eq!(pq.apply(1), p.apply(q.apply(1)));
    }

    #[test]
    fn lex_index_round_trips(n1 in 1usize..5, n2 in 1usize..5, seed in any::<usize>()) {
        let k = seed % (n1 * n2) + 1;
        let cell = unlex_index(k, n1, n2).unwrap();
        prop_assert_eq!(lex_index(cell, n1, n2).unwrap(), k);
    }

    #[test]
    fn mu_is_linear(
        face_seed in any::<usize>(),
        g1 in proptest::collection::vec(0u32..4, 6),
        g2 in proptest::collection::vec(0u32..4, 6),
        s in proptest::collection::vec(-3i64..4, 5),
    ) {
        let pairs = build_all_pairs(&enumerate_order_matrices(3, 2)).unwrap();
        let face = face_equations(&pairs[face_seed % pairs.len()]).unwrap();
        let triple = |g: &[u32]| {
            let gamma = Partition::from_unsorted(g.to_vec());
            let n = gamma.weight();
            // Any α, β of the right weight; μ does not care about their shape.
            LatticeTriple::new(Partition::from_unsorted(vec![n, 0, 0]), Partition::from_unsorted(vec![n, 0]), gamma, 3, 2)
                .unwrap()
        };
        let (t1, t2) = (triple(&g1), triple(&g2));
        let sum = LatticeTriple::new(t1.alpha.add(&t2.alpha), t1.beta.add(&t2.beta), t1.gamma.add(&t2.gamma), 3, 2).unwrap();
        let sigma = (&s[..3], &s[3..]);
        let mu = |t: &LatticeTriple| mu_value(t, &face, sigma).unwrap();
        prop_assert_eq!(mu(&sum), mu(&t1) + mu(&t2));

        let doubled: Vec<i64> = s.iter().map(|x| 2 * x).collect();
        prop_assert_eq!(mu_value(&t1, &face, (&doubled[..3], &doubled[3..])).unwrap(), 2 * mu(&t1));
    }
}

#[test]
fn transpose_preserves_enumeration_size() {
    for (n1, n2) in [(1, 3), (2, 3), (2, 4)] {
        assert_eq!(enumerate_order_matrices(n1, n2).len(), enumerate_order_matrices(n2, n1).len());
    }
}

#[test]
fn face_triples_have_zero_mu_and_equal_weights() {
    for (n1, n2) in [(2, 2), (3, 2)] {
        for pair in build_all_pairs(&enumerate_order_matrices(n1, n2)).unwrap() {
            let face = face_equations(&pair).unwrap();
            for n in 1..=5 {
                for t in enumerate_face_triples(&face, n) {
                    assert_eq!((t.alpha.weight(), t.beta.weight(), t.gamma.weight()), (n, n, n));
                    for k in 0..n1 + n2 {
                        let mut s = vec![0i64; n1 + n2];
                        s[k] = 1;
                        assert_eq!(mu_value(&t, &face, (&s[..n1], &s[n1..])).unwrap(), 0, "{t} on {}", pair.u_hat);
                    }
                }
            }
        }
    }
}

#[test]
fn spans_fit_inside_the_equation_solutions() {
    let oracle = KroneckerOracle::new();
    let (n1, n2) = (2, 2);
    let ncols = n1 + n2 + n1 * n2;
    for pair in build_all_pairs(&enumerate_order_matrices(n1, n2)).unwrap() {
        let face = face_equations(&pair).unwrap();
        let system = with_weight_equations(&face.mu_zero_system, n1, n2);
        let solutions = ncols - rank(&to_rational_rows(&system), ncols);
        let span = face_span_from_points(&face, &oracle, 8, 1).unwrap();
        assert!(span.dimension_estimate <= solutions, "{}", pair.u_hat);
        if face.is_well_covering() {
            assert_eq!(span.dimension_estimate, solutions, "{}", pair.u_hat);
        }
    }
}
