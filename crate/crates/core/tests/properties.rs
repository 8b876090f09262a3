use cubicdom::graph::{girth, graph6_decode, graph6_encode, shortest_cycle, Girth, MarkedGraph};
use cubicdom::path_score::{score_path, score_reverse, PathAnnotation};
use cubicdom::reductions::{reduce_default, replay};
use cubicdom::solver::{is_md_set, mdom_exact, DEFAULT_BUDGET};
use cubicdom::weights::{vertex_weight, weight};
use cubicdom::Rational12;
use proptest::prelude::*;

/// Random subcubic graph: candidate edges are kept while degrees allow.
fn subcubic(max_n: usize) -> impl Strategy<Value = MarkedGraph> {
    (1..=max_n)
        .prop_flat_map(|n| {
            (
                Just(n),
                prop::collection::vec((0..n, 0..n), 0..=2 * n),
                prop::collection::vec(any::<bool>(), n),
            )
        })
        .prop_map(|(n, edges, marks)| {
            let mut g = MarkedGraph::new(n);
            for (u, v) in edges {
                let _ = g.add_edge(u, v);
            }
            for (v, m) in marks.into_iter().enumerate() {
                if m && v % 3 == 0 {
                    g.set_marked(v, true);
                }
            }
            g
        })
}

fn unmarked(g: &MarkedGraph) -> MarkedGraph {
    let mut h = g.clone();
    for v in h.vertices() {
        h.set_marked(v, false);
    }
    h
}

fn admissible_annotation() -> impl Strategy<Value = PathAnnotation> {
    (1u64..=30)
        .prop_flat_map(|k| {
            let room = k - 1;
            (
                Just(k),
                0..=room / 2,
                0..=room / 2,
                (0u8..=1, 0u8..=1),
                (0u64..=3, 0u64..=3, 0u64..=4),
                (0..=room, 0..=room),
            )
        })
        .prop_map(
            |(k, n_isthmus, n_isthmus_p, (t1, t1p), (r_island, g_island, m_isthmus), (b, bp))| {
                let room = k - 1;
                PathAnnotation {
                    t1,
                    t1p,
                    k,
                    r_island,
                    g_island,
                    n_isthmus,
                    n_isthmus_p,
                    m_isthmus,
                    b_detour: b.min(room - 2 * n_isthmus),
                    b_detour_p: bp.min(room - 2 * n_isthmus_p),
                }
            },
        )
}

proptest! {
    #[test]
    fn graph6_round_trips(g in subcubic(40)) {
        let h = unmarked(&g);
        let decoded = graph6_decode(&graph6_encode(&h)).unwrap();
        prop_assert_eq!(decoded.edges(), h.edges());
        prop_assert_eq!(decoded.n(), h.n());
    }

    #[test]
    fn weight_is_the_sum_of_vertex_weights(g in subcubic(30)) {
        let sum: u64 = g.vertices().map(|v| vertex_weight(&g, v)).sum();
        prop_assert_eq!(weight(&g), sum);
        prop_assert!(g.vertices().all(|v| (4..=12).contains(&vertex_weight(&g, v))));
    }

    #[test]
    fn girth_matches_the_shortest_cycle(g in subcubic(24)) {
        match (girth(&g), shortest_cycle(&g)) {
            (Girth::Finite(len), Some(c)) => {
                prop_assert_eq!(len, c.len());
                for i in 0..c.len() {
                    prop_assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
                }
            }
            (Girth::Infinite, None) => {}
            (a, b) => prop_assert!(false, "girth {:?} but cycle {:?}", a, b),
        }
    }

    #[test]
    fn witnesses_dominate_and_marking_never_hurts(g in subcubic(14), v in 0usize..14) {
        let w = mdom_exact(&g, DEFAULT_BUDGET).unwrap();
        prop_assert!(w.optimal);
        prop_assert!(is_md_set(&g, &w.set));
        prop_assert_eq!(w.size, w.set.len());
        let mut marked = g.clone();
        marked.set_marked(v % g.n(), true);
        prop_assert!(mdom_exact(&marked, DEFAULT_BUDGET).unwrap().size <= w.size);
    }

    /// Every reduction trace pays 12 per committed dominator and lifts an
    /// optimal residual set to an MD-set within the extension bound.
    #[test]
    fn reduction_traces_honor_their_contracts(g in subcubic(14)) {
        let (residual, trace) = reduce_default(&g);
        let alpha = trace.total_alpha();
        prop_assert!(weight(&g) >= weight(&residual) + 12 * alpha);
        let inner = mdom_exact(&residual, DEFAULT_BUDGET).unwrap();
        let lifted = replay(&g, &trace, &inner.set).unwrap();
        prop_assert!(is_md_set(&g, &lifted.set));
        prop_assert!(lifted.size as u64 <= inner.size as u64 + alpha);
        let best = mdom_exact(&g, DEFAULT_BUDGET).unwrap().size;
        prop_assert!(best <= lifted.size);
        if residual.n() == 0 {
            prop_assert!(12 * lifted.size as u64 <= weight(&g));
        }
    }

    #[test]
    fn path_scores_sum_to_at_least_two(a in admissible_annotation()) {
        prop_assert!(a.is_admissible());
        prop_assert!(score_path(&a) + score_reverse(&a) >= Rational12::int(2));
        prop_assert_eq!(score_reverse(&a), score_path(&a.mirrored()));
        prop_assert_eq!(a.mirrored().mirrored(), a);
    }
}
