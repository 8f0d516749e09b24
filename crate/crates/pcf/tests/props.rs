//! Cross-module properties: the checker against a naive recomputation,
//! invariance under color renaming, serializer round-trips, descent of the
//! tree solver's reduction sequence, and witness soundness under renaming.

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pcf::{
    adversarial_tree, brute_force_pcf, check_pcf, count_pcf_colorings, gen_star,
    tree_pcf_color_traced, unique_colors, Color, Coloring, Graph, ListAssignment, SearchBudget,
    SearchOutcome, StepKind,
};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        let len = pairs.len();
        proptest::collection::vec(any::<bool>(), len).prop_map(move |mask| {
            let edges: Vec<_> = pairs
                .iter()
                .zip(&mask)
                .filter(|(_, &keep)| keep)
                .map(|(&e, _)| e)
                .collect();
            Graph::new(n, &edges).unwrap()
        })
    })
}

fn arb_colored_graph(max_n: usize) -> impl Strategy<Value = (Graph, Vec<Color>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        (
            Just(g),
            proptest::collection::vec(1..=6u32, n),
        )
    })
}

/// Straightforward re-statement of the PCF conditions, independent of the
/// checker's bookkeeping.
fn naive_valid(g: &Graph, colors: &[Color]) -> bool {
    for (u, v) in g.edges() {
        if colors[u] == colors[v] {
            return false;
        }
    }
    g.vertices().all(|v| {
        g.degree(v) == 0
            || g.neighbors(v).iter().any(|&u| {
                g.neighbors(v)
                    .iter()
                    .filter(|&&w| colors[w] == colors[u])
                    .count()
                    == 1
            })
    })
}

proptest! {
    #[test]
    fn checker_matches_naive_recount((g, colors) in arb_colored_graph(10)) {
        let phi = Coloring::from_colors(colors.clone());
        let report = check_pcf(&g, &phi, None).unwrap();
        prop_assert_eq!(report.is_valid(), naive_valid(&g, &colors));
        // Validity decomposes into properness plus nonempty unique sets.
        let decomposed = report.proper_violations.is_empty()
            && g.vertices().all(|v| {
                g.degree(v) == 0 || !unique_colors(&g, &phi, v).is_empty()
            });
        prop_assert_eq!(report.is_valid(), decomposed);
    }

    #[test]
    fn checker_invariant_under_color_renaming(
        (g, colors) in arb_colored_graph(8),
        perm in Just((1..=6u32).collect::<Vec<_>>()).prop_shuffle(),
        list_masks in proptest::collection::vec(1..=63u32, 0..=8),
    ) {
        let n = g.vertex_count();
        let rename = |c: Color| perm[(c - 1) as usize];
        // Lists: an arbitrary nonempty subset of {1..6} per vertex, plus
        // the vertex's own color so membership verdicts stay meaningful.
        let lists: Vec<Vec<Color>> = (0..n)
            .map(|v| {
                let mask = list_masks.get(v).copied().unwrap_or(1);
                let mut list: Vec<Color> =
                    (1..=6u32).filter(|c| mask & (1 << (c - 1)) != 0).collect();
                list.push(colors[v]);
                list
            })
            .collect();
        let lists = ListAssignment::new(lists).unwrap();
        let renamed_lists = ListAssignment::new(
            (0..n).map(|v| lists.list(v).iter().map(|&c| rename(c)).collect()).collect(),
        )
        .unwrap();
        let phi = Coloring::from_colors(colors.clone());
        let renamed_phi =
            Coloring::from_colors(colors.iter().map(|&c| rename(c)).collect());

        let before = check_pcf(&g, &phi, Some(&lists)).unwrap();
        let after = check_pcf(&g, &renamed_phi, Some(&renamed_lists)).unwrap();
        prop_assert_eq!(before.is_valid(), after.is_valid());
        prop_assert_eq!(before.proper_violations, after.proper_violations);
        prop_assert_eq!(before.cf_failures, after.cf_failures);
        prop_assert_eq!(before.list_violations, after.list_violations);
    }

    #[test]
    fn unique_colors_drawn_from_neighbor_colors((g, colors) in arb_colored_graph(10)) {
        let phi = Coloring::from_colors(colors.clone());
        for v in g.vertices() {
            let neighborhood: Vec<Color> =
                g.neighbors(v).iter().map(|&u| colors[u]).collect();
            for c in unique_colors(&g, &phi, v) {
                prop_assert!(neighborhood.contains(&c));
            }
        }
    }

    #[test]
    fn edge_list_round_trips(g in arb_graph(12)) {
        let text = g.to_edge_list();
        prop_assert_eq!(Graph::parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn unsolvable_means_zero_colorings(g in arb_graph(6)) {
        let n = g.vertex_count();
        if n == 0 {
            return Ok(());
        }
        let lists =
            ListAssignment::new(vec![(1..=3u32).collect(); n]).unwrap();
        let outcome = brute_force_pcf(&g, &lists, &SearchBudget::default());
        let count = count_pcf_colorings(&g, &lists);
        match outcome {
            SearchOutcome::Unsolvable => prop_assert_eq!(count, 0),
            SearchOutcome::Solution(phi) => {
                prop_assert!(count > 0);
                prop_assert!(check_pcf(&g, &phi, Some(&lists)).unwrap().is_valid());
            }
            SearchOutcome::BudgetExhausted => prop_assert!(false, "budget too small"),
        }
    }
}

#[test]
fn reduction_steps_strictly_descend() {
    for seed in 0..30u64 {
        let (t, lists) = adversarial_tree(seed);
        let n = t.vertex_count();
        let (_, trace) = tree_pcf_color_traced(&t, &lists).unwrap();
        assert!(trace.steps.len() <= n);
        let mut handled = 0;
        for step in &trace.steps {
            let r = step.removed.len();
            match step.kind {
                StepKind::Base => assert!((1..=2).contains(&r)),
                StepKind::Base3 => assert_eq!(r, 3),
                StepKind::R1 => assert_eq!(r, 2),
                StepKind::R2 => assert_eq!(r, 3),
                StepKind::V0(_) => assert!(r >= 3),
            }
            handled += r;
        }
        assert_eq!(handled, n, "every vertex handled exactly once");
    }
}

/// A witness certifies its entire renaming class: applying random color
/// permutations to the star witness keeps it unsolvable.
#[test]
fn witness_survives_color_renaming() {
    let inst = gen_star(4).unwrap();
    assert_eq!(
        brute_force_pcf(&inst.graph, &inst.lists, &SearchBudget::default()),
        SearchOutcome::Unsolvable
    );
    let universe: Vec<Color> = (1..=4).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let mut perm = universe.clone();
        perm.shuffle(&mut rng);
        let renamed: Vec<Vec<Color>> = inst
            .lists
            .iter()
            .map(|list| list.iter().map(|&c| perm[(c - 1) as usize]).collect())
            .collect();
        let renamed = ListAssignment::new(renamed).unwrap();
        assert_eq!(
            brute_force_pcf(&inst.graph, &renamed, &SearchBudget::default()),
            SearchOutcome::Unsolvable
        );
    }
}
