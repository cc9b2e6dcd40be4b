//! Monotone adversary: helpful-looking edits that stress recovery.
//!
//! A monotone adversary may only make the planted partition look better: it
//! adds edges inside clusters and removes edges between clusters. Robust
//! methods must keep recovering the partition under any such perturbation.
//! The key algebraic fact is that for the planted 0/1 block matrix Y*,
//! A(G_adv)•Y* = A(G)•Y* + 2·r_plus where r_plus counts additions: removals
//! touch only entries where Y* is zero, so the planted objective can only
//! grow, while the adversary is free to push every competing partition down.
//!
//! Actions are applied sequentially with validation against the evolving
//! graph, so a log fully determines the perturbed graph and can be audited
//! or replayed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Graph, Partition};

/// The two moves a monotone adversary may make.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionKind {
    /// Insert a missing edge whose endpoints share a cluster.
    AddWithin,
    /// Delete an existing edge whose endpoints are in different clusters.
    RemoveAcross,
}

/// One edit, identified by kind and endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdversaryAction {
    /// Whether this adds a within edge or removes a cross edge.
    pub kind: ActionKind,
    /// The affected vertex pair.
    pub endpoints: (usize, usize),
}

/// Replayable record of an adversary run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdversaryLog {
    /// Number of within-cluster additions.
    pub r_plus: usize,
    /// Number of cross-cluster removals.
    pub r_minus: usize,
    /// The edits in application order.
    pub actions: Vec<AdversaryAction>,
}

/// Apply a list of monotone edits in order, validating each against the
/// current graph state. The input graph is not modified.
pub fn apply_actions(
    g: &Graph,
    p: &Partition,
    actions: &[AdversaryAction],
) -> Result<(Graph, AdversaryLog)> {
    if g.n() != p.n() {
        return Err(Error::MismatchedPartition(format!(
            "graph has {} vertices but partition covers {}",
            g.n(),
            p.n()
        )));
    }
    let n = g.n();
    let mut adj: Vec<u8> = (0..n * n)
        .map(|idx| g.adj_entry(idx / n, idx % n))
        .collect();

    let invalid = |index: usize, reason: &str| Error::InvalidAction {
        index,
        reason: reason.to_string(),
    };

    let mut r_plus = 0;
    let mut r_minus = 0;
    for (index, action) in actions.iter().enumerate() {
        let (i, j) = action.endpoints;
        if i >= n || j >= n {
            return Err(invalid(index, "endpoint out of range"));
        }
        if i == j {
            return Err(invalid(index, "endpoints must differ"));
        }
        let same_cluster = p.cluster_of(i) == p.cluster_of(j);
        let present = adj[i * n + j] != 0;
        match action.kind {
            ActionKind::AddWithin => {
                if !same_cluster {
                    return Err(invalid(index, "addition endpoints span two clusters"));
                }
                if present {
                    return Err(invalid(index, "edge already present"));
                }
                adj[i * n + j] = 1;
                adj[j * n + i] = 1;
                r_plus += 1;
            }
            ActionKind::RemoveAcross => {
                if same_cluster {
                    return Err(invalid(index, "removal endpoints share a cluster"));
                }
                if !present {
                    return Err(invalid(index, "edge not present"));
                }
                adj[i * n + j] = 0;
                adj[j * n + i] = 0;
                r_minus += 1;
            }
        }
    }

    let log = AdversaryLog {
        r_plus,
        r_minus,
        actions: actions.to_vec(),
    };
    Ok((Graph::from_adj(n, adj), log))
}

/// Random monotone perturbation: every absent within-cluster pair is added
/// independently with probability `add_prob`, every present cross-cluster
/// edge removed with probability `remove_prob`. Pairs are visited in fixed
/// lexicographic order, so the outcome is deterministic per seed.
///
/// # Panics
///
/// Panics if either probability lies outside [0, 1] or if the partition does
/// not match the graph.
pub fn random_monotone(
    g: &Graph,
    p: &Partition,
    add_prob: f64,
    remove_prob: f64,
    seed: u64,
) -> (Graph, AdversaryLog) {
    assert!(
        (0.0..=1.0).contains(&add_prob) && (0.0..=1.0).contains(&remove_prob),
        "probabilities must lie in [0, 1]"
    );
    assert_eq!(g.n(), p.n(), "partition must match the graph");
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut actions = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let same_cluster = p.cluster_of(i) == p.cluster_of(j);
            let present = g.has_edge(i, j);
            if same_cluster && !present && rng.gen_bool(add_prob) {
                actions.push(AdversaryAction {
                    kind: ActionKind::AddWithin,
                    endpoints: (i, j),
                });
            } else if !same_cluster && present && rng.gen_bool(remove_prob) {
                actions.push(AdversaryAction {
                    kind: ActionKind::RemoveAcross,
                    endpoints: (i, j),
                });
            }
        }
    }
    apply_actions(g, p, &actions).expect("generated actions are valid by construction")
}

/// Check the exact objective identity A(G_adv)•Y* = A(G)•Y* + 2·r_plus.
///
/// Both inner products count within-cluster edges twice, so the comparison
/// is pure integer arithmetic. Removals never move the planted objective
/// because cross edges carry weight zero in Y*.
pub fn objective_shift_check(g: &Graph, g_adv: &Graph, log: &AdversaryLog, p: &Partition) -> bool {
    let within = |graph: &Graph| -> i64 {
        graph
            .edges()
            .iter()
            .filter(|&&(a, b)| p.cluster_of(a) == p.cluster_of(b))
            .count() as i64
    };
    2 * (within(g_adv) - within(g)) == 2 * log.r_plus as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::{certify, DEFAULT_STRICT_GAP};
    use crate::model::{Instance, SbmParams};
    use crate::relax::{build, detect_integrality, RelaxationKind, DEFAULT_TOL_ENTRY};
    use crate::rng::derive_seed;
    use crate::sdp::{solve, SolveSettings};

    fn two_triangles() -> (Graph, Partition) {
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5)]).unwrap();
        (g, Partition::contiguous(2, 3))
    }

    fn sample(alpha: f64, beta: f64, k: usize, m: usize, seed: u64) -> Instance {
        Instance::sample(SbmParams {
            alpha,
            beta,
            k,
            m,
            seed,
        })
        .unwrap()
    }

    #[test]
    fn empty_action_list_changes_nothing() {
        let (g, p) = two_triangles();
        let (adv, log) = apply_actions(&g, &p, &[]).unwrap();
        assert_eq!(adv.edges(), g.edges());
        assert_eq!(log.r_plus, 0);
        assert_eq!(log.r_minus, 0);
    }

    #[test]
    fn removing_on_cliques_is_invalid() {
        let (g, p) = two_triangles();
        let err = apply_actions(
            &g,
            &p,
            &[AdversaryAction {
                kind: ActionKind::RemoveAcross,
                endpoints: (0, 3),
            }],
        )
        .unwrap_err();
        match err {
            Error::InvalidAction { index, .. } => assert_eq!(index, 0),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn valid_actions_shift_edge_counts() {
        let inst = sample(2.0, 1.0, 3, 6, 17);
        let (g, p) = (&inst.graph, &inst.partition);
        let n = g.n();

        let mut actions = Vec::new();
        'outer_add: for i in 0..n {
            for j in (i + 1)..n {
                if p.cluster_of(i) == p.cluster_of(j) && !g.has_edge(i, j) {
                    actions.push(AdversaryAction {
                        kind: ActionKind::AddWithin,
                        endpoints: (i, j),
                    });
                    if actions.len() == 5 {
                        break 'outer_add;
                    }
                }
            }
        }
        let mut removals = 0;
        'outer_rm: for i in 0..n {
            for j in (i + 1)..n {
                if p.cluster_of(i) != p.cluster_of(j) && g.has_edge(i, j) {
                    actions.push(AdversaryAction {
                        kind: ActionKind::RemoveAcross,
                        endpoints: (i, j),
                    });
                    removals += 1;
                    if removals == 3 {
                        break 'outer_rm;
                    }
                }
            }
        }
        assert_eq!(actions.len(), 8, "instance too sparse for the scenario");

        let count = |graph: &Graph, same: bool| {
            graph
                .edges()
                .iter()
                .filter(|&&(a, b)| (p.cluster_of(a) == p.cluster_of(b)) == same)
                .count()
        };
        let (adv, log) = apply_actions(g, p, &actions).unwrap();
        assert_eq!(log.r_plus, 5);
        assert_eq!(log.r_minus, 3);
        assert_eq!(count(&adv, true), count(g, true) + 5);
        assert_eq!(count(&adv, false), count(g, false) - 3);
    }

    #[test]
    fn sequential_validation_catches_stale_state() {
        let (g, p) = two_triangles();
        // One clique edge is missing so the first addition succeeds; the
        // repeat must fail against the evolved state.
        let g2 = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (3, 5), (4, 5)]).unwrap();
        let actions = vec![
            AdversaryAction {
                kind: ActionKind::AddWithin,
                endpoints: (0, 2),
            },
            AdversaryAction {
                kind: ActionKind::AddWithin,
                endpoints: (0, 2),
            },
        ];
        let err = apply_actions(&g2, &p, &actions).unwrap_err();
        match err {
            Error::InvalidAction { index, reason } => {
                assert_eq!(index, 1);
                assert!(reason.contains("already present"));
            }
            other => panic!("unexpected error {other:?}"),
        }

        let cross_add = apply_actions(
            &g,
            &p,
            &[AdversaryAction {
                kind: ActionKind::AddWithin,
                endpoints: (0, 3),
            }],
        );
        assert!(cross_add.is_err());
        let self_loop = apply_actions(
            &g,
            &p,
            &[AdversaryAction {
                kind: ActionKind::AddWithin,
                endpoints: (2, 2),
            }],
        );
        assert!(self_loop.is_err());
    }

    #[test]
    fn zero_probabilities_are_identity() {
        let inst = sample(2.0, 1.0, 2, 8, 3);
        let (adv, log) = random_monotone(&inst.graph, &inst.partition, 0.0, 0.0, 99);
        assert_eq!(adv.edges(), inst.graph.edges());
        assert!(log.actions.is_empty());
    }

    #[test]
    fn extreme_probabilities_leave_disjoint_cliques() {
        let inst = sample(2.0, 1.0, 2, 6, 5);
        let (adv, _) = random_monotone(&inst.graph, &inst.partition, 1.0, 1.0, 4);
        let p = &inst.partition;
        for i in 0..adv.n() {
            for j in 0..adv.n() {
                if i == j {
                    continue;
                }
                let same = p.cluster_of(i) == p.cluster_of(j);
                assert_eq!(adv.has_edge(i, j), same, "pair ({i},{j})");
            }
        }
    }

    #[test]
    fn random_adversary_is_deterministic() {
        let inst = sample(2.0, 1.0, 3, 5, 8);
        let (a1, log1) = random_monotone(&inst.graph, &inst.partition, 0.2, 0.2, 123);
        let (a2, log2) = random_monotone(&inst.graph, &inst.partition, 0.2, 0.2, 123);
        assert_eq!(log1, log2);
        assert_eq!(a1.edges(), a2.edges());
    }

    #[test]
    fn objective_shift_matches_additions() {
        let inst = sample(2.0, 1.0, 3, 6, 17);
        let (g, p) = (&inst.graph, &inst.partition);

        let (same, log_empty) = apply_actions(g, p, &[]).unwrap();
        assert!(objective_shift_check(g, &same, &log_empty, p));

        // Four additions and whatever removals are available.
        let mut actions = Vec::new();
        let n = g.n();
        for i in 0..n {
            for j in (i + 1)..n {
                if p.cluster_of(i) == p.cluster_of(j)
                    && !g.has_edge(i, j)
                    && actions.len() < 4
                {
                    actions.push(AdversaryAction {
                        kind: ActionKind::AddWithin,
                        endpoints: (i, j),
                    });
                }
            }
        }
        assert_eq!(actions.len(), 4);
        for i in 0..n {
            for j in (i + 1)..n {
                if p.cluster_of(i) != p.cluster_of(j) && g.has_edge(i, j) && actions.len() < 7 {
                    actions.push(AdversaryAction {
                        kind: ActionKind::RemoveAcross,
                        endpoints: (i, j),
                    });
                }
            }
        }
        let (adv, log) = apply_actions(g, p, &actions).unwrap();
        assert!(objective_shift_check(g, &adv, &log, p));
        let shift = 2 * (adv
            .edges()
            .iter()
            .filter(|&&(a, b)| p.cluster_of(a) == p.cluster_of(b))
            .count() as i64
            - g.edges()
                .iter()
                .filter(|&&(a, b)| p.cluster_of(a) == p.cluster_of(b))
                .count() as i64);
        assert_eq!(shift, 8);

        // Removals only: the planted objective must not move.
        let removals: Vec<AdversaryAction> = actions
            .iter()
            .copied()
            .filter(|a| a.kind == ActionKind::RemoveAcross)
            .collect();
        let (adv_rm, log_rm) = apply_actions(g, p, &removals).unwrap();
        assert!(objective_shift_check(g, &adv_rm, &log_rm, p));
        assert_eq!(log_rm.r_plus, 0);
    }

    #[test]
    fn planted_point_stays_feasible_after_perturbation() {
        let inst = sample(4.0, 0.5, 2, 10, 1);
        let (adv, _) = random_monotone(&inst.graph, &inst.partition, 0.3, 0.3, 7);
        // The feasible set of the row-sum relaxation does not involve A, so
        // the problem built on the perturbed graph accepts the planted point.
        let problem = build(RelaxationKind::BalancedRowSum, &adv, 2).unwrap();
        let star = crate::model::planted_matrix(&inst.partition);
        for i in 0..star.rows() {
            assert_eq!(star[(i, i)], problem.diag_value);
        }
        for sum in star.row_sums() {
            assert_eq!(Some(sum), problem.row_sum);
        }
    }

    #[test]
    fn recovery_survives_random_monotone_attacks() {
        let mut tested = 0;
        for seed in 0..20 {
            let inst = sample(4.0, 0.5, 2, 10, seed);
            let report = certify(&inst.graph, &inst.partition, DEFAULT_STRICT_GAP).unwrap();
            if !report.unique {
                continue;
            }
            for attack in 0..2 {
                let attack_seed = derive_seed(1000, seed, attack);
                let (adv, _) =
                    random_monotone(&inst.graph, &inst.partition, 0.25, 0.25, attack_seed);
                let problem = build(RelaxationKind::BalancedRowSum, &adv, 2).unwrap();
                let out = solve(&problem, &SolveSettings::default()).unwrap();
                let verdict = detect_integrality(
                    &out.y,
                    RelaxationKind::BalancedRowSum,
                    2,
                    DEFAULT_TOL_ENTRY,
                );
                assert!(
                    verdict.is_integral
                        && verdict.recovered.as_ref() == Some(&inst.partition),
                    "seed {seed} attack {attack}: recovery lost under monotone adversary"
                );
                // The certificate may be rebuilt on the perturbed graph as a
                // secondary check; it often still verifies but is not the
                // object the robustness argument relies on, so no assertion.
                let _ = certify(&adv, &inst.partition, DEFAULT_STRICT_GAP);
                tested += 1;
            }
        }
        assert!(tested >= 30, "only {tested} perturbation pairs exercised");
    }

    #[test]
    fn log_serializes_round_trip() {
        let log = AdversaryLog {
            r_plus: 1,
            r_minus: 1,
            actions: vec![
                AdversaryAction {
                    kind: ActionKind::AddWithin,
                    endpoints: (0, 1),
                },
                AdversaryAction {
                    kind: ActionKind::RemoveAcross,
                    endpoints: (0, 4),
                },
            ],
        };
        let json = serde_json::to_string(&log).unwrap();
        assert!(json.contains("\"add_within\""));
        assert!(json.contains("\"endpoints\":[0,4]"));
        let back: AdversaryLog = serde_json::from_str(&json).unwrap();
        assert_eq!(back, log);
    }
}
