use std::collections::BTreeSet;

use ctree::interventions::{bifurcation, discriminant, interval, intervene, oracle_intervene, Closedness};
use ctree::oracle::{random_document, random_event, random_space, seeded, GenParams};
use ctree::{critical_bifurcations, prob, BeliefState, CausalSpace, Error, NodeId};
use proptest::prelude::*;

fn space_and_event(seed: u64) -> (CausalSpace, ctree::Event) {
    let mut rng = seeded(seed);
    let s = random_space(&mut rng, &GenParams::default());
    let a = random_event(&mut rng, &s);
    (s, a)
}

/// Smallest realisation containing both, found by outcome sets alone.
fn set_lca(s: &CausalSpace, a: NodeId, b: NodeId) -> NodeId {
    let t = s.tree();
    t.node_ids()
        .filter(|&n| {
            let set = t.node(n).outcomes();
            set.is_superset(t.node(a).outcomes()) && set.is_superset(t.node(b).outcomes())
        })
        .min_by_key(|&n| t.node(n).outcomes().len())
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn intervene_matches_the_definition(seed in any::<u64>()) {
        let (s, a) = space_and_event(seed);
        match (intervene(&s, &a), oracle_intervene(&s, &a)) {
            (Ok(r), Ok(m)) => {
                prop_assert_eq!(r.measure(), &m);
                prop_assert!(prob(&r.space, &a, s.root()).unwrap() == ctree::ratio(1, 1));
            }
            (Err(e1), Err(e2)) => prop_assert_eq!(e1, e2),
            (x, y) => prop_assert!(false, "seed {seed}: {x:?} vs {y:?}"),
        }
    }

    #[test]
    fn intervening_twice_changes_nothing(seed in any::<u64>()) {
        let (s, a) = space_and_event(seed);
        if let Ok(r) = intervene(&s, &a) {
            prop_assert!(critical_bifurcations(&r.space, &a).unwrap().is_empty());
            let again = intervene(&r.space, &a).unwrap();
            prop_assert_eq!(&again.space, &r.space);
        }
    }

    #[test]
    fn bifurcations_of_interval_pairs(seed in any::<u64>(), pick in any::<(usize, usize)>()) {
        let (s, _) = space_and_event(seed);
        let t = s.tree();
        let n = t.node_count();
        let v1 = t.node_ids().nth(pick.0 % n).unwrap();
        let v2 = t.node_ids().nth(pick.1 % n).unwrap();
        let i1 = interval(&s, s.root(), v1, Closedness::Closed);
        let i2 = interval(&s, s.root(), v2, Closedness::Closed);
        if s.incomparable(v1, v2) {
            let lambda = bifurcation(&s, &i1, &i2).unwrap();
            prop_assert_eq!(lambda, set_lca(&s, v1, v2));
            prop_assert_eq!(bifurcation(&s, &i2, &i1).unwrap(), lambda);
            let (d1, d2) = (discriminant(&s, &i1, &i2).unwrap(), discriminant(&s, &i2, &i1).unwrap());
            prop_assert_eq!(t.node(d1).parent(), Some(lambda));
            prop_assert_eq!(t.node(d2).parent(), Some(lambda));
            prop_assert!(d1 != d2 && i1.contains(d1) && !i2.contains(d1) && i2.contains(d2));
        } else {
            prop_assert!(matches!(bifurcation(&s, &i1, &i2), Err(Error::PreconditionViolated(_))));
        }
    }

    #[test]
    fn acting_leaves_earlier_variables_alone(seed in any::<u64>()) {
        let doc = random_document(&mut seeded(seed), &GenParams::default());
        let s = &doc.space;
        let fresh = BeliefState::new(s.clone());
        for x in &doc.variables {
            for value in x.codomain() {
                let Ok(acted) = fresh.act(x, value) else { continue };
                let a = x.preimage(s, value).unwrap();
                let critical = critical_bifurcations(s, &a).unwrap();
                for y in &doc.variables {
                    let assigned: BTreeSet<NodeId> = y.assignments().iter().map(|(n, _)| *n).collect();
                    let settled = critical
                        .iter()
                        .all(|&l| assigned.iter().any(|&n| s.tree().is_ancestor_or_self(n, l)));
                    if settled {
                        prop_assert_eq!(acted.posterior(y).unwrap(), fresh.posterior(y).unwrap());
                    }
                }
                prop_assert!(acted.posterior(x).unwrap().get(value) == Some(&ctree::ratio(1, 1)));
            }
        }
    }

    #[test]
    fn replaying_the_log_reproduces_the_belief(seed in any::<u64>(), steps in prop::collection::vec((any::<bool>(), any::<usize>(), any::<usize>()), 0..5)) {
        let doc = random_document(&mut seeded(seed), &GenParams::default());
        prop_assume!(!doc.variables.is_empty());
        let mut b = BeliefState::new(doc.space.clone());
        for (act, vi, xi) in steps {
            let rv = &doc.variables[vi % doc.variables.len()];
            let value = &rv.codomain()[xi % rv.codomain().len()];
            let next = if act { b.act(rv, value) } else { b.observe(rv, value) };
            if let Ok(next) = next {
                b = next;
            }
        }
        let replayed = BeliefState::replay(doc.space.clone(), &doc.variables, b.log()).unwrap();
        prop_assert_eq!(&replayed, &b);
        for rv in &doc.variables {
            prop_assert_eq!(replayed.posterior(rv).unwrap(), b.posterior(rv).unwrap());
        }
    }
}
