//! Events of the generated σ-algebra and their representations by realisations.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::tree::{CausalSpace, LeafMasses, NodeId, OutcomeId, Prob, RealisationTree};

/// Largest number of leaves for which [`sigma_algebra`] will enumerate.
pub const SIGMA_LEAF_LIMIT: usize = 20;

/// A set of outcomes.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Event {
    members: BTreeSet<OutcomeId>,
}

impl Event {
    pub fn empty() -> Self {
        Event::default()
    }

    /// The sure event Ω.
    pub fn full(tree: &RealisationTree) -> Self {
        Event {
            members: tree.outcome_ids().collect(),
        }
    }

    pub fn from_ids(ids: impl IntoIterator<Item = OutcomeId>) -> Self {
        Event {
            members: ids.into_iter().collect(),
        }
    }

    pub fn from_labels<S: AsRef<str>>(tree: &RealisationTree, labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let members = labels
            .into_iter()
            .map(|l| tree.outcome_id(l.as_ref()))
            .collect::<Result<_>>()?;
        Ok(Event { members })
    }

    /// The realisation `node` viewed as an event.
    pub fn of_node(tree: &RealisationTree, node: NodeId) -> Self {
        Event {
            members: tree.node(node).outcomes().clone(),
        }
    }

    pub fn members(&self) -> &BTreeSet<OutcomeId> {
        &self.members
    }

    pub fn contains(&self, o: OutcomeId) -> bool {
        self.members.contains(&o)
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_full(&self, tree: &RealisationTree) -> bool {
        self.members.len() == tree.outcome_count()
    }

    pub fn complement(&self, tree: &RealisationTree) -> Event {
        Event {
            members: tree.outcome_ids().filter(|o| !self.members.contains(o)).collect(),
        }
    }

    pub fn union(&self, other: &Event) -> Event {
        Event {
            members: self.members.union(&other.members).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &Event) -> Event {
        Event {
            members: self.members.intersection(&other.members).copied().collect(),
        }
    }

    pub fn is_subset(&self, other: &Event) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn labels<'t>(&self, tree: &'t RealisationTree) -> Vec<&'t str> {
        self.members.iter().map(|&o| tree.outcome_label(o)).collect()
    }

    /// `{a, b, c}` using outcome labels.
    pub fn display(&self, tree: &RealisationTree) -> String {
        format!("{{{}}}", self.labels(tree).join(", "))
    }
}

/// How a realisation meets an event.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Overlap {
    Disjoint,
    Partial,
    Inside,
}

impl Overlap {
    pub(crate) fn meets(self) -> bool {
        self != Overlap::Disjoint
    }

    pub(crate) fn meets_complement(self) -> bool {
        self != Overlap::Inside
    }
}

pub(crate) fn overlaps(tree: &RealisationTree, a: &Event) -> Vec<Overlap> {
    // Hit counts bottom-up; the root is counted directly since it is Ω even
    // when its children fail to cover it.
    let n = tree.node_count();
    let mut hits = vec![0usize; n];
    for id in tree.node_ids().collect::<Vec<_>>().into_iter().rev() {
        let node = tree.node(id);
        hits[id.index()] = if node.is_leaf() || id == tree.root() {
            node.outcomes().iter().filter(|o| a.contains(**o)).count()
        } else {
            node.children().iter().map(|c| hits[c.index()]).sum()
        };
    }
    tree.node_ids()
        .map(|id| match hits[id.index()] {
            0 => Overlap::Disjoint,
            h if h == tree.node(id).outcomes().len() => Overlap::Inside,
            _ => Overlap::Partial,
        })
        .collect()
}

/// A set of pairwise-disjoint realisations.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Representation {
    pub parts: BTreeSet<NodeId>,
}

impl Representation {
    pub fn union(&self, tree: &RealisationTree) -> Event {
        Event::from_ids(self.parts.iter().flat_map(|&p| tree.node(p).outcomes().iter().copied()))
    }

    /// Parts pairwise disjoint and covering exactly `a`.
    pub fn represents(&self, tree: &RealisationTree, a: &Event) -> bool {
        let parts: Vec<_> = self.parts.iter().copied().collect();
        for (i, &p) in parts.iter().enumerate() {
            for &q in &parts[i + 1..] {
                if !tree.node(p).outcomes().is_disjoint(tree.node(q).outcomes()) {
                    return false;
                }
            }
        }
        self.union(tree) == *a
    }

    pub fn names<'t>(&self, tree: &'t RealisationTree) -> Vec<&'t str> {
        self.parts.iter().map(|&p| tree.name(p)).collect()
    }
}

fn check_known(tree: &RealisationTree, a: &Event) -> Result<()> {
    match a.members().iter().find(|o| o.index() >= tree.outcome_count()) {
        Some(o) => Err(Error::UnknownOutcome(format!("#{}", o.index()))),
        None => Ok(()),
    }
}

/// True when `a` is a union of realisations. Always the case when every leaf
/// carries a single outcome.
pub fn is_representable(space: &CausalSpace, a: &Event) -> bool {
    let tree = space.tree();
    let ov = overlaps(tree, a);
    tree.leaves().all(|l| ov[l.index()] != Overlap::Partial)
}

pub(crate) fn require_representable(space: &CausalSpace, a: &Event) -> Result<()> {
    check_known(space.tree(), a)?;
    if is_representable(space, a) {
        Ok(())
    } else {
        Err(Error::NotRepresentable(a.display(space.tree())))
    }
}

/// The maximal realisations contained in `a`: a node is a part iff it lies
/// inside `a` and its parent does not.
pub fn canonical_representation(space: &CausalSpace, a: &Event) -> Result<Representation> {
    require_representable(space, a)?;
    let tree = space.tree();
    let ov = overlaps(tree, a);
    let mut parts = BTreeSet::new();
    let mut stack = vec![tree.root()];
    while let Some(id) = stack.pop() {
        match ov[id.index()] {
            Overlap::Inside => {
                parts.insert(id);
            }
            Overlap::Partial => stack.extend(tree.node(id).children().iter().copied()),
            Overlap::Disjoint => {}
        }
    }
    Ok(Representation { parts })
}

/// Every representation of `a`; empty when `a` is not representable.
pub fn all_representations(space: &CausalSpace, a: &Event) -> Result<Vec<Representation>> {
    check_known(space.tree(), a)?;
    let tree = space.tree();
    let ov = overlaps(tree, a);

    fn reps(tree: &RealisationTree, ov: &[Overlap], id: NodeId) -> Vec<BTreeSet<NodeId>> {
        let node = tree.node(id);
        let refine = |out: &mut Vec<BTreeSet<NodeId>>| {
            let mut acc = vec![BTreeSet::new()];
            for &c in node.children() {
                let sub = reps(tree, ov, c);
                let mut next = Vec::with_capacity(acc.len() * sub.len());
                for prefix in &acc {
                    for s in &sub {
                        let mut joined = prefix.clone();
                        joined.extend(s.iter().copied());
                        next.push(joined);
                    }
                }
                acc = next;
            }
            out.extend(acc);
        };
        let mut out = Vec::new();
        match ov[id.index()] {
            Overlap::Disjoint => out.push(BTreeSet::new()),
            Overlap::Inside => {
                out.push(BTreeSet::from([id]));
                if !node.is_leaf() {
                    refine(&mut out);
                }
            }
            Overlap::Partial => {
                if !node.is_leaf() {
                    refine(&mut out);
                }
            }
        }
        out
    }

    Ok(reps(tree, &ov, tree.root())
        .into_iter()
        .map(|parts| Representation { parts })
        .collect())
}

/// σ(R) as all unions of leaves, in bitmask order over the leaves.
pub fn sigma_algebra(space: &CausalSpace) -> Result<Vec<Event>> {
    let tree = space.tree();
    let leaves: Vec<NodeId> = tree.leaves().collect();
    if leaves.len() > SIGMA_LEAF_LIMIT {
        return Err(Error::TooManyLeaves {
            leaves: leaves.len(),
            limit: SIGMA_LEAF_LIMIT,
        });
    }
    Ok((0u32..1 << leaves.len())
        .map(|mask| {
            Event::from_ids(
                leaves
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .flat_map(|(_, &l)| tree.node(l).outcomes().iter().copied()),
            )
        })
        .collect())
}

/// `P(a | given)`: the sum of `P(L | given)` over leaves `L` under `given` inside `a`.
pub fn prob(space: &CausalSpace, a: &Event, given: NodeId) -> Result<Prob> {
    require_representable(space, a)?;
    let tree = space.tree();
    let ov = overlaps(tree, a);
    // Mass of `a` within each subtree, accumulated bottom-up.
    let mut mass = vec![Prob::zero(); tree.node_count()];
    let range: Vec<NodeId> = tree.subtree(given).collect();
    for &id in range.iter().rev() {
        let node = tree.node(id);
        mass[id.index()] = if node.is_leaf() {
            if ov[id.index()] == Overlap::Inside {
                Prob::one()
            } else {
                Prob::zero()
            }
        } else {
            node.children().iter().map(|&c| space.edge(c) * &mass[c.index()]).sum()
        };
    }
    Ok(std::mem::take(&mut mass[given.index()]))
}

/// Leaf masses conditioned on `b`: leaves outside `b` are dropped and the
/// rest renormalised by `P(b)`. The measure itself is untouched.
pub fn condition(space: &CausalSpace, b: &Event) -> Result<LeafMasses> {
    let pb = prob(space, b, space.root())?;
    if pb.is_zero() {
        return Err(Error::ConditionOnNullEvent);
    }
    let tree = space.tree();
    Ok(space
        .leaf_masses()
        .into_iter()
        .filter(|(l, _)| tree.node(*l).outcomes().iter().all(|o| b.contains(*o)))
        .map(|(l, m)| (l, m / &pb))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::tree::ratio;

    fn names(space: &CausalSpace, r: &Representation) -> Vec<String> {
        r.names(space.tree()).into_iter().map(String::from).collect()
    }

    #[test]
    fn canonical_representations_on_the_coarse_realisation_set() {
        let doc = corpus::load(corpus::REALISATION_SET);
        let s = &doc.space;
        let t = s.tree();
        let a1 = Event::from_labels(t, ["2", "5", "6"]).unwrap();
        let r = canonical_representation(s, &a1).unwrap();
        let sets: Vec<_> = r
            .parts
            .iter()
            .map(|&p| Event::of_node(t, p).labels(t).join(","))
            .collect();
        assert_eq!(sets, ["2", "5,6"]);
        assert_eq!(all_representations(s, &a1).unwrap().len(), 1);

        let a2 = Event::from_labels(t, ["3", "4"]).unwrap();
        let r = canonical_representation(s, &a2).unwrap();
        assert_eq!(r.parts.len(), 1);
        assert_eq!(Event::of_node(t, *r.parts.iter().next().unwrap()), a2);
        let all = all_representations(s, &a2).unwrap();
        assert_eq!(all.len(), 2);
        assert!(all.iter().all(|r| r.represents(t, &a2)));

        let a3 = Event::from_labels(t, ["4", "5"]).unwrap();
        assert!(!is_representable(s, &a3));
        assert!(all_representations(s, &a3).unwrap().is_empty());
        assert!(matches!(
            canonical_representation(s, &a3),
            Err(Error::NotRepresentable(_))
        ));
        assert!(matches!(prob(s, &a3, s.root()), Err(Error::NotRepresentable(_))));
    }

    #[test]
    fn sure_and_empty_events() {
        let doc = corpus::load(corpus::URN);
        let s = &doc.space;
        let omega = Event::full(s.tree());
        assert_eq!(names(s, &canonical_representation(s, &omega).unwrap()), ["S0"]);
        let empty = Event::empty();
        assert!(canonical_representation(s, &empty).unwrap().parts.is_empty());
        let all = all_representations(s, &empty).unwrap();
        assert_eq!(all, vec![Representation::default()]);
        for u in s.tree().node_ids() {
            assert!(prob(s, &omega, u).unwrap().is_one());
        }
    }

    #[test]
    fn unknown_outcome() {
        let doc = corpus::load(corpus::URN);
        assert_eq!(
            Event::from_labels(doc.space.tree(), ["nope"]).unwrap_err(),
            Error::UnknownOutcome("nope".into())
        );
    }

    #[test]
    fn sigma_algebra_sizes() {
        let one = corpus::load(corpus::SINGLE);
        let events = sigma_algebra(&one.space).unwrap();
        assert_eq!(events, vec![Event::empty(), Event::full(one.space.tree())]);

        let urn = corpus::load(corpus::URN);
        assert_eq!(sigma_algebra(&urn.space).unwrap().len(), 256);
    }

    #[test]
    fn urn_black_marginal() {
        let doc = corpus::load(corpus::URN);
        let black = doc.event("black").unwrap();
        assert_eq!(prob(&doc.space, black, doc.space.root()).unwrap(), ratio(5, 8));
    }

    #[test]
    fn conditioning() {
        let doc = corpus::load(corpus::URN);
        let s = &doc.space;
        assert_eq!(condition(s, &Event::full(s.tree())).unwrap(), s.leaf_masses());
        assert_eq!(condition(s, &Event::empty()).unwrap_err(), Error::ConditionOnNullEvent);
    }
}
