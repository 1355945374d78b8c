//! Intervals, bifurcations, discriminants and A-interventions.
//!
//! An A-intervention rewrites the causal measure so that the event `A`
//! happens with certainty while every transition that does not leave a
//! critical bifurcation keeps its probability. [`intervene`] performs the
//! rewrite locally at the critical bifurcations; [`intervention_table`]
//! evaluates the defining gain equation for every pair of realisations and
//! serves as an independent check of the former.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::events::{canonical_representation, overlaps, require_representable, Event};
use crate::tree::{CausalMeasure, CausalSpace, NodeId, Prob, RealisationTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Closedness {
    /// `[U, V]`
    Closed,
    /// `[U, V)`
    LeftClosed,
    /// `(U, V]`
    RightClosed,
    /// `(U, V)`
    Open,
}

/// The realisations between `lower` and `upper`, ordered from `lower` down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lower: NodeId,
    pub upper: NodeId,
    pub closedness: Closedness,
    pub members: Vec<NodeId>,
}

impl Interval {
    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, id: NodeId) -> bool {
        self.members.contains(&id)
    }
}

/// The interval from `u` to `v`. Empty unless `u` precedes or equals `v`.
pub fn interval(space: &CausalSpace, u: NodeId, v: NodeId, closedness: Closedness) -> Interval {
    let mut members = space.tree().path(u, v).unwrap_or_default();
    if !members.is_empty() {
        if matches!(closedness, Closedness::LeftClosed | Closedness::Open) {
            members.retain(|&m| m != v);
        }
        if matches!(closedness, Closedness::RightClosed | Closedness::Open) {
            members.retain(|&m| m != u);
        }
    }
    Interval {
        lower: u,
        upper: v,
        closedness,
        members,
    }
}

fn check_pair(space: &CausalSpace, i1: &Interval, i2: &Interval) -> Result<()> {
    let tree = space.tree();
    if i1.closedness != Closedness::Closed || i2.closedness != Closedness::Closed {
        return Err(Error::PreconditionViolated("intervals must be closed".into()));
    }
    if i1.lower != i2.lower {
        return Err(Error::PreconditionViolated(format!(
            "intervals start at `{}` and `{}`",
            tree.name(i1.lower),
            tree.name(i2.lower)
        )));
    }
    if i1.is_empty() || i2.is_empty() {
        return Err(Error::PreconditionViolated("intervals must be non-empty".into()));
    }
    if !space.incomparable(i1.upper, i2.upper) {
        return Err(Error::PreconditionViolated(format!(
            "endpoints `{}` and `{}` overlap",
            tree.name(i1.upper),
            tree.name(i2.upper)
        )));
    }
    Ok(())
}

/// The deepest realisation shared by two closed intervals with a common start
/// and disjoint ends.
pub fn bifurcation(space: &CausalSpace, i1: &Interval, i2: &Interval) -> Result<NodeId> {
    check_pair(space, i1, i2)?;
    let shared = i1.members.iter().zip(&i2.members).take_while(|(a, b)| a == b).count();
    Ok(i1.members[shared - 1])
}

/// The first realisation of `i1` that is not in `i2`.
pub fn discriminant(space: &CausalSpace, i1: &Interval, i2: &Interval) -> Result<NodeId> {
    check_pair(space, i1, i2)?;
    let shared = i1.members.iter().zip(&i2.members).take_while(|(a, b)| a == b).count();
    Ok(i1.members[shared])
}

/// A-bifurcations together with their A-discriminants and the discriminant mass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BifurcationMap {
    pub(crate) entries: BTreeMap<NodeId, (BTreeSet<NodeId>, Prob)>,
}

impl BifurcationMap {
    pub(crate) fn compute(space: &CausalSpace, a: &Event) -> Result<Self> {
        require_representable(space, a)?;
        let tree = space.tree();
        let ov = overlaps(tree, a);
        let mut entries = BTreeMap::new();
        for id in tree.node_ids() {
            let kids = tree.node(id).children();
            let is_bifurcation = kids.iter().any(|&c1| {
                ov[c1.index()].meets() && kids.iter().any(|&c2| c2 != c1 && ov[c2.index()].meets_complement())
            });
            if is_bifurcation {
                let disc: BTreeSet<NodeId> = kids.iter().copied().filter(|c| ov[c.index()].meets()).collect();
                let mass = disc.iter().map(|&c| space.edge(c)).sum();
                entries.insert(id, (disc, mass));
            }
        }
        Ok(BifurcationMap { entries })
    }

    fn is_critical(mass: &Prob) -> bool {
        *mass < Prob::one()
    }
}

/// All A-bifurcations: nodes with one child meeting `a` and another child
/// meeting its complement. Empty for `a = ∅` and `a = Ω`.
pub fn a_bifurcations(space: &CausalSpace, a: &Event) -> Result<BTreeSet<NodeId>> {
    Ok(BifurcationMap::compute(space, a)?.entries.into_keys().collect())
}

/// The children of `lambda` that meet `a`.
pub fn a_discriminants(space: &CausalSpace, a: &Event, lambda: NodeId) -> Result<BTreeSet<NodeId>> {
    BifurcationMap::compute(space, a)?
        .entries
        .remove(&lambda)
        .map(|(d, _)| d)
        .ok_or_else(|| Error::NotABifurcation(space.name(lambda).to_string()))
}

/// A-bifurcations whose discriminants carry total probability below 1.
pub fn critical_bifurcations(space: &CausalSpace, a: &Event) -> Result<BTreeSet<NodeId>> {
    Ok(BifurcationMap::compute(space, a)?
        .entries
        .into_iter()
        .filter(|(_, (_, m))| BifurcationMap::is_critical(m))
        .map(|(id, _)| id)
        .collect())
}

/// Discriminant masses of every A-bifurcation, for repeated gain queries.
#[derive(Clone, Debug)]
pub struct Gains<'s> {
    space: &'s CausalSpace,
    map: BifurcationMap,
}

impl<'s> Gains<'s> {
    pub fn new(space: &'s CausalSpace, a: &Event) -> Result<Self> {
        Ok(Gains {
            space,
            map: BifurcationMap::compute(space, a)?,
        })
    }

    /// Product of discriminant masses of the A-bifurcations on the path from
    /// `u` to `v`, `v` itself excluded.
    pub fn gain(&self, u: NodeId, v: NodeId) -> Result<Prob> {
        self.product(u, v, false)
    }

    /// The same product over critical bifurcations only.
    pub fn critical_gain(&self, u: NodeId, v: NodeId) -> Result<Prob> {
        self.product(u, v, true)
    }

    fn product(&self, u: NodeId, v: NodeId, critical_only: bool) -> Result<Prob> {
        let tree = self.space.tree();
        let path = tree.path(u, v).ok_or_else(|| {
            Error::PreconditionViolated(format!("`{}` does not precede `{}`", tree.name(u), tree.name(v)))
        })?;
        let mut g = Prob::one();
        // The endpoint's own factor is excluded: its discriminants lie below `v`.
        for id in &path[..path.len() - 1] {
            if let Some((_, mass)) = self.map.entries.get(id) {
                if !critical_only || BifurcationMap::is_critical(mass) {
                    g *= mass;
                }
            }
        }
        Ok(g)
    }
}

/// Gain of the interval from `u` to `v`: the product of discriminant masses
/// of the A-bifurcations on the way, `v` itself excluded.
pub fn gain(space: &CausalSpace, a: &Event, u: NodeId, v: NodeId) -> Result<Prob> {
    Gains::new(space, a)?.gain(u, v)
}

/// The same product taken over critical bifurcations only.
pub fn critical_gain(space: &CausalSpace, a: &Event, u: NodeId, v: NodeId) -> Result<Prob> {
    Gains::new(space, a)?.critical_gain(u, v)
}

/// Outcome of an A-intervention.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InterventionResult {
    pub event: Event,
    /// The original tree under the intervened measure.
    pub space: CausalSpace,
    pub bifurcations: BTreeSet<NodeId>,
    pub discriminants: BTreeMap<NodeId, BTreeSet<NodeId>>,
    pub critical: BTreeSet<NodeId>,
}

impl InterventionResult {
    pub fn measure(&self) -> &CausalMeasure {
        self.space.measure()
    }

    /// Edges whose probability was changed, as `(child, old, new)`.
    pub fn changed_edges<'a>(
        &'a self,
        original: &'a CausalSpace,
    ) -> impl Iterator<Item = (NodeId, &'a Prob, &'a Prob)> {
        original
            .tree()
            .node_ids()
            .map(move |id| (id, original.edge(id), self.space.edge(id)))
            .filter(|(_, old, new)| old != new)
    }
}

/// Rewrites the measure so that `a` occurs with certainty: at every critical
/// bifurcation, edges into children disjoint from `a` drop to zero and edges
/// into A-discriminants are divided by their total mass.
pub fn intervene(space: &CausalSpace, a: &Event) -> Result<InterventionResult> {
    if a.is_empty() {
        return Err(Error::TrivialEvent);
    }
    let map = BifurcationMap::compute(space, a)?;
    if let Some((id, _)) = map.entries.iter().find(|(_, (_, m))| m.is_zero()) {
        return Err(Error::NullDiscriminants(space.name(*id).to_string()));
    }
    let tree = space.tree();
    let mut measure = space.measure().clone();
    let mut critical = BTreeSet::new();
    for (&lambda, (disc, mass)) in &map.entries {
        if !BifurcationMap::is_critical(mass) {
            continue;
        }
        critical.insert(lambda);
        for &c in tree.node(lambda).children() {
            let p = if disc.contains(&c) {
                space.edge(c) / mass
            } else {
                Prob::zero()
            };
            measure.set_edge(c, p);
        }
    }
    Ok(InterventionResult {
        event: a.clone(),
        space: space.with_measure(measure),
        bifurcations: map.entries.keys().copied().collect(),
        discriminants: map.entries.into_iter().map(|(k, (d, _))| (k, d)).collect(),
        critical,
    })
}

/// Full table of transition probabilities `P(v | u)`, row `u`, column `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitionTable {
    n: usize,
    values: Vec<Prob>,
}

impl TransitionTable {
    pub fn get(&self, u: NodeId, v: NodeId) -> &Prob {
        &self.values[u.index() * self.n + v.index()]
    }

    pub fn size(&self) -> usize {
        self.n
    }
}

/// Realisation order recovered from outcome sets alone.
struct SetOrder<'t> {
    tree: &'t RealisationTree,
    /// `contains[u][v]`: `v ⊆ u`.
    contains: Vec<Vec<bool>>,
    /// Smallest strict superset of each node.
    cover: Vec<Option<usize>>,
}

impl<'t> SetOrder<'t> {
    fn new(tree: &'t RealisationTree) -> Result<Self> {
        let n = tree.node_count();
        let sets: Vec<_> = tree.node_ids().map(|id| tree.node(id).outcomes()).collect();
        let distinct: BTreeSet<_> = sets.iter().collect();
        if distinct.len() != n {
            return Err(Error::PreconditionViolated(
                "two realisations share one outcome set".into(),
            ));
        }
        let contains: Vec<Vec<bool>> = (0..n)
            .map(|u| (0..n).map(|v| sets[v].is_subset(sets[u])).collect())
            .collect();
        let cover = (0..n)
            .map(|v| {
                (0..n)
                    .filter(|&u| u != v && contains[u][v])
                    .min_by_key(|&u| sets[u].len())
            })
            .collect();
        Ok(SetOrder { tree, contains, cover })
    }

    /// Members of `[u, v]` from `v` upwards; `None` unless `v ⊆ u`.
    fn chain_up(&self, u: usize, v: usize) -> Option<Vec<usize>> {
        if !self.contains[u][v] {
            return None;
        }
        let mut chain = vec![v];
        let mut cur = v;
        while cur != u {
            cur = self.cover[cur]?;
            chain.push(cur);
        }
        Some(chain)
    }

    fn disjoint(&self, u: usize, v: usize) -> bool {
        self.tree
            .node(NodeId(u))
            .outcomes()
            .is_disjoint(self.tree.node(NodeId(v)).outcomes())
    }
}

/// A-bifurcations and A-discriminants following the interval definitions:
/// bifurcations of `[Ω, a]` and `[Ω, b]` over parts `a` of a representation
/// of the event and `b` of its complement; discriminants as the top of
/// `[Ω, a] \ [Ω, λ]` for parts `a` below `λ`.
fn bifurcations_by_definition(
    space: &CausalSpace,
    order: &SetOrder<'_>,
    a: &Event,
) -> Result<BTreeMap<usize, BTreeSet<usize>>> {
    let tree = space.tree();
    let root = tree.root().index();
    let rep_a = canonical_representation(space, a)?;
    let rep_c = canonical_representation(space, &a.complement(tree))?;
    let mut out: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &pa in &rep_a.parts {
        let path_a = order.chain_up(root, pa.index()).expect("root contains every node");
        for &pc in &rep_c.parts {
            let path_c = order.chain_up(root, pc.index()).expect("root contains every node");
            // Deepest common member = smallest set in the intersection.
            let lambda = path_a
                .iter()
                .copied()
                .filter(|m| path_c.contains(m))
                .min_by_key(|&m| tree.node(NodeId(m)).outcomes().len())
                .expect("both paths contain the root");
            out.entry(lambda).or_default();
        }
    }
    for (&lambda, disc) in out.iter_mut() {
        for &pa in &rep_a.parts {
            let pa = pa.index();
            if pa == lambda || !order.contains[lambda][pa] {
                continue;
            }
            let upper = order.chain_up(root, pa).expect("root contains every node");
            let xi = upper
                .iter()
                .copied()
                .filter(|&m| !order.contains[m][lambda])
                .max_by_key(|&m| tree.node(NodeId(m)).outcomes().len())
                .expect("a part strictly below lambda");
            disc.insert(xi);
        }
    }
    Ok(out)
}

/// A-bifurcations mapped to their A-discriminants, derived from intervals
/// over outcome-set inclusion rather than from the tree's child lists.
pub fn definitional_bifurcations(space: &CausalSpace, a: &Event) -> Result<BTreeMap<NodeId, BTreeSet<NodeId>>> {
    require_representable(space, a)?;
    let order = SetOrder::new(space.tree())?;
    Ok(bifurcations_by_definition(space, &order, a)?
        .into_iter()
        .map(|(l, d)| (NodeId(l), d.into_iter().map(NodeId).collect()))
        .collect())
}

/// Evaluates the intervention equation `P'(V|U) · G(U,V) = P(V|U)` for every
/// pair of realisations, using only outcome-set inclusion for the order.
///
/// Pairs with `V ⊇ U` get 1 and disjoint pairs 0. For `V ⊊ U` meeting `a`
/// the equation is solved with the gain over `[U, V)`; for `V` disjoint from
/// `a` the value is 0 when `[U, V]` holds an A-bifurcation and `P(V|U)`
/// otherwise.
pub fn intervention_table(space: &CausalSpace, a: &Event) -> Result<TransitionTable> {
    if a.is_empty() {
        return Err(Error::TrivialEvent);
    }
    require_representable(space, a)?;
    let tree = space.tree();
    let n = tree.node_count();
    let order = SetOrder::new(tree)?;
    let bif = bifurcations_by_definition(space, &order, a)?;
    let disc_mass: BTreeMap<usize, Prob> = bif
        .iter()
        .map(|(&l, d)| (l, d.iter().map(|&x| space.edge(NodeId(x))).sum()))
        .collect();
    if let Some((&l, _)) = disc_mass.iter().find(|(_, m)| m.is_zero()) {
        return Err(Error::NullDiscriminants(tree.name(NodeId(l)).to_string()));
    }

    let meets_a = |v: usize| tree.node(NodeId(v)).outcomes().iter().any(|o| a.contains(*o));
    let mut values = Vec::with_capacity(n * n);
    for u in 0..n {
        for v in 0..n {
            let value = if order.contains[v][u] {
                Prob::one()
            } else if order.disjoint(u, v) {
                Prob::zero()
            } else {
                let chain = order.chain_up(u, v).expect("v is strictly inside u");
                // Chain runs v, ..., u; edge probabilities of the original measure.
                let base: Prob = chain[..chain.len() - 1]
                    .iter()
                    .map(|&m| space.edge(NodeId(m)))
                    .product();
                if meets_a(v) {
                    let g: Prob = chain[1..].iter().filter_map(|m| disc_mass.get(m)).product();
                    base / g
                } else if chain.iter().any(|m| bif.contains_key(m)) {
                    Prob::zero()
                } else {
                    base
                }
            };
            values.push(value);
        }
    }
    Ok(TransitionTable { n, values })
}

/// The intervened measure read off the definitional table at parent-child pairs.
pub fn oracle_intervene(space: &CausalSpace, a: &Event) -> Result<CausalMeasure> {
    let table = intervention_table(space, a)?;
    let tree = space.tree();
    let edges = tree
        .node_ids()
        .map(|id| match tree.node(id).parent() {
            None => Prob::one(),
            Some(p) => table.get(p, id).clone(),
        })
        .collect();
    Ok(CausalMeasure::from_edges(edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::events::prob;
    use crate::tree::ratio;

    fn ids(space: &CausalSpace, names: &[&str]) -> BTreeSet<NodeId> {
        names.iter().map(|n| space.node_id(n).unwrap()).collect()
    }

    #[test]
    fn interval_fixtures() {
        let doc = corpus::load(corpus::URN);
        let s = &doc.space;
        let n = |x| s.node_id(x).unwrap();
        let names = |i: &Interval| i.members.iter().map(|&m| s.name(m)).collect::<Vec<_>>();
        assert_eq!(
            names(&interval(s, n("S0"), n("S12"), Closedness::Closed)),
            ["S0", "S2", "S5", "S12"]
        );
        assert_eq!(
            names(&interval(s, n("S0"), n("S12"), Closedness::LeftClosed)),
            ["S0", "S2", "S5"]
        );
        assert_eq!(
            names(&interval(s, n("S0"), n("S12"), Closedness::RightClosed)),
            ["S2", "S5", "S12"]
        );
        assert_eq!(names(&interval(s, n("S0"), n("S12"), Closedness::Open)), ["S2", "S5"]);
        assert!(interval(s, n("S12"), n("S0"), Closedness::Closed).is_empty());
        assert_eq!(names(&interval(s, n("S3"), n("S3"), Closedness::Closed)), ["S3"]);
    }

    #[test]
    fn bifurcation_and_discriminants() {
        let doc = corpus::load(corpus::URN);
        let s = &doc.space;
        let n = |x| s.node_id(x).unwrap();
        let i7 = interval(s, n("S0"), n("S7"), Closedness::Closed);
        let i9 = interval(s, n("S0"), n("S9"), Closedness::Closed);
        assert_eq!(bifurcation(s, &i7, &i9).unwrap(), n("S1"));
        assert_eq!(discriminant(s, &i7, &i9).unwrap(), n("S3"));
        assert_eq!(discriminant(s, &i9, &i7).unwrap(), n("S4"));

        let i8 = interval(s, n("S0"), n("S8"), Closedness::Closed);
        assert_eq!(bifurcation(s, &i7, &i8).unwrap(), n("S3"));
        assert_eq!(discriminant(s, &i7, &i8).unwrap(), n("S7"));

        let open = interval(s, n("S0"), n("S9"), Closedness::Open);
        assert!(matches!(
            bifurcation(s, &i7, &open),
            Err(Error::PreconditionViolated(_))
        ));
        let nested = interval(s, n("S0"), n("S3"), Closedness::Closed);
        assert!(matches!(
            bifurcation(s, &i7, &nested),
            Err(Error::PreconditionViolated(_))
        ));
        let other_start = interval(s, n("S1"), n("S9"), Closedness::Closed);
        assert!(matches!(
            discriminant(s, &i7, &other_start),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn event_bifurcations() {
        let doc = corpus::load(corpus::BIFURCATIONS);
        let s = &doc.space;
        let a = doc.event("A").unwrap();
        assert_eq!(a_bifurcations(s, a).unwrap(), ids(s, &["S0", "S1", "S2", "S3", "S4"]));
        assert_eq!(
            a_discriminants(s, a, s.node_id("S0").unwrap()).unwrap(),
            ids(s, &["S1", "S2"])
        );
        assert_eq!(
            a_discriminants(s, a, s.node_id("S2").unwrap()).unwrap(),
            ids(s, &["S5"])
        );
        assert_eq!(
            a_discriminants(s, a, s.node_id("S5").unwrap()).unwrap_err(),
            Error::NotABifurcation("S5".into())
        );
    }

    #[test]
    fn trivial_events() {
        let doc = corpus::load(corpus::URN);
        let s = &doc.space;
        let omega = Event::full(s.tree());
        assert!(a_bifurcations(s, &omega).unwrap().is_empty());
        assert!(a_bifurcations(s, &Event::empty()).unwrap().is_empty());
        let r = intervene(s, &omega).unwrap();
        assert_eq!(r.space, *s);
        assert_eq!(oracle_intervene(s, &omega).unwrap(), *s.measure());
        assert_eq!(intervene(s, &Event::empty()).unwrap_err(), Error::TrivialEvent);
    }

    #[test]
    fn single_leaf_of_two() {
        let mut b = crate::tree::SpaceBuilder::new();
        b.outcome("x").outcome("y").root("r").leaf("a", "x").leaf("b", "y");
        b.edge("r", "a", ratio(1, 3)).edge("r", "b", ratio(2, 3));
        let s = b.build().unwrap();
        let a = Event::from_labels(s.tree(), ["x"]).unwrap();
        assert_eq!(a_bifurcations(&s, &a).unwrap(), ids(&s, &["r"]));
        assert_eq!(a_discriminants(&s, &a, s.root()).unwrap(), ids(&s, &["a"]));
        let r = intervene(&s, &a).unwrap();
        assert!(r.space.edge(s.node_id("a").unwrap()).is_one());
        assert!(r.space.edge(s.node_id("b").unwrap()).is_zero());
    }

    #[test]
    fn zero_mass_branches_are_not_critical() {
        let mut b = crate::tree::SpaceBuilder::new();
        b.outcome("x").outcome("y").root("r").leaf("a", "x").leaf("b", "y");
        b.edge("r", "a", ratio(1, 1)).edge("r", "b", ratio(0, 1));
        let s = b.build().unwrap();
        let a = Event::from_labels(s.tree(), ["x"]).unwrap();
        assert_eq!(a_bifurcations(&s, &a).unwrap().len(), 1);
        assert!(critical_bifurcations(&s, &a).unwrap().is_empty());

        let not_a = Event::from_labels(s.tree(), ["y"]).unwrap();
        assert_eq!(intervene(&s, &not_a).unwrap_err(), Error::NullDiscriminants("r".into()));
        assert_eq!(
            oracle_intervene(&s, &not_a).unwrap_err(),
            Error::NullDiscriminants("r".into())
        );
    }

    #[test]
    fn urn_pick_left() {
        let doc = corpus::load(corpus::URN);
        let s = &doc.space;
        let left = doc.event("left").unwrap();
        let r = intervene(s, left).unwrap();
        assert_eq!(r.critical, ids(s, &["S1", "S2"]));
        assert_eq!(r.bifurcations, ids(s, &["S0", "S1", "S2"]));
        let masses: Vec<_> = r.space.leaf_masses().into_values().collect();
        let expected: Vec<_> = [(3, 8), (1, 8), (0, 1), (0, 1), (1, 8), (3, 8), (0, 1), (0, 1)]
            .iter()
            .map(|&(a, b)| ratio(a, b))
            .collect();
        assert_eq!(masses, expected);
        assert!(prob(&r.space, left, s.root()).unwrap().is_one());
        assert_eq!(oracle_intervene(s, left).unwrap(), *r.measure());

        // Direct product of discriminant sums along the path: only S1 contributes.
        let leaf = s.node_id("S7").unwrap();
        assert_eq!(gain(s, left, s.root(), leaf).unwrap(), ratio(3, 4));
        assert_eq!(critical_gain(s, left, s.root(), leaf).unwrap(), ratio(3, 4));
        assert!(gain(s, left, s.root(), s.root()).unwrap().is_one());
        assert!(gain(s, left, leaf, s.root()).is_err());
    }

    #[test]
    fn barometer_low() {
        let doc = corpus::load(corpus::BAROMETER);
        let s = &doc.space;
        let low = doc.event("low").unwrap();
        assert_eq!(critical_bifurcations(s, low).unwrap(), ids(s, &["S2", "S3", "S4"]));
        let r = intervene(s, low).unwrap();
        assert!(prob(&r.space, low, s.root()).unwrap().is_one());
        let changed: Vec<_> = r.changed_edges(s).map(|(c, _, _)| s.name(c)).collect();
        assert_eq!(changed, ["S7", "S8", "S9", "S10", "S5", "S6"]);
    }
}
