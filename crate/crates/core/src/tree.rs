//! Finite realisation trees and causal measures.
//!
//! A [`CausalSpace`] couples a [`RealisationTree`] (the nested realisations of
//! an experiment, rooted at the sure event) with a [`CausalMeasure`] holding
//! one exact transition probability per edge. The tree is shared behind an
//! [`Arc`], so spaces that differ only in their measure (for instance an
//! intervened space and its original) share the structure.
//!
//! Nodes are stored in depth-first pre-order with children in insertion order,
//! which makes ancestry a range check and gives every traversal a stable order.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact probability value.
pub type Prob = BigRational;

/// Probability mass of every leaf, keyed by leaf node.
pub type LeafMasses = BTreeMap<NodeId, Prob>;

/// Builds the rational `numer/denom`.
pub fn ratio(numer: i64, denom: i64) -> Prob {
    BigRational::new(numer.into(), denom.into())
}

/// Formats a probability as `num/den` in lowest terms (`1/1`, `0/1` included).
pub fn format_prob(p: &Prob) -> String {
    format!("{}/{}", p.numer(), p.denom())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub(crate) usize);

impl NodeId {
    /// Position of the node in depth-first pre-order.
    pub fn index(self) -> usize {
        self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OutcomeId(pub(crate) usize);

impl OutcomeId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A realisation: a node of the tree together with the outcomes it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    name: String,
    parent: Option<NodeId>,
    children: Vec<NodeId>,
    leaf_outcomes: Vec<OutcomeId>,
    outcomes: BTreeSet<OutcomeId>,
    depth: usize,
    subtree_end: usize,
}

impl Node {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn parent(&self) -> Option<NodeId> {
        self.parent
    }

    pub fn children(&self) -> &[NodeId] {
        &self.children
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Outcomes declared on a leaf, in declaration order. Empty for internal nodes.
    pub fn leaf_outcomes(&self) -> &[OutcomeId] {
        &self.leaf_outcomes
    }

    /// The realisation as a subset of the sample space.
    pub fn outcomes(&self) -> &BTreeSet<OutcomeId> {
        &self.outcomes
    }

    pub fn depth(&self) -> usize {
        self.depth
    }
}

/// The order-theoretic relation between two realisations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Equal,
    /// The first node strictly contains the second.
    Precedes,
    /// The first node is strictly contained in the second.
    Follows,
    Incomparable,
}

/// Sample space plus the tree of realisations over it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealisationTree {
    outcomes: Vec<String>,
    outcome_index: HashMap<String, OutcomeId>,
    nodes: Vec<Node>,
    node_index: HashMap<String, NodeId>,
}

impl RealisationTree {
    pub fn outcome_count(&self) -> usize {
        self.outcomes.len()
    }

    pub fn outcome_ids(&self) -> impl Iterator<Item = OutcomeId> + '_ {
        (0..self.outcomes.len()).map(OutcomeId)
    }

    pub fn outcome_label(&self, id: OutcomeId) -> &str {
        &self.outcomes[id.0]
    }

    pub fn outcome_id(&self, label: &str) -> Result<OutcomeId> {
        self.outcome_index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownOutcome(label.to_string()))
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn root(&self) -> NodeId {
        NodeId(0)
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.0]
    }

    pub fn node_id(&self, name: &str) -> Result<NodeId> {
        self.node_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownNode(name.to_string()))
    }

    pub fn name(&self, id: NodeId) -> &str {
        &self.nodes[id.0].name
    }

    /// All nodes in depth-first pre-order.
    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).map(NodeId)
    }

    pub fn leaves(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.node_ids().filter(|&id| self.node(id).is_leaf())
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves().count()
    }

    /// True when `ancestor` is `node` or lies above it.
    pub fn is_ancestor_or_self(&self, ancestor: NodeId, node: NodeId) -> bool {
        ancestor.0 <= node.0 && node.0 < self.nodes[ancestor.0].subtree_end
    }

    /// Nodes of the subtree rooted at `id`, `id` included, in pre-order.
    pub fn subtree(&self, id: NodeId) -> impl Iterator<Item = NodeId> {
        (id.0..self.nodes[id.0].subtree_end).map(NodeId)
    }

    /// The path `from, ..., to`; `None` unless `from` is an ancestor-or-self of `to`.
    pub fn path(&self, from: NodeId, to: NodeId) -> Option<Vec<NodeId>> {
        if !self.is_ancestor_or_self(from, to) {
            return None;
        }
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            cur = self.nodes[cur.0].parent.expect("ancestor chain reaches `from`");
            path.push(cur);
        }
        path.reverse();
        Some(path)
    }

    pub fn relation(&self, u: NodeId, v: NodeId) -> Order {
        if u == v {
            Order::Equal
        } else if self.is_ancestor_or_self(u, v) {
            Order::Precedes
        } else if self.is_ancestor_or_self(v, u) {
            Order::Follows
        } else {
            Order::Incomparable
        }
    }
}

/// One transition probability per edge, indexed by the child node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CausalMeasure {
    edges: Vec<Prob>,
}

impl CausalMeasure {
    /// Probability of the edge entering `child`. The root's entry is 1.
    pub fn edge(&self, child: NodeId) -> &Prob {
        &self.edges[child.0]
    }

    pub(crate) fn from_edges(edges: Vec<Prob>) -> Self {
        CausalMeasure { edges }
    }

    pub(crate) fn set_edge(&mut self, child: NodeId, p: Prob) {
        self.edges[child.0] = p;
    }
}

/// A finite causal space: outcomes, realisation tree, causal measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CausalSpace {
    tree: Arc<RealisationTree>,
    measure: CausalMeasure,
}

impl CausalSpace {
    pub fn tree(&self) -> &RealisationTree {
        &self.tree
    }

    pub fn measure(&self) -> &CausalMeasure {
        &self.measure
    }

    /// The same tree under a different measure.
    pub fn with_measure(&self, measure: CausalMeasure) -> CausalSpace {
        assert_eq!(
            measure.edges.len(),
            self.tree.nodes.len(),
            "measure does not belong to this tree"
        );
        CausalSpace {
            tree: Arc::clone(&self.tree),
            measure,
        }
    }

    pub fn root(&self) -> NodeId {
        self.tree.root()
    }

    pub fn node_id(&self, name: &str) -> Result<NodeId> {
        self.tree.node_id(name)
    }

    pub fn name(&self, id: NodeId) -> &str {
        self.tree.name(id)
    }

    pub fn edge(&self, child: NodeId) -> &Prob {
        self.measure.edge(child)
    }

    /// `P(v | u)`: 1 when `v` precedes or equals `u`, 0 when they are
    /// incomparable, and the product of edge probabilities from `u` down to
    /// `v` when `v` follows `u`.
    pub fn transition_prob(&self, u: NodeId, v: NodeId) -> Prob {
        if self.tree.is_ancestor_or_self(v, u) {
            return Prob::one();
        }
        if !self.tree.is_ancestor_or_self(u, v) {
            return Prob::zero();
        }
        let mut p = Prob::one();
        let mut cur = v;
        while cur != u {
            p *= self.measure.edge(cur);
            cur = self.tree.node(cur).parent.expect("u is an ancestor of v");
        }
        p
    }

    /// Strict precedence: `u` is a proper ancestor of `v`.
    pub fn precedes(&self, u: NodeId, v: NodeId) -> bool {
        self.tree.relation(u, v) == Order::Precedes
    }

    pub fn incomparable(&self, u: NodeId, v: NodeId) -> bool {
        self.tree.relation(u, v) == Order::Incomparable
    }

    /// `P(leaf | root)` for every leaf.
    pub fn leaf_masses(&self) -> LeafMasses {
        let mut mass = vec![Prob::zero(); self.tree.nodes.len()];
        let mut out = LeafMasses::new();
        for id in self.tree.node_ids() {
            let m = match self.tree.node(id).parent {
                None => Prob::one(),
                Some(p) => &mass[p.0] * self.measure.edge(id),
            };
            if self.tree.node(id).is_leaf() {
                out.insert(id, m.clone());
            }
            mass[id.0] = m;
        }
        out
    }
}

/// Declaration of one node for [`SpaceBuilder`]. A node with outcomes is a leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeSpec {
    pub id: String,
    pub outcomes: Vec<String>,
}

impl NodeSpec {
    pub fn internal(id: impl Into<String>) -> Self {
        NodeSpec {
            id: id.into(),
            outcomes: Vec::new(),
        }
    }

    pub fn leaf(id: impl Into<String>, outcome: impl Into<String>) -> Self {
        NodeSpec {
            id: id.into(),
            outcomes: vec![outcome.into()],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeSpec {
    pub parent: String,
    pub child: String,
    pub prob: Prob,
}

/// Incremental construction of a [`CausalSpace`].
///
/// The root is named separately from node declarations; a root that is never
/// declared is an internal node. [`SpaceBuilder::build`] rejects anything that
/// fails the axioms, while [`SpaceBuilder::build_lenient`] only enforces what is
/// needed to have a well-formed tree and leaves axiom checking to
/// [`validate_axioms`].
#[derive(Clone, Debug, Default)]
pub struct SpaceBuilder {
    outcomes: Vec<String>,
    root: Vec<String>,
    nodes: Vec<NodeSpec>,
    edges: Vec<EdgeSpec>,
}

impl SpaceBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn outcome(&mut self, label: impl Into<String>) -> &mut Self {
        self.outcomes.push(label.into());
        self
    }

    pub fn root(&mut self, id: impl Into<String>) -> &mut Self {
        self.root.push(id.into());
        self
    }

    pub fn node(&mut self, spec: NodeSpec) -> &mut Self {
        self.nodes.push(spec);
        self
    }

    pub fn internal(&mut self, id: impl Into<String>) -> &mut Self {
        self.node(NodeSpec::internal(id))
    }

    pub fn leaf(&mut self, id: impl Into<String>, outcome: impl Into<String>) -> &mut Self {
        self.node(NodeSpec::leaf(id, outcome))
    }

    pub fn edge(&mut self, parent: impl Into<String>, child: impl Into<String>, prob: Prob) -> &mut Self {
        self.edges.push(EdgeSpec {
            parent: parent.into(),
            child: child.into(),
            prob,
        });
        self
    }

    /// Builds and validates; the first failing axiom becomes the error.
    pub fn build(&self) -> Result<CausalSpace> {
        let space = self.build_lenient()?;
        validate_axioms(&space).into_result()?;
        Ok(space)
    }

    /// Builds a structurally sound tree without checking the axioms.
    pub fn build_lenient(&self) -> Result<CausalSpace> {
        let mut outcome_index = HashMap::new();
        for (i, label) in self.outcomes.iter().enumerate() {
            if outcome_index.insert(label.clone(), OutcomeId(i)).is_some() {
                return Err(Error::DuplicateId(label.clone()));
            }
        }

        let root_name = match self.root.as_slice() {
            [] => return Err(Error::MissingRoot),
            [r] => r.clone(),
            [a, b, ..] => return Err(Error::MultipleRoots(a.clone(), b.clone())),
        };

        // Declaration order, root first if it was never declared explicitly.
        let mut specs: Vec<NodeSpec> = Vec::with_capacity(self.nodes.len() + 1);
        let mut spec_index: HashMap<&str, usize> = HashMap::new();
        if !self.nodes.iter().any(|n| n.id == root_name) {
            specs.push(NodeSpec::internal(root_name.clone()));
        }
        specs.extend(self.nodes.iter().cloned());
        for (i, spec) in specs.iter().enumerate() {
            if spec_index.insert(spec.id.as_str(), i).is_some() {
                return Err(Error::DuplicateId(spec.id.clone()));
            }
        }

        let mut children: Vec<Vec<(usize, Prob)>> = vec![Vec::new(); specs.len()];
        let mut has_parent = vec![false; specs.len()];
        for e in &self.edges {
            let p = *spec_index
                .get(e.parent.as_str())
                .ok_or_else(|| Error::UnknownNode(e.parent.clone()))?;
            let c = *spec_index
                .get(e.child.as_str())
                .ok_or_else(|| Error::UnknownNode(e.child.clone()))?;
            if e.child == root_name {
                return Err(Error::RootHasParent(root_name));
            }
            if has_parent[c] {
                return Err(Error::MultipleParents(e.child.clone()));
            }
            has_parent[c] = true;
            children[p].push((c, e.prob.clone()));
        }

        for (i, spec) in specs.iter().enumerate() {
            match (spec.outcomes.is_empty(), children[i].is_empty()) {
                (true, true) => return Err(Error::LeafWithoutOutcome(spec.id.clone())),
                (false, false) => return Err(Error::LeafWithChildren(spec.id.clone())),
                _ => {}
            }
        }

        // Pre-order layout.
        let root_spec = spec_index[root_name.as_str()];
        let mut order: Vec<(usize, Option<usize>, Prob, usize)> = Vec::with_capacity(specs.len());
        let mut stack = vec![(root_spec, None, Prob::one(), 0usize)];
        let mut visited = vec![false; specs.len()];
        while let Some((s, parent, p, depth)) = stack.pop() {
            visited[s] = true;
            let pos = order.len();
            order.push((s, parent, p, depth));
            for (c, cp) in children[s].iter().rev() {
                stack.push((*c, Some(pos), cp.clone(), depth + 1));
            }
        }
        if let Some(i) = visited.iter().position(|v| !v) {
            return Err(Error::OrphanNode(specs[i].id.clone()));
        }

        let mut nodes: Vec<Node> = Vec::with_capacity(order.len());
        let mut edges = Vec::with_capacity(order.len());
        let mut node_index = HashMap::new();
        for (pos, (s, parent, p, depth)) in order.iter().enumerate() {
            let spec = &specs[*s];
            let mut leaf_outcomes = Vec::with_capacity(spec.outcomes.len());
            for label in &spec.outcomes {
                let id = *outcome_index
                    .get(label)
                    .ok_or_else(|| Error::UnknownOutcome(label.clone()))?;
                if leaf_outcomes.contains(&id) {
                    return Err(Error::DuplicateId(label.clone()));
                }
                leaf_outcomes.push(id);
            }
            node_index.insert(spec.id.clone(), NodeId(pos));
            nodes.push(Node {
                name: spec.id.clone(),
                parent: parent.map(NodeId),
                children: Vec::new(),
                outcomes: leaf_outcomes.iter().copied().collect(),
                leaf_outcomes,
                depth: *depth,
                subtree_end: pos + 1,
            });
            if let Some(pp) = parent {
                nodes[*pp].children.push(NodeId(pos));
            }
            edges.push(p.clone());
        }

        // Bottom-up: subtree extents and outcome sets.
        for pos in (0..nodes.len()).rev() {
            if let Some(NodeId(pp)) = nodes[pos].parent {
                let end = nodes[pos].subtree_end;
                let set = nodes[pos].outcomes.clone();
                let parent = &mut nodes[pp];
                parent.subtree_end = parent.subtree_end.max(end);
                parent.outcomes.extend(set);
            }
        }
        // The root is the sure event.
        if !nodes[0].is_leaf() {
            nodes[0].outcomes = (0..self.outcomes.len()).map(OutcomeId).collect();
        }

        let tree = RealisationTree {
            outcomes: self.outcomes.clone(),
            outcome_index,
            nodes,
            node_index,
        };
        Ok(CausalSpace {
            tree: Arc::new(tree),
            measure: CausalMeasure::from_edges(edges),
        })
    }
}

/// Builds and validates a space from flat declarations.
pub fn build_space<S: AsRef<str>>(
    outcomes: &[S],
    root: &str,
    nodes: &[NodeSpec],
    edges: &[EdgeSpec],
) -> Result<CausalSpace> {
    let mut b = SpaceBuilder::new();
    for o in outcomes {
        b.outcome(o.as_ref());
    }
    b.root(root);
    for n in nodes {
        b.node(n.clone());
    }
    for e in edges {
        b.edges.push(e.clone());
    }
    b.build()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    R1,
    R2,
    R3,
    R4,
    /// Every transition probability lies in [0, 1].
    Range,
    C1,
    C2,
    C3,
    C4,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::R1 => "R1 sure event is a realisation",
            Axiom::R2 => "R2 realisations form a tree",
            Axiom::R3 => "R3 tree is complete",
            Axiom::R4 => "R4 branches have start and end points",
            Axiom::Range => "P  probabilities lie in [0,1]",
            Axiom::C1 => "C1 past is certain",
            Axiom::C2 => "C2 incomparable realisations are impossible",
            Axiom::C3 => "C3 sum rule",
            Axiom::C4 => "C4 product rule",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomStatus {
    Pass,
    /// Holds trivially; the note says why.
    Vacuous(String),
    Fail(Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub status: AxiomStatus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<AxiomCheck>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| !matches!(c.status, AxiomStatus::Fail(_)))
    }

    pub fn status(&self, axiom: Axiom) -> &AxiomStatus {
        &self
            .checks
            .iter()
            .find(|c| c.axiom == axiom)
            .expect("every axiom is reported")
            .status
    }

    pub fn failures(&self) -> impl Iterator<Item = (Axiom, &Error)> {
        self.checks.iter().filter_map(|c| match &c.status {
            AxiomStatus::Fail(e) => Some((c.axiom, e)),
            _ => None,
        })
    }

    /// The first failure as an error, if any.
    pub fn into_result(self) -> Result<()> {
        for c in self.checks {
            if let AxiomStatus::Fail(e) = c.status {
                return Err(e);
            }
        }
        Ok(())
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.status {
                AxiomStatus::Pass => writeln!(f, "pass     {}", c.axiom)?,
                AxiomStatus::Vacuous(note) => writeln!(f, "vacuous  {} ({note})", c.axiom)?,
                AxiomStatus::Fail(e) => writeln!(f, "FAIL     {}: {e}", c.axiom)?,
            }
        }
        Ok(())
    }
}

fn axiom_fail(axiom: Axiom, witness: String) -> AxiomStatus {
    AxiomStatus::Fail(Error::AxiomViolation {
        axiom: format!("{axiom:?}"),
        witness,
    })
}

/// Checks R1-R4 on the realisation tree and C1-C4 on the measure.
pub fn validate_axioms(space: &CausalSpace) -> ValidationReport {
    let tree = space.tree();
    let root = tree.root();
    let all: BTreeSet<OutcomeId> = tree.outcome_ids().collect();
    let mut checks = Vec::with_capacity(9);

    let r1 = if tree.node(root).outcomes == all {
        AxiomStatus::Pass
    } else {
        let missing = all
            .difference(&tree.node(root).outcomes)
            .next()
            .map(|&o| tree.outcome_label(o).to_string())
            .unwrap_or_default();
        axiom_fail(
            Axiom::R1,
            format!("root `{}` does not contain outcome `{missing}`", tree.name(root)),
        )
    };
    checks.push(AxiomCheck {
        axiom: Axiom::R1,
        status: r1,
    });

    // Siblings are disjoint; an only child would repeat its parent's set.
    let mut r2 = AxiomStatus::Pass;
    'siblings: for id in tree.node_ids() {
        let kids = tree.node(id).children();
        if let [only] = kids {
            r2 = axiom_fail(
                Axiom::R2,
                format!(
                    "`{}` is the only child of `{}` and repeats its realisation",
                    tree.name(*only),
                    tree.name(id)
                ),
            );
            break;
        }
        for (i, &a) in kids.iter().enumerate() {
            for &b in &kids[i + 1..] {
                if let Some(o) = tree.node(a).outcomes.intersection(&tree.node(b).outcomes).next() {
                    r2 = axiom_fail(
                        Axiom::R2,
                        format!(
                            "siblings `{}` and `{}` share outcome `{}`",
                            tree.name(a),
                            tree.name(b),
                            tree.outcome_label(*o)
                        ),
                    );
                    break 'siblings;
                }
            }
        }
    }
    checks.push(AxiomCheck {
        axiom: Axiom::R2,
        status: r2,
    });

    let mut r3 = AxiomStatus::Pass;
    for id in tree.node_ids() {
        let node = tree.node(id);
        if node.is_leaf() {
            continue;
        }
        let covered: BTreeSet<OutcomeId> = node
            .children()
            .iter()
            .flat_map(|&c| tree.node(c).outcomes.iter().copied())
            .collect();
        if let Some(o) = node.outcomes.difference(&covered).next() {
            r3 = axiom_fail(
                Axiom::R3,
                format!(
                    "children of `{}` do not cover outcome `{}`",
                    node.name(),
                    tree.outcome_label(*o)
                ),
            );
            break;
        }
    }
    checks.push(AxiomCheck {
        axiom: Axiom::R3,
        status: r3,
    });

    checks.push(AxiomCheck {
        axiom: Axiom::R4,
        status: AxiomStatus::Vacuous(
            "finite tree: every monotone sequence of realisations is eventually constant".into(),
        ),
    });

    let mut range = AxiomStatus::Pass;
    for id in tree.node_ids().skip(1) {
        let p = space.edge(id);
        if *p < Prob::zero() || *p > Prob::one() {
            let parent = tree.node(id).parent().expect("non-root");
            range = AxiomStatus::Fail(Error::ProbOutOfRange {
                parent: tree.name(parent).to_string(),
                child: tree.name(id).to_string(),
                prob: format_prob(p),
            });
            break;
        }
    }
    checks.push(AxiomCheck {
        axiom: Axiom::Range,
        status: range,
    });

    // C1: every ancestor is certain given its descendants.
    let mut c1 = AxiomStatus::Pass;
    'c1: for id in tree.node_ids() {
        let mut cur = Some(id);
        while let Some(a) = cur {
            if !space.transition_prob(id, a).is_one() {
                c1 = axiom_fail(Axiom::C1, format!("P({} | {}) != 1", tree.name(a), tree.name(id)));
                break 'c1;
            }
            cur = tree.node(a).parent();
        }
    }
    checks.push(AxiomCheck {
        axiom: Axiom::C1,
        status: c1,
    });

    let mut c2 = AxiomStatus::Pass;
    'c2: for u in tree.node_ids() {
        for v in tree.node_ids() {
            if tree.relation(u, v) == Order::Incomparable && !space.transition_prob(u, v).is_zero() {
                c2 = axiom_fail(Axiom::C2, format!("P({} | {}) != 0", tree.name(v), tree.name(u)));
                break 'c2;
            }
        }
    }
    checks.push(AxiomCheck {
        axiom: Axiom::C2,
        status: c2,
    });

    // C3: local sums, and the leaf partition under every node.
    let mut c3 = AxiomStatus::Pass;
    for id in tree.node_ids() {
        let node = tree.node(id);
        if node.is_leaf() {
            continue;
        }
        let sum: Prob = node.children().iter().map(|&c| space.edge(c)).sum();
        if !sum.is_one() {
            c3 = AxiomStatus::Fail(Error::EdgeSumNotOne {
                node: node.name().to_string(),
                sum: format_prob(&sum),
            });
            break;
        }
    }
    for id in tree.node_ids() {
        let node = tree.node(id);
        if c3 != AxiomStatus::Pass {
            break;
        }
        if node.is_leaf() {
            continue;
        }
        let leaf_sum: Prob = tree
            .subtree(id)
            .filter(|&l| tree.node(l).is_leaf())
            .map(|l| space.transition_prob(id, l))
            .sum();
        if !leaf_sum.is_one() {
            c3 = axiom_fail(
                Axiom::C3,
                format!(
                    "leaves under `{}` carry total probability {}",
                    node.name(),
                    format_prob(&leaf_sum)
                ),
            );
            break;
        }
    }
    checks.push(AxiomCheck {
        axiom: Axiom::C3,
        status: c3,
    });

    // C4 on every chain u <= v <= w of the path to w: P(w|u) = P(w|v) P(v|u).
    let mut c4 = AxiomStatus::Pass;
    'c4: for w in tree.node_ids() {
        let path = tree.path(root, w).expect("root is an ancestor of every node");
        let k = path.len() - 1;
        let mut to_w = vec![Prob::one(); k + 1];
        for i in (0..k).rev() {
            to_w[i] = space.edge(path[i + 1]) * &to_w[i + 1];
        }
        for (i, &u) in path.iter().enumerate() {
            let mut u_to_v = Prob::one();
            for j in i..=k {
                if j > i {
                    u_to_v *= space.edge(path[j]);
                }
                if to_w[i] != &to_w[j] * &u_to_v {
                    c4 = axiom_fail(
                        Axiom::C4,
                        format!(
                            "P({w} | {u}) != P({w} | {v}) P({v} | {u})",
                            w = tree.name(w),
                            u = tree.name(u),
                            v = tree.name(path[j])
                        ),
                    );
                    break 'c4;
                }
            }
        }
    }
    checks.push(AxiomCheck {
        axiom: Axiom::C4,
        status: c4,
    });

    ValidationReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_level() -> SpaceBuilder {
        let mut b = SpaceBuilder::new();
        b.outcome("a").outcome("b").outcome("c");
        b.root("r").internal("x");
        b.leaf("a", "a").leaf("b", "b").leaf("c", "c");
        b.edge("r", "x", ratio(2, 3)).edge("r", "c", ratio(1, 3));
        b.edge("x", "a", ratio(1, 4)).edge("x", "b", ratio(3, 4));
        b
    }

    #[test]
    fn preorder_layout_and_sets() {
        let s = two_level().build().unwrap();
        let t = s.tree();
        let names: Vec<_> = t.node_ids().map(|n| t.name(n)).collect();
        assert_eq!(names, ["r", "x", "a", "b", "c"]);
        let x = s.node_id("x").unwrap();
        let labels: Vec<_> = t.node(x).outcomes().iter().map(|&o| t.outcome_label(o)).collect();
        assert_eq!(labels, ["a", "b"]);
        assert_eq!(t.leaf_count(), 3);
    }

    #[test]
    fn single_node_space() {
        let mut b = SpaceBuilder::new();
        b.outcome("w").root("S0").leaf("S0", "w");
        let s = b.build().unwrap();
        let masses = s.leaf_masses();
        assert_eq!(masses.len(), 1);
        assert!(masses[&s.root()].is_one());
    }

    #[test]
    fn edge_sum_not_one() {
        let mut b = two_level();
        b.edges[2].prob = ratio(1, 2);
        b.edges[3].prob = ratio(1, 3);
        assert_eq!(
            b.build().unwrap_err(),
            Error::EdgeSumNotOne {
                node: "x".into(),
                sum: "5/6".into()
            }
        );
        // Structure alone is fine.
        assert!(b.build_lenient().is_ok());
    }

    #[test]
    fn out_of_range() {
        let mut b = two_level();
        b.edges[2].prob = ratio(3, 2);
        b.edges[3].prob = ratio(-1, 2);
        assert!(matches!(b.build().unwrap_err(), Error::ProbOutOfRange { .. }));
    }

    #[test]
    fn structural_errors() {
        let mut b = two_level();
        b.internal("x");
        assert_eq!(b.build().unwrap_err(), Error::DuplicateId("x".into()));

        let mut b = two_level();
        b.internal("lonely");
        assert_eq!(b.build().unwrap_err(), Error::LeafWithoutOutcome("lonely".into()));

        let mut b = two_level();
        b.leaf("d", "a").internal("e");
        b.edge("d", "e", ratio(1, 1)).edge("e", "d", ratio(1, 1));
        assert!(matches!(b.build().unwrap_err(), Error::LeafWithChildren(_)));

        let mut b = two_level();
        b.edge("r", "a", ratio(0, 1));
        assert_eq!(b.build().unwrap_err(), Error::MultipleParents("a".into()));

        let mut b = two_level();
        b.edge("x", "r", ratio(0, 1));
        assert_eq!(b.build().unwrap_err(), Error::RootHasParent("r".into()));

        let mut b = two_level();
        b.leaf("d", "a");
        assert_eq!(b.build().unwrap_err(), Error::OrphanNode("d".into()));

        let mut b = two_level();
        b.edge("nowhere", "a", ratio(1, 1));
        assert_eq!(b.build().unwrap_err(), Error::UnknownNode("nowhere".into()));

        let mut b = SpaceBuilder::new();
        b.outcome("a");
        assert_eq!(b.build().unwrap_err(), Error::MissingRoot);
    }

    #[test]
    fn r2_and_r3_failures_are_reported() {
        let mut b = SpaceBuilder::new();
        b.outcome("1").outcome("2").outcome("3");
        b.root("r").leaf("a", "1").leaf("b", "2");
        b.edge("r", "a", ratio(1, 2)).edge("r", "b", ratio(1, 2));
        let s = b.build_lenient().unwrap();
        let report = validate_axioms(&s);
        match report.status(Axiom::R3) {
            AxiomStatus::Fail(Error::AxiomViolation { witness, .. }) => assert!(witness.contains("`3`")),
            other => panic!("expected R3 failure, got {other:?}"),
        }
        assert_eq!(report.status(Axiom::R2), &AxiomStatus::Pass);

        let mut b = SpaceBuilder::new();
        b.outcome("1").outcome("2");
        b.root("r").leaf("a", "1").leaf("b", "1").leaf("c", "2");
        b.edge("r", "a", ratio(1, 3))
            .edge("r", "b", ratio(1, 3))
            .edge("r", "c", ratio(1, 3));
        let report = validate_axioms(&b.build_lenient().unwrap());
        assert!(matches!(report.status(Axiom::R2), AxiomStatus::Fail(_)));
        assert!(!report.all_pass());
    }

    #[test]
    fn transitions_and_order() {
        let s = two_level().build().unwrap();
        let id = |n| s.node_id(n).unwrap();
        assert_eq!(s.transition_prob(id("r"), id("b")), ratio(1, 2));
        assert!(s.transition_prob(id("b"), id("r")).is_one());
        assert!(s.transition_prob(id("a"), id("c")).is_zero());
        assert!(s.transition_prob(id("a"), id("b")).is_zero());
        assert!(s.precedes(id("r"), id("a")));
        assert!(!s.precedes(id("a"), id("a")));
        assert!(!s.incomparable(id("a"), id("a")));
        assert!(s.incomparable(id("a"), id("c")));
        let report = validate_axioms(&s);
        assert!(report.all_pass(), "{report}");
        assert!(matches!(report.status(Axiom::R4), AxiomStatus::Vacuous(_)));
    }
}
