//! Brute-force checks of the main algorithms, and seeded random instances.
//!
//! The checks below recompute everything they compare against from outcome
//! sets and raw transition probabilities.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::events::{canonical_representation, is_representable, Event, SIGMA_LEAF_LIMIT};
use crate::interventions::{definitional_bifurcations, intervene, intervention_table, Gains, InterventionResult};
use crate::parser::CtreeDocument;
use crate::random_vars::{define_variable, BeliefState, RandomVariable};
use crate::tree::{
    format_prob, validate_axioms, CausalSpace, LeafMasses, NodeId, NodeSpec, OutcomeId, Prob, SpaceBuilder,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Skipped(String),
    /// First counterexample found.
    Fail(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub name: String,
    /// Number of individual comparisons made.
    pub cases: usize,
    pub status: CheckStatus,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        !matches!(self.status, CheckStatus::Fail(_))
    }

    fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            cases: 0,
            status: CheckStatus::Pass,
        }
    }

    /// Records one comparison; only the first failure is kept.
    fn expect(&mut self, ok: bool, counterexample: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.status == CheckStatus::Pass {
            self.status = CheckStatus::Fail(counterexample());
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            CheckStatus::Pass => write!(f, "pass {} ({} cases)", self.name, self.cases),
            CheckStatus::Skipped(why) => write!(f, "skip {}: {}", self.name, why),
            CheckStatus::Fail(ce) => write!(f, "FAIL {}: {}", self.name, ce),
        }
    }
}

fn set_names(space: &CausalSpace, set: &BTreeSet<OutcomeId>) -> String {
    let tree = space.tree();
    let labels: Vec<_> = set.iter().map(|&o| tree.outcome_label(o)).collect();
    format!("{{{}}}", labels.join(", "))
}

/// Every union of leaves has a representation by disjoint realisations, and
/// every union of pairwise disjoint realisations is a union of leaves.
pub fn check_representation_theorem(space: &CausalSpace) -> Result<CheckReport> {
    let tree = space.tree();
    let leaves: Vec<NodeId> = tree.leaves().collect();
    if leaves.len() > SIGMA_LEAF_LIMIT {
        return Err(Error::TooManyLeaves {
            leaves: leaves.len(),
            limit: SIGMA_LEAF_LIMIT,
        });
    }
    let mut report = CheckReport::new("representation theorem");
    let mut sigma: HashSet<BTreeSet<OutcomeId>> = HashSet::new();
    for mask in 0u32..(1u32 << leaves.len()) {
        let set: BTreeSet<OutcomeId> = leaves
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .flat_map(|(_, &l)| tree.node(l).leaf_outcomes().iter().copied())
            .collect();
        let event = Event::from_ids(set.iter().copied());
        let rep = canonical_representation(space, &event);
        let valid = match &rep {
            Ok(r) => {
                let parts: Vec<&BTreeSet<OutcomeId>> = r.parts.iter().map(|&p| tree.node(p).outcomes()).collect();
                let disjoint = parts
                    .iter()
                    .enumerate()
                    .all(|(i, a)| parts[i + 1..].iter().all(|b| a.is_disjoint(b)));
                let union: BTreeSet<OutcomeId> = parts.iter().flat_map(|p| p.iter().copied()).collect();
                disjoint && union == set
            }
            Err(_) => false,
        };
        report.expect(valid && is_representable(space, &event), || {
            format!("event {} has no valid representation ({rep:?})", set_names(space, &set))
        });
        sigma.insert(set);
    }

    // Families of pairwise disjoint realisations are antichains of the tree.
    fn antichain_unions(space: &CausalSpace, id: NodeId) -> Vec<BTreeSet<OutcomeId>> {
        let node = space.tree().node(id);
        let mut below = vec![BTreeSet::new()];
        for &c in node.children() {
            let sub = antichain_unions(space, c);
            below = below
                .iter()
                .flat_map(|acc| sub.iter().map(move |s| acc.union(s).copied().collect()))
                .collect();
        }
        below.push(node.outcomes().clone());
        below
    }
    for set in antichain_unions(space, tree.root()) {
        report.expect(sigma.contains(&set), || {
            format!(
                "union of disjoint realisations {} is not a union of leaves",
                set_names(space, &set)
            )
        });
    }
    Ok(report)
}

/// `P(v | u)` for all pairs, from raw edge probabilities: 1 on ancestors
/// and self, the product of edges on descendants, 0 elsewhere.
fn transition_matrix(space: &CausalSpace) -> Vec<Vec<Prob>> {
    let tree = space.tree();
    let n = tree.node_count();
    let mut m = vec![vec![Prob::zero(); n]; n];
    for u in tree.node_ids() {
        let row = &mut m[u.index()];
        let mut a = Some(u);
        while let Some(x) = a {
            row[x.index()] = Prob::one();
            a = tree.node(x).parent();
        }
        // Pre-order: each parent's value is final before its children are reached.
        for v in tree.subtree(u).skip(1) {
            let parent = tree.node(v).parent().expect("below u");
            row[v.index()] = &row[parent.index()] * space.edge(v);
        }
    }
    m
}

/// Compares [`intervene`] against the pairwise definitional table, and checks
/// certainty, conservativity and the gain factorisation.
pub fn check_intervention_equivalence(space: &CausalSpace, a: &Event) -> CheckReport {
    let tree = space.tree();
    let mut report = CheckReport::new(format!("intervention equivalence on {}", a.display(tree)));
    let (fast, table) = match (intervene(space, a), intervention_table(space, a)) {
        (Ok(f), Ok(t)) => (f, t),
        (Err(e1), Err(e2)) => {
            report.expect(e1 == e2, || {
                format!("intervene failed with `{e1}`, the table with `{e2}`")
            });
            if report.passed() {
                report.status = CheckStatus::Skipped(format!("undefined: {e1}"));
            }
            return report;
        }
        (Ok(_), Err(e)) => {
            report.expect(false, || format!("only the table failed: {e}"));
            return report;
        }
        (Err(e), Ok(_)) => {
            report.expect(false, || format!("only intervene failed: {e}"));
            return report;
        }
    };
    let matrix = transition_matrix(&fast.space);
    for u in tree.node_ids() {
        for v in tree.node_ids() {
            let got = &matrix[u.index()][v.index()];
            let want = table.get(u, v);
            report.expect(got == want, || {
                format!(
                    "P'({} | {}): intervene gives {}, definition gives {}",
                    tree.name(v),
                    tree.name(u),
                    format_prob(got),
                    format_prob(want)
                )
            });
        }
    }

    let certain: Prob = tree
        .leaves()
        .filter(|&l| tree.node(l).outcomes().iter().all(|&o| a.contains(o)))
        .map(|l| table.get(tree.root(), l).clone())
        .sum();
    report.expect(certain.is_one(), || format!("P'(A | root) = {}", format_prob(&certain)));

    let defs = match definitional_bifurcations(space, a) {
        Ok(d) => d,
        Err(e) => {
            report.expect(false, || format!("bifurcations: {e}"));
            return report;
        }
    };
    let masses: BTreeMap<NodeId, Prob> = defs
        .iter()
        .map(|(&l, xi)| (l, xi.iter().map(|&x| space.edge(x)).sum::<Prob>()))
        .collect();
    let critical: BTreeSet<NodeId> = masses
        .iter()
        .filter(|(_, m)| **m < Prob::one())
        .map(|(&l, _)| l)
        .collect();
    report.expect(fast.critical == critical, || {
        format!("critical bifurcations {:?} vs {:?}", fast.critical, critical)
    });
    report.expect(fast.discriminants == defs, || "discriminants differ".into());
    for c in tree.node_ids().skip(1) {
        let parent = tree.node(c).parent().expect("non-root");
        if !critical.contains(&parent) {
            report.expect(space.edge(c) == fast.space.edge(c), || {
                format!("edge into `{}` changed below a non-critical node", tree.name(c))
            });
        }
    }

    // Gains from the root to every node, and from every node to its last
    // leaf, against products over the definitional discriminant masses.
    let gains = match Gains::new(space, a) {
        Ok(g) => g,
        Err(e) => {
            report.expect(false, || format!("gains: {e}"));
            return report;
        }
    };
    let pairs = tree.node_ids().map(|v| (tree.root(), v)).chain(
        tree.node_ids()
            .map(|u| (u, tree.subtree(u).last().expect("subtree holds its root"))),
    );
    for (u, v) in pairs {
        let path = tree.path(u, v).expect("u precedes v");
        let on_path = || {
            path[..path.len() - 1]
                .iter()
                .filter_map(|n| masses.get(n).map(|m| (n, m)))
        };
        let all: Prob = on_path().map(|(_, m)| m).product();
        let crit: Prob = on_path()
            .filter(|(n, _)| critical.contains(n))
            .map(|(_, m)| m)
            .product();
        let (g, cg) = (gains.gain(u, v), gains.critical_gain(u, v));
        report.expect(
            all == crit && g.as_ref() == Ok(&all) && cg.as_ref() == Ok(&crit),
            || {
                format!(
                    "gain over [{}, {}]: {:?} and critical {:?}, definition gives {} and {}",
                    tree.name(u),
                    tree.name(v),
                    g,
                    cg,
                    format_prob(&all),
                    format_prob(&crit)
                )
            },
        );
    }
    report
}

/// Checks C1-C4 directly on transition probabilities of the intervened
/// measure, and that [`validate_axioms`] agrees.
pub fn check_axiom_preservation(space: &CausalSpace, a: &Event) -> CheckReport {
    let tree = space.tree();
    let mut report = CheckReport::new(format!("axiom preservation on {}", a.display(tree)));
    let result: InterventionResult = match intervene(space, a) {
        Ok(r) => r,
        Err(e) => {
            report.status = CheckStatus::Skipped(format!("undefined: {e}"));
            return report;
        }
    };
    let s = &result.space;
    let sets: Vec<&BTreeSet<OutcomeId>> = tree.node_ids().map(|n| tree.node(n).outcomes()).collect();
    let m = transition_matrix(s);
    let p = |u: NodeId, v: NodeId| &m[u.index()][v.index()];
    for u in tree.node_ids() {
        for v in tree.node_ids() {
            let puv = p(u, v);
            let (su, sv) = (sets[u.index()], sets[v.index()]);
            if su.is_subset(sv) {
                report.expect(puv.is_one(), || {
                    format!("C1: P({} | {}) != 1", tree.name(v), tree.name(u))
                });
            } else if su.is_disjoint(sv) {
                report.expect(puv.is_zero(), || {
                    format!("C2: P({} | {}) != 0", tree.name(v), tree.name(u))
                });
            } else {
                report.expect(*puv >= Prob::zero() && *puv <= Prob::one(), || {
                    format!(
                        "P({} | {}) = {} out of range",
                        tree.name(v),
                        tree.name(u),
                        format_prob(puv)
                    )
                });
            }
        }
        let kids = tree.node(u).children();
        if !kids.is_empty() {
            let sum: Prob = kids.iter().map(|&c| p(u, c)).sum();
            report.expect(sum.is_one(), || {
                format!("C3: children of {} sum to {}", tree.name(u), format_prob(&sum))
            });
        }
        // C4 along every chain u ⊇ v ⊇ w; the v are the nodes on the path up from w.
        for w in tree.subtree(u) {
            let mut v = Some(w);
            while let Some(x) = v {
                let rhs = p(x, w) * p(u, x);
                report.expect(*p(u, w) == rhs, || {
                    format!(
                        "C4: P({} | {}) != P({} | {}) P({} | {})",
                        tree.name(w),
                        tree.name(u),
                        tree.name(w),
                        tree.name(x),
                        tree.name(x),
                        tree.name(u)
                    )
                });
                v = if x == u { None } else { tree.node(x).parent() };
            }
        }
    }
    let validated = validate_axioms(s);
    report.expect(validated.all_pass(), || {
        format!("validate_axioms disagrees:\n{validated}")
    });
    report
}

/// `Σ_x P(X = x) · masses(act X = x)` over the values of `rv`.
pub fn mixture_of_actions(space: &CausalSpace, rv: &RandomVariable) -> Result<LeafMasses> {
    let belief = BeliefState::new(space.clone());
    let marginal = belief.marginal(rv)?;
    let mut out: LeafMasses = space.tree().leaves().map(|l| (l, Prob::zero())).collect();
    for (value, w) in &marginal.entries {
        if w.is_zero() {
            continue;
        }
        let acted = belief.act(rv, value)?;
        for (l, m) in acted.space().leaf_masses() {
            *out.get_mut(&l).expect("same tree") += w * m;
        }
    }
    Ok(out)
}

/// Leaf masses when the choice of `rv` is made without knowing anything
/// above it: every edge into an assigned node gets the marginal of its value.
///
/// Requires each parent of an assigned node to have all children assigned
/// pairwise different values.
pub fn marginalised_choice_law(space: &CausalSpace, rv: &RandomVariable) -> Result<LeafMasses> {
    let tree = space.tree();
    let marginal = BeliefState::new(space.clone()).marginal(rv)?;
    let assigned: BTreeMap<NodeId, &str> = rv.assignments().iter().map(|(n, v)| (*n, v.as_str())).collect();
    let mut edges: Vec<Prob> = tree.node_ids().map(|n| space.edge(n).clone()).collect();
    for &n in assigned.keys() {
        let parent = tree
            .node(n)
            .parent()
            .ok_or_else(|| Error::PreconditionViolated(format!("`{}` is assigned at the root", rv.name())))?;
        let values: BTreeSet<Option<&&str>> = tree.node(parent).children().iter().map(|c| assigned.get(c)).collect();
        if values.len() != tree.node(parent).children().len() || values.contains(&None) {
            return Err(Error::PreconditionViolated(format!(
                "children of `{}` are not one choice of `{}`",
                tree.name(parent),
                rv.name()
            )));
        }
    }
    for (&n, v) in &assigned {
        edges[n.index()] = marginal.get(v).expect("value in codomain").clone();
    }
    // Leaf masses straight from the edited edges.
    let mut mass = vec![Prob::zero(); tree.node_count()];
    let mut out = LeafMasses::new();
    for n in tree.node_ids() {
        mass[n.index()] = match tree.node(n).parent() {
            None => Prob::one(),
            Some(p) => &mass[p.index()] * &edges[n.index()],
        };
        if tree.node(n).is_leaf() {
            out.insert(n, mass[n.index()].clone());
        }
    }
    Ok(out)
}

/// Bounds for random instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub max_depth: usize,
    pub max_branching: usize,
    pub max_denominator: u32,
    /// Chance, in percent, that a non-root node below the depth limit is a leaf.
    pub stop_percent: u32,
    /// Chance, in percent, that a leaf carries two outcomes.
    pub coarse_percent: u32,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            max_depth: 6,
            max_branching: 3,
            max_denominator: 12,
            stop_percent: 45,
            coarse_percent: 10,
        }
    }
}

/// `k` probabilities summing to 1 with denominators at most `max_denominator`.
/// One child in twenty is given probability zero.
fn random_split(rng: &mut ChaCha8Rng, k: usize, max_denominator: u32) -> Vec<Prob> {
    let d = rng.gen_range(k as u32..=max_denominator.max(k as u32));
    // A composition of `d` into `k` positive parts.
    let mut cuts: Vec<u32> = rand::seq::index::sample(rng, d as usize - 1, k - 1)
        .into_iter()
        .map(|c| c as u32 + 1)
        .collect();
    cuts.push(0);
    cuts.push(d);
    cuts.sort_unstable();
    let mut weights: Vec<u32> = cuts.windows(2).map(|w| w[1] - w[0]).collect();
    for w in weights.iter_mut() {
        if rng.gen_range(0..20) == 0 {
            *w = 0;
        }
    }
    let total: u32 = weights.iter().sum();
    if total == 0 {
        weights[0] = 1;
    }
    let total: u32 = weights.iter().sum();
    weights.into_iter().map(|w| Prob::new(w.into(), total.into())).collect()
}

/// A random valid space. Nodes are named `N0, N1, ...` in pre-order and
/// outcomes `o0, o1, ...`.
pub fn random_space(rng: &mut ChaCha8Rng, params: &GenParams) -> CausalSpace {
    struct Gen<'a> {
        rng: &'a mut ChaCha8Rng,
        params: &'a GenParams,
        builder: SpaceBuilder,
        nodes: usize,
        outcomes: usize,
    }
    impl Gen<'_> {
        fn grow(&mut self, depth: usize) -> String {
            let name = format!("N{}", self.nodes);
            self.nodes += 1;
            let leaf =
                depth == self.params.max_depth || (depth > 0 && self.rng.gen_range(0..100) < self.params.stop_percent);
            if leaf {
                let count = if self.rng.gen_range(0..100) < self.params.coarse_percent {
                    2
                } else {
                    1
                };
                let mut labels = Vec::new();
                for _ in 0..count {
                    let l = format!("o{}", self.outcomes);
                    self.outcomes += 1;
                    self.builder.outcome(l.clone());
                    labels.push(l);
                }
                self.builder.node(NodeSpec {
                    id: name.clone(),
                    outcomes: labels,
                });
                return name;
            }
            self.builder.internal(name.clone());
            let k = self.rng.gen_range(2..=self.params.max_branching.max(2));
            let probs = random_split(self.rng, k, self.params.max_denominator);
            for p in probs {
                let child = self.grow(depth + 1);
                self.builder.edge(name.clone(), child, p);
            }
            name
        }
    }
    let mut g = Gen {
        rng,
        params,
        builder: SpaceBuilder::new(),
        nodes: 0,
        outcomes: 0,
    };
    g.grow(0);
    g.builder.root("N0");
    g.builder.build().expect("generated spaces satisfy the axioms")
}

/// Each leaf joins the event with probability 1/2.
pub fn random_event(rng: &mut ChaCha8Rng, space: &CausalSpace) -> Event {
    let tree = space.tree();
    let leaves: Vec<NodeId> = tree.leaves().collect();
    Event::from_ids(
        leaves
            .into_iter()
            .filter(|_| rng.gen_bool(0.5))
            .flat_map(|l| tree.node(l).outcomes().iter().copied().collect::<Vec<_>>()),
    )
}

/// A random cut with values drawn from `values`.
fn random_cut(rng: &mut ChaCha8Rng, space: &CausalSpace, values: &[&str]) -> Vec<(String, String)> {
    let tree = space.tree();
    let mut out = Vec::new();
    let mut stack = vec![tree.root()];
    while let Some(n) = stack.pop() {
        if tree.node(n).is_leaf() || rng.gen_bool(0.4) {
            let v = values[rng.gen_range(0..values.len())];
            out.push((tree.name(n).to_string(), v.to_string()));
        } else {
            stack.extend(tree.node(n).children().iter().rev());
        }
    }
    out
}

/// A random document with up to three variables and two events.
pub fn random_document(rng: &mut ChaCha8Rng, params: &GenParams) -> CtreeDocument {
    let space = random_space(rng, params);
    let all_values = ["a", "b", "(c,1)", "d.2"];
    let variables = (0..rng.gen_range(0..=3))
        .map(|i| {
            let k = rng.gen_range(1..=all_values.len());
            let values = &all_values[..k];
            let cut = random_cut(rng, &space, values);
            let codomain: Vec<String> = if rng.gen_bool(0.5) {
                values.iter().map(|v| v.to_string()).collect()
            } else {
                Vec::new()
            };
            define_variable(&space, &format!("V{i}"), &codomain, &cut).expect("random cuts are valid")
        })
        .collect();
    let events = (0..rng.gen_range(0..=2))
        .map(|i| (format!("E{i}"), random_event(rng, &space)))
        .collect();
    CtreeDocument {
        space,
        variables,
        events,
    }
}

/// One random edit of `text`: a character deleted, inserted or replaced, or
/// a line deleted, duplicated or swapped with its neighbour.
pub fn mutate(rng: &mut ChaCha8Rng, text: &str) -> String {
    const NOISE: &[char] = &[
        '=', '{', '}', ',', '(', ')', '/', '-', '>', '#', ' ', '\n', '0', '1', '9', 'x', 'S', '\u{e9}', ';',
    ];
    let mut chars: Vec<char> = text.chars().collect();
    let mut lines: Vec<&str> = text.lines().collect();
    match rng.gen_range(0..6) {
        0 if !chars.is_empty() => {
            chars.remove(rng.gen_range(0..chars.len()));
        }
        1 => {
            let c = NOISE[rng.gen_range(0..NOISE.len())];
            chars.insert(rng.gen_range(0..=chars.len()), c);
        }
        2 if !chars.is_empty() => {
            let i = rng.gen_range(0..chars.len());
            chars[i] = NOISE[rng.gen_range(0..NOISE.len())];
        }
        3 if !lines.is_empty() => {
            lines.remove(rng.gen_range(0..lines.len()));
            return lines.join("\n");
        }
        4 if !lines.is_empty() => {
            let i = rng.gen_range(0..lines.len());
            lines.insert(i, lines[i]);
            return lines.join("\n");
        }
        5 if lines.len() > 1 => {
            let i = rng.gen_range(0..lines.len() - 1);
            lines.swap(i, i + 1);
            return lines.join("\n");
        }
        _ => {}
    }
    chars.into_iter().collect()
}

/// Parses arbitrary text and checks the result is well behaved: no panic,
/// errors point inside the input, and accepted documents satisfy the axioms
/// and survive a serialise/parse round trip.
pub fn check_parse(text: &str) -> std::result::Result<(), String> {
    let parsed = std::panic::catch_unwind(|| crate::parser::parse(text)).map_err(|_| "parser panicked".to_string())?;
    match parsed {
        Ok(doc) => {
            let report = validate_axioms(&doc.space);
            if !report.all_pass() {
                return Err(format!("accepted a space failing the axioms:\n{report}"));
            }
            let again = crate::parser::parse(&doc.to_text()).map_err(|e| format!("re-parse failed: {e}"))?;
            if again != doc {
                return Err("round trip changed the document".into());
            }
            Ok(())
        }
        Err(e) => {
            let lines = text.lines().count().max(1);
            if e.line == 0 || e.line > lines + 1 || e.column == 0 {
                return Err(format!("error position out of range: {e}"));
            }
            Ok(())
        }
    }
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All checks for one document: the representation theorem and, for every
/// named event and every variable value, equivalence and axiom preservation.
pub fn check_document(doc: &CtreeDocument) -> Vec<CheckReport> {
    let space = &doc.space;
    let mut reports = vec![match check_representation_theorem(space) {
        Ok(r) => r,
        Err(e) => CheckReport {
            name: "representation theorem".into(),
            cases: 0,
            status: CheckStatus::Skipped(e.to_string()),
        },
    }];
    let mut events: Vec<Event> = doc.events.iter().map(|(_, e)| e.clone()).collect();
    for v in &doc.variables {
        for value in v.codomain() {
            events.push(v.preimage(space, value).expect("value from codomain"));
        }
    }
    events.push(Event::full(space.tree()));
    for e in &events {
        reports.push(check_intervention_equivalence(space, e));
        reports.push(check_axiom_preservation(space, e));
    }
    reports
}

/// Outcome of a seeded run over random instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomRun {
    pub seed: u64,
    pub instances: usize,
    /// Instances where the intervention was defined on both routes.
    pub defined: usize,
    /// `(instance index, report)` for every failed check.
    pub failures: Vec<(usize, CheckReport)>,
}

/// Runs equivalence and axiom preservation on `n` random `(space, event)` pairs.
pub fn run_random(n: usize, seed: u64) -> RandomRun {
    let mut rng = seeded(seed);
    let params = GenParams::default();
    let mut run = RandomRun {
        seed,
        instances: n,
        defined: 0,
        failures: Vec::new(),
    };
    for i in 0..n {
        let space = random_space(&mut rng, &params);
        let a = random_event(&mut rng, &space);
        let eq = check_intervention_equivalence(&space, &a);
        let ax = check_axiom_preservation(&space, &a);
        if eq.status == CheckStatus::Pass {
            run.defined += 1;
        }
        for r in [eq, ax] {
            if !r.passed() {
                run.failures.push((i, r));
            }
        }
    }
    run
}
