//! Random variables as cuts through the tree, and belief updates.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::events::{condition, prob, Event};
use crate::interventions::intervene;
use crate::tree::{format_prob, CausalSpace, LeafMasses, NodeId, Prob};

/// A variable assigning one value on every root-to-leaf path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomVariable {
    name: String,
    codomain: Vec<String>,
    /// In declaration order.
    assignments: Vec<(NodeId, String)>,
}

impl RandomVariable {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn codomain(&self) -> &[String] {
        &self.codomain
    }

    pub fn assignments(&self) -> &[(NodeId, String)] {
        &self.assignments
    }

    fn require_value(&self, value: &str) -> Result<()> {
        if self.codomain.iter().any(|v| v == value) {
            Ok(())
        } else {
            Err(Error::ValueOutsideCodomain {
                variable: self.name.clone(),
                value: value.to_string(),
            })
        }
    }

    /// `X⁻¹(value)`: outcomes below nodes assigned `value`.
    pub fn preimage(&self, space: &CausalSpace, value: &str) -> Result<Event> {
        self.require_value(value)?;
        Ok(self.preimage_of_set(space, &[value]))
    }

    fn preimage_of_set(&self, space: &CausalSpace, values: &[&str]) -> Event {
        let tree = space.tree();
        Event::from_ids(
            self.assignments
                .iter()
                .filter(|(_, v)| values.contains(&v.as_str()))
                .flat_map(|(n, _)| tree.node(*n).outcomes().iter().copied()),
        )
    }

    /// The value on the path to `leaf`.
    pub fn value_at(&self, space: &CausalSpace, leaf: NodeId) -> &str {
        let tree = space.tree();
        self.assignments
            .iter()
            .find(|(n, _)| tree.is_ancestor_or_self(*n, leaf))
            .map(|(_, v)| v.as_str())
            .expect("variables are cuts")
    }
}

/// Validates `assignments` as a cut through the tree of `space`.
///
/// An empty `codomain` is taken from the assigned values in order of first use.
pub fn define_variable<N: AsRef<str>, V: AsRef<str>>(
    space: &CausalSpace,
    name: &str,
    codomain: &[V],
    assignments: &[(N, V)],
) -> Result<RandomVariable> {
    let tree = space.tree();
    let mut values: Vec<String> = Vec::new();
    for v in codomain {
        let v = v.as_ref().to_string();
        if values.contains(&v) {
            return Err(Error::DuplicateId(v));
        }
        values.push(v);
    }
    let explicit = !values.is_empty();
    let mut assigned = Vec::with_capacity(assignments.len());
    for (node, value) in assignments {
        let id = tree.node_id(node.as_ref())?;
        let value = value.as_ref().to_string();
        if !values.contains(&value) {
            if explicit {
                return Err(Error::ValueOutsideCodomain {
                    variable: name.to_string(),
                    value,
                });
            }
            values.push(value.clone());
        }
        assigned.push((id, value));
    }

    // Pre-order position of each assigned node; a cut has exactly one per path.
    let mut sorted: Vec<NodeId> = assigned.iter().map(|(n, _)| *n).collect();
    sorted.sort();
    for pair in sorted.windows(2) {
        if tree.is_ancestor_or_self(pair[0], pair[1]) {
            return Err(Error::DuplicateAssignmentOnPath {
                variable: name.to_string(),
                first: tree.name(pair[0]).to_string(),
                second: tree.name(pair[1]).to_string(),
            });
        }
    }
    let set: BTreeSet<NodeId> = sorted.into_iter().collect();
    for leaf in tree.leaves() {
        let mut cur = Some(leaf);
        let mut found = false;
        while let Some(n) = cur {
            if set.contains(&n) {
                found = true;
                break;
            }
            cur = tree.node(n).parent();
        }
        if !found {
            return Err(Error::NotACut {
                variable: name.to_string(),
                leaf: tree.name(leaf).to_string(),
            });
        }
    }
    Ok(RandomVariable {
        name: name.to_string(),
        codomain: values,
        assignments: assigned,
    })
}

/// True iff the preimage of every member of `s_realisations` is a single node.
pub fn check_realisable_strict<S: AsRef<str>>(
    space: &CausalSpace,
    rv: &RandomVariable,
    s_realisations: &[Vec<S>],
) -> bool {
    let tree = space.tree();
    s_realisations.iter().all(|b| {
        let values: Vec<&str> = b.iter().map(|v| v.as_ref()).collect();
        let pre = rv.preimage_of_set(space, &values);
        tree.node_ids().any(|n| tree.node(n).outcomes() == pre.members())
    })
}

/// A distribution over the values of one variable, in codomain order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distribution {
    pub variable: String,
    pub entries: Vec<(String, Prob)>,
}

impl Distribution {
    pub fn get(&self, value: &str) -> Option<&Prob> {
        self.entries.iter().find(|(v, _)| v == value).map(|(_, p)| p)
    }
}

impl fmt::Display for Distribution {
    /// One `name value num/den` line per value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, p) in &self.entries {
            writeln!(f, "{} {} {}", self.variable, v, format_prob(p))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Update {
    Observe { variable: String, value: String },
    Act { variable: String, value: String },
}

impl fmt::Display for Update {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Update::Observe { variable, value } => write!(f, "observe {variable}={value}"),
            Update::Act { variable, value } => write!(f, "act {variable}={value}"),
        }
    }
}

/// Beliefs over a causal space after a sequence of observations and actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeliefState {
    base: CausalSpace,
    current: CausalSpace,
    evidence: Event,
    log: Vec<Update>,
}

impl BeliefState {
    pub fn new(space: CausalSpace) -> Self {
        let evidence = Event::full(space.tree());
        BeliefState {
            current: space.clone(),
            base: space,
            evidence,
            log: Vec::new(),
        }
    }

    pub fn base(&self) -> &CausalSpace {
        &self.base
    }

    /// The base tree under the current, possibly intervened, measure.
    pub fn space(&self) -> &CausalSpace {
        &self.current
    }

    pub fn evidence(&self) -> &Event {
        &self.evidence
    }

    pub fn log(&self) -> &[Update] {
        &self.log
    }

    /// Conditions on `rv = value`. The measure is unchanged.
    pub fn observe(&self, rv: &RandomVariable, value: &str) -> Result<BeliefState> {
        let a = rv.preimage(&self.current, value)?;
        let evidence = self.evidence.intersection(&a);
        if prob(&self.current, &evidence, self.current.root())?.is_zero() {
            return Err(Error::ObserveNullEvent {
                variable: rv.name().to_string(),
                value: value.to_string(),
            });
        }
        let mut next = self.clone();
        next.evidence = evidence;
        next.log.push(Update::Observe {
            variable: rv.name().to_string(),
            value: value.to_string(),
        });
        Ok(next)
    }

    /// Intervenes on `rv = value` over the whole space, then conditions on it.
    pub fn act(&self, rv: &RandomVariable, value: &str) -> Result<BeliefState> {
        let a = rv.preimage(&self.current, value)?;
        let result = intervene(&self.current, &a)?;
        let update = Update::Act {
            variable: rv.name().to_string(),
            value: value.to_string(),
        };
        let evidence = self.evidence.intersection(&a);
        if prob(&result.space, &evidence, result.space.root())?.is_zero() {
            return Err(Error::NullEvidence {
                step: update.to_string(),
            });
        }
        let mut next = self.clone();
        next.current = result.space;
        next.evidence = evidence;
        next.log.push(update);
        Ok(next)
    }

    /// `P(rv = x | evidence)` for every value `x` under the current measure.
    pub fn marginal(&self, rv: &RandomVariable) -> Result<Distribution> {
        let root = self.current.root();
        let pe = prob(&self.current, &self.evidence, root)?;
        let entries = rv
            .codomain()
            .iter()
            .map(|v| {
                let a = rv.preimage_of_set(&self.current, &[v]).intersection(&self.evidence);
                Ok((v.clone(), prob(&self.current, &a, root)? / &pe))
            })
            .collect::<Result<_>>()?;
        Ok(Distribution {
            variable: rv.name().to_string(),
            entries,
        })
    }

    /// Same as [`BeliefState::marginal`]; the name used for queries after updates.
    pub fn posterior(&self, rv: &RandomVariable) -> Result<Distribution> {
        self.marginal(rv)
    }

    /// Leaf masses under the current measure conditioned on the evidence.
    pub fn leaf_masses(&self) -> Result<LeafMasses> {
        condition(&self.current, &self.evidence)
    }

    /// Applies `log` to a fresh belief over `base`.
    pub fn replay(base: CausalSpace, variables: &[RandomVariable], log: &[Update]) -> Result<BeliefState> {
        let lookup = |name: &str| {
            variables
                .iter()
                .find(|v| v.name() == name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))
        };
        log.iter().try_fold(BeliefState::new(base), |b, step| match step {
            Update::Observe { variable, value } => b.observe(lookup(variable)?, value),
            Update::Act { variable, value } => b.act(lookup(variable)?, value),
        })
    }
}
