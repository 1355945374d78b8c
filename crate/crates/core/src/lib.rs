//! Causal probability trees with exact rational arithmetic.
//!
//! A [`CausalSpace`] pairs a realisation tree with edge probabilities.
//! Events are sets of outcomes; interventions rewrite the measure so that an
//! event becomes certain; random variables are cuts through the tree and
//! drive the `observe` / `act` belief updates of [`BeliefState`].
//!
//! ```
//! use ctree::{intervene, parse, BeliefState};
//!
//! # fn main() -> Result<(), Box<dyn std::error::Error>> {
//! let doc = parse(ctree::corpus::URN)?;
//! let pick = doc.variable("Pick").unwrap();
//! let swap = doc.variable("Swap").unwrap();
//!
//! let belief = BeliefState::new(doc.space.clone()).act(pick, "left")?;
//! assert_eq!(belief.posterior(swap)?.get("yes"), Some(&ctree::ratio(1, 2)));
//!
//! let left = doc.event("left").unwrap();
//! let result = intervene(&doc.space, left)?;
//! assert_eq!(result.critical.len(), 2);
//! # Ok(())
//! # }
//! ```

pub mod cli;
pub mod corpus;
pub mod error;
pub mod events;
pub mod interventions;
pub mod oracle;
pub mod parser;
pub mod random_vars;
pub mod tree;

pub use error::{Error, Result};
pub use events::{
    all_representations, canonical_representation, condition, is_representable, prob, sigma_algebra, Event,
    Representation,
};
pub use interventions::{
    a_bifurcations, a_discriminants, bifurcation, critical_bifurcations, critical_gain, discriminant, gain, interval,
    intervene, intervention_table, oracle_intervene, Closedness, Gains, Interval, InterventionResult, TransitionTable,
};
pub use parser::{parse, parse_unchecked, serialize, to_dot, CtreeDocument, ParseError};
pub use random_vars::{check_realisable_strict, define_variable, BeliefState, Distribution, RandomVariable, Update};
pub use tree::{
    build_space, format_prob, ratio, validate_axioms, Axiom, CausalMeasure, CausalSpace, LeafMasses, NodeId, OutcomeId,
    Prob, RealisationTree, SpaceBuilder, ValidationReport,
};
