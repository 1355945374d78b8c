//! The `.ctree` text format.
//!
//! ```text
//! ctree v1
//! outcome heads
//! outcome tails
//! root S0
//! leaf S1 outcome=heads
//! leaf S2 outcome=tails
//! edge S0 -> S1 p=1/2
//! edge S0 -> S2 p=1/2
//! var Coin {h, t} S1=h S2=t
//! event up = {heads}
//! ```
//!
//! Lines are independent; `#` starts a comment. A leaf may repeat
//! `outcome=` to carry several outcomes. Probabilities are `int/int` or a
//! bare integer. The `{...}` codomain of a `var` is optional.

mod dot;
pub(crate) mod lexer;

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use crate::error::Error;
use crate::events::Event;
use crate::random_vars::{define_variable, RandomVariable};
use crate::tree::{format_prob, validate_axioms, CausalSpace, NodeSpec, Prob, SpaceBuilder};
use lexer::{tokenize, Kind, Token};

pub use dot::to_dot;

/// A parsed document: the space plus its variables and named events.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CtreeDocument {
    pub space: CausalSpace,
    pub variables: Vec<RandomVariable>,
    pub events: Vec<(String, Event)>,
}

impl CtreeDocument {
    pub fn variable(&self, name: &str) -> Option<&RandomVariable> {
        self.variables.iter().find(|v| v.name() == name)
    }

    pub fn event(&self, name: &str) -> Option<&Event> {
        self.events.iter().find(|(n, _)| n == name).map(|(_, e)| e)
    }

    pub fn to_text(&self) -> String {
        serialize(&self.space, &self.variables, &self.events)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax {
        expected: String,
    },
    /// The declarations are well-formed but do not describe a valid tree,
    /// variable or event.
    Semantic(Error),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: ", self.line, self.column)?;
        match &self.kind {
            ParseErrorKind::Syntax { expected } => write!(f, "expected {expected}"),
            ParseErrorKind::Semantic(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ParseError {}

type Pos = (usize, usize);

fn syntax(pos: Pos, expected: impl Into<String>) -> ParseError {
    ParseError {
        line: pos.0,
        column: pos.1,
        kind: ParseErrorKind::Syntax {
            expected: expected.into(),
        },
    }
}

fn semantic(pos: Pos, e: Error) -> ParseError {
    ParseError {
        line: pos.0,
        column: pos.1,
        kind: ParseErrorKind::Semantic(e),
    }
}

/// Cursor over the tokens of one line.
struct Line<'a> {
    no: usize,
    tokens: &'a [Token],
    i: usize,
    /// Column just past the last character, for errors at end of line.
    end: usize,
}

impl<'a> Line<'a> {
    fn pos(&self) -> Pos {
        (self.no, self.tokens.get(self.i).map_or(self.end, |t| t.column))
    }

    fn peek(&self) -> Option<&'a Token> {
        self.tokens.get(self.i)
    }

    fn next_if(&mut self, kind: Kind) -> Option<&'a Token> {
        let t = self.tokens.get(self.i).filter(|t| t.kind == kind)?;
        self.i += 1;
        Some(t)
    }

    fn expect(&mut self, kind: Kind, what: &str) -> Result<&'a Token, ParseError> {
        let pos = self.pos();
        self.next_if(kind).ok_or_else(|| syntax(pos, what))
    }

    fn word(&mut self, what: &str) -> Result<(String, Pos), ParseError> {
        let pos = self.pos();
        Ok((self.expect(Kind::Word, what)?.text.clone(), pos))
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let pos = self.pos();
        match self.next_if(Kind::Word) {
            Some(t) if t.text == kw => Ok(()),
            _ => Err(syntax(pos, format!("`{kw}`"))),
        }
    }

    fn label(&mut self, what: &str) -> Result<(String, Pos), ParseError> {
        let pos = self.pos();
        match self.peek() {
            Some(t) if matches!(t.kind, Kind::Word | Kind::Group) => {
                self.i += 1;
                Ok((t.text.clone(), pos))
            }
            _ => Err(syntax(pos, what)),
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        let pos = self.pos();
        match self.next_if(Kind::Word) {
            Some(t) if t.text.bytes().all(|b| b.is_ascii_digit()) => {
                Ok(t.text.parse().expect("ascii digits parse as an integer"))
            }
            _ => Err(syntax(pos, "a non-negative integer")),
        }
    }

    fn prob(&mut self) -> Result<Prob, ParseError> {
        let numer = self.integer()?;
        if self.next_if(Kind::Slash).is_none() {
            return Ok(Prob::from_integer(numer));
        }
        let pos = self.pos();
        let denom = self.integer()?;
        if denom == BigInt::from(0) {
            return Err(syntax(pos, "a non-zero denominator"));
        }
        Ok(Prob::new(numer, denom))
    }

    /// `{a, b, ...}`, possibly empty.
    fn label_set(&mut self, what: &str) -> Result<Vec<String>, ParseError> {
        self.expect(Kind::LBrace, "`{`")?;
        let mut out = Vec::new();
        if self.next_if(Kind::RBrace).is_some() {
            return Ok(out);
        }
        loop {
            out.push(self.label(what)?.0);
            if self.next_if(Kind::RBrace).is_some() {
                return Ok(out);
            }
            self.expect(Kind::Comma, "`,` or `}`")?;
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(syntax(self.pos(), "end of line")),
        }
    }
}

struct VarDecl {
    name: String,
    pos: Pos,
    codomain: Vec<String>,
    assignments: Vec<(String, String)>,
}

struct EventDecl {
    name: String,
    pos: Pos,
    labels: Vec<String>,
}

/// Where each name appears, for attaching positions to semantic errors.
#[derive(Default)]
struct Positions {
    outcome_decl: HashMap<String, Vec<Pos>>,
    node_decl: HashMap<String, Vec<Pos>>,
    root_decl: Vec<Pos>,
    edge_child: HashMap<String, Vec<Pos>>,
    edge_ref: HashMap<String, Vec<Pos>>,
    edge_parent: HashMap<String, Vec<Pos>>,
    leaf_outcome: HashMap<String, Vec<Pos>>,
}

impl Positions {
    fn nth(map: &HashMap<String, Vec<Pos>>, key: &str, n: usize) -> Option<Pos> {
        map.get(key).and_then(|v| v.get(n)).copied()
    }

    fn locate(&self, e: &Error) -> Pos {
        let found =
            match e {
                Error::DuplicateId(x) => Self::nth(&self.outcome_decl, x, 1)
                    .or_else(|| Self::nth(&self.node_decl, x, 1))
                    .or_else(|| Self::nth(&self.leaf_outcome, x, 0)),
                Error::MultipleRoots(..) => self.root_decl.get(1).copied(),
                Error::RootHasParent(x) => Self::nth(&self.edge_child, x, 0),
                Error::MultipleParents(x) => Self::nth(&self.edge_child, x, 1),
                Error::OrphanNode(x) | Error::LeafWithoutOutcome(x) | Error::LeafWithChildren(x) => {
                    Self::nth(&self.node_decl, x, 0)
                }
                Error::UnknownNode(x) => Self::nth(&self.edge_ref, x, 0),
                Error::UnknownOutcome(x) => Self::nth(&self.leaf_outcome, x, 0),
                Error::EdgeSumNotOne { node, .. } => Self::nth(&self.edge_parent, node, 0),
                Error::ProbOutOfRange { child, .. } => Self::nth(&self.edge_child, child, 0),
                // Witnesses name nodes in backticks; point at the first one declared.
                Error::AxiomViolation { witness, .. } => witness.split('`').skip(1).step_by(2).find_map(|name| {
                    Self::nth(&self.node_decl, name, 0).or_else(|| Self::nth(&self.edge_ref, name, 0))
                }),
                _ => None,
            };
        found.unwrap_or((1, 1))
    }
}

/// Parses a document and checks every axiom. Axiom failures are reported
/// at the declaration of the node they name.
pub fn parse(text: &str) -> Result<CtreeDocument, ParseError> {
    parse_with(text, true)
}

/// Like [`parse`], but only structural problems are errors; axiom
/// violations (edge sums, coverage) are left to
/// [`validate_axioms`](crate::tree::validate_axioms).
pub fn parse_unchecked(text: &str) -> Result<CtreeDocument, ParseError> {
    parse_with(text, false)
}

fn parse_with(text: &str, check_axioms: bool) -> Result<CtreeDocument, ParseError> {
    let mut builder = SpaceBuilder::new();
    let mut at = Positions::default();
    let mut vars: Vec<VarDecl> = Vec::new();
    let mut events: Vec<EventDecl> = Vec::new();
    let mut seen_header = false;

    for (idx, raw) in text.lines().enumerate() {
        let no = idx + 1;
        let tokens = tokenize(raw).map_err(|(col, msg)| syntax((no, col), msg))?;
        if tokens.is_empty() {
            continue;
        }
        let mut line = Line {
            no,
            tokens: &tokens,
            i: 0,
            end: raw.chars().count() + 1,
        };
        if !seen_header {
            line.keyword("ctree")
                .map_err(|_| syntax((no, 1), "`ctree v1` header"))?;
            line.keyword("v1")?;
            line.finish()?;
            seen_header = true;
            continue;
        }
        let (kw, kw_pos) = line.word("a declaration keyword")?;
        match kw.as_str() {
            "outcome" => {
                let (label, pos) = line.label("an outcome label")?;
                at.outcome_decl.entry(label.clone()).or_default().push(pos);
                builder.outcome(label);
            }
            "root" => {
                let (id, pos) = line.word("a node id")?;
                at.root_decl.push(pos);
                builder.root(id);
            }
            "node" => {
                let (id, pos) = line.word("a node id")?;
                at.node_decl.entry(id.clone()).or_default().push(pos);
                builder.node(NodeSpec::internal(id));
            }
            "leaf" => {
                let (id, pos) = line.word("a node id")?;
                at.node_decl.entry(id.clone()).or_default().push(pos);
                let mut outcomes = Vec::new();
                loop {
                    line.keyword("outcome")?;
                    line.expect(Kind::Eq, "`=`")?;
                    let (label, lpos) = line.label("an outcome label")?;
                    at.leaf_outcome.entry(label.clone()).or_default().push(lpos);
                    outcomes.push(label);
                    if line.peek().is_none() {
                        break;
                    }
                }
                builder.node(NodeSpec { id, outcomes });
            }
            "edge" => {
                let (parent, ppos) = line.word("a node id")?;
                line.expect(Kind::Arrow, "`->`")?;
                let (child, cpos) = line.word("a node id")?;
                line.keyword("p")?;
                line.expect(Kind::Eq, "`=`")?;
                let p = line.prob()?;
                at.edge_ref.entry(parent.clone()).or_default().push(ppos);
                at.edge_parent.entry(parent.clone()).or_default().push(ppos);
                at.edge_ref.entry(child.clone()).or_default().push(cpos);
                at.edge_child.entry(child.clone()).or_default().push(cpos);
                builder.edge(parent, child, p);
            }
            "var" => {
                let (name, pos) = line.word("a variable name")?;
                let codomain = match line.peek() {
                    Some(t) if t.kind == Kind::LBrace => line.label_set("a value")?,
                    _ => Vec::new(),
                };
                let mut assignments = Vec::new();
                while line.peek().is_some() {
                    let (node, _) = line.word("a node id")?;
                    line.expect(Kind::Eq, "`=`")?;
                    let (value, _) = line.label("a value")?;
                    assignments.push((node, value));
                }
                if assignments.is_empty() {
                    return Err(syntax(line.pos(), "`<node>=<value>`"));
                }
                if vars.iter().any(|v| v.name == name) {
                    return Err(semantic(pos, Error::DuplicateId(name)));
                }
                vars.push(VarDecl {
                    name,
                    pos,
                    codomain,
                    assignments,
                });
            }
            "event" => {
                let (name, pos) = line.word("an event name")?;
                line.expect(Kind::Eq, "`=`")?;
                let labels = line.label_set("an outcome label")?;
                if events.iter().any(|e| e.name == name) {
                    return Err(semantic(pos, Error::DuplicateId(name)));
                }
                events.push(EventDecl { name, pos, labels });
            }
            _ => {
                return Err(syntax(
                    kw_pos,
                    "one of `outcome`, `root`, `node`, `leaf`, `edge`, `var`, `event`",
                ))
            }
        }
        line.finish()?;
    }
    if !seen_header {
        return Err(syntax((1, 1), "`ctree v1` header"));
    }

    let space = builder.build_lenient().map_err(|e| semantic(at.locate(&e), e))?;
    if check_axioms {
        validate_axioms(&space)
            .into_result()
            .map_err(|e| semantic(at.locate(&e), e))?;
    }
    let variables = vars
        .iter()
        .map(|v| define_variable(&space, &v.name, &v.codomain, &v.assignments).map_err(|e| semantic(v.pos, e)))
        .collect::<Result<Vec<_>, _>>()?;
    let events = events
        .into_iter()
        .map(|e| {
            Event::from_labels(space.tree(), &e.labels)
                .map(|ev| (e.name, ev))
                .map_err(|err| semantic(e.pos, err))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CtreeDocument {
        space,
        variables,
        events,
    })
}

/// Canonical text: header, outcomes, root, nodes in depth-first order,
/// edges in the same order, variables, events.
pub fn serialize(space: &CausalSpace, variables: &[RandomVariable], events: &[(String, Event)]) -> String {
    use std::fmt::Write;
    let tree = space.tree();
    let mut out = String::from("ctree v1\n");
    for o in tree.outcome_ids() {
        writeln!(out, "outcome {}", tree.outcome_label(o)).unwrap();
    }
    writeln!(out, "root {}", tree.name(tree.root())).unwrap();
    for id in tree.node_ids() {
        let node = tree.node(id);
        if node.is_leaf() {
            write!(out, "leaf {}", node.name()).unwrap();
            for &o in node.leaf_outcomes() {
                write!(out, " outcome={}", tree.outcome_label(o)).unwrap();
            }
            out.push('\n');
        } else if id != tree.root() {
            writeln!(out, "node {}", node.name()).unwrap();
        }
    }
    for id in tree.node_ids() {
        if let Some(p) = tree.node(id).parent() {
            writeln!(
                out,
                "edge {} -> {} p={}",
                tree.name(p),
                tree.name(id),
                format_prob(space.edge(id))
            )
            .unwrap();
        }
    }
    for v in variables {
        write!(out, "var {} {{{}}}", v.name(), v.codomain().join(", ")).unwrap();
        for (n, val) in v.assignments() {
            write!(out, " {}={}", tree.name(*n), val).unwrap();
        }
        out.push('\n');
    }
    for (name, e) in events {
        writeln!(out, "event {} = {{{}}}", name, e.labels(tree).join(", ")).unwrap();
    }
    out
}
