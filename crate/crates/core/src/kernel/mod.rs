//! Hilbert-style proofs in the two characteristic systems, their checker, and
//! realiser extraction.

pub mod builder;
pub mod extract;
pub mod samples;
pub mod schema;
pub mod syntax;

use crate::formula::{alpha_eq_formula, convertible_formula, Formula};
use crate::term::{Name, Term};
use crate::translate::Flavor;
use crate::types::FiniteType;
use thiserror::Error;

pub use builder::ProofBuilder;
pub use extract::{extract, extract_dst, extract_u, ExtractError};
pub use schema::{Binds, Kind, Param, Schema, CATALOGUE};

#[derive(Clone, Debug)]
pub enum Rule {
    Axiom(Schema, Binds),
    /// Reference to a declared Δ-hypothesis.
    Hyp(Name),
    /// Major premise `A → B`, minor premise `A`.
    Mp(Box<Node>, Box<Node>),
    /// From `B → A` infer `B → ∀z A`.
    ForallRule(Name, FiniteType, Box<Node>),
    /// From `A → B` infer `∃z A → B`.
    ExistsRule(Name, FiniteType, Box<Node>),
    /// Base `Φ(0)`, step `∀n (Φ(n) → Φ(S n))`; concludes `∀n Φ(n)`.
    Ind(Box<Node>, Box<Node>),
    /// Base `Φ(0)`, step `∀st n (Φ(n) → Φ(S n))`; concludes `∀st n Φ(n)`.
    IndSt(Box<Node>, Box<Node>),
}

/// A proof node with an optional cached conclusion.
#[derive(Clone, Debug)]
pub struct Node {
    pub rule: Rule,
    pub cached: Option<Formula>,
}

impl PartialEq for Rule {
    fn eq(&self, other: &Rule) -> bool {
        match (self, other) {
            (Rule::Axiom(s, b), Rule::Axiom(t, c)) => s == t && b == c,
            (Rule::Hyp(a), Rule::Hyp(b)) => a == b,
            (Rule::Mp(a, b), Rule::Mp(c, d))
            | (Rule::Ind(a, b), Rule::Ind(c, d))
            | (Rule::IndSt(a, b), Rule::IndSt(c, d)) => a == c && b == d,
            (Rule::ForallRule(x, s, p), Rule::ForallRule(y, t, q))
            | (Rule::ExistsRule(x, s, p), Rule::ExistsRule(y, t, q)) => x == y && s == t && p == q,
            _ => false,
        }
    }
}

impl Eq for Rule {}

/// Nodes compare by their derivations; caches are ignored.
impl PartialEq for Node {
    fn eq(&self, other: &Node) -> bool {
        self.rule == other.rule
    }
}

impl Eq for Node {}

impl Node {
    pub fn new(rule: Rule) -> Node {
        Node { rule, cached: None }
    }

    pub fn label(&self) -> String {
        match &self.rule {
            Rule::Axiom(s, _) => format!("axiom {}", s.name()),
            Rule::Hyp(h) => format!("hyp {h}"),
            Rule::Mp(..) => "mp".into(),
            Rule::ForallRule(..) => "forall-rule".into(),
            Rule::ExistsRule(..) => "exists-rule".into(),
            Rule::Ind(..) => "ind".into(),
            Rule::IndSt(..) => "ind-st".into(),
        }
    }

    pub fn children(&self) -> Vec<&Node> {
        match &self.rule {
            Rule::Axiom(..) | Rule::Hyp(_) => vec![],
            Rule::Mp(a, b) | Rule::Ind(a, b) | Rule::IndSt(a, b) => vec![a, b],
            Rule::ForallRule(_, _, p) | Rule::ExistsRule(_, _, p) => vec![p],
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Proof {
    pub flavor: Flavor,
    /// Δ-hypotheses: closed internal sentences, ∨-free in `u`.
    pub hyps: Vec<(Name, Formula)>,
    pub root: Node,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum KernelError {
    #[error("{node}: bad instantiation: {reason}")]
    BadInstantiation { node: String, reason: String },
    #[error("{node}: eigenvariable `{var}` is free in {context}")]
    EigenvariableViolation { node: String, var: Name, context: String },
    #[error("{node}: not allowed in the {flavor} system: {reason}")]
    FlavorViolation {
        node: String,
        flavor: Flavor,
        reason: String,
    },
}

struct Checker<'a> {
    flavor: Flavor,
    hyps: &'a [(Name, Formula)],
    /// Accept cached conclusions of subproofs without re-deriving them.
    trust_cache: bool,
}

fn bad(node: &str, reason: impl Into<String>) -> KernelError {
    KernelError::BadInstantiation {
        node: node.to_string(),
        reason: reason.into(),
    }
}

impl Checker<'_> {
    fn flavor(&self) -> Flavor {
        self.flavor
    }

    fn internal(&self, node: &str, f: &Formula, what: &str) -> Result<(), KernelError> {
        let k = f.classify();
        if !k.internal {
            return Err(bad(node, format!("{what} must be internal")));
        }
        if self.flavor() == Flavor::U && !k.or_free {
            return Err(KernelError::FlavorViolation {
                node: node.to_string(),
                flavor: Flavor::U,
                reason: format!("{what} contains a disjunction"),
            });
        }
        Ok(())
    }

    fn hyps(&self) -> Result<(), KernelError> {
        for (i, (h, f)) in self.hyps.iter().enumerate() {
            let node = format!("hyp {h}");
            if self.hyps[..i].iter().any(|(g, _)| g == h) {
                return Err(bad(&node, "declared twice"));
            }
            f.check().map_err(|e| bad(&node, e.to_string()))?;
            if let Some((x, _)) = f.free_vars().into_iter().next() {
                return Err(bad(&node, format!("hypotheses must be sentences, `{x}` is free")));
            }
            self.internal(&node, f, "a hypothesis")?;
        }
        Ok(())
    }

    fn node(&self, n: &Node, path: &str) -> Result<Formula, KernelError> {
        if let (true, Some(c)) = (self.trust_cache, &n.cached) {
            return Ok(c.clone());
        }
        let here = format!("{path} ({})", n.label());
        let concl = self.derive(n, path, &here)?;
        concl.check().map_err(|e| bad(&here, e.to_string()))?;
        if let Some(c) = &n.cached {
            if !alpha_eq_formula(c, &concl) {
                return Err(bad(
                    &here,
                    format!("cached conclusion {c} differs from derived {concl}"),
                ));
            }
        }
        Ok(concl)
    }

    fn derive(&self, n: &Node, path: &str, here: &str) -> Result<Formula, KernelError> {
        let sub = |i: usize| format!("{path}.{i}");
        match &n.rule {
            Rule::Axiom(s, binds) => {
                if !s.allowed_in(self.flavor()) {
                    return Err(KernelError::FlavorViolation {
                        node: here.to_string(),
                        flavor: self.flavor(),
                        reason: format!("schema `{}` belongs to the other system", s.name()),
                    });
                }
                schema::validate(*s, binds).map_err(|r| bad(here, r))?;
                for (_, p) in &binds.0 {
                    if let Param::Formula(f) = p {
                        f.check().map_err(|e| bad(here, e.to_string()))?;
                    }
                }
                for key in s.internal_params() {
                    self.internal(here, binds.formula(key), &format!("parameter `{key}`"))?;
                }
                let concl = schema::conclusion(*s, binds).map_err(|r| bad(here, r))?;
                if s.info().nonlogical {
                    self.internal(here, &concl, "a nonlogical axiom")?;
                }
                Ok(concl)
            }
            Rule::Hyp(h) => self
                .hyps
                .iter()
                .find(|(g, _)| g == h)
                .map(|(_, f)| f.clone())
                .ok_or_else(|| bad(here, format!("unknown hypothesis `{h}`"))),
            Rule::Mp(major, minor) => {
                let m = self.node(major, &sub(0))?;
                let a = self.node(minor, &sub(1))?;
                match m {
                    Formula::Imp(p, q) if convertible_formula(&p, &a) => Ok(*q),
                    Formula::Imp(p, _) => Err(bad(here, format!("minor premise {a} does not match antecedent {p}"))),
                    other => Err(bad(here, format!("major premise {other} is not an implication"))),
                }
            }
            Rule::ForallRule(z, ty, p) | Rule::ExistsRule(z, ty, p) => {
                let c = self.node(p, &sub(0))?;
                let Formula::Imp(l, r) = c else {
                    return Err(bad(here, format!("premise {c} is not an implication")));
                };
                let forall = matches!(n.rule, Rule::ForallRule(..));
                let (side, body) = if forall { (&l, &r) } else { (&r, &l) };
                if side.has_free(z) {
                    return Err(KernelError::EigenvariableViolation {
                        node: here.to_string(),
                        var: z.clone(),
                        context: side.to_string(),
                    });
                }
                if let Some(t) = body.free_vars().get(z) {
                    if t != ty {
                        return Err(bad(
                            here,
                            format!("`{z}` has type {t} in the premise, binder says {ty}"),
                        ));
                    }
                }
                Ok(if forall {
                    Formula::imp(*l, Formula::forall(z.clone(), ty.clone(), *r))
                } else {
                    Formula::imp(Formula::exists(z.clone(), ty.clone(), *l), *r)
                })
            }
            Rule::Ind(base, step) | Rule::IndSt(base, step) => {
                let external = matches!(n.rule, Rule::IndSt(..));
                let b = self.node(base, &sub(0))?;
                let s = self.node(step, &sub(1))?;
                let (v, ty, body) = match (&s, external) {
                    (Formula::Forall(v, ty, body), false) | (Formula::ForallSt(v, ty, body), true) => (v, ty, body),
                    _ => {
                        let q = if external { "∀st" } else { "∀" };
                        return Err(bad(here, format!("step {s} is not of the form {q}n (Φ(n) → Φ(S n))")));
                    }
                };
                if !ty.is_ground() {
                    return Err(bad(here, format!("induction variable `{v}` must have type N")));
                }
                let Formula::Imp(phi, next) = &**body else {
                    return Err(bad(here, "step body is not an implication"));
                };
                let vv = Term::var(v.clone(), ty.clone());
                if !convertible_formula(next, &phi.subst(v, &Term::succ(vv))) {
                    return Err(bad(
                        here,
                        format!("step conclusion {next} is not the successor instance"),
                    ));
                }
                if !convertible_formula(&b, &phi.subst(v, &Term::zero())) {
                    return Err(bad(here, format!("base {b} is not the zero instance")));
                }
                if !external {
                    self.internal(here, phi, "the induction formula")?;
                }
                let phi = (**phi).clone();
                Ok(if external {
                    Formula::forall_st(v.clone(), ty.clone(), phi)
                } else {
                    Formula::forall(v.clone(), ty.clone(), phi)
                })
            }
        }
    }
}

/// Re-derives every conclusion and checks all side conditions.
pub fn check_proof(proof: &Proof) -> Result<Formula, KernelError> {
    let c = Checker {
        flavor: proof.flavor,
        hyps: &proof.hyps,
        trust_cache: false,
    };
    c.hyps()?;
    c.node(&proof.root, "root")
}

/// Derives the conclusion of `node`, trusting the caches of its subproofs.
pub(crate) fn derive_step(flavor: Flavor, hyps: &[(Name, Formula)], node: &Node) -> Result<Formula, KernelError> {
    Checker {
        flavor,
        hyps,
        trust_cache: true,
    }
    .node(node, "root")
}

/// Checks the proof and returns a copy of its tree with every conclusion cached.
pub fn annotate(proof: &Proof) -> Result<Node, KernelError> {
    let c = Checker {
        flavor: proof.flavor,
        hyps: &proof.hyps,
        trust_cache: true,
    };
    c.hyps()?;
    c.annotate(&proof.root, "root")
}

impl Checker<'_> {
    fn annotate(&self, n: &Node, path: &str) -> Result<Node, KernelError> {
        let sub = |i: usize, m: &Node| self.annotate(m, &format!("{path}.{i}")).map(Box::new);
        let rule = match &n.rule {
            Rule::Axiom(..) | Rule::Hyp(_) => n.rule.clone(),
            Rule::Mp(a, b) => Rule::Mp(sub(0, a)?, sub(1, b)?),
            Rule::Ind(a, b) => Rule::Ind(sub(0, a)?, sub(1, b)?),
            Rule::IndSt(a, b) => Rule::IndSt(sub(0, a)?, sub(1, b)?),
            Rule::ForallRule(z, t, p) => Rule::ForallRule(z.clone(), t.clone(), sub(0, p)?),
            Rule::ExistsRule(z, t, p) => Rule::ExistsRule(z.clone(), t.clone(), sub(0, p)?),
        };
        let mut out = Node::new(rule);
        // Children carry trusted caches now; only this step is derived.
        let concl = self.node(&out, path)?;
        if let Some(c) = &n.cached {
            if !alpha_eq_formula(c, &concl) {
                let here = format!("{path} ({})", n.label());
                return Err(bad(
                    &here,
                    format!("cached conclusion {c} differs from derived {concl}"),
                ));
            }
        }
        out.cached = Some(concl);
        Ok(out)
    }
}
