//! Concrete syntax for proofs and realiser bundles.
//!
//! ```text
//! (proof u|dst (hyp NAME FORMULA)* NODE)
//! NODE := (axiom NAME (binds (KEY VALUE)*)) | (hyp NAME) | (mp NODE NODE)
//!       | (forall-rule (x TYPE) NODE) | (exists-rule (x TYPE) NODE)
//!       | (ind NODE NODE) | (ind-st NODE NODE)
//! ```
//!
//! Formula parameters of an axiom are read with its binder parameters in
//! scope; term parameters are read outside them.

use super::schema::{Binds, Kind, Param, Schema};
use super::{Node, Proof, Rule};
use crate::bundle::RealiserBundle;
use crate::syntax::{parse_type, read_one, type_sexp, ParseError, Printer, Reader, Sexp};
use crate::term::{Name, Term};
use crate::translate::{translate, Flavor};
use crate::types::FiniteType;

type R<T> = Result<T, ParseError>;

fn err<T>(s: &Sexp, msg: impl Into<String>) -> R<T> {
    Err(ParseError::new(s.pos(), msg))
}

fn flavor(s: &Sexp) -> R<Flavor> {
    match s.as_atom().and_then(Flavor::from_name) {
        Some(f) => Ok(f),
        None => err(s, format!("expected `u` or `dst`, found `{s}`")),
    }
}

fn name(s: &Sexp) -> R<Name> {
    match s.as_atom() {
        Some(a) => Ok(a.to_string()),
        None => err(s, format!("expected a name, found `{s}`")),
    }
}

fn single_binder(s: &Sexp) -> R<(Name, FiniteType)> {
    match s.as_list() {
        Some([x, t]) => Ok((name(x)?, parse_type(t)?)),
        _ => err(s, format!("expected `(x TYPE)`, found `{s}`")),
    }
}

pub fn parse_proof(s: &Sexp) -> R<Proof> {
    let Some(("proof", items)) = s.as_form() else {
        return err(s, "expected `(proof FLAVOR …)`");
    };
    let Some((fl, rest)) = items.split_first() else {
        return err(s, "missing flavor");
    };
    let Some((root, decls)) = rest.split_last() else {
        return err(s, "missing proof tree");
    };
    let flavor = flavor(fl)?;
    let mut rd = Reader::new();
    let mut hyps = Vec::new();
    for d in decls {
        match d.as_form() {
            Some(("hyp", [h, f])) => hyps.push((name(h)?, rd.formula(f)?)),
            _ => return err(d, format!("expected `(hyp NAME FORMULA)`, found `{d}`")),
        }
    }
    let root = node(&mut rd, root)?;
    Ok(Proof { flavor, hyps, root })
}

pub fn proof_from_str(src: &str) -> R<Proof> {
    parse_proof(&read_one(src)?)
}

fn node(rd: &mut Reader, s: &Sexp) -> R<Node> {
    let sub = |rd: &mut Reader, x: &Sexp| node(rd, x).map(Box::new);
    let rule = match s.as_form() {
        Some(("axiom", [n, binds])) => {
            let nm = name(n)?;
            let Some(schema) = Schema::from_name(&nm) else {
                return err(n, format!("unknown axiom schema `{nm}`"));
            };
            Rule::Axiom(schema, parse_binds(rd, schema, binds)?)
        }
        Some(("hyp", [h])) => Rule::Hyp(name(h)?),
        Some(("mp", [a, b])) => Rule::Mp(sub(rd, a)?, sub(rd, b)?),
        Some(("ind", [a, b])) => Rule::Ind(sub(rd, a)?, sub(rd, b)?),
        Some(("ind-st", [a, b])) => Rule::IndSt(sub(rd, a)?, sub(rd, b)?),
        Some((head @ ("forall-rule" | "exists-rule"), [b, p])) => {
            let (x, ty) = single_binder(b)?;
            let p = sub(rd, p)?;
            if head == "forall-rule" {
                Rule::ForallRule(x, ty, p)
            } else {
                Rule::ExistsRule(x, ty, p)
            }
        }
        _ => return err(s, format!("expected a proof node, found `{s}`")),
    };
    Ok(Node::new(rule))
}

fn parse_binds(rd: &mut Reader, schema: Schema, s: &Sexp) -> R<Binds> {
    let Some(("binds", entries)) = s.as_form() else {
        return err(s, "expected `(binds (KEY VALUE)…)`");
    };
    let mut raw = Vec::new();
    for e in entries {
        match e.as_list() {
            Some([k, v]) => raw.push((name(k)?, v)),
            _ => return err(e, format!("expected `(KEY VALUE)`, found `{e}`")),
        }
    }
    let kind_of = |k: &str| {
        schema
            .info()
            .params
            .iter()
            .find(|(p, _)| *p == k)
            .map(|(_, kind)| *kind)
    };
    let mut binders = Vec::new();
    for (k, v) in &raw {
        if kind_of(k) == Some(Kind::Binder) {
            binders.push(single_binder(v)?);
        }
    }
    let mut out = Vec::new();
    for (k, v) in raw {
        let p = match kind_of(&k) {
            Some(Kind::Binder) => {
                let (x, t) = single_binder(v)?;
                Param::Binder(x, t)
            }
            Some(Kind::Formula) => Param::Formula(rd.with(&binders, |rd| rd.formula(v))?),
            Some(Kind::Term) => Param::Term(rd.term(v, None)?),
            None => return err(v, format!("`{}` has no parameter `{k}`", schema.name())),
        };
        out.push((k, p));
    }
    Ok(Binds(out))
}

pub fn proof_sexp(p: &Proof) -> Sexp {
    let mut pr = Printer::new();
    let mut items = vec![Sexp::atom(p.flavor.name())];
    for (h, f) in &p.hyps {
        items.push(Sexp::form("hyp", [Sexp::atom(h.clone()), pr.formula(f)]));
    }
    items.push(node_sexp(&mut pr, &p.root));
    Sexp::form("proof", items)
}

fn node_sexp(pr: &mut Printer, n: &Node) -> Sexp {
    match &n.rule {
        Rule::Axiom(s, binds) => {
            let binders: Vec<(Name, FiniteType)> = binds
                .0
                .iter()
                .filter_map(|(_, p)| match p {
                    Param::Binder(x, t) => Some((x.clone(), t.clone())),
                    _ => None,
                })
                .collect();
            let entries = binds.0.iter().map(|(k, p)| {
                let v = match p {
                    Param::Binder(x, t) => Sexp::list([Sexp::atom(x.clone()), type_sexp(t)]),
                    Param::Formula(f) => pr.scoped(&binders, |pr| pr.formula(f)),
                    Param::Term(t) => pr.term(t, false),
                };
                Sexp::list([Sexp::atom(k.clone()), v])
            });
            let entries: Vec<Sexp> = entries.collect();
            Sexp::form("axiom", [Sexp::atom(s.name()), Sexp::form("binds", entries)])
        }
        Rule::Hyp(h) => Sexp::form("hyp", [Sexp::atom(h.clone())]),
        Rule::Mp(a, b) => Sexp::form("mp", [node_sexp(pr, a), node_sexp(pr, b)]),
        Rule::Ind(a, b) => Sexp::form("ind", [node_sexp(pr, a), node_sexp(pr, b)]),
        Rule::IndSt(a, b) => Sexp::form("ind-st", [node_sexp(pr, a), node_sexp(pr, b)]),
        Rule::ForallRule(x, t, p) | Rule::ExistsRule(x, t, p) => {
            let head = if matches!(n.rule, Rule::ForallRule(..)) {
                "forall-rule"
            } else {
                "exists-rule"
            };
            let b = Sexp::list([Sexp::atom(x.clone()), type_sexp(t)]);
            Sexp::form(head, [b, node_sexp(pr, p)])
        }
    }
}

/// Reads `(bundle FLAVOR FORMULA (terms t…))`, checking each term at the type
/// of its existential variable.
pub fn parse_bundle(s: &Sexp) -> R<RealiserBundle> {
    let Some(("bundle", [fl, f, terms])) = s.as_form() else {
        return err(s, "expected `(bundle FLAVOR FORMULA (terms …))`");
    };
    let flavor = flavor(fl)?;
    let target = Reader::new().formula(f)?;
    let translated = translate(&target, flavor).map_err(|e| ParseError::new(f.pos(), e.to_string()))?;
    let Some(("terms", ts)) = terms.as_form() else {
        return err(terms, "expected `(terms …)`");
    };
    if ts.len() != translated.exist.len() {
        return err(
            terms,
            format!(
                "{} terms for {} existential variables",
                ts.len(),
                translated.exist.len()
            ),
        );
    }
    let terms = ts
        .iter()
        .zip(&translated.exist)
        .map(|(t, (_, ty))| Reader::new().term(t, Some(ty)))
        .collect::<R<Vec<Term>>>()?;
    RealiserBundle::new(target, flavor, terms).map_err(|e| ParseError::new(s.pos(), e.to_string()))
}

pub fn bundle_from_str(src: &str) -> R<RealiserBundle> {
    parse_bundle(&read_one(src)?)
}
