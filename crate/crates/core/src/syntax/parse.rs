//! Bidirectional reader for types, terms and formulas.
//!
//! Free variables take their type from the first occurrence that fixes it:
//! either an annotation `(var x A)` or a checked position.

use super::sexp::{ParseError, Sexp};
use crate::formula::Formula;
use crate::term::{Const, Name, Term};
use crate::types::FiniteType;
use std::collections::BTreeMap;

type R<T> = Result<T, ParseError>;

fn err<T>(s: &Sexp, msg: impl Into<String>) -> R<T> {
    Err(ParseError::new(s.pos(), msg))
}

pub fn parse_type(s: &Sexp) -> R<FiniteType> {
    match s {
        Sexp::Atom(a, _) if a == "N" || a == "0" => Ok(FiniteType::Ground),
        _ => match s.as_form() {
            Some(("->", args)) if args.len() >= 2 => {
                let ts = args.iter().map(parse_type).collect::<R<Vec<_>>>()?;
                let (last, init) = ts.split_last().unwrap();
                Ok(FiniteType::arrows(init, last.clone()))
            }
            Some(("*", [e])) => Ok(FiniteType::star(parse_type(e)?)),
            _ => err(s, format!("expected a type, found `{s}`")),
        },
    }
}

/// Reader state: free-variable types fixed so far and the binders in scope.
#[derive(Default)]
pub struct Reader {
    pub free: BTreeMap<Name, FiniteType>,
    scope: Vec<(Name, FiniteType)>,
}

fn binder(s: &Sexp) -> R<(Name, FiniteType)> {
    match s.as_list() {
        Some([Sexp::Atom(x, _), t]) => Ok((x.clone(), parse_type(t)?)),
        _ => err(s, format!("expected a binder `(x TYPE)`, found `{s}`")),
    }
}

pub fn binder_list(s: &Sexp) -> R<Vec<(Name, FiniteType)>> {
    match s.as_list() {
        Some(items) => items.iter().map(binder).collect(),
        None => err(s, "expected a binder list"),
    }
}

fn is_tuple_binder(s: &Sexp) -> bool {
    matches!(s.as_list(), Some(items) if items.iter().all(|i| i.as_list().is_some()))
}

fn synth_of(t: &Term, s: &Sexp) -> R<FiniteType> {
    t.infer().map_err(|e| ParseError::new(s.pos(), e.to_string()))
}

impl Reader {
    pub fn new() -> Reader {
        Reader::default()
    }

    pub fn with<T>(&mut self, xs: &[(Name, FiniteType)], f: impl FnOnce(&mut Reader) -> R<T>) -> R<T> {
        let d = self.scope.len();
        self.scope.extend(xs.iter().cloned());
        let r = f(self);
        self.scope.truncate(d);
        r
    }

    /// Reads a term, checking it against `expected` when given.
    pub fn term(&mut self, s: &Sexp, expected: Option<&FiniteType>) -> R<Term> {
        let t = self.term_raw(s, expected)?;
        let ty = synth_of(&t, s)?;
        if let Some(e) = expected {
            if *e != ty {
                return err(s, format!("type mismatch: expected {e}, found {ty} for `{s}`"));
            }
        }
        Ok(t)
    }

    fn var(&mut self, s: &Sexp, x: &str, ann: Option<FiniteType>, expected: Option<&FiniteType>) -> R<Term> {
        if let Some((_, t)) = self.scope.iter().rev().find(|(y, _)| y == x) {
            if let Some(a) = &ann {
                if a != t {
                    return err(s, format!("annotation {a} disagrees with binder type {t} of `{x}`"));
                }
            }
            return Ok(Term::var(x, t.clone()));
        }
        let want = ann.or_else(|| expected.cloned());
        match (self.free.get(x), want) {
            (Some(t), Some(w)) if *t != w => err(s, format!("free variable `{x}` used at {w} but earlier at {t}")),
            (Some(t), _) => Ok(Term::var(x, t.clone())),
            (None, Some(w)) => {
                self.free.insert(x.to_string(), w.clone());
                Ok(Term::var(x, w))
            }
            (None, None) => err(
                s,
                format!("cannot infer the type of free variable `{x}`; write `(var {x} TYPE)`"),
            ),
        }
    }

    fn term_raw(&mut self, s: &Sexp, expected: Option<&FiniteType>) -> R<Term> {
        if let Sexp::Atom(a, _) = s {
            return match a.as_str() {
                "zero" => Ok(Term::zero()),
                "succ" => Ok(Term::Const(Const::Succ)),
                "cons" => match expected.and_then(|e| e.split_arrow()) {
                    Some((e, _)) => Ok(Term::Const(Const::Cons(e.clone()))),
                    None => err(s, "cannot infer the element type of bare `cons`; write `(cons TYPE)`"),
                },
                _ => match a.parse::<u64>() {
                    Ok(n) => Ok(Term::nat(n)),
                    Err(_) => err(s, format!("unknown term `{a}`")),
                },
            };
        }
        let Some((head, args)) = s.as_form() else {
            return err(s, format!("expected a term, found `{s}`"));
        };
        let ty1 = |i: usize| -> R<FiniteType> {
            match args.get(i) {
                Some(t) => parse_type(t),
                None => err(s, format!("`{head}` needs a type argument")),
            }
        };
        let arity = |n: usize| -> R<()> {
            if args.len() == n {
                Ok(())
            } else {
                err(s, format!("`{head}` takes {n} arguments, found {}", args.len()))
            }
        };
        match head {
            "var" => match args {
                [Sexp::Atom(x, _)] => self.var(s, x, None, expected),
                [Sexp::Atom(x, _), t] => {
                    let t = parse_type(t)?;
                    self.var(s, x, Some(t), expected)
                }
                _ => err(s, "expected `(var x)` or `(var x TYPE)`"),
            },
            "lam" | "seqabs" => {
                arity(2)?;
                let (x, xt) = binder(&args[0])?;
                let body_expected = match (head, expected) {
                    ("lam", Some(FiniteType::Arrow(_, b))) => Some((**b).clone()),
                    ("seqabs", Some(FiniteType::Star(e))) => e.split_arrow().map(|(_, b)| b.clone()),
                    _ => None,
                };
                let b = self.with(&[(x.clone(), xt.clone())], |r| r.term(&args[1], body_expected.as_ref()))?;
                Ok(if head == "lam" {
                    Term::lam(x, xt, b)
                } else {
                    Term::seq_abs(x, xt, b)
                })
            }
            "app" => {
                if args.is_empty() {
                    return err(s, "`app` needs a function");
                }
                let f = match args[0].as_atom() {
                    Some("cons") if args.len() >= 2 => {
                        let h = self.term(&args[1], None)?;
                        let e = synth_of(&h, &args[1])?;
                        let rest = args[2..]
                            .iter()
                            .enumerate()
                            .map(|(j, a)| {
                                let want = if j == 0 {
                                    Some(FiniteType::star(e.clone()))
                                } else {
                                    None
                                };
                                (a, want)
                            })
                            .collect::<Vec<_>>();
                        let mut t = Term::app(Term::Const(Const::Cons(e.clone())), h);
                        for (a, want) in rest {
                            let at = self.term(a, want.as_ref())?;
                            t = Term::app(t, at);
                        }
                        return Ok(t);
                    }
                    _ => self.term(&args[0], None)?,
                };
                let mut t = f;
                for a in &args[1..] {
                    let ft = synth_of(&t, &args[0])?;
                    let Some((dom, _)) = ft.split_arrow() else {
                        return err(a, format!("too many arguments: `{}` has type {ft}", args[0]));
                    };
                    let dom = dom.clone();
                    let at = self.term(a, Some(&dom))?;
                    t = Term::app(t, at);
                }
                Ok(t)
            }
            "nrec" => Ok(Term::Const(Const::NatRec(ty1(0)?))),
            "lrec" => Ok(Term::Const(Const::ListRec(ty1(0)?, ty1(1)?))),
            "nil" => Ok(Term::nil(ty1(0)?)),
            "cons" => Ok(Term::Const(Const::Cons(ty1(0)?))),
            "default" => Ok(Term::default_of(ty1(0)?)),
            "op" => {
                let name = args.first().and_then(Sexp::as_atom).unwrap_or("");
                let tys = args[1.min(args.len())..]
                    .iter()
                    .map(parse_type)
                    .collect::<R<Vec<_>>>()?;
                let c = match (name, tys.as_slice()) {
                    ("len", [a]) => Const::Len(a.clone()),
                    ("proj", [a]) => Const::Proj(a.clone()),
                    ("concat", [a]) => Const::Concat(a.clone()),
                    ("seqapp", [a, b]) => Const::SeqApp(a.clone(), b.clone()),
                    ("singleton", [a]) => Const::Singleton(a.clone()),
                    _ => return err(s, format!("unknown operator `{s}`")),
                };
                Ok(Term::Const(c))
            }
            "seq" => {
                if args.is_empty() {
                    return err(s, "`seq` needs an element type");
                }
                let e = parse_type(&args[0])?;
                let items = args[1..]
                    .iter()
                    .map(|a| self.term(a, Some(&e)))
                    .collect::<R<Vec<_>>>()?;
                Ok(Term::seq(e, items))
            }
            "len" | "singleton" => {
                arity(1)?;
                let a = self.term(&args[0], None)?;
                let at = synth_of(&a, &args[0])?;
                if head == "singleton" {
                    return Ok(Term::singleton(at, a));
                }
                match at.elem() {
                    Some(e) => Ok(Term::len(e.clone(), a)),
                    None => err(&args[0], format!("`len` needs a sequence, found type {at}")),
                }
            }
            "proj" | "concat" | "seqapp" => {
                arity(2)?;
                let a = self.term(&args[0], None)?;
                let at = synth_of(&a, &args[0])?;
                let Some(e) = at.elem().cloned() else {
                    return err(&args[0], format!("`{head}` needs a sequence, found type {at}"));
                };
                match head {
                    "proj" => {
                        let i = self.term(&args[1], Some(&FiniteType::Ground))?;
                        Ok(Term::proj(e, a, i))
                    }
                    "concat" => {
                        let b = self.term(&args[1], Some(&at))?;
                        Ok(Term::concat(e, a, b))
                    }
                    _ => {
                        let (dom, cod) = match e.split_arrow() {
                            Some((d, FiniteType::Star(c))) => (d.clone(), (**c).clone()),
                            _ => {
                                return err(
                                    &args[0],
                                    format!("`seqapp` needs a sequence of (-> A (* B)), found {at}"),
                                )
                            }
                        };
                        let b = self.term(&args[1], Some(&dom))?;
                        Ok(Term::seq_app(dom, cod, a, b))
                    }
                }
            }
            _ => err(s, format!("unknown term form `{head}`")),
        }
    }

    pub fn formula(&mut self, s: &Sexp) -> R<Formula> {
        if let Some(a) = s.as_atom() {
            return match a {
                "bot" => Ok(Formula::Bot),
                "top" => Ok(Formula::verum()),
                _ => err(s, format!("unknown formula `{a}`")),
            };
        }
        let Some((head, args)) = s.as_form() else {
            return err(s, format!("expected a formula, found `{s}`"));
        };
        let need = |n: usize| -> R<()> {
            if args.len() == n {
                Ok(())
            } else {
                err(s, format!("`{head}` takes {n} arguments, found {}", args.len()))
            }
        };
        match head {
            "eq" | "in" | "subseteq" => {
                need(3)?;
                let ty = parse_type(&args[0])?;
                let (ta, tb) = match head {
                    "in" => (ty.clone(), FiniteType::star(ty.clone())),
                    _ => (ty.clone(), ty.clone()),
                };
                let a = self.term(&args[1], Some(&ta))?;
                let b = self.term(&args[2], Some(&tb))?;
                Ok(match head {
                    "eq" => Formula::Eq(ty, a, b),
                    "in" => Formula::In(ty, a, b),
                    _ => Formula::SubsetEq(ty, a, b),
                })
            }
            "st" | "hyper" => {
                need(2)?;
                let ty = parse_type(&args[0])?;
                let want = if head == "st" {
                    ty.clone()
                } else {
                    FiniteType::star(ty.clone())
                };
                let a = self.term(&args[1], Some(&want))?;
                Ok(if head == "st" {
                    Formula::St(ty, a)
                } else {
                    Formula::Hyper(ty, a)
                })
            }
            "not" => {
                need(1)?;
                Ok(Formula::Not(Box::new(self.formula(&args[0])?)))
            }
            "and" | "or" | "imp" => {
                if args.len() < 2 {
                    return err(s, format!("`{head}` needs at least two operands"));
                }
                let fs = args.iter().map(|a| self.formula(a)).collect::<R<Vec<_>>>()?;
                let mut it = fs.into_iter().rev();
                let last = it.next().unwrap();
                Ok(it.fold(last, |acc, f| match head {
                    "and" => Formula::and(f, acc),
                    "or" => Formula::or(f, acc),
                    _ => Formula::imp(f, acc),
                }))
            }
            "forall" | "exists" | "forall-st" | "exists-st" => {
                need(2)?;
                let xs = if is_tuple_binder(&args[0]) {
                    binder_list(&args[0])?
                } else {
                    vec![binder(&args[0])?]
                };
                let body = self.with(&xs, |r| r.formula(&args[1]))?;
                Ok(xs.into_iter().rev().fold(body, |acc, (x, t)| match head {
                    "forall" => Formula::forall(x, t, acc),
                    "exists" => Formula::exists(x, t, acc),
                    "forall-st" => Formula::forall_st(x, t, acc),
                    _ => Formula::exists_st(x, t, acc),
                }))
            }
            "forall-lt" | "exists-lt" => {
                need(2)?;
                let (i, b) = match args[0].as_list() {
                    Some([Sexp::Atom(i, _), b]) => (i.clone(), b),
                    _ => return err(&args[0], "expected `(i BOUND)`"),
                };
                let bound = self.term(b, Some(&FiniteType::Ground))?;
                let body = self.with(&[(i.clone(), FiniteType::Ground)], |r| r.formula(&args[1]))?;
                Ok(if head == "forall-lt" {
                    Formula::bounded_forall(i, bound, body)
                } else {
                    Formula::bounded_exists(i, bound, body)
                })
            }
            _ => err(s, format!("unknown formula form `{head}`")),
        }
    }
}

pub fn parse_term(s: &Sexp) -> R<Term> {
    Reader::new().term(s, None)
}

pub fn parse_formula(s: &Sexp) -> R<Formula> {
    Reader::new().formula(s)
}

pub fn term_from_str(src: &str) -> R<Term> {
    parse_term(&super::sexp::read_one(src)?)
}

pub fn formula_from_str(src: &str) -> R<Formula> {
    parse_formula(&super::sexp::read_one(src)?)
}
