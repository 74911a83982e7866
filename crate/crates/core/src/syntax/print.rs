//! Concrete syntax output. Mirrors the bidirectional reader: a free variable
//! is annotated with its type at its first occurrence in a position where the
//! reader could not infer it.

use super::sexp::Sexp;
use crate::formula::Formula;
use crate::term::{Const, Name, Term};
use crate::types::FiniteType;
use std::collections::BTreeSet;
use std::fmt;

pub fn type_sexp(t: &FiniteType) -> Sexp {
    match t {
        FiniteType::Ground => Sexp::atom("N"),
        FiniteType::Arrow(a, b) => Sexp::form("->", [type_sexp(a), type_sexp(b)]),
        FiniteType::Star(e) => Sexp::form("*", [type_sexp(e)]),
    }
}

/// Tracks which free variables the reader will already know.
#[derive(Default)]
pub struct Printer {
    known: BTreeSet<Name>,
    scope: Vec<Name>,
}

impl Printer {
    pub fn new() -> Printer {
        Printer::default()
    }

    /// Marks free variables as already declared to the reader.
    pub fn declare(&mut self, names: impl IntoIterator<Item = Name>) {
        self.known.extend(names);
    }

    pub fn binders(&mut self, xs: &[(Name, FiniteType)]) -> Sexp {
        Sexp::list(
            xs.iter()
                .map(|(x, t)| Sexp::list([Sexp::atom(x.clone()), type_sexp(t)])),
        )
    }

    /// Runs `f` with `xs` bound, as the reader does for binder parameters.
    pub fn scoped<R>(&mut self, xs: &[(Name, FiniteType)], f: impl FnOnce(&mut Printer) -> R) -> R {
        let depth = self.scope.len();
        self.scope.extend(xs.iter().map(|(x, _)| x.clone()));
        let r = f(self);
        self.scope.truncate(depth);
        r
    }

    fn bind<R>(&mut self, x: &Name, f: impl FnOnce(&mut Printer) -> R) -> R {
        self.scope.push(x.clone());
        let r = f(self);
        self.scope.pop();
        r
    }

    pub fn term(&mut self, t: &Term, check: bool) -> Sexp {
        if let Some(n) = t.as_numeral() {
            return if n == 0 {
                Sexp::atom("zero")
            } else {
                Sexp::atom(n.to_string())
            };
        }
        if let (Term::App(..), Some((e, items))) = (t, t.as_seq_spine()) {
            let mut v = vec![Sexp::atom("seq"), type_sexp(&e)];
            v.extend(items.into_iter().map(|x| self.term(x, true)));
            return Sexp::list(v);
        }
        match t {
            Term::Var(x, ty) => {
                if self.scope.contains(x) || self.known.contains(x) {
                    Sexp::form("var", [Sexp::atom(x.clone())])
                } else {
                    self.known.insert(x.clone());
                    if check {
                        Sexp::form("var", [Sexp::atom(x.clone())])
                    } else {
                        Sexp::form("var", [Sexp::atom(x.clone()), type_sexp(ty)])
                    }
                }
            }
            Term::Lam(x, ty, b) | Term::SeqAbs(x, ty, b) => {
                let head = if matches!(t, Term::Lam(..)) { "lam" } else { "seqabs" };
                let binder = Sexp::list([Sexp::atom(x.clone()), type_sexp(ty)]);
                let body = self.bind(x, |p| p.term(b, check));
                Sexp::form(head, [binder, body])
            }
            Term::Const(c) => const_sexp(c),
            Term::App(..) => self.app(t),
        }
    }

    fn app(&mut self, t: &Term) -> Sexp {
        let (head, args) = t.spine();
        if let Term::Const(c) = head {
            let k = c.arity();
            let op = match c {
                Const::Len(_) => Some("len"),
                Const::Proj(_) => Some("proj"),
                Const::Concat(_) => Some("concat"),
                Const::SeqApp(..) => Some("seqapp"),
                Const::Singleton(_) => Some("singleton"),
                _ => None,
            };
            if let Some(op) = op {
                if args.len() >= k {
                    let mut v = vec![Sexp::atom(op)];
                    for (j, a) in args[..k].iter().enumerate() {
                        // The first operand is synthesized, the rest are checked.
                        v.push(self.term(a, j > 0));
                    }
                    let inner = Sexp::list(v);
                    if args.len() == k {
                        return inner;
                    }
                    let mut w = vec![Sexp::atom("app"), inner];
                    w.extend(args[k..].iter().map(|a| self.term(a, true)));
                    return Sexp::list(w);
                }
            }
        }
        let mut v = vec![Sexp::atom("app"), self.term(head, false)];
        v.extend(args.into_iter().map(|a| self.term(a, true)));
        Sexp::list(v)
    }

    pub fn formula(&mut self, f: &Formula) -> Sexp {
        let ty = type_sexp;
        match f {
            Formula::Eq(s, a, b) => {
                let (a, b) = (self.term(a, true), self.term(b, true));
                Sexp::form("eq", [ty(s), a, b])
            }
            Formula::St(s, a) => Sexp::form("st", [ty(s), self.term(a, true)]),
            Formula::In(s, a, b) => {
                let (a, b) = (self.term(a, true), self.term(b, true));
                Sexp::form("in", [ty(s), a, b])
            }
            Formula::SubsetEq(s, a, b) => {
                let (a, b) = (self.term(a, true), self.term(b, true));
                Sexp::form("subseteq", [ty(s), a, b])
            }
            Formula::Hyper(s, a) => Sexp::form("hyper", [ty(s), self.term(a, true)]),
            Formula::Bot => Sexp::atom("bot"),
            Formula::Not(a) => Sexp::form("not", [self.formula(a)]),
            Formula::And(a, b) => Sexp::form("and", [self.formula(a), self.formula(b)]),
            Formula::Or(a, b) => Sexp::form("or", [self.formula(a), self.formula(b)]),
            Formula::Imp(a, b) => Sexp::form("imp", [self.formula(a), self.formula(b)]),
            Formula::Forall(x, s, a)
            | Formula::Exists(x, s, a)
            | Formula::ForallSt(x, s, a)
            | Formula::ExistsSt(x, s, a) => {
                let head = match f {
                    Formula::Forall(..) => "forall",
                    Formula::Exists(..) => "exists",
                    Formula::ForallSt(..) => "forall-st",
                    _ => "exists-st",
                };
                let binder = Sexp::list([Sexp::atom(x.clone()), ty(s)]);
                let body = self.bind(x, |p| p.formula(a));
                Sexp::form(head, [binder, body])
            }
            Formula::BoundedForall(i, b, a) | Formula::BoundedExists(i, b, a) => {
                let head = if matches!(f, Formula::BoundedForall(..)) {
                    "forall-lt"
                } else {
                    "exists-lt"
                };
                let binder = Sexp::list([Sexp::atom(i.clone()), self.term(b, true)]);
                let body = self.bind(i, |p| p.formula(a));
                Sexp::form(head, [binder, body])
            }
        }
    }

    /// `(exists-st (x̄) (forall-st (ȳ) matrix))` with tuple binders.
    pub fn prenex(&mut self, exist: &[(Name, FiniteType)], univ: &[(Name, FiniteType)], matrix: &Formula) -> Sexp {
        let e = self.binders(exist);
        let u = self.binders(univ);
        let names: Vec<Name> = exist.iter().chain(univ).map(|(x, _)| x.clone()).collect();
        let depth = self.scope.len();
        self.scope.extend(names);
        let m = self.formula(matrix);
        self.scope.truncate(depth);
        Sexp::form("exists-st", [e, Sexp::form("forall-st", [u, m])])
    }
}

pub fn const_sexp(c: &Const) -> Sexp {
    let ty = type_sexp;
    match c {
        Const::Zero => Sexp::atom("zero"),
        Const::Succ => Sexp::atom("succ"),
        Const::NatRec(s) => Sexp::form("nrec", [ty(s)]),
        Const::ListRec(s, t) => Sexp::form("lrec", [ty(s), ty(t)]),
        Const::Nil(s) => Sexp::form("nil", [ty(s)]),
        Const::Cons(s) => Sexp::form("cons", [ty(s)]),
        Const::Default(s) => Sexp::form("default", [ty(s)]),
        Const::Len(s) => Sexp::form("op", [Sexp::atom("len"), ty(s)]),
        Const::Proj(s) => Sexp::form("op", [Sexp::atom("proj"), ty(s)]),
        Const::Concat(s) => Sexp::form("op", [Sexp::atom("concat"), ty(s)]),
        Const::SeqApp(s, t) => Sexp::form("op", [Sexp::atom("seqapp"), ty(s), ty(t)]),
        Const::Singleton(s) => Sexp::form("op", [Sexp::atom("singleton"), ty(s)]),
    }
}

/// A standalone term, read back without an expected type.
pub fn term_sexp(t: &Term) -> Sexp {
    Printer::new().term(t, false)
}

pub fn formula_sexp(f: &Formula) -> Sexp {
    Printer::new().formula(f)
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", term_sexp(self))
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", formula_sexp(self))
    }
}
