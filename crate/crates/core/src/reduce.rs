//! Normal-order normalization by β and the defining equations of the
//! recursors and sequence operators.

use crate::error::EvalError;
use crate::term::{alpha_eq, default_term, subst, Const, Term};
use crate::types::FiniteType;
use std::fmt;

/// Canonical closed value of a term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CanonicalValue {
    Nat(u64),
    Seq(FiniteType, Vec<CanonicalValue>),
    /// Normal form of a term at arrow type.
    Closure(Term),
}

impl CanonicalValue {
    pub fn to_term(&self) -> Term {
        match self {
            CanonicalValue::Nat(n) => Term::nat(*n),
            CanonicalValue::Seq(e, xs) => Term::seq(e.clone(), xs.iter().map(|x| x.to_term())),
            CanonicalValue::Closure(t) => t.clone(),
        }
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self {
            CanonicalValue::Nat(n) => Some(*n),
            _ => None,
        }
    }
}

impl fmt::Display for CanonicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalValue::Nat(n) => write!(f, "{n}"),
            CanonicalValue::Seq(_, xs) => {
                write!(f, "[")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, "]")
            }
            CanonicalValue::Closure(t) => write!(f, "{t}"),
        }
    }
}

/// Full normal form, leftmost-outermost.
pub fn normalize(term: &Term) -> Term {
    nf(term.clone())
}

fn nf(t: Term) -> Term {
    let t = whnf(t);
    match t {
        Term::Lam(x, ty, b) => Term::Lam(x, ty, Box::new(nf(*b))),
        Term::SeqAbs(x, ty, b) => Term::SeqAbs(x, ty, Box::new(nf(*b))),
        Term::App(..) => {
            let (head, args) = t.into_spine();
            Term::apps(head, args.into_iter().map(nf))
        }
        other => other,
    }
}

/// Weak head normal form.
pub fn whnf(t: Term) -> Term {
    let mut t = t;
    loop {
        match step_head(t) {
            Ok(next) => t = next,
            Err(stuck) => return stuck,
        }
    }
}

/// Like [`whnf`] but unfolds a leading `Λ` into its cons spine, so that
/// sequence operators can inspect it.
fn whnf_seq(t: Term) -> Term {
    match whnf(t) {
        Term::SeqAbs(x, ty, b) => {
            let bt = b.ty();
            let elem = FiniteType::arrow(ty.clone(), bt);
            Term::cons(elem.clone(), Term::Lam(x, ty, b), Term::nil(elem))
        }
        other => other,
    }
}

enum Shape {
    Nil,
    Cons(Term, Term),
    Other(Term),
}

fn seq_shape(t: Term) -> Shape {
    let t = whnf_seq(t);
    match t {
        Term::Const(Const::Nil(_)) => Shape::Nil,
        Term::App(..) => {
            let (h, mut args) = t.into_spine();
            if matches!(h, Term::Const(Const::Cons(_))) && args.len() == 2 {
                let tl = args.pop().unwrap();
                let hd = args.pop().unwrap();
                Shape::Cons(hd, tl)
            } else {
                Shape::Other(Term::apps(h, args))
            }
        }
        other => Shape::Other(other),
    }
}

enum NatShape {
    Zero,
    Succ(Term),
    Other(Term),
}

fn nat_shape(t: Term) -> NatShape {
    match whnf(t) {
        Term::Const(Const::Zero) => NatShape::Zero,
        Term::App(f, a) if matches!(*f, Term::Const(Const::Succ)) => NatShape::Succ(*a),
        other => NatShape::Other(other),
    }
}

/// One head step. `Err` carries the term back when the head is not a redex;
/// scrutinees that were reduced on the way are kept in their reduced form.
fn step_head(t: Term) -> Result<Term, Term> {
    match t {
        Term::Const(Const::Default(ty)) => Ok(default_term(&ty)),
        Term::App(..) => {
            let (head, args) = t.into_spine();
            match head {
                Term::Lam(x, _, body) => {
                    let mut it = args.into_iter();
                    let a = it.next().expect("spine has an argument");
                    Ok(Term::apps(subst(&body, &x, &a), it))
                }
                Term::Const(c) if args.len() >= c.arity() && c.arity() > 0 => fire(c, args),
                Term::Const(Const::Default(ty)) => Ok(Term::apps(default_term(&ty), args)),
                h => Err(Term::apps(h, args)),
            }
        }
        other => Err(other),
    }
}

fn fire(c: Const, args: Vec<Term>) -> Result<Term, Term> {
    let k = c.arity();
    let mut args = args;
    let rest: Vec<Term> = args.split_off(k);
    let done = |t: Term| Ok(Term::apps(t, rest.clone()));
    let stuck = |c: Const, args: Vec<Term>| Err(Term::apps(Term::apps(Term::Const(c), args), rest.clone()));
    match c {
        Const::Succ | Const::Cons(_) => stuck(c, args),
        Const::Singleton(e) => {
            let z = args.pop().unwrap();
            done(Term::cons(e.clone(), z, Term::nil(e)))
        }
        Const::NatRec(ref s) => {
            let n = args.pop().unwrap();
            let y = args.pop().unwrap();
            let x = args.pop().unwrap();
            match nat_shape(n) {
                NatShape::Zero => done(x),
                NatShape::Succ(m) => {
                    let rec = Term::nat_rec(s.clone(), x, y.clone(), m.clone());
                    done(Term::apps(y, [m, rec]))
                }
                NatShape::Other(n) => stuck(c, vec![x, y, n]),
            }
        }
        Const::ListRec(ref s, ref e) => {
            let l = args.pop().unwrap();
            let y = args.pop().unwrap();
            let x = args.pop().unwrap();
            match seq_shape(l) {
                Shape::Nil => done(x),
                Shape::Cons(z, tl) => {
                    let rec = Term::apps(Term::Const(Const::ListRec(s.clone(), e.clone())), [x, y.clone(), tl]);
                    done(Term::apps(y, [rec, z]))
                }
                Shape::Other(l) => stuck(c, vec![x, y, l]),
            }
        }
        Const::Len(ref e) => {
            let s = args.pop().unwrap();
            match seq_shape(s) {
                Shape::Nil => done(Term::zero()),
                Shape::Cons(_, tl) => done(Term::succ(Term::len(e.clone(), tl))),
                Shape::Other(s) => stuck(c, vec![s]),
            }
        }
        Const::Proj(ref e) => {
            let i = args.pop().unwrap();
            let s = args.pop().unwrap();
            match seq_shape(s) {
                Shape::Nil => done(default_term(e)),
                Shape::Cons(a, tl) => match nat_shape(i) {
                    NatShape::Zero => done(a),
                    NatShape::Succ(j) => done(Term::proj(e.clone(), tl, j)),
                    NatShape::Other(i) => stuck(c.clone(), vec![Term::cons(e.clone(), a, tl), i]),
                },
                Shape::Other(s) => stuck(c, vec![s, i]),
            }
        }
        Const::Concat(ref e) => {
            let t = args.pop().unwrap();
            let s = args.pop().unwrap();
            match seq_shape(s) {
                Shape::Nil => done(t),
                Shape::Cons(a, tl) => done(Term::cons(e.clone(), a, Term::concat(e.clone(), tl, t))),
                Shape::Other(s) => match seq_shape(t) {
                    Shape::Nil => done(s),
                    Shape::Cons(a, tl) => stuck(c.clone(), vec![s, Term::cons(e.clone(), a, tl)]),
                    Shape::Other(t) => stuck(c, vec![s, t]),
                },
            }
        }
        Const::SeqApp(ref a_ty, ref r) => {
            let a = args.pop().unwrap();
            let s = args.pop().unwrap();
            let fe = FiniteType::arrow(a_ty.clone(), FiniteType::star(r.clone()));
            match seq_shape(s) {
                Shape::Nil => done(Term::nil(r.clone())),
                Shape::Cons(f, tl) => match seq_shape(tl) {
                    Shape::Nil => done(Term::app(f, a)),
                    Shape::Cons(g, tl2) => {
                        let tail = Term::cons(fe, g, tl2);
                        done(Term::concat(
                            r.clone(),
                            Term::app(f, a.clone()),
                            Term::seq_app(a_ty.clone(), r.clone(), tail, a),
                        ))
                    }
                    Shape::Other(tl) => done(Term::concat(
                        r.clone(),
                        Term::app(f, a.clone()),
                        Term::seq_app(a_ty.clone(), r.clone(), tl, a),
                    )),
                },
                Shape::Other(s) => stuck(c, vec![s, a]),
            }
        }
        Const::Zero | Const::Nil(_) | Const::Default(_) => unreachable!("nullary constants do not fire"),
    }
}

/// Replaces every remaining `Λx.t` by `C (λx.t) ⟨⟩`.
pub fn expand_seq_abs(t: &Term) -> Term {
    match t {
        Term::SeqAbs(x, ty, b) => {
            let b2 = expand_seq_abs(b);
            let elem = FiniteType::arrow(ty.clone(), b2.ty());
            Term::cons(elem.clone(), Term::lam(x.clone(), ty.clone(), b2), Term::nil(elem))
        }
        Term::Lam(x, ty, b) => Term::lam(x.clone(), ty.clone(), expand_seq_abs(b)),
        Term::App(f, a) => Term::app(expand_seq_abs(f), expand_seq_abs(a)),
        other => other.clone(),
    }
}

/// Definitional equality: α-equal normal forms.
pub fn convertible(t: &Term, u: &Term) -> bool {
    let (a, b) = (normalize(t), normalize(u));
    alpha_eq(&a, &b) || alpha_eq(&expand_seq_abs(&a), &expand_seq_abs(&b))
}

fn require_closed(term: &Term) -> Result<FiniteType, EvalError> {
    if let Some((x, _)) = term.free_vars().into_iter().next() {
        return Err(EvalError::NotClosed(x));
    }
    Ok(term.infer()?)
}

pub fn eval_nat(term: &Term) -> Result<u64, EvalError> {
    let ty = require_closed(term)?;
    if !ty.is_ground() {
        return Err(EvalError::NotGroundType(ty));
    }
    let n = normalize(term);
    n.as_numeral().ok_or_else(|| EvalError::Stuck(n.to_string()))
}

pub fn eval_seq(term: &Term) -> Result<Vec<CanonicalValue>, EvalError> {
    let ty = require_closed(term)?;
    if !ty.is_star() || !ty.is_data() {
        return Err(EvalError::NotDataType(ty));
    }
    match read_back(&normalize(term), &ty)? {
        CanonicalValue::Seq(_, xs) => Ok(xs),
        _ => unreachable!("sequence type reads back as a sequence"),
    }
}

/// Canonical value of a closed term of any type.
pub fn eval_canonical(term: &Term) -> Result<CanonicalValue, EvalError> {
    let ty = require_closed(term)?;
    read_back(&normalize(term), &ty)
}

fn read_back(t: &Term, ty: &FiniteType) -> Result<CanonicalValue, EvalError> {
    match ty {
        FiniteType::Ground => t
            .as_numeral()
            .map(CanonicalValue::Nat)
            .ok_or_else(|| EvalError::Stuck(t.to_string())),
        FiniteType::Star(e) => {
            let expanded;
            let t = if matches!(t, Term::SeqAbs(..)) {
                expanded = expand_seq_abs(t);
                &expanded
            } else {
                t
            };
            let (_, items) = t.as_seq_spine().ok_or_else(|| EvalError::Stuck(t.to_string()))?;
            let vals = items
                .into_iter()
                .map(|x| read_back(x, e))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(CanonicalValue::Seq((**e).clone(), vals))
        }
        FiniteType::Arrow(..) => Ok(CanonicalValue::Closure(t.clone())),
    }
}
