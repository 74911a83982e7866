//! Internal and external formulas.

use crate::error::TypeError;
use crate::reduce::normalize;
use crate::term::{alpha_rec, fresh_name, subst, Name, Term};
use crate::types::FiniteType;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(FiniteType, Term, Term),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(Name, FiniteType, Box<Formula>),
    Exists(Name, FiniteType, Box<Formula>),
    St(FiniteType, Term),
    ForallSt(Name, FiniteType, Box<Formula>),
    ExistsSt(Name, FiniteType, Box<Formula>),
    /// `∀i < bound Φ`, with `i : 0`.
    BoundedForall(Name, Term, Box<Formula>),
    /// `∃i < bound Φ`, with `i : 0`.
    BoundedExists(Name, Term, Box<Formula>),
    /// `a ∈_σ s`; the type is that of `a`.
    In(FiniteType, Term, Term),
    /// `s ⊆ t`; the type is that of `s` and `t`, either `σ*` or pointwise
    /// `τ → …`.
    SubsetEq(FiniteType, Term, Term),
    /// `hyper(s)`, the type is the element type of `s`.
    Hyper(FiniteType, Term),
    Not(Box<Formula>),
    Bot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub internal: bool,
    pub or_free: bool,
}

impl Formula {
    pub fn eq(ty: FiniteType, l: Term, r: Term) -> Formula {
        Formula::Eq(ty, l, r)
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn forall(x: impl Into<Name>, ty: FiniteType, body: Formula) -> Formula {
        Formula::Forall(x.into(), ty, Box::new(body))
    }

    pub fn exists(x: impl Into<Name>, ty: FiniteType, body: Formula) -> Formula {
        Formula::Exists(x.into(), ty, Box::new(body))
    }

    pub fn forall_st(x: impl Into<Name>, ty: FiniteType, body: Formula) -> Formula {
        Formula::ForallSt(x.into(), ty, Box::new(body))
    }

    pub fn exists_st(x: impl Into<Name>, ty: FiniteType, body: Formula) -> Formula {
        Formula::ExistsSt(x.into(), ty, Box::new(body))
    }

    pub fn bounded_forall(i: impl Into<Name>, bound: Term, body: Formula) -> Formula {
        Formula::BoundedForall(i.into(), bound, Box::new(body))
    }

    pub fn bounded_exists(i: impl Into<Name>, bound: Term, body: Formula) -> Formula {
        Formula::BoundedExists(i.into(), bound, Box::new(body))
    }

    pub fn st(ty: FiniteType, t: Term) -> Formula {
        Formula::St(ty, t)
    }

    /// `0 = S0`.
    pub fn falsum() -> Formula {
        Formula::Eq(FiniteType::Ground, Term::zero(), Term::nat(1))
    }

    /// `0 = 0`.
    pub fn verum() -> Formula {
        Formula::Eq(FiniteType::Ground, Term::zero(), Term::zero())
    }

    pub fn negate(a: Formula) -> Formula {
        Formula::imp(a, Formula::falsum())
    }

    /// `∀x̄ Φ` over a tuple.
    pub fn foralls(xs: &[(Name, FiniteType)], body: Formula) -> Formula {
        xs.iter()
            .rev()
            .fold(body, |acc, (x, t)| Formula::forall(x.clone(), t.clone(), acc))
    }

    pub fn forall_sts(xs: &[(Name, FiniteType)], body: Formula) -> Formula {
        xs.iter()
            .rev()
            .fold(body, |acc, (x, t)| Formula::forall_st(x.clone(), t.clone(), acc))
    }

    pub fn exists_sts(xs: &[(Name, FiniteType)], body: Formula) -> Formula {
        xs.iter()
            .rev()
            .fold(body, |acc, (x, t)| Formula::exists_st(x.clone(), t.clone(), acc))
    }

    /// Immediate subformulas.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => vec![a, b],
            Formula::Forall(_, _, a)
            | Formula::Exists(_, _, a)
            | Formula::ForallSt(_, _, a)
            | Formula::ExistsSt(_, _, a)
            | Formula::BoundedForall(_, _, a)
            | Formula::BoundedExists(_, _, a)
            | Formula::Not(a) => vec![a],
            _ => vec![],
        }
    }

    pub fn classify(&self) -> Classification {
        let (internal, or_free) = match self {
            Formula::St(..) | Formula::ForallSt(..) | Formula::ExistsSt(..) | Formula::Hyper(..) => (false, true),
            Formula::Or(..) => (true, false),
            _ => (true, true),
        };
        self.children()
            .into_iter()
            .fold(Classification { internal, or_free }, |acc, c| {
                let k = c.classify();
                Classification {
                    internal: acc.internal && k.internal,
                    or_free: acc.or_free && k.or_free,
                }
            })
    }

    pub fn is_internal(&self) -> bool {
        self.classify().internal
    }

    pub fn is_sugar_free(&self) -> bool {
        !matches!(
            self,
            Formula::In(..) | Formula::SubsetEq(..) | Formula::Hyper(..) | Formula::Not(_) | Formula::Bot
        ) && self.children().into_iter().all(Formula::is_sugar_free)
    }

    /// Terms occurring directly in this node.
    pub fn terms(&self) -> Vec<&Term> {
        match self {
            Formula::Eq(_, a, b) | Formula::In(_, a, b) | Formula::SubsetEq(_, a, b) => vec![a, b],
            Formula::St(_, a) | Formula::Hyper(_, a) => vec![a],
            Formula::BoundedForall(_, b, _) | Formula::BoundedExists(_, b, _) => vec![b],
            _ => vec![],
        }
    }

    /// Binder introduced by this node.
    pub fn binder(&self) -> Option<(&Name, FiniteType)> {
        match self {
            Formula::Forall(x, t, _)
            | Formula::Exists(x, t, _)
            | Formula::ForallSt(x, t, _)
            | Formula::ExistsSt(x, t, _) => Some((x, t.clone())),
            Formula::BoundedForall(i, _, _) | Formula::BoundedExists(i, _, _) => Some((i, FiniteType::Ground)),
            _ => None,
        }
    }

    pub fn free_vars(&self) -> BTreeMap<Name, FiniteType> {
        let mut out = BTreeMap::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Name>, out: &mut BTreeMap<Name, FiniteType>) {
        for t in self.terms() {
            for (x, ty) in t.free_vars() {
                if !bound.contains(&x) {
                    out.entry(x).or_insert(ty);
                }
            }
        }
        let b = self.binder().map(|(x, _)| x.clone());
        if let Some(x) = &b {
            bound.push(x.clone());
        }
        for c in self.children() {
            c.collect_free(bound, out);
        }
        if b.is_some() {
            bound.pop();
        }
    }

    pub fn has_free(&self, name: &str) -> bool {
        if self.terms().iter().any(|t| t.has_free(name)) {
            return true;
        }
        if self.binder().is_some_and(|(x, _)| x == name) {
            return false;
        }
        self.children().into_iter().any(|c| c.has_free(name))
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_names(&self, out: &mut BTreeSet<Name>) {
        for t in self.terms() {
            t.all_names(out);
        }
        if let Some((x, _)) = self.binder() {
            out.insert(x.clone());
        }
        for c in self.children() {
            c.all_names(out);
        }
    }

    /// Checks every embedded term and the agreement of variable types with
    /// their binders and with each other.
    pub fn check(&self) -> Result<(), TypeError> {
        let mut free = BTreeMap::new();
        self.check_rec(&mut Vec::new(), &mut free)
    }

    fn check_rec(
        &self,
        scope: &mut Vec<(Name, FiniteType)>,
        free: &mut BTreeMap<Name, FiniteType>,
    ) -> Result<(), TypeError> {
        let term_at = |t: &Term, scope: &[(Name, FiniteType)], free: &mut BTreeMap<Name, FiniteType>| {
            let ty = t.infer()?;
            let mut occ = Vec::new();
            t.free_occurrences(&mut occ);
            for (x, xt) in occ {
                let declared = match scope.iter().rev().find(|(y, _)| *y == x) {
                    Some((_, d)) => d.clone(),
                    None => free.entry(x.clone()).or_insert_with(|| xt.clone()).clone(),
                };
                if declared != xt {
                    return Err(TypeError::VariableTypeConflict {
                        name: x,
                        declared,
                        found: xt,
                    });
                }
            }
            Ok::<FiniteType, TypeError>(ty)
        };
        let expect = |what: &str, want: &FiniteType, got: FiniteType| {
            if *want == got {
                Ok(())
            } else {
                Err(TypeError::ill_typed(what.to_string(), want, got))
            }
        };
        match self {
            Formula::Eq(ty, a, b) => {
                expect(&format!("left side of {self}"), ty, term_at(a, scope, free)?)?;
                expect(&format!("right side of {self}"), ty, term_at(b, scope, free)?)?;
            }
            Formula::St(ty, a) => expect(&format!("{self}"), ty, term_at(a, scope, free)?)?,
            Formula::In(ty, a, s) => {
                expect(&format!("element of {self}"), ty, term_at(a, scope, free)?)?;
                let st = FiniteType::star(ty.clone());
                expect(&format!("sequence of {self}"), &st, term_at(s, scope, free)?)?;
            }
            Formula::SubsetEq(ty, a, b) => {
                if subset_shape(ty).is_none() {
                    return Err(TypeError::ill_typed(
                        format!("{self}"),
                        "a sequence type or a function into one",
                        ty,
                    ));
                }
                expect(&format!("left side of {self}"), ty, term_at(a, scope, free)?)?;
                expect(&format!("right side of {self}"), ty, term_at(b, scope, free)?)?;
            }
            Formula::Hyper(ty, s) => {
                let st = FiniteType::star(ty.clone());
                expect(&format!("{self}"), &st, term_at(s, scope, free)?)?;
            }
            Formula::BoundedForall(_, b, _) | Formula::BoundedExists(_, b, _) => {
                expect(
                    &format!("bound of {self}"),
                    &FiniteType::Ground,
                    term_at(b, scope, free)?,
                )?;
            }
            _ => {}
        }
        let pushed = self.binder().map(|(x, t)| (x.clone(), t));
        if let Some(p) = pushed.clone() {
            scope.push(p);
        }
        let r = self.children().into_iter().try_for_each(|c| c.check_rec(scope, free));
        if pushed.is_some() {
            scope.pop();
        }
        r
    }

    /// Expands `∈`, `⊆`, `hyper`, `¬` and `⊥`.
    pub fn desugar(&self) -> Formula {
        let mut taken = BTreeSet::new();
        self.all_names(&mut taken);
        self.desugar_with(&mut taken)
    }

    fn desugar_with(&self, taken: &mut BTreeSet<Name>) -> Formula {
        let d = |f: &Formula, taken: &mut BTreeSet<Name>| Box::new(f.desugar_with(taken));
        match self {
            Formula::In(ty, a, s) => membership(ty, a, s, taken),
            Formula::SubsetEq(ty, s, t) => {
                let (args, elem) = subset_shape(ty).expect("checked subset type");
                let mut binders = Vec::new();
                let (mut s2, mut t2) = (s.clone(), t.clone());
                for a in args {
                    let x = fresh(taken, "x");
                    let xv = Term::var(x.clone(), a.clone());
                    s2 = Term::app(s2, xv.clone());
                    t2 = Term::app(t2, xv);
                    binders.push((x, a.clone()));
                }
                let x = fresh(taken, "x");
                let xv = Term::var(x.clone(), elem.clone());
                let body = Formula::imp(membership(&elem, &xv, &s2, taken), membership(&elem, &xv, &t2, taken));
                binders.push((x, elem));
                Formula::foralls(&binders, body)
            }
            Formula::Hyper(ty, s) => {
                let x = fresh(taken, "x");
                let xv = Term::var(x.clone(), ty.clone());
                Formula::forall_st(x, ty.clone(), membership(ty, &xv, s, taken))
            }
            Formula::Not(a) => Formula::imp(a.desugar_with(taken), Formula::falsum()),
            Formula::Bot => Formula::falsum(),
            Formula::And(a, b) => Formula::And(d(a, taken), d(b, taken)),
            Formula::Or(a, b) => Formula::Or(d(a, taken), d(b, taken)),
            Formula::Imp(a, b) => Formula::Imp(d(a, taken), d(b, taken)),
            Formula::Forall(x, t, a) => Formula::Forall(x.clone(), t.clone(), d(a, taken)),
            Formula::Exists(x, t, a) => Formula::Exists(x.clone(), t.clone(), d(a, taken)),
            Formula::ForallSt(x, t, a) => Formula::ForallSt(x.clone(), t.clone(), d(a, taken)),
            Formula::ExistsSt(x, t, a) => Formula::ExistsSt(x.clone(), t.clone(), d(a, taken)),
            Formula::BoundedForall(i, b, a) => Formula::BoundedForall(i.clone(), b.clone(), d(a, taken)),
            Formula::BoundedExists(i, b, a) => Formula::BoundedExists(i.clone(), b.clone(), d(a, taken)),
            Formula::Eq(..) | Formula::St(..) => self.clone(),
        }
    }

    /// Capture-avoiding `self[replacement/var]`, checking types.
    pub fn substitute(&self, var: &str, replacement: &Term) -> Result<Formula, TypeError> {
        let rt = replacement.infer()?;
        if let Some(decl) = self.free_vars().get(var) {
            if *decl != rt {
                return Err(TypeError::TypeMismatch {
                    var: var.to_string(),
                    expected: decl.clone(),
                    found: rt,
                });
            }
        }
        Ok(self.subst(var, replacement))
    }

    /// Unchecked capture-avoiding substitution.
    pub fn subst(&self, var: &str, r: &Term) -> Formula {
        if !self.has_free(var) {
            return self.clone();
        }
        let rfv: BTreeSet<Name> = r.free_vars().into_keys().collect();
        self.subst_rec(var, r, &rfv)
    }

    fn subst_rec(&self, var: &str, r: &Term, rfv: &BTreeSet<Name>) -> Formula {
        let st = |t: &Term| subst(t, var, r);
        let sf = |f: &Formula| Box::new(f.subst_rec(var, r, rfv));
        match self {
            Formula::Eq(ty, a, b) => Formula::Eq(ty.clone(), st(a), st(b)),
            Formula::In(ty, a, b) => Formula::In(ty.clone(), st(a), st(b)),
            Formula::SubsetEq(ty, a, b) => Formula::SubsetEq(ty.clone(), st(a), st(b)),
            Formula::St(ty, a) => Formula::St(ty.clone(), st(a)),
            Formula::Hyper(ty, a) => Formula::Hyper(ty.clone(), st(a)),
            Formula::Bot => Formula::Bot,
            Formula::Not(a) => Formula::Not(sf(a)),
            Formula::And(a, b) => Formula::And(sf(a), sf(b)),
            Formula::Or(a, b) => Formula::Or(sf(a), sf(b)),
            Formula::Imp(a, b) => Formula::Imp(sf(a), sf(b)),
            _ => {
                let (x, xt) = self.binder().expect("binder node");
                let x = x.clone();
                let body = self.children()[0];
                let bound = match self {
                    Formula::BoundedForall(_, b, _) | Formula::BoundedExists(_, b, _) => Some(st(b)),
                    _ => None,
                };
                if x == var || !body.has_free(var) {
                    return self.with_binder(x, bound, body.clone());
                }
                if rfv.contains(&x) {
                    let mut avoid = BTreeSet::new();
                    body.all_names(&mut avoid);
                    let y = fresh_name(&x, |c| rfv.contains(c) || avoid.contains(c) || c == var);
                    let renamed = body.subst(&x, &Term::var(y.clone(), xt));
                    self.with_binder(y, bound, renamed.subst_rec(var, r, rfv))
                } else {
                    self.with_binder(x, bound, body.subst_rec(var, r, rfv))
                }
            }
        }
    }

    /// Rebuilds a binder node with a new name, bound and body.
    fn with_binder(&self, x: Name, bound: Option<Term>, body: Formula) -> Formula {
        let b = Box::new(body);
        match self {
            Formula::Forall(_, t, _) => Formula::Forall(x, t.clone(), b),
            Formula::Exists(_, t, _) => Formula::Exists(x, t.clone(), b),
            Formula::ForallSt(_, t, _) => Formula::ForallSt(x, t.clone(), b),
            Formula::ExistsSt(_, t, _) => Formula::ExistsSt(x, t.clone(), b),
            Formula::BoundedForall(..) => Formula::BoundedForall(x, bound.expect("bound"), b),
            Formula::BoundedExists(..) => Formula::BoundedExists(x, bound.expect("bound"), b),
            _ => unreachable!("not a binder node"),
        }
    }

    /// Applies `f` to every embedded term.
    pub fn map_terms(&self, f: &impl Fn(&Term) -> Term) -> Formula {
        let m = |g: &Formula| Box::new(g.map_terms(f));
        match self {
            Formula::Eq(ty, a, b) => Formula::Eq(ty.clone(), f(a), f(b)),
            Formula::In(ty, a, b) => Formula::In(ty.clone(), f(a), f(b)),
            Formula::SubsetEq(ty, a, b) => Formula::SubsetEq(ty.clone(), f(a), f(b)),
            Formula::St(ty, a) => Formula::St(ty.clone(), f(a)),
            Formula::Hyper(ty, a) => Formula::Hyper(ty.clone(), f(a)),
            Formula::Bot => Formula::Bot,
            Formula::Not(a) => Formula::Not(m(a)),
            Formula::And(a, b) => Formula::And(m(a), m(b)),
            Formula::Or(a, b) => Formula::Or(m(a), m(b)),
            Formula::Imp(a, b) => Formula::Imp(m(a), m(b)),
            Formula::Forall(x, t, a) => Formula::Forall(x.clone(), t.clone(), m(a)),
            Formula::Exists(x, t, a) => Formula::Exists(x.clone(), t.clone(), m(a)),
            Formula::ForallSt(x, t, a) => Formula::ForallSt(x.clone(), t.clone(), m(a)),
            Formula::ExistsSt(x, t, a) => Formula::ExistsSt(x.clone(), t.clone(), m(a)),
            Formula::BoundedForall(i, b, a) => Formula::BoundedForall(i.clone(), f(b), m(a)),
            Formula::BoundedExists(i, b, a) => Formula::BoundedExists(i.clone(), f(b), m(a)),
        }
    }

    /// Every embedded term in normal form.
    pub fn normalize_terms(&self) -> Formula {
        self.map_terms(&normalize)
    }

    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
            + self.terms().into_iter().map(Term::size).sum::<usize>()
    }
}

/// Argument types and element type of a `⊆`-comparable type.
fn subset_shape(ty: &FiniteType) -> Option<(Vec<FiniteType>, FiniteType)> {
    match ty {
        FiniteType::Star(e) => Some((Vec::new(), (**e).clone())),
        FiniteType::Arrow(a, b) => {
            let (mut args, e) = subset_shape(b)?;
            args.insert(0, (**a).clone());
            Some((args, e))
        }
        FiniteType::Ground => None,
    }
}

fn fresh(taken: &mut BTreeSet<Name>, base: &str) -> Name {
    let x = fresh_name(base, |c| taken.contains(c));
    taken.insert(x.clone());
    x
}

/// `∃i<|s| (a =_σ s_i)`, with `i` fresh for `taken`.
pub fn membership(ty: &FiniteType, a: &Term, s: &Term, taken: &mut BTreeSet<Name>) -> Formula {
    let i = fresh(taken, "i");
    let iv = Term::var(i.clone(), FiniteType::Ground);
    Formula::bounded_exists(
        i,
        Term::len(ty.clone(), s.clone()),
        Formula::Eq(ty.clone(), a.clone(), Term::proj(ty.clone(), s.clone(), iv)),
    )
}

/// Equality up to renaming of bound variables, in formulas and terms alike.
pub fn alpha_eq_formula(a: &Formula, b: &Formula) -> bool {
    alpha_f(a, b, &mut Vec::new(), &mut Vec::new())
}

fn alpha_f(a: &Formula, b: &Formula, la: &mut Vec<Name>, lb: &mut Vec<Name>) -> bool {
    use std::mem::discriminant;
    if discriminant(a) != discriminant(b) {
        return false;
    }
    let type_params_agree = match (a, b) {
        (Formula::Eq(s, ..), Formula::Eq(t, ..))
        | (Formula::St(s, _), Formula::St(t, _))
        | (Formula::In(s, ..), Formula::In(t, ..))
        | (Formula::SubsetEq(s, ..), Formula::SubsetEq(t, ..))
        | (Formula::Hyper(s, _), Formula::Hyper(t, _)) => s == t,
        _ => true,
    };
    if !type_params_agree {
        return false;
    }
    let (ta, tb) = (a.terms(), b.terms());
    if !ta.iter().zip(&tb).all(|(x, y)| alpha_rec(x, y, la, lb)) {
        return false;
    }
    let pushed = match (a.binder(), b.binder()) {
        (Some((x, s)), Some((y, t))) => {
            if s != t {
                return false;
            }
            la.push(x.clone());
            lb.push(y.clone());
            true
        }
        _ => false,
    };
    let r = a
        .children()
        .into_iter()
        .zip(b.children())
        .all(|(x, y)| alpha_f(x, y, la, lb));
    if pushed {
        la.pop();
        lb.pop();
    }
    r
}

/// Alpha-equality after normalizing every embedded term.
pub fn convertible_formula(a: &Formula, b: &Formula) -> bool {
    alpha_eq_formula(a, b) || alpha_eq_formula(&a.normalize_terms(), &b.normalize_terms())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n() -> FiniteType {
        FiniteType::Ground
    }

    fn v(x: &str) -> Term {
        Term::var(x, n())
    }

    #[test]
    fn classification() {
        let e = Formula::eq(n(), v("x"), v("y"));
        assert_eq!(
            e.classify(),
            Classification {
                internal: true,
                or_free: true
            }
        );
        assert!(!Formula::st(n(), v("x")).classify().internal);
        let o = Formula::or(e.clone(), e);
        assert_eq!(
            o.classify(),
            Classification {
                internal: true,
                or_free: false
            }
        );
    }

    #[test]
    fn membership_desugars_to_bounded_exists() {
        let s = Term::var("s", FiniteType::star(n()));
        let f = Formula::In(n(), v("a"), s.clone()).desugar();
        let expect = Formula::bounded_exists(
            "i",
            Term::len(n(), s.clone()),
            Formula::eq(n(), v("a"), Term::proj(n(), s, v("i"))),
        );
        assert_eq!(f, expect);
    }

    #[test]
    fn hyper_is_external() {
        let s = Term::var("s", FiniteType::star(n()));
        let h = Formula::Hyper(n(), s);
        let d = h.desugar();
        assert!(matches!(d, Formula::ForallSt(..)));
        assert!(!d.is_internal());
        assert_eq!(d.desugar(), d);
        assert!(d.is_sugar_free());
    }

    #[test]
    fn pointwise_subset() {
        let ty = FiniteType::arrow(n(), FiniteType::star(n()));
        let f = Formula::SubsetEq(ty.clone(), Term::var("f", ty.clone()), Term::var("g", ty));
        let d = f.desugar();
        assert!(f.check().is_ok());
        assert!(d.check().is_ok());
        match &d {
            Formula::Forall(_, a, inner) => {
                assert_eq!(*a, n());
                assert!(matches!(**inner, Formula::Forall(..)));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_vars_and_subst() {
        let f = Formula::forall("x", n(), Formula::eq(n(), v("x"), v("y")));
        let fv = f.free_vars();
        assert_eq!(fv.len(), 1);
        assert_eq!(fv.get("y"), Some(&n()));
        let g = Formula::eq(n(), v("x"), v("y")).substitute("y", &Term::zero()).unwrap();
        assert_eq!(g, Formula::eq(n(), v("x"), Term::zero()));
    }

    #[test]
    fn subst_renames_binder() {
        let f = Formula::forall("x", n(), Formula::eq(n(), v("x"), v("y")));
        let g = f.substitute("y", &v("x")).unwrap();
        match &g {
            Formula::Forall(b, _, body) => {
                assert_ne!(b, "x");
                assert_eq!(**body, Formula::eq(n(), v(b), v("x")));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn conflicting_variable_types() {
        let f = Formula::and(
            Formula::eq(n(), v("x"), v("x")),
            Formula::St(FiniteType::star(n()), Term::var("x", FiniteType::star(n()))),
        );
        assert!(matches!(f.check(), Err(TypeError::VariableTypeConflict { .. })));
    }

    #[test]
    fn alpha_equality_of_formulas() {
        let a = Formula::forall("x", n(), Formula::eq(n(), v("x"), v("y")));
        let b = Formula::forall("z", n(), Formula::eq(n(), v("z"), v("y")));
        let c = Formula::forall("z", n(), Formula::eq(n(), v("z"), v("w")));
        assert!(alpha_eq_formula(&a, &b));
        assert!(!alpha_eq_formula(&a, &c));
    }
}
