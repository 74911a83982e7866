//! Typed λ-terms with the recursors and sequence constants.
//!
//! Variables carry their type, so every term synthesizes its own type without
//! a context. [`type_check`] additionally checks free variables against a
//! declared context.

use crate::error::TypeError;
use crate::types::FiniteType;
use std::collections::{BTreeMap, BTreeSet, HashMap};

pub type Name = String;

/// Primitive and derived constants. Type parameters follow the schemas
/// documented on [`Const::ty`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Const {
    Zero,
    Succ,
    /// `R_σ : σ → (0 → σ → σ) → 0 → σ`
    NatRec(FiniteType),
    /// `L_{σ,τ} : σ → (σ → τ → σ) → τ* → σ`
    ListRec(FiniteType, FiniteType),
    /// `⟨⟩_σ : σ*`
    Nil(FiniteType),
    /// `C : σ → σ* → σ*`
    Cons(FiniteType),
    /// `∅_σ : σ`
    Default(FiniteType),
    /// `|·| : σ* → 0`
    Len(FiniteType),
    /// `s_i : σ* → 0 → σ`
    Proj(FiniteType),
    /// `· : σ* → σ* → σ*`
    Concat(FiniteType),
    /// `s[a] : (σ → τ*)* → σ → τ*`
    SeqApp(FiniteType, FiniteType),
    /// `⟨z⟩ : σ → σ*`
    Singleton(FiniteType),
}

impl Const {
    pub fn ty(&self) -> FiniteType {
        use FiniteType as T;
        let n = T::Ground;
        match self {
            Const::Zero => n,
            Const::Succ => T::arrow(n.clone(), n),
            Const::NatRec(s) => T::arrows([s, &T::arrows([&n, s], s.clone()), &n], s.clone()),
            Const::ListRec(s, t) => T::arrows([s, &T::arrows([s, t], s.clone()), &T::star(t.clone())], s.clone()),
            Const::Nil(s) => T::star(s.clone()),
            Const::Cons(s) => T::arrows([s, &T::star(s.clone())], T::star(s.clone())),
            Const::Default(s) => s.clone(),
            Const::Len(s) => T::arrow(T::star(s.clone()), n),
            Const::Proj(s) => T::arrows([&T::star(s.clone()), &n], s.clone()),
            Const::Concat(s) => {
                let ss = T::star(s.clone());
                T::arrows([&ss, &ss], ss.clone())
            }
            Const::SeqApp(s, t) => {
                let ts = T::star(t.clone());
                T::arrows([&T::star(T::arrow(s.clone(), ts.clone())), s], ts)
            }
            Const::Singleton(s) => T::arrow(s.clone(), T::star(s.clone())),
        }
    }

    /// Number of arguments after which the constant has a reduction rule.
    pub fn arity(&self) -> usize {
        match self {
            Const::Zero | Const::Nil(_) | Const::Default(_) => 0,
            Const::Succ | Const::Len(_) | Const::Singleton(_) => 1,
            Const::Cons(_) | Const::Proj(_) | Const::Concat(_) | Const::SeqApp(..) => 2,
            Const::NatRec(_) | Const::ListRec(..) => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Name, FiniteType),
    Lam(Name, FiniteType, Box<Term>),
    App(Box<Term>, Box<Term>),
    Const(Const),
    /// `Λx:σ.t := C(λx:σ.t)⟨⟩`, with `t : τ*`.
    SeqAbs(Name, FiniteType, Box<Term>),
}

impl Term {
    pub fn var(name: impl Into<Name>, ty: FiniteType) -> Term {
        Term::Var(name.into(), ty)
    }

    pub fn lam(name: impl Into<Name>, ty: FiniteType, body: Term) -> Term {
        Term::Lam(name.into(), ty, Box::new(body))
    }

    pub fn seq_abs(name: impl Into<Name>, ty: FiniteType, body: Term) -> Term {
        Term::SeqAbs(name.into(), ty, Box::new(body))
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(f, Term::app)
    }

    /// `λx̄. body`
    pub fn lams(binders: &[(Name, FiniteType)], body: Term) -> Term {
        binders
            .iter()
            .rev()
            .fold(body, |acc, (x, t)| Term::lam(x.clone(), t.clone(), acc))
    }

    /// `Λx̄. body`
    pub fn seq_abss(binders: &[(Name, FiniteType)], body: Term) -> Term {
        binders
            .iter()
            .rev()
            .fold(body, |acc, (x, t)| Term::seq_abs(x.clone(), t.clone(), acc))
    }

    pub fn zero() -> Term {
        Term::Const(Const::Zero)
    }

    pub fn succ(t: Term) -> Term {
        Term::app(Term::Const(Const::Succ), t)
    }

    pub fn nat(n: u64) -> Term {
        (0..n).fold(Term::zero(), |acc, _| Term::succ(acc))
    }

    pub fn nil(elem: FiniteType) -> Term {
        Term::Const(Const::Nil(elem))
    }

    pub fn cons(elem: FiniteType, head: Term, tail: Term) -> Term {
        Term::apps(Term::Const(Const::Cons(elem)), [head, tail])
    }

    /// Cons spine `C t0 (C t1 … ⟨⟩)`.
    pub fn seq(elem: FiniteType, items: impl IntoIterator<Item = Term>) -> Term {
        let items: Vec<Term> = items.into_iter().collect();
        items
            .into_iter()
            .rev()
            .fold(Term::nil(elem.clone()), |acc, t| Term::cons(elem.clone(), t, acc))
    }

    pub fn default_of(ty: FiniteType) -> Term {
        Term::Const(Const::Default(ty))
    }

    pub fn len(elem: FiniteType, s: Term) -> Term {
        Term::app(Term::Const(Const::Len(elem)), s)
    }

    pub fn proj(elem: FiniteType, s: Term, i: Term) -> Term {
        Term::apps(Term::Const(Const::Proj(elem)), [s, i])
    }

    pub fn concat(elem: FiniteType, s: Term, t: Term) -> Term {
        Term::apps(Term::Const(Const::Concat(elem)), [s, t])
    }

    pub fn singleton(elem: FiniteType, t: Term) -> Term {
        Term::app(Term::Const(Const::Singleton(elem)), t)
    }

    /// `s[a]` where `s : (arg → res*)*`.
    pub fn seq_app(arg: FiniteType, res: FiniteType, s: Term, a: Term) -> Term {
        Term::apps(Term::Const(Const::SeqApp(arg, res)), [s, a])
    }

    pub fn nat_rec(ty: FiniteType, base: Term, step: Term, n: Term) -> Term {
        Term::apps(Term::Const(Const::NatRec(ty)), [base, step, n])
    }

    /// `x + y`, by recursion on `y`.
    pub fn plus(x: Term, y: Term) -> Term {
        let n = FiniteType::Ground;
        let step = Term::lams(
            &[("n".into(), n.clone()), ("m".into(), n.clone())],
            Term::succ(Term::var("m", n.clone())),
        );
        Term::nat_rec(n, x, step, y)
    }

    /// Head and arguments of an application spine.
    pub fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut t = self;
        while let Term::App(f, a) = t {
            args.push(&**a);
            t = f;
        }
        args.reverse();
        (t, args)
    }

    pub fn into_spine(self) -> (Term, Vec<Term>) {
        let mut args = Vec::new();
        let mut t = self;
        while let Term::App(f, a) = t {
            args.push(*a);
            t = *f;
        }
        args.reverse();
        (t, args)
    }

    /// Reads `Sⁿ 0` back as `n`.
    pub fn as_numeral(&self) -> Option<u64> {
        let mut n = 0u64;
        let mut t = self;
        loop {
            match t {
                Term::Const(Const::Zero) => return Some(n),
                Term::App(f, a) if matches!(**f, Term::Const(Const::Succ)) => {
                    n += 1;
                    t = a;
                }
                _ => return None,
            }
        }
    }

    /// Reads a `C`/`⟨⟩` spine back as its element list.
    pub fn as_seq_spine(&self) -> Option<(FiniteType, Vec<&Term>)> {
        let mut items = Vec::new();
        let mut t = self;
        loop {
            match t {
                Term::Const(Const::Nil(e)) => return Some((e.clone(), items)),
                _ => {
                    let (h, args) = t.spine();
                    match (h, args.as_slice()) {
                        (Term::Const(Const::Cons(_)), [x, rest]) => {
                            items.push(*x);
                            t = rest;
                        }
                        _ => return None,
                    }
                }
            }
        }
    }

    /// Synthesizes the type, using the annotations carried by variables.
    pub fn infer(&self) -> Result<FiniteType, TypeError> {
        infer_in(self, &mut Vec::new(), None)
    }

    /// Synthesized type; panics on ill-typed terms. For terms built by the
    /// library from well-typed parts.
    pub fn ty(&self) -> FiniteType {
        self.infer()
            .unwrap_or_else(|e| panic!("internal: ill-typed term {self}: {e}"))
    }

    pub fn free_vars(&self) -> BTreeMap<Name, FiniteType> {
        let mut out = BTreeMap::new();
        collect_free(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn has_free(&self, name: &str) -> bool {
        match self {
            Term::Var(x, _) => x == name,
            Term::Lam(x, _, b) | Term::SeqAbs(x, _, b) => x != name && b.has_free(name),
            Term::App(f, a) => f.has_free(name) || a.has_free(name),
            Term::Const(_) => false,
        }
    }

    /// Every variable name occurring in the term, bound or free.
    pub fn all_names(&self, out: &mut BTreeSet<Name>) {
        match self {
            Term::Var(x, _) => {
                out.insert(x.clone());
            }
            Term::Lam(x, _, b) | Term::SeqAbs(x, _, b) => {
                out.insert(x.clone());
                b.all_names(out);
            }
            Term::App(f, a) => {
                f.all_names(out);
                a.all_names(out);
            }
            Term::Const(_) => {}
        }
    }

    /// Free variable occurrences, with repetitions, in left-to-right order.
    pub fn free_occurrences(&self, out: &mut Vec<(Name, FiniteType)>) {
        fn go(t: &Term, bound: &mut Vec<Name>, out: &mut Vec<(Name, FiniteType)>) {
            match t {
                Term::Var(x, ty) => {
                    if !bound.contains(x) {
                        out.push((x.clone(), ty.clone()));
                    }
                }
                Term::Lam(x, _, b) | Term::SeqAbs(x, _, b) => {
                    bound.push(x.clone());
                    go(b, bound, out);
                    bound.pop();
                }
                Term::App(f, a) => {
                    go(f, bound, out);
                    go(a, bound, out);
                }
                Term::Const(_) => {}
            }
        }
        go(self, &mut Vec::new(), out)
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(..) | Term::Const(_) => 1,
            Term::Lam(_, _, b) | Term::SeqAbs(_, _, b) => 1 + b.size(),
            Term::App(f, a) => 1 + f.size() + a.size(),
        }
    }
}

fn infer_in(
    t: &Term,
    scope: &mut Vec<(Name, FiniteType)>,
    ctx: Option<&HashMap<Name, FiniteType>>,
) -> Result<FiniteType, TypeError> {
    match t {
        Term::Var(x, ty) => {
            if let Some((_, bound)) = scope.iter().rev().find(|(y, _)| y == x) {
                if bound != ty {
                    return Err(TypeError::VariableTypeConflict {
                        name: x.clone(),
                        declared: bound.clone(),
                        found: ty.clone(),
                    });
                }
            } else if let Some(ctx) = ctx {
                match ctx.get(x) {
                    None => return Err(TypeError::UnboundVariable(x.clone())),
                    Some(d) if d != ty => {
                        return Err(TypeError::VariableTypeConflict {
                            name: x.clone(),
                            declared: d.clone(),
                            found: ty.clone(),
                        })
                    }
                    Some(_) => {}
                }
            }
            Ok(ty.clone())
        }
        Term::Lam(x, ty, body) => {
            scope.push((x.clone(), ty.clone()));
            let b = infer_in(body, scope, ctx);
            scope.pop();
            Ok(FiniteType::arrow(ty.clone(), b?))
        }
        Term::SeqAbs(x, ty, body) => {
            scope.push((x.clone(), ty.clone()));
            let b = infer_in(body, scope, ctx);
            scope.pop();
            let b = b?;
            if !b.is_star() {
                return Err(TypeError::ill_typed(
                    format!("body of sequence abstraction over `{x}`"),
                    "a sequence type",
                    b,
                ));
            }
            Ok(FiniteType::star(FiniteType::arrow(ty.clone(), b)))
        }
        Term::App(f, a) => {
            let ft = infer_in(f, scope, ctx)?;
            let at = infer_in(a, scope, ctx)?;
            match ft {
                FiniteType::Arrow(dom, cod) => {
                    if *dom == at {
                        Ok(*cod)
                    } else {
                        Err(TypeError::ill_typed(format!("argument of {f}"), dom, at))
                    }
                }
                other => Err(TypeError::ill_typed(
                    format!("head of application {t}"),
                    "an arrow type",
                    other,
                )),
            }
        }
        Term::Const(c) => Ok(c.ty()),
    }
}

/// Checks `term` against a context of declared free variables and returns its
/// type.
pub fn type_check(term: &Term, context: &HashMap<Name, FiniteType>) -> Result<FiniteType, TypeError> {
    infer_in(term, &mut Vec::new(), Some(context))
}

fn collect_free(t: &Term, bound: &mut Vec<Name>, out: &mut BTreeMap<Name, FiniteType>) {
    match t {
        Term::Var(x, ty) => {
            if !bound.contains(x) {
                out.entry(x.clone()).or_insert_with(|| ty.clone());
            }
        }
        Term::Lam(x, _, b) | Term::SeqAbs(x, _, b) => {
            bound.push(x.clone());
            collect_free(b, bound, out);
            bound.pop();
        }
        Term::App(f, a) => {
            collect_free(f, bound, out);
            collect_free(a, bound, out);
        }
        Term::Const(_) => {}
    }
}

/// First name of the form `root`, `root1`, `root2`, … rejected by neither
/// `taken`. `root` is `base` with trailing digits removed.
pub fn fresh_name(base: &str, taken: impl Fn(&str) -> bool) -> Name {
    let root = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let root = if root.is_empty() { "v" } else { root };
    if !taken(root) {
        return root.to_string();
    }
    (1..)
        .map(|i| format!("{root}{i}"))
        .find(|c| !taken(c))
        .expect("unbounded name supply")
}

/// Capture-avoiding substitution `term[replacement/var]`, checking that the
/// replacement has the variable's type.
pub fn substitute(term: &Term, var: &str, replacement: &Term) -> Result<Term, TypeError> {
    let rt = replacement.infer()?;
    if let Some(decl) = declared_type(term, var) {
        if decl != rt {
            return Err(TypeError::TypeMismatch {
                var: var.to_string(),
                expected: decl,
                found: rt,
            });
        }
    }
    Ok(subst(term, var, replacement))
}

fn declared_type(t: &Term, var: &str) -> Option<FiniteType> {
    t.free_vars().remove(var)
}

/// Unchecked capture-avoiding substitution.
pub fn subst(term: &Term, var: &str, replacement: &Term) -> Term {
    if !term.has_free(var) {
        return term.clone();
    }
    let fv: BTreeSet<Name> = replacement.free_vars().into_keys().collect();
    subst_rec(term, var, replacement, &fv)
}

fn subst_rec(t: &Term, var: &str, r: &Term, rfv: &BTreeSet<Name>) -> Term {
    match t {
        Term::Var(x, _) => {
            if x == var {
                r.clone()
            } else {
                t.clone()
            }
        }
        Term::App(f, a) => Term::app(subst_rec(f, var, r, rfv), subst_rec(a, var, r, rfv)),
        Term::Const(_) => t.clone(),
        Term::Lam(x, ty, b) | Term::SeqAbs(x, ty, b) => {
            let rebuild = |x: Name, b: Term| match t {
                Term::Lam(..) => Term::lam(x, ty.clone(), b),
                _ => Term::seq_abs(x, ty.clone(), b),
            };
            if x == var || !b.has_free(var) {
                return t.clone();
            }
            if rfv.contains(x) {
                let mut avoid = BTreeSet::new();
                b.all_names(&mut avoid);
                let y = fresh_name(x, |c| rfv.contains(c) || avoid.contains(c) || c == var);
                let b2 = subst(b, x, &Term::var(y.clone(), ty.clone()));
                rebuild(y, subst_rec(&b2, var, r, rfv))
            } else {
                rebuild(x.clone(), subst_rec(b, var, r, rfv))
            }
        }
    }
}

/// Equality up to consistent renaming of bound variables.
pub fn alpha_eq(t: &Term, u: &Term) -> bool {
    alpha_rec(t, u, &mut Vec::new(), &mut Vec::new())
}

pub(crate) fn alpha_rec(t: &Term, u: &Term, lt: &mut Vec<Name>, lu: &mut Vec<Name>) -> bool {
    match (t, u) {
        (Term::Var(x, tx), Term::Var(y, ty)) => {
            let ix = lt.iter().rposition(|n| n == x);
            let iy = lu.iter().rposition(|n| n == y);
            match (ix, iy) {
                (Some(i), Some(j)) => lt.len() - i == lu.len() - j,
                (None, None) => x == y && tx == ty,
                _ => false,
            }
        }
        (Term::Lam(x, tx, b), Term::Lam(y, ty, c)) | (Term::SeqAbs(x, tx, b), Term::SeqAbs(y, ty, c)) => {
            if tx != ty {
                return false;
            }
            lt.push(x.clone());
            lu.push(y.clone());
            let r = alpha_rec(b, c, lt, lu);
            lt.pop();
            lu.pop();
            r
        }
        (Term::App(f, a), Term::App(g, b)) => alpha_rec(f, g, lt, lu) && alpha_rec(a, b, lt, lu),
        (Term::Const(c), Term::Const(d)) => c == d,
        _ => false,
    }
}

/// Canonical closed inhabitant used for `∅_σ`.
pub fn default_term(ty: &FiniteType) -> Term {
    match ty {
        FiniteType::Ground => Term::zero(),
        FiniteType::Star(e) => Term::nil((**e).clone()),
        FiniteType::Arrow(a, b) => Term::lam("d", (**a).clone(), default_term(b)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use FiniteType as T;

    fn n() -> T {
        T::Ground
    }

    #[test]
    fn cons_type() {
        assert_eq!(
            Term::Const(Const::Cons(n())).infer().unwrap(),
            T::arrows([&n(), &T::star(n())], T::star(n()))
        );
    }

    #[test]
    fn zero_applied_is_ill_typed() {
        let t = Term::app(Term::zero(), Term::zero());
        assert!(matches!(t.infer(), Err(TypeError::IllTyped { .. })));
    }

    #[test]
    fn seq_abs_type() {
        let body = Term::seq(n(), [Term::var("x", n())]);
        let t = Term::seq_abs("x", n(), body);
        assert_eq!(t.infer().unwrap(), T::star(T::arrow(n(), T::star(n()))));
    }

    #[test]
    fn seq_abs_needs_sequence_body() {
        let t = Term::seq_abs("x", n(), Term::var("x", n()));
        assert!(t.infer().is_err());
    }

    #[test]
    fn unbound_in_context() {
        let ctx = HashMap::new();
        assert_eq!(
            type_check(&Term::var("x", n()), &ctx),
            Err(TypeError::UnboundVariable("x".into()))
        );
        let mut ctx = HashMap::new();
        ctx.insert("x".to_string(), n());
        assert_eq!(type_check(&Term::var("x", n()), &ctx), Ok(n()));
    }

    #[test]
    fn subst_base_case() {
        let r = substitute(&Term::var("x", n()), "x", &Term::zero()).unwrap();
        assert_eq!(r, Term::zero());
    }

    #[test]
    fn subst_avoids_capture() {
        let t = Term::lam("y", n(), Term::var("x", n()));
        let r = substitute(&t, "x", &Term::var("y", n())).unwrap();
        match &r {
            Term::Lam(b, _, body) => {
                assert_ne!(b, "y");
                assert_eq!(**body, Term::var("y", n()));
            }
            _ => panic!("{r:?}"),
        }
    }

    #[test]
    fn subst_respects_shadowing() {
        let t = Term::lam("x", n(), Term::var("x", n()));
        assert_eq!(substitute(&t, "x", &Term::zero()).unwrap(), t);
    }

    #[test]
    fn subst_type_mismatch() {
        let r = substitute(&Term::var("x", n()), "x", &Term::nil(n()));
        assert!(matches!(r, Err(TypeError::TypeMismatch { .. })));
    }

    #[test]
    fn alpha_examples() {
        let id_x = Term::lam("x", n(), Term::var("x", n()));
        let id_y = Term::lam("y", n(), Term::var("y", n()));
        assert!(alpha_eq(&id_x, &id_y));
        assert!(!alpha_eq(&Term::var("x", n()), &Term::var("y", n())));
        let k1 = Term::lam("x", n(), Term::lam("y", n(), Term::var("x", n())));
        let k2 = Term::lam("a", n(), Term::lam("b", n(), Term::var("a", n())));
        let k3 = Term::lam("a", n(), Term::lam("b", n(), Term::var("b", n())));
        assert!(alpha_eq(&k1, &k2));
        assert!(!alpha_eq(&k1, &k3));
    }

    #[test]
    fn numerals_round_trip() {
        for k in 0..6 {
            assert_eq!(Term::nat(k).as_numeral(), Some(k));
        }
    }

    #[test]
    fn fresh_names_skip_taken() {
        assert_eq!(fresh_name("y", |c| c == "y"), "y1");
        assert_eq!(fresh_name("y3", |_| false), "y");
        assert_eq!(fresh_name("s", |c| c == "s" || c == "s1"), "s2");
    }
}
