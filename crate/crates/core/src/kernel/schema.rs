//! The frozen axiom catalogue.
//!
//! | name | parameters | statement |
//! |------|------------|-----------|
//! | `k` | A B | A → (B → A) |
//! | `s` | A B C | (A → (B → C)) → ((A → B) → (A → C)) |
//! | `and-intro` | A B | A → (B → A ∧ B) |
//! | `and-elim-l` / `and-elim-r` | A B | A ∧ B → A, A ∧ B → B |
//! | `or-intro-l` / `or-intro-r` | A B | A → A ∨ B, B → A ∨ B |
//! | `or-elim` | A B C | (A → C) → ((B → C) → (A ∨ B → C)) |
//! | `ex-falso` | A | ⊥ → A |
//! | `contraction` | A | A → A ∧ A |
//! | `forall-inst` | x A b | ∀x A → A[b/x] |
//! | `exists-intro` | x A b | A[b/x] → ∃x A |
//! | `succ-nonzero` | t | ¬(S t = 0) |
//! | `succ-inj` | s t | S s = S t → s = t |
//! | `eq-refl` | t | t = t |
//! | `eq-subst` | x A s t | s = t → (A[s/x] → A[t/x]), A internal |
//! | `defeq` | a b | a = b, a and b convertible |
//! | `ext` | f g | ∀x (f x = g x) → f = g |
//! | `ia` | x A | A(0) ∧ ∀x (A(x) → A(S x)) → ∀x A(x), A internal |
//! | `sa` | s | s = ⟨⟩ ∨ ∃x ∃t (s = C x t) |
//! | `allst-def-l` / `allst-def-r` | x A | ∀st x A ↔ ∀x (st x → A) |
//! | `exst-def-l` / `exst-def-r` | x A | ∃st x A ↔ ∃x (st x ∧ A) |
//! | `st-ext` | s t | st s ∧ s = t → st t |
//! | `st-closed` | a | st a, a closed |
//! | `st-app` | f a | st f ∧ st a → st (f a) |
//! | `os*` / `os*-v` | s A | ∀st s A → ∃s (hyper s ∧ A), A internal |
//! | `us*` / `us*-v` | s A | ∀s (hyper s → A) → ∃st s A, A internal |
//! | `ncr` | y x A | ∀y ∃st x A → ∃st s ∀y ∃x (x ∈ s ∧ A) |
//! | `hac-st` | x y A | ∀st x ∃st y A → ∃st f ∀st x ∃y (y ∈ f[x] ∧ A) |
//! | `hip` | x A y B | (∀st x A → ∃st y B) → ∃st t (∀st x A → ∃y (y ∈ t ∧ B)), A internal |
//! | `nu` | y x A | ∀y ∃st x A → ∃st x ∀y A |
//! | `ac-st` | x y A | ∀st x ∃st y A → ∃st f ∀st x A[f x/y] |
//! | `ip-st` | x A y B | (∀st x A → ∃st y B) → ∃st y (∀st x A → B), A internal |
//!
//! In the `u` flavor "internal" means internal and ∨-free, and every
//! nonlogical internal axiom must be ∨-free. `os*`, `us*`, `ncr`, `hac-st`
//! and `hip` belong to `dst`; `os*-v`, `us*-v`, `nu`, `ac-st` and `ip-st`
//! belong to `u`.

use crate::formula::Formula;
use crate::reduce::convertible;
use crate::term::{fresh_name, Name, Term};
use crate::translate::Flavor;
use crate::types::FiniteType;
use std::collections::BTreeSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Schema {
    K,
    S,
    AndIntro,
    AndElimL,
    AndElimR,
    OrIntroL,
    OrIntroR,
    OrElim,
    ExFalso,
    Contraction,
    ForallInst,
    ExistsIntro,
    SuccNonzero,
    SuccInj,
    EqRefl,
    EqSubst,
    Defeq,
    Ext,
    Ia,
    Sa,
    AllStDefL,
    AllStDefR,
    ExStDefL,
    ExStDefR,
    StExt,
    StClosed,
    StApp,
    OsStar,
    UsStar,
    Ncr,
    HacSt,
    Hip,
    OsStarOr,
    UsStarOr,
    Nu,
    AcSt,
    IpSt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Formula,
    Term,
    Binder,
}

/// Which characteristic system a schema belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    Both,
    Only(Flavor),
}

pub struct SchemaInfo {
    pub schema: Schema,
    pub name: &'static str,
    pub params: &'static [(&'static str, Kind)],
    pub scope: Scope,
    /// Nonlogical axiom with an internal statement: ∨-free in `u`.
    pub nonlogical: bool,
}

use Kind::{Binder as KB, Formula as KF, Term as KT};

const AB: &[(&str, Kind)] = &[("A", KF), ("B", KF)];
const ABC: &[(&str, Kind)] = &[("A", KF), ("B", KF), ("C", KF)];
const XAB: &[(&str, Kind)] = &[("x", KB), ("A", KF), ("b", KT)];
const XA: &[(&str, Kind)] = &[("x", KB), ("A", KF)];
const SA: &[(&str, Kind)] = &[("s", KB), ("A", KF)];
const YXA: &[(&str, Kind)] = &[("y", KB), ("x", KB), ("A", KF)];
const XYA: &[(&str, Kind)] = &[("x", KB), ("y", KB), ("A", KF)];
const XAYB: &[(&str, Kind)] = &[("x", KB), ("A", KF), ("y", KB), ("B", KF)];

macro_rules! info {
    ($s:ident, $n:literal, $p:expr, $scope:expr, $nl:literal) => {
        SchemaInfo {
            schema: Schema::$s,
            name: $n,
            params: $p,
            scope: $scope,
            nonlogical: $nl,
        }
    };
}

const DST: Scope = Scope::Only(Flavor::Dst);
const U: Scope = Scope::Only(Flavor::U);
const BOTH: Scope = Scope::Both;

pub static CATALOGUE: &[SchemaInfo] = &[
    info!(K, "k", AB, BOTH, false),
    info!(S, "s", ABC, BOTH, false),
    info!(AndIntro, "and-intro", AB, BOTH, false),
    info!(AndElimL, "and-elim-l", AB, BOTH, false),
    info!(AndElimR, "and-elim-r", AB, BOTH, false),
    info!(OrIntroL, "or-intro-l", AB, BOTH, false),
    info!(OrIntroR, "or-intro-r", AB, BOTH, false),
    info!(OrElim, "or-elim", ABC, BOTH, false),
    info!(ExFalso, "ex-falso", &[("A", KF)], BOTH, false),
    info!(Contraction, "contraction", &[("A", KF)], BOTH, false),
    info!(ForallInst, "forall-inst", XAB, BOTH, false),
    info!(ExistsIntro, "exists-intro", XAB, BOTH, false),
    info!(SuccNonzero, "succ-nonzero", &[("t", KT)], BOTH, true),
    info!(SuccInj, "succ-inj", &[("s", KT), ("t", KT)], BOTH, true),
    info!(EqRefl, "eq-refl", &[("t", KT)], BOTH, true),
    info!(
        EqSubst,
        "eq-subst",
        &[("x", KB), ("A", KF), ("s", KT), ("t", KT)],
        BOTH,
        true
    ),
    info!(Defeq, "defeq", &[("a", KT), ("b", KT)], BOTH, true),
    info!(Ext, "ext", &[("f", KT), ("g", KT)], BOTH, true),
    info!(Ia, "ia", XA, BOTH, true),
    info!(Sa, "sa", &[("s", KT)], BOTH, true),
    info!(AllStDefL, "allst-def-l", XA, BOTH, false),
    info!(AllStDefR, "allst-def-r", XA, BOTH, false),
    info!(ExStDefL, "exst-def-l", XA, BOTH, false),
    info!(ExStDefR, "exst-def-r", XA, BOTH, false),
    info!(StExt, "st-ext", &[("s", KT), ("t", KT)], BOTH, false),
    info!(StClosed, "st-closed", &[("a", KT)], BOTH, false),
    info!(StApp, "st-app", &[("f", KT), ("a", KT)], BOTH, false),
    info!(OsStar, "os*", SA, DST, false),
    info!(UsStar, "us*", SA, DST, false),
    info!(Ncr, "ncr", YXA, DST, false),
    info!(HacSt, "hac-st", XYA, DST, false),
    info!(Hip, "hip", XAYB, DST, false),
    info!(OsStarOr, "os*-v", SA, U, false),
    info!(UsStarOr, "us*-v", SA, U, false),
    info!(Nu, "nu", YXA, U, false),
    info!(AcSt, "ac-st", XYA, U, false),
    info!(IpSt, "ip-st", XAYB, U, false),
];

impl Schema {
    pub fn info(self) -> &'static SchemaInfo {
        CATALOGUE
            .iter()
            .find(|i| i.schema == self)
            .expect("every schema is catalogued")
    }

    pub fn name(self) -> &'static str {
        self.info().name
    }

    pub fn from_name(name: &str) -> Option<Schema> {
        CATALOGUE.iter().find(|i| i.name == name).map(|i| i.schema)
    }

    pub fn allowed_in(self, flavor: Flavor) -> bool {
        match self.info().scope {
            Scope::Both => true,
            Scope::Only(f) => f == flavor,
        }
    }

    /// Parameters that must be internal formulas (∨-free in `u`).
    pub fn internal_params(self) -> &'static [&'static str] {
        match self {
            Schema::EqSubst | Schema::Ia => &["A"],
            Schema::OsStar | Schema::UsStar | Schema::OsStarOr | Schema::UsStarOr => &["A"],
            Schema::Hip | Schema::IpSt => &["A"],
            _ => &[],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Formula(Formula),
    Term(Term),
    Binder(Name, FiniteType),
}

impl Param {
    pub fn kind(&self) -> Kind {
        match self {
            Param::Formula(_) => Kind::Formula,
            Param::Term(_) => Kind::Term,
            Param::Binder(..) => Kind::Binder,
        }
    }

    fn names(&self, out: &mut BTreeSet<Name>) {
        match self {
            Param::Formula(f) => f.all_names(out),
            Param::Term(t) => t.all_names(out),
            Param::Binder(x, _) => {
                out.insert(x.clone());
            }
        }
    }
}

/// A schema instantiation, in catalogue parameter order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binds(pub Vec<(String, Param)>);

impl Binds {
    fn get(&self, key: &str) -> &Param {
        &self
            .0
            .iter()
            .find(|(k, _)| k == key)
            .expect("parameters validated against the schema")
            .1
    }

    pub fn formula(&self, key: &str) -> &Formula {
        match self.get(key) {
            Param::Formula(f) => f,
            _ => unreachable!("validated kind"),
        }
    }

    pub fn term(&self, key: &str) -> &Term {
        match self.get(key) {
            Param::Term(t) => t,
            _ => unreachable!("validated kind"),
        }
    }

    pub fn binder(&self, key: &str) -> (&Name, &FiniteType) {
        match self.get(key) {
            Param::Binder(x, t) => (x, t),
            _ => unreachable!("validated kind"),
        }
    }

    fn names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        for (_, p) in &self.0 {
            p.names(&mut out);
        }
        out
    }

    /// A name unused anywhere in the instantiation.
    fn fresh(&self, base: &str) -> Name {
        let taken = self.names();
        fresh_name(base, |c| taken.contains(c))
    }
}

/// Checks parameter names and kinds against the schema.
pub fn validate(schema: Schema, binds: &Binds) -> Result<(), String> {
    let spec = schema.info().params;
    if binds.0.len() != spec.len() {
        return Err(format!(
            "`{}` takes {} parameters, found {}",
            schema.name(),
            spec.len(),
            binds.0.len()
        ));
    }
    for ((k, p), (want, kind)) in binds.0.iter().zip(spec) {
        if k != want {
            return Err(format!("expected parameter `{want}`, found `{k}`"));
        }
        if p.kind() != *kind {
            return Err(format!("parameter `{k}` must be a {kind:?}, found a {:?}", p.kind()));
        }
    }
    Ok(())
}

fn ty_of(t: &Term, what: &str) -> Result<FiniteType, String> {
    t.infer().map_err(|e| format!("{what}: {e}"))
}

fn same_type(a: &Term, b: &Term) -> Result<FiniteType, String> {
    let (s, t) = (ty_of(a, "left term")?, ty_of(b, "right term")?);
    if s != t {
        return Err(format!("terms have different types {s} and {t}"));
    }
    Ok(s)
}

fn subst_at(f: &Formula, x: &Name, ty: &FiniteType, b: &Term) -> Result<Formula, String> {
    let bt = ty_of(b, "instance term")?;
    if bt != *ty {
        return Err(format!("instance term has type {bt}, variable `{x}` has type {ty}"));
    }
    Ok(f.subst(x, b))
}

fn star_elem<'a>(x: &Name, ty: &'a FiniteType) -> Result<&'a FiniteType, String> {
    ty.elem()
        .ok_or_else(|| format!("variable `{x}` must have a sequence type, found {ty}"))
}

/// The statement of a validated instantiation.
pub fn conclusion(schema: Schema, b: &Binds) -> Result<Formula, String> {
    use Formula as F;
    let n = FiniteType::Ground;
    let f = |k: &str| b.formula(k).clone();
    Ok(match schema {
        Schema::K => F::imp(f("A"), F::imp(f("B"), f("A"))),
        Schema::S => {
            let (a, bb, c) = (f("A"), f("B"), f("C"));
            F::imp(
                F::imp(a.clone(), F::imp(bb.clone(), c.clone())),
                F::imp(F::imp(a.clone(), bb), F::imp(a, c)),
            )
        }
        Schema::AndIntro => F::imp(f("A"), F::imp(f("B"), F::and(f("A"), f("B")))),
        Schema::AndElimL => F::imp(F::and(f("A"), f("B")), f("A")),
        Schema::AndElimR => F::imp(F::and(f("A"), f("B")), f("B")),
        Schema::OrIntroL => F::imp(f("A"), F::or(f("A"), f("B"))),
        Schema::OrIntroR => F::imp(f("B"), F::or(f("A"), f("B"))),
        Schema::OrElim => {
            let (a, bb, c) = (f("A"), f("B"), f("C"));
            F::imp(
                F::imp(a.clone(), c.clone()),
                F::imp(F::imp(bb.clone(), c.clone()), F::imp(F::or(a, bb), c)),
            )
        }
        Schema::ExFalso => F::imp(F::Bot, f("A")),
        Schema::Contraction => F::imp(f("A"), F::and(f("A"), f("A"))),
        Schema::ForallInst | Schema::ExistsIntro => {
            let (x, ty) = b.binder("x");
            let a = f("A");
            let inst = subst_at(&a, x, ty, b.term("b"))?;
            if schema == Schema::ForallInst {
                F::imp(F::forall(x.clone(), ty.clone(), a), inst)
            } else {
                F::imp(inst, F::exists(x.clone(), ty.clone(), a))
            }
        }
        Schema::SuccNonzero => {
            let t = b.term("t");
            nat(t)?;
            F::Not(Box::new(F::eq(n.clone(), Term::succ(t.clone()), Term::zero())))
        }
        Schema::SuccInj => {
            let (s, t) = (b.term("s"), b.term("t"));
            nat(s)?;
            nat(t)?;
            F::imp(
                F::eq(n.clone(), Term::succ(s.clone()), Term::succ(t.clone())),
                F::eq(n, s.clone(), t.clone()),
            )
        }
        Schema::EqRefl => {
            let t = b.term("t");
            F::eq(ty_of(t, "term")?, t.clone(), t.clone())
        }
        Schema::EqSubst => {
            let (x, ty) = b.binder("x");
            let (s, t) = (b.term("s"), b.term("t"));
            let sty = same_type(s, t)?;
            let a = f("A");
            F::imp(
                F::eq(sty, s.clone(), t.clone()),
                F::imp(subst_at(&a, x, ty, s)?, subst_at(&a, x, ty, t)?),
            )
        }
        Schema::Defeq => {
            let (l, r) = (b.term("a"), b.term("b"));
            let ty = same_type(l, r)?;
            if !convertible(l, r) {
                return Err("terms are not convertible".into());
            }
            F::eq(ty, l.clone(), r.clone())
        }
        Schema::Ext => {
            let (g1, g2) = (b.term("f"), b.term("g"));
            let ty = same_type(g1, g2)?;
            let Some((dom, cod)) = ty.split_arrow() else {
                return Err(format!("extensionality needs functions, found type {ty}"));
            };
            let x = b.fresh("x");
            let xv = Term::var(x.clone(), dom.clone());
            let pointwise = F::eq(
                cod.clone(),
                Term::app(g1.clone(), xv.clone()),
                Term::app(g2.clone(), xv),
            );
            F::imp(
                F::forall(x, dom.clone(), pointwise),
                F::eq(ty.clone(), g1.clone(), g2.clone()),
            )
        }
        Schema::Ia => {
            let (x, ty) = b.binder("x");
            if !ty.is_ground() {
                return Err(format!("induction variable `{x}` must have type N"));
            }
            let a = f("A");
            let xv = Term::var(x.clone(), n.clone());
            let step = F::forall(x.clone(), n.clone(), F::imp(a.clone(), a.subst(x, &Term::succ(xv))));
            F::imp(F::and(a.subst(x, &Term::zero()), step), F::forall(x.clone(), n, a))
        }
        Schema::Sa => {
            let s = b.term("s");
            let sty = ty_of(s, "term")?;
            let Some(e) = sty.elem() else {
                return Err(format!("`sa` needs a sequence, found type {sty}"));
            };
            let x = b.fresh("x");
            let t = fresh_name("t", |c| c == x || b.names().contains(c));
            let cons = Term::cons(
                e.clone(),
                Term::var(x.clone(), e.clone()),
                Term::var(t.clone(), sty.clone()),
            );
            F::or(
                F::eq(sty.clone(), s.clone(), Term::nil(e.clone())),
                F::exists(
                    x,
                    e.clone(),
                    F::exists(t, sty.clone(), F::eq(sty.clone(), s.clone(), cons)),
                ),
            )
        }
        Schema::AllStDefL | Schema::AllStDefR | Schema::ExStDefL | Schema::ExStDefR => {
            let (x, ty) = b.binder("x");
            let a = f("A");
            let st = F::st(ty.clone(), Term::var(x.clone(), ty.clone()));
            let (ext, int) = match schema {
                Schema::AllStDefL | Schema::AllStDefR => (
                    F::forall_st(x.clone(), ty.clone(), a.clone()),
                    F::forall(x.clone(), ty.clone(), F::imp(st, a)),
                ),
                _ => (
                    F::exists_st(x.clone(), ty.clone(), a.clone()),
                    F::exists(x.clone(), ty.clone(), F::and(st, a)),
                ),
            };
            match schema {
                Schema::AllStDefL | Schema::ExStDefL => F::imp(ext, int),
                _ => F::imp(int, ext),
            }
        }
        Schema::StExt => {
            let (s, t) = (b.term("s"), b.term("t"));
            let ty = same_type(s, t)?;
            F::imp(
                F::and(F::st(ty.clone(), s.clone()), F::eq(ty.clone(), s.clone(), t.clone())),
                F::st(ty, t.clone()),
            )
        }
        Schema::StClosed => {
            let a = b.term("a");
            if let Some((x, _)) = a.free_vars().into_iter().next() {
                return Err(format!("`st-closed` needs a closed term, `{x}` is free"));
            }
            F::st(ty_of(a, "term")?, a.clone())
        }
        Schema::StApp => {
            let (g, a) = (b.term("f"), b.term("a"));
            let gt = ty_of(g, "function")?;
            let at = ty_of(a, "argument")?;
            match gt.split_arrow() {
                Some((dom, cod)) if *dom == at => F::imp(
                    F::and(F::st(gt.clone(), g.clone()), F::st(at, a.clone())),
                    F::st(cod.clone(), Term::app(g.clone(), a.clone())),
                ),
                _ => {
                    return Err(format!(
                        "cannot apply a function of type {gt} to an argument of type {at}"
                    ))
                }
            }
        }
        Schema::OsStar | Schema::OsStarOr | Schema::UsStar | Schema::UsStarOr => {
            let (s, ty) = b.binder("s");
            let e = star_elem(s, ty)?;
            let a = f("A");
            let hyper = F::Hyper(e.clone(), Term::var(s.clone(), ty.clone()));
            match schema {
                Schema::OsStar | Schema::OsStarOr => F::imp(
                    F::forall_st(s.clone(), ty.clone(), a.clone()),
                    F::exists(s.clone(), ty.clone(), F::and(hyper, a)),
                ),
                _ => F::imp(
                    F::forall(s.clone(), ty.clone(), F::imp(hyper, a.clone())),
                    F::exists_st(s.clone(), ty.clone(), a),
                ),
            }
        }
        Schema::Ncr | Schema::Nu => {
            let (y, yt) = b.binder("y");
            let (x, xt) = b.binder("x");
            let a = f("A");
            let premise = F::forall(y.clone(), yt.clone(), F::exists_st(x.clone(), xt.clone(), a.clone()));
            if schema == Schema::Nu {
                F::imp(
                    premise,
                    F::exists_st(x.clone(), xt.clone(), F::forall(y.clone(), yt.clone(), a)),
                )
            } else {
                let s = b.fresh("s");
                let sty = FiniteType::star(xt.clone());
                let member = F::In(
                    xt.clone(),
                    Term::var(x.clone(), xt.clone()),
                    Term::var(s.clone(), sty.clone()),
                );
                let body = F::forall(
                    y.clone(),
                    yt.clone(),
                    F::exists(x.clone(), xt.clone(), F::and(member, a)),
                );
                F::imp(premise, F::exists_st(s, sty, body))
            }
        }
        Schema::HacSt | Schema::AcSt => {
            let (x, xt) = b.binder("x");
            let (y, yt) = b.binder("y");
            let a = f("A");
            let premise = F::forall_st(x.clone(), xt.clone(), F::exists_st(y.clone(), yt.clone(), a.clone()));
            let g = b.fresh("f");
            let xv = Term::var(x.clone(), xt.clone());
            if schema == Schema::AcSt {
                let gt = FiniteType::arrow(xt.clone(), yt.clone());
                let body = a.subst(y, &Term::app(Term::var(g.clone(), gt.clone()), xv));
                F::imp(premise, F::exists_st(g, gt, F::forall_st(x.clone(), xt.clone(), body)))
            } else {
                let gt = FiniteType::star(FiniteType::arrow(xt.clone(), FiniteType::star(yt.clone())));
                let image = Term::seq_app(xt.clone(), yt.clone(), Term::var(g.clone(), gt.clone()), xv);
                let member = F::In(yt.clone(), Term::var(y.clone(), yt.clone()), image);
                let body = F::forall_st(
                    x.clone(),
                    xt.clone(),
                    F::exists(y.clone(), yt.clone(), F::and(member, a)),
                );
                F::imp(premise, F::exists_st(g, gt, body))
            }
        }
        Schema::Hip | Schema::IpSt => {
            let (x, xt) = b.binder("x");
            let (y, yt) = b.binder("y");
            let (a, psi) = (f("A"), f("B"));
            let hyp = F::forall_st(x.clone(), xt.clone(), a);
            if hyp.has_free(y) {
                return Err(format!("`{y}` must not be free in the premise"));
            }
            let premise = F::imp(hyp.clone(), F::exists_st(y.clone(), yt.clone(), psi.clone()));
            if schema == Schema::IpSt {
                F::imp(premise, F::exists_st(y.clone(), yt.clone(), F::imp(hyp, psi)))
            } else {
                let t = b.fresh("t");
                let tt = FiniteType::star(yt.clone());
                let member = F::In(
                    yt.clone(),
                    Term::var(y.clone(), yt.clone()),
                    Term::var(t.clone(), tt.clone()),
                );
                let body = F::imp(hyp, F::exists(y.clone(), yt.clone(), F::and(member, psi)));
                F::imp(premise, F::exists_st(t, tt, body))
            }
        }
    })
}

fn nat(t: &Term) -> Result<(), String> {
    let ty = ty_of(t, "term")?;
    if ty.is_ground() {
        Ok(())
    } else {
        Err(format!("expected a term of type N, found {ty}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip_through_the_catalogue() {
        for i in CATALOGUE {
            assert_eq!(Schema::from_name(i.name), Some(i.schema));
        }
        assert_eq!(CATALOGUE.len(), 37);
    }
}
