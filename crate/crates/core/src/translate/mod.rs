//! Formula translations into `∃st x̄ ∀st ȳ φ` form.

mod dst;
mod udn;

use crate::error::TypeError;
use crate::formula::Formula;
use crate::syntax::Printer;
use crate::syntax::Sexp;
use crate::term::{fresh_name, Name, Term};
use crate::types::FiniteType;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

pub use dst::dst_translate;
pub use udn::u_translate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Dst,
    U,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Dst => "dst",
            Flavor::U => "u",
        }
    }

    pub fn from_name(s: &str) -> Option<Flavor> {
        match s {
            "dst" => Some(Flavor::Dst),
            "u" => Some(Flavor::U),
            _ => None,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum TranslateError {
    #[error("ill-typed input: {0}")]
    IllTypedInput(#[from] TypeError),
}

pub type Tuple = Vec<(Name, FiniteType)>;

/// `∃st exist ∀st univ matrix`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslatedFormula {
    pub exist: Tuple,
    pub univ: Tuple,
    pub matrix: Formula,
    pub flavor: Flavor,
}

impl TranslatedFormula {
    pub(crate) fn atom(matrix: Formula, flavor: Flavor) -> Self {
        TranslatedFormula {
            exist: Vec::new(),
            univ: Vec::new(),
            matrix,
            flavor,
        }
    }

    pub fn to_formula(&self) -> Formula {
        Formula::exists_sts(&self.exist, Formula::forall_sts(&self.univ, self.matrix.clone()))
    }

    pub fn to_sexp(&self) -> Sexp {
        Printer::new().prenex(&self.exist, &self.univ, &self.matrix)
    }

    /// Free variables of the whole translated formula.
    pub fn parameters(&self) -> Tuple {
        self.to_formula().free_vars().into_iter().collect()
    }

    /// Checks the structural invariants of the flavor. Returns a description
    /// of the first violation.
    pub fn invariant_violation(&self) -> Option<String> {
        let k = self.matrix.classify();
        if !k.internal {
            return Some("matrix is not internal".into());
        }
        if self.flavor == Flavor::U && !k.or_free {
            return Some("matrix contains a disjunction".into());
        }
        if self.flavor == Flavor::Dst {
            if let Some((x, t)) = self.exist.iter().find(|(_, t)| !t.is_star()) {
                return Some(format!("existential variable {x} has non-sequence type {t}"));
            }
        }
        let mut seen = BTreeSet::new();
        for (x, _) in self.exist.iter().chain(&self.univ) {
            if !seen.insert(x) {
                return Some(format!("variable {x} occurs twice in the tuples"));
            }
        }
        None
    }
}

impl fmt::Display for TranslatedFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexp())
    }
}

pub fn translate(formula: &Formula, flavor: Flavor) -> Result<TranslatedFormula, TranslateError> {
    match flavor {
        Flavor::Dst => dst_translate(formula),
        Flavor::U => u_translate(formula),
    }
}

/// Per-invocation name supply. Every name of the source formula is reserved.
pub(crate) struct Fresh {
    taken: BTreeSet<Name>,
}

impl Fresh {
    pub(crate) fn name(&mut self, base: &str) -> Name {
        let x = fresh_name(base, |c| self.taken.contains(c));
        self.taken.insert(x.clone());
        x
    }

    pub(crate) fn tuple(&mut self, base: &str, types: impl IntoIterator<Item = FiniteType>) -> Tuple {
        types.into_iter().map(|t| (self.name(base), t)).collect()
    }
}

/// Desugars and renames bound variables apart from each other and from the
/// free variables, keeping the first occurrence of every name.
pub(crate) fn prepare(formula: &Formula) -> Result<(Formula, Fresh), TranslateError> {
    formula.check()?;
    let f = formula.desugar();
    let mut all = BTreeSet::new();
    f.all_names(&mut all);
    let mut seen: BTreeSet<Name> = f.free_vars().into_keys().collect();
    let f = rename_apart(&f, &mut seen, &mut all);
    let fresh = Fresh { taken: all };
    Ok((f, fresh))
}

fn rename_apart(f: &Formula, seen: &mut BTreeSet<Name>, all: &mut BTreeSet<Name>) -> Formula {
    let go = |g: &Formula, seen: &mut BTreeSet<Name>, all: &mut BTreeSet<Name>| Box::new(rename_apart(g, seen, all));
    match f {
        Formula::And(a, b) => Formula::And(go(a, seen, all), go(b, seen, all)),
        Formula::Or(a, b) => Formula::Or(go(a, seen, all), go(b, seen, all)),
        Formula::Imp(a, b) => Formula::Imp(go(a, seen, all), go(b, seen, all)),
        Formula::Not(a) => Formula::Not(go(a, seen, all)),
        _ => match f.binder() {
            None => f.clone(),
            Some((x, ty)) => {
                let body = f.children()[0];
                let (x2, body2) = if seen.contains(x) {
                    let y = fresh_name(x, |c| all.contains(c) || seen.contains(c));
                    all.insert(y.clone());
                    (y.clone(), body.subst(x, &Term::var(y, ty)))
                } else {
                    (x.clone(), body.clone())
                };
                seen.insert(x2.clone());
                let b = go(&body2, seen, all);
                match f {
                    Formula::Forall(_, t, _) => Formula::Forall(x2, t.clone(), b),
                    Formula::Exists(_, t, _) => Formula::Exists(x2, t.clone(), b),
                    Formula::ForallSt(_, t, _) => Formula::ForallSt(x2, t.clone(), b),
                    Formula::ExistsSt(_, t, _) => Formula::ExistsSt(x2, t.clone(), b),
                    Formula::BoundedForall(_, n, _) => Formula::BoundedForall(x2, n.clone(), b),
                    Formula::BoundedExists(_, n, _) => Formula::BoundedExists(x2, n.clone(), b),
                    _ => unreachable!("binder node"),
                }
            }
        },
    }
}

pub(crate) fn vars(t: &Tuple) -> Vec<Term> {
    t.iter().map(|(x, ty)| Term::var(x.clone(), ty.clone())).collect()
}

pub(crate) fn types(t: &Tuple) -> Vec<FiniteType> {
    t.iter().map(|(_, ty)| ty.clone()).collect()
}

/// `t[a0][a1]…`, for `t : (a0 → (a1 → … R)*)*`.
pub fn seq_apps(t: Term, args: &[Term]) -> Term {
    let mut cur = t;
    for a in args {
        let ty = cur.ty();
        let (dom, res) = ty
            .elem()
            .and_then(FiniteType::split_arrow)
            .expect("sequence of functions");
        let r = res.elem().expect("function into sequences").clone();
        cur = Term::seq_app(dom.clone(), r, cur, a.clone());
    }
    cur
}

/// `∀y ∈ s φ` in index form: `∀i<|s| φ[s_i/y]`.
pub(crate) fn forall_in(fresh: &mut Fresh, y: &(Name, FiniteType), s: Term, body: Formula) -> Formula {
    let i = fresh.name("i");
    let iv = Term::var(i.clone(), FiniteType::Ground);
    let elem = Term::proj(y.1.clone(), s.clone(), iv);
    Formula::bounded_forall(i, Term::len(y.1.clone(), s), body.subst(&y.0, &elem))
}

/// `∃y ∈ s φ` in index form: `∃i<|s| φ[s_i/y]`.
pub(crate) fn exists_in(fresh: &mut Fresh, y: &(Name, FiniteType), s: Term, body: Formula) -> Formula {
    let i = fresh.name("i");
    let iv = Term::var(i.clone(), FiniteType::Ground);
    let elem = Term::proj(y.1.clone(), s.clone(), iv);
    Formula::bounded_exists(i, Term::len(y.1.clone(), s), body.subst(&y.0, &elem))
}

/// `∀ȳ ∈ s̄ φ`, componentwise.
pub(crate) fn forall_in_all(fresh: &mut Fresh, ys: &Tuple, ss: &[Term], body: Formula) -> Formula {
    ys.iter()
        .zip(ss)
        .rev()
        .fold(body, |acc, (y, s)| forall_in(fresh, y, s.clone(), acc))
}

/// `i < b` as `∃k<b (k = i)`.
pub(crate) fn less_than(fresh: &mut Fresh, i: Term, b: Term) -> Formula {
    let k = fresh.name("k");
    let kv = Term::var(k.clone(), FiniteType::Ground);
    Formula::bounded_exists(k, b, Formula::eq(FiniteType::Ground, kv, i))
}

/// Rewrites a bounded quantifier over an external body into an internal
/// quantifier with a `<` guard.
pub(crate) fn unbound(fresh: &mut Fresh, f: &Formula) -> Formula {
    match f {
        Formula::BoundedForall(i, b, body) => {
            let iv = Term::var(i.clone(), FiniteType::Ground);
            let g = less_than(fresh, iv, b.clone());
            Formula::forall(i.clone(), FiniteType::Ground, Formula::imp(g, (**body).clone()))
        }
        Formula::BoundedExists(i, b, body) => {
            let iv = Term::var(i.clone(), FiniteType::Ground);
            let g = less_than(fresh, iv, b.clone());
            Formula::exists(i.clone(), FiniteType::Ground, Formula::and(g, (**body).clone()))
        }
        _ => unreachable!("bounded quantifier"),
    }
}

/// Substitutes `terms[k]` for `vars[k]` for each `k`, in order.
pub(crate) fn subst_all(f: &Formula, vars: &Tuple, terms: &[Term]) -> Formula {
    vars.iter()
        .zip(terms)
        .fold(f.clone(), |acc, ((x, _), t)| acc.subst(x, t))
}
