//! Small worked proofs used by the fixtures, the tests and the bench.

use super::builder::{concl, ProofBuilder};
use super::schema::{Param, Schema};
use super::{KernelError, Node, Proof};
use crate::formula::Formula;
use crate::term::Term;
use crate::translate::Flavor;
use crate::types::FiniteType;

type R = Result<Node, KernelError>;

fn n() -> FiniteType {
    FiniteType::Ground
}

fn var(x: &str) -> Term {
    Term::var(x, n())
}

fn st(t: Term) -> Formula {
    Formula::st(n().clone(), t)
}

/// `h → st t`, for `t` built by application from closed terms and `x`,
/// where `h` is `st x`.
pub fn st_of(b: &ProofBuilder, x: &Term, t: &Term) -> R {
    let ty = x.ty();
    let h = Formula::st(ty, x.clone());
    if t == x {
        return b.identity(h);
    }
    if t.is_closed() {
        let c = b.axiom(Schema::StClosed, [("a", Param::Term(t.clone()))])?;
        return b.weaken(h, c);
    }
    match t {
        Term::App(f, a) => {
            let both = b.pair(st_of(b, x, f)?, st_of(b, x, a)?)?;
            let app = b.axiom(
                Schema::StApp,
                [("f", Param::Term((**f).clone())), ("a", Param::Term((**a).clone()))],
            )?;
            b.compose(both, app)
        }
        _ => Err(KernelError::BadInstantiation {
            node: "st_of".into(),
            reason: format!("cannot show {t} standard from st {x}"),
        }),
    }
}

/// `h → ∃st y (y = t)` from `h → st t`.
pub fn witness(b: &ProofBuilder, h: Formula, y: &str, st_t: Node, t: &Term) -> R {
    let refl = b.axiom(Schema::EqRefl, [("t", Param::Term(t.clone()))])?;
    let body = Formula::and(st(var(y)), Formula::eq(n(), var(y), t.clone()));
    let both = b.pair(st_t, b.weaken(h, refl)?)?;
    let intro = b.axiom(
        Schema::ExistsIntro,
        [
            ("x", Param::Binder(y.into(), n())),
            ("A", Param::Formula(body)),
            ("b", Param::Term(t.clone())),
        ],
    )?;
    let def = b.axiom(
        Schema::ExStDefR,
        [
            ("x", Param::Binder(y.into(), n())),
            ("A", Param::Formula(Formula::eq(n(), var(y), t.clone()))),
        ],
    )?;
    b.compose(b.compose(both, intro)?, def)
}

/// From `st x → Φ(x)` conclude `∀st x Φ(x)`.
pub fn close_st(b: &ProofBuilder, x: &str, p: Node) -> R {
    let Formula::Imp(_, phi) = concl(&p).clone() else {
        unreachable!("built as an implication")
    };
    let all = b.generalize(x, n(), p)?;
    let def = b.axiom(
        Schema::AllStDefR,
        [("x", Param::Binder(x.into(), n())), ("A", Param::Formula(*phi))],
    )?;
    b.mp(def, all)
}

/// `∀st x ∃st y (y = x + x)`.
pub fn doubling(flavor: Flavor) -> Result<Proof, KernelError> {
    let b = ProofBuilder::new(flavor);
    let x = var("x");
    let t = Term::plus(x.clone(), x.clone());
    let st_t = st_of(&b, &x, &t)?;
    let p = witness(&b, st(x.clone()), "y", st_t, &t)?;
    Ok(b.proof(close_st(&b, "x", p)?))
}

/// `∀st n ∃st y (y = n)` by external induction.
pub fn ir_st(flavor: Flavor) -> Result<Proof, KernelError> {
    let b = ProofBuilder::new(flavor);
    let phi = |t: Term| Formula::exists_st("y", n(), Formula::eq(n(), var("y"), t));
    let base = {
        let c = b.axiom(Schema::StClosed, [("a", Param::Term(Term::zero()))])?;
        let p = witness(&b, Formula::verum(), "y", b.weaken(Formula::verum(), c)?, &Term::zero())?;
        b.mp(p, b.verum()?)?
    };
    let nv = var("n");
    let sn = Term::succ(nv.clone());
    // st y ∧ y = n → ∃st w (w = S n)
    let y = var("y");
    let sy = Term::succ(y.clone());
    let hyp = Formula::and(st(y.clone()), Formula::eq(n(), y.clone(), nv.clone()));
    let left = b.axiom(
        Schema::AndElimL,
        [
            ("A", Param::Formula(st(y.clone()))),
            ("B", Param::Formula(Formula::eq(n(), y.clone(), nv.clone()))),
        ],
    )?;
    let right = b.axiom(
        Schema::AndElimR,
        [
            ("A", Param::Formula(st(y.clone()))),
            ("B", Param::Formula(Formula::eq(n(), y.clone(), nv.clone()))),
        ],
    )?;
    let st_sy = b.compose(left, st_of(&b, &y, &sy)?)?;
    // y = n → (S y = S y → S y = S n)
    let subst = b.axiom(
        Schema::EqSubst,
        [
            ("x", Param::Binder("z".into(), n())),
            ("A", Param::Formula(Formula::eq(n(), sy.clone(), Term::succ(var("z"))))),
            ("s", Param::Term(y.clone())),
            ("t", Param::Term(nv.clone())),
        ],
    )?;
    let eq_sy_sn = {
        let h_sub = b.compose(right, subst)?;
        let refl = b.axiom(Schema::EqRefl, [("t", Param::Term(sy.clone()))])?;
        b.apply_under(h_sub, b.weaken(hyp.clone(), refl)?)?
    };
    let body = Formula::and(st(var("w")), Formula::eq(n(), var("w"), sn.clone()));
    let intro = b.axiom(
        Schema::ExistsIntro,
        [
            ("x", Param::Binder("w".into(), n())),
            ("A", Param::Formula(body)),
            ("b", Param::Term(sy.clone())),
        ],
    )?;
    let def_r = b.axiom(
        Schema::ExStDefR,
        [
            ("x", Param::Binder("w".into(), n())),
            ("A", Param::Formula(Formula::eq(n(), var("w"), sn.clone()))),
        ],
    )?;
    let inner = b.compose(b.compose(b.pair(st_sy, eq_sy_sn)?, intro)?, def_r)?;
    let elim = b.exists_rule("y", n(), inner)?;
    let def_l = b.axiom(
        Schema::ExStDefL,
        [
            ("x", Param::Binder("y".into(), n())),
            ("A", Param::Formula(Formula::eq(n(), y.clone(), nv.clone()))),
        ],
    )?;
    let step_n = b.compose(def_l, elim)?;
    debug_assert!(crate::formula::alpha_eq_formula(
        concl(&step_n),
        &Formula::imp(phi(nv.clone()), phi(sn.clone()))
    ));
    // st n → (Φ(n) → Φ(S n)), then ∀st n.
    let step = close_st(&b, "n", b.weaken(st(nv), step_n)?)?;
    Ok(b.proof(b.ind_st(base, step)?))
}
