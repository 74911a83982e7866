//! Every catalogued schema, used in a closed proof whose challenges are
//! data-typed, extracts a bundle the grid oracle accepts.

use nsdial::kernel::builder::concl;
use nsdial::kernel::samples::{close_st, st_of, witness};
use nsdial::kernel::{check_proof, extract, Node, Param, ProofBuilder, Schema};
use nsdial::oracle::{verify_bundle, Grid, Verdict};
use nsdial::syntax::formula_from_str;
use nsdial::translate::Flavor;
use nsdial::{FiniteType, Formula, Term};

const P: &str = "(exists-st (u N) (forall-st (v N) (eq N (var u) (var v))))";
const Q: &str = "(exists-st (w N) (forall-st (r N) (eq N (var w) (app succ (var r)))))";

fn f(s: &str) -> Formula {
    formula_from_str(s).unwrap()
}

fn n() -> FiniteType {
    FiniteType::Ground
}

fn fp(x: Formula) -> Param {
    Param::Formula(x)
}

fn bind(x: &str, ty: FiniteType) -> Param {
    Param::Binder(x.into(), ty)
}

fn check(b: &ProofBuilder, root: Node, grid: &Grid) {
    let proof = b.proof(root);
    let c = check_proof(&proof).unwrap();
    let bundle = extract(&proof).unwrap();
    assert!(bundle.terms.iter().all(Term::is_closed));
    assert_eq!(
        verify_bundle(&bundle, grid),
        Verdict::GridValid,
        "{c}\n{}",
        bundle.to_sexp()
    );
}

fn small() -> Grid {
    Grid::new(2, 2)
}

/// `∃st y (y = t)` for a closed numeral `t`.
fn exists_numeral(b: &ProofBuilder, k: u64) -> Node {
    let t = Term::nat(k);
    let c = b.axiom(Schema::StClosed, [("a", Param::Term(t.clone()))]).unwrap();
    let p = witness(b, Formula::verum(), "y", b.weaken(Formula::verum(), c).unwrap(), &t).unwrap();
    b.mp(p, b.verum().unwrap()).unwrap()
}

/// `∀st x ∃st y (y = x)`.
fn all_st_exists_st(b: &ProofBuilder) -> Node {
    let x = Term::var("x", n());
    let p = witness(b, Formula::st(n(), x.clone()), "y", st_of(b, &x, &x).unwrap(), &x).unwrap();
    close_st(b, "x", p).unwrap()
}

#[test]
fn propositional_schemas() {
    for flavor in [Flavor::U, Flavor::Dst] {
        let b = ProofBuilder::new(flavor);
        let (p, q) = (f(P), f(Q));
        for s in [Schema::AndElimL, Schema::AndElimR] {
            check(
                &b,
                b.axiom(s, [("A", fp(p.clone())), ("B", fp(q.clone()))]).unwrap(),
                &small(),
            );
        }
        for s in [Schema::OrIntroL, Schema::OrIntroR] {
            check(
                &b,
                b.axiom(s, [("A", fp(p.clone())), ("B", fp(q.clone()))]).unwrap(),
                &small(),
            );
        }
        check(&b, b.axiom(Schema::ExFalso, [("A", fp(p.clone()))]).unwrap(), &small());
        check(
            &b,
            b.axiom(Schema::Contraction, [("A", fp(q.clone()))]).unwrap(),
            &small(),
        );
        let ai = b
            .axiom(Schema::AndIntro, [("A", fp(p.clone())), ("B", fp(q.clone()))])
            .unwrap();
        check(&b, ai, &small());
        // A ∨ A → A through or-elim, so the S and or-elim realisers compose.
        let id = b.identity(p.clone()).unwrap();
        let oe = b
            .axiom(
                Schema::OrElim,
                [("A", fp(p.clone())), ("B", fp(p.clone())), ("C", fp(p.clone()))],
            )
            .unwrap();
        let merged = b.mp(b.mp(oe, id.clone()).unwrap(), id).unwrap();
        check(&b, merged, &small());
        // (A ∧ B) → (B ∧ A)
        let swap = b
            .pair(
                b.axiom(Schema::AndElimR, [("A", fp(p.clone())), ("B", fp(q.clone()))])
                    .unwrap(),
                b.axiom(Schema::AndElimL, [("A", fp(p.clone())), ("B", fp(q.clone()))])
                    .unwrap(),
            )
            .unwrap();
        check(&b, swap, &small());
    }
}

#[test]
fn quantifier_schemas_and_rules() {
    for flavor in [Flavor::U, Flavor::Dst] {
        let b = ProofBuilder::new(flavor);
        let (u, v, x) = (Term::var("u", n()), Term::var("v", n()), Term::var("x", n()));
        let a = Formula::exists_st(
            "u",
            n(),
            Formula::forall_st("v", n(), Formula::eq(n(), u, Term::plus(v, x))),
        );
        let fi = b.forall_inst("x", n(), a.clone(), Term::nat(1)).unwrap();
        check(&b, fi, &small());
        let ei = b
            .axiom(
                Schema::ExistsIntro,
                [
                    ("x", bind("x", n())),
                    ("A", fp(a.clone())),
                    ("b", Param::Term(Term::nat(1))),
                ],
            )
            .unwrap();
        check(&b, ei, &small());
        // ∃x A → ∃x A by the ∃-rule over exists-intro at x itself.
        let at_x = b
            .axiom(
                Schema::ExistsIntro,
                [
                    ("x", bind("x", n())),
                    ("A", fp(a.clone())),
                    ("b", Param::Term(Term::var("x", n()))),
                ],
            )
            .unwrap();
        check(&b, b.exists_rule("x", n(), at_x).unwrap(), &small());
        // ∀x A → ∀x A by the ∀-rule over forall-inst at x.
        let inst_x = b.forall_inst("x", n(), a.clone(), Term::var("x", n())).unwrap();
        check(&b, b.forall_rule("x", n(), inst_x).unwrap(), &small());
    }
}

#[test]
fn external_quantifier_definitions() {
    for flavor in [Flavor::U, Flavor::Dst] {
        let b = ProofBuilder::new(flavor);
        let body = f("(exists-st (y N) (eq N (var y) (var x N)))");
        let all = all_st_exists_st(&b);
        let l = b
            .axiom(Schema::AllStDefL, [("x", bind("x", n())), ("A", fp(body.clone()))])
            .unwrap();
        let unfolded = b.mp(l, all).unwrap();
        check(&b, unfolded.clone(), &small());
        let r = b
            .axiom(Schema::AllStDefR, [("x", bind("x", n())), ("A", fp(body))])
            .unwrap();
        check(&b, b.mp(r, unfolded).unwrap(), &small());
        let inner = f("(forall-st (v N) (eq N (var x N) (var v)))");
        for s in [Schema::ExStDefL, Schema::ExStDefR] {
            let ax = b.axiom(s, [("x", bind("x", n())), ("A", fp(inner.clone()))]).unwrap();
            check(&b, ax, &small());
        }
        let ext = b
            .axiom(
                Schema::StExt,
                [
                    ("s", Param::Term(Term::var("a", n()))),
                    ("t", Param::Term(Term::nat(1))),
                ],
            )
            .unwrap();
        let closed = b.generalize("a", n(), ext).unwrap();
        check(&b, closed, &small());
    }
}

#[test]
fn dst_principles() {
    let b = ProofBuilder::new(Flavor::Dst);
    let ns = FiniteType::star(n());
    let phi = f("(eq N (len (var s (* N))) zero)");
    for s in [Schema::OsStar, Schema::UsStar] {
        let ax = b
            .axiom(s, [("s", bind("s", ns.clone())), ("A", fp(phi.clone()))])
            .unwrap();
        check(&b, ax, &small());
    }
    // ncr after a proof of ∀y ∃st x (x = 0).
    let ex0 = exists_numeral(&b, 0);
    let renamed = f("(exists-st (x N) (eq N (var x) zero))");
    assert!(nsdial::formula::alpha_eq_formula(concl(&ex0), &renamed));
    let all_y = b.generalize("y", n(), ex0.clone()).unwrap();
    let ncr = b
        .axiom(
            Schema::Ncr,
            [
                ("y", bind("y", n())),
                ("x", bind("x", n())),
                ("A", fp(f("(eq N (var x N) zero)"))),
            ],
        )
        .unwrap();
    check(&b, b.mp(ncr, all_y).unwrap(), &small());
    // hac-st after ∀st x ∃st y (y = x).
    let hac = b
        .axiom(
            Schema::HacSt,
            [
                ("x", bind("x", n())),
                ("y", bind("y", n())),
                ("A", fp(f("(eq N (var y N) (var x N))"))),
            ],
        )
        .unwrap();
    check(&b, b.mp(hac, all_st_exists_st(&b)).unwrap(), &small());
    // hip after ∀st x (x = x) → ∃st y (y = 0).
    let a = f("(eq N (var x N) (var x N))");
    let prem = b
        .weaken(Formula::forall_st("x", n(), a.clone()), exists_numeral(&b, 0))
        .unwrap();
    let hip = b
        .axiom(
            Schema::Hip,
            [
                ("x", bind("x", n())),
                ("A", fp(a)),
                ("y", bind("y", n())),
                ("B", fp(f("(eq N (var y N) zero)"))),
            ],
        )
        .unwrap();
    check(&b, b.mp(hip, prem).unwrap(), &small());
}

#[test]
fn u_principles() {
    let b = ProofBuilder::new(Flavor::U);
    let ns = FiniteType::star(n());
    let phi = f("(eq N (len (var s (* N))) zero)");
    for s in [Schema::OsStarOr, Schema::UsStarOr] {
        let ax = b
            .axiom(s, [("s", bind("s", ns.clone())), ("A", fp(phi.clone()))])
            .unwrap();
        check(&b, ax, &small());
    }
    let all_y = b.generalize("y", n(), exists_numeral(&b, 0)).unwrap();
    let nu = b
        .axiom(
            Schema::Nu,
            [
                ("y", bind("y", n())),
                ("x", bind("x", n())),
                ("A", fp(f("(eq N (var x N) zero)"))),
            ],
        )
        .unwrap();
    check(&b, b.mp(nu, all_y).unwrap(), &small());
    let ac = b
        .axiom(
            Schema::AcSt,
            [
                ("x", bind("x", n())),
                ("y", bind("y", n())),
                ("A", fp(f("(eq N (var y N) (var x N))"))),
            ],
        )
        .unwrap();
    check(&b, b.mp(ac, all_st_exists_st(&b)).unwrap(), &small());
    let a = f("(eq N (var x N) (var x N))");
    let prem = b
        .weaken(Formula::forall_st("x", n(), a.clone()), exists_numeral(&b, 0))
        .unwrap();
    let ip = b
        .axiom(
            Schema::IpSt,
            [
                ("x", bind("x", n())),
                ("A", fp(a)),
                ("y", bind("y", n())),
                ("B", fp(f("(eq N (var y N) zero)"))),
            ],
        )
        .unwrap();
    check(&b, b.mp(ip, prem).unwrap(), &small());
}

#[test]
fn internal_axioms_extract_the_empty_bundle() {
    for flavor in [Flavor::U, Flavor::Dst] {
        let b = ProofBuilder::new(flavor);
        let x = Term::var("x", n());
        let sn = b.axiom(Schema::SuccNonzero, [("t", Param::Term(x.clone()))]).unwrap();
        let all = b.generalize("x", n(), sn).unwrap();
        let proof = b.proof(all);
        assert!(extract(&proof).unwrap().terms.is_empty());
    }
}
