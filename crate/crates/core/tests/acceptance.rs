//! Acceptance suite. Prints one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_RED` are reported as FAIL with their analysis
//! but do not fail the process; anything else failing does, and so does a
//! known-red criterion that starts passing.

use clap::Parser;
use nsdial::bundle::RealiserBundle;
use nsdial::cli::{run, Cli};
use nsdial::formula::alpha_eq_formula;
use nsdial::gen::{seed_from_env, Gen, Shape};
use nsdial::kernel::syntax::{bundle_from_str, proof_from_str, proof_sexp};
use nsdial::kernel::{check_proof, extract, extract_u, Param, ProofBuilder, Schema};
use nsdial::oracle::{check_upward_closed, enumerate_values, replay, verify_bundle, Grid, Truth, Verdict};
use nsdial::reduce::{eval_nat, eval_seq, normalize, CanonicalValue};
use nsdial::syntax::{formula_from_str, formula_sexp, read_one, term_from_str, term_sexp};
use nsdial::term::{alpha_eq, subst};
use nsdial::translate::{translate, Flavor};
use nsdial::{Const, FiniteType, Term};
use std::path::{Path, PathBuf};
use std::time::Instant;

type Outcome = Result<String, String>;
type Criterion = (usize, &'static str, fn() -> Outcome);

const KNOWN_RED: &[(usize, &str)] = &[(
    6,
    "the printed D_st US* realiser concatenates the elements of its argument, \
     which needs s'' : σ**, while the translation's challenge is s'' : σ*",
)];

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/corpus")
}

fn n() -> FiniteType {
    FiniteType::Ground
}

fn ns() -> FiniteType {
    FiniteType::star(n())
}

fn values(ty: &FiniteType, grid: &Grid) -> Vec<Term> {
    enumerate_values(ty, grid)
        .unwrap()
        .iter()
        .map(CanonicalValue::to_term)
        .collect()
}

fn same_nf(l: &Term, r: &Term) -> bool {
    alpha_eq(&normalize(l), &normalize(r))
}

/// Collects failures; the first few are reported.
#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, unit: &str) -> Outcome {
        if self.failures.is_empty() {
            Ok(format!("{} {unit}", self.checked))
        } else {
            let n = self.failures.len();
            let shown: Vec<_> = self.failures.into_iter().take(3).collect();
            Err(format!("{n}/{} failed; {}", self.checked, shown.join("; ")))
        }
    }
}

fn nats(xs: &[CanonicalValue]) -> Vec<u64> {
    xs.iter().map(|x| x.as_nat().unwrap()).collect()
}

fn c1_defining_equations() -> Outcome {
    let grid = Grid::new(3, 2);
    let mut t = Tally::default();
    let nums = values(&n(), &grid);
    for e in [n(), ns()] {
        let es = values(&e, &grid);
        let seqs = values(&FiniteType::star(e.clone()), &grid);
        t.check(
            same_nf(&Term::len(e.clone(), Term::nil(e.clone())), &Term::zero()),
            || "|<>| = 0".into(),
        );
        for a in &es {
            for s in &seqs {
                let cs = Term::cons(e.clone(), a.clone(), s.clone());
                t.check(
                    same_nf(
                        &Term::len(e.clone(), cs.clone()),
                        &Term::succ(Term::len(e.clone(), s.clone())),
                    ),
                    || format!("|C {a} {s}|"),
                );
                t.check(same_nf(&Term::proj(e.clone(), cs.clone(), Term::zero()), a), || {
                    format!("(C {a} {s})_0")
                });
                for i in &nums {
                    t.check(
                        same_nf(
                            &Term::proj(e.clone(), cs.clone(), Term::succ(i.clone())),
                            &Term::proj(e.clone(), s.clone(), i.clone()),
                        ),
                        || format!("(C {a} {s})_S{i}"),
                    );
                }
                // Three-way instances only at σ = 0; σ = 0* would be millions.
                for u in seqs.iter().filter(|_| e == n()) {
                    t.check(
                        same_nf(
                            &Term::concat(e.clone(), cs.clone(), u.clone()),
                            &Term::cons(e.clone(), a.clone(), Term::concat(e.clone(), s.clone(), u.clone())),
                        ),
                        || format!("(C {a} {s}) . {u}"),
                    );
                }
            }
        }
        for s in &seqs {
            t.check(
                same_nf(&Term::concat(e.clone(), Term::nil(e.clone()), s.clone()), s),
                || format!("<> . {s}"),
            );
            for i in &nums {
                t.check(
                    same_nf(
                        &Term::proj(e.clone(), Term::nil(e.clone()), i.clone()),
                        &Term::default_of(e.clone()),
                    ),
                    || format!("<>_{i}"),
                );
            }
        }
    }
    // Recursors over naturals, with a counting and a summing step.
    let (acc, el) = (Term::var("acc", n()), Term::var("e", n()));
    let steps = [
        Term::lams(&[("acc".into(), n()), ("e".into(), n())], Term::succ(acc.clone())),
        Term::lams(
            &[("acc".into(), n()), ("e".into(), n())],
            Term::plus(acc.clone(), el.clone()),
        ),
    ];
    let lrec = || Term::Const(Const::ListRec(n(), n()));
    let seqs = values(&ns(), &grid);
    for x in &nums {
        for y in &steps {
            t.check(
                same_nf(&Term::apps(lrec(), [x.clone(), y.clone(), Term::nil(n())]), x),
                || "L x y <>".into(),
            );
            for z in &nums {
                for s in &seqs {
                    let lhs = Term::apps(lrec(), [x.clone(), y.clone(), Term::cons(n(), z.clone(), s.clone())]);
                    let rhs = Term::apps(
                        y.clone(),
                        [Term::apps(lrec(), [x.clone(), y.clone(), s.clone()]), z.clone()],
                    );
                    t.check(same_nf(&lhs, &rhs), || format!("L {x} y (C {z} {s})"));
                }
            }
        }
        for s in &seqs {
            // Independent oracle: a native fold.
            let xs = nats(&eval_seq(s).unwrap());
            let sum = Term::apps(lrec(), [x.clone(), steps[1].clone(), s.clone()]);
            let want = x.as_numeral().unwrap() + xs.iter().sum::<u64>();
            t.check(eval_nat(&sum).unwrap() == want, || format!("sum {s}"));
        }
        let r_step = Term::lams(&[("m".into(), n()), ("r".into(), n())], Term::succ(Term::var("r", n())));
        t.check(
            same_nf(&Term::nat_rec(n(), x.clone(), r_step.clone(), Term::zero()), x),
            || "R x y 0".into(),
        );
        for k in &nums {
            let lhs = Term::nat_rec(n(), x.clone(), r_step.clone(), Term::succ(k.clone()));
            let rhs = Term::apps(
                r_step.clone(),
                [k.clone(), Term::nat_rec(n(), x.clone(), r_step.clone(), k.clone())],
            );
            t.check(same_nf(&lhs, &rhs), || format!("R {x} y S{k}"));
        }
    }
    // (Λx.b)[a] = b[a/x]
    let xv = Term::var("x", n());
    let mut bodies = vec![
        Term::nil(n()),
        Term::singleton(n(), xv.clone()),
        Term::seq(n(), [xv.clone(), Term::succ(xv.clone())]),
    ];
    bodies.extend(seqs.iter().map(|s| Term::cons(n(), xv.clone(), s.clone())));
    for b in &bodies {
        for a in &nums {
            let lhs = Term::seq_app(n(), n(), Term::seq_abs("x", n(), b.clone()), a.clone());
            t.check(same_nf(&lhs, &subst(b, "x", a)), || format!("(Λx.{b})[{a}]"));
        }
    }
    t.finish("equation instances")
}

/// A small fixed family of closed functions `0 → 0*`.
fn function_family() -> Vec<Term> {
    let x = Term::var("x", n());
    [
        Term::nil(n()),
        Term::singleton(n(), x.clone()),
        Term::seq(n(), [x.clone(), Term::succ(x.clone())]),
        Term::singleton(n(), Term::zero()),
    ]
    .into_iter()
    .map(|b| Term::lam("x", n(), b))
    .collect()
}

fn c2_sequence_lemmas() -> Outcome {
    let grid = Grid::new(3, 2);
    let mut t = Tally::default();
    let nums = values(&n(), &grid);
    for e in [n(), ns()] {
        let seqs = values(&FiniteType::star(e.clone()), &grid);
        for s in &seqs {
            let len0 = eval_nat(&Term::len(e.clone(), s.clone())).unwrap() == 0;
            t.check(len0 == alpha_eq(s, &Term::nil(e.clone())), || {
                format!("|{s}| = 0 <-> {s} = <>")
            });
            let sv = eval_canonical_seq(s);
            // Pairs only at σ = 0, as for the defining equations.
            for u in seqs.iter().filter(|_| e == n()) {
                let uv = eval_canonical_seq(u);
                // Extensional equality by length and components.
                let ext = eval_nat(&Term::len(e.clone(), s.clone())).unwrap()
                    == eval_nat(&Term::len(e.clone(), u.clone())).unwrap()
                    && (0..sv.len() as u64).all(|i| {
                        same_nf(
                            &Term::proj(e.clone(), s.clone(), Term::nat(i)),
                            &Term::proj(e.clone(), u.clone(), Term::nat(i)),
                        )
                    });
                t.check(!ext || alpha_eq(s, u), || format!("{s} =e {u} -> {s} = {u}"));
                let cat = Term::concat(e.clone(), s.clone(), u.clone());
                t.check(
                    eval_nat(&Term::len(e.clone(), cat.clone())).unwrap() as usize == sv.len() + uv.len(),
                    || format!("|{s} . {u}|"),
                );
                let native: Vec<CanonicalValue> = sv.iter().chain(&uv).cloned().collect();
                t.check(eval_canonical_seq(&cat) == native, || {
                    format!("{s} . {u} componentwise")
                });
            }
        }
    }
    // s ⊆ s' → s[a] ⊆ s'[a], with s, s' over a fixed function family.
    let fam = function_family();
    let fty = FiniteType::arrow(n(), ns());
    let idx_seqs = index_sequences(fam.len(), grid.seq_len_bound + 1);
    for si in &idx_seqs {
        for sj in &idx_seqs {
            if !si.iter().all(|i| sj.contains(i)) {
                continue;
            }
            let s = Term::seq(fty.clone(), si.iter().map(|&i| fam[i].clone()));
            let s2 = Term::seq(fty.clone(), sj.iter().map(|&i| fam[i].clone()));
            for a in &nums {
                let l = eval_seq(&Term::seq_app(n(), n(), s.clone(), a.clone())).unwrap();
                let r = eval_seq(&Term::seq_app(n(), n(), s2.clone(), a.clone())).unwrap();
                t.check(l.iter().all(|x| r.contains(x)), || format!("{si:?} ⊆ {sj:?} at {a}"));
            }
        }
    }
    t.finish("lemma instances")
}

fn eval_canonical_seq(s: &Term) -> Vec<CanonicalValue> {
    match nsdial::reduce::eval_canonical(s).unwrap() {
        CanonicalValue::Seq(_, xs) => xs,
        other => panic!("not a sequence: {other}"),
    }
}

/// All index sequences over `0..k` of length at most `len`.
fn index_sequences(k: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..len {
        layer = layer
            .iter()
            .flat_map(|p: &Vec<usize>| (0..k).map(move |i| [p.clone(), vec![i]].concat()))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

fn c3_dst_invariants() -> Outcome {
    let mut g = Gen::new(seed_from_env());
    let mut t = Tally::default();
    for _ in 0..1000 {
        let f = g.formula(Shape::ANY, 3);
        match translate(&f, Flavor::Dst) {
            Ok(tf) => t.check(tf.invariant_violation().is_none(), || {
                format!("{f}: {}", tf.invariant_violation().unwrap())
            }),
            Err(e) => t.check(false, || format!("{f}: {e}")),
        }
    }
    // ∀st x ∃st y (y = x), derived by hand:
    // ∃st S:(0→0*)* ∀st x ∃i<|S[x]| (S[x]_i = x).
    let f = formula_from_str("(forall-st (x N) (exists-st (y N) (eq N (var y) (var x))))").unwrap();
    let tf = translate(&f, Flavor::Dst).unwrap();
    let sty = FiniteType::star(FiniteType::arrow(n(), ns()));
    let matrix = formula_from_str(
        "(exists-lt (i (len (seqapp (var S (* (-> N (* N)))) (var x N)))) \
           (eq N (proj (seqapp (var S (* (-> N (* N)))) (var x N)) (var i)) (var x N)))",
    )
    .unwrap();
    t.check(
        tf.exist == [("S".to_string(), sty)]
            && tf.univ == [("x".to_string(), n())]
            && alpha_eq_formula(&tf.matrix, &matrix),
        || format!("worked example: got {tf}"),
    );
    t.finish("formulas")
}

fn c4_upward_closure() -> Outcome {
    let mut g = Gen::new(seed_from_env());
    let grid = Grid::new(2, 2);
    let mut t = Tally::default();
    for _ in 0..200 {
        let f = g.formula(Shape::GROUND_DATA, 3);
        let tf = translate(&f, Flavor::Dst).map_err(|e| format!("{f}: {e}"))?;
        match check_upward_closed(&tf, &grid) {
            Verdict::GridValid => t.check(true, String::new),
            Verdict::CounterexampleFound(a) => t.check(false, || format!("{f} at {a}")),
            Verdict::Unknown(r) => t.check(false, || format!("{f}: unknown ({r})")),
        }
    }
    t.finish("formulas GridValid")
}

fn c5_u_idempotence() -> Outcome {
    let mut g = Gen::new(seed_from_env());
    let mut t = Tally::default();
    for _ in 0..500 {
        let f = g.sigma_form(2);
        let tf = translate(&f, Flavor::U).map_err(|e| format!("{f}: {e}"))?;
        t.check(alpha_eq_formula(&tf.to_formula(), &f), || format!("{f} ↦ {tf}"));
    }
    for _ in 0..1000 {
        let f = g.formula(Shape::ANY, 3);
        let tf = translate(&f, Flavor::U).map_err(|e| format!("{f}: {e}"))?;
        let k = tf.matrix.classify();
        t.check(k.internal && k.or_free, || format!("{f}: matrix {}", tf.matrix));
    }
    t.finish("formulas")
}

/// The bundle extracted from a single axiom instance.
fn axiom_bundle(flavor: Flavor, schema: Schema, params: Vec<(&str, Param)>) -> RealiserBundle {
    let b = ProofBuilder::new(flavor);
    let ax = b.axiom(schema, params).unwrap_or_else(|e| panic!("{schema:?}: {e}"));
    extract(&b.proof(ax)).unwrap()
}

fn fp(s: &str) -> Param {
    Param::Formula(formula_from_str(s).unwrap())
}

fn binder(x: &str, ty: FiniteType) -> Param {
    Param::Binder(x.into(), ty)
}

/// Compares each realiser with the printed term; `None` marks a component
/// the text leaves arbitrary (it must still have the right type).
fn compare(name: &str, bundle: &RealiserBundle, printed: &[Option<&str>], bad: &mut Vec<String>) {
    if bundle.terms.len() != printed.len() {
        bad.push(format!(
            "{name}: {} realisers, {} printed",
            bundle.terms.len(),
            printed.len()
        ));
        return;
    }
    for ((x, _), (got, want)) in bundle.translated.exist.iter().zip(bundle.terms.iter().zip(printed)) {
        let Some(want) = want else { continue };
        let want = normalize(&term_from_str(want).unwrap_or_else(|e| panic!("{name}: {want}: {e}")));
        if !alpha_eq(got, &want) {
            bad.push(format!(
                "{name}.{x}: extracted {} vs printed {}",
                term_sexp(got),
                term_sexp(&want)
            ));
        }
    }
}

fn c6_extraction_fidelity() -> Outcome {
    use Flavor::{Dst, U};
    let a = "(exists-st (x N) (forall-st (y N) (eq N (var x) (var y))))";
    let az = "(exists-st (x N) (forall-st (y N) (eq N (var x) (var z N))))";
    let b = "(exists-st (u N) (forall-st (v N) (eq N (var u) (app succ (var v)))))";
    let phi = "(exists-st (u N) (forall-st (v N) (eq N (var u) (var x N))))";
    let len0 = "(eq N (len (var s (* N))) zero)";
    let one = || Param::Term(Term::nat(1));
    let f = FiniteType::arrow(n(), n());
    let mut bad = Vec::new();
    let mut count = 0;
    let mut run = |name: &str, flavor, schema, params, printed: &[Option<&str>]| {
        count += 1;
        compare(name, &axiom_bundle(flavor, schema, params), printed, &mut bad);
    };
    run(
        "or-intro",
        U,
        Schema::OrIntroL,
        vec![("A", fp(a)), ("B", fp(b))],
        &[
            Some("(lam (x N) zero)"),
            Some("(lam (x N) (var x))"),
            None,
            Some("(lam (x N) (lam (y1 N) (lam (v N) (seq N (var y1)))))"),
        ],
    );
    run(
        "forall-inst",
        U,
        Schema::ForallInst,
        vec![("x", binder("z", n())), ("A", fp(az)), ("b", one())],
        &[
            Some("(lam (x N) (var x))"),
            Some("(lam (x N) (lam (y1 N) (seq N (var y1))))"),
        ],
    );
    run(
        "exists-intro",
        U,
        Schema::ExistsIntro,
        vec![("x", binder("z", n())), ("A", fp(az)), ("b", one())],
        &[Some("(lam (x N) (var x))"), Some("(lam (x N) (lam (t (* N)) (var t)))")],
    );
    run(
        "allst-def-l",
        U,
        Schema::AllStDefL,
        vec![("x", binder("x", n())), ("A", fp(phi))],
        &[
            Some("(lam (U (-> N N)) (lam (y N) (app (var U) (var y))))"),
            Some("(lam (U (-> N N)) (lam (y N) (lam (v1 N) (seq N (var y)))))"),
            Some("(lam (U (-> N N)) (lam (y N) (lam (v1 N) (seq N (var v1)))))"),
        ],
    );
    // Arguments in the order the → clause fixes (Ū, x′, v̄′).
    run(
        "allst-def-r",
        U,
        Schema::AllStDefR,
        vec![("x", binder("x", n())), ("A", fp(phi))],
        &[
            Some("(lam (U (-> N N)) (lam (x1 N) (app (var U) (var x1))))"),
            Some("(lam (U (-> N N)) (lam (x1 N) (lam (v1 N) (seq N (var x1)))))"),
            Some("(lam (U (-> N N)) (lam (x1 N) (lam (v1 N) (seq N (var v1)))))"),
        ],
    );
    run(
        "exst-def-l",
        U,
        Schema::ExStDefL,
        vec![("x", binder("x", n())), ("A", fp(phi))],
        &[
            Some("(lam (x N) (lam (u N) (var x)))"),
            Some("(lam (x N) (lam (u N) (var u)))"),
            Some("(lam (x N) (lam (u N) (lam (s (* N)) (var s))))"),
        ],
    );
    run(
        "exst-def-r",
        U,
        Schema::ExStDefR,
        vec![("x", binder("x", n())), ("A", fp(phi))],
        &[
            Some("(lam (y N) (lam (u1 N) (var y)))"),
            Some("(lam (y N) (lam (u1 N) (var u1)))"),
            Some("(lam (y N) (lam (u1 N) (lam (v N) (seq (* N) (seq N (var v))))))"),
        ],
    );
    run(
        "st-ext",
        U,
        Schema::StExt,
        vec![
            ("s", Param::Term(Term::var("a", n()))),
            ("t", Param::Term(Term::var("b", n()))),
        ],
        &[Some("(lam (x1 N) (var x1))")],
    );
    run(
        "st-closed",
        U,
        Schema::StClosed,
        vec![("a", Param::Term(Term::nat(2)))],
        &[Some("2")],
    );
    run(
        "st-app",
        U,
        Schema::StApp,
        vec![
            ("f", Param::Term(Term::var("g", f.clone()))),
            ("a", Param::Term(Term::var("a", n()))),
        ],
        &[Some("(lam (f1 (-> N N)) (lam (x1 N) (app (var f1) (var x1))))")],
    );
    let s_param = || binder("s", ns());
    run(
        "os-star-or",
        U,
        Schema::OsStarOr,
        vec![("s", s_param()), ("A", fp(len0))],
        &[Some("(lam (s1 (* N)) (seq (* N) (var s1)))")],
    );
    run(
        "us-star-or",
        U,
        Schema::UsStarOr,
        vec![("s", s_param()), ("A", fp(len0))],
        &[Some("(lam (s1 (* N)) (var s1))")],
    );
    run(
        "os-star",
        Dst,
        Schema::OsStar,
        vec![("s", s_param()), ("A", fp(len0))],
        &[Some("(seqabs (s1 (* N)) (seq (* N) (var s1)))")],
    );
    // Internal ∨-free axioms: the empty tuple.
    run(
        "succ-nonzero",
        U,
        Schema::SuccNonzero,
        vec![("t", Param::Term(Term::var("x", n())))],
        &[],
    );
    // US* (D_st): T := Λs″.(s″₀ · … · s″_{|s″|−1}), built at the challenge's type.
    count += 1;
    let us = axiom_bundle(Dst, Schema::UsStar, vec![("s", s_param()), ("A", fp(len0))]);
    let challenge = us.translated.univ[0].1.clone();
    match us_star_printed(&challenge) {
        Ok(printed) => {
            if !alpha_eq(&us.terms[0], &normalize(&printed)) {
                bad.push(format!(
                    "us-star: extracted {} vs printed {}",
                    term_sexp(&us.terms[0]),
                    term_sexp(&printed)
                ));
            }
        }
        Err(why) => bad.push(format!("us-star: {why}; extracted {}", term_sexp(&us.terms[0]))),
    }
    if bad.is_empty() {
        Ok(format!("{count} schemas match the printed realisers"))
    } else {
        Err(format!("{}/{count} mismatches: {}", bad.len(), bad.join("; ")))
    }
}

/// `Λs″. L ⟨⟩ (λacc e. acc · e) s″`, the concatenation of the components
/// of `s″`, when `s″` is a sequence of sequences.
fn us_star_printed(challenge: &FiniteType) -> Result<Term, String> {
    let FiniteType::Star(inner) = challenge else {
        return Err(format!("challenge type {challenge} is not a sequence"));
    };
    let FiniteType::Star(elem) = &**inner else {
        return Err(format!(
            "printed term concatenates the components of s'' : {challenge}, which are not sequences"
        ));
    };
    let elem = (**elem).clone();
    let acc = Term::var("acc", (**inner).clone());
    let e = Term::var("e", (**inner).clone());
    let step = Term::lams(
        &[("acc".into(), (**inner).clone()), ("e".into(), (**inner).clone())],
        Term::concat(elem.clone(), acc, e),
    );
    let body = Term::apps(
        Term::Const(Const::ListRec((**inner).clone(), (**inner).clone())),
        [Term::nil(elem), step, Term::var("s''", challenge.clone())],
    );
    Ok(Term::seq_abs("s''", challenge.clone(), body))
}

fn read(name: &str) -> String {
    std::fs::read_to_string(corpus_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

fn c7_doubling() -> Outcome {
    let proof = proof_from_str(&read("doubling-u.proof")).map_err(|e| e.to_string())?;
    if proof.flavor != Flavor::U {
        return Err("fixture is not a u proof".into());
    }
    check_proof(&proof).map_err(|e| e.to_string())?;
    let bundle = extract_u(&proof).map_err(|e| e.to_string())?;
    let [t] = bundle.terms.as_slice() else {
        return Err(format!("expected one realiser, got {}", bundle.terms.len()));
    };
    if !t.is_closed() || t.ty() != FiniteType::arrow(n(), n()) {
        return Err(format!("T = {t} is not a closed 0 -> 0 term"));
    }
    let v = verify_bundle(&bundle, &Grid::new(20, 2));
    if v != Verdict::GridValid {
        return Err(format!("verify at B=20: {v}"));
    }
    // Hand-computed doubles.
    for (k, want) in [(0, 0), (1, 2), (5, 10)] {
        let got = eval_nat(&Term::app(t.clone(), Term::nat(k))).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("T {k} = {got}, want {want}"));
        }
    }
    Ok("T : 0 -> 0 closed, GridValid at B=20, T 0/1/5 = 0/2/10".into())
}

fn c8_external_induction() -> Outcome {
    let proof = proof_from_str(&read("ir-st-u.proof")).map_err(|e| e.to_string())?;
    let bundle = extract(&proof).map_err(|e| e.to_string())?;
    let head = &bundle.terms[0];
    // λn. R t₁ T₂ n
    let Term::Lam(x, _, body) = head else {
        return Err(format!("head {} is not a λ", term_sexp(head)));
    };
    let (f, args) = body.spine();
    let shaped = matches!(f, Term::Const(Const::NatRec(_)))
        && args.len() == 3
        && matches!(args[2], Term::Var(y, _) if y == x)
        && !args[0].has_free(x)
        && !args[1].has_free(x);
    if !shaped {
        return Err(format!("head {} is not λn.R t1 T2 n", term_sexp(head)));
    }
    let v = verify_bundle(&bundle, &Grid::new(5, 2));
    if v != Verdict::GridValid {
        return Err(format!("verify at B=5: {v}"));
    }
    Ok(format!("head {} ; GridValid at B=5", term_sexp(head)))
}

fn c9_negative_controls() -> Outcome {
    let grid = Grid::new(3, 2);
    let mut lines = Vec::new();
    for name in [
        "os-star-empty-u.bad.bundle",
        "os-star-empty-dst.bad.bundle",
        "doubling-identity.bad.bundle",
    ] {
        let b = bundle_from_str(&read(name)).map_err(|e| format!("{name}: {e}"))?;
        match verify_bundle(&b, &grid) {
            Verdict::CounterexampleFound(a) => {
                let r = replay(&b, &a, &grid);
                if r != Truth::False {
                    return Err(format!("{name}: replay at {a} gave {r}"));
                }
                lines.push(format!("{name} at {a}"));
            }
            v => return Err(format!("{name}: {v}")),
        }
    }
    Ok(format!("3 counterexamples replay to false ({})", lines.join(", ")))
}

/// The corpus report as JSON, without wall time or the command line.
fn corpus_report(sequential: bool) -> String {
    let dir = corpus_dir();
    let mut argv = vec!["nsdial".to_string()];
    if sequential {
        argv.push("--sequential".into());
    }
    argv.extend(["corpus".into(), "run".into(), dir.display().to_string()]);
    let cli = Cli::parse_from(&argv);
    let mut report = run(&cli, &argv[1..]).report;
    report.command.clear();
    report.to_json_without_time()
}

fn round_trip(path: &Path) -> Result<(), String> {
    let name = path.file_name().unwrap().to_string_lossy().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let printed = if name.contains(".bad.") {
        read_one(&text).map_err(|e| e.to_string())?.pretty(100)
    } else if name.ends_with(".term") {
        term_sexp(&term_from_str(&text).map_err(|e| e.to_string())?).pretty(100)
    } else if name.ends_with(".f") {
        formula_sexp(&formula_from_str(&text).map_err(|e| e.to_string())?).pretty(100)
    } else if name.ends_with(".proof") {
        proof_sexp(&proof_from_str(&text).map_err(|e| e.to_string())?).pretty(100)
    } else if name.ends_with(".bundle") {
        bundle_from_str(&text).map_err(|e| e.to_string())?.to_sexp().pretty(100)
    } else {
        return Ok(());
    };
    if printed + "\n" == text {
        Ok(())
    } else {
        Err(format!("{name} does not print back to itself"))
    }
}

fn c10_determinism() -> Outcome {
    let first = corpus_report(false);
    let second = corpus_report(false);
    if first != second {
        return Err("two corpus runs differ".into());
    }
    if corpus_report(true) != first {
        return Err("sequential and parallel corpus runs differ".into());
    }
    let mut files: Vec<_> = std::fs::read_dir(corpus_dir())
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    for f in &files {
        round_trip(f)?;
    }
    let report: serde_json::Value = serde_json::from_str(&first).map_err(|e| e.to_string())?;
    if report["status"] != "ok" {
        return Err(format!("corpus status {}", report["status"]));
    }
    Ok(format!(
        "identical JSON over {} fixtures; all print back to themselves",
        files.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "defining equations", c1_defining_equations),
        (2, "sequence lemmas", c2_sequence_lemmas),
        (3, "D_st structural invariants", c3_dst_invariants),
        (4, "upward closure", c4_upward_closure),
        (5, "U idempotence and matrices", c5_u_idempotence),
        (6, "extraction fidelity", c6_extraction_fidelity),
        (7, "doubling extraction", c7_doubling),
        (8, "external induction extraction", c8_external_induction),
        (9, "negative controls", c9_negative_controls),
        (10, "determinism and round-trip", c10_determinism),
    ];
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut unexpected = 0;
    for (k, name, check) in criteria {
        if !filter.is_empty() && !filter.contains(&k) {
            continue;
        }
        let start = Instant::now();
        let outcome = check();
        let ms = start.elapsed().as_millis();
        let known = KNOWN_RED.iter().find(|(c, _)| *c == k);
        match (&outcome, known) {
            (Ok(d), None) => println!("PASS {k:>2} {name} [{ms} ms]: {d}"),
            (Ok(d), Some(_)) => {
                unexpected += 1;
                println!("PASS {k:>2} {name} [{ms} ms]: {d} (listed as known-red; update KNOWN_RED)");
            }
            (Err(d), None) => {
                unexpected += 1;
                println!("FAIL {k:>2} {name} [{ms} ms]: {d}");
            }
            (Err(d), Some((_, why))) => println!("FAIL {k:>2} {name} [{ms} ms]: {d} (known: {why})"),
        }
        if ms >= 60_000 {
            unexpected += 1;
            println!("     {k:>2} exceeded 60 s");
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
