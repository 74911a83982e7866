//! The uniform Diller-Nahm translation. Witnesses are single terms; only
//! challenges of implications are collected into sequences.

use super::{
    forall_in_all, prepare, subst_all, types, unbound, vars, Flavor, Fresh, TranslateError, TranslatedFormula,
};
use crate::formula::Formula;
use crate::term::Term;
use crate::types::FiniteType;

pub fn u_translate(formula: &Formula) -> Result<TranslatedFormula, TranslateError> {
    let (f, mut fresh) = prepare(formula)?;
    Ok(u(&f, &mut fresh))
}

fn flag_test(z: &Term) -> Formula {
    Formula::eq(FiniteType::Ground, z.clone(), Term::zero())
}

fn u(f: &Formula, fr: &mut Fresh) -> TranslatedFormula {
    let k = f.classify();
    if k.internal && k.or_free {
        return TranslatedFormula::atom(f.clone(), Flavor::U);
    }
    match f {
        Formula::St(ty, t) => {
            let y = fr.name("y");
            let yv = Term::var(y.clone(), ty.clone());
            TranslatedFormula {
                exist: vec![(y, ty.clone())],
                univ: vec![],
                matrix: Formula::eq(ty.clone(), yv, t.clone()),
                flavor: Flavor::U,
            }
        }
        Formula::And(a, b) => {
            let p = u(a, fr);
            let q = u(b, fr);
            TranslatedFormula {
                exist: [p.exist, q.exist].concat(),
                univ: [p.univ, q.univ].concat(),
                matrix: Formula::and(p.matrix, q.matrix),
                flavor: Flavor::U,
            }
        }
        Formula::Or(a, b) => {
            let p = u(a, fr);
            let q = u(b, fr);
            let z = fr.name("z");
            let zv = Term::var(z.clone(), FiniteType::Ground);
            let matrix = Formula::and(
                Formula::imp(flag_test(&zv), p.matrix),
                Formula::imp(Formula::negate(flag_test(&zv)), q.matrix),
            );
            TranslatedFormula {
                exist: [vec![(z, FiniteType::Ground)], p.exist, q.exist].concat(),
                univ: [p.univ, q.univ].concat(),
                matrix,
                flavor: Flavor::U,
            }
        }
        Formula::Imp(a, b) => {
            let p = u(a, fr);
            let q = u(b, fr);
            let x_ty = types(&p.exist);
            let xv_ty: Vec<FiniteType> = x_ty.iter().chain(&types(&q.univ)).cloned().collect();
            let big_u = fr.tuple("U", q.exist.iter().map(|(_, t)| FiniteType::arrows(&x_ty, t.clone())));
            let big_y = fr.tuple(
                "Y",
                p.univ
                    .iter()
                    .map(|(_, t)| FiniteType::arrows(&xv_ty, FiniteType::star(t.clone()))),
            );
            let x_args = vars(&p.exist);
            let xv_args: Vec<Term> = x_args.iter().cloned().chain(vars(&q.univ)).collect();
            let collectors: Vec<Term> = vars(&big_y)
                .into_iter()
                .map(|y| Term::apps(y, xv_args.iter().cloned()))
                .collect();
            let witnesses: Vec<Term> = vars(&big_u)
                .into_iter()
                .map(|w| Term::apps(w, x_args.iter().cloned()))
                .collect();
            let antecedent = forall_in_all(fr, &p.univ, &collectors, p.matrix);
            let consequent = subst_all(&q.matrix, &q.exist, &witnesses);
            TranslatedFormula {
                exist: [big_u, big_y].concat(),
                univ: [p.exist, q.univ].concat(),
                matrix: Formula::imp(antecedent, consequent),
                flavor: Flavor::U,
            }
        }
        Formula::Forall(z, ty, a) => {
            let p = u(a, fr);
            TranslatedFormula {
                matrix: Formula::forall(z.clone(), ty.clone(), p.matrix),
                ..p
            }
        }
        Formula::Exists(z, ty, a) => {
            let p = u(a, fr);
            let ys = fr.tuple("y", p.univ.iter().map(|(_, t)| FiniteType::star(t.clone())));
            let body = forall_in_all(fr, &p.univ, &vars(&ys), p.matrix);
            TranslatedFormula {
                exist: p.exist,
                univ: ys,
                matrix: Formula::exists(z.clone(), ty.clone(), body),
                flavor: Flavor::U,
            }
        }
        Formula::ExistsSt(z, ty, a) => {
            let p = u(a, fr);
            TranslatedFormula {
                exist: [vec![(z.clone(), ty.clone())], p.exist].concat(),
                ..p
            }
        }
        Formula::ForallSt(z, ty, a) => {
            let p = u(a, fr);
            let big_x = fr.tuple(
                "X",
                p.exist.iter().map(|(_, t)| FiniteType::arrow(ty.clone(), t.clone())),
            );
            let zv = Term::var(z.clone(), ty.clone());
            let applied: Vec<Term> = vars(&big_x).into_iter().map(|x| Term::app(x, zv.clone())).collect();
            TranslatedFormula {
                exist: big_x,
                univ: [vec![(z.clone(), ty.clone())], p.univ].concat(),
                matrix: subst_all(&p.matrix, &p.exist, &applied),
                flavor: Flavor::U,
            }
        }
        Formula::BoundedForall(..) | Formula::BoundedExists(..) => {
            let g = unbound(fr, f);
            u(&g, fr)
        }
        Formula::Eq(..) => unreachable!("equations are internal and disjunction-free"),
        Formula::In(..) | Formula::SubsetEq(..) | Formula::Hyper(..) | Formula::Not(_) | Formula::Bot => {
            unreachable!("sugar is expanded before translation")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::formula_from_str;

    fn tr(src: &str) -> TranslatedFormula {
        u_translate(&formula_from_str(src).unwrap()).unwrap()
    }

    #[test]
    fn st_clause_golden() {
        assert_eq!(
            tr("(st N (var x))").to_string(),
            "(exists-st ((y N)) (forall-st () (eq N (var y) (var x))))"
        );
    }

    #[test]
    fn forall_st_exists_st() {
        let t = tr("(forall-st (x N) (exists-st (y N) (eq N (var y) (var x))))");
        let n = FiniteType::Ground;
        assert_eq!(
            t.exist,
            vec![("X".to_string(), FiniteType::arrow(n.clone(), n.clone()))]
        );
        assert_eq!(t.univ, vec![("x".to_string(), n)]);
        assert_eq!(t.matrix.to_string(), "(eq N (app (var X (-> N N)) (var x)) (var x))");
    }

    #[test]
    fn sigma_form_is_fixed() {
        let src =
            "(exists-st (a N) (exists-st (b (* N)) (forall-st (c N) (forall-st (d N) (eq N (var a) (len (var b)))))))";
        let t = tr(src);
        assert_eq!(t.to_formula(), formula_from_str(src).unwrap());
    }

    #[test]
    fn disjunction_introduces_one_flag() {
        let t = tr("(or (st N (var a)) (eq N zero zero))");
        assert_eq!(t.exist[0], ("z".to_string(), FiniteType::Ground));
        assert_eq!(t.exist.len(), 2);
        assert!(t.invariant_violation().is_none());
    }

    #[test]
    fn implication_collects_challenges() {
        let t = tr("(imp (forall-st (a N) (eq N (var a) (var a))) (st N zero))");
        let n = FiniteType::Ground;
        // No antecedent witnesses, so U : N and the collector Y : N*.
        assert_eq!(t.exist.len(), 2);
        assert_eq!(t.exist[1].1, FiniteType::star(n));
    }
}
