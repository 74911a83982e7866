//! The nonstandard Dialectica translation. Witness tuples are finite
//! sequences of candidates.

use super::{
    exists_in, forall_in_all, prepare, seq_apps, subst_all, types, unbound, vars, Flavor, Fresh, TranslateError,
    TranslatedFormula,
};
use crate::formula::Formula;
use crate::term::Term;
use crate::types::FiniteType;

pub fn dst_translate(formula: &Formula) -> Result<TranslatedFormula, TranslateError> {
    let (f, mut fresh) = prepare(formula)?;
    Ok(dst(&f, &mut fresh))
}

fn dst(f: &Formula, fr: &mut Fresh) -> TranslatedFormula {
    if f.is_internal() {
        return TranslatedFormula::atom(f.clone(), Flavor::Dst);
    }
    match f {
        Formula::St(ty, t) => {
            let s = (fr.name("s"), FiniteType::star(ty.clone()));
            let sv = Term::var(s.0.clone(), s.1.clone());
            let y = (fr.name("a"), ty.clone());
            let matrix = exists_in(
                fr,
                &y,
                sv,
                Formula::eq(ty.clone(), t.clone(), Term::var(y.0.clone(), ty.clone())),
            );
            TranslatedFormula {
                exist: vec![s],
                univ: vec![],
                matrix,
                flavor: Flavor::Dst,
            }
        }
        Formula::And(a, b) | Formula::Or(a, b) => {
            let p = dst(a, fr);
            let q = dst(b, fr);
            let matrix = match f {
                Formula::And(..) => Formula::and(p.matrix, q.matrix),
                _ => Formula::or(p.matrix, q.matrix),
            };
            TranslatedFormula {
                exist: [p.exist, q.exist].concat(),
                univ: [p.univ, q.univ].concat(),
                matrix,
                flavor: Flavor::Dst,
            }
        }
        Formula::Imp(a, b) => {
            let p = dst(a, fr);
            let q = dst(b, fr);
            let s_ty = types(&p.exist);
            let v_ty = types(&q.univ);
            let sv_ty: Vec<FiniteType> = s_ty.iter().chain(&v_ty).cloned().collect();
            let big_t = fr.tuple(
                "T",
                q.exist.iter().map(|(_, t)| FiniteType::seq_arrows(&s_ty, t.clone())),
            );
            let big_y = fr.tuple(
                "Y",
                p.univ
                    .iter()
                    .map(|(_, t)| FiniteType::seq_arrows(&sv_ty, FiniteType::star(t.clone()))),
            );
            let s_args = vars(&p.exist);
            let sv_args: Vec<Term> = s_args.iter().cloned().chain(vars(&q.univ)).collect();
            let collectors: Vec<Term> = vars(&big_y).into_iter().map(|y| seq_apps(y, &sv_args)).collect();
            let witnesses: Vec<Term> = vars(&big_t).into_iter().map(|t| seq_apps(t, &s_args)).collect();
            let antecedent = forall_in_all(fr, &p.univ, &collectors, p.matrix);
            let consequent = subst_all(&q.matrix, &q.exist, &witnesses);
            TranslatedFormula {
                exist: [big_t, big_y].concat(),
                univ: [p.exist, q.univ].concat(),
                matrix: Formula::imp(antecedent, consequent),
                flavor: Flavor::Dst,
            }
        }
        Formula::Forall(z, ty, a) => {
            let p = dst(a, fr);
            TranslatedFormula {
                matrix: Formula::forall(z.clone(), ty.clone(), p.matrix),
                ..p
            }
        }
        Formula::Exists(z, ty, a) => {
            let p = dst(a, fr);
            let t = fr.tuple("t", p.univ.iter().map(|(_, t)| FiniteType::star(t.clone())));
            let body = forall_in_all(fr, &p.univ, &vars(&t), p.matrix);
            TranslatedFormula {
                exist: p.exist,
                univ: t,
                matrix: Formula::exists(z.clone(), ty.clone(), body),
                flavor: Flavor::Dst,
            }
        }
        Formula::ExistsSt(z, ty, a) => {
            let p = dst(a, fr);
            let u = (fr.name("u"), FiniteType::star(ty.clone()));
            let t = fr.tuple("t", p.univ.iter().map(|(_, t)| FiniteType::star(t.clone())));
            let body = forall_in_all(fr, &p.univ, &vars(&t), p.matrix);
            let uv = Term::var(u.0.clone(), u.1.clone());
            let matrix = exists_in(fr, &(z.clone(), ty.clone()), uv, body);
            TranslatedFormula {
                exist: [vec![u], p.exist].concat(),
                univ: t,
                matrix,
                flavor: Flavor::Dst,
            }
        }
        Formula::ForallSt(z, ty, a) => {
            let p = dst(a, fr);
            let big_s = fr.tuple(
                "S",
                p.exist.iter().map(|(_, t)| FiniteType::seq_arrows([ty], t.clone())),
            );
            let zv = Term::var(z.clone(), ty.clone());
            let applied: Vec<Term> = vars(&big_s)
                .into_iter()
                .map(|s| seq_apps(s, std::slice::from_ref(&zv)))
                .collect();
            TranslatedFormula {
                exist: big_s,
                univ: [vec![(z.clone(), ty.clone())], p.univ].concat(),
                matrix: subst_all(&p.matrix, &p.exist, &applied),
                flavor: Flavor::Dst,
            }
        }
        Formula::BoundedForall(..) | Formula::BoundedExists(..) => {
            let g = unbound(fr, f);
            dst(&g, fr)
        }
        Formula::Eq(..) => unreachable!("equations are internal"),
        Formula::In(..) | Formula::SubsetEq(..) | Formula::Hyper(..) | Formula::Not(_) | Formula::Bot => {
            unreachable!("sugar is expanded before translation")
        }
    }
}
