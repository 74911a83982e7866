//! Realiser extraction by recursion on the proof.
//!
//! Realisers are tuples of closed terms, one per existential variable of the
//! translated conclusion. Both flavors share one construction: `u` uses `λ`
//! and application, `dst` uses `Λ` and sequence application, and collections
//! of challenges are sequences in both.

use super::schema::Schema;
use super::{annotate, KernelError, Node, Proof, Rule};
use crate::bundle::{BundleError, RealiserBundle};
use crate::formula::Formula;
use crate::term::{Const, Name, Term};
use crate::translate::{seq_apps, translate, Flavor};
use crate::types::FiniteType;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ExtractError {
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error("proof is in the {found} system, extraction requested for {wanted}")]
    WrongFlavor { wanted: Flavor, found: Flavor },
    #[error("no realiser rule for schema `{0}` in this system")]
    UnsupportedSchema(String),
    #[error(transparent)]
    Bundle(#[from] BundleError),
}

pub fn extract_u(proof: &Proof) -> Result<RealiserBundle, ExtractError> {
    extract_as(proof, Flavor::U)
}

pub fn extract_dst(proof: &Proof) -> Result<RealiserBundle, ExtractError> {
    extract_as(proof, Flavor::Dst)
}

/// Extracts in the proof's own flavor.
pub fn extract(proof: &Proof) -> Result<RealiserBundle, ExtractError> {
    extract_as(proof, proof.flavor)
}

fn extract_as(proof: &Proof, flavor: Flavor) -> Result<RealiserBundle, ExtractError> {
    if proof.flavor != flavor {
        return Err(ExtractError::WrongFlavor {
            wanted: flavor,
            found: proof.flavor,
        });
    }
    let root = annotate(proof)?;
    let target = root.cached.clone().expect("annotated");
    let mut cx = Cx { flavor, counter: 0 };
    let (_, terms) = cx.node(&root)?;
    Ok(RealiserBundle::new(target, flavor, terms)?.normalized())
}

/// Types of the existential and universal tuples of a translation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Shape {
    pub ex: Vec<FiniteType>,
    pub un: Vec<FiniteType>,
}

struct Cx {
    flavor: Flavor,
    counter: usize,
}

type Terms = Vec<Term>;

impl Cx {
    fn shape(&self, f: &Formula) -> Shape {
        let t = translate(f, self.flavor).expect("checked formulas translate");
        Shape {
            ex: t.exist.into_iter().map(|(_, ty)| ty).collect(),
            un: t.univ.into_iter().map(|(_, ty)| ty).collect(),
        }
    }

    fn fun_ty(&self, args: &[FiniteType], res: FiniteType) -> FiniteType {
        match self.flavor {
            Flavor::U => FiniteType::arrows(args, res),
            Flavor::Dst => FiniteType::seq_arrows(args, res),
        }
    }

    fn imp_shape(&self, a: &Shape, b: &Shape) -> Shape {
        let xv: Vec<FiniteType> = a.ex.iter().chain(&b.un).cloned().collect();
        Shape {
            ex: b
                .ex
                .iter()
                .map(|t| self.fun_ty(&a.ex, t.clone()))
                .chain(a.un.iter().map(|t| self.fun_ty(&xv, FiniteType::star(t.clone()))))
                .collect(),
            un: xv,
        }
    }

    fn fresh(&mut self, base: &str, ty: &FiniteType) -> (Name, FiniteType) {
        self.counter += 1;
        (format!("{base}{}", self.counter), ty.clone())
    }

    fn binders(&mut self, base: &str, tys: &[FiniteType]) -> (Vec<(Name, FiniteType)>, Terms) {
        let bs: Vec<_> = tys.iter().map(|t| self.fresh(base, t)).collect();
        let vs = bs.iter().map(|(x, t)| Term::var(x.clone(), t.clone())).collect();
        (bs, vs)
    }

    fn abs(&self, bs: &[(Name, FiniteType)], body: Term) -> Term {
        match self.flavor {
            Flavor::U => Term::lams(bs, body),
            Flavor::Dst => Term::seq_abss(bs, body),
        }
    }

    fn app(&self, f: &Term, args: &[Term]) -> Term {
        match self.flavor {
            Flavor::U => Term::apps(f.clone(), args.iter().cloned()),
            Flavor::Dst => seq_apps(f.clone(), args),
        }
    }

    /// Realiser of `A → B` from a forward map on witnesses and a backward map
    /// collecting the challenges of `A`.
    fn imp(
        &mut self,
        a: &Shape,
        b: &Shape,
        fwd: impl FnOnce(&mut Cx, &[Term]) -> Terms,
        back: impl FnOnce(&mut Cx, &[Term], &[Term]) -> Terms,
    ) -> Terms {
        let (xb, xs) = self.binders("x", &a.ex);
        let (vb, vs) = self.binders("v", &b.un);
        let us = fwd(self, &xs);
        let ys = back(self, &xs, &vs);
        debug_assert_eq!(us.len(), b.ex.len());
        debug_assert_eq!(ys.len(), a.un.len());
        let xvb: Vec<_> = xb.iter().chain(&vb).cloned().collect();
        let mut out: Terms = us.into_iter().map(|u| self.abs(&xb, u)).collect();
        out.extend(ys.into_iter().map(|y| self.abs(&xvb, y)));
        out
    }

    /// Forward part of an implication realiser applied to witnesses.
    fn forward(&self, imp: &[Term], b: &Shape, xs: &[Term]) -> Terms {
        imp[..b.ex.len()].iter().map(|u| self.app(u, xs)).collect()
    }

    /// Backward part applied to witnesses and counterchallenges.
    fn backward(&self, imp: &[Term], b: &Shape, xs: &[Term], vs: &[Term]) -> Terms {
        let args: Terms = xs.iter().chain(vs).cloned().collect();
        imp[b.ex.len()..].iter().map(|y| self.app(y, &args)).collect()
    }

    fn identity(&mut self, a: &Shape) -> Terms {
        self.imp(a, a, |_, xs| xs.to_vec(), |_, _, vs| vs.iter().map(single).collect())
    }

    /// `⊎_{v̄ ∈ c̄} body(v̄)` over the product of the collections `colls`.
    fn flat_map(
        &mut self,
        colls: &[Term],
        result: &FiniteType,
        body: &mut dyn FnMut(&mut Cx, &[Term]) -> Term,
    ) -> Term {
        let mut bound = Vec::new();
        self.flat_map_rec(colls, result, body, &mut bound)
    }

    fn flat_map_rec(
        &mut self,
        colls: &[Term],
        result: &FiniteType,
        body: &mut dyn FnMut(&mut Cx, &[Term]) -> Term,
        bound: &mut Terms,
    ) -> Term {
        let Some((c, rest)) = colls.split_first() else {
            return body(self, bound);
        };
        let elem = c.ty().elem().expect("collection").clone();
        let (vb, v) = self.fresh("e", &elem);
        let (ab, acc) = self.fresh("acc", result);
        bound.push(Term::var(vb.clone(), v.clone()));
        let inner = self.flat_map_rec(rest, result, body, bound);
        bound.pop();
        let step = Term::lams(&[(ab.clone(), acc.clone()), (vb, v)], cat(inner, Term::var(ab, acc)));
        let res_elem = result.elem().expect("sequence result").clone();
        Term::apps(
            Term::Const(Const::ListRec(result.clone(), elem)),
            [Term::nil(res_elem), step, c.clone()],
        )
    }

    /// `if z = 0 then a else b` at a witness type.
    fn case(&mut self, z: &Term, a: Term, b: Term) -> Term {
        let ty = a.ty();
        let (m, _) = self.fresh("m", &FiniteType::Ground);
        let (r, _) = self.fresh("r", &ty);
        let step = Term::lams(&[(m, FiniteType::Ground), (r, ty.clone())], b);
        Term::nat_rec(ty, a, step, z.clone())
    }

    fn node(&mut self, n: &Node) -> Result<(Formula, Terms), ExtractError> {
        let concl = n.cached.clone().expect("annotated before extraction");
        let terms = match &n.rule {
            Rule::Hyp(_) => Vec::new(),
            Rule::Axiom(s, binds) => {
                let Formula::Imp(..) = &concl else {
                    return Ok((concl.clone(), self.atomic_axiom(*s, binds, &concl)?));
                };
                self.axiom(*s, binds, &concl)?
            }
            Rule::Mp(major, minor) => {
                let (m, ts) = self.node(major)?;
                let (_, t1) = self.node(minor)?;
                let Formula::Imp(_, b) = &m else {
                    unreachable!("checked")
                };
                let b = self.shape(b);
                self.forward(&ts, &b, &t1)
            }
            Rule::ForallRule(_, _, p) => self.node(p)?.1,
            Rule::ExistsRule(_, _, p) => {
                let (c, ts) = self.node(p)?;
                let Formula::Imp(a, b) = &c else {
                    unreachable!("checked")
                };
                let (a, b) = (self.shape(a), self.shape(b));
                let xvs: Vec<FiniteType> = a.ex.iter().chain(&b.un).cloned().collect();
                let (bs, args) = self.binders("w", &xvs);
                let mut out: Terms = ts[..b.ex.len()].to_vec();
                for y in &ts[b.ex.len()..] {
                    let body = single(&self.app(y, &args));
                    out.push(self.abs(&bs, body));
                }
                out
            }
            Rule::Ind(..) => Vec::new(),
            Rule::IndSt(base, step) => {
                let (_, t1) = self.node(base)?;
                let (_, t2) = self.node(step)?;
                self.ind_st(&t1, &t2[..t1.len()])
            }
        };
        Ok((concl, terms))
    }

    /// `T̄₄ := λn. R t̄₁ T̄₂ n`, with a continuation encoding for tuples.
    fn ind_st(&mut self, t1: &[Term], t2: &[Term]) -> Terms {
        let n = FiniteType::Ground;
        let tys: Vec<FiniteType> = t1.iter().map(Term::ty).collect();
        let (nb, nv) = self.fresh("n", &n);
        let nv = Term::var(nb.clone(), nv);
        let step_at = |cx: &Cx, i: usize, m: &Term, xs: &[Term]| -> Term {
            let args: Terms = std::iter::once(m.clone()).chain(xs.iter().cloned()).collect();
            cx.app(&t2[i], &args)
        };
        if let ([base], [t2u]) = (t1, t2) {
            let ty = tys[0].clone();
            let step = match self.flavor {
                Flavor::U => t2u.clone(),
                Flavor::Dst => {
                    let (m, _) = self.fresh("m", &n);
                    let (r, _) = self.fresh("r", &ty);
                    let body = step_at(
                        self,
                        0,
                        &Term::var(m.clone(), n.clone()),
                        &[Term::var(r.clone(), ty.clone())],
                    );
                    Term::lams(&[(m, n.clone()), (r, ty.clone())], body)
                }
            };
            let rec = Term::nat_rec(ty, base.clone(), step, nv);
            return vec![self.abs(&[(nb, n)], rec)];
        }
        (0..t1.len())
            .map(|i| {
                let rho = tys[i].clone();
                let kty = FiniteType::arrows(&tys, rho.clone());
                let hty = FiniteType::arrow(kty.clone(), rho.clone());
                let (k0, _) = self.fresh("k", &kty);
                let base = Term::lam(
                    k0.clone(),
                    kty.clone(),
                    Term::apps(Term::var(k0, kty.clone()), t1.iter().cloned()),
                );
                let (m, _) = self.fresh("m", &n);
                let (h, _) = self.fresh("h", &hty);
                let (k, _) = self.fresh("k", &kty);
                let (xb, xs) = self.binders("x", &tys);
                let mv = Term::var(m.clone(), n.clone());
                let next: Terms = (0..t1.len()).map(|j| step_at(self, j, &mv, &xs)).collect();
                let cont = Term::lams(&xb, Term::apps(Term::var(k.clone(), kty.clone()), next));
                let step = Term::lams(
                    &[(m, n.clone()), (h.clone(), hty.clone()), (k, kty.clone())],
                    Term::app(Term::var(h, hty.clone()), cont),
                );
                let (pb, ps) = self.binders("x", &tys);
                let proj = Term::lams(&pb, ps[i].clone());
                let rec = Term::app(Term::nat_rec(hty, base, step, nv.clone()), proj);
                self.abs(&[(nb.clone(), n.clone())], rec)
            })
            .collect()
    }

    /// Axioms whose statement is not an implication.
    fn atomic_axiom(&mut self, s: Schema, binds: &super::Binds, concl: &Formula) -> Result<Terms, ExtractError> {
        match s {
            Schema::StClosed => {
                let a = binds.term("a").clone();
                Ok(vec![match self.flavor {
                    Flavor::U => a,
                    Flavor::Dst => single(&a),
                }])
            }
            _ => {
                debug_assert!(self.shape(concl).ex.is_empty());
                if self.shape(concl).ex.is_empty() {
                    Ok(Vec::new())
                } else {
                    Err(ExtractError::UnsupportedSchema(s.name().into()))
                }
            }
        }
    }

    fn axiom(&mut self, s: Schema, binds: &super::Binds, concl: &Formula) -> Result<Terms, ExtractError> {
        let Formula::Imp(l, r) = concl else {
            unreachable!("implication")
        };
        let (ls, rs) = (self.shape(l), self.shape(r));
        let fl = |k: &str| binds.formula(k).clone();
        let u = self.flavor == Flavor::U;
        Ok(match s {
            Schema::K => {
                let (a, b) = (self.shape(&fl("A")), self.shape(&fl("B")));
                let ba = self.imp_shape(&b, &a);
                let nb = b.ex.len();
                self.imp(
                    &a,
                    &ba,
                    |cx, xs| {
                        let xs = xs.to_vec();
                        cx.imp(&b, &a, |_, _| xs, |_, _, _| b.un.iter().map(nil_of).collect())
                    },
                    |_, _, rest| rest[nb..].iter().map(single).collect(),
                )
            }
            Schema::S => self.s_axiom(&fl("A"), &fl("B"), &fl("C")),
            Schema::AndIntro => {
                let (a, b) = (self.shape(&fl("A")), self.shape(&fl("B")));
                let ab = self.shape(&Formula::and(fl("A"), fl("B")));
                let b_ab = self.imp_shape(&b, &ab);
                let (nb, na) = (b.ex.len(), a.un.len());
                self.imp(
                    &a,
                    &b_ab,
                    |cx, xs| {
                        let xs = xs.to_vec();
                        cx.imp(
                            &b,
                            &ab,
                            |_, us| xs.iter().chain(us).cloned().collect(),
                            |_, _, yv| yv[na..].iter().map(single).collect(),
                        )
                    },
                    |_, _, rest| rest[nb..nb + na].iter().map(single).collect(),
                )
            }
            Schema::AndElimL | Schema::AndElimR => {
                let (a, b) = (self.shape(&fl("A")), self.shape(&fl("B")));
                let left = s == Schema::AndElimL;
                let na = a.ex.len();
                self.imp(
                    &ls,
                    &rs,
                    |_, xu| if left { xu[..na].to_vec() } else { xu[na..].to_vec() },
                    |_, _, ys| {
                        if left {
                            ys.iter().map(single).chain(b.un.iter().map(pad)).collect()
                        } else {
                            a.un.iter().map(pad).chain(ys.iter().map(single)).collect()
                        }
                    },
                )
            }
            Schema::Contraction => self.imp(
                &ls,
                &rs,
                |_, xs| xs.iter().chain(xs).cloned().collect(),
                |_, _, yy| {
                    let k = yy.len() / 2;
                    (0..k).map(|i| cat(single(&yy[i]), single(&yy[k + i]))).collect()
                },
            ),
            Schema::OrIntroL | Schema::OrIntroR => {
                let (a, b) = (self.shape(&fl("A")), self.shape(&fl("B")));
                let left = s == Schema::OrIntroL;
                let na = a.un.len();
                self.imp(
                    &ls,
                    &rs,
                    |_, xs| {
                        let mut out = Vec::new();
                        if u {
                            out.push(if left { Term::zero() } else { Term::nat(1) });
                        }
                        if left {
                            out.extend(xs.iter().cloned());
                            out.extend(b.ex.iter().cloned().map(Term::default_of));
                        } else {
                            out.extend(a.ex.iter().cloned().map(Term::default_of));
                            out.extend(xs.iter().cloned());
                        }
                        out
                    },
                    |_, _, yv| {
                        let mine = if left { &yv[..na] } else { &yv[na..] };
                        mine.iter().map(single).collect()
                    },
                )
            }
            Schema::OrElim => self.or_elim(&fl("A"), &fl("B"), &fl("C")),
            Schema::ExFalso => self.imp(
                &ls,
                &rs,
                |_, _| rs.ex.iter().cloned().map(Term::default_of).collect(),
                |_, _, _| Vec::new(),
            ),
            Schema::ForallInst | Schema::StExt | Schema::Nu | Schema::AcSt | Schema::IpSt => self.identity(&ls),
            Schema::ExistsIntro => self.imp(&ls, &rs, |_, xs| xs.to_vec(), |_, _, ts| ts.to_vec()),
            Schema::AllStDefL => {
                let ty = binds.binder("x").1.clone();
                let dst_ty = FiniteType::star(ty.clone());
                self.imp(
                    &ls,
                    &rs,
                    |cx, us| {
                        us.iter()
                            .map(|uk| {
                                if u {
                                    let (y, yt) = cx.fresh("y", &ty);
                                    let body = Term::app(uk.clone(), Term::var(y.clone(), yt.clone()));
                                    Term::lam(y, yt, body)
                                } else {
                                    let (sb, st) = cx.fresh("s", &dst_ty);
                                    let sv = Term::var(sb.clone(), st.clone());
                                    let res = uk
                                        .ty()
                                        .elem()
                                        .and_then(|e| e.split_arrow())
                                        .expect("(σ → u)*")
                                        .1
                                        .clone();
                                    let uk = uk.clone();
                                    let body = cx.flat_map(&[sv], &res, &mut |cx, a| cx.app(&uk, a));
                                    Term::seq_abs(sb, st, body)
                                }
                            })
                            .collect()
                    },
                    |_, _, rest| {
                        let first = if u { single(&rest[0]) } else { rest[0].clone() };
                        std::iter::once(first).chain(rest[1..].iter().map(single)).collect()
                    },
                )
            }
            Schema::AllStDefR => {
                let ty = binds.binder("x").1.clone();
                self.imp(
                    &ls,
                    &rs,
                    |cx, us| {
                        us.iter()
                            .map(|uk| {
                                let (x, xt) = cx.fresh("x", &ty);
                                let xv = Term::var(x.clone(), xt.clone());
                                if u {
                                    Term::lam(x, xt, Term::app(uk.clone(), xv))
                                } else {
                                    Term::seq_abs(x, xt, cx.app(uk, &[single(&xv)]))
                                }
                            })
                            .collect()
                    },
                    |_, _, rest| {
                        let x = single(&rest[0]);
                        let first = if u { x } else { single(&x) };
                        std::iter::once(first).chain(rest[1..].iter().map(single)).collect()
                    },
                )
            }
            Schema::ExStDefL => self.imp(
                &ls,
                &rs,
                |_, xs| xs.to_vec(),
                |_, _, ts| {
                    if u {
                        ts.to_vec()
                    } else {
                        ts.iter().map(single).collect()
                    }
                },
            ),
            Schema::ExStDefR => self.imp(
                &ls,
                &rs,
                |_, xs| xs.to_vec(),
                |_, _, vs| {
                    vs.iter()
                        .map(|v| {
                            if u {
                                single(&single(v))
                            } else {
                                single(&cat(v.clone(), pad(v.ty().elem().expect("collection"))))
                            }
                        })
                        .collect()
                },
            ),
            Schema::StApp => self.imp(
                &ls,
                &rs,
                |cx, w| {
                    if u {
                        vec![Term::app(w[0].clone(), w[1].clone())]
                    } else {
                        let res = rs.ex[0].clone();
                        vec![cx.flat_map(w, &res, &mut |_, fa| single(&Term::app(fa[0].clone(), fa[1].clone())))]
                    }
                },
                |_, _, _| Vec::new(),
            ),
            Schema::OsStar | Schema::OsStarOr => {
                self.imp(&ls, &rs, |_, _| Vec::new(), |_, _, ts| ts.iter().map(single).collect())
            }
            Schema::UsStar => self.imp(&ls, &rs, |_, ys| ys.iter().map(single).collect(), |_, _, _| Vec::new()),
            Schema::UsStarOr => self.imp(&ls, &rs, |_, ys| ys.to_vec(), |_, _, _| Vec::new()),
            Schema::Ncr => self.imp(
                &ls,
                &rs,
                |_, w| std::iter::once(single(&w[0])).chain(w[1..].iter().cloned()).collect(),
                |_, _, ts| ts.iter().map(single).collect(),
            ),
            Schema::HacSt | Schema::Hip => self.imp(
                &ls,
                &rs,
                |_, w| std::iter::once(single(&w[0])).chain(w[1..].iter().cloned()).collect(),
                |_, _, cs| cs.to_vec(),
            ),
            Schema::SuccNonzero
            | Schema::SuccInj
            | Schema::EqRefl
            | Schema::EqSubst
            | Schema::Defeq
            | Schema::Ext
            | Schema::Ia
            | Schema::Sa
            | Schema::StClosed => {
                if !ls.ex.is_empty() || !ls.un.is_empty() || !rs.ex.is_empty() || !rs.un.is_empty() {
                    return Err(ExtractError::UnsupportedSchema(s.name().into()));
                }
                Vec::new()
            }
        })
    }

    /// `(A → (B → C)) → ((A → B) → (A → C))`
    fn s_axiom(&mut self, fa: &Formula, fb: &Formula, fc: &Formula) -> Terms {
        let (a, b, c) = (self.shape(fa), self.shape(fb), self.shape(fc));
        let bc = self.imp_shape(&b, &c);
        let p = self.imp_shape(&a, &bc);
        let q = self.imp_shape(&a, &b);
        let r = self.imp_shape(&a, &c);
        let qr = self.imp_shape(&q, &r);
        let (na, nb, nc) = (a.ex.len(), b.ex.len(), c.ex.len());
        self.imp(
            &p,
            &qr,
            |cx, ps| {
                cx.imp(
                    &q,
                    &r,
                    |cx, qs| {
                        cx.imp(
                            &a,
                            &c,
                            |cx, xs| {
                                let us = cx.forward(qs, &b, xs);
                                let inner = cx.forward(ps, &bc, xs);
                                (0..nc).map(|k| cx.app(&inner[k], &us)).collect()
                            },
                            |cx, xs, zs| {
                                let us = cx.forward(qs, &b, xs);
                                let inner = cx.forward(ps, &bc, xs);
                                let uz: Terms = us.iter().chain(zs).cloned().collect();
                                let colls: Terms = (nc..nc + b.un.len()).map(|j| cx.app(&inner[j], &uz)).collect();
                                let own = cx.backward(ps, &bc, xs, &uz);
                                (0..a.un.len())
                                    .map(|i| {
                                        let res = FiniteType::star(a.un[i].clone());
                                        let q2 = &qs[nb + i];
                                        let more = cx.flat_map(&colls, &res, &mut |cx, vs| {
                                            let args: Terms = xs.iter().chain(vs).cloned().collect();
                                            cx.app(q2, &args)
                                        });
                                        cat(own[i].clone(), more)
                                    })
                                    .collect()
                            },
                        )
                    },
                    |cx, qs, rest| {
                        let (xs, zs) = rest.split_at(na);
                        let us = cx.forward(qs, &b, xs);
                        let inner = cx.forward(ps, &bc, xs);
                        let uz: Terms = us.iter().chain(zs).cloned().collect();
                        xs.iter()
                            .map(single)
                            .chain((nc..nc + b.un.len()).map(|j| cx.app(&inner[j], &uz)))
                            .collect()
                    },
                )
            },
            |cx, _, rest| {
                let (qs, rest) = rest.split_at(q.ex.len());
                let (xs, zs) = rest.split_at(na);
                let us = cx.forward(qs, &b, xs);
                xs.iter().chain(&us).chain(zs).map(single).collect()
            },
        )
    }

    /// `(A → C) → ((B → C) → (A ∨ B → C))`
    fn or_elim(&mut self, fa: &Formula, fb: &Formula, fc: &Formula) -> Terms {
        let (a, b, c) = (self.shape(fa), self.shape(fb), self.shape(fc));
        let or = self.shape(&Formula::or(fa.clone(), fb.clone()));
        let ac = self.imp_shape(&a, &c);
        let bc = self.imp_shape(&b, &c);
        let orc = self.imp_shape(&or, &c);
        let inner = self.imp_shape(&bc, &orc);
        let flag = usize::from(self.flavor == Flavor::U);
        let (na, nb) = (a.ex.len(), b.ex.len());
        self.imp(
            &ac,
            &inner,
            |cx, ps| {
                let ps = ps.to_vec();
                cx.imp(
                    &bc,
                    &orc,
                    |cx, qs| {
                        let qs = qs.to_vec();
                        cx.imp(
                            &or,
                            &c,
                            |cx, w| {
                                let xs = &w[flag..flag + na];
                                let us = &w[flag + na..];
                                let l = cx.forward(&ps, &c, xs);
                                let r = cx.forward(&qs, &c, us);
                                l.into_iter()
                                    .zip(r)
                                    .map(|(l, r)| if flag == 1 { cx.case(&w[0], l, r) } else { cat(l, r) })
                                    .collect()
                            },
                            |cx, w, zs| {
                                let xs = &w[flag..flag + na];
                                let us = &w[flag + na..];
                                let l = cx.backward(&ps, &c, xs, zs);
                                let r = cx.backward(&qs, &c, us, zs);
                                let la = a.un.iter().zip(l).map(|(t, s)| cat(s, pad(t)));
                                let rb = b.un.iter().zip(r).map(|(t, s)| cat(s, pad(t)));
                                la.chain(rb).collect()
                            },
                        )
                    },
                    |_, _, rest| {
                        let (w, zs) = rest.split_at(or.ex.len());
                        let us = &w[flag + na..flag + na + nb];
                        us.iter().chain(zs).map(single).collect()
                    },
                )
            },
            |_, _, rest| {
                let (_, rest) = rest.split_at(bc.ex.len());
                let (w, zs) = rest.split_at(or.ex.len());
                let xs = &w[flag..flag + na];
                xs.iter().chain(zs).map(single).collect()
            },
        )
    }
}

fn single(t: &Term) -> Term {
    Term::seq(t.ty(), [t.clone()])
}

fn cat(a: Term, b: Term) -> Term {
    let e = a.ty().elem().expect("sequence").clone();
    Term::concat(e, a, b)
}

/// The empty collection of elements of type `t`.
fn nil_of(t: &FiniteType) -> Term {
    Term::nil(t.clone())
}

/// `⟨∅⟩`: a one-element collection, so products over it are never empty.
fn pad(t: &FiniteType) -> Term {
    Term::seq(t.clone(), [Term::default_of(t.clone())])
}
