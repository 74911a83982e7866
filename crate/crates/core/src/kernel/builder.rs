//! Bottom-up proof construction with every step checked as it is built.

use super::schema::{Binds, Param, Schema};
use super::{derive_step, KernelError, Node, Proof, Rule};
use crate::formula::Formula;
use crate::term::{Name, Term};
use crate::translate::Flavor;
use crate::types::FiniteType;

pub struct ProofBuilder {
    pub flavor: Flavor,
    pub hyps: Vec<(Name, Formula)>,
}

type R = Result<Node, KernelError>;

pub fn concl(n: &Node) -> &Formula {
    n.cached.as_ref().expect("built nodes carry their conclusion")
}

impl ProofBuilder {
    pub fn new(flavor: Flavor) -> Self {
        ProofBuilder {
            flavor,
            hyps: Vec::new(),
        }
    }

    pub fn with_hyp(mut self, name: impl Into<Name>, f: Formula) -> Self {
        self.hyps.push((name.into(), f));
        self
    }

    fn finish(&self, rule: Rule) -> R {
        let mut n = Node::new(rule);
        n.cached = Some(derive_step(self.flavor, &self.hyps, &n)?);
        Ok(n)
    }

    pub fn proof(&self, root: Node) -> Proof {
        Proof {
            flavor: self.flavor,
            hyps: self.hyps.clone(),
            root,
        }
    }

    pub fn axiom<'a>(&self, s: Schema, binds: impl IntoIterator<Item = (&'a str, Param)>) -> R {
        let binds = Binds(binds.into_iter().map(|(k, p)| (k.to_string(), p)).collect());
        self.finish(Rule::Axiom(s, binds))
    }

    pub fn hyp(&self, name: &str) -> R {
        self.finish(Rule::Hyp(name.into()))
    }

    pub fn mp(&self, major: Node, minor: Node) -> R {
        self.finish(Rule::Mp(Box::new(major), Box::new(minor)))
    }

    pub fn forall_rule(&self, z: &str, ty: FiniteType, p: Node) -> R {
        self.finish(Rule::ForallRule(z.into(), ty, Box::new(p)))
    }

    pub fn exists_rule(&self, z: &str, ty: FiniteType, p: Node) -> R {
        self.finish(Rule::ExistsRule(z.into(), ty, Box::new(p)))
    }

    pub fn ind(&self, base: Node, step: Node) -> R {
        self.finish(Rule::Ind(Box::new(base), Box::new(step)))
    }

    pub fn ind_st(&self, base: Node, step: Node) -> R {
        self.finish(Rule::IndSt(Box::new(base), Box::new(step)))
    }

    // Derived combinators.

    pub fn k(&self, a: Formula, b: Formula) -> R {
        self.axiom(Schema::K, [("A", Param::Formula(a)), ("B", Param::Formula(b))])
    }

    pub fn s(&self, a: Formula, b: Formula, c: Formula) -> R {
        self.axiom(
            Schema::S,
            [
                ("A", Param::Formula(a)),
                ("B", Param::Formula(b)),
                ("C", Param::Formula(c)),
            ],
        )
    }

    /// `A → A` from `s` and `k`.
    pub fn identity(&self, a: Formula) -> R {
        let aa = Formula::imp(a.clone(), a.clone());
        let s = self.s(a.clone(), aa.clone(), a.clone())?;
        let k1 = self.k(a.clone(), aa)?;
        let k2 = self.k(a.clone(), a)?;
        self.mp(self.mp(s, k1)?, k2)
    }

    /// `B → A` from `A`.
    pub fn weaken(&self, b: Formula, a: Node) -> R {
        let k = self.k(concl(&a).clone(), b)?;
        self.mp(k, a)
    }

    /// `A → C` from `A → B` and `B → C`.
    pub fn compose(&self, ab: Node, bc: Node) -> R {
        let (Formula::Imp(a, b), Formula::Imp(_, c)) = (concl(&ab).clone(), concl(&bc).clone()) else {
            return Err(self.not_imp(&ab, &bc));
        };
        let a_bc = self.weaken((*a).clone(), bc)?;
        let s = self.s(*a, *b, *c)?;
        self.mp(self.mp(s, a_bc)?, ab)
    }

    /// `A → C` from `A → (B → C)` and `A → B`.
    pub fn apply_under(&self, abc: Node, ab: Node) -> R {
        let Formula::Imp(a, bc) = concl(&abc).clone() else {
            return Err(self.not_imp(&abc, &ab));
        };
        let Formula::Imp(b, c) = *bc else {
            return Err(self.not_imp(&abc, &ab));
        };
        let s = self.s(*a, *b, *c)?;
        self.mp(self.mp(s, abc)?, ab)
    }

    /// `A → B ∧ C` from `A → B` and `A → C`.
    pub fn pair(&self, ab: Node, ac: Node) -> R {
        let (Formula::Imp(a, b), Formula::Imp(_, c)) = (concl(&ab).clone(), concl(&ac).clone()) else {
            return Err(self.not_imp(&ab, &ac));
        };
        let intro = self.axiom(Schema::AndIntro, [("A", Param::Formula(*b)), ("B", Param::Formula(*c))])?;
        let a_intro = self.weaken((*a).clone(), intro)?;
        let a_cbc = self.apply_under(a_intro, ab)?;
        self.apply_under(a_cbc, ac)
    }

    /// `∀x A → A[b/x]`.
    pub fn forall_inst(&self, x: &str, ty: FiniteType, a: Formula, b: Term) -> R {
        self.axiom(
            Schema::ForallInst,
            [
                ("x", Param::Binder(x.into(), ty)),
                ("A", Param::Formula(a)),
                ("b", Param::Term(b)),
            ],
        )
    }

    /// `⊤ → A` from a proof of `A`, then `⊤ → ∀z A`, then `∀z A` when `z` is
    /// not free elsewhere.
    pub fn generalize(&self, z: &str, ty: FiniteType, a: Node) -> R {
        let t = self.weaken(Formula::verum(), a)?;
        let g = self.forall_rule(z, ty, t)?;
        self.mp(g, self.verum()?)
    }

    /// `⊤`, that is `0 = 0`.
    pub fn verum(&self) -> R {
        self.axiom(Schema::EqRefl, [("t", Param::Term(Term::zero()))])
    }

    fn not_imp(&self, a: &Node, b: &Node) -> KernelError {
        KernelError::BadInstantiation {
            node: "builder".into(),
            reason: format!("expected implications, got {} and {}", concl(a), concl(b)),
        }
    }
}
