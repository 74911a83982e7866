//! Seeded random generators for types, terms and formulas.
//!
//! All randomized suites draw from [`Gen`]; `NSDIAL_SEED` overrides the
//! default seed so failures reproduce.

use crate::formula::Formula;
use crate::term::{Const, Name, Term};
use crate::types::FiniteType;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x6e73_6469_616c;

/// `NSDIAL_SEED` if set and numeric, else [`DEFAULT_SEED`].
pub fn seed_from_env() -> u64 {
    std::env::var("NSDIAL_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// Which constructors a formula generator may use.
#[derive(Clone, Copy, Debug)]
pub struct Shape {
    pub external: bool,
    pub disjunction: bool,
    pub implication: bool,
    /// `∀st`, whose translations have arrow-typed witnesses.
    pub forall_st: bool,
    /// Quantified variables may have sequence type, not only `0`.
    pub seq_binders: bool,
}

impl Shape {
    pub const ANY: Shape = Shape {
        external: true,
        disjunction: true,
        implication: true,
        forall_st: true,
        seq_binders: true,
    };

    /// Translations keep every tuple data-typed.
    pub const DATA: Shape = Shape {
        external: true,
        disjunction: true,
        implication: false,
        forall_st: false,
        seq_binders: true,
    };

    /// [`Shape::DATA`] over ground binders: D_st witnesses are all `0*`, so
    /// upward closure stays sweepable.
    pub const GROUND_DATA: Shape = Shape {
        seq_binders: false,
        ..Shape::DATA
    };

    pub const INTERNAL_OR_FREE: Shape = Shape {
        external: false,
        disjunction: false,
        implication: true,
        forall_st: false,
        seq_binders: true,
    };
}

pub struct Gen {
    rng: ChaCha8Rng,
    counter: usize,
}

type Ctx = Vec<(Name, FiniteType)>;

impl Gen {
    pub fn new(seed: u64) -> Gen {
        Gen {
            rng: ChaCha8Rng::seed_from_u64(seed),
            counter: 0,
        }
    }

    pub fn from_env() -> Gen {
        Gen::new(seed_from_env())
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn fresh(&mut self, base: &str) -> Name {
        self.counter += 1;
        format!("{base}{}", self.counter)
    }

    /// Any finite type of depth at most `depth`.
    pub fn ty(&mut self, depth: usize) -> FiniteType {
        if depth == 0 || self.rng.gen_bool(0.3) {
            return FiniteType::Ground;
        }
        if self.rng.gen_bool(0.5) {
            FiniteType::star(self.ty(depth - 1))
        } else {
            FiniteType::arrow(self.ty(depth - 1), self.ty(depth - 1))
        }
    }

    /// A type built from `0` and `*` only.
    pub fn data_ty(&mut self, depth: usize) -> FiniteType {
        if depth == 0 || self.rng.gen_bool(0.5) {
            FiniteType::Ground
        } else {
            FiniteType::star(self.data_ty(depth - 1))
        }
    }

    /// A term of type `ty` over `ctx`.
    pub fn term(&mut self, ty: &FiniteType, ctx: &[(Name, FiniteType)], depth: usize) -> Term {
        let vars: Vec<&(Name, FiniteType)> = ctx.iter().filter(|(_, t)| t == ty).collect();
        if !vars.is_empty() && (depth == 0 || self.rng.gen_bool(0.4)) {
            let (x, t) = vars.choose(&mut self.rng).unwrap();
            return Term::var(x.clone(), t.clone());
        }
        if depth == 0 {
            return self.leaf(ty);
        }
        let d = depth - 1;
        match ty {
            FiniteType::Ground => match self.rng.gen_range(0..5) {
                0 => Term::nat(self.rng.gen_range(0..3)),
                1 => Term::succ(self.term(ty, ctx, d)),
                2 => {
                    let e = self.data_ty(1);
                    Term::len(e.clone(), self.term(&FiniteType::star(e), ctx, d))
                }
                3 => {
                    let base = self.term(ty, ctx, d);
                    let n = self.term(ty, ctx, d);
                    let (m, r) = (self.fresh("m"), self.fresh("r"));
                    let inner = [(m.clone(), FiniteType::Ground), (r.clone(), FiniteType::Ground)];
                    let ext: Ctx = ctx.iter().cloned().chain(inner.iter().cloned()).collect();
                    let body = self.term(ty, &ext, d);
                    Term::nat_rec(ty.clone(), base, Term::lams(&inner, body), n)
                }
                _ => {
                    let s = self.term(&FiniteType::star(FiniteType::Ground), ctx, d);
                    Term::proj(FiniteType::Ground, s, self.term(ty, ctx, d))
                }
            },
            FiniteType::Star(e) => match self.rng.gen_range(0..4) {
                0 => Term::nil((**e).clone()),
                1 => Term::cons((**e).clone(), self.term(e, ctx, d), self.term(ty, ctx, d)),
                2 => Term::concat((**e).clone(), self.term(ty, ctx, d), self.term(ty, ctx, d)),
                _ => match &**e {
                    // s[a] when the element type allows it.
                    FiniteType::Arrow(..) | FiniteType::Ground if self.rng.gen_bool(0.3) => {
                        let a = FiniteType::Ground;
                        let f = FiniteType::star(FiniteType::arrow(a.clone(), ty.clone()));
                        Term::seq_app(a.clone(), (**e).clone(), self.term(&f, ctx, d), self.term(&a, ctx, d))
                    }
                    _ => Term::singleton((**e).clone(), self.term(e, ctx, d)),
                },
            },
            FiniteType::Arrow(a, b) => {
                let x = self.fresh("x");
                let ext: Ctx = ctx.iter().cloned().chain([(x.clone(), (**a).clone())]).collect();
                Term::lam(x, (**a).clone(), self.term(b, &ext, d))
            }
        }
    }

    fn leaf(&mut self, ty: &FiniteType) -> Term {
        match ty {
            FiniteType::Ground => Term::nat(self.rng.gen_range(0..3)),
            FiniteType::Star(e) => Term::nil((**e).clone()),
            _ => Term::Const(Const::Default(ty.clone())),
        }
    }

    /// A closed formula of at most `depth` connectives.
    pub fn formula(&mut self, shape: Shape, depth: usize) -> Formula {
        self.formula_in(shape, &[], depth)
    }

    fn atom(&mut self, shape: Shape, ctx: &[(Name, FiniteType)]) -> Formula {
        if shape.external && !ctx.is_empty() && self.rng.gen_bool(0.3) {
            let (x, t) = ctx.choose(&mut self.rng).unwrap().clone();
            return Formula::st(t.clone(), Term::var(x, t));
        }
        let seqs: Vec<_> = ctx.iter().filter(|(_, t)| t.is_star()).cloned().collect();
        if !seqs.is_empty() && self.rng.gen_bool(0.3) {
            let (s, t) = seqs.choose(&mut self.rng).unwrap().clone();
            let other = self.term(&t, ctx, 1);
            return Formula::eq(t.clone(), Term::var(s, t), other);
        }
        let n = FiniteType::Ground;
        Formula::eq(n.clone(), self.term(&n, ctx, 1), self.term(&n, ctx, 1))
    }

    fn formula_in(&mut self, shape: Shape, ctx: &[(Name, FiniteType)], depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.2) {
            return self.atom(shape, ctx);
        }
        let d = depth - 1;
        let mut ops = vec![0, 1, 4, 5];
        if shape.disjunction {
            ops.push(2);
        }
        if shape.implication {
            ops.push(3);
        }
        if shape.external {
            ops.push(6);
            ops.push(6);
            if shape.forall_st {
                ops.push(7);
            }
        }
        match *ops.choose(&mut self.rng).unwrap() {
            0 => self.atom(shape, ctx),
            1 => Formula::and(self.formula_in(shape, ctx, d), self.formula_in(shape, ctx, d)),
            2 => Formula::or(self.formula_in(shape, ctx, d), self.formula_in(shape, ctx, d)),
            3 => Formula::imp(self.formula_in(shape, ctx, d), self.formula_in(shape, ctx, d)),
            q => {
                let ty = if shape.seq_binders {
                    self.data_ty(1)
                } else {
                    FiniteType::Ground
                };
                let x = self.fresh("x");
                let ext: Ctx = ctx.iter().cloned().chain([(x.clone(), ty.clone())]).collect();
                let body = self.formula_in(shape, &ext, d);
                match q {
                    4 => Formula::forall(x, ty, body),
                    5 => Formula::exists(x, ty, body),
                    6 => Formula::exists_st(x, ty, body),
                    _ => Formula::forall_st(x, ty, body),
                }
            }
        }
    }

    /// `∃st x̄ ∀st ȳ φ` with `φ` internal and ∨-free.
    pub fn sigma_form(&mut self, depth: usize) -> Formula {
        let nx = self.rng.gen_range(0..3);
        let ny = self.rng.gen_range(0..3);
        let xs: Ctx = (0..nx).map(|_| (self.fresh("x"), self.data_ty(1))).collect();
        let ys: Ctx = (0..ny).map(|_| (self.fresh("y"), self.data_ty(1))).collect();
        let ctx: Ctx = xs.iter().chain(&ys).cloned().collect();
        let phi = self.formula_in(Shape::INTERNAL_OR_FREE, &ctx, depth);
        Formula::exists_sts(&xs, Formula::forall_sts(&ys, phi))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_reproducible() {
        let a: Vec<String> = {
            let mut g = Gen::new(7);
            (0..20).map(|_| g.formula(Shape::ANY, 3).to_string()).collect()
        };
        let b: Vec<String> = {
            let mut g = Gen::new(7);
            (0..20).map(|_| g.formula(Shape::ANY, 3).to_string()).collect()
        };
        assert_eq!(a, b);
    }

    #[test]
    fn generated_objects_are_well_typed() {
        let mut g = Gen::new(11);
        for _ in 0..200 {
            let ty = g.ty(2);
            let t = g.term(&ty, &[], 3);
            assert_eq!(t.infer().unwrap(), ty, "{t}");
            let f = g.formula(Shape::ANY, 3);
            f.check().unwrap();
            assert!(f.free_vars().is_empty(), "{f}");
            let s = g.sigma_form(2);
            s.check().unwrap();
        }
    }
}
