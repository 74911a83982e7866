//! Realiser bundles: closed terms for the existential tuple of a translation.

use crate::error::TypeError;
use crate::formula::Formula;
use crate::reduce::normalize;
use crate::syntax::{term_sexp, type_sexp, Sexp};
use crate::term::Term;
use crate::translate::{translate, Flavor, TranslateError, TranslatedFormula};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealiserBundle {
    pub target: Formula,
    pub translated: TranslatedFormula,
    pub terms: Vec<Term>,
    pub flavor: Flavor,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BundleError {
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error("bundle has {found} terms but the translation has {expected} existential variables")]
    Arity { expected: usize, found: usize },
    #[error("realiser for `{name}` is not closed: free variable `{var}`")]
    NotClosed { name: String, var: String },
    #[error("realiser for `{name}`: {source}")]
    Type { name: String, source: TypeError },
    #[error("realiser for `{name}` has type {found}, expected {expected}")]
    WrongType {
        name: String,
        expected: String,
        found: String,
    },
}

impl RealiserBundle {
    /// Pairs `terms` with the translation of `target` and checks them.
    pub fn new(target: Formula, flavor: Flavor, terms: Vec<Term>) -> Result<Self, BundleError> {
        let translated = translate(&target, flavor)?;
        let b = RealiserBundle {
            target,
            translated,
            terms,
            flavor,
        };
        b.check()?;
        Ok(b)
    }

    /// Terms are closed and typed at the existential tuple.
    pub fn check(&self) -> Result<(), BundleError> {
        let ex = &self.translated.exist;
        if ex.len() != self.terms.len() {
            return Err(BundleError::Arity {
                expected: ex.len(),
                found: self.terms.len(),
            });
        }
        for ((name, ty), t) in ex.iter().zip(&self.terms) {
            if let Some((var, _)) = t.free_vars().into_iter().next() {
                return Err(BundleError::NotClosed {
                    name: name.clone(),
                    var,
                });
            }
            let found = t.infer().map_err(|source| BundleError::Type {
                name: name.clone(),
                source,
            })?;
            if found != *ty {
                return Err(BundleError::WrongType {
                    name: name.clone(),
                    expected: ty.to_string(),
                    found: found.to_string(),
                });
            }
        }
        Ok(())
    }

    pub fn normalized(mut self) -> Self {
        self.terms = self.terms.iter().map(normalize).collect();
        self
    }

    /// `(bundle FLAVOR FORMULA (terms t…))`
    pub fn to_sexp(&self) -> Sexp {
        Sexp::form(
            "bundle",
            [
                Sexp::atom(self.flavor.name()),
                crate::syntax::formula_sexp(&self.target),
                Sexp::form("terms", self.terms.iter().map(term_sexp)),
            ],
        )
    }

    /// Named realisers, one per existential variable, in concrete syntax.
    pub fn named_terms(&self) -> Vec<(String, String, String)> {
        self.translated
            .exist
            .iter()
            .zip(&self.terms)
            .map(|((x, ty), t)| (x.clone(), type_sexp(ty).to_string(), term_sexp(t).to_string()))
            .collect()
    }
}
