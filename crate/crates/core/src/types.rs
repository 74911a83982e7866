//! Finite types over the ground type of naturals, closed under arrows and
//! finite-sequence types.

use std::fmt;

/// A finite type: `0`, `σ → τ` or `σ*`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiniteType {
    Ground,
    Arrow(Box<FiniteType>, Box<FiniteType>),
    Star(Box<FiniteType>),
}

impl FiniteType {
    pub fn arrow(dom: FiniteType, cod: FiniteType) -> FiniteType {
        FiniteType::Arrow(Box::new(dom), Box::new(cod))
    }

    pub fn star(elem: FiniteType) -> FiniteType {
        FiniteType::Star(Box::new(elem))
    }

    /// `a0 → a1 → … → result`.
    pub fn arrows<'a, I>(args: I, result: FiniteType) -> FiniteType
    where
        I: IntoIterator<Item = &'a FiniteType>,
        I::IntoIter: DoubleEndedIterator,
    {
        args.into_iter()
            .rev()
            .fold(result, |acc, a| FiniteType::arrow(a.clone(), acc))
    }

    /// The type of a curried sequence-application chain: the result `T` satisfies
    /// `T[a0][a1]…[an] : result` where `result` must itself be a sequence type.
    pub fn seq_arrows<'a, I>(args: I, result: FiniteType) -> FiniteType
    where
        I: IntoIterator<Item = &'a FiniteType>,
        I::IntoIter: DoubleEndedIterator,
    {
        debug_assert!(result.is_star());
        args.into_iter()
            .rev()
            .fold(result, |acc, a| FiniteType::star(FiniteType::arrow(a.clone(), acc)))
    }

    pub fn is_ground(&self) -> bool {
        matches!(self, FiniteType::Ground)
    }

    pub fn is_star(&self) -> bool {
        matches!(self, FiniteType::Star(_))
    }

    /// Built from `0` and `*` only.
    pub fn is_data(&self) -> bool {
        match self {
            FiniteType::Ground => true,
            FiniteType::Star(e) => e.is_data(),
            FiniteType::Arrow(..) => false,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            FiniteType::Ground => 0,
            FiniteType::Star(e) => 1 + e.depth(),
            FiniteType::Arrow(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn elem(&self) -> Option<&FiniteType> {
        match self {
            FiniteType::Star(e) => Some(e),
            _ => None,
        }
    }

    pub fn split_arrow(&self) -> Option<(&FiniteType, &FiniteType)> {
        match self {
            FiniteType::Arrow(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

impl fmt::Display for FiniteType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteType::Ground => write!(f, "N"),
            FiniteType::Arrow(a, b) => write!(f, "(-> {a} {b})"),
            FiniteType::Star(e) => write!(f, "(* {e})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn data_types() {
        let n = FiniteType::Ground;
        assert!(n.is_data());
        assert!(FiniteType::star(FiniteType::star(n.clone())).is_data());
        assert!(!FiniteType::arrow(n.clone(), n.clone()).is_data());
        assert!(!FiniteType::star(FiniteType::arrow(n.clone(), n.clone())).is_data());
    }

    #[test]
    fn seq_arrows_nest_stars() {
        let n = FiniteType::Ground;
        let t = FiniteType::seq_arrows([&n, &n], FiniteType::star(n.clone()));
        assert_eq!(t.to_string(), "(* (-> N (* (-> N (* N)))))");
        let e = FiniteType::seq_arrows([], FiniteType::star(n.clone()));
        assert_eq!(e, FiniteType::star(n));
    }
}
