//! S-expression reader and layout.

use std::fmt;
use thiserror::Error;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug)]
pub enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("{pos}: {message}")]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl ParseError {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        ParseError {
            pos,
            message: message.into(),
        }
    }
}

impl PartialEq for Sexp {
    /// Structural equality, ignoring positions.
    fn eq(&self, other: &Sexp) -> bool {
        match (self, other) {
            (Sexp::Atom(a, _), Sexp::Atom(b, _)) => a == b,
            (Sexp::List(a, _), Sexp::List(b, _)) => a == b,
            _ => false,
        }
    }
}

impl Sexp {
    pub fn atom(s: impl Into<String>) -> Sexp {
        Sexp::Atom(s.into(), Pos::default())
    }

    pub fn list(items: impl IntoIterator<Item = Sexp>) -> Sexp {
        Sexp::List(items.into_iter().collect(), Pos::default())
    }

    /// `(head items…)`
    pub fn form(head: &str, items: impl IntoIterator<Item = Sexp>) -> Sexp {
        let mut v = vec![Sexp::atom(head)];
        v.extend(items);
        Sexp::List(v, Pos::default())
    }

    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a, _) => Some(a),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(v, _) => Some(v),
            _ => None,
        }
    }

    /// Head symbol and arguments of a list whose first element is an atom.
    pub fn as_form(&self) -> Option<(&str, &[Sexp])> {
        match self {
            Sexp::List(v, _) => match v.first() {
                Some(Sexp::Atom(h, _)) => Some((h, &v[1..])),
                _ => None,
            },
            _ => None,
        }
    }

    fn flat_len(&self) -> usize {
        match self {
            Sexp::Atom(a, _) => a.chars().count(),
            Sexp::List(v, _) => 2 + v.iter().map(Sexp::flat_len).sum::<usize>() + v.len().saturating_sub(1),
        }
    }

    /// Indented layout: lists that do not fit in `width` columns break after
    /// their head, one child per line.
    pub fn pretty(&self, width: usize) -> String {
        let mut out = String::new();
        self.layout(0, width, &mut out);
        out
    }

    fn layout(&self, indent: usize, width: usize, out: &mut String) {
        match self {
            Sexp::List(v, _) if indent + self.flat_len() > width && v.len() > 1 => {
                out.push('(');
                v[0].layout(indent + 1, width, out);
                for c in &v[1..] {
                    out.push('\n');
                    out.push_str(&" ".repeat(indent + 2));
                    c.layout(indent + 2, width, out);
                }
                out.push(')');
            }
            _ => out.push_str(&self.to_string()),
        }
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom(a, _) => f.write_str(a),
            Sexp::List(v, _) => {
                f.write_str("(")?;
                for (i, c) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Reads every top-level s-expression in `src`. `;` starts a line comment.
pub fn read_all(src: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut stack: Vec<(Vec<Sexp>, Pos)> = Vec::new();
    let mut top = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1usize, 1usize);
    while let Some(&c) = chars.peek() {
        let here = Pos { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
                continue;
            }
            ';' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
                continue;
            }
            '(' => {
                chars.next();
                col += 1;
                stack.push((Vec::new(), here));
            }
            ')' => {
                chars.next();
                col += 1;
                let (items, p) = stack.pop().ok_or_else(|| ParseError::new(here, "unbalanced `)`"))?;
                let node = Sexp::List(items, p);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(node),
                    None => top.push(node),
                }
            }
            _ => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    s.push(c);
                    chars.next();
                    col += 1;
                }
                let node = Sexp::Atom(s, here);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(node),
                    None => top.push(node),
                }
            }
        }
    }
    if let Some((_, p)) = stack.pop() {
        return Err(ParseError::new(p, "unclosed `(`"));
    }
    Ok(top)
}

/// Reads exactly one s-expression.
pub fn read_one(src: &str) -> Result<Sexp, ParseError> {
    let mut all = read_all(src)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        0 => Err(ParseError::new(Pos { line: 1, col: 1 }, "empty input")),
        _ => Err(ParseError::new(all[1].pos(), "expected a single top-level form")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_lists_with_comments() {
        let s = read_one("; header\n(a (b c) ; trailing\n d)").unwrap();
        assert_eq!(s.to_string(), "(a (b c) d)");
        assert_eq!(s.pos(), Pos { line: 2, col: 1 });
    }

    #[test]
    fn reports_unbalanced() {
        assert!(read_one("(a b").is_err());
        let e = read_one("a)").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 2 });
    }

    #[test]
    fn pretty_round_trips() {
        let s =
            read_one("(proof u (mp (axiom k (binds (A (eq N 1 1)) (B (eq N 2 2)))) (axiom eq-refl (binds (t 1)))))")
                .unwrap();
        let p = s.pretty(30);
        assert!(p.contains('\n'));
        assert_eq!(read_one(&p).unwrap(), s);
    }
}
