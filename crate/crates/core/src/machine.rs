//! Call-by-value environment machine.
//!
//! A second evaluation route, independent of [`crate::reduce`]: closures over
//! persistent environments instead of substitution. The oracle uses it for
//! speed; the test suite checks it against the normalizer.

use crate::error::EvalError;
use crate::reduce::CanonicalValue;
use crate::term::{default_term, Const, Term};
use crate::types::FiniteType;
use std::sync::Arc;

#[derive(Clone, Debug)]
pub enum Value {
    Nat(u64),
    Seq(Arc<Vec<Value>>),
    Closure(Arc<Closure>),
    /// A constant waiting for the rest of its arguments.
    Partial(Arc<(Const, Vec<Value>)>),
}

#[derive(Debug)]
pub struct Closure {
    param: Arc<str>,
    body: Arc<Code>,
    env: Env,
}

/// Terms with shared subtrees, so closures capture bodies without copying.
#[derive(Debug)]
pub enum Code {
    Var(Arc<str>),
    Lam(Arc<str>, Arc<Code>),
    SeqAbs(Arc<str>, Arc<Code>),
    App(Arc<Code>, Arc<Code>),
    Const(Const),
}

pub fn compile(term: &Term) -> Arc<Code> {
    Arc::new(match term {
        Term::Var(x, _) => Code::Var(x.as_str().into()),
        Term::Lam(x, _, b) => Code::Lam(x.as_str().into(), compile(b)),
        Term::SeqAbs(x, _, b) => Code::SeqAbs(x.as_str().into(), compile(b)),
        Term::App(f, a) => Code::App(compile(f), compile(a)),
        Term::Const(c) => Code::Const(c.clone()),
    })
}

#[derive(Clone, Debug, Default)]
pub struct Env(Option<Arc<EnvNode>>);

#[derive(Debug)]
struct EnvNode {
    name: Arc<str>,
    value: Value,
    next: Env,
}

impl Env {
    pub fn new() -> Env {
        Env(None)
    }

    pub fn bind(&self, name: impl Into<Arc<str>>, value: Value) -> Env {
        Env(Some(Arc::new(EnvNode {
            name: name.into(),
            value,
            next: self.clone(),
        })))
    }

    pub fn lookup(&self, name: &str) -> Option<&Value> {
        let mut cur = &self.0;
        while let Some(node) = cur {
            if &*node.name == name {
                return Some(&node.value);
            }
            cur = &node.next.0;
        }
        None
    }
}

impl PartialEq for Value {
    /// Structural equality on data values; functions never compare equal.
    fn eq(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Nat(a), Value::Nat(b)) => a == b,
            (Value::Seq(a), Value::Seq(b)) => a == b,
            _ => false,
        }
    }
}

impl Value {
    pub fn nat(&self) -> u64 {
        match self {
            Value::Nat(n) => *n,
            other => panic!("internal: expected a natural, found {other:?}"),
        }
    }

    pub fn seq(&self) -> &[Value] {
        match self {
            Value::Seq(xs) => xs,
            other => panic!("internal: expected a sequence, found {other:?}"),
        }
    }

    pub fn from_canonical(v: &CanonicalValue) -> Value {
        match v {
            CanonicalValue::Nat(n) => Value::Nat(*n),
            CanonicalValue::Seq(_, xs) => Value::Seq(Arc::new(xs.iter().map(Value::from_canonical).collect())),
            CanonicalValue::Closure(t) => eval(t, &Env::new()).expect("closed closure term"),
        }
    }

    /// Reads a data value back at the given data type.
    pub fn to_canonical(&self, ty: &FiniteType) -> Option<CanonicalValue> {
        match (self, ty) {
            (Value::Nat(n), FiniteType::Ground) => Some(CanonicalValue::Nat(*n)),
            (Value::Seq(xs), FiniteType::Star(e)) => Some(CanonicalValue::Seq(
                (**e).clone(),
                xs.iter().map(|x| x.to_canonical(e)).collect::<Option<_>>()?,
            )),
            _ => None,
        }
    }
}

pub fn default_value(ty: &FiniteType) -> Value {
    match ty {
        FiniteType::Ground => Value::Nat(0),
        FiniteType::Star(_) => Value::Seq(Arc::new(Vec::new())),
        FiniteType::Arrow(..) => eval(&default_term(ty), &Env::new()).expect("closed default"),
    }
}

/// Evaluates `term` in `env`. Fails only on unbound variables.
pub fn eval(term: &Term, env: &Env) -> Result<Value, EvalError> {
    run(&compile(term), env)
}

pub fn run(code: &Arc<Code>, env: &Env) -> Result<Value, EvalError> {
    match &**code {
        Code::Var(x) => env
            .lookup(x)
            .cloned()
            .ok_or_else(|| EvalError::NotClosed(x.to_string())),
        Code::Lam(x, b) => Ok(Value::Closure(Arc::new(Closure {
            param: x.clone(),
            body: b.clone(),
            env: env.clone(),
        }))),
        Code::SeqAbs(x, b) => Ok(Value::Seq(Arc::new(vec![Value::Closure(Arc::new(Closure {
            param: x.clone(),
            body: b.clone(),
            env: env.clone(),
        }))]))),
        Code::App(f, a) => {
            let fv = run(f, env)?;
            let av = run(a, env)?;
            apply(&fv, av)
        }
        Code::Const(c) => Ok(match c {
            Const::Zero => Value::Nat(0),
            Const::Nil(_) => Value::Seq(Arc::new(Vec::new())),
            Const::Default(ty) => default_value(ty),
            c => Value::Partial(Arc::new((c.clone(), Vec::new()))),
        }),
    }
}

pub fn apply(f: &Value, a: Value) -> Result<Value, EvalError> {
    match f {
        Value::Closure(c) => run(&c.body, &c.env.bind(c.param.clone(), a)),
        Value::Partial(p) => {
            let (c, args) = &**p;
            let mut args = args.clone();
            args.push(a);
            if args.len() < c.arity() {
                Ok(Value::Partial(Arc::new((c.clone(), args))))
            } else {
                fire(c, args)
            }
        }
        other => panic!("internal: applying a non-function {other:?}"),
    }
}

fn apply2(f: &Value, a: Value, b: Value) -> Result<Value, EvalError> {
    let g = apply(f, a)?;
    apply(&g, b)
}

fn fire(c: &Const, args: Vec<Value>) -> Result<Value, EvalError> {
    let mut args = args.into_iter();
    let mut next = || args.next().expect("arity checked");
    match c {
        Const::Succ => Ok(Value::Nat(next().nat() + 1)),
        Const::Cons(_) => {
            let h = next();
            let t = next();
            let mut v = Vec::with_capacity(t.seq().len() + 1);
            v.push(h);
            v.extend(t.seq().iter().cloned());
            Ok(Value::Seq(Arc::new(v)))
        }
        Const::Singleton(_) => Ok(Value::Seq(Arc::new(vec![next()]))),
        Const::NatRec(_) => {
            let x = next();
            let y = next();
            let n = next().nat();
            let mut acc = x;
            for k in 0..n {
                acc = apply2(&y, Value::Nat(k), acc)?;
            }
            Ok(acc)
        }
        Const::ListRec(..) => {
            let x = next();
            let y = next();
            let s = next();
            let mut acc = x;
            for z in s.seq().iter().rev() {
                acc = apply2(&y, acc, z.clone())?;
            }
            Ok(acc)
        }
        Const::Len(_) => Ok(Value::Nat(next().seq().len() as u64)),
        Const::Proj(e) => {
            let s = next();
            let i = next().nat();
            Ok(usize::try_from(i)
                .ok()
                .and_then(|i| s.seq().get(i).cloned())
                .unwrap_or_else(|| default_value(e)))
        }
        Const::Concat(_) => {
            let s = next();
            let t = next();
            let mut v = s.seq().to_vec();
            v.extend(t.seq().iter().cloned());
            Ok(Value::Seq(Arc::new(v)))
        }
        Const::SeqApp(..) => {
            let s = next();
            let a = next();
            let mut v = Vec::new();
            for f in s.seq() {
                v.extend(apply(f, a.clone())?.seq().iter().cloned());
            }
            Ok(Value::Seq(Arc::new(v)))
        }
        Const::Zero | Const::Nil(_) | Const::Default(_) => unreachable!("nullary constants do not fire"),
    }
}

/// Evaluates a closed term of data type to its canonical value.
pub fn eval_closed_data(term: &Term) -> Result<CanonicalValue, EvalError> {
    if let Some((x, _)) = term.free_vars().into_iter().next() {
        return Err(EvalError::NotClosed(x));
    }
    let ty = term.infer()?;
    if !ty.is_data() {
        return Err(EvalError::NotDataType(ty));
    }
    let v = eval(term, &Env::new())?;
    Ok(v.to_canonical(&ty).expect("well-typed data value"))
}
