//! Brute-force semantics on finite grids.
//!
//! Data-type values are enumerated up to a natural-number bound and a
//! sequence-length bound. Internal formulas are evaluated with Kleene's
//! three-valued logic: anything that would need a quantifier or an equation
//! at an arrow type is `Unknown`.

use crate::bundle::RealiserBundle;
use crate::formula::Formula;
use crate::machine::{compile, run, Code, Env, Value};
use crate::reduce::CanonicalValue;
use crate::term::Name;
use crate::types::FiniteType;
use serde::Serialize;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub nat_bound: u64,
    pub seq_len_bound: usize,
    pub depth_bound: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            nat_bound: 3,
            seq_len_bound: 2,
            depth_bound: 2,
        }
    }
}

impl Grid {
    pub fn new(nat_bound: u64, seq_len_bound: usize) -> Grid {
        Grid {
            nat_bound,
            seq_len_bound,
            ..Grid::default()
        }
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "B={} L={} D={}",
            self.nat_bound, self.seq_len_bound, self.depth_bound
        )
    }
}

/// How a grid sweep is scheduled. Both give identical verdicts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    /// Uses rayon when the `parallel` feature is on, else runs sequentially.
    #[default]
    Parallel,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("not a data type: {0}")]
    NotDataType(FiniteType),
    #[error("type {ty} is deeper than the grid depth bound {bound}")]
    TooDeep { ty: FiniteType, bound: usize },
}

/// One variable of a replayable assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binding {
    pub name: Name,
    pub ty: FiniteType,
    pub value: CanonicalValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Assignment(pub Vec<Binding>);

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} = {}", b.name, b.value)?;
        }
        Ok(())
    }
}

impl Assignment {
    pub fn env(&self) -> Env {
        self.0.iter().fold(Env::new(), |e, b| {
            e.bind(b.name.as_str(), Value::from_canonical(&b.value))
        })
    }

    pub fn get(&self, name: &str) -> Option<&CanonicalValue> {
        self.0.iter().find(|b| b.name == name).map(|b| &b.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    GridValid,
    CounterexampleFound(Assignment),
    Unknown(String),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::GridValid)
    }

    pub fn counterexample(&self) -> Option<&Assignment> {
        match self {
            Verdict::CounterexampleFound(a) => Some(a),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::GridValid => "GridValid",
            Verdict::CounterexampleFound(_) => "CounterexampleFound",
            Verdict::Unknown(_) => "Unknown",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::GridValid => write!(f, "GridValid"),
            Verdict::CounterexampleFound(a) => write!(f, "CounterexampleFound({a})"),
            Verdict::Unknown(r) => write!(f, "Unknown({r})"),
        }
    }
}

/// Kleene truth values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Truth {
    True,
    False,
    Unknown(String),
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Truth::True => f.write_str("true"),
            Truth::False => f.write_str("false"),
            Truth::Unknown(r) => write!(f, "unknown: {r}"),
        }
    }
}

impl Truth {
    fn from_bool(b: bool) -> Truth {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    fn not(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            u => u,
        }
    }
}

/// All values of a data type within the grid: naturals `0..=B`, sequences
/// by length `0..=L`, then lexicographically in element order.
pub fn enumerate_values(ty: &FiniteType, grid: &Grid) -> Result<Vec<CanonicalValue>, OracleError> {
    check_enumerable(ty, grid)?;
    Ok(enumerate_raw(ty, grid)
        .iter()
        .map(|v| v.to_canonical(ty).expect("data value"))
        .collect())
}

fn check_enumerable(ty: &FiniteType, grid: &Grid) -> Result<(), OracleError> {
    if !ty.is_data() {
        return Err(OracleError::NotDataType(ty.clone()));
    }
    if ty.depth() > grid.depth_bound {
        return Err(OracleError::TooDeep {
            ty: ty.clone(),
            bound: grid.depth_bound,
        });
    }
    Ok(())
}

fn enumerate_raw(ty: &FiniteType, grid: &Grid) -> Vec<Value> {
    match ty {
        FiniteType::Ground => (0..=grid.nat_bound).map(Value::Nat).collect(),
        FiniteType::Star(e) => {
            let elems = enumerate_raw(e, grid);
            let mut out = vec![Value::Seq(Arc::new(Vec::new()))];
            let mut layer: Vec<Vec<Value>> = vec![Vec::new()];
            for _ in 0..grid.seq_len_bound {
                let mut next = Vec::with_capacity(layer.len() * elems.len());
                for prefix in &layer {
                    for x in &elems {
                        let mut v = prefix.clone();
                        v.push(x.clone());
                        next.push(v);
                    }
                }
                out.extend(next.iter().map(|v| Value::Seq(Arc::new(v.clone()))));
                layer = next;
            }
            out
        }
        FiniteType::Arrow(..) => unreachable!("checked data type"),
    }
}

/// Internal formula with terms compiled for the machine.
enum CF {
    Eq(Option<FiniteType>, Arc<Code>, Arc<Code>),
    And(Box<CF>, Box<CF>),
    Or(Box<CF>, Box<CF>),
    Imp(Box<CF>, Box<CF>),
    Forall(Arc<str>, Result<Arc<Vec<Value>>, String>, Box<CF>),
    Exists(Arc<str>, Result<Arc<Vec<Value>>, String>, Box<CF>),
    BoundedForall(Arc<str>, Arc<Code>, Box<CF>),
    BoundedExists(Arc<str>, Arc<Code>, Box<CF>),
    Opaque(String),
}

struct Compiler<'g> {
    grid: &'g Grid,
    cache: HashMap<FiniteType, Result<Arc<Vec<Value>>, String>>,
}

impl Compiler<'_> {
    fn domain(&mut self, ty: &FiniteType) -> Result<Arc<Vec<Value>>, String> {
        let grid = self.grid;
        self.cache
            .entry(ty.clone())
            .or_insert_with(|| match check_enumerable(ty, grid) {
                Ok(()) => Ok(Arc::new(enumerate_raw(ty, grid))),
                Err(e) => Err(format!("quantifier over {ty}: {e}")),
            })
            .clone()
    }

    fn compile(&mut self, f: &Formula) -> CF {
        let b = |c: &mut Self, g: &Formula| Box::new(c.compile(g));
        match f {
            Formula::Eq(ty, l, r) => {
                let data = if ty.is_data() { Some(ty.clone()) } else { None };
                CF::Eq(data, compile(l), compile(r))
            }
            Formula::And(x, y) => CF::And(b(self, x), b(self, y)),
            Formula::Or(x, y) => CF::Or(b(self, x), b(self, y)),
            Formula::Imp(x, y) => CF::Imp(b(self, x), b(self, y)),
            Formula::Forall(x, ty, a) => CF::Forall(x.as_str().into(), self.domain(ty), b(self, a)),
            Formula::Exists(x, ty, a) => CF::Exists(x.as_str().into(), self.domain(ty), b(self, a)),
            Formula::BoundedForall(i, n, a) => CF::BoundedForall(i.as_str().into(), compile(n), b(self, a)),
            Formula::BoundedExists(i, n, a) => CF::BoundedExists(i.as_str().into(), compile(n), b(self, a)),
            Formula::In(..) | Formula::SubsetEq(..) | Formula::Not(_) | Formula::Bot => self.compile(&f.desugar()),
            Formula::St(..) | Formula::ForallSt(..) | Formula::ExistsSt(..) | Formula::Hyper(..) => {
                CF::Opaque(format!("external formula {f}"))
            }
        }
    }
}

fn value_of(code: &Arc<Code>, env: &Env) -> Value {
    run(code, env).expect("all variables bound")
}

fn eval_cf(f: &CF, env: &Env) -> Truth {
    match f {
        CF::Eq(None, ..) => Truth::Unknown("equation at an arrow type".into()),
        CF::Eq(Some(_), l, r) => Truth::from_bool(value_of(l, env) == value_of(r, env)),
        CF::And(a, b) => match eval_cf(a, env) {
            Truth::False => Truth::False,
            Truth::True => eval_cf(b, env),
            u => match eval_cf(b, env) {
                Truth::False => Truth::False,
                _ => u,
            },
        },
        CF::Or(a, b) => match eval_cf(a, env) {
            Truth::True => Truth::True,
            Truth::False => eval_cf(b, env),
            u => match eval_cf(b, env) {
                Truth::True => Truth::True,
                _ => u,
            },
        },
        CF::Imp(a, b) => match eval_cf(a, env) {
            Truth::False => Truth::True,
            Truth::True => eval_cf(b, env),
            u => match eval_cf(b, env) {
                Truth::True => Truth::True,
                _ => u,
            },
        },
        CF::Forall(x, dom, body) | CF::Exists(x, dom, body) => {
            let universal = matches!(f, CF::Forall(..));
            match dom {
                Err(r) => Truth::Unknown(r.clone()),
                Ok(vals) => quantify(universal, vals.iter().cloned(), |v| {
                    eval_cf(body, &env.bind(x.clone(), v))
                }),
            }
        }
        CF::BoundedForall(i, n, body) | CF::BoundedExists(i, n, body) => {
            let universal = matches!(f, CF::BoundedForall(..));
            let n = value_of(n, env).nat();
            quantify(universal, (0..n).map(Value::Nat), |v| {
                eval_cf(body, &env.bind(i.clone(), v))
            })
        }
        CF::Opaque(r) => Truth::Unknown(r.clone()),
    }
}

fn quantify(universal: bool, vals: impl Iterator<Item = Value>, mut body: impl FnMut(Value) -> Truth) -> Truth {
    let decisive = if universal { Truth::False } else { Truth::True };
    let mut unknown = None;
    for v in vals {
        match body(v) {
            t if t == decisive => return t,
            Truth::Unknown(r) => {
                unknown.get_or_insert(r);
            }
            _ => {}
        }
    }
    match unknown {
        Some(r) => Truth::Unknown(r),
        None => decisive.not(),
    }
}

/// Truth of an internal formula under `env` (values for its free variables).
pub fn eval_truth(matrix: &Formula, env: &Assignment, grid: &Grid) -> Truth {
    let mut c = Compiler {
        grid,
        cache: HashMap::new(),
    };
    let cf = c.compile(matrix);
    eval_cf(&cf, &env.env())
}

/// `GridValid` if the formula holds under `env`; otherwise `env` itself is the
/// counterexample.
pub fn eval_formula(matrix: &Formula, env: &Assignment, grid: &Grid) -> Verdict {
    match eval_truth(matrix, env, grid) {
        Truth::True => Verdict::GridValid,
        Truth::False => Verdict::CounterexampleFound(env.clone()),
        Truth::Unknown(r) => Verdict::Unknown(r),
    }
}

/// First witness of `∃y φ` in enumeration order.
pub fn brute_force_witness(formula: &Formula, grid: &Grid) -> Option<CanonicalValue> {
    let Formula::Exists(y, ty, body) = formula else {
        return None;
    };
    let vals = enumerate_values(ty, grid).ok()?;
    let mut c = Compiler {
        grid,
        cache: HashMap::new(),
    };
    let cf = c.compile(body);
    vals.into_iter()
        .find(|v| eval_cf(&cf, &Env::new().bind(y.as_str(), Value::from_canonical(v))) == Truth::True)
}

/// Mixed-radix odometer over per-variable domains; the first variable varies
/// slowest.
struct Space {
    vars: Vec<(Name, FiniteType)>,
    domains: Vec<Arc<Vec<Value>>>,
    size: u128,
}

impl Space {
    fn new(vars: Vec<(Name, FiniteType)>, grid: &Grid) -> Result<Space, String> {
        let mut domains = Vec::new();
        for (x, ty) in &vars {
            check_enumerable(ty, grid).map_err(|e| format!("variable {x}: {e}"))?;
            domains.push(Arc::new(enumerate_raw(ty, grid)));
        }
        let size = domains.iter().map(|d| d.len() as u128).product();
        Ok(Space { vars, domains, size })
    }

    fn values(&self, mut idx: u128) -> Vec<Value> {
        let mut out = vec![Value::Nat(0); self.domains.len()];
        for k in (0..self.domains.len()).rev() {
            let n = self.domains[k].len() as u128;
            out[k] = self.domains[k][(idx % n) as usize].clone();
            idx /= n;
        }
        out
    }

    fn assignment(&self, vals: &[Value]) -> Assignment {
        Assignment(
            self.vars
                .iter()
                .zip(vals)
                .map(|((x, ty), v)| Binding {
                    name: x.clone(),
                    ty: ty.clone(),
                    value: v.to_canonical(ty).expect("data value"),
                })
                .collect(),
        )
    }
}

/// Outcome at one grid point: `None` when the point is fine.
type PointResult = Option<(u8, String)>;

/// Runs `check` on every index of `0..size`; returns the least failing index,
/// preferring definite failures (rank 0) over unknowns (rank 1).
fn sweep(size: u128, exec: Exec, check: impl Fn(u128) -> PointResult + Sync + Send) -> Option<(u8, u128, String)> {
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => {
            use rayon::prelude::*;
            let size = u64::try_from(size).expect("grid fits in u64");
            (0..size)
                .into_par_iter()
                .filter_map(|i| check(i as u128).map(|(rank, r)| (rank, i as u128, r)))
                .min_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)))
        }
        _ => {
            let mut first_unknown = None;
            for i in 0..size {
                match check(i) {
                    Some((0, r)) => return Some((0, i, r)),
                    Some((rank, r)) => {
                        first_unknown.get_or_insert((rank, i, r));
                    }
                    None => {}
                }
            }
            first_unknown
        }
    }
}

/// Values of the closed bundle terms, bound to the existential variables.
fn bundle_env(bundle: &RealiserBundle) -> Env {
    bundle
        .translated
        .exist
        .iter()
        .zip(&bundle.terms)
        .fold(Env::new(), |env, ((x, _), t)| {
            let v = crate::machine::eval(t, &Env::new()).expect("closed realiser");
            env.bind(x.as_str(), v)
        })
}

/// Universal challenges followed by the parameters of the target formula.
fn challenge_vars(bundle: &RealiserBundle) -> Vec<(Name, FiniteType)> {
    let tf = &bundle.translated;
    let mut vars = tf.univ.clone();
    for (x, ty) in tf.parameters() {
        if !vars.iter().any(|(y, _)| *y == x) {
            vars.push((x, ty));
        }
    }
    vars
}

pub fn verify_bundle(bundle: &RealiserBundle, grid: &Grid) -> Verdict {
    verify_bundle_with(bundle, grid, Exec::default())
}

/// Checks `∀ȳ φ(t̄, ȳ)` over every grid assignment of the challenges.
pub fn verify_bundle_with(bundle: &RealiserBundle, grid: &Grid, exec: Exec) -> Verdict {
    if let Err(e) = bundle.check() {
        return Verdict::Unknown(format!("malformed bundle: {e}"));
    }
    let space = match Space::new(challenge_vars(bundle), grid) {
        Ok(s) => s,
        Err(r) => return Verdict::Unknown(r),
    };
    let base = bundle_env(bundle);
    let mut c = Compiler {
        grid,
        cache: HashMap::new(),
    };
    let cf = c.compile(&bundle.translated.matrix);
    let point = |i: u128| -> PointResult {
        let vals = space.values(i);
        let env = space
            .vars
            .iter()
            .zip(vals)
            .fold(base.clone(), |e, ((x, _), v)| e.bind(x.as_str(), v));
        match eval_cf(&cf, &env) {
            Truth::True => None,
            Truth::False => Some((0, String::new())),
            Truth::Unknown(r) => Some((1, r)),
        }
    };
    match sweep(space.size, exec, point) {
        None => Verdict::GridValid,
        Some((0, i, _)) => Verdict::CounterexampleFound(space.assignment(&space.values(i))),
        Some((_, _, r)) => Verdict::Unknown(r),
    }
}

/// Re-evaluates the bundle matrix at a reported assignment.
pub fn replay(bundle: &RealiserBundle, at: &Assignment, grid: &Grid) -> Truth {
    let env = at.0.iter().fold(bundle_env(bundle), |e, b| {
        e.bind(b.name.as_str(), Value::from_canonical(&b.value))
    });
    let mut c = Compiler {
        grid,
        cache: HashMap::new(),
    };
    eval_cf(&c.compile(&bundle.translated.matrix), &env)
}

/// Whether every element of `a` occurs in `b`.
fn as_set_subset(a: &Value, b: &Value) -> bool {
    a.seq().iter().all(|x| b.seq().contains(x))
}

/// Largest existential space `check_upward_closed` sweeps per challenge.
pub const UPWARD_LIMIT: u128 = 1 << 20;

pub fn check_upward_closed(tf: &crate::translate::TranslatedFormula, grid: &Grid) -> Verdict {
    check_upward_closed_with(tf, grid, Exec::default())
}

/// For all challenges and parameters, and all `s̄ ⊆ s̄′` componentwise (as
/// sets), truth of the matrix at `s̄` implies truth at `s̄′`. A counterexample
/// lists `s̄`, then the extension under primed names, then the challenges.
pub fn check_upward_closed_with(tf: &crate::translate::TranslatedFormula, grid: &Grid, exec: Exec) -> Verdict {
    let mut outer = tf.univ.clone();
    for (x, ty) in tf.parameters() {
        if !outer.iter().any(|(y, _)| *y == x) {
            outer.push((x, ty));
        }
    }
    if let Some((x, ty)) = tf.exist.iter().find(|(_, t)| !t.is_star()) {
        return Verdict::Unknown(format!("existential variable {x} : {ty} is not a sequence"));
    }
    let inner = match Space::new(tf.exist.clone(), grid) {
        Ok(s) => s,
        Err(r) => return Verdict::Unknown(r),
    };
    let outer = match Space::new(outer, grid) {
        Ok(s) => s,
        Err(r) => return Verdict::Unknown(r),
    };
    if inner.size > UPWARD_LIMIT {
        return Verdict::Unknown(format!("{} existential points exceed the sweep limit", inner.size));
    }
    let size = inner.size as usize;
    let dims: Vec<usize> = inner.domains.iter().map(|d| d.len()).collect();
    // Mixed radix, last component least significant (as in `Space::values`).
    let strides: Vec<usize> = (0..dims.len()).map(|k| dims[k + 1..].iter().product()).collect();
    // Per component, containment between domain elements.
    let contains: Vec<Vec<Vec<bool>>> = inner
        .domains
        .iter()
        .map(|d| {
            d.iter()
                .map(|a| d.iter().map(|b| as_set_subset(a, b)).collect())
                .collect()
        })
        .collect();
    let mut c = Compiler {
        grid,
        cache: HashMap::new(),
    };
    let cf = c.compile(&tf.matrix);
    let found = std::sync::Mutex::new(HashMap::<u128, (usize, usize)>::new());
    // The product of preorders is monotone iff it is monotone in each
    // component with the others fixed, so only one component moves at a time.
    let point = |o: u128| -> PointResult {
        let vals = outer.values(o);
        let env = outer
            .vars
            .iter()
            .zip(vals)
            .fold(Env::new(), |e, ((x, _), v)| e.bind(x.as_str(), v));
        let table: Vec<Truth> = (0..size)
            .map(|i| {
                let e = inner
                    .vars
                    .iter()
                    .zip(inner.values(i as u128))
                    .fold(env.clone(), |e, ((x, _), v)| e.bind(x.as_str(), v));
                eval_cf(&cf, &e)
            })
            .collect();
        let mut unknown = None;
        for (a, ta) in table.iter().enumerate() {
            match ta {
                Truth::True => {}
                Truth::Unknown(r) => {
                    unknown.get_or_insert(r.clone());
                    continue;
                }
                Truth::False => continue,
            }
            for k in 0..dims.len() {
                let d = (a / strides[k]) % dims[k];
                let base = a - d * strides[k];
                for j in (0..dims[k]).filter(|&j| j != d && contains[k][d][j]) {
                    let b = base + j * strides[k];
                    match &table[b] {
                        Truth::False => {
                            found.lock().expect("no poisoning").insert(o, (a, b));
                            return Some((0, String::new()));
                        }
                        Truth::Unknown(r) => {
                            unknown.get_or_insert(r.clone());
                        }
                        Truth::True => {}
                    }
                }
            }
        }
        unknown.map(|r| (1, r))
    };
    match sweep(outer.size, exec, point) {
        None => Verdict::GridValid,
        Some((0, o, _)) => {
            let (a, b) = found.lock().expect("no poisoning")[&o];
            let mut binds = inner.assignment(&inner.values(a as u128)).0;
            binds.extend(inner.assignment(&inner.values(b as u128)).0.into_iter().map(|mut bd| {
                bd.name.push('\'');
                bd
            }));
            binds.extend(outer.assignment(&outer.values(o)).0);
            Verdict::CounterexampleFound(Assignment(binds))
        }
        Some((_, _, r)) => Verdict::Unknown(r),
    }
}

/// Substitutes canonical values for variables, for replaying assignments
/// syntactically.
pub fn instantiate(matrix: &Formula, at: &Assignment) -> Formula {
    at.0.iter()
        .fold(matrix.clone(), |f, b| f.subst(&b.name, &b.value.to_term()))
}
