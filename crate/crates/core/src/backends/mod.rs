//! Concrete black-box groups: permutations, prime-field matrices, modular
//! units and direct products of those.
//!
//! Backend specs are short strings: `sym:N`, `gl:N:P`, `sl:N:P`, `psl2:P`,
//! `units:N`. A product is written `A*B`, and `A^k` is the k-fold direct power.

pub mod matrix;
pub mod modular;
pub mod perm;
pub mod product;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use matrix::{gl_exponent, matrix_invert, MatrixElement, MatrixGroup, MatrixKind};
pub use modular::{ModularUnit, ModularUnits};
pub use perm::{perm_order, Permutation, SymmetricGroup};
pub use product::DirectProduct;

use crate::blackbox::{BlackBox, GroupBackend};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum BackendKind {
    Permutation(usize),
    /// `GL(n, p)`.
    Matrix(usize, u32),
    SpecialLinear(usize, u32),
    Psl2(u32),
    ModularUnits(u64),
    Product(Box<BackendKind>, Box<BackendKind>),
}

impl BackendKind {
    pub fn build(&self) -> Result<Box<dyn GroupBackend>> {
        Ok(match self {
            BackendKind::Permutation(n) => Box::new(SymmetricGroup::new(*n)?),
            BackendKind::Matrix(n, p) => Box::new(MatrixGroup::general(*n, *p)?),
            BackendKind::SpecialLinear(n, p) => Box::new(MatrixGroup::special(*n, *p)?),
            BackendKind::Psl2(p) => Box::new(MatrixGroup::psl2(*p)?),
            BackendKind::ModularUnits(n) => Box::new(ModularUnits::new(*n)?),
            BackendKind::Product(a, b) => Box::new(DirectProduct::new(a.build()?, b.build()?)),
        })
    }
}

/// Builds a black box with the backend's natural exponent: `lcm(1..n)` for
/// `Sym(n)`, `|GL(n, p)|` for the matrix groups and `n - 1` for `(Z/nZ)*`.
pub fn make_backend(kind: &BackendKind) -> Result<BlackBox> {
    Ok(BlackBox::new(kind.build()?))
}

impl fmt::Display for BackendKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackendKind::Permutation(n) => write!(f, "sym:{n}"),
            BackendKind::Matrix(n, p) => write!(f, "gl:{n}:{p}"),
            BackendKind::SpecialLinear(n, p) => write!(f, "sl:{n}:{p}"),
            BackendKind::Psl2(p) => write!(f, "psl2:{p}"),
            BackendKind::ModularUnits(n) => write!(f, "units:{n}"),
            BackendKind::Product(a, b) => write!(f, "{a}*{b}"),
        }
    }
}

fn num<T: FromStr>(spec: &str, s: &str) -> Result<T> {
    s.parse()
        .map_err(|_| Error::invalid(format!("bad number {s:?} in backend spec {spec:?}")))
}

fn parse_atom(spec: &str) -> Result<BackendKind> {
    let (atom, power) = match spec.split_once('^') {
        Some((a, k)) => (a.trim(), num::<usize>(spec, k.trim())?),
        None => (spec.trim(), 1),
    };
    if power == 0 {
        return Err(Error::invalid("direct power must be at least 1"));
    }
    let parts: Vec<&str> = atom.split(':').collect();
    let base = match parts.as_slice() {
        ["sym", n] => BackendKind::Permutation(num(spec, n)?),
        ["gl", n, p] => BackendKind::Matrix(num(spec, n)?, num(spec, p)?),
        ["sl", n, p] => BackendKind::SpecialLinear(num(spec, n)?, num(spec, p)?),
        ["psl2", p] => BackendKind::Psl2(num(spec, p)?),
        ["units", n] => BackendKind::ModularUnits(num(spec, n)?),
        _ => return Err(Error::invalid(format!("unknown backend spec {spec:?}"))),
    };
    let mut acc = base.clone();
    for _ in 1..power {
        acc = BackendKind::Product(Box::new(acc), Box::new(base.clone()));
    }
    Ok(acc)
}

impl FromStr for BackendKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split('*');
        let first = parts
            .next()
            .filter(|p| !p.trim().is_empty())
            .ok_or_else(|| Error::invalid("empty backend spec"))?;
        let mut acc = parse_atom(first)?;
        for p in parts {
            acc = BackendKind::Product(Box::new(acc), Box::new(parse_atom(p)?));
        }
        Ok(acc)
    }
}

impl From<BackendKind> for String {
    fn from(k: BackendKind) -> String {
        k.to_string()
    }
}

impl TryFrom<String> for BackendKind {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}
