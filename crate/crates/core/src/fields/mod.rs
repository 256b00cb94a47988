//! Scalar fields on `H^n`.
//!
//! Anything that can be evaluated on coordinate jets implements [`Field`]:
//! parsed expressions, closures, and the transformed fields built by
//! [`crate::crtransform`]. Evaluating on jets rather than on points is what
//! lets a field be composed with a map and still produce exact derivatives.

pub mod corpus;
pub mod expr;
pub mod parser;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::Point;
use crate::jets::{horizontal_from_euclidean, HorizontalJet, Jet2};

pub use corpus::{builtin_corpus, CorpusEntry, Domain, FieldCorpus};
pub use expr::{BinOp, Coord, Expr, Func};
pub use parser::parse_field;

pub trait Field: Send + Sync {
    fn dim(&self) -> usize;

    /// Evaluates on the `2n + 1` coordinate jets `(x, y, t)`.
    fn eval_jets(&self, coords: &[Jet2]) -> Result<Jet2>;

    fn jet_at(&self, p: &Point) -> Result<Jet2> {
        if p.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: p.dim() });
        }
        self.eval_jets(&Jet2::seed(p))
    }

    fn horizontal_at(&self, p: &Point) -> Result<HorizontalJet> {
        Ok(horizontal_from_euclidean(&self.jet_at(p)?, p))
    }

    fn value_at(&self, p: &Point) -> Result<f64> {
        Ok(self.jet_at(p)?.val)
    }
}

pub type SharedField = Arc<dyn Field>;

/// A parsed expression bound to a dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct ExprField {
    pub expr: Expr,
    n: usize,
}

impl ExprField {
    pub fn new(expr: Expr, n: usize) -> Result<Self> {
        let need = expr.min_dim();
        if need > n {
            return Err(Error::DimensionMismatch { expected: n, got: need });
        }
        Ok(Self { expr, n })
    }

    pub fn parse(text: &str, n: usize) -> Result<Self> {
        Ok(Self { expr: parse_field(text, n)?, n })
    }

    pub fn shared(self) -> SharedField {
        Arc::new(self)
    }
}

impl Field for ExprField {
    fn dim(&self) -> usize {
        self.n
    }

    fn eval_jets(&self, coords: &[Jet2]) -> Result<Jet2> {
        self.expr.eval(coords)
    }

    fn value_at(&self, p: &Point) -> Result<f64> {
        self.expr.eval_value(&p.coords())
    }
}

/// A field given by a closure over coordinate jets.
pub struct FnField<F> {
    n: usize,
    f: F,
}

impl<F> FnField<F>
where
    F: Fn(&[Jet2]) -> Result<Jet2> + Send + Sync + 'static,
{
    pub fn new(n: usize, f: F) -> Self {
        Self { n, f }
    }

    pub fn shared(self) -> SharedField {
        Arc::new(self)
    }
}

impl<F> Field for FnField<F>
where
    F: Fn(&[Jet2]) -> Result<Jet2> + Send + Sync,
{
    fn dim(&self) -> usize {
        self.n
    }

    fn eval_jets(&self, coords: &[Jet2]) -> Result<Jet2> {
        (self.f)(coords)
    }
}
