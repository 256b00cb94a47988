use std::fmt;

use crate::error::{Error, Result};
use crate::jets::Jet2;

/// A coordinate function, zero-based: `X(0)` is `x1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coord {
    X(usize),
    Y(usize),
    T,
}

impl Coord {
    /// Index into the coordinate vector `(x, y, t)` of a point in `H^n`.
    pub fn index(self, n: usize) -> usize {
        match self {
            Coord::X(i) => i,
            Coord::Y(i) => n + i,
            Coord::T => 2 * n,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    fn symbol(self) -> char {
        match self {
            BinOp::Add => '+',
            BinOp::Sub => '-',
            BinOp::Mul => '*',
            BinOp::Div => '/',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Exp,
    Log,
    Sqrt,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
        }
    }
}

/// Expression tree. Literals are finite and nonnegative; a leading minus is
/// always a [`Expr::Neg`] node. Exponents are plain numbers.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(f64),
    Var(Coord),
    /// `|z|^2`
    ZNorm2,
    /// `|z|^4 + t^2`
    GNorm4,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, f64),
    Call(Func, Box<Expr>),
}

impl Expr {
    pub fn num(v: f64) -> Self {
        if v < 0.0 {
            Expr::Neg(Box::new(Expr::Num(-v)))
        } else {
            Expr::Num(v)
        }
    }

    pub fn bin(op: BinOp, a: Expr, b: Expr) -> Self {
        Expr::Bin(op, Box::new(a), Box::new(b))
    }

    pub fn pow(self, r: f64) -> Self {
        Expr::Pow(Box::new(self), r)
    }

    pub fn call(f: Func, a: Expr) -> Self {
        Expr::Call(f, Box::new(a))
    }

    /// Largest coordinate dimension referenced, or 0 if none.
    pub fn min_dim(&self) -> usize {
        match self {
            Expr::Var(Coord::X(i)) | Expr::Var(Coord::Y(i)) => i + 1,
            Expr::Num(_) | Expr::Var(Coord::T) | Expr::ZNorm2 | Expr::GNorm4 => 0,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => a.min_dim(),
            Expr::Bin(_, a, b) => a.min_dim().max(b.min_dim()),
        }
    }

    /// True when the expression does not depend on the point.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Num(_) => true,
            Expr::Var(_) | Expr::ZNorm2 | Expr::GNorm4 => false,
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::Call(_, a) => a.is_constant(),
            Expr::Bin(_, a, b) => a.is_constant() && b.is_constant(),
        }
    }

    /// Evaluates on coordinate jets `(x_1..x_n, y_1..y_n, t)`.
    ///
    /// Domain failures are reported once, tagged with the innermost
    /// sub-expression that failed.
    pub fn eval(&self, coords: &[Jet2]) -> Result<Jet2> {
        let n = (coords.len() - 1) / 2;
        let dim = coords[0].dim();
        let located = |r: Result<Jet2>| {
            r.map_err(|e| match e {
                e @ Error::FieldDomain { .. } => e,
                e => Error::FieldDomain { location: self.to_string(), source: Box::new(e) },
            })
        };
        match self {
            Expr::Num(v) => Ok(Jet2::constant(*v, dim)),
            Expr::Var(c) => Ok(coords[c.index(n)].clone()),
            Expr::ZNorm2 => Ok(znorm2_jet(coords, n)),
            Expr::GNorm4 => {
                let r2 = znorm2_jet(coords, n);
                let t = &coords[2 * n];
                Ok(&r2 * &r2 + t * t)
            }
            Expr::Neg(a) => Ok(-a.eval(coords)?),
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval(coords)?, b.eval(coords)?);
                match op {
                    BinOp::Add => Ok(a + b),
                    BinOp::Sub => Ok(a - b),
                    BinOp::Mul => Ok(a * b),
                    BinOp::Div => located(a.try_div(&b)),
                }
            }
            Expr::Pow(a, r) => {
                let a = a.eval(coords)?;
                located(a.try_powf(*r))
            }
            Expr::Call(f, a) => {
                let a = a.eval(coords)?;
                match f {
                    Func::Exp => Ok(a.exp()),
                    Func::Log => located(a.try_ln()),
                    Func::Sqrt => located(a.try_sqrt()),
                }
            }
        }
    }

    /// Value-only evaluation at plain coordinates.
    pub fn eval_value(&self, coords: &[f64]) -> Result<f64> {
        let n = (coords.len() - 1) / 2;
        let located = |op: &'static str, value: f64| Error::FieldDomain {
            location: self.to_string(),
            source: Box::new(Error::JetDomain { op, value }),
        };
        Ok(match self {
            Expr::Num(v) => *v,
            Expr::Var(c) => coords[c.index(n)],
            Expr::ZNorm2 => coords[..2 * n].iter().map(|v| v * v).sum(),
            Expr::GNorm4 => {
                let r2: f64 = coords[..2 * n].iter().map(|v| v * v).sum();
                r2 * r2 + coords[2 * n] * coords[2 * n]
            }
            Expr::Neg(a) => -a.eval_value(coords)?,
            Expr::Bin(op, a, b) => {
                let (a, b) = (a.eval_value(coords)?, b.eval_value(coords)?);
                match op {
                    BinOp::Add => a + b,
                    BinOp::Sub => a - b,
                    BinOp::Mul => a * b,
                    BinOp::Div => {
                        if b == 0.0 {
                            return Err(located("division", b));
                        }
                        a / b
                    }
                }
            }
            Expr::Pow(a, r) => {
                let a = a.eval_value(coords)?;
                if r.fract() == 0.0 && r.abs() < 1e9 {
                    if *r < 0.0 && a == 0.0 {
                        return Err(located("pow", a));
                    }
                    a.powi(*r as i32)
                } else {
                    if !(a > 0.0) {
                        return Err(located("pow", a));
                    }
                    a.powf(*r)
                }
            }
            Expr::Call(f, a) => {
                let a = a.eval_value(coords)?;
                match f {
                    Func::Exp => a.exp(),
                    Func::Log if a > 0.0 => a.ln(),
                    Func::Sqrt if a > 0.0 => a.sqrt(),
                    _ => return Err(located(f.name(), a)),
                }
            }
        })
    }
}

fn znorm2_jet(coords: &[Jet2], n: usize) -> Jet2 {
    let mut acc = Jet2::constant(0.0, coords[0].dim());
    for c in &coords[..2 * n] {
        acc = acc + c * c;
    }
    acc
}

/// Fully parenthesized output that parses back to the identical tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v:?}"),
            Expr::Var(Coord::X(i)) => write!(f, "x{}", i + 1),
            Expr::Var(Coord::Y(i)) => write!(f, "y{}", i + 1),
            Expr::Var(Coord::T) => write!(f, "t"),
            Expr::ZNorm2 => write!(f, "znorm2"),
            Expr::GNorm4 => write!(f, "gnorm4"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Bin(op, a, b) => write!(f, "({a}{}{b})", op.symbol()),
            Expr::Pow(a, r) => write!(f, "({a}^({r:?}))"),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Point;

    #[test]
    fn constant_evaluates_flat() {
        let p = Point::new(&[0.3], &[0.1], -0.2);
        let j = Expr::Num(5.0).eval(&Jet2::seed(&p)).unwrap();
        assert_eq!(j.val, 5.0);
        assert_eq!(j.grad.amax(), 0.0);
        assert_eq!(j.hess.amax(), 0.0);
    }

    #[test]
    fn t_evaluates_to_coordinate() {
        let p = Point::new(&[0.3], &[0.1], -0.2);
        let j = Expr::Var(Coord::T).eval(&Jet2::seed(&p)).unwrap();
        assert_eq!(j.val, -0.2);
        assert_eq!(j.grad.as_slice(), &[0.0, 0.0, 1.0]);
        assert_eq!(j.hess.amax(), 0.0);
    }

    #[test]
    fn znorm2_at_unit_x() {
        let p = Point::new(&[1.0], &[0.0], 0.0);
        let j = Expr::ZNorm2.eval(&Jet2::seed(&p)).unwrap();
        assert_eq!(j.val, 1.0);
        assert_eq!(j.grad.as_slice(), &[2.0, 0.0, 0.0]);
        assert_eq!(j.hess.diagonal().as_slice(), &[2.0, 2.0, 0.0]);
    }

    #[test]
    fn domain_error_names_subexpression() {
        let e = Expr::call(Func::Log, Expr::Var(Coord::T));
        let p = Point::new(&[1.0], &[0.0], -1.0);
        match e.eval(&Jet2::seed(&p)).unwrap_err() {
            Error::FieldDomain { location, source } => {
                assert_eq!(location, "log(t)");
                assert!(matches!(*source, Error::JetDomain { op: "log", .. }));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(e.eval_value(&p.coords()).is_err());
    }

    #[test]
    fn value_path_matches_jet_path() {
        let e = Expr::bin(
            BinOp::Div,
            Expr::call(Func::Exp, Expr::bin(BinOp::Mul, Expr::Num(0.3), Expr::ZNorm2)),
            Expr::GNorm4.pow(-0.25),
        );
        let p = Point::new(&[0.4, -0.1], &[0.2, 0.9], 0.7);
        let j = e.eval(&Jet2::seed(&p)).unwrap();
        assert_eq!(j.val, e.eval_value(&p.coords()).unwrap());
    }

    #[test]
    fn display_is_fully_parenthesized() {
        let e = Expr::bin(BinOp::Sub, Expr::Var(Coord::X(0)), Expr::num(-2.5)).pow(-0.5);
        assert_eq!(e.to_string(), "((x1-(-2.5))^(-0.5))");
    }
}
