//! User-supplied prefactor expressions in one variable `x`.
//!
//! [`parse`] turns text such as `exp(-x^2/2)` into an [`Expr`] tree and
//! [`eval_jet`] evaluates the tree on a [`Jet2`] seed, returning the value and
//! its exact first and second derivatives.

mod parser;

use std::fmt;

use thiserror::Error;

use crate::jet::Jet2;

pub use parser::{parse, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constant {
    Pi,
    E,
}

impl Constant {
    pub fn value(self) -> f64 {
        match self {
            Constant::Pi => std::f64::consts::PI,
            Constant::E => std::f64::consts::E,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Sin,
    Cos,
    Tan,
    Sqrt,
    Log,
    Neg,
}

impl Func {
    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sqrt => "sqrt",
            Func::Log => "log",
            Func::Neg => "neg",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Some(match name {
            "exp" => Func::Exp,
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "sqrt" => Func::Sqrt,
            "log" => Func::Log,
            "neg" => Func::Neg,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

/// Expression tree. Exponents of [`BinOp::Pow`] never contain [`Expr::Var`].
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    Var,
    Const(Constant),
    Unary(Func, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn unary(f: Func, arg: Expr) -> Self {
        Expr::Unary(f, Box::new(arg))
    }

    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Self {
        Expr::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn contains_var(&self) -> bool {
        match self {
            Expr::Var => true,
            Expr::Num(_) | Expr::Const(_) => false,
            Expr::Unary(_, a) => a.contains_var(),
            Expr::Binary(_, a, b) => a.contains_var() || b.contains_var(),
        }
    }

    /// Number of nodes in the tree.
    pub fn len(&self) -> usize {
        match self {
            Expr::Num(_) | Expr::Var | Expr::Const(_) => 1,
            Expr::Unary(_, a) => 1 + a.len(),
            Expr::Binary(_, a, b) => 1 + a.len() + b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Fully parenthesised rendering; `parse(&e.to_string())` gives back `e`.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(v) => write!(f, "{v}"),
            Expr::Var => f.write_str("x"),
            Expr::Const(Constant::Pi) => f.write_str("pi"),
            Expr::Const(Constant::E) => f.write_str("e"),
            Expr::Unary(Func::Neg, a) => write!(f, "(-{a})"),
            Expr::Unary(func, a) => write!(f, "{}({a})", func.name()),
            Expr::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    /// `node` is the pre-order index of the failing node, `subexpr` its rendering.
    #[error("{reason} in `{subexpr}` (node {node}) at x = {x}")]
    Domain {
        reason: &'static str,
        node: usize,
        subexpr: String,
        x: f64,
    },
}

/// Evaluate `expr` and its first two derivatives at `x`.
pub fn eval_jet(expr: &Expr, x: f64) -> Result<Jet2, EvalError> {
    let mut next = 0;
    eval_node(expr, Jet2::variable(x), x, &mut next)
}

fn domain(reason: &'static str, node: usize, e: &Expr, x: f64) -> EvalError {
    EvalError::Domain {
        reason,
        node,
        subexpr: e.to_string(),
        x,
    }
}

fn eval_node(e: &Expr, seed: Jet2, x: f64, next: &mut usize) -> Result<Jet2, EvalError> {
    let id = *next;
    *next += 1;
    let out = match e {
        Expr::Num(v) => Jet2::constant(*v),
        Expr::Var => seed,
        Expr::Const(c) => Jet2::constant(c.value()),
        Expr::Unary(func, a) => {
            let u = eval_node(a, seed, x, next)?;
            match func {
                Func::Exp => u.exp(),
                Func::Sin => u.sin(),
                Func::Cos => u.cos(),
                Func::Neg => -u,
                Func::Tan => {
                    // cos never returns 0 for a float argument; within the
                    // argument's own rounding of a pole counts as the pole
                    if u.value.cos().abs() <= f64::EPSILON * u.value.abs().max(1.0) {
                        return Err(domain("tan at a pole", id, e, x));
                    }
                    u.tan()
                }
                Func::Sqrt => {
                    if u.value < 0.0 {
                        return Err(domain("sqrt of a negative number", id, e, x));
                    }
                    if u.value == 0.0 && (u.d1 != 0.0 || u.d2 != 0.0) {
                        return Err(domain("sqrt is not differentiable at 0", id, e, x));
                    }
                    if u.value == 0.0 {
                        Jet2::constant(0.0)
                    } else {
                        u.sqrt()
                    }
                }
                Func::Log => {
                    if u.value <= 0.0 {
                        return Err(domain("log of a non-positive number", id, e, x));
                    }
                    u.ln()
                }
            }
        }
        Expr::Binary(op, a, b) => {
            let l = eval_node(a, seed, x, next)?;
            let r = eval_node(b, seed, x, next)?;
            match op {
                BinOp::Add => l + r,
                BinOp::Sub => l - r,
                BinOp::Mul => l * r,
                BinOp::Div => {
                    if r.value == 0.0 {
                        return Err(domain("division by zero", id, e, x));
                    }
                    l / r
                }
                BinOp::Pow => {
                    let p = r.value;
                    if l.value < 0.0 && p.fract() != 0.0 {
                        return Err(domain("negative base with fractional exponent", id, e, x));
                    }
                    if l.d1 == 0.0 && l.d2 == 0.0 {
                        Jet2::constant(l.value.powf(p))
                    } else {
                        l.powf(p)
                    }
                }
            }
        }
    };
    if !out.is_finite() {
        return Err(domain("non-finite result", id, e, x));
    }
    Ok(out)
}
