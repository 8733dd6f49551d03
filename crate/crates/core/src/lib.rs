//! Deterministic regular expressions with interleaving (`&`) and counting
//! (`E[m,n]`).
//!
//! The crate provides:
//! - an expression syntax tree with parser, printer and normaliser ([`expr`]);
//! - brute-force language semantics used as test oracles ([`oracle`]);
//! - the compositional attributes first/followlast/λ/𝒲/ct ([`attrs`]);
//! - three determinism checkers with node-level diagnostics ([`checker`]);
//! - the two attribute-keyed context-free grammars of the class ([`grammar`]);
//! - a random generator of deterministic expressions ([`generator`]).

pub mod attrs;
pub mod checker;
pub mod cli;
pub mod expr;
pub mod generator;
pub mod grammar;
pub mod oracle;
pub mod symset;

pub use expr::{parse, print, simplify, size, Expr, ExtExpr, Letter, Marked, MarkedExpr, Path, Symbol, Upper};
