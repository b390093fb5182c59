//! Library surface of the command-line front end: expression language,
//! generic evaluator, ring dispatch, and the verify runner. The binary in
//! main.rs is a thin argument-parsing shell over these modules.

pub mod ast;
pub mod eval;
pub mod fockexpr;
pub mod parser;
pub mod rings;
pub mod verify;
