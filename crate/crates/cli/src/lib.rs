//! Session front end: the input language, the runner, JSON output and the
//! content-addressed resolution cache.

pub mod ast;
pub mod cache;
pub mod output;
pub mod parser;
pub mod serialize;
pub mod session;
