//! Shared test support: a brute-force degreewise linear-algebra oracle
//! that is independent of the crate's Groebner/normal-form/linalg path.

pub mod oracle;
