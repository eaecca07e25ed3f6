//! Exact computations with nonincreasing null sequences, their arithmetic
//! means at zero and at infinity, and membership in the sequence ideals built
//! from them.

pub mod envelopes;
pub mod ideals;
pub mod majorization;
pub mod transforms;
pub mod num;
pub mod parse;
pub mod relations;
pub mod seq;
pub mod corpus;
pub mod cli;
