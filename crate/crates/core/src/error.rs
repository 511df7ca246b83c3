use alloc::string::String;
use alloc::vec::Vec;

use alloc::boxed::Box;

use crate::arith::{Rat, Value};

fn join_values(v: &[Value]) -> String {
    let parts: Vec<String> = v.iter().map(|x| alloc::format!("{x}")).collect();
    parts.join(", ")
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} exceeds the supported bound 2^61")]
    PrimeTooLarge(u64),
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("input polynomial is not squarefree (the extension is not separable)")]
    NotSquarefree,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("element has value {0}, expected 0")]
    NotAUnit(Value),
    #[error("augmentation violates beta_next > alpha*beta_top: beta_top = {beta_top}, alpha = {alpha}, beta_next = {beta_next}")]
    ConditionStar { beta_top: Box<Rat>, alpha: u64, beta_next: Box<Rat> },
    #[error("side does not belong to the Newton polygon: {0}")]
    SideMismatch(String),
    #[error(
        "no terminal key polynomial within {limit} augmentations (beta sequence [{}]); \
         the values stay bounded, which is the limit key polynomial regime of Case 2b and is not constructed here",
        join_values(.betas)
    )]
    NonTermination { limit: usize, betas: Vec<Value> },
    #[error("invariant `{check}` failed on chain {chain}")]
    InvariantViolation { check: String, chain: String },
}
