//! Group backends, wreath recursions and injectivization.

mod backend;
mod injectivize;
mod recursion;

pub use backend::{Enumerated, FiniteTable, GroupBackend, GroupElement};
pub use injectivize::{injectivize, Injectivized};
pub use recursion::{Injectivity, Rule, WreathImage, WreathRecursion};
