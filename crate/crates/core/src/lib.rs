//! Proof kernel for the connexive logic C.

pub mod battery;
pub mod connectives;
pub mod derivation;
pub mod format;
pub mod g3c;
pub mod nc;
pub mod sc_inf;
pub mod sexpr;
pub mod syntax;
pub mod witnesses;
