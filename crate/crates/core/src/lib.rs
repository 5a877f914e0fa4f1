//! Exact-arithmetic engine for local and global polar invariants of
//! plane singular holomorphic foliations: multiplicities, Milnor
//! numbers, polar intersection numbers, polar excess / GSV index, and
//! the degree-bound audit on the projective plane, all via blow-ups and
//! reduction of singularities over the rationals or one simple
//! algebraic extension.

pub mod curves;
pub mod error;
pub mod exactalg;

pub use error::{Error, Result};
