//! Exact computations in the Cayley graphs of `G = F(a,b) x F(c,d)`.
//!
//! The crate has two halves that mirror the two directions of the contrast
//! it demonstrates:
//!
//! * [`shortcut_free`] and [`shortcut_product`] construct *shortcut
//!   certificates*: any null word over the standard generators `{a,b,c,d}`
//!   has a cyclic conjugate `w1 w2` and a strictly shorter word `mu` equal
//!   to `w1` in `G`, with explicit multiplicative bounds.
//! * [`cayley`] is an exact distance oracle (bidirectional BFS over the
//!   implicit graph) used to verify that over the generators `{a,b,c,t}`
//!   with `t = d b^-1` the commutator words `[t^n c t^-n, a]` define
//!   isometrically embedded cycles of unbounded length, so no uniform
//!   shortcut constant can exist for that generating set.
//!
//! [`words`] and [`group`] supply the shared currency: words over marked
//! alphabets and normal forms of elements of `G`.

pub mod acceptance;
pub mod cayley;
pub mod families;
pub mod group;
pub mod shortcut_free;
pub mod shortcut_product;
pub mod words;

mod error;

pub use error::{Error, Result};
pub use group::{MarkedAlphabet, NormalForm};
pub use words::{Letter, Sign, Word};
