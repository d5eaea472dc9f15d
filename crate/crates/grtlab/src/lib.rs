//! Exact computational algebra around the Grothendieck-Teichmuller hexagon
//! and pentagon equations.
//!
//! The crate has three layers:
//!
//! * an exact free-Lie-algebra core over the rationals with a Lyndon-word
//!   basis ([`series`], [`lyndon`], [`parse`]), the hexagon/anti-hexagon
//!   projector calculus and the Ihara bracket on top of it ([`grt`]), and
//!   Drinfeld-Kohno quotients hosting the pentagon equation ([`dk`]);
//! * finite carriers for brute-force verification: Cayley-table groups and
//!   n-ary maps ([`group`], [`nary`]), the symmetrization constructions and
//!   square-zero differentials ([`group_lab`]), and torsor tables with their
//!   canonical solutions ([`torsor`]);
//! * the birational five-cycle over prime fields and the Bloch-Wigner
//!   dilogarithm with its five-term relation ([`fivecycle`]).
//!
//! All exact arithmetic is over arbitrary-precision rationals; nothing is
//! ever rounded outside [`fivecycle`]'s complex numerics. Exhaustive sweeps
//! run data-parallel when the `parallel` feature (default) is enabled and
//! fall back to sequential loops without it.

pub mod dk;
pub mod exec;
pub mod fivecycle;
pub mod group;
pub mod group_lab;
pub mod grt;
pub mod linalg;
pub mod lyndon;
pub mod nary;
pub mod parse;
pub mod rational;
pub mod report;
pub mod series;
pub mod suites;
pub mod torsor;

pub use rational::Rat;
pub use series::{Alphabet, LieSeries};
