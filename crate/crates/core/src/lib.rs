//! Computational toolkit for right-angled Artin groups: word algebra modulo
//! partial commutation, the half-space calculus of the universal cover of the
//! Salvetti complex, a verifier for the non-overlapping property of powers,
//! stable commutator length lower bounds from graph colorings, and a
//! combinatorial Gauss–Bonnet checker for angled 2-complexes.

pub mod bounds;
pub mod complex;
pub mod cube;
pub mod error;
pub mod graph;
pub mod overlap;
pub mod rational;
pub mod word;

pub use bounds::{BoundCertificate, Route};
pub use complex::AngledComplex;
pub use cube::{HalfSpace, Interval, Sign, UniversalCover, Vertex};
pub use error::{Error, Result};
pub use graph::{ChromaticResult, Coloring, ColoringMode, DefiningGraph, LowerBound};
pub use rational::Rational;
pub use overlap::{OverlapMode, OverlapReport};
pub use word::{CyclicWord, ExponentVector, Letter, Raag, Word};
