//! Exact computation in Thompson's group F.
//!
//! Elements are available as dyadic PL homeomorphisms ([`PlMap`]) and as
//! reduced tree-pair diagrams ([`TreePair`]); both multiply as
//! `(f * g)(t) = f(g(t))` and convert into each other exactly. On top of
//! that sit words and normal forms ([`presentation`]), characters and the
//! Sigma-invariant classification for F ([`characters`]) and for its
//! direct powers ([`products`]), and the finite Cayley-ball explorer
//! ([`explorer`]).

pub mod characters;
pub mod dyadic;
pub mod error;
pub mod explorer;
pub mod parse;
pub mod pl;
pub mod presentation;
pub mod products;
pub mod report;
pub mod treepair;

pub use characters::{Character, FinitenessReport, SigmaVerdict};
pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use pl::{End, Interval, PlMap, Subgroup};
pub use presentation::{Letter, NormalForm, Word};
pub use treepair::{Tree, TreePair};

/// Anything with one-sided derivatives at the endpoints of `[0,1]`.
pub trait Element {
    /// `log2` of the right derivative at 0 or the left derivative at 1.
    fn log_slope(&self, end: End) -> i64;
}

impl Element for PlMap {
    fn log_slope(&self, end: End) -> i64 {
        self.endpoint_log_slope(end)
    }
}

impl Element for TreePair {
    fn log_slope(&self, end: End) -> i64 {
        TreePair::log_slope(self, end)
    }
}
