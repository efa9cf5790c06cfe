//! Faithful irreducible representations of Lie algebras over finite fields.

pub mod config;
pub mod error;
pub mod ff;
pub mod io;
pub mod liealg;
pub mod pipeline;
pub mod redenv;
pub mod report;
pub mod rep;
pub mod restricted;

pub use config::{prng, Caps, Prng};
pub use error::{Error, Result};
