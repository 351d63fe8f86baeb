//! Constructive Krull dimension toolkit: collapse of idealistic chains in
//! computable rings with explicit certificates, distributive lattices given by
//! entailment relations, the Zariski lattice, and Going Up / Going Down
//! transfer for integral extensions.

pub mod arith;
pub mod error;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod groebner;
pub mod chain;
pub mod collapse;
pub mod lattice;
pub mod zariski;
pub mod extensions;

pub use error::{Error, Result};
pub use poly::Field;
pub use ring::{Elem, Ring, RingDescriptor};
