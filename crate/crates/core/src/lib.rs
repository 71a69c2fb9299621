//! Exact divisor arithmetic, cyclic quotient singularities, towers of cyclic
//! covers over P2 and P1xP1, and hyperbolicity certificates for their top floors.

pub mod certify;
pub mod cuboid;
pub mod error;
pub mod genfam;
pub mod geometry;
pub mod hjsing;
pub mod invariants;
pub mod kummer;
pub mod lattice;
pub mod omega;
pub mod presets;
pub mod rational;
pub mod spec_io;
pub mod tower;

pub use error::{Error, Result, ValidationError};
pub use lattice::{BaseSurface, DivClass};
pub use rational::{Gq, Rational};
pub use tower::{build_tower, Tower, TowerSpec};
