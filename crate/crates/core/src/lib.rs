//! Exact combinatorics of essential simple closed curves on punctured
//! orientable surfaces.
//!
//! Curves are held in normal coordinates on a fixed ideal triangulation.
//! Everything downstream is integer arithmetic: geometric intersection
//! numbers come from a joint minimal-position diagram, distances from
//! breadth-first search over capped vertex universes, and the Farey graph
//! gets its own exact engine. No floating point anywhere.
//!
//! All values are immutable after construction and every operation is a
//! pure function, so the whole crate is safe to drive from parallel
//! sampling campaigns without coordination.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod complex;
pub mod coarse;
pub mod covering;
pub mod curves;
pub mod farey;
pub mod qm;
pub mod surface;

mod diagram;
mod regions;
mod ratio;
mod sampling;

pub use ratio::Ratio;
pub use sampling::SeededRng;
