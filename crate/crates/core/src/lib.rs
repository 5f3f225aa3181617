//! Exact-arithmetic toolkit for rank-two toric scrolls, their 2-ray games,
//! and the geography of del Pezzo fibrations `X ∈ |3M + nL|` in `F(0,a,b,c)`.

pub mod chow;
pub mod cli;
pub mod detcat;
pub mod geography;
pub mod links;
pub mod newton;
pub mod scroll;

pub use geography::FamilyParams;
pub use scroll::{BasisChange, DivClass, StandardScroll, WeightMatrix};
