pub mod expr;
pub mod cartanframe;
pub mod catalog;
pub mod gl2;
pub mod invariants;
pub mod jetode;
pub mod tensoralg;
pub mod parse;
pub mod scalar;
