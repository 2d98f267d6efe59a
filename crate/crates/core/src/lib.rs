pub mod catalog;
pub mod cli;
pub mod cyclotomic;
pub mod duality;
pub mod geometry;
pub mod laurent;
pub mod monodromy;
