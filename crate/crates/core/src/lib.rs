pub mod semiring;
pub mod graphs;
pub mod expr;
pub mod params;
pub mod hankel;
pub mod engine;
pub mod checks;
pub mod cli;
