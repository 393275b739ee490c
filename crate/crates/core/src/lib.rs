//! Quillen cohomology of finite categories and finite-dimensional algebras.

pub mod abmod;
pub mod catcoh;
pub mod fincat;
pub mod hochschild;
pub mod examples;
