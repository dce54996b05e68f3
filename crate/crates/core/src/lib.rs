pub mod exactla;
pub mod polytope;
pub mod fan;
pub mod polyring;
pub mod symmetry;
pub mod embedding;
pub mod deformation;

