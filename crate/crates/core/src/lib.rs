pub mod algebra;
pub mod derivative;
pub mod json;
pub mod lorentz;
pub mod matrix;
pub mod scalar;
pub mod syntax;
pub mod verify;
pub mod waves;
