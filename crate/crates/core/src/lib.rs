//! Model checking, uniform plan synthesis and proof checking for the ternary
//! knowing-how logic with the modality `Khm(pre, mid, goal)`.

pub mod checker;
pub mod cli;
pub mod model;
pub mod proofs;
pub mod syntax;
