//! Conformal superalgebras over `k`, base-changed to `S_m`.

pub mod algebra;
pub mod axioms;
pub mod bracket;
pub mod element;
pub mod hat;

pub use algebra::{AlgebraDef, ElementParity, GeneratorInfo, Parity};
pub use axioms::{check_axioms, complete_table_cs4, Axiom, AxiomReport, AxiomVerdict};
pub use bracket::{decorated_bracket, generator_bracket, lambda_bracket, n_product, skew_flip};
pub use element::{ConfElt, GenId, LambdaPoly, TermKey};
pub use hat::{from_hat_basis, to_hat_basis, HatCoords};
