//! Gröbner bases and the ideal operations built on them.

mod buchberger;
mod ideal;
mod order;

pub use buchberger::{groebner_basis, is_groebner_basis, normal_form, Budget};
pub use ideal::{min_hitting_set, DepthValue, GroebnerBasis, Ideal};
pub use order::MonomialOrder;
