//! Hecke-type operators: T̃ₙ,ₘ on period vectors and Ĥₙ,ₘ as coset sums.

pub mod algebra;
pub mod cosetsum;
pub mod lift;
pub mod old;

pub use algebra::{t_relation_sides, verify_t_relation, LowerCoefficient, TRelationReport};
pub use cosetsum::{
    coset_sum_product, h_hat_coset_sum, h_hat_raw, h_hat_raw_with, relation_sides, x_star_coset_sum, x_star_product,
    x_star_product_expected, CosetSum, RawOperator, Relation, RelationSides,
};
pub use lift::{
    detect_eigenvalue, inflate, l_index, l_index_scan, lift_period, project, t_tilde_apply, LiftRow, LiftStep,
    LiftTable,
};
pub use old::{induce_old_vector, sigma_phi};
