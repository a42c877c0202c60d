//! Λ, the isomorphism Φ, the pairing Ψ, the comparison with Θ, annihilator
//! duality, and the level-wise maps used for the unrestricted statement.

mod annihilator;
mod lambda;
mod maps;
mod truncated;

pub use annihilator::{annihilator, annihilator_of, kernel_duality_check, reverse_twist, AnnihilatorOf, IdealBasis};
pub use lambda::{lambda, lambda_character_check, lambda_omega_check, lambda_level_coefficient, level_top, LambdaWindow};
pub use maps::{comparison_check, phi, phi_check, psi, psi_check, psi_normalization, comparison_sign, phi_psi_composite, theta, theta_check, Duality};
pub use truncated::{
    complementary_monomial, dual_mul, iota_compat_check, level_eta, level_eta_block, phi_r_balance_check,
    phi_r_equivariance_report, phi_r_eval, phi_r_eval_sample, phi_r_injectivity_check, random_induced_sample,
    DualElement, EquivarianceReport, InducedSample,
};
