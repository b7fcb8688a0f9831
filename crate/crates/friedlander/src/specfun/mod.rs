//! Airy special functions, Airy zeros and the spectral phase L(ω).

mod airy;
mod phase;
mod zeros;

pub use airy::{a_minus, a_plus, ai, ai_deriv};
pub(crate) use airy::ai_unchecked;
pub use phase::{b_phase, b_phase_deriv, big_l, l_prime, l_value, B1};
pub use zeros::{airy_zeros, AiryTable};
