//! The multimodal problem generator.
//!
//! An instance is `P` distinct random peaks of length `L`, each with a
//! height. A string is scored against its nearest peak in Hamming space:
//! `f(x) = (L - d) / L * height`, where ties on distance go to the higher
//! peak and, when heights tie too, to the lower peak index.

mod bitstring;
mod format;
mod instance;

pub use bitstring::{hamming, BitString};
pub use format::{parse_instance, serialize_instance};
pub use instance::{
    assign_heights, generate_instance, EvalResult, HeightScheme, ProblemInstance, SuccessRule,
    MAX_DRAWS_PER_PEAK,
};
