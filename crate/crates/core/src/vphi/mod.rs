//! The groups `V_φ(G)` and the labeled Thompson groupoid.
//!
//! Composition is a right action: `(w)(a·b) = ((w)a)b`.

mod context;
mod element;
mod maps;

pub use context::Context;
pub use element::{label_image, GroupoidElement, VPhiElement, DEFAULT_IMAGE_BUDGET};
pub use maps::{
    evaluate_generation_word, generation_word, in_f, in_label_kernel, in_t, iota, lambda_u, path_completion, rho,
    v_functor, v_strip, GeneratorFactor, GroupHom,
};
