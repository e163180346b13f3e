//! Proof system for verifiable inference over quantized tensor programs:
//! sumcheck arguments for arithmetic tensor ops, a parallel lookup argument
//! for non-arithmetic ops, a dedicated protocol for fixed-point attention
//! softmax, and Hyrax-style Pedersen commitments tying everything to the
//! committed model weights.

pub mod codec;
pub mod error;
pub mod field;
pub mod group;
pub mod lookup;
pub mod matmul;
pub mod mle;
pub mod model;
pub mod nonlinear;
pub mod oracle;
pub mod pedersen;
pub mod pipeline;
pub mod sumcheck;
pub mod tensor;
pub mod transcript;
pub mod zkattn;

pub use error::{Result, ZkError};
pub use field::{batch_inverse, F61, FieldElement, Fr255};
pub use group::{group_msm, AddGroup61, GroupElement, Ristretto};
pub use tensor::{QTensor, Tensor};
pub use transcript::Transcript;

/// The default (security-relevant) field and group.
pub type DefaultField = Fr255;
pub type DefaultGroup = Ristretto;
