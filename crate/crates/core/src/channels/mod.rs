//! Positive and completely positive maps between matrix algebras.
//!
//! A [`KrausChannel`] stores `V_j` of shape `in_dim × out_dim` and acts as
//! `X ↦ Σ V_j* X V_j`; its adjoint is `Y ↦ Σ V_j Y V_j*`. Maps that are not
//! CP (the transpose and friends) are [`LinearMatrixMap`]s, stored by their
//! column-stacking matrix.

mod choi;
mod embed;
mod kraus;
mod map;
mod named;
mod stinespring;

pub use choi::{choi, is_k_positive, kraus_from_choi, ChoiMatrix, KPositivity, PositivityMode};
pub use embed::{block_embed, block_embed_channel, corner, corner_channel, corner_embed, uhlmann_unitaries};
pub use kraus::{ChannelJson, KrausChannel};
pub use map::{LinearMatrixMap, MapTag};
pub use named::{full_depolarizer, named_map, sample_channel, smooth, ChannelKind, NamedMap};
pub use stinespring::{stinespring_factorize, StinespringFactorization};
