//! The cluster cipher: message encoding, keys, encryption and decryption,
//! and the ciphertext wire format.

mod alphabet;
mod cipher;
mod key;
mod wire;

use thiserror::Error;

use crate::cluster::ClusterError;
use crate::fields::FieldError;
use crate::symbolic::SymbolicError;

pub use alphabet::Alphabet;
pub use cipher::{CiphertextSeed, Decoded, SystemParams};
pub use key::{keygen, KeyViolation, SecretKey};
pub use wire::{deserialize, deserialize_params, serialize, serialize_params, WIRE_VERSION};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CryptoError {
    #[error("the message must be nonzero")]
    ZeroMessage,
    #[error("symbol {0:?} is not in the alphabet")]
    UnknownSymbol(char),
    #[error("invalid key: {}", join(.0))]
    InvalidKey(Vec<KeyViolation>),
    #[error("key generation infeasible: {0}")]
    Infeasible(String),
    #[error("encryption failed: a cluster value vanished at step {step} (vertex {vertex}); generate a fresh key")]
    EncryptionFailed { step: usize, vertex: usize },
    #[error("decryption failed: a cluster value vanished at step {step} (vertex {vertex})")]
    DecryptionFailed { step: usize, vertex: usize },
    #[error("ciphertext is corrupt or the key is wrong: {0}")]
    CorruptOrWrongKey(String),
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("parameter mismatch: {0}")]
    ParamsMismatch(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error("reference path: {0}")]
    Symbolic(#[from] SymbolicError),
}

fn join(v: &[KeyViolation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}
