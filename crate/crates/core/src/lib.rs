pub mod analysis;
pub mod cluster;
pub mod crypto;
pub mod fields;
pub mod symbolic;
