pub mod error;
pub mod exec;
pub mod gf;
pub mod hamiltonian;
pub mod linalg;
pub mod oa;
pub mod pauli;
pub mod protocols;
pub mod schemes;

pub use error::{Error, Result};
