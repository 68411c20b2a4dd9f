pub mod error;
pub mod formats;
pub mod hinfty;
pub mod hopf;
pub mod htensor;
pub mod interconnect;
pub mod linalg;
pub mod operad;
pub mod perm;
pub mod pseudo;
pub mod scalar;
pub mod suite;

pub use error::{Error, Result};
pub use hopf::{HopfAlgebra, Tensor};
pub use linalg::{LinearMap, SparseVec, Vector};
pub use scalar::{Field, Scalar};
pub use perm::{Perm, SetMap};
