pub mod leaf;
pub mod numkit;
pub mod pathint;
pub mod repq;
pub mod rmatrix;

pub use numkit::{BlockOp2, Complex, DenseMatrix, Extended, NumError, Real};
