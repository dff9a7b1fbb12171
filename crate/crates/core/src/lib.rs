//! Exact k-bonacci arithmetic over all integer indices.
//!
//! * [`sequence`]: k-bonacci and Lucas numbers, forward and backward, the
//!   closed-form bands and the backward block structure.
//! * [`matrix`]: dense big-integer square matrices and block grids.
//! * [`kbx`]: the order-`k^r` k-bonacci matrices, Lucas matrices, the block
//!   companion `Q` and the `F[1] · Q^(j-1)` evaluation path.
//! * [`identities`]: one checker per identity, each evaluating both sides
//!   exactly over a parameter grid and producing a JSON-serializable report.
//! * [`bench`] and [`cli`]: the iterative vs. power-path benchmark and the
//!   command-line front end behind the `kbonacci` binary.
//!
//! ```
//! use kbonacci::{kbx, sequence::Order};
//!
//! let k = Order::new(3).unwrap();
//! assert_eq!(kbx::fast_term(k, 6).unwrap(), 7.into());
//! assert_eq!(kbonacci::sequence::term(3, -5).unwrap(), (-3).into());
//! ```

pub mod bench;
pub mod cli;
pub mod error;
pub mod identities;
pub mod kbx;
pub mod matrix;
pub mod sequence;
mod serialize;

pub use error::{Error, Result};
pub use kbx::{KbonacciMatrices, LucasMatrices, MatrixSpec};
pub use matrix::{BlockGrid, SquareMatrix};
pub use num_bigint::BigInt;
pub use sequence::{KbonacciSequence, LucasSequence, Order};
