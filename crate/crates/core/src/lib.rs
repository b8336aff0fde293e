//! Classical and quantum Jensen divergences of order α, with tools to
//! certify when their square roots embed isometrically in Hilbert space and
//! to check their bounds against total variation and trace distance.
//!
//! ```
//! use jdiv::{jd_alpha, Alpha, Distribution};
//!
//! let p = Distribution::new(vec![1.0, 0.0]).unwrap();
//! let q = Distribution::new(vec![0.0, 1.0]).unwrap();
//! let jd = jd_alpha(&p, &q, Alpha::SHANNON).unwrap();
//! assert!((jd.value - std::f64::consts::LN_2).abs() < 1e-15);
//! ```

pub mod bounds;
pub mod classical;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod io;
pub mod jensen;
pub mod quantum;
pub mod random;

pub use classical::{Alpha, Distribution};
pub use error::{Error, Result};
pub use geometry::{DistanceMatrix, Embedding, NegativeTypeReport};
pub use jensen::{
    jd_alpha, jd_alpha_general, jd_general, qjd_alpha, qjd_alpha_general, qjd_general,
    ClassicalFamily, DivergenceResult, Family, QuantumFamily, WeightedFamily,
};
pub use quantum::DensityMatrix;
