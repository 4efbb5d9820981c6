//! Cohen-class time-frequency analysis on finite groups.
//!
//! Signals live on a finite group `G` with its unitary dual `Ĝ` playing the
//! role of frequencies. Distributions are matrix-valued functions on `G×Ĝ`,
//! selected by an ambiguity kernel on `Ĝ×G`. The crate covers the Fourier
//! analysis, the kernel library, quantization of symbols into operators,
//! checkers for the structural properties of a kernel, phase retrieval from
//! Born–Jordan distributions on `ℤ/N`, and the non-periodic limit on `ℤ`.
//!
//! Everything is generic over the real scalar ([`Real`], implemented for
//! `f32` and `f64`); the aliases below fix `f64`.
//!
//! ```
//! use gtfa_core::{build_cyclic, transforms, Signal64};
//!
//! let g = build_cyclic::<f64>(8).unwrap();
//! let u = Signal64::from_fn(&g, |x| num_complex::Complex::new(x as f64, 0.0));
//! let k = transforms::born_jordan_cyclic_kernel(&g).unwrap();
//! let q = transforms::cohen_distribution(&k, &u).unwrap();
//! let margin = q.time_margin();
//! assert!((margin[3].re - 9.0).abs() < 1e-9);
//! ```

pub mod error;
pub mod group;
pub mod harmonic;
pub mod limits;
pub mod linalg;
pub mod properties;
pub mod quantization;
pub mod reconstruct;
pub mod scalar;
pub mod signalio;
pub mod tfplane;
pub mod transforms;

pub use error::{Error, Result, Violation};
pub use group::{build_cyclic, build_dihedral, build_product, load_group_file, FiniteGroup, Group, GroupKind, Irrep, UnitaryDual};
pub use harmonic::{FourierCoefficients, Signal};
pub use linalg::CMatrix;
pub use quantization::GroupOperator;
pub use scalar::Real;
pub use tfplane::{AmbiguityFunction, TFFunction, TimeLagKernel};
pub use transforms::CohenKernel;

pub type Group64 = group::Group<f64>;
pub type Signal64 = harmonic::Signal<f64>;
pub type TFFunction64 = tfplane::TFFunction<f64>;
pub type AmbiguityFunction64 = tfplane::AmbiguityFunction<f64>;
pub type CohenKernel64 = transforms::CohenKernel<f64>;
pub type GroupOperator64 = quantization::GroupOperator<f64>;


pub type Group32 = group::Group<f32>;
pub type Signal32 = harmonic::Signal<f32>;
pub type TFFunction32 = tfplane::TFFunction<f32>;
pub type CohenKernel32 = transforms::CohenKernel<f32>;
