//! Exact computation on p-adic solenoids.
//!
//! The ambient space is the product of finitely many p-adic fields with the
//! real line. The diagonal image of the S-integers sits inside it as a
//! discrete lattice, and the quotient is a compact connected group: a
//! fractal analogue of the circle. Everything here is exact rational
//! arithmetic; floating point appears only as a reporting convenience.
//!
//! - [`padic`]: rationals, valuations, residues, CRT
//! - [`geometry`]: the ambient product ring, sup metrics, snowflake metrics
//! - [`solenoid`]: canonical fundamental-domain reduction and the quotient metric
//! - [`measure`]: Haar ball measures, scaling factors, dimension, box counting
//! - [`action`]: matrices over the S-integers acting on solenoid tori
//! - [`circle`]: finite-level circle approximations and characters

pub mod action;
pub mod circle;
#[cfg(feature = "cli")]
pub mod cli;
pub mod error;
pub mod geometry;
pub mod measure;
pub mod padic;
pub mod solenoid;

pub use action::{MapClass, SMatrix, TorusPoint};
pub use circle::{Character, CirclePoint, Level, LevelPoint};
pub use error::{Error, Result};
pub use geometry::{Exponents, MetricValue, SPoint};
pub use measure::BoxRegion;
pub use padic::{PrimeSet, Rational, Valuation};
pub use solenoid::SolenoidPoint;
