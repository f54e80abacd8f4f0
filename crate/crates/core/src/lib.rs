//! Euler characteristics and motives of punctual nested Hilbert and Quot
//! schemes of points on surfaces, computed with exact integer arithmetic.

pub mod error;
pub mod flag;
pub mod globalize;
pub mod motive;
pub mod partition;
pub mod quot;
pub mod series;
pub mod shapes;
pub mod verify;

pub use error::{Error, Result};
