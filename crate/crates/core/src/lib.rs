//! Hardy and Bergman quasi-norms of analytic functions on the unit disk.
//!
//! Expressions in `z` are parsed by [`expr`], integrated by the adaptive
//! quadrature in [`quad`], turned into norms by [`hardy`] and [`bergman`], and
//! compared against triangle-inequality claims with error-aware verdicts in
//! [`verify`]. [`cli`] is the command-line front end.
//!
//! ```
//! use disknorm::expr::{parse, ParamEnv};
//! use disknorm::hardy::hardy_norm;
//! use disknorm::quad::QuadConfig;
//!
//! let f = parse("(1+z)/(1-z)").unwrap();
//! let n = hardy_norm(&f, 0.5, &ParamEnv::new(), &QuadConfig::default()).unwrap();
//! assert!((n.value_p - std::f64::consts::SQRT_2).abs() < 1e-8);
//! ```

pub mod bergman;
pub mod cli;
pub mod expr;
pub mod hardy;
pub mod norm;
pub mod quad;
pub mod verify;
