#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x < y)` deliberately rejects NaN

pub mod cli;
pub mod error;
pub mod export;
pub mod geodesics;
pub mod geom;
pub mod measures;
pub mod metric;
pub mod quadrature;
pub mod spray;
pub mod surfaces;

pub use error::{Error, Result};
pub use geom::{Point2, Sym2, Vec2};
