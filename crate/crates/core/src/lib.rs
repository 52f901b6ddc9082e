#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod bd;
pub mod bialgebra;
pub mod chevalley;
pub mod cli;
pub mod descent;
pub mod error;
pub mod linalg;
pub mod rootsys;
pub mod scalars;
pub mod tensors;
pub mod twist;
