//! Exact verification engine for twists of Grassmannian cluster variables,
//! built on plabic graphs, dimer partition functions and SL3 webs.

pub mod algebra;
pub mod laurent;
pub mod dimer;
pub mod plabic;
pub mod harness;
pub mod quiver;
pub mod web;
