//! Exact computations for involutive knot Floer local equivalence over F2.

pub mod algebra;
pub mod bordered;
pub mod complex;
pub mod involutive;
pub mod local_order;
pub mod morphism;
pub mod oracle;
pub mod standard;
