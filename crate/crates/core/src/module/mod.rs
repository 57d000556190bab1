//! Finitely presented modules over a quotient ring.

pub mod fpmodule;
pub mod resolution;

pub use fpmodule::{FpModule, Length, ModuleMorphism, Pruned};
pub use resolution::{
    depth, ext_module, ext_vanishing_dimension, free_resolution, lift_through, projective_dimension, ring_depth,
    syzygy_module, ExtVanishing, LiftOutcome, ProjDim, Resolution,
};
