//! Reduction of free complexes with finite-length homology to complexes of
//! finite-length modules of finite projective dimension, and back.

pub mod zigzag;

pub use zigzag::{Arrow, Direction, ZigzagCertificate};
pub mod reduce;

pub use reduce::{
    realize_in_projectives, reduce_object, roundtrip_verify, transport_morphism_step, Reduction, Roundtrip,
    RoundtripReport, TransportReport, TransportStep,
};
