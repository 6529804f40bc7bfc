//! squintlab: a wideband ISAC array-processing simulator.
//!
//! Models beam-squint in hybrid-beamforming transceivers and compares
//! compensation strategies (digital, TTD delay-phase precoding,
//! subcarrier-dependent phase shifters, digital phase correction, beam
//! broadening) across beamforming, channel estimation, DoA estimation,
//! antenna selection and spatial-path index modulation.

pub mod array;
pub mod beamform;
pub mod channel;
pub mod error;
pub mod estimate;
pub mod harness;
pub mod isac;
pub mod linalg;
pub mod squint;

pub use error::{Error, Result};
