//! Low-discrepancy sequence generators and a stochastic-computing workbench.
//!
//! The centre is [`p2lsg`]: a Van der Corput generator restricted to
//! power-of-two bases, built from a binary counter whose bit groups are
//! rewired in reverse order. Around it sit the other sequence families
//! ([`sequences`]), comparator-based bit-stream generation ([`bitstream`]),
//! bitwise SC arithmetic ([`ops`]), exhaustive accuracy sweeps ([`bench`])
//! and two image case studies ([`media`]).

pub mod bench;
pub mod bitstream;
pub mod error;
pub mod media;
pub mod ops;
pub mod p2lsg;
pub mod par;
pub mod sequences;

pub use error::{Error, Result};
