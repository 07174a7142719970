//! Sosemanuk, a software-oriented synchronous stream cipher built from a
//! SNOW-style LFSR/FSM pair and SERPENT components.
//!
//! ```
//! use sosemanuk::{CipherKey, Sosemanuk};
//!
//! let key = CipherKey::new(&[0x11; 16]).unwrap();
//! let mut enc = Sosemanuk::new(&key, &[0x22; 16]).unwrap();
//! let ct = enc.process(b"attack at dawn");
//!
//! let mut dec = Sosemanuk::new(&key, &[0x22; 16]).unwrap();
//! assert_eq!(dec.process(&ct), b"attack at dawn");
//! ```
//!
//! Key setup and IV setup are separate: a [`CipherKey`] holds the 25 Serpent24
//! subkeys and can seed any number of [`Sosemanuk`] instances.

pub mod bench;
pub mod cipher;
pub mod cli;
pub mod gf;
pub mod instrument;
pub mod kat;
pub mod keystream;
pub mod serpent;
pub mod unrolled;

pub use cipher::{CipherKey, Sosemanuk, IV_LEN, MAX_KEY_LEN, MIN_KEY_LEN};
pub use gf::AlphaTables;
pub use serpent::{KeySchedule, Quartet, SerpentTaps};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid key length: {len} bytes (expected 16 to 32)")]
    InvalidKey { len: usize },
    #[error("invalid IV length: {len} bytes (expected 16)")]
    InvalidIv { len: usize },
    #[error("value out of domain: {0}")]
    Domain(String),
    #[error("line {line}: {msg}")]
    KatParse { line: usize, msg: String },
}
