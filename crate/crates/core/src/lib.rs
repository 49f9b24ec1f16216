pub mod analysis;
pub mod channel;
pub mod construction;
pub mod decoder;
pub mod enumerators;
pub mod error;
pub mod gf2;
pub mod montecarlo;
pub mod par;
pub mod stabilizer;

pub use error::{Error, Result};
