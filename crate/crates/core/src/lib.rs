pub mod acceptance;
pub mod diagram;
pub mod drinfeld;
pub mod error;
pub mod gl_module;
pub mod gln_oracle;
pub mod linalg;
pub mod modular_weyl;
pub mod partition;
pub mod scalars;
pub mod walled_brauer;
pub mod yangian;

pub use error::{Error, Result};
