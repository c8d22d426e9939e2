pub mod cobar;
pub mod dual;
pub mod error;
pub mod cli;
pub mod exact;
pub mod series;
pub mod suite;
pub mod linalg;
pub mod opoly;
pub mod presets;
pub mod rewrite;
pub mod tree;
pub mod veronese;

pub use error::{Error, Result};
pub use exact::Rational;
