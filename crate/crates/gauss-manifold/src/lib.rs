//! Text format, command line and exports for Gauss diagrams of
//! 3-manifolds, on top of [`gauss_manifold_core`].

pub mod cli;
pub mod corpus;
pub mod export;
pub mod format;
pub mod script;

pub use format::{parse, serialize, ParseError, ParseErrorKind};
pub use script::{format_script, parse_move, parse_script, ScriptError};
