//! Library side of the `reparam` command-line tool: the JSON document format,
//! SVG rendering and the subcommand dispatcher.

pub mod commands;
pub mod document;
pub mod render;

pub use commands::run;
pub use document::{parse, serialize, DocError, Document};
pub use render::{render, Unrenderable};
