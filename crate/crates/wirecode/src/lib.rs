//! File formats, JSON and DOT export, and the `wirecode` command-line tool
//! on top of [`wirecode_core`].

pub mod cli;
pub mod dot;
pub mod io;
pub mod model;
