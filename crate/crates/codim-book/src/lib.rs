//! Compiles and runs every Rust snippet in the guide under `book/`.
//!
//! mdbook's own `mdbook test` cannot inject crate dependencies, so each
//! chapter is included here as module documentation and `cargo test
//! --doc -p codim-book` executes the code fences with `codim` available.
//! One module per chapter keeps a failing snippet attributable to its
//! chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/series.md")]
pub mod series {}

#[doc = include_str!("../../../book/src/catalog.md")]
pub mod catalog {}

#[doc = include_str!("../../../book/src/words.md")]
pub mod words {}

#[doc = include_str!("../../../book/src/growth.md")]
pub mod growth {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
