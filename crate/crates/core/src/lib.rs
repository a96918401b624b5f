//! A small proof-checking kernel for a univalent type theory with explicit,
//! non-cumulative universe levels.
//!
//! Pipeline: [`syntax`] turns `.uv` text into core [`term`]s, [`check`]
//! type checks them bidirectionally using [`nbe`] for definitional
//! equality, and [`corpus`] verifies a manifest of library files.
//!
//! ```
//! use uvkernel::{driver, GlobalEnv, SourceFile};
//!
//! let mut g = GlobalEnv::new();
//! let src = "def id [u] (X : U u) (x : X) : X := x";
//! let outcome = driver::check_source(&mut g, &SourceFile::new("id.uv", src), false);
//! assert!(outcome.ok());
//! assert!(g.contains("id"));
//! ```

pub mod check;
pub mod corpus;
pub mod diag;
pub mod driver;
pub mod env;
pub mod level;
pub mod nbe;
pub mod syntax;
pub mod term;
pub mod value;

pub use diag::{Category, Diagnostic};
pub use env::{GlobalEntry, GlobalEnv};
pub use syntax::SourceFile;
pub use term::Term;

/// Identifiers are shared, immutable strings.
pub type Name = std::rc::Rc<str>;

// The book's snippets run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/language.md")]
    pub struct Language;
    #[doc = include_str!("../../../book/src/levels.md")]
    pub struct Levels;
    #[doc = include_str!("../../../book/src/kernel.md")]
    pub struct Kernel;
    #[doc = include_str!("../../../book/src/diagnostics.md")]
    pub struct Diagnostics;
    #[doc = include_str!("../../../book/src/corpus.md")]
    pub struct Corpus;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
