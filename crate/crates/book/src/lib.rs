// mdbook cannot run snippets that depend on a workspace crate, so each
// chapter is included here as a module doc and `cargo test` runs its code
// blocks as doctests. One module per chapter keeps failures traceable to a
// file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/coding.md")]
pub mod coding {}
#[doc = include_str!("../../../book/src/diagonal.md")]
pub mod diagonal {}
#[doc = include_str!("../../../book/src/proofs.md")]
pub mod proofs {}
#[doc = include_str!("../../../book/src/gl.md")]
pub mod gl {}
#[doc = include_str!("../../../book/src/fixpoint.md")]
pub mod fixpoint {}
#[doc = include_str!("../../../book/src/theories.md")]
pub mod theories {}
#[doc = include_str!("../../../book/src/schemes.md")]
pub mod schemes {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
