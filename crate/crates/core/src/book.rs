// The book chapters, compiled as doctests so the snippets stay in sync
// with the library.

#[doc = include_str!("../../../book/src/introduction.md")]
mod introduction {}
#[doc = include_str!("../../../book/src/model.md")]
mod model {}
#[doc = include_str!("../../../book/src/slope.md")]
mod slope {}
#[doc = include_str!("../../../book/src/classification.md")]
mod classification {}
#[doc = include_str!("../../../book/src/surface.md")]
mod surface {}
#[doc = include_str!("../../../book/src/evolution.md")]
mod evolution {}
#[doc = include_str!("../../../book/src/cli.md")]
mod cli {}
