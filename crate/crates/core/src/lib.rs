pub mod basis;
pub mod driver;
pub mod equations;
pub mod error;
pub mod limiter;
pub mod lw_core;
pub mod numflux;
pub mod rk_reference;
pub mod stability;

pub use error::{Error, Result};

/// Guide chapters, compiled so that their snippets run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/basis.md")]
    mod basis {}
    #[doc = include_str!("../../../book/src/lax_wendroff.md")]
    mod lax_wendroff {}
    #[doc = include_str!("../../../book/src/fluxes.md")]
    mod fluxes {}
    #[doc = include_str!("../../../book/src/stability.md")]
    mod stability {}
    #[doc = include_str!("../../../book/src/limiters.md")]
    mod limiters {}
    #[doc = include_str!("../../../book/src/running.md")]
    mod running {}
    #[doc = include_str!("../../../book/src/output.md")]
    mod output {}
    #[doc = include_str!("../../../book/src/validation.md")]
    mod validation {}
}
