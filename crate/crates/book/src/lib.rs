//! The guide in `book/`, compiled so that its snippets run under
//! `cargo test --doc`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/padic.md")]
pub mod padic {}
#[doc = include_str!("../../../book/src/fixtures.md")]
pub mod fixtures {}
#[doc = include_str!("../../../book/src/regulators.md")]
pub mod regulators {}
#[doc = include_str!("../../../book/src/invariants.md")]
pub mod invariants {}
#[doc = include_str!("../../../book/src/scan.md")]
pub mod scan {}
#[doc = include_str!("../../../book/src/probe.md")]
pub mod probe {}
#[doc = include_str!("../../../book/src/theta.md")]
pub mod theta {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
