//! Every chapter of the guide in `book/src` is included below as module
//! documentation, so `cargo test` runs its code blocks as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/gaussian-integers.md")]
pub mod gaussian_integers {}
#[doc = include_str!("../../../book/src/grossencharacter.md")]
pub mod grossencharacter {}
#[doc = include_str!("../../../book/src/periods.md")]
pub mod periods {}
#[doc = include_str!("../../../book/src/minimal-polynomial.md")]
pub mod minimal_polynomial {}
#[doc = include_str!("../../../book/src/recurrences.md")]
pub mod recurrences {}
#[doc = include_str!("../../../book/src/residues.md")]
pub mod residues {}
#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}
#[doc = include_str!("../../../book/src/divisibility.md")]
pub mod divisibility {}
#[doc = include_str!("../../../book/src/command-line.md")]
pub mod command_line {}
