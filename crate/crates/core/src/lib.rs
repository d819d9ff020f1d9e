//! Finite loops as Cayley tables, with the machinery for semi-automorphisms
//! and the cyclic extensions of Moufang loops they induce.
//!
//! * [`table`], [`props`], [`subloop`], [`iso`]: loop representation and structure.
//! * [`morphisms`]: bijections, their classification and the semi-automorphism group.
//! * [`extension`]: the twisted semidirect product and its verifiers.
//! * [`catalog`]: named loops and mappings.
//! * [`census`]: extensions of small bases by all their semi-automorphisms.
//! * [`io`], [`cli`]: file formats and the command-line front end.

pub mod catalog;
pub mod census;
pub mod cli;
pub mod error;
pub mod extension;
pub mod io;
pub mod iso;
pub mod morphisms;
pub mod props;
pub mod scan;
pub mod subloop;
pub mod table;

pub use error::LoopError;
pub use extension::{ExtElement, ExtensionSpec};
pub use morphisms::{MapClass, Mapping};
pub use subloop::SubsetHandle;
pub use table::{CayleyTable, Elem, LoopOps};
