//! Deterministic simulation of two-agent rendezvous with detection on
//! anonymous port-labeled graphs under beeping communication.
//!
//! The crate is organized bottom-up:
//!
//! - [`graph`]: port-labeled graphs, canonical families, exhaustive
//!   enumeration at desk scale, and a text format.
//! - [`uxs`]: universal exploration sequences — mining, certification against
//!   the full enumeration, a cache file format, and the induced walks.
//! - [`walks`]: the per-round action streams agents execute — label
//!   transformations, the label-keyed meeting walk, and its beeping wrappers.
//! - [`sim`]: the synchronous round engine with local/global beep audibility,
//!   energy accounting, declaration checking, and trace recording.
//! - [`protocols`]: the rendezvous-with-detection protocols as reactive agent
//!   programs, plus the move-pattern collision finder used to demonstrate the
//!   energy/time trade-off.
//!
//! Everything is deterministic: identical inputs produce bit-identical traces
//! and identical mined sequences. There is no randomness anywhere in the
//! crate; all tie-breaking is lexicographic.

pub mod graph;
pub mod protocols;
pub mod sim;
pub mod uxs;
pub mod walks;

pub use graph::{NodeId, Port, PortGraph};
