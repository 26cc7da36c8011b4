//! Exact-arithmetic invariants of genus-2 curves, the locus of curves with
//! degree-2 elliptic subfields, automorphism-group classification, and
//! enumeration of branch-cycle tuple classes for covers with automorphisms.
//!
//! Everything runs over arbitrary-precision rationals; no floating point
//! appears anywhere in results.

pub mod autgroup;
pub mod census;
pub mod characters;
pub mod error;
pub mod igusa;
pub mod igusa_recon;
pub mod linalg;
pub mod locus;
pub mod multipoly;
pub mod perm;
pub mod quadring;
pub mod rational;
pub mod search;
pub mod stabchain;
pub mod tuples;
pub mod unipoly;
pub mod verify;

pub use autgroup::{AutGroupType, BranchPoint, BranchSet, PairingCertificate};
pub use error::{Error, Result};
pub use igusa::{AbsoluteInvariants, BinarySextic, IgusaInvariants};
pub use locus::{JPair, UVPoint};
pub use perm::{CycleType, Perm};
pub use rational::{Int, Rational};
pub use tuples::{BranchTuple, CaseId, SymTriple};
