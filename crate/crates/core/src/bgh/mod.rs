//! The band `B_{G,H}` built from a group presentation and a subgroup, the
//! action of its top idempotents on Rees triples, and witness chains.

pub mod act;
pub mod chain;
pub mod construct;

pub use act::BghContext;
pub use chain::{Approx, ChainStep, ChainVerifier, MembershipDemo, WitnessChain};
pub use construct::{build_bgh, build_t, build_w, compose, BghBand, LgKind, Provenance, Side, Tag, Transform, BGH_COVERS};
