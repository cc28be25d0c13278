//! Finite bands and their biordered sets, Green's relations in the free
//! idempotent generated semigroup IG(E), regularity of words, presentations of
//! maximal subgroups, Rees coordinates and the regular word problem, plus the
//! band `B_{G,H}` relating subgroup membership to equality in IG(E).

pub mod action;
pub mod bgh;
pub mod biorder;
pub mod corpus;
pub mod error;
pub mod green;
pub mod group;
pub mod rees;
pub mod regularity;
pub mod schreier;
pub mod table;

pub use action::{action_automaton, ig_green, ActionAutomaton, IgRel};
pub use biorder::{extract_biorder, validate_biorder, Biorder};
pub use error::{Error, Result};
pub use green::{green_data, GreenData};
pub use rees::{rees_context, regular_wp, ReesContext, ReesTriple, RegularWordProblem};
pub use regularity::{Regularity, RegularityCertificate, RegularityChecker};
pub use schreier::{presentation_B, presentation_F, schreier_system, SchreierSystem};
pub use table::{validate_table, MulTable};
