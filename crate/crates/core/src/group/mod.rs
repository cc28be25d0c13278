//! Finitely presented groups: words, presentations, enumeration and oracles.

pub mod enumerate;
pub mod mihailova;
pub mod normalize;
pub mod oracle;
pub mod presentation;
pub mod snf;
pub mod tietze;
pub mod word;

pub use enumerate::{coset_enumerate, enumerate_finite, CayleyTable, CosetTable, Enumeration};
pub use mihailova::{mihailova, Mihailova};
pub use normalize::{normalize_presentation, NormalizedPresentation};
pub use oracle::{GroupOracle, OracleKind, Strategy, WordProblem};
pub use presentation::GroupPresentation;
pub use snf::{abelian_invariants, AbelianInvariants};
pub use tietze::{eliminate, Reduction};
pub use word::{free_reduce, Letter, Word};
