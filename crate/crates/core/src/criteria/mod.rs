//! Irreducibility calculus with auditable certificates.

pub mod div;
pub mod flat;
pub mod lambda_factor;
pub mod weights;

pub use div::div_j_sigma;
pub use flat::flat_bands;
pub mod cert;
pub mod context;
pub mod engine;
pub mod facts;
mod rules;

pub use cert::{replay, replay_certificate};
pub use context::{Context, Goal, Options, Problem};
pub use engine::{analyze, Analysis, Verdict};
pub use facts::{Axiom, AxiomFace, Claim, Fact, FactStore, Rule, Subject};
pub use rules::Outcome;
