//! Finite combinatorial models of groupoid constructions from covering theory.
//!
//! The crate works with explicitly tabulated groupoids whose stars carry a
//! graph (the combinatorial stand-in for a star topology). On top of that it
//! builds:
//!
//! * group-groupoids, validated against the interchange law
//!   `(gh)∘(kl) = (g∘k)(h∘l)`;
//! * the monodromy groupoid `Mon(G)`, whose stars are the trees of reduced
//!   edge paths (the universal covers of the star graphs);
//! * the presented groupoid `M(G,W) = F(W)/N` with an exact equality test
//!   obtained by mapping words into `Mon(G)`;
//! * the monodromy principle, globalizing local morphisms `W → H`;
//! * admissible local sections, their inverse semigroup, and the holonomy
//!   groupoid over a discrete object space.
//!
//! The `ggd` binary reads the line-oriented GGD text format (see [`ggd`])
//! and exposes the checks from the command line.

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod ggd;
pub mod group_groupoid;
pub mod groupoid;
pub mod monodromy;
pub mod presentation;
pub mod principle;
pub mod report;
pub mod sections;
pub mod star;

pub use error::{Error, Result};
pub use group_groupoid::{GroupGroupoid, GroupStructure};
pub use groupoid::{Groupoid, GroupoidBuilder, Mor, Obj, Star};
pub use monodromy::{MonMor, Monodromy, StarMorphism};
pub use presentation::{Presentation, WSet, Word};
pub use principle::{Extension, LocalMorphism, TieBreak};
pub use report::{Report, Rule, Violation};
pub use sections::{Germ, Holonomy, Section};
pub use star::{EdgePath, StarGraph, StarredGroupoid};
