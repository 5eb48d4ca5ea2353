//! Linear and alinear quasigroups over finite groups.
//!
//! The crate builds finite groups as explicit Cayley tables, enumerates
//! their automorphisms and anti-automorphisms, constructs quasigroups from
//! the six linearity-class forms, computes parastrophes both generically
//! (from the table) and in closed form (from the components), and decides
//! orthogonality two independent ways: by brute-force pair scanning and by
//! a catalog of morphism-expression criteria. Campaigns cross-validate the
//! two paths exhaustively.
//!
//! Start with the `examples/` directory; each example is a runnable tour of
//! one capability. The `quasilin` binary exposes the same operations as
//! subcommands for batch use.

pub mod campaign;
pub mod expr;
pub mod form;
pub mod group;
pub mod morphism;
pub mod ortho;
pub mod report;
pub mod sweep;

pub use expr::{EvalError, EvalScratch, MapExpr};
pub use form::{
    isotopy_shift, parastrophe_form, parastrophe_table, ConstantPlacement, FormClass, FormError,
    ParastropheLabel, Quasigroup, QuasigroupForm,
};
pub use group::{FiniteGroup, GroupError};
pub use morphism::{
    enumerate_antiautomorphisms, enumerate_automorphisms, inner_automorphisms, is_antiautomorphism,
    is_automorphism, Morphism, MorphismError, MorphismTags,
};
pub use ortho::{
    criterion_exprs, orthogonal_bruteforce, orthogonal_by_criterion, parastrophe_orthogonality,
    parastrophe_orthogonality_checked, CriterionId, OrthoError, OrthogonalityVerdict,
    VerdictMethod, Witness,
};
