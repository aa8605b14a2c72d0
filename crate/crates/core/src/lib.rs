//! Finite topological spaces as specialization preorders, the lifting
//! property between maps of them, and the separation axioms decided both
//! directly and as lifting properties.
//!
//! Convention throughout: `leq(x, y)` iff `y ∈ cl{x}`. The notation `x>y`
//! therefore says that `y` lies in the closure of `x`. Closed sets are the
//! sets closed under following `leq` forwards, open sets the ones closed
//! under following it backwards.

pub mod axioms;
pub mod census;
pub mod lifting;
pub mod morphism;
pub mod notation;
mod search;
pub mod space;

pub use axioms::{check_axiom_direct, check_axiom_lifting, AxiomError, AxiomId, Verdict};
pub use lifting::{has_lifting, LiftingOutcome, LiftingProblem, Square};
pub use morphism::{compose, enumerate_continuous_maps, ContinuousMap, MapError};
pub use notation::{format_map, format_space, parse_map, parse_space, NotationError};
pub use space::{are_homeomorphic, build_space, FiniteSpace, SpaceError, SubsetMask};
