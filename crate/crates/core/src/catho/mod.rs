//! Directed homotopy of small categories: explicit finite categories,
//! functors, natural transformations, zig-zag homotopy, step-counted
//! contractibility and pushouts of presentations.

mod category;
mod functor;
mod homotopy;
mod pushout;
pub mod random;

pub use category::{identity_name, Arrow, CategoryBuilder, FinCategory, LawReport};
pub use functor::{
    all_functors, cancellable_arrows, find_isomorphism, functor_file_refs, is_epi, is_mono, FunctorMap,
    SearchGuard,
};
pub use homotopy::{
    arrow_category, contractible_in_steps, contraction_steps, cylinder, dhomotopic_functors, dhomotopy_equivalent,
    find_dhomotopy_equivalence, immediate_retract, is_future_contractible, is_past_contractible, nat_transformations,
    Direction, Equivalence, NatTransf, Retract,
};
pub use pushout::{pushout, realize_presentation, Pushout, Realization};
