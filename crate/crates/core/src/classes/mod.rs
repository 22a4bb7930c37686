//! Positroid orders and transversal presentations.

mod positroid;
mod transversal;

pub use positroid::{
    expansion_positroid_order, is_positroid_order, positroid_search, LinearOrder, PositroidVerdict,
    SEARCH_LIMIT,
};
pub use transversal::{presentation_matroid, rank_one, verify_presentation};
