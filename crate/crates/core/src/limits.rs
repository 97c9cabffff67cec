use serde::{Deserialize, Serialize};

/// Search and enumeration budgets.
///
/// Defaults can be overridden with `DIGEO_SEARCH_NODES` and
/// `DIGEO_GROUP_ELEMENTS`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Backtracking nodes allowed in one automorphism or isomorphism search.
    pub search_nodes: u64,
    /// Group elements that may be enumerated for conjugacy-class sweeps.
    pub group_elements: u64,
    /// Largest abstract group whose automorphisms are enumerated.
    pub aut_table_order: usize,
    /// Group tables up to this order get a full associativity check.
    pub assoc_full_order: usize,
}

pub const DEFAULT_SEARCH_NODES: u64 = 20_000_000;
pub const DEFAULT_GROUP_ELEMENTS: u64 = 500_000;

impl Default for Limits {
    fn default() -> Self {
        fn env(name: &str) -> Option<u64> {
            std::env::var(name).ok()?.trim().parse().ok()
        }
        Limits {
            search_nodes: env("DIGEO_SEARCH_NODES").unwrap_or(DEFAULT_SEARCH_NODES),
            group_elements: env("DIGEO_GROUP_ELEMENTS").unwrap_or(DEFAULT_GROUP_ELEMENTS),
            aut_table_order: 64,
            assoc_full_order: 256,
        }
    }
}
