use serde::{Deserialize, Serialize};

/// Default cap on the number of vertices materialized in one ball.
pub const DEFAULT_MAX_BALL: usize = 2_000_000;
/// Default cap on the order of a permutation group enumerated element by element.
pub const DEFAULT_MAX_GROUP_ORDER: usize = 1_000_000;

/// Resource bounds shared by every operation that materializes something finite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_ball: usize,
    pub max_group_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_ball: DEFAULT_MAX_BALL,
            max_group_order: DEFAULT_MAX_GROUP_ORDER,
        }
    }
}
