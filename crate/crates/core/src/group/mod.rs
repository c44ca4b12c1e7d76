//! Elements of `Γ_A` as prefix-exchange tables and the group operations on
//! them.

mod ops;
mod support;
mod table;

pub use ops::{Order, DEFAULT_MAX_ENTRIES};
pub use support::{CocycleTable, FixedSet};
pub use table::TableMap;
