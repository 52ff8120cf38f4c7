//! Exact enumeration of corner statistics on bargraphs and set partitions.
//!
//! Three independent routes compute the same numbers:
//!
//! * [`census`]: brute-force enumeration and tallying,
//! * [`gf`]: generating functions solved order by order from their functional
//!   equations, and the closed forms assembled from chain sums,
//! * printed closed forms, evaluated literally as verification targets.
//!
//! [`verify`] cross-checks the routes and classifies each printed formula.

pub mod algebra;
pub mod bargraph;
pub mod census;
pub mod error;
pub mod gf;
pub mod verify;

pub use algebra::{Jet, Rational, TruncatedSeries};
pub use bargraph::{Bargraph, Corner, CornerKind, SetPartitionWord};
pub use census::{CensusRecord, CensusTable, StirlingBellTable};
pub use error::{Error, Result};
pub use gf::Marking;
