//! Binary words, partition sets and labeled diagrams.

mod diagram;
mod partition;
mod word;

pub use diagram::{Column, LabeledDiagram};
pub use partition::{is_forest_partition, is_partition_set, PartitionSet};
pub use word::{BitWord, EventuallyPeriodicWord, Leaf};
