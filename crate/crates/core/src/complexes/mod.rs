//! Matching complexes, descending links of the labeled Stein–Farley
//! complex, and reduced integer homology.

mod dlink;
mod homology;
mod matching;
mod simplicial;
mod smith;

pub use dlink::{
    check_complete_join, complete_join_report, connectivity_bound, connectivity_check, connectivity_of,
    dlink_complex, forgetful_pi, CompleteJoinReport, ConnectivityReport, DlinkComplex, DlinkVertexKey,
    DEFAULT_ENUM_CAP,
};
pub use homology::{homology, homology_in, HomologyResult};
pub use matching::{matching_complex, pairs};
pub use simplicial::SimplicialComplex;
pub use smith::{smith_normal_form, SmithForm, SmithScalar};
