//! Spanning trees that avoid small degrees: exact search, the
//! minimum-degree and `sigma_2` constructions, graph families and the audit
//! sweeps that tie them together.

pub mod audit;
pub mod families;
pub mod graph;
pub mod io;
pub mod mindeg;
pub mod sigma2;
pub mod solver;
pub mod tree;

pub use families::{generate, recognize_ab, recognize_dn, AbMember, FamilyError, FamilySpec};
pub use graph::{build_graph, Edge, Graph, GraphBuilder, GraphError, Sigma2, VertexId};
pub use io::{Format, IoError};
pub use mindeg::{find_2k_st_mindeg, MindegError, MindegRun, Thresholds};
pub use sigma2::{find_hist_sigma2, Construction, HistOutcome, NoHistReason, Sigma2Error};
pub use solver::{solve_2k_st, SearchBudget, SearchVerdict};
pub use tree::{DegreeClassVector, TreeEdgeSet, TreeError};
