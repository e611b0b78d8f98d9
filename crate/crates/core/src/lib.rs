//! Roots of Dehn twists about nonseparating curves on closed orientable
//! surfaces.
//!
//! Conjugacy classes of degree-`n` roots of the twist `t_{g+1}` correspond to
//! *data sets* `(n, g0, (a,b); (c1,n1), ..., (cm,nm))` of genus `g`; see
//! [`dataset`] for the defining conditions. This crate validates data sets,
//! enumerates them exhaustively, and computes the named families (triangular
//! sets, Margalit-Schleimer roots, `(d,e)`-roots) built from them.
//!
//! All roots are orientation-preserving: orientation-reversing roots of a
//! nontrivial twist power do not exist, so the enumeration is complete up to
//! conjugacy in the full homeomorphism group.

pub mod dataset;
pub mod enumeration;
pub mod error;
pub mod fractional;
pub mod numtheory;
pub mod special;

pub use dataset::{Condition, Cone, DataSet, FractionalDataSet, ValidationReport, Violation};
pub use enumeration::{
    datasets, genus_set, has_root, oracle_datasets, primary_datasets, root_degrees, EnumQuery,
};
pub use error::{Error, Result};
pub use special::{classify, RootClass, Tag};
