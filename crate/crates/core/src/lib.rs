//! Exact combinatorics of multicurves on the `n`-punctured disk.
//!
//! Curves are stored as cyclic sequences of elementary events (crossings of
//! the vertical reference chords and of the horizontal diameter), always kept
//! in a canonical taut form. On top of that model the crate computes Dynnikov
//! coordinates, loop invariants, geometric intersection numbers, Dehn-twist
//! actions, and the complete-partition analysis that decides whether a family
//! of Dehn twists generates a free group or a free product of abelian groups.

pub mod coords;
pub mod corpus;
pub mod curve;
pub mod disk;
pub mod error;
pub mod family;
pub mod intersect;
pub mod loops;
pub mod partition;
pub mod twist;

mod expand;
mod overlay;
mod scan;
mod tighten;

pub use coords::{DynnikovCoords, ExtendedCoords, IntersectionVector};
pub use curve::{CurveDiagram, Event, Face, MultiCurve, Side};
pub use disk::PuncturedDisk;
pub use error::{Error, Result};
pub use family::FamilyDocument;
pub use intersect::{are_opposite, classify_family, geometric_intersection, CurveFamily, FamilyClass};
pub use loops::{list_of, loop_sign, loops_closed_form, loops_oracle, LoopKind, LoopSet, LoopSymbol};
pub use partition::{
    build_partition, decisive_set, group_structure, opposite_list, ping_pong_audit, x_membership,
    AuditReport, DecisiveSet, GroupStructure, Partition, PartitionOutcome,
};
pub use twist::{apply_word, check_prop1, dehn_twist, free_reduce, Prop1Report, TwistWord};
