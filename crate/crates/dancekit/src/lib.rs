//! dancekit: an executable model of knot-diagram danceability.
//!
//! A diagram is n-danceable when n dancers can start at n distinct points,
//! all travel in one orientation, jointly trace the whole diagram, and
//! pass every crossing on its under-strand first, with speeds free and
//! pausing allowed. This crate decides feasibility for a given cut set,
//! computes the exact minimal dancer count per diagram, constructs and
//! verifies explicit schedules (including the strand-per-dancer schedule
//! on braid closures), and runs verification reports over knot-table
//! census data.
//!
//! Diagrams enter as Gauss sequences, PD codes or braid words; see
//! [`codecs`] for the text grammars. The engine itself works on the
//! cyclic passage order alone, so abstract (virtual) Gauss sequences are
//! accepted everywhere.
//!
//! With the default `parallel` feature the minimum search and census runs
//! fan out over a rayon pool; disabling default features yields the
//! sequential fallback with identical results.

pub mod braid;
pub mod census;
pub mod choreography;
pub mod codecs;
pub mod diagram;
pub mod engine;
pub mod error;

pub use braid::{braid_closure, braid_permutation, strand_cuts, torus_braid};
pub use choreography::{
    braid_schedule, render_schedule, schedule_from_cuts, verify_schedule, DanceSchedule,
    RenderFormat, ScheduleContext,
};
pub use diagram::{BraidWord, GaussSequence, PdCode, Role, StrandEvent};
pub use engine::{
    is_descending_start, is_feasible, min_dancers, min_dancers_sequential, segments,
    underpass_cuts, CutSet, Feasibility, MinDancers, Orientation, PrecedenceGraph,
};
