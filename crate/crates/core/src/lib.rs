//! Gauss diagrams of 3-manifolds.
//!
//! A diagram is two families of oriented circles joined by signed chords.
//! From it this crate traces the boundary cycles of the associated ribbon
//! surface, computes the surface genus and the boundary genera of the two
//! compression bodies, applies the generating moves with color bookkeeping,
//! and derives fundamental-group presentations and first homology.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod builtin;
pub mod diagram;
pub mod moves;
pub mod topology;
pub mod tracing;

mod util;

pub use algebra::{
    h1, h1_normalized, intersection_matrix, is_homology_sphere, pi1_closed, pi1_general,
    smith_normal_form, AlgebraError, HomologyGroup, IntMatrix, Letter, Presentation, SmithForm,
};
pub use diagram::{
    canonicalize, canonicalize_decorated, validate, ArcId, ArcSide, ChordId, CircleId, ColorId,
    Decoration, DiagramError, Family, GaussDiagram, Side, Sign, ValidationReport, Violation,
};
pub use moves::{
    apply_move, apply_script, eps_via_hb, inverse_spec, normalize_colors, MoveError, MoveSpec,
    RCase, Slide, SlideInv,
};
pub use topology::{
    boundary_genera, boundary_graphs, color_excess, genus, r_connected, reducibility_hint,
    BoundaryGraph, BoundaryReport, ReducibilityHint, TopologyError, Verdict,
};
pub use tracing::{
    build_ribbon_map, check_chord_color_equalities, infer_edge_colorings, trace_cycles,
    CrossingFrame, CycleSet, RibbonMap,
};
