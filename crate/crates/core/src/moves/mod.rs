//! The move calculus with color bookkeeping.
//!
//! Every move returns a new diagram and decoration; inputs are untouched.
//! Colors of new cycles are assigned from the old cycles they descend from
//! (tracked by arc identity). Moves that must preserve the surface genus
//! and the boundary genera check both and reject instances that do not.

mod basic;
mod cancel;
mod edit;
mod normalize;
mod slide;

use core::fmt;

pub use basic::{b_inverse, b_move, eps_move, s_inverse, s_move};
pub use cancel::{r_inverse, r_move};
pub use normalize::{eps_via_hb, normalize_colors};
pub use slide::{h_inverse, h_move};

use alloc::vec::Vec;

use crate::diagram::{
    ArcId, ChordId, CircleId, ColorId, Decoration, DiagramError, Family, GaussDiagram, Side, Sign,
};
use crate::topology::{boundary_genera_checked, TopologyError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error("unknown circle {0}")]
    UnknownCircle(CircleId),
    #[error("unknown arc {0}")]
    UnknownArc(ArcId),
    #[error("unknown chord {0}")]
    UnknownChord(ChordId),
    #[error("unknown color {0}")]
    UnknownColor(ColorId),
    #[error("color {0} is already in use")]
    ColorNotFresh(ColorId),
    #[error("arc {arc} is not in the {expected} family")]
    WrongFamily { arc: ArcId, expected: Family },
    #[error("the two arcs share no color on the requested sides")]
    NoSharedColor,
    #[error("chords {first} and {second} are not a cancelling pair: {reason}")]
    NotCancellingPair {
        first: ChordId,
        second: ChordId,
        reason: &'static str,
    },
    #[error("bigon color {0} is used by another cycle")]
    BigonColorShared(ColorId),
    #[error("slider and along must be distinct circles of one family")]
    BadSlideCircles,
    #[error("the block is not a parallel copy of the along circle: {0}")]
    NotParallelCopy(&'static str),
    #[error("circles {0} and {1} are not an isolated one-chord pair")]
    NotStabilizationPair(CircleId, CircleId),
    #[error("the cycle of circles {0} and {1} has a color used nowhere else")]
    StabilizationColor(CircleId, CircleId),
    #[error("circle {0} has chords")]
    HasChords(CircleId),
    #[error("circle {0} has no side whose color is used only there")]
    BubbleColors(CircleId),
    #[error("the move would change {0}")]
    InvariantChanged(&'static str),
    #[error("color {0} covers several cycles but no plus/minus pair of them")]
    NormalizeStuck(ColorId),
    #[error("internal: {0}")]
    Internal(&'static str),
}

/// Which sides of the two arcs share the color in an R-move.
///
/// `A1`/`A2` pick the Co/Counter side of the plus arc, `B1`/`B2` the
/// Co/Counter side of the minus arc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RCase {
    A1B1,
    A1B2,
    A2B1,
    A2B2,
}

impl RCase {
    pub const ALL: [RCase; 4] = [RCase::A1B1, RCase::A1B2, RCase::A2B1, RCase::A2B2];

    pub fn from_sides(plus: Side, minus: Side) -> RCase {
        match (plus, minus) {
            (Side::Co, Side::Co) => RCase::A1B1,
            (Side::Co, Side::Counter) => RCase::A1B2,
            (Side::Counter, Side::Co) => RCase::A2B1,
            (Side::Counter, Side::Counter) => RCase::A2B2,
        }
    }

    pub fn plus_side(self) -> Side {
        match self {
            RCase::A1B1 | RCase::A1B2 => Side::Co,
            RCase::A2B1 | RCase::A2B2 => Side::Counter,
        }
    }

    pub fn minus_side(self) -> Side {
        match self {
            RCase::A1B1 | RCase::A2B1 => Side::Co,
            RCase::A1B2 | RCase::A2B2 => Side::Counter,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            RCase::A1B1 => "a1b1",
            RCase::A1B2 => "a1b2",
            RCase::A2B1 => "a2b1",
            RCase::A2B2 => "a2b2",
        }
    }
}

/// Slide `slider` over `along`, attaching the band at `slider_arc` and
/// `along_arc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slide {
    pub slider: CircleId,
    pub along: CircleId,
    pub slider_arc: ArcId,
    pub along_arc: ArcId,
    pub reversed: bool,
    /// Side of `slider_arc` facing the band. Without it the Co side is
    /// tried first.
    pub side: Option<Side>,
}

/// Undo a slide: the `n` consecutive endpoints of `slider` starting at
/// position `start` must be a parallel copy of `along`'s `n` chords.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlideInv {
    pub slider: CircleId,
    pub along: CircleId,
    pub start: usize,
    pub reversed: bool,
    /// The along arc the band was attached at and the side of `along` the
    /// copy ran on. Without it every consistent placement is tried.
    pub band: Option<(usize, Side)>,
}

fn side_name(side: Side) -> &'static str {
    match side {
        Side::Co => "co",
        Side::Counter => "counter",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveSpec {
    Eps(CircleId),
    R {
        plus_arc: ArcId,
        minus_arc: ArcId,
        case: RCase,
    },
    /// Removes a cancelling pair. `case` names the R-move that created it,
    /// which fixes the bigon when the pair bounds two of them.
    RInv {
        positive: ChordId,
        negative: ChordId,
        case: Option<RCase>,
    },
    Slide(Slide),
    SlideInv(SlideInv),
    Stab {
        color: ColorId,
        sign: Sign,
    },
    StabInv {
        plus: CircleId,
        minus: CircleId,
    },
    /// Adds a chordless circle; `side` of it gets `new_color`, the other
    /// side gets `color`.
    Bubble {
        family: Family,
        color: ColorId,
        new_color: ColorId,
        side: Side,
    },
    BubbleInv(CircleId),
}

impl fmt::Display for MoveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rev = |r: bool| if r { " reversed" } else { "" };
        match self {
            MoveSpec::Eps(c) => write!(f, "eps {c}"),
            MoveSpec::R {
                plus_arc,
                minus_arc,
                case,
            } => write!(f, "r {plus_arc} {minus_arc} {}", case.name()),
            MoveSpec::RInv {
                positive,
                negative,
                case,
            } => {
                write!(f, "rinv {positive} {negative}")?;
                match case {
                    Some(c) => write!(f, " {}", c.name()),
                    None => Ok(()),
                }
            }
            MoveSpec::Slide(s) => {
                write!(
                    f,
                    "slide {} {}{}",
                    s.slider_arc,
                    s.along_arc,
                    rev(s.reversed)
                )?;
                match s.side {
                    Some(side) => write!(f, " side {}", side_name(side)),
                    None => Ok(()),
                }
            }
            MoveSpec::SlideInv(s) => {
                write!(
                    f,
                    "unslide {} {} {}{}",
                    s.slider,
                    s.along,
                    s.start,
                    rev(s.reversed)
                )?;
                match s.band {
                    Some((k, side)) => write!(f, " at {k} {}", side_name(side)),
                    None => Ok(()),
                }
            }
            MoveSpec::Stab { color, sign } => write!(f, "stab {color} {sign}"),
            MoveSpec::StabInv { plus, minus } => write!(f, "unstab {plus} {minus}"),
            MoveSpec::Bubble {
                family,
                color,
                new_color,
                side,
            } => write!(
                f,
                "bubble {family} {color} {new_color} {}",
                side_name(*side)
            ),
            MoveSpec::BubbleInv(c) => write!(f, "unbubble {c}"),
        }
    }
}

/// Applies one move.
pub fn apply_move(
    d: &GaussDiagram,
    deco: &Decoration,
    spec: &MoveSpec,
) -> Result<(GaussDiagram, Decoration), MoveError> {
    match *spec {
        MoveSpec::Eps(c) => eps_move(d, deco, c),
        MoveSpec::R {
            plus_arc,
            minus_arc,
            case,
        } => r_move(d, deco, plus_arc, minus_arc, case),
        MoveSpec::RInv {
            positive,
            negative,
            case,
        } => r_inverse(d, deco, positive, negative, case),
        MoveSpec::Slide(s) => h_move(d, deco, &s),
        MoveSpec::SlideInv(s) => h_inverse(d, deco, &s),
        MoveSpec::Stab { color, sign } => s_move(d, deco, color, sign),
        MoveSpec::StabInv { plus, minus } => s_inverse(d, deco, plus, minus),
        MoveSpec::Bubble {
            family,
            color,
            new_color,
            side,
        } => b_move(d, deco, family, color, new_color, side),
        MoveSpec::BubbleInv(c) => b_inverse(d, deco, c),
    }
}

/// Applies moves in order.
pub fn apply_script(
    d: &GaussDiagram,
    deco: &Decoration,
    script: &[MoveSpec],
) -> Result<(GaussDiagram, Decoration), MoveError> {
    let mut cur = (d.clone(), deco.clone());
    for spec in script {
        cur = apply_move(&cur.0, &cur.1, spec)?;
    }
    Ok(cur)
}

/// The move undoing `spec`, given the decorated diagram `spec` was applied
/// to. `None` for inverse moves and for moves that do not apply.
pub fn inverse_spec(before: &GaussDiagram, deco: &Decoration, spec: &MoveSpec) -> Option<MoveSpec> {
    Some(match *spec {
        MoveSpec::Eps(c) => MoveSpec::Eps(c),
        MoveSpec::R { case, .. } => {
            let p = before.next_chord_id();
            MoveSpec::RInv {
                positive: p,
                negative: ChordId(p.0 + 1),
                case: Some(case),
            }
        }
        MoveSpec::RInv { .. } | MoveSpec::SlideInv(_) => return None,
        MoveSpec::Slide(s) => {
            let s_e = slide::band_side(before, deco, &s).ok()?;
            if before.circle(s.along)?.is_empty() {
                return Some(MoveSpec::Slide(Slide {
                    reversed: !s.reversed,
                    side: Some(s_e.opposite()),
                    ..s
                }));
            }
            let slider = before.circle(s.slider)?.len();
            let s_1 = if s.reversed { s_e.opposite() } else { s_e };
            MoveSpec::SlideInv(SlideInv {
                slider: s.slider,
                along: s.along,
                start: if slider == 0 {
                    0
                } else {
                    s.slider_arc.position + 1
                },
                reversed: s.reversed,
                band: Some((s.along_arc.position, s_1)),
            })
        }
        MoveSpec::Stab { .. } => MoveSpec::StabInv {
            plus: CircleId::plus(before.circle_count(Family::Plus)),
            minus: CircleId::minus(before.circle_count(Family::Minus)),
        },
        MoveSpec::StabInv { .. } => return None,
        MoveSpec::Bubble { family, .. } => {
            MoveSpec::BubbleInv(CircleId::new(family, before.circle_count(family)))
        }
        MoveSpec::BubbleInv(_) => return None,
    })
}

/// Genus and both boundary genera.
pub(crate) type Invariants = (i64, i64, i64);

/// Invariants of a decoration already known to match `d`.
pub(crate) fn invariants(d: &GaussDiagram, deco: &Decoration) -> Result<Invariants, MoveError> {
    let r = boundary_genera_checked(d, deco)?;
    Ok((r.genus, r.dg_plus, r.dg_minus))
}

/// First candidate decoration whose invariants match `expected`.
pub(crate) fn pick(
    d: &GaussDiagram,
    candidates: Vec<Decoration>,
    expected: Invariants,
) -> Result<Decoration, MoveError> {
    let mut genus_ok = false;
    for deco in candidates {
        let got = invariants(d, &deco)?;
        if got == expected {
            return Ok(deco);
        }
        genus_ok |= got.0 == expected.0;
    }
    Err(MoveError::InvariantChanged(if genus_ok {
        "the boundary genera"
    } else {
        "the surface genus"
    }))
}

pub(crate) fn check_arc(d: &GaussDiagram, arc: ArcId) -> Result<(), MoveError> {
    if d.contains_arc(arc) {
        Ok(())
    } else {
        Err(MoveError::UnknownArc(arc))
    }
}

pub(crate) fn check_circle(d: &GaussDiagram, c: CircleId) -> Result<&[ChordId], MoveError> {
    d.circle(c).ok_or(MoveError::UnknownCircle(c))
}
