//! Handle slides and their inverses.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::edit::{transfer, ColorAlloc, Edit, Entry, SplitPolicy};
use super::{check_arc, check_circle, invariants, pick, Invariants, MoveError, Slide, SlideInv};
use crate::diagram::{
    ArcId, ArcSide, ChordId, CircleId, Decoration, Family, GaussDiagram, Side, Sign,
};
use crate::tracing::trace_cycles;

/// Whether a chord of `sign` is crossed from right to left when walking a
/// circle of `family`.
fn crosses_r2l(sign: Sign, family: Family) -> bool {
    (sign == Sign::Positive) == (family == Family::Plus)
}

/// Whether the copy endpoint goes right before the original on the
/// opposite circle.
fn copy_before(sign: Sign, family: Family, copy_on_right: bool) -> bool {
    crosses_r2l(sign, family) == copy_on_right
}

/// Chords of `along` in the order the copy visits them.
fn copy_order(along: &[ChordId], k: usize, reversed: bool) -> Vec<ChordId> {
    let n = along.len();
    (0..n)
        .map(|t| {
            if reversed {
                along[(k + n - t) % n]
            } else {
                along[(k + 1 + t) % n]
            }
        })
        .collect()
}

/// Along arc that copy arc `t` (between copies `t` and `t + 1`) runs next to.
fn along_arc_of_copy(n: usize, k: usize, t: usize, reversed: bool) -> usize {
    if reversed {
        (k + 2 * n - t - 1) % n
    } else {
        (k + 1 + t) % n
    }
}

fn check_pair(d: &GaussDiagram, slider: CircleId, along: CircleId) -> Result<(), MoveError> {
    check_circle(d, slider)?;
    check_circle(d, along)?;
    if slider == along || slider.family != along.family {
        return Err(MoveError::BadSlideCircles);
    }
    Ok(())
}

/// Slides `slider` over `along` through the band joining the two arcs.
///
/// The slider arc is replaced by a parallel copy of `along` read from the
/// band around the circle (backwards with flipped signs when `reversed`).
/// Each copy endpoint on the opposite family sits right next to its
/// original. When `along` has no chords only the bubble's color moves.
pub fn h_move(
    d: &GaussDiagram,
    deco: &Decoration,
    s: &Slide,
) -> Result<(GaussDiagram, Decoration), MoveError> {
    resolve(d, deco, s).map(|r| r.1)
}

/// The side of the slider arc facing the band in [`h_move`].
pub(super) fn band_side(d: &GaussDiagram, deco: &Decoration, s: &Slide) -> Result<Side, MoveError> {
    resolve(d, deco, s).map(|r| r.0)
}

fn resolve(
    d: &GaussDiagram,
    deco: &Decoration,
    s: &Slide,
) -> Result<(Side, (GaussDiagram, Decoration)), MoveError> {
    deco.check_against(d)?;
    check_pair(d, s.slider, s.along)?;
    check_arc(d, s.slider_arc)?;
    check_arc(d, s.along_arc)?;
    if s.slider_arc.circle != s.slider || s.along_arc.circle != s.along {
        return Err(MoveError::BadSlideCircles);
    }
    let before = invariants(d, deco)?;
    let mut last = MoveError::NoSharedColor;
    let sides = match s.side {
        Some(side) => vec![side],
        None => vec![Side::Co, Side::Counter],
    };
    for s_e in sides {
        let s_1 = if s.reversed { s_e.opposite() } else { s_e };
        let a = deco.color_of(ArcSide::new(s.slider_arc, s_e));
        if a.is_none() || a != deco.color_of(ArcSide::new(s.along_arc, s_1)) {
            continue;
        }
        match slide_on(d, deco, s, s_e, s_1, before) {
            Err(e @ MoveError::InvariantChanged(_)) => last = e,
            other => return other.map(|r| (s_e, r)),
        }
    }
    Err(last)
}

fn slide_on(
    d: &GaussDiagram,
    deco: &Decoration,
    s: &Slide,
    s_e: Side,
    s_1: Side,
    before: Invariants,
) -> Result<(GaussDiagram, Decoration), MoveError> {
    let along = check_circle(d, s.along)?;
    let n = along.len();
    let k = s.along_arc.position;
    if n == 0 {
        let bubble = deco
            .cycles()
            .cycle_of(ArcSide::new(s.along_arc, s_1))
            .ok_or(MoveError::Internal("bubble side is not traced"))?;
        let target = deco
            .color_of(ArcSide::new(s.slider_arc, s_e.opposite()))
            .ok_or(MoveError::Internal("slider side is not traced"))?;
        let mut colors = deco.colors().to_vec();
        colors[bubble] = target;
        let moved = Decoration::new(deco.cycles().clone(), colors)?;
        return Ok((d.clone(), pick(d, vec![moved], before)?));
    }

    let family = s.along.family;
    let ends = d.chord_ends()?;
    let originals = copy_order(along, k, s.reversed);
    let first = d.next_chord_id();
    let copies: Vec<ChordId> = (0..n).map(|t| ChordId(first.0 + t as u32)).collect();
    let copy_on_right = s_1 == Side::Co;

    let mut edit = Edit::identity(d);
    edit.circle_mut(s.slider)
        .insert_after(s.slider_arc.position, &copies);
    let mut placed = Vec::with_capacity(n);
    for (&o, &c) in originals.iter().zip(&copies) {
        let sign = d.sign(o).ok_or(MoveError::UnknownChord(o))?;
        edit.signs
            .insert(c, if s.reversed { sign.flip() } else { sign });
        let end = ends[&o].on(family.opposite());
        let ahead = copy_before(sign, family, copy_on_right);
        let ec = edit.circle_mut(end.circle);
        if ahead {
            ec.insert_before(end.position, c);
        } else {
            ec.insert_after(end.position, &[c]);
        }
        placed.push((end, c, ahead));
    }
    let small: BTreeSet<ArcId> = placed
        .iter()
        .map(|&(end, c, ahead)| {
            let ec = edit.circle(end.circle);
            let at = if ahead {
                Entry::New(c)
            } else {
                Entry::Old(end.position)
            };
            ArcId::new(end.circle, ec.index_of(at).expect("placed entry"))
        })
        .collect();
    let j0 = edit
        .circle(s.slider)
        .index_of(Entry::New(copies[0]))
        .expect("copies inserted");
    let outer = if s.reversed { s_1.opposite() } else { s_1 };
    let nd = edit.build();

    let ancestors = |side: ArcSide| -> Vec<ArcSide> {
        let arc = side.arc;
        if arc.circle == s.along {
            return if side.side == s_1 {
                Vec::new()
            } else {
                vec![side]
            };
        }
        if arc.circle == s.slider && arc.position >= j0 && arc.position + 1 < j0 + n {
            let t = arc.position - j0;
            if side.side != outer {
                return Vec::new();
            }
            let a = along_arc_of_copy(n, k, t, s.reversed);
            return vec![ArcSide::new(ArcId::new(s.along, a), s_1)];
        }
        if small.contains(&arc) {
            return Vec::new();
        }
        edit.default_ancestors(side)
    };
    let t = transfer(
        deco,
        trace_cycles(&nd)?,
        &ancestors,
        SplitPolicy::Fresh,
        &|_| None,
        &mut ColorAlloc::after(deco),
    )?;
    let nd_deco = pick(&nd, t.candidates(), before)?;
    Ok((nd, nd_deco))
}

/// Removes a parallel copy of `along` from `slider`, undoing [`h_move`].
pub fn h_inverse(
    d: &GaussDiagram,
    deco: &Decoration,
    s: &SlideInv,
) -> Result<(GaussDiagram, Decoration), MoveError> {
    deco.check_against(d)?;
    check_pair(d, s.slider, s.along)?;
    let slider = check_circle(d, s.slider)?;
    let along = check_circle(d, s.along)?;
    let (n, m) = (along.len(), slider.len());
    if n == 0 {
        return Err(MoveError::NotParallelCopy("the along circle has no chords"));
    }
    if n > m || s.start >= m {
        return Err(MoveError::NotParallelCopy(
            "the block does not fit on the slider",
        ));
    }
    let family = s.along.family;
    let ends = d.chord_ends()?;
    let block: Vec<ChordId> = (0..n).map(|t| slider[(s.start + t) % m]).collect();
    let before = invariants(d, deco)?;
    let mut last = MoveError::NotParallelCopy("no rotation of the along circle matches the block");
    let no_band = MoveError::NotParallelCopy("no band placement agrees with the colors");
    let mut best: Option<((GaussDiagram, Decoration), usize)> = None;
    for k in 0..n {
        if s.band.is_some_and(|(at, _)| at != k) {
            continue;
        }
        let originals = copy_order(along, k, s.reversed);
        let Some(allowed) = placements(d, &ends, family, &block, &originals, s.reversed) else {
            continue;
        };
        for copy_on_right in [true, false] {
            if !allowed[usize::from(copy_on_right)]
                || s.band
                    .is_some_and(|(_, side)| (side == Side::Co) != copy_on_right)
            {
                continue;
            }
            let fit = Fit {
                k,
                copy_on_right,
                block: &block,
                originals: &originals,
            };
            match unslide_on(d, deco, s, &fit, before) {
                // A parallel block whose colors admit no band is not the
                // result of a slide.
                Err(MoveError::InvariantChanged(_)) => last = no_band.clone(),
                Err(e) => return Err(e),
                // The forward slide never identifies two old colors, so
                // prefer the placement that identifies the fewest.
                Ok((r, merges)) => {
                    if best.as_ref().is_none_or(|b| merges < b.1) {
                        best = Some((r, merges));
                    }
                }
            }
        }
    }
    best.map(|b| b.0).ok_or(last)
}

/// Which `copy_on_right` values (indexed by the bool) are consistent with
/// the block being a copy of `originals`, or `None` if it cannot be.
fn placements(
    d: &GaussDiagram,
    ends: &alloc::collections::BTreeMap<ChordId, crate::diagram::ChordEnds>,
    family: Family,
    block: &[ChordId],
    originals: &[ChordId],
    reversed: bool,
) -> Option<[bool; 2]> {
    let mut allowed = [true, true];
    for (&x, &o) in block.iter().zip(originals) {
        let (ex, eo) = (
            ends[&x].on(family.opposite()),
            ends[&o].on(family.opposite()),
        );
        if ex.circle != eo.circle {
            return None;
        }
        let sign = ends[&o].sign;
        let want = if reversed { sign.flip() } else { sign };
        if ends[&x].sign != want {
            return None;
        }
        let len = d.circle(ex.circle)?.len();
        let x_ahead = (ex.position + 1) % len == eo.position;
        let x_behind = (eo.position + 1) % len == ex.position;
        if !x_ahead && !x_behind {
            return None;
        }
        for cor in [false, true] {
            let ok = if copy_before(sign, family, cor) {
                x_ahead
            } else {
                x_behind
            };
            if !ok {
                allowed[usize::from(cor)] = false;
            }
        }
    }
    (allowed[0] || allowed[1]).then_some(allowed)
}

struct Fit<'a> {
    k: usize,
    copy_on_right: bool,
    block: &'a [ChordId],
    originals: &'a [ChordId],
}

fn unslide_on(
    d: &GaussDiagram,
    deco: &Decoration,
    s: &SlideInv,
    fit: &Fit<'_>,
    before: Invariants,
) -> Result<((GaussDiagram, Decoration), usize), MoveError> {
    let family = s.along.family;
    let ends = d.chord_ends()?;
    let n = fit.block.len();
    let m = check_circle(d, s.slider)?.len();
    let s_1 = if fit.copy_on_right {
        Side::Co
    } else {
        Side::Counter
    };
    let outer = if s.reversed { s_1.opposite() } else { s_1 };

    let mut edit = Edit::identity(d);
    let positions: BTreeSet<usize> = (0..n).map(|t| (s.start + t) % m).collect();
    edit.circle_mut(s.slider).remove_old(&positions);
    let mut small = BTreeSet::new();
    for (&x, &o) in fit.block.iter().zip(fit.originals) {
        let ex = ends[&x].on(family.opposite());
        let eo = ends[&o].on(family.opposite());
        edit.circle_mut(ex.circle)
            .remove_old(&BTreeSet::from([ex.position]));
        edit.signs.remove(&x);
        let ahead = copy_before(ends[&o].sign, family, fit.copy_on_right);
        let p = if ahead { ex.position } else { eo.position };
        small.insert(ArcId::new(ex.circle, p));
    }
    let nd = edit.build();

    let full = n == m;
    let ancestors = |side: ArcSide| -> Vec<ArcSide> {
        let arc = side.arc;
        if arc.circle == s.along {
            if side.side != s_1 {
                return vec![side];
            }
            let i = arc.position;
            if i == fit.k {
                return Vec::new();
            }
            let t = if s.reversed {
                (fit.k + 2 * n - 1 - i) % n
            } else {
                (i + 2 * n - fit.k - 1) % n
            };
            let old = ArcId::new(s.slider, (s.start + t) % m);
            return vec![ArcSide::new(old, outer)];
        }
        if arc.circle == s.slider {
            if full {
                let piece = ArcId::new(s.slider, (s.start + m - 1) % m);
                return vec![ArcSide::new(piece, side.side)];
            }
            let spanned = edit.spanned(arc);
            if spanned.len() > 1 {
                let ends = [spanned[0], spanned[spanned.len() - 1]];
                return ends.iter().map(|&a| ArcSide::new(a, side.side)).collect();
            }
            return edit.default_ancestors(side);
        }
        edit.spanned(arc)
            .into_iter()
            .filter(|a| !small.contains(a))
            .map(|a| ArcSide::new(a, side.side))
            .collect()
    };
    let t = transfer(
        deco,
        trace_cycles(&nd)?,
        &ancestors,
        SplitPolicy::Keep,
        &|_| None,
        &mut ColorAlloc::after(deco),
    )?;
    let nd_deco = pick(&nd, t.candidates(), before)?;
    Ok(((nd, nd_deco), t.merges))
}
