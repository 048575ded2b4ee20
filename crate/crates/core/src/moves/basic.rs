//! Orientation reversal, stabilization and bubbles.

use alloc::vec;
use alloc::vec::Vec;

use super::edit::{transfer, ColorAlloc, Edit, EditCircle, Entry, SplitPolicy};
use super::{check_circle, invariants, pick, MoveError};
use crate::diagram::{
    ArcId, ArcSide, CircleId, ColorId, Decoration, Family, GaussDiagram, Side, Sign,
};
use crate::tracing::trace_cycles;

/// Reverses a circle and flips the signs of its chords.
pub fn eps_move(
    d: &GaussDiagram,
    deco: &Decoration,
    circle: CircleId,
) -> Result<(GaussDiagram, Decoration), MoveError> {
    deco.check_against(d)?;
    let chords = check_circle(d, circle)?.to_vec();
    let n = chords.len();
    let mut edit = Edit::identity(d);
    edit.circle_mut(circle).entries = (0..n).map(|j| Entry::Old((n - j) % n)).collect();
    for h in &chords {
        if let Some(s) = edit.signs.get_mut(h) {
            *s = s.flip();
        }
    }
    let nd = edit.build();
    let before = invariants(d, deco)?;
    let ancestors = |s: ArcSide| -> Vec<ArcSide> {
        if s.arc.circle != circle {
            return vec![s];
        }
        let old = if n == 0 {
            0
        } else {
            (2 * n - 1 - s.arc.position) % n
        };
        vec![ArcSide::new(ArcId::new(circle, old), s.side.opposite())]
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
    Ok((nd, nd_deco))
}

/// Adds a plus and a minus circle joined by one chord; their cycle gets `color`.
pub fn s_move(
    d: &GaussDiagram,
    deco: &Decoration,
    color: ColorId,
    sign: Sign,
) -> Result<(GaussDiagram, Decoration), MoveError> {
    deco.check_against(d)?;
    if deco.cycle_count() > 0 && !deco.color_set().contains(&color) {
        return Err(MoveError::UnknownColor(color));
    }
    let h = d.next_chord_id();
    let mut edit = Edit::identity(d);
    for f in Family::BOTH {
        edit.family_mut(f).push(EditCircle {
            origin: None,
            entries: vec![Entry::New(h)],
        });
    }
    edit.signs.insert(h, sign);
    let nd = edit.build();
    let (g, dp, dm) = invariants(d, deco)?;
    let t = transfer(
        deco,
        trace_cycles(&nd)?,
        &|s| edit.default_ancestors(s),
        SplitPolicy::Keep,
        &|_| Some(color),
        &mut ColorAlloc::after(deco),
    )?;
    let nd_deco = pick(&nd, t.candidates(), (g + 1, dp, dm))?;
    Ok((nd, nd_deco))
}

/// Removes an isolated pair of circles joined by a single chord whose
/// cycle shares its color with another cycle.
pub fn s_inverse(
    d: &GaussDiagram,
    deco: &Decoration,
    plus: CircleId,
    minus: CircleId,
) -> Result<(GaussDiagram, Decoration), MoveError> {
    deco.check_against(d)?;
    let not_pair = MoveError::NotStabilizationPair(plus, minus);
    if plus.family != Family::Plus || minus.family != Family::Minus {
        return Err(not_pair);
    }
    let (p, m) = (check_circle(d, plus)?, check_circle(d, minus)?);
    if p.len() != 1 || m.len() != 1 || p[0] != m[0] {
        return Err(not_pair);
    }
    let h = p[0];
    // The pair carries a single cycle. Unless its color is shared or the
    // pair is all there is, it is a separate sphere summand rather than a
    // stabilization.
    let cycle = deco
        .cycles()
        .cycle_of(ArcSide::co(ArcId::new(plus, 0)))
        .ok_or(MoveError::Internal("arc side is not traced"))?;
    let shared = deco.cycles_of_color(deco.color_of_cycle(cycle)).len() > 1;
    let alone = d.circle_count(Family::Plus) == 1 && d.circle_count(Family::Minus) == 1;
    if !shared && !alone {
        return Err(MoveError::StabilizationColor(plus, minus));
    }
    let mut edit = Edit::identity(d);
    edit.plus.remove(plus.index);
    edit.minus.remove(minus.index);
    edit.signs.remove(&h);
    let nd = edit.build();
    let (g, dp, dm) = invariants(d, deco)?;
    let t = transfer(
        deco,
        trace_cycles(&nd)?,
        &|s| edit.default_ancestors(s),
        SplitPolicy::Keep,
        &|_| None,
        &mut ColorAlloc::after(deco),
    )?;
    let nd_deco = pick(&nd, t.candidates(), (g - 1, dp, dm))?;
    Ok((nd, nd_deco))
}

/// Adds a chordless circle to `family`; its `side` gets `new_color`.
pub fn b_move(
    d: &GaussDiagram,
    deco: &Decoration,
    family: Family,
    existing: ColorId,
    new_color: ColorId,
    side: Side,
) -> Result<(GaussDiagram, Decoration), MoveError> {
    deco.check_against(d)?;
    let colors = deco.color_set();
    if !colors.contains(&existing) {
        return Err(MoveError::UnknownColor(existing));
    }
    if colors.contains(&new_color) {
        return Err(MoveError::ColorNotFresh(new_color));
    }
    let mut edit = Edit::identity(d);
    edit.family_mut(family).push(EditCircle {
        origin: None,
        entries: Vec::new(),
    });
    let nd = edit.build();
    let before = invariants(d, deco)?;
    let preset = |orbit: &[ArcSide]| {
        Some(if orbit[0].side == side {
            new_color
        } else {
            existing
        })
    };
    let t = transfer(
        deco,
        trace_cycles(&nd)?,
        &|s| edit.default_ancestors(s),
        SplitPolicy::Keep,
        &preset,
        &mut ColorAlloc::after(deco),
    )?;
    let nd_deco = pick(&nd, t.candidates(), before)?;
    Ok((nd, nd_deco))
}

/// Removes a chordless circle whose one side carries a color used only there.
pub fn b_inverse(
    d: &GaussDiagram,
    deco: &Decoration,
    circle: CircleId,
) -> Result<(GaussDiagram, Decoration), MoveError> {
    deco.check_against(d)?;
    if !check_circle(d, circle)?.is_empty() {
        return Err(MoveError::HasChords(circle));
    }
    let whole = ArcId::new(circle, 0);
    let uses = |side: Side| {
        let c = deco
            .color_of(ArcSide::new(whole, side))
            .expect("traced side");
        deco.cycles_of_color(c).len()
    };
    let (co, counter) = (uses(Side::Co), uses(Side::Counter));
    if !((co == 1 && counter > 1) || (counter == 1 && co > 1)) {
        return Err(MoveError::BubbleColors(circle));
    }
    let mut edit = Edit::identity(d);
    edit.family_mut(circle.family).remove(circle.index);
    let nd = edit.build();
    let before = invariants(d, deco)?;
    let t = transfer(
        deco,
        trace_cycles(&nd)?,
        &|s| edit.default_ancestors(s),
        SplitPolicy::Keep,
        &|_| None,
        &mut ColorAlloc::after(deco),
    )?;
    let nd_deco = pick(&nd, t.candidates(), before)?;
    Ok((nd, nd_deco))
}
