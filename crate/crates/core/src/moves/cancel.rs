//! Creating and removing a cancelling pair of chords.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::edit::{transfer, ColorAlloc, Edit, Entry, SplitPolicy};
use super::{check_arc, invariants, pick, MoveError, RCase};
use crate::diagram::{ArcId, ArcSide, ChordId, CircleId, Decoration, Family, GaussDiagram, Sign};
use crate::tracing::trace_cycles;

/// Position of the new arc running between two consecutive new entries.
fn arc_between(entries: &[Entry], first: ChordId) -> usize {
    entries
        .iter()
        .position(|&e| e == Entry::New(first))
        .expect("inserted entry present")
}

/// Whether the positive chord comes first on the plus and on the minus arc.
fn positive_first(case: RCase) -> [bool; 2] {
    match case {
        RCase::A1B1 => [false, true],
        RCase::A1B2 => [true, true],
        RCase::A2B1 => [false, false],
        RCase::A2B2 => [true, false],
    }
}

/// Inserts a positive chord `p` and a negative chord `m` crossing both
/// arcs, in the endpoint order fixed by `case`.
pub fn r_move(
    d: &GaussDiagram,
    deco: &Decoration,
    plus_arc: ArcId,
    minus_arc: ArcId,
    case: RCase,
) -> Result<(GaussDiagram, Decoration), MoveError> {
    deco.check_against(d)?;
    check_arc(d, plus_arc)?;
    check_arc(d, minus_arc)?;
    for (arc, fam) in [(plus_arc, Family::Plus), (minus_arc, Family::Minus)] {
        if arc.circle.family != fam {
            return Err(MoveError::WrongFamily { arc, expected: fam });
        }
    }
    let a = deco.color_of(ArcSide::new(plus_arc, case.plus_side()));
    let b = deco.color_of(ArcSide::new(minus_arc, case.minus_side()));
    if a.is_none() || a != b {
        return Err(MoveError::NoSharedColor);
    }
    let p = d.next_chord_id();
    let m = ChordId(p.0 + 1);
    let [plus_first, minus_first] = positive_first(case);
    let order = |first: bool| if first { [p, m] } else { [m, p] };
    let (plus_order, minus_order) = (order(plus_first), order(minus_first));
    let mut edit = Edit::identity(d);
    edit.circle_mut(plus_arc.circle)
        .insert_after(plus_arc.position, &plus_order);
    edit.circle_mut(minus_arc.circle)
        .insert_after(minus_arc.position, &minus_order);
    edit.signs.insert(p, Sign::Positive);
    edit.signs.insert(m, Sign::Negative);
    let middle = [
        ArcId::new(
            plus_arc.circle,
            arc_between(&edit.circle(plus_arc.circle).entries, plus_order[0]),
        ),
        ArcId::new(
            minus_arc.circle,
            arc_between(&edit.circle(minus_arc.circle).entries, minus_order[0]),
        ),
    ];
    let nd = edit.build();
    let before = invariants(d, deco)?;
    let ancestors = |s: ArcSide| -> Vec<ArcSide> {
        if middle.contains(&s.arc) {
            Vec::new()
        } else {
            edit.default_ancestors(s)
        }
    };
    let mut alloc = ColorAlloc::after(deco);
    let t = transfer(
        deco,
        trace_cycles(&nd)?,
        &ancestors,
        SplitPolicy::Fresh,
        &|_| None,
        &mut alloc,
    )?;
    let nd_deco = pick(&nd, t.candidates(), before)?;
    Ok((nd, nd_deco))
}

/// The arc between two endpoints adjacent on a circle, if any.
fn middle_arcs(circle: &[ChordId], x: usize, y: usize) -> Vec<usize> {
    let n = circle.len();
    let mut out = Vec::new();
    if (x + 1) % n == y {
        out.push(x);
    }
    if (y + 1) % n == x && !out.contains(&y) {
        out.push(y);
    }
    out
}

/// Removes an adjacent pair of opposite-signed chords bounding a bigon
/// whose color is used nowhere else. With `case`, the endpoints must lie in
/// the order that R-move case produces.
pub fn r_inverse(
    d: &GaussDiagram,
    deco: &Decoration,
    positive: ChordId,
    negative: ChordId,
    case: Option<RCase>,
) -> Result<(GaussDiagram, Decoration), MoveError> {
    deco.check_against(d)?;
    let ends = d.chord_ends()?;
    let not_pair = |reason| MoveError::NotCancellingPair {
        first: positive,
        second: negative,
        reason,
    };
    let ep = *ends
        .get(&positive)
        .ok_or(MoveError::UnknownChord(positive))?;
    let em = *ends
        .get(&negative)
        .ok_or(MoveError::UnknownChord(negative))?;
    if positive == negative {
        return Err(not_pair("the same chord twice"));
    }
    if ep.sign == em.sign {
        return Err(not_pair("signs are not opposite"));
    }
    let mut middles: Vec<Vec<ArcId>> = Vec::new();
    let firsts = case.map(positive_first);
    for (i, fam) in Family::BOTH.into_iter().enumerate() {
        let (x, y) = (ep.on(fam), em.on(fam));
        if x.circle != y.circle {
            return Err(not_pair("endpoints lie on different circles"));
        }
        let circle = d.circle(x.circle).expect("endpoint circle");
        let mut arcs = middle_arcs(circle, x.position, y.position);
        if arcs.is_empty() {
            return Err(not_pair("endpoints are not adjacent"));
        }
        if let Some(firsts) = firsts {
            let start = if firsts[i] { x.position } else { y.position };
            arcs.retain(|&a| a == start);
            if arcs.is_empty() {
                return Err(not_pair("endpoints are not in the order of the case"));
            }
        }
        middles.push(arcs.into_iter().map(|p| ArcId::new(x.circle, p)).collect());
    }
    let bigons: Vec<usize> = (0..deco.cycle_count())
        .filter(|&k| {
            let o = &deco.cycles().orbits()[k];
            o.len() == 2
                && o.iter().any(|s| middles[0].contains(&s.arc))
                && o.iter().any(|s| middles[1].contains(&s.arc))
        })
        .collect();
    let unique = |k: &usize| deco.cycles_of_color(deco.color_of_cycle(*k)).len() == 1;
    let bigon = match (bigons.iter().copied().find(unique), bigons.first()) {
        (Some(k), _) => k,
        (None, Some(&k)) => return Err(MoveError::BigonColorShared(deco.color_of_cycle(k))),
        (None, None) => return Err(not_pair("no bigon cycle between them")),
    };
    let orbit = &deco.cycles().orbits()[bigon];
    let bigon_arcs: BTreeSet<ArcId> = orbit.iter().map(|s| s.arc).collect();

    let mut edit = Edit::identity(d);
    for fam in Family::BOTH {
        let circle: CircleId = ep.on(fam).circle;
        let gone = BTreeSet::from([ep.on(fam).position, em.on(fam).position]);
        edit.circle_mut(circle).remove_old(&gone);
    }
    edit.signs.remove(&positive);
    edit.signs.remove(&negative);
    let nd = edit.build();
    let before = invariants(d, deco)?;
    let ancestors = |s: ArcSide| -> Vec<ArcSide> {
        edit.spanned(s.arc)
            .into_iter()
            .filter(|a| !bigon_arcs.contains(a))
            .map(|a| ArcSide::new(a, s.side))
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
    // A pair whose removal cannot keep the invariants was not made by a move.
    let nd_deco = pick(&nd, t.candidates(), before).map_err(|e| match e {
        MoveError::InvariantChanged(_) => {
            not_pair("no coloring of the result keeps the invariants")
        }
        e => e,
    })?;
    Ok((nd, nd_deco))
}
