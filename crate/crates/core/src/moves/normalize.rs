//! Scripted procedures built from the basic moves.

use alloc::vec;
use alloc::vec::Vec;

use super::{
    apply_script, cancel::r_move, check_circle, MoveError, MoveSpec, RCase, Slide, SlideInv,
};
use crate::diagram::{ArcId, ArcSide, CircleId, ColorId, Decoration, Family, GaussDiagram, Side};

/// Applies R-moves until every color covers exactly one cycle.
///
/// Each step joins two cycles of one color, preferring cycles that lie in
/// different components of the diagram.
pub fn normalize_colors(
    d: &GaussDiagram,
    deco: &Decoration,
) -> Result<(GaussDiagram, Decoration, Vec<MoveSpec>), MoveError> {
    deco.check_against(d)?;
    let mut cur = (d.clone(), deco.clone());
    let mut script = Vec::new();
    while let Some(spec) = next_join(&cur.0, &cur.1)? {
        let MoveSpec::R {
            plus_arc,
            minus_arc,
            case,
        } = spec
        else {
            unreachable!("joins are R-moves");
        };
        cur = r_move(&cur.0, &cur.1, plus_arc, minus_arc, case)?;
        script.push(spec);
    }
    Ok((cur.0, cur.1, script))
}

fn next_join(d: &GaussDiagram, deco: &Decoration) -> Result<Option<MoveSpec>, MoveError> {
    let component_of = |c: CircleId| {
        d.components()
            .iter()
            .position(|comp| comp.contains(&c))
            .expect("every circle has a component")
    };
    let orbits = deco.cycles().orbits();
    let min_side = |k: usize, f: Family| -> Option<ArcSide> {
        orbits[k].iter().copied().filter(|s| s.family() == f).min()
    };
    let mut stuck = None;
    for color in deco.color_set() {
        let cycles = deco.cycles_of_color(color);
        if cycles.len() < 2 {
            continue;
        }
        let mut best: Option<(bool, ArcSide, ArcSide)> = None;
        for &i in &cycles {
            let Some(p) = min_side(i, Family::Plus) else {
                continue;
            };
            for &j in &cycles {
                let Some(m) = min_side(j, Family::Minus) else {
                    continue;
                };
                if i == j {
                    continue;
                }
                let apart = component_of(p.arc.circle) != component_of(m.arc.circle);
                if best.is_none() || (apart && !best.is_some_and(|b| b.0)) {
                    best = Some((apart, p, m));
                }
            }
        }
        // A color with no plus/minus pair may become joinable once other
        // colors are joined, so only give up when no color can move.
        let Some((_, p, m)) = best else {
            stuck.get_or_insert(color);
            continue;
        };
        return Ok(Some(MoveSpec::R {
            plus_arc: p.arc,
            minus_arc: m.arc,
            case: RCase::from_sides(p.side, m.side),
        }));
    }
    match stuck {
        Some(color) => Err(MoveError::NormalizeStuck(color)),
        None => Ok(None),
    }
}

/// Realizes a circle reversal by a bubble, a slide onto it, a slide back
/// and removing the emptied circle.
///
/// On a chordless circle the reversal is a relabeling and the script is
/// empty. The script is checked by running it.
pub fn eps_via_hb(
    d: &GaussDiagram,
    deco: &Decoration,
    circle: CircleId,
) -> Result<Vec<MoveSpec>, MoveError> {
    deco.check_against(d)?;
    let n = check_circle(d, circle)?.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let family = circle.family;
    let mu0 = ArcId::new(circle, 0);
    let color: ColorId = deco
        .color_of(ArcSide::co(mu0))
        .ok_or(MoveError::Internal("arc side is not traced"))?;
    let beta = CircleId::new(family, d.circle_count(family));
    let script = vec![
        MoveSpec::Bubble {
            family,
            color,
            new_color: deco.next_fresh_color(),
            side: Side::Co,
        },
        MoveSpec::Slide(Slide {
            slider: beta,
            along: circle,
            slider_arc: ArcId::new(beta, 0),
            along_arc: mu0,
            reversed: true,
            side: None,
        }),
        MoveSpec::SlideInv(SlideInv {
            slider: circle,
            along: beta,
            start: 1 % n,
            reversed: true,
            band: None,
        }),
        MoveSpec::BubbleInv(circle),
    ];
    apply_script(d, deco, &script)?;
    Ok(script)
}
