//! Boundary cycles of the ribbon surface, edge colorings, and the
//! combinatorial-map oracle.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{
    ArcId, ArcSide, ChordId, ColorId, Decoration, DiagramError, Family, GaussDiagram, Side, Sign,
};

/// The four arcs meeting at a chord.
///
/// `a` enters and `b` leaves along the plus circle, `c` enters and `d`
/// leaves along the minus circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingFrame {
    pub chord: ChordId,
    pub sign: Sign,
    pub a: ArcId,
    pub b: ArcId,
    pub c: ArcId,
    pub d: ArcId,
}

/// Frames of all chords, in chord order.
pub fn crossing_frames(d: &GaussDiagram) -> Result<Vec<CrossingFrame>, DiagramError> {
    let ends = d.chord_ends()?;
    Ok(ends
        .iter()
        .map(|(&chord, e)| {
            let around = |ep: crate::diagram::Endpoint| {
                let n = d.circle(ep.circle).map_or(1, <[ChordId]>::len);
                (
                    ArcId::new(ep.circle, (ep.position + n - 1) % n),
                    ArcId::new(ep.circle, ep.position),
                )
            };
            let (a, b) = around(e.plus);
            let (c, dd) = around(e.minus);
            CrossingFrame {
                chord,
                sign: e.sign,
                a,
                b,
                c,
                d: dd,
            }
        })
        .collect())
}

/// Orbits of the turning permutation on arc sides.
///
/// Each orbit starts at its smallest side; orbits are sorted by that side.
#[derive(Debug, Clone, Default)]
pub struct CycleSet {
    orbits: Vec<Vec<ArcSide>>,
    /// Every side with its cycle, sorted by side.
    index: Vec<(ArcSide, usize)>,
}

impl PartialEq for CycleSet {
    fn eq(&self, other: &Self) -> bool {
        self.orbits == other.orbits
    }
}

impl Eq for CycleSet {}

impl CycleSet {
    /// Wraps orbits as given, without normalizing them.
    pub fn from_orbits(orbits: Vec<Vec<ArcSide>>) -> Self {
        let mut index: Vec<(ArcSide, usize)> = orbits
            .iter()
            .enumerate()
            .flat_map(|(i, orbit)| orbit.iter().map(move |&s| (s, i)))
            .collect();
        index.sort_unstable();
        index.dedup_by_key(|e| e.0);
        CycleSet { orbits, index }
    }

    pub fn orbits(&self) -> &[Vec<ArcSide>] {
        &self.orbits
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn cycle_of(&self, side: ArcSide) -> Option<usize> {
        self.index
            .binary_search_by_key(&side, |e| e.0)
            .ok()
            .map(|i| self.index[i].1)
    }
}

impl fmt::Display for CycleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, orbit) in self.orbits.iter().enumerate() {
            write!(f, "{}:", i + 1)?;
            for s in orbit {
                write!(f, " {s}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Arc sides numbered in canonical order: circles in id order, then
/// position, then Co before Counter.
struct SideIndex {
    /// First side number of each circle, plus and minus concatenated.
    base: Vec<usize>,
    plus: usize,
    sides: Vec<ArcSide>,
}

impl SideIndex {
    fn new(d: &GaussDiagram) -> Self {
        let sides = d.arc_sides();
        let mut base = Vec::new();
        let mut at = 0;
        for c in d.circle_ids() {
            base.push(at);
            at += 2 * d.circle(c).map_or(0, <[ChordId]>::len).max(1);
        }
        SideIndex {
            base,
            plus: d.circle_count(Family::Plus),
            sides,
        }
    }

    fn of(&self, s: ArcSide) -> usize {
        let c = s.arc.circle;
        let k = match c.family {
            Family::Plus => c.index,
            Family::Minus => self.plus + c.index,
        };
        self.base[k] + 2 * s.arc.position + usize::from(s.side == Side::Counter)
    }
}

/// The turning permutation on side numbers: where a boundary walker goes
/// after each side.
fn successors(d: &GaussDiagram, ix: &SideIndex) -> Result<Vec<usize>, DiagramError> {
    use ArcSide as S;
    let mut next: Vec<usize> = (0..ix.sides.len()).collect();
    for f in crossing_frames(d)? {
        let pairs = match f.sign {
            Sign::Positive => [
                (S::co(f.a), S::counter(f.c)),
                (S::co(f.c), S::co(f.b)),
                (S::counter(f.b), S::co(f.d)),
                (S::counter(f.d), S::counter(f.a)),
            ],
            Sign::Negative => [
                (S::co(f.a), S::co(f.d)),
                (S::co(f.c), S::counter(f.a)),
                (S::counter(f.d), S::co(f.b)),
                (S::counter(f.b), S::counter(f.c)),
            ],
        };
        for (x, y) in pairs {
            next[ix.of(x)] = ix.of(y);
        }
    }
    // Sides of chordless circles stay fixed points.
    Ok(next)
}

fn orbits_of(next: &BTreeMap<ArcSide, ArcSide>) -> Vec<Vec<ArcSide>> {
    let mut seen: BTreeMap<ArcSide, bool> = next.keys().map(|&k| (k, false)).collect();
    let mut orbits = Vec::new();
    for &start in next.keys() {
        if seen[&start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = start;
        loop {
            seen.insert(x, true);
            orbit.push(x);
            x = next[&x];
            if x == start {
                break;
            }
        }
        orbits.push(orbit);
    }
    orbits
}

/// Traces the boundary cycles of `d`.
pub fn trace_cycles(d: &GaussDiagram) -> Result<CycleSet, DiagramError> {
    let ix = SideIndex::new(d);
    let next = successors(d, &ix)?;
    const UNSEEN: usize = usize::MAX;
    let mut cycle = vec![UNSEEN; next.len()];
    let mut orbits = Vec::new();
    for start in 0..next.len() {
        if cycle[start] != UNSEEN {
            continue;
        }
        let mut orbit = Vec::new();
        let mut x = start;
        while cycle[x] == UNSEEN {
            cycle[x] = orbits.len();
            orbit.push(ix.sides[x]);
            x = next[x];
        }
        orbits.push(orbit);
    }
    // Sides are numbered in sorted order, so the index comes out sorted.
    let index: Vec<(ArcSide, usize)> = ix.sides.iter().copied().zip(cycle).collect();
    debug_assert!(index.windows(2).all(|w| w[0].0 < w[1].0));
    Ok(CycleSet { orbits, index })
}

/// Color pair (Co side, Counter side) of every arc.
pub fn infer_edge_colorings(
    d: &GaussDiagram,
    deco: &Decoration,
) -> Result<BTreeMap<ArcId, (ColorId, ColorId)>, DiagramError> {
    deco.check_against(d)?;
    Ok(d.arcs()
        .into_iter()
        .map(|a| {
            let co = deco.color_of(ArcSide::co(a)).expect("traced side");
            let counter = deco.color_of(ArcSide::counter(a)).expect("traced side");
            (a, (co, counter))
        })
        .collect())
}

/// A chord whose surrounding colors break the turning relations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChordColorViolation {
    pub chord: ChordId,
}

/// Checks the color relations at every chord: for a positive chord
/// `(a1, a2, b1, b2) = (c2, d2, c1, d1)`, for a negative one
/// `(a1, a2, b1, b2) = (d1, c1, d2, c2)`.
pub fn check_chord_color_equalities(
    d: &GaussDiagram,
    deco: &Decoration,
) -> Vec<ChordColorViolation> {
    let Ok(frames) = crossing_frames(d) else {
        return Vec::new();
    };
    let pair = |a: ArcId| {
        (
            deco.color_of(ArcSide::co(a)),
            deco.color_of(ArcSide::counter(a)),
        )
    };
    frames
        .into_iter()
        .filter(|f| {
            let ((a1, a2), (b1, b2)) = (pair(f.a), pair(f.b));
            let ((c1, c2), (d1, d2)) = (pair(f.c), pair(f.d));
            let all = [a1, a2, b1, b2, c1, c2, d1, d2];
            if all.iter().any(Option::is_none) {
                return true;
            }
            match f.sign {
                Sign::Positive => (a1, a2, b1, b2) != (c2, d2, c1, d1),
                Sign::Negative => (a1, a2, b1, b2) != (d1, c1, d2, c2),
            }
        })
        .map(|f| ChordColorViolation { chord: f.chord })
        .collect()
}

/// The ribbon graph as a combinatorial map.
///
/// Darts are the sides of chord-bearing arcs: `(arc, Co)` is the half-edge
/// at the arc's start, `(arc, Counter)` the half-edge at its end. The
/// rotation lists half-edges counterclockwise around each chord vertex as
/// fixed by the chord's sign; the pairing joins the two halves of an arc.
/// Chordless circles are kept aside as annuli.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonMap {
    darts: Vec<ArcSide>,
    rotation: Vec<usize>,
    pairing: Vec<usize>,
    vertices: usize,
    annuli: usize,
}

impl RibbonMap {
    pub fn darts(&self) -> &[ArcSide] {
        &self.darts
    }

    pub fn rotation(&self) -> &[usize] {
        &self.rotation
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.darts.len() / 2
    }

    pub fn annulus_count(&self) -> usize {
        self.annuli
    }

    /// `V - E` of the chord-bearing part.
    pub fn euler_characteristic(&self) -> i64 {
        self.vertices as i64 - self.edge_count() as i64
    }

    /// Orbits of rotation after pairing, as dart sequences.
    pub fn faces(&self) -> Vec<Vec<ArcSide>> {
        let next: BTreeMap<ArcSide, ArcSide> = (0..self.darts.len())
            .map(|i| (self.darts[i], self.darts[self.rotation[self.pairing[i]]]))
            .collect();
        orbits_of(&next)
    }

    /// Boundary components: faces plus two per annulus.
    pub fn boundary_count(&self) -> usize {
        self.faces().len() + 2 * self.annuli
    }
}

/// Builds the combinatorial map of the ribbon graph of `d`.
pub fn build_ribbon_map(d: &GaussDiagram) -> Result<RibbonMap, DiagramError> {
    let frames = crossing_frames(d)?;
    let mut darts: Vec<ArcSide> = Vec::new();
    let mut annuli = 0;
    for c in d.circle_ids() {
        let n = d.circle(c).map_or(0, <[ChordId]>::len);
        if n == 0 {
            annuli += 1;
        }
        for p in 0..n {
            for side in Side::BOTH {
                darts.push(ArcSide::new(ArcId::new(c, p), side));
            }
        }
    }
    let index: BTreeMap<ArcSide, usize> = darts.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut rotation = alloc::vec![usize::MAX; darts.len()];
    for f in &frames {
        let ring = match f.sign {
            Sign::Positive => [
                ArcSide::co(f.b),
                ArcSide::co(f.d),
                ArcSide::counter(f.a),
                ArcSide::counter(f.c),
            ],
            Sign::Negative => [
                ArcSide::co(f.b),
                ArcSide::counter(f.c),
                ArcSide::counter(f.a),
                ArcSide::co(f.d),
            ],
        };
        for k in 0..4 {
            rotation[index[&ring[k]]] = index[&ring[(k + 1) % 4]];
        }
    }
    let pairing = darts
        .iter()
        .map(|s| index[&ArcSide::new(s.arc, s.side.opposite())])
        .collect();
    Ok(RibbonMap {
        darts,
        rotation,
        pairing,
        vertices: frames.len(),
        annuli,
    })
}
