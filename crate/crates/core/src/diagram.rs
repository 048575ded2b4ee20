//! Diagram data model: identifiers, the diagram itself, decorations,
//! structural validation and canonical relabeling.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::tracing::{trace_cycles, CycleSet};
use crate::util::DisjointSet;

/// Chord identifier. Opaque; only equality and ordering matter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChordId(pub u32);

impl fmt::Display for ChordId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Which of the two circle families a circle belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    Plus,
    Minus,
}

impl Family {
    pub const BOTH: [Family; 2] = [Family::Plus, Family::Minus];

    pub fn opposite(self) -> Family {
        match self {
            Family::Plus => Family::Minus,
            Family::Minus => Family::Plus,
        }
    }

    /// One-letter prefix used in circle names (`p1`, `m2`).
    pub fn prefix(self) -> char {
        match self {
            Family::Plus => 'p',
            Family::Minus => 'm',
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Plus => "plus",
            Family::Minus => "minus",
        })
    }
}

/// A circle, addressed by family and 0-based index. Displayed 1-based, e.g. `p1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CircleId {
    pub family: Family,
    pub index: usize,
}

impl CircleId {
    pub fn new(family: Family, index: usize) -> Self {
        CircleId { family, index }
    }

    pub fn plus(index: usize) -> Self {
        CircleId::new(Family::Plus, index)
    }

    pub fn minus(index: usize) -> Self {
        CircleId::new(Family::Minus, index)
    }
}

impl fmt::Display for CircleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.prefix(), self.index + 1)
    }
}

/// The arc leaving the endpoint at `position` of `circle`.
///
/// A chordless circle has a single whole-circle arc at position 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcId {
    pub circle: CircleId,
    pub position: usize,
}

impl ArcId {
    pub fn new(circle: CircleId, position: usize) -> Self {
        ArcId { circle, position }
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.circle, self.position)
    }
}

/// Side of an arc: `Co` runs along the arc's direction (on its right),
/// `Counter` runs against it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Co,
    Counter,
}

impl Side {
    pub const BOTH: [Side; 2] = [Side::Co, Side::Counter];

    pub fn opposite(self) -> Side {
        match self {
            Side::Co => Side::Counter,
            Side::Counter => Side::Co,
        }
    }
}

/// One boundary side of an arc; the atom of cycle tracing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcSide {
    pub arc: ArcId,
    pub side: Side,
}

impl ArcSide {
    pub fn new(arc: ArcId, side: Side) -> Self {
        ArcSide { arc, side }
    }

    pub fn co(arc: ArcId) -> Self {
        ArcSide::new(arc, Side::Co)
    }

    pub fn counter(arc: ArcId) -> Self {
        ArcSide::new(arc, Side::Counter)
    }

    pub fn family(&self) -> Family {
        self.arc.circle.family
    }
}

impl fmt::Display for ArcSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = match self.side {
            Side::Co => '>',
            Side::Counter => '<',
        };
        write!(f, "{}{}", self.arc, mark)
    }
}

/// Chord sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

/// Color of a cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorId(pub u32);

impl fmt::Display for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A single structural or decoration problem found by [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    DuplicateEndpoint { chord: ChordId, family: Family },
    MissingEndpoint { chord: ChordId, family: Family },
    DanglingChord { chord: ChordId, circle: CircleId },
    StaleDecoration,
    ColorCountMismatch { expected: usize, found: usize },
    OddParity { chords: usize, cycles: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateEndpoint { chord, family } => {
                write!(f, "chord {chord} has more than one {family} endpoint")
            }
            Violation::MissingEndpoint { chord, family } => {
                write!(f, "chord {chord} has no {family} endpoint")
            }
            Violation::DanglingChord { chord, circle } => {
                write!(f, "circle {circle} references undeclared chord {chord}")
            }
            Violation::StaleDecoration => {
                f.write_str("decoration cycles do not match the traced cycles")
            }
            Violation::ColorCountMismatch { expected, found } => {
                write!(f, "expected {expected} cycle colors, found {found}")
            }
            Violation::OddParity { chords, cycles } => {
                write!(f, "{chords} chords and {cycles} cycles have odd difference")
            }
        }
    }
}

/// Result of [`validate`]: every violation found, in a stable order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("unknown circle {0}")]
    UnknownCircle(CircleId),
    #[error("unknown arc {0}")]
    UnknownArc(ArcId),
    #[error("unknown chord {0}")]
    UnknownChord(ChordId),
    #[error("invalid diagram: {0}")]
    Invalid(Violation),
    #[error("decoration cycles do not match the traced cycles")]
    StaleDecoration,
    #[error("expected {expected} cycle colors, found {found}")]
    ColorCountMismatch { expected: usize, found: usize },
}

/// Position of a chord endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Endpoint {
    pub circle: CircleId,
    pub position: usize,
}

/// Both endpoints of a chord plus its sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChordEnds {
    pub plus: Endpoint,
    pub minus: Endpoint,
    pub sign: Sign,
}

impl ChordEnds {
    pub fn on(&self, family: Family) -> Endpoint {
        match family {
            Family::Plus => self.plus,
            Family::Minus => self.minus,
        }
    }
}

/// Two families of oriented circles, each a cyclic sequence of chord
/// endpoints, and a sign per chord.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GaussDiagram {
    plus: Vec<Vec<ChordId>>,
    minus: Vec<Vec<ChordId>>,
    signs: BTreeMap<ChordId, Sign>,
}

impl GaussDiagram {
    pub fn empty() -> Self {
        GaussDiagram::default()
    }

    /// Builds a diagram without checking it. Use [`validate`] or
    /// [`GaussDiagram::new`] when the parts come from outside.
    pub fn from_parts(
        plus: Vec<Vec<ChordId>>,
        minus: Vec<Vec<ChordId>>,
        signs: BTreeMap<ChordId, Sign>,
    ) -> Self {
        GaussDiagram { plus, minus, signs }
    }

    /// Builds a diagram and rejects structural violations.
    pub fn new(
        plus: Vec<Vec<ChordId>>,
        minus: Vec<Vec<ChordId>>,
        signs: BTreeMap<ChordId, Sign>,
    ) -> Result<Self, DiagramError> {
        let d = GaussDiagram::from_parts(plus, minus, signs);
        match d.structural_violations().into_iter().next() {
            Some(v) => Err(DiagramError::Invalid(v)),
            None => Ok(d),
        }
    }

    pub fn circles(&self, family: Family) -> &[Vec<ChordId>] {
        match family {
            Family::Plus => &self.plus,
            Family::Minus => &self.minus,
        }
    }

    pub fn circle(&self, id: CircleId) -> Option<&[ChordId]> {
        self.circles(id.family).get(id.index).map(Vec::as_slice)
    }

    pub fn circle_count(&self, family: Family) -> usize {
        self.circles(family).len()
    }

    /// All circles, plus family first.
    pub fn circle_ids(&self) -> impl Iterator<Item = CircleId> + '_ {
        Family::BOTH
            .into_iter()
            .flat_map(move |f| (0..self.circle_count(f)).map(move |i| CircleId::new(f, i)))
    }

    pub fn sign(&self, chord: ChordId) -> Option<Sign> {
        self.signs.get(&chord).copied()
    }

    pub fn signs(&self) -> &BTreeMap<ChordId, Sign> {
        &self.signs
    }

    pub fn chord_count(&self) -> usize {
        self.signs.len()
    }

    pub fn chords(&self) -> impl Iterator<Item = ChordId> + '_ {
        self.signs.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty() && self.minus.is_empty() && self.signs.is_empty()
    }

    /// Smallest chord id larger than every existing one.
    pub fn next_chord_id(&self) -> ChordId {
        let used = self
            .signs
            .keys()
            .chain(self.plus.iter().flatten())
            .chain(self.minus.iter().flatten())
            .map(|c| c.0)
            .max();
        ChordId(used.map_or(1, |m| m + 1))
    }

    /// Arcs of one circle: one per endpoint, or the whole-circle arc.
    pub fn arcs_of(&self, c: CircleId) -> Result<Vec<ArcId>, DiagramError> {
        let circle = self.circle(c).ok_or(DiagramError::UnknownCircle(c))?;
        let n = circle.len().max(1);
        Ok((0..n).map(|p| ArcId::new(c, p)).collect())
    }

    /// All arcs in canonical order.
    pub fn arcs(&self) -> Vec<ArcId> {
        let mut out = Vec::new();
        for c in self.circle_ids() {
            let n = self.circle(c).map_or(0, <[ChordId]>::len).max(1);
            out.extend((0..n).map(|p| ArcId::new(c, p)));
        }
        out
    }

    /// All arc sides in canonical order.
    pub fn arc_sides(&self) -> Vec<ArcSide> {
        self.arcs()
            .into_iter()
            .flat_map(|a| Side::BOTH.map(|s| ArcSide::new(a, s)))
            .collect()
    }

    pub fn contains_arc(&self, arc: ArcId) -> bool {
        self.circle(arc.circle)
            .is_some_and(|c| arc.position < c.len().max(1))
    }

    /// Start and end chord of an arc; `None` for a whole-circle arc.
    pub fn arc_endpoints(&self, arc: ArcId) -> Option<(ChordId, ChordId)> {
        let c = self.circle(arc.circle)?;
        if c.is_empty() || arc.position >= c.len() {
            return None;
        }
        Some((c[arc.position], c[(arc.position + 1) % c.len()]))
    }

    /// Endpoint positions of every chord, or the first structural violation.
    pub fn chord_ends(&self) -> Result<BTreeMap<ChordId, ChordEnds>, DiagramError> {
        let invalid = || {
            let v = self.structural_violations().into_iter().next();
            DiagramError::Invalid(v.expect("a malformed diagram has a violation"))
        };
        let mut plus: BTreeMap<ChordId, Endpoint> = BTreeMap::new();
        let mut minus: BTreeMap<ChordId, Endpoint> = BTreeMap::new();
        for c in self.circle_ids() {
            let target = match c.family {
                Family::Plus => &mut plus,
                Family::Minus => &mut minus,
            };
            for (position, &h) in self.circle(c).unwrap_or(&[]).iter().enumerate() {
                if target
                    .insert(
                        h,
                        Endpoint {
                            circle: c,
                            position,
                        },
                    )
                    .is_some()
                {
                    return Err(invalid());
                }
            }
        }
        if plus.len() != self.signs.len() || minus.len() != self.signs.len() {
            return Err(invalid());
        }
        self.signs
            .iter()
            .map(|(&h, &sign)| match (plus.get(&h), minus.get(&h)) {
                (Some(&p), Some(&m)) => Ok((
                    h,
                    ChordEnds {
                        plus: p,
                        minus: m,
                        sign,
                    },
                )),
                _ => Err(invalid()),
            })
            .collect()
    }

    /// Violations of the chord rules, independent of any decoration.
    pub fn structural_violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        for family in Family::BOTH {
            let mut seen: BTreeMap<ChordId, usize> = BTreeMap::new();
            for (i, circle) in self.circles(family).iter().enumerate() {
                for &h in circle {
                    if !self.signs.contains_key(&h) {
                        out.push(Violation::DanglingChord {
                            chord: h,
                            circle: CircleId::new(family, i),
                        });
                        continue;
                    }
                    *seen.entry(h).or_insert(0) += 1;
                }
            }
            for &h in self.signs.keys() {
                match seen.get(&h).copied().unwrap_or(0) {
                    0 => out.push(Violation::MissingEndpoint { chord: h, family }),
                    1 => {}
                    _ => out.push(Violation::DuplicateEndpoint { chord: h, family }),
                }
            }
        }
        out
    }

    /// Connected components: circles linked by chords. Ordered by their
    /// smallest circle; chordless circles are singletons.
    pub fn components(&self) -> Vec<Vec<CircleId>> {
        let ids: Vec<CircleId> = self.circle_ids().collect();
        let index: BTreeMap<CircleId, usize> =
            ids.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut ds = DisjointSet::new(ids.len());
        let mut first: BTreeMap<ChordId, usize> = BTreeMap::new();
        for &c in &ids {
            for &h in self.circle(c).unwrap_or(&[]) {
                match first.get(&h) {
                    Some(&other) => {
                        ds.union(other, index[&c]);
                    }
                    None => {
                        first.insert(h, index[&c]);
                    }
                }
            }
        }
        ds.groups()
            .into_iter()
            .map(|g| g.into_iter().map(|i| ids[i]).collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }
}

/// Traced cycles plus a color for each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoration {
    cycles: CycleSet,
    colors: Vec<ColorId>,
}

impl Decoration {
    pub fn new(cycles: CycleSet, colors: Vec<ColorId>) -> Result<Self, DiagramError> {
        if cycles.len() != colors.len() {
            return Err(DiagramError::ColorCountMismatch {
                expected: cycles.len(),
                found: colors.len(),
            });
        }
        Ok(Decoration { cycles, colors })
    }

    /// Every cycle its own color, numbered from 1 in cycle order.
    pub fn distinct(cycles: CycleSet) -> Self {
        let colors = (1..=cycles.len() as u32).map(ColorId).collect();
        Decoration { cycles, colors }
    }

    /// Every cycle the same color.
    pub fn uniform(cycles: CycleSet, color: ColorId) -> Self {
        let colors = vec![color; cycles.len()];
        Decoration { cycles, colors }
    }

    /// Traces `d` and colors every cycle distinctly.
    pub fn traced(d: &GaussDiagram) -> Result<Self, DiagramError> {
        Ok(Decoration::distinct(trace_cycles(d)?))
    }

    pub fn cycles(&self) -> &CycleSet {
        &self.cycles
    }

    pub fn colors(&self) -> &[ColorId] {
        &self.colors
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn color_of_cycle(&self, cycle: usize) -> ColorId {
        self.colors[cycle]
    }

    pub fn color_of(&self, side: ArcSide) -> Option<ColorId> {
        self.cycles.cycle_of(side).map(|i| self.colors[i])
    }

    pub fn color_set(&self) -> BTreeSet<ColorId> {
        self.colors.iter().copied().collect()
    }

    pub fn color_count(&self) -> usize {
        self.color_set().len()
    }

    pub fn cycles_of_color(&self, color: ColorId) -> Vec<usize> {
        (0..self.colors.len())
            .filter(|&i| self.colors[i] == color)
            .collect()
    }

    pub fn is_all_distinct(&self) -> bool {
        self.color_count() == self.colors.len()
    }

    /// Smallest color larger than every color in use.
    pub fn next_fresh_color(&self) -> ColorId {
        ColorId(self.colors.iter().map(|c| c.0).max().map_or(1, |m| m + 1))
    }

    /// Same cycles, colors renumbered 1, 2, ... by first appearance.
    pub fn renumbered(&self) -> Decoration {
        let mut map: BTreeMap<ColorId, ColorId> = BTreeMap::new();
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                let next = ColorId(map.len() as u32 + 1);
                *map.entry(c).or_insert(next)
            })
            .collect();
        Decoration {
            cycles: self.cycles.clone(),
            colors,
        }
    }

    /// Errors unless the stored cycles equal the traced cycles of `d`.
    pub fn check_against(&self, d: &GaussDiagram) -> Result<(), DiagramError> {
        if trace_cycles(d)? != self.cycles {
            return Err(DiagramError::StaleDecoration);
        }
        Ok(())
    }
}

/// Reports every structural and decoration violation of `d`.
pub fn validate(d: &GaussDiagram, deco: Option<&Decoration>) -> ValidationReport {
    let mut violations = d.structural_violations();
    if !violations.is_empty() {
        return ValidationReport { violations };
    }
    let Ok(cycles) = trace_cycles(d) else {
        return ValidationReport { violations };
    };
    if (d.chord_count() + cycles.len()) % 2 == 1 {
        violations.push(Violation::OddParity {
            chords: d.chord_count(),
            cycles: cycles.len(),
        });
    }
    if let Some(deco) = deco {
        if deco.cycles != cycles {
            violations.push(Violation::StaleDecoration);
        }
        if deco.colors.len() != deco.cycles.len() {
            violations.push(Violation::ColorCountMismatch {
                expected: deco.cycles.len(),
                found: deco.colors.len(),
            });
        }
    }
    ValidationReport { violations }
}

/// Maps an old diagram onto its canonical form.
#[derive(Debug, Clone)]
pub(crate) struct Relabeling {
    /// Old circle to new circle and rotation `r`: `new[t] = old[(r + t) % n]`.
    circles: BTreeMap<CircleId, (CircleId, usize)>,
}

impl Relabeling {
    pub(crate) fn map_side(&self, old: &GaussDiagram, s: ArcSide) -> ArcSide {
        let (circle, r) = self.circles[&s.arc.circle];
        let n = old.circle(s.arc.circle).map_or(0, <[ChordId]>::len);
        let position = if n == 0 {
            0
        } else {
            (s.arc.position + n - r) % n
        };
        ArcSide::new(ArcId::new(circle, position), s.side)
    }
}

/// Breadth-first code of the component containing `start`, reading circles
/// from their entry endpoint. Returns the code, the visit order with
/// rotations, and chord labels in discovery order.
fn component_code(
    d: &GaussDiagram,
    ends: &BTreeMap<ChordId, ChordEnds>,
    start: Endpoint,
) -> (Vec<u64>, Vec<(CircleId, usize)>, Vec<ChordId>) {
    let mut code = Vec::new();
    let mut order = Vec::new();
    let mut labels: BTreeMap<ChordId, u64> = BTreeMap::new();
    let mut discovered = Vec::new();
    let mut visited: BTreeSet<CircleId> = BTreeSet::new();
    let mut queue = VecDeque::new();
    visited.insert(start.circle);
    queue.push_back((start.circle, start.position));
    while let Some((c, r)) = queue.pop_front() {
        let circle = d.circle(c).unwrap_or(&[]);
        let n = circle.len();
        order.push((c, r));
        code.push(c.family as u64);
        code.push(n as u64);
        for t in 0..n {
            let h = circle[(r + t) % n];
            let next = labels.len() as u64;
            let label = *labels.entry(h).or_insert_with(|| {
                discovered.push(h);
                next
            });
            code.push(label);
            code.push(match ends[&h].sign {
                Sign::Positive => 0,
                Sign::Negative => 1,
            });
            let other = ends[&h].on(c.family.opposite());
            if visited.insert(other.circle) {
                queue.push_back((other.circle, other.position));
            }
        }
    }
    (code, order, discovered)
}

pub(crate) fn canonical_relabeling(
    d: &GaussDiagram,
) -> Result<(GaussDiagram, Relabeling), DiagramError> {
    let ends = d.chord_ends()?;
    let mut coded = Vec::new();
    let mut chordless = Vec::new();
    for comp in d.components() {
        let starts: Vec<Endpoint> = comp
            .iter()
            .filter(|c| c.family == Family::Plus)
            .flat_map(|&c| {
                (0..d.circle(c).map_or(0, <[ChordId]>::len)).map(move |position| Endpoint {
                    circle: c,
                    position,
                })
            })
            .collect();
        if starts.is_empty() {
            chordless.extend(comp);
            continue;
        }
        let best = starts
            .into_iter()
            .map(|s| component_code(d, &ends, s))
            .min_by(|a, b| a.0.cmp(&b.0))
            .expect("component has a plus endpoint");
        coded.push(best);
    }
    coded.sort_by(|a, b| a.0.cmp(&b.0));

    let mut chord_map: BTreeMap<ChordId, ChordId> = BTreeMap::new();
    for (_, _, discovered) in &coded {
        for &h in discovered {
            let next = ChordId(chord_map.len() as u32 + 1);
            chord_map.insert(h, next);
        }
    }
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    let mut circles = BTreeMap::new();
    let mut place =
        |c: CircleId, r: usize, plus: &mut Vec<Vec<ChordId>>, minus: &mut Vec<Vec<ChordId>>| {
            let old = d.circle(c).unwrap_or(&[]);
            let n = old.len();
            let seq: Vec<ChordId> = (0..n).map(|t| chord_map[&old[(r + t) % n]]).collect();
            let target = match c.family {
                Family::Plus => plus,
                Family::Minus => minus,
            };
            circles.insert(c, (CircleId::new(c.family, target.len()), r));
            target.push(seq);
        };
    for (_, order, _) in &coded {
        for &(c, r) in order {
            place(c, r, &mut plus, &mut minus);
        }
    }
    for c in chordless {
        place(c, 0, &mut plus, &mut minus);
    }
    let signs = d.signs.iter().map(|(h, &s)| (chord_map[h], s)).collect();
    Ok((
        GaussDiagram::from_parts(plus, minus, signs),
        Relabeling { circles },
    ))
}

/// Deterministic relabeling: equal for diagrams that differ only by chord
/// names, circle rotation and circle order within a family.
pub fn canonicalize(d: &GaussDiagram) -> Result<GaussDiagram, DiagramError> {
    canonical_relabeling(d).map(|(c, _)| c)
}

/// Canonical form of a decorated diagram, colors renumbered by first
/// appearance in cycle order.
pub fn canonicalize_decorated(
    d: &GaussDiagram,
    deco: &Decoration,
) -> Result<(GaussDiagram, Decoration), DiagramError> {
    deco.check_against(d)?;
    let (canon, relabel) = canonical_relabeling(d)?;
    let cycles = trace_cycles(&canon)?;
    let mut colors = vec![ColorId(0); cycles.len()];
    for (i, orbit) in deco.cycles().orbits().iter().enumerate() {
        let mapped = relabel.map_side(d, orbit[0]);
        let j = cycles
            .cycle_of(mapped)
            .expect("relabeling maps sides onto sides");
        colors[j] = deco.colors[i];
    }
    let deco = Decoration::new(cycles, colors)?.renumbered();
    Ok((canon, deco))
}
