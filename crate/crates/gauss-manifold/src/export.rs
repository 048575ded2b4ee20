//! Graphviz export of the ribbon graph and a combinatorial Heegaard layout.

use std::f64::consts::TAU;
use std::fmt::{self, Write as _};

use gauss_manifold_core::topology::genus_undecorated;
use gauss_manifold_core::{
    ArcId, ChordId, CircleId, DiagramError, Family, GaussDiagram, Sign, TopologyError,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExportError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error("the diagram is not connected")]
    Disconnected,
    #[error("need equally many circles in both families, found {plus} plus and {minus} minus")]
    FamilySizesDiffer { plus: usize, minus: usize },
    #[error("surface genus {genus} differs from the {circles} circles per family")]
    GenusMismatch { genus: i64, circles: usize },
}

fn family_color(f: Family) -> &'static str {
    match f {
        Family::Plus => "blue",
        Family::Minus => "red",
    }
}

/// DOT digraph of the ribbon graph: one vertex per chord, labeled with its
/// id and sign, and one edge per arc from the chord it leaves to the chord
/// it reaches. Plus arcs are blue, minus arcs red. A chordless circle
/// becomes a vertex of its own with a loop.
pub fn to_dot(d: &GaussDiagram) -> String {
    let mut out = String::from("digraph gauss {\n    node [shape=circle];\n");
    for (h, s) in d.signs() {
        writeln!(out, "    h{h} [label=\"{h}{s}\"];").unwrap();
    }
    for c in d.circle_ids() {
        let chords = d.circle(c).unwrap_or(&[]);
        let color = family_color(c.family);
        if chords.is_empty() {
            writeln!(
                out,
                "    {c} [shape=doublecircle, label=\"{c}\", color={color}];"
            )
            .unwrap();
            writeln!(out, "    {c} -> {c} [label=\"{c}.0\", color={color}];").unwrap();
            continue;
        }
        for (i, h) in chords.iter().enumerate() {
            let next = chords[(i + 1) % chords.len()];
            writeln!(
                out,
                "    h{h} -> h{next} [label=\"{}\", color={color}];",
                ArcId::new(c, i)
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Orientation of one of the two boundary copies of a plus circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Orientation {
    fn other(self) -> Orientation {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
        }
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Ccw => "ccw",
            Orientation::Cw => "cw",
        })
    }
}

/// A point on a boundary copy: the endpoint at `position` of `circle`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Point {
    pub circle: CircleId,
    pub copy: Orientation,
    pub position: usize,
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.circle, self.copy, self.position)
    }
}

/// The part of a minus circle running along one of its arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Strand {
    pub arc: ArcId,
    pub from: Point,
    pub to: Point,
}

/// The surface cut open along the plus circles: a disc whose outer
/// boundary and `2g - 1` holes are the two copies of each plus circle,
/// with the minus circles drawn as strands between them.
///
/// Boundary `2i` is the counterclockwise copy of plus circle `i` and
/// boundary `2i + 1` the clockwise one; boundary 0 is the outer boundary.
/// A strand reaching a positive chord lands on the clockwise copy and one
/// reaching a negative chord on the counterclockwise copy; it leaves from
/// the other copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeegaardLayout {
    pub genus: usize,
    /// Chords on each plus circle in cyclic order; positions index these.
    pub points: Vec<Vec<ChordId>>,
    pub strands: Vec<Strand>,
}

fn arrival(sign: Sign) -> Orientation {
    match sign {
        Sign::Positive => Orientation::Cw,
        Sign::Negative => Orientation::Ccw,
    }
}

/// Builds the layout of a connected diagram with `g` circles per family
/// and surface genus `g`.
pub fn heegaard(d: &GaussDiagram) -> Result<HeegaardLayout, ExportError> {
    let (plus, minus) = (d.circle_count(Family::Plus), d.circle_count(Family::Minus));
    if plus != minus {
        return Err(ExportError::FamilySizesDiffer { plus, minus });
    }
    if !d.is_connected() {
        return Err(ExportError::Disconnected);
    }
    let genus = genus_undecorated(d)?;
    if genus != plus as i64 {
        return Err(ExportError::GenusMismatch {
            genus,
            circles: plus,
        });
    }
    let ends = d.chord_ends()?;
    let mut strands = Vec::new();
    for (j, circle) in d.circles(Family::Minus).iter().enumerate() {
        let n = circle.len();
        for i in 0..n {
            let (a, b) = (&ends[&circle[i]], &ends[&circle[(i + 1) % n]]);
            strands.push(Strand {
                arc: ArcId::new(CircleId::minus(j), i),
                from: Point {
                    circle: a.plus.circle,
                    copy: arrival(a.sign).other(),
                    position: a.plus.position,
                },
                to: Point {
                    circle: b.plus.circle,
                    copy: arrival(b.sign),
                    position: b.plus.position,
                },
            });
        }
    }
    Ok(HeegaardLayout {
        genus: plus,
        points: d.circles(Family::Plus).to_vec(),
        strands,
    })
}

impl fmt::Display for HeegaardLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "heegaard genus {}", self.genus)?;
        writeln!(
            f,
            "# boundaries: 0 outer, 1..={} inner",
            (2 * self.genus).saturating_sub(1)
        )?;
        for (i, chords) in self.points.iter().enumerate() {
            let c = CircleId::plus(i);
            writeln!(f, "pair {c} = {} {}", 2 * i, 2 * i + 1)?;
            write!(f, "points {c} =")?;
            for h in chords {
                write!(f, " {h}")?;
            }
            writeln!(f)?;
        }
        for s in &self.strands {
            writeln!(f, "strand {} = {} -> {}", s.arc, s.from, s.to)?;
        }
        Ok(())
    }
}

const SIZE: f64 = 480.0;
const STRAND_COLORS: [&str; 6] = [
    "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b",
];

/// Center and radius of boundary `k`.
fn boundary_circle(layout: &HeegaardLayout, k: usize) -> (f64, f64, f64) {
    let c = SIZE / 2.0;
    let outer = SIZE / 2.0 - 20.0;
    if k == 0 {
        return (c, c, outer);
    }
    let holes = 2 * layout.genus - 1;
    if holes == 1 {
        return (c, c, outer / 3.0);
    }
    let ring = outer * 0.55;
    let r = (outer * 0.35).min(ring * (std::f64::consts::PI / holes as f64).sin() * 0.8);
    let t = TAU * (k - 1) as f64 / holes as f64;
    (c + ring * t.cos(), c - ring * t.sin(), r)
}

fn point_xy(layout: &HeegaardLayout, p: &Point) -> (f64, f64) {
    let i = p.circle.index;
    let k = 2 * i + usize::from(p.copy == Orientation::Cw);
    let (cx, cy, r) = boundary_circle(layout, k);
    let n = layout.points[i].len().max(1) as f64;
    let mut t = TAU * p.position as f64 / n;
    if p.copy == Orientation::Cw {
        t = -t;
    }
    (cx + r * t.cos(), cy - r * t.sin())
}

/// Best-effort drawing of the layout: straight strands, no attempt to
/// avoid crossings.
pub fn to_svg(layout: &HeegaardLayout) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    )
    .unwrap();
    for k in 0..2 * layout.genus {
        let (cx, cy, r) = boundary_circle(layout, k);
        let fill = if k == 0 { "#f4f4f4" } else { "white" };
        writeln!(
            out,
            "  <circle cx=\"{cx:.1}\" cy=\"{cy:.1}\" r=\"{r:.1}\" fill=\"{fill}\" stroke=\"blue\"/>"
        )
        .unwrap();
        let copy = if k % 2 == 0 { "ccw" } else { "cw" };
        let (lx, ly) = if k == 0 {
            (cx, cy - r - 4.0)
        } else {
            (cx, cy + 4.0)
        };
        writeln!(
            out,
            "  <text x=\"{lx:.1}\" y=\"{ly:.1}\" font-size=\"11\" text-anchor=\"middle\">{} {copy}</text>",
            CircleId::plus(k / 2)
        )
        .unwrap();
    }
    for s in &layout.strands {
        let (x1, y1) = point_xy(layout, &s.from);
        let (x2, y2) = point_xy(layout, &s.to);
        let color = STRAND_COLORS[s.arc.circle.index % STRAND_COLORS.len()];
        writeln!(
            out,
            "  <line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" stroke=\"{color}\"><title>{}</title></line>",
            s.arc
        )
        .unwrap();
    }
    for (i, chords) in layout.points.iter().enumerate() {
        for (position, h) in chords.iter().enumerate() {
            for copy in [Orientation::Ccw, Orientation::Cw] {
                let p = Point {
                    circle: CircleId::plus(i),
                    copy,
                    position,
                };
                let (x, y) = point_xy(layout, &p);
                writeln!(
                    out,
                    "  <circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"2.5\"><title>chord {h}</title></circle>"
                )
                .unwrap();
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
