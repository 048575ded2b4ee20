//! Fundamental-group presentations, intersection matrices and first homology.

mod matrix;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};

pub use matrix::{smith_normal_form, IntMatrix, SmithForm};

use crate::diagram::{
    ArcId, ArcSide, ChordId, Decoration, DiagramError, Family, GaussDiagram, Side,
};
use crate::moves::{normalize_colors, MoveError};
use crate::topology::{boundary_genera, genus_undecorated, TopologyError, Verdict};
use crate::util::DisjointSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error("family sizes differ: {plus} plus circles, {minus} minus circles")]
    FamilySizesDiffer { plus: usize, minus: usize },
    #[error("diagram is not connected")]
    Disconnected,
    #[error("surface genus {genus} differs from the {circles} circles per family")]
    GenusMismatch { genus: i64, circles: usize },
    #[error("some color covers several cycles; normalize the colors first")]
    MultiCycleColors,
    #[error("normalization failed: {0}")]
    Normalize(#[from] MoveError),
    #[error("determinant and homology disagree")]
    Inconsistent,
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn exponent(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    fn inverted(self) -> Letter {
        Letter::new(self.generator, !self.inverse)
    }
}

/// Removes adjacent `x x^-1` pairs.
pub fn free_reduce(word: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inverted()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresentationWarning {
    /// A family does not cut the surface into one piece, so the
    /// presentation may describe a different manifold.
    SeparatingFamily { k_plus: usize, k_minus: usize },
    /// Chordless circles with distinct colors encode genus-0 pieces.
    ChordlessCircles,
}

impl fmt::Display for PresentationWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PresentationWarning::SeparatingFamily { k_plus, k_minus } => write!(
                f,
                "families cut the surface into {k_plus} and {k_minus} pieces"
            ),
            PresentationWarning::ChordlessCircles => {
                f.write_str("chordless circles with distinct colors encode genus-0 pieces")
            }
        }
    }
}

/// A finite group presentation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<Letter>>,
    pub warnings: Vec<PresentationWarning>,
}

impl Presentation {
    /// Exponent sums: rows are generators, columns relators.
    pub fn relation_matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.generators.len(), self.relators.len());
        for (j, r) in self.relators.iter().enumerate() {
            for l in r {
                m.add_to(l.generator, j, l.exponent());
            }
        }
        m
    }

    pub fn abelianization(&self) -> HomologyGroup {
        HomologyGroup::cokernel(&self.relation_matrix())
    }

    fn write_word(&self, f: &mut fmt::Formatter<'_>, word: &[Letter]) -> fmt::Result {
        if word.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < word.len() {
            let mut j = i;
            while j < word.len() && word[j] == word[i] {
                j += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let name = &self.generators[word[i].generator];
            let power = (j - i) as i64 * word[i].exponent();
            if power == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{power}")?;
            }
            i = j;
        }
        Ok(())
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⟨")?;
        f.write_str(&self.generators.join(", "))?;
        f.write_str(" | ")?;
        for (k, r) in self.relators.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            self.write_word(f, r)?;
        }
        f.write_str("⟩")
    }
}

/// A finitely generated abelian group: free rank plus torsion factors > 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    /// Cokernel of a generators-by-relators matrix.
    pub fn cokernel(m: &IntMatrix) -> HomologyGroup {
        let snf = smith_normal_form(m);
        let factors = snf.invariant_factors();
        HomologyGroup {
            rank: m.rows() - factors.len(),
            torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        f.write_str(&parts.join(" + "))
    }
}

/// Signed chord counts between plus circle `i` (row) and minus circle `j`.
pub fn intersection_matrix(d: &GaussDiagram) -> Result<IntMatrix, DiagramError> {
    let ends = d.chord_ends()?;
    let mut m = IntMatrix::zeros(d.circle_count(Family::Plus), d.circle_count(Family::Minus));
    for e in ends.values() {
        m.add_to(e.plus.circle.index, e.minus.circle.index, e.sign.value());
    }
    Ok(m)
}

fn check_closed(d: &GaussDiagram) -> Result<(), AlgebraError> {
    d.chord_ends()?;
    let (plus, minus) = (d.circle_count(Family::Plus), d.circle_count(Family::Minus));
    if plus != minus {
        return Err(AlgebraError::FamilySizesDiffer { plus, minus });
    }
    if !d.is_connected() {
        return Err(AlgebraError::Disconnected);
    }
    let genus = genus_undecorated(d)?;
    if genus != plus as i64 {
        return Err(AlgebraError::GenusMismatch {
            genus,
            circles: plus,
        });
    }
    Ok(())
}

fn generator_names(n: usize) -> Vec<String> {
    if n == 1 {
        return alloc::vec!["g".to_string()];
    }
    (1..=n).map(|i| format!("g{i}")).collect()
}

/// One generator per plus circle; relator `j` reads minus circle `j`,
/// one letter per chord, inverted for negative chords.
pub fn pi1_closed(d: &GaussDiagram) -> Result<Presentation, AlgebraError> {
    check_closed(d)?;
    let ends = d.chord_ends()?;
    let relators = d
        .circles(Family::Minus)
        .iter()
        .map(|circle| {
            circle
                .iter()
                .map(|h| {
                    let e = ends[h];
                    Letter::new(e.plus.circle.index, e.sign.value() < 0)
                })
                .collect()
        })
        .collect();
    let deco = Decoration::traced(d)?;
    let report = boundary_genera(d, &deco)?;
    let mut warnings = Vec::new();
    if report.k_plus > 1 || report.k_minus > 1 {
        warnings.push(PresentationWarning::SeparatingFamily {
            k_plus: report.k_plus,
            k_minus: report.k_minus,
        });
    }
    Ok(Presentation {
        generators: generator_names(d.circle_count(Family::Plus)),
        relators,
        warnings,
    })
}

/// Presentation from a spanning tree of the chord graph: generators are
/// the arcs outside the tree, with one relator per cycle and per circle.
pub fn pi1_general(d: &GaussDiagram, deco: &Decoration) -> Result<Presentation, AlgebraError> {
    deco.check_against(d)?;
    if !deco.is_all_distinct() {
        return Err(AlgebraError::MultiCycleColors);
    }
    let ends = d.chord_ends()?;
    let mut vertex: BTreeMap<ChordId, usize> = BTreeMap::new();
    for &h in ends.keys() {
        let next = vertex.len();
        vertex.insert(h, next);
    }
    let mut chordless = Vec::new();
    let mut arc_vertices: BTreeMap<ArcId, (usize, usize)> = BTreeMap::new();
    let mut vertices = vertex.len();
    for c in d.circle_ids() {
        let circle = d.circle(c).unwrap_or(&[]);
        if circle.is_empty() {
            chordless.push(c);
            arc_vertices.insert(ArcId::new(c, 0), (vertices, vertices));
            vertices += 1;
            continue;
        }
        for p in 0..circle.len() {
            let (s, t) = (circle[p], circle[(p + 1) % circle.len()]);
            arc_vertices.insert(ArcId::new(c, p), (vertex[&s], vertex[&t]));
        }
    }
    let mut ds = DisjointSet::new(vertices);
    let mut generator_of: BTreeMap<ArcId, usize> = BTreeMap::new();
    let mut generators = Vec::new();
    for (&arc, &(s, t)) in &arc_vertices {
        if !ds.union(s, t) {
            generator_of.insert(arc, generators.len());
            generators.push(arc.to_string());
        }
    }
    if ds.count() > 1 {
        return Err(AlgebraError::Disconnected);
    }
    let read = |sides: &mut dyn Iterator<Item = ArcSide>| -> Vec<Letter> {
        let word: Vec<Letter> = sides
            .filter_map(|s| {
                generator_of
                    .get(&s.arc)
                    .map(|&g| Letter::new(g, s.side == Side::Counter))
            })
            .collect();
        free_reduce(&word)
    };
    let mut relators = Vec::new();
    for orbit in deco.cycles().orbits() {
        relators.push(read(&mut orbit.iter().copied()));
    }
    for c in d.circle_ids() {
        let arcs = d.arcs_of(c)?;
        relators.push(read(&mut arcs.into_iter().map(ArcSide::co)));
    }
    let mut warnings = Vec::new();
    if !chordless.is_empty() {
        warnings.push(PresentationWarning::ChordlessCircles);
    }
    Ok(Presentation {
        generators,
        relators,
        warnings,
    })
}

/// First homology.
///
/// Closed diagrams with distinct colors use the intersection matrix;
/// other distinctly colored diagrams use the spanning-tree presentation.
pub fn h1(d: &GaussDiagram, deco: &Decoration) -> Result<HomologyGroup, AlgebraError> {
    deco.check_against(d)?;
    if !deco.is_all_distinct() {
        return Err(AlgebraError::MultiCycleColors);
    }
    if check_closed(d).is_ok() && boundary_genera(d, deco)?.verdict == Verdict::Closed {
        return Ok(HomologyGroup::cokernel(&intersection_matrix(d)?));
    }
    Ok(pi1_general(d, deco)?.abelianization())
}

/// [`h1`] after giving every cycle its own color by R-moves.
pub fn h1_normalized(d: &GaussDiagram, deco: &Decoration) -> Result<HomologyGroup, AlgebraError> {
    if deco.is_all_distinct() {
        return h1(d, deco);
    }
    let (nd, ndeco, _) = normalize_colors(d, deco)?;
    h1(&nd, &ndeco)
}

/// True iff the intersection matrix is unimodular.
pub fn is_homology_sphere(d: &GaussDiagram) -> Result<bool, AlgebraError> {
    check_closed(d)?;
    let a = intersection_matrix(d)?;
    let unimodular = a.determinant().is_some_and(|det| det.abs().is_one());
    let trivial = HomologyGroup::cokernel(&a).is_trivial();
    if unimodular != trivial {
        return Err(AlgebraError::Inconsistent);
    }
    Ok(unimodular)
}
