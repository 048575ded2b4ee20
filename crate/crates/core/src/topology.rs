//! Surface genus, boundary graphs, boundary genera and classification.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{ArcSide, ColorId, Decoration, DiagramError, Family, GaussDiagram};
use crate::tracing::build_ribbon_map;
use crate::util::DisjointSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TopologyError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("{chords} chords and {cycles} cycles have odd difference")]
    Parity { chords: usize, cycles: usize },
    #[error("family sizes differ: {plus} plus circles, {minus} minus circles")]
    FamilySizesDiffer { plus: usize, minus: usize },
    #[error("diagram is not connected")]
    Disconnected,
}

/// Number of cycles minus number of distinct colors.
pub fn color_excess(deco: &Decoration) -> usize {
    deco.cycle_count() - deco.color_count()
}

/// Genus of the surface: `1 + excess + (chords - cycles) / 2`.
///
/// The empty diagram is the sphere, genus 0. For a disconnected surface
/// the value is `(2 - χ) / 2` and may be negative.
pub fn genus(d: &GaussDiagram, deco: &Decoration) -> Result<i64, TopologyError> {
    deco.check_against(d)?;
    genus_checked(d, deco)
}

fn genus_checked(d: &GaussDiagram, deco: &Decoration) -> Result<i64, TopologyError> {
    if d.is_empty() {
        return Ok(0);
    }
    let (h, c) = (d.chord_count(), deco.cycle_count());
    if (h + c) % 2 == 1 {
        return Err(TopologyError::Parity {
            chords: h,
            cycles: c,
        });
    }
    Ok(1 + color_excess(deco) as i64 + (h as i64 - c as i64) / 2)
}

/// Genus with every cycle its own color.
pub fn genus_undecorated(d: &GaussDiagram) -> Result<i64, TopologyError> {
    genus(d, &Decoration::traced(d)?)
}

/// Genus from the Euler characteristic of the ribbon map with one
/// disc-with-holes glued per color. Independent of the cycle tracer.
pub fn genus_by_euler(d: &GaussDiagram, deco: &Decoration) -> Result<i64, TopologyError> {
    if d.is_empty() {
        return Ok(0);
    }
    let map = build_ribbon_map(d)?;
    let boundaries = map.boundary_count() as i64;
    let colors = deco.color_count() as i64;
    let chi = map.euler_characteristic() + 2 * colors - boundaries;
    if chi % 2 != 0 {
        return Err(TopologyError::Parity {
            chords: d.chord_count(),
            cycles: boundaries as usize,
        });
    }
    Ok((2 - chi) / 2)
}

/// Color graph of one side of the splitting.
///
/// `which = Plus` is the graph whose components count pieces of the
/// surface cut along the plus curves; its edges come from minus-family arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryGraph {
    pub which: Family,
    pub vertices: Vec<ColorId>,
    pub edges: Vec<(ColorId, ColorId)>,
}

impl BoundaryGraph {
    pub fn component_count(&self) -> usize {
        let index: BTreeMap<ColorId, usize> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, &c)| (c, i))
            .collect();
        let mut ds = DisjointSet::new(self.vertices.len());
        for (p, q) in &self.edges {
            ds.union(index[p], index[q]);
        }
        ds.count()
    }
}

/// Both boundary graphs, plus graph first.
pub fn boundary_graphs(
    d: &GaussDiagram,
    deco: &Decoration,
) -> Result<(BoundaryGraph, BoundaryGraph), DiagramError> {
    deco.check_against(d)?;
    Ok(boundary_graphs_checked(d, deco))
}

fn boundary_graphs_checked(d: &GaussDiagram, deco: &Decoration) -> (BoundaryGraph, BoundaryGraph) {
    let vertices: Vec<ColorId> = deco.color_set().into_iter().collect();
    let build = |which: Family| {
        let edges = d
            .arcs()
            .into_iter()
            .filter(|a| a.circle.family == which.opposite())
            .map(|a| {
                (
                    deco.color_of(ArcSide::co(a)).expect("traced side"),
                    deco.color_of(ArcSide::counter(a)).expect("traced side"),
                )
            })
            .collect();
        BoundaryGraph {
            which,
            vertices: vertices.clone(),
            edges,
        }
    };
    (build(Family::Plus), build(Family::Minus))
}

/// Why a diagram cannot describe a pair of compression bodies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvalidReason {
    NegativeBoundaryGenus { plus: i64, minus: i64 },
}

/// Classification from the boundary genera.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Closed,
    KnotComplement,
    CompressionBodies { plus: i64, minus: i64 },
    Invalid(InvalidReason),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Closed => f.write_str("closed"),
            Verdict::KnotComplement => f.write_str("knot-complement"),
            Verdict::CompressionBodies { plus, minus } => {
                write!(f, "compression-bodies({plus},{minus})")
            }
            Verdict::Invalid(InvalidReason::NegativeBoundaryGenus { plus, minus }) => {
                write!(f, "invalid: negative boundary genus ({plus},{minus})")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryReport {
    pub genus: i64,
    pub excess: usize,
    pub k_plus: usize,
    pub k_minus: usize,
    pub dg_plus: i64,
    pub dg_minus: i64,
    pub verdict: Verdict,
}

/// `∂g± = k± - g± + genus - 1` and the resulting verdict.
pub fn boundary_genera(
    d: &GaussDiagram,
    deco: &Decoration,
) -> Result<BoundaryReport, TopologyError> {
    deco.check_against(d)?;
    boundary_genera_checked(d, deco)
}

/// `boundary_genera` for a decoration already known to match `d`.
pub(crate) fn boundary_genera_checked(
    d: &GaussDiagram,
    deco: &Decoration,
) -> Result<BoundaryReport, TopologyError> {
    let g = genus_checked(d, deco)?;
    let (cp, cm) = boundary_graphs_checked(d, deco);
    let (k_plus, k_minus) = if d.is_empty() {
        (1, 1)
    } else {
        (cp.component_count(), cm.component_count())
    };
    let dg_plus = k_plus as i64 - d.circle_count(Family::Plus) as i64 + g - 1;
    let dg_minus = k_minus as i64 - d.circle_count(Family::Minus) as i64 + g - 1;
    let verdict = if dg_plus < 0 || dg_minus < 0 {
        Verdict::Invalid(InvalidReason::NegativeBoundaryGenus {
            plus: dg_plus,
            minus: dg_minus,
        })
    } else {
        match (dg_plus, dg_minus) {
            (0, 0) => Verdict::Closed,
            (0, 1) | (1, 0) => Verdict::KnotComplement,
            (plus, minus) => Verdict::CompressionBodies { plus, minus },
        }
    };
    Ok(BoundaryReport {
        genus: g,
        excess: color_excess(deco),
        k_plus,
        k_minus,
        dg_plus,
        dg_minus,
        verdict,
    })
}

/// True iff the diagram's components are linked through shared colors.
pub fn r_connected(d: &GaussDiagram, deco: &Decoration) -> Result<bool, DiagramError> {
    deco.check_against(d)?;
    let comps = d.components();
    let mut owner: BTreeMap<crate::diagram::CircleId, usize> = BTreeMap::new();
    for (i, comp) in comps.iter().enumerate() {
        for &c in comp {
            owner.insert(c, i);
        }
    }
    let mut ds = DisjointSet::new(comps.len());
    let mut first_with: BTreeMap<ColorId, usize> = BTreeMap::new();
    for (i, orbit) in deco.cycles().orbits().iter().enumerate() {
        let comp = owner[&orbit[0].arc.circle];
        match first_with.get(&deco.color_of_cycle(i)) {
            Some(&other) => {
                ds.union(other, comp);
            }
            None => {
                first_with.insert(deco.color_of_cycle(i), comp);
            }
        }
    }
    Ok(ds.count() <= 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReducibilityHint {
    /// The all-distinct genus equals the circle count: the curves cut the
    /// surface into discs.
    FillsDiscs,
    /// Otherwise; only a hint for diagrams not known to be realizable.
    Reducible,
}

pub fn reducibility_hint(d: &GaussDiagram) -> Result<ReducibilityHint, TopologyError> {
    let (plus, minus) = (d.circle_count(Family::Plus), d.circle_count(Family::Minus));
    if plus != minus {
        return Err(TopologyError::FamilySizesDiffer { plus, minus });
    }
    if !d.is_connected() {
        return Err(TopologyError::Disconnected);
    }
    Ok(if genus_undecorated(d)? == plus as i64 {
        ReducibilityHint::FillsDiscs
    } else {
        ReducibilityHint::Reducible
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;
    use crate::diagram::{ChordId, Sign};
    use crate::tracing::trace_cycles;
    use alloc::vec;

    fn bubble(colors: [u32; 2]) -> (GaussDiagram, Decoration) {
        let d = GaussDiagram::from_parts(vec![vec![]], vec![], BTreeMap::new());
        let deco =
            Decoration::new(trace_cycles(&d).unwrap(), colors.map(ColorId).to_vec()).unwrap();
        (d, deco)
    }

    #[test]
    fn excess_counts_shared_colors() {
        let (d, deco) = builtin::lens(5, 1).unwrap();
        assert_eq!(color_excess(&deco), 0);
        let (_, st) = builtin::solid_torus();
        assert_eq!(color_excess(&st), 2);
        let merged = Decoration::uniform(trace_cycles(&d).unwrap().clone(), ColorId(1));
        assert_eq!(color_excess(&merged), 4);
        let three = Decoration::uniform(
            crate::tracing::CycleSet::from_orbits(vec![vec![], vec![], vec![]]),
            ColorId(1),
        );
        assert_eq!(color_excess(&three), 2);
    }

    #[test]
    fn genus_examples() {
        let (s3, deco) = builtin::s3();
        assert_eq!(genus(&s3, &deco), Ok(1));
        let (d, same) = bubble([1, 1]);
        assert_eq!(genus(&d, &same), Ok(1));
        assert_eq!(genus_by_euler(&d, &same), Ok(1));
        let (d, distinct) = bubble([1, 2]);
        assert_eq!(genus(&d, &distinct), Ok(0));
        assert_eq!(genus_by_euler(&d, &distinct), Ok(0));
        assert_eq!(
            genus(
                &GaussDiagram::empty(),
                &Decoration::traced(&GaussDiagram::empty()).unwrap()
            ),
            Ok(0)
        );
    }

    #[test]
    fn s3_boundary_graphs_are_self_loops() {
        let (d, deco) = builtin::s3();
        let (cp, cm) = boundary_graphs(&d, &deco).unwrap();
        for g in [&cp, &cm] {
            assert_eq!(g.vertices.len(), 1);
            assert_eq!(g.edges.len(), 1);
            assert_eq!(g.edges[0].0, g.edges[0].1);
            assert_eq!(g.component_count(), 1);
        }
    }

    #[test]
    fn edge_counts_follow_opposite_family() {
        let (d, deco) = builtin::solid_torus();
        let (cp, cm) = boundary_graphs(&d, &deco).unwrap();
        assert_eq!(cp.edges.len(), 1);
        assert_eq!(cm.edges.len(), 2);
        assert_eq!((cp.component_count(), cm.component_count()), (1, 1));
    }

    #[test]
    fn unbridged_colors_give_two_components() {
        let (d, deco) = bubble([1, 2]);
        let (cp, cm) = boundary_graphs(&d, &deco).unwrap();
        assert_eq!(cp.component_count(), 2);
        assert_eq!(cm.component_count(), 1);
    }

    #[test]
    fn verdicts_of_builtins() {
        let (d, deco) = builtin::s3();
        let r = boundary_genera(&d, &deco).unwrap();
        assert_eq!((r.dg_plus, r.dg_minus, r.verdict), (0, 0, Verdict::Closed));
        let (d, deco) = builtin::lens(5, 1).unwrap();
        let r = boundary_genera(&d, &deco).unwrap();
        assert_eq!((r.k_plus, r.k_minus, r.verdict), (1, 1, Verdict::Closed));
        let (d, deco) = builtin::solid_torus();
        let r = boundary_genera(&d, &deco).unwrap();
        assert_eq!(
            (r.genus, r.k_plus, r.k_minus, r.dg_plus, r.dg_minus),
            (2, 1, 1, 0, 1)
        );
        assert_eq!(r.verdict, Verdict::KnotComplement);
    }

    #[test]
    fn empty_diagram_is_closed_sphere() {
        let d = GaussDiagram::empty();
        let deco = Decoration::traced(&d).unwrap();
        let r = boundary_genera(&d, &deco).unwrap();
        assert_eq!((r.genus, r.verdict), (0, Verdict::Closed));
    }

    fn two_pairs(colors: [u32; 2]) -> (GaussDiagram, Decoration) {
        let d = GaussDiagram::from_parts(
            vec![vec![ChordId(1)], vec![ChordId(2)]],
            vec![vec![ChordId(1)], vec![ChordId(2)]],
            [(ChordId(1), Sign::Positive), (ChordId(2), Sign::Positive)]
                .into_iter()
                .collect(),
        );
        let deco =
            Decoration::new(trace_cycles(&d).unwrap(), colors.map(ColorId).to_vec()).unwrap();
        (d, deco)
    }

    #[test]
    fn r_connectedness() {
        let (d, deco) = builtin::lens(5, 2).unwrap();
        assert!(r_connected(&d, &deco).unwrap());
        let (d, deco) = two_pairs([1, 2]);
        assert!(!r_connected(&d, &deco).unwrap());
        let (d, deco) = two_pairs([1, 1]);
        assert!(r_connected(&d, &deco).unwrap());
    }

    #[test]
    fn reducibility() {
        let (d, _) = builtin::s3();
        assert_eq!(reducibility_hint(&d), Ok(ReducibilityHint::FillsDiscs));
        let (d, _) = builtin::lens(5, 1).unwrap();
        assert_eq!(reducibility_hint(&d), Ok(ReducibilityHint::FillsDiscs));
        let (d, _) = two_pairs([1, 2]);
        assert_eq!(reducibility_hint(&d), Err(TopologyError::Disconnected));
        let (d, _) = builtin::solid_torus();
        assert_eq!(
            reducibility_hint(&d),
            Err(TopologyError::FamilySizesDiffer { plus: 2, minus: 1 })
        );
    }

    #[test]
    fn euler_identity_holds() {
        for (d, deco) in [
            builtin::s3(),
            builtin::lens(5, 2).unwrap(),
            builtin::solid_torus(),
        ] {
            let r = boundary_genera(&d, &deco).unwrap();
            for (k, dg, fam) in [
                (r.k_plus, r.dg_plus, Family::Plus),
                (r.k_minus, r.dg_minus, Family::Minus),
            ] {
                let gf = d.circle_count(fam) as i64;
                assert_eq!(2 * (k as i64 - dg), 2 - 2 * r.genus + 2 * gf);
            }
        }
    }
}
