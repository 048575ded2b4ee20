//! Built-in example diagrams.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::diagram::{ChordId, ColorId, Decoration, GaussDiagram, Sign};
use crate::tracing::trace_cycles;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuiltinError {
    #[error("unknown example {0:?}")]
    UnknownName(String),
    #[error("lens space parameters must satisfy 0 < q < p with gcd(p, q) = 1, got {p}:{q}")]
    LensParameters { p: u32, q: u32 },
}

/// Names accepted by [`by_name`]; `lens:P:Q` stands for a family.
pub const NAMES: [&str; 5] = [
    "s3",
    "lens:P:Q",
    "poincare-relators",
    "hempel-relators",
    "solid-torus",
];

fn traced(d: GaussDiagram) -> (GaussDiagram, Decoration) {
    let deco = Decoration::traced(&d).expect("built-in diagrams are valid");
    (d, deco)
}

fn ids(xs: &[u32]) -> Vec<ChordId> {
    xs.iter().map(|&x| ChordId(x)).collect()
}

/// One circle per family joined by a single positive chord.
pub fn s3() -> (GaussDiagram, Decoration) {
    let signs = BTreeMap::from([(ChordId(1), Sign::Positive)]);
    traced(GaussDiagram::from_parts(
        vec![ids(&[1])],
        vec![ids(&[1])],
        signs,
    ))
}

/// The genus-1 splitting of `L(p, q)`: chords `1..=p` in order on the plus
/// circle, visited with step `q` on the minus circle, all positive.
pub fn lens(p: u32, q: u32) -> Result<(GaussDiagram, Decoration), BuiltinError> {
    if q == 0 || q >= p || p.gcd(&q) != 1 {
        return Err(BuiltinError::LensParameters { p, q });
    }
    let plus: Vec<u32> = (1..=p).collect();
    let minus: Vec<u32> = (0..p).map(|t| 1 + (t * q) % p).collect();
    let signs = (1..=p).map(|h| (ChordId(h), Sign::Positive)).collect();
    Ok(traced(GaussDiagram::from_parts(
        vec![ids(&plus)],
        vec![ids(&minus)],
        signs,
    )))
}

/// Builds a diagram whose minus circles spell the given relators.
///
/// Each relator is a list of `(generator, exponent)` with exponent ±1;
/// letters become chords numbered in reading order. `plus_orders[k]` is the
/// cyclic order of chords on plus circle `k`.
fn relator_diagram(relators: &[&[(usize, i64)]], plus_orders: &[&[u32]]) -> GaussDiagram {
    let mut minus = Vec::new();
    let mut signs = BTreeMap::new();
    let mut next = 1u32;
    for r in relators {
        let mut circle = Vec::new();
        for &(_, e) in r.iter() {
            let sign = if e > 0 {
                Sign::Positive
            } else {
                Sign::Negative
            };
            signs.insert(ChordId(next), sign);
            circle.push(ChordId(next));
            next += 1;
        }
        minus.push(circle);
    }
    let plus = plus_orders.iter().map(|o| ids(o)).collect();
    GaussDiagram::from_parts(plus, minus, signs)
}

/// Relators `g1^-4 g2 g1 g2` and `g1 g2^-2 g1 g2`.
pub(crate) const POINCARE_RELATORS: [&[(usize, i64)]; 2] = [
    &[(0, -1), (0, -1), (0, -1), (0, -1), (1, 1), (0, 1), (1, 1)],
    &[(0, 1), (1, -1), (1, -1), (0, 1), (1, 1)],
];

/// Relators `g1 g2^-1 g1^-1 g2^2 g1^-1 g2^-1` and `g1 g2 g1 g2^-1 g1^-1 g2^-1`.
pub(crate) const HEMPEL_RELATORS: [&[(usize, i64)]; 2] = [
    &[(0, 1), (1, -1), (0, -1), (1, 1), (1, 1), (0, -1), (1, -1)],
    &[(0, 1), (1, 1), (0, 1), (1, -1), (0, -1), (1, -1)],
];

/// Genus-2 diagram whose minus circles read the Poincaré sphere relators.
///
/// The plus-circle orders are a reconstruction: up to mirror image they
/// are the only cyclic orders giving surface genus 2 with both families
/// non-separating. The relators themselves are exact.
pub fn poincare_relators() -> (GaussDiagram, Decoration) {
    traced(relator_diagram(&POINCARE_RELATORS, &POINCARE_PLUS))
}

/// Genus-2 diagram whose minus circles read the relators of Hempel's
/// homology sphere. Plus-circle orders are reconstructed as for
/// [`poincare_relators`].
pub fn hempel_relators() -> (GaussDiagram, Decoration) {
    traced(relator_diagram(&HEMPEL_RELATORS, &HEMPEL_PLUS))
}

pub(crate) const POINCARE_PLUS: [&[u32]; 2] = [&[1, 2, 3, 4, 11, 6, 8], &[5, 12, 7, 9, 10]];
pub(crate) const HEMPEL_PLUS: [&[u32]; 2] = [&[1, 8, 3, 12, 6, 10], &[2, 11, 5, 4, 13, 7, 9]];

/// Knot-complement encoding of genus 2: the sphere pair plus a chordless
/// plus circle, every cycle one color.
pub fn solid_torus() -> (GaussDiagram, Decoration) {
    let signs = BTreeMap::from([(ChordId(1), Sign::Positive)]);
    let d = GaussDiagram::from_parts(vec![ids(&[1]), vec![]], vec![ids(&[1])], signs);
    let deco = Decoration::uniform(trace_cycles(&d).expect("valid"), ColorId(1));
    (d, deco)
}

/// Looks up a built-in example by name.
pub fn by_name(name: &str) -> Result<(GaussDiagram, Decoration), BuiltinError> {
    match name {
        "s3" => Ok(s3()),
        "poincare-relators" => Ok(poincare_relators()),
        "hempel-relators" => Ok(hempel_relators()),
        "solid-torus" => Ok(solid_torus()),
        _ => {
            let unknown = || BuiltinError::UnknownName(name.into());
            let rest = name.strip_prefix("lens:").ok_or_else(unknown)?;
            let (p, q) = rest.split_once(':').ok_or_else(unknown)?;
            let p = p.parse().map_err(|_| unknown())?;
            let q = q.parse().map_err(|_| unknown())?;
            lens(p, q)
        }
    }
}
