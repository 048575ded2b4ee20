//! Seeded random diagrams for property and acceptance suites.

use std::collections::BTreeMap;

use gauss_manifold_core::{trace_cycles, ChordId, ColorId, Decoration, GaussDiagram, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Size limits of generated diagrams.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    pub circles_per_family: usize,
    pub chords: usize,
    /// Colors drawn from `1..=palette` when a decoration repeats colors.
    pub palette: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            circles_per_family: 4,
            chords: 12,
            palette: 4,
        }
    }
}

/// A random valid diagram and decoration.
///
/// Each chord lands on a random circle of each family at a random place in
/// its cyclic order; circles that receive no chord stay as bubbles. Half
/// the decorations color every cycle distinctly, the rest draw colors from
/// the palette.
pub fn random_diagram<R: Rng>(rng: &mut R, limits: Limits) -> (GaussDiagram, Decoration) {
    let np = rng.gen_range(1..=limits.circles_per_family);
    let nm = rng.gen_range(1..=limits.circles_per_family);
    let h = rng.gen_range(0..=limits.chords);
    let mut plus: Vec<Vec<ChordId>> = vec![Vec::new(); np];
    let mut minus: Vec<Vec<ChordId>> = vec![Vec::new(); nm];
    let mut signs = BTreeMap::new();
    for k in 1..=h as u32 {
        let id = ChordId(k);
        for circles in [&mut plus, &mut minus] {
            let c = rng.gen_range(0..circles.len());
            let at = rng.gen_range(0..=circles[c].len());
            circles[c].insert(at, id);
        }
        let sign = if rng.gen() {
            Sign::Positive
        } else {
            Sign::Negative
        };
        signs.insert(id, sign);
    }
    let d = GaussDiagram::new(plus, minus, signs).expect("generated diagrams are valid");
    let cycles = trace_cycles(&d).expect("valid diagrams trace");
    let deco = if rng.gen() {
        Decoration::distinct(cycles)
    } else {
        let colors = (0..cycles.len())
            .map(|_| ColorId(rng.gen_range(1..=limits.palette)))
            .collect();
        Decoration::new(cycles, colors).expect("one color per cycle")
    };
    (d, deco)
}

/// `count` diagrams from a fixed seed.
pub fn corpus(seed: u64, count: usize, limits: Limits) -> Vec<(GaussDiagram, Decoration)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| random_diagram(&mut rng, limits))
        .collect()
}
