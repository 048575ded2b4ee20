//! Diagram edits that remember where every new arc came from, and color
//! transfer from old cycles to new ones along that ancestry.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::MoveError;
use crate::diagram::{
    ArcId, ArcSide, ChordId, CircleId, ColorId, Decoration, Family, GaussDiagram, Sign,
};
use crate::tracing::CycleSet;
use crate::util::DisjointSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Entry {
    /// Endpoint at this position of the origin circle.
    Old(usize),
    New(ChordId),
}

#[derive(Debug, Clone)]
pub(crate) struct EditCircle {
    /// Index of the old circle (same family) this one descends from.
    pub origin: Option<usize>,
    pub entries: Vec<Entry>,
}

impl EditCircle {
    fn identity(index: usize, len: usize) -> Self {
        EditCircle {
            origin: Some(index),
            entries: (0..len).map(Entry::Old).collect(),
        }
    }

    /// Inserts `chords` right after old position `position`, or into an
    /// empty circle.
    pub fn insert_after(&mut self, position: usize, chords: &[ChordId]) {
        let at = if self.entries.is_empty() {
            0
        } else {
            1 + self
                .entries
                .iter()
                .position(|&e| e == Entry::Old(position))
                .expect("old position present")
        };
        for (k, &h) in chords.iter().enumerate() {
            self.entries.insert(at + k, Entry::New(h));
        }
    }

    /// Inserts `chord` right before old position `position`.
    pub fn insert_before(&mut self, position: usize, chord: ChordId) {
        let at = self
            .entries
            .iter()
            .position(|&e| e == Entry::Old(position))
            .expect("old position present");
        self.entries.insert(at, Entry::New(chord));
    }

    /// Index in `entries` of `entry`.
    pub fn index_of(&self, entry: Entry) -> Option<usize> {
        self.entries.iter().position(|&e| e == entry)
    }

    pub fn remove_old(&mut self, positions: &BTreeSet<usize>) {
        self.entries
            .retain(|e| !matches!(e, Entry::Old(p) if positions.contains(p)));
    }
}

/// A pending edit of an old diagram.
pub(crate) struct Edit<'a> {
    pub old: &'a GaussDiagram,
    pub plus: Vec<EditCircle>,
    pub minus: Vec<EditCircle>,
    pub signs: BTreeMap<ChordId, Sign>,
}

impl<'a> Edit<'a> {
    pub fn identity(old: &'a GaussDiagram) -> Self {
        let fam = |f: Family| {
            old.circles(f)
                .iter()
                .enumerate()
                .map(|(i, c)| EditCircle::identity(i, c.len()))
                .collect()
        };
        Edit {
            old,
            plus: fam(Family::Plus),
            minus: fam(Family::Minus),
            signs: old.signs().clone(),
        }
    }

    pub fn family_mut(&mut self, f: Family) -> &mut Vec<EditCircle> {
        match f {
            Family::Plus => &mut self.plus,
            Family::Minus => &mut self.minus,
        }
    }

    pub fn family(&self, f: Family) -> &[EditCircle] {
        match f {
            Family::Plus => &self.plus,
            Family::Minus => &self.minus,
        }
    }

    /// Edit circle currently at `c` (indices of the edited diagram).
    pub fn circle_mut(&mut self, c: CircleId) -> &mut EditCircle {
        &mut self.family_mut(c.family)[c.index]
    }

    pub fn circle(&self, c: CircleId) -> &EditCircle {
        &self.family(c.family)[c.index]
    }

    pub fn build(&self) -> GaussDiagram {
        let fam = |f: Family| -> Vec<Vec<ChordId>> {
            self.family(f)
                .iter()
                .map(|ec| {
                    let old = ec
                        .origin
                        .and_then(|i| self.old.circle(CircleId::new(f, i)))
                        .unwrap_or(&[]);
                    ec.entries
                        .iter()
                        .map(|e| match *e {
                            Entry::Old(p) => old[p],
                            Entry::New(h) => h,
                        })
                        .collect()
                })
                .collect()
        };
        GaussDiagram::from_parts(fam(Family::Plus), fam(Family::Minus), self.signs.clone())
    }

    /// Old arcs covered by a new arc, in circle order.
    pub fn spanned(&self, arc: ArcId) -> Vec<ArcId> {
        let ec = self.circle(arc.circle);
        let Some(o) = ec.origin else {
            return Vec::new();
        };
        let oc = CircleId::new(arc.circle.family, o);
        let old_len = self.old.circle(oc).map_or(0, <[ChordId]>::len);
        if old_len == 0 {
            return alloc::vec![ArcId::new(oc, 0)];
        }
        let m = ec.entries.len();
        let olds = ec
            .entries
            .iter()
            .filter(|e| matches!(e, Entry::Old(_)))
            .count();
        if olds == 0 {
            return (0..old_len).map(|p| ArcId::new(oc, p)).collect();
        }
        let j = arc.position;
        let p = (0..m)
            .map(|back| ec.entries[(j + m - back) % m])
            .find_map(|e| match e {
                Entry::Old(p) => Some(p),
                Entry::New(_) => None,
            })
            .expect("an old entry exists");
        let q = (1..=m)
            .map(|fwd| ec.entries[(j + fwd) % m])
            .find_map(|e| match e {
                Entry::Old(q) => Some(q),
                Entry::New(_) => None,
            })
            .expect("an old entry exists");
        let mut out = Vec::new();
        let mut k = p;
        loop {
            out.push(ArcId::new(oc, k));
            k = (k + 1) % old_len;
            if k == q {
                break;
            }
        }
        out
    }

    /// Same side of every spanned old arc.
    pub fn default_ancestors(&self, s: ArcSide) -> Vec<ArcSide> {
        self.spanned(s.arc)
            .into_iter()
            .map(|a| ArcSide::new(a, s.side))
            .collect()
    }
}

/// Monotone source of fresh colors.
#[derive(Debug, Clone)]
pub(crate) struct ColorAlloc {
    next: u32,
}

impl ColorAlloc {
    pub fn after(deco: &Decoration) -> Self {
        ColorAlloc {
            next: deco.next_fresh_color().0,
        }
    }

    pub fn fresh(&mut self) -> ColorId {
        let c = ColorId(self.next);
        self.next += 1;
        c
    }
}

/// What to do when one old cycle turns into several new ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SplitPolicy {
    /// Give the pieces fresh colors (forward R and H).
    Fresh,
    /// Pieces keep the old color (inverse moves).
    Keep,
}

/// Colors for the new cycles. If an old color was split, cycles that kept
/// that color elsewhere are "floating": they may join either piece.
pub(crate) struct Transfer {
    cycles: CycleSet,
    colors: Vec<ColorId>,
    floating: Vec<usize>,
    alternative: Option<ColorId>,
    /// How many distinct old colors were identified with another.
    pub merges: usize,
}

/// Beyond this many floating cycles only the two uniform assignments are tried.
const MAX_FLOATING: usize = 10;

impl Transfer {
    /// Decorations to try, the default assignment first.
    pub fn candidates(&self) -> Vec<Decoration> {
        if self.alternative.is_none() {
            return alloc::vec![self.decoration(0)];
        }
        let n = self.floating.len();
        let masks: Vec<u64> = if n <= MAX_FLOATING {
            (0..1u64 << n).collect()
        } else {
            alloc::vec![0, u64::MAX]
        };
        masks.into_iter().map(|m| self.decoration(m)).collect()
    }

    fn decoration(&self, mask: u64) -> Decoration {
        let mut colors = self.colors.clone();
        if let Some(alt) = self.alternative {
            for (bit, &k) in self.floating.iter().enumerate() {
                if mask >> bit.min(63) & 1 == 1 {
                    colors[k] = alt;
                }
            }
        }
        Decoration::new(self.cycles.clone(), colors).expect("one color per cycle")
    }
}

#[derive(Clone, Copy)]
enum Base {
    Inherit(ColorId),
    Fixed(ColorId),
}

/// Links new cycles to old cycles through `ancestors` and assigns colors:
/// a lone old cycle passes its color on, several old cycles merge their
/// colors, a split follows `policy`, and cycles without ancestors take
/// `preset` or a fresh color.
pub(crate) fn transfer(
    old: &Decoration,
    cycles: CycleSet,
    ancestors: &dyn Fn(ArcSide) -> Vec<ArcSide>,
    policy: SplitPolicy,
    preset: &dyn Fn(&[ArcSide]) -> Option<ColorId>,
    alloc: &mut ColorAlloc,
) -> Result<Transfer, MoveError> {
    let o = old.cycle_count();
    let n = cycles.len();
    let mut ds = DisjointSet::new(o + n);
    for (k, orbit) in cycles.orbits().iter().enumerate() {
        for &s in orbit {
            for a in ancestors(s) {
                let i = old
                    .cycles()
                    .cycle_of(a)
                    .ok_or(MoveError::Internal("ancestor side is not traced"))?;
                ds.union(o + k, i);
            }
        }
    }
    let mut base: Vec<Option<Base>> = alloc::vec![None; n];
    let mut merged: BTreeMap<ColorId, ColorId> = BTreeMap::new();
    let mut split: Option<(ColorId, ColorId, ColorId)> = None;
    let mut merges = 0;
    for group in ds.groups() {
        let olds: Vec<usize> = group.iter().copied().filter(|&x| x < o).collect();
        let news: Vec<usize> = group.iter().filter(|&&x| x >= o).map(|&x| x - o).collect();
        if news.is_empty() {
            continue;
        }
        if olds.is_empty() {
            for &k in &news {
                let c = preset(&cycles.orbits()[k]).unwrap_or_else(|| alloc.fresh());
                base[k] = Some(Base::Fixed(c));
            }
            continue;
        }
        if olds.len() == 1 && news.len() >= 2 && policy == SplitPolicy::Fresh {
            if news.len() > 2 || split.is_some() {
                return Err(MoveError::Internal(
                    "a cycle split into more than two pieces",
                ));
            }
            let (f1, f2) = (alloc.fresh(), alloc.fresh());
            base[news[0]] = Some(Base::Fixed(f1));
            base[news[1]] = Some(Base::Fixed(f2));
            split = Some((old.color_of_cycle(olds[0]), f1, f2));
            continue;
        }
        let colors: BTreeSet<ColorId> = olds.iter().map(|&i| old.color_of_cycle(i)).collect();
        let rep = *colors.iter().next().expect("nonempty");
        merges += colors.len() - 1;
        for &c in &colors {
            union_colors(&mut merged, c, rep);
        }
        for &k in &news {
            base[k] = Some(Base::Inherit(rep));
        }
    }
    let mut colors = Vec::with_capacity(n);
    let mut floating = Vec::new();
    for (k, b) in base.into_iter().enumerate() {
        let c = match b.expect("every new cycle colored") {
            Base::Fixed(c) => c,
            Base::Inherit(c) => {
                let r = find_color(&merged, c);
                match split {
                    Some((sc, f1, _)) if find_color(&merged, sc) == r => {
                        floating.push(k);
                        f1
                    }
                    _ => r,
                }
            }
        };
        colors.push(c);
    }
    Ok(Transfer {
        cycles,
        colors,
        floating,
        alternative: split.map(|(_, _, f2)| f2),
        merges,
    })
}

fn find_color(merged: &BTreeMap<ColorId, ColorId>, mut c: ColorId) -> ColorId {
    while let Some(&p) = merged.get(&c) {
        if p == c {
            break;
        }
        c = p;
    }
    c
}

fn union_colors(merged: &mut BTreeMap<ColorId, ColorId>, a: ColorId, b: ColorId) {
    let (ra, rb) = (find_color(merged, a), find_color(merged, b));
    merged.entry(ra).or_insert(ra);
    merged.entry(rb).or_insert(rb);
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        merged.insert(hi, lo);
    }
}
