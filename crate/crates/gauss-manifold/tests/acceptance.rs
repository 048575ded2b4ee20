//! Acceptance suite: one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use gauss_manifold::corpus::{corpus, Limits};
use gauss_manifold::format::{parse, serialize};
use gauss_manifold_core::topology::genus_by_euler;
use gauss_manifold_core::{
    apply_move, apply_script, boundary_genera, build_ribbon_map, builtin, canonicalize_decorated,
    check_chord_color_equalities, genus, h1, h1_normalized, intersection_matrix, inverse_spec,
    is_homology_sphere, normalize_colors, pi1_closed, trace_cycles, validate, AlgebraError,
    ArcSide, ChordId, CircleId, Decoration, Family, GaussDiagram, HomologyGroup, IntMatrix, Letter,
    MoveError, MoveSpec, RCase, Side, Sign, Slide, SlideInv, Verdict,
};

type Pair = (GaussDiagram, Decoration);
type Check = Result<String, String>;
/// Name, check and time budget.
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Check + 'a>, Option<Duration>);

const SEED: u64 = 0x6d5f_2024;
const CORPUS: usize = 1000;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn the_corpus() -> Vec<Pair> {
    corpus(SEED, CORPUS, Limits::default())
}

fn matrix(rows: &[[i64; 2]]) -> IntMatrix {
    IntMatrix::from_rows(rows).expect("rectangular")
}

fn z(n: u32) -> HomologyGroup {
    HomologyGroup {
        rank: 0,
        torsion: vec![n.into()],
    }
}

fn closed_genus_one(name: &str, p: &Pair) -> Result<(), String> {
    let r = boundary_genera(&p.0, &p.1).map_err(err)?;
    ensure!(r.genus == 1, "{name}: genus {}", r.genus);
    ensure!(
        r.verdict == Verdict::Closed,
        "{name}: verdict {}",
        r.verdict
    );
    Ok(())
}

fn s3() -> Check {
    let p = builtin::s3();
    ensure!(p.1.cycle_count() == 1, "|c| = {}", p.1.cycle_count());
    let r = boundary_genera(&p.0, &p.1).map_err(err)?;
    ensure!(
        (r.genus, r.k_plus, r.k_minus, r.dg_plus, r.dg_minus) == (1, 1, 1, 0, 0),
        "{r:?}"
    );
    ensure!(r.verdict == Verdict::Closed, "verdict {}", r.verdict);
    let pi = pi1_closed(&p.0).map_err(err)?;
    ensure!(pi.generators.len() == 1, "{pi}");
    ensure!(pi.relators == vec![vec![Letter::new(0, false)]], "{pi}");
    ensure!(h1(&p.0, &p.1).map_err(err)?.is_trivial(), "H1 not trivial");
    ensure!(
        is_homology_sphere(&p.0).map_err(err)?,
        "not a homology sphere"
    );
    Ok(format!("|c| = 1, genus 1, closed, {pi}, H1 = 0"))
}

fn lens_spaces() -> Check {
    for q in [1, 2] {
        let name = format!("lens:5:{q}");
        let p = builtin::lens(5, q).map_err(err)?;
        closed_genus_one(&name, &p)?;
        let pi = pi1_closed(&p.0).map_err(err)?;
        ensure!(pi.generators.len() == 1, "{name}: {pi}");
        ensure!(
            pi.relators == vec![vec![Letter::new(0, false); 5]],
            "{name}: {pi}"
        );
        let h = h1(&p.0, &p.1).map_err(err)?;
        ensure!(h == z(5), "{name}: H1 = {h}");
    }
    Ok("genus 1, closed, <g | g^5>, H1 = Z/5 for q = 1, 2".into())
}

fn poincare() -> Check {
    let p = builtin::poincare_relators();
    let m = pi1_closed(&p.0).map_err(err)?.relation_matrix();
    let want = matrix(&[[-3, 2], [2, -1]]);
    ensure!(m == want, "exponent sums\n{m}");
    ensure!(
        intersection_matrix(&p.0).map_err(err)? == want,
        "intersection matrix differs"
    );
    let det = m.determinant().ok_or("not square")?;
    ensure!(det == (-1).into(), "det {det}");
    ensure!(h1(&p.0, &p.1).map_err(err)?.is_trivial(), "H1 not trivial");
    ensure!(
        is_homology_sphere(&p.0).map_err(err)?,
        "not a homology sphere"
    );
    Ok("exponent sums [[-3,2],[2,-1]], det -1, H1 = 0".into())
}

fn hempel() -> Check {
    let p = builtin::hempel_relators();
    let m = intersection_matrix(&p.0).map_err(err)?;
    ensure!(m == matrix(&[[-1, 1], [0, -1]]), "intersection matrix\n{m}");
    let det = m.determinant().ok_or("not square")?;
    ensure!(det == 1.into() || det == (-1).into(), "det {det}");
    ensure!(h1(&p.0, &p.1).map_err(err)?.is_trivial(), "H1 not trivial");
    ensure!(
        is_homology_sphere(&p.0).map_err(err)?,
        "not a homology sphere"
    );
    Ok(format!(
        "intersection block [[-1,1],[0,-1]], det {det}, H1 = 0"
    ))
}

fn oracle_equivalence(corpus: &[Pair]) -> Check {
    for (k, (d, deco)) in corpus.iter().enumerate() {
        let cycles = trace_cycles(d).map_err(err)?;
        let map = build_ribbon_map(d).map_err(err)?;
        ensure!(
            cycles.len() == map.boundary_count(),
            "diagram {k}: {} orbits, {} map boundaries",
            cycles.len(),
            map.boundary_count()
        );
        let g = genus(d, deco).map_err(err)?;
        let chi = genus_by_euler(d, deco).map_err(err)?;
        ensure!(
            g == chi,
            "diagram {k}: genus {g}, by Euler characteristic {chi}"
        );
    }
    Ok(format!("{} diagrams", corpus.len()))
}

/// Genus, boundary genera and (when defined) first homology.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Invariants {
    genus: i64,
    dg: (i64, i64),
    h1: Option<HomologyGroup>,
    /// H1 is undefined because the colors cannot be normalized.
    stuck: bool,
}

fn invariants(p: &Pair) -> Result<Invariants, String> {
    let r = boundary_genera(&p.0, &p.1).map_err(err)?;
    let h1 = h1_normalized(&p.0, &p.1);
    let stuck = matches!(
        h1,
        Err(AlgebraError::Normalize(MoveError::NormalizeStuck(_)))
    );
    Ok(Invariants {
        genus: r.genus,
        dg: (r.dg_plus, r.dg_minus),
        h1: h1.ok(),
        stuck,
    })
}

fn sound(p: &Pair) -> Result<(), String> {
    let report = validate(&p.0, Some(&p.1));
    ensure!(report.is_valid(), "invalid output: {:?}", report.violations);
    let bad = check_chord_color_equalities(&p.0, &p.1);
    ensure!(bad.is_empty(), "color relations fail at {bad:?}");
    ensure!(
        p.1.cycles() == &trace_cycles(&p.0).map_err(err)?,
        "stale cycles"
    );
    Ok(())
}

fn same(a: &Pair, b: &Pair) -> bool {
    canonicalize_decorated(&a.0, &a.1).ok() == canonicalize_decorated(&b.0, &b.1).ok()
}

/// Forward moves whose color preconditions hold. Each must apply.
fn forward_moves(p: &Pair) -> Vec<MoveSpec> {
    let (d, deco) = p;
    let mut out: Vec<MoveSpec> = d.circle_ids().map(MoveSpec::Eps).collect();
    let arcs = d.arcs();
    let of = |f: Family| arcs.iter().copied().filter(move |a| a.circle.family == f);
    for a in of(Family::Plus) {
        for b in of(Family::Minus) {
            for case in RCase::ALL {
                let x = deco.color_of(ArcSide::new(a, case.plus_side()));
                if x.is_some() && x == deco.color_of(ArcSide::new(b, case.minus_side())) {
                    out.push(MoveSpec::R {
                        plus_arc: a,
                        minus_arc: b,
                        case,
                    });
                }
            }
        }
    }
    for slider in d.circle_ids() {
        for along in d.circle_ids() {
            if slider == along || slider.family != along.family {
                continue;
            }
            for sa in d.arcs_of(slider).unwrap() {
                for aa in d.arcs_of(along).unwrap() {
                    for reversed in [false, true] {
                        for s_e in Side::BOTH {
                            let s_1 = if reversed { s_e.opposite() } else { s_e };
                            let here = deco.color_of(ArcSide::new(sa, s_e));
                            if here.is_some() && here == deco.color_of(ArcSide::new(aa, s_1)) {
                                out.push(MoveSpec::Slide(Slide {
                                    slider,
                                    along,
                                    slider_arc: sa,
                                    along_arc: aa,
                                    reversed,
                                    side: Some(s_e),
                                }));
                            }
                        }
                    }
                }
            }
        }
    }
    for color in deco.color_set() {
        for sign in [Sign::Positive, Sign::Negative] {
            out.push(MoveSpec::Stab { color, sign });
        }
        for family in Family::BOTH {
            for side in Side::BOTH {
                out.push(MoveSpec::Bubble {
                    family,
                    color,
                    new_color: deco.next_fresh_color(),
                    side,
                });
            }
        }
    }
    out
}

/// Every syntactic inverse-move instance; those that apply are checked.
fn inverse_moves(p: &Pair) -> Vec<MoveSpec> {
    let d = &p.0;
    let mut out = Vec::new();
    let chords: Vec<(ChordId, Sign)> = d.signs().iter().map(|(&h, &s)| (h, s)).collect();
    for &(a, sa) in &chords {
        for &(b, sb) in &chords {
            if sa == Sign::Positive && sb == Sign::Negative {
                out.push(MoveSpec::RInv {
                    positive: a,
                    negative: b,
                    case: None,
                });
            }
        }
    }
    for slider in d.circle_ids() {
        for along in d.circle_ids() {
            if slider == along || slider.family != along.family {
                continue;
            }
            for start in 0..d.circle(slider).unwrap().len() {
                for reversed in [false, true] {
                    out.push(MoveSpec::SlideInv(SlideInv {
                        slider,
                        along,
                        start,
                        reversed,
                        band: None,
                    }));
                }
            }
        }
    }
    for i in 0..d.circle_count(Family::Plus) {
        for j in 0..d.circle_count(Family::Minus) {
            out.push(MoveSpec::StabInv {
                plus: CircleId::plus(i),
                minus: CircleId::minus(j),
            });
        }
    }
    for c in d.circle_ids() {
        if d.circle(c).unwrap().is_empty() {
            out.push(MoveSpec::BubbleInv(c));
        }
    }
    out
}

fn genus_shift(spec: &MoveSpec) -> i64 {
    match spec {
        MoveSpec::Stab { .. } => 1,
        MoveSpec::StabInv { .. } => -1,
        _ => 0,
    }
}

/// Checks one move and reports whether H1 was compared.
fn check_move(p: &Pair, before: &Invariants, spec: &MoveSpec, q: &Pair) -> Result<bool, String> {
    sound(q).map_err(|e| format!("{spec}: {e}"))?;
    let after = invariants(q)?;
    let want_genus = before.genus + genus_shift(spec);
    ensure!(
        after.genus == want_genus,
        "{spec}: genus {} -> {}",
        before.genus,
        after.genus
    );
    ensure!(
        after.dg == before.dg,
        "{spec}: boundary genera {:?} -> {:?}",
        before.dg,
        after.dg
    );
    // Normalization refuses some outputs, such as those with an empty family.
    if before.h1.is_none() || after.stuck {
        return Ok(false);
    }
    ensure!(
        after.h1 == before.h1,
        "{spec}: H1 {:?} -> {:?} on {:?}",
        before.h1,
        after.h1,
        p.0
    );
    Ok(true)
}

#[derive(Default)]
struct Tally {
    forward: usize,
    inverse: usize,
    with_h1: usize,
    h1_compared: usize,
}

fn move_invariance(corpus: &[Pair]) -> Check {
    let mut t = Tally::default();
    for (k, p) in corpus.iter().enumerate() {
        let before = invariants(p)?;
        t.with_h1 += usize::from(before.h1.is_some());
        for spec in forward_moves(p) {
            let q =
                apply_move(&p.0, &p.1, &spec).map_err(|e| format!("diagram {k}: {spec}: {e}"))?;
            let compared =
                check_move(p, &before, &spec, &q).map_err(|e| format!("diagram {k}: {e}"))?;
            t.h1_compared += usize::from(compared);
            let back = inverse_spec(&p.0, &p.1, &spec)
                .ok_or(format!("diagram {k}: no inverse of {spec}"))?;
            let r = apply_move(&q.0, &q.1, &back)
                .map_err(|e| format!("diagram {k}: {back} after {spec}: {e}"))?;
            // Returning to a relabeling of `p` implies the invariants.
            sound(&r).map_err(|e| format!("diagram {k}: {back} after {spec}: {e}"))?;
            ensure!(
                same(&r, p),
                "diagram {k}: {spec} then {back} does not return"
            );
            t.forward += 1;
            t.inverse += 1;
        }
        for spec in inverse_moves(p) {
            match apply_move(&p.0, &p.1, &spec) {
                Ok(q) => {
                    let compared = check_move(p, &before, &spec, &q)
                        .map_err(|e| format!("diagram {k}: {e}"))?;
                    t.h1_compared += usize::from(compared);
                    t.inverse += 1;
                }
                Err(MoveError::InvariantChanged(what)) => {
                    return Err(format!("diagram {k}: {spec} would change {what}"));
                }
                Err(_) => {}
            }
        }
    }
    Ok(format!(
        "{} forward and {} inverse instances on {} diagrams, {} with H1, compared on {} outputs",
        t.forward,
        t.inverse,
        corpus.len(),
        t.with_h1,
        t.h1_compared
    ))
}

/// Every color covering several cycles has a cycle with a plus side and
/// another with a minus side. Sufficient for normalization, not necessary:
/// joining one color can give another color's cycles the missing sides.
fn normalizable(deco: &Decoration) -> bool {
    let orbits = deco.cycles().orbits();
    let has = |k: usize, f: Family| orbits[k].iter().any(|s| s.family() == f);
    deco.color_set().into_iter().all(|c| {
        let cycles = deco.cycles_of_color(c);
        cycles.len() < 2
            || cycles.iter().any(|&i| {
                has(i, Family::Plus) && cycles.iter().any(|&j| j != i && has(j, Family::Minus))
            })
    })
}

fn normalized_h1(p: &Pair) -> Result<HomologyGroup, String> {
    let (d, deco, _) = normalize_colors(&p.0, &p.1).map_err(err)?;
    h1(&d, &deco).map_err(err)
}

fn normalization(corpus: &[Pair]) -> Check {
    let (mut ran, mut h1s) = (0, 0);
    for (k, p) in corpus.iter().enumerate() {
        let (d, deco, script) = match normalize_colors(&p.0, &p.1) {
            Ok(x) => x,
            Err(MoveError::NormalizeStuck(_)) if !normalizable(&p.1) => continue,
            Err(e) => return Err(format!("diagram {k}: {e}")),
        };
        ran += 1;
        let q = (d, deco);
        sound(&q).map_err(|e| format!("diagram {k}: {e}"))?;
        ensure!(
            q.1.color_count() == q.1.cycle_count(),
            "diagram {k}: {} colors on {} cycles",
            q.1.color_count(),
            q.1.cycle_count()
        );
        let (a, b) = (
            boundary_genera(&p.0, &p.1).map_err(err)?,
            boundary_genera(&q.0, &q.1).map_err(err)?,
        );
        ensure!(
            (a.dg_plus, a.dg_minus) == (b.dg_plus, b.dg_minus),
            "diagram {k}: boundary genera changed"
        );
        let replay = apply_script(&p.0, &p.1, &script).map_err(|e| format!("diagram {k}: {e}"))?;
        ensure!(replay == q, "diagram {k}: the script does not replay");
        // H1 of the result against other routes: the untouched diagram when
        // it is already distinct, and normalizing a relabeled copy.
        let got = h1(&q.0, &q.1).ok();
        if p.1.is_all_distinct() {
            ensure!(got == h1(&p.0, &p.1).ok(), "diagram {k}: H1 changed");
        }
        let relabeled = canonicalize_decorated(&p.0, &p.1).map_err(err)?;
        ensure!(
            got == normalized_h1(&relabeled).ok(),
            "diagram {k}: H1 depends on the normalization route"
        );
        h1s += usize::from(got.is_some());
    }
    Ok(format!("{ran} diagrams normalized, {h1s} with H1"))
}

fn solid_torus() -> Check {
    let p = builtin::solid_torus();
    let r = boundary_genera(&p.0, &p.1).map_err(err)?;
    ensure!(
        r.verdict == Verdict::KnotComplement,
        "verdict {}",
        r.verdict
    );
    ensure!(
        (r.dg_plus, r.dg_minus) == (0, 1),
        "boundary genera ({}, {})",
        r.dg_plus,
        r.dg_minus
    );
    let h = normalized_h1(&p)?;
    let want = HomologyGroup {
        rank: 1,
        torsion: vec![],
    };
    ensure!(h == want, "H1 = {h}");
    Ok("knot complement (0, 1), H1 = Z after normalization".into())
}

fn builtins() -> Vec<(String, Pair)> {
    let mut out: Vec<(String, Pair)> =
        ["s3", "poincare-relators", "hempel-relators", "solid-torus"]
            .into_iter()
            .map(|n| (n.to_string(), builtin::by_name(n).unwrap()))
            .collect();
    for p in 2..=7u32 {
        for q in 1..p {
            if let Ok(x) = builtin::lens(p, q) {
                out.push((format!("lens:{p}:{q}"), x));
            }
        }
    }
    out
}

fn round_trip(corpus: &[Pair]) -> Check {
    let named = builtins();
    let all = corpus
        .iter()
        .enumerate()
        .map(|(k, p)| (format!("diagram {k}"), p))
        .chain(named.iter().map(|(n, p)| (n.clone(), p)));
    let mut n = 0;
    for (name, (d, deco)) in all {
        let text = serialize(d, deco).map_err(err)?;
        let back = parse(&text).map_err(|e| format!("{name}: {e}\n{text}"))?;
        let canon = canonicalize_decorated(d, deco).map_err(err)?;
        ensure!(back == canon, "{name}: round trip differs\n{text}");
        ensure!(
            serialize(&back.0, &back.1).map_err(err)? == text,
            "{name}: text not stable"
        );
        n += 1;
    }
    Ok(format!("{n} diagrams"))
}

fn main() {
    let corpus = the_corpus();
    let criteria: Vec<Criterion<'_>> = vec![
        ("S3", Box::new(s3), None),
        ("lens spaces L(5,1), L(5,2)", Box::new(lens_spaces), None),
        ("Poincare relators", Box::new(poincare), None),
        ("Hempel relators", Box::new(hempel), None),
        (
            "tracer and ribbon-map oracle agree",
            Box::new(|| oracle_equivalence(&corpus)),
            Some(Duration::from_secs(60)),
        ),
        (
            "moves preserve invariants",
            Box::new(|| move_invariance(&corpus)),
            Some(Duration::from_secs(120)),
        ),
        (
            "color normalization",
            Box::new(|| normalization(&corpus)),
            None,
        ),
        ("solid torus", Box::new(solid_torus), None),
        (
            "parse/serialize round trip",
            Box::new(|| round_trip(&corpus)),
            None,
        ),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut result = run();
        let took = start.elapsed();
        if let (Ok(_), Some(budget)) = (&result, budget) {
            if took > *budget {
                result = Err(format!("took {took:.1?}, budget {budget:?}"));
            }
        }
        match result {
            Ok(detail) => println!("PASS {}. {name}: {detail} [{took:.2?}]", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {}. {name}: {e} [{took:.2?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
