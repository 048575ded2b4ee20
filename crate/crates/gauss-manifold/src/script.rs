//! Move scripts: one move per line or per `;`-separated item, in the
//! notation printed by [`MoveSpec`]'s `Display`.
//!
//! ```text
//! eps p1
//! r p1.0 m1.2 a1b2
//! rinv 3 4 a1b2
//! slide p2.0 p1.1 reversed side co
//! unslide p2 p1 3 reversed at 1 counter
//! stab 1 +
//! unstab p3 m3
//! bubble plus 1 7 co
//! unbubble p3
//! ```

use gauss_manifold_core::{
    ArcId, ChordId, CircleId, ColorId, Family, MoveSpec, RCase, Side, Sign, Slide, SlideInv,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("move {index}: {message} in {text:?}")]
pub struct ScriptError {
    /// 1-based position of the move in the script.
    pub index: usize,
    pub text: String,
    pub message: String,
}

type Res<T> = Result<T, String>;

fn circle(s: &str) -> Res<CircleId> {
    let family = match s.chars().next() {
        Some('p') => Family::Plus,
        Some('m') => Family::Minus,
        _ => return Err(format!("expected a circle like p1 or m2, found {s:?}")),
    };
    match s[1..].parse::<usize>() {
        Ok(n) if n >= 1 => Ok(CircleId::new(family, n - 1)),
        _ => Err(format!("expected a circle like p1 or m2, found {s:?}")),
    }
}

fn arc(s: &str) -> Res<ArcId> {
    let (c, pos) = s
        .split_once('.')
        .ok_or_else(|| format!("expected an arc like p1.0, found {s:?}"))?;
    let position = pos
        .parse()
        .map_err(|_| format!("expected an arc like p1.0, found {s:?}"))?;
    Ok(ArcId::new(circle(c)?, position))
}

fn number<T: std::str::FromStr>(s: &str, what: &str) -> Res<T> {
    s.parse()
        .map_err(|_| format!("expected {what}, found {s:?}"))
}

fn side(s: &str) -> Res<Side> {
    match s {
        "co" => Ok(Side::Co),
        "counter" => Ok(Side::Counter),
        _ => Err(format!("expected co or counter, found {s:?}")),
    }
}

fn case(s: &str) -> Res<RCase> {
    RCase::ALL
        .into_iter()
        .find(|c| c.name() == s)
        .ok_or_else(|| format!("expected a1b1, a1b2, a2b1 or a2b2, found {s:?}"))
}

fn family(s: &str) -> Res<Family> {
    match s {
        "plus" => Ok(Family::Plus),
        "minus" => Ok(Family::Minus),
        _ => Err(format!("expected plus or minus, found {s:?}")),
    }
}

fn sign(s: &str) -> Res<Sign> {
    match s {
        "+" => Ok(Sign::Positive),
        "-" => Ok(Sign::Negative),
        _ => Err(format!("expected + or -, found {s:?}")),
    }
}

/// Consumes an optional `reversed` flag.
fn reversed(rest: &mut &[&str]) -> bool {
    match rest.split_first() {
        Some((&"reversed", tail)) => {
            *rest = tail;
            true
        }
        _ => false,
    }
}

fn arity(words: &[&str], n: usize) -> Res<()> {
    if words.len() == n {
        Ok(())
    } else {
        Err(format!(
            "`{}` takes {} arguments, found {}",
            words[0],
            n - 1,
            words.len() - 1
        ))
    }
}

/// Parses a single move.
pub fn parse_move(text: &str) -> Result<MoveSpec, String> {
    let words: Vec<&str> = text.split_whitespace().collect();
    let Some(&head) = words.first() else {
        return Err("empty move".into());
    };
    Ok(match head {
        "eps" => {
            arity(&words, 2)?;
            MoveSpec::Eps(circle(words[1])?)
        }
        "r" => {
            arity(&words, 4)?;
            MoveSpec::R {
                plus_arc: arc(words[1])?,
                minus_arc: arc(words[2])?,
                case: case(words[3])?,
            }
        }
        "rinv" => {
            if words.len() != 3 && words.len() != 4 {
                return Err("`rinv` takes two chords and an optional case".into());
            }
            MoveSpec::RInv {
                positive: ChordId(number(words[1], "a chord id")?),
                negative: ChordId(number(words[2], "a chord id")?),
                case: words.get(3).map(|w| case(w)).transpose()?,
            }
        }
        "slide" => {
            if words.len() < 3 {
                return Err("`slide` takes a slider arc and an along arc".into());
            }
            let (slider_arc, along_arc) = (arc(words[1])?, arc(words[2])?);
            let mut rest = &words[3..];
            let reversed = reversed(&mut rest);
            let side = match rest {
                [] => None,
                ["side", s] => Some(side(s)?),
                _ => return Err(format!("unexpected {:?}", rest.join(" "))),
            };
            MoveSpec::Slide(Slide {
                slider: slider_arc.circle,
                along: along_arc.circle,
                slider_arc,
                along_arc,
                reversed,
                side,
            })
        }
        "unslide" => {
            if words.len() < 4 {
                return Err("`unslide` takes two circles and a start position".into());
            }
            let mut rest = &words[4..];
            let reversed = reversed(&mut rest);
            let band = match rest {
                [] => None,
                ["at", k, s] => Some((number(k, "an along arc position")?, side(s)?)),
                _ => return Err(format!("unexpected {:?}", rest.join(" "))),
            };
            MoveSpec::SlideInv(SlideInv {
                slider: circle(words[1])?,
                along: circle(words[2])?,
                start: number(words[3], "a start position")?,
                reversed,
                band,
            })
        }
        "stab" => {
            arity(&words, 3)?;
            MoveSpec::Stab {
                color: ColorId(number(words[1], "a color id")?),
                sign: sign(words[2])?,
            }
        }
        "unstab" => {
            arity(&words, 3)?;
            MoveSpec::StabInv {
                plus: circle(words[1])?,
                minus: circle(words[2])?,
            }
        }
        "bubble" => {
            arity(&words, 5)?;
            MoveSpec::Bubble {
                family: family(words[1])?,
                color: ColorId(number(words[2], "a color id")?),
                new_color: ColorId(number(words[3], "a color id")?),
                side: side(words[4])?,
            }
        }
        "unbubble" => {
            arity(&words, 2)?;
            MoveSpec::BubbleInv(circle(words[1])?)
        }
        other => return Err(format!("unknown move {other:?}")),
    })
}

/// Parses a script of moves separated by `;` or newlines. `#` starts a
/// comment that runs to the end of the line.
pub fn parse_script(text: &str) -> Result<Vec<MoveSpec>, ScriptError> {
    let items = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(';'))
        .map(str::trim)
        .filter(|s| !s.is_empty());
    items
        .enumerate()
        .map(|(i, item)| {
            parse_move(item).map_err(|message| ScriptError {
                index: i + 1,
                text: item.to_string(),
                message,
            })
        })
        .collect()
}

/// One move per line.
pub fn format_script(script: &[MoveSpec]) -> String {
    script.iter().map(|m| format!("{m}\n")).collect()
}
