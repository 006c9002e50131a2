//! Command-line syntax for lattice vectors, symbolic points, crossed
//! element terms and Prim-space subsets, with canonical renderings.
//!
//! ```text
//! VECTOR  := n(,n)*              e.g.  1,-2      (parens optional)
//! POINT   := gap:ORBIT:VECTOR:T      interior gap point, T in (0,1)
//!          | cantor:EXPR             Cantor code (plain)
//!          | left:ORBIT:VECTOR       left endpoint of a gap
//!          | right:ORBIT:VECTOR      right endpoint of a gap
//!          | geom:EXPR               geometric coordinate (inverted)
//! TERM    := VECTOR|FN
//! FN      := const:EXPR
//!          | pl:CODE=EXPR(,CODE=EXPR)*     collapsed piecewise linear
//!          | tent:ORBIT:VECTOR[:EXPR]      bump in one gap (peak)
//! SUBSET  := empty | whole | PART(;PART)*
//! PART    := J | all | COMPONENT:IV(,IV)*
//! IV      := ('('|'[') EXPR , EXPR (')'|']')
//! ```

use denjoy_core::ergodic::{CValue, CircleFn, CrossedElement};
use denjoy_core::expr::{parse_real, render_real};
use denjoy_core::prim::{PrimSpace, PrimSubset, RatInterval};
use denjoy_core::realize::GapTable;
use denjoy_core::{
    normalize, CantorSide, CirclePoint, DenjoyAction, DenjoyPoint, Error, GapLabel, LatticeVector,
};

pub fn parse_vector(text: &str, d: usize) -> Result<LatticeVector, Error> {
    let trimmed = text.trim().trim_start_matches('(').trim_end_matches(')');
    let coords = trimmed
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<i64>()
                .map_err(|_| Error::Invalid(format!("bad lattice coordinate {p:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if coords.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: coords.len(),
        });
    }
    Ok(LatticeVector(coords))
}

pub fn render_vector(v: &LatticeVector) -> String {
    v.to_string()
}

fn parse_label(orbit: &str, vector: &str, d: usize) -> Result<GapLabel, Error> {
    let orbit: usize = orbit
        .trim()
        .parse()
        .map_err(|_| Error::Invalid(format!("bad orbit index {orbit:?}")))?;
    Ok(GapLabel::new(orbit, parse_vector(vector, d)?))
}

/// Parses a symbolic point; `geom:` coordinates are inverted through the
/// realization table, which is built on demand.
pub fn parse_point(
    text: &str,
    action: &DenjoyAction,
    table: &mut Option<GapTable>,
    res: &denjoy_core::Resources,
) -> Result<DenjoyPoint, Error> {
    let d = action.dim();
    let parts: Vec<&str> = text.splitn(2, ':').collect();
    if parts.len() != 2 {
        return Err(Error::Invalid(format!(
            "bad point {text:?}: expected kind:data"
        )));
    }
    let data = parts[1];
    match parts[0] {
        "cantor" => Ok(DenjoyPoint::cantor(normalize(&parse_real(data)?)?)),
        "gap" => {
            let bits: Vec<&str> = data.split(':').collect();
            if bits.len() != 3 {
                return Err(Error::Invalid(format!(
                    "bad gap point {text:?}: expected gap:orbit:vector:t"
                )));
            }
            let label = parse_label(bits[0], bits[1], d)?;
            let t = parse_real(bits[2])?;
            action.gap_point(label, t)
        }
        "left" | "right" => {
            let bits: Vec<&str> = data.split(':').collect();
            if bits.len() != 2 {
                return Err(Error::Invalid(format!(
                    "bad endpoint {text:?}: expected {}:orbit:vector",
                    parts[0]
                )));
            }
            let label = parse_label(bits[0], bits[1], d)?;
            let t = if parts[0] == "left" {
                denjoy_core::Real::zero()
            } else {
                denjoy_core::Real::one()
            };
            action.gap_point(label, t)
        }
        "geom" => {
            let x = normalize(&parse_real(data)?)?;
            if table.is_none() {
                *table = Some(GapTable::build(action, res.precision_bits, res.enum_budget)?);
            }
            table.as_ref().unwrap().realize_inverse(action, &x)
        }
        kind => Err(Error::Invalid(format!("unknown point kind {kind:?}"))),
    }
}

pub fn render_point(p: &DenjoyPoint) -> String {
    match p {
        DenjoyPoint::Gap { label, t } => {
            let t_str = if t.is_exact() {
                render_real(t)
            } else {
                format!("~{}", t.eval(64).to_f64())
            };
            format!("gap:{}:{}:{}", label.orbit, bare_vector(&label.offset), t_str)
        }
        DenjoyPoint::Cantor { code, side } => match side {
            CantorSide::Plain => {
                if code.is_exact() {
                    format!("cantor:{}", render_real(code.value()))
                } else {
                    format!("cantor:~{}", code.value().eval(64).to_f64())
                }
            }
            CantorSide::LeftOf(l) => format!("left:{}:{}", l.orbit, bare_vector(&l.offset)),
            CantorSide::RightOf(l) => format!("right:{}:{}", l.orbit, bare_vector(&l.offset)),
        },
    }
}

fn bare_vector(v: &LatticeVector) -> String {
    v.0.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Parses one crossed-element term `VECTOR|FN`.
pub fn parse_term(
    text: &str,
    action: &DenjoyAction,
) -> Result<(LatticeVector, CircleFn), Error> {
    let d = action.dim();
    let parts: Vec<&str> = text.splitn(2, '|').collect();
    if parts.len() != 2 {
        return Err(Error::Invalid(format!(
            "bad term {text:?}: expected vector|function"
        )));
    }
    let g = parse_vector(parts[0], d)?;
    let fn_parts: Vec<&str> = parts[1].splitn(2, ':').collect();
    if fn_parts.len() != 2 {
        return Err(Error::Invalid(format!(
            "bad coefficient {:?}: expected kind:data",
            parts[1]
        )));
    }
    let f = match fn_parts[0] {
        "const" => CircleFn::constant(CValue::real(parse_real(fn_parts[1])?)),
        "pl" => {
            let nodes = fn_parts[1]
                .split(',')
                .map(|node| {
                    let kv: Vec<&str> = node.splitn(2, '=').collect();
                    if kv.len() != 2 {
                        return Err(Error::Invalid(format!(
                            "bad PL node {node:?}: expected code=value"
                        )));
                    }
                    Ok((
                        normalize(&parse_real(kv[0])?)?,
                        CValue::real(parse_real(kv[1])?),
                    ))
                })
                .collect::<Result<Vec<(CirclePoint, CValue)>, Error>>()?;
            CircleFn::collapsed_pl(nodes)?
        }
        "tent" => {
            let bits: Vec<&str> = fn_parts[1].split(':').collect();
            if bits.len() != 2 && bits.len() != 3 {
                return Err(Error::Invalid(format!(
                    "bad tent {:?}: expected tent:orbit:vector[:peak]",
                    fn_parts[1]
                )));
            }
            let label = parse_label(bits[0], bits[1], d)?;
            let peak = if bits.len() == 3 {
                CValue::real(parse_real(bits[2])?)
            } else {
                CValue::one()
            };
            CircleFn::gap_tent(action, label, peak)?
        }
        kind => {
            return Err(Error::Invalid(format!(
                "unknown coefficient kind {kind:?}"
            )))
        }
    };
    Ok((g, f))
}

/// Assembles terms into an element.
pub fn element_from_terms(
    action: &DenjoyAction,
    terms: &[String],
) -> Result<CrossedElement, Error> {
    let mut out = CrossedElement::zero();
    for t in terms {
        let (g, f) = parse_term(t, action)?;
        out = out.add(action, &CrossedElement::monomial(g, f))?;
    }
    Ok(out)
}

/// Parses a Prim-space subset description.
pub fn parse_subset(text: &str, space: &PrimSpace) -> Result<PrimSubset, Error> {
    let trimmed = text.trim();
    if trimmed == "empty" {
        return Ok(PrimSubset::empty());
    }
    if trimmed == "whole" {
        return Ok(PrimSubset::whole());
    }
    let mut background_full = false;
    let mut contains_j = false;
    let mut parts: Vec<(u64, Vec<RatInterval>)> = Vec::new();
    for part in trimmed.split(';') {
        let part = part.trim();
        if part == "J" {
            contains_j = true;
            continue;
        }
        if part == "all" {
            background_full = true;
            continue;
        }
        let kv: Vec<&str> = part.splitn(2, ':').collect();
        if kv.len() != 2 {
            return Err(Error::Invalid(format!(
                "bad subset part {part:?}: expected component:intervals"
            )));
        }
        let component: u64 = kv[0]
            .trim()
            .parse()
            .map_err(|_| Error::Invalid(format!("bad component index {:?}", kv[0])))?;
        let intervals = split_intervals(kv[1])?
            .into_iter()
            .map(|iv| parse_interval(&iv))
            .collect::<Result<Vec<_>, _>>()?;
        parts.push((component, intervals));
    }
    PrimSubset::from_parts(space, background_full, parts, contains_j)
}

/// Splits `"(a,b],[c,d)"` at top-level commas between brackets.
fn split_intervals(text: &str) -> Result<Vec<String>, Error> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut current = String::new();
    for c in text.chars() {
        match c {
            '(' | '[' => {
                depth += 1;
                current.push(c);
            }
            ')' | ']' => {
                depth = depth.checked_sub(1).ok_or_else(|| {
                    Error::Invalid(format!("unbalanced brackets in {text:?}"))
                })?;
                current.push(c);
                if depth == 0 {
                    out.push(core::mem::take(&mut current));
                }
            }
            ',' if depth == 0 => {}
            c if c.is_whitespace() && depth == 0 => {}
            c => current.push(c),
        }
    }
    if depth != 0 || !current.trim().is_empty() {
        return Err(Error::Invalid(format!("unbalanced brackets in {text:?}")));
    }
    Ok(out)
}

fn parse_interval(text: &str) -> Result<RatInterval, Error> {
    let t = text.trim();
    let mut chars = t.chars();
    let open = chars.next().ok_or_else(|| Error::Invalid("empty interval".into()))?;
    let close = t
        .chars()
        .last()
        .ok_or_else(|| Error::Invalid("empty interval".into()))?;
    let lo_closed = match open {
        '[' => true,
        '(' => false,
        _ => return Err(Error::Invalid(format!("bad interval {t:?}"))),
    };
    let hi_closed = match close {
        ']' => true,
        ')' => false,
        _ => return Err(Error::Invalid(format!("bad interval {t:?}"))),
    };
    let inner = &t[1..t.len() - 1];
    let sides: Vec<&str> = inner.split(',').collect();
    if sides.len() != 2 {
        return Err(Error::Invalid(format!("bad interval {t:?}")));
    }
    let lo = parse_real(sides[0])?
        .as_rational()
        .ok_or_else(|| Error::Invalid("interval endpoints must be rational".into()))?;
    let hi = parse_real(sides[1])?
        .as_rational()
        .ok_or_else(|| Error::Invalid("interval endpoints must be rational".into()))?;
    Ok(RatInterval {
        lo,
        hi,
        lo_closed,
        hi_closed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use denjoy_core::prim::OrbitCount;
    use denjoy_core::Resources;

    fn action() -> DenjoyAction {
        crate::spec_file::example_document().build().unwrap()
    }

    #[test]
    fn vectors_parse_and_render() {
        let v = parse_vector("(1,-2)", 2).unwrap();
        assert_eq!(v, LatticeVector(vec![1, -2]));
        assert_eq!(render_vector(&v), "(1,-2)");
        assert!(parse_vector("1", 2).is_err());
    }

    #[test]
    fn points_round_trip() {
        let action = action();
        let mut table = None;
        let res = Resources::default();
        for text in ["cantor:1/4", "gap:0:1,-2:1/2", "left:0:0,0", "right:0:2,1"] {
            let p = parse_point(text, &action, &mut table, &res).unwrap();
            let rendered = render_point(&p);
            let again = parse_point(&rendered, &action, &mut table, &res).unwrap();
            assert_eq!(p, again, "{text}");
        }
    }

    #[test]
    fn geometric_points_invert() {
        let action = action();
        let mut table = None;
        let res = Resources::with_precision(48);
        let p = parse_point("geom:0", &action, &mut table, &res).unwrap();
        match p {
            DenjoyPoint::Cantor { code, .. } => {
                assert_eq!(code, CirclePoint::zero())
            }
            p => panic!("expected the anchor, got {p:?}"),
        }
    }

    #[test]
    fn terms_parse() {
        let action = action();
        let unit = element_from_terms(&action, &["0,0|const:1".to_string()]).unwrap();
        assert_eq!(
            denjoy_core::ergodic::trace(&action, &unit).unwrap(),
            CValue::one()
        );
        element_from_terms(
            &action,
            &[
                "1,0|pl:0=1,1/2=2".to_string(),
                "0,0|tent:0:0,0:3/4".to_string(),
            ],
        )
        .unwrap();
        assert!(parse_term("1,0|mystery:1", &action).is_err());
    }

    #[test]
    fn subsets_parse() {
        let space = PrimSpace::new(OrbitCount::Finite(2)).unwrap();
        let s = parse_subset("0:(1/4,1/2],[3/4,7/8); J", &space).unwrap();
        assert!(s.contains_j);
        assert_eq!(s.named_components()[&0].len(), 2);
        assert_eq!(parse_subset("whole", &space).unwrap(), PrimSubset::whole());
        assert_eq!(parse_subset("empty", &space).unwrap(), PrimSubset::empty());
        let all = parse_subset("all", &space).unwrap();
        assert_eq!(all, PrimSubset::all_components());
        assert!(parse_subset("5:(0,1)", &space).is_err());
    }
}
