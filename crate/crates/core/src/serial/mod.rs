//! JSON artifacts: group descriptors, windows, actions, piece specs.
//!
//! Emission is deterministic (object keys serialize in sorted order and all
//! lists carry a fixed order), so identical inputs produce byte-identical
//! files and parse . emit round-trips exactly.

pub mod dot;

use crate::construct::{ForestAction, PathAction};
use crate::error::{Result, TlaError};
use crate::group::subgroup::CyclicSubgroup;
use crate::group::{FiniteSubgroup, GroupDescriptor, GroupElement, MarkedGroup, Subgroup};
use crate::piecewise::{ActingGroup, PieceSpec, PiecewiseTranslation, TLAction};
use crate::window::ends::EndsEstimate;
use crate::window::expansion::{ratio_string, ExpansionProfile};
use crate::window::{GraphWindow, WindowKind};
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "tla/1";

fn bad(reason: impl Into<String>) -> TlaError {
    TlaError::BadAction {
        reason: reason.into(),
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn as_str<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    field(v, key)?
        .as_str()
        .ok_or_else(|| bad(format!("field {key:?} must be a string")))
}

fn as_array<'a>(v: &'a Value, key: &str) -> Result<&'a Vec<Value>> {
    field(v, key)?
        .as_array()
        .ok_or_else(|| bad(format!("field {key:?} must be an array")))
}

pub fn group_to_json(g: &MarkedGroup) -> Value {
    serde_json::to_value(g.descriptor()).expect("descriptor serializes")
}

pub fn group_from_json(v: &Value) -> Result<MarkedGroup> {
    let desc: GroupDescriptor = serde_json::from_value(v.clone())
        .map_err(|e| bad(format!("bad group descriptor: {e}")))?;
    MarkedGroup::new(desc)
}

fn elements_to_json(elems: &[GroupElement]) -> Value {
    Value::Array(
        elems
            .iter()
            .map(|e| Value::String(e.canonical_string()))
            .collect(),
    )
}

fn elements_from_json(group: &MarkedGroup, v: &Value) -> Result<Vec<GroupElement>> {
    v.as_array()
        .ok_or_else(|| bad("expected an element array"))?
        .iter()
        .map(|s| {
            group.parse_element(
                s.as_str().ok_or_else(|| bad("elements must be strings"))?,
            )
        })
        .collect()
}

pub fn subgroup_to_json(s: &Subgroup) -> Value {
    match s {
        Subgroup::Finite(k) => json!({
            "type": "finite",
            "elements": elements_to_json(k.elements()),
        }),
        Subgroup::Cyclic(c) => json!({
            "type": "cyclic",
            "generator": c.generator().canonical_string(),
        }),
    }
}

pub fn subgroup_from_json(group: &MarkedGroup, v: &Value) -> Result<Subgroup> {
    match as_str(v, "type")? {
        "finite" => {
            let elems = elements_from_json(group, field(v, "elements")?)?;
            Ok(Subgroup::Finite(FiniteSubgroup::new(group, elems)?))
        }
        "cyclic" => {
            let g = group.parse_element(as_str(v, "generator")?)?;
            Ok(Subgroup::Cyclic(CyclicSubgroup::new(g)))
        }
        other => Err(bad(format!("unknown subgroup type {other:?}"))),
    }
}

pub fn piece_to_json(p: &PieceSpec) -> Value {
    match p {
        PieceSpec::All => json!({ "type": "all" }),
        PieceSpec::Explicit(v) => json!({
            "type": "explicit",
            "elements": elements_to_json(v),
        }),
        PieceSpec::CosetFiber { subgroup, reps } => json!({
            "type": "coset-fiber",
            "subgroup": subgroup_to_json(subgroup),
            "reps": elements_to_json(reps),
        }),
        PieceSpec::Intersection(parts) => json!({
            "type": "intersection",
            "parts": parts.iter().map(piece_to_json).collect::<Vec<_>>(),
        }),
        PieceSpec::Complement(part) => json!({
            "type": "complement",
            "part": piece_to_json(part),
        }),
        PieceSpec::Translate { piece, by } => json!({
            "type": "translate",
            "part": piece_to_json(piece),
            "by": by.canonical_string(),
        }),
        PieceSpec::SectionSaturated { subgroup, piece } => json!({
            "type": "section",
            "subgroup": subgroup_to_json(subgroup),
            "part": piece_to_json(piece),
        }),
    }
}

pub fn piece_from_json(group: &MarkedGroup, v: &Value) -> Result<PieceSpec> {
    match as_str(v, "type")? {
        "all" => Ok(PieceSpec::All),
        "explicit" => Ok(PieceSpec::Explicit(elements_from_json(
            group,
            field(v, "elements")?,
        )?)),
        "coset-fiber" => Ok(PieceSpec::CosetFiber {
            subgroup: subgroup_from_json(group, field(v, "subgroup")?)?,
            reps: elements_from_json(group, field(v, "reps")?)?,
        }),
        "intersection" => Ok(PieceSpec::Intersection(
            as_array(v, "parts")?
                .iter()
                .map(|p| piece_from_json(group, p))
                .collect::<Result<Vec<_>>>()?,
        )),
        "complement" => Ok(PieceSpec::Complement(Box::new(piece_from_json(
            group,
            field(v, "part")?,
        )?))),
        "translate" => Ok(PieceSpec::Translate {
            piece: Box::new(piece_from_json(group, field(v, "part")?)?),
            by: group.parse_element(as_str(v, "by")?)?,
        }),
        "section" => Ok(PieceSpec::SectionSaturated {
            subgroup: subgroup_from_json(group, field(v, "subgroup")?)?,
            piece: Box::new(piece_from_json(group, field(v, "part")?)?),
        }),
        other => Err(bad(format!("unknown piece type {other:?}"))),
    }
}

pub fn translation_to_json(t: &PiecewiseTranslation) -> Value {
    json!({
        "domain": piece_to_json(t.domain()),
        "pieces": t
            .pieces()
            .iter()
            .map(|(p, g)| json!({
                "spec": piece_to_json(p),
                "translator": g.canonical_string(),
            }))
            .collect::<Vec<_>>(),
    })
}

pub fn translation_from_json(group: &MarkedGroup, v: &Value) -> Result<PiecewiseTranslation> {
    let domain = piece_from_json(group, field(v, "domain")?)?;
    let mut pieces = Vec::new();
    for pv in as_array(v, "pieces")? {
        let spec = piece_from_json(group, field(pv, "spec")?)?;
        let translator = group.parse_element(as_str(pv, "translator")?)?;
        pieces.push((spec, translator));
    }
    PiecewiseTranslation::new(group, domain, pieces)
}

/// A standalone piecewise translation (possibly partial), e.g. a
/// refinement or a lift, as a self-contained document.
pub fn translation_doc_to_json(t: &PiecewiseTranslation) -> Value {
    json!({
        "schema": SCHEMA,
        "kind": "piecewise-translation",
        "group": group_to_json(t.group()),
        "translation": translation_to_json(t),
    })
}

pub fn translation_doc_from_json(v: &Value) -> Result<(MarkedGroup, PiecewiseTranslation)> {
    let group = group_from_json(field(v, "group")?)?;
    let t = translation_from_json(&group, field(v, "translation")?)?;
    Ok((group, t))
}

pub fn action_to_json(a: &TLAction) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("kind".into(), json!("tl-action"));
    m.insert("group".into(), group_to_json(a.group()));
    m.insert("acting".into(), json!(a.acting.tag()));
    m.insert(
        "generators".into(),
        Value::Array(a.generators.iter().map(translation_to_json).collect()),
    );
    m.insert(
        "fundamental_domain".into(),
        a.fundamental_domain
            .as_ref()
            .map(piece_to_json)
            .unwrap_or(Value::Null),
    );
    Value::Object(m)
}

pub fn action_from_json(v: &Value) -> Result<TLAction> {
    let group = group_from_json(field(v, "group")?)?;
    let acting = ActingGroup::from_tag(as_str(v, "acting")?)
        .ok_or_else(|| bad("acting must be \"Z\" or \"F<d>\""))?;
    let generators = as_array(v, "generators")?
        .iter()
        .map(|g| translation_from_json(&group, g))
        .collect::<Result<Vec<_>>>()?;
    let fd = match field(v, "fundamental_domain")? {
        Value::Null => None,
        fv => Some(piece_from_json(&group, fv)?),
    };
    TLAction::new(acting, generators, fd)
}

pub fn window_to_json(w: &GraphWindow) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA));
    m.insert("kind".into(), json!("window"));
    m.insert("group".into(), group_to_json(w.group()));
    match w.kind() {
        WindowKind::Cayley => {
            m.insert("graph".into(), json!("cayley"));
        }
        WindowKind::CayleyAbels { subgroup } => {
            m.insert("graph".into(), json!("cayley-abels"));
            m.insert("subgroup".into(), elements_to_json(subgroup.elements()));
        }
    }
    m.insert("radius".into(), json!(w.radius()));
    m.insert("center".into(), json!(w.center()));
    m.insert(
        "vertices".into(),
        elements_to_json(w.vertices()),
    );
    m.insert(
        "edges".into(),
        Value::Array(
            w.edges()
                .iter()
                .map(|&(u, v, l)| json!([u, v, w.label_name(l)]))
                .collect(),
        ),
    );
    m.insert("boundary".into(), json!(w.boundary().to_vec()));
    m.insert("core".into(), json!(w.core_indices()));
    Value::Object(m)
}

pub fn path_action_to_json(p: &PathAction, w: &GraphWindow) -> Value {
    json!({
        "schema": SCHEMA,
        "kind": "path-action",
        "group": group_to_json(w.group()),
        "core_radius": p.core_radius,
        "wobble": p.wobble,
        "closes_cycle": p.closes_cycle,
        "vertices": Value::Array(
            p.order
                .iter()
                .map(|&v| Value::String(w.vertex(v).canonical_string()))
                .collect()
        ),
    })
}

pub fn path_action_from_json(v: &Value, w: &GraphWindow) -> Result<PathAction> {
    let mut order = Vec::new();
    for s in as_array(v, "vertices")? {
        let e = w
            .group()
            .parse_element(s.as_str().ok_or_else(|| bad("vertices must be strings"))?)?;
        let idx = w
            .locate(&e)
            .ok_or_else(|| bad(format!("vertex {e} is outside the window")))?;
        order.push(idx);
    }
    let wobble = field(v, "wobble")?
        .as_u64()
        .ok_or_else(|| bad("wobble must be an integer"))? as u32;
    let closes_cycle = field(v, "closes_cycle")?
        .as_bool()
        .ok_or_else(|| bad("closes_cycle must be a bool"))?;
    let core_radius = field(v, "core_radius")?
        .as_u64()
        .ok_or_else(|| bad("core_radius must be an integer"))? as u32;
    Ok(PathAction {
        order,
        wobble,
        closes_cycle,
        core_radius,
    })
}

fn letter_string(l: i8) -> String {
    crate::group::word_name(&[l])
}

fn letter_from_string(s: &str) -> Result<i8> {
    let mut chars = s.chars();
    let (Some(c), None) = (chars.next(), chars.next()) else {
        return Err(bad(format!("bad letter {s:?}")));
    };
    if c.is_ascii_lowercase() {
        Ok((c as u8 - b'a') as i8 + 1)
    } else if c.is_ascii_uppercase() {
        Ok(-((c as u8 - b'A') as i8 + 1))
    } else {
        Err(bad(format!("bad letter {s:?}")))
    }
}

pub fn forest_action_to_json(f: &ForestAction, w: &GraphWindow) -> Value {
    let vs = |list: &[usize]| {
        Value::Array(
            list.iter()
                .map(|&v| Value::String(w.vertex(v).canonical_string()))
                .collect(),
        )
    };
    json!({
        "schema": SCHEMA,
        "kind": "forest-action",
        "group": group_to_json(w.group()),
        "rank": f.rank,
        "core_radius": f.core_radius,
        "wobble": f.wobble,
        "covered": vs(&f.covered),
        "interior": vs(&f.interior),
        "edges": Value::Array(
            f.edges
                .iter()
                .map(|&(u, v, l)| {
                    json!([
                        w.vertex(u).canonical_string(),
                        w.vertex(v).canonical_string(),
                        letter_string(l)
                    ])
                })
                .collect()
        ),
    })
}

pub fn forest_action_from_json(v: &Value, w: &GraphWindow) -> Result<ForestAction> {
    let locate = |s: &Value| -> Result<usize> {
        let e = w
            .group()
            .parse_element(s.as_str().ok_or_else(|| bad("vertex must be a string"))?)?;
        w.locate(&e)
            .ok_or_else(|| bad(format!("vertex {e} is outside the window")))
    };
    let list = |key: &str| -> Result<Vec<usize>> {
        as_array(v, key)?.iter().map(locate).collect()
    };
    let mut edges = Vec::new();
    for ev in as_array(v, "edges")? {
        let arr = ev.as_array().ok_or_else(|| bad("edge must be an array"))?;
        if arr.len() != 3 {
            return Err(bad("edge must be [u, v, letter]"));
        }
        let u = locate(&arr[0])?;
        let vv = locate(&arr[1])?;
        let l = letter_from_string(
            arr[2].as_str().ok_or_else(|| bad("letter must be a string"))?,
        )?;
        edges.push((u, vv, l));
    }
    Ok(ForestAction {
        rank: field(v, "rank")?
            .as_u64()
            .ok_or_else(|| bad("rank must be an integer"))? as usize,
        edges,
        covered: list("covered")?,
        interior: list("interior")?,
        wobble: field(v, "wobble")?
            .as_u64()
            .ok_or_else(|| bad("wobble must be an integer"))? as u32,
        core_radius: field(v, "core_radius")?
            .as_u64()
            .ok_or_else(|| bad("core_radius must be an integer"))? as u32,
    })
}

pub fn ends_to_json(group: &MarkedGroup, e: &EndsEstimate) -> Value {
    json!({
        "schema": SCHEMA,
        "kind": "ends-estimate",
        "group": group_to_json(group),
        "inner": e.inner,
        "outer": e.outer,
        "components": e.components,
        "verdict": e.verdict.to_string(),
        "caveat": "fixed-radius estimate; ends concern bounded sets, not one window",
    })
}

pub fn expansion_to_json(group: &MarkedGroup, p: &ExpansionProfile) -> Value {
    json!({
        "schema": SCHEMA,
        "kind": "expansion-profile",
        "group": group_to_json(group),
        "radius": p.radius,
        "ratios": p.ratios.iter().map(|&r| ratio_string(r)).collect::<Vec<_>>(),
    })
}

/// Stable pretty rendering with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}
