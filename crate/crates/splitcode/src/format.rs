//! JSON interchange documents.
//!
//! Every document is an object with a `"kind"` field. Rationals are written
//! as `"p/q"` strings; block and part order are preserved exactly, so
//! `parse(&write(doc)) == doc`.

use std::fmt;
use std::str::FromStr;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{json, Map, Value};
use splitcode_core::algebra::AbelianGroup;
use splitcode_core::constructions::BaseBlocks;
use splitcode_core::designs::{
    AmdCode, Block, Gdd, OrderedGdd, SourceDistribution, SplittingGdd, SplittingSystem,
};
use splitcode_core::Rational;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("{0}")]
    Invalid(#[from] splitcode_core::Error),
}

impl FormatError {
    fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        FormatError::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    SplittingSystem(SplittingSystem),
    AmdCode(AmdCode),
    Gdd(Gdd),
    OrderedGdd(OrderedGdd),
    SourceDistribution(SourceDistribution),
    BaseBlocks(BaseBlocks),
    SplittingGdd(SplittingGdd),
    Report(Map<String, Value>),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::SplittingSystem(_) => "splitting_system",
            Document::AmdCode(_) => "amd_code",
            Document::Gdd(_) | Document::OrderedGdd(_) => "gdd",
            Document::SourceDistribution(_) => "source_distribution",
            Document::BaseBlocks(_) => "base_blocks",
            Document::SplittingGdd(_) => "splitting_gdd",
            Document::Report(_) => "report",
        }
    }
}

/// Rational that (de)serializes as `"p/q"`. Integers are also accepted on
/// input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio(pub Rational);

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Ratio {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("expected a rational \"p/q\", found {s:?}");
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: i128 = n.parse().map_err(|_| bad())?;
        let d: i128 = d.parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Ratio(Rational::new(n, d)))
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ratio {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn rational(r: Rational) -> Value {
    Value::String(Ratio(r).to_string())
}

#[derive(Serialize, Deserialize)]
struct SystemDoc {
    v: usize,
    m: usize,
    blocks: Vec<Vec<Vec<usize>>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Element {
    Index(usize),
    Coords(Vec<u64>),
}

#[derive(Deserialize)]
struct AmdDoc {
    group: Vec<u64>,
    sources: usize,
    encodings: Vec<Vec<Element>>,
}

#[derive(Deserialize)]
struct GddDoc {
    points: usize,
    design_groups: Vec<Vec<usize>>,
    k: usize,
    blocks: Option<Vec<Vec<usize>>>,
    ordered_blocks: Option<Vec<Vec<usize>>>,
}

#[derive(Deserialize)]
struct DistDoc {
    probs: Vec<Ratio>,
}

#[derive(Deserialize)]
struct BaseDoc {
    group: Vec<u64>,
    m: usize,
    blocks: Vec<Vec<Vec<usize>>>,
}

#[derive(Deserialize)]
struct SplittingGddDoc {
    v: usize,
    m: usize,
    design_groups: Vec<Vec<usize>>,
    blocks: Vec<Vec<Vec<usize>>>,
}

fn typed<T: DeserializeOwned>(value: &Value) -> Result<T, FormatError> {
    serde_path_to_error::deserialize(value.clone()).map_err(|e| {
        let path = e.path().to_string();
        FormatError::schema(path, e.into_inner().to_string())
    })
}

fn blocks_of(raw: Vec<Vec<Vec<usize>>>) -> Vec<Block> {
    raw.into_iter().map(Block::new).collect()
}

fn check_parts(blocks: &[Vec<Vec<usize>>], m: usize) -> Result<(), FormatError> {
    for (i, b) in blocks.iter().enumerate() {
        if b.len() != m {
            return Err(FormatError::schema(
                format!("blocks[{i}]"),
                format!("expected {m} parts, found {}", b.len()),
            ));
        }
    }
    Ok(())
}

fn group_of(orders: Vec<u64>) -> Result<AbelianGroup, FormatError> {
    AbelianGroup::new(orders).map_err(|e| FormatError::schema("group", e.to_string()))
}

pub fn parse(text: &str) -> Result<Document, FormatError> {
    parse_value(&serde_json::from_str(text)?)
}

pub fn parse_value(value: &Value) -> Result<Document, FormatError> {
    let obj = value
        .as_object()
        .ok_or_else(|| FormatError::schema(".", "expected an object"))?;
    let kind = obj
        .get("kind")
        .ok_or_else(|| FormatError::schema("kind", "missing field"))?
        .as_str()
        .ok_or_else(|| FormatError::schema("kind", "expected a string"))?;
    match kind {
        "splitting_system" => {
            let d: SystemDoc = typed(value)?;
            check_parts(&d.blocks, d.m)?;
            Ok(Document::SplittingSystem(SplittingSystem::new(
                d.v,
                d.m,
                blocks_of(d.blocks),
            )?))
        }
        "amd_code" => {
            let d: AmdDoc = typed(value)?;
            let group = group_of(d.group)?;
            if d.encodings.len() != d.sources {
                return Err(FormatError::schema(
                    "encodings",
                    format!(
                        "expected {} sources, found {}",
                        d.sources,
                        d.encodings.len()
                    ),
                ));
            }
            let mut encodings = Vec::with_capacity(d.sources);
            for (s, enc) in d.encodings.into_iter().enumerate() {
                let mut set = Vec::with_capacity(enc.len());
                for (i, e) in enc.into_iter().enumerate() {
                    let path = || format!("encodings[{s}][{i}]");
                    let idx = match e {
                        Element::Index(x) => x,
                        Element::Coords(c) => group
                            .element(c)
                            .and_then(|g| group.index_of(&g))
                            .map_err(|e| FormatError::schema(path(), e.to_string()))?,
                    };
                    if idx as u64 >= group.order() {
                        return Err(FormatError::schema(
                            path(),
                            format!("element {idx} outside {group}"),
                        ));
                    }
                    set.push(idx);
                }
                encodings.push(set);
            }
            Ok(Document::AmdCode(AmdCode::new(group, encodings)?))
        }
        "gdd" => {
            let d: GddDoc = typed(value)?;
            match (d.blocks, d.ordered_blocks) {
                (Some(b), None) => Ok(Document::Gdd(Gdd::new(d.points, d.design_groups, d.k, b)?)),
                (None, Some(b)) => Ok(Document::OrderedGdd(OrderedGdd::new(Gdd::new(
                    d.points,
                    d.design_groups,
                    d.k,
                    b,
                )?))),
                _ => Err(FormatError::schema(
                    "blocks",
                    "exactly one of blocks, ordered_blocks is required",
                )),
            }
        }
        "source_distribution" => {
            let d: DistDoc = typed(value)?;
            let probs = d.probs.into_iter().map(|r| r.0).collect();
            Ok(Document::SourceDistribution(SourceDistribution::new(
                probs,
            )?))
        }
        "base_blocks" => {
            let d: BaseDoc = typed(value)?;
            check_parts(&d.blocks, d.m)?;
            let group = group_of(d.group)?;
            for (i, b) in d.blocks.iter().enumerate() {
                if let Some(x) = b.iter().flatten().find(|&&x| x as u64 >= group.order()) {
                    return Err(FormatError::schema(
                        format!("blocks[{i}]"),
                        format!("element {x} outside {group}"),
                    ));
                }
            }
            Ok(Document::BaseBlocks(BaseBlocks {
                group,
                blocks: blocks_of(d.blocks),
            }))
        }
        "splitting_gdd" => {
            let d: SplittingGddDoc = typed(value)?;
            check_parts(&d.blocks, d.m)?;
            Ok(Document::SplittingGdd(SplittingGdd::new(
                d.v,
                d.m,
                d.design_groups,
                blocks_of(d.blocks),
            )?))
        }
        "report" => Ok(Document::Report(obj.clone())),
        other => Err(FormatError::schema(
            "kind",
            format!("unknown document kind {other:?}"),
        )),
    }
}

fn parts_json(blocks: &[Block]) -> Value {
    blocks.iter().map(|b| json!(b.parts())).collect()
}

/// Element of `group` as written in documents: the index for cyclic
/// groups, the coordinate list otherwise.
pub fn element_json(group: &AbelianGroup, index: usize) -> Value {
    if group.orders().len() == 1 {
        json!(index)
    } else {
        json!(group.element_at(index).coords())
    }
}

pub fn to_value(doc: &Document) -> Value {
    match doc {
        Document::SplittingSystem(s) => json!({
            "kind": "splitting_system",
            "v": s.v(),
            "m": s.m(),
            "blocks": parts_json(s.blocks()),
        }),
        Document::AmdCode(a) => {
            let g = a.group();
            let enc: Vec<Value> = a
                .encodings()
                .iter()
                .map(|set| set.iter().map(|&x| element_json(g, x)).collect())
                .collect();
            json!({
                "kind": "amd_code",
                "group": g.orders(),
                "sources": a.m(),
                "encodings": enc,
            })
        }
        Document::Gdd(g) => json!({
            "kind": "gdd",
            "points": g.n(),
            "design_groups": g.design_groups(),
            "k": g.k(),
            "blocks": g.blocks(),
        }),
        Document::OrderedGdd(o) => {
            let g = o.gdd();
            json!({
                "kind": "gdd",
                "points": g.n(),
                "design_groups": g.design_groups(),
                "k": g.k(),
                "ordered_blocks": g.blocks(),
            })
        }
        Document::SourceDistribution(d) => json!({
            "kind": "source_distribution",
            "probs": d.probs().iter().map(|&p| rational(p)).collect::<Vec<_>>(),
        }),
        Document::BaseBlocks(b) => json!({
            "kind": "base_blocks",
            "group": b.group.orders(),
            "m": b.blocks.first().map_or(0, Block::m),
            "blocks": parts_json(&b.blocks),
        }),
        Document::SplittingGdd(s) => json!({
            "kind": "splitting_gdd",
            "v": s.v(),
            "m": s.m(),
            "design_groups": s.design_groups(),
            "blocks": parts_json(s.blocks()),
        }),
        Document::Report(map) => Value::Object(map.clone()),
    }
}

pub fn write(doc: &Document) -> String {
    serde_json::to_string_pretty(&to_value(doc)).expect("documents serialize")
}
