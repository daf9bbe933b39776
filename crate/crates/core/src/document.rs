//! JSON curve documents with exact rationals written as `"p/q"` strings.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::curve::TropicalCurve;
use crate::edge::{Edge, EdgeKind};
use crate::error::Error;
use crate::rational::{parse_rat, Point, Rat};
use crate::region::{Halfspace, Region};
use crate::weight::Weight;

pub const VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HalfspaceDoc {
    #[serde(with = "crate::rational::serde_big::vec")]
    pub normal: Vec<BigInt>,
    #[serde(with = "crate::rational::serde_rat")]
    pub offset: Rat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegionDoc {
    pub halfspaces: Vec<HalfspaceDoc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindDoc {
    Segment,
    Ray,
}

/// `tail` and `head` are a vertex index or an explicit point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<usize>,
    pub tail: Value,
    pub kind: KindDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub head: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ray_sign: Option<i8>,
    #[serde(with = "crate::rational::serde_big::vec")]
    pub direction: Vec<BigInt>,
    #[serde(with = "crate::rational::serde_big")]
    pub multiplicity: BigInt,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDocument {
    pub version: u32,
    pub dimension: usize,
    pub region: RegionDoc,
    pub vertices: Vec<Vec<String>>,
    pub edges: Vec<EdgeDoc>,
    #[serde(default)]
    pub metadata: BTreeMap<String, Value>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentError {
    pub message: String,
    /// 1-based line and column for syntax and type errors.
    pub position: Option<(usize, usize)>,
}

impl fmt::Display for DocumentError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.position {
            Some((line, column)) => write!(f, "line {line} column {column}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for DocumentError {}

impl From<Error> for DocumentError {
    fn from(e: Error) -> Self {
        semantic(e.to_string())
    }
}

fn semantic(message: impl Into<String>) -> DocumentError {
    DocumentError {
        message: message.into(),
        position: None,
    }
}

fn point_value(p: &[Rat]) -> Value {
    Value::Array(p.iter().map(|c| Value::String(c.to_string())).collect())
}

impl CurveDocument {
    pub fn from_curve(g: &TropicalCurve) -> Self {
        let endpoint = |p: &Point| match g.vertex_at(p) {
            Some(k) => Value::from(k),
            None => point_value(p),
        };
        let edges = g
            .edges()
            .iter()
            .map(|e| {
                let (kind, head, ray_sign) = match &e.kind {
                    EdgeKind::Segment { head } => (KindDoc::Segment, Some(endpoint(head)), None),
                    EdgeKind::Ray { sign } => (KindDoc::Ray, None, Some(*sign)),
                };
                EdgeDoc {
                    id: Some(e.id),
                    tail: endpoint(&e.tail),
                    kind,
                    head,
                    ray_sign,
                    direction: e.weight.direction().to_vec(),
                    multiplicity: e.weight.multiplicity().clone(),
                }
            })
            .collect();
        CurveDocument {
            version: VERSION,
            dimension: g.dim(),
            region: RegionDoc {
                halfspaces: g
                    .region()
                    .halfspaces()
                    .iter()
                    .map(|h| HalfspaceDoc {
                        normal: h.normal.clone(),
                        offset: h.offset.clone(),
                    })
                    .collect(),
            },
            vertices: g
                .vertices()
                .iter()
                .map(|p| p.iter().map(|c| c.to_string()).collect())
                .collect(),
            edges,
            metadata: g.metadata().clone(),
        }
    }

    pub fn to_curve(&self) -> Result<TropicalCurve, DocumentError> {
        if self.version != VERSION {
            return Err(semantic(format!("unsupported version {}", self.version)));
        }
        let n = self.dimension;
        let point = |coords: &[String], at: &str| -> Result<Point, DocumentError> {
            if coords.len() != n {
                return Err(semantic(format!("{at}: expected {n} coordinates, found {}", coords.len())));
            }
            coords
                .iter()
                .map(|c| parse_rat(c).map_err(|m| semantic(format!("{at}: {m}"))))
                .collect()
        };
        let halfspaces = self
            .region
            .halfspaces
            .iter()
            .map(|h| Halfspace::new(h.normal.clone(), h.offset.clone()))
            .collect();
        let region = Region::new(n, halfspaces)?;
        let vertices = self
            .vertices
            .iter()
            .enumerate()
            .map(|(k, v)| point(v, &format!("vertices[{k}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let endpoint = |v: &Value, at: &str| -> Result<Point, DocumentError> {
            match v {
                Value::Number(num) => {
                    let k: usize = num
                        .to_string()
                        .parse()
                        .map_err(|_| semantic(format!("{at}: invalid vertex index {num}")))?;
                    vertices
                        .get(k)
                        .cloned()
                        .ok_or_else(|| semantic(format!("{at}: vertex index {k} out of range")))
                }
                Value::Array(items) => {
                    let coords = items
                        .iter()
                        .map(|c| {
                            c.as_str()
                                .map(str::to_string)
                                .ok_or_else(|| semantic(format!("{at}: coordinates must be \"p/q\" strings")))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    point(&coords, at)
                }
                _ => Err(semantic(format!("{at}: expected a vertex index or a point"))),
            }
        };
        let mut edges = Vec::new();
        for (k, e) in self.edges.iter().enumerate() {
            let at = format!("edges[{k}]");
            if e.direction.len() != n {
                return Err(semantic(format!("{at}: direction has {} entries", e.direction.len())));
            }
            let weight = Weight::new(e.direction.clone(), e.multiplicity.clone())
                .map_err(|err| semantic(format!("{at}: {err}")))?;
            let tail = endpoint(&e.tail, &format!("{at}.tail"))?;
            let id = e.id.unwrap_or(k);
            let edge = match (e.kind, &e.head, e.ray_sign) {
                (KindDoc::Segment, Some(h), None) => {
                    Edge::segment(id, tail, endpoint(h, &format!("{at}.head"))?, weight)
                }
                (KindDoc::Ray, None, Some(s)) if s == 1 || s == -1 => Edge::ray(id, tail, s, weight),
                (KindDoc::Segment, _, _) => {
                    return Err(semantic(format!("{at}: a segment needs a head and no ray_sign")))
                }
                (KindDoc::Ray, _, _) => {
                    return Err(semantic(format!("{at}: a ray needs ray_sign +1 or -1 and no head")))
                }
            };
            edges.push(edge);
        }
        Ok(TropicalCurve::new(region, vertices, edges)?.with_metadata(self.metadata.clone()))
    }
}

/// Pretty-printed canonical JSON with a trailing newline.
pub fn write_curve(g: &TropicalCurve) -> String {
    let mut s = serde_json::to_string_pretty(&CurveDocument::from_curve(g)).expect("documents serialize");
    s.push('\n');
    s
}

pub fn parse_document(text: &str) -> Result<CurveDocument, DocumentError> {
    serde_json::from_str(text).map_err(|e| DocumentError {
        message: e.to_string(),
        position: Some((e.line(), e.column())),
    })
}

pub fn parse_curve(text: &str) -> Result<TropicalCurve, DocumentError> {
    parse_document(text)?.to_curve()
}
