//! Construction plans: a list of steps applied to a running value.
//!
//! ```json
//! {"kind": "plan", "steps": [
//!   {"op": "td", "k": 3, "n": 12},
//!   {"op": "order"},
//!   {"op": "splitting_inflate", "c": 2},
//!   {"op": "fill", "filler": {"catalog": "sbibd25"}}
//! ]}
//! ```
//!
//! Sources name a catalog entry, a file (relative to the plan's directory)
//! or an inline document.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use serde_json::Value;
use splitcode_core::constructions::{
    builtin_td, catalog, develop_amd, fill_groups, inflate_gdd, prime_td, splitting_inflate, sts,
    CatalogEntry,
};
use splitcode_core::designs::SplittingSystem;
use splitcode_core::ordering::{order_development, order_gdd};

use crate::format::{self, Document, FormatError};

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    Catalog(String),
    Path(PathBuf),
    Document(Value),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
pub enum Step {
    /// TD(k, n) from the built-in constructions.
    Td {
        k: usize,
        n: usize,
    },
    PrimeTd {
        k: usize,
        p: u64,
    },
    Sts {
        u: usize,
    },
    Load {
        source: Source,
    },
    Catalog {
        name: String,
    },
    Inflate {
        w: usize,
        ingredient: Option<Source>,
    },
    /// GDDs are ordered by edge colouring, base blocks by development.
    Order,
    SplittingInflate {
        c: usize,
    },
    /// One filler per design group, or a single filler used for all.
    Fill {
        filler: Option<Source>,
        fillers: Option<Vec<Source>>,
    },
    Develop,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Plan {
    pub steps: Vec<Step>,
}

#[derive(Debug, thiserror::Error)]
pub enum PlanError {
    #[error("{0}")]
    Format(#[from] FormatError),
    #[error("{0}")]
    Core(#[from] splitcode_core::Error),
    #[error("reading {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("step {step} ({op}): {message}")]
    Step {
        step: usize,
        op: &'static str,
        message: String,
    },
}

impl Plan {
    pub fn parse(text: &str) -> Result<Plan, PlanError> {
        let value: Value = serde_json::from_str(text).map_err(FormatError::from)?;
        if value.get("kind").and_then(Value::as_str) != Some("plan") {
            return Err(FormatError::Schema {
                path: "kind".into(),
                message: "expected \"plan\"".into(),
            }
            .into());
        }
        serde_path_to_error::deserialize(value).map_err(|e| {
            let path = e.path().to_string();
            FormatError::Schema {
                path,
                message: e.into_inner().to_string(),
            }
            .into()
        })
    }

    /// Runs every step; `base` resolves relative source paths.
    pub fn run(&self, base: &Path) -> Result<Document, PlanError> {
        let mut current: Option<Document> = None;
        for (i, step) in self.steps.iter().enumerate() {
            current = Some(apply(step, current.take(), base).map_err(|e| match e {
                PlanError::Step { message, op, .. } => PlanError::Step {
                    step: i,
                    op,
                    message,
                },
                other => other,
            })?);
        }
        current.ok_or(PlanError::Step {
            step: 0,
            op: "plan",
            message: "no steps".into(),
        })
    }
}

fn op_name(step: &Step) -> &'static str {
    match step {
        Step::Td { .. } => "td",
        Step::PrimeTd { .. } => "prime_td",
        Step::Sts { .. } => "sts",
        Step::Load { .. } => "load",
        Step::Catalog { .. } => "catalog",
        Step::Inflate { .. } => "inflate",
        Step::Order => "order",
        Step::SplittingInflate { .. } => "splitting_inflate",
        Step::Fill { .. } => "fill",
        Step::Develop => "develop",
    }
}

pub fn catalog_document(name: &str) -> Result<Document, splitcode_core::Error> {
    Ok(match catalog(name)? {
        CatalogEntry::System(s) => Document::SplittingSystem(s),
        CatalogEntry::Amd(a) => Document::AmdCode(a),
        CatalogEntry::BaseBlocks(b) => Document::BaseBlocks(b),
    })
}

pub fn load(source: &Source, base: &Path) -> Result<Document, PlanError> {
    match source {
        Source::Catalog(name) => Ok(catalog_document(name)?),
        Source::Path(p) => {
            let path = base.join(p);
            let text =
                std::fs::read_to_string(&path).map_err(|source| PlanError::Io { path, source })?;
            Ok(format::parse(&text)?)
        }
        Source::Document(v) => Ok(format::parse_value(v)?),
    }
}

fn load_system(
    source: &Source,
    base: &Path,
    op: &'static str,
) -> Result<SplittingSystem, PlanError> {
    match load(source, base)? {
        Document::SplittingSystem(s) => Ok(s),
        other => Err(PlanError::Step {
            step: 0,
            op,
            message: format!("expected a splitting_system, got {}", other.kind()),
        }),
    }
}

fn apply(step: &Step, current: Option<Document>, base: &Path) -> Result<Document, PlanError> {
    let op = op_name(step);
    let wrong = |doc: &Option<Document>| PlanError::Step {
        step: 0,
        op,
        message: match doc {
            Some(d) => format!("cannot apply to a {}", d.kind()),
            None => "needs a previous step".into(),
        },
    };
    Ok(match (step, current) {
        (Step::Td { k, n }, _) => Document::Gdd(builtin_td(*k, *n).ok_or(PlanError::Step {
            step: 0,
            op,
            message: format!("no built-in TD({k},{n})"),
        })?),
        (Step::PrimeTd { k, p }, _) => Document::Gdd(prime_td(*k, *p)?),
        (Step::Sts { u }, _) => Document::Gdd(sts(*u)?),
        (Step::Load { source }, _) => load(source, base)?,
        (Step::Catalog { name }, _) => catalog_document(name)?,
        (Step::Inflate { w, ingredient }, Some(Document::Gdd(g))) => {
            let ing = match ingredient {
                Some(src) => match load(src, base)? {
                    Document::Gdd(t) => Some(t),
                    other => return Err(wrong(&Some(other))),
                },
                None => None,
            };
            Document::Gdd(inflate_gdd(&g, *w, ing.as_ref())?)
        }
        (Step::Order, Some(Document::Gdd(g))) => Document::OrderedGdd(order_gdd(&g)?),
        (Step::Order | Step::Develop, Some(Document::BaseBlocks(b))) => {
            Document::SplittingSystem(order_development(&b.blocks, &b.group)?)
        }
        (Step::Develop, Some(Document::AmdCode(a))) => Document::SplittingSystem(develop_amd(&a)?),
        (Step::SplittingInflate { c }, Some(Document::OrderedGdd(o))) => {
            Document::SplittingGdd(splitting_inflate(&o, *c)?)
        }
        (Step::Fill { filler, fillers }, Some(Document::SplittingGdd(sg))) => {
            let n = sg.design_groups().len();
            let systems = match (filler, fillers) {
                (Some(src), None) => vec![load_system(src, base, op)?; n],
                (None, Some(list)) => list
                    .iter()
                    .map(|s| load_system(s, base, op))
                    .collect::<Result<_, _>>()?,
                _ => {
                    return Err(PlanError::Step {
                        step: 0,
                        op,
                        message: "give exactly one of filler, fillers".into(),
                    })
                }
            };
            Document::SplittingSystem(fill_groups(&sg, &systems)?)
        }
        (_, doc) => return Err(wrong(&doc)),
    })
}
