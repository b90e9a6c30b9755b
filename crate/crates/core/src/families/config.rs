//! Flat `key = value` configuration.
//!
//! One entry per line; `#` starts a comment; blank lines are ignored; keys are unique.
//! Lists are comma separated. A family is selected with `family = <kind>` followed by
//! its parameters, for example:
//!
//! ```text
//! family = weighted_star
//! a = 1, 2, 3
//! b = 1, 1, 1
//! start = 2
//! ```
//!
//! In `arborescence` parent lists, `-` marks the root.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use super::FamilySpec;
use crate::error::{Result, RzfError};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Config {
    entries: BTreeMap<String, (usize, String)>,
}

pub fn parse_config(text: &str) -> Result<Config> {
    let mut entries = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(RzfError::Config { line, msg: format!("expected `key = value`, got `{content}`") });
        };
        let key = key.trim();
        if key.is_empty() {
            return Err(RzfError::Config { line, msg: "empty key".into() });
        }
        if let Some((first, _)) = entries.insert(key.to_string(), (line, value.trim().to_string())) {
            return Err(RzfError::Config { line, msg: format!("key `{key}` already set on line {first}") });
        }
    }
    Ok(Config { entries })
}

impl Config {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|(_, v)| v.as_str())
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    fn line(&self, key: &str) -> usize {
        self.entries.get(key).map_or(0, |(l, _)| *l)
    }

    fn bad(&self, key: &str, msg: String) -> RzfError {
        RzfError::Config { line: self.line(key), msg }
    }

    fn parse_one<T: FromStr>(&self, key: &str, s: &str) -> Result<T> {
        s.trim().parse().map_err(|_| self.bad(key, format!("invalid value `{}` for `{key}`", s.trim())))
    }

    /// Parses an optional key.
    pub fn opt<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get(key).map(|s| self.parse_one(key, s)).transpose()
    }

    /// Parses a required key.
    pub fn req<T: FromStr>(&self, key: &str) -> Result<T> {
        self.opt(key)?.ok_or_else(|| RzfError::param(format!("missing key `{key}`")))
    }

    pub fn list<T: FromStr>(&self, key: &str) -> Result<Vec<T>> {
        let raw = self.get(key).ok_or_else(|| RzfError::param(format!("missing key `{key}`")))?;
        if raw.is_empty() {
            return Ok(Vec::new());
        }
        raw.split(',').map(|s| self.parse_one(key, s)).collect()
    }
}

impl FamilySpec {
    pub fn from_config(cfg: &Config) -> Result<Self> {
        let kind: String = cfg.req("family")?;
        Ok(match kind.as_str() {
            "unipath" => FamilySpec::UniPath { order: cfg.req("order")? },
            "bipath" => match cfg.opt::<usize>("order")? {
                Some(order) => FamilySpec::bipath(order),
                None => FamilySpec::BiPath { forward: cfg.list("forward")?, backward: cfg.list("backward")? },
            },
            "unicycle" => FamilySpec::UniCycle { order: cfg.req("order")? },
            "bicycle" => FamilySpec::BiCycle {
                order: cfg.req("order")?,
                cw: cfg.opt("cw")?.unwrap_or(1.0),
                ccw: cfg.opt("ccw")?.unwrap_or(1.0),
                arc: cfg.opt("arc")?.unwrap_or(1),
            },
            "star" => FamilySpec::Star { leaves: cfg.req("leaves")? },
            "weighted_star" => FamilySpec::WeightedStar {
                a: cfg.list("a")?,
                b: cfg.list("b")?,
                start_leaves: cfg.list("start")?,
            },
            "spider" => FamilySpec::Spider { legs: cfg.req("legs")?, length: cfg.req("length")? },
            "sun" => FamilySpec::Sun { centers: cfg.req("centers")? },
            "complete" => FamilySpec::Complete { order: cfg.req("order")? },
            "complete_bipartite" => FamilySpec::CompleteBipartite { a: cfg.req("a")?, b: cfg.req("b")? },
            "kary_tree_uni" => FamilySpec::KaryTreeUni { arity: cfg.req("arity")?, depth: cfg.req("depth")? },
            "kary_tree_bi" => FamilySpec::KaryTreeBi { arity: cfg.req("arity")?, depth: cfg.req("depth")? },
            "arborescence" => {
                let parents: Vec<String> = cfg.list("parents")?;
                let parents = parents
                    .iter()
                    .map(|p| if p == "-" { Ok(None) } else { cfg.parse_one("parents", p).map(Some) })
                    .collect::<Result<_>>()?;
                FamilySpec::Arborescence { parents, weights: cfg.list("weights")? }
            }
            "quad_construction" => FamilySpec::QuadConstruction { m: cfg.req("m")? },
            "maxdeg_construction" => FamilySpec::MaxdegConstruction { order: cfg.req("order")?, d: cfg.req("d")? },
            "weight_construction" => FamilySpec::WeightConstruction { order: cfg.req("order")?, w: cfg.req("w")? },
            "fort_weighting" => FamilySpec::FortWeighting { k: cfg.req("k")? },
            "join_paths" => FamilySpec::JoinPaths { lengths: cfg.list("lengths")? },
            "edge_join_sharp" => FamilySpec::EdgeJoinSharp { m: cfg.req("m")?, n: cfg.req("n")?, d: cfg.req("d")? },
            "weighted_edge_join_sharp" => FamilySpec::WeightedEdgeJoinSharp {
                m: cfg.req("m")?,
                n: cfg.req("n")?,
                d: cfg.req("d")?,
                w: cfg.req("w")?,
            },
            other => return Err(cfg.bad("family", format!("unknown family `{other}`"))),
        })
    }

    /// Renders the spec in the configuration format accepted by [`FamilySpec::from_config`].
    pub fn to_config(&self) -> String {
        fn join<T: ToString>(xs: &[T]) -> String {
            xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
        }
        let mut kv: Vec<(&str, String)> = Vec::new();
        match self {
            FamilySpec::UniPath { order } | FamilySpec::UniCycle { order } | FamilySpec::Complete { order } => {
                kv.push(("order", order.to_string()));
            }
            FamilySpec::BiPath { forward, backward } => {
                kv.push(("forward", join(forward)));
                kv.push(("backward", join(backward)));
            }
            FamilySpec::BiCycle { order, cw, ccw, arc } => {
                kv.extend([
                    ("order", order.to_string()),
                    ("cw", cw.to_string()),
                    ("ccw", ccw.to_string()),
                    ("arc", arc.to_string()),
                ]);
            }
            FamilySpec::Star { leaves } => kv.push(("leaves", leaves.to_string())),
            FamilySpec::WeightedStar { a, b, start_leaves } => {
                kv.extend([("a", join(a)), ("b", join(b)), ("start", join(start_leaves))]);
            }
            FamilySpec::Spider { legs, length } => {
                kv.extend([("legs", legs.to_string()), ("length", length.to_string())]);
            }
            FamilySpec::Sun { centers } => kv.push(("centers", centers.to_string())),
            FamilySpec::CompleteBipartite { a, b } => kv.extend([("a", a.to_string()), ("b", b.to_string())]),
            FamilySpec::KaryTreeUni { arity, depth } | FamilySpec::KaryTreeBi { arity, depth } => {
                kv.extend([("arity", arity.to_string()), ("depth", depth.to_string())]);
            }
            FamilySpec::Arborescence { parents, weights } => {
                let ps: Vec<String> = parents.iter().map(|p| p.map_or("-".into(), |p| p.to_string())).collect();
                kv.extend([("parents", ps.join(", ")), ("weights", join(weights))]);
            }
            FamilySpec::QuadConstruction { m } => kv.push(("m", m.to_string())),
            FamilySpec::MaxdegConstruction { order, d } => {
                kv.extend([("order", order.to_string()), ("d", d.to_string())]);
            }
            FamilySpec::WeightConstruction { order, w } => {
                kv.extend([("order", order.to_string()), ("w", w.to_string())]);
            }
            FamilySpec::FortWeighting { k } => kv.push(("k", k.to_string())),
            FamilySpec::JoinPaths { lengths } => kv.push(("lengths", join(lengths))),
            FamilySpec::EdgeJoinSharp { m, n, d } => {
                kv.extend([("m", m.to_string()), ("n", n.to_string()), ("d", d.to_string())]);
            }
            FamilySpec::WeightedEdgeJoinSharp { m, n, d, w } => {
                kv.extend([("m", m.to_string()), ("n", n.to_string()), ("d", d.to_string()), ("w", w.to_string())]);
            }
        }
        let mut out = format!("family = {}\n", self.kind());
        for (k, v) in kv {
            let _ = writeln!(out, "{k} = {v}");
        }
        out
    }
}
