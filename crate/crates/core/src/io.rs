//! JSON formats for contexts, elements, complexes and homology reports.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::complexes::{HomologyResult, SimplicialComplex};
use crate::diagrams::{BitWord, Column, LabeledDiagram, Leaf};
use crate::error::{Error, Result};
use crate::groups::{FiniteTable, GroupBackend, Rule, WreathImage, WreathRecursion};
use crate::vphi::{Context, GroupoidElement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Trivial,
    Finite {
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
    },
    /// `n` absent means ℤ.
    Cyclic {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<u64>,
    },
    Free { rank: usize },
    Symmetric { m: usize },
    Product { factors: Vec<GroupSpec> },
}

impl GroupSpec {
    pub fn build(&self) -> Result<GroupBackend> {
        Ok(match self {
            GroupSpec::Trivial => GroupBackend::trivial(),
            GroupSpec::Finite { table, names } => GroupBackend::Finite(FiniteTable::new(table.clone(), names.clone())?),
            GroupSpec::Cyclic { n: Some(0) } => return Err(Error::InvalidGroup("cyclic order must be positive".into())),
            GroupSpec::Cyclic { n } => GroupBackend::Cyclic(*n),
            GroupSpec::Free { rank } => GroupBackend::Free(*rank),
            GroupSpec::Symmetric { m } => GroupBackend::Symmetric(*m),
            GroupSpec::Product { factors } => {
                GroupBackend::Product(factors.iter().map(GroupSpec::build).collect::<Result<_>>()?)
            }
        })
    }
}

/// Row of a custom recursion table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageSpec {
    pub left: String,
    pub right: String,
    #[serde(default)]
    pub swap: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionSpec {
    pub rule: String,
    /// `custom`: label → image; `kappa`: label → swap flag.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Value>,
}

/// A group together with a recursion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextSpec {
    pub group: GroupSpec,
    pub recursion: RecursionSpec,
}

impl ContextSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(format!("context file: {e}")))
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }

    pub fn recursion(&self) -> Result<WreathRecursion> {
        let g = self.group.build()?;
        let table = || {
            self.recursion
                .table
                .clone()
                .ok_or_else(|| Error::InvalidRecursion(format!("rule `{}` needs a table", self.recursion.rule)))
        };
        let rule = match self.recursion.rule.as_str() {
            "diagonal" => Rule::Diagonal,
            "vanishing" => Rule::Vanishing,
            "right" => Rule::Right,
            "left" => Rule::Left,
            "adding" => Rule::Adding,
            "custom" => {
                let rows: BTreeMap<String, ImageSpec> = serde_json::from_value(table()?)
                    .map_err(|e| Error::Format(format!("custom table: {e}")))?;
                let mut map = BTreeMap::new();
                for (k, v) in rows {
                    let w = WreathImage::new(g.parse_label(&v.left)?, g.parse_label(&v.right)?, v.swap);
                    map.insert(g.parse_label(&k)?, w);
                }
                Rule::Custom(Arc::new(map))
            }
            "kappa" => {
                let rows: BTreeMap<String, bool> = serde_json::from_value(table()?)
                    .map_err(|e| Error::Format(format!("kappa table: {e}")))?;
                let map = rows.into_iter().map(|(k, v)| Ok((g.parse_label(&k)?, v))).collect::<Result<_>>()?;
                Rule::Kappa(Arc::new(map))
            }
            other => return Err(Error::InvalidRecursion(format!("unknown rule `{other}`"))),
        };
        WreathRecursion::new(g, rule)
    }

    pub fn build(&self) -> Result<Context> {
        Context::new(self.recursion()?)
    }
}

/// A label token as it appears in files: a string, or a bare integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Token {
    Text(String),
    Int(i64),
}

impl Token {
    pub fn as_string(&self) -> String {
        match self {
            Token::Text(s) => s.clone(),
            Token::Int(k) => k.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColumnSpec {
    pub dom: String,
    pub label: Token,
    pub ran: String,
}

fn default_kind() -> String {
    "tree".into()
}

fn default_roots() -> [u32; 2] {
    [1, 1]
}

/// An element file: columns with leaves as bit strings (`"r:bits"` for
/// forests), optionally preceded by its context.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context: Option<ContextSpec>,
    #[serde(default = "default_kind")]
    pub kind: String,
    #[serde(default = "default_roots")]
    pub roots: [u32; 2],
    pub columns: Vec<ColumnSpec>,
}

fn parse_leaf(s: &str, forest: bool) -> Result<Leaf> {
    if forest {
        Leaf::parse(s)
    } else {
        Ok(Leaf::tree(s.parse::<BitWord>()?))
    }
}

impl ElementFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(format!("element file: {e}")))
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }

    pub fn from_element(x: &GroupoidElement, context: Option<ContextSpec>) -> Self {
        let d = x.diagram();
        let forest = d.is_forest();
        let leaf = |l: &Leaf| if forest { l.render(true) } else { l.word.to_string() };
        let columns = d
            .columns()
            .iter()
            .map(|c| ColumnSpec { dom: leaf(&c.dom), label: Token::Text(x.context().format_label(&c.label)), ran: leaf(&c.ran) })
            .collect();
        let (m, n) = d.roots();
        ElementFile { context, kind: if forest { "forest" } else { "tree" }.into(), roots: [m, n], columns }
    }

    /// Reads the element in `ctx`; a context header must describe the same context.
    pub fn to_element(&self, ctx: &Context) -> Result<GroupoidElement> {
        if let Some(spec) = &self.context {
            if spec.build()? != *ctx {
                return Err(Error::ContextMismatch);
            }
        }
        let forest = match self.kind.as_str() {
            "tree" => false,
            "forest" => true,
            other => return Err(Error::Format(format!("unknown element kind `{other}`"))),
        };
        if !forest && self.roots != [1, 1] {
            return Err(Error::Format("tree elements have one root on each side".into()));
        }
        let columns = self
            .columns
            .iter()
            .map(|c| {
                Ok(Column::new(
                    parse_leaf(&c.dom, forest)?,
                    ctx.parse_label(&c.label.as_string())?,
                    parse_leaf(&c.ran, forest)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let d = LabeledDiagram::new((self.roots[0], self.roots[1]), columns)?;
        GroupoidElement::from_stored(ctx, d)
    }
}

pub fn complex_to_json(c: &SimplicialComplex) -> Value {
    json!({ "vertices": c.vertex_labels(), "maximal": c.maximal() })
}

pub fn complex_from_json(v: &Value) -> Result<SimplicialComplex> {
    #[derive(Deserialize)]
    struct Raw {
        vertices: Vec<Value>,
        maximal: Vec<Vec<u32>>,
    }
    let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| Error::Format(format!("complex file: {e}")))?;
    let labels = raw
        .vertices
        .into_iter()
        .map(|v| match v {
            Value::String(s) => s,
            other => other.to_string(),
        })
        .collect();
    SimplicialComplex::from_simplices(labels, raw.maximal)
}

fn integer_value(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(k) => json!(k),
        None => json!(x.to_string()),
    }
}

/// One `{"dim", "betti", "torsion"}` object per degree.
pub fn homology_to_json(h: &HomologyResult<BigInt>) -> Value {
    Value::Array(
        (0..=h.up_to)
            .map(|k| {
                json!({
                    "dim": k,
                    "betti": h.betti[k],
                    "torsion": h.torsion[k].iter().map(integer_value).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}
