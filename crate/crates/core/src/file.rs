//! JSON presentation files.
//!
//! ```json
//! {
//!   "field": "rational",
//!   "generators": [{"name": "x", "weight": 1}, {"name": "y", "weight": 1}],
//!   "relations": ["x*y - y*x"],
//!   "orders": {
//!     "classical": {"kind": "deg-lex", "precedence": ["x", "y"]},
//!     "series": {"kind": "deg-lex", "precedence": ["y", "x"]}
//!   },
//!   "meta": {}
//! }
//! ```
//!
//! `field` is `"rational"` or `{"prime": p}`. Order kinds are `deg-lex`,
//! `lex` and `theta-lex`; theta-lex takes its weights from `weights` when
//! given and from the generator weights otherwise.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{Error, OrderError, ParseError};
use crate::expr::parse_poly;
use crate::field::CoefficientField;
use crate::presentation::Presentation;
use crate::words::{Alphabet, Letter, OrderKind, OrderSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub name: String,
    #[serde(default = "default_weight")]
    pub weight: u32,
}

fn default_weight() -> u32 {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderSpecFile {
    pub kind: String,
    pub precedence: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub weights: BTreeMap<String, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrdersFile {
    pub classical: OrderSpecFile,
    pub series: OrderSpecFile,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub field: CoefficientField,
    pub generators: Vec<GeneratorSpec>,
    pub relations: Vec<String>,
    pub orders: OrdersFile,
    #[serde(default)]
    pub meta: Map<String, Value>,
}

fn json_error(e: serde_json::Error) -> ParseError {
    ParseError::Syntax { line: e.line(), column: e.column(), message: e.to_string() }
}

fn build_order(spec: &OrderSpecFile, alphabet: &Alphabet) -> Result<OrderSpec, ParseError> {
    let kind = match spec.kind.as_str() {
        "deg-lex" => OrderKind::DegLex,
        "lex" => OrderKind::Lex,
        "theta-lex" => OrderKind::ThetaLex,
        other => return Err(OrderError::UnsupportedKind(other.to_string()).into()),
    };
    let precedence = spec
        .precedence
        .iter()
        .map(|name| {
            alphabet
                .index_of(name)
                .ok_or_else(|| ParseError::Invalid(format!("order precedence names unknown generator `{name}`")))
        })
        .collect::<Result<Vec<Letter>, _>>()?;
    for name in spec.weights.keys() {
        if alphabet.index_of(name).is_none() {
            return Err(ParseError::Invalid(format!("order weights name unknown generator `{name}`")));
        }
    }
    Ok(match kind {
        OrderKind::DegLex => OrderSpec::deg_lex(precedence)?,
        OrderKind::Lex => OrderSpec::lex(precedence)?,
        OrderKind::ThetaLex => {
            let weights = (0..alphabet.len() as Letter)
                .map(|l| spec.weights.get(alphabet.name(l)).copied().unwrap_or(alphabet.weight(l)))
                .collect();
            OrderSpec::theta_lex(precedence, weights)?
        }
    })
}

fn order_file(order: &OrderSpec, alphabet: &Alphabet) -> OrderSpecFile {
    let weights = match order.kind() {
        OrderKind::ThetaLex => {
            (0..alphabet.len() as Letter).map(|l| (alphabet.name(l).to_string(), order.weights()[l as usize])).collect()
        }
        _ => BTreeMap::new(),
    };
    OrderSpecFile {
        kind: order.kind().name().to_string(),
        precedence: order.precedence().iter().map(|&l| alphabet.name(l).to_string()).collect(),
        weights,
    }
}

impl PresentationFile {
    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        serde_json::from_str(text).map_err(json_error)
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_presentation(&self) -> Result<Presentation, ParseError> {
        if let CoefficientField::Prime(p) = self.field {
            CoefficientField::prime(p as u64)?;
        }
        let alphabet = Alphabet::new(self.generators.iter().map(|g| (g.name.clone(), g.weight)))
            .map_err(|e| ParseError::Invalid(e.to_string()))?;
        let classical = build_order(&self.orders.classical, &alphabet)?;
        let series = build_order(&self.orders.series, &alphabet)?;
        let mut relations = Vec::with_capacity(self.relations.len());
        for (index, text) in self.relations.iter().enumerate() {
            let r = parse_poly(text, &alphabet, self.field)
                .map_err(|e| ParseError::Relation { index, source: Box::new(e) })?;
            if !r.constant_term().is_zero() {
                return Err(ParseError::ConstantTerm {
                    index,
                    text: text.clone(),
                    constant: r.constant_term().to_string(),
                });
            }
            relations.push(r);
        }
        let p = Presentation::new(alphabet, self.field, relations, classical, series).map_err(|e| match e {
            Error::Parse(p) => p,
            other => ParseError::Invalid(other.to_string()),
        })?;
        Ok(match self.meta.get("free_rank").and_then(Value::as_u64) {
            Some(rank) => p.with_parafree_rank(rank as usize),
            None => p,
        })
    }

    /// Canonical file for `p`: relations are rendered in descending
    /// classical order.
    pub fn from_presentation(p: &Presentation, meta: Map<String, Value>) -> Self {
        let a = p.alphabet();
        PresentationFile {
            field: p.field(),
            generators: a.letters().iter().map(|l| GeneratorSpec { name: l.name.clone(), weight: l.weight }).collect(),
            relations: p.render_relations(),
            orders: OrdersFile { classical: order_file(p.order_max(), a), series: order_file(p.order_min(), a) },
            meta,
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.meta.get("name").and_then(Value::as_str)
    }
}

/// Parses a presentation file.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    PresentationFile::from_json(text)?.to_presentation()
}
