//! The formula table: each axiom's lifting formulation, loaded from
//! `data/formulas.txt`.

use std::sync::{Arc, OnceLock};

use thiserror::Error;

use super::real_line::RealLineModel;
use super::AxiomId;
use crate::morphism::ContinuousMap;
use crate::notation::{parse_map, NotationError};
use crate::space::FiniteSpace;

pub const FORMULA_TABLE: &str = include_str!("../../data/formulas.txt");
pub const DISPLAY_FIXTURE: &str = include_str!("../../data/displays.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("line {line}: expected `ID | left | right`")]
    Shape { line: usize },
    #[error("line {line}: unknown axiom `{id}`")]
    UnknownId { line: usize, id: String },
    #[error("line {line}: unknown real-line model `{name}`")]
    UnknownModel { line: usize, name: String },
    #[error("line {line}: {source}")]
    Notation { line: usize, source: NotationError },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    PureFinite,
    RealLine,
}

/// The left map of a formula, possibly a family indexed by the space.
#[derive(Debug, Clone)]
pub enum LeftTemplate {
    Fixed(ContinuousMap),
    /// `{} -> X`
    Empty,
    /// `{x} -> X` for every point.
    EachPoint,
    /// `{x,y} >-> X` for every injection.
    EachInjectedPair,
}

#[derive(Debug, Clone)]
pub enum RightMap {
    /// `X -> {*}`
    ToPoint,
    Fixed(ContinuousMap),
    RealLine(RealLineModel),
}

#[derive(Debug, Clone)]
pub struct AxiomFormula {
    pub id: AxiomId,
    pub left: LeftTemplate,
    pub right: RightMap,
    /// The table line this formula was read from.
    pub source: String,
}

impl AxiomFormula {
    pub fn backend(&self) -> Backend {
        match self.right {
            RightMap::RealLine(_) => Backend::RealLine,
            _ => Backend::PureFinite,
        }
    }

    /// Concrete left maps for the space `x`, each with a short description.
    pub fn left_instances(&self, x: &Arc<FiniteSpace>) -> Vec<(String, ContinuousMap)> {
        let labels = crate::notation::display_labels(x);
        match &self.left {
            LeftTemplate::Fixed(f) => vec![(crate::notation::format_map(f), f.clone())],
            LeftTemplate::Empty => {
                vec![("{} -> X".to_string(), ContinuousMap::from_empty(x.clone()))]
            }
            LeftTemplate::EachPoint => {
                let point = Arc::new(
                    FiniteSpace::point()
                        .with_labels(Some(vec!["x".into()]))
                        .expect("one label"),
                );
                (0..x.len())
                    .map(|p| {
                        let m = ContinuousMap::new(point.clone(), x.clone(), vec![p])
                            .expect("maps out of a point are continuous");
                        (format!("{{x}} -> X, x = {}", labels[p]), m)
                    })
                    .collect()
            }
            LeftTemplate::EachInjectedPair => {
                let pair = Arc::new(
                    FiniteSpace::discrete(2)
                        .with_labels(Some(vec!["x".into(), "y".into()]))
                        .expect("two labels"),
                );
                let mut out = Vec::new();
                for p in 0..x.len() {
                    for q in (0..x.len()).filter(|&q| q != p) {
                        let m = ContinuousMap::new(pair.clone(), x.clone(), vec![p, q])
                            .expect("maps out of a discrete space are continuous");
                        out.push((
                            format!("{{x,y}} >-> X, x = {}, y = {}", labels[p], labels[q]),
                            m,
                        ));
                    }
                }
                out
            }
        }
    }

    pub fn right_description(&self) -> String {
        match &self.right {
            RightMap::ToPoint => "X -> {*}".to_string(),
            RightMap::Fixed(g) => crate::notation::format_map(g),
            RightMap::RealLine(m) => m.display().to_string(),
        }
    }
}

pub fn parse_formula_table(text: &str) -> Result<Vec<AxiomFormula>, FormulaError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = content.split('|').map(str::trim).collect();
        let [id, left, right] = fields[..] else {
            return Err(FormulaError::Shape { line });
        };
        let id: AxiomId = id.parse().map_err(|_| FormulaError::UnknownId {
            line,
            id: id.to_string(),
        })?;
        let notation = |source| FormulaError::Notation { line, source };
        let left = match left.replace(' ', "").as_str() {
            "{}->X" => LeftTemplate::Empty,
            "{x}->X" => LeftTemplate::EachPoint,
            "{x,y}>->X" => LeftTemplate::EachInjectedPair,
            _ => LeftTemplate::Fixed(parse_map(left).map_err(notation)?),
        };
        let right = if right.replace(' ', "") == "X->{*}" {
            RightMap::ToPoint
        } else if let Some(name) = right.strip_prefix('@') {
            RightMap::RealLine(RealLineModel::from_key(name).ok_or_else(|| {
                FormulaError::UnknownModel {
                    line,
                    name: name.to_string(),
                }
            })?)
        } else {
            RightMap::Fixed(parse_map(right).map_err(notation)?)
        };
        out.push(AxiomFormula {
            id,
            left,
            right,
            source: content.to_string(),
        });
    }
    Ok(out)
}

/// All formulas of the built-in table, in table order.
pub fn formulas() -> &'static [AxiomFormula] {
    static TABLE: OnceLock<Vec<AxiomFormula>> = OnceLock::new();
    TABLE.get_or_init(|| {
        parse_formula_table(FORMULA_TABLE).unwrap_or_else(|e| panic!("formula table: {e}"))
    })
}

/// The primary formula for `id`, if the axiom has one.
pub fn formula(id: AxiomId) -> Option<&'static AxiomFormula> {
    formulas().iter().find(|f| f.id == id)
}

/// Every formulation of `id`, primary first.
pub fn formula_variants(id: AxiomId) -> Vec<&'static AxiomFormula> {
    formulas().iter().filter(|f| f.id == id).collect()
}

/// Map displays of the display fixture, one per non-comment line.
pub fn display_fixture() -> impl Iterator<Item = &'static str> {
    DISPLAY_FIXTURE
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}
