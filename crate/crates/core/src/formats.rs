//! JSON presentations of algebras, modules, rules, pseudoproducts and operads.
//!
//! Sparse vectors are written as lists of `[index, coefficient]` pairs;
//! coefficients are integers or strings such as `"-3/4"`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hinfty::GradedModule;
use crate::hopf::{Group, HopfAlgebra};
use crate::htensor::TensorModule;
use crate::interconnect::IcModule;
use crate::linalg::{LinearMap, Vector};
use crate::operad::{Operad, SModule, Tree};
use crate::perm::SetMap;
use crate::pseudo::Pseudoproduct;
use crate::scalar::{Field, Scalar};

pub type SparseJson = Vec<(usize, Scalar)>;

fn to_vector(v: &SparseJson) -> Vector {
    v.iter().cloned().collect()
}

fn from_vector(v: &Vector) -> SparseJson {
    v.iter().map(|(k, c)| (*k, c.clone())).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum FieldJson {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

impl FieldJson {
    pub fn field(&self) -> Result<Field> {
        match self {
            FieldJson::Named(s) if s == "Q" => Ok(Field::Rational),
            FieldJson::Named(s) => Err(Error::Parse(format!("unknown field {s:?}"))),
            FieldJson::Prime { fp } => Field::prime(*fp),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GroupJson {
    Cyclic { n: usize },
    Symmetric { n: usize },
    Table { elements: Vec<String>, mul: Vec<Vec<usize>> },
}

/// An antipode value replaced by hand, for negative controls.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct AntipodeOverride {
    pub basis: usize,
    pub value: SparseJson,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AlgebraJson {
    GroupAlgebra {
        field: FieldJson,
        group: GroupJson,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        antipode_override: Vec<AntipodeOverride>,
    },
    PrimitivePoly {
        field: FieldJson,
        vars: usize,
        #[serde(default)]
        degree_cap: Option<usize>,
    },
}

impl AlgebraJson {
    pub fn build(&self) -> Result<HopfAlgebra> {
        match self {
            AlgebraJson::GroupAlgebra { field, group, antipode_override } => {
                let field = field.field()?;
                let mut h = match group {
                    GroupJson::Cyclic { n } => HopfAlgebra::cyclic(field, *n)?,
                    GroupJson::Symmetric { n } => HopfAlgebra::symmetric(field, *n)?,
                    GroupJson::Table { elements, mul } => {
                        HopfAlgebra::group_algebra(field, Group::from_table(elements.clone(), mul.clone())?, "k[G]")
                    }
                };
                for o in antipode_override {
                    h = h.with_antipode_value(o.basis, to_vector(&o.value))?;
                }
                Ok(h)
            }
            AlgebraJson::PrimitivePoly { field, vars, degree_cap } => {
                HopfAlgebra::primitive_poly(field.field()?, *vars, *degree_cap)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum OverJson {
    Named(String),
    TensorPower { tensor_power: usize },
}

/// `action[slot][h][v]` is `h` acting in `slot` on basis vector `v`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ModuleJson {
    pub over: OverJson,
    pub rank: usize,
    pub action: Vec<Vec<Vec<SparseJson>>>,
}

impl ModuleJson {
    pub fn build(&self, alg: &Arc<HopfAlgebra>) -> Result<TensorModule> {
        let arity = match &self.over {
            OverJson::Named(s) if s == "H" => 1,
            OverJson::Named(s) => return Err(Error::Parse(format!("unknown base {s:?}"))),
            OverJson::TensorPower { tensor_power } => *tensor_power,
        };
        let actions = self
            .action
            .iter()
            .map(|slot| {
                slot.iter()
                    .map(|cols| LinearMap::from_columns(self.rank, cols.iter().map(to_vector).collect()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let m = TensorModule::new(alg.clone(), arity, self.rank, actions)?;
        if let Some(w) = m.check_axioms() {
            return Err(Error::Parse(format!("module axioms fail: {w}")));
        }
        Ok(m)
    }

    pub fn from_module(m: &TensorModule) -> Result<Self> {
        let d = m.algebra().dim()?;
        let action = (0..m.arity())
            .map(|s| (0..d).map(|h| m.action(s, h).columns().iter().map(from_vector).collect()).collect())
            .collect();
        let over = if m.arity() == 1 { OverJson::Named("H".into()) } else { OverJson::TensorPower { tensor_power: m.arity() } };
        Ok(ModuleJson { over, rank: m.dim(), action })
    }
}

/// A graded module: either pieces given directly or `V^∞` of one module.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GradedJson {
    pub truncation: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regular_of: Option<ModuleJson>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub pieces: BTreeMap<usize, ModuleJson>,
}

impl GradedJson {
    pub fn build(&self, alg: &Arc<HopfAlgebra>) -> Result<GradedModule> {
        match &self.regular_of {
            Some(m) if self.pieces.is_empty() => GradedModule::regular(m.build(alg)?, self.truncation),
            Some(_) => Err(Error::Parse("give either regular_of or pieces".into())),
            None => {
                let pieces = (0..=self.truncation)
                    .map(|n| match self.pieces.get(&n) {
                        Some(m) => m.build(alg),
                        None => TensorModule::zero(alg.clone(), n),
                    })
                    .collect::<Result<Vec<_>>>()?;
                GradedModule::direct(alg.clone(), self.truncation, pieces)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum RuleKindJson {
    Id,
    Delta,
    Explicit,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RuleEntryJson {
    pub map: Vec<usize>,
    pub target: usize,
    /// Dense rows.
    pub matrix: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RuleJson {
    pub kind: RuleKindJson,
    #[serde(default)]
    pub entries: Vec<RuleEntryJson>,
}

impl RuleJson {
    pub fn build(&self, module: Arc<GradedModule>) -> Result<IcModule> {
        match self.kind {
            RuleKindJson::Id => IcModule::id(module),
            RuleKindJson::Delta => IcModule::delta(module),
            RuleKindJson::Explicit => {
                let mut table = BTreeMap::new();
                for e in &self.entries {
                    let pi = SetMap::new(e.target, e.map.clone())?;
                    let rows = module.dim(pi.source());
                    let cols = e.matrix.first().map_or(0, Vec::len);
                    if e.matrix.len() != rows {
                        return Err(Error::Parse(format!("entry for {pi}: expected {rows} rows")));
                    }
                    table.insert(pi, LinearMap::from_dense(rows, cols, &e.matrix)?);
                }
                IcModule::explicit(module, table)
            }
        }
    }
}

/// `table` lists `v·w ↦ value` in normal-form coordinates of `H^⊗2 ⊗_H V`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PseudoJson {
    pub carrier: ModuleJson,
    pub table: Vec<PseudoEntryJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PseudoEntryJson {
    pub v: usize,
    pub w: usize,
    pub value: SparseJson,
}

impl PseudoJson {
    pub fn build(&self, alg: &Arc<HopfAlgebra>) -> Result<Pseudoproduct> {
        let carrier = Arc::new(self.carrier.build(alg)?);
        let zero = Pseudoproduct::zero(carrier.clone())?;
        let d = carrier.dim();
        let mut table = LinearMap::zero(zero.table().rows(), d * d);
        for e in &self.table {
            if e.v >= d || e.w >= d {
                return Err(Error::Parse(format!("no basis pair ({}, {})", e.v, e.w)));
            }
            table.set_column(e.v * d + e.w, to_vector(&e.value));
        }
        Pseudoproduct::new(carrier, table)
    }

    pub fn from_pseudo(p: &Pseudoproduct) -> Result<Self> {
        let d = p.carrier().dim();
        let table = (0..d * d)
            .filter(|&c| !p.table().column(c).is_zero())
            .map(|c| PseudoEntryJson { v: c / d, w: c % d, value: from_vector(p.table().column(c)) })
            .collect();
        Ok(PseudoJson { carrier: ModuleJson::from_module(p.carrier())?, table })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ComponentJson {
    pub dim: usize,
    /// `sn_action[σ.rank()]` as columns.
    pub sn_action: Vec<Vec<SparseJson>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GammaJson {
    pub outer: usize,
    /// `[arity, index]` per inner slot.
    pub inners: Vec<(usize, usize)>,
    pub value: SparseJson,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct OperadJson {
    pub name: String,
    pub field: FieldJson,
    pub arity_cap: usize,
    pub components: BTreeMap<usize, ComponentJson>,
    pub unit: usize,
    pub gamma: Vec<GammaJson>,
}

impl OperadJson {
    /// Composites missing from the table are zero.
    pub fn build(&self) -> Result<Operad> {
        let field = self.field.field()?;
        let actions = (0..=self.arity_cap)
            .map(|n| {
                let count = crate::perm::Perm::all(n).len();
                match self.components.get(&n) {
                    Some(c) => c
                        .sn_action
                        .iter()
                        .map(|cols| LinearMap::from_columns(c.dim, cols.iter().map(to_vector).collect()))
                        .collect::<Result<Vec<_>>>(),
                    None => Ok(vec![LinearMap::zero(0, 0); count]),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let sm = SModule::new(field, actions)?;
        let table: BTreeMap<Tree, Vector> = self
            .gamma
            .iter()
            .map(|g| (Tree { outer: g.outer, inners: g.inners.clone() }, to_vector(&g.value)))
            .collect();
        Operad::new(self.name.clone(), sm, self.unit, move |t| Ok(table.get(t).cloned().unwrap_or_default()))
    }

    pub fn from_operad(op: &Operad, field: FieldJson) -> Result<Self> {
        let sm = op.smodule();
        let components = (0..=op.cap())
            .filter(|&n| sm.dim(n) > 0)
            .map(|n| {
                let sn_action = crate::perm::Perm::all(n).iter().map(|s| sm.action(s).columns().iter().map(from_vector).collect()).collect();
                (n, ComponentJson { dim: sm.dim(n), sn_action })
            })
            .collect();
        let gamma = op
            .trees()
            .into_iter()
            .map(|t| Ok(GammaJson { value: from_vector(&op.gamma(&t)?), outer: t.outer, inners: t.inners }))
            .collect::<Result<Vec<_>>>()?;
        Ok(OperadJson { name: op.name().to_string(), field, arity_cap: op.cap(), components, unit: op.unit(), gamma })
    }
}

/// Reads and parses a JSON file, naming the file and position on failure.
pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn algebra_files_parse() {
        let a: AlgebraJson = serde_json::from_str(r#"{"field":"Q","kind":"group_algebra","group":{"type":"cyclic","n":2}}"#).unwrap();
        assert_eq!(a.build().unwrap().dim().unwrap(), 2);
        let p: AlgebraJson = serde_json::from_str(r#"{"field":{"Fp":5},"kind":"primitive_poly","vars":1,"degree_cap":6}"#).unwrap();
        assert_eq!(p.build().unwrap().field(), Field::Prime(5));
        let bad = r#"{"field":"Q","kind":"group_algebra","group":{"type":"table","elements":["e","a"],"mul":[[0,1],[1,1]]}}"#;
        let bad: AlgebraJson = serde_json::from_str(bad).unwrap();
        assert!(bad.build().is_err());
    }

    #[test]
    fn module_round_trip() {
        let h = Arc::new(HopfAlgebra::cyclic(Field::Rational, 2).unwrap());
        let m = TensorModule::regular(h.clone()).unwrap();
        let j = ModuleJson::from_module(&m).unwrap();
        let text = serde_json::to_string(&j).unwrap();
        let back: ModuleJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.build(&h).unwrap(), m);
    }

    #[test]
    fn broken_module_is_rejected() {
        let h = Arc::new(HopfAlgebra::cyclic(Field::Rational, 2).unwrap());
        // g acting as zero breaks g·g = e
        let j: ModuleJson = serde_json::from_str(r#"{"over":"H","rank":1,"action":[[[[[0,1]]],[[]]]]}"#).unwrap();
        assert!(j.build(&h).is_err());
    }

    #[test]
    fn operad_round_trip() {
        let op = Operad::ass(Field::Rational, 3);
        let j = OperadJson::from_operad(&op, FieldJson::Named("Q".into())).unwrap();
        let back = serde_json::from_str::<OperadJson>(&serde_json::to_string(&j).unwrap()).unwrap().build().unwrap();
        assert_eq!(back.smodule(), op.smodule());
        assert!(back.check_axioms().unwrap().iter().all(|c| c.passed()));
    }
}
