use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::matrix::FMatrix;
use super::module::{intertwiners, Character, GModule};
use super::subspace::Subspace;
use crate::error::{Error, Result};
use crate::exactfield::{CycField, CycNumber};
use crate::group::{ElementSet, Group};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepFile {
    pub name: String,
    pub dim: usize,
    /// Matrices on some generating set (or on every element).
    pub matrices: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupIrrepsFile {
    pub name: String,
    pub elements: Vec<String>,
    pub irreps: Vec<IrrepFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogFile {
    pub group: String,
    pub subgroups: Vec<SubgroupIrrepsFile>,
}

#[derive(Debug, Clone)]
pub struct Irrep {
    pub name: String,
    pub module: GModule,
    pub character: Character,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub subgroup: ElementSet,
    pub irreps: Vec<Irrep>,
}

/// Realizations of all irreducible representations of selected subgroups.
#[derive(Debug, Clone)]
pub struct IrrepCatalog {
    group: Arc<Group>,
    entries: Vec<CatalogEntry>,
}

/// One isotypic component of a split: the simple summands φ_k(S_ref).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotypicPart {
    pub irrep: String,
    pub multiplicity: usize,
    pub summands: Vec<Subspace>,
}

impl IrrepCatalog {
    /// Parses and validates: homomorphism property, distinct characters and
    /// Σ dim² = |H| for every subgroup.
    pub fn load(group: &Arc<Group>, field: &Arc<CycField>, file: &CatalogFile) -> Result<Self> {
        if file.group != group.name() {
            return Err(Error::InvalidCatalog(format!(
                "catalog is for {}, not {}",
                file.group,
                group.name()
            )));
        }
        let mut entries = Vec::new();
        for sub in &file.subgroups {
            let subgroup = group.set_from_labels(&sub.elements)?;
            group
                .check_subgroup(&subgroup)
                .map_err(|d| Error::InvalidCatalog(format!("{}: {d}", sub.name)))?;
            let mut irreps: Vec<Irrep> = Vec::new();
            for ir in &sub.irreps {
                let gens = ir
                    .matrices
                    .iter()
                    .map(|(label, rows)| Ok((group.resolve(label)?, FMatrix::parse(field, rows)?)))
                    .collect::<Result<Vec<_>>>()?;
                let module = GModule::from_generators(group, field, &subgroup, ir.dim, gens)
                    .map_err(|e| Error::InvalidCatalog(format!("{}/{}: {e}", sub.name, ir.name)))?;
                let character = module.character();
                if let Some(prev) = irreps.iter().find(|p| p.character == character) {
                    return Err(Error::InvalidCatalog(format!(
                        "{}: {} and {} have the same character",
                        sub.name, prev.name, ir.name
                    )));
                }
                irreps.push(Irrep {
                    name: ir.name.clone(),
                    module,
                    character,
                });
            }
            let total: usize = irreps.iter().map(|i| i.module.dim().pow(2)).sum();
            if total != subgroup.len() {
                return Err(Error::InvalidCatalog(format!(
                    "{}: sum of squared dimensions is {total}, subgroup order is {}",
                    sub.name,
                    subgroup.len()
                )));
            }
            entries.push(CatalogEntry {
                name: sub.name.clone(),
                subgroup,
                irreps,
            });
        }
        Ok(IrrepCatalog {
            group: group.clone(),
            entries,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn entry(&self, h: &ElementSet) -> Result<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.subgroup == *h)
            .ok_or_else(|| Error::CatalogMissing(format!("{{{}}}", h.labels(&self.group).join(","))))
    }

    pub fn entry_by_name(&self, name: &str) -> Result<&CatalogEntry> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .ok_or_else(|| Error::CatalogMissing(name.to_string()))
    }

    /// Name of the catalog subgroup equal to `h`, or its element list.
    pub fn subgroup_name(&self, h: &ElementSet) -> String {
        match self.entries.iter().find(|e| e.subgroup == *h) {
            Some(e) => e.name.clone(),
            None => format!("{{{}}}", h.labels(&self.group).join(",")),
        }
    }

    pub fn irrep(&self, subgroup: &str, name: &str) -> Result<&Irrep> {
        self.entry_by_name(subgroup)?
            .irreps
            .iter()
            .find(|i| i.name == name)
            .ok_or_else(|| Error::UnresolvedReference(format!("irrep {name} of {subgroup}")))
    }

    /// Name of the irrep with the given character, if it is simple.
    pub fn identify(&self, module: &GModule) -> Option<String> {
        let entry = self.entry(module.acting()).ok()?;
        let chi = module.character();
        entry.irreps.iter().find(|i| i.character == chi).map(|i| i.name.clone())
    }
}

/// Splits the H-invariant subspace W into simple summands, grouped by the
/// catalog irreps of H in catalog order.
pub fn split_isotypic(m: &GModule, w: &Subspace, h: &ElementSet, catalog: &IrrepCatalog) -> Result<Vec<IsotypicPart>> {
    let entry = catalog.entry(h)?;
    let wm = m.on_subspace(w, h)?;
    let field = m.field();
    let mut parts = Vec::new();
    let mut all = Vec::new();
    let mut total = 0;
    for irrep in &entry.irreps {
        let homs = intertwiners(&irrep.module, &wm)?;
        if homs.is_empty() {
            continue;
        }
        let summands: Vec<Subspace> = homs
            .iter()
            .map(|phi| {
                let vectors = (0..phi.cols()).map(|c| w.combine(&phi.column(c))).collect();
                Subspace::span(field, m.dim(), vectors)
            })
            .collect();
        for s in &summands {
            if s.dim() != irrep.module.dim() {
                return Err(Error::SplitMismatch(format!(
                    "summand of {} has dimension {}",
                    irrep.name,
                    s.dim()
                )));
            }
            total += s.dim();
            all.push(s.clone());
        }
        parts.push(IsotypicPart {
            irrep: irrep.name.clone(),
            multiplicity: summands.len(),
            summands,
        });
    }
    if total != w.dim() || Subspace::sum_all(field, m.dim(), &all) != *w {
        return Err(Error::SplitMismatch(format!(
            "summands have total dimension {total}, subspace has {}",
            w.dim()
        )));
    }
    Ok(parts)
}

/// Simple summands in split order.
pub fn simple_summands(
    m: &GModule,
    w: &Subspace,
    h: &ElementSet,
    catalog: &IrrepCatalog,
) -> Result<Vec<(String, Subspace)>> {
    Ok(split_isotypic(m, w, h, catalog)?
        .into_iter()
        .flat_map(|p| {
            let name = p.irrep;
            p.summands.into_iter().map(move |s| (name.clone(), s))
        })
        .collect())
}

/// Whether the H-modules on the invariant subspaces X and Y are isomorphic.
///
/// Decided by intertwiners: for semisimple X, Y with multiplicity vectors x, y
/// the Hom dimensions are x·x, y·y and x·y, and all three agree only when x = y.
pub fn equivalent(m: &GModule, x: &Subspace, y: &Subspace, h: &ElementSet) -> Result<bool> {
    if x.dim() != y.dim() {
        return Ok(false);
    }
    let (a, b) = (m.on_subspace(x, h)?, m.on_subspace(y, h)?);
    let xy = intertwiners(&a, &b)?.len();
    if xy == 0 && x.dim() > 0 {
        return Ok(false);
    }
    Ok(intertwiners(&a, &a)?.len() == xy && intertwiners(&b, &b)?.len() == xy)
}

/// Dimension of a character at the identity.
pub fn degree(chi: &Character, group: &Group) -> CycNumber {
    chi.value_at(group.identity()).clone()
}
