//! Session files: one JSON document that fixes a whole computation.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::corpus;
use crate::error::{Error, Result};
use crate::exactfield::{CycField, CycNumber};
use crate::fragment::GliderFragment;
use crate::group::{intersect_chain, load_group, ElementSet, Group, GroupFile, SubgroupChain};
use crate::linmod::{CatalogFile, GModule, IrrepCatalog, Vector};

/// Levels as lists of vectors in the CycNumber text encoding.
pub type LevelsText = Vec<Vec<Vec<String>>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    /// Catalog subgroup name; the top of the chain when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<String>,
    pub irreps: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BaseSpec {
    pub module: ModuleSpec,
    pub levels: LevelsText,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stage: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transversal: Option<Vec<String>>,
}

impl Options {
    fn is_empty(&self) -> bool {
        *self == Options::default()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionSpec {
    /// Cyclotomic order n of K = Q(ζ_n).
    pub field: u32,
    /// Built-in group name or a path to a group table file.
    pub group: String,
    /// Path to an irrep catalog; the built-in one for the group when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<String>,
    pub chain: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<Vec<String>>,
    pub module: ModuleSpec,
    pub fragment: LevelsText,
    /// Fragment over the H-chain, for induction and going up.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<BaseSpec>,
    #[serde(default, skip_serializing_if = "Options::is_empty")]
    pub options: Options,
}

impl SessionSpec {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ParseError {
            line: e.line(),
            col: e.column(),
            msg: e.to_string(),
        })
    }

    pub fn to_text(&self) -> String {
        serde_json::to_string_pretty(self).expect("session serializes")
    }
}

/// A session with every reference resolved.
#[derive(Debug, Clone)]
pub struct Session {
    pub spec: SessionSpec,
    pub group: Arc<Group>,
    pub field: Arc<CycField>,
    pub catalog: IrrepCatalog,
    pub chain: SubgroupChain,
    pub h: Option<ElementSet>,
    pub e: Option<ElementSet>,
    pub fragment: GliderFragment,
    pub base: Option<GliderFragment>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn relative(dir: &Path, p: &str) -> PathBuf {
    let path = Path::new(p);
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        dir.join(path)
    }
}

fn set_of(group: &Group, labels: &[String], what: &str) -> Result<ElementSet> {
    for l in labels {
        if group.index_of(l).is_none() {
            return Err(Error::UnresolvedReference(format!("{what}: element {l}")));
        }
    }
    group.set_from_labels(labels)
}

fn vectors(field: &Arc<CycField>, dim: usize, levels: &LevelsText) -> Result<Vec<Vec<Vector>>> {
    levels
        .iter()
        .map(|level| {
            level
                .iter()
                .map(|v| {
                    if v.len() != dim {
                        return Err(Error::DimensionMismatch(format!(
                            "vector of length {} in dimension {dim}",
                            v.len()
                        )));
                    }
                    v.iter().map(|c| CycNumber::parse_text(field, c)).collect()
                })
                .collect()
        })
        .collect()
}

fn build_module(catalog: &IrrepCatalog, spec: &ModuleSpec, default_sub: &str) -> Result<Arc<GModule>> {
    let sub = spec.subgroup.as_deref().unwrap_or(default_sub);
    let parts = spec
        .irreps
        .iter()
        .map(|n| {
            catalog
                .irrep(sub, n)
                .map(|i| &i.module)
                .map_err(|_| Error::UnresolvedReference(format!("irrep {n} of {sub}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if parts.is_empty() {
        return Err(Error::DimensionMismatch("module without summands".into()));
    }
    Ok(Arc::new(GModule::direct_sum(&parts)?))
}

impl Session {
    pub fn load(path: &Path) -> Result<Self> {
        let spec = SessionSpec::parse(&read(path)?)?;
        Self::resolve(spec, path.parent().unwrap_or(Path::new(".")))
    }

    /// Resolves names and paths (relative to `dir`) and builds the fragments.
    pub fn resolve(spec: SessionSpec, dir: &Path) -> Result<Self> {
        let field = CycField::get(spec.field);
        let group = match corpus::group(&spec.group) {
            Ok(g) => g,
            Err(_) => {
                let path = relative(dir, &spec.group);
                if !path.exists() {
                    return Err(Error::UnresolvedReference(format!("group {}", spec.group)));
                }
                let file: GroupFile = serde_json::from_str(&read(&path)?).map_err(|e| Error::Parse {
                    what: "group file".into(),
                    detail: e.to_string(),
                })?;
                Arc::new(load_group(&file)?)
            }
        };
        let catalog = match &spec.catalog {
            None => corpus::catalog(&group, &field)?,
            Some(p) => {
                let file: CatalogFile = serde_json::from_str(&read(&relative(dir, p))?).map_err(|e| Error::Parse {
                    what: "catalog file".into(),
                    detail: e.to_string(),
                })?;
                IrrepCatalog::load(&group, &field, &file)?
            }
        };
        let members = spec
            .chain
            .iter()
            .enumerate()
            .map(|(k, l)| set_of(&group, l, &format!("chain member {k}")))
            .collect::<Result<Vec<_>>>()?;
        let chain = crate::group::verify_chain(&group, members)?;
        let h = spec.h.as_ref().map(|l| set_of(&group, l, "h")).transpose()?;
        let e = spec.e.as_ref().map(|l| set_of(&group, l, "e")).transpose()?;

        let top = catalog.subgroup_name(chain.top());
        let module = build_module(&catalog, &spec.module, &top)?;
        let levels = vectors(&field, module.dim(), &spec.fragment)?;
        let fragment = GliderFragment::from_vectors(&chain, &module, levels)?;

        let base = match &spec.base {
            None => None,
            Some(b) => {
                let h = h
                    .as_ref()
                    .ok_or_else(|| Error::UnresolvedReference("base fragment needs h".into()))?;
                let h_chain = intersect_chain(&chain, h)?;
                let module = build_module(&catalog, &b.module, &catalog.subgroup_name(h))?;
                if module.acting() != h {
                    return Err(Error::PreconditionFailure("base module does not act by h".into()));
                }
                let levels = vectors(&field, module.dim(), &b.levels)?;
                Some(GliderFragment::from_vectors(&h_chain, &module, levels)?)
            }
        };
        Ok(Session {
            spec,
            group,
            field,
            catalog,
            chain,
            h,
            e,
            fragment,
            base,
        })
    }

    pub fn require_h(&self) -> Result<&ElementSet> {
        self.h
            .as_ref()
            .ok_or_else(|| Error::UnresolvedReference("session has no h".into()))
    }

    pub fn point(&self) -> Result<Option<Vector>> {
        self.spec
            .options
            .point
            .as_ref()
            .map(|p| p.iter().map(|c| CycNumber::parse_text(&self.field, c)).collect())
            .transpose()
    }
}
