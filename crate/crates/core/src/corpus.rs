//! Built-in group tables and irrep catalogs shipped with the crate.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactfield::{CycField, CycNumber};
use crate::fragment::GliderFragment;
use crate::group::{load_group, ElementSet, Group, GroupFile, SubgroupChain};
use crate::linmod::{cyclic_submodule, CatalogFile, GModule, IrrepCatalog, Subspace, Vector};

const GROUPS: &[(&str, &str)] = &[
    ("Q8", include_str!("../data/groups/q8.json")),
    ("D8", include_str!("../data/groups/d8.json")),
    ("Z2", include_str!("../data/groups/z2.json")),
    ("Z4", include_str!("../data/groups/z4.json")),
    ("V4", include_str!("../data/groups/v4.json")),
];

const CATALOGS: &[(&str, &str)] = &[
    ("Q8", include_str!("../data/irreps/q8.json")),
    ("D8", include_str!("../data/irreps/d8.json")),
    ("Z2", include_str!("../data/irreps/z2.json")),
    ("Z4", include_str!("../data/irreps/z4.json")),
    ("V4", include_str!("../data/irreps/v4.json")),
];

pub fn group_names() -> Vec<&'static str> {
    GROUPS.iter().map(|g| g.0).collect()
}

pub fn group_json(name: &str) -> Option<&'static str> {
    GROUPS.iter().find(|g| g.0 == name).map(|g| g.1)
}

/// Loads and validates a built-in group.
pub fn group(name: &str) -> Result<Arc<Group>> {
    let text = group_json(name).ok_or_else(|| Error::UnresolvedReference(format!("group {name}")))?;
    let file: GroupFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        what: format!("group {name}"),
        detail: e.to_string(),
    })?;
    Ok(Arc::new(load_group(&file)?))
}

pub fn catalog_json(name: &str) -> Option<&'static str> {
    CATALOGS.iter().find(|g| g.0 == name).map(|g| g.1)
}

/// Loads and validates the built-in irrep catalog of a built-in group.
pub fn catalog(group: &Arc<Group>, field: &Arc<CycField>) -> Result<IrrepCatalog> {
    let text = catalog_json(group.name())
        .ok_or_else(|| Error::UnresolvedReference(format!("irrep catalog for {}", group.name())))?;
    let file: CatalogFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        what: format!("irrep catalog {}", group.name()),
        detail: e.to_string(),
    })?;
    IrrepCatalog::load(group, field, &file)
}

/// A worked example: group, catalog, chain, ambient module and fragment.
#[derive(Debug, Clone)]
pub struct Example {
    pub group: Arc<Group>,
    pub field: Arc<CycField>,
    pub catalog: IrrepCatalog,
    pub chain: SubgroupChain,
    pub module: Arc<GModule>,
    pub fragment: GliderFragment,
}

impl Example {
    pub fn set(&self, labels: &[&str]) -> ElementSet {
        self.group.set_from_labels(labels).expect("known labels")
    }

    pub fn vector(&self, coords: &[&str]) -> Vector {
        coords
            .iter()
            .map(|c| CycNumber::parse_text(&self.field, c).expect("coordinate text"))
            .collect()
    }

    pub fn span(&self, vectors: &[&[&str]]) -> Subspace {
        let vs = vectors.iter().map(|v| self.vector(v)).collect();
        Subspace::span(&self.field, self.module.dim(), vs)
    }

    pub fn sum_of(&self, subgroup: &str, irreps: &[&str]) -> Result<GModule> {
        let parts = irreps
            .iter()
            .map(|n| Ok(&self.catalog.irrep(subgroup, n)?.module))
            .collect::<Result<Vec<_>>>()?;
        GModule::direct_sum(&parts)
    }
}

fn example_base(group: &str, chain: &[&[&str]]) -> Result<(Arc<Group>, Arc<CycField>, IrrepCatalog, SubgroupChain)> {
    let g = self::group(group)?;
    let field = CycField::get(4);
    let cat = catalog(&g, &field)?;
    let levels: Vec<Vec<&str>> = chain.iter().map(|l| l.to_vec()).collect();
    let chain = SubgroupChain::from_labels(&g, &levels)?;
    Ok((g, field, cat, chain))
}

/// Q8 over 1 ◁ Z4^j ◁ Q8 with M = U ⊕ T3 ⊕ T2 ⊇ V^-i ⊕ T3 ⊕ T2 ⊇ Δ ⊇ 0, on
/// the basis f1, f2, e3, e4 (e1 = f1 + i f2).
pub fn q8_example() -> Result<Example> {
    let (group, field, catalog, chain) = example_base(
        "Q8",
        &[
            &["1"],
            &["1", "j", "-1", "-j"],
            &["1", "i", "j", "k", "-1", "-i", "-j", "-k"],
        ],
    )?;
    let parts: Vec<&GModule> = ["U", "T3", "T2"]
        .iter()
        .map(|n| Ok(&catalog.irrep("Q8", n)?.module))
        .collect::<Result<_>>()?;
    let module = Arc::new(GModule::direct_sum(&parts)?);
    let t = |s: &[&str]| -> Vector { s.iter().map(|c| CycNumber::parse_text(&field, c).unwrap()).collect() };
    let levels = vec![
        vec![
            t(&["1", "0", "0", "0"]),
            t(&["0", "1", "0", "0"]),
            t(&["0", "0", "1", "0"]),
            t(&["0", "0", "0", "1"]),
        ],
        vec![
            t(&["1", "0,1", "0", "0"]),
            t(&["0", "0", "1", "0"]),
            t(&["0", "0", "0", "1"]),
        ],
        vec![t(&["1", "0,1", "1", "1"])],
        vec![],
    ];
    let fragment = GliderFragment::from_vectors(&chain, &module, levels)?;
    Ok(Example {
        group,
        field,
        catalog,
        chain,
        module,
        fragment,
    })
}

/// D8 over 1 ◁ <a> ◁ D8 on its two-dimensional simple S, generated by (1, 2).
pub fn d8_example() -> Result<Example> {
    let (group, field, catalog, chain) = example_base(
        "D8",
        &[
            &["e"],
            &["e", "a", "a2", "a3"],
            &["e", "a", "a2", "a3", "x", "ax", "a2x", "a3x"],
        ],
    )?;
    let module = Arc::new(catalog.irrep("D8", "S")?.module.clone());
    let a = vec![CycNumber::from_int(&field, 1), CycNumber::from_int(&field, 2)];
    let line = Subspace::span(&field, 2, vec![a.clone()]);
    let levels = vec![
        Subspace::full(&field, 2),
        cyclic_submodule(&module, &a, chain.level(1)),
        line,
        Subspace::zero(&field, 2),
    ];
    let fragment = GliderFragment::new(&chain, &module, levels)?;
    Ok(Example {
        group,
        field,
        catalog,
        chain,
        module,
        fragment,
    })
}
