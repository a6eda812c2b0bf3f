use std::sync::Arc;

use super::blocks::{building_blocks, decomposition_group, BuildingBlockSet};
use super::require_certified;
use crate::error::Result;
use crate::fragment::{check_fragment, irreducible_certificate, Certificate, GliderFragment};
use crate::group::{intersect_chain, ElementSet, SubgroupChain};
use crate::induct::restrict_fragment;
use crate::linmod::{span_under, GModule, IrrepCatalog, Subspace};

/// A building block S at some stage with the fragment M(S) it spans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionNode {
    pub stage: usize,
    pub block: Subspace,
    pub irrep: String,
    /// KG S ⊇ KG_{e-1} S ⊇ ⋯ ⊇ KG_s S, followed by the intersections with the
    /// ancestors' spans and finally with M_e and the deeper levels.
    pub levels: Vec<Subspace>,
    /// Whether M(S) passes the fragment check over the H-chain.
    pub fragment_ok: bool,
    /// G'_s inside G_s.
    pub group: ElementSet,
    /// Decomposition group of KH_{s+1} S inside G_{s+1}.
    pub next_group: Option<ElementSet>,
    /// Decomposition group of KH_{s+1} S relative to H_s inside H_{s+1}.
    pub inter_stage: Option<ElementSet>,
    /// M_e ∩ KG_s S = 0.
    pub tail_vanishes: bool,
    pub child_blocks: Option<BuildingBlockSet>,
    pub children: Vec<DecompositionNode>,
}

/// Levelwise comparison of Σ_S M(S)_k with M_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSum {
    pub level: usize,
    pub dim: usize,
    pub target: usize,
    pub direct: bool,
    pub overlap: usize,
    pub spans: bool,
}

#[derive(Debug, Clone)]
pub struct GoingDown {
    pub h_chain: SubgroupChain,
    /// M restricted to H is itself certified irreducible.
    pub restricted_irreducible: bool,
    pub stage_one: Option<BuildingBlockSet>,
    pub nodes: Vec<DecompositionNode>,
    pub level_sums: Vec<LevelSum>,
}

struct Ctx<'a> {
    f: &'a GliderFragment,
    m: &'a GModule,
    h_module: Arc<GModule>,
    h_chain: SubgroupChain,
    catalog: &'a IrrepCatalog,
    e: usize,
}

impl Ctx<'_> {
    fn g(&self, i: usize) -> &ElementSet {
        self.f.chain().level(i)
    }

    fn h(&self, i: usize) -> &ElementSet {
        self.h_chain.level(i)
    }

    fn node(&self, s: usize, block: &Subspace, irrep: &str, ancestors: &[Subspace]) -> Result<DecompositionNode> {
        let (m, e) = (self.m, self.e);
        let own = span_under(m, block, self.g(s));
        let mut levels: Vec<Subspace> = (0..=e - s).map(|k| span_under(m, block, self.g(e - k))).collect();
        for j in 1..s {
            let anc = span_under(m, &ancestors[s - j - 1], self.g(s - j));
            levels.push(anc.intersect(&own));
        }
        let tail = self.f.level(e).intersect(&own);
        let tail_vanishes = tail.is_zero();
        levels.push(tail);
        for k in e + 1..=self.f.last_level() {
            levels.push(self.f.level(k).intersect(&own));
        }
        let frag = GliderFragment::new(&self.h_chain, &self.h_module, levels.clone())?;
        let fragment_ok = check_fragment(&frag).passed();
        let group = decomposition_group(m, block, self.h(s), self.g(s))?;
        let (mut next_group, mut inter_stage, mut child_blocks, mut children) = (None, None, None, Vec::new());
        if s < e {
            next_group = Some(decomposition_group(m, block, self.h(s + 1), self.g(s + 1))?);
            inter_stage = Some(decomposition_group(m, block, self.h(s), self.h(s + 1))?);
            let space = span_under(m, block, self.g(s + 1));
            let generated = span_under(m, block, self.h(s + 1));
            let bb = building_blocks(m, &space, &generated, self.h(s + 1), self.g(s + 1), s + 1, self.catalog)?;
            let mut path = ancestors.to_vec();
            path.push(block.clone());
            for &b in &bb.blocks {
                let sm = &bb.summands[b];
                children.push(self.node(s + 1, &sm.space, &sm.irrep, &path)?);
            }
            child_blocks = Some(bb);
        }
        Ok(DecompositionNode {
            stage: s,
            block: block.clone(),
            irrep: irrep.to_string(),
            levels,
            fragment_ok,
            group,
            next_group,
            inter_stage,
            tail_vanishes,
            child_blocks,
            children,
        })
    }
}

/// Restricts the irreducible fragment M to H and, unless M_H stays
/// irreducible, splits it into the fragments M(S) of the building blocks.
pub fn going_down(f: &GliderFragment, h: &ElementSet, catalog: &IrrepCatalog) -> Result<GoingDown> {
    require_certified(f, "fragment")?;
    let h_chain = intersect_chain(f.chain(), h)?;
    let restricted = restrict_fragment(f, h)?;
    let e = f.essential_length();
    let m = f.module().as_ref();
    if e == 0 || irreducible_certificate(&restricted)? == Certificate::Certified {
        let node = DecompositionNode {
            stage: 0,
            block: f.level(e).clone(),
            irrep: catalog.identify(&m.on_subspace(f.level(0), h)?).unwrap_or_default(),
            levels: f.levels().to_vec(),
            fragment_ok: check_fragment(&restricted).passed(),
            group: f.chain().top().clone(),
            next_group: None,
            inter_stage: None,
            tail_vanishes: false,
            child_blocks: None,
            children: Vec::new(),
        };
        let level_sums = sums(f, std::slice::from_ref(&node));
        return Ok(GoingDown {
            h_chain,
            restricted_irreducible: true,
            stage_one: None,
            nodes: vec![node],
            level_sums,
        });
    }
    let ctx = Ctx {
        f,
        m,
        h_module: restricted.module().clone(),
        h_chain: h_chain.clone(),
        catalog,
        e,
    };
    let generated = span_under(m, f.level(e), ctx.h(1));
    let bb = building_blocks(m, f.level(e - 1), &generated, ctx.h(1), ctx.g(1), 1, catalog)?;
    let nodes = bb
        .blocks
        .iter()
        .map(|&b| ctx.node(1, &bb.summands[b].space, &bb.summands[b].irrep, &[]))
        .collect::<Result<Vec<_>>>()?;
    let level_sums = sums(f, &nodes);
    Ok(GoingDown {
        h_chain,
        restricted_irreducible: false,
        stage_one: Some(bb),
        nodes,
        level_sums,
    })
}

fn sums(f: &GliderFragment, nodes: &[DecompositionNode]) -> Vec<LevelSum> {
    let m = f.module();
    (0..=f.essential_length())
        .map(|k| {
            let parts: Vec<Subspace> = nodes.iter().map(|n| n.levels[k].clone()).collect();
            let sum = Subspace::sum_all(m.field(), m.dim(), &parts);
            let total: usize = parts.iter().map(Subspace::dim).sum();
            LevelSum {
                level: k,
                dim: sum.dim(),
                target: f.level(k).dim(),
                direct: total == sum.dim(),
                overlap: total - sum.dim(),
                spans: sum == *f.level(k),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::q8_example;

    #[test]
    fn q8_full_run() {
        let ex = q8_example().unwrap();
        let h = ex.set(&["1", "i", "-1", "-i"]);
        let down = going_down(&ex.fragment, &h, &ex.catalog).unwrap();
        assert!(!down.restricted_irreducible);
        let blocks: Vec<&Subspace> = down.nodes.iter().map(|n| &n.block).collect();
        assert_eq!(
            blocks,
            [&ex.span(&[&["1", "0,1", "0", "0"]]), &ex.span(&[&["0", "0", "1", "1"]])]
        );
        let z4j = ex.chain.level(1).clone();
        let q8 = ex.chain.top().clone();
        for n in &down.nodes {
            assert_eq!(n.group, z4j);
            assert_eq!(n.next_group.as_ref(), Some(&q8));
            assert!(n.fragment_ok);
            assert!(n.tail_vanishes);
        }
        let u = ex.span(&[&["1", "0", "0", "0"], &["0", "1", "0", "0"]]);
        assert_eq!(down.nodes[0].levels[0], u);
        let e34 = ex.span(&[&["0", "0", "1", "0"], &["0", "0", "0", "1"]]);
        assert_eq!(down.nodes[1].levels[0], e34);
        let spans: Vec<bool> = down.level_sums.iter().map(|l| l.spans).collect();
        assert_eq!(spans, [true, true, false]);
        assert!(down.level_sums.iter().all(|l| l.direct));
        // stage 2: U over Z4^i is V^i ⊕ V^-i, one block conjugate to the other by j
        let c = &down.nodes[0].children;
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].block, ex.span(&[&["1", "0", "0", "0"]]));
        assert_eq!(c[0].group, h);
        assert_eq!(down.nodes[1].children.len(), 2);
    }

    #[test]
    fn restriction_to_whole_group_is_single_node() {
        let ex = q8_example().unwrap();
        let down = going_down(&ex.fragment, ex.chain.top(), &ex.catalog).unwrap();
        assert!(down.restricted_irreducible);
        assert_eq!(down.nodes.len(), 1);
        assert!(down.level_sums.iter().all(|l| l.spans));
    }

    #[test]
    fn classical_case_has_one_block() {
        let ex = q8_example().unwrap();
        let chain =
            SubgroupChain::from_labels(&ex.group, &[vec!["1".to_string()], ex.chain.top().labels(&ex.group)]).unwrap();
        let u = Arc::new(ex.catalog.irrep("Q8", "U").unwrap().module.clone());
        let a = ex.vector(&["2", "1,3"]);
        let line = Subspace::span(&ex.field, 2, vec![a]);
        let levels = vec![Subspace::full(&ex.field, 2), line.clone(), Subspace::zero(&ex.field, 2)];
        let f = GliderFragment::new(&chain, &u, levels).unwrap();
        let down = going_down(&f, &ex.set(&["1", "-1"]), &ex.catalog).unwrap();
        assert!(!down.restricted_irreducible);
        assert_eq!(down.nodes.len(), 1);
        assert_eq!(down.nodes[0].block, line);
        // M = S ⊕ jS
        let j = ex.group.resolve("j").unwrap();
        let js = crate::linmod::translate(&u, j, &line);
        assert!(line.intersect(&js).is_zero());
        assert_eq!(line.sum(&js), Subspace::full(&ex.field, 2));
    }

    #[test]
    fn d8_node_keeps_levels_past_e() {
        let ex = crate::corpus::d8_example().unwrap();
        let h = ex.set(&["e", "x", "a2", "a2x"]);
        let down = going_down(&ex.fragment, &h, &ex.catalog).unwrap();
        let n = &down.nodes[0];
        assert_eq!(n.block, ex.span(&[&["1", "2"]]));
        // a rotates (1,2) onto an equivalent H_1-line, so the whole of G_1 stabilizes
        assert_eq!(n.group, *ex.chain.level(1));
        assert_eq!(n.levels.len(), ex.fragment.levels().len());
        assert!(n.levels[3].is_zero());
        assert!(n.fragment_ok);
        let child = &n.children[0];
        assert_eq!(child.block, ex.span(&[&["1", "1"]]));
        assert_eq!(child.group, h);
    }
}
