use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use super::session::Session;
use crate::clifford::{going_down, going_up, BuildingBlockSet, DecompositionNode};
use crate::error::{Error, Result};
use crate::fragment::{check_fragment, irreducible_certificate, GliderFragment};
use crate::geometry::{
    coefficient_matrices, constraint_check, evaluate_point, maximal_chain_check, rank_locus, Semantics,
};
use crate::group::{ascending_transversal, compute_cocycle, intersect_chain, ElementSet, Group, Transversal};
use crate::induct::{induce, mackey_decompose, restrict_fragment, star_lemma_check};
use crate::linmod::{GModule, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Check,
    Cocycle,
    Induce,
    Restrict,
    Up,
    Down,
    Mackey,
    Geometry,
    Evaluate,
}

impl Command {
    pub const ALL: [&'static str; 9] = [
        "check", "cocycle", "induce", "restrict", "up", "down", "mackey", "geometry", "evaluate",
    ];

    pub fn name(&self) -> &'static str {
        Self::ALL[*self as usize]
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        use Command::*;
        let all = [Check, Cocycle, Induce, Restrict, Up, Down, Mackey, Geometry, Evaluate];
        all.into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnresolvedReference(format!("command {s}")))
    }
}

/// One verified property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        writeln!(out, "group: {}", self.inputs["group"].as_str().unwrap_or("?")).unwrap();
        writeln!(out, "results:").unwrap();
        for line in serde_json::to_string_pretty(&self.results).unwrap().lines() {
            writeln!(out, "  {line}").unwrap();
        }
        writeln!(out, "checks:").unwrap();
        for c in &self.checks {
            let tag = if c.passed { "pass" } else { "FAIL" };
            match &c.witness {
                Some(w) => writeln!(out, "  [{tag}] {}: {w}", c.name).unwrap(),
                None => writeln!(out, "  [{tag}] {}", c.name).unwrap(),
            }
        }
        writeln!(out, "status: {}", if self.passed() { "pass" } else { "fail" }).unwrap();
        out
    }
}

fn check(name: &str, passed: bool, witness: Option<String>) -> Check {
    Check {
        name: name.to_string(),
        passed,
        witness: if passed { None } else { witness },
    }
}

fn space(s: &Subspace) -> Value {
    json!(s
        .vectors()
        .iter()
        .map(|v| v.iter().map(|c| c.to_string()).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn set(g: &Group, s: &ElementSet) -> Value {
    json!(s.labels(g))
}

fn fragment(f: &GliderFragment) -> Value {
    json!({
        "dims": f.dims(),
        "essential_length": f.essential_length(),
        "levels": f.levels().iter().map(space).collect::<Vec<_>>(),
    })
}

fn transversal(s: &Session) -> Result<Transversal> {
    let h_chain = intersect_chain(&s.chain, s.require_h()?)?;
    match &s.spec.options.transversal {
        None => ascending_transversal(&s.chain, &h_chain),
        Some(labels) => {
            let reps = labels.iter().map(|l| s.group.resolve(l)).collect::<Result<Vec<_>>>()?;
            Transversal::from_reps(&s.chain, &h_chain, reps)
        }
    }
}

/// The explicit base fragment or, failing that, the session fragment restricted to H.
fn base(s: &Session) -> Result<GliderFragment> {
    match &s.base {
        Some(b) => Ok(b.clone()),
        None => restrict_fragment(&s.fragment, s.require_h()?),
    }
}

fn inputs(s: &Session) -> Value {
    json!({
        "group": s.group.name(),
        "field": s.spec.field,
        "chain": s.chain.labels(),
        "h": s.h.as_ref().map(|h| h.labels(&s.group)),
        "e": s.e.as_ref().map(|e| e.labels(&s.group)),
        "module": s.spec.module.irreps,
        "fragment_dims": s.fragment.dims(),
    })
}

pub fn run(s: &Session, cmd: Command) -> Result<Report> {
    let (results, checks) = match cmd {
        Command::Check => run_check(s)?,
        Command::Cocycle => run_cocycle(s)?,
        Command::Induce => run_induce(s)?,
        Command::Restrict => run_restrict(s)?,
        Command::Up => run_up(s)?,
        Command::Down => run_down(s)?,
        Command::Mackey => run_mackey(s)?,
        Command::Geometry => run_geometry(s)?,
        Command::Evaluate => run_evaluate(s)?,
    };
    Ok(Report {
        command: cmd.name().to_string(),
        inputs: inputs(s),
        results,
        checks,
    })
}

type Outcome = Result<(Value, Vec<Check>)>;

fn certificate_tag(f: &GliderFragment) -> String {
    match irreducible_certificate(f) {
        Ok(c) => c.tag().to_string(),
        Err(e) => format!("not applicable ({e})"),
    }
}

fn run_check(s: &Session) -> Outcome {
    let f = &s.fragment;
    let report = check_fragment(f);
    let natural: Vec<bool> = (0..=f.last_level()).map(|i| f.star(i) == *f.level(i)).collect();
    let results = json!({
        "fragment": fragment(f),
        "body_dim": f.body().dim(),
        "natural": natural,
        "certificate": certificate_tag(f),
    });
    let witness = report.failures.first().map(|x| x.to_string());
    Ok((results, vec![check("fragment axioms", report.passed(), witness)]))
}

fn run_cocycle(s: &Session) -> Outcome {
    let t = transversal(s)?;
    let c = compute_cocycle(&t)?;
    let g = &s.group;
    let h1 = t.h_chain().level(1);
    let in_h1 = (0..c.size()).all(|a| (0..c.size()).all(|b| h1.contains(c.value(a, b))));
    let results = json!({
        "transversal": t.labels(),
        "depths": (0..t.len()).map(|k| t.depth(k)).collect::<Vec<_>>(),
        "table": c.label_table(&t),
        "values_in_h1": in_h1,
    });
    let witness = c
        .witness()
        .map(|(lvl, a, b)| format!("level {lvl}: h({}, {})", g.label(t.reps()[a]), g.label(t.reps()[b])));
    Ok((
        results,
        vec![
            check("cocycle identity", true, None),
            check("filtered", c.is_filtered(), witness),
        ],
    ))
}

fn run_induce(s: &Session) -> Outcome {
    let t = transversal(s)?;
    let c = compute_cocycle(&t)?;
    let b = base(s)?;
    let ind = induce(&b, &t, &c)?;
    let star = star_lemma_check(&ind);
    let natural = |f: &GliderFragment| (0..=f.last_level()).all(|i| f.star(i) == *f.level(i));
    let (nb, ni) = (natural(&b), natural(&ind.result));
    let report = check_fragment(&ind.result);
    let results = json!({
        "transversal": t.labels(),
        "base_dims": b.dims(),
        "induced": fragment(&ind.result),
        "star_levels": star.levels.iter().map(|l| json!({"mu": l.0, "lhs": l.1, "rhs": l.2})).collect::<Vec<_>>(),
        "base_natural": nb,
        "induced_natural": ni,
    });
    Ok((
        results,
        vec![
            check(
                "induced fragment axioms",
                report.passed(),
                report.failures.first().map(|x| x.to_string()),
            ),
            check("star lemma", star.passed(), None),
            check(
                "naturality transfers",
                nb == ni,
                Some(format!("base {nb}, induced {ni}")),
            ),
        ],
    ))
}

fn run_restrict(s: &Session) -> Outcome {
    let r = restrict_fragment(&s.fragment, s.require_h()?)?;
    let report = check_fragment(&r);
    let results = json!({
        "h_chain": r.chain().labels(),
        "fragment": fragment(&r),
        "certificate": certificate_tag(&r),
    });
    Ok((
        results,
        vec![check(
            "restricted fragment axioms",
            report.passed(),
            report.failures.first().map(|x| x.to_string()),
        )],
    ))
}

fn run_up(s: &Session) -> Outcome {
    let b = s
        .base
        .as_ref()
        .ok_or_else(|| Error::UnresolvedReference("up needs a base fragment".into()))?;
    let t = transversal(s)?;
    let c = compute_cocycle(&t)?;
    let up = going_up(b, &t, &c)?;
    let index = s.chain.top().len() / b.chain().top().len();
    let results = json!({
        "transversal": t.labels(),
        "index": index,
        "summands": up.summands.iter().map(fragment).collect::<Vec<_>>(),
        "generated_by_deepest": up.generated_by_deepest,
    });
    Ok((
        results,
        vec![
            check(
                "one summand per coset",
                up.summands.len() == index,
                Some(format!("{} summands", up.summands.len())),
            ),
            check("summands certified", true, None),
            check("direct at the deepest level", true, None),
            check("levelwise sum is the induced fragment", true, None),
        ],
    ))
}

fn blocks_json(g: &Group, bb: &BuildingBlockSet) -> Value {
    json!({
        "stage": bb.stage,
        "h": set(g, &bb.h),
        "g": set(g, &bb.g),
        "summands": bb.summands.iter().map(|x| json!({
            "space": space(&x.space),
            "irrep": x.irrep,
            "generated": x.generated,
            "block": x.witness.0,
            "conjugator": g.label(x.witness.1),
        })).collect::<Vec<_>>(),
        "blocks": bb.block_spaces().iter().map(space).collect::<Vec<_>>(),
    })
}

fn node_json(g: &Group, n: &DecompositionNode) -> Value {
    json!({
        "stage": n.stage,
        "block": space(&n.block),
        "irrep": n.irrep,
        "dims": n.levels.iter().map(Subspace::dim).collect::<Vec<_>>(),
        "levels": n.levels.iter().map(space).collect::<Vec<_>>(),
        "group": set(g, &n.group),
        "next_group": n.next_group.as_ref().map(|x| set(g, x)),
        "inter_stage": n.inter_stage.as_ref().map(|x| set(g, x)),
        "tail_vanishes": n.tail_vanishes,
        "child_blocks": n.child_blocks.as_ref().map(|b| blocks_json(g, b)),
        "children": n.children.iter().map(|c| node_json(g, c)).collect::<Vec<_>>(),
    })
}

fn all_nodes(nodes: &[DecompositionNode]) -> Vec<&DecompositionNode> {
    nodes
        .iter()
        .flat_map(|n| std::iter::once(n).chain(all_nodes(&n.children)))
        .collect()
}

fn run_down(s: &Session) -> Outcome {
    let h = s.require_h()?;
    let down = going_down(&s.fragment, h, &s.catalog)?;
    let g = &s.group;
    let results = json!({
        "h_chain": down.h_chain.labels(),
        "restricted_irreducible": down.restricted_irreducible,
        "stage_one": down.stage_one.as_ref().map(|b| blocks_json(g, b)),
        "nodes": down.nodes.iter().map(|n| node_json(g, n)).collect::<Vec<_>>(),
        "level_sums": down.level_sums.iter().map(|l| json!({
            "level": l.level, "dim": l.dim, "target": l.target,
            "direct": l.direct, "overlap": l.overlap, "spans": l.spans,
        })).collect::<Vec<_>>(),
    });
    let e = s.fragment.essential_length();
    let bad_node = all_nodes(&down.nodes).into_iter().find(|n| !n.fragment_ok);
    let bad_level = down.level_sums.iter().find(|l| l.level < e && !l.spans);
    Ok((
        results,
        vec![
            check("every summand covered by a block", true, None),
            check(
                "block fragments pass the axioms",
                bad_node.is_none(),
                bad_node.map(|n| format!("block {}", n.block)),
            ),
            check(
                "blocks span the levels above the deepest",
                bad_level.is_none(),
                bad_level.map(|l| format!("level {}", l.level)),
            ),
        ],
    ))
}

fn run_mackey(s: &Session) -> Outcome {
    let e =
        s.e.as_ref()
            .ok_or_else(|| Error::UnresolvedReference("session has no e".into()))?;
    let b = base(s)?;
    let r = mackey_decompose(&s.chain, &b, e)?;
    let results = json!({
        "s": r.s, "u": r.u, "t": r.t,
        "block_map": r.block_map,
        "level_dims": r.level_dims,
        "checked": r.checked,
    });
    Ok((
        results,
        vec![check("level-preserving equivariant bijection", true, None)],
    ))
}

/// The first simple component of dimension > 1 and its coordinate range.
fn first_big_component(s: &Session) -> Result<(String, GModule, std::ops::Range<usize>)> {
    let report = constraint_check(s.fragment.module(), &s.catalog)?;
    let c = report
        .components
        .iter()
        .find(|c| c.coords.len() > 1)
        .ok_or_else(|| Error::PreconditionFailure("no simple component of dimension > 1".into()))?;
    let top = s.catalog.subgroup_name(s.chain.top());
    Ok((
        c.irrep.clone(),
        s.catalog.irrep(&top, &c.irrep)?.module.clone(),
        c.coords.clone(),
    ))
}

fn stages(s: &Session) -> Vec<usize> {
    match s.spec.options.stage {
        Some(i) => vec![i],
        None => (1..=s.chain.d()).collect(),
    }
}

fn run_geometry(s: &Session) -> Outcome {
    let h_chain = intersect_chain(&s.chain, s.require_h()?)?;
    let constraints = constraint_check(s.fragment.module(), &s.catalog)?;
    let (name, sm, _) = first_big_component(s)?;
    let mut out = Vec::new();
    let mut checks = Vec::new();
    for i in stages(s) {
        if i == 0 || i > s.chain.d() {
            return Err(Error::LevelOutOfRange(i));
        }
        let (a, b) = coefficient_matrices(&sm, h_chain.level(i), s.chain.level(i))?;
        let locus = rank_locus(&a, &b)?;
        let pts = locus.points.clone().unwrap_or_default();
        let ok = pts.iter().all(|p| match locus.semantics {
            Semantics::RankDrop => b.eval(p.coords()).rank() == locus.rank_a,
            _ => a.eval(p.coords()).rank() < locus.rank_a,
        });
        checks.push(check(&format!("stage {i} points lie on the locus"), ok, None));
        out.push(json!({
            "stage": i,
            "a": a.to_string(),
            "b": b.to_string(),
            "rank_a": locus.rank_a,
            "rank_b": locus.rank_b,
            "semantics": locus.semantics.tag(),
            "generators": locus.generators.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "points": locus.points.as_ref().map(|v| v.iter().map(|p| p.to_string()).collect::<Vec<_>>()),
        }));
    }
    let max = maximal_chain_check(&s.chain, &h_chain);
    let results = json!({
        "component": name,
        "constraints": {
            "components": constraints.components.iter().map(|c| json!({"irrep": c.irrep, "start": c.coords.start, "end": c.coords.end})).collect::<Vec<_>>(),
            "nonzero": constraints.nonzero,
            "shape": constraints.shape(),
        },
        "maximal_chain": max.holds(),
        "maximality_witness": max.witness.as_ref().map(|(i, x)| json!({"stage": i, "element": x})),
        "stages": out,
    });
    Ok((results, checks))
}

fn run_evaluate(s: &Session) -> Outcome {
    let h_chain = intersect_chain(&s.chain, s.require_h()?)?;
    let point = s
        .point()?
        .ok_or_else(|| Error::UnresolvedReference("evaluate needs options.point".into()))?;
    let (name, sm, _) = first_big_component(s)?;
    let r = evaluate_point(&sm, &s.chain, &h_chain, &point)?;
    let g = &s.group;
    let results = json!({
        "component": name,
        "point": point.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "stages": r.stages.iter().map(|st| json!({
            "stage": st.stage,
            "dim_h": st.dim_h,
            "dim_g": st.dim_g,
            "group": set(g, &st.group),
        })).collect::<Vec<_>>(),
        "inclusions": r.inclusions,
        "nested": r.inclusions.iter().all(|&b| b),
    });
    let contains = r.stages.iter().all(|st| h_chain.level(st.stage).is_subset(&st.group));
    Ok((results, vec![check("decomposition groups contain H_i", contains, None)]))
}
