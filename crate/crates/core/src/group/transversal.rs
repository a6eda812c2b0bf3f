use std::sync::Arc;

use super::chain::{intersect_chain, SubgroupChain};
use super::table::{ElementSet, Group};
use crate::error::{Error, Result};

/// An ascending transversal T_0 ⊆ T_1 ⊆ ... ⊆ T_d of H_i in G_i.
///
/// `reps` is ordered by level of first appearance, then element index; this
/// is the block order used by induced modules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transversal {
    g_chain: SubgroupChain,
    h_chain: SubgroupChain,
    reps: Vec<usize>,
    depth: Vec<usize>,
    level_counts: Vec<usize>,
    coset_of: Vec<usize>,
}

fn same_coset(g: &Group, h: &ElementSet, a: usize, b: usize) -> bool {
    h.contains(g.mul(g.inv(a), b))
}

/// Greedy ascending transversal: keep T_{i-1}, add the smallest element of
/// each new coset of H_i in G_i.
pub fn ascending_transversal(g_chain: &SubgroupChain, h_chain: &SubgroupChain) -> Result<Transversal> {
    check_pair(g_chain, h_chain)?;
    let g = g_chain.group();
    let mut reps: Vec<usize> = Vec::new();
    for i in 0..=g_chain.d() {
        let hi = h_chain.level(i);
        for &x in g_chain.level(i).elems() {
            if !reps.iter().any(|&t| same_coset(g, hi, t, x)) {
                reps.push(x);
            }
        }
    }
    Transversal::from_reps(g_chain, h_chain, reps)
}

fn check_pair(g_chain: &SubgroupChain, h_chain: &SubgroupChain) -> Result<()> {
    if g_chain.d() != h_chain.d()
        || (!Arc::ptr_eq(g_chain.group(), h_chain.group()) && g_chain.group() != h_chain.group())
    {
        return Err(Error::PreconditionFailure(
            "chains have different length or group".into(),
        ));
    }
    let g = g_chain.group();
    for i in 0..=g_chain.d() {
        if !h_chain.level(i).is_subset(g_chain.level(i)) {
            return Err(Error::PreconditionFailure(format!("H_{i} is not contained in G_{i}")));
        }
        g.require_normal(h_chain.level(i), g_chain.level(i), &format!("H_{i} in G_{i}"))?;
    }
    Ok(())
}

impl Transversal {
    /// Validates user-given representatives and orders them canonically.
    pub fn from_reps(g_chain: &SubgroupChain, h_chain: &SubgroupChain, mut reps: Vec<usize>) -> Result<Self> {
        check_pair(g_chain, h_chain)?;
        let g = g_chain.group();
        let d = g_chain.d();
        reps.sort_by_key(|&t| (g_chain.depth_of(t), t));
        reps.dedup();
        let depth: Vec<usize> = reps.iter().map(|&t| g_chain.depth_of(t)).collect();
        if depth.iter().any(|&k| k > d) {
            return Err(Error::PreconditionFailure("representative outside G".into()));
        }
        let mut level_counts = Vec::with_capacity(d + 1);
        for i in 0..=d {
            let ti = &reps[..depth.iter().filter(|&&k| k <= i).count()];
            let hi = h_chain.level(i);
            let index = g_chain.level(i).len() / hi.len();
            for (a, &x) in ti.iter().enumerate() {
                if let Some(&y) = ti[..a].iter().find(|&&y| same_coset(g, hi, y, x)) {
                    return Err(Error::PreconditionFailure(format!(
                        "T_{i}: {} and {} lie in the same coset of H_{i}",
                        g.label(y),
                        g.label(x)
                    )));
                }
            }
            if ti.len() != index {
                return Err(Error::PreconditionFailure(format!(
                    "T_{i} has {} elements, index of H_{i} in G_{i} is {index}",
                    ti.len()
                )));
            }
            level_counts.push(ti.len());
        }
        let hd = h_chain.top();
        let top = g_chain.top();
        let coset_of = (0..g.order())
            .map(|x| {
                if !top.contains(x) {
                    return usize::MAX;
                }
                reps.iter().position(|&t| same_coset(g, hd, t, x)).unwrap()
            })
            .collect();
        Ok(Transversal {
            g_chain: g_chain.clone(),
            h_chain: h_chain.clone(),
            reps,
            depth,
            level_counts,
            coset_of,
        })
    }

    pub fn group(&self) -> &Arc<Group> {
        self.g_chain.group()
    }

    pub fn g_chain(&self) -> &SubgroupChain {
        &self.g_chain
    }

    pub fn h_chain(&self) -> &SubgroupChain {
        &self.h_chain
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Level at which representative `k` first appears.
    pub fn depth(&self, k: usize) -> usize {
        self.depth[k]
    }

    /// |T_i|; T_i is the prefix of `reps` of this length.
    pub fn level_count(&self, i: usize) -> usize {
        self.level_counts[i.min(self.g_chain.d())]
    }

    /// Index of the representative of the coset of `x` (x in the top group).
    pub fn coset_index(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    /// σ(x): the representative of x H.
    pub fn section(&self, x: usize) -> usize {
        self.reps[self.coset_of[x]]
    }

    /// x = t_k h, returns (k, h).
    pub fn decompose(&self, x: usize) -> (usize, usize) {
        let k = self.coset_of[x];
        let g = self.group();
        (k, g.mul(g.inv(self.reps[k]), x))
    }

    pub fn labels(&self) -> Vec<String> {
        self.reps.iter().map(|&t| self.group().label(t).to_string()).collect()
    }
}

/// Transversal T = S·U adapted to a second normal subgroup E.
#[derive(Debug, Clone)]
pub struct MackeyTransversal {
    pub h_chain: SubgroupChain,
    pub e_chain: SubgroupChain,
    pub eh_chain: SubgroupChain,
    /// Transversal of (E∩H)_i in E_i.
    pub s: Transversal,
    /// Ascending representatives of G_i / E_iH_i.
    pub u: Vec<usize>,
    pub u_counts: Vec<usize>,
    /// Transversal of H_i in G_i with t = s u.
    pub t: Transversal,
    /// Block k of `t` is (index into s, index into u).
    pub factors: Vec<(usize, usize)>,
}

pub fn mackey_transversal(g_chain: &SubgroupChain, h: &ElementSet, e: &ElementSet) -> Result<MackeyTransversal> {
    let g = g_chain.group();
    let h_chain = intersect_chain(g_chain, h)?;
    let e_chain = intersect_chain(g_chain, e)?;
    let eh_chain = intersect_chain(g_chain, &h.intersect(e))?;
    let s = ascending_transversal(&e_chain, &eh_chain)?;
    let mut u: Vec<usize> = Vec::new();
    let mut u_counts = Vec::new();
    for i in 0..=g_chain.d() {
        let eh = g.product_set(e_chain.level(i), h_chain.level(i));
        for (a, &x) in u.iter().enumerate() {
            if let Some(&y) = u[..a].iter().find(|&&y| same_coset(g, &eh, y, x)) {
                return Err(Error::PreconditionFailure(format!(
                    "no ascending double-coset representatives: {} and {} merge at level {i}",
                    g.label(y),
                    g.label(x)
                )));
            }
        }
        for &x in g_chain.level(i).elems() {
            if !u.iter().any(|&y| same_coset(g, &eh, y, x)) {
                u.push(x);
            }
        }
        u_counts.push(u.len());
    }
    let mut products = Vec::new();
    for (ui, &uu) in u.iter().enumerate() {
        for (si, &ss) in s.reps().iter().enumerate() {
            products.push((g.mul(ss, uu), si, ui));
        }
    }
    let t = Transversal::from_reps(g_chain, &h_chain, products.iter().map(|p| p.0).collect())?;
    if t.len() != products.len() {
        return Err(Error::PreconditionFailure("products s*u are not distinct".into()));
    }
    let factors = t
        .reps()
        .iter()
        .map(|&x| {
            let p = products.iter().find(|p| p.0 == x).unwrap();
            (p.1, p.2)
        })
        .collect();
    Ok(MackeyTransversal {
        h_chain,
        e_chain,
        eh_chain,
        s,
        u,
        u_counts,
        t,
        factors,
    })
}
