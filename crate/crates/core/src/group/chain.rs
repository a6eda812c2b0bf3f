use std::sync::Arc;

use super::table::{ElementSet, Group};
use crate::error::{Error, Result};

/// A chain 1 = S_0 ◁ S_1 ◁ ... ◁ S_d of subgroups of a group.
///
/// Levels beyond `d` repeat the top member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupChain {
    group: Arc<Group>,
    members: Vec<ElementSet>,
    normal_in_group: Vec<bool>,
}

/// Checks subgroup and successive-normality conditions and builds the chain.
pub fn verify_chain(group: &Arc<Group>, members: Vec<ElementSet>) -> Result<SubgroupChain> {
    if members.is_empty() {
        return Err(Error::NotSubgroup {
            index: 0,
            detail: "empty chain".into(),
        });
    }
    if members[0] != group.trivial() {
        return Err(Error::NotSubgroup {
            index: 0,
            detail: "first member must be the trivial subgroup".into(),
        });
    }
    for (i, m) in members.iter().enumerate() {
        group
            .check_subgroup(m)
            .map_err(|detail| Error::NotSubgroup { index: i, detail })?;
    }
    for i in 1..members.len() {
        if !members[i - 1].is_subset(&members[i]) {
            return Err(Error::NotSubgroup {
                index: i - 1,
                detail: format!("not contained in member {i}"),
            });
        }
        group.require_normal(&members[i - 1], &members[i], &format!("member {} in member {i}", i - 1))?;
    }
    let all = group.all();
    let normal_in_group = members.iter().map(|m| group.is_normal_in(m, &all)).collect();
    Ok(SubgroupChain {
        group: group.clone(),
        members,
        normal_in_group,
    })
}

/// The chain S_i ∩ H, for H normal in the top member.
pub fn intersect_chain(chain: &SubgroupChain, h: &ElementSet) -> Result<SubgroupChain> {
    let g = chain.group();
    g.check_subgroup(h).map_err(|detail| Error::NotSubgroup {
        index: chain.d(),
        detail,
    })?;
    g.require_normal(h, chain.top(), "H in top of chain")?;
    let members = chain.members.iter().map(|m| m.intersect(h)).collect();
    verify_chain(g, members)
}

impl SubgroupChain {
    pub fn from_labels<S: AsRef<str>>(group: &Arc<Group>, levels: &[Vec<S>]) -> Result<Self> {
        let members = levels
            .iter()
            .map(|l| group.set_from_labels(l))
            .collect::<Result<Vec<_>>>()?;
        verify_chain(group, members)
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    /// Length d of the chain.
    pub fn d(&self) -> usize {
        self.members.len() - 1
    }

    /// S_i, constant for i ≥ d.
    pub fn level(&self, i: usize) -> &ElementSet {
        &self.members[i.min(self.d())]
    }

    pub fn top(&self) -> &ElementSet {
        &self.members[self.d()]
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    /// Whether S_i is normal in the whole group.
    pub fn normal_in_group(&self, i: usize) -> bool {
        self.normal_in_group[i.min(self.d())]
    }

    /// Smallest i with x ∈ S_i.
    pub fn depth_of(&self, x: usize) -> usize {
        (0..=self.d())
            .find(|&i| self.members[i].contains(x))
            .unwrap_or(usize::MAX)
    }

    pub fn labels(&self) -> Vec<Vec<String>> {
        self.members.iter().map(|m| m.labels(&self.group)).collect()
    }
}
