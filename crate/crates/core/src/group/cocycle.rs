use super::transversal::Transversal;
use crate::error::{Error, Result};
use crate::par;

/// The 2-cocycle h(a, b) = σ(ab)⁻¹ σ(a) σ(b) of a transversal, indexed by
/// transversal positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle2 {
    n: usize,
    values: Vec<usize>,
    witness: Option<(usize, usize, usize)>,
}

/// Computes the cocycle, checks the cocycle identity exhaustively and records
/// whether it is filtered (h(T_i, T) ⊆ H_i for every level i).
pub fn compute_cocycle(t: &Transversal) -> Result<Cocycle2> {
    let g = t.group();
    let n = t.len();
    let reps = t.reps();
    let top_h = t.h_chain().top();
    let mut values = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let p = g.mul(reps[a], reps[b]);
            let v = g.mul(g.inv(t.section(p)), p);
            debug_assert!(top_h.contains(v));
            values.push(v);
        }
    }
    let cocycle = Cocycle2 {
        n,
        values,
        witness: None,
    };
    let firsts: Vec<usize> = (0..n).collect();
    let violation = par::find_map_first(&firsts, |&a| {
        for b in 0..n {
            for c in 0..n {
                let ab = t.coset_index(g.mul(reps[a], reps[b]));
                let bc = t.coset_index(g.mul(reps[b], reps[c]));
                let lhs = g.mul(cocycle.value(ab, c), g.conj(cocycle.value(a, b), reps[c]));
                let rhs = g.mul(cocycle.value(a, bc), cocycle.value(b, c));
                if lhs != rhs {
                    return Some((a, b, c));
                }
            }
        }
        None
    });
    if let Some((a, b, c)) = violation {
        return Err(Error::CocycleIdentityViolation(
            g.label(reps[a]).into(),
            g.label(reps[b]).into(),
            g.label(reps[c]).into(),
        ));
    }
    let mut witness = None;
    'levels: for i in 0..=t.g_chain().d() {
        let hi = t.h_chain().level(i);
        for a in 0..t.level_count(i) {
            for b in 0..n {
                if !hi.contains(cocycle.value(a, b)) {
                    witness = Some((i, a, b));
                    break 'levels;
                }
            }
        }
    }
    Ok(Cocycle2 { witness, ..cocycle })
}

impl Cocycle2 {
    /// h(t_a, t_b) as a group element.
    #[inline]
    pub fn value(&self, a: usize, b: usize) -> usize {
        self.values[a * self.n + b]
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_filtered(&self) -> bool {
        self.witness.is_none()
    }

    /// First (level, a, b) with h(t_a, t_b) ∉ H_level.
    pub fn witness(&self) -> Option<(usize, usize, usize)> {
        self.witness
    }

    pub fn require_filtered(&self, t: &Transversal) -> Result<()> {
        match self.witness {
            None => Ok(()),
            Some((level, a, b)) => {
                let g = t.group();
                Err(Error::CocycleNotFiltered {
                    level,
                    g1: g.label(t.reps()[a]).into(),
                    g2: g.label(t.reps()[b]).into(),
                    value: g.label(self.value(a, b)).into(),
                })
            }
        }
    }

    /// Rows of labels, for reports.
    pub fn label_table(&self, t: &Transversal) -> Vec<Vec<String>> {
        let g = t.group();
        (0..self.n)
            .map(|a| (0..self.n).map(|b| g.label(self.value(a, b)).to_string()).collect())
            .collect()
    }
}
