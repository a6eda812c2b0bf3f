use std::fmt;

use crate::error::{Error, Result};
use crate::exactfield::{homogeneous_binary_roots, standard_vars, CycNumber, MultiPoly, ProjPoint};
use crate::group::ElementSet;
use crate::linmod::{FMatrix, GModule};
use crate::par;

/// Matrix of homogeneous linear forms in x_0..x_{s-1}; column g is ρ(g)x.
#[derive(Clone, PartialEq, Eq)]
pub struct SymbolicMatrix {
    pub rows: usize,
    pub cols: usize,
    /// Group elements labelling the columns.
    pub elements: Vec<usize>,
    pub entries: Vec<Vec<MultiPoly>>,
}

impl SymbolicMatrix {
    pub fn entry(&self, r: usize, c: usize) -> &MultiPoly {
        &self.entries[r][c]
    }

    /// Substitutes a point for the variables.
    pub fn eval(&self, point: &[CycNumber]) -> FMatrix {
        let field = point[0].field().clone();
        let rows = self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| p.eval(point)).collect())
            .collect();
        FMatrix::from_rows(&field, self.cols, rows)
    }

    fn minor(&self, rows: &[usize], cols: &[usize]) -> MultiPoly {
        if rows.len() == 1 {
            return self.entries[rows[0]][cols[0]].clone();
        }
        let vars = self.entries[0][0].vars().clone();
        let field = self.entries[0][0].field().clone();
        let mut acc = MultiPoly::zero(&field, &vars);
        for (k, &c) in cols.iter().enumerate() {
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = self.entries[rows[0]][c].mul(&self.minor(&rows[1..], &rest));
            acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    /// All nonzero r×r minors, deduplicated up to scalars and made monic, in
    /// (row subset, column subset) lexicographic order.
    pub fn minors(&self, r: usize) -> Vec<MultiPoly> {
        if r == 0 || r > self.rows.min(self.cols) {
            return Vec::new();
        }
        let mut jobs = Vec::new();
        for rs in subsets(self.rows, r) {
            for cs in subsets(self.cols, r) {
                jobs.push((rs.clone(), cs));
            }
        }
        let all = par::map(&jobs, |(rs, cs)| self.minor(rs, cs));
        let mut out: Vec<MultiPoly> = Vec::new();
        for p in all {
            if !p.is_zero() && !out.iter().any(|q| q.is_scalar_multiple_of(&p)) {
                out.push(p.monic());
            }
        }
        out
    }

    /// Largest r with a nonzero r×r minor.
    pub fn generic_rank(&self) -> usize {
        (1..=self.rows.min(self.cols))
            .rev()
            .find(|&r| !self.minors(r).is_empty())
            .unwrap_or(0)
    }
}

impl fmt::Display for SymbolicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "({})", rows.join("; "))
    }
}

impl fmt::Debug for SymbolicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for k in start..n {
            cur.push(k);
            rec(k + 1, n, r, cur, out);
            cur.pop();
        }
    }
    rec(0, n, r, &mut cur, &mut out);
    out
}

/// The matrix whose columns are ρ_S(g)·(x_0, …, x_{s-1}) for g in `set`, in
/// element order.
pub fn coefficient_matrix(s: &GModule, set: &ElementSet) -> Result<SymbolicMatrix> {
    if !set.is_subset(s.acting()) {
        return Err(Error::PreconditionFailure(
            "module does not carry an action of the set".into(),
        ));
    }
    let n = s.dim();
    let vars = standard_vars(n);
    let mut entries = vec![Vec::with_capacity(set.len()); n];
    for &g in set.elems() {
        let rho = s.rho(g);
        for (r, row) in entries.iter_mut().enumerate() {
            row.push(MultiPoly::linear(rho.row(r), &vars));
        }
    }
    Ok(SymbolicMatrix {
        rows: n,
        cols: set.len(),
        elements: set.elems().to_vec(),
        entries,
    })
}

/// A_i over H_i and B_i over G_i.
pub fn coefficient_matrices(s: &GModule, h: &ElementSet, g: &ElementSet) -> Result<(SymbolicMatrix, SymbolicMatrix)> {
    Ok((coefficient_matrix(s, h)?, coefficient_matrix(s, g)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Semantics {
    /// rank B > rank A generically; the generators cut out where B drops to rank A.
    RankDrop,
    /// The ranks agree generically; the generators cut out where A drops.
    Degenerate,
    /// Equal ranks with no proper degeneracy.
    Empty,
}

impl Semantics {
    pub fn tag(&self) -> &'static str {
        match self {
            Semantics::RankDrop => "rank_drop",
            Semantics::Degenerate => "degenerate",
            Semantics::Empty => "empty",
        }
    }
}

/// Vanishing generators of a rank-comparison locus with its P^1 points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankLocus {
    pub rank_a: usize,
    pub rank_b: usize,
    pub generators: Vec<MultiPoly>,
    pub semantics: Semantics,
    /// Common zeros in P^1 when there are two variables and degree ≤ 2.
    pub points: Option<Vec<ProjPoint>>,
}

/// Compares the generic ranks of A and B and describes where they meet.
pub fn rank_locus(a: &SymbolicMatrix, b: &SymbolicMatrix) -> Result<RankLocus> {
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch(format!("{} rows against {}", a.rows, b.rows)));
    }
    let (ra, rb) = (a.generic_rank(), b.generic_rank());
    let (generators, semantics) = if rb > ra {
        (b.minors(ra + 1), Semantics::RankDrop)
    } else {
        let g = a.minors(ra);
        // a nonzero constant minor means A never drops
        if g.iter().any(|p| p.total_degree() == Some(0)) || g.is_empty() {
            (Vec::new(), Semantics::Empty)
        } else {
            (g, Semantics::Degenerate)
        }
    };
    let points = binary_points(&generators)?;
    Ok(RankLocus {
        rank_a: ra,
        rank_b: rb,
        generators,
        semantics,
        points,
    })
}

/// Common P^1 zeros of binary forms, when every generator has degree ≤ 2.
fn binary_points(gens: &[MultiPoly]) -> Result<Option<Vec<ProjPoint>>> {
    let Some(first) = gens.first() else { return Ok(None) };
    if first.vars().len() != 2 || gens.iter().any(|p| p.total_degree().unwrap_or(0) > 2) {
        return Ok(None);
    }
    let roots = homogeneous_binary_roots(first)?;
    let pts = roots
        .points
        .into_iter()
        .filter(|pt| gens.iter().all(|p| p.eval(pt.coords()).is_zero()))
        .collect();
    Ok(Some(pts))
}
