use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;

/// Tables up to this order are checked exhaustively for associativity.
const EXHAUSTIVE_LIMIT: usize = 64;
const SAMPLED_TRIPLES: usize = 200_000;

/// On-disk form of a group: labels and a multiplication table of label indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub labels: Vec<String>,
    pub table: Vec<Vec<usize>>,
}

/// A finite group as a validated multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct Group {
    name: String,
    labels: Vec<String>,
    index: HashMap<String, usize>,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({}, order {})", self.name, self.order())
    }
}

/// Validates a table and builds the group.
pub fn load_group(spec: &GroupFile) -> Result<Group> {
    let n = spec.labels.len();
    if n == 0 || spec.table.len() != n || spec.table.iter().any(|r| r.len() != n) {
        return Err(Error::NotLatinSquare(0));
    }
    let table: Vec<usize> = spec.table.iter().flatten().copied().collect();
    if table.iter().any(|&x| x >= n) {
        return Err(Error::NotLatinSquare(0));
    }
    for r in 0..n {
        let mut row = vec![false; n];
        let mut col = vec![false; n];
        for c in 0..n {
            row[table[r * n + c]] = true;
            col[table[c * n + r]] = true;
        }
        if !row.iter().all(|&x| x) || !col.iter().all(|&x| x) {
            return Err(Error::NotLatinSquare(r));
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x))
        .ok_or(Error::NoIdentity)?;
    let inverse: Vec<usize> = (0..n)
        .map(|a| (0..n).find(|&b| table[a * n + b] == identity).unwrap())
        .collect();
    let mut index = HashMap::new();
    for (k, l) in spec.labels.iter().enumerate() {
        if index.insert(l.clone(), k).is_some() {
            return Err(Error::Parse {
                what: format!("group {}", spec.name),
                detail: format!("duplicate label {l:?}"),
            });
        }
    }
    let g = Group {
        name: spec.name.clone(),
        labels: spec.labels.clone(),
        index,
        table,
        identity,
        inverse,
    };
    g.check_associative()?;
    Ok(g)
}

impl Group {
    fn check_associative(&self) -> Result<()> {
        let n = self.order();
        let bad = |&(a, b, c): &(usize, usize, usize)| {
            (self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))).then_some((a, b, c))
        };
        let witness = if n <= EXHAUSTIVE_LIMIT {
            let firsts: Vec<usize> = (0..n).collect();
            par::find_map_first(&firsts, |&a| {
                (0..n)
                    .flat_map(|b| (0..n).map(move |c| (a, b, c)))
                    .find_map(|t| bad(&t))
            })
        } else {
            // fixed seed keeps loading deterministic
            let mut rng = ChaCha8Rng::seed_from_u64(0x9E37_79B9_7F4A_7C15);
            let triples: Vec<_> = (0..SAMPLED_TRIPLES)
                .map(|_| (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
                .collect();
            par::find_map_first(&triples, bad)
        };
        match witness {
            None => Ok(()),
            Some((a, b, c)) => Err(Error::NotAssociative(
                self.label(a).into(),
                self.label(b).into(),
                self.label(c).into(),
            )),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// s⁻¹ x s.
    #[inline]
    pub fn conj(&self, x: usize, s: usize) -> usize {
        self.mul(self.mul(self.inv(s), x), s)
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn resolve(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnresolvedReference(format!("{label} in group {}", self.name)))
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::new(self.order(), 0..self.order())
    }

    pub fn trivial(&self) -> ElementSet {
        ElementSet::new(self.order(), [self.identity])
    }

    pub fn set_from_labels<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElementSet> {
        let idx = labels
            .iter()
            .map(|l| self.resolve(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(ElementSet::new(self.order(), idx))
    }

    pub fn to_file(&self) -> GroupFile {
        let n = self.order();
        GroupFile {
            name: self.name.clone(),
            labels: self.labels.clone(),
            table: (0..n).map(|a| (0..n).map(|b| self.mul(a, b)).collect()).collect(),
        }
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> ElementSet {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut members = vec![self.identity];
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y);
                }
            }
            k += 1;
        }
        ElementSet::new(self.order(), members)
    }

    /// A small generating set of the subgroup `set`, chosen greedily by index.
    pub fn generators(&self, set: &ElementSet) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = self.trivial();
        for &x in set.elems() {
            if !span.contains(x) {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Err(description) when `set` is not a subgroup.
    pub fn check_subgroup(&self, set: &ElementSet) -> std::result::Result<(), String> {
        if !set.contains(self.identity) {
            return Err("identity missing".into());
        }
        for &a in set.elems() {
            if !set.contains(self.inv(a)) {
                return Err(format!("inverse of {} missing", self.label(a)));
            }
            for &b in set.elems() {
                let c = self.mul(a, b);
                if !set.contains(c) {
                    return Err(format!(
                        "{}*{} = {} not in set",
                        self.label(a),
                        self.label(b),
                        self.label(c)
                    ));
                }
            }
        }
        Ok(())
    }

    /// First (g, x) with g x g⁻¹ ∉ `sub`, for g ∈ `sup`, x ∈ `sub`.
    pub fn normality_witness(&self, sub: &ElementSet, sup: &ElementSet) -> Option<(usize, usize)> {
        for &g in sup.elems() {
            for &x in sub.elems() {
                if !sub.contains(self.conj(x, self.inv(g))) {
                    return Some((g, x));
                }
            }
        }
        None
    }

    pub fn is_normal_in(&self, sub: &ElementSet, sup: &ElementSet) -> bool {
        self.normality_witness(sub, sup).is_none()
    }

    /// `NotNormal` error with a readable witness.
    pub fn require_normal(&self, sub: &ElementSet, sup: &ElementSet, what: &str) -> Result<()> {
        match self.normality_witness(sub, sup) {
            None => Ok(()),
            Some((g, x)) => {
                let y = self.conj(x, self.inv(g));
                Err(Error::NotNormal {
                    detail: format!(
                        "{what}: {}*{}*{}^-1 = {} not in subgroup",
                        self.label(g),
                        self.label(x),
                        self.label(g),
                        self.label(y)
                    ),
                })
            }
        }
    }

    /// Elementwise product set A·B.
    pub fn product_set(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        let mut out = Vec::with_capacity(a.len() * b.len());
        for &x in a.elems() {
            for &y in b.elems() {
                out.push(self.mul(x, y));
            }
        }
        ElementSet::new(self.order(), out)
    }

    /// Conjugacy classes of the whole group, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        self.classes_within(&self.all())
    }

    /// Conjugacy classes of the subgroup `set` (conjugation by its own elements).
    pub fn classes_within(&self, set: &ElementSet) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut classes = Vec::new();
        for &x in set.elems() {
            if seen[x] {
                continue;
            }
            let mut cls: Vec<usize> = set.elems().iter().map(|&g| self.conj(x, g)).collect();
            cls.sort_unstable();
            cls.dedup();
            for &y in &cls {
                seen[y] = true;
            }
            classes.push(cls);
        }
        classes
    }
}

/// A subset of group elements, kept sorted by element index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    elems: Vec<usize>,
    mask: Vec<bool>,
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.elems)
    }
}

impl ElementSet {
    pub fn new(order: usize, items: impl IntoIterator<Item = usize>) -> Self {
        let mut mask = vec![false; order];
        for x in items {
            mask[x] = true;
        }
        let elems = (0..order).filter(|&x| mask[x]).collect();
        ElementSet { elems, mask }
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.elems.iter().all(|&x| other.contains(x))
    }

    pub fn intersect(&self, other: &ElementSet) -> ElementSet {
        ElementSet::new(
            self.mask.len(),
            self.elems.iter().copied().filter(|&x| other.contains(x)),
        )
    }

    pub fn labels(&self, g: &Group) -> Vec<String> {
        self.elems.iter().map(|&x| g.label(x).to_string()).collect()
    }
}
