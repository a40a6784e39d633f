//! Finite families of named sets, their intersection graphs, and the
//! clique form of binarity: a finite family is binary iff every clique of
//! its pairwise-intersection graph has nonempty total intersection.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct NamedSet<T: Ord = String> {
    pub name: String,
    pub members: BTreeSet<T>,
}

impl<T: Ord + Clone> NamedSet<T> {
    pub fn new(name: impl Into<String>, members: impl IntoIterator<Item = T>) -> Self {
        Self {
            name: name.into(),
            members: members.into_iter().collect(),
        }
    }

    pub fn meets(&self, other: &NamedSet<T>) -> bool {
        // merge the two sorted sequences
        let (mut a, mut b) = (self.members.iter().peekable(), other.members.iter().peekable());
        while let (Some(x), Some(y)) = (a.peek(), b.peek()) {
            match x.cmp(y) {
                std::cmp::Ordering::Less => {
                    a.next();
                }
                std::cmp::Ordering::Greater => {
                    b.next();
                }
                std::cmp::Ordering::Equal => return true,
            }
        }
        false
    }
}

/// Common elements of the indexed members. The empty subfamily has no
/// well-defined intersection and yields `None`.
pub fn intersection_of<T: Ord + Clone>(family: &[NamedSet<T>], idx: &[usize]) -> Option<BTreeSet<T>> {
    let (first, rest) = idx.split_first()?;
    let mut acc = family[*first].members.clone();
    for &i in rest {
        acc.retain(|x| family[i].members.contains(x));
        if acc.is_empty() {
            break;
        }
    }
    Some(acc)
}

pub fn is_clique<T: Ord + Clone>(family: &[NamedSet<T>], idx: &[usize]) -> bool {
    idx.iter()
        .enumerate()
        .all(|(k, &i)| idx[k + 1..].iter().all(|&j| family[i].meets(&family[j])))
}

/// Maximal cliques of the intersection graph, each sorted, listed in
/// lexicographic order. Sets with no elements meet nothing, not even
/// themselves, and are left out.
pub fn maximal_cliques<T: Ord + Clone>(family: &[NamedSet<T>]) -> Vec<Vec<usize>> {
    let live: Vec<usize> = (0..family.len())
        .filter(|&i| !family[i].members.is_empty())
        .collect();
    let mut adj = vec![Bits::new(live.len()); live.len()];
    for (a, &i) in live.iter().enumerate() {
        for (b, &j) in live.iter().enumerate().skip(a + 1) {
            if family[i].meets(&family[j]) {
                adj[a].set(b);
                adj[b].set(a);
            }
        }
    }
    let mut out = Vec::new();
    let all = Bits::full(live.len());
    bron_kerbosch(&adj, &mut Vec::new(), all, Bits::new(live.len()), &mut out);
    let mut out: Vec<Vec<usize>> = out
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|n| live[n]).collect();
            v.sort_unstable();
            v
        })
        .collect();
    out.sort();
    out
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Self::new(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }

    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn and_not(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & !b).collect())
    }

    fn count_and(&self, o: &Bits) -> u32 {
        self.0.iter().zip(&o.0).map(|(a, b)| (a & b).count_ones()).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |i| bits & (1 << i) != 0).map(move |i| w * 64 + i)
        })
    }
}

/// Bron–Kerbosch with Tomita pivoting: the pivot maximizes `|P ∩ N(u)|`
/// over `P ∪ X`.
fn bron_kerbosch(adj: &[Bits], r: &mut Vec<usize>, mut p: Bits, mut x: Bits, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() {
        if x.is_empty() && !r.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let pivot = p
        .iter()
        .chain(x.iter())
        .max_by_key(|&u| p.count_and(&adj[u]))
        .expect("p is nonempty");
    let todo: Vec<usize> = p.and_not(&adj[pivot]).iter().collect();
    for v in todo {
        r.push(v);
        bron_kerbosch(adj, r, p.and(&adj[v]), x.and(&adj[v]), out);
        r.pop();
        p.clear(v);
        x.set(v);
    }
}

/// Every nonempty clique, by brute force over all subfamilies. Reference
/// for small inputs only.
pub fn all_cliques_naive<T: Ord + Clone>(family: &[NamedSet<T>]) -> Vec<Vec<usize>> {
    assert!(family.len() < 24, "naive clique enumeration is exponential");
    let mut out = Vec::new();
    for mask in 1u32..(1 << family.len()) {
        let idx: Vec<usize> = (0..family.len()).filter(|i| mask & (1 << i) != 0).collect();
        if idx.iter().all(|&i| !family[i].members.is_empty()) && is_clique(family, &idx) {
            out.push(idx);
        }
    }
    out
}

/// Drops members while the total intersection stays empty, scanning in
/// index order, so the result is an inclusion-minimal violating clique.
pub fn shrink_violation<T: Ord + Clone>(family: &[NamedSet<T>], clique: &[usize]) -> Vec<usize> {
    let mut cur = clique.to_vec();
    let mut i = 0;
    while i < cur.len() {
        let mut trial = cur.clone();
        trial.remove(i);
        if !trial.is_empty() && intersection_of(family, &trial).is_some_and(|s| s.is_empty()) {
            cur = trial;
        } else {
            i += 1;
        }
    }
    cur
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueCheck<T: Ord> {
    /// Member names, sorted.
    pub names: Vec<String>,
    /// Least common element, absent when the intersection is empty.
    pub witness: Option<T>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinarityReport<T: Ord> {
    /// Number of maximal cliques examined.
    pub checked_subfamilies: usize,
    pub cliques: Vec<CliqueCheck<T>>,
    /// Minimal violating cliques as sorted name lists, deduplicated.
    pub violations: Vec<Vec<String>>,
}

impl<T: Ord> BinarityReport<T> {
    pub fn is_binary(&self) -> bool {
        self.violations.is_empty()
    }
}

fn names_of<T: Ord>(family: &[NamedSet<T>], idx: &[usize]) -> Vec<String> {
    let mut v: Vec<String> = idx.iter().map(|&i| family[i].name.clone()).collect();
    v.sort();
    v
}

/// Checks every maximal clique of the intersection graph; a sub-clique of
/// a clique with nonempty intersection has nonempty intersection too.
pub fn verify_binary<T: Ord + Clone>(family: &[NamedSet<T>]) -> BinarityReport<T> {
    let cliques = maximal_cliques(family);
    let mut checks = Vec::with_capacity(cliques.len());
    let mut violations = BTreeSet::new();
    for c in &cliques {
        let common = intersection_of(family, c).expect("cliques are nonempty");
        let witness = common.into_iter().next();
        if witness.is_none() {
            violations.insert(names_of(family, &shrink_violation(family, c)));
        }
        checks.push(CliqueCheck {
            names: names_of(family, c),
            witness,
        });
    }
    BinarityReport {
        checked_subfamilies: cliques.len(),
        cliques: checks,
        violations: violations.into_iter().collect(),
    }
}

/// Binarity decided over every subfamily, without the clique reduction.
pub fn is_binary_naive<T: Ord + Clone>(family: &[NamedSet<T>]) -> bool {
    all_cliques_naive(family)
        .iter()
        .all(|c| intersection_of(family, c).is_some_and(|s| !s.is_empty()))
}
