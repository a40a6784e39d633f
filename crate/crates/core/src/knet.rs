//! Refinement of layered set systems into binary families.
//!
//! A new set `C` is split by pulling the star cover of its assigned
//! subcomplex back through the realization's point map. On a finite ground
//! the point map is vertex valued, and a vertex `δ_M` lies in `St²(b_τ)`
//! only for `τ = {M}`, so the blocks are the fibers of `minimal_member`
//! over `C`. Every block `B_M` sits inside every earlier set that meets it,
//! which is what makes linked subfamilies through a block centered.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::{intersection_of, maximal_cliques, verify_binary, BinarityReport, NamedSet};
use crate::realization::{realize, SetSystem};
use crate::star::{st2_membership, star_cover};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyRefinement {
    /// Nonempty blocks, in the order of their star bases.
    pub blocks: Vec<NamedSet>,
    /// Stars in the cover of the assigned subcomplex.
    pub stars: usize,
}

/// Splits `c` against the system `f`. Block `i` is named `{c.name}#{i}`.
pub fn key_refinement(f: &SetSystem, c: &NamedSet) -> Result<KeyRefinement> {
    if let Some(x) = c.members.iter().find(|x| !f.ground().contains(*x)) {
        return Err(Error::NotInGround(x.clone()));
    }
    if c.members.is_empty() {
        return Ok(KeyRefinement {
            blocks: Vec::new(),
            stars: 0,
        });
    }
    let extended = f.with_group(vec![c.clone()])?;
    let r = realize(&extended)?;
    let kc = r
        .assigned(&c.members)
        .expect("listed sets are semilattice elements");
    let cover = star_cover(kc, &r.complex)?;
    let mut blocks = Vec::new();
    let mut claimed: BTreeSet<String> = BTreeSet::new();
    for tau in cover.bases() {
        let mut members = BTreeSet::new();
        for x in &c.members {
            if st2_membership(&r.point_map[x], tau, kc)? {
                members.insert(x.clone());
            }
        }
        if members.is_empty() {
            continue;
        }
        for x in &members {
            // vertex-valued points hit exactly one star
            let fresh = claimed.insert(x.clone());
            debug_assert!(fresh);
        }
        blocks.push(NamedSet {
            name: format!("{}#{}", c.name, blocks.len()),
            members,
        });
    }
    Ok(KeyRefinement {
        blocks,
        stars: cover.len(),
    })
}

/// Linked subfamilies of `earlier ∪ blocks` that use at least one block,
/// with empty intersection; sorted name lists.
pub fn linked_violations(earlier: &[NamedSet], blocks: &[NamedSet]) -> Vec<Vec<String>> {
    let all: Vec<NamedSet> = earlier.iter().chain(blocks).cloned().collect();
    let mut out = Vec::new();
    for clique in maximal_cliques(&all) {
        if clique.iter().all(|&i| i < earlier.len()) {
            continue;
        }
        if intersection_of(&all, &clique).is_some_and(|s| s.is_empty()) {
            let mut names: Vec<String> = clique.iter().map(|&i| all[i].name.clone()).collect();
            names.sort();
            out.push(names);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelAccounting {
    pub level: usize,
    pub inputs: usize,
    pub blocks: usize,
    /// Group budget of the general construction at this level, `2^{level+1}`.
    pub construction_bound: String,
    /// Pairwise-disjoint groups the blocks of this level actually need.
    pub achieved: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementCheck {
    pub input: String,
    pub level: usize,
    pub violations: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryFamilyReport {
    /// Output blocks, one group per level.
    pub groups: Vec<Vec<NamedSet>>,
    pub refinement_table: BTreeMap<String, Vec<String>>,
    pub binarity: BinarityReport<String>,
    /// Per-input checks restricted to the earlier levels plus the input's
    /// own blocks.
    pub restricted: Vec<RefinementCheck>,
    pub accounting: Vec<LevelAccounting>,
}

impl BinaryFamilyReport {
    pub fn family(&self) -> Vec<NamedSet> {
        self.groups.iter().flatten().cloned().collect()
    }

    pub fn violations(&self) -> &[Vec<String>] {
        &self.binarity.violations
    }

    pub fn is_sound(&self) -> bool {
        self.binarity.is_binary() && self.restricted.iter().all(|c| c.violations.is_empty())
    }
}

fn construction_bound(level: usize) -> String {
    num_bigint::BigUint::from(2u32).pow(level as u32 + 1).to_string()
}

/// First level kept as is; every later input set replaced by its key
/// refinement against all earlier levels.
pub fn synthesize(n: &SetSystem) -> Result<BinaryFamilyReport> {
    let mut groups: Vec<Vec<NamedSet>> = Vec::new();
    let mut table = BTreeMap::new();
    let mut restricted = Vec::new();
    let mut accounting = Vec::new();
    for (level, inputs) in n.groups().iter().enumerate() {
        let mut level_blocks = Vec::new();
        if level == 0 {
            for s in inputs {
                let blocks: Vec<NamedSet> = if s.members.is_empty() {
                    Vec::new()
                } else {
                    vec![s.clone()]
                };
                table.insert(s.name.clone(), blocks.iter().map(|b| b.name.clone()).collect());
                level_blocks.extend(blocks);
            }
        } else {
            let earlier = SetSystem::new(n.ground().clone(), groups.clone())?;
            let flat = earlier.flattened();
            for s in inputs {
                let kr = key_refinement(&earlier, s)?;
                restricted.push(RefinementCheck {
                    input: s.name.clone(),
                    level,
                    violations: linked_violations(&flat, &kr.blocks),
                });
                table.insert(s.name.clone(), kr.blocks.iter().map(|b| b.name.clone()).collect());
                level_blocks.extend(kr.blocks);
            }
        }
        accounting.push(LevelAccounting {
            level,
            inputs: inputs.len(),
            blocks: level_blocks.len(),
            construction_bound: construction_bound(level),
            achieved: usize::from(!level_blocks.is_empty()),
        });
        groups.push(level_blocks);
    }
    // each level is one disjoint group, which SetSystem re-checks
    SetSystem::new(n.ground().clone(), groups.clone())?;
    let flat: Vec<NamedSet> = groups.iter().flatten().cloned().collect();
    Ok(BinaryFamilyReport {
        binarity: verify_binary(&flat),
        groups,
        refinement_table: table,
        restricted,
        accounting,
    })
}

/// Every input set is exactly the union of its assigned blocks, and each
/// assigned block exists in the family.
pub fn verify_refinement(report: &BinaryFamilyReport, n: &SetSystem) -> bool {
    let by_name: BTreeMap<&str, &NamedSet> = report
        .groups
        .iter()
        .flatten()
        .map(|b| (b.name.as_str(), b))
        .collect();
    if report.refinement_table.len() != n.sets().count() {
        return false;
    }
    for s in n.sets() {
        let Some(names) = report.refinement_table.get(&s.name) else {
            return false;
        };
        let mut union = BTreeSet::new();
        for name in names {
            let Some(b) = by_name.get(name.as_str()) else {
                return false;
            };
            if !b.members.is_subset(&s.members) {
                return false;
            }
            union.extend(b.members.iter().cloned());
        }
        if union != s.members {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ns(name: &str, xs: &[u32]) -> NamedSet {
        NamedSet::new(name, xs.iter().map(|x| x.to_string()))
    }

    fn system(ground: u32, groups: Vec<Vec<NamedSet>>) -> SetSystem {
        SetSystem::new((1..=ground).map(|x| x.to_string()).collect(), groups).unwrap()
    }

    #[test]
    fn single_block_inside_one_set() {
        let f = system(4, vec![vec![ns("A", &[1, 2, 3, 4])]]);
        let kr = key_refinement(&f, &ns("C", &[1, 2])).unwrap();
        assert_eq!(kr.blocks, vec![ns("C#0", &[1, 2])]);
        assert!(linked_violations(&f.flattened(), &kr.blocks).is_empty());
    }

    #[test]
    fn disjoint_set_splits_by_minimal_member() {
        let f = system(4, vec![vec![ns("A", &[1, 2])]]);
        let kr = key_refinement(&f, &ns("C", &[3, 4])).unwrap();
        assert_eq!(kr.blocks, vec![ns("C#0", &[3, 4])]);
    }

    #[test]
    fn straddling_set_splits() {
        // C = {2,3} meets A = {1,2} in {2}; 3 lies only in C
        let f = system(3, vec![vec![ns("A", &[1, 2])]]);
        let kr = key_refinement(&f, &ns("C", &[2, 3])).unwrap();
        let members: Vec<BTreeSet<String>> = kr.blocks.iter().map(|b| b.members.clone()).collect();
        assert_eq!(members.len(), 2);
        assert!(members.contains(&ns("", &[2]).members));
        assert!(members.contains(&ns("", &[3]).members));
    }

    #[test]
    fn disjoint_system_unchanged() {
        let n = system(3, vec![vec![ns("A", &[1, 2]), ns("B", &[3])]]);
        let r = synthesize(&n).unwrap();
        assert_eq!(r.family(), n.flattened());
        assert!(r.is_sound());
        assert!(verify_refinement(&r, &n));
    }

    #[test]
    fn three_level_chain_of_overlaps() {
        let n = system(
            3,
            vec![vec![ns("T", &[1, 2, 3])], vec![ns("L", &[1, 2])], vec![ns("R", &[2, 3])]],
        );
        let r = synthesize(&n).unwrap();
        assert!(r.is_sound(), "{:?}", r.binarity.violations);
        assert!(verify_refinement(&r, &n));
        assert_eq!(r.accounting[2].construction_bound, "8");
        let mut dropped = r.clone();
        dropped.groups[2].pop();
        assert!(!verify_refinement(&dropped, &n));
    }

    #[test]
    fn helly_triple_is_repaired() {
        let n = system(
            3,
            vec![vec![ns("A", &[1, 2])], vec![ns("B", &[2, 3])], vec![ns("C", &[1, 3])]],
        );
        assert!(!verify_binary(&n.flattened()).is_binary());
        let r = synthesize(&n).unwrap();
        assert!(r.is_sound());
        assert!(verify_refinement(&r, &n));
    }

    #[test]
    fn empty_system() {
        let n = SetSystem::new(BTreeSet::new(), vec![]).unwrap();
        let r = synthesize(&n).unwrap();
        assert!(verify_refinement(&r, &n));
        assert!(r.family().is_empty());
    }
}
