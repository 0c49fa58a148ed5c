use crate::bitset::BitSet;
use crate::family::{is_strong_k_wise_eventown_within, SetFamily, Verdict, DEFAULT_CHECK_BUDGET};

/// Non-empty cells of the Boolean algebra generated by a family, without the
/// cell lying outside every set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtomDecomposition {
    /// Pairwise disjoint, ordered by smallest element.
    pub atoms: Vec<BitSet>,
    /// For each set, the indices of the atoms whose union it is.
    pub membership: Vec<Vec<usize>>,
    /// Whether the family is k-wise for every `k ≤ m`; `None` when the check ran out of budget.
    pub all_k_wise: Option<bool>,
}

impl AtomDecomposition {
    pub fn all_even(&self) -> bool {
        self.atoms.iter().all(|a| a.len() % 2 == 0)
    }

    /// Under the all-k-wise hypothesis every atom must be even.
    pub fn parity_holds(&self) -> Option<bool> {
        match self.all_k_wise {
            Some(true) => Some(self.all_even()),
            _ => None,
        }
    }

    pub fn pairwise_disjoint(&self) -> bool {
        self.atoms
            .iter()
            .enumerate()
            .all(|(i, a)| self.atoms[i + 1..].iter().all(|b| a.is_disjoint(b)))
    }

    /// Each set equals the union of its listed atoms.
    pub fn reconstructs(&self, family: &SetFamily) -> bool {
        family.len() == self.membership.len()
            && family.iter().zip(&self.membership).all(|(s, ids)| {
                let mut u = BitSet::empty(family.n());
                for &t in ids {
                    u.union_with(&self.atoms[t]);
                }
                &u == s
            })
    }
}

/// Atoms by partition refinement: split every cell of `[n]` by each set in turn.
pub fn atom_decomposition(family: &SetFamily) -> AtomDecomposition {
    let n = family.n();
    let mut cells = vec![BitSet::full(n)];
    for s in family {
        let mut next = Vec::with_capacity(cells.len() * 2);
        for c in cells {
            let inside = c.intersection(s);
            let outside = c.difference(s);
            if !inside.is_empty() {
                next.push(inside);
            }
            if !outside.is_empty() {
                next.push(outside);
            }
        }
        cells = next;
    }
    let mut atoms: Vec<BitSet> = cells
        .into_iter()
        .filter(|c| family.iter().any(|s| !c.is_disjoint(s)))
        .collect();
    atoms.sort_by_key(|a| a.first());
    let membership = family
        .iter()
        .map(|s| (0..atoms.len()).filter(|&t| atoms[t].is_subset(s)).collect())
        .collect();
    let all_k_wise = match is_strong_k_wise_eventown_within(family, family.len().max(1), 2, DEFAULT_CHECK_BUDGET) {
        Ok(Verdict::Pass) => Some(true),
        Ok(Verdict::Fail(_)) => Some(false),
        Err(_) => None,
    };
    AtomDecomposition {
        atoms,
        membership,
        all_k_wise,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::block_family;
    use crate::family::GroundSet;

    fn lists(d: &AtomDecomposition) -> Vec<Vec<usize>> {
        d.atoms.iter().map(|a| a.to_vec()).collect()
    }

    #[test]
    fn block_family_atoms_are_the_blocks() {
        let f = block_family(GroundSet::new(6).unwrap(), 2).unwrap();
        let d = atom_decomposition(&f);
        assert_eq!(lists(&d), vec![vec![1, 2], vec![3, 4], vec![5, 6]]);
        assert_eq!(d.parity_holds(), Some(true));
        assert!(d.reconstructs(&f));
    }

    #[test]
    fn venn_cells_without_hypothesis() {
        let f = SetFamily::from_lists(3, &[vec![1, 2], vec![2, 3]]).unwrap();
        let d = atom_decomposition(&f);
        assert_eq!(lists(&d), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(d.all_k_wise, Some(false));
        assert_eq!(d.parity_holds(), None);
        assert!(d.pairwise_disjoint() && d.reconstructs(&f));
    }

    #[test]
    fn outside_cell_dropped() {
        let f = SetFamily::from_lists(5, &[vec![], vec![1, 2], vec![3, 4], vec![1, 2, 3, 4]]).unwrap();
        let d = atom_decomposition(&f);
        assert_eq!(lists(&d), vec![vec![1, 2], vec![3, 4]]);
        assert!(d.all_even());
        assert_eq!(d.membership[0], Vec::<usize>::new());
    }
}
