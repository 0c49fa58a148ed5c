use crate::bitset::BitSet;
use crate::family::{is_k_wise_eventown, is_strong_k_wise_eventown, SetFamily, Verdict, Violation};

use super::StructureError;

/// One removal step: the removed sets, their intersection `R` and the
/// representative `B` (the first removed set).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovalRound {
    pub removed: Vec<BitSet>,
    pub intersection: BitSet,
    pub representative: BitSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extraction {
    pub family: SetFamily,
    pub rounds: Vec<RemovalRound>,
}

impl Extraction {
    /// `(R_i, B_i)` sequences of the removal log.
    pub fn skew_pairs(&self) -> (Vec<BitSet>, Vec<BitSet>) {
        self.rounds
            .iter()
            .map(|r| (r.intersection.clone(), r.representative.clone()))
            .unzip()
    }
}

/// Grows `start` by the smallest indices that keep the intersection odd, until
/// no set can be added.
fn maximal_odd_collection(family: &SetFamily, start: &[usize], k: usize) -> Vec<usize> {
    let mut chosen = start.to_vec();
    let mut acc = family.get(chosen[0]).clone();
    for &i in &chosen[1..] {
        acc.intersect_with(family.get(i));
    }
    let mut grew = true;
    while grew && chosen.len() + 1 < k {
        grew = false;
        for i in 0..family.len() {
            if chosen.contains(&i) {
                continue;
            }
            if acc.intersection_len(family.get(i)) % 2 == 1 {
                chosen.push(i);
                acc.intersect_with(family.get(i));
                grew = true;
                break;
            }
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Repeatedly removes a maximal collection of fewer than `k` sets with odd
/// intersection until what remains is a strong k-wise eventown.
pub fn extract_strong_subfamily(family: &SetFamily, k: usize) -> Result<Extraction, StructureError> {
    if let Verdict::Fail(v) = is_k_wise_eventown(family, k, 2)? {
        return Err(StructureError::NotKWise(v));
    }
    let mut cur = family.clone();
    let mut rounds = Vec::new();
    loop {
        let start = match is_strong_k_wise_eventown(&cur, k, 2)? {
            Verdict::Pass => break,
            Verdict::Fail(Violation::Intersection { indices, .. }) => indices,
            Verdict::Fail(other) => unreachable!("eventown checker reported {other:?}"),
        };
        let chosen = maximal_odd_collection(&cur, &start, k);
        let removed: Vec<BitSet> = chosen.iter().map(|&i| cur.get(i).clone()).collect();
        let mut intersection = removed[0].clone();
        for s in &removed[1..] {
            intersection.intersect_with(s);
        }
        rounds.push(RemovalRound {
            representative: removed[0].clone(),
            intersection,
            removed,
        });
        cur = cur.without(&chosen);
    }
    Ok(Extraction { family: cur, rounds })
}

/// `|R_i ∩ B_i|` odd for all `i` and `|R_i ∩ B_j|` even for `i < j`.
pub fn skew_oddtown_check(r_sets: &[BitSet], b_sets: &[BitSet]) -> Result<bool, StructureError> {
    if r_sets.len() != b_sets.len() {
        return Err(StructureError::LengthMismatch(r_sets.len(), b_sets.len()));
    }
    Ok((0..r_sets.len()).all(|i| {
        r_sets[i].intersection_len(&b_sets[i]) % 2 == 1
            && (i + 1..b_sets.len()).all(|j| r_sets[i].intersection_len(&b_sets[j]) % 2 == 0)
    }))
}
