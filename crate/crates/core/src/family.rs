//! Set families over a ground set `[n]` and the intersection-parity checkers.
//!
//! A [`SetFamily`] is always stored in canonical order (cardinality, then
//! lexicographic by sorted elements) with no repeated sets, so indices are
//! stable for a given family. Witness indices are 0-based.

use std::fmt;

use thiserror::Error;

use crate::bitset::{BitSet, MAX_GROUND};
use crate::gf::{GfVector, PrimeModulus};
use crate::graph::SimpleGraph;

/// Default limit on subset evaluations for the k-wise checkers.
pub const DEFAULT_CHECK_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("InvalidGround: n = {0} is outside 1..=4096")]
    InvalidGround(usize),
    #[error("ElementOutOfRange: element {element} of set {set} is outside [{n}]")]
    ElementOutOfRange { set: usize, element: usize, n: usize },
    #[error("GroundMismatch: set {set} lives in [{found}], family ground is [{expected}]")]
    GroundMismatch { set: usize, expected: usize, found: usize },
    #[error("DuplicateSet: {0} appears twice")]
    DuplicateSet(String),
    #[error("EmptyIndexSet: the index set is empty")]
    EmptyIndexSet,
    #[error("IndexOutOfRange: index {index} but the family has {len} sets")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("InvalidK: k must be at least 1")]
    InvalidK,
    #[error("InvalidModulus: ell = {0} must be at least 2")]
    InvalidModulus(u32),
    #[error("BudgetExceeded: more than {0} subset evaluations")]
    BudgetExceeded(u64),
}

/// The universe `[n]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroundSet(usize);

impl GroundSet {
    pub fn new(n: usize) -> Result<Self, FamilyError> {
        if n == 0 || n > MAX_GROUND {
            return Err(FamilyError::InvalidGround(n));
        }
        Ok(GroundSet(n))
    }

    #[inline]
    pub fn n(self) -> usize {
        self.0
    }
}

impl fmt::Display for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0)
    }
}

/// Distinct subsets of `[n]` in canonical order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetFamily {
    ground: GroundSet,
    sets: Vec<BitSet>,
}

impl SetFamily {
    pub fn empty(ground: GroundSet) -> Self {
        SetFamily {
            ground,
            sets: Vec::new(),
        }
    }

    /// Sorts `sets` into canonical order; repeated sets are an error.
    pub fn new(ground: GroundSet, mut sets: Vec<BitSet>) -> Result<Self, FamilyError> {
        for (i, s) in sets.iter().enumerate() {
            if s.ground() != ground.n() {
                return Err(FamilyError::GroundMismatch {
                    set: i,
                    expected: ground.n(),
                    found: s.ground(),
                });
            }
        }
        sets.sort_unstable();
        if let Some(w) = sets.windows(2).find(|w| w[0] == w[1]) {
            return Err(FamilyError::DuplicateSet(w[0].to_string()));
        }
        Ok(SetFamily { ground, sets })
    }

    /// Builds from 1-based element lists.
    pub fn from_lists<L: AsRef<[usize]>>(n: usize, lists: &[L]) -> Result<Self, FamilyError> {
        let ground = GroundSet::new(n)?;
        let sets = lists
            .iter()
            .enumerate()
            .map(|(i, l)| {
                BitSet::from_elements(n, l.as_ref().iter().copied())
                    .map_err(|element| FamilyError::ElementOutOfRange { set: i, element, n })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ground, sets)
    }

    #[inline]
    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.ground.n()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.sets.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[BitSet] {
        &self.sets
    }

    pub fn get(&self, i: usize) -> &BitSet {
        &self.sets[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BitSet> {
        self.sets.iter()
    }

    pub fn contains(&self, set: &BitSet) -> bool {
        self.index_of(set).is_some()
    }

    pub fn index_of(&self, set: &BitSet) -> Option<usize> {
        self.sets.binary_search(set).ok()
    }

    /// Whether every set of `self` is a member of `other`.
    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        self.n() == other.n() && self.sets.iter().all(|s| other.contains(s))
    }

    /// The sets at `indices` (any order, repeats ignored).
    pub fn subfamily(&self, indices: &[usize]) -> SetFamily {
        let mut sets: Vec<BitSet> = indices.iter().map(|&i| self.sets[i].clone()).collect();
        sets.sort_unstable();
        sets.dedup();
        SetFamily {
            ground: self.ground,
            sets,
        }
    }

    /// Family without the sets at `indices`.
    pub fn without(&self, indices: &[usize]) -> SetFamily {
        SetFamily {
            ground: self.ground,
            sets: self
                .sets
                .iter()
                .enumerate()
                .filter(|(i, _)| !indices.contains(i))
                .map(|(_, s)| s.clone())
                .collect(),
        }
    }

    /// Adds a set, keeping canonical order. Returns `false` if it was already present.
    pub fn insert(&mut self, set: BitSet) -> bool {
        assert_eq!(set.ground(), self.n());
        match self.sets.binary_search(&set) {
            Ok(_) => false,
            Err(at) => {
                self.sets.insert(at, set);
                true
            }
        }
    }

    pub fn to_lists(&self) -> Vec<Vec<usize>> {
        self.sets.iter().map(|s| s.to_vec()).collect()
    }
}

impl fmt::Debug for SetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetFamily{}{:?}", self.ground, self.sets)
    }
}

impl<'a> IntoIterator for &'a SetFamily {
    type Item = &'a BitSet;
    type IntoIter = std::slice::Iter<'a, BitSet>;

    fn into_iter(self) -> Self::IntoIter {
        self.sets.iter()
    }
}

/// Why a family fails a property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `|⋂_{i∈S} A_i| ≢ 0 (mod ℓ)`.
    Intersection { indices: Vec<usize>, residue: u32 },
    /// `|A_i| ≡ 0 (mod ℓ)` in an oddtown.
    SetSize { index: usize },
    /// `|A_i ∩ A_j| ≢ 0 (mod ℓ)` in an oddtown.
    Pair { first: usize, second: usize, residue: u32 },
    /// A set with more than `d` bad partners.
    Degree { index: usize, partners: Vec<usize> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let one = |v: &[usize]| v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
        match self {
            Violation::Intersection { indices, residue } => write!(
                f,
                "intersection of sets {{{}}} has size ≡ {residue}",
                one(indices)
            ),
            Violation::SetSize { index } => write!(f, "set {} has size ≡ 0", index + 1),
            Violation::Pair {
                first,
                second,
                residue,
            } => write!(
                f,
                "sets {} and {} intersect in size ≡ {residue}",
                first + 1,
                second + 1
            ),
            Violation::Degree { index, partners } => write!(
                f,
                "set {} has {} bad partners {{{}}}",
                index + 1,
                partners.len(),
                one(partners)
            ),
        }
    }
}

/// Checker outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(Violation),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            Verdict::Pass => None,
            Verdict::Fail(v) => Some(v),
        }
    }
}

fn check_ell(ell: u32) -> Result<(), FamilyError> {
    if ell < 2 {
        Err(FamilyError::InvalidModulus(ell))
    } else {
        Ok(())
    }
}

/// `|⋂_{i∈S} A_i| mod ℓ`.
pub fn intersection_size_mod(family: &SetFamily, indices: &[usize], ell: u32) -> Result<u32, FamilyError> {
    check_ell(ell)?;
    let (&first, rest) = indices.split_first().ok_or(FamilyError::EmptyIndexSet)?;
    let len = family.len();
    if let Some(&index) = indices.iter().find(|&&i| i >= len) {
        return Err(FamilyError::IndexOutOfRange { index, len });
    }
    let mut acc = family.get(first).clone();
    for &i in rest {
        acc.intersect_with(family.get(i));
    }
    Ok((acc.len() % ell as usize) as u32)
}

/// Depth-first walk over index subsets in lexicographic order, carrying the
/// running intersection. Subtrees under an empty intersection are skipped
/// (every extension has size 0).
struct SubsetWalk<'a> {
    sets: &'a [BitSet],
    ell: usize,
    budget: u64,
    evaluations: u64,
    stack: Vec<usize>,
}

impl<'a> SubsetWalk<'a> {
    fn new(family: &'a SetFamily, ell: u32, budget: u64) -> Self {
        SubsetWalk {
            sets: family.sets(),
            ell: ell as usize,
            budget,
            evaluations: 0,
            stack: Vec::new(),
        }
    }

    fn tick(&mut self) -> Result<(), FamilyError> {
        self.evaluations += 1;
        if self.evaluations > self.budget {
            Err(FamilyError::BudgetExceeded(self.budget))
        } else {
            Ok(())
        }
    }

    /// First subset of size exactly `k` (lexicographic) whose intersection is non-zero mod ℓ.
    fn exact(&mut self, k: usize, start: usize, acc: Option<&BitSet>) -> Result<Option<Violation>, FamilyError> {
        let m = self.sets.len();
        let depth = self.stack.len();
        for i in start..m {
            if m - i < k - depth {
                break;
            }
            self.tick()?;
            let next = match acc {
                Some(a) => a.intersection(&self.sets[i]),
                None => self.sets[i].clone(),
            };
            if depth + 1 == k {
                let r = next.len() % self.ell;
                if r != 0 {
                    let mut indices = self.stack.clone();
                    indices.push(i);
                    return Ok(Some(Violation::Intersection {
                        indices,
                        residue: r as u32,
                    }));
                }
                continue;
            }
            if next.is_empty() {
                continue;
            }
            self.stack.push(i);
            let found = self.exact(k, i + 1, Some(&next))?;
            self.stack.pop();
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }

    /// Smallest violating subset size `k' ≤ max_k`, and the lexicographically
    /// first violating subset of that size, in one pass.
    fn strong(
        &mut self,
        max_k: &mut usize,
        start: usize,
        acc: Option<&BitSet>,
        best: &mut Option<Violation>,
    ) -> Result<(), FamilyError> {
        let m = self.sets.len();
        for i in start..m {
            let depth = self.stack.len() + 1;
            if depth > *max_k {
                return Ok(());
            }
            self.tick()?;
            let next = match acc {
                Some(a) => a.intersection(&self.sets[i]),
                None => self.sets[i].clone(),
            };
            let r = next.len() % self.ell;
            if r != 0 {
                let mut indices = self.stack.clone();
                indices.push(i);
                *best = Some(Violation::Intersection {
                    indices,
                    residue: r as u32,
                });
                // only strictly smaller subsets can improve on this one
                *max_k = depth - 1;
                return Ok(());
            }
            if next.is_empty() || depth == *max_k {
                continue;
            }
            self.stack.push(i);
            self.strong(max_k, i + 1, Some(&next), best)?;
            self.stack.pop();
        }
        Ok(())
    }
}

/// Every `k` distinct sets intersect in a multiple of `ℓ`. Vacuously true when `k > m`.
/// On failure the witness is the lexicographically first violating index set.
pub fn is_k_wise_eventown(family: &SetFamily, k: usize, ell: u32) -> Result<Verdict, FamilyError> {
    is_k_wise_eventown_within(family, k, ell, DEFAULT_CHECK_BUDGET)
}

pub fn is_k_wise_eventown_within(
    family: &SetFamily,
    k: usize,
    ell: u32,
    budget: u64,
) -> Result<Verdict, FamilyError> {
    check_ell(ell)?;
    if k == 0 {
        return Err(FamilyError::InvalidK);
    }
    if k > family.len() {
        return Ok(Verdict::Pass);
    }
    let mut walk = SubsetWalk::new(family, ell, budget);
    Ok(match walk.exact(k, 0, None)? {
        None => Verdict::Pass,
        Some(v) => Verdict::Fail(v),
    })
}

/// `k'`-wise for every `k' ≤ k`. On failure the witness has the smallest
/// violating size, and is lexicographically first among those.
pub fn is_strong_k_wise_eventown(family: &SetFamily, k: usize, ell: u32) -> Result<Verdict, FamilyError> {
    is_strong_k_wise_eventown_within(family, k, ell, DEFAULT_CHECK_BUDGET)
}

pub fn is_strong_k_wise_eventown_within(
    family: &SetFamily,
    k: usize,
    ell: u32,
    budget: u64,
) -> Result<Verdict, FamilyError> {
    check_ell(ell)?;
    if k == 0 {
        return Err(FamilyError::InvalidK);
    }
    let mut walk = SubsetWalk::new(family, ell, budget);
    let mut max_k = k;
    let mut best = None;
    walk.strong(&mut max_k, 0, None, &mut best)?;
    Ok(match best {
        None => Verdict::Pass,
        Some(v) => Verdict::Fail(v),
    })
}

/// Sizes and pairwise intersections all ≡ 0 (mod ℓ).
pub fn is_l_eventown(family: &SetFamily, ell: u32) -> Result<Verdict, FamilyError> {
    is_strong_k_wise_eventown(family, 2, ell)
}

/// Sizes `≢ 0` and pairwise intersections `≡ 0 (mod ℓ)`.
pub fn is_l_oddtown(family: &SetFamily, ell: PrimeModulus) -> Verdict {
    defect_check(family, 0, ell.get())
}

/// Sizes `≢ 0 (mod ℓ)` and every set has at most `d` bad partners.
pub fn is_d_defect_l_oddtown(family: &SetFamily, d: usize, ell: PrimeModulus) -> Verdict {
    defect_check(family, d, ell.get())
}

/// Defect check for any `ℓ ≥ 2`; primality is not part of the definition.
pub(crate) fn defect_check(family: &SetFamily, d: usize, ell: u32) -> Verdict {
    let ell = ell as usize;
    let sets = family.sets();
    if let Some(index) = sets.iter().position(|s| s.len() % ell == 0) {
        return Verdict::Fail(Violation::SetSize { index });
    }
    let m = sets.len();
    let mut partners: Vec<Vec<usize>> = vec![Vec::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            let r = sets[i].intersection_len(&sets[j]) % ell;
            if r != 0 {
                if d == 0 {
                    return Verdict::Fail(Violation::Pair {
                        first: i,
                        second: j,
                        residue: r as u32,
                    });
                }
                partners[i].push(j);
                partners[j].push(i);
            }
        }
    }
    match partners.iter().position(|p| p.len() > d) {
        Some(index) => Verdict::Fail(Violation::Degree {
            index,
            partners: partners[index].clone(),
        }),
        None => Verdict::Pass,
    }
}

/// Characteristic 0/1 vectors in GF(ℓ)ⁿ, in family order.
pub fn characteristic_vectors(family: &SetFamily, ell: PrimeModulus) -> Vec<GfVector> {
    family
        .iter()
        .map(|s| GfVector::characteristic(ell, s))
        .collect()
}

/// The ℓ-auxiliary graph: sets are vertices, bad pairs (`|A ∩ B| ≢ 0`) are edges.
#[derive(Debug, Clone)]
pub struct DefectGraph {
    family: SetFamily,
    modulus: PrimeModulus,
    graph: SimpleGraph,
}

impl DefectGraph {
    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.graph.has_edge(i, j)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.graph.degrees()
    }

    /// Δ
    pub fn max_degree(&self) -> usize {
        self.graph.max_degree()
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.graph.components()
    }
}

pub fn defect_graph(family: &SetFamily, ell: PrimeModulus) -> DefectGraph {
    let m = family.len();
    let p = ell.get() as usize;
    let mut graph = SimpleGraph::new(m);
    for i in 0..m {
        for j in i + 1..m {
            if family.get(i).intersection_len(family.get(j)) % p != 0 {
                graph.add_edge(i, j);
            }
        }
    }
    DefectGraph {
        family: family.clone(),
        modulus: ell,
        graph,
    }
}
