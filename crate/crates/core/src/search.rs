//! Exact maxima of small families by branch and bound over all subsets of `[n]`.
//!
//! Candidates are visited in canonical set order and every branch includes before
//! it excludes, with strict-improvement pruning, so the reported witness is the
//! lexicographically first maximum family among those whose first member is an
//! initial segment `{1, …, s}`. Fixing the first member that way loses nothing:
//! any family can be relabelled so that its canonically first set is one.

use std::fmt;

use thiserror::Error;

use crate::bitset::BitSet;
use crate::family::{
    defect_check, is_k_wise_eventown_within, is_strong_k_wise_eventown_within, FamilyError, GroundSet, SetFamily,
    Verdict,
};
use crate::gf::is_prime;

/// Default node limit.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

/// Largest ground set the oracle accepts.
pub const MAX_SEARCH_GROUND: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("InvalidProblem: {0}")]
    InvalidProblem(String),
    #[error("TooLarge: n = {0} exceeds the search limit {MAX_SEARCH_GROUND}")]
    TooLarge(usize),
}

/// The family property being maximized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Property {
    /// Even sizes and even pairwise intersections.
    Eventown,
    /// Even pairwise intersections, sizes unrestricted.
    TwoWiseEventown,
    LOddtown { ell: u32 },
    KWiseEventown { k: usize, ell: u32 },
    StrongKWise { k: usize, ell: u32 },
    DDefectLOddtown { d: usize, ell: u32 },
}

impl Property {
    pub fn validate(self) -> Result<(), SearchError> {
        let bad = |m: String| Err(SearchError::InvalidProblem(m));
        match self {
            Property::Eventown | Property::TwoWiseEventown => Ok(()),
            Property::LOddtown { ell } | Property::DDefectLOddtown { ell, .. } if !is_prime(ell) => {
                bad(format!("ell = {ell} must be prime"))
            }
            Property::KWiseEventown { k: 0, .. } | Property::StrongKWise { k: 0, .. } => bad("k must be at least 1".into()),
            Property::KWiseEventown { ell, .. } | Property::StrongKWise { ell, .. } if ell < 2 => {
                bad(format!("ell = {ell} must be at least 2"))
            }
            _ => Ok(()),
        }
    }

    /// Whether the empty set can ever be a member.
    pub fn admits_empty_set(self) -> bool {
        !matches!(self, Property::LOddtown { .. } | Property::DDefectLOddtown { .. })
    }

    /// Runs the matching family checker.
    pub fn holds(self, family: &SetFamily) -> bool {
        matches!(self.check(family, u64::MAX), Ok(Verdict::Pass))
    }

    /// The checker's verdict, with its witness on failure.
    pub fn check(self, family: &SetFamily, budget: u64) -> Result<Verdict, FamilyError> {
        match self {
            Property::Eventown => is_strong_k_wise_eventown_within(family, 2, 2, budget),
            Property::TwoWiseEventown => is_k_wise_eventown_within(family, 2, 2, budget),
            Property::LOddtown { ell } => Ok(defect_check(family, 0, ell)),
            Property::KWiseEventown { k, ell } => is_k_wise_eventown_within(family, k, ell, budget),
            Property::StrongKWise { k, ell } => is_strong_k_wise_eventown_within(family, k, ell, budget),
            Property::DDefectLOddtown { d, ell } => Ok(defect_check(family, d, ell)),
        }
    }

    /// How the search treats the property.
    fn plan(self) -> Plan {
        match self {
            Property::Eventown => Plan::strong(2, 2),
            Property::TwoWiseEventown => Plan::exact(2, 2),
            Property::LOddtown { ell } => Plan::defect(0, ell),
            Property::KWiseEventown { k, ell } => Plan::exact(k, ell),
            Property::StrongKWise { k, ell } => Plan::strong(k, ell),
            Property::DDefectLOddtown { d, ell } => Plan::defect(d, ell),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Property::Eventown => write!(f, "eventown"),
            Property::TwoWiseEventown => write!(f, "2-wise eventown"),
            Property::LOddtown { ell } => write!(f, "{ell}-oddtown"),
            Property::KWiseEventown { k, ell } => write!(f, "{k}-wise {ell}-eventown"),
            Property::StrongKWise { k, ell } => write!(f, "strong {k}-wise {ell}-eventown"),
            Property::DDefectLOddtown { d, ell } => write!(f, "{d}-defect {ell}-oddtown"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchProblem {
    pub ground: GroundSet,
    pub property: Property,
    pub allow_empty_set: bool,
    pub budget: u64,
}

impl SearchProblem {
    pub fn new(n: usize, property: Property) -> Result<Self, SearchError> {
        let ground = GroundSet::new(n).map_err(|e| SearchError::InvalidProblem(e.to_string()))?;
        Ok(SearchProblem {
            ground,
            property,
            allow_empty_set: true,
            budget: DEFAULT_NODE_BUDGET,
        })
    }

    pub fn allow_empty_set(mut self, allow: bool) -> Self {
        self.allow_empty_set = allow;
        self
    }

    pub fn budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub maximum: usize,
    pub witness: SetFamily,
    pub nodes_explored: u64,
    /// `false` when the node budget ran out; `maximum` is then only a lower bound.
    pub exact: bool,
}

/// Sizes of member sets allowed, pairwise compatibility, and the extra filters.
#[derive(Debug, Clone, Copy)]
struct Plan {
    ell: usize,
    /// Member sizes must be ≡ 0 (`Some(true)`), ≢ 0 (`Some(false)`) or are free.
    size_zero: Option<bool>,
    /// Pairwise intersections must be ≡ 0 mod ℓ (except through the defect allowance).
    pairwise: bool,
    /// Intersections of `j` sets for `3 ≤ j ≤ upper` must vanish (exact k-wise uses only `j = k`).
    higher: Option<(usize, usize)>,
    /// Bad partners allowed per set.
    defect: Option<usize>,
}

impl Plan {
    fn strong(k: usize, ell: u32) -> Plan {
        Plan {
            ell: ell as usize,
            size_zero: Some(true),
            pairwise: k >= 2,
            higher: (k >= 3).then_some((3, k)),
            defect: None,
        }
    }

    fn exact(k: usize, ell: u32) -> Plan {
        Plan {
            ell: ell as usize,
            size_zero: (k == 1).then_some(true),
            pairwise: k == 2,
            higher: (k >= 3).then_some((k, k)),
            defect: None,
        }
    }

    fn defect(d: usize, ell: u32) -> Plan {
        Plan {
            ell: ell as usize,
            size_zero: Some(false),
            pairwise: true,
            higher: None,
            defect: Some(d),
        }
    }
}

type Mask = Vec<u64>;

#[inline]
fn test(m: &[u64], i: usize) -> bool {
    m[i / 64] >> (i % 64) & 1 == 1
}

#[inline]
fn clear(m: &mut [u64], i: usize) {
    m[i / 64] &= !(1 << (i % 64));
}

fn count(m: &[u64]) -> usize {
    m.iter().map(|w| w.count_ones() as usize).sum()
}

fn first(m: &[u64]) -> Option<usize> {
    m.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

/// One representative of each `S_n`-orbit of `size`-subsets: the initial segment.
pub fn orbit_representatives(n: GroundSet, size: usize) -> Vec<BitSet> {
    if size > n.n() {
        return Vec::new();
    }
    vec![BitSet::range(n.n(), 1, size)]
}

struct Search<'a> {
    plan: Plan,
    sets: &'a [BitSet],
    /// Pairs whose intersection is ≡ 0 mod ℓ.
    good: Vec<Mask>,
    budget: u64,
    nodes: u64,
    out_of_budget: bool,
    best: Vec<usize>,
}

impl Search<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.out_of_budget = true;
        }
        !self.out_of_budget
    }

    /// Greedy partition of `cand` into classes of pairwise-bad sets; a class
    /// can hold at most `cap` chosen members.
    fn class_bound(&self, cand: &[u64], cap: usize) -> usize {
        let mut rest = cand.to_vec();
        let mut total = 0;
        while rest.iter().any(|&w| w != 0) {
            // grow a class of pairwise-bad candidates from the first remaining one
            let mut avail = rest.clone();
            let mut size = 0;
            while let Some(u) = first(&avail) {
                size += 1;
                clear(&mut rest, u);
                clear(&mut avail, u);
                for (a, g) in avail.iter_mut().zip(&self.good[u]) {
                    *a &= !g;
                }
            }
            total += size.min(cap);
        }
        total
    }

    fn bound(&self, chosen: usize, cand: &[u64]) -> usize {
        let rest = match (self.plan.pairwise, self.plan.defect) {
            (_, Some(d)) => self.class_bound(cand, d + 1),
            (true, None) => self.class_bound(cand, 1),
            (false, None) => count(cand),
        };
        chosen + rest
    }

    /// Removes candidates that would create a vanishing-intersection violation with
    /// `v` and the already chosen sets.
    fn higher_filter(&self, chosen: &[usize], v: usize, cand: &mut Mask) {
        let Some((lo, hi)) = self.plan.higher else { return };
        // subsets U of `chosen` of size j − 2, for lo ≤ j ≤ hi; check |v ∩ ⋂U ∩ x|
        let ell = self.plan.ell;
        let mut stack: Vec<(usize, BitSet, usize)> = vec![(0, self.sets[v].clone(), 0)];
        while let Some((start, acc, depth)) = stack.pop() {
            let j = depth + 2;
            if j >= lo && j <= hi && depth > 0 {
                for w in 0..cand.len() {
                    let mut bits = cand[w];
                    while bits != 0 {
                        let b = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        let x = w * 64 + b;
                        if acc.intersection_len(&self.sets[x]) % ell != 0 {
                            cand[w] &= !(1 << b);
                        }
                    }
                }
            }
            if j + 1 > hi || acc.is_empty() {
                continue;
            }
            for i in start..chosen.len() {
                stack.push((i + 1, acc.intersection(&self.sets[chosen[i]]), depth + 1));
            }
        }
    }

    fn defect_filter(&self, chosen: &[usize], cand: &mut Mask, d: usize) {
        // partners of each chosen set among the chosen
        let saturated: Vec<usize> = chosen
            .iter()
            .copied()
            .filter(|&u| chosen.iter().filter(|&&w| w != u && !test(&self.good[u], w)).count() >= d)
            .collect();
        for w in 0..cand.len() {
            let mut bits = cand[w];
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let x = w * 64 + b;
                let bad = chosen.iter().filter(|&&u| !test(&self.good[x], u)).count();
                if bad > d || saturated.iter().any(|&u| !test(&self.good[x], u)) {
                    cand[w] &= !(1 << b);
                }
            }
        }
    }

    fn run(&mut self, chosen: &mut Vec<usize>, mut cand: Mask) {
        loop {
            if !self.tick() {
                return;
            }
            let Some(v) = first(&cand) else {
                if chosen.len() > self.best.len() {
                    self.best = chosen.clone();
                }
                return;
            };
            if self.bound(chosen.len(), &cand) <= self.best.len() {
                return;
            }
            clear(&mut cand, v);
            let next = self.child(chosen, v, &cand);
            chosen.push(v);
            self.run(chosen, next);
            chosen.pop();
            if self.out_of_budget {
                return;
            }
        }
    }

    /// Candidates still available after adding `v` (all of them later than `v`).
    fn child(&self, chosen: &[usize], v: usize, cand: &Mask) -> Mask {
        let mut next = cand.clone();
        match self.plan.defect {
            Some(d) => {
                let mut with_v = chosen.to_vec();
                with_v.push(v);
                self.defect_filter(&with_v, &mut next, d);
            }
            None => {
                if self.plan.pairwise {
                    for (a, g) in next.iter_mut().zip(&self.good[v]) {
                        *a &= g;
                    }
                }
                self.higher_filter(chosen, v, &mut next);
            }
        }
        next
    }
}

/// Exact maximum (within budget) of a family with the given property.
pub fn max_family(problem: &SearchProblem) -> Result<SearchResult, SearchError> {
    problem.property.validate()?;
    let n = problem.ground.n();
    if n > MAX_SEARCH_GROUND {
        return Err(SearchError::TooLarge(n));
    }
    let plan = problem.property.plan();
    let mut sets: Vec<BitSet> = (0u64..1 << n).map(|m| BitSet::from_mask(n, m)).collect();
    sets.sort_unstable();
    sets.retain(|s| {
        let zero = s.len() % plan.ell == 0;
        let size_ok = plan.size_zero.is_none_or(|z| z == zero);
        size_ok && (problem.allow_empty_set || !s.is_empty())
    });
    let m = sets.len();
    let words = m.div_ceil(64).max(1);
    let good: Vec<Mask> = (0..m)
        .map(|i| {
            let mut row = vec![0u64; words];
            for j in 0..m {
                if j != i && sets[i].intersection_len(&sets[j]) % plan.ell == 0 {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();
    let mut search = Search {
        plan,
        sets: &sets,
        good,
        budget: problem.budget,
        nodes: 0,
        out_of_budget: false,
        best: Vec::new(),
    };
    for first_set in 0..m {
        if search.out_of_budget {
            break;
        }
        let s = &sets[first_set];
        if *s != BitSet::range(n, 1, s.len()) {
            continue;
        }
        let mut cand = vec![0u64; words];
        for j in first_set + 1..m {
            cand[j / 64] |= 1 << (j % 64);
        }
        if count(&cand) < search.best.len() {
            continue;
        }
        let next = search.child(&[], first_set, &cand);
        let mut chosen = vec![first_set];
        search.run(&mut chosen, next);
    }
    let witness = SetFamily::new(
        problem.ground,
        search.best.iter().map(|&i| sets[i].clone()).collect(),
    )
    .expect("candidates are distinct");
    Ok(SearchResult {
        maximum: witness.len(),
        witness,
        nodes_explored: search.nodes,
        exact: !search.out_of_budget,
    })
}
