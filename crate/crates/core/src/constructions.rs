//! Explicit families: block unions, augmented blocks, strong-but-not-higher
//! families, the dyadic recursion and its products, the step-up map, and the
//! defect families built from Hadamard matrices or small eventown cores.
//!
//! Every generator re-checks its output with the family checkers when the
//! check fits inside [`VALIDATION_BUDGET`]; larger outputs are returned unchecked.

use rand::seq::index::sample;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bitset::{BitSet, MAX_GROUND};
use crate::family::{
    defect_check, is_k_wise_eventown_within, is_strong_k_wise_eventown_within, FamilyError, GroundSet, SetFamily,
    Verdict,
};
use crate::gf::{ceil_log2, GfError};
use crate::hadamard::HadamardMatrix;
use crate::structure::closure::linear_closure;

/// Largest family a generator will materialize.
pub const MAX_FAMILY: usize = 1 << 22;

/// Subset evaluations spent on post-validation before it is skipped.
pub const VALIDATION_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("PreconditionViolated: {0}")]
    PreconditionViolated(String),
    #[error("BudgetExceeded: {what} would have {size} members, cap is {cap}")]
    BudgetExceeded { what: &'static str, size: String, cap: usize },
    #[error("NotPowerOfTwo: ell = {0}")]
    NotPowerOfTwo(u32),
    #[error("DivisibilityViolated: {0}")]
    DivisibilityViolated(String),
    #[error("CoreNotEventown: {0}")]
    CoreNotEventown(String),
    #[error("ValidationFailed: {what}: {detail}")]
    ValidationFailed { what: &'static str, detail: String },
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Gf(#[from] GfError),
}

type Result<T> = std::result::Result<T, ConstructionError>;

fn precondition(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(ConstructionError::PreconditionViolated(msg()))
    }
}

fn size_cap(what: &'static str, log2_size: usize) -> Result<()> {
    if log2_size > 22 {
        Err(ConstructionError::BudgetExceeded {
            what,
            size: format!("2^{log2_size}"),
            cap: MAX_FAMILY,
        })
    } else {
        Ok(())
    }
}

/// Runs a checker; a budget overrun skips the check, a failing verdict is an error.
fn validated(
    what: &'static str,
    family: SetFamily,
    check: impl FnOnce(&SetFamily) -> std::result::Result<Verdict, FamilyError>,
) -> Result<SetFamily> {
    match check(&family) {
        Ok(Verdict::Pass) | Err(FamilyError::BudgetExceeded(_)) => Ok(family),
        Ok(Verdict::Fail(v)) => Err(ConstructionError::ValidationFailed {
            what,
            detail: v.to_string(),
        }),
        Err(e) => Err(e.into()),
    }
}

/// The `m` blocks `{(i−1)b+1, …, ib}` of `[n]`.
fn blocks(n: usize, block_size: usize, m: usize) -> Vec<BitSet> {
    (1..=m)
        .map(|i| BitSet::range(n, (i - 1) * block_size + 1, i * block_size))
        .collect()
}

/// All unions of sub-collections of `parts` (parts pairwise disjoint).
fn all_unions(n: usize, parts: &[BitSet]) -> Vec<BitSet> {
    let mut out = vec![BitSet::empty(n)];
    for p in parts {
        let with: Vec<BitSet> = out.iter().map(|s| s.union(p)).collect();
        out.extend(with);
    }
    out
}

/// `{A ∪ B : A ∈ first, B ∈ second}` for families on disjoint parts of the same ground set.
fn product(first: &[BitSet], second: &[BitSet]) -> Vec<BitSet> {
    first
        .iter()
        .flat_map(|a| second.iter().map(move |b| a.union(b)))
        .collect()
}

/// All `2^⌊n/b⌋` unions of the disjoint blocks `{(i−1)b+1, …, ib}`.
pub fn block_family(n: GroundSet, block_size: usize) -> Result<SetFamily> {
    precondition(block_size >= 1, || "block size must be at least 1".into())?;
    let m = n.n() / block_size;
    size_cap("block family", m)?;
    let sets = all_unions(n.n(), &blocks(n.n(), block_size, m));
    let family = SetFamily::new(n, sets)?;
    let ell = block_size.max(2) as u32;
    validated("block family", family, |f| {
        is_strong_k_wise_eventown_within(f, 2, ell, VALIDATION_BUDGET)
    })
}

/// Pairs block family plus `k − 1` sets `C_j ∪ {n}`, `n` odd.
///
/// The `C_j` are the `k − 1` canonically smallest block unions, or a seeded
/// random choice of `k − 1` distinct block unions when `seed` is given.
pub fn augmented_block_family(n: GroundSet, k: usize, seed: Option<u64>) -> Result<SetFamily> {
    let nn = n.n();
    precondition(nn % 2 == 1, || format!("n = {nn} must be odd"))?;
    precondition(k >= 2, || format!("k = {k} must be at least 2"))?;
    precondition(nn >= 2 * ceil_log2(k - 1), || {
        format!("n = {nn} is below 2⌈log2(k−1)⌉ = {}", 2 * ceil_log2(k - 1))
    })?;
    let base = block_family(n, 2)?;
    let picks: Vec<usize> = match seed {
        None => (0..k - 1).collect(),
        Some(s) => {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            let mut v = sample(&mut rng, base.len(), k - 1).into_vec();
            v.sort_unstable();
            v
        }
    };
    let mut sets = base.sets().to_vec();
    for i in picks {
        let mut c = base.get(i).clone();
        c.insert(nn);
        sets.push(c);
    }
    let family = SetFamily::new(n, sets)?;
    validated("augmented block family", family, |f| {
        is_k_wise_eventown_within(f, k, 2, VALIDATION_BUDGET)
    })
}

/// The sets `B_0 = [2^{k+1}]` and `B_i = {f(S) : i ∈ S ⊆ [k+1]}`.
///
/// `f(S) = 1 + Σ_{i∈S} 2^{i−1}` in general. With `drop_b0`, `f(S) = Σ_{i∈S} 2^{i−1}`
/// and `f(∅) = 2^{k+1}`, so `B_1..B_{k+1}` live in `[2^{k+1} − 1]`.
pub fn strong_not_higher_core(k: usize, ground: usize, drop_b0: bool) -> Vec<BitSet> {
    let top = 1usize << (k + 1);
    let f = |mask: usize| -> usize {
        if !drop_b0 {
            mask + 1
        } else if mask == 0 {
            top
        } else {
            mask
        }
    };
    let mut out = Vec::new();
    if !drop_b0 {
        out.push(BitSet::range(ground, 1, top));
    }
    for i in 0..=k {
        let mut b = BitSet::empty(ground);
        for mask in (0..top).filter(|m| m >> i & 1 == 1) {
            b.insert(f(mask));
        }
        out.push(b);
    }
    out
}

/// A strong k-wise eventown of size `2^{⌊n/2⌋ − (2^k − k − 2)}` that is not (k+1)-wise.
pub fn strong_not_higher(n: GroundSet, k: usize) -> Result<SetFamily> {
    let nn = n.n();
    precondition(k >= 2, || format!("k = {k} must be at least 2"))?;
    precondition(k + 1 < usize::BITS as usize - 1 && (1usize << (k + 1)) - 1 <= nn, || {
        format!("n = {nn} is below 2^(k+1) − 1")
    })?;
    let top = 1usize << (k + 1);
    if nn == top - 1 {
        size_cap("strong-not-higher family", k + 1)?;
        let core = SetFamily::new(n, strong_not_higher_core(k, nn, true))?;
        let closed = linear_closure(&core)?;
        return validate_strong_not_higher(closed, k);
    }
    let rest = (nn - top) / 2;
    size_cap("strong-not-higher family", k + 2 + rest)?;
    let core = SetFamily::new(n, strong_not_higher_core(k, nn, false))?;
    let closed = linear_closure(&core)?;
    let pads = all_unions(
        nn,
        &(0..rest)
            .map(|i| BitSet::range(nn, top + 2 * i + 1, top + 2 * i + 2))
            .collect::<Vec<_>>(),
    );
    let family = SetFamily::new(n, product(closed.sets(), &pads))?;
    validate_strong_not_higher(family, k)
}

fn validate_strong_not_higher(family: SetFamily, k: usize) -> Result<SetFamily> {
    let family = validated("strong-not-higher family", family, |f| {
        is_strong_k_wise_eventown_within(f, k, 2, VALIDATION_BUDGET)
    })?;
    match is_k_wise_eventown_within(&family, k + 1, 2, VALIDATION_BUDGET) {
        Ok(Verdict::Pass) => Err(ConstructionError::ValidationFailed {
            what: "strong-not-higher family",
            detail: format!("it is also {}-wise", k + 1),
        }),
        _ => Ok(family),
    }
}

/// The ordered sets `A_1^r, …, A_{2^{r+1}}^r` of `[2^r]`, starting from `(∅, {1})`.
pub fn recursive_sequence(r: usize) -> Result<Vec<BitSet>> {
    precondition(r <= 12, || format!("r = {r} exceeds 12"))?;
    let mut cur = vec![BitSet::empty(1), BitSet::from_mask(1, 1)];
    for level in 1..=r {
        let half = 1usize << (level - 1);
        let n = 2 * half;
        let mut next = Vec::with_capacity(2 * cur.len());
        for a in &cur {
            next.push(a.widened(n).union(&a.shifted(half, n)));
        }
        for a in &cur {
            next.push(a.widened(n).union(&a.complement().shifted(half, n)));
        }
        cur = next;
    }
    Ok(cur)
}

/// First index set `S` with `|S| ≤ max_size` such that `2^{r−|S|}` does not divide
/// `|⋂_{i∈S} A_i|`, searched in lexicographic order.
pub fn divisibility_violation(sets: &[BitSet], r: usize, max_size: usize) -> Option<Vec<usize>> {
    fn walk(
        sets: &[BitSet],
        r: usize,
        max_size: usize,
        start: usize,
        acc: Option<&BitSet>,
        stack: &mut Vec<usize>,
    ) -> Option<Vec<usize>> {
        for i in start..sets.len() {
            let next = match acc {
                Some(a) => a.intersection(&sets[i]),
                None => sets[i].clone(),
            };
            stack.push(i);
            let depth = stack.len();
            if depth <= r && next.len() % (1usize << (r - depth)) != 0 {
                return Some(stack.clone());
            }
            if depth < max_size && !next.is_empty() {
                if let Some(w) = walk(sets, r, max_size, i + 1, Some(&next), stack) {
                    return Some(w);
                }
            }
            stack.pop();
        }
        None
    }
    walk(sets, r, max_size.min(r), 0, None, &mut Vec::new())
}

/// Largest subset size whose exhaustive divisibility check stays under the validation budget.
fn feasible_depth(m: usize, r: usize) -> usize {
    let mut total: f64 = 0.0;
    let mut binom: f64 = 1.0;
    for j in 1..=r {
        binom = binom * (m + 1 - j) as f64 / j as f64;
        total += binom;
        if total > VALIDATION_BUDGET as f64 {
            return j - 1;
        }
    }
    r
}

/// The family `𝓐^r`: `2^{r+1}` subsets of `[2^r]` in which any `|S| ≤ r` members
/// meet in a multiple of `2^{r−|S|}`.
pub fn recursive_family(r: usize) -> Result<SetFamily> {
    let seq = recursive_sequence(r)?;
    let depth = feasible_depth(seq.len(), r);
    if let Some(w) = divisibility_violation(&seq, r, depth) {
        return Err(ConstructionError::ValidationFailed {
            what: "recursive family",
            detail: format!("index set {w:?} breaks the divisibility property"),
        });
    }
    let n = seq[0].ground();
    Ok(SetFamily::new(GroundSet::new(n)?, seq)?)
}

/// Products of shifted copies of `𝓐^{k+a}` for `ℓ = 2^a`: a strong k-wise ℓ-eventown
/// of size `(2^{k+1}ℓ)^{⌊n/(2^kℓ)⌋}`.
pub fn power_of_two_eventown(n: GroundSet, k: usize, ell: u32) -> Result<SetFamily> {
    if ell < 2 || !ell.is_power_of_two() {
        return Err(ConstructionError::NotPowerOfTwo(ell));
    }
    precondition(k >= 1, || "k must be at least 1".into())?;
    let a = ell.trailing_zeros() as usize;
    let r = k + a;
    precondition(r <= 12, || format!("k + log2(ell) = {r} exceeds 12"))?;
    let width = 1usize << r;
    let copies = n.n() / width;
    precondition(copies >= 1, || format!("n = {} is below 2^k·ell = {width}", n.n()))?;
    size_cap("power-of-two eventown", (r + 1) * copies)?;
    let base = recursive_sequence(r)?;
    let mut sets = vec![BitSet::empty(n.n())];
    for j in 0..copies {
        let shifted: Vec<BitSet> = base.iter().map(|s| s.shifted(j * width, n.n())).collect();
        sets = product(&sets, &shifted);
    }
    let family = SetFamily::new(n, sets)?;
    validated("power-of-two eventown", family, |f| {
        is_strong_k_wise_eventown_within(f, k, ell, VALIDATION_BUDGET)
    })
}

/// `B_i = A_i ∪ (([n] ∖ A_i) + n)` on `[2n]`; needs `ℓ | n`.
pub fn step_up(family: &SetFamily, ell: u32) -> Result<SetFamily> {
    let n = family.n();
    if ell < 2 || n % ell as usize != 0 {
        return Err(ConstructionError::DivisibilityViolated(format!("ell = {ell} does not divide n = {n}")));
    }
    precondition(2 * n <= MAX_GROUND, || format!("2n = {} exceeds {MAX_GROUND}", 2 * n))?;
    let sets = family
        .iter()
        .map(|a| a.widened(2 * n).union(&a.complement().shifted(n, 2 * n)))
        .collect();
    Ok(SetFamily::new(GroundSet::new(2 * n)?, sets)?)
}

/// `{A_j ∪ {n}, B_j ∪ {n}}` from the columns of a Hadamard matrix of order `n − 1`
/// whose last column has been made all-ones. Size `2n − 4`.
pub fn one_defect_from_hadamard(h: &HadamardMatrix, ell: u32) -> Result<SetFamily> {
    let order = h.order();
    let n = order + 1;
    if ell < 2 {
        return Err(FamilyError::InvalidModulus(ell).into());
    }
    let e = ell as usize;
    let ok = if ell == 2 { n % 8 == 5 } else { (n + 3) % e == 0 };
    if !ok {
        let need = if ell == 2 {
            "n ≡ 5 (mod 8)".to_string()
        } else {
            format!("{ell} | n + 3")
        };
        return Err(ConstructionError::DivisibilityViolated(format!("n = {n} but the family needs {need}")));
    }
    precondition(n <= MAX_GROUND, || format!("n = {n} exceeds {MAX_GROUND}"))?;
    let h = h.normalized_last_column();
    let mut sets = Vec::with_capacity(2 * (n - 2));
    for j in 0..order - 1 {
        let mut a = BitSet::empty(n);
        let mut b = BitSet::empty(n);
        for i in 0..order {
            if h.get(i, j) == 1 {
                a.insert(i + 1);
            } else {
                b.insert(i + 1);
            }
        }
        a.insert(n);
        b.insert(n);
        sets.push(a);
        sets.push(b);
    }
    let family = SetFamily::new(GroundSet::new(n)?, sets)?;
    validated("one-defect family", family, |f| Ok(defect_check(f, 1, ell)))
}

/// `{B ∪ {i} : B ∈ core, i ∈ [n] ∖ [s]}` where `core` holds `d + 1` sets of an
/// ℓ-eventown on `[s]`. Size `(d + 1)(n − s)`.
///
/// Without a core, `s = ℓ⌈log2(d+1)⌉` and the core is the first `d + 1` unions of
/// blocks of size `ℓ`. A supplied core contributes its first `d + 1` sets.
pub fn d_defect_construction(n: GroundSet, d: usize, ell: u32, core: Option<&SetFamily>) -> Result<SetFamily> {
    if ell < 2 {
        return Err(FamilyError::InvalidModulus(ell).into());
    }
    let nn = n.n();
    let (s, core_sets): (usize, Vec<BitSet>) = match core {
        None => {
            let t = ceil_log2(d + 1);
            let s = ell as usize * t;
            precondition(s < nn, || format!("s = {s} must be at most n − 1 = {}", nn - 1))?;
            let g = GroundSet::new(s.max(1))?;
            let b = block_family(g, ell as usize)?;
            let sets = b.sets()[..d + 1].iter().map(|x| x.widened(nn)).collect();
            (s, sets)
        }
        Some(c) => {
            let s = c.n();
            precondition(s < nn, || format!("core ground {s} must be at most n − 1 = {}", nn - 1))?;
            if c.len() < d + 1 {
                return Err(ConstructionError::CoreNotEventown(format!(
                    "core has {} sets, need at least d + 1 = {}",
                    c.len(),
                    d + 1
                )));
            }
            match is_strong_k_wise_eventown_within(c, 2, ell, u64::MAX)? {
                Verdict::Pass => {}
                Verdict::Fail(v) => return Err(ConstructionError::CoreNotEventown(v.to_string())),
            }
            (s, c.sets()[..d + 1].iter().map(|x| x.widened(nn)).collect())
        }
    };
    let size = (d + 1) * (nn - s);
    if size > MAX_FAMILY {
        return Err(ConstructionError::BudgetExceeded {
            what: "d-defect family",
            size: size.to_string(),
            cap: MAX_FAMILY,
        });
    }
    let mut sets = Vec::with_capacity(size);
    for b in &core_sets {
        for i in s + 1..=nn {
            let mut x = b.clone();
            x.insert(i);
            sets.push(x);
        }
    }
    let family = SetFamily::new(n, sets)?;
    validated("d-defect family", family, |f| Ok(defect_check(f, d, ell)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{defect_graph, is_k_wise_eventown, is_strong_k_wise_eventown};
    use crate::gf::PrimeModulus;
    use crate::hadamard::{paley, sylvester};

    fn g(n: usize) -> GroundSet {
        GroundSet::new(n).unwrap()
    }

    #[test]
    fn block_examples() {
        let f = block_family(g(6), 2).unwrap();
        assert_eq!(f.len(), 8);
        for k in 1..=8 {
            assert!(is_strong_k_wise_eventown(&f, k, 2).unwrap().passed());
        }
        let f = block_family(g(9), 3).unwrap();
        assert_eq!(f.len(), 8);
        assert!(is_strong_k_wise_eventown(&f, 8, 3).unwrap().passed());
        assert_eq!(block_family(g(1), 2).unwrap().to_lists(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn augmented_examples() {
        let f = augmented_block_family(g(9), 3, None).unwrap();
        assert_eq!(f.len(), 18);
        assert!(is_k_wise_eventown(&f, 3, 2).unwrap().passed());
        assert!(!is_k_wise_eventown(&f, 2, 2).unwrap().passed());
        assert_eq!(augmented_block_family(g(7), 2, None).unwrap().len(), 9);
        let seeded = augmented_block_family(g(9), 4, Some(11)).unwrap();
        assert_eq!(seeded.len(), 16 + 3);
        assert!(is_k_wise_eventown(&seeded, 4, 2).unwrap().passed());
        assert!(matches!(
            augmented_block_family(g(8), 3, None),
            Err(ConstructionError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn strong_not_higher_sizes() {
        for (n, k, size) in [(7, 2, 8), (8, 2, 16), (9, 2, 16), (10, 2, 32), (15, 3, 16), (16, 3, 32)] {
            let f = strong_not_higher(g(n), k).unwrap();
            assert_eq!(f.len(), size, "n={n} k={k}");
            assert!(is_strong_k_wise_eventown(&f, k, 2).unwrap().passed());
            assert!(!is_k_wise_eventown(&f, k + 1, 2).unwrap().passed());
        }
        assert!(strong_not_higher(g(6), 2).is_err());
    }

    #[test]
    fn recursive_base_cases() {
        let f = recursive_family(1).unwrap();
        assert_eq!(f.to_lists(), vec![vec![], vec![1], vec![2], vec![1, 2]]);
        let seq = recursive_sequence(1).unwrap();
        let lists: Vec<Vec<usize>> = seq.iter().map(|s| s.to_vec()).collect();
        assert_eq!(lists, vec![vec![], vec![1, 2], vec![2], vec![1]]);
        let f2 = recursive_family(2).unwrap();
        assert_eq!(f2.len(), 8);
        assert!(f2.iter().all(|s| s.len() % 2 == 0));
        let f3 = recursive_family(3).unwrap();
        assert_eq!(f3.len(), 16);
        assert!(is_strong_k_wise_eventown(&f3, 2, 2).unwrap().passed());
    }

    #[test]
    fn power_of_two_examples() {
        assert_eq!(power_of_two_eventown(g(8), 2, 2).unwrap().len(), 16);
        let f = power_of_two_eventown(g(16), 2, 2).unwrap();
        assert_eq!(f.len(), 256);
        assert!(is_strong_k_wise_eventown(&f, 2, 2).unwrap().passed());
        let f = power_of_two_eventown(g(8), 1, 4).unwrap();
        assert_eq!(f.len(), 16);
        assert!(f.iter().all(|s| s.len() % 4 == 0));
        assert_eq!(power_of_two_eventown(g(8), 1, 6), Err(ConstructionError::NotPowerOfTwo(6)));
    }

    #[test]
    fn step_up_example() {
        let f = SetFamily::from_lists(4, &[vec![], vec![1, 2], vec![3, 4], vec![1, 2, 3, 4]]).unwrap();
        let up = step_up(&f, 2).unwrap();
        let want = SetFamily::from_lists(8, &[vec![5, 6, 7, 8], vec![1, 2, 7, 8], vec![3, 4, 5, 6], vec![1, 2, 3, 4]])
            .unwrap();
        assert_eq!(up, want);
        assert!(is_strong_k_wise_eventown(&up, 3, 2).unwrap().passed());
        assert!(up.iter().all(|s| s.len() == 4));
        assert!(matches!(step_up(&f, 3), Err(ConstructionError::DivisibilityViolated(_))));
    }

    #[test]
    fn hadamard_defect_families() {
        let f = one_defect_from_hadamard(&paley(3).unwrap(), 2).unwrap();
        assert_eq!((f.n(), f.len()), (5, 6));
        let dg = defect_graph(&f, PrimeModulus::TWO);
        assert_eq!(dg.graph().edge_count(), 3);
        assert_eq!(dg.max_degree(), 1);
        let f = one_defect_from_hadamard(&sylvester(3).unwrap(), 3).unwrap();
        assert_eq!((f.n(), f.len()), (9, 14));
        assert!(f.iter().all(|s| s.len() == 5));
        assert!(matches!(
            one_defect_from_hadamard(&paley(3).unwrap(), 3),
            Err(ConstructionError::DivisibilityViolated(_))
        ));
    }

    #[test]
    fn d_defect_examples() {
        let f = d_defect_construction(g(5), 1, 2, None).unwrap();
        assert_eq!(
            f.to_lists(),
            vec![vec![3], vec![4], vec![5], vec![1, 2, 3], vec![1, 2, 4], vec![1, 2, 5]]
        );
        let f = d_defect_construction(g(10), 3, 2, None).unwrap();
        assert_eq!(f.len(), 24);
        let comps = defect_graph(&f, PrimeModulus::TWO).components();
        assert_eq!(comps.len(), 6);
        assert!(comps.iter().all(|c| c.len() == 4));
        let f = d_defect_construction(g(6), 0, 3, None).unwrap();
        assert_eq!(f.len(), 6);
        let core = SetFamily::from_lists(3, &[vec![1]]).unwrap();
        assert!(matches!(
            d_defect_construction(g(6), 0, 2, Some(&core)),
            Err(ConstructionError::CoreNotEventown(_))
        ));
    }
}
