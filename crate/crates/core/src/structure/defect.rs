use crate::family::{characteristic_vectors, defect_check, defect_graph, DefectGraph, SetFamily, Verdict};
use crate::gf::{gram, GfMatrix, GfVector, PrimeModulus, Subspace};
use crate::graph::SimpleGraph;

use super::StructureError;

/// Components up to this many vertices get exact α and χ.
pub const EXACT_COMPONENT_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    pub vertices: Vec<usize>,
    /// Exact when `exact`, otherwise a greedy independent set size (a lower bound).
    pub alpha: usize,
    /// Exact when `exact`, otherwise a greedy colouring size (at most `Δ + 1`).
    pub chi: usize,
    pub exact: bool,
    pub is_clique: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefectReport {
    pub vertex_count: usize,
    pub max_degree: usize,
    pub degrees: Vec<usize>,
    pub components: Vec<ComponentReport>,
}

impl DefectReport {
    /// α of the whole graph: the sum over components (a lower bound if any is inexact).
    pub fn alpha(&self) -> usize {
        self.components.iter().map(|c| c.alpha).sum()
    }

    pub fn chi(&self) -> usize {
        self.components.iter().map(|c| c.chi).max().unwrap_or(0)
    }

    pub fn all_exact(&self) -> bool {
        self.components.iter().all(|c| c.exact)
    }

    /// `α ≥ m / (Δ + 1)`.
    pub fn alpha_bound_holds(&self) -> bool {
        self.alpha() * (self.max_degree + 1) >= self.vertex_count
    }

    /// Components that are copies of `K_{Δ+1}`.
    pub fn full_cliques(&self) -> Vec<usize> {
        (0..self.components.len())
            .filter(|&i| {
                let c = &self.components[i];
                c.is_clique && c.vertices.len() == self.max_degree + 1
            })
            .collect()
    }
}

fn component_report(graph: &SimpleGraph, vertices: Vec<usize>) -> ComponentReport {
    let sub = graph.induced(&vertices);
    let is_clique = sub.is_clique(&(0..vertices.len()).collect::<Vec<_>>());
    if vertices.len() <= EXACT_COMPONENT_CAP {
        ComponentReport {
            alpha: sub.independence_number(),
            chi: sub.chromatic_number().0,
            exact: true,
            is_clique,
            vertices,
        }
    } else {
        let colors = sub.greedy_coloring();
        ComponentReport {
            alpha: sub.greedy_independent_set().len(),
            chi: colors.iter().max().map_or(0, |c| c + 1),
            exact: false,
            is_clique,
            vertices,
        }
    }
}

/// Degrees, components, and per-component α / χ of the defect graph.
pub fn defect_analytics(g: &DefectGraph) -> DefectReport {
    let graph = g.graph();
    DefectReport {
        vertex_count: graph.vertex_count(),
        max_degree: graph.max_degree(),
        degrees: graph.degrees(),
        components: graph
            .components()
            .into_iter()
            .map(|c| component_report(graph, c))
            .collect(),
    }
}

#[derive(Debug, Clone)]
pub struct GramReport {
    pub n: usize,
    /// Set indices grouped by defect-graph component.
    pub components: Vec<Vec<usize>>,
    /// Gram matrix with rows and columns in component order.
    pub gram: GfMatrix,
    /// Every entry between different components is zero.
    pub block_diagonal: bool,
    pub component_ranks: Vec<usize>,
    pub total_rank: usize,
    /// Exact α of each component (`None` above the exact cap).
    pub alphas: Vec<Option<usize>>,
    /// Whether a maximum independent set indexes a full-rank principal submatrix.
    pub independent_minor_full_rank: Vec<Option<bool>>,
    /// Components that are cliques on at least two sets with a rank-1 Gram block.
    pub rank_one_cliques: Vec<usize>,
}

impl GramReport {
    pub fn rank_sum(&self) -> usize {
        self.component_ranks.iter().sum()
    }

    /// `Σ rank(𝓜_i) = rank(𝓜) ≤ n`.
    pub fn rank_bound_holds(&self) -> bool {
        self.rank_sum() == self.total_rank && self.total_rank <= self.n
    }

    /// `rank(𝓜_i) ≥ α(C_i)` on every exactly analysed component.
    pub fn alpha_rank_holds(&self) -> bool {
        self.alphas
            .iter()
            .zip(&self.component_ranks)
            .all(|(a, &r)| a.is_none_or(|a| r >= a))
    }
}

/// Gram matrix of the characteristic vectors, split into its per-component blocks.
pub fn component_gram_analysis(family: &SetFamily, ell: PrimeModulus) -> GramReport {
    let dg = defect_graph(family, ell);
    let components = dg.components();
    let order: Vec<usize> = components.iter().flatten().copied().collect();
    let vectors = characteristic_vectors(family, ell);
    let ordered: Vec<GfVector> = order.iter().map(|&i| vectors[i].clone()).collect();
    let full = gram(ell, &ordered).expect("vectors share length and modulus");
    let mut comp_of = vec![0; family.len()];
    for (c, vs) in components.iter().enumerate() {
        for &v in vs {
            comp_of[v] = c;
        }
    }
    let block_diagonal = (0..order.len()).all(|i| {
        (0..order.len()).all(|j| comp_of[order[i]] == comp_of[order[j]] || full.get(i, j) == 0)
    });
    let mut component_ranks = Vec::new();
    let mut alphas = Vec::new();
    let mut minors = Vec::new();
    let mut rank_one_cliques = Vec::new();
    let mut offset = 0;
    for (c, vs) in components.iter().enumerate() {
        let local: Vec<usize> = (offset..offset + vs.len()).collect();
        offset += vs.len();
        let block = full.principal(&local);
        let r = block.rank();
        component_ranks.push(r);
        let sub = dg.graph().induced(vs);
        if vs.len() <= EXACT_COMPONENT_CAP {
            let mis = sub.max_independent_set();
            alphas.push(Some(mis.len()));
            let idx: Vec<usize> = mis.iter().map(|&i| local[i]).collect();
            minors.push(Some(full.principal(&idx).rank() == idx.len()));
        } else {
            alphas.push(None);
            minors.push(None);
        }
        if vs.len() >= 2 && r == 1 && sub.is_clique(&(0..vs.len()).collect::<Vec<_>>()) {
            rank_one_cliques.push(c);
        }
    }
    GramReport {
        n: family.n(),
        total_rank: full.rank(),
        components,
        gram: full,
        block_diagonal,
        component_ranks,
        alphas,
        independent_minor_full_rank: minors,
        rank_one_cliques,
    }
}

/// Which way the first defect pair `(a₁, b₁)` goes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefectCase {
    /// `(a₁·a₁)(b₁·b₁) = (a₁·b₁)²`.
    Proportional,
    /// `(a₁·a₁)(b₁·b₁) ≠ (a₁·b₁)²`.
    General,
}

impl DefectCase {
    pub fn number(self) -> u8 {
        match self {
            DefectCase::Proportional => 1,
            DefectCase::General => 2,
        }
    }
}

/// Labelling `A₁, B₁, …, A_t, B_t, A_{t+1}, …, A_s` of a 1-defect family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDecomposition {
    /// Matched pairs `(A_i, B_i)` as set indices, ordered by `A_i`.
    pub pairs: Vec<(usize, usize)>,
    /// Unmatched set indices.
    pub singles: Vec<usize>,
    pub case: Option<DefectCase>,
    /// `v = (a₁·a₁)b₁ − (a₁·b₁)a₁` in the proportional case.
    pub isotropic: Option<GfVector>,
}

impl PairDecomposition {
    pub fn t(&self) -> usize {
        self.pairs.len()
    }

    pub fn s(&self) -> usize {
        self.pairs.len() + self.singles.len()
    }

    /// Indices of `A_1, …, A_s`.
    pub fn a_indices(&self) -> Vec<usize> {
        self.pairs.iter().map(|p| p.0).chain(self.singles.iter().copied()).collect()
    }
}

fn require_one_defect(family: &SetFamily, ell: PrimeModulus) -> Result<(), StructureError> {
    match defect_check(family, 1, ell.get()) {
        Verdict::Pass => Ok(()),
        Verdict::Fail(v) => Err(StructureError::NotOneDefect(v)),
    }
}

pub fn pair_decomposition_1defect(family: &SetFamily, ell: PrimeModulus) -> Result<PairDecomposition, StructureError> {
    require_one_defect(family, ell)?;
    let dg = defect_graph(family, ell);
    let g = dg.graph();
    let mut pairs = Vec::new();
    let mut singles = Vec::new();
    for i in 0..family.len() {
        match g.neighbors(i).next() {
            Some(j) if j > i => pairs.push((i, j)),
            Some(_) => {}
            None => singles.push(i),
        }
    }
    let vectors = characteristic_vectors(family, ell);
    let (case, isotropic) = match pairs.first() {
        None => (None, None),
        Some(&(a, b)) => {
            let (a1, b1) = (&vectors[a], &vectors[b]);
            let aa = a1.dot(a1);
            let ab = a1.dot(b1);
            if ell.mul(aa, b1.dot(b1)) == ell.mul(ab, ab) {
                let v = b1.combine(aa, a1, ell.neg(ab));
                (Some(DefectCase::Proportional), Some(v))
            } else {
                (Some(DefectCase::General), None)
            }
        }
    };
    let d = PairDecomposition {
        pairs,
        singles,
        case,
        isotropic,
    };
    if let Some(v) = &d.isotropic {
        debug_assert_eq!(v.dot(v), 0);
        debug_assert!(d.a_indices().iter().all(|&i| v.dot(&vectors[i]) == 0));
    }
    Ok(d)
}

/// Explicit independent vectors from the 1-defect argument, with their rank.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub case: DefectCase,
    pub vectors: Vec<GfVector>,
    pub rank: usize,
    pub s: usize,
    pub t: usize,
    pub m: usize,
    pub n: usize,
}

impl Certificate {
    pub fn full_rank(&self) -> bool {
        self.rank == self.vectors.len()
    }

    /// `max{n, 2n − 4}`.
    pub fn size_bound(&self) -> usize {
        self.n.max((2 * self.n).saturating_sub(4))
    }

    /// The family size respects the bound the certificate implies.
    pub fn bound_holds(&self) -> bool {
        self.m <= self.size_bound() && self.vectors.len() <= self.n
    }
}

pub fn independence_certificate_1defect(family: &SetFamily, ell: PrimeModulus) -> Result<Certificate, StructureError> {
    let d = pair_decomposition_1defect(family, ell)?;
    let case = d.case.ok_or(StructureError::NoDefectPairs)?;
    let vectors = characteristic_vectors(family, ell);
    let mut out: Vec<GfVector> = d.a_indices().iter().map(|&i| vectors[i].clone()).collect();
    match case {
        DefectCase::Proportional => {
            let v = d.isotropic.clone().expect("proportional case carries v");
            let j = (0..v.len()).find(|&j| v.get(j) != 0).expect("v is non-zero");
            let v1 = GfVector::unit(ell, v.len(), j);
            let v2 = v.combine(1, &v1, ell.neg(1));
            out.push(v1);
            out.push(v2);
        }
        DefectCase::General => {
            out.push(vectors[d.pairs[0].1].clone());
            if d.t() >= 2 {
                out.push(vectors[d.pairs[1].1].clone());
            }
        }
    }
    let rank = Subspace::span(ell, family.n(), &out)?.dim();
    Ok(Certificate {
        case,
        rank,
        s: d.s(),
        t: d.t(),
        m: family.len(),
        n: family.n(),
        vectors: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{d_defect_construction, one_defect_from_hadamard};
    use crate::family::GroundSet;
    use crate::hadamard::paley;

    fn p(x: u32) -> PrimeModulus {
        PrimeModulus::new(x).unwrap()
    }

    #[test]
    fn analytics_on_small_graphs() {
        let singles: Vec<Vec<usize>> = (1..=4).map(|i| vec![i]).collect();
        let odd = SetFamily::from_lists(4, &singles).unwrap();
        let r = defect_analytics(&defect_graph(&odd, p(2)));
        assert_eq!((r.alpha(), r.chi(), r.max_degree), (4, 1, 0));
        let f = d_defect_construction(GroundSet::new(10).unwrap(), 3, 2, None).unwrap();
        let r = defect_analytics(&defect_graph(&f, p(2)));
        assert_eq!(r.chi(), 4);
        assert_eq!(r.alpha(), 6);
        assert_eq!(r.full_cliques().len(), 6);
        assert!(r.alpha_bound_holds());
    }

    #[test]
    fn gram_blocks_of_small_defect_family() {
        let f = d_defect_construction(GroundSet::new(5).unwrap(), 1, 2, None).unwrap();
        let g = component_gram_analysis(&f, p(2));
        assert_eq!(g.components.len(), 3);
        assert!(g.components.iter().all(|c| c.len() == 2));
        assert!(g.block_diagonal && g.rank_bound_holds() && g.alpha_rank_holds());
        assert!(g.component_ranks.iter().all(|&r| r >= 1));
    }

    #[test]
    fn rank_one_clique_is_flagged() {
        // Gram over GF(3) is [[2,1,1],[1,2,1],[1,1,2]] with determinant 4 ≡ 1
        let f = SetFamily::from_lists(4, &[vec![1, 2], vec![1, 3], vec![1, 4]]).unwrap();
        let g = component_gram_analysis(&f, p(3));
        assert_eq!(g.component_ranks, vec![3]);
        assert!(g.rank_one_cliques.is_empty());
        // odd sizes, pairwise intersection {1}: the GF(2) Gram matrix is all ones
        let f = SetFamily::from_lists(7, &[vec![1, 2, 3], vec![1, 4, 5], vec![1, 6, 7]]).unwrap();
        let g = component_gram_analysis(&f, p(2));
        assert_eq!(g.component_ranks, vec![1]);
        assert_eq!(g.rank_one_cliques, vec![0]);
    }

    #[test]
    fn hadamard_family_certificate() {
        let f = one_defect_from_hadamard(&paley(3).unwrap(), 2).unwrap();
        let d = pair_decomposition_1defect(&f, p(2)).unwrap();
        assert_eq!((d.t(), d.s()), (3, 3));
        let c = independence_certificate_1defect(&f, p(2)).unwrap();
        assert_eq!(c.vectors.len(), 5);
        assert!(c.full_rank());
        assert!(c.bound_holds());
    }

    #[test]
    fn certificate_errors_and_small_cases() {
        let singles: Vec<Vec<usize>> = (1..=3).map(|i| vec![i]).collect();
        let odd = SetFamily::from_lists(3, &singles).unwrap();
        assert_eq!(pair_decomposition_1defect(&odd, p(2)).unwrap().t(), 0);
        assert!(matches!(
            independence_certificate_1defect(&odd, p(2)),
            Err(StructureError::NoDefectPairs)
        ));
        let bad = SetFamily::from_lists(5, &[vec![1], vec![1, 2, 3], vec![1, 4, 5]]).unwrap();
        assert!(matches!(
            pair_decomposition_1defect(&bad, p(2)),
            Err(StructureError::NotOneDefect(_))
        ));
        // one pair: {1},{1,2,3} plus {4}
        let one = SetFamily::from_lists(4, &[vec![1], vec![1, 2, 3], vec![4]]).unwrap();
        let c = independence_certificate_1defect(&one, p(2)).unwrap();
        assert_eq!(c.t, 1);
        assert!(c.full_rank());
        let f = d_defect_construction(GroundSet::new(7).unwrap(), 1, 3, None).unwrap();
        let d = pair_decomposition_1defect(&f, p(3)).unwrap();
        assert_eq!(d.t(), 4);
        assert!(d.case.is_some());
    }
}
