//! Small undirected graphs on bitset rows, with exact independence/chromatic
//! numbers for small vertex sets and greedy fallbacks for large ones.

/// Largest vertex count accepted by the exact routines.
pub const EXACT_LIMIT: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<u64>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph {
            n,
            adj: vec![vec![0; n.div_ceil(64)]; n],
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Self {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v, "self-loop at {u}");
        self.adj[u][v / 64] |= 1 << (v % 64);
        self.adj[v][u / 64] |= 1 << (u % 64);
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u][v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.degrees().iter().sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&u| self.has_edge(v, u))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        stack.push(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Subgraph induced on `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> SimpleGraph {
        let mut g = SimpleGraph::new(vertices.len());
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    pub fn is_proper_coloring(&self, colors: &[usize]) -> bool {
        colors.len() == self.n
            && (0..self.n).all(|u| self.neighbors(u).all(|v| colors[u] != colors[v]))
    }

    fn mask_rows(&self) -> Vec<u64> {
        assert!(self.n <= EXACT_LIMIT, "exact routines need at most {EXACT_LIMIT} vertices");
        self.adj.iter().map(|r| r.first().copied().unwrap_or(0)).collect()
    }

    /// Maximum independent set by branch and bound (max clique in the complement,
    /// greedy-colouring bound). Returns the lexicographically smallest optimum
    /// found in vertex order.
    pub fn max_independent_set(&self) -> Vec<usize> {
        let rows = self.mask_rows();
        let all = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        // complement adjacency
        let comp: Vec<u64> = rows
            .iter()
            .enumerate()
            .map(|(v, r)| !r & all & !(1u64 << v))
            .collect();
        let mut best = 0u64;
        clique_search(&comp, 0, all, &mut best);
        (0..self.n).filter(|v| best >> v & 1 == 1).collect()
    }

    pub fn independence_number(&self) -> usize {
        self.max_independent_set().len()
    }

    /// Greedy independent set: repeatedly take a minimum-degree vertex of what remains.
    /// Always has at least `n / (Δ + 1)` vertices.
    pub fn greedy_independent_set(&self) -> Vec<usize> {
        let mut alive = vec![true; self.n];
        let mut out = Vec::new();
        loop {
            let pick = (0..self.n)
                .filter(|&v| alive[v])
                .min_by_key(|&v| self.neighbors(v).filter(|&u| alive[u]).count());
            let Some(v) = pick else { break };
            out.push(v);
            alive[v] = false;
            for u in self.neighbors(v) {
                alive[u] = false;
            }
        }
        out.sort_unstable();
        out
    }

    /// First-fit colouring in vertex order; uses at most `Δ + 1` colours.
    pub fn greedy_coloring(&self) -> Vec<usize> {
        let mut colors = vec![usize::MAX; self.n];
        for v in 0..self.n {
            let used: Vec<usize> = self
                .neighbors(v)
                .filter(|&u| colors[u] != usize::MAX)
                .map(|u| colors[u])
                .collect();
            colors[v] = (0..).find(|c| !used.contains(c)).unwrap();
        }
        colors
    }

    /// Exact chromatic number with an optimal colouring.
    pub fn chromatic_number(&self) -> (usize, Vec<usize>) {
        if self.n == 0 {
            return (0, Vec::new());
        }
        let rows = self.mask_rows();
        let greedy = self.greedy_coloring();
        let upper = greedy.iter().max().map_or(0, |c| c + 1);
        let mut clique = 0u64;
        let all = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        clique_search(&rows, 0, all, &mut clique);
        let lower = clique.count_ones() as usize;
        // colour vertices in degree-descending order
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.degree(v)));
        for k in lower.max(1)..upper {
            let mut colors = vec![usize::MAX; self.n];
            if color_backtrack(&rows, &order, 0, k, 0, &mut colors) {
                return (k, colors);
            }
        }
        (upper, greedy)
    }
}

fn clique_search(adj: &[u64], current: u64, cand: u64, best: &mut u64) {
    if cand == 0 {
        if current.count_ones() > best.count_ones() {
            *best = current;
        }
        return;
    }
    if current.count_ones() + color_bound(adj, cand) <= best.count_ones() {
        return;
    }
    let v = cand.trailing_zeros() as usize;
    let bit = 1u64 << v;
    clique_search(adj, current | bit, cand & adj[v], best);
    clique_search(adj, current, cand & !bit, best);
}

/// Number of colour classes in a greedy partition of `cand` into independent sets.
fn color_bound(adj: &[u64], mut cand: u64) -> u32 {
    let mut classes = 0;
    while cand != 0 {
        classes += 1;
        let mut avail = cand;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            let bit = 1u64 << v;
            cand &= !bit;
            avail &= !bit & !adj[v];
        }
    }
    classes
}

fn color_backtrack(
    rows: &[u64],
    order: &[usize],
    pos: usize,
    k: usize,
    used: usize,
    colors: &mut [usize],
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    // a fresh colour is interchangeable with any other unused one
    for c in 0..(used + 1).min(k) {
        let clash = (0..order.len()).any(|u| rows[v] >> u & 1 == 1 && colors[u] == c);
        if !clash {
            colors[v] = c;
            if color_backtrack(rows, order, pos + 1, k, used.max(c + 1), colors) {
                return true;
            }
            colors[v] = usize::MAX;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_alpha(g: &SimpleGraph) -> usize {
        let n = g.vertex_count();
        (0u32..(1 << n))
            .filter(|m| {
                let vs: Vec<usize> = (0..n).filter(|v| m >> v & 1 == 1).collect();
                g.is_independent(&vs)
            })
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn five_cycle_is_brooks_exception() {
        let c5 = SimpleGraph::cycle(5);
        assert_eq!(c5.independence_number(), 2);
        let (chi, colors) = c5.chromatic_number();
        assert_eq!(chi, 3);
        assert!(c5.is_proper_coloring(&colors));
        assert_eq!(c5.max_degree(), 2);
    }

    #[test]
    fn edgeless_and_complete() {
        let g = SimpleGraph::new(6);
        assert_eq!(g.independence_number(), 6);
        assert_eq!(g.chromatic_number().0, 1);
        let k4 = SimpleGraph::complete(4);
        assert_eq!(k4.independence_number(), 1);
        assert_eq!(k4.chromatic_number().0, 4);
        assert!(k4.is_clique(&[0, 1, 2, 3]));
    }

    #[test]
    fn petersen_graph() {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        let g = SimpleGraph::from_edges(10, outer.chain(spokes).chain(inner));
        assert_eq!(g.independence_number(), 4);
        assert_eq!(g.chromatic_number().0, 3);
        assert_eq!(brute_alpha(&g), 4);
    }

    #[test]
    fn components_and_greedy() {
        let g = SimpleGraph::from_edges(7, [(0, 3), (3, 5), (1, 2)]);
        assert_eq!(g.components(), vec![vec![0, 3, 5], vec![1, 2], vec![4], vec![6]]);
        let ind = g.greedy_independent_set();
        assert!(g.is_independent(&ind));
        assert!(ind.len() * (g.max_degree() + 1) >= 7);
        assert!(g.is_proper_coloring(&g.greedy_coloring()));
    }

    #[test]
    fn exact_alpha_matches_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=12);
            let mut g = SimpleGraph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.35) {
                        g.add_edge(u, v);
                    }
                }
            }
            let mis = g.max_independent_set();
            assert!(g.is_independent(&mis));
            assert_eq!(mis.len(), brute_alpha(&g));
            let (chi, colors) = g.chromatic_number();
            assert!(g.is_proper_coloring(&colors));
            assert!(chi <= g.max_degree() + 1);
        }
    }
}
