//! Exact linear algebra over GF(ℓ), ℓ prime, tuned for 0/1 characteristic vectors.
//!
//! Over GF(2) vectors are packed 64 coordinates per word and dot products are
//! popcount parities; every other prime stores one residue per byte.
//! Subspaces are kept in reduced row echelon form, so two subspaces are equal
//! exactly when their bases are equal.

use std::fmt;

use smallvec::SmallVec;
use thiserror::Error;

use crate::bitset::BitSet;

/// Default cap on the number of vectors [`enumerate_span`] may materialize.
pub const DEFAULT_SPAN_CAP: u64 = 1 << 26;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("NotPrime: {0} is not a prime")]
    NotPrime(u32),
    #[error("UnsupportedModulus: {0} exceeds the largest supported prime (251)")]
    UnsupportedModulus(u32),
    #[error("CapExceeded: span has {size} vectors, cap is {cap}")]
    CapExceeded { size: String, cap: u64 },
    #[error("NotSubspace: basis vector {index} of U is not in V")]
    NotSubspace { index: usize },
    #[error("DegenerateAmbient: the ambient subspace is degenerate")]
    DegenerateAmbient,
    #[error("DimensionMismatch: expected length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ModulusMismatch: expected GF({expected}), found GF({found})")]
    ModulusMismatch { expected: u32, found: u32 },
    #[error("DuplicateVectors: vectors {first} and {second} are equal")]
    DuplicateVectors { first: usize, second: usize },
    #[error("NotBinary: vector {index} has a coordinate outside {{0,1}}")]
    NotBinary { index: usize },
    #[error("HypothesisFailed: (b1·b1)(bi·bj) = (b1·bi)(b1·bj) ≠ 0 fails at (i, j) = ({i}, {j})")]
    HypothesisFailed { i: usize, j: usize },
    #[error("NotInSubspace: vector {index} is not in W")]
    NotInSubspace { index: usize },
}

/// A prime ℓ (2 ≤ ℓ ≤ 251), checked by trial division.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u32);

pub fn is_prime(x: u32) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= x {
        if x % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeModulus {
    pub const TWO: PrimeModulus = PrimeModulus(2);

    pub fn new(ell: u32) -> Result<Self, GfError> {
        if !is_prime(ell) {
            return Err(GfError::NotPrime(ell));
        }
        if ell > 251 {
            return Err(GfError::UnsupportedModulus(ell));
        }
        Ok(PrimeModulus(ell))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_binary(self) -> bool {
        self.0 == 2
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        (self.0 - a % self.0) % self.0
    }

    /// Multiplicative inverse by Fermat; `a` must be non-zero.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(a % self.0 != 0);
        let p = self.0 as u64;
        let mut base = a as u64 % p;
        let mut e = p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc as u32
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `⌈log₂ x⌉` for `x ≥ 1`.
pub fn ceil_log2(x: usize) -> usize {
    assert!(x >= 1);
    (usize::BITS - (x - 1).leading_zeros()) as usize
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Coords {
    Packed(SmallVec<[u64; 2]>),
    Residues(Vec<u8>),
}

/// A vector of GF(ℓ)ⁿ with every coordinate reduced.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GfVector {
    modulus: PrimeModulus,
    len: usize,
    coords: Coords,
}

impl GfVector {
    pub fn zero(modulus: PrimeModulus, len: usize) -> Self {
        let coords = if modulus.is_binary() {
            Coords::Packed(SmallVec::from_elem(0, len.div_ceil(64)))
        } else {
            Coords::Residues(vec![0; len])
        };
        GfVector {
            modulus,
            len,
            coords,
        }
    }

    /// Reduces each entry modulo ℓ.
    pub fn from_residues<I: IntoIterator<Item = i64>>(modulus: PrimeModulus, entries: I) -> Self {
        let entries: Vec<i64> = entries.into_iter().collect();
        let mut v = Self::zero(modulus, entries.len());
        for (i, &x) in entries.iter().enumerate() {
            v.set(i, modulus.reduce(x));
        }
        v
    }

    /// Parses a 0/1 string such as `"1101"`; any other character is an error.
    pub fn from_bitstring(modulus: PrimeModulus, s: &str) -> Option<Self> {
        let mut v = Self::zero(modulus, s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, 1),
                _ => return None,
            }
        }
        Some(v)
    }

    /// The 0/1 characteristic vector of `set` in GF(ℓ)ⁿ.
    pub fn characteristic(modulus: PrimeModulus, set: &BitSet) -> Self {
        let n = set.ground();
        if modulus.is_binary() {
            GfVector {
                modulus,
                len: n,
                coords: Coords::Packed(SmallVec::from_slice(set.words())),
            }
        } else {
            let mut v = Self::zero(modulus, n);
            for e in set.elements() {
                v.set(e - 1, 1);
            }
            v
        }
    }

    /// The standard basis vector `e_i` (0-based `i`).
    pub fn unit(modulus: PrimeModulus, len: usize, i: usize) -> Self {
        let mut v = Self::zero(modulus, len);
        v.set(i, 1);
        v
    }

    #[inline]
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        debug_assert!(i < self.len);
        match &self.coords {
            Coords::Packed(w) => (w[i / 64] >> (i % 64) & 1) as u32,
            Coords::Residues(r) => r[i] as u32,
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: u32) {
        assert!(i < self.len);
        let value = value % self.modulus.get();
        match &mut self.coords {
            Coords::Packed(w) => {
                if value == 1 {
                    w[i / 64] |= 1 << (i % 64);
                } else {
                    w[i / 64] &= !(1 << (i % 64));
                }
            }
            Coords::Residues(r) => r[i] = value as u8,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn to_residues(&self) -> Vec<u32> {
        self.iter().collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.coords {
            Coords::Packed(w) => w.iter().all(|&x| x == 0),
            Coords::Residues(r) => r.iter().all(|&x| x == 0),
        }
    }

    /// Whether every coordinate is 0 or 1.
    pub fn is_01(&self) -> bool {
        match &self.coords {
            Coords::Packed(_) => true,
            Coords::Residues(r) => r.iter().all(|&x| x <= 1),
        }
    }

    /// Number of non-zero coordinates.
    pub fn weight(&self) -> usize {
        match &self.coords {
            Coords::Packed(w) => w.iter().map(|x| x.count_ones() as usize).sum(),
            Coords::Residues(r) => r.iter().filter(|&&x| x != 0).count(),
        }
    }

    /// Index of the first non-zero coordinate.
    pub fn pivot(&self) -> Option<usize> {
        match &self.coords {
            Coords::Packed(w) => w
                .iter()
                .enumerate()
                .find(|(_, &x)| x != 0)
                .map(|(i, x)| i * 64 + x.trailing_zeros() as usize),
            Coords::Residues(r) => r.iter().position(|&x| x != 0),
        }
    }

    /// Support as a subset of `[len]`.
    pub fn support(&self) -> BitSet {
        match &self.coords {
            Coords::Packed(w) => {
                let mut s = BitSet::empty(self.len);
                for i in 0..self.len {
                    if w[i / 64] >> (i % 64) & 1 == 1 {
                        s.insert(i + 1);
                    }
                }
                s
            }
            Coords::Residues(r) => {
                BitSet::from_elements(self.len, (0..self.len).filter(|&i| r[i] != 0).map(|i| i + 1))
                    .expect("support within range")
            }
        }
    }

    fn check_compatible(&self, other: &GfVector) {
        assert_eq!(self.modulus, other.modulus, "modulus mismatch");
        assert_eq!(self.len, other.len, "length mismatch");
    }

    /// Standard dot product, reduced modulo ℓ.
    pub fn dot(&self, other: &GfVector) -> u32 {
        self.check_compatible(other);
        match (&self.coords, &other.coords) {
            (Coords::Packed(a), Coords::Packed(b)) => {
                let ones: u32 = a.iter().zip(b.iter()).map(|(x, y)| (x & y).count_ones()).sum();
                ones & 1
            }
            (Coords::Residues(a), Coords::Residues(b)) => {
                let p = self.modulus.get() as u64;
                let mut acc = 0u64;
                for (&x, &y) in a.iter().zip(b.iter()) {
                    acc += x as u64 * y as u64;
                    if acc >= 1 << 62 {
                        acc %= p;
                    }
                }
                (acc % p) as u32
            }
            _ => unreachable!("representation is fixed by the modulus"),
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, c: u32, other: &GfVector) {
        self.check_compatible(other);
        let p = self.modulus.get();
        let c = c % p;
        if c == 0 {
            return;
        }
        match (&mut self.coords, &other.coords) {
            (Coords::Packed(a), Coords::Packed(b)) => {
                for (x, y) in a.iter_mut().zip(b.iter()) {
                    *x ^= *y;
                }
            }
            (Coords::Residues(a), Coords::Residues(b)) => {
                for (x, &y) in a.iter_mut().zip(b.iter()) {
                    *x = ((*x as u32 + c * y as u32) % p) as u8;
                }
            }
            _ => unreachable!("representation is fixed by the modulus"),
        }
    }

    pub fn scale(&mut self, c: u32) {
        let p = self.modulus.get();
        let c = c % p;
        match &mut self.coords {
            Coords::Packed(w) => {
                if c == 0 {
                    w.iter_mut().for_each(|x| *x = 0);
                }
            }
            Coords::Residues(r) => {
                for x in r.iter_mut() {
                    *x = ((*x as u32 * c) % p) as u8;
                }
            }
        }
    }

    pub fn scaled(&self, c: u32) -> GfVector {
        let mut v = self.clone();
        v.scale(c);
        v
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: u32, other: &GfVector, b: u32) -> GfVector {
        let mut v = self.scaled(a);
        v.add_scaled(b, other);
        v
    }

    pub fn to_bitstring(&self) -> String {
        self.iter()
            .map(|x| char::from_digit(x, 36).unwrap_or('?'))
            .collect()
    }
}

impl fmt::Debug for GfVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})[{}]", self.modulus, self.to_bitstring())
    }
}

/// An `r × c` matrix over GF(ℓ), stored by rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GfMatrix {
    modulus: PrimeModulus,
    cols: usize,
    rows: Vec<GfVector>,
}

impl GfMatrix {
    pub fn from_rows(modulus: PrimeModulus, cols: usize, rows: Vec<GfVector>) -> Result<Self, GfError> {
        for r in &rows {
            check_vector(modulus, cols, r)?;
        }
        Ok(GfMatrix {
            modulus,
            cols,
            rows,
        })
    }

    pub fn from_residue_rows(modulus: PrimeModulus, rows: &[Vec<i64>]) -> Result<Self, GfError> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| GfVector::from_residues(modulus, r.iter().copied()))
            .collect();
        Self::from_rows(modulus, cols, rows)
    }

    pub fn identity(modulus: PrimeModulus, n: usize) -> Self {
        GfMatrix {
            modulus,
            cols: n,
            rows: (0..n).map(|i| GfVector::unit(modulus, n, i)).collect(),
        }
    }

    pub fn zeros(modulus: PrimeModulus, r: usize, c: usize) -> Self {
        GfMatrix {
            modulus,
            cols: c,
            rows: (0..r).map(|_| GfVector::zero(modulus, c)).collect(),
        }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[GfVector] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.rows[i].get(j)
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut t = GfMatrix::zeros(self.modulus, self.cols, self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            for j in 0..self.cols {
                let x = row.get(j);
                if x != 0 {
                    t.rows[j].set(i, x);
                }
            }
        }
        t
    }

    /// Principal submatrix on `indices`.
    pub fn principal(&self, indices: &[usize]) -> GfMatrix {
        let rows = indices
            .iter()
            .map(|&i| {
                GfVector::from_residues(
                    self.modulus,
                    indices.iter().map(|&j| self.get(i, j) as i64),
                )
            })
            .collect();
        GfMatrix {
            modulus: self.modulus,
            cols: indices.len(),
            rows,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.nrows() == self.cols
            && (0..self.cols).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

fn check_vector(modulus: PrimeModulus, len: usize, v: &GfVector) -> Result<(), GfError> {
    if v.modulus() != modulus {
        return Err(GfError::ModulusMismatch {
            expected: modulus.get(),
            found: v.modulus().get(),
        });
    }
    if v.len() != len {
        return Err(GfError::DimensionMismatch {
            expected: len,
            found: v.len(),
        });
    }
    Ok(())
}

/// A subspace of GF(ℓ)ⁿ held as a reduced row echelon basis.
///
/// Basis rows are sorted by pivot, each pivot entry is 1 and every other row
/// is zero in that column. The representation is unique per subspace.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    modulus: PrimeModulus,
    ambient_dim: usize,
    basis: Vec<GfVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(modulus: PrimeModulus, ambient_dim: usize) -> Self {
        Subspace {
            modulus,
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(modulus: PrimeModulus, ambient_dim: usize) -> Self {
        Subspace {
            modulus,
            ambient_dim,
            basis: (0..ambient_dim)
                .map(|i| GfVector::unit(modulus, ambient_dim, i))
                .collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of `vectors`.
    pub fn span<'a, I>(modulus: PrimeModulus, ambient_dim: usize, vectors: I) -> Result<Self, GfError>
    where
        I: IntoIterator<Item = &'a GfVector>,
    {
        let mut s = Self::zero(modulus, ambient_dim);
        for v in vectors {
            check_vector(modulus, ambient_dim, v)?;
            s.insert(v.clone());
        }
        Ok(s)
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[GfVector] {
        &self.basis
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Reduces `v` against the basis in place; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &mut GfVector) {
        for (row, &p) in self.basis.iter().zip(self.pivots.iter()) {
            let c = v.get(p);
            if c != 0 {
                v.add_scaled(self.modulus.neg(c), row);
            }
        }
    }

    pub fn contains(&self, v: &GfVector) -> bool {
        if v.modulus() != self.modulus || v.len() != self.ambient_dim {
            return false;
        }
        let mut r = v.clone();
        self.reduce(&mut r);
        r.is_zero()
    }

    /// Adds `v` to the spanning set. Returns `true` if the dimension grew.
    pub fn insert(&mut self, mut v: GfVector) -> bool {
        debug_assert_eq!(v.len(), self.ambient_dim);
        self.reduce(&mut v);
        let Some(p) = v.pivot() else {
            return false;
        };
        let lead = v.get(p);
        if lead != 1 {
            v.scale(self.modulus.inv(lead));
        }
        for row in self.basis.iter_mut() {
            let c = row.get(p);
            if c != 0 {
                row.add_scaled(self.modulus.neg(c), &v);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, v);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// Number of vectors in the subspace, or `None` if it overflows `u64`.
    pub fn size(&self) -> Option<u64> {
        (self.modulus.get() as u64).checked_pow(self.dim() as u32)
    }
}

/// GF(ℓ) rank by exact elimination. The input is not modified.
pub fn rank(m: &GfMatrix) -> usize {
    row_space(m).dim()
}

/// Canonical echelon basis of the row space of `m`.
pub fn row_space(m: &GfMatrix) -> Subspace {
    let mut s = Subspace::zero(m.modulus(), m.ncols());
    for r in m.rows() {
        s.insert(r.clone());
    }
    s
}

/// All `ℓ^dim` vectors of `s`, each once, in modular Gray-code order over the
/// basis coefficients: consecutive outputs differ by adding one basis vector.
pub fn enumerate_span(s: &Subspace, cap: u64) -> Result<Vec<GfVector>, GfError> {
    let size = match s.size() {
        Some(size) if size <= cap => size,
        other => {
            return Err(GfError::CapExceeded {
                size: other.map_or_else(
                    || format!("{}^{}", s.modulus().get(), s.dim()),
                    |x| x.to_string(),
                ),
                cap,
            })
        }
    };
    let ell = s.modulus().get() as u64;
    let mut out = Vec::with_capacity(size as usize);
    let mut cur = GfVector::zero(s.modulus(), s.ambient_dim());
    out.push(cur.clone());
    for c in 1..size {
        // digit that changes is the lowest non-zero base-ℓ digit of the counter
        let mut x = c;
        let mut digit = 0;
        while x % ell == 0 {
            x /= ell;
            digit += 1;
        }
        cur.add_scaled(1, &s.basis()[digit]);
        out.push(cur.clone());
    }
    Ok(out)
}

/// Basis (in echelon form) of `{c : rows · c = 0}`.
pub fn null_space(modulus: PrimeModulus, ncols: usize, rows: &[GfVector]) -> Result<Subspace, GfError> {
    let rs = Subspace::span(modulus, ncols, rows)?;
    let mut out = Subspace::zero(modulus, ncols);
    let pivots = rs.pivots();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = GfVector::unit(modulus, ncols, free);
        for (row, &p) in rs.basis().iter().zip(pivots) {
            let x = row.get(free);
            if x != 0 {
                v.set(p, modulus.neg(x));
            }
        }
        out.insert(v);
    }
    Ok(out)
}

/// Matrix of pairwise dot products.
pub fn gram(modulus: PrimeModulus, vectors: &[GfVector]) -> Result<GfMatrix, GfError> {
    let t = vectors.len();
    if let Some(first) = vectors.first() {
        for v in vectors {
            check_vector(modulus, first.len(), v)?;
        }
    }
    let mut g = GfMatrix::zeros(modulus, t, t);
    for i in 0..t {
        for j in i..t {
            let x = vectors[i].dot(&vectors[j]);
            if x != 0 {
                g.rows[i].set(j, x);
                g.rows[j].set(i, x);
            }
        }
    }
    Ok(g)
}

/// Whether the dot product restricted to `s` has trivial radical.
pub fn is_nondegenerate(s: &Subspace) -> bool {
    let g = gram(s.modulus(), s.basis()).expect("basis vectors share ambient space");
    rank(&g) == s.dim()
}

/// `U^⊥ = {x ∈ V : x·u = 0 for all u ∈ U}`.
pub fn orthogonal_complement_in(v: &Subspace, u: &Subspace) -> Result<Subspace, GfError> {
    if u.modulus() != v.modulus() {
        return Err(GfError::ModulusMismatch {
            expected: v.modulus().get(),
            found: u.modulus().get(),
        });
    }
    if u.ambient_dim() != v.ambient_dim() {
        return Err(GfError::DimensionMismatch {
            expected: v.ambient_dim(),
            found: u.ambient_dim(),
        });
    }
    if let Some(index) = u.basis().iter().position(|b| !v.contains(b)) {
        return Err(GfError::NotSubspace { index });
    }
    if !is_nondegenerate(v) {
        return Err(GfError::DegenerateAmbient);
    }
    let modulus = v.modulus();
    // coefficients c over V's basis with (Σ c_j v_j)·u_i = 0
    let constraints: Vec<GfVector> = u
        .basis()
        .iter()
        .map(|ui| GfVector::from_residues(modulus, v.basis().iter().map(|vj| vj.dot(ui) as i64)))
        .collect();
    let kernel = null_space(modulus, v.dim(), &constraints)?;
    let mut out = Subspace::zero(modulus, v.ambient_dim());
    for coeffs in kernel.basis() {
        let mut x = GfVector::zero(modulus, v.ambient_dim());
        for (j, vj) in v.basis().iter().enumerate() {
            x.add_scaled(coeffs.get(j), vj);
        }
        out.insert(x);
    }
    Ok(out)
}

fn check_distinct_01(vectors: &[GfVector]) -> Result<(), GfError> {
    if let Some(index) = vectors.iter().position(|v| !v.is_01()) {
        return Err(GfError::NotBinary { index });
    }
    let mut order: Vec<usize> = (0..vectors.len()).collect();
    order.sort_by_key(|&i| vectors[i].to_residues());
    for w in order.windows(2) {
        if vectors[w[0]] == vectors[w[1]] {
            let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
            return Err(GfError::DuplicateVectors { first, second });
        }
    }
    Ok(())
}

/// Indices of a linearly independent subset of distinct 0/1 vectors, chosen greedily
/// in input order. Its size is the rank of the whole collection, hence at least `⌈log₂ t⌉`.
pub fn independent_01_subset(vectors: &[GfVector]) -> Result<Vec<usize>, GfError> {
    let Some(first) = vectors.first() else {
        return Ok(Vec::new());
    };
    let modulus = first.modulus();
    let len = first.len();
    for v in vectors {
        check_vector(modulus, len, v)?;
    }
    check_distinct_01(vectors)?;
    let mut basis = Subspace::zero(modulus, len);
    Ok(vectors
        .iter()
        .enumerate()
        .filter(|(_, v)| basis.insert((*v).clone()))
        .map(|(i, _)| i)
        .collect())
}

/// Outcome of checking the dimension chain on a concrete instance.
#[derive(Debug, Clone)]
pub struct DimensionChainReport {
    pub t: usize,
    pub dim_w: usize,
    pub dim_b: usize,
    pub dim_c: usize,
    /// `2⌈log₂(t+1)⌉ − 1`.
    pub bound: usize,
    /// `2⌈log₂ t⌉ + 1`, only reported over GF(2).
    pub binary_bound: Option<usize>,
    /// `c_i = (b₁·b₁)b_i − (b₁·b_i)b₁`.
    pub witnesses: Vec<GfVector>,
}

impl DimensionChainReport {
    pub fn bound_holds(&self) -> bool {
        self.dim_w >= self.bound
    }

    /// `dim C = dim B − 1` and `dim W ≥ dim B + dim C`.
    pub fn chain_holds(&self) -> bool {
        self.dim_c + 1 == self.dim_b && self.dim_w >= self.dim_b + self.dim_c
    }

    pub fn binary_bound_holds(&self) -> Option<bool> {
        self.binary_bound.map(|b| self.dim_w >= b)
    }
}

/// Checks the hypothesis `(b₁·b₁)(b_i·b_j) = (b₁·b_i)(b₁·b_j) ≠ 0` for distinct 0/1
/// vectors `b` inside a non-degenerate `w`, then measures the dimension chain
/// `dim W ≥ dim B + dim C = 2 dim B − 1`.
pub fn check_dimension_chain(b: &[GfVector], w: &Subspace) -> Result<DimensionChainReport, GfError> {
    let modulus = w.modulus();
    for v in b {
        check_vector(modulus, w.ambient_dim(), v)?;
    }
    check_distinct_01(b)?;
    if let Some(index) = b.iter().position(|v| !w.contains(v)) {
        return Err(GfError::NotInSubspace { index });
    }
    if !is_nondegenerate(w) {
        return Err(GfError::DegenerateAmbient);
    }
    let t = b.len();
    if t > 0 {
        let b11 = b[0].dot(&b[0]);
        let first: Vec<u32> = b.iter().map(|x| b[0].dot(x)).collect();
        for i in 0..t {
            for j in i..t {
                let lhs = modulus.mul(b11, b[i].dot(&b[j]));
                let rhs = modulus.mul(first[i], first[j]);
                if lhs != rhs || lhs == 0 {
                    return Err(GfError::HypothesisFailed { i, j });
                }
            }
        }
    }
    let witnesses: Vec<GfVector> = if t == 0 {
        Vec::new()
    } else {
        let b11 = b[0].dot(&b[0]);
        b.iter()
            .map(|bi| bi.combine(b11, &b[0], modulus.neg(b[0].dot(bi))))
            .collect()
    };
    let n = w.ambient_dim();
    let dim_b = Subspace::span(modulus, n, b)?.dim();
    let dim_c = Subspace::span(modulus, n, &witnesses)?.dim();
    Ok(DimensionChainReport {
        t,
        dim_w: w.dim(),
        dim_b,
        dim_c,
        bound: if t == 0 { 0 } else { 2 * ceil_log2(t + 1) - 1 },
        binary_bound: (modulus.is_binary() && t > 0).then(|| 2 * ceil_log2(t) + 1),
        witnesses,
    })
}
