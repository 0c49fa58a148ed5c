//! ±1 Hadamard matrices: Sylvester doubling and the quadratic-residue (Paley)
//! construction for primes `q ≡ 3 (mod 4)`.

use std::fmt;

use thiserror::Error;

use crate::gf::is_prime;

/// Largest order built by default.
pub const MAX_ORDER: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HadamardError {
    #[error("UnsupportedOrder: q = {0} must be a prime with q ≡ 3 (mod 4)")]
    UnsupportedOrder(u64),
    #[error("BudgetExceeded: order {order} exceeds the cap {cap}")]
    BudgetExceeded { order: usize, cap: usize },
    #[error("NotHadamard: rows {0} and {1} are not orthogonal")]
    NotHadamard(usize, usize),
    #[error("NotHadamard: row {0} has the wrong length or a bad entry")]
    MalformedRow(usize),
    #[error("NotHadamard: order {0} is not 1, 2 or a multiple of 4")]
    BadOrder(usize),
}

/// A square ±1 matrix with `H·Hᵀ = order·I`, checked on construction.
///
/// Rows are stored as sign masks: bit `j` set means entry `j` is `−1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HadamardMatrix {
    order: usize,
    negative: Vec<Vec<u64>>,
}

impl HadamardMatrix {
    /// Validates a matrix given as `±1` rows.
    pub fn from_rows(rows: &[Vec<i8>]) -> Result<Self, HadamardError> {
        let order = rows.len();
        let words = order.div_ceil(64);
        let mut negative = Vec::with_capacity(order);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != order {
                return Err(HadamardError::MalformedRow(i));
            }
            let mut mask = vec![0u64; words];
            for (j, &x) in r.iter().enumerate() {
                match x {
                    1 => {}
                    -1 => mask[j / 64] |= 1 << (j % 64),
                    _ => return Err(HadamardError::MalformedRow(i)),
                }
            }
            negative.push(mask);
        }
        let h = HadamardMatrix { order, negative };
        h.validate()?;
        Ok(h)
    }

    fn validate(&self) -> Result<(), HadamardError> {
        let n = self.order;
        if !(n <= 2 || n % 4 == 0) {
            return Err(HadamardError::BadOrder(n));
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.dot(i, j) != 0 {
                    return Err(HadamardError::NotHadamard(i, j));
                }
            }
        }
        Ok(())
    }

    /// Integer inner product of rows `i` and `j`.
    pub fn dot(&self, i: usize, j: usize) -> i64 {
        let differ: u32 = self.negative[i]
            .iter()
            .zip(&self.negative[j])
            .map(|(a, b)| (a ^ b).count_ones())
            .sum();
        self.order as i64 - 2 * differ as i64
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i8 {
        if self.negative[i][j / 64] >> (j % 64) & 1 == 1 {
            -1
        } else {
            1
        }
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// `[[H, H], [H, −H]]`.
    pub fn doubled(&self) -> Result<Self, HadamardError> {
        let n = self.order;
        if 2 * n > MAX_ORDER {
            return Err(HadamardError::BudgetExceeded {
                order: 2 * n,
                cap: MAX_ORDER,
            });
        }
        let rows: Vec<Vec<i8>> = (0..2 * n)
            .map(|i| {
                (0..2 * n)
                    .map(|j| {
                        let x = self.get(i % n, j % n);
                        if i >= n && j >= n {
                            -x
                        } else {
                            x
                        }
                    })
                    .collect()
            })
            .collect();
        Self::from_rows(&rows)
    }

    /// Flips row signs so that the last column is all `+1`.
    pub fn normalized_last_column(&self) -> Self {
        let n = self.order;
        let mut out = self.clone();
        if n == 0 {
            return out;
        }
        for (i, row) in out.negative.iter_mut().enumerate() {
            if self.get(i, n - 1) == -1 {
                for w in row.iter_mut() {
                    *w = !*w;
                }
                let rem = n % 64;
                if rem != 0 {
                    *row.last_mut().unwrap() &= (1u64 << rem) - 1;
                }
            }
        }
        out
    }

    /// One line per row, `+` and `-` characters.
    pub fn to_sign_text(&self) -> String {
        let mut s = String::with_capacity(self.order * (self.order + 1));
        for i in 0..self.order {
            for j in 0..self.order {
                s.push(if self.get(i, j) == 1 { '+' } else { '-' });
            }
            s.push('\n');
        }
        s
    }

    /// Parses the format written by [`Self::to_sign_text`].
    pub fn from_sign_text(text: &str) -> Result<Self, HadamardError> {
        let rows: Vec<Vec<i8>> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.chars()
                    .map(|c| match c {
                        '+' => 1,
                        '-' => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        Self::from_rows(&rows)
    }
}

impl fmt::Debug for HadamardMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HadamardMatrix({})\n{}", self.order, self.to_sign_text())
    }
}

/// Order `2^power` by repeated doubling of `[[1]]`.
pub fn sylvester(power: u32) -> Result<HadamardMatrix, HadamardError> {
    if power > 12 {
        return Err(HadamardError::BudgetExceeded {
            order: 1usize.checked_shl(power).unwrap_or(usize::MAX),
            cap: MAX_ORDER,
        });
    }
    let mut h = HadamardMatrix::from_rows(&[vec![1]])?;
    for _ in 0..power {
        h = h.doubled()?;
    }
    Ok(h)
}

/// Order `q + 1` from the quadratic residues of `GF(q)`, `q` prime, `q ≡ 3 (mod 4)`.
pub fn paley(q: u64) -> Result<HadamardMatrix, HadamardError> {
    if q < 3 || q % 4 != 3 || q > u32::MAX as u64 || !is_prime(q as u32) {
        return Err(HadamardError::UnsupportedOrder(q));
    }
    let order = q as usize + 1;
    if order > MAX_ORDER {
        return Err(HadamardError::BudgetExceeded {
            order,
            cap: MAX_ORDER,
        });
    }
    let qs = q as usize;
    let mut residue = vec![false; qs];
    for x in 1..qs {
        residue[x * x % qs] = true;
    }
    let chi = |x: usize| -> i8 {
        if x == 0 {
            0
        } else if residue[x] {
            1
        } else {
            -1
        }
    };
    // H = I + [[0, 1ᵀ], [−1, Q]] with Q[i][j] = χ(j − i)
    let mut rows = vec![vec![0i8; order]; order];
    for j in 1..order {
        rows[0][j] = 1;
        rows[j][0] = -1;
    }
    for i in 0..qs {
        for j in 0..qs {
            rows[i + 1][j + 1] = chi((j + qs - i) % qs);
        }
    }
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] += 1;
    }
    HadamardMatrix::from_rows(&rows)
}
