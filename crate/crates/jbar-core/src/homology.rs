//! Chain complexes over exact rationals: the generic homology oracle.
//!
//! The census and the closed forms both assume the field-coefficient
//! Künneth law (Betti numbers of a product are the degree convolution of
//! the factors'). This module checks that law itself on honest chain
//! complexes: sparse matrices over `BigRational`, ranks by exact
//! fraction-free elimination, and the total complex of a tensor product
//! with the usual sign rule `d(x ox y) = dx ox y + (-1)^|x| x ox dy`.
//! Floating point is banned here — Betti numbers are ranks over the
//! rationals and nothing else.
//!
//! Cellular models with the right homology for the two building blocks
//! are provided ([`nodal_rational_model`], [`torus_model`]); both happen
//! to have zero differentials, so [`scrambled_complex`] exists to
//! exercise the machinery on complexes with genuinely nonzero boundary
//! maps and prescribed homology.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Default bound on the total rank of each factor in [`kunneth_check`].
pub const DEFAULT_KUNNETH_RANK_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexError {
    /// Not one differential per adjacent degree pair.
    WrongDifferentialCount { expected: usize, got: usize },
    /// A differential's shape does not match the adjacent chain groups.
    ShapeMismatch {
        degree: usize,
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
    /// `d_degree . d_{degree+1} != 0`.
    NotAComplex { degree: usize },
    /// A factor of [`kunneth_check`] exceeds the rank cap.
    RankCapExceeded { total: usize, cap: usize },
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::WrongDifferentialCount { expected, got } => {
                write!(f, "expected {expected} differentials, got {got}")
            }
            ComplexError::ShapeMismatch {
                degree,
                expected_rows,
                expected_cols,
                rows,
                cols,
            } => write!(
                f,
                "differential into degree {degree} is {rows}x{cols}, expected {expected_rows}x{expected_cols}"
            ),
            ComplexError::NotAComplex { degree } => {
                write!(f, "d.d != 0 at degree {degree}")
            }
            ComplexError::RankCapExceeded { total, cap } => {
                write!(f, "complex of total rank {total} exceeds the cap of {cap}")
            }
        }
    }
}

impl core::error::Error for ComplexError {}

/// Sparse matrix over the exact rationals. Only nonzero entries are
/// stored; equality is entrywise.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigRational>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    /// Dense integer rows, for fixtures.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zero(rows.len(), ncols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, BigRational::from_integer(BigInt::from(v)));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn set(&mut self, row: usize, col: usize, value: BigRational) {
        assert!(row < self.rows && col < self.cols, "entry out of bounds");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> BigRational {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    fn add_to(&mut self, row: usize, col: usize, value: &BigRational) {
        if value.is_zero() {
            return;
        }
        let sum = self.get(row, col) + value;
        self.set(row, col, sum);
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "composition shape mismatch");
        let mut by_row: BTreeMap<usize, Vec<(usize, &BigRational)>> = BTreeMap::new();
        for (&(r, c), v) in &other.entries {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for (&(r, j), v) in &self.entries {
            if let Some(row) = by_row.get(&j) {
                for &(c, w) in row {
                    out.add_to(r, c, &(v * w));
                }
            }
        }
        out
    }

    /// Rank over the rationals by exact Gaussian elimination with
    /// leading-column pivoting.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<BTreeMap<usize, BigRational>> = {
            let mut acc: BTreeMap<usize, BTreeMap<usize, BigRational>> = BTreeMap::new();
            for (&(r, c), v) in &self.entries {
                acc.entry(r).or_default().insert(c, v.clone());
            }
            acc.into_values().collect()
        };
        // pivot column -> reduced row with that leading column
        let mut pivots: BTreeMap<usize, BTreeMap<usize, BigRational>> = BTreeMap::new();
        for mut row in rows.drain(..) {
            while let Some((&lead, _)) = row.first_key_value() {
                let Some(pivot) = pivots.get(&lead) else {
                    break;
                };
                let factor = row[&lead].clone() / pivot[&lead].clone();
                for (col, pv) in pivot {
                    let updated =
                        row.get(col).cloned().unwrap_or_else(BigRational::zero) - &factor * pv;
                    if updated.is_zero() {
                        row.remove(col);
                    } else {
                        row.insert(*col, updated);
                    }
                }
            }
            if let Some((&lead, _)) = row.first_key_value() {
                pivots.insert(lead, row);
            }
        }
        pivots.len()
    }
}

/// A finite chain complex: chain-group ranks by degree and one exact
/// rational differential `d_{i+1}: C_{i+1} -> C_i` per adjacent pair.
/// `d . d = 0` is checked on construction, never assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    dims: Vec<usize>,
    differentials: Vec<Matrix>,
}

impl ChainComplex {
    /// `differentials[i]` maps degree `i+1` to degree `i` and must be
    /// `dims[i] x dims[i+1]`.
    pub fn new(dims: Vec<usize>, differentials: Vec<Matrix>) -> Result<Self, ComplexError> {
        let expected = dims.len().saturating_sub(1);
        if differentials.len() != expected {
            return Err(ComplexError::WrongDifferentialCount {
                expected,
                got: differentials.len(),
            });
        }
        for (i, d) in differentials.iter().enumerate() {
            if d.rows() != dims[i] || d.cols() != dims[i + 1] {
                return Err(ComplexError::ShapeMismatch {
                    degree: i,
                    expected_rows: dims[i],
                    expected_cols: dims[i + 1],
                    rows: d.rows(),
                    cols: d.cols(),
                });
            }
        }
        for i in 0..differentials.len().saturating_sub(1) {
            if !differentials[i].compose(&differentials[i + 1]).is_zero() {
                return Err(ComplexError::NotAComplex { degree: i });
            }
        }
        Ok(Self {
            dims,
            differentials,
        })
    }

    /// Complex with the given ranks and all differentials zero.
    pub fn with_zero_differentials(dims: Vec<usize>) -> Self {
        let differentials = dims
            .windows(2)
            .map(|w| Matrix::zero(w[0], w[1]))
            .collect();
        Self {
            dims,
            differentials,
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Total rank of all chain groups.
    pub fn total_rank(&self) -> usize {
        self.dims.iter().sum()
    }

    /// `d_i: C_i -> C_{i-1}`, when both degrees exist.
    pub fn differential(&self, i: usize) -> Option<&Matrix> {
        if i == 0 {
            None
        } else {
            self.differentials.get(i - 1)
        }
    }

    /// Betti numbers: `b_i = dim C_i - rank d_i - rank d_{i+1}`.
    pub fn betti(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(Matrix::rank).collect();
        (0..self.dims.len())
            .map(|i| {
                let below = if i == 0 { 0 } else { ranks[i - 1] };
                let above = ranks.get(i).copied().unwrap_or(0);
                self.dims[i] - below - above
            })
            .collect()
    }

    /// Total complex of the tensor product double complex, with the sign
    /// rule `d(x ox y) = dx ox y + (-1)^|x| x ox dy`. Summands of degree
    /// `n` are ordered by increasing degree of the left factor.
    pub fn tensor(&self, other: &Self) -> Self {
        if self.dims.is_empty() || other.dims.is_empty() {
            return Self::with_zero_differentials(Vec::new());
        }
        let top = self.dims.len() + other.dims.len() - 2;
        let summand_dim = |i: usize, j: usize| -> usize {
            self.dims.get(i).copied().unwrap_or(0) * other.dims.get(j).copied().unwrap_or(0)
        };
        // offsets[n][i] = column offset of the (i, n-i) block in degree n
        let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
        let mut dims: Vec<usize> = Vec::with_capacity(top + 1);
        for n in 0..=top {
            let mut offs = vec![0; self.dims.len()];
            let mut acc = 0;
            for (i, off) in offs.iter_mut().enumerate() {
                *off = acc;
                if n >= i {
                    acc += summand_dim(i, n - i);
                }
            }
            offsets.push(offs);
            dims.push(acc);
        }

        let mut differentials = Vec::with_capacity(top);
        for n in 1..=top {
            let mut d = Matrix::zero(dims[n - 1], dims[n]);
            for i in 0..self.dims.len() {
                let Some(j) = n.checked_sub(i) else { continue };
                if j >= other.dims.len() || summand_dim(i, j) == 0 {
                    continue;
                }
                let b_j = other.dims[j];
                let col_base = offsets[n][i];
                // left factor: d^A ox id
                if i > 0 {
                    let da = &self.differentials[i - 1];
                    let row_base = offsets[n - 1][i - 1];
                    for (&(u2, u), v) in &da.entries {
                        for y in 0..b_j {
                            d.add_to(row_base + u2 * b_j + y, col_base + u * b_j + y, v);
                        }
                    }
                }
                // right factor: (-1)^i id ox d^B
                if j > 0 {
                    let db = &other.differentials[j - 1];
                    let row_base = offsets[n - 1][i];
                    let b_prev = other.dims[j - 1];
                    for (&(y2, y), v) in &db.entries {
                        let signed = if i % 2 == 0 { v.clone() } else { -v.clone() };
                        for u in 0..self.dims[i] {
                            d.add_to(row_base + u * b_prev + y2, col_base + u * b_j + y, &signed);
                        }
                    }
                }
            }
            differentials.push(d);
        }

        Self::new(dims, differentials).expect("tensor of complexes is a complex")
    }
}

/// Degree convolution of two Betti vectors — the Künneth prediction for
/// the product's Betti numbers.
pub fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Checks the Künneth law on one pair: Betti numbers of the tensor
/// complex against the convolution of the factors' Betti numbers. Both
/// factors must have total rank at most `cap`.
pub fn kunneth_check(a: &ChainComplex, b: &ChainComplex, cap: usize) -> Result<bool, ComplexError> {
    for c in [a, b] {
        let total = c.total_rank();
        if total > cap {
            return Err(ComplexError::RankCapExceeded { total, cap });
        }
    }
    Ok(a.tensor(b).betti() == convolve(&a.betti(), &b.betti()))
}

/// Cellular model of the one-nodal rational curve: one cell in each of
/// degrees 0, 1, 2 and zero differentials (its Betti numbers are 1,1,1).
pub fn nodal_rational_model() -> ChainComplex {
    ChainComplex::with_zero_differentials(vec![1, 1, 1])
}

/// Cellular model of a `2*g0`-torus: ranks from row `2*g0` of Pascal's
/// triangle (built by repeated adjacent sums, deliberately not by the
/// closed-form binomials) and zero differentials.
pub fn torus_model(g0: u32) -> ChainComplex {
    let mut row = vec![1usize];
    for _ in 0..2 * g0 {
        let mut next = vec![1];
        for w in row.windows(2) {
            next.push(w[0] + w[1]);
        }
        next.push(1);
        row = next;
    }
    ChainComplex::with_zero_differentials(row)
}

/// A complex with prescribed homology and nonzero differentials.
///
/// Starts from a direct sum of `betti[i]` free generators per degree and
/// `pairs[j]` acyclic two-term complexes spanning degrees `j+1 -> j`,
/// then applies `moves` random elementary basis changes (each one a
/// shear on some chain group, applied consistently to the adjacent
/// differentials), which preserve both `d . d = 0` and the homology.
/// Deterministic in `seed`.
pub fn scrambled_complex(betti: &[usize], pairs: &[usize], moves: u32, seed: u64) -> ChainComplex {
    assert_eq!(
        pairs.len(),
        betti.len().saturating_sub(1),
        "need one pair count per adjacent degree pair"
    );
    let len = betti.len();
    let pairs_at = |i: usize| pairs.get(i).copied().unwrap_or(0);
    // degree i basis: [free | pair targets (i+1 -> i) | pair sources (i -> i-1)]
    let dims: Vec<usize> = (0..len)
        .map(|i| betti[i] + pairs_at(i) + if i > 0 { pairs_at(i - 1) } else { 0 })
        .collect();
    let mut differentials: Vec<Matrix> = Vec::with_capacity(len.saturating_sub(1));
    for i in 0..len.saturating_sub(1) {
        let mut d = Matrix::zero(dims[i], dims[i + 1]);
        for s in 0..pairs_at(i) {
            d.set(
                betti[i] + s,
                betti[i + 1] + pairs_at(i + 1) + s,
                BigRational::from_integer(BigInt::from(1)),
            );
        }
        differentials.push(d);
    }

    let mut rng = XorShift::new(seed);
    for _ in 0..moves {
        let m = (rng.next() % len as u64) as usize;
        if dims[m] < 2 {
            continue;
        }
        let u = (rng.next() % dims[m] as u64) as usize;
        let mut v = (rng.next() % dims[m] as u64) as usize;
        if u == v {
            v = (v + 1) % dims[m];
        }
        let lambda = BigRational::from_integer(BigInt::from((rng.next() % 5) as i64 - 2));
        if lambda.is_zero() {
            continue;
        }
        // basis change e_v += lambda * e_u on C_m
        if m > 0 {
            // columns of d_m: col v += lambda * col u
            let d = &mut differentials[m - 1];
            for r in 0..d.rows() {
                let add = &lambda * d.get(r, u);
                d.add_to(r, v, &add);
            }
        }
        if m + 1 < len {
            // rows of d_{m+1}: row u -= lambda * row v
            let d = &mut differentials[m];
            for c in 0..d.cols() {
                let sub = -(&lambda * d.get(v, c));
                d.add_to(u, c, &sub);
            }
        }
    }

    ChainComplex::new(dims, differentials).expect("elementary moves preserve d . d = 0")
}

struct XorShift(u64);

impl XorShift {
    fn new(seed: u64) -> Self {
        Self(seed ^ 0x9E37_79B9_7F4A_7C15 | 1)
    }

    fn next(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }
}
