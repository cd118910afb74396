//! Sparse dimension tables for mixed Hodge structures, and the tensor
//! algebra on them.
//!
//! A [`MixedHodgeTable`] records, for finitely many [`HodgePiece`] slots
//! `(degree i, weight w, type (p, q))`, the dimension of the corresponding
//! graded piece `gr_F^p gr_Fbar^q gr_w^W H^i`. Tables here only ever hold
//! dimensions, not filtrations as subspaces: every space this crate cares
//! about is a direct sum of pure pieces, so dimension bookkeeping is
//! lossless.
//!
//! The two building blocks are [`MixedHodgeTable::jacobian`] (the pure
//! cohomology of a `g0`-dimensional Jacobian, an exterior algebra on
//! `2*g0` degree-one generators) and [`MixedHodgeTable::nodal_rational`]
//! (the one-nodal rational curve, whose `H^2` is pure of weight 2 and type
//! `(1,1)` while `H^0` and `H^1` sit in weight 0 and type `(0,0)`).
//! [`MixedHodgeTable::compactified_jacobian`] combines them with the
//! Künneth tensor product, under which degrees, weights and Hodge types
//! all add.
//!
//! Multiplicities are `BigUint`: equality of tables is the verification
//! primitive of this crate, so overflow is not an acceptable failure mode.
//! Tables are kept in canonical sparse form (no explicit zeros) and
//! compare equal iff their supports and multiplicities agree; the
//! free-form `label` is ignored by `==`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// One graded slot of a mixed Hodge table: cohomological degree,
/// weight, and Hodge type.
///
/// Invariant: `hodge_p + hodge_q == weight`. The weight is stored
/// explicitly even though it is determined by the type; the redundancy
/// makes every constructed entry carry its own consistency check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HodgePiece {
    degree: u32,
    weight: u32,
    hodge_p: u32,
    hodge_q: u32,
}

impl HodgePiece {
    /// Checked constructor; rejects slots off the weight antidiagonal.
    pub fn new(degree: u32, weight: u32, hodge_p: u32, hodge_q: u32) -> Result<Self, TableError> {
        if hodge_p + hodge_q != weight {
            return Err(TableError::OffAntidiagonal {
                degree,
                weight,
                hodge_p,
                hodge_q,
            });
        }
        Ok(Self {
            degree,
            weight,
            hodge_p,
            hodge_q,
        })
    }

    /// Slot of degree `degree` and type `(p, q)`, with the weight derived
    /// as `p + q`.
    pub fn of_type(degree: u32, hodge_p: u32, hodge_q: u32) -> Self {
        Self {
            degree,
            weight: hodge_p + hodge_q,
            hodge_p,
            hodge_q,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn hodge_p(&self) -> u32 {
        self.hodge_p
    }

    pub fn hodge_q(&self) -> u32 {
        self.hodge_q
    }

    /// The slot with `p` and `q` swapped (complex conjugation).
    pub fn conjugate(&self) -> Self {
        Self {
            degree: self.degree,
            weight: self.weight,
            hodge_p: self.hodge_q,
            hodge_q: self.hodge_p,
        }
    }

    fn tensor(&self, other: &Self) -> Self {
        // p + q = w is additive, so the invariant holds by construction.
        Self {
            degree: self.degree + other.degree,
            weight: self.weight + other.weight,
            hodge_p: self.hodge_p + other.hodge_p,
            hodge_q: self.hodge_q + other.hodge_q,
        }
    }
}

impl fmt::Display for HodgePiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(i={}, w={}, p={}, q={})",
            self.degree, self.weight, self.hodge_p, self.hodge_q
        )
    }
}

/// Errors from table construction and twisting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TableError {
    /// `hodge_p + hodge_q != weight`.
    OffAntidiagonal {
        degree: u32,
        weight: u32,
        hodge_p: u32,
        hodge_q: u32,
    },
    /// A Tate twist would drive `p` or `q` of a supported piece negative.
    IneffectiveTwist { piece: HodgePiece, twist: i64 },
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableError::OffAntidiagonal {
                degree,
                weight,
                hodge_p,
                hodge_q,
            } => write!(
                f,
                "piece (i={degree}, w={weight}, p={hodge_p}, q={hodge_q}) violates p + q = w"
            ),
            TableError::IneffectiveTwist { piece, twist } => write!(
                f,
                "twist by Q({twist}) maps supported piece {piece} off the effective cone"
            ),
        }
    }
}

impl core::error::Error for TableError {}

/// Finitely supported map from [`HodgePiece`] to arbitrary-precision
/// multiplicity. The central value type of the crate.
#[derive(Debug, Clone, Default)]
pub struct MixedHodgeTable {
    pieces: BTreeMap<HodgePiece, BigUint>,
    label: String,
}

impl PartialEq for MixedHodgeTable {
    /// Support-wise equality; the label is metadata and does not count.
    fn eq(&self, other: &Self) -> bool {
        self.pieces == other.pieces
    }
}

impl Eq for MixedHodgeTable {}

impl MixedHodgeTable {
    /// The empty table (zero cohomology).
    pub fn empty() -> Self {
        Self::default()
    }

    /// Cohomology of a point: one slot `(0,0,0,0)` of multiplicity one.
    /// The unit of [`tensor`](Self::tensor).
    pub fn unit() -> Self {
        let mut pieces = BTreeMap::new();
        pieces.insert(HodgePiece::of_type(0, 0, 0), BigUint::one());
        Self {
            pieces,
            label: String::from("point"),
        }
    }

    /// Cohomology of a `g0`-dimensional Jacobian (complex torus).
    ///
    /// `H^t` is pure of weight `t` with Hodge numbers
    /// `h^{r,s} = C(g0,r) * C(g0,s)` for `r + s = t`, so the Betti numbers
    /// are `C(2*g0, t)`. The exterior algebra on `g0` holomorphic and `g0`
    /// antiholomorphic degree-one generators realises exactly these
    /// dimensions.
    pub fn jacobian(g0: u32) -> Self {
        let row = pascal_row(g0);
        let mut pieces = BTreeMap::new();
        for r in 0..=g0 {
            for s in 0..=g0 {
                pieces.insert(HodgePiece::of_type(r + s, r, s), &row[r as usize] * &row[s as usize]);
            }
        }
        Self {
            pieces,
            label: alloc::format!("jacobian g0={g0}"),
        }
    }

    /// Cohomology of the one-nodal rational curve: `H^0` and `H^1` of
    /// weight 0 and type `(0,0)`, `H^2` pure of weight 2 and type `(1,1)`.
    pub fn nodal_rational() -> Self {
        let mut pieces = BTreeMap::new();
        pieces.insert(HodgePiece::of_type(0, 0, 0), BigUint::one());
        pieces.insert(
            HodgePiece {
                degree: 1,
                weight: 0,
                hodge_p: 0,
                hodge_q: 0,
            },
            BigUint::one(),
        );
        pieces.insert(HodgePiece::of_type(2, 1, 1), BigUint::one());
        Self {
            pieces,
            label: String::from("nodal rational curve"),
        }
    }

    /// Structural route to the cohomology of the compactified Jacobian of
    /// an irreducible curve with `k` nodes and normalisation of genus
    /// `g0`: the Künneth product of [`jacobian`](Self::jacobian)`(g0)`
    /// with `k` copies of [`nodal_rational`](Self::nodal_rational).
    pub fn compactified_jacobian(g0: u32, k: u32) -> Self {
        let table = Self::jacobian(g0).tensor(&Self::nodal_rational().power(k));
        table.with_label(alloc::format!("compactified jacobian g0={g0} k={k}"))
    }

    /// Builds a table from raw `(piece, multiplicity)` pairs, summing
    /// duplicates and dropping zeros.
    pub fn from_pieces<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (HodgePiece, BigUint)>,
    {
        let mut pieces: BTreeMap<HodgePiece, BigUint> = BTreeMap::new();
        for (piece, mult) in pairs {
            if !mult.is_zero() {
                *pieces.entry(piece).or_default() += mult;
            }
        }
        Self {
            pieces,
            label: String::new(),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn iter(&self) -> impl Iterator<Item = (&HodgePiece, &BigUint)> {
        self.pieces.iter()
    }

    /// Number of supported pieces.
    pub fn support_len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Multiplicity at a slot; zero off the support.
    pub fn multiplicity(&self, piece: &HodgePiece) -> BigUint {
        self.pieces.get(piece).cloned().unwrap_or_default()
    }

    /// Largest supported cohomological degree, if any.
    pub fn max_degree(&self) -> Option<u32> {
        self.pieces.keys().map(|p| p.degree).max()
    }

    /// Pointwise sum of multiplicities.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut pieces = self.pieces.clone();
        for (piece, mult) in &other.pieces {
            *pieces.entry(*piece).or_default() += mult;
        }
        Self {
            pieces,
            label: String::new(),
        }
    }

    /// Künneth tensor product: degrees, weights and Hodge types add, and
    /// the multiplicity of a slot is the sum over all splittings of the
    /// products of the factor multiplicities.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut pieces: BTreeMap<HodgePiece, BigUint> = BTreeMap::new();
        for (pa, ma) in &self.pieces {
            for (pb, mb) in &other.pieces {
                *pieces.entry(pa.tensor(pb)).or_default() += ma * mb;
            }
        }
        Self {
            pieces,
            label: String::new(),
        }
    }

    /// `k`-fold tensor power; the empty power is [`unit`](Self::unit).
    pub fn power(&self, k: u32) -> Self {
        let mut acc = Self::unit();
        for _ in 0..k {
            acc = acc.tensor(self);
        }
        acc
    }

    /// Betti number: total dimension in degree `i`. Zero off the support
    /// (in particular for negative `i`).
    pub fn betti(&self, i: i64) -> BigUint {
        self.pieces
            .iter()
            .filter(|(p, _)| i64::from(p.degree) == i)
            .map(|(_, m)| m)
            .sum()
    }

    /// Dimension of the weight-`l` graded quotient of `H^i`.
    pub fn weight_dim(&self, i: i64, l: i64) -> BigUint {
        self.pieces
            .iter()
            .filter(|(p, _)| i64::from(p.degree) == i && i64::from(p.weight) == l)
            .map(|(_, m)| m)
            .sum()
    }

    /// Mixed Hodge number: multiplicity at `(i, p+q, p, q)`.
    pub fn hodge_number(&self, i: i64, p: i64, q: i64) -> BigUint {
        let (Ok(degree), Ok(hodge_p), Ok(hodge_q)) =
            (u32::try_from(i), u32::try_from(p), u32::try_from(q))
        else {
            return BigUint::zero();
        };
        self.multiplicity(&HodgePiece::of_type(degree, hodge_p, hodge_q))
    }

    /// Twist by the Tate structure `Q(m)`: each slot `(i, w, p, q)` moves
    /// to `(i, w - 2m, p - m, q - m)`. Only effective results are
    /// representable, so a twist that would drive `p` or `q` of a
    /// supported piece negative is rejected.
    pub fn tate_twist(&self, m: i64) -> Result<Self, TableError> {
        let mut pieces = BTreeMap::new();
        for (piece, mult) in &self.pieces {
            let p = i64::from(piece.hodge_p) - m;
            let q = i64::from(piece.hodge_q) - m;
            if p < 0 || q < 0 {
                return Err(TableError::IneffectiveTwist {
                    piece: *piece,
                    twist: m,
                });
            }
            pieces.insert(
                HodgePiece::of_type(piece.degree, p as u32, q as u32),
                mult.clone(),
            );
        }
        Ok(Self {
            pieces,
            label: String::new(),
        })
    }

    /// Betti numbers as a coefficient vector indexed by degree, trailing
    /// zeros trimmed. Empty for the empty table.
    pub fn poincare_polynomial(&self) -> Vec<BigUint> {
        let Some(top) = self.max_degree() else {
            return Vec::new();
        };
        let mut coeffs = vec![BigUint::zero(); top as usize + 1];
        for (piece, mult) in &self.pieces {
            coeffs[piece.degree as usize] += mult;
        }
        coeffs
    }

    /// Hodge–Deligne E-polynomial coefficients: at each type `(p, q)`
    /// occurring in the support, the signed sum over degrees
    /// `sum_i (-1)^i dim(i, p+q, p, q)`. Types whose signed sum cancels
    /// to zero are kept, so the domain is exactly the set of types seen
    /// in the table.
    pub fn e_polynomial(&self) -> BTreeMap<(u32, u32), BigInt> {
        let mut coeffs: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (piece, mult) in &self.pieces {
            let signed = if piece.degree % 2 == 0 {
                BigInt::from(mult.clone())
            } else {
                -BigInt::from(mult.clone())
            };
            *coeffs.entry((piece.hodge_p, piece.hodge_q)).or_default() += signed;
        }
        coeffs
    }

    /// Total dimension over all degrees.
    pub fn total_dimension(&self) -> BigUint {
        self.pieces.values().sum()
    }

    /// Signed sum of Betti numbers.
    pub fn euler_characteristic(&self) -> BigInt {
        self.pieces
            .iter()
            .map(|(p, m)| {
                if p.degree % 2 == 0 {
                    BigInt::from(m.clone())
                } else {
                    -BigInt::from(m.clone())
                }
            })
            .sum()
    }

    /// Whether every slot `(i, w, p, q)` has the same multiplicity as its
    /// conjugate `(i, w, q, p)`. True for every table built by the
    /// constructors above; not enforced on arbitrary tables.
    pub fn is_conjugation_symmetric(&self) -> bool {
        self.pieces
            .iter()
            .all(|(piece, mult)| self.multiplicity(&piece.conjugate()) == *mult)
    }
}

/// Row `n` of Pascal's triangle, by repeated adjacent sums.
fn pascal_row(n: u32) -> Vec<BigUint> {
    let mut row = vec![BigUint::one()];
    for _ in 0..n {
        let mut next = vec![BigUint::one()];
        for w in row.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigUint::one());
        row = next;
    }
    row
}
