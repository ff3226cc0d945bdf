//! Cartan data for the classical series and the weight form `(λ, λ+2ρ)`.
//!
//! Simple roots are ordered as in Humphreys' table: `B_r` has its short root
//! last, `C_r` its long root last, and in `D_r` the node `r-2` branches to
//! `r-1` and `r`. The Cartan matrix is `a_ij = 2(α_i,α_j)/(α_j,α_j)`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalars::{rational, BigRational, PhasedPower};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
        }
    }

    pub fn min_rank(self) -> usize {
        match self {
            Series::A => 1,
            Series::B | Series::C => 2,
            Series::D => 4,
        }
    }

    pub fn parse(s: &str) -> Option<Series> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Some(Series::A),
            "B" => Some(Series::B),
            "C" => Some(Series::C),
            "D" => Some(Series::D),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LieType {
    pub series: Series,
    pub rank: usize,
}

impl LieType {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        if rank < series.min_rank() {
            return Err(Error::InvalidRank {
                series: series.letter(),
                rank,
            });
        }
        Ok(Self { series, rank })
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DominantWeight {
    coords: Vec<u32>,
}

impl DominantWeight {
    pub fn new(coords: Vec<u32>) -> Self {
        Self { coords }
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![0; rank])
    }

    /// The fundamental weight `λ_i`, 1-based.
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut coords = vec![0; rank];
        coords[i - 1] = 1;
        Self::new(coords)
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn height(&self) -> u32 {
        self.coords.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&m| m == 0)
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    lie_type: LieType,
    cartan: Vec<Vec<i64>>,
    symmetrizers: Vec<i64>,
    inverse_transpose: Matrix<BigRational>,
    gram: Matrix<BigRational>,
    /// `gram = gram_scaled / gram_denominator`, for fast integer sweeps.
    gram_scaled: Vec<Vec<i64>>,
    gram_denominator: i64,
}

pub fn cartan_matrix(t: LieType) -> Vec<Vec<i64>> {
    let r = t.rank;
    let mut a = vec![vec![0i64; r]; r];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain_end = if t.series == Series::D { r - 1 } else { r };
    for i in 0..chain_end.saturating_sub(1) {
        a[i][i + 1] = -1;
        a[i + 1][i] = -1;
    }
    match t.series {
        Series::A => {}
        Series::B => a[r - 2][r - 1] = -2,
        Series::C => a[r - 1][r - 2] = -2,
        Series::D => {
            a[r - 3][r - 1] = -1;
            a[r - 1][r - 3] = -1;
        }
    }
    a
}

pub fn symmetrizers(t: LieType) -> Vec<i64> {
    let r = t.rank;
    match t.series {
        Series::A | Series::D => vec![1; r],
        Series::B => (0..r).map(|i| if i + 1 == r { 1 } else { 2 }).collect(),
        Series::C => (0..r).map(|i| if i + 1 == r { 2 } else { 1 }).collect(),
    }
}

pub fn root_datum(t: LieType) -> Result<RootDatum> {
    let t = LieType::new(t.series, t.rank)?;
    let r = t.rank;
    let cartan = cartan_matrix(t);
    let d = symmetrizers(t);
    let at = Matrix::from_fn(r, r, |i, j| rational(cartan[j][i], 1));
    let inverse_transpose = linalg::inverse(&at).ok_or_else(|| Error::Inconsistent {
        module: "lie_data",
        detail: format!("Cartan matrix of {t} is singular"),
    })?;
    // (λ_i, λ_j) = d_i ((Aᵀ)^{-1})_{ij}
    let gram = Matrix::from_fn(r, r, |i, j| {
        inverse_transpose[(i, j)].clone() * rational(d[i], 1)
    });
    let denominator = (0..r)
        .flat_map(|i| (0..r).map(move |j| (i, j)))
        .fold(BigRational::one().denom().clone(), |acc, (i, j)| {
            acc.lcm(gram[(i, j)].denom())
        });
    let gram_denominator: i64 = denominator.try_into().map_err(|_| Error::Inconsistent {
        module: "lie_data",
        detail: "Gram denominator overflows".into(),
    })?;
    let scale = BigRational::from_integer(gram_denominator.into());
    let gram_scaled = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let v = &gram[(i, j)] * &scale;
                    i64::try_from(v.to_integer()).expect("scaled Gram entry fits in i64")
                })
                .collect()
        })
        .collect();
    Ok(RootDatum {
        lie_type: t,
        cartan,
        symmetrizers: d,
        inverse_transpose,
        gram,
        gram_scaled,
        gram_denominator,
    })
}

impl RootDatum {
    pub fn lie_type(&self) -> LieType {
        self.lie_type
    }

    pub fn rank(&self) -> usize {
        self.lie_type.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetrizers(&self) -> &[i64] {
        &self.symmetrizers
    }

    pub fn inverse_transpose(&self) -> &Matrix<BigRational> {
        &self.inverse_transpose
    }

    pub fn fundamental_gram(&self) -> &Matrix<BigRational> {
        &self.gram
    }

    fn check(&self, w: &DominantWeight) -> Result<()> {
        if w.coords.len() != self.rank() {
            return Err(Error::InvalidWeight {
                expected: self.rank(),
                got: w.coords.len(),
            });
        }
        Ok(())
    }

    /// `(λ, λ+2ρ)` scaled by the Gram denominator, in integers.
    pub fn casimir_scaled(&self, w: &DominantWeight) -> Result<(i128, i64)> {
        self.check(w)?;
        let mut acc: i128 = 0;
        for (i, &mi) in w.coords.iter().enumerate() {
            if mi == 0 {
                continue;
            }
            for (j, &mj) in w.coords.iter().enumerate() {
                acc += mi as i128 * (mj as i128 + 2) * self.gram_scaled[i][j] as i128;
            }
        }
        Ok((acc, self.gram_denominator))
    }
}

/// `(λ, λ+2ρ) = Σ_{i,j} m_i (m_j + 2) (λ_i, λ_j)`.
pub fn casimir_exponent(rd: &RootDatum, w: &DominantWeight) -> Result<BigRational> {
    let (num, den) = rd.casimir_scaled(w)?;
    Ok(BigRational::new(num.into(), den.into()))
}

/// Modulus of κ on the irreducible with highest weight `w`, as `|μ|^{(λ,λ+2ρ)}`.
///
/// Only the modulus is fixed by the weight; the phase depends on the choice
/// of ω and is left trivial here.
pub fn kappa_modulus(rd: &RootDatum, w: &DominantWeight) -> Result<PhasedPower> {
    Ok(PhasedPower::modulus(casimir_exponent(rd, w)?))
}

/// All weights of the given rank with height at most `height_bound`, in
/// lexicographic order of coordinates.
pub fn enumerate_dominant(rank: usize, height_bound: u32) -> Vec<DominantWeight> {
    fn go(prefix: &mut Vec<u32>, rank: usize, left: u32, out: &mut Vec<DominantWeight>) {
        if prefix.len() == rank {
            out.push(DominantWeight::new(prefix.clone()));
            return;
        }
        for m in 0..=left {
            prefix.push(m);
            go(prefix, rank, left - m, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(rank), rank, height_bound, &mut out);
    out
}

/// `i(d-i)(d+1)/d`, the weight form of `λ_i` in `A_{d-1}`.
pub fn type_a_fundamental_exponent(d: usize, i: usize) -> BigRational {
    rational((i * (d - i) * (d + 1)) as i64, d as i64)
}

/// Partitions of `n` with at most `max_parts` parts, in reverse lexicographic order.
pub fn partitions(n: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn go(
        n: usize,
        max_part: usize,
        parts_left: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        if parts_left == 0 {
            return;
        }
        for p in (1..=max_part.min(n)).rev() {
            prefix.push(p);
            go(n - p, p, parts_left - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Fundamental coordinates of the `A_{d-1}` weight with Young diagram `shape`.
pub fn partition_to_weight(shape: &[usize], d: usize) -> DominantWeight {
    let part = |i: usize| shape.get(i).copied().unwrap_or(0);
    DominantWeight::new((0..d - 1).map(|i| (part(i) - part(i + 1)) as u32).collect())
}

/// Dimension of the `GL(d)` irreducible with diagram `shape` (hook-content formula).
pub fn gl_dimension(shape: &[usize], d: usize) -> u128 {
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for (i, &row) in shape.iter().enumerate() {
        for j in 0..row {
            num *= (d + j - i) as u128;
            den *= hook_length(shape, i, j) as u128;
        }
    }
    num / den
}

/// Number of standard Young tableaux of `shape` (hook-length formula).
pub fn standard_tableaux(shape: &[usize]) -> u128 {
    let n: usize = shape.iter().sum();
    let value: u128 = (1..=n as u128).product();
    let hooks: u128 = shape
        .iter()
        .enumerate()
        .flat_map(|(i, &row)| (0..row).map(move |j| (i, j)))
        .map(|(i, j)| hook_length(shape, i, j) as u128)
        .product();
    value / hooks
}

fn hook_length(shape: &[usize], i: usize, j: usize) -> usize {
    let arm = shape[i] - j - 1;
    let leg = shape[i + 1..].iter().filter(|&&r| r > j).count();
    arm + leg + 1
}

/// Whether `m` is symmetric positive definite, by exact elimination without pivoting.
pub fn is_symmetric_positive_definite(m: &Matrix<BigRational>) -> bool {
    if m.transpose() != *m {
        return false;
    }
    let n = m.rows();
    let mut work = m.clone();
    for k in 0..n {
        let pivot = work[(k, k)].clone();
        if pivot <= BigRational::zero() {
            return false;
        }
        for i in k + 1..n {
            let f = &work[(i, k)] / &pivot;
            for j in k..n {
                let v = &work[(k, j)] * &f;
                work[(i, j)] = &work[(i, j)] - v;
            }
        }
    }
    true
}
