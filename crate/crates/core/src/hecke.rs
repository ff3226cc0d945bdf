//! The Jimbo–Woronowicz representation of the Hecke algebra `H_n(q)` on
//! `(C^d)^{⊗n}`, the deformed determinant vector `S`, and q-antisymmetrizers.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::check::IdentityCheck;
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalars::{fmt_rational, BigRational, Scalar};
use crate::tensor::{self, Limits, TensorOperator};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeParams {
    d: usize,
    mu: BigRational,
}

impl HeckeParams {
    pub fn new(d: usize, mu: BigRational) -> Result<Self> {
        if d < 2 {
            return Err(Error::Config(format!("d must be at least 2, got {d}")));
        }
        if mu.is_zero() {
            return Err(Error::Config("mu must be nonzero".into()));
        }
        Ok(Self { d, mu })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn mu(&self) -> &BigRational {
        &self.mu
    }

    pub fn mu_abs(&self) -> BigRational {
        num_traits::Signed::abs(&self.mu)
    }

    pub fn mu_negative(&self) -> bool {
        self.mu < BigRational::zero()
    }

    pub fn q(&self) -> BigRational {
        &self.mu * &self.mu
    }

    /// The same `d` with `μ` replaced by `-μ`.
    pub fn negated(&self) -> Self {
        Self {
            d: self.d,
            mu: -self.mu.clone(),
        }
    }
}

impl fmt::Display for HeckeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={}, mu={}", self.d, fmt_rational(&self.mu))
    }
}

/// `[k]_q = 1 + q + ... + q^{k-1}`.
pub fn quantum_integer(k: usize, q: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    let mut power = BigRational::one();
    for _ in 0..k {
        acc += &power;
        power *= q;
    }
    acc
}

/// `n!_q = [1]_q [2]_q ... [n]_q`.
pub fn quantum_factorial(n: usize, q: &BigRational) -> BigRational {
    (1..=n).fold(BigRational::one(), |acc, k| acc * quantum_integer(k, q))
}

/// A word in the braid generators, read as a product: the last letter acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    letters: Vec<(usize, i8)>,
}

impl BraidWord {
    pub fn new(letters: Vec<(usize, i8)>) -> Self {
        assert!(
            letters.iter().all(|&(i, e)| i >= 1 && (e == 1 || e == -1)),
            "letters are (index >= 1, exponent ±1)"
        );
        Self { letters }
    }

    pub fn identity() -> Self {
        Self::default()
    }

    /// `g_{i_1} g_{i_2} ...`
    pub fn positive(indices: &[usize]) -> Self {
        Self::new(indices.iter().map(|&i| (i, 1)).collect())
    }

    /// `G_k = g_k g_{k-1} ... g_2 g_1 g_1 g_2 ... g_k`.
    pub fn palindrome(k: usize) -> Self {
        let down: Vec<usize> = (1..=k).rev().collect();
        let up: Vec<usize> = (1..=k).collect();
        Self::positive(&[down, up].concat())
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|&(i, _)| i).max().unwrap_or(0)
    }

    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().map(|&(i, e)| (i, -e)).collect(),
        }
    }

    /// The product `self · other`.
    pub fn then(&self, other: &BraidWord) -> Self {
        Self {
            letters: self.letters.iter().chain(&other.letters).copied().collect(),
        }
    }

    /// Every index raised by `by`.
    pub fn shifted(&self, by: usize) -> Self {
        Self {
            letters: self.letters.iter().map(|&(i, e)| (i + by, e)).collect(),
        }
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts = self.letters.iter().map(|&(i, e)| {
            if e == 1 {
                format!("g{i}")
            } else {
                format!("g{i}^-1")
            }
        });
        write!(f, "{}", parts.format(" "))
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Parses whitespace-separated letters `g3` or `g3^-1`; `1` is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("cannot parse braid word '{s}'"));
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let body = tok.strip_prefix('g').ok_or_else(bad)?;
            let (idx, exp) = match body.split_once('^') {
                Some((i, "-1")) => (i, -1),
                Some((i, "1")) => (i, 1),
                Some(_) => return Err(bad()),
                None => (body, 1),
            };
            let i: usize = idx.parse().map_err(|_| bad())?;
            if i == 0 {
                return Err(bad());
            }
            letters.push((i, exp));
        }
        Ok(Self { letters })
    }
}

/// The `d² x d²` block of `η(g_i)` on two adjacent slots.
pub fn jw_block<F: Scalar>(p: &HeckeParams) -> Matrix<F> {
    let d = p.d;
    let mu = F::from_rational(&p.mu);
    let one_minus_q = F::from_rational(&(BigRational::one() - p.q()));
    let mut m = Matrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            let col = i * d + j;
            match i.cmp(&j) {
                std::cmp::Ordering::Equal => m[(col, col)] = F::one(),
                std::cmp::Ordering::Less => m[(j * d + i, col)] = mu.clone(),
                std::cmp::Ordering::Greater => {
                    m[(j * d + i, col)] = mu.clone();
                    m[(col, col)] = one_minus_q.clone();
                }
            }
        }
    }
    m
}

/// The block of `η(g_i)^{-1} = (η(g_i) - (1-q)) / q`.
pub fn jw_inverse_block<F: Scalar>(p: &HeckeParams) -> Matrix<F> {
    let q = p.q();
    let shift = F::from_rational(&(BigRational::one() - &q));
    let inv_q = F::from_rational(&q.recip());
    let g = jw_block::<F>(p);
    g.sub(&Matrix::identity(g.rows()).scale(&shift))
        .scale(&inv_q)
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i >= n {
        Err(Error::IndexOutOfRange {
            index: i,
            strands: n,
        })
    } else {
        Ok(())
    }
}

/// `η(g_i)` on `(C^d)^{⊗n}`, for `1 <= i <= n-1`.
pub fn jw_generator<F: Scalar>(p: &HeckeParams, i: usize, n: usize) -> Result<TensorOperator<F>> {
    check_index(i, n)?;
    Ok(TensorOperator::local(p.d, n, i - 1, 2, 2, jw_block(p)))
}

/// `η(w)` on `(C^d)^{⊗n}`.
pub fn represent_word<F: Scalar>(
    p: &HeckeParams,
    w: &BraidWord,
    n: usize,
) -> Result<TensorOperator<F>> {
    for &(i, _) in w.letters() {
        check_index(i, n)?;
    }
    let g = jw_block::<F>(p);
    let g_inv = jw_inverse_block::<F>(p);
    let mut op = TensorOperator::identity(p.d, n);
    for &(i, e) in w.letters() {
        let block = if e > 0 { g.clone() } else { g_inv.clone() };
        op = op.compose(&TensorOperator::local(p.d, n, i - 1, 2, 2, block))?;
    }
    Ok(op)
}

fn inversions(perm: &[usize]) -> usize {
    perm.iter()
        .enumerate()
        .map(|(a, &x)| perm[a + 1..].iter().filter(|&&y| y < x).count())
        .sum()
}

/// Coordinates of `S = Σ_p (-μ)^{i(p)} ψ_{p(1)} ⊗ ... ⊗ ψ_{p(d)}` over `Q`.
pub fn determinant_coordinates(p: &HeckeParams) -> Vec<BigRational> {
    let d = p.d;
    let minus_mu = -p.mu.clone();
    let mut v = vec![BigRational::zero(); tensor::dim(d, d)];
    for perm in (0..d).permutations(d) {
        let coeff = num_traits::pow(minus_mu.clone(), inversions(&perm));
        v[tensor::basis_index(d, &perm)] = coeff;
    }
    v
}

/// `S` as an arrow `ι -> u^{⊗d}`.
pub fn determinant_vector<F: Scalar>(p: &HeckeParams) -> TensorOperator<F> {
    let coords = determinant_coordinates(p)
        .iter()
        .map(F::from_rational)
        .collect();
    TensorOperator::from_vector(p.d, p.d, coords)
}

/// Orthonormal-projection matrix `E_k` over `Q` onto the joint `(-q)`-eigenspace
/// of `η(g_1), ..., η(g_{k-1})` on `(C^d)^{⊗k}`.
pub fn antisymmetrizer_matrix(
    p: &HeckeParams,
    k: usize,
    limits: &Limits,
) -> Result<Matrix<BigRational>> {
    let d = p.d;
    limits.check_materialize("antisymmetrizer", tensor::dim(d, k))?;
    let q = p.q();
    let shifted = jw_block::<BigRational>(p).add(&Matrix::identity(d * d).scale(&q));
    let mut basis: Vec<Vec<BigRational>> = (0..d)
        .map(|a| {
            (0..d)
                .map(|b| {
                    if a == b {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for j in 1..k {
        // candidates w ⊗ e_a on j+1 slots
        let candidates: Vec<Vec<BigRational>> = basis
            .iter()
            .flat_map(|w| {
                (0..d).map(move |a| {
                    let mut v = vec![BigRational::zero(); w.len() * d];
                    for (idx, x) in w.iter().enumerate() {
                        v[idx * d + a] = x.clone();
                    }
                    v
                })
            })
            .collect();
        if candidates.is_empty() {
            break;
        }
        let op = TensorOperator::local(d, j + 1, j - 1, 2, 2, shifted.clone());
        let images = candidates
            .iter()
            .map(|c| op.apply(c, limits))
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_columns(tensor::dim(d, j + 1), &images);
        basis = linalg::kernel_basis(&m)
            .into_iter()
            .map(|coeffs| {
                let mut v = vec![BigRational::zero(); tensor::dim(d, j + 1)];
                for (c, cand) in coeffs.iter().zip(&candidates) {
                    if c.is_zero() {
                        continue;
                    }
                    for (x, y) in v.iter_mut().zip(cand) {
                        *x += c * y;
                    }
                }
                v
            })
            .collect();
    }
    linalg::orthogonal_projection(tensor::dim(d, k), &basis).ok_or(Error::Singular)
}

/// `E_k` as an operator over the backend `F`.
pub fn antisymmetrizer<F: Scalar>(
    p: &HeckeParams,
    k: usize,
    limits: &Limits,
) -> Result<TensorOperator<F>> {
    let m = antisymmetrizer_matrix(p, k, limits)?;
    Ok(TensorOperator::from_matrix(
        p.d,
        k,
        k,
        m.map(F::from_rational),
    ))
}

/// Checks the defining relations of `S`:
/// `S*S = d!_q`, `SS* = d!_q E_d`, `(S*⊗1)(1⊗S) = (d-1)!_q (-μ)^{d-1}`,
/// `η(g_1...g_d)(S⊗1) = μ^{d-1} (1⊗S)` and `g_i S = -q S`.
pub fn verify_s_relations<F: Scalar>(
    p: &HeckeParams,
    limits: &Limits,
) -> Result<Vec<IdentityCheck>> {
    let d = p.d;
    limits.check_materialize("S relations", tensor::dim(d, d + 1))?;
    let q = p.q();
    let s = determinant_vector::<F>(p);
    let s_adj = s.adjoint();
    let from = |x: &BigRational| F::from_rational(x);
    let mut checks = Vec::new();

    let norm = s_adj.compose(&s)?.as_scalar(limits)?;
    checks.push(IdentityCheck::scalars(
        "S*S = d!_q",
        &norm,
        &from(&quantum_factorial(d, &q)),
    ));

    let proj = s.compose(&s_adj)?;
    let e_d = antisymmetrizer::<F>(p, d, limits)?.scaled(&from(&quantum_factorial(d, &q)));
    checks.push(IdentityCheck::operators(
        "SS* = d!_q E_d",
        &proj,
        &e_d,
        limits,
    )?);

    let zigzag = s_adj.pad(0, 1).compose(&s.pad(1, 0))?;
    let coeff = quantum_factorial(d - 1, &q) * num_traits::pow(-p.mu.clone(), d - 1);
    let rhs = TensorOperator::identity(d, 1).scaled(&from(&coeff));
    checks.push(IdentityCheck::operators(
        "(S*⊗1)(1⊗S) = (d-1)!_q (-mu)^(d-1)",
        &zigzag,
        &rhs,
        limits,
    )?);

    let word = BraidWord::positive(&(1..=d).collect::<Vec<_>>());
    let lhs = represent_word::<F>(p, &word, d + 1)?.compose(&s.pad(0, 1))?;
    let rhs = s
        .pad(1, 0)
        .scaled(&from(&num_traits::pow(p.mu.clone(), d - 1)));
    checks.push(IdentityCheck::operators(
        "g_1...g_d (S⊗1) = mu^(d-1) (1⊗S)",
        &lhs,
        &rhs,
        limits,
    )?);

    let minus_q_s = s.scaled(&from(&-q.clone()));
    for i in 1..d {
        let lhs = jw_generator::<F>(p, i, d)?.compose(&s)?;
        checks.push(IdentityCheck::operators(
            format!("g_{i} S = -q S"),
            &lhs,
            &minus_q_s,
            limits,
        )?);
    }
    Ok(checks)
}
