//! Arrows between tensor powers `(C^d)^{⊗m} -> (C^d)^{⊗n}`.
//!
//! An operator is a scalar times an ordered list of local factors, each a
//! small dense block acting on a window of adjacent tensor slots. Composition
//! and tensoring only splice factor lists; vectors are pushed through the
//! factors one at a time, so nothing of size `d^n x d^n` is ever formed unless
//! the operator is explicitly materialized.
//!
//! Basis vectors of `(C^d)^{⊗n}` are ordered lexicographically in the index
//! tuple `(i_1, ..., i_n)` with slot 1 most significant.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::scalars::Scalar;

pub const DEFAULT_MATERIALIZE_LIMIT: usize = 4096;
pub const DEFAULT_APPLY_LIMIT: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest domain or codomain dimension that may be turned into a dense matrix.
    pub materialize: usize,
    /// Largest intermediate vector length during matrix-free application.
    pub apply: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            materialize: DEFAULT_MATERIALIZE_LIMIT,
            apply: DEFAULT_APPLY_LIMIT,
        }
    }
}

impl Limits {
    pub fn with_materialize(materialize: usize) -> Self {
        Self {
            materialize,
            ..Self::default()
        }
    }

    pub fn check_materialize(&self, what: &'static str, required: usize) -> Result<()> {
        if required > self.materialize {
            Err(Error::Resource {
                what,
                required,
                limit: self.materialize,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_apply(&self, what: &'static str, required: usize) -> Result<()> {
        if required > self.apply {
            Err(Error::Resource {
                what,
                required,
                limit: self.apply,
            })
        } else {
            Ok(())
        }
    }
}

pub fn dim(d: usize, n: usize) -> usize {
    d.pow(n as u32)
}

pub fn basis_index(d: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * d + i)
}

pub fn basis_tuple(d: usize, n: usize, mut index: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    for slot in t.iter_mut().rev() {
        *slot = index % d;
        index /= d;
    }
    t
}

#[derive(Clone, Debug)]
struct LocalFactor<F> {
    start: usize,
    inputs: usize,
    outputs: usize,
    matrix: Matrix<F>,
    /// Nonzero entries of each column, `(row, value)`.
    columns: Vec<Vec<(usize, F)>>,
}

impl<F: Scalar> LocalFactor<F> {
    fn new(start: usize, inputs: usize, outputs: usize, matrix: Matrix<F>) -> Self {
        let columns = (0..matrix.cols())
            .map(|j| {
                (0..matrix.rows())
                    .filter(|&i| !matrix[(i, j)].is_zero())
                    .map(|i| (i, matrix[(i, j)].clone()))
                    .collect()
            })
            .collect();
        Self {
            start,
            inputs,
            outputs,
            matrix,
            columns,
        }
    }

    fn shifted(&self, by: usize) -> Self {
        Self {
            start: self.start + by,
            ..self.clone()
        }
    }

    fn apply(&self, d: usize, slots: usize, v: &[F]) -> Vec<F> {
        let left = dim(d, self.start);
        let right = dim(d, slots - self.start - self.inputs);
        let mid_in = dim(d, self.inputs);
        let mid_out = dim(d, self.outputs);
        let mut out = vec![F::zero(); left * mid_out * right];
        for l in 0..left {
            for j in 0..mid_in {
                let col = &self.columns[j];
                if col.is_empty() {
                    continue;
                }
                for r in 0..right {
                    let x = &v[(l * mid_in + j) * right + r];
                    if x.is_zero() {
                        continue;
                    }
                    for (i, c) in col {
                        let idx = (l * mid_out + i) * right + r;
                        let cur = std::mem::replace(&mut out[idx], F::zero());
                        out[idx] = cur + c.clone() * x.clone();
                    }
                }
            }
        }
        out
    }

    fn apply_sparse(&self, d: usize, slots: usize, v: &[(usize, F)]) -> Vec<(usize, F)> {
        let right = dim(d, slots - self.start - self.inputs);
        let mid_in = dim(d, self.inputs);
        let mid_out = dim(d, self.outputs);
        let mut out: BTreeMap<usize, F> = BTreeMap::new();
        for (idx, x) in v {
            let r = idx % right;
            let t = idx / right;
            let (l, j) = (t / mid_in, t % mid_in);
            for (i, c) in &self.columns[j] {
                let target = (l * mid_out + i) * right + r;
                let term = c.clone() * x.clone();
                match out.entry(target) {
                    Entry::Vacant(e) => {
                        e.insert(term);
                    }
                    Entry::Occupied(mut e) => {
                        let cur = std::mem::replace(e.get_mut(), F::zero());
                        *e.get_mut() = cur + term;
                    }
                }
            }
        }
        out.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }
}

#[derive(Clone, Debug)]
pub struct TensorOperator<F> {
    d: usize,
    domain: usize,
    codomain: usize,
    scale: F,
    /// Applied in order: `factors[0]` acts first.
    factors: Vec<LocalFactor<F>>,
}

impl<F: Scalar> TensorOperator<F> {
    pub fn identity(d: usize, n: usize) -> Self {
        Self {
            d,
            domain: n,
            codomain: n,
            scale: F::one(),
            factors: Vec::new(),
        }
    }

    /// The scalar `c` as an arrow `ι -> ι`.
    pub fn scalar(d: usize, c: F) -> Self {
        Self {
            scale: c,
            ..Self::identity(d, 0)
        }
    }

    /// A dense arrow `(C^d)^{⊗domain} -> (C^d)^{⊗codomain}`.
    pub fn from_matrix(d: usize, domain: usize, codomain: usize, matrix: Matrix<F>) -> Self {
        assert_eq!(matrix.rows(), dim(d, codomain), "codomain dimension");
        assert_eq!(matrix.cols(), dim(d, domain), "domain dimension");
        Self {
            d,
            domain,
            codomain,
            scale: F::one(),
            factors: vec![LocalFactor::new(0, domain, codomain, matrix)],
        }
    }

    /// A vector of `(C^d)^{⊗n}` as an arrow `ι -> u^n`.
    pub fn from_vector(d: usize, n: usize, v: Vec<F>) -> Self {
        let m = Matrix::from_columns(v.len(), &[v]);
        Self::from_matrix(d, 0, n, m)
    }

    /// The block `local` (acting on `inputs` slots) placed at slot `start`
    /// (0-based) of an `n`-slot domain, identity elsewhere.
    pub fn local(
        d: usize,
        n: usize,
        start: usize,
        inputs: usize,
        outputs: usize,
        local: Matrix<F>,
    ) -> Self {
        assert!(start + inputs <= n, "local block exceeds the domain");
        assert_eq!(local.rows(), dim(d, outputs));
        assert_eq!(local.cols(), dim(d, inputs));
        Self {
            d,
            domain: n,
            codomain: n - inputs + outputs,
            scale: F::one(),
            factors: vec![LocalFactor::new(start, inputs, outputs, local)],
        }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn domain_power(&self) -> usize {
        self.domain
    }

    pub fn codomain_power(&self) -> usize {
        self.codomain
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &TensorOperator<F>) -> Result<TensorOperator<F>> {
        if inner.codomain != self.domain {
            return Err(Error::PowerMismatch {
                outer_domain: self.domain,
                inner_codomain: inner.codomain,
            });
        }
        let mut factors = inner.factors.clone();
        factors.extend(self.factors.iter().cloned());
        Ok(Self {
            d: self.d,
            domain: inner.domain,
            codomain: self.codomain,
            scale: self.scale.clone() * inner.scale.clone(),
            factors,
        })
    }

    /// `self ⊗ other`, realized as `(self ⊗ 1) ∘ (1 ⊗ other)`.
    pub fn tensor(&self, other: &TensorOperator<F>) -> TensorOperator<F> {
        let mut factors: Vec<_> = other
            .factors
            .iter()
            .map(|f| f.shifted(self.domain))
            .collect();
        factors.extend(self.factors.iter().cloned());
        Self {
            d: self.d,
            domain: self.domain + other.domain,
            codomain: self.codomain + other.codomain,
            scale: self.scale.clone() * other.scale.clone(),
            factors,
        }
    }

    /// `1_{u^left} ⊗ self ⊗ 1_{u^right}`.
    pub fn pad(&self, left: usize, right: usize) -> TensorOperator<F> {
        Self {
            d: self.d,
            domain: left + self.domain + right,
            codomain: left + self.codomain + right,
            scale: self.scale.clone(),
            factors: self.factors.iter().map(|f| f.shifted(left)).collect(),
        }
    }

    pub fn scaled(&self, c: &F) -> TensorOperator<F> {
        Self {
            scale: self.scale.clone() * c.clone(),
            ..self.clone()
        }
    }

    pub fn adjoint(&self) -> TensorOperator<F> {
        let factors = self
            .factors
            .iter()
            .rev()
            .map(|f| LocalFactor::new(f.start, f.outputs, f.inputs, f.matrix.adjoint()))
            .collect();
        Self {
            d: self.d,
            domain: self.codomain,
            codomain: self.domain,
            scale: self.scale.conj(),
            factors,
        }
    }

    /// Inverse of an endomorphism whose local factors are all square and invertible.
    pub fn inverse(&self) -> Result<TensorOperator<F>> {
        let scale = self.scale.inv().ok_or(Error::Singular)?;
        let factors = self
            .factors
            .iter()
            .rev()
            .map(|f| {
                if f.inputs != f.outputs {
                    return Err(Error::Singular);
                }
                let inv = linalg::inverse(&f.matrix).ok_or(Error::Singular)?;
                Ok(LocalFactor::new(f.start, f.inputs, f.outputs, inv))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            d: self.d,
            domain: self.codomain,
            codomain: self.domain,
            scale,
            factors,
        })
    }

    pub fn map_scalars<G: Scalar>(&self, f: impl Fn(&F) -> G) -> TensorOperator<G> {
        TensorOperator {
            d: self.d,
            domain: self.domain,
            codomain: self.codomain,
            scale: f(&self.scale),
            factors: self
                .factors
                .iter()
                .map(|lf| LocalFactor::new(lf.start, lf.inputs, lf.outputs, lf.matrix.map(&f)))
                .collect(),
        }
    }

    /// Matrix-free application to a vector of `(C^d)^{⊗domain}`.
    pub fn apply(&self, v: &[F], limits: &Limits) -> Result<Vec<F>> {
        assert_eq!(v.len(), dim(self.d, self.domain), "vector length");
        let mut cur = v.to_vec();
        let mut slots = self.domain;
        for f in &self.factors {
            let next_slots = slots - f.inputs + f.outputs;
            limits.check_apply("matrix-free application", dim(self.d, next_slots))?;
            cur = f.apply(self.d, slots, &cur);
            slots = next_slots;
        }
        if self.scale != F::one() {
            for x in cur.iter_mut() {
                if !x.is_zero() {
                    *x = x.clone() * self.scale.clone();
                }
            }
        }
        Ok(cur)
    }

    pub fn materialize(&self, limits: &Limits) -> Result<Matrix<F>> {
        let rows = dim(self.d, self.codomain);
        let cols = dim(self.d, self.domain);
        limits.check_materialize("materialization", rows.max(cols))?;
        let mut m = Matrix::zeros(rows, cols);
        for j in 0..cols {
            for (i, x) in self.apply_sparse(&[(j, F::one())], limits)? {
                m[(i, j)] = x;
            }
        }
        Ok(m)
    }

    /// Matrix-free application to a sparse vector given as sorted `(index, value)` pairs.
    pub fn apply_sparse(&self, v: &[(usize, F)], limits: &Limits) -> Result<Vec<(usize, F)>> {
        let mut cur = v.to_vec();
        let mut slots = self.domain;
        for f in &self.factors {
            let next_slots = slots - f.inputs + f.outputs;
            limits.check_apply("matrix-free application", dim(self.d, next_slots))?;
            cur = f.apply_sparse(self.d, slots, &cur);
            slots = next_slots;
        }
        if self.scale != F::one() {
            cur = cur
                .into_iter()
                .map(|(i, x)| (i, x * self.scale.clone()))
                .filter(|(_, x)| !x.is_zero())
                .collect();
        }
        Ok(cur)
    }

    /// Densified copy (a single factor), for repeated application.
    pub fn densified(&self, limits: &Limits) -> Result<TensorOperator<F>> {
        let m = self.materialize(limits)?;
        Ok(Self::from_matrix(self.d, self.domain, self.codomain, m))
    }

    /// The value of an arrow `ι -> ι`.
    pub fn as_scalar(&self, limits: &Limits) -> Result<F> {
        if self.domain != 0 || self.codomain != 0 {
            return Err(Error::PowerMismatch {
                outer_domain: self.domain,
                inner_codomain: self.codomain,
            });
        }
        Ok(self.apply(&[F::one()], limits)?.remove(0))
    }

    /// The vector of an arrow `ι -> u^n`.
    pub fn as_vector(&self, limits: &Limits) -> Result<Vec<F>> {
        assert_eq!(self.domain, 0, "not a vector");
        self.apply(&[F::one()], limits)
    }

    fn check_shape(&self, other: &TensorOperator<F>) -> Result<()> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(Error::PowerMismatch {
                outer_domain: self.domain,
                inner_codomain: other.domain,
            });
        }
        Ok(())
    }

    /// Exact equality in exact backends; relative column-norm tolerance otherwise.
    pub fn equals(&self, other: &TensorOperator<F>, limits: &Limits, tol: f64) -> Result<bool> {
        self.check_shape(other)?;
        Ok(self
            .materialize(limits)?
            .equals(&other.materialize(limits)?, tol))
    }

    /// Column-norm size of `self - other`.
    pub fn defect(&self, other: &TensorOperator<F>, limits: &Limits) -> Result<f64> {
        self.check_shape(other)?;
        Ok(self
            .materialize(limits)?
            .defect(&other.materialize(limits)?))
    }

    /// `self == c * other` for some scalar `c`; returns `c` (least squares
    /// for floating backends) together with the residual column norm.
    pub fn scalar_multiple_of(
        &self,
        other: &TensorOperator<F>,
        limits: &Limits,
    ) -> Result<(F, f64)> {
        self.check_shape(other)?;
        let a = self.materialize(limits)?;
        let b = other.materialize(limits)?;
        let (num, den) = (0..b.rows())
            .flat_map(|i| (0..b.cols()).map(move |j| (i, j)))
            .fold((F::zero(), F::zero()), |(n, d), (i, j)| {
                let bij = &b[(i, j)];
                if bij.is_zero() {
                    (n, d)
                } else {
                    (
                        n + bij.conj() * a[(i, j)].clone(),
                        d + bij.conj() * bij.clone(),
                    )
                }
            });
        let c = num * den.inv().ok_or(Error::Singular)?;
        let residual = a.defect(&b.scale(&c));
        Ok((c, residual))
    }
}

/// Least-squares coefficient `c` with `x ≈ c * r`, and the residual norm
/// `|x - c r|` (zero exactly when collinear in exact backends).
pub fn collinear_coefficient<F: Scalar>(x: &[F], r: &[F]) -> Result<(F, f64)> {
    let mut num = F::zero();
    let mut den = F::zero();
    for (xi, ri) in x.iter().zip(r) {
        if !ri.is_zero() {
            num = num + ri.conj() * xi.clone();
            den = den + ri.conj() * ri.clone();
        }
    }
    let c = num * den.inv().ok_or(Error::Singular)?;
    let mut residual = 0.0;
    let mut exact_zero = true;
    for (xi, ri) in x.iter().zip(r) {
        let diff = xi.clone() - c.clone() * ri.clone();
        if !diff.is_zero() {
            exact_zero = false;
            residual += diff.norm().powi(2);
        }
    }
    Ok((c, if exact_zero { 0.0 } else { residual.sqrt() }))
}

pub fn vector_norm<F: Scalar>(v: &[F]) -> f64 {
    v.iter().map(|x| x.norm().powi(2)).sum::<f64>().sqrt()
}
