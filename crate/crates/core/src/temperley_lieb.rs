//! Temperley–Lieb diagrams and their realization on `(C^2)^{⊗n}` for `d = 2`.
//!
//! Boundary points are numbered clockwise: top points `0..top` from left to
//! right, then bottom points from right to left. A diagram is a non-crossing
//! perfect matching of the boundary and represents an arrow from its bottom
//! to its top, so `compose(a, b)` glues the bottom of `a` to the top of `b`.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::check::IdentityCheck;
use crate::error::{Error, Result};
use crate::hecke::{antisymmetrizer, determinant_vector, jw_inverse_block, HeckeParams};
use crate::linalg::{self, Matrix};
use crate::scalars::{fmt_rational, BigRational, Scalar};
use crate::tensor::{Limits, TensorOperator};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TLDiagram {
    top: usize,
    bottom: usize,
    pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum End {
    Top(usize),
    Bottom(usize),
}

impl TLDiagram {
    pub fn new(top: usize, bottom: usize, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let total = top + bottom;
        let mut seen = vec![false; total];
        let mut pairs: Vec<(usize, usize)> = pairs
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        for &(a, b) in &pairs {
            if b >= total || a == b || seen[a] || seen[b] {
                return Err(Error::Config(format!(
                    "({a},{b}) is not a valid pairing of {total} points"
                )));
            }
            seen[a] = true;
            seen[b] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Config(format!(
                "{total} boundary points are not all paired"
            )));
        }
        pairs.sort();
        for (i, &(a, b)) in pairs.iter().enumerate() {
            for &(c, e) in &pairs[i + 1..] {
                if a < c && c < b && b < e {
                    return Err(Error::Config(format!(
                        "pairs ({a},{b}) and ({c},{e}) cross"
                    )));
                }
            }
        }
        Ok(Self { top, bottom, pairs })
    }

    pub fn identity(n: usize) -> Self {
        let pairs = (0..n).map(|i| (i, n + (n - 1 - i))).collect();
        Self::new(n, n, pairs).expect("identity is planar")
    }

    /// `U_i` on `n` strands, `1 <= i <= n-1`: a cap on top and a cup on the
    /// bottom joining strands `i` and `i+1`.
    pub fn cup_cap(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange {
                index: i,
                strands: n,
            });
        }
        let bottom = |j: usize| n + (n - 1 - j);
        let mut pairs = vec![(i - 1, i), (bottom(i - 1), bottom(i))];
        pairs.extend(
            (0..n)
                .filter(|&j| j != i - 1 && j != i)
                .map(|j| (j, bottom(j))),
        );
        Self::new(n, n, pairs)
    }

    /// Every diagram with the given boundary, in sorted order.
    pub fn all(top: usize, bottom: usize) -> Vec<Self> {
        let mut out: Vec<Self> = matchings(&(0..top + bottom).collect::<Vec<_>>())
            .into_iter()
            .map(|pairs| Self::new(top, bottom, pairs).expect("non-crossing by construction"))
            .collect();
        out.sort();
        out
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    fn end(&self, point: usize) -> End {
        if point < self.top {
            End::Top(point)
        } else {
            End::Bottom(self.top + self.bottom - 1 - point)
        }
    }

    fn point(&self, end: End) -> usize {
        match end {
            End::Top(i) => i,
            End::Bottom(j) => self.top + self.bottom - 1 - j,
        }
    }

    fn partner(&self, end: End) -> End {
        let p = self.point(end);
        let &(a, b) = self
            .pairs
            .iter()
            .find(|&&(a, b)| a == p || b == p)
            .expect("every point is paired");
        self.end(if a == p { b } else { a })
    }

    /// Number of strands running from top to bottom.
    pub fn through_strands(&self) -> usize {
        self.pairs
            .iter()
            .filter(|&&(a, b)| (a < self.top) != (b < self.top))
            .count()
    }
}

/// Non-crossing perfect matchings of an ordered list of points.
fn matchings(points: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if points.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in (1..points.len()).step_by(2) {
        for inner in matchings(&points[1..k]) {
            for outer in matchings(&points[k + 1..]) {
                let mut m = vec![(points[0], points[k])];
                m.extend(inner.iter().copied());
                m.extend(outer.iter().copied());
                out.push(m);
            }
        }
    }
    out
}

/// Letters mark connected points: the first row is the top, the second the
/// bottom, both read left to right.
impl fmt::Display for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut label = vec![' '; self.top + self.bottom];
        for (k, &(a, b)) in self.pairs.iter().enumerate() {
            let c = char::from_digit((k % 26 + 10) as u32, 36).unwrap_or('?');
            label[a] = c;
            label[b] = c;
        }
        let row = |ends: Vec<End>| {
            ends.into_iter()
                .map(|e| label[self.point(e)].to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "{}", row((0..self.top).map(End::Top).collect()))?;
        write!(f, "{}", row((0..self.bottom).map(End::Bottom).collect()))
    }
}

/// Glues the bottom of `a` to the top of `b`; returns the diagram and the
/// number of closed loops removed.
pub fn compose_diagrams(a: &TLDiagram, b: &TLDiagram) -> Result<(TLDiagram, usize)> {
    if a.bottom != b.top {
        return Err(Error::BoundaryMismatch {
            left: a.bottom,
            right: b.top,
        });
    }
    let middle = a.bottom;
    let mut visited = vec![false; middle];
    let (top, bottom) = (a.top, b.bottom);
    let result_point = |outer: (bool, usize)| match outer {
        (true, i) => i,
        (false, j) => top + bottom - 1 - j,
    };
    // Walk from an outer end through alternating diagrams to the next outer end.
    let walk = |start_in_a: bool, end: End, visited: &mut Vec<bool>| -> (bool, usize) {
        let (mut in_a, mut cur) = (start_in_a, end);
        loop {
            let next = if in_a { a.partner(cur) } else { b.partner(cur) };
            match (in_a, next) {
                (true, End::Top(i)) => return (true, i),
                (false, End::Bottom(j)) => return (false, j),
                (true, End::Bottom(m)) => {
                    visited[m] = true;
                    in_a = false;
                    cur = End::Top(m);
                }
                (false, End::Top(m)) => {
                    visited[m] = true;
                    in_a = true;
                    cur = End::Bottom(m);
                }
            }
        }
    };
    let mut pairs = Vec::new();
    let mut done = vec![false; top + bottom];
    let starts = (0..top)
        .map(|i| (true, End::Top(i), (true, i)))
        .chain((0..bottom).map(|j| (false, End::Bottom(j), (false, j))));
    for (in_a, end, outer) in starts {
        let p = result_point(outer);
        if done[p] {
            continue;
        }
        let q = result_point(walk(in_a, end, &mut visited));
        done[p] = true;
        done[q] = true;
        pairs.push((p, q));
    }
    let mut loops = 0;
    for m in 0..middle {
        if visited[m] {
            continue;
        }
        loops += 1;
        let mut cur = m;
        loop {
            visited[cur] = true;
            let End::Top(x) = b.partner(End::Top(cur)) else {
                unreachable!("closed loops stay in the middle")
            };
            visited[x] = true;
            let End::Bottom(y) = a.partner(End::Bottom(x)) else {
                unreachable!("closed loops stay in the middle")
            };
            if y == m {
                break;
            }
            cur = y;
        }
    }
    Ok((TLDiagram::new(top, bottom, pairs)?, loops))
}

/// Loop value `δ = |μ + 1/μ|` for the realization at parameter `μ`.
pub fn loop_value(mu: &BigRational) -> BigRational {
    (mu + mu.recip()).abs()
}

/// Number of diagrams on `n` + `n` points, the Catalan number `C_n`.
pub fn tl_algebra_dimension(n: usize) -> usize {
    TLDiagram::all(n, n).len()
}

/// A linear combination of diagrams with common boundary, over `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TLElement {
    top: usize,
    bottom: usize,
    delta: BigRational,
    terms: BTreeMap<TLDiagram, BigRational>,
}

impl TLElement {
    pub fn zero(top: usize, bottom: usize, delta: BigRational) -> Self {
        Self {
            top,
            bottom,
            delta,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: TLDiagram, delta: BigRational) -> Self {
        let mut e = Self::zero(d.top, d.bottom, delta);
        e.terms.insert(d, BigRational::one());
        e
    }

    pub fn identity(n: usize, delta: BigRational) -> Self {
        Self::from_diagram(TLDiagram::identity(n), delta)
    }

    /// `e_i = U_i / δ`, an idempotent.
    pub fn generator(n: usize, i: usize, delta: BigRational) -> Result<Self> {
        let inv = delta.recip();
        Ok(Self::from_diagram(TLDiagram::cup_cap(n, i)?, delta).scale(&inv))
    }

    pub fn terms(&self) -> &BTreeMap<TLDiagram, BigRational> {
        &self.terms
    }

    pub fn delta(&self) -> &BigRational {
        &self.delta
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert(&mut self, d: TLDiagram, c: BigRational) {
        let entry = self.terms.entry(d).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.top, self.bottom, self.delta.clone());
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(d, v)| (d.clone(), v * c)).collect();
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.top, self.bottom) != (other.top, other.bottom) {
            return Err(Error::BoundaryMismatch {
                left: self.top + self.bottom,
                right: other.top + other.bottom,
            });
        }
        let mut out = self.clone();
        for (d, v) in &other.terms {
            out.insert(d.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-BigRational::one()))
    }

    /// `self ∘ other`, each closed loop contributing `δ`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero(self.top, other.bottom, self.delta.clone());
        if self.bottom != other.top {
            return Err(Error::BoundaryMismatch {
                left: self.bottom,
                right: other.top,
            });
        }
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let (c, loops) = compose_diagrams(a, b)?;
                out.insert(c, x * y * num_traits::pow(self.delta.clone(), loops));
            }
        }
        Ok(out)
    }
}

impl fmt::Display for TLElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            writeln!(f, "{} *", fmt_rational(c))?;
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// `(1+q) e - q` in `TL_2`, which satisfies `(g - 1)(g + q) = 0`.
pub fn hecke_from_tl(e: &TLElement, q: &BigRational) -> Result<TLElement> {
    let id = TLElement::identity(e.top, e.delta.clone());
    e.scale(&(BigRational::one() + q)).sub(&id.scale(q))
}

/// Shortest words `U_{i_1} ... U_{i_k}` reaching each diagram of `TL_n`
/// without closed loops, by breadth-first search from the identity.
pub fn diagram_words(n: usize) -> BTreeMap<TLDiagram, Vec<usize>> {
    let mut words = BTreeMap::new();
    words.insert(TLDiagram::identity(n), Vec::new());
    let mut queue = VecDeque::from([TLDiagram::identity(n)]);
    while let Some(d) = queue.pop_front() {
        for i in 1..n {
            let u = TLDiagram::cup_cap(n, i).expect("index in range");
            let (next, loops) = compose_diagrams(&u, &d).expect("same boundary");
            if loops == 0 && !words.contains_key(&next) {
                let mut w = vec![i];
                w.extend(&words[&d]);
                words.insert(next.clone(), w);
                queue.push_back(next);
            }
        }
    }
    words
}

/// The `d = 2` realization: `U_i ↦ R R^*` on slots `i, i+1`, which is
/// `δ E_2` there.
#[derive(Clone, Debug)]
pub struct Embedding<F> {
    delta: BigRational,
    u_block: Matrix<F>,
}

impl<F: Scalar> Embedding<F> {
    pub fn new(params: &HeckeParams, limits: &Limits) -> Result<Self> {
        if params.d() != 2 {
            return Err(Error::Config(format!(
                "the Temperley-Lieb realization needs d = 2, got {}",
                params.d()
            )));
        }
        let delta = loop_value(params.mu());
        let e2 = antisymmetrizer::<F>(params, 2, limits)?.materialize(limits)?;
        Ok(Self {
            u_block: e2.scale(&F::from_rational(&delta)),
            delta,
        })
    }

    pub fn delta(&self) -> &BigRational {
        &self.delta
    }

    pub fn generator(&self, n: usize, i: usize) -> Result<TensorOperator<F>> {
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange {
                index: i,
                strands: n,
            });
        }
        Ok(TensorOperator::local(
            2,
            n,
            i - 1,
            2,
            2,
            self.u_block.clone(),
        ))
    }

    pub fn word(&self, n: usize, word: &[usize]) -> Result<TensorOperator<F>> {
        word.iter()
            .try_fold(TensorOperator::identity(2, n), |acc, &i| {
                acc.compose(&self.generator(n, i)?)
            })
    }

    pub fn element(
        &self,
        x: &TLElement,
        words: &BTreeMap<TLDiagram, Vec<usize>>,
    ) -> Result<TensorOperator<F>> {
        if x.top != x.bottom {
            return Err(Error::BoundaryMismatch {
                left: x.top,
                right: x.bottom,
            });
        }
        let mut acc = TensorOperator::identity(2, x.top).scaled(&F::zero());
        let mut first = true;
        for (d, c) in &x.terms {
            let w = words.get(d).ok_or_else(|| Error::Inconsistent {
                module: "temperley_lieb",
                detail: format!("no word for diagram\n{d}"),
            })?;
            let term = self
                .word(x.top, w)?
                .scaled(&F::from_rational(c))
                .densified(&Limits::default())?;
            acc = if first { term } else { sum(&acc, &term)? };
            first = false;
        }
        Ok(acc)
    }
}

fn sum<F: Scalar>(a: &TensorOperator<F>, b: &TensorOperator<F>) -> Result<TensorOperator<F>> {
    let limits = Limits::default();
    let m = a.materialize(&limits)?.add(&b.materialize(&limits)?);
    Ok(TensorOperator::from_matrix(
        a.d(),
        a.domain_power(),
        a.codomain_power(),
        m,
    ))
}

/// Diagram-level relations of `TL_n`.
pub fn verify_tl_relations(n: usize, delta: &BigRational) -> Result<Vec<IdentityCheck>> {
    let mut checks = Vec::new();
    let u = |i| {
        TLElement::from_diagram(
            TLDiagram::cup_cap(n, i).expect("index in range"),
            delta.clone(),
        )
    };
    for i in 1..n {
        let ok = u(i).compose(&u(i))? == u(i).scale(delta);
        checks.push(IdentityCheck::new(
            format!("U_{i}^2 = delta U_{i}"),
            ok,
            0.0,
        ));
        if i + 1 < n {
            let ok = u(i).compose(&u(i + 1))?.compose(&u(i))? == u(i);
            checks.push(IdentityCheck::new(
                format!("U_{i} U_{} U_{i} = U_{i}", i + 1),
                ok,
                0.0,
            ));
            let ok = u(i + 1).compose(&u(i))?.compose(&u(i + 1))? == u(i + 1);
            checks.push(IdentityCheck::new(
                format!("U_{} U_{i} U_{} = U_{}", i + 1, i + 1, i + 1),
                ok,
                0.0,
            ));
        }
        for j in i + 2..n {
            let ok = u(i).compose(&u(j))? == u(j).compose(&u(i))?;
            checks.push(IdentityCheck::new(
                format!("U_{i} U_{j} = U_{j} U_{i}"),
                ok,
                0.0,
            ));
        }
    }
    Ok(checks)
}

/// Generator relations, the homomorphism property on all pairs of diagrams,
/// faithfulness (rank `C_n` when `δ > 2`), the zigzag sign and the Hecke
/// element, for the `d = 2` realization on `n` strands.
pub fn embed_into_sud2<F: Scalar>(
    params: &HeckeParams,
    n: usize,
    limits: &Limits,
) -> Result<Vec<IdentityCheck>> {
    let emb = Embedding::<F>::new(params, limits)?;
    let delta = emb.delta.clone();
    let words = diagram_words(n);
    let mut checks = Vec::new();
    checks.push(IdentityCheck::new(
        format!("every TL_{n} diagram is a loop-free word"),
        words.len() == tl_algebra_dimension(n),
        0.0,
    ));

    let inv_delta = F::from_rational(&delta.recip());
    let e = |i| emb.generator(n, i).map(|g| g.scaled(&inv_delta));
    for i in 1..n {
        checks.push(IdentityCheck::operators(
            format!("e_{i}^2 = e_{i}"),
            &e(i)?.compose(&e(i)?)?,
            &e(i)?,
            limits,
        )?);
        if i + 1 < n {
            let c = F::from_rational(&(&delta * &delta).recip());
            let lhs = e(i)?.compose(&e(i + 1)?)?.compose(&e(i)?)?;
            checks.push(IdentityCheck::operators(
                format!("e_{i} e_{} e_{i} = delta^-2 e_{i}", i + 1),
                &lhs,
                &e(i)?.scaled(&c),
                limits,
            )?);
        }
    }

    let diagrams: Vec<&TLDiagram> = words.keys().collect();
    let images: Vec<Matrix<F>> = diagrams
        .iter()
        .map(|d| emb.word(n, &words[*d])?.materialize(limits))
        .collect::<Result<_>>()?;
    let mut hom_ok = true;
    let mut hom_defect: f64 = 0.0;
    for (i, a) in diagrams.iter().enumerate() {
        for (j, b) in diagrams.iter().enumerate() {
            let (c, loops) = compose_diagrams(a, b)?;
            let k = diagrams
                .binary_search(&&c)
                .map_err(|_| Error::Inconsistent {
                    module: "temperley_lieb",
                    detail: "composite diagram missing".into(),
                })?;
            let lhs = images[i].mul(&images[j]);
            let rhs = images[k].scale(&F::from_rational(&num_traits::pow(delta.clone(), loops)));
            hom_ok &= lhs.equals(&rhs, crate::scalars::DEFAULT_TOLERANCE);
            hom_defect = hom_defect.max(lhs.defect(&rhs));
        }
    }
    checks.push(IdentityCheck::new(
        format!("TL_{n} composition matches operators"),
        hom_ok,
        hom_defect,
    ));

    let flat = Matrix::from_fn(images.len(), images[0].rows() * images[0].cols(), |r, c| {
        images[r][(c / images[0].cols(), c % images[0].cols())].clone()
    });
    let rank = linalg::rank(&flat);
    let faithful = delta <= BigRational::from_integer(2.into()) || rank == images.len();
    checks.push(
        IdentityCheck::new(format!("TL_{n} images are independent"), faithful, 0.0)
            .with_detail(format!("rank {rank} of {}", images.len())),
    );

    // (R*⊗1)(1⊗R) with R = S/sqrt|μ|
    let s = determinant_vector::<F>(params);
    let zigzag = s
        .adjoint()
        .pad(0, 1)
        .compose(&s.pad(1, 0))?
        .scaled(&F::from_rational(&params.mu_abs().recip()));
    let sign = if params.mu_negative() { 1 } else { -1 };
    checks.push(IdentityCheck::operators(
        "(R*⊗1)(1⊗R) = -sgn(mu)",
        &zigzag,
        &TensorOperator::identity(2, 1).scaled(&F::from_int(sign)),
        limits,
    )?);

    let q = params.q();
    let g = hecke_from_tl(&TLElement::generator(2, 1, delta.clone())?, &q)?;
    let lhs = g.compose(&g)?;
    let rhs = g
        .scale(&(BigRational::one() - &q))
        .add(&TLElement::identity(2, delta.clone()).scale(&q))?;
    checks.push(IdentityCheck::new(
        "TL Hecke element: g^2 = (1-q) g + q",
        lhs == rhs,
        0.0,
    ));
    let image = emb.element(&g, &diagram_words(2))?;
    let target = TensorOperator::local(2, 2, 0, 2, 2, jw_inverse_block::<F>(params))
        .scaled(&F::from_rational(&-q));
    checks.push(IdentityCheck::operators(
        "image of (1+q)e - q = -q g^-1",
        &image,
        &target,
        limits,
    )?);
    Ok(checks)
}
