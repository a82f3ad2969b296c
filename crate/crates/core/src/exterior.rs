//! Exterior algebra `Λ*ℝⁿ` in an orthonormal coframe `η⁰, …, η^{n−1}`.
//!
//! A basis `p`-form `η^{i₁}∧…∧η^{i_p}` (`i₁ < … < i_p`) is a [`MultiIndex`]
//! stored as a bitmask. The basis of `Λ^p` is ordered lexicographically on
//! increasing index tuples and is orthonormal, so the inner product of two
//! forms is the dot product of their coefficient tables.
//!
//! Sign conventions, all derived from transposition counts between bitmasks:
//! - `η^j ∧ η^S = (−1)^{#{s ∈ S : s < j}} η^{S∪{j}}`;
//! - `ι_{e_k} η^S = (−1)^{#{s ∈ S : s < k}} η^{S∖{k}}`, which makes `ι_{e_k}`
//!   the adjoint of `η^k ∧ ·`;
//! - `⋆η^S = sgn(S, S⋆) η^{S⋆}`, so that `ω ∧ ⋆τ = ⟨ω, τ⟩ η⁰∧…∧η^{n−1}`.
//!
//! Interior products of 0-forms and wedges that overflow degree `n` give zero.

use alloc::vec;
use alloc::vec::Vec;

use crate::linalg::SquareMatrix;
use crate::math::{abs, sqrt};
use crate::{Error, Result, MAX_DIM};

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[inline]
fn parity_sign(count: u32) -> f64 {
    if count.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

#[inline]
fn below(bits: u32, k: usize) -> u32 {
    (bits & ((1u32 << k) - 1)).count_ones()
}

/// `η^j ∧ η^S` on bitmasks: `None` when `j ∈ S`.
#[inline]
pub(crate) fn left_mul_basis(j: usize, bits: u32) -> Option<(f64, u32)> {
    let bit = 1u32 << j;
    if bits & bit != 0 {
        None
    } else {
        Some((parity_sign(below(bits, j)), bits | bit))
    }
}

/// `ι_{e_k} η^S` on bitmasks: `None` when `k ∉ S`.
#[inline]
pub(crate) fn interior_basis(k: usize, bits: u32) -> Option<(f64, u32)> {
    let bit = 1u32 << k;
    if bits & bit == 0 {
        None
    } else {
        Some((parity_sign(below(bits, k)), bits & !bit))
    }
}

/// Sign of `η^A ∧ η^B` relative to the sorted basis element, `None` if they overlap.
pub(crate) fn wedge_basis_sign(a: u32, b: u32) -> Option<f64> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        // elements of A above j must move past η^j
        inversions += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(parity_sign(inversions))
}

fn check_dim(n: usize) -> Result<()> {
    if n > MAX_DIM {
        Err(Error::DimensionTooLarge(n))
    } else {
        Ok(())
    }
}

fn check_degree(n: usize, p: usize) -> Result<()> {
    check_dim(n)?;
    if p > n {
        Err(Error::DegreeOutOfRange { p, n })
    } else {
        Ok(())
    }
}

/// A subset of `{0, …, n−1}`: the index set of a basis form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex {
    n: usize,
    bits: u32,
}

impl MultiIndex {
    pub fn from_bits(n: usize, bits: u32) -> Result<Self> {
        check_dim(n)?;
        if n < 32 && bits >> n != 0 {
            return Err(Error::IndexOutOfRange {
                index: (31 - bits.leading_zeros()) as usize,
                n,
            });
        }
        Ok(Self { n, bits })
    }

    /// Builds the subset from distinct indices in any order.
    pub fn new(n: usize, indices: &[usize]) -> Result<Self> {
        check_dim(n)?;
        let mut bits = 0u32;
        for &i in indices {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            if bits & (1 << i) != 0 {
                return Err(Error::InvalidParameter("repeated index in multi-index"));
            }
            bits |= 1 << i;
        }
        Ok(Self { n, bits })
    }

    #[inline]
    pub fn bits(&self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.bits.count_ones() as usize
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.n && self.bits & (1 << i) != 0
    }

    /// `{0..n} ∖ self`.
    pub fn complement(&self) -> Self {
        let full = if self.n == 32 {
            u32::MAX
        } else {
            (1u32 << self.n) - 1
        };
        Self {
            n: self.n,
            bits: full & !self.bits,
        }
    }

    /// Indices in increasing order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        let mut rest = self.bits;
        core::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// Position in the lexicographic basis of `Λ^p`, `p = self.degree()`.
    pub fn rank(&self) -> usize {
        rank_bits(self.n, self.bits)
    }
}

fn rank_bits(n: usize, bits: u32) -> usize {
    // Reflect i ↦ n−1−i; lex order on increasing tuples becomes reverse
    // colex order, whose rank is the combinatorial number system.
    let p = bits.count_ones() as usize;
    let mut colex = 0;
    let mut k = p;
    let mut rest = bits;
    while rest != 0 {
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        colex += binomial(n - 1 - i, k);
        k -= 1;
    }
    binomial(n, p) - 1 - colex
}

fn unrank_bits(n: usize, p: usize, r: usize) -> u32 {
    let mut colex = binomial(n, p) - 1 - r;
    let mut bits = 0u32;
    let mut top = n;
    for k in (1..=p).rev() {
        // largest b < top with C(b, k) ≤ colex
        let mut b = top - 1;
        while binomial(b, k) > colex {
            b -= 1;
        }
        colex -= binomial(b, k);
        bits |= 1 << (n - 1 - b);
        top = b;
    }
    bits
}

/// Rank of `alpha` among the `p`-subsets of `{0..n}`.
pub fn rank_subset(alpha: &MultiIndex, p: usize) -> Result<usize> {
    if alpha.degree() != p {
        return Err(Error::DegreeMismatch {
            expected: p,
            found: alpha.degree(),
        });
    }
    Ok(alpha.rank())
}

/// Inverse of [`rank_subset`].
pub fn unrank_subset(n: usize, p: usize, r: usize) -> Result<MultiIndex> {
    check_degree(n, p)?;
    let count = binomial(n, p);
    if r >= count {
        return Err(Error::IndexOutOfRange { index: r, n: count });
    }
    Ok(MultiIndex {
        n,
        bits: unrank_bits(n, p, r),
    })
}

/// The lexicographically ordered basis of `Λ^p ℝⁿ`.
#[derive(Clone, Debug)]
pub struct Basis {
    n: usize,
    p: usize,
    subsets: Vec<u32>,
}

impl Basis {
    pub fn new(n: usize, p: usize) -> Result<Self> {
        check_degree(n, p)?;
        let subsets = (0..binomial(n, p)).map(|r| unrank_bits(n, p, r)).collect();
        Ok(Self { n, p, subsets })
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn bits(&self, r: usize) -> u32 {
        self.subsets[r]
    }

    pub fn rank(&self, bits: u32) -> usize {
        rank_bits(self.n, bits)
    }

    pub fn iter(&self) -> impl Iterator<Item = MultiIndex> + '_ {
        self.subsets
            .iter()
            .map(move |&bits| MultiIndex { n: self.n, bits })
    }
}

/// A `p`-form on ℝⁿ with coefficients over the lexicographic basis of `Λ^p`.
#[derive(Clone, Debug, PartialEq)]
pub struct PForm {
    n: usize,
    p: usize,
    coeffs: Vec<f64>,
}

impl PForm {
    pub fn zero(n: usize, p: usize) -> Result<Self> {
        check_degree(n, p)?;
        Ok(Self {
            n,
            p,
            coeffs: vec![0.0; binomial(n, p)],
        })
    }

    pub fn from_coeffs(n: usize, p: usize, coeffs: Vec<f64>) -> Result<Self> {
        check_degree(n, p)?;
        let expected = binomial(n, p);
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: coeffs.len(),
            });
        }
        Ok(Self { n, p, coeffs })
    }

    pub fn scalar(n: usize, value: f64) -> Result<Self> {
        Self::from_coeffs(n, 0, vec![value])
    }

    /// The basis form `η^α`.
    pub fn basis(alpha: &MultiIndex) -> Self {
        let (n, p) = (alpha.n, alpha.degree());
        let mut coeffs = vec![0.0; binomial(n, p)];
        coeffs[alpha.rank()] = 1.0;
        Self { n, p, coeffs }
    }

    /// `η^{i₁} ∧ … ∧ η^{i_p}` for indices in any order, sign included.
    pub fn monomial(n: usize, indices: &[usize]) -> Result<Self> {
        let mut form = Self::scalar(n, 1.0)?;
        for &i in indices.iter().rev() {
            form = form.left_wedge_frame(i)?;
        }
        Ok(form)
    }

    /// The 1-form `Σ vᵢ ηⁱ`.
    pub fn covector(v: &[f64]) -> Result<Self> {
        Self::from_coeffs(v.len(), 1, v.to_vec())
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> f64 {
        if alpha.n != self.n || alpha.degree() != self.p {
            return 0.0;
        }
        self.coeffs[alpha.rank()]
    }

    pub fn norm2(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    pub fn norm(&self) -> f64 {
        sqrt(self.norm2())
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| abs(*c)).fold(0.0, f64::max)
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        if self.p != other.p {
            return Err(Error::DegreeMismatch {
                expected: self.p,
                found: other.p,
            });
        }
        Ok(())
    }

    /// Frame inner product `⟨ω, τ⟩`.
    pub fn inner(&self, other: &Self) -> Result<f64> {
        self.same_shape(other)?;
        Ok(self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .sum())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            n: self.n,
            p: self.p,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// `self += a · other`.
    ///
    /// # Panics
    /// If the shapes differ.
    pub fn add_scaled(&mut self, a: f64, other: &Self) {
        assert!(
            self.n == other.n && self.p == other.p,
            "add_scaled: shapes ({}, {}) and ({}, {}) differ",
            self.n,
            self.p,
            other.n,
            other.p
        );
        for (x, y) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *x += a * y;
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.clone();
        out.add_scaled(-1.0, other);
        Ok(out)
    }

    /// `ω ∧ η`; a zero `n`-form when the degrees overflow.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let n = self.n;
        let q = self.p + other.p;
        if q > n {
            return Self::zero(n, n);
        }
        let left = Basis::new(n, self.p)?;
        let right = Basis::new(n, other.p)?;
        let mut out = vec![0.0; binomial(n, q)];
        for (ra, &a) in self.coeffs.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let sa = left.bits(ra);
            for (rb, &b) in other.coeffs.iter().enumerate() {
                if b == 0.0 {
                    continue;
                }
                let sb = right.bits(rb);
                if let Some(sign) = wedge_basis_sign(sa, sb) {
                    out[rank_bits(n, sa | sb)] += sign * a * b;
                }
            }
        }
        Self::from_coeffs(n, q, out)
    }

    /// `η^k ∧ ω`; zero when the degree would exceed `n`.
    pub fn left_wedge_frame(&self, k: usize) -> Result<Self> {
        if k >= self.n {
            return Err(Error::IndexOutOfRange {
                index: k,
                n: self.n,
            });
        }
        if self.p == self.n {
            return Self::zero(self.n, self.n);
        }
        let basis = Basis::new(self.n, self.p)?;
        let mut out = Self::zero(self.n, self.p + 1)?;
        for (r, &c) in self.coeffs.iter().enumerate() {
            if let Some((sign, bits)) = left_mul_basis(k, basis.bits(r)) {
                out.coeffs[rank_bits(self.n, bits)] += sign * c;
            }
        }
        Ok(out)
    }

    /// `ι_{e_k} ω`; the zero 0-form when `ω` is a 0-form.
    pub fn interior_frame(&self, k: usize) -> Result<Self> {
        if k >= self.n {
            return Err(Error::IndexOutOfRange {
                index: k,
                n: self.n,
            });
        }
        if self.p == 0 {
            return Self::zero(self.n, 0);
        }
        let basis = Basis::new(self.n, self.p)?;
        let mut out = Self::zero(self.n, self.p - 1)?;
        for (r, &c) in self.coeffs.iter().enumerate() {
            if let Some((sign, bits)) = interior_basis(k, basis.bits(r)) {
                out.coeffs[rank_bits(self.n, bits)] += sign * c;
            }
        }
        Ok(out)
    }

    /// `ι_X ω` for `X = Σ xᵢ eᵢ`.
    pub fn interior(&self, x: &[f64]) -> Result<Self> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.len(),
            });
        }
        let mut out = Self::zero(self.n, self.p.saturating_sub(1))?;
        for (k, &xk) in x.iter().enumerate() {
            if xk != 0.0 {
                out.add_scaled(xk, &self.interior_frame(k)?);
            }
        }
        Ok(out)
    }

    /// Hodge star `Λ^p → Λ^{n−p}`.
    pub fn hodge_star(&self) -> Self {
        let n = self.n;
        let basis = Basis::new(n, self.p).expect("valid form shape");
        let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        let mut out = vec![0.0; self.coeffs.len()];
        for (r, &c) in self.coeffs.iter().enumerate() {
            let s = basis.bits(r);
            let comp = full & !s;
            let sign = wedge_basis_sign(s, comp).expect("disjoint");
            out[rank_bits(n, comp)] += sign * c;
        }
        Self {
            n,
            p: n - self.p,
            coeffs: out,
        }
    }
}

/// Matrix of `⋆ : Λ^p → Λ^{n−p}` in the lexicographic bases.
pub fn hodge_star_matrix(n: usize, p: usize) -> Result<SquareMatrix> {
    let basis = Basis::new(n, p)?;
    let full = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut m = SquareMatrix::zeros(basis.len());
    for r in 0..basis.len() {
        let s = basis.bits(r);
        let comp = full & !s;
        let sign = wedge_basis_sign(s, comp).expect("disjoint");
        m[(rank_bits(n, comp), r)] = sign;
    }
    Ok(m)
}

/// A linear map `Λ^p → Λ^p` as a dense matrix in the lexicographic basis.
#[derive(Clone, Debug, PartialEq)]
pub struct FormOperator {
    n: usize,
    p: usize,
    matrix: SquareMatrix,
}

impl FormOperator {
    pub fn from_matrix(n: usize, p: usize, matrix: SquareMatrix) -> Result<Self> {
        check_degree(n, p)?;
        let expected = binomial(n, p);
        if matrix.dim() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: matrix.dim(),
            });
        }
        Ok(Self { n, p, matrix })
    }

    pub fn identity(n: usize, p: usize) -> Result<Self> {
        check_degree(n, p)?;
        Ok(Self {
            n,
            p,
            matrix: SquareMatrix::identity(binomial(n, p)),
        })
    }

    /// `η^i ∧ ι_{e_j}` on `Λ^p`: the derivation extension of `e_i e_jᵀ`.
    pub fn elementary(n: usize, p: usize, i: usize, j: usize) -> Result<Self> {
        if i >= n || j >= n {
            return Err(Error::IndexOutOfRange { index: i.max(j), n });
        }
        let basis = Basis::new(n, p)?;
        let mut m = SquareMatrix::zeros(basis.len());
        for r in 0..basis.len() {
            if let Some((s1, t)) = interior_basis(j, basis.bits(r)) {
                if let Some((s2, u)) = left_mul_basis(i, t) {
                    m[(rank_bits(n, u), r)] += s1 * s2;
                }
            }
        }
        Ok(Self { n, p, matrix: m })
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> SquareMatrix {
        self.matrix
    }

    pub fn apply(&self, omega: &PForm) -> Result<PForm> {
        if omega.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: omega.n,
            });
        }
        if omega.p != self.p {
            return Err(Error::DegreeMismatch {
                expected: self.p,
                found: omega.p,
            });
        }
        Ok(PForm {
            n: self.n,
            p: self.p,
            coeffs: self.matrix.apply(&omega.coeffs),
        })
    }

    /// `⟨Tω, ω⟩`.
    pub fn quadratic(&self, omega: &PForm) -> Result<f64> {
        self.apply(omega)?.inner(omega)
    }

    pub fn compose(&self, other: &Self) -> Self {
        assert!(
            self.n == other.n && self.p == other.p,
            "operator shapes differ"
        );
        Self {
            n: self.n,
            p: self.p,
            matrix: &self.matrix * &other.matrix,
        }
    }

    pub fn transpose(&self) -> Self {
        Self {
            n: self.n,
            p: self.p,
            matrix: self.matrix.transpose(),
        }
    }

    /// `self + s·Id`.
    pub fn shift(&self, s: f64) -> Self {
        Self {
            n: self.n,
            p: self.p,
            matrix: self.matrix.shift(s),
        }
    }

    /// `⋆ ∘ T ∘ ⋆⁻¹`, an operator on `Λ^{n−p}`.
    pub fn hodge_conjugate(&self) -> Self {
        let star = hodge_star_matrix(self.n, self.p).expect("valid shape");
        // ⋆ is orthogonal, so ⋆⁻¹ = ⋆ᵀ
        let m = &(&star * &self.matrix) * &star.transpose();
        Self {
            n: self.n,
            p: self.n - self.p,
            matrix: m,
        }
    }
}

/// Matrix of the derivation of `Λ^p` that agrees with `a` on `Λ¹`.
///
/// On 1-forms `a` acts by `a(η^j) = Σᵢ a_ij ηⁱ`, so `derivation_extend(a, 1)`
/// is `a` itself, and on `Λ^p` the Leibniz rule gives
/// `a(η^{i₁}∧…∧η^{i_p}) = Σ_k η^{i₁}∧…∧a(η^{i_k})∧…∧η^{i_p}`. For symmetric `a`
/// this is `Σᵢ ηⁱ ∧ ι_{a eᵢ}`.
pub fn derivation_extend(a: &SquareMatrix, p: usize) -> Result<FormOperator> {
    let n = a.dim();
    let basis = Basis::new(n, p)?;
    let mut m = SquareMatrix::zeros(basis.len());
    for col in 0..basis.len() {
        let s = basis.bits(col);
        let mut rest = s;
        while rest != 0 {
            let k = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let without = s & !(1u32 << k);
            for i in 0..n {
                let aik = a[(i, k)];
                if aik == 0.0 {
                    continue;
                }
                if i == k {
                    m[(col, col)] += aik;
                    continue;
                }
                if without & (1u32 << i) != 0 {
                    continue;
                }
                // move η^i from slot k to its sorted position
                let (lo, hi) = if i < k { (i, k) } else { (k, i) };
                let between = (without >> (lo + 1)) & ((1u32 << (hi - lo - 1)) - 1);
                let sign = parity_sign(between.count_ones());
                m[(rank_bits(n, without | (1u32 << i)), col)] += sign * aik;
            }
        }
    }
    Ok(FormOperator { n, p, matrix: m })
}
