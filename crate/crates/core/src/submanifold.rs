//! Second fundamental form data and the extrinsic quantities built from it.
//!
//! `h^α_ij` is stored for normal directions `α = 0..m` in an orthonormal
//! frame. The shape operator `A^α` has matrix `(h^α_ij)`, the mean curvature
//! vector is `H^α = tr(A^α)/n`, and the traceless part is
//! `Å^α = A^α − H^α·Id`.

use alloc::vec;
use alloc::vec::Vec;

use crate::bounds::stacked_opnorm;
use crate::curvature::{constant_curvature, gauss_intrinsic, weitzenboeck};
use crate::exterior::{derivation_extend, Basis, FormOperator, PForm};
use crate::linalg::SquareMatrix;
use crate::math::{abs, sqrt};
use crate::{Error, Result, SYMMETRY_TOL};

#[derive(Clone, Debug, PartialEq)]
pub struct SecondFundamentalForm {
    n: usize,
    m: usize,
    h: Vec<f64>,
}

impl SecondFundamentalForm {
    /// `h` in `(α, i, j)` order, `j` fastest. Symmetry in `(i, j)` is checked.
    pub fn new(n: usize, m: usize, h: Vec<f64>) -> Result<Self> {
        if h.len() != m * n * n {
            return Err(Error::DimensionMismatch {
                expected: m * n * n,
                found: h.len(),
            });
        }
        let b = Self { n, m, h };
        let scale = b.h.iter().map(|x| abs(*x)).fold(1.0, f64::max);
        let deviation = b.max_asymmetry();
        if deviation > SYMMETRY_TOL * scale {
            return Err(Error::NotSymmetric { deviation });
        }
        Ok(b)
    }

    pub fn zero(n: usize, m: usize) -> Self {
        Self {
            n,
            m,
            h: vec![0.0; m * n * n],
        }
    }

    /// One symmetric matrix per normal direction.
    pub fn from_shape_operators(shapes: &[SquareMatrix]) -> Result<Self> {
        let n = shapes.first().map_or(0, |a| a.dim());
        let mut h = Vec::with_capacity(shapes.len() * n * n);
        for a in shapes {
            if a.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: a.dim(),
                });
            }
            h.extend_from_slice(a.as_slice());
        }
        Self::new(n, shapes.len(), h)
    }

    /// Codimension-one form with the given principal curvatures.
    pub fn diagonal(principal: &[f64]) -> Self {
        Self::from_shape_operators(&[SquareMatrix::from_diagonal(principal)])
            .expect("diagonal is symmetric")
    }

    fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for a in 0..self.m {
            for i in 0..self.n {
                for j in (i + 1)..self.n {
                    worst = worst.max(abs(self.get(a, i, j) - self.get(a, j, i)));
                }
            }
        }
        worst
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn codim(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, alpha: usize, i: usize, j: usize) -> f64 {
        self.h[(alpha * self.n + i) * self.n + j]
    }

    pub fn shape_operator(&self, alpha: usize) -> SquareMatrix {
        SquareMatrix::from_fn(self.n, |i, j| self.get(alpha, i, j))
    }

    pub fn shape_operators(&self) -> Vec<SquareMatrix> {
        (0..self.m).map(|a| self.shape_operator(a)).collect()
    }

    /// `H^α = (1/n) Σ_i h^α_ii`.
    pub fn mean_curvature(&self) -> Vec<f64> {
        let n = self.n as f64;
        (0..self.m)
            .map(|a| (0..self.n).map(|i| self.get(a, i, i)).sum::<f64>() / n)
            .collect()
    }

    /// `B̊ = B − H⊗g`.
    pub fn traceless(&self) -> Self {
        let mean = self.mean_curvature();
        let mut out = self.clone();
        for (a, h) in mean.iter().enumerate() {
            for i in 0..self.n {
                out.h[(a * self.n + i) * self.n + i] -= h;
            }
        }
        out
    }

    /// `|B|² = Σ (h^α_ij)²`.
    pub fn norm2(&self) -> f64 {
        self.h.iter().map(|x| x * x).sum()
    }

    pub fn summarize(&self) -> ExtrinsicSummary {
        let mean_curvature = self.mean_curvature();
        let principal_curvatures = if self.m == 1 {
            self.shape_operator(0).symmetric_eigenvalues().ok()
        } else {
            None
        };
        ExtrinsicSummary {
            n: self.n,
            mean_curvature_norm2: mean_curvature.iter().map(|x| x * x).sum(),
            mean_curvature,
            norm2: self.norm2(),
            traceless_norm2: self.traceless().norm2(),
            principal_curvatures,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtrinsicSummary {
    pub n: usize,
    /// Components `H^α`.
    pub mean_curvature: Vec<f64>,
    /// `|H|²`
    pub mean_curvature_norm2: f64,
    /// `|B|²`
    pub norm2: f64,
    /// `|B̊|²`
    pub traceless_norm2: f64,
    /// Ascending principal curvatures; codimension one only.
    pub principal_curvatures: Option<Vec<f64>>,
}

impl ExtrinsicSummary {
    pub fn mean_curvature_norm(&self) -> f64 {
        sqrt(self.mean_curvature_norm2)
    }

    pub fn traceless_norm(&self) -> f64 {
        sqrt(self.traceless_norm2)
    }

    pub fn gamma(&self, p: usize) -> f64 {
        gamma_p(self.n, p, self.traceless_norm2, self.mean_curvature_norm2)
    }
}

/// The pointwise extrinsic curvature term
/// `−|B̊|²/n − (n−2p)|H||B̊|/√(np(n−p)) + |H|²`.
pub fn gamma_p(n: usize, p: usize, traceless_norm2: f64, mean_norm2: f64) -> f64 {
    let (nf, pf) = (n as f64, p as f64);
    -traceless_norm2 / nf
        - (nf - 2.0 * pf) * sqrt(mean_norm2) * sqrt(traceless_norm2) / sqrt(nf * pf * (nf - pf))
        + mean_norm2
}

/// The derivation extensions `S^α` of the shape operators to `Λ^p`, and the
/// traceless variants `S̊^α` built from `Å^α`.
#[derive(Clone, Debug)]
pub struct ShapeExtension {
    pub full: Vec<FormOperator>,
    pub traceless: Vec<FormOperator>,
}

pub fn shape_extension(b: &SecondFundamentalForm, p: usize) -> Result<ShapeExtension> {
    let mean = b.mean_curvature();
    let mut full = Vec::with_capacity(b.m);
    let mut traceless = Vec::with_capacity(b.m);
    for (alpha, h) in mean.iter().enumerate() {
        let a = b.shape_operator(alpha);
        full.push(derivation_extend(&a, p)?);
        traceless.push(derivation_extend(&a.shift(-h), p)?);
    }
    Ok(ShapeExtension { full, traceless })
}

/// `Σ_i η^i ∧ ι_{A^α(e_i)} ω`, evaluated directly on the form.
pub fn shape_wedge_interior(
    b: &SecondFundamentalForm,
    alpha: usize,
    omega: &PForm,
) -> Result<PForm> {
    let n = b.n;
    if omega.ambient_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: omega.ambient_dim(),
        });
    }
    if alpha >= b.m {
        return Err(Error::IndexOutOfRange {
            index: alpha,
            n: b.m,
        });
    }
    let a = b.shape_operator(alpha);
    let mut out = PForm::zero(n, omega.degree())?;
    if omega.degree() == 0 {
        return Ok(out);
    }
    for i in 0..n {
        // A(e_i) = Σ_j a_ji e_j
        let column: Vec<f64> = (0..n).map(|j| a[(j, i)]).collect();
        out.add_scaled(1.0, &omega.interior(&column)?.left_wedge_frame(i)?);
    }
    Ok(out)
}

/// The terms of the gap identity
/// `⟨Wω,ω⟩ − ⟨i*W̄ω,ω⟩ + |S(ω) − (n/2)Hω|² − (n²/4)|H|²|ω|² = 0`
/// for a submanifold of a space form of curvature `c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapIdentity {
    /// `⟨W^[p]ω, ω⟩` with `W` built from the Gauss-equation curvature.
    pub intrinsic: f64,
    /// `⟨i*W̄^[p]ω, ω⟩`.
    pub ambient: f64,
    /// `Σ_α |S^α ω − (n/2) H^α ω|²`.
    pub shape_defect: f64,
    /// `(n²/4)|H|²|ω|²`.
    pub mean_term: f64,
}

impl GapIdentity {
    pub fn residual(&self) -> f64 {
        self.intrinsic - self.ambient + self.shape_defect - self.mean_term
    }
}

pub fn gap_identity(
    ambient_c: f64,
    b: &SecondFundamentalForm,
    p: usize,
    omega: &PForm,
) -> Result<GapIdentity> {
    let n = b.n;
    let ambient_r = constant_curvature(n, ambient_c);
    let intrinsic_r = gauss_intrinsic(&ambient_r, b)?;
    let intrinsic = weitzenboeck(&intrinsic_r, p)?.quadratic(omega)?;
    let ambient = weitzenboeck(&ambient_r, p)?.quadratic(omega)?;
    let ext = shape_extension(b, p)?;
    let mean = b.mean_curvature();
    let half_n = n as f64 / 2.0;
    let mut shape_defect = 0.0;
    for (s, h) in ext.full.iter().zip(&mean) {
        let mut v = s.apply(omega)?;
        v.add_scaled(-half_n * h, omega);
        shape_defect += v.norm2();
    }
    let mean_norm2: f64 = mean.iter().map(|x| x * x).sum();
    Ok(GapIdentity {
        intrinsic,
        ambient,
        shape_defect,
        mean_term: half_n * half_n * mean_norm2 * omega.norm2(),
    })
}

/// Residual of the gap identity; vanishes up to rounding.
pub fn gap_identity_residual(
    ambient_c: f64,
    b: &SecondFundamentalForm,
    p: usize,
    omega: &PForm,
) -> Result<f64> {
    Ok(gap_identity(ambient_c, b, p, omega)?.residual())
}

/// Lawson–Simons quantity
/// `Σ_{i<p} Σ_{j≥p} Σ_α (2(h^α_ij)² − h^α_ii h^α_jj)` in the frame
/// `e_{perm[0]}, …, e_{perm[n−1]}`: the first `p` entries of `perm` span
/// the `p`-plane.
pub fn ls_quantity(b: &SecondFundamentalForm, p: usize, perm: &[usize]) -> Result<f64> {
    let n = b.n;
    if p == 0 || p >= n {
        return Err(Error::DegreeOutOfRange { p, n });
    }
    if perm.len() != n {
        return Err(Error::NotAPermutation(n));
    }
    let mut seen = vec![false; n];
    for &i in perm {
        if i >= n || seen[i] {
            return Err(Error::NotAPermutation(n));
        }
        seen[i] = true;
    }
    let mut total = 0.0;
    for &i in &perm[..p] {
        for &j in &perm[p..] {
            for a in 0..b.m {
                let hij = b.get(a, i, j);
                total += 2.0 * hij * hij - b.get(a, i, i) * b.get(a, j, j);
            }
        }
    }
    Ok(total)
}

/// `β_p = (1/(p(n−p))) min_α K_α K_{α⋆}` over all `p`-subsets, where
/// `K_α` is the sum of the principal curvatures indexed by `α`.
pub fn p_curvature_beta(principal: &[f64], p: usize) -> Result<f64> {
    let n = principal.len();
    if p == 0 || p >= n {
        return Err(Error::DegreeOutOfRange { p, n });
    }
    let total: f64 = principal.iter().sum();
    let basis = Basis::new(n, p)?;
    let min = basis
        .iter()
        .map(|alpha| {
            let k: f64 = alpha.indices().map(|i| principal[i]).sum();
            k * (total - k)
        })
        .fold(f64::INFINITY, f64::min);
    Ok(min / (p * (n - p)) as f64)
}

/// Squared operator norm of `ω ↦ (S̊¹ω, …, S̊^mω)` on `Λ^p`.
pub fn traceless_shape_opnorm2(b: &SecondFundamentalForm, p: usize) -> Result<f64> {
    stacked_opnorm(&shape_extension(b, p)?.traceless)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clifford_4_1_summary() {
        let s = SecondFundamentalForm::diagonal(&[1.0, -1.0, -1.0, -1.0]).summarize();
        assert_eq!(s.mean_curvature, vec![-0.5]);
        assert_eq!(s.norm2, 4.0);
        assert!((s.traceless_norm2 - 3.0).abs() < 1e-15);
        assert!((s.norm2 - s.traceless_norm2 - 4.0 * s.mean_curvature_norm2).abs() < 1e-15);
        assert_eq!(s.principal_curvatures.unwrap(), vec![-1.0, -1.0, -1.0, 1.0]);
    }

    #[test]
    fn umbilic_and_zero() {
        let s = SecondFundamentalForm::diagonal(&[1.0; 5]).summarize();
        assert_eq!(s.mean_curvature, vec![1.0]);
        assert_eq!(s.traceless_norm2, 0.0);
        let z = SecondFundamentalForm::zero(4, 2).summarize();
        assert_eq!(
            (z.norm2, z.traceless_norm2, z.mean_curvature_norm2),
            (0.0, 0.0, 0.0)
        );
        assert_eq!(z.principal_curvatures, None);
    }

    #[test]
    fn rejects_asymmetric_h() {
        let h = vec![0.0, 1.0, 0.5, 0.0];
        assert!(matches!(
            SecondFundamentalForm::new(2, 1, h),
            Err(Error::NotSymmetric { .. })
        ));
    }

    #[test]
    fn umbilic_shape_extension_is_scalar() {
        let k = 1.7;
        let ext = shape_extension(&SecondFundamentalForm::diagonal(&[k; 5]), 3).unwrap();
        let expect = SquareMatrix::identity(10).scale(3.0 * k);
        assert!(ext.full[0].matrix().max_abs_diff(&expect) < 1e-14);
        assert!(ext.traceless[0].matrix().max_abs() < 1e-14);
    }

    #[test]
    fn clifford_traceless_spectrum() {
        let ext =
            shape_extension(&SecondFundamentalForm::diagonal(&[1.0, 1.0, -1.0, -1.0]), 2).unwrap();
        let ev = ext.traceless[0].matrix().symmetric_eigenvalues().unwrap();
        assert_eq!(ev, vec![-2.0, 0.0, 0.0, 0.0, 0.0, 2.0]);
        let one = shape_extension(&SecondFundamentalForm::diagonal(&[3.0, 1.0, -1.0]), 1).unwrap();
        assert!(one.traceless[0].matrix().trace().abs() < 1e-15);
    }

    #[test]
    fn unit_sphere_gap_identity() {
        let b = SecondFundamentalForm::diagonal(&[1.0; 5]);
        for p in 1..5 {
            let omega = PForm::from_coeffs(
                5,
                p,
                (0..crate::exterior::binomial(5, p))
                    .map(|i| 0.3 + i as f64)
                    .collect(),
            )
            .unwrap();
            let g = gap_identity(0.0, &b, p, &omega).unwrap();
            assert!(g.residual().abs() < 1e-10 * omega.norm2());
            let expect = (p * (5 - p)) as f64 * omega.norm2();
            assert!((g.intrinsic - expect).abs() < 1e-10 * expect);
        }
    }

    #[test]
    fn zero_b_gap_identity() {
        let omega = PForm::monomial(4, &[0, 2]).unwrap();
        let g = gap_identity(0.7, &SecondFundamentalForm::zero(4, 2), 2, &omega).unwrap();
        assert!(g.residual().abs() < 1e-14);
        assert_eq!(g.shape_defect, 0.0);
    }

    #[test]
    fn ls_quantity_examples() {
        let cliff = SecondFundamentalForm::diagonal(&[1.0, 1.0, -1.0, -1.0]);
        assert_eq!(ls_quantity(&cliff, 2, &[0, 1, 2, 3]).unwrap(), 4.0);
        let umb = SecondFundamentalForm::diagonal(&[1.0; 4]);
        assert_eq!(ls_quantity(&umb, 1, &[0, 1, 2, 3]).unwrap(), -3.0);
        assert_eq!(
            ls_quantity(&SecondFundamentalForm::zero(4, 2), 2, &[3, 1, 2, 0]).unwrap(),
            0.0
        );
        assert!(matches!(
            ls_quantity(&cliff, 2, &[0, 1, 1, 3]),
            Err(Error::NotAPermutation(4))
        ));
    }

    #[test]
    fn beta_examples() {
        assert_eq!(p_curvature_beta(&[1.0; 4], 2).unwrap(), 1.0);
        assert_eq!(p_curvature_beta(&[1.0, 1.0, -1.0, -1.0], 2).unwrap(), -1.0);
        assert_eq!(p_curvature_beta(&[2.0, 2.0, 2.0], 1).unwrap(), 4.0);
        assert!(p_curvature_beta(&[1.0, 2.0], 2).is_err());
    }

    #[test]
    fn gamma_examples() {
        let umb = SecondFundamentalForm::diagonal(&[0.5; 4]).summarize();
        assert!((umb.gamma(2) - 0.25).abs() < 1e-15);
        let c22 = SecondFundamentalForm::diagonal(&[1.0, 1.0, -1.0, -1.0]).summarize();
        assert!((c22.gamma(2) + 1.0).abs() < 1e-15);
        let c41 = SecondFundamentalForm::diagonal(&[1.0, -1.0, -1.0, -1.0]).summarize();
        assert!((c41.gamma(1) + 1.0).abs() < 1e-14);
    }

    #[test]
    fn clifford_traceless_opnorm_saturates() {
        let b = SecondFundamentalForm::diagonal(&[1.0, 1.0, -1.0, -1.0]);
        let lhs = traceless_shape_opnorm2(&b, 2).unwrap();
        assert!((lhs - 4.0).abs() < 1e-12);
    }
}
