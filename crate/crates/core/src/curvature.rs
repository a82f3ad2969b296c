//! Algebraic curvature tensors, the Gauss equation and Weitzenböck operators.
//!
//! Index convention: `R_ijkl = ⟨𝓡(e_i∧e_j), e_k∧e_l⟩`, sectional curvature
//! `K_ij = R_ijij`, and `Ric_ij = Σ_k R_ikjk`, so the unit sphere has
//! `R_ijij = 1` and `Ric = (n−1)·Id`.
//!
//! The Weitzenböck operator on `Λ^p` is
//!
//! ```text
//! W^[p] = Σ R_ijkl (η^j∧ι_{e_i}) ∘ (η^k∧ι_{e_l})
//! ```
//!
//! With this index order `W^[1] = Ric` and constant curvature `c` gives
//! `W^[p] = p(n−p)c·Id`.

use alloc::vec;
use alloc::vec::Vec;

use crate::exterior::{
    binomial, interior_basis, left_mul_basis, Basis, FormOperator, MultiIndex, PForm,
};
use crate::linalg::SquareMatrix;
use crate::math::abs;
use crate::submanifold::SecondFundamentalForm;
use crate::{Error, Result, SYMMETRY_TOL};

/// Which identities [`CurvatureTensor::new`] enforces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validation {
    /// Pair antisymmetries, pair exchange and the first Bianchi identity.
    Full,
    /// Everything except Bianchi, for synthetic test tensors.
    SkipBianchi,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureTensor {
    n: usize,
    data: Vec<f64>,
}

impl CurvatureTensor {
    /// Wraps a dense `n⁴` array (index order `i, j, k, l`, `l` fastest).
    pub fn new(n: usize, data: Vec<f64>, validation: Validation) -> Result<Self> {
        if data.len() != n * n * n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n * n * n,
                found: data.len(),
            });
        }
        let r = Self { n, data };
        r.validate(validation)?;
        Ok(r)
    }

    pub fn from_fn(
        n: usize,
        mut f: impl FnMut(usize, usize, usize, usize) -> f64,
        validation: Validation,
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(n * n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        data.push(f(i, j, k, l));
                    }
                }
            }
        }
        Self::new(n, data, validation)
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n * n * n],
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.n + j) * self.n + k) * self.n + l
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.data[self.idx(i, j, k, l)]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Largest violation of `R_ijkl = −R_jikl = −R_ijlk = R_klij`.
    pub fn symmetry_deviation(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let r = self.get(i, j, k, l);
                        worst = worst
                            .max(abs(r + self.get(j, i, k, l)))
                            .max(abs(r + self.get(i, j, l, k)))
                            .max(abs(r - self.get(k, l, i, j)));
                    }
                }
            }
        }
        worst
    }

    /// Largest violation of `R_ijkl + R_iklj + R_iljk = 0`.
    pub fn bianchi_deviation(&self) -> f64 {
        let n = self.n;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let s = self.get(i, j, k, l) + self.get(i, k, l, j) + self.get(i, l, j, k);
                        worst = worst.max(abs(s));
                    }
                }
            }
        }
        worst
    }

    pub fn validate(&self, validation: Validation) -> Result<()> {
        let scale = self.data.iter().map(|x| abs(*x)).fold(1.0, f64::max);
        let tol = SYMMETRY_TOL * scale;
        let deviation = self.symmetry_deviation();
        if deviation > tol {
            return Err(Error::CurvatureSymmetry {
                symmetry: "pair symmetries",
                deviation,
            });
        }
        if validation == Validation::Full {
            let deviation = self.bianchi_deviation();
            if deviation > tol {
                return Err(Error::CurvatureSymmetry {
                    symmetry: "first Bianchi identity",
                    deviation,
                });
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.n, other.n, "tensor dimensions must agree");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| abs(a - b))
            .fold(0.0, f64::max)
    }

    #[inline]
    pub fn sectional(&self, i: usize, j: usize) -> f64 {
        self.get(i, j, i, j)
    }

    pub fn ricci(&self) -> SquareMatrix {
        let n = self.n;
        SquareMatrix::from_fn(n, |i, j| (0..n).map(|k| self.get(i, k, j, k)).sum())
    }

    pub fn scalar(&self) -> f64 {
        self.ricci().trace()
    }

    /// `Σ_{i∈α} Ric_ii`, the weak Ricci curvature of the coordinate `p`-plane `α`.
    pub fn p_weak_ricci(&self, alpha: &MultiIndex) -> Result<f64> {
        if alpha.ambient_dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: alpha.ambient_dim(),
            });
        }
        let ric = self.ricci();
        Ok(alpha.indices().map(|i| ric[(i, i)]).sum())
    }

    /// Minimum of `Ric(v, v)` over unit vectors: the smallest Ricci eigenvalue.
    pub fn ricci_min(&self) -> Result<f64> {
        Ok(self.ricci().symmetric_eigen()?.min())
    }

    /// Minimum of the weak Ricci curvature over all orthonormal `p`-frames.
    ///
    /// `Σ_{i≤p} Ric(e_i, e_i)` is a partial trace of `Ric`, so by Ky Fan its
    /// minimum over frames is the sum of the `p` smallest Ricci eigenvalues,
    /// attained in an eigenframe.
    pub fn ricci_p_min(&self, p: usize) -> Result<f64> {
        if p > self.n {
            return Err(Error::DegreeOutOfRange { p, n: self.n });
        }
        Ok(self.ricci().symmetric_eigenvalues()?.iter().take(p).sum())
    }

    pub fn curvature_operator(&self) -> CurvatureOperator {
        let n = self.n;
        let basis = Basis::new(n, 2).expect("n within range");
        let pairs: Vec<(usize, usize)> = basis
            .iter()
            .map(|a| {
                let mut it = a.indices();
                (it.next().unwrap(), it.next().unwrap())
            })
            .collect();
        let matrix = SquareMatrix::from_fn(pairs.len(), |a, b| {
            let (i, j) = pairs[a];
            let (k, l) = pairs[b];
            self.get(i, j, k, l)
        });
        CurvatureOperator { n, matrix }
    }
}

/// `𝓡 : Λ² → Λ²` in the orthonormal basis `e_i∧e_j` (`i < j`).
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureOperator {
    n: usize,
    matrix: SquareMatrix,
}

impl CurvatureOperator {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &SquareMatrix {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        self.matrix.symmetric_eigenvalues()
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(self.matrix.symmetric_eigen()?.min())
    }
}

/// Space-form curvature `R_ijkl = c(δ_ik δ_jl − δ_il δ_jk)`.
pub fn constant_curvature(n: usize, c: f64) -> CurvatureTensor {
    let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
    let mut r = CurvatureTensor::zero(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let idx = r.idx(i, j, k, l);
                    r.data[idx] = c * (d(i, k) * d(j, l) - d(i, l) * d(j, k));
                }
            }
        }
    }
    r
}

/// Gauss equation: `R_ijkl = R̄_ijkl + Σ_α (h^α_ik h^α_jl − h^α_il h^α_jk)`.
///
/// `ambient` is the ambient curvature restricted to tangent indices.
pub fn gauss_intrinsic(
    ambient: &CurvatureTensor,
    b: &SecondFundamentalForm,
) -> Result<CurvatureTensor> {
    let n = ambient.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: b.dim(),
        });
    }
    let mut r = ambient.clone();
    for alpha in 0..b.codim() {
        let h = |i, j| b.get(alpha, i, j);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let idx = r.idx(i, j, k, l);
                        r.data[idx] += h(i, k) * h(j, l) - h(i, l) * h(j, k);
                    }
                }
            }
        }
    }
    Ok(r)
}

/// Weitzenböck operator on `Λ^p`, built column by column from the sparse
/// action of `η^a ∧ ι_{e_b}` on basis forms.
pub fn weitzenboeck(r: &CurvatureTensor, p: usize) -> Result<FormOperator> {
    let n = r.dim();
    let basis = Basis::new(n, p)?;
    let mut m = SquareMatrix::zeros(binomial(n, p));
    for col in 0..basis.len() {
        let s = basis.bits(col);
        for l in 0..n {
            let Some((s_int, s_minus)) = interior_basis(l, s) else {
                continue;
            };
            for k in 0..n {
                let Some((s_mul, t)) = left_mul_basis(k, s_minus) else {
                    continue;
                };
                let sign_kl = s_int * s_mul;
                for i in 0..n {
                    let Some((t_int, t_minus)) = interior_basis(i, t) else {
                        continue;
                    };
                    for j in 0..n {
                        let Some((t_mul, u)) = left_mul_basis(j, t_minus) else {
                            continue;
                        };
                        let rijkl = r.get(i, j, k, l);
                        if rijkl != 0.0 {
                            m[(basis.rank(u), col)] += rijkl * sign_kl * t_int * t_mul;
                        }
                    }
                }
            }
        }
    }
    FormOperator::from_matrix(n, p, m)
}

/// `ad_{e_i∧e_j} ω`: the bivector `e_i∧e_j` acting by commutator in the
/// Clifford algebra, i.e. twice the derivation of the rotation
/// `e_j ↦ e_i, e_i ↦ −e_j`.
pub fn ad_bivector(omega: &PForm, i: usize, j: usize) -> Result<PForm> {
    let mut out = omega.interior_frame(j)?.left_wedge_frame(i)?;
    out.add_scaled(-1.0, &omega.interior_frame(i)?.left_wedge_frame(j)?);
    Ok(out.scale(2.0))
}

/// `⟨W^[p]ω, ω⟩` from the curvature operator:
/// `¼ Σ_{I,J} ⟨𝓡θ_I, θ_J⟩ ⟨ad_{θ_I}ω, ad_{θ_J}ω⟩` over the orthonormal
/// basis `θ_I = e_i∧e_j`, `i < j`.
///
/// Independent of [`weitzenboeck`]; the two agree to rounding.
pub fn weitzenboeck_quadratic(r: &CurvatureTensor, p: usize, omega: &PForm) -> Result<f64> {
    let n = r.dim();
    if omega.ambient_dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: omega.ambient_dim(),
        });
    }
    if omega.degree() != p {
        return Err(Error::DegreeMismatch {
            expected: p,
            found: omega.degree(),
        });
    }
    let mut pairs = Vec::new();
    let mut images = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
            images.push(ad_bivector(omega, i, j)?);
        }
    }
    let op = r.curvature_operator();
    let mut total = 0.0;
    for a in 0..pairs.len() {
        for b in 0..pairs.len() {
            let rab = op.matrix()[(a, b)];
            if rab != 0.0 {
                total += rab * images[a].inner(&images[b])?;
            }
        }
    }
    Ok(0.25 * total)
}
