//! Model submanifolds with closed-form curvature and spectra: geodesic
//! spheres and the Clifford tori `S^p(μ/√(1+μ²)) × S^{n−p}(1/√(1+μ²))` in
//! the unit sphere `S^{n+1}`, plus the grid suite that checks every bound
//! against them.
//!
//! The intrinsic curvature of a model is built from its closed-form
//! sectional curvature table, not from the Gauss equation, so that
//! [`ModelSpace::gauss_consistency`] compares two independent routes.

use alloc::vec;
use alloc::vec::Vec;

use crate::bounds::{
    extrinsic_eigenvalue_bound, ricci_eigenvalue_bound, rigidity_threshold, simplified_bounds,
    sphere_thresholds, Ambient, Verdict,
};
use crate::curvature::{constant_curvature, gauss_intrinsic, CurvatureTensor, Validation};
use crate::math::{abs, sqrt};
use crate::submanifold::{p_curvature_beta, SecondFundamentalForm};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    GeodesicSphere,
    CliffordTorus,
}

/// First eigenvalues indexed by degree `q = 0..=n`; `None` where no closed
/// form is known (or the subspace is trivial).
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    /// `λ_{1,q}` on all `q`-forms, counting harmonic forms.
    pub first: Vec<Option<f64>>,
    /// `λ^e_{1,q}` on exact forms.
    pub exact: Vec<Option<f64>>,
    /// `λ^{ce}_{1,q}` on co-exact forms.
    pub coexact: Vec<Option<f64>>,
}

impl Spectrum {
    /// Largest `|λ_q − λ_{n−q}|` and `|λ^e_q − λ^{ce}_{n−q}|` over entries present on both sides.
    pub fn duality_defect(&self) -> f64 {
        let n = self.first.len() - 1;
        let mut worst = 0.0_f64;
        for q in 0..=n {
            if let (Some(a), Some(b)) = (self.first[q], self.first[n - q]) {
                worst = worst.max(abs(a - b));
            }
            if let (Some(a), Some(b)) = (self.exact[q], self.coexact[n - q]) {
                worst = worst.max(abs(a - b));
            }
        }
        worst
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelSpace {
    pub kind: ModelKind,
    pub n: usize,
    pub m: usize,
    /// The sphere-factor dimension `p` of a torus.
    pub split: Option<usize>,
    /// `μ` for a torus, `|H|` for a sphere.
    pub parameter: f64,
    pub ambient_c: f64,
    pub second_fundamental_form: SecondFundamentalForm,
    pub intrinsic: CurvatureTensor,
    /// Degrees `q` with `b_q > 0`.
    pub nonzero_betti: Vec<usize>,
    pub spectrum: Spectrum,
}

impl ModelSpace {
    /// Largest entrywise gap between the stored intrinsic curvature and the
    /// Gauss-equation curvature of the stored second fundamental form.
    pub fn gauss_consistency(&self) -> Result<f64> {
        let gauss = gauss_intrinsic(
            &constant_curvature(self.n, self.ambient_c),
            &self.second_fundamental_form,
        )?;
        Ok(gauss.max_abs_diff(&self.intrinsic))
    }
}

/// `R_ijkl = K_ij (δ_ik δ_jl − δ_il δ_jk)`, the curvature of a metric that is
/// diagonal in curvature: every coordinate 2-plane is an eigenplane.
fn from_sectional(n: usize, k: impl Fn(usize, usize) -> f64) -> CurvatureTensor {
    CurvatureTensor::from_fn(
        n,
        |i, j, a, b| {
            if i == j {
                0.0
            } else if (a, b) == (i, j) {
                k(i, j)
            } else if (a, b) == (j, i) {
                -k(i, j)
            } else {
                0.0
            }
        },
        Validation::Full,
    )
    .expect("diagonal sectional tables satisfy the curvature symmetries")
}

/// Totally umbilic sphere in a space form of curvature `c`, with mean
/// curvature `|H|` along the first of `m` normal directions.
pub fn geodesic_sphere(n: usize, m: usize, ambient_c: f64, mean_norm: f64) -> Result<ModelSpace> {
    if n < 2 {
        return Err(Error::InvalidParameter(
            "sphere dimension must be at least 2",
        ));
    }
    if m == 0 {
        return Err(Error::InvalidParameter("codimension must be at least 1"));
    }
    let kappa = ambient_c + mean_norm * mean_norm;
    if kappa.is_nan() || kappa <= 0.0 {
        return Err(Error::InvalidParameter("c + |H|^2 must be positive"));
    }
    let mut h = vec![0.0; m * n * n];
    for i in 0..n {
        h[i * n + i] = mean_norm;
    }
    let b = SecondFundamentalForm::new(n, m, h)?;

    let exact: Vec<Option<f64>> = (0..=n)
        .map(|q| (q >= 1).then(|| (q * (n - q + 1)) as f64 * kappa))
        .collect();
    let coexact: Vec<Option<f64>> = (0..=n)
        .map(|q| (q < n).then(|| ((q + 1) * (n - q)) as f64 * kappa))
        .collect();
    let first = (0..=n)
        .map(|q| {
            if q == 0 || q == n {
                Some(0.0)
            } else {
                Some(exact[q].unwrap().min(coexact[q].unwrap()))
            }
        })
        .collect();

    Ok(ModelSpace {
        kind: ModelKind::GeodesicSphere,
        n,
        m,
        split: None,
        parameter: mean_norm,
        ambient_c,
        second_fundamental_form: b,
        intrinsic: constant_curvature(n, kappa),
        nonzero_betti: vec![0, n],
        spectrum: Spectrum {
            first,
            exact,
            coexact,
        },
    })
}

/// Closed-form extrinsic and intrinsic data of a Clifford torus.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CliffordClosedForms {
    pub mean_curvature: f64,
    pub norm2: f64,
    pub traceless_norm2: f64,
    /// Sectional curvature within the first factor, within the second, across.
    pub sectional: [f64; 3],
    /// Ricci curvature on the first factor and on the second.
    pub ricci: [f64; 2],
}

impl CliffordClosedForms {
    pub fn new(n: usize, p: usize, mu: f64) -> Self {
        let (nf, pf, qf) = (n as f64, p as f64, (n - p) as f64);
        let inv = 1.0 / mu;
        let s1 = 1.0 + inv * inv;
        let s2 = 1.0 + mu * mu;
        Self {
            mean_curvature: (pf * inv - qf * mu) / nf,
            norm2: pf * inv * inv + qf * mu * mu,
            traceless_norm2: pf * qf / nf * (inv + mu) * (inv + mu),
            sectional: [s1, s2, 0.0],
            ricci: [(pf - 1.0) * s1, (qf - 1.0) * s2],
        }
    }

    pub fn ricci_min(&self) -> f64 {
        self.ricci[0].min(self.ricci[1])
    }
}

/// `μ* = √((p−1)/(n−p−1))`, where the torus is Einstein; `None` unless `1 < p < n−1`.
pub fn critical_mu(n: usize, p: usize) -> Option<f64> {
    (p > 1 && p + 1 < n).then(|| sqrt((p - 1) as f64 / (n - p - 1) as f64))
}

pub fn clifford_torus(n: usize, p: usize, mu: f64) -> Result<ModelSpace> {
    if p == 0 || p >= n {
        return Err(Error::DegreeOutOfRange { p, n });
    }
    if !mu.is_finite() || mu <= 0.0 {
        return Err(Error::InvalidParameter("mu must be positive and finite"));
    }
    let principal: Vec<f64> = (0..n).map(|i| if i < p { 1.0 / mu } else { -mu }).collect();
    let b = SecondFundamentalForm::diagonal(&principal);
    let closed = CliffordClosedForms::new(n, p, mu);
    let intrinsic = from_sectional(n, |i, j| match (i < p, j < p) {
        (true, true) => closed.sectional[0],
        (false, false) => closed.sectional[1],
        _ => closed.sectional[2],
    });

    let mut first = vec![None; n + 1];
    first[0] = Some(0.0);
    first[n] = Some(0.0);
    first[p] = Some(0.0);
    first[n - p] = Some(0.0);
    let mut nonzero_betti = vec![0, p, n - p, n];
    nonzero_betti.sort_unstable();
    nonzero_betti.dedup();

    Ok(ModelSpace {
        kind: ModelKind::CliffordTorus,
        n,
        m: 1,
        split: Some(p),
        parameter: mu,
        ambient_c: 1.0,
        second_fundamental_form: b,
        intrinsic,
        nonzero_betti,
        spectrum: Spectrum {
            first,
            exact: vec![None; n + 1],
            coexact: vec![None; n + 1],
        },
    })
}

/// Parameter grid for [`sharpness_suite`].
#[derive(Clone, Debug, PartialEq)]
pub struct SharpnessGrid {
    pub dims: Vec<usize>,
    pub mus: Vec<f64>,
    /// Add `μ*` for every split where it is defined.
    pub include_critical: bool,
}

impl Default for SharpnessGrid {
    fn default() -> Self {
        let r3 = sqrt(3.0);
        Self {
            dims: (3..=10).collect(),
            mus: vec![0.25, 0.5, 1.0 / r3, 1.0, r3, 2.0, 4.0],
            include_critical: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SharpnessCheck {
    pub name: &'static str,
    pub verdict: Verdict,
    pub value: Option<f64>,
    pub residual: Option<f64>,
}

impl SharpnessCheck {
    fn skip(name: &'static str) -> Self {
        Self {
            name,
            verdict: Verdict::NotApplicable,
            value: None,
            residual: None,
        }
    }

    fn equality(name: &'static str, value: f64, residual: f64, tol: f64) -> Self {
        Self {
            name,
            verdict: if abs(residual) <= tol {
                Verdict::Holds
            } else {
                Verdict::Violated
            },
            value: Some(value),
            residual: Some(residual),
        }
    }

    fn nonpositive(name: &'static str, value: Option<f64>, tol: f64) -> Self {
        match value {
            None => Self::skip(name),
            Some(v) => Self {
                name,
                verdict: if v <= tol {
                    Verdict::Holds
                } else {
                    Verdict::Violated
                },
                value: Some(v),
                residual: Some(v.max(0.0)),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SharpnessPoint {
    pub n: usize,
    pub p: usize,
    pub mu: f64,
    pub critical: bool,
    pub checks: Vec<SharpnessCheck>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct SharpnessReport {
    pub points: Vec<SharpnessPoint>,
}

impl SharpnessReport {
    pub fn checks(&self) -> impl Iterator<Item = (&SharpnessPoint, &SharpnessCheck)> {
        self.points
            .iter()
            .flat_map(|pt| pt.checks.iter().map(move |c| (pt, c)))
    }

    pub fn count(&self, verdict: Verdict) -> usize {
        self.checks().filter(|(_, c)| c.verdict == verdict).count()
    }

    pub fn all_hold(&self) -> bool {
        self.count(Verdict::Violated) == 0
    }
}

/// `(n−2p)(pμ⁻¹ − (n−p)μ) ≤ 0`: the torus attains the rigidity threshold.
pub fn attains_rigidity_threshold(n: usize, p: usize, mu: f64) -> bool {
    let (nf, pf) = (n as f64, p as f64);
    (nf - 2.0 * pf) * (pf / mu - (nf - pf) * mu) <= 0.0
}

/// Runs the sharpness checks at one torus.
pub fn sharpness_point(n: usize, p: usize, mu: f64, tol: f64) -> Result<SharpnessPoint> {
    let model = clifford_torus(n, p, mu)?;
    let b = &model.second_fundamental_form;
    let closed = CliffordClosedForms::new(n, p, mu);
    let s = b.summarize();
    let c = model.ambient_c;
    let mut checks = Vec::new();

    // closed forms against quantities derived from B
    let gauss = gauss_intrinsic(&constant_curvature(n, c), b)?;
    let ric = gauss.ricci();
    let mut dev = abs(s.mean_curvature[0] - closed.mean_curvature)
        .max(abs(s.norm2 - closed.norm2))
        .max(abs(s.traceless_norm2 - closed.traceless_norm2));
    for i in 0..n {
        dev = dev.max(abs(ric[(i, i)] - closed.ricci[usize::from(i >= p)]));
    }
    dev = dev.max(model.gauss_consistency()?);
    let scale = closed.norm2.max(1.0);
    checks.push(SharpnessCheck::equality(
        "closed-forms",
        closed.norm2,
        dev / scale,
        tol,
    ));

    let alpha = rigidity_threshold(n, p, c, abs(closed.mean_curvature))
        .value
        .expect("c = 1 satisfies the hypothesis");
    checks.push(if attains_rigidity_threshold(n, p, mu) {
        SharpnessCheck::equality("rigidity-equality", alpha, s.norm2 - alpha, tol)
    } else {
        SharpnessCheck::skip("rigidity-equality")
    });

    let extrinsic = extrinsic_eigenvalue_bound(p, c, b).value;
    checks.push(if attains_rigidity_threshold(n, p, mu) {
        let v = extrinsic.expect("split is in range");
        SharpnessCheck::equality("extrinsic-bound-zero", v, v, tol)
    } else {
        SharpnessCheck::nonpositive("extrinsic-bound-zero", extrinsic, tol)
    });

    let ric_min = closed.ricci_min();
    let thresholds = sphere_thresholds(n, p, Ambient::Constant(c), s.mean_curvature_norm2);
    let mu_star = critical_mu(n, p);
    let critical = mu_star.is_some_and(|m| abs(m - mu) <= 1e-12 * m);
    checks.push(match thresholds.ricci_betti.value {
        Some(t) if p == 1 || p + 1 == n || critical => {
            SharpnessCheck::equality("ricci-threshold", t, ric_min - t, tol)
        }
        _ => SharpnessCheck::skip("ricci-threshold"),
    });

    // λ_{1,p} = 0, so no bound may be positive
    let simplified = simplified_bounds(p, c, b, 0.0);
    let ricci = ricci_eigenvalue_bound(n, p, c, c, ric_min, s.mean_curvature_norm2);
    checks.push(SharpnessCheck::nonpositive(
        "traceless-bound",
        simplified.traceless.value,
        tol,
    ));
    checks.push(SharpnessCheck::nonpositive(
        "full-norm-bound",
        simplified.full_norm.value,
        tol,
    ));
    checks.push(SharpnessCheck::nonpositive(
        "middle-degree-bound",
        simplified.middle_degree.value,
        tol,
    ));
    checks.push(SharpnessCheck::nonpositive("ricci-bound", ricci.value, tol));
    let beta = p_curvature_beta(
        s.principal_curvatures.as_deref().unwrap_or(&[]),
        p.min(n - p),
    )?;
    let q = p.min(n - p);
    checks.push(SharpnessCheck::nonpositive(
        "p-curvature-bound",
        Some((q * (n - q + 1)) as f64 * (c + beta)),
        tol,
    ));

    Ok(SharpnessPoint {
        n,
        p,
        mu,
        critical,
        checks,
    })
}

pub fn sharpness_suite(grid: &SharpnessGrid, tol: f64) -> Result<SharpnessReport> {
    let mut points = Vec::new();
    for &n in &grid.dims {
        for p in 1..n {
            let mut mus = grid.mus.clone();
            if grid.include_critical {
                if let Some(m) = critical_mu(n, p) {
                    if !mus.iter().any(|&x| abs(x - m) <= 1e-12 * m) {
                        mus.push(m);
                    }
                }
            }
            for mu in mus {
                points.push(sharpness_point(n, p, mu, tol)?);
            }
        }
    }
    Ok(SharpnessReport { points })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clifford_4_2_1() {
        let t = clifford_torus(4, 2, 1.0).unwrap();
        let s = t.second_fundamental_form.summarize();
        assert_eq!(
            (s.mean_curvature[0], s.norm2, s.traceless_norm2),
            (0.0, 4.0, 4.0)
        );
        assert_eq!(
            t.intrinsic.ricci(),
            crate::linalg::SquareMatrix::from_diagonal(&[2.0; 4])
        );
        assert_eq!(t.intrinsic.sectional(0, 1), 2.0);
        assert_eq!(t.intrinsic.sectional(0, 2), 0.0);
        assert!(t.gauss_consistency().unwrap() < 1e-12);
        assert_eq!(t.nonzero_betti, vec![0, 2, 4]);
        assert_eq!(t.spectrum.first[2], Some(0.0));
    }

    #[test]
    fn clifford_4_1_1() {
        let c = CliffordClosedForms::new(4, 1, 1.0);
        assert_eq!(
            (c.mean_curvature, c.norm2, c.traceless_norm2),
            (-0.5, 4.0, 3.0)
        );
        assert!(
            clifford_torus(4, 1, 1.0)
                .unwrap()
                .gauss_consistency()
                .unwrap()
                < 1e-12
        );
    }

    #[test]
    fn clifford_einstein_at_critical_mu() {
        for (n, p) in [(6, 2), (7, 3), (10, 4)] {
            let mu = critical_mu(n, p).unwrap();
            let ric = clifford_torus(n, p, mu).unwrap().intrinsic.ricci();
            let target = crate::linalg::SquareMatrix::identity(n).scale((n - 2) as f64);
            assert!(ric.max_abs_diff(&target) < 1e-12);
        }
        assert_eq!(critical_mu(5, 1), None);
        assert_eq!(critical_mu(5, 4), None);
    }

    #[test]
    fn clifford_rejects_bad_mu() {
        assert!(clifford_torus(4, 1, 0.0).is_err());
        assert!(clifford_torus(4, 1, -1.0).is_err());
        assert!(clifford_torus(4, 4, 1.0).is_err());
    }

    #[test]
    fn unit_sphere_spectrum() {
        let s = geodesic_sphere(5, 1, 0.0, 1.0).unwrap();
        for q in 1..5 {
            assert_eq!(s.spectrum.exact[q], Some((q * (6 - q)) as f64));
        }
        assert_eq!(s.spectrum.duality_defect(), 0.0);
        assert!(s.gauss_consistency().unwrap() < 1e-12);
        assert!(geodesic_sphere(3, 1, -1.0, 1.0).is_err());
    }

    #[test]
    fn sphere_in_codim_two() {
        let s = geodesic_sphere(4, 2, 0.5, 0.5).unwrap();
        assert!(s.gauss_consistency().unwrap() < 1e-12);
        assert_eq!(s.spectrum.first[2], Some(4.5));
    }

    #[test]
    fn sharpness_examples() {
        let pt = sharpness_point(4, 2, 1.0, 1e-10).unwrap();
        assert!(
            pt.checks.iter().all(|c| c.verdict == Verdict::Holds),
            "{pt:?}"
        );
        let pt = sharpness_point(4, 1, 1.0, 1e-10).unwrap();
        let rig = pt
            .checks
            .iter()
            .find(|c| c.name == "rigidity-equality")
            .unwrap();
        assert_eq!(rig.verdict, Verdict::Holds);
        let pt = sharpness_point(6, 2, critical_mu(6, 2).unwrap(), 1e-10).unwrap();
        assert!(pt.critical);
        let ric = pt
            .checks
            .iter()
            .find(|c| c.name == "ricci-threshold")
            .unwrap();
        assert_eq!(ric.verdict, Verdict::Holds);
    }

    #[test]
    fn default_grid_holds() {
        let report = sharpness_suite(&SharpnessGrid::default(), 1e-9).unwrap();
        let bad: Vec<_> = report
            .checks()
            .filter(|(_, c)| c.verdict == Verdict::Violated)
            .collect();
        assert!(bad.is_empty(), "{bad:?}");
    }
}
