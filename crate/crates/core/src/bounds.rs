//! Closed-form eigenvalue lower bounds, rigidity and homology-sphere
//! thresholds, and the operator-norm inequalities behind them.
//!
//! Every bound is returned as a [`BoundReport`]. A bound whose hypotheses
//! fail (degree out of range, negative curvature where nonnegativity is
//! required, a vanishing denominator, …) is reported as not applicable rather
//! than as an error. Degrees above `n/2` are evaluated at `n − p` and flagged,
//! since `λ_{1,p} = λ_{1,n−p}`.
//!
//! Quantities minimized over the manifold (such as `Ric_min`) are taken at the
//! single point supplied; the caller takes minima over its own grid.

use alloc::vec::Vec;

use crate::curvature::{constant_curvature, gauss_intrinsic};
use crate::exterior::{derivation_extend, FormOperator, PForm};
use crate::linalg::SquareMatrix;
use crate::math::{abs, sqrt};
use crate::submanifold::{ls_quantity, shape_extension, SecondFundamentalForm};
use crate::{Error, Result};

/// Denominators below this are treated as vanishing.
const DENOMINATOR_EPS: f64 = 1e-12;

/// Outcome of comparing a quantity against a bound or threshold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Violated,
    NotApplicable,
}

/// Which side of the reported value the compared quantity has to lie on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `quantity ≥ value` (eigenvalue lower bounds, Ricci thresholds).
    AtLeast,
    /// `quantity ≤ value` (pinching thresholds on `|B|²`, `|B̊|²`).
    AtMost,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub name: &'static str,
    pub inputs: Vec<(&'static str, f64)>,
    /// `None` exactly when a hypothesis fails.
    pub value: Option<f64>,
    pub direction: Direction,
    /// Degree actually used when `p > n/2` was mapped to `n − p`.
    pub dual_degree: Option<usize>,
    pub reason: Option<&'static str>,
}

impl BoundReport {
    fn new(name: &'static str, direction: Direction, inputs: Vec<(&'static str, f64)>) -> Self {
        Self {
            name,
            inputs,
            value: None,
            direction,
            dual_degree: None,
            reason: None,
        }
    }

    fn with_value(mut self, value: f64) -> Self {
        self.value = Some(value);
        self
    }

    fn not_applicable(mut self, reason: &'static str) -> Self {
        self.value = None;
        self.reason = Some(reason);
        self
    }

    pub fn is_applicable(&self) -> bool {
        self.value.is_some()
    }

    /// Compares `quantity` against the value in the report's direction.
    pub fn satisfied(&self, quantity: f64, tol: f64) -> Verdict {
        match (self.value, self.direction) {
            (None, _) => Verdict::NotApplicable,
            (Some(v), Direction::AtLeast) if quantity >= v - tol => Verdict::Holds,
            (Some(v), Direction::AtMost) if quantity <= v + tol => Verdict::Holds,
            _ => Verdict::Violated,
        }
    }
}

/// Curvature hypothesis on the ambient space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Ambient {
    /// Space form of sectional curvature `c`.
    Constant(f64),
    /// `i*W̄^[p] ≥ p(n−p)·lower` and `i*W̄^[1] ≤ (n−1)·upper`.
    Pinched { lower: f64, upper: f64 },
}

impl Ambient {
    pub fn lower(&self) -> f64 {
        match *self {
            Ambient::Constant(c) => c,
            Ambient::Pinched { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> f64 {
        match *self {
            Ambient::Constant(c) => c,
            Ambient::Pinched { upper, .. } => upper,
        }
    }

    /// The constant curvature, if the ambient is (or collapses to) a space form.
    pub fn constant(&self) -> Option<f64> {
        match *self {
            Ambient::Constant(c) => Some(c),
            Ambient::Pinched { lower, upper } if lower == upper => Some(lower),
            Ambient::Pinched { .. } => None,
        }
    }
}

/// `p ↦ min(p, n − p)` for `1 ≤ p ≤ n − 1`, with a flag when it changed.
fn working_degree(n: usize, p: usize) -> Option<(usize, bool)> {
    if p == 0 || p >= n {
        None
    } else if 2 * p <= n {
        Some((p, false))
    } else {
        Some((n - p, true))
    }
}

/// `(n+2)p(n−p) − n²`.
pub fn ricci_denominator(n: usize, p: usize) -> f64 {
    let (nf, q) = (n as f64, (p * (n - p)) as f64);
    (nf + 2.0) * q - nf * nf
}

/// `(n−2)p(n−p) / ((n+2)p(n−p) − n²)`, the weight of the lower ambient bound.
fn ricci_weight(n: usize, p: usize) -> Option<f64> {
    let d = ricci_denominator(n, p);
    if d <= DENOMINATOR_EPS {
        None
    } else {
        Some((n as f64 - 2.0) * (p * (n - p)) as f64 / d)
    }
}

/// `λ_{1,p} ≥ p(n−p+1)Λ` when `W^[p] ≥ p(n−p)Λ`.
pub fn gallot_meyer_bound(n: usize, p: usize, lambda: f64) -> BoundReport {
    let report = BoundReport::new(
        "gallot-meyer",
        Direction::AtLeast,
        alloc::vec![("n", n as f64), ("p", p as f64), ("lambda", lambda)],
    );
    let Some((q, dual)) = working_degree(n, p) else {
        return report.not_applicable("degree must satisfy 1 <= p <= n-1");
    };
    let mut report = report.with_value((q * (n - q + 1)) as f64 * lambda);
    if dual {
        report.dual_degree = Some(q);
    }
    report
}

/// `λ_{1,p} ≥ p(n−p+1)(c + γ_p)` for ambient `i*W̄^[p] ≥ p(n−p)c`.
pub fn extrinsic_eigenvalue_bound(p: usize, c: f64, b: &SecondFundamentalForm) -> BoundReport {
    let n = b.dim();
    let s = b.summarize();
    let report = BoundReport::new(
        "extrinsic",
        Direction::AtLeast,
        alloc::vec![
            ("n", n as f64),
            ("p", p as f64),
            ("c", c),
            ("mean_norm2", s.mean_curvature_norm2),
            ("traceless_norm2", s.traceless_norm2),
        ],
    );
    let Some((q, dual)) = working_degree(n, p) else {
        return report.not_applicable("degree must satisfy 1 <= p <= n-1");
    };
    let scale = (q * (n - q + 1)) as f64;
    let value = if s.traceless_norm2 == 0.0 {
        scale * (c + s.mean_curvature_norm2)
    } else {
        scale * (c + s.gamma(q))
    };
    let mut report = report.with_value(value);
    if dual {
        report.dual_degree = Some(q);
    }
    report
}

/// Weaker, simpler consequences of [`extrinsic_eigenvalue_bound`].
#[derive(Clone, Debug, PartialEq)]
pub struct SimplifiedBounds {
    /// `p(n−p+1)(c − n|B̊|²/(4p(n−p)))`
    pub traceless: BoundReport,
    /// `p(n−p+1)(c − |B|²/(2√(p(n−p))))`
    pub full_norm: BoundReport,
    /// `(n(n+2)/4)(c − |B̊|²/n + |H|²)`, middle degree of even `n` only.
    pub middle_degree: BoundReport,
    /// `p(n+1−p)(c − (n²/(4p(n−p)) + ε)|B̊|²/(n(1+ε)) − ε|H|²)`, `ε > −1`.
    pub young: BoundReport,
}

pub fn simplified_bounds(
    p: usize,
    c: f64,
    b: &SecondFundamentalForm,
    epsilon: f64,
) -> SimplifiedBounds {
    let n = b.dim();
    let s = b.summarize();
    let inputs = alloc::vec![
        ("n", n as f64),
        ("p", p as f64),
        ("c", c),
        ("mean_norm2", s.mean_curvature_norm2),
        ("traceless_norm2", s.traceless_norm2),
    ];
    let mk = |name| BoundReport::new(name, Direction::AtLeast, inputs.clone());
    let mut young_inputs = inputs.clone();
    young_inputs.push(("epsilon", epsilon));
    let young = BoundReport::new("young", Direction::AtLeast, young_inputs);

    let Some((q, dual)) = working_degree(n, p) else {
        let reason = "degree must satisfy 1 <= p <= n-1";
        return SimplifiedBounds {
            traceless: mk("traceless").not_applicable(reason),
            full_norm: mk("full-norm").not_applicable(reason),
            middle_degree: mk("middle-degree").not_applicable(reason),
            young: young.not_applicable(reason),
        };
    };
    let (nf, qq) = (n as f64, (q * (n - q)) as f64);
    let scale = (q * (n - q + 1)) as f64;
    let flag = |mut r: BoundReport| {
        if dual {
            r.dual_degree = Some(q);
        }
        r
    };

    let traceless =
        flag(mk("traceless").with_value(scale * (c - nf * s.traceless_norm2 / (4.0 * qq))));
    let full_norm = flag(mk("full-norm").with_value(scale * (c - s.norm2 / (2.0 * sqrt(qq)))));
    let middle_degree = if n.is_multiple_of(2) && 2 * q == n {
        mk("middle-degree").with_value(
            nf * (nf + 2.0) / 4.0 * (c - s.traceless_norm2 / nf + s.mean_curvature_norm2),
        )
    } else {
        mk("middle-degree").not_applicable("requires even n and p = n/2")
    };
    let young =
        if epsilon > -1.0 {
            let coeff = (nf * nf / (4.0 * qq) + epsilon) / (nf * (1.0 + epsilon));
            flag(young.with_value(
                scale * (c - coeff * s.traceless_norm2 - epsilon * s.mean_curvature_norm2),
            ))
        } else {
            young.not_applicable("requires epsilon > -1")
        };
    SimplifiedBounds {
        traceless,
        full_norm,
        middle_degree,
        young,
    }
}

/// Upper bound on `|B|²` for the rigidity of the `p`-th Betti number:
/// `nc + n³|H|²/(2p(n−p)) − n|n−2p||H|√(n²|H|² + 4cp(n−p))/(2p(n−p))`.
pub fn rigidity_threshold(n: usize, p: usize, c: f64, mean_norm: f64) -> BoundReport {
    let report = BoundReport::new(
        "rigidity",
        Direction::AtMost,
        alloc::vec![
            ("n", n as f64),
            ("p", p as f64),
            ("c", c),
            ("mean_norm", mean_norm)
        ],
    );
    if p == 0 || p >= n {
        return report.not_applicable("degree must satisfy 1 <= p <= n-1");
    }
    if c < 0.0 {
        return report.not_applicable("requires c >= 0");
    }
    let (nf, q) = (n as f64, (p * (n - p)) as f64);
    let h = abs(mean_norm);
    let value = nf * c + nf * nf * nf * h * h / (2.0 * q)
        - nf * abs(nf - 2.0 * p as f64) * h * sqrt(nf * nf * h * h + 4.0 * c * q) / (2.0 * q);
    report.with_value(value)
}

/// `|B̊|²/n + |n−2p||H||B̊|/√(np(n−p)) − |H|²`: the smallest `c` for which
/// the pointwise rigidity condition holds. `|B|² ≤ α(c,p,n,H)` is equivalent
/// to `c` being at least this value.
pub fn rigidity_curvature_requirement(
    n: usize,
    p: usize,
    traceless_norm2: f64,
    mean_norm2: f64,
) -> f64 {
    let (nf, pf) = (n as f64, p as f64);
    traceless_norm2 / nf
        + abs(nf - 2.0 * pf) * sqrt(mean_norm2) * sqrt(traceless_norm2) / sqrt(nf * pf * (nf - pf))
        - mean_norm2
}

/// Lower bound on `λ_{1,p}` from the minimum Ricci curvature, for
/// `i*W̄^[p] ≥ p(n−p)c_*` and `i*W̄^[1] ≤ (n−1)c^*`.
pub fn ricci_eigenvalue_bound(
    n: usize,
    p: usize,
    c_lower: f64,
    c_upper: f64,
    ric_min: f64,
    mean_norm2: f64,
) -> BoundReport {
    let report = BoundReport::new(
        "ricci",
        Direction::AtLeast,
        alloc::vec![
            ("n", n as f64),
            ("p", p as f64),
            ("c_lower", c_lower),
            ("c_upper", c_upper),
            ("ric_min", ric_min),
            ("mean_norm2", mean_norm2),
        ],
    );
    if n < 3 {
        return report.not_applicable("requires n >= 3");
    }
    if c_upper < c_lower {
        return report.not_applicable("requires c_upper >= c_lower");
    }
    let Some((q, dual)) = working_degree(n, p) else {
        return report.not_applicable("degree must satisfy 1 <= p <= n-1");
    };
    let Some(weight) = ricci_weight(n, q) else {
        return report.not_applicable("(n+2)p(n-p) - n^2 must be positive");
    };
    let nf = n as f64;
    let nq = (n - q) as f64;
    let d = ricci_denominator(n, q);
    let value = (nq + 1.0) / nq * d / (nf - 2.0)
        * (ric_min - (nf - 1.0) * (c_upper + mean_norm2) + weight * (c_lower + mean_norm2));
    let mut report = report.with_value(value);
    if dual {
        report.dual_degree = Some(q);
    }
    report
}

/// Curvature thresholds above which Betti numbers vanish or stable
/// currents cannot exist.
#[derive(Clone, Debug, PartialEq)]
pub struct SphereThresholds {
    /// `Ric > (n−1)(c^*+|H|²) − w_p(c_*+|H|²)` kills `b_p`; `w_p` is the Ricci weight.
    pub ricci_betti: BoundReport,
    /// The same threshold with the weight minimized over all `0 < p < n`:
    /// a homology sphere criterion.
    pub ricci_sphere: BoundReport,
    /// `Ric_(p)/p > (n−1 − w_p)(c+|H|²)` excludes stable `p`-currents (space forms).
    pub weak_ricci_currents: BoundReport,
    /// `Ric > n(n−1)(c+|H|²)/(n+2)` excludes stable 1-currents (space forms).
    pub ricci_one_currents: BoundReport,
    /// `|B̊|² ≤ 4cp(n−p)/n`.
    pub traceless_pinching: BoundReport,
    /// `|B|² ≤ 2c√(p(n−p))`.
    pub norm_pinching: BoundReport,
}

pub fn sphere_thresholds(
    n: usize,
    p: usize,
    ambient: Ambient,
    mean_norm2: f64,
) -> SphereThresholds {
    let (lo, hi) = (ambient.lower(), ambient.upper());
    let nf = n as f64;
    let inputs = alloc::vec![
        ("n", n as f64),
        ("p", p as f64),
        ("c_lower", lo),
        ("c_upper", hi),
        ("mean_norm2", mean_norm2),
    ];
    let mk = |name, dir| BoundReport::new(name, dir, inputs.clone());
    let p_ok = p > 0 && p < n;

    let ricci_betti = {
        let r = mk("ricci-betti", Direction::AtLeast);
        if n < 3 {
            r.not_applicable("requires n >= 3")
        } else if hi < lo {
            r.not_applicable("requires c_upper >= c_lower")
        } else if !p_ok {
            r.not_applicable("degree must satisfy 0 < p < n")
        } else {
            match ricci_weight(n, p) {
                Some(w) => r.with_value((nf - 1.0) * (hi + mean_norm2) - w * (lo + mean_norm2)),
                None => r.not_applicable("(n+2)p(n-p) - n^2 must be positive"),
            }
        }
    };

    let ricci_sphere = {
        let r = mk("ricci-sphere", Direction::AtLeast);
        if n < 3 {
            r.not_applicable("requires n >= 3")
        } else if hi < lo {
            r.not_applicable("requires c_upper >= c_lower")
        } else {
            let w = if n.is_multiple_of(2) {
                1.0
            } else {
                (nf - 2.0) * (nf * nf - 1.0) / (nf * nf * nf - 2.0 * nf * nf - nf - 2.0)
            };
            r.with_value((nf - 1.0) * (hi + mean_norm2) - w * (lo + mean_norm2))
        }
    };

    let space_form = ambient.constant();
    let weak_ricci_currents = {
        let r = mk("weak-ricci-currents", Direction::AtLeast);
        match space_form {
            None => r.not_applicable("requires a space-form ambient"),
            Some(c) if c < 0.0 => r.not_applicable("requires c >= 0"),
            Some(_) if n < 4 => r.not_applicable("requires n >= 4"),
            Some(_) if !(p > 1 && p + 1 < n) => r.not_applicable("degree must satisfy 1 < p < n-1"),
            Some(c) => match ricci_weight(n, p) {
                Some(w) => r.with_value((nf - 1.0 - w) * (c + mean_norm2)),
                None => r.not_applicable("(n+2)p(n-p) - n^2 must be positive"),
            },
        }
    };

    let ricci_one_currents = {
        let r = mk("ricci-one-currents", Direction::AtLeast);
        match space_form {
            None => r.not_applicable("requires a space-form ambient"),
            Some(c) if c < 0.0 => r.not_applicable("requires c >= 0"),
            Some(_) if n < 2 => r.not_applicable("requires n >= 2"),
            Some(c) => r.with_value(nf * (nf - 1.0) * (c + mean_norm2) / (nf + 2.0)),
        }
    };

    let pinching = |name, f: &dyn Fn(f64, f64) -> f64| {
        let r = mk(name, Direction::AtMost);
        if lo < 0.0 {
            r.not_applicable("requires c >= 0")
        } else if !p_ok {
            r.not_applicable("degree must satisfy 0 < p < n")
        } else {
            r.with_value(f(lo, (p * (n - p)) as f64))
        }
    };
    let traceless_pinching = pinching("traceless-pinching", &|c, q| 4.0 * c * q / nf);
    let norm_pinching = pinching("norm-pinching", &|c, q| 2.0 * c * sqrt(q));

    SphereThresholds {
        ricci_betti,
        ricci_sphere,
        weak_ricci_currents,
        ricci_one_currents,
        traceless_pinching,
        norm_pinching,
    }
}

/// `|A|₂` for symmetric `A`: the largest absolute eigenvalue.
pub fn spectral_norm(a: &SquareMatrix) -> Result<f64> {
    let e = a.symmetric_eigen()?;
    Ok(abs(e.min()).max(abs(e.max())))
}

/// Squared operator norm of `ω ↦ (T₁ω, …, T_mω)`: the largest eigenvalue of
/// `Σ Tᵢᵀ Tᵢ`. Returns the square, not the norm.
pub fn stacked_opnorm(ops: &[FormOperator]) -> Result<f64> {
    let Some(first) = ops.first() else {
        return Ok(0.0);
    };
    let mut gram = SquareMatrix::zeros(first.matrix().dim());
    for t in ops {
        if t.matrix().dim() != gram.dim() {
            return Err(Error::DimensionMismatch {
                expected: gram.dim(),
                found: t.matrix().dim(),
            });
        }
        gram = &gram + &(&t.matrix().transpose() * t.matrix());
    }
    // symmetrize away rounding before handing to the symmetric solver
    let gram = (&gram + &gram.transpose()).scale(0.5);
    Ok(gram.symmetric_eigen()?.max().max(0.0))
}

/// An inequality `lhs ≤ rhs` evaluated at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InequalityCheck {
    pub lhs: f64,
    pub rhs: f64,
}

impl InequalityCheck {
    pub fn holds(&self, tol: f64) -> bool {
        self.lhs <= self.rhs + tol
    }

    /// `rhs − lhs`; negative when violated.
    pub fn slack(&self) -> f64 {
        self.rhs - self.lhs
    }
}

/// `Σ_α |A^α ω|² ≤ p² |Σ_α (A^α)²|₂ |ω|²` for symmetric `A^α` acting on
/// `Λ^p` as derivations.
pub fn derivation_norm_check(shapes: &[SquareMatrix], omega: &PForm) -> Result<InequalityCheck> {
    let n = omega.ambient_dim();
    let p = omega.degree();
    let mut lhs = 0.0;
    let mut sum_sq = SquareMatrix::zeros(n);
    for a in shapes {
        if a.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: a.dim(),
            });
        }
        let deviation = a.max_asymmetry();
        if deviation > crate::SYMMETRY_TOL * a.max_abs().max(1.0) {
            return Err(Error::NotSymmetric { deviation });
        }
        lhs += derivation_extend(a, p)?.apply(omega)?.norm2();
        sum_sq = &sum_sq + &(a * a);
    }
    let sum_sq = (&sum_sq + &sum_sq.transpose()).scale(0.5);
    let pf = p as f64;
    Ok(InequalityCheck {
        lhs,
        rhs: pf * pf * spectral_norm(&sum_sq)? * omega.norm2(),
    })
}

/// The operator-norm chain behind the Ricci eigenvalue bound:
///
/// ```text
/// |S̊ − ((n−2p)/2)H|²_op − n²|H|²/4
///     ≤ ((n+2)p(n−p) − n²)/(n−2) · (|Σ_α (Å^α − ((n−2)/2)H^α Id)²|₂ − (n−2)²|H|²/4)
/// ```
///
/// on `Λ^p`, `1 ≤ p ≤ n/2`, `n ≥ 3`.
pub fn ricci_opnorm_chain(b: &SecondFundamentalForm, p: usize) -> Result<InequalityCheck> {
    let n = b.dim();
    if n < 3 {
        return Err(Error::InvalidParameter("requires n >= 3"));
    }
    if p == 0 || 2 * p > n {
        return Err(Error::DegreeOutOfRange { p, n });
    }
    let (nf, pf) = (n as f64, p as f64);
    let mean = b.mean_curvature();
    let mean_norm2: f64 = mean.iter().map(|x| x * x).sum();
    let ext = shape_extension(b, p)?;
    let shifted: Vec<FormOperator> = ext
        .traceless
        .iter()
        .zip(&mean)
        .map(|(s, h)| s.shift(-(nf - 2.0 * pf) / 2.0 * h))
        .collect();
    let lhs = stacked_opnorm(&shifted)? - nf * nf * mean_norm2 / 4.0;

    let mut sum_sq = SquareMatrix::zeros(n);
    for (alpha, h) in mean.iter().enumerate() {
        let a = b.shape_operator(alpha).shift(-h - (nf - 2.0) / 2.0 * h);
        sum_sq = &sum_sq + &(&a * &a);
    }
    let sum_sq = (&sum_sq + &sum_sq.transpose()).scale(0.5);
    let rhs = ricci_denominator(n, p) / (nf - 2.0)
        * (spectral_norm(&sum_sq)? - (nf - 2.0) * (nf - 2.0) * mean_norm2 / 4.0);
    Ok(InequalityCheck { lhs, rhs })
}

/// [`ricci_opnorm_chain`] with `p(n−p)|H|²` subtracted from the right side.
/// Equality holds for umbilic `B` as well as for the balanced Clifford pattern.
pub fn ricci_opnorm_chain_sharp(b: &SecondFundamentalForm, p: usize) -> Result<InequalityCheck> {
    let chk = ricci_opnorm_chain(b, p)?;
    let n = b.dim();
    let mean_norm2 = b.summarize().mean_curvature_norm2;
    Ok(InequalityCheck {
        lhs: chk.lhs,
        rhs: chk.rhs - (p * (n - p)) as f64 * mean_norm2,
    })
}

/// The Lawson–Simons quantity for a coordinate split against the bound
/// obtained from the weak Ricci curvature, for a submanifold of a space form
/// of curvature `c`:
///
/// ```text
/// LS ≤ ((n+2)p(n−p) − n²)/(n−2) · ((n−1)(c+|H|²) − Ric_(p)/p) − p(n−p)|H|²
/// ```
///
/// with `Ric_(p)` from the Gauss equation. Requires `2 ≤ p ≤ n/2`.
pub fn stable_current_chain(
    c: f64,
    b: &SecondFundamentalForm,
    p: usize,
    perm: &[usize],
) -> Result<InequalityCheck> {
    let n = b.dim();
    if p < 2 || 2 * p > n {
        return Err(Error::DegreeOutOfRange { p, n });
    }
    let lhs = ls_quantity(b, p, perm)?;
    let intrinsic = gauss_intrinsic(&constant_curvature(n, c), b)?;
    let ric_p = intrinsic.ricci_p_min(p)?;
    let (nf, pf) = (n as f64, p as f64);
    let mean_norm2 = b.summarize().mean_curvature_norm2;
    let rhs = ricci_denominator(n, p) / (nf - 2.0) * ((nf - 1.0) * (c + mean_norm2) - ric_p / pf)
        - pf * (nf - pf) * mean_norm2;
    Ok(InequalityCheck { lhs, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clifford22() -> SecondFundamentalForm {
        SecondFundamentalForm::diagonal(&[1.0, 1.0, -1.0, -1.0])
    }

    fn close(a: Option<f64>, b: f64) -> bool {
        a.is_some_and(|a| (a - b).abs() < 1e-12)
    }

    #[test]
    fn gallot_meyer_values() {
        assert_eq!(gallot_meyer_bound(4, 2, 1.0).value, Some(6.0));
        assert_eq!(gallot_meyer_bound(4, 2, 0.0).value, Some(0.0));
        assert_eq!(gallot_meyer_bound(5, 1, 2.0).value, Some(10.0));
        let dual = gallot_meyer_bound(5, 4, 2.0);
        assert_eq!((dual.value, dual.dual_degree), (Some(10.0), Some(1)));
        assert!(!gallot_meyer_bound(5, 0, 1.0).is_applicable());
    }

    #[test]
    fn extrinsic_examples() {
        assert!(close(
            extrinsic_eigenvalue_bound(2, 1.0, &clifford22()).value,
            0.0
        ));
        let sphere = SecondFundamentalForm::diagonal(&[1.0; 6]);
        for p in 1..6 {
            let q = p.min(6 - p);
            assert!(close(
                extrinsic_eigenvalue_bound(p, 0.0, &sphere).value,
                (q * (6 - q + 1)) as f64
            ));
        }
        assert!(close(
            extrinsic_eigenvalue_bound(1, 1.0, &SecondFundamentalForm::zero(4, 1)).value,
            4.0
        ));
        assert!(!extrinsic_eigenvalue_bound(4, 1.0, &clifford22()).is_applicable());
    }

    #[test]
    fn simplified_clifford_all_zero() {
        let s = simplified_bounds(2, 1.0, &clifford22(), 0.0);
        assert!(close(s.traceless.value, 0.0));
        assert!(close(s.full_norm.value, 0.0));
        assert!(close(s.middle_degree.value, 0.0));
        assert!(close(s.young.value, 0.0));
    }

    #[test]
    fn simplified_zero_b() {
        let b = SecondFundamentalForm::zero(5, 2);
        let s = simplified_bounds(2, 0.7, &b, 0.0);
        let expect = 2.0 * 4.0 * 0.7;
        assert!(close(s.traceless.value, expect));
        assert!(close(s.full_norm.value, expect));
        assert!(close(s.young.value, expect));
        assert_eq!(s.middle_degree.value, None);
        assert_eq!(simplified_bounds(2, 0.7, &b, -1.0).young.value, None);
    }

    #[test]
    fn rigidity_examples() {
        assert!(close(rigidity_threshold(4, 2, 1.0, 0.0).value, 4.0));
        assert!(close(rigidity_threshold(4, 1, 1.0, 0.5).value, 4.0));
        assert!(!rigidity_threshold(4, 1, -0.1, 0.5).is_applicable());
    }

    #[test]
    fn ricci_bound_examples() {
        assert!(close(
            ricci_eigenvalue_bound(4, 2, 1.0, 1.0, 2.0, 0.0).value,
            0.0
        ));
        assert!(close(
            ricci_eigenvalue_bound(4, 1, 1.0, 1.0, 3.0, 0.0).value,
            4.0
        ));
        assert!(!ricci_eigenvalue_bound(4, 1, 1.0, 0.5, 3.0, 0.0).is_applicable());
        assert!(!ricci_eigenvalue_bound(2, 1, 1.0, 1.0, 3.0, 0.0).is_applicable());
    }

    #[test]
    fn sphere_threshold_examples() {
        let t = sphere_thresholds(4, 2, Ambient::Constant(1.0), 0.0);
        assert!(close(t.ricci_betti.value, 2.0));
        assert!(close(t.ricci_sphere.value, 2.0));
        let odd = sphere_thresholds(
            5,
            2,
            Ambient::Pinched {
                lower: 1.0,
                upper: 1.0,
            },
            0.0,
        );
        assert!(close(odd.ricci_sphere.value, 50.0 / 17.0));
        let t41 = sphere_thresholds(4, 1, Ambient::Constant(1.0), 0.0);
        assert!(close(t41.traceless_pinching.value, 3.0));
        assert!(close(t41.norm_pinching.value, 2.0 * 3f64.sqrt()));
        assert!(close(t41.ricci_one_currents.value, 2.0));
        assert!(!t41.weak_ricci_currents.is_applicable());
        let pinched = sphere_thresholds(
            6,
            3,
            Ambient::Pinched {
                lower: 0.5,
                upper: 1.0,
            },
            0.0,
        );
        assert!(!pinched.weak_ricci_currents.is_applicable());
        assert!(pinched.ricci_betti.is_applicable());
    }

    #[test]
    fn verdict_directions() {
        let r = rigidity_threshold(4, 2, 1.0, 0.0);
        assert_eq!(r.satisfied(4.0, 1e-12), Verdict::Holds);
        assert_eq!(r.satisfied(4.1, 1e-12), Verdict::Violated);
        let e = extrinsic_eigenvalue_bound(2, 1.0, &clifford22());
        assert_eq!(e.satisfied(0.0, 1e-12), Verdict::Holds);
        assert_eq!(e.satisfied(-0.5, 1e-12), Verdict::Violated);
        assert_eq!(
            gallot_meyer_bound(3, 3, 1.0).satisfied(1.0, 0.0),
            Verdict::NotApplicable
        );
    }

    #[test]
    fn spectral_norm_examples() {
        assert_eq!(
            spectral_norm(&SquareMatrix::from_diagonal(&[1.0, 2.0, 3.0])).unwrap(),
            3.0
        );
        assert_eq!(
            spectral_norm(&SquareMatrix::from_diagonal(&[1.0, -4.0])).unwrap(),
            4.0
        );
        assert_eq!(spectral_norm(&SquareMatrix::zeros(3)).unwrap(), 0.0);
        let bad = SquareMatrix::from_rows(&[alloc::vec![0.0, 1.0], alloc::vec![0.0, 0.0]]).unwrap();
        assert!(spectral_norm(&bad).is_err());
    }

    #[test]
    fn derivation_norm_identity_equality() {
        let omega = PForm::from_coeffs(4, 2, alloc::vec![0.3, -1.0, 0.2, 0.5, 0.0, 2.0]).unwrap();
        let chk = derivation_norm_check(&[SquareMatrix::identity(4)], &omega).unwrap();
        assert!((chk.lhs - chk.rhs).abs() < 1e-12);
        assert!((chk.lhs - 4.0 * omega.norm2()).abs() < 1e-12);
    }

    #[test]
    fn opnorm_chain_clifford_equality() {
        let chk = ricci_opnorm_chain(&clifford22(), 2).unwrap();
        assert!((chk.lhs - 4.0).abs() < 1e-12);
        assert!((chk.rhs - 4.0).abs() < 1e-12);
    }

    #[test]
    fn opnorm_chain_umbilic() {
        let h = 0.8;
        let b = SecondFundamentalForm::diagonal(&[h; 5]);
        for p in 1..=2 {
            let chk = ricci_opnorm_chain(&b, p).unwrap();
            let expect = -((p * (5 - p)) as f64) * h * h;
            assert!((chk.lhs - expect).abs() < 1e-12);
            assert!(chk.rhs.abs() < 1e-12);
            let sharp = ricci_opnorm_chain_sharp(&b, p).unwrap();
            assert!((sharp.rhs - expect).abs() < 1e-12);
        }
        assert!(ricci_opnorm_chain(&b, 3).is_err());
    }

    #[test]
    fn stable_current_chain_clifford() {
        let chk = stable_current_chain(1.0, &clifford22(), 2, &[0, 1, 2, 3]).unwrap();
        // LS = 4, Ric ≡ 2, rhs = 4·(3 − 2) = 4
        assert!((chk.lhs - 4.0).abs() < 1e-12);
        assert!((chk.rhs - 4.0).abs() < 1e-12);
        assert!(stable_current_chain(1.0, &clifford22(), 1, &[0, 1, 2, 3]).is_err());
    }
}
