//! Verification suites. Each suite returns report records; randomized checks
//! are aggregated into one record carrying the worst normalized residual.
//!
//! Per-check tolerances are fixed multiples of the configured tolerance, so
//! `HODGEBOUND_TOL` loosens or tightens every check together.

use hodgebound_core::bounds::{
    derivation_norm_check, extrinsic_eigenvalue_bound, gallot_meyer_bound, ricci_eigenvalue_bound,
    ricci_opnorm_chain, ricci_opnorm_chain_sharp, rigidity_curvature_requirement,
    rigidity_threshold, simplified_bounds, spectral_norm, sphere_thresholds, stable_current_chain,
    Ambient, InequalityCheck, Verdict,
};
use hodgebound_core::curvature::{
    constant_curvature, gauss_intrinsic, weitzenboeck, weitzenboeck_quadratic, CurvatureTensor,
};
use hodgebound_core::exterior::{
    binomial, derivation_extend, rank_subset, unrank_subset, Basis, MultiIndex, PForm,
};
use hodgebound_core::linalg::SquareMatrix;
use hodgebound_core::models::{
    clifford_torus, critical_mu, geodesic_sphere, sharpness_suite, SharpnessGrid,
};
use hodgebound_core::submanifold::{
    gap_identity, ls_quantity, p_curvature_beta, shape_extension, shape_wedge_interior,
    traceless_shape_opnorm2, SecondFundamentalForm,
};
use hodgebound_core::DEFAULT_TOL;
use rand::Rng;

use crate::report::{Fields, Record, Status};
use crate::sampling::{self, rng_for};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    All,
    Algebra,
    Curvature,
    Identities,
    Inequalities,
    Models,
}

impl Suite {
    pub fn parts(self) -> &'static [Suite] {
        match self {
            Suite::All => &[
                Suite::Algebra,
                Suite::Curvature,
                Suite::Identities,
                Suite::Inequalities,
                Suite::Models,
            ],
            Suite::Algebra => &[Suite::Algebra],
            Suite::Curvature => &[Suite::Curvature],
            Suite::Identities => &[Suite::Identities],
            Suite::Inequalities => &[Suite::Inequalities],
            Suite::Models => &[Suite::Models],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 200,
            tol: DEFAULT_TOL,
        }
    }
}

impl SuiteConfig {
    /// `base` rescaled by the configured tolerance relative to the default.
    pub fn tol_for(&self, base: f64) -> f64 {
        base * self.tol / DEFAULT_TOL
    }
}

pub fn run(suite: Suite, cfg: &SuiteConfig) -> Vec<Record> {
    let mut out = Vec::new();
    for part in suite.parts() {
        out.extend(match part {
            Suite::Algebra => algebra(cfg),
            Suite::Curvature => curvature(cfg),
            Suite::Identities => identities(cfg),
            Suite::Inequalities => inequalities(cfg),
            Suite::Models => models(cfg),
            Suite::All => unreachable!("expanded above"),
        });
    }
    out
}

/// Worst residual over many trials against one limit.
struct Tally {
    name: String,
    inputs: Fields,
    limit: f64,
    count: usize,
    worst: f64,
}

impl Tally {
    fn new(name: &str, limit: f64) -> Self {
        Self {
            name: name.to_owned(),
            inputs: Fields::new(),
            limit,
            count: 0,
            worst: 0.0,
        }
    }

    fn input(mut self, key: &str, value: impl Into<crate::report::Field>) -> Self {
        self.inputs.push(key, value);
        self
    }

    fn observe(&mut self, residual: f64) {
        self.count += 1;
        // NaN must poison the tally
        if residual.is_nan() || residual > self.worst {
            self.worst = residual;
        }
    }

    /// Records `max(0, lhs − rhs)/scale`.
    fn observe_ineq(&mut self, chk: InequalityCheck, scale: f64) {
        self.observe((chk.lhs - chk.rhs).max(0.0) / scale.max(1.0));
    }

    fn finish(self) -> Record {
        let status = Status::from_holds(self.worst <= self.limit);
        Record::new(self.name, status)
            .inputs(
                self.inputs
                    .with("trials", self.count)
                    .with("limit", self.limit),
            )
            .values(Fields::new().with("max_residual", self.worst))
            .residual(self.worst)
    }
}

/// A single value against its expected value.
fn exact(name: &str, got: f64, expected: f64, limit: f64) -> Record {
    let residual = (got - expected).abs();
    Record::new(name, Status::from_holds(residual <= limit))
        .inputs(Fields::new().with("limit", limit))
        .values(Fields::new().with("value", got).with("expected", expected))
        .residual(residual)
}

fn flag(name: &str, holds: bool) -> Record {
    Record::new(name, Status::from_holds(holds)).values(Fields::new().with("holds", holds))
}

fn form_diff(a: &PForm, b: &PForm) -> f64 {
    a.sub(b).map_or(f64::INFINITY, |d| d.max_abs())
}

fn max_abs(r: &CurvatureTensor) -> f64 {
    r.as_slice().iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn algebra(cfg: &SuiteConfig) -> Vec<Record> {
    let mut rng = rng_for(cfg.seed, "algebra");
    let exact_tol = cfg.tol_for(1e-12);
    let mut out = Vec::new();

    let mut bijection = true;
    for n in 1..=10 {
        for p in 0..=n {
            let mut seen = vec![false; binomial(n, p)];
            for (r, slot) in seen.iter_mut().enumerate() {
                let s = unrank_subset(n, p, r).expect("rank in range");
                let back = rank_subset(&s, p).expect("degree matches");
                bijection &= back == r && s.degree() == p && !*slot;
                *slot = true;
            }
            // lexicographic: consecutive basis elements increase as index tuples
            let basis = Basis::new(n, p).expect("n within cap");
            let tuples: Vec<Vec<usize>> = basis.iter().map(|a| a.indices().collect()).collect();
            bijection &= tuples.windows(2).all(|w| w[0] < w[1]);
        }
    }
    out.push(flag("algebra/rank-bijection", bijection));
    let rank = |n, idx: &[usize]| {
        rank_subset(&MultiIndex::new(n, idx).expect("valid subset"), idx.len()).unwrap()
    };
    out.push(exact(
        "algebra/rank-first",
        rank(4, &[0, 1]) as f64,
        0.0,
        0.0,
    ));
    out.push(exact(
        "algebra/rank-last",
        rank(4, &[2, 3]) as f64,
        5.0,
        0.0,
    ));
    out.push(flag(
        "algebra/rank-cardinality-mismatch",
        rank_subset(&MultiIndex::new(4, &[0, 1]).unwrap(), 3).is_err(),
    ));

    let mono = |idx: &[usize]| PForm::monomial(3, idx).expect("valid monomial");
    let top = mono(&[0, 1, 2]);
    out.push(exact(
        "algebra/wedge-example-ordered",
        mono(&[0])
            .wedge(&mono(&[1, 2]))
            .unwrap()
            .inner(&top)
            .unwrap(),
        1.0,
        0.0,
    ));
    out.push(exact(
        "algebra/wedge-example-transposed",
        mono(&[1])
            .wedge(&mono(&[0, 2]))
            .unwrap()
            .inner(&top)
            .unwrap(),
        -1.0,
        0.0,
    ));
    out.push(exact(
        "algebra/wedge-example-repeated",
        mono(&[0]).wedge(&mono(&[0])).unwrap().max_abs(),
        0.0,
        0.0,
    ));
    let e12 = PForm::monomial(2, &[0, 1]).unwrap();
    out.push(exact(
        "algebra/interior-example-first",
        form_diff(
            &e12.interior_frame(0).unwrap(),
            &PForm::monomial(2, &[1]).unwrap(),
        ),
        0.0,
        0.0,
    ));
    out.push(exact(
        "algebra/interior-example-second",
        form_diff(
            &e12.interior_frame(1).unwrap(),
            &PForm::monomial(2, &[0]).unwrap().scale(-1.0),
        ),
        0.0,
        0.0,
    ));
    out.push(exact(
        "algebra/hodge-example-one-form",
        form_diff(&mono(&[0]).hodge_star(), &mono(&[1, 2])),
        0.0,
        0.0,
    ));
    out.push(exact(
        "algebra/hodge-example-two-form",
        form_diff(&mono(&[0, 1]).hodge_star(), &mono(&[2])),
        0.0,
        0.0,
    ));
    let inner = |a: &[usize], b: &[usize]| {
        PForm::monomial(3, a)
            .unwrap()
            .inner(&PForm::monomial(3, b).unwrap())
            .unwrap()
    };
    out.push(exact(
        "algebra/inner-example-equal",
        inner(&[0, 1], &[0, 1]),
        1.0,
        0.0,
    ));
    out.push(exact(
        "algebra/inner-example-orthogonal",
        inner(&[0, 1], &[0, 2]),
        0.0,
        0.0,
    ));
    let id2 = derivation_extend(&SquareMatrix::identity(4), 2).unwrap();
    out.push(exact(
        "algebra/derivation-example-identity",
        id2.matrix()
            .max_abs_diff(&SquareMatrix::identity(6).scale(2.0)),
        0.0,
        0.0,
    ));
    let d = derivation_extend(&SquareMatrix::from_diagonal(&[1.0, 2.0, 3.0]), 2).unwrap();
    out.push(exact(
        "algebra/derivation-example-diagonal",
        d.matrix()
            .max_abs_diff(&SquareMatrix::from_diagonal(&[3.0, 4.0, 5.0])),
        0.0,
        0.0,
    ));

    let mut assoc = Tally::new("algebra/wedge-associativity", exact_tol);
    let mut graded = Tally::new("algebra/wedge-graded-commutativity", exact_tol);
    let mut anti = Tally::new("algebra/interior-antiderivation", exact_tol);
    let mut nil = Tally::new("algebra/interior-nilpotent", 0.0);
    let mut adjoint = Tally::new("algebra/interior-adjoint", exact_tol);
    let mut iso = Tally::new("algebra/hodge-isometry", exact_tol);
    let mut invol = Tally::new("algebra/hodge-involution", exact_tol);
    let mut cs = Tally::new("algebra/cauchy-schwarz", exact_tol);
    let mut routes = Tally::new("algebra/derivation-wedge-interior", cfg.tol_for(1e-10));
    let mut lin = Tally::new("algebra/derivation-linearity", exact_tol);
    let mut bracket = Tally::new("algebra/derivation-commutator", cfg.tol_for(1e-10));
    let mut deg1 = Tally::new("algebra/derivation-degree-one", 0.0);
    let mut sym = Tally::new("algebra/derivation-symmetric", exact_tol);
    for _ in 0..cfg.trials {
        let n = rng.random_range(2..=6);
        let p = rng.random_range(0..=n);
        let q = rng.random_range(0..=n - p);
        let r = rng.random_range(0..=n - p - q);
        let (a, b, c) = (
            sampling::form(&mut rng, n, p),
            sampling::form(&mut rng, n, q),
            sampling::form(&mut rng, n, r),
        );
        let scale = 1.0 + a.norm() * b.norm() * c.norm().max(1.0);
        let ab_c = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let a_bc = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        assoc.observe(form_diff(&ab_c, &a_bc) / scale);
        let sign = if p * q % 2 == 0 { 1.0 } else { -1.0 };
        graded.observe(form_diff(&a.wedge(&b).unwrap(), &b.wedge(&a).unwrap().scale(sign)) / scale);

        let x = sampling::normals(&mut rng, n);
        let lhs = a.wedge(&b).unwrap().interior(&x).unwrap();
        let mut rhs = PForm::zero(n, lhs.degree()).unwrap();
        if p > 0 {
            rhs.add_scaled(1.0, &a.interior(&x).unwrap().wedge(&b).unwrap());
        }
        if q > 0 {
            let s = if p % 2 == 0 { 1.0 } else { -1.0 };
            rhs.add_scaled(s, &a.wedge(&b.interior(&x).unwrap()).unwrap());
        }
        let xn = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        anti.observe(form_diff(&lhs, &rhs) / (1.0 + xn * a.norm() * b.norm()));

        let k = rng.random_range(0..n);
        nil.observe(
            a.interior_frame(k)
                .unwrap()
                .interior_frame(k)
                .unwrap()
                .max_abs(),
        );

        // adjointness by brute force over basis pairs
        let pp = rng.random_range(1..=n);
        let w = sampling::form(&mut rng, n, pp - 1);
        let t = sampling::form(&mut rng, n, pp);
        let mut brute = 0.0;
        for (i, ei) in Basis::new(n, pp - 1).unwrap().iter().enumerate() {
            let wedge = PForm::basis(&ei).left_wedge_frame(k).unwrap();
            for (j, ej) in Basis::new(n, pp).unwrap().iter().enumerate() {
                let lhs_ij = wedge.inner(&PForm::basis(&ej)).unwrap();
                let rhs_ij = PForm::basis(&ei)
                    .inner(&PForm::basis(&ej).interior_frame(k).unwrap())
                    .unwrap();
                brute += w.coeffs()[i] * t.coeffs()[j] * (lhs_ij - rhs_ij);
            }
        }
        let direct = w.left_wedge_frame(k).unwrap().inner(&t).unwrap()
            - w.inner(&t.interior_frame(k).unwrap()).unwrap();
        adjoint.observe(brute.abs().max(direct.abs()) / (1.0 + w.norm() * t.norm()));

        let s = a.hodge_star();
        iso.observe((s.norm2() - a.norm2()).abs() / (1.0 + a.norm2()));
        let sign = if p * (n - p) % 2 == 0 { 1.0 } else { -1.0 };
        invol.observe(form_diff(&s.hodge_star(), &a.scale(sign)) / (1.0 + a.norm()));

        let a2 = sampling::form(&mut rng, n, p);
        let ip = a.inner(&a2).unwrap();
        cs.observe((ip.abs() - a.norm() * a2.norm()).max(0.0) / (1.0 + a.norm() * a2.norm()));

        let dp = rng.random_range(1..n);
        let bsf = sampling::second_fundamental_form(&mut rng, n, 1);
        let omega = sampling::form(&mut rng, n, dp);
        let ext = derivation_extend(&bsf.shape_operator(0), dp).unwrap();
        let via = shape_wedge_interior(&bsf, 0, &omega).unwrap();
        routes.observe(form_diff(&ext.apply(&omega).unwrap(), &via) / (1.0 + omega.norm()));
        sym.observe(ext.matrix().max_asymmetry());

        let (ma, mb) = (sampling::matrix(&mut rng, n), sampling::matrix(&mut rng, n));
        let (ea, eb) = (
            derivation_extend(&ma, dp).unwrap(),
            derivation_extend(&mb, dp).unwrap(),
        );
        let sum = derivation_extend(&(&ma + &mb), dp).unwrap();
        lin.observe(sum.matrix().max_abs_diff(&(ea.matrix() + eb.matrix())));
        let br = derivation_extend(&ma.commutator(&mb), dp).unwrap();
        bracket.observe(
            br.matrix()
                .max_abs_diff(&ea.matrix().commutator(eb.matrix())),
        );
        deg1.observe(
            derivation_extend(&ma, 1)
                .unwrap()
                .matrix()
                .max_abs_diff(&ma),
        );
    }
    out.extend(
        [
            assoc, graded, anti, nil, adjoint, iso, invol, cs, routes, lin, bracket, deg1, sym,
        ]
        .map(Tally::finish),
    );
    out
}

fn curvature(cfg: &SuiteConfig) -> Vec<Record> {
    let mut rng = rng_for(cfg.seed, "curvature");
    let mut out = Vec::new();

    let r3 = constant_curvature(3, 2.0);
    out.push(exact(
        "curvature/constant-example-sectional",
        r3.get(0, 1, 0, 1),
        2.0,
        0.0,
    ));
    out.push(exact(
        "curvature/constant-example-mixed",
        r3.get(0, 1, 0, 2),
        0.0,
        0.0,
    ));
    out.push(exact(
        "curvature/constant-example-flat",
        max_abs(&constant_curvature(4, 0.0)),
        0.0,
        0.0,
    ));

    let mut space = Tally::new("curvature/space-form-weitzenboeck", cfg.tol);
    let mut spectrum = Tally::new("curvature/space-form-operator-spectrum", cfg.tol_for(1e-12));
    for n in 2..=8 {
        for c in [-2.0, -1.0, 0.0, 0.5, 1.0, 2.0] {
            let r = constant_curvature(n, c);
            for p in 1..n {
                let w = weitzenboeck(&r, p).unwrap();
                let target = SquareMatrix::identity(binomial(n, p)).scale((p * (n - p)) as f64 * c);
                space.observe(w.matrix().max_abs_diff(&target));
            }
            let ev = r.curvature_operator().eigenvalues().unwrap();
            spectrum.observe(ev.iter().map(|e| (e - c).abs()).fold(0.0, f64::max));
        }
    }
    out.push(space.input("dims", "2..=8").finish());
    out.push(spectrum.finish());

    let sphere = gauss_intrinsic(
        &constant_curvature(4, 0.0),
        &SecondFundamentalForm::diagonal(&[1.0; 4]),
    )
    .unwrap();
    out.push(exact(
        "curvature/unit-sphere-sectional",
        sphere.sectional(0, 3),
        1.0,
        0.0,
    ));
    out.push(exact(
        "curvature/unit-sphere-ricci",
        sphere
            .ricci()
            .max_abs_diff(&SquareMatrix::identity(4).scale(3.0)),
        0.0,
        cfg.tol_for(1e-12),
    ));
    let s3 = constant_curvature(3, 1.0);
    out.push(exact(
        "curvature/unit-sphere-degree-one",
        weitzenboeck(&s3, 1)
            .unwrap()
            .matrix()
            .max_abs_diff(&SquareMatrix::identity(3).scale(2.0)),
        0.0,
        cfg.tol_for(1e-12),
    ));

    let cliff = gauss_intrinsic(
        &constant_curvature(4, 1.0),
        &SecondFundamentalForm::diagonal(&[1.0, 1.0, -1.0, -1.0]),
    )
    .unwrap();
    out.push(exact(
        "curvature/clifford-sectional-within",
        cliff.sectional(0, 1),
        2.0,
        1e-15,
    ));
    out.push(exact(
        "curvature/clifford-sectional-across",
        cliff.sectional(0, 2),
        0.0,
        1e-15,
    ));
    out.push(exact(
        "curvature/clifford-ricci",
        cliff
            .ricci()
            .max_abs_diff(&SquareMatrix::identity(4).scale(2.0)),
        0.0,
        1e-15,
    ));
    out.push(exact(
        "curvature/clifford-weak-ricci",
        cliff
            .p_weak_ricci(&MultiIndex::new(4, &[0, 1]).unwrap())
            .unwrap(),
        4.0,
        1e-15,
    ));
    out.push(exact(
        "curvature/clifford-operator-min",
        cliff.curvature_operator().min_eigenvalue().unwrap(),
        0.0,
        cfg.tol_for(1e-12),
    ));

    let e0 = PForm::monomial(4, &[0]).unwrap();
    out.push(exact(
        "curvature/quadratic-degree-one",
        weitzenboeck_quadratic(&cliff, 1, &e0).unwrap(),
        cliff.ricci()[(0, 0)],
        cfg.tol_for(1e-12),
    ));
    out.push(exact(
        "curvature/quadratic-zero-tensor",
        weitzenboeck_quadratic(
            &CurvatureTensor::zero(4),
            2,
            &PForm::monomial(4, &[0, 2]).unwrap(),
        )
        .unwrap(),
        0.0,
        0.0,
    ));

    let mut ric = Tally::new("curvature/degree-one-is-ricci", cfg.tol_for(1e-12));
    let mut symm = Tally::new("curvature/weitzenboeck-symmetric", cfg.tol_for(1e-10));
    let mut dual = Tally::new("curvature/hodge-conjugation", cfg.tol);
    let mut two = Tally::new("curvature/two-routes", cfg.tol_for(1e-8));
    let mut gauss = Tally::new("curvature/gauss-symmetries", cfg.tol_for(1e-12));
    let mut kyfan = Tally::new("curvature/weak-ricci-minimum", cfg.tol_for(1e-12));
    let mut op_sym = Tally::new("curvature/operator-symmetric", 0.0);
    for _ in 0..cfg.trials {
        let (n, p) = sampling::dim_degree(&mut rng, 2, 6);
        let r = sampling::curvature(&mut rng, n);
        let scale = max_abs(&r).max(1.0);
        ric.observe(
            weitzenboeck(&r, 1)
                .unwrap()
                .matrix()
                .max_abs_diff(&r.ricci())
                / scale,
        );
        let w = weitzenboeck(&r, p).unwrap();
        symm.observe(w.matrix().max_asymmetry() / scale);
        let wd = weitzenboeck(&r, n - p).unwrap();
        dual.observe(w.hodge_conjugate().matrix().max_abs_diff(wd.matrix()) / scale);
        let omega = sampling::form(&mut rng, n, p);
        let a = w.quadratic(&omega).unwrap();
        let b = weitzenboeck_quadratic(&r, p, &omega).unwrap();
        two.observe((a - b).abs() / (scale * omega.norm2()).max(1e-300));
        op_sym.observe(r.curvature_operator().matrix().max_asymmetry());

        let m = rng.random_range(1..=3);
        let c = rng.random_range(-2.0..2.0);
        let bsf = sampling::second_fundamental_form(&mut rng, n, m);
        let g = gauss_intrinsic(&constant_curvature(n, c), &bsf).unwrap();
        let gs = max_abs(&g).max(1.0);
        gauss.observe(g.symmetry_deviation().max(g.bianchi_deviation()) / gs);

        let minimum = r.ricci_p_min(p).unwrap();
        let coordinate_min = Basis::new(n, p)
            .unwrap()
            .iter()
            .map(|s| r.p_weak_ricci(&s).unwrap())
            .fold(f64::INFINITY, f64::min);
        kyfan.observe((minimum - coordinate_min).max(0.0) / scale);
    }
    out.extend([ric, symm, dual, two, gauss, kyfan, op_sym].map(Tally::finish));
    out
}

fn identities(cfg: &SuiteConfig) -> Vec<Record> {
    let mut rng = rng_for(cfg.seed, "identities");
    let mut out = Vec::new();

    let mut gap = Tally::new("identities/gap-identity", cfg.tol_for(1e-8));
    let mut split = Tally::new("identities/norm-split", cfg.tol_for(1e-12));
    let mut trace = Tally::new("identities/traceless-trace", cfg.tol_for(1e-12));
    let mut ls = Tally::new("identities/ls-block-invariance", cfg.tol_for(1e-12));
    let mut opnorm_trace = Tally::new("identities/traceless-extension-trace", cfg.tol_for(1e-12));
    for _ in 0..cfg.trials {
        let (n, p) = sampling::dim_degree(&mut rng, 2, 6);
        let m = rng.random_range(1..=3);
        let c = rng.random_range(-2.0..2.0);
        let b = sampling::second_fundamental_form(&mut rng, n, m);
        let omega = sampling::form(&mut rng, n, p);
        let g = gap_identity(c, &b, p, &omega).unwrap();
        gap.observe(g.residual().abs() / omega.norm2().max(1e-300));

        let s = b.summarize();
        split.observe(
            (s.norm2 - s.traceless_norm2 - n as f64 * s.mean_curvature_norm2).abs()
                / (1.0 + s.norm2),
        );
        let t = b.traceless();
        for alpha in 0..m {
            trace.observe(t.shape_operator(alpha).trace().abs() / (1.0 + s.norm2));
        }
        let ext = shape_extension(&b, 1).unwrap();
        for op in &ext.traceless {
            opnorm_trace.observe(op.matrix().trace().abs() / (1.0 + s.norm2));
        }

        let perm = sampling::permutation(&mut rng, n);
        let base = ls_quantity(&b, p, &perm).unwrap();
        let mut moved = perm.clone();
        moved[..p].reverse();
        moved[p..].reverse();
        let other = ls_quantity(&b, p, &moved).unwrap();
        ls.observe((base - other).abs() / (1.0 + base.abs()));
    }
    out.extend([gap, split, trace, opnorm_trace, ls].map(Tally::finish));

    let mut sphere = Tally::new("identities/gap-unit-sphere", cfg.tol_for(1e-10));
    for n in 2..=6 {
        let b = SecondFundamentalForm::diagonal(&vec![1.0; n]);
        for p in 1..n {
            let omega = sampling::form(&mut rng, n, p);
            let g = gap_identity(0.0, &b, p, &omega).unwrap();
            let expect = (p * (n - p)) as f64 * omega.norm2();
            sphere.observe(g.residual().abs().max((g.intrinsic - expect).abs()) / omega.norm2());
        }
    }
    out.push(sphere.finish());
    let zero = gap_identity(
        0.7,
        &SecondFundamentalForm::zero(4, 2),
        2,
        &PForm::monomial(4, &[0, 2]).unwrap(),
    )
    .unwrap();
    out.push(exact(
        "identities/gap-zero-b",
        zero.residual(),
        0.0,
        cfg.tol_for(1e-12),
    ));

    let c41 = SecondFundamentalForm::diagonal(&[1.0, -1.0, -1.0, -1.0]).summarize();
    out.push(exact(
        "identities/summary-clifford-mean",
        c41.mean_curvature[0],
        -0.5,
        1e-15,
    ));
    out.push(exact(
        "identities/summary-clifford-norm",
        c41.norm2,
        4.0,
        1e-15,
    ));
    out.push(exact(
        "identities/summary-clifford-traceless",
        c41.traceless_norm2,
        3.0,
        1e-14,
    ));
    let umb = SecondFundamentalForm::diagonal(&[1.0; 4]).summarize();
    out.push(exact(
        "identities/summary-umbilic-mean",
        umb.mean_curvature[0],
        1.0,
        0.0,
    ));
    out.push(exact(
        "identities/summary-umbilic-traceless",
        umb.traceless_norm2,
        0.0,
        0.0,
    ));
    let z = SecondFundamentalForm::zero(4, 2).summarize();
    out.push(exact(
        "identities/summary-zero",
        z.norm2 + z.traceless_norm2 + z.mean_curvature_norm2,
        0.0,
        0.0,
    ));

    let k = 1.7;
    let ext = shape_extension(&SecondFundamentalForm::diagonal(&[k; 5]), 3).unwrap();
    out.push(exact(
        "identities/shape-extension-umbilic",
        ext.full[0]
            .matrix()
            .max_abs_diff(&SquareMatrix::identity(10).scale(3.0 * k)),
        0.0,
        cfg.tol_for(1e-12),
    ));
    let cliff = SecondFundamentalForm::diagonal(&[1.0, 1.0, -1.0, -1.0]);
    let ev = shape_extension(&cliff, 2).unwrap().traceless[0]
        .matrix()
        .symmetric_eigenvalues()
        .unwrap();
    let expect = [-2.0, 0.0, 0.0, 0.0, 0.0, 2.0];
    let dev = ev
        .iter()
        .zip(expect)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    out.push(exact(
        "identities/shape-extension-clifford-spectrum",
        dev,
        0.0,
        cfg.tol_for(1e-12),
    ));

    let id: Vec<usize> = (0..4).collect();
    out.push(exact(
        "identities/ls-clifford",
        ls_quantity(&cliff, 2, &id).unwrap(),
        4.0,
        0.0,
    ));
    out.push(exact(
        "identities/ls-umbilic",
        ls_quantity(&SecondFundamentalForm::diagonal(&[1.0; 4]), 1, &id).unwrap(),
        -3.0,
        0.0,
    ));
    out.push(exact(
        "identities/ls-zero",
        ls_quantity(&SecondFundamentalForm::zero(4, 2), 2, &id).unwrap(),
        0.0,
        0.0,
    ));
    out.push(exact(
        "identities/beta-umbilic",
        p_curvature_beta(&[1.0; 4], 2).unwrap(),
        1.0,
        0.0,
    ));
    out.push(exact(
        "identities/beta-clifford",
        p_curvature_beta(&[1.0, 1.0, -1.0, -1.0], 2).unwrap(),
        -1.0,
        0.0,
    ));
    out.push(exact(
        "identities/beta-constant",
        p_curvature_beta(&[2.0; 3], 1).unwrap(),
        4.0,
        0.0,
    ));
    let umb_half = SecondFundamentalForm::diagonal(&[0.5; 4]).summarize();
    out.push(exact(
        "identities/gamma-umbilic",
        umb_half.gamma(2),
        0.25,
        1e-15,
    ));
    out.push(exact(
        "identities/gamma-clifford-balanced",
        cliff.summarize().gamma(2),
        -1.0,
        1e-14,
    ));
    out.push(exact(
        "identities/gamma-clifford-unbalanced",
        c41.gamma(1),
        -1.0,
        1e-14,
    ));
    out
}

/// Largest `|λ|` of a symmetric matrix by power iteration on `A²`.
pub fn power_iteration_norm(a: &SquareMatrix) -> f64 {
    let n = a.dim();
    let a2 = a * a;
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.37 * i as f64).collect();
    let mut est = 0.0;
    for _ in 0..20_000 {
        let w = a2.apply(&v);
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        let next: f64 = v.iter().zip(&w).map(|(x, y)| x * y).sum();
        v = w.iter().map(|x| x / norm).collect();
        let done = (next - est).abs() <= 1e-16 * next.abs();
        est = next;
        if done {
            break;
        }
    }
    let rayleigh: f64 = v.iter().zip(a2.apply(&v)).map(|(x, y)| x * y).sum();
    rayleigh.max(0.0).sqrt()
}

fn inequalities(cfg: &SuiteConfig) -> Vec<Record> {
    let mut rng = rng_for(cfg.seed, "inequalities");
    let mut out = Vec::new();
    let tol = cfg.tol;
    let heavy = cfg.trials * 5;
    let medium = cfg.trials * 5 / 2;

    let mut lemma = Tally::new("inequalities/derivation-norm", tol);
    let mut opnorm = Tally::new("inequalities/traceless-opnorm", tol);
    for _ in 0..heavy {
        let (n, p) = sampling::dim_degree(&mut rng, 2, 6);
        let m = rng.random_range(1..=3);
        let shapes: Vec<_> = (0..m).map(|_| sampling::symmetric(&mut rng, n)).collect();
        let omega = sampling::form(&mut rng, n, p);
        let chk = derivation_norm_check(&shapes, &omega).unwrap();
        lemma.observe_ineq(chk, chk.rhs.abs());

        let b = SecondFundamentalForm::from_shape_operators(&shapes).unwrap();
        let lhs = traceless_shape_opnorm2(&b, p).unwrap();
        let rhs = (p * (n - p)) as f64 / n as f64 * b.summarize().traceless_norm2;
        opnorm.observe_ineq(InequalityCheck { lhs, rhs }, rhs);
    }
    out.push(lemma.finish());
    out.push(opnorm.finish());

    let a = sampling::symmetric(&mut rng, 5);
    let e = (&a * &a).symmetric_eigen().unwrap();
    let top = PForm::covector(&e.vector(e.values.len() - 1)).unwrap();
    let chk = derivation_norm_check(&[a], &top).unwrap();
    out.push(exact(
        "inequalities/derivation-norm-equality",
        chk.lhs,
        chk.rhs,
        cfg.tol_for(1e-8),
    ));
    let id_form = sampling::form(&mut rng, 4, 2);
    let chk = derivation_norm_check(&[SquareMatrix::identity(4)], &id_form).unwrap();
    out.push(exact(
        "inequalities/derivation-norm-identity",
        chk.lhs,
        chk.rhs,
        cfg.tol_for(1e-12) * chk.rhs,
    ));

    let cliff = SecondFundamentalForm::diagonal(&[1.0, 1.0, -1.0, -1.0]);
    out.push(exact(
        "inequalities/traceless-opnorm-clifford",
        traceless_shape_opnorm2(&cliff, 2).unwrap(),
        4.0,
        cfg.tol_for(1e-8),
    ));

    let mut power = Tally::new("inequalities/spectral-norm-power-iteration", tol);
    for _ in 0..cfg.trials {
        let n = rng.random_range(1..=8);
        let a = sampling::symmetric(&mut rng, n);
        let j = spectral_norm(&a).unwrap();
        power.observe((j - power_iteration_norm(&a)).abs() / j.max(1e-300));
    }
    out.push(power.finish());
    out.push(exact(
        "inequalities/spectral-norm-diagonal",
        spectral_norm(&SquareMatrix::from_diagonal(&[1.0, 2.0, 3.0])).unwrap(),
        3.0,
        0.0,
    ));
    out.push(exact(
        "inequalities/spectral-norm-zero",
        spectral_norm(&SquareMatrix::zeros(3)).unwrap(),
        0.0,
        0.0,
    ));

    let mut chain = Tally::new("inequalities/ricci-opnorm-chain", tol);
    let mut sharp = Tally::new("inequalities/ricci-opnorm-chain-sharp", tol);
    let mut stable = Tally::new("inequalities/stable-current-chain", tol);
    for _ in 0..medium {
        let n = rng.random_range(3..=6);
        let p = rng.random_range(1..=n / 2);
        let m = rng.random_range(1..=3);
        let b = sampling::second_fundamental_form(&mut rng, n, m);
        let chk = ricci_opnorm_chain(&b, p).unwrap();
        chain.observe_ineq(chk, chk.rhs.abs());
        let chk = ricci_opnorm_chain_sharp(&b, p).unwrap();
        sharp.observe_ineq(chk, chk.rhs.abs());

        let n = rng.random_range(4..=7);
        let p = rng.random_range(2..=n / 2);
        let c = if rng.random_bool(0.5) { 0.0 } else { 1.0 };
        let b = sampling::second_fundamental_form(&mut rng, n, m);
        let perm = sampling::permutation(&mut rng, n);
        let chk = stable_current_chain(c, &b, p, &perm).unwrap();
        stable.observe_ineq(chk, chk.rhs.abs());
    }
    out.extend([chain, sharp, stable].map(Tally::finish));
    let chk = ricci_opnorm_chain(&cliff, 2).unwrap();
    out.push(exact(
        "inequalities/ricci-opnorm-chain-clifford-lhs",
        chk.lhs,
        4.0,
        cfg.tol_for(1e-10),
    ));
    out.push(exact(
        "inequalities/ricci-opnorm-chain-clifford-rhs",
        chk.rhs,
        4.0,
        cfg.tol_for(1e-10),
    ));
    let umb = SecondFundamentalForm::diagonal(&[0.8; 5]);
    let chk = ricci_opnorm_chain_sharp(&umb, 2).unwrap();
    out.push(exact(
        "inequalities/ricci-opnorm-chain-umbilic-lhs",
        chk.lhs,
        -6.0 * 0.64,
        cfg.tol_for(1e-10),
    ));
    out.push(exact(
        "inequalities/ricci-opnorm-chain-umbilic-rhs",
        chk.rhs,
        -6.0 * 0.64,
        cfg.tol_for(1e-10),
    ));

    let mut duality = Tally::new("inequalities/bound-duality", 0.0);
    let mut dominance = Tally::new("inequalities/simplified-dominance", tol);
    let mut young = Tally::new("inequalities/young-dominance", tol);
    let eps_grid: Vec<f64> = (0..40).map(|k| -0.95 + 0.25 * k as f64).collect();
    for _ in 0..medium {
        let (n, p) = sampling::dim_degree(&mut rng, 2, 8);
        let m = rng.random_range(1..=3);
        let c = rng.random_range(-2.0..2.0);
        let b = sampling::second_fundamental_form(&mut rng, n, m);
        let lo = extrinsic_eigenvalue_bound(p, c, &b).value.unwrap();
        let hi = extrinsic_eigenvalue_bound(n - p, c, &b).value.unwrap();
        duality.observe((lo - hi).abs());
        let lam = rng.random_range(-1.0..2.0);
        duality.observe(
            (gallot_meyer_bound(n, p, lam).value.unwrap()
                - gallot_meyer_bound(n, n - p, lam).value.unwrap())
            .abs(),
        );

        let s = simplified_bounds(p, c, &b, 0.0);
        let scale = lo.abs().max(1.0);
        for v in [s.traceless.value, s.full_norm.value, s.middle_degree.value]
            .into_iter()
            .flatten()
        {
            dominance.observe((v - lo).max(0.0) / scale);
        }
        let best = eps_grid
            .iter()
            .map(|&e| simplified_bounds(p, c, &b, e).young.value.unwrap())
            .fold(f64::NEG_INFINITY, f64::max);
        let worst = eps_grid
            .iter()
            .map(|&e| simplified_bounds(p, c, &b, e).young.value.unwrap())
            .fold(f64::INFINITY, f64::min);
        young.observe((best - lo).max(0.0) / scale);
        young.observe((worst - s.traceless.value.unwrap()).max(0.0) / scale);
    }
    out.extend([duality, dominance, young].map(Tally::finish));

    let mut equiv = Tally::new("inequalities/rigidity-equivalence", 0.0);
    let mut min_p = Tally::new("inequalities/rigidity-minimum-degree", tol);
    for n in 2..=10 {
        for hk in 0..=8 {
            let h = 0.25 * hk as f64;
            for c in [0.0, 0.25, 0.5, 1.0, 2.0] {
                let alphas: Vec<f64> = (1..n)
                    .map(|p| rigidity_threshold(n, p, c, h).value.unwrap())
                    .collect();
                let min = alphas.iter().copied().fold(f64::INFINITY, f64::min);
                min_p.observe((alphas[0] - min).abs() / alphas[0].abs().max(1.0));
                for (i, alpha) in alphas.iter().enumerate() {
                    let p = i + 1;
                    for bk in 0..=12 {
                        let bring2 = 0.5 * bk as f64;
                        let b2 = bring2 + n as f64 * h * h;
                        if (b2 - alpha).abs() <= 1e-9 * (1.0 + b2.abs()) {
                            continue;
                        }
                        let need = rigidity_curvature_requirement(n, p, bring2, h * h);
                        equiv.observe(if (b2 <= *alpha) == (c >= need) {
                            0.0
                        } else {
                            1.0
                        });
                    }
                }
            }
        }
    }
    out.push(equiv.finish());
    out.push(min_p.finish());

    out.extend(bound_examples(cfg));
    out
}

fn na(name: &str, applicable: bool) -> Record {
    Record::new(name, Status::from_holds(!applicable))
        .values(Fields::new().with("applicable", applicable))
}

fn bound_examples(cfg: &SuiteConfig) -> Vec<Record> {
    let t = cfg.tol_for(1e-12);
    let cliff = SecondFundamentalForm::diagonal(&[1.0, 1.0, -1.0, -1.0]);
    let v = |r: hodgebound_core::bounds::BoundReport| r.value.unwrap_or(f64::NAN);
    let mut out = vec![
        exact(
            "bounds/gallot-meyer-sphere",
            v(gallot_meyer_bound(4, 2, 1.0)),
            6.0,
            0.0,
        ),
        exact(
            "bounds/gallot-meyer-zero",
            v(gallot_meyer_bound(4, 2, 0.0)),
            0.0,
            0.0,
        ),
        exact(
            "bounds/gallot-meyer-degree-one",
            v(gallot_meyer_bound(5, 1, 2.0)),
            10.0,
            0.0,
        ),
        exact(
            "bounds/extrinsic-clifford",
            v(extrinsic_eigenvalue_bound(2, 1.0, &cliff)),
            0.0,
            t,
        ),
        exact(
            "bounds/extrinsic-totally-geodesic",
            v(extrinsic_eigenvalue_bound(
                1,
                1.0,
                &SecondFundamentalForm::zero(4, 1),
            )),
            4.0,
            t,
        ),
        exact(
            "bounds/rigidity-minimal",
            v(rigidity_threshold(4, 2, 1.0, 0.0)),
            4.0,
            t,
        ),
        exact(
            "bounds/rigidity-clifford-unbalanced",
            v(rigidity_threshold(4, 1, 1.0, 0.5)),
            4.0,
            t,
        ),
        na(
            "bounds/rigidity-negative-curvature",
            rigidity_threshold(4, 1, -1.0, 0.5).is_applicable(),
        ),
        exact(
            "bounds/ricci-clifford",
            v(ricci_eigenvalue_bound(4, 2, 1.0, 1.0, 2.0, 0.0)),
            0.0,
            t,
        ),
        exact(
            "bounds/ricci-sphere",
            v(ricci_eigenvalue_bound(4, 1, 1.0, 1.0, 3.0, 0.0)),
            4.0,
            t,
        ),
        na(
            "bounds/ricci-inverted-pinching",
            ricci_eigenvalue_bound(4, 1, 1.0, 0.5, 3.0, 0.0).is_applicable(),
        ),
    ];
    let s = simplified_bounds(2, 1.0, &cliff, 0.0);
    out.push(exact("bounds/traceless-clifford", v(s.traceless), 0.0, t));
    out.push(exact("bounds/full-norm-clifford", v(s.full_norm), 0.0, t));
    out.push(exact(
        "bounds/middle-degree-clifford",
        v(s.middle_degree),
        0.0,
        t,
    ));
    let odd = simplified_bounds(1, 1.0, &SecondFundamentalForm::zero(5, 1), 0.0);
    out.push(na(
        "bounds/middle-degree-odd",
        odd.middle_degree.is_applicable(),
    ));
    let zero = simplified_bounds(2, 0.7, &SecondFundamentalForm::zero(5, 2), 0.0);
    for (name, r) in [
        ("bounds/traceless-zero-b", zero.traceless),
        ("bounds/full-norm-zero-b", zero.full_norm),
        ("bounds/young-zero-b", zero.young),
    ] {
        out.push(exact(name, v(r), 2.0 * 4.0 * 0.7, t));
    }
    let th = sphere_thresholds(4, 2, Ambient::Constant(1.0), 0.0);
    out.push(exact(
        "bounds/ricci-betti-clifford",
        v(th.ricci_betti),
        2.0,
        t,
    ));
    let odd = sphere_thresholds(5, 2, Ambient::Constant(1.0), 0.0);
    out.push(exact(
        "bounds/ricci-sphere-odd",
        v(odd.ricci_sphere),
        50.0 / 17.0,
        t,
    ));
    let th41 = sphere_thresholds(4, 1, Ambient::Constant(1.0), 0.0);
    out.push(exact(
        "bounds/traceless-pinching",
        v(th41.traceless_pinching),
        3.0,
        t,
    ));
    out.push(exact(
        "bounds/norm-pinching",
        v(th41.norm_pinching),
        2.0 * 3f64.sqrt(),
        t,
    ));
    out.push(exact(
        "bounds/ricci-one-currents",
        v(th41.ricci_one_currents),
        2.0,
        t,
    ));
    out
}

fn models(cfg: &SuiteConfig) -> Vec<Record> {
    let mut out = Vec::new();
    let report =
        sharpness_suite(&SharpnessGrid::default(), cfg.tol).expect("default grid is valid");
    for (pt, chk) in report.checks() {
        let status = match chk.verdict {
            Verdict::Holds => Status::Pass,
            Verdict::Violated => Status::Fail,
            Verdict::NotApplicable => Status::NotApplicable,
        };
        let mut rec = Record::new(format!("models/clifford/{}", chk.name), status)
            .inputs(
                Fields::new()
                    .with("n", pt.n)
                    .with("p", pt.p)
                    .with("mu", pt.mu)
                    .with("critical", pt.critical),
            )
            .values(Fields::new().with("value", chk.value));
        rec.residual = chk.residual;
        out.push(rec);
    }

    let t = cfg.tol_for(1e-12);
    let mut sphere = Tally::new("models/sphere-sharpness", t);
    let mut duality = Tally::new("models/sphere-duality", t);
    let mut consistency = Tally::new("models/gauss-consistency", cfg.tol_for(1e-10));
    for n in 2..=8 {
        for m in 1..=2 {
            for (c, h) in [(0.0, 1.0), (1.0, 0.0), (0.5, 0.5), (-0.5, 1.0)] {
                let s = geodesic_sphere(n, m, c, h).unwrap();
                consistency.observe(s.gauss_consistency().unwrap());
                duality.observe(s.spectrum.duality_defect());
                for p in 1..n {
                    let bound = extrinsic_eigenvalue_bound(p, c, &s.second_fundamental_form)
                        .value
                        .unwrap();
                    let stored = s.spectrum.first[p].unwrap();
                    sphere.observe((bound - stored).abs() / stored.max(1.0));
                }
            }
        }
    }
    for n in 3..=8 {
        for p in 1..n {
            for mu in [0.5, 1.0, 2.0] {
                consistency.observe(
                    clifford_torus(n, p, mu)
                        .unwrap()
                        .gauss_consistency()
                        .unwrap(),
                );
            }
        }
    }
    out.extend([sphere, duality, consistency].map(Tally::finish));

    let mut einstein = Tally::new("models/clifford-einstein", cfg.tol_for(1e-12));
    for n in 4..=10 {
        for p in 2..n - 1 {
            let mu = critical_mu(n, p).unwrap();
            let ric = clifford_torus(n, p, mu).unwrap().intrinsic.ricci();
            einstein.observe(ric.max_abs_diff(&SquareMatrix::identity(n).scale((n - 2) as f64)));
        }
    }
    out.push(einstein.finish());
    out
}
