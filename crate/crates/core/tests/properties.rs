use hodgebound_core::bounds::{
    derivation_norm_check, extrinsic_eigenvalue_bound, ricci_opnorm_chain,
    ricci_opnorm_chain_sharp, rigidity_curvature_requirement, rigidity_threshold,
    simplified_bounds, spectral_norm, stable_current_chain,
};
use hodgebound_core::curvature::{
    constant_curvature, gauss_intrinsic, weitzenboeck, weitzenboeck_quadratic, CurvatureTensor,
};
use hodgebound_core::exterior::{
    binomial, derivation_extend, rank_subset, unrank_subset, Basis, MultiIndex, PForm,
};
use hodgebound_core::linalg::SquareMatrix;
use hodgebound_core::submanifold::{
    gap_identity_residual, ls_quantity, shape_extension, shape_wedge_interior,
    traceless_shape_opnorm2, SecondFundamentalForm,
};
use proptest::prelude::*;

fn entries(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-2.0f64..2.0, len)
}

fn symmetric(n: usize) -> impl Strategy<Value = SquareMatrix> {
    entries(n * n).prop_map(move |v| {
        let a = SquareMatrix::from_row_major(n, v).unwrap();
        (&a + &a.transpose()).scale(0.5)
    })
}

fn form(n: usize, p: usize) -> impl Strategy<Value = PForm> {
    entries(binomial(n, p)).prop_map(move |c| PForm::from_coeffs(n, p, c).unwrap())
}

fn sff(n: usize, m: usize) -> impl Strategy<Value = SecondFundamentalForm> {
    prop::collection::vec(symmetric(n), m)
        .prop_map(|a| SecondFundamentalForm::from_shape_operators(&a).unwrap())
}

/// Algebraic curvature tensors as `c·R₁ + G(B₁) − G(B₂)`, with `G` the Gauss
/// quadratic term; both signs occur, and Bianchi holds by construction.
fn curvature(n: usize) -> impl Strategy<Value = CurvatureTensor> {
    (-2.0f64..2.0, sff(n, 2), sff(n, 1)).prop_map(move |(c, b1, b2)| {
        let plus = gauss_intrinsic(&constant_curvature(n, c), &b1).unwrap();
        let minus = gauss_intrinsic(&CurvatureTensor::zero(n), &b2).unwrap();
        plus.add(&minus.scale(-1.0)).unwrap()
    })
}

fn dim_degree(lo: usize, hi: usize) -> impl Strategy<Value = (usize, usize)> {
    (lo..=hi).prop_flat_map(|n| (Just(n), 1..n))
}

/// Sign of the permutation sorting `idx`, 0 if an index repeats.
fn sort_sign(idx: &mut [usize]) -> f64 {
    let mut sign = 1.0;
    for i in 0..idx.len() {
        for j in 0..idx.len() - 1 - i {
            if idx[j] == idx[j + 1] {
                return 0.0;
            }
            if idx[j] > idx[j + 1] {
                idx.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        0.0
    } else {
        sign
    }
}

/// Wedge product by expanding over basis pairs and sorting index lists.
fn wedge_oracle(a: &PForm, b: &PForm) -> PForm {
    let n = a.ambient_dim();
    let (p, q) = (a.degree(), b.degree());
    let mut out = vec![0.0; binomial(n, p + q)];
    for (r, x) in a.coeffs().iter().enumerate() {
        for (s, y) in b.coeffs().iter().enumerate() {
            let mut idx: Vec<usize> = unrank_subset(n, p, r).unwrap().indices().collect();
            idx.extend(unrank_subset(n, q, s).unwrap().indices());
            let sign = sort_sign(&mut idx);
            if sign != 0.0 {
                let t = rank_subset(&MultiIndex::new(n, &idx).unwrap(), p + q).unwrap();
                out[t] += sign * x * y;
            }
        }
    }
    PForm::from_coeffs(n, p + q, out).unwrap()
}

fn close(a: &PForm, b: &PForm, tol: f64) -> bool {
    a.sub(b).unwrap().max_abs() <= tol
}

/// Largest `|λ|` by power iteration on `A²`.
fn power_iteration_norm(a: &SquareMatrix) -> f64 {
    let n = a.dim();
    let a2 = a * a;
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * i as f64).collect();
    let mut est = 0.0;
    for _ in 0..5000 {
        let w = a2.apply(&v);
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        let next = v.iter().zip(&w).map(|(x, y)| x * y).sum::<f64>();
        v = w.iter().map(|x| x / norm).collect();
        let done = (next - est).abs() <= 1e-15 * next.abs();
        est = next;
        if done {
            break;
        }
    }
    let rayleigh: f64 = v.iter().zip(a2.apply(&v)).map(|(x, y)| x * y).sum();
    rayleigh.max(0.0).sqrt()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_round_trip((n, p) in (1usize..=10).prop_flat_map(|n| (Just(n), 0..=n))) {
        for r in 0..binomial(n, p) {
            let s = unrank_subset(n, p, r).unwrap();
            prop_assert_eq!(s.degree(), p);
            prop_assert_eq!(rank_subset(&s, p).unwrap(), r);
        }
    }

    #[test]
    fn wedge_matches_oracle(
        (a, b) in (2usize..=6).prop_flat_map(|n| (0..=n).prop_flat_map(move |p| (0..=n - p).prop_flat_map(move |q| (form(n, p), form(n, q)))))
    ) {
        prop_assert!(close(&a.wedge(&b).unwrap(), &wedge_oracle(&a, &b), 1e-12));
    }

    #[test]
    fn wedge_graded_commutative(
        (a, b) in (2usize..=6).prop_flat_map(|n| (0..=n).prop_flat_map(move |p| (0..=n - p).prop_flat_map(move |q| (form(n, p), form(n, q)))))
    ) {
        let sign = if a.degree() * b.degree() % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!(close(&a.wedge(&b).unwrap(), &b.wedge(&a).unwrap().scale(sign), 1e-12));
    }

    #[test]
    fn antiderivation_law(
        (x, a, b) in (2usize..=6).prop_flat_map(|n| (0..=n).prop_flat_map(move |p| (0..=n - p).prop_flat_map(move |q| (entries(n), form(n, p), form(n, q)))))
    ) {
        let lhs = a.wedge(&b).unwrap().interior(&x).unwrap();
        // interior of a 0-form vanishes, so drop that term rather than match degrees
        let mut rhs = PForm::zero(lhs.ambient_dim(), lhs.degree()).unwrap();
        if a.degree() > 0 {
            rhs.add_scaled(1.0, &a.interior(&x).unwrap().wedge(&b).unwrap());
        }
        if b.degree() > 0 {
            let sign = if a.degree() % 2 == 0 { 1.0 } else { -1.0 };
            rhs.add_scaled(sign, &a.wedge(&b.interior(&x).unwrap()).unwrap());
        }
        prop_assert!(close(&lhs, &rhs, 1e-12 * (1.0 + a.norm() * b.norm() * 10.0)));
    }

    #[test]
    fn interior_squares_to_zero((w, k) in dim_degree(2, 7).prop_flat_map(|(n, p)| (form(n, p), 0..n))) {
        let twice = w.interior_frame(k).unwrap().interior_frame(k).unwrap();
        prop_assert_eq!(twice.max_abs(), 0.0);
    }

    #[test]
    fn interior_adjoint_to_wedge(
        (w, t, k) in dim_degree(2, 6).prop_flat_map(|(n, p)| (form(n, p - 1), form(n, p), 0..n))
    ) {
        // brute force over basis expansions of both sides
        let n = w.ambient_dim();
        let mut lhs = 0.0;
        let mut rhs = 0.0;
        let (pb, qb) = (Basis::new(n, w.degree()).unwrap(), Basis::new(n, t.degree()).unwrap());
        for (r, a) in pb.iter().enumerate() {
            for (s, b) in qb.iter().enumerate() {
                let ea = PForm::basis(&a);
                let eb = PForm::basis(&b);
                let weight = w.coeffs()[r] * t.coeffs()[s];
                lhs += weight * ea.left_wedge_frame(k).unwrap().inner(&eb).unwrap();
                rhs += weight * ea.inner(&eb.interior_frame(k).unwrap()).unwrap();
            }
        }
        prop_assert!((lhs - rhs).abs() <= 1e-12);
        let direct = w.left_wedge_frame(k).unwrap().inner(&t).unwrap() - w.inner(&t.interior_frame(k).unwrap()).unwrap();
        prop_assert!(direct.abs() <= 1e-12);
    }

    #[test]
    fn hodge_star_isometry_and_square(w in (1usize..=8).prop_flat_map(|n| (0..=n).prop_flat_map(move |p| form(n, p)))) {
        let (n, p) = (w.ambient_dim(), w.degree());
        let s = w.hodge_star();
        prop_assert_eq!(s.degree(), n - p);
        prop_assert!((s.norm2() - w.norm2()).abs() <= 1e-12 * (1.0 + w.norm2()));
        let sign = if p * (n - p) % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!(close(&s.hodge_star(), &w.scale(sign), 1e-12));
    }

    #[test]
    fn hodge_star_from_wedge(
        (a, b) in (2usize..=6).prop_flat_map(|n| (0..=n).prop_flat_map(move |p| (form(n, p), form(n, p))))
    ) {
        // a ∧ ⋆b = ⟨a, b⟩ vol
        let top = a.wedge(&b.hodge_star()).unwrap();
        prop_assert!((top.coeffs()[0] - a.inner(&b).unwrap()).abs() <= 1e-12 * (1.0 + a.norm() * b.norm()));
    }

    #[test]
    fn cauchy_schwarz((a, b) in (1usize..=8).prop_flat_map(|n| (Just(n), 0..=n)).prop_flat_map(|(n, p)| (form(n, p), form(n, p)))) {
        let ip = a.inner(&b).unwrap();
        prop_assert!(ip.abs() <= a.norm() * b.norm() * (1.0 + 1e-14) + 1e-300);
    }

    #[test]
    fn derivation_linear_and_bracket(
        (a, b, p) in dim_degree(2, 6).prop_flat_map(|(n, p)| (entries(n * n), entries(n * n), Just(p)))
    ) {
        let n = (a.len() as f64).sqrt() as usize;
        let a = SquareMatrix::from_row_major(n, a).unwrap();
        let b = SquareMatrix::from_row_major(n, b).unwrap();
        let (ea, eb) = (derivation_extend(&a, p).unwrap(), derivation_extend(&b, p).unwrap());
        let sum = derivation_extend(&(&a + &b), p).unwrap();
        prop_assert!(sum.matrix().max_abs_diff(&(ea.matrix() + eb.matrix())) <= 1e-12);
        let bracket = derivation_extend(&a.commutator(&b), p).unwrap();
        let op_bracket = ea.matrix().commutator(eb.matrix());
        prop_assert!(bracket.matrix().max_abs_diff(&op_bracket) <= 1e-10);
    }

    #[test]
    fn derivation_on_one_forms_is_the_matrix(a in (1usize..=8).prop_flat_map(|n| entries(n * n))) {
        let n = (a.len() as f64).sqrt() as usize;
        let a = SquareMatrix::from_row_major(n, a).unwrap();
        prop_assert_eq!(derivation_extend(&a, 1).unwrap().into_matrix(), a);
    }

    #[test]
    fn derivation_is_leibniz(
        (a, x, y) in (2usize..=6).prop_flat_map(|n| (0..=n).prop_flat_map(move |p| (0..=n - p).prop_flat_map(move |q| (entries(n * n), form(n, p), form(n, q)))))
    ) {
        let n = x.ambient_dim();
        let a = SquareMatrix::from_row_major(n, a).unwrap();
        let d = |w: &PForm| derivation_extend(&a, w.degree()).unwrap().apply(w).unwrap();
        let lhs = d(&x.wedge(&y).unwrap());
        let mut rhs = d(&x).wedge(&y).unwrap();
        rhs.add_scaled(1.0, &x.wedge(&d(&y)).unwrap());
        prop_assert!(close(&lhs, &rhs, 1e-11 * (1.0 + x.norm() * y.norm())));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn symmetric_derivation_is_symmetric_and_wedge_interior((b, w) in dim_degree(2, 6).prop_flat_map(|(n, p)| (sff(n, 2), form(n, p)))) {
        let p = w.degree();
        let ext = shape_extension(&b, p).unwrap();
        for alpha in 0..2 {
            prop_assert!(ext.full[alpha].matrix().max_asymmetry() <= 1e-12);
            let direct = shape_wedge_interior(&b, alpha, &w).unwrap();
            prop_assert!(close(&ext.full[alpha].apply(&w).unwrap(), &direct, 1e-10));
        }
    }

    #[test]
    fn curvature_tensor_is_valid(r in (2usize..=6).prop_flat_map(curvature)) {
        let scale = r.as_slice().iter().fold(1.0f64, |m, x| m.max(x.abs()));
        prop_assert!(r.symmetry_deviation() <= 1e-12 * scale);
        prop_assert!(r.bianchi_deviation() <= 1e-12 * scale);
    }

    #[test]
    fn weitzenboeck_degree_one_is_ricci(r in (2usize..=6).prop_flat_map(curvature)) {
        let w = weitzenboeck(&r, 1).unwrap();
        prop_assert!(w.matrix().max_abs_diff(&r.ricci()) <= 1e-12);
    }

    #[test]
    fn weitzenboeck_symmetric_and_dual((r, p) in dim_degree(2, 6).prop_flat_map(|(n, p)| (curvature(n), Just(p)))) {
        let n = r.dim();
        let w = weitzenboeck(&r, p).unwrap();
        prop_assert!(w.matrix().max_asymmetry() <= 1e-10);
        let dual = weitzenboeck(&r, n - p).unwrap();
        prop_assert!(w.hodge_conjugate().matrix().max_abs_diff(dual.matrix()) <= 1e-9);
    }

    #[test]
    fn weitzenboeck_routes_agree((r, w) in dim_degree(2, 6).prop_flat_map(|(n, p)| (curvature(n), form(n, p)))) {
        let dense = weitzenboeck(&r, w.degree()).unwrap().quadratic(&w).unwrap();
        let via_ad = weitzenboeck_quadratic(&r, w.degree(), &w).unwrap();
        let scale = r.as_slice().iter().fold(1.0f64, |m, x| m.max(x.abs())) * w.norm2();
        prop_assert!((dense - via_ad).abs() <= 1e-8 * scale.max(1e-12));
    }

    #[test]
    fn gauss_output_valid((ambient_c, b) in (-2.0f64..2.0, (2usize..=6).prop_flat_map(|n| (1usize..=3).prop_flat_map(move |m| sff(n, m))))) {
        let r = gauss_intrinsic(&constant_curvature(b.dim(), ambient_c), &b).unwrap();
        let scale = r.as_slice().iter().fold(1.0f64, |m, x| m.max(x.abs()));
        prop_assert!(r.symmetry_deviation() <= 1e-12 * scale);
        prop_assert!(r.bianchi_deviation() <= 1e-12 * scale);
    }

    #[test]
    fn gap_identity_vanishes(
        (c, b, w) in (-2.0f64..2.0, dim_degree(2, 6).prop_flat_map(|(n, p)| (1usize..=3).prop_flat_map(move |m| (sff(n, m), form(n, p)))))
            .prop_map(|(c, (b, w))| (c, b, w))
    ) {
        let res = gap_identity_residual(c, &b, w.degree(), &w).unwrap();
        prop_assert!(res.abs() <= 1e-8 * w.norm2().max(1e-12));
    }

    #[test]
    fn summary_norm_split(b in (1usize..=7).prop_flat_map(|n| (1usize..=3).prop_flat_map(move |m| sff(n, m)))) {
        let s = b.summarize();
        let n = b.dim() as f64;
        prop_assert!((s.norm2 - s.traceless_norm2 - n * s.mean_curvature_norm2).abs() <= 1e-12 * (1.0 + s.norm2));
        let t = b.traceless();
        for alpha in 0..b.codim() {
            prop_assert!(t.shape_operator(alpha).trace().abs() <= 1e-12 * (1.0 + s.norm2));
        }
    }

    #[test]
    fn traceless_opnorm_bound((b, p) in dim_degree(2, 6).prop_flat_map(|(n, p)| ((1usize..=3).prop_flat_map(move |m| sff(n, m)), Just(p)))) {
        let n = b.dim();
        let lhs = traceless_shape_opnorm2(&b, p).unwrap();
        let rhs = (p * (n - p)) as f64 / n as f64 * b.summarize().traceless_norm2;
        prop_assert!(lhs <= rhs + 1e-9 * (1.0 + rhs));
    }

    #[test]
    fn ls_invariant_under_block_permutations(
        (b, p, perm) in dim_degree(2, 7).prop_flat_map(|(n, p)| (sff(n, 2), Just(p), Just((0..n).collect::<Vec<_>>()).prop_shuffle()))
    ) {
        let n = b.dim();
        let base = ls_quantity(&b, p, &perm).unwrap();
        let mut shuffled = perm.clone();
        shuffled[..p].reverse();
        shuffled[p..].rotate_left(1.min(n - p));
        let moved = ls_quantity(&b, p, &shuffled).unwrap();
        prop_assert!((base - moved).abs() <= 1e-12 * (1.0 + base.abs()));
    }

    #[test]
    fn spectral_norm_matches_power_iteration(a in (1usize..=8).prop_flat_map(symmetric)) {
        let jac = spectral_norm(&a).unwrap();
        let pow = power_iteration_norm(&a);
        prop_assert!((jac - pow).abs() <= 1e-9 * jac.max(1e-12), "jacobi {jac} power {pow}");
    }

    #[test]
    fn derivation_norm_inequality(
        (shapes, w) in dim_degree(2, 6).prop_flat_map(|(n, p)| (prop::collection::vec(symmetric(n), 1..=3), form(n, p)))
    ) {
        let chk = derivation_norm_check(&shapes, &w).unwrap();
        prop_assert!(chk.holds(1e-9 * (1.0 + chk.rhs.abs())), "{chk:?}");
    }

    #[test]
    fn extrinsic_bound_duality((b, c, p) in dim_degree(2, 8).prop_flat_map(|(n, p)| (sff(n, 2), -2.0f64..2.0, Just(p)))) {
        let n = b.dim();
        let lo = extrinsic_eigenvalue_bound(p, c, &b);
        let hi = extrinsic_eigenvalue_bound(n - p, c, &b);
        prop_assert_eq!(lo.value, hi.value);
        prop_assert_eq!(lo.dual_degree.is_some() || hi.dual_degree.is_some(), p != n - p);
    }

    #[test]
    fn simplified_bounds_are_weaker((b, c, p) in dim_degree(2, 8).prop_flat_map(|(n, p)| (sff(n, 2), -2.0f64..2.0, Just(p)))) {
        let full = extrinsic_eigenvalue_bound(p, c, &b).value.unwrap();
        let s = simplified_bounds(p, c, &b, 0.0);
        let tol = 1e-9 * (1.0 + full.abs());
        prop_assert!(s.traceless.value.unwrap() <= full + tol);
        prop_assert!(s.full_norm.value.unwrap() <= full + tol);
        if let Some(mid) = s.middle_degree.value {
            prop_assert!(mid <= full + tol);
        }
        // traceless bound is the Young bound at ε = 0
        prop_assert!((s.young.value.unwrap() - s.traceless.value.unwrap()).abs() <= tol);
    }

    #[test]
    fn young_bounds_dominated((b, c, p, eps) in dim_degree(2, 8).prop_flat_map(|(n, p)| (sff(n, 2), -2.0f64..2.0, Just(p), -0.99f64..20.0))) {
        let full = extrinsic_eigenvalue_bound(p, c, &b).value.unwrap();
        let young = simplified_bounds(p, c, &b, eps).young.value.unwrap();
        prop_assert!(young <= full + 1e-9 * (1.0 + full.abs()));
    }

    #[test]
    fn rigidity_threshold_equivalence(
        (n, p, c, h, bring2) in dim_degree(2, 10).prop_flat_map(|(n, p)| (Just(n), Just(p), 0.0f64..3.0, 0.0f64..2.0, 0.0f64..10.0))
    ) {
        let b2 = bring2 + n as f64 * h * h;
        let alpha = rigidity_threshold(n, p, c, h).value.unwrap();
        let need = rigidity_curvature_requirement(n, p, bring2, h * h);
        let margin = 1e-9 * (1.0 + b2 + alpha);
        // skip the knife edge where rounding decides
        if (b2 - alpha).abs() > margin {
            prop_assert_eq!(b2 <= alpha, c >= need);
        }
    }

    #[test]
    fn ricci_opnorm_chain_holds((b, p) in (3usize..=6).prop_flat_map(|n| (1..=n / 2).prop_flat_map(move |p| ((1usize..=3).prop_flat_map(move |m| sff(n, m)), Just(p))))) {
        let chk = ricci_opnorm_chain(&b, p).unwrap();
        prop_assert!(chk.holds(1e-9 * (1.0 + chk.rhs.abs())), "{chk:?}");
        let sharp = ricci_opnorm_chain_sharp(&b, p).unwrap();
        prop_assert!(sharp.holds(1e-9 * (1.0 + sharp.rhs.abs())), "{sharp:?}");
    }

    #[test]
    fn stable_current_chain_holds(
        (c, b, p, perm) in (prop::sample::select(vec![0.0, 1.0]), (4usize..=7).prop_flat_map(|n| (2..=n / 2).prop_flat_map(move |p| ((1usize..=3).prop_flat_map(move |m| sff(n, m)), Just(p), Just((0..n).collect::<Vec<_>>()).prop_shuffle()))))
            .prop_map(|(c, (b, p, perm))| (c, b, p, perm))
    ) {
        let chk = stable_current_chain(c, &b, p, &perm).unwrap();
        prop_assert!(chk.holds(1e-9 * (1.0 + chk.rhs.abs())), "{chk:?}");
    }
}

#[test]
fn derivation_norm_equality_at_top_eigenvector() {
    let a = SquareMatrix::from_rows(&[
        vec![2.0, 1.0, 0.0],
        vec![1.0, -1.0, 0.5],
        vec![0.0, 0.5, 0.3],
    ])
    .unwrap();
    let e = (&a * &a).symmetric_eigen().unwrap();
    let top = e.vector(e.values.len() - 1);
    let w = PForm::covector(&top).unwrap();
    let chk = derivation_norm_check(&[a], &w).unwrap();
    assert!((chk.lhs - chk.rhs).abs() <= 1e-8, "{chk:?}");
}

#[test]
fn weitzenboeck_space_forms() {
    for n in 2..=8 {
        for p in 1..n {
            for c in [-2.0, -1.0, 0.0, 0.5, 1.0, 2.0] {
                let w = weitzenboeck(&constant_curvature(n, c), p).unwrap();
                let target = SquareMatrix::identity(binomial(n, p)).scale((p * (n - p)) as f64 * c);
                assert!(
                    w.matrix().max_abs_diff(&target) <= 1e-9,
                    "n={n} p={p} c={c}"
                );
            }
        }
    }
}
