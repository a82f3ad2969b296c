//! Subcommand implementations. Each returns whether every check passed;
//! usage and input problems come back as [`UsageError`].

use std::io::Write;

use hodgebound_core::bounds::{
    extrinsic_eigenvalue_bound, gallot_meyer_bound, ricci_eigenvalue_bound, rigidity_threshold,
    simplified_bounds, sphere_thresholds, Ambient, BoundReport, Direction, Verdict,
};
use hodgebound_core::curvature::{constant_curvature, gauss_intrinsic};
use hodgebound_core::models::{
    attains_rigidity_threshold, clifford_torus, critical_mu, geodesic_sphere, sharpness_point,
    CliffordClosedForms,
};
use hodgebound_core::submanifold::p_curvature_beta;
use hodgebound_core::DEFAULT_DIM_CAP;

use crate::input::InputDocument;
use crate::report::{Fields, Record, Report, Status, Table};
use crate::suites::{self, Suite, SuiteConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, thiserror::Error)]
pub enum UsageError {
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Input(#[from] crate::input::InputError),
    #[error(transparent)]
    Core(#[from] hodgebound_core::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

fn invalid(msg: impl Into<String>) -> UsageError {
    UsageError::Invalid(msg.into())
}

fn check_dim(n: usize) -> Result<(), UsageError> {
    if n == 0 || n > DEFAULT_DIM_CAP {
        return Err(invalid(format!(
            "n must lie in 1..={DEFAULT_DIM_CAP}, got {n}"
        )));
    }
    Ok(())
}

fn emit(report: &Report, format: Format, out: &mut impl Write) -> Result<bool, UsageError> {
    match format {
        Format::Json => report.write_json(&mut *out)?,
        Format::Csv => report.write_csv(&mut *out)?,
    }
    Ok(!report.failed())
}

pub fn verify(
    suite: Suite,
    cfg: &SuiteConfig,
    format: Format,
    out: &mut impl Write,
) -> Result<bool, UsageError> {
    let records = suites::run(suite, cfg);
    let command = format!("verify --suite {}", suite_name(suite));
    emit(
        &Report::new(&command, cfg.seed, cfg.tol, records),
        format,
        out,
    )
}

fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::All => "all",
        Suite::Algebra => "algebra",
        Suite::Curvature => "curvature",
        Suite::Identities => "identities",
        Suite::Inequalities => "inequalities",
        Suite::Models => "models",
    }
}

/// Command-line overrides for the input document.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct BoundsOptions {
    pub p: Option<usize>,
    pub c: Option<f64>,
    pub c_lower: Option<f64>,
    pub c_upper: Option<f64>,
    pub ric_min: Option<f64>,
}

impl BoundsOptions {
    fn ambient(&self, doc: Option<Ambient>) -> Result<Option<Ambient>, UsageError> {
        if let Some(c) = self.c {
            if self.c_lower.is_some() || self.c_upper.is_some() {
                return Err(invalid("--c conflicts with --c-lower/--c-upper"));
            }
            return Ok(Some(Ambient::Constant(c)));
        }
        Ok(match (self.c_lower, self.c_upper, doc) {
            (None, None, doc) => doc,
            (Some(lower), Some(upper), _) => Some(Ambient::Pinched { lower, upper }),
            (lower, upper, Some(a)) => Some(Ambient::Pinched {
                lower: lower.unwrap_or(a.lower()),
                upper: upper.unwrap_or(a.upper()),
            }),
            (_, _, None) => return Err(invalid("--c-lower and --c-upper must be given together")),
        })
    }
}

fn bound_record(report: &BoundReport, p: usize, compared: Option<(&str, f64)>, tol: f64) -> Record {
    let mut inputs = Fields::new().with("p", p);
    for (k, v) in &report.inputs {
        if *k != "p" {
            inputs.push(k, *v);
        }
    }
    let mut values = Fields::new().with("value", report.value).with(
        "direction",
        match report.direction {
            Direction::AtLeast => "at-least",
            Direction::AtMost => "at-most",
        },
    );
    if let Some(q) = report.dual_degree {
        values.push("dual_degree", q);
    }
    if let Some(reason) = report.reason {
        values.push("reason", reason);
    }
    if let Some((name, quantity)) = compared {
        values.push(name, quantity);
        let verdict = match report.satisfied(quantity, tol) {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::NotApplicable => "not-applicable",
        };
        values.push("satisfied", verdict);
    }
    let status = if report.is_applicable() {
        Status::Pass
    } else {
        Status::NotApplicable
    };
    Record::new(report.name, status)
        .inputs(inputs)
        .values(values)
}

fn unavailable(name: &'static str, p: usize, reason: &str) -> Record {
    Record::new(name, Status::NotApplicable)
        .inputs(Fields::new().with("p", p))
        .values(
            Fields::new()
                .with("value", None::<f64>)
                .with("reason", reason),
        )
}

/// Every bound and threshold for the document, per degree.
pub fn bounds_report(
    doc: &InputDocument,
    opts: &BoundsOptions,
    tol: f64,
) -> Result<Report, UsageError> {
    let b = &doc.second_fundamental_form;
    let n = b.dim();
    check_dim(n)?;
    let degrees: Vec<usize> = match opts.p {
        Some(p) if p == 0 || p >= n => {
            return Err(invalid(format!("--p must lie in 1..={}, got {p}", n - 1)))
        }
        Some(p) => vec![p],
        None => (1..n).collect(),
    };
    let ambient = opts.ambient(doc.ambient)?;
    let s = b.summarize();
    let constant = ambient.and_then(|a| a.constant());
    let intrinsic = constant
        .map(|c| gauss_intrinsic(&constant_curvature(n, c), b))
        .transpose()?;
    let ric_min = match (opts.ric_min.or(doc.ric_min), &intrinsic) {
        (Some(r), _) => Some(r),
        (None, Some(r)) => Some(r.ricci_min()?),
        (None, None) => None,
    };
    let lambda = intrinsic
        .as_ref()
        .map(|r| r.curvature_operator().min_eigenvalue())
        .transpose()?;

    let mut records = Vec::new();
    for p in degrees {
        const NO_AMBIENT: &str = "no ambient curvature given";
        const NOT_SPACE_FORM: &str = "requires a space-form ambient";
        let missing = if ambient.is_none() {
            NO_AMBIENT
        } else {
            NOT_SPACE_FORM
        };
        match lambda {
            Some(l) => records.push(bound_record(&gallot_meyer_bound(n, p, l), p, None, tol)),
            None => records.push(unavailable("gallot-meyer", p, missing)),
        }
        match constant {
            Some(c) => {
                records.push(bound_record(
                    &extrinsic_eigenvalue_bound(p, c, b),
                    p,
                    None,
                    tol,
                ));
                let eps = n as f64 / (2.0 * p.min(n - p) as f64) - 1.0;
                let simplified = simplified_bounds(p, c, b, eps);
                for r in [
                    &simplified.traceless,
                    &simplified.full_norm,
                    &simplified.middle_degree,
                    &simplified.young,
                ] {
                    records.push(bound_record(r, p, None, tol));
                }
                let alpha = rigidity_threshold(n, p, c, s.mean_curvature_norm());
                records.push(bound_record(&alpha, p, Some(("norm2", s.norm2)), tol));
            }
            None => {
                for name in [
                    "extrinsic",
                    "traceless",
                    "full-norm",
                    "middle-degree",
                    "young",
                    "rigidity",
                ] {
                    records.push(unavailable(name, p, missing));
                }
            }
        }
        match (ambient, ric_min) {
            (Some(a), Some(r)) => {
                let bound =
                    ricci_eigenvalue_bound(n, p, a.lower(), a.upper(), r, s.mean_curvature_norm2);
                records.push(bound_record(&bound, p, None, tol));
            }
            (None, _) => records.push(unavailable("ricci", p, NO_AMBIENT)),
            (Some(_), None) => records.push(unavailable("ricci", p, "no ric_min given")),
        }
        match ambient {
            Some(a) => {
                let th = sphere_thresholds(n, p, a, s.mean_curvature_norm2);
                let weak = intrinsic
                    .as_ref()
                    .map(|r| r.ricci_p_min(p.min(n - p)))
                    .transpose()?;
                let weak = weak.map(|w| w / p.min(n - p) as f64);
                let rows: [(&BoundReport, Option<(&str, f64)>); 6] = [
                    (&th.ricci_betti, ric_min.map(|r| ("ric_min", r))),
                    (&th.ricci_sphere, ric_min.map(|r| ("ric_min", r))),
                    (
                        &th.weak_ricci_currents,
                        weak.map(|w| ("weak_ricci_mean", w)),
                    ),
                    (&th.ricci_one_currents, ric_min.map(|r| ("ric_min", r))),
                    (
                        &th.traceless_pinching,
                        Some(("traceless_norm2", s.traceless_norm2)),
                    ),
                    (&th.norm_pinching, Some(("norm2", s.norm2))),
                ];
                for (r, cmp) in rows {
                    records.push(bound_record(r, p, cmp, tol));
                }
            }
            None => {
                for name in [
                    "ricci-betti",
                    "ricci-sphere",
                    "weak-ricci-currents",
                    "ricci-one-currents",
                    "traceless-pinching",
                    "norm-pinching",
                ] {
                    records.push(unavailable(name, p, NO_AMBIENT));
                }
            }
        }
    }
    Ok(Report::new("bounds", 0, tol, records))
}

pub fn bounds(
    doc: &InputDocument,
    opts: &BoundsOptions,
    tol: f64,
    format: Format,
    out: &mut impl Write,
) -> Result<bool, UsageError> {
    emit(&bounds_report(doc, opts, tol)?, format, out)
}

/// `lo:hi:steps`, log-uniform in `μ`.
pub fn parse_sweep(spec: &str) -> Result<Vec<f64>, UsageError> {
    let bad = || {
        invalid(format!(
            "bad sweep `{spec}`: expected lo:hi:steps with 0 < lo <= hi and steps >= 1"
        ))
    };
    let parts: Vec<&str> = spec.split(':').collect();
    let [lo, hi, steps] = parts[..] else {
        return Err(bad());
    };
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let steps: usize = steps.trim().parse().map_err(|_| bad())?;
    if !(lo > 0.0 && lo <= hi && hi.is_finite()) || steps == 0 {
        return Err(bad());
    }
    if steps == 1 {
        return Ok(vec![lo]);
    }
    let ratio = (hi / lo).ln();
    Ok((0..steps)
        .map(|k| lo * (ratio * k as f64 / (steps - 1) as f64).exp())
        .collect())
}

/// Adds `μ*` to a sorted sweep when it lies inside the range.
pub fn with_critical(mut mus: Vec<f64>, n: usize, p: usize) -> Vec<f64> {
    if let (Some(m), Some(&lo), Some(&hi)) = (critical_mu(n, p), mus.first(), mus.last()) {
        let present = mus.iter().any(|&x| (x - m).abs() <= 1e-12 * m);
        if lo <= m && m <= hi && !present {
            mus.push(m);
            mus.sort_by(f64::total_cmp);
        }
    }
    mus
}

/// One table row for a Clifford torus, plus its pass/fail verdict.
pub fn clifford_row(n: usize, p: usize, mu: f64, tol: f64) -> Result<(Fields, bool), UsageError> {
    let model = clifford_torus(n, p, mu)?;
    let b = &model.second_fundamental_form;
    let closed = CliffordClosedForms::new(n, p, mu);
    let point = sharpness_point(n, p, mu, tol)?;
    let s = b.summarize();
    let c = model.ambient_c;
    let simplified = simplified_bounds(p, c, b, 0.0);
    let ric_min = closed.ricci_min();
    let th = sphere_thresholds(n, p, Ambient::Constant(c), s.mean_curvature_norm2);
    let q = p.min(n - p);
    let beta = p_curvature_beta(s.principal_curvatures.as_deref().unwrap_or(&[]), q)?;

    let mut row = Fields::new()
        .with("n", n)
        .with("p", p)
        .with("mu", mu)
        .with("critical", point.critical)
        .with("mean_curvature", closed.mean_curvature)
        .with("norm2", s.norm2)
        .with("traceless_norm2", s.traceless_norm2)
        .with("gamma", s.gamma(q))
        .with("beta", beta)
        .with("extrinsic_bound", extrinsic_eigenvalue_bound(p, c, b).value)
        .with("traceless_bound", simplified.traceless.value)
        .with("full_norm_bound", simplified.full_norm.value)
        .with("middle_degree_bound", simplified.middle_degree.value)
        .with(
            "ricci_bound",
            ricci_eigenvalue_bound(n, p, c, c, ric_min, s.mean_curvature_norm2).value,
        )
        .with(
            "rigidity_threshold",
            rigidity_threshold(n, p, c, closed.mean_curvature.abs()).value,
        )
        .with("attains_rigidity", attains_rigidity_threshold(n, p, mu))
        .with("ricci_min", ric_min)
        .with("ricci_threshold", th.ricci_betti.value);

    let mut ok = true;
    let mut worst = 0.0f64;
    for chk in &point.checks {
        ok &= chk.verdict != Verdict::Violated;
        if let Some(r) = chk.residual {
            worst = worst.max(r.abs());
        }
        row.push(
            &format!("residual_{}", chk.name.replace('-', "_")),
            chk.residual.map(f64::abs),
        );
    }
    // Ric ≡ n − 2 on the Einstein torus
    let einstein = point.critical.then(|| {
        let ric = model.intrinsic.ricci();
        (0..n)
            .map(|i| (ric[(i, i)] - (n - 2) as f64).abs())
            .fold(0.0, f64::max)
    });
    if let Some(r) = einstein {
        ok &= r <= tol;
        worst = worst.max(r);
    }
    row.push("einstein", einstein.is_some());
    row.push("residual_einstein", einstein);
    row.push("max_residual", worst);
    row.push("status", if ok { "pass" } else { "fail" });
    Ok((row, ok))
}

pub fn clifford(
    n: usize,
    p: usize,
    mus: &[f64],
    tol: f64,
    format: Format,
    out: &mut impl Write,
) -> Result<bool, UsageError> {
    check_dim(n)?;
    if n < 2 || p == 0 || p >= n {
        return Err(invalid(format!(
            "need 1 <= p <= n-1 with n >= 2, got n={n}, p={p}"
        )));
    }
    if let Some(bad) = mus.iter().find(|m| !(**m > 0.0 && m.is_finite())) {
        return Err(invalid(format!(
            "mu must be positive and finite, got {bad}"
        )));
    }
    let mut table = Table::default();
    let mut records = Vec::new();
    let mut all_ok = true;
    for &mu in mus {
        let (row, ok) = clifford_row(n, p, mu, tol)?;
        all_ok &= ok;
        if format == Format::Json {
            records.push(table_record(
                "clifford",
                row,
                ok,
                &["n", "p", "mu", "critical"],
            ));
        } else {
            table.rows.push(row);
        }
    }
    match format {
        Format::Csv => table.write_csv(&mut *out)?,
        Format::Json => Report::new("clifford", 0, tol, records).write_json(&mut *out)?,
    }
    Ok(all_ok)
}

/// Splits a table row into record inputs and values.
fn table_record(name: &str, row: Fields, ok: bool, input_keys: &[&str]) -> Record {
    let mut inputs = Fields::new();
    let mut values = Fields::new();
    let mut residual = None;
    for (k, v) in row.0 {
        if k == "status" {
            continue;
        }
        if k == "max_residual" {
            if let crate::report::Field::Real(r) = v {
                residual = Some(r);
            }
            continue;
        }
        if input_keys.contains(&k.as_str()) {
            inputs.0.push((k, v));
        } else {
            values.0.push((k, v));
        }
    }
    let mut rec = Record::new(name, Status::from_holds(ok))
        .inputs(inputs)
        .values(values);
    rec.residual = residual;
    rec
}

/// Spectrum table of a geodesic sphere with the extrinsic bound per degree.
pub fn sphere(
    n: usize,
    m: usize,
    c: f64,
    mean_norm: f64,
    tol: f64,
    format: Format,
    out: &mut impl Write,
) -> Result<bool, UsageError> {
    check_dim(n)?;
    if m == 0 {
        return Err(invalid("m must be at least 1"));
    }
    if !(c.is_finite() && mean_norm.is_finite() && mean_norm >= 0.0) {
        return Err(invalid(
            "c and the mean curvature must be finite, the mean curvature non-negative",
        ));
    }
    let model = geodesic_sphere(n, m, c, mean_norm)?;
    let mut table = Table::default();
    let mut records = Vec::new();
    let mut all_ok = true;
    let gauss = model.gauss_consistency()?;
    for q in 0..=n {
        let bound = (1..n)
            .contains(&q)
            .then(|| extrinsic_eigenvalue_bound(q, c, &model.second_fundamental_form).value)
            .flatten();
        let first = model.spectrum.first[q];
        let residual = bound.zip(first).map(|(b, f)| (b - f).abs());
        let ok = residual.is_none_or(|r| r <= tol * f64::max(1.0, first.unwrap_or(0.0).abs()))
            && gauss <= tol;
        all_ok &= ok;
        let row = Fields::new()
            .with("n", n)
            .with("m", m)
            .with("c", c)
            .with("mean_curvature", mean_norm)
            .with("q", q)
            .with("first", first)
            .with("exact", model.spectrum.exact[q])
            .with("coexact", model.spectrum.coexact[q])
            .with("betti_nonzero", model.nonzero_betti.contains(&q))
            .with("extrinsic_bound", bound)
            .with("max_residual", residual.unwrap_or(0.0).max(gauss))
            .with("status", if ok { "pass" } else { "fail" });
        if format == Format::Json {
            records.push(table_record(
                "sphere",
                row,
                ok,
                &["n", "m", "c", "mean_curvature", "q"],
            ));
        } else {
            table.rows.push(row);
        }
    }
    match format {
        Format::Csv => table.write_csv(&mut *out)?,
        Format::Json => Report::new("sphere", 0, tol, records).write_json(&mut *out)?,
    }
    Ok(all_ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hodgebound_core::submanifold::SecondFundamentalForm;

    fn clifford_doc() -> InputDocument {
        InputDocument::from_json(
            r#"{"n":4,"m":1,"h":[[[1,0,0,0],[0,1,0,0],[0,0,-1,0],[0,0,0,-1]]],"ambient":{"kind":"constant","c":1}}"#,
        )
        .unwrap()
    }

    fn row_value(report: &Report, name: &str) -> Option<f64> {
        let rec = report.records.iter().find(|r| r.name == name).unwrap();
        match rec.values.get("value") {
            Some(crate::report::Field::Real(v)) => Some(*v),
            _ => None,
        }
    }

    #[test]
    fn clifford_document_bounds() {
        let opts = BoundsOptions {
            p: Some(2),
            ..Default::default()
        };
        let report = bounds_report(&clifford_doc(), &opts, 1e-9).unwrap();
        assert!(row_value(&report, "extrinsic").unwrap().abs() < 1e-12);
        assert!(row_value(&report, "ricci").unwrap().abs() < 1e-12);
        assert!((row_value(&report, "ricci-betti").unwrap() - 2.0).abs() < 1e-12);
        assert!(!report.failed());
    }

    #[test]
    fn inverted_pinching_is_not_applicable() {
        let opts = BoundsOptions {
            p: Some(1),
            c_lower: Some(1.0),
            c_upper: Some(0.5),
            ric_min: Some(3.0),
            ..Default::default()
        };
        let report = bounds_report(&clifford_doc(), &opts, 1e-9).unwrap();
        let ricci = report.records.iter().find(|r| r.name == "ricci").unwrap();
        assert_eq!(ricci.status, Status::NotApplicable);
    }

    #[test]
    fn totally_geodesic_bound() {
        let doc = InputDocument {
            second_fundamental_form: SecondFundamentalForm::zero(4, 1),
            ambient: Some(Ambient::Constant(1.0)),
            ric_min: None,
        };
        let opts = BoundsOptions {
            p: Some(1),
            ..Default::default()
        };
        let report = bounds_report(&doc, &opts, 1e-9).unwrap();
        assert_eq!(row_value(&report, "extrinsic"), Some(4.0));
        // ric_min falls back to the Gauss-equation curvature
        assert!((row_value(&report, "ricci").unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn missing_ambient_leaves_rows_not_applicable() {
        let doc = InputDocument {
            second_fundamental_form: SecondFundamentalForm::zero(3, 1),
            ambient: None,
            ric_min: None,
        };
        let report = bounds_report(&doc, &BoundsOptions::default(), 1e-9).unwrap();
        assert!(report
            .records
            .iter()
            .all(|r| r.status == Status::NotApplicable));
        assert_eq!(report.records.len(), 2 * 14);
    }

    #[test]
    fn sweep_syntax() {
        let mus = parse_sweep("0.5:2:3").unwrap();
        assert_eq!(mus.len(), 3);
        assert!((mus[1] - 1.0).abs() < 1e-15);
        assert_eq!(parse_sweep("1:1:1").unwrap(), vec![1.0]);
        for bad in [
            "1:2", "0:1:3", "2:1:3", "1:2:0", "a:b:c", "1:2:3:4", "-1:2:2",
        ] {
            assert!(parse_sweep(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn sweep_inserts_critical_mu() {
        let mus = with_critical(parse_sweep("0.5:2:4").unwrap(), 6, 2);
        let star = critical_mu(6, 2).unwrap();
        assert_eq!(mus.len(), 5);
        assert!(mus.contains(&star));
        assert!(mus.windows(2).all(|w| w[0] < w[1]));
        // outside the range: unchanged
        assert_eq!(with_critical(vec![2.0, 3.0], 6, 2).len(), 2);
    }

    #[test]
    fn clifford_row_at_the_sharp_point() {
        let (row, ok) = clifford_row(4, 2, 1.0, 1e-10).unwrap();
        assert!(ok);
        assert_eq!(row.get("einstein"), Some(&crate::report::Field::Bool(true)));
        for (k, v) in &row.0 {
            if k.starts_with("residual_") {
                if let crate::report::Field::Real(r) = v {
                    assert!(*r <= 1e-10, "{k} = {r}");
                }
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        let mut sink = Vec::new();
        assert!(clifford(4, 1, &[0.0], 1e-9, Format::Csv, &mut sink).is_err());
        assert!(clifford(4, 4, &[1.0], 1e-9, Format::Csv, &mut sink).is_err());
        assert!(clifford(40, 1, &[1.0], 1e-9, Format::Csv, &mut sink).is_err());
        assert!(sphere(4, 0, 1.0, 0.0, 1e-9, Format::Csv, &mut sink).is_err());
    }
}
