//! Declarative jobs: JSON configuration in, classification report out.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use rayon::prelude::*;
use serde_json::{json, Map, Number, Value};

use crate::error::{Error, Result};
use crate::flag::{BundleClass, BundleWeight, FlagVariety, KahlerClass};
use crate::invariants::{classify_invariant_fields, ddc_applicable, DdcVerdict, FieldCase, InvariantFieldClassification, SIGN_CONVENTION};
use crate::momentum::{
    asymptotics, build_profile_inputs, classify_behavior, default_tau0, fiber_maps, find_smooth_c, metric_index,
    oracle_deviation, Asymptotics, BehaviorReport, ConeData, EndpointLocation, EndpointRow, FiberSample, IntervalEnd,
    MomentumInterval, MomentumProfile, OracleOptions, SmoothCSearch,
};
use crate::poly::{frac, int, to_f64, Polynomial, Rational, RootEnclosure};
use crate::rootsys::{format_root, Basis, LieTypeSpec, RootSystem, WeightVector};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Debug, PartialEq)]
pub struct JobOptions {
    /// Width of the enclosure of the far end of the interval.
    pub tolerance: f64,
    /// Relative tolerance of the fibre-map quadrature.
    pub quadrature_rtol: f64,
    pub sample_count: usize,
    pub tau_max: Rational,
    pub tau0: Option<Rational>,
    pub find_smooth_c: Option<(Rational, Rational)>,
    pub smooth_samples: usize,
    pub emit_samples: bool,
    pub laurent_order: u32,
    pub oracle_step: f64,
}

impl Default for JobOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-12,
            quadrature_rtol: 1e-10,
            sample_count: 16,
            tau_max: int(4),
            tau0: None,
            find_smooth_c: None,
            smooth_samples: 16,
            emit_samples: true,
            laurent_order: 6,
            oracle_step: 1e-3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct JobSpec {
    /// Canonical form, e.g. `A1xB2`.
    pub lie_type: String,
    /// One-based, ascending.
    pub pi_prime: Vec<usize>,
    pub lambda: Vec<i64>,
    pub kappa: Vec<Rational>,
    pub scalar_curvature: Rational,
    pub options: JobOptions,
}

fn schema(path: &str, message: impl Into<String>) -> Error {
    Error::Schema { path: path.to_string(), message: message.into() }
}

fn value_err(path: &str, message: impl Into<String>) -> Error {
    Error::Value { path: path.to_string(), message: message.into() }
}

fn parse_rational(v: &Value, path: &str) -> Result<Rational> {
    match v {
        Value::Number(n) => {
            let text = n.to_string();
            BigInt::from_str(&text)
                .map(Rational::from_integer)
                .map_err(|_| schema(path, format!("expected an integer or a \"p/q\" string, got {text}")))
        }
        Value::String(s) => Rational::from_str(s.trim()).map_err(|e| schema(path, format!("bad rational {s:?}: {e}"))),
        _ => Err(schema(path, "expected an integer or a \"p/q\" string")),
    }
}

fn parse_int(v: &Value, path: &str) -> Result<i64> {
    v.as_i64().filter(|_| v.is_i64() || v.is_u64()).ok_or_else(|| schema(path, "expected an integer"))
}

fn parse_count(v: &Value, path: &str) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| schema(path, "expected a non-negative integer"))
}

fn parse_real(v: &Value, path: &str) -> Result<f64> {
    match v.as_f64() {
        Some(x) if x.is_finite() && x > 0.0 => Ok(x),
        Some(_) => Err(value_err(path, "expected a positive finite number")),
        None => Err(schema(path, "expected a number")),
    }
}

fn parse_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| schema(path, "expected an array"))
}

fn check_keys(obj: &Map<String, Value>, allowed: &[&str], path: &str) -> Result<()> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(schema(&format!("{path}.{k}"), "unknown key")),
        None => Ok(()),
    }
}

fn check_version(obj: &Map<String, Value>, path: &str) -> Result<()> {
    match obj.get("schema_version") {
        None => Ok(()),
        Some(v) if v.as_u64() == Some(SCHEMA_VERSION) => Ok(()),
        Some(v) => Err(schema(&format!("{path}.schema_version"), format!("unsupported schema version {v}"))),
    }
}

impl JobOptions {
    fn from_value(v: &Value, path: &str) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| schema(path, "expected an object"))?;
        check_keys(
            obj,
            &[
                "tolerance",
                "quadrature_rtol",
                "sample_count",
                "tau_max",
                "tau0",
                "find_smooth_c",
                "smooth_samples",
                "emit_samples",
                "laurent_order",
                "oracle_step",
            ],
            path,
        )?;
        let mut o = JobOptions::default();
        let sub = |k: &str| format!("{path}.{k}");
        if let Some(x) = obj.get("tolerance") {
            o.tolerance = parse_real(x, &sub("tolerance"))?;
        }
        if let Some(x) = obj.get("quadrature_rtol") {
            o.quadrature_rtol = parse_real(x, &sub("quadrature_rtol"))?;
        }
        if let Some(x) = obj.get("sample_count") {
            o.sample_count = parse_count(x, &sub("sample_count"))?;
        }
        if let Some(x) = obj.get("tau_max") {
            o.tau_max = parse_rational(x, &sub("tau_max"))?;
            if !o.tau_max.is_positive() {
                return Err(value_err(&sub("tau_max"), "must be positive"));
            }
        }
        match obj.get("tau0") {
            None | Some(Value::Null) => {}
            Some(x) => o.tau0 = Some(parse_rational(x, &sub("tau0"))?),
        }
        match obj.get("find_smooth_c") {
            None | Some(Value::Null) => {}
            Some(x) => {
                let p = sub("find_smooth_c");
                let arr = parse_array(x, &p)?;
                if arr.len() != 2 {
                    return Err(schema(&p, "expected [min, max]"));
                }
                o.find_smooth_c =
                    Some((parse_rational(&arr[0], &format!("{p}[0]"))?, parse_rational(&arr[1], &format!("{p}[1]"))?));
            }
        }
        if let Some(x) = obj.get("smooth_samples") {
            o.smooth_samples = parse_count(x, &sub("smooth_samples"))?;
        }
        if let Some(x) = obj.get("emit_samples") {
            o.emit_samples = x.as_bool().ok_or_else(|| schema(&sub("emit_samples"), "expected a boolean"))?;
        }
        if let Some(x) = obj.get("laurent_order") {
            o.laurent_order = u32::try_from(parse_count(x, &sub("laurent_order"))?)
                .map_err(|_| value_err(&sub("laurent_order"), "too large"))?;
        }
        if let Some(x) = obj.get("oracle_step") {
            o.oracle_step = parse_real(x, &sub("oracle_step"))?;
        }
        if o.emit_samples && o.sample_count < 2 {
            return Err(value_err(&sub("sample_count"), "must be at least 2 when emit_samples is set"));
        }
        Ok(o)
    }

    fn to_value(&self) -> Value {
        json!({
            "tolerance": real(self.tolerance),
            "quadrature_rtol": real(self.quadrature_rtol),
            "sample_count": self.sample_count,
            "tau_max": rat(&self.tau_max),
            "tau0": self.tau0.as_ref().map(rat),
            "find_smooth_c": self.find_smooth_c.as_ref().map(|(a, b)| json!([rat(a), rat(b)])),
            "smooth_samples": self.smooth_samples,
            "emit_samples": self.emit_samples,
            "laurent_order": self.laurent_order,
            "oracle_step": real(self.oracle_step),
        })
    }
}

impl JobSpec {
    pub fn from_value(v: &Value, path: &str) -> Result<Self> {
        let obj = v.as_object().ok_or_else(|| schema(path, "expected an object"))?;
        check_keys(obj, &["schema_version", "lie_type", "pi_prime", "lambda", "kappa", "scalar_curvature", "options"], path)?;
        check_version(obj, path)?;
        let field = |k: &str| obj.get(k).ok_or_else(|| schema(&format!("{path}.{k}"), "missing required key"));
        let sub = |k: &str| format!("{path}.{k}");

        let lt = field("lie_type")?.as_str().ok_or_else(|| schema(&sub("lie_type"), "expected a string"))?;
        let spec = LieTypeSpec::from_str(lt).map_err(|e| schema(&sub("lie_type"), e.to_string()))?;
        let rank = spec.rank();

        let mut pi_prime = Vec::new();
        for (i, x) in parse_array(field("pi_prime")?, &sub("pi_prime"))?.iter().enumerate() {
            let p = format!("{}[{i}]", sub("pi_prime"));
            let k = parse_count(x, &p)?;
            if k == 0 || k > rank {
                return Err(value_err(&p, format!("index {k} outside 1..={rank}")));
            }
            if pi_prime.contains(&k) {
                return Err(value_err(&p, format!("duplicate index {k}")));
            }
            pi_prime.push(k);
        }
        pi_prime.sort_unstable();
        let width = rank - pi_prime.len();
        if width == 0 {
            return Err(value_err(&sub("pi_prime"), "contains every simple root; the flag variety is a point"));
        }

        let lambda_arr = parse_array(field("lambda")?, &sub("lambda"))?;
        if lambda_arr.len() != width {
            return Err(schema(&sub("lambda"), format!("expected {width} coefficients, got {}", lambda_arr.len())));
        }
        let lambda = lambda_arr
            .iter()
            .enumerate()
            .map(|(i, x)| parse_int(x, &format!("{}[{i}]", sub("lambda"))))
            .collect::<Result<Vec<_>>>()?;
        if lambda.iter().all(|&x| x == 0) {
            return Err(Error::ZeroWeight);
        }

        let kappa_arr = parse_array(field("kappa")?, &sub("kappa"))?;
        if kappa_arr.len() != width {
            return Err(schema(&sub("kappa"), format!("expected {width} coefficients, got {}", kappa_arr.len())));
        }
        let mut kappa = Vec::with_capacity(width);
        for (i, x) in kappa_arr.iter().enumerate() {
            let p = format!("{}[{i}]", sub("kappa"));
            let q = parse_rational(x, &p)?;
            if !q.is_positive() {
                return Err(Error::NonPositiveClass(format!("{p} = {q}")));
            }
            kappa.push(q);
        }

        let scalar_curvature = parse_rational(field("scalar_curvature")?, &sub("scalar_curvature"))?;
        let options = match obj.get("options") {
            None => JobOptions::default(),
            Some(o) => JobOptions::from_value(o, &sub("options"))?,
        };
        Ok(Self { lie_type: spec.to_string(), pi_prime, lambda, kappa, scalar_curvature, options })
    }

    /// Canonical echo; parses back to an equal spec.
    pub fn to_value(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "lie_type": self.lie_type,
            "pi_prime": self.pi_prime,
            "lambda": self.lambda,
            "kappa": self.kappa.iter().map(rat).collect::<Vec<_>>(),
            "scalar_curvature": rat(&self.scalar_curvature),
            "options": self.options.to_value(),
        })
    }
}

/// Parse a single job object, an array of job objects, or
/// `{"schema_version": 1, "jobs": [...]}`. The flag tells whether the input
/// was a batch.
pub fn parse_config(text: &str) -> Result<(Vec<JobSpec>, bool)> {
    let v: Value = serde_json::from_str(text).map_err(|e| schema("$", format!("invalid JSON: {e}")))?;
    match &v {
        Value::Array(items) => Ok((
            items.iter().enumerate().map(|(i, x)| JobSpec::from_value(x, &format!("$[{i}]"))).collect::<Result<_>>()?,
            true,
        )),
        Value::Object(obj) if obj.contains_key("jobs") => {
            check_keys(obj, &["schema_version", "jobs"], "$")?;
            check_version(obj, "$")?;
            let items = parse_array(&obj["jobs"], "$.jobs")?;
            Ok((
                items
                    .iter()
                    .enumerate()
                    .map(|(i, x)| JobSpec::from_value(x, &format!("$.jobs[{i}]")))
                    .collect::<Result<_>>()?,
                true,
            ))
        }
        Value::Object(_) => Ok((vec![JobSpec::from_value(&v, "$")?], false)),
        _ => Err(schema("$", "expected an object or an array of objects")),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleSummary {
    pub tau_max: f64,
    pub step: f64,
    pub max_deviation: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub job: JobSpec,
    pub fv: FlagVariety,
    pub bundle_class: BundleClass,
    pub curvature: Vec<Rational>,
    pub kahler: Vec<Rational>,
    pub ke: Vec<Rational>,
    pub fields: InvariantFieldClassification,
    pub ddc: DdcVerdict,
    pub profile: MomentumProfile,
    pub behavior: BehaviorReport,
    pub metric_index: Option<Rational>,
    pub asymptotics: Option<Asymptotics>,
    pub oracle: OracleSummary,
    pub tau0: Rational,
    pub samples: Vec<FiberSample>,
    pub smooth_c: Option<SmoothCSearch>,
}

/// Points `hi * k / N`, `k = 1..=N`.
fn sample_grid(interval: &MomentumInterval, tau_max: &Rational, n: usize) -> Vec<Rational> {
    let hi = match &interval.end {
        IntervalEnd::Infinite => tau_max.clone(),
        IntervalEnd::Finite(enc) => {
            let cap = &enc.lo * frac(9, 10);
            if cap < *tau_max {
                cap
            } else {
                tau_max.clone()
            }
        }
    };
    (1..=n).map(|k| &hi * int(k as i64) / int(n as i64)).collect()
}

pub fn run(job: &JobSpec) -> Result<Report> {
    let rs = RootSystem::parse(&job.lie_type)?;
    let fv = FlagVariety::new(rs, job.pi_prime.iter().map(|i| i - 1))?;
    let lambda = BundleWeight::new(job.lambda.clone())?;
    let kappa = KahlerClass::new(job.kappa.clone())?;
    let bundle_class = fv.classify_bundle_weight(&lambda)?;
    let fields = classify_invariant_fields(&fv, &lambda)?;
    let ddc = ddc_applicable(&fv, &lambda)?;
    let inputs = build_profile_inputs(&fv, &lambda, &kappa)?;
    let profile = MomentumProfile::solve(&inputs, &job.scalar_curvature);
    if !profile.residual().is_zero() {
        return Err(Error::InternalInconsistency("nonzero ODE residual".into()));
    }
    let width = Rational::from_float(job.options.tolerance).ok_or_else(|| value_err("$.options.tolerance", "not finite"))?;
    let behavior = classify_behavior(&profile, &width)?;
    let interval = &behavior.interval;
    let metric_index = match metric_index(&fv, &lambda) {
        Ok(i) => Some(i),
        Err(Error::DivisionByZero(_)) => None,
        Err(e) => return Err(e),
    };
    let asymptotics = match asymptotics(&profile, interval, job.options.laurent_order) {
        Ok(a) => Some(a),
        Err(Error::WrongCase(_)) => None,
        Err(e) => return Err(e),
    };

    let oracle_max = match &interval.end {
        IntervalEnd::Infinite => 10.0,
        IntervalEnd::Finite(enc) => (0.9 * to_f64(&enc.lo)).min(10.0),
    };
    let opts = OracleOptions { tau_max: oracle_max, step: job.options.oracle_step, ..Default::default() };
    let oracle = OracleSummary {
        tau_max: oracle_max,
        step: job.options.oracle_step,
        max_deviation: oracle_deviation(&profile, &opts, 10)?,
    };

    let tau0 = job.options.tau0.clone().unwrap_or_else(|| default_tau0(interval));
    let samples = if job.options.emit_samples {
        let grid = sample_grid(interval, &job.options.tau_max, job.options.sample_count);
        fiber_maps(&profile, interval, &tau0, &grid, job.options.quadrature_rtol)?
    } else {
        if !interval.contains_interior(&tau0) {
            return Err(Error::GridOutOfInterval(tau0.to_string()));
        }
        Vec::new()
    };
    let smooth_c = match &job.options.find_smooth_c {
        Some((lo, hi)) => Some(find_smooth_c(&fv, &lambda, &kappa, (lo, hi), job.options.smooth_samples, 1e-10)?),
        None => None,
    };
    Ok(Report {
        job: job.clone(),
        curvature: fv.curvature_coeffs(&lambda)?,
        kahler: fv.kahler_coeffs(&kappa)?,
        ke: fv.ke_coeffs(),
        fv,
        bundle_class,
        fields,
        ddc,
        profile,
        behavior,
        metric_index,
        asymptotics,
        oracle,
        tau0,
        samples,
        smooth_c,
    })
}

/// Runs every job on a pool of `threads` workers; results keep input order.
pub fn run_batch(jobs: &[JobSpec], threads: usize) -> Vec<Result<Report>> {
    if threads <= 1 {
        return jobs.iter().map(run).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(|| jobs.par_iter().map(run).collect()),
        Err(_) => jobs.iter().map(run).collect(),
    }
}

// ---- rendering ----

fn rat(q: &Rational) -> Value {
    Value::String(q.to_string())
}

fn rats(qs: &[Rational]) -> Value {
    Value::Array(qs.iter().map(rat).collect())
}

/// Binary64 with 17 significant digits; `null` when not finite.
pub fn real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    Value::Number(Number::from_str(&format_real(x)).expect("formatted float is a JSON number"))
}

pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

fn poly(p: &Polynomial) -> Value {
    rats(p.coeffs())
}

fn enclosure(e: &RootEnclosure) -> Value {
    json!({ "lo": rat(&e.lo), "hi": rat(&e.hi), "approx": real(to_f64(&e.midpoint())) })
}

fn endpoint(row: &EndpointRow) -> Value {
    let location = match &row.location {
        EndpointLocation::Origin => json!("origin"),
        EndpointLocation::Infinity => json!("infinity"),
        EndpointLocation::Finite(e) => enclosure(e),
    };
    json!({
        "location": location,
        "zero_order": row.zero_order,
        "derivative_abs": row.derivative_abs.map(real),
        "growth_degree": row.growth_degree,
        "fibre_range_finite": row.fibre_range_finite,
        "distance_finite": row.distance_finite,
        "complete": row.complete,
        "table_row": row.table_row,
    })
}

fn cone(c: &ConeData) -> Value {
    json!({
        "b": enclosure(&c.b),
        "phi_prime_at_b": real(c.phi_prime_at_b),
        "cone_angle_factor": real(c.cone_angle_factor),
        "smooth_completion": c.smooth_completion,
    })
}

fn interval_value(iv: &MomentumInterval) -> Value {
    match &iv.end {
        IntervalEnd::Infinite => json!({ "start": "0", "end": "infinity" }),
        IntervalEnd::Finite(e) => json!({ "start": "0", "end": enclosure(e) }),
    }
}

fn weight_entry(rs: &RootSystem, root: &[i64]) -> Value {
    let w = rs.convert(&WeightVector::from_root(root), Basis::FundamentalWeight).expect("root has the ambient rank");
    json!({ "label": format_root(root), "simple_roots": root, "fundamental_weights": rats(&w.coords) })
}

impl Report {
    pub fn to_value(&self) -> Value {
        let fv = &self.fv;
        let rs = &fv.rs;
        let b = &self.behavior;
        let phi = self.profile.phi().reduced();
        let asym = match &self.asymptotics {
            None => Value::Null,
            Some(Asymptotics::ScalarFlat(a)) => json!({
                "kind": "scalar_flat",
                "laurent": a.laurent.iter().map(|(e, c)| json!([e, rat(c)])).collect::<Vec<_>>(),
                "metric_index": rat(&a.metric_index),
                "cone_exponent": rat(&a.cone_exponent),
                "constant_term": rat(&a.constant_term),
                "terminates": a.terminates,
                "tail_order": a.tail_order,
                "leading_gap": a.leading_gap,
                "refined_decay": a.refined,
                "decay_order": a.decay_order,
            }),
            Some(Asymptotics::Hyperbolic(h)) => json!({
                "kind": "hyperbolic",
                "leading_coefficient": rat(&h.leading_coefficient),
                "alpha_squared": rat(&h.alpha_squared),
                "alpha": real(h.alpha),
            }),
            Some(Asymptotics::Cone(c)) => {
                let mut v = cone(c);
                v["kind"] = json!("cone");
                v
            }
            Some(Asymptotics::Unbounded { growth_degree }) => json!({ "kind": "unbounded", "growth_degree": growth_degree }),
        };
        let mut out = json!({
            "schema_version": SCHEMA_VERSION,
            "job": self.job.to_value(),
            "flag": {
                "lie_type": rs.lie_type.to_string(),
                "rank": rs.rank,
                "pi_prime": self.job.pi_prime,
                "s_star_indices": fv.s_star_indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "dim_x": fv.dim(),
                "n": fv.bundle_dim(),
                "d_plus": fv.d_plus.iter().map(|r| weight_entry(rs, r)).collect::<Vec<_>>(),
                "delta": weight_entry(rs, &fv.delta),
            },
            "bundle": {
                "class": self.bundle_class.as_str(),
                "curvature_coeffs": rats(&self.curvature),
                "kahler_coeffs": rats(&self.kahler),
                "ke_coeffs": rats(&self.ke),
            },
            "invariant_fields": {
                "case": match self.fields.case { FieldCase::A => "A", FieldCase::B => "B" },
                "dimension": self.fields.dimension(),
                "distinguished_root": self.fields.distinguished_root.as_ref().map(|r| format_root(r)),
                "proportionality": self.fields.proportionality.as_ref().map(rat),
                "sign_convention": SIGN_CONVENTION,
                "ddc_applicable": self.ddc.applicable,
                "ddc_reason": self.ddc.reason,
            },
            "profile": {
                "c": rat(&self.profile.c),
                "n": self.profile.n,
                "qtilde": poly(&self.profile.qtilde),
                "p": poly(&self.profile.p),
                "phi_num": poly(&self.profile.phi_num),
                "phi": {
                    "text": phi_text(&phi.numerator, &phi.denominator),
                    "numerator": poly(&phi.numerator),
                    "denominator": poly(&phi.denominator),
                },
                "residual_zero": self.profile.residual().is_zero(),
            },
            "interval": interval_value(&b.interval),
            "behavior": {
                "theorem_case": b.theorem_case.as_str(),
                "domain": b.domain.as_str(),
                "complete": b.complete,
                "origin": endpoint(&b.origin),
                "far_end": endpoint(&b.far_end),
                "metric_index": b.metric_index.as_ref().map(rat),
                "cone_exponent": b.cone_exponent.as_ref().map(rat),
                "hyperbolic_leading": b.hyperbolic_leading.as_ref().map(rat),
                "hyperbolic_rate": b.hyperbolic_rate.map(real),
                "cone": b.cone.as_ref().map(cone),
            },
            "metric_index": self.metric_index.as_ref().map(rat),
            "asymptotics": asym,
            "oracle": {
                "method": "rk4",
                "tau_max": real(self.oracle.tau_max),
                "step": real(self.oracle.step),
                "max_deviation": real(self.oracle.max_deviation),
            },
            "tau0": rat(&self.tau0),
        });
        if self.job.options.emit_samples {
            out["samples"] = Value::Array(
                self.samples
                    .iter()
                    .map(|s| {
                        json!({
                            "tau": real(s.tau), "phi": real(s.phi), "t": real(s.t),
                            "s": real(s.s), "f": real(s.f), "r": real(s.r),
                        })
                    })
                    .collect(),
            );
        }
        if let Some(sc) = &self.smooth_c {
            out["smooth_c"] = json!({
                "samples": sc.samples.iter().map(|(c, g)| json!({ "c": rat(c), "g": g.map(real) })).collect::<Vec<_>>(),
                "candidate": sc.candidate.as_ref().map(|k| json!({
                    "c_lo": rat(&k.c_lo), "c_hi": rat(&k.c_hi), "c": real(k.c), "g": real(k.g), "exact": k.exact,
                })),
            });
        }
        out
    }

    pub fn to_csv(&self) -> Result<String> {
        if !self.job.options.emit_samples {
            return Err(Error::UnsupportedFormat("csv output needs samples; set options.emit_samples".into()));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(["tau", "phi", "t", "s", "f", "r"]).map_err(io)?;
        for s in &self.samples {
            w.write_record([s.tau, s.phi, s.t, s.s, s.f, s.r].map(format_real)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
    }
}

fn phi_text(num: &Polynomial, den: &Polynomial) -> String {
    if den.degree() == Some(0) && den.leading() == int(1) {
        num.to_string()
    } else {
        format!("({num}) / ({den})")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

fn error_value(e: &Error) -> Value {
    json!({ "exit_code": e.exit_code(), "message": e.to_string() })
}

/// Render one job's outcome, or a batch, to bytes. Also returns the exit
/// code: 0, or that of the first failing job.
pub fn emit(results: &[Result<Report>], batch: bool, format: Format) -> Result<(String, i32)> {
    let code = results.iter().find_map(|r| r.as_ref().err()).map_or(0, Error::exit_code);
    match format {
        Format::Csv => {
            if batch || results.len() != 1 {
                return Err(Error::UnsupportedFormat("csv output takes a single job".into()));
            }
            let report = results[0].as_ref().map_err(Clone::clone)?;
            Ok((report.to_csv()?, 0))
        }
        Format::Json if !batch => {
            let report = results[0].as_ref().map_err(Clone::clone)?;
            Ok((pretty(&report.to_value()), 0))
        }
        Format::Json => {
            let reports: Vec<Value> = results
                .iter()
                .map(|r| match r {
                    Ok(rep) => rep.to_value(),
                    Err(e) => json!({ "error": error_value(e) }),
                })
                .collect();
            Ok((pretty(&json!({ "schema_version": SCHEMA_VERSION, "reports": reports })), code))
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const BURNS: &str = r#"{"lie_type":"A1","pi_prime":[],"lambda":[-1],"kappa":[1],"scalar_curvature":0}"#;

    #[test]
    fn parse_burns() {
        let (jobs, batch) = parse_config(BURNS).unwrap();
        assert!(!batch);
        assert_eq!(jobs[0].lambda, vec![-1]);
        assert_eq!(jobs[0].kappa, vec![int(1)]);
        assert_eq!(jobs[0].options, JobOptions::default());
    }

    #[test]
    fn parse_errors() {
        let bad_type = BURNS.replace("\"A1\"", "\"H2\"");
        assert!(matches!(parse_config(&bad_type), Err(Error::Schema { .. })));
        let zero_kappa = BURNS.replace("\"kappa\":[1]", "\"kappa\":[0]");
        let err = parse_config(&zero_kappa).unwrap_err();
        assert!(matches!(err, Error::NonPositiveClass(_)));
        assert_eq!(err.exit_code(), 2);
        let zero_lambda = BURNS.replace("[-1]", "[0]");
        assert_eq!(parse_config(&zero_lambda).unwrap_err(), Error::ZeroWeight);
        let float_kappa = BURNS.replace("\"kappa\":[1]", "\"kappa\":[0.5]");
        match parse_config(&float_kappa).unwrap_err() {
            Error::Schema { path, .. } => assert_eq!(path, "$.kappa[0]"),
            e => panic!("{e:?}"),
        }
        let unknown = BURNS.replace("\"pi_prime\"", "\"extra\":1,\"pi_prime\"");
        assert!(matches!(parse_config(&unknown), Err(Error::Schema { .. })));
        let version = BURNS.replace("{", "{\"schema_version\":2,");
        assert!(matches!(parse_config(&version), Err(Error::Schema { .. })));
    }

    #[test]
    fn echo_round_trip() {
        let text = r#"{"lie_type":"a3","pi_prime":[1],"lambda":[-1,-2],"kappa":["1/2",3],"scalar_curvature":"-7/3",
            "options":{"tau0":"1/2","find_smooth_c":null,"tolerance":1e-10}}"#;
        let (jobs, _) = parse_config(text).unwrap();
        assert_eq!(jobs[0].lie_type, "A3");
        let echo = serde_json::to_string(&jobs[0].to_value()).unwrap();
        let (again, _) = parse_config(&echo).unwrap();
        assert_eq!(again, jobs);
    }

    #[test]
    fn burns_report() {
        let (jobs, _) = parse_config(BURNS).unwrap();
        let r = run(&jobs[0]).unwrap();
        let v = r.to_value();
        assert_eq!(v["metric_index"], json!("1"));
        assert_eq!(v["profile"]["phi"]["text"], json!("tau"));
        assert_eq!(v["profile"]["phi_num"], json!(["0", "1", "1"]));
        assert_eq!(v["profile"]["qtilde"], json!(["1", "1"]));
        let csv = r.to_csv().unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("tau,phi,t,s,f,r"));
        let row = lines.find(|l| l.starts_with("1.0000000000000000e0,")).unwrap();
        let cells: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cells[1], 1.0);
        assert_eq!(cells[2], 0.0);
        assert_eq!(cells[3], 0.0);
    }

    #[test]
    fn a2_and_positive_weight() {
        let text = r#"{"lie_type":"A2","pi_prime":[],"lambda":[-1,-1],"kappa":[1,1],"scalar_curvature":0}"#;
        let r = run(&parse_config(text).unwrap().0[0]).unwrap();
        assert_eq!(r.to_value()["profile"]["phi_num"], json!(["0", "2", "6", "4", "1"]));
        let pos = text.replace("[-1,-1]", "[1,1]");
        let err = run(&parse_config(&pos).unwrap().0[0]).unwrap_err();
        assert!(matches!(err, Error::NotSemiNegative { .. }));
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn csv_needs_samples() {
        let text = BURNS.replace("}", ",\"options\":{\"emit_samples\":false}}");
        let r = run(&parse_config(&text).unwrap().0[0]).unwrap();
        assert!(matches!(r.to_csv(), Err(Error::UnsupportedFormat(_))));
        assert!(r.to_value().get("samples").is_none());
    }

    #[test]
    fn real_formatting() {
        assert_eq!(serde_json::to_string(&real(1.0)).unwrap(), "1.0000000000000000e+0");
        assert_eq!(serde_json::to_string(&real(-0.1)).unwrap(), "-1.0000000000000001e-1");
        assert_eq!(real(f64::NAN), Value::Null);
        let back: f64 = format_real(std::f64::consts::PI).parse().unwrap();
        assert_eq!(back, std::f64::consts::PI);
    }
}
