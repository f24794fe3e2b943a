//! Python bindings. Rationals cross the boundary as `fractions.Fraction`;
//! arguments accept `int`, `Fraction` or `"p/q"` strings.

use std::str::FromStr;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use flagcsc::job::{self, Format};
use flagcsc::momentum::{self as mm, IntervalEnd};
use flagcsc::{BundleWeight, Error, FieldCase, KahlerClass, Rational};

create_exception!(flagcsc_py, WeightDomainError, PyValueError);
create_exception!(flagcsc_py, InternalError, PyRuntimeError);
create_exception!(flagcsc_py, FlagcscError, PyException);

fn to_py(e: Error) -> PyErr {
    match e.exit_code() {
        3 => WeightDomainError::new_err(e.to_string()),
        4 => InternalError::new_err(e.to_string()),
        _ => FlagcscError::new_err(e.to_string()),
    }
}

fn fraction<'py>(py: Python<'py>, q: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((q.to_string(),))
}

fn fractions<'py>(py: Python<'py>, qs: &[Rational]) -> PyResult<Vec<Bound<'py, PyAny>>> {
    qs.iter().map(|q| fraction(py, q)).collect()
}

fn rational(x: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let s = x.str()?.to_string();
    Rational::from_str(s.trim()).map_err(|_| PyValueError::new_err(format!("not a rational: {s}")))
}

fn rationals(xs: &[Bound<'_, PyAny>]) -> PyResult<Vec<Rational>> {
    xs.iter().map(rational).collect()
}

fn flag_variety(lie_type: &str, pi_prime: &[usize]) -> PyResult<flagcsc::FlagVariety> {
    let rs = flagcsc::RootSystem::parse(lie_type).map_err(to_py)?;
    let mut zero_based = Vec::with_capacity(pi_prime.len());
    for &i in pi_prime {
        if i == 0 || i > rs.rank {
            return Err(to_py(Error::IndexOutOfRange { index: i, rank: rs.rank }));
        }
        zero_based.push(i - 1);
    }
    flagcsc::FlagVariety::new(rs, zero_based).map_err(to_py)
}

#[pyclass(name = "RootSystem", frozen)]
struct PyRootSystem {
    inner: flagcsc::RootSystem,
}

#[pymethods]
impl PyRootSystem {
    #[new]
    fn new(lie_type: &str) -> PyResult<Self> {
        Ok(Self { inner: flagcsc::RootSystem::parse(lie_type).map_err(to_py)? })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank
    }

    #[getter]
    fn cartan(&self) -> Vec<Vec<i64>> {
        self.inner.cartan.clone()
    }

    /// Positive roots in simple-root coordinates.
    #[getter]
    fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.inner.positive_roots.clone()
    }

    #[getter]
    fn gram<'py>(&self, py: Python<'py>) -> PyResult<Vec<Vec<Bound<'py, PyAny>>>> {
        self.inner.gram.iter().map(|row| fractions(py, row)).collect()
    }

    fn __repr__(&self) -> String {
        format!("RootSystem('{}')", self.inner.lie_type)
    }
}

#[pyclass(name = "FlagVariety", frozen)]
struct PyFlagVariety {
    inner: flagcsc::FlagVariety,
}

#[pymethods]
impl PyFlagVariety {
    /// `pi_prime` lists one-based simple-root indices of the Levi part.
    #[new]
    #[pyo3(signature = (lie_type, pi_prime=Vec::new()))]
    fn new(lie_type: &str, pi_prime: Vec<usize>) -> PyResult<Self> {
        Ok(Self { inner: flag_variety(lie_type, &pi_prime)? })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn bundle_dim(&self) -> usize {
        self.inner.bundle_dim()
    }

    #[getter]
    fn d_plus(&self) -> Vec<Vec<i64>> {
        self.inner.d_plus.clone()
    }

    #[getter]
    fn delta(&self) -> Vec<i64> {
        self.inner.delta.clone()
    }

    fn classify_bundle_weight(&self, lam: Vec<i64>) -> PyResult<&'static str> {
        let w = BundleWeight::new(lam).map_err(to_py)?;
        Ok(self.inner.classify_bundle_weight(&w).map_err(to_py)?.as_str())
    }

    fn invariant_fields<'py>(&self, py: Python<'py>, lam: Vec<i64>) -> PyResult<Bound<'py, PyDict>> {
        let w = BundleWeight::new(lam).map_err(to_py)?;
        let c = flagcsc::classify_invariant_fields(&self.inner, &w).map_err(to_py)?;
        let d = PyDict::new(py);
        d.set_item("case", if c.case == FieldCase::A { "A" } else { "B" })?;
        d.set_item("dimension", c.dimension())?;
        d.set_item("distinguished_root", c.distinguished_root.clone())?;
        d.set_item("proportionality", c.proportionality.as_ref().map(|q| fraction(py, q)).transpose()?)?;
        Ok(d)
    }

    fn metric_index<'py>(&self, py: Python<'py>, lam: Vec<i64>) -> PyResult<Bound<'py, PyAny>> {
        let w = BundleWeight::new(lam).map_err(to_py)?;
        fraction(py, &mm::metric_index(&self.inner, &w).map_err(to_py)?)
    }

    /// Momentum profile of the bundle `lam` with class `kappa` and scalar curvature `c`.
    fn profile(&self, lam: Vec<i64>, kappa: Vec<Bound<'_, PyAny>>, c: Bound<'_, PyAny>) -> PyResult<PyProfile> {
        let w = BundleWeight::new(lam).map_err(to_py)?;
        let k = KahlerClass::new(rationals(&kappa)?).map_err(to_py)?;
        let inputs = mm::build_profile_inputs(&self.inner, &w, &k).map_err(to_py)?;
        Ok(PyProfile { inner: mm::MomentumProfile::solve(&inputs, &rational(&c)?) })
    }

    fn __repr__(&self) -> String {
        let pi: Vec<usize> = self.inner.pi_prime.iter().map(|i| i + 1).collect();
        format!("FlagVariety('{}', {:?})", self.inner.rs.lie_type, pi)
    }
}

#[pyclass(name = "MomentumProfile", frozen)]
struct PyProfile {
    inner: mm::MomentumProfile,
}

#[pymethods]
impl PyProfile {
    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn c<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.c)
    }

    /// Ascending coefficients.
    #[getter]
    fn qtilde<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, self.inner.qtilde.coeffs())
    }

    #[getter]
    fn p<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, self.inner.p.coeffs())
    }

    /// Numerator `Phi` of `phi = Phi / Qtilde`, ascending coefficients.
    #[getter]
    fn phi_numerator<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, self.inner.phi_num.coeffs())
    }

    /// The residual of the profile equation; empty when it holds exactly.
    fn residual<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        fractions(py, self.inner.residual().coeffs())
    }

    fn phi<'py>(&self, py: Python<'py>, tau: Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
        let t = rational(&tau)?;
        match self.inner.phi_at(&t) {
            Some(v) => fraction(py, &v),
            None => Err(PyValueError::new_err(format!("phi has a pole at {t}"))),
        }
    }

    /// `None` for an unbounded interval, else an enclosure `(lo, hi)` of its end.
    #[pyo3(signature = (width=None))]
    fn interval_end<'py>(
        &self,
        py: Python<'py>,
        width: Option<Bound<'py, PyAny>>,
    ) -> PyResult<Option<(Bound<'py, PyAny>, Bound<'py, PyAny>)>> {
        let w = width.map(|w| rational(&w)).transpose()?.unwrap_or_else(mm::default_width);
        match mm::momentum_interval(&self.inner, &w).map_err(to_py)?.end {
            IntervalEnd::Infinite => Ok(None),
            IntervalEnd::Finite(e) => Ok(Some((fraction(py, &e.lo)?, fraction(py, &e.hi)?))),
        }
    }

    fn behavior<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let b = mm::classify_behavior(&self.inner, &mm::default_width()).map_err(to_py)?;
        let d = PyDict::new(py);
        d.set_item("theorem_case", b.theorem_case.as_str())?;
        d.set_item("domain", b.domain.as_str())?;
        d.set_item("complete", b.complete)?;
        d.set_item("far_end_row", b.far_end.table_row)?;
        d.set_item("metric_index", b.metric_index.as_ref().map(|q| fraction(py, q)).transpose()?)?;
        d.set_item("hyperbolic_rate", b.hyperbolic_rate)?;
        if let Some(cone) = &b.cone {
            d.set_item("b", cone.b_approx)?;
            d.set_item("phi_prime_at_b", cone.phi_prime_at_b)?;
            d.set_item("smooth_completion", cone.smooth_completion)?;
        }
        Ok(d)
    }
}

/// Run a JSON job (or batch) and return the report text.
#[pyfunction]
#[pyo3(signature = (config, format="json", jobs=1))]
fn run_job(py: Python<'_>, config: &str, format: &str, jobs: usize) -> PyResult<String> {
    let format: Format = format.parse().map_err(to_py)?;
    let (specs, batch) = job::parse_config(config).map_err(to_py)?;
    if format == Format::Csv && batch {
        return Err(to_py(Error::UnsupportedFormat("csv output takes a single job".into())));
    }
    let results = py.detach(|| job::run_batch(&specs, jobs.max(1)));
    if !batch {
        if let Some(Err(e)) = results.first() {
            return Err(to_py(e.clone()));
        }
    }
    let (body, _) = job::emit(&results, batch, format).map_err(to_py)?;
    Ok(body)
}

#[pymodule]
fn flagcsc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRootSystem>()?;
    m.add_class::<PyFlagVariety>()?;
    m.add_class::<PyProfile>()?;
    m.add_function(wrap_pyfunction!(run_job, m)?)?;
    m.add("FlagcscError", m.py().get_type::<FlagcscError>())?;
    m.add("WeightDomainError", m.py().get_type::<WeightDomainError>())?;
    m.add("InternalError", m.py().get_type::<InternalError>())?;
    m.add("SCHEMA_VERSION", job::SCHEMA_VERSION)?;
    Ok(())
}
