//! Python bindings: root systems, W-symmetric polytopes, their algebras and the pipeline.

use std::collections::BTreeMap;

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use wtoric_core::pipeline::{self, JobConfig, RunOptions, SelftestOptions};
use wtoric_core::polytope::{NormalScaling, WPolytope};
use wtoric_core::root_weyl::DEFAULT_RANK_CAP;
use wtoric_core::sr_algebra::{FaceComplex, GradedAlgebra};
use wtoric_core::{iso_map, Error, RootSystem, Scalar, WeylGroup};

create_exception!(wtoric, WtoricError, PyException);

fn err(e: Error) -> PyErr {
    WtoricError::new_err(e.to_string())
}

/// A weight coordinate: an int or a `"p/q"` string.
#[derive(FromPyObject)]
enum Coord {
    Int(i64),
    Text(String),
}

impl Coord {
    fn scalar(&self) -> Result<Scalar, Error> {
        match self {
            Coord::Int(n) => Ok(Scalar::from_int(*n)),
            Coord::Text(s) => Scalar::parse_rational(s),
        }
    }
}

fn strings(xs: &[Scalar]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

/// An irreducible root system in the simple-root basis.
#[pyclass(name = "RootSystem", module = "wtoric", frozen)]
struct PyRootSystem {
    rs: RootSystem,
}

#[pymethods]
impl PyRootSystem {
    #[new]
    #[pyo3(signature = (label, rank_cap=DEFAULT_RANK_CAP))]
    fn new(label: &str, rank_cap: usize) -> PyResult<Self> {
        RootSystem::from_label(label, rank_cap).map(|rs| PyRootSystem { rs }).map_err(err)
    }

    #[getter]
    fn label(&self) -> String {
        self.rs.cartan.to_string()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.rs.rank()
    }

    #[getter]
    fn num_roots(&self) -> usize {
        self.rs.roots.len()
    }

    #[getter]
    fn crystallographic(&self) -> bool {
        self.rs.is_crystallographic()
    }

    /// Gram matrix of the simple roots, entries as strings.
    fn gram(&self) -> Vec<Vec<String>> {
        let g = self.rs.gram.matrix();
        (0..g.rows()).map(|i| strings(g.row(i))).collect()
    }

    fn weyl_order(&self) -> PyResult<usize> {
        WeylGroup::generate(&self.rs).map(|w| w.order()).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("RootSystem('{}')", self.rs.cartan)
    }
}

/// The convex hull of W·Λ together with its polytopal algebra.
#[pyclass(name = "Polytope", module = "wtoric", frozen)]
struct PyPolytope {
    rs: RootSystem,
    w: WeylGroup,
    p: WPolytope,
    algebra: Option<GradedAlgebra>,
}

impl PyPolytope {
    fn algebra(&self) -> PyResult<&GradedAlgebra> {
        self.algebra.as_ref().ok_or_else(|| err(Error::NotSimple))
    }
}

#[pymethods]
impl PyPolytope {
    /// `lam` holds the points of Λ in fundamental-weight coordinates,
    /// each coordinate an int or a `"p/q"` string.
    #[new]
    #[pyo3(signature = (label, lam, scaling="auto", rank_cap=DEFAULT_RANK_CAP))]
    fn new(label: &str, lam: Vec<Vec<Coord>>, scaling: &str, rank_cap: usize) -> PyResult<Self> {
        let rs = RootSystem::from_label(label, rank_cap).map_err(err)?;
        let w = WeylGroup::generate(&rs).map_err(err)?;
        let lambda = lam
            .iter()
            .map(|pt| {
                let xs = pt.iter().map(Coord::scalar).collect::<Result<Vec<_>, _>>()?;
                rs.from_weight_coords(&xs)
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        let scaling = NormalScaling::parse(scaling).map_err(err)?;
        let p = WPolytope::build(&rs, &w, &lambda, scaling).map_err(err)?;
        let algebra = if p.classification.simple {
            Some(GradedAlgebra::build(FaceComplex::from_polytope(&p)).map_err(err)?)
        } else {
            None
        };
        Ok(PyPolytope { rs, w, p, algebra })
    }

    #[getter]
    fn num_vertices(&self) -> usize {
        self.p.vertices.len()
    }

    #[getter]
    fn num_facets(&self) -> usize {
        self.p.num_facets()
    }

    #[getter]
    fn simple(&self) -> bool {
        self.p.classification.simple
    }

    #[getter]
    fn nondegenerate(&self) -> bool {
        self.p.classification.nondegenerate
    }

    #[getter]
    fn flag(&self) -> bool {
        self.p.classification.flag
    }

    /// Facet functionals `(⟨ℓ_F, α_i⟩)_i` in facet order.
    fn functionals(&self) -> Vec<Vec<String>> {
        self.p.facets.iter().map(|f| strings(&f.functional)).collect()
    }

    /// Vertices in simple-root coordinates.
    fn vertices(&self) -> Vec<Vec<String>> {
        self.p.vertices.iter().map(|v| strings(v)).collect()
    }

    fn f_vector(&self) -> Vec<usize> {
        FaceComplex::from_polytope(&self.p).f_vector()
    }

    fn h_vector(&self) -> PyResult<Vec<i64>> {
        Ok(self.algebra()?.h.clone())
    }

    /// `dim A^d` for `d = 0..=n`.
    fn dims(&self) -> PyResult<Vec<usize>> {
        Ok(self.algebra()?.dims())
    }

    /// Graded trace of the simple reflection `r_i` (1-based).
    fn trace(&self, i: usize) -> PyResult<Vec<String>> {
        if i == 0 || i > self.rs.rank() {
            return Err(WtoricError::new_err(format!("no simple reflection r{i}")));
        }
        let perm = self.p.facet_perm(self.w.generator(i - 1));
        self.algebra()?.graded_character(perm).map(|c| strings(&c)).map_err(err)
    }

    /// Builds the quotient for K (1-based indices) and verifies ψ; returns the check verdicts.
    fn verify(&self, k: Vec<usize>) -> PyResult<BTreeMap<String, bool>> {
        if k.iter().any(|&i| i == 0 || i > self.rs.rank()) {
            return Err(WtoricError::new_err("K index out of range"));
        }
        let k: Vec<usize> = k.iter().map(|i| i - 1).collect();
        let iso = iso_map::run_iso(&self.rs, &self.w, &self.p, self.algebra()?, &k).map_err(err)?;
        let d = &iso.dossier;
        Ok(BTreeMap::from([
            ("kernel_i".to_string(), d.kernel_i.passed),
            ("kernel_j".to_string(), d.kernel_j.passed),
            ("invariance".to_string(), d.invariance.passed),
            ("dimension".to_string(), d.dimension.passed),
            ("bijectivity".to_string(), d.bijectivity.passed),
            ("coefficients".to_string(), iso.coefficients.all_hold()),
        ]))
    }

    fn __repr__(&self) -> String {
        format!(
            "Polytope('{}', vertices={}, facets={})",
            self.rs.cartan,
            self.p.vertices.len(),
            self.p.num_facets()
        )
    }
}

/// Runs a JSON job config and returns the JSON report.
#[pyfunction]
#[pyo3(signature = (config, timings=false))]
fn run(config: &str, timings: bool) -> PyResult<String> {
    let job = JobConfig::from_json(config).map_err(err)?;
    pipeline::run(&job, &RunOptions { timings }).map(|r| r.to_pretty()).map_err(err)
}

/// Runs a canned example; returns `(matches, actual, diff)`.
#[pyfunction]
fn example(name: &str) -> PyResult<(bool, String, String)> {
    let out = pipeline::example(name).map_err(err)?;
    Ok((out.matches(), out.actual.clone(), out.diff()))
}

/// Runs the sweep; returns `(passed, matrix)`.
#[pyfunction]
#[pyo3(signature = (rank_cap=3))]
fn selftest(rank_cap: usize) -> PyResult<(bool, String)> {
    let s = pipeline::selftest(&SelftestOptions { rank_cap, ..Default::default() }).map_err(err)?;
    Ok((s.passed(), s.matrix()))
}

#[pymodule]
fn wtoric(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", pipeline::ENGINE_VERSION)?;
    m.add("WtoricError", m.py().get_type::<WtoricError>())?;
    m.add_class::<PyRootSystem>()?;
    m.add_class::<PyPolytope>()?;
    m.add_function(wrap_pyfunction!(run, m)?)?;
    m.add_function(wrap_pyfunction!(example, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
