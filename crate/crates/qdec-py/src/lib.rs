//! Python bindings: the main report, closed forms, index computations and
//! the verification suites, exposed as plain functions and one report class.
//!
//! Build with `cargo build -p qdec-py`, then load the produced `cdylib` as
//! the module `qdec_py` (see `python/smoke_test.py` at the workspace root).

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qdec::verify::{run_all, run_suite, Suite};
use qdec::{DominantCharacter, Family, GroupSpec};

fn py_err(e: qdec::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_family(family: &str) -> PyResult<Family> {
    match family {
        "A" | "a" => Ok(Family::A),
        "D" | "d" => Ok(Family::D),
        other => Err(PyValueError::new_err(format!(
            "unknown family {other:?}; expected \"A\" or \"D\""
        ))),
    }
}

/// Invariant-group data for one group, mirroring the CLI `describe` output.
#[pyclass(frozen)]
struct Report {
    #[pyo3(get)]
    group: String,
    #[pyo3(get)]
    ell: u64,
    #[pyo3(get)]
    n_g: u64,
    #[pyo3(get)]
    q_group: String,
    #[pyo3(get)]
    dec_group: String,
    #[pyo3(get)]
    inv_dec: String,
    #[pyo3(get)]
    inv_ind_order: u64,
    #[pyo3(get)]
    inv_ind_presentation: String,
    /// (name, closed_form, oracle, pass) per crosscheck.
    #[pyo3(get)]
    crosschecks: Vec<(String, String, String, bool)>,
    #[pyo3(get)]
    split_note: Option<String>,
    #[pyo3(get)]
    n_g_note: Option<String>,
    #[pyo3(get)]
    all_pass: bool,
}

#[pymethods]
impl Report {
    fn __repr__(&self) -> String {
        format!(
            "Report(group={:?}, ell={}, n_g={}, inv_dec={:?}, inv_ind={:?})",
            self.group, self.ell, self.n_g, self.inv_dec, self.inv_ind_presentation
        )
    }
}

fn build_report(spec: &GroupSpec, height: u64) -> PyResult<Report> {
    let rep = qdec::report(spec, height, false).map_err(py_err)?;
    Ok(Report {
        group: rep.spec.name(),
        ell: rep.ell,
        n_g: rep.n_g,
        q_group: rep.q_group,
        dec_group: rep.dec_group,
        inv_dec: rep.inv_dec,
        inv_ind_order: rep.inv_ind_order,
        inv_ind_presentation: rep.inv_ind_presentation,
        crosschecks: rep
            .crosschecks
            .iter()
            .map(|c| (c.name.clone(), c.closed_form.clone(), c.oracle.clone(), c.pass))
            .collect(),
        split_note: rep.split_note,
        n_g_note: rep.n_g_note,
        all_pass: rep.crosschecks.iter().all(|c| c.pass),
    })
}

/// Full report for SL_n/mu_m.
#[pyfunction]
#[pyo3(signature = (n, m, height = 4))]
fn describe_sl(n: u64, m: u64, height: u64) -> PyResult<Report> {
    let spec = GroupSpec::sl_mod_mu(n, m).map_err(py_err)?;
    build_report(&spec, height)
}

/// Full report for HSpin_rank (rank = 4n, n >= 2).
#[pyfunction]
#[pyo3(signature = (rank, height = 4))]
fn describe_hspin(rank: u64, height: u64) -> PyResult<Report> {
    if !rank.is_multiple_of(4) || rank < 8 {
        return Err(PyValueError::new_err(
            "rank must be a multiple of 4 and at least 8",
        ));
    }
    let spec = GroupSpec::half_spin(rank / 4).map_err(py_err)?;
    build_report(&spec, height)
}

/// Generator multiplier of Q(G) for SL_n/mu_m.
#[pyfunction]
fn ell_sl(n: u64, m: u64) -> PyResult<u64> {
    qdec::ell_closed_form_sl(n, m).map_err(py_err)
}

/// Generator multiplier of Q(G) for HSpin_{4n}.
#[pyfunction]
fn ell_halfspin(n: u64) -> PyResult<u64> {
    qdec::ell_closed_form_halfspin(n).map_err(py_err)
}

/// n_G for SL_n/mu_{p^r}.
#[pyfunction]
fn n_g_sl(n: u64, p: u64, r: u32) -> PyResult<u64> {
    qdec::n_closed_form_sl(n, p, r).map_err(py_err)
}

/// n_G for HSpin_{4n}.
#[pyfunction]
fn n_g_halfspin(n: u64) -> PyResult<u64> {
    qdec::n_closed_form_halfspin(n).map_err(py_err)
}

/// q(tau) for SL_n/mu_m as a (numerator, denominator) pair.
#[pyfunction]
fn q_tau_sl(n: u64, m: u64) -> PyResult<(BigInt, BigInt)> {
    let lat = qdec::lattice_sl_mod_mu(n, m).map_err(py_err)?;
    let form = qdec::InvariantForm::new(lat.datum().clone());
    let value = form.q_eval(lat.tau().expect("tau")).map_err(py_err)?;
    Ok((value.numer().clone(), value.denom().clone()))
}

fn character(family: &str, rank: usize, fw: Vec<i64>) -> PyResult<(std::sync::Arc<qdec::RootDatum>, DominantCharacter)> {
    let datum = std::sync::Arc::new(qdec::build_root_datum(parse_family(family)?, rank).map_err(py_err)?);
    let lat = qdec::CharLattice::weight_lattice(datum.clone());
    let chi = DominantCharacter::from_fw_coords(&lat, &fw).map_err(py_err)?;
    Ok((datum, chi))
}

/// Dimension of the irreducible representation with the given
/// fundamental-weight coordinates.
#[pyfunction]
fn weyl_dim(family: &str, rank: usize, fw: Vec<i64>) -> PyResult<BigInt> {
    let (datum, chi) = character(family, rank, fw)?;
    qdec::weyl_dim(&datum, &chi).map_err(py_err)
}

/// Dynkin index of the irreducible representation.
#[pyfunction]
fn dynkin_index(family: &str, rank: usize, fw: Vec<i64>) -> PyResult<BigInt> {
    let (datum, chi) = character(family, rank, fw)?;
    qdec::dynkin_index(&datum, &chi).map_err(py_err)
}

/// Dynkin index of the Weyl-orbit character (the type-A factorial
/// formula computes this quantity).
#[pyfunction]
fn orbit_index(family: &str, rank: usize, fw: Vec<i64>) -> PyResult<BigInt> {
    let (datum, chi) = character(family, rank, fw)?;
    qdec::orbit_index(&datum, &chi).map_err(py_err)
}

/// The type-A factorial index of the character with e-bar coordinates `c`.
#[pyfunction]
fn n_chi_type_a(n: u64, c: Vec<i64>) -> PyResult<BigInt> {
    qdec::n_chi_type_a(n, &c).map_err(py_err)
}

/// Restriction data HSpin_{4n} -> SL_{2n}/mu_2:
/// (source_order, target_order, image_of_generator, rost_multiplier).
#[pyfunction]
fn restrict_halfspin(n: u64) -> PyResult<(u64, u64, u64, u64)> {
    let source = GroupSpec::half_spin(n).map_err(py_err)?;
    let target = GroupSpec::sl_mod_mu(2 * n, 2).map_err(py_err)?;
    let desc = qdec::induced_quotient_map(&source, &target).map_err(py_err)?;
    Ok((
        desc.source_order,
        desc.target_order,
        desc.image_of_generator,
        desc.rost_multiplier,
    ))
}

/// The three groups whose normalized-invariant extension splits, as
/// (group, full group) strings.
#[pyfunction]
fn split_cases() -> PyResult<Vec<(String, String)>> {
    qdec::split_cases().map_err(py_err)
}

/// Run a verification suite ("all" or one of qtau, ell, ng, typea,
/// halfspin-index, tables, restrict, props); returns (total, failed).
#[pyfunction]
#[pyo3(signature = (suite = "all", max_n = 20, height = 4))]
fn verify(suite: &str, max_n: u64, height: u64) -> PyResult<(usize, usize)> {
    let reports = match suite {
        "all" => run_all(max_n, height).map_err(py_err)?,
        name => {
            let suite = Suite::all()
                .into_iter()
                .find(|s| s.name() == name)
                .ok_or_else(|| PyValueError::new_err(format!("unknown suite {name:?}")))?;
            vec![run_suite(suite, max_n, height).map_err(py_err)?]
        }
    };
    let total = reports.iter().map(|r| r.checks.len()).sum();
    let failed = reports.iter().map(|r| r.failed()).sum();
    Ok((total, failed))
}

#[pymodule]
fn qdec_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(describe_sl, m)?)?;
    m.add_function(wrap_pyfunction!(describe_hspin, m)?)?;
    m.add_function(wrap_pyfunction!(ell_sl, m)?)?;
    m.add_function(wrap_pyfunction!(ell_halfspin, m)?)?;
    m.add_function(wrap_pyfunction!(n_g_sl, m)?)?;
    m.add_function(wrap_pyfunction!(n_g_halfspin, m)?)?;
    m.add_function(wrap_pyfunction!(q_tau_sl, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_dim, m)?)?;
    m.add_function(wrap_pyfunction!(dynkin_index, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_index, m)?)?;
    m.add_function(wrap_pyfunction!(n_chi_type_a, m)?)?;
    m.add_function(wrap_pyfunction!(restrict_halfspin, m)?)?;
    m.add_function(wrap_pyfunction!(split_cases, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
