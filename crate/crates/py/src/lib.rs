//! Python bindings. Import as `euler_tactics`.
//!
//! Proofs are immutable: every mutating method returns a new `Proof`.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyIndexError, PyValueError};
use pyo3::prelude::*;

use euler_tactics::diagram::{CompoundDiagram, UnitaryDiagram};
use euler_tactics::engine::{self, Subgoal};
use euler_tactics::metrics::{clutter_diagram, proof_metrics};
use euler_tactics::semantics;
use euler_tactics::tactics;
use euler_tactics::textio::{self, ReplayMode, TextError};

create_exception!(euler_tactics, ParseError, PyValueError);
create_exception!(euler_tactics, ProofError, PyException);

fn parse_err(e: TextError) -> PyErr {
    match e {
        TextError::Replay { .. } => ProofError::new_err(e.to_string()),
        _ => ParseError::new_err(e.to_string()),
    }
}

fn proof_err(e: impl std::fmt::Display) -> PyErr {
    ProofError::new_err(e.to_string())
}

fn zone_lists<'a>(zs: impl IntoIterator<Item = &'a euler_tactics::diagram::Zone>) -> Vec<Vec<String>> {
    zs.into_iter()
        .map(|z| z.in_set().iter().map(|c| c.to_string()).collect())
        .collect()
}

#[pyclass(frozen, skip_from_py_object, module = "euler_tactics")]
#[derive(Clone)]
struct Diagram(CompoundDiagram);

impl Diagram {
    fn unitary(&self) -> PyResult<&UnitaryDiagram> {
        self.0
            .as_unitary()
            .ok_or_else(|| PyValueError::new_err("not a unitary diagram"))
    }
}

#[pymethods]
impl Diagram {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        textio::parse_diagram(text).map(Diagram).map_err(parse_err)
    }

    fn __str__(&self) -> String {
        textio::print_diagram(&self.0)
    }

    fn __repr__(&self) -> String {
        format!("Diagram({:?})", textio::print_diagram(&self.0))
    }

    fn __eq__(&self, other: &Diagram) -> bool {
        self.0 == other.0
    }

    #[getter]
    fn is_unitary(&self) -> bool {
        self.0.is_unitary()
    }

    fn contours(&self) -> Vec<String> {
        self.0.contours().iter().map(|c| c.to_string()).collect()
    }

    /// Zones of a unitary diagram, each as a sorted list of contour labels.
    fn zones(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(zone_lists(self.unitary()?.zones()))
    }

    fn shaded(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(zone_lists(self.unitary()?.shaded()))
    }

    fn missing_zones(&self) -> PyResult<Vec<Vec<String>>> {
        Ok(zone_lists(&self.unitary()?.missing_zones()))
    }

    fn clutter(&self) -> u64 {
        clutter_diagram(&self.0)
    }

    fn entails(&self, other: &Diagram) -> PyResult<bool> {
        semantics::entails(&self.0, &other.0).map_err(|e| PyValueError::new_err(e.to_string()))
    }
}

#[pyclass(frozen, skip_from_py_object, module = "euler_tactics")]
#[derive(Clone)]
struct Theorem(Subgoal);

#[pymethods]
impl Theorem {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        textio::parse_theorem(text).map(Theorem).map_err(parse_err)
    }

    fn __str__(&self) -> String {
        textio::print_theorem(&self.0)
    }

    #[getter]
    fn antecedent(&self) -> Diagram {
        Diagram(self.0.antecedent().clone())
    }

    #[getter]
    fn consequent(&self) -> Diagram {
        Diagram(self.0.consequent().clone())
    }

    fn is_valid(&self) -> bool {
        self.witnesses().is_empty()
    }

    /// Cells the consequent says are empty but the antecedent leaves open.
    fn witnesses(&self) -> Vec<Vec<String>> {
        let cells = semantics::unforced_cells(self.0.antecedent(), self.0.consequent())
            .expect("theorems are conjunctive");
        cells
            .iter()
            .map(|c| c.in_set().iter().map(|l| l.to_string()).collect())
            .collect()
    }
}

#[pyclass(frozen, skip_from_py_object, module = "euler_tactics")]
#[derive(Clone)]
struct Proof(engine::Proof);

#[pymethods]
impl Proof {
    #[new]
    fn new(theorem: &Theorem) -> Self {
        Proof(engine::Proof::new(theorem.0.clone()))
    }

    /// Parse and replay a saved script; `strict` re-runs recorded tactics.
    #[staticmethod]
    #[pyo3(signature = (text, strict = false))]
    fn load(text: &str, strict: bool) -> PyResult<Self> {
        let mode = if strict {
            ReplayMode::Rerun
        } else {
            ReplayMode::Recorded
        };
        textio::load_script(text, mode).map(Proof).map_err(parse_err)
    }

    #[pyo3(signature = (name = "theorem"))]
    fn save(&self, name: &str) -> String {
        textio::save_script(&self.0, name)
    }

    #[pyo3(signature = (name, goal = 0))]
    fn apply_tactic(&self, name: &str, goal: usize) -> PyResult<Self> {
        tactics::apply_tactic(&self.0, name, goal)
            .map(Proof)
            .map_err(proof_err)
    }

    /// Apply one step written as a script line, e.g. `apply combine at 0 L`.
    fn apply_step(&self, line: &str) -> PyResult<Self> {
        let step = textio::parse_step(line).map_err(parse_err)?;
        self.0.apply_step(step).map(Proof).map_err(proof_err)
    }

    #[pyo3(signature = (goal = 0))]
    fn discharge(&self, goal: usize) -> PyResult<Self> {
        self.0.discharge_trivial(goal).map(Proof).map_err(proof_err)
    }

    fn undo_to(&self, state_index: usize) -> PyResult<Self> {
        self.0
            .undo_to(state_index)
            .map(Proof)
            .map_err(|e| PyIndexError::new_err(e.to_string()))
    }

    #[getter]
    fn is_finished(&self) -> bool {
        self.0.is_finished()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    /// Each state as a list of subgoal texts.
    fn states(&self) -> Vec<Vec<String>> {
        self.0
            .states()
            .map(|s| s.subgoals().iter().map(textio::print_theorem).collect())
            .collect()
    }

    fn steps(&self) -> Vec<String> {
        self.0.steps().iter().map(textio::print_step).collect()
    }

    /// `{length, total_clutter, average_clutter: (num, den), max_velocity}`.
    fn metrics<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, pyo3::types::PyDict>> {
        let m = proof_metrics(&self.0);
        let d = pyo3::types::PyDict::new(py);
        d.set_item("length", m.length)?;
        d.set_item("total_clutter", m.total_clutter)?;
        d.set_item(
            "average_clutter",
            (*m.average_clutter.numer(), *m.average_clutter.denom()),
        )?;
        d.set_item("max_velocity", m.max_velocity)?;
        Ok(d)
    }
}

/// Registered tactics as `(name, level)` pairs.
#[pyfunction]
fn tactic_names() -> Vec<(String, String)> {
    tactics::registry()
        .iter()
        .map(|t| (t.name.to_string(), t.level.name().to_string()))
        .collect()
}

#[pymodule(name = "euler_tactics")]
fn init_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Diagram>()?;
    m.add_class::<Theorem>()?;
    m.add_class::<Proof>()?;
    m.add_function(wrap_pyfunction!(tactic_names, m)?)?;
    m.add("ParseError", m.py().get_type::<ParseError>())?;
    m.add("ProofError", m.py().get_type::<ProofError>())?;
    Ok(())
}
