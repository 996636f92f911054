//! Python bindings: vocabularies, action models, libraries, stream
//! generation, and the stepwise learners.
//!
//! States cross the boundary as lists of atom names, observations as
//! `(before, after)` pairs, and terms in their text form (`"p&-q"`, `"T"`).

use std::collections::HashMap;
use std::str::FromStr;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use actlearn::{json, scenario, ActionLibrary, ActionModel, LearnerKind, State, Vocabulary};

fn err(e: actlearn::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn state_from_names(voc: &Vocabulary, names: Vec<String>) -> PyResult<State> {
    voc.state(names).map_err(err)
}

fn state_names(state: &State) -> Vec<String> {
    state.members().map(String::from).collect()
}

fn kind_from_str(kind: &str) -> PyResult<LearnerKind> {
    LearnerKind::from_str(kind).map_err(err)
}

/// A finite ordered set of atoms.
#[pyclass(name = "Vocabulary", frozen)]
struct PyVocabulary {
    inner: Vocabulary,
}

#[pymethods]
impl PyVocabulary {
    #[new]
    fn new(atoms: Vec<String>) -> PyResult<Self> {
        Ok(PyVocabulary {
            inner: Vocabulary::new(atoms).map_err(err)?,
        })
    }

    #[getter]
    fn atoms(&self) -> Vec<String> {
        self.inner.atoms().to_vec()
    }

    fn state_count(&self) -> usize {
        self.inner.state_count()
    }

    /// All states in canonical order, as lists of atom names.
    fn states(&self) -> Vec<Vec<String>> {
        self.inner.states().map(|s| state_names(&s)).collect()
    }

    /// All consistent terms in canonical order, in text form.
    fn terms(&self) -> PyResult<Vec<String>> {
        Ok(self
            .inner
            .terms()
            .map_err(err)?
            .iter()
            .map(|t| t.to_string())
            .collect())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Vocabulary({:?})", self.inner.atoms())
    }
}

/// A finite set of `<pre, post>` events over a vocabulary.
#[pyclass(name = "ActionModel", frozen)]
struct PyActionModel {
    inner: ActionModel,
}

#[pymethods]
impl PyActionModel {
    /// Builds a model from `(pre, post)` term strings, e.g.
    /// `ActionModel(voc, [("T", "h"), ("T", "-h")])`.
    #[new]
    fn new(vocabulary: &PyVocabulary, events: Vec<(String, String)>) -> PyResult<Self> {
        let pairs: Vec<(&str, &str)> = events
            .iter()
            .map(|(pre, post)| (pre.as_str(), post.as_str()))
            .collect();
        Ok(PyActionModel {
            inner: ActionModel::parse(&vocabulary.inner, &pairs).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyActionModel {
            inner: json::model_from_json(text).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        json::model_to_json(&self.inner)
    }

    #[getter]
    fn vocabulary(&self) -> PyVocabulary {
        PyVocabulary {
            inner: self.inner.vocabulary().clone(),
        }
    }

    /// The events as `(pre, post)` term strings, in canonical order.
    #[getter]
    fn events(&self) -> Vec<(String, String)> {
        self.inner
            .events()
            .iter()
            .map(|e| (e.pre().to_string(), e.post().to_string()))
            .collect()
    }

    /// The outcome states of executing the action in `state`.
    fn outcomes(&self, state: Vec<String>) -> PyResult<Vec<Vec<String>>> {
        let s = state_from_names(self.inner.vocabulary(), state)?;
        Ok(self.inner.outcomes(&s).iter().map(state_names).collect())
    }

    /// All transitions as `(before, after)` pairs, in canonical order.
    fn graph(&self) -> Vec<(Vec<String>, Vec<String>)> {
        self.inner
            .graph()
            .iter()
            .map(|o| (state_names(o.before()), state_names(o.after())))
            .collect()
    }

    /// The definite finite tell-tale of a deterministic model.
    fn dftt(&self) -> PyResult<Vec<(Vec<String>, Vec<String>)>> {
        Ok(actlearn::dftt(&self.inner)
            .map_err(err)?
            .iter()
            .map(|o| (state_names(o.before()), state_names(o.after())))
            .collect())
    }

    /// The action-type flags as a dict.
    fn classify(&self) -> HashMap<&'static str, bool> {
        let f = self.inner.classify();
        HashMap::from([
            ("atomic", f.atomic),
            ("deterministic", f.deterministic),
            ("precondition_free", f.precondition_free),
            ("universally_applicable", f.universally_applicable),
            ("normal", f.normal),
            ("basic_preconditions", f.basic_preconditions),
            ("maximal_preconditions", f.maximal_preconditions),
        ])
    }

    fn equivalent(&self, other: &PyActionModel) -> PyResult<bool> {
        self.inner.equivalent(&other.inner).map_err(err)
    }

    fn make_universal(&self) -> PyActionModel {
        PyActionModel {
            inner: self.inner.make_universal(),
        }
    }

    fn minimize(&self) -> PyActionModel {
        PyActionModel {
            inner: actlearn::minimize(&self.inner),
        }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("ActionModel({})", self.inner)
    }
}

/// A mapping from action names to action models.
#[pyclass(name = "ActionLibrary", frozen)]
struct PyActionLibrary {
    inner: ActionLibrary,
}

#[pymethods]
impl PyActionLibrary {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyActionLibrary {
            inner: json::library_from_json(text).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        json::library_to_json(&self.inner)
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.inner.names().map(String::from).collect()
    }

    fn model(&self, name: &str) -> PyResult<PyActionModel> {
        match self.inner.model(name) {
            Some(m) => Ok(PyActionModel { inner: m.clone() }),
            None => Err(PyValueError::new_err(format!("unknown action `{name}`"))),
        }
    }

    fn equivalent(&self, other: &PyActionLibrary) -> PyResult<bool> {
        self.inner.equivalent(&other.inner).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("ActionLibrary(names={:?})", self.names())
    }
}

/// A stepwise once-defined update learner (kinds `l1`, `l2`, `l3`).
#[pyclass(name = "Learner")]
struct PyLearner {
    inner: actlearn::LearnerState,
}

#[pymethods]
impl PyLearner {
    #[new]
    fn new(vocabulary: &PyVocabulary, kind: &str) -> PyResult<Self> {
        Ok(PyLearner {
            inner: actlearn::LearnerState::new(&vocabulary.inner, kind_from_str(kind)?)
                .map_err(err)?,
        })
    }

    /// Feeds one observation; returns the identified model if the learner
    /// fires, else None.
    fn step(&mut self, before: Vec<String>, after: Vec<String>) -> PyResult<Option<PyActionModel>> {
        let voc = self.inner.hypothesis().vocabulary().clone();
        let obs = actlearn::Observation::new(
            state_from_names(&voc, before)?,
            state_from_names(&voc, after)?,
        )
        .map_err(err)?;
        match self.inner.step(&obs).map_err(err)? {
            actlearn::Verdict::Identified(m) => Ok(Some(PyActionModel { inner: m })),
            actlearn::Verdict::Undecided => Ok(None),
        }
    }

    #[getter]
    fn fired(&self) -> bool {
        self.inner.fired()
    }

    #[getter]
    fn steps(&self) -> usize {
        self.inner.steps()
    }

    /// Number of events still surviving in the hypothesis.
    #[getter]
    fn survivors(&self) -> usize {
        self.inner.hypothesis().len()
    }

    fn hypothesis(&self) -> PyActionModel {
        PyActionModel {
            inner: self.inner.hypothesis().clone(),
        }
    }
}

/// The induced library learner: one update learner per action name.
#[pyclass(name = "LibraryLearner")]
struct PyLibraryLearner {
    inner: actlearn::LibraryLearner,
    vocabulary: Vocabulary,
}

#[pymethods]
impl PyLibraryLearner {
    #[new]
    #[pyo3(signature = (vocabulary, names, kind = "l3"))]
    fn new(vocabulary: &PyVocabulary, names: Vec<String>, kind: &str) -> PyResult<Self> {
        Ok(PyLibraryLearner {
            inner: actlearn::LibraryLearner::new(&vocabulary.inner, names, kind_from_str(kind)?)
                .map_err(err)?,
            vocabulary: vocabulary.inner.clone(),
        })
    }

    /// Feeds one named observation; returns the identified library once
    /// every configured name has latched, else None.
    fn step(
        &mut self,
        before: Vec<String>,
        name: &str,
        after: Vec<String>,
    ) -> PyResult<Option<PyActionLibrary>> {
        let triple = actlearn::TripleObservation::new(
            state_from_names(&self.vocabulary, before)?,
            name,
            state_from_names(&self.vocabulary, after)?,
        )
        .map_err(err)?;
        match self.inner.step(&triple).map_err(err)? {
            actlearn::LibraryVerdict::Identified(l) => Ok(Some(PyActionLibrary { inner: l })),
            actlearn::LibraryVerdict::Undecided => Ok(None),
        }
    }

    #[getter]
    fn fired(&self) -> bool {
        self.inner.fired()
    }

    #[getter]
    fn latched(&self) -> usize {
        self.inner.latched_count()
    }
}

/// Looks up a built-in scenario; returns an ActionModel or ActionLibrary.
#[pyfunction]
fn builtin_scenario(py: Python<'_>, name: &str) -> PyResult<Py<PyAny>> {
    let s = scenario::builtin(name).map_err(err)?;
    match s.target {
        scenario::Target::Model(m) => Ok(Bound::new(py, PyActionModel { inner: m })?
            .into_any()
            .unbind()),
        scenario::Target::Library(l) => Ok(Bound::new(py, PyActionLibrary { inner: l })?
            .into_any()
            .unbind()),
    }
}

#[pyfunction]
fn scenario_names() -> Vec<&'static str> {
    scenario::builtin_names().to_vec()
}

/// Generates a sound seeded observation stream from a universally
/// applicable target. Policies: `cyclic-canonical`, `cyclic-shuffled`,
/// `iid-uniform`.
#[pyfunction]
#[pyo3(signature = (model, length, seed = 0, policy = "cyclic-shuffled"))]
fn generate_stream(
    model: &PyActionModel,
    length: usize,
    seed: u64,
    policy: &str,
) -> PyResult<Vec<(Vec<String>, Vec<String>)>> {
    let policy = actlearn::StreamPolicy::from_str(policy).map_err(err)?;
    let spec = actlearn::StreamSpec::new(model.inner.clone(), seed, policy);
    Ok(actlearn::generate_prefix(&spec, length)
        .map_err(err)?
        .iter()
        .map(|o| (state_names(o.before()), state_names(o.after())))
        .collect())
}

/// The canonical maximal-precondition conjecture for a list of
/// `(before, after)` observations.
#[pyfunction]
fn limit_conjecture(
    vocabulary: &PyVocabulary,
    observations: Vec<(Vec<String>, Vec<String>)>,
) -> PyResult<PyActionModel> {
    let voc = &vocabulary.inner;
    let prefix = observations
        .into_iter()
        .map(|(b, a)| {
            actlearn::Observation::new(state_from_names(voc, b)?, state_from_names(voc, a)?)
                .map_err(err)
        })
        .collect::<PyResult<Vec<_>>>()?;
    Ok(PyActionModel {
        inner: actlearn::limit_conjecture(voc, &prefix).map_err(err)?,
    })
}

/// Parses raw-model JSON (formula preconditions allowed) and normalizes it.
#[pyfunction]
fn normalize_raw(text: &str) -> PyResult<PyActionModel> {
    Ok(PyActionModel {
        inner: json::raw_model_from_json(text).map_err(err)?.normalize(),
    })
}

/// Runs one verification check; returns a dict with id, name, passed,
/// elapsed_ms and detail.
#[pyfunction]
fn suite_check(py: Python<'_>, id: usize) -> PyResult<Py<PyDict>> {
    let outcome = actlearn::suite::run_check(id)
        .ok_or_else(|| PyValueError::new_err(format!("no check with id {id}")))?;
    let dict = PyDict::new(py);
    dict.set_item("id", outcome.id)?;
    dict.set_item("name", outcome.name)?;
    dict.set_item("passed", outcome.passed)?;
    dict.set_item("elapsed_ms", outcome.elapsed.as_millis() as u64)?;
    dict.set_item("detail", &outcome.detail)?;
    Ok(dict.unbind())
}

#[pyfunction]
fn suite_count() -> usize {
    actlearn::suite::CHECK_COUNT
}

#[pymodule]
fn actlearn_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyVocabulary>()?;
    m.add_class::<PyActionModel>()?;
    m.add_class::<PyActionLibrary>()?;
    m.add_class::<PyLearner>()?;
    m.add_class::<PyLibraryLearner>()?;
    m.add_function(wrap_pyfunction!(builtin_scenario, m)?)?;
    m.add_function(wrap_pyfunction!(scenario_names, m)?)?;
    m.add_function(wrap_pyfunction!(generate_stream, m)?)?;
    m.add_function(wrap_pyfunction!(limit_conjecture, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_raw, m)?)?;
    m.add_function(wrap_pyfunction!(suite_check, m)?)?;
    m.add_function(wrap_pyfunction!(suite_count, m)?)?;
    Ok(())
}
