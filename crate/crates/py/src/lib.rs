//! Python bindings: words, free-group automorphisms, graphs of groups,
//! path words, Dehn twists and the check runner.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use gogaut as core;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct Alphabet {
    inner: core::Alphabet,
}

#[pymethods]
impl Alphabet {
    #[new]
    fn new(names: Vec<String>) -> PyResult<Self> {
        Ok(Alphabet {
            inner: core::Alphabet::new(names).map_err(err)?,
        })
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.inner.names().map(|s| s.to_string()).collect()
    }

    fn word(&self, text: &str) -> PyResult<Word> {
        Ok(Word {
            inner: core::Word::parse(&self.inner, text).map_err(err)?,
        })
    }

    fn __repr__(&self) -> String {
        self.inner.to_string()
    }
}

#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct Word {
    inner: core::Word,
}

#[pymethods]
impl Word {
    #[new]
    fn new(alphabet: &Alphabet, text: &str) -> PyResult<Self> {
        alphabet.word(text)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Word({})", self.inner)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __mul__(&self, other: &Word) -> PyResult<Word> {
        Ok(Word {
            inner: self.inner.multiply(&other.inner).map_err(err)?,
        })
    }

    fn __eq__(&self, other: &Word) -> bool {
        self.inner == other.inner
    }

    fn inverse(&self) -> Word {
        Word {
            inner: self.inner.inverse(),
        }
    }

    /// h^-1 * self * h.
    fn conjugate(&self, h: &Word) -> PyResult<Word> {
        Ok(Word {
            inner: self.inner.conjugate(&h.inner).map_err(err)?,
        })
    }

    fn pow(&self, k: i64) -> Word {
        Word {
            inner: self.inner.pow(k),
        }
    }

    /// (root, exponent) when the word is a proper power, else None.
    fn is_proper_power(&self) -> PyResult<Option<(Word, u32)>> {
        Ok(self
            .inner
            .is_proper_power()
            .map_err(err)?
            .map(|(w, k)| (Word { inner: w }, k)))
    }

    /// A witness h with self^h == other, when the two are conjugate.
    fn are_conjugate(&self, other: &Word) -> PyResult<Option<Word>> {
        Ok(self
            .inner
            .are_conjugate(&other.inner)
            .map_err(err)?
            .map(|w| Word { inner: w }))
    }
}

/// Membership of `w` in the subgroup generated by `gens`, with a witness
/// expression over x1..xn when it is a member.
#[pyfunction]
fn subgroup_membership(gens: Vec<Word>, w: &Word) -> PyResult<(bool, Option<String>)> {
    let gens: Vec<core::Word> = gens.into_iter().map(|g| g.inner).collect();
    let m = core::subgroup_membership(&gens, &w.inner).map_err(err)?;
    Ok((m.member, m.witness.map(|e| e.to_string())))
}

#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct FreeAut {
    inner: core::FreeAut,
}

#[pymethods]
impl FreeAut {
    /// Parses the `x -> word` line format with an `inverse:` block.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(FreeAut {
            inner: core::FreeAut::parse(text).map_err(err)?,
        })
    }

    /// The inner automorphism x -> h^-1 x h.
    #[staticmethod]
    fn ad(h: &Word) -> FreeAut {
        FreeAut {
            inner: core::FreeAut::ad(&h.inner),
        }
    }

    #[getter]
    fn alphabet(&self) -> Alphabet {
        Alphabet {
            inner: self.inner.alphabet().clone(),
        }
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __eq__(&self, other: &FreeAut) -> bool {
        self.inner == other.inner
    }

    fn apply(&self, w: &Word) -> PyResult<Word> {
        Ok(Word {
            inner: self.inner.apply(&w.inner).map_err(err)?,
        })
    }

    /// self then other.
    fn compose(&self, other: &FreeAut) -> PyResult<FreeAut> {
        Ok(FreeAut {
            inner: self.inner.compose(&other.inner).map_err(err)?,
        })
    }

    fn inverse(&self) -> FreeAut {
        FreeAut {
            inner: self.inner.inverse(),
        }
    }

    fn is_identity(&self) -> bool {
        self.inner.is_identity()
    }

    /// The conjugating word when the automorphism is inner, else None.
    fn is_inner(&self) -> PyResult<Option<Word>> {
        Ok(self
            .inner
            .is_inner()
            .map_err(err)?
            .map(|w| Word { inner: w }))
    }

    fn outer_equal(&self, other: &FreeAut) -> PyResult<bool> {
        self.inner.outer_equal(&other.inner).map_err(err)
    }

    fn outer_commutes(&self, other: &FreeAut) -> PyResult<bool> {
        self.inner.outer_commutes(&other.inner).map_err(err)
    }
}

/// Membership of an automorphism in the McCool group of a family of
/// maximal cyclic subgroups, optionally equivariant with respect to a
/// second automorphism. Returns (member, witnesses).
#[pyfunction]
#[pyo3(signature = (f, family, equivariant_wrt=None))]
fn mccool_membership(
    f: &FreeAut,
    family: Vec<Word>,
    equivariant_wrt: Option<&FreeAut>,
) -> PyResult<(bool, Vec<Option<String>>)> {
    let family: Vec<core::Word> = family.into_iter().map(|w| w.inner).collect();
    let report =
        core::mccool_membership(&f.inner, &family, equivariant_wrt.map(|a| &a.inner))
            .map_err(err)?;
    Ok((
        report.member,
        report
            .witnesses
            .into_iter()
            .map(|w| w.map(|w| w.to_string()))
            .collect(),
    ))
}

#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct GraphOfGroups {
    inner: core::GraphOfGroups,
}

#[pymethods]
impl GraphOfGroups {
    #[getter]
    fn vertices(&self) -> Vec<String> {
        (0..self.inner.vertex_count())
            .map(|v| self.inner.vertex_name(v).to_string())
            .collect()
    }

    #[getter]
    fn edges(&self) -> Vec<String> {
        (0..self.inner.edge_count())
            .map(|e| self.inner.edge_name(e).to_string())
            .collect()
    }

    #[getter]
    fn is_efficient(&self) -> bool {
        self.inner.is_efficient()
    }

    fn vertex_alphabet(&self, vertex: &str) -> PyResult<Alphabet> {
        let v = self.inner.vertex_by_name(vertex).map_err(err)?;
        Ok(Alphabet {
            inner: self.inner.vertex_alphabet(v).clone(),
        })
    }

    /// The image of the edge generator in the group at the edge's
    /// terminal vertex.
    fn edge_image(&self, edge: &str) -> PyResult<Word> {
        let e = self.inner.edge_by_name(edge).map_err(err)?;
        Ok(Word {
            inner: self.inner.edge_image(e).clone(),
        })
    }

    /// Parses a path-word, e.g. "~e_u * `a` * e_u", starting at the
    /// named vertex.
    fn path(&self, start: &str, text: &str) -> PyResult<PathWord> {
        let v = self.inner.vertex_by_name(start).map_err(err)?;
        Ok(PathWord {
            inner: core::PathWord::parse(&self.inner, v, text).map_err(err)?,
        })
    }
}

#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct PathWord {
    inner: core::PathWord,
}

#[pymethods]
impl PathWord {
    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("PathWord({})", self.inner)
    }

    #[getter]
    fn start(&self) -> String {
        self.inner.gog().vertex_name(self.inner.start()).to_string()
    }

    #[getter]
    fn end(&self) -> String {
        self.inner.gog().vertex_name(self.inner.end()).to_string()
    }

    #[getter]
    fn edge_len(&self) -> usize {
        self.inner.edge_len()
    }

    fn __mul__(&self, other: &PathWord) -> PyResult<PathWord> {
        Ok(PathWord {
            inner: self.inner.multiply(&other.inner).map_err(err)?,
        })
    }

    fn inverse(&self) -> PathWord {
        PathWord {
            inner: self.inner.inverse(),
        }
    }

    fn britton_reduce(&self) -> PyResult<PathWord> {
        Ok(PathWord {
            inner: self.inner.britton_reduce().map_err(err)?,
        })
    }

    fn is_trivial(&self) -> PyResult<bool> {
        self.inner.is_trivial().map_err(err)
    }

    fn translation_length(&self) -> PyResult<usize> {
        core::translation_length(&self.inner).map_err(err)
    }

    /// Equality in the fundamental group at the starting vertex.
    fn pi1_equal(&self, other: &PathWord) -> PyResult<bool> {
        core::pi1_equal(&self.inner, &other.inner, self.inner.start()).map_err(err)
    }
}

#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct GoGAut {
    inner: core::GoGAut,
}

#[pymethods]
impl GoGAut {
    #[getter]
    fn graph_map_is_trivial(&self) -> bool {
        self.inner.graph_map_is_trivial()
    }

    fn diagnostics(&self) -> PyResult<Vec<String>> {
        self.inner.diagnostics().map_err(err)
    }

    fn apply(&self, p: &PathWord) -> PyResult<PathWord> {
        Ok(PathWord {
            inner: self.inner.apply_path(&p.inner).map_err(err)?,
        })
    }

    /// self then other.
    fn compose(&self, other: &GoGAut) -> PyResult<GoGAut> {
        Ok(GoGAut {
            inner: self.inner.compose(&other.inner).map_err(err)?,
        })
    }

    fn inverse(&self) -> PyResult<GoGAut> {
        Ok(GoGAut {
            inner: self.inner.inverse().map_err(err)?,
        })
    }

    fn power(&self, k: usize) -> PyResult<GoGAut> {
        Ok(GoGAut {
            inner: self.inner.power(k).map_err(err)?,
        })
    }

    /// The induced automorphism on the free basis of the fundamental
    /// group at the named base vertex.
    fn induced_aut(&self, base: &str) -> PyResult<FreeAut> {
        let v = self.inner.gog().vertex_by_name(base).map_err(err)?;
        let basis = core::Pi1Basis::new(self.inner.gog(), v).map_err(err)?;
        Ok(FreeAut {
            inner: self.inner.induced_aut(&basis).map_err(err)?,
        })
    }

    /// Per-vertex outer classes: (vertex name, is trivial) pairs, plus
    /// whether edge conjugacy classes are preserved.
    fn mu(&self) -> PyResult<(Vec<(String, bool)>, bool)> {
        let report = core::mu(&self.inner).map_err(err)?;
        let gog = self.inner.gog();
        let classes = report
            .classes
            .iter()
            .enumerate()
            .map(|(v, c)| Ok((gog.vertex_name(v).to_string(), c.is_trivial().map_err(err)?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok((classes, report.preserves_edge_classes))
    }
}

#[pyclass(frozen)]
struct Scenario {
    inner: core::Scenario,
}

#[pymethods]
impl Scenario {
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Scenario {
            inner: core::Scenario::parse(text).map_err(err)?,
        })
    }

    #[getter]
    fn gog(&self) -> GraphOfGroups {
        GraphOfGroups {
            inner: self.inner.gog.clone(),
        }
    }

    #[getter]
    fn base(&self) -> String {
        self.inner.gog.vertex_name(self.inner.base).to_string()
    }

    fn aut(&self, name: &str) -> PyResult<FreeAut> {
        Ok(FreeAut {
            inner: self.inner.aut(name).map_err(err)?.clone(),
        })
    }

    fn gogaut(&self, name: &str) -> PyResult<GoGAut> {
        Ok(GoGAut {
            inner: self.inner.gogaut(name).map_err(err)?.clone(),
        })
    }
}

#[pyclass(frozen)]
struct Section4 {
    inner: core::Section4,
}

#[pymethods]
impl Section4 {
    #[new]
    #[pyo3(signature = (g=None))]
    fn new(g: Option<&str>) -> PyResult<Self> {
        Ok(Section4 {
            inner: core::Section4::new(g.unwrap_or(core::DEFAULT_G)).map_err(err)?,
        })
    }

    #[getter]
    fn gog(&self) -> GraphOfGroups {
        GraphOfGroups {
            inner: self.inner.gog.clone(),
        }
    }

    #[getter]
    fn phi(&self) -> FreeAut {
        FreeAut {
            inner: self.inner.phi.clone(),
        }
    }

    #[getter]
    fn r(&self) -> GoGAut {
        GoGAut {
            inner: self.inner.r.clone(),
        }
    }

    /// The Dehn twist automorphism with exponents r on e_u and s on e_w.
    fn twist(&self, r: i64, s: i64) -> PyResult<GoGAut> {
        Ok(GoGAut {
            inner: self
                .inner
                .twist(r, s)
                .map_err(err)?
                .as_gogaut()
                .map_err(err)?,
        })
    }
}

/// Runs the built-in corpus checks; returns a list of dicts with keys
/// name, anchor, status, witness.
#[pyfunction]
#[pyo3(signature = (seed=0, g=None, checks=None))]
fn run_section4<'py>(
    py: Python<'py>,
    seed: u64,
    g: Option<&str>,
    checks: Option<Vec<String>>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let cfg = core::Config {
        seed,
        g: g.unwrap_or(core::DEFAULT_G).to_string(),
        ..core::Config::default()
    };
    let report = core::run_section4(&cfg, checks.as_deref()).map_err(err)?;
    report
        .results
        .iter()
        .map(|r| {
            let d = PyDict::new(py);
            d.set_item("name", &r.name)?;
            d.set_item("anchor", &r.anchor)?;
            d.set_item(
                "status",
                match r.status {
                    core::Status::Pass => "pass",
                    core::Status::Fail => "fail",
                    core::Status::Skip => "skip",
                },
            )?;
            d.set_item("witness", &r.witness)?;
            Ok(d)
        })
        .collect()
}

#[pymodule]
fn gogaut_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Alphabet>()?;
    m.add_class::<Word>()?;
    m.add_class::<FreeAut>()?;
    m.add_class::<GraphOfGroups>()?;
    m.add_class::<PathWord>()?;
    m.add_class::<GoGAut>()?;
    m.add_class::<Scenario>()?;
    m.add_class::<Section4>()?;
    m.add_function(wrap_pyfunction!(subgroup_membership, m)?)?;
    m.add_function(wrap_pyfunction!(mccool_membership, m)?)?;
    m.add_function(wrap_pyfunction!(run_section4, m)?)?;
    Ok(())
}
