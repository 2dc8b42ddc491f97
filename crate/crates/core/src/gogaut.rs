//! Automorphisms of graphs of groups: graph map, vertex and edge
//! isomorphisms and delta-elements, with Dehn twists as the special
//! case of trivial maps.
//!
//! The compatibility axiom enforced at every directed edge e is
//!   f_tau(e)(alpha_e(g)) = delta_e^-1 . alpha_F(e)(f_e(g)) . delta_e
//! and the induced action on the path group sends a vertex element g at
//! v to f_v(g) and the edge e to delta_ebar^-1 . F(e) . delta_e.

use crate::aut::{FreeAut, FreeIso, OuterAutClass};
use crate::error::{Error, Result};
use crate::gog::{GraphOfGroups, PathWord};
use crate::pi1::Pi1Basis;
use crate::word::Word;

#[derive(Clone, Debug)]
pub struct GoGAut {
    gog: GraphOfGroups,
    vertex_map: Vec<usize>,
    edge_map: Vec<usize>,
    /// f_v : G_v -> G_{F(v)}
    vertex_isos: Vec<FreeIso>,
    /// f_e(z_e) = z_{F(e)}^{sign}; equal on paired edges.
    edge_signs: Vec<i8>,
    /// delta_e in the vertex group at F(tau(e)).
    deltas: Vec<Word>,
}

impl GoGAut {
    pub fn new(
        gog: &GraphOfGroups,
        vertex_map: Vec<usize>,
        edge_map: Vec<usize>,
        vertex_isos: Vec<FreeIso>,
        edge_signs: Vec<i8>,
        deltas: Vec<Word>,
    ) -> Result<GoGAut> {
        let a = GoGAut::new_lenient(gog, vertex_map, edge_map, vertex_isos, edge_signs, deltas)?;
        let diags = a.diagnostics()?;
        if diags.is_empty() {
            Ok(a)
        } else {
            Err(Error::InvalidGogAut(diags.join("; ")))
        }
    }

    /// Performs the structural checks but defers the edge compatibility
    /// equations to `diagnostics`.
    pub fn new_lenient(
        gog: &GraphOfGroups,
        vertex_map: Vec<usize>,
        edge_map: Vec<usize>,
        vertex_isos: Vec<FreeIso>,
        edge_signs: Vec<i8>,
        deltas: Vec<Word>,
    ) -> Result<GoGAut> {
        let nv = gog.vertex_count();
        let ne = gog.edge_count();
        if vertex_map.len() != nv
            || edge_map.len() != ne
            || vertex_isos.len() != nv
            || edge_signs.len() != ne
            || deltas.len() != ne
        {
            return Err(Error::InvalidGogAut("component length mismatch".into()));
        }
        let is_perm = |m: &[usize], n: usize| {
            let mut seen = vec![false; n];
            m.iter().all(|&x| {
                x < n && !std::mem::replace(&mut seen[x], true)
            })
        };
        if !is_perm(&vertex_map, nv) || !is_perm(&edge_map, ne) {
            return Err(Error::InvalidGogAut("graph map is not a permutation".into()));
        }
        for e in 0..ne {
            if edge_map[gog.reverse(e)] != gog.reverse(edge_map[e]) {
                return Err(Error::InvalidGogAut(format!(
                    "graph map breaks the edge pairing at {}",
                    gog.edge_name(e)
                )));
            }
            if gog.iota(edge_map[e]) != vertex_map[gog.iota(e)]
                || gog.tau(edge_map[e]) != vertex_map[gog.tau(e)]
            {
                return Err(Error::InvalidGogAut(format!(
                    "graph map breaks incidence at {}",
                    gog.edge_name(e)
                )));
            }
            if edge_signs[e] != 1 && edge_signs[e] != -1 {
                return Err(Error::InvalidGogAut("edge sign must be +1 or -1".into()));
            }
            if edge_signs[gog.reverse(e)] != edge_signs[e] {
                return Err(Error::InvalidGogAut(format!(
                    "edge signs differ across the pair at {}",
                    gog.edge_name(e)
                )));
            }
            gog.vertex_alphabet(vertex_map[gog.tau(e)])
                .check_same(deltas[e].alphabet())?;
        }
        for v in 0..nv {
            gog.vertex_alphabet(v).check_same(vertex_isos[v].domain())?;
            gog.vertex_alphabet(vertex_map[v]).check_same(vertex_isos[v].codomain())?;
        }
        Ok(GoGAut {
            gog: gog.clone(),
            vertex_map,
            edge_map,
            vertex_isos,
            edge_signs,
            deltas,
        })
    }

    /// The edge compatibility equations, one message per violated edge.
    pub fn diagnostics(&self) -> Result<Vec<String>> {
        let gog = &self.gog;
        let mut out = Vec::new();
        for e in 0..gog.edge_count() {
            let lhs = self.vertex_isos[gog.tau(e)].apply(gog.edge_image(e))?;
            let rhs = gog
                .edge_image(self.edge_map[e])
                .pow(self.edge_signs[e] as i64)
                .conjugate(&self.deltas[e])?;
            if lhs != rhs {
                out.push(format!(
                    "edge {}: f({}) = {} but delta^-1 alpha(z^sign) delta = {}",
                    gog.edge_name(e),
                    gog.edge_image(e),
                    lhs,
                    rhs
                ));
            }
        }
        Ok(out)
    }

    pub fn identity(gog: &GraphOfGroups) -> GoGAut {
        GoGAut {
            gog: gog.clone(),
            vertex_map: (0..gog.vertex_count()).collect(),
            edge_map: (0..gog.edge_count()).collect(),
            vertex_isos: (0..gog.vertex_count())
                .map(|v| FreeIso::identity(gog.vertex_alphabet(v)))
                .collect(),
            edge_signs: vec![1; gog.edge_count()],
            deltas: (0..gog.edge_count())
                .map(|e| Word::identity(gog.vertex_alphabet(gog.tau(e))))
                .collect(),
        }
    }

    pub fn gog(&self) -> &GraphOfGroups {
        &self.gog
    }

    pub fn vertex_map(&self, v: usize) -> usize {
        self.vertex_map[v]
    }

    pub fn edge_map(&self, e: usize) -> usize {
        self.edge_map[e]
    }

    pub fn vertex_iso(&self, v: usize) -> &FreeIso {
        &self.vertex_isos[v]
    }

    pub fn edge_sign(&self, e: usize) -> i8 {
        self.edge_signs[e]
    }

    pub fn delta(&self, e: usize) -> &Word {
        &self.deltas[e]
    }

    pub fn graph_map_is_trivial(&self) -> bool {
        self.vertex_map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// The action on path-group elements.
    pub fn apply_path(&self, p: &PathWord) -> Result<PathWord> {
        self.gog.check_same(p.gog())?;
        let (head, items) = p.parts();
        let mut out = PathWord::vertex_word(
            &self.gog,
            self.vertex_map[p.start()],
            self.vertex_isos[p.start()].apply(head)?,
        )?;
        for (e, g) in items {
            let ebar = self.gog.reverse(*e);
            out = out
                .push_word(&self.deltas[ebar].inverse())?
                .push_edge(self.edge_map[*e])?
                .push_word(&self.deltas[*e])?
                .push_word(&self.vertex_isos[self.gog.tau(*e)].apply(g)?)?;
        }
        Ok(out)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &GoGAut) -> Result<GoGAut> {
        self.gog.check_same(&other.gog)?;
        let nv = self.gog.vertex_count();
        let ne = self.gog.edge_count();
        let vertex_map: Vec<usize> = (0..nv).map(|v| other.vertex_map[self.vertex_map[v]]).collect();
        let edge_map: Vec<usize> = (0..ne).map(|e| other.edge_map[self.edge_map[e]]).collect();
        let vertex_isos = (0..nv)
            .map(|v| self.vertex_isos[v].compose(&other.vertex_isos[self.vertex_map[v]]))
            .collect::<Result<Vec<_>>>()?;
        let edge_signs = (0..ne)
            .map(|e| self.edge_signs[e] * other.edge_signs[self.edge_map[e]])
            .collect();
        // reading the non-edge terms off the composite edge image:
        // delta_e = delta^b_{Fa(e)} . f^b_{Fa(tau(e))}(delta^a_e)
        let deltas = (0..ne)
            .map(|e| {
                other.deltas[self.edge_map[e]]
                    .multiply(&other.vertex_isos[self.vertex_map[self.gog.tau(e)]].apply(&self.deltas[e])?)
            })
            .collect::<Result<Vec<_>>>()?;
        GoGAut::new(
            &self.gog,
            vertex_map,
            edge_map,
            vertex_isos,
            edge_signs,
            deltas,
        )
    }

    pub fn inverse(&self) -> Result<GoGAut> {
        let nv = self.gog.vertex_count();
        let ne = self.gog.edge_count();
        let mut vertex_map = vec![0; nv];
        for v in 0..nv {
            vertex_map[self.vertex_map[v]] = v;
        }
        let mut edge_map = vec![0; ne];
        for e in 0..ne {
            edge_map[self.edge_map[e]] = e;
        }
        let vertex_isos = (0..nv)
            .map(|v| self.vertex_isos[vertex_map[v]].inverse())
            .collect::<Vec<_>>();
        let edge_signs = (0..ne).map(|e| self.edge_signs[edge_map[e]]).collect();
        // requiring the composite deltas to vanish gives
        // delta'_{e'} = f'_{tau(e')}(delta_{F^-1(e')})^-1
        let deltas = (0..ne)
            .map(|e| {
                let pre = edge_map[e];
                Ok(vertex_isos[self.gog.tau(e)]
                    .apply(&self.deltas[pre])?
                    .inverse())
            })
            .collect::<Result<Vec<_>>>()?;
        GoGAut::new(
            &self.gog,
            vertex_map,
            edge_map,
            vertex_isos,
            edge_signs,
            deltas,
        )
    }

    pub fn power(&self, k: usize) -> Result<GoGAut> {
        let mut out = GoGAut::identity(&self.gog);
        for _ in 0..k {
            out = out.compose(self)?;
        }
        Ok(out)
    }

    /// The automorphism induced on the free basis of the fundamental
    /// group, defined exactly when the graph map fixes the base.
    pub fn induced_aut(&self, basis: &Pi1Basis) -> Result<FreeAut> {
        if self.vertex_map[basis.base()] != basis.base() {
            return Err(Error::BaseMoved);
        }
        let inv = self.inverse()?;
        let alphabet = basis.alphabet().clone();
        let forward = (0..alphabet.rank())
            .map(|i| basis.loop_to_word(&self.apply_path(basis.basis_loop(i))?))
            .collect::<Result<Vec<_>>>()?;
        let backward = (0..alphabet.rank())
            .map(|i| basis.loop_to_word(&inv.apply_path(basis.basis_loop(i))?))
            .collect::<Result<Vec<_>>>()?;
        FreeAut::new(&alphabet, forward, backward)
    }

    /// Induced outer class when the graph map moves the base; the caller
    /// supplies a path from the base to its image, and the result is
    /// well defined up to inner automorphisms.
    pub fn induced_outer(
        &self,
        basis: &Pi1Basis,
        connecting: Option<&PathWord>,
    ) -> Result<OuterAutClass> {
        let base = basis.base();
        if self.vertex_map[base] == base {
            return Ok(OuterAutClass::new(self.induced_aut(basis)?));
        }
        let c = connecting.ok_or(Error::BaseMoved)?;
        if c.start() != base || c.end() != self.vertex_map[base] {
            return Err(Error::InconsistentPath(
                "connecting path must run from the base to its image".into(),
            ));
        }
        let inv = self.inverse()?;
        // path from the base to its preimage, chosen so that the two
        // conjugated maps are exact mutual inverses
        let d = inv.apply_path(c)?.inverse();
        let alphabet = basis.alphabet().clone();
        let conj = |a: &GoGAut, t: &PathWord, i: usize| -> Result<Word> {
            let l = a.apply_path(basis.basis_loop(i))?;
            basis.loop_to_word(&t.multiply(&l)?.multiply(&t.inverse())?)
        };
        let forward = (0..alphabet.rank())
            .map(|i| conj(self, c, i))
            .collect::<Result<Vec<_>>>()?;
        let backward = (0..alphabet.rank())
            .map(|i| conj(&inv, &d, i))
            .collect::<Result<Vec<_>>>()?;
        Ok(OuterAutClass::new(FreeAut::new(&alphabet, forward, backward)?))
    }
}

/// Twist exponents per geometric edge: the twistor on edge e is
/// z_e^{n_e} (so the reversed orientation carries the negative).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DehnTwistData {
    gog: GraphOfGroups,
    exponents: Vec<i64>,
}

impl DehnTwistData {
    pub fn new(gog: &GraphOfGroups, exponents: Vec<i64>) -> Result<DehnTwistData> {
        if exponents.len() != gog.geometric_edge_count() {
            return Err(Error::InvalidGogAut(format!(
                "expected {} twist exponents, got {}",
                gog.geometric_edge_count(),
                exponents.len()
            )));
        }
        if !gog.is_efficient() {
            return Err(Error::NotEfficient("twists need maximal cyclic edge images".into()));
        }
        Ok(DehnTwistData {
            gog: gog.clone(),
            exponents,
        })
    }

    pub fn gog(&self) -> &GraphOfGroups {
        &self.gog
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    /// Twist exponent of a directed edge.
    pub fn exponent(&self, e: usize) -> i64 {
        let n = self.exponents[e / 2];
        if e % 2 == 0 {
            n
        } else {
            -n
        }
    }

    /// The Dehn twist as a graph-of-groups automorphism: trivial graph
    /// map and vertex isos, delta_e = alpha_e(z_e)^{n_e} on the chosen
    /// orientation and trivial on the reverse.
    pub fn as_gogaut(&self) -> Result<GoGAut> {
        let gog = &self.gog;
        let deltas = (0..gog.edge_count())
            .map(|e| {
                if e % 2 == 0 {
                    gog.edge_image(e).pow(self.exponents[e / 2])
                } else {
                    Word::identity(gog.vertex_alphabet(gog.tau(e)))
                }
            })
            .collect();
        GoGAut::new(
            gog,
            (0..gog.vertex_count()).collect(),
            (0..gog.edge_count()).collect(),
            (0..gog.vertex_count())
                .map(|v| FreeIso::identity(gog.vertex_alphabet(v)))
                .collect(),
            vec![1; gog.edge_count()],
            deltas,
        )
    }
}

/// The free-group automorphism induced by a Dehn twist.
pub fn twist_aut(d: &DehnTwistData, basis: &Pi1Basis) -> Result<FreeAut> {
    d.as_gogaut()?.induced_aut(basis)
}

/// `r^k` represents the twist and `r` transports twistors along the
/// graph map: f_e(z_e^{n_e}) = z_{F(e)}^{n_{F(e)}}.
pub fn is_root_of_dehn_twist(
    r: &GoGAut,
    d: &DehnTwistData,
    k: usize,
    basis: &Pi1Basis,
) -> Result<bool> {
    r.gog().check_same(d.gog())?;
    if k == 0 {
        return Err(Error::Other("root exponent must be >= 1".into()));
    }
    for e in 0..r.gog().edge_count() {
        if r.edge_sign(e) as i64 * d.exponent(e) != d.exponent(r.edge_map(e)) {
            return Ok(false);
        }
    }
    let induced = r.power(k)?.induced_outer(basis, None);
    let induced = match induced {
        Ok(c) => c,
        Err(Error::BaseMoved) => return Ok(false),
        Err(e) => return Err(e),
    };
    induced
        .representative()
        .outer_equal(&twist_aut(d, basis)?)
}

/// Per-vertex outer classes of a graph-map-trivial automorphism, with
/// the edge-conjugacy (McCool condition) report.
#[derive(Clone, Debug)]
pub struct MuReport {
    pub classes: Vec<OuterAutClass>,
    /// For each directed edge e, a witness conjugating f_tau(e)(alpha_e(z))
    /// back to alpha_e(z).
    pub edge_witnesses: Vec<Option<Word>>,
    pub preserves_edge_classes: bool,
}

impl MuReport {
    pub fn all_trivial(&self) -> Result<bool> {
        for c in &self.classes {
            if !c.is_trivial()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The mu map: restriction of a graph-map-trivial automorphism to its
/// vertex groups, read off as outer classes.
pub fn mu(a: &GoGAut) -> Result<MuReport> {
    if !a.graph_map_is_trivial() {
        return Err(Error::NontrivialGraphMap);
    }
    let gog = a.gog();
    let classes = (0..gog.vertex_count())
        .map(|v| Ok(OuterAutClass::new(FreeAut::from_iso(a.vertex_iso(v).clone())?)))
        .collect::<Result<Vec<_>>>()?;
    let mut edge_witnesses = Vec::new();
    let mut preserves = true;
    for e in 0..gog.edge_count() {
        let image = a.vertex_iso(gog.tau(e)).apply(gog.edge_image(e))?;
        let witness = image.are_conjugate(gog.edge_image(e))?;
        preserves &= witness.is_some();
        edge_witnesses.push(witness);
    }
    Ok(MuReport {
        classes,
        edge_witnesses,
        preserves_edge_classes: preserves,
    })
}

/// Rank of the group of Dehn twists: the number of geometric edges. The
/// certificate checks that distinct exponent vectors on a small grid
/// induce distinct outer automorphisms.
pub fn twist_kernel_rank(gog: &GraphOfGroups, basis: &Pi1Basis, grid: i64) -> Result<usize> {
    if !gog.is_efficient() {
        return Err(Error::NotEfficient("twist kernel needs an efficient graph".into()));
    }
    let m = gog.geometric_edge_count();
    let mut vectors: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..m {
        vectors = vectors
            .into_iter()
            .flat_map(|v| {
                (-grid..=grid).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    let auts = vectors
        .iter()
        .map(|v| twist_aut(&DehnTwistData::new(gog, v.clone())?, basis))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..auts.len() {
        for j in i + 1..auts.len() {
            if auts[i].outer_equal(&auts[j])? {
                return Err(Error::Other(format!(
                    "independence certificate failed: exponents {:?} and {:?} agree",
                    vectors[i], vectors[j]
                )));
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::aut::FreeHom;
    use crate::gog::tests::figure_gog;
    use crate::gog::{pi1_equal, translation_length};

    fn w(al: &Alphabet, s: &str) -> Word {
        Word::parse(al, s).unwrap()
    }

    fn iso(dom: &Alphabet, cod: &Alphabet, fwd: &[&str], bwd: &[&str]) -> FreeIso {
        let f = FreeHom::new(dom, cod, fwd.iter().map(|s| w(cod, s)).collect()).unwrap();
        let b = FreeHom::new(cod, dom, bwd.iter().map(|s| w(dom, s)).collect()).unwrap();
        FreeIso::new(f, b).unwrap()
    }

    /// The order-two symmetry R of the example graph: swaps u and w (and
    /// the two edges), exchanges g and gamma, with the single nontrivial
    /// delta at ~e_w.
    pub(crate) fn aut_r(gog: &GraphOfGroups) -> GoGAut {
        let u = gog.vertex_by_name("u").unwrap();
        let v = gog.vertex_by_name("v").unwrap();
        let wv = gog.vertex_by_name("w").unwrap();
        let fu = gog.vertex_alphabet(u).clone();
        let fv = gog.vertex_alphabet(v).clone();
        let fw = gog.vertex_alphabet(wv).clone();
        let e_u = gog.edge_by_name("e_u").unwrap();
        let e_w = gog.edge_by_name("e_w").unwrap();
        let mut vertex_map = vec![0; 3];
        vertex_map[u] = wv;
        vertex_map[v] = v;
        vertex_map[wv] = u;
        let mut edge_map = vec![0; 4];
        edge_map[e_u] = e_w;
        edge_map[gog.reverse(e_u)] = gog.reverse(e_w);
        edge_map[e_w] = e_u;
        edge_map[gog.reverse(e_w)] = gog.reverse(e_u);
        let mut vertex_isos = vec![FreeIso::identity(&fv); 3];
        vertex_isos[u] = iso(&fu, &fw, &["alpha", "beta"], &["a", "b"]);
        vertex_isos[v] = iso(&fv, &fv, &["gamma", "g"], &["gamma", "g"]);
        vertex_isos[wv] = iso(&fw, &fu, &["a", "b"], &["alpha", "beta"]);
        let mut deltas = vec![
            Word::identity(&fv),
            Word::identity(&fv),
            Word::identity(&fv),
            Word::identity(&fv),
        ];
        deltas[e_u] = Word::identity(&fv);
        // delta_~e_u lives at F(tau(~e_u)) = F(u) = w
        deltas[gog.reverse(e_u)] = Word::identity(&fw);
        deltas[e_w] = Word::identity(&fv);
        // delta_~e_w lives at F(w) = u; the inverse orientation of the
        // edge image makes the induced map send alpha to a^g
        deltas[gog.reverse(e_w)] = w(&fu, "b^-1*a^-1");
        GoGAut::new(gog, vertex_map, edge_map, vertex_isos, vec![1; 4], deltas).unwrap()
    }

    /// phi on the pi1 basis F(a,b,alpha,beta) with g = a*b.
    pub(crate) fn phi(basis: &Alphabet) -> FreeAut {
        FreeAut::new(
            basis,
            vec![
                w(basis, "alpha"),
                w(basis, "beta"),
                w(basis, "b^-1*a^-1*a*a*b"),
                w(basis, "b^-1*a^-1*b*a*b"),
            ],
            vec![
                w(basis, "alpha*beta*alpha*beta^-1*alpha^-1"),
                w(basis, "alpha*beta*beta*beta^-1*alpha^-1"),
                w(basis, "a"),
                w(basis, "b"),
            ],
        )
        .unwrap()
    }

    fn setup() -> (GraphOfGroups, Pi1Basis) {
        let gog = figure_gog();
        let base = gog.vertex_by_name("v").unwrap();
        let basis = Pi1Basis::new(&gog, base).unwrap();
        (gog, basis)
    }

    #[test]
    fn r_validates_and_perturbations_fail() {
        let (gog, _) = setup();
        let r = aut_r(&gog);
        assert!(r.diagnostics().unwrap().is_empty());
        // identity automorphism is valid
        assert!(GoGAut::identity(&gog).diagnostics().unwrap().is_empty());
        // perturbing a delta by a non-commuting element breaks the edge
        // equation
        let e_w = gog.edge_by_name("e_w").unwrap();
        let u = gog.vertex_by_name("u").unwrap();
        let mut deltas: Vec<Word> = (0..4).map(|e| r.delta(e).clone()).collect();
        deltas[gog.reverse(e_w)] = w(gog.vertex_alphabet(u), "a");
        let bad = GoGAut::new_lenient(
            &gog,
            (0..3).map(|v| r.vertex_map(v)).collect(),
            (0..4).map(|e| r.edge_map(e)).collect(),
            (0..3).map(|v| r.vertex_iso(v).clone()).collect(),
            vec![1; 4],
            deltas,
        )
        .unwrap();
        let diags = bad.diagnostics().unwrap();
        assert_eq!(diags.len(), 1);
        assert!(diags[0].contains("~e_w"));
    }

    #[test]
    fn induced_aut_of_r_is_phi() {
        let (_, basis) = setup();
        let gog = basis.gog().clone();
        let r = aut_r(&gog);
        let induced = r.induced_aut(&basis).unwrap();
        assert_eq!(induced, phi(basis.alphabet()));
    }

    #[test]
    fn r_squared_is_phi_squared() {
        let (_, basis) = setup();
        let gog = basis.gog().clone();
        let r = aut_r(&gog);
        let r2 = r.compose(&r).unwrap();
        assert!(r2.graph_map_is_trivial());
        let p = phi(basis.alphabet());
        let induced = r2.induced_aut(&basis).unwrap();
        assert!(induced.outer_equal(&p.compose(&p).unwrap()).unwrap());
        // phi^2 table: a -> a^g, b -> b^g, alpha -> alpha^gamma, beta -> beta^gamma
        let al = basis.alphabet();
        assert_eq!(induced.image(0), &w(al, "b^-1*a^-1*a*a*b"));
        assert_eq!(induced.image(1), &w(al, "b^-1*a^-1*b*a*b"));
        assert_eq!(induced.image(2), &w(al, "beta^-1*alpha^-1*alpha*alpha*beta"));
        assert_eq!(induced.image(3), &w(al, "beta^-1*alpha^-1*beta*alpha*beta"));
    }

    #[test]
    fn compose_and_inverse_are_consistent() {
        let (_, basis) = setup();
        let gog = basis.gog().clone();
        let r = aut_r(&gog);
        let rinv = r.inverse().unwrap();
        let id = r.compose(&rinv).unwrap();
        assert!(id.graph_map_is_trivial());
        assert!(id.induced_aut(&basis).unwrap().is_inner().unwrap().is_some());
        // functoriality: induced(r . r) ~ induced(r) . induced(r)
        let lhs = r.compose(&r).unwrap().induced_aut(&basis).unwrap();
        let rf = r.induced_aut(&basis).unwrap();
        assert!(lhs.outer_equal(&rf.compose(&rf).unwrap()).unwrap());
    }

    #[test]
    fn twist_matches_the_d_table() {
        let (gog, basis) = setup();
        for (r, s) in [(1i64, 1i64), (2, -1), (-3, 0)] {
            let d = DehnTwistData::new(&gog, vec![r, s]).unwrap();
            let f = twist_aut(&d, &basis).unwrap();
            let al = basis.alphabet();
            let g = w(al, "a*b");
            let gamma = w(al, "alpha*beta");
            assert_eq!(f.image(0), &w(al, "a").conjugate(&g.pow(r)).unwrap());
            assert_eq!(f.image(1), &w(al, "b").conjugate(&g.pow(r)).unwrap());
            assert_eq!(f.image(2), &w(al, "alpha").conjugate(&gamma.pow(s)).unwrap());
            assert_eq!(f.image(3), &w(al, "beta").conjugate(&gamma.pow(s)).unwrap());
        }
        // zero exponents induce the identity
        let d = DehnTwistData::new(&gog, vec![0, 0]).unwrap();
        assert!(twist_aut(&d, &basis).unwrap().is_identity());
    }

    #[test]
    fn r_is_a_root_of_the_basic_twist() {
        let (gog, basis) = setup();
        let r = aut_r(&gog);
        let d = DehnTwistData::new(&gog, vec![1, 1]).unwrap();
        assert!(is_root_of_dehn_twist(&r, &d, 2, &basis).unwrap());
        // the doubled twist is not represented by R^2
        let d2 = DehnTwistData::new(&gog, vec![2, 2]).unwrap();
        assert!(!is_root_of_dehn_twist(&r, &d2, 2, &basis).unwrap());
        // identity roots the zero twist
        let z = DehnTwistData::new(&gog, vec![0, 0]).unwrap();
        assert!(is_root_of_dehn_twist(&GoGAut::identity(&gog), &z, 1, &basis).unwrap());
        // asymmetric twists are not transported by the edge swap
        let d10 = DehnTwistData::new(&gog, vec![1, 0]).unwrap();
        assert!(!is_root_of_dehn_twist(&r, &d10, 2, &basis).unwrap());
    }

    #[test]
    fn mu_kills_twists_and_r_squared() {
        let (gog, basis) = setup();
        let r2 = aut_r(&gog).compose(&aut_r(&gog)).unwrap();
        let report = mu(&r2).unwrap();
        assert!(report.all_trivial().unwrap());
        assert!(report.preserves_edge_classes);
        let d = DehnTwistData::new(&gog, vec![2, -1]).unwrap();
        let report = mu(&d.as_gogaut().unwrap()).unwrap();
        assert!(report.all_trivial().unwrap());
        // mu refuses nontrivial graph maps
        assert!(matches!(mu(&aut_r(&gog)), Err(Error::NontrivialGraphMap)));
        let _ = basis;
    }

    #[test]
    fn induced_outer_with_moved_base() {
        let gog = figure_gog();
        let u = gog.vertex_by_name("u").unwrap();
        let basis_u = Pi1Basis::new(&gog, u).unwrap();
        let r = aut_r(&gog);
        assert!(matches!(r.induced_outer(&basis_u, None), Err(Error::BaseMoved)));
        // connecting path u -> v -> w
        let c = PathWord::parse(&gog, u, "e_u * ~e_w").unwrap();
        let class = r.induced_outer(&basis_u, Some(&c)).unwrap();
        // squaring the conjugated representative agrees with the induced
        // automorphism of R^2 at u up to inner
        let rep = class.representative();
        let r2 = r.compose(&r).unwrap().induced_aut(&basis_u).unwrap();
        assert!(rep.compose(rep).unwrap().outer_equal(&r2).unwrap());
    }

    #[test]
    fn kernel_rank_with_certificate() {
        let (gog, basis) = setup();
        // small grid here; the acceptance suite runs the full {-2..2}^2
        assert_eq!(twist_kernel_rank(&gog, &basis, 1).unwrap(), 2);
    }

    #[test]
    fn translation_lengths_are_preserved() {
        let (gog, _basis) = setup();
        let v = gog.vertex_by_name("v").unwrap();
        let r = aut_r(&gog);
        let d = DehnTwistData::new(&gog, vec![1, -2]).unwrap().as_gogaut().unwrap();
        for text in [
            "~e_u * `a` * e_u * ~e_w * `alpha` * e_w",
            "~e_u * `a*b^-1` * e_u",
            "`g` * ~e_w * `beta` * e_w * ~e_u * `b` * e_u",
        ] {
            let p = PathWord::parse(&gog, v, text).unwrap();
            for a in [&r, &d] {
                let q = a.apply_path(&p).unwrap();
                assert_eq!(
                    translation_length(&p).unwrap(),
                    translation_length(&q).unwrap()
                );
            }
        }
    }

    #[test]
    fn apply_path_is_a_homomorphism_into_pi1() {
        let (gog, basis) = setup();
        let v = gog.vertex_by_name("v").unwrap();
        let r = aut_r(&gog);
        let p = PathWord::parse(&gog, v, "~e_u * `b` * e_u").unwrap();
        let q = PathWord::parse(&gog, v, "`g` * ~e_w * `alpha` * e_w").unwrap();
        let lhs = r.apply_path(&p.multiply(&q).unwrap()).unwrap();
        let rhs = r.apply_path(&p).unwrap().multiply(&r.apply_path(&q).unwrap()).unwrap();
        assert!(pi1_equal(&lhs, &rhs, v).unwrap());
        let _ = basis;
    }
}
