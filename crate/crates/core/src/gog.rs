//! Graphs of groups with free vertex groups and cyclic edge groups, and
//! path-group elements with Britton reduction.
//!
//! Directed edges come in reversed pairs stored adjacently, so
//! `reverse(e) = e ^ 1`. Each directed edge `e` records the image of the
//! edge-group generator `z_e` under the monomorphism into the terminal
//! vertex group `G_tau(e)`; the reversed edge holds the image at the
//! other end.

use std::fmt;
use std::sync::Arc;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Debug)]
struct VertexData {
    name: String,
    alphabet: Alphabet,
}

#[derive(Debug)]
struct EdgeData {
    name: String,
    iota: usize,
    tau: usize,
    /// Image of z_e in the vertex group at tau(e).
    image: Word,
}

#[derive(Debug)]
struct Inner {
    vertices: Vec<VertexData>,
    edges: Vec<EdgeData>,
    efficient: bool,
}

/// Specification of one geometric edge for the builder.
#[derive(Clone, Debug)]
pub struct EdgeSpec {
    pub name: String,
    pub from: String,
    pub to: String,
    /// Image of z in the vertex group at `from`.
    pub image_at_source: Word,
    /// Image of z in the vertex group at `to`.
    pub image_at_target: Word,
}

/// A finite connected graph of groups with free vertex groups and
/// infinite cyclic edge groups. Cheap to clone.
#[derive(Clone, Debug)]
pub struct GraphOfGroups(Arc<Inner>);

impl PartialEq for GraphOfGroups {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        self.0.vertices.len() == other.0.vertices.len()
            && self.0.edges.len() == other.0.edges.len()
            && self
                .0
                .vertices
                .iter()
                .zip(&other.0.vertices)
                .all(|(a, b)| a.name == b.name && a.alphabet == b.alphabet)
            && self.0.edges.iter().zip(&other.0.edges).all(|(a, b)| {
                a.name == b.name && a.iota == b.iota && a.tau == b.tau && a.image == b.image
            })
    }
}
impl Eq for GraphOfGroups {}

impl GraphOfGroups {
    pub fn new(
        vertices: Vec<(String, Alphabet)>,
        edges: Vec<EdgeSpec>,
        allow_nonefficient: bool,
    ) -> Result<GraphOfGroups> {
        if vertices.is_empty() {
            return Err(Error::InvalidGraph("no vertices".into()));
        }
        let mut vdata = Vec::new();
        for (name, alphabet) in vertices {
            if vdata.iter().any(|v: &VertexData| v.name == name) {
                return Err(Error::InvalidGraph(format!("duplicate vertex `{name}`")));
            }
            vdata.push(VertexData { name, alphabet });
        }
        let vertex_index = |name: &str| {
            vdata
                .iter()
                .position(|v| v.name == name)
                .ok_or_else(|| Error::UnknownName(name.to_string()))
        };
        let mut edata: Vec<EdgeData> = Vec::new();
        let mut efficient = true;
        for spec in edges {
            if edata.iter().any(|e| e.name == spec.name)
                || vdata.iter().any(|v| v.name == spec.name)
            {
                return Err(Error::InvalidGraph(format!("duplicate name `{}`", spec.name)));
            }
            let iota = vertex_index(&spec.from)?;
            let tau = vertex_index(&spec.to)?;
            for (w, v) in [(&spec.image_at_source, iota), (&spec.image_at_target, tau)] {
                vdata[v].alphabet.check_same(w.alphabet())?;
                if w.is_empty() {
                    return Err(Error::InvalidGraph(format!(
                        "edge `{}` has a trivial monomorphism image",
                        spec.name
                    )));
                }
                if w.is_proper_power()?.is_some() {
                    if allow_nonefficient {
                        efficient = false;
                    } else {
                        return Err(Error::InvalidGraph(format!(
                            "edge `{}` image {w} is a proper power (pass the non-efficient flag to allow)",
                            spec.name
                        )));
                    }
                }
            }
            edata.push(EdgeData {
                name: spec.name.clone(),
                iota,
                tau,
                image: spec.image_at_target,
            });
            edata.push(EdgeData {
                name: format!("~{}", spec.name),
                iota: tau,
                tau: iota,
                image: spec.image_at_source,
            });
        }
        // connectivity
        let mut seen = vec![false; vdata.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &edata {
                if e.iota == v && !seen[e.tau] {
                    seen[e.tau] = true;
                    stack.push(e.tau);
                }
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::InvalidGraph("underlying graph is not connected".into()));
        }
        Ok(GraphOfGroups(Arc::new(Inner {
            vertices: vdata,
            edges: edata,
            efficient,
        })))
    }

    pub fn vertex_count(&self) -> usize {
        self.0.vertices.len()
    }

    /// Number of directed edges (twice the geometric count).
    pub fn edge_count(&self) -> usize {
        self.0.edges.len()
    }

    pub fn geometric_edge_count(&self) -> usize {
        self.0.edges.len() / 2
    }

    pub fn is_efficient(&self) -> bool {
        self.0.efficient
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.0.vertices[v].name
    }

    pub fn vertex_alphabet(&self, v: usize) -> &Alphabet {
        &self.0.vertices[v].alphabet
    }

    pub fn vertex_by_name(&self, name: &str) -> Result<usize> {
        self.0
            .vertices
            .iter()
            .position(|v| v.name == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn edge_name(&self, e: usize) -> &str {
        &self.0.edges[e].name
    }

    pub fn edge_by_name(&self, name: &str) -> Result<usize> {
        self.0
            .edges
            .iter()
            .position(|e| e.name == name)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn reverse(&self, e: usize) -> usize {
        e ^ 1
    }

    pub fn iota(&self, e: usize) -> usize {
        self.0.edges[e].iota
    }

    pub fn tau(&self, e: usize) -> usize {
        self.0.edges[e].tau
    }

    /// Image of z_e in the vertex group at tau(e).
    pub fn edge_image(&self, e: usize) -> &Word {
        &self.0.edges[e].image
    }

    pub fn check_same(&self, other: &GraphOfGroups) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::InvalidGraph("operands live on different graphs of groups".into()))
        }
    }
}

/// An element of the path group: g0 e1 g1 ... en gn with endpoint
/// consistency enforced at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathWord {
    gog: GraphOfGroups,
    start: usize,
    head: Word,
    tail: Vec<(usize, Word)>,
}

impl PathWord {
    /// A single vertex-group element viewed as a length-0 path.
    pub fn vertex_word(gog: &GraphOfGroups, vertex: usize, w: Word) -> Result<PathWord> {
        gog.vertex_alphabet(vertex).check_same(w.alphabet())?;
        Ok(PathWord {
            gog: gog.clone(),
            start: vertex,
            head: w,
            tail: Vec::new(),
        })
    }

    pub fn identity(gog: &GraphOfGroups, vertex: usize) -> PathWord {
        PathWord {
            gog: gog.clone(),
            start: vertex,
            head: Word::identity(gog.vertex_alphabet(vertex)),
            tail: Vec::new(),
        }
    }

    pub fn gog(&self) -> &GraphOfGroups {
        &self.gog
    }

    /// Leading vertex word and the (edge, vertex word) steps after it.
    pub fn parts(&self) -> (&Word, &[(usize, Word)]) {
        (&self.head, &self.tail)
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        match self.tail.last() {
            Some(&(e, _)) => self.gog.tau(e),
            None => self.start,
        }
    }

    pub fn is_loop(&self) -> bool {
        self.start == self.end()
    }

    /// Number of edge letters.
    pub fn edge_len(&self) -> usize {
        self.tail.len()
    }

    /// Appends an edge (must start where the path ends) and the identity
    /// of the new terminal vertex group.
    pub fn push_edge(&self, e: usize) -> Result<PathWord> {
        if self.gog.iota(e) != self.end() {
            return Err(Error::InconsistentPath(format!(
                "edge {} starts at {}, path ends at {}",
                self.gog.edge_name(e),
                self.gog.vertex_name(self.gog.iota(e)),
                self.gog.vertex_name(self.end())
            )));
        }
        let mut out = self.clone();
        out.tail
            .push((e, Word::identity(self.gog.vertex_alphabet(self.gog.tau(e)))));
        Ok(out)
    }

    /// Multiplies a vertex-group element at the current endpoint.
    pub fn push_word(&self, w: &Word) -> Result<PathWord> {
        let end = self.end();
        self.gog.vertex_alphabet(end).check_same(w.alphabet())?;
        let mut out = self.clone();
        match out.tail.last_mut() {
            Some((_, g)) => *g = g.multiply(w)?,
            None => out.head = out.head.multiply(w)?,
        }
        Ok(out)
    }

    pub fn multiply(&self, other: &PathWord) -> Result<PathWord> {
        self.gog.check_same(&other.gog)?;
        if self.end() != other.start {
            return Err(Error::InconsistentPath(format!(
                "left factor ends at {}, right factor starts at {}",
                self.gog.vertex_name(self.end()),
                self.gog.vertex_name(other.start)
            )));
        }
        let mut out = self.push_word(&other.head)?;
        for (e, g) in &other.tail {
            out = out.push_edge(*e)?.push_word(g)?;
        }
        Ok(out)
    }

    pub fn inverse(&self) -> PathWord {
        let mut out = PathWord::identity(&self.gog, self.end());
        match self.tail.last() {
            Some((_, g)) => out.head = g.inverse(),
            None => out.head = self.head.inverse(),
        }
        for i in (0..self.tail.len()).rev() {
            let e = self.gog.reverse(self.tail[i].0);
            let g = if i == 0 {
                self.head.inverse()
            } else {
                self.tail[i - 1].1.inverse()
            };
            out.tail.push((e, g));
        }
        out
    }

    /// One Britton rewrite at position i (pattern e, w, reverse(e) with w
    /// a power of the edge image), if applicable.
    fn rewrite_at(&self, i: usize) -> Result<Option<PathWord>> {
        if i + 1 >= self.tail.len() {
            return Ok(None);
        }
        let (e, ref w) = self.tail[i];
        let (enext, _) = self.tail[i + 1];
        if enext != self.gog.reverse(e) {
            return Ok(None);
        }
        let k = match w.power_of(self.gog.edge_image(e))? {
            Some(k) => k,
            None => return Ok(None),
        };
        // e alpha_e(z^k) ebar -> alpha_ebar(z^k), merged into neighbours
        let contribution = self.gog.edge_image(self.gog.reverse(e)).pow(k);
        let after = self.tail[i + 1].1.clone();
        let merged = contribution.multiply(&after)?;
        let mut out = self.clone();
        out.tail.drain(i..=i + 1);
        if i == 0 {
            out.head = out.head.multiply(&merged)?;
        } else {
            out.tail[i - 1].1 = out.tail[i - 1].1.multiply(&merged)?;
        }
        Ok(Some(out))
    }

    fn rewrite_positions(&self) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for i in 0..self.tail.len() {
            if self.rewrite_at(i)?.is_some() {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Britton reduction with the canonical leftmost-first strategy.
    pub fn britton_reduce(&self) -> Result<PathWord> {
        let mut cur = self.clone();
        loop {
            let positions = cur.rewrite_positions()?;
            match positions.first() {
                Some(&i) => cur = cur.rewrite_at(i)?.expect("applicable"),
                None => return Ok(cur),
            }
        }
    }

    /// Britton reduction applying rewrites in an externally chosen order;
    /// `pick` receives the number of applicable positions.
    pub fn britton_reduce_choosing(&self, mut pick: impl FnMut(usize) -> usize) -> Result<PathWord> {
        let mut cur = self.clone();
        loop {
            let positions = cur.rewrite_positions()?;
            if positions.is_empty() {
                return Ok(cur);
            }
            let i = positions[pick(positions.len()) % positions.len()];
            cur = cur.rewrite_at(i)?.expect("applicable");
        }
    }

    /// Trivial as a path-group element?
    pub fn is_trivial(&self) -> Result<bool> {
        let r = self.britton_reduce()?;
        Ok(r.tail.is_empty() && r.head.is_identity())
    }

    pub fn parse(gog: &GraphOfGroups, start: usize, text: &str) -> Result<PathWord> {
        let mut out = PathWord::identity(gog, start);
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: "empty path text (use `1` for the identity)".into(),
            });
        }
        // split on '*' only outside backtick quotes
        let mut tokens: Vec<String> = Vec::new();
        let mut cur = String::new();
        let mut quoted = false;
        for c in text.chars() {
            match c {
                '`' => {
                    quoted = !quoted;
                    cur.push(c);
                }
                '*' if !quoted => {
                    tokens.push(std::mem::take(&mut cur));
                }
                _ => cur.push(c),
            }
        }
        if quoted {
            return Err(Error::Parse {
                line: 0,
                msg: "unterminated backtick quote".into(),
            });
        }
        tokens.push(cur);
        for token in tokens {
            let token = token.trim();
            if let Some(body) = token.strip_prefix('`').and_then(|t| t.strip_suffix('`')) {
                let w = Word::parse(gog.vertex_alphabet(out.end()), body)?;
                out = out.push_word(&w)?;
            } else {
                let e = gog.edge_by_name(token)?;
                out = out.push_edge(e)?;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for PathWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if !self.head.is_identity() {
            parts.push(format!("`{}`", self.head));
        }
        for (e, g) in &self.tail {
            parts.push(self.gog.edge_name(*e).to_string());
            if !g.is_identity() {
                parts.push(format!("`{g}`"));
            }
        }
        if parts.is_empty() {
            return write!(f, "`1`");
        }
        write!(f, "{}", parts.join(" * "))
    }
}

/// Equality in the fundamental group at `base`.
pub fn pi1_equal(p: &PathWord, q: &PathWord, base: usize) -> Result<bool> {
    for x in [p, q] {
        if x.start() != base || !x.is_loop() {
            return Err(Error::InconsistentPath(format!(
                "not a loop at {}",
                p.gog().vertex_name(base)
            )));
        }
    }
    p.multiply(&q.inverse())?.is_trivial()
}

/// Translation length of a loop on the Bass–Serre tree: the edge count
/// of the Britton-cyclically-reduced form. Zero means elliptic.
pub fn translation_length(p: &PathWord) -> Result<usize> {
    if !p.is_loop() {
        return Err(Error::InconsistentPath("translation length needs a loop".into()));
    }
    let mut cur = p.britton_reduce()?;
    // cyclic wrap-around reduction: rotate the loop and cancel the
    // closing e ... ebar pair while possible
    loop {
        let n = cur.tail.len();
        if n < 2 {
            return Ok(n);
        }
        let (e1, _) = cur.tail[0];
        let (en, ref gn) = cur.tail[n - 1];
        if e1 != cur.gog.reverse(en) {
            return Ok(n);
        }
        let around = gn.multiply(&cur.head)?;
        let k = match around.power_of(cur.gog.edge_image(en))? {
            Some(k) => k,
            None => return Ok(n),
        };
        // rotated loop g1 e2 ... e_{n-1} (g_{n-1} . alpha_ebar(z^k))
        let contribution = cur.gog.edge_image(cur.gog.reverse(en)).pow(k);
        let mut next = PathWord {
            gog: cur.gog.clone(),
            start: cur.gog.tau(e1),
            head: cur.tail[0].1.clone(),
            tail: cur.tail[1..n - 1].to_vec(),
        };
        match next.tail.last_mut() {
            Some((_, g)) => *g = g.multiply(&contribution)?,
            None => next.head = next.head.multiply(&contribution)?,
        }
        cur = next.britton_reduce()?;
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use proptest::prelude::*;

    /// The three-vertex, two-edge graph of groups of the worked example:
    /// u(a,b) --e_u-- v(g,gamma) --e_w-- w(alpha,beta), with the edge
    /// groups embedding as <a*b> / <g> and <alpha*beta> / <gamma>.
    pub(crate) fn figure_gog() -> GraphOfGroups {
        let fu = Alphabet::new(["a", "b"]).unwrap();
        let fv = Alphabet::new(["g", "gamma"]).unwrap();
        let fw = Alphabet::new(["alpha", "beta"]).unwrap();
        GraphOfGroups::new(
            vec![
                ("u".into(), fu.clone()),
                ("v".into(), fv.clone()),
                ("w".into(), fw.clone()),
            ],
            vec![
                EdgeSpec {
                    name: "e_u".into(),
                    from: "u".into(),
                    to: "v".into(),
                    image_at_source: Word::parse(&fu, "a*b").unwrap(),
                    image_at_target: Word::parse(&fv, "g").unwrap(),
                },
                EdgeSpec {
                    name: "e_w".into(),
                    from: "w".into(),
                    to: "v".into(),
                    image_at_source: Word::parse(&fw, "alpha*beta").unwrap(),
                    image_at_target: Word::parse(&fv, "gamma").unwrap(),
                },
            ],
            false,
        )
        .unwrap()
    }

    fn path(gog: &GraphOfGroups, start: &str, text: &str) -> PathWord {
        PathWord::parse(gog, gog.vertex_by_name(start).unwrap(), text).unwrap()
    }

    #[test]
    fn builder_validates() {
        let gog = figure_gog();
        assert_eq!(gog.vertex_count(), 3);
        assert_eq!(gog.geometric_edge_count(), 2);
        assert!(gog.is_efficient());
        let e = gog.edge_by_name("e_u").unwrap();
        assert_eq!(gog.vertex_name(gog.iota(e)), "u");
        assert_eq!(gog.vertex_name(gog.tau(e)), "v");
        assert_eq!(gog.edge_image(e).to_string(), "g");
        assert_eq!(gog.edge_image(gog.reverse(e)).to_string(), "a*b");
        assert_eq!(gog.edge_name(gog.reverse(e)), "~e_u");
    }

    #[test]
    fn builder_rejects_proper_power_images() {
        let fu = Alphabet::new(["a"]).unwrap();
        let fv = Alphabet::new(["c", "d"]).unwrap();
        let spec = EdgeSpec {
            name: "e".into(),
            from: "u".into(),
            to: "v".into(),
            image_at_source: Word::parse(&fu, "a").unwrap(),
            image_at_target: Word::parse(&fv, "c^2").unwrap(),
        };
        let verts = vec![("u".to_string(), fu.clone()), ("v".to_string(), fv.clone())];
        assert!(GraphOfGroups::new(verts.clone(), vec![spec.clone()], false).is_err());
        let gog = GraphOfGroups::new(verts, vec![spec], true).unwrap();
        assert!(!gog.is_efficient());
    }

    #[test]
    fn builder_rejects_disconnected() {
        let fu = Alphabet::new(["a"]).unwrap();
        let fv = Alphabet::new(["c"]).unwrap();
        assert!(GraphOfGroups::new(
            vec![("u".into(), fu), ("v".into(), fv)],
            vec![],
            false
        )
        .is_err());
    }

    #[test]
    fn britton_examples() {
        let gog = figure_gog();
        // e_u . eps . ~e_u collapses (k = 0)
        let p = path(&gog, "u", "e_u * ~e_u");
        assert!(p.is_trivial().unwrap());

        // ~e_u . (a b) . e_u rewrites to the single vertex element g
        let p = path(&gog, "v", "~e_u * `a*b` * e_u");
        let r = p.britton_reduce().unwrap();
        assert_eq!(r.edge_len(), 0);
        assert_eq!(r.to_string(), "`g`");

        // ~e_u . a . e_u is already Britton-reduced (a not in <ab>)
        let p = path(&gog, "v", "~e_u * `a` * e_u");
        let r = p.britton_reduce().unwrap();
        assert_eq!(r, p);
    }

    #[test]
    fn parse_print_round_trip() {
        let gog = figure_gog();
        for text in ["`1`", "`g*gamma^-1`", "~e_u * `a` * e_u", "~e_u * `a*b^2` * e_u * ~e_w * `alpha` * e_w"] {
            let p = path(&gog, "v", text);
            assert_eq!(p.to_string(), text);
        }
    }

    #[test]
    fn inconsistent_paths_are_rejected() {
        let gog = figure_gog();
        assert!(PathWord::parse(&gog, gog.vertex_by_name("v").unwrap(), "e_u").is_err());
        assert!(PathWord::parse(&gog, gog.vertex_by_name("u").unwrap(), "e_u * e_u").is_err());
    }

    #[test]
    fn pi1_equal_examples() {
        let gog = figure_gog();
        let v = gog.vertex_by_name("v").unwrap();
        let p = path(&gog, "v", "~e_u * `a` * e_u");
        assert!(pi1_equal(&p, &p, v).unwrap());

        let lhs = path(&gog, "v", "~e_u * `a` * e_u * ~e_u * `b` * e_u");
        let rhs = path(&gog, "v", "~e_u * `a*b` * e_u");
        assert!(pi1_equal(&lhs, &rhs, v).unwrap());

        let other = path(&gog, "v", "~e_w * `alpha` * e_w");
        assert!(!pi1_equal(&p, &other, v).unwrap());
    }

    #[test]
    fn translation_length_examples() {
        let gog = figure_gog();
        // vertex elements are elliptic
        let p = path(&gog, "u", "`a*b^-1`");
        assert_eq!(translation_length(&p).unwrap(), 0);
        // conjugate into G_u: still elliptic
        let p = path(&gog, "v", "~e_u * `a` * e_u");
        assert_eq!(translation_length(&p).unwrap(), 0);
        // hyperbolic mixed loop
        let p = path(&gog, "v", "~e_u * `a` * e_u * ~e_w * `alpha` * e_w");
        assert_eq!(translation_length(&p).unwrap(), 4);
    }

    pub(crate) fn arb_loop(base_name: &'static str, max_steps: usize) -> impl Strategy<Value = PathWord> {
        let gog = figure_gog();
        let steps = proptest::collection::vec(
            (0usize..gog.edge_count(), proptest::collection::vec((0usize..2, any::<bool>()), 0..3)),
            0..=max_steps,
        );
        steps.prop_map(move |moves| {
            let base = gog.vertex_by_name(base_name).unwrap();
            let mut p = PathWord::identity(&gog, base);
            for (eseed, letters) in moves {
                // walk any edge leaving the current endpoint, preferring
                // the seeded index
                let end = p.end();
                let candidates: Vec<usize> =
                    (0..gog.edge_count()).filter(|&e| gog.iota(e) == end).collect();
                let e = candidates[eseed % candidates.len()];
                p = p.push_edge(e).unwrap();
                let al = gog.vertex_alphabet(p.end()).clone();
                let w = Word::from_letters(
                    &al,
                    letters
                        .into_iter()
                        .map(|(g, i)| crate::word::Letter::new(g % al.rank(), i)),
                );
                p = p.push_word(&w).unwrap();
            }
            // close up along a shortest path back to base (tree walk)
            while p.end() != base {
                let end = p.end();
                let back = (0..gog.edge_count())
                    .find(|&e| gog.iota(e) == end && gog.tau(e) == base)
                    .or_else(|| (0..gog.edge_count()).find(|&e| gog.iota(e) == end))
                    .unwrap();
                p = p.push_edge(back).unwrap();
            }
            p
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn britton_confluent_on_random_orders(p in arb_loop("v", 6), picks in proptest::collection::vec(0usize..8, 0..32)) {
            let canonical = p.britton_reduce().unwrap();
            let mut it = picks.into_iter();
            let other = p.britton_reduce_choosing(|_| it.next().unwrap_or(0)).unwrap();
            let base = p.start();
            prop_assert!(pi1_equal(&canonical, &other, base).unwrap());
            prop_assert_eq!(canonical.edge_len(), other.edge_len());
        }

        #[test]
        fn pi1_equal_is_an_equivalence(p in arb_loop("v", 4), q in arb_loop("v", 4), r in arb_loop("v", 4)) {
            let base = p.start();
            prop_assert!(pi1_equal(&p, &p, base).unwrap());
            prop_assert_eq!(pi1_equal(&p, &q, base).unwrap(), pi1_equal(&q, &p, base).unwrap());
            if pi1_equal(&p, &q, base).unwrap() && pi1_equal(&q, &r, base).unwrap() {
                prop_assert!(pi1_equal(&p, &r, base).unwrap());
            }
        }

        #[test]
        fn translation_length_is_a_conjugacy_invariant(p in arb_loop("v", 5), q in arb_loop("v", 5)) {
            let conj = q.multiply(&p).unwrap().multiply(&q.inverse()).unwrap();
            prop_assert_eq!(translation_length(&p).unwrap(), translation_length(&conj).unwrap());
        }

        #[test]
        fn translation_length_scales_on_powers(p in arb_loop("v", 4), n in 1usize..=3) {
            let reduced = p.britton_reduce().unwrap();
            // restrict to Britton-cyclically-reduced loops
            prop_assume!(translation_length(&reduced).unwrap() == reduced.edge_len());
            let mut pn = PathWord::identity(reduced.gog(), reduced.start());
            for _ in 0..n {
                pn = pn.multiply(&reduced).unwrap();
            }
            prop_assert_eq!(
                translation_length(&pn).unwrap(),
                n * translation_length(&reduced).unwrap()
            );
        }
    }
}
