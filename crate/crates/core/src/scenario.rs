//! Scenario files: a line-oriented description of a graph of groups
//! together with named free-group and graph-of-groups automorphisms,
//! plus the built-in worked example (two rank-2 vertex groups amalgamated
//! over cyclic subgroups into a central rank-2 vertex group).
//!
//! Grammar (one statement per line, `#` starts a comment):
//!
//! ```text
//! vertex <name> : <gen,gen,...>
//! edge <name> : <vertex> -> <vertex> ; z -> <word at source> | <word at target>
//! base <vertex>
//! aut <name>            # body: `x -> word` lines and an `inverse:` block
//! ...
//! end
//! gogaut <name>         # body: map / iso / isoinv / sign / delta / twist lines
//! map <vertex> -> <vertex>
//! iso <vertex> : x -> word, y -> word
//! isoinv <vertex> : x -> word, y -> word
//! sign <edge> = -1
//! delta <edge> = <word>
//! twist <edge> = <integer>
//! end
//! twist <name> : <edge> = <integer>, <edge> = <integer>, ...
//! expect <check> = pass|fail
//! ```
//!
//! In a `gogaut` block, `iso` gives the forward generator images of the
//! vertex isomorphism (in the target vertex's generators) and `isoinv`
//! the backward images; vertices without an `iso` line get the identity.
//! `delta <edge>` is a word in the group at the image of the edge's
//! terminal vertex. `twist <edge> = n` is shorthand for
//! `delta <edge> = (edge image)^n`.

use crate::alphabet::Alphabet;
use crate::aut::{FreeAut, FreeHom, FreeIso};
use crate::error::{Error, Result};
use crate::gog::{EdgeSpec, GraphOfGroups};
use crate::gogaut::{DehnTwistData, GoGAut};
use crate::word::Word;

/// A parsed scenario: the graph of groups and its named automorphisms.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub gog: GraphOfGroups,
    pub base: usize,
    pub auts: Vec<(String, FreeAut)>,
    pub gogauts: Vec<(String, GoGAut)>,
    pub twists: Vec<(String, DehnTwistData)>,
    /// Expected outcome per check name: true = pass, false = fail.
    pub expects: Vec<(String, bool)>,
}

impl Scenario {
    pub fn aut(&self, name: &str) -> Result<&FreeAut> {
        self.auts
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, a)| a)
            .ok_or_else(|| Error::UnknownName(name.into()))
    }

    pub fn gogaut(&self, name: &str) -> Result<&GoGAut> {
        self.gogauts
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, a)| a)
            .ok_or_else(|| Error::UnknownName(name.into()))
    }

    pub fn twist(&self, name: &str) -> Result<&DehnTwistData> {
        self.twists
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, d)| d)
            .ok_or_else(|| Error::UnknownName(name.into()))
    }

    pub fn parse(text: &str) -> Result<Scenario> {
        Parser::new(text).run()
    }
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

struct Parser<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

/// Raw `gogaut` block statements, resolved once the graph exists.
#[derive(Default)]
struct GogAutBlock {
    maps: Vec<(String, String)>,
    isos: Vec<(String, Vec<(String, String)>)>,
    isoinvs: Vec<(String, Vec<(String, String)>)>,
    signs: Vec<(String, i8)>,
    deltas: Vec<(String, String)>,
    twists: Vec<(String, i64)>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Parser<'a> {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| {
                let l = l.split('#').next().unwrap_or("").trim();
                (i + 1, l)
            })
            .filter(|(_, l)| !l.is_empty())
            .collect();
        Parser { lines, pos: 0 }
    }

    fn run(mut self) -> Result<Scenario> {
        let mut vertices: Vec<(String, Alphabet)> = Vec::new();
        let mut edge_specs: Vec<(usize, String, String, String, String, String)> = Vec::new();
        let mut base_name: Option<String> = None;
        let mut aut_blocks: Vec<(usize, String, String)> = Vec::new();
        let mut gogaut_blocks: Vec<(usize, String, GogAutBlock)> = Vec::new();
        let mut twist_lines: Vec<(usize, String, String)> = Vec::new();
        let mut expects: Vec<(String, bool)> = Vec::new();

        while self.pos < self.lines.len() {
            let (lineno, line) = self.lines[self.pos];
            self.pos += 1;
            let (keyword, rest) = match line.split_once(' ') {
                Some((k, r)) => (k, r.trim()),
                None => (line, ""),
            };
            match keyword {
                "vertex" => {
                    let (name, gens) = rest
                        .split_once(':')
                        .ok_or_else(|| perr(lineno, "expected `vertex <name> : <gens>`"))?;
                    let alphabet =
                        Alphabet::new(gens.split(',').map(|g| g.trim())).map_err(|e| {
                            perr(lineno, format!("bad generator list: {e}"))
                        })?;
                    vertices.push((name.trim().to_string(), alphabet));
                }
                "edge" => {
                    // edge <name> : <v> -> <v> ; z -> <word> | <word>
                    let (name, rest) = rest
                        .split_once(':')
                        .ok_or_else(|| perr(lineno, "expected `edge <name> : ...`"))?;
                    let (ends, images) = rest
                        .split_once(';')
                        .ok_or_else(|| perr(lineno, "expected `; z -> ... | ...`"))?;
                    let (from, to) = ends
                        .split_once("->")
                        .ok_or_else(|| perr(lineno, "expected `<vertex> -> <vertex>`"))?;
                    let images = images
                        .trim()
                        .strip_prefix("z")
                        .and_then(|s| s.trim_start().strip_prefix("->"))
                        .ok_or_else(|| perr(lineno, "expected `z -> <word> | <word>`"))?;
                    let (src, tgt) = images
                        .split_once('|')
                        .ok_or_else(|| perr(lineno, "expected `<word at source> | <word at target>`"))?;
                    edge_specs.push((
                        lineno,
                        name.trim().to_string(),
                        from.trim().to_string(),
                        to.trim().to_string(),
                        src.trim().to_string(),
                        tgt.trim().to_string(),
                    ));
                }
                "base" => base_name = Some(rest.to_string()),
                "aut" => {
                    let body = self.take_block(lineno)?;
                    aut_blocks.push((lineno, rest.to_string(), body.join("\n")));
                }
                "gogaut" => {
                    let body = self.take_block(lineno)?;
                    let block = parse_gogaut_block(lineno, &body)?;
                    gogaut_blocks.push((lineno, rest.to_string(), block));
                }
                "twist" => {
                    let (name, assigns) = rest
                        .split_once(':')
                        .ok_or_else(|| perr(lineno, "expected `twist <name> : <edge> = <n>, ...`"))?;
                    twist_lines.push((lineno, name.trim().to_string(), assigns.to_string()));
                }
                "expect" => {
                    let (name, outcome) = rest
                        .split_once('=')
                        .ok_or_else(|| perr(lineno, "expected `expect <check> = pass|fail`"))?;
                    let want = match outcome.trim() {
                        "pass" => true,
                        "fail" => false,
                        other => return Err(perr(lineno, format!("expected pass|fail, got `{other}`"))),
                    };
                    expects.push((name.trim().to_string(), want));
                }
                other => return Err(perr(lineno, format!("unknown keyword `{other}`"))),
            }
        }

        let alphabet_of = |name: &str| -> Result<&Alphabet> {
            vertices
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, a)| a)
                .ok_or_else(|| Error::UnknownName(name.into()))
        };
        let mut specs = Vec::new();
        for (lineno, name, from, to, src, tgt) in &edge_specs {
            let src_al = alphabet_of(from).map_err(|e| perr(*lineno, e.to_string()))?;
            let tgt_al = alphabet_of(to).map_err(|e| perr(*lineno, e.to_string()))?;
            specs.push(EdgeSpec {
                name: name.clone(),
                from: from.clone(),
                to: to.clone(),
                image_at_source: Word::parse(src_al, src).map_err(|e| perr(*lineno, e.to_string()))?,
                image_at_target: Word::parse(tgt_al, tgt).map_err(|e| perr(*lineno, e.to_string()))?,
            });
        }
        let gog = GraphOfGroups::new(vertices, specs, false)?;
        let base = match &base_name {
            Some(n) => gog.vertex_by_name(n)?,
            None => 0,
        };

        let mut auts = Vec::new();
        for (lineno, name, body) in aut_blocks {
            let aut = FreeAut::parse(&body).map_err(|e| perr(lineno, e.to_string()))?;
            auts.push((name, aut));
        }
        let mut gogauts = Vec::new();
        for (lineno, name, block) in gogaut_blocks {
            let a = resolve_gogaut(&gog, &block).map_err(|e| perr(lineno, e.to_string()))?;
            gogauts.push((name, a));
        }
        let mut twists = Vec::new();
        for (lineno, name, assigns) in twist_lines {
            let mut exps = vec![0i64; gog.geometric_edge_count()];
            for item in assigns.split(',') {
                let (edge, n) = item
                    .split_once('=')
                    .ok_or_else(|| perr(lineno, "expected `<edge> = <integer>`"))?;
                let e = gog.edge_by_name(edge.trim())?;
                let n: i64 = n
                    .trim()
                    .parse()
                    .map_err(|_| perr(lineno, format!("bad integer `{}`", n.trim())))?;
                exps[e / 2] = if e % 2 == 0 { n } else { -n };
            }
            twists.push((name, DehnTwistData::new(&gog, exps)?));
        }

        Ok(Scenario {
            gog,
            base,
            auts,
            gogauts,
            twists,
            expects,
        })
    }

    /// Collects lines until the matching `end`.
    fn take_block(&mut self, start: usize) -> Result<Vec<&'a str>> {
        let mut body = Vec::new();
        loop {
            if self.pos >= self.lines.len() {
                return Err(perr(start, "unterminated block (missing `end`)"));
            }
            let (_, line) = self.lines[self.pos];
            self.pos += 1;
            if line == "end" {
                return Ok(body);
            }
            body.push(line);
        }
    }
}

fn parse_images(lineno: usize, text: &str) -> Result<Vec<(String, String)>> {
    text.split(',')
        .map(|item| {
            let (gen, img) = item
                .split_once("->")
                .ok_or_else(|| perr(lineno, format!("expected `x -> word`, got `{item}`")))?;
            Ok((gen.trim().to_string(), img.trim().to_string()))
        })
        .collect()
}

fn parse_gogaut_block(start: usize, body: &[&str]) -> Result<GogAutBlock> {
    let mut block = GogAutBlock::default();
    for line in body {
        let (keyword, rest) = line
            .split_once(' ')
            .ok_or_else(|| perr(start, format!("bad statement `{line}`")))?;
        let rest = rest.trim();
        match keyword {
            "map" => {
                let (from, to) = rest
                    .split_once("->")
                    .ok_or_else(|| perr(start, "expected `map <vertex> -> <vertex>`"))?;
                block
                    .maps
                    .push((from.trim().to_string(), to.trim().to_string()));
            }
            "iso" | "isoinv" => {
                let (vertex, images) = rest
                    .split_once(':')
                    .ok_or_else(|| perr(start, format!("expected `{keyword} <vertex> : ...`")))?;
                let entry = (vertex.trim().to_string(), parse_images(start, images)?);
                if keyword == "iso" {
                    block.isos.push(entry);
                } else {
                    block.isoinvs.push(entry);
                }
            }
            "sign" => {
                let (edge, s) = rest
                    .split_once('=')
                    .ok_or_else(|| perr(start, "expected `sign <edge> = 1|-1`"))?;
                let s: i8 = s
                    .trim()
                    .parse()
                    .map_err(|_| perr(start, format!("bad sign `{}`", s.trim())))?;
                block.signs.push((edge.trim().to_string(), s));
            }
            "delta" => {
                let (edge, w) = rest
                    .split_once('=')
                    .ok_or_else(|| perr(start, "expected `delta <edge> = <word>`"))?;
                block
                    .deltas
                    .push((edge.trim().to_string(), w.trim().to_string()));
            }
            "twist" => {
                let (edge, n) = rest
                    .split_once('=')
                    .ok_or_else(|| perr(start, "expected `twist <edge> = <integer>`"))?;
                let n: i64 = n
                    .trim()
                    .parse()
                    .map_err(|_| perr(start, format!("bad integer `{}`", n.trim())))?;
                block.twists.push((edge.trim().to_string(), n));
            }
            other => return Err(perr(start, format!("unknown gogaut statement `{other}`"))),
        }
    }
    Ok(block)
}

fn resolve_gogaut(gog: &GraphOfGroups, block: &GogAutBlock) -> Result<GoGAut> {
    let nv = gog.vertex_count();
    let ne = gog.edge_count();
    let mut vertex_map: Vec<usize> = (0..nv).collect();
    for (from, to) in &block.maps {
        vertex_map[gog.vertex_by_name(from)?] = gog.vertex_by_name(to)?;
    }
    // the edge map is forced: a graph map on these graphs is determined by
    // the vertex permutation together with matching endpoints; pick, for
    // each edge, the unique edge between the image vertices (ambiguity is
    // an error the user resolves by renaming)
    let mut edge_map = vec![usize::MAX; ne];
    for e in 0..ne {
        let (fi, ft) = (vertex_map[gog.iota(e)], vertex_map[gog.tau(e)]);
        let candidates: Vec<usize> = (0..ne)
            .filter(|&x| gog.iota(x) == fi && gog.tau(x) == ft)
            .collect();
        match candidates.as_slice() {
            [x] => edge_map[e] = *x,
            [] => {
                return Err(Error::InvalidGogAut(format!(
                    "no edge from {} to {} to carry {}",
                    gog.vertex_name(fi),
                    gog.vertex_name(ft),
                    gog.edge_name(e)
                )))
            }
            _ => {
                return Err(Error::InvalidGogAut(format!(
                    "ambiguous image for edge {} (parallel edges)",
                    gog.edge_name(e)
                )))
            }
        }
    }
    let mut vertex_isos: Vec<Option<FreeIso>> = vec![None; nv];
    for (vname, images) in &block.isos {
        let v = gog.vertex_by_name(vname)?;
        let dom = gog.vertex_alphabet(v);
        let cod = gog.vertex_alphabet(vertex_map[v]);
        let mut fwd = Vec::new();
        for i in 0..dom.rank() {
            let img = images
                .iter()
                .find(|(g, _)| g == dom.name(i))
                .ok_or_else(|| Error::UnknownName(format!("missing image for {}", dom.name(i))))?;
            fwd.push(Word::parse(cod, &img.1)?);
        }
        let forward = FreeHom::new(dom, cod, fwd)?;
        let backward = match block.isoinvs.iter().find(|(n, _)| n == vname) {
            Some((_, inv_images)) => {
                let mut bwd = Vec::new();
                for i in 0..cod.rank() {
                    let img = inv_images
                        .iter()
                        .find(|(g, _)| g == cod.name(i))
                        .ok_or_else(|| {
                            Error::UnknownName(format!("missing inverse image for {}", cod.name(i)))
                        })?;
                    bwd.push(Word::parse(dom, &img.1)?);
                }
                FreeHom::new(cod, dom, bwd)?
            }
            None => {
                return Err(Error::InvalidGogAut(format!(
                    "iso at {vname} needs a matching isoinv line"
                )))
            }
        };
        vertex_isos[v] = Some(FreeIso::new(forward, backward)?);
    }
    let vertex_isos: Vec<FreeIso> = (0..nv)
        .map(|v| match &vertex_isos[v] {
            Some(i) => Ok(i.clone()),
            None if vertex_map[v] == v => Ok(FreeIso::identity(gog.vertex_alphabet(v))),
            None => Err(Error::InvalidGogAut(format!(
                "vertex {} moves but has no iso",
                gog.vertex_name(v)
            ))),
        })
        .collect::<Result<Vec<_>>>()?;
    let mut edge_signs = vec![1i8; ne];
    for (edge, s) in &block.signs {
        let e = gog.edge_by_name(edge)?;
        edge_signs[e] = *s;
        edge_signs[gog.reverse(e)] = *s;
    }
    let mut deltas: Vec<Word> = (0..ne)
        .map(|e| Word::identity(gog.vertex_alphabet(vertex_map[gog.tau(e)])))
        .collect();
    for (edge, text) in &block.deltas {
        let e = gog.edge_by_name(edge)?;
        deltas[e] = Word::parse(gog.vertex_alphabet(vertex_map[gog.tau(e)]), text)?;
    }
    for (edge, n) in &block.twists {
        let e = gog.edge_by_name(edge)?;
        if vertex_map[gog.tau(e)] != gog.tau(e) {
            return Err(Error::InvalidGogAut(
                "twist shorthand needs a trivial graph map at the edge".into(),
            ));
        }
        deltas[e] = gog.edge_image(e).pow(*n);
    }
    GoGAut::new(gog, vertex_map, edge_map, vertex_isos, edge_signs, deltas)
}

// ---------------------------------------------------------------------------
// Built-in corpus: the amalgam of F(a,b) and F(alpha,beta) over the cyclic
// subgroups <g> and <gamma> of the central vertex group F(g,gamma).
// ---------------------------------------------------------------------------

/// The built-in example, parameterised by the gluing word g in F(a,b).
#[derive(Clone, Debug)]
pub struct Section4 {
    pub gog: GraphOfGroups,
    /// Base vertex: the central vertex v.
    pub base: usize,
    /// g as a word in F(a,b).
    pub g_word: Word,
    /// phi on the fundamental-group basis F(a,b,alpha,beta).
    pub phi: FreeAut,
    /// The order-two symmetry swapping the outer vertices; induces phi.
    pub r: GoGAut,
    /// psi_u fixing g on F(a,b) and its mirror psi_w fixing gamma — only
    /// available for the default g = a*b (a hand-constructed fixer).
    pub psi_u: Option<FreeAut>,
    pub psi_w: Option<FreeAut>,
}

pub const DEFAULT_G: &str = "a*b";

/// Spells a word of F(a,b) in another rank-2 alphabet, generator by
/// generator.
pub(crate) fn respell(w: &Word, target: &Alphabet) -> Word {
    Word::from_letters(target, w.letters().iter().copied())
}

impl Section4 {
    pub fn new(g_text: &str) -> Result<Section4> {
        let fu = Alphabet::new(["a", "b"])?;
        let fv = Alphabet::new(["g", "gamma"])?;
        let fw = Alphabet::new(["alpha", "beta"])?;
        let g_word = Word::parse(&fu, g_text)?;
        if g_word.is_empty() {
            return Err(Error::EmptyWord("gluing word g"));
        }
        if g_word.is_proper_power()?.is_some() {
            return Err(Error::ProperPowerFamily(g_word.to_string()));
        }
        let gamma_word = respell(&g_word, &fw);
        let gog = GraphOfGroups::new(
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
                    image_at_source: g_word.clone(),
                    image_at_target: Word::parse(&fv, "g")?,
                },
                EdgeSpec {
                    name: "e_w".into(),
                    from: "w".into(),
                    to: "v".into(),
                    image_at_source: gamma_word.clone(),
                    image_at_target: Word::parse(&fv, "gamma")?,
                },
            ],
            false,
        )?;
        let base = gog.vertex_by_name("v")?;

        // phi on the basis [a, b, alpha, beta]:
        //   a -> alpha, b -> beta, alpha -> a^g, beta -> b^g
        // with inverse a -> alpha^(gamma^-1), b -> beta^(gamma^-1),
        // alpha -> a, beta -> b (valid for every non-proper-power g).
        let basis_al = Alphabet::new(["a", "b", "alpha", "beta"])?;
        let g_basis = respell_shift(&g_word, &basis_al, 0);
        let gamma_basis = respell_shift(&g_word, &basis_al, 2);
        let phi = FreeAut::new(
            &basis_al,
            vec![
                Word::generator(&basis_al, 2),
                Word::generator(&basis_al, 3),
                Word::generator(&basis_al, 0).conjugate(&g_basis)?,
                Word::generator(&basis_al, 1).conjugate(&g_basis)?,
            ],
            vec![
                Word::generator(&basis_al, 2).conjugate(&gamma_basis.inverse())?,
                Word::generator(&basis_al, 3).conjugate(&gamma_basis.inverse())?,
                Word::generator(&basis_al, 0),
                Word::generator(&basis_al, 1),
            ],
        )?;

        let r = build_r(&gog, &g_word)?;

        // A nontrivial automorphism of F(a,b) fixing a*b exactly:
        //   a -> b^-1, b -> b*a*b  (then (a*b) -> b^-1*b*a*b = a*b).
        let (psi_u, psi_w) = if g_word == Word::parse(&fu, DEFAULT_G)? {
            let psi_u = FreeAut::new(
                &fu,
                vec![Word::parse(&fu, "b^-1")?, Word::parse(&fu, "b*a*b")?],
                vec![Word::parse(&fu, "a*b*a")?, Word::parse(&fu, "a^-1")?],
            )?;
            let psi_w = FreeAut::new(
                &fw,
                vec![Word::parse(&fw, "beta^-1")?, Word::parse(&fw, "beta*alpha*beta")?],
                vec![Word::parse(&fw, "alpha*beta*alpha")?, Word::parse(&fw, "alpha^-1")?],
            )?;
            (Some(psi_u), Some(psi_w))
        } else {
            (None, None)
        };

        Ok(Section4 {
            gog,
            base,
            g_word,
            phi,
            r,
            psi_u,
            psi_w,
        })
    }

    /// The Dehn twist with exponent `r` on e_u and `s` on e_w.
    pub fn twist(&self, r: i64, s: i64) -> Result<DehnTwistData> {
        DehnTwistData::new(&self.gog, vec![r, s])
    }

    /// The graph-map-trivial automorphism acting by `at_u` on F(a,b) and
    /// `at_w` on F(alpha,beta), with all deltas trivial; both must fix
    /// the respective edge image exactly.
    pub fn vertex_pair_gogaut(
        &self,
        at_u: Option<&FreeAut>,
        at_w: Option<&FreeAut>,
    ) -> Result<GoGAut> {
        let gog = &self.gog;
        let u = gog.vertex_by_name("u")?;
        let v = gog.vertex_by_name("v")?;
        let w = gog.vertex_by_name("w")?;
        let mut vertex_isos = vec![FreeIso::identity(gog.vertex_alphabet(v)); 3];
        vertex_isos[u] = match at_u {
            Some(f) => f.iso().clone(),
            None => FreeIso::identity(gog.vertex_alphabet(u)),
        };
        vertex_isos[v] = FreeIso::identity(gog.vertex_alphabet(v));
        vertex_isos[w] = match at_w {
            Some(f) => f.iso().clone(),
            None => FreeIso::identity(gog.vertex_alphabet(w)),
        };
        let deltas = (0..gog.edge_count())
            .map(|e| Word::identity(gog.vertex_alphabet(gog.tau(e))))
            .collect();
        GoGAut::new(
            gog,
            (0..gog.vertex_count()).collect(),
            (0..gog.edge_count()).collect(),
            vertex_isos,
            vec![1; gog.edge_count()],
            deltas,
        )
    }

    /// The corpus as a Scenario, for the CLI and the check runner.
    pub fn scenario(&self) -> Result<Scenario> {
        let mut gogauts = vec![("R".to_string(), self.r.clone())];
        if let (Some(pu), Some(pw)) = (&self.psi_u, &self.psi_w) {
            gogauts.push(("Psi".into(), self.vertex_pair_gogaut(Some(pu), Some(pw))?));
            gogauts.push(("Psi_half".into(), self.vertex_pair_gogaut(Some(pu), None)?));
        }
        let mut twists = Vec::new();
        for (r, s) in [(1i64, 1i64), (1, 0), (0, 1)] {
            twists.push((format!("D_{r}_{s}"), self.twist(r, s)?));
        }
        Ok(Scenario {
            gog: self.gog.clone(),
            base: self.base,
            auts: vec![("phi".into(), self.phi.clone())],
            gogauts,
            twists,
            expects: Vec::new(),
        })
    }
}

/// Spells a word of F(a,b) in a larger alphabet with the two generators
/// at positions `shift`, `shift + 1`.
pub(crate) fn respell_shift(w: &Word, target: &Alphabet, shift: usize) -> Word {
    Word::from_letters(
        target,
        w.letters()
            .iter()
            .map(|l| crate::word::Letter::new(l.gen as usize + shift, l.inv)),
    )
}

/// The order-two symmetry R: swaps u and w (via the index isomorphism)
/// and exchanges g and gamma at the centre; the single nontrivial delta
/// g^-1 at ~e_w makes the induced basis automorphism exactly phi.
fn build_r(gog: &GraphOfGroups, g_word: &Word) -> Result<GoGAut> {
    let u = gog.vertex_by_name("u")?;
    let v = gog.vertex_by_name("v")?;
    let w = gog.vertex_by_name("w")?;
    let fu = gog.vertex_alphabet(u).clone();
    let fv = gog.vertex_alphabet(v).clone();
    let fw = gog.vertex_alphabet(w).clone();
    let e_u = gog.edge_by_name("e_u")?;
    let e_w = gog.edge_by_name("e_w")?;
    let mut vertex_map = vec![0; 3];
    vertex_map[u] = w;
    vertex_map[v] = v;
    vertex_map[w] = u;
    let mut edge_map = vec![0; 4];
    edge_map[e_u] = e_w;
    edge_map[gog.reverse(e_u)] = gog.reverse(e_w);
    edge_map[e_w] = e_u;
    edge_map[gog.reverse(e_w)] = gog.reverse(e_u);
    let index_iso = |dom: &Alphabet, cod: &Alphabet| -> Result<FreeIso> {
        let fwd = FreeHom::new(dom, cod, (0..dom.rank()).map(|i| Word::generator(cod, i)).collect())?;
        let bwd = FreeHom::new(cod, dom, (0..cod.rank()).map(|i| Word::generator(dom, i)).collect())?;
        FreeIso::new(fwd, bwd)
    };
    let swap_iso = |al: &Alphabet| -> Result<FreeIso> {
        let images = vec![Word::generator(al, 1), Word::generator(al, 0)];
        let f = FreeHom::new(al, al, images.clone())?;
        let b = FreeHom::new(al, al, images)?;
        FreeIso::new(f, b)
    };
    let mut vertex_isos = vec![FreeIso::identity(&fv); 3];
    vertex_isos[u] = index_iso(&fu, &fw)?;
    vertex_isos[v] = swap_iso(&fv)?;
    vertex_isos[w] = index_iso(&fw, &fu)?;
    let mut deltas: Vec<Word> = (0..4)
        .map(|e| Word::identity(gog.vertex_alphabet(vertex_map[gog.tau(e)])))
        .collect();
    deltas[gog.reverse(e_w)] = g_word.inverse();
    GoGAut::new(gog, vertex_map, edge_map, vertex_isos, vec![1; 4], deltas)
}

/// A sketch of the mapping torus of the corpus automorphism: the
/// semidirect product F(a,b,alpha,beta) x| <t> splits as a graph of
/// groups with vertex groups <a,b,t^2> and <g,gamma,t> glued along the
/// edge group <g,t^2>. The edge group has rank two and the stable letter
/// t is shared between vertex groups, so this lies outside the supported
/// shape (free vertex groups on disjoint bases, cyclic edge groups); it
/// is recorded as data only and every compute path refuses it.
pub const MAPPING_TORUS_SKETCH: &str = "\
# mapping torus sketch (data only; not computable in this tool)
# vertex m_u : a, b, t^2
# vertex m_v : g, t^2
# vertex m_w : g, gamma, t
# edge m_e_u : m_u -> m_v ; edge group <g, t^2> (rank 2: not cyclic)
# edge m_e_w : m_w -> m_v ; edge group <g, t^2> (rank 2: not cyclic)
";

/// Always refuses: the mapping-torus splitting needs rank-2 edge groups
/// and shared stable letters, neither of which the data model supports.
pub fn mapping_torus_compute() -> Result<()> {
    Err(Error::UnsupportedVertexGroup(
        "mapping-torus vertex groups share the stable letter t and are glued along the rank-2 \
         subgroup <g, t^2>; only free vertex groups on disjoint bases with infinite cyclic edge \
         groups are supported"
            .into(),
    ))
}
