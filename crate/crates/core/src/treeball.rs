//! A finite ball in the Bass–Serre tree, used as an oracle for the
//! combinatorial translation length.
//!
//! Tree vertices are cosets p G_v represented by Britton-reduced paths
//! from the base with the trailing vertex word dropped and every
//! component canonically minimised modulo the incoming edge subgroup.
//! Vertex groups have infinite index over their edge subgroups, so the
//! ball enumerates only coset representatives up to a component length
//! cap; displacement minima over the ball are therefore upper-bounded
//! observations (every displacement is at least the translation length,
//! with equality whenever the ball contains an axis vertex).

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gog::{GraphOfGroups, PathWord};
use crate::word::{Letter, Word};

const RADIUS_CAP: usize = 6;

/// Shortlex-minimal element of the coset g<z>.
fn minimize_mod(g: &Word, z: &Word) -> Word {
    let bound = (g.len() + z.len() + 4) as i64;
    let mut best = g.clone();
    for j in -bound..=bound {
        let cand = g.multiply(&z.pow(j)).expect("same alphabet");
        if cand.shortlex_cmp(&best) == std::cmp::Ordering::Less {
            best = cand;
        }
    }
    best
}

/// Canonical representative of the coset p G_{end(p)}: Britton-reduce,
/// drop the trailing vertex word, then minimise each component modulo
/// the subgroup that can be pushed across the following edge.
fn canonical_coset(p: &PathWord) -> Result<PathWord> {
    let gog = p.gog().clone();
    let r = p.britton_reduce()?;
    let (head, items) = r.parts();
    let mut components: Vec<Word> = std::iter::once(head.clone())
        .chain(items.iter().map(|(_, g)| g.clone()))
        .collect();
    let edges: Vec<usize> = items.iter().map(|(e, _)| *e).collect();
    let n = edges.len();
    // the last component is absorbed into the coset
    components[n] = Word::identity(components[n].alphabet());
    // component i (before edge i+1, 0-based) is defined modulo right
    // multiplication by alpha_ebar(z) of that edge
    for i in (0..n).rev() {
        let e = edges[i];
        let z = gog.edge_image(gog.reverse(e));
        components[i] = minimize_mod(&components[i], z);
    }
    let mut out = PathWord::vertex_word(&gog, r.start(), components[0].clone())?;
    for i in 0..n {
        out = out.push_edge(edges[i])?.push_word(&components[i + 1])?;
    }
    Ok(out)
}

/// A ball of cosets around the base vertex group.
pub struct TreeBall {
    base: usize,
    radius: usize,
    /// Canonical coset representatives, index 0 is the centre.
    vertices: Vec<PathWord>,
    /// (child, parent) indices; the ball is a tree by construction.
    edges: Vec<(usize, usize)>,
    /// False when the vertex budget truncated the enumeration.
    complete: bool,
}

impl TreeBall {
    /// Breadth-first coset enumeration to the given radius. `element_cap`
    /// bounds the length of the vertex-group element chosen before each
    /// edge traversal; `max_vertices` bounds the total size.
    pub fn build(
        gog: &GraphOfGroups,
        base: usize,
        radius: usize,
        element_cap: usize,
        max_vertices: usize,
    ) -> Result<TreeBall> {
        if radius > RADIUS_CAP {
            return Err(Error::RadiusCap(radius, RADIUS_CAP));
        }
        let mut vertices = vec![canonical_coset(&PathWord::identity(gog, base))?];
        let mut edges = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        index.insert(vertices[0].to_string(), 0);
        let mut frontier = vec![0usize];
        let mut complete = true;
        for _ in 0..radius {
            let mut next = Vec::new();
            for &vi in &frontier {
                let p = vertices[vi].clone();
                let end = p.end();
                for e in 0..gog.edge_count() {
                    if gog.iota(e) != end {
                        continue;
                    }
                    for g in enumerate_words(gog, end, element_cap) {
                        if vertices.len() >= max_vertices {
                            complete = false;
                            break;
                        }
                        let child = canonical_coset(&p.push_word(&g)?.push_edge(e)?)?;
                        // stepping back onto the parent is not a new coset
                        let key = child.to_string();
                        if let Some(&existing) = index.get(&key) {
                            // a previously seen coset reached along a
                            // different branch would contradict treeness,
                            // unless it is simply the parent
                            if existing != vi {
                                continue;
                            }
                            continue;
                        }
                        index.insert(key, vertices.len());
                        edges.push((vertices.len(), vi));
                        next.push(vertices.len());
                        vertices.push(child);
                    }
                }
            }
            frontier = next;
        }
        Ok(TreeBall {
            base,
            radius,
            vertices,
            edges,
            complete,
        })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// The ball is a tree: exactly one parent link per non-centre vertex.
    pub fn is_tree(&self) -> bool {
        self.edges.len() == self.vertices.len() - 1
    }

    pub fn contains(&self, coset: &PathWord) -> Result<bool> {
        let canon = canonical_coset(coset)?;
        Ok(self.vertices.iter().any(|v| *v == canon))
    }

    /// d(x, p.x) for the ball vertex x: the edge length of the reduced
    /// path x^-1 p x.
    pub fn displacement(&self, x: usize, p: &PathWord) -> Result<usize> {
        let q = &self.vertices[x];
        let moved = q.inverse().multiply(p)?.multiply(q)?;
        Ok(moved.britton_reduce()?.edge_len())
    }

    /// Minimal displacement over the ball, with the attaining vertex.
    pub fn min_displacement(&self, p: &PathWord) -> Result<(usize, usize)> {
        if p.start() != self.base || !p.is_loop() {
            return Err(Error::InconsistentPath("oracle needs a loop at the base".into()));
        }
        let mut best = (self.displacement(0, p)?, 0);
        for x in 1..self.vertices.len() {
            let d = self.displacement(x, p)?;
            if d < best.0 {
                best = (d, x);
            }
        }
        Ok(best)
    }
}

/// All reduced words of length at most `cap` at a vertex group.
fn enumerate_words(gog: &GraphOfGroups, v: usize, cap: usize) -> Vec<Word> {
    let al = gog.vertex_alphabet(v).clone();
    let mut out = vec![Word::identity(&al)];
    let mut frontier = vec![Word::identity(&al)];
    for _ in 0..cap {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 0..al.rank() {
                for inv in [false, true] {
                    let ext = w
                        .multiply(&Word::from_letters(&al, [Letter::new(g, inv)]))
                        .expect("same alphabet");
                    if ext.len() > w.len() {
                        next.push(ext);
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gog::tests::figure_gog;
    use crate::gog::translation_length;

    #[test]
    fn radius_zero_is_a_single_vertex() {
        let gog = figure_gog();
        let v = gog.vertex_by_name("v").unwrap();
        let ball = TreeBall::build(&gog, v, 0, 1, 1000).unwrap();
        assert_eq!(ball.vertex_count(), 1);
        assert!(ball.is_tree());
        assert!(ball.is_complete());
    }

    #[test]
    fn radius_one_counts_cosets() {
        let gog = figure_gog();
        let v = gog.vertex_by_name("v").unwrap();
        let ball = TreeBall::build(&gog, v, 1, 1, 10_000).unwrap();
        assert!(ball.is_tree());
        // 1 centre + per edge the distinct cosets g<edge image> with a
        // representative of length <= 1: for <g> inside F(g,gamma) those
        // are 1, gamma, gamma^-1 (g and g^-1 fold into the subgroup),
        // and likewise for <gamma>
        assert_eq!(ball.vertex_count(), 1 + 3 + 3);
    }

    #[test]
    fn oracle_agrees_on_sample_loops() {
        let gog = figure_gog();
        let v = gog.vertex_by_name("v").unwrap();
        let ball = TreeBall::build(&gog, v, 4, 1, 20_000).unwrap();
        for text in [
            "`g*gamma^-1`",
            "~e_u * `a` * e_u",
            "~e_u * `a` * e_u * ~e_w * `alpha` * e_w",
            "~e_w * `beta` * e_w * `g`",
        ] {
            let p = PathWord::parse(&gog, v, text).unwrap();
            let tl = translation_length(&p).unwrap();
            let (min, _) = ball.min_displacement(&p).unwrap();
            assert!(min >= tl);
            if p.britton_reduce().unwrap().edge_len() <= ball.radius() {
                assert_eq!(min, tl, "loop {text}");
            }
        }
    }
}
