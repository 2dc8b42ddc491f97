//! Extending a homomorphism from the fundamental group to the whole
//! path group.
//!
//! Given rho on pi_1(G, base), the extension assigns 1 to every maximal
//! tree edge, rho(sigma_iota e sigma_tau^-1) to non-tree edges and
//! rho(sigma_v g sigma_v^-1) to vertex elements, where sigma_v is the
//! unique reduced tree path from the base.

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::gog::PathWord;
use crate::pi1::Pi1Basis;
use crate::word::Word;

/// Target group of an extension: free abelian of a given rank, or free
/// on a named basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    Abelian(usize),
    Free(Alphabet),
}

/// An element of the target group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TargetElem {
    Zk(Vec<i64>),
    Free(Word),
}

impl TargetElem {
    pub fn identity(target: &Target) -> TargetElem {
        match target {
            Target::Abelian(k) => TargetElem::Zk(vec![0; *k]),
            Target::Free(al) => TargetElem::Free(Word::identity(al)),
        }
    }

    pub fn multiply(&self, other: &TargetElem) -> Result<TargetElem> {
        match (self, other) {
            (TargetElem::Zk(a), TargetElem::Zk(b)) if a.len() == b.len() => {
                Ok(TargetElem::Zk(a.iter().zip(b).map(|(x, y)| x + y).collect()))
            }
            (TargetElem::Free(a), TargetElem::Free(b)) => Ok(TargetElem::Free(a.multiply(b)?)),
            _ => Err(Error::Other("target element mismatch".into())),
        }
    }

    pub fn inverse(&self) -> TargetElem {
        match self {
            TargetElem::Zk(a) => TargetElem::Zk(a.iter().map(|x| -x).collect()),
            TargetElem::Free(w) => TargetElem::Free(w.inverse()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            TargetElem::Zk(a) => a.iter().all(|&x| x == 0),
            TargetElem::Free(w) => w.is_identity(),
        }
    }

    fn matches(&self, target: &Target) -> bool {
        match (self, target) {
            (TargetElem::Zk(a), Target::Abelian(k)) => a.len() == *k,
            (TargetElem::Free(w), Target::Free(al)) => w.alphabet() == al,
            _ => false,
        }
    }
}

/// The extension rho-hat, tabulated on every vertex generator and every
/// directed edge.
pub struct ExtendedHom<'a> {
    basis: &'a Pi1Basis,
    target: Target,
    /// rho on the pi_1 basis generators.
    images: Vec<TargetElem>,
    /// rho-hat per vertex, per vertex-group generator.
    vertex_images: Vec<Vec<TargetElem>>,
    /// rho-hat per directed edge.
    edge_images: Vec<TargetElem>,
}

/// Pushes a basis word through the generator images.
fn rho_word(w: &Word, target: &Target, images: &[TargetElem]) -> Result<TargetElem> {
    let mut out = TargetElem::identity(target);
    for l in w.letters() {
        let img = &images[l.gen as usize];
        let img = if l.inv { img.inverse() } else { img.clone() };
        out = out.multiply(&img)?;
    }
    Ok(out)
}

pub fn extend_homomorphism<'a>(
    basis: &'a Pi1Basis,
    target: Target,
    images: Vec<TargetElem>,
) -> Result<ExtendedHom<'a>> {
    if images.len() != basis.alphabet().rank() {
        return Err(Error::Other(format!(
            "expected {} generator images, got {}",
            basis.alphabet().rank(),
            images.len()
        )));
    }
    for img in &images {
        if !img.matches(&target) {
            return Err(Error::Other("generator image not in the target group".into()));
        }
    }
    let gog = basis.gog();
    let rho_loop = |p: &PathWord| -> Result<TargetElem> {
        rho_word(&basis.loop_to_word(p)?, &target, &images)
    };
    let mut vertex_images = Vec::new();
    for v in 0..gog.vertex_count() {
        let sigma = basis.sigma(v)?;
        let mut per_gen = Vec::new();
        for i in 0..gog.vertex_alphabet(v).rank() {
            let x = Word::generator(gog.vertex_alphabet(v), i);
            let loop_v = sigma.push_word(&x)?.multiply(&sigma.inverse())?;
            per_gen.push(rho_loop(&loop_v)?);
        }
        vertex_images.push(per_gen);
    }
    let mut edge_images = Vec::new();
    for e in 0..gog.edge_count() {
        let sigma_i = basis.sigma(gog.iota(e))?;
        let sigma_t = basis.sigma(gog.tau(e))?;
        let loop_e = sigma_i.push_edge(e)?.multiply(&sigma_t.inverse())?;
        edge_images.push(rho_loop(&loop_e)?);
    }
    Ok(ExtendedHom {
        basis,
        target,
        images,
        vertex_images,
        edge_images,
    })
}

impl ExtendedHom<'_> {
    pub fn target(&self) -> &Target {
        &self.target
    }

    /// rho-hat of a vertex-group element.
    pub fn apply_vertex_word(&self, vertex: usize, w: &Word) -> Result<TargetElem> {
        self.basis
            .gog()
            .vertex_alphabet(vertex)
            .check_same(w.alphabet())?;
        let mut out = TargetElem::identity(&self.target);
        for l in w.letters() {
            let img = &self.vertex_images[vertex][l.gen as usize];
            let img = if l.inv { img.inverse() } else { img.clone() };
            out = out.multiply(&img)?;
        }
        Ok(out)
    }

    /// rho-hat of a directed edge.
    pub fn apply_edge(&self, e: usize) -> &TargetElem {
        &self.edge_images[e]
    }

    /// rho-hat of an arbitrary path-group element.
    pub fn apply_path(&self, p: &PathWord) -> Result<TargetElem> {
        self.basis.gog().check_same(p.gog())?;
        let (head, items) = p.parts();
        let mut out = self.apply_vertex_word(p.start(), head)?;
        for (e, g) in items {
            out = out.multiply(self.apply_edge(*e))?;
            out = out.multiply(&self.apply_vertex_word(self.basis.gog().tau(*e), g)?)?;
        }
        Ok(out)
    }

    /// rho-hat of a pi_1 basis generator (must reproduce rho).
    pub fn restriction_to_pi1(&self, gen: usize) -> Result<TargetElem> {
        self.apply_path(self.basis.basis_loop(gen))
    }

    /// Do all edge relations map to the target identity?
    pub fn edge_relations_hold(&self) -> Result<bool> {
        let gog = self.basis.gog();
        for e in 0..gog.edge_count() {
            // rho-hat(e) rho-hat(alpha_e(z)) rho-hat(ebar) = rho-hat(alpha_ebar(z))
            let lhs = self
                .apply_edge(e)
                .multiply(&self.apply_vertex_word(gog.tau(e), gog.edge_image(e))?)?
                .multiply(self.apply_edge(gog.reverse(e)))?;
            let rhs = self.apply_vertex_word(gog.iota(e), gog.edge_image(gog.reverse(e)))?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Tree edges map to the identity, and the restriction to pi_1
    /// reproduces rho exactly (the commuting triangle).
    pub fn commuting_triangle_holds(&self) -> Result<bool> {
        for (i, img) in self.images.iter().enumerate() {
            if self.restriction_to_pi1(i)? != *img {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gog::tests::figure_gog;

    fn setup() -> (crate::gog::GraphOfGroups, Pi1Basis) {
        let gog = figure_gog();
        let base = gog.vertex_by_name("v").unwrap();
        let basis = Pi1Basis::new(&gog, base).unwrap();
        (gog, basis)
    }

    #[test]
    fn abelian_extension_on_the_example() {
        let (gog, basis) = setup();
        // rho = exponent sum of a and alpha
        let images = vec![
            TargetElem::Zk(vec![1]),
            TargetElem::Zk(vec![0]),
            TargetElem::Zk(vec![1]),
            TargetElem::Zk(vec![0]),
        ];
        let ext = extend_homomorphism(&basis, Target::Abelian(1), images).unwrap();
        // tree edges map to the identity
        for e in 0..gog.edge_count() {
            assert!(ext.apply_edge(e).is_identity());
        }
        let u = gog.vertex_by_name("u").unwrap();
        let v = gog.vertex_by_name("v").unwrap();
        let a = Word::generator(gog.vertex_alphabet(u), 0);
        assert_eq!(ext.apply_vertex_word(u, &a).unwrap(), TargetElem::Zk(vec![1]));
        // g in G_v is identified with sigma_u (ab) sigma_u^-1, exponent 1
        let g = Word::generator(gog.vertex_alphabet(v), 0);
        assert_eq!(ext.apply_vertex_word(v, &g).unwrap(), TargetElem::Zk(vec![1]));
        assert!(ext.edge_relations_hold().unwrap());
        assert!(ext.commuting_triangle_holds().unwrap());
    }

    #[test]
    fn free_target_extension() {
        let (_, basis) = setup();
        let t = Alphabet::new(["x", "y"]).unwrap();
        let images = vec![
            TargetElem::Free(Word::parse(&t, "x").unwrap()),
            TargetElem::Free(Word::parse(&t, "y").unwrap()),
            TargetElem::Free(Word::parse(&t, "y*x^-1").unwrap()),
            TargetElem::Free(Word::parse(&t, "1").unwrap()),
        ];
        let ext = extend_homomorphism(&basis, Target::Free(t), images).unwrap();
        assert!(ext.edge_relations_hold().unwrap());
        assert!(ext.commuting_triangle_holds().unwrap());
    }

    #[test]
    fn shape_errors() {
        let (_, basis) = setup();
        assert!(extend_homomorphism(&basis, Target::Abelian(1), vec![]).is_err());
        let bad = vec![
            TargetElem::Zk(vec![1, 0]),
            TargetElem::Zk(vec![0]),
            TargetElem::Zk(vec![0]),
            TargetElem::Zk(vec![0]),
        ];
        assert!(extend_homomorphism(&basis, Target::Abelian(1), bad).is_err());
    }
}
