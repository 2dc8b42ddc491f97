//! Homomorphisms and automorphisms of free groups.
//!
//! Automorphisms carry an explicit inverse witness, verified at
//! construction; no general inversion machinery is implemented. Words act
//! on the right: `(w)f`, and `compose(f, g)` is "f then g".

use std::fmt;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::word::Word;

/// A homomorphism between free groups, given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeHom {
    domain: Alphabet,
    codomain: Alphabet,
    images: Vec<Word>,
}

impl FreeHom {
    pub fn new(domain: &Alphabet, codomain: &Alphabet, images: Vec<Word>) -> Result<FreeHom> {
        if images.len() != domain.rank() {
            return Err(Error::NotAnAutomorphism(format!(
                "expected {} generator images, got {}",
                domain.rank(),
                images.len()
            )));
        }
        for w in &images {
            codomain.check_same(w.alphabet())?;
        }
        Ok(FreeHom {
            domain: domain.clone(),
            codomain: codomain.clone(),
            images,
        })
    }

    pub fn domain(&self) -> &Alphabet {
        &self.domain
    }

    pub fn codomain(&self) -> &Alphabet {
        &self.codomain
    }

    pub fn image(&self, gen: usize) -> &Word {
        &self.images[gen]
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.domain.check_same(w.alphabet())?;
        let mut out = Word::identity(&self.codomain);
        for l in w.letters() {
            let img = &self.images[l.gen as usize];
            let img = if l.inv { img.inverse() } else { img.clone() };
            out = out.multiply(&img)?;
        }
        Ok(out)
    }

    /// `self` then `g`.
    pub fn compose(&self, g: &FreeHom) -> Result<FreeHom> {
        self.codomain.check_same(&g.domain)?;
        let images = self
            .images
            .iter()
            .map(|w| g.apply(w))
            .collect::<Result<Vec<_>>>()?;
        FreeHom::new(&self.domain, &g.codomain, images)
    }

    fn fixes_generators(&self) -> bool {
        self.domain == self.codomain
            && self
                .images
                .iter()
                .enumerate()
                .all(|(i, w)| *w == Word::generator(&self.domain, i))
    }
}

/// An isomorphism between free groups: a homomorphism plus an inverse
/// witness, both directions verified at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeIso {
    forward: FreeHom,
    backward: FreeHom,
}

impl FreeIso {
    pub fn new(forward: FreeHom, backward: FreeHom) -> Result<FreeIso> {
        forward.codomain.check_same(&backward.domain)?;
        backward.codomain.check_same(&forward.domain)?;
        if !forward.compose(&backward)?.fixes_generators() {
            return Err(Error::NotAnAutomorphism(
                "forward then backward does not fix the generators".into(),
            ));
        }
        if !backward.compose(&forward)?.fixes_generators() {
            return Err(Error::NotAnAutomorphism(
                "backward then forward does not fix the generators".into(),
            ));
        }
        Ok(FreeIso { forward, backward })
    }

    pub fn identity(alphabet: &Alphabet) -> FreeIso {
        let images: Vec<Word> = (0..alphabet.rank())
            .map(|i| Word::generator(alphabet, i))
            .collect();
        let hom = FreeHom::new(alphabet, alphabet, images).expect("well-formed");
        FreeIso {
            forward: hom.clone(),
            backward: hom,
        }
    }

    pub fn forward(&self) -> &FreeHom {
        &self.forward
    }

    pub fn backward(&self) -> &FreeHom {
        &self.backward
    }

    pub fn domain(&self) -> &Alphabet {
        self.forward.domain()
    }

    pub fn codomain(&self) -> &Alphabet {
        self.forward.codomain()
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.forward.apply(w)
    }

    pub fn inverse(&self) -> FreeIso {
        FreeIso {
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    pub fn compose(&self, g: &FreeIso) -> Result<FreeIso> {
        Ok(FreeIso {
            forward: self.forward.compose(&g.forward)?,
            backward: g.backward.compose(&self.backward)?,
        })
    }
}

/// An automorphism of a free group.
#[derive(Clone, Debug)]
pub struct FreeAut {
    iso: FreeIso,
}

impl PartialEq for FreeAut {
    /// Exact equality of generator images (the inverse witness is
    /// determined by the forward map).
    fn eq(&self, other: &Self) -> bool {
        self.iso.forward == other.iso.forward
    }
}
impl Eq for FreeAut {}

impl FreeAut {
    pub fn new(alphabet: &Alphabet, forward: Vec<Word>, backward: Vec<Word>) -> Result<FreeAut> {
        let iso = FreeIso::new(
            FreeHom::new(alphabet, alphabet, forward)?,
            FreeHom::new(alphabet, alphabet, backward)?,
        )?;
        Ok(FreeAut { iso })
    }

    pub fn from_iso(iso: FreeIso) -> Result<FreeAut> {
        iso.domain().check_same(iso.codomain())?;
        Ok(FreeAut { iso })
    }

    pub fn identity(alphabet: &Alphabet) -> FreeAut {
        FreeAut {
            iso: FreeIso::identity(alphabet),
        }
    }

    /// The inner automorphism `Ad(h): x -> h^-1 x h`.
    pub fn ad(h: &Word) -> FreeAut {
        let alphabet = h.alphabet();
        let forward = (0..alphabet.rank())
            .map(|i| Word::generator(alphabet, i).conjugate(h).expect("same alphabet"))
            .collect();
        let backward = (0..alphabet.rank())
            .map(|i| {
                Word::generator(alphabet, i)
                    .conjugate(&h.inverse())
                    .expect("same alphabet")
            })
            .collect();
        FreeAut::new(alphabet, forward, backward).expect("Ad is an automorphism")
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.iso.domain()
    }

    pub fn iso(&self) -> &FreeIso {
        &self.iso
    }

    pub fn image(&self, gen: usize) -> &Word {
        self.iso.forward.image(gen)
    }

    /// `(w)f`.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.iso.apply(w)
    }

    /// `self` then `g`.
    pub fn compose(&self, g: &FreeAut) -> Result<FreeAut> {
        Ok(FreeAut {
            iso: self.iso.compose(&g.iso)?,
        })
    }

    pub fn inverse(&self) -> FreeAut {
        FreeAut {
            iso: self.iso.inverse(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.iso.forward.fixes_generators()
    }

    /// Decides innerness, returning `h` with `self = Ad(h)`.
    ///
    /// The conjugacy equation for the first generator has solution set
    /// `x1^Z * h0` (the centraliser of a generator is the cyclic group it
    /// generates); the second generator's equation pins the exponent,
    /// since `x1^-k x2 x1^k` has length exactly `2|k| + 1`, giving the
    /// provably sufficient scan window below. Remaining generators are
    /// then verified outright.
    pub fn is_inner(&self) -> Result<Option<Word>> {
        let alphabet = self.alphabet().clone();
        if alphabet.rank() < 2 {
            return Err(Error::RankOne);
        }
        let x1 = Word::generator(&alphabet, 0);
        let h0 = match x1.are_conjugate(self.image(0))? {
            Some(h) => h,
            None => return Ok(None),
        };
        let x2 = Word::generator(&alphabet, 1);
        // need x1^-k x2 x1^k = h0 (x2)f h0^-1 =: c
        let c = self
            .image(1)
            .clone()
            .conjugate(&h0.inverse())?;
        let bound = (c.len() / 2 + 1) as i64;
        for k in -bound..=bound {
            if x2.conjugate(&x1.pow(k))? != c {
                continue;
            }
            let h = x1.pow(k).multiply(&h0)?;
            let all = (0..alphabet.rank()).all(|i| {
                Word::generator(&alphabet, i).conjugate(&h).expect("same alphabet")
                    == *self.image(i)
            });
            return Ok(if all { Some(h) } else { None });
        }
        Ok(None)
    }

    /// Same element of the outer automorphism group?
    pub fn outer_equal(&self, g: &FreeAut) -> Result<bool> {
        Ok(self.compose(&g.inverse())?.is_inner()?.is_some())
    }

    /// Commute in the outer automorphism group?
    pub fn outer_commutes(&self, g: &FreeAut) -> Result<bool> {
        self.compose(g)?.outer_equal(&g.compose(self)?)
    }

    /// `conjugate_aut(f, by) = by^-1 f by` as maps, i.e. `compose(inverse(by),
    /// compose(f, by))`; with words acting on the right this realises the
    /// left-action expression "by . f . by^-1".
    pub fn conjugate_aut(&self, by: &FreeAut) -> Result<FreeAut> {
        by.inverse().compose(&self.compose(by)?)
    }

    /// Parses the `x -> word` line format with an `inverse:` block.
    pub fn parse(text: &str) -> Result<FreeAut> {
        let mut forward_lines: Vec<(String, String)> = Vec::new();
        let mut backward_lines: Vec<(String, String)> = Vec::new();
        let mut in_inverse = false;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if line == "inverse:" {
                in_inverse = true;
                continue;
            }
            let (lhs, rhs) = line.split_once("->").ok_or(Error::Parse {
                line: lineno + 1,
                msg: format!("expected `x -> word`, got `{line}`"),
            })?;
            let entry = (lhs.trim().to_string(), rhs.trim().to_string());
            if in_inverse {
                backward_lines.push(entry);
            } else {
                forward_lines.push(entry);
            }
        }
        if forward_lines.is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: "no generator images".into(),
            });
        }
        let alphabet = Alphabet::new(forward_lines.iter().map(|(n, _)| n.clone()))?;
        let forward = forward_lines
            .iter()
            .map(|(_, w)| Word::parse(&alphabet, w))
            .collect::<Result<Vec<_>>>()?;
        let mut backward = vec![None; alphabet.rank()];
        for (name, w) in &backward_lines {
            let i = alphabet
                .position(name)
                .ok_or_else(|| Error::UnknownName(name.clone()))?;
            backward[i] = Some(Word::parse(&alphabet, w)?);
        }
        let backward = backward
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                w.ok_or_else(|| Error::Parse {
                    line: 0,
                    msg: format!("missing inverse image for `{}`", alphabet.name(i)),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        FreeAut::new(&alphabet, forward, backward)
    }
}

impl fmt::Display for FreeAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet = self.alphabet();
        for i in 0..alphabet.rank() {
            writeln!(f, "{} -> {}", alphabet.name(i), self.image(i))?;
        }
        writeln!(f, "inverse:")?;
        for i in 0..alphabet.rank() {
            writeln!(f, "{} -> {}", alphabet.name(i), self.iso.backward.image(i))?;
        }
        Ok(())
    }
}

/// An element of the outer automorphism group, held by a representative.
#[derive(Clone, Debug)]
pub struct OuterAutClass {
    representative: FreeAut,
}

impl OuterAutClass {
    pub fn new(representative: FreeAut) -> OuterAutClass {
        OuterAutClass { representative }
    }

    pub fn representative(&self) -> &FreeAut {
        &self.representative
    }

    pub fn is_trivial(&self) -> Result<bool> {
        Ok(self.representative.is_inner()?.is_some())
    }

    pub fn outer_equals(&self, other: &OuterAutClass) -> Result<bool> {
        self.representative.outer_equal(&other.representative)
    }
}

/// Per-family-word conjugacy report for McCool membership.
#[derive(Clone, Debug)]
pub struct McCoolReport {
    pub member: bool,
    /// For each family word `w`, a witness `h` with `((w)f)^h = w`.
    pub witnesses: Vec<Option<Word>>,
    /// Outcome of the equivariance test, when one was requested.
    pub equivariant: Option<bool>,
}

/// Membership of `[f]` in the McCool group of the cyclic family
/// `{<w_i>}`, optionally equivariant with respect to `wrt`.
///
/// For a cyclic subgroup, having a representative restricting to the
/// identity is equivalent to `(w_i)f` being conjugate to `w_i`.
pub fn mccool_membership(
    f: &FreeAut,
    family: &[Word],
    equivariant_wrt: Option<&FreeAut>,
) -> Result<McCoolReport> {
    if f.alphabet().rank() < 2 {
        return Err(Error::RankOne);
    }
    for w in family {
        f.alphabet().check_same(w.alphabet())?;
        if w.is_empty() {
            return Err(Error::EmptyWord("mccool family word"));
        }
        if w.is_proper_power()?.is_some() {
            return Err(Error::ProperPowerFamily(w.to_string()));
        }
    }
    let mut witnesses = Vec::new();
    let mut member = true;
    for w in family {
        let witness = f.apply(w)?.are_conjugate(w)?;
        member &= witness.is_some();
        witnesses.push(witness);
    }
    let equivariant = match equivariant_wrt {
        Some(phi) => {
            let ok = f.outer_commutes(phi)?;
            member &= ok;
            Some(ok)
        }
        None => None,
    };
    Ok(McCoolReport {
        member,
        witnesses,
        equivariant,
    })
}
