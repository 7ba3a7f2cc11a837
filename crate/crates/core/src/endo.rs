//! Endomorphisms of the free group, substitutions, and the named generators.
//!
//! Composition follows `(σ∘τ)(x) = σ(τ(x))`, so that
//! `matrix(σ∘τ) = matrix(σ)·matrix(τ)`.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix3;
use crate::word::{Letter, Sign, SignedLetter, Word};
use crate::SubstitutionMatrix;

/// A triple of reduced words: the images of `a`, `b`, `c`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Endomorphism {
    images: [Word; 3],
}

impl Endomorphism {
    pub fn new(a: Word, b: Word, c: Word) -> Self {
        Endomorphism { images: [a, b, c] }
    }

    pub fn from_images(images: [Word; 3]) -> Self {
        Endomorphism { images }
    }

    pub fn identity() -> Self {
        Endomorphism::new(Word::letter(Letter::A), Word::letter(Letter::B), Word::letter(Letter::C))
    }

    pub fn images(&self) -> &[Word; 3] {
        &self.images
    }

    pub fn into_images(self) -> [Word; 3] {
        self.images
    }

    pub fn image(&self, x: Letter) -> &Word {
        &self.images[x.index()]
    }

    /// `|σ(a)| + |σ(b)| + |σ(c)|`.
    pub fn length(&self) -> usize {
        self.images.iter().map(Word::len).sum()
    }

    /// Shortest image length.
    pub fn min_image_len(&self) -> usize {
        self.images.iter().map(Word::len).min().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        Letter::ALL
            .iter()
            .all(|&x| self.image(x).letters() == [SignedLetter::pos(x)])
    }

    /// All images positive and non-empty.
    pub fn is_substitution(&self) -> bool {
        self.images.iter().all(|w| w.sign() == Sign::Positive)
    }

    /// Homomorphic image of `w`, reduced.
    pub fn apply(&self, w: &Word) -> Word {
        Word::reduce(w.letters().iter().flat_map(|&s| {
            let img = self.image(s.letter).letters();
            let (fwd, back) = if s.inverse {
                (None, Some(img.iter().rev().map(|x| x.inv())))
            } else {
                (Some(img.iter().copied()), None)
            };
            fwd.into_iter().flatten().chain(back.into_iter().flatten())
        }))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endomorphism) -> Endomorphism {
        Endomorphism::from_images(other.images.clone().map(|w| self.apply(&w)))
    }

    /// `I_z = (z a z⁻¹, z b z⁻¹, z c z⁻¹)`.
    pub fn inner(z: &Word) -> Endomorphism {
        Endomorphism::identity().conjugate(z)
    }

    /// `I_z ∘ self`: each image `w` becomes `z w z⁻¹`.
    pub fn conjugate(&self, z: &Word) -> Endomorphism {
        let zi = z.inverse();
        Endomorphism::from_images(self.images.clone().map(|w| z.concat(&w).concat(&zi)))
    }

    /// Substitution matrix: column `x` holds `(|σ(x)|_a, |σ(x)|_b, |σ(x)|_c)`.
    pub fn matrix(&self) -> SubstitutionMatrix {
        let cols = self.images.clone().map(|w| w.abelianization());
        Matrix3::new([
            [cols[0][0], cols[1][0], cols[2][0]],
            [cols[0][1], cols[1][1], cols[2][1]],
            [cols[0][2], cols[1][2], cols[2][2]],
        ])
    }

    /// Right composition with the Nielsen moves, computed directly on images.
    pub(crate) fn right_move(&self, g: BasicGenerator) -> Endomorphism {
        let [a, b, c] = &self.images;
        let images = match g {
            BasicGenerator::Pi1 => [b.clone(), a.clone(), c.clone()],
            BasicGenerator::Pi2 => [c.clone(), b.clone(), a.clone()],
            BasicGenerator::PhiL => [b.concat(a), b.clone(), c.clone()],
            BasicGenerator::PhiR => [a.concat(b), b.clone(), c.clone()],
            BasicGenerator::Iota1 => [a.inverse(), b.clone(), c.clone()],
        };
        Endomorphism::from_images(images)
    }

    /// `Some` when every image is a non-empty positive word.
    pub fn to_substitution(&self) -> Option<Substitution> {
        Substitution::new(self.clone()).ok()
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.images[0], self.images[1], self.images[2])
    }
}

impl fmt::Debug for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?}, {:?})", self.images[0], self.images[1], self.images[2])
    }
}

impl FromStr for Endomorphism {
    type Err = Error;

    /// Three comma-separated words; whitespace is ignored. Any other number
    /// of components (a different alphabet rank) is rejected.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let parts: Vec<&str> = cleaned.split(',').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "expected 3 comma-separated images over {{a,b,c}}, got {}",
                parts.len()
            )));
        }
        Ok(Endomorphism::new(parts[0].parse()?, parts[1].parse()?, parts[2].parse()?))
    }
}

/// An endomorphism whose images are all non-empty positive words.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Substitution(Endomorphism);

impl Substitution {
    pub fn new(e: Endomorphism) -> Result<Self> {
        if e.is_substitution() {
            Ok(Substitution(e))
        } else {
            Err(Error::NotSubstitution(e.to_string()))
        }
    }

    pub fn identity() -> Self {
        Substitution(Endomorphism::identity())
    }

    pub fn as_endo(&self) -> &Endomorphism {
        &self.0
    }

    pub fn into_endo(self) -> Endomorphism {
        self.0
    }

    /// `self ∘ other` (substitutions are closed under composition).
    pub fn compose(&self, other: &Substitution) -> Substitution {
        Substitution(self.0.compose(&other.0))
    }

    /// The permutation this substitution is, if every image is one letter.
    pub fn as_permutation(&self) -> Option<Permutation> {
        let mut out = [Letter::A; 3];
        for (slot, w) in out.iter_mut().zip(self.0.images()) {
            match w.letters() {
                [s] => *slot = s.letter,
                _ => return None,
            }
        }
        Permutation::new(out)
    }

    pub fn is_permutation(&self) -> bool {
        self.as_permutation().is_some()
    }
}

impl Deref for Substitution {
    type Target = Endomorphism;

    fn deref(&self) -> &Endomorphism {
        &self.0
    }
}

impl TryFrom<Endomorphism> for Substitution {
    type Error = Error;

    fn try_from(e: Endomorphism) -> Result<Self> {
        Substitution::new(e)
    }
}

impl From<Substitution> for Endomorphism {
    fn from(s: Substitution) -> Self {
        s.0
    }
}

impl FromStr for Substitution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Substitution::new(s.parse()?)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Definition of a mixed substitution: every `wᵢ wₖ⁻¹ wⱼ` with `i ≠ k`,
/// `j ≠ k` reduces to the sign pattern `+−+`.
///
/// Permutations are never mixed.
pub fn is_mixed(s: &Substitution) -> bool {
    if s.is_permutation() {
        return false;
    }
    let w = s.images();
    for k in 0..3 {
        let wk_inv = w[k].inverse();
        for i in (0..3).filter(|&i| i != k) {
            let left = w[i].concat(&wk_inv);
            for j in (0..3).filter(|&j| j != k) {
                let runs = left.concat(&w[j]).sign_runs();
                if runs.len() != 3 || !runs[0].0 {
                    return false;
                }
            }
        }
    }
    true
}

/// A bijection of `{a, b, c}`, stored as its images `(p(a), p(b), p(c))`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation([Letter; 3]);

impl Permutation {
    /// The six permutations in lexicographic order of their image strings.
    pub const ALL: [Permutation; 6] = {
        use Letter::*;
        [
            Permutation([A, B, C]),
            Permutation([A, C, B]),
            Permutation([B, A, C]),
            Permutation([B, C, A]),
            Permutation([C, A, B]),
            Permutation([C, B, A]),
        ]
    };

    pub fn new(images: [Letter; 3]) -> Option<Self> {
        let mut seen = [false; 3];
        for l in images {
            if std::mem::replace(&mut seen[l.index()], true) {
                return None;
            }
        }
        Some(Permutation(images))
    }

    pub fn identity() -> Self {
        Permutation([Letter::A, Letter::B, Letter::C])
    }

    pub fn images(&self) -> [Letter; 3] {
        self.0
    }

    pub fn apply(&self, x: Letter) -> Letter {
        self.0[x.index()]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.map(|x| self.apply(x)))
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = [Letter::A; 3];
        for x in Letter::ALL {
            out[self.apply(x).index()] = x;
        }
        Permutation(out)
    }

    pub fn to_substitution(&self) -> Substitution {
        Substitution(self.to_endo())
    }

    pub fn to_endo(&self) -> Endomorphism {
        Endomorphism::from_images(self.0.map(Word::letter))
    }

    pub fn matrix(&self) -> SubstitutionMatrix {
        Matrix3::permutation(self.0)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Image string such as `bca`.
    fn from_str(s: &str) -> Result<Self> {
        let letters: Vec<Letter> = s
            .chars()
            .map(|c| Letter::from_char(c).ok_or_else(|| Error::Parse(format!("invalid letter {c:?} in permutation"))))
            .collect::<Result<_>>()?;
        let arr: [Letter; 3] = letters
            .try_into()
            .map_err(|_| Error::Parse(format!("permutation {s:?} must have 3 letters")))?;
        Permutation::new(arr).ok_or_else(|| Error::Parse(format!("{s:?} is not a permutation")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Fibonacci-type substitution fixing every letter except `target`, which is
/// sent to `target·neighbor` (right) or `neighbor·target` (left).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fib {
    pub target: Letter,
    pub neighbor: Letter,
    pub side: Side,
}

impl Fib {
    pub fn new(target: Letter, neighbor: Letter, side: Side) -> Option<Self> {
        (target != neighbor).then_some(Fib {
            target,
            neighbor,
            side,
        })
    }

    /// All twelve, ordered by (target, neighbor, side).
    pub fn all() -> Vec<Fib> {
        let mut out = Vec::with_capacity(12);
        for target in Letter::ALL {
            for neighbor in Letter::ALL {
                for side in [Side::Left, Side::Right] {
                    out.extend(Fib::new(target, neighbor, side));
                }
            }
        }
        out
    }

    pub fn to_substitution(&self) -> Substitution {
        let mut images = Letter::ALL.map(Word::letter);
        let (t, n) = (Word::letter(self.target), Word::letter(self.neighbor));
        images[self.target.index()] = match self.side {
            Side::Right => t.concat(&n),
            Side::Left => n.concat(&t),
        };
        Substitution(Endomorphism::from_images(images))
    }

    pub fn to_endo(&self) -> Endomorphism {
        self.to_substitution().into_endo()
    }

    /// Group inverse: `target ↦ target·neighbor⁻¹` (right) or
    /// `neighbor⁻¹·target` (left).
    pub fn inverse_endo(&self) -> Endomorphism {
        let mut images = Letter::ALL.map(Word::letter);
        let (t, n) = (Word::letter(self.target), Word::letter(self.neighbor).inverse());
        images[self.target.index()] = match self.side {
            Side::Right => t.concat(&n),
            Side::Left => n.concat(&t),
        };
        Endomorphism::from_images(images)
    }

    /// The substitution matrix, a transvection with the unit at
    /// row `neighbor`, column `target`.
    pub fn matrix(&self) -> SubstitutionMatrix {
        Matrix3::transvection(self.neighbor, self.target)
    }

    /// `(π, φ, π⁻¹)` with `self = π ∘ φ ∘ π⁻¹`, `φ ∈ {φ_l, φ_r}`.
    pub fn conjugation_form(&self) -> (Permutation, BasicGenerator, Permutation) {
        let third = Letter::ALL
            .into_iter()
            .find(|&l| l != self.target && l != self.neighbor)
            .expect("three letters");
        let p = Permutation([self.target, self.neighbor, third]);
        let phi = match self.side {
            Side::Left => BasicGenerator::PhiL,
            Side::Right => BasicGenerator::PhiR,
        };
        (p, phi, p.inverse())
    }

    /// Expansion into the basic generators `{π₁, π₂, φ_l, φ_r}`.
    pub fn expand(&self) -> Vec<BasicGenerator> {
        let (p, phi, q) = self.conjugation_form();
        let mut out = expand_permutation(&p);
        out.push(phi);
        out.extend(expand_permutation(&q));
        out
    }
}

impl fmt::Display for Fib {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::Left => "L",
            Side::Right => "R",
        };
        write!(f, "Fib({},{},{side})", self.target, self.neighbor)
    }
}

/// The five automorphisms that generate `Aut(Γ_A)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasicGenerator {
    Pi1,
    Pi2,
    PhiL,
    PhiR,
    Iota1,
}

impl BasicGenerator {
    pub const ALL: [BasicGenerator; 5] = [
        BasicGenerator::Pi1,
        BasicGenerator::Pi2,
        BasicGenerator::PhiL,
        BasicGenerator::PhiR,
        BasicGenerator::Iota1,
    ];

    pub fn to_endo(self) -> Endomorphism {
        let l = |s: &str| -> Word { s.parse().expect("literal") };
        match self {
            BasicGenerator::Pi1 => Endomorphism::new(l("b"), l("a"), l("c")),
            BasicGenerator::Pi2 => Endomorphism::new(l("c"), l("b"), l("a")),
            BasicGenerator::PhiL => Endomorphism::new(l("ba"), l("b"), l("c")),
            BasicGenerator::PhiR => Endomorphism::new(l("ab"), l("b"), l("c")),
            BasicGenerator::Iota1 => Endomorphism::new(l("A"), l("b"), l("c")),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BasicGenerator::Pi1 => "pi1",
            BasicGenerator::Pi2 => "pi2",
            BasicGenerator::PhiL => "phi_l",
            BasicGenerator::PhiR => "phi_r",
            BasicGenerator::Iota1 => "iota1",
        }
    }
}

impl fmt::Display for BasicGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Named generators: the five basic ones plus the permutation and
/// Fibonacci families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorId {
    Basic(BasicGenerator),
    Perm(Permutation),
    Fib(Fib),
}

impl GeneratorId {
    pub fn to_endo(&self) -> Endomorphism {
        generator(*self)
    }
}

impl From<BasicGenerator> for GeneratorId {
    fn from(g: BasicGenerator) -> Self {
        GeneratorId::Basic(g)
    }
}

pub fn generator(id: GeneratorId) -> Endomorphism {
    match id {
        GeneratorId::Basic(g) => g.to_endo(),
        GeneratorId::Perm(p) => p.to_endo(),
        GeneratorId::Fib(f) => f.to_endo(),
    }
}

/// Shortest words in `{π₁, π₂}` for each permutation, found once by BFS.
fn permutation_words() -> &'static Vec<(Permutation, Vec<BasicGenerator>)> {
    static TABLE: OnceLock<Vec<(Permutation, Vec<BasicGenerator>)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let gens = [
            (BasicGenerator::Pi1, Permutation([Letter::B, Letter::A, Letter::C])),
            (BasicGenerator::Pi2, Permutation([Letter::C, Letter::B, Letter::A])),
        ];
        let mut table: Vec<(Permutation, Vec<BasicGenerator>)> = vec![(Permutation::identity(), vec![])];
        let mut head = 0;
        while head < table.len() {
            let (p, word) = table[head].clone();
            for (g, gp) in gens {
                let q = p.compose(&gp);
                if !table.iter().any(|(r, _)| *r == q) {
                    let mut next = word.clone();
                    next.push(g);
                    table.push((q, next));
                }
            }
            head += 1;
        }
        table
    })
}

/// A shortest product of `π₁`, `π₂` equal to `p` (empty for the identity).
pub fn expand_permutation(p: &Permutation) -> Vec<BasicGenerator> {
    permutation_words()
        .iter()
        .find(|(q, _)| q == p)
        .map(|(_, w)| w.clone())
        .expect("π₁ and π₂ generate all permutations")
}

/// Composes a sequence of endomorphisms left to right: `g₁ ∘ g₂ ∘ … ∘ g_k`.
pub fn compose_all<'a, I: IntoIterator<Item = &'a Endomorphism>>(factors: I) -> Endomorphism {
    factors
        .into_iter()
        .fold(Endomorphism::identity(), |acc, g| acc.compose(g))
}
