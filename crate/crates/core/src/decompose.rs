//! Decomposition of an invertible substitution as `σ = I_W ∘ g₁ ∘ … ∘ g_k`,
//! where `I_W` is an inner automorphism and every `gᵢ` is a permutation or a
//! Fibonacci-type substitution.
//!
//! The loop alternates two moves on the remaining substitution `τ`:
//!
//! * **peel**: when one image is a proper suffix (prefix) of another,
//!   `τ = τ′ ∘ Fib(x, y, Right|Left)` with `|τ′| < |τ|`;
//! * **strip**: otherwise rotate a maximal common suffix (or prefix) of the
//!   images to the other end with an inner automorphism, leaving `|τ|`
//!   unchanged.
//!
//! It stops when `τ` is a permutation.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::endo::{compose_all, is_mixed, BasicGenerator, Endomorphism, Fib, Permutation, Side, Substitution};
use crate::error::{Error, Result};
use crate::nielsen::{NielsenEngine, Verdict};
use crate::word::{common_prefix, common_suffix, Letter, Sign, Word};

/// A simple factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Perm(Permutation),
    Fib(Fib),
}

impl Factor {
    pub fn to_endo(&self) -> Endomorphism {
        match self {
            Factor::Perm(p) => p.to_endo(),
            Factor::Fib(f) => f.to_endo(),
        }
    }

    /// The factor as a product of `π₁, π₂, φ_l, φ_r`.
    pub fn expand(&self) -> Vec<BasicGenerator> {
        match self {
            Factor::Perm(p) => crate::endo::expand_permutation(p),
            Factor::Fib(f) => f.expand(),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Perm(p) => write!(f, "P({p})"),
            Factor::Fib(x) => x.fmt(f),
        }
    }
}

/// `σ = I_W ∘ g₁ ∘ … ∘ g_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub conjugator: Word,
    pub factors: Vec<Factor>,
}

impl Decomposition {
    /// `g₁ ∘ … ∘ g_k`, always a simple substitution.
    pub fn simple_part(&self) -> Substitution {
        let gens: Vec<Endomorphism> = self.factors.iter().map(Factor::to_endo).collect();
        Substitution::new(compose_all(&gens)).expect("products of simple factors are substitutions")
    }

    /// `I_W ∘ g₁ ∘ … ∘ g_k`.
    pub fn recompose(&self) -> Endomorphism {
        self.simple_part().conjugate(&self.conjugator)
    }

    /// The factor list expanded into basic generators, in order.
    pub fn expanded(&self) -> Vec<BasicGenerator> {
        self.factors.iter().flat_map(Factor::expand).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DecompositionRepr::from(self)).expect("plain data serializes")
    }

    /// The alternative form with every factor written over `π₁, π₂, φ_l, φ_r`.
    pub fn to_expanded_json(&self) -> serde_json::Value {
        let factors: Vec<Vec<&'static str>> = self
            .factors
            .iter()
            .map(|f| f.expand().into_iter().map(BasicGenerator::name).collect())
            .collect();
        serde_json::json!({
            "conjugator": self.conjugator.to_string(),
            "factors": factors,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let repr: DecompositionRepr =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("decomposition JSON: {e}")))?;
        repr.try_into()
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = if self.conjugator.is_empty() {
            "ε".to_string()
        } else {
            self.conjugator.to_string()
        };
        write!(f, "I[{w}]")?;
        for g in &self.factors {
            write!(f, " ∘ {g}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct DecompositionRepr {
    conjugator: String,
    factors: Vec<FactorRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum FactorRepr {
    Perm(String),
    Fib { target: String, neighbor: String, side: Side },
}

impl From<&Decomposition> for DecompositionRepr {
    fn from(d: &Decomposition) -> Self {
        DecompositionRepr {
            conjugator: d.conjugator.to_string(),
            factors: d
                .factors
                .iter()
                .map(|f| match f {
                    Factor::Perm(p) => FactorRepr::Perm(p.to_string()),
                    Factor::Fib(x) => FactorRepr::Fib {
                        target: x.target.to_string(),
                        neighbor: x.neighbor.to_string(),
                        side: x.side,
                    },
                })
                .collect(),
        }
    }
}

impl TryFrom<DecompositionRepr> for Decomposition {
    type Error = Error;

    fn try_from(r: DecompositionRepr) -> Result<Self> {
        let letter = |s: &str| -> Result<Letter> {
            let mut cs = s.chars();
            match (cs.next().and_then(Letter::from_char), cs.next()) {
                (Some(l), None) => Ok(l),
                _ => Err(Error::Parse(format!("bad letter {s:?}"))),
            }
        };
        let factors = r
            .factors
            .into_iter()
            .map(|f| match f {
                FactorRepr::Perm(p) => Ok(Factor::Perm(p.parse()?)),
                FactorRepr::Fib { target, neighbor, side } => Fib::new(letter(&target)?, letter(&neighbor)?, side)
                    .map(Factor::Fib)
                    .ok_or_else(|| Error::Parse("Fibonacci factor needs distinct letters".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Decomposition {
            conjugator: r.conjugator.parse()?,
            factors,
        })
    }
}

/// One Fibonacci peel: if `τ(y)` is a proper suffix of `τ(x)`, then
/// `τ = τ′ ∘ Fib(x, y, Right)` where `τ′(x)` drops that suffix (prefix and
/// `Left` likewise). Suffixes are tried before prefixes, pairs `(x, y)` in
/// lexicographic order.
pub fn peel_once(tau: &Substitution) -> Option<(Substitution, Fib)> {
    let images = tau.images();
    for side in [Side::Right, Side::Left] {
        for x in Letter::ALL {
            for y in Letter::ALL.into_iter().filter(|&y| y != x) {
                let (wx, wy) = (&images[x.index()], &images[y.index()]);
                let hit = match side {
                    Side::Right => wx.has_proper_suffix(wy),
                    Side::Left => wx.has_proper_prefix(wy),
                };
                if hit {
                    let mut rest = images.clone();
                    rest[x.index()] = match side {
                        Side::Right => wx.drop_back(wy.len()),
                        Side::Left => wx.drop_front(wy.len()),
                    };
                    let peeled = Substitution::new(Endomorphism::from_images(rest)).expect("non-empty positive remainder");
                    return Some((peeled, Fib::new(x, y, side).expect("x ≠ y")));
                }
            }
        }
    }
    None
}

/// Rotates the maximal common suffix `w` (else the maximal common prefix
/// `z`) to the front (back): returns `(τ′, δ)` with `τ = I_δ ∘ τ′`, where
/// `δ = w⁻¹` (resp. `z`).
pub fn strip_once(tau: &Substitution) -> Option<(Substitution, Word)> {
    let images = tau.images();
    let suffix = common_suffix(images);
    let (conj, delta) = if !suffix.is_empty() {
        (suffix.clone(), suffix.inverse())
    } else {
        let prefix = common_prefix(images);
        if prefix.is_empty() {
            return None;
        }
        (prefix.inverse(), prefix)
    };
    let rotated = tau.conjugate(&conj);
    let rotated = Substitution::new(rotated).expect("rotating a common affix keeps images positive");
    Some((rotated, delta))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternKind {
    /// `(ux, uv, yv)`
    UxUvYv,
    /// `(uxv, uv, y)`
    UxvUvY,
}

/// `τ ∘ π` equals `(ux, uv, yv)` or `(uxv, uv, y)` with `u, v, x, y`
/// non-empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSplit {
    pub permutation: Permutation,
    pub kind: PatternKind,
    pub u: Word,
    pub v: Word,
    pub x: Word,
    pub y: Word,
}

impl PatternSplit {
    /// The triple `τ ∘ π`.
    pub fn pattern_images(&self) -> [Word; 3] {
        let (u, v, x, y) = (&self.u, &self.v, &self.x, &self.y);
        match self.kind {
            PatternKind::UxUvYv => [u.concat(x), u.concat(v), y.concat(v)],
            PatternKind::UxvUvY => [u.concat(x).concat(v), u.concat(v), y.clone()],
        }
    }

    /// `τ` itself, undoing the permutation.
    pub fn reassemble(&self) -> Endomorphism {
        Endomorphism::from_images(self.pattern_images()).compose(&self.permutation.inverse().to_endo())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NoPatternReason {
    /// No image is a prefix or suffix of another is required.
    AffixRelation,
    Mixed,
    NotInvertible,
}

impl fmt::Display for NoPatternReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NoPatternReason::AffixRelation => "an image is a prefix or suffix of another",
            NoPatternReason::Mixed => "substitution is mixed",
            NoPatternReason::NotInvertible => "substitution is not invertible",
        })
    }
}

fn split_uxuvyv(w: &[Word; 3]) -> Option<(Word, Word, Word, Word)> {
    let (w1, w2, w3) = (&w[0], &w[1], &w[2]);
    for cut in 1..w2.len() {
        let (u, v) = (w2.slice(0..cut), w2.drop_front(cut));
        if w1.has_proper_prefix(&u) && w3.has_proper_suffix(&v) {
            return Some((u.clone(), v.clone(), w1.drop_front(cut), w3.drop_back(v.len())));
        }
    }
    None
}

fn split_uxvuvy(w: &[Word; 3]) -> Option<(Word, Word, Word, Word)> {
    let (w1, w2) = (&w[0], &w[1]);
    if w1.len() <= w2.len() {
        return None;
    }
    for cut in 1..w2.len() {
        let (u, v) = (w2.slice(0..cut), w2.drop_front(cut));
        if w1.has_prefix(&u) && w1.has_suffix(&v) {
            let x = w1.slice(cut..w1.len() - v.len());
            return Some((u, v, x, w[2].clone()));
        }
    }
    None
}

fn has_affix_relation(images: &[Word; 3]) -> bool {
    (0..3).any(|i| {
        (0..3).any(|j| i != j && (images[j].has_prefix(&images[i]) || images[j].has_suffix(&images[i])))
    })
}

/// Finds the pattern split, scanning permutations in lexicographic order and
/// for each trying `(ux, uv, yv)` before `(uxv, uv, y)`, with the shortest
/// `u` first.
pub fn extract_pattern(tau: &Substitution) -> Result<PatternSplit> {
    if has_affix_relation(tau.images()) {
        return Err(Error::NoPattern(NoPatternReason::AffixRelation));
    }
    for p in Permutation::ALL {
        let w = tau.compose(&p.to_substitution()).into_endo().into_images();
        let found = split_uxuvyv(&w)
            .map(|s| (PatternKind::UxUvYv, s))
            .or_else(|| split_uxvuvy(&w).map(|s| (PatternKind::UxvUvY, s)));
        if let Some((kind, (u, v, x, y))) = found {
            return Ok(PatternSplit {
                permutation: p,
                kind,
                u,
                v,
                x,
                y,
            });
        }
    }
    let reason = if is_mixed(tau) {
        NoPatternReason::Mixed
    } else {
        NoPatternReason::NotInvertible
    };
    Err(Error::NoPattern(reason))
}

/// True iff repeated peeling alone reaches a permutation.
pub fn is_simple(sigma: &Substitution) -> bool {
    let mut tau = sigma.clone();
    loop {
        if tau.is_permutation() {
            return true;
        }
        match peel_once(&tau) {
            Some((next, _)) => tau = next,
            None => return false,
        }
    }
}

/// Decomposes with the default Nielsen engine for the invertibility check.
pub fn decompose(sigma: &Substitution) -> Result<Decomposition> {
    decompose_with(sigma, &NielsenEngine::default())
}

pub fn decompose_with(sigma: &Substitution, engine: &NielsenEngine) -> Result<Decomposition> {
    if let Verdict::NotInvertible(_) = engine.decide(sigma.as_endo())? {
        return Err(Error::NotInvertible);
    }
    decompose_unchecked(sigma)
}

/// The decomposition loop without the up-front invertibility check. On a
/// non-invertible input this fails with [`Error::InternalContradiction`].
pub fn decompose_unchecked(sigma: &Substitution) -> Result<Decomposition> {
    let cap = 4 * sigma.length();
    let mut conjugator = Word::empty();
    let mut tail: Vec<Factor> = Vec::new();
    let mut visited: HashSet<Substitution> = HashSet::new();
    let mut tau = sigma.clone();
    let mut steps = 0;
    loop {
        if let Some(p) = tau.as_permutation() {
            if !p.is_identity() {
                tail.push(Factor::Perm(p));
            }
            break;
        }
        steps += 1;
        if steps > cap || !visited.insert(tau.clone()) {
            return Err(Error::InternalContradiction(format!(
                "decomposition of {sigma} cycles at {tau}"
            )));
        }
        if let Some((next, f)) = peel_once(&tau) {
            tail.push(Factor::Fib(f));
            tau = next;
        } else if let Some((next, delta)) = strip_once(&tau) {
            conjugator = conjugator.concat(&delta);
            tau = next;
        } else {
            return Err(Error::InternalContradiction(format!(
                "{tau} admits neither a peel nor a strip"
            )));
        }
    }
    tail.reverse();
    let d = Decomposition { conjugator, factors: tail };
    if d.conjugator.sign() == Sign::Mixed {
        return Err(Error::InternalContradiction(format!(
            "conjugator {} of {sigma} is mixed",
            d.conjugator
        )));
    }
    if d.recompose() != *sigma.as_endo() {
        return Err(Error::InternalContradiction(format!("{d} does not recompose to {sigma}")));
    }
    Ok(d)
}
