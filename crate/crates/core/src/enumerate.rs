//! Exhaustive ground truth for small lengths.
//!
//! Simple substitutions are generated breadth-first from the identity by
//! right-composition with `π₁, π₂, φ_l, φ_r`: permutations keep the length and
//! Fibonacci factors increase it, so pruning at the bound loses nothing.
//! Every invertible substitution is a simple one conjugated by a positive or
//! negative word no longer than its shortest image, which yields the
//! invertible substitutions of bounded length.

use std::collections::{HashSet, VecDeque};

use crate::endo::{BasicGenerator, Endomorphism, Substitution};
use crate::error::{Error, Result};
use crate::word::{common_prefix, common_suffix, Word};

pub const DEFAULT_LENGTH_CAP: usize = 14;

/// Enumeration with a configurable cap on the length bound.
#[derive(Clone, Copy, Debug)]
pub struct Enumerator {
    pub cap: usize,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator {
            cap: DEFAULT_LENGTH_CAP,
        }
    }
}

/// A substitution together with its inverse automorphism.
#[derive(Clone, Debug)]
pub struct WithInverse {
    pub sigma: Substitution,
    pub inverse: Endomorphism,
}

fn inverse_generator(g: BasicGenerator) -> Endomorphism {
    match g {
        BasicGenerator::PhiL => "Ba,b,c".parse().expect("literal"),
        BasicGenerator::PhiR => "aB,b,c".parse().expect("literal"),
        other => other.to_endo(),
    }
}

impl Enumerator {
    pub fn with_cap(cap: usize) -> Self {
        Enumerator { cap }
    }

    fn check(&self, max_len: usize) -> Result<()> {
        if max_len > self.cap {
            return Err(Error::BoundTooLarge {
                requested: max_len,
                cap: self.cap,
            });
        }
        if max_len < 3 {
            return Err(Error::Precondition(format!("length bound {max_len} is below 3")));
        }
        Ok(())
    }

    /// Streams every simple substitution with `|σ| ≤ max_len` exactly once,
    /// with its inverse, in breadth-first order.
    pub fn for_each_simple<F: FnMut(&WithInverse)>(&self, max_len: usize, mut f: F) -> Result<()> {
        self.check(max_len)?;
        let moves = [
            BasicGenerator::Pi1,
            BasicGenerator::Pi2,
            BasicGenerator::PhiL,
            BasicGenerator::PhiR,
        ];
        let inverses = moves.map(inverse_generator);
        let start = WithInverse {
            sigma: Substitution::identity(),
            inverse: Endomorphism::identity(),
        };
        let mut seen: HashSet<Substitution> = HashSet::from([start.sigma.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(cur) = queue.pop_front() {
            f(&cur);
            for (g, g_inv) in moves.iter().zip(&inverses) {
                let next = cur.sigma.right_move(*g);
                if next.length() > max_len {
                    continue;
                }
                let next = Substitution::new(next).expect("simple products are substitutions");
                if seen.insert(next.clone()) {
                    queue.push_back(WithInverse {
                        sigma: next,
                        inverse: g_inv.compose(&cur.inverse),
                    });
                }
            }
        }
        Ok(())
    }

    /// Simple substitutions with `|σ| ≤ max_len`, breadth-first order.
    pub fn simple(&self, max_len: usize) -> Result<Vec<Substitution>> {
        let mut out = Vec::new();
        self.for_each_simple(max_len, |s| out.push(s.sigma.clone()))?;
        Ok(out)
    }

    /// Streams every invertible substitution with `|σ| ≤ max_len` exactly
    /// once, with its inverse.
    pub fn for_each_invertible<F: FnMut(&WithInverse)>(&self, max_len: usize, mut f: F) -> Result<()> {
        let mut seen: HashSet<Substitution> = HashSet::new();
        self.for_each_simple(max_len, |s| {
            for conj in rotations(&s.sigma) {
                let rotated = s.sigma.conjugate(&conj);
                let Some(rotated) = rotated.to_substitution() else {
                    continue;
                };
                if seen.insert(rotated.clone()) {
                    // (I_w ∘ s)⁻¹ = s⁻¹ ∘ I_{w⁻¹}
                    let inverse = s.inverse.compose(&Endomorphism::inner(&conj.inverse()));
                    f(&WithInverse { sigma: rotated, inverse });
                }
            }
        })
    }

    /// Invertible substitutions with `|σ| ≤ max_len`.
    pub fn invertible(&self, max_len: usize) -> Result<Vec<Substitution>> {
        let mut out = Vec::new();
        self.for_each_invertible(max_len, |s| out.push(s.sigma.clone()))?;
        Ok(out)
    }

    pub fn invertible_with_inverses(&self, max_len: usize) -> Result<Vec<WithInverse>> {
        let mut out = Vec::new();
        self.for_each_invertible(max_len, |s| out.push(s.clone()))?;
        Ok(out)
    }

    /// Searches for `σ = σ₁ ∘ σ₂` with both factors non-trivial invertible
    /// substitutions. Returns the pair whose right factor `σ₂` has the
    /// lexicographically smallest literal.
    pub fn decomposition_witness(&self, sigma: &Substitution) -> Result<Option<(Substitution, Substitution)>> {
        let lens = sigma.images().clone().map(|w| w.len());
        let mut best: Option<(String, Substitution, Substitution)> = None;
        self.for_each_invertible(sigma.length(), |t| {
            if t.sigma.is_permutation() {
                return;
            }
            // every image of σ₁ is non-empty, so |σ₂(x)| ≤ |σ(x)|
            if t.sigma.images().iter().zip(lens).any(|(w, n)| w.len() > n) {
                return;
            }
            let Some(left) = sigma.as_endo().compose(&t.inverse).to_substitution() else {
                return;
            };
            if left.is_permutation() {
                return;
            }
            let key = t.sigma.to_string();
            if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                best = Some((key, left, t.sigma.clone()));
            }
        })?;
        Ok(best.map(|(_, l, r)| (l, r)))
    }
}

/// The words `w` (positive or inverse-of-positive, `|w| ≤` shortest image)
/// for which `I_w ∘ s` may be a substitution: suffixes of the common suffix
/// and inverses of prefixes of the common prefix. Includes `ε`.
fn rotations(s: &Substitution) -> Vec<Word> {
    let images = s.images();
    let n = s.min_image_len();
    let suffix = common_suffix(images);
    let prefix = common_prefix(images);
    let mut out = vec![Word::empty()];
    for k in 1..=n.min(suffix.len()) {
        out.push(suffix.drop_front(suffix.len() - k));
    }
    for k in 1..=n.min(prefix.len()) {
        out.push(prefix.slice(0..k).inverse());
    }
    out
}

pub fn enumerate_simple(max_len: usize) -> Result<Vec<Substitution>> {
    Enumerator::default().simple(max_len)
}

pub fn enumerate_invertible(max_len: usize) -> Result<Vec<Substitution>> {
    Enumerator::default().invertible(max_len)
}

/// Definition-level decomposability, by exhaustive search over right factors.
pub fn is_decomposable_bruteforce(sigma: &Substitution) -> Result<bool> {
    Ok(Enumerator::default().decomposition_witness(sigma)?.is_some())
}
