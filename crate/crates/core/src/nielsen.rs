//! Invertibility by Nielsen cancellation.
//!
//! An endomorphism `σ` is an automorphism iff it can be carried to the
//! identity by right-composing with `π₁, π₂, φ_l, φ_r, ι₁` without the total
//! length ever increasing. The states reachable under such moves are finite,
//! so an exhaustive search with a visited set decides invertibility and
//! returns a witness.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, HashSet};
use std::sync::OnceLock;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::endo::{compose_all, is_mixed, BasicGenerator, Endomorphism, Substitution};
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

/// Moves `τ₁, …, τ_k` with `σ ∘ τ₁ ∘ … ∘ τ_k = id` and non-increasing length
/// along the way.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NielsenWitness {
    pub steps: Vec<BasicGenerator>,
}

impl NielsenWitness {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `τ₁ ∘ … ∘ τ_k`, which is `σ⁻¹` when the witness is valid for `σ`.
    pub fn product(&self) -> Endomorphism {
        let gens: Vec<Endomorphism> = self.steps.iter().map(|g| g.to_endo()).collect();
        compose_all(&gens)
    }
}

impl fmt::Display for NielsenWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.steps.iter().map(|g| g.name()).collect();
        write!(f, "{}", names.join(" "))
    }
}

/// Why an endomorphism was found not invertible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Refutation {
    /// The substitution matrix has determinant other than ±1.
    Determinant(i64),
    /// A mixed substitution.
    Mixed,
    /// The search frontier ran dry without reaching the identity.
    Exhausted { explored: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Invertible(NielsenWitness),
    NotInvertible(Refutation),
}

impl Verdict {
    pub fn is_invertible(&self) -> bool {
        matches!(self, Verdict::Invertible(_))
    }

    pub fn witness(&self) -> Option<&NielsenWitness> {
        match self {
            Verdict::Invertible(w) => Some(w),
            Verdict::NotInvertible(_) => None,
        }
    }
}

/// Search configuration.
#[derive(Clone, Copy, Debug)]
pub struct NielsenEngine {
    /// Maximum number of distinct states visited before giving up with
    /// [`Error::Budget`].
    pub budget: usize,
    /// Apply the determinant and mixedness filters before searching.
    pub prefilters: bool,
}

impl Default for NielsenEngine {
    fn default() -> Self {
        NielsenEngine {
            budget: DEFAULT_NODE_BUDGET,
            prefilters: true,
        }
    }
}

impl NielsenEngine {
    pub fn with_budget(budget: usize) -> Self {
        NielsenEngine {
            budget,
            ..Self::default()
        }
    }

    /// Pure search, no shortcuts.
    pub fn without_prefilters(self) -> Self {
        NielsenEngine {
            prefilters: false,
            ..self
        }
    }

    pub fn decide(&self, sigma: &Endomorphism) -> Result<Verdict> {
        if self.prefilters {
            let det = sigma.matrix().det();
            if det.abs() != 1 {
                return Ok(Verdict::NotInvertible(Refutation::Determinant(det)));
            }
            if let Some(s) = sigma.to_substitution() {
                if is_mixed(&s) {
                    return Ok(Verdict::NotInvertible(Refutation::Mixed));
                }
            }
        }
        self.search(sigma)
    }

    /// Best-first search (shortest total length first) over classes of
    /// states modulo the 48 signed permutations, the subgroup generated by
    /// `π₁, π₂, ι₁`, whose moves never change the length. A class is
    /// represented by its images each replaced by the smaller of `w`, `w⁻¹`,
    /// then sorted; the class-level moves are `wᵢ ← wᵢ wⱼ^±1` and
    /// `wᵢ ← wⱼ^±1 wᵢ`. The order of expansion does not change the set of
    /// reachable classes, only how soon the identity is met.
    fn search(&self, sigma: &Endomorphism) -> Result<Verdict> {
        let start = canonical(sigma.images());
        let target = canonical(Endomorphism::identity().images());
        let mut nodes: Vec<([Word; 3], usize)> = vec![(start.clone(), 0)];
        let mut seen: HashSet<[Word; 3]> = HashSet::from([start.clone()]);
        let mut frontier = BinaryHeap::from([Reverse((sigma.length(), 0))]);
        let mut found = (start == target).then_some(0);
        while found.is_none() {
            let Some(Reverse((len, head))) = frontier.pop() else {
                break;
            };
            let current = nodes[head].0.clone();
            for next in class_moves(&current, len) {
                if seen.contains(&next) {
                    continue;
                }
                if seen.len() >= self.budget {
                    return Err(Error::Budget { limit: self.budget });
                }
                seen.insert(next.clone());
                let done = next == target;
                let next_len = next.iter().map(Word::len).sum();
                nodes.push((next, head));
                if done {
                    found = Some(nodes.len() - 1);
                    break;
                }
                frontier.push(Reverse((next_len, nodes.len() - 1)));
            }
        }
        let Some(mut j) = found else {
            return Ok(Verdict::NotInvertible(Refutation::Exhausted { explored: nodes.len() }));
        };
        let mut path = vec![j];
        while j != 0 {
            j = nodes[j].1;
            path.push(j);
        }
        path.reverse();
        let classes: Vec<&[Word; 3]> = path.iter().map(|&k| &nodes[k].0).collect();
        Ok(Verdict::Invertible(lift_path(sigma, &classes[1..])))
    }

    /// Reference search over raw states, without the signed-permutation
    /// quotient. Exponentially slower; kept to cross-check [`Self::decide`].
    pub fn plain_search(&self, sigma: &Endomorphism) -> Result<Verdict> {
        if sigma.is_identity() {
            return Ok(Verdict::Invertible(NielsenWitness::default()));
        }
        let mut nodes: Vec<(Endomorphism, usize, Option<BasicGenerator>)> = vec![(sigma.clone(), 0, None)];
        let mut seen: HashSet<Endomorphism> = HashSet::from([sigma.clone()]);
        let mut head = 0;
        while head < nodes.len() {
            let current = nodes[head].0.clone();
            let len = current.length();
            for g in BasicGenerator::ALL {
                let next = current.right_move(g);
                if next.length() > len || seen.contains(&next) {
                    continue;
                }
                if seen.len() >= self.budget {
                    return Err(Error::Budget { limit: self.budget });
                }
                seen.insert(next.clone());
                let done = next.is_identity();
                nodes.push((next, head, Some(g)));
                if done {
                    let mut j = nodes.len() - 1;
                    let mut steps = Vec::new();
                    while let Some(g) = nodes[j].2 {
                        steps.push(g);
                        j = nodes[j].1;
                    }
                    steps.reverse();
                    return Ok(Verdict::Invertible(NielsenWitness { steps }));
                }
            }
            head += 1;
        }
        Ok(Verdict::NotInvertible(Refutation::Exhausted { explored: nodes.len() }))
    }

    pub fn is_invertible(&self, sigma: &Endomorphism) -> Result<bool> {
        Ok(self.decide(sigma)?.is_invertible())
    }

    /// `σ⁻¹`, assembled from the witness.
    pub fn invert(&self, sigma: &Endomorphism) -> Result<Endomorphism> {
        match self.decide(sigma)? {
            Verdict::Invertible(w) => Ok(w.product()),
            Verdict::NotInvertible(_) => Err(Error::NotInvertible),
        }
    }
}

/// Class representative: each image replaced by the smaller of `w` and
/// `w⁻¹`, then the three sorted.
fn canonical(images: &[Word; 3]) -> [Word; 3] {
    let mut out = images.clone().map(|w| {
        let inv = w.inverse();
        if inv < w {
            inv
        } else {
            w
        }
    });
    out.sort();
    out
}

fn class_moves(images: &[Word; 3], len: usize) -> Vec<[Word; 3]> {
    let mut out = Vec::with_capacity(24);
    for i in 0..3 {
        for j in (0..3).filter(|&j| j != i) {
            for wj in [images[j].clone(), images[j].inverse()] {
                for replaced in [images[i].concat(&wj), wj.concat(&images[i])] {
                    if len - images[i].len() + replaced.len() > len {
                        continue;
                    }
                    let mut next = images.clone();
                    next[i] = replaced;
                    out.push(canonical(&next));
                }
            }
        }
    }
    out
}

/// The signed permutations as endomorphisms, each with a word in `π₁, π₂, ι₁`
/// whose product is that endomorphism.
fn signed_permutations() -> &'static HashMap<Endomorphism, Vec<BasicGenerator>> {
    static TABLE: OnceLock<HashMap<Endomorphism, Vec<BasicGenerator>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let moves = [BasicGenerator::Pi1, BasicGenerator::Pi2, BasicGenerator::Iota1];
        let mut order = vec![Endomorphism::identity()];
        let mut table = HashMap::from([(Endomorphism::identity(), Vec::new())]);
        let mut head = 0;
        while head < order.len() {
            let e = order[head].clone();
            for g in moves {
                let next = e.right_move(g);
                if !table.contains_key(&next) {
                    let mut w = table[&e].clone();
                    w.push(g);
                    table.insert(next.clone(), w);
                    order.push(next);
                }
            }
            head += 1;
        }
        table
    })
}

/// Turns a path of classes into concrete moves starting from `sigma`.
///
/// Replacing `σ(p)` by `σ(p)·σ(q)^δ` is `σ ∘ h ∘ φ_r ∘ h⁻¹` for the signed
/// permutation `h: a ↦ p, b ↦ q^δ, c ↦ r`; the trailing `h⁻¹` is deferred,
/// and a single signed permutation is undone at the end.
fn lift_path(sigma: &Endomorphism, classes: &[&[Word; 3]]) -> NielsenWitness {
    let group = signed_permutations();
    let mut steps = Vec::new();
    let mut current = sigma.clone();
    for class in classes {
        let (h, phi) = concrete_move(&current, class).expect("every class move has a concrete representative");
        steps.extend(group[&h].iter().copied());
        steps.push(phi);
        current = current.compose(&h).right_move(phi);
    }
    let undo = group
        .keys()
        .find(|h| current.compose(h).is_identity())
        .expect("the identity class holds only signed permutations");
    steps.extend(group[undo].iter().copied());
    NielsenWitness { steps }
}

fn concrete_move(current: &Endomorphism, class: &[Word; 3]) -> Option<(Endomorphism, BasicGenerator)> {
    let images = current.images();
    for p in Letter::ALL {
        for q in Letter::ALL.into_iter().filter(|&q| q != p) {
            let r = Letter::ALL.into_iter().find(|&r| r != p && r != q).expect("three letters");
            for wq in [Word::letter(q), Word::letter(q).inverse()] {
                let image_q = current.apply(&wq);
                for (phi, replaced) in [
                    (BasicGenerator::PhiR, images[p.index()].concat(&image_q)),
                    (BasicGenerator::PhiL, image_q.concat(&images[p.index()])),
                ] {
                    let mut next = images.clone();
                    next[p.index()] = replaced;
                    if canonical(&next) == *class {
                        let h = Endomorphism::new(Word::letter(p), wq, Word::letter(r));
                        return Some((h, phi));
                    }
                }
            }
        }
    }
    None
}

/// Decision with the default engine.
pub fn decide(sigma: &Endomorphism) -> Result<Verdict> {
    NielsenEngine::default().decide(sigma)
}

pub fn is_invertible(sigma: &Endomorphism) -> Result<bool> {
    NielsenEngine::default().is_invertible(sigma)
}

pub fn invert(sigma: &Endomorphism) -> Result<Endomorphism> {
    NielsenEngine::default().invert(sigma)
}

/// Convenience for substitutions.
pub fn is_invertible_substitution(sigma: &Substitution) -> Result<bool> {
    is_invertible(sigma.as_endo())
}

/// Replays a witness, checking the length condition at every step and that
/// the final state is the identity.
pub fn check_witness(sigma: &Endomorphism, witness: &NielsenWitness) -> bool {
    let mut current = sigma.clone();
    for &g in &witness.steps {
        let next = current.compose(&g.to_endo());
        if next.length() > current.length() {
            return false;
        }
        current = next;
    }
    current.is_identity()
}
