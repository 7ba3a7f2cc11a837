//! Reduced words in the free group on `{a, b, c}`.
//!
//! Text syntax: lowercase `a b c` are the positive letters, uppercase
//! `A B C` their inverses, and the empty string is the empty word.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One of the three generators. The derived order `A < B < C` is the global
/// tie-breaker.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
    C,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::A, Letter::B, Letter::C];

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Letter {
        Self::ALL[i]
    }

    pub fn as_char(self) -> char {
        (b'a' + self as u8) as char
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'c' => Some(Letter::C),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A generator or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedLetter {
    pub letter: Letter,
    pub inverse: bool,
}

impl SignedLetter {
    pub const fn pos(letter: Letter) -> Self {
        SignedLetter {
            letter,
            inverse: false,
        }
    }

    pub const fn neg(letter: Letter) -> Self {
        SignedLetter {
            letter,
            inverse: true,
        }
    }

    #[inline]
    pub fn inv(self) -> Self {
        SignedLetter {
            letter: self.letter,
            inverse: !self.inverse,
        }
    }

    #[inline]
    pub fn is_positive(self) -> bool {
        !self.inverse
    }

    /// +1 or -1.
    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn as_char(self) -> char {
        let c = self.letter.as_char();
        if self.inverse {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    pub fn from_char(c: char) -> Option<Self> {
        if let Some(l) = Letter::from_char(c) {
            Some(Self::pos(l))
        } else {
            Letter::from_char(c.to_ascii_lowercase())
                .filter(|_| c.is_ascii_uppercase())
                .map(Self::neg)
        }
    }
}

impl From<Letter> for SignedLetter {
    fn from(l: Letter) -> Self {
        SignedLetter::pos(l)
    }
}

impl fmt::Display for SignedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Sign pattern of a reduced word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Empty,
    Positive,
    Negative,
    Mixed,
}

/// A freely reduced word. Every constructor reduces, so two words are equal
/// as group elements iff they are structurally equal.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<SignedLetter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Free reduction of an arbitrary sequence of signed letters.
    pub fn reduce<I: IntoIterator<Item = SignedLetter>>(raw: I) -> Self {
        let mut out: Vec<SignedLetter> = Vec::new();
        for x in raw {
            push_reduced(&mut out, x);
        }
        Word(out)
    }

    /// A positive word from its letters (always reduced).
    pub fn positive<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        Word(letters.into_iter().map(SignedLetter::pos).collect())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![SignedLetter::pos(l)])
    }

    pub fn letters(&self) -> &[SignedLetter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks the no-adjacent-inverse-pair invariant.
    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inv())
    }

    /// The reduced product `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.0.clone();
        out.reserve(other.len());
        for &x in &other.0 {
            push_reduced(&mut out, x);
        }
        Word(out)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|x| x.inv()).collect())
    }

    /// `self^n` for `n >= 0`.
    pub fn pow(&self, n: usize) -> Word {
        let mut out = Word::empty();
        for _ in 0..n {
            out = out.concat(self);
        }
        out
    }

    /// Algebraic number of occurrences of `x`.
    pub fn letter_count(&self, x: Letter) -> i64 {
        self.0
            .iter()
            .filter(|s| s.letter == x)
            .map(|s| s.exponent())
            .sum()
    }

    /// `[|w|_a, |w|_b, |w|_c]`.
    pub fn abelianization(&self) -> [i64; 3] {
        let mut out = [0; 3];
        for s in &self.0 {
            out[s.letter.index()] += s.exponent();
        }
        out
    }

    pub fn sign(&self) -> Sign {
        if self.0.is_empty() {
            Sign::Empty
        } else if self.0.iter().all(|s| s.is_positive()) {
            Sign::Positive
        } else if self.0.iter().all(|s| !s.is_positive()) {
            Sign::Negative
        } else {
            Sign::Mixed
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Positive
    }

    /// Lengths of the maximal runs of equal sign, with the sign of each run.
    /// `+−+` words give `[(true, _), (false, _), (true, _)]`.
    pub fn sign_runs(&self) -> Vec<(bool, usize)> {
        let mut runs: Vec<(bool, usize)> = Vec::new();
        for s in &self.0 {
            match runs.last_mut() {
                Some((p, n)) if *p == s.is_positive() => *n += 1,
                _ => runs.push((s.is_positive(), 1)),
            }
        }
        runs
    }

    pub fn first_letter(&self) -> Result<SignedLetter> {
        self.0.first().copied().ok_or(Error::EmptyWord)
    }

    pub fn last_letter(&self) -> Result<SignedLetter> {
        self.0.last().copied().ok_or(Error::EmptyWord)
    }

    /// `p ◁ self`: `self = p·r` as a reduced expression.
    pub fn has_prefix(&self, p: &Word) -> bool {
        self.0.starts_with(&p.0)
    }

    /// `s ▷ self`: `self = r·s` as a reduced expression.
    pub fn has_suffix(&self, s: &Word) -> bool {
        self.0.ends_with(&s.0)
    }

    pub fn has_proper_prefix(&self, p: &Word) -> bool {
        p.len() < self.len() && self.has_prefix(p)
    }

    pub fn has_proper_suffix(&self, s: &Word) -> bool {
        s.len() < self.len() && self.has_suffix(s)
    }

    /// Sub-word by letter range. Subwords of reduced words are reduced.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    /// Remainder after removing a known prefix of length `n`.
    pub fn drop_front(&self, n: usize) -> Word {
        self.slice(n..self.len())
    }

    /// Remainder after removing a known suffix of length `n`.
    pub fn drop_back(&self, n: usize) -> Word {
        self.slice(0..self.len() - n)
    }

    /// Positive letters of a positive word; `None` if any letter is inverted.
    pub fn positive_letters(&self) -> Option<Vec<Letter>> {
        self.0
            .iter()
            .map(|s| s.is_positive().then_some(s.letter))
            .collect()
    }
}

#[inline]
fn push_reduced(out: &mut Vec<SignedLetter>, x: SignedLetter) {
    if out.last() == Some(&x.inv()) {
        out.pop();
    } else {
        out.push(x);
    }
}

/// `p ◁ w`.
pub fn is_prefix(p: &Word, w: &Word) -> bool {
    w.has_prefix(p)
}

/// `s ▷ w`.
pub fn is_suffix(s: &Word, w: &Word) -> bool {
    w.has_suffix(s)
}

/// Longest common prefix of a set of words.
pub fn common_prefix(ws: &[Word]) -> Word {
    let Some((first, rest)) = ws.split_first() else {
        return Word::empty();
    };
    let mut n = first.len();
    for w in rest {
        n = n.min(
            first
                .0
                .iter()
                .zip(&w.0)
                .take_while(|(x, y)| x == y)
                .count(),
        );
    }
    first.slice(0..n)
}

/// Longest common suffix of a set of words.
pub fn common_suffix(ws: &[Word]) -> Word {
    let Some((first, rest)) = ws.split_first() else {
        return Word::empty();
    };
    let mut n = first.len();
    for w in rest {
        n = n.min(
            first
                .0
                .iter()
                .rev()
                .zip(w.0.iter().rev())
                .take_while(|(x, y)| x == y)
                .count(),
        );
    }
    first.slice(first.len() - n..first.len())
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "ε")
        } else {
            write!(f, "{self}")
        }
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses and reduces; rejects anything outside `abcABC`.
    fn from_str(s: &str) -> Result<Word> {
        let raw = s
            .chars()
            .map(|c| {
                SignedLetter::from_char(c).ok_or_else(|| Error::Parse(format!("invalid letter {c:?} in word {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word::reduce(raw))
    }
}

/// Shorthand used throughout the tests: parse a literal known to be valid.
pub fn w(s: &str) -> Word {
    s.parse().expect("valid word literal")
}

/// All positive words of length exactly `n`, in lexicographic order.
pub fn positive_words_of_len(n: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * 3);
        for u in &out {
            for l in Letter::ALL {
                let mut v = u.0.clone();
                v.push(SignedLetter::pos(l));
                next.push(Word(v));
            }
        }
        out = next;
    }
    out
}

/// All positive words with `lo <= len <= hi`, shortest first.
pub fn positive_words(lo: usize, hi: usize) -> Vec<Word> {
    (lo..=hi).flat_map(positive_words_of_len).collect()
}
