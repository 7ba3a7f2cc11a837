//! Factorization of non-negative integer 3×3 matrices into non-negative
//! elementary matrices (permutation matrices and transvections `I + E_ij`).
//!
//! Using `P·T(i,j)·P⁻¹ = T(p(i),p(j))`, any such product can be written as
//! transvections followed by a single permutation matrix. The search
//! right-divides by transvections (subtracting column `i` from column `j`)
//! while the result stays non-negative; the entry sum drops at every step,
//! so the depth-first search terminates. Failed matrices are memoized.

use std::collections::HashSet;
use std::fmt;

use crate::endo::{compose_all, Endomorphism, Fib, Permutation, Side, Substitution};
use crate::error::{Error, Result};
use crate::matrix::Matrix3;
use crate::word::Letter;
use crate::SubstitutionMatrix;

pub const DEFAULT_NODE_BUDGET: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ElementaryFactor {
    PermutationMatrix(Permutation),
    /// Identity plus a unit at `(row, col)`, `row ≠ col`.
    Transvection { row: Letter, col: Letter },
}

impl ElementaryFactor {
    pub fn matrix(&self) -> SubstitutionMatrix {
        match self {
            ElementaryFactor::PermutationMatrix(p) => p.matrix(),
            ElementaryFactor::Transvection { row, col } => Matrix3::transvection(*row, *col),
        }
    }

    /// The generator substitution with this matrix: a permutation, or
    /// `col ↦ col·row` for a transvection.
    pub fn substitution(&self) -> Substitution {
        match self {
            ElementaryFactor::PermutationMatrix(p) => p.to_substitution(),
            ElementaryFactor::Transvection { row, col } => Fib::new(*col, *row, Side::Right)
                .expect("transvection indices differ")
                .to_substitution(),
        }
    }
}

impl fmt::Display for ElementaryFactor {
    /// `T(2,1)` with 1-based indices, `P(bca)` for permutations.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementaryFactor::PermutationMatrix(p) => write!(f, "P({p})"),
            ElementaryFactor::Transvection { row, col } => write!(f, "T({},{})", row.index() + 1, col.index() + 1),
        }
    }
}

/// Ordered product of factors.
pub fn product(factors: &[ElementaryFactor]) -> SubstitutionMatrix {
    factors
        .iter()
        .fold(Matrix3::identity(), |acc, f| acc.mul(&f.matrix()))
}

#[derive(Clone, Copy, Debug)]
pub struct Factorizer {
    pub budget: usize,
}

impl Default for Factorizer {
    fn default() -> Self {
        Factorizer {
            budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl Factorizer {
    pub fn with_budget(budget: usize) -> Self {
        Factorizer { budget }
    }

    /// Factors `m` as transvections followed by at most one permutation
    /// matrix, or `None` when no non-negative elementary factorization exists.
    pub fn factor(&self, m: &SubstitutionMatrix) -> Result<Option<Vec<ElementaryFactor>>> {
        if !m.is_nonnegative() {
            return Err(Error::NegativeEntry);
        }
        if (0..3).any(|c| m.column(c).iter().all(|&x| x == 0)) || !m.is_unimodular() {
            return Ok(None);
        }
        let mut search = Search {
            failed: HashSet::new(),
            visited: 0,
            budget: self.budget,
        };
        // right-division gives m = P·T₁·…·T_k
        let Some((perm, transvections)) = search.run(m)? else {
            return Ok(None);
        };
        // move P to the right: P·T(i,j) = T(p(i),p(j))·P
        let mut out: Vec<ElementaryFactor> = transvections
            .into_iter()
            .map(|(i, j)| ElementaryFactor::Transvection {
                row: perm.apply(i),
                col: perm.apply(j),
            })
            .collect();
        if !perm.is_identity() {
            out.push(ElementaryFactor::PermutationMatrix(perm));
        }
        Ok(Some(out))
    }

    /// The invertible substitution built from the factorization, if any.
    pub fn witness_substitution(&self, m: &SubstitutionMatrix) -> Result<Option<Substitution>> {
        Ok(self.factor(m)?.map(|fs| {
            let gens: Vec<Endomorphism> = fs.iter().map(|f| f.substitution().into_endo()).collect();
            Substitution::new(compose_all(&gens)).expect("products of generators are substitutions")
        }))
    }
}

/// `P` and the transvection indices of `m = P · T(i₁,j₁) · … · T(i_k,j_k)`.
type RightDivision = (Permutation, Vec<(Letter, Letter)>);

struct Search {
    failed: HashSet<SubstitutionMatrix>,
    visited: usize,
    budget: usize,
}

impl Search {
    fn run(&mut self, m: &SubstitutionMatrix) -> Result<Option<RightDivision>> {
        if let Some(p) = m.as_permutation() {
            return Ok(Some((Permutation::new(p).expect("permutation matrix"), Vec::new())));
        }
        if self.failed.contains(m) {
            return Ok(None);
        }
        self.visited += 1;
        if self.visited > self.budget {
            return Err(Error::Budget { limit: self.budget });
        }
        for i in Letter::ALL {
            for j in Letter::ALL.into_iter().filter(|&j| j != i) {
                let reduced = m.sub_column(i.index(), j.index());
                if !reduced.is_nonnegative() {
                    continue;
                }
                if let Some((p, mut ts)) = self.run(&reduced)? {
                    ts.push((i, j));
                    return Ok(Some((p, ts)));
                }
            }
        }
        self.failed.insert(*m);
        Ok(None)
    }
}

pub fn factor_elementary(m: &SubstitutionMatrix) -> Result<Option<Vec<ElementaryFactor>>> {
    Factorizer::default().factor(m)
}

/// Whether `m` is the matrix of some invertible substitution; equivalently,
/// a product of non-negative elementary matrices.
pub fn is_substitution_matrix_of_invertible(m: &SubstitutionMatrix) -> Result<bool> {
    Ok(factor_elementary(m)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    type M = SubstitutionMatrix;

    #[test]
    fn identity_has_empty_factorization() {
        assert_eq!(factor_elementary(&M::identity()).unwrap(), Some(vec![]));
    }

    #[test]
    fn single_transvection() {
        let m = M::new([[1, 0, 0], [1, 1, 0], [0, 0, 1]]);
        let fs = factor_elementary(&m).unwrap().unwrap();
        assert_eq!(fs, vec![ElementaryFactor::Transvection { row: B, col: A }]);
        assert_eq!(fs[0].to_string(), "T(2,1)");
    }

    #[test]
    fn counterexample_matrix() {
        let m = M::new([[3, 0, 1], [0, 2, 1], [1, 1, 1]]);
        assert_eq!(m.det(), 1);
        assert_eq!(factor_elementary(&m).unwrap(), None);
        assert!(!is_substitution_matrix_of_invertible(&m).unwrap());
    }

    #[test]
    fn permutation_and_witness() {
        let p: Permutation = "bca".parse().unwrap();
        let fs = factor_elementary(&p.matrix()).unwrap().unwrap();
        assert_eq!(fs, vec![ElementaryFactor::PermutationMatrix(p)]);
        assert_eq!(fs[0].to_string(), "P(bca)");

        let s: Substitution = "ab,acb,acc".parse().unwrap();
        let m = s.matrix();
        let fs = factor_elementary(&m).unwrap().unwrap();
        assert_eq!(product(&fs), m);
        let witness = Factorizer::default().witness_substitution(&m).unwrap().unwrap();
        assert_eq!(witness.matrix(), m);
    }

    #[test]
    fn transvections_are_fibonacci_matrices() {
        for f in Fib::all() {
            let t = ElementaryFactor::Transvection {
                row: f.neighbor,
                col: f.target,
            };
            assert_eq!(t.matrix(), f.to_endo().matrix());
        }
    }

    #[test]
    fn rejects_negative_and_degenerate() {
        assert_eq!(
            factor_elementary(&M::new([[1, -1, 0], [0, 1, 0], [0, 0, 1]])),
            Err(Error::NegativeEntry)
        );
        assert_eq!(factor_elementary(&M::new([[1, 0, 0], [0, 1, 0], [0, 0, 0]])).unwrap(), None);
        assert_eq!(factor_elementary(&M::new([[2, 1, 0], [1, 2, 0], [0, 0, 1]])).unwrap(), None);
    }

    #[test]
    fn budget_error() {
        let tiny = Factorizer::with_budget(1);
        let r = tiny.factor(&M::new([[2, 1, 0], [1, 1, 0], [0, 0, 1]]));
        assert_eq!(r, Err(Error::Budget { limit: 1 }));
    }
}
