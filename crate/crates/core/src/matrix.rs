//! Exact 3×3 matrices over an integer-like scalar.

use std::fmt;
use std::ops::Mul;

use num_traits::{One, Signed, Zero};

use crate::word::Letter;

/// Row-major 3×3 matrix. Indexing by [`Letter`] follows the substitution
/// matrix layout: row = counted letter, column = image letter.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix3<T> {
    pub rows: [[T; 3]; 3],
}

impl<T> Matrix3<T> {
    pub const fn new(rows: [[T; 3]; 3]) -> Self {
        Matrix3 { rows }
    }
}

impl<T: Copy> Matrix3<T> {
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> T {
        self.rows[row][col]
    }

    pub fn at(&self, row: Letter, col: Letter) -> T {
        self.rows[row.index()][col.index()]
    }

    pub fn column(&self, col: usize) -> [T; 3] {
        [self.rows[0][col], self.rows[1][col], self.rows[2][col]]
    }

    pub fn transpose(&self) -> Self {
        let r = &self.rows;
        Matrix3::new([
            [r[0][0], r[1][0], r[2][0]],
            [r[0][1], r[1][1], r[2][1]],
            [r[0][2], r[1][2], r[2][2]],
        ])
    }

    pub fn entries(&self) -> impl Iterator<Item = T> + '_ {
        self.rows.iter().flat_map(|r| r.iter().copied())
    }

    /// From nine entries in row-major order.
    pub fn from_row_major(e: [T; 9]) -> Self {
        Matrix3::new([[e[0], e[1], e[2]], [e[3], e[4], e[5]], [e[6], e[7], e[8]]])
    }
}

impl<T: Copy + Zero + One> Matrix3<T> {
    pub fn identity() -> Self {
        let (o, z) = (T::one(), T::zero());
        Matrix3::new([[o, z, z], [z, o, z], [z, z, o]])
    }

    pub fn zero() -> Self {
        Matrix3::new([[T::zero(); 3]; 3])
    }

    /// Matrix of the letter map `x ↦ images[x]`: column `x` is the unit
    /// vector of `images[x]`.
    pub fn permutation(images: [Letter; 3]) -> Self {
        let mut m = Self::zero();
        for (col, img) in images.iter().enumerate() {
            m.rows[img.index()][col] = T::one();
        }
        m
    }

    /// `I + E_{row,col}`, `row ≠ col`.
    pub fn transvection(row: Letter, col: Letter) -> Self {
        assert_ne!(row, col, "transvection needs distinct indices");
        let mut m = Self::identity();
        m.rows[row.index()][col.index()] = T::one();
        m
    }

    pub fn is_identity(&self) -> bool
    where
        T: PartialEq,
    {
        *self == Self::identity()
    }

    /// True for 0/1 matrices with exactly one 1 in each row and column.
    pub fn is_permutation(&self) -> bool
    where
        T: PartialEq,
    {
        let ok_lines = |line: [T; 3]| {
            let ones = line.iter().filter(|&&x| x == T::one()).count();
            let zeros = line.iter().filter(|&&x| x == T::zero()).count();
            ones == 1 && zeros == 2
        };
        (0..3).all(|i| ok_lines(self.rows[i]) && ok_lines(self.column(i)))
    }

    /// Inverse of [`Matrix3::permutation`] for permutation matrices.
    pub fn as_permutation(&self) -> Option<[Letter; 3]>
    where
        T: PartialEq,
    {
        if !self.is_permutation() {
            return None;
        }
        let mut out = [Letter::A; 3];
        for (col, slot) in out.iter_mut().enumerate() {
            let row = (0..3).find(|&r| self.rows[r][col] == T::one())?;
            *slot = Letter::from_index(row);
        }
        Some(out)
    }
}

impl<T> Matrix3<T>
where
    T: Copy + Zero + One + Mul<Output = T> + std::ops::Sub<Output = T>,
{
    /// Exact cofactor expansion along the first row.
    pub fn det(&self) -> T {
        let r = &self.rows;
        r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1])
            - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0])
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = T::zero();
                for k in 0..3 {
                    acc = acc + self.rows[i][k] * other.rows[k][j];
                }
                out.rows[i][j] = acc;
            }
        }
        out
    }

    /// Subtracts column `src` from column `dst`, i.e. right-multiplies by
    /// the inverse of `transvection(src, dst)`.
    pub fn sub_column(&self, src: usize, dst: usize) -> Self {
        let mut out = *self;
        for i in 0..3 {
            out.rows[i][dst] = out.rows[i][dst] - out.rows[i][src];
        }
        out
    }
}

impl<T: Copy + Signed + PartialOrd> Matrix3<T> {
    pub fn is_nonnegative(&self) -> bool {
        self.entries().all(|x| !x.is_negative())
    }

    /// `|det| == 1`.
    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == T::one()
    }
}

impl<T> Mul for Matrix3<T>
where
    T: Copy + Zero + One + Mul<Output = T> + std::ops::Sub<Output = T>,
{
    type Output = Matrix3<T>;

    fn mul(self, rhs: Self) -> Self {
        Matrix3::mul(&self, &rhs)
    }
}

impl<T: fmt::Display> fmt::Display for Matrix3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{} {} {}", row[0], row[1], row[2])?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::*;

    type M = Matrix3<i64>;

    #[test]
    fn determinant() {
        assert_eq!(M::identity().det(), 1);
        let m = M::new([[3, 0, 1], [0, 2, 1], [1, 1, 1]]);
        assert_eq!(m.det(), 1);
        assert_eq!(M::new([[1, 0, 1], [1, 1, 0], [1, 0, 1]]).det(), 0);
        assert_eq!(M::permutation([B, A, C]).det(), -1);
        assert_eq!(M::permutation([B, C, A]).det(), 1);
    }

    #[test]
    fn transvection_layout() {
        // φ_r = (ab, b, c): column a counts one a and one b
        assert_eq!(M::transvection(B, A), M::new([[1, 0, 0], [1, 1, 0], [0, 0, 1]]));
        let t = M::transvection(A, C);
        assert_eq!(t.det(), 1);
        assert_eq!(t.sub_column(0, 2), M::identity());
    }

    #[test]
    fn permutation_roundtrip() {
        for p in [[A, B, C], [B, C, A], [C, B, A]] {
            let m = M::permutation(p);
            assert!(m.is_permutation());
            assert_eq!(m.as_permutation(), Some(p));
        }
        assert!(!M::transvection(A, B).is_permutation());
    }

    #[test]
    fn generic_over_scalar() {
        let m = Matrix3::<i128>::new([[2, 1, 0], [1, 1, 0], [0, 0, 1]]);
        assert_eq!(m.det(), 1);
        assert_eq!((m * Matrix3::identity()), m);
        let big = Matrix3::<i32>::transvection(C, B);
        assert!(big.is_unimodular() && big.is_nonnegative());
    }
}
