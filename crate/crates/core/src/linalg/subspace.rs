use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A subspace of `Tⁿ` held in canonical form: the nonzero rows of the
/// reduced row echelon form of any spanning set.
///
/// Canonical form makes equality of subspaces plain structural equality.
/// Basis vector `i` is `1` at `pivots[i]` and `0` at every other pivot, so
/// the coordinates of a member vector are its entries at the pivots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SubspaceBasis<T> {
    ambient: usize,
    vectors: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Scalar> SubspaceBasis<T> {
    pub fn span(ambient: usize, vectors: &[Vec<T>]) -> Self {
        let rows = Matrix::from_rows_with_cols(vectors.to_vec(), ambient).expect("vectors of ambient length");
        let ech = rows.rref();
        let vectors = (0..ech.pivots.len()).map(|i| ech.matrix.row(i).to_vec()).collect();
        Self { ambient, vectors, pivots: ech.pivots }
    }

    pub fn zero(ambient: usize) -> Self {
        Self { ambient, vectors: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, &Matrix::<T>::identity(ambient).to_rows())
    }

    pub fn column_space(m: &Matrix<T>) -> Self {
        Self::span(m.rows(), &m.transpose().to_rows())
    }

    /// Null space of `m`, from the free columns of its echelon form.
    pub fn kernel(m: &Matrix<T>) -> Self {
        let ech = m.rref();
        let n = m.cols();
        let free: Vec<usize> = (0..n).filter(|c| !ech.pivots.contains(c)).collect();
        let vectors: Vec<Vec<T>> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![T::zero(); n];
                v[fc] = T::one();
                for (r, &pc) in ech.pivots.iter().enumerate() {
                    v[pc] = -ech.matrix[(r, fc)].clone();
                }
                v
            })
            .collect();
        Self::span(n, &vectors)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<T>] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The basis as the columns of an `ambient × dim` matrix: an injective
    /// linear map onto the subspace.
    pub fn as_matrix(&self) -> Matrix<T> {
        Matrix::from_columns(&self.vectors, self.ambient)
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[T]) -> Option<Vec<T>> {
        let coords: Vec<T> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let rebuilt = (0..self.ambient).map(|j| {
            self.vectors.iter().zip(&coords).fold(T::zero(), |acc, (b, c)| acc + b[j].clone() * c.clone())
        });
        rebuilt.zip(v).all(|(a, b)| &a == b).then_some(coords)
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.vectors.iter().all(|v| other.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Self {
        let all: Vec<Vec<T>> = self.vectors.iter().chain(&other.vectors).cloned().collect();
        Self::span(self.ambient, &all)
    }

    /// Whether `self ⊕ other` is the whole ambient space.
    pub fn is_complement(&self, other: &Self) -> bool {
        self.dim() + other.dim() == self.ambient && self.sum(other).dim() == self.ambient
    }

    /// The subspace `m(self)` for a matrix with `ambient` columns.
    pub fn image_under(&self, m: &Matrix<T>) -> Self {
        let images: Vec<Vec<T>> = self.vectors.iter().map(|v| m.apply(v)).collect();
        Self::span(m.rows(), &images)
    }
}
