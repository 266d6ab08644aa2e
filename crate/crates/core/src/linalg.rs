//! Exact fields and sparse row reduction.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
}

/// Integers modulo the Mersenne prime `2^61 − 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp(u64);

impl Fp {
    pub const P: u64 = (1 << 61) - 1;

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Fp {
        let mut base = self;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = Field::mul(&acc, &base);
            }
            base = Field::mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn from_i64(v: i64) -> Self {
        Fp(v.rem_euclid(Self::P as i64) as u64)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= Self::P { s - Self::P } else { s })
    }
    fn sub(&self, o: &Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + Self::P - o.0 })
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % Self::P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { Self::P - self.0 })
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        self.pow(Self::P - 2)
    }
}

/// Sparse vector: strictly increasing column indices, no stored zeros.
pub type SparseRow<F> = Vec<(usize, F)>;

pub fn sparse_from_pairs<F: Field>(mut pairs: Vec<(usize, F)>) -> SparseRow<F> {
    pairs.sort_by_key(|p| p.0);
    let mut out: SparseRow<F> = Vec::with_capacity(pairs.len());
    for (c, v) in pairs {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = last.1.add(&v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

fn axpy<F: Field>(row: &SparseRow<F>, coeff: &F, pivot: &SparseRow<F>) -> SparseRow<F> {
    // row − coeff · pivot
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut a, mut b) = (0, 0);
    while a < row.len() || b < pivot.len() {
        let ca = row.get(a).map(|p| p.0).unwrap_or(usize::MAX);
        let cb = pivot.get(b).map(|p| p.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(row[a].clone());
            a += 1;
        } else if cb < ca {
            out.push((cb, coeff.mul(&pivot[b].1).neg()));
            b += 1;
        } else {
            let v = row[a].1.sub(&coeff.mul(&pivot[b].1));
            if !v.is_zero() {
                out.push((ca, v));
            }
            a += 1;
            b += 1;
        }
    }
    out
}

/// Row echelon form built incrementally. Each stored row has leading
/// coefficient 1 at its pivot column and no other entries left of it.
#[derive(Debug, Clone)]
pub struct Echelon<F> {
    ncols: usize,
    rows: BTreeMap<usize, SparseRow<F>>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.rows.contains_key(&c)
    }

    /// Add a row; returns whether it was independent of the current rows.
    pub fn insert(&mut self, row: SparseRow<F>) -> bool {
        let mut row = row;
        loop {
            let Some((lead, coeff)) = row.first().cloned() else {
                return false;
            };
            debug_assert!(lead < self.ncols);
            match self.rows.get(&lead) {
                Some(p) => row = axpy(&row, &coeff, p),
                None => {
                    let inv = coeff.inv();
                    let row = row.into_iter().map(|(c, v)| (c, v.mul(&inv))).collect();
                    self.rows.insert(lead, row);
                    return true;
                }
            }
        }
    }

    pub fn insert_dense(&mut self, v: &[F]) -> bool {
        let row = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(c, x)| (c, x.clone()))
            .collect();
        self.insert(row)
    }

    /// Reduce a dense vector modulo the row space; afterwards it vanishes at
    /// every pivot column.
    pub fn reduce_dense(&self, v: &mut [F]) {
        for (&p, row) in &self.rows {
            if v[p].is_zero() {
                continue;
            }
            let coeff = v[p].clone();
            for (c, x) in row {
                v[*c] = v[*c].sub(&coeff.mul(x));
            }
        }
    }

    pub fn contains_dense(&self, v: &[F]) -> bool {
        let mut w = v.to_vec();
        self.reduce_dense(&mut w);
        w.iter().all(|x| x.is_zero())
    }

    /// Basis of `{x : row · x = 0 for every row}`, one vector per free column,
    /// normalized to 1 at that column and 0 at the other free columns.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.rows.contains_key(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![F::zero(); self.ncols];
                x[f] = F::one();
                for (&p, row) in self.rows.iter().rev() {
                    let mut acc = F::zero();
                    for (c, v) in row.iter().skip(1) {
                        if !x[*c].is_zero() {
                            acc = acc.add(&v.mul(&x[*c]));
                        }
                    }
                    x[p] = acc.neg();
                }
                x
            })
            .collect()
    }

    /// The stored rows as dense vectors.
    pub fn basis(&self) -> Vec<Vec<F>> {
        self.rows
            .values()
            .map(|row| {
                let mut v = vec![F::zero(); self.ncols];
                for (c, x) in row {
                    v[*c] = x.clone();
                }
                v
            })
            .collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.rows.contains_key(c)).collect()
    }
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Mat<F> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m.set(k, k, F::one());
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn mul(&self, o: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = Mat::<F>::zeros(self.rows, o.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..o.cols {
                    let b = o.get(k, c);
                    if !b.is_zero() {
                        let v = out.get(r, c).add(&a.mul(b));
                        out.set(r, c, v);
                    }
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn trace(&self) -> F {
        (0..self.rows.min(self.cols)).fold(F::zero(), |acc, k| acc.add(self.get(k, k)))
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for r in 0..self.rows {
            e.insert_dense(&self.data[r * self.cols..(r + 1) * self.cols]);
        }
        e.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_i64(v)
    }

    #[test]
    fn kernel_of_small_system() {
        // x0 − x1 = 0, x1 − x2 = 0 over four unknowns
        let mut e = Echelon::<BigRational>::new(4);
        assert!(e.insert(vec![(0, q(1)), (1, q(-1))]));
        assert!(e.insert(vec![(1, q(1)), (2, q(-1))]));
        assert!(!e.insert(vec![(0, q(2)), (2, q(-2))]));
        let k = e.kernel_basis();
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![q(1), q(1), q(1), q(0)]);
        assert_eq!(k[1], vec![q(0), q(0), q(0), q(1)]);
    }

    #[test]
    fn prime_field_arithmetic() {
        let a = Fp::from_i64(-3);
        assert_eq!(a.add(&Fp::from_i64(3)), Fp::zero());
        assert_eq!(a.mul(&a.inv()), Fp::one());
    }

    #[test]
    fn reduce_and_membership() {
        let mut e = Echelon::<Fp>::new(3);
        e.insert(vec![(0, Fp::one()), (2, Fp::one())]);
        assert!(e.contains_dense(&[Fp::from_i64(5), Fp::zero(), Fp::from_i64(5)]));
        assert!(!e.contains_dense(&[Fp::one(), Fp::zero(), Fp::zero()]));
    }

    #[test]
    fn matrix_rank_and_product() {
        let mut m = Mat::<BigRational>::zeros(2, 2);
        m.set(0, 1, q(1));
        assert_eq!(m.rank(), 1);
        assert!(m.mul(&m).is_zero());
        assert_eq!(Mat::<BigRational>::identity(3).trace(), q(3));
    }
}
