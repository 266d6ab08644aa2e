//! Matrix representations of string modules and exact Hom/Ext computations.
//!
//! `Hom(M,N)` is the kernel of `d: ⊕_v Hom(M_v,N_v) → ⊕_α Hom(M_{sα},N_{tα})`,
//! `f ↦ (N_α f_{sα} − f_{tα} M_α)`, and `Ext(M,N)` is its cokernel. This is
//! `Hom(−,N)` applied to the standard projective resolution
//! `0 → ⊕_α M_{sα}⊗P_{tα} → ⊕_v M_v⊗P_v → M → 0`, so extension classes are
//! cocycles modulo the image of `d` and functoriality is blockwise.

use thiserror::Error;

use crate::linalg::{sparse_from_pairs, Echelon, Field, Mat, SparseRow};
use crate::quiver::{Orientation, Shape};
use crate::strings::StringModule;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("negative Ext dimension {0}: oracle inconsistency")]
    NegativeExt(i64),
    #[error("Euler route gives ext {euler}, cokernel route gives {cokernel}")]
    RouteMismatch { euler: usize, cokernel: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Representation<F> {
    /// Dimension at vertex `v` is `dims[v-1]`.
    pub dims: Vec<usize>,
    /// Matrix of arrow `k` is `maps[k-1]`, of shape `dim t × dim s`.
    pub maps: Vec<Mat<F>>,
}

/// 0/1 representation with one basis vector per vertex occurrence, in walk order.
pub fn realize<F: Field>(q: &Orientation, m: &StringModule) -> Representation<F> {
    let verts = m.vertices(q);
    let mut dims = vec![0; q.n()];
    let mut local = Vec::with_capacity(verts.len());
    for &v in &verts {
        local.push(dims[v - 1]);
        dims[v - 1] += 1;
    }
    let mut maps: Vec<Mat<F>> = q
        .arrows()
        .iter()
        .map(|a| Mat::zeros(dims[a.target - 1], dims[a.source - 1]))
        .collect();
    for k in 0..verts.len().saturating_sub(1) {
        let letter = m.letter(q, k);
        let (from, to) = if letter.inverse { (k + 1, k) } else { (k, k + 1) };
        maps[letter.arrow - 1].set(local[to], local[from], F::one());
    }
    Representation { dims, maps }
}

impl<F: Field> Representation<F> {
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// Per-vertex blocks of a module homomorphism, `blocks[v-1]: M_v → N_v`.
#[derive(Debug, Clone, PartialEq)]
pub struct Morphism<F> {
    pub blocks: Vec<Mat<F>>,
}

/// Per-arrow blocks of an extension cocycle, `blocks[k-1]: M_{sα} → N_{tα}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Cocycle<F> {
    pub blocks: Vec<Mat<F>>,
}

impl<F: Field> Morphism<F> {
    pub fn identity(m: &Representation<F>) -> Self {
        Morphism { blocks: m.dims.iter().map(|&d| Mat::identity(d)).collect() }
    }

    /// `self ∘ f`
    pub fn compose(&self, f: &Morphism<F>) -> Morphism<F> {
        Morphism { blocks: self.blocks.iter().zip(&f.blocks).map(|(g, f)| g.mul(f)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Mat::is_zero)
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(Mat::rank).sum()
    }

    pub fn trace(&self) -> F {
        self.blocks.iter().fold(F::zero(), |acc, b| acc.add(&b.trace()))
    }

    /// Whether the blocks intertwine the arrow maps of `m` and `n`.
    pub fn is_morphism(&self, q: &Shape, m: &Representation<F>, n: &Representation<F>) -> bool {
        q.arrows.iter().all(|a| {
            let lhs = n.maps[a.index - 1].mul(&self.blocks[a.source - 1]);
            let rhs = self.blocks[a.target - 1].mul(&m.maps[a.index - 1]);
            lhs == rhs
        })
    }

    pub fn scale(&self, c: &F) -> Morphism<F> {
        Morphism {
            blocks: self
                .blocks
                .iter()
                .map(|b| Mat { rows: b.rows, cols: b.cols, data: b.data.iter().map(|x| x.mul(c)).collect() })
                .collect(),
        }
    }
}

impl<F: Field> Cocycle<F> {
    /// Pushforward along `g: N → N'`.
    pub fn pushforward(&self, q: &Shape, g: &Morphism<F>) -> Cocycle<F> {
        Cocycle {
            blocks: q
                .arrows
                .iter()
                .zip(&self.blocks)
                .map(|(a, c)| g.blocks[a.target - 1].mul(c))
                .collect(),
        }
    }

    /// Pullback along `f: M' → M`.
    pub fn pullback(&self, q: &Shape, f: &Morphism<F>) -> Cocycle<F> {
        Cocycle {
            blocks: q
                .arrows
                .iter()
                .zip(&self.blocks)
                .map(|(a, c)| c.mul(&f.blocks[a.source - 1]))
                .collect(),
        }
    }
}

/// Coordinates of the map `d` for a pair of representations.
#[derive(Debug, Clone)]
struct Layout {
    m_dims: Vec<usize>,
    n_dims: Vec<usize>,
    var_off: Vec<usize>,
    nvars: usize,
    eq_off: Vec<usize>,
    neqs: usize,
}

impl Layout {
    fn new(q: &Shape, m_dims: &[usize], n_dims: &[usize]) -> Self {
        let mut var_off = Vec::with_capacity(q.n);
        let mut nvars = 0;
        for v in 0..q.n {
            var_off.push(nvars);
            nvars += n_dims[v] * m_dims[v];
        }
        let mut eq_off = Vec::with_capacity(q.n);
        let mut neqs = 0;
        for a in &q.arrows {
            eq_off.push(neqs);
            neqs += n_dims[a.target - 1] * m_dims[a.source - 1];
        }
        Layout { m_dims: m_dims.to_vec(), n_dims: n_dims.to_vec(), var_off, nvars, eq_off, neqs }
    }

    fn var(&self, v: usize, r: usize, c: usize) -> usize {
        self.var_off[v - 1] + r * self.m_dims[v - 1] + c
    }

    fn eq(&self, q: &Shape, k: usize, r: usize, c: usize) -> usize {
        let s = q.arrows[k - 1].source;
        self.eq_off[k - 1] + r * self.m_dims[s - 1] + c
    }
}

fn equations<F: Field>(q: &Shape, lay: &Layout, m: &Representation<F>, n: &Representation<F>) -> Vec<SparseRow<F>> {
    let mut rows = Vec::with_capacity(lay.neqs);
    for a in &q.arrows {
        let (s, t) = (a.source, a.target);
        let (na, ma) = (&n.maps[a.index - 1], &m.maps[a.index - 1]);
        for r in 0..lay.n_dims[t - 1] {
            for c in 0..lay.m_dims[s - 1] {
                let mut pairs = Vec::new();
                for rp in 0..lay.n_dims[s - 1] {
                    let x = na.get(r, rp);
                    if !x.is_zero() {
                        pairs.push((lay.var(s, rp, c), x.clone()));
                    }
                }
                for cp in 0..lay.m_dims[t - 1] {
                    let x = ma.get(cp, c);
                    if !x.is_zero() {
                        pairs.push((lay.var(t, r, cp), x.neg()));
                    }
                }
                rows.push(sparse_from_pairs(pairs));
            }
        }
    }
    rows
}

fn columns<F: Field>(q: &Shape, lay: &Layout, m: &Representation<F>, n: &Representation<F>) -> Vec<SparseRow<F>> {
    let mut cols = Vec::with_capacity(lay.nvars);
    for v in 1..=q.n {
        for r in 0..lay.n_dims[v - 1] {
            for c in 0..lay.m_dims[v - 1] {
                let mut pairs = Vec::new();
                for a in &q.arrows {
                    if a.source == v {
                        let na = &n.maps[a.index - 1];
                        for rr in 0..lay.n_dims[a.target - 1] {
                            let x = na.get(rr, r);
                            if !x.is_zero() {
                                pairs.push((lay.eq(q, a.index, rr, c), x.clone()));
                            }
                        }
                    }
                    if a.target == v {
                        let ma = &m.maps[a.index - 1];
                        for cc in 0..lay.m_dims[a.source - 1] {
                            let x = ma.get(c, cc);
                            if !x.is_zero() {
                                pairs.push((lay.eq(q, a.index, r, cc), x.neg()));
                            }
                        }
                    }
                }
                cols.push(sparse_from_pairs(pairs));
            }
        }
    }
    cols
}

/// Dimensions computed by the oracle for one ordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairDims {
    pub hom: usize,
    /// `hom − ⟨dim M, dim N⟩`.
    pub ext_euler: usize,
    /// `dim coker d`, from an elimination of the columns of `d`.
    pub ext_cokernel: usize,
}

pub fn pair_dims<F: Field>(
    q: &Shape,
    m: &Representation<F>,
    n: &Representation<F>,
) -> Result<PairDims, OracleError> {
    let lay = Layout::new(q, &m.dims, &n.dims);
    let mut rows = Echelon::new(lay.nvars);
    for r in equations(q, &lay, m, n) {
        rows.insert(r);
    }
    let hom = lay.nvars - rows.rank();
    let mut image = Echelon::new(lay.neqs);
    for c in columns(q, &lay, m, n) {
        image.insert(c);
    }
    let ext_cokernel = lay.neqs - image.rank();
    let ext = hom as i64 - q.euler_form(&m.dims, &n.dims);
    if ext < 0 {
        return Err(OracleError::NegativeExt(ext));
    }
    Ok(PairDims { hom, ext_euler: ext as usize, ext_cokernel })
}

/// Oracle dimensions for two string modules; fails if the two Ext routes disagree.
pub fn string_dims<F: Field>(q: &Orientation, a: &StringModule, b: &StringModule) -> Result<PairDims, OracleError> {
    let d = pair_dims(&q.shape(), &realize::<F>(q, a), &realize::<F>(q, b))?;
    if d.ext_euler != d.ext_cokernel {
        return Err(OracleError::RouteMismatch { euler: d.ext_euler, cokernel: d.ext_cokernel });
    }
    Ok(d)
}

pub fn hom_dim<F: Field>(q: &Orientation, a: &StringModule, b: &StringModule) -> Result<usize, OracleError> {
    Ok(string_dims::<F>(q, a, b)?.hom)
}

pub fn ext_dim<F: Field>(q: &Orientation, a: &StringModule, b: &StringModule) -> Result<usize, OracleError> {
    Ok(string_dims::<F>(q, a, b)?.ext_euler)
}

/// Explicit bases of `Hom(M,N)` and `Ext(M,N)` with coordinate maps.
#[derive(Debug, Clone)]
pub struct PairSpaces<F> {
    lay: Layout,
    hom_basis: Vec<Morphism<F>>,
    free: Vec<usize>,
    image: Echelon<F>,
    complement: Vec<usize>,
}

impl<F: Field> PairSpaces<F> {
    pub fn new(q: &Shape, m: &Representation<F>, n: &Representation<F>) -> Self {
        let lay = Layout::new(q, &m.dims, &n.dims);
        let mut rows = Echelon::new(lay.nvars);
        for r in equations(q, &lay, m, n) {
            rows.insert(r);
        }
        let free = rows.free_columns();
        let hom_basis = rows.kernel_basis().iter().map(|x| unflatten_morphism(q, &lay, x)).collect();
        let mut image = Echelon::new(lay.neqs);
        for c in columns(q, &lay, m, n) {
            image.insert(c);
        }
        let complement = (0..lay.neqs).filter(|&c| !image.is_pivot(c)).collect();
        PairSpaces { lay, hom_basis, free, image, complement }
    }

    pub fn hom_dim(&self) -> usize {
        self.hom_basis.len()
    }

    pub fn ext_dim(&self) -> usize {
        self.complement.len()
    }

    pub fn hom_basis(&self) -> &[Morphism<F>] {
        &self.hom_basis
    }

    /// Coordinates of a homomorphism in `hom_basis`.
    pub fn hom_coords(&self, f: &Morphism<F>) -> Vec<F> {
        let x = flatten_morphism(&self.lay, f);
        self.free.iter().map(|&c| x[c].clone()).collect()
    }

    /// Cocycle representing the `k`-th basis class of Ext.
    pub fn ext_basis_cocycle(&self, q: &Shape, k: usize) -> Cocycle<F> {
        let mut x = vec![F::zero(); self.lay.neqs];
        x[self.complement[k]] = F::one();
        unflatten_cocycle(q, &self.lay, &x)
    }

    /// Coordinates of the class of a cocycle.
    pub fn ext_coords(&self, c: &Cocycle<F>) -> Vec<F> {
        let mut x = flatten_cocycle(&self.lay, c);
        self.image.reduce_dense(&mut x);
        self.complement.iter().map(|&k| x[k].clone()).collect()
    }
}

fn flatten_morphism<F: Field>(lay: &Layout, f: &Morphism<F>) -> Vec<F> {
    let mut x = vec![F::zero(); lay.nvars];
    for (v, b) in f.blocks.iter().enumerate() {
        let off = lay.var_off[v];
        x[off..off + b.data.len()].clone_from_slice(&b.data);
    }
    x
}

fn unflatten_morphism<F: Field>(q: &Shape, lay: &Layout, x: &[F]) -> Morphism<F> {
    let blocks = (0..q.n)
        .map(|v| {
            let (r, c) = (lay.n_dims[v], lay.m_dims[v]);
            let off = lay.var_off[v];
            Mat { rows: r, cols: c, data: x[off..off + r * c].to_vec() }
        })
        .collect();
    Morphism { blocks }
}

fn flatten_cocycle<F: Field>(lay: &Layout, c: &Cocycle<F>) -> Vec<F> {
    let mut x = vec![F::zero(); lay.neqs];
    for (k, b) in c.blocks.iter().enumerate() {
        let off = lay.eq_off[k];
        x[off..off + b.data.len()].clone_from_slice(&b.data);
    }
    x
}

fn unflatten_cocycle<F: Field>(q: &Shape, lay: &Layout, x: &[F]) -> Cocycle<F> {
    let blocks = q
        .arrows
        .iter()
        .map(|a| {
            let (r, c) = (lay.n_dims[a.target - 1], lay.m_dims[a.source - 1]);
            let off = lay.eq_off[a.index - 1];
            Mat { rows: r, cols: c, data: x[off..off + r * c].to_vec() }
        })
        .collect();
    Cocycle { blocks }
}

/// Multiplicities of indecomposable projectives in the standard resolution
/// `0 → P1 → P0 → M → 0`: `P0 = ⊕ P_v^{d_v}`, `P1 = ⊕_α P_{tα}^{d_{sα}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectivePresentation {
    pub p0: Vec<usize>,
    pub p1: Vec<usize>,
}

pub fn presentation(q: &Shape, dims: &[usize]) -> ProjectivePresentation {
    let p0 = dims.to_vec();
    let mut p1 = vec![0; q.n];
    for a in &q.arrows {
        p1[a.target - 1] += dims[a.source - 1];
    }
    ProjectivePresentation { p0, p1 }
}

/// Dimension-wise exactness: `dim P0 − dim P1 = dim M` at every vertex.
pub fn presentation_is_exact(q: &Shape, dims: &[usize], p: &ProjectivePresentation) -> bool {
    let n = q.n;
    (1..=n).all(|w| {
        let at = |mult: &[usize]| -> i64 {
            (1..=n).map(|v| mult[v - 1] as i64 * q.path_count(v, w) as i64).sum()
        };
        at(&p.p0) - at(&p.p1) == dims[w - 1] as i64
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Fp;
    use num_rational::BigRational;

    fn q(s: &str) -> Orientation {
        s.parse().unwrap()
    }

    fn m(s: &str) -> StringModule {
        s.parse().unwrap()
    }

    #[test]
    fn realizes_example_matrices() {
        let q = q("+--");
        let r = realize::<BigRational>(&q, &m("(3,1;1)"));
        assert_eq!(r.dims, vec![2, 1, 1]);
        // α1: k² → k, α2: k → k, α3: k² → k, each of rank one
        assert_eq!(r.maps.iter().map(Mat::rank).collect::<Vec<_>>(), vec![1, 1, 1]);
        let r = realize::<BigRational>(&q, &m("(1,3;2)"));
        assert_eq!(r.dims, vec![2, 3, 3]);
        assert_eq!(r.maps[0].rows, 3);
        assert_eq!(r.maps[0].cols, 2);
        assert_eq!(r.maps[1].rank(), 3);
        let s = realize::<BigRational>(&q, &m("(1,2;0)"));
        assert_eq!(s.dims, vec![0, 1, 0]);
        assert!(s.maps.iter().all(Mat::is_zero));
    }

    #[test]
    fn simple_dims() {
        let q = q("+--");
        let s1 = StringModule::simple(&q, 1);
        let s2 = StringModule::simple(&q, 2);
        assert_eq!(q.euler_form(&s1.dimension_vector(&q), &s2.dimension_vector(&q)), -1);
        let d = string_dims::<BigRational>(&q, &s1, &s2).unwrap();
        assert_eq!((d.hom, d.ext_euler, d.ext_cokernel), (0, 1, 1));
        let d = string_dims::<Fp>(&q, &s2, &s1).unwrap();
        assert_eq!((d.hom, d.ext_euler), (0, 0));
    }

    #[test]
    fn presentations_are_exact() {
        for q in Orientation::all(4) {
            for s in crate::strings::all_strings(&q, 1) {
                let d = s.dimension_vector(&q);
                assert!(presentation_is_exact(&q.shape(), &d, &presentation(&q.shape(), &d)));
            }
        }
    }

    #[test]
    fn hom_basis_coordinates_round_trip() {
        let q = q("+-+-");
        let a = realize::<BigRational>(&q, &m("(1,3;1)"));
        let sp = PairSpaces::new(&q.shape(), &a, &a);
        for (k, f) in sp.hom_basis().iter().enumerate() {
            let c = sp.hom_coords(f);
            for (i, x) in c.iter().enumerate() {
                assert_eq!(*x, BigRational::from_i64(i64::from(i == k)));
            }
        }
    }
}
