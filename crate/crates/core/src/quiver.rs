//! Orientation vectors and the type Ã quivers they determine.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("orientation vector must have at least two entries, got {0}")]
    TooShort(usize),
    #[error("orientation vector must contain both signs")]
    AllSignsEqual,
    #[error("invalid sign character {0:?}")]
    BadSign(char),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Which boundary component of the annulus a marked point lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Boundary {
    Outer,
    Inner,
}

impl Boundary {
    pub fn of(sign: Sign) -> Boundary {
        match sign {
            Sign::Plus => Boundary::Outer,
            Sign::Minus => Boundary::Inner,
        }
    }

    pub fn other(self) -> Boundary {
        match self {
            Boundary::Outer => Boundary::Inner,
            Boundary::Inner => Boundary::Outer,
        }
    }
}

/// A sign vector with at least one `+` and one `-`.
///
/// Vertices and arrows are numbered `1..=n`. Arrow `k` joins `k` and `k+1`
/// (with `n+1 = 1`) and points from `k` to `k+1` exactly when `ε_k = +`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    signs: Vec<Sign>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub index: usize,
    pub source: usize,
    pub target: usize,
}

/// Vertex count and arrow list of a finite acyclic quiver, vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Shape {
    pub n: usize,
    pub arrows: Vec<Arrow>,
}

impl Shape {
    /// Arrows are given as `(source, target)`; indices are assigned in order from 1.
    pub fn new(n: usize, arrows: &[(usize, usize)]) -> Shape {
        let arrows = arrows
            .iter()
            .enumerate()
            .map(|(k, &(source, target))| Arrow { index: k + 1, source, target })
            .collect();
        Shape { n, arrows }
    }

    /// Number of paths from `u` to `w`; the trivial path counts when `u == w`.
    pub fn path_count(&self, u: usize, w: usize) -> u64 {
        fn go(s: &Shape, v: usize, w: usize, memo: &mut Vec<Option<u64>>) -> u64 {
            if let Some(c) = memo[v] {
                return c;
            }
            let mut c = u64::from(v == w);
            for a in &s.arrows {
                if a.source == v {
                    c += go(s, a.target, w, memo);
                }
            }
            memo[v] = Some(c);
            c
        }
        go(self, u, w, &mut vec![None; self.n + 1])
    }

    /// The Euler form `Σ d_v e_v − Σ_{a→b} d_a e_b` on dimension vectors.
    pub fn euler_form(&self, d: &[usize], e: &[usize]) -> i64 {
        let diag: i64 = d.iter().zip(e).map(|(&x, &y)| (x * y) as i64).sum();
        let off: i64 = self.arrows.iter().map(|a| (d[a.source - 1] * e[a.target - 1]) as i64).sum();
        diag - off
    }
}

impl Orientation {
    pub fn shape(&self) -> Shape {
        Shape { n: self.n(), arrows: self.arrows() }
    }

    pub fn new(signs: Vec<Sign>) -> Result<Self, QuiverError> {
        if signs.len() < 2 {
            return Err(QuiverError::TooShort(signs.len()));
        }
        if signs.iter().all(|&s| s == signs[0]) {
            return Err(QuiverError::AllSignsEqual);
        }
        Ok(Orientation { signs })
    }

    pub fn n(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Reduce any integer to a vertex label in `1..=n`.
    pub fn wrap(&self, v: i64) -> usize {
        (v - 1).rem_euclid(self.n() as i64) as usize + 1
    }

    /// Sign at a vertex, with indices taken cyclically.
    pub fn sign(&self, v: i64) -> Sign {
        self.signs[self.wrap(v) - 1]
    }

    pub fn boundary(&self, v: i64) -> Boundary {
        Boundary::of(self.sign(v))
    }

    pub fn arrow(&self, k: usize) -> Arrow {
        assert!(k >= 1 && k <= self.n(), "arrow index {k} out of range");
        let next = self.wrap(k as i64 + 1);
        match self.signs[k - 1] {
            Sign::Plus => Arrow { index: k, source: k, target: next },
            Sign::Minus => Arrow { index: k, source: next, target: k },
        }
    }

    pub fn arrows(&self) -> Vec<Arrow> {
        (1..=self.n()).map(|k| self.arrow(k)).collect()
    }

    pub fn opposite(&self) -> Orientation {
        Orientation { signs: self.signs.iter().map(|s| s.flip()).collect() }
    }

    /// Number of marked points on the outer boundary (`+` entries).
    pub fn outer_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s == Sign::Plus).count()
    }

    pub fn inner_count(&self) -> usize {
        self.n() - self.outer_count()
    }

    /// Every valid orientation with `n` vertices, in lexicographic sign order.
    pub fn all(n: usize) -> Vec<Orientation> {
        if n < 2 {
            return Vec::new();
        }
        (0u32..(1 << n))
            .filter_map(|mask| {
                let signs = (0..n)
                    .map(|b| if mask >> (n - 1 - b) & 1 == 0 { Sign::Plus } else { Sign::Minus })
                    .collect();
                Orientation::new(signs).ok()
            })
            .collect()
    }

    pub fn path_count(&self, u: usize, w: usize) -> u64 {
        self.shape().path_count(u, w)
    }

    pub fn euler_form(&self, d: &[usize], e: &[usize]) -> i64 {
        self.shape().euler_form(d, e)
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for Orientation {
    type Err = QuiverError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let signs = s
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(Sign::Plus),
                '-' | '−' => Ok(Sign::Minus),
                other => Err(QuiverError::BadSign(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Orientation::new(signs)
    }
}

impl Serialize for Orientation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Orientation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sign_rule_three_vertices() {
        let q: Orientation = "+--".parse().unwrap();
        let arrows: Vec<_> = q.arrows().iter().map(|a| (a.source, a.target)).collect();
        assert_eq!(arrows, vec![(1, 2), (3, 2), (1, 3)]);
    }

    #[test]
    fn kronecker_has_parallel_arrows() {
        let q: Orientation = "+-".parse().unwrap();
        let arrows: Vec<_> = q.arrows().iter().map(|a| (a.source, a.target)).collect();
        assert_eq!(arrows, vec![(1, 2), (1, 2)]);
    }

    #[test]
    fn rejects_bad_vectors() {
        assert_eq!("+++".parse::<Orientation>(), Err(QuiverError::AllSignsEqual));
        assert_eq!("+".parse::<Orientation>(), Err(QuiverError::TooShort(1)));
        assert_eq!("+x".parse::<Orientation>(), Err(QuiverError::BadSign('x')));
    }

    #[test]
    fn opposite_reverses_arrows() {
        let q: Orientation = "+--".parse().unwrap();
        let op = q.opposite();
        assert_eq!(op.to_string(), "-++");
        assert_eq!(op.opposite(), q);
        for (a, b) in q.arrows().iter().zip(op.arrows()) {
            assert_eq!((a.source, a.target), (b.target, b.source));
        }
    }

    #[test]
    fn counts_orientations() {
        assert_eq!(Orientation::all(2).len(), 2);
        assert_eq!(Orientation::all(5).len(), 30);
    }

    #[test]
    fn paths_in_three_vertex_quiver() {
        let q: Orientation = "++-".parse().unwrap();
        assert_eq!(q.path_count(1, 3), 2);
        assert_eq!(q.path_count(3, 3), 1);
        assert_eq!(q.path_count(3, 1), 0);
    }
}
