//! Walks, string modules `(i,j;l)`, band powers, hooks and cohooks.
//!
//! Every reduced walk on the cycle is monotone, so a string module is fixed
//! by its counterclockwise start vertex `a = i+1` and its length
//! `L = ((j−i−1) mod n) + l·n`. The `k`-th letter steps from `a+k` to
//! `a+k+1` along arrow `α_{a+k}`, and is direct exactly when that sign is `+`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quiver::{Orientation, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StringError {
    #[error("malformed string module {0:?}, expected \"(i,j;l)\"")]
    Parse(String),
    #[error("marked point {0} out of range 1..={1}")]
    OutOfRange(usize, usize),
    #[error("arrow index {0} out of range")]
    BadArrow(usize),
    #[error("letters {0} and {1} are not composable")]
    NotComposable(usize, usize),
    #[error("walk is not reduced at letters {0} and {1}")]
    NotReduced(usize, usize),
    #[error("cyclic walk does not close up")]
    NotClosed,
    #[error("cyclic walk is empty")]
    EmptyCycle,
    #[error("{0:?} at the {1:?} is not defined for this string")]
    UndefinedOperation(HookKind, End),
}

/// An arrow or its formal inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub arrow: usize,
    pub inverse: bool,
}

impl Letter {
    /// `(from, to)` vertices of the letter.
    pub fn ends(&self, q: &Orientation) -> (usize, usize) {
        let a = q.arrow(self.arrow);
        if self.inverse {
            (a.target, a.source)
        } else {
            (a.source, a.target)
        }
    }

    pub fn inverted(&self) -> Letter {
        Letter { arrow: self.arrow, inverse: !self.inverse }
    }

    /// True if the letter moves from vertex `k` to `k+1` for arrow `α_k`.
    pub fn is_counterclockwise(&self, q: &Orientation) -> bool {
        self.ends(q).0 == self.arrow
    }

    /// The counterclockwise letter leaving vertex `v`.
    pub fn ccw_from(q: &Orientation, v: i64) -> Letter {
        let k = q.wrap(v);
        Letter { arrow: k, inverse: q.sign(v) == Sign::Minus }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "a{}^-1", self.arrow)
        } else {
            write!(f, "a{}", self.arrow)
        }
    }
}

/// A walk in the quiver. An empty letter list is the lazy walk at `start`.
/// Cyclic walks are read up to rotation and are what band powers arise from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Walk {
    pub start: usize,
    pub letters: Vec<Letter>,
    #[serde(default)]
    pub cyclic: bool,
}

impl Walk {
    pub fn lazy(v: usize) -> Walk {
        Walk { start: v, letters: Vec::new(), cyclic: false }
    }

    /// Vertex sequence visited, checking composability.
    pub fn vertices(&self, q: &Orientation) -> Result<Vec<usize>, StringError> {
        let n = q.n();
        if self.start < 1 || self.start > n {
            return Err(StringError::OutOfRange(self.start, n));
        }
        let mut out = vec![self.start];
        for (k, l) in self.letters.iter().enumerate() {
            if l.arrow < 1 || l.arrow > n {
                return Err(StringError::BadArrow(l.arrow));
            }
            let (from, to) = l.ends(q);
            if from != *out.last().unwrap() {
                return Err(StringError::NotComposable(k.saturating_sub(1), k));
            }
            out.push(to);
        }
        Ok(out)
    }

    pub fn end(&self, q: &Orientation) -> Result<usize, StringError> {
        Ok(*self.vertices(q)?.last().unwrap())
    }

    pub fn inverse(&self, q: &Orientation) -> Result<Walk, StringError> {
        Ok(Walk {
            start: self.end(q)?,
            letters: self.letters.iter().rev().map(Letter::inverted).collect(),
            cyclic: self.cyclic,
        })
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e{}", self.start);
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Auslander–Reiten component of an indecomposable string module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Component {
    Preprojective,
    Preinjective,
    LeftRegular,
    RightRegular,
}

impl Component {
    pub fn is_regular(self) -> bool {
        matches!(self, Component::LeftRegular | Component::RightRegular)
    }
}

/// The string module `(i,j;l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StringModule {
    pub i: usize,
    pub j: usize,
    pub l: usize,
}

/// The `l`-fold power of the unique band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BandPower {
    pub l: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalized {
    String(StringModule),
    Band(BandPower),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HookKind {
    AddHook,
    DeleteHook,
    AddCohook,
    DeleteCohook,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum End {
    Start,
    End,
}

impl StringModule {
    pub fn new(q: &Orientation, i: usize, j: usize, l: usize) -> Result<Self, StringError> {
        let n = q.n();
        for v in [i, j] {
            if v < 1 || v > n {
                return Err(StringError::OutOfRange(v, n));
            }
        }
        Ok(StringModule { i, j, l })
    }

    /// The module of the counterclockwise walk of length `len` from `start`.
    pub fn from_start_len(q: &Orientation, start: i64, len: usize) -> Self {
        let n = q.n();
        StringModule {
            i: q.wrap(start - 1),
            j: q.wrap(start + len as i64),
            l: len / n,
        }
    }

    pub fn simple(q: &Orientation, v: usize) -> Self {
        StringModule::from_start_len(q, v as i64, 0)
    }

    /// Counterclockwise start vertex `i+1`.
    pub fn start(&self, q: &Orientation) -> usize {
        q.wrap(self.i as i64 + 1)
    }

    /// Number of letters.
    pub fn len(&self, q: &Orientation) -> usize {
        let n = q.n() as i64;
        ((self.j as i64 - self.i as i64 - 1).rem_euclid(n)) as usize + self.l * q.n()
    }

    pub fn is_lazy(&self, q: &Orientation) -> bool {
        self.len(q) == 0
    }

    /// Vertex occurrences along the walk, left to right.
    pub fn vertices(&self, q: &Orientation) -> Vec<usize> {
        let a = self.start(q) as i64;
        (0..=self.len(q) as i64).map(|k| q.wrap(a + k)).collect()
    }

    /// Letter `k` of the expanded walk.
    pub fn letter(&self, q: &Orientation, k: usize) -> Letter {
        Letter::ccw_from(q, self.start(q) as i64 + k as i64)
    }

    /// Whether letter `k` is a direct arrow.
    pub fn is_direct(&self, q: &Orientation, k: usize) -> bool {
        q.sign(self.start(q) as i64 + k as i64) == Sign::Plus
    }

    pub fn expand(&self, q: &Orientation) -> Walk {
        Walk {
            start: self.start(q),
            letters: (0..self.len(q)).map(|k| self.letter(q, k)).collect(),
            cyclic: false,
        }
    }

    pub fn dimension_vector(&self, q: &Orientation) -> Vec<usize> {
        let mut d = vec![0; q.n()];
        for v in self.vertices(q) {
            d[v - 1] += 1;
        }
        d
    }

    pub fn dim(&self, q: &Orientation) -> usize {
        self.len(q) + 1
    }

    pub fn component(&self, q: &Orientation) -> Component {
        match (q.sign(self.i as i64), q.sign(self.j as i64)) {
            (Sign::Plus, Sign::Minus) => Component::Preprojective,
            (Sign::Minus, Sign::Plus) => Component::Preinjective,
            (Sign::Plus, Sign::Plus) => Component::LeftRegular,
            (Sign::Minus, Sign::Minus) => Component::RightRegular,
        }
    }

    pub fn is_regular(&self, q: &Orientation) -> bool {
        self.component(q).is_regular()
    }

    pub fn hook_op(&self, q: &Orientation, kind: HookKind, end: End) -> Result<Self, StringError> {
        let a = self.start(q) as i64;
        let len = self.len(q);
        let undefined = Err(StringError::UndefinedOperation(kind, end));
        let direct = |v: i64| q.sign(v) == Sign::Plus;
        match (kind, end) {
            (HookKind::AddHook | HookKind::AddCohook, End::End) => {
                // first letter: inverse for a hook, direct for a cohook;
                // then as many letters of the opposite kind as possible
                let want_first = kind == HookKind::AddCohook;
                let b = a + len as i64;
                if direct(b) != want_first {
                    return undefined;
                }
                let mut new_len = len + 1;
                while direct(a + new_len as i64) == !want_first {
                    new_len += 1;
                }
                Ok(StringModule::from_start_len(q, a, new_len))
            }
            (HookKind::AddHook | HookKind::AddCohook, End::Start) => {
                // prepended letters run from a−1 to a; a hook starts with a
                // direct letter, a cohook with an inverse one
                let want_first = kind == HookKind::AddHook;
                if direct(a - 1) != want_first {
                    return undefined;
                }
                let mut new_a = a - 1;
                while direct(new_a - 1) == !want_first {
                    new_a -= 1;
                }
                Ok(StringModule::from_start_len(q, new_a, len + (a - new_a) as usize))
            }
            (HookKind::DeleteHook | HookKind::DeleteCohook, End::End) => {
                // remove the last inverse (hook) or direct (cohook) letter and
                // everything after it
                let target_direct = kind == HookKind::DeleteCohook;
                match (0..len).rev().find(|&k| direct(a + k as i64) == target_direct) {
                    Some(k) => Ok(StringModule::from_start_len(q, a, k)),
                    None => undefined,
                }
            }
            (HookKind::DeleteHook | HookKind::DeleteCohook, End::Start) => {
                let target_direct = kind == HookKind::DeleteHook;
                match (0..len).find(|&k| direct(a + k as i64) == target_direct) {
                    Some(k) => Ok(StringModule::from_start_len(q, a + k as i64 + 1, len - k - 1)),
                    None => undefined,
                }
            }
        }
    }
}

/// Canonical form of a reduced walk, or the band power it traces.
pub fn normalize(q: &Orientation, w: &Walk) -> Result<Normalized, StringError> {
    let verts = w.vertices(q)?;
    let m = w.letters.len();
    let reduced_pair = |x: &Letter, y: &Letter| !(x.arrow == y.arrow && x.inverse != y.inverse);
    for k in 1..m {
        if !reduced_pair(&w.letters[k - 1], &w.letters[k]) {
            return Err(StringError::NotReduced(k - 1, k));
        }
    }
    if w.cyclic {
        if m == 0 {
            return Err(StringError::EmptyCycle);
        }
        if verts[m] != verts[0] {
            return Err(StringError::NotClosed);
        }
        if !reduced_pair(&w.letters[m - 1], &w.letters[0]) {
            return Err(StringError::NotReduced(m - 1, 0));
        }
        // a reduced closed walk on a cycle winds around it a whole number of times
        debug_assert_eq!(m % q.n(), 0);
        return Ok(Normalized::Band(BandPower { l: m / q.n() }));
    }
    if m == 0 {
        return Ok(Normalized::String(StringModule::simple(q, w.start)));
    }
    let ccw = w.letters[0].is_counterclockwise(q);
    debug_assert!(w.letters.iter().all(|l| l.is_counterclockwise(q) == ccw));
    let start = if ccw { verts[0] } else { verts[m] };
    Ok(Normalized::String(StringModule::from_start_len(q, start as i64, m)))
}

impl fmt::Display for StringModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{})", self.i, self.j, self.l)
    }
}

impl FromStr for StringModule {
    type Err = StringError;

    /// Parses `(i,j;l)`. Range checks need the quiver; see [`StringModule::new`].
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || StringError::Parse(s.to_string());
        let body = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (ij, l) = body.split_once(';').ok_or_else(bad)?;
        let (i, j) = ij.split_once(',').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        Ok(StringModule { i: num(i)?, j: num(j)?, l: num(l)? })
    }
}

impl Serialize for StringModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for StringModule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All string modules `(i,j;l)` with `l ≤ max_l`.
pub fn all_strings(q: &Orientation, max_l: usize) -> Vec<StringModule> {
    let n = q.n();
    let mut out = Vec::with_capacity(n * n * (max_l + 1));
    for l in 0..=max_l {
        for i in 1..=n {
            for j in 1..=n {
                out.push(StringModule { i, j, l });
            }
        }
    }
    out
}
