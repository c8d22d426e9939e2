//! Sparse exact elimination. Vectors are sorted (column, value) lists and a
//! row's pivot is its largest column.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

pub type SparseVec = Vec<(usize, Rational)>;

/// Environment variable capping stored matrix entries.
pub const LIMIT_VAR: &str = "OPRD_MAX_ENTRIES";

/// The entry cap from `OPRD_MAX_ENTRIES`, if set and numeric.
pub fn default_limit() -> Option<usize> {
    std::env::var(LIMIT_VAR).ok().and_then(|v| v.trim().parse().ok())
}

/// a + c * b
pub(crate) fn axpy(a: &SparseVec, c: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub(crate) fn scale(a: &mut SparseVec, c: &Rational) {
    for (_, v) in a.iter_mut() {
        *v *= c;
    }
}

/// Row echelon form with pivots at the largest column.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: HashMap<usize, SparseVec>,
    limit: Option<usize>,
    entries: usize,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn with_limit(limit: Option<usize>) -> Self {
        Echelon {
            limit,
            ..Default::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.keys().copied().collect();
        p.sort_unstable();
        p
    }

    pub fn has_pivot(&self, c: usize) -> bool {
        self.rows.contains_key(&c)
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseVec> {
        self.rows.get(&pivot)
    }

    /// Eliminates leading entries until the pivot is new (or the vector is 0).
    pub fn reduce_leading(&self, mut v: SparseVec) -> SparseVec {
        while let Some((c, x)) = v.last() {
            match self.rows.get(c) {
                Some(r) => {
                    let x = -x.clone();
                    v = axpy(&v, &x, r);
                }
                None => break,
            }
        }
        v
    }

    /// Eliminates every entry sitting on a pivot column.
    pub fn reduce_full(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = usize::MAX;
        loop {
            let hit = v
                .iter()
                .rev()
                .find(|(c, _)| *c < cursor && self.rows.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            match hit {
                Some((c, x)) => {
                    v = axpy(&v, &-x, &self.rows[&c]);
                    cursor = c;
                }
                None => return v,
            }
        }
    }

    /// Inserts a vector; returns its new pivot when it was independent.
    pub fn insert(&mut self, v: SparseVec) -> Result<Option<usize>> {
        let mut v = self.reduce_leading(v);
        let Some((c, x)) = v.last().cloned() else { return Ok(None) };
        let inv = x.recip();
        scale(&mut v, &inv);
        self.entries += v.len();
        if let Some(l) = self.limit {
            if self.entries > l {
                return Err(Error::ResourceLimit(format!("matrix exceeds {l} stored entries")));
            }
        }
        self.rows.insert(c, v);
        Ok(Some(c))
    }

    /// Back-substitutes so every row is zero on all other pivots.
    pub fn rref(&mut self) {
        let pivots = self.pivots();
        let mut done: Echelon = Echelon::new();
        for p in pivots {
            let r = self.rows.remove(&p).unwrap();
            let (last, body) = r.split_last().unwrap();
            let mut red = done.reduce_full(body.to_vec());
            red.push(last.clone());
            done.rows.insert(p, red);
        }
        // rows with smaller pivots may still contain larger pivot columns
        // only if columns exceed their pivot, which cannot happen
        self.rows = done.rows;
    }

    /// Rows sorted by pivot.
    pub fn rows_sorted(&self) -> Vec<SparseVec> {
        self.pivots().into_iter().map(|p| self.rows[&p].clone()).collect()
    }
}

/// Kernel of the map sending source basis vector i to `images[i]`, in
/// reduced echelon form over the source basis.
pub fn kernel(images: &[SparseVec], limit: Option<usize>) -> Result<Vec<SparseVec>> {
    let n = images.len();
    let mut e = Echelon::with_limit(limit);
    for (i, img) in images.iter().enumerate() {
        let mut v: SparseVec = vec![(i, Rational::one())];
        v.extend(img.iter().map(|(c, x)| (c + n, x.clone())));
        e.insert(v)?;
    }
    let mut k = Echelon::new();
    for p in e.pivots() {
        if p < n {
            k.insert(e.rows[&p].clone())?;
        }
    }
    k.rref();
    Ok(k.rows_sorted())
}

pub fn rank(rows: &[SparseVec], limit: Option<usize>) -> Result<usize> {
    let mut e = Echelon::with_limit(limit);
    for r in rows {
        e.insert(r.clone())?;
    }
    Ok(e.rank())
}

/// Solves sum x_i images[i] = target. Returns None when unsolvable.
pub struct Solver {
    n: usize,
    e: Echelon,
}

impl Solver {
    pub fn new(images: &[SparseVec], limit: Option<usize>) -> Result<Self> {
        let n = images.len();
        let mut e = Echelon::with_limit(limit);
        for (i, img) in images.iter().enumerate() {
            let mut v: SparseVec = vec![(i, Rational::one())];
            v.extend(img.iter().map(|(c, x)| (c + n, x.clone())));
            e.insert(v)?;
        }
        Ok(Solver { n, e })
    }

    pub fn image_rank(&self) -> usize {
        self.e.pivots().iter().filter(|&&p| p >= self.n).count()
    }

    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut k = Echelon::new();
        for p in self.e.pivots() {
            if p < self.n {
                k.insert(self.e.rows[&p].clone()).unwrap();
            }
        }
        k.rref();
        k.rows_sorted()
    }

    pub fn solve(&self, target: &SparseVec) -> Option<SparseVec> {
        let v: SparseVec = target.iter().map(|(c, x)| (c + self.n, x.clone())).collect();
        let r = self.e.reduce_full(v);
        if r.iter().any(|(c, _)| *c >= self.n) {
            return None;
        }
        Some(r.into_iter().map(|(c, x)| (c, -x)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn v(xs: &[(usize, i64)]) -> SparseVec {
        xs.iter().map(|&(c, x)| (c, rat(x))).collect()
    }

    #[test]
    fn rank_and_kernel() {
        // images of e0, e1, e2: (1,1), (2,2), (0,1)
        let imgs = vec![v(&[(0, 1), (1, 1)]), v(&[(0, 2), (1, 2)]), v(&[(1, 1)])];
        assert_eq!(rank(&imgs, None).unwrap(), 2);
        let k = kernel(&imgs, None).unwrap();
        assert_eq!(k, vec![v(&[(0, -2), (1, 1)])].into_iter().map(|mut r| {
            let inv = r.last().unwrap().1.recip();
            scale(&mut r, &inv);
            r
        }).collect::<Vec<_>>());
    }

    #[test]
    fn solve_round_trip() {
        let imgs = vec![v(&[(0, 1), (2, 3)]), v(&[(1, 5)]), v(&[(0, 1), (1, 1)])];
        let s = Solver::new(&imgs, None).unwrap();
        let target = v(&[(0, 2), (1, 7), (2, 3)]);
        let x = s.solve(&target).unwrap();
        let mut acc = SparseVec::new();
        for (i, c) in &x {
            acc = axpy(&acc, c, &imgs[*i]);
        }
        assert_eq!(acc, target);
        assert!(s.solve(&v(&[(3, 1)])).is_none());
        assert_eq!(s.solve(&SparseVec::new()).unwrap(), SparseVec::new());
    }

    #[test]
    fn rref_is_reduced() {
        let mut e = Echelon::new();
        e.insert(v(&[(0, 1), (1, 2), (2, 3)])).unwrap();
        e.insert(v(&[(0, 1), (1, 1)])).unwrap();
        e.insert(v(&[(0, 4)])).unwrap();
        e.rref();
        for r in e.rows_sorted() {
            assert_eq!(r.len(), 1);
        }
    }

    #[test]
    fn limit_is_enforced() {
        let mut e = Echelon::with_limit(Some(2));
        e.insert(v(&[(0, 1), (1, 1)])).unwrap();
        assert!(e.insert(v(&[(2, 1)])).is_err());
    }
}
