//! Exact linear algebra over the scalar field.
//!
//! Sparse rows are kept as polynomial vectors (denominators cleared, content
//! removed) and eliminated fraction-free: `row' = p*row - a*pivot` followed by
//! a content division. An inserted row is reduced against existing rows in
//! insertion order; a row never touches pivots older than itself, so one pass
//! suffices.

use std::collections::{BTreeMap, HashMap};

use crate::scalar::{gcd, poly::MPoly, Scalar};

/// A sparse vector, sorted by column index.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseVec {
    pub entries: Vec<(u64, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec::default()
    }

    pub fn unit(col: u64) -> Self {
        SparseVec {
            entries: vec![(col, Scalar::one())],
        }
    }

    pub fn from_map(map: BTreeMap<u64, Scalar>) -> Self {
        SparseVec {
            entries: map.into_iter().filter(|(_, s)| !s.is_zero()).collect(),
        }
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, s)| !s.is_zero())
                .map(|(i, s)| (i as u64, s.clone()))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, col: u64) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&col, |&(c, _)| c)
            .ok()
            .map(|i| &self.entries[i].1)
    }

    pub fn scale(&self, s: &Scalar) -> SparseVec {
        if s.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(c, v)| (*c, v * s)).collect(),
        }
    }

    /// `self + s * other`, dropping cancelled entries.
    pub fn add_scaled(&self, other: &SparseVec, s: &Scalar) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() && j < other.entries.len() {
            let (ca, va) = &self.entries[i];
            let (cb, vb) = &other.entries[j];
            match ca.cmp(cb) {
                std::cmp::Ordering::Less => {
                    out.push((*ca, va.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    let v = vb * s;
                    if !v.is_zero() {
                        out.push((*cb, v));
                    }
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = va + &(vb * s);
                    if !v.is_zero() {
                        out.push((*ca, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.entries[i..]);
        for (cb, vb) in &other.entries[j..] {
            let v = vb * s;
            if !v.is_zero() {
                out.push((*cb, v));
            }
        }
        SparseVec { entries: out }
    }

    /// Clear denominators and divide by the content so every entry is a
    /// content-free polynomial. Preserves the spanned line.
    pub fn normalize(&mut self) {
        if self.entries.is_empty() {
            return;
        }
        let mut den = MPoly::one();
        for (_, v) in &self.entries {
            let d = v.denom();
            let g = gcd::gcd(&den, d);
            den = den.mul(&d.exact_div(&g).unwrap());
        }
        let den_s = Scalar::from_poly(den);
        let mut cleared: Vec<(u64, MPoly)> = self
            .entries
            .iter()
            .map(|(c, v)| {
                let s = v * &den_s;
                debug_assert!(s.denom().is_one());
                (*c, s.numer().clone())
            })
            .collect();
        let mut content = MPoly::zero();
        for (_, p) in &cleared {
            content = gcd::gcd(&content, p);
            if content.is_one() {
                break;
            }
        }
        if !content.is_one() && !content.is_zero() {
            for (_, p) in cleared.iter_mut() {
                *p = p.exact_div(&content).unwrap();
            }
        }
        self.entries = cleared
            .into_iter()
            .map(|(c, p)| (c, Scalar::from_poly(p)))
            .collect();
    }
}

/// Incremental echelon basis of a span.
#[derive(Default)]
pub struct Echelon {
    /// Rows in insertion order; `rows[k]` has no support on pivots of earlier rows.
    rows: Vec<(u64, SparseVec)>,
    pivot_index: HashMap<u64, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the rows in insertion order. A combination with row
    /// `k` only adds columns that are pivots of rows later than `k`, so a
    /// single pass eliminates every pivot column from the residual.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        for (pc, prow) in &self.rows {
            if v.is_zero() {
                break;
            }
            if let Some(a) = v.get(*pc) {
                let p = prow.get(*pc).expect("pivot entry");
                let a = a.clone();
                v = v.scale(p).add_scaled(prow, &-&a);
                v.normalize();
            }
        }
        v
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut v = v;
        v.normalize();
        let v = self.reduce(&v);
        if v.is_zero() {
            return false;
        }
        let pivot = v.entries[0].0;
        debug_assert!(!self.pivot_index.contains_key(&pivot));
        self.pivot_index.insert(pivot, self.rows.len());
        self.rows.push((pivot, v));
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut v = v.clone();
        v.normalize();
        self.reduce(&v).is_zero()
    }

    /// The stored basis rows.
    pub fn basis(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.iter().map(|(_, r)| r)
    }
}

/// Rank of the span of `rows`.
pub fn rank(rows: &[SparseVec]) -> usize {
    echelon_of(rows).rank()
}

pub fn echelon_of(rows: &[SparseVec]) -> Echelon {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r.clone());
    }
    ech
}

/// Do two row sets span the same subspace?
pub fn same_span(a: &[SparseVec], b: &[SparseVec]) -> bool {
    let ea = echelon_of(a);
    if !b.iter().all(|v| ea.contains(v)) {
        return false;
    }
    let eb = echelon_of(b);
    a.iter().all(|v| eb.contains(v))
}

/// Dimension of `span(rows) ∩ {x : x vanishes on the excluded columns}`.
pub fn intersection_dim(rows: &[SparseVec], is_excluded: impl Fn(u64) -> bool) -> usize {
    // dim(W ∩ V0) = dim W - dim proj(W), proj = restriction to excluded columns.
    let total = rank(rows);
    let projected: Vec<SparseVec> = rows
        .iter()
        .map(|r| SparseVec {
            entries: r
                .entries
                .iter()
                .filter(|(c, _)| is_excluded(*c))
                .cloned()
                .collect(),
        })
        .collect();
    total - rank(&projected)
}

// ---------------------------------------------------------------------------
// Dense routines (small matrices: inverses, kernels, linear solves)
// ---------------------------------------------------------------------------

pub type DenseMat = Vec<Vec<Scalar>>;

pub fn identity(n: usize) -> DenseMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &DenseMat, b: &DenseMat) -> DenseMat {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![Scalar::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if b[l][j].is_zero() {
                    continue;
                }
                out[i][j] = &out[i][j] + &(&a[i][l] * &b[l][j]);
            }
        }
    }
    out
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn invert(mat: &DenseMat) -> Option<DenseMat> {
    let n = mat.len();
    let mut a = mat.to_vec();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        let pinv = p.inv().ok()?;
        for j in 0..n {
            a[col][j] = &a[col][j] * &pinv;
            inv[col][j] = &inv[col][j] * &pinv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &a[col][j] * &f;
                a[r][j] = &a[r][j] - &t;
                let t = &inv[col][j] * &f;
                inv[r][j] = &inv[r][j] - &t;
            }
        }
    }
    Some(inv)
}

/// Kernel basis of the linear map with matrix `mat` (rows = outputs).
pub fn kernel(mat: &DenseMat, ncols: usize) -> Vec<Vec<Scalar>> {
    let mut a = mat.to_vec();
    let nrows = a.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut row = 0;
    for col in 0..ncols {
        let pr = (row..nrows).find(|&r| !a[r][col].is_zero());
        let pr = match pr {
            Some(p) => p,
            None => continue,
        };
        a.swap(row, pr);
        let pinv = a[row][col].inv().unwrap();
        for j in 0..ncols {
            a[row][j] = &a[row][j] * &pinv;
        }
        for r in 0..nrows {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..ncols {
                let t = &a[row][j] * &f;
                a[r][j] = &a[r][j] - &t;
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == nrows {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![Scalar::zero(); ncols];
        v[free] = Scalar::one();
        for (col, pr) in pivot_of_col.iter().enumerate() {
            if let Some(r) = pr {
                v[col] = -&a[*r][free];
            }
        }
        basis.push(v);
    }
    basis
}

/// Solve `A x = b` for a square invertible `A` given several right-hand sides.
pub fn solve_many(a: &DenseMat, rhs: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let inv = invert(a)?;
    Some(rhs.iter().map(|b| mat_apply(&inv, b)).collect())
}

pub fn mat_apply(a: &DenseMat, v: &[Scalar]) -> Vec<Scalar> {
    a.iter()
        .map(|row| {
            let mut acc = Scalar::zero();
            for (x, y) in row.iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc = &acc + &(x * y);
                }
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(entries: &[(u64, i64)]) -> SparseVec {
        SparseVec {
            entries: entries
                .iter()
                .map(|&(c, v)| (c, Scalar::from_int(v)))
                .collect(),
        }
    }

    #[test]
    fn rank_and_membership() {
        let rows = vec![
            sv(&[(0, 1), (1, 2)]),
            sv(&[(1, 1), (2, 1)]),
            sv(&[(0, 1), (1, 1), (2, -1)]),
        ];
        assert_eq!(rank(&rows), 2);
        let ech = echelon_of(&rows);
        assert!(ech.contains(&sv(&[(0, 2), (1, 3), (2, -1)])));
        assert!(!ech.contains(&sv(&[(2, 1)])));
    }

    #[test]
    fn span_comparison() {
        let a = vec![sv(&[(0, 1), (1, 1)]), sv(&[(1, 1)])];
        let b = vec![sv(&[(0, 1)]), sv(&[(0, 3), (1, -2)])];
        assert!(same_span(&a, &b));
        let c = vec![sv(&[(0, 1)])];
        assert!(!same_span(&a, &c));
    }

    #[test]
    fn intersection() {
        // span{(1,0,1),(0,1,0)} meets {x3 = 0} in dimension 1
        let rows = vec![sv(&[(0, 1), (2, 1)]), sv(&[(1, 1)])];
        assert_eq!(intersection_dim(&rows, |c| c == 2), 1);
    }

    #[test]
    fn symbolic_rank() {
        let q = Scalar::q();
        // (q, 1) and (q^2, q) are dependent; adding (0, 1) raises rank to 2
        let rows = vec![
            SparseVec::from_dense(&[q.clone(), Scalar::one()]),
            SparseVec::from_dense(&[&q * &q, q.clone()]),
        ];
        assert_eq!(rank(&rows), 1);
        let mut rows = rows;
        rows.push(sv(&[(1, 1)]));
        assert_eq!(rank(&rows), 2);
    }

    #[test]
    fn dense_inverse_symbolic() {
        let q = Scalar::q();
        let a = vec![
            vec![q.clone(), Scalar::one()],
            vec![Scalar::one(), Scalar::one()],
        ];
        let inv = invert(&a).unwrap();
        let prod = mat_mul(&a, &inv);
        assert_eq!(prod, identity(2));
        let singular = vec![
            vec![Scalar::one(), Scalar::one()],
            vec![Scalar::one(), Scalar::one()],
        ];
        assert!(invert(&singular).is_none());
    }

    #[test]
    fn kernel_of_projection() {
        // map (x,y,z) -> (x+y, z): kernel spanned by (1,-1,0)
        let m = vec![
            vec![Scalar::one(), Scalar::one(), Scalar::zero()],
            vec![Scalar::zero(), Scalar::zero(), Scalar::one()],
        ];
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert_eq!(&v[0] + &v[1], Scalar::zero());
        assert!(v[2].is_zero());
    }
}
