//! Sparse exact linear maps between tensor powers of a fundamental space.
//!
//! # Index convention
//!
//! A [`Tensor`] with in-arity `a` and out-arity `b` maps `(k^n)^{⊗a}` to
//! `(k^n)^{⊗b}`. The stored entry at `(out = (i1..ib), in = (j1..ja))` is the
//! coefficient of `e_{i1} ⊗ … ⊗ e_{ib}` in the image of
//! `e_{j1} ⊗ … ⊗ e_{ja}`. Indices are 1-based; multi-indices are packed
//! row-major with the first index most significant.
//!
//! Four-index R-matrix symbols are read with alternating upper/lower slots:
//! `R^i{}_k{}^j{}_l` is the entry at `out = (i, j)`, `in = (k, l)`, so `R`
//! acting on `e_k ⊗ e_l` produces `Σ R^i{}_k{}^j{}_l e_i ⊗ e_j`. Every suffix
//! formula in this crate is transcribed into this convention exactly once, at
//! the site that builds the corresponding tensor, with a unit test per
//! formula.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, DenseMat, SparseVec};
use crate::report::{AxiomReport, Witness};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("linear system is singular: {0}")]
    Singular(String),
    #[error("bad tensor data: {0}")]
    BadData(String),
}

/// A sparse exact linear map `(k^n)^{⊗a} -> (k^n)^{⊗b}`.
#[derive(Clone, PartialEq)]
pub struct Tensor {
    n: usize,
    in_arity: usize,
    out_arity: usize,
    entries: BTreeMap<(u64, u64), Scalar>,
}

/// Pack a 1-based multi-index row-major.
pub fn pack(n: usize, idx: &[usize]) -> u64 {
    let mut out: u64 = 0;
    for &i in idx {
        debug_assert!((1..=n).contains(&i));
        out = out * n as u64 + (i as u64 - 1);
    }
    out
}

/// Unpack to a 1-based multi-index of length `arity`.
pub fn unpack(n: usize, arity: usize, mut packed: u64) -> Vec<usize> {
    let mut out = vec![0usize; arity];
    for slot in (0..arity).rev() {
        out[slot] = (packed % n as u64) as usize + 1;
        packed /= n as u64;
    }
    out
}

/// Render a packed multi-index as `e1⊗e2⊗…`.
pub fn basis_label(n: usize, arity: usize, packed: u64) -> String {
    if arity == 0 {
        return "1".to_string();
    }
    unpack(n, arity, packed)
        .iter()
        .map(|i| format!("e{i}"))
        .collect::<Vec<_>>()
        .join("⊗")
}

impl Tensor {
    pub fn zero(n: usize, in_arity: usize, out_arity: usize) -> Self {
        Tensor {
            n,
            in_arity,
            out_arity,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn in_arity(&self) -> usize {
        self.in_arity
    }

    pub fn out_arity(&self) -> usize {
        self.out_arity
    }

    pub fn in_dim(&self) -> u64 {
        (self.n as u64).pow(self.in_arity as u32)
    }

    pub fn out_dim(&self) -> u64 {
        (self.n as u64).pow(self.out_arity as u32)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(u64, u64), &Scalar)> {
        self.entries.iter()
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    /// Add `value` to the entry at packed indices.
    pub fn add_entry(&mut self, out: u64, input: u64, value: Scalar) {
        if value.is_zero() {
            return;
        }
        match self.entries.entry((out, input)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &value;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Set the entry at 1-based multi-indices.
    pub fn set(&mut self, out: &[usize], input: &[usize], value: Scalar) {
        assert_eq!(out.len(), self.out_arity);
        assert_eq!(input.len(), self.in_arity);
        let key = (pack(self.n, out), pack(self.n, input));
        if value.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
    }

    pub fn get(&self, out: &[usize], input: &[usize]) -> Scalar {
        self.entries
            .get(&(pack(self.n, out), pack(self.n, input)))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn get_packed(&self, out: u64, input: u64) -> Scalar {
        self.entries
            .get(&(out, input))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn identity(n: usize, arity: usize) -> Self {
        let mut t = Tensor::zero(n, arity, arity);
        for i in 0..(n as u64).pow(arity as u32) {
            t.entries.insert((i, i), Scalar::one());
        }
        t
    }

    /// The flip `v ⊗ w -> w ⊗ v` on `(k^n)^{⊗2}`.
    pub fn flip(n: usize) -> Self {
        Tensor::block_flip(n, 1, 1)
    }

    /// The block flip `(k^n)^{⊗a} ⊗ (k^n)^{⊗b} -> (k^n)^{⊗b} ⊗ (k^n)^{⊗a}`.
    pub fn block_flip(n: usize, a: usize, b: usize) -> Self {
        let (da, db) = ((n as u64).pow(a as u32), (n as u64).pow(b as u32));
        let mut t = Tensor::zero(n, a + b, a + b);
        for x in 0..da {
            for y in 0..db {
                t.entries.insert((y * da + x, x * db + y), Scalar::one());
            }
        }
        t
    }

    pub fn scale(&self, s: &Scalar) -> Tensor {
        if s.is_zero() {
            return Tensor::zero(self.n, self.in_arity, self.out_arity);
        }
        Tensor {
            n: self.n,
            in_arity: self.in_arity,
            out_arity: self.out_arity,
            entries: self
                .entries
                .iter()
                .map(|(k, v)| (*k, v * s))
                .collect(),
        }
    }

    pub fn add(&self, other: &Tensor) -> Tensor {
        assert_eq!((self.n, self.in_arity, self.out_arity),
                   (other.n, other.in_arity, other.out_arity));
        let mut out = self.clone();
        for (&k, v) in &other.entries {
            out.add_entry(k.0, k.1, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Tensor) -> Tensor {
        self.add(&other.scale(&-&Scalar::one()))
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Tensor) -> Result<Tensor, TensorError> {
        if self.n != other.n {
            return Err(TensorError::DimensionMismatch(self.n, other.n));
        }
        if self.in_arity != other.out_arity {
            return Err(TensorError::ArityMismatch(format!(
                "compose: left in-arity {} vs right out-arity {}",
                self.in_arity, other.out_arity
            )));
        }
        let mut by_in: HashMap<u64, Vec<(u64, &Scalar)>> = HashMap::new();
        for (&(o, i), v) in &self.entries {
            by_in.entry(i).or_default().push((o, v));
        }
        let mut out = Tensor::zero(self.n, other.in_arity, self.out_arity);
        for (&(mid, i), v) in &other.entries {
            if let Some(lefts) = by_in.get(&mid) {
                for (o, w) in lefts {
                    out.add_entry(*o, i, *w * v);
                }
            }
        }
        Ok(out)
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.n, other.n);
        let (di_o, do_o) = (other.in_dim(), other.out_dim());
        let mut out = Tensor::zero(
            self.n,
            self.in_arity + other.in_arity,
            self.out_arity + other.out_arity,
        );
        for (&(oa, ia), va) in &self.entries {
            for (&(ob, ib), vb) in &other.entries {
                out.entries
                    .insert((oa * do_o + ob, ia * di_o + ib), va * vb);
            }
        }
        out
    }

    /// Apply to a sparse vector in the input power.
    pub fn apply(&self, v: &BTreeMap<u64, Scalar>) -> BTreeMap<u64, Scalar> {
        let mut out: BTreeMap<u64, Scalar> = BTreeMap::new();
        for (&(o, i), c) in &self.entries {
            if let Some(x) = v.get(&i) {
                if x.is_zero() {
                    continue;
                }
                let add = c * x;
                let e = out.entry(o).or_insert_with(Scalar::zero);
                *e = &*e + &add;
            }
        }
        out.retain(|_, s| !s.is_zero());
        out
    }

    pub fn to_dense(&self) -> DenseMat {
        let rows = self.out_dim() as usize;
        let cols = self.in_dim() as usize;
        let mut m = vec![vec![Scalar::zero(); cols]; rows];
        for (&(o, i), v) in &self.entries {
            m[o as usize][i as usize] = v.clone();
        }
        m
    }

    pub fn from_dense(n: usize, in_arity: usize, out_arity: usize, m: &DenseMat) -> Tensor {
        let mut t = Tensor::zero(n, in_arity, out_arity);
        for (o, row) in m.iter().enumerate() {
            for (i, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    t.entries.insert((o as u64, i as u64), v.clone());
                }
            }
        }
        t
    }

    /// Ordinary two-sided inverse for a square tensor.
    pub fn inverse(&self) -> Result<Tensor, TensorError> {
        if self.in_arity != self.out_arity {
            return Err(TensorError::ArityMismatch("inverse of non-square".into()));
        }
        let inv = linalg::invert(&self.to_dense())
            .ok_or_else(|| TensorError::Singular("no ordinary inverse".into()))?;
        Ok(Tensor::from_dense(self.n, self.in_arity, self.out_arity, &inv))
    }

    /// First packed (out, in) where the two tensors differ.
    pub fn first_difference(&self, other: &Tensor) -> Option<(u64, u64)> {
        let mut keys: Vec<(u64, u64)> = self.entries.keys().cloned().collect();
        keys.extend(other.entries.keys().cloned());
        keys.sort();
        keys.dedup();
        keys.into_iter()
            .find(|k| self.entries.get(k) != other.entries.get(k))
    }

    /// Compare two routes to the same map; `None` means equal.
    pub fn difference_witness(&self, other: &Tensor) -> Option<Witness> {
        self.first_difference(other).map(|(o, i)| Witness {
            input: format!(
                "{} -> coefficient of {}",
                basis_label(self.n, self.in_arity, i),
                basis_label(self.n, self.out_arity, o)
            ),
            lhs: self.get_packed(o, i).to_string(),
            rhs: other.get_packed(o, i).to_string(),
        })
    }

    /// Rows of the tensor viewed as vectors indexed by the input power:
    /// the images of all input basis vectors.
    pub fn image_vectors(&self) -> Vec<SparseVec> {
        let mut cols: BTreeMap<u64, BTreeMap<u64, Scalar>> = BTreeMap::new();
        for (&(o, i), v) in &self.entries {
            cols.entry(i).or_default().insert(o, v.clone());
        }
        cols.into_values().map(SparseVec::from_map).collect()
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Tensor(n={}, {}->{}, {} entries)",
            self.n, self.in_arity, self.out_arity, self.entries.len()
        )?;
        for (&(o, i), v) in &self.entries {
            writeln!(
                f,
                "  {} -> {}: {}",
                basis_label(self.n, self.in_arity, i),
                basis_label(self.n, self.out_arity, o),
                v
            )?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Braid and Yang-Baxter checks
// ---------------------------------------------------------------------------

/// Check `(T⊗id)(id⊗T)(T⊗id) = (id⊗T)(T⊗id)(id⊗T)` on the triple power.
pub fn braid_relation_check(t: &Tensor) -> Result<AxiomReport, TensorError> {
    if t.in_arity != 2 || t.out_arity != 2 {
        return Err(TensorError::ArityMismatch(
            "braid relation needs a 2->2 tensor".into(),
        ));
    }
    let id1 = Tensor::identity(t.n, 1);
    let t12 = t.tensor(&id1);
    let t23 = id1.tensor(t);
    let lhs = t12.compose(&t23)?.compose(&t12)?;
    let rhs = t23.compose(&t12)?.compose(&t23)?;
    let mut report = AxiomReport::new();
    report.push("braid-relation", lhs.difference_witness(&rhs));
    Ok(report)
}

/// Check the Yang-Baxter equation `R12 R13 R23 = R23 R13 R12`.
pub fn yang_baxter_check(r: &Tensor) -> Result<AxiomReport, TensorError> {
    if r.in_arity != 2 || r.out_arity != 2 {
        return Err(TensorError::ArityMismatch(
            "Yang-Baxter needs a 2->2 tensor".into(),
        ));
    }
    let id1 = Tensor::identity(r.n, 1);
    let r12 = r.tensor(&id1);
    let r23 = id1.tensor(r);
    let swap23 = id1.tensor(&Tensor::flip(r.n));
    let r13 = swap23.compose(&r12)?.compose(&swap23)?;
    let lhs = r12.compose(&r13)?.compose(&r23)?;
    let rhs = r23.compose(&r13)?.compose(&r12)?;
    let mut report = AxiomReport::new();
    report.push("yang-baxter", lhs.difference_witness(&rhs));
    Ok(report)
}

// ---------------------------------------------------------------------------
// JSON form: {n, in_arity, out_arity, entries: [[out..],[in..],"scalar"]}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TensorJson {
    n: usize,
    in_arity: usize,
    out_arity: usize,
    entries: Vec<(Vec<usize>, Vec<usize>, String)>,
}

impl Tensor {
    pub fn to_json(&self) -> serde_json::Value {
        let entries = self
            .entries
            .iter()
            .map(|(&(o, i), v)| {
                (
                    unpack(self.n, self.out_arity, o),
                    unpack(self.n, self.in_arity, i),
                    v.to_string(),
                )
            })
            .collect();
        serde_json::to_value(TensorJson {
            n: self.n,
            in_arity: self.in_arity,
            out_arity: self.out_arity,
            entries,
        })
        .expect("tensor serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Tensor, TensorError> {
        let data: TensorJson =
            serde_json::from_value(v.clone()).map_err(|e| TensorError::BadData(e.to_string()))?;
        let mut t = Tensor::zero(data.n, data.in_arity, data.out_arity);
        for (out, input, s) in data.entries {
            if out.len() != data.out_arity || input.len() != data.in_arity {
                return Err(TensorError::BadData("multi-index length".into()));
            }
            for &i in out.iter().chain(input.iter()) {
                if i == 0 || i > data.n {
                    return Err(TensorError::IndexOutOfRange(format!("{i}")));
                }
            }
            let value: Scalar = s
                .parse()
                .map_err(|e: crate::scalar::ScalarError| TensorError::BadData(e.to_string()))?;
            t.set(&out, &input, value);
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pack_unpack_round_trip() {
        for packed in 0..27u64 {
            let idx = unpack(3, 3, packed);
            assert_eq!(pack(3, &idx), packed);
        }
        assert_eq!(pack(2, &[1, 2]), 1);
        assert_eq!(pack(2, &[2, 1]), 2);
    }

    #[test]
    fn identity_laws() {
        let mut t = Tensor::zero(2, 2, 2);
        t.set(&[1, 2], &[2, 1], Scalar::q());
        t.set(&[1, 1], &[1, 1], Scalar::from_int(3));
        let id = Tensor::identity(2, 2);
        assert_eq!(id.compose(&t).unwrap(), t);
        assert_eq!(t.compose(&id).unwrap(), t);
    }

    #[test]
    fn flip_squares_to_identity() {
        let f = Tensor::flip(3);
        assert_eq!(f.compose(&f).unwrap(), Tensor::identity(3, 2));
    }

    #[test]
    fn flip_is_a_braiding() {
        let rep = braid_relation_check(&Tensor::flip(2)).unwrap();
        assert!(rep.all_passed());
    }

    #[test]
    fn diagonal_satisfies_yang_baxter_but_not_braid() {
        // T = diag(1,2,3,4) on the 2x2 tensor square: multiplicative
        // diagonal entries satisfy R12 R13 R23 = R23 R13 R12 identically,
        // while the braid form fails (brute force over all basis inputs
        // gives t_ab^2 t_bc vs t_bc^2 t_ab).
        let mut t = Tensor::zero(2, 2, 2);
        let mut k = 1;
        for i in 1..=2 {
            for j in 1..=2 {
                t.set(&[i, j], &[i, j], Scalar::from_int(k));
                k += 1;
            }
        }
        assert!(yang_baxter_check(&t).unwrap().all_passed());
        let rep = braid_relation_check(&t).unwrap();
        assert!(!rep.all_passed());
        assert!(rep.checks[0].witness.is_some());
    }

    #[test]
    fn shear_fails_braid_with_witness() {
        // identity plus e1⊗e2 -> e1⊗e1
        let mut t = Tensor::identity(2, 2);
        t.set(&[1, 1], &[1, 2], Scalar::one());
        let rep = braid_relation_check(&t).unwrap();
        assert!(!rep.all_passed());
        let w = rep.checks[0].witness.as_ref().unwrap();
        assert!(w.input.contains("⊗"));
        assert!(!yang_baxter_check(&t).unwrap().all_passed());
    }

    #[test]
    fn tensor_product_mixed_composition() {
        // (f⊗g)∘(h⊗k) = (f∘h)⊗(g∘k) on small sparse instances
        let mut f = Tensor::zero(2, 1, 1);
        f.set(&[1], &[2], Scalar::q());
        f.set(&[2], &[2], Scalar::one());
        let mut g = Tensor::zero(2, 2, 1);
        g.set(&[1], &[1, 2], Scalar::from_int(2));
        let mut h = Tensor::zero(2, 1, 1);
        h.set(&[2], &[1], Scalar::one());
        let mut k = Tensor::zero(2, 1, 2);
        k.set(&[2, 2], &[1], Scalar::q());
        let lhs = f.tensor(&g).compose(&h.tensor(&k)).unwrap();
        let rhs = f.compose(&h).unwrap().tensor(&g.compose(&k).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn block_flip_coherence() {
        // flip_{b,a'} ∘ (f⊗g) = (g⊗f) ∘ flip_{1,1} for f: V->V^2, g: V->V
        let mut f = Tensor::zero(2, 1, 2);
        f.set(&[1, 2], &[1], Scalar::q());
        f.set(&[2, 2], &[2], Scalar::one());
        let mut g = Tensor::zero(2, 1, 1);
        g.set(&[1], &[2], Scalar::from_int(5));
        let lhs = Tensor::block_flip(2, 2, 1)
            .compose(&f.tensor(&g))
            .unwrap();
        let rhs = g.tensor(&f).compose(&Tensor::block_flip(2, 1, 1)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        let f = Tensor::identity(2, 2);
        let g = Tensor::identity(2, 1);
        assert!(matches!(
            f.compose(&g),
            Err(TensorError::ArityMismatch(_))
        ));
        let h = Tensor::identity(3, 2);
        assert!(matches!(
            f.compose(&h),
            Err(TensorError::DimensionMismatch(2, 3))
        ));
    }

    #[test]
    fn json_round_trip() {
        let mut t = Tensor::zero(2, 2, 1);
        t.set(&[1], &[2, 1], Scalar::mu());
        t.set(&[2], &[1, 1], Scalar::rational(-3, 7));
        let j = t.to_json();
        let back = Tensor::from_json(&j).unwrap();
        assert_eq!(t, back);
        // byte-identical re-serialization
        assert_eq!(
            serde_json::to_string(&j).unwrap(),
            serde_json::to_string(&back.to_json()).unwrap()
        );
    }

    #[test]
    fn json_rejects_bad_indices() {
        let j = serde_json::json!({
            "n": 2, "in_arity": 1, "out_arity": 1,
            "entries": [[[3],[1],"1"]]
        });
        assert!(matches!(
            Tensor::from_json(&j),
            Err(TensorError::IndexOutOfRange(_))
        ));
    }
}
