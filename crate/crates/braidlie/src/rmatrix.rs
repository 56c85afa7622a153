//! The multiparameter SL(n)-type R-matrix family and its verifiers.
//!
//! Entry formula (in the convention of [`crate::tensor`]):
//!
//! ```text
//! R^i_k^j_l = δ^i_k δ^j_l M_ij + δ^i_l δ^j_k L_ij
//! M_ij = q δ_ij + θ_ji q/r_ij + θ_ij r_ji/q,   L_ij = θ_ji (q - q^-1)
//! ```
//!
//! where `θ_ij = 1` iff `i > j` and the free multiparameters are the `r_ij`
//! with `i < j` (so every `r` referenced above carries a sorted index pair).

use std::collections::BTreeMap;

use thiserror::Error;

use crate::linalg;
use crate::report::{AxiomReport, Witness};
use crate::scalar::{Scalar, Var};
use crate::tensor::{self, Tensor, TensorError};

#[derive(Debug, Error)]
pub enum RMatrixError {
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("zero parameter: {0}")]
    ZeroParameter(String),
    #[error("{0}")]
    Tensor(#[from] TensorError),
    #[error("bad constructor spec: {0}")]
    BadSpec(String),
}

/// The parameter point `(q, {r_ij})` of the family, each a scalar that may be
/// symbolic or rational.
#[derive(Clone, Debug)]
pub struct MultiParams {
    pub n: usize,
    pub q: Scalar,
    r: BTreeMap<(u8, u8), Scalar>,
}

impl MultiParams {
    /// Fully symbolic parameters.
    pub fn symbolic(n: usize) -> Result<Self, RMatrixError> {
        let mut r = BTreeMap::new();
        for i in 1..=n as u8 {
            for j in (i + 1)..=n as u8 {
                r.insert((i, j), Scalar::var(Var::R(i, j)));
            }
        }
        MultiParams::new(n, Scalar::q(), r)
    }

    /// The standard point `r_ij = q` with the given `q`.
    pub fn standard(n: usize, q: Scalar) -> Result<Self, RMatrixError> {
        let mut r = BTreeMap::new();
        for i in 1..=n as u8 {
            for j in (i + 1)..=n as u8 {
                r.insert((i, j), q.clone());
            }
        }
        MultiParams::new(n, q, r)
    }

    pub fn new(
        n: usize,
        q: Scalar,
        r: BTreeMap<(u8, u8), Scalar>,
    ) -> Result<Self, RMatrixError> {
        if !(2..=9).contains(&n) {
            return Err(RMatrixError::IndexOutOfRange(format!("n = {n}")));
        }
        if q.is_zero() {
            return Err(RMatrixError::ZeroParameter("q".into()));
        }
        for i in 1..=n as u8 {
            for j in (i + 1)..=n as u8 {
                match r.get(&(i, j)) {
                    None => {
                        return Err(RMatrixError::BadSpec(format!("missing r{i}{j}")));
                    }
                    Some(v) if v.is_zero() => {
                        return Err(RMatrixError::ZeroParameter(format!("r{i}{j}")));
                    }
                    _ => {}
                }
            }
        }
        Ok(MultiParams { n, q, r })
    }

    /// The stored parameter of the sorted pair; defined for `i != j`.
    pub fn r(&self, i: usize, j: usize) -> Scalar {
        assert!(i != j && i >= 1 && j >= 1 && i <= self.n && j <= self.n);
        let key = (i.min(j) as u8, i.max(j) as u8);
        self.r[&key].clone()
    }

    pub fn mu(&self) -> Scalar {
        &self.q - &self.q.inv().expect("q nonzero")
    }

    /// `M_ij = q δ_ij + θ_ji q/r_ij + θ_ij r_ji/q`.
    pub fn m(&self, i: usize, j: usize) -> Scalar {
        if i == j {
            self.q.clone()
        } else if i < j {
            // θ_ji = 1: q / r_ij with i < j, a stored parameter
            &self.q / &self.r(i, j)
        } else {
            // θ_ij = 1: r_ji / q with j < i, a stored parameter
            &self.r(j, i) / &self.q
        }
    }

    /// `L_ij = θ_ji (q - q^-1)`, nonzero exactly when `i < j`.
    pub fn l(&self, i: usize, j: usize) -> Scalar {
        if i < j {
            self.mu()
        } else {
            Scalar::zero()
        }
    }

    /// The cocycle `σ_ijk` for distinct indices: with `(d1, d2, d3)` the
    /// descending sort of `(i, j, k)`, the base is
    /// `q r_{d3 d1} / (r_{d2 d1} r_{d3 d2})` raised to the sign of the sorting
    /// permutation. Zero when the indices are not distinct.
    pub fn cocycle(&self, i: usize, j: usize, k: usize, inverted: bool) -> Scalar {
        for &x in &[i, j, k] {
            assert!(
                (1..=self.n).contains(&x),
                "cocycle index {x} out of 1..={}",
                self.n
            );
        }
        if i == j || j == k || i == k {
            return Scalar::zero();
        }
        let mut sorted = [i, j, k];
        sorted.sort_unstable();
        let (d3, d2, d1) = (sorted[0], sorted[1], sorted[2]);
        // parity of the permutation (i, j, k) -> (d1, d2, d3)
        let perm = [i, j, k];
        let target = [d1, d2, d3];
        let mut p: Vec<usize> = perm
            .iter()
            .map(|x| target.iter().position(|y| y == x).unwrap())
            .collect();
        let mut even = true;
        for a in 0..3 {
            while p[a] != a {
                let b = p[a];
                p.swap(a, b);
                even = !even;
            }
        }
        let (q, rs) = if inverted {
            (
                self.q.inv().unwrap(),
                [
                    self.r(d3, d1).inv().unwrap(),
                    self.r(d2, d1).inv().unwrap(),
                    self.r(d3, d2).inv().unwrap(),
                ],
            )
        } else {
            (self.q.clone(), [self.r(d3, d1), self.r(d2, d1), self.r(d3, d2)])
        };
        let base = &(&q * &rs[0]) / &(&rs[1] * &rs[2]);
        if even {
            base
        } else {
            base.inv().expect("cocycle base nonzero")
        }
    }

    /// Whether the parameters satisfy, for every column `j`,
    /// `Π_{i<j} r_ij/q = Π_{i>j} r_ji/q`. Not required by any verified
    /// identity here; reported on request only.
    pub fn column_constraint_satisfied(&self) -> bool {
        for j in 1..=self.n {
            let mut lhs = Scalar::one();
            for i in 1..j {
                lhs = &lhs * &(&self.r(i, j) / &self.q);
            }
            let mut rhs = Scalar::one();
            for i in (j + 1)..=self.n {
                rhs = &rhs * &(&self.r(j, i) / &self.q);
            }
            if lhs != rhs {
                return false;
            }
        }
        true
    }
}

/// A bi-invertible R-matrix: the tensor plus its two inverses, computed once.
#[derive(Clone, Debug)]
pub struct RMatrix {
    pub tensor: Tensor,
    pub inverse: Tensor,
    pub second_inverse: Tensor,
    pub params: Option<MultiParams>,
}

impl RMatrix {
    /// Build the multiparameter family member at the given parameters.
    pub fn multiparam(params: MultiParams) -> Result<RMatrix, RMatrixError> {
        let n = params.n;
        let mut t = Tensor::zero(n, 2, 2);
        for i in 1..=n {
            for j in 1..=n {
                // diagonal part δ^i_k δ^j_l M_ij
                let mut v = t.get(&[i, j], &[i, j]);
                v = &v + &params.m(i, j);
                t.set(&[i, j], &[i, j], v);
                // off part δ^i_l δ^j_k L_ij: out (i, j), in (j, i)
                let l = params.l(i, j);
                if !l.is_zero() {
                    let mut v = t.get(&[i, j], &[j, i]);
                    v = &v + &l;
                    t.set(&[i, j], &[j, i], v);
                }
            }
        }
        RMatrix::from_tensor_with_params(t, Some(params))
    }

    /// Wrap an explicit 2->2 tensor, computing both inverses.
    pub fn from_tensor(t: Tensor) -> Result<RMatrix, RMatrixError> {
        RMatrix::from_tensor_with_params(t, None)
    }

    fn from_tensor_with_params(
        t: Tensor,
        params: Option<MultiParams>,
    ) -> Result<RMatrix, RMatrixError> {
        let inverse = t.inverse()?;
        let second_inverse = solve_second_inverse(&t)?;
        Ok(RMatrix {
            tensor: t,
            inverse,
            second_inverse,
            params,
        })
    }

    pub fn n(&self) -> usize {
        self.tensor.n()
    }

    /// `R21`: both index pairs swapped.
    pub fn transposed_braiding(&self) -> Tensor {
        swap_legs(&self.tensor)
    }

    /// Parse `multiparam:n=3;q=7/5;r12=q;r13=q;r23=q` (q defaults to the
    /// symbolic `q`, each missing `r_ij` defaults to the symbolic `r_ij`).
    pub fn parse_spec(spec: &str) -> Result<RMatrix, RMatrixError> {
        let rest = spec
            .strip_prefix("multiparam:")
            .ok_or_else(|| RMatrixError::BadSpec("expected multiparam:...".into()))?;
        let mut n: Option<usize> = None;
        let mut q = Scalar::q();
        let mut r_overrides: Vec<(u8, u8, Scalar)> = Vec::new();
        for part in rest.split(';').filter(|s| !s.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| RMatrixError::BadSpec(format!("expected key=value: {part}")))?;
            let key = key.trim();
            let value = value.trim();
            if key == "n" {
                n = Some(
                    value
                        .parse()
                        .map_err(|_| RMatrixError::BadSpec(format!("bad n: {value}")))?,
                );
            } else if key == "q" {
                q = value
                    .parse()
                    .map_err(|e| RMatrixError::BadSpec(format!("bad q: {e}")))?;
            } else if let Some(ij) = key.strip_prefix('r') {
                let digits: Vec<u32> = ij.chars().filter_map(|c| c.to_digit(10)).collect();
                if digits.len() != 2 || ij.len() != 2 {
                    return Err(RMatrixError::BadSpec(format!("bad parameter name: {key}")));
                }
                let (i, j) = (digits[0] as u8, digits[1] as u8);
                let value: Scalar = value
                    .parse()
                    .map_err(|e| RMatrixError::BadSpec(format!("bad {key}: {e}")))?;
                r_overrides.push((i, j, value));
            } else {
                return Err(RMatrixError::BadSpec(format!("unknown key: {key}")));
            }
        }
        let n = n.ok_or_else(|| RMatrixError::BadSpec("missing n".into()))?;
        if !(2..=9).contains(&n) {
            return Err(RMatrixError::IndexOutOfRange(format!("n = {n}")));
        }
        let mut r = BTreeMap::new();
        for i in 1..=n as u8 {
            for j in (i + 1)..=n as u8 {
                r.insert((i, j), Scalar::var(Var::R(i, j)));
            }
        }
        for (i, j, v) in r_overrides {
            if i == 0 || j == 0 || i >= j || j > n as u8 {
                return Err(RMatrixError::IndexOutOfRange(format!("r{i}{j}")));
            }
            r.insert((i, j), v);
        }
        RMatrix::multiparam(MultiParams::new(n, q, r)?)
    }
}

/// Swap both tensor legs: `(R21)^i_k^j_l = R^j_l^i_k`.
pub fn swap_legs(t: &Tensor) -> Tensor {
    let flip = Tensor::flip(t.n());
    flip.compose(t)
        .and_then(|x| x.compose(&flip))
        .expect("arity 2")
}

/// Solve for the second inverse `Rt = ((R^t2)^-1)^t2`, the inverse of the
/// second-leg partial transpose. In entries it is the unique `X` with
///
/// ```text
/// Σ_{a,b} X[out(i,b), in(a,l)] · R[out(a,j), in(k,b)] = δ_ik δ_lj,
/// ```
///
/// the orientation fixed by the closed forms it must reproduce on the
/// multiparameter family (`Rt = R^-1 q^{2(l-j)}` entrywise). A singular
/// partial transpose means the tensor is not bi-invertible (the flip is the
/// standard example).
pub fn solve_second_inverse(r: &Tensor) -> Result<Tensor, TensorError> {
    let n = r.n();
    let dim = (n * n) as usize;
    // C[(i,l), (k,j)] = R[out(i,j), in(k,l)]
    let mut c = vec![vec![Scalar::zero(); dim]; dim];
    for (&(out, input), v) in r.entries() {
        let o = tensor::unpack(n, 2, out); // (i, j)
        let ii = tensor::unpack(n, 2, input); // (k, l)
        let row = tensor::pack(n, &[o[0], ii[1]]);
        let col = tensor::pack(n, &[ii[0], o[1]]);
        c[row as usize][col as usize] = v.clone();
    }
    let d = linalg::invert(&c)
        .ok_or_else(|| TensorError::Singular("no second inverse".into()))?;
    // X[out(i,j), in(k,l)] = D[(i,l), (k,j)]
    let mut x = Tensor::zero(n, 2, 2);
    for (row, cols) in d.iter().enumerate() {
        let il = tensor::unpack(n, 2, row as u64);
        let (i, l) = (il[0], il[1]);
        for (col, v) in cols.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let kj = tensor::unpack(n, 2, col as u64);
            let (k, j) = (kj[0], kj[1]);
            x.set(&[i, j], &[k, l], v.clone());
        }
    }
    Ok(x)
}

/// Contraction pattern for [`solve_right_inverse`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InversePattern {
    /// Ordinary two-sided inverse `X ∘ T = T ∘ X = id`.
    Ordinary,
    /// Second inverse `X^i_b^a_j T^k_a^b_l = δ^i_l δ^k_j`.
    Second,
}

/// Solve the inverse problem for a 2->2 tensor under the given pattern.
pub fn solve_right_inverse(t: &Tensor, pattern: InversePattern) -> Result<Tensor, TensorError> {
    match pattern {
        InversePattern::Ordinary => t.inverse(),
        InversePattern::Second => solve_second_inverse(t),
    }
}

/// Check the defining contraction of the second inverse entrywise:
/// `Σ_{a,b} X[out(i,b),in(a,l)] R[out(a,j),in(k,b)] = δ_ik δ_lj`.
pub fn second_inverse_contraction_holds(r: &Tensor, x: &Tensor) -> Option<Witness> {
    let n = r.n();
    let mut lhs = Tensor::zero(n, 2, 2);
    for (&(xo, xi), xv) in x.entries() {
        let (i, b) = {
            let v = tensor::unpack(n, 2, xo);
            (v[0], v[1])
        };
        let (a, l) = {
            let v = tensor::unpack(n, 2, xi);
            (v[0], v[1])
        };
        for j in 1..=n {
            for k in 1..=n {
                let rv = r.get(&[a, j], &[k, b]);
                if rv.is_zero() {
                    continue;
                }
                // free indices (i, j, k, l), accumulated at out (i, j), in (k, l)
                let cur = lhs.get(&[i, j], &[k, l]);
                lhs.set(&[i, j], &[k, l], &cur + &(xv * &rv));
            }
        }
    }
    let mut rhs = Tensor::zero(n, 2, 2);
    for i in 1..=n {
        for j in 1..=n {
            rhs.set(&[i, j], &[i, j], Scalar::one());
        }
    }
    lhs.difference_witness(&rhs)
}

/// Run all structural checks on an R-matrix: Yang-Baxter, the q-Hecke
/// property of `τ∘R`, bi-invertibility, and (for family members) the two
/// closed-form inverse identities.
pub fn verify_rmatrix(r: &RMatrix) -> Result<AxiomReport, RMatrixError> {
    let mut report = AxiomReport::new();
    report.extend(tensor::yang_baxter_check(&r.tensor)?);

    if let Some(p) = &r.params {
        // (τ∘R - q)(τ∘R + q^-1) = 0, and neither factor vanishes
        let n = r.n();
        let rhat = Tensor::flip(n).compose(&r.tensor)?;
        let id = Tensor::identity(n, 2);
        let f1 = rhat.sub(&id.scale(&p.q));
        let f2 = rhat.add(&id.scale(&p.q.inv().unwrap()));
        let prod = f1.compose(&f2)?;
        report.push("q-hecke", prod.difference_witness(&Tensor::zero(n, 2, 2)));
        let degenerate = f1 == Tensor::zero(n, 2, 2) || f2 == Tensor::zero(n, 2, 2);
        if degenerate {
            report.push_fail(
                "q-hecke-minimal",
                Witness {
                    input: "minimal polynomial".into(),
                    lhs: "degree <= 1".into(),
                    rhs: "(x-q)(x+q^-1)".into(),
                },
            );
        } else {
            report.push_pass("q-hecke-minimal");
        }
    }

    // bi-invertibility: both caches verify against their defining equations
    let id = Tensor::identity(r.n(), 2);
    report.push(
        "inverse",
        r.tensor
            .compose(&r.inverse)?
            .difference_witness(&id)
            .or(r.inverse.compose(&r.tensor)?.difference_witness(&id)),
    );
    report.push(
        "second-inverse",
        second_inverse_contraction_holds(&r.tensor, &r.second_inverse),
    );

    if let Some(p) = &r.params {
        // R^-1(q, {r}) = R(q^-1, {r^-1})
        let mut rinv_params = BTreeMap::new();
        for i in 1..=p.n as u8 {
            for j in (i + 1)..=p.n as u8 {
                rinv_params.insert((i, j), p.r(i as usize, j as usize).inv().unwrap());
            }
        }
        let inverted = MultiParams::new(p.n, p.q.inv().unwrap(), rinv_params)?;
        let from_formula = RMatrix::multiparam_tensor_only(&inverted);
        report.push(
            "inverse-by-parameter-inversion",
            r.inverse.difference_witness(&from_formula),
        );

        // Rtilde^i_k^j_l = R^-1{}^i_k^j_l * q^{2(l-j)}
        let n = p.n;
        let mut scaled = Tensor::zero(n, 2, 2);
        for (&(out, input), v) in r.inverse.entries() {
            let o = tensor::unpack(n, 2, out);
            let ii = tensor::unpack(n, 2, input);
            let (j, l) = (o[1] as i64, ii[1] as i64);
            let factor = p.q.pow(2 * (l - j)).unwrap();
            scaled.set(&[o[0], o[1]], &[ii[0], ii[1]], v * &factor);
        }
        report.push(
            "second-inverse-by-weight-scaling",
            r.second_inverse.difference_witness(&scaled),
        );
    }
    Ok(report)
}

impl RMatrix {
    fn multiparam_tensor_only(params: &MultiParams) -> Tensor {
        let n = params.n;
        let mut t = Tensor::zero(n, 2, 2);
        for i in 1..=n {
            for j in 1..=n {
                let mut v = t.get(&[i, j], &[i, j]);
                v = &v + &params.m(i, j);
                t.set(&[i, j], &[i, j], v);
                let l = params.l(i, j);
                if !l.is_zero() {
                    let mut v = t.get(&[i, j], &[j, i]);
                    v = &v + &l;
                    t.set(&[i, j], &[j, i], v);
                }
            }
        }
        t
    }
}

/// Verify both displayed M-product identities against the cocycles.
pub fn verify_m_lemma(params: &MultiParams) -> AxiomReport {
    let n = params.n;
    let q = &params.q;
    let qinv = q.inv().unwrap();
    let mu = params.mu();
    let mut report = AxiomReport::new();
    let d = |a: usize, b: usize| {
        if a == b {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    };

    let mut first_witness: Option<Witness> = None;
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                // M^-1_ki M_ji M^-1_jk
                let lhs = &(&params.m(k, i).inv().unwrap() * &params.m(j, i))
                    * &params.m(j, k).inv().unwrap();
                let rhs = &(&(&params.cocycle(i, j, k, false) + &(q * &d(i, j)))
                    + &(&qinv * &(&d(i, k) + &d(j, k))))
                    - &(&(&(q + &qinv) * &d(i, j)) * &d(j, k));
                if lhs != rhs && first_witness.is_none() {
                    first_witness = Some(Witness {
                        input: format!("(i,j,k) = ({i},{j},{k})"),
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
        }
    }
    report.push("m-product-triple", first_witness);

    let mut first_witness: Option<Witness> = None;
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    // M^-1_ki M^-1_jk M_li M_jl
                    let lhs = &(&(&params.m(k, i).inv().unwrap()
                        * &params.m(j, k).inv().unwrap())
                        * &params.m(l, i))
                        * &params.m(j, l);
                    let rhs = if k == l {
                        Scalar::one()
                    } else {
                        let s = params.cocycle(i, j, k, false);
                        let sb = params.cocycle(i, j, l, true);
                        let mut acc = &s * &sb;
                        acc = &acc + &(&(&qinv * &sb) * &(&d(k, i) + &d(k, j)));
                        acc = &acc + &(&(q * &s) * &(&d(l, i) + &d(l, j)));
                        let middle = &(&Scalar::one() + &(&(&mu * q) * &d(i, l)))
                            - &(&(&mu * &qinv) * &d(j, k));
                        acc = &acc + &(&d(i, j) * &middle);
                        acc = &acc + &(&d(i, k) * &d(j, l));
                        acc = &acc + &(&d(k, j) * &d(i, l));
                        acc
                    };
                    if lhs != rhs && first_witness.is_none() {
                        first_witness = Some(Witness {
                            input: format!("(i,j,k,l) = ({i},{j},{k},{l})"),
                            lhs: lhs.to_string(),
                            rhs: rhs.to_string(),
                        });
                    }
                }
            }
        }
    }
    report.push("m-product-quadruple", first_witness);
    report
}

/// FRT-style quadratic relations: the entries of `R t1 t2 - t2 t1 R` on the
/// `n^2` matrix generators, as vectors in the degree-2 word space. Generator
/// `(i, j)` is flattened to `(i-1) n + (j-1)`; the word `t^a_b t^c_d` is
/// `gen(a,b) * n^2 + gen(c,d)`.
pub fn frt_relation_vectors(r: &Tensor) -> Vec<linalg::SparseVec> {
    let n = r.n();
    let nn = (n * n) as u64;
    let gen = |a: usize, b: usize| ((a - 1) * n + (b - 1)) as u64;
    let mut out = Vec::new();
    for i in 1..=n {
        for k in 1..=n {
            for j in 1..=n {
                for l in 1..=n {
                    let mut vec: BTreeMap<u64, Scalar> = BTreeMap::new();
                    // + R^i_a^k_b t^a_j t^b_l
                    for a in 1..=n {
                        for b in 1..=n {
                            let c = r.get(&[i, k], &[a, b]);
                            if c.is_zero() {
                                continue;
                            }
                            let w = gen(a, j) * nn + gen(b, l);
                            let e = vec.entry(w).or_insert_with(Scalar::zero);
                            *e = &*e + &c;
                        }
                    }
                    // - t^k_b t^i_a R^a_j^b_l
                    for a in 1..=n {
                        for b in 1..=n {
                            let c = r.get(&[a, b], &[j, l]);
                            if c.is_zero() {
                                continue;
                            }
                            let w = gen(k, b) * nn + gen(i, a);
                            let e = vec.entry(w).or_insert_with(Scalar::zero);
                            *e = &*e - &c;
                        }
                    }
                    let sv = linalg::SparseVec::from_map(vec);
                    if !sv.is_zero() {
                        out.push(sv);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn standard2() -> RMatrix {
        RMatrix::multiparam(MultiParams::standard(2, Scalar::q()).unwrap()).unwrap()
    }

    /// The standard n=2 R-matrix written out by hand from the entry formula:
    /// q(e11⊗e11 + e22⊗e22) + e11⊗e22 + e22⊗e11 + μ e12⊗e21.
    fn standard2_by_hand() -> Tensor {
        let mut t = Tensor::zero(2, 2, 2);
        t.set(&[1, 1], &[1, 1], Scalar::q());
        t.set(&[2, 2], &[2, 2], Scalar::q());
        t.set(&[1, 2], &[1, 2], Scalar::one());
        t.set(&[2, 1], &[2, 1], Scalar::one());
        t.set(&[1, 2], &[2, 1], Scalar::mu());
        t
    }

    #[test]
    fn standard_n2_entries() {
        assert_eq!(standard2().tensor, standard2_by_hand());
    }

    #[test]
    fn q1_r1_member_is_identity() {
        let p = MultiParams::standard(2, Scalar::one()).unwrap();
        let r = RMatrix::multiparam(p).unwrap();
        assert_eq!(r.tensor, Tensor::identity(2, 2));
    }

    #[test]
    fn compose_r_with_inverse_is_identity() {
        let r = standard2();
        assert_eq!(
            r.tensor.compose(&r.inverse).unwrap(),
            Tensor::identity(2, 2)
        );
    }

    #[test]
    fn rhat_satisfies_braid() {
        let r = standard2();
        let rhat = Tensor::flip(2).compose(&r.tensor).unwrap();
        assert!(tensor::braid_relation_check(&rhat).unwrap().all_passed());
    }

    #[test]
    fn second_inverse_standard_n2() {
        // solved from the 16-unknown linear system; frozen closed form:
        // q^-1(e11⊗e11 + e22⊗e22) + e11⊗e22 + e22⊗e11 - μ q^-2 e12⊗e21
        let r = standard2();
        let qinv = Scalar::q().inv().unwrap();
        let mut expect = Tensor::zero(2, 2, 2);
        expect.set(&[1, 1], &[1, 1], qinv.clone());
        expect.set(&[2, 2], &[2, 2], qinv.clone());
        expect.set(&[1, 2], &[1, 2], Scalar::one());
        expect.set(&[2, 1], &[2, 1], Scalar::one());
        expect.set(
            &[1, 2],
            &[2, 1],
            -&(&Scalar::mu() * &Scalar::q_pow(-2)),
        );
        assert_eq!(r.second_inverse, expect);
    }

    #[test]
    fn flip_inverse_patterns() {
        // The ordinary inverse of the flip is the flip; the second-leg
        // partial transpose of the flip is singular (rows with i != l are
        // zero), so no second inverse exists and the flip is not
        // bi-invertible. The identity, and every family member, is.
        let y = solve_right_inverse(&Tensor::flip(2), InversePattern::Ordinary).unwrap();
        assert_eq!(y, Tensor::flip(2));
        assert!(matches!(
            solve_right_inverse(&Tensor::flip(2), InversePattern::Second),
            Err(TensorError::Singular(_))
        ));
        let id = Tensor::identity(2, 2);
        assert_eq!(
            solve_right_inverse(&id, InversePattern::Second).unwrap(),
            id
        );
    }

    #[test]
    fn verify_symbolic_n2() {
        let r = RMatrix::multiparam(MultiParams::symbolic(2).unwrap()).unwrap();
        let rep = verify_rmatrix(&r).unwrap();
        assert!(rep.all_passed(), "{rep}");
    }

    #[test]
    fn verify_rational_n3() {
        let mut rp = BTreeMap::new();
        rp.insert((1u8, 2u8), Scalar::from_int(2));
        rp.insert((1u8, 3u8), Scalar::from_int(3));
        rp.insert((2u8, 3u8), Scalar::from_int(5));
        let p = MultiParams::new(3, Scalar::rational(7, 5), rp).unwrap();
        let r = RMatrix::multiparam(p).unwrap();
        let rep = verify_rmatrix(&r).unwrap();
        assert!(rep.all_passed(), "{rep}");
    }

    #[test]
    fn corrupted_entry_fails_yang_baxter_with_witness() {
        let mut t = standard2_by_hand();
        t.set(&[1, 2], &[2, 1], &Scalar::mu() + &Scalar::one());
        let rep = tensor::yang_baxter_check(&t).unwrap();
        assert!(!rep.all_passed());
        assert!(rep.checks[0].witness.is_some());
    }

    #[test]
    fn m_lemma_symbolic_n2_and_n3() {
        let p2 = MultiParams::symbolic(2).unwrap();
        assert!(verify_m_lemma(&p2).all_passed());
        // n=3 with symbolic multiparameters and rational q
        let mut rp = BTreeMap::new();
        for (i, j) in [(1u8, 2u8), (1, 3), (2, 3)] {
            rp.insert((i, j), Scalar::var(Var::R(i, j)));
        }
        let p3 = MultiParams::new(3, Scalar::rational(7, 5), rp).unwrap();
        assert!(verify_m_lemma(&p3).all_passed(), "{}", verify_m_lemma(&p3));
    }

    #[test]
    fn m_lemma_triple_at_equal_indices_is_q() {
        // i=j=k: the cocycle vanishes, the δ-terms give q + 2q^-1 - (q+q^-1) = q^-1...
        // evaluate both sides via the lemma engine instead of trusting algebra:
        // the check above already covers it; here pin the displayed right side.
        let p = MultiParams::symbolic(2).unwrap();
        let lhs = &(&p.m(1, 1).inv().unwrap() * &p.m(1, 1)) * &p.m(1, 1).inv().unwrap();
        assert_eq!(lhs, Scalar::q().inv().unwrap());
    }

    #[test]
    fn cocycle_conventions() {
        let p = MultiParams::symbolic(3).unwrap();
        // not distinct -> 0
        assert!(p.cocycle(1, 1, 2, false).is_zero());
        // descending triple (3,2,1): identity permutation, base exponent +1
        let direct = p.cocycle(3, 2, 1, false);
        let base = &(&Scalar::q() * &Scalar::r(1, 3)) / &(&Scalar::r(2, 3) * &Scalar::r(1, 2));
        assert_eq!(direct, base);
        // inverted cocycle is the reciprocal on every distinct triple
        for (i, j, k) in [(3, 2, 1), (1, 2, 3), (2, 3, 1)] {
            let s = p.cocycle(i, j, k, false);
            let sb = p.cocycle(i, j, k, true);
            assert!((&s * &sb).is_one());
        }
        // r -> q specializes every cocycle to 1
        let std3 = MultiParams::standard(3, Scalar::q()).unwrap();
        assert!(std3.cocycle(1, 3, 2, false).is_one());
        assert!(std3.cocycle(3, 2, 1, false).is_one());
    }

    #[test]
    fn frt_relations_identity_and_flip() {
        // literal identity tensor: relations span the commutators
        let vecs = frt_relation_vectors(&Tensor::identity(2, 2));
        assert!(!vecs.is_empty());
        assert_eq!(linalg::rank(&vecs), 6); // binom(4,2) commutativity relations
        // the flip satisfies τ t1 t2 = t2 t1 τ identically: empty relation set
        let vecs = frt_relation_vectors(&Tensor::flip(2));
        assert!(vecs.is_empty());
    }

    #[test]
    fn frt_standard_n2_rank_and_rescaling_invariance() {
        let r = standard2();
        let vecs = frt_relation_vectors(&r.tensor);
        assert_eq!(linalg::rank(&vecs), 6);
        // rescaling R leaves the relation span unchanged
        let c = &(&Scalar::q() + &Scalar::from_int(3)) / &Scalar::q_pow(2);
        let scaled = frt_relation_vectors(&r.tensor.scale(&c));
        assert!(linalg::same_span(&vecs, &scaled));
    }

    #[test]
    fn spec_string_parsing() {
        let r = RMatrix::parse_spec("multiparam:n=2;r12=q").unwrap();
        assert_eq!(r.tensor, standard2().tensor);
        let r = RMatrix::parse_spec("multiparam:n=3;q=7/5;r12=2;r13=3;r23=5").unwrap();
        assert_eq!(r.n(), 3);
        assert!(RMatrix::parse_spec("multiparam:n=1").is_err());
        assert!(RMatrix::parse_spec("multiparam:n=2;r21=q").is_err());
        assert!(RMatrix::parse_spec("frt:n=2").is_err());
    }

    #[test]
    fn column_constraint_validator() {
        // r_ij = q satisfies the column constraint trivially (both sides 1).
        let p = MultiParams::standard(3, Scalar::q()).unwrap();
        assert!(p.column_constraint_satisfied());
        let mut rp = BTreeMap::new();
        rp.insert((1u8, 2u8), Scalar::from_int(2));
        rp.insert((1u8, 3u8), Scalar::from_int(3));
        rp.insert((2u8, 3u8), Scalar::from_int(5));
        let p = MultiParams::new(3, Scalar::rational(7, 5), rp).unwrap();
        assert!(!p.column_constraint_satisfied());
    }
}
