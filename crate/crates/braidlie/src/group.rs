//! Finite groups given by multiplication tables, their conjugacy classes,
//! and the braided/quantum Lie algebras of class-indexed first-order calculi.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lie::{BraidedLieAlgebra, QuantumLieAlgebra};
use crate::scalar::Scalar;
use crate::tensor::Tensor;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),
    #[error("subset is not Ad-invariant (conjugating {0} by {1} leaves it)")]
    NotAdInvariant(String, String),
    #[error("subset contains the identity element")]
    ContainsIdentity,
    #[error("unknown element label: {0}")]
    UnknownElement(String),
    #[error("bad group data: {0}")]
    BadData(String),
}

/// A finite group as an explicit multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    labels: Vec<String>,
    /// `table[a][b]` = index of the product `a * b`.
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(labels: Vec<String>, table: Vec<Vec<usize>>, identity: usize) -> Result<Self, GroupError> {
        let n = labels.len();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(GroupError::BadData("table shape".into()));
        }
        if identity >= n {
            return Err(GroupError::BadData("identity index".into()));
        }
        for row in &table {
            for &v in row {
                if v >= n {
                    return Err(GroupError::BadData("table entry out of range".into()));
                }
            }
        }
        // identity law
        for a in 0..n {
            if table[identity][a] != a || table[a][identity] != a {
                return Err(GroupError::NotAGroup(format!(
                    "identity fails on {}",
                    labels[a]
                )));
            }
        }
        // inverses
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inverse[a] = b,
                None => {
                    return Err(GroupError::NotAGroup(format!(
                        "no inverse for {}",
                        labels[a]
                    )))
                }
            }
        }
        // associativity
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAGroup(format!(
                            "associativity fails on ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            labels,
            table,
            identity,
            inverse,
        })
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        // g h g^-1
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn index_of(&self, label: &str) -> Result<usize, GroupError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| GroupError::UnknownElement(label.to_string()))
    }

    /// Partition into conjugacy classes, each sorted, classes ordered by
    /// their smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if seen[a] {
                continue;
            }
            let mut class: Vec<usize> = (0..n).map(|g| self.conjugate(g, a)).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class);
        }
        classes
    }

    pub fn is_ad_invariant(&self, subset: &[usize]) -> Result<(), GroupError> {
        for &h in subset {
            for g in 0..self.order() {
                let c = self.conjugate(g, h);
                if !subset.contains(&c) {
                    return Err(GroupError::NotAdInvariant(
                        self.labels[h].clone(),
                        self.labels[g].clone(),
                    ));
                }
            }
        }
        Ok(())
    }

    // -- built-in constructors ------------------------------------------------

    /// Symmetric group on `n` letters (n <= 5), elements labeled by one-line
    /// permutation words.
    pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
        if !(1..=5).contains(&n) {
            return Err(GroupError::BadData("symmetric group needs 1 <= n <= 5".into()));
        }
        let mut perms: Vec<Vec<usize>> = vec![vec![]];
        for k in 0..n {
            let mut next = Vec::new();
            for p in &perms {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, k);
                    next.push(q);
                }
            }
            perms = next;
        }
        perms.sort();
        let labels: Vec<String> = perms
            .iter()
            .map(|p| p.iter().map(|x| (x + 1).to_string()).collect::<String>())
            .collect();
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let mut table = vec![vec![0usize; perms.len()]; perms.len()];
        for (a, pa) in perms.iter().enumerate() {
            for (b, pb) in perms.iter().enumerate() {
                // (pa ∘ pb)(x) = pa(pb(x))
                let prod: Vec<usize> = (0..n).map(|x| pa[pb[x]]).collect();
                table[a][b] = index(&prod);
            }
        }
        let id: Vec<usize> = (0..n).collect();
        let identity = index(&id);
        FiniteGroup::new(labels, table, identity)
    }

    /// Cyclic group of order `n`.
    pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
        if n == 0 {
            return Err(GroupError::BadData("cyclic group of order 0".into()));
        }
        let labels = (0..n).map(|i| format!("g{i}")).collect();
        let table = (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect();
        FiniteGroup::new(labels, table, 0)
    }

    /// Dihedral group of order `2n`: rotations `r0..r(n-1)`, reflections
    /// `s0..s(n-1)` with `si = s0 * ri`.
    pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
        if n < 1 {
            return Err(GroupError::BadData("dihedral needs n >= 1".into()));
        }
        let mut labels: Vec<String> = (0..n).map(|i| format!("r{i}")).collect();
        labels.extend((0..n).map(|i| format!("s{i}")));
        // element (flip, rot): (0,a)(0,b) = (0,a+b); (0,a)(1,b) = (1, b-a);
        // (1,a)(0,b) = (1, a+b); (1,a)(1,b) = (0, b-a)
        let idx = |flip: usize, rot: usize| flip * n + rot;
        let mut table = vec![vec![0usize; 2 * n]; 2 * n];
        for fa in 0..2 {
            for a in 0..n {
                for fb in 0..2 {
                    for b in 0..n {
                        let (fc, c) = match (fa, fb) {
                            (0, 0) => (0, (a + b) % n),
                            (0, 1) => (1, (b + n - a) % n),
                            (1, 0) => (1, (a + b) % n),
                            _ => (0, (b + n - a) % n),
                        };
                        table[idx(fa, a)][idx(fb, b)] = idx(fc, c);
                    }
                }
            }
        }
        FiniteGroup::new(labels, table, 0)
    }

    /// Built-in names: `S3`, `S4`, `S5`, `Z<n>`, `D<n>`.
    pub fn by_name(name: &str) -> Result<FiniteGroup, GroupError> {
        if let Some(n) = name.strip_prefix('S') {
            let n: usize = n
                .parse()
                .map_err(|_| GroupError::BadData(format!("bad group name {name}")))?;
            return FiniteGroup::symmetric(n);
        }
        if let Some(n) = name.strip_prefix('Z') {
            let n: usize = n
                .parse()
                .map_err(|_| GroupError::BadData(format!("bad group name {name}")))?;
            return FiniteGroup::cyclic(n);
        }
        if let Some(n) = name.strip_prefix('D') {
            let n: usize = n
                .parse()
                .map_err(|_| GroupError::BadData(format!("bad group name {name}")))?;
            return FiniteGroup::dihedral(n);
        }
        Err(GroupError::BadData(format!("unknown group name {name}")))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GroupJson {
            elements: self.labels.clone(),
            table: self.table.clone(),
            identity: self.identity,
        })
        .expect("group serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<FiniteGroup, GroupError> {
        let data: GroupJson =
            serde_json::from_value(v.clone()).map_err(|e| GroupError::BadData(e.to_string()))?;
        FiniteGroup::new(data.elements, data.table, data.identity)
    }
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

// ---------------------------------------------------------------------------
// Class calculi
// ---------------------------------------------------------------------------

/// The braided Lie algebra of the first-order calculus attached to an
/// Ad-invariant subset `C` not containing the identity: basis `{X_g : g in C}`
/// (plus `X_e` first when `extended`), with
///
/// ```text
/// Ψ(X_g ⊗ X_h) = X_h ⊗ X_g,   Δ(X_g) = X_g ⊗ X_g,   ε(X_g) = 1,
/// [X_g, X_h] = X_{g h g^-1},   Υ(X_g ⊗ X_h) = X_{g h g^-1} ⊗ X_g.
/// ```
pub fn calculus_braided_lie(
    group: &FiniteGroup,
    class: &[usize],
    extended: bool,
) -> Result<BraidedLieAlgebra, GroupError> {
    if class.contains(&group.identity()) {
        return Err(GroupError::ContainsIdentity);
    }
    group.is_ad_invariant(class)?;

    let mut members: Vec<usize> = class.to_vec();
    members.sort_unstable();
    members.dedup();
    if extended {
        members.insert(0, group.identity());
    }
    let dim = members.len();
    let pos = |g: usize| members.iter().position(|&x| x == g).expect("closed");

    let labels: Vec<String> = members
        .iter()
        .map(|&g| format!("X_{}", group.label(g)))
        .collect();

    let mut coproduct = Tensor::zero(dim, 1, 2);
    let mut counit = Tensor::zero(dim, 1, 0);
    let mut bracket = Tensor::zero(dim, 2, 1);
    for (a, &g) in members.iter().enumerate() {
        coproduct.set(&[a + 1, a + 1], &[a + 1], Scalar::one());
        counit.set(&[], &[a + 1], Scalar::one());
        for (b, &h) in members.iter().enumerate() {
            let c = pos(group.conjugate(g, h));
            bracket.set(&[c + 1], &[a + 1, b + 1], Scalar::one());
        }
    }
    let braiding = Tensor::flip(dim);
    Ok(BraidedLieAlgebra::from_bracket(
        labels, coproduct, counit, bracket, braiding,
    ))
}

/// The quantum Lie algebra (tangent space) of the same calculus: basis
/// `{x_g : g in C}` with
///
/// ```text
/// σ(x_g ⊗ x_h) = x_{g h g^-1} ⊗ x_g,  [x_g, x_h] = x_{g h g^-1} - x_h,
/// δ(x_g) = x_g ⊗ x_g.
/// ```
pub fn quantum_lie_of_calculus(
    group: &FiniteGroup,
    class: &[usize],
) -> Result<QuantumLieAlgebra, GroupError> {
    if class.contains(&group.identity()) {
        return Err(GroupError::ContainsIdentity);
    }
    group.is_ad_invariant(class)?;
    let mut members: Vec<usize> = class.to_vec();
    members.sort_unstable();
    members.dedup();
    let dim = members.len();
    let pos = |g: usize| members.iter().position(|&x| x == g).expect("closed");
    let labels: Vec<String> = members
        .iter()
        .map(|&g| format!("x_{}", group.label(g)))
        .collect();

    let mut sigma = Tensor::zero(dim, 2, 2);
    let mut bracket = Tensor::zero(dim, 2, 1);
    let mut delta = Tensor::zero(dim, 1, 2);
    for (a, &g) in members.iter().enumerate() {
        delta.set(&[a + 1, a + 1], &[a + 1], Scalar::one());
        for (b, &h) in members.iter().enumerate() {
            let c = pos(group.conjugate(g, h));
            sigma.set(&[c + 1, a + 1], &[a + 1, b + 1], Scalar::one());
            bracket.add_entry(
                (c) as u64,
                (a * dim + b) as u64,
                Scalar::one(),
            );
            bracket.add_entry((b) as u64, (a * dim + b) as u64, -&Scalar::one());
        }
    }
    Ok(QuantumLieAlgebra {
        basis: labels,
        sigma,
        bracket,
        little_coproduct: Some(delta),
        background: Some(Tensor::flip(dim)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_structure() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        let classes = s3.conjugacy_classes();
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        // the class of transpositions has size 3
        let transpositions = transposition_class(&s3);
        assert_eq!(transpositions.len(), 3);
    }

    pub fn transposition_class(s3: &FiniteGroup) -> Vec<usize> {
        s3.conjugacy_classes()
            .into_iter()
            .find(|c| c.len() == 3)
            .unwrap()
    }

    #[test]
    fn cyclic_is_abelian() {
        let z3 = FiniteGroup::cyclic(3);
        let z3 = z3.unwrap();
        let classes = z3.conjugacy_classes();
        assert_eq!(classes.len(), 3);
        assert!(classes.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn dihedral_and_s4_are_groups() {
        let d4 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(d4.order(), 8);
        let s4 = FiniteGroup::symmetric(4).unwrap();
        assert_eq!(s4.order(), 24);
        let sizes = {
            let mut v: Vec<usize> = s4.conjugacy_classes().iter().map(|c| c.len()).collect();
            v.sort_unstable();
            v
        };
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn json_round_trip() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let j = s3.to_json();
        let back = FiniteGroup::from_json(&j).unwrap();
        assert_eq!(back.order(), 6);
        assert_eq!(back.to_json(), j);
    }

    #[test]
    fn bad_tables_rejected() {
        // identity broken
        let bad = FiniteGroup::new(
            vec!["e".into(), "a".into()],
            vec![vec![0, 1], vec![1, 1]],
            0,
        );
        assert!(matches!(bad, Err(GroupError::NotAGroup(_))));
    }

    #[test]
    fn class_data_guards() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let e = s3.identity();
        assert!(matches!(
            calculus_braided_lie(&s3, &[e], false),
            Err(GroupError::ContainsIdentity)
        ));
        // a single transposition is not Ad-invariant
        let t = transposition_class(&s3)[0];
        assert!(matches!(
            calculus_braided_lie(&s3, &[t], false),
            Err(GroupError::NotAdInvariant(_, _))
        ));
    }
}
