//! `H_*QMO(k)` in the range used here.
//!
//! The homology is the polynomial algebra, under the Pontrjagin product, on
//! generators `Q^I x` where `x` runs over the `e_J` basis of `H~_*MO(k)` and
//! `I = (i_1, ..., i_r)` is admissible (`i_j <= 2 i_{j+1}`) with excess
//! `i_1 - i_2 - ... - i_r > |x|`. Height is 1 on `e_J`, doubles under `Q^i`
//! and adds under products.

mod ops;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::class::{GF2Class, Graded, Tensor};
use crate::error::{Error, Result};
use crate::gf2::{kernel, BitMatrix, BitVector};
use crate::mo::{mo_basis, EMonomial};

pub use ops::{h2_project, homology_suspend, nishida, q_apply, q_coproduct};

/// `Q^{i_1} ... Q^{i_r} s^susp(e_J)`; `ops` lists the outermost operation first.
///
/// A non-zero `susp` marks a class carried to `H_*QΣ^susp MO(k)` by homology
/// suspension; such bases are primitive.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QGenerator {
    pub ops: Vec<u32>,
    pub base: EMonomial,
    pub susp: u32,
}

impl QGenerator {
    pub fn base(base: EMonomial) -> Self {
        QGenerator { ops: Vec::new(), base, susp: 0 }
    }

    pub fn new(ops: Vec<u32>, base: EMonomial) -> Self {
        QGenerator { ops, base, susp: 0 }
    }

    pub fn base_dim(&self) -> u32 {
        self.base.dim() + self.susp
    }

    pub fn dim(&self) -> u32 {
        self.base_dim() + self.ops.iter().sum::<u32>()
    }

    pub fn height(&self) -> u32 {
        1 << self.ops.len()
    }

    /// Admissible with excess above the base dimension.
    pub fn is_valid(&self) -> bool {
        let admissible = self.ops.windows(2).all(|w| w[0] <= 2 * w[1]);
        let excess = match self.ops.split_first() {
            None => true,
            Some((&i1, rest)) => i1 as i64 - rest.iter().map(|&i| i as i64).sum::<i64>() > self.base_dim() as i64,
        };
        admissible && excess && !self.base.is_unit() && self.base.is_valid_in(crate::mo::Context::MO)
    }

    /// The generator with its outermost operation removed.
    pub fn inner(&self) -> Option<(u32, QGenerator)> {
        self.ops
            .split_first()
            .map(|(&i, rest)| (i, QGenerator { ops: rest.to_vec(), base: self.base.clone(), susp: self.susp }))
    }
}

// Fewer operations first, then base, then operations; keeps products of
// base classes ahead of `Q` generators.
impl Ord for QGenerator {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ops
            .len()
            .cmp(&other.ops.len())
            .then_with(|| self.susp.cmp(&other.susp))
            .then_with(|| self.base.cmp(&other.base))
            .then_with(|| self.ops.cmp(&other.ops))
    }
}

impl PartialOrd for QGenerator {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in &self.ops {
            write!(f, "Q^{i}(")?;
        }
        if self.susp > 0 {
            write!(f, "s^{}({})", self.susp, self.base)?;
        } else {
            write!(f, "{}", self.base)?;
        }
        for _ in &self.ops {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A Pontrjagin product of generators; the empty product is the unit.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMonomial {
    factors: Vec<QGenerator>,
}

impl QMonomial {
    pub fn new(mut factors: Vec<QGenerator>) -> Self {
        factors.sort();
        QMonomial { factors }
    }

    pub fn unit() -> Self {
        QMonomial { factors: Vec::new() }
    }

    pub fn generator(g: QGenerator) -> Self {
        QMonomial { factors: vec![g] }
    }

    pub fn base(e: EMonomial) -> Self {
        Self::generator(QGenerator::base(e))
    }

    pub fn factors(&self) -> &[QGenerator] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn dim(&self) -> u32 {
        self.factors.iter().map(QGenerator::dim).sum()
    }

    pub fn height(&self) -> u32 {
        self.factors.iter().map(QGenerator::height).sum()
    }

    pub fn mul(&self, other: &QMonomial) -> QMonomial {
        let mut f = self.factors.clone();
        f.extend_from_slice(&other.factors);
        QMonomial::new(f)
    }
}

impl Ord for QMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.height().cmp(&other.height()).then_with(|| self.factors.cmp(&other.factors))
    }
}

impl PartialOrd for QMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Graded for QMonomial {
    fn degree(&self) -> u32 {
        self.dim()
    }
}

impl fmt::Display for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (i, g) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub type QClass = GF2Class<QMonomial>;
pub type QTensor = GF2Class<Tensor<QMonomial>>;

/// Pontrjagin product of classes.
pub fn q_product(a: &QClass, b: &QClass) -> QClass {
    let mut out = QClass::zero();
    for x in a {
        for y in b {
            out.toggle(x.mul(y));
        }
    }
    out
}

/// Height of a monomial (alias kept for symmetry with the other operations).
pub fn height(m: &QMonomial) -> u32 {
    m.height()
}

/// Generators `Q^I e_J` of `H_*QMO(k)` whose dimension is accepted by `keep`
/// and at most `max_dim`.
fn generators(k: usize, max_dim: u32, keep: impl Fn(u32) -> bool) -> Vec<QGenerator> {
    let mut out = Vec::new();
    for d in k as u32..=max_dim {
        if !keep(d) && 2 * d + 1 > max_dim {
            continue;
        }
        for e in mo_basis(k, d) {
            // extend outward: each new operation exceeds the current dimension
            // and is at most twice the previous outermost one
            let mut stack = vec![(Vec::<u32>::new(), d)];
            while let Some((ops, dim)) = stack.pop() {
                if keep(dim) {
                    out.push(QGenerator::new(ops.clone(), e.clone()));
                }
                let hi = match ops.first() {
                    None => max_dim - dim,
                    Some(&i) => (2 * i).min(max_dim - dim),
                };
                for i in dim + 1..=hi {
                    let mut next = Vec::with_capacity(ops.len() + 1);
                    next.push(i);
                    next.extend_from_slice(&ops);
                    stack.push((next, dim + i));
                }
            }
        }
    }
    out.sort();
    out
}

/// Monomial basis of `H_n QMO(k)` in canonical order, optionally restricted to
/// one height.
pub fn qmo_basis(k: usize, n: u32, height: Option<u32>) -> Vec<QMonomial> {
    if k == 0 || n < k as u32 {
        return Vec::new();
    }
    let k32 = k as u32;
    // a factor of a genuine product has dimension at most n - k
    let gens = generators(k, n, |d| d + k32 <= n || d == n);
    let mut by_dim: Vec<(u32, &QGenerator)> = gens.iter().map(|g| (g.dim(), g)).collect();
    by_dim.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(b.1)));
    let mut out = Vec::new();
    fn rec<'a>(
        gens: &[(u32, &'a QGenerator)],
        start: usize,
        rest: u32,
        cur: &mut Vec<&'a QGenerator>,
        out: &mut Vec<QMonomial>,
    ) {
        if rest == 0 {
            out.push(QMonomial::new(cur.iter().map(|g| (*g).clone()).collect()));
            return;
        }
        for j in start..gens.len() {
            let (d, g) = gens[j];
            if d > rest {
                break;
            }
            cur.push(g);
            rec(gens, j, rest - d, cur, out);
            cur.pop();
        }
    }
    rec(&by_dim, 0, n, &mut Vec::new(), &mut out);
    if let Some(h) = height {
        out.retain(|m| m.height() == h);
    }
    out.sort();
    out
}

/// Index of each basis monomial.
pub fn basis_index(basis: &[QMonomial]) -> HashMap<&QMonomial, usize> {
    basis.iter().enumerate().map(|(i, m)| (m, i)).collect()
}

/// Coordinates of `c` in `basis`.
pub fn coordinates(c: &QClass, basis: &[QMonomial]) -> Result<BitVector> {
    let idx = basis_index(basis);
    let mut v = BitVector::zeros(basis.len());
    for m in c {
        match idx.get(m) {
            Some(&i) => v.flip(i),
            None => return Err(Error::NotInBasis(m.to_string())),
        }
    }
    Ok(v)
}

/// The class with the given coordinates.
pub fn from_coordinates(v: &BitVector, basis: &[QMonomial]) -> QClass {
    v.ones().map(|i| basis[i].clone()).collect()
}

/// Basis of the primitives `{ c : psi~(c) = 0 }` in `H_n QMO(k)`, expressed in
/// `qmo_basis(k, n)` coordinates and returned as classes.
pub fn primitive_submodule(k: usize, n: u32) -> Result<Vec<QClass>> {
    let basis = qmo_basis(k, n, None);
    let vectors = primitive_vectors(&basis)?;
    Ok(vectors.iter().map(|v| from_coordinates(v, &basis)).collect())
}

/// Kernel of the reduced coproduct on the span of `basis`, as coordinate vectors.
pub fn primitive_vectors(basis: &[QMonomial]) -> Result<Vec<BitVector>> {
    let mut rows: HashMap<Tensor<QMonomial>, usize> = HashMap::new();
    let mut cols: Vec<Vec<usize>> = Vec::with_capacity(basis.len());
    for m in basis {
        let psi = q_coproduct(&QClass::from_term(m.clone()), true)?;
        let mut col: Vec<usize> = Vec::with_capacity(psi.len());
        for t in psi {
            let n = rows.len();
            col.push(*rows.entry(t).or_insert(n));
        }
        cols.push(col);
    }
    let mut mat = BitMatrix::zeros(rows.len(), basis.len());
    for (j, col) in cols.iter().enumerate() {
        for &i in col {
            mat.flip(i, j);
        }
    }
    Ok(kernel(&mat))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn e1k(k: u32) -> EMonomial {
        EMonomial::from_powers(&[(1, k)])
    }

    #[test]
    fn basis_k3_dim8() {
        let b = qmo_basis(3, 8, None);
        let s: Vec<String> = b.iter().map(|m| m.to_string()).collect();
        assert_eq!(
            s,
            [
                "e[1,1,6]",
                "e[1,2,5]",
                "e[1,3,4]",
                "e[2,2,4]",
                "e[2,3,3]",
                "e[1,1,1]*e[1,1,3]",
                "e[1,1,1]*e[1,2,2]",
                "e[1,1,2]*e[1,1,2]",
                "Q^5(e[1,1,1])",
            ]
        );
        assert!(qmo_basis(3, 2, None).is_empty());
    }

    #[test]
    fn generator_validity() {
        assert!(QGenerator::new(vec![5], e1k(3)).is_valid());
        assert!(!QGenerator::new(vec![3], e1k(3)).is_valid());
        assert!(QGenerator::new(vec![4, 2], e1k(1)).is_valid());
        assert!(!QGenerator::new(vec![5, 2], e1k(1)).is_valid());
        for m in qmo_basis(1, 12, None) {
            assert!(m.factors().iter().all(QGenerator::is_valid), "{m}");
        }
    }

    #[test]
    fn nested_rendering() {
        let g = QGenerator::new(vec![4, 2], e1k(1));
        assert_eq!(g.to_string(), "Q^4(Q^2(e[1]))");
        assert_eq!(g.height(), 4);
        assert_eq!(g.dim(), 7);
    }

    #[test]
    fn k2_primitive_dimension() {
        assert_eq!(primitive_submodule(2, 6).unwrap().len(), 4);
    }
}
