//! Homology of `BO(k)` and of the Thom complex `MO(k)`.
//!
//! `H_*BO(k)` has basis `e_I = e_{i_1} ... e_{i_k}` over sorted index lists
//! with `i_j >= 0`; `H~_*MO(k) = H_*(BO(k)/BO(k-1))` keeps the lists with every
//! index `>= 1`. Classes pushed through the quotient lose every term containing
//! an `e_0`.

use std::fmt;

use crate::class::{GF2Class, Graded, Tensor};
use crate::error::{Error, Result};
use crate::gf2::binom;
use crate::sq::SymPoly;

/// Which space a monomial lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Context {
    /// `H_*BO(k)`: indices `>= 0`.
    BO,
    /// `H~_*MO(k)`: indices `>= 1`.
    MO,
}

impl Context {
    pub fn name(self) -> &'static str {
        match self {
            Context::BO => "BO(k)",
            Context::MO => "MO(k)",
        }
    }

    fn min_index(self) -> u32 {
        match self {
            Context::BO => 0,
            Context::MO => 1,
        }
    }
}

/// `e_{i_1} ... e_{i_k}` with sorted indices. The empty list is the unit,
/// used for the `c ⊗ 1` terms of coproducts in the Thom-space context.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EMonomial(Vec<u32>);

impl EMonomial {
    pub fn new(mut indices: Vec<u32>) -> Self {
        indices.sort_unstable();
        EMonomial(indices)
    }

    pub fn unit() -> Self {
        EMonomial(Vec::new())
    }

    /// `e_1^a e_2^b ...` from `(index, power)` pairs.
    pub fn from_powers(powers: &[(u32, u32)]) -> Self {
        Self::new(powers.iter().flat_map(|&(i, p)| std::iter::repeat_n(i, p as usize)).collect())
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    /// Number of factors `k`.
    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dim(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_valid_in(&self, ctx: Context) -> bool {
        self.0.iter().all(|&i| i >= ctx.min_index())
    }

    /// Merge of index lists: the product `H_*BO(k_1) ⊗ H_*BO(k_2) -> H_*BO(k_1 + k_2)`.
    pub fn merge(&self, other: &EMonomial) -> EMonomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        EMonomial::new(v)
    }
}

impl Graded for EMonomial {
    fn degree(&self) -> u32 {
        self.dim()
    }
}

impl fmt::Display for EMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        f.write_str("e[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for EMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub type MOClass = GF2Class<EMonomial>;
pub type TensorMOClass = GF2Class<Tensor<EMonomial>>;

/// Sorted index lists of length `k` with entries `>= min` summing to `n`,
/// in lexicographic order.
fn partitions(k: usize, n: u32, min: u32) -> Vec<EMonomial> {
    fn rec(slots: usize, rest: u32, lo: u32, cur: &mut Vec<u32>, out: &mut Vec<EMonomial>) {
        if slots == 0 {
            if rest == 0 {
                out.push(EMonomial(cur.clone()));
            }
            return;
        }
        let mut i = lo;
        // remaining slots each take at least i
        while i as u64 * slots as u64 <= rest as u64 {
            cur.push(i);
            rec(slots - 1, rest - i, i, cur, out);
            cur.pop();
            i += 1;
        }
    }
    let mut out = Vec::new();
    rec(k, n, min, &mut Vec::new(), &mut out);
    out
}

/// Basis of `H~_n MO(k)`.
pub fn mo_basis(k: usize, n: u32) -> Vec<EMonomial> {
    if k == 0 {
        return Vec::new();
    }
    partitions(k, n, 1)
}

/// Basis of `H_n BO(k)`.
pub fn bo_basis(k: usize, n: u32) -> Vec<EMonomial> {
    partitions(k, n, 0)
}

fn check_context(c: &MOClass, ctx: Context) -> Result<()> {
    match c.iter().find(|m| !m.is_valid_in(ctx)) {
        Some(m) => Err(Error::ContextMismatch { monomial: m.to_string(), context: ctx.name() }),
        None => Ok(()),
    }
}

/// Product `H_*BO(k_1) ⊗ H_*BO(k_2) -> H_*BO(k_1 + k_2)`, restricted to `ctx`.
pub fn mo_product(a: &MOClass, b: &MOClass, ctx: Context) -> Result<MOClass> {
    check_context(a, ctx)?;
    check_context(b, ctx)?;
    let mut out = MOClass::zero();
    for x in a {
        for y in b {
            out.toggle(x.merge(y));
        }
    }
    Ok(out)
}

/// Diagonal coproduct, `psi(e_i) = sum_j e_j ⊗ e_{i-j}` extended by naturality.
///
/// In the `MO` context the only surviving splittings have every index `>= 1`
/// on both sides, plus the unit terms `c ⊗ 1` and `1 ⊗ c`, which `reduced`
/// omits. In the `BO` context every splitting is kept and the unit is `e_0^k`.
pub fn mo_coproduct(c: &MOClass, ctx: Context, reduced: bool) -> Result<TensorMOClass> {
    check_context(c, ctx)?;
    let mut out = TensorMOClass::zero();
    for m in c {
        monomial_coproduct(m, ctx, reduced, &mut out);
    }
    Ok(out)
}

pub(crate) fn monomial_coproduct(m: &EMonomial, ctx: Context, reduced: bool, out: &mut TensorMOClass) {
    if m.is_unit() {
        if !reduced {
            out.toggle(Tensor(EMonomial::unit(), EMonomial::unit()));
        }
        return;
    }
    let lo = ctx.min_index();
    let idx = m.indices();
    let mut left = Vec::with_capacity(idx.len());
    let mut right = Vec::with_capacity(idx.len());
    fn rec(idx: &[u32], lo: u32, left: &mut Vec<u32>, right: &mut Vec<u32>, emit: &mut impl FnMut(&[u32], &[u32])) {
        let Some((&i, rest)) = idx.split_first() else {
            emit(left, right);
            return;
        };
        if i < 2 * lo {
            return;
        }
        for j in lo..=i - lo {
            left.push(j);
            right.push(i - j);
            rec(rest, lo, left, right, emit);
            left.pop();
            right.pop();
        }
    }
    let is_bo_unit = |v: &[u32]| ctx == Context::BO && v.iter().all(|&x| x == 0);
    rec(idx, lo, &mut left, &mut right, &mut |l, r| {
        if reduced && (is_bo_unit(l) || is_bo_unit(r)) {
            return;
        }
        out.toggle(Tensor(EMonomial::new(l.to_vec()), EMonomial::new(r.to_vec())));
    });
    if ctx == Context::MO && !reduced {
        out.toggle(Tensor(m.clone(), EMonomial::unit()));
        out.toggle(Tensor(EMonomial::unit(), m.clone()));
    }
}

/// `Sq^i_*` on `H_*BO(k)`: `Sq^t_* e_j = C(j-t, t) e_{j-t}` on each factor,
/// combined by the dual Cartan formula. In the `MO` context any resulting
/// `e_0` kills the term.
pub fn sq_dual(i: u32, c: &MOClass, ctx: Context) -> Result<MOClass> {
    check_context(c, ctx)?;
    let mut out = MOClass::zero();
    for m in c {
        monomial_sq_dual(i, m, ctx, &mut out);
    }
    Ok(out)
}

pub(crate) fn monomial_sq_dual(i: u32, m: &EMonomial, ctx: Context, out: &mut MOClass) {
    if i == 0 {
        out.toggle(m.clone());
        return;
    }
    let lo = ctx.min_index();
    let idx = m.indices();
    let mut cur = Vec::with_capacity(idx.len());
    fn rec(idx: &[u32], rest: u32, lo: u32, cur: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
        let Some((&j, tail)) = idx.split_first() else {
            if rest == 0 {
                emit(cur);
            }
            return;
        };
        for t in 0..=rest.min(j / 2) {
            if j - t >= lo && binom(j - t, t) {
                cur.push(j - t);
                rec(tail, rest - t, lo, cur, emit);
                cur.pop();
            }
        }
    }
    rec(idx, i, lo, &mut cur, &mut |v| out.toggle(EMonomial::new(v.to_vec())));
}

/// Kronecker pairing `<p, e_I>`: the coefficient of `x_1^{i_1} ... x_k^{i_k}`
/// in the symmetric polynomial `p` in `k` variables.
pub fn kronecker_pair(p: &SymPoly, m: &EMonomial) -> Result<bool> {
    if p.nvars() != m.k() {
        return Err(Error::LengthMismatch { expected: m.k(), got: p.nvars() });
    }
    if !p.is_homogeneous() {
        return Err(Error::OutOfRange("kronecker_pair needs a homogeneous polynomial".into()));
    }
    if let Some(d) = p.degree() {
        if d != m.dim() {
            return Err(Error::DegreeMismatch { expected: m.dim(), got: d });
        }
    }
    Ok(p.coefficient(m.indices()))
}

/// Kronecker pairing extended linearly over a homology class.
pub fn kronecker_pair_class(p: &SymPoly, c: &MOClass) -> Result<bool> {
    let mut acc = false;
    for m in c {
        acc ^= kronecker_pair(p, m)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(idx: &[u32]) -> EMonomial {
        EMonomial::new(idx.to_vec())
    }

    fn class(ms: &[&[u32]]) -> MOClass {
        ms.iter().map(|m| e(m)).collect()
    }

    fn t(a: &[u32], b: &[u32]) -> Tensor<EMonomial> {
        Tensor(e(a), e(b))
    }

    #[test]
    fn mo_basis_examples() {
        for k in 1..6usize {
            let b = mo_basis(2 * k, 2 * k as u32 + 2);
            let mut e13 = vec![1; 2 * k - 1];
            e13.push(3);
            let mut e22 = vec![1; 2 * k - 2];
            e22.extend([2, 2]);
            assert_eq!(b, vec![e(&e13), e(&e22)]);
        }
        assert!(mo_basis(3, 2).is_empty());
        let b: Vec<String> = mo_basis(3, 8).iter().map(|m| m.to_string()).collect();
        assert_eq!(b, ["e[1,1,6]", "e[1,2,5]", "e[1,3,4]", "e[2,2,4]", "e[2,3,3]"]);
    }

    #[test]
    fn products_merge() {
        for k in 2..6u32 {
            let a = MOClass::from_term(EMonomial::from_powers(&[(1, k)]));
            let b = MOClass::from_term(EMonomial::from_powers(&[(1, k - 1), (3, 1)]));
            let p = mo_product(&a, &b, Context::MO).unwrap();
            assert_eq!(p, MOClass::from_term(EMonomial::from_powers(&[(1, 2 * k - 1), (3, 1)])));
        }
        let u = MOClass::from_term(EMonomial::unit());
        let x = class(&[&[1, 2]]);
        assert_eq!(mo_product(&x, &u, Context::MO).unwrap(), x);
        assert_eq!(mo_product(&x, &x, Context::MO).unwrap(), class(&[&[1, 1, 2, 2]]));
        assert!(mo_product(&class(&[&[0, 2]]), &x, Context::MO).is_err());
    }

    #[test]
    fn reduced_coproduct_displays() {
        for k in 3..7u32 {
            let c = MOClass::from_term(EMonomial::from_powers(&[(2, k - 2), (3, 2)]));
            let got = mo_coproduct(&c, Context::MO, true).unwrap();
            let a = EMonomial::from_powers(&[(1, k)]);
            let b = EMonomial::from_powers(&[(1, k - 2), (2, 2)]);
            let want: TensorMOClass = [Tensor(a.clone(), b.clone()), Tensor(b, a)].into_iter().collect();
            assert_eq!(got, want);

            let c = MOClass::from_term(EMonomial::from_powers(&[(2, k - 1), (4, 1)]));
            let got = mo_coproduct(&c, Context::MO, true).unwrap();
            let a = EMonomial::from_powers(&[(1, k)]);
            let b = EMonomial::from_powers(&[(1, k - 1), (3, 1)]);
            let m = EMonomial::from_powers(&[(1, k - 1), (2, 1)]);
            let want: TensorMOClass =
                [Tensor(a.clone(), b.clone()), Tensor(m.clone(), m), Tensor(b, a)].into_iter().collect();
            assert_eq!(got, want);
        }
        let c = class(&[&[1, 4, 7]]);
        assert!(mo_coproduct(&c, Context::MO, true).unwrap().is_zero());
        let full = mo_coproduct(&c, Context::MO, false).unwrap();
        let want: TensorMOClass = [t(&[1, 4, 7], &[]), t(&[], &[1, 4, 7])].into_iter().collect();
        assert_eq!(full, want);
    }

    #[test]
    fn bo_coproduct_counts() {
        // psi(e_2) in BO(1) = e_0⊗e_2 + e_1⊗e_1 + e_2⊗e_0
        let got = mo_coproduct(&class(&[&[2]]), Context::BO, false).unwrap();
        assert_eq!(got.len(), 3);
        let red = mo_coproduct(&class(&[&[2]]), Context::BO, true).unwrap();
        assert_eq!(red, [t(&[1], &[1])].into_iter().collect());
    }

    #[test]
    fn dual_squares_on_factors() {
        assert_eq!(sq_dual(1, &class(&[&[2]]), Context::MO).unwrap(), class(&[&[1]]));
        assert!(sq_dual(1, &class(&[&[3]]), Context::MO).unwrap().is_zero());
        for k in 2..7u32 {
            let c = MOClass::from_term(EMonomial::from_powers(&[(1, k - 2), (2, 2)]));
            let got = sq_dual(2, &c, Context::MO).unwrap();
            assert_eq!(got, MOClass::from_term(EMonomial::from_powers(&[(1, k)])));
        }
        // Sq^1_* e_1 = e_0 survives only in BO
        assert_eq!(sq_dual(1, &class(&[&[2]]), Context::BO).unwrap(), class(&[&[1]]));
        assert!(sq_dual(1, &class(&[&[1]]), Context::MO).unwrap().is_zero());
    }

    #[test]
    fn kronecker_examples() {
        for k in 1..6usize {
            let wk = SymPoly::elementary(k as u32, k);
            assert!(kronecker_pair(&wk, &EMonomial::from_powers(&[(1, k as u32)])).unwrap());
        }
        for k in 3..7u32 {
            let p = SymPoly::w_monomial(&[2, k, k], k as usize);
            let m = EMonomial::from_powers(&[(2, k - 2), (3, 2)]);
            assert!(kronecker_pair(&p, &m).unwrap());
        }
        let w1 = SymPoly::elementary(1, 1);
        assert_eq!(kronecker_pair(&w1, &e(&[2])), Err(Error::DegreeMismatch { expected: 2, got: 1 }));
    }
}
