//! Operations on `H_*QMO(k)`: Kudo-Araki operations, coproduct, Nishida
//! relations and homology suspension.

use crate::class::{GF2Class, Tensor};
use crate::error::{Error, Result};
use crate::gf2::binom_mod2;
use crate::mo::{monomial_coproduct, monomial_sq_dual, Context, EMonomial, MOClass, TensorMOClass};

use super::{q_product, QClass, QGenerator, QMonomial, QTensor};

fn single(g: QGenerator) -> QClass {
    QClass::from_term(QMonomial::generator(g))
}

fn unit_class() -> QClass {
    QClass::from_term(QMonomial::unit())
}

/// `Q^i` on a single generator: zero below its dimension, the Pontrjagin
/// square at it, a new generator above it when admissible.
fn q_on_generator(i: u32, g: &QGenerator) -> Result<QClass> {
    let d = g.dim();
    if i < d {
        return Ok(QClass::zero());
    }
    if i == d {
        return Ok(QClass::from_term(QMonomial::new(vec![g.clone(), g.clone()])));
    }
    if let Some(&outer) = g.ops.first() {
        if i > 2 * outer {
            return Err(Error::InadmissibleComposition { op: i, target: g.to_string() });
        }
    }
    let mut ops = Vec::with_capacity(g.ops.len() + 1);
    ops.push(i);
    ops.extend_from_slice(&g.ops);
    Ok(single(QGenerator { ops, base: g.base.clone(), susp: g.susp }))
}

/// All ways of writing `total` as an ordered sum of `parts` non-negative integers.
fn compositions(total: u32, parts: usize, emit: &mut impl FnMut(&[u32])) {
    fn rec(rest: u32, slots: usize, cur: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
        if slots == 1 {
            cur.push(rest);
            emit(cur);
            cur.pop();
            return;
        }
        for x in 0..=rest {
            cur.push(x);
            rec(rest - x, slots - 1, cur, emit);
            cur.pop();
        }
    }
    if parts == 0 {
        if total == 0 {
            emit(&[]);
        }
        return;
    }
    rec(total, parts, &mut Vec::with_capacity(parts), emit);
}

/// Apply `f(t_j, factor_j)` to every distribution `sum t_j = total` over the
/// factors of `m` and multiply the results; distributions that agree as
/// multisets of `(factor, t)` pairs cancel in pairs before evaluation.
fn distribute_over_factors(
    m: &QMonomial,
    total: u32,
    offset: impl Fn(&QGenerator) -> u32,
    mut f: impl FnMut(u32, &QGenerator) -> Result<QClass>,
) -> Result<QClass> {
    let factors = m.factors();
    let mut assignments: GF2Class<Vec<(QGenerator, u32)>> = GF2Class::zero();
    compositions(total, factors.len(), &mut |ts| {
        let mut a: Vec<(QGenerator, u32)> = factors.iter().zip(ts).map(|(g, &t)| (g.clone(), t + offset(g))).collect();
        a.sort();
        assignments.toggle(a);
    });
    let mut out = QClass::zero();
    for a in assignments {
        let mut acc = unit_class();
        for (g, t) in &a {
            let v = f(*t, g)?;
            acc = q_product(&acc, &v);
            if acc.is_zero() {
                break;
            }
        }
        out += acc;
    }
    Ok(out)
}

fn q_on_monomial(i: u32, m: &QMonomial) -> Result<QClass> {
    if m.is_unit() {
        return Ok(if i == 0 { unit_class() } else { QClass::zero() });
    }
    if let [g] = m.factors() {
        return q_on_generator(i, g);
    }
    // Cartan formula; every factor needs at least its own dimension
    let d = m.dim();
    if i < d {
        return Ok(QClass::zero());
    }
    distribute_over_factors(m, i - d, QGenerator::dim, q_on_generator)
}

/// `Q^i` extended linearly, with the Cartan formula on products.
pub fn q_apply(i: u32, c: &QClass) -> Result<QClass> {
    c.map_linear(|m| q_on_monomial(i, m))
}

fn tensor(a: &QClass, b: &QClass) -> QTensor {
    let mut out = QTensor::zero();
    for x in a {
        for y in b {
            out.toggle(Tensor(x.clone(), y.clone()));
        }
    }
    out
}

fn tensor_product(a: &QTensor, b: &QTensor) -> QTensor {
    let mut out = QTensor::zero();
    for Tensor(a0, a1) in a {
        for Tensor(b0, b1) in b {
            out.toggle(Tensor(a0.mul(b0), a1.mul(b1)));
        }
    }
    out
}

fn e_to_q(e: EMonomial, susp: u32) -> QMonomial {
    if e.is_unit() {
        QMonomial::unit()
    } else {
        QMonomial::generator(QGenerator { ops: Vec::new(), base: e, susp })
    }
}

fn coproduct_generator(g: &QGenerator) -> Result<QTensor> {
    match g.inner() {
        None if g.susp > 0 => {
            let m = QMonomial::generator(g.clone());
            Ok([Tensor(m.clone(), QMonomial::unit()), Tensor(QMonomial::unit(), m)].into_iter().collect())
        }
        None => {
            let mut t = TensorMOClass::zero();
            monomial_coproduct(&g.base, Context::MO, false, &mut t);
            Ok(t.into_iter().map(|Tensor(a, b)| Tensor(e_to_q(a, 0), e_to_q(b, 0))).collect())
        }
        Some((n, inner)) => {
            // psi Q^n x = sum_{a+b=n} Q^a x' ⊗ Q^b x''
            let mut out = QTensor::zero();
            for Tensor(u, v) in coproduct_generator(&inner)? {
                let (du, dv) = (u.dim(), v.dim());
                if du + dv > n {
                    continue;
                }
                for a in du..=n - dv {
                    let left = q_on_monomial(a, &u)?;
                    if left.is_zero() {
                        continue;
                    }
                    let right = q_on_monomial(n - a, &v)?;
                    out += tensor(&left, &right);
                }
            }
            Ok(out)
        }
    }
}

fn coproduct_monomial(m: &QMonomial) -> Result<QTensor> {
    let mut acc: QTensor = [Tensor(QMonomial::unit(), QMonomial::unit())].into_iter().collect();
    for g in m.factors() {
        acc = tensor_product(&acc, &coproduct_generator(g)?);
    }
    Ok(acc)
}

/// Coproduct of `H_*QMO(k)`: multiplicative over Pontrjagin products, the
/// Thom-space diagonal on base classes, and the Cartan rule on `Q^n`.
/// `reduced` drops the terms with a unit on either side.
pub fn q_coproduct(c: &QClass, reduced: bool) -> Result<QTensor> {
    let mut out = QTensor::zero();
    for m in c {
        let psi = coproduct_monomial(m)?;
        if reduced {
            out += psi.filter(|Tensor(a, b)| !a.is_unit() && !b.is_unit());
        } else {
            out += psi;
        }
    }
    Ok(out)
}

fn nishida_generator(i: u32, g: &QGenerator) -> Result<QClass> {
    if i == 0 {
        return Ok(single(g.clone()));
    }
    let Some((n, inner)) = g.inner() else {
        let mut out = MOClass::zero();
        monomial_sq_dual(i, &g.base, Context::MO, &mut out);
        return Ok(out.into_iter().map(|e| e_to_q(e, g.susp)).collect());
    };
    // Sq^i_* Q^n = sum_t C(n-i, i-2t) Q^{n-i+t} Sq^t_*
    let mut out = QClass::zero();
    for t in 0..=i / 2 {
        let lower = (i - 2 * t) as i64;
        let upper = n as i64 - i as i64;
        let q = n as i64 - i as i64 + t as i64;
        if q < 0 {
            continue;
        }
        let inner_sq = nishida_generator(t, &inner)?;
        if inner_sq.is_zero() {
            continue;
        }
        let coeff = if upper < 0 && lower > 0 { None } else { Some(binom_mod2(upper, lower)?) };
        if coeff == Some(false) {
            continue;
        }
        let term = q_apply(q as u32, &inner_sq)?;
        if term.is_zero() {
            continue;
        }
        if coeff.is_none() {
            return Err(Error::NishidaRange { a: upper, b: lower });
        }
        out += term;
    }
    Ok(out)
}

fn nishida_monomial(i: u32, m: &QMonomial) -> Result<QClass> {
    if m.is_unit() {
        return Ok(if i == 0 { unit_class() } else { QClass::zero() });
    }
    if let [g] = m.factors() {
        return nishida_generator(i, g);
    }
    distribute_over_factors(m, i, |_| 0, nishida_generator)
}

/// Dual Steenrod square `Sq^i_*` on `H_*QMO(k)`: Nishida relations on `Q`
/// generators, the `MO(k)` action on bases, dual Cartan on products.
pub fn nishida(i: u32, c: &QClass) -> Result<QClass> {
    c.map_linear(|m| nishida_monomial(i, m))
}

/// Projection onto height-2 monomials.
pub fn h2_project(c: &QClass) -> QClass {
    c.filter(|m| m.height() == 2)
}

/// Homology suspension `s^times`: kills the unit and decomposables and
/// commutes with the `Q` operations, which are re-applied to the suspended base.
pub fn homology_suspend(c: &QClass, times: u32) -> Result<QClass> {
    let mut out = QClass::zero();
    for m in c {
        let [g] = m.factors() else { continue };
        let base = QGenerator { ops: Vec::new(), base: g.base.clone(), susp: g.susp + times };
        let mut v = single(base);
        for &i in g.ops.iter().rev() {
            v = q_apply(i, &v)?;
        }
        out += v;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mo::EMonomial;

    fn e(p: &[(u32, u32)]) -> EMonomial {
        EMonomial::from_powers(p)
    }

    fn b(p: &[(u32, u32)]) -> QMonomial {
        QMonomial::base(e(p))
    }

    fn prod(a: &[(u32, u32)], c: &[(u32, u32)]) -> QMonomial {
        b(a).mul(&b(c))
    }

    fn qk(k: u32) -> QMonomial {
        QMonomial::generator(QGenerator::new(vec![k + 2], e(&[(1, k)])))
    }

    fn cls(ms: &[QMonomial]) -> QClass {
        ms.iter().cloned().collect()
    }

    #[test]
    fn q_apply_rules() {
        for k in 1..6u32 {
            let x = cls(&[b(&[(1, k)])]);
            assert_eq!(q_apply(k, &x).unwrap(), cls(&[prod(&[(1, k)], &[(1, k)])]));
            assert!(q_apply(k - 1, &x).unwrap().is_zero());
            let q = q_apply(k + 1, &x).unwrap();
            assert_eq!(q.to_string(), format!("Q^{}({})", k + 1, e(&[(1, k)])));
        }
        assert!(q_apply(2, &cls(&[b(&[(1, 3)])])).unwrap().is_zero());
        assert!(q_apply(3, &cls(&[QMonomial::unit()])).unwrap().is_zero());
        assert_eq!(q_apply(0, &cls(&[QMonomial::unit()])).unwrap(), cls(&[QMonomial::unit()]));
        let err = q_apply(9, &cls(&[qk(1)])).unwrap_err();
        assert!(matches!(err, Error::InadmissibleComposition { op: 9, .. }));
    }

    #[test]
    fn reduced_coproducts() {
        for k in 3..7u32 {
            assert!(q_coproduct(&cls(&[qk(k)]), true).unwrap().is_zero());
            let a = b(&[(1, k)]);
            let c = b(&[(1, k - 1), (3, 1)]);
            let got = q_coproduct(&cls(&[a.mul(&c)]), true).unwrap();
            let want: QTensor = [Tensor(a.clone(), c.clone()), Tensor(c, a)].into_iter().collect();
            assert_eq!(got, want);
            let sq = prod(&[(1, k - 1), (2, 1)], &[(1, k - 1), (2, 1)]);
            assert!(q_coproduct(&cls(&[sq]), true).unwrap().is_zero());
        }
    }

    #[test]
    fn nishida_on_q_generator() {
        for k in 2..12u32 {
            let s1 = nishida(1, &cls(&[qk(k)])).unwrap();
            if k % 2 == 0 {
                assert_eq!(s1, cls(&[QMonomial::generator(QGenerator::new(vec![k + 1], e(&[(1, k)])))]));
            } else {
                assert!(s1.is_zero());
            }
            let s2 = nishida(2, &cls(&[qk(k)])).unwrap();
            let square = cls(&[prod(&[(1, k)], &[(1, k)])]);
            match k % 4 {
                3 | 2 => assert_eq!(s2, square, "k={k}"),
                _ => assert!(s2.is_zero(), "k={k}"),
            }
        }
    }

    #[test]
    fn suspension_of_the_excluded_class() {
        for k in 3..8u32 {
            let c = cls(&[prod(&[(1, k - 1), (2, 1)], &[(1, k - 1), (2, 1)]), qk(k)]);
            let s = homology_suspend(&c, 2).unwrap();
            let base = QGenerator { ops: vec![], base: e(&[(1, k)]), susp: 2 };
            let want = cls(&[QMonomial::new(vec![base.clone(), base])]);
            assert_eq!(s, want);
            assert_eq!(s.to_string(), format!("s^2({0})*s^2({0})", e(&[(1, k)])));
        }
    }
}
