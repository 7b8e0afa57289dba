//! The quadratic construction layer: `H_{2k+2}D_2MO(k)`, the pushforward
//! `xi_*` to `H_{2k+2}MO(2k)`, and the parity read off from it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::binom_mod2;
use crate::mo::{EMonomial, MOClass};
use crate::qmo::{qmo_basis, QClass, QGenerator, QMonomial};

/// `e_1^k`, `e_1^{k-1}e_3`, ... as MO(k) monomials.
fn e(powers: &[(u32, u32)]) -> EMonomial {
    EMonomial::from_powers(powers)
}

/// The four monomials `e_1^k·e_1^{k-1}e_3`, `e_1^k·e_1^{k-2}e_2^2`,
/// `e_1^{k-1}e_2·e_1^{k-1}e_2`, `Q^{k+2}e_1^k`, for `k >= 2`.
pub fn d2_closed_form(k: u32) -> Vec<QMonomial> {
    assert!(k >= 2, "closed form needs k >= 2");
    let p = |a: EMonomial, b: EMonomial| QMonomial::base(a).mul(&QMonomial::base(b));
    vec![
        p(e(&[(1, k)]), e(&[(1, k - 1), (3, 1)])),
        p(e(&[(1, k)]), e(&[(1, k - 2), (2, 2)])),
        p(e(&[(1, k - 1), (2, 1)]), e(&[(1, k - 1), (2, 1)])),
        q_top(k),
    ]
}

/// `Q^{k+2}e_1^k`.
pub fn q_top(k: u32) -> QMonomial {
    QMonomial::generator(QGenerator::new(vec![k + 2], e(&[(1, k)])))
}

/// Basis of `H_{2k+2}D_2MO(k)`: the height-2 part of `qmo_basis(k, 2k+2)`.
pub fn d2_basis(k: u32) -> Vec<QMonomial> {
    let b = qmo_basis(k as usize, 2 * k + 2, Some(2));
    if k >= 2 {
        assert_eq!(b, d2_closed_form(k), "height-2 enumeration disagrees with the closed form");
    }
    b
}

/// `xi_*(Q^{k+2}e_1^k) = sum_{m_1+...+m_k=2} prod_j C(m_j - 1, 0) e_1 e_{m_j+1}`.
pub fn xi_q_image(k: u32) -> Result<MOClass> {
    let mut out = MOClass::zero();
    let mut m = vec![0u32; k as usize];
    // compositions of 2 into k parts: a single 2, or two 1s
    let mut visit = |m: &[u32]| -> Result<()> {
        let mut coeff = true;
        let mut idx = Vec::with_capacity(2 * m.len());
        for &mj in m {
            coeff &= binom_mod2(mj as i64 - 1, 0)?;
            idx.push(1);
            idx.push(mj + 1);
        }
        if coeff {
            out.toggle(EMonomial::new(idx));
        }
        Ok(())
    };
    for a in 0..m.len() {
        m[a] = 2;
        visit(&m)?;
        m[a] = 1;
        for b in a + 1..m.len() {
            m[b] = 1;
            visit(&m)?;
            m[b] = 0;
        }
        m[a] = 0;
    }
    Ok(out)
}

/// Closed form `C(k,1) e_1^{2k-1}e_3 + C(k,2) e_1^{2k-2}e_2^2`.
pub fn xi_q_closed_form(k: u32) -> MOClass {
    let mut out = MOClass::zero();
    if k % 2 == 1 {
        out.toggle(e(&[(1, 2 * k - 1), (3, 1)]));
    }
    if k >= 2 && (k / 2) % 2 == 1 {
        out.toggle(e(&[(1, 2 * k - 2), (2, 2)]));
    }
    out
}

/// `xi_*` on a height-2 class of dimension `2k+2`: products merge their index
/// lists, `Q^{k+2}e_1^k` goes through the binomial sum.
pub fn xi_push(k: u32, c: &QClass) -> Result<MOClass> {
    let target = 2 * k + 2;
    let mut out = MOClass::zero();
    for m in c {
        if m.height() != 2 || m.dim() != target {
            return Err(Error::XiUndefined(format!(
                "{m} has height {} and dimension {}, need height 2 and dimension {target}",
                m.height(),
                m.dim()
            )));
        }
        match m.factors() {
            [a, b] if a.ops.is_empty() && b.ops.is_empty() && a.susp == 0 && b.susp == 0 => {
                out.toggle(a.base.merge(&b.base));
            }
            [g] if *m == q_top(k) && g.susp == 0 => out += xi_q_image(k)?,
            _ => return Err(Error::XiUndefined(format!("{m} is not a double point class of MO({k})"))),
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// The only stably spherical class in `H_{2k+2}MO(2k)`.
pub fn odd_marker(k: u32) -> EMonomial {
    e(&[(1, 2 * k - 1), (3, 1)])
}

/// Odd exactly when `xi_*(c)` contains `e_1^{2k-1}e_3`.
pub fn parity_decision(k: u32, c: &QClass) -> Result<Parity> {
    let img = xi_push(k, c)?;
    Ok(if img.contains(&odd_marker(k)) { Parity::Odd } else { Parity::Even })
}
