//! Cohomology Steenrod operations.
//!
//! Squares act on `H^*BO(k)` through the splitting principle: `w_i` is the
//! `i`-th elementary symmetric polynomial in `x_1..x_k`, `Sq(x) = x + x^2` on
//! each variable, and the Cartan formula extends the action multiplicatively.

mod adem;
mod chain;
mod poly;

use std::fmt;

pub use adem::{adem_normalize, adem_relation, sq, SqElement, SqMonomial};
pub use chain::{lemma55_check, ChainReport, ChainStep};
pub use poly::{Exponents, SymPoly, WMonomial};

use crate::error::{Error, Result};
use crate::gf2::{binom, binom_mod2};

/// `Sq^a p`: the degree `deg p + a` part of the total square of `p`.
pub fn sq_act(a: u32, p: &SymPoly) -> SymPoly {
    if a == 0 {
        return p.clone();
    }
    let mut out = crate::class::GF2Class::zero();
    for e in p.terms() {
        let deg: u32 = e.iter().sum();
        if a > deg {
            continue;
        }
        if a == deg {
            out.toggle(e.iter().map(|x| 2 * x).collect());
            continue;
        }
        // Sq^t x^e = C(e, t) x^{e+t}; choose t_j with bits(t_j) within bits(e_j).
        let mut t = vec![0u32; e.len()];
        let suffix: Vec<u32> = {
            let mut s = vec![0u32; e.len() + 1];
            for j in (0..e.len()).rev() {
                s[j] = s[j + 1] + e[j];
            }
            s
        };
        distribute(e, &suffix, 0, a, &mut t, &mut |t| {
            out.toggle(e.iter().zip(t).map(|(x, y)| x + y).collect());
        });
    }
    SymPoly::from_terms(p.nvars(), out)
}

fn distribute(e: &[u32], suffix: &[u32], j: usize, rest: u32, t: &mut Vec<u32>, emit: &mut impl FnMut(&[u32])) {
    if j == e.len() {
        if rest == 0 {
            emit(t);
        }
        return;
    }
    if suffix[j] < rest {
        return;
    }
    for tj in 0..=e[j].min(rest) {
        if binom(e[j], tj) {
            t[j] = tj;
            distribute(e, suffix, j + 1, rest - tj, t, emit);
        }
    }
    t[j] = 0;
}

/// Action of a Steenrod element; composites apply their rightmost square first.
pub fn act(e: &SqElement, p: &SymPoly) -> SymPoly {
    let mut out = SymPoly::zero(p.nvars());
    for m in e {
        let v = m.exponents().iter().rev().fold(p.clone(), |acc, &a| sq_act(a, &acc));
        out = out.add(&v);
    }
    out
}

/// Right-hand side of the Wu formula,
/// `Sq^i w_j = sum_t C(j-i+t-1, t) w_{i-t} w_{j+t}`, in `nvars` variables.
pub fn wu_formula(i: u32, j: u32, nvars: usize) -> Result<SymPoly> {
    let mut out = SymPoly::zero(nvars);
    for t in 0..=i {
        let a = j as i64 - i as i64 + t as i64 - 1;
        if binom_mod2(a, t as i64)? {
            out = out.add(&SymPoly::w_monomial(&[i - t, j + t], nvars));
        }
    }
    Ok(out)
}

/// Compare `Sq^i w_j` computed through the splitting principle with the Wu
/// formula, in `k` variables. Requires `1 <= i <= j <= k`.
pub fn wu_check(i: u32, j: u32, k: u32) -> Result<bool> {
    if i == 0 || i > j || j > k {
        return Err(Error::OutOfRange(format!("wu_check requires 1 <= i <= j <= k, got i={i}, j={j}, k={k}")));
    }
    let n = k as usize;
    Ok(sq_act(i, &SymPoly::elementary(j, n)) == wu_formula(i, j, n)?)
}

/// `s^susp(payload)`: a class of `H^*MO(k) ⊂ H^*BO(k)` suspended `susp` times.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SuspendedClass {
    pub susp: u32,
    pub payload: SymPoly,
}

impl SuspendedClass {
    pub fn new(susp: u32, payload: SymPoly) -> Self {
        SuspendedClass { susp, payload }
    }

    pub fn degree(&self) -> Option<u32> {
        self.payload.degree().map(|d| d + self.susp)
    }

    pub fn is_zero(&self) -> bool {
        self.payload.is_zero()
    }

    /// Whether the payload lies in `H^*MO(k)`, i.e. is divisible by `w_k`:
    /// every monomial uses every variable.
    pub fn is_thom_class(&self) -> bool {
        self.payload.terms().iter().all(|e| e.iter().all(|&x| x > 0))
    }
}

impl fmt::Display for SuspendedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.payload.is_zero() {
            return f.write_str("0");
        }
        if self.susp == 0 {
            write!(f, "{}", self.payload)
        } else {
            write!(f, "s^{}({})", self.susp, self.payload)
        }
    }
}

impl fmt::Debug for SuspendedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Squares commute with suspension: act on the payload.
pub fn suspend_act(a: u32, c: &SuspendedClass) -> SuspendedClass {
    SuspendedClass { susp: c.susp, payload: sq_act(a, &c.payload) }
}
