//! Composites of Steenrod squares and their reduction to the admissible basis.

use std::cmp::Ordering;
use std::fmt;

use crate::class::{GF2Class, Graded};
use crate::gf2::binom;

/// `Sq^{a_1} Sq^{a_2} ... Sq^{a_r}`, applied right to left. The empty
/// composite is the identity `Sq^0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SqMonomial(Vec<u32>);

impl SqMonomial {
    /// Zero exponents are dropped since `Sq^0` is the identity.
    pub fn new(mut exps: Vec<u32>) -> Self {
        exps.retain(|&a| a > 0);
        SqMonomial(exps)
    }

    pub fn identity() -> Self {
        SqMonomial(Vec::new())
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_admissible(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= 2 * w[1])
    }

    /// Admissible basis monomials of degree `n`, including `Sq^0` for `n = 0`.
    pub fn admissible_basis(n: u32) -> Vec<SqMonomial> {
        fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<SqMonomial>) {
            if rest == 0 {
                out.push(SqMonomial(cur.clone()));
                return;
            }
            for a in 1..=rest.min(max) {
                cur.push(a);
                // the next exponent b must satisfy a >= 2b
                rec(rest - a, a / 2, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// Every composite of positive exponents with total degree `n`.
    pub fn all_composites(n: u32) -> Vec<SqMonomial> {
        fn rec(rest: u32, cur: &mut Vec<u32>, out: &mut Vec<SqMonomial>) {
            if rest == 0 {
                out.push(SqMonomial(cur.clone()));
                return;
            }
            for a in 1..=rest {
                cur.push(a);
                rec(rest - a, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut out);
        out
    }
}

impl Graded for SqMonomial {
    fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

// Shorter composites first; equal lengths by descending exponents, so that
// `Sq^6` precedes `Sq^5 Sq^1`.
impl Ord for SqMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for SqMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SqMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("Sq^0");
        }
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "Sq^{a}")?;
        }
        Ok(())
    }
}

/// A GF(2) sum of Steenrod composites.
pub type SqElement = GF2Class<SqMonomial>;

/// `Sq^a Sq^b` for `a < 2b` rewritten as `sum_c C(b-c-1, a-2c) Sq^{a+b-c} Sq^c`.
pub fn adem_relation(a: u32, b: u32) -> Vec<(u32, u32)> {
    debug_assert!(a < 2 * b);
    (0..=a / 2).filter(|&c| binom(b - c - 1, a - 2 * c)).map(|c| (a + b - c, c)).collect()
}

/// Rewrite `e` in the admissible basis.
///
/// Each rewrite replaces the leftmost inadmissible pair; the moment
/// `sum_j j * a_j` strictly decreases, so the process terminates.
pub fn adem_normalize(e: &SqElement) -> SqElement {
    let mut out = SqElement::zero();
    let mut work: Vec<SqMonomial> = e.iter().cloned().collect();
    while let Some(m) = work.pop() {
        let exps = &m.0;
        match exps.windows(2).position(|w| w[0] < 2 * w[1]) {
            None => out.toggle(m),
            Some(j) => {
                for (hi, lo) in adem_relation(exps[j], exps[j + 1]) {
                    let mut next = exps[..j].to_vec();
                    next.push(hi);
                    next.push(lo);
                    next.extend_from_slice(&exps[j + 2..]);
                    work.push(SqMonomial::new(next));
                }
            }
        }
    }
    out
}

/// Convenience constructor for a single composite.
pub fn sq(exps: &[u32]) -> SqElement {
    SqElement::from_term(SqMonomial::new(exps.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sq1_sq1_vanishes() {
        assert!(adem_normalize(&sq(&[1, 1])).is_zero());
    }

    #[test]
    fn single_step() {
        let got = adem_normalize(&sq(&[2, 4]));
        assert_eq!(got, sq(&[6]) + sq(&[5, 1]));
        assert_eq!(format!("{got}"), "Sq^6 + Sq^5 Sq^1");
    }

    #[test]
    fn sq6_decomposition() {
        let e = sq(&[2, 4]) + sq(&[1, 4, 1]);
        assert_eq!(adem_normalize(&e), sq(&[6]));
    }

    #[test]
    fn idempotent_on_composites() {
        for n in 0..=9 {
            for m in SqMonomial::all_composites(n) {
                let once = adem_normalize(&SqElement::from_term(m));
                assert!(once.iter().all(SqMonomial::is_admissible));
                assert_eq!(adem_normalize(&once), once);
            }
        }
    }

    #[test]
    fn admissible_basis_small() {
        let b: Vec<String> = SqMonomial::admissible_basis(6).iter().map(|m| m.to_string()).collect();
        assert_eq!(b, vec!["Sq^6", "Sq^5 Sq^1", "Sq^4 Sq^2"]);
    }
}
