//! Polynomials over GF(2) in `x_1..x_n`, used through the splitting principle
//! to represent Stiefel-Whitney classes as symmetric polynomials.

use std::fmt;

use crate::class::{GF2Class, Graded};
use crate::error::{Error, Result};

/// Exponent vector of a monomial `x_1^{a_1} ... x_n^{a_n}`.
pub type Exponents = Vec<u32>;

impl Graded for Vec<u32> {
    fn degree(&self) -> u32 {
        self.iter().sum()
    }
}

/// A polynomial in a fixed number of variables over GF(2).
///
/// Symmetry is not enforced structurally; the values built from elementary
/// symmetric polynomials stay symmetric under every operation in this crate.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymPoly {
    nvars: usize,
    terms: GF2Class<Exponents>,
}

impl SymPoly {
    pub fn zero(nvars: usize) -> Self {
        SymPoly { nvars, terms: GF2Class::zero() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars])
    }

    pub fn monomial(exps: Exponents) -> Self {
        SymPoly { nvars: exps.len(), terms: GF2Class::from_term(exps) }
    }

    pub fn from_terms(nvars: usize, terms: GF2Class<Exponents>) -> Self {
        debug_assert!(terms.iter().all(|t| t.len() == nvars));
        SymPoly { nvars, terms }
    }

    /// The variable `x_j` (0-based).
    pub fn var(j: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[j] = 1;
        Self::monomial(e)
    }

    /// The `i`-th elementary symmetric polynomial; zero when `i > nvars`.
    pub fn elementary(i: u32, nvars: usize) -> Self {
        let i = i as usize;
        let mut out = GF2Class::zero();
        if i <= nvars {
            let mut chosen = vec![0u32; nvars];
            fn rec(pos: usize, left: usize, chosen: &mut Vec<u32>, out: &mut GF2Class<Exponents>) {
                if left == 0 {
                    out.toggle(chosen.clone());
                    return;
                }
                if chosen.len() - pos < left {
                    return;
                }
                chosen[pos] = 1;
                rec(pos + 1, left - 1, chosen, out);
                chosen[pos] = 0;
                rec(pos + 1, left, chosen, out);
            }
            rec(0, i, &mut chosen, &mut out);
        }
        SymPoly { nvars, terms: out }
    }

    /// Product of elementary symmetric polynomials `w_{i_1} ... w_{i_r}`.
    pub fn w_monomial(indices: &[u32], nvars: usize) -> Self {
        indices.iter().fold(Self::one(nvars), |acc, &i| acc.mul(&Self::elementary(i, nvars)))
    }

    pub fn from_w(class: &GF2Class<WMonomial>, nvars: usize) -> Self {
        let mut out = Self::zero(nvars);
        for m in class {
            out = out.add(&Self::w_monomial(&m.0, nvars));
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &GF2Class<Exponents> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.degree()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.is_homogeneous()
    }

    pub fn coefficient(&self, exps: &[u32]) -> bool {
        self.terms.contains(&exps.to_vec())
    }

    pub fn add(&self, other: &SymPoly) -> SymPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        SymPoly { nvars: self.nvars, terms: &self.terms + &other.terms }
    }

    pub fn mul(&self, other: &SymPoly) -> SymPoly {
        assert_eq!(self.nvars, other.nvars, "variable count mismatch");
        let mut out = GF2Class::zero();
        for a in &self.terms {
            for b in &other.terms {
                out.toggle(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        SymPoly { nvars: self.nvars, terms: out }
    }

    /// Frobenius: squaring is additive in characteristic 2.
    pub fn square(&self) -> SymPoly {
        SymPoly { nvars: self.nvars, terms: self.terms.iter().map(|e| e.iter().map(|x| 2 * x).collect()).collect() }
    }

    /// Invariance under adjacent transpositions.
    pub fn is_symmetric(&self) -> bool {
        (0..self.nvars.saturating_sub(1)).all(|j| {
            self.terms.iter().all(|e| {
                let mut s = e.clone();
                s.swap(j, j + 1);
                self.terms.contains(&s)
            })
        })
    }

    /// Rewrite a symmetric polynomial in the elementary basis by repeatedly
    /// cancelling the lexicographically leading monomial.
    pub fn to_w_basis(&self) -> Result<GF2Class<WMonomial>> {
        let mut rest = self.clone();
        let mut out = GF2Class::zero();
        while let Some(lead) = rest.terms.last().cloned() {
            if lead.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::NotSymmetric(rest.render_x()));
            }
            let mut w = Vec::new();
            for (i, &a) in lead.iter().enumerate() {
                let next = lead.get(i + 1).copied().unwrap_or(0);
                w.extend(std::iter::repeat_n(i as u32 + 1, (a - next) as usize));
            }
            rest = rest.add(&Self::w_monomial(&w, self.nvars));
            out.toggle(WMonomial::new(w));
        }
        Ok(out)
    }

    /// Rendering in the variables `x1..xn`.
    pub fn render_x(&self) -> String {
        if self.terms.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|e| {
                let f: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a > 0)
                    .map(|(j, &a)| if a == 1 { format!("x{}", j + 1) } else { format!("x{}^{}", j + 1, a) })
                    .collect();
                if f.is_empty() {
                    "1".into()
                } else {
                    f.join("*")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_w_basis() {
            Ok(w) => write!(f, "{w}"),
            Err(_) => f.write_str(&self.render_x()),
        }
    }
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymPoly[{}]({})", self.nvars, self.render_x())
    }
}

/// A product of Stiefel-Whitney classes `w_{i_1} ... w_{i_r}`, indices sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WMonomial(pub Vec<u32>);

impl WMonomial {
    pub fn new(mut indices: Vec<u32>) -> Self {
        indices.retain(|&i| i > 0);
        indices.sort_unstable();
        WMonomial(indices)
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }
}

impl Graded for WMonomial {
    fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for WMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let idx = self.0[i];
            let run = self.0[i..].iter().take_while(|&&x| x == idx).count();
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if run == 1 {
                write!(f, "w{idx}")?;
            } else {
                write!(f, "w{idx}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_counts() {
        assert_eq!(SymPoly::elementary(2, 4).terms().len(), 6);
        assert!(SymPoly::elementary(5, 4).is_zero());
        assert_eq!(SymPoly::elementary(0, 3), SymPoly::one(3));
    }

    #[test]
    fn w_basis_round_trip() {
        let p = SymPoly::w_monomial(&[1, 1, 3], 4).add(&SymPoly::w_monomial(&[2, 3], 4));
        let w = p.to_w_basis().unwrap();
        assert_eq!(SymPoly::from_w(&w, 4), p);
        assert_eq!(format!("{w}"), "w1^2*w3 + w2*w3");
    }

    #[test]
    fn non_symmetric_is_rejected() {
        let p = SymPoly::var(1, 2);
        assert!(!p.is_symmetric());
        assert!(p.to_w_basis().is_err());
    }

    #[test]
    fn square_is_frobenius() {
        let p = SymPoly::elementary(1, 3);
        assert_eq!(p.square(), p.mul(&p));
    }
}
