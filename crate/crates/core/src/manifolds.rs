//! Stiefel-Whitney classes and numbers in truncated polynomial cohomology
//! rings: products of real projective spaces, Dold manifolds `P(1, 2^{r-1})`
//! and spheres.

use std::fmt;
use std::str::FromStr;

use crate::class::GF2Class;
use crate::error::{Error, Result};

/// An exponent vector over the generators of a [`TruncRing`].
pub type RingMonomial = Vec<u32>;
pub type RingElement = GF2Class<RingMonomial>;

/// `Z/2[x_1, ..., x_n] / (x_i^{b_i})` with graded generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncRing {
    pub names: Vec<String>,
    pub degrees: Vec<u32>,
    /// `x_i^{bounds[i]} = 0`.
    pub bounds: Vec<u32>,
}

impl TruncRing {
    pub fn new(gens: &[(&str, u32, u32)]) -> Self {
        TruncRing {
            names: gens.iter().map(|g| g.0.to_string()).collect(),
            degrees: gens.iter().map(|g| g.1).collect(),
            bounds: gens.iter().map(|g| g.2).collect(),
        }
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn one(&self) -> RingElement {
        RingElement::from_term(vec![0; self.ngens()])
    }

    pub fn gen(&self, i: usize) -> RingElement {
        let mut e = vec![0; self.ngens()];
        e[i] = 1;
        self.reduce(e).map(RingElement::from_term).unwrap_or_default()
    }

    fn reduce(&self, e: RingMonomial) -> Option<RingMonomial> {
        e.iter().zip(&self.bounds).all(|(a, b)| a < b).then_some(e)
    }

    pub fn degree(&self, e: &[u32]) -> u32 {
        e.iter().zip(&self.degrees).map(|(a, d)| a * d).sum()
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let mut out = RingElement::zero();
        for x in a {
            for y in b {
                if let Some(m) = self.reduce(x.iter().zip(y).map(|(p, q)| p + q).collect()) {
                    out.toggle(m);
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &RingElement, mut n: u32) -> RingElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.square(&base);
            n >>= 1;
        }
        acc
    }

    /// Frobenius squaring.
    pub fn square(&self, a: &RingElement) -> RingElement {
        a.iter().filter_map(|e| self.reduce(e.iter().map(|x| 2 * x).collect())).collect()
    }

    /// Inverse of `1 + x` with `x` nilpotent, as `prod_j (1 + x^{2^j})`.
    pub fn inverse(&self, a: &RingElement) -> Result<RingElement> {
        let one = self.one();
        if !a.contains(&vec![0; self.ngens()]) {
            return Err(Error::OutOfRange(format!("{} is not invertible", self.render(a))));
        }
        let mut x = a + &one;
        let mut acc = one.clone();
        while !x.is_zero() {
            acc = self.mul(&acc, &(&one + &x));
            x = self.square(&x);
        }
        Ok(acc)
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, a: &RingElement, d: u32) -> RingElement {
        a.filter(|e| self.degree(e) == d)
    }

    pub fn render(&self, a: &RingElement) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut terms: Vec<&RingMonomial> = a.iter().collect();
        terms.sort_by_key(|e| (self.degree(e), std::cmp::Reverse((*e).clone())));
        terms
            .iter()
            .map(|e| {
                let f: Vec<String> = e
                    .iter()
                    .zip(&self.names)
                    .filter(|(p, _)| **p > 0)
                    .map(|(p, n)| if *p == 1 { n.clone() } else { format!("{n}^{p}") })
                    .collect();
                if f.is_empty() {
                    "1".into()
                } else {
                    f.join("*")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A closed manifold with known cohomology ring and tangent classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ManifoldSpec {
    /// `RP^{n_1} x ... x RP^{n_m}`.
    RPProduct(Vec<u32>),
    /// Dold manifold `P(1, 2^{r-1})` of dimension `2^r + 1`.
    Dold { r: u32 },
    /// `S^n`.
    Sphere(u32),
}

impl ManifoldSpec {
    pub fn dimension(&self) -> u32 {
        match self {
            ManifoldSpec::RPProduct(ns) => ns.iter().sum(),
            ManifoldSpec::Dold { r } => (1 << r) + 1,
            ManifoldSpec::Sphere(n) => *n,
        }
    }

    pub fn ring(&self) -> TruncRing {
        match self {
            ManifoldSpec::RPProduct(ns) if ns.len() == 1 => TruncRing::new(&[("a", 1, ns[0] + 1)]),
            ManifoldSpec::RPProduct(ns) => {
                let names: Vec<String> = (1..=ns.len()).map(|i| format!("a{i}")).collect();
                let gens: Vec<(&str, u32, u32)> = names.iter().zip(ns).map(|(s, &n)| (s.as_str(), 1, n + 1)).collect();
                TruncRing::new(&gens)
            }
            ManifoldSpec::Dold { r } => TruncRing::new(&[("c", 1, 2), ("d", 2, (1 << (r - 1)) + 1)]),
            ManifoldSpec::Sphere(n) => TruncRing::new(&[("s", *n, 2)]),
        }
    }

    /// Exponent vector of the fundamental cohomology class.
    pub fn top_monomial(&self) -> RingMonomial {
        self.ring().bounds.iter().map(|b| b - 1).collect()
    }

    /// Total tangent class: `(1+a)^{n+1}` on `RP^n`, `(1+c)(1+c+d)^{2^{r-1}+1}`
    /// on the Dold manifold, `1` on a sphere.
    pub fn tangent_sw(&self) -> RingElement {
        let ring = self.ring();
        match self {
            ManifoldSpec::RPProduct(ns) => ns.iter().enumerate().fold(ring.one(), |acc, (i, &n)| {
                let f = ring.pow(&(&ring.one() + &ring.gen(i)), n + 1);
                ring.mul(&acc, &f)
            }),
            ManifoldSpec::Dold { r } => {
                let one = ring.one();
                let (c, d) = (ring.gen(0), ring.gen(1));
                let f = ring.pow(&(&(&one + &c) + &d), (1 << (r - 1)) + 1);
                ring.mul(&(&one + &c), &f)
            }
            ManifoldSpec::Sphere(_) => ring.one(),
        }
    }

    /// Total normal class, the inverse of the tangent class.
    pub fn total_normal_sw(&self) -> RingElement {
        self.ring().inverse(&self.tangent_sw()).expect("tangent classes start with 1")
    }

    /// Normal class `w̄_i`.
    pub fn normal_sw(&self, i: u32) -> RingElement {
        self.ring().component(&self.total_normal_sw(), i)
    }

    /// `w̄_{i_1} ... w̄_{i_r}[M]`.
    pub fn sw_number(&self, indices: &[u32]) -> Result<bool> {
        let deg: u32 = indices.iter().sum();
        if deg != self.dimension() {
            return Err(Error::DegreeMismatch { expected: self.dimension(), got: deg });
        }
        let ring = self.ring();
        let wbar = self.total_normal_sw();
        let prod = indices.iter().fold(ring.one(), |acc, &i| ring.mul(&acc, &ring.component(&wbar, i)));
        Ok(prod.contains(&self.top_monomial()))
    }
}

/// `w̄_{i_1} ... w̄_{i_r}[M]`.
pub fn sw_number(m: &ManifoldSpec, indices: &[u32]) -> Result<bool> {
    m.sw_number(indices)
}

/// `w̄(m)` as a ring element.
pub fn total_normal_sw(m: &ManifoldSpec) -> RingElement {
    m.total_normal_sw()
}

impl fmt::Display for ManifoldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ManifoldSpec::RPProduct(ns) => {
                let parts: Vec<String> = ns.iter().map(|n| format!("RP({n})")).collect();
                f.write_str(&parts.join("x"))
            }
            ManifoldSpec::Dold { r } => write!(f, "Dold(r={r})"),
            ManifoldSpec::Sphere(n) => write!(f, "S({n})"),
        }
    }
}

fn parse_arg(s: &str, prefix: &str) -> Option<u32> {
    s.strip_prefix(prefix)?.strip_suffix(')')?.trim().parse().ok()
}

impl FromStr for ManifoldSpec {
    type Err = Error;

    /// Accepts `RP(4)xRP(2)`, `RP(2)`, `Dold(r=2)` and `S(5)`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::UnsupportedManifold(format!("{s:?}; expected RP(n)xRP(m)..., Dold(r=R) or S(n)"));
        if let Some(r) = parse_arg(&t, "Dold(r=") {
            if r == 0 {
                return Err(Error::UnsupportedManifold("Dold(r=R) needs R >= 1".into()));
            }
            return Ok(ManifoldSpec::Dold { r });
        }
        if let Some(n) = parse_arg(&t, "S(") {
            if n == 0 {
                return Err(bad());
            }
            return Ok(ManifoldSpec::Sphere(n));
        }
        let ns = t
            .split('x')
            .map(|p| parse_arg(p, "RP(").filter(|&n| n > 0))
            .collect::<Option<Vec<u32>>>()
            .ok_or_else(bad)?;
        Ok(ManifoldSpec::RPProduct(ns))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dold_r2_normal_class() {
        let m = ManifoldSpec::Dold { r: 2 };
        let ring = m.ring();
        assert_eq!(ring.render(&m.total_normal_sw()), "1 + d + c*d");
        assert!(m.normal_sw(1).is_zero());
        assert!(m.sw_number(&[2, 3]).unwrap());
        assert!(!m.sw_number(&[1, 4]).unwrap());
    }

    #[test]
    fn rp2_normal_class() {
        let m: ManifoldSpec = "RP(2)".parse().unwrap();
        assert_eq!(m.ring().render(&m.total_normal_sw()), "1 + a");
        let m: ManifoldSpec = "RP(2)xRP(2)".parse().unwrap();
        assert!(m.sw_number(&[2, 2]).unwrap());
        assert_eq!(m.sw_number(&[2, 3]), Err(Error::DegreeMismatch { expected: 4, got: 5 }));
    }

    #[test]
    fn parse_and_render() {
        for s in ["RP(4)xRP(2)", "Dold(r=3)", "S(7)", "RP(8)"] {
            assert_eq!(s.parse::<ManifoldSpec>().unwrap().to_string(), s);
        }
        assert!("CP(2)".parse::<ManifoldSpec>().is_err());
        assert!("Dold(r=0)".parse::<ManifoldSpec>().is_err());
    }

    #[test]
    fn spheres_have_trivial_numbers() {
        let m = ManifoldSpec::Sphere(5);
        assert_eq!(m.ring().render(&m.total_normal_sw()), "1");
        assert!(!m.sw_number(&[2, 3]).unwrap());
    }
}
