//! Linear algebra over GF(2) and binomial coefficients mod 2.

use std::fmt;

use crate::error::{Error, Result};

/// `C(a, b) mod 2` by Lucas' criterion.
///
/// `C(a, 0) = 1` for every `a`, including negative `a`; a negative upper
/// argument with `b > 0` is rejected. `C(a, b) = 0` for `b < 0` or `b > a >= 0`.
pub fn binom_mod2(a: i64, b: i64) -> Result<bool> {
    if b == 0 {
        return Ok(true);
    }
    if a < 0 {
        return Err(Error::NegativeBinomial { a, b });
    }
    if b < 0 || b > a {
        return Ok(false);
    }
    Ok(b & !a == 0)
}

/// Unsigned shorthand for `binom_mod2` where both arguments are known to be
/// non-negative.
#[inline]
pub fn binom(a: u32, b: u32) -> bool {
    b & !a == 0
}

const WORD: usize = 64;

/// A fixed-length vector over GF(2), bit-packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector { words: vec![0; len.div_ceil(WORD)], len }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if bit {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Positions of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + tz)
            })
        })
    }

    pub fn first_one(&self) -> Option<usize> {
        self.ones().next()
    }

    pub fn xor_assign(&mut self, other: &BitVector) -> Result<()> {
        if self.len != other.len {
            return Err(Error::LengthMismatch { expected: self.len, got: other.len });
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
        Ok(())
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> Result<bool> {
        if self.len != other.len {
            return Err(Error::LengthMismatch { expected: self.len, got: other.len });
        }
        let ones: u32 = self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum();
        Ok(ones % 2 == 1)
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        f.write_str("]")
    }
}

/// A rectangular matrix over GF(2) stored as bit-packed rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitMatrix {
    rows: Vec<BitVector>,
    ncols: usize,
}

impl BitMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        BitMatrix { rows: vec![BitVector::zeros(ncols); nrows], ncols }
    }

    pub fn identity(n: usize) -> Self {
        BitMatrix { rows: (0..n).map(|i| BitVector::unit(n, i)).collect(), ncols: n }
    }

    pub fn from_rows(rows: Vec<BitVector>, ncols: usize) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::LengthMismatch { expected: ncols, got: bad.len() });
        }
        Ok(BitMatrix { rows, ncols })
    }

    /// Build a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[BitVector], nrows: usize) -> Result<Self> {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.len() != nrows {
                return Err(Error::LengthMismatch { expected: nrows, got: c.len() });
            }
            for i in c.ones() {
                m.rows[i].set(j, true);
            }
        }
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, bit: bool) {
        self.rows[i].set(j, bit)
    }

    pub fn flip(&mut self, i: usize, j: usize) {
        self.rows[i].flip(j)
    }

    /// Matrix-vector product `m · v`.
    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() != self.ncols {
            return Err(Error::LengthMismatch { expected: self.ncols, got: v.len() });
        }
        let mut out = BitVector::zeros(self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            if r.dot(v)? {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form in place. Pivots are chosen at the lowest
    /// available column index; returns the pivot columns in ascending order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == self.rows.len() {
                break;
            }
            let Some(p) = (r..self.rows.len()).find(|&i| self.rows[i].get(c)) else {
                continue;
            };
            self.rows.swap(r, p);
            let pivot = self.rows[r].clone();
            for (i, row) in self.rows.iter_mut().enumerate() {
                if i != r && row.get(c) {
                    row.xor_assign(&pivot).expect("uniform row length");
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }
}

/// Basis of the right null space `{ v : m v = 0 }`.
///
/// One vector per non-pivot column, in ascending column order; each has a 1
/// at its free column and the back-substituted pivot entries.
pub fn kernel(m: &BitMatrix) -> Vec<BitVector> {
    let mut red = m.clone();
    let pivots = red.rref();
    let n = m.ncols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    // Columns of the reduced matrix restricted to pivot rows, read per free column.
    (0..n)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = BitVector::unit(n, free);
            for (row, &p) in pivots.iter().enumerate() {
                if red.rows[row].get(free) {
                    v.set(p, true);
                }
            }
            v
        })
        .collect()
}

/// Whether `v` lies in the GF(2) span of `span`.
pub fn membership(v: &BitVector, span: &[BitVector]) -> Result<bool> {
    if let Some(bad) = span.iter().find(|s| s.len() != v.len()) {
        return Err(Error::LengthMismatch { expected: v.len(), got: bad.len() });
    }
    let mut basis = EchelonBasis::new(v.len());
    for s in span {
        basis.insert(s.clone());
    }
    Ok(basis.reduce(v).is_zero())
}

/// An incrementally built echelon basis of a subspace of GF(2)^n.
///
/// Each stored vector has a distinct leading (lowest) set bit.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    len: usize,
    rows: Vec<BitVector>,
    // row index owning each lead position
    lead_row: Vec<Option<usize>>,
}

impl EchelonBasis {
    pub fn new(len: usize) -> Self {
        EchelonBasis { len, rows: Vec::new(), lead_row: vec![None; len] }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the stored rows.
    pub fn reduce(&self, v: &BitVector) -> BitVector {
        let mut v = v.clone();
        loop {
            let Some(lead) = v.first_one() else { return v };
            match self.lead_row[lead] {
                Some(i) => v.xor_assign(&self.rows[i]).expect("uniform length"),
                None => return v,
            }
        }
    }

    /// Insert `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: BitVector) -> bool {
        assert_eq!(v.len(), self.len, "vector length");
        let r = self.reduce(&v);
        match r.first_one() {
            None => false,
            Some(lead) => {
                self.lead_row[lead] = Some(self.rows.len());
                self.rows.push(r);
                true
            }
        }
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn vectors(&self) -> &[BitVector] {
        &self.rows
    }
}

/// Basis of `span(a) ∩ span(b)` inside GF(2)^len.
pub fn intersect(a: &[BitVector], b: &[BitVector], len: usize) -> Result<Vec<BitVector>> {
    let cols: Vec<BitVector> = a.iter().chain(b).cloned().collect();
    let m = BitMatrix::from_columns(&cols, len)?;
    let mut basis = EchelonBasis::new(len);
    let mut out = Vec::new();
    for x in kernel(&m) {
        let mut v = BitVector::zeros(len);
        for i in x.ones().take_while(|&i| i < a.len()) {
            v.xor_assign(&a[i])?;
        }
        if basis.insert(v.clone()) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Whether two lists of vectors span the same subspace.
pub fn span_eq(a: &[BitVector], b: &[BitVector]) -> Result<bool> {
    for v in a {
        if !membership(v, b)? {
            return Ok(false);
        }
    }
    for v in b {
        if !membership(v, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(n: usize) -> Vec<Vec<bool>> {
        let mut t = vec![vec![false; n + 1]; n + 1];
        for a in 0..=n {
            t[a][0] = true;
            for b in 1..=a {
                t[a][b] = t[a - 1][b - 1] ^ t[a - 1][b];
            }
        }
        t
    }

    #[test]
    fn binomial_examples() {
        let t = pascal(8);
        assert_eq!(binom_mod2(3, 2).unwrap(), t[3][2]);
        assert!(binom_mod2(3, 2).unwrap());
        assert!(binom_mod2(6, 2).unwrap() && t[6][2]);
        assert!(!binom_mod2(5, 2).unwrap() && !t[5][2]);
        for a in -1..10 {
            assert!(binom_mod2(a, 0).unwrap());
        }
        assert!(!binom_mod2(2, 5).unwrap());
        assert_eq!(binom_mod2(-1, 1), Err(Error::NegativeBinomial { a: -1, b: 1 }));
    }

    #[test]
    fn intersection_of_planes() {
        let e = |i| BitVector::unit(3, i);
        let mut s = e(1);
        s.xor_assign(&e(2)).unwrap();
        let got = intersect(&[e(0), e(1)], &[s.clone(), e(0)], 3).unwrap();
        assert_eq!(got, vec![e(0)]);
        let got = intersect(&[e(1), e(2)], &[s.clone()], 3).unwrap();
        assert_eq!(got, vec![s]);
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert!(kernel(&BitMatrix::identity(4)).is_empty());
        let k = kernel(&BitMatrix::zeros(2, 2));
        assert_eq!(k, vec![BitVector::unit(2, 0), BitVector::unit(2, 1)]);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = BitMatrix::from_rows(
            vec![BitVector::from_bits(&[true, true, false, true]), BitVector::from_bits(&[false, true, true, false])],
            4,
        )
        .unwrap();
        let ker = kernel(&m);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(v).unwrap().is_zero());
        }
    }

    #[test]
    fn membership_examples() {
        let a = BitVector::from_bits(&[true, false, true]);
        let b = BitVector::from_bits(&[false, true, true]);
        assert!(membership(&a, std::slice::from_ref(&a)).unwrap());
        assert!(!membership(&a, &[]).unwrap());
        let mut s = a.clone();
        s.xor_assign(&b).unwrap();
        assert!(membership(&s, &[a.clone(), b]).unwrap());
        assert!(membership(&a, &[BitVector::zeros(2)]).is_err());
    }

    #[test]
    fn ones_iterates_across_words() {
        let v = BitVector::from_indices(200, [0, 63, 64, 130, 199]);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 63, 64, 130, 199]);
        assert_eq!(v.count_ones(), 5);
    }
}
