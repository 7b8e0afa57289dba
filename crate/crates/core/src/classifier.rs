//! Per-`k` classification of the parity of the double point surface.
//!
//! The algebra narrows `h^2_* h(α)` to the height-2 projection of the
//! primitives annihilated by `Sq^1_*` and `Sq^2_*`; `xi_*` then decides which
//! candidates force an odd surface. Whether such a candidate is realized is
//! settled by imported existence theorems, which every report lists.

use std::collections::HashMap;

use serde::Serialize;

use crate::dpoint::{d2_basis, parity_decision, q_top, Parity};
use crate::error::{Error, Result};
use crate::gf2::{intersect, kernel, BitMatrix, BitVector, EchelonBasis};
use crate::manifolds::ManifoldSpec;
use crate::qmo::{from_coordinates, nishida, primitive_vectors, qmo_basis, QClass, QMonomial};
use crate::sq::lemma55_check;

/// Number of ones in the binary expansion of `m`.
pub fn alpha(m: u32) -> u32 {
    m.count_ones()
}

/// An imported theorem consumed as data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExistenceFact {
    pub id: &'static str,
    pub statement: &'static str,
    pub citation: &'static str,
}

/// Read-only table of the existence results the verdicts rely on.
pub struct ExistenceFactTable;

impl ExistenceFactTable {
    pub const FACTS: &'static [ExistenceFact] = &[
        ExistenceFact {
            id: "cohen-immersion",
            statement: "every closed n-manifold immerses in R^{2n-α(n)}",
            citation: "R. L. Cohen, The immersion conjecture for differentiable manifolds, Ann. of Math. 122 (1985)",
        },
        ExistenceFact {
            id: "odd-sphere-immersion",
            statement: "for k ≡ 1 mod 4 there is a self-transverse immersion S^{k+2} -> R^{2k+2} whose double point surface has odd Euler characteristic; connected sum with it flips the parity",
            citation: "known construction of sphere immersions with odd double point surface in these dimensions",
        },
        ExistenceFact {
            id: "brown-embedding",
            statement: "every closed n-manifold is bordant to a manifold embedding in R^{2n-α(n)+1}",
            citation: "R. L. W. Brown, Immersions and embeddings up to cobordism, Canad. J. Math. 23 (1971)",
        },
        ExistenceFact {
            id: "product-embedding",
            statement: "if N_1^{m_1} immerses in R^s, N_2 embeds in R^t and s+t >= 2m_1+1 then N_1 x N_2 embeds in R^{s+t}; with Brown's theorem and Whitney's immersion theorem, decomposable (k+2)-manifolds embed in R^{2k+2} up to bordism when k+2 = 2^r+1",
            citation: "R. L. W. Brown, Immersions and embeddings up to cobordism, Canad. J. Math. 23 (1971); H. Whitney, The singularities of a smooth n-manifold in (2n-1)-space, Ann. of Math. 45 (1944)",
        },
        ExistenceFact {
            id: "dold-manifold",
            statement: "P(1, 2^{r-1}) = S^1 x CP^{2^{r-1}} / (u,z) ~ (-u, z̄) has H^* = Z/2[c,d]/(c^2, d^{2^{r-1}+1}) and w = (1+c)(1+c+d)^{2^{r-1}+1}; it is indecomposable in the unoriented bordism ring",
            citation: "A. Dold, Erzeugende der Thomschen Algebra N, Math. Z. 65 (1956)",
        },
        ExistenceFact {
            id: "dold-orientable",
            statement: "P(1, 2^{r-1}) is orientable, so its Hurewicz image lifts through QMSO(k), where H_{k+1}MSO(k) = 0 excludes the e_1^{k-1}e_2 product",
            citation: "A. Dold, Erzeugende der Thomschen Algebra N, Math. Z. 65 (1956)",
        },
    ];

    pub fn get(id: &str) -> &'static ExistenceFact {
        Self::FACTS.iter().find(|f| f.id == id).expect("known fact id")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Every immersion has a double point surface of even Euler characteristic.
    ForcedEven,
    /// Every manifold admits immersions of both parities.
    BothAchievable,
    /// The parity is a bordism invariant of `M`, given by a Stiefel-Whitney number.
    DependsOnManifold,
}

/// A fact together with the role it plays in a verdict.
#[derive(Clone, Debug, Serialize)]
pub struct FactUse {
    #[serde(flatten)]
    pub fact: ExistenceFact,
    pub role: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct XiImage {
    pub class: String,
    pub image: String,
    pub parity: Parity,
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelDim {
    pub i: u32,
    /// Dimension of `ker Sq^i_*` on the projected primitives.
    pub dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionWitness {
    pub manifold: String,
    pub value: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub k: u32,
    pub residue: u32,
    pub alpha_k2: u32,
    pub d2_basis: Vec<String>,
    pub projected_primitives: Vec<String>,
    pub candidate_basis: Vec<String>,
    pub lemma55_excluded: Option<String>,
    pub chain_passed: Option<bool>,
    pub xi_images: Vec<XiImage>,
    /// Candidates realizable with no height-1 component, minus the excluded class.
    pub unobstructed_odd: Vec<String>,
    pub steenrod_kernels: Vec<KernelDim>,
    /// Dimension of the candidates after also imposing `Sq^3_*` and `Sq^4_*`.
    pub higher_constraint_dim: usize,
    pub odd_achievable: bool,
    pub verdict: Verdict,
    pub forced_parity: Option<String>,
    pub criterion: Option<String>,
    pub criterion_witness: Option<CriterionWitness>,
    pub existence_facts_used: Vec<FactUse>,
    pub closed_form_agrees: bool,
}

/// `k ≡ 1 mod 4` or `k+1` a power of two.
pub fn closed_form(k: u32) -> bool {
    k % 4 == 1 || (k + 1).is_power_of_two()
}

fn subscript(n: u32) -> String {
    n.to_string().chars().map(|c| char::from_u32('₀' as u32 + c.to_digit(10).unwrap()).unwrap()).collect()
}

/// `w̄₂w̄ₖ[M]` with the digits of `k` as subscripts.
pub fn criterion_text(k: u32) -> String {
    format!("w\u{304}{}w\u{304}{}[M]", subscript(2), subscript(k))
}

/// Coordinates in a small, fixed basis.
struct Coords<'a> {
    basis: &'a [QMonomial],
    index: HashMap<&'a QMonomial, usize>,
}

impl<'a> Coords<'a> {
    fn new(basis: &'a [QMonomial]) -> Self {
        Coords { basis, index: basis.iter().enumerate().map(|(i, m)| (m, i)).collect() }
    }

    fn vec(&self, c: &QClass) -> Result<BitVector> {
        let mut v = BitVector::zeros(self.basis.len());
        for m in c {
            let i = self.index.get(m).ok_or_else(|| Error::NotInBasis(m.to_string()))?;
            v.flip(*i);
        }
        Ok(v)
    }

    fn class(&self, v: &BitVector) -> QClass {
        from_coordinates(v, self.basis)
    }
}

fn independent(vs: impl IntoIterator<Item = BitVector>, len: usize) -> Vec<BitVector> {
    let mut e = EchelonBasis::new(len);
    vs.into_iter().filter(|v| e.insert(v.clone())).collect()
}

/// Height-2 projection of the kernel of the reduced coproduct on `basis`,
/// in coordinates of `d2`.
fn projected_kernel(basis: &[QMonomial], d2: &Coords) -> Result<Vec<BitVector>> {
    let mut out = Vec::new();
    for v in primitive_vectors(basis)? {
        let mut w = BitVector::zeros(d2.basis.len());
        for i in v.ones() {
            if basis[i].height() == 2 {
                let j = d2.index.get(&basis[i]).ok_or_else(|| Error::NotInBasis(basis[i].to_string()))?;
                w.flip(*j);
            }
        }
        out.push(w);
    }
    Ok(independent(out, d2.basis.len()))
}

/// Elements of `span` killed by `Sq^i_*`.
fn restricted_kernel(span: &[BitVector], i: u32, d2: &Coords) -> Result<Vec<BitVector>> {
    let mut rows: HashMap<QMonomial, usize> = HashMap::new();
    let mut images = Vec::with_capacity(span.len());
    for v in span {
        let img = nishida(i, &d2.class(v))?;
        let idx: Vec<usize> = img
            .into_iter()
            .map(|m| {
                let n = rows.len();
                *rows.entry(m).or_insert(n)
            })
            .collect();
        images.push(idx);
    }
    let mut mat = BitMatrix::zeros(rows.len(), span.len());
    for (j, idx) in images.iter().enumerate() {
        for &r in idx {
            mat.flip(r, j);
        }
    }
    let len = d2.basis.len();
    let combos = kernel(&mat).into_iter().map(|x| {
        let mut v = BitVector::zeros(len);
        for j in x.ones() {
            v.xor_assign(&span[j]).expect("uniform length");
        }
        v
    });
    Ok(independent(combos, len))
}

fn all_nonzero(span: &[BitVector], len: usize) -> Vec<BitVector> {
    (1u64..1 << span.len())
        .map(|mask| {
            let mut v = BitVector::zeros(len);
            for (j, s) in span.iter().enumerate() {
                if mask >> j & 1 == 1 {
                    v.xor_assign(s).expect("uniform length");
                }
            }
            v
        })
        .collect()
}

/// The candidate submodule for `h^2_* h(α)`: projected primitives killed by
/// `Sq^1_*` and `Sq^2_*`, as classes in `H_{2k+2}D_2MO(k)`.
pub fn candidate_submodule(k: u32) -> Result<Vec<QClass>> {
    let d2b = d2_basis(k);
    let d2 = Coords::new(&d2b);
    let prim = projected_kernel(&qmo_basis(k as usize, 2 * k + 2, None), &d2)?;
    let c1 = restricted_kernel(&prim, 1, &d2)?;
    let c2 = restricted_kernel(&c1, 2, &d2)?;
    Ok(c2.iter().map(|v| d2.class(v)).collect())
}

/// `e_1^{k-1}e_2·e_1^{k-1}e_2 + Q^{k+2}e_1^k`, ruled out by the suspension argument for `k ≡ 3 mod 4`.
pub fn excluded_class(k: u32) -> QClass {
    let b = d2_basis(k);
    [b[2].clone(), q_top(k)].into_iter().collect()
}

fn render(vs: &[BitVector], d2: &Coords) -> Vec<String> {
    vs.iter().map(|v| d2.class(v).to_string()).collect()
}

fn use_fact(id: &str, role: &str) -> FactUse {
    FactUse { fact: ExistenceFactTable::get(id).clone(), role: role.to_string() }
}

/// Full pipeline for one `k`.
pub fn classify(k: u32) -> Result<ClassificationReport> {
    if k == 0 {
        return Err(Error::OutOfRange("classify needs k >= 1".into()));
    }
    let n = 2 * k + 2;
    let d2b = d2_basis(k);
    let d2 = Coords::new(&d2b);
    let len = d2b.len();
    let full = qmo_basis(k as usize, n, None);
    let prim = projected_kernel(&full, &d2)?;

    let mut steenrod_kernels = Vec::new();
    for i in 1..=4 {
        steenrod_kernels.push(KernelDim { i, dim: restricted_kernel(&prim, i, &d2)?.len() });
    }
    let c1 = restricted_kernel(&prim, 1, &d2)?;
    let candidates = restricted_kernel(&c1, 2, &d2)?;
    let higher = restricted_kernel(&restricted_kernel(&candidates, 3, &d2)?, 4, &d2)?;

    let odd = |v: &BitVector| -> Result<bool> { Ok(parity_decision(k, &d2.class(v))? == Parity::Odd) };
    let mut xi_images = Vec::new();
    for v in &candidates {
        let c = d2.class(v);
        xi_images.push(XiImage {
            class: c.to_string(),
            image: crate::dpoint::xi_push(k, &c)?.to_string(),
            parity: parity_decision(k, &c)?,
        });
    }

    let (lemma55_excluded, chain_passed, excluded_vec) = if k % 4 == 3 {
        let c = excluded_class(k);
        let v = d2.vec(&c)?;
        let passed = lemma55_check((k + 1) / 4).passed();
        (Some(c.to_string()), Some(passed), passed.then_some(v))
    } else {
        (None, None, None)
    };

    // classes that could be the whole Hurewicz image: primitive using height >= 2 monomials only
    let high: Vec<QMonomial> = full.iter().filter(|m| m.height() >= 2).cloned().collect();
    let spherical_type = projected_kernel(&high, &d2)?;
    let unobstructed = intersect(&candidates, &spherical_type, len)?;
    let mut unobstructed_odd = Vec::new();
    for v in all_nonzero(&unobstructed, len) {
        if Some(&v) != excluded_vec.as_ref() && odd(&v)? {
            unobstructed_odd.push(v);
        }
    }

    let any_odd = candidates.iter().map(odd).collect::<Result<Vec<bool>>>()?.into_iter().any(|b| b);
    let alpha_k2 = alpha(k + 2);
    let mut facts = Vec::new();
    let mut criterion = None;
    let mut criterion_witness = None;
    let verdict = if !any_odd {
        Verdict::ForcedEven
    } else if !unobstructed_odd.is_empty() {
        facts.push(use_fact("cohen-immersion", "M^{k+2} immerses in R^{2k+2} since α(k+2) >= 2"));
        facts
            .push(use_fact("odd-sphere-immersion", "connected sum realizes the odd candidate and the opposite parity"));
        Verdict::BothAchievable
    } else if alpha_k2 > 2 {
        facts.push(use_fact(
            "brown-embedding",
            "M is bordant to an embedded manifold, whose double point class vanishes",
        ));
        Verdict::ForcedEven
    } else {
        debug_assert!((k + 1).is_power_of_two());
        let r = (k + 1).trailing_zeros();
        facts.push(use_fact("cohen-immersion", "every (k+2)-manifold immerses in R^{2k+2}"));
        facts.push(use_fact("product-embedding", "decomposable manifolds have even double point surfaces"));
        facts.push(use_fact("dold-manifold", "indecomposable generator realizing the odd candidate"));
        facts.push(use_fact("dold-orientable", "selects the odd candidate over the even one for the Dold manifold"));
        criterion = Some(criterion_text(k));
        let m = ManifoldSpec::Dold { r };
        criterion_witness = Some(CriterionWitness { manifold: m.to_string(), value: m.sw_number(&[2, k])? });
        Verdict::DependsOnManifold
    };
    let odd_achievable = verdict != Verdict::ForcedEven;
    let forced_parity = match verdict {
        Verdict::ForcedEven => Some("even".to_string()),
        Verdict::BothAchievable => None,
        Verdict::DependsOnManifold => Some("depends-on-M".to_string()),
    };

    Ok(ClassificationReport {
        k,
        residue: k % 4,
        alpha_k2,
        d2_basis: d2b.iter().map(|m| m.to_string()).collect(),
        projected_primitives: render(&prim, &d2),
        candidate_basis: render(&candidates, &d2),
        lemma55_excluded,
        chain_passed,
        xi_images,
        unobstructed_odd: render(&unobstructed_odd, &d2),
        steenrod_kernels,
        higher_constraint_dim: higher.len(),
        odd_achievable,
        verdict,
        forced_parity,
        criterion,
        criterion_witness,
        existence_facts_used: facts,
        closed_form_agrees: odd_achievable == closed_form(k),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HurewiczProfile {
    pub k: u32,
    pub manifold: String,
    /// `w̄₂w̄ₖ[M]`.
    pub sw_number: bool,
    /// `h(α) - h^S(α)`; two entries when the immersion decides between them.
    pub height2_correction: Vec<String>,
    /// `None` when the parity depends on the immersion rather than on `M`.
    pub parity: Option<Parity>,
    pub annotations: Vec<String>,
}

/// The case formula for `h(α)` of an immersion `M^{k+2} -> R^{2k+2}`, with
/// the branch on `w̄₂w̄ₖ[M]` resolved.
pub fn hurewicz_profile(k: u32, m: &ManifoldSpec) -> Result<HurewiczProfile> {
    if k == 0 {
        return Err(Error::OutOfRange("hurewicz_profile needs k >= 1".into()));
    }
    if m.dimension() != k + 2 {
        return Err(Error::UnsupportedManifold(format!("{m} has dimension {}, need k+2 = {}", m.dimension(), k + 2)));
    }
    let lambda = m.sw_number(&[2, k])?;
    let mut annotations = Vec::new();
    let show = |c: QClass| if c.is_zero() { "0".to_string() } else { c.to_string() };
    let (corrections, parity) = match k % 4 {
        0 | 2 => {
            let b = d2_basis(k);
            let mut c: QClass = [b[1].clone(), b[2].clone()].into_iter().collect();
            if k == 2 {
                let e11 = QMonomial::base(crate::mo::EMonomial::from_powers(&[(1, 2)]));
                c.toggle(e11.mul(&e11).mul(&e11));
                if lambda {
                    annotations
                        .push("height-3 term e[1,1]*e[1,1]*e[1,1] present: an odd number of triple points".into());
                }
            }
            (vec![show(if lambda { c } else { QClass::zero() })], Some(Parity::Even))
        }
        1 if k == 1 => {
            let e1 = QMonomial::base(crate::mo::EMonomial::from_powers(&[(1, 1)]));
            let c: QClass = [q_top(1), e1.mul(&e1).mul(&e1).mul(&e1)].into_iter().collect();
            annotations.push(
                "odd case carries the height-4 term e[1]*e[1]*e[1]*e[1]: an odd number of quadruple points".into(),
            );
            annotations.push("h^S(α) = 0 since every closed 3-manifold bounds".into());
            (vec!["0".into(), c.to_string()], None)
        }
        1 => (vec!["0".into(), q_top(k).to_string()], None),
        _ => {
            let b = d2_basis(k);
            let c: QClass = [b[1].clone(), b[3].clone()].into_iter().collect();
            let parity = if lambda { Parity::Odd } else { Parity::Even };
            (vec![show(if lambda { c } else { QClass::zero() })], Some(parity))
        }
    };
    Ok(HurewiczProfile {
        k,
        manifold: m.to_string(),
        sw_number: lambda,
        height2_correction: corrections,
        parity,
        annotations,
    })
}
