//! The suspension chain ruling out `e_1^{k-1}e_2 · e_1^{k-1}e_2 + Q^{k+2}e_1^k`
//! as a spherical class when `k = 4r - 1`.
//!
//! If that class were spherical, `Sq^{k+3}` would be non-zero on
//! `s^2(w_k)` in the mapping cone. Writing `Sq^{4r+2}` through Adem relations
//! as `Sq^2 Sq^{4r} + Sq^1 Sq^{4r} Sq^1` moves the computation below the top
//! cell, where the cone agrees with `s^2 MO(k)`, and there every term vanishes.

use super::{act, adem_normalize, sq, suspend_act, SuspendedClass, SymPoly};

/// One displayed intermediate value, computed and compared with its closed form.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub label: String,
    pub computed: SuspendedClass,
    pub expected: SuspendedClass,
}

impl ChainStep {
    pub fn matches(&self) -> bool {
        self.computed == self.expected
    }
}

#[derive(Clone, Debug)]
pub struct ChainReport {
    pub r: u32,
    pub k: u32,
    /// `Sq^{4r+2} = Sq^2 Sq^{4r} + Sq^1 Sq^{4r} Sq^1` after normalization.
    pub adem_identity: bool,
    pub steps: Vec<ChainStep>,
    /// `Sq^2 s^2 Sq^{4r} w + Sq^1 s^2 Sq^{4r} Sq^1 w`.
    pub final_value: SuspendedClass,
    /// `Sq^{4r+2} s^2 w` acting directly in `s^2 H^*MO(k)`.
    pub direct_value: SuspendedClass,
    /// Degree of the top cell of the cone, `2k + 5`.
    pub top_degree: u32,
    /// Every intermediate class lives strictly below the top cell.
    pub below_top_cell: bool,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.adem_identity
            && self.steps.iter().all(ChainStep::matches)
            && self.final_value.is_zero()
            && self.direct_value.is_zero()
            && self.below_top_cell
    }
}

/// Run the chain for `k = 4r - 1` in `k` variables. `r` must be positive.
pub fn lemma55_check(r: u32) -> ChainReport {
    assert!(r >= 1, "lemma55_check requires r >= 1");
    let k = 4 * r - 1;
    let n = k as usize;
    let w = |idx: &[u32]| SymPoly::w_monomial(idx, n);
    let s2 = |p: SymPoly| SuspendedClass::new(2, p);
    let zero = || s2(SymPoly::zero(n));

    let decomposition = sq(&[2, 4 * r]) + sq(&[1, 4 * r, 1]);
    let adem_identity = adem_normalize(&decomposition) == sq(&[4 * r + 2]);

    let u = s2(w(&[k]));
    let sq4r_u = suspend_act(4 * r, &u);
    let sq1_u = suspend_act(1, &u);
    let sq4r_sq1_u = suspend_act(4 * r, &sq1_u);
    let w1_wk2 = s2(w(&[1, k, k]));
    let sq1_w1_wk2 = suspend_act(1, &w1_wk2);
    let sq1_sq1_w1_wk2 = suspend_act(1, &sq1_w1_wk2);

    let steps = vec![
        ChainStep { label: format!("Sq^{} s^2(w{k})", 4 * r), computed: sq4r_u.clone(), expected: zero() },
        ChainStep { label: format!("Sq^1 s^2(w{k})"), computed: sq1_u.clone(), expected: s2(w(&[1, k])) },
        ChainStep {
            label: format!("Sq^{} s^2(w1*w{k})", 4 * r),
            computed: sq4r_sq1_u.clone(),
            expected: s2(w(&[1, 1, k, k])),
        },
        ChainStep {
            label: format!("Sq^1 s^2(w1*w{k}^2)"),
            computed: sq1_w1_wk2.clone(),
            expected: s2(w(&[1, 1, k, k])),
        },
        ChainStep { label: format!("Sq^1 Sq^1 s^2(w1*w{k}^2)"), computed: sq1_sq1_w1_wk2, expected: zero() },
    ];

    let final_payload = super::sq_act(2, &sq4r_u.payload).add(&super::sq_act(1, &sq4r_sq1_u.payload));
    let final_value = s2(final_payload);
    let direct_value = s2(act(&sq(&[4 * r + 2]), &u.payload));

    let top_degree = 2 * k + 5;
    let below_top_cell =
        [&u, &sq1_u, &sq4r_sq1_u, &w1_wk2, &sq1_w1_wk2].iter().all(|c| c.degree().is_none_or(|d| d < top_degree));

    ChainReport { r, k, adem_identity, steps, final_value, direct_value, top_degree, below_top_cell }
}
