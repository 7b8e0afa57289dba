use proptest::prelude::*;

use selfint::class::{GF2Class, Tensor};
use selfint::cli::parse;
use selfint::gf2::{binom_mod2, kernel, BitMatrix, BitVector};
use selfint::mo::{bo_basis, kronecker_pair, mo_basis, mo_coproduct, sq_dual, Context, EMonomial, MOClass};
use selfint::qmo::{nishida, q_apply, q_coproduct, q_product, qmo_basis, QClass, QMonomial};
use selfint::sq::{act, adem_normalize, sq_act, wu_check, SqElement, SqMonomial, SymPoly};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 96, ..ProptestConfig::default() }
}

fn pick<T: Clone>(items: &[T], seed: usize) -> Option<T> {
    (!items.is_empty()).then(|| items[seed % items.len()].clone())
}

fn mo_element(k: usize, d: u32, seed: usize) -> Option<EMonomial> {
    pick(&mo_basis(k, d), seed)
}

fn q_element(k: usize, n: u32, seed: usize) -> Option<QMonomial> {
    pick(&qmo_basis(k, n, None), seed)
}

fn exact_binom(a: u64, b: u64) -> u128 {
    if b > a {
        return 0;
    }
    let mut acc: u128 = 1;
    for j in 0..b as u128 {
        acc = acc * (a as u128 - j) / (j + 1);
    }
    acc
}

/// Partitions of `n` into exactly `k` positive parts.
fn p_exact(n: i64, k: i64) -> u64 {
    match (n, k) {
        (0, 0) => 1,
        (_, _) if n <= 0 || k <= 0 => 0,
        _ => p_exact(n - 1, k - 1) + p_exact(n - k, k),
    }
}

fn mo_coassociative(m: &EMonomial, ctx: Context) -> bool {
    let psi = mo_coproduct(&MOClass::from_term(m.clone()), ctx, false).unwrap();
    let mut left: GF2Class<(EMonomial, EMonomial, EMonomial)> = GF2Class::zero();
    let mut right = left.clone();
    for Tensor(a, b) in &psi {
        let pa = if a.is_unit() {
            [Tensor(EMonomial::unit(), EMonomial::unit())].into_iter().collect()
        } else {
            mo_coproduct(&MOClass::from_term(a.clone()), ctx, false).unwrap()
        };
        let pb = if b.is_unit() {
            [Tensor(EMonomial::unit(), EMonomial::unit())].into_iter().collect()
        } else {
            mo_coproduct(&MOClass::from_term(b.clone()), ctx, false).unwrap()
        };
        for Tensor(x, y) in &pa {
            left.toggle((x.clone(), y.clone(), b.clone()));
        }
        for Tensor(x, y) in &pb {
            right.toggle((a.clone(), x.clone(), y.clone()));
        }
    }
    left == right
}

fn q_triples(c: &QClass, left_side: bool) -> GF2Class<(QMonomial, QMonomial, QMonomial)> {
    let mut out = GF2Class::zero();
    for Tensor(a, b) in &q_coproduct(c, false).unwrap() {
        let target = if left_side { a } else { b };
        for Tensor(x, y) in &q_coproduct(&QClass::from_term(target.clone()), false).unwrap() {
            out.toggle(if left_side { (x.clone(), y.clone(), b.clone()) } else { (a.clone(), x.clone(), y.clone()) });
        }
    }
    out
}

fn w_poly(indices: &[u32], nvars: usize) -> SymPoly {
    SymPoly::w_monomial(indices, nvars)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn mo_coproduct_is_coassociative(k in 1usize..=4, d in 1u32..=12, seed in any::<usize>()) {
        if let Some(m) = mo_element(k, d, seed) {
            prop_assert!(mo_coassociative(&m, Context::MO));
        }
        if let Some(m) = pick(&bo_basis(k, d), seed) {
            prop_assert!(mo_coassociative(&m, Context::BO));
        }
    }

    #[test]
    fn qmo_coproduct_is_coassociative(k in 1usize..=3, n in 1u32..=10, seed in any::<usize>()) {
        if let Some(m) = q_element(k, n, seed) {
            let c = QClass::from_term(m);
            prop_assert!(q_triples(&c, true) == q_triples(&c, false));
        }
    }

    #[test]
    fn coproduct_is_multiplicative(k in 1usize..=3, n1 in 1u32..=6, n2 in 1u32..=6, s1 in any::<usize>(), s2 in any::<usize>()) {
        if let (Some(x), Some(y)) = (q_element(k, n1, s1), q_element(k, n2, s2)) {
            let (x, y) = (QClass::from_term(x), QClass::from_term(y));
            let lhs = q_coproduct(&q_product(&x, &y), false).unwrap();
            let mut rhs = GF2Class::zero();
            for Tensor(a, b) in &q_coproduct(&x, false).unwrap() {
                for Tensor(c, d) in &q_coproduct(&y, false).unwrap() {
                    rhs.toggle(Tensor(a.mul(c), b.mul(d)));
                }
            }
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn dual_squares_are_adjoint(k in 1usize..=4, i in 0u32..=4, d in 1u32..=10, seed in any::<usize>(), wseed in any::<usize>()) {
        let Some(m) = mo_element(k, d, seed) else { return Ok(()) };
        let Some(deg) = d.checked_sub(i + k as u32) else { return Ok(()) };
        // a random class of H^*MO(k): w_k times a w-monomial of degree `deg`
        let mut idx = Vec::new();
        let mut rest = deg;
        let mut s = wseed;
        while rest > 0 {
            let part = 1 + (s % (rest.min(k as u32) as usize)) as u32;
            idx.push(part);
            rest -= part;
            s /= 7;
        }
        idx.push(k as u32);
        let p = w_poly(&idx, k);
        let lhs = kronecker_pair(&sq_act(i, &p), &m).unwrap();
        let dual = sq_dual(i, &MOClass::from_term(m), Context::MO).unwrap();
        let rhs = dual.iter().fold(false, |acc, e| acc ^ kronecker_pair(&p, e).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lucas_matches_pascal(a in 0u64..=64, b in 0u64..=64) {
        prop_assert_eq!(binom_mod2(a as i64, b as i64).unwrap(), exact_binom(a, b) % 2 == 1);
    }

    #[test]
    fn adem_normalization_preserves_action(
        exps in proptest::collection::vec(1u32..=6, 1..=4),
        w in proptest::collection::vec(1u32..=3, 1..=3),
        nvars in 2usize..=5,
    ) {
        prop_assume!(exps.iter().sum::<u32>() <= 12);
        prop_assume!(w.iter().all(|&i| i as usize <= nvars));
        let raw: SqElement = GF2Class::from_term(SqMonomial::new(exps));
        let norm = adem_normalize(&raw);
        prop_assert!(norm.iter().all(SqMonomial::is_admissible));
        let p = w_poly(&w, nvars);
        prop_assert_eq!(act(&raw, &p), act(&norm, &p));
    }

    #[test]
    fn cartan_and_instability(a in proptest::collection::vec(1u32..=3, 1..=2), b in proptest::collection::vec(1u32..=3, 1..=2), n in 0u32..=8) {
        let (p, q) = (w_poly(&a, 4), w_poly(&b, 4));
        let mut cartan = SymPoly::zero(4);
        for j in 0..=n {
            cartan = cartan.add(&sq_act(j, &p).mul(&sq_act(n - j, &q)));
        }
        prop_assert_eq!(sq_act(n, &p.mul(&q)), cartan);
        let d = p.degree().unwrap();
        prop_assert_eq!(sq_act(d, &p), p.square());
        prop_assert!(sq_act(d + 1 + n, &p).is_zero());
        prop_assert!(sq_act(1, &sq_act(1, &p)).is_zero());
    }

    #[test]
    fn basis_counts_are_partition_counts(k in 1usize..=6, n in 1u32..=20) {
        prop_assert_eq!(mo_basis(k, n).len() as u64, p_exact(n as i64, k as i64));
        let at_most: u64 = (1..=k as i64).map(|j| p_exact(n as i64, j)).sum();
        prop_assert_eq!(bo_basis(k, n).len() as u64, at_most);
    }

    #[test]
    fn rank_plus_nullity(rows in proptest::collection::vec(proptest::collection::vec(any::<bool>(), 9), 1..8)) {
        let ncols = 9;
        let m = BitMatrix::from_rows(rows.iter().map(|r| BitVector::from_bits(r)).collect(), ncols).unwrap();
        let ker = kernel(&m);
        prop_assert_eq!(m.rank() + ker.len(), ncols);
        for v in &ker {
            prop_assert!(m.mul_vec(v).unwrap().is_zero());
        }
    }

    #[test]
    fn operations_are_additive(k in 1usize..=3, n in 1u32..=7, s1 in any::<usize>(), s2 in any::<usize>(), i in 0u32..=12) {
        if let (Some(x), Some(y)) = (q_element(k, n, s1), q_element(k, n, s2)) {
            let (x, y) = (QClass::from_term(x), QClass::from_term(y));
            let sum = &x + &y;
            if let (Ok(a), Ok(b), Ok(c)) = (q_apply(i, &x), q_apply(i, &y), q_apply(i, &sum)) {
                prop_assert_eq!(c, &a + &b);
            }
            if let (Ok(a), Ok(b), Ok(c)) = (nishida(i, &x), nishida(i, &y), nishida(i, &sum)) {
                prop_assert_eq!(c, &a + &b);
            }
        }
    }

    #[test]
    fn height_is_additive_and_doubles(k in 1usize..=3, n1 in 1u32..=6, n2 in 1u32..=6, s1 in any::<usize>(), s2 in any::<usize>()) {
        if let (Some(x), Some(y)) = (q_element(k, n1, s1), q_element(k, n2, s2)) {
            prop_assert_eq!(x.mul(&y).height(), x.height() + y.height());
            if let [g] = x.factors() {
                let q = q_apply(g.dim() + 1, &QClass::from_term(x.clone()));
                if let Ok(q) = q {
                    prop_assert!(q.iter().all(|m| m.height() == 2 * x.height()));
                }
            }
        }
    }

    #[test]
    fn parse_render_round_trip(k in 1usize..=6, n in 1u32..=16, seeds in proptest::collection::vec(any::<usize>(), 1..4)) {
        let basis = qmo_basis(k, n, None);
        prop_assume!(!basis.is_empty());
        let c: QClass = seeds.iter().map(|s| basis[s % basis.len()].clone()).fold(QClass::zero(), |mut acc, m| {
            acc.toggle(m);
            acc
        });
        let back = parse(&c.to_string()).unwrap().eval().unwrap();
        prop_assert_eq!(back, c);
    }
}

#[test]
fn wu_formula_holds() {
    for k in 1..=6 {
        for j in 1..=k {
            for i in 1..=j {
                assert!(wu_check(i, j, k).unwrap(), "Sq^{i} w{j} in {k} variables");
            }
        }
    }
}
