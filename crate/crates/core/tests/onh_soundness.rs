mod support;

use num_rational::BigRational;
use proptest::prelude::*;
use rand::Rng;

use superklr_core::onh::{annihilators, tau_word_reduce, CyclotomicOnh, OnhAlgebra, OnhElement, Scalars};
use superklr_core::{DimensionQuery, Execution, Permutation};

use support::rng;

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// A random element with a few terms, exponents and tau-length bounded.
fn random_element(r: &mut impl Rng, n: usize, max_deg: u32) -> OnhElement {
    let perms = Permutation::all(n);
    let mut e = OnhElement::zero(n);
    for _ in 0..r.gen_range(1..=3) {
        let exps: Vec<u32> = (0..n).map(|_| r.gen_range(0..=max_deg)).collect();
        let w = perms[r.gen_range(0..perms.len())].clone();
        e.add_term(w, exps, int(r.gen_range(-3..=3)));
    }
    e
}

fn power(alg: &OnhAlgebra, x: &OnhElement, k: u32) -> OnhElement {
    (0..k).fold(OnhElement::one(alg.rank()), |acc, _| alg.multiply_free(&acc, x).unwrap())
}

#[test]
fn defining_relations_hold() {
    for n in 2..=4 {
        let alg = OnhAlgebra::new(n).unwrap();
        let one = OnhElement::one(n);
        let m = |a: &OnhElement, b: &OnhElement| alg.multiply_free(a, b).unwrap();
        let x: Vec<OnhElement> = (1..=n).map(|k| alg.x(k).unwrap()).collect();
        let t: Vec<OnhElement> = (1..n).map(|i| alg.tau(i).unwrap()).collect();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    assert!(m(&x[i], &x[j]).add(&m(&x[j], &x[i])).is_zero());
                }
            }
        }
        for i in 0..n - 1 {
            assert!(m(&t[i], &t[i]).is_zero());
            for j in 0..n - 1 {
                if i.abs_diff(j) > 1 {
                    assert!(m(&t[i], &t[j]).add(&m(&t[j], &t[i])).is_zero());
                }
            }
            if i + 1 < n - 1 {
                assert_eq!(m(&m(&t[i], &t[i + 1]), &t[i]), m(&m(&t[i + 1], &t[i]), &t[i + 1]));
            }
            for k in 0..n {
                if k != i && k != i + 1 {
                    assert!(m(&x[k], &t[i]).add(&m(&t[i], &x[k])).is_zero());
                }
            }
            assert_eq!(m(&x[i], &t[i]).add(&m(&t[i], &x[i + 1])), one);
            assert_eq!(m(&t[i], &x[i]).add(&m(&x[i + 1], &t[i])), one);
        }
    }
}

#[test]
fn tau_past_power_of_x() {
    // tau_k x_k^l = (-1)^l x_{k+1}^l tau_k + sum_{a+b=l-1} (-1)^b x_{k+1}^b x_k^a
    for n in 2..=4 {
        let alg = OnhAlgebra::new(n).unwrap();
        for k in 1..n {
            let xk = alg.x(k).unwrap();
            let xk1 = alg.x(k + 1).unwrap();
            let tk = alg.tau(k).unwrap();
            for l in 0..=6u32 {
                let lhs = alg.multiply_free(&tk, &power(&alg, &xk, l)).unwrap();
                let sign = if l % 2 == 0 { int(1) } else { int(-1) };
                let mut rhs = alg.multiply_free(&power(&alg, &xk1, l), &tk).unwrap().scale(&sign);
                for a in 0..l {
                    let b = l - 1 - a;
                    let s = if b % 2 == 0 { int(1) } else { int(-1) };
                    let term = alg.multiply_free(&power(&alg, &xk1, b), &power(&alg, &xk, a)).unwrap();
                    rhs = rhs.add(&term.scale(&s));
                }
                assert_eq!(lhs, rhs, "n={n} k={k} l={l}");
            }
        }
    }
}

#[test]
fn tau_products_follow_length_additivity() {
    for n in 1..=4 {
        let perms = Permutation::all(n);
        for u in &perms {
            for v in &perms {
                let mut word = u.min_reduced_word();
                word.extend(v.min_reduced_word());
                let uv = u.compose(v);
                let reduced = tau_word_reduce(n, &word).unwrap();
                if u.length() + v.length() == uv.length() {
                    let (sign, w) = reduced.expect("length-additive product is nonzero");
                    assert!(sign == 1 || sign == -1);
                    assert_eq!(w, uv);
                } else {
                    assert!(reduced.is_none(), "{u} * {v}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn free_product_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=4);
        let alg = OnhAlgebra::new(n).unwrap();
        let a = random_element(&mut r, n, 3);
        let b = random_element(&mut r, n, 3);
        let c = random_element(&mut r, n, 3);
        let left = alg.multiply_free(&alg.multiply_free(&a, &b).unwrap(), &c).unwrap();
        let right = alg.multiply_free(&a, &alg.multiply_free(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn reduction_is_a_projection_that_kills_the_ideal(seed in any::<u64>(), case in 0usize..4) {
        let (n, ell) = [(2, 2), (2, 3), (3, 3), (3, 4)][case];
        let onh = CyclotomicOnh::new(n, ell).unwrap();
        let alg = onh.algebra();
        let mut r = rng(seed);
        let a = random_element(&mut r, n, ell as u32 + 1);
        let reduced = onh.reduce(&a).unwrap();
        prop_assert!(reduced.terms().all(|(_, e, _)| onh.in_basis_range(e)));
        prop_assert_eq!(onh.reduce(&reduced).unwrap(), reduced.clone());
        let x1l = power(alg, &alg.x(1).unwrap(), ell as u32);
        prop_assert!(onh.reduce(&alg.multiply_free(&x1l, &a).unwrap()).unwrap().is_zero());
        // x_1^ell generates a two-sided ideal
        prop_assert!(onh.reduce(&alg.multiply_free(&a, &x1l).unwrap()).unwrap().is_zero());
        let b = random_element(&mut r, n, 2);
        let sandwich = alg.multiply_free(&alg.multiply_free(&b, &x1l).unwrap(), &a).unwrap();
        prop_assert!(onh.reduce(&sandwich).unwrap().is_zero());
    }

    #[test]
    fn reduction_respects_multiplication(seed in any::<u64>(), case in 0usize..3) {
        let (n, ell) = [(2, 2), (3, 3), (3, 4)][case];
        let onh = CyclotomicOnh::new(n, ell).unwrap();
        let alg = onh.algebra();
        let mut r = rng(seed);
        let a = random_element(&mut r, n, 3);
        let b = random_element(&mut r, n, 3);
        let direct = onh.reduce(&alg.multiply_free(&a, &b).unwrap()).unwrap();
        let via = onh.multiply(&onh.reduce(&a).unwrap(), &onh.reduce(&b).unwrap()).unwrap();
        prop_assert_eq!(direct, via);
    }
}

#[test]
fn basis_elements_reduce_to_themselves() {
    for (n, ell) in [(2, 2), (2, 3), (3, 3), (3, 4)] {
        let onh = CyclotomicOnh::new(n, ell).unwrap();
        for b in onh.basis() {
            assert_eq!(onh.reduce(&b).unwrap(), b);
        }
    }
}

#[test]
fn annihilator_relation_is_pushed_cyclotomic_generator() {
    for n in 2..=4 {
        for ell in n..=n + 2 {
            let alg = OnhAlgebra::new(n).unwrap();
            let ann = annihilators(&alg, ell).unwrap();
            let x1l = power(&alg, &alg.x(1).unwrap(), ell as u32);
            for k in 1..n {
                let word: Vec<usize> = (1..=k).rev().collect();
                let expected = alg.multiply_free(&alg.tau_word(&word).unwrap(), &x1l).unwrap();
                let mut sum = OnhElement::zero(n);
                for (e, (g, s)) in ann.level(k).enumerate() {
                    let tau = alg.tau_word(&s).unwrap();
                    sum = sum.add(&alg.multiply_free(&OnhElement::from_skew(g), &tau).unwrap());
                    // deg_{x_{k+1}} g_{e,k+1} = ell - k + l(e)
                    let len = e.count_ones() as usize;
                    assert_eq!(g.degree_in(k + 1), Some((ell - k + len) as u32), "n={n} ell={ell} k={k} e={e}");
                }
                assert_eq!(sum, expected, "n={n} ell={ell} k={k}");
            }
        }
    }
}

#[test]
fn structure_tables_are_associative() {
    for (n, ell) in [(2, 2), (2, 3)] {
        let onh = CyclotomicOnh::new(n, ell).unwrap();
        let table = onh.structure_table(Execution::default()).unwrap();
        assert!(table.associativity_defects(Execution::default()).unwrap().is_empty());
        assert!(table.integral_entries().is_some());
    }
}

#[test]
fn structure_table_modes_agree() {
    let onh = CyclotomicOnh::new(3, 3).unwrap();
    let par = onh.structure_table(Execution::Parallel).unwrap();
    let seq = onh.structure_table(Execution::Sequential).unwrap();
    for a in 0..par.len() {
        for b in 0..par.len() {
            assert_eq!(par.entry(a, b), seq.entry(a, b));
        }
    }
}

#[test]
fn prime_field_table_is_rational_table_mod_p() {
    let p = 5u64;
    let rational = CyclotomicOnh::new(2, 3).unwrap().structure_table(Execution::default()).unwrap();
    let modp = CyclotomicOnh::with_scalars(2, 3, Scalars::prime(p).unwrap())
        .unwrap()
        .structure_table(Execution::default())
        .unwrap();
    let f = Scalars::prime(p).unwrap();
    for a in 0..rational.len() {
        for b in 0..rational.len() {
            assert_eq!(&f.normalize_element(rational.entry(a, b)).unwrap(), modp.entry(a, b));
        }
    }
    assert!(modp.associativity_defects(Execution::default()).unwrap().is_empty());
}

#[test]
fn graded_super_dimension_matches_formula() {
    for n in 1..=4 {
        for ell in n..=6 {
            let onh = CyclotomicOnh::new(n, ell).unwrap();
            assert_eq!(
                onh.graded_super_dimension(),
                DimensionQuery::odd_nilhecke(n, ell as u64).graded_dim(),
                "n={n} ell={ell}"
            );
        }
    }
    let two = CyclotomicOnh::new(2, 2).unwrap().graded_super_dimension();
    assert_eq!(two.terms().len(), 3);
    assert_eq!(two.specialize_total(), 4.into());
}

#[test]
fn products_stay_homogeneous() {
    let onh = CyclotomicOnh::new(3, 4).unwrap();
    let basis = onh.basis();
    let mut r = rng(7);
    for _ in 0..200 {
        let a = &basis[r.gen_range(0..basis.len())];
        let b = &basis[r.gen_range(0..basis.len())];
        let prod = onh.multiply(a, b).unwrap();
        let expected = (a.term_degrees()[0].0 + b.term_degrees()[0].0, (a.term_degrees()[0].1 + b.term_degrees()[0].1) % 2);
        assert!(prod.term_degrees().iter().all(|&d| d == expected));
    }
}

#[test]
fn level_below_rank_is_rejected() {
    assert_eq!(CyclotomicOnh::new(3, 2).unwrap_err().code(), "E_LEVEL");
}
