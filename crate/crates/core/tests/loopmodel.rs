use num_bigint::BigInt;
use proptest::prelude::*;
use qkz_core::asm::{asm_count, asm_refined_row, loop_refined_sums};
use qkz_core::loopmodel::{
    closing_sum, coeff_c, e_apply, e_apply_vector, enumerate_link_patterns, even_openings,
    loop_ground_state, partial_sum_xi, TlVector,
};
use qkz_core::qkz::{combinations, psi_hom_tuple, psibar_hom_tuple};
use qkz_core::{LinkPattern, TauPoly};

fn basis(pi: &LinkPattern) -> TlVector {
    TlVector::from([(pi.clone(), TauPoly::one())])
}

fn word(ops: &[usize], v: &TlVector) -> TlVector {
    ops.iter()
        .rev()
        .fold(v.clone(), |acc, &i| e_apply_vector(i, &acc))
}

fn scaled(v: &TlVector, c: &TauPoly) -> TlVector {
    v.iter().map(|(p, x)| (p.clone(), x * c)).collect()
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn temperley_lieb_relations() {
    for n in 2..=5 {
        let size = 2 * n;
        let next = |i: usize| i % size + 1;
        let prev = |i: usize| (i + size - 2) % size + 1;
        for pi in enumerate_link_patterns(n) {
            let v = basis(&pi);
            for i in 1..=size {
                assert_eq!(word(&[i, i], &v), scaled(&word(&[i], &v), &TauPoly::tau()));
                assert_eq!(word(&[i, next(i), i], &v), word(&[i], &v));
                assert_eq!(word(&[i, prev(i), i], &v), word(&[i], &v));
                for j in 1..=size {
                    if j != i && j != next(i) && j != prev(i) {
                        assert_eq!(word(&[i, j], &v), word(&[j, i], &v), "i={i} j={j}");
                    }
                }
            }
        }
    }
}

#[test]
fn fifth_pattern_example() {
    let p = LinkPattern::from_arches(6, &[(2, 3), (4, 5), (6, 1)]).unwrap();
    let q = LinkPattern::from_arches(6, &[(1, 2), (3, 6), (4, 5)]).unwrap();
    assert_eq!(e_apply(1, &p), (q, false));
    let closed = LinkPattern::from_arches(6, &[(1, 2), (3, 4), (5, 6)]).unwrap();
    assert_eq!(e_apply(3, &closed), (closed.clone(), true));
}

#[test]
fn ground_state_is_symmetric() {
    for n in 1..=6 {
        let xi = loop_ground_state(n).unwrap();
        for (p, v) in xi.iter() {
            assert_eq!(xi.get(&p.rotate(1)), Some(v));
            assert_eq!(xi.get(&p.rotate(2)), Some(v));
            assert_eq!(xi.get(&p.reflect()), Some(v));
        }
        let g = xi
            .values()
            .iter()
            .fold(BigInt::from(0), |g, x| num_integer::Integer::gcd(&g, x));
        assert_eq!(g, BigInt::from(1));
        assert_eq!(xi.total(), asm_count(n as u64));
    }
}

#[test]
fn partial_sums_n4() {
    let xi = loop_ground_state(4).unwrap();
    let sums: Vec<BigInt> = [2, 4, 6, 8]
        .iter()
        .map(|&a| partial_sum_xi(a, &xi).unwrap())
        .collect();
    assert_eq!(sums, ints(&[17, 4, 4, 17]));
    assert!(partial_sum_xi(10, &xi).is_err());
    assert!(partial_sum_xi(0, &xi).is_err());
}

fn defect_index(n: usize, k: usize) -> Vec<i64> {
    let mut a: Vec<i64> = (1..k).map(|l| 2 * l as i64 - 1).collect();
    a.push(2 * k as i64);
    a.extend((k + 1..=n).map(|l| 2 * l as i64 - 1));
    a
}

#[test]
fn defect_components_as_closing_sums() {
    for n in 1..=6 {
        let xi = loop_ground_state(n).unwrap();
        for k in 1..=n {
            let psi = psi_hom_tuple(&defect_index(n, k)).at_one();
            assert_eq!(psi, closing_sum(2 * k, &xi), "n={n} k={k}");
            let partial: BigInt = (1..=k).map(|m| partial_sum_xi(2 * m, &xi).unwrap()).sum();
            assert_eq!(psi, partial, "n={n} k={k}");
        }
    }
}

#[test]
fn special_sequences_select_even_openings() {
    for n in 2..=5 {
        let patterns = enumerate_link_patterns(n);
        for bits in 0u32..1 << (n - 1) {
            let mut b: Vec<usize> = (1..n)
                .map(|l| 2 * l - 1 + (bits >> (l - 1) & 1) as usize)
                .collect();
            b.push(2 * n - 1);
            for pi in &patterns {
                let expected = (1..n).all(|l| (2 * l < pi.partner(2 * l)) == (b[l - 1] == 2 * l));
                let c = coeff_c(&b, pi);
                let want = if expected {
                    TauPoly::one()
                } else {
                    TauPoly::zero()
                };
                assert_eq!(c, want, "b={b:?} pi={pi}");
            }
        }
    }
}

#[test]
fn loop_expansion_small_sizes() {
    for n in 2..=4 {
        let xi = loop_ground_state(n).unwrap();
        for b in combinations(2 * n, n) {
            let idx: Vec<i64> = b.iter().map(|&x| x as i64).collect();
            let lhs = psibar_hom_tuple(&idx).at_one();
            let rhs: BigInt = xi.iter().map(|(p, v)| coeff_c(&b, p).at_one() * v).sum();
            assert_eq!(lhs, rhs, "b = {b:?}");
        }
    }
}

#[test]
fn special_sequences_sum_to_total() {
    for n in 2..=5 {
        let xi = loop_ground_state(n).unwrap();
        let total: BigInt = (0u32..1 << (n - 1))
            .map(|bits| {
                let mut b: Vec<i64> = (1..n as i64)
                    .map(|l| 2 * l - (bits >> (l - 1) & 1) as i64)
                    .collect();
                b.push(2 * n as i64 - 1);
                psibar_hom_tuple(&b).at_one()
            })
            .sum();
        assert_eq!(total, xi.total());
    }
}

#[test]
fn even_opening_distribution() {
    let xi = loop_ground_state(4).unwrap();
    assert_eq!(loop_refined_sums(&xi), ints(&[7, 14, 14, 7]));
    for n in 2..=6 {
        let xi = loop_ground_state(n).unwrap();
        assert_eq!(loop_refined_sums(&xi), asm_refined_row(n as u64));
        // r = 1 and r = n each come from a single largest component
        let max = xi.values().iter().max().unwrap();
        for r in [0, n - 1] {
            let hits: Vec<&BigInt> = xi
                .iter()
                .filter(|(p, _)| even_openings(p) == r)
                .map(|(_, v)| v)
                .collect();
            assert_eq!(hits, vec![max]);
        }
    }
}

fn pattern_strategy() -> impl Strategy<Value = LinkPattern> {
    (1usize..=6).prop_flat_map(|n| {
        let patterns = enumerate_link_patterns(n);
        (0..patterns.len()).prop_map(move |k| patterns[k].clone())
    })
}

proptest! {
    #[test]
    fn e_apply_keeps_patterns_valid(pi in pattern_strategy(), i in 1usize..=12) {
        let size = pi.size();
        let i = (i - 1) % size + 1;
        let (r, closed) = e_apply(i, &pi);
        prop_assert!(LinkPattern::new(r.pairing().to_vec()).is_ok());
        prop_assert_eq!(r.partner(i), i % size + 1);
        prop_assert_eq!(closed, pi.partner(i) == i % size + 1);
        for (a, b) in r.arches() {
            prop_assert_eq!((b - a) % 2, 1);
        }
    }

    #[test]
    fn rotation_and_reflection_preserve_validity(pi in pattern_strategy(), s in 0usize..12) {
        let r = pi.rotate(s);
        prop_assert!(LinkPattern::new(r.pairing().to_vec()).is_ok());
        prop_assert_eq!(pi.rotate(pi.size()), pi.clone());
        prop_assert_eq!(pi.reflect().reflect(), pi);
    }
}
