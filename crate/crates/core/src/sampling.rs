//! Seeded draws of exact test parameters.

use rand::Rng;

use crate::scalar::{ExactScalar, Rat};

/// The fixed list of rational values standing in for generic q.
pub fn generic_q_values() -> Vec<ExactScalar> {
    [(2, 1), (3, 2), (5, 3), (7, 4)]
        .into_iter()
        .map(|(p, d)| ExactScalar::Rat(Rat::new(p, d).expect("nonzero denominator")))
        .collect()
}

pub fn random_generic_q<R: Rng + ?Sized>(rng: &mut R) -> ExactScalar {
    let qs = generic_q_values();
    qs[rng.gen_range(0..qs.len())].clone()
}

/// p/d with p in [1, 100] and d in [1, 10].
pub fn random_small_rat<R: Rng + ?Sized>(rng: &mut R) -> Rat {
    let p: i64 = rng.gen_range(1..=100);
    let d: i64 = rng.gen_range(1..=10);
    Rat::new(p, d).expect("nonzero denominator")
}

/// z pairwise distinct and nonzero, and q²·z_i ≠ z_j for all i ≠ j.
pub fn is_admissible(z: &[ExactScalar], q: &ExactScalar) -> bool {
    let q2 = q * q;
    for (i, zi) in z.iter().enumerate() {
        if zi.is_zero() {
            return false;
        }
        for (j, zj) in z.iter().enumerate() {
            if i != j && (zi == zj || &q2 * zi == *zj) {
                return false;
            }
        }
    }
    true
}

/// Rejection-sample `count` spectral parameters admissible for q that also
/// satisfy `extra`.
pub fn random_admissible_z<R, F>(
    rng: &mut R,
    count: usize,
    q: &ExactScalar,
    extra: F,
) -> Vec<ExactScalar>
where
    R: Rng + ?Sized,
    F: Fn(&[ExactScalar]) -> bool,
{
    loop {
        let z: Vec<ExactScalar> = (0..count)
            .map(|_| ExactScalar::Rat(random_small_rat(rng)))
            .collect();
        if is_admissible(&z, q) && extra(&z) {
            return z;
        }
    }
}

/// z admissible both as given and after the cyclic shift (z_2, …, z_N, q⁶z_1).
pub fn random_cyclic_admissible_z<R: Rng + ?Sized>(
    rng: &mut R,
    count: usize,
    q: &ExactScalar,
) -> Vec<ExactScalar> {
    random_admissible_z(rng, count, q, |z| is_admissible(&shifted_z(z, q), q))
}

/// (z_2, …, z_N, q⁶·z_1).
pub fn shifted_z(z: &[ExactScalar], q: &ExactScalar) -> Vec<ExactScalar> {
    let s = q.pow(6).expect("nonnegative power");
    let mut out: Vec<ExactScalar> = z[1..].to_vec();
    out.push(&s * &z[0]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn draws_are_admissible_and_reproducible() {
        let q = ExactScalar::from_int(2);
        let mut r1 = ChaCha8Rng::seed_from_u64(5);
        let mut r2 = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = random_cyclic_admissible_z(&mut r1, 5, &q);
            let b = random_cyclic_admissible_z(&mut r2, 5, &q);
            assert_eq!(a, b);
            assert!(is_admissible(&a, &q));
            assert!(is_admissible(&shifted_z(&a, &q), &q));
        }
    }

    #[test]
    fn rejects_collisions() {
        let q = ExactScalar::from_int(2);
        let z = |v: &[i64]| {
            v.iter()
                .map(|&x| ExactScalar::from_int(x))
                .collect::<Vec<_>>()
        };
        assert!(is_admissible(&z(&[1, 2, 3]), &q));
        assert!(!is_admissible(&z(&[1, 1, 3]), &q));
        assert!(!is_admissible(&z(&[1, 4, 3]), &q));
        assert!(!is_admissible(&z(&[0, 2, 3]), &q));
    }
}
