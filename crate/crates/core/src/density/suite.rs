//! Seeded random step graphons shared by tests, examples and the CLI.

use num::{BigInt, BigRational};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::StepGraphon;

/// Seed of the default random suite.
pub const SUITE_SEED: u64 = 0x5eed_c0de;

/// Part weights drawn uniformly and normalised; entries i.i.d. uniform on [0,1].
pub fn random_graphon<R: Rng>(rng: &mut R, k: usize) -> StepGraphon<f64> {
    let raw: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut weights: Vec<f64> = raw.iter().map(|w| w / total).collect();
    // push rounding error into the last weight so the sum is 1 to the ulp
    let head: f64 = weights[..k - 1].iter().sum();
    weights[k - 1] = 1.0 - head;
    StepGraphon::new(weights, symmetric(rng, k, |r| r.gen::<f64>())).expect("valid by construction")
}

/// Equal weights `1/k`; entries `i/denom` for uniform `i` in `0..=denom`.
pub fn random_rational_graphon<R: Rng>(rng: &mut R, k: usize, denom: i64) -> StepGraphon<BigRational> {
    let values = symmetric(rng, k, |r| BigRational::new(BigInt::from(r.gen_range(0..=denom)), BigInt::from(denom)));
    StepGraphon::uniform(values).expect("valid by construction")
}

fn symmetric<R: Rng, S: Clone>(rng: &mut R, k: usize, mut draw: impl FnMut(&mut R) -> S) -> Vec<Vec<S>> {
    let mut rows: Vec<Vec<Option<S>>> = vec![vec![None; k]; k];
    for i in 0..k {
        for j in i..k {
            let x = draw(rng);
            rows[i][j] = Some(x.clone());
            rows[j][i] = Some(x);
        }
    }
    rows.into_iter().map(|r| r.into_iter().map(|x| x.expect("filled")).collect()).collect()
}

/// The adversarial corners: all 0, all 1, constant 1/2, and the two
/// equal-weight 0/1 block graphons.
pub fn corner_graphons() -> Vec<StepGraphon<f64>> {
    vec![
        StepGraphon::constant(0.0).unwrap(),
        StepGraphon::constant(1.0).unwrap(),
        StepGraphon::half(),
        StepGraphon::uniform(vec![vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap(),
        StepGraphon::uniform(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap(),
    ]
}

/// `count` random graphons with `k` cycling through 2, 3, 4, preceded by the
/// corner graphons. Deterministic in `seed`.
pub fn random_suite(seed: u64, count: usize) -> Vec<StepGraphon<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = corner_graphons();
    out.extend((0..count).map(|i| random_graphon(&mut rng, 2 + i % 3)));
    out
}

/// The suite used by the acceptance checks: corners plus 1000 random graphons.
pub fn default_suite() -> Vec<StepGraphon<f64>> {
    random_suite(SUITE_SEED, 1000)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_valid() {
        let a = random_suite(1, 30);
        let b = random_suite(1, 30);
        assert_eq!(a, b);
        assert_eq!(a.len(), 35);
        assert!(a[5..].iter().all(|w| (2..=4).contains(&w.k())));
        for w in &a {
            assert!((w.weights().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }
        assert_ne!(random_suite(2, 30), a);
    }

    #[test]
    fn rational_graphons_are_exact() {
        let w = random_rational_graphon(&mut ChaCha8Rng::seed_from_u64(1), 3, 7);
        let total = w.weights().iter().fold(BigRational::from_integer(0.into()), |a, b| a + b);
        assert_eq!(total, BigRational::from_integer(1.into()));
    }
}
