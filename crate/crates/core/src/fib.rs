//! Fibonacci numbers and the parameters governing Fibonacci labellings of
//! cycles.
//!
//! A Fibonacci labelling of `C_n` over an abelian group `A` puts
//! `a_i = f_{i-1} a_0 + f_i a_1` on the `i`-th vertex (indices from 0, with
//! `f_{-1} = 1`). Closing the cycle forces
//! `d a_1 = z a_0` and `δ a_0 = 0`, with the quantities below.
//!
//! Everything is generic over the integer type; [`BigInt`] is the default
//! and the only type used outside tests.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

/// `f_k` for any integer `k`, with `f_{-t} = (-1)^{t-1} f_t`.
pub fn fib<T: Integer + Signed + Clone>(k: i64) -> T {
    let t = k.unsigned_abs();
    let (mut a, mut b) = (T::zero(), T::one());
    for _ in 0..t {
        let next = a.clone() + b;
        b = next;
        std::mem::swap(&mut a, &mut b);
    }
    // `a` now holds f_t.
    if k < 0 && t % 2 == 0 {
        -a
    } else {
        a
    }
}

/// Extended Euclid by remainder chain and back-substitution: returns
/// `(g, x, y)` with `g = x·a + y·b`, `g ≥ 0`.
pub fn extended_gcd<T: Integer + Signed + Clone>(a: &T, b: &T) -> (T, T, T) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (T::one(), T::zero());
    let (mut old_t, mut t) = (T::zero(), T::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = old_r - q.clone() * r.clone();
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = old_s - q.clone() * s.clone();
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = old_t - q * t.clone();
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// `gcd(f_n, f_{n+1} − 1)` from the case analysis on `n mod 12`.
pub fn gcd_fn_closed_form<T: Integer + Signed + Clone>(n: i64) -> T {
    assert!(n >= 3, "closed form needs n >= 3");
    if n % 2 == 1 {
        if n % 3 == 0 {
            T::one() + T::one()
        } else {
            T::one()
        }
    } else if n % 4 == 0 {
        fib(n / 2)
    } else {
        let h = n / 2;
        let two = T::one() + T::one();
        fib::<T>(h) + two * fib::<T>(h - 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FibParams<T = BigInt> {
    pub n: i64,
    /// `gcd(f_n, f_{n+1} − 1)`.
    pub d: T,
    pub x: T,
    pub y: T,
    pub z: T,
    pub q: T,
    pub q1: T,
    pub e: T,
    pub z1: T,
    /// `gcd(e, z1)`: the order of `a_0` must divide it.
    pub delta: T,
}

pub fn fib_params<T: Integer + Signed + Clone>(n: i64) -> FibParams<T> {
    assert!(n >= 3, "Fibonacci parameters need n >= 3");
    let f_prev: T = fib(n - 1);
    let f_n: T = fib(n);
    let f_next_m1: T = fib::<T>(n + 1) - T::one();
    let (d, x, y) = extended_gcd(&f_n, &f_next_m1);
    let z = (T::one() - f_prev.clone()) * x.clone() - f_n.clone() * y.clone();
    let q = f_n.clone() / d.clone();
    let q1 = f_next_m1 / d.clone();
    let e = z.clone() * q.clone() + f_prev - T::one();
    let z1 = z.clone() * q1.clone() + f_n;
    let delta = e.gcd(&z1);
    FibParams {
        n,
        d,
        x,
        y,
        z,
        q,
        q1,
        e,
        z1,
        delta,
    }
}

/// The golden ratio to 50 significant digits, for display.
pub const PHI_DIGITS: &str = "1.6180339887498948482045868343656381177203091798058";

#[derive(Debug, Clone, Serialize)]
pub struct DeltaRow {
    pub k: i64,
    pub n: i64,
    pub delta: BigInt,
    /// `δ(n_k) / δ(n_{k−1})`, absent for the first row.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeltaProgression {
    /// Period and offset: `n_k = step·k + offset`.
    pub step: i64,
    pub offset: i64,
    /// The conjectured limit of the ratios.
    pub limit: f64,
    pub rows: Vec<DeltaRow>,
}

fn ratio(a: &BigInt, b: &BigInt) -> Option<f64> {
    if b.is_zero() {
        return None;
    }
    // Shift both down so the quotient survives conversion to f64.
    let shift = a.bits().max(b.bits()).saturating_sub(900);
    ((a >> shift).to_f64()? / (b >> shift).to_f64()?).into()
}

/// δ-ratios along `n = 4k + r` (`r ∈ {0, 2}`) and `n = 6k + r`
/// (`r ∈ {1, 3, 5}`), for `k` from the first value giving `n ≥ 3` up to
/// `max_k`.
pub fn delta_ratio_report(max_k: i64) -> Vec<DeltaProgression> {
    assert!(max_k >= 2, "need at least two terms");
    let phi: f64 = PHI_DIGITS.parse().unwrap();
    let progressions = [(4, 0, 2.0 + phi), (4, 2, 2.0 + phi), (6, 1, 13.0 + 8.0 / phi), (6, 3, 13.0 + 8.0 / phi), (6, 5, 13.0 + 8.0 / phi)];
    progressions
        .into_iter()
        .map(|(step, offset, limit)| {
            let mut rows: Vec<DeltaRow> = Vec::new();
            for k in 1..=max_k {
                let n = step * k + offset;
                if n < 3 {
                    continue;
                }
                let delta = fib_params::<BigInt>(n).delta.abs();
                let ratio = rows.last().and_then(|prev| ratio(&delta, &prev.delta));
                rows.push(DeltaRow { k, n, delta, ratio });
            }
            DeltaProgression {
                step,
                offset,
                limit,
                rows,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn small_values() {
        assert_eq!(fib::<BigInt>(10), big(55));
        assert_eq!(fib::<BigInt>(-4), big(-3));
        assert_eq!(fib::<BigInt>(-1), big(1));
        assert_eq!(fib::<i64>(0), 0);
        assert_eq!(fib::<i64>(-5), 5);
    }

    #[test]
    fn addition_formula() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let m = rng.gen_range(-50..=50);
            let n = rng.gen_range(-50..=50);
            let lhs: BigInt = fib(m + n);
            let rhs = fib::<BigInt>(m - 1) * fib::<BigInt>(n) + fib::<BigInt>(m) * fib::<BigInt>(n + 1);
            assert_eq!(lhs, rhs, "m={m} n={n}");
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(gcd_fn_closed_form::<i64>(9), 2);
        assert_eq!(34i64.gcd(&54), 2);
        assert_eq!(gcd_fn_closed_form::<i64>(8), 3);
        assert_eq!(21i64.gcd(&33), 3);
        assert_eq!(gcd_fn_closed_form::<i64>(10), 11);
        assert_eq!(55i64.gcd(&88), 11);
    }

    #[test]
    fn closed_form_matches_direct_gcd() {
        for n in 3..=300 {
            let direct = fib::<BigInt>(n).gcd(&(fib::<BigInt>(n + 1) - 1));
            assert_eq!(gcd_fn_closed_form::<BigInt>(n), direct, "n={n}");
        }
    }

    #[test]
    fn consecutive_terms_are_coprime() {
        for n in 0..=300 {
            assert_eq!(fib::<BigInt>(n).gcd(&fib::<BigInt>(n + 1)), big(1));
        }
    }

    // All Bézout pairs with |x| <= 200, found by trial.
    fn bezout_by_search(a: i64, b: i64) -> Vec<(i64, i64)> {
        let d = a.gcd(&b);
        let mut out = Vec::new();
        for x in -200..=200i64 {
            let rest = d - x * a;
            if rest % b == 0 {
                out.push((x, rest / b));
            }
        }
        out
    }

    #[test]
    fn parameters_for_fifteen_and_six() {
        let p = fib_params::<BigInt>(15);
        assert_eq!((p.d.clone(), p.z.clone(), p.delta.clone()), (big(2), big(162), big(682)));
        assert_eq!((p.x.clone(), p.y.clone()), (big(118), big(-73)));
        // f_15 = 610, f_16 - 1 = 986: the pair is one of the Bézout solutions.
        assert!(bezout_by_search(610, 986).contains(&(118, -73)));
        let p = fib_params::<BigInt>(6);
        assert_eq!((p.d, p.z, p.delta), (big(4), big(-4), big(4)));
        let p = fib_params::<i64>(9);
        assert_eq!((p.d, p.x, p.y, p.z, p.delta), (2, 8, -5, 10, 38));
    }

    #[test]
    fn parameter_identities() {
        for n in 3..=200 {
            let p = fib_params::<BigInt>(n);
            let f_n = fib::<BigInt>(n);
            let f_next_m1 = fib::<BigInt>(n + 1) - 1;
            assert_eq!(&p.x * &f_n + &p.y * &f_next_m1, p.d, "n={n}");
            assert!(p.z.is_multiple_of(&p.d));
            assert_eq!(&p.d * &p.q, f_n);
            assert_eq!(&p.d * &p.q1, f_next_m1);
            assert!(p.delta.is_multiple_of(&p.d), "n={n}");
            assert_eq!(p.d, gcd_fn_closed_form::<BigInt>(n));
        }
    }

    #[test]
    fn machine_and_big_integers_agree() {
        for n in 3..=40 {
            let small = fib_params::<i128>(n);
            let big = fib_params::<BigInt>(n);
            assert_eq!(BigInt::from(small.delta), big.delta);
            assert_eq!(BigInt::from(small.z), big.z);
        }
    }

    #[test]
    fn ratio_report_shape() {
        let report = delta_ratio_report(10);
        assert_eq!(report.len(), 5);
        let fours = &report[0];
        assert_eq!(fours.rows.first().unwrap().n, 4);
        assert!(fours.rows.iter().skip(1).all(|r| r.ratio.is_some()));
        assert!((fours.limit - 3.618_033_988_7).abs() < 1e-9);
        assert!((report[2].limit - 17.944_271_909_9).abs() < 1e-9);
    }
}
