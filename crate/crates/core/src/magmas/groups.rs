use super::MagmaSpec;

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Partitions of `e` into non-increasing parts, largest first part first.
fn partitions(e: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(e, e, &mut Vec::new(), &mut out);
    out
}

/// Every abelian group of order `n` up to isomorphism, as products of cyclic
/// groups in invariant-factor form (each modulus divides the next).
///
/// Order 1 yields the empty product.
pub fn abelian_groups_of_order(n: u64) -> Vec<MagmaSpec> {
    assert!(n >= 1, "group order must be positive");
    let factors = factorize(n);
    let mut choices: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, e) in factors {
        let mut next = Vec::new();
        for prefix in &choices {
            for part in partitions(e) {
                // Combine position-wise: the i-th largest invariant factor
                // collects p^{part[i]}.
                let len = prefix.len().max(part.len());
                let mut combined = vec![1u64; len];
                for (i, d) in prefix.iter().enumerate() {
                    combined[i] *= d;
                }
                for (i, &k) in part.iter().enumerate() {
                    combined[i] *= p.pow(k);
                }
                next.push(combined);
            }
        }
        choices = next;
    }
    choices
        .into_iter()
        .map(|mut moduli| {
            moduli.reverse();
            MagmaSpec::AbelianProduct { moduli }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn moduli(n: u64) -> Vec<Vec<u64>> {
        abelian_groups_of_order(n)
            .into_iter()
            .map(|g| match g {
                MagmaSpec::AbelianProduct { moduli } => moduli,
                _ => unreachable!(),
            })
            .collect()
    }

    #[test]
    fn small_orders() {
        assert_eq!(moduli(1), vec![Vec::<u64>::new()]);
        assert_eq!(moduli(4), vec![vec![4], vec![2, 2]]);
        assert_eq!(moduli(12), vec![vec![12], vec![2, 6]]);
        assert_eq!(moduli(7), vec![vec![7]]);
    }

    #[test]
    fn counts_match_partition_products() {
        // Number of groups is the product of p(e) over prime powers p^e.
        assert_eq!(moduli(16).len(), 5);
        assert_eq!(moduli(64).len(), 11);
        assert_eq!(moduli(72).len(), 3 * 2);
        for n in 1..200u64 {
            for m in moduli(n) {
                assert_eq!(m.iter().product::<u64>(), n);
                assert!(m.windows(2).all(|w| w[1] % w[0] == 0), "{m:?}");
                assert!(m.iter().all(|&d| d > 1));
            }
        }
    }
}
