//! Exact integer primitives: Kronecker symbol, discriminant tests, primality,
//! divisors and integer square roots. Everything here works on 64-bit
//! integers and never rounds through floating point.

/// Greatest common divisor of the absolute values.
pub fn gcd(a: i64, b: i64) -> u64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Jacobi symbol `(a/n)` for odd `n > 0`.
fn jacobi(mut a: u64, mut n: u64) -> i32 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut result = 1;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && matches!(n % 8, 3 | 5) {
            result = -result;
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        (a, n) = (n % a, a);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Kronecker symbol `(a/n)`, defined for every pair of integers.
///
/// Conventions: `(a/0)` is 1 when `|a| = 1` and 0 otherwise, `(a/-1)` is the
/// sign of `a` (with `(0/-1) = 1`), `(a/2)` is 0 for even `a` and follows
/// `a mod 8` otherwise. The symbol is completely multiplicative in
/// nonzero `n`.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a.unsigned_abs() == 1 { 1 } else { 0 };
    }
    let mut result = if n < 0 && a < 0 { -1 } else { 1 };
    let mut m = n.unsigned_abs();
    let tz = m.trailing_zeros();
    if tz > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if tz % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
        m >>= tz;
    }
    if m == 1 {
        return result;
    }
    let residue = (a as i128).rem_euclid(m as i128) as u64;
    result * jacobi(residue, m)
}

/// Floor of the square root, exact for all `u64`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    // the float estimate can be off by one in either direction near 2^64
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

pub fn is_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = isqrt(n as u64);
    r * r == n as u64
}

pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    factorize(n).iter().all(|&(_, e)| e == 1)
}

/// True iff `d` is the discriminant of a quadratic field.
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// True iff `d` is congruent to 0 or 1 mod 4.
pub fn is_discriminant(d: i64) -> bool {
    matches!(d.rem_euclid(4), 0 | 1)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve prime bases are a proven
/// witness set for every `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5;
    let mut step = 2;
    while p * p <= n {
        push(p, &mut n);
        p += step;
        step = 6 - step;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Expand a factorization into the sorted list of all positive divisors.
pub fn divisors_from_factorization(factors: &[(u64, u32)]) -> Vec<u64> {
    let mut divs = vec![1u64];
    for &(p, e) in factors {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// All positive divisors of `n >= 1`, increasing.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors of 0 are undefined");
    divisors_from_factorization(&factorize(n))
}

/// Primes up to `limit` inclusive.
pub fn primes_up_to(limit: usize) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Legendre symbol by Euler's criterion, odd prime p.
    fn legendre_euler(a: i64, p: u64) -> i32 {
        let r = pow_mod(a.rem_euclid(p as i64) as u64, (p - 1) / 2, p);
        match r {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(7, 1), 1);
        assert_eq!(kronecker(-3, 5), -1);
        assert_eq!(kronecker(-11, 15), 1);
        assert_eq!(kronecker(2, 0), 0);
        assert_eq!(kronecker(-1, 0), 1);
        assert_eq!(kronecker(5, -1), 1);
        assert_eq!(kronecker(-5, -1), -1);
        assert_eq!(kronecker(4, 2), 0);
        assert_eq!(kronecker(7, 2), 1);
        assert_eq!(kronecker(5, 2), -1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-3, -2), 1);
    }

    #[test]
    fn kronecker_extreme_arguments() {
        assert_eq!(kronecker(i64::MIN, 3), kronecker(i64::MIN % 3, 3));
        assert_eq!(kronecker(3, i64::MIN), -1);
        assert_eq!(kronecker(4, i64::MIN), 0);
        assert_eq!(kronecker(1, i64::MIN), 1);
        assert_eq!(kronecker(-1, i64::MIN), -1);
    }

    #[test]
    fn kronecker_matches_euler_on_primes() {
        for p in primes_up_to(200).into_iter().skip(1) {
            for a in -300..300 {
                assert_eq!(kronecker(a, p as i64), legendre_euler(a, p), "a={a} p={p}");
            }
        }
    }

    #[test]
    fn kronecker_multiplicative_in_n() {
        for a in [-20i64, -11, -8, -4, -3, -1, 0, 1, 2, 5, 12, 17] {
            // (a/0) breaks multiplicativity for a = ±1, so n = 0 is excluded
            for m in (-120i64..=120).filter(|&m| m != 0) {
                for n in (-120i64..=120).filter(|&n| n != 0) {
                    assert_eq!(
                        kronecker(a, m * n),
                        kronecker(a, m) * kronecker(a, n),
                        "a={a} m={m} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn quadratic_reciprocity() {
        for m in (1..1000i64).step_by(2) {
            for n in (1..1000i64).step_by(2) {
                if gcd(m, n) != 1 {
                    continue;
                }
                let sign = if ((m - 1) / 2) * ((n - 1) / 2) % 2 == 0 {
                    1
                } else {
                    -1
                };
                assert_eq!(kronecker(m, n) * kronecker(n, m), sign, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn fundamental_discriminant_examples() {
        assert!(is_fundamental_discriminant(-3));
        assert!(is_fundamental_discriminant(-11));
        assert!(is_fundamental_discriminant(12));
        assert!(!is_fundamental_discriminant(9));
        assert!(is_fundamental_discriminant(-4));
        assert!(is_fundamental_discriminant(-8));
        assert!(!is_fundamental_discriminant(-12));
        assert!(!is_fundamental_discriminant(1));
        assert!(!is_fundamental_discriminant(0));
        assert!(!is_fundamental_discriminant(-16));
    }

    #[test]
    fn fundamental_discriminant_brute_force() {
        // independent check: d is fundamental iff d is a discriminant and no
        // f > 1 has d/f^2 a discriminant
        for d in -10_000i64..=10_000 {
            let brute = d != 0 && d != 1 && is_discriminant(d) && {
                let mut ok = true;
                let mut f = 2i64;
                while f * f <= d.abs() {
                    if d % (f * f) == 0 && is_discriminant(d / (f * f)) {
                        ok = false;
                        break;
                    }
                    f += 1;
                }
                ok
            };
            assert_eq!(is_fundamental_discriminant(d), brute, "d={d}");
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime(571));
        assert!(!is_prime(1));
        assert!(is_prime(40_500_059));
        assert!(is_prime(2));
        assert!(!is_prime(561));
        assert!(!is_prime(3_215_031_751));
        assert!(is_prime(18_446_744_073_709_551_557));
        let sieve = primes_up_to(20_000);
        for n in 0..20_000u64 {
            assert_eq!(is_prime(n), sieve.binary_search(&n).is_ok(), "n={n}");
        }
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(128), vec![1, 2, 4, 8, 16, 32, 64, 128]);
        for n in 1..2000u64 {
            let brute: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
            assert_eq!(divisors(n), brute);
        }
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(0), 0);
        assert_eq!(isqrt(33), 5);
        assert_eq!(isqrt(297), 17);
        assert_eq!(isqrt(u64::MAX), 4_294_967_295);
        assert_eq!(isqrt((1 << 62) - 1), (1 << 31) - 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100_000))]
        #[test]
        fn isqrt_brackets(n in any::<u64>()) {
            let r = isqrt(n) as u128;
            prop_assert!(r * r <= n as u128);
            prop_assert!((r + 1) * (r + 1) > n as u128);
        }
    }

    proptest! {
        #[test]
        fn kronecker_is_multiplicative(a in -10_000i64..10_000, m in -10_000i64..10_000, n in -10_000i64..10_000) {
            prop_assume!(m != 0 && n != 0);
            prop_assert_eq!(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n));
        }
    }
}
