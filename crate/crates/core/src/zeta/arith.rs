//! Primes, Möbius function and smallest-prime-factor tables.

/// Primes ≤ n, ascending (sieve of Eratosthenes).
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// μ(n) by trial division. Panics on n = 0.
pub fn mobius(n: u64) -> i8 {
    assert!(n >= 1, "μ is defined on positive integers");
    let mut n = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Smallest prime factor of every k ≤ n (entries 0 and 1 are 0).
pub fn smallest_prime_factors(n: usize) -> Vec<u32> {
    let mut spf = vec![0u32; n + 1];
    for i in 2..=n {
        if spf[i] != 0 {
            continue;
        }
        let mut j = i;
        while j <= n {
            if spf[j] == 0 {
                spf[j] = i as u32;
            }
            j += i;
        }
    }
    spf
}

/// μ(k) for all k ≤ n from a linear pass over the spf table.
pub fn mobius_table(n: usize) -> Vec<i8> {
    let spf = smallest_prime_factors(n);
    let mut mu = vec![0i8; n + 1];
    if n >= 1 {
        mu[1] = 1;
    }
    for k in 2..=n {
        let p = spf[k] as usize;
        let q = k / p;
        mu[k] = if q % p == 0 { 0 } else { -mu[q] };
    }
    mu
}

/// Prime-power factorisation via an spf table: (p, exponent) pairs.
pub fn factorize(mut k: usize, spf: &[u32]) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    while k > 1 {
        let p = spf[k] as usize;
        let mut e = 0;
        while k % p == 0 {
            k /= p;
            e += 1;
        }
        out.push((p as u64, e));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_prime_trial(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn small_sieves() {
        assert_eq!(primes_up_to(10), vec![2, 3, 5, 7]);
        assert_eq!(primes_up_to(2), vec![2]);
        assert!(primes_up_to(1).is_empty());
    }

    #[test]
    fn sieve_matches_trial_division() {
        let sieved = primes_up_to(1000);
        let trial: Vec<u64> = (1..=1000).filter(|&n| is_prime_trial(n)).collect();
        assert_eq!(sieved, trial);
        assert_eq!(sieved.len(), 168);
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(6), 1);
        let table = mobius_table(2000);
        for n in 1..=2000u64 {
            assert_eq!(table[n as usize], mobius(n), "n={n}");
        }
    }

    #[test]
    fn mobius_sums_over_divisors() {
        let mu = mobius_table(10_000);
        let mut acc = vec![0i32; 10_001];
        for d in 1..=10_000 {
            let mut m = d;
            while m <= 10_000 {
                acc[m] += mu[d] as i32;
                m += d;
            }
        }
        assert_eq!(acc[1], 1);
        assert!(acc[2..].iter().all(|&v| v == 0));
    }

    #[test]
    fn factorization_round_trips() {
        let spf = smallest_prime_factors(5000);
        for k in 2..=5000usize {
            let prod: u64 = factorize(k, &spf).iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, k as u64);
        }
    }
}
