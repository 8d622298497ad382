//! Closed-form classification of `X_n` and `G_n` by vertex count.

use serde::Serialize;

use crate::graphs::Family;
use crate::numtheory::{factorize, is_prime, prime_power};

/// The five state-transfer phenomena for one graph, with the rule that
/// produced each answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationRecord {
    pub n: u64,
    pub family: Family,
    pub periodic: bool,
    pub pst: bool,
    pub pgst: bool,
    pub fr: bool,
    pub pgfr: bool,
    pub source: Sources,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sources {
    pub periodic: &'static str,
    pub pst: &'static str,
    pub pgst: &'static str,
    pub fr: &'static str,
    pub pgfr: &'static str,
}

impl ClassificationRecord {
    /// `pst ⇒ pgst`, `pst ⇒ fr`, `fr ⇒ pgfr`, `pgst ⇒ pgfr`.
    pub fn hierarchy_holds(&self) -> bool {
        (!self.pst || self.pgst)
            && (!self.pst || self.fr)
            && (!self.fr || self.pgfr)
            && (!self.pgst || self.pgfr)
    }
}

fn is_twice_prime(n: u64) -> bool {
    n % 2 == 0 && is_prime(n / 2)
}

fn odd_prime_power_3_mod_4(n: u64) -> bool {
    matches!(prime_power(n), Some((p, _)) if p % 4 == 3)
}

/// `n ∈ {2, 4, p^s, 2p^s}` with `p ≡ 3 (mod 4)`.
pub fn quadratic_is_integral(n: u64) -> bool {
    n == 2
        || n == 4
        || odd_prime_power_3_mod_4(n)
        || (n % 2 == 0 && n / 2 > 1 && odd_prime_power_3_mod_4(n / 2))
}

pub fn classify_unitary(n: u64) -> ClassificationRecord {
    let small = n == 2 || n == 4;
    let fr = n == 2 || is_twice_prime(n);
    ClassificationRecord {
        n,
        family: Family::Unitary,
        periodic: true,
        pst: small,
        pgst: small,
        fr,
        pgfr: fr,
        source: Sources {
            periodic: "integral spectrum (Ramanujan sums)",
            pst: "n = 2 or n = 4",
            pgst: "periodic graph: PGST iff PST, so n = 2 or n = 4",
            fr: "FR iff PGFR",
            pgfr: "n = 2 or n = 2p, p prime",
        },
    }
}

pub fn classify_quadratic(n: u64) -> ClassificationRecord {
    let fr = n == 2
        || n == 4
        || (n % 2 == 0 && is_prime(n / 2) && (n / 2) % 4 == 3);
    ClassificationRecord {
        n,
        family: Family::QuadraticUnitary,
        periodic: quadratic_is_integral(n),
        pst: n == 2 || n == 4,
        pgst: matches!(n, 2 | 4 | 8),
        fr,
        pgfr: n == 2 || n == 8 || is_twice_prime(n),
        source: Sources {
            periodic: "integral iff n in {2, 4, p^s, 2p^s}, p = 3 mod 4",
            pst: "n = 2 or n = 4",
            pgst: "n in {2, 4, 8}",
            fr: "n in {2, 4, 2p}, p prime, p = 3 mod 4",
            pgfr: "n in {2, 8, 2p}, p prime",
        },
    }
}

pub fn classify(family: Family, n: u64) -> ClassificationRecord {
    match family {
        Family::Unitary => classify_unitary(n),
        Family::QuadraticUnitary => classify_quadratic(n),
    }
}

/// PGFR is ruled out outright when `2pq | n` for distinct odd primes `p, q`:
/// every connection element of `X_n` and `G_n` is coprime to `n`.
pub fn two_odd_primes_obstruct_pgfr(n: u64) -> bool {
    n % 2 == 0
        && factorize(n)
            .map(|f| f.primes().filter(|p| p % 2 == 1).count() >= 2)
            .unwrap_or(false)
}
