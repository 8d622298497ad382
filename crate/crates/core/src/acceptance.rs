//! End-to-end reproduction of the classification results, one check per
//! criterion, shared by the `acceptance` test target and `qwalk selftest`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::exactfield::{Rat, RealRad};
use crate::graphs::Family;
use crate::numtheory::prime_power;
use crate::spectra::{character_sum, character_sums_bruteforce, numeric_spectrum, Spectrum};
use crate::statetransfer::{
    certificate_is_valid, classify_quadratic, classify_unitary, is_periodic, quadratic_is_integral,
    Analysis, Certificate, Obstruction,
};
use crate::walk::{verify_periodicity, Walk, PGST_EVIDENCE_THRESHOLD};

pub const SPECTRUM_TOL: f64 = 1e-9;
pub const CHARACTER_TOL: f64 = 1e-9;
pub const FR_RESIDUAL_TOL: f64 = 1e-8;
pub const PERIOD_TOL: f64 = 1e-8;
pub const PST_TOL: f64 = 1e-10;
pub const NO_PST_MARGIN: f64 = 1e-6;
pub const UNITARITY_TOL: f64 = 1e-10;
pub const GROUP_LAW_TOL: f64 = 1e-8;
pub const SYMMETRY_TOL: f64 = 1e-10;
pub const PROPERTY_SEED: u64 = 0x0071_7761_6c6b;
pub const PROPERTY_CASES: usize = 200;

/// Largest `n` in the shared enumeration.
pub const ENUMERATION_MAX: u64 = 200;

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "spectrum oracle equivalence"),
    (2, "character-sum oracle"),
    (3, "X_n PGFR classification"),
    (4, "X_n FR = PGFR"),
    (5, "G_n integrality and periodicity"),
    (6, "G_n PGFR classification"),
    (7, "G_n FR classification"),
    (8, "PST spot checks"),
    (9, "PGST evidence"),
    (10, "property suite"),
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{mark}] {:>2} {}: {}", self.id, self.title, self.detail)
    }
}

type Check = std::result::Result<String, String>;

pub fn run(id: u8) -> Option<Outcome> {
    let (_, title) = CRITERIA.iter().find(|(i, _)| *i == id)?;
    let check = match id {
        1 => spectrum_oracle(),
        2 => character_sum_oracle(),
        3 => unitary_pgfr(),
        4 => unitary_fr(),
        5 => quadratic_periodicity(),
        6 => quadratic_pgfr(),
        7 => quadratic_fr(),
        8 => pst_spot_checks(),
        9 => pgst_evidence(),
        10 => property_suite(),
        _ => unreachable!(),
    };
    let (passed, detail) = match check {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Some(Outcome { id, title, passed, detail })
}

pub fn run_all() -> Vec<Outcome> {
    CRITERIA.iter().filter_map(|&(id, _)| run(id)).collect()
}

/// Analyses for `2 ≤ n ≤ ENUMERATION_MAX`, computed once per process.
pub fn enumeration(family: Family) -> &'static [Analysis] {
    static X: OnceLock<Vec<Analysis>> = OnceLock::new();
    static G: OnceLock<Vec<Analysis>> = OnceLock::new();
    let cell = match family {
        Family::Unitary => &X,
        Family::QuadraticUnitary => &G,
    };
    cell.get_or_init(|| {
        (2..=ENUMERATION_MAX)
            .into_par_iter()
            .map(|n| Analysis::run(family, n).expect("n >= 2"))
            .collect()
    })
}

fn analysis(family: Family, n: u64) -> &'static Analysis {
    &enumeration(family)[(n - 2) as usize]
}

fn verdict(failures: Vec<String>, ok: String) -> Check {
    if failures.is_empty() {
        Ok(ok)
    } else {
        Err(failures.join("; "))
    }
}

fn spectrum_oracle() -> Check {
    let failures: Vec<String> = (2..=200u64)
        .into_par_iter()
        .flat_map_iter(|n| {
            [Family::Unitary, Family::QuadraticUnitary]
                .into_iter()
                .filter_map(move |f| {
                    let exact = match Spectrum::of(f, n) {
                        Ok(s) => s.floats(),
                        Err(e) => return Some(format!("{f}_{n}: {e}")),
                    };
                    let numeric = numeric_spectrum(&f.graph(n).expect("n >= 2"));
                    let err = exact
                        .iter()
                        .zip(&numeric)
                        .map(|(x, y)| (x - y).abs())
                        .fold(0.0, f64::max);
                    (err > SPECTRUM_TOL).then(|| format!("{f}_{n}: max error {err:e}"))
                })
        })
        .collect();
    verdict(failures, format!("400 spectra, n <= 200, within {SPECTRUM_TOL:e}"))
}

fn character_sum_oracle() -> Check {
    let moduli: Vec<(u64, u32)> = (2..=2000).filter_map(prime_power).collect();
    let checked: usize = moduli.iter().map(|&(p, k)| p.pow(k) as usize).sum();
    let failures: Vec<String> = moduli
        .par_iter()
        .filter_map(|&(p, k)| {
            let brute = match character_sums_bruteforce(p, k) {
                Ok(b) => b,
                Err(e) => return Some(format!("{p}^{k}: {e}")),
            };
            let worst = brute
                .iter()
                .enumerate()
                .map(|(a, b)| match character_sum(p, k, a as u64) {
                    Ok(c) => (c.to_complex64() - b).norm(),
                    Err(_) => f64::INFINITY,
                })
                .fold(0.0, f64::max);
            (worst > CHARACTER_TOL).then(|| format!("{p}^{k}: max error {worst:e}"))
        })
        .collect();
    verdict(
        failures,
        format!("{} prime powers, {checked} sums, within {CHARACTER_TOL:e}", moduli.len()),
    )
}

fn certificate_failures(family: Family, ns: &[u64]) -> Vec<String> {
    ns.iter()
        .filter_map(|&n| {
            let a = analysis(family, n);
            match &a.pgfr.certificate {
                Some(c) if !a.pgfr.holds && certificate_is_valid(&a.spectrum, c) => None,
                _ => Some(format!("{family}_{n}: no valid certificate")),
            }
        })
        .collect()
}

fn unitary_pgfr() -> Check {
    let mut failures: Vec<String> = enumeration(Family::Unitary)
        .iter()
        .filter(|a| {
            let n = a.record.n;
            let expected = n % 2 == 0 && classify_unitary(n).pgfr;
            a.pgfr.holds != expected
        })
        .map(|a| format!("X_{}: decided {}", a.record.n, a.pgfr.holds))
        .collect();
    failures.extend(certificate_failures(Family::Unitary, &[12, 20, 28, 16, 24, 48]));
    verdict(failures, "n <= 200 agree; certificates for 12, 20, 28, 16, 24, 48 verify".into())
}

fn unitary_fr() -> Check {
    let mut failures: Vec<String> = enumeration(Family::Unitary)
        .iter()
        .filter(|a| a.record.n % 2 == 0 && a.fr.holds != a.pgfr.holds)
        .map(|a| format!("X_{}: fr {} vs pgfr {}", a.record.n, a.fr.holds, a.pgfr.holds))
        .collect();
    let mut worst = 0.0f64;
    for p in [3u64, 5, 7, 11, 13] {
        let a = analysis(Family::Unitary, 2 * p);
        let expected = RealRad::from_rat(Rat::new(1.into(), p.into()));
        if a.fr.witness_t_over_2pi.as_ref() != Some(&expected) {
            failures.push(format!("X_{}: witness {:?}", 2 * p, a.fr.witness_t_over_2pi));
            continue;
        }
        let r = Walk::new(&a.spectrum)
            .fr_report(0, p as usize, 2.0 * PI / p as f64)
            .expect("vertices in range");
        worst = worst.max(r.residual);
        if r.residual >= FR_RESIDUAL_TOL || r.beta.norm() == 0.0 {
            failures.push(format!("X_{}: residual {:e}, |beta| {}", 2 * p, r.residual, r.beta.norm()));
        }
    }
    verdict(
        failures,
        format!("even n <= 200 agree; witnesses 2pi/p, max residual {worst:e}"),
    )
}

fn quadratic_periodicity() -> Check {
    let spectra: Vec<(u64, Result<Spectrum, String>)> = (2..=500u64)
        .into_par_iter()
        .map(|n| (n, Spectrum::of(Family::QuadraticUnitary, n).map_err(|e| e.to_string())))
        .collect();
    let mut failures = Vec::new();
    let mut verified = 0;
    for (n, spec) in &spectra {
        let spec = match spec {
            Ok(s) => s,
            Err(e) => {
                failures.push(format!("G_{n}: {e}"));
                continue;
            }
        };
        if is_periodic(spec) != quadratic_is_integral(*n) {
            failures.push(format!("G_{n}: periodic {}", is_periodic(spec)));
        }
        if *n <= 100 && is_periodic(spec) {
            match verify_periodicity(spec, PERIOD_TOL) {
                Some(r) if r.passes && r.off_diagonal <= PERIOD_TOL => verified += 1,
                other => failures.push(format!("G_{n}: periodicity check {other:?}")),
            }
        }
    }
    verdict(
        failures,
        format!("n <= 500 agree; {verified} periodic n <= 100 verified at 2pi/g"),
    )
}

/// `Σ ℓ_r(λ_r - λ_0)` and the odd-index sum.
fn relation_of(spec: &Spectrum, ell: &Certificate) -> (RealRad, BigInt) {
    let relation = ell
        .iter()
        .map(|(&r, c)| (spec.get(r) - spec.degree()).scale(&Rat::from_integer(c.clone())))
        .sum();
    let odd = ell.iter().filter(|(r, _)| *r % 2 == 1).map(|(_, c)| c.clone()).sum();
    (relation, odd)
}

fn quadratic_pgfr() -> Check {
    let mut failures: Vec<String> = enumeration(Family::QuadraticUnitary)
        .iter()
        .filter(|a| a.record.n % 2 == 0 && a.pgfr.holds != classify_quadratic(a.record.n).pgfr)
        .map(|a| format!("G_{}: decided {}", a.record.n, a.pgfr.holds))
        .collect();
    failures.extend(certificate_failures(Family::QuadraticUnitary, &[16]));
    let g16 = analysis(Family::QuadraticUnitary, 16);
    let reference: Certificate = [(3, BigInt::from(1)), (4, BigInt::from(-1))].into();
    if !certificate_is_valid(&g16.spectrum, &reference) {
        failures.push("G_16: reference certificate on {3, 4} invalid".into());
    }
    let mut shown = String::new();
    if let Some(cert) = &g16.pgfr.certificate {
        shown = format!("{cert:?}");
        let sign = relation_of(&g16.spectrum, cert).1;
        let mut diff: Certificate = cert.iter().map(|(&r, c)| (r, c * &sign)).collect();
        for (r, c) in &reference {
            *diff.entry(*r).or_insert_with(BigInt::zero) -= c;
        }
        let (relation, odd) = relation_of(&g16.spectrum, &diff);
        if !relation.is_zero() || !odd.is_zero() {
            failures.push("G_16: certificate not lattice-equivalent to {3: 1, 4: -1}".into());
        }
    }
    verdict(
        failures,
        format!("even n <= 200 agree; G_16 certificate {shown} equivalent to {{3: 1, 4: -1}}"),
    )
}

fn quadratic_fr() -> Check {
    let mut failures: Vec<String> = enumeration(Family::QuadraticUnitary)
        .iter()
        .filter(|a| a.record.n % 2 == 0 && a.fr.holds != classify_quadratic(a.record.n).fr)
        .map(|a| format!("G_{}: decided {}", a.record.n, a.fr.holds))
        .collect();
    let g14 = analysis(Family::QuadraticUnitary, 14);
    let r = Walk::new(&g14.spectrum)
        .fr_report(0, 7, 2.0 * PI / 7.0)
        .expect("vertices in range");
    if r.residual >= FR_RESIDUAL_TOL || r.beta.norm() == 0.0 {
        failures.push(format!("G_14: residual {:e}", r.residual));
    }
    let expected = Obstruction {
        first: (3, 1),
        second: (2, 0),
        ratio: "1/2 + 1/2*sqrt(5)".parse().expect("valid literal"),
    };
    let g10 = analysis(Family::QuadraticUnitary, 10);
    if g10.fr.obstruction.as_ref() != Some(&expected) {
        failures.push(format!("G_10: obstruction {:?}", g10.fr.obstruction));
    }
    verdict(
        failures,
        format!(
            "even n <= 200 agree; G_14 residual {:e} at 2pi/7; G_10 ratio {}",
            r.residual, expected.ratio
        ),
    )
}

fn pst_spot_checks() -> Check {
    let mut failures = Vec::new();
    for family in [Family::Unitary, Family::QuadraticUnitary] {
        let walk = Walk::new(&analysis(family, 4).spectrum);
        let h = walk.amplitude(0, 2, PI / 2.0).expect("vertices in range");
        if (h.norm() - 1.0).abs() > PST_TOL {
            failures.push(format!("{family}_4: |H(pi/2)_02| = {}", h.norm()));
        }
    }
    let mut best = Vec::new();
    for n in [6u64, 14] {
        let walk = Walk::new(&analysis(Family::QuadraticUnitary, n).spectrum);
        let steps = 10_000;
        let max = (1..=steps)
            .into_par_iter()
            .map(|k| {
                let column = walk.column(0, 50.0 * k as f64 / steps as f64).expect("vertex 0");
                column[1..].iter().map(|z| z.norm()).fold(0.0, f64::max)
            })
            .reduce(|| 0.0, f64::max);
        if max > 1.0 - NO_PST_MARGIN {
            failures.push(format!("G_{n}: fidelity {max} on grid"));
        }
        best.push(format!("G_{n} max {max:.6}"));
    }
    verdict(failures, format!("PST on X_4 and G_4; {}", best.join(", ")))
}

fn pgst_evidence() -> Check {
    let mut failures = Vec::new();
    let g8 = analysis(Family::QuadraticUnitary, 8);
    let sweep = Walk::new(&g8.spectrum)
        .sweep_max_fidelity(0, 4, 500.0, 1_000_000)
        .expect("valid sweep");
    if !sweep.meets(PGST_EVIDENCE_THRESHOLD) {
        failures.push(format!("G_8: sweep fidelity {}", sweep.fidelity));
    }
    failures.extend(certificate_failures(Family::QuadraticUnitary, &[16, 32]));
    verdict(
        failures,
        format!(
            "G_8 fidelity {:.6} at t = {:.4} (evidence only); G_16, G_32 PGFR refuted exactly",
            sweep.fidelity, sweep.t
        ),
    )
}

fn property_suite() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(PROPERTY_SEED);
    let mut failures = Vec::new();
    for case in 0..PROPERTY_CASES {
        let family = if rng.random_bool(0.5) { Family::Unitary } else { Family::QuadraticUnitary };
        let n: u64 = rng.random_range(2..=50);
        let t = 100.0 - rng.random_range(0.0..100.0);
        let s = 100.0 - rng.random_range(0.0..100.0);
        let a = rng.random_range(0..n as usize);
        let b = rng.random_range(0..n as usize);
        let tag = format!("case {case} ({family}_{n}, t = {t})");

        let spec = match Spectrum::of(family, n) {
            Ok(spec) => spec,
            Err(e) => {
                failures.push(format!("{tag}: {e}"));
                continue;
            }
        };
        failures.extend(spectrum_invariant_failures(&spec, family).map(|e| format!("{tag}: {e}")));

        let walk = Walk::new(&spec);
        let col_t = walk.column(a, t).expect("vertex in range");
        let mass: f64 = col_t.iter().map(|z| z.norm_sqr()).sum();
        if (mass - 1.0).abs() > UNITARITY_TOL {
            failures.push(format!("{tag}: column mass {mass}"));
        }
        let hab = walk.amplitude(a, b, t).expect("in range");
        let hba = walk.amplitude(b, a, t).expect("in range");
        if (hab - hba).norm() > SYMMETRY_TOL {
            failures.push(format!("{tag}: asymmetric"));
        }
        let col_s = walk.column(a, s).expect("vertex in range");
        let col_t_b = walk.column(b, t).expect("vertex in range");
        // H(s)_{av} = H(s)_{va} by symmetry
        let composed: num_complex::Complex64 = col_s.iter().zip(&col_t_b).map(|(x, y)| x * y).sum();
        let direct = walk.amplitude(a, b, s + t).expect("in range");
        if (composed - direct).norm() > GROUP_LAW_TOL {
            failures.push(format!("{tag}: group law off by {:e}", (composed - direct).norm()));
        }
    }
    let mut hierarchy = 0;
    for family in [Family::Unitary, Family::QuadraticUnitary] {
        for a in enumeration(family) {
            hierarchy += 1;
            if (a.fr.holds && !a.pgfr.holds) || !a.record.hierarchy_holds() {
                failures.push(format!("{family}_{}: hierarchy broken", a.record.n));
            }
        }
    }
    verdict(
        failures,
        format!("{PROPERTY_CASES} random instances (seed {PROPERTY_SEED:#x}); hierarchy on {hierarchy} graphs"),
    )
}

fn spectrum_invariant_failures(spec: &Spectrum, family: Family) -> Option<String> {
    let n = spec.n() as usize;
    let degree = family.graph(spec.n()).expect("n >= 2").degree() as i64;
    if spec.degree() != &RealRad::from_integer(degree) {
        return Some(format!("lambda_0 = {} but degree {degree}", spec.degree()));
    }
    if (1..n).any(|j| spec.get(j) != spec.get(n - j)) {
        return Some("not palindromic".into());
    }
    let trace: RealRad = spec.values().iter().cloned().sum();
    if !trace.is_zero() {
        return Some(format!("trace {trace}"));
    }
    None
}
