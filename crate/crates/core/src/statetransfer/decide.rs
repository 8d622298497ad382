//! Decision procedures that read periodicity, FR and PGFR off an exact
//! spectrum.
//!
//! Indices are natural (`λ_j` belongs to the character `j` of `Z_n`) and
//! every parity condition refers to that index. Verdicts concern the
//! antipodal pair `(a, a + n/2)`; by vertex transitivity they do not depend
//! on `a`.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::lattice::{integer_kernel, RelationLattice};
use crate::exactfield::{Rat, RealRad};
use crate::spectra::Spectrum;

/// Every eigenvalue is a rational integer.
pub fn is_periodic(spec: &Spectrum) -> bool {
    spec.is_integral()
}

/// Two same-parity index pairs whose eigenvalue differences have an
/// irrational ratio.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    pub first: (usize, usize),
    pub second: (usize, usize),
    /// `(λ_{x1} - λ_{y1}) / (λ_{x2} - λ_{y2})`.
    pub ratio: RealRad,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrVerdict {
    pub holds: bool,
    /// Minimal FR time divided by `2π`.
    pub witness_t_over_2pi: Option<RealRad>,
    pub obstruction: Option<Obstruction>,
    pub note: String,
}

impl FrVerdict {
    pub fn witness_t(&self) -> Option<f64> {
        self.witness_t_over_2pi
            .as_ref()
            .map(|w| 2.0 * std::f64::consts::PI * w.to_f64())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "holds": self.holds,
            "witness_t_over_2pi": self.witness_t_over_2pi.as_ref().map(ToString::to_string),
            "obstruction": self.obstruction.as_ref().map(|o| serde_json::json!({
                "first": [o.first.0, o.first.1],
                "second": [o.second.0, o.second.1],
                "ratio": o.ratio.to_string(),
            })),
            "note": self.note,
        })
    }
}

/// Distinct values of the spectrum with the ordered pairs `(x, y)`, `x > y`,
/// `x ≡ y (mod 2)`, that realise each distinct nonzero difference first.
fn same_parity_differences(spec: &Spectrum) -> Vec<((usize, usize), RealRad)> {
    let mut ids: HashMap<&RealRad, usize> = HashMap::new();
    let class: Vec<usize> = spec
        .values()
        .iter()
        .map(|v| {
            let next = ids.len();
            *ids.entry(v).or_insert(next)
        })
        .collect();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut out = Vec::new();
    let n = spec.n() as usize;
    for x in 0..n {
        for y in (x % 2..x).step_by(2) {
            if class[x] == class[y] || !seen.insert((class[x], class[y])) {
                continue;
            }
            out.push(((x, y), spec.get(x) - spec.get(y)));
        }
    }
    out
}

/// Decides FR between antipodal vertices: `n` even and a `t > 0` with
/// `t(λ_x - λ_y)/2π ∈ Z` for every same-parity pair, such that
/// `t(λ_0 - λ_1)/2π ∉ Z` (otherwise `H(t)` is scalar and `β = 0`).
pub fn decide_fr(spec: &Spectrum) -> FrVerdict {
    if spec.n() % 2 == 1 {
        return FrVerdict {
            holds: false,
            witness_t_over_2pi: None,
            obstruction: None,
            note: "n odd: no antipodal vertex".into(),
        };
    }
    let diffs = same_parity_differences(spec);
    let cross = spec.get(0) - spec.get(1);
    let Some(((gx, gy), gamma)) = diffs.first().cloned() else {
        // any t works; a half period of λ_0 - λ_1 maximises |β|
        return match cross.abs().recip() {
            Some(r) => FrVerdict {
                holds: true,
                witness_t_over_2pi: Some(r.scale(&Rat::new(1.into(), 2.into()))),
                obstruction: None,
                note: "all same-parity differences vanish".into(),
            },
            None => FrVerdict {
                holds: false,
                witness_t_over_2pi: None,
                obstruction: None,
                note: "constant spectrum: H(t) is scalar".into(),
            },
        };
    };

    let mut ratios: Vec<Rat> = Vec::with_capacity(diffs.len());
    for ((x, y), d) in &diffs {
        match d.rational_ratio(&gamma).expect("gamma nonzero") {
            Some(q) => ratios.push(q),
            None => {
                let ratio = d * &gamma.recip().expect("gamma nonzero");
                return FrVerdict {
                    holds: false,
                    witness_t_over_2pi: None,
                    obstruction: Some(Obstruction {
                        first: (*x, *y),
                        second: (gx, gy),
                        ratio,
                    }),
                    note: "same-parity differences are not commensurable".into(),
                };
            }
        }
    }
    // smallest t/2π = L / (G |γ|) with L = lcm of denominators and G = gcd
    // of the numerators brought to that common denominator
    let lcm = ratios.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
    let g = ratios
        .iter()
        .fold(BigInt::zero(), |g, q| g.gcd(&(q.numer() * (&lcm / q.denom()))));
    let scale = Rat::new(lcm, g);
    let witness = gamma.abs().recip().expect("gamma nonzero").scale(&scale);
    // admissible times are the multiples of the witness, so β vanishes at
    // all of them as soon as it vanishes at the witness
    if (&cross * &witness).is_integer() {
        return FrVerdict {
            holds: false,
            witness_t_over_2pi: None,
            obstruction: None,
            note: "H(t) is scalar at every admissible time".into(),
        };
    }
    FrVerdict {
        holds: true,
        witness_t_over_2pi: Some(witness),
        obstruction: None,
        note: "same-parity differences are commensurable".into(),
    }
}

/// Exact check that `w·(λ_x - λ_y)` is an integer for all same-parity pairs
/// and `w·(λ_0 - λ_1)` is not.
pub fn fr_witness_is_valid(spec: &Spectrum, t_over_2pi: &RealRad) -> bool {
    spec.n() % 2 == 0
        && same_parity_differences(spec)
            .iter()
            .all(|(_, d)| (d * t_over_2pi).is_integer())
        && !((spec.get(0) - spec.get(1)) * t_over_2pi.clone()).is_integer()
}

/// Integer vector `ℓ` indexed by `1..n`, stored sparsely.
pub type Certificate = BTreeMap<usize, BigInt>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PgfrVerdict {
    pub holds: bool,
    /// `ℓ` with `Σ ℓ_r(λ_r - λ_0) = 0` and `Σ_{r odd} ℓ_r = 1`, when PGFR fails.
    pub certificate: Option<Certificate>,
    /// Generator of the image of `ℓ ↦ Σ_{r odd} ℓ_r` on the relation lattice.
    pub odd_sum_gcd: BigInt,
    pub note: String,
}

impl PgfrVerdict {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "holds": self.holds,
            "certificate": self.certificate.as_ref().map(|c| {
                c.iter()
                    .map(|(r, v)| (r.to_string(), serde_json::Value::String(v.to_string())))
                    .collect::<serde_json::Map<_, _>>()
            }),
            "odd_sum_gcd": self.odd_sum_gcd.to_string(),
            "note": self.note,
        })
    }
}

/// Coefficient rows of `λ_r - λ_0` for `r = 1..n-1` over the sorted
/// radicand basis of the spectrum.
pub fn difference_matrix(spec: &Spectrum) -> Vec<Vec<Rat>> {
    let lambda0 = spec.degree();
    let diffs: Vec<RealRad> = spec.values()[1..].iter().map(|v| v - lambda0).collect();
    let mut radicands: Vec<u64> = diffs.iter().flat_map(|d| d.radicands().collect::<Vec<_>>()).collect();
    radicands.sort_unstable();
    radicands.dedup();
    diffs
        .iter()
        .map(|d| radicands.iter().map(|&r| d.coefficient(r)).collect())
        .collect()
}

/// The lattice of all integer `ℓ_1, ..., ℓ_{n-1}` with `Σ ℓ_r(λ_r - λ_0) = 0`.
/// Position `i` of a basis vector holds `ℓ_{i+1}`.
pub fn relation_lattice(spec: &Spectrum) -> RelationLattice {
    integer_kernel(&difference_matrix(spec))
}

fn odd_weight(position: usize) -> i64 {
    // position i holds index r = i + 1
    if (position + 1) % 2 == 1 {
        1
    } else {
        0
    }
}

/// Exact check of a PGFR refutation.
pub fn certificate_is_valid(spec: &Spectrum, ell: &Certificate) -> bool {
    let n = spec.n() as usize;
    if ell.keys().any(|&r| r == 0 || r >= n) {
        return false;
    }
    let relation: RealRad = ell
        .iter()
        .map(|(&r, c)| (spec.get(r) - spec.degree()).scale(&Rat::from_integer(c.clone())))
        .sum();
    let odd: BigInt = ell.iter().filter(|(r, _)| *r % 2 == 1).map(|(_, c)| c.clone()).sum();
    relation.is_zero() && odd.abs().is_one()
}

/// Decides PGFR between antipodal vertices: `n` even and no integer relation
/// among `λ_r - λ_0` has odd-index sum `±1`.
pub fn decide_pgfr(spec: &Spectrum) -> PgfrVerdict {
    if spec.n() % 2 == 1 {
        return PgfrVerdict {
            holds: false,
            certificate: None,
            odd_sum_gcd: BigInt::zero(),
            note: "n odd: no antipodal vertex".into(),
        };
    }
    let lattice = relation_lattice(spec);
    let g = lattice.image_gcd(odd_weight);
    if !g.is_one() {
        return PgfrVerdict {
            holds: true,
            certificate: None,
            odd_sum_gcd: g,
            note: "every relation has odd-index sum in a proper ideal".into(),
        };
    }
    let certificate = small_support_certificate(spec).unwrap_or_else(|| {
        let v = lattice
            .combination_hitting_gcd(odd_weight)
            .expect("gcd is one");
        sparse(&v, |i| i + 1)
    });
    assert!(
        certificate_is_valid(spec, &certificate),
        "PGFR certificate failed exact verification"
    );
    PgfrVerdict {
        holds: false,
        certificate: Some(certificate),
        odd_sum_gcd: g,
        note: "relation with odd-index sum 1".into(),
    }
}

fn sparse(v: &[BigInt], index: impl Fn(usize) -> usize) -> Certificate {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (index(i), c.clone()))
        .collect()
}

const MAX_SEARCH_SUPPORT: usize = 3;
const MAX_SEARCH_COMBINATIONS: usize = 50_000;

/// Looks for a certificate supported on at most three indices, preferring
/// smaller supports and then smaller indices. Indices with equal eigenvalue
/// and parity are interchangeable, so only the smallest of each is tried.
fn small_support_certificate(spec: &Spectrum) -> Option<Certificate> {
    let n = spec.n() as usize;
    let mut reps: Vec<usize> = Vec::new();
    let mut seen: HashSet<(&RealRad, usize)> = HashSet::new();
    for r in 1..n {
        if seen.insert((spec.get(r), r % 2)) {
            reps.push(r);
        }
    }
    let rows: Vec<RealRad> = reps.iter().map(|&r| spec.get(r) - spec.degree()).collect();

    for size in 1..=MAX_SEARCH_SUPPORT.min(reps.len()) {
        if combinations_count(reps.len(), size) > MAX_SEARCH_COMBINATIONS {
            break;
        }
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            if combo.iter().any(|&c| reps[c] % 2 == 1) {
                if let Some(cert) = certificate_on(&combo, &reps, &rows) {
                    return Some(cert);
                }
            }
            if !next_combination(&mut combo, reps.len()) {
                break;
            }
        }
    }
    None
}

fn certificate_on(combo: &[usize], reps: &[usize], rows: &[RealRad]) -> Option<Certificate> {
    let chosen: Vec<&RealRad> = combo.iter().map(|&c| &rows[c]).collect();
    let mut radicands: Vec<u64> = chosen.iter().flat_map(|d| d.radicands().collect::<Vec<_>>()).collect();
    radicands.sort_unstable();
    radicands.dedup();
    let matrix: Vec<Vec<Rat>> = chosen
        .iter()
        .map(|d| radicands.iter().map(|&r| d.coefficient(r)).collect())
        .collect();
    let lattice = integer_kernel(&matrix);
    let weight = |i: usize| (reps[combo[i]] % 2) as i64;
    if !lattice.image_gcd(weight).is_one() {
        return None;
    }
    let v = lattice.combination_hitting_gcd(weight)?;
    Some(sparse(&v, |i| reps[combo[i]]))
}

fn combinations_count(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn next_combination(combo: &mut [usize], n: usize) -> bool {
    let k = combo.len();
    for i in (0..k).rev() {
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::{quadratic_unitary_spectrum, unitary_spectrum};

    fn cert(entries: &[(usize, i64)]) -> Certificate {
        entries.iter().map(|&(r, c)| (r, BigInt::from(c))).collect()
    }

    #[test]
    fn periodicity() {
        assert!(is_periodic(&unitary_spectrum(12).unwrap()));
        assert!(is_periodic(&quadratic_unitary_spectrum(49).unwrap()));
        assert!(!is_periodic(&quadratic_unitary_spectrum(16).unwrap()));
    }

    #[test]
    fn fr_examples() {
        let v = decide_fr(&unitary_spectrum(10).unwrap());
        assert!(v.holds);
        assert_eq!(v.witness_t_over_2pi.unwrap().to_string(), "1/5");

        let v = decide_fr(&quadratic_unitary_spectrum(14).unwrap());
        assert!(v.holds);
        assert_eq!(v.witness_t_over_2pi.unwrap().to_string(), "1/7");

        let v = decide_fr(&unitary_spectrum(7).unwrap());
        assert!(!v.holds);
        assert!(v.note.contains("odd"));

        let g10 = quadratic_unitary_spectrum(10).unwrap();
        let v = decide_fr(&g10);
        assert!(!v.holds);
        let o = v.obstruction.unwrap();
        assert_eq!(o.ratio, "1/2 + 1/2*sqrt(5)".parse().unwrap());
        let d1 = g10.get(o.first.0) - g10.get(o.first.1);
        let d2 = g10.get(o.second.0) - g10.get(o.second.1);
        assert_eq!(d1.rational_ratio(&d2).unwrap(), None);
        assert_eq!(&o.ratio * &d2, d1);
    }

    #[test]
    fn fr_witness_minimal_on_c4() {
        // C_4: same-parity differences {±4, 0}, so t/2π = 1/4
        let v = decide_fr(&unitary_spectrum(4).unwrap());
        assert_eq!(v.witness_t_over_2pi.unwrap().to_string(), "1/4");
    }

    #[test]
    fn fr_witness_validity() {
        let spec = unitary_spectrum(10).unwrap();
        assert!(fr_witness_is_valid(&spec, &"1/5".parse().unwrap()));
        assert!(!fr_witness_is_valid(&spec, &"1/10".parse().unwrap()));
        // H(2π) = I on an integral graph
        assert!(!fr_witness_is_valid(&spec, &RealRad::one()));
    }

    #[test]
    fn fr_needs_nonzero_beta() {
        // X_8: λ = 4, 0, 0, 0, -4, 0, 0, 0; the only admissible times give H(t) = ±I
        let v = decide_fr(&unitary_spectrum(8).unwrap());
        assert!(!v.holds && v.obstruction.is_none());
        let v = decide_fr(&quadratic_unitary_spectrum(18).unwrap());
        assert!(!v.holds);
        let v = decide_fr(&unitary_spectrum(2).unwrap());
        assert_eq!(v.witness_t_over_2pi.unwrap().to_string(), "1/4");
    }

    #[test]
    fn pgfr_examples() {
        let v = decide_pgfr(&unitary_spectrum(10).unwrap());
        assert!(v.holds);
        assert!((&v.odd_sum_gcd % BigInt::from(5)).is_zero());

        let x12 = unitary_spectrum(12).unwrap();
        let v = decide_pgfr(&x12);
        assert!(!v.holds);
        assert!(certificate_is_valid(&x12, v.certificate.as_ref().unwrap()));
        // the three-term relation with λ_1 = 0, λ_2 = 2, λ_8 = -2
        assert!(certificate_is_valid(&x12, &cert(&[(1, 1), (2, 1), (8, -1)])));

        let g16 = quadratic_unitary_spectrum(16).unwrap();
        let v = decide_pgfr(&g16);
        assert!(!v.holds);
        assert!(certificate_is_valid(&g16, &cert(&[(3, 1), (4, -1)])));

        assert!(decide_pgfr(&quadratic_unitary_spectrum(8).unwrap()).holds);
        assert!(!decide_pgfr(&quadratic_unitary_spectrum(9).unwrap()).holds);
    }

    #[test]
    fn certificates_prefer_small_support() {
        let v = decide_pgfr(&quadratic_unitary_spectrum(16).unwrap());
        assert_eq!(v.certificate.unwrap(), cert(&[(1, 1), (4, -1)]));
        let v = decide_pgfr(&unitary_spectrum(12).unwrap());
        assert_eq!(v.certificate.unwrap(), cert(&[(1, 1), (2, -2)]));
    }

    #[test]
    fn invalid_certificates_rejected() {
        let x12 = unitary_spectrum(12).unwrap();
        assert!(!certificate_is_valid(&x12, &cert(&[(1, 1)])));
        assert!(!certificate_is_valid(&x12, &cert(&[(0, 1)])));
        assert!(!certificate_is_valid(&x12, &cert(&[(2, 1), (4, -1)])));
    }

    #[test]
    fn combination_enumeration() {
        let mut c = vec![0, 1];
        let mut all = vec![c.clone()];
        while next_combination(&mut c, 4) {
            all.push(c.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(combinations_count(4, 2), 6);
        assert_eq!(combinations_count(50, 3), 19600);
    }
}
