//! Exact eigenvalues of `X_n` and `G_n`, plus the cosine-sum oracle for any
//! circulant graph.
//!
//! Eigenvalues are indexed naturally: entry `j` belongs to the character
//! `b ↦ exp(-2πi·jb/n)` of `Z_n`, so `λ_j = Σ_{s∈S} cos(2π·js/n)`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};
use crate::exactfield::{rat, ComplexRad, RealRad};
use crate::format::round_sig;
use crate::graphs::{CirculantGraph, Family};
use crate::numtheory::{
    crt_combine, euler_phi, factorize, is_prime, legendre_symbol, minus_one_is_square,
    mobius, square_units,
};

/// Eigenvalues `λ_0, ..., λ_{n-1}` of a circulant graph, held exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    n: u64,
    values: Vec<RealRad>,
}

impl Spectrum {
    /// Wraps raw values, checking the structural invariants.
    pub fn new(values: Vec<RealRad>) -> Result<Self> {
        let spec = Self { n: values.len() as u64, values };
        spec.check_invariants()?;
        Ok(spec)
    }

    pub fn of(family: Family, n: u64) -> Result<Self> {
        match family {
            Family::Unitary => unitary_spectrum(n),
            Family::QuadraticUnitary => quadratic_unitary_spectrum(n),
        }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn values(&self) -> &[RealRad] {
        &self.values
    }

    pub fn get(&self, j: usize) -> &RealRad {
        &self.values[j]
    }

    /// `λ_0`, the valency of the graph.
    pub fn degree(&self) -> &RealRad {
        &self.values[0]
    }

    pub fn floats(&self) -> Vec<f64> {
        self.values.iter().map(RealRad::to_f64).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(RealRad::is_integer)
    }

    /// `λ_0` a nonnegative integer, `λ_j = λ_{n-j}`, and `Σ λ_j = 0`.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.values.len();
        if n < 2 {
            return domain("spectrum needs at least two eigenvalues");
        }
        match self.values[0].as_integer() {
            Some(d) if d >= 0.into() => {}
            _ => {
                return Err(Error::Internal(format!(
                    "λ_0 = {} is not a nonnegative integer",
                    self.values[0]
                )))
            }
        }
        for j in 1..n {
            if self.values[j] != self.values[n - j] {
                return Err(Error::Internal(format!("λ_{j} != λ_{}", n - j)));
            }
        }
        let trace: RealRad = self.values.iter().cloned().sum();
        if !trace.is_zero() {
            return Err(Error::Internal(format!("trace is {trace}, expected 0")));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let values: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        let floats: Vec<f64> = self.floats().into_iter().map(round_sig).collect();
        serde_json::json!({ "n": self.n, "values": values, "float": floats })
    }
}

/// `λ_j = Σ_{s∈S} cos(2π·js/n)` in floating point.
pub fn numeric_spectrum(g: &CirculantGraph) -> Vec<f64> {
    let n = g.n();
    (0..n)
        .map(|j| {
            g.connection()
                .iter()
                .map(|&s| (2.0 * PI * ((j * s) % n) as f64 / n as f64).cos())
                .sum()
        })
        .collect()
}

/// Eigenvalues of `X_n` as Ramanujan sums: `μ(c)·φ(n)/φ(c)` with `c = n/gcd(j, n)`.
pub fn unitary_spectrum(n: u64) -> Result<Spectrum> {
    if n < 2 {
        return domain(format!("X_n needs n >= 2, got {n}"));
    }
    let phi_n = euler_phi(n) as i64;
    let values = (0..n)
        .map(|j| {
            let c = n / num_integer::gcd(j, n);
            RealRad::from_integer(mobius(c) as i64 * phi_n / euler_phi(c) as i64)
        })
        .collect();
    Spectrum::new(values)
}

// e^{-mπi/4} for m in 0..8, as exact complex values over Q(√2)
fn eighth_root_conj(m: u64) -> ComplexRad {
    let h: RealRad = RealRad::term(rat(1, 2), 2);
    let z = RealRad::zero();
    let one = RealRad::one();
    let (re, im) = match m % 8 {
        0 => (one, z),
        1 => (h.clone(), -&h),
        2 => (z, -one),
        3 => (-&h, -&h),
        4 => (-one, z),
        5 => (-&h, h.clone()),
        6 => (z, one),
        _ => (h.clone(), h),
    };
    ComplexRad::new(re, im)
}

/// Exact value of `χ_a(Q_{p^k}) = Σ_{b∈Q_{p^k}} exp(-2πi·ab/p^k)`.
pub fn character_sum(p: u64, k: u32, a: u64) -> Result<ComplexRad> {
    if !is_prime(p) || k == 0 {
        return domain(format!("character sum needs a prime power, got {p}^{k}"));
    }
    let m = p.pow(k);
    if a >= m {
        return domain(format!("character index {a} outside Z_{m}"));
    }
    if p == 2 {
        return Ok(match k {
            1 => ComplexRad::real(RealRad::from_integer(if a == 0 { 1 } else { -1 })),
            // exp(-aπi/2)
            2 => eighth_root_conj(2 * a),
            _ => {
                let unit = 1u64 << (k - 3);
                let scale = RealRad::from_integer(unit as i64);
                if a % unit == 0 && (a / unit) % 2 == 1 {
                    // 2^{k-3} exp(-aπi/2^{k-1}), an odd eighth root of unity
                    &eighth_root_conj(a / unit) * &scale
                } else if a % (2 * unit) == 0 {
                    // 2^{k-3} (-i)^{a/2^{k-2}}
                    &eighth_root_conj(2 * (a / (2 * unit))) * &scale
                } else {
                    ComplexRad::zero()
                }
            }
        });
    }
    let lower = p.pow(k - 1);
    if a == 0 {
        return Ok(ComplexRad::real(RealRad::from_integer((lower * (p - 1) / 2) as i64)));
    }
    if a % lower != 0 {
        return Ok(ComplexRad::zero());
    }
    // ½ p^{k-1} [ε√p·(1+i^p)/(1+i) - 1], where (1+i^p)/(1+i) is 1 or -i
    let eps = legendre_symbol((a / lower) as i64, p)? as i64;
    let half = rat(lower as i64, 2);
    let root = RealRad::term(&half * rat(eps, 1), p);
    let re = RealRad::from_rat(-half);
    Ok(if p % 4 == 1 {
        ComplexRad::new(re + root, RealRad::zero())
    } else {
        ComplexRad::new(re, -root)
    })
}

/// Floating-point character sum over an explicitly enumerated `Q_{p^k}`.
pub fn character_sum_bruteforce(p: u64, k: u32, a: u64) -> Result<Complex64> {
    if !is_prime(p) || k == 0 {
        return domain(format!("character sum needs a prime power, got {p}^{k}"));
    }
    let m = p
        .checked_pow(k)
        .filter(|&m| m <= 100_000)
        .ok_or_else(|| Error::Domain(format!("{p}^{k} too large for enumeration")))?;
    if a >= m {
        return domain(format!("character index {a} outside Z_{m}"));
    }
    Ok(square_units(m)
        .into_iter()
        .map(|b| {
            let phase = (a as u128 * b as u128 % m as u128) as f64 / m as f64;
            Complex64::from_polar(1.0, -2.0 * PI * phase)
        })
        .sum())
}

/// [`character_sum_bruteforce`] for every `a` in `Z_{p^k}` at once, indexed by `a`.
pub fn character_sums_bruteforce(p: u64, k: u32) -> Result<Vec<Complex64>> {
    character_sum_bruteforce(p, k, 0)?;
    let m = p.pow(k);
    let squares = square_units(m);
    let roots: Vec<Complex64> = (0..m)
        .map(|r| Complex64::from_polar(1.0, -2.0 * PI * r as f64 / m as f64))
        .collect();
    Ok((0..m)
        .map(|a| squares.iter().map(|&b| roots[(a * b % m) as usize]).sum())
        .collect())
}

/// Eigenvalues of `G_n`, assembled from prime-power character sums.
///
/// The component index of natural index `j` at modulus `m_i` is
/// `j·(n/m_i)^{-1} mod m_i`; equivalently a tuple `(a_i)` lands at the `j`
/// with `j ≡ a_i·(n/m_i) (mod m_i)` for every `i`.
pub fn quadratic_unitary_spectrum(n: u64) -> Result<Spectrum> {
    if n < 2 {
        return domain(format!("G_n needs n >= 2, got {n}"));
    }
    if n == 2 {
        return Spectrum::new(vec![RealRad::one(), RealRad::from_integer(-1)]);
    }
    struct Component {
        modulus: u64,
        cofactor: u64,
        minus_one_square: bool,
        sums: Vec<ComplexRad>,
    }
    let factorization = factorize(n)?;
    let components = factorization
        .factors()
        .iter()
        .map(|&(p, k)| {
            let modulus = p.pow(k);
            let sums = (0..modulus)
                .map(|a| character_sum(p, k, a))
                .collect::<Result<Vec<_>>>()?;
            Ok(Component {
                modulus,
                cofactor: (n / modulus) % modulus,
                minus_one_square: minus_one_is_square(p, k),
                sums,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mixed = components.iter().any(|c| !c.minus_one_square);

    let mut values = vec![RealRad::zero(); n as usize];
    let mut tuple = vec![0u64; components.len()];
    loop {
        let residues: Vec<(u64, u64)> = components
            .iter()
            .zip(&tuple)
            .map(|(c, &a)| (a * c.cofactor % c.modulus, c.modulus))
            .collect();
        let j = crt_combine(&residues)? as usize;

        let mut square_part = ComplexRad::one();
        let mut other_part = ComplexRad::one();
        for (c, &a) in components.iter().zip(&tuple) {
            let chi = &c.sums[a as usize];
            if c.minus_one_square {
                square_part = &square_part * chi;
            } else {
                other_part = &other_part * chi;
            }
        }
        let value = if mixed {
            &square_part * &(&other_part + &other_part.conj())
        } else {
            square_part
        };
        if !value.is_real() {
            return Err(Error::Internal(format!(
                "G_{n} eigenvalue at index {j} has imaginary part {}",
                value.im
            )));
        }
        values[j] = value.re;

        // odometer over the component tuple
        let mut pos = 0;
        loop {
            if pos == tuple.len() {
                return Spectrum::new(values);
            }
            tuple[pos] += 1;
            if tuple[pos] < components[pos].modulus {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}
