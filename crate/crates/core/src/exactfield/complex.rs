use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_complex::Complex64;
use serde::Serialize;

use super::RealRad;

/// `re + i·im` with both parts in a real multi-quadratic field.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct ComplexRad {
    pub re: RealRad,
    pub im: RealRad,
}

impl ComplexRad {
    pub fn new(re: RealRad, im: RealRad) -> Self {
        Self { re, im }
    }

    pub fn real(re: RealRad) -> Self {
        Self { re, im: RealRad::zero() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(RealRad::one())
    }

    pub fn i() -> Self {
        Self::new(RealRad::zero(), RealRad::one())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn norm_sqr(&self) -> RealRad {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for ComplexRad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) + i({})", self.re, self.im)
    }
}

impl fmt::Debug for ComplexRad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexRad({self})")
    }
}

impl Add<&ComplexRad> for &ComplexRad {
    type Output = ComplexRad;
    fn add(self, rhs: &ComplexRad) -> ComplexRad {
        ComplexRad::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Mul<&ComplexRad> for &ComplexRad {
    type Output = ComplexRad;
    fn mul(self, rhs: &ComplexRad) -> ComplexRad {
        ComplexRad::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Mul<&RealRad> for &ComplexRad {
    type Output = ComplexRad;
    fn mul(self, rhs: &RealRad) -> ComplexRad {
        ComplexRad::new(&self.re * rhs, &self.im * rhs)
    }
}

impl Neg for &ComplexRad {
    type Output = ComplexRad;
    fn neg(self) -> ComplexRad {
        ComplexRad::new(-&self.re, -&self.im)
    }
}
