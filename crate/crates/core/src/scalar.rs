//! Scalar abstraction shared by every numeric module.
//!
//! All state and operator types are generic over a real field `T: Real`
//! (implemented for `f32` and `f64`); amplitudes are `Complex<T>`.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real scalar: f32 or f64.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Default
    + Debug
    + Display
    + LowerExp
    + Sum
    + Send
    + Sync
    + 'static
{
    /// Converts an `f64` literal. Every `Real` can represent (a rounding of) any `f64`.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("f64 literal representable")
    }

    #[inline]
    fn from_usize_lossy(v: usize) -> Self {
        Self::from_usize(v).expect("usize representable")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("finite conversion to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Rescales an `f64` tolerance to the precision of `T`: unchanged for `f64`,
/// multiplied by ε_T/ε_f64 otherwise.
#[inline]
pub fn tol<T: Real>(f64_tol: f64) -> T {
    T::lit(f64_tol * (T::epsilon().to_f64_lossy() / f64::EPSILON))
}

/// Complex amplitude over `T`.
pub type Cx<T> = Complex<T>;

#[inline]
pub fn cx<T: Real>(re: f64, im: f64) -> Cx<T> {
    Complex::new(T::lit(re), T::lit(im))
}

/// `cx` pinned to `f64`, for call sites where `T` cannot be inferred.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

#[inline]
pub fn zero<T: Real>() -> Cx<T> {
    Complex::new(T::zero(), T::zero())
}

#[inline]
pub fn one<T: Real>() -> Cx<T> {
    Complex::new(T::one(), T::zero())
}

#[inline]
pub fn imag_unit<T: Real>() -> Cx<T> {
    Complex::new(T::zero(), T::one())
}

/// Neumaier-compensated complex accumulator.
///
/// Merging amplitudes through this keeps the result independent of the
/// summation order down to the last couple of ulps.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum<T: Real> {
    re: T,
    re_c: T,
    im: T,
    im_c: T,
}

#[inline]
fn neumaier<T: Real>(sum: &mut T, comp: &mut T, x: T) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp = *comp + ((*sum - t) + x);
    } else {
        *comp = *comp + ((x - t) + *sum);
    }
    *sum = t;
}

impl<T: Real> CompensatedSum<T> {
    pub fn new() -> Self {
        Self {
            re: T::zero(),
            re_c: T::zero(),
            im: T::zero(),
            im_c: T::zero(),
        }
    }

    #[inline]
    pub fn add(&mut self, z: Cx<T>) {
        neumaier(&mut self.re, &mut self.re_c, z.re);
        neumaier(&mut self.im, &mut self.im_c, z.im);
    }

    #[inline]
    pub fn value(&self) -> Cx<T> {
        Complex::new(self.re + self.re_c, self.im + self.im_c)
    }
}

impl<T: Real> FromIterator<Cx<T>> for CompensatedSum<T> {
    fn from_iter<I: IntoIterator<Item = Cx<T>>>(iter: I) -> Self {
        let mut acc = Self::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

/// Compensated real sum.
pub fn sum_real<T: Real, I: IntoIterator<Item = T>>(iter: I) -> T {
    let (mut s, mut c) = (T::zero(), T::zero());
    for x in iter {
        neumaier(&mut s, &mut c, x);
    }
    s + c
}

/// Euclidean norm of a complex vector.
pub fn vector_norm<T: Real>(v: &[Cx<T>]) -> T {
    sum_real(v.iter().map(|z| z.norm_sqr())).sqrt()
}

/// Max modulus of the entrywise difference.
pub fn max_deviation<T: Real>(a: &[Cx<T>], b: &[Cx<T>]) -> T {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (*x - *y).norm())
        .fold(T::zero(), T::max)
}

/// ‖a − b‖₂ for complex vectors.
pub fn distance<T: Real>(a: &[Cx<T>], b: &[Cx<T>]) -> T {
    assert_eq!(a.len(), b.len());
    sum_real(a.iter().zip(b).map(|(x, y)| (*x - *y).norm_sqr())).sqrt()
}

/// Rotates `candidate` by the global phase that best aligns it with `reference`
/// (the conjugate phase of the overlap ⟨reference|candidate⟩).
pub fn align_global_phase<T: Real>(reference: &[Cx<T>], candidate: &[Cx<T>]) -> Vec<Cx<T>> {
    let overlap: CompensatedSum<T> = reference
        .iter()
        .zip(candidate)
        .map(|(r, c)| r.conj() * *c)
        .collect();
    let overlap = overlap.value();
    let modulus = overlap.norm();
    if modulus == T::zero() {
        return candidate.to_vec();
    }
    let phase = (overlap / modulus).conj();
    candidate.iter().map(|z| *z * phase).collect()
}
