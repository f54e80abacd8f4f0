use num_bigint::BigInt;
use num_traits::Zero;

/// Coefficient ring for the hot loops: checked i128 first, BigInt on overflow.
pub(crate) trait Coef: Clone + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_big(x: &BigInt) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Coef for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        i128::try_from(x).ok()
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coef for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// `acc += k * src` over the common prefix.
pub(crate) fn axpy<C: Coef>(acc: &mut [C], k: &C, src: &[C]) -> Option<()> {
    for (a, s) in acc.iter_mut().zip(src) {
        if !s.is_zero() {
            *a = a.add(&k.mul(s)?)?;
        }
    }
    Some(())
}

/// Multiplies by (1 - q^k) in place.
pub(crate) fn mul_one_minus<C: Coef>(v: &mut [C], k: usize) -> Option<()> {
    for i in (k..v.len()).rev() {
        if !v[i - k].is_zero() {
            v[i] = v[i].sub(&v[i - k])?;
        }
    }
    Some(())
}
