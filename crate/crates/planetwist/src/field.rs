//! Context-style field abstraction.
//!
//! A `Field` value is a handle describing the coefficient field (a tower
//! level, a prime field, an extension of one); elements are plain data that
//! only make sense relative to their context. The polynomial kernels in
//! `upoly`/`bipoly`/`zerodim` are generic over this trait, so the same code
//! runs over Q-towers in characteristic zero and over finite fields.

use crate::error::Result;

pub trait Field: Clone + Send + Sync {
    type Elem: Clone + PartialEq + std::fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse. Fails on zero; over a tower it also fails on
    /// a zero divisor, which proves a reducible step and is surfaced as a
    /// hard error rather than a panic.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Splits 1/b as n * d^{-1} where multiplying by n and dividing by d are
    /// both cheap. The default is (1/b, 1); number-field towers override
    /// this to keep repeated exact divisions in their integer lattice.
    fn inv_split(&self, b: &Self::Elem) -> Result<(Self::Elem, Self::Elem)> {
        Ok((self.inv(b)?, self.one()))
    }

    /// Image of a signed integer under the canonical ring map.
    fn from_i64(&self, n: i64) -> Self::Elem;

    /// Characteristic of the field, `None` for characteristic zero.
    fn characteristic(&self) -> Option<u64>;

    fn char_divides(&self, n: u64) -> bool {
        match self.characteristic() {
            None => n == 0,
            Some(p) => n % p == 0,
        }
    }

    /// Distinct sample points for evaluation/interpolation schemes, indexed
    /// from zero. Returns `None` once the field is exhausted (finite case).
    fn sample_point(&self, index: u64) -> Option<Self::Elem>;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}
