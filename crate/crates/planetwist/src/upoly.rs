//! Univariate polynomial arithmetic over a generic field context.
//!
//! Coefficients are stored ascending with no trailing zeros; the zero
//! polynomial is the empty vector. Resultants go through a Sylvester matrix
//! and fraction-free (Bareiss) elimination, with the convention
//! `Res(f, g) = lc(f)^{deg g} * prod g(alpha)` over the roots `alpha` of `f`.

use crate::error::{Error, Result};
use crate::field::Field;

pub struct Poly<C: Field> {
    coeffs: Vec<C::Elem>,
}

impl<C: Field> Clone for Poly<C> {
    fn clone(&self) -> Self {
        Poly { coeffs: self.coeffs.clone() }
    }
}

impl<C: Field> PartialEq for Poly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<C: Field> std::fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl<C: Field> Poly<C> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(ctx: &C, coeffs: Vec<C::Elem>) -> Self {
        let mut p = Poly { coeffs };
        p.trim(ctx);
        p
    }

    pub fn constant(ctx: &C, c: C::Elem) -> Self {
        Self::from_coeffs(ctx, vec![c])
    }

    pub fn monomial(ctx: &C, c: C::Elem, deg: usize) -> Self {
        let mut coeffs = vec![ctx.zero(); deg + 1];
        coeffs[deg] = c;
        Self::from_coeffs(ctx, coeffs)
    }

    /// x - a
    pub fn linear_root(ctx: &C, a: &C::Elem) -> Self {
        Self::from_coeffs(ctx, vec![ctx.neg(a), ctx.one()])
    }

    fn trim(&mut self, ctx: &C) {
        while matches!(self.coeffs.last(), Some(c) if ctx.is_zero(c)) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeffs(&self) -> &[C::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, ctx: &C, i: usize) -> C::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ctx.zero())
    }

    pub fn leading(&self) -> Option<&C::Elem> {
        self.coeffs.last()
    }

    pub fn add(&self, ctx: &C, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(ctx.add(&self.coeff(ctx, i), &other.coeff(ctx, i)));
        }
        Self::from_coeffs(ctx, out)
    }

    pub fn sub(&self, ctx: &C, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(ctx.sub(&self.coeff(ctx, i), &other.coeff(ctx, i)));
        }
        Self::from_coeffs(ctx, out)
    }

    pub fn neg(&self, ctx: &C) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| ctx.neg(c)).collect() }
    }

    pub fn scale(&self, ctx: &C, s: &C::Elem) -> Self {
        let coeffs = self.coeffs.iter().map(|c| ctx.mul(c, s)).collect();
        Self::from_coeffs(ctx, coeffs)
    }

    pub fn mul(&self, ctx: &C, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ctx.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if ctx.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(&out[i + j], &ctx.mul(a, b));
            }
        }
        Self::from_coeffs(ctx, out)
    }

    /// Polynomial division: (quotient, remainder).
    pub fn divrem(&self, ctx: &C, div: &Self) -> Result<(Self, Self)> {
        if div.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = div.degree().unwrap();
        let lc_inv = ctx.inv(div.leading().unwrap())?;
        let mut rem = self.clone();
        let mut quo = vec![ctx.zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = ctx.mul(rem.leading().unwrap(), &lc_inv);
            let shift = rd - dd;
            quo[shift] = factor.clone();
            // rem -= factor * x^shift * div
            let mut coeffs = rem.coeffs;
            for (j, c) in div.coeffs.iter().enumerate() {
                let t = ctx.mul(&factor, c);
                coeffs[shift + j] = ctx.sub(&coeffs[shift + j], &t);
            }
            rem = Self::from_coeffs(ctx, coeffs);
        }
        Ok((Self::from_coeffs(ctx, quo), rem))
    }

    pub fn rem(&self, ctx: &C, div: &Self) -> Result<Self> {
        Ok(self.divrem(ctx, div)?.1)
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn exact_div(&self, ctx: &C, div: &Self) -> Result<Self> {
        let (q, r) = self.divrem(ctx, div)?;
        if !r.is_zero() {
            return Err(Error::Serialization("inexact polynomial division".into()));
        }
        Ok(q)
    }

    pub fn monic(&self, ctx: &C) -> Result<Self> {
        match self.leading() {
            None => Ok(Self::zero()),
            Some(lc) => {
                let inv = ctx.inv(lc)?;
                Ok(self.scale(ctx, &inv))
            }
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, ctx: &C, other: &Self) -> Result<Self> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(ctx, &b)?;
            a = b;
            b = r;
        }
        a.monic(ctx)
    }

    /// Extended gcd: returns (g, s, t) with s*self + t*other = g, g monic.
    pub fn ext_gcd(&self, ctx: &C, other: &Self) -> Result<(Self, Self, Self)> {
        let mut r0 = self.clone();
        let mut r1 = other.clone();
        let mut s0 = Self::constant(ctx, ctx.one());
        let mut s1 = Self::zero();
        let mut t0 = Self::zero();
        let mut t1 = Self::constant(ctx, ctx.one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(ctx, &r1)?;
            let s = s0.sub(ctx, &q.mul(ctx, &s1));
            let t = t0.sub(ctx, &q.mul(ctx, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
            t0 = t1;
            t1 = t;
        }
        if r0.is_zero() {
            return Ok((Self::zero(), s0, t0));
        }
        let lc_inv = ctx.inv(r0.leading().unwrap())?;
        Ok((
            r0.scale(ctx, &lc_inv),
            s0.scale(ctx, &lc_inv),
            t0.scale(ctx, &lc_inv),
        ))
    }

    pub fn derivative(&self, ctx: &C) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| ctx.mul(c, &ctx.from_i64(i as i64)))
            .collect();
        Self::from_coeffs(ctx, coeffs)
    }

    pub fn eval(&self, ctx: &C, x: &C::Elem) -> C::Elem {
        let mut acc = ctx.zero();
        for c in self.coeffs.iter().rev() {
            acc = ctx.add(&ctx.mul(&acc, x), c);
        }
        acc
    }

    /// Applies `f` to every coefficient (e.g. a Galois automorphism or a
    /// reduction map); `f` may change the coefficient field.
    pub fn map_coeffs<D: Field>(
        &self,
        target: &D,
        f: impl Fn(&C::Elem) -> Result<D::Elem>,
    ) -> Result<Poly<D>> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(f(c)?);
        }
        Ok(Poly::from_coeffs(target, out))
    }
}

/// Lagrange interpolation through distinct sample points.
pub fn interpolate<C: Field>(ctx: &C, points: &[(C::Elem, C::Elem)]) -> Result<Poly<C>> {
    let mut acc: Poly<C> = Poly::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        if ctx.is_zero(yi) {
            continue;
        }
        let mut basis = Poly::constant(ctx, ctx.one());
        let mut denom = ctx.one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(ctx, &Poly::linear_root(ctx, xj));
            denom = ctx.mul(&denom, &ctx.sub(xi, xj));
        }
        let w = ctx.div(yi, &denom)?;
        acc = acc.add(ctx, &basis.scale(ctx, &w));
    }
    Ok(acc)
}

/// Sylvester resultant of two univariate polynomials over a field.
///
/// Convention: rows of `f` first, so `Res(x - a, x - b) = a - b` and
/// `Res(f, g) = lc(f)^{deg g} * prod_{f(alpha)=0} g(alpha)`.
pub fn resultant<C: Field>(ctx: &C, f: &Poly<C>, g: &Poly<C>) -> Result<C::Elem> {
    if f.is_zero() || g.is_zero() {
        return Ok(ctx.zero());
    }
    let n = f.degree().unwrap();
    let m = g.degree().unwrap();
    if n == 0 {
        return Ok(ctx.pow(&f.coeffs[0], m as u64));
    }
    if m == 0 {
        return Ok(ctx.pow(&g.coeffs[0], n as u64));
    }
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    for i in 0..m {
        let mut row = vec![ctx.zero(); size];
        for (j, c) in f.coeffs.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![ctx.zero(); size];
        for (j, c) in g.coeffs.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(&FieldEntries(ctx.clone()), rows)
}

/// Ring of matrix entries admitting exact division, for Bareiss
/// elimination. Division always targets the previous pivot, shared by a
/// whole elimination step, so the divisor is prepared once (for field
/// entries that caches the inverse, saving hundreds of inversions on big
/// towers).
pub trait DetRing {
    type E: Clone;
    type Divisor;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn prepare_divisor(&self, b: &Self::E) -> Result<Self::Divisor>;
    fn div_prepared(&self, a: &Self::E, d: &Self::Divisor) -> Result<Self::E>;
}

pub struct FieldEntries<C: Field>(pub C);

impl<C: Field> DetRing for FieldEntries<C> {
    type E = C::Elem;
    /// (n, 1/d) with 1/pivot = n/d: multiply by n, then by the cheap 1/d.
    type Divisor = (C::Elem, C::Elem);
    fn zero(&self) -> C::Elem {
        self.0.zero()
    }
    fn one(&self) -> C::Elem {
        self.0.one()
    }
    fn is_zero(&self, a: &C::Elem) -> bool {
        self.0.is_zero(a)
    }
    fn mul(&self, a: &C::Elem, b: &C::Elem) -> C::Elem {
        self.0.mul(a, b)
    }
    fn sub(&self, a: &C::Elem, b: &C::Elem) -> C::Elem {
        self.0.sub(a, b)
    }
    fn prepare_divisor(&self, b: &C::Elem) -> Result<(C::Elem, C::Elem)> {
        let (n, d) = self.0.inv_split(b)?;
        Ok((n, self.0.inv(&d)?))
    }
    fn div_prepared(&self, a: &C::Elem, (n, d_inv): &(C::Elem, C::Elem)) -> Result<C::Elem> {
        Ok(self.0.mul(&self.0.mul(a, n), d_inv))
    }
}

/// Entries that are themselves polynomials over a field (used for
/// resultants with respect to one variable of a bivariate system).
pub struct PolyEntries<C: Field>(pub C);

impl<C: Field> DetRing for PolyEntries<C> {
    type E = Poly<C>;
    type Divisor = Poly<C>;
    fn zero(&self) -> Poly<C> {
        Poly::zero()
    }
    fn one(&self) -> Poly<C> {
        Poly::constant(&self.0, self.0.one())
    }
    fn is_zero(&self, a: &Poly<C>) -> bool {
        a.is_zero()
    }
    fn mul(&self, a: &Poly<C>, b: &Poly<C>) -> Poly<C> {
        a.mul(&self.0, b)
    }
    fn sub(&self, a: &Poly<C>, b: &Poly<C>) -> Poly<C> {
        a.sub(&self.0, b)
    }
    fn prepare_divisor(&self, b: &Poly<C>) -> Result<Poly<C>> {
        Ok(b.clone())
    }
    fn div_prepared(&self, a: &Poly<C>, d: &Poly<C>) -> Result<Poly<C>> {
        a.exact_div(&self.0, d)
    }
}

/// Fraction-free Gaussian elimination (Bareiss). All divisions are exact in
/// the entry ring, which keeps intermediate entries as genuine minors and
/// avoids the coefficient blowup of naive expansion.
pub fn bareiss_det<R: DetRing>(ring: &R, mut m: Vec<Vec<R::E>>) -> Result<R::E> {
    let n = m.len();
    if n == 0 {
        return Ok(ring.one());
    }
    let mut sign_flip = false;
    let mut prev_pivot = ring.prepare_divisor(&ring.one())?;
    for k in 0..n - 1 {
        if ring.is_zero(&m[k][k]) {
            let pivot_row = (k + 1..n).find(|&i| !ring.is_zero(&m[i][k]));
            match pivot_row {
                Some(i) => {
                    m.swap(k, i);
                    sign_flip = !sign_flip;
                }
                None => return Ok(ring.zero()),
            }
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ring.sub(
                    &ring.mul(&m[i][j], &pivot),
                    &ring.mul(&m[i][k], &m[k][j]),
                );
                m[i][j] = ring.div_prepared(&num, &prev_pivot)?;
            }
            m[i][k] = ring.zero();
        }
        prev_pivot = ring.prepare_divisor(&pivot)?;
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        Ok(ring.sub(&ring.zero(), &det))
    } else {
        Ok(det)
    }
}
