//! Bivariate polynomials over a field context, viewed as polynomials in y
//! with coefficients in K[x].
//!
//! Provides the content/primitive-part gcd and the resultant with respect
//! to y. In characteristic zero the resultant is computed exactly by
//! evaluation and Lagrange interpolation (the Sylvester entries are
//! specialized at rational points and eliminated per point); over a finite
//! field the Sylvester determinant is taken directly with polynomial
//! entries under fraction-free elimination.

use crate::error::Result;
use crate::field::Field;
use crate::upoly::{bareiss_det, interpolate, FieldEntries, Poly, PolyEntries};

pub struct BiPoly<C: Field> {
    /// Coefficient of y^j, as a polynomial in x.
    ys: Vec<Poly<C>>,
}

impl<C: Field> Clone for BiPoly<C> {
    fn clone(&self) -> Self {
        BiPoly { ys: self.ys.clone() }
    }
}

impl<C: Field> PartialEq for BiPoly<C> {
    fn eq(&self, other: &Self) -> bool {
        self.ys == other.ys
    }
}

impl<C: Field> std::fmt::Debug for BiPoly<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "BiPoly{:?}", self.ys)
    }
}

impl<C: Field> BiPoly<C> {
    pub fn zero() -> Self {
        BiPoly { ys: Vec::new() }
    }

    pub fn from_y_coeffs(ys: Vec<Poly<C>>) -> Self {
        let mut p = BiPoly { ys };
        p.trim();
        p
    }

    pub fn from_terms(ctx: &C, terms: &[(usize, usize, C::Elem)]) -> Self {
        let max_y = terms.iter().map(|t| t.1).max().unwrap_or(0);
        let mut ys: Vec<Vec<C::Elem>> = vec![Vec::new(); max_y + 1];
        for (xd, yd, c) in terms {
            if ys[*yd].len() <= *xd {
                ys[*yd].resize(*xd + 1, ctx.zero());
            }
            ys[*yd][*xd] = ctx.add(&ys[*yd][*xd], c);
        }
        BiPoly::from_y_coeffs(
            ys.into_iter()
                .map(|coeffs| Poly::from_coeffs(ctx, coeffs))
                .collect(),
        )
    }

    fn trim(&mut self) {
        while matches!(self.ys.last(), Some(p) if p.is_zero()) {
            self.ys.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ys.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        match self.deg_y() {
            None => true,
            Some(0) => self.ys[0].is_constant(),
            Some(_) => false,
        }
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.ys.len().checked_sub(1)
    }

    pub fn deg_x(&self) -> usize {
        self.ys.iter().map(Poly::deg_or_zero).max().unwrap_or(0)
    }

    pub fn y_coeffs(&self) -> &[Poly<C>] {
        &self.ys
    }

    pub fn leading_y(&self) -> Option<&Poly<C>> {
        self.ys.last()
    }

    pub fn sub(&self, ctx: &C, other: &Self) -> Self {
        let n = self.ys.len().max(other.ys.len());
        let mut ys = Vec::with_capacity(n);
        let zero = Poly::zero();
        for i in 0..n {
            let a = self.ys.get(i).unwrap_or(&zero);
            let b = other.ys.get(i).unwrap_or(&zero);
            ys.push(a.sub(ctx, b));
        }
        BiPoly::from_y_coeffs(ys)
    }

    #[cfg_attr(not(test), allow(dead_code))]
    pub fn mul(&self, ctx: &C, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero();
        }
        let mut ys = vec![Poly::zero(); self.ys.len() + other.ys.len() - 1];
        for (i, a) in self.ys.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.ys.iter().enumerate() {
                ys[i + j] = ys[i + j].add(ctx, &a.mul(ctx, b));
            }
        }
        BiPoly::from_y_coeffs(ys)
    }

    pub fn scale_x(&self, ctx: &C, s: &Poly<C>) -> Self {
        BiPoly::from_y_coeffs(self.ys.iter().map(|c| c.mul(ctx, s)).collect())
    }

    /// Specializes x to a field element, leaving a univariate in y.
    pub fn eval_x(&self, ctx: &C, a: &C::Elem) -> Poly<C> {
        Poly::from_coeffs(ctx, self.ys.iter().map(|c| c.eval(ctx, a)).collect())
    }

    /// Content: the monic gcd in K[x] of the y-coefficients.
    pub fn content(&self, ctx: &C) -> Result<Poly<C>> {
        let mut acc = Poly::zero();
        for c in &self.ys {
            acc = acc.gcd(ctx, c)?;
            if acc.degree() == Some(0) {
                break;
            }
        }
        Ok(acc)
    }

    pub fn primitive_part(&self, ctx: &C) -> Result<Self> {
        if self.is_zero() {
            return Ok(BiPoly::zero());
        }
        let content = self.content(ctx)?;
        let mut ys = Vec::with_capacity(self.ys.len());
        for c in &self.ys {
            ys.push(c.exact_div(ctx, &content)?);
        }
        Ok(BiPoly::from_y_coeffs(ys))
    }

    /// Exact division by a bivariate divisor (used after gcd extraction).
    pub fn exact_div(&self, ctx: &C, div: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(BiPoly::zero());
        }
        let dd = div.deg_y().expect("nonzero divisor");
        let lc = div.leading_y().unwrap();
        let mut rem = self.clone();
        let mut quo = vec![Poly::zero(); self.ys.len().saturating_sub(dd)];
        while let Some(rd) = rem.deg_y() {
            if rd < dd || rem.is_zero() {
                break;
            }
            let factor = rem.leading_y().unwrap().exact_div(ctx, lc)?;
            let shift = rd - dd;
            quo[shift] = factor.clone();
            let mut ys = rem.ys;
            for (j, c) in div.ys.iter().enumerate() {
                let t = factor.mul(ctx, c);
                ys[shift + j] = ys[shift + j].sub(ctx, &t);
            }
            rem = BiPoly::from_y_coeffs(ys);
        }
        if !rem.is_zero() {
            return Err(crate::error::Error::Serialization(
                "inexact bivariate division".into(),
            ));
        }
        Ok(BiPoly::from_y_coeffs(quo))
    }
}

/// Pseudo-remainder of f by g with respect to y (deg_y g >= 1).
fn pseudo_rem<C: Field>(ctx: &C, f: &BiPoly<C>, g: &BiPoly<C>) -> BiPoly<C> {
    let dg = g.deg_y().expect("nonzero divisor");
    let lc_g = g.leading_y().unwrap().clone();
    let mut r = f.clone();
    while let Some(dr) = r.deg_y() {
        if dr < dg || r.is_zero() {
            break;
        }
        let lead = r.leading_y().unwrap().clone();
        // r <- lc_g * r - lead * y^{dr-dg} * g
        let mut shifted = vec![Poly::zero(); dr - dg];
        shifted.extend(g.ys.iter().cloned());
        let shifted = BiPoly::from_y_coeffs(shifted);
        r = r.scale_x(ctx, &lc_g).sub(ctx, &shifted.scale_x(ctx, &lead));
    }
    r
}

/// Bivariate gcd via contents and a primitive pseudo-remainder sequence.
/// The result is primitive in x with monic leading coefficient, times the
/// gcd of the contents.
pub fn bi_gcd<C: Field>(ctx: &C, f: &BiPoly<C>, g: &BiPoly<C>) -> Result<BiPoly<C>> {
    if f.is_zero() {
        return normalize(ctx, g.clone());
    }
    if g.is_zero() {
        return normalize(ctx, f.clone());
    }
    let cf = f.content(ctx)?;
    let cg = g.content(ctx)?;
    let c = cf.gcd(ctx, &cg)?;
    // A pure-x polynomial only shares its content.
    if f.deg_y() == Some(0) || g.deg_y() == Some(0) {
        return Ok(BiPoly::from_y_coeffs(vec![c]));
    }
    let mut a = f.primitive_part(ctx)?;
    let mut b = g.primitive_part(ctx)?;
    if a.deg_y() < b.deg_y() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        if b.deg_y() == Some(0) {
            // primitive with deg_y 0 is a unit: coprime primitive parts
            return Ok(BiPoly::from_y_coeffs(vec![c]));
        }
        let r = pseudo_rem(ctx, &a, &b);
        a = b;
        b = if r.is_zero() { BiPoly::zero() } else { r.primitive_part(ctx)? };
    }
    let pp = a.primitive_part(ctx)?;
    normalize(ctx, pp.scale_x(ctx, &c))
}

fn normalize<C: Field>(ctx: &C, p: BiPoly<C>) -> Result<BiPoly<C>> {
    if p.is_zero() {
        return Ok(p);
    }
    let lc = p.leading_y().unwrap().leading().unwrap().clone();
    let inv = ctx.inv(&lc)?;
    Ok(BiPoly::from_y_coeffs(
        p.ys.iter().map(|c| c.scale(ctx, &inv)).collect(),
    ))
}

/// Resultant of f and g with respect to y: an element of K[x], identically
/// zero iff the two share a factor of positive y-degree. Requires
/// deg_y >= 1 on both sides.
pub fn resultant_y<C: Field>(ctx: &C, f: &BiPoly<C>, g: &BiPoly<C>) -> Result<Poly<C>> {
    let n = f.deg_y().expect("nonzero f");
    let m = g.deg_y().expect("nonzero g");
    assert!(n >= 1 && m >= 1, "resultant_y needs positive y-degrees");
    let bound = m * f.deg_x() + n * g.deg_x();
    if ctx.characteristic().is_none() {
        // Evaluation-interpolation: specialize the Sylvester entries at
        // bound+1 sample points and eliminate per point. The determinant is
        // a polynomial of degree <= bound in x, so this reconstructs it
        // exactly.
        let mut points = Vec::with_capacity(bound + 1);
        for i in 0..=bound as u64 {
            let a = ctx
                .sample_point(i)
                .expect("characteristic zero has unlimited sample points");
            let fa: Vec<C::Elem> = f.ys.iter().map(|c| c.eval(ctx, &a)).collect();
            let ga: Vec<C::Elem> = g.ys.iter().map(|c| c.eval(ctx, &a)).collect();
            let det = sylvester_det_entries(ctx, &fa, &ga)?;
            points.push((a, det));
        }
        return interpolate(ctx, &points);
    }
    // Finite field: direct Sylvester determinant with polynomial entries.
    let size = n + m;
    let ring = PolyEntries(ctx.clone());
    let mut rows = Vec::with_capacity(size);
    for i in 0..m {
        let mut row = vec![Poly::zero(); size];
        for (j, c) in f.ys.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![Poly::zero(); size];
        for (j, c) in g.ys.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(&ring, rows)
}

/// Determinant of the Sylvester matrix built from specialized coefficient
/// lists (ascending powers of y, zero leading entries allowed — the matrix
/// shape follows the symbolic degrees, so degree drops at the sample point
/// are handled correctly).
fn sylvester_det_entries<C: Field>(ctx: &C, f: &[C::Elem], g: &[C::Elem]) -> Result<C::Elem> {
    let n = f.len() - 1;
    let m = g.len() - 1;
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    for i in 0..m {
        let mut row = vec![ctx.zero(); size];
        for (j, c) in f.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![ctx.zero(); size];
        for (j, c) in g.iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(&FieldEntries(ctx.clone()), rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::PrimeField;

    fn fp() -> PrimeField {
        PrimeField::new(101)
    }

    fn term(ctx: &PrimeField, xd: usize, yd: usize, c: i64) -> (usize, usize, u64) {
        (xd, yd, ctx.from_i64(c))
    }

    #[test]
    fn gcd_extracts_common_factor() {
        let ctx = fp();
        // h = x + y
        let h = BiPoly::from_terms(&ctx, &[term(&ctx, 1, 0, 1), term(&ctx, 0, 1, 1)]);
        // f = h * (y + 1), g = h * (x + 2)
        let y_plus_1 = BiPoly::from_terms(&ctx, &[term(&ctx, 0, 1, 1), term(&ctx, 0, 0, 1)]);
        let x_plus_2 = BiPoly::from_terms(&ctx, &[term(&ctx, 1, 0, 1), term(&ctx, 0, 0, 2)]);
        let f = h.mul(&ctx, &y_plus_1);
        let g = h.mul(&ctx, &x_plus_2);
        let d = bi_gcd(&ctx, &f, &g).unwrap();
        assert_eq!(d, h);
    }

    #[test]
    fn resultant_detects_common_root_locus() {
        let ctx = fp();
        // f = y - x, g = y - 2x: common zeros only above x = 0.
        let f = BiPoly::from_terms(&ctx, &[term(&ctx, 0, 1, 1), term(&ctx, 1, 0, -1)]);
        let g = BiPoly::from_terms(&ctx, &[term(&ctx, 0, 1, 1), term(&ctx, 1, 0, -2)]);
        let r = resultant_y(&ctx, &f, &g).unwrap();
        assert_eq!(r.deg_or_zero(), 1);
        assert!(ctx.is_zero(&r.eval(&ctx, &0)));
    }

    #[test]
    fn resultant_zero_iff_common_factor() {
        let ctx = fp();
        let h = BiPoly::from_terms(&ctx, &[term(&ctx, 1, 0, 1), term(&ctx, 0, 1, 1)]);
        let a = BiPoly::from_terms(&ctx, &[term(&ctx, 0, 1, 1), term(&ctx, 0, 0, 5)]);
        let b = BiPoly::from_terms(&ctx, &[term(&ctx, 0, 1, 1), term(&ctx, 2, 0, 7)]);
        let f = h.mul(&ctx, &a);
        let g = h.mul(&ctx, &b);
        assert!(resultant_y(&ctx, &f, &g).unwrap().is_zero());
        assert!(!resultant_y(&ctx, &a, &b).unwrap().is_zero());
    }

    #[test]
    fn char_zero_interpolated_resultant_matches_substitution() {
        let spec = crate::tower::TowerSpec::rationals();
        let ctx = spec.top_ctx();
        let elem = |n: i64| ctx.from_i64(n);
        // f = y^2 + x, g = y - x  ->  Res_y = x^2 + x
        let f = BiPoly::from_y_coeffs(vec![
            Poly::from_coeffs(&ctx, vec![elem(0), elem(1)]),
            Poly::zero(),
            Poly::from_coeffs(&ctx, vec![elem(1)]),
        ]);
        let g = BiPoly::from_y_coeffs(vec![
            Poly::from_coeffs(&ctx, vec![elem(0), ctx.neg(&elem(1))]),
            Poly::from_coeffs(&ctx, vec![elem(1)]),
        ]);
        let r = resultant_y(&ctx, &f, &g).unwrap();
        let expected = Poly::from_coeffs(&ctx, vec![elem(0), elem(1), elem(1)]);
        assert_eq!(r, expected);
    }
}
