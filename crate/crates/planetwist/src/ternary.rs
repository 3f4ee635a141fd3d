//! Homogeneous ternary forms over a tower, 3x3 matrices acting on them,
//! and the univariate resultant/square-freeness checks.
//!
//! Matrices act on coordinate columns: `(F o M)(P) = F(M P)`, so a
//! substitution rule like [Y : Z : pX] is the matrix with rows
//! (0,1,0), (0,0,1), (p,0,0).

use std::collections::BTreeMap;
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};

use crate::tower::{TowerAutomorphism, TowerElement, TowerSpec};
use crate::upoly::{resultant as upoly_resultant, Poly};

/// Exponent triple (i, j, k) with i + j + k = degree.
pub type Exp = (u32, u32, u32);

/// A nonzero homogeneous form in X, Y, Z with tower coefficients, stored
/// sparsely; zero coefficients are never kept.
#[derive(Clone)]
pub struct TernaryForm {
    spec: Arc<TowerSpec>,
    degree: u32,
    terms: BTreeMap<Exp, TowerElement>,
}

impl PartialEq for TernaryForm {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.terms == other.terms
    }
}

impl std::fmt::Debug for TernaryForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TernaryForm(deg {}; {} terms)", self.degree, self.terms.len())
    }
}

impl TernaryForm {
    /// Builds a form from (exponent, coefficient) terms; zero coefficients
    /// are dropped, duplicate exponents accumulate. Errors on the zero form
    /// or on inhomogeneous exponents.
    pub fn new(
        spec: &Arc<TowerSpec>,
        degree: u32,
        terms: impl IntoIterator<Item = (Exp, TowerElement)>,
    ) -> Result<Self> {
        let mut map: BTreeMap<Exp, TowerElement> = BTreeMap::new();
        for (exp, coef) in terms {
            if exp.0 + exp.1 + exp.2 != degree {
                return Err(Error::InvalidParams(format!(
                    "exponent {exp:?} does not sum to degree {degree}"
                )));
            }
            match map.remove(&exp) {
                None => {
                    map.insert(exp, coef);
                }
                Some(prev) => {
                    map.insert(exp, prev.add(&coef));
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        if map.is_empty() {
            return Err(Error::InvalidParams("the zero form is not a valid TernaryForm".into()));
        }
        Ok(TernaryForm { spec: Arc::clone(spec), degree, terms: map })
    }

    /// The monomial c * X^i Y^j Z^k.
    pub fn monomial(spec: &Arc<TowerSpec>, exp: Exp, coef: TowerElement) -> Result<Self> {
        Self::new(spec, exp.0 + exp.1 + exp.2, [(exp, coef)])
    }

    pub fn spec(&self) -> &Arc<TowerSpec> {
        &self.spec
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &TowerElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exp: Exp) -> TowerElement {
        self.terms.get(&exp).cloned().unwrap_or_else(|| self.spec.zero())
    }

    pub fn support(&self) -> Vec<Exp> {
        self.terms.keys().copied().collect()
    }

    /// Sum; `None` when the terms cancel to zero.
    pub fn add(&self, other: &Self) -> Result<Option<Self>> {
        if self.degree != other.degree {
            return Err(Error::InvalidParams("degree mismatch in form addition".into()));
        }
        let mut map = self.terms.clone();
        for (exp, coef) in &other.terms {
            match map.remove(exp) {
                None => {
                    map.insert(*exp, coef.clone());
                }
                Some(prev) => {
                    let s = prev.add(coef);
                    if !s.is_zero() {
                        map.insert(*exp, s);
                    }
                }
            }
        }
        if map.is_empty() {
            return Ok(None);
        }
        Ok(Some(TernaryForm { spec: Arc::clone(&self.spec), degree: self.degree, terms: map }))
    }

    pub fn scale(&self, c: &TowerElement) -> Option<Self> {
        if c.is_zero() {
            return None;
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| (*e, v.mul(c)))
            .collect();
        Some(TernaryForm { spec: Arc::clone(&self.spec), degree: self.degree, terms })
    }

    pub fn scale_rational(&self, q: &BigRational) -> Option<Self> {
        self.scale(&self.spec.rational(q.clone()))
    }

    pub fn neg(&self) -> Self {
        self.scale(&self.spec.integer(-1)).expect("nonzero")
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut map: BTreeMap<Exp, TowerElement> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let exp = (e1.0 + e2.0, e1.1 + e2.1, e1.2 + e2.2);
                let prod = c1.mul(c2);
                match map.remove(&exp) {
                    None => {
                        map.insert(exp, prod);
                    }
                    Some(prev) => {
                        let s = prev.add(&prod);
                        if !s.is_zero() {
                            map.insert(exp, s);
                        }
                    }
                }
            }
        }
        debug_assert!(!map.is_empty(), "product of nonzero forms over a field is nonzero");
        TernaryForm {
            spec: Arc::clone(&self.spec),
            degree: self.degree + other.degree,
            terms: map,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc: Option<Self> = None;
        for _ in 0..e {
            acc = Some(match acc {
                None => self.clone(),
                Some(a) => a.mul(self),
            });
        }
        acc.unwrap_or_else(|| {
            TernaryForm::monomial(&self.spec, (0, 0, 0), self.spec.one()).expect("one")
        })
    }

    pub fn evaluate(&self, point: &[TowerElement; 3]) -> TowerElement {
        let mut acc = self.spec.zero();
        for (exp, coef) in &self.terms {
            let term = coef
                .mul(&point[0].pow(exp.0 as u64))
                .mul(&point[1].pow(exp.1 as u64))
                .mul(&point[2].pow(exp.2 as u64));
            acc = acc.add(&term);
        }
        acc
    }

    /// Formal partial derivative; `None` when it vanishes.
    pub fn partial_derivative(&self, var: Var) -> Option<Self> {
        let mut map: BTreeMap<Exp, TowerElement> = BTreeMap::new();
        for (exp, coef) in &self.terms {
            let (e, new_exp) = match var {
                Var::X => (exp.0, (exp.0.wrapping_sub(1), exp.1, exp.2)),
                Var::Y => (exp.1, (exp.0, exp.1.wrapping_sub(1), exp.2)),
                Var::Z => (exp.2, (exp.0, exp.1, exp.2.wrapping_sub(1))),
            };
            if e == 0 {
                continue;
            }
            let c = coef.mul(&self.spec.integer(e as i64));
            match map.remove(&new_exp) {
                None => {
                    map.insert(new_exp, c);
                }
                Some(prev) => {
                    let s = prev.add(&c);
                    if !s.is_zero() {
                        map.insert(new_exp, s);
                    }
                }
            }
        }
        if map.is_empty() {
            return None;
        }
        Some(TernaryForm {
            spec: Arc::clone(&self.spec),
            degree: self.degree - 1,
            terms: map,
        })
    }

    /// F(X, 1, 1) as a univariate polynomial in X.
    pub fn dehomogenize_x(&self) -> TowerPoly {
        let mut coeffs = vec![self.spec.zero(); self.degree as usize + 1];
        for (exp, coef) in &self.terms {
            coeffs[exp.0 as usize] = coeffs[exp.0 as usize].add(coef);
        }
        TowerPoly::new(&self.spec, coeffs)
    }

    /// Substitution by an invertible matrix: each variable is replaced by
    /// the corresponding row-linear combination; exact expansion, degree
    /// preserved.
    pub fn substitute(&self, m: &Matrix3) -> Result<Self> {
        if m.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        let rows: Vec<TernaryForm> = (0..3)
            .map(|i| {
                TernaryForm::new(
                    &self.spec,
                    1,
                    [
                        ((1, 0, 0), m.entry(i, 0).clone()),
                        ((0, 1, 0), m.entry(i, 1).clone()),
                        ((0, 0, 1), m.entry(i, 2).clone()),
                    ],
                )
            })
            .collect::<Result<Vec<_>>>()?;
        let mut acc: Option<TernaryForm> = None;
        for (exp, coef) in &self.terms {
            let mut term = TernaryForm::monomial(&self.spec, (0, 0, 0), coef.clone())?;
            for (row, e) in rows.iter().zip([exp.0, exp.1, exp.2]) {
                if e > 0 {
                    term = term.mul(&row.pow(e));
                }
            }
            acc = Some(match acc {
                None => term,
                Some(a) => a
                    .add(&term)?
                    .ok_or_else(|| Error::InvalidParams("substitution cancelled the form".into()))?,
            });
        }
        let out = acc.expect("nonzero form has terms");
        debug_assert_eq!(out.degree, self.degree);
        Ok(out)
    }

    /// The scalar lambda with `self = lambda * other`, when one exists.
    pub fn scalar_multiple_of(&self, other: &Self) -> Option<TowerElement> {
        if self.degree != other.degree || self.terms.len() != other.terms.len() {
            return None;
        }
        let (first_exp, first_coef) = other.terms.iter().next()?;
        let mine = self.terms.get(first_exp)?;
        let lambda = mine.div(first_coef).ok()?;
        for (exp, coef) in &other.terms {
            match self.terms.get(exp) {
                Some(c) if *c == coef.mul(&lambda) => {}
                _ => return None,
            }
        }
        Some(lambda)
    }

    /// Projective equality of forms.
    pub fn projectively_equal(&self, other: &Self) -> bool {
        self.scalar_multiple_of(other).is_some()
    }

    /// Applies a tower automorphism to every coefficient.
    pub fn map_coefficients(&self, auto: &TowerAutomorphism) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (*e, auto.apply(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        TernaryForm { spec: Arc::clone(&self.spec), degree: self.degree, terms }
    }

    /// Re-expresses the form over a larger tower (matching generator labels).
    pub fn embed_into(&self, target: &Arc<TowerSpec>) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(*e, c.embed_into(target)?);
        }
        Ok(TernaryForm { spec: Arc::clone(target), degree: self.degree, terms })
    }

    /// Projects every coefficient onto a sub-tower; errors if any
    /// coefficient uses a dropped generator.
    pub fn project_to(&self, sub: &Arc<TowerSpec>) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            terms.insert(*e, c.project_to(sub)?);
        }
        Ok(TernaryForm { spec: Arc::clone(sub), degree: self.degree, terms })
    }

    /// Divides by the first (in exponent order) nonzero coefficient.
    pub fn normalize_leading(&self) -> Result<Self> {
        let (_, first) = self.terms.iter().next().expect("nonzero form");
        let inv = first.inv()?;
        Ok(self.scale(&inv).expect("nonzero scalar"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
    Z,
}

/// Univariate polynomial with tower coefficients (ascending order).
#[derive(Clone, PartialEq)]
pub struct TowerPoly {
    spec: Arc<TowerSpec>,
    coeffs: Vec<TowerElement>,
}

impl std::fmt::Debug for TowerPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TowerPoly(deg {:?})", self.degree())
    }
}

impl TowerPoly {
    pub fn new(spec: &Arc<TowerSpec>, mut coeffs: Vec<TowerElement>) -> Self {
        while matches!(coeffs.last(), Some(c) if c.is_zero()) {
            coeffs.pop();
        }
        TowerPoly { spec: Arc::clone(spec), coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[TowerElement] {
        &self.coeffs
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return TowerPoly { spec: Arc::clone(&self.spec), coeffs: Vec::new() };
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&self.spec.integer(i as i64)))
            .collect();
        TowerPoly::new(&self.spec, coeffs)
    }

    pub(crate) fn as_kernel_poly(&self) -> Poly<crate::tower::LevelCtx> {
        let ctx = self.spec.top_ctx();
        Poly::from_coeffs(&ctx, self.coeffs.iter().map(|c| c.rep().clone()).collect())
    }

    /// Least common multiple of the coordinate denominators across all
    /// coefficients.
    fn denominator_lcm(&self) -> num_bigint::BigInt {
        use num_traits::One;
        let mut acc = num_bigint::BigInt::one();
        for c in &self.coeffs {
            acc = num_integer::Integer::lcm(&acc, &c.denominator_lcm());
        }
        acc
    }

    fn scale_all(&self, q: &BigRational) -> Self {
        TowerPoly {
            spec: Arc::clone(&self.spec),
            coeffs: self.coeffs.iter().map(|c| c.scale(q)).collect(),
        }
    }

    /// Sylvester resultant, fraction-free; convention
    /// `Res(f, g) = lc(f)^{deg g} * prod g(alpha)` over roots `alpha` of f.
    ///
    /// Both inputs are cleared of coordinate denominators first so the
    /// Bareiss entries stay in the integral lattice of the tower (rational
    /// gcd normalization on fractional coordinates dominates the cost
    /// otherwise); the known scaling law Res(cf, dg) = c^{deg g} d^{deg f}
    /// Res(f, g) undoes the clearing exactly.
    pub fn resultant(&self, other: &Self) -> Result<TowerElement> {
        let ctx = self.spec.top_ctx();
        let (Some(df), Some(dg)) = (self.degree(), other.degree()) else {
            return Ok(self.spec.zero());
        };
        use num_traits::One;
        let cf = BigRational::from_integer(self.denominator_lcm());
        let cg = BigRational::from_integer(other.denominator_lcm());
        if cf.is_one() && cg.is_one() {
            let r = upoly_resultant(&ctx, &self.as_kernel_poly(), &other.as_kernel_poly())?;
            return Ok(TowerElement::from_rep(Arc::clone(&self.spec), r));
        }
        let f_int = self.scale_all(&cf);
        let g_int = other.scale_all(&cg);
        let r = upoly_resultant(&ctx, &f_int.as_kernel_poly(), &g_int.as_kernel_poly())?;
        let unscale = cf.pow(dg as i32) * cg.pow(df as i32);
        let r_elem = TowerElement::from_rep(Arc::clone(&self.spec), r);
        Ok(r_elem.scale(&unscale.recip()))
    }

    /// Square-freeness via `Res(f, f') != 0`; the resultant value is
    /// returned as the witness either way.
    pub fn squarefree_check(&self) -> Result<SquarefreeOutcome> {
        if self.degree().unwrap_or(0) < 1 {
            return Err(Error::InvalidParams(
                "square-free check needs degree >= 1".into(),
            ));
        }
        let resultant = self.resultant(&self.derivative())?;
        Ok(SquarefreeOutcome { squarefree: !resultant.is_zero(), resultant })
    }
}

#[derive(Clone, Debug)]
pub struct SquarefreeOutcome {
    pub squarefree: bool,
    /// Res(f, f'): nonzero certifies square-freeness, zero witnesses a
    /// repeated factor.
    pub resultant: TowerElement,
}

/// An invertible 3x3 matrix over a tower with cached determinant and exact
/// projective equality.
#[derive(Clone)]
pub struct Matrix3 {
    spec: Arc<TowerSpec>,
    entries: Vec<TowerElement>, // row-major, 9 entries
    det: TowerElement,
}

impl PartialEq for Matrix3 {
    fn eq(&self, other: &Self) -> bool {
        self.entries == other.entries
    }
}

impl std::fmt::Debug for Matrix3 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Matrix3[")?;
        for i in 0..3 {
            writeln!(
                f,
                "  {:?} {:?} {:?}",
                self.entry(i, 0),
                self.entry(i, 1),
                self.entry(i, 2)
            )?;
        }
        write!(f, "]")
    }
}

impl Matrix3 {
    /// Builds a matrix from rows; errors if singular (all admitted matrices
    /// take part in substitutions or group operations).
    pub fn new(spec: &Arc<TowerSpec>, rows: [[TowerElement; 3]; 3]) -> Result<Self> {
        let entries: Vec<TowerElement> = rows.into_iter().flatten().collect();
        let det = det3(&entries);
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(Matrix3 { spec: Arc::clone(spec), entries, det })
    }

    pub fn identity(spec: &Arc<TowerSpec>) -> Self {
        let one = spec.one();
        let zero = spec.zero();
        Matrix3 {
            spec: Arc::clone(spec),
            entries: vec![
                one.clone(),
                zero.clone(),
                zero.clone(),
                zero.clone(),
                one.clone(),
                zero.clone(),
                zero.clone(),
                zero.clone(),
                one.clone(),
            ],
            det: spec.one(),
        }
    }

    pub fn diagonal(spec: &Arc<TowerSpec>, d: [TowerElement; 3]) -> Result<Self> {
        let zero = spec.zero();
        Matrix3::new(
            spec,
            [
                [d[0].clone(), zero.clone(), zero.clone()],
                [zero.clone(), d[1].clone(), zero.clone()],
                [zero.clone(), zero.clone(), d[2].clone()],
            ],
        )
    }

    pub fn spec(&self) -> &Arc<TowerSpec> {
        &self.spec
    }

    pub fn entry(&self, row: usize, col: usize) -> &TowerElement {
        &self.entries[3 * row + col]
    }

    pub fn det(&self) -> &TowerElement {
        &self.det
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut entries = Vec::with_capacity(9);
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = self.spec.zero();
                for k in 0..3 {
                    acc = acc.add(&self.entry(i, k).mul(other.entry(k, j)));
                }
                entries.push(acc);
            }
        }
        let det = self.det.mul(&other.det);
        Matrix3 { spec: Arc::clone(&self.spec), entries, det }
    }

    pub fn inv(&self) -> Result<Self> {
        let det_inv = self.det.inv()?;
        // adjugate over determinant, entries written out
        let m = |i: usize, j: usize| self.entry(i, j);
        let c = |a: &TowerElement, b: &TowerElement, x: &TowerElement, y: &TowerElement| {
            a.mul(b).sub(&x.mul(y))
        };
        let entries = vec![
            c(m(1, 1), m(2, 2), m(1, 2), m(2, 1)),
            c(m(0, 2), m(2, 1), m(0, 1), m(2, 2)),
            c(m(0, 1), m(1, 2), m(0, 2), m(1, 1)),
            c(m(1, 2), m(2, 0), m(1, 0), m(2, 2)),
            c(m(0, 0), m(2, 2), m(0, 2), m(2, 0)),
            c(m(0, 2), m(1, 0), m(0, 0), m(1, 2)),
            c(m(1, 0), m(2, 1), m(1, 1), m(2, 0)),
            c(m(0, 1), m(2, 0), m(0, 0), m(2, 1)),
            c(m(0, 0), m(1, 1), m(0, 1), m(1, 0)),
        ];
        let entries = entries.into_iter().map(|v| v.mul(&det_inv)).collect();
        Ok(Matrix3 { spec: Arc::clone(&self.spec), entries, det: det_inv })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Matrix3::identity(&self.spec);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &TowerElement) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let entries: Vec<TowerElement> = self.entries.iter().map(|v| v.mul(c)).collect();
        let det = det3(&entries);
        Ok(Matrix3 { spec: Arc::clone(&self.spec), entries, det })
    }

    /// The scalar c with `self = c * other`, when one exists.
    pub fn projective_scalar(&self, other: &Self) -> Option<TowerElement> {
        let pivot = other.entries.iter().position(|v| !v.is_zero())?;
        if self.entries[pivot].is_zero() {
            return None;
        }
        let c = self.entries[pivot].div(&other.entries[pivot]).ok()?;
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if *a != b.mul(&c) {
                return None;
            }
        }
        Some(c)
    }

    pub fn projectively_equal(&self, other: &Self) -> bool {
        self.projective_scalar(other).is_some()
    }

    /// Canonical projective representative: scales so the first nonzero
    /// entry in row-major order is 1.
    pub fn normalize(&self) -> Self {
        let pivot = self
            .entries
            .iter()
            .find(|v| !v.is_zero())
            .expect("invertible matrix is nonzero");
        let inv = pivot.inv().expect("nonzero entry");
        self.scale(&inv).expect("nonzero scalar")
    }

    /// Projective order: least e >= 1 with self^e scalar. Errors past the
    /// bound.
    pub fn projective_order(&self, bound: u32) -> Result<u32> {
        let id = Matrix3::identity(&self.spec);
        let mut acc = self.clone();
        for e in 1..=bound {
            if acc.projectively_equal(&id) {
                return Ok(e);
            }
            acc = acc.mul(self);
        }
        Err(Error::InvalidParams(format!("projective order exceeds {bound}")))
    }

    /// Entry-wise image under a tower automorphism.
    pub fn map_entries(&self, auto: &TowerAutomorphism) -> Self {
        let entries: Vec<TowerElement> =
            self.entries.iter().map(|v| auto.apply(v)).collect();
        let det = det3(&entries);
        Matrix3 { spec: Arc::clone(&self.spec), entries, det }
    }

    pub fn embed_into(&self, target: &Arc<TowerSpec>) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|v| v.embed_into(target))
            .collect::<Result<Vec<_>>>()?;
        let det = det3(&entries);
        Ok(Matrix3 { spec: Arc::clone(target), entries, det })
    }

    pub fn rows(&self) -> [[TowerElement; 3]; 3] {
        let e = |i: usize, j: usize| self.entries[3 * i + j].clone();
        [
            [e(0, 0), e(0, 1), e(0, 2)],
            [e(1, 0), e(1, 1), e(1, 2)],
            [e(2, 0), e(2, 1), e(2, 2)],
        ]
    }
}

fn det3(entries: &[TowerElement]) -> TowerElement {
    let e = |i: usize, j: usize| &entries[3 * i + j];
    let minor = |a: &TowerElement, b: &TowerElement, c: &TowerElement, d: &TowerElement| {
        a.mul(b).sub(&c.mul(d))
    };
    let m0 = minor(e(1, 1), e(2, 2), e(1, 2), e(2, 1));
    let m1 = minor(e(1, 0), e(2, 2), e(1, 2), e(2, 0));
    let m2 = minor(e(1, 0), e(2, 1), e(1, 1), e(2, 0));
    e(0, 0).mul(&m0).sub(&e(0, 1).mul(&m1)).add(&e(0, 2).mul(&m2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::spec_q_zeta3;

    fn rationals() -> Arc<TowerSpec> {
        TowerSpec::rationals()
    }

    #[test]
    fn substitution_identity_and_cycle() {
        let spec = rationals();
        // F = XYZ
        let xyz = TernaryForm::monomial(&spec, (1, 1, 1), spec.one()).unwrap();
        let id = Matrix3::identity(&spec);
        assert_eq!(xyz.substitute(&id).unwrap(), xyz);

        // R swaps Y and Z: XYZ stays put.
        let z = spec.zero();
        let o = spec.one();
        let r = Matrix3::new(
            &spec,
            [
                [o.clone(), z.clone(), z.clone()],
                [z.clone(), z.clone(), o.clone()],
                [z.clone(), o.clone(), z.clone()],
            ],
        )
        .unwrap();
        assert_eq!(xyz.substitute(&r).unwrap(), xyz);

        // T: X<-Y, Y<-Z, Z<-X sends X^3 to Y^3.
        let t = Matrix3::new(
            &spec,
            [
                [z.clone(), o.clone(), z.clone()],
                [z.clone(), z.clone(), o.clone()],
                [o.clone(), z.clone(), z.clone()],
            ],
        )
        .unwrap();
        let x3 = TernaryForm::monomial(&spec, (3, 0, 0), spec.one()).unwrap();
        let y3 = TernaryForm::monomial(&spec, (0, 3, 0), spec.one()).unwrap();
        assert_eq!(x3.substitute(&t).unwrap(), y3);
    }

    #[test]
    fn partial_derivatives() {
        let spec = rationals();
        let x3 = TernaryForm::monomial(&spec, (3, 0, 0), spec.one()).unwrap();
        let dx = x3.partial_derivative(Var::X).unwrap();
        assert_eq!(dx.coefficient((2, 0, 0)), spec.integer(3));
        assert!(x3.partial_derivative(Var::Y).is_none());
        let xyz = TernaryForm::monomial(&spec, (1, 1, 1), spec.one()).unwrap();
        let dz = xyz.partial_derivative(Var::Z).unwrap();
        assert_eq!(dz.coefficient((1, 1, 0)), spec.one());
    }

    #[test]
    fn resultant_convention() {
        let spec = rationals();
        // Res(x - a, x - b) = a - b with a=5, b=3
        let f = TowerPoly::new(&spec, vec![spec.integer(-5), spec.one()]);
        let g = TowerPoly::new(&spec, vec![spec.integer(-3), spec.one()]);
        assert_eq!(f.resultant(&g).unwrap(), spec.integer(2));
        // Res(x^2 - 1, 2x) = -4
        let f = TowerPoly::new(&spec, vec![spec.integer(-1), spec.zero(), spec.one()]);
        let g = TowerPoly::new(&spec, vec![spec.zero(), spec.integer(2)]);
        assert_eq!(f.resultant(&g).unwrap(), spec.integer(-4));
        // Res(x^2, 2x) = 0
        let f = TowerPoly::new(&spec, vec![spec.zero(), spec.zero(), spec.one()]);
        assert!(f.resultant(&g).unwrap().is_zero());
    }

    #[test]
    fn squarefree_checks() {
        let spec = rationals();
        // x^2 - 1 square free
        let f = TowerPoly::new(&spec, vec![spec.integer(-1), spec.zero(), spec.one()]);
        assert!(f.squarefree_check().unwrap().squarefree);
        // (x-1)^2 = x^2 - 2x + 1 not square free
        let g = TowerPoly::new(&spec, vec![spec.one(), spec.integer(-2), spec.one()]);
        let out = g.squarefree_check().unwrap();
        assert!(!out.squarefree);
        assert!(out.resultant.is_zero());
    }

    #[test]
    fn projective_matrix_equality() {
        let spec = spec_q_zeta3();
        let z = spec.generator("zeta3").unwrap();
        let id = Matrix3::identity(&spec);
        let scaled = id.scale(&z).unwrap();
        assert!(scaled.projectively_equal(&id));
        assert_eq!(scaled.projective_scalar(&id).unwrap(), z);
        let m = Matrix3::diagonal(&spec, [spec.one(), spec.one(), spec.integer(2)]).unwrap();
        assert!(!m.projectively_equal(&id));
        // normalize picks the first nonzero entry
        assert_eq!(scaled.normalize(), id);
    }

    #[test]
    fn inverse_and_det() {
        let spec = rationals();
        let m = Matrix3::new(
            &spec,
            [
                [spec.integer(2), spec.integer(1), spec.zero()],
                [spec.zero(), spec.integer(1), spec.integer(3)],
                [spec.one(), spec.zero(), spec.one()],
            ],
        )
        .unwrap();
        let inv = m.inv().unwrap();
        assert_eq!(m.mul(&inv), Matrix3::identity(&spec));
        assert_eq!(inv.mul(&m), Matrix3::identity(&spec));
        // singular matrices are rejected
        let bad = Matrix3::new(
            &spec,
            [
                [spec.one(), spec.one(), spec.zero()],
                [spec.one(), spec.one(), spec.zero()],
                [spec.zero(), spec.zero(), spec.one()],
            ],
        );
        assert!(matches!(bad, Err(Error::SingularMatrix)));
    }

    #[test]
    fn euler_relation() {
        // d*F = X F_X + Y F_Y + Z F_Z for F = X^2 Y + Z^3 (degree 3).
        let spec = rationals();
        let f = TernaryForm::new(
            &spec,
            3,
            [
                ((2, 1, 0), spec.one()),
                ((0, 0, 3), spec.one()),
            ],
        )
        .unwrap();
        let x = TernaryForm::monomial(&spec, (1, 0, 0), spec.one()).unwrap();
        let y = TernaryForm::monomial(&spec, (0, 1, 0), spec.one()).unwrap();
        let z = TernaryForm::monomial(&spec, (0, 0, 1), spec.one()).unwrap();
        let mut acc: Option<TernaryForm> = None;
        for (v, var) in [(x, Var::X), (y, Var::Y), (z, Var::Z)] {
            if let Some(d) = f.partial_derivative(var) {
                let t = v.mul(&d);
                acc = Some(match acc {
                    None => t,
                    Some(a) => a.add(&t).unwrap().unwrap(),
                });
            }
        }
        let lhs = f.scale(&spec.integer(3)).unwrap();
        assert_eq!(acc.unwrap(), lhs);
    }

    #[test]
    fn dehomogenize() {
        let spec = rationals();
        // F = X^2 Y + X Z^2 + Y^3 -> F(X,1,1) = X^2 + X + 1
        let f = TernaryForm::new(
            &spec,
            3,
            [
                ((2, 1, 0), spec.one()),
                ((1, 0, 2), spec.one()),
                ((0, 3, 0), spec.one()),
            ],
        )
        .unwrap();
        let u = f.dehomogenize_x();
        assert_eq!(u.coeffs(), &[spec.one(), spec.one(), spec.one()]);
    }
}
