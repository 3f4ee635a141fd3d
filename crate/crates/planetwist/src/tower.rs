//! Exact arithmetic in towers of field extensions of Q.
//!
//! A tower is a strict chain Q = K_0 < K_1 < ... < K_n where each step
//! adjoins one generator with a monic minimal polynomial over the level
//! below. Elements are nested polynomial coordinates with rationals at the
//! base, always fully reduced, so equality is exact and decidable.
//!
//! Irreducibility of the steps is not verified up front: inverting a zero
//! divisor proves a step reducible and surfaces as
//! [`Error::ReducibleStep`].

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::upoly::{resultant, Poly};

pub use crate::arith::multiplicative_order;

type Q = BigRational;

/// Nested coordinate representation. A level-k element is `Ext` with one
/// entry per power of the level-k generator, entries at level k-1; level 0
/// is a rational.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) enum Nested {
    Base(Q),
    Ext(Vec<Nested>),
}

/// One extension step: a generator label and its monic minimal polynomial,
/// with coefficients (ascending, including the leading 1) from the tower
/// below.
#[derive(Clone, Debug)]
pub struct Step {
    label: String,
    min_poly: Vec<Nested>,
}

impl Step {
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub(crate) fn min_poly_internal(&self) -> &[Nested] {
        &self.min_poly
    }
}

/// An ordered tower of extensions of Q.
#[derive(Debug)]
pub struct TowerSpec {
    steps: Vec<Step>,
}

impl PartialEq for TowerSpec {
    fn eq(&self, other: &Self) -> bool {
        self.steps.len() == other.steps.len()
            && self
                .steps
                .iter()
                .zip(&other.steps)
                .all(|(a, b)| a.label == b.label && a.min_poly == b.min_poly)
    }
}

impl TowerSpec {
    /// The trivial tower: plain Q.
    pub fn rationals() -> Arc<TowerSpec> {
        Arc::new(TowerSpec { steps: Vec::new() })
    }

    pub fn builder() -> TowerBuilder {
        TowerBuilder { steps: Vec::new() }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn num_steps(&self) -> usize {
        self.steps.len()
    }

    /// Total degree over Q: the product of the step degrees.
    pub fn degree(&self) -> usize {
        self.steps.iter().map(Step::degree).product()
    }

    pub fn step_index(&self, label: &str) -> Result<usize> {
        self.steps
            .iter()
            .position(|s| s.label == label)
            .ok_or_else(|| Error::UnknownStep(label.to_string()))
    }

    pub(crate) fn level_ctx(self: &Arc<Self>, level: usize) -> LevelCtx {
        LevelCtx { spec: Arc::clone(self), level }
    }

    pub(crate) fn top_ctx(self: &Arc<Self>) -> LevelCtx {
        self.level_ctx(self.num_steps())
    }

    fn zero_rep(&self, level: usize) -> Nested {
        if level == 0 {
            Nested::Base(Q::zero())
        } else {
            let d = self.steps[level - 1].degree();
            Nested::Ext(vec![self.zero_rep(level - 1); d])
        }
    }

    fn rational_rep(&self, level: usize, q: Q) -> Nested {
        if level == 0 {
            Nested::Base(q)
        } else {
            let d = self.steps[level - 1].degree();
            let mut coords = vec![self.zero_rep(level - 1); d];
            coords[0] = self.rational_rep(level - 1, q);
            Nested::Ext(coords)
        }
    }

    /// Lifts a level-`from` representation to level `to >= from` (constant
    /// embedding along the higher steps).
    fn lift_rep(&self, rep: Nested, from: usize, to: usize) -> Nested {
        let mut out = rep;
        for level in from + 1..=to {
            let d = self.steps[level - 1].degree();
            let mut coords = vec![self.zero_rep(level - 1); d];
            coords[0] = out;
            out = Nested::Ext(coords);
        }
        out
    }

    pub fn zero(self: &Arc<Self>) -> TowerElement {
        TowerElement { spec: Arc::clone(self), rep: self.zero_rep(self.num_steps()) }
    }

    pub fn one(self: &Arc<Self>) -> TowerElement {
        self.rational(Q::one())
    }

    pub fn rational(self: &Arc<Self>, q: Q) -> TowerElement {
        TowerElement {
            spec: Arc::clone(self),
            rep: self.rational_rep(self.num_steps(), q),
        }
    }

    pub fn integer(self: &Arc<Self>, n: i64) -> TowerElement {
        self.rational(Q::from_integer(BigInt::from(n)))
    }

    /// The generator adjoined at the named step, as a full-level element.
    pub fn generator(self: &Arc<Self>, label: &str) -> Result<TowerElement> {
        let idx = self.step_index(label)?;
        let d = self.steps[idx].degree();
        let mut coords = vec![self.zero_rep(idx); d];
        coords[1] = self.rational_rep(idx, Q::one());
        let rep = self.lift_rep(Nested::Ext(coords), idx + 1, self.num_steps());
        Ok(TowerElement { spec: Arc::clone(self), rep })
    }

    /// Restriction of this spec to the named steps (order preserved). Every
    /// kept step must have a minimal polynomial that does not involve a
    /// dropped generator.
    pub fn sub_spec(self: &Arc<Self>, keep: &[&str]) -> Result<Arc<TowerSpec>> {
        let mut kept_idx = Vec::new();
        for label in keep {
            kept_idx.push(self.step_index(label)?);
        }
        kept_idx.sort_unstable();
        let mut steps = Vec::new();
        for (new_level, &i) in kept_idx.iter().enumerate() {
            let step = &self.steps[i];
            // Dropped lower generators must not appear in the kept minimal
            // polynomial.
            for coeff in &step.min_poly {
                for lower in 0..i {
                    if !kept_idx.contains(&lower) && rep_uses_generator(coeff, lower) {
                        return Err(Error::InvalidParams(format!(
                            "step `{}` depends on dropped generator `{}`",
                            step.label, self.steps[lower].label
                        )));
                    }
                }
            }
            let min_poly = step
                .min_poly
                .iter()
                .map(|c| project_rep(self, c, i, &kept_idx[..new_level]))
                .collect::<Result<Vec<_>>>()?;
            steps.push(Step { label: step.label.clone(), min_poly });
        }
        Ok(Arc::new(TowerSpec { steps }))
    }
}

/// Incremental construction of a tower.
pub struct TowerBuilder {
    steps: Vec<Step>,
}

impl TowerBuilder {
    /// Adjoins a generator with a monic minimal polynomial with rational
    /// coefficients (ascending, leading 1 included).
    pub fn step_rational(mut self, label: &str, coeffs: &[Q]) -> Result<Self> {
        if coeffs.len() < 3 {
            return Err(Error::InvalidParams(format!(
                "step `{label}`: minimal polynomial must have degree >= 2"
            )));
        }
        if coeffs.last() != Some(&Q::one()) {
            return Err(Error::InvalidParams(format!(
                "step `{label}`: minimal polynomial must be monic"
            )));
        }
        if self.steps.iter().any(|s| s.label == label) {
            return Err(Error::InvalidParams(format!("duplicate step label `{label}`")));
        }
        let level = self.steps.len();
        let partial = TowerSpec { steps: std::mem::take(&mut self.steps) };
        let min_poly = coeffs
            .iter()
            .map(|q| partial.rational_rep(level, q.clone()))
            .collect();
        self.steps = partial.steps;
        self.steps.push(Step { label: label.to_string(), min_poly });
        Ok(self)
    }

    /// x^2 + x + 1: a primitive cube root of unity.
    pub fn zeta3(self) -> Result<Self> {
        self.step_rational("zeta3", &[Q::one(), Q::one(), Q::one()])
    }

    /// x^2 - r: a square root of the rational r.
    pub fn sqrt(self, label: &str, r: Q) -> Result<Self> {
        self.step_rational(label, &[-r, Q::zero(), Q::one()])
    }

    /// x^3 - r: a cube root of the rational r.
    pub fn cbrt(self, label: &str, r: Q) -> Result<Self> {
        self.step_rational(label, &[-r, Q::zero(), Q::zero(), Q::one()])
    }

    /// x^3 + x^2/2 - x/2 - 1/8, the monic minimal polynomial of cos(2*pi/7).
    pub fn cos_2pi_7(self) -> Result<Self> {
        let q = |n: i64, d: i64| Q::new(BigInt::from(n), BigInt::from(d));
        self.step_rational("cos2pi7", &[q(-1, 8), q(-1, 2), q(1, 2), Q::one()])
    }

    pub fn build(self) -> Arc<TowerSpec> {
        Arc::new(TowerSpec { steps: self.steps })
    }
}

/// Field context for one level of a tower; the unit of genericity shared
/// with the polynomial kernels.
#[derive(Clone)]
pub(crate) struct LevelCtx {
    spec: Arc<TowerSpec>,
    level: usize,
}

impl LevelCtx {
    fn below(&self) -> LevelCtx {
        LevelCtx { spec: Arc::clone(&self.spec), level: self.level - 1 }
    }

    fn step(&self) -> &Step {
        &self.spec.steps[self.level - 1]
    }
}

impl Field for LevelCtx {
    type Elem = Nested;

    fn zero(&self) -> Nested {
        self.spec.zero_rep(self.level)
    }

    fn one(&self) -> Nested {
        self.spec.rational_rep(self.level, Q::one())
    }

    fn is_zero(&self, a: &Nested) -> bool {
        match a {
            Nested::Base(q) => q.is_zero(),
            Nested::Ext(coords) => coords.iter().all(|c| self.below().is_zero(c)),
        }
    }

    fn add(&self, a: &Nested, b: &Nested) -> Nested {
        match (a, b) {
            (Nested::Base(x), Nested::Base(y)) => Nested::Base(x + y),
            (Nested::Ext(xs), Nested::Ext(ys)) => {
                let lower = self.below();
                Nested::Ext(xs.iter().zip(ys).map(|(x, y)| lower.add(x, y)).collect())
            }
            _ => unreachable!("mixed representation levels"),
        }
    }

    fn sub(&self, a: &Nested, b: &Nested) -> Nested {
        self.add(a, &self.neg(b))
    }

    fn neg(&self, a: &Nested) -> Nested {
        match a {
            Nested::Base(q) => Nested::Base(-q),
            Nested::Ext(coords) => {
                let lower = self.below();
                Nested::Ext(coords.iter().map(|c| lower.neg(c)).collect())
            }
        }
    }

    fn mul(&self, a: &Nested, b: &Nested) -> Nested {
        match (a, b) {
            (Nested::Base(x), Nested::Base(y)) => Nested::Base(x * y),
            (Nested::Ext(xs), Nested::Ext(ys)) => {
                let lower = self.below();
                // Constant-at-this-level fast paths: elements of subtowers
                // dominate in practice (rational matrix entries inside big
                // towers), and scalar multiplication avoids the full
                // convolution.
                if xs.iter().skip(1).all(|c| lower.is_zero(c)) {
                    return Nested::Ext(ys.iter().map(|y| lower.mul(&xs[0], y)).collect());
                }
                if ys.iter().skip(1).all(|c| lower.is_zero(c)) {
                    return Nested::Ext(xs.iter().map(|x| lower.mul(x, &ys[0])).collect());
                }
                let d = self.step().degree();
                let mut conv = vec![lower.zero(); 2 * d - 1];
                for (i, x) in xs.iter().enumerate() {
                    if lower.is_zero(x) {
                        continue;
                    }
                    for (j, y) in ys.iter().enumerate() {
                        conv[i + j] = lower.add(&conv[i + j], &lower.mul(x, y));
                    }
                }
                // Reduce modulo the monic minimal polynomial: x^d = -sum m_j x^j.
                let m = &self.step().min_poly;
                for i in (d..2 * d - 1).rev() {
                    let c = std::mem::replace(&mut conv[i], lower.zero());
                    if lower.is_zero(&c) {
                        continue;
                    }
                    for j in 0..d {
                        let t = lower.mul(&c, &m[j]);
                        conv[i - d + j] = lower.sub(&conv[i - d + j], &t);
                    }
                }
                conv.truncate(d);
                Nested::Ext(conv)
            }
            _ => unreachable!("mixed representation levels"),
        }
    }

    fn inv(&self, a: &Nested) -> Result<Nested> {
        match a {
            Nested::Base(q) => {
                if q.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Nested::Base(q.recip()))
                }
            }
            Nested::Ext(coords) => {
                if self.is_zero(a) {
                    return Err(Error::DivisionByZero);
                }
                let lower = self.below();
                // Constant fast path: invert in the subtower.
                if coords.iter().skip(1).all(|c| lower.is_zero(c)) {
                    let mut out = vec![lower.zero(); coords.len()];
                    out[0] = lower.inv(&coords[0])?;
                    return Ok(Nested::Ext(out));
                }
                let elem_poly = Poly::from_coeffs(&lower, coords.clone());
                let min_poly = Poly::from_coeffs(&lower, self.step().min_poly.clone());
                let (g, s, _) = elem_poly.ext_gcd(&lower, &min_poly)?;
                if g.degree() != Some(0) {
                    return Err(Error::ReducibleStep { step: self.step().label.clone() });
                }
                // g is monic constant 1, so s = a^{-1} mod m.
                let mut coeffs = s.coeffs().to_vec();
                coeffs.resize(self.step().degree(), lower.zero());
                Ok(Nested::Ext(coeffs))
            }
        }
    }

    fn from_i64(&self, n: i64) -> Nested {
        self.spec.rational_rep(self.level, Q::from_integer(BigInt::from(n)))
    }

    fn inv_split(&self, b: &Nested) -> Result<(Nested, Nested)> {
        let inv = self.inv(b)?;
        let lcm = rep_denominator_lcm(&inv);
        if lcm.is_one() {
            return Ok((inv, self.one()));
        }
        let d = self.spec.rational_rep(self.level, Q::from_integer(lcm));
        // constant fast path: coordinate-wise scaling keeps n integral
        let n = self.mul(&inv, &d);
        Ok((n, d))
    }

    fn characteristic(&self) -> Option<u64> {
        None
    }

    fn sample_point(&self, index: u64) -> Option<Nested> {
        // 0, 1, -1, 2, -2, ...
        let n = if index % 2 == 0 {
            -((index / 2) as i64)
        } else {
            (index / 2 + 1) as i64
        };
        Some(self.from_i64(n))
    }
}

fn rep_uses_generator(rep: &Nested, gen_index: usize) -> bool {
    fn walk(rep: &Nested, level: usize, gen_index: usize) -> bool {
        match rep {
            Nested::Base(_) => false,
            Nested::Ext(coords) => {
                if level - 1 == gen_index {
                    coords.iter().skip(1).any(|c| !rep_is_zero(c))
                        || coords.iter().any(|c| walk(c, level - 1, gen_index))
                } else {
                    coords.iter().any(|c| walk(c, level - 1, gen_index))
                }
            }
        }
    }
    fn level_of(rep: &Nested) -> usize {
        match rep {
            Nested::Base(_) => 0,
            Nested::Ext(coords) => 1 + level_of(&coords[0]),
        }
    }
    walk(rep, level_of(rep), gen_index)
}

fn rep_is_zero(rep: &Nested) -> bool {
    match rep {
        Nested::Base(q) => q.is_zero(),
        Nested::Ext(coords) => coords.iter().all(rep_is_zero),
    }
}

fn rep_denominator_lcm(rep: &Nested) -> BigInt {
    fn walk(rep: &Nested, acc: &mut BigInt) {
        match rep {
            Nested::Base(q) => {
                let d = q.denom();
                if !d.is_one() {
                    *acc = num_integer::Integer::lcm(acc, d);
                }
            }
            Nested::Ext(coords) => coords.iter().for_each(|c| walk(c, acc)),
        }
    }
    let mut acc = BigInt::one();
    walk(rep, &mut acc);
    acc
}

/// Projects a level-`level` representation onto the sub-tower formed by the
/// kept step indices; errors if a dropped coordinate is nonzero.
fn project_rep(
    spec: &TowerSpec,
    rep: &Nested,
    level: usize,
    kept_below: &[usize],
) -> Result<Nested> {
    match rep {
        Nested::Base(q) => Ok(Nested::Base(q.clone())),
        Nested::Ext(coords) => {
            let this = level - 1;
            if kept_below.contains(&this) {
                let kept_lower: Vec<usize> =
                    kept_below.iter().copied().filter(|&i| i < this).collect();
                let projected = coords
                    .iter()
                    .map(|c| project_rep(spec, c, this, &kept_lower))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Nested::Ext(projected))
            } else {
                if coords.iter().skip(1).any(|c| !rep_is_zero(c)) {
                    return Err(Error::InvalidParams(format!(
                        "nonzero coordinate on dropped generator `{}`",
                        spec.steps[this].label
                    )));
                }
                project_rep(spec, &coords[0], this, kept_below)
            }
        }
    }
}

/// An element of a tower, always fully reduced; equality is exact.
#[derive(Clone)]
pub struct TowerElement {
    spec: Arc<TowerSpec>,
    rep: Nested,
}

impl PartialEq for TowerElement {
    fn eq(&self, other: &Self) -> bool {
        debug_assert!(self.same_spec(other), "comparing elements of different towers");
        self.rep == other.rep
    }
}

impl Eq for TowerElement {}

impl std::fmt::Debug for TowerElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        fn fmt_rep(rep: &Nested, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
            match rep {
                Nested::Base(q) => write!(f, "{q}"),
                Nested::Ext(coords) => {
                    write!(f, "[")?;
                    for (i, c) in coords.iter().enumerate() {
                        if i > 0 {
                            write!(f, ", ")?;
                        }
                        fmt_rep(c, f)?;
                    }
                    write!(f, "]")
                }
            }
        }
        fmt_rep(&self.rep, f)
    }
}

impl TowerElement {
    pub fn spec(&self) -> &Arc<TowerSpec> {
        &self.spec
    }

    pub fn same_spec(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.spec, &other.spec) || *self.spec == *other.spec
    }

    pub(crate) fn rep(&self) -> &Nested {
        &self.rep
    }

    pub(crate) fn from_rep(spec: Arc<TowerSpec>, rep: Nested) -> Self {
        TowerElement { spec, rep }
    }

    fn ctx(&self) -> LevelCtx {
        self.spec.top_ctx()
    }

    fn check_spec(&self, other: &Self) -> Result<()> {
        if self.same_spec(other) {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    pub fn is_zero(&self) -> bool {
        rep_is_zero(&self.rep)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.same_spec(other), "tower spec mismatch");
        TowerElement {
            spec: Arc::clone(&self.spec),
            rep: self.ctx().add(&self.rep, &other.rep),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.same_spec(other), "tower spec mismatch");
        TowerElement {
            spec: Arc::clone(&self.spec),
            rep: self.ctx().sub(&self.rep, &other.rep),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.same_spec(other), "tower spec mismatch");
        TowerElement {
            spec: Arc::clone(&self.spec),
            rep: self.ctx().mul(&self.rep, &other.rep),
        }
    }

    pub fn neg(&self) -> Self {
        TowerElement { spec: Arc::clone(&self.spec), rep: self.ctx().neg(&self.rep) }
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(TowerElement {
            spec: Arc::clone(&self.spec),
            rep: self.ctx().inv(&self.rep)?,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_spec(other)?;
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u64) -> Self {
        TowerElement {
            spec: Arc::clone(&self.spec),
            rep: self.ctx().pow(&self.rep, e),
        }
    }

    pub fn scale(&self, q: &Q) -> Self {
        self.mul(&self.spec.rational(q.clone()))
    }

    /// Least common multiple of all coordinate denominators; multiplying by
    /// it makes every coordinate integral, which keeps downstream exact
    /// elimination in the integer lattice of the tower (minimal polynomials
    /// here are monic, so integrality survives multiplication).
    pub fn denominator_lcm(&self) -> BigInt {
        rep_denominator_lcm(&self.rep)
    }

    /// The rational value of this element if all non-constant coordinates
    /// vanish.
    pub fn as_rational(&self) -> Option<Q> {
        fn constant(rep: &Nested) -> Option<Q> {
            match rep {
                Nested::Base(q) => Some(q.clone()),
                Nested::Ext(coords) => {
                    if coords.iter().skip(1).all(rep_is_zero) {
                        constant(&coords[0])
                    } else {
                        None
                    }
                }
            }
        }
        constant(&self.rep)
    }

    /// Whether the element involves the named generator with positive
    /// exponent anywhere in its coordinates.
    pub fn uses_generator(&self, label: &str) -> Result<bool> {
        let idx = self.spec.step_index(label)?;
        Ok(rep_uses_generator(&self.rep, idx))
    }

    /// Re-expresses this element in `target`, matching generators by label.
    /// Every generator used by the element must exist in the target with the
    /// same minimal polynomial shape; the map is verified by construction
    /// (it is evaluation of the nested coordinates at the target
    /// generators).
    pub fn embed_into(&self, target: &Arc<TowerSpec>) -> Result<TowerElement> {
        fn eval(
            spec: &TowerSpec,
            rep: &Nested,
            level: usize,
            target: &Arc<TowerSpec>,
        ) -> Result<TowerElement> {
            match rep {
                Nested::Base(q) => Ok(target.rational(q.clone())),
                Nested::Ext(coords) => {
                    let gen = target.generator(spec.steps()[level - 1].label())?;
                    let mut acc = target.zero();
                    for c in coords.iter().rev() {
                        let c_t = eval(spec, c, level - 1, target)?;
                        acc = acc.mul(&gen).add(&c_t);
                    }
                    Ok(acc)
                }
            }
        }
        eval(&self.spec, &self.rep, self.spec.num_steps(), target)
    }

    /// Projects onto a sub-tower (by kept labels); errors if the element has
    /// a nonzero coordinate on a dropped generator.
    pub fn project_to(&self, sub: &Arc<TowerSpec>) -> Result<TowerElement> {
        let kept: Vec<usize> = sub
            .steps()
            .iter()
            .map(|s| self.spec.step_index(s.label()))
            .collect::<Result<Vec<_>>>()?;
        let rep = project_rep(&self.spec, &self.rep, self.spec.num_steps(), &kept)?;
        Ok(TowerElement { spec: Arc::clone(sub), rep })
    }
}

impl std::ops::Add for &TowerElement {
    type Output = TowerElement;
    fn add(self, rhs: &TowerElement) -> TowerElement {
        TowerElement::add(self, rhs)
    }
}

impl std::ops::Sub for &TowerElement {
    type Output = TowerElement;
    fn sub(self, rhs: &TowerElement) -> TowerElement {
        TowerElement::sub(self, rhs)
    }
}

impl std::ops::Mul for &TowerElement {
    type Output = TowerElement;
    fn mul(self, rhs: &TowerElement) -> TowerElement {
        TowerElement::mul(self, rhs)
    }
}

impl std::ops::Neg for &TowerElement {
    type Output = TowerElement;
    fn neg(self) -> TowerElement {
        TowerElement::neg(self)
    }
}

/// A tower automorphism, stored as the image of each generator. The images
/// are verified to be roots of the (mapped) minimal polynomials.
#[derive(Clone)]
pub struct TowerAutomorphism {
    spec: Arc<TowerSpec>,
    images: Vec<TowerElement>,
}

impl PartialEq for TowerAutomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl std::fmt::Debug for TowerAutomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let labels: Vec<&str> = self.spec.steps().iter().map(Step::label).collect();
        write!(f, "TowerAutomorphism{{")?;
        for (label, img) in labels.iter().zip(&self.images) {
            write!(f, " {label} -> {img:?};")?;
        }
        write!(f, " }}")
    }
}

impl TowerAutomorphism {
    pub fn identity(spec: &Arc<TowerSpec>) -> Self {
        let images = spec
            .steps()
            .iter()
            .map(|s| spec.generator(s.label()).expect("own label"))
            .collect();
        TowerAutomorphism { spec: Arc::clone(spec), images }
    }

    /// Builds an automorphism from generator images, verifying that each
    /// image is a root of its step's minimal polynomial with the lower-level
    /// coefficients mapped through the partial automorphism.
    pub fn from_images(spec: &Arc<TowerSpec>, images: Vec<TowerElement>) -> Result<Self> {
        if images.len() != spec.num_steps() {
            return Err(Error::InvalidParams(
                "one image per tower step is required".into(),
            ));
        }
        let auto = TowerAutomorphism { spec: Arc::clone(spec), images };
        for (i, step) in spec.steps().iter().enumerate() {
            let image = &auto.images[i];
            // Evaluate the mapped minimal polynomial at the image: the
            // coefficients live below level i, so the partial map (images of
            // generators < i) determines their image.
            let mut acc = spec.zero();
            for coeff in step.min_poly.iter().rev() {
                let lifted = TowerElement {
                    spec: Arc::clone(spec),
                    rep: spec.lift_rep(coeff.clone(), i, spec.num_steps()),
                };
                let mapped = auto.apply(&lifted);
                acc = acc.mul(image).add(&mapped);
            }
            if !acc.is_zero() {
                return Err(Error::InvalidParams(format!(
                    "image of `{}` is not a root of its minimal polynomial",
                    step.label
                )));
            }
        }
        Ok(auto)
    }

    /// Builds the automorphism that sends one named generator to the given
    /// image and fixes every other generator.
    pub fn sending(spec: &Arc<TowerSpec>, label: &str, image: TowerElement) -> Result<Self> {
        let idx = spec.step_index(label)?;
        let mut images = TowerAutomorphism::identity(spec).images;
        images[idx] = image;
        Self::from_images(spec, images)
    }

    pub fn spec(&self) -> &Arc<TowerSpec> {
        &self.spec
    }

    pub fn images(&self) -> &[TowerElement] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        *self == TowerAutomorphism::identity(&self.spec)
    }

    /// Ring-homomorphism image of an element; fixes all rationals.
    pub fn apply(&self, a: &TowerElement) -> TowerElement {
        fn eval(
            auto: &TowerAutomorphism,
            rep: &Nested,
            level: usize,
        ) -> TowerElement {
            match rep {
                Nested::Base(q) => auto.spec.rational(q.clone()),
                Nested::Ext(coords) => {
                    if coords.iter().skip(1).all(rep_is_zero) {
                        return eval(auto, &coords[0], level - 1);
                    }
                    let image = &auto.images[level - 1];
                    let mut acc = auto.spec.zero();
                    for c in coords.iter().rev() {
                        let c_img = eval(auto, c, level - 1);
                        acc = acc.mul(image).add(&c_img);
                    }
                    acc
                }
            }
        }
        assert!(a.same_spec_auto(self), "automorphism applied across specs");
        eval(self, &a.rep, self.spec.num_steps())
    }

    /// Composition: `(self.compose(inner)).apply(x) = self.apply(inner.apply(x))`.
    pub fn compose(&self, inner: &Self) -> Self {
        let images = inner.images.iter().map(|img| self.apply(img)).collect();
        TowerAutomorphism { spec: Arc::clone(&self.spec), images }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = TowerAutomorphism::identity(&self.spec);
        for _ in 0..e {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Order as a group element (caps at `bound` with an error).
    pub fn order(&self, bound: u64) -> Result<u64> {
        let mut acc = self.clone();
        for e in 1..=bound {
            if acc.is_identity() {
                return Ok(e);
            }
            acc = self.compose(&acc);
        }
        Err(Error::InvalidParams(format!("order exceeds bound {bound}")))
    }
}

impl TowerElement {
    fn same_spec_auto(&self, auto: &TowerAutomorphism) -> bool {
        Arc::ptr_eq(&self.spec, &auto.spec) || *self.spec == *auto.spec
    }
}

/// Finds all roots of the given step's minimal polynomial inside the tower.
///
/// One root is the generator itself; the quotient after deflation is
/// searched with exact candidate tests: scaling by a cube root of unity
/// present in the tower (pure power steps) and the Chebyshev image
/// 2r^2 - 1 (cyclic cosine steps). Candidates are verified by substitution,
/// so a returned root is always genuine; failure to locate one is an error
/// naming the step.
fn step_roots(spec: &Arc<TowerSpec>, step_index: usize) -> Result<Vec<TowerElement>> {
    let step = &spec.steps()[step_index];
    for coeff in &step.min_poly {
        if !matches!(project_rep(spec, coeff, step_index, &[]), Ok(_)) {
            return Err(Error::OutOfScope(format!(
                "step `{}` has non-rational minimal polynomial coefficients; \
                 automorphism enumeration supports rational coefficients only",
                step.label
            )));
        }
    }
    let ctx = spec.top_ctx();
    let min_poly: Vec<Nested> = step
        .min_poly
        .iter()
        .map(|c| spec.lift_rep(c.clone(), step_index, spec.num_steps()))
        .collect();
    let f_full = Poly::from_coeffs(&ctx, min_poly);

    // Cube roots of unity available in the tower, for pure power steps.
    let mut unit_scalars = Vec::new();
    for s in spec.steps() {
        let rational_coeffs: Option<Vec<Q>> = s
            .min_poly
            .iter()
            .map(|c| {
                TowerElement {
                    spec: Arc::clone(spec),
                    rep: spec.lift_rep(c.clone(), spec.step_index(s.label()).unwrap(), spec.num_steps()),
                }
                .as_rational()
            })
            .collect();
        if rational_coeffs
            == Some(vec![Q::one(), Q::one(), Q::one()])
        {
            let omega = spec.generator(s.label())?;
            let omega2 = omega.mul(&omega);
            unit_scalars.push(omega);
            unit_scalars.push(omega2);
        }
    }

    let generator = spec.generator(step.label())?;
    let mut roots = vec![generator.clone()];
    let mut remaining = f_full
        .exact_div(&ctx, &Poly::linear_root(&ctx, generator.rep()))
        .map_err(|_| Error::ConjugateRootsMissing { step: step.label.clone() })?;

    while let Some(d) = remaining.degree() {
        if d == 0 {
            break;
        }
        if d == 1 {
            let c0 = remaining.coeff(&ctx, 0);
            let c1 = remaining.coeff(&ctx, 1);
            let root_rep = ctx.neg(&ctx.div(&c0, &c1)?);
            roots.push(TowerElement { spec: Arc::clone(spec), rep: root_rep });
            break;
        }
        let mut candidates: Vec<TowerElement> = Vec::new();
        for r in &roots {
            for u in &unit_scalars {
                candidates.push(r.mul(u));
            }
            // 2r^2 - 1, the conjugation pattern of cos(2*pi/n) generators.
            let two_r2 = r.mul(r).scale(&Q::from_integer(BigInt::from(2)));
            candidates.push(two_r2.sub(&spec.one()));
        }
        let found = candidates.into_iter().find(|c| {
            !roots.contains(c) && ctx.is_zero(&remaining.eval(&ctx, c.rep()))
        });
        match found {
            Some(root) => {
                remaining = remaining
                    .exact_div(&ctx, &Poly::linear_root(&ctx, root.rep()))
                    .expect("verified root divides");
                roots.push(root);
            }
            None => return Err(Error::ConjugateRootsMissing { step: step.label.clone() }),
        }
    }
    Ok(roots)
}

/// Enumerates the full automorphism group of the tower as a list closed
/// under composition. Requires every step's conjugate roots to lie in the
/// tower; the size is the product of the step degrees for the abelian
/// towers built here.
pub fn enumerate_automorphisms(spec: &Arc<TowerSpec>) -> Result<Vec<TowerAutomorphism>> {
    let mut per_step_roots = Vec::new();
    for i in 0..spec.num_steps() {
        per_step_roots.push(step_roots(spec, i)?);
    }
    // Cartesian product of root choices, one per step.
    let mut assignments: Vec<Vec<TowerElement>> = vec![Vec::new()];
    for roots in &per_step_roots {
        let mut next = Vec::with_capacity(assignments.len() * roots.len());
        for partial in &assignments {
            for r in roots {
                let mut ext = partial.clone();
                ext.push(r.clone());
                next.push(ext);
            }
        }
        assignments = next;
    }
    let mut autos = Vec::with_capacity(assignments.len());
    for images in assignments {
        autos.push(TowerAutomorphism::from_images(spec, images)?);
    }
    Ok(autos)
}

/// Relative norm down the top step: the product of the conjugates of `a`
/// over the sub-tower below, computed as Res(m, a) with m the top minimal
/// polynomial. The result has zero coordinates beyond the constant in the
/// top generator.
pub fn relative_norm(a: &TowerElement, step_label: &str) -> Result<TowerElement> {
    let spec = a.spec();
    let n = spec.num_steps();
    if n == 0 {
        return Err(Error::UnknownStep(step_label.to_string()));
    }
    let top = &spec.steps()[n - 1];
    if top.label() != step_label {
        return Err(Error::InvalidParams(format!(
            "step `{step_label}` is not the top step of the tower"
        )));
    }
    let lower = spec.level_ctx(n - 1);
    let coords = match a.rep() {
        Nested::Ext(coords) => coords.clone(),
        Nested::Base(_) => unreachable!("top level of a stepped tower"),
    };
    let a_poly = Poly::from_coeffs(&lower, coords);
    let m_poly = Poly::from_coeffs(&lower, top.min_poly.clone());
    let norm_rep = resultant(&lower, &m_poly, &a_poly)?;
    Ok(TowerElement::from_rep(
        Arc::clone(spec),
        spec.lift_rep(norm_rep, n - 1, n),
    ))
}

/// Outcome of the exact square decision.
#[derive(Clone, Debug, PartialEq)]
pub enum SquareDecision {
    Square(TowerElement),
    NotSquare,
}

impl SquareDecision {
    pub fn is_square(&self) -> bool {
        matches!(self, SquareDecision::Square(_))
    }

    pub fn witness(&self) -> Option<&TowerElement> {
        match self {
            SquareDecision::Square(w) => Some(w),
            SquareDecision::NotSquare => None,
        }
    }
}

/// Decides exactly whether `a` is a square in its tower, with a witness on
/// success. Scope: towers of quadratic steps with total degree <= 4 (all
/// the squareness decisions needed here live in Q or Q(zeta3)); anything
/// larger reports out of scope.
pub fn is_square(a: &TowerElement) -> Result<SquareDecision> {
    let spec = a.spec();
    if spec.degree() > 4 {
        return Err(Error::OutOfScope(format!(
            "square decision limited to tower degree <= 4, got {}",
            spec.degree()
        )));
    }
    if spec.steps().iter().any(|s| s.degree() != 2) {
        return Err(Error::OutOfScope(
            "square decision implemented for towers of quadratic steps".into(),
        ));
    }
    let decision = is_square_rep(spec, a.rep(), spec.num_steps())?;
    if let Some(w) = &decision {
        debug_assert_eq!(w.mul(w), *a, "square witness must verify");
    }
    Ok(match decision {
        Some(w) => SquareDecision::Square(w),
        None => SquareDecision::NotSquare,
    })
}

fn is_square_rep(
    spec: &Arc<TowerSpec>,
    rep: &Nested,
    level: usize,
) -> Result<Option<TowerElement>> {
    let lift = |r: &Nested, from: usize| -> TowerElement {
        TowerElement::from_rep(Arc::clone(spec), spec.lift_rep(r.clone(), from, spec.num_steps()))
    };
    match rep {
        Nested::Base(q) => Ok(arith::rational_sqrt(q).map(|w| {
            TowerElement::from_rep(
                Arc::clone(spec),
                spec.rational_rep(spec.num_steps(), w),
            )
        })),
        Nested::Ext(coords) => {
            let lower = spec.level_ctx(level - 1);
            let step = &spec.steps()[level - 1];
            // Complete the square: with m = x^2 + b x + c the shifted
            // generator g' = g + b/2 satisfies g'^2 = b^2/4 - c =: s.
            let b = &step.min_poly[1];
            let c = &step.min_poly[0];
            let half = spec.rational_rep(level - 1, Q::new(BigInt::one(), BigInt::from(2)));
            let quarter = spec.rational_rep(level - 1, Q::new(BigInt::one(), BigInt::from(4)));
            let s = lower.sub(&lower.mul(&lower.mul(b, b), &quarter), c);
            if lower.is_zero(&s) {
                return Err(Error::ReducibleStep { step: step.label.clone() });
            }
            // Coordinates in the shifted basis: a = A + B g'.
            let a0 = &coords[0];
            let a1 = &coords[1];
            let big_a = lower.sub(a0, &lower.mul(&lower.mul(a1, b), &half));
            let big_b = a1.clone();

            let half_b_rep = lower.mul(b, &half);
            // Rebuild a witness x + y g' as (x + y b/2) + y g in the
            // original basis.
            let make_witness = |x: &Nested, y: &Nested| -> TowerElement {
                let const_part = lower.add(x, &lower.mul(y, &half_b_rep));
                let rep = Nested::Ext(vec![const_part, y.clone()]);
                lift(&rep, level)
            };

            if lower.is_zero(&big_b) {
                // w = x with x^2 = A, or w = y g' with s y^2 = A.
                if let Some(x) = is_square_rep(spec, &big_a, level - 1)? {
                    let x_rep = lower_rep_of(spec, &x, level - 1)?;
                    return Ok(Some(make_witness(&x_rep, &lower.zero())));
                }
                let target = lower.div(&big_a, &s)?;
                if let Some(y) = is_square_rep(spec, &target, level - 1)? {
                    let y_rep = lower_rep_of(spec, &y, level - 1)?;
                    return Ok(Some(make_witness(&lower.zero(), &y_rep)));
                }
                return Ok(None);
            }

            // w = x + y g' with y != 0: x = B/(2y) and t = y^2 satisfies
            // s t^2 - A t + B^2/4 = 0, so t = (A +/- sqrt(A^2 - s B^2)) / (2 s).
            let norm = lower.sub(
                &lower.mul(&big_a, &big_a),
                &lower.mul(&s, &lower.mul(&big_b, &big_b)),
            );
            let Some(d) = is_square_rep(spec, &norm, level - 1)? else {
                return Ok(None);
            };
            let d_rep = lower_rep_of(spec, &d, level - 1)?;
            let two_s = lower.add(&s, &s);
            for d_signed in [d_rep.clone(), lower.neg(&d_rep)] {
                let t = lower.div(&lower.add(&big_a, &d_signed), &two_s)?;
                if let Some(y) = is_square_rep(spec, &t, level - 1)? {
                    let y_rep = lower_rep_of(spec, &y, level - 1)?;
                    if lower.is_zero(&y_rep) {
                        continue;
                    }
                    let two_y = lower.add(&y_rep, &y_rep);
                    let x = lower.div(&big_b, &two_y)?;
                    return Ok(Some(make_witness(&x, &y_rep)));
                }
            }
            Ok(None)
        }
    }
}

/// Extracts the level-`level` representation of an element known to live in
/// the sub-tower of that level.
fn lower_rep_of(
    spec: &Arc<TowerSpec>,
    elem: &TowerElement,
    level: usize,
) -> Result<Nested> {
    fn strip(rep: &Nested, levels_to_strip: usize) -> Result<Nested> {
        if levels_to_strip == 0 {
            return Ok(rep.clone());
        }
        match rep {
            Nested::Ext(coords) => {
                if coords.iter().skip(1).any(|c| !rep_is_zero(c)) {
                    return Err(Error::InvalidParams(
                        "element does not lie in the claimed sub-tower".into(),
                    ));
                }
                strip(&coords[0], levels_to_strip - 1)
            }
            Nested::Base(_) => Err(Error::InvalidParams("level underflow".into())),
        }
    }
    strip(elem.rep(), spec.num_steps() - level)
}

/// The power-product basis of the tower over Q: all products of generator
/// powers below each step degree, in mixed-radix order.
pub fn power_basis(spec: &Arc<TowerSpec>) -> Vec<TowerElement> {
    let mut basis = vec![spec.one()];
    for step in spec.steps() {
        let gen = spec.generator(step.label()).expect("own label");
        let mut next = basis.clone();
        let mut gen_pow = gen.clone();
        for _ in 1..step.degree() {
            for b in &basis {
                next.push(b.mul(&gen_pow));
            }
            gen_pow = gen_pow.mul(&gen);
        }
        basis = next;
    }
    basis
}

/// Convenience: the tower Q(zeta3).
pub fn spec_q_zeta3() -> Arc<TowerSpec> {
    TowerSpec::builder().zeta3().unwrap().build()
}

/// Convenience: Q(zeta3, sqrt(u), sqrt(v)), the coefficient field of the
/// sextic family.
pub fn spec_l(u: &Q, v: &Q) -> Result<Arc<TowerSpec>> {
    Ok(TowerSpec::builder()
        .zeta3()?
        .sqrt("sqrt_u", u.clone())?
        .sqrt("sqrt_v", v.clone())?
        .build())
}

/// Convenience: L(cbrt(p)).
pub fn spec_l_cbrt(u: &Q, v: &Q, p: u64) -> Result<Arc<TowerSpec>> {
    Ok(TowerSpec::builder()
        .zeta3()?
        .sqrt("sqrt_u", u.clone())?
        .sqrt("sqrt_v", v.clone())?
        .cbrt("cbrt_p", Q::from_integer(BigInt::from(p)))?
        .build())
}

/// Convenience: M' = L(cos(2*pi/7), cbrt(p)), where the descent cocycle
/// lives.
pub fn spec_m_prime(u: &Q, v: &Q, p: u64) -> Result<Arc<TowerSpec>> {
    Ok(TowerSpec::builder()
        .zeta3()?
        .sqrt("sqrt_u", u.clone())?
        .sqrt("sqrt_v", v.clone())?
        .cos_2pi_7()?
        .cbrt("cbrt_p", Q::from_integer(BigInt::from(p)))?
        .build())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn q(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }

    fn qi(n: i64) -> Q {
        Q::from_i64(n).unwrap()
    }

    #[test]
    fn zeta3_arithmetic() {
        let spec = spec_q_zeta3();
        let z = spec.generator("zeta3").unwrap();
        let z2 = z.mul(&z);
        // zeta3 * zeta3^2 = zeta3^3 = 1
        assert_eq!(z.mul(&z2), spec.one());
        // zeta3 + zeta3^2 = -1
        assert_eq!(z.add(&z2), spec.integer(-1));
    }

    #[test]
    fn sqrt2_inverse() {
        let spec = TowerSpec::builder().sqrt("sqrt2", qi(2)).unwrap().build();
        let s = spec.generator("sqrt2").unwrap();
        // (sqrt2)^{-1} = sqrt2 / 2
        let inv = s.inv().unwrap();
        assert_eq!(inv, s.scale(&q(1, 2)));
        assert_eq!(s.mul(&inv), spec.one());
    }

    #[test]
    fn automorphism_conjugates_c_psi2() {
        // sqrt(u) -> -sqrt(u) on c = sqrt(u)+sqrt(v)+sqrt(uv)-1/12 gives
        // -sqrt(u)+sqrt(v)-sqrt(uv)-1/12.
        let spec = spec_l(&qi(2), &qi(13)).unwrap();
        let su = spec.generator("sqrt_u").unwrap();
        let sv = spec.generator("sqrt_v").unwrap();
        let suv = su.mul(&sv);
        let c = su.add(&sv).add(&suv).sub(&spec.rational(q(1, 12)));
        let conj = TowerAutomorphism::sending(&spec, "sqrt_u", su.neg()).unwrap();
        let expected = su
            .neg()
            .add(&sv)
            .sub(&suv)
            .sub(&spec.rational(q(1, 12)));
        assert_eq!(conj.apply(&c), expected);
        // identity fixes everything
        let id = TowerAutomorphism::identity(&spec);
        assert_eq!(id.apply(&c), c);
    }

    #[test]
    fn enumerate_quadratic_towers() {
        let spec = spec_q_zeta3();
        assert_eq!(enumerate_automorphisms(&spec).unwrap().len(), 2);

        let spec = TowerSpec::builder()
            .zeta3()
            .unwrap()
            .sqrt("sqrt2", qi(2))
            .unwrap()
            .sqrt("sqrt13", qi(13))
            .unwrap()
            .build();
        let autos = enumerate_automorphisms(&spec).unwrap();
        assert_eq!(autos.len(), 8);
        // closed under composition
        for a in &autos {
            for b in &autos {
                let c = a.compose(b);
                assert!(autos.contains(&c));
            }
        }
    }

    #[test]
    fn enumerate_cbrt_without_zeta3_fails() {
        let spec = TowerSpec::builder().cbrt("cbrt2", qi(2)).unwrap().build();
        match enumerate_automorphisms(&spec) {
            Err(Error::ConjugateRootsMissing { step }) => assert_eq!(step, "cbrt2"),
            other => panic!("expected missing conjugates, got {other:?}"),
        }
    }

    #[test]
    fn enumerate_cbrt_with_zeta3() {
        let spec = TowerSpec::builder()
            .zeta3()
            .unwrap()
            .cbrt("cbrt5", qi(5))
            .unwrap()
            .build();
        let autos = enumerate_automorphisms(&spec).unwrap();
        assert_eq!(autos.len(), 6);
    }

    #[test]
    fn enumerate_cos_tower() {
        let spec = TowerSpec::builder().cos_2pi_7().unwrap().build();
        let autos = enumerate_automorphisms(&spec).unwrap();
        assert_eq!(autos.len(), 3);
        let nontrivial: Vec<_> = autos.iter().filter(|a| !a.is_identity()).collect();
        assert_eq!(nontrivial[0].order(10).unwrap(), 3);
    }

    #[test]
    fn relative_norm_quadratic() {
        // N(x + y sqrt(-v)) = x^2 + v y^2 down one quadratic step.
        let spec = TowerSpec::builder()
            .sqrt("sqrt_neg13", qi(-13))
            .unwrap()
            .build();
        let s = spec.generator("sqrt_neg13").unwrap();
        let x = spec.integer(3);
        let y = spec.integer(2);
        let elem = x.add(&y.mul(&s)); // 3 + 2 sqrt(-13)
        let n = relative_norm(&elem, "sqrt_neg13").unwrap();
        // 9 + 13*4 = 61
        assert_eq!(n, spec.integer(61));
        // norm of 1 is 1, norm of sqrt(-v) is v
        assert_eq!(relative_norm(&spec.one(), "sqrt_neg13").unwrap(), spec.one());
        assert_eq!(relative_norm(&s, "sqrt_neg13").unwrap(), spec.integer(13));
    }

    #[test]
    fn squares_in_q_and_q_zeta3() {
        let spec = spec_q_zeta3();
        // -1 is not a square in Q(zeta3)
        let minus_one = spec.integer(-1);
        assert!(!is_square(&minus_one).unwrap().is_square());
        // zeta3^2 is a square with witness zeta3 (up to sign)
        let z = spec.generator("zeta3").unwrap();
        let z2 = z.mul(&z);
        let dec = is_square(&z2).unwrap();
        let w = dec.witness().expect("zeta3^2 is a square");
        assert_eq!(w.mul(w), z2);
        // 4 is a square in Q
        let qspec = TowerSpec::rationals();
        let four = qspec.integer(4);
        assert_eq!(
            is_square(&four).unwrap().witness().unwrap().as_rational().unwrap(),
            qi(2)
        );
        // scope guard
        let big = spec_l_cbrt(&qi(2), &qi(13), 3).unwrap();
        assert!(matches!(is_square(&big.one()), Err(Error::OutOfScope(_))));
    }

    #[test]
    fn project_and_embed_round_trip() {
        let big = spec_l(&qi(2), &qi(13)).unwrap();
        let sub = big.sub_spec(&["zeta3", "sqrt_u"]).unwrap();
        let z = big.generator("zeta3").unwrap();
        let su = big.generator("sqrt_u").unwrap();
        let elem = z.mul(&su).add(&big.rational(q(1, 3)));
        let projected = elem.project_to(&sub).unwrap();
        let back = projected.embed_into(&big).unwrap();
        assert_eq!(back, elem);
        // an element using sqrt_v cannot project
        let sv = big.generator("sqrt_v").unwrap();
        assert!(elem.add(&sv).project_to(&sub).is_err());
    }

    #[test]
    fn reducible_step_detected_on_inversion() {
        // x^2 - 4 = (x-2)(x+2) is reducible over Q; inverting g - 2 hits a
        // zero divisor.
        let spec = TowerSpec::builder().sqrt("bogus", qi(4)).unwrap().build();
        let g = spec.generator("bogus").unwrap();
        let z = g.sub(&spec.integer(2));
        match z.inv() {
            Err(Error::ReducibleStep { step }) => assert_eq!(step, "bogus"),
            other => panic!("expected reducible step, got {other:?}"),
        }
    }
}
