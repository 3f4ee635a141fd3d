//! Finite fields and reduction of tower data modulo a prime.
//!
//! A [`FinitePlacement`] fixes a prime q, an extension degree m and an image
//! in F_{q^m} for every tower generator, subject to a denominator guard. It
//! is the bridge the smoothness probe uses to move a characteristic-zero
//! form into a small finite field.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::tower::{TowerElement, TowerSpec};
use crate::upoly::Poly;

/// Z/qZ for a prime q, elements as canonical u64 residues.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Self {
        debug_assert!(arith::is_prime_u64(q));
        PrimeField { q }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn from_bigint(&self, n: &BigInt) -> u64 {
        let r = n.mod_floor(&BigInt::from(self.q));
        r.to_u64().expect("reduced residue fits")
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.q
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        arith::mul_mod(*a, *b, self.q)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.q - a
        }
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(arith::pow_mod(*a, self.q - 2, self.q))
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.q as i64) as u64
    }
    fn characteristic(&self) -> Option<u64> {
        Some(self.q)
    }
    fn sample_point(&self, index: u64) -> Option<u64> {
        (index < self.q).then_some(index)
    }
}

/// Extension of an arbitrary finite field by a monic irreducible modulus.
/// Elements are fixed-length coefficient vectors over the base.
#[derive(Clone)]
pub struct ExtField<F: Field> {
    base: F,
    /// Monic modulus, ascending coefficients including the leading 1.
    modulus: Vec<F::Elem>,
}

impl<F: Field> ExtField<F> {
    pub fn new(base: F, modulus: Vec<F::Elem>) -> Self {
        debug_assert!(modulus.len() >= 2);
        ExtField { base, modulus }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn ext_degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[F::Elem] {
        &self.modulus
    }

    /// Embeds a base-field element as a constant.
    pub fn embed(&self, c: F::Elem) -> Vec<F::Elem> {
        let mut v = vec![self.base.zero(); self.ext_degree()];
        v[0] = c;
        v
    }

    /// The residue class of the adjoined variable.
    pub fn gen(&self) -> Vec<F::Elem> {
        let d = self.ext_degree();
        let mut v = vec![self.base.zero(); d];
        if d >= 2 {
            v[1] = self.base.one();
        }
        v
    }

    fn to_poly(&self, a: &[F::Elem]) -> Poly<F> {
        Poly::from_coeffs(&self.base, a.to_vec())
    }

    fn from_poly(&self, p: Poly<F>) -> Vec<F::Elem> {
        let d = self.ext_degree();
        let mut coeffs = p.coeffs().to_vec();
        debug_assert!(coeffs.len() <= d);
        coeffs.resize(d, self.base.zero());
        coeffs
    }
}

impl<F: Field> Field for ExtField<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Vec<F::Elem> {
        vec![self.base.zero(); self.ext_degree()]
    }
    fn one(&self) -> Vec<F::Elem> {
        self.embed(self.base.one())
    }
    fn is_zero(&self, a: &Vec<F::Elem>) -> bool {
        a.iter().all(|c| self.base.is_zero(c))
    }
    fn add(&self, a: &Vec<F::Elem>, b: &Vec<F::Elem>) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<F::Elem>, b: &Vec<F::Elem>) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<F::Elem>) -> Vec<F::Elem> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<F::Elem>, b: &Vec<F::Elem>) -> Vec<F::Elem> {
        let d = self.ext_degree();
        let mut conv = vec![self.base.zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                conv[i + j] = self.base.add(&conv[i + j], &self.base.mul(x, y));
            }
        }
        for i in (d..2 * d - 1).rev() {
            let c = std::mem::replace(&mut conv[i], self.base.zero());
            if self.base.is_zero(&c) {
                continue;
            }
            for j in 0..d {
                let t = self.base.mul(&c, &self.modulus[j]);
                conv[i - d + j] = self.base.sub(&conv[i - d + j], &t);
            }
        }
        conv.truncate(d);
        conv
    }
    fn inv(&self, a: &Vec<F::Elem>) -> Result<Vec<F::Elem>> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let a_poly = self.to_poly(a);
        let m_poly = Poly::from_coeffs(&self.base, self.modulus.clone());
        let (g, s, _) = a_poly.ext_gcd(&self.base, &m_poly)?;
        if g.degree() != Some(0) {
            return Err(Error::InadmissiblePlacement(
                "extension modulus is not irreducible".into(),
            ));
        }
        Ok(self.from_poly(s))
    }
    fn from_i64(&self, n: i64) -> Vec<F::Elem> {
        self.embed(self.base.from_i64(n))
    }
    fn characteristic(&self) -> Option<u64> {
        self.base.characteristic()
    }
    fn sample_point(&self, index: u64) -> Option<Vec<F::Elem>> {
        // Mixed-radix enumeration over the base field.
        let mut idx = index;
        let mut out = Vec::with_capacity(self.ext_degree());
        let base_order = {
            // number of base sample points = base order for finite bases
            let mut n = 0u64;
            while self.base.sample_point(n).is_some() {
                n += 1;
                if n > 1 << 20 {
                    return None; // effectively infinite base; not enumerable
                }
            }
            n
        };
        for _ in 0..self.ext_degree() {
            let digit = idx % base_order;
            out.push(self.base.sample_point(digit)?);
            idx /= base_order;
        }
        (idx == 0).then_some(out)
    }
}

/// Finite fields with known order and a canonical element ordering.
pub trait FiniteOrder: Field {
    fn order(&self) -> u64;
    fn canonical_key(&self, e: &Self::Elem) -> Vec<u64>;
}

impl FiniteOrder for PrimeField {
    fn order(&self) -> u64 {
        self.q
    }
    fn canonical_key(&self, e: &u64) -> Vec<u64> {
        vec![*e]
    }
}

impl<F: FiniteOrder> FiniteOrder for ExtField<F> {
    fn order(&self) -> u64 {
        self.base.order().pow(self.ext_degree() as u32)
    }
    fn canonical_key(&self, e: &Vec<F::Elem>) -> Vec<u64> {
        e.iter().flat_map(|c| self.base.canonical_key(c)).collect()
    }
}

/// x^e mod f by square-and-multiply on polynomials.
fn x_pow_mod<C: Field>(ctx: &C, e: u64, f: &Poly<C>) -> Result<Poly<C>> {
    let x = Poly::monomial(ctx, ctx.one(), 1);
    pow_mod_poly(ctx, &x, e, f)
}

fn pow_mod_poly<C: Field>(ctx: &C, base: &Poly<C>, mut e: u64, f: &Poly<C>) -> Result<Poly<C>> {
    let mut acc = Poly::constant(ctx, ctx.one());
    let mut b = base.rem(ctx, f)?;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(ctx, &b).rem(ctx, f)?;
        }
        b = b.mul(ctx, &b).rem(ctx, f)?;
        e >>= 1;
    }
    Ok(acc)
}

/// All roots of `f` in the (finite) coefficient field, sorted canonically.
pub fn linear_roots<C: FiniteOrder>(ctx: &C, f: &Poly<C>) -> Result<Vec<C::Elem>> {
    if f.is_zero() {
        return Err(Error::InvalidParams("zero polynomial has every root".into()));
    }
    let order = ctx.order();
    // Product of the distinct linear factors: gcd(f, x^|K| - x).
    let xq = x_pow_mod(ctx, order, f)?;
    let x = Poly::monomial(ctx, ctx.one(), 1);
    let lin = f.gcd(ctx, &xq.sub(ctx, &x))?;
    let mut roots = Vec::new();
    split_linear(ctx, lin, &mut roots)?;
    roots.sort_by_key(|r| ctx.canonical_key(r));
    Ok(roots)
}

fn split_linear<C: FiniteOrder>(ctx: &C, g: Poly<C>, out: &mut Vec<C::Elem>) -> Result<()> {
    match g.degree() {
        None | Some(0) => Ok(()),
        Some(1) => {
            // monic gcd chain keeps g monic; root = -c0
            let c0 = g.coeff(ctx, 0);
            let c1 = g.coeff(ctx, 1);
            out.push(ctx.neg(&ctx.div(&c0, &c1)?));
            Ok(())
        }
        Some(_) => {
            let order = ctx.order();
            if order % 2 == 0 {
                // Characteristic 2: fields in play are tiny, enumerate.
                let mut idx = 0u64;
                while let Some(e) = ctx.sample_point(idx) {
                    if ctx.is_zero(&g.eval(ctx, &e)) {
                        out.push(e);
                    }
                    idx += 1;
                }
                return Ok(());
            }
            // Equal-degree splitting for degree-1 factors: for a sweep of
            // shifts a, gcd(g, (x+a)^((|K|-1)/2) - 1) separates roots.
            let mut shift = 0u64;
            loop {
                let a = ctx
                    .sample_point(shift)
                    .ok_or_else(|| Error::InvalidParams("field exhausted while splitting".into()))?;
                shift += 1;
                let base = Poly::from_coeffs(ctx, vec![a, ctx.one()]);
                let pw = pow_mod_poly(ctx, &base, (order - 1) / 2, &g)?;
                let h = g.gcd(ctx, &pw.sub(ctx, &Poly::constant(ctx, ctx.one())))?;
                let hd = h.deg_or_zero();
                if hd > 0 && hd < g.deg_or_zero() {
                    let rest = g.exact_div(ctx, &h)?;
                    split_linear(ctx, h, out)?;
                    split_linear(ctx, rest, out)?;
                    return Ok(());
                }
            }
        }
    }
}

/// Deterministic irreducible monic polynomial of degree `m` over F_q.
fn find_irreducible(fp: &PrimeField, m: usize) -> Result<Poly<PrimeField>> {
    if m == 1 {
        return Ok(Poly::from_coeffs(fp, vec![0, 1]));
    }
    let q = fp.modulus();
    // Enumerate monic polys x^m + c_{m-1} x^{m-1} + ... + c_0 in canonical
    // order and keep the first irreducible one.
    let total = (q as u128).pow(m as u32);
    let mut counter: u128 = 0;
    while counter < total {
        let mut coeffs = Vec::with_capacity(m + 1);
        let mut idx = counter;
        for _ in 0..m {
            coeffs.push((idx % q as u128) as u64);
            idx /= q as u128;
        }
        coeffs.push(1);
        counter += 1;
        let f = Poly::from_coeffs(fp, coeffs);
        if is_irreducible(fp, &f)? {
            return Ok(f);
        }
    }
    Err(Error::InadmissiblePlacement(format!(
        "no irreducible polynomial of degree {m} over F_{q}"
    )))
}

/// Rabin irreducibility test: f of degree m is irreducible iff
/// x^{q^m} = x mod f and gcd(x^{q^{m/l}} - x, f) = 1 for primes l | m.
fn is_irreducible(fp: &PrimeField, f: &Poly<PrimeField>) -> Result<bool> {
    let m = f.deg_or_zero();
    let q = fp.modulus();
    let x = Poly::monomial(fp, fp.one(), 1);
    let q_pow = |e: u32| -> u64 { q.pow(e) };
    for l in 2..=m {
        if m % l == 0 && arith::is_prime_u64(l as u64) {
            let e = (m / l) as u32;
            let xq = x_pow_mod(fp, q_pow(e), f)?;
            let g = f.gcd(fp, &xq.sub(fp, &x))?;
            if g.deg_or_zero() != 0 {
                return Ok(false);
            }
        }
    }
    let xqm = x_pow_mod(fp, q_pow(m as u32), f)?;
    Ok(xqm.sub(fp, &x).is_zero())
}

/// The concrete finite field used by placements: F_q[t]/(pi(t)).
pub type Fq = ExtField<PrimeField>;
pub type FqElem = Vec<u64>;

/// A prime q, an extension degree m and an image of every tower generator
/// in F_{q^m}, plus the set of denominators that must remain q-units.
#[derive(Clone)]
pub struct FinitePlacement {
    spec: Arc<TowerSpec>,
    q: u64,
    m: usize,
    field: Fq,
    images: Vec<FqElem>,
    guard: Vec<BigInt>,
}

impl FinitePlacement {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn extension_degree(&self) -> usize {
        self.m
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn spec(&self) -> &Arc<TowerSpec> {
        &self.spec
    }

    pub fn generator_images(&self) -> &[FqElem] {
        &self.images
    }

    /// Denominators from the spec's minimal polynomials that this placement
    /// guarantees to be q-units.
    pub fn guarded_denominators(&self) -> &[BigInt] {
        &self.guard
    }

    /// Reduces a tower element to F_{q^m}; errors if a denominator is not a
    /// q-unit.
    pub fn reduce(&self, a: &TowerElement) -> Result<FqElem> {
        if !Arc::ptr_eq(a.spec(), &self.spec) && **a.spec() != *self.spec {
            return Err(Error::SpecMismatch);
        }
        reduce_rep(&self.field, &self.images, a)
    }
}

fn reduce_rep(field: &Fq, images: &[FqElem], a: &TowerElement) -> Result<FqElem> {
    use crate::tower::Nested;
    fn walk(field: &Fq, images: &[FqElem], rep: &Nested, level: usize) -> Result<FqElem> {
        match rep {
            Nested::Base(q) => {
                let fp = field.base();
                let den = fp.from_bigint(q.denom());
                if den == 0 {
                    return Err(Error::InadmissiblePlacement(format!(
                        "denominator {} vanishes mod {}",
                        q.denom(),
                        fp.modulus()
                    )));
                }
                let num = fp.from_bigint(q.numer());
                let v = fp.mul(&num, &fp.inv(&den)?);
                Ok(field.embed(v))
            }
            Nested::Ext(coords) => {
                let img = &images[level - 1];
                let mut acc = field.zero();
                for c in coords.iter().rev() {
                    let c_red = walk(field, images, c, level - 1)?;
                    acc = field.add(&field.mul(&acc, img), &c_red);
                }
                Ok(acc)
            }
        }
    }
    walk(field, images, a.rep(), a.spec().num_steps())
}

/// Collects every denominator appearing in the spec's minimal polynomials.
fn spec_denominators(spec: &TowerSpec) -> Vec<BigInt> {
    use crate::tower::Nested;
    fn walk(rep: &Nested, out: &mut Vec<BigInt>) {
        match rep {
            Nested::Base(q) => {
                let d = q.denom().abs();
                if !d.is_zero() && d != BigInt::from(1) && !out.contains(&d) {
                    out.push(d);
                }
            }
            Nested::Ext(coords) => coords.iter().for_each(|c| walk(c, out)),
        }
    }
    let mut out = Vec::new();
    for step in spec.steps() {
        for c in step.min_poly_internal() {
            walk(c, &mut out);
        }
    }
    out
}

/// Finds an admissible placement with q <= qmax and extension degree
/// m <= 6: every generator must have an image in F_{q^m}, every reduced
/// minimal polynomial must stay separable (unramified reduction), and no
/// guarded denominator may vanish. The search is m-major — all primes at
/// m = 1, then m = 2, ... — so a split prime always beats an inert one,
/// and within a degree the smallest prime wins. Root choices follow the
/// canonical element order with backtracking; the result is deterministic
/// in (spec, qmax).
pub fn find_placement(spec: &Arc<TowerSpec>, qmax: u64) -> Result<FinitePlacement> {
    find_placement_above(spec, 1, qmax)
}

/// As [`find_placement`], restricted to primes strictly above `qmin`; used
/// to sweep successive placements.
pub fn find_placement_above(
    spec: &Arc<TowerSpec>,
    qmin: u64,
    qmax: u64,
) -> Result<FinitePlacement> {
    if qmax < 2 {
        return Err(Error::InvalidParams("qmax must be >= 2".into()));
    }
    let guard = spec_denominators(spec);
    let primes: Vec<u64> = arith::primes_up_to(qmax)
        .into_iter()
        .filter(|&q| q > qmin)
        .collect();
    for m in 1..=6usize {
        'primes: for &q in &primes {
            for d in &guard {
                if d.mod_floor(&BigInt::from(q)).is_zero() {
                    continue 'primes;
                }
            }
            let fp = PrimeField::new(q);
            let modulus = match find_irreducible(&fp, m) {
                Ok(f) => {
                    let mut c = f.coeffs().to_vec();
                    c.resize(m + 1, 0);
                    c
                }
                Err(_) => continue,
            };
            let field = ExtField::new(fp, modulus);
            match assign_images(spec, &field, 0, &mut Vec::new()) {
                Ok(Some(images)) => {
                    return Ok(FinitePlacement {
                        spec: Arc::clone(spec),
                        q,
                        m,
                        field,
                        images,
                        guard: guard.clone(),
                    });
                }
                Ok(None) | Err(_) => continue,
            }
        }
    }
    Err(Error::NoAdmissiblePrime { qmax })
}

/// Depth-first assignment of generator images; each step's minimal
/// polynomial is reduced through the images chosen so far, then its roots
/// in F_{q^m} are tried in canonical order.
fn assign_images(
    spec: &Arc<TowerSpec>,
    field: &Fq,
    level: usize,
    chosen: &mut Vec<FqElem>,
) -> Result<Option<Vec<FqElem>>> {
    if level == spec.num_steps() {
        return Ok(Some(chosen.clone()));
    }
    let step = &spec.steps()[level];
    let mut reduced = Vec::with_capacity(step.degree() + 1);
    for c in step.min_poly_internal() {
        use crate::tower::Nested;
        fn walk(field: &Fq, images: &[FqElem], rep: &Nested, lvl: usize) -> Result<FqElem> {
            match rep {
                Nested::Base(q) => {
                    let fp = field.base();
                    let den = fp.from_bigint(q.denom());
                    if den == 0 {
                        return Err(Error::InadmissiblePlacement(format!(
                            "denominator {} vanishes mod {}",
                            q.denom(),
                            fp.modulus()
                        )));
                    }
                    let num = fp.from_bigint(q.numer());
                    Ok(field.embed(fp.mul(&num, &fp.inv(&den)?)))
                }
                Nested::Ext(coords) => {
                    let img = &images[lvl - 1];
                    let mut acc = field.zero();
                    for c in coords.iter().rev() {
                        let c_red = walk(field, images, c, lvl - 1)?;
                        acc = field.add(&field.mul(&acc, img), &c_red);
                    }
                    Ok(acc)
                }
            }
        }
        reduced.push(walk(field, chosen, c, level)?);
    }
    let f = Poly::from_coeffs(field, reduced);
    if f.deg_or_zero() != step.degree() {
        // Leading coefficient vanished; cannot happen for monic polys.
        return Ok(None);
    }
    // Reject ramified reductions: the reduced minimal polynomial must stay
    // separable for the placement to certify anything upstairs.
    let sep = f.gcd(field, &f.derivative(field))?;
    if sep.deg_or_zero() != 0 {
        return Ok(None);
    }
    for root in linear_roots(field, &f)? {
        chosen.push(root);
        if let Some(done) = assign_images(spec, field, level + 1, chosen)? {
            return Ok(Some(done));
        }
        chosen.pop();
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tower::spec_q_zeta3;
    use num_rational::BigRational;

    #[test]
    fn zeta3_placement_split_prime_first() {
        // 7 = 1 mod 3, so x^2+x+1 splits already in F_7; q=3 is ramified
        // ((x-1)^2 mod 3) and q=2,5 are inert, so the m-major search lands
        // on q=7, m=1.
        let spec = spec_q_zeta3();
        let placement = find_placement(&spec, 10).unwrap();
        assert_eq!((placement.q(), placement.extension_degree()), (7, 1));
    }

    #[test]
    fn zeta3_placement_inert_fallback() {
        // With qmax = 2 no split prime exists; x^2+x+1 is irreducible and
        // separable mod 2, so the search settles on q=2 with m=2.
        let spec = spec_q_zeta3();
        let placement = find_placement(&spec, 2).unwrap();
        assert_eq!((placement.q(), placement.extension_degree()), (2, 2));
        // direct factorization oracle: x^2+x+1 has no root in F_2
        let fp = PrimeField::new(2);
        let f = Poly::from_coeffs(&fp, vec![1, 1, 1]);
        assert!(linear_roots(&fp, &f).unwrap().is_empty());
    }

    #[test]
    fn zeta3_placement_excluding_two() {
        // A guard denominator of 2 pushes the search past q=2.
        let spec = crate::tower::TowerSpec::builder()
            .zeta3()
            .unwrap()
            .sqrt(
                "half_sqrt",
                BigRational::new(num_bigint::BigInt::from(1), num_bigint::BigInt::from(2)),
            )
            .unwrap()
            .build();
        let placement = find_placement(&spec, 50).unwrap();
        assert!(placement.q() > 2);
        // the image of each generator is a root of its reduced min poly
        let z_img = &placement.generator_images()[0];
        let field = placement.field();
        let one = field.one();
        let sum = field.add(&field.add(&field.mul(z_img, z_img), z_img), &one);
        assert!(field.is_zero(&sum));
    }

    #[test]
    fn reduction_is_multiplicative() {
        let spec = spec_q_zeta3();
        let placement = find_placement(&spec, 20).unwrap();
        let z = spec.generator("zeta3").unwrap();
        let a = z.add(&spec.integer(2));
        let b = z.mul(&z).sub(&spec.integer(1));
        let field = placement.field();
        let red_ab = placement.reduce(&a.mul(&b)).unwrap();
        let prod = field.mul(&placement.reduce(&a).unwrap(), &placement.reduce(&b).unwrap());
        assert_eq!(red_ab, prod);
    }

    #[test]
    fn guard_rejects_bad_denominator() {
        let spec = spec_q_zeta3();
        let placement = find_placement(&spec, 20).unwrap();
        let q = placement.q();
        let bad = spec.rational(BigRational::new(
            num_bigint::BigInt::from(1),
            num_bigint::BigInt::from(q),
        ));
        assert!(placement.reduce(&bad).is_err());
    }

    #[test]
    fn guard_blocks_every_prime() {
        // every prime <= qmax divides the guarded denominator 2*3*5*7 = 210
        let spec = crate::tower::TowerSpec::builder()
            .sqrt(
                "g",
                BigRational::new(num_bigint::BigInt::from(1), num_bigint::BigInt::from(210)),
            )
            .unwrap()
            .build();
        match find_placement(&spec, 7) {
            Err(crate::error::Error::NoAdmissiblePrime { qmax }) => assert_eq!(qmax, 7),
            other => panic!("expected no admissible prime, got {other:?}"),
        }
    }

    #[test]
    fn roots_in_extension() {
        // x^2 - 2 over F_5 has no roots; over F_25 it has two.
        let fp = PrimeField::new(5);
        let f = Poly::from_coeffs(&fp, vec![3, 0, 1]); // x^2 - 2 = x^2 + 3
        assert!(linear_roots(&fp, &f).unwrap().is_empty());
        let modulus = find_irreducible(&fp, 2).unwrap().coeffs().to_vec();
        let f25 = ExtField::new(fp.clone(), modulus);
        let f_ext = Poly::from_coeffs(&f25, vec![f25.embed(3), f25.zero(), f25.one()]);
        let roots = linear_roots(&f25, &f_ext).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            let sq = f25.mul(r, r);
            assert_eq!(sq, f25.embed(2));
        }
    }
}
